//! Real root isolation on open rational intervals.
//!
//! Roots are isolated on the square-free part with Sturm sequences and
//! bisection. Every isolating bracket has non-root endpoints strictly inside
//! the search interval, and is then shrunk below `1/lc²` so that a rational
//! root (whose denominator divides the leading coefficient) is always the
//! simplest rational of its bracket and is reported exactly.

use num_traits::{One, Signed, Zero};

use super::poly::{sign, Poly};
use super::ratfunc::RationalFunc;
use crate::error::{Error, Location, Result};
use crate::Rational;

/// One distinct root with its multiplicity in the original polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInfo {
    pub loc: Location,
    pub multiplicity: usize,
}

impl RootInfo {
    pub fn is_exact(&self) -> bool {
        matches!(self.loc, Location::Exact(_))
    }
}

impl Location {
    pub(crate) fn bounds(&self) -> (&Rational, &Rational) {
        match self {
            Location::Exact(p) => (p, p),
            Location::Bracket(l, r) => (l, r),
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Location::Exact(p) => Some(p),
            Location::Bracket(..) => None,
        }
    }
}

/// Sturm chain `p, p', -rem(p, p'), ...` of a square-free polynomial.
pub(crate) struct Sturm {
    chain: Vec<Poly>,
}

impl Sturm {
    pub(crate) fn new(p: &Poly) -> Self {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d);
            loop {
                let n = chain.len();
                let r = chain[n - 2].div_rem(&chain[n - 1]).1;
                if r.is_zero() {
                    break;
                }
                // positive rescaling keeps signs
                let c = r.content().abs();
                chain.push(-&r.scale(&c.recip()));
            }
        }
        Sturm { chain }
    }

    fn variations(&self, x: &Rational) -> usize {
        let mut last = 0;
        let mut count = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct roots in the open interval `(a, b)`.
    fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        let at_b = usize::from(self.chain[0].eval(b).is_zero());
        self.variations(a) - self.variations(b) - at_b
    }
}

fn half(a: &Rational, b: &Rational) -> Rational {
    (a + b) / Rational::from_integer(2.into())
}

/// The rational of least denominator in the closed interval `[l, r]`.
pub fn simplest_rational(l: &Rational, r: &Rational) -> Rational {
    debug_assert!(l <= r);
    if !l.is_positive() && !r.is_negative() {
        return Rational::zero();
    }
    if r.is_negative() {
        return -simplest_rational(&-r, &-l);
    }
    let c = l.ceil();
    if &c <= r {
        return c;
    }
    let fl = l.floor();
    let inner = simplest_rational(&(r - &fl).recip(), &(l - &fl).recip());
    fl + inner.recip()
}

/// Square-free polynomial prepared for isolation on `(lo, hi)`: roots at the
/// interval endpoints are divided out.
struct Isolator {
    q: Poly,
    sturm: Sturm,
    lo: Rational,
    hi: Rational,
    exact: Vec<Rational>,
    brackets: Vec<(Rational, Rational)>,
}

impl Isolator {
    fn new(p: &Poly, lo: &Rational, hi: &Rational) -> Self {
        let mut q = p.square_free();
        for e in [lo, hi] {
            if q.eval(e).is_zero() {
                q = q.deflate(e).primitive();
            }
        }
        let sturm = Sturm::new(&q);
        Isolator {
            q,
            sturm,
            lo: lo.clone(),
            hi: hi.clone(),
            exact: Vec::new(),
            brackets: Vec::new(),
        }
    }

    fn is_root(&self, x: &Rational) -> bool {
        self.q.eval(x).is_zero()
    }

    fn run(&mut self) {
        if self.q.is_constant() {
            return;
        }
        let mut stack = vec![(self.lo.clone(), self.hi.clone())];
        while let Some((l, r)) = stack.pop() {
            match self.sturm.count_open(&l, &r) {
                0 => {}
                1 => self.settle(l, r),
                _ => {
                    let m = half(&l, &r);
                    if self.is_root(&m) {
                        self.exact.push(m.clone());
                    }
                    stack.push((m.clone(), r));
                    stack.push((l, m));
                }
            }
        }
    }

    fn bad(&self, x: &Rational) -> bool {
        x == &self.lo || x == &self.hi || self.is_root(x)
    }

    /// Single root in `(l, r)`: move the endpoints off the search boundary
    /// and off other roots, then test rationality.
    fn settle(&mut self, mut l: Rational, mut r: Rational) {
        while self.bad(&l) || self.bad(&r) {
            let m = half(&l, &r);
            if self.is_root(&m) {
                self.exact.push(m);
                return;
            }
            if self.sturm.count_open(&l, &m) == 1 {
                r = m;
            } else {
                l = m;
            }
        }
        let lc = self.q.leading().numer().abs();
        let bound = Rational::new(One::one(), &lc * &lc);
        while &r - &l >= bound {
            match refine_step(&self.q, &l, &r) {
                Err(root) => {
                    self.exact.push(root);
                    return;
                }
                Ok((nl, nr)) => {
                    l = nl;
                    r = nr;
                }
            }
        }
        let s = simplest_rational(&l, &r);
        if self.is_root(&s) {
            self.exact.push(s);
        } else {
            self.brackets.push((l, r));
        }
    }
}

/// One bisection step on a bracket of a simple root with non-zero endpoint
/// values of opposite sign. `Err` carries an exact root hit at the midpoint.
pub(crate) fn refine_step(
    q: &Poly,
    l: &Rational,
    r: &Rational,
) -> std::result::Result<(Rational, Rational), Rational> {
    let m = half(l, r);
    let sm = q.sign_at(&m);
    if sm == 0 {
        return Err(m);
    }
    if sm == q.sign_at(l) {
        Ok((m, r.clone()))
    } else {
        Ok((l.clone(), m))
    }
}

/// Distinct real roots of `p` in the open interval `(lo, hi)`, sorted, with
/// multiplicities. `p` must be non-zero.
pub fn isolate(p: &Poly, lo: &Rational, hi: &Rational) -> Vec<RootInfo> {
    assert!(!p.is_zero(), "root isolation of the zero polynomial");
    if p.is_constant() || lo >= hi {
        return Vec::new();
    }
    let mut iso = Isolator::new(p, lo, hi);
    iso.run();
    let factors = p.square_free_factors();
    let mult_exact = |x: &Rational| {
        factors
            .iter()
            .find(|(_, f)| f.eval(x).is_zero())
            .map_or(1, |(k, _)| *k)
    };
    let mult_bracket = |l: &Rational, r: &Rational| {
        factors
            .iter()
            .find(|(_, f)| f.sign_at(l) * f.sign_at(r) < 0)
            .map_or(1, |(k, _)| *k)
    };
    let mut roots: Vec<RootInfo> = iso
        .exact
        .iter()
        .map(|x| RootInfo {
            loc: Location::Exact(x.clone()),
            multiplicity: mult_exact(x),
        })
        .chain(iso.brackets.iter().map(|(l, r)| RootInfo {
            loc: Location::Bracket(l.clone(), r.clone()),
            multiplicity: mult_bracket(l, r),
        }))
        .collect();
    roots.sort_by(|a, b| a.loc.bounds().0.cmp(b.loc.bounds().0));
    roots
}

/// Roots of a rational function's numerator in `(lo, hi)`.
pub fn rf_roots(f: &RationalFunc, lo: &Rational, hi: &Rational) -> Result<Vec<RootInfo>> {
    if f.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    Ok(isolate(f.num(), lo, hi))
}

/// Joint sign pattern of several pole-free rational functions over an open
/// interval: the sorted union of their roots, one rational sample point per
/// gap between consecutive roots, and the sign of every function on every
/// root and gap.
#[derive(Clone, Debug)]
pub struct SignChart {
    pub roots: Vec<Location>,
    /// `roots.len() + 1` sample points, strictly inside the gaps.
    pub gap_points: Vec<Rational>,
    /// `gap_signs[k][i]`: sign of function `k` on gap `i`.
    pub gap_signs: Vec<Vec<i32>>,
    /// `root_signs[k][i]`: sign of function `k` at root `i`.
    pub root_signs: Vec<Vec<i32>>,
}

impl SignChart {
    pub fn new(funcs: &[&RationalFunc], lo: &Rational, hi: &Rational) -> Self {
        let mut prod = Poly::one();
        for f in funcs.iter().filter(|f| !f.is_zero()) {
            prod = &prod * &f.num().square_free();
        }
        let roots: Vec<Location> = isolate(&prod, lo, hi).into_iter().map(|r| r.loc).collect();
        let mut gap_points = Vec::with_capacity(roots.len() + 1);
        let mut prev = lo.clone();
        let mut prev_is_boundary = true;
        for loc in roots.iter().chain(std::iter::once(&Location::Exact(hi.clone()))) {
            let (a, _) = loc.bounds();
            // Bracket endpoints are never roots and lie inside (lo, hi).
            if &prev == a && !prev_is_boundary {
                gap_points.push(prev.clone());
            } else {
                gap_points.push(half(&prev, a));
            }
            let (_, b) = loc.bounds();
            prev = b.clone();
            prev_is_boundary = matches!(loc, Location::Exact(_));
        }
        let sqf: Vec<Poly> = funcs.iter().map(|f| f.num().square_free()).collect();
        let gap_signs = funcs
            .iter()
            .map(|f| {
                gap_points
                    .iter()
                    .map(|x| sign(&f.eval(x).expect("pole in sign chart")))
                    .collect()
            })
            .collect();
        let root_signs = funcs
            .iter()
            .zip(&sqf)
            .map(|(f, s)| {
                roots
                    .iter()
                    .map(|loc| match loc {
                        Location::Exact(x) => sign(&f.eval(x).expect("pole in sign chart")),
                        Location::Bracket(l, r) => {
                            if f.is_zero() || s.sign_at(l) * s.sign_at(r) < 0 {
                                0
                            } else {
                                sign(&f.eval(l).expect("pole in sign chart"))
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        SignChart {
            roots,
            gap_points,
            gap_signs,
            root_signs,
        }
    }

    /// Minimum sign of function `k` over the whole open interval.
    pub fn min_sign(&self, k: usize) -> i32 {
        self.gap_signs[k]
            .iter()
            .chain(&self.root_signs[k])
            .copied()
            .min()
            .unwrap_or(0)
    }

    pub fn max_sign(&self, k: usize) -> i32 {
        self.gap_signs[k]
            .iter()
            .chain(&self.root_signs[k])
            .copied()
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn rational_root_exact() {
        // x (x - 1/2) on (0, 1)
        let f = &p(&[0, 1]) * &Poly::linear_root(&q(1, 2));
        let roots = isolate(&f, &q(0, 1), &q(1, 1));
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].loc, Location::Exact(q(1, 2)));
    }

    #[test]
    fn irrational_root_bracketed() {
        let roots = isolate(&p(&[-2, 0, 1]), &q(0, 1), &q(2, 1));
        assert_eq!(roots.len(), 1);
        let Location::Bracket(l, r) = &roots[0].loc else {
            panic!("expected bracket")
        };
        assert!(&(l * l) < &q(2, 1) && &(r * r) > &q(2, 1));
        assert!(l > &q(0, 1) && r < &q(2, 1));
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate(&p(&[1, 0, 1]), &q(-1, 1), &q(1, 1)).is_empty());
        assert_eq!(
            rf_roots(&RationalFunc::zero(), &q(0, 1), &q(1, 1)),
            Err(Error::IdenticallyZero)
        );
    }

    #[test]
    fn multiplicities_and_endpoint_roots() {
        // (x-1/3)^2 (x+1/5)^3 x on [0, 1]: x at endpoint excluded
        let f = &(&Poly::linear_root(&q(1, 3)).pow(2) * &Poly::linear_root(&q(-1, 5)).pow(3)) * &p(&[0, 1]);
        let roots = isolate(&f, &q(-1, 1), &q(1, 3));
        assert_eq!(
            roots,
            vec![
                RootInfo { loc: Location::Exact(q(-1, 5)), multiplicity: 3 },
                RootInfo { loc: Location::Exact(q(0, 1)), multiplicity: 1 },
            ]
        );
    }

    #[test]
    fn simplest_rational_examples() {
        assert_eq!(simplest_rational(&q(3, 10), &q(2, 5)), q(1, 3));
        assert_eq!(simplest_rational(&q(-2, 5), &q(-3, 10)), q(-1, 3));
        assert_eq!(simplest_rational(&q(-1, 5), &q(1, 7)), q(0, 1));
        assert_eq!(simplest_rational(&q(7, 5), &q(3, 2)), q(3, 2));
        assert_eq!(simplest_rational(&q(5, 2), &q(5, 2)), q(5, 2));
    }

    #[test]
    fn sign_chart_of_two_functions() {
        // x - 1/2 and x^2 - 1/2 on (0, 1)
        let f = RationalFunc::from_poly(Poly::linear_root(&q(1, 2)));
        let g = RationalFunc::from_poly(Poly::new(vec![q(-1, 2), q(0, 1), q(1, 1)]));
        let chart = SignChart::new(&[&f, &g], &q(0, 1), &q(1, 1));
        assert_eq!(chart.roots.len(), 2);
        assert_eq!(chart.gap_signs[0], vec![-1, 1, 1]);
        assert_eq!(chart.gap_signs[1], vec![-1, -1, 1]);
        assert_eq!(chart.root_signs[0], vec![0, 1]);
        assert_eq!(chart.root_signs[1], vec![-1, 0]);
        for x in &chart.gap_points {
            assert!(x > &q(0, 1) && x < &q(1, 1));
        }
    }
}
