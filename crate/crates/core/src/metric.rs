//! The bounded metric, the order description of its balls, finite lattice
//! operations, limits of Cauchy sequences with moduli, interposition of a
//! continuous function between semicontinuous bounds, and the density
//! approximation built on it.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Location, Result};
use crate::exreal::{ExtReal, XInterval};
use crate::piecewise::{refine, PiecewiseFn, Segment};
use crate::regularize::{extract_unchecked, is_h_continuous};
use crate::ring::{add_const, sub};
use crate::segments::{isolate, sup_abs, Enclosure, Poly, RationalFunc, SignChart};
use crate::Rational;

fn require_h(fs: &[&PiecewiseFn]) -> Result<()> {
    if fs.iter().all(|f| is_h_continuous(f)) {
        Ok(())
    } else {
        Err(Error::NotHContinuous)
    }
}

fn squash(t: &ExtReal) -> ExtReal {
    match t {
        ExtReal::Finite(v) => ExtReal::Finite(v / (Rational::one() + v)),
        _ => ExtReal::Finite(Rational::one()),
    }
}

/// Certified enclosure of `sup |f ⊖ g| / (1 + |f ⊖ g|)` over the finite
/// part of the domain.
pub fn rho(f: &PiecewiseFn, g: &PiecewiseFn, tol: &Rational) -> Result<Enclosure> {
    let (f, g) = refine(f, g)?;
    let mut s_lo = ExtReal::zero();
    let mut s_hi = ExtReal::zero();
    for (i, (s, t)) in f.segments().iter().zip(g.segments()).enumerate() {
        let (l, r) = f.segment_bounds(i);
        let lower = s.lo.sub(&t.hi);
        let upper = s.hi.sub(&t.lo);
        for d in [&lower, &upper] {
            let e = sup_abs(d, l, r, tol)?;
            s_lo = s_lo.max(e.lo);
            s_hi = s_hi.max(e.hi);
        }
        if s_lo.is_infinite() {
            break;
        }
    }
    Ok(Enclosure {
        lo: squash(&s_lo),
        hi: squash(&s_hi),
        tol: tol.clone(),
    })
}

/// Three-valued outcome of a certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Undecidable,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Undecidable => "undecidable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderBall {
    pub rho: Enclosure,
    /// `rho(f, g) < eps`.
    pub by_metric: Verdict,
    /// `−k < f ⊖ g < k` with `k = eps / (1 − eps)`.
    pub by_difference: Verdict,
    /// `g ⊖ k < f < g ⊕ k`.
    pub by_sandwich: Verdict,
}

impl OrderBall {
    /// All decided verdicts coincide.
    pub fn agree(&self) -> bool {
        let decided: Vec<Verdict> = [self.by_metric, self.by_difference, self.by_sandwich]
            .into_iter()
            .filter(|v| *v != Verdict::Undecidable)
            .collect();
        decided.windows(2).all(|w| w[0] == w[1])
    }
}

/// Evaluates the metric ball condition and its two order descriptions.
///
/// The order conditions are checked with strict pointwise inequalities: for
/// H-continuous data on a compact domain the supremum is attained as a
/// one-sided limit, so strict pointwise bounds match the strict metric bound.
pub fn order_ball_check(f: &PiecewiseFn, g: &PiecewiseFn, eps: &Rational, tol: &Rational) -> Result<OrderBall> {
    f.same_domain(g)?;
    if !(eps > &Rational::zero() && eps < &Rational::one()) {
        return Err(Error::EpsOutOfRange(eps.clone()));
    }
    let r = rho(f, g, tol)?;
    let e = ExtReal::Finite(eps.clone());
    let by_metric = if r.hi < e {
        Verdict::True
    } else if r.lo >= e {
        Verdict::False
    } else {
        Verdict::Undecidable
    };
    let k = eps / (Rational::one() - eps);
    let d = sub(f, g)?;
    let by_difference =
        d.constant_like(-k.clone()).compare(&d, true)? && d.compare(&d.constant_like(k.clone()), true)?;
    let below = add_const(g, &-k.clone())?;
    let above = add_const(g, &k)?;
    let by_sandwich = below.compare(f, true)? && f.compare(&above, true)?;
    Ok(OrderBall {
        rho: r,
        by_metric,
        by_difference: by_difference.into(),
        by_sandwich: by_sandwich.into(),
    })
}

fn lattice(f: &PiecewiseFn, g: &PiecewiseFn, upper: bool) -> Result<PiecewiseFn> {
    require_h(&[f, g])?;
    let (f, g) = refine(f, g)?;
    let pick = |a: &ExtReal, b: &ExtReal| {
        if (a >= b) == upper {
            a.clone()
        } else {
            b.clone()
        }
    };
    let mut bps = vec![f.breakpoints()[0].clone()];
    let mut vals = vec![];
    let mut segs = vec![];
    let endpoint = |i: usize| {
        let (u, v) = (&f.values()[i], &g.values()[i]);
        XInterval::new(pick(u.lo(), v.lo()), pick(u.hi(), v.hi())).expect("ordered")
    };
    vals.push(endpoint(0));
    for (i, (s, t)) in f.segments().iter().zip(g.segments()).enumerate() {
        let (l, r) = f.segment_bounds(i);
        let diff = s.lo.sub(&t.lo);
        let mut cuts = vec![];
        if !diff.is_zero() {
            for root in isolate(diff.num(), l, r) {
                match root.loc {
                    Location::Exact(z) => cuts.push(z),
                    loc if root.multiplicity % 2 == 1 => return Err(Error::NonRepresentablePoint(loc)),
                    _ => {}
                }
            }
        }
        cuts.push(r.clone());
        let mut left = l.clone();
        for cut in cuts {
            let mid = (&left + &cut) / Rational::from_integer(2.into());
            let f_wins = (diff.num().sign_at(&mid) * diff.den().sign_at(&mid) >= 0) == upper;
            segs.push(if f_wins { s.clone() } else { t.clone() });
            if &cut == r {
                vals.push(endpoint(i + 1));
            } else {
                vals.push(XInterval::rational(s.lo.eval(&cut).expect("interior point")));
            }
            bps.push(cut.clone());
            left = cut;
        }
    }
    Ok(extract_unchecked(&PiecewiseFn::from_parts(bps, vals, segs)))
}

/// Least upper bound of two functions.
pub fn h_sup2(f: &PiecewiseFn, g: &PiecewiseFn) -> Result<PiecewiseFn> {
    lattice(f, g, true)
}

/// Greatest lower bound of two functions.
pub fn h_inf2(f: &PiecewiseFn, g: &PiecewiseFn) -> Result<PiecewiseFn> {
    lattice(f, g, false)
}

/// Tail infima `phis[k] = inf fs[k..]` and tail suprema `psis[k] = sup fs[k..]`.
pub fn finite_envelopes(fs: &[PiecewiseFn]) -> Result<(Vec<PiecewiseFn>, Vec<PiecewiseFn>)> {
    let last = fs
        .last()
        .ok_or_else(|| Error::InvalidArgument("empty sequence".into()))?;
    require_h(&fs.iter().collect::<Vec<_>>())?;
    let mut phis = vec![last.canon()];
    let mut psis = vec![last.canon()];
    for f in fs.iter().rev().skip(1) {
        phis.push(h_inf2(f, phis.last().unwrap())?);
        psis.push(h_sup2(f, psis.last().unwrap())?);
    }
    phis.reverse();
    psis.reverse();
    Ok((phis, psis))
}

#[derive(Clone, Debug)]
pub struct CauchyLimit {
    pub limit: PiecewiseFn,
    /// Certified range for the distance from `limit` to any limit of the
    /// sequence.
    pub bound: Enclosure,
    pub phis: Vec<PiecewiseFn>,
    pub psis: Vec<PiecewiseFn>,
}

/// Verifies the claimed Cauchy moduli on the given prefix and returns its
/// last element together with the distance bound and the envelopes.
pub fn cauchy_limit(fs: &[PiecewiseFn], moduli: &[Rational], tol: &Rational) -> Result<CauchyLimit> {
    if fs.is_empty() || fs.len() != moduli.len() {
        return Err(Error::InvalidArgument(format!(
            "need one modulus per element, got {} functions and {} moduli",
            fs.len(),
            moduli.len()
        )));
    }
    for (k, m) in moduli.iter().enumerate() {
        if m < &Rational::zero() || m >= &Rational::one() {
            return Err(Error::ModulusViolated(format!("modulus {k} is {m}, outside [0,1)")));
        }
        if k > 0 && m > &moduli[k - 1] {
            return Err(Error::ModulusViolated(format!("moduli increase at index {k}")));
        }
    }
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            let r = rho(&fs[i], &fs[j], tol)?;
            if r.lo > ExtReal::Finite(moduli[i].clone()) {
                return Err(Error::ModulusViolated(format!(
                    "rho(f{i},f{j}) >= {} exceeds modulus {}",
                    r.lo, moduli[i]
                )));
            }
        }
    }
    let (phis, psis) = finite_envelopes(fs)?;
    for k in 0..fs.len() {
        let gap = sub(&psis[k], &phis[k])?;
        let m = &moduli[k];
        let cap = gap.constant_like(Rational::from_integer(2.into()) * m / (Rational::one() - m));
        if !(gap.constant_like(Rational::zero()).leq(&gap)? && gap.leq(&cap)?) {
            return Err(Error::ModulusViolated(format!("envelopes do not pinch at index {k}")));
        }
    }
    let m = moduli.last().unwrap();
    let hi = m / (Rational::one() - m);
    Ok(CauchyLimit {
        limit: fs.last().unwrap().canon(),
        bound: Enclosure {
            lo: ExtReal::zero(),
            hi: ExtReal::Finite(hi.clone()),
            tol: if hi.is_zero() { Rational::one() } else { hi },
        },
        phis,
        psis,
    })
}

/// Bridging data on a common partition: a selection and the lower and upper
/// bounds it must respect, all point-valued per segment.
struct Sandwich {
    bps: Vec<Rational>,
    select: Vec<RationalFunc>,
    lower: Vec<RationalFunc>,
    upper: Vec<RationalFunc>,
}

const FLOOR_BITS: u32 = 20;

fn line_through(x0: &Rational, y0: &Rational, x1: &Rational, y1: &Rational) -> RationalFunc {
    let slope = (y1 - y0) / (x1 - x0);
    let intercept = y0 - &slope * x0;
    RationalFunc::from_poly(Poly::new(vec![intercept, slope]))
}

fn fits(line: &RationalFunc, lower: &RationalFunc, upper: &RationalFunc, l: &Rational, r: &Rational) -> bool {
    let a = line.sub(lower);
    let b = upper.sub(line);
    let chart = SignChart::new(&[&a, &b], l, r);
    chart.min_sign(0) >= 0 && chart.min_sign(1) >= 0
}

impl Sandwich {
    /// Replaces the selection near every breakpoint with a target value by
    /// linear pieces reaching that value exactly.
    fn bridge(&self, targets: &[Option<Rational>]) -> Result<PiecewiseFn> {
        let two = Rational::from_integer(2.into());
        let mut bps = vec![self.bps[0].clone()];
        let mut segs = Vec::new();
        for i in 0..self.select.len() {
            let (l, r) = (&self.bps[i], &self.bps[i + 1]);
            let len = r - l;
            let floor = &len / Rational::from_integer(2.into()).pow(FLOOR_BITS as i32);
            let (sel, lo, hi) = (&self.select[i], &self.lower[i], &self.upper[i]);
            let find = |b: &Rational, y: &Rational, toward_right: bool| -> Result<(Rational, RationalFunc)> {
                let mut delta = &len / Rational::from_integer(4.into());
                while delta >= floor {
                    let x = if toward_right { b + &delta } else { b - &delta };
                    let yx = sel.eval(&x).expect("interior point");
                    let line = line_through(b, y, &x, &yx);
                    let (p, q) = if toward_right { (b, &x) } else { (&x, b) };
                    if fits(&line, lo, hi, p, q) {
                        return Ok((x, line));
                    }
                    delta /= &two;
                }
                Err(Error::BridgingFailed(b.clone()))
            };
            let left = targets[i].as_ref().map(|y| find(l, y, true)).transpose()?;
            let right = targets[i + 1].as_ref().map(|y| find(r, y, false)).transpose()?;
            if let Some((x, line)) = left {
                segs.push(Segment::point(line));
                bps.push(x);
            }
            segs.push(Segment::point(sel.clone()));
            if let Some((x, line)) = right {
                bps.push(x);
                segs.push(Segment::point(line));
            }
            bps.push(r.clone());
        }
        Ok(PiecewiseFn::extend_unchecked(bps, segs).canon())
    }
}

/// A continuous `h` with `ū ≤ h ≤ l̲`, where `ū` is the upper bound of `u`
/// and `l̲` the lower bound of `l`.
pub fn interpose(u: &PiecewiseFn, l: &PiecewiseFn) -> Result<PiecewiseFn> {
    let (u, l) = refine(u, l)?;
    let n = u.breakpoints().len();
    for i in 0..n {
        if u.values()[i].hi() > l.values()[i].lo() {
            return Err(Error::SandwichViolated(Location::Exact(u.breakpoints()[i].clone())));
        }
    }
    let two = Rational::from_integer(2.into());
    let mut sw = Sandwich {
        bps: u.breakpoints().to_vec(),
        select: vec![],
        lower: vec![],
        upper: vec![],
    };
    for (i, (s, t)) in u.segments().iter().zip(l.segments()).enumerate() {
        let (a, b) = u.segment_bounds(i);
        let gap = t.lo.sub(&s.hi);
        let chart = SignChart::new(&[&gap], a, b);
        if let Some(j) = chart.gap_signs[0].iter().position(|&g| g < 0) {
            return Err(Error::SandwichViolated(Location::Exact(chart.gap_points[j].clone())));
        }
        if let Some(j) = chart.root_signs[0].iter().position(|&g| g < 0) {
            return Err(Error::SandwichViolated(chart.roots[j].clone()));
        }
        sw.select.push(s.hi.add(&t.lo).scale(&(Rational::one() / &two)));
        sw.lower.push(s.hi.clone());
        sw.upper.push(t.lo.clone());
    }
    let targets: Vec<Option<Rational>> = (0..n)
        .map(|i| {
            let lo_b = u.values()[i].hi();
            let hi_b = l.values()[i].lo();
            let x = &sw.bps[i];
            let mut limits = vec![];
            if i > 0 {
                limits.push(sw.select[i - 1].limit(x, crate::segments::Side::Left));
            }
            if i + 1 < n {
                limits.push(sw.select[i].limit(x, crate::segments::Side::Right));
            }
            let settled = limits.windows(2).all(|w| w[0] == w[1])
                && limits[0].is_finite()
                && lo_b <= &limits[0]
                && &limits[0] <= hi_b;
            if settled {
                None
            } else {
                Some(match (lo_b, hi_b) {
                    (ExtReal::Finite(p), ExtReal::Finite(q)) => (p + q) / &two,
                    (ExtReal::Finite(p), _) => p + Rational::one(),
                    (_, ExtReal::Finite(q)) => q - Rational::one(),
                    _ => Rational::zero(),
                })
            }
        })
        .collect();
    sw.bridge(&targets)
}

/// Approximation of `f` that is continuous off the breakpoints of width at
/// least `1/n` and the infinite ones, staying within `1/n` of `f`.
pub fn density_approx(f: &PiecewiseFn, n: u32) -> Result<PiecewiseFn> {
    require_h(&[f])?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let step = Rational::new(1.into(), n.into());
    let one_over_n = ExtReal::Finite(step.clone());
    let select: Vec<RationalFunc> = f.segments().iter().map(|s| s.lo.clone()).collect();
    let sw = Sandwich {
        bps: f.breakpoints().to_vec(),
        lower: select.iter().map(|s| s.add_const(&-step.clone())).collect(),
        upper: select.iter().map(|s| s.add_const(&step)).collect(),
        select,
    };
    let targets: Vec<Option<Rational>> = f
        .values()
        .iter()
        .map(|v| {
            let w = v.width();
            (v.is_proper() && v.is_finite() && w < one_over_n).then(|| v.midpoint().unwrap())
        })
        .collect();
    sw.bridge(&targets)
}

/// Whether `f − 1/n ≤ g ≤ f + 1/n` away from the given exceptional points.
pub fn within_band(f: &PiecewiseFn, g: &PiecewiseFn, n: u32, except: &[Rational]) -> Result<bool> {
    let step = Rational::new(1.into(), n.into());
    let (f, g) = refine(f, g)?;
    for (i, x) in f.breakpoints().iter().enumerate() {
        if except.contains(x) {
            continue;
        }
        let (u, v) = (&f.values()[i], &g.values()[i]);
        let lower = u.hi().clone().add_hull(&ExtReal::Finite(-step.clone()));
        let upper = u.lo().clone().add_hull(&ExtReal::Finite(step.clone()));
        if v.lo() < lower.lo() || v.hi() > upper.hi() {
            return Ok(false);
        }
    }
    for (i, (s, t)) in f.segments().iter().zip(g.segments()).enumerate() {
        let (l, r) = f.segment_bounds(i);
        let a = t.lo.sub(&s.hi.add_const(&-step.clone()));
        let b = s.lo.add_const(&step).sub(&t.hi);
        let chart = SignChart::new(&[&a, &b], l, r);
        if chart.min_sign(0) < 0 || chart.min_sign(1) < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::named;
    use crate::ring::{is_continuous, neg, scale};
    use crate::segments::default_tol;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rho_examples() {
        let x = named::x();
        let zero = x.constant_like(q(0, 1));
        let one = x.constant_like(q(1, 1));
        let t = default_tol();
        assert_eq!(rho(&zero, &one, &t).unwrap().lo, ExtReal::Finite(q(1, 2)));
        let shifted = add_const(&x, &q(1, 2)).unwrap();
        let r = rho(&x, &shifted, &t).unwrap();
        assert!(r.is_exact() && r.lo == ExtReal::Finite(q(1, 3)));
        let r = rho(&zero, &named::inv_x_sq(), &t).unwrap();
        assert_eq!(r.hi, ExtReal::Finite(q(1, 1)));
    }

    #[test]
    fn order_ball_examples() {
        let sign = named::sign();
        let t = default_tol();
        let b = order_ball_check(&sign, &sign, &q(1, 2), &t).unwrap();
        assert_eq!([b.by_metric, b.by_difference, b.by_sandwich], [Verdict::True; 3]);
        let zero = sign.constant_like(q(0, 1));
        let b = order_ball_check(&zero, &sign.constant_like(q(1, 1)), &q(1, 2), &t).unwrap();
        assert_eq!([b.by_metric, b.by_difference, b.by_sandwich], [Verdict::False; 3]);
        let b = order_ball_check(&zero, &sign.constant_like(q(1, 4)), &q(1, 2), &t).unwrap();
        assert_eq!([b.by_metric, b.by_difference, b.by_sandwich], [Verdict::True; 3]);
        assert!(matches!(order_ball_check(&zero, &zero, &q(1, 1), &t), Err(Error::EpsOutOfRange(_))));
    }

    #[test]
    fn lattice_examples() {
        let x = named::x();
        assert_eq!(h_sup2(&x, &neg(&x).unwrap()).unwrap(), named::abs_x());
        let zero = x.constant_like(q(0, 1));
        let plus_sign = h_sup2(&named::sign(), &zero).unwrap();
        assert_eq!(plus_sign.values()[1], XInterval::finite(q(0, 1), q(1, 1)).unwrap());
        let x2 = crate::ring::h_mul(&x, &x).unwrap();
        let top = h_sup2(&x, &x2).unwrap();
        assert_eq!(top.breakpoints(), &[q(-1, 1), q(0, 1), q(1, 1)]);
        // crossing of x and 1/2 - x^2 is irrational
        let g = add_const(&neg(&x2).unwrap(), &q(1, 2)).unwrap();
        assert!(matches!(h_sup2(&x, &g), Err(Error::NonRepresentablePoint(_))));
    }

    #[test]
    fn cauchy_examples() {
        let x = named::x();
        let fs: Vec<_> = [q(1, 1), q(1, 2), q(1, 4)].iter().map(|c| add_const(&x, c).unwrap()).collect();
        let t = default_tol();
        let lim = cauchy_limit(&fs, &[q(1, 2), q(1, 3), q(1, 5)], &t).unwrap();
        assert_eq!(lim.limit, fs[2]);
        assert_eq!(lim.bound.hi, ExtReal::Finite(q(1, 4)));
        assert!(rho(&lim.limit, &x, &t).unwrap().hi <= lim.bound.hi);
        let bad = cauchy_limit(&fs[..2], &[q(1, 4), q(1, 4)], &t);
        assert!(matches!(bad, Err(Error::ModulusViolated(_))));
    }

    #[test]
    fn interpose_examples() {
        let sign = named::sign();
        let above = add_const(&sign, &q(2, 1)).unwrap();
        let h = interpose(&sign, &above).unwrap();
        assert!(is_continuous(&h));
        assert!(within_order(&sign, &h, &above));
        let x = named::x();
        assert_eq!(interpose(&x, &x).unwrap(), x);
        let one = x.constant_like(q(1, 1));
        let zero = x.constant_like(q(0, 1));
        assert!(matches!(interpose(&one, &zero), Err(Error::SandwichViolated(_))));
    }

    fn within_order(u: &PiecewiseFn, h: &PiecewiseFn, l: &PiecewiseFn) -> bool {
        let upper_u = PiecewiseFn::from_parts(
            u.breakpoints().to_vec(),
            u.values().iter().map(|v| XInterval::point(v.hi().clone())).collect(),
            u.segments().to_vec(),
        );
        let lower_l = PiecewiseFn::from_parts(
            l.breakpoints().to_vec(),
            l.values().iter().map(|v| XInterval::point(v.lo().clone())).collect(),
            l.segments().to_vec(),
        );
        upper_u.leq(h).unwrap() && h.leq(&lower_l).unwrap()
    }

    #[test]
    fn density_examples() {
        let sign = named::sign();
        assert_eq!(density_approx(&sign, 3).unwrap(), sign);
        let small = scale(&q(1, 20), &sign).unwrap();
        let approx = density_approx(&small, 5).unwrap();
        assert!(is_continuous(&approx));
        assert!(rho(&small, &approx, &default_tol()).unwrap().hi <= ExtReal::Finite(q(1, 5)));
        assert!(within_band(&small, &approx, 5, &[]).unwrap());
        assert_eq!(density_approx(&named::inv_x(), 4).unwrap(), named::inv_x());
    }
}
