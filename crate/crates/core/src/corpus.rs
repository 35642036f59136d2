//! Deterministic families of H-continuous functions on `[-1, 1]` used by the
//! test suites and by the command line round-trip checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::piecewise::{PiecewiseFn, Segment};
use crate::segments::{Poly, RationalFunc};
use crate::Rational;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Frequently used functions on `[-1, 1]`.
pub mod named {
    use super::*;

    fn two_piece(left: RationalFunc, right: RationalFunc) -> PiecewiseFn {
        PiecewiseFn::extend_dense(
            vec![q(-1, 1), q(0, 1), q(1, 1)],
            vec![Segment::point(left), Segment::point(right)],
        )
        .expect("pole free pieces")
    }

    pub fn x() -> PiecewiseFn {
        PiecewiseFn::from_expr(RationalFunc::x(), q(-1, 1), q(1, 1)).unwrap()
    }

    pub fn sign() -> PiecewiseFn {
        two_piece(RationalFunc::constant(q(-1, 1)), RationalFunc::one())
    }

    pub fn abs_x() -> PiecewiseFn {
        two_piece(RationalFunc::x().neg(), RationalFunc::x())
    }

    pub fn plus_part() -> PiecewiseFn {
        two_piece(RationalFunc::zero(), RationalFunc::x())
    }

    pub fn inv_x() -> PiecewiseFn {
        PiecewiseFn::from_expr(RationalFunc::x().recip().unwrap(), q(-1, 1), q(1, 1)).unwrap()
    }

    pub fn inv_x_sq() -> PiecewiseFn {
        let f = RationalFunc::x().pow(-2).unwrap();
        PiecewiseFn::from_expr(f, q(-1, 1), q(1, 1)).unwrap()
    }
}

/// What a generated function may contain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Continuous,
    Jump,
    Pole,
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    /// Allow segments that vanish identically.
    pub allow_zero_segments: bool,
    /// Keep polynomial degrees at most this.
    pub max_degree: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            allow_zero_segments: false,
            max_degree: 2,
        }
    }
}

const GRID: [(i64, i64); 7] = [(-1, 2), (-1, 3), (0, 1), (1, 4), (1, 3), (1, 2), (2, 3)];

fn small_rational(rng: &mut impl Rng) -> Rational {
    let n = rng.gen_range(-3i64..=3);
    let d = *[1i64, 2, 3, 4].choose(rng).unwrap();
    q(n, d)
}

fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if r != q(0, 1) {
            return r;
        }
    }
}

/// A polynomial with rational roots from the grid, so zeros stay exact.
fn factored_poly(rng: &mut impl Rng, max_degree: usize) -> Poly {
    let deg = rng.gen_range(0..=max_degree);
    let mut p = Poly::constant(nonzero_rational(rng));
    for _ in 0..deg {
        let (n, d) = *GRID.choose(rng).unwrap();
        let root = if rng.gen_bool(0.5) { q(n, d) } else { small_rational(rng) * q(1, 2) };
        p = &p * &Poly::linear_root(&root);
    }
    p
}

fn shifted_poly(rng: &mut impl Rng, max_degree: usize) -> Poly {
    let p = factored_poly(rng, max_degree);
    &p + &Poly::constant(small_rational(rng))
}

fn segment_fn(rng: &mut impl Rng, kind: Kind, l: &Rational, r: &Rational, opts: &Options) -> RationalFunc {
    if opts.allow_zero_segments && rng.gen_bool(0.15) {
        return RationalFunc::zero();
    }
    let base = match rng.gen_range(0..3) {
        0 => RationalFunc::constant(nonzero_rational(rng)),
        1 => RationalFunc::from_poly(factored_poly(rng, opts.max_degree)),
        _ => RationalFunc::from_poly(shifted_poly(rng, opts.max_degree)),
    };
    if kind == Kind::Pole && rng.gen_bool(0.6) {
        let at = if rng.gen_bool(0.5) { l } else { r };
        let order = rng.gen_range(1..=2);
        let den = Poly::linear_root(at).pow(order);
        return base.mul(&RationalFunc::normalize(Poly::one(), den).unwrap());
    }
    if rng.gen_bool(0.2) {
        // a denominator without real zeros keeps the segment pole free
        let c = q(rng.gen_range(1..=4), 4);
        let den = &Poly::from_ints(&[0, 0, 1]) + &Poly::constant(c);
        return base.mul(&RationalFunc::normalize(Poly::one(), den).unwrap());
    }
    base
}

/// One random function of the requested kind.
pub fn random_fn(rng: &mut impl Rng, kind: Kind, opts: &Options) -> PiecewiseFn {
    let mut bps = vec![q(-1, 1)];
    if kind != Kind::Continuous {
        let count = rng.gen_range(1..=2);
        let mut interior: Vec<(i64, i64)> = GRID.choose_multiple(rng, count).cloned().collect();
        interior.sort_by(|a, b| q(a.0, a.1).cmp(&q(b.0, b.1)));
        bps.extend(interior.into_iter().map(|(n, d)| q(n, d)));
    }
    bps.push(q(1, 1));
    let segs = if kind == Kind::Continuous {
        vec![Segment::point(segment_fn(rng, kind, &bps[0], &bps[1], opts))]
    } else {
        (0..bps.len() - 1)
            .map(|i| Segment::point(segment_fn(rng, kind, &bps[i], &bps[i + 1], opts)))
            .collect()
    };
    PiecewiseFn::extend_dense(bps, segs)
        .expect("generated segments are pole free")
        .canon()
}

/// `n` functions cycling through the three kinds, reproducible from `seed`.
pub fn generate(seed: u64, n: usize, opts: &Options) -> Vec<PiecewiseFn> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kinds = [Kind::Continuous, Kind::Jump, Kind::Pole];
    (0..n).map(|i| random_fn(&mut rng, kinds[i % 3], opts)).collect()
}

/// A fixed mixed corpus: the named functions followed by generated ones.
pub fn standard(n: usize) -> Vec<PiecewiseFn> {
    let mut out = vec![
        named::x(),
        named::sign(),
        named::abs_x(),
        named::plus_part(),
        named::inv_x(),
        named::inv_x_sq(),
    ];
    let opts = Options {
        allow_zero_segments: true,
        ..Options::default()
    };
    out.extend(generate(0x5eed, n.saturating_sub(out.len()), &opts));
    out.truncate(n);
    out
}

/// Random S-continuous functions, some of them not quasi-minimal: every
/// segment either keeps its point value or is widened by a non-negative
/// polynomial gap, and breakpoint values are widened further.
pub fn s_continuous(seed: u64, n: usize) -> Vec<PiecewiseFn> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = Options::default();
    let kinds = [Kind::Continuous, Kind::Jump, Kind::Pole];
    (0..n)
        .map(|i| {
            let base = random_fn(&mut rng, kinds[i % 3], &opts);
            let widen = i % 2 == 1;
            let segs: Vec<Segment> = base
                .segments()
                .iter()
                .map(|s| {
                    if widen && rng.gen_bool(0.7) {
                        let c = q(rng.gen_range(1..=4), 4);
                        let gap = if rng.gen_bool(0.5) {
                            RationalFunc::constant(c)
                        } else {
                            // c * x^2 is zero only at the origin
                            RationalFunc::from_poly(Poly::from_ints(&[0, 0, 1]).scale(&c))
                        };
                        Segment::new(s.lo.clone(), s.hi.add(&gap))
                    } else {
                        s.clone()
                    }
                })
                .collect();
            let values = base.breakpoints().iter().map(|_| None).collect();
            let g = PiecewiseFn::build_partial(base.breakpoints().to_vec(), values, segs).unwrap();
            let extra = q(rng.gen_range(0..=2), 2);
            let vals = g
                .values()
                .iter()
                .map(|v| {
                    let lo = v.lo().clone().add_hull(&crate::exreal::ExtReal::Finite(-extra.clone()));
                    let hi = v.hi().clone().add_hull(&crate::exreal::ExtReal::Finite(extra.clone()));
                    crate::exreal::XInterval::new(lo.lo().clone(), hi.hi().clone()).unwrap()
                })
                .collect();
            PiecewiseFn::build(g.breakpoints().to_vec(), vals, g.segments().to_vec()).unwrap()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regularize::{is_h_continuous, is_s_continuous};

    #[test]
    fn generated_functions_are_h_continuous() {
        for f in standard(40) {
            assert!(is_h_continuous(&f), "{f:?}");
        }
        assert_eq!(generate(7, 9, &Options::default()), generate(7, 9, &Options::default()));
    }

    #[test]
    fn widened_functions_are_s_continuous() {
        let fs = s_continuous(3, 20);
        assert!(fs.iter().all(is_s_continuous));
        assert!(fs.iter().any(|f| f.segments().iter().any(|s| !s.is_point())));
    }
}
