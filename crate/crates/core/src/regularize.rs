//! Semicontinuity, quasi-minimality and the extraction of the unique
//! H-continuous member of a quasi-minimal S-continuous function.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::piecewise::{PiecewiseFn, Segment};
use crate::segments::SignChart;
use crate::Rational;

/// Regularity data of a piecewise function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Regularity {
    pub s_continuous: bool,
    pub quasi_minimal: bool,
    pub h_continuous: bool,
    pub finite: bool,
    pub nearly_finite: bool,
}

pub fn regularity(f: &PiecewiseFn) -> Regularity {
    let s = is_s_continuous(f);
    Regularity {
        s_continuous: s,
        quasi_minimal: s && segments_are_points(f),
        h_continuous: is_h_continuous(f),
        finite: f.is_finite(),
        // infinite values can only sit at the finitely many breakpoints
        nearly_finite: true,
    }
}

/// Index of the first breakpoint where the semicontinuity conditions fail.
pub fn s_violation(f: &PiecewiseFn) -> Option<usize> {
    (0..f.breakpoints().len()).find(|&i| {
        let v = &f.values()[i];
        f.side_limits(i)
            .iter()
            .any(|lim| v.lo() > lim.lo() || v.hi() < lim.hi())
    })
}

pub fn is_s_continuous(f: &PiecewiseFn) -> bool {
    s_violation(f).is_none()
}

fn segments_are_points(f: &PiecewiseFn) -> bool {
    f.segments().iter().all(Segment::is_point)
}

/// Quasi-minimal means every segment is point valued, so proper values are
/// confined to the finite breakpoint set.
pub fn is_quasi_minimal(f: &PiecewiseFn) -> Result<bool> {
    if let Some(i) = s_violation(f) {
        return Err(Error::NotSContinuous(f.breakpoints()[i].clone()));
    }
    Ok(segments_are_points(f))
}

pub fn is_h_continuous(f: &PiecewiseFn) -> bool {
    segments_are_points(f) && (0..f.breakpoints().len()).all(|i| f.values()[i] == f.limit_hull(i))
}

/// The unique H-continuous function contained in a quasi-minimal `g`, in
/// canonical form.
pub fn h_extract(g: &PiecewiseFn) -> Result<PiecewiseFn> {
    if !is_quasi_minimal(g)? {
        let i = g.segments().iter().position(|s| !s.is_point()).unwrap();
        let (l, r) = g.segment_bounds(i);
        return Err(Error::NotQuasiMinimal(l.clone(), r.clone()));
    }
    Ok(extract_unchecked(g))
}

pub(crate) fn extract_unchecked(g: &PiecewiseFn) -> PiecewiseFn {
    g.reextend().canon()
}

/// H-continuous members of `g`. A quasi-minimal `g` has exactly one; for
/// any other S-continuous `g` two distinct members are produced from a lower
/// selection and a local shift of it on a region where `g` is wide.
pub fn h_members_sample(g: &PiecewiseFn) -> Result<Vec<PiecewiseFn>> {
    if is_quasi_minimal(g)? {
        return Ok(vec![extract_unchecked(g)]);
    }
    let k = g.segments().iter().position(|s| !s.is_point()).unwrap();
    let (l, r) = g.segment_bounds(k);
    let seg = &g.segments()[k];
    let w = seg.hi.sub(&seg.lo);
    let chart = SignChart::new(&[&w], l, r);
    let gap = chart.gap_signs[0]
        .iter()
        .position(|&s| s > 0)
        .expect("non-identical ordered bounds differ somewhere");
    let p = chart.gap_points[gap].clone();

    // Shrink a neighbourhood of p until the width is certified positive on it.
    let two = Rational::from_integer(2.into());
    let mut delta = (&p - l).min(r - &p) / &two;
    let (s, t, floor) = loop {
        let (s, t) = (&p - &delta, &p + &delta);
        if let Some((lo, _)) = w.eval_range(&s, &t) {
            if lo > Rational::zero() {
                break (s, t, lo);
            }
        }
        delta /= &two;
    };
    let eps = floor / &two;

    let lower: Vec<Segment> = g.segments().iter().map(|s| Segment::point(s.lo.clone())).collect();
    let member = PiecewiseFn::extend_unchecked(g.breakpoints().to_vec(), lower.clone()).canon();

    let mut bps = g.breakpoints().to_vec();
    let mut segs = lower;
    let bump = Segment::point(seg.lo.add_const(&eps));
    segs.splice(k..=k, [segs[k].clone(), bump, segs[k].clone()]);
    bps.splice(k + 1..k + 1, [s, t]);
    let shifted = PiecewiseFn::extend_unchecked(bps, segs).canon();

    debug_assert!(is_h_continuous(&member) && is_h_continuous(&shifted));
    Ok(vec![member, shifted])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exreal::XInterval;
    use crate::segments::RationalFunc;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn c(n: i64) -> RationalFunc {
        RationalFunc::constant(q(n, 1))
    }

    fn step(value: XInterval) -> PiecewiseFn {
        PiecewiseFn::build(
            vec![q(-1, 1), q(0, 1), q(1, 1)],
            vec![XInterval::rational(q(-1, 1)), value, XInterval::rational(q(1, 1))],
            vec![Segment::point(c(-1)), Segment::point(c(1))],
        )
        .unwrap()
    }

    fn band() -> PiecewiseFn {
        PiecewiseFn::build(
            vec![q(-1, 1), q(1, 1)],
            vec![XInterval::finite(q(0, 1), q(1, 1)).unwrap(); 2],
            vec![Segment::new(c(0), c(1))],
        )
        .unwrap()
    }

    #[test]
    fn semicontinuity() {
        let sign = step(XInterval::finite(q(-1, 1), q(1, 1)).unwrap());
        assert!(is_s_continuous(&sign));
        assert!(is_h_continuous(&sign));
        let bad = step(XInterval::rational(q(0, 1)));
        assert!(!is_s_continuous(&bad));
        assert!(matches!(is_quasi_minimal(&bad), Err(Error::NotSContinuous(_))));
        let wide = step(XInterval::finite(q(-2, 1), q(1, 1)).unwrap());
        assert!(is_s_continuous(&wide) && !is_h_continuous(&wide));
        assert!(is_quasi_minimal(&wide).unwrap());
        assert_eq!(h_extract(&wide).unwrap(), sign);
    }

    #[test]
    fn band_is_not_quasi_minimal() {
        let g = band();
        assert!(!is_quasi_minimal(&g).unwrap());
        assert!(matches!(h_extract(&g), Err(Error::NotQuasiMinimal(..))));
        let members = h_members_sample(&g).unwrap();
        assert_eq!(members.len(), 2);
        assert_ne!(members[0], members[1]);
        for m in &members {
            assert!(is_h_continuous(m));
            assert!(m.is_subset_of(&g).unwrap());
        }
    }

    #[test]
    fn quasi_minimal_gives_singleton() {
        let sign = step(XInterval::finite(q(-1, 1), q(1, 1)).unwrap());
        assert_eq!(h_members_sample(&sign).unwrap(), vec![sign.clone()]);
        let wide = step(XInterval::finite(q(-2, 1), q(2, 1)).unwrap());
        assert_eq!(h_members_sample(&wide).unwrap(), vec![sign]);
    }
}
