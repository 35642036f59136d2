//! Ring operations on H-continuous piecewise functions together with the
//! constructive content of the ring-of-quotients results: inversion of
//! non-zero-divisors, quotient representation, density witnesses and the
//! representer of a compatible family of images.

use num_traits::{One, Zero};

use crate::error::{Error, Location, Result};
use crate::exreal::{add_iv, mul_iv};
use crate::piecewise::{refine, refine_all, PiecewiseFn, Segment};
use crate::regularize::{extract_unchecked, is_h_continuous};
use crate::segments::{isolate, Poly, RationalFunc, SignChart};
use crate::Rational;

fn require_h(fs: &[&PiecewiseFn]) -> Result<()> {
    if fs.iter().all(|f| is_h_continuous(f)) {
        Ok(())
    } else {
        Err(Error::NotHContinuous)
    }
}

fn pointwise(
    f: &PiecewiseFn,
    g: &PiecewiseFn,
    seg_op: impl Fn(&RationalFunc, &RationalFunc) -> RationalFunc,
    iv_op: impl Fn(&crate::exreal::XInterval, &crate::exreal::XInterval) -> crate::exreal::XInterval,
) -> Result<PiecewiseFn> {
    require_h(&[f, g])?;
    let (f, g) = refine(f, g)?;
    let segs = f
        .segments()
        .iter()
        .zip(g.segments())
        .map(|(s, t)| Segment::point(seg_op(&s.lo, &t.lo)))
        .collect();
    let vals = f.values().iter().zip(g.values()).map(|(u, v)| iv_op(u, v)).collect();
    Ok(PiecewiseFn::from_parts(f.breakpoints().to_vec(), vals, segs))
}

/// Pointwise interval sum `f + g` before regularization. S-continuous and
/// quasi-minimal for H-continuous inputs.
pub fn pointwise_add(f: &PiecewiseFn, g: &PiecewiseFn) -> Result<PiecewiseFn> {
    pointwise(f, g, RationalFunc::add, add_iv)
}

/// Pointwise interval product `f × g` before regularization.
pub fn pointwise_mul(f: &PiecewiseFn, g: &PiecewiseFn) -> Result<PiecewiseFn> {
    pointwise(f, g, RationalFunc::mul, mul_iv)
}

/// `f ⊕ g`: the H-continuous function contained in `f + g`.
pub fn h_add(f: &PiecewiseFn, g: &PiecewiseFn) -> Result<PiecewiseFn> {
    Ok(extract_unchecked(&pointwise_add(f, g)?))
}

/// `f ⊗ g`: the H-continuous function contained in `f × g`.
pub fn h_mul(f: &PiecewiseFn, g: &PiecewiseFn) -> Result<PiecewiseFn> {
    Ok(extract_unchecked(&pointwise_mul(f, g)?))
}

pub fn scale(c: &Rational, f: &PiecewiseFn) -> Result<PiecewiseFn> {
    require_h(&[f])?;
    if c.is_zero() {
        return Ok(f.constant_like(Rational::zero()));
    }
    Ok(f.scale_nonzero(c).canon())
}

pub fn neg(f: &PiecewiseFn) -> Result<PiecewiseFn> {
    scale(&-Rational::one(), f)
}

/// `f ⊖ g = f ⊕ (−1)g`.
pub fn sub(f: &PiecewiseFn, g: &PiecewiseFn) -> Result<PiecewiseFn> {
    h_add(f, &neg(g)?)
}

/// Adds a rational constant.
pub fn add_const(f: &PiecewiseFn, c: &Rational) -> Result<PiecewiseFn> {
    h_add(f, &f.constant_like(c.clone()))
}

/// Whether `Z(f)` has interior, i.e. `f ⊗ g = 0` for some non-zero `g`.
pub fn is_zero_divisor(f: &PiecewiseFn) -> bool {
    f.zero_interior().is_some()
}

/// `1/f` for a non-zero-divisor: reciprocal segments with new breakpoints at
/// the interior zeros of `f`, values filled by limits.
pub fn h_inv(f: &PiecewiseFn) -> Result<PiecewiseFn> {
    require_h(&[f])?;
    let mut bps = vec![f.breakpoints()[0].clone()];
    let mut segs = Vec::new();
    for (i, s) in f.segments().iter().enumerate() {
        let (l, r) = f.segment_bounds(i);
        if s.lo.is_zero() {
            return Err(Error::ZeroDivisor(l.clone(), r.clone()));
        }
        let inv = Segment::point(s.lo.recip()?);
        for root in isolate(s.lo.num(), l, r) {
            match root.loc {
                Location::Exact(z) => {
                    segs.push(inv.clone());
                    bps.push(z);
                }
                loc => return Err(Error::NonRepresentablePoint(loc)),
            }
        }
        segs.push(inv);
        bps.push(r.clone());
    }
    Ok(PiecewiseFn::extend_unchecked(bps, segs).canon())
}

/// Class membership flags of an H-continuous function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub continuous: bool,
    pub finite: bool,
    pub nearly_finite: bool,
    pub in_h_nd: bool,
    pub in_h_sz: bool,
    /// Polynomial whose zero set contains `W_f`.
    pub sz_witness: Poly,
}

fn vanishing_poly<'a>(points: impl IntoIterator<Item = &'a Rational>) -> Poly {
    points
        .into_iter()
        .fold(Poly::one(), |acc, w| &acc * &Poly::linear_root(w))
}

pub fn classify(f: &PiecewiseFn) -> Result<Classification> {
    require_h(&[f])?;
    let w: Vec<&Rational> = f
        .breakpoints()
        .iter()
        .zip(f.values())
        .filter(|(_, v)| v.is_proper())
        .map(|(b, _)| b)
        .collect();
    let gamma = f.gamma_indices();
    Ok(Classification {
        continuous: w.is_empty() && gamma.is_empty(),
        finite: f.is_finite(),
        nearly_finite: true,
        in_h_nd: true,
        in_h_sz: true,
        sz_witness: vanishing_poly(w),
    })
}

pub fn is_continuous(f: &PiecewiseFn) -> bool {
    f.values().iter().all(|v| v.is_point() && v.is_finite())
}

/// `f = phi / psi` with continuous `phi`, `psi` and `psi` a non-zero-divisor.
pub fn as_quotient(f: &PiecewiseFn) -> Result<(PiecewiseFn, PiecewiseFn)> {
    require_h(&[f])?;
    let defects = f
        .breakpoints()
        .iter()
        .zip(f.values())
        .filter(|(_, v)| v.is_proper() || v.touches_infinity())
        .map(|(b, _)| b);
    let (a, b) = f.domain();
    let g = PiecewiseFn::from_expr(
        RationalFunc::from_poly(vanishing_poly(defects)),
        a.clone(),
        b.clone(),
    )?;
    let denom = h_inv(&add_const(&h_mul(f, f)?, &Rational::one())?)?;
    let phi = h_mul(&h_mul(f, &g)?, &denom)?;
    let psi = h_mul(&g, &denom)?;
    Ok((phi, psi))
}

fn is_zero_fn(f: &PiecewiseFn) -> bool {
    f.canon() == f.constant_like(Rational::zero())
}

/// Continuous `h` with `phi ⊗ h` continuous and `psi ⊗ h ≠ 0`.
pub fn dense_witness(phi: &PiecewiseFn, psi: &PiecewiseFn) -> Result<PiecewiseFn> {
    require_h(&[phi, psi])?;
    phi.same_domain(psi)?;
    if is_zero_fn(psi) {
        return Err(Error::ZeroFunction);
    }
    if is_continuous(phi) {
        return Ok(phi.constant_like(Rational::one()));
    }
    let (phi_r, psi_r) = refine(phi, psi)?;
    let k = psi_r
        .segments()
        .iter()
        .position(|s| !s.lo.is_zero())
        .expect("a non-zero H-continuous function has a non-zero segment");
    let (l, r) = phi_r.segment_bounds(k);
    let target = &psi_r.segments()[k].lo;
    let chart = SignChart::new(&[target], l, r);
    let gap = chart.gap_signs[0].iter().position(|&s| s != 0).unwrap();
    let p = chart.gap_points[gap].clone();
    let two = Rational::from_integer(2.into());
    let mut delta = (&p - l).min(r - &p) / &two;
    loop {
        let (s, t) = (&p - &delta, &p + &delta);
        if let Some((lo, hi)) = target.eval_range(&s, &t) {
            if lo > Rational::zero() || hi < Rational::zero() {
                return Ok(hat(phi, s, t));
            }
        }
        delta /= &two;
    }
}

/// `c (x − s)(t − x)` on `(s, t)` with peak value 1, zero elsewhere.
fn hat(like: &PiecewiseFn, s: Rational, t: Rational) -> PiecewiseFn {
    let (a, b) = like.domain();
    let width = &t - &s;
    let c = Rational::from_integer(4.into()) / (&width * &width);
    let bump = &Poly::linear_root(&s) * &Poly::linear_root(&t);
    let bump = RationalFunc::from_poly(bump.scale(&-c));
    let zero = Segment::point(RationalFunc::zero());
    PiecewiseFn::extend_unchecked(
        vec![a.clone(), s, t, b.clone()],
        vec![zero.clone(), Segment::point(bump), zero],
    )
}

/// The function `psi` with `psi ⊗ p_i = q_i` for a compatible family of
/// images `q_i` of generators `p_i` of a dense ideal.
pub fn rep_homomorphism(ps: &[PiecewiseFn], qs: &[PiecewiseFn]) -> Result<PiecewiseFn> {
    if ps.is_empty() || ps.len() != qs.len() {
        return Err(Error::InvalidArgument(format!(
            "need equally many generators and images, got {} and {}",
            ps.len(),
            qs.len()
        )));
    }
    let all: Vec<&PiecewiseFn> = ps.iter().chain(qs).collect();
    require_h(&all)?;
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            if !h_mul(&qs[i], &ps[j])?.equals(&h_mul(&ps[i], &qs[j])?)? {
                return Err(Error::IncompatibleImages(i, j));
            }
        }
    }
    let refined = refine_all(&all)?;
    let (pr, qr) = refined.split_at(ps.len());
    let base = &pr[0];
    let mut bps = vec![base.breakpoints()[0].clone()];
    let mut segs = Vec::new();
    for k in 0..base.segments().len() {
        let (l, r) = base.segment_bounds(k);
        let chosen = (0..ps.len())
            .filter(|&i| !pr[i].segments()[k].lo.is_zero())
            .min_by_key(|&i| isolate(pr[i].segments()[k].lo.num(), l, r).len())
            .ok_or_else(|| Error::IdealNotDense(l.clone(), r.clone()))?;
        let psi = qr[chosen].segments()[k].lo.div(&pr[chosen].segments()[k].lo)?;
        let piece = Segment::point(psi.clone());
        for pole in isolate(psi.den(), l, r) {
            match pole.loc {
                Location::Exact(z) => {
                    segs.push(piece.clone());
                    bps.push(z);
                }
                loc => return Err(Error::NonRepresentablePoint(loc)),
            }
        }
        segs.push(piece);
        bps.push(r.clone());
    }
    Ok(PiecewiseFn::extend_unchecked(bps, segs).canon())
}
