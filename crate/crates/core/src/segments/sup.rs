//! Certified suprema of `|f|` over open intervals.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::ratfunc::{RationalFunc, Side};
use super::roots::{isolate, refine_step};
use crate::error::{Error, Location, Result};
use crate::exreal::ExtReal;
use crate::Rational;

/// Certified bounds `lo <= value <= hi` on a real quantity. When both bounds
/// are finite, `hi - lo <= tol`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: ExtReal,
    pub hi: ExtReal,
    pub tol: Rational,
}

impl Enclosure {
    pub fn exact(v: ExtReal, tol: Rational) -> Self {
        Enclosure {
            lo: v.clone(),
            hi: v,
            tol,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> ExtReal {
        match (&self.lo, &self.hi) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(b - a),
            (a, b) if a == b => ExtReal::zero(),
            _ => ExtReal::PosInf,
        }
    }

    pub fn contains(&self, v: &ExtReal) -> bool {
        &self.lo <= v && v <= &self.hi
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Default tolerance `10^-12`.
pub fn default_tol() -> Rational {
    Rational::new(One::one(), num_bigint::BigInt::from(10u64).pow(12))
}

struct Critical {
    poly: crate::segments::poly::Poly,
    l: Rational,
    r: Rational,
    /// Upper bound of `|f|` over `[l, r]`, `None` if unbounded so far.
    upper: Option<Rational>,
}

fn abs_upper(f: &RationalFunc, l: &Rational, r: &Rational) -> Option<Rational> {
    f.eval_range(l, r).map(|(a, b)| a.abs().max(b.abs()))
}

/// Certified enclosure of `sup |f|` over the open interval `(lo, hi)`.
///
/// Candidates are the one-sided limits at both ends and `|f|` at the roots
/// of the derivative numerator. Irrational critical points are bracketed and
/// bisected until the enclosure width is at most `tol`.
pub fn sup_abs(f: &RationalFunc, lo: &Rational, hi: &Rational, tol: &Rational) -> Result<Enclosure> {
    if !tol.is_positive() {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if let Some(pole) = isolate(f.den(), lo, hi).into_iter().next() {
        return Err(Error::InteriorPole {
            at: pole.loc,
            from: lo.clone(),
            to: hi.clone(),
        });
    }
    let left = f.limit(lo, Side::Right);
    let right = f.limit(hi, Side::Left);
    if left.is_infinite() || right.is_infinite() {
        return Ok(Enclosure::exact(ExtReal::PosInf, tol.clone()));
    }
    let mut known = left.abs().max(right.abs());
    let known_val = |v: Rational| ExtReal::Finite(v.abs());
    let mut pending = Vec::new();
    let crit = f.critical_numerator();
    if !crit.is_zero() {
        for root in isolate(&crit, lo, hi) {
            match root.loc {
                Location::Exact(c) => {
                    known = known.max(known_val(f.eval(&c).expect("pole-free interior")));
                }
                Location::Bracket(l, r) => {
                    let poly = crit.square_free();
                    let upper = abs_upper(f, &l, &r);
                    pending.push(Critical { poly, l, r, upper });
                }
            }
        }
    }
    loop {
        let mut s_lo = known.clone();
        for c in &pending {
            for x in [&c.l, &c.r] {
                s_lo = s_lo.max(known_val(f.eval(x).expect("pole-free interior")));
            }
        }
        let mut s_hi = known.clone();
        for c in &pending {
            let u = c.upper.clone().map_or(ExtReal::PosInf, ExtReal::Finite);
            s_hi = s_hi.max(u);
        }
        let done = match (&s_lo, &s_hi) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => &(b - a) <= tol,
            _ => false,
        };
        if done {
            return Ok(Enclosure {
                lo: s_lo,
                hi: s_hi,
                tol: tol.clone(),
            });
        }
        let floor = s_lo.finite().cloned().unwrap_or_else(Rational::zero);
        let mut next = Vec::with_capacity(pending.len());
        for c in pending {
            let needs = c.upper.as_ref().is_none_or(|u| u - &floor > *tol);
            if !needs {
                next.push(c);
                continue;
            }
            match refine_step(&c.poly, &c.l, &c.r) {
                Err(root) => {
                    known = known.max(known_val(f.eval(&root).expect("pole-free interior")));
                }
                Ok((l, r)) => {
                    let upper = abs_upper(f, &l, &r);
                    next.push(Critical { poly: c.poly, l, r, upper });
                }
            }
        }
        pending = next;
    }
}
