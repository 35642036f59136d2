//! Extended reals and closed extended intervals.
//!
//! Scalars are exact rationals together with `±∞`. Interval addition and
//! multiplication are taken endpoint-wise. The indeterminate endpoint forms
//! resolve to interval hulls so that inclusion is always preserved:
//!
//! * `-∞ + (+∞) = [-∞, +∞]`
//! * `0 × (+∞) = [0, +∞]`
//! * `0 × (-∞) = [-∞, 0]`
//!
//! together with their commutative variants.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use num_traits::{Signed, Zero};

use crate::Rational;

/// An exact rational or one of the two infinities.
///
/// The derived order puts `NegInf` below every finite value and `PosInf`
/// above; `BigRational` is always kept in lowest terms so equality and
/// hashing are canonical.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtReal {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal::Finite(Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExtReal::Finite(Rational::from_integer(n.into()))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtReal::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtReal::Finite(r) if r.is_zero())
    }

    /// Sign as -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self {
            ExtReal::NegInf => -1,
            ExtReal::PosInf => 1,
            ExtReal::Finite(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> ExtReal {
        match self {
            ExtReal::Finite(r) => ExtReal::Finite(r.abs()),
            _ => ExtReal::PosInf,
        }
    }

    fn infinity(sign: i32) -> ExtReal {
        if sign > 0 {
            ExtReal::PosInf
        } else {
            ExtReal::NegInf
        }
    }

    /// Sum of two extended reals as an interval; the indeterminate form
    /// `-∞ + +∞` yields the whole line.
    pub fn add_hull(&self, other: &ExtReal) -> XInterval {
        use ExtReal::*;
        match (self, other) {
            (Finite(a), Finite(b)) => XInterval::point(Finite(a + b)),
            (NegInf, PosInf) | (PosInf, NegInf) => XInterval::entire(),
            (NegInf, _) | (_, NegInf) => XInterval::point(NegInf),
            (PosInf, _) | (_, PosInf) => XInterval::point(PosInf),
        }
    }

    /// Product of two extended reals as an interval; `0 × ±∞` yields the
    /// half line on the side of the infinity.
    pub fn mul_hull(&self, other: &ExtReal) -> XInterval {
        use ExtReal::*;
        match (self, other) {
            (Finite(a), Finite(b)) => XInterval::point(Finite(a * b)),
            _ => {
                let (sa, sb) = (self.signum(), other.signum());
                if sa == 0 || sb == 0 {
                    let inf = if sa == 0 { other } else { self };
                    if *inf == PosInf {
                        XInterval::new_unchecked(ExtReal::zero(), PosInf)
                    } else {
                        XInterval::new_unchecked(NegInf, ExtReal::zero())
                    }
                } else {
                    XInterval::point(ExtReal::infinity(sa * sb))
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> ExtReal {
        match self {
            ExtReal::Finite(r) => ExtReal::Finite(r * c),
            _ if c.is_zero() => ExtReal::zero(),
            ExtReal::PosInf => ExtReal::infinity(if c.is_positive() { 1 } else { -1 }),
            ExtReal::NegInf => ExtReal::infinity(if c.is_positive() { -1 } else { 1 }),
        }
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::Finite(r) => ExtReal::Finite(-r),
        }
    }
}

impl Neg for &ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        -self.clone()
    }
}

impl From<Rational> for ExtReal {
    fn from(r: Rational) -> Self {
        ExtReal::Finite(r)
    }
}

impl PartialEq<Rational> for ExtReal {
    fn eq(&self, other: &Rational) -> bool {
        matches!(self, ExtReal::Finite(r) if r == other)
    }
}

impl PartialOrd<Rational> for ExtReal {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(match self {
            ExtReal::NegInf => Ordering::Less,
            ExtReal::PosInf => Ordering::Greater,
            ExtReal::Finite(r) => r.cmp(other),
        })
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::PosInf => f.write_str("inf"),
            ExtReal::Finite(r) => write!(f, "{r}"),
        }
    }
}

/// Closed extended interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XInterval {
    lo: ExtReal,
    hi: ExtReal,
}

impl XInterval {
    /// Returns `None` when `lo > hi`.
    pub fn new(lo: ExtReal, hi: ExtReal) -> Option<Self> {
        (lo <= hi).then_some(XInterval { lo, hi })
    }

    pub(crate) fn new_unchecked(lo: ExtReal, hi: ExtReal) -> Self {
        debug_assert!(lo <= hi);
        XInterval { lo, hi }
    }

    pub fn point(v: ExtReal) -> Self {
        XInterval { lo: v.clone(), hi: v }
    }

    pub fn rational(r: Rational) -> Self {
        XInterval::point(ExtReal::Finite(r))
    }

    pub fn finite(lo: Rational, hi: Rational) -> Option<Self> {
        XInterval::new(ExtReal::Finite(lo), ExtReal::Finite(hi))
    }

    pub fn entire() -> Self {
        XInterval {
            lo: ExtReal::NegInf,
            hi: ExtReal::PosInf,
        }
    }

    /// The smallest interval containing both endpoints, in either order.
    pub fn hull_of(a: ExtReal, b: ExtReal) -> Self {
        if a <= b {
            XInterval { lo: a, hi: b }
        } else {
            XInterval { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> &ExtReal {
        &self.lo
    }

    pub fn hi(&self) -> &ExtReal {
        &self.hi
    }

    pub fn into_bounds(self) -> (ExtReal, ExtReal) {
        (self.lo, self.hi)
    }

    /// Width with the conventions `w([±∞, ±∞]) = 0` and `+∞` whenever one
    /// endpoint is infinite and the interval is proper.
    pub fn width(&self) -> ExtReal {
        match (&self.lo, &self.hi) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(b - a),
            (a, b) if a == b => ExtReal::zero(),
            _ => ExtReal::PosInf,
        }
    }

    pub fn modulus(&self) -> ExtReal {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_proper(&self) -> bool {
        !self.is_point()
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Whether some endpoint is `±∞`.
    pub fn touches_infinity(&self) -> bool {
        !self.is_finite()
    }

    pub fn contains(&self, x: &ExtReal) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&ExtReal::zero())
    }

    pub fn is_subset_of(&self, other: &XInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn hull(&self, other: &XInterval) -> XInterval {
        XInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Midpoint of a finite interval.
    pub fn midpoint(&self) -> Option<Rational> {
        match (&self.lo, &self.hi) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => Some((a + b) / Rational::from_integer(2.into())),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> XInterval {
        XInterval::hull_of(self.lo.scale(c), self.hi.scale(c))
    }
}

fn hull_all(parts: impl IntoIterator<Item = XInterval>) -> XInterval {
    parts
        .into_iter()
        .reduce(|a, b| a.hull(&b))
        .expect("nonempty hull")
}

/// Interval sum; ambiguous endpoint sums widen to the interval hull.
pub fn add_iv(a: &XInterval, b: &XInterval) -> XInterval {
    hull_all([
        a.lo.add_hull(&b.lo),
        a.lo.add_hull(&b.hi),
        a.hi.add_hull(&b.lo),
        a.hi.add_hull(&b.hi),
    ])
}

/// Interval product as the hull of the four endpoint products.
pub fn mul_iv(a: &XInterval, b: &XInterval) -> XInterval {
    hull_all([
        a.lo.mul_hull(&b.lo),
        a.lo.mul_hull(&b.hi),
        a.hi.mul_hull(&b.lo),
        a.hi.mul_hull(&b.hi),
    ])
}

pub fn neg_iv(a: &XInterval) -> XInterval {
    XInterval {
        lo: -&a.hi,
        hi: -&a.lo,
    }
}

pub fn width(a: &XInterval) -> ExtReal {
    a.width()
}

pub fn modulus(a: &XInterval) -> ExtReal {
    a.modulus()
}

impl fmt::Display for XInterval {
    /// Point intervals print as a bare scalar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}
