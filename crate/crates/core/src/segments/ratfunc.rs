//! Canonical quotients of integer polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{sign, Poly};
use crate::error::{Error, Result};
use crate::exreal::ExtReal;
use crate::Rational;

/// Direction of approach for one-sided limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `num / den` with integer coefficients, `gcd(num, den) = 1`, the joint
/// content of all coefficients equal to 1 and a positive leading
/// coefficient in `den`. The zero function is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunc {
    num: Poly,
    den: Poly,
}

impl RationalFunc {
    /// Canonical form of `num / den`.
    pub fn normalize(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunc::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        // Clear denominators, then remove the joint integer content.
        let mut lcm = BigInt::one();
        let mut gcd = BigInt::zero();
        for c in num.coeffs().iter().chain(den.coeffs()) {
            lcm = lcm.lcm(c.denom());
        }
        for c in num.coeffs().iter().chain(den.coeffs()) {
            gcd = gcd.gcd(&(c.numer() * (&lcm / c.denom())));
        }
        let mut factor = Rational::new(lcm, gcd);
        if den.leading().is_negative() {
            factor = -factor;
        }
        Ok(RationalFunc {
            num: num.scale(&factor),
            den: den.scale(&factor),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunc::normalize(p, Poly::one()).expect("nonzero denominator")
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunc::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RationalFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunc::constant(Rational::one())
    }

    pub fn x() -> Self {
        RationalFunc::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The constant value, if the function is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant())
            .then(|| self.num.constant_term() / self.den.constant_term())
    }

    pub fn add(&self, other: &RationalFunc) -> RationalFunc {
        if self.den == other.den {
            return RationalFunc::normalize(&self.num + &other.num, self.den.clone()).unwrap();
        }
        RationalFunc::normalize(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .unwrap()
    }

    pub fn sub(&self, other: &RationalFunc) -> RationalFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFunc) -> RationalFunc {
        RationalFunc::normalize(&self.num * &other.num, &self.den * &other.den).unwrap()
    }

    pub fn neg(&self) -> RationalFunc {
        RationalFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<RationalFunc> {
        if self.is_zero() {
            return Err(Error::ZeroReciprocal);
        }
        RationalFunc::normalize(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RationalFunc) -> Result<RationalFunc> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn scale(&self, c: &Rational) -> RationalFunc {
        RationalFunc::normalize(self.num.scale(c), self.den.clone()).unwrap()
    }

    pub fn add_const(&self, c: &Rational) -> RationalFunc {
        self.add(&RationalFunc::constant(c.clone()))
    }

    pub fn pow(&self, e: i32) -> Result<RationalFunc> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RationalFunc {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    pub fn derivative(&self) -> RationalFunc {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalFunc::normalize(num, &self.den * &self.den).unwrap()
    }

    /// Numerator of the derivative before cancellation; its roots contain
    /// every critical point.
    pub fn critical_numerator(&self) -> Poly {
        &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative())
    }

    /// Exact value, or `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn has_pole_at(&self, x: &Rational) -> bool {
        self.den.eval(x).is_zero()
    }

    /// One-sided limit at `p`. At a pole the sign comes from the numerator
    /// at `p`, the cofactor of the denominator at `p`, and the parity of the
    /// pole order on the left side.
    pub fn limit(&self, p: &Rational, side: Side) -> ExtReal {
        if let Some(v) = self.eval(p) {
            return ExtReal::Finite(v);
        }
        let mut cof = self.den.clone();
        let mut order = 0usize;
        while cof.eval(p).is_zero() {
            cof = cof.deflate(p);
            order += 1;
        }
        let mut s = sign(&self.num.eval(p)) * sign(&cof.eval(p));
        if side == Side::Left && order % 2 == 1 {
            s = -s;
        }
        if s > 0 {
            ExtReal::PosInf
        } else {
            ExtReal::NegInf
        }
    }

    /// Two-sided limit, `None` if the one-sided limits differ.
    pub fn limit_both(&self, p: &Rational) -> Option<ExtReal> {
        let l = self.limit(p, Side::Left);
        (l == self.limit(p, Side::Right)).then_some(l)
    }

    /// Interval enclosure of the range over `[lo, hi]`, or `None` when the
    /// denominator enclosure contains zero.
    pub fn eval_range(&self, lo: &Rational, hi: &Rational) -> Option<(Rational, Rational)> {
        let (dl, dh) = self.den.eval_range(lo, hi);
        if !(dl.is_positive() || dh.is_negative()) {
            return None;
        }
        let (nl, nh) = self.num.eval_range(lo, hi);
        let (rl, rh) = (dh.recip(), dl.recip());
        let prods = [&nl * &rl, &nl * &rh, &nh * &rl, &nh * &rh];
        Some((
            prods.iter().min().unwrap().clone(),
            prods.iter().max().unwrap().clone(),
        ))
    }
}

fn needs_parens(p: &Poly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
}

impl fmt::Display for RationalFunc {
    /// Canonical expression text, e.g. `(x^2+1)/(2*x)` or `-1/x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let d = &self.den;
        let bare_monomial = !needs_parens(d) && d.leading().is_one();
        if d.is_constant() || bare_monomial {
            write!(f, "/{d}")
        } else {
            write!(f, "/({d})")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunc {
        RationalFunc::normalize(p(n), p(d)).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), rf(&[1, 1], &[1]));
        let f = rf(&[0, 2], &[4]);
        assert_eq!(f.num(), &p(&[0, 1]));
        assert_eq!(f.den(), &p(&[2]));
        let z = rf(&[0], &[0, 1]);
        assert!(z.is_zero());
        assert_eq!(z.den(), &Poly::one());
        assert_eq!(
            RationalFunc::normalize(p(&[1]), Poly::zero()),
            Err(Error::ZeroDenominator)
        );
        // negative denominator leading coefficient flips
        let g = rf(&[1], &[0, -3]);
        assert_eq!(g.num(), &p(&[-1]));
        assert_eq!(g.den(), &p(&[0, 3]));
    }

    #[test]
    fn arithmetic_examples() {
        let inv_x = rf(&[1], &[0, 1]);
        assert!(inv_x.add(&inv_x.neg()).is_zero());
        assert_eq!(RationalFunc::x().mul(&inv_x), RationalFunc::one());
        assert_eq!(rf(&[0, 0, 1], &[1]).recip().unwrap(), rf(&[1], &[0, 0, 1]));
        assert_eq!(RationalFunc::zero().recip(), Err(Error::ZeroReciprocal));
    }

    #[test]
    fn limit_examples() {
        let inv_x = rf(&[1], &[0, 1]);
        assert_eq!(inv_x.limit(&q(0, 1), Side::Right), ExtReal::PosInf);
        assert_eq!(inv_x.limit(&q(0, 1), Side::Left), ExtReal::NegInf);
        assert_eq!(inv_x.limit_both(&q(0, 1)), None);
        let removable = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(removable.limit_both(&q(1, 1)), Some(ExtReal::from_int(2)));
        assert_eq!(RationalFunc::x().limit(&q(0, 1), Side::Left), ExtReal::zero());
        // -1/x^2 -> -inf from both sides
        let f = rf(&[-1], &[0, 0, 1]);
        assert_eq!(f.limit_both(&q(0, 1)), Some(ExtReal::NegInf));
        // 1/(x(x-1)) at 1 from the left: numerator 1, cofactor x -> 1 > 0, odd order
        let g = rf(&[1], &[0, -1, 1]);
        assert_eq!(g.limit(&q(1, 1), Side::Left), ExtReal::NegInf);
        assert_eq!(g.limit(&q(1, 1), Side::Right), ExtReal::PosInf);
    }

    #[test]
    fn display() {
        assert_eq!(rf(&[1], &[0, 1]).to_string(), "1/x");
        assert_eq!(rf(&[-1], &[0, 1]).to_string(), "-1/x");
        assert_eq!(rf(&[1, 0, 1], &[0, 2]).to_string(), "(x^2+1)/(2*x)");
        assert_eq!(rf(&[0, 1], &[2]).to_string(), "x/2");
        assert_eq!(rf(&[1], &[0, 0, 1]).to_string(), "1/x^2");
        assert_eq!(rf(&[1], &[1, 1]).to_string(), "1/(x+1)");
    }
}
