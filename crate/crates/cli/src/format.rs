//! Text rendering of rationals, intervals and functions.

use hnf_core::{Enclosure, ExtReal, PiecewiseFn, Rational, Segment, XInterval};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// How scalars are printed in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Style {
    /// `p/q`, exact.
    #[default]
    Exact,
    /// Rounded to the given number of fractional digits; a leading `~` marks
    /// a value that was not representable exactly.
    Decimal(usize),
}

impl Style {
    pub fn rat(self, r: &Rational) -> String {
        match self {
            Style::Exact => r.to_string(),
            Style::Decimal(k) => decimal(r, k),
        }
    }

    pub fn ext(self, e: &ExtReal) -> String {
        match e {
            ExtReal::Finite(r) => self.rat(r),
            other => other.to_string(),
        }
    }

    pub fn interval(self, v: &XInterval) -> String {
        if v.is_point() {
            self.ext(v.lo())
        } else {
            format!("[{},{}]", self.ext(v.lo()), self.ext(v.hi()))
        }
    }

    /// Enclosure endpoints: exact values with a terminating expansion are
    /// shown in positional notation.
    pub fn enclosure(self, e: &Enclosure) -> String {
        let end = |x: &ExtReal| match (self, x) {
            (Style::Exact, ExtReal::Finite(r)) => terminating(r).unwrap_or_else(|| r.to_string()),
            _ => self.ext(x),
        };
        format!("[{}, {}]", end(&e.lo), end(&e.hi))
    }
}

/// Exact positional expansion of `r` when its denominator has no prime
/// factors besides 2 and 5.
pub fn terminating(r: &Rational) -> Option<String> {
    let mut d = r.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0usize, 0usize);
    while d.is_even() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return None;
    }
    Some(fixed(r, twos.max(fives)))
}

fn fixed(r: &Rational, k: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), k);
    let scaled = r * Rational::from_integer(scale.clone());
    let n = scaled.to_integer();
    let neg = n.is_negative();
    let digits = n.abs().to_string();
    let body = if k == 0 {
        digits
    } else {
        let padded = format!("{digits:0>width$}", width = k + 1);
        let (int, frac) = padded.split_at(padded.len() - k);
        format!("{int}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Rounds half away from zero to `k` fractional digits.
fn decimal(r: &Rational, k: usize) -> String {
    let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), k));
    let scaled = r * &scale;
    let rounded = scaled.round();
    let text = fixed(&(&rounded / &scale), k);
    if rounded == scaled {
        text
    } else {
        format!("~{text}")
    }
}

fn segment(s: &Segment) -> String {
    if s.is_point() {
        s.lo.to_string()
    } else {
        format!("{} .. {}", s.lo, s.hi)
    }
}

/// Canonical literal of `f`: every breakpoint value and every segment in
/// left-to-right order, scalars exact.
pub fn format_fn(f: &PiecewiseFn) -> String {
    format_fn_styled(f, Style::Exact)
}

pub fn format_fn_styled(f: &PiecewiseFn, style: Style) -> String {
    let g = f.canon();
    let (a, b) = g.domain();
    let bps = g.breakpoints();
    let mut parts = Vec::with_capacity(2 * bps.len());
    for (i, (p, v)) in bps.iter().zip(g.values()).enumerate() {
        parts.push(format!("{}: {}", style.rat(p), style.interval(v)));
        if let Some(s) = g.segments().get(i) {
            parts.push(format!("({},{}): {}", style.rat(p), style.rat(&bps[i + 1]), segment(s)));
        }
    }
    format!("piecewise on [{},{}] {{ {} }}", style.rat(a), style.rat(b), parts.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_fn;
    use hnf_core::corpus::{self, named};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn literals() {
        assert_eq!(
            format_fn(&named::sign()),
            "piecewise on [-1,1] { -1: -1; (-1,0): -1; 0: [-1,1]; (0,1): 1; 1: 1 }"
        );
        assert_eq!(
            format_fn(&named::inv_x()),
            "piecewise on [-1,1] { -1: -1; (-1,0): 1/x; 0: [-inf,inf]; (0,1): 1/x; 1: 1 }"
        );
        let zero = named::x().constant_like(q(0, 1));
        assert_eq!(format_fn(&zero), "piecewise on [-1,1] { -1: 0; (-1,1): 0; 1: 0 }");
    }

    #[test]
    fn round_trip() {
        for f in corpus::standard(80) {
            assert_eq!(parse_fn(&format_fn(&f)).unwrap(), f.canon());
        }
    }

    #[test]
    fn scalar_styles() {
        assert_eq!(terminating(&q(1, 2)).as_deref(), Some("0.5"));
        assert_eq!(terminating(&q(-3, 40)).as_deref(), Some("-0.075"));
        assert_eq!(terminating(&q(7, 1)).as_deref(), Some("7"));
        assert_eq!(terminating(&q(1, 3)), None);
        assert_eq!(Style::Decimal(3).rat(&q(1, 3)), "~0.333");
        assert_eq!(Style::Decimal(2).rat(&q(-1, 4)), "-0.25");
        assert_eq!(Style::Decimal(1).rat(&q(-1, 4)), "~-0.3");
        assert_eq!(Style::Decimal(0).rat(&q(5, 2)), "~3");
    }
}
