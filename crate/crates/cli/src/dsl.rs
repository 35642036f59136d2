//! Lexer and recursive-descent parser for the function language.
//!
//! ```text
//! function  = literal | expr "on" domain
//! literal   = "piecewise" "on" domain "{" [ item { ";" item } [ ";" ] ] "}"
//! item      = "(" number "," number ")" ":" expr [ ".." expr ]
//!           | number ":" value
//! value     = "[" bound "," bound "]" | bound
//! bound     = number | [ "+" | "-" ] "inf"
//! domain    = "[" number "," number "]"
//! number    = [ "+" | "-" ] decimal [ "/" decimal ]
//! expr      = term { ( "+" | "-" ) term }
//! term      = unary { ( "*" | "/" ) unary }
//! unary     = ( "+" | "-" ) unary | power
//! power     = atom [ "^" [ "-" ] integer ]
//! atom      = decimal | "x" | "(" expr ")"
//! ```
//!
//! Decimals may carry a fractional part and an exponent (`2.5`, `1e-3`);
//! they are read exactly. `#` starts a comment running to the end of line.

use hnf_core::{Error, ExtReal, PiecewiseFn, Rational, RationalFunc, Segment, XInterval};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{CliError, Span};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Int(BigInt),
    Word(String),
    Sym(&'static str),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: Span,
}

const SYMBOLS: [&str; 15] = ["..", "(", ")", "[", "]", "{", "}", ",", ";", ":", "+", "-", "*", "/", "^"];

fn lex(text: &str) -> Result<Vec<Token>, CliError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            let (tok, len) = lex_number(&chars[start..]).map_err(|msg| CliError::parse(span, msg))?;
            i += len;
            col += len;
            out.push(Token { tok, span });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Word(word), span });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                i += s.len();
                col += s.len();
                out.push(Token { tok: Tok::Sym(s), span });
            }
            None => return Err(CliError::parse(span, format!("unexpected character '{c}'"))),
        }
    }
    out.push(Token {
        tok: Tok::End,
        span: Span { line, col },
    });
    Ok(out)
}

/// Reads one unsigned decimal literal, returning the token and its length.
fn lex_number(chars: &[char]) -> Result<(Tok, usize), String> {
    let mut i = 0;
    let digits = |i: &mut usize| {
        let s = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[s..*i].iter().collect::<String>()
    };
    let int_part = digits(&mut i);
    let mut frac = String::new();
    let mut decimal = false;
    if i < chars.len() && chars[i] == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
        i += 1;
        frac = digits(&mut i);
        decimal = true;
    }
    let mut exp: i64 = 0;
    if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
        let mut j = i + 1;
        let mut neg = false;
        if j < chars.len() && (chars[j] == '-' || chars[j] == '+') {
            neg = chars[j] == '-';
            j += 1;
        }
        if j < chars.len() && chars[j].is_ascii_digit() {
            let e = digits(&mut j);
            let e: i64 = e.parse().map_err(|_| "exponent too large".to_string())?;
            exp = if neg { -e } else { e };
            i = j;
            decimal = true;
        }
    }
    let mantissa: BigInt = format!("{}{}", if int_part.is_empty() { "0" } else { &int_part }, frac)
        .parse()
        .expect("digits only");
    let shift = exp - frac.len() as i64;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        Rational::from_integer(mantissa * num_traits::pow(ten, shift as usize))
    } else {
        Rational::new(mantissa, num_traits::pow(ten, (-shift) as usize))
    };
    if decimal {
        Ok((Tok::Num(value), i))
    } else {
        Ok((Tok::Int(value.to_integer()), i))
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, CliError> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Num(r) => format!("number {r}"),
            Tok::Int(n) => format!("number {n}"),
            Tok::Word(w) => format!("'{w}'"),
            Tok::Sym(s) => format!("'{s}'"),
            Tok::End => "end of input".to_string(),
        }
    }

    fn error<T>(&self, expected: &str) -> Result<T, CliError> {
        Err(CliError::parse(
            self.span(),
            format!("expected {expected}, found {}", Self::describe(self.peek())),
        ))
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(t) if *t == s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), CliError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(&format!("'{s}'"))
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Word(t) if t == w)
    }

    fn expect_word(&mut self, w: &str) -> Result<(), CliError> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("'{w}'"))
        }
    }

    fn expect_end(&mut self) -> Result<(), CliError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.error("end of input")
        }
    }

    fn unsigned(&mut self) -> Result<Rational, CliError> {
        match self.peek().clone() {
            Tok::Num(r) => {
                self.bump();
                Ok(r)
            }
            Tok::Int(n) => {
                self.bump();
                Ok(Rational::from_integer(n))
            }
            _ => self.error("a number"),
        }
    }

    fn sign(&mut self) -> bool {
        if self.eat_sym("-") {
            true
        } else {
            self.eat_sym("+");
            false
        }
    }

    /// Signed rational literal, optionally written as a fraction.
    fn number(&mut self) -> Result<Rational, CliError> {
        let neg = self.sign();
        let mut r = self.unsigned()?;
        if self.eat_sym("/") {
            let at = self.span();
            let d = self.unsigned()?;
            if d.is_zero() {
                return Err(CliError::parse(at, "zero denominator in rational literal"));
            }
            r /= d;
        }
        Ok(if neg { -r } else { r })
    }

    fn bound(&mut self) -> Result<ExtReal, CliError> {
        let save = self.pos;
        let neg = self.sign();
        if self.is_word("inf") {
            self.bump();
            return Ok(if neg { ExtReal::NegInf } else { ExtReal::PosInf });
        }
        self.pos = save;
        Ok(ExtReal::Finite(self.number()?))
    }

    fn value(&mut self) -> Result<XInterval, CliError> {
        let at = self.span();
        if self.eat_sym("[") {
            let lo = self.bound()?;
            self.expect_sym(",")?;
            let hi = self.bound()?;
            self.expect_sym("]")?;
            XInterval::new(lo, hi).ok_or_else(|| CliError::parse(at, "interval lower bound exceeds upper bound"))
        } else {
            Ok(XInterval::point(self.bound()?))
        }
    }

    fn domain(&mut self) -> Result<(Rational, Rational, Span), CliError> {
        let at = self.span();
        self.expect_sym("[")?;
        let a = self.number()?;
        self.expect_sym(",")?;
        let b = self.number()?;
        self.expect_sym("]")?;
        Ok((a, b, at))
    }

    fn expr(&mut self) -> Result<RationalFunc, CliError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_sym("+") {
                acc = acc.add(&self.term()?);
            } else if self.eat_sym("-") {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunc, CliError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_sym("*") {
                acc = acc.mul(&self.unary()?);
            } else if matches!(self.peek(), Tok::Sym("/")) {
                let at = self.bump().span;
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| CliError::core(Error::ZeroDenominator, Some(at)))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunc, CliError> {
        if self.eat_sym("-") {
            Ok(self.unary()?.neg())
        } else if self.eat_sym("+") {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RationalFunc, CliError> {
        let base = self.atom()?;
        if !matches!(self.peek(), Tok::Sym("^")) {
            return Ok(base);
        }
        let at = self.bump().span;
        let paren = self.eat_sym("(");
        let neg = self.eat_sym("-");
        let e = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                n
            }
            _ => return self.error("an integer exponent"),
        };
        if paren {
            self.expect_sym(")")?;
        }
        let e = e
            .to_i32()
            .filter(|e| *e <= 64)
            .ok_or_else(|| CliError::parse(at, "exponent out of range"))?;
        let e = if neg { -e } else { e };
        base.pow(e).map_err(|err| CliError::core(err, Some(at)))
    }

    fn atom(&mut self) -> Result<RationalFunc, CliError> {
        match self.peek().clone() {
            Tok::Num(r) => {
                self.bump();
                Ok(RationalFunc::constant(r))
            }
            Tok::Int(n) => {
                self.bump();
                Ok(RationalFunc::constant(Rational::from_integer(n)))
            }
            Tok::Word(w) if w == "x" => {
                self.bump();
                Ok(RationalFunc::x())
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            _ => self.error("an expression"),
        }
    }
}

struct SegItem {
    from: Rational,
    to: Rational,
    seg: Segment,
    span: Span,
}

/// Parses a rational function expression in `x`.
pub fn parse_expr(text: &str) -> Result<RationalFunc, CliError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

/// Parses a signed rational such as `-3/4`, `0.25` or `1e-9`.
pub fn parse_rational(text: &str) -> Result<Rational, CliError> {
    let mut p = Parser::new(text)?;
    let r = p.number()?;
    p.expect_end()?;
    Ok(r)
}

/// Parses a function literal or an `expr on [a,b]` shorthand.
pub fn parse_fn(text: &str) -> Result<PiecewiseFn, CliError> {
    let mut p = Parser::new(text)?;
    let f = if p.is_word("piecewise") && matches!(p.peek_at(1), Tok::Word(w) if w == "on") {
        literal(&mut p)?
    } else {
        let at = p.span();
        let e = p.expr()?;
        p.expect_word("on")?;
        let (a, b, dom) = p.domain()?;
        if a >= b {
            return Err(CliError::core(
                Error::UnsortedBreakpoints(format!("empty domain [{a},{b}]")),
                Some(dom),
            ));
        }
        PiecewiseFn::from_expr(e, a, b).map_err(|err| CliError::core(err, Some(at)))?
    };
    p.expect_end()?;
    Ok(f)
}

fn literal(p: &mut Parser) -> Result<PiecewiseFn, CliError> {
    let start = p.span();
    p.expect_word("piecewise")?;
    p.expect_word("on")?;
    let (a, b, dom) = p.domain()?;
    if a >= b {
        return Err(CliError::core(
            Error::UnsortedBreakpoints(format!("empty domain [{a},{b}]")),
            Some(dom),
        ));
    }
    p.expect_sym("{")?;
    let mut segs: Vec<SegItem> = Vec::new();
    let mut points: Vec<(Rational, XInterval, Span)> = Vec::new();
    while !matches!(p.peek(), Tok::Sym("}")) {
        let span = p.span();
        if p.eat_sym("(") {
            let from = p.number()?;
            p.expect_sym(",")?;
            let to = p.number()?;
            p.expect_sym(")")?;
            p.expect_sym(":")?;
            let lo = p.expr()?;
            let seg = if p.eat_sym("..") {
                Segment::new(lo, p.expr()?)
            } else {
                Segment::point(lo)
            };
            if from >= to {
                return Err(CliError::core(
                    Error::UnsortedBreakpoints(format!("empty segment ({from},{to})")),
                    Some(span),
                ));
            }
            segs.push(SegItem { from, to, seg, span });
        } else {
            let at = p.number()?;
            p.expect_sym(":")?;
            let v = p.value()?;
            if points.iter().any(|(q, _, _)| *q == at) {
                return Err(CliError::parse(span, format!("duplicate value for point {at}")));
            }
            points.push((at, v, span));
        }
        if !p.eat_sym(";") {
            break;
        }
    }
    p.expect_sym("}")?;
    segs.sort_by(|x, y| x.from.cmp(&y.from));
    let mut cursor = a.clone();
    for s in &segs {
        if s.from != cursor {
            let msg = if s.from < cursor {
                format!("segment ({},{}) overlaps its predecessor", s.from, s.to)
            } else {
                format!("no segment covers ({cursor},{})", s.from)
            };
            return Err(CliError::parse(s.span, msg));
        }
        cursor = s.to.clone();
    }
    if cursor != b {
        let at = segs.last().map_or(start, |s| s.span);
        return Err(CliError::parse(at, format!("no segment covers ({cursor},{b})")));
    }
    let mut breakpoints = vec![a.clone()];
    breakpoints.extend(segs.iter().map(|s| s.to.clone()));
    let mut values: Vec<Option<XInterval>> = vec![None; breakpoints.len()];
    for (at, v, span) in points {
        match breakpoints.iter().position(|q| *q == at) {
            Some(i) => values[i] = Some(v),
            None => return Err(CliError::parse(span, format!("{at} is not a breakpoint"))),
        }
    }
    let spans: Vec<(Rational, Rational, Span)> = segs.iter().map(|s| (s.from.clone(), s.to.clone(), s.span)).collect();
    let pieces: Vec<Segment> = segs.into_iter().map(|s| s.seg).collect();
    PiecewiseFn::build_partial(breakpoints, values, pieces).map_err(|err| {
        let span = match &err {
            Error::InteriorPole { from, to, .. } | Error::SegmentOrderViolation { from, to } => spans
                .iter()
                .find(|(l, r, _)| l == from && r == to)
                .map(|(_, _, s)| *s),
            _ => None,
        };
        CliError::core(err, Some(span.unwrap_or(start)))
    })
}

/// Splits a comma separated list of rationals.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',').map(|s| parse_rational(s.trim())).collect()
}
