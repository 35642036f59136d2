//! Interval-valued piecewise rational functions on a compact interval.
//!
//! A [`PiecewiseFn`] on `[a, b]` stores strictly increasing rational
//! breakpoints `a = b_0 < ... < b_m = b`, an extended interval value at every
//! breakpoint, and on every open segment `(b_i, b_{i+1})` a pair of rational
//! functions bounding the value from below and above. Segment functions
//! never have poles inside their segment; infinite values can therefore only
//! occur at breakpoints.

use num_traits::{Signed, Zero};

use crate::error::{Error, Location, Result};
use crate::exreal::{ExtReal, XInterval};
use crate::segments::{isolate, RationalFunc, Side, SignChart};
use crate::Rational;

/// Lower and upper bounding functions on one open segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub lo: RationalFunc,
    pub hi: RationalFunc,
}

impl Segment {
    pub fn point(f: RationalFunc) -> Self {
        Segment { lo: f.clone(), hi: f }
    }

    pub fn new(lo: RationalFunc, hi: RationalFunc) -> Self {
        Segment { lo, hi }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn eval(&self, x: &Rational) -> Option<XInterval> {
        let lo = self.lo.eval(x)?;
        let hi = self.hi.eval(x)?;
        XInterval::finite(lo, hi)
    }

    fn has_pole_at(&self, x: &Rational) -> bool {
        self.lo.has_pole_at(x) || self.hi.has_pole_at(x)
    }

    fn limit_interval(&self, x: &Rational, side: Side) -> XInterval {
        XInterval::new(self.lo.limit(x, side), self.hi.limit(x, side))
            .expect("segment bounds are ordered")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseFn {
    breakpoints: Vec<Rational>,
    values: Vec<XInterval>,
    segments: Vec<Segment>,
}

/// A piece of the domain produced by set descriptors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    Point(Location),
    Span {
        from: Location,
        to: Location,
        closed_from: bool,
        closed_to: bool,
    },
}

impl Region {
    pub fn has_interior(&self) -> bool {
        matches!(self, Region::Span { .. })
    }
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Region::Point(p) => write!(f, "{{{p}}}"),
            Region::Span {
                from,
                to,
                closed_from,
                closed_to,
            } => write!(
                f,
                "{}{from},{to}{}",
                if *closed_from { "[" } else { "(" },
                if *closed_to { "]" } else { ")" }
            ),
        }
    }
}

/// Structured descriptions of the exceptional sets of a function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnSets {
    /// Breakpoints carrying proper interval values.
    pub w_points: Vec<Rational>,
    /// Indices of segments whose bounds differ.
    pub w_segments: Vec<usize>,
    /// Points (and, for non-quasi-minimal functions, spans) of width `>= eps`.
    pub w_eps: Vec<Region>,
    pub eps: Rational,
    /// Breakpoints whose value touches `±∞`.
    pub gamma: Vec<Rational>,
    /// Zero set `{x : 0 ∈ f(x)}`.
    pub zero_set: Vec<Region>,
    /// Complement of the zero set.
    pub cozero: Vec<Region>,
}

#[derive(Clone, Debug)]
enum Atom {
    Point(Location),
    Open(Location, Location),
}

impl PiecewiseFn {
    /// Validated construction.
    pub fn build(
        breakpoints: Vec<Rational>,
        values: Vec<XInterval>,
        segments: Vec<Segment>,
    ) -> Result<Self> {
        check_structure(&breakpoints, segments.len())?;
        if values.len() != breakpoints.len() {
            return Err(Error::InvalidArgument(format!(
                "{} values for {} breakpoints",
                values.len(),
                breakpoints.len()
            )));
        }
        check_segments(&breakpoints, &segments)?;
        Ok(PiecewiseFn {
            breakpoints,
            values,
            segments,
        })
    }

    /// Validated construction where missing breakpoint values are filled by
    /// the closure of the one-sided limits.
    pub fn build_partial(
        breakpoints: Vec<Rational>,
        values: Vec<Option<XInterval>>,
        segments: Vec<Segment>,
    ) -> Result<Self> {
        check_structure(&breakpoints, segments.len())?;
        check_segments(&breakpoints, &segments)?;
        let mut f = PiecewiseFn {
            values: vec![XInterval::entire(); breakpoints.len()],
            breakpoints,
            segments,
        };
        for (i, v) in values.into_iter().enumerate() {
            f.values[i] = v.unwrap_or_else(|| f.limit_hull(i));
        }
        Ok(f)
    }

    pub(crate) fn from_parts(
        breakpoints: Vec<Rational>,
        values: Vec<XInterval>,
        segments: Vec<Segment>,
    ) -> Self {
        debug_assert_eq!(breakpoints.len(), values.len());
        debug_assert_eq!(breakpoints.len(), segments.len() + 1);
        PiecewiseFn {
            breakpoints,
            values,
            segments,
        }
    }

    /// Unique extension from the breakpoint complement: every breakpoint value
    /// becomes `[min of lower limits, max of upper limits]`.
    pub fn extend_dense(breakpoints: Vec<Rational>, segments: Vec<Segment>) -> Result<Self> {
        let n = breakpoints.len();
        Self::build_partial(breakpoints, vec![None; n], segments)
    }

    pub(crate) fn extend_unchecked(breakpoints: Vec<Rational>, segments: Vec<Segment>) -> Self {
        let mut f = PiecewiseFn {
            values: vec![XInterval::entire(); breakpoints.len()],
            breakpoints,
            segments,
        };
        f.refill_values();
        f
    }

    pub(crate) fn refill_values(&mut self) {
        for i in 0..self.breakpoints.len() {
            self.values[i] = self.limit_hull(i);
        }
    }

    /// Same function with all breakpoint values dropped and re-extended.
    pub fn reextend(&self) -> Self {
        Self::extend_unchecked(self.breakpoints.clone(), self.segments.clone())
    }

    /// A single rational function on `[a, b]`; its poles inside the domain
    /// become breakpoints and values there are filled by limits.
    pub fn from_expr(f: RationalFunc, a: Rational, b: Rational) -> Result<Self> {
        check_structure(&[a.clone(), b.clone()], 1)?;
        let mut bps = vec![a.clone()];
        for pole in isolate(f.den(), &a, &b) {
            match pole.loc {
                Location::Exact(p) => bps.push(p),
                loc => return Err(Error::NonRepresentablePoint(loc)),
            }
        }
        bps.push(b);
        let segs = vec![Segment::point(f); bps.len() - 1];
        Ok(Self::extend_unchecked(bps, segs))
    }

    pub fn constant(a: Rational, b: Rational, c: Rational) -> Self {
        assert!(a < b, "empty domain");
        Self::extend_unchecked(vec![a, b], vec![Segment::point(RationalFunc::constant(c))])
    }

    pub fn zero(a: Rational, b: Rational) -> Self {
        Self::constant(a, b, Rational::zero())
    }

    pub fn one(a: Rational, b: Rational) -> Self {
        Self::constant(a, b, num_traits::One::one())
    }

    /// A constant on the domain of `self`.
    pub fn constant_like(&self, c: Rational) -> Self {
        let (a, b) = self.domain();
        Self::constant(a.clone(), b.clone(), c)
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (&self.breakpoints[0], self.breakpoints.last().unwrap())
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[XInterval] {
        &self.values
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Open interval of segment `i`.
    pub fn segment_bounds(&self, i: usize) -> (&Rational, &Rational) {
        (&self.breakpoints[i], &self.breakpoints[i + 1])
    }

    pub fn same_domain(&self, other: &PiecewiseFn) -> Result<()> {
        let (a, b) = self.domain();
        let (c, d) = other.domain();
        if a == c && b == d {
            Ok(())
        } else {
            Err(Error::DomainMismatch(a.clone(), b.clone(), c.clone(), d.clone()))
        }
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        let (a, b) = self.domain();
        a <= x && x <= b
    }

    pub fn eval(&self, x: &Rational) -> Result<XInterval> {
        let (a, b) = self.domain();
        if !self.contains_point(x) {
            return Err(Error::OutOfDomain {
                point: x.clone(),
                from: a.clone(),
                to: b.clone(),
            });
        }
        Ok(match self.breakpoints.binary_search(x) {
            Ok(i) => self.values[i].clone(),
            Err(i) => self.segments[i - 1]
                .eval(x)
                .expect("segments are pole free and ordered"),
        })
    }

    /// Limits of the adjacent segments at breakpoint `i`, as intervals
    /// `[lim lo, lim hi]`, one per existing side.
    pub fn side_limits(&self, i: usize) -> Vec<XInterval> {
        let x = &self.breakpoints[i];
        let mut out = Vec::with_capacity(2);
        if i > 0 {
            out.push(self.segments[i - 1].limit_interval(x, Side::Left));
        }
        if i < self.segments.len() {
            out.push(self.segments[i].limit_interval(x, Side::Right));
        }
        out
    }

    /// `[min of lower-bound limits, max of upper-bound limits]` at breakpoint
    /// `i`.
    pub fn limit_hull(&self, i: usize) -> XInterval {
        self.side_limits(i)
            .into_iter()
            .reduce(|a, b| a.hull(&b))
            .expect("every breakpoint has a neighbouring segment")
    }

    /// The same function over the breakpoints plus `points` (points outside
    /// the open domain or already present are ignored).
    pub fn refine_to(&self, points: &[Rational]) -> PiecewiseFn {
        let (a, b) = self.domain();
        let mut extra: Vec<&Rational> = points
            .iter()
            .filter(|p| a < *p && *p < b && self.breakpoints.binary_search(p).is_err())
            .collect();
        if extra.is_empty() {
            return self.clone();
        }
        extra.sort();
        extra.dedup();
        let mut bps = Vec::with_capacity(self.breakpoints.len() + extra.len());
        let mut vals = Vec::with_capacity(bps.capacity());
        let mut segs = Vec::with_capacity(bps.capacity());
        let mut k = 0;
        for i in 0..self.segments.len() {
            bps.push(self.breakpoints[i].clone());
            vals.push(self.values[i].clone());
            while k < extra.len() && extra[k] < &self.breakpoints[i + 1] {
                let p = extra[k];
                segs.push(self.segments[i].clone());
                bps.push(p.clone());
                vals.push(self.segments[i].eval(p).expect("interior point"));
                k += 1;
            }
            segs.push(self.segments[i].clone());
        }
        bps.push(b.clone());
        vals.push(self.values.last().unwrap().clone());
        PiecewiseFn::from_parts(bps, vals, segs)
    }

    /// Removes every breakpoint that only repeats the neighbouring segment:
    /// equal bounding pairs on both sides, no pole, and the stored value equal
    /// to the segment value there.
    pub fn canon(&self) -> PiecewiseFn {
        let mut bps = vec![self.breakpoints[0].clone()];
        let mut vals = vec![self.values[0].clone()];
        let mut segs: Vec<Segment> = vec![self.segments[0].clone()];
        for i in 1..self.segments.len() {
            let x = &self.breakpoints[i];
            let seg = &self.segments[i];
            let prev = segs.last().unwrap();
            let removable = prev == seg
                && !seg.has_pole_at(x)
                && seg.eval(x).as_ref() == Some(&self.values[i]);
            if !removable {
                bps.push(x.clone());
                vals.push(self.values[i].clone());
                segs.push(seg.clone());
            }
        }
        let last = self.breakpoints.len() - 1;
        bps.push(self.breakpoints[last].clone());
        vals.push(self.values[last].clone());
        PiecewiseFn::from_parts(bps, vals, segs)
    }

    pub fn is_canonical(&self) -> bool {
        &self.canon() == self
    }

    /// Equality of canonical forms.
    pub fn equals(&self, other: &PiecewiseFn) -> Result<bool> {
        self.same_domain(other)?;
        Ok(self.canon() == other.canon())
    }

    /// Restriction to the open interval `(c, d)`, returned on `[c, d]` with
    /// boundary values taken from the inside.
    pub fn restrict(&self, c: &Rational, d: &Rational) -> Result<PiecewiseFn> {
        let (a, b) = self.domain();
        for p in [c, d] {
            if !self.contains_point(p) {
                return Err(Error::OutOfDomain {
                    point: p.clone(),
                    from: a.clone(),
                    to: b.clone(),
                });
            }
        }
        if c >= d {
            return Err(Error::InvalidArgument(format!("empty interval ({c},{d})")));
        }
        let r = self.refine_to(&[c.clone(), d.clone()]);
        let i0 = r.breakpoints.binary_search(c).unwrap();
        let i1 = r.breakpoints.binary_search(d).unwrap();
        let bps = r.breakpoints[i0..=i1].to_vec();
        let segs = r.segments[i0..i1].to_vec();
        let mut vals = r.values[i0..=i1].to_vec();
        vals[0] = segs[0].limit_interval(c, Side::Right);
        *vals.last_mut().unwrap() = segs.last().unwrap().limit_interval(d, Side::Left);
        Ok(PiecewiseFn::from_parts(bps, vals, segs))
    }

    /// Pointwise order `f̲ <= g̲` and `f̄ <= ḡ`; strict compares every
    /// endpoint strictly.
    pub fn compare(&self, other: &PiecewiseFn, strict: bool) -> Result<bool> {
        let (f, g) = refine(self, other)?;
        let le = |x: &ExtReal, y: &ExtReal| if strict { x < y } else { x <= y };
        for (u, v) in f.values.iter().zip(&g.values) {
            if !(le(u.lo(), v.lo()) && le(u.hi(), v.hi())) {
                return Ok(false);
            }
        }
        for (i, (s, t)) in f.segments.iter().zip(&g.segments).enumerate() {
            let (l, r) = f.segment_bounds(i);
            let dl = t.lo.sub(&s.lo);
            let dh = t.hi.sub(&s.hi);
            let chart = SignChart::new(&[&dl, &dh], l, r);
            let min = chart.min_sign(0).min(chart.min_sign(1));
            if min < 0 || (strict && min == 0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn leq(&self, other: &PiecewiseFn) -> Result<bool> {
        self.compare(other, false)
    }

    /// Pointwise inclusion `self(x) ⊆ other(x)` for every `x`.
    pub fn is_subset_of(&self, other: &PiecewiseFn) -> Result<bool> {
        let (f, g) = refine(self, other)?;
        if !f.values.iter().zip(&g.values).all(|(u, v)| u.is_subset_of(v)) {
            return Ok(false);
        }
        for (i, (s, t)) in f.segments.iter().zip(&g.segments).enumerate() {
            let (l, r) = f.segment_bounds(i);
            let dl = s.lo.sub(&t.lo);
            let dh = t.hi.sub(&s.hi);
            let chart = SignChart::new(&[&dl, &dh], l, r);
            if chart.min_sign(0) < 0 || chart.min_sign(1) < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether some value touches `±∞`.
    pub fn is_finite(&self) -> bool {
        self.values.iter().all(XInterval::is_finite)
    }

    /// Breakpoints (as indices) whose values touch infinity.
    pub fn gamma_indices(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| self.values[i].touches_infinity())
            .collect()
    }

    fn atoms(
        &self,
        seg_funcs: impl Fn(&Segment) -> Vec<RationalFunc>,
        seg_pred: impl Fn(&[i32]) -> bool,
        val_pred: impl Fn(&XInterval) -> bool,
    ) -> Vec<(Atom, bool)> {
        let mut out = Vec::new();
        for i in 0..self.breakpoints.len() {
            let x = Location::Exact(self.breakpoints[i].clone());
            out.push((Atom::Point(x.clone()), val_pred(&self.values[i])));
            if i == self.segments.len() {
                break;
            }
            let (l, r) = self.segment_bounds(i);
            let funcs = seg_funcs(&self.segments[i]);
            let refs: Vec<&RationalFunc> = funcs.iter().collect();
            let chart = SignChart::new(&refs, l, r);
            let mut start = x;
            let signs_at = |table: &Vec<Vec<i32>>, j: usize| -> Vec<i32> {
                table.iter().map(|row| row[j]).collect()
            };
            for (j, root) in chart.roots.iter().enumerate() {
                out.push((
                    Atom::Open(start.clone(), root.clone()),
                    seg_pred(&signs_at(&chart.gap_signs, j)),
                ));
                out.push((Atom::Point(root.clone()), seg_pred(&signs_at(&chart.root_signs, j))));
                start = root.clone();
            }
            let end = Location::Exact(r.clone());
            out.push((
                Atom::Open(start, end),
                seg_pred(&signs_at(&chart.gap_signs, chart.roots.len())),
            ));
        }
        out
    }

    fn components(atoms: &[(Atom, bool)], want: bool) -> Vec<Region> {
        let mut out = Vec::new();
        let mut k = 0;
        while k < atoms.len() {
            if atoms[k].1 != want {
                k += 1;
                continue;
            }
            let mut j = k;
            while j + 1 < atoms.len() && atoms[j + 1].1 == want {
                j += 1;
            }
            let region = match (&atoms[k].0, &atoms[j].0) {
                (Atom::Point(p), Atom::Point(_)) if k == j => Region::Point(p.clone()),
                (first, last) => {
                    let (from, closed_from) = match first {
                        Atom::Point(p) => (p.clone(), true),
                        Atom::Open(p, _) => (p.clone(), false),
                    };
                    let (to, closed_to) = match last {
                        Atom::Point(p) => (p.clone(), true),
                        Atom::Open(_, p) => (p.clone(), false),
                    };
                    Region::Span {
                        from,
                        to,
                        closed_from,
                        closed_to,
                    }
                }
            };
            out.push(region);
            k = j + 1;
        }
        out
    }

    /// `Z(f) = {x : 0 ∈ f(x)}`.
    pub fn zero_set(&self) -> Vec<Region> {
        Self::components(&self.zero_atoms(), true)
    }

    pub fn cozero_set(&self) -> Vec<Region> {
        Self::components(&self.zero_atoms(), false)
    }

    fn zero_atoms(&self) -> Vec<(Atom, bool)> {
        self.atoms(
            |s| vec![s.lo.clone(), s.hi.clone()],
            |sg| sg[0] <= 0 && sg[1] >= 0,
            XInterval::contains_zero,
        )
    }

    /// `W_{f,eps} = {x : w(f(x)) >= eps}`.
    pub fn w_eps(&self, eps: &Rational) -> Vec<Region> {
        let e = ExtReal::Finite(eps.clone());
        let atoms = self.atoms(
            |s| vec![s.hi.sub(&s.lo).add_const(&-eps)],
            |sg| sg[0] >= 0,
            |v| v.width() >= e,
        );
        Self::components(&atoms, true)
    }

    pub fn sets(&self, eps: &Rational) -> FnSets {
        FnSets {
            w_points: (0..self.values.len())
                .filter(|&i| self.values[i].is_proper())
                .map(|i| self.breakpoints[i].clone())
                .collect(),
            w_segments: (0..self.segments.len())
                .filter(|&i| !self.segments[i].is_point())
                .collect(),
            w_eps: self.w_eps(eps),
            eps: eps.clone(),
            gamma: self
                .gamma_indices()
                .into_iter()
                .map(|i| self.breakpoints[i].clone())
                .collect(),
            zero_set: self.zero_set(),
            cozero: self.cozero_set(),
        }
    }

    /// Whether `Z(f)` contains an open interval, with a witness segment
    /// interval if so.
    pub fn zero_interior(&self) -> Option<(Rational, Rational)> {
        self.zero_set().into_iter().find_map(|r| match r {
            Region::Span { from, to, .. } => {
                let (l, _) = from.bounds();
                let (_, h) = to.bounds();
                Some((l.clone(), h.clone()))
            }
            Region::Point(_) => None,
        })
    }

    /// Negation `-f` (exact, regularity preserving).
    pub fn neg(&self) -> PiecewiseFn {
        PiecewiseFn::from_parts(
            self.breakpoints.clone(),
            self.values.iter().map(crate::exreal::neg_iv).collect(),
            self.segments
                .iter()
                .map(|s| Segment::new(s.hi.neg(), s.lo.neg()))
                .collect(),
        )
    }

    /// Exact multiplication by a non-zero rational.
    pub(crate) fn scale_nonzero(&self, c: &Rational) -> PiecewiseFn {
        debug_assert!(!c.is_zero());
        let segs = self
            .segments
            .iter()
            .map(|s| {
                let (lo, hi) = (s.lo.scale(c), s.hi.scale(c));
                if c.is_negative() {
                    Segment::new(hi, lo)
                } else {
                    Segment::new(lo, hi)
                }
            })
            .collect();
        PiecewiseFn::from_parts(
            self.breakpoints.clone(),
            self.values.iter().map(|v| v.scale(c)).collect(),
            segs,
        )
    }
}

/// Both functions over the union of their breakpoints.
pub fn refine(f: &PiecewiseFn, g: &PiecewiseFn) -> Result<(PiecewiseFn, PiecewiseFn)> {
    f.same_domain(g)?;
    if f.breakpoints == g.breakpoints {
        return Ok((f.clone(), g.clone()));
    }
    Ok((f.refine_to(&g.breakpoints), g.refine_to(&f.breakpoints)))
}

/// All functions over the union of their breakpoints.
pub fn refine_all(fs: &[&PiecewiseFn]) -> Result<Vec<PiecewiseFn>> {
    let first = fs.first().ok_or_else(|| Error::InvalidArgument("empty list".into()))?;
    let mut pts: Vec<Rational> = Vec::new();
    for f in fs {
        first.same_domain(f)?;
        pts.extend(f.breakpoints.iter().cloned());
    }
    pts.sort();
    pts.dedup();
    Ok(fs.iter().map(|f| f.refine_to(&pts)).collect())
}

fn check_structure(breakpoints: &[Rational], n_segments: usize) -> Result<()> {
    if breakpoints.len() < 2 {
        return Err(Error::UnsortedBreakpoints("need at least two breakpoints".into()));
    }
    if let Some(w) = breakpoints.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::UnsortedBreakpoints(format!("{} is not below {}", w[0], w[1])));
    }
    if n_segments + 1 != breakpoints.len() {
        return Err(Error::InvalidArgument(format!(
            "{} segments for {} breakpoints",
            n_segments,
            breakpoints.len()
        )));
    }
    Ok(())
}

fn check_segments(breakpoints: &[Rational], segments: &[Segment]) -> Result<()> {
    for (i, s) in segments.iter().enumerate() {
        let (l, r) = (&breakpoints[i], &breakpoints[i + 1]);
        for f in [&s.lo, &s.hi] {
            if let Some(p) = isolate(f.den(), l, r).into_iter().next() {
                return Err(Error::InteriorPole {
                    at: p.loc,
                    from: l.clone(),
                    to: r.clone(),
                });
            }
        }
        if !s.is_point() {
            let gap = s.hi.sub(&s.lo);
            if SignChart::new(&[&gap], l, r).min_sign(0) < 0 {
                return Err(Error::SegmentOrderViolation {
                    from: l.clone(),
                    to: r.clone(),
                });
            }
        }
    }
    Ok(())
}
