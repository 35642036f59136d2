//! Argument parsing, dispatch to the algebra core, and report rendering.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hnf_core::segments::RootInfo;
use hnf_core::{
    as_quotient, cauchy_limit, classify, default_tol, dense_witness, density_approx, finite_envelopes, h_add,
    h_extract, h_inf2, h_inv, h_members_sample, h_mul, h_sup2, interpose, is_quasi_minimal, neg,
    order_ball_check, regularity, rep_homomorphism, rf_roots, rho, scale, sub, Enclosure, Location,
    PiecewiseFn, Rational, Region, Verdict, XInterval,
};
use num_traits::Signed;
use serde_json::{json, Map, Value};

use crate::dsl::{parse_expr, parse_fn, parse_rational, parse_rational_list};
use crate::error::CliError;
use crate::format::{format_fn_styled, Style};
use crate::plot;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

/// Exact algebra of Hausdorff continuous interval functions.
///
/// Operands are function literals, `expr on [a,b]` shorthands, or paths to
/// files holding either.
#[derive(Debug, Parser)]
#[command(name = "hnf", version)]
pub struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Tolerance for certified enclosures (rational, decimal or 1e-k).
    #[arg(long, global = true, value_name = "RAT")]
    tol: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Sample count for plots.
    #[arg(long, global = true, default_value_t = 200, value_name = "N")]
    samples: usize,
    /// Print scalars as k-digit decimals; `~` marks rounded values.
    #[arg(long, global = true, value_name = "K")]
    decimal: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Value of F at the rational X.
    Eval {
        f: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Regularized sum.
    Add { f: String, g: String },
    /// Regularized product.
    Mul { f: String, g: String },
    /// Negation.
    Neg { f: String },
    /// F minus G.
    Sub { f: String, g: String },
    /// C times F.
    Scale {
        #[arg(allow_hyphen_values = true)]
        c: String,
        f: String,
    },
    /// Multiplicative inverse.
    Inv { f: String },
    /// Metric distance, with the order-ball verdicts when --eps is given.
    Rho {
        f: String,
        g: String,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Whether F <= G in the pointwise interval order.
    Leq { f: String, g: String },
    /// Least upper bound of two functions.
    Sup { f: String, g: String },
    /// Greatest lower bound of two functions.
    Inf { f: String, g: String },
    /// Continuity, finiteness and ideal membership of F.
    Classify { f: String },
    /// Exceptional sets, zero sets and regularity flags.
    Sets {
        f: String,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Canonical literal of F.
    Canon { f: String },
    /// Whether F and G are the same function.
    Equal { f: String, g: String },
    /// Restriction to [C,D].
    Restrict {
        f: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Recompute every breakpoint value from the segments.
    Extend { f: String },
    /// F written as phi/psi with continuous phi and psi.
    Quotient { f: String },
    /// Continuous w with phi*w continuous and psi*w nonzero.
    Witness { phi: String, psi: String },
    /// Representer of the multiplier sending each --p to the matching --q.
    Rephom {
        #[arg(long = "p", required = true)]
        ps: Vec<String>,
        #[arg(long = "q", required = true)]
        qs: Vec<String>,
    },
    /// Finite lower and upper envelopes of a sequence.
    Envelopes {
        #[arg(required = true)]
        fs: Vec<String>,
    },
    /// Certified limit of a sequence with Cauchy moduli.
    Limit {
        #[arg(required = true)]
        fs: Vec<String>,
        /// Comma separated moduli, one per element.
        #[arg(long, required = true)]
        moduli: String,
    },
    /// Continuous h with U <= h <= L.
    Interpose { u: String, l: String },
    /// Approximation with point values off the wide breakpoints.
    Approx { f: String, n: u32 },
    /// CSV samples (default) or SVG picture; extra functions are overlaid.
    Plot {
        #[arg(required = true)]
        fs: Vec<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Sample of the H-continuous functions contained in G.
    Members { g: String },
    /// The H-continuous member of a quasi-minimal G.
    Regularize { g: String },
    /// Real roots of a rational function expression in [A,B].
    Roots {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Reads an operand: a path to a file if one exists, inline text otherwise.
pub fn load(arg: &str) -> Result<PiecewiseFn, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{arg}: {e}")))?;
        parse_fn(&text).map_err(|e| e.in_source(arg))
    } else {
        parse_fn(arg)
    }
}

fn load_all(args: &[String]) -> Result<Vec<PiecewiseFn>, CliError> {
    args.iter().map(|a| load(a)).collect()
}

enum Item {
    Fn(PiecewiseFn),
    Fns(Vec<PiecewiseFn>),
    Bool(bool),
    Value(XInterval),
    Rat(Rational),
    Enc(Enclosure),
    Verdict(Verdict),
    Text(String),
    Rats(Vec<Rational>),
    Spans(Vec<(Rational, Rational)>),
    Regions(Vec<Region>),
    Roots(Vec<RootInfo>),
}

struct Report {
    verb: &'static str,
    items: Vec<(&'static str, Item)>,
}

impl Report {
    fn new(verb: &'static str) -> Self {
        Report { verb, items: Vec::new() }
    }

    fn one(verb: &'static str, key: &'static str, item: Item) -> Self {
        Report::new(verb).with(key, item)
    }

    fn with(mut self, key: &'static str, item: Item) -> Self {
        self.items.push((key, item));
        self
    }
}

fn list<T>(xs: &[T], show: impl Fn(&T) -> String) -> String {
    if xs.is_empty() {
        "none".to_string()
    } else {
        xs.iter().map(show).collect::<Vec<_>>().join(", ")
    }
}

fn location_text(style: Style, loc: &Location) -> String {
    match loc {
        Location::Exact(p) => style.rat(p),
        Location::Bracket(l, r) => format!("({},{})", style.rat(l), style.rat(r)),
    }
}

fn region_text(style: Style, r: &Region) -> String {
    match r {
        Region::Point(p) => format!("{{{}}}", location_text(style, p)),
        Region::Span {
            from,
            to,
            closed_from,
            closed_to,
        } => format!(
            "{}{},{}{}",
            if *closed_from { "[" } else { "(" },
            location_text(style, from),
            location_text(style, to),
            if *closed_to { "]" } else { ")" }
        ),
    }
}

fn item_text(style: Style, item: &Item) -> String {
    match item {
        Item::Fn(f) => format_fn_styled(f, style),
        Item::Fns(fs) => list(fs, |f| format_fn_styled(f, style)),
        Item::Bool(b) => b.to_string(),
        Item::Value(v) => style.interval(v),
        Item::Rat(r) => style.rat(r),
        Item::Enc(e) => style.enclosure(e),
        Item::Verdict(v) => v.to_string(),
        Item::Text(t) => t.clone(),
        Item::Rats(rs) => list(rs, |r| style.rat(r)),
        Item::Spans(ss) => list(ss, |(l, r)| format!("({},{})", style.rat(l), style.rat(r))),
        Item::Regions(rs) => list(rs, |r| region_text(style, r)),
        Item::Roots(rs) => list(rs, |r| format!("{} (multiplicity {})", location_text(style, &r.loc), r.multiplicity)),
    }
}

fn render_text(style: Style, report: &Report) -> String {
    if let [(_, item)] = report.items.as_slice() {
        if !matches!(item, Item::Enc(_) | Item::Fns(_)) {
            return item_text(style, item) + "\n";
        }
    }
    let mut out = String::new();
    for (key, item) in &report.items {
        match item {
            Item::Enc(e) => {
                out += &format!("{key} in {}\n", style.enclosure(e));
                out += &format!("{key} tol: {}\n", style.rat(&e.tol));
            }
            Item::Fns(fs) => {
                for (i, f) in fs.iter().enumerate() {
                    out += &format!("{key}_{}: {}\n", i + 1, format_fn_styled(f, style));
                }
            }
            other => out += &format!("{key}: {}\n", item_text(style, other)),
        }
    }
    out
}

fn fn_json(style: Style, f: &PiecewiseFn) -> Value {
    let (a, b) = f.domain();
    let bps = f.breakpoints();
    let reg = regularity(f);
    let segments: Vec<Value> = f
        .segments()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            json!({
                "from": style.rat(&bps[i]),
                "to": style.rat(&bps[i + 1]),
                "lo": s.lo.to_string(),
                "hi": s.hi.to_string(),
            })
        })
        .collect();
    json!({
        "literal": format_fn_styled(f, style),
        "domain": [style.rat(a), style.rat(b)],
        "breakpoints": bps.iter().map(|p| style.rat(p)).collect::<Vec<_>>(),
        "values": f.values().iter().map(|v| interval_json(style, v)).collect::<Vec<_>>(),
        "segments": segments,
        "flags": {
            "s_continuous": reg.s_continuous,
            "quasi_minimal": reg.quasi_minimal,
            "h_continuous": reg.h_continuous,
            "finite": reg.finite,
            "nearly_finite": reg.nearly_finite,
        },
    })
}

fn interval_json(style: Style, v: &XInterval) -> Value {
    json!({ "lo": style.ext(v.lo()), "hi": style.ext(v.hi()) })
}

fn location_json(style: Style, loc: &Location) -> Value {
    match loc {
        Location::Exact(p) => json!({ "exact": style.rat(p) }),
        Location::Bracket(l, r) => json!({ "lo": style.rat(l), "hi": style.rat(r) }),
    }
}

fn item_json(style: Style, item: &Item) -> Value {
    match item {
        Item::Fn(f) => fn_json(style, f),
        Item::Fns(fs) => Value::Array(fs.iter().map(|f| fn_json(style, f)).collect()),
        Item::Bool(b) => json!(b),
        Item::Value(v) => interval_json(style, v),
        Item::Rat(r) => json!(style.rat(r)),
        Item::Enc(e) => json!({ "lo": style.ext(&e.lo), "hi": style.ext(&e.hi), "tol": style.rat(&e.tol) }),
        Item::Verdict(v) => json!(v.to_string()),
        Item::Text(t) => json!(t),
        Item::Rats(rs) => json!(rs.iter().map(|r| style.rat(r)).collect::<Vec<_>>()),
        Item::Spans(ss) => json!(ss.iter().map(|(l, r)| [style.rat(l), style.rat(r)]).collect::<Vec<_>>()),
        Item::Regions(rs) => json!(rs.iter().map(|r| region_text(style, r)).collect::<Vec<_>>()),
        Item::Roots(rs) => Value::Array(
            rs.iter()
                .map(|r| json!({ "location": location_json(style, &r.loc), "multiplicity": r.multiplicity }))
                .collect(),
        ),
    }
}

fn render_json(style: Style, report: &Report) -> String {
    let mut obj = Map::new();
    obj.insert("verb".into(), json!(report.verb));
    for (key, item) in &report.items {
        obj.insert((*key).into(), item_json(style, item));
    }
    serde_json::to_string_pretty(&Value::Object(obj)).expect("plain json") + "\n"
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let style = cli.decimal.map_or(Style::Exact, Style::Decimal);
    let tol = match &cli.tol {
        Some(t) => {
            let t = parse_rational(t)?;
            if !t.is_positive() {
                return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
            }
            t
        }
        None => default_tol(),
    };
    if let Verb::Plot { fs, output } = &cli.verb {
        return run_plot(cli, fs, output.as_deref());
    }
    if matches!(cli.format, Format::Csv | Format::Svg) {
        return Err(CliError::Usage(format!(
            "--format {} applies to plot only",
            if cli.format == Format::Csv { "csv" } else { "svg" }
        )));
    }
    let report = dispatch(&cli.verb, &tol)?;
    Ok(match cli.format {
        Format::Json => render_json(style, &report),
        _ => render_text(style, &report),
    })
}

fn run_plot(cli: &Cli, args: &[String], output: Option<&Path>) -> Result<String, CliError> {
    if cli.samples < 2 {
        return Err(CliError::Usage(format!("--samples must be at least 2, got {}", cli.samples)));
    }
    let fs = load_all(args)?;
    for g in &fs[1..] {
        fs[0].same_domain(g)?;
    }
    let text = match cli.format {
        Format::Text | Format::Csv if fs.len() == 1 => plot::csv(&fs[0], cli.samples),
        Format::Text | Format::Csv => {
            return Err(CliError::Usage("CSV output takes a single function; use --format svg to overlay".into()))
        }
        Format::Svg => plot::svg(&fs, cli.samples),
        Format::Json => return Err(CliError::Usage("plot supports --format csv or svg".into())),
    };
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn dispatch(verb: &Verb, tol: &Rational) -> Result<Report, CliError> {
    let two = |f: &str, g: &str| -> Result<(PiecewiseFn, PiecewiseFn), CliError> { Ok((load(f)?, load(g)?)) };
    Ok(match verb {
        Verb::Eval { f, x } => {
            let (f, x) = (load(f)?, parse_rational(x)?);
            Report::one("eval", "value", Item::Value(f.eval(&x)?))
        }
        Verb::Add { f, g } => {
            let (f, g) = two(f, g)?;
            Report::one("add", "result", Item::Fn(h_add(&f, &g)?))
        }
        Verb::Mul { f, g } => {
            let (f, g) = two(f, g)?;
            Report::one("mul", "result", Item::Fn(h_mul(&f, &g)?))
        }
        Verb::Neg { f } => Report::one("neg", "result", Item::Fn(neg(&load(f)?)?)),
        Verb::Sub { f, g } => {
            let (f, g) = two(f, g)?;
            Report::one("sub", "result", Item::Fn(sub(&f, &g)?))
        }
        Verb::Scale { c, f } => {
            let (c, f) = (parse_rational(c)?, load(f)?);
            Report::one("scale", "result", Item::Fn(scale(&c, &f)?))
        }
        Verb::Inv { f } => Report::one("inv", "result", Item::Fn(h_inv(&load(f)?)?)),
        Verb::Rho { f, g, eps } => {
            let (f, g) = two(f, g)?;
            match eps {
                None => Report::one("rho", "rho", Item::Enc(rho(&f, &g, tol)?)),
                Some(e) => {
                    let eps = parse_rational(e)?;
                    let ball = order_ball_check(&f, &g, &eps, tol)?;
                    Report::one("rho", "rho", Item::Enc(ball.rho))
                        .with("eps", Item::Rat(eps))
                        .with("by_metric", Item::Verdict(ball.by_metric))
                        .with("by_difference", Item::Verdict(ball.by_difference))
                        .with("by_sandwich", Item::Verdict(ball.by_sandwich))
                }
            }
        }
        Verb::Leq { f, g } => {
            let (f, g) = two(f, g)?;
            Report::one("leq", "result", Item::Bool(f.leq(&g)?))
        }
        Verb::Sup { f, g } => {
            let (f, g) = two(f, g)?;
            Report::one("sup", "result", Item::Fn(h_sup2(&f, &g)?))
        }
        Verb::Inf { f, g } => {
            let (f, g) = two(f, g)?;
            Report::one("inf", "result", Item::Fn(h_inf2(&f, &g)?))
        }
        Verb::Classify { f } => {
            let c = classify(&load(f)?)?;
            Report::new("classify")
                .with("continuous", Item::Bool(c.continuous))
                .with("finite", Item::Bool(c.finite))
                .with("nearly_finite", Item::Bool(c.nearly_finite))
                .with("in_h_nd", Item::Bool(c.in_h_nd))
                .with("in_h_sz", Item::Bool(c.in_h_sz))
                .with("sz_witness", Item::Text(c.sz_witness.to_string()))
        }
        Verb::Sets { f, eps } => {
            let f = load(f)?;
            let eps = match eps {
                Some(e) => parse_rational(e)?,
                None => Rational::new(1.into(), 2.into()),
            };
            let reg = regularity(&f);
            let s = f.sets(&eps);
            let spans = s
                .w_segments
                .iter()
                .map(|&i| {
                    let (l, r) = f.segment_bounds(i);
                    (l.clone(), r.clone())
                })
                .collect();
            Report::new("sets")
                .with("s_continuous", Item::Bool(reg.s_continuous))
                .with("quasi_minimal", Item::Bool(reg.quasi_minimal))
                .with("h_continuous", Item::Bool(reg.h_continuous))
                .with("w_points", Item::Rats(s.w_points))
                .with("w_segments", Item::Spans(spans))
                .with("eps", Item::Rat(s.eps))
                .with("w_eps", Item::Regions(s.w_eps))
                .with("gamma", Item::Rats(s.gamma))
                .with("zero_set", Item::Regions(s.zero_set))
                .with("cozero", Item::Regions(s.cozero))
        }
        Verb::Canon { f } => Report::one("canon", "result", Item::Fn(load(f)?.canon())),
        Verb::Equal { f, g } => {
            let (f, g) = two(f, g)?;
            Report::one("equal", "result", Item::Bool(f.equals(&g)?))
        }
        Verb::Restrict { f, c, d } => {
            let (f, c, d) = (load(f)?, parse_rational(c)?, parse_rational(d)?);
            Report::one("restrict", "result", Item::Fn(f.restrict(&c, &d)?))
        }
        Verb::Extend { f } => {
            let f = load(f)?;
            let g = PiecewiseFn::extend_dense(f.breakpoints().to_vec(), f.segments().to_vec())?;
            Report::one("extend", "result", Item::Fn(g))
        }
        Verb::Quotient { f } => {
            let (phi, psi) = as_quotient(&load(f)?)?;
            Report::new("quotient").with("phi", Item::Fn(phi)).with("psi", Item::Fn(psi))
        }
        Verb::Witness { phi, psi } => {
            let (phi, psi) = two(phi, psi)?;
            Report::one("witness", "result", Item::Fn(dense_witness(&phi, &psi)?))
        }
        Verb::Rephom { ps, qs } => {
            let (ps, qs) = (load_all(ps)?, load_all(qs)?);
            Report::one("rephom", "result", Item::Fn(rep_homomorphism(&ps, &qs)?))
        }
        Verb::Envelopes { fs } => {
            let (phis, psis) = finite_envelopes(&load_all(fs)?)?;
            Report::new("envelopes").with("phi", Item::Fns(phis)).with("psi", Item::Fns(psis))
        }
        Verb::Limit { fs, moduli } => {
            let fs = load_all(fs)?;
            let moduli = parse_rational_list(moduli)?;
            let lim = cauchy_limit(&fs, &moduli, tol)?;
            Report::new("limit").with("limit", Item::Fn(lim.limit)).with("bound", Item::Enc(lim.bound))
        }
        Verb::Interpose { u, l } => {
            let (u, l) = two(u, l)?;
            Report::one("interpose", "result", Item::Fn(interpose(&u, &l)?))
        }
        Verb::Approx { f, n } => Report::one("approx", "result", Item::Fn(density_approx(&load(f)?, *n)?)),
        Verb::Members { g } => {
            let g = load(g)?;
            let members = h_members_sample(&g)?;
            Report::new("members")
                .with("quasi_minimal", Item::Bool(is_quasi_minimal(&g)?))
                .with("member", Item::Fns(members))
        }
        Verb::Regularize { g } => Report::one("regularize", "result", Item::Fn(h_extract(&load(g)?)?)),
        Verb::Roots { expr, a, b } => {
            let (e, a, b) = (parse_expr(expr)?, parse_rational(a)?, parse_rational(b)?);
            Report::one("roots", "roots", Item::Roots(rf_roots(&e, &a, &b)?))
        }
        Verb::Plot { .. } => unreachable!("handled before dispatch"),
    })
}
