#![allow(dead_code)]

//! Invocation table shared by the golden transcripts and the acceptance run.

use std::path::PathBuf;
use std::process::Command;

pub const S: &str = "tests/fixtures/sign.fn";
pub const ZERO: &str = "tests/fixtures/zero.fn";
pub const ONE: &str = "tests/fixtures/one.fn";
pub const X: &str = "tests/fixtures/x.fn";
pub const ABS: &str = "tests/fixtures/absx.fn";
pub const PLUS: &str = "tests/fixtures/pluspart.fn";
pub const INV: &str = "tests/fixtures/invx.fn";
pub const INV2: &str = "tests/fixtures/invxsq.fn";
pub const BAND: &str = "tests/fixtures/band.fn";
pub const SZERO: &str = "tests/fixtures/signzero.fn";
pub const WIDE: &str = "tests/fixtures/signwide.fn";
pub const HALF: &str = "tests/fixtures/xhalf.fn";
pub const IRR: &str = "tests/fixtures/irr.fn";

pub const BRIDGE_U: &str = "piecewise on [-1,1] { (-1,0): -1; 0: -1; (0,1): x^2 }";
pub const BRIDGE_L: &str = "piecewise on [-1,1] { (-1,0): 3; 0: 0; (0,1): x^2 }";

pub fn cases() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("eval_sign_at_0", vec!["eval", S, "0"]),
        ("eval_inv_at_0", vec!["eval", INV, "0"]),
        ("eval_json", vec!["eval", S, "-1/2", "--format", "json"]),
        ("add_sign_x", vec!["add", S, X]),
        ("add_plus_minus", vec!["add", PLUS, "piecewise on [-1,1] { (-1,0): -x; (0,1): 0 }"]),
        ("mul_sign_sign", vec!["mul", S, S]),
        ("mul_x_invx", vec!["mul", X, INV]),
        ("neg_sign", vec!["neg", S]),
        ("sub_sign_sign", vec!["sub", S, S]),
        ("scale_sign", vec!["scale", "-1/2", S]),
        ("inv_x", vec!["inv", X]),
        ("inv_sign", vec!["inv", S]),
        ("rho_zero_one", vec!["rho", ZERO, ONE, "--tol", "1e-9"]),
        ("rho_zero_invxsq", vec!["rho", ZERO, INV2]),
        ("rho_irrational", vec!["rho", "0 on [0,1]", "x^3-x on [0,1]", "--tol", "1/1000000"]),
        ("rho_ball", vec!["rho", S, X, "--eps", "3/4"]),
        ("rho_decimal", vec!["rho", "0 on [0,1]", "x^3-x on [0,1]", "--decimal", "6"]),
        ("rho_json", vec!["rho", ZERO, ONE, "--eps", "1/2", "--format", "json"]),
        ("leq_x_one", vec!["leq", X, ONE]),
        ("leq_sign_x", vec!["leq", S, X]),
        ("sup_sign_x", vec!["sup", S, X]),
        ("inf_sign_x", vec!["inf", S, X]),
        ("classify_sign", vec!["classify", S]),
        ("classify_invx_json", vec!["classify", INV, "--format", "json"]),
        ("sets_sign", vec!["sets", S]),
        ("sets_invx", vec!["sets", INV, "--eps", "1/4"]),
        ("sets_band", vec!["sets", BAND]),
        ("sets_json", vec!["sets", PLUS, "--format", "json"]),
        ("canon_refined", vec!["canon", "piecewise on [-1,1] { (-1,0): x; 0: 0; (0,1): x }"]),
        ("canon_decimal", vec!["canon", "x/3 on [-1,1]", "--decimal", "3"]),
        ("equal_refined", vec!["equal", X, "piecewise on [-1,1] { (-1,1/2): x; (1/2,1): x }"]),
        ("equal_sign_x", vec!["equal", S, X]),
        ("restrict_sign", vec!["restrict", S, "0", "1/2"]),
        ("extend_sign", vec!["extend", WIDE]),
        ("quotient_sign", vec!["quotient", S]),
        ("quotient_invx", vec!["quotient", INV]),
        ("witness_sign", vec!["witness", S, X]),
        ("witness_continuous", vec!["witness", X, X]),
        ("rephom_sign", vec!["rephom", "--p", X, "--q", ABS]),
        ("rephom_pair", vec!["rephom", "--p", X, "--p", PLUS, "--q", ABS, "--q", PLUS]),
        ("envelopes", vec!["envelopes", ONE, "1/2 on [-1,1]", "3/4 on [-1,1]"]),
        ("limit_shift", vec!["limit", "x+1 on [-1,1]", "x+1/2 on [-1,1]", "x+1/4 on [-1,1]", "--moduli", "1/2,1/3,1/5"]),
        ("interpose_sign", vec!["interpose", S, "2 on [-1,1]"]),
        ("approx_sign", vec!["approx", S, "1"]),
        ("approx_narrow", vec!["approx", "piecewise on [-1,1] { (-1,0): 0; (0,1): 1/10 }", "4"]),
        ("plot_sign_csv", vec!["plot", S, "--samples", "10"]),
        ("plot_invx_svg", vec!["plot", INV, "--samples", "12", "--format", "svg"]),
        ("plot_overlay_svg", vec!["plot", S, X, "--samples", "6", "--format", "svg"]),
        ("members_band", vec!["members", "piecewise on [-1,1] { (-1,1): x .. x+1 }"]),
        ("members_wide", vec!["members", WIDE]),
        ("regularize_wide", vec!["regularize", WIDE]),
        ("roots_mixed", vec!["roots", "(x-1/2)^2*(x^2-2)", "-2", "2"]),
        ("roots_json", vec!["roots", "x^2-1/4", "-1", "1", "--format", "json"]),
        // core errors, exit 1
        ("err_zero_denominator", vec!["eval", "1/(x-x) on [0,1]", "0"]),
        ("err_zero_reciprocal", vec!["eval", "(x-x)^-1 on [0,1]", "0"]),
        ("err_identically_zero", vec!["roots", "0", "-1", "1"]),
        ("err_interior_pole", vec!["canon", "piecewise on [-1,1] {\n  (-1,1): 1/(x)\n}"]),
        ("err_segment_order", vec!["canon", "piecewise on [-1,1] { (-1,1): 1 .. 0 }"]),
        ("err_unsorted", vec!["canon", "x on [1,0]"]),
        ("err_out_of_domain", vec!["eval", S, "2"]),
        ("err_domain_mismatch", vec!["add", S, HALF]),
        ("err_not_s_continuous", vec!["members", SZERO]),
        ("err_not_quasi_minimal", vec!["regularize", BAND]),
        ("err_not_h_continuous", vec!["add", BAND, S]),
        ("err_zero_divisor", vec!["inv", PLUS]),
        ("err_non_representable", vec!["inv", IRR]),
        ("err_zero_function", vec!["witness", X, ZERO]),
        ("err_incompatible", vec!["rephom", "--p", X, "--p", ONE, "--q", ONE, "--q", ONE]),
        ("err_ideal_not_dense", vec!["rephom", "--p", PLUS, "--q", PLUS]),
        ("err_eps_range", vec!["rho", S, X, "--eps", "2"]),
        ("err_modulus", vec!["limit", ONE, "1/2 on [-1,1]", "--moduli", "1,1/2"]),
        ("err_sandwich", vec!["interpose", ONE, ZERO]),
        ("err_bridging", vec!["interpose", BRIDGE_U, BRIDGE_L]),
        ("err_invalid_argument", vec!["approx", S, "0"]),
        ("err_io", vec!["plot", S, "-o", "/nonexistent/dir/out.csv"]),
        // usage and parse errors, exit 2
        ("usage_unknown_verb", vec!["frobnicate", S]),
        ("usage_missing_operand", vec!["add", S]),
        ("usage_format", vec!["canon", S, "--format", "csv"]),
        ("usage_samples", vec!["plot", S, "--samples", "1"]),
        ("usage_tol", vec!["rho", S, X, "--tol", "0"]),
        ("parse_missing_semicolon", vec!["canon", "piecewise on [-1,1] { (-1,0): -1 (0,1): 1 }"]),
        ("parse_gap", vec!["canon", "piecewise on [-1,1] { (-1,0): -1; (1/2,1): 1 }"]),
        ("parse_bad_point", vec!["canon", "piecewise on [-1,1] { (-1,1): x; 1/2: 0 }"]),
        ("parse_bad_char", vec!["canon", "x $ 2 on [0,1]"]),
        ("parse_scalar", vec!["scale", "two", S]),
    ]
}

pub const ERRORS: [&str; 22] = [
    "ZeroDenominator",
    "ZeroReciprocal",
    "IdenticallyZero",
    "InteriorPole",
    "SegmentOrderViolation",
    "UnsortedBreakpoints",
    "OutOfDomain",
    "DomainMismatch",
    "NotSContinuous",
    "NotQuasiMinimal",
    "NotHContinuous",
    "ZeroDivisor",
    "NonRepresentablePoint",
    "ZeroFunction",
    "IncompatibleImages",
    "IdealNotDense",
    "EpsOutOfRange",
    "ModulusViolated",
    "SandwichViolated",
    "BridgingFailed",
    "InvalidArgument",
    "IOError",
];

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn invoke(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_hnf"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn quote(arg: &str) -> String {
    if arg.chars().any(|c| c.is_whitespace() || "{}[];$".contains(c)) {
        format!("'{arg}'")
    } else {
        arg.to_string()
    }
}

pub fn transcript(args: &[&str], run: &Run) -> String {
    let cmd: Vec<String> = args.iter().map(|a| quote(a)).collect();
    format!(
        "$ hnf {}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        cmd.join(" "),
        run.code,
        run.stdout,
        run.stderr
    )
}

/// Runs every case and compares it with its stored transcript, rewriting
/// the files instead when `UPDATE_GOLDEN` is set.
pub fn golden_mismatches() -> Vec<String> {
    let dir = root().join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for (name, args) in cases() {
        let run = invoke(&args);
        let text = transcript(&args, &run);
        let path = dir.join(format!("{name}.txt"));
        if update {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == text => {}
            Ok(want) => failures.push(format!("{name}: transcript differs\n--- want\n{want}--- got\n{text}")),
            Err(_) => failures.push(format!("{name}: missing {}", path.display())),
        }
    }
    failures
}
