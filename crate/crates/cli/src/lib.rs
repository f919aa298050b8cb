//! Library backing the `fueter` binary: the expression grammar and the
//! subcommand implementations, exposed for integration tests and fuzzing.
//!
//! Exit codes: 0 = success / property true; 1 = property false (not
//! regular, obstructed, selftest failure); 2 = input or parse error;
//! 3 = no solution within the graded ansatz bound.

pub mod expr;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use fueter::json as fjson;
use fueter::selftest::DEFAULT_SEED;
use fueter::solvers;
use fueter::spinor::{self, SymSpinorField};
use fueter::{Error as CoreError, SymField};

pub use expr::{expr_to_field, field_to_expr_string, lower, parse_expr};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid division at byte {pos}: divisor must be a nonzero constant times a power of r2")]
    NonR2Denominator { pos: usize },
    #[error("io error: {0}")]
    Io(String),
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::NoSolutionInAnsatz(_)) => 3,
            _ => 2,
        }
    }

    pub fn to_report(&self) -> Value {
        let kind = match self {
            CliError::Syntax { .. } => "syntax",
            CliError::NonR2Denominator { .. } => "non-r2-denominator",
            CliError::Io(_) => "io",
            CliError::Core(CoreError::NoSolutionInAnsatz(_)) => "no-solution-in-ansatz",
            CliError::Core(CoreError::NotHarmonic) => "not-harmonic",
            CliError::Core(_) => "input",
            CliError::Usage(_) => "usage",
        };
        let mut obj = serde_json::Map::new();
        obj.insert("error".into(), json!(kind));
        obj.insert("message".into(), json!(self.to_string()));
        if let CliError::Syntax { pos, .. } | CliError::NonR2Denominator { pos } = self {
            obj.insert("position".into(), json!(pos));
        }
        Value::Object(obj)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "fueter",
    about = "Exact symbolic toolkit for quaternionic regular functions and the k-Cauchy-Fueter operators",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide k-regularity of a field (harmonicity for k = 0).
    Check {
        /// Spinor rank; inferred from the input when omitted.
        #[arg(long)]
        k: Option<usize>,
        /// JSON input file (field, sym_spinor, pair or quaternion).
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Scalar expression (k = 0).
        #[arg(long)]
        expr: Option<String>,
        /// Comma-separated component expressions for a rank-k field.
        #[arg(long = "expr-components")]
        expr_components: Option<String>,
    },
    /// Apply one operator and print the result.
    Apply {
        /// One of D, Dbar, Dk, D1k, L0, L1, d, star, eta, eta-inv.
        #[arg(long)]
        op: String,
        /// JSON input file of the kind the operator expects.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Scalar expression input.
        #[arg(long)]
        expr: Option<String>,
        /// Comma-separated component expressions (symmetric spinor; four
        /// components w,x,y,z for D/Dbar).
        #[arg(long = "expr-components")]
        expr_components: Option<String>,
    },
    /// Exact basis of k-regular fields with homogeneous degree-deg
    /// polynomial components (harmonic polynomials for k = 0).
    Basis {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        deg: u32,
    },
    /// Regular conjugate: a quaternionic regular function with the given
    /// real harmonic polynomial as real part.
    Conjugate {
        #[arg(long)]
        h: String,
    },
    /// Decompose a harmonic function as L0 f + L1 g with 1-regular pairs.
    Decompose {
        #[arg(long)]
        h: String,
        /// Denominator exponent bound for the graded ansatz.
        #[arg(long = "max-denom", default_value_t = 4)]
        max_denom: u32,
    },
    /// Exact S^3 period obstruction certificate for a harmonic function.
    Obstruction {
        #[arg(long)]
        h: String,
    },
    /// Run the deterministic identity suite of every module.
    Selftest {
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn read_json(path: &PathBuf) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_components(src: &str) -> Result<Vec<SymField>, CliError> {
    split_top_level(src)
        .iter()
        .map(|s| expr_to_field(s))
        .collect()
}

/// Split on commas outside parentheses.
fn split_top_level(src: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in src.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    out.push(cur);
    out
}

enum CheckInput {
    Spinor(SymSpinorField),
    Quaternion(fueter::Quat),
}

fn load_check_input(
    k: Option<usize>,
    input: &Option<PathBuf>,
    expr: &Option<String>,
    expr_components: &Option<String>,
) -> Result<CheckInput, CliError> {
    if let Some(src) = expr {
        let f = expr_to_field(src)?;
        return Ok(CheckInput::Spinor(SymSpinorField::scalar(f)));
    }
    if let Some(src) = expr_components {
        let comps = parse_components(src)?;
        let inferred = comps.len() - 1;
        if let Some(k) = k {
            if k != inferred {
                return Err(CliError::Usage(format!(
                    "--k {k} disagrees with {} components",
                    comps.len()
                )));
            }
        }
        return Ok(CheckInput::Spinor(SymSpinorField::new(inferred, comps)));
    }
    if let Some(path) = input {
        let v = read_json(path)?;
        let kind = v.get("kind").and_then(Value::as_str);
        return match kind {
            Some("sym_spinor") => Ok(CheckInput::Spinor(fjson::sym_spinor_from_json(&v)?)),
            _ if v.get("w").is_some() => Ok(CheckInput::Quaternion(fjson::quat_from_json(&v)?)),
            _ if v.get("f0").is_some() => {
                let (f0, f1) = fjson::pair_from_json(&v)?;
                Ok(CheckInput::Spinor(SymSpinorField::new(1, vec![f0, f1])))
            }
            _ => Ok(CheckInput::Spinor(SymSpinorField::scalar(
                fjson::field_from_json(&v)?,
            ))),
        };
    }
    Err(CliError::Usage(
        "check needs --expr, --expr-components or --in".into(),
    ))
}

fn cmd_check(
    k: Option<usize>,
    input: Option<PathBuf>,
    expr: Option<String>,
    expr_components: Option<String>,
) -> Result<(i32, Value), CliError> {
    match load_check_input(k, &input, &expr, &expr_components)? {
        CheckInput::Spinor(f) => {
            if let Some(k) = k {
                if k != f.k() {
                    return Err(CliError::Usage(format!(
                        "--k {k} disagrees with input rank {}",
                        f.k()
                    )));
                }
            }
            let regular = spinor::is_k_regular(&f);
            let residual = if f.k() == 0 {
                fjson::field_to_json(&f.comp(0).laplacian())
            } else {
                fjson::mixed_spinor_to_json(&spinor::dk_apply(&f))
            };
            let report = json!({
                "command": "check",
                "k": f.k(),
                "input": fjson::sym_spinor_to_json(&f),
                "regular": regular,
                "residual": residual,
            });
            Ok((if regular { 0 } else { 1 }, report))
        }
        CheckInput::Quaternion(u) => {
            let residual = fueter::quat::cf_d(&u);
            let regular = residual.is_zero();
            let report = json!({
                "command": "check",
                "input": fjson::quat_to_json(&u),
                "regular": regular,
                "residual": fjson::quat_to_json(&residual),
            });
            Ok((if regular { 0 } else { 1 }, report))
        }
    }
}

fn cmd_apply(
    op: &str,
    input: Option<PathBuf>,
    expr: Option<String>,
    expr_components: Option<String>,
) -> Result<(i32, Value), CliError> {
    let value = match (&input, &expr, &expr_components) {
        (Some(path), _, _) => Some(read_json(path)?),
        _ => None,
    };
    let spinor_input = |value: &Option<Value>| -> Result<SymSpinorField, CliError> {
        if let Some(v) = value {
            Ok(fjson::sym_spinor_from_json(v)?)
        } else if let Some(src) = &expr_components {
            let comps = parse_components(src)?;
            Ok(SymSpinorField::new(comps.len() - 1, comps))
        } else if let Some(src) = &expr {
            Ok(SymSpinorField::scalar(expr_to_field(src)?))
        } else {
            Err(CliError::Usage(format!("op {op} needs an input")))
        }
    };
    let quat_input = |value: &Option<Value>| -> Result<fueter::Quat, CliError> {
        if let Some(v) = value {
            Ok(fjson::quat_from_json(v)?)
        } else if let Some(src) = &expr_components {
            let comps = parse_components(src)?;
            if comps.len() != 4 {
                return Err(CliError::Usage(
                    "quaternion input needs 4 components w,x,y,z".into(),
                ));
            }
            let mut it = comps.into_iter();
            Ok(fueter::Quat::new(
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
            ))
        } else if let Some(src) = &expr {
            Ok(fueter::Quat::scalar(expr_to_field(src)?))
        } else {
            Err(CliError::Usage(format!("op {op} needs an input")))
        }
    };
    let form_input = |value: &Option<Value>| -> Result<fueter::DiffForm, CliError> {
        match value {
            Some(v) => Ok(fjson::form_from_json(v)?),
            None => Err(CliError::Usage(format!("op {op} needs --in FILE"))),
        }
    };

    let result = match op {
        "D" => fjson::quat_to_json(&fueter::quat::cf_d(&quat_input(&value)?)),
        "Dbar" => fjson::quat_to_json(&fueter::quat::cf_dbar(&quat_input(&value)?)),
        "Dk" => {
            let f = spinor_input(&value)?;
            if f.k() == 0 {
                return Err(CliError::Usage("Dk needs rank k >= 1".into()));
            }
            fjson::mixed_spinor_to_json(&spinor::dk_apply(&f))
        }
        "D1k" => {
            let v = value.ok_or_else(|| CliError::Usage("D1k needs --in FILE".into()))?;
            let g = fjson::mixed_spinor_from_json(&v)?;
            if g.k() < 2 {
                return Err(CliError::Usage("D1k needs rank k >= 2".into()));
            }
            fjson::sym_spinor_to_json(&spinor::d1k_apply(&g))
        }
        "L0" | "L1" => {
            let j = if op == "L0" { 0 } else { 1 };
            match &value {
                Some(v) if v.get("kind").and_then(Value::as_str) == Some("mixed_spinor") => {
                    let g = fjson::mixed_spinor_from_json(v)?;
                    if g.k() < 2 {
                        return Err(CliError::Usage("L on mixed fields needs k >= 2".into()));
                    }
                    fjson::mixed_spinor_to_json(&spinor::l_apply_mixed(j, &g))
                }
                _ => {
                    let f = spinor_input(&value)?;
                    if f.k() == 0 {
                        return Err(CliError::Usage("L needs rank k >= 1".into()));
                    }
                    fjson::sym_spinor_to_json(&spinor::l_apply(j, &f))
                }
            }
        }
        "d" => {
            let w = form_input(&value)?;
            if w.degree() == 4 {
                return Err(CliError::Usage("d of a 4-form".into()));
            }
            fjson::form_to_json(&fueter::forms::exterior_d(&w))
        }
        "star" => fjson::form_to_json(&fueter::forms::hodge_star(&form_input(&value)?)),
        "eta" => {
            let f = spinor_input(&value)?;
            if f.k() != 2 {
                return Err(CliError::Usage("eta needs rank k = 2".into()));
            }
            fjson::asd_to_json(&fueter::forms::eta(&f))
        }
        "eta-inv" => {
            let v = value.ok_or_else(|| CliError::Usage("eta-inv needs --in FILE".into()))?;
            let w = fjson::asd_from_json(&v)?;
            fjson::sym_spinor_to_json(&fueter::forms::eta_inverse(&w))
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown op `{other}` (expected D, Dbar, Dk, D1k, L0, L1, d, star, eta, eta-inv)"
            )))
        }
    };
    Ok((0, json!({"command": "apply", "op": op, "result": result})))
}

fn cmd_basis(k: usize, deg: u32) -> (i32, Value) {
    if k == 0 {
        let basis = fueter::corpus::harmonic_basis(deg);
        let report = json!({
            "command": "basis",
            "k": 0,
            "deg": deg,
            "dimension": basis.len(),
            "basis": basis.iter().map(fjson::field_to_json).collect::<Vec<_>>(),
        });
        (0, report)
    } else {
        let basis = spinor::kernel_basis(k, deg);
        let report = json!({
            "command": "basis",
            "k": k,
            "deg": deg,
            "dimension": basis.len(),
            "basis": basis.iter().map(fjson::sym_spinor_to_json).collect::<Vec<_>>(),
        });
        (0, report)
    }
}

fn cmd_conjugate(h_src: &str) -> Result<(i32, Value), CliError> {
    let h = expr_to_field(h_src)?;
    let f = solvers::regular_conjugate(&h)?;
    let residual = fueter::quat::cf_d(&f);
    let mut cert = fueter::Certificate::default();
    cert.push_residual(
        "cf_d_residual",
        residual.is_zero(),
        fjson::quat_to_json(&residual),
    );
    let re_res = f.re().sub(&h);
    cert.push_residual(
        "real_part_matches",
        re_res.is_zero(),
        fjson::field_to_json(&re_res),
    );
    let report = json!({
        "command": "conjugate",
        "h": fjson::field_to_json(&h),
        "f": fjson::quat_to_json(&f),
        "certificate": fjson::certificate_to_json(&cert),
    });
    Ok((0, report))
}

fn cmd_decompose(h_src: &str, max_denom: u32) -> Result<(i32, Value), CliError> {
    let h = expr_to_field(h_src)?;
    let r = solvers::inverse_decompose(&h, max_denom)?;
    let mut report = fjson::decomposition_to_json(&r)
        .as_object()
        .cloned()
        .expect("object");
    report.insert("command".into(), json!("decompose"));
    report.insert("h".into(), fjson::field_to_json(&h));
    let code = if r.residuals.all_exact() { 0 } else { 1 };
    Ok((code, Value::Object(report)))
}

fn cmd_obstruction(h_src: &str) -> Result<(i32, Value), CliError> {
    let h = expr_to_field(h_src)?;
    let cert = fueter::periods::obstruction_certificate(&h)?;
    let code = if cert.obstructed { 1 } else { 0 };
    Ok((code, fjson::obstruction_to_json(&cert)))
}

fn cmd_selftest(seed: Option<u64>) -> (i32, Value) {
    let seed = seed.unwrap_or(DEFAULT_SEED);
    let mut report = fueter::selftest::selftest(seed);
    // parser round-trip over seeded canonical fields
    let mut ok = true;
    let mut detail = String::new();
    for i in 0..25u64 {
        let f = fueter::corpus::random_symfield(seed.wrapping_add(i), 3, 2);
        let printed = expr::field_to_expr_string(&f);
        match expr_to_field(&printed) {
            Ok(parsed) if parsed == f => {}
            other => {
                ok = false;
                detail = format!("`{printed}` -> {other:?}");
                break;
            }
        }
    }
    report.checks.push(fueter::selftest::SelfCheck {
        name: "parser_round_trip".into(),
        pass: ok,
        detail,
    });
    if ok {
        report.passed += 1;
    } else {
        report.failed += 1;
    }
    let code = if report.all_pass() { 0 } else { 1 };
    (
        code,
        serde_json::to_value(&report).expect("selftest report serializes"),
    )
}

/// Execute a parsed command line; returns (exit code, JSON report).
pub fn execute(cli: Cli) -> (i32, Value) {
    let outcome = match cli.command {
        Command::Check {
            k,
            input,
            expr,
            expr_components,
        } => cmd_check(k, input, expr, expr_components),
        Command::Apply {
            op,
            input,
            expr,
            expr_components,
        } => cmd_apply(&op, input, expr, expr_components),
        Command::Basis { k, deg } => Ok(cmd_basis(k, deg)),
        Command::Conjugate { h } => cmd_conjugate(&h),
        Command::Decompose { h, max_denom } => cmd_decompose(&h, max_denom),
        Command::Obstruction { h } => cmd_obstruction(&h),
        Command::Selftest { seed } => Ok(cmd_selftest(seed)),
    };
    match outcome {
        Ok((code, report)) => (code, report),
        Err(e) => (e.exit_code(), e.to_report()),
    }
}

/// Convenience wrapper used by tests: run from argv-style strings.
pub fn run_args<I, S>(args: I) -> (i32, Value)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => (2, json!({"error": "usage", "message": e.to_string()})),
    }
}
