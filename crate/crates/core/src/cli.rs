//! The `modlie` command line: `verify`, `pmap`, `fingerprint`, `check-file`.
//!
//! Exit codes: 0 pass or conditional-pass, 1 mathematical mismatch, 2 input error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::divpow::{k31_algebra, verify_eq_new, DPDescriptor};
use crate::families::{
    build_l_symbolic, invariant_fingerprint, table_closure_mismatches, verify_expectation_file,
    verify_lemma_fixture, verify_lemma_l3, weight_violations, LemmaExpectation, L3_SPECIALIZATIONS,
};
use crate::pstruct::{PStructError, PowerSolver};
use crate::report::{CheckRecord, Report, Status};
use crate::scalars::{FieldElement, Parity};
use crate::superalg::SuperAlgebra;

pub const FIXTURES_ENV: &str = "MODLIE_FIXTURES";

#[derive(Debug, Parser)]
#[command(
    name = "modlie",
    version,
    about = "Modular Lie superalgebras and their p|2p-structures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification driver: L3, eq-new, k31-jacobi, fixture:<name>:<key>, file:<path>.
    Verify {
        target: String,
        #[command(flatten)]
        opts: Options,
    },
    /// p-th (even) or 2p-th (odd) power of one element of an algebra file.
    Pmap {
        /// Algebra JSON file, or `L` for the symbolic L(eps, delta, rho).
        file: String,
        /// Basis name or linear combination such as `h1 + 2*y4`.
        element: String,
        #[command(flatten)]
        opts: Options,
    },
    /// Isomorphism invariants of a numeric algebra.
    Fingerprint {
        /// Algebra JSON file, or `L`.
        file: String,
        #[command(flatten)]
        opts: Options,
    },
    /// Parse and validate an algebra, expectation or report file.
    CheckFile {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<String>,
    #[arg(long)]
    pub symbolic: bool,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown target {0:?}")]
    UnknownTarget(String),
    #[error("{0}")]
    Input(String),
}

macro_rules! input_err {
    ($($t:tt)*) => { CliError::Input(format!($($t)*)) };
}

impl From<crate::families::FamilyError> for CliError {
    fn from(e: crate::families::FamilyError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<crate::superalg::SuperAlgError> for CliError {
    fn from(e: crate::superalg::SuperAlgError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(e: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Pass | Status::ConditionalPass => 0,
        Status::Fail => 1,
    }
}

fn emit(report: &Report, json: bool) -> Outcome {
    Outcome {
        code: exit_code(report.status),
        stdout: if json {
            report.to_json() + "\n"
        } else {
            report.render_text()
        },
        stderr: String::new(),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn execute(command: Command) -> Outcome {
    let result = match command {
        Command::Verify { target, opts } => verify(&target, &opts).map(|r| emit(&r, opts.json)),
        Command::Pmap {
            file,
            element,
            opts,
        } => pmap(&file, &element, &opts).map(|r| emit(&r, opts.json)),
        Command::Fingerprint { file, opts } => fingerprint(&file, &opts),
        Command::CheckFile { file, json } => check_file(&file).map(|r| emit(&r, json)),
    };
    result.unwrap_or_else(Outcome::input_error)
}

/// `--fixtures`, else `$MODLIE_FIXTURES`, else the fixtures shipped with the crate.
pub fn fixtures_dir(opts: &Options) -> PathBuf {
    if let Some(d) = &opts.fixtures {
        return d.clone();
    }
    match std::env::var_os(FIXTURES_ENV) {
        Some(d) => PathBuf::from(d),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"),
    }
}

fn parameters(opts: &Options) -> Vec<(&'static str, &str)> {
    [
        ("eps", &opts.eps),
        ("delta", &opts.delta),
        ("rho", &opts.rho),
    ]
    .into_iter()
    .filter_map(|(k, v)| v.as_deref().map(|v| (k, v)))
    .collect()
}

/// Field values for the given parameters: integers mod p or polynomials in `z`.
fn assignment(
    g: &SuperAlgebra,
    values: &[(&str, &str)],
) -> Result<BTreeMap<String, FieldElement>, CliError> {
    let mut out = BTreeMap::new();
    for (name, text) in values {
        let s = g
            .ring()
            .parse(text)
            .map_err(|e| input_err!("--{name} {text}: {e}"))?;
        let c = s
            .constant_value(g.field())
            .ok_or_else(|| input_err!("--{name} {text}: not a field element"))?;
        out.insert(name.to_string(), c);
    }
    Ok(out)
}

fn specialized(g: SuperAlgebra, opts: &Options) -> Result<SuperAlgebra, CliError> {
    let values = parameters(opts);
    if values.is_empty() {
        return Ok(g);
    }
    Ok(g.specialize(&assignment(&g, &values)?)?)
}

fn load_algebra(file: &str) -> Result<SuperAlgebra, CliError> {
    if file == "L" {
        return Ok(build_l_symbolic()?);
    }
    let text = fs::read_to_string(file).map_err(|e| input_err!("{file}: {e}"))?;
    SuperAlgebra::from_json(&text).map_err(|e| input_err!("{file}: {e}"))
}

pub fn verify(target: &str, opts: &Options) -> Result<Report, CliError> {
    match target {
        "L3" => verify_l3(opts),
        "eq-new" => verify_eq_new_target(opts),
        "k31-jacobi" => verify_k31(),
        _ => {
            if let Some(rest) = target.strip_prefix("fixture:") {
                let (name, key) = rest
                    .split_once(':')
                    .ok_or_else(|| input_err!("expected fixture:<name>:<cocycle>, got {target}"))?;
                return Ok(verify_lemma_fixture(&fixtures_dir(opts).join(name), key)?);
            }
            if let Some(path) = target.strip_prefix("file:") {
                return Ok(verify_expectation_file(Path::new(path))?);
            }
            Err(CliError::UnknownTarget(target.into()))
        }
    }
}

/// Symbolic run plus the full sweep, or the given point (with `--symbolic` also symbolic).
fn verify_l3(opts: &Options) -> Result<Report, CliError> {
    let values = parameters(opts);
    if values.is_empty() {
        return Ok(verify_lemma_l3(true, &L3_SPECIALIZATIONS)?);
    }
    let g = build_l_symbolic()?;
    let a = assignment(&g, &values)?;
    specialized(g, opts)?;
    let get = |k: &str| -> i64 {
        a.get(k)
            .map(|c| c.as_int().expect("prime field") as i64)
            .unwrap_or(0)
    };
    let eps = if a.contains_key("eps") { get("eps") } else { 1 };
    Ok(verify_lemma_l3(
        opts.symbolic,
        &[(eps, get("delta"), get("rho"))],
    )?)
}

fn verify_eq_new_target(opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let (p, m, s) = (
        opts.p.unwrap_or(3),
        opts.m.unwrap_or(1),
        opts.s.unwrap_or(1),
    );
    let d = DPDescriptor::new(p, vec![1; m], 2 * s).map_err(|e| input_err!("{e}"))?;
    let mut report = Report::new(format!("eq-new p={p} m={m} s={s}"));
    for i in 0..m {
        let r = verify_eq_new(&d, i).map_err(|e| input_err!("{e}"))?;
        let label = format!("i={}: ", i + 1);
        report.push(CheckRecord::flag(
            format!("{label}lhs in algebra"),
            r.lhs_in_algebra,
            r.lhs_field.clone(),
        ));
        report.push(CheckRecord::flag(
            format!("{label}rhs in algebra"),
            r.rhs_in_algebra,
            r.rhs_field.clone(),
        ));
        report.push(CheckRecord::new(
            format!("{label}ad(lhs)^{p} = ad(rhs)"),
            "equal",
            r.witness.clone().unwrap_or_else(|| {
                if r.ad_equal {
                    "equal".into()
                } else {
                    "not compared".into()
                }
            }),
            r.ad_equal,
        ));
        report.notes.push(format!(
            "{label}dim {}, operator power {}",
            r.algebra_dim,
            if r.operator_equal { "equal" } else { "differs" }
        ));
    }
    Ok(report.finish(start.elapsed()))
}

fn verify_k31() -> Result<Report, CliError> {
    let start = Instant::now();
    let mut report = Report::new("k31-jacobi");
    let k = k31_algebra();
    let ids = k31_algebra().check_super_identities();
    report.push(CheckRecord::flag(
        format!("contact bracket on O(3;(1,1,1)), dim {}", k.dim()),
        ids.is_empty(),
        ids.to_string().trim_end().to_string(),
    ));
    let l = build_l_symbolic()?;
    let eps = l.ring().var("eps").map_err(|e| input_err!("{e}"))?;
    let l0 = l.specialize(
        &[
            ("delta".to_string(), l.field().zero()),
            ("rho".to_string(), l.field().zero()),
        ]
        .into(),
    )?;
    let bad = table_closure_mismatches(&l0, &eps)?;
    report.push(CheckRecord::flag(
        "table closes and reproduces L(eps,0,0)",
        bad.is_empty(),
        bad.join("; "),
    ));
    Ok(report.finish(start.elapsed()))
}

pub fn pmap(file: &str, element: &str, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let g = specialized(load_algebra(file)?, opts)?;
    let x = match g.index_of(element) {
        Ok(i) => g.basis_vector(i),
        Err(_) => g.parse_vector(element)?,
    };
    let parity = g.element_parity(&x)?;
    let p = g.characteristic();
    let (label, power) = match parity {
        Parity::Even => (format!("({element})^[{p}]"), p),
        Parity::Odd => (format!("({element})^[{}]", 2 * p), 2 * p),
    };
    let solver = PowerSolver::new(&g);
    let result = match parity {
        Parity::Even => solver.p_power(&x),
        Parity::Odd => solver.two_p_power(&x),
    };
    let mut report = Report::new(format!("pmap:{file}:{element}"));
    match result {
        Ok(sol) => {
            let mut value = g.format(&sol.value);
            if !sol.center.is_empty() {
                let span: Vec<String> = sol.center.iter().map(|c| g.format(c)).collect();
                value = format!("{value} mod span{{{}}}", span.join(", "));
            }
            let mut rec =
                CheckRecord::new(label, format!("ad-power {power} is inner"), value, true);
            rec.coset = !sol.center.is_empty();
            report.push(rec);
        }
        Err(PStructError::NoSolution(why)) => {
            report.push(CheckRecord::new(
                label,
                format!("ad-power {power} is inner"),
                format!("no solution: {why}"),
                false,
            ));
            report
                .notes
                .push("the algebra is not restricted at this element".into());
        }
        Err(e) => return Err(input_err!("{e}")),
    }
    Ok(report.finish(start.elapsed()))
}

fn fingerprint(file: &str, opts: &Options) -> Result<Outcome, CliError> {
    let mut g = load_algebra(file)?;
    if file == "L" && opts.eps.is_none() {
        g = g.specialize(&assignment(&g, &[("eps", "1")])?)?;
    }
    let mut g = specialized(g, opts)?;
    if file == "L" {
        let zero = g.field().zero();
        g = g.specialize(&[("delta".to_string(), zero), ("rho".to_string(), zero)].into())?;
    }
    if !g.is_numeric() {
        return Err(input_err!(
            "structure constants depend on {}; specialize them first",
            g.parameters().join(", ")
        ));
    }
    let f = invariant_fingerprint(&g)?;
    let stdout = if opts.json {
        serde_json::to_string_pretty(&f).expect("fingerprint serializes") + "\n"
    } else {
        format!(
            "dim {} (sdim {}|{})\ncenter {}\nderived {:?}\ntrace form rank {}\nweight spaces {:?}\n",
            f.dim, f.sdim.0, f.sdim.1, f.center_dim, f.derived_dims, f.trace_form_rank, f.weight_dims
        )
    };
    Ok(Outcome {
        code: 0,
        stdout,
        stderr: String::new(),
    })
}

/// Algebra files are checked for the super identities and weight grading; expectation
/// files for parseable entries over their algebra; report files for consistency.
pub fn check_file(path: &Path) -> Result<Report, CliError> {
    let start = Instant::now();
    let text = fs::read_to_string(path).map_err(|e| input_err!("{}: {e}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| input_err!("{}: {e}", path.display()))?;
    let mut report = Report::new(format!("check-file:{}", path.display()));
    if value.get("basis").is_some() {
        let g =
            SuperAlgebra::from_json(&text).map_err(|e| input_err!("{}: {e}", path.display()))?;
        let ids = g.check_super_identities();
        let list = |v: Vec<String>| v.join("; ");
        report.push(CheckRecord::flag(
            "super skew-symmetry",
            ids.skew.is_empty(),
            list(ids.skew.clone()),
        ));
        report.push(CheckRecord::flag(
            "bracket parity",
            ids.parity.is_empty(),
            list(
                ids.parity
                    .iter()
                    .map(|(a, b, t)| format!("[{a},{b}] has {t}"))
                    .collect(),
            ),
        ));
        report.push(CheckRecord::flag(
            "super Jacobi",
            ids.jacobi.is_empty(),
            list(
                ids.jacobi
                    .iter()
                    .map(|([a, b, c], v)| format!("({a},{b},{c}) -> {v}"))
                    .collect(),
            ),
        ));
        let bad = weight_violations(&g);
        report.push(CheckRecord::flag(
            "weight grading",
            bad.is_empty(),
            list(bad),
        ));
    } else if value.get("entries").is_some() || value.as_array().is_some_and(|a| !a.is_empty()) {
        let list: Vec<LemmaExpectation> = if value.is_array() {
            serde_json::from_value(value).map_err(|e| input_err!("{}: {e}", path.display()))?
        } else {
            vec![LemmaExpectation::from_json(&text)?]
        };
        let base = path.parent().unwrap_or(Path::new("."));
        for e in &list {
            let file = e.algebra_file.as_deref().unwrap_or("algebra.json");
            let g = load_algebra(&base.join(file).display().to_string())?;
            let label = e
                .cocycle
                .as_deref()
                .map(|k| format!("{k}: "))
                .unwrap_or_default();
            for entry in &e.entries {
                let ok = g.index_of(&entry.element).is_ok() && g.parse_vector(&entry.value).is_ok();
                report.push(CheckRecord::flag(
                    format!("{label}{} parses", entry.element),
                    ok,
                    entry.value.clone(),
                ));
            }
        }
    } else if value.get("status").is_some() {
        let r = Report::from_json(&text).map_err(|e| input_err!("{}: {e}", path.display()))?;
        report.push(CheckRecord::flag(
            "status agrees with its checks",
            r.derived_status() == r.status,
            r.status.as_str(),
        ));
    } else {
        return Err(input_err!(
            "{}: not an algebra, expectation or report file",
            path.display()
        ));
    }
    Ok(report.finish(start.elapsed()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_status() {
        assert_eq!(exit_code(Status::Pass), 0);
        assert_eq!(exit_code(Status::ConditionalPass), 0);
        assert_eq!(exit_code(Status::Fail), 1);
    }

    #[test]
    fn in_process_run() {
        let out = run(["modlie", "verify", "k31-jacobi"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.starts_with("k31-jacobi: pass"));
        assert_eq!(run(["modlie", "frobnicate"]).code, 2);
        assert_eq!(run(["modlie", "--help"]).code, 0);
    }

    #[test]
    fn parameter_values_parse_in_the_field() {
        let g = build_l_symbolic().unwrap();
        let a = assignment(&g, &[("eps", "-1"), ("rho", "4")]).unwrap();
        assert_eq!(a["eps"].as_int(), Some(2));
        assert_eq!(a["rho"].as_int(), Some(1));
        assert!(assignment(&g, &[("eps", "delta")]).is_err());
    }
}
