//! Command-line front end.
//!
//! Exit codes: `eval` 0 designated / 1 not designated or refuted;
//! `check-proof` 0 accepted / 1 rejected; `search` 1 countermodel found /
//! 0 exhausted / 3 limit reached; `twist-verify` and `mt` 0 holds / 1 fails.
//! Every command exits with 2 on bad input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::hilbert::{check_proof, check_proof_in, parse_proof, Calculus, LemmaStore};
use crate::matrix::Matrix;
use crate::modeltheory::{
    elementary_equiv_bounded, elementary_sub_bounded, is_substructure, tarski_conditions,
    BoundedVerdict,
};
use crate::search::{find_countermodel_with_progress, Limits, SearchOutcome, SearchSpec};
use crate::structures::{parse_structure, write_structure, Assignment, EqualityMode, Structure};
use crate::syntax::{enumerate_formulas, parse_formula, parse_formula_inferring, Formula, Signature};
use crate::twist::{verify_isomorphism, verify_quantifiers, AssignmentSpace, PowersetAlgebra};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "qciore", version, about = "Three-valued paraconsistent first-order logic workbench")]
pub struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print nothing; the exit code carries the verdict.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a formula in a structure file.
    Eval(EvalArgs),
    /// Check a proof file.
    CheckProof(CheckProofArgs),
    /// Search for a finite countermodel.
    Search(SearchArgs),
    /// Verify the twist-structure isomorphism on small powerset algebras.
    TwistVerify(TwistArgs),
    /// Substructure and elementarity checks.
    Mt {
        #[command(subcommand)]
        command: MtCommand,
    },
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub structure: PathBuf,
    pub formula: String,
    /// Values of free variables, e.g. `x=a,y=b`.
    #[arg(long)]
    pub assign: Option<String>,
    /// Check validity over all assignments instead of evaluating once.
    #[arg(long)]
    pub valid: bool,
    #[arg(long, value_enum, default_value_t = MatrixArg::Ciore)]
    pub matrix: MatrixArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MatrixArg {
    Ciore,
    P1,
    Lfi1,
}

impl MatrixArg {
    fn matrix(self) -> Matrix {
        match self {
            MatrixArg::Ciore => Matrix::ciore(),
            MatrixArg::P1 => Matrix::p1(),
            MatrixArg::Lfi1 => Matrix::lfi1(),
        }
    }
}

#[derive(Debug, Args)]
pub struct CheckProofArgs {
    pub proof: PathBuf,
    /// Defaults to the first-order calculus, with equality if the proof uses it.
    #[arg(long, value_enum)]
    pub calculus: Option<CalculusArg>,
    /// Extra proof files to add to the lemma store, in order.
    #[arg(long = "lemma")]
    pub lemmas: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CalculusArg {
    Ciore,
    Qciore,
    QcioreEq,
}

impl From<CalculusArg> for Calculus {
    fn from(c: CalculusArg) -> Self {
        match c {
            CalculusArg::Ciore => Calculus::Ciore,
            CalculusArg::Qciore => Calculus::QCiore,
            CalculusArg::QcioreEq => Calculus::QCioreEq,
        }
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Formula to refute, or a file containing it.
    #[arg(long)]
    pub refute: String,
    /// File of premises, one formula per line.
    #[arg(long)]
    pub gamma: Option<PathBuf>,
    /// Largest domain size.
    #[arg(long = "max", default_value_t = 3)]
    pub max_size: usize,
    #[arg(long, value_enum, default_value_t = EqualityArg::Classical)]
    pub equality: EqualityArg,
    #[arg(long)]
    pub max_structures: Option<u64>,
    /// Time budget in seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
    /// Emit JSON progress lines on stderr.
    #[arg(long)]
    pub progress: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EqualityArg {
    Classical,
    Normal,
    Free,
}

impl From<EqualityArg> for EqualityMode {
    fn from(e: EqualityArg) -> Self {
        match e {
            EqualityArg::Classical => EqualityMode::Classical,
            EqualityArg::Normal => EqualityMode::Normal,
            EqualityArg::Free => EqualityMode::Free,
        }
    }
}

#[derive(Debug, Args)]
pub struct TwistArgs {
    /// Largest base set of the powerset algebras.
    #[arg(long, default_value_t = 3)]
    pub max_size: usize,
    /// Domain size for the quantifier check.
    #[arg(long, default_value_t = 2)]
    pub domain: usize,
}

#[derive(Debug, Subcommand)]
pub enum MtCommand {
    /// Is A a substructure of B?
    Sub(PairArgs),
    /// Check the Tarski-like conditions for A in B.
    Tarski {
        #[command(flatten)]
        pair: PairArgs,
        /// Formulas to check; defaults to every formula up to `--depth`.
        #[arg(long = "formula")]
        formulas: Vec<String>,
    },
    /// Is A an elementary substructure of B, up to `--depth`?
    Elem(PairArgs),
    /// Are A and B elementarily equivalent, up to `--depth`?
    Equiv(PairArgs),
}

#[derive(Debug, Args)]
pub struct PairArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    /// Variables of the enumerated formulas.
    #[arg(long, default_value = "x,y", value_delimiter = ',')]
    pub vars: Vec<String>,
}

/// Parses `args` and runs the command, writing to `out` and `err`.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string() }));
            }
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

struct Printer<'a> {
    out: &'a mut dyn Write,
    json: bool,
    quiet: bool,
}

impl Printer<'_> {
    fn emit(&mut self, text: &str, value: serde_json::Value) -> Result<(), CliError> {
        let res = if self.quiet {
            Ok(())
        } else if self.json {
            writeln!(self.out, "{value}")
        } else {
            writeln!(self.out, "{}", text.trim_end())
        };
        res.map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let mut p = Printer {
        out,
        json: cli.json,
        quiet: cli.quiet,
    };
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, &mut p),
        Command::CheckProof(a) => cmd_check_proof(a, &mut p),
        Command::Search(a) => cmd_search(a, &mut p, err),
        Command::TwistVerify(a) => cmd_twist(a, &mut p),
        Command::Mt { command } => cmd_mt(command, &mut p),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_structure(path: &Path) -> Result<Structure, CliError> {
    parse_structure(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Formula lines of a file: blank lines and `#` comments skipped.
fn formula_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

fn parse_assignment(text: &str, st: &Structure) -> Result<Assignment, CliError> {
    let mut s = Assignment::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (x, a) = part
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("bad assignment `{part}`, expected x=a")))?;
        let e = st
            .element(a.trim())
            .ok_or_else(|| CliError::Input(format!("no element `{}` in the structure", a.trim())))?;
        s.set(x.trim(), e);
    }
    Ok(s)
}

fn cmd_eval(a: &EvalArgs, p: &mut Printer) -> Result<i32, CliError> {
    let st = load_structure(&a.structure)?;
    let phi = parse_formula(&a.formula, st.signature()).map_err(input)?;
    let m = a.matrix.matrix();
    if a.valid {
        return match st.is_valid_in_with(&phi, &m).map_err(input)? {
            None => {
                p.emit("VALID", json!({ "formula": phi.to_string(), "valid": true }))?;
                Ok(0)
            }
            Some(s) => {
                let v = st.eval_with(&phi, &s, &m).map_err(input)?;
                let witness = s.display(&st);
                let text = if witness.is_empty() {
                    format!("REFUTED: {v}")
                } else {
                    format!("REFUTED under [{witness}]: {v}")
                };
                p.emit(
                    &text,
                    json!({ "formula": phi.to_string(), "valid": false, "witness": witness, "value": v.to_string() }),
                )?;
                Ok(1)
            }
        };
    }
    let s = match &a.assign {
        Some(text) => parse_assignment(text, &st)?,
        None => Assignment::new(),
    };
    let v = st.eval_with(&phi, &s, &m).map_err(input)?;
    let class = if phi.is_sentence() && a.matrix_is_ciore() {
        Some(st.sentence_trichotomy(&phi).map_err(input)?.to_string())
    } else {
        None
    };
    let text = match &class {
        Some(c) => format!("{v} {c}"),
        None => v.to_string(),
    };
    p.emit(
        &text,
        json!({ "formula": phi.to_string(), "value": v.to_string(), "designated": v.is_designated(), "class": class }),
    )?;
    Ok(if v.is_designated() { 0 } else { 1 })
}

impl EvalArgs {
    fn matrix_is_ciore(&self) -> bool {
        matches!(self.matrix, MatrixArg::Ciore)
    }
}

fn cmd_check_proof(a: &CheckProofArgs, p: &mut Printer) -> Result<i32, CliError> {
    let file = parse_proof(&read(&a.proof)?).map_err(|e| CliError::Input(format!("{}: {e}", a.proof.display())))?;
    let mut store = LemmaStore::standard();
    for path in &a.lemmas {
        store
            .add_proof_text(&read(path)?, Calculus::QCioreEq)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    let verdict = match a.calculus {
        Some(c) => check_proof_in(&file.proof, &file.signature, &store, c.into()),
        None => check_proof(&file.proof, &file.signature, &store),
    };
    let mut value = serde_json::to_value(&verdict).map_err(input)?;
    value["accepted"] = json!(verdict.accepted());
    p.emit(&verdict.to_string(), value)?;
    Ok(if verdict.accepted() { 0 } else { 1 })
}

/// A formula given inline or as a file name.
fn formula_arg(text: &str) -> Result<String, CliError> {
    let path = Path::new(text);
    if path.is_file() {
        Ok(formula_lines(&read(path)?).collect::<Vec<_>>().join(" "))
    } else {
        Ok(text.to_string())
    }
}

fn cmd_search(a: &SearchArgs, p: &mut Printer, err: &mut dyn Write) -> Result<i32, CliError> {
    let mut sig = Signature::new();
    let mut gamma = Vec::new();
    if let Some(path) = &a.gamma {
        let text = read(path)?;
        for line in formula_lines(&text) {
            gamma.push(parse_formula_inferring(line, &mut sig).map_err(input)?);
        }
    }
    let refute = parse_formula_inferring(&formula_arg(&a.refute)?, &mut sig).map_err(input)?;
    // formulas parsed before a later symbol was seen are re-read against the full signature
    let gamma: Vec<Formula> = gamma
        .iter()
        .map(|g| parse_formula(&g.to_string(), &sig))
        .collect::<Result<_, _>>()
        .map_err(input)?;
    let limits = Limits {
        max_structures: a.max_structures,
        time_budget: a.timeout.map(Duration::from_secs_f64),
    };
    let spec = SearchSpec::new(sig, refute, a.max_size)
        .gamma(gamma)
        .equality(a.equality.into())
        .limits(limits);
    let outcome = find_countermodel_with_progress(&spec, |pr| {
        if a.progress {
            let _ = writeln!(err, "{}", serde_json::to_string(&pr).unwrap_or_default());
        }
    })
    .map_err(input)?;
    match outcome {
        SearchOutcome::Found(c) => {
            let witness = c.assignment.display(&c.structure);
            let text = write_structure(&c.structure);
            p.emit(
                &format!("{text}# size {}, index {}, refuted under [{witness}]", c.size, c.index)
                    .replace(" under []", ""),
                json!({ "result": "found", "size": c.size, "index": c.index.to_string(), "structure": text, "witness": witness }),
            )?;
            Ok(1)
        }
        SearchOutcome::Exhausted { max_size, checked } => {
            p.emit(
                &format!("exhausted({max_size})"),
                json!({ "result": "exhausted", "max_size": max_size, "checked": checked }),
            )?;
            Ok(0)
        }
        SearchOutcome::LimitExceeded { size, checked, reason } => {
            p.emit(
                &format!("limit exceeded at size {size} after {checked} structures: {reason}"),
                json!({ "result": "limit", "size": size, "checked": checked, "reason": reason }),
            )?;
            Ok(3)
        }
    }
}

fn cmd_twist(a: &TwistArgs, p: &mut Printer) -> Result<i32, CliError> {
    let mut lines = Vec::new();
    let mut reports = Vec::new();
    let mut ok = true;
    for n in 1..=a.max_size {
        let r = verify_isomorphism(&PowersetAlgebra::new(n).map_err(input)?);
        ok &= r.ok();
        lines.push(format!(
            "|X|={n}: {} triples, {} pairs, {} connective checks, {}",
            r.triples,
            r.pairs,
            r.checked,
            if r.ok() { "ok" } else { "FAILED" }
        ));
        lines.extend(r.failures.iter().map(|f| format!("  {f}")));
        reports.push(r);
    }
    let space = AssignmentSpace::new(a.domain, &["x", "y"]).map_err(input)?;
    let q = verify_quantifiers(&space);
    ok &= q.ok();
    lines.push(format!(
        "quantifiers over a {}-element domain: {} checks, {}",
        a.domain,
        q.checked,
        if q.ok() { "ok" } else { "FAILED" }
    ));
    lines.extend(q.failures.iter().map(|f| format!("  {f}")));
    p.emit(
        &lines.join("\n"),
        json!({ "ok": ok, "algebras": reports, "quantifiers": q }),
    )?;
    Ok(if ok { 0 } else { 1 })
}

fn verdict_json(v: &BoundedVerdict) -> serde_json::Value {
    json!({
        "holds": v.holds(),
        "depth": v.depth,
        "formulas_checked": v.formulas_checked,
        "separation": v.separation.as_ref().map(|s| json!({
            "formula": s.formula,
            "depth": s.depth,
            "assignment": s.assignment,
            "left": s.left.to_string(),
            "right": s.right.to_string(),
        })),
    })
}

fn cmd_mt(cmd: &MtCommand, p: &mut Printer) -> Result<i32, CliError> {
    let load = |pair: &PairArgs| -> Result<(Structure, Structure), CliError> {
        Ok((load_structure(&pair.a)?, load_structure(&pair.b)?))
    };
    match cmd {
        MtCommand::Sub(pair) => {
            let (a, b) = load(pair)?;
            match is_substructure(&a, &b).map_err(input)? {
                None => {
                    p.emit("substructure", json!({ "substructure": true }))?;
                    Ok(0)
                }
                Some(v) => {
                    p.emit(
                        &format!("not a substructure: {v}"),
                        json!({ "substructure": false, "violation": v }),
                    )?;
                    Ok(1)
                }
            }
        }
        MtCommand::Tarski { pair, formulas } => {
            let (a, b) = load(pair)?;
            let list: Vec<Formula> = if formulas.is_empty() {
                enumerate_formulas(a.signature(), &pair.vars, pair.depth).collect()
            } else {
                formulas
                    .iter()
                    .map(|f| parse_formula(f, a.signature()))
                    .collect::<Result<_, _>>()
                    .map_err(input)?
            };
            let r = tarski_conditions(&a, &b, &list, &pair.vars).map_err(input)?;
            let mut text = format!(
                "{} checks, {} failures",
                r.checked,
                r.failures.len()
            );
            for f in &r.failures {
                text.push_str(&format!(
                    "\n  {:?} {} over {} under [{}]: no {}",
                    f.condition, f.formula, f.var, f.assignment, f.missing
                ));
            }
            p.emit(&text, serde_json::to_value(&r).map_err(input)?)?;
            Ok(if r.ok() { 0 } else { 1 })
        }
        MtCommand::Elem(pair) | MtCommand::Equiv(pair) => {
            let (a, b) = load(pair)?;
            let v = if matches!(cmd, MtCommand::Elem(_)) {
                elementary_sub_bounded(&a, &b, pair.depth, &pair.vars)
            } else {
                elementary_equiv_bounded(&a, &b, pair.depth, &pair.vars)
            }
            .map_err(input)?;
            p.emit(&v.to_string(), verdict_json(&v))?;
            Ok(if v.holds() { 0 } else { 1 })
        }
    }
}
