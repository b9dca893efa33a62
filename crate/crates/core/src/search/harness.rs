//! Soundness harness: schema instances and rule applications checked on
//! every small structure.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use super::SearchError;
use crate::hilbert::{all_schemas, match_schema, AxiomSchema, Pattern};
use crate::matrix::{Matrix, Truth};
use crate::structures::{
    enumerate_structures, write_structure, Assignment, EqualityMode, Structure,
};
use crate::syntax::{enumerate_formulas, enumerate_terms, Formula, Signature, Term};

type IndexPairs = Vec<(usize, usize)>;

#[derive(Debug, Clone)]
pub struct HarnessConfig {
    pub signature: Signature,
    /// Variables for substituted formulas, quantifiers and terms.
    pub vars: Vec<String>,
    /// Maximum depth of the formulas substituted for metavariables.
    pub depth: usize,
    pub max_size: usize,
    pub equality: EqualityMode,
    pub matrix: Matrix,
    pub schemas: Vec<AxiomSchema>,
    /// Per schema, tuples of atoms are used exhaustively; tuples of deeper
    /// formulas are sampled up to this many.
    pub samples_per_schema: usize,
    /// Rule premises are sampled up to this many pairs per rule.
    pub samples_per_rule: usize,
    pub check_rules: bool,
    pub seed: u64,
}

impl HarnessConfig {
    /// All schemas of the calculus (equality ones only if `signature` has
    /// equality), variables `x`, `y`, rules checked.
    pub fn new(signature: Signature, depth: usize, max_size: usize) -> Self {
        let eq = signature.has_equality();
        HarnessConfig {
            schemas: all_schemas().into_iter().filter(|s| eq || !s.equality).collect(),
            equality: if eq { EqualityMode::Normal } else { EqualityMode::Classical },
            signature,
            vars: vec!["x".into(), "y".into()],
            depth,
            max_size,
            matrix: Matrix::ciore(),
            samples_per_schema: 64,
            samples_per_rule: 4000,
            check_rules: true,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub schema: String,
    #[serde(serialize_with = "as_text")]
    pub formula: Formula,
}

fn as_text<S: serde::Serializer>(f: &Formula, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RuleKind {
    Mp,
    ForallIn,
    ExistsIn,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Schema id or rule name.
    pub source: String,
    pub formula: String,
    /// Premises, for rule violations.
    pub premises: Vec<String>,
    pub size: usize,
    pub structure: String,
    pub assignment: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct HarnessReport {
    pub instances: usize,
    pub structures: usize,
    pub rule_checks: u64,
    pub violations: Vec<Violation>,
}

impl HarnessReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// Distinct schema ids or rule names with violations.
    pub fn violated(&self) -> BTreeSet<&str> {
        self.violations.iter().map(|v| v.source.as_str()).collect()
    }
}

/// Formulas of depth at most `cfg.depth` over the signature and variables.
pub fn rule_pool(cfg: &HarnessConfig) -> Vec<Formula> {
    enumerate_formulas(&cfg.signature, &cfg.vars, cfg.depth).collect()
}

fn metas(p: &Pattern, out: &mut BTreeSet<String>) {
    match p {
        Pattern::Meta(m) => {
            out.insert(m.clone());
        }
        Pattern::Neg(a) | Pattern::Cons(a) | Pattern::Forall(_, a) | Pattern::Exists(_, a) => {
            metas(a, out)
        }
        Pattern::And(a, b) | Pattern::Or(a, b) | Pattern::Imp(a, b) => {
            metas(a, out);
            metas(b, out)
        }
        Pattern::Eq(..) | Pattern::Subst { .. } | Pattern::ReplaceSome { .. } => {}
    }
}

/// Index tuples: all tuples over the first `atoms` entries, then up to
/// `samples` further random tuples over all `len` entries.
fn tuples(k: usize, atoms: usize, len: usize, samples: usize, rng: &mut StdRng) -> Vec<Vec<usize>> {
    let full = len.checked_pow(k as u32).unwrap_or(usize::MAX);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let odometer = |base: usize| {
        let total = base.pow(k as u32);
        (0..total).map(move |mut i| {
            let mut t = vec![0; k];
            for slot in t.iter_mut().rev() {
                *slot = i % base;
                i /= base;
            }
            t
        })
    };
    if full <= atoms.pow(k as u32) + samples {
        return odometer(len).collect();
    }
    for t in odometer(atoms) {
        seen.insert(t.clone());
        out.push(t);
    }
    let mut attempts = 0;
    while out.len() < atoms.pow(k as u32) + samples && attempts < samples * 20 {
        attempts += 1;
        let t: Vec<usize> = (0..k).map(|_| rng.gen_range(0..len)).collect();
        if seen.insert(t.clone()) {
            out.push(t);
        }
    }
    out
}

fn pattern_formula(p: &Pattern, env: &std::collections::BTreeMap<String, Formula>) -> Formula {
    match p {
        Pattern::Meta(m) => env[m].clone(),
        Pattern::Neg(a) => Formula::neg(pattern_formula(a, env)),
        Pattern::Cons(a) => Formula::cons(pattern_formula(a, env)),
        Pattern::And(a, b) => Formula::and(pattern_formula(a, env), pattern_formula(b, env)),
        Pattern::Or(a, b) => Formula::or(pattern_formula(a, env), pattern_formula(b, env)),
        Pattern::Imp(a, b) => Formula::imp(pattern_formula(a, env), pattern_formula(b, env)),
        _ => unreachable!("propositional schemas only"),
    }
}

/// Every `phi[x≀y]`: each subset of the free occurrences of `x` replaced.
pub(crate) fn replace_some_variants(phi: &Formula, x: &str, y: &str) -> Vec<Formula> {
    fn term(t: &Term, x: &str, y: &str) -> Vec<Term> {
        match t {
            Term::Var(v) if v == x => vec![t.clone(), Term::var(y)],
            Term::App(f, args) => product(args.iter().map(|a| term(a, x, y)).collect())
                .into_iter()
                .map(|args| Term::App(f.clone(), args))
                .collect(),
            _ => vec![t.clone()],
        }
    }
    fn product<T: Clone>(choices: Vec<Vec<T>>) -> Vec<Vec<T>> {
        choices.into_iter().fold(vec![vec![]], |acc, opts| {
            acc.into_iter()
                .flat_map(|prefix| {
                    opts.iter().map(move |o| {
                        let mut p = prefix.clone();
                        p.push(o.clone());
                        p
                    })
                })
                .collect()
        })
    }
    fn rec(f: &Formula, x: &str, y: &str) -> Vec<Formula> {
        use Formula::*;
        let pair = |a: &Formula, b: &Formula, mk: fn(Formula, Formula) -> Formula| {
            let bs = rec(b, x, y);
            rec(a, x, y)
                .into_iter()
                .flat_map(|l| bs.iter().map(move |r| mk(l.clone(), r.clone())))
                .collect()
        };
        match f {
            Prop(_) => vec![f.clone()],
            Atom(p, args) => product(args.iter().map(|a| term(a, x, y)).collect())
                .into_iter()
                .map(|args| Atom(p.clone(), args))
                .collect(),
            Neg(a) => rec(a, x, y).into_iter().map(Formula::neg).collect(),
            Cons(a) => rec(a, x, y).into_iter().map(Formula::cons).collect(),
            And(a, b) => pair(a, b, Formula::and),
            Or(a, b) => pair(a, b, Formula::or),
            Imp(a, b) => pair(a, b, Formula::imp),
            Forall(v, _) | Exists(v, _) if v == x => vec![f.clone()],
            Forall(v, a) => rec(a, x, y).into_iter().map(|b| Formula::forall(v, b)).collect(),
            Exists(v, a) => rec(a, x, y).into_iter().map(|b| Formula::exists(v, b)).collect(),
        }
    }
    rec(phi, x, y)
}

/// Instances of every configured schema, each confirmed by the matcher.
pub fn schema_instances(cfg: &HarnessConfig) -> Vec<Instance> {
    let levels = enumerate_formulas(&cfg.signature, &cfg.vars, cfg.depth)
        .levels()
        .to_vec();
    let atoms = levels[0].len();
    let pool: Vec<Formula> = levels.into_iter().flatten().collect();
    let terms = enumerate_terms(&cfg.signature, &cfg.vars, 0);
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for schema in &cfg.schemas {
        let mut push = |f: Formula| {
            debug_assert!(match_schema(&f, schema).is_ok(), "{} {}", schema.id, f);
            out.push(Instance {
                schema: schema.id.to_string(),
                formula: f,
            });
        };
        let phis = || tuples(1, atoms, pool.len(), cfg.samples_per_schema, &mut rng.clone());
        match schema.id {
            "Ax11" | "Ax12" => {
                for t in phis() {
                    let phi = &pool[t[0]];
                    for x in &cfg.vars {
                        for term in &terms {
                            let Ok(inst) = phi.substitute(x, term) else { continue };
                            push(if schema.id == "Ax11" {
                                Formula::imp(inst, Formula::exists(x, phi.clone()))
                            } else {
                                Formula::imp(Formula::forall(x, phi.clone()), inst)
                            });
                        }
                    }
                }
            }
            "Ax13" | "Ax14" | "Ax15" | "Ax16" => {
                for t in phis() {
                    let phi = &pool[t[0]];
                    for x in &cfg.vars {
                        let q = |f: Formula, univ: bool| {
                            if univ {
                                Formula::forall(x, f)
                            } else {
                                Formula::exists(x, f)
                            }
                        };
                        let ex_cons = q(Formula::cons(phi.clone()), false);
                        push(match schema.id {
                            "Ax13" => Formula::imp(Formula::cons(q(phi.clone(), false)), ex_cons),
                            "Ax14" => Formula::imp(Formula::cons(q(phi.clone(), true)), ex_cons),
                            "Ax15" => Formula::imp(ex_cons, Formula::cons(q(phi.clone(), false))),
                            _ => Formula::imp(ex_cons, Formula::cons(q(phi.clone(), true))),
                        });
                    }
                }
            }
            "Eq1" => {
                for x in &cfg.vars {
                    push(Formula::forall(x, Formula::eq(Term::var(x), Term::var(x))));
                }
            }
            "Eq2" => {
                for t in phis() {
                    let phi = &pool[t[0]];
                    for x in &cfg.vars {
                        for y in cfg.vars.iter().filter(|y| *y != x) {
                            if !phi.is_free_for(&Term::var(y), x) {
                                continue;
                            }
                            for psi in replace_some_variants(phi, x, y) {
                                push(Formula::forall(
                                    x,
                                    Formula::forall(
                                        y,
                                        Formula::imp(
                                            Formula::eq(Term::var(x), Term::var(y)),
                                            Formula::imp(phi.clone(), psi),
                                        ),
                                    ),
                                ));
                            }
                        }
                    }
                }
            }
            _ => {
                let mut ms = BTreeSet::new();
                metas(&schema.pattern, &mut ms);
                let ms: Vec<String> = ms.into_iter().collect();
                for t in tuples(ms.len(), atoms, pool.len(), cfg.samples_per_schema, &mut rng) {
                    let env = ms.iter().cloned().zip(t.iter().map(|&i| pool[i].clone())).collect();
                    push(pattern_formula(&schema.pattern, &env));
                }
            }
        }
    }
    out
}

/// Value of every pool formula at every point of the variable grid.
fn value_table(st: &Structure, pool: &[Formula], vars: &[String], m: &Matrix) -> Vec<Vec<Truth>> {
    let grid: Vec<Assignment> = st.frame_assignments(vars).collect();
    pool.iter()
        .map(|f| grid.iter().map(|s| st.eval_unchecked(f, s, m)).collect())
        .collect()
}

fn witness(source: &str, f: &Formula, premises: &[&Formula], st: &Structure, s: &Assignment) -> Violation {
    Violation {
        source: source.to_string(),
        formula: f.to_string(),
        premises: premises.iter().map(|p| p.to_string()).collect(),
        size: st.size(),
        structure: write_structure(st),
        assignment: s.display(st),
    }
}

/// Checks every schema instance for validity, and (optionally) that the
/// three rules send premises valid in a structure to a conclusion valid in
/// it, on every structure with at most `max_size` elements.
pub fn soundness_harness(cfg: &HarnessConfig) -> Result<HarnessReport, SearchError> {
    if cfg.max_size == 0 {
        return Err(SearchError::ZeroSize);
    }
    let mut structures = Vec::new();
    for n in 1..=cfg.max_size {
        structures.extend(enumerate_structures(&cfg.signature, n, cfg.equality)?);
    }
    let m = &cfg.matrix;
    let mut report = HarnessReport {
        structures: structures.len(),
        ..Default::default()
    };
    let instances = schema_instances(cfg);
    report.instances = instances.len();
    if let Some(first) = structures.first() {
        for inst in &instances {
            first.is_valid_in_with(&inst.formula, m)?;
        }
    }
    for inst in &instances {
        let free: Vec<String> = inst.formula.free_vars().into_iter().collect();
        let frame: Vec<&str> = free.iter().map(String::as_str).collect();
        for st in &structures {
            if let Some(vals) = st.refute_frame(&inst.formula, &frame, m) {
                let s = Assignment::from_pairs(frame.iter().copied().zip(vals));
                report.violations.push(witness(&inst.schema, &inst.formula, &[], st, &s));
                break;
            }
        }
    }
    if cfg.check_rules {
        check_rules(cfg, &structures, &mut report);
    }
    Ok(report)
}

fn check_rules(cfg: &HarnessConfig, structures: &[Structure], report: &mut HarnessReport) {
    let m = &cfg.matrix;
    let pool = rule_pool(cfg);
    let mut rng = StdRng::seed_from_u64(cfg.seed ^ 0x5eed);
    let mut pairs = |ok: &dyn Fn(&Formula, &Formula) -> bool| -> Vec<(usize, usize)> {
        let all = pool.len() * pool.len();
        if all <= cfg.samples_per_rule {
            (0..all)
                .map(|i| (i / pool.len(), i % pool.len()))
                .filter(|&(a, b)| ok(&pool[a], &pool[b]))
                .collect()
        } else {
            let mut out = BTreeSet::new();
            let mut attempts = 0;
            while out.len() < cfg.samples_per_rule && attempts < cfg.samples_per_rule * 20 {
                attempts += 1;
                let (a, b) = (rng.gen_range(0..pool.len()), rng.gen_range(0..pool.len()));
                if ok(&pool[a], &pool[b]) {
                    out.insert((a, b));
                }
            }
            out.into_iter().collect()
        }
    };
    let mp_pairs = pairs(&|_, _| true);
    let quant_pairs: Vec<(String, IndexPairs, IndexPairs)> = cfg
        .vars
        .iter()
        .map(|x| {
            (
                x.clone(),
                pairs(&|a, _| !a.has_free(x)),
                pairs(&|_, b| !b.has_free(x)),
            )
        })
        .collect();
    let imp = |a: Truth, b: Truth| m.apply(crate::matrix::Connective::Imp, a, Some(b)).unwrap();
    let frame: Vec<&str> = cfg.vars.iter().map(String::as_str).collect();
    // (rule, premise, conclusion) built once for all structures
    let mut quant_rules: Vec<(&str, usize, usize, Formula)> = Vec::new();
    for (x, forall_pairs, exists_pairs) in &quant_pairs {
        for &(a, b) in forall_pairs {
            let concl = Formula::imp(pool[a].clone(), Formula::forall(x, pool[b].clone()));
            quant_rules.push(("forall-in", a, b, concl));
        }
        for &(a, b) in exists_pairs {
            let concl = Formula::imp(Formula::exists(x, pool[a].clone()), pool[b].clone());
            quant_rules.push(("exists-in", a, b, concl));
        }
    }
    for st in structures {
        let values = value_table(st, &pool, &cfg.vars, m);
        let grid: Vec<Assignment> = st.frame_assignments(&cfg.vars).collect();
        let valid = |i: usize| values[i].iter().all(|v| v.is_designated());
        let imp_valid = |a: usize, b: usize| {
            values[a]
                .iter()
                .zip(&values[b])
                .all(|(&va, &vb)| imp(va, vb).is_designated())
        };
        for &(a, b) in &mp_pairs {
            report.rule_checks += 1;
            if valid(a) && imp_valid(a, b) && !valid(b) {
                let bad = values[b].iter().position(|v| !v.is_designated()).unwrap();
                let prem = Formula::imp(pool[a].clone(), pool[b].clone());
                report.violations.push(witness("mp", &pool[b], &[&pool[a], &prem], st, &grid[bad]));
            }
        }
        for (rule, a, b, concl) in &quant_rules {
            report.rule_checks += 1;
            if imp_valid(*a, *b) {
                if let Some(vals) = st.refute_frame(concl, &frame, m) {
                    let s = Assignment::from_pairs(frame.iter().copied().zip(vals));
                    let prem = Formula::imp(pool[*a].clone(), pool[*b].clone());
                    report.violations.push(witness(rule, concl, &[&prem], st, &s));
                }
            }
        }
    }
}
