//! Countermodel search over all finite structures up to a size bound.
//!
//! Structures are visited size by size in the order of
//! [`StructureSpace::decode`]; the reported countermodel is always the one
//! with the least index, whatever the number of worker threads.

mod harness;

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::matrix::Matrix;
use crate::structures::{Assignment, EqualityMode, Structure, StructureError, StructureSpace};
use crate::syntax::{Formula, Signature};

pub use harness::{
    rule_pool, schema_instances, soundness_harness, HarnessConfig, HarnessReport, Instance,
    RuleKind, Violation,
};

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of structures examined over all sizes.
    pub max_structures: Option<u64>,
    pub time_budget: Option<Duration>,
}

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub signature: Signature,
    pub max_size: usize,
    /// Formulas that must be valid in the countermodel.
    pub gamma: Vec<Formula>,
    /// Formula the countermodel must refute.
    pub refute: Formula,
    pub equality: EqualityMode,
    pub limits: Limits,
    pub matrix: Matrix,
}

impl SearchSpec {
    pub fn new(signature: Signature, refute: Formula, max_size: usize) -> Self {
        SearchSpec {
            signature,
            max_size,
            gamma: Vec::new(),
            refute,
            equality: EqualityMode::Classical,
            limits: Limits::default(),
            matrix: Matrix::ciore(),
        }
    }

    pub fn gamma(mut self, gamma: Vec<Formula>) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn equality(mut self, mode: EqualityMode) -> Self {
        self.equality = mode;
        self
    }

    pub fn limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn matrix(mut self, m: Matrix) -> Self {
        self.matrix = m;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    pub size: usize,
    /// Position in the enumeration of structures of this size.
    pub index: u128,
    pub structure: Structure,
    /// Least assignment refuting the target formula.
    pub assignment: Assignment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Box<Countermodel>),
    /// No countermodel with at most `max_size` elements.
    Exhausted { max_size: usize, checked: u64 },
    LimitExceeded { size: usize, checked: u64, reason: String },
}

impl SearchOutcome {
    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Progress record emitted after each block of structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Progress {
    pub size: usize,
    /// Next structure index to be examined at this size.
    pub index: u128,
    pub checked: u64,
    pub elapsed_ms: u128,
}

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error("maximum domain size must be at least 1")]
    ZeroSize,
    #[error("{0} structures of size {1} is too many to enumerate")]
    TooMany(u128, usize),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("countermodel at size {size}, index {index} failed its re-check")]
    Recheck { size: usize, index: u128 },
}

/// Is `st` a countermodel: every formula of `gamma` valid, `target` refuted?
fn refutes(st: &Structure, gamma: &[Formula], target: &Formula, m: &Matrix) -> bool {
    st.refute_unchecked(target, m).is_some()
        && gamma.iter().all(|g| st.refute_unchecked(g, m).is_none())
}

pub fn find_countermodel(spec: &SearchSpec) -> Result<SearchOutcome, SearchError> {
    find_countermodel_with_progress(spec, |_| {})
}

pub fn find_countermodel_with_progress(
    spec: &SearchSpec,
    mut progress: impl FnMut(Progress),
) -> Result<SearchOutcome, SearchError> {
    if spec.max_size == 0 {
        return Err(SearchError::ZeroSize);
    }
    // signature and matrix errors surface here, before the hot loop
    let probe = Structure::with_size(spec.signature.clone(), 1)?;
    for f in spec.gamma.iter().chain([&spec.refute]) {
        probe.is_valid_in_with(f, &spec.matrix)?;
    }
    let start = Instant::now();
    let mut checked: u64 = 0;
    for size in 1..=spec.max_size {
        let space = StructureSpace::new(&spec.signature, size, spec.equality)?;
        let count = space
            .count()
            .and_then(|c| u64::try_from(c).ok())
            .ok_or(SearchError::TooMany(space.count().unwrap_or(u128::MAX), size))?;
        let mut lo = 0u64;
        while lo < count {
            if let Some(max) = spec.limits.max_structures {
                if checked >= max {
                    return Ok(SearchOutcome::LimitExceeded {
                        size,
                        checked,
                        reason: format!("structure limit {max} reached"),
                    });
                }
            }
            if let Some(budget) = spec.limits.time_budget {
                if start.elapsed() > budget {
                    return Ok(SearchOutcome::LimitExceeded {
                        size,
                        checked,
                        reason: format!("time budget of {budget:?} spent"),
                    });
                }
            }
            let mut hi = (lo + CHUNK).min(count);
            if let Some(max) = spec.limits.max_structures {
                hi = hi.min(lo + (max - checked));
            }
            let hit = (lo..hi).into_par_iter().find_first(|&i| {
                refutes(&space.decode(i as u128), &spec.gamma, &spec.refute, &spec.matrix)
            });
            if let Some(i) = hit {
                let structure = space.decode(i as u128);
                let index = i as u128;
                // independent re-check through the validating entry points
                let mut ok = true;
                for g in &spec.gamma {
                    ok &= structure.is_valid_in_with(g, &spec.matrix)?.is_none();
                }
                let assignment = structure.is_valid_in_with(&spec.refute, &spec.matrix)?;
                let Some(assignment) = assignment.filter(|_| ok) else {
                    return Err(SearchError::Recheck { size, index });
                };
                return Ok(SearchOutcome::Found(Box::new(Countermodel {
                    size,
                    index,
                    structure,
                    assignment,
                })));
            }
            checked += hi - lo;
            lo = hi;
            progress(Progress {
                size,
                index: lo as u128,
                checked,
                elapsed_ms: start.elapsed().as_millis(),
            });
        }
    }
    Ok(SearchOutcome::Exhausted {
        max_size: spec.max_size,
        checked,
    })
}

/// One-sided answer to "does `gamma` entail `phi`?".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Consequence {
    Refuted(Box<Countermodel>),
    NoCountermodelUpTo(usize),
}

pub fn check_consequence_bounded(
    sig: &Signature,
    gamma: &[Formula],
    phi: &Formula,
    n: usize,
) -> Result<Consequence, SearchError> {
    let spec = SearchSpec::new(sig.clone(), phi.clone(), n).gamma(gamma.to_vec());
    match find_countermodel(&spec)? {
        SearchOutcome::Found(c) => Ok(Consequence::Refuted(c)),
        SearchOutcome::Exhausted { max_size, .. } => Ok(Consequence::NoCountermodelUpTo(max_size)),
        SearchOutcome::LimitExceeded { .. } => unreachable!("no limits set"),
    }
}
