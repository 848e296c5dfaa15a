//! Exhaustive property sweeps over a finite ring.
//!
//! Each checker enumerates instance tuples in canonical index order, splits
//! the sweep by its leading coordinate, and evaluates every tuple through a
//! single `eval` function. Per-lead tallies are merged in lead order, so a
//! report is identical whatever the thread count. Instances whose hypotheses
//! do not hold are counted as vacuous, never as passes.

mod context;
mod existence;
mod formulas;
pub mod miner;
mod outer;
mod quadruple;

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::inverse::EngineError;
use crate::ring::RingHandle;

pub use context::Context;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("ring order {order} exceeds the sweep budget of {max}")]
    BudgetExceeded { order: u32, max: u32 },
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("counterexample does not match the inputs of `{0}`")]
    MalformedCounterexample(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

/// Sweep configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Worker threads; 0 means available parallelism.
    pub threads: usize,
    /// Largest ring order `run_all` accepts.
    pub max_order: u32,
    /// Cap on inner inverses tried per element when forming `e = bb⁻`, `f = c⁻c`.
    pub inner_choice_cap: usize,
    /// Cap on instances evaluated per checker.
    pub instance_budget: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            threads: 0,
            max_order: 128,
            inner_choice_cap: 256,
            instance_budget: 500_000_000,
        }
    }
}

/// Theorem ids in run order, with a one-line statement of what is checked.
pub const THEOREMS: &[(&str, &str)] = &[
    (
        "bc-routes",
        "definition scan unique; ideal characterization and Rb=Rt, cR=tR agree",
    ),
    (
        "prop-3.3-regular",
        "a (b,c)-invertible => b, c, cab regular",
    ),
    (
        "lem-3.1-outer",
        "yay=y => r(a)∩yR=0, l(a)∩Ry=0, Ray=Ry, yaR=yR",
    ),
    (
        "lem-3.2-regular",
        "aR⊆rl(a), Ra⊆lr(a), equal for regular a; Ra=Rb transfers regularity",
    ),
    ("thm-3.4-forward", "(i)=>(ii)=>(iii) for every triple"),
    ("thm-3.4-equiv", "t=cab regular => (i)..(v) equivalent"),
    ("thm-3.7-equiv", "b, c regular => (i)..(iv) equivalent"),
    (
        "coincidence-t-regular",
        "t regular => (b,c), hybrid, annihilator inverses coincide",
    ),
    (
        "coincidence-bc-regular",
        "b, c regular => (b,c), hybrid, annihilator inverses coincide",
    ),
    (
        "lem-3.13-idempotent",
        "e ∈ eaeR∩Reae <=> eae+1-e unit <=> ae+1-e unit",
    ),
    (
        "transfer-formulas",
        "d‖ existence, transfer formulas and inverse identities",
    ),
    (
        "image-kernel-corollary",
        "d× <=> 1-p+a×dp unit <=> q+(1-q)da× unit",
    ),
    (
        "specializations",
        "group, Drazin and Moore-Penrose inverses as (b,c)-inverses",
    ),
    ("lem-4.1-identities", "identities between a‖ and d‖"),
    ("thm-4.2-equal-idempotents", "aa‖ = dd‖ characterizations"),
    ("thm-4.3-equal-idempotents", "a‖a = d‖d characterizations"),
    ("thm-4.4-reverse-order", "(ad)‖ = d‖a‖ characterizations"),
    (
        "thm-4.5-mixed-idempotents",
        "a‖a = dd‖ characterizations and reverse order",
    ),
];

pub fn theorem_ids() -> impl Iterator<Item = &'static str> {
    THEOREMS.iter().map(|(id, _)| *id)
}

pub fn is_known_theorem(id: &str) -> bool {
    theorem_ids().any(|known| known == id)
}

fn statement(id: &str) -> &'static str {
    THEOREMS
        .iter()
        .find(|(known, _)| *known == id)
        .map(|(_, s)| *s)
        .unwrap_or("")
}

// ---------------------------------------------------------------------------
// instances and tallies
// ---------------------------------------------------------------------------

const MAX_INPUTS: usize = 6;

/// A named instance tuple.
#[derive(Clone, Copy)]
pub(crate) struct Inputs {
    names: &'static [&'static str],
    values: [u32; MAX_INPUTS],
}

impl Inputs {
    pub(crate) fn new(names: &'static [&'static str], values: &[u32]) -> Inputs {
        debug_assert_eq!(names.len(), values.len());
        let mut v = [0; MAX_INPUTS];
        v[..values.len()].copy_from_slice(values);
        Inputs { names, values: v }
    }

    pub(crate) fn get(&self, name: &str) -> u32 {
        let pos = self
            .names
            .iter()
            .position(|n| *n == name)
            .unwrap_or_else(|| panic!("instance has no input `{name}`"));
        self.values[pos]
    }

    pub(crate) fn has(&self, name: &str) -> bool {
        self.names.contains(&name)
    }
}

impl fmt::Debug for Inputs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.names.iter().zip(self.values.iter()))
            .finish()
    }
}

/// Outcome of one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// Names the clause that failed.
    Fail(String),
    /// Hypotheses unmet.
    Vacuous,
}

pub(crate) fn check(ok: bool, clause: impl FnOnce() -> String) -> Result<(), Verdict> {
    if ok {
        Ok(())
    } else {
        Err(Verdict::Fail(clause()))
    }
}

/// Asserts that boolean clauses all carry the same truth value.
pub(crate) fn all_equal(clauses: &[(&str, bool)]) -> Result<(), Verdict> {
    let Some(&(first_name, first)) = clauses.first() else {
        return Ok(());
    };
    match clauses.iter().find(|(_, v)| *v != first) {
        None => Ok(()),
        Some((name, v)) => Err(Verdict::Fail(format!(
            "{first_name} is {first} but {name} is {v}"
        ))),
    }
}

pub(crate) fn verdict(result: Result<(), Verdict>) -> Verdict {
    match result {
        Ok(()) => Verdict::Pass,
        Err(v) => v,
    }
}

/// First violation found by a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub inputs: Vec<(String, u32)>,
    pub clause: String,
}

impl Serialize for Counterexample {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct InputMap<'a>(&'a [(String, u32)]);
        impl Serialize for InputMap<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.collect_map(self.0.iter().map(|(k, v)| (k, v)))
            }
        }
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("inputs", &InputMap(&self.inputs))?;
        map.serialize_entry("clause", &self.clause)?;
        map.end()
    }
}

#[derive(Debug, Default, Clone)]
pub(crate) struct Tally {
    passes: u64,
    failures: u64,
    vacuous: u64,
    first: Option<Counterexample>,
    limit: u64,
    truncated: bool,
}

impl Tally {
    fn with_limit(limit: u64) -> Tally {
        Tally {
            limit,
            ..Tally::default()
        }
    }

    pub(crate) fn record(&mut self, inputs: &Inputs, verdict: Verdict) {
        match verdict {
            Verdict::Pass => self.passes += 1,
            Verdict::Vacuous => self.vacuous += 1,
            Verdict::Fail(clause) => {
                self.failures += 1;
                if self.first.is_none() {
                    self.first = Some(Counterexample {
                        inputs: inputs
                            .names
                            .iter()
                            .zip(inputs.values)
                            .map(|(n, v)| (n.to_string(), v))
                            .collect(),
                        clause,
                    });
                }
            }
        }
    }

    pub(crate) fn vacuous(&mut self, count: u64) {
        self.vacuous += count;
    }

    /// True once the per-lead budget is spent; sweeps stop enumerating.
    pub(crate) fn is_full(&mut self) -> bool {
        if self.passes + self.failures + self.vacuous >= self.limit {
            self.truncated = true;
        }
        self.truncated
    }

    pub(crate) fn mark_truncated(&mut self) {
        self.truncated = true;
    }

    fn merge(&mut self, other: Tally) {
        self.passes += other.passes;
        self.failures += other.failures;
        self.vacuous += other.vacuous;
        self.truncated |= other.truncated;
        if self.first.is_none() {
            self.first = other.first;
        }
    }
}

/// Verdict of one theorem over one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub theorem: &'static str,
    pub statement: &'static str,
    pub ring: String,
    /// Instances whose hypotheses held; equals `passes + failures`.
    pub instances: u64,
    pub passes: u64,
    pub failures: u64,
    pub vacuous: u64,
    /// False when the sweep stopped at a budget or choice cap.
    pub complete: bool,
    pub counterexample: Option<Counterexample>,
    pub wall_time: Duration,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Everything except the wall time, which would break byte-identical output.
impl Serialize for PropertyReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(9))?;
        map.serialize_entry("theorem", self.theorem)?;
        map.serialize_entry("ring", &self.ring)?;
        map.serialize_entry("status", if self.passed() { "pass" } else { "fail" })?;
        map.serialize_entry("instances", &self.instances)?;
        map.serialize_entry("passes", &self.passes)?;
        map.serialize_entry("failures", &self.failures)?;
        map.serialize_entry("vacuous", &self.vacuous)?;
        map.serialize_entry("complete", &self.complete)?;
        map.serialize_entry("counterexample", &self.counterexample)?;
        map.end()
    }
}

// ---------------------------------------------------------------------------
// checkers
// ---------------------------------------------------------------------------

pub(crate) trait Checker: Sync {
    fn id(&self) -> &'static str;

    /// The input shapes this checker records, for replay.
    fn shapes(&self) -> &'static [&'static [&'static str]];

    /// Builds the lazily computed tables this checker reads.
    fn prepare(&self, ctx: &Context) {
        ctx.bc_table();
    }

    /// Sweeps every instance whose leading input is `lead`.
    fn sweep(&self, ctx: &Context, lead: u32, tally: &mut Tally);

    /// Evaluates one instance from scratch-friendly inputs.
    fn eval(&self, ctx: &Context, inputs: &Inputs) -> Verdict;
}

fn checker(id: &str) -> Option<Box<dyn Checker>> {
    Some(match id {
        "bc-routes" => Box::new(existence::BcRoutes),
        "prop-3.3-regular" => Box::new(existence::RegularityOfBc),
        "thm-3.4-forward" => Box::new(existence::ForwardImplications),
        "thm-3.4-equiv" => Box::new(existence::Equivalences::TRegular),
        "thm-3.7-equiv" => Box::new(existence::Equivalences::BcRegular),
        "coincidence-t-regular" => Box::new(existence::Coincidence::TRegular),
        "coincidence-bc-regular" => Box::new(existence::Coincidence::BcRegular),
        "lem-3.1-outer" => Box::new(outer::OuterInverseFacts),
        "lem-3.2-regular" => Box::new(outer::RegularityTransfer),
        "specializations" => Box::new(outer::Specializations),
        "lem-3.13-idempotent" => Box::new(formulas::IdempotentUnits),
        "transfer-formulas" => Box::new(formulas::Transfer),
        "image-kernel-corollary" => Box::new(formulas::ImageKernel),
        "lem-4.1-identities" => Box::new(quadruple::Identities),
        "thm-4.2-equal-idempotents" => Box::new(quadruple::EqualIdempotents::Left),
        "thm-4.3-equal-idempotents" => Box::new(quadruple::EqualIdempotents::Right),
        "thm-4.4-reverse-order" => Box::new(quadruple::ReverseOrder),
        "thm-4.5-mixed-idempotents" => Box::new(quadruple::MixedIdempotents),
        _ => return None,
    })
}

fn build_pool(threads: usize) -> Result<rayon::ThreadPool, HarnessError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))
}

fn run_checker(ctx: &Context, checker: &dyn Checker, config: &RunConfig) -> PropertyReport {
    let started = Instant::now();
    let n = ctx.order();
    let per_lead = (config.instance_budget / u64::from(n)).max(1);
    checker.prepare(ctx);
    let tallies: Vec<Tally> = (0..n)
        .into_par_iter()
        .map(|lead| {
            let mut tally = Tally::with_limit(per_lead);
            checker.sweep(ctx, lead, &mut tally);
            tally
        })
        .collect();
    let mut total = Tally::default();
    for t in tallies {
        total.merge(t);
    }
    PropertyReport {
        theorem: checker.id(),
        statement: statement(checker.id()),
        ring: ctx.ring().spec().to_string(),
        instances: total.passes + total.failures,
        passes: total.passes,
        failures: total.failures,
        vacuous: total.vacuous,
        complete: !total.truncated,
        counterexample: total.first,
        wall_time: started.elapsed(),
    }
}

/// Runs the named checkers in the given order.
pub fn run_selected(
    ring: &RingHandle,
    ids: &[&str],
    config: &RunConfig,
) -> Result<Vec<PropertyReport>, HarnessError> {
    let checkers = ids
        .iter()
        .map(|id| checker(id).ok_or_else(|| HarnessError::UnknownTheorem(id.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if ring.order() > config.max_order {
        return Err(HarnessError::BudgetExceeded {
            order: ring.order(),
            max: config.max_order,
        });
    }
    let pool = build_pool(config.threads)?;
    pool.install(|| {
        let ctx = Context::new(ring, config.inner_choice_cap);
        Ok(checkers
            .iter()
            .map(|c| run_checker(&ctx, c.as_ref(), config))
            .collect())
    })
}

/// Every checker, in [`THEOREMS`] order.
pub fn run_all(ring: &RingHandle, config: &RunConfig) -> Result<Vec<PropertyReport>, HarnessError> {
    let ids: Vec<&str> = theorem_ids().collect();
    run_selected(ring, &ids, config)
}

/// Re-evaluates a recorded counterexample on a fresh context and returns
/// the verdict it produces now.
pub fn replay(
    ring: &RingHandle,
    theorem: &str,
    counterexample: &Counterexample,
    config: &RunConfig,
) -> Result<Verdict, HarnessError> {
    let checker = checker(theorem).ok_or_else(|| HarnessError::UnknownTheorem(theorem.into()))?;
    let names: Vec<&str> = counterexample
        .inputs
        .iter()
        .map(|(n, _)| n.as_str())
        .collect();
    let shape = checker
        .shapes()
        .iter()
        .find(|shape| **shape == names.as_slice())
        .ok_or_else(|| HarnessError::MalformedCounterexample(theorem.into()))?;
    let values: Vec<u32> = counterexample.inputs.iter().map(|(_, v)| *v).collect();
    if values.iter().any(|&v| v >= ring.order()) {
        return Err(HarnessError::MalformedCounterexample(theorem.into()));
    }
    let ctx = Context::new(ring, config.inner_choice_cap);
    checker.prepare(&ctx);
    Ok(checker.eval(&ctx, &Inputs::new(shape, &values)))
}

/// Evaluates a single instance of a theorem, e.g. to inspect a worked example.
pub fn evaluate(
    ring: &RingHandle,
    theorem: &str,
    inputs: &[(&str, u32)],
    config: &RunConfig,
) -> Result<Verdict, HarnessError> {
    let counterexample = Counterexample {
        inputs: inputs.iter().map(|(n, v)| (n.to_string(), *v)).collect(),
        clause: String::new(),
    };
    replay(ring, theorem, &counterexample, config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_theorem_has_a_checker() {
        for id in theorem_ids() {
            let c = checker(id).unwrap_or_else(|| panic!("no checker for {id}"));
            assert_eq!(c.id(), id);
        }
        assert!(checker("thm-9.9").is_none());
    }

    #[test]
    fn clause_equality_names_the_offender() {
        assert_eq!(all_equal(&[("(i)", true), ("(ii)", true)]), Ok(()));
        assert_eq!(
            all_equal(&[("(i)", true), ("(ii)", true), ("(iii)", false)]),
            Err(Verdict::Fail("(i) is true but (iii) is false".into()))
        );
    }

    #[test]
    fn tally_keeps_the_first_counterexample() {
        let mut t = Tally::with_limit(10);
        let names: &'static [&'static str] = &["a"];
        t.record(&Inputs::new(names, &[1]), Verdict::Pass);
        t.record(&Inputs::new(names, &[2]), Verdict::Fail("x".into()));
        t.record(&Inputs::new(names, &[3]), Verdict::Fail("y".into()));
        t.record(&Inputs::new(names, &[4]), Verdict::Vacuous);
        assert_eq!((t.passes, t.failures, t.vacuous), (1, 2, 1));
        let first = t.first.unwrap();
        assert_eq!(first.inputs, vec![("a".to_string(), 2)]);
        assert_eq!(first.clause, "x");
    }

    #[test]
    fn oversized_rings_are_refused() {
        let ring = RingHandle::parse("zn:200").unwrap();
        let config = RunConfig {
            max_order: 100,
            ..RunConfig::default()
        };
        assert_eq!(
            run_all(&ring, &config).unwrap_err(),
            HarnessError::BudgetExceeded {
                order: 200,
                max: 100
            }
        );
    }
}
