//! Counterexample search for the implications that fail without the
//! regularity hypotheses.
//!
//! The sweep decides existence of `a‖(b,c)` through `Rb = Rt`, `cR = tR`
//! (cheap with cached ideal classes); every witness is then confirmed by
//! [`replay_witness`], which uses only the public engine operations and the
//! definition scan. A sweep that finds nothing is inconclusive: it says
//! nothing about rings outside the family.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{Context, HarnessError};
use crate::ideal::{left_annihilator_of, left_ideal, right_annihilator_of, right_ideal};
use crate::inverse::{
    annihilator_bc_inverse, bc_inverse, is_outer_inverse, is_regular, EngineError,
};
use crate::ring::{RingHandle, RingOptions, RingSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinerTarget {
    /// `l(t) = l(c)` and `r(t) = r(b)` but `a` is not (b,c)-invertible.
    VNotI,
    /// As [`MinerTarget::VNotI`] with `b` and `c` regular.
    VNotIBcRegular,
    /// `r(t) = r(b)`, `tR = cR` but not `l(t) = l(c)`, `Rt = Rb`; `t` not regular.
    IiiNotIv,
    /// An annihilator (b,c)-inverse exists but the (b,c)-inverse does not.
    AnnihilatorNotBc,
}

impl MinerTarget {
    pub const ALL: [MinerTarget; 4] = [
        MinerTarget::VNotI,
        MinerTarget::VNotIBcRegular,
        MinerTarget::IiiNotIv,
        MinerTarget::AnnihilatorNotBc,
    ];

    pub fn id(self) -> &'static str {
        match self {
            MinerTarget::VNotI => "v-not-i",
            MinerTarget::VNotIBcRegular => "v-not-i-bc-regular",
            MinerTarget::IiiNotIv => "iii-not-iv",
            MinerTarget::AnnihilatorNotBc => "annihilator-not-bc",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            MinerTarget::VNotI => "l(t)=l(c) and r(t)=r(b), yet a is not (b,c)-invertible",
            MinerTarget::VNotIBcRegular => {
                "b, c regular, l(t)=l(c) and r(t)=r(b), yet a is not (b,c)-invertible"
            }
            MinerTarget::IiiNotIv => {
                "t not regular, r(t)=r(b) and tR=cR, but not l(t)=l(c) and Rt=Rb"
            }
            MinerTarget::AnnihilatorNotBc => {
                "annihilator (b,c)-inverse exists, (b,c)-inverse does not"
            }
        }
    }
}

impl fmt::Display for MinerTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for MinerTarget {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MinerTarget::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| HarnessError::InvalidQuery(format!("unknown target `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `Z_n`.
    Zn,
    /// `M_2(Z_n)`.
    Mat2,
}

impl Family {
    pub fn id(self) -> &'static str {
        match self {
            Family::Zn => "zn",
            Family::Mat2 => "mat2",
        }
    }

    pub fn spec(self, n: u64) -> RingSpec {
        match self {
            Family::Zn => RingSpec::residue(n),
            Family::Mat2 => RingSpec::matrix(2, RingSpec::residue(n)),
        }
    }
}

impl FromStr for Family {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zn" => Ok(Family::Zn),
            "mat2" => Ok(Family::Mat2),
            _ => Err(HarnessError::InvalidQuery(format!(
                "unknown family `{s}` (expected zn or mat2)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinerQuery {
    pub target: MinerTarget,
    pub family: Family,
    /// Moduli `2..=max_n` are swept in order.
    pub max_n: u64,
    /// Triples evaluated in total, across all rings.
    pub budget: u64,
    /// Stop after this many witnesses.
    pub max_witnesses: usize,
    pub ring_options: RingOptions,
}

impl MinerQuery {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.budget == 0 {
            return Err(HarnessError::InvalidQuery("budget must be positive".into()));
        }
        if self.max_n < 2 {
            return Err(HarnessError::InvalidQuery(
                "max-n must be at least 2".into(),
            ));
        }
        if self.max_witnesses == 0 {
            return Err(HarnessError::InvalidQuery(
                "max-witnesses must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Found,
    NoneFound,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinerWitness {
    pub ring: String,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub t: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct MinerReport {
    pub target: MinerTarget,
    pub family: Family,
    pub max_n: u64,
    pub outcome: Outcome,
    pub rings: Vec<String>,
    pub triples: u64,
    pub witnesses: Vec<MinerWitness>,
}

fn candidate(target: MinerTarget, ctx: &Context, a: u32, b: u32, c: u32) -> bool {
    let t = ctx.ring().mul3_ix(c, a, b);
    let invertible = ctx.same_left(b, t) && ctx.same_right(c, t);
    let annihilators = ctx.same_lann(t, c) && ctx.same_rann(t, b);
    match target {
        MinerTarget::VNotI => annihilators && !invertible,
        MinerTarget::VNotIBcRegular => {
            annihilators && !invertible && ctx.is_regular(b) && ctx.is_regular(c)
        }
        MinerTarget::IiiNotIv => {
            !ctx.is_regular(t)
                && ctx.same_rann(t, b)
                && ctx.same_right(t, c)
                && !(ctx.same_lann(t, c) && ctx.same_left(t, b))
        }
        MinerTarget::AnnihilatorNotBc => {
            !invertible
                && (0..ctx.order()).any(|y| {
                    ctx.same_lann(y, b) && ctx.same_rann(y, c) && is_outer_inverse(ctx.ring(), a, y)
                })
        }
    }
}

/// Re-derives a witness from scratch through the public engine operations.
pub fn replay_witness(
    target: MinerTarget,
    witness: &MinerWitness,
    options: &RingOptions,
) -> Result<bool, HarnessError> {
    let spec: RingSpec = witness.ring.parse().map_err(EngineError::from)?;
    let ring = RingHandle::build(&spec, options).map_err(EngineError::from)?;
    let el = |i: u32| ring.element(i).map_err(|e| HarnessError::Engine(e.into()));
    let (a, b, c) = (el(witness.a)?, el(witness.b)?, el(witness.c)?);
    let t = ring
        .mul(ring.mul(c, a).map_err(EngineError::from)?, b)
        .map_err(EngineError::from)?;
    if t.index() != witness.t {
        return Ok(false);
    }
    let ideal = |r: Result<crate::Subset, crate::RingError>| r.map_err(EngineError::from);
    let not_bc = !bc_inverse(&ring, a, b, c)?.is_found();
    let annihilators = ideal(left_annihilator_of(&ring, t))?
        == ideal(left_annihilator_of(&ring, c))?
        && ideal(right_annihilator_of(&ring, t))? == ideal(right_annihilator_of(&ring, b))?;
    Ok(match target {
        MinerTarget::VNotI => annihilators && not_bc,
        MinerTarget::VNotIBcRegular => {
            annihilators && not_bc && is_regular(&ring, b)? && is_regular(&ring, c)?
        }
        MinerTarget::IiiNotIv => {
            let iii = ideal(right_annihilator_of(&ring, t))?
                == ideal(right_annihilator_of(&ring, b))?
                && ideal(right_ideal(&ring, t))? == ideal(right_ideal(&ring, c))?;
            let iv = ideal(left_annihilator_of(&ring, t))? == ideal(left_annihilator_of(&ring, c))?
                && ideal(left_ideal(&ring, t))? == ideal(left_ideal(&ring, b))?;
            !is_regular(&ring, t)? && iii && !iv
        }
        MinerTarget::AnnihilatorNotBc => {
            not_bc && annihilator_bc_inverse(&ring, a, b, c)?.is_found()
        }
    })
}

/// Sweeps the family in modulus order and canonical triple order.
pub fn mine_gap(query: &MinerQuery) -> Result<MinerReport, HarnessError> {
    query.validate()?;
    let mut report = MinerReport {
        target: query.target,
        family: query.family,
        max_n: query.max_n,
        outcome: Outcome::NoneFound,
        rings: Vec::new(),
        triples: 0,
        witnesses: Vec::new(),
    };
    for n in 2..=query.max_n {
        let spec = query.family.spec(n);
        let ring = RingHandle::build(&spec, &query.ring_options).map_err(EngineError::from)?;
        let order = u64::from(ring.order());
        let per_lead = order * order;
        let remaining = query.budget - report.triples;
        let leads = (remaining / per_lead).min(order) as u32;
        if leads == 0 {
            report.outcome = Outcome::BudgetExhausted;
            break;
        }
        let ctx = Context::new(&ring, 1);
        let found: Vec<Vec<MinerWitness>> = (0..leads)
            .into_par_iter()
            .map(|a| {
                let mut hits = Vec::new();
                for b in 0..ring.order() {
                    for c in 0..ring.order() {
                        if hits.len() < query.max_witnesses
                            && candidate(query.target, &ctx, a, b, c)
                        {
                            hits.push(MinerWitness {
                                ring: spec.to_string(),
                                a,
                                b,
                                c,
                                t: ring.mul3_ix(c, a, b),
                            });
                        }
                    }
                }
                hits
            })
            .collect();
        report.rings.push(spec.to_string());
        report.triples += u64::from(leads) * per_lead;
        for witness in found.into_iter().flatten() {
            if report.witnesses.len() == query.max_witnesses {
                break;
            }
            if !replay_witness(query.target, &witness, &query.ring_options)? {
                return Err(HarnessError::Engine(EngineError::RouteDisagreement(
                    format!("miner candidate {witness:?} does not replay"),
                )));
            }
            report.witnesses.push(witness);
        }
        if report.witnesses.len() == query.max_witnesses {
            break;
        }
        if u64::from(leads) < order {
            report.outcome = Outcome::BudgetExhausted;
            break;
        }
    }
    if !report.witnesses.is_empty() {
        report.outcome = Outcome::Found;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn query(target: MinerTarget, family: Family, max_n: u64) -> MinerQuery {
        MinerQuery {
            target,
            family,
            max_n,
            budget: 10_000_000,
            max_witnesses: 5,
            ring_options: RingOptions::default(),
        }
    }

    #[test]
    fn fields_have_no_gaps() {
        for target in MinerTarget::ALL {
            let report = mine_gap(&query(target, Family::Zn, 2)).unwrap();
            assert_eq!(report.outcome, Outcome::NoneFound, "{target}");
            assert_eq!(report.triples, 8);
        }
    }

    #[test]
    fn zero_budget_is_rejected() {
        let mut q = query(MinerTarget::VNotI, Family::Zn, 4);
        q.budget = 0;
        assert!(mine_gap(&q).is_err());
    }

    #[test]
    fn small_budget_reports_exhaustion() {
        let mut q = query(MinerTarget::VNotI, Family::Zn, 12);
        q.budget = 20;
        let report = mine_gap(&q).unwrap();
        assert_eq!(report.outcome, Outcome::BudgetExhausted);
        // all of Z_2, then one lead of Z_3
        assert_eq!(report.triples, 8 + 9);
    }

    #[test]
    fn witnesses_replay() {
        for target in MinerTarget::ALL {
            let report = mine_gap(&query(target, Family::Zn, 12)).unwrap();
            for w in &report.witnesses {
                assert!(replay_witness(target, w, &RingOptions::default()).unwrap());
            }
        }
    }

    #[test]
    fn targets_round_trip() {
        for target in MinerTarget::ALL {
            assert_eq!(target.id().parse::<MinerTarget>().unwrap(), target);
        }
        assert!("v-implies-i".parse::<MinerTarget>().is_err());
    }
}
