//! External JSON report schemas.
//!
//! Reports are the machine contract of the CLI: identical inputs (including
//! the seed) must produce byte-identical JSON. Wall-clock timing therefore
//! serializes as `null` unless the caller explicitly opts in.

use serde::Serialize;

use crate::preservers::StaudtVerification;
use crate::projline::IPrimeOutcome;
use crate::ring::{AxiomReport, ConditionOutcome, Verdict};

fn verdict_to_json(v: Verdict) -> Option<bool> {
    match v {
        Verdict::Holds => Some(true),
        Verdict::Fails => Some(false),
        Verdict::Unresolved => None,
    }
}

/// Report for a single ring: axioms, units, and the two hypotheses.
#[derive(Debug, Serialize)]
pub struct RingReport {
    pub ring: String,
    pub size: usize,
    pub characteristic: usize,
    pub unit_count: usize,
    pub axioms_pass: bool,
    pub axioms: AxiomReport,
    pub conditions: ConditionsReport,
}

#[derive(Debug, Serialize)]
pub struct ConditionsReport {
    /// true / false / null (null = unresolved within caps).
    pub five_units: Option<bool>,
    pub two_unit: bool,
    /// Omitted entirely when the line-level check was not run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i_prime: Option<Option<bool>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub five_units_witness: Option<Vec<u16>>,
}

impl ConditionsReport {
    pub fn from_parts(five: &ConditionOutcome, two: bool, ip: Option<&IPrimeOutcome>) -> Self {
        ConditionsReport {
            five_units: verdict_to_json(five.verdict),
            two_unit: two,
            i_prime: ip.map(|o| verdict_to_json(o.verdict)),
            five_units_witness: five.witness.clone(),
        }
    }
}

/// The verification pipeline report.
#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_ring: Option<String>,
    pub conditions: ConditionsReport,
    pub counts: CountsReport,
    pub matches: Vec<MatchEntry>,
    pub unmatched: Vec<u32>,
    /// Null unless timing emission was requested.
    pub timing_ms: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct CountsReport {
    pub points: usize,
    pub harmonic_quads: usize,
    pub preservers: usize,
}

#[derive(Debug, Serialize)]
pub struct MatchEntry {
    pub preserver_id: u32,
    pub component_id: u32,
    pub alpha_id: u32,
    /// Basis rows [[a₀₀, a₀₁], [a₁₀, a₁₁]] as element indices.
    pub source_basis: [[u16; 2]; 2],
    pub target_basis: [[u16; 2]; 2],
}

impl VerifyReport {
    pub fn from_verification(v: &StaudtVerification, emit_timing: bool) -> VerifyReport {
        let matches = v
            .matches
            .iter()
            .filter(|r| r.matched)
            .map(|r| MatchEntry {
                preserver_id: r.preserver_id,
                component_id: r.component_id,
                alpha_id: r.alpha_id.expect("matched record has an alpha"),
                source_basis: split_rows(r.source_basis.expect("matched record has bases")),
                target_basis: split_rows(r.target_basis.expect("matched record has bases")),
            })
            .collect();
        VerifyReport {
            ring: v.source_label.clone(),
            target_ring: if v.source_label == v.target_label {
                None
            } else {
                Some(v.target_label.clone())
            },
            conditions: ConditionsReport::from_parts(&v.five_units, v.two_unit, Some(&v.i_prime)),
            counts: CountsReport {
                points: v.points,
                harmonic_quads: v.harmonic_quads,
                preservers: v.preservers.len(),
            },
            matches,
            unmatched: v.unmatched.clone(),
            timing_ms: emit_timing.then_some(v.elapsed_ms as u64),
        }
    }
}

fn split_rows(e: [u16; 4]) -> [[u16; 2]; 2] {
    [[e[0], e[1]], [e[2], e[3]]]
}
