//! Randomized and exhaustive cross-checks.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::probe::degeneration_probe;
use crate::canonical::{build_nilpotent, seed_signature, NilpotentSeed, Signature};
use crate::classify::{is_closed, seed_stabilizer};
use crate::invariants::{quotient_map, InvariantVector};
use crate::linalg::Scalar;
use crate::rep::{act, lie_stabilizer_dim, sample, sample_twisted, Group, Kind};

/// One failed case with a serialized counterexample.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    fn new(suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            cases: 0,
            failures: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, case: impl Into<String>, detail: impl Into<String>) {
        self.failures.push(Failure {
            case: case.into(),
            detail: detail.into(),
        });
    }

    fn finish(mut self, start: Instant) -> SuiteReport {
        self.failures.sort();
        self.wall_time = start.elapsed();
        self
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(
            f,
            "{}: {status}, {} cases, {} failures",
            self.suite,
            self.cases,
            self.failures.len()
        )?;
        for fl in &self.failures {
            write!(f, "\n  {}: {}", fl.case, fl.detail)?;
        }
        Ok(())
    }
}

/// Checks exact invariance of the quotient map under sampled elements of
/// both components of the extended group.
pub fn invariance_suite(group: &Group, trials: usize, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new(&format!("invariance {group}"));
    for t in 0..trials as u64 {
        let s = seed.wrapping_add(t);
        let (e, p) = sample(group, s);
        let base = quotient_map(&p);
        let mut elements = vec![e];
        match sample_twisted(group, s) {
            Ok(tw) => elements.push(tw),
            Err(err) => report.fail(format!("seed {s}"), err.to_string()),
        }
        for e in elements {
            report.cases += 1;
            let case = format!("seed {s} delta {}", e.delta.value());
            match act(&e, &p) {
                Ok(q) if quotient_map(&q) == base => {}
                Ok(q) => report.fail(
                    case,
                    serde_json::json!({"point": p, "element": e, "image": q}).to_string(),
                ),
                Err(err) => report.fail(case, err.to_string()),
            }
        }
    }
    report.finish(start)
}

/// Exhaustive checks over all nilpotent seeds with coefficients from `grid`
/// and ranks up to `max_rank`: closedness, stabilizer dimensions, agreement
/// of signatures with invariants, and absence of degenerations.
pub fn classification_crosscheck(max_rank: usize, grid: &[Scalar]) -> SuiteReport {
    let start = Instant::now();
    let mut report = SuiteReport::new(&format!("classification rank <= {max_rank}"));
    for kind in Kind::STANDARD {
        for n in 0..=max_rank {
            let mut by_sig: HashMap<Signature, InvariantVector> = HashMap::new();
            let mut by_iv: HashMap<InvariantVector, Signature> = HashMap::new();
            for seed in NilpotentSeed::enumerate(kind, n, grid) {
                report.cases += 1;
                let case = serde_json::to_string(&seed).expect("seeds serialize");
                if let Err(msg) = check_seed(&seed, &mut by_sig, &mut by_iv) {
                    report.fail(case, msg);
                }
            }
        }
    }
    report.finish(start)
}

fn check_seed(
    seed: &NilpotentSeed,
    by_sig: &mut HashMap<Signature, InvariantVector>,
    by_iv: &mut HashMap<InvariantVector, Signature>,
) -> Result<(), String> {
    let p = build_nilpotent(seed).map_err(|e| e.to_string())?;
    let report = is_closed(&p).map_err(|e| e.to_string())?;
    if !report.is_closed {
        return Err(format!(
            "classified as not closed: orbit {} vs minimal {}",
            report.orbit_dim, report.minimal_orbit_dim
        ));
    }
    let predicted = seed_stabilizer(seed).map_err(|e| e.to_string())?;
    let actual = lie_stabilizer_dim(&p);
    if actual != predicted.dim() {
        return Err(format!(
            "stabilizer dimension {actual}, predicted {predicted} of dimension {}",
            predicted.dim()
        ));
    }
    if let Some(d) = degeneration_probe(&p, 1) {
        return Err(format!("degenerates along weights {:?}", d.weights));
    }
    let sig = seed_signature(seed).map_err(|e| e.to_string())?;
    let iv = quotient_map(&p);
    if let Some(prev) = by_sig.insert(sig.clone(), iv.clone()) {
        if prev != iv {
            return Err(format!("signature {sig} shared by different invariants"));
        }
    }
    if let Some(prev) = by_iv.insert(iv, sig.clone()) {
        if prev != sig {
            return Err(format!("invariants shared by signatures {prev} and {sig}"));
        }
    }
    Ok(())
}
