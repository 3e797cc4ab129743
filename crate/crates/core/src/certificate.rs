//! Certificate documents and their independent replay.

use serde::{Deserialize, Serialize};

use crate::ap_search;
use crate::construct::stage_generator;
use crate::nd_gen::NDGenerator;
use crate::plh::PLHomeo;
use crate::rat::Rat;

pub const SCHEMA_ID: &str = "apfree/fap-certificate/v1";

/// Record of one construction stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCertificate {
    pub stage: usize,
    pub eps_requested: Rat,
    pub eps_effective: Rat,
    pub cover_generation: u32,
    /// Least defect of gap-constrained triples; `null` when no triple qualifies.
    pub gamma: Option<Rat>,
    pub delta_stability: Rat,
    pub perturbation_used: Rat,
    pub verified: bool,
}

/// "The final map sends the stage's cover to a set without 3-term APs of step
/// `>= step_bound`" (`> step_bound` when `strict`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guarantee {
    pub stage: usize,
    /// Indices of the input generators whose union the guarantee covers.
    pub generators: Vec<usize>,
    pub cover_generation: u32,
    pub step_bound: Rat,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub stage: usize,
    pub delta_stability: Rat,
    /// Sum of effective steps of all later stages.
    pub later_eps_sum: Rat,
    /// `delta_stability - later_eps_sum`; positive for a sound schedule.
    pub remaining: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FapCertificate {
    pub schema: String,
    pub stages: Vec<StageCertificate>,
    pub final_homeo: PLHomeo,
    pub guarantees: Vec<Guarantee>,
    pub budget_ledger: Vec<LedgerEntry>,
}

impl FapCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Outcome of [`verify_certificate`]: the checks that ran, in order, and the
/// first one that failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks_passed: usize,
    pub failure: Option<String>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

struct Checker {
    passed: usize,
    failure: Option<String>,
}

impl Checker {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        if self.failure.is_some() {
            return false;
        }
        if ok {
            self.passed += 1;
        } else {
            self.failure = Some(what());
        }
        ok
    }
}

/// Replays a certificate against the generators it was built from.
///
/// Recomputes the stability formula, the scheduler caps and the budget ledger
/// from the recorded numbers, then rebuilds every guaranteed cover, maps it
/// through the final homeomorphism and re-runs the AP kernel.
pub fn verify_certificate(cert: &FapCertificate, gens: &[NDGenerator]) -> VerificationReport {
    let mut c = Checker {
        passed: 0,
        failure: None,
    };
    let half = Rat::new(1, 2);

    c.check(cert.schema == SCHEMA_ID, || format!("unknown schema {:?}", cert.schema));
    c.check(!gens.is_empty(), || "no generators supplied".into());
    c.check(!cert.stages.is_empty(), || "certificate has no stages".into());

    for (i, st) in cert.stages.iter().enumerate() {
        let k = i + 1;
        c.check(st.stage == k, || format!("stage {} recorded at position {k}", st.stage));
        c.check(st.verified, || format!("stage {k} is not marked verified"));
        c.check(st.eps_effective.is_positive() && st.eps_effective < half, || {
            format!("stage {k}: effective step {} outside (0, 1/2)", st.eps_effective)
        });
        c.check(st.eps_effective <= st.eps_requested, || {
            format!("stage {k}: effective step exceeds the requested {}", st.eps_requested)
        });
        c.check(st.gamma.as_ref().is_none_or(Rat::is_positive), || {
            format!("stage {k}: gamma not positive")
        });
        let delta = ap_search::radius_formula(&st.eps_effective, st.gamma.as_ref());
        c.check(delta == st.delta_stability, || {
            format!(
                "stage {k}: delta {} != min(eps/2, gamma/5) = {delta}",
                st.delta_stability
            )
        });
        c.check(st.perturbation_used < st.eps_effective, || {
            format!("stage {k}: perturbation {} not below its step", st.perturbation_used)
        });
        for (j, prev) in cert.stages[..i].iter().enumerate() {
            let cap = &prev.delta_stability / &Rat::from_int(2).pow((k - (j + 1)) as u32 + 1);
            c.check(st.eps_effective <= cap, || {
                format!(
                    "stage {k}: step {} exceeds the budget {cap} left by stage {}",
                    st.eps_effective,
                    j + 1
                )
            });
        }
    }

    let expected = crate::construct::ledger(&cert.stages);
    c.check(expected == cert.budget_ledger, || {
        "budget ledger does not match the stage records".into()
    });
    for e in &expected {
        c.check(e.later_eps_sum < e.delta_stability, || {
            format!(
                "stage {}: later steps sum to {} >= delta {}",
                e.stage, e.later_eps_sum, e.delta_stability
            )
        });
    }

    for st in &cert.stages {
        let found = cert.guarantees.iter().any(|g| {
            g.stage == st.stage
                && g.strict
                && g.cover_generation == st.cover_generation
                && g.step_bound == st.eps_effective.mul_int(2)
        });
        c.check(found, || format!("stage {} has no stability guarantee", st.stage));
    }

    for gu in &cert.guarantees {
        if c.failure.is_some() {
            break;
        }
        let in_range = gu.stage >= 1 && gu.stage <= cert.stages.len();
        if !c.check(in_range, || format!("guarantee names unknown stage {}", gu.stage)) {
            break;
        }
        let expected_ids: Vec<usize> = (0..gu.stage.min(gens.len())).collect();
        c.check(gu.generators == expected_ids, || {
            format!("stage {} guarantee lists generators {:?}", gu.stage, gu.generators)
        });
        let gen = match stage_generator(gens, gu.stage) {
            Ok(g) => g,
            Err(e) => {
                c.check(false, || format!("stage {}: {e}", gu.stage));
                break;
            }
        };
        let image = cert.final_homeo.image(&gen.cover(gu.cover_generation));
        let hit = ap_search::has_ap3(&image, &gu.step_bound, gu.strict);
        match hit {
            Ok(None) => {
                c.check(true, String::new);
            }
            Ok(Some(w)) => {
                c.check(false, || {
                    format!(
                        "stage {}: image contains the progression {}, {}+{}·k with step {} {}",
                        gu.stage,
                        w.start,
                        w.start,
                        w.step,
                        if gu.strict { ">" } else { ">=" },
                        gu.step_bound
                    )
                });
            }
            Err(e) => {
                c.check(false, || format!("stage {}: {e}", gu.stage));
            }
        }
    }

    VerificationReport {
        checks_passed: c.passed,
        failure: c.failure,
    }
}
