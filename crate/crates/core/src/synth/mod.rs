//! Seeded synthetic data: voxel phantoms for the imaging path and
//! feature-space multi-cohort populations with a hard-sample stratum.

mod cohorts;
mod phantom;

use serde::{Deserialize, Serialize};

pub use cohorts::{
    default_experiment, make_cohort, make_cohorts, oracle_scores, plan_cohort, PatientPlan,
    SyntheticCohortSpec,
};
pub use phantom::{make_phantom, write_phantom_cohort, PhantomCohortSpec, PhantomSpec};

/// What `simulate` should emit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SimulateSpec {
    /// Feature-space cohorts written as CSV tables.
    FeatureCohorts { cohorts: Vec<SyntheticCohortSpec> },
    /// Voxel phantom cohorts written as raw volumes plus manifests.
    PhantomCohorts { cohorts: Vec<PhantomCohortSpec> },
}

impl SimulateSpec {
    /// The paper-sized three-cohort feature experiment.
    pub fn default_feature_experiment(master_seed: u64) -> Self {
        SimulateSpec::FeatureCohorts {
            cohorts: default_experiment(master_seed),
        }
    }
}
