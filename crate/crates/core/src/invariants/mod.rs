//! Generalized weights, rank distributions and the two q-polymatroids of a
//! code, each as a closed form for the `C_{s,h,k}` family and as a
//! brute-force oracle that works for any code.

mod distribution;
mod polymatroid;
mod weights;

pub use distribution::{rank_distribution_closed_form, rank_distribution_oracle, RankDistribution};
pub use polymatroid::{
    qoac_via_polymatroid, rho_c, rho_c_closed_form, rho_r, rho_r_closed_form, verify_axioms_with,
    verify_qpolymatroid_axioms, AxiomMode, AxiomReport, AxiomViolation, RankValue, Side,
};
pub use weights::{generalized_weights_closed_form, generalized_weights_oracle, WeightProfile};

use serde::Serialize;

/// JSON shape for invariant reports; big integers are decimal strings.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub weights: Vec<usize>,
    pub rank_distribution: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rho: Vec<RhoEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RhoEntry {
    pub side: Side,
    pub subspace: Vec<Vec<u32>>,
    pub rho: RankValue,
}

impl InvariantReport {
    pub fn new(weights: &WeightProfile, dist: &RankDistribution) -> InvariantReport {
        InvariantReport {
            weights: weights.as_slice().to_vec(),
            rank_distribution: dist.counts().iter().map(|c| c.to_string()).collect(),
            rho: Vec::new(),
        }
    }
}
