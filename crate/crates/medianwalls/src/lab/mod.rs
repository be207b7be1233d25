//! Numerical experiments on continuous model geometries: the Poincaré disk
//! with its invariant measure on geodesic walls, complex hyperbolic space,
//! snowflaked metrics, and the plane-into-L1 embedding.

pub mod crofton;
pub mod embedding;
pub mod hyperbolic;
pub mod models;
pub mod snowflake;

pub use crofton::{calibration_constant, crofton_estimate, crofton_quadrature, CroftonEstimate};
pub use embedding::{r2_l1_embedding_check, EmbeddingCheck};
pub use hyperbolic::{hyperbolic_dist, hyperbolic_midpoint, DiskPoint, GeodesicWall, MobiusMap};
pub use models::{
    complex_hyperbolic_dist, tripod_defect_experiment, ComplexHyperbolicBall,
    ComplexHyperbolicPoint, DefectEstimate, EuclideanPlane, HyperbolicDisk, ModelMetric,
    ProductModel, Snowflaked,
};
pub use snowflake::{
    snowflake_inequalities, snowflake_interval_check, snowflake_median_bound, MedianBoundReport,
    SnowflakeIntervalReport,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Monte Carlo parameters shared by the sampling experiments.
#[derive(Clone, Copy, Debug)]
pub struct MonteCarloConfig {
    pub seed: u64,
    pub samples: u64,
    /// Hyperbolic radius of the proposal disk for wall sampling; `None`
    /// picks dist(p,q)/2 + 2.
    pub proposal_radius: Option<f64>,
}

impl MonteCarloConfig {
    pub fn new(seed: u64, samples: u64) -> Self {
        MonteCarloConfig {
            seed,
            samples,
            proposal_radius: None,
        }
    }
}

/// Dedicated generator for one sample index. Partitioning sample indices
/// across workers reproduces the sequential estimate exactly.
pub fn sample_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
