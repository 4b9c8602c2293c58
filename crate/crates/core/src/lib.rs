//! Coherence-aware aggregation of domain-level ability scores.
//!
//! The crate computes the generalized power-mean family `AGI_p` over a
//! profile of domain proficiencies, integrates it over an exponent interval
//! to obtain `AGI_AUC`, rolls subdomain tables up into domain aggregates
//! (AM, WAM, GM, WGM), and runs what-if scenarios on profiles.
//!
//! Scores are unit-interval fractions everywhere inside the library; files
//! and the command line speak percent.

pub mod curve;
pub mod error;
pub mod mean;
pub mod profile;
pub mod reference;
pub mod report;
pub mod rollup;
pub mod scenario;

pub use curve::{agi_auc, auc, sample_curve, Curve, CurveSample, PGrid};
pub use error::{Error, Result};
pub use mean::{agi_p, power_mean, weighted_power_mean, Exponent, GEOMETRIC_THRESHOLD};
pub use profile::{
    floor_scores, normalize_subdomain, validate_profile, DomainProfile, EpsilonFloor, Score,
    SubdomainEntry, SubdomainTable,
};
pub use rollup::{rollup_all, rollup_domain, Aggregator, DomainAggregates};
pub use scenario::{
    apply_scenario, rank_bottlenecks, uncertainty_envelope, Envelope, EnvelopeParams,
    EnvelopePoint, ScenarioEdit,
};
