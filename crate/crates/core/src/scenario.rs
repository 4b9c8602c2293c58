//! What-if analysis on profiles: score overrides, bottleneck ranking and
//! perturbation envelopes around the `AGI_p` curve.

use std::collections::HashSet;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{agi_auc, sample_curve, PGrid};
use crate::error::{Error, Result};
use crate::mean::{agi_p_unchecked, Exponent};
use crate::profile::{check_profile, DomainProfile, EpsilonFloor, Score};

/// Replace one domain's score.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioEdit {
    pub domain_id: String,
    pub new_score: Score,
}

impl ScenarioEdit {
    pub fn new(domain_id: impl Into<String>, new_score: Score) -> Self {
        ScenarioEdit {
            domain_id: domain_id.into(),
            new_score,
        }
    }
}

/// Returns a copy of `profile` with the edits applied; other domains are untouched.
pub fn apply_scenario(profile: &DomainProfile, edits: &[ScenarioEdit]) -> Result<DomainProfile> {
    check_profile(profile)?;
    let mut seen = HashSet::with_capacity(edits.len());
    let mut out = profile.clone();
    for edit in edits {
        if !seen.insert(edit.domain_id.as_str()) {
            return Err(Error::DuplicateEdit(edit.domain_id.clone()));
        }
        let idx = profile
            .position(&edit.domain_id)
            .ok_or_else(|| Error::UnknownDomain(edit.domain_id.clone()))?;
        out.domains[idx].score = edit.new_score;
    }
    Ok(out)
}

/// For every domain below `target`, the `AGI_AUC` gained by raising that
/// domain alone to `target`. Sorted by descending gain; ties keep profile order.
pub fn rank_bottlenecks(
    profile: &DomainProfile,
    target: Score,
    grid: &PGrid,
    eps: EpsilonFloor,
) -> Result<Vec<(String, f64)>> {
    let base = agi_auc(profile, grid, eps)?.value();
    let mut gains = Vec::new();
    for d in profile.domains.iter().filter(|d| d.score < target) {
        let edited = apply_scenario(profile, &[ScenarioEdit::new(d.id.clone(), target)])?;
        let gain = agi_auc(&edited, grid, eps)?.value() - base;
        gains.push((d.id.clone(), gain));
    }
    gains.sort_by(|a, b| b.1.total_cmp(&a.1));
    Ok(gains)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeParams {
    /// Half-width of the uniform offset added to each score.
    pub scale: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for EnvelopeParams {
    fn default() -> Self {
        EnvelopeParams {
            scale: 0.05,
            samples: 1000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopePoint {
    pub p: f64,
    pub lower: f64,
    pub nominal: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub profile_name: String,
    pub method: String,
    pub sample_count: usize,
    pub perturbation_scale: f64,
    pub seed: u64,
    pub points: Vec<EnvelopePoint>,
}

pub const ENVELOPE_METHOD: &str = "uniform-additive-clamped-minmax: each score shifted by \
an independent U[-scale, scale) offset and clamped to [0,1]; band = min/max of AGI_p over \
samples and nominal; sample i uses ChaCha8 seeded from seed with stream i, offsets from the \
top 53 bits of each u64";

/// Min/max band of `AGI_p` over randomly perturbed copies of the profile.
///
/// Sample `i` draws from its own ChaCha8 stream, so the result does not
/// depend on the order samples are evaluated in.
pub fn uncertainty_envelope(
    profile: &DomainProfile,
    grid: &PGrid,
    eps: EpsilonFloor,
    params: EnvelopeParams,
) -> Result<Envelope> {
    if !(params.scale.is_finite() && params.scale >= 0.0) {
        return Err(Error::BadScale(params.scale));
    }
    if params.samples == 0 {
        return Err(Error::BadSampleCount);
    }
    let nominal = sample_curve(profile, grid, eps)?;
    let exponents = grid
        .points()
        .map(Exponent::new)
        .collect::<Result<Vec<_>>>()?;
    let mut lower: Vec<f64> = nominal.samples.iter().map(|s| s.value).collect();
    let mut upper = lower.clone();

    let mut perturbed = profile.clone();
    for i in 0..params.samples {
        perturb(profile, &mut perturbed, params.seed, i as u64, params.scale)?;
        for (k, &p) in exponents.iter().enumerate() {
            let v = agi_p_unchecked(&perturbed, p, eps)?.value();
            lower[k] = lower[k].min(v);
            upper[k] = upper[k].max(v);
        }
    }

    let points = nominal
        .samples
        .iter()
        .zip(lower.into_iter().zip(upper))
        .map(|(s, (lower, upper))| EnvelopePoint {
            p: s.p,
            lower,
            nominal: s.value,
            upper,
        })
        .collect();
    Ok(Envelope {
        profile_name: profile.model_name.clone(),
        method: ENVELOPE_METHOD.to_string(),
        sample_count: params.samples,
        perturbation_scale: params.scale,
        seed: params.seed,
        points,
    })
}

fn perturb(
    base: &DomainProfile,
    out: &mut DomainProfile,
    seed: u64,
    index: u64,
    scale: f64,
) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    for (dst, src) in out.domains.iter_mut().zip(&base.domains) {
        let offset = scale * (2.0 * unit_f64(rng.next_u64()) - 1.0);
        dst.score = Score::new((src.score.value() + offset).clamp(0.0, 1.0))?;
    }
    Ok(())
}

/// Maps a u64 to `[0, 1)` using its top 53 bits.
#[inline]
fn unit_f64(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
