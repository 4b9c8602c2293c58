//! Generalized (power) mean family with an epsilon floor.
//!
//! For `p != 0` the mean is `(Σ w̃_i · max(s_i, ε)^p)^(1/p)`; at `p = 0` it is
//! the geometric mean `Π max(s_i, ε)^w̃_i`. Unweighted means use `w̃_i = 1/n`.
//!
//! Everything is evaluated in log space. Inputs are sorted into a canonical
//! order first, so a permutation of the inputs gives a bit-identical result.

use crate::error::{Error, Result};
use crate::profile::{check_profile, check_weights, DomainProfile, EpsilonFloor, Score};

/// Exponents with `|p|` below this are evaluated with the geometric formula.
pub const GEOMETRIC_THRESHOLD: f64 = 1e-9;

// Largest |p · ln s| for which the expm1/ln1p form is used.
const SMALL_EXPONENT_SPAN: f64 = 0.5;

/// Compensability exponent.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub const HARMONIC: Exponent = Exponent(-1.0);
    pub const GEOMETRIC: Exponent = Exponent(0.0);
    pub const ARITHMETIC: Exponent = Exponent(1.0);

    pub fn new(p: f64) -> Result<Self> {
        if p.is_finite() {
            Ok(Exponent(p))
        } else {
            Err(Error::BadExponent(p))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_geometric(self) -> bool {
        self.0.abs() < GEOMETRIC_THRESHOLD
    }
}

/// Unweighted power mean of the floored scores.
pub fn power_mean(scores: &[Score], p: Exponent, eps: EpsilonFloor) -> Result<Score> {
    if scores.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut terms: Vec<(f64, f64)> = scores.iter().map(|&s| (eps.apply(s), 1.0)).collect();
    Ok(kernel(&mut terms, p))
}

/// Power mean with nonnegative weights normalized to sum to one.
///
/// For `p` outside `{0, 1}` this is the natural weighted extension of the
/// unweighted family; it reduces to [`power_mean`] when all weights are equal.
pub fn weighted_power_mean(
    scores: &[Score],
    weights: &[f64],
    p: Exponent,
    eps: EpsilonFloor,
) -> Result<Score> {
    if scores.is_empty() {
        return Err(Error::EmptyInput);
    }
    check_weights(weights, scores.len())?;
    if weights.iter().all(|&w| w == weights[0]) {
        return power_mean(scores, p, eps);
    }
    let mut terms: Vec<(f64, f64)> = scores
        .iter()
        .zip(weights)
        .filter(|(_, &w)| w > 0.0)
        .map(|(&s, &w)| (eps.apply(s), w))
        .collect();
    Ok(kernel(&mut terms, p))
}

/// `AGI_p` of a profile: weighted if the profile carries weights.
pub fn agi_p(profile: &DomainProfile, p: Exponent, eps: EpsilonFloor) -> Result<Score> {
    check_profile(profile)?;
    agi_p_unchecked(profile, p, eps)
}

pub(crate) fn agi_p_unchecked(
    profile: &DomainProfile,
    p: Exponent,
    eps: EpsilonFloor,
) -> Result<Score> {
    let scores = profile.scores();
    match &profile.weights {
        Some(w) => weighted_power_mean(&scores, w, p, eps),
        None => power_mean(&scores, p, eps),
    }
}

/// `(min_i max(s_i, ε), max_i max(s_i, ε))`, the limits of the family as
/// `p -> -inf` and `p -> +inf`.
pub fn floored_bounds(scores: &[Score], eps: EpsilonFloor) -> Result<(f64, f64)> {
    if scores.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(scores
        .iter()
        .map(|&s| eps.apply(s))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        }))
}

/// `terms` holds `(floored value, positive weight)`; nonempty.
fn kernel(terms: &mut [(f64, f64)], p: Exponent) -> Score {
    terms.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let lo = terms[0].0;
    let hi = terms[terms.len() - 1].0;
    if lo == hi {
        return Score::new(lo).expect("floored scores lie in (0, 1]");
    }

    let total: f64 = terms.iter().map(|t| t.1).sum();
    let p = p.value();
    let value = if p.abs() < GEOMETRIC_THRESHOLD {
        let mean_log: f64 = terms.iter().map(|&(v, w)| (w / total) * v.ln()).sum();
        mean_log.exp()
    } else {
        let span = terms
            .iter()
            .map(|&(v, _)| (p * v.ln()).abs())
            .fold(0.0, f64::max);
        let log_mean = if span <= SMALL_EXPONENT_SPAN {
            // ln Σ w̃ e^{p x} = ln1p(Σ w̃ expm1(p x)); exact cancellation of the 1s.
            let acc: f64 = terms
                .iter()
                .map(|&(v, w)| (w / total) * (p * v.ln()).exp_m1())
                .sum();
            acc.ln_1p()
        } else {
            let shift = terms
                .iter()
                .map(|&(v, _)| p * v.ln())
                .fold(f64::NEG_INFINITY, f64::max);
            let acc: f64 = terms
                .iter()
                .map(|&(v, w)| (w / total) * (p * v.ln() - shift).exp())
                .sum();
            shift + acc.ln()
        };
        (log_mean / p).exp()
    };
    Score::new(value.clamp(lo, hi)).expect("clamped into floored range")
}
