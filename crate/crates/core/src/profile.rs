//! Score profiles, subdomain tables and their validation.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Proficiency in a domain as a fraction of human-equivalent ability.
///
/// Always finite and inside `[0, 1]`. Percent is a display convention.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Score(f64);

impl Score {
    pub const ZERO: Score = Score(0.0);
    pub const ONE: Score = Score(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && (0.0..=1.0).contains(&value) {
            Ok(Score(value))
        } else {
            Err(Error::ScoreOutOfRange(value))
        }
    }

    pub fn from_percent(percent: f64) -> Result<Self> {
        if !percent.is_finite() {
            return Err(Error::ScoreOutOfRange(percent));
        }
        Score::new(percent / 100.0).map_err(|_| Error::ScoreOutOfRange(percent / 100.0))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn percent(self) -> f64 {
        self.0 * 100.0
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Minimal-competence floor substituted for scores below it.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EpsilonFloor(f64);

impl EpsilonFloor {
    pub const DEFAULT: EpsilonFloor = EpsilonFloor(1e-6);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 && value < 1.0 {
            Ok(EpsilonFloor(value))
        } else {
            Err(Error::BadEpsilon(value))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn apply(self, score: Score) -> f64 {
        score.0.max(self.0)
    }
}

impl Default for EpsilonFloor {
    fn default() -> Self {
        EpsilonFloor::DEFAULT
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    pub id: String,
    pub score: Score,
}

impl Domain {
    pub fn new(id: impl Into<String>, score: Score) -> Self {
        Domain {
            id: id.into(),
            score,
        }
    }
}

/// A named model's ordered domain scores, optionally weighted.
///
/// Without weights every domain counts equally. Weights, when present, are
/// normalized by their sum inside the weighted kernels.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainProfile {
    pub model_name: String,
    pub domains: Vec<Domain>,
    pub weights: Option<Vec<f64>>,
}

impl DomainProfile {
    /// Builds and validates a profile.
    pub fn new(
        model_name: impl Into<String>,
        domains: Vec<Domain>,
        weights: Option<Vec<f64>>,
    ) -> Result<Self> {
        validate_profile(DomainProfile {
            model_name: model_name.into(),
            domains,
            weights,
        })
    }

    /// Builds an unweighted profile from `(id, fraction)` pairs.
    pub fn from_fractions<'a>(
        model_name: impl Into<String>,
        entries: impl IntoIterator<Item = (&'a str, f64)>,
    ) -> Result<Self> {
        let domains = entries
            .into_iter()
            .map(|(id, v)| Score::new(v).map(|s| Domain::new(id, s)))
            .collect::<Result<Vec<_>>>()?;
        DomainProfile::new(model_name, domains, None)
    }

    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }

    pub fn scores(&self) -> Vec<Score> {
        self.domains.iter().map(|d| d.score).collect()
    }

    pub fn position(&self, domain_id: &str) -> Option<usize> {
        self.domains.iter().position(|d| d.id == domain_id)
    }

    pub fn score_of(&self, domain_id: &str) -> Option<Score> {
        self.position(domain_id).map(|i| self.domains[i].score)
    }
}

/// Checks every profile invariant and hands the profile back untouched.
pub fn validate_profile(profile: DomainProfile) -> Result<DomainProfile> {
    check_profile(&profile)?;
    Ok(profile)
}

pub(crate) fn check_profile(profile: &DomainProfile) -> Result<()> {
    if profile.domains.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let mut seen = HashSet::with_capacity(profile.domains.len());
    for d in &profile.domains {
        // Score is validated on construction; re-check in case of a NaN smuggled via unsafe paths.
        Score::new(d.score.value())?;
        if !seen.insert(d.id.as_str()) {
            return Err(Error::DuplicateDomain(d.id.clone()));
        }
    }
    if let Some(w) = &profile.weights {
        check_weights(w, profile.domains.len())?;
    }
    Ok(())
}

pub(crate) fn check_weights(weights: &[f64], expected_len: usize) -> Result<()> {
    if weights.len() != expected_len {
        return Err(Error::LengthMismatch {
            scores: expected_len,
            weights: weights.len(),
        });
    }
    if let Some(bad) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
        return Err(Error::BadWeights(format!("weight {bad} is negative or not finite")));
    }
    let total: f64 = weights.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::BadWeights("weights sum to zero".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubdomainEntry {
    pub id: String,
    /// Points earned, `0 <= raw <= weight`.
    pub raw: f64,
    /// Maximum points available for the subdomain.
    pub weight: f64,
}

impl SubdomainEntry {
    pub fn new(id: impl Into<String>, raw: f64, weight: f64) -> Self {
        SubdomainEntry {
            id: id.into(),
            raw,
            weight,
        }
    }

    /// Reconstructs a raw score from a printed percent and its weight.
    pub fn from_percent(id: impl Into<String>, percent: f64, weight: f64) -> Self {
        SubdomainEntry::new(id, percent * weight / 100.0, weight)
    }
}

/// One broad domain broken into weighted subdomains.
#[derive(Debug, Clone, PartialEq)]
pub struct SubdomainTable {
    pub domain_id: String,
    pub entries: Vec<SubdomainEntry>,
}

impl SubdomainTable {
    pub fn new(domain_id: impl Into<String>, entries: Vec<SubdomainEntry>) -> Result<Self> {
        let table = SubdomainTable {
            domain_id: domain_id.into(),
            entries,
        };
        table.validate()?;
        Ok(table)
    }

    pub fn validate(&self) -> Result<()> {
        if self.entries.is_empty() {
            return Err(Error::EmptyTable(self.domain_id.clone()));
        }
        let mut seen = HashSet::with_capacity(self.entries.len());
        for e in &self.entries {
            normalize_subdomain(e.raw, e.weight)?;
            if !seen.insert(e.id.as_str()) {
                return Err(Error::DuplicateSubdomain {
                    domain: self.domain_id.clone(),
                    subdomain: e.id.clone(),
                });
            }
        }
        Ok(())
    }

    pub fn weights(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.weight).collect()
    }
}

/// `raw / weight * 100`: percent of human-equivalent proficiency.
pub fn normalize_subdomain(raw: f64, weight: f64) -> Result<f64> {
    if !(weight.is_finite() && weight > 0.0) {
        return Err(Error::NonpositiveWeight(weight));
    }
    if !(raw.is_finite() && raw >= 0.0) {
        return Err(Error::NegativeRaw(raw));
    }
    if raw > weight {
        return Err(Error::RawExceedsWeight { raw, weight });
    }
    Ok(raw / weight * 100.0)
}

pub fn floor_scores(scores: &[Score], eps: EpsilonFloor) -> Vec<f64> {
    scores.iter().map(|&s| eps.apply(s)).collect()
}
