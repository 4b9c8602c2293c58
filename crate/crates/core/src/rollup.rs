//! Subdomain tables rolled up into domain-level aggregates.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mean::{power_mean, weighted_power_mean, Exponent};
use crate::profile::{normalize_subdomain, Domain, DomainProfile, EpsilonFloor, Score, SubdomainTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregator {
    /// Unweighted arithmetic mean.
    Am,
    /// Weighted arithmetic mean.
    Wam,
    /// Unweighted geometric mean.
    Gm,
    /// Weighted geometric mean.
    Wgm,
}

impl Aggregator {
    pub const ALL: [Aggregator; 4] = [Aggregator::Am, Aggregator::Wam, Aggregator::Gm, Aggregator::Wgm];

    pub fn name(self) -> &'static str {
        match self {
            Aggregator::Am => "am",
            Aggregator::Wam => "wam",
            Aggregator::Gm => "gm",
            Aggregator::Wgm => "wgm",
        }
    }
}

impl fmt::Display for Aggregator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Aggregator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "am" => Ok(Aggregator::Am),
            "wam" => Ok(Aggregator::Wam),
            "gm" => Ok(Aggregator::Gm),
            "wgm" => Ok(Aggregator::Wgm),
            other => Err(format!("unknown aggregator `{other}` (expected am, wam, gm or wgm)")),
        }
    }
}

/// The four domain aggregates, in percent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainAggregates {
    pub domain_id: String,
    pub am: f64,
    pub wam: f64,
    pub gm: f64,
    pub wgm: f64,
}

impl DomainAggregates {
    pub fn get(&self, aggregator: Aggregator) -> f64 {
        match aggregator {
            Aggregator::Am => self.am,
            Aggregator::Wam => self.wam,
            Aggregator::Gm => self.gm,
            Aggregator::Wgm => self.wgm,
        }
    }
}

pub fn rollup_domain(table: &SubdomainTable, eps: EpsilonFloor) -> Result<DomainAggregates> {
    table.validate()?;
    let scores = table
        .entries
        .iter()
        .map(|e| {
            let pct = normalize_subdomain(e.raw, e.weight)?;
            // raw <= weight guarantees pct <= 100 up to rounding of the division.
            Score::new((pct / 100.0).min(1.0))
        })
        .collect::<Result<Vec<_>>>()?;
    let weights = table.weights();
    let am = power_mean(&scores, Exponent::ARITHMETIC, eps)?;
    let wam = weighted_power_mean(&scores, &weights, Exponent::ARITHMETIC, eps)?;
    let gm = power_mean(&scores, Exponent::GEOMETRIC, eps)?;
    let wgm = weighted_power_mean(&scores, &weights, Exponent::GEOMETRIC, eps)?;
    Ok(DomainAggregates {
        domain_id: table.domain_id.clone(),
        am: am.percent(),
        wam: wam.percent(),
        gm: gm.percent(),
        wgm: wgm.percent(),
    })
}

/// Rolls every table up and collects the chosen aggregate into an
/// unweighted profile, one domain per table in input order.
pub fn rollup_all(
    model_name: impl Into<String>,
    tables: &[SubdomainTable],
    aggregator: Aggregator,
    eps: EpsilonFloor,
) -> Result<(DomainProfile, Vec<DomainAggregates>)> {
    if tables.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let mut seen = HashSet::new();
    let mut aggregates = Vec::with_capacity(tables.len());
    let mut domains = Vec::with_capacity(tables.len());
    for t in tables {
        if !seen.insert(t.domain_id.as_str()) {
            return Err(Error::DuplicateDomain(t.domain_id.clone()));
        }
        let agg = rollup_domain(t, eps)?;
        domains.push(Domain::new(
            t.domain_id.clone(),
            Score::new((agg.get(aggregator) / 100.0).min(1.0))?,
        ));
        aggregates.push(agg);
    }
    let profile = DomainProfile::new(model_name, domains, None)?;
    Ok((profile, aggregates))
}
