//! `AGI_p` curves over a uniform exponent grid and their normalized area.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mean::{agi_p_unchecked, Exponent};
use crate::profile::{check_profile, DomainProfile, EpsilonFloor, Score};

/// Uniform grid of exponents, endpoints included.
///
/// An odd point count on a symmetric interval puts `p = 0` exactly on the
/// grid; an even count skips it, which the quadrature does not need.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PGrid {
    pub p_min: f64,
    pub p_max: f64,
    pub num_points: usize,
}

impl PGrid {
    pub fn new(p_min: f64, p_max: f64, num_points: usize) -> Result<Self> {
        let grid = PGrid {
            p_min,
            p_max,
            num_points,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p_min.is_finite() && self.p_max.is_finite()) {
            return Err(Error::BadGrid("bounds must be finite".into()));
        }
        if self.p_min >= self.p_max {
            return Err(Error::BadGrid(format!(
                "p_min {} must be below p_max {}",
                self.p_min, self.p_max
            )));
        }
        if self.num_points < 2 {
            return Err(Error::BadGrid(format!(
                "need at least 2 points, got {}",
                self.num_points
            )));
        }
        Ok(())
    }

    pub fn point(&self, k: usize) -> f64 {
        let last = self.num_points - 1;
        if k == last {
            return self.p_max;
        }
        self.p_min + (self.p_max - self.p_min) * k as f64 / last as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.num_points).map(move |k| self.point(k))
    }
}

impl Default for PGrid {
    /// 201 points on `[-1, 1]`, spacing 0.01.
    fn default() -> Self {
        PGrid {
            p_min: -1.0,
            p_max: 1.0,
            num_points: 201,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub p: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub profile_name: String,
    pub samples: Vec<CurveSample>,
}

impl Curve {
    /// Builds a curve from arbitrary samples; `p` must be strictly increasing.
    pub fn new(profile_name: impl Into<String>, samples: Vec<CurveSample>) -> Result<Self> {
        check_samples(&samples)?;
        Ok(Curve {
            profile_name: profile_name.into(),
            samples,
        })
    }

    pub fn p_range(&self) -> Option<(f64, f64)> {
        Some((self.samples.first()?.p, self.samples.last()?.p))
    }

    pub fn value_at(&self, p: f64) -> Option<f64> {
        self.samples.iter().find(|s| s.p == p).map(|s| s.value)
    }
}

fn check_samples(samples: &[CurveSample]) -> Result<()> {
    if samples.len() < 2 {
        return Err(Error::TooFewSamples(samples.len()));
    }
    for (i, w) in samples.windows(2).enumerate() {
        if !(w[1].p > w[0].p) {
            return Err(Error::NonMonotoneGrid(i + 1));
        }
    }
    Ok(())
}

pub fn sample_curve(profile: &DomainProfile, grid: &PGrid, eps: EpsilonFloor) -> Result<Curve> {
    check_profile(profile)?;
    grid.validate()?;
    let samples = grid
        .points()
        .map(|p| {
            let value = agi_p_unchecked(profile, Exponent::new(p)?, eps)?.value();
            Ok(CurveSample { p, value })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Curve {
        profile_name: profile.model_name.clone(),
        samples,
    })
}

/// Composite trapezoid estimate of the curve's mean value over its range.
pub fn auc(curve: &Curve) -> Result<Score> {
    let samples = &curve.samples;
    check_samples(samples)?;
    let area: f64 = samples
        .windows(2)
        .map(|w| (w[1].p - w[0].p) * (w[0].value + w[1].value) / 2.0)
        .sum();
    let width = samples[samples.len() - 1].p - samples[0].p;
    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
            (lo.min(s.value), hi.max(s.value))
        });
    Score::new((area / width).clamp(lo, hi))
}

pub fn agi_auc(profile: &DomainProfile, grid: &PGrid, eps: EpsilonFloor) -> Result<Score> {
    auc(&sample_curve(profile, grid, eps)?)
}
