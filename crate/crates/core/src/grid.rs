//! One-dimensional sampling grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
}

/// A grid of `count` points between `min` and `max` inclusive.
///
/// A single-point grid (`count == 1`, `min == max`) is accepted so that a
/// coordinate can be pinned, e.g. `t = 0` for a spatial profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: Scale,
}

impl GridSpec {
    pub fn linear(min: f64, max: f64, count: usize) -> Result<Self> {
        Self::new(min, max, count, Scale::Linear)
    }

    pub fn log(min: f64, max: f64, count: usize) -> Result<Self> {
        Self::new(min, max, count, Scale::Log)
    }

    pub fn point(value: f64) -> Result<Self> {
        Self::new(value, value, 1, Scale::Linear)
    }

    pub fn new(min: f64, max: f64, count: usize, scale: Scale) -> Result<Self> {
        let grid = GridSpec {
            min,
            max,
            count,
            scale,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::Grid(format!(
                "bounds must be finite, got [{}, {}]",
                self.min, self.max
            )));
        }
        match self.count {
            0 => return Err(Error::Grid("count must be at least 1".into())),
            1 if self.min != self.max => {
                return Err(Error::Grid(format!(
                    "a single-point grid needs min == max, got [{}, {}]",
                    self.min, self.max
                )))
            }
            1 => {}
            _ if self.min >= self.max => {
                return Err(Error::Grid(format!(
                    "min must be below max, got [{}, {}]",
                    self.min, self.max
                )))
            }
            _ => {}
        }
        if self.scale == Scale::Log && self.min <= 0.0 {
            return Err(Error::Grid(format!(
                "log scale requires min > 0, got {}",
                self.min
            )));
        }
        Ok(())
    }

    pub fn is_point(&self) -> bool {
        self.count == 1
    }

    /// Grid nodes. Endpoints are reproduced exactly, and a symmetric linear
    /// grid with odd count hits zero exactly.
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let last = (self.count - 1) as f64;
        match self.scale {
            Scale::Linear => (0..self.count)
                .map(|i| {
                    let i = i as f64;
                    (self.min * (last - i) + self.max * i) / last
                })
                .collect(),
            Scale::Log => {
                let (lo, hi) = (self.min.ln(), self.max.ln());
                (0..self.count)
                    .map(|i| {
                        if i == 0 {
                            self.min
                        } else if i == self.count - 1 {
                            self.max
                        } else {
                            let i = i as f64;
                            ((lo * (last - i) + hi * i) / last).exp()
                        }
                    })
                    .collect()
            }
        }
    }
}
