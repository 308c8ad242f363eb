use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{check_dim, BoxDomain, NumericMap, PhiGauge, SeminormBall, SeminormFamily, TOL};
use crate::error::NumericError;

/// A ball `V(center; indices, radius)` in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallSpec {
    pub center: Vec<f64>,
    pub indices: Vec<usize>,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapSpec {
    /// `x ↦ A x + b` with `A` given row by row.
    Affine {
        matrix: Vec<Vec<f64>>,
        offset: Vec<f64>,
    },
    /// `x ↦ x / 2`.
    Halve,
    /// Quarter turn followed by halving, in the plane.
    RotateHalf,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaugeSpec {
    Linear(f64),
    Root,
}

impl From<GaugeSpec> for PhiGauge {
    fn from(g: GaugeSpec) -> Self {
        match g {
            GaugeSpec::Linear(q) => PhiGauge::Linear(q),
            GaugeSpec::Root => PhiGauge::Root,
        }
    }
}

fn default_tol() -> f64 {
    TOL
}

fn default_maxiter() -> usize {
    1000
}

/// A numeric case: seminorm vectors, a box, a map, a gauge and a cover.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericConfig {
    pub dimension: usize,
    pub vectors: Vec<Vec<f64>>,
    #[serde(rename = "box")]
    pub domain: BoxDomain,
    pub map: MapSpec,
    pub gauge: GaugeSpec,
    #[serde(default = "default_tol")]
    pub tol: f64,
    pub h: f64,
    #[serde(default)]
    pub cover: Vec<BallSpec>,
    /// Starting point; defaults to the box's lower corner.
    #[serde(default)]
    pub x0: Option<Vec<f64>>,
    #[serde(default = "default_maxiter")]
    pub maxiter: usize,
}

impl NumericConfig {
    pub fn from_json(text: &str) -> Result<Self, NumericError> {
        let cfg: NumericConfig =
            serde_json::from_str(text).map_err(|e| NumericError::Invalid(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), NumericError> {
        check_dim(self.dimension, self.domain.dim())?;
        BoxDomain::new(self.domain.lo.clone(), self.domain.hi.clone())?;
        self.family()?;
        self.map()?;
        self.cover()?;
        if let Some(x0) = &self.x0 {
            check_dim(self.dimension, x0.len())?;
        }
        if !(self.tol > 0.0 && self.h > 0.0) {
            return Err(NumericError::Invalid("tol and h must be positive".into()));
        }
        Ok(())
    }

    pub fn family(&self) -> Result<SeminormFamily, NumericError> {
        let family = SeminormFamily::new(
            self.vectors
                .iter()
                .map(|v| DVector::from_column_slice(v))
                .collect(),
        )?;
        check_dim(self.dimension, family.dim())?;
        Ok(family)
    }

    pub fn map(&self) -> Result<NumericMap, NumericError> {
        let d = self.dimension;
        match &self.map {
            MapSpec::Affine { matrix, offset } => {
                check_dim(d, matrix.len())?;
                for row in matrix {
                    check_dim(d, row.len())?;
                }
                let flat: Vec<f64> = matrix.iter().flatten().copied().collect();
                NumericMap::new(
                    DMatrix::from_row_slice(d, d, &flat),
                    DVector::from_column_slice(offset),
                )
            }
            MapSpec::Halve => Ok(NumericMap::scale(d, 0.5)),
            MapSpec::RotateHalf => {
                check_dim(2, d)?;
                Ok(NumericMap::rotate_scale(FRAC_PI_2, 0.5))
            }
        }
    }

    pub fn cover(&self) -> Result<Vec<SeminormBall>, NumericError> {
        self.cover
            .iter()
            .map(|b| {
                check_dim(self.dimension, b.center.len())?;
                if b.indices.iter().any(|&i| i >= self.vectors.len()) {
                    return Err(NumericError::Invalid("ball index outside the family".into()));
                }
                SeminormBall::new(DVector::from_column_slice(&b.center), b.indices.clone(), b.radius)
            })
            .collect()
    }

    pub fn x0(&self) -> DVector<f64> {
        DVector::from_column_slice(self.x0.as_deref().unwrap_or(&self.domain.lo))
    }
}
