//! Finite-dimensional stand-ins for the locally convex results: seminorm
//! families on grid compacts, Lebesgue numbers, gauge contractions, polar
//! sets, finite monoids and finite metric spaces.

mod config;
mod finite;
mod gauge;
#[cfg(test)]
mod tests;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use config::{BallSpec, GaugeSpec, MapSpec, NumericConfig};
pub use finite::{
    beer_check, monoid_fixed_point, monoid_lebesgue, BeerResult, FiniteMonoid, MetricGrid,
};
pub use gauge::{
    phi_iterate, verify_pairwise_convergence, Convergence, ConvergenceFailure, NumericMap, PhiGauge,
    PhiResult, PhiSettings,
};

use crate::error::NumericError;
use crate::verdict::Verdict;

/// Default absolute tolerance for floating-point comparisons.
pub const TOL: f64 = 1e-9;

/// Seminorms `s_i(x) = |⟨v_i, x⟩|` generated by vectors of one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct SeminormFamily {
    vectors: Vec<DVector<f64>>,
}

impl SeminormFamily {
    pub fn new(vectors: Vec<DVector<f64>>) -> Result<Self, NumericError> {
        let d = vectors
            .first()
            .ok_or_else(|| NumericError::Invalid("a seminorm family needs a vector".into()))?
            .len();
        for v in &vectors {
            check_dim(d, v.len())?;
        }
        Ok(SeminormFamily { vectors })
    }

    /// The coordinate seminorms `|x_k|` of `ℝ^d`.
    pub fn coordinates(d: usize) -> Self {
        SeminormFamily {
            vectors: (0..d).map(|k| DVector::from_fn(d, |i, _| f64::from(u8::from(i == k)))).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[DVector<f64>] {
        &self.vectors
    }

    pub fn eval(&self, i: usize, x: &DVector<f64>) -> f64 {
        self.vectors[i].dot(x).abs()
    }

    /// `max_{i ∈ indices} s_i(x)`.
    pub fn max_over(&self, indices: &[usize], x: &DVector<f64>) -> f64 {
        indices.iter().map(|&i| self.eval(i, x)).fold(0.0, f64::max)
    }

    /// `max_i s_i(x)` over the whole family.
    pub fn max_all(&self, x: &DVector<f64>) -> f64 {
        (0..self.len()).map(|i| self.eval(i, x)).fold(0.0, f64::max)
    }

    /// The seminorms separate points exactly when the vectors span the dual.
    pub fn separates_points(&self) -> bool {
        spans(&self.vectors)
    }
}

fn spans(vectors: &[DVector<f64>]) -> bool {
    let d = vectors[0].len();
    let m = DMatrix::from_columns(vectors);
    m.rank(TOL) == d
}

fn check_dim(expected: usize, got: usize) -> Result<(), NumericError> {
    if expected == got {
        Ok(())
    } else {
        Err(NumericError::DimensionMismatch { expected, got })
    }
}

/// An axis-aligned box `[lo_1, hi_1] × ... × [lo_d, hi_d]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxDomain {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoxDomain {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self, NumericError> {
        check_dim(lo.len(), hi.len())?;
        if lo.is_empty() || lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(NumericError::Invalid("box bounds must satisfy lo <= hi".into()));
        }
        Ok(BoxDomain { lo, hi })
    }

    pub fn cube(d: usize, lo: f64, hi: f64) -> Self {
        BoxDomain {
            lo: vec![lo; d],
            hi: vec![hi; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, x: &DVector<f64>) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(v, (a, b))| *v >= a - TOL && *v <= b + TOL)
    }

    /// Grid points `lo + k·h` in every coordinate, including the upper face.
    pub fn grid(&self, h: f64) -> Result<GridCompact, NumericError> {
        if h <= 0.0 || !h.is_finite() {
            return Err(NumericError::Invalid(format!("resolution {h} must be positive")));
        }
        let axes: Vec<Vec<f64>> = self
            .lo
            .iter()
            .zip(&self.hi)
            .map(|(a, b)| {
                let steps = ((b - a) / h + 1e-9).floor() as usize;
                (0..=steps).map(|k| a + k as f64 * h).collect()
            })
            .collect();
        let mut points: Vec<Vec<f64>> = vec![Vec::new()];
        for axis in &axes {
            points = points
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(*v);
                        q
                    })
                })
                .collect();
        }
        GridCompact::new(
            self.dim(),
            points.into_iter().map(DVector::from_vec).collect(),
            h,
        )
    }
}

/// A finite sample of a compact set at resolution `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridCompact {
    dim: usize,
    points: Vec<DVector<f64>>,
    h: f64,
}

impl GridCompact {
    pub fn new(dim: usize, points: Vec<DVector<f64>>, h: f64) -> Result<Self, NumericError> {
        if points.is_empty() {
            return Err(NumericError::Invalid("a grid needs at least one point".into()));
        }
        if h <= 0.0 {
            return Err(NumericError::Invalid(format!("resolution {h} must be positive")));
        }
        for p in &points {
            check_dim(dim, p.len())?;
        }
        Ok(GridCompact { dim, points, h })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[DVector<f64>] {
        &self.points
    }

    pub fn h(&self) -> f64 {
        self.h
    }
}

/// `V(x; E, ε) = {z : s_i(x - z) < ε for i ∈ E}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeminormBall {
    pub center: DVector<f64>,
    pub indices: Vec<usize>,
    pub radius: f64,
}

impl SeminormBall {
    pub fn new(center: DVector<f64>, indices: Vec<usize>, radius: f64) -> Result<Self, NumericError> {
        if indices.is_empty() || radius <= 0.0 {
            return Err(NumericError::Invalid(
                "a ball needs a nonempty index set and a positive radius".into(),
            ));
        }
        Ok(SeminormBall {
            center,
            indices,
            radius,
        })
    }

    pub fn contains(&self, family: &SeminormFamily, z: &DVector<f64>) -> bool {
        family.max_over(&self.indices, &(z - &self.center)) < self.radius
    }
}

/// A Lebesgue number for a cover: every grid point's `V(x; E, ε)` lies,
/// within the grid, inside a single cover element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LebesgueData {
    pub indices: Vec<usize>,
    pub epsilon: f64,
    pub h: f64,
    /// The epsilon attains the diameter bound, so any larger value works.
    pub unbounded: bool,
}

/// Projections of the grid onto the seminorms in `indices`.
fn projections(family: &SeminormFamily, indices: &[usize], grid: &GridCompact) -> Vec<Vec<f64>> {
    grid.points
        .iter()
        .map(|p| indices.iter().map(|&i| family.vectors[i].dot(p)).collect())
        .collect()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Computes `ε = min_x max_U min_{z ∉ U} d_E(x, z)` over the grid, where
/// `d_E(x, z) = max_{i ∈ E} s_i(x - z)`. Then `V(x; E, ε) ∩ grid` lies in
/// one element for every `x`, and no larger value works at this resolution.
pub fn lebesgue_data(
    family: &SeminormFamily,
    cover: &[SeminormBall],
    grid: &GridCompact,
) -> Result<Verdict<LebesgueData, DVector<f64>>, NumericError> {
    if cover.is_empty() {
        return Err(NumericError::EmptyCover);
    }
    check_dim(family.dim(), grid.dim)?;
    for b in cover {
        check_dim(family.dim(), b.center.len())?;
        if b.indices.iter().any(|&i| i >= family.len()) {
            return Err(NumericError::Invalid("ball index outside the family".into()));
        }
    }
    let inside: Vec<Vec<bool>> = cover
        .iter()
        .map(|b| grid.points.iter().map(|p| b.contains(family, p)).collect())
        .collect();
    if let Some(k) = (0..grid.points.len()).find(|&k| !inside.iter().any(|m| m[k])) {
        return Err(NumericError::NotCovering(grid.points[k].iter().copied().collect()));
    }
    let mut indices: Vec<usize> = cover.iter().flat_map(|b| b.indices.iter().copied()).collect();
    indices.sort_unstable();
    indices.dedup();
    let proj = projections(family, &indices, grid);
    let n = proj.len();
    let m = indices.len();
    // Under the sup-distance the diameter splits over coordinates.
    let diameter = (0..m)
        .map(|k| {
            let (lo, hi) = proj
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p[k]), hi.max(p[k])));
            hi - lo
        })
        .fold(0.0, f64::max);
    // Per grid point: the best element's distance to the grid outside it.
    // Scanning an element stops once it cannot beat the best one so far.
    let reach: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut best: f64 = 0.0;
            for mask in inside.iter().filter(|mask| mask[a]) {
                let mut near = f64::INFINITY;
                for b in (0..n).filter(|&b| !mask[b]) {
                    near = near.min(dist(&proj[a], &proj[b]));
                    if near <= best {
                        break;
                    }
                }
                best = best.max(near);
            }
            best
        })
        .collect();
    let (worst, eps) = reach
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (k, r)| if r < acc.1 { (k, r) } else { acc });
    if eps <= 0.0 {
        return Ok(Verdict::Refuted(grid.points[worst].clone()));
    }
    let unbounded = eps >= diameter;
    let epsilon = if unbounded { diameter.max(grid.h) } else { eps };
    Ok(Verdict::Proved(LebesgueData {
        indices,
        epsilon,
        h: grid.h,
        unbounded,
    }))
}

/// Re-checks a Lebesgue number by the definition: for every grid point,
/// one ball contains every grid point within `ε`.
pub fn verify_lebesgue(
    family: &SeminormFamily,
    cover: &[SeminormBall],
    grid: &GridCompact,
    data: &LebesgueData,
    stride: usize,
) -> bool {
    let proj = projections(family, &data.indices, grid);
    (0..grid.points.len()).step_by(stride.max(1)).all(|a| {
        let nbhd: Vec<usize> = (0..grid.points.len())
            .filter(|&b| dist(&proj[a], &proj[b]) < data.epsilon)
            .collect();
        cover
            .iter()
            .any(|u| nbhd.iter().all(|&b| u.contains(family, &grid.points[b])))
    })
}

/// Grid sample of the polar `{y : |⟨u_j, y⟩| ≤ 1 for all j}` inside the box
/// `[-bound, bound]^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarSample {
    pub grid: GridCompact,
    /// False when the vectors do not span, so the polar is unbounded and
    /// the box truncates it.
    pub bounded: bool,
}

pub fn polar_ball(vectors: &[DVector<f64>], h: f64, bound: f64) -> Result<PolarSample, NumericError> {
    let family = SeminormFamily::new(vectors.to_vec())?;
    let d = family.dim();
    let full = BoxDomain::cube(d, -bound, bound).grid(h)?;
    let points: Vec<DVector<f64>> = full
        .points
        .into_iter()
        .filter(|y| (0..family.len()).all(|j| family.eval(j, y) <= 1.0 + TOL))
        .collect();
    Ok(PolarSample {
        grid: GridCompact::new(d, points, h)?,
        bounded: family.separates_points(),
    })
}
