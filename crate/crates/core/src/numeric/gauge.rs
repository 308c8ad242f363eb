use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{check_dim, BoxDomain, SeminormFamily};
use crate::error::NumericError;
use crate::verdict::Verdict;

/// A gauge `φ` with `φ(t) < t` for `t > 0` and `φⁿ(t) → 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PhiGauge {
    /// `φ(t) = q·t` with `0 ≤ q < 1`.
    Linear(f64),
    /// `φ(t) = t / (1 + √t)`.
    Root,
}

impl PhiGauge {
    pub fn apply(self, t: f64) -> f64 {
        match self {
            PhiGauge::Linear(q) => q * t,
            PhiGauge::Root => t / (1.0 + t.sqrt()),
        }
    }

    /// `φⁿ(t)`.
    pub fn iterate(self, t: f64, n: usize) -> f64 {
        match self {
            PhiGauge::Linear(q) => q.powi(n as i32) * t,
            PhiGauge::Root => (0..n).fold(t, |s, _| self.apply(s)),
        }
    }

    /// Checks `φ(t) < t` on a sweep of `t` in `(0, top]` and that
    /// `φⁿ(top)` falls below `tol` within `bound` steps.
    pub fn validate(self, top: f64, tol: f64, bound: usize) -> bool {
        if let PhiGauge::Linear(q) = self {
            if !(0.0..1.0).contains(&q) {
                return false;
            }
        }
        let below = (1..=200).all(|k| {
            let t = top * k as f64 / 200.0;
            self.apply(t) < t
        });
        below && (0..=bound).any(|n| self.iterate(top, n) < tol)
    }
}

/// An affine self-map `x ↦ A x + b` of `ℝ^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericMap {
    pub a: DMatrix<f64>,
    pub b: DVector<f64>,
}

impl NumericMap {
    pub fn new(a: DMatrix<f64>, b: DVector<f64>) -> Result<Self, NumericError> {
        if !a.is_square() {
            return Err(NumericError::Invalid("the linear part must be square".into()));
        }
        check_dim(a.nrows(), b.len())?;
        Ok(NumericMap { a, b })
    }

    /// `x ↦ s·x`.
    pub fn scale(d: usize, s: f64) -> Self {
        NumericMap {
            a: DMatrix::identity(d, d) * s,
            b: DVector::zeros(d),
        }
    }

    /// Rotation of the plane by `angle` followed by scaling by `s`.
    pub fn rotate_scale(angle: f64, s: f64) -> Self {
        let (sin, cos) = angle.sin_cos();
        NumericMap {
            a: DMatrix::from_row_slice(2, 2, &[cos, -sin, sin, cos]) * s,
            b: DVector::zeros(2),
        }
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.a * x + &self.b
    }

    /// The unique fixed point `(I - A)⁻¹ b`, when `I - A` is invertible.
    pub fn solve_fixed_point(&self) -> Option<DVector<f64>> {
        let d = self.dim();
        (DMatrix::identity(d, d) - &self.a).lu().solve(&self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiResult {
    pub fixed_point: Vec<f64>,
    pub iterations: usize,
    /// `max_i s_i(f(p) - p)` at the returned point.
    pub residual: f64,
    /// Gauge inequalities checked along the way.
    pub gauge_checks: usize,
}

/// Slack added to gauge inequalities per comparison.
const GAUGE_SLACK: f64 = 1e-12;

fn gauge_holds(
    f: &dyn Fn(&DVector<f64>) -> DVector<f64>,
    family: &SeminormFamily,
    gauge: PhiGauge,
    x: &DVector<f64>,
    y: &DVector<f64>,
) -> bool {
    let (fx, fy) = (f(x), f(y));
    (0..family.len()).all(|i| {
        family.eval(i, &(&fx - &fy)) <= gauge.apply(family.eval(i, &(x - y))) + GAUGE_SLACK
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiSettings {
    pub gauge: PhiGauge,
    pub tol: f64,
    pub maxiter: usize,
}

/// Iterates `f` from `x0` until every seminorm of the step falls below
/// `tol`, checking the gauge inequality on `samples` and along the orbit.
pub fn phi_iterate(
    f: &dyn Fn(&DVector<f64>) -> DVector<f64>,
    family: &SeminormFamily,
    domain: &BoxDomain,
    x0: &DVector<f64>,
    samples: &[(DVector<f64>, DVector<f64>)],
    settings: PhiSettings,
) -> Result<PhiResult, NumericError> {
    let PhiSettings {
        gauge,
        tol,
        maxiter,
    } = settings;
    check_dim(family.dim(), x0.len())?;
    check_dim(family.dim(), domain.dim())?;
    let mut checks = 0;
    for (x, y) in samples {
        for p in [x, y] {
            if !domain.contains(&f(p)) {
                return Err(NumericError::OutOfDomain(f(p).iter().copied().collect()));
            }
        }
        if !gauge_holds(f, family, gauge, x, y) {
            return Err(NumericError::GaugeViolated {
                x: x.iter().copied().collect(),
                y: y.iter().copied().collect(),
            });
        }
        checks += 1;
    }
    let step = |x: &DVector<f64>, fx: &DVector<f64>| family.max_all(&(fx - x));
    let mut x = x0.clone();
    let mut residual = f64::INFINITY;
    for it in 0..maxiter {
        let fx = f(&x);
        if !domain.contains(&fx) {
            return Err(NumericError::OutOfDomain(fx.iter().copied().collect()));
        }
        if it > 0 && !gauge_holds(f, family, gauge, &x, &fx) {
            return Err(NumericError::GaugeViolated {
                x: x.iter().copied().collect(),
                y: fx.iter().copied().collect(),
            });
        }
        checks += usize::from(it > 0);
        residual = step(&x, &fx);
        x = fx;
        if residual < tol {
            let r = step(&x, &f(&x));
            return Ok(PhiResult {
                fixed_point: x.iter().copied().collect(),
                iterations: it + 1,
                residual: r,
                gauge_checks: checks,
            });
        }
    }
    Err(NumericError::NotConverged { maxiter, residual })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Convergence {
    pub pairs: usize,
    /// Largest `s_i(fⁿx - fⁿy)` at step `n` over pairs and seminorms.
    pub final_gap: f64,
    /// Envelope comparisons `s(fᵏx - fᵏy) ≤ φᵏ(s(x - y))` performed.
    pub envelope_checks: usize,
}

/// A pair whose iterates do not come together, or break the envelope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceFailure {
    pub pair: usize,
    pub seminorm: usize,
    pub step: usize,
    pub gap: f64,
    pub reason: String,
}

/// For every pair and seminorm, `s_i(fⁿx - fⁿy) < tol`; with a gauge also
/// `s_i(fᵏx - fᵏy) ≤ φᵏ(s_i(x - y)) + slack` for every `k ≤ n`.
pub fn verify_pairwise_convergence(
    f: &dyn Fn(&DVector<f64>) -> DVector<f64>,
    pairs: &[(DVector<f64>, DVector<f64>)],
    family: &SeminormFamily,
    n: usize,
    tol: f64,
    gauge: Option<(PhiGauge, f64)>,
) -> Verdict<Convergence, ConvergenceFailure> {
    let mut final_gap: f64 = 0.0;
    let mut checks = 0;
    let mut undecided = None;
    for (pi, (x0, y0)) in pairs.iter().enumerate() {
        let start: Vec<f64> = (0..family.len()).map(|i| family.eval(i, &(x0 - y0))).collect();
        let (mut x, mut y) = (x0.clone(), y0.clone());
        for k in 0..=n {
            if k > 0 {
                x = f(&x);
                y = f(&y);
            }
            let diff = &x - &y;
            for (i, s0) in start.iter().enumerate() {
                let gap = family.eval(i, &diff);
                if let Some((g, slack)) = gauge {
                    checks += 1;
                    if gap > g.iterate(*s0, k) + slack {
                        return Verdict::Refuted(ConvergenceFailure {
                            pair: pi,
                            seminorm: i,
                            step: k,
                            gap,
                            reason: "gauge envelope exceeded".into(),
                        });
                    }
                }
                if k == n {
                    final_gap = final_gap.max(gap);
                    if gap >= tol {
                        let failure = ConvergenceFailure {
                            pair: pi,
                            seminorm: i,
                            step: k,
                            gap,
                            reason: format!("gap {gap:e} not below {tol:e}"),
                        };
                        if gap >= *s0 {
                            return Verdict::Refuted(failure);
                        }
                        undecided.get_or_insert(failure);
                    }
                }
            }
        }
    }
    if let Some(u) = undecided {
        return Verdict::unknown(n, u.reason);
    }
    Verdict::Proved(Convergence {
        pairs: pairs.len(),
        final_gap,
        envelope_checks: checks,
    })
}
