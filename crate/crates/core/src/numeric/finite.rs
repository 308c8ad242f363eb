use serde::{Deserialize, Serialize};

use super::TOL;
use crate::error::NumericError;
use crate::verdict::Verdict;

/// A finite monoid given by its operation table `table[a][b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteMonoid {
    table: Vec<Vec<usize>>,
    e: usize,
}

impl FiniteMonoid {
    /// Checks closure, associativity and neutrality exhaustively.
    pub fn new(table: Vec<Vec<usize>>, e: usize) -> Result<Self, NumericError> {
        let n = table.len();
        if n == 0 || e >= n {
            return Err(NumericError::NotAMonoid("empty table or neutral out of range".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&c| c >= n)) {
            return Err(NumericError::NotAMonoid("table is not closed".into()));
        }
        for a in 0..n {
            if table[a][e] != a || table[e][a] != a {
                return Err(NumericError::NotAMonoid(format!("{e} is not neutral for {a}")));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(NumericError::NotAMonoid(format!(
                            "({a}·{b})·{c} ≠ {a}·({b}·{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteMonoid { table, e })
    }

    /// `(ℤ_n, +)`.
    pub fn cyclic_additive(n: usize) -> Self {
        FiniteMonoid {
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            e: 0,
        }
    }

    /// `(ℤ_n, ·)` with neutral element 1, for `n ≥ 2`.
    pub fn multiplicative(n: usize) -> Self {
        FiniteMonoid {
            table: (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect(),
            e: 1,
        }
    }

    pub fn trivial() -> Self {
        FiniteMonoid {
            table: vec![vec![0]],
            e: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn neutral(&self) -> usize {
        self.e
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// The left translate `z·V`.
    pub fn translate(&self, z: usize, v: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = v.iter().map(|&x| self.op(z, x)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn check_self_map(n: usize, f: &[usize]) -> Result<(), NumericError> {
    if f.len() != n || f.iter().any(|&y| y >= n) {
        return Err(NumericError::Invalid(format!(
            "a self-map of {n} elements must be a table of {n} values below {n}"
        )));
    }
    Ok(())
}

/// With `V = {e}` every pair of orbits must meet: `fⁿ(x) = fⁿ(y)` for some
/// `n`. Checked for all pairs up to `|M|²` steps, after which the pair orbit
/// has cycled. Returns the unique fixed point, or a pair that never meets.
pub fn monoid_fixed_point(
    m: &FiniteMonoid,
    f: &[usize],
) -> Result<Verdict<usize, (usize, usize)>, NumericError> {
    let n = m.len();
    check_self_map(n, f)?;
    for x in 0..n {
        for y in x + 1..n {
            let (mut a, mut b) = (x, y);
            let mut met = false;
            for _ in 0..=n * n {
                if a == b {
                    met = true;
                    break;
                }
                a = f[a];
                b = f[b];
            }
            if !met {
                return Ok(Verdict::Refuted((x, y)));
            }
        }
    }
    let z = (0..n).fold(m.neutral(), |x, _| f[x]);
    let fixed: Vec<usize> = (0..n).filter(|&x| f[x] == x).collect();
    if fixed != [z] {
        return Err(NumericError::Invalid(format!(
            "orbits meet but the fixed points are {fixed:?}"
        )));
    }
    Ok(Verdict::Proved(z))
}

/// A neighbourhood `V` of `e` such that every translate `z·V` lies in one
/// element of the cover. On a discrete monoid `V = {e}` always works; `V = M`
/// is returned when `M` itself is an element.
pub fn monoid_lebesgue(m: &FiniteMonoid, cover: &[Vec<usize>]) -> Result<Vec<usize>, NumericError> {
    if cover.is_empty() {
        return Err(NumericError::EmptyCover);
    }
    let n = m.len();
    if let Some(x) = (0..n).find(|x| !cover.iter().any(|u| u.contains(x))) {
        return Err(NumericError::Invalid(format!("element {x} is not covered")));
    }
    let whole: Vec<usize> = (0..n).collect();
    let v = if cover.iter().any(|u| whole.iter().all(|x| u.contains(x))) {
        whole
    } else {
        vec![m.neutral()]
    };
    for z in 0..n {
        let zv = m.translate(z, &v);
        if !cover.iter().any(|u| zv.iter().all(|x| u.contains(x))) {
            return Err(NumericError::Invalid(format!("translate {z}·V is not absorbed")));
        }
    }
    Ok(v)
}

/// A finite metric space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricGrid {
    labels: Vec<String>,
    dist: Vec<Vec<f64>>,
}

impl MetricGrid {
    /// Checks the metric axioms up to [`TOL`].
    pub fn new(labels: Vec<String>, dist: Vec<Vec<f64>>) -> Result<Self, NumericError> {
        let n = labels.len();
        if n == 0 || dist.len() != n || dist.iter().any(|r| r.len() != n) {
            return Err(NumericError::NotAMetric("table shape".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let d = dist[i][j];
                if !d.is_finite() || d < 0.0 || (d == 0.0) != (i == j) {
                    return Err(NumericError::NotAMetric(format!("d({i}, {j}) = {d}")));
                }
                if (d - dist[j][i]).abs() > TOL {
                    return Err(NumericError::NotAMetric(format!("asymmetric at ({i}, {j})")));
                }
                for (k, via) in dist.iter().enumerate() {
                    if d > dist[i][k] + via[j] + TOL {
                        return Err(NumericError::NotAMetric(format!(
                            "triangle fails at ({i}, {k}, {j})"
                        )));
                    }
                }
            }
        }
        Ok(MetricGrid { labels, dist })
    }

    /// Distinct reals with `d(a, b) = |a - b|`.
    pub fn from_reals(values: &[f64]) -> Result<Self, NumericError> {
        MetricGrid::new(
            values.iter().map(|v| v.to_string()).collect(),
            values
                .iter()
                .map(|a| values.iter().map(|b| (a - b).abs()).collect())
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum BeerResult {
    Found { point: usize, steps: usize },
    /// `liminf` is the least consecutive distance over the orbit's tail.
    NotFound { bound: usize, liminf: f64 },
}

/// Tracks `d(fⁿx₀, fⁿ⁺¹x₀)` for `n < bound`. On a finite space a zero
/// liminf means the distance hits zero, at a fixed point.
pub fn beer_check(
    g: &MetricGrid,
    f: &[usize],
    x0: usize,
    bound: usize,
) -> Result<BeerResult, NumericError> {
    let n = g.len();
    check_self_map(n, f)?;
    if x0 >= n {
        return Err(NumericError::Invalid(format!("start {x0} is not a grid point")));
    }
    let bound = bound.max(1);
    let tail_start = n.min(bound / 2);
    let mut liminf = f64::INFINITY;
    let mut x = x0;
    for steps in 0..bound {
        let d = g.d(x, f[x]);
        if d == 0.0 {
            return Ok(BeerResult::Found { point: x, steps });
        }
        if steps >= tail_start {
            liminf = liminf.min(d);
        }
        x = f[x];
    }
    Ok(BeerResult::NotFound { bound, liminf })
}
