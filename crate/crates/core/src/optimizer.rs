//! Derivative-free constrained maximization.
//!
//! Every scheme evaluator maximizes a min-of-branches objective, which is
//! continuous but not smooth. The search is a feasibility-filtered grid scan
//! followed by Nelder-Mead refinement started from the best grid points.
//!
//! Constraints come in three kinds: box bounds per coordinate, quadratic
//! groups (`sum of x_i^2 <= 1` over an index set) and arbitrary coupled
//! predicates. During refinement candidates are clipped onto the box and
//! quadratic groups are rescaled onto the unit ball, so refinement never
//! leaves the feasible set except through coupled predicates, for which the
//! objective sees `-inf`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Slack allowed when checking any constraint.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-12;

/// Initial simplex size of the final refinement, relative to the grid step.
const POLISH_STEP: f64 = 0.25;

#[derive(Debug, Clone, PartialEq)]
pub struct Dim {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
}

type Predicate = Box<dyn Fn(&[f64]) -> bool + Send + Sync>;

pub struct CoupledConstraint {
    pub name: String,
    predicate: Predicate,
}

impl CoupledConstraint {
    pub fn holds(&self, point: &[f64]) -> bool {
        (self.predicate)(point)
    }
}

impl fmt::Debug for CoupledConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoupledConstraint").field("name", &self.name).finish()
    }
}

/// Search domain of a maximization.
#[derive(Debug, Default)]
pub struct ParamSpace {
    pub dims: Vec<Dim>,
    pub quadratic_groups: Vec<Vec<usize>>,
    pub coupled_constraints: Vec<CoupledConstraint>,
}

impl ParamSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(mut self, name: impl Into<String>, lower: f64, upper: f64) -> Self {
        self.dims.push(Dim { name: name.into(), lower, upper });
        self
    }

    /// Adds the constraint `sum_{i in indices} x_i^2 <= 1`.
    pub fn quadratic_group(mut self, indices: &[usize]) -> Self {
        self.quadratic_groups.push(indices.to_vec());
        self
    }

    pub fn coupled(
        mut self,
        name: impl Into<String>,
        predicate: impl Fn(&[f64]) -> bool + Send + Sync + 'static,
    ) -> Self {
        self.coupled_constraints.push(CoupledConstraint {
            name: name.into(),
            predicate: Box::new(predicate),
        });
        self
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        for d in &self.dims {
            if !(d.lower.is_finite() && d.upper.is_finite()) {
                return Err(Error::InvalidSpace(format!("bounds of `{}` must be finite", d.name)));
            }
            if d.lower > d.upper {
                return Err(Error::InvalidSpace(format!(
                    "`{}` has lower bound {} above upper bound {}",
                    d.name, d.lower, d.upper
                )));
            }
        }
        for group in &self.quadratic_groups {
            if let Some(&i) = group.iter().find(|&&i| i >= self.dims.len()) {
                return Err(Error::InvalidSpace(format!(
                    "quadratic group index {i} out of range for {} dimensions",
                    self.dims.len()
                )));
            }
        }
        Ok(())
    }

    /// Clip onto the box, then pull every quadratic group back onto the
    /// unit ball. Coupled predicates are not touched.
    fn project(&self, point: &mut [f64]) {
        for (x, d) in point.iter_mut().zip(&self.dims) {
            *x = x.clamp(d.lower, d.upper);
        }
        for group in &self.quadratic_groups {
            let s: f64 = group.iter().map(|&i| point[i] * point[i]).sum();
            if s > 1.0 {
                let scale = 1.0 / s.sqrt();
                for &i in group {
                    point[i] *= scale;
                }
            }
        }
    }

    fn in_quadratic_groups(&self, point: &[f64]) -> bool {
        self.quadratic_groups.iter().all(|group| {
            group.iter().map(|&i| point[i] * point[i]).sum::<f64>() <= 1.0 + FEASIBILITY_TOLERANCE
        })
    }
}

/// Knobs of [`maximize`].
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    /// Grid spacing as a fraction of each coordinate's box width.
    pub grid_resolution: f64,
    pub refine_iterations: usize,
    pub refine_tolerance: f64,
    pub multistart_count: usize,
    /// Upper limit on grid size. Above it the per-coordinate point count is
    /// reduced uniformly until the product fits.
    pub max_grid_points: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            grid_resolution: 0.05,
            refine_iterations: 200,
            refine_tolerance: 1e-6,
            multistart_count: 8,
            max_grid_points: 250_000,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.grid_resolution > 0.0 && self.grid_resolution <= 1.0) {
            return Err(Error::InvalidSpace(format!(
                "grid resolution must lie in (0, 1], got {}",
                self.grid_resolution
            )));
        }
        if self.refine_iterations == 0 || self.multistart_count == 0 || self.max_grid_points == 0 {
            return Err(Error::InvalidSpace("optimizer counts must be at least 1".into()));
        }
        if !(self.refine_tolerance > 0.0) {
            return Err(Error::InvalidSpace("refine tolerance must be positive".into()));
        }
        Ok(())
    }

    /// Grid points per coordinate for a box of `dims` coordinates.
    pub fn points_per_dim(&self, dims: usize) -> usize {
        let full = (1.0 / self.grid_resolution).round() as usize + 1;
        if dims == 0 {
            return 1;
        }
        let budget_per_dim = (self.max_grid_points as f64).powf(1.0 / dims as f64).floor() as usize;
        full.min(budget_per_dim.max(2))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Maximum {
    pub value: f64,
    pub argmax: Vec<f64>,
}

/// True iff `point` satisfies all box bounds, quadratic groups and coupled
/// predicates of `space`.
pub fn feasible(point: &[f64], space: &ParamSpace) -> Result<bool> {
    if point.len() != space.len() {
        return Err(Error::DimensionMismatch { expected: space.len(), got: point.len() });
    }
    let in_box = point.iter().zip(&space.dims).all(|(&x, d)| {
        x >= d.lower - FEASIBILITY_TOLERANCE && x <= d.upper + FEASIBILITY_TOLERANCE
    });
    Ok(in_box
        && space.in_quadratic_groups(point)
        && space.coupled_constraints.iter().all(|c| c.holds(point)))
}

/// Orders candidates by value, then prefers the lexicographically smaller
/// point. `Greater` means `a` is the better candidate.
fn compare_candidates(a: &Maximum, b: &Maximum) -> Ordering {
    a.value.total_cmp(&b.value).then_with(|| {
        for (x, y) in a.argmax.iter().zip(&b.argmax) {
            match x.total_cmp(y) {
                Ordering::Equal => continue,
                other => return other.reverse(),
            }
        }
        Ordering::Equal
    })
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

/// Maximizes `objective` over `space`.
///
/// The objective must return `-inf` on infeasible points and be
/// deterministic. The result is at least as good as the best feasible grid
/// point and ties are broken towards the lexicographically smallest argmax.
pub fn maximize<F>(objective: F, space: &ParamSpace, cfg: &OptimizerConfig) -> Result<Maximum>
where
    F: Fn(&[f64]) -> f64,
{
    space.validate()?;
    cfg.validate()?;
    let n = space.len();
    if n == 0 {
        let value = sanitize(objective(&[]));
        if value == f64::NEG_INFINITY {
            return Err(Error::InfeasibleSpace);
        }
        return Ok(Maximum { value, argmax: Vec::new() });
    }

    let full: Vec<(f64, f64)> = space.dims.iter().map(|d| (d.lower, d.upper)).collect();
    let starts = grid_scan(&objective, space, cfg, &full)?;
    let best = refine_all(&objective, space, cfg, &starts, 1.0).swap_remove(0);
    Ok(zoom(&objective, space, cfg, best))
}

/// Scans a grid of the same size on the box of one grid cell around `best`
/// and refines from its top points. Finds narrow peaks that fall between
/// the points of the global grid.
fn zoom<F>(objective: &F, space: &ParamSpace, cfg: &OptimizerConfig, best: Maximum) -> Maximum
where
    F: Fn(&[f64]) -> f64,
{
    let per_dim = cfg.points_per_dim(space.len()).max(2);
    let cell = 1.0 / (per_dim - 1) as f64;
    let local: Vec<(f64, f64)> = space
        .dims
        .iter()
        .zip(&best.argmax)
        .map(|(d, &x)| {
            let half = cell * (d.upper - d.lower);
            ((x - half).max(d.lower), (x + half).min(d.upper))
        })
        .collect();
    let Ok(starts) = grid_scan(objective, space, cfg, &local) else {
        return best;
    };
    let found = refine_all(objective, space, cfg, &starts, 2.0 * cell).swap_remove(0);
    if compare_candidates(&found, &best) == Ordering::Greater {
        found
    } else {
        best
    }
}

/// Refines every start and returns the results, best first.
fn refine_all<F>(objective: &F, space: &ParamSpace, cfg: &OptimizerConfig, starts: &[Maximum], step_scale: f64) -> Vec<Maximum>
where
    F: Fn(&[f64]) -> f64,
{
    let mut refined: Vec<Maximum> = starts
        .iter()
        .map(|start| refine(objective, space, cfg, start, step_scale))
        .collect();
    refined.sort_by(|a, b| compare_candidates(b, a));
    refined
}

/// Like [`maximize`] for an expensive `objective` with a cheap approximation
/// `surrogate`: the grid scan and the multistart refinement run on the
/// surrogate (including the local zoom around its best point), then its
/// best `polish` optima are refined on `objective` with a
/// smaller initial simplex.
///
/// The returned value is the objective at the returned point, and at least the
/// objective at each polished surrogate optimum.
pub fn maximize_with_surrogate<S, F>(
    surrogate: S,
    objective: F,
    space: &ParamSpace,
    cfg: &OptimizerConfig,
    polish: usize,
) -> Result<Maximum>
where
    S: Fn(&[f64]) -> f64,
    F: Fn(&[f64]) -> f64,
{
    space.validate()?;
    cfg.validate()?;
    if space.is_empty() {
        return maximize(objective, space, cfg);
    }
    let full: Vec<(f64, f64)> = space.dims.iter().map(|d| (d.lower, d.upper)).collect();
    let starts = grid_scan(&surrogate, space, cfg, &full)?;
    let mut coarse = refine_all(&surrogate, space, cfg, &starts, 1.0);
    let zoomed = zoom(&surrogate, space, cfg, coarse[0].clone());
    if zoomed.argmax != coarse[0].argmax {
        coarse.insert(0, zoomed);
    }
    let polished: Vec<Maximum> = coarse
        .into_iter()
        .take(polish.max(1))
        .map(|m| Maximum { value: sanitize(objective(&m.argmax)), argmax: m.argmax })
        .collect();
    Ok(refine_all(&objective, space, cfg, &polished, POLISH_STEP).swap_remove(0))
}

/// Top `multistart_count` feasible points of the grid on `bounds`, best
/// first.
fn grid_scan<F>(objective: &F, space: &ParamSpace, cfg: &OptimizerConfig, bounds: &[(f64, f64)]) -> Result<Vec<Maximum>>
where
    F: Fn(&[f64]) -> f64,
{
    let n = space.len();
    let per_dim = cfg.points_per_dim(n);
    let axes: Vec<Vec<f64>> = bounds
        .iter()
        .map(|&(lower, upper)| {
            if upper == lower {
                vec![lower]
            } else {
                (0..per_dim)
                    .map(|k| {
                        if k + 1 == per_dim {
                            upper
                        } else {
                            lower + (upper - lower) * k as f64 / (per_dim - 1) as f64
                        }
                    })
                    .collect()
            }
        })
        .collect();

    let keep = cfg.multistart_count;
    let mut top: Vec<Maximum> = Vec::with_capacity(keep + 1);
    let mut index = vec![0usize; n];
    let mut point: Vec<f64> = axes.iter().map(|a| a[0]).collect();
    'scan: loop {
        if space.in_quadratic_groups(&point) && space.coupled_constraints.iter().all(|c| c.holds(&point)) {
            let value = sanitize(objective(&point));
            if value > f64::NEG_INFINITY {
                // Enumeration is lexicographic, so an equal value never displaces
                // an earlier point.
                let pos = top.iter().position(|m| value > m.value).unwrap_or(top.len());
                if pos < keep {
                    top.insert(pos, Maximum { value, argmax: point.clone() });
                    top.truncate(keep);
                }
            }
        }
        // Odometer with the last coordinate fastest.
        let mut k = n;
        loop {
            if k == 0 {
                break 'scan;
            }
            k -= 1;
            index[k] += 1;
            if index[k] < axes[k].len() {
                point[k] = axes[k][index[k]];
                break;
            }
            index[k] = 0;
            point[k] = axes[k][0];
        }
    }
    if top.is_empty() {
        return Err(Error::InfeasibleSpace);
    }
    Ok(top)
}

/// Nelder-Mead on the projected objective, restarted while it keeps
/// improving.
fn refine<F>(objective: &F, space: &ParamSpace, cfg: &OptimizerConfig, start: &Maximum, step_scale: f64) -> Maximum
where
    F: Fn(&[f64]) -> f64,
{
    let n = space.len();
    let per_dim = cfg.points_per_dim(n).max(2);
    let mut step: Vec<f64> = space
        .dims
        .iter()
        .map(|d| step_scale * (d.upper - d.lower) / (per_dim - 1) as f64)
        .collect();

    let eval = |x: &[f64]| -> (f64, Vec<f64>) {
        let mut p = x.to_vec();
        space.project(&mut p);
        if !space.coupled_constraints.iter().all(|c| c.holds(&p)) {
            return (f64::NEG_INFINITY, p);
        }
        (sanitize(objective(&p)), p)
    };

    let mut best = start.clone();
    let mut budget = cfg.refine_iterations;
    for _restart in 0..4 {
        if budget == 0 {
            break;
        }
        let (found, used) = nelder_mead(&eval, &best.argmax, &step, cfg.refine_tolerance, budget);
        budget = budget.saturating_sub(used);
        let improved = found.value > best.value + cfg.refine_tolerance;
        if compare_candidates(&found, &best) == Ordering::Greater {
            best = found;
        }
        if !improved {
            break;
        }
        for s in step.iter_mut() {
            *s *= 0.25;
        }
    }
    debug_assert_eq!(best.argmax.len(), n);
    best
}

/// Returns the best projected point seen and the iterations used.
fn nelder_mead<E>(eval: &E, x0: &[f64], step: &[f64], tol: f64, max_iter: usize) -> (Maximum, usize)
where
    E: Fn(&[f64]) -> (f64, Vec<f64>),
{
    let n = x0.len();
    // Work with the negated objective so the simplex logic is a minimizer.
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let mut best = {
        let (v, p) = eval(x0);
        Maximum { value: v, argmax: p }
    };
    let record = |value: f64, point: Vec<f64>, best: &mut Maximum| {
        let cand = Maximum { value, argmax: point };
        if compare_candidates(&cand, best) == Ordering::Greater {
            *best = cand;
        }
    };
    simplex.push((x0.to_vec(), -best.value));
    for i in 0..n {
        if step[i] == 0.0 {
            continue;
        }
        let mut x = x0.to_vec();
        x[i] += step[i];
        let (mut v, mut p) = eval(&x);
        if v == f64::NEG_INFINITY {
            x[i] = x0[i] - step[i];
            (v, p) = eval(&x);
        }
        record(v, p, &mut best);
        simplex.push((x, -v));
    }
    let m = simplex.len() - 1;
    if m == 0 {
        return (best, 0);
    }

    let mut iter = 0;
    while iter < max_iter {
        iter += 1;
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let f_best = simplex[0].1;
        let f_worst = simplex[m].1;
        let spread = if f_best.is_finite() && f_worst.is_finite() {
            (f_worst - f_best).abs()
        } else {
            f64::INFINITY
        };
        let size = simplex
            .iter()
            .skip(1)
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread < tol && size < tol {
            break;
        }

        let mut centroid = vec![0.0; n];
        for (x, _) in simplex.iter().take(m) {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / m as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[m].0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(1.0);
        let (vr, pr) = eval(&xr);
        record(vr, pr, &mut best);
        let fr = -vr;
        if fr < simplex[0].1 {
            let xe = along(2.0);
            let (ve, pe) = eval(&xe);
            record(ve, pe, &mut best);
            if -ve < fr {
                simplex[m] = (xe, -ve);
            } else {
                simplex[m] = (xr, fr);
            }
            continue;
        }
        if fr < simplex[m - 1].1 {
            simplex[m] = (xr, fr);
            continue;
        }
        let (xc, t) = if fr < simplex[m].1 { (along(0.5), fr) } else { (along(-0.5), simplex[m].1) };
        let (vc, pc) = eval(&xc);
        record(vc, pc, &mut best);
        if -vc < t {
            simplex[m] = (xc, -vc);
            continue;
        }
        // Shrink towards the best vertex.
        let x_best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let xs: Vec<f64> = x_best.iter().zip(&vertex.0).map(|(b, x)| b + 0.5 * (x - b)).collect();
            let (vs, ps) = eval(&xs);
            record(vs, ps, &mut best);
            *vertex = (xs, -vs);
        }
    }
    (best, iter)
}
