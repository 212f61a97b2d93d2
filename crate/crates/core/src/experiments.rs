//! Numerical experiments on the principal eigenvalue `λ₁^ω(x₀,y₀)`: landscapes
//! over the rotation center, curves in `ω`, eigenvalue counting, the
//! comparison bound and the half-plane reflection test.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{check_omega, fk_reverse_bound, BoundReport};
use crate::discretize::{assemble_operator, build_grid, eigenfunction_centroid, Grid};
use crate::eigensolve::{count_below, lowest_eigenpairs_with, Spectrum, SolverOptions, Strategy};
use crate::geometry::{mirror_subset_check, BoundingBox, Domain, HalfplaneCut, Point, StarBoundary};
use crate::{Error, Result};

/// Settings shared by all experiments.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentOptions {
    pub tol: f64,
    pub seed: u64,
    /// Worker threads for independent samples; 0 picks the rayon default.
    pub jobs: usize,
}

impl Default for ExperimentOptions {
    fn default() -> Self {
        ExperimentOptions {
            tol: 1e-9,
            seed: 0x5eed,
            jobs: 0,
        }
    }
}

impl ExperimentOptions {
    /// Differences below this are treated as ties.
    pub fn tie(&self) -> f64 {
        10.0 * self.tol
    }

    fn solver(&self, want_vectors: bool) -> SolverOptions {
        SolverOptions {
            strategy: Strategy::ShiftInvert,
            want_vectors,
            seed: self.seed,
            ..SolverOptions::default()
        }
    }

    fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        Ok(pool.install(f))
    }
}

/// Lowest eigenpair of `H_ω` about `center` on a prepared grid.
pub fn ground_state(
    grid: &Grid,
    omega: f64,
    center: Point,
    opts: &ExperimentOptions,
    want_vector: bool,
) -> Result<Spectrum> {
    let op = assemble_operator(grid, omega, center)?;
    lowest_eigenpairs_with(&op, 1, opts.tol, &opts.solver(want_vector))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Free,
    Inner,
}

/// Sample classification from the eight lattice neighbours.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointClass {
    Max,
    Min,
    Saddle,
    /// Would be an extremum but for a tie with a neighbour.
    Flat,
    Regular,
    /// Lattice sample without a full neighbour ring.
    Edge,
    /// Extra sample on the domain boundary (inner mode).
    Boundary,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CenterSample {
    pub index: usize,
    pub lattice: Option<(usize, usize)>,
    pub center: Point,
    /// `NaN` when the solve failed.
    pub lambda: f64,
    pub residual: f64,
    pub degenerate: bool,
    pub class: PointClass,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stationary {
    pub index: usize,
    pub class: PointClass,
    pub center: Point,
    pub lambda: f64,
    /// Centered finite-difference gradient on the scan lattice.
    pub gradient: (f64, f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayCheck {
    pub direction: Point,
    pub centers: Vec<Point>,
    pub lambdas: Vec<f64>,
    pub decreasing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Refinement {
    pub center: Point,
    pub lambda: f64,
    pub evaluations: usize,
}

/// Landscape `(x₀,y₀) ↦ λ₁^ω(x₀,y₀)` sampled on a window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CenterScan {
    pub mode: ScanMode,
    pub omega: f64,
    pub h: f64,
    pub step: f64,
    pub window: BoundingBox,
    pub lattice: (usize, usize),
    pub tolerance: f64,
    pub tie: f64,
    pub samples: Vec<CenterSample>,
    pub failed: usize,
    pub argmax: usize,
    pub stationary: Vec<Stationary>,
    pub interior_maxima: usize,
    pub interior_minima: usize,
    pub saddles: usize,
    pub flats: usize,
    /// Free mode only: samples beyond the window edge along ±x and ±y.
    pub rays: Vec<RayCheck>,
    pub rays_decreasing: bool,
    pub argmax_centroid: Point,
    pub centroid_offset: f64,
    pub centroid_ok: bool,
    pub refined: Option<Refinement>,
    /// `λ₁^D` of the same grid (ω = 0).
    pub dirichlet: f64,
    /// `max(λ₁^ω − λ₁^D)` over the samples.
    pub max_excess: f64,
    /// Per-sample solve time; kept out of the persisted tables.
    #[serde(skip)]
    pub seconds: Vec<f64>,
}

impl CenterScan {
    pub fn argmax_sample(&self) -> &CenterSample {
        &self.samples[self.argmax]
    }
}

fn lattice_axis(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if n == 1 {
        return vec![lo];
    }
    let span = (n - 1) as f64 * step;
    (0..n).map(|i| lo + span * i as f64 / (n - 1) as f64).collect()
}

struct Solved {
    lambda: f64,
    residual: f64,
    degenerate: bool,
    error: Option<String>,
    seconds: f64,
}

fn solve_at(grid: &Grid, omega: f64, c: Point, opts: &ExperimentOptions) -> Solved {
    let t = Instant::now();
    match ground_state(grid, omega, c, opts, false) {
        Ok(s) => Solved {
            lambda: s.ground(),
            residual: s.residuals[0],
            degenerate: s.degenerate,
            error: None,
            seconds: t.elapsed().as_secs_f64(),
        },
        Err(e) => Solved {
            lambda: f64::NAN,
            residual: f64::NAN,
            degenerate: false,
            error: Some(e.to_string()),
            seconds: t.elapsed().as_secs_f64(),
        },
    }
}

/// Ring order E, NE, N, NW, W, SW, S, SE.
const RING: [(i64, i64); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];

fn classify(values: &[f64], at: (usize, usize), dims: (usize, usize), lookup: &[Option<usize>], tie: f64) -> PointClass {
    let idx = |i: i64, j: i64| -> Option<usize> {
        if i < 0 || j < 0 || i >= dims.0 as i64 || j >= dims.1 as i64 {
            return None;
        }
        lookup[i as usize * dims.1 + j as usize]
    };
    let me = idx(at.0 as i64, at.1 as i64).expect("sample exists");
    let v = values[me];
    if v.is_nan() {
        return PointClass::Failed;
    }
    let mut signs = [0i8; 8];
    for (s, (di, dj)) in signs.iter_mut().zip(RING) {
        let Some(q) = idx(at.0 as i64 + di, at.1 as i64 + dj) else {
            return PointClass::Edge;
        };
        let d = values[q] - v;
        if d.is_nan() {
            return PointClass::Edge;
        }
        *s = if d > tie {
            1
        } else if d < -tie {
            -1
        } else {
            0
        };
    }
    let up = signs.iter().filter(|&&s| s > 0).count();
    let down = signs.iter().filter(|&&s| s < 0).count();
    match (up, down) {
        (0, 8) => PointClass::Max,
        (8, 0) => PointClass::Min,
        (0, _) | (_, 0) => PointClass::Flat,
        _ => {
            let nz: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
            let changes = (0..nz.len()).filter(|&k| nz[k] != nz[(k + 1) % nz.len()]).count();
            if changes >= 4 {
                PointClass::Saddle
            } else {
                PointClass::Regular
            }
        }
    }
}

/// Samples `λ₁^ω` over rotation centers on `window` with spacing `step`.
///
/// Free mode scans the whole window (which must contain the domain) and also
/// follows four rays outward from the window edges. Inner mode keeps centers
/// in the closed domain, adding samples on the boundary.
pub fn center_scan(
    domain: &Domain,
    omega: f64,
    window: BoundingBox,
    step: f64,
    h: f64,
    mode: ScanMode,
    opts: &ExperimentOptions,
) -> Result<CenterScan> {
    check_omega(omega)?;
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidArgument(format!("scan step must be positive, got {step}")));
    }
    if !(window.xmin < window.xmax && window.ymin < window.ymax) {
        return Err(Error::InvalidArgument("scan window is empty".into()));
    }
    let bbox = domain.bounding_box();
    if mode == ScanMode::Free
        && !(window.contains(Point::new(bbox.xmin, bbox.ymin)) && window.contains(Point::new(bbox.xmax, bbox.ymax)))
    {
        return Err(Error::InvalidArgument(
            "free-mode window must contain the domain's bounding box".into(),
        ));
    }
    let xs = lattice_axis(window.xmin, window.xmax, step);
    let ys = lattice_axis(window.ymin, window.ymax, step);
    let dims = (xs.len(), ys.len());
    if dims.0 * dims.1 > 1_000_000 {
        return Err(Error::InvalidArgument("scan has more than 1e6 samples".into()));
    }
    let grid = build_grid(domain, h)?;

    let mut centers: Vec<(Option<(usize, usize)>, Point)> = Vec::new();
    let mut lookup = vec![None; dims.0 * dims.1];
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            let c = Point::new(x, y);
            if mode == ScanMode::Inner && !domain.contains(c) {
                continue;
            }
            lookup[i * dims.1 + j] = Some(centers.len());
            centers.push((Some((i, j)), c));
        }
    }
    if mode == ScanMode::Inner {
        for c in domain.boundary_points(step) {
            if window.contains(c) {
                centers.push((None, c));
            }
        }
    }
    if centers.is_empty() {
        return Err(Error::InvalidArgument("no scan samples inside the window".into()));
    }

    let solved: Vec<Solved> =
        opts.run(|| centers.par_iter().map(|(_, c)| solve_at(&grid, omega, *c, opts)).collect())?;
    let values: Vec<f64> = solved.iter().map(|s| s.lambda).collect();
    let tie = opts.tie();

    let mut samples: Vec<CenterSample> = centers
        .iter()
        .zip(&solved)
        .enumerate()
        .map(|(index, ((lattice, c), s))| CenterSample {
            index,
            lattice: *lattice,
            center: *c,
            lambda: s.lambda,
            residual: s.residual,
            degenerate: s.degenerate,
            class: PointClass::Boundary,
            error: s.error.clone(),
        })
        .collect();
    for s in samples.iter_mut() {
        s.class = match s.lattice {
            _ if s.error.is_some() => PointClass::Failed,
            Some(at) => classify(&values, at, dims, &lookup, tie),
            None => PointClass::Boundary,
        };
    }
    let failed = samples.iter().filter(|s| s.error.is_some()).count();
    let argmax = samples
        .iter()
        .filter(|s| s.error.is_none())
        .fold(None::<&CenterSample>, |best, s| match best {
            Some(b) if b.lambda >= s.lambda => Some(b),
            _ => Some(s),
        })
        .map(|s| s.index)
        .ok_or_else(|| Error::NoConvergence {
            iterations: 0,
            residuals: vec![],
        })?;

    let value_at = |i: i64, j: i64| -> Option<f64> {
        if i < 0 || j < 0 || i >= dims.0 as i64 || j >= dims.1 as i64 {
            return None;
        }
        lookup[i as usize * dims.1 + j as usize].map(|q| values[q])
    };
    let sx = if dims.0 > 1 { xs[1] - xs[0] } else { step };
    let sy = if dims.1 > 1 { ys[1] - ys[0] } else { step };
    let stationary: Vec<Stationary> = samples
        .iter()
        .filter(|s| matches!(s.class, PointClass::Max | PointClass::Min | PointClass::Saddle | PointClass::Flat))
        .map(|s| {
            let (i, j) = s.lattice.expect("lattice sample");
            let (i, j) = (i as i64, j as i64);
            let gx = (value_at(i + 1, j).unwrap() - value_at(i - 1, j).unwrap()) / (2.0 * sx);
            let gy = (value_at(i, j + 1).unwrap() - value_at(i, j - 1).unwrap()) / (2.0 * sy);
            Stationary {
                index: s.index,
                class: s.class,
                center: s.center,
                lambda: s.lambda,
                gradient: (gx, gy),
            }
        })
        .collect();
    let count = |c: PointClass| samples.iter().filter(|s| s.class == c).count();

    let mut rays = Vec::new();
    if mode == ScanMode::Free {
        let mid = Point::new(0.5 * (window.xmin + window.xmax), 0.5 * (window.ymin + window.ymax));
        let spacing = step.max(domain.diameter() / 4.0);
        let dirs = [Point::new(1.0, 0.0), Point::new(-1.0, 0.0), Point::new(0.0, 1.0), Point::new(0.0, -1.0)];
        let mut ray_centers = Vec::new();
        for d in dirs {
            let edge = if d.x != 0.0 { 0.5 * window.width() } else { 0.5 * window.height() };
            let pts: Vec<Point> = (0..6)
                .map(|k| {
                    let t = edge + k as f64 * spacing;
                    Point::new(mid.x + t * d.x, mid.y + t * d.y)
                })
                .collect();
            ray_centers.push((d, pts));
        }
        let flat: Vec<Point> = ray_centers.iter().flat_map(|(_, p)| p.clone()).collect();
        let ray_vals: Vec<Solved> =
            opts.run(|| flat.par_iter().map(|c| solve_at(&grid, omega, *c, opts)).collect())?;
        for (r, (d, pts)) in ray_centers.into_iter().enumerate() {
            let lambdas: Vec<f64> = ray_vals[6 * r..6 * r + 6].iter().map(|s| s.lambda).collect();
            let decreasing = lambdas.windows(2).all(|w| w[1] < w[0] - tie);
            rays.push(RayCheck {
                direction: d,
                centers: pts,
                lambdas,
                decreasing,
            });
        }
    }
    let rays_decreasing = rays.iter().all(|r| r.decreasing);

    let top = &samples[argmax];
    let spectrum = ground_state(&grid, omega, top.center, opts, true)?;
    let u = &spectrum.eigenvectors.as_ref().expect("vectors requested")[0];
    let centroid = eigenfunction_centroid(&grid, u)?;
    let centroid_offset = centroid.dist(top.center);

    let refined = if top.class == PointClass::Max {
        Some(nelder_mead(&grid, domain, omega, top.center, 0.5 * step, mode, opts))
    } else {
        None
    };

    let dirichlet = ground_state(&grid, 0.0, domain.center(), opts, false)?.ground();
    let max_excess = values
        .iter()
        .filter(|v| !v.is_nan())
        .map(|v| v - dirichlet)
        .fold(f64::NEG_INFINITY, f64::max);

    Ok(CenterScan {
        mode,
        omega,
        h,
        step,
        window,
        lattice: dims,
        tolerance: opts.tol,
        tie,
        failed,
        argmax,
        interior_maxima: count(PointClass::Max),
        interior_minima: count(PointClass::Min),
        saddles: count(PointClass::Saddle),
        flats: count(PointClass::Flat),
        stationary,
        rays,
        rays_decreasing,
        argmax_centroid: centroid,
        centroid_offset,
        centroid_ok: centroid_offset <= h.max(step),
        refined,
        dirichlet,
        max_excess,
        seconds: solved.iter().map(|s| s.seconds).collect(),
        samples,
    })
}

/// Nelder–Mead ascent of `λ₁` around a discrete maximum.
fn nelder_mead(
    grid: &Grid,
    domain: &Domain,
    omega: f64,
    start: Point,
    size: f64,
    mode: ScanMode,
    opts: &ExperimentOptions,
) -> Refinement {
    let mut evaluations = 0;
    let mut f = |p: [f64; 2]| -> f64 {
        let c = Point::new(p[0], p[1]);
        if mode == ScanMode::Inner && !domain.contains(c) {
            return f64::INFINITY;
        }
        evaluations += 1;
        let v = solve_at(grid, omega, c, opts).lambda;
        if v.is_nan() {
            f64::INFINITY
        } else {
            -v
        }
    };
    let mut simplex = [
        [start.x, start.y],
        [start.x + size, start.y],
        [start.x, start.y + size],
    ];
    let mut vals = simplex.map(&mut f);
    for _ in 0..60 {
        let mut order = [0, 1, 2];
        order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        simplex = order.map(|i| simplex[i]);
        vals = order.map(|i| vals[i]);
        let diameter = (1..3)
            .map(|k| (simplex[k][0] - simplex[0][0]).hypot(simplex[k][1] - simplex[0][1]))
            .fold(0.0, f64::max);
        if diameter < 1e-4 * size.max(1e-12) || (vals[2] - vals[0]).abs() < opts.tol {
            break;
        }
        let centroid = [0.5 * (simplex[0][0] + simplex[1][0]), 0.5 * (simplex[0][1] + simplex[1][1])];
        let along = |t: f64| [centroid[0] + t * (simplex[2][0] - centroid[0]), centroid[1] + t * (simplex[2][1] - centroid[1])];
        let reflected = along(-1.0);
        let fr = f(reflected);
        if fr < vals[0] {
            let expanded = along(-2.0);
            let fe = f(expanded);
            if fe < fr {
                simplex[2] = expanded;
                vals[2] = fe;
            } else {
                simplex[2] = reflected;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            simplex[2] = reflected;
            vals[2] = fr;
        } else {
            let contracted = along(0.5);
            let fc = f(contracted);
            if fc < vals[2] {
                simplex[2] = contracted;
                vals[2] = fc;
            } else {
                for k in 1..3 {
                    simplex[k] = [
                        0.5 * (simplex[0][0] + simplex[k][0]),
                        0.5 * (simplex[0][1] + simplex[k][1]),
                    ];
                    vals[k] = f(simplex[k]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&a, &b| vals[a].total_cmp(&vals[b])).expect("three vertices");
    Refinement {
        center: Point::new(simplex[best][0], simplex[best][1]),
        lambda: -vals[best],
        evaluations,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaSample {
    pub index: usize,
    pub omega: f64,
    pub lambda: f64,
    pub residual: f64,
    pub degenerate: bool,
    pub error: Option<String>,
}

/// The curve `ω ↦ λ₁^ω` about a fixed center.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaScan {
    pub center: Point,
    pub h: f64,
    pub tolerance: f64,
    pub samples: Vec<OmegaSample>,
    /// First positive sample `δ`.
    pub delta: f64,
    /// `(λ₁(δ) − λ₁(0))/δ`.
    pub a_est: f64,
    /// `(λ₁(2δ) − 2λ₁(δ) + λ₁(0))/δ²`.
    pub b_est: f64,
    /// The maximum over the list sits at `ω = 0` within the tie tolerance.
    pub max_at_zero: bool,
    /// `min_{ω>0} (λ₁(0) − λ₁(ω))`.
    pub min_margin: f64,
    #[serde(skip)]
    pub seconds: Vec<f64>,
}

pub fn omega_scan(
    domain: &Domain,
    center: Point,
    omegas: &[f64],
    h: f64,
    opts: &ExperimentOptions,
) -> Result<OmegaScan> {
    if omegas.len() < 2 || omegas[0] != 0.0 {
        return Err(Error::InvalidArgument(
            "omega list must start at 0 and hold a positive value".into(),
        ));
    }
    if omegas.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidArgument("omega list must be strictly ascending".into()));
    }
    for &w in omegas {
        check_omega(w)?;
    }
    let grid = build_grid(domain, h)?;
    let delta = omegas[1];
    let mut all: Vec<f64> = omegas.to_vec();
    let extra = !omegas.contains(&(2.0 * delta));
    if extra {
        all.push(2.0 * delta);
    }
    let solved: Vec<Solved> =
        opts.run(|| all.par_iter().map(|&w| solve_at(&grid, w, center, opts)).collect())?;
    let lam = |w: f64| {
        let i = all.iter().position(|&v| v == w).expect("sampled");
        solved[i].lambda
    };
    let (l0, l1, l2) = (lam(0.0), lam(delta), lam(2.0 * delta));
    let samples: Vec<OmegaSample> = omegas
        .iter()
        .zip(&solved)
        .enumerate()
        .map(|(index, (&omega, s))| OmegaSample {
            index,
            omega,
            lambda: s.lambda,
            residual: s.residual,
            degenerate: s.degenerate,
            error: s.error.clone(),
        })
        .collect();
    let tie = opts.tie();
    let max = samples.iter().map(|s| s.lambda).fold(f64::NEG_INFINITY, f64::max);
    let min_margin = samples[1..]
        .iter()
        .map(|s| l0 - s.lambda)
        .fold(f64::INFINITY, f64::min);
    Ok(OmegaScan {
        center,
        h,
        tolerance: opts.tol,
        delta,
        a_est: (l1 - l0) / delta,
        b_est: (l2 - 2.0 * l1 + l0) / (delta * delta),
        max_at_zero: l0 >= max - tie,
        min_margin,
        seconds: solved[..omegas.len()].iter().map(|s| s.seconds).collect(),
        samples,
    })
}

/// Eigenvalue counts `N(λ)` against the leading Weyl term `|Ω|λ/(4π)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylReport {
    pub omega: f64,
    pub h: f64,
    pub n: usize,
    pub area: f64,
    pub thresholds: Vec<f64>,
    pub counts: Vec<usize>,
    /// `N(λ)·4π/(|Ω|λ)`.
    pub ratios: Vec<f64>,
    /// Least-squares fit `ratio ≈ limit + slope·λ^{−1/2}`.
    pub fitted_limit: f64,
    pub fitted_slope: f64,
    pub counts_monotone: bool,
}

pub fn weyl_check(domain: &Domain, omega: f64, lambda_max: f64, h: f64, ladder: usize) -> Result<WeylReport> {
    check_omega(omega)?;
    if !(lambda_max.is_finite() && lambda_max > 0.0) || ladder < 2 {
        return Err(Error::InvalidArgument(
            "need a positive threshold and at least two ladder rungs".into(),
        ));
    }
    let grid = build_grid(domain, h)?;
    let op = assemble_operator(&grid, omega, domain.center())?;
    let count = |l: f64| -> Result<usize> {
        let mut lam = l;
        for _ in 0..4 {
            match count_below(&op, lam) {
                Err(Error::SingularShift(_)) => lam *= 1.0 + 1e-9,
                other => return other,
            }
        }
        count_below(&op, lam)
    };
    let top = count(lambda_max)?;
    if top * 10 > op.n() {
        return Err(Error::InvalidArgument(format!(
            "N({lambda_max}) = {top} exceeds n/10 = {}; refine the grid",
            op.n() / 10
        )));
    }
    let area = domain.area();
    let thresholds: Vec<f64> = (1..=ladder).map(|i| lambda_max * i as f64 / ladder as f64).collect();
    let counts = thresholds.iter().map(|&l| count(l)).collect::<Result<Vec<_>>>()?;
    let ratios: Vec<f64> = thresholds
        .iter()
        .zip(&counts)
        .map(|(&l, &c)| c as f64 * 4.0 * std::f64::consts::PI / (area * l))
        .collect();
    let (fitted_limit, fitted_slope) = fit_line(
        &thresholds.iter().map(|l| l.powf(-0.5)).collect::<Vec<_>>(),
        &ratios,
    );
    Ok(WeylReport {
        omega,
        h,
        n: op.n(),
        area,
        counts_monotone: counts.windows(2).all(|w| w[0] <= w[1]),
        thresholds,
        counts,
        ratios,
        fitted_limit,
        fitted_slope,
    })
}

/// Ordinary least squares `y ≈ a + b x`.
fn fit_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let b = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (my - b * mx, b)
}

/// Measured `λ₁` against the comparison-bound right-hand side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub h: f64,
    pub lambda_h: f64,
    pub lambda_half: f64,
    pub allowance: f64,
    pub report: BoundReport,
    /// `RHS − λ₁` at the finer spacing.
    pub margin: f64,
    pub passed: bool,
}

pub fn bound_check(boundary: &StarBoundary, omega: f64, h: f64, opts: &ExperimentOptions) -> Result<BoundCheck> {
    if !boundary.is_convex() {
        return Err(Error::InvalidArgument("the bound check needs a convex domain".into()));
    }
    let report = fk_reverse_bound(boundary, omega)?;
    let domain = Domain::star(boundary.clone());
    let coarse = build_grid(&domain, h)?;
    let fine = build_grid(&domain, 0.5 * h)?;
    let lambda_h = ground_state(&coarse, omega, domain.center(), opts, false)?.ground();
    let lambda_half = ground_state(&fine, omega, domain.center(), opts, false)?.ground();
    let allowance = 3.0 * (lambda_h - lambda_half).abs();
    let margin = report.rhs - lambda_half;
    Ok(BoundCheck {
        h,
        lambda_h,
        lambda_half,
        allowance,
        margin,
        passed: margin >= -allowance,
        report,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfplaneReport {
    pub omega_small: f64,
    pub spectral_gap: f64,
    pub h: f64,
    pub step: f64,
    pub argmax: Point,
    pub argmax_lambda: f64,
    pub argmax_in_first_part: bool,
    pub samples: usize,
    pub passed: bool,
}

/// For a convex domain and a cut whose first part mirrors into the domain,
/// checks that the inner-mode argmax of `λ₁^ω` at small `ω` avoids the first part.
pub fn halfplane_check(
    domain: &Domain,
    cut: &HalfplaneCut,
    omega_small: f64,
    h: f64,
    opts: &ExperimentOptions,
) -> Result<HalfplaneReport> {
    check_omega(omega_small)?;
    if !domain.is_convex() {
        return Err(Error::InvalidArgument("the half-plane check needs a convex domain".into()));
    }
    if !mirror_subset_check(domain, cut, 4000)? {
        return Err(Error::CutInvalid(
            "the mirror image of the first part leaves the domain".into(),
        ));
    }
    let grid = build_grid(domain, h)?;
    let op = assemble_operator(&grid, 0.0, domain.center())?;
    let s = lowest_eigenpairs_with(&op, 1, opts.tol, &opts.solver(false))?;
    let gap = s.next_eigenvalue - s.ground();
    if omega_small > 0.5 * gap {
        return Err(Error::InvalidArgument(format!(
            "omega {omega_small} exceeds half the spectral gap {gap:.6}"
        )));
    }
    let step = domain.diameter() / 20.0;
    let scan = center_scan(
        domain,
        omega_small,
        domain.bounding_box(),
        step,
        h,
        ScanMode::Inner,
        opts,
    )?;
    let top = scan.argmax_sample();
    let inside = cut.on_first_side(top.center);
    Ok(HalfplaneReport {
        omega_small,
        spectral_gap: gap,
        h,
        step,
        argmax: top.center,
        argmax_lambda: top.lambda,
        argmax_in_first_part: inside,
        samples: scan.samples.len(),
        passed: !inside,
    })
}
