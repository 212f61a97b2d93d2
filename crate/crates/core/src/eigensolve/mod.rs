//! Lowest eigenpairs of sparse Hermitian matrices and eigenvalue counting by
//! Sylvester inertia.

mod band;
mod lanczos;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::discretize::HermitianOperator;
use crate::{Error, Result};

use band::BandLdl;

/// Largest dimension solved densely under [`Strategy::Auto`].
pub const DENSE_LIMIT: usize = 500;

/// Relative pivot size below which a shifted factorization counts as singular.
const PIVOT_THRESHOLD: f64 = 1e-13;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    #[default]
    Auto,
    Dense,
    ShiftInvert,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Dense,
    ShiftInvertLanczos,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub strategy: Strategy,
    pub want_vectors: bool,
    pub seed: u64,
    pub max_restarts: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            strategy: Strategy::Auto,
            want_vectors: false,
            seed: 0x5eed,
            max_restarts: 300,
        }
    }
}

/// Ascending eigenvalues with residual norms and optional eigenvectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Unit eigenvectors, largest-magnitude entry real and positive.
    pub eigenvectors: Option<Vec<Vec<Complex64>>>,
    /// The next eigenvalue after the returned ones.
    pub next_eigenvalue: f64,
    /// Two of the `k + 1` computed eigenvalues are closer than the gap threshold.
    pub degenerate: bool,
    /// Largest `|Im(vᴴAv)|` seen before discarding imaginary parts.
    pub max_imaginary: f64,
    pub method: Method,
    pub iterations: usize,
    pub tolerance: f64,
    pub shift: Option<f64>,
}

impl Spectrum {
    pub fn ground(&self) -> f64 {
        self.eigenvalues[0]
    }
}

/// Gap below which consecutive eigenvalues are reported as degenerate.
pub fn degeneracy_threshold(tol: f64) -> f64 {
    tol.max(1e-9)
}

fn check_request(op: &HermitianOperator, k: usize, tol: f64) -> Result<()> {
    if k == 0 || k >= op.n() {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= k < n, got k = {k}, n = {}",
            op.n()
        )));
    }
    if !(1e-12..=1e-4).contains(&tol) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must lie in [1e-12, 1e-4], got {tol}"
        )));
    }
    Ok(())
}

/// The `k` smallest eigenpairs with residuals below `tol`.
pub fn lowest_eigenpairs(op: &HermitianOperator, k: usize, tol: f64) -> Result<Spectrum> {
    lowest_eigenpairs_with(op, k, tol, &SolverOptions::default())
}

pub fn lowest_eigenpairs_with(
    op: &HermitianOperator,
    k: usize,
    tol: f64,
    opts: &SolverOptions,
) -> Result<Spectrum> {
    check_request(op, k, tol)?;
    let dense = match opts.strategy {
        Strategy::Auto => op.n() <= DENSE_LIMIT,
        Strategy::Dense => true,
        Strategy::ShiftInvert => false,
    };
    if dense {
        solve_dense(op, k, tol, opts)
    } else {
        solve_shift_invert(op, k, tol, opts)
    }
}

fn normalize_phase(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let Some(at) = (0..v.len()).max_by(|&a, &b| v[a].norm_sqr().total_cmp(&v[b].norm_sqr())) else {
        return;
    };
    let big = v[at];
    let phase = big.conj() / (big.norm() * norm);
    v.iter_mut().for_each(|z| *z *= phase);
    v[at] = Complex64::new(big.norm() / norm, 0.0);
}

fn rayleigh_imaginary(op: &HermitianOperator, v: &[Complex64]) -> f64 {
    let av = op.apply(v);
    let q: Complex64 = v.iter().zip(&av).map(|(a, b)| a.conj() * b).sum();
    q.im.abs()
}

struct Pairs {
    values: Vec<f64>,
    vectors: Vec<Vec<Complex64>>,
    residuals: Vec<f64>,
}

fn finish(
    op: &HermitianOperator,
    k: usize,
    tol: f64,
    opts: &SolverOptions,
    mut pairs: Pairs,
    method: Method,
    iterations: usize,
    shift: Option<f64>,
) -> Result<Spectrum> {
    let mut order: Vec<usize> = (0..pairs.values.len()).collect();
    order.sort_by(|&a, &b| pairs.values[a].total_cmp(&pairs.values[b]));
    let values: Vec<f64> = order.iter().map(|&i| pairs.values[i]).collect();
    let residuals: Vec<f64> = order.iter().map(|&i| pairs.residuals[i]).collect();
    let mut vectors: Vec<Vec<Complex64>> = order
        .iter()
        .map(|&i| std::mem::take(&mut pairs.vectors[i]))
        .collect();
    vectors.iter_mut().for_each(|v| normalize_phase(v));
    let scale = op.norm_inf().max(1.0);
    let max_imaginary = vectors
        .iter()
        .take(k)
        .map(|v| rayleigh_imaginary(op, v) / scale)
        .fold(0.0, f64::max);
    if residuals.iter().take(k).any(|&r| !(r < tol)) {
        return Err(Error::NoConvergence {
            iterations,
            residuals: residuals[..k].to_vec(),
        });
    }
    let gap_threshold = degeneracy_threshold(tol);
    let degenerate = values.windows(2).any(|w| w[1] - w[0] < gap_threshold);
    Ok(Spectrum {
        eigenvalues: values[..k].to_vec(),
        residuals: residuals[..k].to_vec(),
        eigenvectors: opts.want_vectors.then(|| vectors[..k].to_vec()),
        next_eigenvalue: values[k],
        degenerate,
        max_imaginary,
        method,
        iterations,
        tolerance: tol,
        shift,
    })
}

fn solve_dense(op: &HermitianOperator, k: usize, tol: f64, opts: &SolverOptions) -> Result<Spectrum> {
    let a = op.to_dense();
    let eig = a.symmetric_eigen();
    let mut idx: Vec<usize> = (0..op.n()).collect();
    idx.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let mut pairs = Pairs {
        values: vec![],
        vectors: vec![],
        residuals: vec![],
    };
    for &i in idx.iter().take(k + 1) {
        let v: Vec<Complex64> = eig.eigenvectors.column(i).iter().copied().collect();
        let lambda = eig.eigenvalues[i];
        let av = op.apply(&v);
        let r = av
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt();
        pairs.values.push(lambda);
        pairs.vectors.push(v);
        pairs.residuals.push(r);
    }
    finish(op, k, tol, opts, pairs, Method::Dense, 1, None)
}

/// Shift strictly below the spectrum: Gershgorin lower bound minus one.
pub fn lower_shift(op: &HermitianOperator) -> f64 {
    op.gershgorin_bounds().0 - 1.0
}

fn factor_below_spectrum(op: &HermitianOperator) -> Result<(BandLdl, f64)> {
    let threshold = PIVOT_THRESHOLD * op.norm_inf().max(1.0);
    let mut sigma = lower_shift(op);
    for attempt in 0..2 {
        match BandLdl::factor(op, sigma, threshold) {
            Ok(f) if f.negative_count() == 0 => return Ok((f, sigma)),
            _ if attempt == 0 => sigma -= 1e-8 * sigma.abs().max(1.0),
            _ => {}
        }
    }
    Err(Error::ShiftFailure(sigma))
}

fn solve_shift_invert(
    op: &HermitianOperator,
    k: usize,
    tol: f64,
    opts: &SolverOptions,
) -> Result<Spectrum> {
    let (factor, sigma) = factor_below_spectrum(op)?;
    let out = lanczos::lowest(op, &factor, sigma, k + 1, tol, opts.max_restarts, opts.seed);
    let pairs = Pairs {
        values: out.values,
        vectors: out
            .vectors
            .into_iter()
            .map(|v: DVector<Complex64>| v.as_slice().to_vec())
            .collect(),
        residuals: out.residuals,
    };
    finish(
        op,
        k,
        tol,
        opts,
        pairs,
        Method::ShiftInvertLanczos,
        out.applications,
        Some(sigma),
    )
}

/// Number of eigenvalues strictly below `lambda`, from the inertia of a
/// block `LDLᴴ` factorization of `A − λI`.
pub fn count_below(op: &HermitianOperator, lambda: f64) -> Result<usize> {
    if !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!("threshold must be finite, got {lambda}")));
    }
    let threshold = PIVOT_THRESHOLD * op.norm_inf().max(lambda.abs()).max(1.0);
    BandLdl::factor(op, lambda, threshold)
        .map(|f| f.negative_count())
        .map_err(|_| Error::SingularShift(lambda))
}
