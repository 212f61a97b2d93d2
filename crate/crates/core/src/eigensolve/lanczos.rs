//! Thick-restart Lanczos on `T = (A − σI)⁻¹` with full reorthogonalization.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::band::BandLdl;
use crate::discretize::HermitianOperator;

pub(crate) struct KrylovOutcome {
    pub values: Vec<f64>,
    pub vectors: Vec<DVector<Complex64>>,
    pub residuals: Vec<f64>,
    pub applications: usize,
    pub converged: bool,
}

fn random_unit(n: usize, rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    let v = DVector::from_fn(n, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let norm = v.norm();
    v / Complex64::new(norm, 0.0)
}

/// Two passes of classical Gram–Schmidt against the first `cols` columns of
/// `basis`; returns the accumulated coefficients.
fn orthogonalize(basis: &DMatrix<Complex64>, cols: usize, w: &mut DVector<Complex64>) -> DVector<Complex64> {
    let v = basis.columns(0, cols);
    let c1 = v.ad_mul(w);
    *w -= v * &c1;
    let c2 = v.ad_mul(w);
    *w -= v * &c2;
    c1 + c2
}

/// The `want` smallest eigenpairs of `op`, through the largest eigenvalues
/// `θ = 1/(λ − σ)` of the shift-inverted operator.
pub(crate) fn lowest(
    op: &HermitianOperator,
    factor: &BandLdl,
    sigma: f64,
    want: usize,
    tol: f64,
    max_restarts: usize,
    seed: u64,
) -> KrylovOutcome {
    let n = op.n();
    let m = n.min((2 * want + 20).max(40));
    let keep_target = (want + (m - want) / 2).min(m - 1).max(want.min(m - 1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis = DMatrix::<Complex64>::zeros(n, m);
    let mut h = DMatrix::<Complex64>::zeros(m, m);
    basis.set_column(0, &random_unit(n, &mut rng));
    let mut start = 0usize;
    let mut applications = 0usize;
    let mut best = KrylovOutcome {
        values: vec![],
        vectors: vec![],
        residuals: vec![f64::INFINITY; want],
        applications: 0,
        converged: false,
    };
    let mut work = vec![Complex64::new(0.0, 0.0); n];

    for _restart in 0..=max_restarts {
        let mut residual_vec: Option<DVector<Complex64>> = None;
        for j in start..m {
            work.copy_from_slice(basis.column(j).as_slice());
            factor.solve(&mut work);
            applications += 1;
            let mut w = DVector::from_column_slice(&work);
            let tnorm = w.norm();
            let coeffs = orthogonalize(&basis, j + 1, &mut w);
            for i in 0..=j {
                h[(i, j)] = coeffs[i];
                h[(j, i)] = coeffs[i].conj();
            }
            h[(j, j)] = Complex64::new(coeffs[j].re, 0.0);
            let beta = w.norm();
            let mut next = if beta > 1e-10 * tnorm.max(f64::MIN_POSITIVE) {
                w / Complex64::new(beta, 0.0)
            } else {
                // invariant subspace: continue with a fresh direction
                let mut r = random_unit(n, &mut rng);
                orthogonalize(&basis, j + 1, &mut r);
                let nr = r.norm();
                r / Complex64::new(nr, 0.0)
            };
            if j + 1 < m {
                basis.set_column(j + 1, &next);
            } else {
                // keep the continuation vector for the restart
                orthogonalize(&basis, m, &mut next);
                let nn = next.norm();
                residual_vec = Some(next / Complex64::new(nn, 0.0));
            }
        }

        let eig = h.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

        let mut values = Vec::with_capacity(want);
        let mut vectors = Vec::with_capacity(want);
        let mut residuals = Vec::with_capacity(want);
        for &idx in order.iter().take(want) {
            let theta = eig.eigenvalues[idx];
            let y = &basis * eig.eigenvectors.column(idx);
            let lambda = sigma + 1.0 / theta;
            let ay = DVector::from_vec(op.apply(y.as_slice()));
            let r = (ay - &y * Complex64::new(lambda, 0.0)).norm() / y.norm();
            values.push(lambda);
            vectors.push(y);
            residuals.push(r);
        }
        let converged = residuals.iter().all(|&r| r < tol);
        let better = residuals.iter().cloned().fold(0.0, f64::max)
            < best.residuals.iter().cloned().fold(0.0, f64::max);
        if converged || better || best.values.is_empty() {
            best = KrylovOutcome {
                values,
                vectors,
                residuals,
                applications,
                converged,
            };
        }
        best.applications = applications;
        if converged || m == n {
            best.converged = converged;
            return best;
        }

        // thick restart: keep the leading Ritz vectors, then the continuation
        let keep = keep_target;
        let mut s = DMatrix::<Complex64>::zeros(m, keep);
        for (c, &idx) in order.iter().take(keep).enumerate() {
            s.set_column(c, &eig.eigenvectors.column(idx));
        }
        let kept = &basis * &s;
        basis.columns_mut(0, keep).copy_from(&kept);
        h.fill(Complex64::new(0.0, 0.0));
        for (c, &idx) in order.iter().take(keep).enumerate() {
            h[(c, c)] = Complex64::new(eig.eigenvalues[idx], 0.0);
        }
        let mut next = residual_vec.expect("continuation vector");
        orthogonalize(&basis, keep, &mut next);
        let nn = next.norm();
        basis.set_column(keep, &(next / Complex64::new(nn, 0.0)));
        start = keep;
    }
    best
}
