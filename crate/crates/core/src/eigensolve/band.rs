//! Block `LDLᴴ` factorization of a shifted banded Hermitian matrix, with
//! 1×1 and 2×2 pivots on consecutive indices. Without interchanges the fill
//! stays inside the band, at the price of weaker stability guarantees than
//! full Bunch–Kaufman; tiny pivots are reported instead of being used.

use num_complex::Complex64;

use crate::discretize::HermitianOperator;

/// Bunch–Kaufman growth constant `(1 + √17)/8`.
const ALPHA: f64 = 0.640_388_203_202_208_4;

#[derive(Clone, Copy, Debug)]
enum Pivot {
    One(f64),
    /// Hermitian block `[[a, conj(c)], [c, d]]` and its determinant.
    Two { a: f64, c: Complex64, d: f64, det: f64 },
}

#[derive(Debug)]
pub(crate) struct SingularPivot;

/// `L D Lᴴ = A − shift·I` with `L` unit lower banded.
pub(crate) struct BandLdl {
    n: usize,
    b: usize,
    /// Column-major lower band: entry `(i, k)` at `k·(b+1) + (i − k)`.
    /// Holds `L` below the diagonal once factored.
    band: Vec<Complex64>,
    /// Pivot starting at each index; `None` for the second row of a 2×2 block.
    pivots: Vec<Option<Pivot>>,
}

impl BandLdl {
    /// Factors `A − shift·I`. Fails when a pivot is smaller than
    /// `threshold` in magnitude.
    pub(crate) fn factor(
        op: &HermitianOperator,
        shift: f64,
        threshold: f64,
    ) -> Result<Self, SingularPivot> {
        let n = op.n();
        let b = op.bandwidth();
        let w = b + 1;
        let mut band = vec![Complex64::new(0.0, 0.0); n * w];
        for (r, c, v) in op.triplets() {
            if r >= c {
                band[c * w + (r - c)] = v;
            }
        }
        for k in 0..n {
            band[k * w].re -= shift;
        }
        let mut f = BandLdl {
            n,
            b,
            band,
            pivots: vec![None; n],
        };
        f.eliminate(threshold)?;
        Ok(f)
    }

    #[inline]
    fn at(&self, i: usize, k: usize) -> Complex64 {
        self.band[k * (self.b + 1) + (i - k)]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, k: usize) -> &mut Complex64 {
        &mut self.band[k * (self.b + 1) + (i - k)]
    }

    fn eliminate(&mut self, threshold: f64) -> Result<(), SingularPivot> {
        let (n, b) = (self.n, self.b);
        let mut j = 0;
        let mut col0 = vec![Complex64::new(0.0, 0.0); b + 1];
        let mut col1 = vec![Complex64::new(0.0, 0.0); b + 2];
        while j < n {
            let last = (j + b).min(n - 1);
            let d = self.at(j, j).re;
            let lmax = (j + 1..=last).map(|i| self.at(i, j).norm()).fold(0.0, f64::max);
            let sub = if j + 1 < n { self.at(j + 1, j).norm() } else { 0.0 };
            let one_by_one = d.abs() >= ALPHA * lmax || j + 1 == n || sub < ALPHA * lmax;
            if one_by_one {
                if d.abs() < threshold {
                    return Err(SingularPivot);
                }
                // right-looking rank-one update of the trailing band
                for i in j + 1..=last {
                    col0[i - j] = self.at(i, j);
                }
                for k in j + 1..=last {
                    let lk = col0[k - j].conj() / d;
                    if lk == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for i in k..=last {
                        let v = col0[i - j] * lk;
                        *self.at_mut(i, k) -= v;
                    }
                }
                for i in j + 1..=last {
                    *self.at_mut(i, j) = col0[i - j] / d;
                }
                self.pivots[j] = Some(Pivot::One(d));
                j += 1;
            } else {
                let a = d;
                let c = self.at(j + 1, j);
                let dd = self.at(j + 1, j + 1).re;
                let det = a * dd - c.norm_sqr();
                if det.abs() < threshold * threshold {
                    return Err(SingularPivot);
                }
                let last1 = (j + 1 + b).min(n - 1);
                for i in j + 2..=last1 {
                    col0[i - j - 2] = if i <= last { self.at(i, j) } else { Complex64::new(0.0, 0.0) };
                    col1[i - j - 2] = self.at(i, j + 1);
                }
                // L_i = [w0, w1] E⁻¹ with E⁻¹ = [[dd, −conj(c)], [−c, a]] / det
                let l = |w0: Complex64, w1: Complex64| {
                    ((w0 * dd - w1 * c) / det, (w1 * a - w0 * c.conj()) / det)
                };
                for k in j + 2..=last1 {
                    let (w0k, w1k) = (col0[k - j - 2].conj(), col1[k - j - 2].conj());
                    for i in k..=last1 {
                        let (l0, l1) = l(col0[i - j - 2], col1[i - j - 2]);
                        let v = l0 * w0k + l1 * w1k;
                        *self.at_mut(i, k) -= v;
                    }
                }
                for i in j + 2..=last1 {
                    let (l0, l1) = l(col0[i - j - 2], col1[i - j - 2]);
                    if i <= last {
                        *self.at_mut(i, j) = l0;
                    }
                    *self.at_mut(i, j + 1) = l1;
                }
                *self.at_mut(j + 1, j) = Complex64::new(0.0, 0.0);
                self.pivots[j] = Some(Pivot::Two { a, c, d: dd, det });
                j += 2;
            }
        }
        Ok(())
    }

    /// Numbers of negative eigenvalues of `D` (hence of `A − shift·I`).
    pub(crate) fn negative_count(&self) -> usize {
        self.pivots
            .iter()
            .flatten()
            .map(|p| match *p {
                Pivot::One(d) => usize::from(d < 0.0),
                Pivot::Two { a, d, det, .. } => {
                    if det < 0.0 {
                        1
                    } else if a + d < 0.0 {
                        2
                    } else {
                        0
                    }
                }
            })
            .sum()
    }

    /// Solves `(A − shift·I) x = rhs` in place.
    pub(crate) fn solve(&self, x: &mut [Complex64]) {
        let (n, b) = (self.n, self.b);
        let mut j = 0;
        while j < n {
            match self.pivots[j].expect("pivot start") {
                Pivot::One(_) => {
                    let xj = x[j];
                    for i in j + 1..=(j + b).min(n - 1) {
                        x[i] -= self.at(i, j) * xj;
                    }
                    j += 1;
                }
                Pivot::Two { .. } => {
                    let (x0, x1) = (x[j], x[j + 1]);
                    for i in j + 2..=(j + 1 + b).min(n - 1) {
                        let l0 = if i <= j + b { self.at(i, j) } else { Complex64::new(0.0, 0.0) };
                        x[i] -= l0 * x0 + self.at(i, j + 1) * x1;
                    }
                    j += 2;
                }
            }
        }
        let mut j = 0;
        while j < n {
            match self.pivots[j].expect("pivot start") {
                Pivot::One(d) => {
                    x[j] /= d;
                    j += 1;
                }
                Pivot::Two { a, c, d, det } => {
                    let (y0, y1) = (x[j], x[j + 1]);
                    x[j] = (y0 * d - y1 * c.conj()) / det;
                    x[j + 1] = (y1 * a - y0 * c) / det;
                    j += 2;
                }
            }
        }
        let starts: Vec<usize> = (0..n).filter(|&j| self.pivots[j].is_some()).collect();
        for &j in starts.iter().rev() {
            match self.pivots[j].expect("pivot start") {
                Pivot::One(_) => {
                    let mut acc = x[j];
                    for i in j + 1..=(j + b).min(n - 1) {
                        acc -= self.at(i, j).conj() * x[i];
                    }
                    x[j] = acc;
                }
                Pivot::Two { .. } => {
                    let (mut a0, mut a1) = (x[j], x[j + 1]);
                    for i in j + 2..=(j + 1 + b).min(n - 1) {
                        if i <= j + b {
                            a0 -= self.at(i, j).conj() * x[i];
                        }
                        a1 -= self.at(i, j + 1).conj() * x[i];
                    }
                    x[j] = a0;
                    x[j + 1] = a1;
                }
            }
        }
    }
}
