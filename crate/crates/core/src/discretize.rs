//! Staircase finite-difference discretization of
//! `H_ω(x₀,y₀) = −Δ_D + iω((x−x₀)∂_y − (y−y₀)∂_x)` on a uniform grid.

use std::io::{BufRead, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::geometry::{BoundingBox, Domain, Point};
use crate::{Error, Result};

/// Upper limit on lattice cells scanned while building a grid.
const MAX_LATTICE_CELLS: usize = 50_000_000;

/// Interior nodes of a uniform lattice `(cx + i·h, cy + j·h)` anchored at the
/// domain center. Linear indices run along the shorter side first.
#[derive(Clone, Debug)]
pub struct Grid {
    h: f64,
    anchor: Point,
    bbox: BoundingBox,
    i_range: (i64, i64),
    j_range: (i64, i64),
    x_outer: bool,
    nodes: Vec<(i64, i64)>,
    lookup: Vec<u32>,
}

const NO_NODE: u32 = u32::MAX;

pub fn build_grid(domain: &Domain, h: f64) -> Result<Grid> {
    domain.validate()?;
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidArgument(format!("grid spacing must be positive, got {h}")));
    }
    let anchor = domain.center();
    let bbox = domain.bounding_box();
    let i_range = (
        ((bbox.xmin - anchor.x) / h).floor() as i64,
        ((bbox.xmax - anchor.x) / h).ceil() as i64,
    );
    let j_range = (
        ((bbox.ymin - anchor.y) / h).floor() as i64,
        ((bbox.ymax - anchor.y) / h).ceil() as i64,
    );
    let ni = (i_range.1 - i_range.0 + 1) as usize;
    let nj = (j_range.1 - j_range.0 + 1) as usize;
    if ni.saturating_mul(nj) > MAX_LATTICE_CELLS {
        return Err(Error::InvalidArgument(format!(
            "grid spacing {h} needs {ni} x {nj} lattice cells"
        )));
    }
    let x_outer = ni >= nj;
    let mut grid = Grid {
        h,
        anchor,
        bbox,
        i_range,
        j_range,
        x_outer,
        nodes: Vec::new(),
        lookup: vec![NO_NODE; ni * nj],
    };
    let (outer, inner) = if x_outer { (i_range, j_range) } else { (j_range, i_range) };
    for a in outer.0..=outer.1 {
        for b in inner.0..=inner.1 {
            let (i, j) = if x_outer { (a, b) } else { (b, a) };
            if domain.contains(grid.coords(i, j)) {
                let slot = grid.slot(i, j).expect("inside lattice");
                grid.lookup[slot] = grid.nodes.len() as u32;
                grid.nodes.push((i, j));
            }
        }
    }
    if grid.nodes.is_empty() {
        return Err(Error::EmptyGrid(h));
    }
    Ok(grid)
}

impl Grid {
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn bounding_box(&self) -> BoundingBox {
        self.bbox
    }

    pub fn anchor(&self) -> Point {
        self.anchor
    }

    fn slot(&self, i: i64, j: i64) -> Option<usize> {
        if i < self.i_range.0 || i > self.i_range.1 || j < self.j_range.0 || j > self.j_range.1 {
            return None;
        }
        let nj = (self.j_range.1 - self.j_range.0 + 1) as usize;
        Some((i - self.i_range.0) as usize * nj + (j - self.j_range.0) as usize)
    }

    pub fn x(&self, i: i64) -> f64 {
        self.anchor.x + i as f64 * self.h
    }

    pub fn y(&self, j: i64) -> f64 {
        self.anchor.y + j as f64 * self.h
    }

    pub fn coords(&self, i: i64, j: i64) -> Point {
        Point::new(self.x(i), self.y(j))
    }

    /// Lattice indices `(i, j)` of node `p`.
    pub fn node(&self, p: usize) -> (i64, i64) {
        self.nodes[p]
    }

    pub fn point(&self, p: usize) -> Point {
        let (i, j) = self.nodes[p];
        self.coords(i, j)
    }

    /// Linear index of lattice node `(i, j)` if it is interior.
    pub fn index_of(&self, i: i64, j: i64) -> Option<usize> {
        self.slot(i, j)
            .map(|s| self.lookup[s])
            .filter(|&v| v != NO_NODE)
            .map(|v| v as usize)
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).map(|p| self.point(p))
    }

    /// Whether consecutive linear indices step along `y` (true) or `x`.
    pub fn inner_axis_is_y(&self) -> bool {
        self.x_outer
    }
}

/// Grid metadata attached to an assembled operator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorMeta {
    pub h: f64,
    pub omega: f64,
    pub center: Point,
}

/// Sparse Hermitian matrix in CSR form, columns sorted within each row.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
    meta: Option<OperatorMeta>,
}

impl HermitianOperator {
    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    /// Fails unless the result is exactly Hermitian.
    pub fn from_triplets(n: usize, mut triplets: Vec<(usize, usize, Complex64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("operator dimension must be positive".into()));
        }
        if let Some(&(r, c, _)) = triplets.iter().find(|t| t.0 >= n || t.1 >= n) {
            return Err(Error::InvalidArgument(format!(
                "entry ({r}, {c}) outside a {n} x {n} matrix"
            )));
        }
        triplets.sort_by_key(|t| (t.0, t.1));
        let mut row_ptr = vec![0usize; n + 1];
        let mut cols = Vec::with_capacity(triplets.len());
        let mut vals: Vec<Complex64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                *vals.last_mut().expect("entry exists") += v;
                continue;
            }
            last = Some((r, c));
            row_ptr[r + 1] += 1;
            cols.push(c);
            vals.push(v);
        }
        for r in 0..n {
            row_ptr[r + 1] += row_ptr[r];
        }
        let op = HermitianOperator {
            n,
            row_ptr,
            cols,
            vals,
            meta: None,
        };
        if !op.is_exactly_hermitian() {
            return Err(Error::InvalidArgument("matrix is not exactly Hermitian".into()));
        }
        Ok(op)
    }

    /// Builds from a dense matrix, dropping exact zeros.
    pub fn from_dense(a: &DMatrix<Complex64>) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::InvalidArgument("matrix must be square".into()));
        }
        let mut t = Vec::new();
        for c in 0..a.ncols() {
            for r in 0..a.nrows() {
                let v = a[(r, c)];
                if v != Complex64::new(0.0, 0.0) {
                    t.push((r, c, v));
                }
            }
        }
        HermitianOperator::from_triplets(a.nrows(), t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn meta(&self) -> Option<OperatorMeta> {
        self.meta
    }

    /// Entries of row `r` as `(column, value)`.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.cols[span.clone()].iter().copied().zip(self.vals[span].iter().copied())
    }

    /// Triplets in canonical `(row, column)` order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.n).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        match self.cols[span.clone()].binary_search(&c) {
            Ok(k) => self.vals[span.start + k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// Bit-for-bit check that `A[p][q] == conj(A[q][p])` for every stored entry.
    pub fn is_exactly_hermitian(&self) -> bool {
        self.triplets().all(|(r, c, v)| {
            let w = self.get(c, r).conj();
            v.re.to_bits() == w.re.to_bits() && (v.im == w.im)
        })
    }

    /// `y = A x`.
    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (r, out) in y.iter_mut().enumerate().take(self.n) {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *out = acc;
        }
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![Complex64::new(0.0, 0.0); self.n];
        self.matvec(x, &mut y);
        y
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for (r, c, v) in self.triplets() {
            a[(r, c)] = v;
        }
        a
    }

    /// `max |p − q|` over stored entries.
    pub fn bandwidth(&self) -> usize {
        self.triplets().map(|(r, c, _)| r.abs_diff(c)).max().unwrap_or(0)
    }

    /// Gershgorin enclosure `[lo, hi]` of the spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for r in 0..self.n {
            let mut d = 0.0;
            let mut off = 0.0;
            for (c, v) in self.row(r) {
                if c == r {
                    d = v.re;
                } else {
                    off += v.norm();
                }
            }
            lo = lo.min(d - off);
            hi = hi.max(d + off);
        }
        (lo, hi)
    }

    /// `max_r Σ_c |A_rc|`.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|r| self.row(r).map(|(_, v)| v.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Writes `n nnz` followed by one `row col re im` line per entry.
    pub fn write_triplets<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{} {}", self.n, self.nnz())?;
        for (r, c, v) in self.triplets() {
            writeln!(w, "{} {} {:?} {:?}", r, c, v.re, v.im)?;
        }
        Ok(())
    }

    pub fn read_triplets<R: BufRead>(reader: R) -> Result<Self> {
        let bad = |line: &str| Error::InvalidArgument(format!("malformed triplet line: {line:?}"));
        let mut lines = reader.lines();
        let header = lines.next().ok_or_else(|| bad(""))??;
        let mut it = header.split_whitespace();
        let n: usize = it.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad(&header))?;
        let nnz: usize = it.next().and_then(|t| t.parse().ok()).ok_or_else(|| bad(&header))?;
        let mut triplets = Vec::with_capacity(nnz);
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 {
                return Err(bad(&line));
            }
            let r = f[0].parse().map_err(|_| bad(&line))?;
            let c = f[1].parse().map_err(|_| bad(&line))?;
            let re = f[2].parse().map_err(|_| bad(&line))?;
            let im = f[3].parse().map_err(|_| bad(&line))?;
            triplets.push((r, c, Complex64::new(re, im)));
        }
        if triplets.len() != nnz {
            return Err(Error::InvalidArgument(format!(
                "header announces {nnz} entries, found {}",
                triplets.len()
            )));
        }
        HermitianOperator::from_triplets(n, triplets)
    }
}

/// Assembles `H_ω(x₀,y₀)` on the grid: the 5-point Dirichlet Laplacian plus
/// centered differences for the rotation term.
pub fn assemble_operator(grid: &Grid, omega: f64, center: Point) -> Result<HermitianOperator> {
    crate::analytic::check_omega(omega)?;
    if !(center.x.is_finite() && center.y.is_finite()) {
        return Err(Error::InvalidArgument("rotation center must be finite".into()));
    }
    let h = grid.h;
    let n = grid.len();
    let diag = 4.0 / (h * h);
    let off = -1.0 / (h * h);
    let mut row_ptr = Vec::with_capacity(n + 1);
    let mut cols = Vec::with_capacity(5 * n);
    let mut vals = Vec::with_capacity(5 * n);
    row_ptr.push(0);
    let mut row: Vec<(usize, Complex64)> = Vec::with_capacity(5);
    for p in 0..n {
        let (i, j) = grid.nodes[p];
        // coupling to (i, j±1) is ±iω(x_i−x₀)/(2h); to (i±1, j) it is ∓iω(y_j−y₀)/(2h)
        let cx = omega * (grid.x(i) - center.x) / (2.0 * h);
        let cy = omega * (grid.y(j) - center.y) / (2.0 * h);
        row.clear();
        row.push((p, Complex64::new(diag, 0.0)));
        let neighbours = [
            (i, j + 1, cx),
            (i, j - 1, -cx),
            (i + 1, j, -cy),
            (i - 1, j, cy),
        ];
        for (a, b, im) in neighbours {
            if let Some(q) = grid.index_of(a, b) {
                row.push((q, Complex64::new(off, im)));
            }
        }
        row.sort_by_key(|e| e.0);
        for &(q, v) in &row {
            cols.push(q);
            vals.push(v);
        }
        row_ptr.push(cols.len());
    }
    Ok(HermitianOperator {
        n,
        row_ptr,
        cols,
        vals,
        meta: Some(OperatorMeta { h, omega, center }),
    })
}

/// Centroid `Σ x_p|u_p|² / Σ|u_p|²` of the density `|u|²`.
pub fn eigenfunction_centroid(grid: &Grid, u: &[Complex64]) -> Result<Point> {
    if u.len() != grid.len() {
        return Err(Error::InvalidArgument(format!(
            "vector has length {}, grid has {} nodes",
            u.len(),
            grid.len()
        )));
    }
    let (mut w, mut sx, mut sy) = (0.0, 0.0, 0.0);
    for (p, v) in u.iter().enumerate() {
        let m = v.norm_sqr();
        let pt = grid.point(p);
        w += m;
        sx += m * pt.x;
        sy += m * pt.y;
    }
    if w.sqrt() < 1e-14 {
        return Err(Error::ZeroVector);
    }
    Ok(Point::new(sx / w, sy / w))
}
