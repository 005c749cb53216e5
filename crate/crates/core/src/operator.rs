//! Sparse Hermitian operators in compressed-row form.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::hilbert::HilbertSpace;

pub type C64 = Complex64;

/// Accumulates matrix elements, keeping the pattern closed under conjugate
/// transposition. Duplicates are summed; exact zeros are dropped on build.
#[derive(Debug, Default)]
pub struct OperatorBuilder {
    entries: BTreeMap<(usize, usize), C64>,
}

impl OperatorBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `v |row⟩⟨col|` and, off the diagonal, its conjugate partner.
    /// Diagonal contributions keep only their real part.
    pub fn add_hermitian(&mut self, row: usize, col: usize, v: C64) {
        if row == col {
            *self.entries.entry((row, row)).or_default() += C64::new(v.re, 0.0);
        } else {
            *self.entries.entry((row, col)).or_default() += v;
            *self.entries.entry((col, row)).or_default() += v.conj();
        }
    }

    pub fn add_diagonal(&mut self, index: usize, v: f64) {
        self.add_hermitian(index, index, C64::new(v, 0.0));
    }

    pub fn build(self, space: Arc<HilbertSpace>) -> HermitianOperator {
        let dim = space.dimension();
        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(self.entries.len());
        let mut vals = Vec::with_capacity(self.entries.len());
        for ((r, c), v) in self.entries {
            if v == C64::new(0.0, 0.0) {
                continue;
            }
            row_ptr[r + 1] += 1;
            cols.push(c);
            vals.push(v);
        }
        for r in 0..dim {
            row_ptr[r + 1] += row_ptr[r];
        }
        HermitianOperator {
            space,
            row_ptr,
            cols,
            vals,
        }
    }
}

#[derive(Clone, Debug)]
pub struct HermitianOperator {
    space: Arc<HilbertSpace>,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
}

impl PartialEq for HermitianOperator {
    fn eq(&self, other: &Self) -> bool {
        self.row_ptr == other.row_ptr && self.cols == other.cols && self.vals == other.vals
    }
}

impl HermitianOperator {
    pub fn zeros(space: Arc<HilbertSpace>) -> Self {
        OperatorBuilder::new().build(space)
    }

    pub fn space(&self) -> &Arc<HilbertSpace> {
        &self.space
    }

    pub fn dimension(&self) -> usize {
        self.row_ptr.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Nonzero entries `(col, ⟨row|H|col⟩)` of one row, columns ascending.
    pub fn row(&self, row: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        let span = self.row_ptr[row]..self.row_ptr[row + 1];
        self.cols[span.clone()]
            .iter()
            .copied()
            .zip(self.vals[span].iter().copied())
    }

    /// Nonzero entries `(row, ⟨row|H|col⟩)` of one column, rows ascending.
    /// Uses the stored conjugate-symmetric pattern.
    pub fn column(&self, col: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        self.row(col).map(|(r, v)| (r, v.conj()))
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        let span = self.row_ptr[row]..self.row_ptr[row + 1];
        match self.cols[span.clone()].binary_search(&col) {
            Ok(k) => self.vals[span.start + k],
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    /// All stored entries in canonical `(row, col)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.dimension()).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn is_real(&self) -> bool {
        self.vals.iter().all(|v| v.im == 0.0)
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dimension()).map(|i| self.get(i, i).re).collect()
    }

    /// `max |H_rc − conj(H_cr)|` over stored entries.
    pub fn hermiticity_defect(&self) -> f64 {
        self.entries()
            .map(|(r, c, v)| (v - self.get(c, r).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for v in &mut out.vals {
            *v *= factor;
        }
        out.prune()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dimension(), other.dimension(), "dimension mismatch");
        let mut b = OperatorBuilder::new();
        for (r, c, v) in self.entries().chain(other.entries()) {
            *b.entries.entry((r, c)).or_default() += v;
        }
        b.build(self.space.clone())
    }

    fn prune(self) -> Self {
        let mut b = OperatorBuilder::new();
        for (r, c, v) in self.entries() {
            b.entries.insert((r, c), v);
        }
        b.build(self.space)
    }

    pub fn matvec(&self, x: &[C64], y: &mut [C64]) {
        for (r, yr) in y.iter_mut().enumerate() {
            *yr = self.row(r).map(|(c, v)| v * x[c]).sum();
        }
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        let mut y = vec![C64::new(0.0, 0.0); self.dimension()];
        self.matvec(x, &mut y);
        y
    }

    /// `⟨ψ|H|ψ⟩`, real for Hermitian `H`.
    pub fn expectation(&self, psi: &[C64]) -> f64 {
        let hpsi = self.apply(psi);
        psi.iter().zip(&hpsi).map(|(a, b)| (a.conj() * b).re).sum()
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let n = self.dimension();
        let mut m = DMatrix::zeros(n, n);
        for (r, c, v) in self.entries() {
            m[(r, c)] = v;
        }
        m
    }

    pub fn to_dense_real(&self) -> DMatrix<f64> {
        let n = self.dimension();
        let mut m = DMatrix::zeros(n, n);
        for (r, c, v) in self.entries() {
            m[(r, c)] = v.re;
        }
        m
    }

    fn product_entries(&self, other: &Self) -> BTreeMap<(usize, usize), C64> {
        let mut out = BTreeMap::new();
        for r in 0..self.dimension() {
            for (k, a) in self.row(r) {
                for (c, b) in other.row(k) {
                    *out.entry((r, c)).or_insert(C64::new(0.0, 0.0)) += a * b;
                }
            }
        }
        out
    }

    /// Largest entry magnitude of `[self, other]`. Products are accumulated
    /// sparsely, so exact symbolic cancellation yields exactly zero.
    pub fn commutator_norm(&self, other: &Self) -> f64 {
        let mut ab = self.product_entries(other);
        for (key, v) in other.product_entries(self) {
            *ab.entry(key).or_insert(C64::new(0.0, 0.0)) -= v;
        }
        ab.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Coordinate dump, one `row col re im` line per entry in canonical order.
    pub fn to_coo_string(&self) -> String {
        let mut s = String::new();
        for (r, c, v) in self.entries() {
            writeln!(s, "{r} {c} {:.16e} {:.16e}", v.re, v.im).unwrap();
        }
        s
    }
}
