//! Orthonormal basis of traceless Hermitian matrices for an N-level system,
//! and the antisymmetric/symmetric structure constants of its algebra.
//!
//! The basis generalizes the Pauli (N = 2) and Gell-Mann (N = 3) matrices:
//! every element λ satisfies λ = λ†, Tr[λ] = 0 and Tr[λ²] = 2, and distinct
//! elements are trace-orthogonal. The ordering is fixed so that coherence
//! vectors serialize reproducibly:
//!
//! 1. symmetric off-diagonal pairs `E_ij + E_ji`, row-major over i < j,
//! 2. antisymmetric off-diagonal pairs `-i E_ij + i E_ji`, same order,
//! 3. the N-1 diagonal generators, the k-th proportional to
//!    `diag(1, ..., 1, -k, 0, ..., 0)` (k ones), normalized to Tr[λ²] = 2.
//!
//! For N = 2 this yields exactly (σ₁, σ₂, σ₃).

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::linalg::{CMatrix, C64};
use crate::{Error, Result};

/// Immutable ordered basis of N²−1 traceless Hermitian N×N matrices.
#[derive(Debug, Clone)]
pub struct BasisSet {
    n_levels: usize,
    matrices: Vec<CMatrix>,
}

impl BasisSet {
    pub fn n_levels(&self) -> usize {
        self.n_levels
    }

    /// Number of basis elements, N²−1.
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, index: usize) -> &CMatrix {
        &self.matrices[index]
    }

    /// Indices of the mutually diagonal generators (the last N−1 elements).
    pub fn diagonal_range(&self) -> std::ops::Range<usize> {
        self.len() - (self.n_levels - 1)..self.len()
    }
}

// Serializes as a bare array of matrices, each a row-major array of
// [re, im] pairs; see docs/formats.md.
impl Serialize for BasisSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.n_levels;
        let mut seq = serializer.serialize_seq(Some(self.matrices.len()))?;
        for m in &self.matrices {
            let mut flat = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let z = m[(i, j)];
                    flat.push([z.re, z.im]);
                }
            }
            seq.serialize_element(&flat)?;
        }
        seq.end()
    }
}

/// Builds the orthonormal traceless Hermitian basis for `n_levels` >= 2.
pub fn build_basis(n_levels: usize) -> Result<BasisSet> {
    if n_levels < 2 {
        return Err(Error::InvalidLevels(n_levels));
    }
    let n = n_levels;
    let mut matrices = Vec::with_capacity(n * n - 1);

    for i in 0..n {
        for j in (i + 1)..n {
            let mut m = CMatrix::zeros(n, n);
            m[(i, j)] = C64::new(1.0, 0.0);
            m[(j, i)] = C64::new(1.0, 0.0);
            matrices.push(m);
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut m = CMatrix::zeros(n, n);
            m[(i, j)] = C64::new(0.0, -1.0);
            m[(j, i)] = C64::new(0.0, 1.0);
            matrices.push(m);
        }
    }
    for k in 1..n {
        let scale = (2.0 / (k as f64 * (k as f64 + 1.0))).sqrt();
        let mut m = CMatrix::zeros(n, n);
        for i in 0..k {
            m[(i, i)] = C64::new(scale, 0.0);
        }
        m[(k, k)] = C64::new(-(k as f64) * scale, 0.0);
        matrices.push(m);
    }

    Ok(BasisSet { n_levels, matrices })
}

/// Rank-3 structure constants of the basis algebra, stored dense.
///
/// `f` is totally antisymmetric (commutators), `d` totally symmetric
/// (anticommutators). Each tensor holds (N²−1)³ entries — about 2 MB at
/// N = 8 — so dense storage stays desk-scale for the supported range.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    dim: usize,
    f: Vec<f64>,
    d: Vec<f64>,
    max_imag: f64,
}

impl StructureConstants {
    /// Tensor side length, N²−1.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn f(&self, i: usize, j: usize, k: usize) -> f64 {
        self.f[self.index(i, j, k)]
    }

    pub fn d(&self, i: usize, j: usize, k: usize) -> f64 {
        self.d[self.index(i, j, k)]
    }

    /// Largest imaginary part encountered while evaluating the defining
    /// traces; a diagnostic for the realness of the tensors.
    pub fn max_imaginary_part(&self) -> f64 {
        self.max_imag
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.dim && j < self.dim && k < self.dim);
        (i * self.dim + j) * self.dim + k
    }
}

/// Computes `f_ijk = Tr([λi, λj] λk) / (4i)` and `d_ijk = Tr({λi, λj} λk) / 4`
/// for every index triple.
pub fn structure_constants(basis: &BasisSet) -> StructureConstants {
    let dim = basis.len();
    let mats = basis.matrices();

    // The basis matrices are sparse (at most N nonzero entries each), which
    // makes Tr[P λk] a handful of products.
    let sparse: Vec<Vec<(usize, usize, C64)>> = mats
        .iter()
        .map(|m| {
            let n = m.nrows();
            let mut entries = Vec::new();
            for r in 0..n {
                for c in 0..n {
                    let z = m[(r, c)];
                    if z.re != 0.0 || z.im != 0.0 {
                        entries.push((r, c, z));
                    }
                }
            }
            entries
        })
        .collect();

    let mut products = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            products.push(&mats[i] * &mats[j]);
        }
    }
    let trace_with =
        |p: &CMatrix, k: usize| -> C64 { sparse[k].iter().map(|&(r, c, v)| p[(c, r)] * v).sum() };

    let mut f = vec![0.0; dim * dim * dim];
    let mut d = vec![0.0; dim * dim * dim];
    let mut max_imag = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let pij = &products[i * dim + j];
            let pji = &products[j * dim + i];
            for k in 0..dim {
                let t_ij = trace_with(pij, k);
                let t_ji = trace_with(pji, k);
                // 1/(4i) = -i/4
                let fv = (t_ij - t_ji) * C64::new(0.0, -0.25);
                let dv = (t_ij + t_ji) * C64::new(0.25, 0.0);
                max_imag = max_imag.max(fv.im.abs()).max(dv.im.abs());
                let idx = (i * dim + j) * dim + k;
                f[idx] = fv.re;
                d[idx] = dv.re;
            }
        }
    }

    StructureConstants {
        dim,
        f,
        d,
        max_imag,
    }
}
