//! Density matrices and their coherence-vector form.
//!
//! A [`DensityMatrix`] is a Hermitian, unit-trace, positive-semidefinite
//! complex matrix. Inputs within the positivity tolerance of Hermitian are
//! replaced by `(ρ + ρ†)/2` on construction, so downstream eigensolves see
//! exactly Hermitian data. A [`CoherenceVector`] holds the N²−1 real
//! expansion coefficients of a state in the orthonormal traceless basis,
//! normalized so pure states sit on the unit sphere:
//!
//! ```text
//! ρ = (1/N) (I + sqrt(N(N-1)/2) n⃗ · λ⃗),    n_i = Tr[ρ λ_i] / sqrt(2(N-1)/N)
//! ```
//!
//! The maximally mixed state I/N maps to n⃗ = 0 and |n⃗| = 1 exactly for
//! pure states; vectors outside the state body decode to matrices that fail
//! positivity, which is reported as a diagnostic rather than silently fixed.

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::linalg::{self, CMatrix, C64};
use crate::su_basis::BasisSet;
use crate::{Error, Result, Tolerances};

/// Validated N-level density matrix. Construction Hermitizes the input and
/// checks unit trace and positive semidefiniteness.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_levels: usize,
    entries: CMatrix,
}

impl DensityMatrix {
    /// Validates and stores a density matrix.
    pub fn new(entries: CMatrix, tol: &Tolerances) -> Result<Self> {
        let rows = entries.nrows();
        let cols = entries.ncols();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows < 2 {
            return Err(Error::InvalidLevels(rows));
        }
        let dev = linalg::hermitian_deviation(&entries);
        if dev > tol.positivity {
            return Err(Error::NotHermitian(dev));
        }
        let entries = linalg::hermitize(&entries);
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > tol.positivity {
            return Err(Error::TraceNotOne(trace.re));
        }
        let min_eig = linalg::hermitian_eigenvalues(&entries)
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -tol.positivity {
            return Err(Error::NotPositive(min_eig));
        }
        Ok(Self {
            n_levels: rows,
            entries,
        })
    }

    /// Diagonal state with the given probabilities on the diagonal.
    pub fn from_diagonal(values: &[f64], tol: &Tolerances) -> Result<Self> {
        let n = values.len();
        let m = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(values[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Self::new(m, tol)
    }

    /// Pure state |ψ⟩⟨ψ| from a ket, normalized first.
    pub fn from_ket(ket: &[C64]) -> Result<Self> {
        if ket.len() < 2 {
            return Err(Error::InvalidLevels(ket.len()));
        }
        let norm_sq: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 || !norm_sq.is_finite() {
            return Err(Error::InvalidArgument(
                "ket must have nonzero finite norm".into(),
            ));
        }
        let n = ket.len();
        let m = CMatrix::from_fn(n, n, |i, j| ket[i] * ket[j].conj() / norm_sq);
        Self::new(m, &Tolerances::default())
    }

    /// The maximally mixed state I/N.
    pub fn maximally_mixed(n_levels: usize) -> Result<Self> {
        if n_levels < 2 {
            return Err(Error::InvalidLevels(n_levels));
        }
        let w = 1.0 / n_levels as f64;
        Self::from_diagonal(&vec![w; n_levels], &Tolerances::default())
    }

    pub fn n_levels(&self) -> usize {
        self.n_levels
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// Parses the `{ "n": N, "entries": [[re, im], ...] }` wire form and
    /// validates the result.
    pub fn from_json_value(value: &serde_json::Value, tol: &Tolerances) -> Result<Self> {
        let data: DensityMatrixData =
            serde_json::from_value(value.clone()).map_err(|e| Error::Json(e.to_string()))?;
        data.into_density_matrix(tol)
    }

    pub fn from_json(text: &str, tol: &Tolerances) -> Result<Self> {
        let data: DensityMatrixData =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        data.into_density_matrix(tol)
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.n_levels;
        let mut flat = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = self.entries[(i, j)];
                flat.push([z.re, z.im]);
            }
        }
        let mut st = serializer.serialize_struct("DensityMatrix", 2)?;
        st.serialize_field("n", &self.n_levels)?;
        st.serialize_field("entries", &flat)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct DensityMatrixData {
    n: usize,
    entries: Vec<[f64; 2]>,
}

impl DensityMatrixData {
    fn into_density_matrix(self, tol: &Tolerances) -> Result<DensityMatrix> {
        let n = self.n;
        if self.entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: self.entries.len(),
            });
        }
        let m = CMatrix::from_fn(n, n, |i, j| {
            let [re, im] = self.entries[i * n + j];
            C64::new(re, im)
        });
        DensityMatrix::new(m, tol)
    }
}

/// Real coherence vector of length N²−1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoherenceVector {
    #[serde(rename = "n")]
    n_levels: usize,
    components: Vec<f64>,
}

impl CoherenceVector {
    pub fn new(n_levels: usize, components: Vec<f64>) -> Result<Self> {
        if n_levels < 2 {
            return Err(Error::InvalidLevels(n_levels));
        }
        if components.len() != n_levels * n_levels - 1 {
            return Err(Error::DimensionMismatch {
                expected: n_levels * n_levels - 1,
                got: components.len(),
            });
        }
        Ok(Self {
            n_levels,
            components,
        })
    }

    pub fn n_levels(&self) -> usize {
        self.n_levels
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    /// Euclidean norm |n⃗|; 1 for pure states, 0 at the maximally mixed state.
    pub fn norm(&self) -> f64 {
        self.components.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// Expands a state in the basis: `n_i = Tr[ρ λ_i] / sqrt(2(N-1)/N)`.
pub fn encode(rho: &DensityMatrix, basis: &BasisSet) -> Result<CoherenceVector> {
    let n = rho.n_levels();
    if basis.n_levels() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: basis.n_levels(),
        });
    }
    let scale = (2.0 * (n as f64 - 1.0) / n as f64).sqrt();
    let components = basis
        .matrices()
        .iter()
        .map(|lam| (rho.entries() * lam).trace().re / scale)
        .collect();
    CoherenceVector::new(n, components)
}

/// Rebuilds `ρ = (1/N)(I + sqrt(N(N-1)/2) Σ n_i λ_i)` from a coherence
/// vector. Vectors outside the state body produce [`Error::NotPositive`]
/// carrying the offending minimum eigenvalue.
pub fn decode(
    vector: &CoherenceVector,
    basis: &BasisSet,
    tol: &Tolerances,
) -> Result<DensityMatrix> {
    let n = basis.n_levels();
    if vector.n_levels() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: vector.n_levels(),
        });
    }
    if vector.components().len() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            got: vector.components().len(),
        });
    }
    let coeff = (n as f64 * (n as f64 - 1.0) / 2.0).sqrt();
    let mut m = CMatrix::identity(n, n);
    for (c, lam) in vector.components().iter().zip(basis.matrices()) {
        m += lam.map(|z| z * (coeff * c));
    }
    m /= C64::new(n as f64, 0.0);
    DensityMatrix::new(m, tol)
}

/// Idempotency test `‖ρ² − ρ‖_max` below the positivity tolerance.
pub fn is_pure(rho: &DensityMatrix, tol: &Tolerances) -> bool {
    let m = rho.entries();
    let diff = m * m - m;
    linalg::max_abs_entry(&diff) < tol.positivity
}

/// Conjugates `ρ → U ρ U†` after checking that `U` is unitary; the spectrum
/// is preserved and a global phase on `U` drops out.
pub fn conjugate(rho: &DensityMatrix, u: &CMatrix, tol: &Tolerances) -> Result<DensityMatrix> {
    let n = rho.n_levels();
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u.nrows(),
        });
    }
    let dev = linalg::unitary_deviation(u);
    if dev > tol.positivity {
        return Err(Error::NotUnitary(dev));
    }
    let m = u * rho.entries() * u.adjoint();
    DensityMatrix::new(m, tol)
}

/// Random state with spectrum drawn uniformly from the probability simplex,
/// conjugated by a Haar-random unitary. Deterministic for a fixed seed.
pub fn random_density_matrix(n_levels: usize, seed: u64) -> Result<DensityMatrix> {
    if n_levels < 2 {
        return Err(Error::InvalidLevels(n_levels));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let spectrum = simplex_sample(n_levels, &mut rng);
    let u = linalg::haar_unitary(n_levels, &mut rng);
    let diag = CMatrix::from_fn(n_levels, n_levels, |i, j| {
        if i == j {
            C64::new(spectrum[i], 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let m = &u * diag * u.adjoint();
    DensityMatrix::new(m, &Tolerances::default())
}

/// Uniform (flat Dirichlet) sample from the probability simplex via
/// normalized exponentials.
pub(crate) fn simplex_sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let mut values: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let sum: f64 = values.iter().sum();
        if sum > 1e-300 {
            for v in &mut values {
                *v /= sum;
            }
            return values;
        }
    }
}
