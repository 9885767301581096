//! The eigenvalue simplex and its chamber quotient.
//!
//! The possible spectra of an N-level state fill the probability simplex
//! with N vertices; permuting eigenvalues is a symmetry, so the quotient by
//! the symmetric group — the chamber of descending-ordered spectra — carries
//! one point per conjugation orbit. Degeneracy patterns partition N and
//! label the strata: a spectrum with blocks of sizes k₁ ≥ k₂ ≥ ... has
//! little group U(k₁) × U(k₂) × ... and orbit dimension N² − Σ kᵢ².

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::linalg;
use crate::states::{encode, DensityMatrix};
use crate::su_basis::BasisSet;
use crate::{Error, Result, Tolerances};

/// Multiset of N eigenvalues on the probability simplex. Values may be in
/// any order; the canonical chamber representative is descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    n_levels: usize,
    values: Vec<f64>,
}

impl Spectrum {
    /// Validates membership in the simplex: entries in [0, 1] and unit sum,
    /// all within the positivity tolerance.
    pub fn new(values: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::InvalidLevels(n));
        }
        for &v in &values {
            if !v.is_finite() {
                return Err(Error::InvalidSpectrum(format!("non-finite value {v}")));
            }
            if v < -tol.positivity || v > 1.0 + tol.positivity {
                return Err(Error::InvalidSpectrum(format!("value {v} outside [0, 1]")));
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > tol.positivity * n as f64 {
            return Err(Error::InvalidSpectrum(format!("values sum to {sum}")));
        }
        Ok(Self {
            n_levels: n,
            values,
        })
    }

    pub(crate) fn from_valid(values: Vec<f64>) -> Self {
        Self {
            n_levels: values.len(),
            values,
        }
    }

    pub fn n_levels(&self) -> usize {
        self.n_levels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// The N−1 coordinates of a diagonal state along the diagonal generators.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexCoords {
    n_levels: usize,
    coords: Vec<f64>,
}

impl SimplexCoords {
    pub fn new(n_levels: usize, coords: Vec<f64>) -> Result<Self> {
        if n_levels < 2 {
            return Err(Error::InvalidLevels(n_levels));
        }
        if coords.len() != n_levels - 1 {
            return Err(Error::DimensionMismatch {
                expected: n_levels - 1,
                got: coords.len(),
            });
        }
        Ok(Self { n_levels, coords })
    }

    pub fn n_levels(&self) -> usize {
        self.n_levels
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// Diagonal entry i of the k-th diagonal generator (k = 1..N−1), the matrix
/// proportional to diag(1, ..., 1, -k, 0, ..., 0) with Tr[λ²] = 2.
fn diagonal_generator_entry(k: usize, i: usize) -> f64 {
    let scale = (2.0 / (k as f64 * (k as f64 + 1.0))).sqrt();
    if i < k {
        scale
    } else if i == k {
        -(k as f64) * scale
    } else {
        0.0
    }
}

/// Eigenvalues of a state: Hermitized eigensolve, tiny negatives clipped to
/// zero, renormalized to unit sum, sorted descending.
pub fn spectrum_of(rho: &DensityMatrix, _tol: &Tolerances) -> Spectrum {
    let mut values = linalg::hermitian_eigenvalues(rho.entries());
    for v in &mut values {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let sum: f64 = values.iter().sum();
    for v in &mut values {
        *v /= sum;
    }
    // hermitian_eigenvalues already sorts descending
    Spectrum::from_valid(values)
}

/// Coordinates of the diagonal state with the given spectrum (in the given
/// order) along the diagonal generators.
pub fn to_simplex_coords(s: &Spectrum) -> SimplexCoords {
    let n = s.n_levels();
    let scale = (2.0 * (n as f64 - 1.0) / n as f64).sqrt();
    let coords = (1..n)
        .map(|k| {
            let overlap: f64 = s
                .values()
                .iter()
                .enumerate()
                .map(|(i, &v)| v * diagonal_generator_entry(k, i))
                .sum();
            overlap / scale
        })
        .collect();
    SimplexCoords {
        n_levels: n,
        coords,
    }
}

/// Inverse of [`to_simplex_coords`]; coordinates that decode to an
/// eigenvalue outside [0, 1] are flagged with [`Error::OutOfSimplex`].
pub fn from_simplex_coords(c: &SimplexCoords, tol: &Tolerances) -> Result<Spectrum> {
    let n = c.n_levels();
    let coeff = (n as f64 * (n as f64 - 1.0) / 2.0).sqrt();
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let shift: f64 = c
            .coords()
            .iter()
            .enumerate()
            .map(|(idx, &ck)| ck * diagonal_generator_entry(idx + 1, i))
            .sum();
        let v = (1.0 + coeff * shift) / n as f64;
        if v < -tol.positivity || v > 1.0 + tol.positivity {
            return Err(Error::OutOfSimplex(v));
        }
        values.push(v);
    }
    Ok(Spectrum::from_valid(values))
}

/// Descending sort; the canonical representative of the permutation orbit.
pub fn chamber_representative(s: &Spectrum) -> Spectrum {
    let mut values = s.values().to_vec();
    values.sort_by(|a, b| b.partial_cmp(a).expect("spectrum values are finite"));
    Spectrum::from_valid(values)
}

/// Degeneracy partition, little group, orbit dimension and a label for one
/// stratum of the state space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumInfo {
    /// Degeneracy block sizes, descending; sums to N.
    pub partition: Vec<usize>,
    /// Unitary factor sizes of the little group U(k₁) × U(k₂) × ...
    pub little_group: Vec<usize>,
    /// Dimension N² − Σ kᵢ² of the orbit U(N) / Π U(kᵢ).
    pub orbit_dim: usize,
    pub label: String,
}

impl StratumInfo {
    /// Stratum data for a degeneracy partition of `n_levels`.
    pub fn from_partition(n_levels: usize, mut partition: Vec<usize>) -> Self {
        partition.sort_unstable_by(|a, b| b.cmp(a));
        let sum_sq: usize = partition.iter().map(|k| k * k).sum();
        let orbit_dim = n_levels * n_levels - sum_sq;
        let kind = if partition.len() == 1 {
            "fixed-point"
        } else if partition.iter().all(|&k| k == 1) {
            "generic"
        } else {
            "critical"
        };
        let label = format!("{kind} {}", partition_string(&partition));
        StratumInfo {
            little_group: partition.clone(),
            partition,
            orbit_dim,
            label,
        }
    }
}

impl Serialize for StratumInfo {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let groups: Vec<String> = self
            .little_group
            .iter()
            .map(|k| format!("U({k})"))
            .collect();
        let mut st = serializer.serialize_struct("StratumInfo", 4)?;
        st.serialize_field("partition", &self.partition)?;
        st.serialize_field("little_group", &groups)?;
        st.serialize_field("orbit_dim", &self.orbit_dim)?;
        st.serialize_field("label", &self.label)?;
        st.end()
    }
}

fn partition_string(parts: &[usize]) -> String {
    let inner: Vec<String> = parts.iter().map(|k| k.to_string()).collect();
    format!("[{}]", inner.join(","))
}

/// Clusters eigenvalues into degeneracy blocks (single linkage on the sorted
/// values with an absolute gap threshold) and reports the stratum.
pub fn classify(s: &Spectrum, degeneracy_tol: f64) -> StratumInfo {
    let sorted = chamber_representative(s);
    let values = sorted.values();
    let mut blocks = vec![1usize];
    for w in values.windows(2) {
        if w[0] - w[1] > degeneracy_tol {
            blocks.push(1);
        } else {
            *blocks.last_mut().expect("at least one block") += 1;
        }
    }
    let mut info = StratumInfo::from_partition(s.n_levels(), blocks);
    // A spectrum concentrated on one eigenvalue is a pure state regardless
    // of how the zero block clusters.
    if (values[0] - 1.0).abs() <= degeneracy_tol {
        info.label = format!("pure {}", partition_string(&info.partition));
    }
    info
}

/// The distinguished chamber points: the center `O = (1/N, ..., 1/N)`, the
/// k-fold mixtures `Q_k = (1/k, ..., 1/k, 0, ..., 0)` for k = N−1 down to 2,
/// and the vertex `P = (1, 0, ..., 0)`.
///
/// Names follow the edge/face convention: `Q_A` for k = 2, `Q_F` for k = 3,
/// `Q_{k}` beyond that (the k = N−1 point is the boundary-cell center); for
/// N = 3 the single intermediate point is plain `Q`.
pub fn special_points(n_levels: usize) -> Result<Vec<(String, Spectrum)>> {
    if n_levels < 2 {
        return Err(Error::InvalidLevels(n_levels));
    }
    let n = n_levels;
    let mut points = Vec::with_capacity(n);
    points.push(("O".to_string(), uniform_mixture(n, n)));
    for k in (2..n).rev() {
        let name = if n == 3 {
            "Q".to_string()
        } else {
            match k {
                2 => "Q_A".to_string(),
                3 => "Q_F".to_string(),
                _ => format!("Q_{k}"),
            }
        };
        points.push((name, uniform_mixture(k, n)));
    }
    let mut vertex = vec![0.0; n];
    vertex[0] = 1.0;
    points.push(("P".to_string(), Spectrum::from_valid(vertex)));
    Ok(points)
}

fn uniform_mixture(k: usize, n: usize) -> Spectrum {
    let mut values = vec![0.0; n];
    for v in values.iter_mut().take(k) {
        *v = 1.0 / k as f64;
    }
    Spectrum::from_valid(values)
}

/// Euclidean distance between the coherence vectors of the diagonal states
/// built from `s1` and `s2`, in the given order (no chamber reduction).
pub fn coherence_distance(s1: &Spectrum, s2: &Spectrum, basis: &BasisSet) -> Result<f64> {
    let n = s1.n_levels();
    if s2.n_levels() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: s2.n_levels(),
        });
    }
    if basis.n_levels() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: basis.n_levels(),
        });
    }
    let tol = Tolerances::default();
    let a = encode(&DensityMatrix::from_diagonal(s1.values(), &tol)?, basis)?;
    let b = encode(&DensityMatrix::from_diagonal(s2.values(), &tol)?, basis)?;
    let dist_sq: f64 = a
        .components()
        .iter()
        .zip(b.components())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    Ok(dist_sq.sqrt())
}

/// Number of strata for `n_levels`, i.e. the number of integer partitions
/// p(N), by the standard counting recurrence.
pub fn count_strata(n_levels: usize) -> u64 {
    let n = n_levels;
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            table[m] += table[m - part];
        }
    }
    table[n]
}

/// All integer partitions of `n` with parts descending, largest-first order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        let cap = remaining.min(max_part);
        for part in (1..=cap).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}
