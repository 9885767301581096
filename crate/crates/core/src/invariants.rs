//! Unitary invariants of a state: the elementary symmetric functions
//! I₁, ..., I_N of its spectrum, computable either directly from the
//! eigenvalues or from power traces via Newton's identities. They are the
//! alternating coefficients of the characteristic polynomial, so
//! `ρ^N − I₁ ρ^{N−1} + I₂ ρ^{N−2} − ... + (−1)^N I_N = 0` holds up to
//! rounding; I₁ = Tr ρ = 1 always, I_N = det ρ vanishes on the boundary,
//! and I₂ = 0 exactly on pure states.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::chamber::Spectrum;
use crate::linalg::{self, CMatrix};
use crate::states::DensityMatrix;
use crate::Tolerances;

/// Invariants I₁..I_N of an N-level state; `values()[k-1]` is I_k.
#[derive(Debug, Clone, PartialEq)]
pub struct CasimirSet {
    n_levels: usize,
    values: Vec<f64>,
}

impl CasimirSet {
    pub fn n_levels(&self) -> usize {
        self.n_levels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// I_k for k in 1..=N.
    pub fn get(&self, k: usize) -> f64 {
        self.values[k - 1]
    }
}

impl Serialize for CasimirSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CasimirSet", 2)?;
        st.serialize_field("n", &self.n_levels)?;
        st.serialize_field("I", &self.values)?;
        st.end()
    }
}

/// Elementary symmetric polynomials of the eigenvalues, by incrementally
/// expanding the product Π (t + μᵢ). All terms are nonnegative for a valid
/// spectrum, so no cancellation occurs.
pub fn casimirs_from_spectrum(s: &Spectrum) -> CasimirSet {
    let n = s.n_levels();
    let mut e = vec![0.0f64; n + 1];
    e[0] = 1.0;
    for (idx, &mu) in s.values().iter().enumerate() {
        for k in (1..=idx + 1).rev() {
            e[k] += mu * e[k - 1];
        }
    }
    CasimirSet {
        n_levels: n,
        values: e[1..].to_vec(),
    }
}

/// Power traces t_k = Tr[ρ^k] converted to elementary symmetric functions
/// through Newton's identities `k I_k = Σ (−1)^{i−1} I_{k−i} t_i`.
pub fn casimirs_from_traces(rho: &DensityMatrix) -> CasimirSet {
    let n = rho.n_levels();
    let mut power = rho.entries().clone();
    let mut t = vec![0.0f64; n + 1];
    t[1] = power.trace().re;
    for tk in t.iter_mut().skip(2) {
        power = &power * rho.entries();
        *tk = power.trace().re;
    }

    let mut e = vec![0.0f64; n + 1];
    e[0] = 1.0;
    for k in 1..=n {
        let mut acc = 0.0;
        for i in 1..=k {
            let term = e[k - i] * t[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e[k] = acc / k as f64;
    }
    CasimirSet {
        n_levels: n,
        values: e[1..].to_vec(),
    }
}

/// Max-entry norm of the characteristic-equation residual
/// `Σ_{k=0}^{N} (−1)^k I_k ρ^{N−k}` with I₀ = 1.
pub fn characteristic_residual(rho: &DensityMatrix, casimirs: &CasimirSet) -> f64 {
    let n = rho.n_levels();
    assert_eq!(
        casimirs.n_levels(),
        n,
        "casimirs must be computed from the same state"
    );
    let mut powers = Vec::with_capacity(n + 1);
    powers.push(CMatrix::identity(n, n));
    for k in 1..=n {
        let next = &powers[k - 1] * rho.entries();
        powers.push(next);
    }
    let mut residual = powers[n].clone();
    for k in 1..=n {
        let coeff = casimirs.get(k) * if k % 2 == 1 { -1.0 } else { 1.0 };
        residual += powers[n - k].map(|z| z * coeff);
    }
    linalg::max_abs_entry(&residual)
}

/// Boundary membership from zero eigenvalues: `is_boundary` iff at least one
/// eigenvalue is zero (I_N = 0), `is_edge` iff at least two are
/// (I_{N−1} = I_N = 0). Zero detection uses the positivity tolerance.
pub fn boundary_vanishing(s: &Spectrum, tol: &Tolerances) -> (bool, bool) {
    let zeros = s
        .values()
        .iter()
        .filter(|&&v| v.abs() <= tol.positivity)
        .count();
    (zeros >= 1, zeros >= 2)
}

/// Discriminant of `t³ − t² + I₂ t − I₃`; nonnegative exactly when the
/// three-level characteristic equation has real roots. Test helper only.
#[allow(dead_code)]
pub(crate) fn cubic_discriminant(i2: f64, i3: f64) -> f64 {
    18.0 * i2 * i3 - 4.0 * i3 + i2 * i2 - 4.0 * i2 * i2 * i2 - 27.0 * i3 * i3
}

#[allow(dead_code)]
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}
