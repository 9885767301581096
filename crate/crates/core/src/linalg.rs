//! Dense complex linear algebra helpers for small matrices.
//!
//! Everything here operates on `nalgebra` dynamic matrices of `Complex<f64>`.
//! The matrices in this crate are tiny (N <= 8 in practice), so clarity wins
//! over blocking or allocation tricks.

use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

/// Symmetrized copy `(m + m†)/2`; exactly Hermitian entrywise.
pub fn hermitize(m: &CMatrix) -> CMatrix {
    let adj = m.adjoint();
    (m + adj).map(|z| z * 0.5)
}

/// Max modulus of `m - m†` over all entries.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Max modulus over all entries.
pub fn max_abs_entry(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
///
/// The input must already be (numerically) Hermitian; callers go through
/// [`hermitize`] first.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut evs: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    evs.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
    evs
}

/// Max modulus of `u†u - I` over all entries.
pub fn unitary_deviation(u: &CMatrix) -> f64 {
    let n = u.nrows();
    let prod = u.adjoint() * u;
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let expect = if i == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            };
            dev = dev.max((prod[(i, j)] - expect).norm());
        }
    }
    dev
}

/// Haar-distributed random unitary: QR of a complex Gaussian matrix with the
/// R diagonal phases folded into Q.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        C64::new(re, im)
    });
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let rjj = r[(j, j)];
        let modulus = rjj.norm();
        let phase = if modulus > 0.0 {
            rjj / modulus
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}
