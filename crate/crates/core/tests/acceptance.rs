//! Acceptance suite: one test per release criterion, each printing a single
//! PASS/FAIL line. Run with
//! `cargo test -p stategeom --test acceptance -- --nocapture`.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use stategeom::{
    angles_to_spectrum, boundary_vanishing, build_basis, casimirs_from_spectrum,
    casimirs_from_traces, characteristic_residual, classify, coherence_distance, conjugate,
    count_strata, decode, encode, entropy, entropy_from_angles, is_pure, isentropic_contours,
    linalg, partitions, random_density_matrix, special_points, spectrum_of, AngleCoords,
    DensityMatrix, Spectrum, StratumInfo, Tolerances, C64,
};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn report(number: u32, name: &str, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    println!("criterion {number:>2} ({name}): {status} — {detail}");
    assert!(ok, "criterion {number} ({name}) failed: {detail}");
}

fn random_pure(n: usize, seed: u64) -> DensityMatrix {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let ket: Vec<C64> = (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            C64::new(re, im)
        })
        .collect();
    DensityMatrix::from_ket(&ket).unwrap()
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

fn bisect<F: Fn(f64) -> f64>(mut lo: f64, mut hi: f64, f: F) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) < 0.0, "root must be bracketed");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if f(mid) * flo > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn criterion_01_basis_validity() {
    let start = Instant::now();
    let mut max_dev = 0.0f64;
    let mut ok = true;
    for n in 2..=8usize {
        let basis = build_basis(n).unwrap();
        ok &= basis.len() == n * n - 1;
        for (i, a) in basis.matrices().iter().enumerate() {
            for (j, b) in basis.matrices().iter().enumerate() {
                let t = (a * b).trace();
                let expect = if i == j { 2.0 } else { 0.0 };
                max_dev = max_dev.max((t.re - expect).abs()).max(t.im.abs());
            }
        }
    }
    let elapsed = start.elapsed();
    ok &= max_dev < 1e-12 && elapsed.as_secs_f64() < 1.0;
    report(
        1,
        "basis validity",
        ok,
        &format!("max |Tr[λi λj] − 2δij| = {max_dev:.3e}, runtime {elapsed:.2?}"),
    );
}

#[test]
fn criterion_02_coherence_round_trip() {
    let t = tol();
    let mut max_matrix_dev = 0.0f64;
    let mut max_vector_dev = 0.0f64;
    let mut max_norm_dev = 0.0f64;
    for n in 2..=6usize {
        let basis = build_basis(n).unwrap();
        for seed in 0..100u64 {
            let rho = random_density_matrix(n, 1_000 + seed).unwrap();
            let v = encode(&rho, &basis).unwrap();
            let back = decode(&v, &basis, &t).unwrap();
            max_matrix_dev =
                max_matrix_dev.max(linalg::max_abs_entry(&(rho.entries() - back.entries())));
            let v2 = encode(&back, &basis).unwrap();
            let dev = v
                .components()
                .iter()
                .zip(v2.components())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            max_vector_dev = max_vector_dev.max(dev);

            let pure = random_pure(n, 2_000 + seed);
            let norm = encode(&pure, &basis).unwrap().norm();
            max_norm_dev = max_norm_dev.max((norm - 1.0).abs());
        }
    }
    let ok = max_matrix_dev < 1e-12 && max_vector_dev < 1e-12 && max_norm_dev < 1e-9;
    report(
        2,
        "coherence round-trip",
        ok,
        &format!(
            "decode∘encode {max_matrix_dev:.3e}, encode∘decode {max_vector_dev:.3e}, pure-norm {max_norm_dev:.3e}"
        ),
    );
}

#[test]
fn criterion_03_casimir_closed_forms() {
    let t = tol();
    let mut max_dev = 0.0f64;
    for n in 2..=8usize {
        let mm = Spectrum::new(vec![1.0 / n as f64; n], &t).unwrap();
        let c = casimirs_from_spectrum(&mm);
        for j in 1..=n {
            let expected = binomial(n, j) / (n as f64).powi(j as i32);
            max_dev = max_dev.max((c.get(j) - expected).abs());
        }
    }

    let c3 = casimirs_from_spectrum(&Spectrum::new(vec![1.0 / 3.0; 3], &t).unwrap());
    let table_dev = (c3.get(2) - 1.0 / 3.0)
        .abs()
        .max((c3.get(3) - 1.0 / 27.0).abs());

    let mut purity_ok = true;
    for seed in 0..100u64 {
        for n in [3usize, 4] {
            let mixed = random_density_matrix(n, 3_000 + seed).unwrap();
            let c = casimirs_from_traces(&mixed);
            purity_ok &= (c.get(2).abs() >= 1e-9) == !is_pure(&mixed, &t);

            let pure = random_pure(n, 4_000 + seed);
            let c = casimirs_from_traces(&pure);
            purity_ok &= c.get(2).abs() < 1e-9 && is_pure(&pure, &t);
        }
    }

    let ok = max_dev < 1e-12 && table_dev < 1e-12 && purity_ok;
    report(
        3,
        "casimir closed forms",
        ok,
        &format!(
            "mixed-state closed form {max_dev:.3e}, table {table_dev:.3e}, purity link {purity_ok}"
        ),
    );
}

#[test]
fn criterion_04_oracle_equivalence() {
    let t = tol();
    let mut max_route_dev = 0.0f64;
    let mut max_residual = 0.0f64;
    for n in 2..=6usize {
        for seed in 0..200u64 {
            let rho = random_density_matrix(n, 5_000 + seed).unwrap();
            let via_traces = casimirs_from_traces(&rho);
            let via_spectrum = casimirs_from_spectrum(&spectrum_of(&rho, &t));
            for k in 1..=n {
                max_route_dev = max_route_dev.max((via_traces.get(k) - via_spectrum.get(k)).abs());
            }
            max_residual = max_residual.max(characteristic_residual(&rho, &via_traces));
        }
    }
    let ok = max_route_dev < 1e-10 && max_residual < 1e-9;
    report(
        4,
        "oracle equivalence",
        ok,
        &format!("route deviation {max_route_dev:.3e}, characteristic residual {max_residual:.3e}"),
    );
}

#[test]
fn criterion_05_boundary_vanishing() {
    let t = tol();
    let mut ok = true;
    let mut max_offense = 0.0f64;
    for n in 2..=8usize {
        for (name, point) in special_points(n).unwrap() {
            let c = casimirs_from_spectrum(&point);
            let zeros = point
                .values()
                .iter()
                .filter(|&&v| v <= t.positivity)
                .count();
            let (boundary, edge) = boundary_vanishing(&point, &t);
            ok &= boundary == (zeros >= 1) && edge == (zeros >= 2);
            if boundary {
                max_offense = max_offense.max(c.get(n).abs());
                ok &= c.get(n).abs() < 1e-12;
            } else {
                ok &= c.get(n) > 0.0;
            }
            if edge {
                max_offense = max_offense.max(c.get(n - 1).abs());
                ok &= c.get(n - 1).abs() < 1e-12;
            }
            let _ = name;
        }
    }
    report(
        5,
        "boundary vanishing",
        ok,
        &format!("max |I| on vanishing orders = {max_offense:.3e}"),
    );
}

#[test]
fn criterion_06_entropy_ladder() {
    let t = tol();
    let mut max_dev = 0.0f64;
    for n in 2..=8usize {
        for (name, point) in special_points(n).unwrap() {
            let eta = entropy(&point);
            let expected = if name == "O" {
                (n as f64).ln()
            } else if name == "P" {
                0.0
            } else {
                let k = point.values().iter().filter(|&&v| v > t.positivity).count();
                (k as f64).ln()
            };
            max_dev = max_dev.max((eta - expected).abs());
        }
    }

    // padding leaves entropy unchanged, bit for bit
    let base = Spectrum::new(vec![0.5, 0.3, 0.2], &t).unwrap();
    let padded = Spectrum::new(vec![0.5, 0.3, 0.2, 0.0, 0.0], &t).unwrap();
    let padding_exact = entropy(&base) == entropy(&padded);

    // both angle routes at θ = π/2
    let angles = AngleCoords::new(std::f64::consts::FRAC_PI_2, 0.0).unwrap();
    let via_formula = entropy_from_angles(&angles);
    let via_spectrum = entropy(&angles_to_spectrum(2, &angles).unwrap());
    let ln2 = 2.0f64.ln();
    let angle_dev = (via_formula - ln2).abs().max((via_spectrum - ln2).abs());

    let ok = max_dev < 1e-12 && padding_exact && angle_dev < 1e-12;
    report(
        6,
        "entropy ladder",
        ok,
        &format!("ladder deviation {max_dev:.3e}, padding exact {padding_exact}, θ=π/2 deviation {angle_dev:.3e}"),
    );
}

#[test]
fn criterion_07_four_level_geometry() {
    let t = tol();
    let basis = build_basis(4).unwrap();
    let pts = special_points(4).unwrap();
    let by_name = |name: &str| -> &Spectrum { &pts.iter().find(|(n, _)| n == name).unwrap().1 };
    let d = |a: &str, b: &str| coherence_distance(by_name(a), by_name(b), &basis).unwrap();

    let expected = [
        ("O", "P", 1.0),
        ("O", "Q_A", 1.0 / 3.0f64.sqrt()),
        ("O", "Q_F", 1.0 / 3.0),
        ("Q_A", "P", (2.0f64 / 3.0).sqrt()),
        ("Q_A", "Q_F", 2.0f64.sqrt() / 3.0),
        ("Q_F", "P", 2.0 * 2.0f64.sqrt() / 3.0),
    ];
    let mut max_dev = 0.0f64;
    for (a, b, value) in expected {
        max_dev = max_dev.max((d(a, b) - value).abs());
    }

    let mut dims: Vec<usize> = partitions(4)
        .into_iter()
        .map(|parts| StratumInfo::from_partition(4, parts).orbit_dim)
        .collect();
    dims.sort_unstable();
    let census_ok = dims == vec![0, 6, 8, 10, 12];

    // the same dimensions come out of classifying representative spectra
    let reps = [
        (vec![0.25, 0.25, 0.25, 0.25], 0usize),
        (vec![1.0, 0.0, 0.0, 0.0], 6),
        (vec![0.5, 0.5, 0.0, 0.0], 8),
        (vec![0.4, 0.3, 0.3, 0.0], 10),
        (vec![0.4, 0.3, 0.2, 0.1], 12),
    ];
    let classify_ok = reps.iter().all(|(values, dim)| {
        classify(&Spectrum::new(values.clone(), &t).unwrap(), t.degeneracy).orbit_dim == *dim
    });

    let ok = max_dev < 1e-9 && census_ok && classify_ok;
    report(
        7,
        "four-level geometry table",
        ok,
        &format!("distance deviation {max_dev:.3e}, census dims {dims:?}"),
    );
}

#[test]
fn criterion_08_strata_count() {
    let expected = [(2usize, 2u64), (3, 3), (4, 5), (5, 7), (6, 11)];
    let mut ok = true;
    for (n, p) in expected {
        ok &= count_strata(n) == p;

        // brute force: every composition of n, realized as a spectrum and
        // classified; the distinct partitions must number p(n)
        use std::collections::BTreeSet;
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for mask in 0..(1usize << (n - 1)) {
            let mut blocks = vec![1usize];
            for bit in 0..(n - 1) {
                if mask & (1 << bit) != 0 {
                    blocks.push(1);
                } else {
                    *blocks.last_mut().unwrap() += 1;
                }
            }
            let m = blocks.len();
            let mut values = Vec::with_capacity(n);
            for (j, &size) in blocks.iter().enumerate() {
                for _ in 0..size {
                    values.push((m - j) as f64);
                }
            }
            let sum: f64 = values.iter().sum();
            for v in &mut values {
                *v /= sum;
            }
            let s = Spectrum::new(values, &tol()).unwrap();
            seen.insert(classify(&s, Tolerances::DEFAULT_DEGENERACY).partition);
        }
        ok &= seen.len() as u64 == p;
    }
    report(
        8,
        "strata count",
        ok,
        "p(N) = (2, 3, 5, 7, 11) for N = 2..6, recurrence and enumeration",
    );
}

#[test]
fn criterion_09_contour_fidelity() {
    let start = Instant::now();
    let ln2 = 2.0f64.ln();
    let contours = isentropic_contours(3, ln2, 200).unwrap();
    let elapsed = start.elapsed();

    let max_level_dev = contours.max_level_deviation();

    let root = bisect(0.4, 0.99, |x| {
        let y = (1.0 - x) / 2.0;
        let s = Spectrum::new(vec![x, y, y], &tol()).unwrap();
        entropy(&s) - ln2
    });
    let endpoint = contours
        .polylines
        .iter()
        .flat_map(|poly| [poly.first().unwrap(), poly.last().unwrap()])
        .find(|p| (p[1] - p[2]).abs() < 1e-12 && p[0] > 0.4)
        .copied();
    let (oracle_dev, rounded_dev) = match endpoint {
        Some(p) => {
            let oracle = (p[0] - root).abs();
            let rounded =
                ((p[0] - 0.768).powi(2) + (p[1] - 0.116).powi(2) + (p[2] - 0.116).powi(2)).sqrt();
            (oracle, rounded)
        }
        None => (f64::INFINITY, f64::INFINITY),
    };

    let ok = max_level_dev < 1e-3
        && oracle_dev < 1e-6
        && rounded_dev < 1e-2
        && elapsed.as_secs_f64() < 5.0;
    report(
        9,
        "contour fidelity",
        ok,
        &format!(
            "max |η − ln 2| = {max_level_dev:.3e}, oracle crossing dev {oracle_dev:.3e}, rounded-point dev {rounded_dev:.3e}, runtime {elapsed:.2?}"
        ),
    );
}

#[test]
fn criterion_10_property_suite() {
    let start = Instant::now();
    let t = tol();
    let mut violations = 0usize;

    // entropy concavity along random segments
    let mut rng = ChaCha12Rng::seed_from_u64(99);
    for _ in 0..500 {
        let n = 4;
        let draw = |rng: &mut ChaCha12Rng| -> Vec<f64> {
            let raw: Vec<f64> = (0..n)
                .map(|_| {
                    let g: f64 = StandardNormal.sample(rng);
                    g.abs() + 1e-3
                })
                .collect();
            let sum: f64 = raw.iter().sum();
            raw.into_iter().map(|v| v / sum).collect()
        };
        let a = draw(&mut rng);
        let b = draw(&mut rng);
        let lam: f64 = {
            let g: f64 = StandardNormal.sample(&mut rng);
            (g.abs() % 1.0).clamp(0.0, 1.0)
        };
        let mix: Vec<f64> = a
            .iter()
            .zip(&b)
            .map(|(x, y)| (1.0 - lam) * x + lam * y)
            .collect();
        let sa = Spectrum::new(a, &t).unwrap();
        let sb = Spectrum::new(b, &t).unwrap();
        let sm = Spectrum::new(mix, &t).unwrap();
        if entropy(&sm) < (1.0 - lam) * entropy(&sa) + lam * entropy(&sb) - 1e-12 {
            violations += 1;
        }
    }

    // permutation invariance of entropy and the chamber representative
    for seed in 0..200u64 {
        let rho = random_density_matrix(5, 7_000 + seed).unwrap();
        let s = spectrum_of(&rho, &t);
        let mut reversed = s.values().to_vec();
        reversed.reverse();
        let r = Spectrum::new(reversed, &t).unwrap();
        if entropy(&s) != entropy(&r) {
            violations += 1;
        }
        let ca = casimirs_from_spectrum(&s);
        let cb = casimirs_from_spectrum(&r);
        for k in 1..=5 {
            if (ca.get(k) - cb.get(k)).abs() > 1e-12 {
                violations += 1;
            }
        }
    }

    // conjugation invariance of spectrum, invariants and entropy
    for n in 2..=5usize {
        let mut rng = ChaCha12Rng::seed_from_u64(n as u64);
        for seed in 0..100u64 {
            let rho = random_density_matrix(n, 8_000 + seed).unwrap();
            let u = linalg::haar_unitary(n, &mut rng);
            let rotated = conjugate(&rho, &u, &t).unwrap();

            let s1 = spectrum_of(&rho, &t);
            let s2 = spectrum_of(&rotated, &t);
            let spec_dev = s1
                .values()
                .iter()
                .zip(s2.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if spec_dev > 1e-10 {
                violations += 1;
            }

            let c1 = casimirs_from_traces(&rho);
            let c2 = casimirs_from_traces(&rotated);
            for k in 1..=n {
                if (c1.get(k) - c2.get(k)).abs() > 1e-10 {
                    violations += 1;
                }
            }

            if (entropy(&s1) - entropy(&s2)).abs() > 1e-10 {
                violations += 1;
            }
        }
    }

    let elapsed = start.elapsed();
    let ok = violations == 0 && elapsed.as_secs_f64() < 60.0;
    report(
        10,
        "property suite",
        ok,
        &format!("{violations} violations, runtime {elapsed:.2?}"),
    );
}
