//! Von Neumann entropy, angle parametrizations, entropy surfaces over the
//! three-level chamber, and isentropic contour extraction.
//!
//! Entropy is `η = −Σ μᵢ ln μᵢ` in nats, with `0 · ln 0 := 0` by continuity;
//! eigenvalues below the positivity tolerance contribute zero. It ranges
//! from `ln N` at the maximally mixed state down to `0` at pure states, and
//! padding a spectrum with zeros leaves it unchanged exactly, so each N
//! embeds all smaller cases.
//!
//! Surfaces and contours are specific to N = 3, where the chamber
//! `{x ≥ y ≥ z ≥ 0, x + y + z = 1}` is the triangle with extreme points
//! O = (1/3, 1/3, 1/3), Q = (1/2, 1/2, 0) and P = (1, 0, 0). Contours are
//! extracted by marching over a uniform barycentric grid on that triangle
//! (each rhombus split into two triangles), with every emitted vertex
//! refined by bisection along its supporting grid edge.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::chamber::Spectrum;
use crate::{Error, Result, Tolerances};

/// Eigenvalues below this threshold contribute zero entropy.
const ZERO_CUTOFF: f64 = Tolerances::DEFAULT_POSITIVITY;

/// Entropy of a spectrum in nats: `−Σ μᵢ ln μᵢ`.
///
/// Terms are accumulated smallest-first, which makes the result independent
/// of the eigenvalue order and of zero padding, bit for bit.
pub fn entropy(s: &Spectrum) -> f64 {
    entropy_of_values(s.values())
}

pub(crate) fn entropy_of_values(values: &[f64]) -> f64 {
    let mut terms: Vec<f64> = values
        .iter()
        .map(|&mu| if mu < ZERO_CUTOFF { 0.0 } else { -mu * mu.ln() })
        .collect();
    terms.sort_by(|a, b| a.partial_cmp(b).expect("entropy terms are finite"));
    terms.iter().sum()
}

/// Polar angles parametrizing two- and three-level spectra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleCoords {
    /// In [0, π].
    pub theta: f64,
    /// In [0, π]; ignored for two levels.
    pub phi: f64,
}

impl AngleCoords {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        for (name, v) in [("theta", theta), ("phi", phi)] {
            if !v.is_finite() || !(-1e-12..=std::f64::consts::PI + 1e-12).contains(&v) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must lie in [0, pi], got {v}"
                )));
            }
        }
        Ok(Self { theta, phi })
    }
}

/// Spectrum of the angle parametrization:
/// N = 2: `(cos²(θ/2), sin²(θ/2))`;
/// N = 3: `(sin²(θ/2) cos²(φ/2), sin²(θ/2) sin²(φ/2), cos²(θ/2))`.
pub fn angles_to_spectrum(n_levels: usize, angles: &AngleCoords) -> Result<Spectrum> {
    let half = angles.theta / 2.0;
    let (c2, s2) = (half.cos().powi(2), half.sin().powi(2));
    match n_levels {
        2 => Spectrum::new(vec![c2, s2], &Tolerances::default()),
        3 => {
            let hphi = angles.phi / 2.0;
            let (pc2, ps2) = (hphi.cos().powi(2), hphi.sin().powi(2));
            Spectrum::new(vec![s2 * pc2, s2 * ps2, c2], &Tolerances::default())
        }
        other => Err(Error::UnsupportedLevels {
            got: other,
            supported: "2 or 3",
        }),
    }
}

/// Closed-form two-level entropy
/// `η(θ) = −cos²(θ/2) ln cos²(θ/2) − sin²(θ/2) ln sin²(θ/2)`.
pub fn entropy_from_angles(angles: &AngleCoords) -> f64 {
    let half = angles.theta / 2.0;
    let c2 = half.cos().powi(2);
    let s2 = half.sin().powi(2);
    let term = |mu: f64| if mu < ZERO_CUTOFF { 0.0 } else { -mu * mu.ln() };
    term(c2) + term(s2)
}

/// One grid sample of the three-level entropy surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub eta: f64,
}

/// Chamber corner weights (a, b, c) -> chamber coordinates, with a the
/// weight of O, b of Q and c of P.
fn chamber_point(a: f64, b: f64, c: f64, total: f64) -> [f64; 3] {
    let x = (a / 3.0 + b / 2.0 + c) / total;
    let y = (a / 3.0 + b / 2.0) / total;
    let z = (a / 3.0) / total;
    [x, y, z]
}

fn eta3(p: [f64; 3]) -> f64 {
    entropy_of_values(&p)
}

/// Samples entropy on a uniform barycentric grid over the three-level
/// chamber with `resolution` subdivisions per edge. Row order is fixed:
/// the O-weight index runs outermost, the Q-weight index inner.
pub fn entropy_surface(n_levels: usize, resolution: usize) -> Result<Vec<SurfaceSample>> {
    if n_levels != 3 {
        return Err(Error::UnsupportedLevels {
            got: n_levels,
            supported: "exactly 3",
        });
    }
    if resolution < 2 {
        return Err(Error::InvalidArgument(format!(
            "resolution must be at least 2, got {resolution}"
        )));
    }
    let r = resolution;
    let rf = r as f64;
    let mut rows = Vec::with_capacity((r + 1) * (r + 2) / 2);
    for a in 0..=r {
        for b in 0..=(r - a) {
            let c = r - a - b;
            let p = chamber_point(a as f64, b as f64, c as f64, rf);
            rows.push(SurfaceSample {
                x: p[0],
                y: p[1],
                z: p[2],
                eta: eta3(p),
            });
        }
    }
    Ok(rows)
}

/// Level set of the entropy over the three-level chamber.
///
/// Every polyline vertex lies in the chamber and satisfies
/// `|η(vertex) − level| < 1e−3` (far tighter in practice, since vertices are
/// refined by bisection). Degenerate levels report single points: the
/// chamber center for `level = ln 3`, the vertex for `level = 0`. Levels
/// outside `[0, ln 3]` yield an empty set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContourSet {
    pub level: f64,
    pub polylines: Vec<Vec<[f64; 3]>>,
}

impl ContourSet {
    /// Total vertex count over all polylines.
    pub fn point_count(&self) -> usize {
        self.polylines.iter().map(|p| p.len()).sum()
    }

    /// Largest |η(vertex) − level| over all vertices.
    pub fn max_level_deviation(&self) -> f64 {
        self.polylines
            .iter()
            .flatten()
            .map(|&p| (eta3(p) - self.level).abs())
            .fold(0.0, f64::max)
    }
}

type NodeId = (usize, usize);
type EdgeKey = (NodeId, NodeId);

fn edge_key(p: NodeId, q: NodeId) -> EdgeKey {
    if p <= q {
        (p, q)
    } else {
        (q, p)
    }
}

/// Marching triangles over the chamber grid at the given level.
pub fn isentropic_contours(n_levels: usize, level: f64, resolution: usize) -> Result<ContourSet> {
    if n_levels != 3 {
        return Err(Error::UnsupportedLevels {
            got: n_levels,
            supported: "exactly 3",
        });
    }
    if resolution < 2 {
        return Err(Error::InvalidArgument(format!(
            "resolution must be at least 2, got {resolution}"
        )));
    }
    if !level.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "level must be finite, got {level}"
        )));
    }

    let ln3 = 3.0f64.ln();
    if level == 0.0 {
        return Ok(ContourSet {
            level,
            polylines: vec![vec![[1.0, 0.0, 0.0]]],
        });
    }
    if level == ln3 {
        let o = chamber_point(1.0, 0.0, 0.0, 1.0);
        return Ok(ContourSet {
            level,
            polylines: vec![vec![o]],
        });
    }
    if level < 0.0 || level > ln3 {
        return Ok(ContourSet {
            level,
            polylines: Vec::new(),
        });
    }

    let r = resolution;
    let rf = r as f64;
    let point = |node: NodeId| -> [f64; 3] {
        let (a, b) = node;
        chamber_point(a as f64, b as f64, (r - a - b) as f64, rf)
    };

    // grid entropies, indexed [a][b]
    let grid: Vec<Vec<f64>> = (0..=r)
        .map(|a| (0..=(r - a)).map(|b| eta3(point((a, b)))).collect())
        .collect();
    let above = |node: NodeId| grid[node.0][node.1] >= level;

    let mut crossings: BTreeMap<EdgeKey, [f64; 3]> = BTreeMap::new();
    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();

    let mut handle_triangle = |verts: [NodeId; 3]| {
        let flags = [above(verts[0]), above(verts[1]), above(verts[2])];
        let count = flags.iter().filter(|&&f| f).count();
        if count == 0 || count == 3 {
            return;
        }
        let lone_flag = count == 1;
        let lone = (0..3)
            .find(|&i| flags[i] == lone_flag)
            .expect("mixed triangle");
        let others = [(lone + 1) % 3, (lone + 2) % 3];
        let mut keys = [
            edge_key(verts[lone], verts[others[0]]),
            edge_key(verts[lone], verts[others[1]]),
        ];
        keys.sort();
        for key in keys {
            crossings.entry(key).or_insert_with(|| {
                refine_crossing(
                    point(key.0),
                    point(key.1),
                    grid[key.0 .0][key.0 .1],
                    grid[key.1 .0][key.1 .1],
                    level,
                )
            });
        }
        segments.push((keys[0], keys[1]));
    };

    for a in 0..r {
        for b in 0..(r - a) {
            handle_triangle([(a, b), (a + 1, b), (a, b + 1)]);
            if b + 1 < r - a {
                handle_triangle([(a + 1, b), (a, b + 1), (a + 1, b + 1)]);
            }
        }
    }

    // chain segments into polylines: open paths first (boundary edge keys
    // have a single incident triangle), then closed loops
    let mut adjacency: BTreeMap<EdgeKey, Vec<usize>> = BTreeMap::new();
    for (idx, (a, b)) in segments.iter().enumerate() {
        adjacency.entry(*a).or_default().push(idx);
        adjacency.entry(*b).or_default().push(idx);
    }
    let mut used = vec![false; segments.len()];
    let mut key_paths: Vec<Vec<EdgeKey>> = Vec::new();
    let open_starts: Vec<EdgeKey> = adjacency
        .iter()
        .filter(|(_, segs)| segs.len() == 1)
        .map(|(key, _)| *key)
        .collect();
    let all_keys: Vec<EdgeKey> = adjacency.keys().copied().collect();
    for start in open_starts.into_iter().chain(all_keys) {
        if adjacency[&start].iter().all(|&i| used[i]) {
            continue;
        }
        let mut path = vec![start];
        let mut current = start;
        while let Some(&seg) = adjacency[&current].iter().find(|&&i| !used[i]) {
            used[seg] = true;
            let (a, b) = segments[seg];
            current = if a == current { b } else { a };
            path.push(current);
        }
        key_paths.push(path);
    }

    let mut polylines = Vec::with_capacity(key_paths.len());
    for path in key_paths {
        let mut points: Vec<[f64; 3]> = Vec::with_capacity(path.len());
        for key in path {
            let p = crossings[&key];
            let is_dup = points.last().is_some_and(|last| {
                last.iter().zip(&p).map(|(u, v)| (u - v).abs()).sum::<f64>() < 1e-12
            });
            if !is_dup {
                points.push(p);
            }
        }
        if !points.is_empty() {
            polylines.push(points);
        }
    }

    Ok(ContourSet { level, polylines })
}

/// Bisection along the grid edge from `pa` to `pb` for the point where the
/// entropy crosses `level`. One endpoint sits strictly below the level, the
/// other at or above it; the bracket is halved to floating-point resolution.
fn refine_crossing(pa: [f64; 3], pb: [f64; 3], eta_a: f64, eta_b: f64, level: f64) -> [f64; 3] {
    let lerp = |t: f64| -> [f64; 3] {
        [
            pa[0] + (pb[0] - pa[0]) * t,
            pa[1] + (pb[1] - pa[1]) * t,
            pa[2] + (pb[2] - pa[2]) * t,
        ]
    };
    let f = |t: f64| eta3(lerp(t)) - level;

    let (mut neg, mut pos) = if eta_a < level && eta_b >= level {
        (0.0f64, 1.0f64)
    } else {
        (1.0f64, 0.0f64)
    };
    for _ in 0..80 {
        let mid = 0.5 * (neg + pos);
        if mid == neg || mid == pos {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return lerp(mid);
        }
        if fm < 0.0 {
            neg = mid;
        } else {
            pos = mid;
        }
    }
    lerp(pos)
}

/// Entropy along the affine segment `(1−t) s1 + t s2`, sampled uniformly.
pub fn line_entropy_profile(
    s1: &Spectrum,
    s2: &Spectrum,
    samples: usize,
) -> Result<Vec<(f64, f64)>> {
    let n = s1.n_levels();
    if s2.n_levels() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: s2.n_levels(),
        });
    }
    if samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "samples must be at least 2, got {samples}"
        )));
    }
    let mut profile = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let values: Vec<f64> = s1
            .values()
            .iter()
            .zip(s2.values())
            .map(|(a, b)| (1.0 - t) * a + t * b)
            .collect();
        profile.push((t, entropy_of_values(&values)));
    }
    Ok(profile)
}
