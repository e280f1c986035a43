//! Discrete geometries: radial half-line grids with quadrature weights for
//! the measure r^{N-1} dr, and periodic boxes [-L, L)^N.
//!
//! Radial grids come in two flavors. `Uniform` is the midpoint rule with
//! exact cell masses (constants integrate exactly in every dimension).
//! `Algebraic` maps r = R t^2 and places composite 4-point Gauss-Legendre
//! panels in t, which concentrates nodes near the origin, keeps every node
//! strictly interior, and integrates the slowly decaying tail tests to
//! well below 1e-8 at a few hundred points.

use crate::error::{Error, Result};
use crate::fft::freq_index;

/// Budget cap on total box points, m^N.
pub const BOX_POINT_BUDGET: usize = 1 << 24;

/// Minimum radial point count.
pub const RADIAL_MIN_POINTS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stretch {
    Uniform,
    Algebraic,
}

/// Quadrature-bearing discretization of (0, R_max].
#[derive(Debug, Clone)]
pub struct RadialGrid {
    pub n_dim: usize,
    pub nodes: Vec<f64>,
    /// weights w_i with sum w_i f(r_i) ~ int_0^{R_max} f(r) r^{N-1} dr
    pub weights: Vec<f64>,
    pub r_max: f64,
    pub stretch: Stretch,
}

/// GL4 abscissae/weights on [-1, 1].
const GL4_X: [f64; 4] = [
    -0.8611363115940526,
    -0.3399810435848563,
    0.3399810435848563,
    0.8611363115940526,
];
const GL4_W: [f64; 4] = [
    0.3478548451374539,
    0.6521451548625461,
    0.6521451548625461,
    0.3478548451374539,
];

/// Build a radial grid. For `Algebraic`, M is rounded up to a multiple of 4.
pub fn make_radial_grid(n_dim: usize, m: usize, r_max: f64, stretch: Stretch) -> Result<RadialGrid> {
    if !(1..=3).contains(&n_dim) {
        return Err(Error::InvalidDimension(n_dim));
    }
    if r_max <= 0.0 || !r_max.is_finite() {
        return Err(Error::NonPositiveRadius(r_max));
    }
    if m < RADIAL_MIN_POINTS {
        return Err(Error::TooFewPoints { got: m, min: RADIAL_MIN_POINTS });
    }
    let nd = n_dim as f64;
    let (nodes, weights) = match stretch {
        Stretch::Uniform => {
            let h = r_max / m as f64;
            let nodes: Vec<f64> = (0..m).map(|i| (i as f64 + 0.5) * h).collect();
            // exact cell masses of r^{N-1} dr on [i h, (i+1) h]
            let weights: Vec<f64> = (0..m)
                .map(|i| {
                    let a = i as f64 * h;
                    let b = (i + 1) as f64 * h;
                    (b.powf(nd) - a.powf(nd)) / nd
                })
                .collect();
            (nodes, weights)
        }
        Stretch::Algebraic => {
            let panels = m.div_ceil(4);
            let h = 1.0 / panels as f64;
            let mut nodes = Vec::with_capacity(4 * panels);
            let mut weights = Vec::with_capacity(4 * panels);
            for p in 0..panels {
                let t0 = p as f64 * h;
                for q in 0..4 {
                    let t = t0 + 0.5 * h * (1.0 + GL4_X[q]);
                    let wt = 0.5 * h * GL4_W[q];
                    let r = r_max * t * t;
                    // dr = 2 R t dt folded with r^{N-1}
                    nodes.push(r);
                    weights.push(wt * 2.0 * r_max * t * r.powf(nd - 1.0));
                }
            }
            (nodes, weights)
        }
    };
    Ok(RadialGrid { n_dim, nodes, weights, r_max, stretch })
}

impl RadialGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Sample a radial function at the nodes.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.nodes.iter().map(|&r| f(r)).collect()
    }

    /// Weighted inner product <f, g> = sum w f g ~ int f g r^{N-1} dr.
    pub fn inner(&self, f: &[f64], g: &[f64]) -> f64 {
        self.weights
            .iter()
            .zip(f.iter().zip(g.iter()))
            .map(|(w, (a, b))| w * a * b)
            .sum()
    }

    /// Bare 1-D quadrature weights (the r^{N-1} factor divided back out).
    /// Needed when re-weighting for an effective dimension.
    pub fn line_weights(&self) -> Vec<f64> {
        let nd = self.n_dim as f64;
        self.weights
            .iter()
            .zip(self.nodes.iter())
            .map(|(w, r)| w / r.powf(nd - 1.0))
            .collect()
    }

    pub fn id(&self) -> u64 {
        grid_hash(&[
            self.n_dim as u64,
            self.nodes.len() as u64,
            self.r_max.to_bits(),
            match self.stretch {
                Stretch::Uniform => 0,
                Stretch::Algebraic => 1,
            },
        ])
    }
}

/// Integrate samples against the radial measure. With `full_space` the
/// result is multiplied by the area of S^{N-1} so it approximates the
/// integral over R^N of the radial extension.
pub fn integrate_radial(g: &RadialGrid, f: &[f64], full_space: bool) -> Result<f64> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch { got: f.len(), expected: g.len() });
    }
    let raw: f64 = g.weights.iter().zip(f.iter()).map(|(w, v)| w * v).sum();
    Ok(if full_space {
        raw * crate::special::sphere_area(g.n_dim)
    } else {
        raw
    })
}

/// Periodic box [-L, L)^N with m points per axis.
#[derive(Debug, Clone)]
pub struct BoxGrid {
    pub n_dim: usize,
    pub half_width: f64,
    pub points_per_axis: usize,
}

impl BoxGrid {
    pub fn new(n_dim: usize, half_width: f64, points_per_axis: usize) -> Result<Self> {
        if !(1..=3).contains(&n_dim) {
            return Err(Error::InvalidDimension(n_dim));
        }
        if half_width <= 0.0 || !half_width.is_finite() {
            return Err(Error::NonPositiveRadius(half_width));
        }
        if points_per_axis < 16 || !points_per_axis.is_power_of_two() {
            return Err(Error::TooFewPoints { got: points_per_axis, min: 16 });
        }
        let total = points_per_axis.pow(n_dim as u32);
        if total > BOX_POINT_BUDGET {
            return Err(Error::BudgetExceeded { requested: total, budget: BOX_POINT_BUDGET });
        }
        Ok(BoxGrid { n_dim, half_width, points_per_axis })
    }

    pub fn len(&self) -> usize {
        self.points_per_axis.pow(self.n_dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / self.points_per_axis as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.dx().powi(self.n_dim as i32)
    }

    pub fn volume(&self) -> f64 {
        (2.0 * self.half_width).powi(self.n_dim as i32)
    }

    /// Coordinates of the flat index.
    pub fn coords(&self, idx: usize) -> [f64; 3] {
        let m = self.points_per_axis;
        let dx = self.dx();
        let mut out = [0.0; 3];
        let mut rem = idx;
        for d in (0..self.n_dim).rev() {
            out[d] = -self.half_width + (rem % m) as f64 * dx;
            rem /= m;
        }
        out
    }

    /// Sample a function of the coordinates into a flat field.
    pub fn sample(&self, f: impl Fn(&[f64]) -> f64 + Sync) -> Vec<f64> {
        let n = self.len();
        let mut out = vec![0.0; n];
        for (idx, v) in out.iter_mut().enumerate() {
            let c = self.coords(idx);
            *v = f(&c[..self.n_dim]);
        }
        out
    }

    /// Squared wave vector |xi|^2 for the flat spectral index; xi = pi k / L.
    pub fn xi2(&self, idx: usize) -> f64 {
        let m = self.points_per_axis;
        let base = std::f64::consts::PI / self.half_width;
        let mut rem = idx;
        let mut acc = 0.0;
        for _ in 0..self.n_dim {
            let k = freq_index(rem % m, m) as f64;
            acc += (base * k) * (base * k);
            rem /= m;
        }
        acc
    }

    /// Quadrature inner product <u, v> = cellvol * sum u v.
    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        let s: f64 = u.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        s * self.cell_volume()
    }

    pub fn norm(&self, u: &[f64]) -> f64 {
        self.inner(u, u).sqrt()
    }

    pub fn id(&self) -> u64 {
        grid_hash(&[
            self.n_dim as u64,
            self.points_per_axis as u64,
            self.half_width.to_bits(),
        ])
    }
}

fn grid_hash(words: &[u64]) -> u64 {
    // FNV-1a over the defining parameters
    let mut h: u64 = 0xcbf29ce484222325;
    for w in words {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate;
    use approx::assert_relative_eq;

    #[test]
    fn uniform_1d_is_midpoint() {
        let g = make_radial_grid(1, 64, 50.0, Stretch::Uniform).unwrap();
        for (i, (&r, &w)) in g.nodes.iter().zip(g.weights.iter()).enumerate() {
            assert_relative_eq!(r, (i as f64 + 0.5) * 50.0 / 64.0, epsilon = 1e-12);
            assert_relative_eq!(w, 50.0 / 64.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(
            make_radial_grid(2, 16, -1.0, Stretch::Uniform),
            Err(Error::NonPositiveRadius(_))
        ));
        assert!(matches!(
            make_radial_grid(4, 64, 1.0, Stretch::Uniform),
            Err(Error::InvalidDimension(4))
        ));
        assert!(matches!(
            make_radial_grid(1, 8, 1.0, Stretch::Uniform),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn nodes_positive_increasing_weights_positive() {
        for stretch in [Stretch::Uniform, Stretch::Algebraic] {
            let g = make_radial_grid(3, 128, 100.0, stretch).unwrap();
            assert!(g.nodes[0] > 0.0);
            assert!(g.nodes.windows(2).all(|p| p[0] < p[1]));
            assert!(g.weights.iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn constants_integrate_exactly() {
        for n_dim in 1..=3 {
            for stretch in [Stretch::Uniform, Stretch::Algebraic] {
                let g = make_radial_grid(n_dim, 64, 7.5, stretch).unwrap();
                let ones = vec![1.0; g.len()];
                let got = integrate_radial(&g, &ones, false).unwrap();
                let want = 7.5_f64.powi(n_dim as i32) / n_dim as f64;
                assert_relative_eq!(got, want, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn algebraic_tail_test_beats_1e8() {
        // f = (1+r^2)^{-p}, p in {N, N+1}, oracle: adaptive quadrature on [0, R]
        for n_dim in 1..=3usize {
            for p in [n_dim as i32, n_dim as i32 + 1] {
                let g = make_radial_grid(n_dim, 256, 100.0, Stretch::Algebraic).unwrap();
                let f = g.sample(|r| (1.0 + r * r).powi(-p));
                let got = integrate_radial(&g, &f, false).unwrap();
                let (want, err) = integrate(
                    |r| r.powi(n_dim as i32 - 1) * (1.0 + r * r).powi(-p),
                    0.0,
                    100.0,
                    1e-13,
                );
                assert!(err < 1e-11);
                assert!(
                    (got - want).abs() / want.abs() < 1e-8,
                    "N={n_dim} p={p}: rel err {:.2e}",
                    (got - want).abs() / want.abs()
                );
            }
        }
    }

    #[test]
    fn refinement_reduces_tail_error() {
        // doubling M reduces the error by at least 2x until the 1e-12 floor
        let n_dim = 3;
        let (want, _) = integrate(|r| r * r * (1.0 + r * r).powi(-3), 0.0, 100.0, 1e-14);
        let mut prev: Option<f64> = None;
        for m in [32, 64, 128, 256] {
            let g = make_radial_grid(n_dim, m, 100.0, Stretch::Algebraic).unwrap();
            let f = g.sample(|r| (1.0 + r * r).powi(-3));
            let got = integrate_radial(&g, &f, false).unwrap();
            let err = ((got - want) / want).abs();
            if let Some(p) = prev {
                assert!(err < 0.5 * p || err < 1e-12, "m={m}: {err:.2e} vs prev {p:.2e}");
            }
            prev = Some(err);
        }
    }

    #[test]
    fn gaussian_moment_oracle() {
        // N=3: int_0^inf e^{-r^2} r^2 dr = sqrt(pi)/4
        let g = make_radial_grid(3, 256, 30.0, Stretch::Algebraic).unwrap();
        let f = g.sample(|r| (-r * r).exp());
        let got = integrate_radial(&g, &f, false).unwrap();
        assert_relative_eq!(got, std::f64::consts::PI.sqrt() / 4.0, max_relative = 1e-10);
    }

    #[test]
    fn zero_integrand() {
        let g = make_radial_grid(2, 64, 10.0, Stretch::Uniform).unwrap();
        let z = vec![0.0; g.len()];
        assert_eq!(integrate_radial(&g, &z, false).unwrap(), 0.0);
    }

    #[test]
    fn uniform_constant_1d_exact() {
        let g = make_radial_grid(1, 64, 50.0, Stretch::Uniform).unwrap();
        let ones = vec![1.0; 64];
        assert_relative_eq!(integrate_radial(&g, &ones, false).unwrap(), 50.0, epsilon = 1e-12);
    }

    #[test]
    fn length_mismatch_rejected() {
        let g = make_radial_grid(1, 64, 50.0, Stretch::Uniform).unwrap();
        assert!(matches!(
            integrate_radial(&g, &[1.0; 10], false),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn box_grid_basics() {
        let g = BoxGrid::new(2, 40.0, 256).unwrap();
        assert_eq!(g.len(), 65536);
        assert_relative_eq!(g.cell_volume() * g.len() as f64, g.volume(), epsilon = 1e-9);
        assert!(BoxGrid::new(2, 40.0, 48).is_err()); // not a power of two
        assert!(BoxGrid::new(3, 40.0, 512).is_err()); // budget
        // discrete integral of 1 is exactly (2L)^N
        let ones = vec![1.0; g.len()];
        assert_relative_eq!(g.inner(&ones, &ones), g.volume(), max_relative = 1e-12);
    }

    #[test]
    fn box_coords_symmetric() {
        // lattice is symmetric under x -> -x modulo 2L (x = -L self-paired)
        let g = BoxGrid::new(1, 10.0, 16).unwrap();
        let xs: Vec<f64> = (0..16).map(|i| g.coords(i)[0]).collect();
        for &x in &xs {
            let neg = if x == -10.0 { -10.0 } else { -x };
            assert!(xs.iter().any(|&y| (y - neg).abs() < 1e-12));
        }
    }
}
