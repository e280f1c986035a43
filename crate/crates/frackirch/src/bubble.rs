//! The explicit bubble of the critical limit equation and its calibration.
//!
//! Q(x) = C (μ / (μ^2 + |x - ξ|^2))^{(N-2s)/2} solves (-Δ)^s Q = Q^{2*_s - 1}
//! for exactly one C = C(N, s) > 0. The artifact determines C numerically by
//! minimizing the discrete residual on a periodic box (bracketed scalar
//! minimization); the Gamma-function closed form is kept as an optional
//! cross-check, not a dependency of the pipeline.

use crate::error::{Error, Result};
use crate::grid::BoxGrid;
use crate::special::gamma;
use crate::spectral::BoxSpectral;
use std::fmt::Write as _;
use std::path::Path;

/// Exponents attached to the admissible pair (N, s).
#[derive(Debug, Clone, Copy)]
pub struct CriticalExponents {
    /// 2*_s = 2N/(N-2s)
    pub two_star: f64,
    /// θ = (N-2s)/(2s), in (0,1) on the admissible window
    pub theta: f64,
    /// exponent of the linearization potential, 2*_s - 2
    pub p_lin: f64,
}

impl CriticalExponents {
    pub fn new(n_dim: usize, s: f64) -> Result<Self> {
        check_window(n_dim, s)?;
        let n = n_dim as f64;
        let two_star = 2.0 * n / (n - 2.0 * s);
        Ok(CriticalExponents { two_star, theta: (n - 2.0 * s) / (2.0 * s), p_lin: two_star - 2.0 })
    }
}

/// Admissibility window 2s < N < 4s, 0 < s < 1.
pub fn check_window(n_dim: usize, s: f64) -> Result<()> {
    if !(1..=3).contains(&n_dim) {
        return Err(Error::InvalidDimension(n_dim));
    }
    let n = n_dim as f64;
    if !(s > 0.0 && s < 1.0 && 2.0 * s < n && n < 4.0 * s) {
        return Err(Error::OrderOutsideWindow { n_dim, s });
    }
    Ok(())
}

/// Parameters of the bubble profile.
#[derive(Debug, Clone)]
pub struct BubbleProfile {
    pub mu: f64,
    pub center: Vec<f64>,
    pub normalization: f64,
    pub n_dim: usize,
    pub s: f64,
}

impl BubbleProfile {
    pub fn new(n_dim: usize, s: f64, mu: f64, center: Vec<f64>, normalization: f64) -> Result<Self> {
        check_window(n_dim, s)?;
        if mu <= 0.0 {
            return Err(Error::NonPositiveParameter { name: "mu", value: mu });
        }
        if normalization <= 0.0 {
            return Err(Error::NonPositiveParameter { name: "C", value: normalization });
        }
        if center.len() != n_dim {
            return Err(Error::LengthMismatch { got: center.len(), expected: n_dim });
        }
        Ok(BubbleProfile { mu, center, normalization, n_dim, s })
    }

    /// Canonical profile: μ = 1, centered at the origin.
    pub fn canonical(n_dim: usize, s: f64, normalization: f64) -> Result<Self> {
        Self::new(n_dim, s, 1.0, vec![0.0; n_dim], normalization)
    }

    fn decay_power(&self) -> f64 {
        (self.n_dim as f64 - 2.0 * self.s) / 2.0
    }

    /// Q(x) = C (μ/(μ^2 + |x-ξ|^2))^{(N-2s)/2}.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let d2: f64 = x
            .iter()
            .zip(self.center.iter())
            .map(|(a, c)| (a - c) * (a - c))
            .sum();
        self.normalization * (self.mu / (self.mu * self.mu + d2)).powf(self.decay_power())
    }

    /// Radial evaluation about the center.
    pub fn eval_radial(&self, r: f64) -> f64 {
        self.normalization
            * (self.mu / (self.mu * self.mu + r * r)).powf(self.decay_power())
    }

    /// Radial derivative Q'(r).
    pub fn radial_derivative(&self, r: f64) -> f64 {
        let a = self.decay_power();
        let mu2 = self.mu * self.mu;
        -2.0 * a * r / (mu2 + r * r) * self.eval_radial(r)
    }

    /// Dilation mode (N-2s)/2 Q + x·∇Q, radial form (μ = 1 scaling family).
    pub fn dilation_mode_radial(&self, r: f64) -> f64 {
        let a = self.decay_power();
        let mu2 = self.mu * self.mu;
        let y2 = r * r / mu2;
        a * self.eval_radial(r) * (1.0 - y2) / (1.0 + y2)
    }
}

/// Closed-form normalization from the Gamma identity: the function
/// (1+|x|^2)^{-(N-2s)/2} maps to A (1+|x|^2)^{-(N+2s)/2} under (-Δ)^s with
/// A = 2^{2s} Γ((N+2s)/2) / Γ((N-2s)/2), so C(N,s) = A^{(N-2s)/(4s)}.
/// Cross-check only.
pub fn normalization_closed_form(n_dim: usize, s: f64) -> Result<f64> {
    check_window(n_dim, s)?;
    let n = n_dim as f64;
    let a = 2.0_f64.powf(2.0 * s) * gamma((n + 2.0 * s) / 2.0) / gamma((n - 2.0 * s) / 2.0);
    Ok(a.powf((n - 2.0 * s) / (4.0 * s)))
}

/// Result of a calibration run.
#[derive(Debug, Clone)]
pub struct Calibration {
    pub normalization: f64,
    /// windowed relative residual at the minimizer
    pub residual: f64,
    /// full-box mean-free relative residual
    pub residual_full: f64,
    /// relative size of the zero-mode (mean) component the torus cannot carry
    pub dc_gap: f64,
    pub n_dim: usize,
    pub s: f64,
    pub box_half_width: f64,
    pub points_per_axis: usize,
}

/// Relative residual of coef (-Δ)^s u = u^{q} on the box, with the mean of
/// the right-hand side removed (the periodic multiplier annihilates the zero
/// mode, so the mean component is unrepresentable on the torus; its size is
/// returned separately). The headline number is windowed to |x| <= window
/// where the bubble mass lives; the full-box value is also returned.
pub fn box_residual(
    sp: &BoxSpectral,
    u: &[f64],
    coef: f64,
    q: f64,
    s: f64,
    window: f64,
) -> Result<(f64, f64, f64)> {
    let g = &sp.grid;
    let n = g.len();
    if u.len() != n {
        return Err(Error::LengthMismatch { got: u.len(), expected: n });
    }
    let ku = sp.fraclap(u, s)?;
    let rhs: Vec<f64> = u.iter().map(|&v| v.powf(q)).collect();
    let mean = rhs.iter().sum::<f64>() / n as f64;
    let w2 = window * window;
    let mut num_w = 0.0;
    let mut den_w = 0.0;
    let mut num_f = 0.0;
    let mut den_f = 0.0;
    for idx in 0..n {
        let res = coef * ku[idx] - (rhs[idx] - mean);
        let r2: f64 = g.coords(idx)[..g.n_dim].iter().map(|c| c * c).sum();
        num_f += res * res;
        den_f += rhs[idx] * rhs[idx];
        if r2 <= w2 {
            num_w += res * res;
            den_w += rhs[idx] * rhs[idx];
        }
    }
    if den_w == 0.0 || den_f == 0.0 {
        return Err(Error::ZeroField);
    }
    let dc = mean.abs() * (n as f64).sqrt() / den_f.sqrt();
    Ok(((num_w / den_w).sqrt(), (num_f / den_f).sqrt(), dc))
}

/// Determine C by bracketed golden-section minimization of the windowed
/// residual of (-Δ)^s Q_C = Q_C^{2*_s-1} over C > 0. The grid must resolve
/// the unit bubble.
pub fn calibrate_normalization(n_dim: usize, s: f64, grid: &BoxGrid) -> Result<Calibration> {
    let exps = CriticalExponents::new(n_dim, s)?;
    if grid.n_dim != n_dim {
        return Err(Error::GridMismatch);
    }
    let resolve = 1.0 / grid.dx();
    if resolve < 2.0 {
        return Err(Error::UnresolvedBubble { ratio: resolve, min: 2.0 });
    }
    let sp = BoxSpectral::new(grid);
    let base = BubbleProfile::canonical(n_dim, s, 1.0)?;
    let p: Vec<f64> = grid.sample(|x| base.eval(x));
    let lam = sp.fraclap(&p, s)?;
    let q = exps.two_star - 1.0;
    let pi_raw: Vec<f64> = p.iter().map(|&v| v.powf(q)).collect();
    let mean = pi_raw.iter().sum::<f64>() / pi_raw.len() as f64;
    let window = 10.0;
    let w2 = window * window;
    let mask: Vec<bool> = (0..grid.len())
        .map(|i| grid.coords(i)[..n_dim].iter().map(|c| c * c).sum::<f64>() <= w2)
        .collect();
    let den_w: f64 = pi_raw
        .iter()
        .zip(mask.iter())
        .filter(|(_, &m)| m)
        .map(|(v, _)| v * v)
        .sum();
    if den_w == 0.0 {
        return Err(Error::CalibrationBracket);
    }
    let res_of = |c: f64| -> f64 {
        let cq = c.powf(q);
        let mut num = 0.0;
        for i in 0..p.len() {
            if mask[i] {
                let r = c * lam[i] - cq * (pi_raw[i] - mean);
                num += r * r;
            }
        }
        (num / (cq * cq * den_w)).sqrt()
    };

    // golden section on ln C over a generous bracket
    let (mut lo, mut hi) = ((0.02_f64).ln(), (50.0_f64).ln());
    let gr = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c1 = hi - gr * (hi - lo);
    let mut c2 = lo + gr * (hi - lo);
    let mut f1 = res_of(c1.exp());
    let mut f2 = res_of(c2.exp());
    for _ in 0..200 {
        if f1 < f2 {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - gr * (hi - lo);
            f1 = res_of(c1.exp());
        } else {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + gr * (hi - lo);
            f2 = res_of(c2.exp());
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    let c_star = (0.5 * (lo + hi)).exp();
    if !c_star.is_finite() || c_star <= 0.021 || c_star >= 49.0 {
        return Err(Error::CalibrationBracket);
    }
    let cal = BubbleProfile::canonical(n_dim, s, c_star)?;
    let qfield: Vec<f64> = grid.sample(|x| cal.eval(x));
    let (rw, rf, dc) = box_residual(&sp, &qfield, 1.0, q, s, window)?;
    Ok(Calibration {
        normalization: c_star,
        residual: rw,
        residual_full: rf,
        dc_gap: dc,
        n_dim,
        s,
        box_half_width: grid.half_width,
        points_per_axis: grid.points_per_axis,
    })
}

/// Critical Sobolev quotient J(u) = seminorm_sq(u)^{2*_s/2} / ∫|u|^{2*_s}.
/// At the critical exponent the L^2 factor of the Gagliardo-Nirenberg
/// quotient carries exponent (p-1)(2s-N)/(4s) + 1 = -1 + 1 = 0 and drops out.
pub fn sobolev_quotient(sp: &BoxSpectral, s: f64, u: &[f64]) -> Result<f64> {
    let exps = CriticalExponents::new(sp.grid.n_dim, s)?;
    let sn = sp.seminorm_sq(u, s)?;
    let mass: f64 = u
        .iter()
        .map(|&v| v.abs().powf(exps.two_star))
        .sum::<f64>()
        * sp.grid.cell_volume();
    if mass == 0.0 || sn == 0.0 {
        return Err(Error::ZeroField);
    }
    Ok(sn.powf(exps.two_star / 2.0) / mass)
}

/// One line of the calibration cache: `N s C residual resolution`.
pub fn cache_line(c: &Calibration) -> String {
    let mut s = String::new();
    let _ = write!(
        s,
        "{} {:.6} {:.12e} {:.6e} {}x{}",
        c.n_dim, c.s, c.normalization, c.residual, c.points_per_axis, c.box_half_width
    );
    s
}

/// Look up a cached constant for (N, s); tolerant of missing files.
pub fn read_cache(path: &Path, n_dim: usize, s: f64) -> Option<f64> {
    let text = std::fs::read_to_string(path).ok()?;
    for line in text.lines() {
        let mut it = line.split_whitespace();
        let (Some(n), Some(sv), Some(c)) = (it.next(), it.next(), it.next()) else {
            continue;
        };
        if n.parse::<usize>().ok()? == n_dim && (sv.parse::<f64>().ok()? - s).abs() < 1e-12 {
            return c.parse::<f64>().ok();
        }
    }
    None
}

pub fn append_cache(path: &Path, c: &Calibration) -> Result<()> {
    use std::io::Write;
    let mut f = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(f, "{}", cache_line(c))?;
    Ok(())
}
