//! Construction of the Kirchhoff ground state by rescaling the bubble.
//!
//! With κ = ||(-Δ)^{s/2} Q||^2 the scalar equation
//!
//!     f(E) = E - a - b κ E^θ = 0,     θ = (N-2s)/(2s) ∈ (0,1),
//!
//! has exactly one root E0 on (a, ∞): f is strictly convex there (f'' =
//! -bκ θ(θ-1) E^{θ-2} > 0) with f(a) < 0 and f(∞) = ∞. The ground state is
//! U(x) = Q(E0^{-1/(2s)} x); on a box rescaled by λ = E0^{1/(2s)} with the
//! same point count, the discrete seminorm obeys the scaling law exactly, so
//! E0 = a + b ||(-Δ)^{s/2} U||^2 closes to round-off by construction.

use crate::bubble::{check_window, BubbleProfile, CriticalExponents};
use crate::error::{Error, Result};
use crate::grid::BoxGrid;
use crate::spectral::{BoxSpectral, FieldMeaning, SpectralField};

/// The tuple (N, s, a, b) of the critical fractional Kirchhoff equation.
#[derive(Debug, Clone, Copy)]
pub struct ProblemParams {
    pub n_dim: usize,
    pub s: f64,
    pub a: f64,
    pub b: f64,
}

impl ProblemParams {
    pub fn new(n_dim: usize, s: f64, a: f64, b: f64) -> Result<Self> {
        check_window(n_dim, s)?;
        if a <= 0.0 {
            return Err(Error::NonPositiveParameter { name: "a", value: a });
        }
        if b <= 0.0 {
            return Err(Error::NonPositiveParameter { name: "b", value: b });
        }
        Ok(ProblemParams { n_dim, s, a, b })
    }

    pub fn exponents(&self) -> CriticalExponents {
        CriticalExponents::new(self.n_dim, self.s).expect("validated at construction")
    }
}

/// Root certificate for f(E) = E - a - b κ E^θ.
#[derive(Debug, Clone)]
pub struct ScalingCertificate {
    pub e0: f64,
    pub kappa: f64,
    pub theta: f64,
    pub f_residual: f64,
    pub df_at_root: f64,
    pub bracket: (f64, f64),
    /// |E0 - a - b seminorm_sq(U)| / E0, filled in by construct_ground_state
    pub consistency_gap: f64,
    /// f(a) < 0 and convexity checked at sample points
    pub structure_verified: bool,
}

/// Solve f(E) = 0 on (a, ∞) for a general θ ∈ (0, 1) (exposed for synthetic
/// θ overrides in tests). Bracketing plus safeguarded Newton; convergence at
/// |f| < 1e-12 max(1, E).
pub fn solve_root(a: f64, b: f64, kappa: f64, theta: f64) -> Result<ScalingCertificate> {
    if kappa <= 0.0 {
        return Err(Error::NonPositiveParameter { name: "kappa", value: kappa });
    }
    if !(0.0 < theta && theta < 1.0) {
        return Err(Error::NonPositiveParameter { name: "theta", value: theta });
    }
    let f = |e: f64| e - a - b * kappa * e.powf(theta);
    let df = |e: f64| 1.0 - b * kappa * theta * e.powf(theta - 1.0);

    // f(a) < 0 always; expand the upper bracket until f > 0
    let mut lo = a;
    let mut hi = (2.0 * a + b * kappa * (2.0 * a).powf(theta)).max(2.0 * a);
    let mut tries = 0;
    while f(hi) <= 0.0 {
        hi *= 2.0;
        tries += 1;
        if tries > 400 {
            return Err(Error::BracketFailure);
        }
    }
    let bracket = (lo, hi);

    let mut e = hi;
    for _ in 0..300 {
        let fe = f(e);
        if fe > 0.0 {
            hi = e;
        } else {
            lo = e;
        }
        let d = df(e);
        let mut next = if d.abs() > 1e-300 { e - fe / d } else { 0.5 * (lo + hi) };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - e).abs() <= 1e-16 * e.abs() {
            e = next;
            break;
        }
        e = next;
        if f(e).abs() < 1e-13 * e.abs().max(1.0) && (hi - lo) < 1e-12 * e {
            break;
        }
    }

    // structural certificate: f(a) < 0, convexity (f'' > 0) at sample points,
    // root on the increasing branch
    let mut structure = f(a) < 0.0;
    for k in 0..10 {
        let t = a + (e * 4.0 - a) * (k as f64 + 0.5) / 10.0;
        let fpp = -b * kappa * theta * (theta - 1.0) * t.powf(theta - 2.0);
        structure &= fpp > 0.0;
    }
    let dfr = df(e);
    structure &= dfr > 0.0;

    Ok(ScalingCertificate {
        e0: e,
        kappa,
        theta,
        f_residual: f(e).abs(),
        df_at_root: dfr,
        bracket,
        consistency_gap: f64::NAN,
        structure_verified: structure,
    })
}

/// Solve for E0 with θ taken from the problem parameters.
pub fn solve_e0(p: &ProblemParams, kappa: f64) -> Result<ScalingCertificate> {
    solve_root(p.a, p.b, kappa, p.exponents().theta)
}

/// The constructed ground state with its grids and certificate.
pub struct GroundState {
    pub params: ProblemParams,
    pub bubble: BubbleProfile,
    pub certificate: ScalingCertificate,
    /// box the bubble's κ was measured on
    pub base_grid: BoxGrid,
    /// rescaled box carrying U (half-width = λ × base half-width)
    pub grid: BoxGrid,
    pub spectral: BoxSpectral,
    pub field: SpectralField,
    /// λ = E0^{1/(2s)}
    pub lambda: f64,
    /// c = a + b seminorm_sq(U), measured on `grid`
    pub coefficient: f64,
    pub seminorm_u: f64,
}

/// Construct U = Q(E0^{-1/(2s)} ·) on the λ-rescaled box. κ is measured for
/// the calibrated bubble on `base_grid`; because U on the rescaled box has
/// identical samples, the seminorm identity seminorm(U) = κ E0^θ and the
/// consistency E0 = a + b seminorm(U) hold to round-off.
pub fn construct_ground_state(
    p: &ProblemParams,
    bubble: &BubbleProfile,
    base_grid: &BoxGrid,
) -> Result<GroundState> {
    if bubble.n_dim != p.n_dim || (bubble.s - p.s).abs() > 1e-14 {
        return Err(Error::GridMismatch);
    }
    let exps = p.exponents();
    let sp_base = BoxSpectral::new(base_grid);
    let q: Vec<f64> = base_grid.sample(|x| bubble.eval(x));
    let kappa = sp_base.seminorm_sq(&q, p.s)?;
    let mut cert = solve_e0(p, kappa)?;
    let lambda = cert.e0.powf(1.0 / (2.0 * p.s));

    let grid = BoxGrid::new(p.n_dim, base_grid.half_width * lambda, base_grid.points_per_axis)?;
    let resolve = lambda * bubble.mu / grid.dx();
    if resolve < 2.0 {
        return Err(Error::UnresolvedBubble { ratio: resolve, min: 2.0 });
    }
    let spectral = BoxSpectral::new(&grid);
    let values: Vec<f64> = grid.sample(|x| {
        let y: Vec<f64> = x.iter().map(|c| c / lambda).collect();
        bubble.eval(&y)
    });
    let seminorm_u = spectral.seminorm_sq(&values, p.s)?;
    let coefficient = p.a + p.b * seminorm_u;
    cert.consistency_gap = (cert.e0 - coefficient).abs() / cert.e0;
    let field = SpectralField {
        values,
        grid_id: grid.id(),
        meaning: FieldMeaning::Function,
    };
    Ok(GroundState {
        params: *p,
        bubble: bubble.clone(),
        certificate: cert,
        base_grid: base_grid.clone(),
        grid,
        spectral,
        field,
        lambda,
        coefficient,
        seminorm_u,
    })
}

impl GroundState {
    /// Windowed relative residual of (a + b||(-Δ)^{s/2}U||^2)(-Δ)^s U = U^{2*-1},
    /// plus full-box mean-free value and the excluded zero-mode size.
    pub fn kirchhoff_residual(&self) -> Result<(f64, f64, f64)> {
        let exps = self.params.exponents();
        crate::bubble::box_residual(
            &self.spectral,
            &self.field.values,
            self.coefficient,
            exps.two_star - 1.0,
            self.params.s,
            10.0 * self.lambda * self.bubble.mu,
        )
    }
}

/// Result of inverting a claimed ground state back to its bubble.
#[derive(Debug, Clone)]
pub struct InversionReport {
    pub e0: f64,
    pub center: Vec<f64>,
    pub mu_fit: f64,
    pub height_fit: f64,
    /// relative L2 mismatch between the field and the fitted bubble, over
    /// the core window
    pub fit_residual: f64,
}

/// Numerical rendering of the uniqueness statement: given a positive field on
/// a grid, compute E0 = a + b seminorm_sq(u), undo the dilation, and fit a
/// bubble by peak location, height, and half-width. A large fit residual
/// flags "not a ground state".
pub fn invert_ground_state(
    p: &ProblemParams,
    grid: &BoxGrid,
    u: &[f64],
    threshold: f64,
) -> Result<InversionReport> {
    if u.len() != grid.len() {
        return Err(Error::LengthMismatch { got: u.len(), expected: grid.len() });
    }
    if u.iter().any(|&v| v <= 0.0) {
        return Err(Error::NonPositiveField);
    }
    let sp = BoxSpectral::new(grid);
    let e0 = p.a + p.b * sp.seminorm_sq(u, p.s)?;
    let lambda = e0.powf(1.0 / (2.0 * p.s));

    // peak
    let (imax, &height) = u
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.partial_cmp(y.1).unwrap())
        .unwrap();
    let center = grid.coords(imax)[..grid.n_dim].to_vec();

    // half-width along the first axis: the radius where u falls to
    // height * 2^{-(N-2s)/4}, i.e. |x-ξ| = μλ for the bubble family
    let target = height * 2.0_f64.powf(-(p.n_dim as f64 - 2.0 * p.s) / 4.0);
    let m = grid.points_per_axis;
    let dx = grid.dx();
    // walk along axis 0 from the peak
    let mut mu_fit = f64::NAN;
    let decode_base: usize = imax;
    let stride = m.pow((grid.n_dim - 1) as u32);
    let i0 = decode_base / stride;
    for step in 1..m / 2 {
        let idx = ((i0 + step) % m) * stride + (decode_base % stride);
        if u[idx] <= target {
            // linear interpolation between the previous and current samples
            let prev_idx = ((i0 + step - 1) % m) * stride + (decode_base % stride);
            let (f0, f1) = (u[prev_idx], u[idx]);
            let frac = if (f0 - f1).abs() > 1e-300 { (f0 - target) / (f0 - f1) } else { 0.5 };
            mu_fit = ((step - 1) as f64 + frac) * dx / lambda;
            break;
        }
    }
    if !mu_fit.is_finite() {
        return Err(Error::NotAGroundState { residual: f64::INFINITY, threshold });
    }

    // compare the field against the fitted bubble over the core window
    let cfit = height * (mu_fit * lambda).powf((p.n_dim as f64 - 2.0 * p.s) / 2.0)
        / mu_fit.powf((p.n_dim as f64 - 2.0 * p.s) / 2.0)
        * mu_fit.powf(p.n_dim as f64 - 2.0 * p.s);
    // height = C (1/(μλ)... simplest: pick C so the fitted bubble matches the
    // peak height exactly: C = height * μ_eff^{(N-2s)/2} with μ_eff = μλ
    let mu_eff = mu_fit * lambda;
    let _ = cfit;
    let cpeak = height * mu_eff.powf((p.n_dim as f64 - 2.0 * p.s) / 2.0);
    let win2 = (8.0 * mu_eff).powi(2);
    let mut num = 0.0;
    let mut den = 0.0;
    for idx in 0..grid.len() {
        let c = grid.coords(idx);
        let mut d2 = 0.0;
        for d in 0..grid.n_dim {
            // periodic distance
            let mut diff = (c[d] - center[d]).abs();
            if diff > grid.half_width {
                diff = 2.0 * grid.half_width - diff;
            }
            d2 += diff * diff;
        }
        if d2 <= win2 {
            let model = cpeak * (mu_eff / (mu_eff * mu_eff + d2)).powf((p.n_dim as f64 - 2.0 * p.s) / 2.0);
            num += (u[idx] - model).powi(2);
            den += model * model;
        }
    }
    let fit_residual = (num / den.max(1e-300)).sqrt();
    if fit_residual > threshold {
        return Err(Error::NotAGroundState { residual: fit_residual, threshold });
    }
    Ok(InversionReport { e0, center, mu_fit, height_fit: height, fit_residual })
}
