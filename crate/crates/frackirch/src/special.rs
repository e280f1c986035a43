//! Gamma function and sphere-area constants.
//!
//! Lanczos approximation (g = 7, 9 coefficients), accurate to ~2e-10 relative
//! on the real axis away from the poles. Used for the closed-form bubble
//! normalization cross-check and the singular-integral kernel constant.

use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Gamma(x) for real x that is not a non-positive integer.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEF[0];
        for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Surface area of the unit sphere S^{N-1}: 2 pi^{N/2} / Gamma(N/2).
/// For N = 1 this is 2 (two half-lines), matching the even-sector convention.
pub fn sphere_area(n_dim: usize) -> f64 {
    2.0 * PI.powf(n_dim as f64 / 2.0) / gamma(n_dim as f64 / 2.0)
}

/// Kernel constant of the singular-integral fractional Laplacian,
/// C(N, s) = 4^s Gamma(N/2 + s) / (pi^{N/2} |Gamma(-s)|).
pub fn fraclap_kernel_constant(n_dim: usize, s: f64) -> f64 {
    let n = n_dim as f64;
    4.0_f64.powf(s) * gamma(n / 2.0 + s) / (PI.powf(n / 2.0) * gamma(-s).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_known_values() {
        assert_relative_eq!(gamma(0.5), PI.sqrt(), max_relative = 1e-10);
        assert_relative_eq!(gamma(1.0), 1.0, max_relative = 1e-12);
        assert_relative_eq!(gamma(5.0), 24.0, max_relative = 1e-12);
        assert_relative_eq!(gamma(0.25), 3.625609908221908, max_relative = 1e-10);
        assert_relative_eq!(gamma(1.75), 0.9190625268488832, max_relative = 1e-10);
        // negative argument via reflection
        assert_relative_eq!(gamma(-0.5), -2.0 * PI.sqrt(), max_relative = 1e-10);
    }

    #[test]
    fn sphere_areas() {
        assert_relative_eq!(sphere_area(1), 2.0, max_relative = 1e-12);
        assert_relative_eq!(sphere_area(2), 2.0 * PI, max_relative = 1e-12);
        assert_relative_eq!(sphere_area(3), 4.0 * PI, max_relative = 1e-12);
    }
}
