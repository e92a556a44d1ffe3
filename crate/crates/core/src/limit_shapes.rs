//! Closed-form limit objects: the Logan-Shepp-Vershik-Kerov curve, the
//! triangle diagram, and their transition measures (semicircle and arcsine)
//! together with the CLT variances built from them.

use std::f64::consts::{FRAC_1_PI, PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::diagrams::CurveParametrization;
use crate::error::{Error, Result};

const BISECTION_STEPS: usize = 60;

/// `Omega_*(u)`, the limit shape of Plancherel-distributed diagrams.
pub fn omega_star(u: f64) -> f64 {
    if u.abs() >= 2.0 {
        return u.abs();
    }
    2.0 * FRAC_1_PI * (u * (u / 2.0).asin() + (4.0 - u * u).sqrt())
}

/// The triangle diagram, limit shape of rescaled staircases.
pub fn triangle(u: f64) -> f64 {
    if u.abs() > SQRT_2 {
        u.abs()
    } else {
        SQRT_2
    }
}

/// The two limit transition measures with closed-form density, CDF and
/// interaction energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitMeasure {
    /// Transition measure of `Omega_*`, supported on `[-2, 2]`.
    Semicircle,
    /// Transition measure of the triangle diagram, on `[-sqrt2, sqrt2]`.
    Arcsine,
}

pub fn semicircle() -> LimitMeasure {
    LimitMeasure::Semicircle
}

pub fn arcsine() -> LimitMeasure {
    LimitMeasure::Arcsine
}

impl LimitMeasure {
    pub fn support(self) -> (f64, f64) {
        match self {
            Self::Semicircle => (-2.0, 2.0),
            Self::Arcsine => (-SQRT_2, SQRT_2),
        }
    }

    pub fn density(self, u: f64) -> f64 {
        let (a, b) = self.support();
        if u <= a || u >= b {
            return 0.0;
        }
        match self {
            Self::Semicircle => (4.0 - u * u).sqrt() / (2.0 * PI),
            Self::Arcsine => 1.0 / (PI * (2.0 - u * u).sqrt()),
        }
    }

    pub fn cdf(self, u: f64) -> f64 {
        let (a, b) = self.support();
        if u <= a {
            return 0.0;
        }
        if u >= b {
            return 1.0;
        }
        match self {
            Self::Semicircle => 0.5 + u * (4.0 - u * u).sqrt() / (4.0 * PI) + (u / 2.0).asin() / PI,
            Self::Arcsine => 0.5 + (u / SQRT_2).asin() / PI,
        }
    }

    /// Inverse CDF. `z = 0` and `z = 1` map to the support endpoints.
    pub fn quantile(self, z: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&z) {
            return Err(Error::InvalidLevel(z));
        }
        let (a, b) = self.support();
        if z == 0.0 {
            return Ok(a);
        }
        if z == 1.0 {
            return Ok(b);
        }
        Ok(match self {
            Self::Arcsine => -SQRT_2 * (PI * z).cos(),
            Self::Semicircle => bisect(a, b, |u| self.cdf(u) - z),
        })
    }

    /// Interaction energy `E(u)` of the measure.
    pub fn energy(self, u: f64) -> f64 {
        let (a, b) = self.support();
        match self {
            Self::Semicircle if u > a && u < b => (4.0 - u * u).powf(1.5) / (12.0 * PI),
            Self::Arcsine if u > a && u < b => 1.0 / (4.0 * SQRT_2),
            _ => 0.0,
        }
    }

    /// Limit variance of the rescaled insertion position at `u0`.
    pub fn clt_variance(self, u0: f64) -> f64 {
        match self {
            Self::Semicircle => clt_variance_sc(u0),
            Self::Arcsine => clt_variance_as(u0),
        }
    }
}

/// `sigma^2(u0) = pi/3 sqrt(4 - u0^2)`; zero outside `(-2, 2)`.
pub fn clt_variance_sc(u0: f64) -> f64 {
    if u0.abs() >= 2.0 {
        return 0.0;
    }
    PI / 3.0 * (4.0 - u0 * u0).sqrt()
}

/// `sigma^2(u0) = pi^2/(4 sqrt2) (2 - u0^2)`; zero outside `(-sqrt2, sqrt2)`.
pub fn clt_variance_as(u0: f64) -> f64 {
    if u0.abs() >= SQRT_2 {
        return 0.0;
    }
    PI * PI / (4.0 * SQRT_2) * (2.0 - u0 * u0)
}

/// First RSK-trigonometric function: the semicircle quantile. Endpoints map to
/// `(-2, 2)` and `(2, 2)`; arguments outside `[0, 1]` are clamped.
pub fn rsk_cos(z: f64) -> f64 {
    LimitMeasure::Semicircle.quantile(z.clamp(0.0, 1.0)).expect("clamped level")
}

pub fn rsk_sin(z: f64) -> f64 {
    omega_star(rsk_cos(z))
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-x / SQRT_2)
}

fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    // f increasing, f(lo) <= 0 <= f(hi)
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `Omega_*` drawn in French coordinates; symmetric in `x` and `y`.
#[derive(Debug, Clone, Copy, Default)]
pub struct OmegaStarCurve;

pub fn omega_star_parametrization() -> OmegaStarCurve {
    OmegaStarCurve
}

impl OmegaStarCurve {
    const SOLVER_STEPS: usize = 100;
}

impl CurveParametrization for OmegaStarCurve {
    fn x_of_y(&self, y: f64) -> f64 {
        if y >= 2.0 {
            return 0.0;
        }
        if y <= 0.0 {
            return 2.0;
        }
        // (Omega(u) - u)/2 decreases strictly from 2 at u=-2 to 0 at u=2.
        let (mut lo, mut hi) = (-2.0f64, 2.0f64);
        for _ in 0..Self::SOLVER_STEPS {
            let mid = 0.5 * (lo + hi);
            if (omega_star(mid) - mid) / 2.0 > y {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let u = 0.5 * (lo + hi);
        (omega_star(u) + u) / 2.0
    }

    fn y_of_x(&self, x: f64) -> f64 {
        self.x_of_y(x)
    }

    fn x_extent(&self) -> f64 {
        2.0
    }

    fn y_extent(&self) -> f64 {
        2.0
    }
}

/// The triangle diagram in French coordinates: `x + y = sqrt2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct TriangleCurve;

impl CurveParametrization for TriangleCurve {
    fn x_of_y(&self, y: f64) -> f64 {
        (SQRT_2 - y).max(0.0)
    }

    fn y_of_x(&self, x: f64) -> f64 {
        (SQRT_2 - x).max(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::tanh_sinh;

    const SC: LimitMeasure = LimitMeasure::Semicircle;
    const AS: LimitMeasure = LimitMeasure::Arcsine;

    /// Semicircle quantile by plain bisection on the integral of the density
    /// (computed with quadrature, not the closed-form CDF).
    fn quantile_oracle(z: f64) -> f64 {
        let (mut lo, mut hi) = (-2.0, 2.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if tanh_sinh(|u| SC.density(u), -2.0, mid) < z {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn omega_star_examples() {
        assert!((omega_star(0.0) - 4.0 / PI).abs() < 1e-15);
        assert!((omega_star(0.0) - 1.27324).abs() < 1e-5);
        assert!((omega_star(2.0) - 2.0).abs() < 1e-15);
        assert!((omega_star(2.0 - 1e-12) - 2.0).abs() < 1e-6);
        assert_eq!(omega_star(-3.0), 3.0);
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(triangle(0.0), SQRT_2);
        assert_eq!(triangle(2.0), 2.0);
        assert_eq!(triangle(SQRT_2), SQRT_2);
    }

    #[test]
    fn semicircle_examples() {
        assert_eq!(SC.cdf(0.0), 0.5);
        assert!((SC.energy(0.0) - 2.0 / (3.0 * PI)).abs() < 1e-15);
        assert!((SC.energy(0.0) - 0.21221).abs() < 1e-5);
        let oracle = quantile_oracle(0.8);
        assert!((oracle - 0.9838).abs() < 1e-4, "{oracle}");
        assert!((SC.quantile(0.8).unwrap() - oracle).abs() < 1e-9);
        assert!(SC.quantile(1.2).is_err());
        assert!(SC.quantile(-0.1).is_err());
        assert_eq!(SC.quantile(0.0).unwrap(), -2.0);
        assert_eq!(SC.quantile(1.0).unwrap(), 2.0);
    }

    #[test]
    fn arcsine_examples() {
        assert!(AS.quantile(0.5).unwrap().abs() < 1e-15);
        assert!((AS.energy(0.0) - 0.176777).abs() < 1e-6);
        assert_eq!(AS.cdf(SQRT_2), 1.0);
        assert_eq!(AS.energy(1.5), 0.0);
        assert!((AS.quantile(0.25).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn rsk_trig() {
        assert!(rsk_cos(0.5).abs() < 1e-15);
        assert!((rsk_sin(0.5) - 4.0 / PI).abs() < 1e-12);
        let c = rsk_cos(0.8);
        assert!((c - quantile_oracle(0.8)).abs() < 1e-9);
        assert_eq!(rsk_sin(0.8), omega_star(c));
        for k in 1..100 {
            let z = k as f64 / 100.0;
            assert!((rsk_cos(1.0 - z) + rsk_cos(z)).abs() < 1e-12);
        }
        assert_eq!((rsk_cos(0.0), rsk_sin(0.0)), (-2.0, 2.0));
        assert_eq!((rsk_cos(1.0), rsk_sin(1.0)), (2.0, 2.0));
    }

    #[test]
    fn variances() {
        assert!((clt_variance_sc(0.0) - 2.0 * PI / 3.0).abs() < 1e-15);
        assert!((clt_variance_sc(0.0) - 2.0944).abs() < 1e-4);
        assert!(clt_variance_sc(2.0 - 1e-14) < 1e-6);
        let u = quantile_oracle(0.8);
        assert!((clt_variance_sc(u) - 1.8235).abs() < 1e-4, "{}", clt_variance_sc(u));
        assert!((clt_variance_as(0.0) - 3.48943).abs() < 1e-5);
        assert!((clt_variance_as(1.0) - 1.74472).abs() < 1e-5);
        assert!(clt_variance_as(SQRT_2) < 1e-12);
    }

    #[test]
    fn normal_cdf_values() {
        assert_eq!(normal_cdf(0.0), 0.5);
        assert!((normal_cdf(1.959964) - 0.975).abs() < 1e-7);
        for k in -40..=40 {
            let x = k as f64 * 0.2;
            assert!((normal_cdf(x) + normal_cdf(-x) - 1.0).abs() < 1e-15);
            // quadrature oracle of the Gaussian density
            let q = 0.5 + tanh_sinh(|t| (-t * t / 2.0).exp() / (2.0 * PI).sqrt(), 0.0, x);
            assert!((normal_cdf(x) - q).abs() < 1e-7, "{x}");
        }
    }

    #[test]
    fn variance_identity() {
        for k in 0..100 {
            let u = -1.9 + 3.8 * (k as f64 + 0.5) / 100.0;
            let sc = SC.energy(u) / SC.density(u).powi(2);
            assert!((clt_variance_sc(u) - sc).abs() <= 1e-10);
            let v = -1.4 + 2.8 * (k as f64 + 0.5) / 100.0;
            let arc = (1.0 / (4.0 * SQRT_2)) / AS.density(v).powi(2);
            assert!((clt_variance_as(v) - arc).abs() <= 1e-10);
        }
    }

    #[test]
    fn quantile_round_trip() {
        for m in [SC, AS] {
            for k in 1..1000 {
                let z = 0.001 + 0.998 * k as f64 / 1000.0;
                let back = m.cdf(m.quantile(z).unwrap());
                assert!((back - z).abs() <= 1e-10, "{m:?} {z}");
            }
        }
    }

    #[test]
    fn densities_integrate_to_one() {
        for m in [SC, AS] {
            let (a, b) = m.support();
            let total = tanh_sinh(|u| m.density(u), a, b);
            assert!((total - 1.0).abs() < 1e-8, "{m:?}: {total}");
            // the closed-form CDF is the integral of the density
            for u in [-1.3, -0.2, 0.4, 1.1] {
                let part = tanh_sinh(|t| m.density(t), a, u);
                assert!((part - m.cdf(u)).abs() < 1e-8);
            }
            for k in 0..200 {
                let u = a + (b - a) * k as f64 / 200.0;
                assert!(m.density(u) >= 0.0);
            }
        }
    }

    #[test]
    fn semicircle_energy_is_the_double_integral() {
        // E(u) = integral over z1 <= u < z2 of f(z1) f(z2) / (z2 - z1)
        for u in [-1.0, 0.0, 0.7] {
            let inner = |z1: f64| tanh_sinh(|z2| SC.density(z2) / (z2 - z1), u, 2.0) * SC.density(z1);
            let e = tanh_sinh(inner, -2.0, u);
            assert!((e - SC.energy(u)).abs() < 1e-6, "{u}: {e} vs {}", SC.energy(u));
        }
    }

    #[test]
    fn omega_star_is_a_continual_diagram() {
        for k in -500..=500 {
            let u = k as f64 * 0.01;
            let v = u + 0.01;
            assert!((omega_star(u) - omega_star(v)).abs() <= 0.01 + 1e-12);
            assert!(omega_star(u) >= u.abs() - 1e-15);
            assert_eq!(omega_star(u), omega_star(-u));
        }
    }

    #[test]
    fn parametrization_examples() {
        let c = omega_star_parametrization();
        assert!((c.x_of_y(0.0) - 2.0).abs() < 1e-10);
        assert!(c.x_of_y(2.0).abs() < 1e-10);
        let y_star = 2.0 / PI;
        assert!((c.x_of_y(y_star) - y_star).abs() < 1e-10);
        for k in 1..40 {
            let x = k as f64 * 0.05;
            let back = c.x_of_y(c.y_of_x(x));
            assert!((back - x).abs() < 1e-9, "{x}");
            assert!(c.x_of_y(x) >= c.x_of_y(x + 0.05));
        }
    }
}
