//! Radially infalling Schwarzschild geometry in Lemaître-type coordinates.
//!
//! `r(T, X) = [3/2 (X/λ − T)]^{2/3} r_g^{1/3}` on
//! `𝒟 = { λT ≤ X ≤ λT + 2 r_g / (3λ²) }`, with `G_XX = −r_g / (λ² r)` and the
//! walk angle `cos θ = λ √(r / r_g)`.

use core::f64::consts::{FRAC_PI_2, PI};

use crate::characteristics::DiadField;
use crate::continuum::JetSpec;
use crate::{AngleLaw, Error, Result, ScalarField};

/// Values of `cos θ` within this of one are clamped back.
pub const GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchwarzschildConfig {
    pub r_g: f64,
    pub lambda: f64,
}

impl SchwarzschildConfig {
    pub fn new(r_g: f64, lambda: f64) -> Result<Self> {
        if !(r_g > 0.0 && r_g.is_finite() && lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument("r_g and lambda must be finite and positive"));
        }
        Ok(Self { r_g, lambda })
    }

    /// `u = X/λ − T`, the distance from the singularity in coordinate time.
    #[inline]
    fn u(&self, t: f64, x: f64) -> f64 {
        x / self.lambda - t
    }

    #[inline]
    fn u_max(&self) -> f64 {
        2.0 * self.r_g / (3.0 * self.lambda * self.lambda * self.lambda)
    }

    /// Singularity `X = λT`.
    pub fn singularity_x(&self, t: f64) -> f64 {
        self.lambda * t
    }

    /// Horizon `r = r_g`: `X = λT + 2λ r_g / 3`.
    pub fn horizon_x(&self, t: f64) -> f64 {
        self.lambda * t + 2.0 * self.lambda * self.r_g / 3.0
    }

    /// Outer edge `r = r_g/λ²` of the domain: `X = λT + 2 r_g / (3λ²)`.
    pub fn boundary_x(&self, t: f64) -> f64 {
        self.lambda * t + 2.0 * self.r_g / (3.0 * self.lambda * self.lambda)
    }

    /// Time at which the singularity sweeps past `x`.
    pub fn singularity_time(&self, x: f64) -> f64 {
        x / self.lambda
    }

    pub fn in_domain(&self, t: f64, x: f64) -> bool {
        let u = self.u(t, x);
        (0.0..=self.u_max()).contains(&u)
    }

    /// `r(T, X)`; errors for `X < λT`.
    pub fn radius(&self, t: f64, x: f64) -> Result<f64> {
        let u = self.u(t, x);
        if !u.is_finite() {
            return Err(Error::NonFinite("coordinates"));
        }
        if u < 0.0 {
            return Err(Error::OutsideCoordinateRange { t, x });
        }
        Ok(libm::pow(1.5 * u, 2.0 / 3.0) * libm::cbrt(self.r_g))
    }

    /// `G_XX = −r_g / (λ² r)`.
    pub fn g_xx(&self, t: f64, x: f64) -> Result<f64> {
        let r = self.radius(t, x)?;
        if r == 0.0 {
            return Err(Error::Domain {
                what: "metric is singular at r = 0",
                t,
                x,
            });
        }
        Ok(-self.r_g / (self.lambda * self.lambda * r))
    }

    /// `cos θ = λ √(r/r_g)` inside `𝒟`; values within [`GUARD`] of one are
    /// set to one.
    pub fn walk_cos_theta(&self, t: f64, x: f64) -> Result<f64> {
        let mut u = self.u(t, x);
        if !u.is_finite() {
            return Err(Error::NonFinite("coordinates"));
        }
        let slack = GUARD * (1.0 + x.abs());
        if u < 0.0 && u >= -slack {
            u = 0.0;
        }
        if u < 0.0 {
            return Err(Error::Domain {
                what: "beyond the singularity",
                t,
                x,
            });
        }
        let c = self.lambda * libm::cbrt(1.5 * u / self.r_g);
        if c > 1.0 + GUARD {
            return Err(Error::Domain {
                what: "outside the walk domain (cos theta > 1)",
                t,
                x,
            });
        }
        Ok(if c > 1.0 - GUARD { 1.0 } else { c })
    }

    /// `θ = arccos(λ √(r/r_g))` inside `𝒟`.
    pub fn walk_theta(&self, t: f64, x: f64) -> Result<f64> {
        self.walk_cos_theta(t, x).map(libm::acos)
    }

    /// `(∂_T θ, ∂_X θ)` from `d cos θ / du = cos θ / (3u)`; zero where
    /// `cos θ` is clamped to one, undefined at the singularity.
    pub fn walk_theta_gradient(&self, t: f64, x: f64) -> Result<(f64, f64)> {
        let c = self.walk_cos_theta(t, x)?;
        let u = self.u(t, x);
        if c >= 1.0 {
            return Ok((0.0, 0.0));
        }
        if !(u > 0.0) {
            return Err(Error::Domain {
                what: "theta is not differentiable at the singularity",
                t,
                x,
            });
        }
        let dtheta_du = -c / (3.0 * u * libm::sqrt(1.0 - c * c));
        Ok((-dtheta_du, dtheta_du / self.lambda))
    }

    /// `θ` as a field over the whole plane: the walk angle inside `𝒟`, zero
    /// outside, with the analytic gradient.
    pub fn theta_field(&self) -> ScalarField {
        let a = *self;
        let b = *self;
        ScalarField::with_gradient(
            move |t, x| a.walk_theta(t, x).unwrap_or(0.0),
            move |t, x| b.walk_theta_gradient(t, x).unwrap_or((0.0, 0.0)),
        )
    }
}

impl DiadField for SchwarzschildConfig {
    fn cos_theta(&self, t: f64, x: f64) -> Result<f64> {
        self.walk_cos_theta(t, x)
    }

    /// The singularity moves at `λ` and paths at most at unit speed.
    fn near_singularity(&self, t: f64, x: f64, h: f64) -> bool {
        x - self.singularity_x(t) <= (self.lambda + 1.0) * h
    }
}

/// The S² jet of the infalling-observer walk: `θ` from the geometry and
/// `ξ = ζ = α = π/2`, which lies in case 1.
pub fn make_schwarzschild_jet(cfg: &SchwarzschildConfig) -> JetSpec {
    let zeroth = AngleLaw::new(
        cfg.theta_field(),
        ScalarField::constant(FRAC_PI_2),
        ScalarField::constant(FRAC_PI_2),
        ScalarField::constant(FRAC_PI_2),
    );
    JetSpec::s2(zeroth, AngleLaw::zero())
}

/// The same `θ` with `(α, ξ, ζ) = (0, π, π/2)`. Those phases admit no
/// continuum limit wherever `θ` is not a multiple of `π/2`.
pub fn tabulated_jet(cfg: &SchwarzschildConfig) -> JetSpec {
    let zeroth = AngleLaw::new(
        cfg.theta_field(),
        ScalarField::constant(PI),
        ScalarField::constant(FRAC_PI_2),
        ScalarField::zero(),
    );
    JetSpec::s2(zeroth, AngleLaw::zero())
}
