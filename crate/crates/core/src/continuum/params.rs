use alloc::sync::Arc;
use core::fmt;

use num_complex::Complex64;

use super::classify::require_zero;
use super::{classify_jet, JetSpec, LimitClass, LimitParams, LimitTag};
use crate::field::ScalarField;
use crate::{Error, Result};

/// A complex function of `(T, X)`.
pub type ComplexFn = Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub const SIGMA1: [[Complex64; 2]; 2] = [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
pub const SIGMA2: [[Complex64; 2]; 2] = [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]];
pub const SIGMA3: [[Complex64; 2]; 2] = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]];
/// `γ⁰ = σ₁`.
pub const GAMMA0: [[Complex64; 2]; 2] = SIGMA1;
/// `γ¹ = −σ₁σ₃ = iσ₂`.
pub const GAMMA1: [[Complex64; 2]; 2] = [[c(0.0, 0.0), c(1.0, 0.0)], [c(-1.0, 0.0), c(0.0, 0.0)]];

/// Coefficients of the limit Dirac equation
/// `(iγ⁰D₀ + iγ¹D₁ − ℳ)Ψ = 0`, `D_μ = ∂_μ − iA_μ`, `ℳ = diag(m⁻, m⁺)`,
/// on the metric `diag(1, G_XX)` with diad `e₁ = cos θ e_X`.
#[derive(Clone)]
pub struct DiracParams {
    pub family: LimitClass,
    /// `A_0` (or `A_T`).
    pub a0: ScalarField,
    /// `A_1` (or `A_X`).
    pub a1: ScalarField,
    pub mass_minus: ComplexFn,
    pub mass_plus: ComplexFn,
    pub gxx: ScalarField,
    pub cos_theta: ScalarField,
}

impl DiracParams {
    pub fn m_minus(&self, t: f64, x: f64) -> Complex64 {
        (self.mass_minus)(t, x)
    }

    pub fn m_plus(&self, t: f64, x: f64) -> Complex64 {
        (self.mass_plus)(t, x)
    }

    /// `E_X = −∂_X A_0 − ∂_T A_1`.
    pub fn electric_field(&self, t: f64, x: f64) -> f64 {
        -self.a0.d_x(t, x) - self.a1.d_t(t, x)
    }

    /// Flat families have `G_XX ≡ −1` and `cos θ ≡ 1`.
    pub fn is_flat(&self) -> bool {
        self.gxx.constant_value() == Some(-1.0) && self.cos_theta.constant_value() == Some(1.0)
    }
}

impl fmt::Debug for DiracParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiracParams")
            .field("family", &self.family)
            .field("a0", &self.a0)
            .field("a1", &self.a1)
            .field("gxx", &self.gxx)
            .field("cos_theta", &self.cos_theta)
            .finish_non_exhaustive()
    }
}

fn expect(class: LimitClass, tag: LimitTag, name: &'static str) -> Result<LimitParams> {
    if !class.admits(tag) {
        return Err(Error::Family {
            expected: name,
            found: class.tag,
        });
    }
    Ok(match class.subcase {
        Some((t, p)) if t == tag => p,
        _ => class.params,
    })
}

fn cis(a: f64) -> Complex64 {
    let (s, c) = libm::sincos(a);
    Complex64::new(c, s)
}

fn parity(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Masses `m∓ = ±i θ̄ f e^{±iζ}` with a real prefactor `f`.
fn masses(theta_bar: &ScalarField, zeta: &ScalarField, f: f64) -> (ComplexFn, ComplexFn) {
    let (tb, z) = (theta_bar.clone(), zeta.clone());
    let minus: ComplexFn = Arc::new(move |t, x| Complex64::new(0.0, f * tb.value(t, x)) * cis(z.value(t, x)));
    let (tb, z) = (theta_bar.clone(), zeta.clone());
    let plus: ComplexFn = Arc::new(move |t, x| Complex64::new(0.0, -f * tb.value(t, x)) * cis(-z.value(t, x)));
    (minus, plus)
}

fn negated(f: &ScalarField) -> ScalarField {
    ScalarField::zero().add_scaled(f, -1.0)
}

fn flat(family: LimitClass, jet: &JetSpec, f: f64) -> DiracParams {
    let (mass_minus, mass_plus) = masses(&jet.first.theta, &jet.zeroth.zeta, f);
    DiracParams {
        family,
        a0: jet.first.alpha.clone(),
        a1: negated(&jet.first.xi),
        mass_minus,
        mass_plus,
        gxx: ScalarField::constant(-1.0),
        cos_theta: ScalarField::constant(1.0),
    }
}

/// S¹ limit: `A_0 = ᾱ`, `A_1 = −ξ̄`, `m∓ = ±i θ̄ e^{i(θ₀ + α₀ ± ζ)}`, flat.
///
/// `e^{i(θ₀ + α₀)} = (−1)^{k₊ + k₋}` is taken from the integer labels, so
/// the phase is exact. The mass sign is reported as the formula gives it.
pub fn emit_s1_params(jet: &JetSpec, samples: &[(f64, f64)]) -> Result<DiracParams> {
    let class = classify_jet(jet, samples)?;
    let f = match expect(class, LimitTag::S1, "S1")? {
        LimitParams::S1 { k_plus, k_minus, .. } => parity(k_plus + k_minus),
        _ => 1.0,
    };
    Ok(flat(class, jet, f))
}

/// Case 2.2: flat, `A_0 = ᾱ`, `A_1 = −ξ̄`,
/// `m∓ = ±i θ̄ e^{i(2α₀ ± ζ)} cos ξ₀`.
pub fn emit_case22_params(jet: &JetSpec, samples: &[(f64, f64)]) -> Result<DiracParams> {
    let class = classify_jet(jet, samples)?;
    let f = match expect(class, LimitTag::Case22, "Case2_2")? {
        LimitParams::Case22 {
            k_prime, k_second, ..
        } => {
            // cos ξ₀ = (−1)^{k″} cos(k′π/2)
            let cos_alpha = match k_prime.rem_euclid(4) {
                0 => 1.0,
                2 => -1.0,
                _ => 0.0,
            };
            parity(k_prime) * parity(k_second) * cos_alpha
        }
        _ => 1.0,
    };
    Ok(flat(class, jet, f))
}

/// Case 1: massless, curved.
///
/// ```text
/// A_T  = ᾱ + (1 − cos θ)/2 · ∂_X ζ
/// A_X  = −ξ̄ − (1 − cos θ)/(2 cos θ) · ∂_T ζ
/// G_XX = −1/cos²θ
/// ```
///
/// Requires `cos θ > 0` at every sample.
pub fn emit_case1_params(jet: &JetSpec, samples: &[(f64, f64)]) -> Result<DiracParams> {
    let class = classify_jet(jet, samples)?;
    expect(class, LimitTag::Case1, "Case1")?;
    require_zero(&jet.first.theta, samples, "theta")?;
    let theta = jet.zeroth.theta.clone();
    for &(t, x) in samples {
        if libm::cos(theta.value(t, x)) <= 0.0 {
            return Err(Error::Domain {
                what: "case-1 limit (cos theta <= 0)",
                t,
                x,
            });
        }
    }
    let zeta = jet.zeroth.zeta.clone();
    let (alpha_bar, xi_bar) = (jet.first.alpha.clone(), jet.first.xi.clone());
    let (a0, a1) = if zeta.constant_value().is_some() {
        (alpha_bar, negated(&xi_bar))
    } else {
        let (th, z) = (theta.clone(), zeta.clone());
        let a0 = ScalarField::from_fn(move |t, x| {
            alpha_bar.value(t, x) + 0.5 * (1.0 - libm::cos(th.value(t, x))) * z.d_x(t, x)
        });
        let (th, z) = (theta.clone(), zeta);
        let a1 = ScalarField::from_fn(move |t, x| {
            let c = libm::cos(th.value(t, x));
            -xi_bar.value(t, x) - (1.0 - c) / (2.0 * c) * z.d_t(t, x)
        });
        (a0, a1)
    };
    let th = theta.clone();
    let gxx = ScalarField::from_fn(move |t, x| {
        let c = libm::cos(th.value(t, x));
        -1.0 / (c * c)
    });
    let cos_theta = if let Some(v) = theta.constant_value() {
        ScalarField::constant(libm::cos(v))
    } else {
        let (th, th2) = (theta.clone(), theta);
        ScalarField::with_gradient(
            move |t, x| libm::cos(th.value(t, x)),
            move |t, x| {
                let s = -libm::sin(th2.value(t, x));
                let (gt, gx) = th2.gradient(t, x);
                (s * gt, s * gx)
            },
        )
    };
    let zero: ComplexFn = Arc::new(|_, _| Complex64::new(0.0, 0.0));
    Ok(DiracParams {
        family: class,
        a0,
        a1,
        mass_minus: zero.clone(),
        mass_plus: zero,
        gxx,
        cos_theta,
    })
}

/// Case 2.1: an ODE at every `X`,
///
/// ```text
/// ∂_T ψ^L = iᾱ ψ^L + (i/2)(∂₊ζ) ψ^L + θ̄ e^{+iζ} cos ξ ψ^R
/// ∂_T ψ^R = iᾱ ψ^R − (i/2)(∂₋ζ) ψ^R − θ̄ e^{−iζ} cos ξ ψ^L
/// ```
///
/// with `∂± = ∂_T ± ∂_X`. The two-step walk is even in `θ₀ → −θ₀`, so the
/// sign of `sin θ₀` drops out.
#[derive(Debug, Clone)]
pub struct Case21System {
    pub alpha_bar: ScalarField,
    pub zeta: ScalarField,
    pub xi: ScalarField,
    pub theta_bar: ScalarField,
}

impl Case21System {
    /// `∂_T (ψ^L, ψ^R)` at `(T, X)`.
    pub fn rhs(&self, t: f64, x: f64, (l, r): (Complex64, Complex64)) -> (Complex64, Complex64) {
        let a = self.alpha_bar.value(t, x);
        let (zt, zx) = self.zeta.gradient(t, x);
        let z = self.zeta.value(t, x);
        let g = self.theta_bar.value(t, x) * libm::cos(self.xi.value(t, x));
        let i = Complex64::new(0.0, 1.0);
        (
            i * (a + 0.5 * (zt + zx)) * l + cis(z) * g * r,
            i * (a - 0.5 * (zt - zx)) * r - cis(-z) * g * l,
        )
    }

    /// Classical RK4 from `t0` to `t1` in `steps` equal steps at fixed `x`.
    pub fn integrate(
        &self,
        x: f64,
        t0: f64,
        t1: f64,
        steps: usize,
        state: (Complex64, Complex64),
    ) -> (Complex64, Complex64) {
        let steps = steps.max(1);
        let h = (t1 - t0) / steps as f64;
        let add = |(a, b): (Complex64, Complex64), (c, d): (Complex64, Complex64), s: f64| (a + c * s, b + d * s);
        let mut y = state;
        for n in 0..steps {
            let t = t0 + n as f64 * h;
            let k1 = self.rhs(t, x, y);
            let k2 = self.rhs(t + 0.5 * h, x, add(y, k1, 0.5 * h));
            let k3 = self.rhs(t + 0.5 * h, x, add(y, k2, 0.5 * h));
            let k4 = self.rhs(t + h, x, add(y, k3, h));
            y = (
                y.0 + (k1.0 + k2.0 * 2.0 + k3.0 * 2.0 + k4.0) * (h / 6.0),
                y.1 + (k1.1 + k2.1 * 2.0 + k3.1 * 2.0 + k4.1) * (h / 6.0),
            );
        }
        y
    }
}

pub fn emit_case21_system(jet: &JetSpec, samples: &[(f64, f64)]) -> Result<Case21System> {
    let class = classify_jet(jet, samples)?;
    expect(class, LimitTag::Case21, "Case2_1")?;
    require_zero(&jet.first.xi, samples, "xi")?;
    Ok(Case21System {
        alpha_bar: jet.first.alpha.clone(),
        zeta: jet.zeroth.zeta.clone(),
        xi: jet.zeroth.xi.clone(),
        theta_bar: jet.first.theta.clone(),
    })
}

/// The limit of a jet in whichever form its family takes.
#[derive(Debug, Clone)]
pub enum ContinuumLimit {
    Dirac(DiracParams),
    Ode(Case21System),
}

/// Classifies and emits. Overlapping jets are emitted through their case-2
/// subcase, which stays valid where `cos θ₀ ≤ 0`.
pub fn emit_params(jet: &JetSpec, samples: &[(f64, f64)]) -> Result<ContinuumLimit> {
    let class = classify_jet(jet, samples)?;
    let tag = match class.tag {
        LimitTag::Overlap => class.subcase.map(|(t, _)| t).unwrap_or(LimitTag::Case1),
        t => t,
    };
    Ok(match tag {
        LimitTag::S1 => ContinuumLimit::Dirac(emit_s1_params(jet, samples)?),
        LimitTag::Case1 => ContinuumLimit::Dirac(emit_case1_params(jet, samples)?),
        LimitTag::Case22 => ContinuumLimit::Dirac(emit_case22_params(jet, samples)?),
        LimitTag::Case21 => ContinuumLimit::Ode(emit_case21_system(jet, samples)?),
        _ => {
            return Err(Error::Family {
                expected: "a family with a continuous limit",
                found: class.tag,
            })
        }
    })
}
