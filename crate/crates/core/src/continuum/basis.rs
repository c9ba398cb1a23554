//! The eigenbasis `(b₋, b₊)` of the case-1 operator `P`.
//!
//! ```text
//! b₋ = cos(θ/2) b_L + e^{i(ξ₀ − ζ)} sin(θ/2) b_R
//! b₊ = e^{i(ζ + ξ₀)} sin(θ/2) b_L + cos(θ/2) b_R
//! ```
//!
//! The pair is orthonormal when `cos ξ₀ = 0`; otherwise coordinates are
//! still well defined as long as the two vectors are independent.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::{JetSpec, DiracParams};
use crate::dft::{spectral_derivative, Dft};
use crate::{Error, Lattice, Result, SpinorField};

type M2 = [[Complex64; 2]; 2];

fn cis(a: f64) -> Complex64 {
    let (s, c) = libm::sincos(a);
    Complex64::new(c, s)
}

/// Columns are `b₋` and `b₊` in `(b_L, b_R)` components.
fn basis(theta: f64, zeta: f64, xi0: f64) -> M2 {
    let (sh, ch) = libm::sincos(0.5 * theta);
    [
        [Complex64::new(ch, 0.0), cis(zeta + xi0) * sh],
        [cis(xi0 - zeta) * sh, Complex64::new(ch, 0.0)],
    ]
}

/// `(∂M/∂θ, ∂M/∂ζ)`.
fn basis_derivatives(theta: f64, zeta: f64, xi0: f64) -> (M2, M2) {
    let (sh, ch) = libm::sincos(0.5 * theta);
    let (up, down) = (cis(zeta + xi0), cis(xi0 - zeta));
    let zero = Complex64::new(0.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    (
        [
            [Complex64::new(-0.5 * sh, 0.0), up * (0.5 * ch)],
            [down * (0.5 * ch), Complex64::new(-0.5 * sh, 0.0)],
        ],
        [[zero, i * up * sh], [-i * down * sh, zero]],
    )
}

fn inverse(m: &M2) -> Result<M2> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det.norm() < 1e-12 {
        return Err(Error::Degenerate("b- and b+ are parallel"));
    }
    let inv = det.inv();
    Ok([[m[1][1] * inv, -m[0][1] * inv], [-m[1][0] * inv, m[0][0] * inv]])
}

#[inline]
fn apply(m: &M2, (a, b): (Complex64, Complex64)) -> (Complex64, Complex64) {
    (m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b)
}

fn check_arrays(state: &SpinorField, theta: &[f64], zeta: &[f64]) -> Result<()> {
    for len in [theta.len(), zeta.len()] {
        if len != state.len() {
            return Err(Error::Dimension {
                expected: state.len(),
                found: len,
            });
        }
    }
    Ok(())
}

/// Coordinates `(ψ⁻, ψ⁺)` of `Ψ = ψ^L b_L + ψ^R b_R`, site by site.
pub fn rotate_to_pm_basis(state: &SpinorField, theta: &[f64], zeta: &[f64], xi0: f64) -> Result<SpinorField> {
    check_arrays(state, theta, zeta)?;
    let mut out = SpinorField::zeros(state.len());
    let (ol, or) = out.components_mut();
    for m in 0..state.len() {
        let inv = inverse(&basis(theta[m], zeta[m], xi0))?;
        (ol[m], or[m]) = apply(&inv, (state.left()[m], state.right()[m]));
    }
    Ok(out)
}

/// Back from `(ψ⁻, ψ⁺)` to `(ψ^L, ψ^R)`.
pub fn rotate_from_pm_basis(state: &SpinorField, theta: &[f64], zeta: &[f64], xi0: f64) -> Result<SpinorField> {
    check_arrays(state, theta, zeta)?;
    Ok(SpinorField::from_fn(state.len(), |m| {
        apply(&basis(theta[m], zeta[m], xi0), (state.left()[m], state.right()[m]))
    }))
}

/// `∂_T Ψ` (in `L/R` components) of the case-1 limit, evaluated through
/// the decoupled `±` equations
///
/// ```text
/// ∂_T ψ⁻ = +cos θ ∂_X ψ⁻ + i(A_T − cos θ A_X) ψ⁻ + ½ ∂_X(cos θ) ψ⁻
/// ∂_T ψ⁺ = −cos θ ∂_X ψ⁺ + i(A_T + cos θ A_X) ψ⁺ − ½ ∂_X(cos θ) ψ⁺
/// ```
///
/// with the potentials and diad of `params` and the basis from `jet`.
/// Spatial derivatives of `Ψ` are spectral.
pub fn case1_rhs_pm(
    params: &DiracParams,
    jet: &JetSpec,
    state: &SpinorField,
    lattice: &Lattice,
    t: f64,
    dft: &impl Dft,
) -> Result<SpinorField> {
    let n = lattice.n();
    state.check_len(n)?;
    let xi0 = case1_xi0(jet, lattice, t)?;
    let dl = spectral_derivative(dft, state.left(), lattice.length());
    let dr = spectral_derivative(dft, state.right(), lattice.length());
    let (theta, zeta) = (&jet.zeroth.theta, &jet.zeroth.zeta);
    let mut out: Vec<(Complex64, Complex64)> = Vec::with_capacity(n);
    for m in 0..n {
        let x = lattice.x(m);
        let (th, z) = (theta.value(t, x), zeta.value(t, x));
        let (th_t, th_x) = theta.gradient(t, x);
        let (z_t, z_x) = zeta.gradient(t, x);
        let mm = basis(th, z, xi0);
        let inv = inverse(&mm)?;
        let (d_th, d_z) = basis_derivatives(th, z, xi0);
        let dm = |a: f64, b: f64| -> M2 {
            let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    r[i][j] = d_th[i][j] * a + d_z[i][j] * b;
                }
            }
            r
        };
        let (dm_t, dm_x) = (dm(th_t, z_t), dm(th_x, z_x));

        let psi = (state.left()[m], state.right()[m]);
        let pm = apply(&inv, psi);
        // ∂_X ψ± = M⁻¹(∂_X Ψ − (∂_X M) ψ±)
        let corr = apply(&dm_x, pm);
        let dpm_x = apply(&inv, (dl[m] - corr.0, dr[m] - corr.1));

        let c = params.cos_theta.value(t, x);
        let half_dc = 0.5 * params.cos_theta.d_x(t, x);
        let (at, ax) = (params.a0.value(t, x), params.a1.value(t, x));
        let i = Complex64::new(0.0, 1.0);
        let dpm_t = (
            dpm_x.0 * c + i * (at - c * ax) * pm.0 + pm.0 * half_dc,
            -dpm_x.1 * c + i * (at + c * ax) * pm.1 - pm.1 * half_dc,
        );
        // ∂_T Ψ = (∂_T M) ψ± + M ∂_T ψ±
        let a = apply(&dm_t, pm);
        let b = apply(&mm, dpm_t);
        out.push((a.0 + b.0, a.1 + b.1));
    }
    Ok(SpinorField::from_fn(n, |m| out[m]))
}

/// `ξ₀` of a case-1 jet (an odd multiple of `π/2`, taken from the first site).
pub(super) fn case1_xi0(jet: &JetSpec, lattice: &Lattice, t: f64) -> Result<f64> {
    let v = jet.zeroth.xi.value(t, lattice.x(0));
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite("xi0"))
    }
}
