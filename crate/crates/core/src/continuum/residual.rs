use alloc::vec::Vec;

use num_complex::Complex64;

use super::basis::{case1_rhs_pm, case1_xi0};
use super::params::ContinuumLimit;
use super::{emit_params, JetSpec, LimitTag};
use crate::dft::{check_band_limited, spectral_derivative, Dft};
use crate::walk::Walker;
use crate::{Lattice, Result, SpinorField};

/// Largest fraction of spectral power allowed in the top third of the band
/// for a residual test state.
pub const BAND_TOL: f64 = 1e-20;

/// `∂_T Ψ` predicted by the continuous limit at time `t`.
pub fn limit_rhs(
    limit: &ContinuumLimit,
    jet: &JetSpec,
    state: &SpinorField,
    lattice: &Lattice,
    t: f64,
    dft: &impl Dft,
) -> Result<SpinorField> {
    let n = lattice.n();
    state.check_len(n)?;
    match limit {
        ContinuumLimit::Ode(sys) => Ok(SpinorField::from_fn(n, |m| {
            sys.rhs(t, lattice.x(m), (state.left()[m], state.right()[m]))
        })),
        ContinuumLimit::Dirac(p) if p.family.tag == LimitTag::Case1 => case1_rhs_pm(p, jet, state, lattice, t, dft),
        ContinuumLimit::Dirac(p) => {
            let dl = spectral_derivative(dft, state.left(), lattice.length());
            let dr = spectral_derivative(dft, state.right(), lattice.length());
            let i = Complex64::new(0.0, 1.0);
            Ok(SpinorField::from_fn(n, |m| {
                let x = lattice.x(m);
                let (a0, a1) = (p.a0.value(t, x), p.a1.value(t, x));
                let (l, r) = (state.left()[m], state.right()[m]);
                (
                    dl[m] + i * (a0 - a1) * l - i * p.m_minus(t, x) * r,
                    -dr[m] + i * (a0 + a1) * r - i * p.m_plus(t, x) * l,
                )
            }))
        }
    }
}

/// `∂_T Ψ` of the case-1 limit in the form `∂_T Ψ = −cos θ P ∂_X Ψ + QΨ`,
/// built straight from the jet fields.
pub fn case1_rhs_pq(jet: &JetSpec, state: &SpinorField, lattice: &Lattice, t: f64, dft: &impl Dft) -> Result<SpinorField> {
    let n = lattice.n();
    state.check_len(n)?;
    let xi0 = case1_xi0(jet, lattice, t)?;
    let dl = spectral_derivative(dft, state.left(), lattice.length());
    let dr = spectral_derivative(dft, state.right(), lattice.length());
    let z0 = &jet.zeroth;
    let f1 = &jet.first;
    let i = Complex64::new(0.0, 1.0);
    let cis = |a: f64| {
        let (s, c) = libm::sincos(a);
        Complex64::new(c, s)
    };
    let rows: Vec<(Complex64, Complex64)> = (0..n)
        .map(|m| {
            let x = lattice.x(m);
            let th = z0.theta.value(t, x);
            let z = z0.zeta.value(t, x);
            let (th_t, th_x) = z0.theta.gradient(t, x);
            let (z_t, z_x) = z0.zeta.gradient(t, x);
            let (d_plus, d_minus) = (z_t + z_x, z_t - z_x);
            let (ab, xb) = (f1.alpha.value(t, x), f1.xi.value(t, x));
            let (s, c) = libm::sincos(th);
            let (s2, c2) = (2.0 * s * c, c * c - s * s);

            let qll = i * (ab + c * c * xb) - 0.5 * s2 * th_x + 0.5 * i * s * s * d_plus;
            let qrr = i * (ab - c * c * xb) + 0.5 * s2 * th_x - 0.5 * i * s * s * d_minus;
            let qlr = cis(xi0 + z) * 0.5 * (i * d_minus * 0.5 * s2 - i * xb * s2 + th_t - th_x * c2);
            let qrl = cis(-xi0 - z) * 0.5 * (i * d_plus * 0.5 * s2 - i * xb * s2 - th_t - th_x * c2);

            let (l, r) = (state.left()[m], state.right()[m]);
            let off = cis(z - xi0) * (c * s);
            (
                dl[m] * (c * c) + off * dr[m] + qll * l + qlr * r,
                off.conj() * dl[m] - dr[m] * (c * c) + qrl * l + qrr * r,
            )
        })
        .collect();
    Ok(SpinorField::from_fn(n, |m| rows[m]))
}

/// First-order consistency check of a jet against its continuous limit.
///
/// Runs one stroboscopic period of the walk from `test_state` at `T = 0` and
/// returns `max_m |(Ψ_{n_s} − Ψ_0)/(n_s ε) − ∂_T Ψ|`, with `∂_T Ψ` from the
/// emitted limit. The value is `O(ε)` when the limit is right.
pub fn consistency_residual(jet: &JetSpec, test_state: &SpinorField, lattice: &Lattice, dft: &impl Dft) -> Result<f64> {
    test_state.check_len(lattice.n())?;
    check_band_limited(dft, test_state.left(), BAND_TOL)?;
    check_band_limited(dft, test_state.right(), BAND_TOL)?;
    let steps = jet.n_steps();
    let samples: Vec<(f64, f64)> = (0..steps)
        .flat_map(|j| lattice.points().map(move |x| (j as f64, x)))
        .map(|(j, x)| (j * lattice.dt(), x))
        .collect();
    let limit = emit_params(jet, &samples)?;

    let mut walker = Walker::new(*lattice, jet.walk_field(lattice), test_state.clone())?;
    walker.run(steps)?;
    let rhs = limit_rhs(&limit, jet, test_state, lattice, 0.0, dft)?;

    let scale = 1.0 / (steps as f64 * lattice.epsilon());
    let after = walker.state();
    let worst = (0..lattice.n())
        .flat_map(|m| {
            [
                (after.left()[m] - test_state.left()[m]) * scale - rhs.left()[m],
                (after.right()[m] - test_state.right()[m]) * scale - rhs.right()[m],
            ]
        })
        .map(|d| d.norm())
        .fold(0.0, f64::max);
    Ok(worst)
}
