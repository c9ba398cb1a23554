//! Flat-space Dirac reference solver.
//!
//! In components the limit equation with a uniform real mass `m` and the
//! temporal-gauge potential `A_0 = 0`, `A_1 = −E·T` reads
//!
//! ```text
//! ∂_T ψ^L = +∂_X ψ^L + i E T ψ^L − i m ψ^R
//! ∂_T ψ^R = −∂_X ψ^R − i E T ψ^R − i m ψ^L
//! ```
//!
//! i.e. `∂_T Ψ̂ = −i H(k, T) Ψ̂` with `H = [[−(k + ET), m], [m, k + ET]]`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::continuum::DiracParams;
use crate::dft::{spectrum, synthesize, Dft};
use crate::{Error, Lattice, Result, SpinorField};

/// Uniform mass and field, temporal gauge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatDiracConfig {
    pub mass: f64,
    pub efield: f64,
    pub lattice: Lattice,
}

impl FlatDiracConfig {
    pub fn new(mass: f64, efield: f64, lattice: Lattice) -> Result<Self> {
        if !(mass.is_finite() && efield.is_finite()) {
            return Err(Error::NonFinite("Dirac mass or field"));
        }
        Ok(Self { mass, efield, lattice })
    }

    /// Reads mass and field off emitted limit parameters. The parameters must
    /// be flat, in temporal gauge (`A_0 ≡ 0`, `A_1 = −E·T`) and carry one
    /// real mass `m⁻ = m⁺`.
    pub fn from_params(params: &DiracParams, lattice: Lattice) -> Result<Self> {
        if !params.is_flat() {
            return Err(Error::InvalidArgument("the flat solver needs flat-metric parameters"));
        }
        let probes = [(0.0, 0.0), (1.0, 0.5), (3.5, 2.0), (10.0, 4.0)];
        let efield = -params.a1.d_t(0.0, 0.0);
        let mass = params.m_minus(0.0, 0.0);
        for &(t, x) in &probes {
            if params.a0.value(t, x) != 0.0 {
                return Err(Error::InvalidArgument("A_0 must vanish in temporal gauge"));
            }
            if (params.a1.value(t, x) + efield * t).abs() > 1e-12 * (1.0 + t.abs()) {
                return Err(Error::InvalidArgument("A_1 must equal -E*T"));
            }
            let (mm, mp) = (params.m_minus(t, x), params.m_plus(t, x));
            if (mm - mass).norm() > 1e-12 || (mp - mass).norm() > 1e-12 || mass.im.abs() > 1e-12 {
                return Err(Error::InvalidArgument("masses must be equal, real and uniform"));
            }
        }
        Self::new(mass.re, efield, lattice)
    }
}

/// `N_m = |ψ^L_m|² + |ψ^R_m|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityField {
    pub values: Vec<f64>,
}

impl DensityField {
    pub fn from_spinor(state: &SpinorField) -> Self {
        Self {
            values: state.density(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `Σ N_m dx`.
    pub fn total(&self, dx: f64) -> f64 {
        self.values.iter().sum::<f64>() * dx
    }
}

/// `δN_rel = √⟨(N_QW − N_D)²⟩ / ⟨N_D⟩`, averages over collocation points.
pub fn delta_n_rel(nqw: &DensityField, nd: &DensityField) -> Result<f64> {
    if nqw.len() != nd.len() {
        return Err(Error::Dimension {
            expected: nd.len(),
            found: nqw.len(),
        });
    }
    if nd.is_empty() {
        return Err(Error::NoSamples);
    }
    let n = nd.len() as f64;
    let mean = nd.values.iter().sum::<f64>() / n;
    if mean == 0.0 || !mean.is_finite() {
        return Err(Error::Degenerate("mean reference density is zero"));
    }
    let msd = nqw
        .values
        .iter()
        .zip(&nd.values)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        / n;
    Ok(libm::sqrt(msd) / mean)
}

/// Unit eigenvector of `[[−k, μ], [μ*, k]]` for `+√(k² + |μ|²)`, upper
/// component real and non-negative (lower real positive if the upper one
/// vanishes).
pub fn positive_energy_spinor(k: f64, mu: Complex64) -> (Complex64, Complex64) {
    let e = libm::sqrt(k * k + mu.norm_sqr());
    if e == 0.0 {
        return (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    }
    let (a, b) = if k >= 0.0 {
        (mu, Complex64::new(e + k, 0.0))
    } else {
        (Complex64::new(e - k, 0.0), mu.conj())
    };
    let norm = libm::sqrt(a.norm_sqr() + b.norm_sqr());
    let (a, b) = (a / norm, b / norm);
    if a.norm() > 0.0 {
        let phase = a.conj() / a.norm();
        (Complex64::new(a.norm(), 0.0), b * phase)
    } else {
        (Complex64::new(0.0, 0.0), Complex64::new(b.norm(), 0.0))
    }
}

/// Gaussian packet of positive-energy free solutions,
/// `Ψ̂(k) ∝ exp(−(k − k0)²σ²) e^{−ik x₀} v₊(k)`, normalized to one.
pub fn positive_energy_packet(
    k0: f64,
    sigma: f64,
    center: f64,
    mass: f64,
    lattice: &Lattice,
    dft: &impl Dft,
) -> Result<SpinorField> {
    let min = 4.0 * lattice.dx();
    if !(sigma >= min) {
        return Err(Error::Resolution { sigma, min });
    }
    if !(k0.is_finite() && center.is_finite() && mass.is_finite()) {
        return Err(Error::NonFinite("packet parameters"));
    }
    let n = lattice.n();
    let mut left = vec![Complex64::new(0.0, 0.0); n];
    let mut right = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let k = lattice.wavenumber(i);
        let d = (k - k0) * sigma;
        let amp = libm::exp(-d * d);
        if amp == 0.0 {
            continue;
        }
        let (s, c) = libm::sincos(-k * center);
        let a = Complex64::new(c, s) * amp;
        let (u, v) = positive_energy_spinor(k, Complex64::new(mass, 0.0));
        left[i] = a * u;
        right[i] = a * v;
    }
    let mut state = SpinorField::new(synthesize(dft, &left), synthesize(dft, &right))?;
    state.normalize(lattice.dx())?;
    Ok(state)
}

#[inline]
fn mass_half_step(mh: f64, l: &mut Complex64, r: &mut Complex64) {
    // exp(−i h m σ₁) = cos(mh) − i sin(mh) σ₁
    let (s, c) = libm::sincos(mh);
    let is = Complex64::new(0.0, -s);
    let (a, b) = (*l, *r);
    *l = a * c + is * b;
    *r = b * c + is * a;
}

/// One Strang step `T → T + dt`: half mass step per site, exact advection
/// in Fourier space with `A_1` at the midpoint, half mass step.
pub fn dirac_step_flat(
    state: &SpinorField,
    cfg: &FlatDiracConfig,
    t: f64,
    dt: f64,
    dft: &impl Dft,
) -> Result<SpinorField> {
    if !(dt > 0.0) {
        return Err(Error::InvalidArgument("dt must be positive"));
    }
    let n = cfg.lattice.n();
    state.check_len(n)?;
    let mh = 0.5 * dt * cfg.mass;
    let mut out = state.clone();
    {
        let (l, r) = out.components_mut();
        for m in 0..n {
            mass_half_step(mh, &mut l[m], &mut r[m]);
        }
        let shift = cfg.efield * (t + 0.5 * dt);
        let advect = |values: &mut [Complex64], sign: f64| {
            dft.forward(values);
            let scale = 1.0 / n as f64;
            for (i, v) in values.iter_mut().enumerate() {
                let (s, c) = libm::sincos(sign * (cfg.lattice.wavenumber(i) + shift) * dt);
                *v *= Complex64::new(c, s) * scale;
            }
            dft.inverse(values);
        };
        advect(l, 1.0);
        advect(r, -1.0);
        for m in 0..n {
            mass_half_step(mh, &mut l[m], &mut r[m]);
        }
    }
    Ok(out)
}

/// Strang integrator kept in Fourier space.
///
/// With uniform mass and field every substep acts mode by mode, so this is
/// the same scheme as [`dirac_step_flat`] without a transform per step.
#[derive(Debug, Clone)]
pub struct DiracSolver {
    cfg: FlatDiracConfig,
    left: Vec<Complex64>,
    right: Vec<Complex64>,
    t: f64,
}

impl DiracSolver {
    pub fn new(cfg: FlatDiracConfig, state: &SpinorField, t0: f64, dft: &impl Dft) -> Result<Self> {
        state.check_len(cfg.lattice.n())?;
        Ok(Self {
            cfg,
            left: spectrum(dft, state.left()),
            right: spectrum(dft, state.right()),
            t: t0,
        })
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn config(&self) -> &FlatDiracConfig {
        &self.cfg
    }

    /// `steps` Strang steps of size `dt`.
    pub fn advance(&mut self, dt: f64, steps: usize) -> Result<()> {
        if !(dt > 0.0) {
            return Err(Error::InvalidArgument("dt must be positive"));
        }
        let n = self.cfg.lattice.n();
        let kick: Vec<Complex64> = (0..n)
            .map(|i| {
                let (s, c) = libm::sincos(self.cfg.lattice.wavenumber(i) * dt);
                Complex64::new(c, s)
            })
            .collect();
        let mh = 0.5 * dt * self.cfg.mass;
        let t0 = self.t;
        for j in 0..steps {
            let t_mid = t0 + (j as f64 + 0.5) * dt;
            let (s, c) = libm::sincos(self.cfg.efield * t_mid * dt);
            let field = Complex64::new(c, s);
            for ((l, r), k) in self.left.iter_mut().zip(self.right.iter_mut()).zip(&kick) {
                mass_half_step(mh, l, r);
                let p = k * field;
                *l *= p;
                *r *= p.conj();
                mass_half_step(mh, l, r);
            }
        }
        self.t = t0 + steps as f64 * dt;
        Ok(())
    }

    pub fn state(&self, dft: &impl Dft) -> Result<SpinorField> {
        SpinorField::new(synthesize(dft, &self.left), synthesize(dft, &self.right))
    }

    /// `(L̂_κ, R̂_κ)` in bin order.
    pub fn spectrum(&self) -> (&[Complex64], &[Complex64]) {
        (&self.left, &self.right)
    }
}

/// Exact free propagation (`E = 0`) of a uniform-mass field over time `t`:
/// `exp(−iHt) = cos(Et) − i sin(Et)/E · H` mode by mode.
pub fn free_propagate(state: &SpinorField, mass: f64, t: f64, lattice: &Lattice, dft: &impl Dft) -> Result<SpinorField> {
    state.check_len(lattice.n())?;
    let mut l = spectrum(dft, state.left());
    let mut r = spectrum(dft, state.right());
    for i in 0..lattice.n() {
        let k = lattice.wavenumber(i);
        let e = libm::sqrt(k * k + mass * mass);
        let (s, c) = libm::sincos(e * t);
        let sinc = if e == 0.0 { t } else { s / e };
        let (a, b) = (l[i], r[i]);
        let i_s = Complex64::new(0.0, -sinc);
        l[i] = a * c + i_s * (a * -k + b * mass);
        r[i] = b * c + i_s * (a * mass + b * k);
    }
    SpinorField::new(synthesize(dft, &l), synthesize(dft, &r))
}
