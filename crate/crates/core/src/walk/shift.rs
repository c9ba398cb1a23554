use alloc::vec::Vec;

use num_complex::Complex64;

use super::require_len;
use crate::coin::CoinRow;
use crate::dft::{apply_symbol, root_of_unity, Dft};
use crate::{Result, SpinorField};

/// Circular shift `ψ^L_m ← ψ^L_{m+a}`, `ψ^R_m ← ψ^R_{m+b}` done in Fourier
/// space: mode `κ` is multiplied by `e^{2πiκa/n}`.
pub fn shift_fourier(state: &SpinorField, (a, b): (isize, isize), dft: &impl Dft) -> Result<SpinorField> {
    let n = state.len();
    require_len(n, 2, "a Fourier shift needs n >= 2")?;
    let run = |values: &[Complex64], offset: isize| -> Vec<Complex64> {
        let mut buf = values.to_vec();
        apply_symbol(dft, &mut buf, |kappa| root_of_unity(kappa as i128 * offset as i128, n));
        buf
    };
    SpinorField::new(run(state.left(), a), run(state.right(), b))
}

/// The same shift by index rolling.
pub fn shift_physical(state: &SpinorField, (a, b): (isize, isize)) -> SpinorField {
    let n = state.len() as isize;
    let idx = |m: usize, off: isize| (m as isize + off).rem_euclid(n) as usize;
    SpinorField::from_fn(state.len(), |m| (state.left()[idx(m, a)], state.right()[idx(m, b)]))
}

/// S¹ step in the form used by pseudospectral codes: shift in Fourier space,
/// then apply the coins site by site.
pub fn step_s1_fourier(state: &SpinorField, coins: &CoinRow, dft: &impl Dft) -> Result<SpinorField> {
    let mut shifted = shift_fourier(state, (1, -1), dft)?;
    let (l, r) = shifted.components_mut();
    for m in 0..l.len() {
        let (a, b) = coins.at(m).apply(l[m], r[m]);
        l[m] = a;
        r[m] = b;
    }
    Ok(shifted)
}
