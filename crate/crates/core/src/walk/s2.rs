use alloc::vec::Vec;

use num_complex::Complex64;

use super::{cis, require_len};
use crate::field::{sample_angles, AngleField, AngleRow};
use crate::{Error, Lattice, Result, SpinorField};

/// Per-site coefficients of the two-step update
///
/// ```text
/// ψ^L_{j+2,m} = A^L ψ^L_{j,m+2} + B^L ψ^L_{j,m} + C^L ψ^R_{j,m} + D^L ψ^R_{j,m-2}
/// ψ^R_{j+2,m} = A^R ψ^L_{j,m+2} + B^R ψ^L_{j,m} + C^R ψ^R_{j,m} + D^R ψ^R_{j,m-2}
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct S2Coefficients {
    pub al: Vec<Complex64>,
    pub bl: Vec<Complex64>,
    pub cl: Vec<Complex64>,
    pub dl: Vec<Complex64>,
    pub ar: Vec<Complex64>,
    pub br: Vec<Complex64>,
    pub cr: Vec<Complex64>,
    pub dr: Vec<Complex64>,
}

impl S2Coefficients {
    /// Coefficients from the angle slices `j` (`now`) and `j + 1` (`next`).
    pub fn from_rows(now: &AngleRow, next: &AngleRow) -> Result<Self> {
        let n = now.len();
        if next.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: next.len(),
            });
        }
        require_len(n, 1, "empty angle slice")?;
        let mut out = S2Coefficients {
            al: Vec::with_capacity(n),
            bl: Vec::with_capacity(n),
            cl: Vec::with_capacity(n),
            dl: Vec::with_capacity(n),
            ar: Vec::with_capacity(n),
            br: Vec::with_capacity(n),
            cr: Vec::with_capacity(n),
            dr: Vec::with_capacity(n),
        };
        for m in 0..n {
            let up = (m + 1) % n;
            let down = (m + n - 1) % n;
            let [t1, x1, z1, a1] = next.at(m);
            let [tp, xp, zp, ap] = now.at(up);
            let [tm, xm, zm, am] = now.at(down);
            let (s1, c1) = libm::sincos(t1);
            let (sp, cp) = libm::sincos(tp);
            let (sm, cm) = libm::sincos(tm);

            out.al.push(cis(a1 + x1 + ap + xp) * (c1 * cp));
            out.bl.push(cis(a1 + z1 + am - zm) * (-s1 * sm));
            out.cl.push(cis(a1 + x1 + ap + zp) * (c1 * sp));
            out.dl.push(cis(a1 + z1 + am - xm) * (s1 * cm));

            out.ar.push(cis(a1 - z1 + ap + xp) * (-s1 * cp));
            out.br.push(cis(a1 - x1 + am - zm) * (-sm * c1));
            out.cr.push(cis(a1 - z1 + ap + zp) * (-s1 * sp));
            out.dr.push(cis(a1 - x1 + am - xm) * (cm * c1));
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.al.len()
    }

    pub fn is_empty(&self) -> bool {
        self.al.is_empty()
    }
}

/// Coefficients for the double step `j → j + 2`.
pub fn build_s2_coefficients(angles: &AngleField, lattice: &Lattice, j: usize) -> Result<S2Coefficients> {
    let now = sample_angles(angles, lattice, j)?;
    let next = sample_angles(angles, lattice, j + 1)?;
    S2Coefficients::from_rows(&now, &next)
}

/// `Ψ_{j+2}` from `Ψ_j`. Needs at least four sites.
pub fn step_s2(state: &SpinorField, coeffs: &S2Coefficients) -> Result<SpinorField> {
    let n = state.len();
    require_len(n, 4, "the S2 update needs n >= 4")?;
    if coeffs.len() != n {
        return Err(Error::Dimension {
            expected: coeffs.len(),
            found: n,
        });
    }
    let (l, r) = (state.left(), state.right());
    let c = coeffs;
    Ok(SpinorField::from_fn(n, |m| {
        let up = (m + 2) % n;
        let down = (m + n - 2) % n;
        (
            c.al[m] * l[up] + c.bl[m] * l[m] + c.cl[m] * r[m] + c.dl[m] * r[down],
            c.ar[m] * l[up] + c.br[m] * l[m] + c.cr[m] * r[m] + c.dr[m] * r[down],
        )
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::step_s1_row;
    use crate::AngleLaw;
    use core::f64::consts::FRAC_PI_4;
    use std::vec;

    #[test]
    fn quarter_pi_coefficients() {
        let row = AngleRow::uniform(8, FRAC_PI_4, 0.0, 0.0, 0.0);
        let c = S2Coefficients::from_rows(&row, &row).unwrap();
        for m in 0..8 {
            assert!((c.al[m] - 0.5).norm() < 1e-15);
            assert!((c.bl[m] + 0.5).norm() < 1e-15);
            assert!((c.cl[m] - 0.5).norm() < 1e-15);
            assert!((c.dl[m] - 0.5).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_theta_is_a_double_shift() {
        let l = Lattice::periodic(8).unwrap();
        let c = build_s2_coefficients(&AngleLaw::zero().into(), &l, 0).unwrap();
        for m in 0..8 {
            assert_eq!(c.al[m], Complex64::new(1.0, 0.0));
            assert_eq!(c.dr[m], Complex64::new(1.0, 0.0));
            for v in [c.bl[m], c.cl[m], c.dl[m], c.ar[m], c.br[m], c.cr[m]] {
                assert_eq!(v.norm(), 0.0);
            }
        }
        let s = SpinorField::from_fn(8, |m| (Complex64::new(m as f64, 0.0), Complex64::new(0.0, m as f64)));
        let out = step_s2(&s, &c).unwrap();
        for m in 0..8 {
            assert_eq!(out.left()[m], s.left()[(m + 2) % 8]);
            assert_eq!(out.right()[m], s.right()[(m + 6) % 8]);
        }
    }

    #[test]
    fn delta_spreads_to_three_sites() {
        let n = 12;
        let row = AngleRow::uniform(n, FRAC_PI_4, 0.0, 0.0, 0.0);
        let c = S2Coefficients::from_rows(&row, &row).unwrap();
        let mut s = SpinorField::zeros(n);
        s.left_mut()[6] = Complex64::new(1.0, 0.0);
        s.right_mut()[6] = Complex64::new(0.0, 1.0);
        let out = step_s2(&s, &c).unwrap();
        let support: std::vec::Vec<usize> = (0..n).filter(|&m| out.density()[m] > 0.0).collect();
        assert_eq!(support, vec![4, 6, 8]);
    }

    #[test]
    fn composition_with_varying_angles() {
        let now = AngleRow::new(
            vec![0.1, 0.7, 1.3, -0.4, 2.0],
            vec![0.3, -1.0, 0.2, 0.9, 1.1],
            vec![1.5, 0.1, -0.6, 0.4, 0.0],
            vec![-0.2, 0.4, 3.0, 0.5, 0.8],
        )
        .unwrap();
        let next = AngleRow::new(
            vec![0.9, -0.3, 0.5, 1.2, 0.05],
            vec![0.0, 0.6, -1.4, 0.25, 2.2],
            vec![0.7, 0.2, 0.3, -1.0, 1.9],
            vec![1.1, -0.5, 0.0, 0.3, 0.6],
        )
        .unwrap();
        let s = SpinorField::from_fn(5, |m| (Complex64::new(1.0, m as f64), Complex64::new(0.5 * m as f64, -1.0)));
        let two = step_s1_row(&step_s1_row(&s, &now).unwrap(), &next).unwrap();
        let c = S2Coefficients::from_rows(&now, &next).unwrap();
        assert!(step_s2(&s, &c).unwrap().max_abs_diff(&two) < 1e-13);
    }

    #[test]
    fn tiny_lattices_are_rejected() {
        let row = AngleRow::uniform(3, 0.1, 0.0, 0.0, 0.0);
        let c = S2Coefficients::from_rows(&row, &row).unwrap();
        assert!(step_s2(&SpinorField::zeros(3), &c).is_err());
    }
}
