//! Real fields on space-time and the four coin angles built from them.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::walk::gauge::GaugePhase;
use crate::{Error, Lattice, Result};

/// A shared closure of `(T, X)`.
pub type FieldFn<T> = Arc<dyn Fn(f64, f64) -> T + Send + Sync>;

/// Finite-difference step used when a closed-form field has no gradient.
const FD_STEP: f64 = 1e-3;

/// A real function of `(T, X)`, optionally with its analytic gradient.
#[derive(Clone)]
pub struct ScalarField(Repr);

#[derive(Clone)]
enum Repr {
    /// `c0 + ct*T + cx*X`
    Affine { c0: f64, ct: f64, cx: f64 },
    Custom {
        value: FieldFn<f64>,
        gradient: Option<FieldFn<(f64, f64)>>,
    },
}

impl ScalarField {
    pub fn constant(c: f64) -> Self {
        Self::affine(c, 0.0, 0.0)
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn affine(c0: f64, ct: f64, cx: f64) -> Self {
        Self(Repr::Affine { c0, ct, cx })
    }

    /// A closure without a known gradient; derivatives fall back to a
    /// fourth-order central difference.
    pub fn from_fn(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Self(Repr::Custom {
            value: Arc::new(f),
            gradient: None,
        })
    }

    /// A closure together with its gradient `(∂_T f, ∂_X f)`.
    pub fn with_gradient(
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        grad: impl Fn(f64, f64) -> (f64, f64) + Send + Sync + 'static,
    ) -> Self {
        Self(Repr::Custom {
            value: Arc::new(f),
            gradient: Some(Arc::new(grad)),
        })
    }

    #[inline]
    pub fn value(&self, t: f64, x: f64) -> f64 {
        match &self.0 {
            Repr::Affine { c0, ct, cx } => c0 + ct * t + cx * x,
            Repr::Custom { value, .. } => value(t, x),
        }
    }

    /// `(∂_T f, ∂_X f)` at `(t, x)`.
    pub fn gradient(&self, t: f64, x: f64) -> (f64, f64) {
        match &self.0 {
            Repr::Affine { ct, cx, .. } => (*ct, *cx),
            Repr::Custom {
                gradient: Some(g), ..
            } => g(t, x),
            Repr::Custom { value, .. } => {
                let h = FD_STEP;
                let d = |f: &dyn Fn(f64) -> f64| {
                    (f(-2.0 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2.0 * h)) / (12.0 * h)
                };
                (d(&|s| value(t + s, x)), d(&|s| value(t, x + s)))
            }
        }
    }

    pub fn d_t(&self, t: f64, x: f64) -> f64 {
        self.gradient(t, x).0
    }

    pub fn d_x(&self, t: f64, x: f64) -> f64 {
        self.gradient(t, x).1
    }

    /// `Some(c)` if the field is the constant `c`.
    pub fn constant_value(&self) -> Option<f64> {
        match self.0 {
            Repr::Affine { c0, ct, cx } if ct == 0.0 && cx == 0.0 => Some(c0),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant_value() == Some(0.0)
    }

    /// `false` only when the field is known not to vary in `X`.
    pub fn depends_on_x(&self) -> bool {
        match self.0 {
            Repr::Affine { cx, .. } => cx != 0.0,
            Repr::Custom { .. } => true,
        }
    }

    pub fn has_analytic_gradient(&self) -> bool {
        !matches!(
            self.0,
            Repr::Custom {
                gradient: None,
                ..
            }
        )
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &ScalarField, s: f64) -> ScalarField {
        match (&self.0, &other.0) {
            (
                Repr::Affine { c0, ct, cx },
                Repr::Affine {
                    c0: d0,
                    ct: dt,
                    cx: dx,
                },
            ) => ScalarField::affine(c0 + s * d0, ct + s * dt, cx + s * dx),
            _ if other.is_zero() => self.clone(),
            _ => {
                let (a, b) = (self.clone(), other.clone());
                let value: FieldFn<f64> = {
                    let (a, b) = (a.clone(), b.clone());
                    Arc::new(move |t, x| a.value(t, x) + s * b.value(t, x))
                };
                let gradient: Option<FieldFn<(f64, f64)>> =
                    if a.has_analytic_gradient() && b.has_analytic_gradient() {
                        Some(Arc::new(move |t, x| {
                            let (at, ax) = a.gradient(t, x);
                            let (bt, bx) = b.gradient(t, x);
                            (at + s * bt, ax + s * bx)
                        }))
                    } else {
                        None
                    };
                ScalarField(Repr::Custom { value, gradient })
            }
        }
    }

    /// Samples the field at the collocation points of `lattice` at time `t`.
    pub fn sample_row(&self, lattice: &Lattice, t: f64) -> Vec<f64> {
        if self.depends_on_x() {
            lattice.points().map(|x| self.value(t, x)).collect()
        } else {
            vec![self.value(t, 0.0); lattice.n()]
        }
    }
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Affine { c0, ct, cx } => f
                .debug_struct("Affine")
                .field("c0", c0)
                .field("ct", ct)
                .field("cx", cx)
                .finish(),
            Repr::Custom { gradient, .. } => f
                .debug_struct("Custom")
                .field("analytic_gradient", &gradient.is_some())
                .finish(),
        }
    }
}

/// Closed-form laws for the four coin angles.
#[derive(Clone, Debug)]
pub struct AngleLaw {
    pub theta: ScalarField,
    pub xi: ScalarField,
    pub zeta: ScalarField,
    pub alpha: ScalarField,
}

impl AngleLaw {
    pub fn new(theta: ScalarField, xi: ScalarField, zeta: ScalarField, alpha: ScalarField) -> Self {
        Self {
            theta,
            xi,
            zeta,
            alpha,
        }
    }

    pub fn constant(theta: f64, xi: f64, zeta: f64, alpha: f64) -> Self {
        Self::new(
            ScalarField::constant(theta),
            ScalarField::constant(xi),
            ScalarField::constant(zeta),
            ScalarField::constant(alpha),
        )
    }

    pub fn zero() -> Self {
        Self::constant(0.0, 0.0, 0.0, 0.0)
    }

    pub fn fields(&self) -> [&ScalarField; 4] {
        [&self.theta, &self.xi, &self.zeta, &self.alpha]
    }

    /// `self + s * other`, angle by angle.
    pub fn add_scaled(&self, other: &AngleLaw, s: f64) -> AngleLaw {
        AngleLaw::new(
            self.theta.add_scaled(&other.theta, s),
            self.xi.add_scaled(&other.xi, s),
            self.zeta.add_scaled(&other.zeta, s),
            self.alpha.add_scaled(&other.alpha, s),
        )
    }
}

/// The four angles at every site of one time slice.
#[derive(Clone, Debug, PartialEq)]
pub struct AngleRow {
    pub theta: Vec<f64>,
    pub xi: Vec<f64>,
    pub zeta: Vec<f64>,
    pub alpha: Vec<f64>,
}

impl AngleRow {
    pub fn new(theta: Vec<f64>, xi: Vec<f64>, zeta: Vec<f64>, alpha: Vec<f64>) -> Result<Self> {
        let n = theta.len();
        for v in [&xi, &zeta, &alpha] {
            if v.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        Ok(Self {
            theta,
            xi,
            zeta,
            alpha,
        })
    }

    pub fn uniform(n: usize, theta: f64, xi: f64, zeta: f64, alpha: f64) -> Self {
        Self {
            theta: vec![theta; n],
            xi: vec![xi; n],
            zeta: vec![zeta; n],
            alpha: vec![alpha; n],
        }
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    #[inline]
    pub fn at(&self, m: usize) -> [f64; 4] {
        [self.theta[m], self.xi[m], self.zeta[m], self.alpha[m]]
    }

    /// The common quadruple if every site carries the same angles.
    pub fn as_uniform(&self) -> Option<[f64; 4]> {
        let first = self.at(0);
        (1..self.len())
            .all(|m| self.at(m) == first)
            .then_some(first)
    }

    fn check_finite(&self) -> Result<()> {
        let all = [&self.theta, &self.xi, &self.zeta, &self.alpha];
        if all.iter().all(|v| v.iter().all(|a| a.is_finite())) {
            Ok(())
        } else {
            Err(Error::NonFinite("angle field"))
        }
    }
}

/// Coin angles over the space-time lattice.
///
/// The closed-form representation is canonical; sampled slices act as a
/// cache or a replay of a recorded run. A gauged field applies a discrete
/// gauge transformation lazily on top of another field.
#[derive(Clone, Debug)]
pub enum AngleField {
    Closed(AngleLaw),
    Sampled(Vec<AngleRow>),
    Gauged {
        base: Box<AngleField>,
        phase: GaugePhase,
    },
}

impl From<AngleLaw> for AngleField {
    fn from(law: AngleLaw) -> Self {
        AngleField::Closed(law)
    }
}

impl AngleField {
    /// Samples `steps` consecutive slices starting at `start` into a cache.
    pub fn cached(&self, lattice: &Lattice, start: usize, steps: usize) -> Result<AngleField> {
        let rows = (start..start + steps)
            .map(|j| sample_angles(self, lattice, j))
            .collect::<Result<Vec<_>>>()?;
        Ok(AngleField::Sampled(rows))
    }
}

/// Angles at `(t_j, x_m)` for every site `m` of time slice `time_index`.
pub fn sample_angles(field: &AngleField, lattice: &Lattice, time_index: usize) -> Result<AngleRow> {
    let n = lattice.n();
    let row = match field {
        AngleField::Closed(law) => {
            let t = lattice.time(time_index);
            AngleRow {
                theta: law.theta.sample_row(lattice, t),
                xi: law.xi.sample_row(lattice, t),
                zeta: law.zeta.sample_row(lattice, t),
                alpha: law.alpha.sample_row(lattice, t),
            }
        }
        AngleField::Sampled(rows) => {
            let row = rows
                .get(time_index)
                .ok_or(Error::MissingSlice(time_index))?;
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: row.len(),
                });
            }
            row.clone()
        }
        AngleField::Gauged { base, phase } => {
            let mut row = sample_angles(base, lattice, time_index)?;
            for m in 0..n {
                let sigma = phase.sigma(time_index, m, n)?;
                let delta = phase.delta(time_index, m, n)?;
                row.alpha[m] += 0.5 * sigma;
                row.xi[m] += delta;
                row.zeta[m] -= delta;
            }
            row
        }
    };
    row.check_finite()?;
    Ok(row)
}
