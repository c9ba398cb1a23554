//! Null characteristics `dX/dT = ±cos θ` of the case-1 limit.

use alloc::vec::Vec;

use crate::{Error, Result, ScalarField};

/// Anything that yields `cos θ(T, X)` on its domain.
pub trait DiadField {
    /// `cos θ` at `(t, x)`, or an error outside the domain.
    fn cos_theta(&self, t: f64, x: f64) -> Result<f64>;

    /// Whether a path at `(t, x)` can reach a singular locus within time `h`.
    /// Used to tell a path that ran into a singularity from one that left the
    /// domain.
    fn near_singularity(&self, _t: f64, _x: f64, _h: f64) -> bool {
        false
    }
}

impl DiadField for ScalarField {
    fn cos_theta(&self, t: f64, x: f64) -> Result<f64> {
        let v = self.value(t, x);
        if !v.is_finite() {
            return Err(Error::NonFinite("theta"));
        }
        Ok(libm::cos(v))
    }
}

impl<F: DiadField + ?Sized> DiadField for &F {
    fn cos_theta(&self, t: f64, x: f64) -> Result<f64> {
        (**self).cos_theta(t, x)
    }

    fn near_singularity(&self, t: f64, x: f64, h: f64) -> bool {
        (**self).near_singularity(t, x, h)
    }
}

/// Left- or right-moving branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Left,
    Right,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Left => -1.0,
            Branch::Right => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Left => "left",
            Branch::Right => "right",
        }
    }
}

/// `(−cos θ, +cos θ)`; errors where `cos θ ≤ 0`.
pub fn characteristic_speed(t: f64, x: f64, field: &impl DiadField) -> Result<(f64, f64)> {
    let c = field.cos_theta(t, x)?;
    if !(c > 0.0) {
        return Err(Error::Domain {
            what: "cos theta must be positive for a case-1 characteristic",
            t,
            x,
        });
    }
    Ok((-c, c))
}

/// Why a path stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Reached the requested final time.
    EndTime,
    /// The next step would leave the field's domain.
    LeftDomain,
    /// `cos θ` fell to [`SINGULAR_COS`], or the path ran into a locus the
    /// field reports as singular.
    Singularity,
}

/// Paths stop once `cos θ` drops to this value.
pub const SINGULAR_COS: f64 = 1e-9;

/// A sampled characteristic.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    pub branch: Branch,
    pub t: Vec<f64>,
    pub x: Vec<f64>,
    pub termination: Termination,
}

impl GeodesicPath {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn end_time(&self) -> f64 {
        *self.t.last().unwrap_or(&f64::NAN)
    }

    /// Linear interpolation of `X` at time `t`; `None` outside the path.
    pub fn position_at(&self, t: f64) -> Option<f64> {
        let (&t0, &t1) = (self.t.first()?, self.t.last()?);
        if t < t0 || t > t1 {
            return None;
        }
        let i = self.t.partition_point(|&s| s <= t);
        if i == 0 {
            return Some(self.x[0]);
        }
        if i >= self.t.len() {
            return Some(self.x[self.t.len() - 1]);
        }
        let (ta, tb) = (self.t[i - 1], self.t[i]);
        let w = (t - ta) / (tb - ta);
        Some(self.x[i - 1] + w * (self.x[i] - self.x[i - 1]))
    }
}

fn rk4(field: &impl DiadField, sign: f64, t: f64, x: f64, h: f64) -> Result<f64> {
    let f = |t: f64, x: f64| field.cos_theta(t, x).map(|c| sign * c);
    let k1 = f(t, x)?;
    let k2 = f(t + h / 2.0, x + h / 2.0 * k1)?;
    let k3 = f(t + h / 2.0, x + h / 2.0 * k2)?;
    let k4 = f(t + h, x + h * k3)?;
    Ok(x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
}

/// Integrates one branch from `(t0, x0)` to `t_max` with classical RK4.
///
/// Near the edge of the domain the step is halved up to ten times before the
/// path is declared to have left it.
pub fn integrate_characteristic(
    x0: f64,
    t0: f64,
    branch: Branch,
    field: &impl DiadField,
    t_max: f64,
    dt: f64,
) -> Result<GeodesicPath> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument("dt must be positive"));
    }
    if !(t_max.is_finite() && x0.is_finite() && t0.is_finite()) {
        return Err(Error::NonFinite("characteristic start or end"));
    }
    let c0 = field.cos_theta(t0, x0)?;
    if !(c0 > 0.0) {
        return Err(Error::Domain {
            what: "characteristic must start where cos theta > 0",
            t: t0,
            x: x0,
        });
    }
    let sign = branch.sign();
    let mut path = GeodesicPath {
        branch,
        t: Vec::from([t0]),
        x: Vec::from([x0]),
        termination: Termination::EndTime,
    };
    let (mut t, mut x) = (t0, x0);
    while t < t_max {
        let mut h = dt.min(t_max - t);
        let mut halvings = 0;
        let next = loop {
            match rk4(field, sign, t, x, h) {
                Ok(nx) => match field.cos_theta(t + h, nx) {
                    Ok(c) if c > SINGULAR_COS => break Some((nx, false)),
                    Ok(_) => break Some((nx, true)),
                    Err(_) if halvings < 10 => {}
                    Err(_) => break None,
                },
                Err(_) if halvings < 10 => {}
                Err(_) => break None,
            }
            h /= 2.0;
            halvings += 1;
        };
        match next {
            None => {
                path.termination = if field.near_singularity(t, x, 2.0 * h) {
                    Termination::Singularity
                } else {
                    Termination::LeftDomain
                };
                return Ok(path);
            }
            Some((nx, singular)) => {
                t += h;
                x = nx;
                path.t.push(t);
                path.x.push(x);
                if singular {
                    path.termination = Termination::Singularity;
                    return Ok(path);
                }
            }
        }
    }
    Ok(path)
}
