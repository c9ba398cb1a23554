use core::f64::consts::{FRAC_PI_2, PI};

use super::{JetSpec, LimitTag, Stroboscope};
use crate::{Error, Result};

/// Absolute tolerance on the distance of a zeroth-order angle to its
/// admissible lattice of multiples.
pub const CONSTRAINT_TOL: f64 = 1e-9;

/// Integer labels of the zeroth-order angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitParams {
    None,
    /// `θ₀ = kπ`, `α₀ = (k + k₊ + k₋)π`, `ξ₀ = (k₊ − k₋)π`.
    S1 { k: i64, k_plus: i64, k_minus: i64 },
    /// `ξ₀ = (2k + 1)π/2`, `α₀ = (2k′ + 1)π/2`.
    Case1 { k: i64, k_prime: i64 },
    /// `θ₀ = kπ/2` with `k` odd, `α₀ = (2k′ + 1)π/2`.
    Case21 { k: i64, k_prime: i64 },
    /// `θ₀ = kπ/2` with `k` even, `α₀ = k′π/2`, `ξ₀ = α₀ + k″π`.
    Case22 { k: i64, k_prime: i64, k_second: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LimitClass {
    pub tag: LimitTag,
    pub params: LimitParams,
    /// For `Overlap`, the case-2 subcase that also applies, with its labels.
    pub subcase: Option<(LimitTag, LimitParams)>,
}

impl LimitClass {
    fn plain(tag: LimitTag, params: LimitParams) -> Self {
        Self {
            tag,
            params,
            subcase: None,
        }
    }

    pub fn no_limit() -> Self {
        Self::plain(LimitTag::NoLimit, LimitParams::None)
    }

    /// True if the class can be treated as `tag` (overlaps count for both
    /// case 1 and their case-2 subcase).
    pub fn admits(&self, tag: LimitTag) -> bool {
        self.tag == tag
            || (self.tag == LimitTag::Overlap
                && (tag == LimitTag::Case1 || self.subcase.map(|(t, _)| t) == Some(tag)))
    }
}

/// `Some(k)` if `x` is within tolerance of `k·unit + offset`.
fn multiple(x: f64, unit: f64, offset: f64) -> Option<i64> {
    let k = libm::round((x - offset) / unit);
    ((x - offset - k * unit).abs() <= CONSTRAINT_TOL).then_some(k as i64)
}

fn odd_half_pi(x: f64) -> Option<i64> {
    multiple(x, PI, FRAC_PI_2)
}

fn s1_sample(theta: f64, xi: f64, alpha: f64) -> Option<LimitParams> {
    let k = multiple(theta, PI, 0.0)?;
    let s = multiple(alpha - k as f64 * PI, PI, 0.0)?;
    let d = multiple(xi, PI, 0.0)?;
    // e^{i(α₀ ± ξ₀)} cos θ₀ = 1 requires k₊ = (s + d)/2 to be an integer.
    if (s + d).rem_euclid(2) != 0 {
        return None;
    }
    Some(LimitParams::S1 {
        k,
        k_plus: (s + d) / 2,
        k_minus: (s - d) / 2,
    })
}

#[derive(Clone, Copy, Default)]
struct S2Sample {
    case1: Option<LimitParams>,
    case21: Option<LimitParams>,
    case22: Option<LimitParams>,
}

fn s2_sample(theta: f64, xi: f64, alpha: f64) -> S2Sample {
    let alpha_odd = odd_half_pi(alpha);
    let case1 = odd_half_pi(xi)
        .zip(alpha_odd)
        .map(|(k, k_prime)| LimitParams::Case1 { k, k_prime });
    let half = multiple(theta, FRAC_PI_2, 0.0);
    let case21 = half
        .filter(|k| k.rem_euclid(2) == 1)
        .zip(alpha_odd)
        .map(|(k, k_prime)| LimitParams::Case21 { k, k_prime });
    let case22 = half.filter(|k| k.rem_euclid(2) == 0).and_then(|k| {
        let k_prime = multiple(alpha, FRAC_PI_2, 0.0)?;
        let k_second = multiple(xi - alpha, PI, 0.0)?;
        Some(LimitParams::Case22 {
            k,
            k_prime,
            k_second,
        })
    });
    S2Sample {
        case1,
        case21,
        case22,
    }
}

impl S2Sample {
    fn tag(&self) -> LimitTag {
        match (self.case1.is_some(), self.case21.is_some(), self.case22.is_some()) {
            (true, false, false) => LimitTag::Case1,
            (true, _, _) => LimitTag::Overlap,
            (false, true, _) => LimitTag::Case21,
            (false, false, true) => LimitTag::Case22,
            _ => LimitTag::NoLimit,
        }
    }
}

/// Assigns a jet to its continuous-limit family by testing the zeroth-order
/// constraints at every sample point `(T, X)`.
///
/// `NoLimit` is returned when some sample violates every constraint. Samples
/// that satisfy constraints of different families with nothing in common
/// give [`Error::MixedClassification`]. A non-zero first-order slot for an
/// angle that the family leaves free at zeroth order gives
/// [`Error::DoubleCounted`].
pub fn classify_jet(jet: &JetSpec, samples: &[(f64, f64)]) -> Result<LimitClass> {
    if samples.is_empty() {
        return Err(Error::NoSamples);
    }
    let z = &jet.zeroth;
    let at = |(t, x): (f64, f64)| {
        let v = [z.theta.value(t, x), z.xi.value(t, x), z.alpha.value(t, x)];
        if v.iter().all(|a| a.is_finite()) {
            Ok(v)
        } else {
            Err(Error::NonFinite("zeroth-order angles"))
        }
    };

    let class = match jet.stroboscope {
        Stroboscope::One => {
            let mut first = None;
            for &p in samples {
                let [theta, xi, alpha] = at(p)?;
                match s1_sample(theta, xi, alpha) {
                    None => return Ok(LimitClass::no_limit()),
                    Some(params) => {
                        first.get_or_insert(params);
                    }
                }
            }
            LimitClass::plain(LimitTag::S1, first.unwrap_or(LimitParams::None))
        }
        Stroboscope::Two => {
            let mut all = S2Sample::default();
            let mut first_tag = LimitTag::NoLimit;
            for (index, &p) in samples.iter().enumerate() {
                let [theta, xi, alpha] = at(p)?;
                let s = s2_sample(theta, xi, alpha);
                let tag = s.tag();
                if tag == LimitTag::NoLimit {
                    return Ok(LimitClass::no_limit());
                }
                if index == 0 {
                    all = s;
                    first_tag = tag;
                    continue;
                }
                all.case1 = all.case1.and(s.case1);
                all.case21 = all.case21.and(s.case21);
                all.case22 = all.case22.and(s.case22);
                if all.tag() == LimitTag::NoLimit {
                    return Err(Error::MixedClassification {
                        first: first_tag,
                        other: tag,
                        index,
                    });
                }
            }
            match all.tag() {
                LimitTag::Case1 => LimitClass::plain(LimitTag::Case1, all.case1.unwrap_or(LimitParams::None)),
                LimitTag::Case21 => LimitClass::plain(LimitTag::Case21, all.case21.unwrap_or(LimitParams::None)),
                LimitTag::Case22 => LimitClass::plain(LimitTag::Case22, all.case22.unwrap_or(LimitParams::None)),
                _ => {
                    let subcase = all
                        .case21
                        .map(|p| (LimitTag::Case21, p))
                        .or(all.case22.map(|p| (LimitTag::Case22, p)));
                    LimitClass {
                        tag: LimitTag::Overlap,
                        params: all.case1.unwrap_or(LimitParams::None),
                        subcase,
                    }
                }
            }
        }
    };

    require_zero(&jet.first.zeta, samples, "zeta")?;
    match class.tag {
        LimitTag::Case1 => require_zero(&jet.first.theta, samples, "theta")?,
        LimitTag::Case21 => require_zero(&jet.first.xi, samples, "xi")?,
        _ => {}
    }
    Ok(class)
}

pub(super) fn require_zero(
    field: &crate::ScalarField,
    samples: &[(f64, f64)],
    name: &'static str,
) -> Result<()> {
    if field.is_zero() || samples.iter().all(|&(t, x)| field.value(t, x) == 0.0) {
        Ok(())
    } else {
        Err(Error::DoubleCounted(name))
    }
}
