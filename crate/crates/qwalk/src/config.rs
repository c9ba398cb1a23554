//! Experiment configuration files.
//!
//! One TOML file per experiment. Angles and lengths accept plain numbers or
//! multiples of π written as strings (`"pi/2"`, `"3*pi/2"`, `"-2pi"`).

use std::fmt;
use std::path::{Path, PathBuf};

use qwalk_core::continuum::JetSpec;
use qwalk_core::schwarzschild::{make_schwarzschild_jet, tabulated_jet, SchwarzschildConfig};
use qwalk_core::{AngleLaw, Lattice};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{AppError, AppResult};

/// A real number that may be written as a multiple of π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle(pub f64);

impl Angle {
    /// Parses `[sign][number][*]pi[/number]` or a plain number.
    pub fn parse(text: &str) -> Option<f64> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        if let Ok(v) = s.parse::<f64>() {
            return v.is_finite().then_some(v);
        }
        let (sign, rest) = match s.strip_prefix('-') {
            Some(r) => (-1.0, r),
            None => (1.0, s.strip_prefix('+').unwrap_or(&s)),
        };
        let (head, divisor) = match rest.split_once('/') {
            Some((h, d)) => (h, d.parse::<f64>().ok()?),
            None => (rest, 1.0),
        };
        let coeff = match head.strip_suffix("pi").or_else(|| head.strip_suffix('π')) {
            Some(c) => {
                let c = c.strip_suffix('*').unwrap_or(c);
                let k = if c.is_empty() { 1.0 } else { c.parse::<f64>().ok()? };
                k * std::f64::consts::PI
            }
            None => head.parse::<f64>().ok()?,
        };
        let v = sign * coeff / divisor;
        (v.is_finite() && divisor != 0.0).then_some(v)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Angle;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a multiple of pi such as \"3*pi/2\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Angle, E> {
                Ok(Angle(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Angle, E> {
                Ok(Angle(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Angle, E> {
                Ok(Angle(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Angle, E> {
                Angle::parse(v)
                    .map(Angle)
                    .ok_or_else(|| E::custom(format!("cannot read {v:?} as an angle")))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    ElectricConvergence,
    ElectricDensity,
    Schwarzschild,
    Classify,
    Geodesic,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::ElectricConvergence => "electric_convergence",
            Kind::ElectricDensity => "electric_density",
            Kind::Schwarzschild => "schwarzschild",
            Kind::Classify => "classify",
            Kind::Geodesic => "geodesic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Packet {
    pub sigma_x: f64,
    pub center: Angle,
    #[serde(default = "zero")]
    pub k0: f64,
}

/// The named angle-law sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "set", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AngleSet {
    /// `θ̄ = mass`, `ξ̄ = efield·T`, `ζ = π/2`, `ᾱ = 0` on a zero background.
    Electric {
        #[serde(default = "default_mass")]
        mass: f64,
        #[serde(default = "default_efield")]
        efield: f64,
    },
    /// Case-1 walk of the infalling geometry (`α = ξ = ζ = π/2`).
    Schwarzschild,
    /// The same geometry with `(α, ξ, ζ) = (0, π, π/2)`.
    SchwarzschildTable,
    /// Constant zeroth- and first-order angles `[θ, ξ, ζ, α]`.
    Custom {
        stroboscope: usize,
        zeroth: [Angle; 4],
        #[serde(default = "zero_angles")]
        first: [Angle; 4],
    },
}

impl Default for AngleSet {
    fn default() -> Self {
        AngleSet::Electric {
            mass: default_mass(),
            efield: default_efield(),
        }
    }
}

impl AngleSet {
    pub fn name(&self) -> &'static str {
        match self {
            AngleSet::Electric { .. } => "electric",
            AngleSet::Schwarzschild => "schwarzschild",
            AngleSet::SchwarzschildTable => "schwarzschild-table",
            AngleSet::Custom { .. } => "custom",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensitySection {
    pub sigmas: Vec<f64>,
    #[serde(default = "default_frames")]
    pub frames: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchwarzschildSection {
    pub r_g: f64,
    #[serde(default = "one")]
    pub lambda: f64,
    #[serde(default = "default_frames")]
    pub frames: usize,
    /// Ridge errors are measured up to this fraction of each branch's
    /// singularity time.
    #[serde(default = "default_ridge_fraction")]
    pub ridge_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicSection {
    pub x0: f64,
    #[serde(default = "default_geodesic_dt")]
    pub dt: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifySection {
    /// `(T, X)` points at which the constraints are checked.
    pub samples: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: Kind,
    #[serde(default)]
    pub resolutions: Vec<usize>,
    #[serde(default = "one")]
    pub t_final: f64,
    /// Spatial period `L` of the grid.
    #[serde(default = "two_pi")]
    pub period: Angle,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub packet: Option<Packet>,
    #[serde(default)]
    pub angles: AngleSet,
    #[serde(default)]
    pub density: Option<DensitySection>,
    #[serde(default)]
    pub schwarzschild: Option<SchwarzschildSection>,
    #[serde(default)]
    pub geodesic: Option<GeodesicSection>,
    #[serde(default)]
    pub classify: Option<ClassifySection>,
}

fn zero() -> f64 {
    0.0
}
fn one() -> f64 {
    1.0
}
fn two_pi() -> Angle {
    Angle(std::f64::consts::TAU)
}
fn default_mass() -> f64 {
    0.24
}
fn default_efield() -> f64 {
    1.1
}
fn default_frames() -> usize {
    200
}
fn default_ridge_fraction() -> f64 {
    0.8
}
fn default_geodesic_dt() -> f64 {
    0.01
}
fn zero_angles() -> [Angle; 4] {
    [Angle(0.0); 4]
}

fn config_err(msg: impl Into<String>) -> AppError {
    AppError::Config(msg.into())
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> AppResult<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| config_err(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> AppResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            AppError::Config(m) => config_err(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Checks the invariants every experiment relies on.
    pub fn validate(&self) -> AppResult<()> {
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(config_err("t_final must be positive"));
        }
        if !(self.period.0 > 0.0 && self.period.0.is_finite()) {
            return Err(config_err("period must be positive"));
        }
        if let Some(&n) = self.resolutions.iter().find(|&&n| n < 8) {
            return Err(config_err(format!("resolution {n} is below the minimum of 8")));
        }
        if self.resolutions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(config_err("resolutions must be strictly ascending (no repeats)"));
        }
        let needs_grid = matches!(
            self.kind,
            Kind::ElectricConvergence | Kind::ElectricDensity | Kind::Schwarzschild
        );
        if needs_grid && self.resolutions.is_empty() {
            return Err(config_err(format!("{} needs at least one resolution", self.kind.as_str())));
        }
        if needs_grid && self.packet.is_none() {
            return Err(config_err(format!("{} needs a [packet] section", self.kind.as_str())));
        }
        // The spectral packet guard; the Schwarzschild start is a plain Gaussian.
        if matches!(self.kind, Kind::ElectricConvergence | Kind::ElectricDensity) {
            let packet = self
                .packet
                .as_ref()
                .ok_or_else(|| config_err(format!("{} needs a [packet] section", self.kind.as_str())))?;
            let smallest = self.resolutions[0];
            let dx = self.period.0 / smallest as f64;
            let widths: Vec<f64> = match (&self.kind, &self.density) {
                (Kind::ElectricDensity, Some(d)) => d.sigmas.clone(),
                (Kind::ElectricDensity, None) => return Err(config_err("electric_density needs a [density] section")),
                _ => vec![packet.sigma_x],
            };
            if widths.is_empty() {
                return Err(config_err("density.sigmas must not be empty"));
            }
            for s in widths {
                if !(s >= 4.0 * dx) {
                    return Err(config_err(format!(
                        "packet width {s} is under-resolved at n = {smallest} (needs >= 4 dx = {})",
                        4.0 * dx
                    )));
                }
            }
        }
        match self.kind {
            Kind::ElectricConvergence | Kind::ElectricDensity => {
                if !matches!(self.angles, AngleSet::Electric { .. }) {
                    return Err(config_err("electric experiments need angles.set = \"electric\""));
                }
            }
            Kind::Schwarzschild | Kind::Geodesic => {
                let geometry = self.geometry()?;
                if self.kind == Kind::Schwarzschild {
                    let center = self.packet.as_ref().map(|p| p.center.0).unwrap_or(f64::NAN);
                    if !geometry.in_domain(0.0, center) {
                        return Err(config_err(format!("packet center {center} is outside the walk domain at T = 0")));
                    }
                    if center >= self.period.0 {
                        return Err(config_err("packet center lies outside the X window"));
                    }
                } else {
                    let g = self.geodesic.as_ref().ok_or_else(|| config_err("geodesic needs a [geodesic] section"))?;
                    if !(g.dt > 0.0) {
                        return Err(config_err("geodesic.dt must be positive"));
                    }
                }
            }
            Kind::Classify => {
                let c = self.classify.as_ref().ok_or_else(|| config_err("classify needs a [classify] section"))?;
                if c.samples.is_empty() {
                    return Err(config_err("classify.samples must not be empty"));
                }
                if let AngleSet::Custom { stroboscope, .. } = self.angles {
                    if !(1..=2).contains(&stroboscope) {
                        return Err(config_err("angles.stroboscope must be 1 or 2"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Replaces the resolution list by a single value.
    pub fn override_resolution(&mut self, n: usize) -> AppResult<()> {
        self.resolutions = vec![n];
        self.validate()
    }

    pub fn lattice(&self, n: usize) -> AppResult<Lattice> {
        Ok(Lattice::new(n, self.period.0)?)
    }

    pub fn geometry(&self) -> AppResult<SchwarzschildConfig> {
        let s = self
            .schwarzschild
            .as_ref()
            .ok_or_else(|| config_err(format!("{} needs a [schwarzschild] section", self.kind.as_str())))?;
        SchwarzschildConfig::new(s.r_g, s.lambda).map_err(|e| config_err(e.to_string()))
    }

    /// The jet described by `angles`.
    pub fn jet(&self) -> AppResult<JetSpec> {
        Ok(match &self.angles {
            AngleSet::Electric { mass, efield } => JetSpec::electric(*mass, *efield),
            AngleSet::Schwarzschild => make_schwarzschild_jet(&self.geometry()?),
            AngleSet::SchwarzschildTable => tabulated_jet(&self.geometry()?),
            AngleSet::Custom {
                stroboscope,
                zeroth,
                first,
            } => {
                let law = |a: &[Angle; 4]| AngleLaw::constant(a[0].0, a[1].0, a[2].0, a[3].0);
                match stroboscope {
                    1 => JetSpec::s1(law(zeroth), law(first)),
                    2 => JetSpec::s2(law(zeroth), law(first)),
                    _ => return Err(config_err("angles.stroboscope must be 1 or 2")),
                }
            }
        })
    }
}
