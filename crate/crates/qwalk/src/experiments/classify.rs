//! Classification of a jet and the coefficients of its limit.

use qwalk_core::continuum::{classify_jet, emit_params, ContinuumLimit, LimitClass, LimitParams, LimitTag};
use serde_json::{json, Value};

use crate::output::{sidecar, write_atomic};
use crate::{AppError, AppResult, ExperimentConfig};

#[derive(Debug, Clone)]
pub struct Classification {
    pub class: LimitClass,
    pub samples: Vec<(f64, f64)>,
    /// Limit coefficients at every sample; empty without a limit.
    pub coefficients: Vec<Value>,
}

fn params_json(p: &LimitParams) -> Value {
    match *p {
        LimitParams::None => json!({}),
        LimitParams::S1 { k, k_plus, k_minus } => json!({"k": k, "k_plus": k_plus, "k_minus": k_minus}),
        LimitParams::Case1 { k, k_prime } | LimitParams::Case21 { k, k_prime } => json!({"k": k, "k_prime": k_prime}),
        LimitParams::Case22 { k, k_prime, k_second } => json!({"k": k, "k_prime": k_prime, "k_second": k_second}),
    }
}

fn coefficients(limit: &ContinuumLimit, t: f64, x: f64) -> Value {
    match limit {
        ContinuumLimit::Dirac(p) => {
            let (mm, mp) = (p.m_minus(t, x), p.m_plus(t, x));
            json!({
                "T": t, "X": x,
                "A0": p.a0.value(t, x), "A1": p.a1.value(t, x),
                "m_minus": [mm.re, mm.im], "m_plus": [mp.re, mp.im],
                "G_XX": p.gxx.value(t, x), "cos_theta": p.cos_theta.value(t, x),
            })
        }
        ContinuumLimit::Ode(s) => json!({
            "T": t, "X": x,
            "alpha_bar": s.alpha_bar.value(t, x),
            "theta_bar": s.theta_bar.value(t, x),
            "zeta": s.zeta.value(t, x),
            "cos_xi": s.xi.value(t, x).cos(),
        }),
    }
}

pub fn run_classify(cfg: &ExperimentConfig) -> AppResult<Classification> {
    let section = cfg
        .classify
        .as_ref()
        .ok_or_else(|| AppError::Config("missing [classify] section".into()))?;
    let samples: Vec<(f64, f64)> = section.samples.iter().map(|s| (s[0], s[1])).collect();
    let jet = cfg.jet()?;
    let class = classify_jet(&jet, &samples)?;
    let coefficients = if class.tag == LimitTag::NoLimit {
        Vec::new()
    } else {
        let limit = emit_params(&jet, &samples)?;
        samples.iter().map(|&(t, x)| coefficients(&limit, t, x)).collect()
    };
    Ok(Classification {
        class,
        samples,
        coefficients,
    })
}

impl Classification {
    pub fn to_json(&self) -> Value {
        json!({
            "tag": self.class.tag.as_str(),
            "params": params_json(&self.class.params),
            "subcase": self.class.subcase.map(|(t, p)| json!({"tag": t.as_str(), "params": params_json(&p)})),
            "coefficients": self.coefficients,
        })
    }

    /// Human-readable lines for the terminal.
    pub fn summary(&self) -> String {
        let mut out = format!("tag: {}\nparams: {}\n", self.class.tag, params_json(&self.class.params));
        if let Some((t, p)) = self.class.subcase {
            out.push_str(&format!("subcase: {t} {}\n", params_json(&p)));
        }
        for c in &self.coefficients {
            out.push_str(&format!("{c}\n"));
        }
        out
    }
}

/// Writes `classification.json`.
pub fn write_classification(cfg: &ExperimentConfig, result: &Classification, dir: &std::path::Path) -> AppResult<()> {
    let doc = sidecar(cfg, result.to_json());
    let bytes = serde_json::to_vec_pretty(&doc)?;
    write_atomic(&dir.join("classification.json"), &bytes)
}
