//! End-to-end check pipeline: axioms, normality, structure functions,
//! classification, curvature stack, then the theorem battery, with
//! hypothesis-gated stages reported as skipped rather than failed.

use crate::check::{sig15, CheckReport};
use crate::curvature::CurvatureCache;
use crate::fields::GeomError;
use crate::manifest::{definition_to_fields, ManifoldDefinition};
use crate::paracontact::{alpha_beta, classify, DEFAULT_TOL};
use crate::theorems::{
    einstein_check, kenmotsu_curvature_form, lemma_r_xi, parallel_check, xi_concircular_flat,
    xi_projective_flat, TheoremReport, Verdict,
};
use serde::Serialize;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Fixed sign and trace conventions the whole crate computes under.
#[derive(Debug, Clone, Serialize)]
pub struct Conventions {
    pub curvature_sign: &'static str,
    pub ricci_trace: &'static str,
    pub d_eta: &'static str,
    pub structure_functions: &'static str,
}

pub const CONVENTIONS: Conventions = Conventions {
    curvature_sign: "R(X,Y)Z = nabla_[X,Y] Z - [nabla_X, nabla_Y] Z (opposite of the textbook commutator sign)",
    ricci_trace: "Ric(X,Y) = trace of V -> R(V,X)Y taken with the inverse metric",
    d_eta: "d eta(X,Y) = (1/2){X eta(Y) - Y eta(X) - eta([X,Y])}",
    structure_functions: "nabla_X xi = alpha(X - eta(X) xi) + beta phi X; alpha, beta as half-traces",
};

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub tol: f64,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions {
            seed: None,
            samples: None,
            tol: DEFAULT_TOL,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalarSummary {
    pub expression: String,
    pub value: f64,
    pub constant: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub version: String,
    pub name: String,
    pub conventions: Conventions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<Vec<CheckReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normality: Option<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<ScalarSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<ScalarSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<String>,
    pub tau: String,
    pub tau_value: f64,
    pub tau_sampled_max_dev: f64,
    pub signature: (usize, usize),
    pub theorems: Vec<TheoremReport>,
    pub pass: bool,
}

impl RunReport {
    /// True when every structure check passed; theorem stages only count
    /// against `pass` when their verdict is `Failed`.
    fn compute_pass(&self) -> bool {
        let axioms_ok = self
            .axioms
            .as_ref()
            .map_or(true, |v| v.iter().all(|c| c.passed));
        let normality_ok = self.normality.as_ref().map_or(true, |c| c.passed);
        let theorems_ok = self.theorems.iter().all(|t| t.verdict != Verdict::Failed);
        axioms_ok && normality_ok && theorems_ok
    }
}

pub fn run(defn: &ManifoldDefinition, options: &RunOptions) -> Result<RunReport, GeomError> {
    let mut defn = defn.clone();
    if let Some(seed) = options.seed {
        defn.chart = defn.chart.clone().with_seed(seed);
    }
    if let Some(samples) = options.samples {
        defn.chart = defn.chart.clone().with_sample_count(samples);
    }
    let inst = definition_to_fields(&defn)?;
    let cache = CurvatureCache::new(inst.metric.clone())?;

    let points = defn.chart.sample_points();
    let tau = cache.scalar_curvature();
    let tau_vals: Vec<f64> = points
        .iter()
        .map(|p| tau.eval(p))
        .collect::<Result<_, _>>()?;
    let tau_mean = tau_vals.iter().sum::<f64>() / tau_vals.len() as f64;
    let tau_dev = tau_vals
        .iter()
        .map(|v| (v - tau_mean).abs())
        .fold(0.0f64, f64::max);
    let signature = inst.metric.signature()?;

    let mut axioms = None;
    let mut normality = None;
    let mut alpha = None;
    let mut beta = None;
    let mut classification = None;
    let mut theorems = Vec::new();

    if let Some(s) = &inst.structure {
        let mut ax = s.check_axioms()?;
        for c in &mut ax {
            c.tol = options.tol;
            c.passed = c.max_residual <= c.tol;
        }
        let normal = s.normality_residual(options.tol)?;
        let structure_ok = ax.iter().all(|c| c.passed) && normal.passed;
        axioms = Some(ax);
        normality = Some(normal);

        if structure_ok && s.dim() == 3 {
            let f = alpha_beta(s, &cache)?;
            alpha = Some(ScalarSummary {
                expression: f.alpha.render(&defn.chart),
                value: f.alpha_value,
                constant: f.alpha_is_constant,
            });
            beta = Some(ScalarSummary {
                expression: f.beta.render(&defn.chart),
                value: f.beta_value,
                constant: f.beta_is_constant,
            });
            classification = Some(classify(&f).to_string());
        }

        theorems.push(lemma_r_xi(s, &cache)?);
        theorems.push(kenmotsu_curvature_form(s, &cache)?);
        theorems.push(xi_concircular_flat(s, &cache)?);
        theorems.push(einstein_check(&cache)?);
        theorems.push(xi_projective_flat(s, &cache)?);
        for (name, t) in &inst.tensors {
            theorems.push(parallel_check(s, &cache, t, name)?);
        }
    } else {
        theorems.push(einstein_check(&cache)?);
    }

    let mut report = RunReport {
        version: VERSION.to_string(),
        name: defn.name.clone(),
        conventions: CONVENTIONS.clone(),
        axioms,
        normality,
        alpha,
        beta,
        classification,
        tau: tau.render(&defn.chart),
        tau_value: tau_mean,
        tau_sampled_max_dev: tau_dev,
        signature,
        theorems,
        pass: false,
    };
    report.pass = report.compute_pass();
    Ok(report)
}

/// Compact decimal for report text: `{:.9}` with trailing zeros trimmed.
fn fmt_num(x: f64) -> String {
    let s = format!("{x:.9}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn fmt_check(c: &CheckReport) -> String {
    format!(
        "  [{}] {}: max residual {:.3e} (tol {:.0e})",
        if c.passed { "ok" } else { "FAIL" },
        c.label,
        c.max_residual,
        c.tol
    )
}

pub fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("paracurv {} — {}\n\n", r.version, r.name));
    out.push_str("conventions:\n");
    out.push_str(&format!("  curvature: {}\n", r.conventions.curvature_sign));
    out.push_str(&format!("  ricci:     {}\n", r.conventions.ricci_trace));
    out.push_str(&format!("  d_eta:     {}\n", r.conventions.d_eta));
    out.push_str(&format!("  alpha/beta: {}\n", r.conventions.structure_functions));
    out.push_str(&format!(
        "\nmetric signature: ({}, {})\n",
        r.signature.0, r.signature.1
    ));

    if let Some(axioms) = &r.axioms {
        out.push_str("\nstructure axioms:\n");
        for c in axioms {
            out.push_str(&fmt_check(c));
            out.push('\n');
        }
    }
    if let Some(n) = &r.normality {
        out.push_str("\nnormality:\n");
        out.push_str(&fmt_check(n));
        out.push('\n');
    }
    if let (Some(a), Some(b)) = (&r.alpha, &r.beta) {
        out.push_str(&format!(
            "\nstructure functions:\n  alpha = {} ({})\n  beta = {} ({})\n",
            fmt_num(a.value),
            if a.constant { "constant" } else { "non-constant" },
            fmt_num(b.value),
            if b.constant { "constant" } else { "non-constant" },
        ));
    }
    if let Some(class) = &r.classification {
        out.push_str(&format!("\nclassification: {class}\n"));
    }

    out.push_str("\nscalar curvature:\n");
    match &r.alpha {
        Some(a) => {
            out.push_str(&format!(
                "  tau = {} (expected 6*alpha^2 = {})\n",
                fmt_num(r.tau_value),
                fmt_num(6.0 * a.value * a.value)
            ));
        }
        None => {
            out.push_str(&format!("  tau = {}\n", fmt_num(r.tau_value)));
        }
    }
    out.push_str(&format!(
        "  expression: {}\n  sampled max deviation from mean: {:.3e}\n",
        r.tau, r.tau_sampled_max_dev
    ));

    out.push_str("\ntheorem checks:\n");
    for t in &r.theorems {
        let verdict = match t.verdict {
            Verdict::Verified => "verified",
            Verdict::HypothesisNotMet => "skipped (hypothesis not met)",
            Verdict::Failed => "FAILED",
        };
        out.push_str(&format!("  {}: {}\n", t.id, verdict));
        if let Some(note) = &t.note {
            out.push_str(&format!("    note: {note}\n"));
        }
        for c in &t.checks {
            out.push_str(&format!("  {}\n", fmt_check(c)));
        }
    }
    out.push_str(&format!(
        "\noverall: {}\n",
        if r.pass { "PASS" } else { "FAIL" }
    ));
    out
}

/// JSON with every float rounded to 15 significant digits so repeated runs
/// with the same seed are byte-identical.
pub fn render_json(r: &RunReport) -> String {
    let value = serde_json::to_value(r).expect("report serializes");
    let rounded = round_value(value);
    serde_json::to_string_pretty(&rounded).expect("report serializes")
}

fn round_value(v: serde_json::Value) -> serde_json::Value {
    use serde_json::Value;
    match v {
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if n.is_f64() {
                    return Value::Number(
                        serde_json::Number::from_f64(sig15(f)).unwrap_or(n),
                    );
                }
            }
            Value::Number(n)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => {
            Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect())
        }
        other => other,
    }
}
