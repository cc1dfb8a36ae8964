//! Definition files: a sectioned key-value text format describing a chart,
//! a metric, and optionally an almost paracontact structure plus extra
//! (0,2) tensors to feed the parallel-tensor check.
//!
//! Format (UTF-8, `#` starts a comment, blank lines ignored):
//!
//! ```text
//! [chart]
//! name = example
//! coords = x y z
//! range x = -1 1
//! range y = -1 1
//! range z = -1.5 -0.5
//!
//! [metric]                # lower triangle only, 1-based indices
//! g 1 1 = exp(2*z)
//! g 2 2 = -exp(2*z)
//! g 3 3 = 1
//!
//! [phi]                   # sparse (1,1) entries: phi i j = expr
//! phi 1 2 = 1
//! phi 2 1 = 1
//!
//! [xi]                    # xi i = expr
//! xi 3 = 1
//!
//! [eta]                   # eta i = expr
//! eta 3 = 1
//!
//! [tensor.my_field]       # optional named (0,2) tensors: t i j = expr
//! t 3 3 = 1
//!
//! [options]               # optional defaults, overridable on the CLI
//! samples = 32
//! seed = 0
//! ```
//!
//! The metric block uses only the lower triangle (i ≥ j); diagonal entries
//! are mandatory, omitted off-diagonal entries default to zero, and upper
//! triangle entries are rejected so asymmetry cannot slip in silently.

use crate::chart::Chart;
use crate::expr::{parse, Expr, ParseError};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: expression error: {source}")]
    Expression {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("missing required [{0}] section")]
    MissingSection(&'static str),
    #[error("line {line}: upper-triangle metric entry g {i} {j}; declare only i >= j")]
    UpperTriangle { line: usize, i: usize, j: usize },
    #[error("diagonal metric entry g {i} {j} is required")]
    MissingMetricEntry { i: usize, j: usize },
    #[error("line {line}: duplicate entry {key}")]
    Duplicate { line: usize, key: String },
    #[error("chart error: {0}")]
    Chart(#[from] crate::chart::ChartError),
}

/// A parsed, chart-validated manifold definition. All expressions are parsed
/// against the declared chart; `phi`/`xi`/`eta` are either all present or all
/// absent.
#[derive(Debug, Clone)]
pub struct ManifoldDefinition {
    pub name: String,
    pub chart: Chart,
    /// lower triangle, row-major: (i, j) with i >= j, 0-based
    pub metric: Vec<Vec<Expr>>,
    pub phi: Option<Vec<Vec<Expr>>>,
    pub xi: Option<Vec<Expr>>,
    pub eta: Option<Vec<Expr>>,
    /// named extra (0,2) tensors, dense row-major
    pub tensors: BTreeMap<String, Vec<Vec<Expr>>>,
}

impl ManifoldDefinition {
    pub fn has_structure(&self) -> bool {
        self.phi.is_some()
    }

    /// Symmetric completion of the stored lower triangle.
    pub fn metric_component(&self, i: usize, j: usize) -> &Expr {
        if i >= j {
            &self.metric[i][j]
        } else {
            &self.metric[j][i]
        }
    }
}

pub fn load(path: impl AsRef<Path>) -> Result<ManifoldDefinition, ManifestError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ManifestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_str(&text)
}

struct RawSection {
    /// (line number, key tokens before '=', value text)
    entries: Vec<(usize, Vec<String>, String)>,
}

pub fn parse_str(text: &str) -> Result<ManifoldDefinition, ManifestError> {
    let mut sections: Vec<(String, RawSection)> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(ManifestError::Syntax {
                    line: line_no,
                    message: "unterminated section header".into(),
                });
            };
            let name = name.trim().to_string();
            if name.is_empty() {
                return Err(ManifestError::Syntax {
                    line: line_no,
                    message: "empty section name".into(),
                });
            }
            if sections.iter().any(|(n, _)| *n == name) {
                return Err(ManifestError::Duplicate {
                    line: line_no,
                    key: format!("[{name}]"),
                });
            }
            sections.push((name, RawSection { entries: Vec::new() }));
            continue;
        }
        let Some((key_part, value)) = line.split_once('=') else {
            return Err(ManifestError::Syntax {
                line: line_no,
                message: format!("expected `key = value`, got {line:?}"),
            });
        };
        let keys: Vec<String> = key_part.split_whitespace().map(str::to_string).collect();
        if keys.is_empty() {
            return Err(ManifestError::Syntax {
                line: line_no,
                message: "empty key before '='".into(),
            });
        }
        let Some((_, section)) = sections.last_mut() else {
            return Err(ManifestError::Syntax {
                line: line_no,
                message: "entry before any section header".into(),
            });
        };
        section
            .entries
            .push((line_no, keys, value.trim().to_string()));
    }

    let find = |name: &str| sections.iter().find(|(n, _)| n == name).map(|(_, s)| s);

    // [chart]
    let chart_section = find("chart").ok_or(ManifestError::MissingSection("chart"))?;
    let mut name = String::new();
    let mut coords: Vec<String> = Vec::new();
    let mut ranges: BTreeMap<String, (f64, f64, usize)> = BTreeMap::new();
    for (line, keys, value) in &chart_section.entries {
        match keys[0].as_str() {
            "name" if keys.len() == 1 => name = value.clone(),
            "coords" if keys.len() == 1 => {
                coords = value.split_whitespace().map(str::to_string).collect();
            }
            "range" if keys.len() == 2 => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(ManifestError::Syntax {
                        line: *line,
                        message: format!("range needs two bounds, got {value:?}"),
                    });
                }
                let lo: f64 = parts[0].parse().map_err(|_| ManifestError::Syntax {
                    line: *line,
                    message: format!("bad lower bound {:?}", parts[0]),
                })?;
                let hi: f64 = parts[1].parse().map_err(|_| ManifestError::Syntax {
                    line: *line,
                    message: format!("bad upper bound {:?}", parts[1]),
                })?;
                if ranges.insert(keys[1].clone(), (lo, hi, *line)).is_some() {
                    return Err(ManifestError::Duplicate {
                        line: *line,
                        key: format!("range {}", keys[1]),
                    });
                }
            }
            _ => {
                return Err(ManifestError::Syntax {
                    line: *line,
                    message: format!("unknown [chart] entry {:?}", keys.join(" ")),
                })
            }
        }
    }
    if coords.is_empty() {
        return Err(ManifestError::Syntax {
            line: 1,
            message: "[chart] must declare coords".into(),
        });
    }
    let mut intervals = Vec::with_capacity(coords.len());
    for c in &coords {
        let Some(&(lo, hi, _)) = ranges.get(c) else {
            return Err(ManifestError::Syntax {
                line: 1,
                message: format!("[chart] missing range for coordinate {c:?}"),
            });
        };
        intervals.push((lo, hi));
    }
    for extra in ranges.keys() {
        if !coords.contains(extra) {
            let line = ranges[extra].2;
            return Err(ManifestError::Syntax {
                line,
                message: format!("range for undeclared coordinate {extra:?}"),
            });
        }
    }

    // [options]
    let mut samples = None;
    let mut seed = None;
    if let Some(opts) = find("options") {
        for (line, keys, value) in &opts.entries {
            match keys[0].as_str() {
                "samples" if keys.len() == 1 => {
                    samples = Some(value.parse::<usize>().map_err(|_| ManifestError::Syntax {
                        line: *line,
                        message: format!("bad samples value {value:?}"),
                    })?);
                }
                "seed" if keys.len() == 1 => {
                    seed = Some(value.parse::<u64>().map_err(|_| ManifestError::Syntax {
                        line: *line,
                        message: format!("bad seed value {value:?}"),
                    })?);
                }
                _ => {
                    return Err(ManifestError::Syntax {
                        line: *line,
                        message: format!("unknown [options] entry {:?}", keys.join(" ")),
                    })
                }
            }
        }
    }

    let coord_refs: Vec<&str> = coords.iter().map(String::as_str).collect();
    let mut chart = Chart::new(&coord_refs, &intervals)?;
    if let Some(n) = samples {
        chart = chart.with_sample_count(n);
    }
    if let Some(s) = seed {
        chart = chart.with_seed(s);
    }
    let dim = chart.dim();

    let parse_at = |line: usize, text: &str| -> Result<Expr, ManifestError> {
        parse(text, &chart).map_err(|source| ManifestError::Expression { line, source })
    };
    let index_at = |line: usize, token: &str| -> Result<usize, ManifestError> {
        let i: usize = token.parse().map_err(|_| ManifestError::Syntax {
            line,
            message: format!("bad index {token:?}"),
        })?;
        if i < 1 || i > dim {
            return Err(ManifestError::Syntax {
                line,
                message: format!("index {i} out of range 1..={dim}"),
            });
        }
        Ok(i - 1)
    };

    // [metric]
    let metric_section = find("metric").ok_or(ManifestError::MissingSection("metric"))?;
    let mut metric: Vec<Vec<Option<Expr>>> = (0..dim).map(|i| vec![None; i + 1]).collect();
    for (line, keys, value) in &metric_section.entries {
        if keys.len() != 3 || keys[0] != "g" {
            return Err(ManifestError::Syntax {
                line: *line,
                message: format!("[metric] entries look like `g i j = expr`, got {:?}", keys.join(" ")),
            });
        }
        let i = index_at(*line, &keys[1])?;
        let j = index_at(*line, &keys[2])?;
        if i < j {
            return Err(ManifestError::UpperTriangle {
                line: *line,
                i: i + 1,
                j: j + 1,
            });
        }
        if metric[i][j].is_some() {
            return Err(ManifestError::Duplicate {
                line: *line,
                key: format!("g {} {}", i + 1, j + 1),
            });
        }
        metric[i][j] = Some(parse_at(*line, value)?);
    }
    // diagonal entries are mandatory; omitted off-diagonal entries are zero
    let mut metric_done = Vec::with_capacity(dim);
    for (i, row) in metric.into_iter().enumerate() {
        let mut out = Vec::with_capacity(i + 1);
        for (j, entry) in row.into_iter().enumerate() {
            match entry {
                Some(e) => out.push(e),
                None if i != j => out.push(Expr::zero()),
                None => {
                    return Err(ManifestError::MissingMetricEntry { i: i + 1, j: j + 1 });
                }
            }
        }
        metric_done.push(out);
    }

    // structure blocks (all-or-nothing)
    let phi_section = find("phi");
    let xi_section = find("xi");
    let eta_section = find("eta");
    let present = [phi_section.is_some(), xi_section.is_some(), eta_section.is_some()];
    if present.iter().any(|&p| p) && !present.iter().all(|&p| p) {
        return Err(ManifestError::Syntax {
            line: 1,
            message: "[phi], [xi], [eta] must be given together or omitted together".into(),
        });
    }

    let mut phi = None;
    let mut xi = None;
    let mut eta = None;
    if let (Some(ps), Some(xs), Some(es)) = (phi_section, xi_section, eta_section) {
        let mut m = vec![vec![Expr::zero(); dim]; dim];
        for (line, keys, value) in &ps.entries {
            if keys.len() != 3 || keys[0] != "phi" {
                return Err(ManifestError::Syntax {
                    line: *line,
                    message: format!("[phi] entries look like `phi i j = expr`, got {:?}", keys.join(" ")),
                });
            }
            let i = index_at(*line, &keys[1])?;
            let j = index_at(*line, &keys[2])?;
            m[i][j] = parse_at(*line, value)?;
        }
        phi = Some(m);

        let mut v = vec![Expr::zero(); dim];
        for (line, keys, value) in &xs.entries {
            if keys.len() != 2 || keys[0] != "xi" {
                return Err(ManifestError::Syntax {
                    line: *line,
                    message: format!("[xi] entries look like `xi i = expr`, got {:?}", keys.join(" ")),
                });
            }
            v[index_at(*line, &keys[1])?] = parse_at(*line, value)?;
        }
        xi = Some(v);

        let mut w = vec![Expr::zero(); dim];
        for (line, keys, value) in &es.entries {
            if keys.len() != 2 || keys[0] != "eta" {
                return Err(ManifestError::Syntax {
                    line: *line,
                    message: format!("[eta] entries look like `eta i = expr`, got {:?}", keys.join(" ")),
                });
            }
            w[index_at(*line, &keys[1])?] = parse_at(*line, value)?;
        }
        eta = Some(w);
    }

    // [tensor.<name>]
    let mut tensors = BTreeMap::new();
    for (section_name, section) in &sections {
        if let Some(tname) = section_name.strip_prefix("tensor.") {
            let mut m = vec![vec![Expr::zero(); dim]; dim];
            for (line, keys, value) in &section.entries {
                if keys.len() != 3 || keys[0] != "t" {
                    return Err(ManifestError::Syntax {
                        line: *line,
                        message: format!(
                            "[tensor.*] entries look like `t i j = expr`, got {:?}",
                            keys.join(" ")
                        ),
                    });
                }
                let i = index_at(*line, &keys[1])?;
                let j = index_at(*line, &keys[2])?;
                m[i][j] = parse_at(*line, value)?;
            }
            tensors.insert(tname.to_string(), m);
        } else if !matches!(
            section_name.as_str(),
            "chart" | "metric" | "phi" | "xi" | "eta" | "options"
        ) {
            return Err(ManifestError::Syntax {
                line: 1,
                message: format!("unknown section [{section_name}]"),
            });
        }
    }

    Ok(ManifoldDefinition {
        name: if name.is_empty() { "unnamed".into() } else { name },
        chart,
        metric: metric_done,
        phi,
        xi,
        eta,
        tensors,
    })
}

/// Serializes a definition back into the file format. `parse_str(write(d))`
/// reproduces `d` structurally.
pub fn write(d: &ManifoldDefinition) -> String {
    let dim = d.chart.dim();
    let mut out = String::new();
    let _ = writeln!(out, "[chart]");
    let _ = writeln!(out, "name = {}", d.name);
    let _ = writeln!(out, "coords = {}", d.chart.names().join(" "));
    for (i, (lo, hi)) in d.chart.intervals().iter().enumerate() {
        let _ = writeln!(out, "range {} = {} {}", d.chart.name(i), lo, hi);
    }
    let _ = writeln!(out, "\n[metric]");
    for i in 0..dim {
        for j in 0..=i {
            let _ = writeln!(out, "g {} {} = {}", i + 1, j + 1, d.metric[i][j].render(&d.chart));
        }
    }
    if let (Some(phi), Some(xi), Some(eta)) = (&d.phi, &d.xi, &d.eta) {
        let _ = writeln!(out, "\n[phi]");
        for i in 0..dim {
            for j in 0..dim {
                if !is_zero(&phi[i][j]) {
                    let _ = writeln!(out, "phi {} {} = {}", i + 1, j + 1, phi[i][j].render(&d.chart));
                }
            }
        }
        let _ = writeln!(out, "\n[xi]");
        for (i, e) in xi.iter().enumerate() {
            if !is_zero(e) {
                let _ = writeln!(out, "xi {} = {}", i + 1, e.render(&d.chart));
            }
        }
        let _ = writeln!(out, "\n[eta]");
        for (i, e) in eta.iter().enumerate() {
            if !is_zero(e) {
                let _ = writeln!(out, "eta {} = {}", i + 1, e.render(&d.chart));
            }
        }
    }
    for (name, t) in &d.tensors {
        let _ = writeln!(out, "\n[tensor.{name}]");
        for i in 0..dim {
            for j in 0..dim {
                if !is_zero(&t[i][j]) {
                    let _ = writeln!(out, "t {} {} = {}", i + 1, j + 1, t[i][j].render(&d.chart));
                }
            }
        }
    }
    let _ = writeln!(out, "\n[options]");
    let _ = writeln!(out, "samples = {}", d.chart.sample_count());
    let _ = writeln!(out, "seed = {}", d.chart.seed());
    out
}

fn is_zero(e: &Expr) -> bool {
    matches!(e, Expr::Const(n) if n.is_zero())
}

pub const EXAMPLE_PARA_KENMOTSU: &str = "\
# Warped-product 3-manifold with unit structure rate.
# Metric diag(exp(2z), -exp(2z), 1) on a box chart; phi swaps the first two
# coordinate directions, xi is the third coordinate field, eta its dual.

[chart]
name = para_kenmotsu_s5
coords = x y z
range x = -1 1
range y = -1 1
range z = -1.5 -0.5

[metric]
g 1 1 = exp(2*z)
g 2 2 = -exp(2*z)
g 3 3 = 1

[phi]
phi 1 2 = 1
phi 2 1 = 1

[xi]
xi 3 = 1

[eta]
eta 3 = 1

[tensor.eta_eta]
t 3 3 = 1
";

pub const EXAMPLE_PARACOSYMPLECTIC: &str = "\
# Flat structure: identity-free curvature, alpha = beta = 0.

[chart]
name = paracosymplectic_flat
coords = x y z
range x = -1 1
range y = -1 1
range z = -1 1

[metric]
g 1 1 = 1
g 2 2 = -1
g 3 3 = 1

[phi]
phi 1 2 = 1
phi 2 1 = 1

[xi]
xi 3 = 1

[eta]
eta 3 = 1
";

pub const EXAMPLE_PARA_KENMOTSU_STEEP: &str = "\
# Same construction with doubled rate: metric diag(exp(4z), -exp(4z), 1),
# giving alpha = 2 and scalar curvature 24.

[chart]
name = para_kenmotsu_alpha2
coords = x y z
range x = -1 1
range y = -1 1
range z = -1.5 -0.5

[metric]
g 1 1 = exp(4*z)
g 2 2 = -exp(4*z)
g 3 3 = 1

[phi]
phi 1 2 = 1
phi 2 1 = 1

[xi]
xi 3 = 1

[eta]
eta 3 = 1
";

/// Bundled example definitions by name.
pub fn bundled(name: &str) -> Option<&'static str> {
    match name {
        "para_kenmotsu_s5" => Some(EXAMPLE_PARA_KENMOTSU),
        "paracosymplectic_flat" => Some(EXAMPLE_PARACOSYMPLECTIC),
        "para_kenmotsu_alpha2" => Some(EXAMPLE_PARA_KENMOTSU_STEEP),
        _ => None,
    }
}

pub fn bundled_names() -> &'static [&'static str] {
    &["para_kenmotsu_s5", "paracosymplectic_flat", "para_kenmotsu_alpha2"]
}

pub use builders::definition_to_fields;

mod builders {
    use super::*;
    use crate::fields::{GeomError, MetricField, TensorField, VectorField};
    use crate::paracontact::ParacontactStructure;

    /// Instantiated fields from a definition: the metric, the optional
    /// structure, and the named extra tensors.
    pub struct InstantiatedDefinition {
        pub metric: MetricField,
        pub structure: Option<ParacontactStructure>,
        pub tensors: Vec<(String, TensorField)>,
    }

    pub fn definition_to_fields(
        d: &ManifoldDefinition,
    ) -> Result<InstantiatedDefinition, GeomError> {
        let dim = d.chart.dim();
        let mut full = vec![vec![Expr::zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                full[i][j] = d.metric_component(i, j).clone();
            }
        }
        let metric = MetricField::new(d.chart.clone(), full)?;

        let structure = if let (Some(phi), Some(xi), Some(eta)) = (&d.phi, &d.xi, &d.eta) {
            let phi = TensorField::one_one(d.chart.clone(), phi.clone())?;
            let xi = VectorField::new(d.chart.clone(), xi.clone())?;
            let eta = TensorField::one_form(d.chart.clone(), eta.clone())?;
            Some(ParacontactStructure::new(phi, xi, eta, metric.clone())?)
        } else {
            None
        };

        let mut tensors = Vec::new();
        for (name, comps) in &d.tensors {
            tensors.push((
                name.clone(),
                TensorField::zero_two(d.chart.clone(), comps.clone())?,
            ));
        }
        Ok(InstantiatedDefinition {
            metric,
            structure,
            tensors,
        })
    }
}

pub use builders::InstantiatedDefinition;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_examples_parse_and_instantiate() {
        for name in bundled_names() {
            let text = bundled(name).unwrap();
            let d = parse_str(text).unwrap();
            assert_eq!(&d.name, name);
            assert_eq!(d.chart.dim(), 3);
            let inst = definition_to_fields(&d).unwrap();
            assert!(inst.structure.is_some());
        }
    }

    #[test]
    fn golden_example_contents() {
        let d = parse_str(EXAMPLE_PARA_KENMOTSU).unwrap();
        assert_eq!(d.metric_component(0, 0).render(&d.chart), "exp(2 * z)");
        assert_eq!(d.metric_component(2, 2).render(&d.chart), "1");
        assert_eq!(d.metric_component(0, 1).render(&d.chart), "0");
        let phi = d.phi.as_ref().unwrap();
        assert_eq!(phi[0][1].render(&d.chart), "1");
        assert_eq!(phi[2][2].render(&d.chart), "0");
        assert_eq!(d.tensors.len(), 1);
        assert!(d.tensors.contains_key("eta_eta"));
    }

    #[test]
    fn missing_metric_section_is_an_error() {
        let text = "[chart]\ncoords = x\nrange x = 0 1\n";
        match parse_str(text) {
            Err(ManifestError::MissingSection("metric")) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_expression_reports_line() {
        let text = "[chart]\ncoords = x\nrange x = 0 1\n[metric]\ng 1 1 = x^w\n";
        match parse_str(text) {
            Err(ManifestError::Expression { line: 5, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn upper_triangle_is_rejected() {
        let text = "\
[chart]
coords = x y
range x = 0 1
range y = 0 1
[metric]
g 1 1 = 1
g 1 2 = 0
g 2 2 = -1
";
        match parse_str(text) {
            Err(ManifestError::UpperTriangle { line: 7, i: 1, j: 2 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_diagonal_entry_is_rejected() {
        let text = "\
[chart]
coords = x y
range x = 0 1
range y = 0 1
[metric]
g 1 1 = 1
g 2 1 = 0
";
        match parse_str(text) {
            Err(ManifestError::MissingMetricEntry { i: 2, j: 2 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn partial_structure_is_rejected() {
        let text = "\
[chart]
coords = x
range x = 0 1
[metric]
g 1 1 = 1
[xi]
xi 1 = 1
";
        assert!(matches!(parse_str(text), Err(ManifestError::Syntax { .. })));
    }

    #[test]
    fn duplicate_entries_are_rejected() {
        let text = "\
[chart]
coords = x
range x = 0 1
[metric]
g 1 1 = 1
g 1 1 = 2
";
        assert!(matches!(parse_str(text), Err(ManifestError::Duplicate { .. })));
    }

    #[test]
    fn options_override_chart_defaults() {
        let text = "\
[chart]
coords = x
range x = 0 1
[metric]
g 1 1 = 1
[options]
samples = 7
seed = 99
";
        let d = parse_str(text).unwrap();
        assert_eq!(d.chart.sample_count(), 7);
        assert_eq!(d.chart.seed(), 99);
    }

    #[test]
    fn write_round_trips_structurally() {
        for name in bundled_names() {
            let d = parse_str(bundled(name).unwrap()).unwrap();
            let d2 = parse_str(&write(&d)).unwrap();
            assert_eq!(d.name, d2.name);
            assert_eq!(d.chart.names(), d2.chart.names());
            assert_eq!(d.chart.intervals(), d2.chart.intervals());
            let dim = d.chart.dim();
            for i in 0..dim {
                for j in 0..dim {
                    assert_eq!(
                        d.metric_component(i, j).render(&d.chart),
                        d2.metric_component(i, j).render(&d.chart)
                    );
                }
            }
            assert_eq!(d.phi.is_some(), d2.phi.is_some());
            if let (Some(a), Some(b)) = (&d.phi, &d2.phi) {
                for i in 0..dim {
                    for j in 0..dim {
                        assert_eq!(a[i][j].render(&d.chart), b[i][j].render(&d.chart));
                    }
                }
            }
            assert_eq!(
                d.tensors.keys().collect::<Vec<_>>(),
                d2.tensors.keys().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "\
# leading comment
[chart]  # trailing
coords = x   # names
range x = 0 1

[metric]
g 1 1 = 1  # flat
";
        let d = parse_str(text).unwrap();
        assert_eq!(d.chart.dim(), 1);
    }

    #[test]
    fn unknown_section_is_rejected() {
        let text = "[chart]\ncoords = x\nrange x = 0 1\n[metric]\ng 1 1 = 1\n[bogus]\n";
        assert!(matches!(parse_str(text), Err(ManifestError::Syntax { .. })));
    }

    #[test]
    fn entry_before_section_is_rejected() {
        let text = "coords = x\n";
        match parse_str(text) {
            Err(ManifestError::Syntax { line: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}
