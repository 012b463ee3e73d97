//! Line-oriented description of a metric Lie algebra.
//!
//! ```text
//! dim = 4
//! field_sqrt = 3
//! metric = diag(1, 1, 1, -1)          # or one `metric_row i = ...` per row
//! C 2 3 3 = -sqrt(3)                  # C_{23}^3, 1-based, i < j
//! a = 1                               # optional bindings: a, delta, eps1..eps4
//! ```

use std::collections::BTreeMap;
use std::fmt::Write;

use schouten_core::curvature::Metric;
use schouten_core::error::GeometryError;
use schouten_core::lie::LieAlgebra;
use schouten_core::matrix::Matrix;
use schouten_core::scalar::{is_square_free, FieldScalar};

#[derive(Clone, Debug, PartialEq)]
pub enum MetricSpec {
    Diagonal(Vec<FieldScalar>),
    Rows(Vec<Vec<FieldScalar>>),
}

impl MetricSpec {
    pub fn matrix(&self) -> Matrix {
        match self {
            MetricSpec::Diagonal(d) => Matrix::diagonal(d),
            MetricSpec::Rows(rows) => Matrix::from_rows(rows.clone()).expect("rows checked at parse time"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InputDocument {
    pub dim: usize,
    pub field_sqrt: u64,
    pub metric: MetricSpec,
    /// `(i, j, k)` 1-based with `i < j`.
    pub constants: BTreeMap<(usize, usize, usize), FieldScalar>,
    pub bindings: BTreeMap<String, FieldScalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

const BINDINGS: [&str; 6] = ["a", "delta", "eps1", "eps2", "eps3", "eps4"];

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn scalar(text: &str, field: u64, line: usize) -> Result<FieldScalar, ParseError> {
    let v: FieldScalar = text.trim().parse().map_err(|e| err(line, format!("{e}")))?;
    if !v.is_rational() && v.radicand() != field {
        return Err(err(line, format!("`{}` lies outside Q(sqrt({field}))", text.trim())));
    }
    Ok(v)
}

fn list(text: &str, field: u64, line: usize) -> Result<Vec<FieldScalar>, ParseError> {
    text.split(',').map(|t| scalar(t, field, line)).collect()
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        // keys are resolved before values so that `field_sqrt` may follow
        // the entries that use it
        let mut entries: Vec<(usize, String, String)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(err(n + 1, format!("expected `key = value`, found `{line}`")));
            };
            let key = key.split_whitespace().collect::<Vec<_>>().join(" ");
            entries.push((n + 1, key, value.trim().to_string()));
        }

        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        for (n, key, _) in &entries {
            if let Some(first) = seen.insert(key.clone(), *n) {
                let what = if key.starts_with("C ") { "duplicate assignment" } else { "duplicate key" };
                return Err(err(*n, format!("{what} `{key}` (first on line {first})")));
            }
        }

        let lookup = |k: &str| entries.iter().find(|(_, key, _)| key == k);
        let dim = match lookup("dim") {
            Some((n, _, v)) => match v.parse::<usize>() {
                Ok(d) if d >= 2 => d,
                _ => return Err(err(*n, format!("dim must be an integer >= 2, got `{v}`"))),
            },
            None => 4,
        };
        let field_sqrt = match lookup("field_sqrt") {
            Some((n, _, v)) => match v.parse::<u64>() {
                Ok(d) if d >= 1 && is_square_free(d) => d,
                _ => return Err(err(*n, format!("field_sqrt must be a square-free positive integer, got `{v}`"))),
            },
            None => 1,
        };

        let mut metric = None;
        let mut rows: BTreeMap<usize, Vec<FieldScalar>> = BTreeMap::new();
        let mut constants = BTreeMap::new();
        let mut bindings = BTreeMap::new();
        for (n, key, value) in &entries {
            let n = *n;
            let words: Vec<&str> = key.split(' ').collect();
            match words.as_slice() {
                ["dim"] | ["field_sqrt"] => {}
                ["metric"] => {
                    let inner = value
                        .strip_prefix("diag(")
                        .and_then(|v| v.strip_suffix(')'))
                        .ok_or_else(|| err(n, "metric must be `diag(...)`; use metric_row lines for a full matrix"))?;
                    let d = list(inner, field_sqrt, n)?;
                    if d.len() != dim {
                        return Err(err(n, format!("diag has {} entries, dim is {dim}", d.len())));
                    }
                    metric = Some(MetricSpec::Diagonal(d));
                }
                ["metric_row", i] => {
                    let i: usize = i.parse().map_err(|_| err(n, format!("bad row index `{i}`")))?;
                    if i == 0 || i > dim {
                        return Err(err(n, format!("row index {i} out of range 1..={dim}")));
                    }
                    let r = list(value, field_sqrt, n)?;
                    if r.len() != dim {
                        return Err(err(n, format!("row has {} entries, dim is {dim}", r.len())));
                    }
                    rows.insert(i, r);
                }
                ["C", i, j, k] => {
                    let idx = |s: &str| s.parse::<usize>().map_err(|_| err(n, format!("bad index `{s}`")));
                    let (i, j, k) = (idx(i)?, idx(j)?, idx(k)?);
                    if !(1 <= i && i < j && j <= dim && 1 <= k && k <= dim) {
                        return Err(err(n, format!("C {i} {j} {k}: need 1 <= i < j <= {dim} and 1 <= k <= {dim}")));
                    }
                    constants.insert((i, j, k), scalar(value, field_sqrt, n)?);
                }
                [name] if BINDINGS.contains(name) => {
                    bindings.insert(name.to_string(), scalar(value, field_sqrt, n)?);
                }
                _ => return Err(err(n, format!("unknown key `{key}`"))),
            }
        }
        if !rows.is_empty() {
            if metric.is_some() {
                return Err(err(0, "both `metric` and `metric_row` given"));
            }
            if rows.len() != dim {
                return Err(err(0, format!("{} of {dim} metric rows given", rows.len())));
            }
            metric = Some(MetricSpec::Rows(rows.into_values().collect()));
        }
        let metric = metric.ok_or_else(|| err(0, "no metric given"))?;
        Ok(InputDocument { dim, field_sqrt, metric, constants, bindings })
    }

    /// Canonical text form; `parse(render(doc)) == doc`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let join = |v: &[FieldScalar]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        let _ = writeln!(out, "dim = {}", self.dim);
        let _ = writeln!(out, "field_sqrt = {}", self.field_sqrt);
        match &self.metric {
            MetricSpec::Diagonal(d) => {
                let _ = writeln!(out, "metric = diag({})", join(d));
            }
            MetricSpec::Rows(rows) => {
                for (i, r) in rows.iter().enumerate() {
                    let _ = writeln!(out, "metric_row {} = {}", i + 1, join(r));
                }
            }
        }
        for ((i, j, k), v) in &self.constants {
            let _ = writeln!(out, "C {i} {j} {k} = {v}");
        }
        for name in BINDINGS {
            if let Some(v) = self.bindings.get(name) {
                let _ = writeln!(out, "{name} = {v}");
            }
        }
        out
    }

    pub fn algebra(&self) -> Result<LieAlgebra, GeometryError> {
        let entries: Vec<(usize, usize, usize, FieldScalar)> =
            self.constants.iter().map(|(&(i, j, k), v)| (i, j, k, v.clone())).collect();
        LieAlgebra::from_entries(self.dim, &entries)
    }

    pub fn metric(&self) -> Result<Metric, GeometryError> {
        Metric::new(self.metric.matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_spacing() {
        let doc = InputDocument::parse("# family\nfield_sqrt=3\nmetric =diag( 1,1 , 1,-1 )\n  C 2 3 3 =  -sqrt(3) # c\n").unwrap();
        assert_eq!(doc.dim, 4);
        assert_eq!(doc.constants[&(2, 3, 3)], "-sqrt(3)".parse().unwrap());
        assert_eq!(InputDocument::parse(&doc.render()).unwrap(), doc);
    }

    #[test]
    fn rejections() {
        let base = "metric = diag(1, 1, 1, 1)\n";
        for (extra, needle) in [
            ("C 1 2 3 = 1\nC 1 2 3 = 2\n", "duplicate assignment"),
            ("colour = 3\n", "unknown key"),
            ("C 2 1 3 = 1\n", "i < j"),
            ("C 1 2 3 = sqrt(2)\n", "outside"),
            ("metric_row 1 = 1, 0, 0, 0\n", "both"),
            ("dim = 4\ndim = 4\n", "duplicate key"),
        ] {
            let e = InputDocument::parse(&format!("{base}{extra}")).unwrap_err();
            assert!(e.message.contains(needle), "{extra}: {e}");
        }
        assert!(InputDocument::parse("C 1 2 3 = 1\n").unwrap_err().message.contains("no metric"));
    }

    #[test]
    fn full_matrix_metric() {
        let text = "metric_row 2 = 1, 0, 0, 0\nmetric_row 1 = 0, 1, 0, 0\nmetric_row 3 = 0, 0, 1, 0\nmetric_row 4 = 0, 0, 0, 1/2\n";
        let doc = InputDocument::parse(text).unwrap();
        assert_eq!(doc.metric().unwrap().signature(), (3, 1));
        assert_eq!(InputDocument::parse(&doc.render()).unwrap(), doc);
    }
}
