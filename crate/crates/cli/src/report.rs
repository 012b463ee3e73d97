//! Analysis reports in text and JSON form.
//!
//! Exact values are normative; every value also carries a decimal
//! approximation rounded to 12 significant digits. Tensor components are
//! listed when nonzero, with 1-based indices in storage order:
//! connection `[i, j, k]` is `Gamma^k_ij`, `riemann` is `R_ijkl`,
//! `schouten_weyl` and `nabla_ricci` are `[i, j, k]` with the derivative
//! direction last, `div_weyl` is `[x, y, z]`.

use std::fmt::Write;

use serde::Serialize;

use schouten_core::classify::Classification;
use schouten_core::curvature::{CurvatureReport, Metric};
use schouten_core::error::GeometryError;
use schouten_core::lie::LieAlgebra;
use schouten_core::matrix::Matrix;
use schouten_core::scalar::FieldScalar;
use schouten_core::segre::segre_type_numeric;
use schouten_core::tensor::Tensor;

pub const SCHEMA: &str = "1";

pub fn approx12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Value {
    pub exact: String,
    pub approx: f64,
}

impl From<&FieldScalar> for Value {
    fn from(x: &FieldScalar) -> Self {
        Value { exact: x.to_string(), approx: approx12(x.to_f64()) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Component {
    pub index: Vec<usize>,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Eigen {
    pub exact: Option<String>,
    pub re: f64,
    pub im: f64,
    pub complex: bool,
    pub multiplicity: usize,
    pub blocks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Segre {
    pub machine: String,
    pub human: String,
    pub admissible: bool,
    pub numeric_check: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PredicateFlags {
    pub einstein: bool,
    pub conformally_flat: bool,
    pub ricci_parallel: bool,
    pub sw_zero: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Identities {
    /// `SW = -(n-3) div W`; absent below dimension 4.
    pub sw_div_weyl: Option<bool>,
    /// `SW = 0` exactly when `nabla r` is symmetric in its last two slots.
    pub sw_zero_iff_symmetric_nabla_ricci: bool,
}

impl Identities {
    pub fn pass(&self) -> bool {
        self.sw_div_weyl.unwrap_or(true) && self.sw_zero_iff_symmetric_nabla_ricci
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilySection {
    pub a: Value,
    pub delta: i8,
    pub eps: [i8; 3],
    pub metric_variant: String,
    pub rho1: Value,
    pub rho2: Value,
    pub alpha: Value,
    pub beta: Value,
    pub ricci_matches: bool,
    pub eigen_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub dim: usize,
    pub field_sqrt: u64,
    pub metric: Vec<Vec<Value>>,
    pub signature: [usize; 2],
    pub structure_constants: Vec<Component>,
    pub connection: Vec<Component>,
    pub riemann: Vec<Component>,
    pub ricci: Vec<Vec<Value>>,
    pub scalar: Value,
    pub schouten: Vec<Vec<Value>>,
    pub weyl: Vec<Component>,
    pub schouten_weyl: Vec<Component>,
    pub div_weyl: Vec<Component>,
    pub nabla_ricci: Vec<Component>,
    pub ricci_operator: Vec<Vec<Value>>,
    pub characteristic_polynomial: String,
    pub eigenvalues: Vec<Eigen>,
    pub segre: Segre,
    pub predicates: PredicateFlags,
    pub identities: Identities,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

fn matrix(m: &Matrix) -> Vec<Vec<Value>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| Value::from(m.get(i, j))).collect()).collect()
}

fn nonzero(t: &Tensor<FieldScalar>) -> Vec<Component> {
    t.indices()
        .filter_map(|idx| {
            let v = t.get(&idx);
            (!v.is_zero()).then(|| Component { index: idx.iter().map(|i| i + 1).collect(), value: v.into() })
        })
        .collect()
}

pub fn numeric_check(c: &Classification, tolerance: f64) -> String {
    match segre_type_numeric(c.ricci_operator.matrix(), tolerance) {
        Ok(t) if t == c.spectrum.segre => "agrees".into(),
        Ok(t) => format!("disagrees ({})", t.machine()),
        Err(GeometryError::Indeterminate(sep)) => format!("indeterminate at tolerance {tolerance:e} (separation {sep:e})"),
        Err(e) => format!("unavailable ({e})"),
    }
}

impl AnalysisReport {
    pub fn build(
        alg: &LieAlgebra,
        g: &Metric,
        field_sqrt: u64,
        rep: &CurvatureReport,
        c: &Classification,
        tolerance: f64,
    ) -> Self {
        let (pos, neg) = g.signature();
        let structure_constants = alg
            .constants()
            .nonzero()
            .into_iter()
            .map(|((i, j, k), v)| Component { index: vec![i + 1, j + 1, k + 1], value: (&v).into() })
            .collect();
        let eigenvalues = c
            .spectrum
            .groups
            .iter()
            .map(|grp| {
                let (re, im) = grp.value.approx();
                Eigen {
                    exact: grp.value.exact_string(),
                    re: approx12(re),
                    im: approx12(im),
                    complex: grp.value.is_complex(),
                    multiplicity: grp.multiplicity,
                    blocks: grp.blocks.clone(),
                }
            })
            .collect();
        let p = c.predicates;
        AnalysisReport {
            schema: SCHEMA,
            dim: g.dim(),
            field_sqrt,
            metric: matrix(g.matrix()),
            signature: [pos, neg],
            structure_constants,
            connection: nonzero(&rep.gamma),
            riemann: nonzero(&rep.riemann),
            ricci: matrix(&rep.ricci),
            scalar: (&rep.scalar).into(),
            schouten: matrix(&rep.schouten),
            weyl: nonzero(&rep.weyl),
            schouten_weyl: nonzero(&rep.schouten_weyl),
            div_weyl: nonzero(&rep.div_weyl),
            nabla_ricci: nonzero(&rep.nabla_ricci),
            ricci_operator: matrix(c.ricci_operator.matrix()),
            characteristic_polynomial: c.spectrum.char_poly.to_string(),
            eigenvalues,
            segre: Segre {
                machine: c.spectrum.segre.machine(),
                human: c.spectrum.segre.human(),
                admissible: c.admissible,
                numeric_check: numeric_check(c, tolerance),
            },
            predicates: PredicateFlags {
                einstein: p.einstein,
                conformally_flat: p.conformally_flat,
                ricci_parallel: p.ricci_parallel,
                sw_zero: p.sw_zero,
            },
            identities: Identities {
                sw_div_weyl: rep.identity_holds().ok(),
                sw_zero_iff_symmetric_nabla_ricci: rep.schouten_weyl.is_zero() == rep.eq1_holds(),
            },
            family: None,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut o = String::new();
        let field = if self.field_sqrt == 1 { "Q".to_string() } else { format!("Q(sqrt({}))", self.field_sqrt) };
        let _ = writeln!(o, "dimension {} over {field}, metric signature ({}, {})", self.dim, self.signature[0], self.signature[1]);
        section_matrix(&mut o, "metric", &self.metric);
        section_list(&mut o, "structure constants C_ij^k", "C", &self.structure_constants);
        section_list(&mut o, "connection Gamma^k_ij", "Gamma", &self.connection);
        section_list(&mut o, "riemann R_ijkl", "R", &self.riemann);
        section_matrix(&mut o, "ricci", &self.ricci);
        let _ = writeln!(o, "scalar curvature: {}", show(&self.scalar));
        section_matrix(&mut o, "schouten A", &self.schouten);
        section_list(&mut o, "weyl W_ijkl", "W", &self.weyl);
        section_list(&mut o, "schouten-weyl SW_ijk", "SW", &self.schouten_weyl);
        section_list(&mut o, "div W", "divW", &self.div_weyl);
        section_list(&mut o, "nabla r (i, j, direction)", "Dr", &self.nabla_ricci);
        section_matrix(&mut o, "ricci operator", &self.ricci_operator);
        let _ = writeln!(o, "characteristic polynomial: {}", self.characteristic_polynomial);
        let _ = writeln!(o, "eigenvalues:");
        for e in &self.eigenvalues {
            let exact = e.exact.clone().unwrap_or_else(|| "(no exact form)".into());
            let approx = if e.complex { format!("{} +- {}i", e.re, e.im) } else { format!("{}", e.re) };
            let _ = writeln!(o, "  {exact} ~ {approx}, multiplicity {}, blocks {:?}", e.multiplicity, e.blocks);
        }
        let _ = writeln!(
            o,
            "segre type: {} {} (admissible: {}, numeric check: {})",
            self.segre.machine,
            self.segre.human,
            yes(self.segre.admissible),
            self.segre.numeric_check
        );
        let p = &self.predicates;
        let _ = writeln!(
            o,
            "einstein: {}\nconformally flat: {}\nricci parallel: {}\nschouten-weyl zero: {}",
            yes(p.einstein),
            yes(p.conformally_flat),
            yes(p.ricci_parallel),
            yes(p.sw_zero)
        );
        o.push_str(&identity_lines(&self.identities));
        if let Some(f) = &self.family {
            let _ = writeln!(o, "family: a = {}, delta = {}, eps = {:?}, metric {}", f.a.exact, f.delta, f.eps, f.metric_variant);
            for (name, v) in [("rho1", &f.rho1), ("rho2", &f.rho2), ("alpha", &f.alpha), ("beta", &f.beta)] {
                let _ = writeln!(o, "  {name} = {}", show(v));
            }
            let _ = writeln!(o, "  ricci matches canonical form: {}", yes(f.ricci_matches));
            let _ = writeln!(o, "  eigenvalues match: {}", yes(f.eigen_matches));
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(o, "time: {ms:.3} ms");
        }
        o
    }
}

pub fn identity_lines(id: &Identities) -> String {
    let first = match id.sw_div_weyl {
        Some(b) => pass(b).to_string(),
        None => "not applicable below dimension 4".into(),
    };
    format!(
        "SW = -(n-3) div W: {first}\nSW = 0 iff nabla r symmetric: {}\n",
        pass(id.sw_zero_iff_symmetric_nabla_ricci)
    )
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn show(v: &Value) -> String {
    if v.exact.contains("sqrt") || v.exact.contains('/') {
        format!("{} ~ {}", v.exact, v.approx)
    } else {
        v.exact.clone()
    }
}

fn section_matrix(o: &mut String, title: &str, m: &[Vec<Value>]) {
    let _ = writeln!(o, "{title}:");
    for row in m {
        let cells: Vec<String> = row.iter().map(|v| v.exact.clone()).collect();
        let _ = writeln!(o, "  [{}]", cells.join(", "));
    }
}

fn section_list(o: &mut String, title: &str, sym: &str, items: &[Component]) {
    if items.is_empty() {
        let _ = writeln!(o, "{title}: all zero");
        return;
    }
    let _ = writeln!(o, "{title}: {} nonzero", items.len());
    for c in items {
        let idx: Vec<String> = c.index.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(o, "  {sym}[{}] = {}", idx.join(","), show(&c.value));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(approx12(3f64.sqrt()), 1.73205080757);
        assert_eq!(approx12(-2.0), -2.0);
        assert_eq!(approx12(1.0 / 3.0), 0.333333333333);
    }
}
