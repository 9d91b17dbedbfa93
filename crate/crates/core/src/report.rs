//! Text and JSON renderings of a [`BrauerReport`].
//!
//! Both are deterministic: labels follow declaration order and residue
//! symbols follow the `symbols:` line.

use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::brauer::{BrauerReport, Dims, Generator};
use crate::f2::F2Matrix;
use crate::model::Configuration;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonDims {
    pub s: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub kernel: usize,
    pub h2nr: usize,
}

impl From<Dims> for JsonDims {
    fn from(d: Dims) -> Self {
        Self {
            s: d.s,
            p: d.p,
            q: d.q,
            r: d.r,
            kernel: d.kernel,
            h2nr: d.h2nr,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonGenerator {
    pub vector: Vec<u8>,
    pub ramification: IndexMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonAssertions {
    pub gc1: String,
    pub gc2: String,
    pub gc3: String,
    pub gc4: String,
}

/// Machine-readable report. Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub dims: JsonDims,
    pub p_labels: Vec<String>,
    pub q_labels: Vec<String>,
    pub r_labels: Vec<String>,
    pub m_pr: Vec<Vec<u8>>,
    pub m_qp: Vec<Vec<u8>>,
    pub m_sp: Vec<Vec<u8>>,
    pub generators: Vec<JsonGenerator>,
    pub assertions: JsonAssertions,
}

fn bit_rows(m: &F2Matrix) -> Vec<Vec<u8>> {
    m.rows().iter().map(|r| r.to_bits()).collect()
}

fn status(ok: bool) -> String {
    if ok { "ok" } else { "fail" }.to_string()
}

fn json_generator(cfg: &Configuration, g: &Generator) -> JsonGenerator {
    JsonGenerator {
        vector: g.vector.to_bits(),
        ramification: g
            .ramification
            .entries()
            .iter()
            .map(|(curve, class)| {
                let symbols = class
                    .ordered_symbols(&cfg.symbols)
                    .into_iter()
                    .map(str::to_string)
                    .collect();
                (curve.clone(), symbols)
            })
            .collect(),
    }
}

pub fn to_json_report(cfg: &Configuration, r: &BrauerReport) -> JsonReport {
    let a = r.assertions;
    JsonReport {
        dims: r.dims().into(),
        p_labels: r.p_labels.clone(),
        q_labels: r.q_labels.clone(),
        r_labels: r.r_labels.clone(),
        m_pr: bit_rows(&r.m_pr),
        m_qp: bit_rows(&r.m_qp),
        m_sp: bit_rows(&r.m_sp),
        generators: r
            .generators
            .iter()
            .map(|g| json_generator(cfg, g))
            .collect(),
        assertions: JsonAssertions {
            gc1: status(a.gc1),
            gc2: status(a.gc2),
            gc3: status(a.gc3),
            gc4: status(a.gc4),
        },
    }
}

/// Compact single-line JSON document.
pub fn render_json(cfg: &Configuration, r: &BrauerReport) -> String {
    serde_json::to_string(&to_json_report(cfg, r)).expect("report serializes")
}

fn write_matrix(out: &mut String, name: &str, m: &F2Matrix) {
    let _ = writeln!(out, "{name} ({}x{}):", m.nrows(), m.ncols());
    if m.nrows() == 0 || m.ncols() == 0 {
        out.push_str("  (empty)\n");
        return;
    }
    for row in m.rows() {
        let bits: Vec<String> = row.to_bits().iter().map(u8::to_string).collect();
        let _ = writeln!(out, "  {}", bits.join(" "));
    }
}

fn labels(ls: &[String]) -> String {
    if ls.is_empty() {
        "(none)".to_string()
    } else {
        ls.join(" ")
    }
}

pub fn render_text(cfg: &Configuration, r: &BrauerReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "cover: {}", r.cover_kind.as_str());
    let _ = writeln!(out, "dims: {}", r.dims());
    let _ = writeln!(out, "S: {}", labels(&r.s.generator_labels));
    let _ = writeln!(out, "P: {}", labels(&r.p_labels));
    let _ = writeln!(out, "Q: {}", labels(&r.q_labels));
    let _ = writeln!(out, "R: {}", labels(&r.r_labels));
    write_matrix(&mut out, "m_pr", &r.m_pr);
    write_matrix(&mut out, "m_qp", &r.m_qp);
    write_matrix(&mut out, "m_sp", &r.m_sp);
    let _ = writeln!(out, "kernel_dim: {}", r.kernel_dim);
    let _ = writeln!(out, "h2nr_dim: {}", r.h2nr_dim);
    for (i, g) in r.generators.iter().enumerate() {
        let _ = writeln!(out, "generator {}: {}", i + 1, g.vector);
        if g.ramification.is_empty() {
            out.push_str("  ramification: none\n");
        }
        for (curve, class) in g.ramification.entries() {
            let _ = writeln!(
                out,
                "  ramification {curve}: {}",
                class.render(&cfg.symbols)
            );
        }
    }
    let a = r.assertions;
    let _ = write!(
        out,
        "assertions: gc1 {} gc2 {} gc3 {} gc4 {}",
        status(a.gc1),
        status(a.gc2),
        status(a.gc3),
        status(a.gc4)
    );
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::unramified_brauer;
    use crate::dsl::builtin;
    use crate::model::CoverKind;

    #[test]
    fn hpt_json_dims_prefix() {
        let cfg = builtin("hpt").unwrap();
        let json = render_json(&cfg, &unramified_brauer(&cfg).unwrap());
        assert!(json.starts_with(r#"{"dims":{"s":0,"p":6,"q":3,"r":3,"kernel":1,"h2nr":1}"#));
        assert!(json.ends_with(r#""assertions":{"gc1":"ok","gc2":"ok","gc3":"ok","gc4":"ok"}}"#));
        assert!(json.contains(r#""ramification":{"x_axis":["a"],"y_axis":["b"],"z_axis":["c"]}"#));
    }

    #[test]
    fn cubic_quartic_json_dims() {
        let cfg = builtin("cubic-quartic").unwrap();
        let json = render_json(&cfg, &unramified_brauer(&cfg).unwrap());
        assert!(json.starts_with(r#"{"dims":{"s":0,"p":2,"q":1,"r":0,"kernel":1,"h2nr":1}"#));
    }

    #[test]
    fn empty_configuration() {
        let cfg = Configuration::new(CoverKind::Irreducible);
        let r = unramified_brauer(&cfg).unwrap();
        let json = render_json(&cfg, &r);
        assert_eq!(
            json,
            r#"{"dims":{"s":0,"p":0,"q":0,"r":0,"kernel":0,"h2nr":0},"p_labels":[],"q_labels":[],"r_labels":[],"m_pr":[],"m_qp":[],"m_sp":[],"generators":[],"assertions":{"gc1":"ok","gc2":"ok","gc3":"ok","gc4":"ok"}}"#
        );
        let text = render_text(&cfg, &r);
        assert!(text.contains("h2nr_dim: 0"));
    }

    #[test]
    fn text_lists_generator() {
        let cfg = builtin("hpt").unwrap();
        let text = render_text(&cfg, &unramified_brauer(&cfg).unwrap());
        assert!(text.contains("kernel_dim: 1\nh2nr_dim: 1\n"));
        assert!(text.contains("  ramification y_axis: b\n"));
        assert!(text.contains("m_pr (3x6):\n  0 0 1 1 1 1\n  1 1 0 0 1 1\n  1 1 1 1 0 0\n"));
    }
}
