//! JSON document schemas and the command session shared by the CLI binary
//! and the C API.
//!
//! A single self-describing bundle carries the algebra plus named modules
//! and presentations; commands reference objects by handle. All output is
//! deterministic: object keys are sorted, coefficients are rendered through
//! the field, and every enumeration order is canonical.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::{AMat, Algebra, AlgebraSpec, Quiver, Relation};
use crate::decomp::{decompose, set_seed_offset};
use crate::error::{Error, Result};
use crate::field::{Field, FieldDesc, PrimeField, Rationals, DEFAULT_PRIME};
use crate::pres::{e_dim, is_rigid, minimize, Presentation};
use crate::rep::{self, min_presentation, Representation};
use crate::tilting::{
    complete_to_silting, complete_to_tau_tilting, exchange_graph, mutate, silting_to_pair, Caps,
    ExchangeGraph, SiltingObject,
};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BundleDoc {
    pub algebra: AlgebraDoc,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDoc>,
    #[serde(default)]
    pub presentations: BTreeMap<String, PresDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub vertices: usize,
    #[serde(default)]
    pub arrows: Vec<(usize, usize, usize)>,
    #[serde(default)]
    pub relations: Vec<Vec<(String, Vec<usize>)>>,
    pub nilpotency_bound: usize,
    pub field: FieldDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldDoc {
    Prime { prime: u64 },
    Rationals { rationals: bool },
}

impl FieldDoc {
    pub fn desc(&self) -> Result<FieldDesc> {
        match self {
            FieldDoc::Prime { prime } => Ok(FieldDesc::Prime(*prime)),
            FieldDoc::Rationals { rationals: true } => Ok(FieldDesc::Rationals),
            FieldDoc::Rationals { rationals: false } => {
                Err(Error::invalid("field: {\"rationals\": false} is meaningless"))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresDoc {
    pub p1: Vec<usize>,
    pub p0: Vec<usize>,
    pub matrix: Vec<Vec<Vec<(String, usize)>>>,
}

/// Parse a `--field` override: `p` for the default prime, `Q` for the
/// rationals, digits for an explicit prime.
pub fn parse_field_flag(s: &str) -> Result<FieldDesc> {
    match s {
        "p" | "P" => Ok(FieldDesc::Prime(DEFAULT_PRIME)),
        "Q" | "q" | "rationals" => Ok(FieldDesc::Rationals),
        digits => digits
            .parse::<u64>()
            .map(FieldDesc::Prime)
            .map_err(|_| Error::invalid(format!("bad field '{s}', expected p, Q or a prime"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Dot,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "dot" => Ok(OutputFormat::Dot),
            _ => Err(Error::invalid(format!(
                "bad format '{s}', expected text, json or dot"
            ))),
        }
    }
}

pub struct Session<F: Field> {
    algebra: Arc<Algebra<F>>,
    modules: BTreeMap<String, Representation<F>>,
    presentations: BTreeMap<String, Presentation<F>>,
    caps: Caps,
}

impl<F: Field> Session<F> {
    pub fn from_doc(doc: &BundleDoc, field: F, caps: Caps) -> Result<Self> {
        let quiver = Quiver::new(doc.algebra.vertices, doc.algebra.arrows.clone())?;
        let mut relations = Vec::new();
        for rel in &doc.algebra.relations {
            let terms = rel
                .iter()
                .map(|(c, p)| Ok((field.parse(c)?, p.clone())))
                .collect::<Result<Vec<_>>>()?;
            relations.push(Relation { terms });
        }
        let spec = AlgebraSpec::new(quiver, relations, doc.algebra.nilpotency_bound, field);
        let algebra = Algebra::build(spec)?;
        let mut modules = BTreeMap::new();
        for (name, md) in &doc.modules {
            modules.insert(name.clone(), parse_module(&algebra, md)?);
        }
        let mut presentations = BTreeMap::new();
        for (name, pd) in &doc.presentations {
            presentations.insert(name.clone(), parse_pres(&algebra, pd)?);
        }
        Ok(Session {
            algebra,
            modules,
            presentations,
            caps,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    fn module(&self, name: &str) -> Result<&Representation<F>> {
        self.modules
            .get(name)
            .ok_or_else(|| Error::invalid(format!("unknown module handle '{name}'")))
    }

    fn pres(&self, name: &str) -> Result<&Presentation<F>> {
        self.presentations
            .get(name)
            .ok_or_else(|| Error::invalid(format!("unknown presentation handle '{name}'")))
    }
}

pub fn parse_module<F: Field>(
    alg: &Arc<Algebra<F>>,
    doc: &ModuleDoc,
) -> Result<Representation<F>> {
    let f = alg.field();
    let q = alg.quiver();
    if doc.dims.len() != q.vertex_count {
        return Err(Error::invalid("module dims length != vertex count"));
    }
    let mut maps = Vec::new();
    for a in &q.arrows {
        let rows = doc.dims[a.target];
        let cols = doc.dims[a.source];
        let m = match doc.arrows.get(&a.id.to_string()) {
            None => crate::linalg::zeros(f, rows, cols),
            Some(rowdata) => {
                if rowdata.len() != rows || rowdata.iter().any(|r| r.len() != cols) {
                    return Err(Error::invalid(format!(
                        "matrix for arrow {} must be {rows}x{cols}",
                        a.id
                    )));
                }
                let mut m = crate::linalg::zeros(f, rows, cols);
                for (i, r) in rowdata.iter().enumerate() {
                    for (j, s) in r.iter().enumerate() {
                        m.set(i, j, f.parse(s)?);
                    }
                }
                m
            }
        };
        maps.push(m);
    }
    Representation::new(alg.clone(), doc.dims.clone(), maps)
}

pub fn render_module<F: Field>(m: &Representation<F>) -> ModuleDoc {
    let alg = m.algebra();
    let f = alg.field();
    let mut arrows = BTreeMap::new();
    for a in &alg.quiver().arrows {
        let blk = m.arrow_map(a.id);
        if blk.rows == 0 || blk.cols == 0 {
            continue;
        }
        let rows: Vec<Vec<String>> = (0..blk.rows)
            .map(|i| (0..blk.cols).map(|j| f.render(blk.at(i, j))).collect())
            .collect();
        arrows.insert(a.id.to_string(), rows);
    }
    ModuleDoc {
        dims: m.dims().to_vec(),
        arrows,
    }
}

pub fn parse_pres<F: Field>(alg: &Arc<Algebra<F>>, doc: &PresDoc) -> Result<Presentation<F>> {
    let f = alg.field();
    let n = alg.vertex_count();
    for &v in doc.p1.iter().chain(&doc.p0) {
        if v >= n {
            return Err(Error::invalid(format!("vertex {v} out of range")));
        }
    }
    if doc.matrix.len() != doc.p0.len()
        || doc.matrix.iter().any(|row| row.len() != doc.p1.len())
    {
        return Err(Error::invalid(
            "presentation matrix must be |p0| rows by |p1| columns",
        ));
    }
    let mut mat = AMat::zero(alg, doc.p0.clone(), doc.p1.clone());
    for (i, row) in doc.matrix.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            let mut e = alg.zero_elem();
            for (coeff, idx) in entry {
                if *idx >= alg.dim() {
                    return Err(Error::invalid(format!("basis index {idx} out of range")));
                }
                e[*idx] = f.add(&e[*idx], &f.parse(coeff)?);
            }
            mat.set(i, j, e);
        }
    }
    Presentation::from_parts(alg.clone(), doc.p1.clone(), doc.p0.clone(), mat)
}

pub fn render_pres<F: Field>(p: &Presentation<F>) -> PresDoc {
    let alg = p.algebra();
    let f = alg.field();
    let matrix = (0..p.p0_vertices().len())
        .map(|i| {
            (0..p.p1_vertices().len())
                .map(|j| {
                    p.matrix()
                        .entry(i, j)
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !f.is_zero(c))
                        .map(|(b, c)| (f.render(c), b))
                        .collect()
                })
                .collect()
        })
        .collect();
    PresDoc {
        p1: p.p1_vertices().to_vec(),
        p0: p.p0_vertices().to_vec(),
        matrix,
    }
}

fn pres_json<F: Field>(p: &Presentation<F>) -> serde_json::Value {
    serde_json::to_value(render_pres(p)).expect("presentation serializes")
}

fn module_json<F: Field>(m: &Representation<F>) -> serde_json::Value {
    serde_json::to_value(render_module(m)).expect("module serializes")
}

fn silting_json<F: Field>(t: &SiltingObject<F>) -> serde_json::Value {
    json!({
        "g_matrix": t.g_matrix(),
        "summands": t.summands().iter().map(pres_json).collect::<Vec<_>>(),
    })
}

fn graph_json<F: Field>(g: &ExchangeGraph<F>) -> serde_json::Value {
    json!({
        "complete": g.complete,
        "vertex_count": g.vertices.len(),
        "edge_count": g.edges.len(),
        "vertices": g.vertices.iter().enumerate().map(|(i, t)| json!({
            "index": i,
            "g_matrix": t.g_matrix(),
            "summands": t.summands().iter().map(pres_json).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|e| json!({
            "from": e.from,
            "to": e.to,
            "summand": e.from_summand,
            "d": e.data.d,
            "f_plus": pres_json(&e.data.f_plus),
            "f_minus": pres_json(&e.data.f_minus),
            "middle_left": pres_json(&e.data.middle_left),
            "middle_right": pres_json(&e.data.middle_right),
        })).collect::<Vec<_>>(),
    })
}

pub fn graph_dot<F: Field>(g: &ExchangeGraph<F>) -> String {
    let mut out = String::from("digraph exchange {\n");
    for (i, t) in g.vertices.iter().enumerate() {
        let label = t
            .g_matrix()
            .iter()
            .map(|row| {
                format!(
                    "[{}]",
                    row.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!("  v{i} [label=\"{label}\"];\n"));
    }
    for e in &g.edges {
        out.push_str(&format!(
            "  v{} -> v{} [label=\"k={} d={}\"];\n",
            e.from, e.to, e.from_summand, e.data.d
        ));
    }
    out.push_str("}\n");
    out
}

fn finish(v: serde_json::Value, format: OutputFormat, text: String) -> Result<String> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&v)
                .map_err(|e| Error::internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Text => Ok(text),
        OutputFormat::Dot => Err(Error::invalid("dot output only applies to graph")),
    }
}

/// A parsed bundle over either coefficient field, dispatching every command.
pub enum AnySession {
    Prime(Session<PrimeField>),
    Rational(Session<Rationals>),
}

impl AnySession {
    pub fn new(
        doc: &BundleDoc,
        field_override: Option<FieldDesc>,
        caps: Caps,
        seed: u64,
    ) -> Result<Self> {
        set_seed_offset(seed);
        let desc = match field_override {
            Some(d) => d,
            None => doc.algebra.field.desc()?,
        };
        match desc {
            FieldDesc::Prime(p) => Ok(AnySession::Prime(Session::from_doc(
                doc,
                PrimeField::new(p)?,
                caps,
            )?)),
            FieldDesc::Rationals => Ok(AnySession::Rational(Session::from_doc(
                doc,
                Rationals,
                caps,
            )?)),
        }
    }

    pub fn from_json(
        text: &str,
        field_override: Option<FieldDesc>,
        caps: Caps,
        seed: u64,
    ) -> Result<Self> {
        let doc: BundleDoc = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("bad bundle document: {e}")))?;
        AnySession::new(&doc, field_override, caps, seed)
    }
}

macro_rules! with_session {
    ($self:expr, $s:ident => $body:expr) => {
        match $self {
            AnySession::Prime($s) => $body,
            AnySession::Rational($s) => $body,
        }
    };
}

impl AnySession {
    pub fn cmd_algebra_info(&self, format: OutputFormat) -> Result<String> {
        with_session!(self, s => {
            let alg = s.algebra.as_ref();
            let basis: Vec<String> = (0..alg.dim()).map(|i| alg.render_path(i)).collect();
            let n = alg.vertex_count();
            let hom_table: Vec<Vec<usize>> = (0..n)
                .map(|v| (0..n).map(|w| alg.hom_proj(v, w).len()).collect())
                .collect();
            let warnings: Vec<String> = alg.warnings().iter().map(|w| w.to_string()).collect();
            let semisimple = alg.basis().iter().all(|b| b.is_trivial());
            let v = json!({
                "field": alg.field_desc().to_string(),
                "vertices": n,
                "arrows": alg.quiver().arrows.len(),
                "dim": alg.dim(),
                "semisimple": semisimple,
                "basis": basis,
                "hom_proj_dims": hom_table,
                "warnings": warnings,
            });
            let mut text = format!(
                "algebra over {}: {} vertices, {} arrows, dim {}{}\n",
                alg.field_desc(),
                n,
                alg.quiver().arrows.len(),
                alg.dim(),
                if semisimple { ", semisimple" } else { "" }
            );
            text.push_str(&format!("basis: {}\n", basis.join(" ")));
            text.push_str("hom_proj dims (row v, col w = dim Hom(P_v, P_w)):\n");
            for row in &hom_table {
                text.push_str(&format!(
                    "  {}\n",
                    row.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
                ));
            }
            for w in &warnings {
                text.push_str(&format!("warning: {w}\n"));
            }
            finish(v, format, text)
        })
    }

    /// Returns the formatted report and the dimension (for exit codes).
    pub fn cmd_e_dim(&self, f1: &str, f2: &str, format: OutputFormat) -> Result<(String, usize)> {
        with_session!(self, s => {
            let a = s.pres(f1)?;
            let b = s.pres(f2)?;
            let d = e_dim(a, b)?;
            let v = json!({ "f1": f1, "f2": f2, "e_dim": d });
            let text = format!("dim E({f1}, {f2}) = {d}\n");
            Ok((finish(v, format, text)?, d))
        })
    }

    pub fn cmd_rigid(&self, name: &str, format: OutputFormat) -> Result<(String, bool)> {
        with_session!(self, s => {
            let p = s.pres(name)?;
            let r = is_rigid(p)?;
            let v = json!({ "presentation": name, "rigid": r });
            let text = format!("{name} is {}rigid\n", if r { "" } else { "not " });
            Ok((finish(v, format, text)?, r))
        })
    }

    pub fn cmd_min_pres(&self, name: &str, format: OutputFormat) -> Result<String> {
        with_session!(self, s => {
            let m = s.module(name)?;
            let pres = min_presentation(m);
            let doc = render_pres(&pres);
            let v = serde_json::to_value(&doc).map_err(|e| Error::internal(e.to_string()))?;
            let text = format!(
                "minimal presentation of {name}: P1 = {:?}, P0 = {:?}, g = {:?}\n{}\n",
                pres.p1_vertices(),
                pres.p0_vertices(),
                pres.g_vector(),
                render_pres_text(&pres)
            );
            finish(v, format, text)
        })
    }

    pub fn cmd_tau(&self, name: &str, format: OutputFormat) -> Result<String> {
        with_session!(self, s => {
            let m = s.module(name)?;
            let t = rep::tau(m);
            let v = module_json(&t);
            let text = format!("tau({name}): dims {:?}\n", t.dims());
            finish(v, format, text)
        })
    }

    pub fn cmd_complete_module(&self, name: &str, format: OutputFormat) -> Result<String> {
        with_session!(self, s => {
            let m = s.module(name)?;
            let out = complete_to_tau_tilting(m, s.caps)?;
            let v = json!({
                "input": name,
                "tau_tilting_module": module_json(&out),
                "dims": out.dims(),
            });
            let text = format!("tau-tilting completion of {name}: dims {:?}\n", out.dims());
            finish(v, format, text)
        })
    }

    pub fn cmd_complete_pres(&self, name: &str, format: OutputFormat) -> Result<String> {
        with_session!(self, s => {
            let p = s.pres(name)?;
            let t = complete_to_silting(p, s.caps)?;
            let pair = silting_to_pair(&t)?;
            let v = json!({
                "input": name,
                "silting": silting_json(&t),
                "pair": {
                    "module": module_json(&pair.module),
                    "support": pair.support,
                },
            });
            let text = format!(
                "silting completion of {name}: g-matrix {:?}, support {:?}\n",
                t.g_matrix(),
                pair.support
            );
            finish(v, format, text)
        })
    }

    pub fn cmd_mutate(&self, name: &str, k: usize, format: OutputFormat) -> Result<String> {
        with_session!(self, s => {
            let p = s.pres(name)?;
            let t = SiltingObject::from_presentation(p)?;
            if k >= t.summands().len() {
                return Err(Error::invalid(format!(
                    "summand index {k} out of range (object has {})",
                    t.summands().len()
                )));
            }
            let (new_t, data) = mutate(&t, k)?;
            let v = json!({
                "input": name,
                "summand": k,
                "silting": silting_json(&new_t),
                "exchange": {
                    "d": data.d,
                    "f_plus": pres_json(&data.f_plus),
                    "f_minus": pres_json(&data.f_minus),
                    "middle_left": pres_json(&data.middle_left),
                    "middle_right": pres_json(&data.middle_right),
                },
            });
            let text = format!(
                "mutation of {name} at summand {k}: new g-matrix {:?}, d = {}\n",
                new_t.g_matrix(),
                data.d
            );
            finish(v, format, text)
        })
    }

    /// Returns the report and whether enumeration completed within caps.
    pub fn cmd_graph(&self, format: OutputFormat) -> Result<(String, bool)> {
        with_session!(self, s => {
            let g = exchange_graph(&s.algebra, s.caps)?;
            let complete = g.complete;
            let out = match format {
                OutputFormat::Dot => graph_dot(&g),
                OutputFormat::Json => {
                    let mut t = serde_json::to_string_pretty(&graph_json(&g))
                        .map_err(|e| Error::internal(e.to_string()))?;
                    t.push('\n');
                    t
                }
                OutputFormat::Text => {
                    let mut t = format!(
                        "exchange graph: {} vertices, {} edges{}\n",
                        g.vertices.len(),
                        g.edges.len(),
                        if complete { "" } else { " (CAP EXCEEDED, partial)" }
                    );
                    for (i, vobj) in g.vertices.iter().enumerate() {
                        t.push_str(&format!("  v{i}: g-matrix {:?}\n", vobj.g_matrix()));
                    }
                    for e in &g.edges {
                        t.push_str(&format!(
                            "  v{} -> v{} (summand {}, d = {})\n",
                            e.from, e.to, e.from_summand, e.data.d
                        ));
                    }
                    t
                }
            };
            Ok((out, complete))
        })
    }

    /// Round-trip check used by the CLI determinism tests.
    pub fn cmd_decompose(&self, name: &str, format: OutputFormat) -> Result<String> {
        with_session!(self, s => {
            let p = s.pres(name)?;
            let parts = decompose(p)?;
            let v = json!({
                "input": name,
                "count": parts.len(),
                "summands": parts.iter().map(pres_json).collect::<Vec<_>>(),
                "g_vectors": parts.iter().map(|q| q.g_vector()).collect::<Vec<_>>(),
            });
            let text = format!(
                "{name} decomposes into {} indecomposable summand(s); g-vectors {:?}\n",
                parts.len(),
                parts.iter().map(|q| q.g_vector()).collect::<Vec<_>>()
            );
            finish(v, format, text)
        })
    }
}

fn render_pres_text<F: Field>(p: &Presentation<F>) -> String {
    let alg = p.algebra();
    if p.p0_vertices().is_empty() || p.p1_vertices().is_empty() {
        return "(zero matrix)".into();
    }
    let mut lines = Vec::new();
    for i in 0..p.p0_vertices().len() {
        let row: Vec<String> = (0..p.p1_vertices().len())
            .map(|j| alg.render_elem(p.matrix().entry(i, j)))
            .collect();
        lines.push(format!("  [{}]", row.join(", ")));
    }
    lines.join("\n")
}

/// Used by tests: pick out minimized copies through the public surface.
pub fn normalized_pres_doc<F: Field>(p: &Presentation<F>) -> PresDoc {
    render_pres(&minimize(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2_doc() -> BundleDoc {
        serde_json::from_value(json!({
            "algebra": {
                "vertices": 2,
                "arrows": [[0, 0, 1]],
                "relations": [],
                "nilpotency_bound": 2,
                "field": {"prime": 32003}
            },
            "modules": {
                "S0": {"dims": [1, 0], "arrows": {}},
                "S1": {"dims": [0, 1], "arrows": {}},
                "P0": {"dims": [1, 1], "arrows": {"0": [["1"]]}}
            },
            "presentations": {
                "proj0": {"p1": [], "p0": [0], "matrix": [[]]},
                "shift0": {"p1": [0], "p0": [], "matrix": []},
                "s0pres": {"p1": [1], "p0": [0], "matrix": [[[["1", 2]]]]}
            }
        }))
        .unwrap()
    }

    #[test]
    fn bundle_parses_and_commands_run() {
        let doc = a2_doc();
        let s = AnySession::new(&doc, None, Caps::default(), 0).unwrap();
        let (out, d) = s.cmd_e_dim("shift0", "proj0", OutputFormat::Text).unwrap();
        assert_eq!(d, 1);
        assert!(out.contains("= 1"));
        let (_, rigid) = s.cmd_rigid("s0pres", OutputFormat::Json).unwrap();
        assert!(rigid);
        let info = s.cmd_algebra_info(OutputFormat::Text).unwrap();
        assert!(info.contains("dim 3"));
    }

    #[test]
    fn module_round_trip() {
        let doc = a2_doc();
        let s = AnySession::new(&doc, None, Caps::default(), 0).unwrap();
        let AnySession::Prime(inner) = &s else { panic!() };
        let m = inner.module("P0").unwrap();
        let rend = render_module(m);
        let back = parse_module(inner.algebra(), &rend).unwrap();
        assert!(rep::rep_is_iso(m, &back).unwrap());
    }

    #[test]
    fn pres_doc_round_trip() {
        let doc = a2_doc();
        let s = AnySession::new(&doc, None, Caps::default(), 0).unwrap();
        let AnySession::Prime(inner) = &s else { panic!() };
        let p = inner.pres("s0pres").unwrap();
        let rend = render_pres(p);
        let back = parse_pres(inner.algebra(), &rend).unwrap();
        assert!(crate::decomp::iso_test(p, &back).unwrap());
    }

    #[test]
    fn field_override_switches_field() {
        let doc = a2_doc();
        let s =
            AnySession::new(&doc, Some(FieldDesc::Rationals), Caps::default(), 0).unwrap();
        assert!(matches!(s, AnySession::Rational(_)));
        let info = s.cmd_algebra_info(OutputFormat::Text).unwrap();
        assert!(info.contains("over Q"));
    }

    #[test]
    fn graph_outputs_are_deterministic() {
        let doc = a2_doc();
        let s = AnySession::new(&doc, None, Caps::default(), 0).unwrap();
        let (dot1, c1) = s.cmd_graph(OutputFormat::Dot).unwrap();
        let (dot2, c2) = s.cmd_graph(OutputFormat::Dot).unwrap();
        assert!(c1 && c2);
        assert_eq!(dot1, dot2);
        assert_eq!(dot1.matches("->").count(), 5);
        let (js, _) = s.cmd_graph(OutputFormat::Json).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&js).unwrap();
        assert_eq!(parsed["vertex_count"], 5);
    }

    #[test]
    fn unknown_handles_are_input_errors() {
        let doc = a2_doc();
        let s = AnySession::new(&doc, None, Caps::default(), 0).unwrap();
        let err = s.cmd_tau("nope", OutputFormat::Text).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn malformed_relation_is_input_error() {
        let doc: BundleDoc = serde_json::from_value(json!({
            "algebra": {
                "vertices": 2,
                "arrows": [[0, 0, 1]],
                "relations": [[["1", [0]]]],
                "nilpotency_bound": 2,
                "field": {"prime": 32003}
            }
        }))
        .unwrap();
        let Err(err) = AnySession::new(&doc, None, Caps::default(), 0) else {
            panic!("expected a non-admissible relation error");
        };
        assert_eq!(err.exit_code(), 2);
        assert!(matches!(err, Error::NonAdmissibleRelation(_)));
    }
}
