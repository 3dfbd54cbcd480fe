//! The bound quiver algebra A = kQ/I as an explicit path basis.
//!
//! Composition convention, fixed crate-wide: paths compose left to right.
//! For arrows a: i -> j and b: j -> k the product a*b is the path i -> k.
//! A path p therefore satisfies p = e_{source(p)} * p * e_{target(p)}, and
//! the corner space e_v A e_w is spanned by the basis paths from v to w.
//!
//! Right modules are used throughout, with P_v = e_v A and
//! Hom(P_v, P_w) = e_w A e_v acting by left multiplication.
//!
//! The basis is the complement, under length-lexicographic leading-term
//! reduction, of the two-sided ideal generated by the relations inside the
//! span of all paths shorter than the nilpotency bound N; every path of
//! length >= N is zero.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldDesc};

pub type VertexId = usize;
pub type ArrowId = usize;

/// Default cap on the number of enumerated paths.
pub const DEFAULT_PATH_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: ArrowId,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<(ArrowId, VertexId, VertexId)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::invalid("quiver needs at least one vertex"));
        }
        let mut list: Vec<Arrow> = arrows
            .into_iter()
            .map(|(id, source, target)| Arrow { id, source, target })
            .collect();
        list.sort_by_key(|a| a.id);
        for (i, a) in list.iter().enumerate() {
            if a.id != i {
                return Err(Error::invalid("arrow ids must be distinct and dense"));
            }
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(Error::invalid(format!(
                    "arrow {} endpoints out of range",
                    a.id
                )));
            }
        }
        Ok(Quiver {
            vertex_count,
            arrows: list,
        })
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id]
    }
}

/// One relation: a k-linear combination of parallel paths of length >= 2,
/// each path a left-to-right arrow sequence.
#[derive(Clone, Debug)]
pub struct Relation<F: Field> {
    pub terms: Vec<(F::Elem, Vec<ArrowId>)>,
}

#[derive(Clone, Debug)]
pub struct AlgebraSpec<F: Field> {
    pub quiver: Quiver,
    pub relations: Vec<Relation<F>>,
    pub nilpotency_bound: usize,
    pub field: F,
    pub path_cap: usize,
}

impl<F: Field> AlgebraSpec<F> {
    pub fn new(
        quiver: Quiver,
        relations: Vec<Relation<F>>,
        nilpotency_bound: usize,
        field: F,
    ) -> Self {
        AlgebraSpec {
            quiver,
            relations,
            nilpotency_bound,
            field,
            path_cap: DEFAULT_PATH_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BuildWarning {
    /// A relation term had length >= N and was truncated away; the remaining
    /// terms are still imposed.
    InconsistentBound { relation: usize },
    /// No basis path of length N-1 survives, so a smaller bound would have
    /// produced the same algebra.
    GenerousBound,
}

impl std::fmt::Display for BuildWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BuildWarning::InconsistentBound { relation } => write!(
                f,
                "relation {relation} involves a path of length >= the nilpotency bound; the long terms are zero and were dropped"
            ),
            BuildWarning::GenerousBound => write!(
                f,
                "all paths of maximal length already reduce to zero; the nilpotency bound looks generous"
            ),
        }
    }
}

/// A reduced path of the basis, tagged with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisPath {
    pub source: VertexId,
    pub target: VertexId,
    pub arrows: Vec<ArrowId>,
}

impl BasisPath {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Element of the algebra: dense coefficient vector over the path basis.
pub type AlgElem<F> = Vec<<F as Field>::Elem>;

/// The algebra A = kQ/I with multiplication table, corner bases and vertex
/// idempotents. Immutable after construction; share via `Arc`.
#[derive(Debug)]
pub struct Algebra<F: Field> {
    field: F,
    quiver: Quiver,
    nilpotency: usize,
    basis: Vec<BasisPath>,
    /// corners[v][w] = basis indices spanning e_v A e_w (paths v -> w).
    corners: Vec<Vec<Vec<usize>>>,
    /// basis index of the trivial path e_v.
    idem: Vec<usize>,
    /// mult[i][j] = normal form of basis_i * basis_j, sparse over the basis.
    mult: Vec<Vec<Vec<(usize, F::Elem)>>>,
    /// basis index of each arrow (length-1 paths always survive reduction).
    arrow_basis: Vec<usize>,
    /// validated relations with terms of length >= N dropped; retained for
    /// representation checks.
    relations: Vec<Vec<(F::Elem, Vec<ArrowId>)>>,
    warnings: Vec<BuildWarning>,
    /// Stable content hash, used for mismatch checks and as a seed component.
    key: u64,
}

struct PathEnum {
    /// (source, arrow sequence) in length-lexicographic order.
    paths: Vec<(VertexId, Vec<ArrowId>)>,
    index: HashMap<(VertexId, Vec<ArrowId>), usize>,
}

fn enumerate_paths(quiver: &Quiver, bound: usize, cap: usize) -> Result<PathEnum> {
    let mut paths: Vec<(VertexId, Vec<ArrowId>)> = Vec::new();
    let mut level: Vec<(VertexId, VertexId, Vec<ArrowId>)> = Vec::new();
    for v in 0..quiver.vertex_count {
        paths.push((v, vec![]));
        level.push((v, v, vec![]));
    }
    let mut len = 1;
    while len < bound && !level.is_empty() {
        let mut next = Vec::new();
        for (src, tgt, arrows) in &level {
            for a in &quiver.arrows {
                if a.source == *tgt {
                    let mut seq = arrows.clone();
                    seq.push(a.id);
                    next.push((*src, a.target, seq));
                }
            }
        }
        for (src, _tgt, seq) in &next {
            paths.push((*src, seq.clone()));
            if paths.len() > cap {
                return Err(Error::PathExplosion {
                    count: paths.len(),
                    bound,
                    cap,
                });
            }
        }
        level = next;
        len += 1;
    }
    let index = paths
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    Ok(PathEnum { paths, index })
}

fn path_target(quiver: &Quiver, source: VertexId, arrows: &[ArrowId]) -> VertexId {
    arrows
        .last()
        .map_or(source, |&a| quiver.arrow(a).target)
}

fn validate_relation<F: Field>(
    field: &F,
    quiver: &Quiver,
    idx: usize,
    rel: &Relation<F>,
) -> Result<(VertexId, VertexId)> {
    if rel.terms.is_empty() {
        return Err(Error::NonAdmissibleRelation(format!(
            "relation {idx} has no terms"
        )));
    }
    let mut endpoints = None;
    for (coeff, arrows) in &rel.terms {
        if field.is_zero(coeff) {
            return Err(Error::NonAdmissibleRelation(format!(
                "relation {idx} has a zero coefficient"
            )));
        }
        if arrows.len() < 2 {
            return Err(Error::NonAdmissibleRelation(format!(
                "relation {idx} contains a path of length {} (< 2)",
                arrows.len()
            )));
        }
        for a in arrows {
            if *a >= quiver.arrows.len() {
                return Err(Error::NonAdmissibleRelation(format!(
                    "relation {idx} uses unknown arrow {a}"
                )));
            }
        }
        for w in arrows.windows(2) {
            if quiver.arrow(w[0]).target != quiver.arrow(w[1]).source {
                return Err(Error::NonAdmissibleRelation(format!(
                    "relation {idx}: arrows {} and {} do not compose",
                    w[0], w[1]
                )));
            }
        }
        let src = quiver.arrow(arrows[0]).source;
        let tgt = quiver.arrow(*arrows.last().unwrap()).target;
        match endpoints {
            None => endpoints = Some((src, tgt)),
            Some(e) if e == (src, tgt) => {}
            Some(_) => {
                return Err(Error::NonAdmissibleRelation(format!(
                    "relation {idx} mixes non-parallel paths"
                )));
            }
        }
    }
    Ok(endpoints.unwrap())
}

impl<F: Field> Algebra<F> {
    pub fn build(spec: AlgebraSpec<F>) -> Result<Arc<Self>> {
        let field = spec.field.clone();
        let quiver = spec.quiver.clone();
        let bound = spec.nilpotency_bound;
        if bound < 1 {
            return Err(Error::invalid("nilpotency bound must be >= 1"));
        }
        let mut warnings = Vec::new();
        let paths = enumerate_paths(&quiver, bound, spec.path_cap)?;
        let np = paths.paths.len();

        // ideal generators: p * r * q for every relation r and compatible
        // padding paths p, q, truncated below the nilpotency bound
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        let mut kept_relations = Vec::new();
        for (ri, rel) in spec.relations.iter().enumerate() {
            let (rsrc, rtgt) = validate_relation(&field, &quiver, ri, rel)?;
            let min_len = rel.terms.iter().map(|(_, a)| a.len()).min().unwrap();
            let max_len = rel.terms.iter().map(|(_, a)| a.len()).max().unwrap();
            if max_len >= bound {
                warnings.push(BuildWarning::InconsistentBound { relation: ri });
            }
            let kept: Vec<(F::Elem, Vec<ArrowId>)> = rel
                .terms
                .iter()
                .filter(|(_, p)| p.len() < bound)
                .cloned()
                .collect();
            if !kept.is_empty() {
                kept_relations.push(kept);
            }
            for (pre_src, pre) in &paths.paths {
                if path_target(&quiver, *pre_src, pre) != rsrc {
                    continue;
                }
                for (suf_src, suf) in &paths.paths {
                    if *suf_src != rtgt {
                        continue;
                    }
                    if pre.len() + min_len + suf.len() >= bound {
                        continue;
                    }
                    let mut row = vec![field.zero(); np];
                    let mut nonzero = false;
                    for (coeff, mid) in &rel.terms {
                        let total = pre.len() + mid.len() + suf.len();
                        if total >= bound {
                            continue;
                        }
                        let mut seq = pre.clone();
                        seq.extend_from_slice(mid);
                        seq.extend_from_slice(suf);
                        let idx = *paths
                            .index
                            .get(&(*pre_src, seq))
                            .expect("composite path must be enumerated");
                        row[idx] = field.add(&row[idx], coeff);
                        nonzero = true;
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }

        // leading-term reduction, leading term = largest path in length-lex
        let mut pivot_rows: Vec<(usize, Vec<F::Elem>)> = Vec::new();
        for mut row in rows {
            loop {
                let Some(h) = (0..np).rev().find(|&i| !field.is_zero(&row[i])) else {
                    break;
                };
                if let Some((_, prow)) = pivot_rows.iter().find(|(p, _)| *p == h) {
                    let c = row[h].clone();
                    let prow = prow.clone();
                    for i in 0..np {
                        row[i] = field.sub(&row[i], &field.mul(&c, &prow[i]));
                    }
                } else {
                    let inv = field.inv(&row[h]).unwrap();
                    for i in 0..np {
                        row[i] = field.mul(&row[i], &inv);
                    }
                    pivot_rows.push((h, row));
                    break;
                }
            }
        }
        // full back-substitution so every pivot row is supported on basis paths
        pivot_rows.sort_by_key(|(p, _)| *p);
        for k in (0..pivot_rows.len()).rev() {
            let (pk, rowk) = pivot_rows[k].clone();
            for (pm, rowm) in pivot_rows.iter_mut() {
                if *pm == pk {
                    continue;
                }
                let c = rowm[pk].clone();
                if !field.is_zero(&c) {
                    for i in 0..np {
                        rowm[i] = field.sub(&rowm[i], &field.mul(&c, &rowk[i]));
                    }
                }
            }
        }
        let pivot_set: HashMap<usize, usize> = pivot_rows
            .iter()
            .enumerate()
            .map(|(k, (p, _))| (*p, k))
            .collect();

        // basis = non-pivot paths, in length-lex order
        let mut basis = Vec::new();
        let mut basis_of_path: Vec<Option<usize>> = vec![None; np];
        for (i, (src, arrows)) in paths.paths.iter().enumerate() {
            if !pivot_set.contains_key(&i) {
                basis_of_path[i] = Some(basis.len());
                basis.push(BasisPath {
                    source: *src,
                    target: path_target(&quiver, *src, arrows),
                    arrows: arrows.clone(),
                });
            }
        }
        let dim = basis.len();

        // normal form of every enumerated path over the basis
        let mut normal: Vec<Vec<(usize, F::Elem)>> = Vec::with_capacity(np);
        for i in 0..np {
            if let Some(b) = basis_of_path[i] {
                normal.push(vec![(b, field.one())]);
            } else {
                let k = pivot_set[&i];
                let row = &pivot_rows[k].1;
                let mut nf = Vec::new();
                for (j, c) in row.iter().enumerate() {
                    if j != i && !field.is_zero(c) {
                        let b = basis_of_path[j]
                            .ok_or_else(|| Error::internal("reduced row touches a pivot path"))?;
                        nf.push((b, field.neg(c)));
                    }
                }
                nf.sort_by_key(|(b, _)| *b);
                normal.push(nf);
            }
        }

        // multiplication table by concatenation + normal form
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for (i, bi) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate() {
                if bi.target != bj.source {
                    continue;
                }
                if bi.len() + bj.len() >= bound {
                    continue;
                }
                let mut seq = bi.arrows.clone();
                seq.extend_from_slice(&bj.arrows);
                let idx = *paths
                    .index
                    .get(&(bi.source, seq))
                    .expect("product path must be enumerated");
                mult[i][j] = normal[idx].clone();
            }
        }

        let mut corners = vec![vec![Vec::new(); quiver.vertex_count]; quiver.vertex_count];
        let mut idem = vec![usize::MAX; quiver.vertex_count];
        let mut arrow_basis = vec![usize::MAX; quiver.arrows.len()];
        for (i, b) in basis.iter().enumerate() {
            corners[b.source][b.target].push(i);
            if b.is_trivial() {
                idem[b.source] = i;
            }
            if b.len() == 1 {
                arrow_basis[b.arrows[0]] = i;
            }
        }
        if idem.iter().any(|&i| i == usize::MAX) {
            return Err(Error::internal("missing vertex idempotent"));
        }
        // for bound 1 every arrow is already zero in the algebra
        if bound >= 2 && arrow_basis.iter().any(|&i| i == usize::MAX) {
            return Err(Error::internal("missing arrow basis path"));
        }

        if bound > 1 && !basis.iter().any(|b| b.len() == bound - 1) {
            warnings.push(BuildWarning::GenerousBound);
        }

        let key = content_key(&field.desc(), &quiver, &spec.relations, bound, &field);

        Ok(Arc::new(Algebra {
            field,
            quiver,
            nilpotency: bound,
            basis,
            corners,
            idem,
            mult,
            arrow_basis,
            relations: kept_relations,
            warnings,
            key,
        }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn field_desc(&self) -> FieldDesc {
        self.field.desc()
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Number of vertices; the rank of K_0 and the summand count of every
    /// silting object.
    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    pub fn nilpotency_bound(&self) -> usize {
        self.nilpotency
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisPath] {
        &self.basis
    }

    pub fn warnings(&self) -> &[BuildWarning] {
        &self.warnings
    }

    pub fn key(&self) -> u64 {
        self.key
    }

    /// Basis indices of e_v A e_w: the reduced paths v -> w.
    pub fn corner(&self, v: VertexId, w: VertexId) -> &[usize] {
        &self.corners[v][w]
    }

    /// Basis of Hom(P_v, P_w) = e_w A e_v under phi -> phi(e_v).
    pub fn hom_proj(&self, v: VertexId, w: VertexId) -> &[usize] {
        self.corner(w, v)
    }

    pub fn idempotent_index(&self, v: VertexId) -> usize {
        self.idem[v]
    }

    /// Basis index of the length-one path for an arrow, `None` when the
    /// nilpotency bound already kills arrows.
    pub fn arrow_basis_index(&self, a: ArrowId) -> Option<usize> {
        let i = self.arrow_basis[a];
        if i == usize::MAX {
            None
        } else {
            Some(i)
        }
    }

    /// The defining relations, truncated below the nilpotency bound.
    pub fn relations(&self) -> &[Vec<(F::Elem, Vec<ArrowId>)>] {
        &self.relations
    }

    pub fn zero_elem(&self) -> AlgElem<F> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_elem(&self, i: usize) -> AlgElem<F> {
        let mut e = self.zero_elem();
        e[i] = self.field.one();
        e
    }

    pub fn unit_elem(&self, v: VertexId) -> AlgElem<F> {
        self.basis_elem(self.idem[v])
    }

    pub fn elem_is_zero(&self, a: &AlgElem<F>) -> bool {
        a.iter().all(|c| self.field.is_zero(c))
    }

    pub fn add_elems(&self, a: &AlgElem<F>, b: &AlgElem<F>) -> AlgElem<F> {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.field.add(x, y))
            .collect()
    }

    pub fn sub_elems(&self, a: &AlgElem<F>, b: &AlgElem<F>) -> AlgElem<F> {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.field.sub(x, y))
            .collect()
    }

    pub fn neg_elem(&self, a: &AlgElem<F>) -> AlgElem<F> {
        a.iter().map(|x| self.field.neg(x)).collect()
    }

    pub fn scale_elem(&self, c: &F::Elem, a: &AlgElem<F>) -> AlgElem<F> {
        a.iter().map(|x| self.field.mul(c, x)).collect()
    }

    pub fn mul_elems(&self, a: &AlgElem<F>, b: &AlgElem<F>) -> AlgElem<F> {
        let mut out = self.zero_elem();
        for (i, ca) in a.iter().enumerate() {
            if self.field.is_zero(ca) {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if self.field.is_zero(cb) {
                    continue;
                }
                let cab = self.field.mul(ca, cb);
                for (k, c) in &self.mult[i][j] {
                    out[*k] = self.field.add(&out[*k], &self.field.mul(&cab, c));
                }
            }
        }
        out
    }

    /// Coefficient of the trivial path e_v.
    pub fn scalar_coeff(&self, a: &AlgElem<F>, v: VertexId) -> F::Elem {
        a[self.idem[v]].clone()
    }

    /// True when the element lies in the radical, i.e. has no trivial-path
    /// component. Admissibility makes the span of length >= 1 basis paths
    /// the Jacobson radical.
    pub fn elem_is_radical(&self, a: &AlgElem<F>) -> bool {
        self.idem.iter().all(|&i| self.field.is_zero(&a[i]))
    }

    pub fn elem_in_corner(&self, a: &AlgElem<F>, v: VertexId, w: VertexId) -> bool {
        a.iter().enumerate().all(|(i, c)| {
            self.field.is_zero(c) || (self.basis[i].source == v && self.basis[i].target == w)
        })
    }

    /// Inverse of u in the corner algebra e_v A e_v, when the coefficient of
    /// e_v is nonzero: a finite geometric series since the radical part is
    /// nilpotent.
    pub fn corner_inverse(&self, u: &AlgElem<F>, v: VertexId) -> Option<AlgElem<F>> {
        let c = self.scalar_coeff(u, v);
        let cinv = self.field.inv(&c)?;
        let mut rad = self.scale_elem(&cinv, u);
        rad[self.idem[v]] = self.field.zero();
        let rad = self.neg_elem(&rad); // -c^{-1} r
        let mut acc = self.unit_elem(v);
        let mut pw = self.unit_elem(v);
        for _ in 0..self.nilpotency {
            pw = self.mul_elems(&pw, &rad);
            if self.elem_is_zero(&pw) {
                break;
            }
            acc = self.add_elems(&acc, &pw);
        }
        Some(self.scale_elem(&cinv, &acc))
    }

    pub fn check_associativity(&self) -> bool {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.mul_elems(&self.basis_elem(i), &self.basis_elem(j));
                for k in 0..d {
                    let left = self.mul_elems(&ij, &self.basis_elem(k));
                    let jk = self.mul_elems(&self.basis_elem(j), &self.basis_elem(k));
                    let right = self.mul_elems(&self.basis_elem(i), &jk);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn render_path(&self, i: usize) -> String {
        let b = &self.basis[i];
        if b.is_trivial() {
            format!("e{}", b.source)
        } else {
            b.arrows
                .iter()
                .map(|a| format!("a{a}"))
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    pub fn render_elem(&self, a: &AlgElem<F>) -> String {
        let mut parts = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            if self.field.is_one(c) {
                parts.push(self.render_path(i));
            } else {
                parts.push(format!("{}*{}", self.field.render(c), self.render_path(i)));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn same_algebra<F: Field>(a: &Arc<Algebra<F>>, b: &Arc<Algebra<F>>) -> bool {
    Arc::ptr_eq(a, b) || a.key() == b.key()
}

fn fnv1a(hash: &mut u64, bytes: &[u8]) {
    for b in bytes {
        *hash ^= *b as u64;
        *hash = hash.wrapping_mul(0x100000001b3);
    }
}

fn content_key<F: Field>(
    desc: &FieldDesc,
    quiver: &Quiver,
    relations: &[Relation<F>],
    bound: usize,
    field: &F,
) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    fnv1a(&mut h, format!("{desc}|{}|{bound}", quiver.vertex_count).as_bytes());
    for a in &quiver.arrows {
        fnv1a(&mut h, format!("a{},{},{}", a.id, a.source, a.target).as_bytes());
    }
    for r in relations {
        for (c, p) in &r.terms {
            fnv1a(&mut h, field.render(c).as_bytes());
            fnv1a(&mut h, format!("{p:?}").as_bytes());
        }
    }
    h
}

/// Rectangular matrix with entries in the algebra. Row i, column j holds an
/// element of e_{row_verts[i]} A e_{col_verts[j]}, i.e. a map
/// P_{col_verts[j]} -> P_{row_verts[i]}; the matrix acts on column vectors by
/// left multiplication.
#[derive(Clone, Debug, PartialEq)]
pub struct AMat<F: Field> {
    pub row_verts: Vec<VertexId>,
    pub col_verts: Vec<VertexId>,
    entries: Vec<AlgElem<F>>,
}

impl<F: Field> AMat<F> {
    pub fn zero(alg: &Algebra<F>, row_verts: Vec<VertexId>, col_verts: Vec<VertexId>) -> Self {
        let entries = vec![alg.zero_elem(); row_verts.len() * col_verts.len()];
        AMat {
            row_verts,
            col_verts,
            entries,
        }
    }

    pub fn identity(alg: &Algebra<F>, verts: Vec<VertexId>) -> Self {
        let mut m = AMat::zero(alg, verts.clone(), verts);
        for i in 0..m.row_verts.len() {
            let e = alg.unit_elem(m.row_verts[i]);
            m.set(i, i, e);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.row_verts.len()
    }

    pub fn cols(&self) -> usize {
        self.col_verts.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &AlgElem<F> {
        &self.entries[i * self.col_verts.len() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: AlgElem<F>) {
        let c = self.col_verts.len();
        self.entries[i * c + j] = e;
    }

    pub fn validate(&self, alg: &Algebra<F>) -> Result<()> {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if !alg.elem_in_corner(self.entry(i, j), self.row_verts[i], self.col_verts[j]) {
                    return Err(Error::invalid(format!(
                        "matrix entry ({i},{j}) leaves the corner e_{} A e_{}",
                        self.row_verts[i], self.col_verts[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, alg: &Algebra<F>, rhs: &AMat<F>) -> AMat<F> {
        assert_eq!(self.col_verts, rhs.row_verts, "composition shape mismatch");
        let mut out = AMat::zero(alg, self.row_verts.clone(), rhs.col_verts.clone());
        for i in 0..self.rows() {
            for j in 0..rhs.cols() {
                let mut acc = alg.zero_elem();
                for k in 0..self.cols() {
                    let a = self.entry(i, k);
                    let b = rhs.entry(k, j);
                    if !alg.elem_is_zero(a) && !alg.elem_is_zero(b) {
                        acc = alg.add_elems(&acc, &alg.mul_elems(a, b));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, alg: &Algebra<F>, rhs: &AMat<F>) -> AMat<F> {
        let mut out = self.clone();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.set(i, j, alg.add_elems(self.entry(i, j), rhs.entry(i, j)));
            }
        }
        out
    }

    pub fn sub(&self, alg: &Algebra<F>, rhs: &AMat<F>) -> AMat<F> {
        let mut out = self.clone();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.set(i, j, alg.sub_elems(self.entry(i, j), rhs.entry(i, j)));
            }
        }
        out
    }

    pub fn neg(&self, alg: &Algebra<F>) -> AMat<F> {
        let mut out = self.clone();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.set(i, j, alg.neg_elem(self.entry(i, j)));
            }
        }
        out
    }

    pub fn scale(&self, alg: &Algebra<F>, c: &F::Elem) -> AMat<F> {
        let mut out = self.clone();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.set(i, j, alg.scale_elem(c, self.entry(i, j)));
            }
        }
        out
    }

    pub fn is_zero(&self, alg: &Algebra<F>) -> bool {
        self.entries.iter().all(|e| alg.elem_is_zero(e))
    }

    /// All entries in the radical: the minimality condition for
    /// presentations (image contained in rad P_0).
    pub fn is_radical(&self, alg: &Algebra<F>) -> bool {
        self.entries.iter().all(|e| alg.elem_is_radical(e))
    }

    /// Scalar (vertex-idempotent) coefficient of entry (i, j); zero when the
    /// row and column vertices differ.
    pub fn scalar_coeff(&self, alg: &Algebra<F>, i: usize, j: usize) -> F::Elem {
        if self.row_verts[i] == self.col_verts[j] {
            alg.scalar_coeff(self.entry(i, j), self.row_verts[i])
        } else {
            alg.field().zero()
        }
    }

    pub fn submatrix(&self, alg: &Algebra<F>, rows: &[usize], cols: &[usize]) -> AMat<F> {
        let mut out = AMat::zero(
            alg,
            rows.iter().map(|&i| self.row_verts[i]).collect(),
            cols.iter().map(|&j| self.col_verts[j]).collect(),
        );
        for (ni, &i) in rows.iter().enumerate() {
            for (nj, &j) in cols.iter().enumerate() {
                out.set(ni, nj, self.entry(i, j).clone());
            }
        }
        out
    }

    /// Block matrix [[a, b], [c, d]]; any block may be absent when the
    /// corresponding rows/cols are empty.
    pub fn block2x2(
        alg: &Algebra<F>,
        a: &AMat<F>,
        b: &AMat<F>,
        c: &AMat<F>,
        d: &AMat<F>,
    ) -> AMat<F> {
        assert_eq!(a.row_verts, b.row_verts);
        assert_eq!(c.row_verts, d.row_verts);
        assert_eq!(a.col_verts, c.col_verts);
        assert_eq!(b.col_verts, d.col_verts);
        let row_verts: Vec<_> = a.row_verts.iter().chain(&c.row_verts).cloned().collect();
        let col_verts: Vec<_> = a.col_verts.iter().chain(&b.col_verts).cloned().collect();
        let (ar, ac) = (a.rows(), a.cols());
        let mut out = AMat::zero(alg, row_verts, col_verts);
        for i in 0..out.rows() {
            for j in 0..out.cols() {
                let e = match (i < ar, j < ac) {
                    (true, true) => a.entry(i, j),
                    (true, false) => b.entry(i, j - ac),
                    (false, true) => c.entry(i - ar, j),
                    (false, false) => d.entry(i - ar, j - ac),
                };
                out.set(i, j, e.clone());
            }
        }
        out
    }

    /// Inverse of a square endomorphism matrix whose scalar part is
    /// invertible (scalar block plus radical entries): exact geometric
    /// series over the algebra, finite because the radical is nilpotent.
    pub fn inverse_unit(&self, alg: &Algebra<F>) -> Option<AMat<F>> {
        assert_eq!(
            self.row_verts, self.col_verts,
            "inverse_unit expects an endomorphism matrix"
        );
        let f = alg.field();
        let n = self.rows();
        let verts = self.row_verts.clone();
        let smat = crate::linalg::Mat::from_fn(n, n, |i, j| self.scalar_coeff(alg, i, j));
        let sinv = crate::linalg::inverse(f, &smat)?;
        let lift = |km: &crate::linalg::Mat<F::Elem>| {
            let mut m = AMat::zero(alg, verts.clone(), verts.clone());
            for i in 0..n {
                for j in 0..n {
                    if verts[i] == verts[j] && !f.is_zero(km.at(i, j)) {
                        m.set(i, j, alg.scale_elem(km.at(i, j), &alg.unit_elem(verts[i])));
                    }
                }
            }
            m
        };
        let s_amat = lift(&smat);
        let sinv_amat = lift(&sinv);
        // u = s + r  =>  u^{-1} = (sum_k (-s^{-1} r)^k) s^{-1}
        let rad = self.sub(alg, &s_amat);
        let m = sinv_amat.mul(alg, &rad).neg(alg);
        let id = AMat::identity(alg, verts);
        let mut acc = id.clone();
        let mut pw = id;
        for _ in 0..alg.nilpotency_bound() + 1 {
            pw = pw.mul(alg, &m);
            if pw.is_zero(alg) {
                break;
            }
            acc = acc.add(alg, &pw);
        }
        Some(acc.mul(alg, &sinv_amat))
    }
}
