//! Silting objects, exchange mutation and the support tau-tilting layer.
//!
//! A basic rigid presentation with n = rank K_0 pairwise non-isomorphic
//! indecomposable summands is silting; an almost complete rigid presentation
//! has exactly two complements f+ and f-, distinguished by E(f+, f-) = 0,
//! and the exchange data carries d = dim E(f-, f+) with the two middle
//! terms of the exchange triangles. Mutation computes the cone of a minimal
//! approximation into the remaining summands: the left cone when it stays
//! two-term, the right cocone otherwise.
//!
//! Exchange-graph edges are oriented from the f+ side; this orientation is
//! a convention of this crate, chosen so that the all-projectives object is
//! the unique source.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use crate::algebra::{Algebra, VertexId};
use crate::decomp::{decompose, iso_test, same_summand_multiset, sort_canonical};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::pres::{
    chain_homs, cocone, cone, e_dim, is_rigid, minimize, ChainPair, Presentation,
};
use crate::rep::{self, coker, hom_dim, min_presentation, Representation};

#[derive(Clone, Debug)]
pub struct SiltingObject<F: Field> {
    summands: Vec<Presentation<F>>,
}

impl<F: Field> SiltingObject<F> {
    /// Assemble from indecomposable summands; validates count, basicness and
    /// mutual rigidity.
    pub fn new(mut summands: Vec<Presentation<F>>) -> Result<Self> {
        let first = summands
            .first()
            .ok_or_else(|| Error::NotRigid("empty silting object".into()))?;
        let alg = first.algebra().clone();
        let n = alg.vertex_count();
        if summands.len() != n {
            return Err(Error::NotRigid(format!(
                "expected {n} summands, got {}",
                summands.len()
            )));
        }
        sort_canonical(&mut summands);
        for i in 0..summands.len() {
            for j in 0..summands.len() {
                if i != j && iso_test(&summands[i], &summands[j])? {
                    return Err(Error::NotRigid("repeated summand".into()));
                }
                if e_dim(&summands[i], &summands[j])? != 0 {
                    return Err(Error::NotRigid(format!(
                        "E-space between summands {i} and {j} does not vanish"
                    )));
                }
            }
        }
        Ok(SiltingObject { summands })
    }

    pub fn from_presentation(f: &Presentation<F>) -> Result<Self> {
        SiltingObject::new(decompose(f)?)
    }

    pub fn initial(alg: &Arc<Algebra<F>>) -> Result<Self> {
        let summands = (0..alg.vertex_count())
            .map(|v| Presentation::proj(alg.clone(), v))
            .collect();
        SiltingObject::new(summands)
    }

    pub fn co_initial(alg: &Arc<Algebra<F>>) -> Result<Self> {
        let summands = (0..alg.vertex_count())
            .map(|v| Presentation::shifted_proj(alg.clone(), v))
            .collect();
        SiltingObject::new(summands)
    }

    pub fn summands(&self) -> &[Presentation<F>] {
        &self.summands
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        self.summands[0].algebra()
    }

    /// Rows are summand g-vectors in canonical order, which sorts them
    /// lexicographically; the row-sorted matrix is the dedup key.
    pub fn g_matrix(&self) -> Vec<Vec<i64>> {
        self.summands.iter().map(|s| s.g_vector()).collect()
    }

    pub fn key(&self) -> Vec<Vec<i64>> {
        let mut rows = self.g_matrix();
        rows.sort();
        rows
    }

    pub fn direct_sum(&self) -> Presentation<F> {
        let refs: Vec<&Presentation<F>> = self.summands.iter().collect();
        Presentation::direct_sum(&refs).expect("summands share the algebra")
    }

    /// Integer determinant of the g-matrix (Bareiss), a sanity invariant:
    /// every silting object has determinant +-1.
    pub fn g_matrix_det(&self) -> i64 {
        let mut m: Vec<Vec<i128>> = self
            .g_matrix()
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let n = m.len();
        let mut denom: i128 = 1;
        let mut sign = 1i128;
        for k in 0..n {
            let piv = (k..n).find(|&i| m[i][k] != 0);
            let Some(p) = piv else {
                return 0;
            };
            if p != k {
                m.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / denom;
                }
                m[i][k] = 0;
            }
            denom = m[k][k];
        }
        (sign * m[n - 1][n - 1]) as i64
    }
}

/// Theorem-style silting test: rigid with n pairwise non-isomorphic
/// indecomposable summands.
pub fn is_silting<F: Field>(f: &Presentation<F>) -> Result<bool> {
    if !is_rigid(f)? {
        return Ok(false);
    }
    let parts = decompose(f)?;
    if parts.len() != f.algebra().vertex_count() {
        return Ok(false);
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if iso_test(&parts[i], &parts[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Maximality against an explicit pool: no pool member outside Ind(f)
/// extends f rigidly. Vacuously true on an empty pool.
pub fn maximality_oracle<F: Field>(
    f: &Presentation<F>,
    pool: &[Presentation<F>],
) -> Result<bool> {
    if !is_rigid(f)? {
        return Err(Error::NotRigid("maximality oracle needs rigid input".into()));
    }
    let parts = decompose(f)?;
    'pool: for g in pool {
        for p in &parts {
            if iso_test(p, g)? {
                continue 'pool;
            }
        }
        let extends = e_dim(g, g)? == 0
            && e_dim(f, g)? == 0
            && e_dim(g, f)? == 0;
        if extends {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exchange data of a mutation: the two complements, d = dim E(f-, f+),
/// and the middle terms f' and f'' of the exchange triangles
/// f+ -> f' -> f-^d -> f+[1] and f+^d -> f'' -> f- -> f+^d[1].
#[derive(Clone, Debug)]
pub struct ExchangeData<F: Field> {
    pub f_plus: Presentation<F>,
    pub f_minus: Presentation<F>,
    pub d: usize,
    pub middle_left: Presentation<F>,
    pub middle_right: Presentation<F>,
}

/// Build the two middle terms by universal extension: the connecting map
/// f-^d -> f+[1] stacks a basis of E(f-, f+), and the middle term is the
/// shifted cone, minimized back to two terms.
pub fn exchange_data<F: Field>(
    f_plus: &Presentation<F>,
    f_minus: &Presentation<F>,
) -> Result<ExchangeData<F>> {
    let alg = f_plus.algebra().clone();
    let a = alg.as_ref();
    let es = crate::pres::e_space(f_minus, f_plus)?;
    let d = es.dim;
    let eps: Vec<crate::algebra::AMat<F>> = es
        .reps
        .iter()
        .map(|r| es.coords.to_amat(a, r))
        .collect();
    // f' over P1 = d copies of P1(f-) + P1(f+), P0 likewise
    let build = |copies_minus: usize, copies_plus: usize| -> Result<Presentation<F>> {
        let mut p1: Vec<VertexId> = Vec::new();
        let mut p0: Vec<VertexId> = Vec::new();
        for _ in 0..copies_minus {
            p1.extend_from_slice(f_minus.p1_vertices());
        }
        for _ in 0..copies_plus {
            p1.extend_from_slice(f_plus.p1_vertices());
        }
        for _ in 0..copies_minus {
            p0.extend_from_slice(f_minus.p0_vertices());
        }
        for _ in 0..copies_plus {
            p0.extend_from_slice(f_plus.p0_vertices());
        }
        let mut mat = crate::algebra::AMat::zero(a, p0.clone(), p1.clone());
        let (m1, m0) = (f_minus.p1_vertices().len(), f_minus.p0_vertices().len());
        let (q1, q0) = (f_plus.p1_vertices().len(), f_plus.p0_vertices().len());
        for c in 0..copies_minus {
            for i in 0..m0 {
                for j in 0..m1 {
                    mat.set(c * m0 + i, c * m1 + j, f_minus.matrix().entry(i, j).clone());
                }
            }
        }
        for c in 0..copies_plus {
            for i in 0..q0 {
                for j in 0..q1 {
                    mat.set(
                        copies_minus * m0 + c * q0 + i,
                        copies_minus * m1 + c * q1 + j,
                        f_plus.matrix().entry(i, j).clone(),
                    );
                }
            }
        }
        // connecting blocks: copy l of P1(f-) -> copy l' of P0(f+)
        for (l, e) in eps.iter().enumerate() {
            for i in 0..q0 {
                for j in 0..m1 {
                    if copies_minus > 1 {
                        // f': e_l maps copy l of P1(f-) into the single P0(f+)
                        mat.set(copies_minus * m0 + i, l * m1 + j, e.entry(i, j).clone());
                    } else {
                        // f'': the single P1(f-) maps into copy l of P0(f+)
                        mat.set(m0 + l * q0 + i, j, e.entry(i, j).clone());
                    }
                }
            }
        }
        let raw = Presentation::from_parts(alg.clone(), p1, p0, mat)?;
        Ok(minimize(&raw))
    };
    let (middle_left, middle_right) = if d == 0 {
        return Err(Error::internal("exchange pair with vanishing E(f-, f+)"));
    } else {
        (build(d, 1)?, build(1, d)?)
    };
    Ok(ExchangeData {
        f_plus: f_plus.clone(),
        f_minus: f_minus.clone(),
        d,
        middle_left,
        middle_right,
    })
}

/// The raw (unminimized) first middle term together with the inclusion
/// f+ -> f'; used to verify cone(f+ -> f') = f-^d.
pub fn first_triangle_cone<F: Field>(
    data: &ExchangeData<F>,
) -> Result<Presentation<F>> {
    let f_plus = &data.f_plus;
    let f_minus = &data.f_minus;
    let alg = f_plus.algebra().clone();
    let a = alg.as_ref();
    let es = crate::pres::e_space(f_minus, f_plus)?;
    let d = es.dim;
    let mut p1: Vec<VertexId> = Vec::new();
    let mut p0: Vec<VertexId> = Vec::new();
    for _ in 0..d {
        p1.extend_from_slice(f_minus.p1_vertices());
        p0.extend_from_slice(f_minus.p0_vertices());
    }
    p1.extend_from_slice(f_plus.p1_vertices());
    p0.extend_from_slice(f_plus.p0_vertices());
    let (m1, m0) = (f_minus.p1_vertices().len(), f_minus.p0_vertices().len());
    let (q1, q0) = (f_plus.p1_vertices().len(), f_plus.p0_vertices().len());
    let mut mat = crate::algebra::AMat::zero(a, p0.clone(), p1.clone());
    for c in 0..d {
        for i in 0..m0 {
            for j in 0..m1 {
                mat.set(c * m0 + i, c * m1 + j, f_minus.matrix().entry(i, j).clone());
            }
        }
    }
    for i in 0..q0 {
        for j in 0..q1 {
            mat.set(d * m0 + i, d * m1 + j, f_plus.matrix().entry(i, j).clone());
        }
    }
    for (l, r) in es.reps.iter().enumerate() {
        let e = es.coords.to_amat(a, r);
        for i in 0..q0 {
            for j in 0..m1 {
                mat.set(d * m0 + i, l * m1 + j, e.entry(i, j).clone());
            }
        }
    }
    let fprime_raw = Presentation::from_parts(alg.clone(), p1.clone(), p0.clone(), mat)?;
    // inclusion of f+ as the tail block
    let mut h1 = crate::algebra::AMat::zero(a, p1.clone(), f_plus.p1_vertices().to_vec());
    for j in 0..q1 {
        h1.set(d * m1 + j, j, a.unit_elem(f_plus.p1_vertices()[j]));
    }
    let mut h0 = crate::algebra::AMat::zero(a, p0.clone(), f_plus.p0_vertices().to_vec());
    for i in 0..q0 {
        h0.set(d * m0 + i, i, a.unit_elem(f_plus.p0_vertices()[i]));
    }
    let incl = ChainPair { h1, h0 };
    let mut cx = cone(&incl, f_plus, &fprime_raw);
    cx.minimize();
    cx.to_presentation()
}

/// Full Proposition-style verification of one exchange.
pub fn verify_exchange<F: Field>(data: &ExchangeData<F>) -> Result<()> {
    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::internal(format!("exchange verification failed: {what}")))
        }
    };
    check(e_dim(&data.f_plus, &data.f_minus)? == 0, "E(f+, f-) = 0")?;
    check(
        e_dim(&data.f_minus, &data.f_plus)? == data.d && data.d >= 1,
        "d = dim E(f-, f+) >= 1",
    )?;
    check(e_dim(&data.f_plus, &data.middle_left)? == 0, "E(f+, f') = 0")?;
    check(
        e_dim(&data.middle_right, &data.f_minus)? == 0,
        "E(f'', f-) = 0",
    )?;
    let fl = Presentation::direct_sum(&[&data.middle_left, &data.f_minus])?;
    check(is_rigid(&fl)?, "f' + f- rigid")?;
    let fr = Presentation::direct_sum(&[&data.middle_right, &data.f_plus])?;
    check(is_rigid(&fr)?, "f'' + f+ rigid")?;
    // cone(f+ -> f') decomposes as d copies of f-
    let cone_pres = first_triangle_cone(data)?;
    let parts = decompose(&cone_pres)?;
    check(parts.len() == data.d, "cone of f+ -> f' has d summands")?;
    for p in &parts {
        check(iso_test(p, &data.f_minus)?, "cone summand is f-")?;
    }
    Ok(())
}

/// Minimal left add(targets)-approximation of g: start from the universal
/// map assembled from a Hom_{K^b} basis into every target, then strip
/// components that factor through the rest, in deterministic order.
fn minimal_left_approximation<F: Field>(
    g: &Presentation<F>,
    targets: &[Presentation<F>],
) -> Result<Vec<(usize, ChainPair<F>)>> {
    let alg = g.algebra().clone();
    let a = alg.as_ref();
    let mut comps: Vec<(usize, ChainPair<F>)> = Vec::new();
    for (ti, t) in targets.iter().enumerate() {
        let ch = chain_homs(g, t)?;
        for r in &ch.quotient_reps {
            comps.push((ti, ch.to_pair(a, r)));
        }
    }
    'strip: loop {
        for idx in 0..comps.len() {
            if left_component_redundant(g, targets, &comps, idx)? {
                comps.remove(idx);
                continue 'strip;
            }
        }
        return Ok(comps);
    }
}

fn left_component_redundant<F: Field>(
    g: &Presentation<F>,
    targets: &[Presentation<F>],
    comps: &[(usize, ChainPair<F>)],
    idx: usize,
) -> Result<bool> {
    let alg = g.algebra().clone();
    let a = alg.as_ref();
    let fld = alg.field();
    let (ti, r) = &comps[idx];
    let target = &targets[*ti];
    let ch_gt = chain_homs(g, target)?;
    let Some(r_coords) = ch_gt.project(fld, &ch_gt.from_pair(a, r)) else {
        return Err(Error::internal("approximation component is not a chain map"));
    };
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (j, (tj, rho)) in comps.iter().enumerate() {
        if j == idx {
            continue;
        }
        let ch_ht = chain_homs(&targets[*tj], target)?;
        for sigma in &ch_ht.quotient_reps {
            let s = ch_ht.to_pair(a, sigma);
            let comp = s.compose(a, rho);
            if let Some(c) = ch_gt.project(fld, &ch_gt.from_pair(a, &comp)) {
                rows.push(c);
            }
        }
    }
    Ok(in_span(fld, &rows, &r_coords))
}

fn minimal_right_approximation<F: Field>(
    g: &Presentation<F>,
    sources: &[Presentation<F>],
) -> Result<Vec<(usize, ChainPair<F>)>> {
    let alg = g.algebra().clone();
    let a = alg.as_ref();
    let mut comps: Vec<(usize, ChainPair<F>)> = Vec::new();
    for (si, s) in sources.iter().enumerate() {
        let ch = chain_homs(s, g)?;
        for r in &ch.quotient_reps {
            comps.push((si, ch.to_pair(a, r)));
        }
    }
    'strip: loop {
        for idx in 0..comps.len() {
            if right_component_redundant(g, sources, &comps, idx)? {
                comps.remove(idx);
                continue 'strip;
            }
        }
        return Ok(comps);
    }
}

fn right_component_redundant<F: Field>(
    g: &Presentation<F>,
    sources: &[Presentation<F>],
    comps: &[(usize, ChainPair<F>)],
    idx: usize,
) -> Result<bool> {
    let alg = g.algebra().clone();
    let a = alg.as_ref();
    let fld = alg.field();
    let (si, r) = &comps[idx];
    let source = &sources[*si];
    let ch_sg = chain_homs(source, g)?;
    let Some(r_coords) = ch_sg.project(fld, &ch_sg.from_pair(a, r)) else {
        return Err(Error::internal("approximation component is not a chain map"));
    };
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for (j, (sj, rho)) in comps.iter().enumerate() {
        if j == idx {
            continue;
        }
        let ch_ss = chain_homs(source, &sources[*sj])?;
        for sigma in &ch_ss.quotient_reps {
            let s = ch_ss.to_pair(a, sigma);
            let comp = rho.compose(a, &s);
            if let Some(c) = ch_sg.project(fld, &ch_sg.from_pair(a, &comp)) {
                rows.push(c);
            }
        }
    }
    Ok(in_span(fld, &rows, &r_coords))
}

fn in_span<F: Field>(f: &F, rows: &[Vec<F::Elem>], v: &[F::Elem]) -> bool {
    if v.iter().all(|c| f.is_zero(c)) {
        return true;
    }
    if rows.is_empty() {
        return false;
    }
    let base = crate::linalg::Mat::from_rows(rows.to_vec());
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    let ext = crate::linalg::Mat::from_rows(with);
    crate::linalg::rank(f, &base) == crate::linalg::rank(f, &ext)
}

/// Replace summand k of a silting object by the other complement of the
/// rest. Returns the new object and the exchange data.
pub fn mutate<F: Field>(
    t: &SiltingObject<F>,
    k: usize,
) -> Result<(SiltingObject<F>, ExchangeData<F>)> {
    let g = t.summands()[k].clone();
    let rest: Vec<Presentation<F>> = t
        .summands()
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != k)
        .map(|(_, s)| s.clone())
        .collect();
    let cone_pres = mutation_cone(&g, &rest)?;
    let parts = decompose(&cone_pres)?;
    let gq = parts
        .first()
        .ok_or_else(|| Error::internal("mutation cone decomposed to nothing"))?
        .clone();
    for p in &parts[1..] {
        if !iso_test(p, &gq)? {
            return Err(Error::internal(
                "mutation cone has non-isotypic summands; approximation was not minimal",
            ));
        }
    }
    if iso_test(&gq, &g)? {
        return Err(Error::internal("mutation returned the removed summand"));
    }
    let mut new_summands = rest;
    new_summands.push(gq.clone());
    let new_t = SiltingObject::new(new_summands)?;
    // orientation: exactly one of E(g, g'), E(g', g) vanishes
    let e_ggq = e_dim(&g, &gq)?;
    let e_gqg = e_dim(&gq, &g)?;
    let data = match (e_ggq == 0, e_gqg == 0) {
        (true, false) => exchange_data(&g, &gq)?,
        (false, true) => exchange_data(&gq, &g)?,
        _ => {
            return Err(Error::internal(
                "complement pair without a unique vanishing direction",
            ))
        }
    };
    Ok((new_t, data))
}

fn mutation_cone<F: Field>(
    g: &Presentation<F>,
    rest: &[Presentation<F>],
) -> Result<Presentation<F>> {
    let alg = g.algebra().clone();
    let a = alg.as_ref();
    // left attempt: cone of the minimal left approximation
    let comps = minimal_left_approximation(g, rest)?;
    let (btarget, phi) = stack_left(a, g, rest, &comps);
    let mut cx = cone(&phi, g, &btarget);
    cx.minimize();
    if let Ok(p) = cx.to_presentation() {
        if !p.is_zero_object() {
            return Ok(p);
        }
    }
    // right attempt: cocone of the minimal right approximation
    let comps = minimal_right_approximation(g, rest)?;
    let (bsource, psi) = stack_right(a, g, rest, &comps);
    let mut cx = cocone(&psi, &bsource, g);
    cx.minimize();
    let p = cx.to_presentation()?;
    if p.is_zero_object() {
        return Err(Error::ConeNotTwoTerm);
    }
    Ok(p)
}

fn stack_left<F: Field>(
    a: &Algebra<F>,
    g: &Presentation<F>,
    targets: &[Presentation<F>],
    comps: &[(usize, ChainPair<F>)],
) -> (Presentation<F>, ChainPair<F>) {
    let parts: Vec<&Presentation<F>> = comps.iter().map(|(ti, _)| &targets[*ti]).collect();
    let b = if parts.is_empty() {
        Presentation::zero(g.algebra().clone())
    } else {
        Presentation::direct_sum(&parts).expect("same algebra")
    };
    let mut h1 = crate::algebra::AMat::zero(a, b.p1_vertices().to_vec(), g.p1_vertices().to_vec());
    let mut h0 = crate::algebra::AMat::zero(a, b.p0_vertices().to_vec(), g.p0_vertices().to_vec());
    let mut off1 = 0;
    let mut off0 = 0;
    for (ti, pair) in comps {
        let t = &targets[*ti];
        for i in 0..t.p1_vertices().len() {
            for j in 0..g.p1_vertices().len() {
                h1.set(off1 + i, j, pair.h1.entry(i, j).clone());
            }
        }
        for i in 0..t.p0_vertices().len() {
            for j in 0..g.p0_vertices().len() {
                h0.set(off0 + i, j, pair.h0.entry(i, j).clone());
            }
        }
        off1 += t.p1_vertices().len();
        off0 += t.p0_vertices().len();
    }
    (b, ChainPair { h1, h0 })
}

fn stack_right<F: Field>(
    a: &Algebra<F>,
    g: &Presentation<F>,
    sources: &[Presentation<F>],
    comps: &[(usize, ChainPair<F>)],
) -> (Presentation<F>, ChainPair<F>) {
    let parts: Vec<&Presentation<F>> = comps.iter().map(|(si, _)| &sources[*si]).collect();
    let b = if parts.is_empty() {
        Presentation::zero(g.algebra().clone())
    } else {
        Presentation::direct_sum(&parts).expect("same algebra")
    };
    let mut h1 = crate::algebra::AMat::zero(a, g.p1_vertices().to_vec(), b.p1_vertices().to_vec());
    let mut h0 = crate::algebra::AMat::zero(a, g.p0_vertices().to_vec(), b.p0_vertices().to_vec());
    let mut off1 = 0;
    let mut off0 = 0;
    for (si, pair) in comps {
        let s = &sources[*si];
        for i in 0..g.p1_vertices().len() {
            for j in 0..s.p1_vertices().len() {
                h1.set(i, off1 + j, pair.h1.entry(i, j).clone());
            }
        }
        for i in 0..g.p0_vertices().len() {
            for j in 0..s.p0_vertices().len() {
                h0.set(i, off0 + j, pair.h0.entry(i, j).clone());
            }
        }
        off1 += s.p1_vertices().len();
        off0 += s.p0_vertices().len();
    }
    (b, ChainPair { h1, h0 })
}

/// Enumeration caps.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub max_graph_vertices: usize,
    pub max_pool: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_graph_vertices: 5000,
            max_pool: 5000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExchangeEdge<F: Field> {
    pub from: usize,
    pub to: usize,
    /// index of the exchanged summand f+ inside the source vertex
    pub from_summand: usize,
    pub data: ExchangeData<F>,
}

pub struct ExchangeGraph<F: Field> {
    pub vertices: Vec<SiltingObject<F>>,
    pub edges: Vec<ExchangeEdge<F>>,
    pub complete: bool,
}

impl<F: Field> ExchangeGraph<F> {
    pub fn undirected_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertices.len()];
        for e in &self.edges {
            deg[e.from] += 1;
            deg[e.to] += 1;
        }
        deg
    }

    /// Distinct indecomposable summands discovered across all vertices, in
    /// canonical order: the candidate pool.
    pub fn pool(&self) -> Vec<Presentation<F>> {
        let mut pool: Vec<Presentation<F>> = Vec::new();
        for t in &self.vertices {
            for s in t.summands() {
                let mut known = false;
                for p in &pool {
                    if p.g_vector() == s.g_vector() && iso_test(p, s).unwrap_or(false) {
                        known = true;
                        break;
                    }
                }
                if !known {
                    pool.push(s.clone());
                }
            }
        }
        sort_canonical(&mut pool);
        pool
    }
}

/// Breadth-first enumeration of the exchange graph from the all-projectives
/// object. Deterministic: vertices in discovery order, one edge per
/// unordered complement pair, oriented out of the f+ side. Terminates with
/// `complete = true` exactly when the algebra is tau-tilting finite within
/// the vertex cap.
pub fn exchange_graph<F: Field>(alg: &Arc<Algebra<F>>, caps: Caps) -> Result<ExchangeGraph<F>> {
    let t0 = SiltingObject::initial(alg)?;
    let mut vertices = vec![t0];
    let mut key_map: BTreeMap<Vec<Vec<i64>>, usize> = BTreeMap::new();
    key_map.insert(vertices[0].key(), 0);
    let mut edges: Vec<ExchangeEdge<F>> = Vec::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    let mut complete = true;
    let n = alg.vertex_count();
    let mut idx = 0;
    while idx < vertices.len() {
        for k in 0..n {
            if done.contains(&(idx, k)) {
                continue;
            }
            let (new_t, data) = mutate(&vertices[idx], k)?;
            let key = new_t.key();
            let j = match key_map.get(&key) {
                Some(&j) => {
                    // g-matrix collision must be a genuine isomorphism
                    if !same_summand_multiset(vertices[j].summands(), new_t.summands())? {
                        return Err(Error::internal(
                            "distinct silting objects share a g-matrix",
                        ));
                    }
                    j
                }
                None => {
                    if vertices.len() >= caps.max_graph_vertices {
                        complete = false;
                        continue;
                    }
                    vertices.push(new_t.clone());
                    key_map.insert(key, vertices.len() - 1);
                    vertices.len() - 1
                }
            };
            done.insert((idx, k));
            // the mutated position in j: the summand absent from the rest
            let mut jpos = None;
            'outer: for (pos, s) in vertices[j].summands().iter().enumerate() {
                for (i2, r) in vertices[idx].summands().iter().enumerate() {
                    if i2 != k && iso_test(r, s)? {
                        continue 'outer;
                    }
                }
                jpos = Some(pos);
                break;
            }
            let jpos = jpos.ok_or_else(|| Error::internal("neighbor lost the new summand"))?;
            done.insert((j, jpos));
            let g_is_plus = iso_test(&vertices[idx].summands()[k], &data.f_plus)?;
            let edge = if g_is_plus {
                ExchangeEdge {
                    from: idx,
                    to: j,
                    from_summand: k,
                    data,
                }
            } else {
                ExchangeEdge {
                    from: j,
                    to: idx,
                    from_summand: jpos,
                    data,
                }
            };
            edges.push(edge);
        }
        idx += 1;
    }
    Ok(ExchangeGraph {
        vertices,
        edges,
        complete,
    })
}

/// Greedy completion of a rigid presentation to a silting object over the
/// pool discovered by exchange-graph enumeration.
pub fn complete_to_silting<F: Field>(
    f: &Presentation<F>,
    caps: Caps,
) -> Result<SiltingObject<F>> {
    let alg = f.algebra().clone();
    if !is_rigid(f)? {
        return Err(Error::NotRigid("completion needs a rigid input".into()));
    }
    let n = alg.vertex_count();
    let mut current: Vec<Presentation<F>> = Vec::new();
    for p in decompose(f)? {
        let mut dup = false;
        for c in &current {
            if iso_test(c, &p)? {
                dup = true;
                break;
            }
        }
        if !dup {
            current.push(p);
        }
    }
    if current.len() == n {
        return SiltingObject::new(current);
    }
    let graph = exchange_graph(&alg, caps)?;
    let mut pool = graph.pool();
    if pool.len() > caps.max_pool {
        pool.truncate(caps.max_pool);
    }
    'grow: while current.len() < n {
        'cand: for cand in &pool {
            if e_dim(cand, cand)? != 0 {
                continue;
            }
            for c in &current {
                if iso_test(c, cand)? || e_dim(c, cand)? != 0 || e_dim(cand, c)? != 0 {
                    continue 'cand;
                }
            }
            current.push(cand.clone());
            continue 'grow;
        }
        return Err(Error::PoolExhausted {
            cap: caps.max_pool,
            found: current.len(),
            needed: n,
        });
    }
    SiltingObject::new(current)
}

/// The two complements of an almost complete rigid presentation, with the
/// verified exchange data.
pub fn complements<F: Field>(
    f_almost: &Presentation<F>,
    caps: Caps,
) -> Result<ExchangeData<F>> {
    let alg = f_almost.algebra().clone();
    let n = alg.vertex_count();
    if !is_rigid(f_almost)? {
        return Err(Error::NotRigid("complements needs a rigid input".into()));
    }
    let parts = decompose(f_almost)?;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if iso_test(&parts[i], &parts[j])? {
                return Err(Error::NotRigid("complements needs a basic input".into()));
            }
        }
    }
    if parts.len() != n - 1 {
        return Err(Error::NotAlmostComplete {
            expected: n - 1,
            got: parts.len(),
        });
    }
    let t = complete_to_silting(f_almost, caps)?;
    let mut kpos = None;
    'outer: for (pos, s) in t.summands().iter().enumerate() {
        for p in &parts {
            if iso_test(p, s)? {
                continue 'outer;
            }
        }
        kpos = Some(pos);
        break;
    }
    let kpos = kpos.ok_or_else(|| Error::internal("completion lost the new complement"))?;
    let (_, data) = mutate(&t, kpos)?;
    verify_exchange(&data)?;
    Ok(data)
}

/// Complete a tau-rigid module to a tau-tilting module: complete its
/// minimal presentation to a silting object, then swap every shifted
/// summand for the other complement; the cokernel of the result is
/// tau-tilting and contains the input as a summand.
pub fn complete_to_tau_tilting<F: Field>(
    m: &Representation<F>,
    caps: Caps,
) -> Result<Representation<F>> {
    let t = tau(m)?;
    if hom_dim(m, &t)? != 0 {
        return Err(Error::NotRigid("module is not tau-rigid".into()));
    }
    let pres = min_presentation(m);
    let mut silt = complete_to_silting(&pres, caps)?;
    let n = m.algebra().vertex_count();
    for _ in 0..=2 * n {
        let shifted = silt
            .summands()
            .iter()
            .position(|s| s.shifted_vertex().is_some());
        let Some(k) = shifted else {
            let total = silt.direct_sum();
            return Ok(coker(&total));
        };
        let (next, _) = mutate(&silt, k)?;
        silt = next;
    }
    Err(Error::SwapCycle)
}

fn tau<F: Field>(m: &Representation<F>) -> Result<Representation<F>> {
    Ok(rep::tau(m))
}

/// A support tau-tilting pair: the module with its support-projective
/// multiplicities.
#[derive(Clone, Debug)]
pub struct SupportPair<F: Field> {
    pub module: Representation<F>,
    pub support: Vec<usize>,
}

/// Silting object -> support tau-tilting pair: shifted summands become the
/// support vector, the rest contributes its cokernel.
pub fn silting_to_pair<F: Field>(t: &SiltingObject<F>) -> Result<SupportPair<F>> {
    let alg = t.algebra().clone();
    let mut support = vec![0usize; alg.vertex_count()];
    let mut module_parts: Vec<&Presentation<F>> = Vec::new();
    for s in t.summands() {
        if let Some(v) = s.shifted_vertex() {
            support[v] += 1;
        } else {
            module_parts.push(s);
        }
    }
    let module = if module_parts.is_empty() {
        Representation::zero(alg)
    } else {
        coker(&Presentation::direct_sum(&module_parts)?)
    };
    Ok(SupportPair { module, support })
}

/// Support tau-tilting pair -> silting object: minimal presentation of the
/// module plus P_v[1] for each support multiplicity.
pub fn pair_to_silting<F: Field>(pair: &SupportPair<F>) -> Result<SiltingObject<F>> {
    let alg = pair.module.algebra().clone();
    let mut parts = vec![min_presentation(&pair.module)];
    for (v, &mult) in pair.support.iter().enumerate() {
        for _ in 0..mult {
            parts.push(Presentation::shifted_proj(alg.clone(), v));
        }
    }
    let refs: Vec<&Presentation<F>> = parts.iter().collect();
    let total = Presentation::direct_sum(&refs)?;
    SiltingObject::from_presentation(&total)
}

/// Membership test used by the pair checks: the module side of a silting
/// object must be a tau-rigid pair with its support vector.
pub fn pair_is_tau_rigid<F: Field>(pair: &SupportPair<F>) -> Result<bool> {
    rep::tau_rigid_pair_check(&pair.module, &pair.support)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraSpec, Quiver, Relation};
    use crate::field::PrimeField;

    fn fp() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn a1() -> Arc<Algebra<PrimeField>> {
        let q = Quiver::new(1, vec![]).unwrap();
        Algebra::build(AlgebraSpec::new(q, vec![], 1, fp())).unwrap()
    }

    fn a2() -> Arc<Algebra<PrimeField>> {
        let q = Quiver::new(2, vec![(0, 0, 1)]).unwrap();
        Algebra::build(AlgebraSpec::new(q, vec![], 2, fp())).unwrap()
    }

    fn loop_sq() -> Arc<Algebra<PrimeField>> {
        let q = Quiver::new(1, vec![(0, 0, 0)]).unwrap();
        let rel = Relation {
            terms: vec![(1u64, vec![0, 0])],
        };
        Algebra::build(AlgebraSpec::new(q, vec![rel], 2, fp())).unwrap()
    }

    #[test]
    fn is_silting_examples() {
        let alg = a2();
        let t0 = SiltingObject::initial(&alg).unwrap();
        assert!(is_silting(&t0.direct_sum()).unwrap());
        let t1 = SiltingObject::co_initial(&alg).unwrap();
        assert!(is_silting(&t1.direct_sum()).unwrap());
        let single = Presentation::proj(alg.clone(), 0);
        assert!(!is_silting(&single).unwrap());
    }

    #[test]
    fn a1_graph() {
        let alg = a1();
        let g = exchange_graph(&alg, Caps::default()).unwrap();
        assert!(g.complete);
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges.len(), 1);
        let e = &g.edges[0];
        // d = dim E(P[1], P[0]) = dim e A e = 1
        assert_eq!(e.data.d, 1);
        verify_exchange(&e.data).unwrap();
    }

    #[test]
    fn loop_algebra_graph_d2() {
        let alg = loop_sq();
        let g = exchange_graph(&alg, Caps::default()).unwrap();
        assert!(g.complete);
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].data.d, 2);
        verify_exchange(&g.edges[0].data).unwrap();
    }

    #[test]
    fn a2_pentagon() {
        let alg = a2();
        let g = exchange_graph(&alg, Caps::default()).unwrap();
        assert!(g.complete);
        assert_eq!(g.vertices.len(), 5);
        assert_eq!(g.edges.len(), 5);
        assert!(g.undirected_degrees().iter().all(|&d| d == 2));
        for e in &g.edges {
            verify_exchange(&e.data).unwrap();
            assert_eq!(e.data.d, 1);
        }
        for v in &g.vertices {
            assert_eq!(v.g_matrix_det().abs(), 1);
        }
    }

    #[test]
    fn mutation_is_involutive() {
        let alg = a2();
        let t0 = SiltingObject::initial(&alg).unwrap();
        for k in 0..2 {
            let (t1, _) = mutate(&t0, k).unwrap();
            // find the new summand position and mutate back
            let mut pos = None;
            'outer: for (p, s) in t1.summands().iter().enumerate() {
                for (i, r) in t0.summands().iter().enumerate() {
                    if i != k && iso_test(r, s).unwrap() {
                        continue 'outer;
                    }
                }
                pos = Some(p);
                break;
            }
            let (t2, _) = mutate(&t1, pos.unwrap()).unwrap();
            assert_eq!(t2.key(), t0.key());
        }
    }

    #[test]
    fn complements_of_p1_over_a2() {
        let alg = a2();
        let f_almost = Presentation::proj(alg.clone(), 0);
        let data = complements(&f_almost, Caps::default()).unwrap();
        // complements are P_1[0] and the S_0 presentation (P_1 -> P_0)
        let p2 = Presentation::proj(alg.clone(), 1);
        let s0 =
            min_presentation(&crate::rep::Representation::simple(alg.clone(), 0));
        let pair = [data.f_plus.clone(), data.f_minus.clone()];
        let mut found_p2 = false;
        let mut found_s0 = false;
        for p in &pair {
            if iso_test(p, &p2).unwrap() {
                found_p2 = true;
            }
            if iso_test(p, &s0).unwrap() {
                found_s0 = true;
            }
        }
        assert!(found_p2 && found_s0);
    }

    #[test]
    fn complements_errors() {
        let alg = a2();
        let t0 = SiltingObject::initial(&alg).unwrap();
        let full = t0.direct_sum();
        assert!(matches!(
            complements(&full, Caps::default()),
            Err(Error::NotAlmostComplete { .. })
        ));
        let nonrigid = Presentation::direct_sum(&[
            &Presentation::proj(alg.clone(), 0),
            &Presentation::shifted_proj(alg.clone(), 0),
        ])
        .unwrap();
        assert!(matches!(
            complements(&nonrigid, Caps::default()),
            Err(Error::NotRigid(_))
        ));
    }

    #[test]
    fn complete_examples() {
        let alg = a2();
        // empty input completes to some silting object
        let empty = Presentation::zero(alg.clone());
        let t = complete_to_silting(&empty, Caps::default()).unwrap();
        assert!(is_silting(&t.direct_sum()).unwrap());
        // completing P_1[0] keeps it
        let p2 = Presentation::proj(alg.clone(), 1);
        let t = complete_to_silting(&p2, Caps::default()).unwrap();
        assert_eq!(t.summands().len(), 2);
        assert!(t
            .summands()
            .iter()
            .any(|s| iso_test(s, &p2).unwrap()));
        // idempotent on an already silting input
        let t0 = SiltingObject::initial(&alg).unwrap();
        let back = complete_to_silting(&t0.direct_sum(), Caps::default()).unwrap();
        assert_eq!(back.key(), t0.key());
    }

    #[test]
    fn complete_to_tau_tilting_examples() {
        let alg = a2();
        let p0 = crate::rep::projective_as_rep(&alg, 0);
        let p1 = crate::rep::projective_as_rep(&alg, 1);
        // A completes to itself
        let a_mod = Representation::direct_sum(&[&p0, &p1]).unwrap();
        let out = complete_to_tau_tilting(&a_mod, Caps::default()).unwrap();
        assert!(crate::rep::rep_is_iso(&out, &a_mod).unwrap());
        // S_0 completes to S_0 + P_0
        let s0 = Representation::simple(alg.clone(), 0);
        let out = complete_to_tau_tilting(&s0, Caps::default()).unwrap();
        let expect = Representation::direct_sum(&[&s0, &p0]).unwrap();
        assert!(crate::rep::rep_is_iso(&out, &expect).unwrap());
        // P_1 completes to P_0 + P_1
        let out = complete_to_tau_tilting(&p1, Caps::default()).unwrap();
        let expect = Representation::direct_sum(&[&p0, &p1]).unwrap();
        assert!(crate::rep::rep_is_iso(&out, &expect).unwrap());
        // non tau-rigid input is rejected: none exists over A2, use mismatch
        // of the support condition instead via a zero support check
        let pair = SupportPair {
            module: s0,
            support: vec![0, 1],
        };
        assert!(pair_is_tau_rigid(&pair).unwrap());
    }

    #[test]
    fn pair_round_trip() {
        let alg = a2();
        let g = exchange_graph(&alg, Caps::default()).unwrap();
        for t in &g.vertices {
            let pair = silting_to_pair(t).unwrap();
            assert!(pair_is_tau_rigid(&pair).unwrap());
            let back = pair_to_silting(&pair).unwrap();
            assert_eq!(back.key(), t.key());
            // support observation: shifted summand forces zero cokernel fiber
            let total_coker = coker(&t.direct_sum());
            for (v, &mult) in pair.support.iter().enumerate() {
                if mult > 0 {
                    assert_eq!(total_coker.dims()[v], 0);
                }
            }
        }
    }

    #[test]
    fn maximality_matches_summand_count() {
        let alg = a2();
        let g = exchange_graph(&alg, Caps::default()).unwrap();
        let pool = g.pool();
        assert_eq!(pool.len(), 5);
        for t in &g.vertices {
            assert!(maximality_oracle(&t.direct_sum(), &pool).unwrap());
        }
        let single = Presentation::proj(alg.clone(), 0);
        assert!(!maximality_oracle(&single, &pool).unwrap());
        assert!(maximality_oracle(&single, &[]).unwrap());
    }

    #[test]
    fn kronecker_hits_cap() {
        // two arrows 0 -> 1: tau-tilting infinite
        let q = Quiver::new(2, vec![(0, 0, 1), (1, 0, 1)]).unwrap();
        let alg = Algebra::build(AlgebraSpec::new(q, vec![], 2, fp())).unwrap();
        let caps = Caps {
            max_graph_vertices: 12,
            max_pool: 100,
        };
        let g = exchange_graph(&alg, caps).unwrap();
        assert!(!g.complete);
        assert_eq!(g.vertices.len(), 12);
    }
}
