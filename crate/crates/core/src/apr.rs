//! APR tilting: the 2-APR quiver transformation, one-point coextensions and
//! the n-APR tilting module `T = τ_n⁻P ⊕ Q`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use thiserror::Error;

use crate::homalg::cluster::{endomorphism_presentation, is_napr_tiltable, EndomorphismPresentation};
use crate::homalg::matrix::rank_of_vectors;
use crate::homalg::module::{direct_sum, hom_dim, injective, projective, Representation};
use crate::homalg::resolution::{ext_dim, injective_dimension, projective_dimension};
use crate::homalg::translate::tau_n_minus;
use crate::homalg::{field, Algebra, HomalgError, Rational, DEFAULT_RESOLUTION_BOUND};
use crate::quiver::{enumerate_paths, AlgebraPresentation, Path, PresentationError, Quiver, RelationElement};

#[derive(Debug, Error)]
pub enum AprError {
    #[error("vertex {0} is not a source")]
    NotASource(String),
    #[error("vertex {0} is not a sink")]
    NotASink(String),
    #[error("relations are not minimal in degree {degree}")]
    NotMinimalRelations { degree: usize },
    #[error("not tiltable: {0}")]
    NotTiltable(String),
    #[error("the one-point criterion needs n >= 2, got {0}")]
    UnsupportedDegree(usize),
    #[error("malformed presentation matrix: {0}")]
    MalformedPresentationMatrix(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Homalg(#[from] HomalgError),
}

/// The data `(Λ, v, n)` of an n-APR tilt at the simple projective `P_v`.
#[derive(Clone, Debug)]
pub struct TiltSpec {
    pub base: AlgebraPresentation,
    pub vertex: usize,
    pub n: usize,
}

/// Fails unless the relation images are linearly independent modulo
/// `JI + IJ`, degree by degree in the free path algebra.
pub fn check_minimal_relations(p: &AlgebraPresentation) -> Result<(), AprError> {
    let q = &p.quiver;
    let top = p.max_relation_degree();
    if top == 0 {
        return Ok(());
    }
    let paths = enumerate_paths(q, top);
    let mut by_degree: BTreeMap<usize, Vec<&RelationElement>> = BTreeMap::new();
    for r in &p.relations {
        if let Some(d) = r.degree() {
            by_degree.entry(d).or_default().push(r);
        }
    }
    for (&d, rels) in &by_degree {
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        for ((_, _, len), ps) in &paths {
            if *len == d {
                for path in ps {
                    let next = index.len();
                    index.entry(path.arrows().to_vec()).or_insert(next);
                }
            }
        }
        let encode = |terms: &mut dyn Iterator<Item = (Rational, Vec<usize>)>| {
            let mut v = vec![Rational::zero(); index.len()];
            for (c, arrows) in terms {
                v[index[&arrows]] += c;
            }
            v
        };
        let mut lower: Vec<Vec<Rational>> = Vec::new();
        for r in p.relations.iter().filter(|r| r.degree().is_some_and(|e| e < d)) {
            let e = r.degree().unwrap();
            let (s, t) = (r.source().unwrap(), r.target().unwrap());
            for k in 0..=(d - e) {
                let befores = paths.iter().filter(|((_, tt, len), _)| *tt == s && *len == k).flat_map(|(_, ps)| ps);
                for before in befores {
                    let afters =
                        paths.iter().filter(|((ss, _, len), _)| *ss == t && *len == d - e - k).flat_map(|(_, ps)| ps);
                    for after in afters {
                        let mut terms = r.terms.iter().map(|(c, path)| {
                            let mut arrows = before.arrows().to_vec();
                            arrows.extend_from_slice(path.arrows());
                            arrows.extend_from_slice(after.arrows());
                            (c.clone(), arrows)
                        });
                        lower.push(encode(&mut terms));
                    }
                }
            }
        }
        let base = rank_of_vectors(index.len(), &lower);
        let mut all = lower;
        for r in rels {
            all.push(encode(&mut r.terms.iter().map(|(c, path)| (c.clone(), path.arrows().to_vec()))));
        }
        if rank_of_vectors(index.len(), &all) != base + rels.len() {
            return Err(AprError::NotMinimalRelations { degree: d });
        }
    }
    Ok(())
}

fn fresh_id(q: &Quiver, stem: String) -> String {
    let mut id = stem.clone();
    let mut k = 1;
    while q.arrow_by_id(&id).is_some() {
        k += 1;
        id = format!("{stem}{k}");
    }
    id
}

/// The 2-APR tilt `kQ'/(R')` at the source `v`.
///
/// Arrows out of `v` are replaced by one arrow `r*: e(r) -> v` per relation
/// `r` starting at `v`, and every arrow `a` out of `v` contributes the
/// relation `a* = Σ_r r_a·r*`, where `r = Σ_a a·r_a`.
pub fn two_apr_tilt_presentation(
    p: &AlgebraPresentation,
    v: usize,
    check_tiltable: bool,
) -> Result<AlgebraPresentation, AprError> {
    p.validate()?;
    let q = &p.quiver;
    let vid = q.vertex(v).id.clone();
    if !q.is_source(v) {
        return Err(AprError::NotASource(vid));
    }
    check_minimal_relations(p)?;
    let starting: Vec<&RelationElement> = p.relations_from(v).map(|(_, r)| r).collect();
    if starting.is_empty() {
        return Err(AprError::NotTiltable(format!("no relation starts at {vid}")));
    }
    if check_tiltable {
        let alg = Algebra::<Rational>::new(p)?;
        if !is_napr_tiltable(&alg, v, 2) {
            return Err(AprError::NotTiltable(format!("P{vid} does not admit a 2-APR tilt")));
        }
    }

    let (mut quiver, map) = q.filter_arrows(|a| q.arrow(a).source != v);
    let mut star = Vec::with_capacity(starting.len());
    for (k, r) in starting.iter().enumerate() {
        let id = fresh_id(&quiver, format!("r{}*", k + 1));
        star.push(quiver.add_arrow(id, r.target().unwrap(), v, None).expect("valid endpoints"));
    }

    let mut relations: Vec<RelationElement> = p
        .relations
        .iter()
        .filter(|r| r.source() != Some(v))
        .map(|r| {
            RelationElement::new(
                r.terms.iter().map(|(c, path)| (c.clone(), path.remap(&map).expect("arrow kept"))).collect(),
            )
        })
        .collect();

    for a in q.arrows_from(v) {
        let mut acc: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (k, r) in starting.iter().enumerate() {
            for (c, path) in &r.terms {
                if path.arrows()[0] != a {
                    continue;
                }
                let mut arrows: Vec<usize> = path.arrows()[1..].iter().map(|&b| map[b].expect("arrow kept")).collect();
                arrows.push(star[k]);
                *acc.entry(arrows).or_insert_with(Rational::zero) += c;
            }
        }
        let terms: Vec<(Rational, Path)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(arrows, c)| (c, Path::from_arrows(&quiver, arrows).expect("composable")))
            .collect();
        if !terms.is_empty() {
            relations.push(RelationElement::new(terms));
        }
    }
    let out = AlgebraPresentation::new(quiver, relations);
    out.validate()?;
    Ok(out)
}

/// The 2-APR cotilt at the sink `v`: the tilt of the opposite presentation,
/// read back through the opposite.
pub fn two_apr_cotilt_presentation(
    p: &AlgebraPresentation,
    v: usize,
    check_tiltable: bool,
) -> Result<AlgebraPresentation, AprError> {
    if !p.quiver.is_sink(v) {
        return Err(AprError::NotASink(p.quiver.vertex(v).id.clone()));
    }
    two_apr_tilt_presentation(&p.opposite(), v, check_tiltable).map(|t| t.opposite())
}

/// A matrix of path combinations `r_{nℓ} ∈ e_{j_n} Λ e_{i_ℓ}`, presenting
/// `⊕ P_{j_n} -> ⊕ P_{i_ℓ} -> M -> 0`.
#[derive(Clone, Debug, Default)]
pub struct PresentationMatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `entries[n][ℓ]`; an empty list is zero.
    pub entries: Vec<Vec<Vec<(Rational, Path)>>>,
}

/// Adds a vertex `new_id`, arrows `a_ℓ: i_ℓ -> new_id` and the relations
/// `Σ_ℓ r_{nℓ} a_ℓ`, one per nonzero row.
pub fn one_point_coextension(
    delta: &AlgebraPresentation,
    m: &PresentationMatrix,
    new_id: &str,
) -> Result<AlgebraPresentation, AprError> {
    let bad = |s: String| AprError::MalformedPresentationMatrix(s);
    let q = &delta.quiver;
    if m.entries.len() != m.rows.len() {
        return Err(bad(format!("{} rows declared, {} given", m.rows.len(), m.entries.len())));
    }
    if let Some(&v) = m.rows.iter().chain(&m.cols).find(|&&v| v >= q.vertex_count()) {
        return Err(bad(format!("vertex #{v} out of range")));
    }
    let mut quiver = q.clone();
    let new = quiver.add_vertex(new_id, None).map_err(|e| bad(e.to_string()))?;
    let mut attach = Vec::with_capacity(m.cols.len());
    for (l, &i) in m.cols.iter().enumerate() {
        let id = fresh_id(&quiver, format!("a{}", l + 1));
        attach.push(quiver.add_arrow(id, i, new, None).expect("valid endpoints"));
    }
    let mut relations = delta.relations.clone();
    for (row, (&j, entries)) in m.rows.iter().zip(&m.entries).enumerate() {
        if entries.len() != m.cols.len() {
            return Err(bad(format!("row {row} has {} entries, expected {}", entries.len(), m.cols.len())));
        }
        let mut terms = Vec::new();
        let mut degree = None;
        for (l, entry) in entries.iter().enumerate() {
            for (c, path) in entry {
                if path.source() != j || path.target() != m.cols[l] {
                    return Err(bad(format!("entry ({row}, {l}) does not run from row to column vertex")));
                }
                if *degree.get_or_insert(path.len()) != path.len() {
                    return Err(bad(format!("row {row} is not homogeneous")));
                }
                if c.is_zero() {
                    continue;
                }
                let mut arrows = path.arrows().to_vec();
                arrows.push(attach[l]);
                terms.push((c.clone(), Path::from_arrows(&quiver, arrows).map_err(|e| bad(e.to_string()))?));
            }
        }
        if !terms.is_empty() {
            relations.push(RelationElement::new(terms));
        }
    }
    let out = AlgebraPresentation::new(quiver, relations);
    out.validate()?;
    Ok(out)
}

/// `T = τ_n⁻P_v ⊕ ⊕_{u ≠ v} P_u`, summand `k` sitting at vertex `k`.
#[derive(Clone, Debug)]
pub struct TiltingModule<F> {
    pub vertex: usize,
    pub n: usize,
    pub summands: Vec<Representation<F>>,
}

impl<F: field::Field> TiltingModule<F> {
    pub fn module(&self, q: &Quiver) -> Representation<F> {
        direct_sum(q, &self.summands)
    }

    pub fn names(&self, q: &Quiver) -> Vec<String> {
        q.vertices().iter().map(|v| v.id.clone()).collect()
    }

    /// `pd T`, `Ext^i(T, Λ) = 0` for `0 < i < n` and `Hom(τ_n⁻P, Λ) = 0`.
    pub fn checks(&self, alg: &Algebra<F>) -> Result<TiltChecks, HomalgError> {
        let q = alg.quiver();
        let t = self.module(q);
        let lambda: Vec<_> = (0..q.vertex_count()).map(|u| projective(alg, u)).collect();
        let pd = projective_dimension(alg, &t, DEFAULT_RESOLUTION_BOUND)?;
        let ext_vanishes = lambda.iter().all(|p| (1..self.n).all(|i| ext_dim(alg, &t, p, i) == 0));
        let hom_vanishes = lambda.iter().all(|p| hom_dim(q, &self.summands[self.vertex], p) == 0);
        Ok(TiltChecks { pd, ext_vanishes, hom_vanishes })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TiltChecks {
    pub pd: Option<usize>,
    pub ext_vanishes: bool,
    pub hom_vanishes: bool,
}

impl TiltChecks {
    pub fn hold_for(&self, n: usize) -> bool {
        self.pd == Some(n) && self.ext_vanishes && self.hom_vanishes
    }
}

pub fn apr_tilting_module<F: field::Field>(alg: &Algebra<F>, v: usize, n: usize) -> Result<TiltingModule<F>, AprError> {
    if !is_napr_tiltable(alg, v, n) {
        return Err(AprError::NotTiltable(format!("P{} does not admit a {n}-APR tilt", alg.quiver().vertex(v).id)));
    }
    let summands = (0..alg.vertex_count())
        .map(|u| if u == v { tau_n_minus(alg, &projective(alg, v), n) } else { projective(alg, u) })
        .collect();
    Ok(TiltingModule { vertex: v, n, summands })
}

/// Quiver, dimension and Cartan matrix of the n-APR tilt `End(T)^op`,
/// vertices named as in the base quiver.
pub fn tilted_algebra_homological<F: field::Field>(
    alg: &Algebra<F>,
    v: usize,
    n: usize,
) -> Result<EndomorphismPresentation, AprError> {
    let t = apr_tilting_module(alg, v, n)?;
    Ok(endomorphism_presentation(alg, &t.summands, &t.names(alg.quiver()))?)
}

/// `Λ_P`: the vertex `v` deleted along with its arrows and the relations
/// through it.
pub fn delete_vertex(p: &AlgebraPresentation, v: usize) -> (AlgebraPresentation, Vec<Option<usize>>) {
    let q = &p.quiver;
    let mut quiver = Quiver::new();
    let mut vmap = vec![None; q.vertex_count()];
    for (u, vert) in q.vertices().iter().enumerate() {
        if u != v {
            vmap[u] = Some(quiver.add_vertex(vert.id.clone(), vert.label.clone()).expect("distinct ids"));
        }
    }
    let mut amap = vec![None; q.arrow_count()];
    for (a, arr) in q.arrows().iter().enumerate() {
        if let (Some(s), Some(t)) = (vmap[arr.source], vmap[arr.target]) {
            amap[a] = Some(quiver.add_arrow(arr.id.clone(), s, t, arr.ty).expect("distinct ids"));
        }
    }
    let relations = p
        .relations
        .iter()
        .filter_map(|r| {
            let terms: Option<Vec<_>> = r
                .terms
                .iter()
                .map(|(c, path)| {
                    let arrows: Option<Vec<usize>> = path.arrows().iter().map(|&a| amap[a]).collect();
                    Some((c.clone(), Path::from_arrows(&quiver, arrows?).expect("composable")))
                })
                .collect();
            terms.map(RelationElement::new)
        })
        .collect();
    (AlgebraPresentation::new(quiver, relations), vmap)
}

/// The conditions on `M_P = Hom(P, Q)` over `Λ_P^op`, evaluated on the
/// `Λ_P`-module `D M_P` (the injective `I_v` restricted away from `v`):
/// `id D M_P = n-1`, `Ext^i(D Λ_P, D M_P) = 0` for `0 ≤ i ≤ n-2`,
/// `Ext^i(D M_P, D M_P) = 0` for `1 ≤ i ≤ n-2`, and `End(D M_P) = k`.
/// Only meaningful for `n ≥ 2`.
pub fn mp_conditions_hold(p: &AlgebraPresentation, v: usize, n: usize) -> Result<bool, AprError> {
    if n < 2 {
        return Err(AprError::UnsupportedDegree(n));
    }
    let q = &p.quiver;
    if !q.is_source(v) || q.vertex_count() < 2 {
        return Ok(false);
    }
    let alg = Algebra::<Rational>::new(p)?;
    let iv = injective(&alg, v);
    let (pp, vmap) = delete_vertex(p, v);
    let sub = Algebra::<Rational>::new(&pp)?;
    let sq = sub.quiver();
    let dims: Vec<usize> = (0..q.vertex_count()).filter(|&u| u != v).map(|u| iv.dims[u]).collect();
    let mut mats = Vec::with_capacity(sq.arrow_count());
    for arr in sq.arrows() {
        let old = q.arrow_by_id(&arr.id).expect("arrow kept");
        mats.push(iv.mats[old].clone());
    }
    debug_assert!(vmap.iter().flatten().count() == dims.len());
    let dm = Representation::new(sq, dims, mats)?;
    if hom_dim(sq, &dm, &dm) != 1 {
        return Ok(false);
    }
    match injective_dimension(&sub, &dm, DEFAULT_RESOLUTION_BOUND) {
        Ok(Some(d)) if d == n - 1 => {}
        _ => return Ok(false),
    }
    let injectives: Vec<_> = (0..sq.vertex_count()).map(|u| injective(&sub, u)).collect();
    let lambda_vanishes = injectives.iter().all(|i| (0..n - 1).all(|k| ext_dim(&sub, i, &dm, k) == 0));
    let self_vanishes = (1..n - 1).all(|k| ext_dim(&sub, &dm, &dm, k) == 0);
    Ok(lambda_vanishes && self_vanishes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::iso::AlgebraSignature;
    use crate::homalg::module::simple;
    use crate::homalg::is_isomorphic;
    use num_traits::One;

    fn linear(n: usize, zero: &[(usize, usize)]) -> AlgebraPresentation {
        let mut q = Quiver::new();
        for i in 1..=n {
            q.add_vertex(i.to_string(), None).unwrap();
        }
        for i in 1..n {
            q.add_arrow(format!("a{i}"), i - 1, i, None).unwrap();
        }
        let rels = zero
            .iter()
            .map(|&(s, len)| RelationElement::monomial(Path::from_arrows(&q, (s..s + len).collect()).unwrap()))
            .collect();
        AlgebraPresentation::new(q, rels)
    }

    fn sig(p: &AlgebraPresentation) -> AlgebraSignature {
        AlgebraSignature::of_algebra(&Algebra::<Rational>::new(p).unwrap())
    }

    fn sig_end(e: &EndomorphismPresentation) -> AlgebraSignature {
        AlgebraSignature::from_parts(&e.quiver, e.dimension, e.cartan.clone())
    }

    #[test]
    fn tilt_of_a3_rad_square() {
        let p = linear(3, &[(0, 2)]);
        let t = two_apr_tilt_presentation(&p, 0, true).unwrap();
        let q = &t.quiver;
        assert_eq!(q.arrow_count(), 2);
        let star = q.arrow_by_id("r1*").unwrap();
        assert_eq!((q.vertex(q.arrow(star).source).id.as_str(), q.vertex(q.arrow(star).target).id.as_str()), ("3", "1"));
        assert_eq!(t.relations.len(), 1);
        assert_eq!(t.relations[0].display(q), format!("(1)·{}", Path::from_ids(q, &["a2", "r1*"]).unwrap().display(q)));
    }

    #[test]
    fn tilt_rejects_bad_input() {
        let a2 = linear(2, &[]);
        assert!(matches!(two_apr_tilt_presentation(&a2, 1, false), Err(AprError::NotASource(_))));
        assert!(matches!(two_apr_tilt_presentation(&a2, 0, false), Err(AprError::NotTiltable(_))));
        let mut p = linear(3, &[(0, 2)]);
        p.relations.push(p.relations[0].clone());
        assert!(matches!(two_apr_tilt_presentation(&p, 0, false), Err(AprError::NotMinimalRelations { degree: 2 })));
    }

    #[test]
    fn minimality_sees_generated_relations() {
        let mut p = linear(4, &[(0, 2)]);
        check_minimal_relations(&p).unwrap();
        p.relations.push(RelationElement::monomial(Path::from_arrows(&p.quiver, vec![0, 1, 2]).unwrap()));
        assert!(matches!(check_minimal_relations(&p), Err(AprError::NotMinimalRelations { degree: 3 })));
    }

    #[test]
    fn cotilt_undoes_tilt() {
        let p = linear(3, &[(0, 2)]);
        let t = two_apr_tilt_presentation(&p, 0, false).unwrap();
        let back = two_apr_cotilt_presentation(&t, 0, false).unwrap();
        assert!(sig(&back).agrees_with(&sig(&p)));
    }

    #[test]
    fn coextension_examples() {
        let mut q = Quiver::new();
        q.add_vertex("1", None).unwrap();
        let point = AlgebraPresentation::path_algebra(q);
        let m = PresentationMatrix { rows: vec![], cols: vec![0], entries: vec![] };
        let a2 = one_point_coextension(&point, &m, "2").unwrap();
        assert_eq!((a2.quiver.vertex_count(), a2.quiver.arrow_count(), a2.relations.len()), (2, 1, 0));

        let a2 = linear(2, &[]);
        let arrow = Path::arrow(&a2.quiver, 0);
        let m = PresentationMatrix { rows: vec![0], cols: vec![1], entries: vec![vec![vec![(Rational::one(), arrow)]]] };
        let a3 = one_point_coextension(&a2, &m, "3").unwrap();
        assert!(sig(&a3).agrees_with(&sig(&linear(3, &[(0, 2)]))));

        let empty = one_point_coextension(&a2, &PresentationMatrix::default(), "3").unwrap();
        assert_eq!(empty.quiver.arrow_count(), 1);
        assert!(!empty.quiver.is_connected());

        let wrong = PresentationMatrix { rows: vec![1], cols: vec![1], entries: vec![vec![vec![(Rational::one(), Path::arrow(&a2.quiver, 0))]]] };
        assert!(matches!(one_point_coextension(&a2, &wrong, "3"), Err(AprError::MalformedPresentationMatrix(_))));
    }

    #[test]
    fn reflection_of_a2() {
        let p = linear(2, &[]);
        let alg = Algebra::<Rational>::new(&p).unwrap();
        let t = apr_tilting_module(&alg, 0, 1).unwrap();
        assert!(is_isomorphic(alg.quiver(), &t.summands[0], &simple(alg.quiver(), 1)));
        let e = tilted_algebra_homological(&alg, 0, 1).unwrap();
        let a = e.quiver.arrow(0);
        assert_eq!((a.source, a.target), (1, 0));
        assert!(matches!(apr_tilting_module(&alg, 1, 1), Err(AprError::NotTiltable(_))));
        assert!(matches!(apr_tilting_module(&alg, 0, 2), Err(AprError::NotTiltable(_))));
    }

    #[test]
    fn homological_tilt_matches_quiver_tilt() {
        let p = linear(3, &[(0, 2)]);
        let alg = Algebra::<Rational>::new(&p).unwrap();
        let t = apr_tilting_module(&alg, 0, 2).unwrap();
        assert!(t.checks(&alg).unwrap().hold_for(2));
        let e = tilted_algebra_homological(&alg, 0, 2).unwrap();
        let quiver_tilt = two_apr_tilt_presentation(&p, 0, false).unwrap();
        assert!(sig_end(&e).agrees_with(&sig(&quiver_tilt)));
    }

    #[test]
    fn mp_conditions_agree_with_tiltability() {
        for (p, v) in [(linear(3, &[(0, 2)]), 0), (linear(2, &[]), 0), (linear(4, &[(0, 2), (1, 2)]), 0), (linear(3, &[]), 0)] {
            let alg = Algebra::<Rational>::new(&p).unwrap();
            for n in 2..=3 {
                assert_eq!(mp_conditions_hold(&p, v, n).unwrap(), is_napr_tiltable(&alg, v, n), "n = {n}");
            }
            assert!(matches!(mp_conditions_hold(&p, v, 1), Err(AprError::UnsupportedDegree(1))));
        }
    }
}
