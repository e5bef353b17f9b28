//! `τ_n⁻`-orbits of projectives, n-representation-finiteness checks, and
//! endomorphism algebras of additive generators.

use std::fmt;

use crate::quiver::Quiver;

use super::basis::Algebra;
use super::field::Field;
use super::iso::is_isomorphic;
use super::matrix::Matrix;
use super::module::{direct_sum, hom_space, injective, kernel, projective, ModuleMap, Representation};
use super::resolution::{ext_dim, global_dimension, injective_dimension, GlobalDimension};
use super::translate::tau_n_minus;
use super::{HomalgError, DEFAULT_ORBIT_BOUND, DEFAULT_RESOLUTION_BOUND};

/// An indecomposable summand `τ_n^{-step} P_vertex`.
#[derive(Clone, Debug)]
pub struct Summand<F> {
    pub module: Representation<F>,
    pub vertex: usize,
    pub step: usize,
}

impl<F> Summand<F> {
    pub fn name(&self, q: &Quiver) -> String {
        match self.step {
            0 => format!("P{}", q.vertex(self.vertex).id),
            1 => format!("t-P{}", q.vertex(self.vertex).id),
            k => format!("t{k}-P{}", q.vertex(self.vertex).id),
        }
    }
}

/// `⊕_{v, i ≥ 0} τ_n^{-i} P_v`, summands up to isomorphism.
///
/// Each orbit stops at zero or at a module already seen.
pub fn cluster_tilting_candidate<F: Field>(
    alg: &Algebra<F>,
    n: usize,
    orbit_bound: usize,
) -> Result<Vec<Summand<F>>, HomalgError> {
    let q = alg.quiver();
    let mut out: Vec<Summand<F>> = Vec::new();
    for v in 0..q.vertex_count() {
        let mut x = projective(alg, v);
        let mut step = 0;
        loop {
            if out.iter().any(|s| s.module.dims == x.dims && is_isomorphic(q, &s.module, &x)) {
                break;
            }
            out.push(Summand { module: x.clone(), vertex: v, step });
            x = tau_n_minus(alg, &x, n);
            if x.is_zero() {
                break;
            }
            step += 1;
            if step > orbit_bound {
                return Err(HomalgError::OrbitBoundExceeded { bound: orbit_bound });
            }
        }
    }
    Ok(out)
}

/// Hom spaces and radicals between pairwise non-isomorphic indecomposables.
struct AddCategory<'a, F> {
    q: &'a Quiver,
    summands: Vec<Representation<F>>,
    hom: Vec<Vec<Vec<ModuleMap<F>>>>,
    rad: Vec<Vec<Vec<ModuleMap<F>>>>,
}

fn total_trace<F: Field>(f: &ModuleMap<F>) -> F {
    f.maps.iter().fold(F::zero(), |acc, m| acc.add(&m.trace()))
}

fn combine<F: Field>(basis: &[ModuleMap<F>], coeffs: &[F]) -> ModuleMap<F> {
    let mut acc = basis[0].scale(&coeffs[0]);
    for (b, c) in basis.iter().zip(coeffs).skip(1) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Indices into `targets` whose span complements `span(sub)` inside `span(targets)`.
fn complement_in<F: Field>(sub: &[Vec<F>], targets: &[Vec<F>]) -> Vec<usize> {
    if targets.is_empty() {
        return Vec::new();
    }
    let len = targets[0].len();
    let mut cols: Vec<Vec<F>> = sub.to_vec();
    cols.extend(targets.iter().cloned());
    let m = Matrix::from_columns(len, &cols);
    m.rref().pivots.into_iter().filter(|&p| p >= sub.len()).map(|p| p - sub.len()).collect()
}

impl<'a, F: Field> AddCategory<'a, F> {
    fn new(q: &'a Quiver, summands: Vec<Representation<F>>) -> Result<Self, HomalgError> {
        let k = summands.len();
        let hom: Vec<Vec<Vec<ModuleMap<F>>>> =
            (0..k).map(|z| (0..k).map(|x| hom_space(q, &summands[z], &summands[x])).collect()).collect();
        let mut rad = hom.clone();
        for z in 0..k {
            rad[z][z] = Self::endomorphism_radical(&hom[z][z]).ok_or(HomalgError::DecomposableSummand { index: z })?;
        }
        Ok(AddCategory { q, summands, hom, rad })
    }

    /// Radical of a local endomorphism ring via the trace form; `None` if
    /// the ring modulo its radical is not one-dimensional.
    fn endomorphism_radical(end: &[ModuleMap<F>]) -> Option<Vec<ModuleMap<F>>> {
        let d = end.len();
        if d == 0 {
            return None;
        }
        let gram = Matrix::from_rows(
            end.iter().map(|f| end.iter().map(|g| total_trace(&g.then(f))).collect()).collect(),
        );
        let ker = gram.kernel();
        if ker.cols() + 1 != d {
            return None;
        }
        Some(ker.columns().iter().map(|c| combine(end, c)).collect())
    }

    fn len(&self) -> usize {
        self.summands.len()
    }

    /// `{g ∘ r}` for `r ∈ rad(z, y)` and `g` in `maps[y]`, flattened.
    fn radical_composites(&self, z: usize, maps: &[Vec<ModuleMap<F>>]) -> Vec<Vec<F>> {
        let mut out = Vec::new();
        for (rads, gs) in self.rad[z].iter().zip(maps) {
            for r in rads {
                for g in gs {
                    out.push(r.then(g).flatten());
                }
            }
        }
        out
    }

    /// Minimal map from `add M` whose induced map covers `maps` modulo the
    /// radical; `maps[z]` spans the allowed maps from summand `z`.
    fn minimal_cover(&self, target: &Representation<F>, maps: &[Vec<ModuleMap<F>>]) -> (Representation<F>, ModuleMap<F>) {
        let mut parts = Vec::new();
        let mut chosen: Vec<&ModuleMap<F>> = Vec::new();
        for z in 0..self.len() {
            let sub = self.radical_composites(z, maps);
            let flat: Vec<Vec<F>> = maps[z].iter().map(ModuleMap::flatten).collect();
            for g in complement_in(&sub, &flat) {
                parts.push(self.summands[z].clone());
                chosen.push(&maps[z][g]);
            }
        }
        let source = direct_sum(self.q, &parts);
        let nv = self.q.vertex_count();
        let map_mats = (0..nv)
            .map(|i| {
                let mut m = Matrix::zeros(target.dims[i], 0);
                for g in &chosen {
                    m = m.hstack(&g.maps[i]);
                }
                m
            })
            .collect();
        (source, ModuleMap { maps: map_mats })
    }

    /// Projective dimension of the simple functor at summand `x`.
    fn simple_pd(&self, x: usize, bound: usize) -> Option<usize> {
        let rad_maps: Vec<Vec<ModuleMap<F>>> = (0..self.len()).map(|z| self.rad[z][x].clone()).collect();
        let (m1, f1) = self.minimal_cover(&self.summands[x], &rad_maps);
        if m1.is_zero() {
            return Some(0);
        }
        let (mut k, _) = kernel(self.q, &f1, &m1);
        let mut step = 1;
        loop {
            if k.is_zero() {
                return Some(step);
            }
            if step >= bound {
                return None;
            }
            let maps: Vec<Vec<ModuleMap<F>>> = self.summands.iter().map(|z| hom_space(self.q, z, &k)).collect();
            if maps.iter().all(Vec::is_empty) {
                return Some(step);
            }
            let (m, f) = self.minimal_cover(&k, &maps);
            k = kernel(self.q, &f, &m).0;
            step += 1;
        }
    }

    fn irreducible_count(&self, z: usize, x: usize) -> usize {
        let rad_maps: Vec<Vec<ModuleMap<F>>> = (0..self.len()).map(|y| self.rad[y][x].clone()).collect();
        let sub = self.radical_composites(z, &rad_maps);
        let flat: Vec<Vec<F>> = self.rad[z][x].iter().map(ModuleMap::flatten).collect();
        complement_in(&sub, &flat).len()
    }
}

/// Global dimension of `End(⊕ summands)`, computed from minimal
/// `add M`-approximations; `None` beyond `bound`.
pub fn end_global_dimension<F: Field>(
    alg: &Algebra<F>,
    summands: &[Representation<F>],
    bound: usize,
) -> Result<Option<usize>, HomalgError> {
    let cat = AddCategory::new(alg.quiver(), summands.to_vec())?;
    let mut best = 0;
    for x in 0..cat.len() {
        match cat.simple_pd(x, bound) {
            Some(d) => best = best.max(d),
            None => return Ok(None),
        }
    }
    Ok(Some(best))
}

/// Quiver, dimension and Cartan matrix of `End(⊕ summands)`.
///
/// There is one vertex per summand and an arrow `Z -> X` per irreducible
/// map `Z -> X`; `cartan[Z][X] = dim Hom(Z, X)`.
#[derive(Clone, Debug)]
pub struct EndomorphismPresentation {
    pub quiver: Quiver,
    pub dimension: usize,
    pub cartan: Vec<Vec<usize>>,
}

pub fn endomorphism_presentation<F: Field>(
    alg: &Algebra<F>,
    summands: &[Representation<F>],
    names: &[String],
) -> Result<EndomorphismPresentation, HomalgError> {
    assert_eq!(summands.len(), names.len());
    let cat = AddCategory::new(alg.quiver(), summands.to_vec())?;
    let k = cat.len();
    let mut quiver = Quiver::new();
    for name in names {
        quiver
            .add_vertex(name.clone(), None)
            .map_err(|e| HomalgError::InvalidRepresentation(e.to_string()))?;
    }
    for z in 0..k {
        for x in 0..k {
            let count = cat.irreducible_count(z, x);
            for c in 0..count {
                let id = if count == 1 { format!("{}>{}", names[z], names[x]) } else { format!("{}>{}#{}", names[z], names[x], c + 1) };
                quiver.add_arrow(id, z, x, None).expect("fresh arrow id");
            }
        }
    }
    let cartan: Vec<Vec<usize>> = (0..k).map(|z| (0..k).map(|x| cat.hom[z][x].len()).collect()).collect();
    let dimension = cartan.iter().flatten().sum();
    Ok(EndomorphismPresentation { quiver, dimension, cartan })
}

#[derive(Clone, Debug)]
pub struct NrfReport {
    pub n: usize,
    pub gldim: GlobalDimension,
    pub summands: usize,
    pub cogenerator: bool,
    pub rigid: bool,
    pub end_gldim: Option<usize>,
    pub note: Option<String>,
}

impl NrfReport {
    pub fn gldim_ok(&self) -> bool {
        self.gldim.at_most(self.n)
    }

    pub fn end_gldim_ok(&self) -> bool {
        matches!(self.end_gldim, Some(d) if d <= self.n + 1)
    }

    pub fn is_nrf(&self) -> bool {
        self.gldim_ok() && self.cogenerator && self.rigid && self.end_gldim_ok()
    }
}

impl fmt::Display for NrfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = self.end_gldim.map_or_else(|| "unknown".to_string(), |d| d.to_string());
        writeln!(f, "gldim: {} (<= {}: {})", self.gldim, self.n, self.gldim_ok())?;
        writeln!(f, "summands: {}", self.summands)?;
        writeln!(f, "cogenerator: {}", self.cogenerator)?;
        writeln!(f, "{}-rigid: {}", self.n, self.rigid)?;
        writeln!(f, "end gldim: {} (<= {}: {})", end, self.n + 1, self.end_gldim_ok())?;
        if let Some(note) = &self.note {
            writeln!(f, "note: {note}")?;
        }
        write!(f, "{}-representation-finite: {}", self.n, self.is_nrf())
    }
}

/// Checks that `⊕ τ_n^{-i} P_v` is an n-cluster-tilting module and that
/// `gldim ≤ n`.
pub fn verify_nrf<F: Field>(alg: &Algebra<F>, n: usize) -> NrfReport {
    let q = alg.quiver();
    let gldim = global_dimension(alg, DEFAULT_RESOLUTION_BOUND);
    let mut report =
        NrfReport { n, gldim, summands: 0, cogenerator: false, rigid: false, end_gldim: None, note: None };
    let summands = match cluster_tilting_candidate(alg, n, DEFAULT_ORBIT_BOUND) {
        Ok(s) => s,
        Err(e) => {
            report.note = Some(e.to_string());
            return report;
        }
    };
    report.summands = summands.len();
    let mods: Vec<Representation<F>> = summands.into_iter().map(|s| s.module).collect();
    report.cogenerator = (0..q.vertex_count()).all(|v| {
        let inj = injective(alg, v);
        mods.iter().any(|m| m.dims == inj.dims && is_isomorphic(q, m, &inj))
    });
    report.rigid = mods.iter().all(|x| mods.iter().all(|y| (1..n).all(|i| ext_dim(alg, x, y, i) == 0)));
    match end_global_dimension(alg, &mods, n + 2) {
        Ok(d) => report.end_gldim = d,
        Err(e) => report.note = Some(e.to_string()),
    }
    report
}

/// Every indecomposable projective is injective.
pub fn is_self_injective<F: Field>(alg: &Algebra<F>) -> bool {
    let q = alg.quiver();
    let nv = q.vertex_count();
    let injectives: Vec<_> = (0..nv).map(|v| injective(alg, v)).collect();
    let mut hit = vec![false; nv];
    for v in 0..nv {
        let p = projective(alg, v);
        match (0..nv).find(|&u| !hit[u] && injectives[u].dims == p.dims && is_isomorphic(q, &p, &injectives[u])) {
            Some(u) => hit[u] = true,
            None => return false,
        }
    }
    true
}

/// `P_v` is simple, `id P_v = n`, and `Ext^i(D A, P_v) = 0` for `0 ≤ i < n`.
pub fn is_napr_tiltable<F: Field>(alg: &Algebra<F>, v: usize, n: usize) -> bool {
    let q = alg.quiver();
    if !q.is_source(v) {
        return false;
    }
    let p = projective(alg, v);
    if injective_dimension(alg, &p, DEFAULT_RESOLUTION_BOUND) != Ok(Some(n)) {
        return false;
    }
    (0..q.vertex_count()).all(|u| {
        let i = injective(alg, u);
        (0..n).all(|k| ext_dim(alg, &i, &p, k) == 0)
    })
}
