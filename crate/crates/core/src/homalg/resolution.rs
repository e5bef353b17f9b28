//! Minimal projective resolutions, Ext, and projective, injective and
//! global dimensions.

use super::basis::Algebra;
use super::field::Field;
use super::iso::is_isomorphic;
use super::matrix::{rank_of_vectors, Matrix};
use super::module::{hom_space, kernel, map_from_projective_sum, projective_sum, simple, ModuleMap, Representation};
use super::translate::dual;
use super::HomalgError;

/// A projective cover `⊕ P_{vertices[k]} -> M`.
#[derive(Clone, Debug)]
pub struct Cover<F> {
    pub vertices: Vec<usize>,
    /// Images of the generators, `generators[k] ∈ M_{vertices[k]}`.
    pub generators: Vec<Vec<F>>,
    pub module: Representation<F>,
    pub map: ModuleMap<F>,
}

/// Top generators: at each vertex, standard vectors completing `rad M`.
pub fn top_generators<F: Field>(alg: &Algebra<F>, m: &Representation<F>) -> Vec<(usize, Vec<F>)> {
    let q = alg.quiver();
    let mut out = Vec::new();
    for i in 0..q.vertex_count() {
        if m.dims[i] == 0 {
            continue;
        }
        let mut rad = Matrix::zeros(m.dims[i], 0);
        for a in q.arrows_from(i) {
            rad = rad.hstack(&m.mats[a]);
        }
        for c in rad.complement_indices() {
            let mut v = vec![F::zero(); m.dims[i]];
            v[c] = F::one();
            out.push((i, v));
        }
    }
    out
}

pub fn projective_cover<F: Field>(alg: &Algebra<F>, m: &Representation<F>) -> Cover<F> {
    let (vertices, generators): (Vec<_>, Vec<_>) = top_generators(alg, m).into_iter().unzip();
    let module = projective_sum(alg, &vertices);
    let map = map_from_projective_sum(alg, &vertices, &generators, m);
    Cover { vertices, generators, module, map }
}

/// `Ω M` with its inclusion into the projective cover.
pub fn syzygy<F: Field>(alg: &Algebra<F>, m: &Representation<F>) -> (Representation<F>, ModuleMap<F>, Cover<F>) {
    let cover = projective_cover(alg, m);
    let (k, incl) = kernel(alg.quiver(), &cover.map, &cover.module);
    (k, incl, cover)
}

pub fn nth_syzygy<F: Field>(alg: &Algebra<F>, m: &Representation<F>, k: usize) -> Representation<F> {
    let mut cur = m.clone();
    for _ in 0..k {
        if cur.is_zero() {
            break;
        }
        cur = syzygy(alg, &cur).0;
    }
    cur
}

/// `modules[k] = Ω^k M`, `covers[k]` the vertices of `P_k -> Ω^k M`, and
/// `inclusions[k]: Ω^{k+1} M -> P_k`.
#[derive(Clone, Debug)]
pub struct Resolution<F> {
    pub modules: Vec<Representation<F>>,
    pub covers: Vec<Vec<usize>>,
    pub inclusions: Vec<ModuleMap<F>>,
}

impl<F> Resolution<F> {
    /// Projective dimension; `None` for the zero module.
    pub fn length(&self) -> Option<usize> {
        self.covers.len().checked_sub(1)
    }
}

pub fn min_resolution<F: Field>(
    alg: &Algebra<F>,
    m: &Representation<F>,
    bound: usize,
) -> Result<Resolution<F>, HomalgError> {
    let mut res = Resolution { modules: vec![m.clone()], covers: Vec::new(), inclusions: Vec::new() };
    let mut cur = m.clone();
    while !cur.is_zero() {
        if res.covers.len() > bound {
            return Err(HomalgError::ResolutionBoundExceeded { bound });
        }
        let (k, incl, cover) = syzygy(alg, &cur);
        res.covers.push(cover.vertices);
        res.inclusions.push(incl);
        res.modules.push(k.clone());
        cur = k;
    }
    Ok(res)
}

pub fn projective_dimension<F: Field>(
    alg: &Algebra<F>,
    m: &Representation<F>,
    bound: usize,
) -> Result<Option<usize>, HomalgError> {
    let mut cur = m.clone();
    let mut k = 0;
    if cur.is_zero() {
        return Ok(None);
    }
    loop {
        let next = syzygy(alg, &cur).0;
        if next.is_zero() {
            return Ok(Some(k));
        }
        k += 1;
        if k > bound {
            return Err(HomalgError::ResolutionBoundExceeded { bound });
        }
        cur = next;
    }
}

pub fn injective_dimension<F: Field>(
    alg: &Algebra<F>,
    m: &Representation<F>,
    bound: usize,
) -> Result<Option<usize>, HomalgError> {
    projective_dimension(&alg.opposite(), &dual(m), bound)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlobalDimension {
    Finite(usize),
    /// No resolution of length at most the bound; `periodic` when a syzygy
    /// repeated up to isomorphism.
    Unbounded { periodic: bool },
}

impl GlobalDimension {
    pub fn at_most(self, n: usize) -> bool {
        matches!(self, GlobalDimension::Finite(d) if d <= n)
    }
}

impl std::fmt::Display for GlobalDimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GlobalDimension::Finite(d) => write!(f, "{d}"),
            GlobalDimension::Unbounded { periodic: true } => write!(f, "infinite (periodic syzygies)"),
            GlobalDimension::Unbounded { periodic: false } => write!(f, "exceeds bound"),
        }
    }
}

fn simple_pd<F: Field>(alg: &Algebra<F>, v: usize, bound: usize) -> GlobalDimension {
    let q = alg.quiver();
    let mut history: Vec<Representation<F>> = Vec::new();
    let mut cur = simple::<F>(q, v);
    for k in 0..=bound {
        let next = syzygy(alg, &cur).0;
        if next.is_zero() {
            return GlobalDimension::Finite(k);
        }
        if history.iter().any(|h| h.dims == next.dims && is_isomorphic(q, h, &next)) {
            return GlobalDimension::Unbounded { periodic: true };
        }
        history.push(next.clone());
        cur = next;
    }
    GlobalDimension::Unbounded { periodic: false }
}

/// Maximum projective dimension of the simples.
pub fn global_dimension<F: Field>(alg: &Algebra<F>, bound: usize) -> GlobalDimension {
    let mut best = 0;
    for v in 0..alg.vertex_count() {
        match simple_pd(alg, v, bound) {
            GlobalDimension::Finite(d) => best = best.max(d),
            other => return other,
        }
    }
    GlobalDimension::Finite(best)
}

/// `dim Ext^i(M, N)`.
pub fn ext_dim<F: Field>(alg: &Algebra<F>, m: &Representation<F>, n: &Representation<F>, i: usize) -> usize {
    let q = alg.quiver();
    if i == 0 {
        return hom_space(q, m, n).len();
    }
    let prev = nth_syzygy(alg, m, i - 1);
    if prev.is_zero() {
        return 0;
    }
    let (omega, incl, cover) = syzygy(alg, &prev);
    if omega.is_zero() {
        return 0;
    }
    let hom = hom_space(q, &omega, n).len();
    if hom == 0 {
        return 0;
    }
    // restrictions to Ω^i M of maps P_{i-1} -> N, one per generator choice
    let mut restricted = Vec::new();
    for (k, &v) in cover.vertices.iter().enumerate() {
        for r in 0..n.dims[v] {
            let images: Vec<Vec<F>> = cover
                .vertices
                .iter()
                .enumerate()
                .map(|(k2, &v2)| {
                    let mut img = vec![F::zero(); n.dims[v2]];
                    if k2 == k {
                        img[r] = F::one();
                    }
                    img
                })
                .collect();
            let f = map_from_projective_sum(alg, &cover.vertices, &images, n);
            restricted.push(incl.then(&f).flatten());
        }
    }
    let len = restricted.first().map_or(0, Vec::len);
    hom - rank_of_vectors(len, &restricted)
}
