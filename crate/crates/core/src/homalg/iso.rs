//! Isomorphism tests for modules and combinatorial signatures of algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quiver::Quiver;

use super::basis::Algebra;
use super::field::Field;
use super::module::{hom_space, ModuleMap, Representation};

/// Seed for the random combinations used by [`is_isomorphic`].
pub const ISO_SEED: u64 = 0x005e_eda9_7117;

const ISO_ATTEMPTS: usize = 4;

/// `M ≅ N`: some combination of a basis of `Hom(M, N)` is invertible.
///
/// Random integer combinations are tried with a fixed seed; a negative
/// answer is wrong with probability below `(d/1000)^4` where `d` is the
/// total dimension.
pub fn is_isomorphic<F: Field>(q: &Quiver, m: &Representation<F>, n: &Representation<F>) -> bool {
    if m.dims != n.dims {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    let hom = hom_space(q, m, n);
    if hom.is_empty() {
        return false;
    }
    if hom.len() == 1 {
        return hom[0].is_isomorphism();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED);
    (0..ISO_ATTEMPTS).any(|_| {
        let mut f = ModuleMap::zero(m, n);
        for h in &hom {
            let c = F::from_i64(rng.gen_range(1..=1000));
            f = f.add(&h.scale(&c));
        }
        f.is_isomorphism()
    })
}

/// Quiver, dimension and Cartan matrix: the data compared when two
/// algebras are said to agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSignature {
    pub vertex_ids: Vec<String>,
    /// `arrows[u][v]` counts arrows `u -> v`.
    pub arrows: Vec<Vec<usize>>,
    pub dimension: usize,
    pub cartan: Vec<Vec<usize>>,
}

impl AlgebraSignature {
    pub fn of_algebra<F: Field>(alg: &Algebra<F>) -> Self {
        Self::from_parts(alg.quiver(), alg.dimension(), alg.cartan())
    }

    pub fn from_parts(q: &Quiver, dimension: usize, cartan: Vec<Vec<usize>>) -> Self {
        let n = q.vertex_count();
        let mut arrows = vec![vec![0; n]; n];
        for a in q.arrows() {
            arrows[a.source][a.target] += 1;
        }
        AlgebraSignature { vertex_ids: q.vertices().iter().map(|v| v.id.clone()).collect(), arrows, dimension, cartan }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    /// A vertex bijection `self -> other` preserving arrow counts and
    /// Cartan entries, if the dimensions agree and one exists.
    pub fn find_isomorphism(&self, other: &AlgebraSignature) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        if n != other.vertex_count() || self.dimension != other.dimension {
            return None;
        }
        let profile = |s: &AlgebraSignature, v: usize| {
            let mut row: Vec<usize> = s.arrows[v].clone();
            row.sort_unstable();
            let mut col: Vec<usize> = (0..n).map(|u| s.arrows[u][v]).collect();
            col.sort_unstable();
            let mut crow: Vec<usize> = s.cartan[v].clone();
            crow.sort_unstable();
            let mut ccol: Vec<usize> = (0..n).map(|u| s.cartan[u][v]).collect();
            ccol.sort_unstable();
            (s.arrows[v][v], s.cartan[v][v], row, col, crow, ccol)
        };
        let mine: Vec<_> = (0..n).map(|v| profile(self, v)).collect();
        let theirs: Vec<_> = (0..n).map(|v| profile(other, v)).collect();
        let candidates: Vec<Vec<usize>> =
            (0..n).map(|v| (0..n).filter(|&w| mine[v] == theirs[w]).collect()).collect();
        let mut assignment = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend(other, 0, &candidates, &mut assignment, &mut used).then_some(assignment)
    }

    fn extend(
        &self,
        other: &AlgebraSignature,
        v: usize,
        candidates: &[Vec<usize>],
        assignment: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if v == assignment.len() {
            return true;
        }
        for &w in &candidates[v] {
            if used[w] {
                continue;
            }
            let consistent = (0..v).all(|u| {
                let x = assignment[u];
                self.arrows[u][v] == other.arrows[x][w]
                    && self.arrows[v][u] == other.arrows[w][x]
                    && self.cartan[u][v] == other.cartan[x][w]
                    && self.cartan[v][u] == other.cartan[w][x]
            });
            if !consistent {
                continue;
            }
            assignment[v] = w;
            used[w] = true;
            if self.extend(other, v + 1, candidates, assignment, used) {
                return true;
            }
            used[w] = false;
        }
        assignment[v] = usize::MAX;
        false
    }

    pub fn agrees_with(&self, other: &AlgebraSignature) -> bool {
        self.find_isomorphism(other).is_some()
    }
}
