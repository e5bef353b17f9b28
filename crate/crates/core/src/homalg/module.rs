//! Representations of bound quivers and their homomorphisms.

use crate::quiver::{Path, Quiver};

use super::basis::{Algebra, SparseVec};
use super::field::Field;
use super::matrix::Matrix;
use super::HomalgError;

/// A left module as a quiver representation.
///
/// `mats[a]` for `a: i -> j` is the `dims[i] x dims[j]` matrix of the
/// action `M_j -> M_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation<F> {
    pub dims: Vec<usize>,
    pub mats: Vec<Matrix<F>>,
}

impl<F: Field> Representation<F> {
    pub fn new(q: &Quiver, dims: Vec<usize>, mats: Vec<Matrix<F>>) -> Result<Self, HomalgError> {
        if dims.len() != q.vertex_count() || mats.len() != q.arrow_count() {
            return Err(HomalgError::InvalidRepresentation("wrong number of vertices or arrows".into()));
        }
        for (a, m) in mats.iter().enumerate() {
            let arr = q.arrow(a);
            if m.shape() != (dims[arr.source], dims[arr.target]) {
                return Err(HomalgError::InvalidRepresentation(format!(
                    "arrow `{}` has shape {:?}, expected {:?}",
                    arr.id,
                    m.shape(),
                    (dims[arr.source], dims[arr.target])
                )));
            }
        }
        Ok(Representation { dims, mats })
    }

    pub fn zero(q: &Quiver) -> Self {
        Representation {
            dims: vec![0; q.vertex_count()],
            mats: vec![Matrix::zeros(0, 0); q.arrow_count()],
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Matrix of the action of a path, `dims[source] x dims[target]`.
    pub fn path_action(&self, p: &Path) -> Matrix<F> {
        let mut acc = Matrix::identity(self.dims[p.source()]);
        for &a in p.arrows() {
            acc = acc.mul(&self.mats[a]);
        }
        acc
    }

    /// `p · v` for `v` in `M_{target(p)}`.
    pub fn act_path_on(&self, p: &Path, v: &[F]) -> Vec<F> {
        let mut out = v.to_vec();
        for &a in p.arrows().iter().rev() {
            out = self.mats[a].mul_vec(&out);
        }
        out
    }

    /// Action of an algebra element supported in the block `(s, t)`.
    pub fn element_action(&self, alg: &Algebra<F>, s: usize, t: usize, x: &SparseVec<F>) -> Matrix<F> {
        let mut acc = Matrix::zeros(self.dims[s], self.dims[t]);
        for (i, c) in x {
            let e = alg.basis().element(*i);
            debug_assert!(e.source == s && e.target == t);
            acc = acc.add(&self.path_action(&e.path).scale(c));
        }
        acc
    }

    pub fn satisfies_relations(&self, alg: &Algebra<F>) -> bool {
        let p = alg.presentation();
        p.relations.iter().all(|r| {
            let (s, t) = (r.source().unwrap(), r.target().unwrap());
            let mut acc = Matrix::zeros(self.dims[s], self.dims[t]);
            for (c, path) in &r.terms {
                let c = F::from_rational(c).expect("coefficient in field");
                acc = acc.add(&self.path_action(path).scale(&c));
            }
            acc.is_zero()
        })
    }
}

/// Projective `P_v = A e_v`; at vertex `i` it has the paths from `i` to `v`.
pub fn projective<F: Field>(alg: &Algebra<F>, v: usize) -> Representation<F> {
    let q = alg.quiver();
    let b = alg.basis();
    let dims: Vec<usize> = (0..q.vertex_count()).map(|i| b.block(i, v).len()).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let mut m = Matrix::zeros(dims[arr.source], dims[arr.target]);
            for (col, &e) in b.block(arr.target, v).iter().enumerate() {
                let image = b.left_mul_arrow(q, a, &vec![(e, F::one())]);
                for (row, c) in b.block_coordinates(arr.source, v, &image).into_iter().enumerate() {
                    m[(row, col)] = c;
                }
            }
            m
        })
        .collect();
    Representation { dims, mats }
}

/// Injective `I_v = D(e_v A)`; at vertex `i` it is dual to the paths from `v` to `i`.
pub fn injective<F: Field>(alg: &Algebra<F>, v: usize) -> Representation<F> {
    let q = alg.quiver();
    let b = alg.basis();
    let dims: Vec<usize> = (0..q.vertex_count()).map(|i| b.block(v, i).len()).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            // right multiplication e_v A e_i -> e_v A e_j, then transpose
            let mut r = Matrix::zeros(dims[arr.target], dims[arr.source]);
            for (col, &e) in b.block(v, arr.source).iter().enumerate() {
                let image = b.mul_arrow(&vec![(e, F::one())], q, a);
                for (row, c) in b.block_coordinates(v, arr.target, &image).into_iter().enumerate() {
                    r[(row, col)] = c;
                }
            }
            r.transpose()
        })
        .collect();
    Representation { dims, mats }
}

pub fn simple<F: Field>(q: &Quiver, v: usize) -> Representation<F> {
    let mut dims = vec![0; q.vertex_count()];
    dims[v] = 1;
    let mats = q.arrows().iter().map(|a| Matrix::zeros(dims[a.source], dims[a.target])).collect();
    Representation { dims, mats }
}

pub fn direct_sum<F: Field>(q: &Quiver, mods: &[Representation<F>]) -> Representation<F> {
    if mods.is_empty() {
        return Representation::zero(q);
    }
    let dims = (0..q.vertex_count()).map(|i| mods.iter().map(|m| m.dims[i]).sum()).collect();
    let mats = (0..q.arrow_count())
        .map(|a| Matrix::direct_sum(&mods.iter().map(|m| m.mats[a].clone()).collect::<Vec<_>>()))
        .collect();
    Representation { dims, mats }
}

/// `⊕_k P_{vertices[k]}`, coordinates ordered summand by summand.
pub fn projective_sum<F: Field>(alg: &Algebra<F>, vertices: &[usize]) -> Representation<F> {
    let parts: Vec<_> = vertices.iter().map(|&v| projective(alg, v)).collect();
    direct_sum(alg.quiver(), &parts)
}

/// A homomorphism `M -> N`; `maps[i]` is `dims_N[i] x dims_M[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap<F> {
    pub maps: Vec<Matrix<F>>,
}

impl<F: Field> ModuleMap<F> {
    pub fn zero(m: &Representation<F>, n: &Representation<F>) -> Self {
        ModuleMap { maps: m.dims.iter().zip(&n.dims).map(|(&a, &b)| Matrix::zeros(b, a)).collect() }
    }

    pub fn identity(m: &Representation<F>) -> Self {
        ModuleMap { maps: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ModuleMap<F>) -> ModuleMap<F> {
        ModuleMap { maps: self.maps.iter().zip(&g.maps).map(|(f, g)| g.mul(f)).collect() }
    }

    pub fn add(&self, other: &ModuleMap<F>) -> ModuleMap<F> {
        ModuleMap { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: &F) -> ModuleMap<F> {
        ModuleMap { maps: self.maps.iter().map(|m| m.scale(s)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// All entries, vertex by vertex, row-major.
    pub fn flatten(&self) -> Vec<F> {
        self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub fn is_homomorphism(&self, q: &Quiver, m: &Representation<F>, n: &Representation<F>) -> bool {
        q.arrows().iter().enumerate().all(|(a, arr)| {
            self.maps[arr.source].mul(&m.mats[a]) == n.mats[a].mul(&self.maps[arr.target])
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }
}

/// The map `⊕ P_{vertices[k]} -> N` sending the k-th generator to `images[k] ∈ N_{vertices[k]}`.
pub fn map_from_projective_sum<F: Field>(
    alg: &Algebra<F>,
    vertices: &[usize],
    images: &[Vec<F>],
    n: &Representation<F>,
) -> ModuleMap<F> {
    let b = alg.basis();
    let nv = alg.vertex_count();
    let maps = (0..nv)
        .map(|i| {
            let mut cols = Vec::new();
            for (k, &v) in vertices.iter().enumerate() {
                for &e in b.block(i, v) {
                    cols.push(n.act_path_on(&b.element(e).path, &images[k]));
                }
            }
            Matrix::from_columns(n.dims[i], &cols)
        })
        .collect();
    ModuleMap { maps }
}

/// Kernel of `f: M -> N` with its inclusion into `M`.
pub fn kernel<F: Field>(q: &Quiver, f: &ModuleMap<F>, m: &Representation<F>) -> (Representation<F>, ModuleMap<F>) {
    let incl: Vec<Matrix<F>> = f
        .maps
        .iter()
        .zip(&m.dims)
        .map(|(fi, &d)| if fi.cols() == 0 { Matrix::zeros(d, 0) } else { fi.kernel() })
        .collect();
    let dims: Vec<usize> = incl.iter().map(Matrix::cols).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let rhs = m.mats[a].mul(&incl[arr.target]);
            incl[arr.source].solve(&rhs).expect("kernel is a submodule")
        })
        .collect();
    (Representation { dims, mats }, ModuleMap { maps: incl })
}

/// Cokernel of `f: M -> N` with the projection from `N`.
pub fn cokernel<F: Field>(q: &Quiver, f: &ModuleMap<F>, n: &Representation<F>) -> (Representation<F>, ModuleMap<F>) {
    let nv = n.dims.len();
    let mut proj = Vec::with_capacity(nv);
    let mut sections = Vec::with_capacity(nv);
    for i in 0..nv {
        let image = f.maps[i].column_basis();
        let comp = image.complement_indices();
        let mut section = Matrix::zeros(n.dims[i], comp.len());
        for (j, &c) in comp.iter().enumerate() {
            section[(c, j)] = F::one();
        }
        let full = image.hstack(&section);
        let inv = full.inverse().expect("complement completes a basis");
        let rows: Vec<usize> = (image.cols()..n.dims[i]).collect();
        proj.push(inv.select_rows(&rows));
        sections.push(section);
    }
    let dims: Vec<usize> = sections.iter().map(Matrix::cols).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| proj[arr.source].mul(&n.mats[a]).mul(&sections[arr.target]))
        .collect();
    (Representation { dims, mats }, ModuleMap { maps: proj })
}

/// Basis of `Hom(M, N)`.
pub fn hom_space<F: Field>(q: &Quiver, m: &Representation<F>, n: &Representation<F>) -> Vec<ModuleMap<F>> {
    let nv = m.dims.len();
    let mut offset = vec![0; nv + 1];
    for i in 0..nv {
        offset[i + 1] = offset[i] + n.dims[i] * m.dims[i];
    }
    let unknowns = offset[nv];
    if unknowns == 0 {
        return Vec::new();
    }
    let var = |i: usize, r: usize, c: usize| offset[i] + r * m.dims[i] + c;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for (a, arr) in q.arrows().iter().enumerate() {
        let (i, j) = (arr.source, arr.target);
        let (ma, na) = (&m.mats[a], &n.mats[a]);
        // f_i M_a - N_a f_j = 0, entry (r, c) with r < n_i, c < m_j
        for r in 0..n.dims[i] {
            for c in 0..m.dims[j] {
                let mut row = vec![F::zero(); unknowns];
                let mut nonzero = false;
                for k in 0..m.dims[i] {
                    let v = &ma[(k, c)];
                    if !v.is_zero() {
                        row[var(i, r, k)] = row[var(i, r, k)].add(v);
                        nonzero = true;
                    }
                }
                for k in 0..n.dims[j] {
                    let v = &na[(r, k)];
                    if !v.is_zero() {
                        row[var(j, k, c)] = row[var(j, k, c)].sub(v);
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() { Matrix::identity(unknowns) } else { Matrix::from_rows(rows).kernel() };
    (0..kernel.cols())
        .map(|col| {
            let maps = (0..nv)
                .map(|i| {
                    let mut f = Matrix::zeros(n.dims[i], m.dims[i]);
                    for r in 0..n.dims[i] {
                        for c in 0..m.dims[i] {
                            f[(r, c)] = kernel[(var(i, r, c), col)].clone();
                        }
                    }
                    f
                })
                .collect();
            ModuleMap { maps }
        })
        .collect()
}

pub fn hom_dim<F: Field>(q: &Quiver, m: &Representation<F>, n: &Representation<F>) -> usize {
    hom_space(q, m, n).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::field::Rational;
    use crate::quiver::{AlgebraPresentation, RelationElement};

    fn a3(rad_square: bool) -> Algebra<Rational> {
        let mut q = Quiver::new();
        for v in ["1", "2", "3"] {
            q.add_vertex(v, None).unwrap();
        }
        q.add_arrow("a", 0, 1, None).unwrap();
        q.add_arrow("b", 1, 2, None).unwrap();
        let rels = if rad_square {
            vec![RelationElement::monomial(Path::from_ids(&q, &["a", "b"]).unwrap())]
        } else {
            vec![]
        };
        Algebra::new(&AlgebraPresentation::new(q, rels)).unwrap()
    }

    #[test]
    fn projectives_and_injectives_of_a3() {
        let alg = a3(false);
        let dims: Vec<_> = (0..3).map(|v| projective(&alg, v).dims).collect();
        assert_eq!(dims, vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]]);
        let dims: Vec<_> = (0..3).map(|v| injective(&alg, v).dims).collect();
        assert_eq!(dims, vec![vec![1, 1, 1], vec![0, 1, 1], vec![0, 0, 1]]);
        for v in 0..3 {
            assert!(projective(&alg, v).satisfies_relations(&alg));
            assert!(injective(&alg, v).satisfies_relations(&alg));
        }
    }

    #[test]
    fn hom_between_projectives_matches_cartan() {
        let alg = a3(true);
        let c = alg.cartan();
        for (u, row) in c.iter().enumerate() {
            for (v, &want) in row.iter().enumerate() {
                let d = hom_dim(alg.quiver(), &projective(&alg, u), &projective(&alg, v));
                assert_eq!(d, want, "Hom(P{u}, P{v})");
            }
        }
    }

    #[test]
    fn kernel_and_cokernel_of_top_map() {
        let alg = a3(false);
        let q = alg.quiver();
        let p = projective(&alg, 2);
        let s = simple::<Rational>(q, 2);
        let f = map_from_projective_sum(&alg, &[2], &[vec![Rational::one()]], &s);
        assert!(f.is_homomorphism(q, &p, &s));
        let (k, incl) = kernel(q, &f, &p);
        assert_eq!(k.dims, vec![1, 1, 0]);
        assert!(incl.is_homomorphism(q, &k, &p));
        let (c, proj) = cokernel(q, &incl, &p);
        assert_eq!(c.dims, vec![0, 0, 1]);
        assert!(proj.is_homomorphism(q, &p, &c));
    }
}
