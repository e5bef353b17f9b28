//! Normal-form bases of `kQ/(R)` for homogeneous relations.
//!
//! The degree-`d` part is built from the degree-`d-1` basis times arrows,
//! modulo the images of `p·r` for relations `r` and basis paths `p`. Row
//! reduction on these images splits the candidate products into pivots
//! (rewritten in terms of the rest) and standard monomials, which form the
//! new basis. The resulting right-multiplication table is all that later
//! computations need.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::quiver::{AlgebraPresentation, Path, Quiver};

use super::field::Field;
use super::matrix::Matrix;
use super::HomalgError;

/// Sparse vector over basis indices, sorted, without zero entries.
pub type SparseVec<F> = Vec<(usize, F)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub source: usize,
    pub target: usize,
    pub degree: usize,
    /// Representative path (a standard monomial).
    pub path: Path,
}

#[derive(Clone, Debug)]
pub struct GradedBasis<F> {
    elements: Vec<BasisElement>,
    blocks: HashMap<(usize, usize), Vec<usize>>,
    position: Vec<usize>,
    by_degree: Vec<Vec<usize>>,
    right_mult: HashMap<(usize, usize), SparseVec<F>>,
    vertex_count: usize,
}

fn accumulate<F: Field>(acc: &mut BTreeMap<usize, F>, idx: usize, v: &F) {
    if v.is_zero() {
        return;
    }
    let entry = acc.entry(idx).or_insert_with(F::zero);
    *entry = entry.add(v);
    if entry.is_zero() {
        acc.remove(&idx);
    }
}

fn into_sparse<F: Field>(acc: BTreeMap<usize, F>) -> SparseVec<F> {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl<F: Field> GradedBasis<F> {
    /// Computes the basis, failing if degree `max_degree + 1` is nonzero.
    pub fn compute(p: &AlgebraPresentation, max_degree: usize) -> Result<Self, HomalgError> {
        p.validate()?;
        let q = &p.quiver;
        let relations: Vec<Vec<(F, Path)>> = p
            .relations
            .iter()
            .map(|r| {
                r.terms
                    .iter()
                    .map(|(c, path)| F::from_rational(c).map(|f| (f, path.clone())).ok_or(HomalgError::CoefficientNotInField))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;

        let mut basis = GradedBasis {
            elements: Vec::new(),
            blocks: HashMap::new(),
            position: Vec::new(),
            by_degree: vec![Vec::new()],
            right_mult: HashMap::new(),
            vertex_count: q.vertex_count(),
        };
        for v in 0..q.vertex_count() {
            basis.push_element(BasisElement { source: v, target: v, degree: 0, path: Path::lazy(v) });
        }

        let mut d = 1;
        loop {
            let found = basis.extend_degree(q, &relations, d);
            if found == 0 {
                break;
            }
            if d > max_degree {
                return Err(HomalgError::NotFiniteDimensionalWithinBound { bound: max_degree });
            }
            d += 1;
        }
        Ok(basis)
    }

    fn push_element(&mut self, e: BasisElement) -> usize {
        let idx = self.elements.len();
        let block = self.blocks.entry((e.source, e.target)).or_default();
        self.position.push(block.len());
        block.push(idx);
        if self.by_degree.len() <= e.degree {
            self.by_degree.resize(e.degree + 1, Vec::new());
        }
        self.by_degree[e.degree].push(idx);
        self.elements.push(e);
        idx
    }

    /// Builds degree `d`, returning the number of new basis elements.
    fn extend_degree(&mut self, q: &Quiver, relations: &[Vec<(F, Path)>], d: usize) -> usize {
        let prev = self.by_degree.get(d - 1).cloned().unwrap_or_default();
        // Candidate columns, grouped by (source, target) block.
        let mut columns: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for &b in &prev {
            let e = &self.elements[b];
            for a in q.arrows_from(e.target) {
                columns.entry((e.source, q.arrow(a).target)).or_default().push((b, a));
            }
        }
        if columns.is_empty() {
            return 0;
        }
        let mut col_pos: HashMap<(usize, usize), usize> = HashMap::new();
        for cols in columns.values() {
            for (i, &c) in cols.iter().enumerate() {
                col_pos.insert(c, i);
            }
        }

        // Relation images p·r, with p a basis element of degree d - deg(r).
        let mut rows: BTreeMap<(usize, usize), Vec<BTreeMap<usize, F>>> = BTreeMap::new();
        for rel in relations {
            let k = rel[0].1.len();
            if k == 0 || k > d {
                continue;
            }
            let (rs, rt) = (rel[0].1.source(), rel[0].1.target());
            let Some(lefts) = self.by_degree.get(d - k) else { continue };
            for &pidx in lefts {
                if self.elements[pidx].target != rs {
                    continue;
                }
                let block = (self.elements[pidx].source, rt);
                let mut row: BTreeMap<usize, F> = BTreeMap::new();
                for (c, path) in rel {
                    let (init, last) = path.arrows().split_at(k - 1);
                    let mut v: SparseVec<F> = vec![(pidx, F::one())];
                    for &a in init {
                        v = self.mul_arrow(&v, q, a);
                    }
                    let a = last[0];
                    for (b, coef) in v {
                        let pos = col_pos[&(b, a)];
                        accumulate(&mut row, pos, &c.mul(&coef));
                    }
                }
                if !row.is_empty() {
                    rows.entry(block).or_default().push(row);
                }
            }
        }

        let mut found = 0;
        for (block, cols) in &columns {
            let reduced = match rows.get(block) {
                Some(rs) => {
                    let mut m = Matrix::zeros(rs.len(), cols.len());
                    for (i, r) in rs.iter().enumerate() {
                        for (&c, v) in r {
                            m[(i, c)] = v.clone();
                        }
                    }
                    Some(m.rref())
                }
                None => None,
            };
            let pivots: Vec<usize> = reduced.as_ref().map(|r| r.pivots.clone()).unwrap_or_default();
            let mut new_index = vec![None; cols.len()];
            for (i, &(b, a)) in cols.iter().enumerate() {
                if pivots.contains(&i) {
                    continue;
                }
                let base = &self.elements[b];
                let path = base.path.concat(&Path::arrow(q, a)).expect("composable");
                let idx = self.push_element(BasisElement { source: base.source, target: q.arrow(a).target, degree: d, path });
                new_index[i] = Some(idx);
                self.right_mult.insert((b, a), vec![(idx, F::one())]);
                found += 1;
            }
            if let Some(r) = reduced {
                for (row, &pc) in r.pivots.iter().enumerate() {
                    let mut acc = BTreeMap::new();
                    for (c, ni) in new_index.iter().enumerate() {
                        if let Some(ni) = ni {
                            let v = &r.reduced[(row, c)];
                            if !v.is_zero() {
                                accumulate(&mut acc, *ni, &v.neg());
                            }
                        }
                    }
                    self.right_mult.insert(cols[pc], into_sparse(acc));
                }
            }
        }
        found
    }

    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.elements[i]
    }

    /// Basis elements from `s` to `t`, in block order.
    pub fn block(&self, s: usize, t: usize) -> &[usize] {
        self.blocks.get(&(s, t)).map_or(&[], Vec::as_slice)
    }

    /// Position of an element inside its `(source, target)` block.
    pub fn position(&self, i: usize) -> usize {
        self.position[i]
    }

    /// Dimensions per degree, starting at degree zero.
    pub fn degree_dimensions(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = self.by_degree.iter().map(Vec::len).collect();
        while dims.len() > 1 && dims.last() == Some(&0) {
            dims.pop();
        }
        dims
    }

    /// `cartan[s][t] = dim e_s A e_t`, the number of basis paths from `s` to `t`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count;
        let mut c = vec![vec![0; n]; n];
        for e in &self.elements {
            c[e.source][e.target] += 1;
        }
        c
    }

    /// `v · a` for an arrow `a`.
    pub fn mul_arrow(&self, v: &SparseVec<F>, q: &Quiver, a: usize) -> SparseVec<F> {
        let src = q.arrow(a).source;
        let mut acc = BTreeMap::new();
        for (b, coef) in v {
            if self.elements[*b].target != src {
                continue;
            }
            if let Some(prod) = self.right_mult.get(&(*b, a)) {
                for (i, c) in prod {
                    accumulate(&mut acc, *i, &coef.mul(c));
                }
            }
        }
        into_sparse(acc)
    }

    /// Normal form of a path.
    pub fn reduce_path(&self, q: &Quiver, p: &Path) -> SparseVec<F> {
        let mut v: SparseVec<F> = vec![(p.source(), F::one())];
        for &a in p.arrows() {
            v = self.mul_arrow(&v, q, a);
            if v.is_empty() {
                break;
            }
        }
        v
    }

    /// Product `x · y` of two algebra elements.
    pub fn mul(&self, q: &Quiver, x: &SparseVec<F>, y: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = BTreeMap::new();
        for (j, cy) in y {
            let e = &self.elements[*j];
            let mut v: SparseVec<F> = x.iter().filter(|(i, _)| self.elements[*i].target == e.source).cloned().collect();
            for &a in e.path.arrows() {
                v = self.mul_arrow(&v, q, a);
            }
            for (i, c) in v {
                accumulate(&mut acc, i, &c.mul(cy));
            }
        }
        into_sparse(acc)
    }

    /// `a · v` for an arrow `a`.
    pub fn left_mul_arrow(&self, q: &Quiver, a: usize, v: &SparseVec<F>) -> SparseVec<F> {
        let av = self.reduce_path(q, &Path::arrow(q, a));
        self.mul(q, &av, v)
    }

    /// Coordinates of an element lying in a single block, in block order.
    pub fn block_coordinates(&self, s: usize, t: usize, v: &SparseVec<F>) -> Vec<F> {
        let mut out = vec![F::zero(); self.block(s, t).len()];
        for (i, c) in v {
            let e = &self.elements[*i];
            assert!(e.source == s && e.target == t, "element outside block ({s},{t})");
            out[self.position[*i]] = c.clone();
        }
        out
    }
}

/// One side of an algebra: its presentation and normal-form basis.
#[derive(Debug)]
struct Side<F> {
    presentation: AlgebraPresentation,
    basis: GradedBasis<F>,
}

/// A finite-dimensional algebra `kQ/(R)` together with its opposite.
///
/// Cloning is cheap; `opposite()` swaps the two sides.
#[derive(Debug)]
pub struct Algebra<F> {
    this: Arc<Side<F>>,
    op: Arc<Side<F>>,
}

impl<F> Clone for Algebra<F> {
    fn clone(&self) -> Self {
        Algebra { this: Arc::clone(&self.this), op: Arc::clone(&self.op) }
    }
}

pub const DEFAULT_MAX_DEGREE: usize = 64;

impl<F: Field> Algebra<F> {
    pub fn new(p: &AlgebraPresentation) -> Result<Self, HomalgError> {
        Self::with_max_degree(p, DEFAULT_MAX_DEGREE)
    }

    pub fn with_max_degree(p: &AlgebraPresentation, max_degree: usize) -> Result<Self, HomalgError> {
        let basis = GradedBasis::compute(p, max_degree)?;
        let op_pres = p.opposite();
        let op_basis = GradedBasis::compute(&op_pres, max_degree)?;
        Ok(Algebra {
            this: Arc::new(Side { presentation: p.clone(), basis }),
            op: Arc::new(Side { presentation: op_pres, basis: op_basis }),
        })
    }

    pub fn opposite(&self) -> Algebra<F> {
        Algebra { this: Arc::clone(&self.op), op: Arc::clone(&self.this) }
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.this.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        &self.this.presentation.quiver
    }

    pub fn basis(&self) -> &GradedBasis<F> {
        &self.this.basis
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver().vertex_count()
    }

    pub fn dimension(&self) -> usize {
        self.basis().dimension()
    }

    pub fn cartan(&self) -> Vec<Vec<usize>> {
        self.basis().cartan()
    }

    pub fn reduce_path(&self, p: &Path) -> SparseVec<F> {
        self.basis().reduce_path(self.quiver(), p)
    }

    /// Image of an element under the anti-isomorphism `A -> A^op`.
    pub fn to_opposite(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let op = &self.op;
        let mut acc = BTreeMap::new();
        for (i, c) in v {
            let rev = self.basis().element(*i).path.reversed();
            for (j, d) in op.basis.reduce_path(&op.presentation.quiver, &rev) {
                accumulate(&mut acc, j, &c.mul(&d));
            }
        }
        into_sparse(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::field::Rational;
    use crate::quiver::RelationElement;

    fn linear(n: usize) -> Quiver {
        let mut q = Quiver::new();
        for i in 1..=n {
            q.add_vertex(i.to_string(), None).unwrap();
        }
        for i in 1..n {
            q.add_arrow(format!("a{i}"), i - 1, i, None).unwrap();
        }
        q
    }

    #[test]
    fn path_algebra_of_a3() {
        let p = AlgebraPresentation::path_algebra(linear(3));
        let b = GradedBasis::<Rational>::compute(&p, 8).unwrap();
        assert_eq!(b.dimension(), 6);
        assert_eq!(b.degree_dimensions(), vec![3, 2, 1]);
    }

    #[test]
    fn rad_square_zero() {
        let q = linear(3);
        let rel = RelationElement::monomial(Path::from_ids(&q, &["a1", "a2"]).unwrap());
        let p = AlgebraPresentation::new(q, vec![rel]);
        let b = GradedBasis::<Rational>::compute(&p, 8).unwrap();
        assert_eq!(b.dimension(), 5);
        let qq = &p.quiver;
        assert!(b.reduce_path(qq, &Path::from_ids(qq, &["a1", "a2"]).unwrap()).is_empty());
    }

    #[test]
    fn commutative_square() {
        let mut q = Quiver::new();
        for v in ["1", "2", "3", "4"] {
            q.add_vertex(v, None).unwrap();
        }
        q.add_arrow("a", 0, 1, None).unwrap();
        q.add_arrow("b", 1, 3, None).unwrap();
        q.add_arrow("c", 0, 2, None).unwrap();
        q.add_arrow("d", 2, 3, None).unwrap();
        let rel = RelationElement::commutation(Path::from_ids(&q, &["a", "b"]).unwrap(), Path::from_ids(&q, &["c", "d"]).unwrap());
        let p = AlgebraPresentation::new(q, vec![rel]);
        let alg = Algebra::<Rational>::new(&p).unwrap();
        assert_eq!(alg.dimension(), 9);
        assert_eq!(alg.cartan()[0][3], 1);
        let ab = alg.reduce_path(&Path::from_ids(alg.quiver(), &["a", "b"]).unwrap());
        let cd = alg.reduce_path(&Path::from_ids(alg.quiver(), &["c", "d"]).unwrap());
        assert_eq!(ab, cd);
        assert_eq!(alg.opposite().dimension(), 9);
    }

    #[test]
    fn oriented_cycle_without_relations_is_infinite() {
        let mut q = Quiver::new();
        q.add_vertex("1", None).unwrap();
        q.add_arrow("x", 0, 0, None).unwrap();
        let p = AlgebraPresentation::path_algebra(q);
        assert!(matches!(
            GradedBasis::<Rational>::compute(&p, 5),
            Err(HomalgError::NotFiniteDimensionalWithinBound { bound: 5 })
        ));
    }
}
