//! Duality, transpose and the higher Auslander-Reiten translations
//! `τ_n = D Tr Ω^{n-1}` and `τ_n⁻ = Tr D Ω^{n-1} D`.

use super::basis::{Algebra, SparseVec};
use super::field::Field;
use super::module::{cokernel, map_from_projective_sum, projective_sum, Representation};
use super::resolution::{nth_syzygy, syzygy};

/// `D M = Hom_k(M, k)`, a module over the opposite algebra.
pub fn dual<F: Field>(m: &Representation<F>) -> Representation<F> {
    Representation { dims: m.dims.clone(), mats: m.mats.iter().map(|a| a.transpose()).collect() }
}

/// Auslander-Bridger transpose, a module over the opposite algebra.
pub fn transpose<F: Field>(alg: &Algebra<F>, m: &Representation<F>) -> Representation<F> {
    let op = alg.opposite();
    if m.is_zero() {
        return Representation::zero(op.quiver());
    }
    let (omega, incl, p0) = syzygy(alg, m);
    if omega.is_zero() {
        return Representation::zero(op.quiver());
    }
    let p1 = super::resolution::projective_cover(alg, &omega);
    let b = alg.basis();
    let ob = op.basis();

    // x[h][g] ∈ e_{w_h} A e_{v_g}: component g of the image of generator h in P_0.
    let target = projective_sum(&op, &p1.vertices);
    let images: Vec<Vec<F>> = p0
        .vertices
        .iter()
        .enumerate()
        .map(|(g, &vg)| {
            let mut img = Vec::with_capacity(target.dims[vg]);
            for (h, &wh) in p1.vertices.iter().enumerate() {
                let in_p0 = incl.maps[wh].mul_vec(&p1.generators[h]);
                let offset: usize = p0.vertices[..g].iter().map(|&v| b.block(wh, v).len()).sum();
                let x: SparseVec<F> = b
                    .block(wh, vg)
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| !in_p0[offset + k].is_zero())
                    .map(|(k, &e)| (e, in_p0[offset + k].clone()))
                    .collect();
                img.extend(ob.block_coordinates(vg, wh, &alg.to_opposite(&x)));
            }
            img
        })
        .collect();
    let f = map_from_projective_sum(&op, &p0.vertices, &images, &target);
    cokernel(op.quiver(), &f, &target).0
}

/// `τ_n M = D Tr Ω^{n-1} M`.
pub fn tau_n<F: Field>(alg: &Algebra<F>, m: &Representation<F>, n: usize) -> Representation<F> {
    assert!(n >= 1, "n must be positive");
    let omega = nth_syzygy(alg, m, n - 1);
    dual(&transpose(alg, &omega))
}

/// `τ_n⁻ M = Tr_{A^op} Ω^{n-1}_{A^op} D M`.
pub fn tau_n_minus<F: Field>(alg: &Algebra<F>, m: &Representation<F>, n: usize) -> Representation<F> {
    assert!(n >= 1, "n must be positive");
    let op = alg.opposite();
    let omega = nth_syzygy(&op, &dual(m), n - 1);
    transpose(&op, &omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::field::Rational;
    use crate::homalg::iso::is_isomorphic;
    use crate::homalg::module::{injective, projective, simple};
    use crate::quiver::{AlgebraPresentation, Path, Quiver, RelationElement};

    fn a3(rad_square: bool) -> Algebra<Rational> {
        let mut q = Quiver::new();
        for v in ["1", "2", "3"] {
            q.add_vertex(v, None).unwrap();
        }
        q.add_arrow("a", 0, 1, None).unwrap();
        q.add_arrow("b", 1, 2, None).unwrap();
        let rels = if rad_square { vec![RelationElement::monomial(Path::from_ids(&q, &["a", "b"]).unwrap())] } else { vec![] };
        Algebra::new(&AlgebraPresentation::new(q, rels)).unwrap()
    }

    #[test]
    fn classical_translate_on_a3() {
        let alg = a3(false);
        let q = alg.quiver();
        // τ⁻ P_1 = τ⁻ S_1 = P_2 / S_1 = S_2
        let t = tau_n_minus(&alg, &projective(&alg, 0), 1);
        assert!(is_isomorphic(q, &t, &simple(q, 1)));
        // τ I_3... τ S_3 = τ I_3 has dims (0,1,0)
        let t = tau_n(&alg, &simple(q, 2), 1);
        assert_eq!(t.dims, vec![0, 1, 0]);
        assert!(tau_n(&alg, &projective(&alg, 1), 1).is_zero());
        assert!(tau_n_minus(&alg, &injective(&alg, 1), 1).is_zero());
    }

    #[test]
    fn second_translate_on_rad_square() {
        let alg = a3(true);
        let q = alg.quiver();
        let t = tau_n_minus(&alg, &projective(&alg, 0), 2);
        assert!(is_isomorphic(q, &t, &simple(q, 2)));
        let back = tau_n(&alg, &t, 2);
        assert!(is_isomorphic(q, &back, &projective(&alg, 0)));
        assert!(tau_n_minus(&alg, &t, 2).is_zero());
    }

    #[test]
    fn transpose_of_projective_vanishes() {
        let alg = a3(true);
        assert!(transpose(&alg, &projective(&alg, 2)).is_zero());
        let s = simple::<Rational>(alg.quiver(), 1);
        let tr = transpose(&alg, &s);
        assert!(!tr.is_zero());
        assert!(tr.satisfies_relations(&alg.opposite()));
    }
}
