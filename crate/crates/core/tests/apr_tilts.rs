use aprtilt::apr::{
    apr_tilting_module, mp_conditions_hold, tilted_algebra_homological, two_apr_cotilt_presentation,
    two_apr_tilt_presentation, AprError,
};
use aprtilt::homalg::cluster::is_napr_tiltable;
use aprtilt::homalg::resolution::global_dimension;
use aprtilt::homalg::{Algebra, AlgebraSignature, GlobalDimension, Rational};
use aprtilt::{AlgebraPresentation, Dir, TypeA};

fn sig(p: &AlgebraPresentation) -> AlgebraSignature {
    AlgebraSignature::of_algebra(&Algebra::<Rational>::new(p).unwrap())
}

#[test]
fn tilt_of_the_auslander_algebra_at_200() {
    let t = TypeA::new(2, 3).unwrap();
    let c0 = t.standard_cut();
    let p = t.cut_algebra(&c0).unwrap();
    let x = t.vertex("200").unwrap();
    let tilted = two_apr_tilt_presentation(&p, x, true).unwrap();
    let mutated = t.cut_algebra(&t.mutate_cut(&c0, x, Dir::Plus).unwrap()).unwrap();
    assert!(sig(&tilted).agrees_with(&sig(&mutated)));
    assert_eq!(tilted.quiver.arrow_count(), mutated.quiver.arrow_count());
    assert_eq!(tilted.relations.len(), mutated.relations.len());
    assert!(tilted.relations.iter().all(|r| r.degree() == Some(2)));
}

#[test]
fn tilts_and_cotilts_follow_cut_mutation() {
    let t = TypeA::new(2, 3).unwrap();
    for c in t.enumerate_cuts() {
        let p = t.cut_algebra(&c).unwrap();
        for x in (0..t.vertex_count()).filter(|&x| t.is_source_of_cut(&c, x)) {
            let up = t.mutate_cut(&c, x, Dir::Plus).unwrap();
            let tilted = two_apr_tilt_presentation(&p, x, false).unwrap();
            assert!(sig(&tilted).agrees_with(&sig(&t.cut_algebra(&up).unwrap())));
            let back = two_apr_cotilt_presentation(&tilted, x, false).unwrap();
            assert!(sig(&back).agrees_with(&sig(&p)));
            let alg = Algebra::<Rational>::new(&tilted).unwrap();
            assert_eq!(global_dimension(&alg, 20), GlobalDimension::Finite(2));
        }
        for x in (0..t.vertex_count()).filter(|&x| t.is_sink_of_cut(&c, x)) {
            let down = t.mutate_cut(&c, x, Dir::Minus).unwrap();
            let cotilted = two_apr_cotilt_presentation(&p, x, false).unwrap();
            assert!(sig(&cotilted).agrees_with(&sig(&t.cut_algebra(&down).unwrap())));
        }
    }
}

#[test]
fn homological_tilts_in_other_dimensions() {
    for (n, s) in [(1, 3), (1, 4), (3, 2)] {
        let t = TypeA::new(n, s).unwrap();
        for c in t.enumerate_cuts() {
            let p = t.cut_algebra(&c).unwrap();
            let alg = Algebra::<Rational>::new(&p).unwrap();
            for x in (0..t.vertex_count()).filter(|&x| t.is_source_of_cut(&c, x)) {
                let tm = apr_tilting_module(&alg, x, n).unwrap();
                assert!(tm.checks(&alg).unwrap().hold_for(n));
                let e = tilted_algebra_homological(&alg, x, n).unwrap();
                let target = sig(&t.cut_algebra(&t.mutate_cut(&c, x, Dir::Plus).unwrap()).unwrap());
                assert!(AlgebraSignature::from_parts(&e.quiver, e.dimension, e.cartan).agrees_with(&target));
            }
        }
    }
}

#[test]
fn one_point_conditions_match_tiltability() {
    for (n, s) in [(2, 2), (2, 3), (1, 3), (3, 2)] {
        let t = TypeA::new(n, s).unwrap();
        for c in t.enumerate_cuts() {
            let p = t.cut_algebra(&c).unwrap();
            let alg = Algebra::<Rational>::new(&p).unwrap();
            for x in 0..t.vertex_count() {
                for k in 2..=4 {
                    assert_eq!(
                        mp_conditions_hold(&p, x, k).unwrap(),
                        is_napr_tiltable(&alg, x, k),
                        "({n},{s}) vertex {} k = {k}",
                        t.quiver().vertex(x).id
                    );
                }
            }
        }
    }
}

#[test]
fn hereditary_a2_is_not_two_tiltable() {
    let t = TypeA::new(1, 2).unwrap();
    let p = t.cut_algebra(&t.standard_cut()).unwrap();
    let source = (0..2).find(|&x| p.quiver.is_source(x)).unwrap();
    assert!(matches!(two_apr_tilt_presentation(&p, source, true), Err(AprError::NotTiltable(_))));
    let alg = Algebra::<Rational>::new(&p).unwrap();
    assert!(is_napr_tiltable(&alg, source, 1));
    assert!(!is_napr_tiltable(&alg, source, 2));
    assert!(matches!(apr_tilting_module(&alg, 1 - source, 1), Err(AprError::NotTiltable(_))));
}
