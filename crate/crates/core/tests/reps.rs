//! Augmentations and representations on atlas knots: agreement of the two
//! searches, conjugation closure, graded sparsity and the existence pattern
//! expected from rulings.

use legsat::atlas;
use legsat::dga::{build_default, grading_modulus, FreeDGA};
use legsat::diagram::moves::stabilize;
use legsat::pathmatrix::gf2::{general_linear, GF2Matrix};
use legsat::reps::{
    find_augmentations, find_representation, respects_degree, two_dim_classes, verify_augmentation, verify_representation, MatrixRep,
    Outcome, TConstraint, DEFAULT_TIMEOUT,
};
use legsat::ruling::{polynomial, Mode};
use legsat::PlatFront;

fn moduli(front: &PlatFront) -> Vec<u32> {
    let m = grading_modulus(front);
    [0, 1, 2].into_iter().filter(|&p| if p == 0 { m == 0 } else { m.is_multiple_of(p) }).collect()
}

fn has_ruling(front: &PlatFront, p: u32) -> bool {
    !polynomial(&front.graded(p).unwrap(), Mode::Normal).is_zero()
}

fn graded_sparse(dga: &FreeDGA, p: u32, rep: &MatrixRep) -> bool {
    rep.images.iter().zip(&dga.generators).all(|(m, g)| respects_degree(m, &rep.eta, g.degree, p))
}

#[test]
fn augmentations_are_one_dimensional_representations() {
    for e in atlas::load_all().unwrap() {
        let dga = build_default(&e.front).unwrap();
        for p in moduli(&e.front) {
            let augs = find_augmentations(&dga, p).unwrap();
            assert!(augs.iter().all(|a| verify_augmentation(&dga, p, a)), "{} p={p}", e.name);
            let one = GF2Matrix::identity(1);
            let rep = find_representation(&dga, p, &[0], &TConstraint::Exact(one), DEFAULT_TIMEOUT).unwrap();
            assert_eq!(!augs.is_empty(), rep.is_found(), "{} p={p}", e.name);
            if let Outcome::Found(rep) = rep {
                assert!(graded_sparse(&dga, p, &rep), "{} p={p}", e.name);
            }
        }
    }
}

#[test]
fn augmentations_exist_exactly_when_rulings_do() {
    let mut fronts: Vec<(String, PlatFront)> = Vec::new();
    for e in atlas::load_all().unwrap() {
        for positive in [true, false] {
            fronts.push((format!("{} stabilized {positive}", e.name), stabilize(&e.front, positive).unwrap()));
        }
        fronts.push((e.name, e.front));
    }
    for (name, front) in fronts {
        let dga = build_default(&front).unwrap();
        for p in [1, 2].into_iter().filter(|&p| moduli(&front).contains(&p)) {
            let aug = !find_augmentations(&dga, p).unwrap().is_empty();
            assert_eq!(aug, has_ruling(&front, p), "{name} p={p}");
        }
    }
}

#[test]
fn conjugation_closure() {
    let dga = build_default(&atlas::load("trefoil_rh").unwrap().front).unwrap();
    let Outcome::Found(rep) = find_representation(&dga, 1, &[0, 0], &TConstraint::Any, DEFAULT_TIMEOUT).unwrap() else {
        panic!("trefoil has 2-dimensional representations");
    };
    assert!(graded_sparse(&dga, 1, &rep));
    for c in general_linear(2) {
        let conj = rep.conjugate(&c).unwrap();
        assert!(verify_representation(&dga, 1, &conj));
        let t = c.mul(&rep.t_images[0]).mul(&c.inverse().unwrap());
        let found = find_representation(&dga, 1, &[0, 0], &TConstraint::Exact(t), DEFAULT_TIMEOUT).unwrap();
        assert!(found.is_found());
    }
}

#[test]
fn direct_sum_of_augmentations() {
    let dga = build_default(&atlas::load("trefoil_rh").unwrap().front).unwrap();
    let augs = find_augmentations(&dga, 1).unwrap();
    let (a, b) = (&augs[0], &augs[augs.len() - 1]);
    let images = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(&x, &y)| GF2Matrix::block_diag(&[GF2Matrix::from_code(1, x as u64), GF2Matrix::from_code(1, y as u64)]))
        .collect();
    let rep = MatrixRep { eta: vec![0, 0], images, t_images: vec![GF2Matrix::identity(2)] };
    assert!(verify_representation(&dga, 1, &rep));
}

#[test]
fn stabilized_knots_have_no_small_representations() {
    for name in ["unknot_stab_pos", "unknot_stab_neg", "trefoil_rh_stab_neg", "trefoil_lh_stab_pos"] {
        let dga = build_default(&atlas::load(name).unwrap().front).unwrap();
        for (p, eta) in [(1, vec![0]), (1, vec![0, 0]), (2, vec![0]), (2, vec![0, 0]), (2, vec![0, 1])] {
            let found = find_representation(&dga, p, &eta, &TConstraint::Any, DEFAULT_TIMEOUT).unwrap();
            assert_eq!(found, Outcome::None, "{name} p={p} {eta:?}");
        }
    }
}

#[test]
fn unknot_and_torus_knot_two_dimensional() {
    let [(_, i), (_, a), (_, b)] = two_dim_classes();
    let unknot = build_default(&atlas::load("unknot").unwrap().front).unwrap();
    assert!(find_representation(&unknot, 1, &[0, 0], &TConstraint::Exact(i.clone()), DEFAULT_TIMEOUT).unwrap().is_found());
    for m in [a, b] {
        let found = find_representation(&unknot, 1, &[0, 0], &TConstraint::ConjClass(m), DEFAULT_TIMEOUT).unwrap();
        assert_eq!(found, Outcome::None);
    }
    let torus = build_default(&atlas::load("torus_3_-4").unwrap().front).unwrap();
    assert!(find_augmentations(&torus, 1).unwrap().is_empty());
    let Outcome::Found(rep) = find_representation(&torus, 1, &[0, 0], &TConstraint::Exact(i), DEFAULT_TIMEOUT).unwrap() else {
        panic!("T(3,-4) has a 2-dimensional representation with t = I");
    };
    assert!(graded_sparse(&torus, 1, &rep));
}
