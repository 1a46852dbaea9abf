mod common;

use legsat::diagram::moves::stabilize;
use legsat::diagram::patterns::{basic_product, zigzag};
use legsat::ruling::LaurentPoly;
use legsat::verify::*;
use legsat::{parse_front, PlatFront};
use proptest::prelude::*;
use std::time::Duration;

const BUDGET: Duration = Duration::from_secs(60);

fn unknot() -> PlatFront {
    parse_front("L1; R1").unwrap()
}

fn trefoil() -> PlatFront {
    parse_front("L1; L3; X2; X2; X2; R1; R3").unwrap()
}

fn assert_pass(r: &TheoremReport) {
    assert_eq!(r.verdict, Verdict::Pass, "{}", r.summary());
}

#[test]
fn main_result_small_cases() {
    let r = check_main_result(&unknot(), 1, &[1], BUDGET).unwrap();
    assert_pass(&r);
    assert_eq!(r.left["representation"], true);
    let r = check_main_result(&unknot(), 1, &[2], BUDGET).unwrap();
    assert_pass(&r);
    let st = stabilize(&trefoil(), false).unwrap();
    let r = check_main_result(&st, 1, &[1], BUDGET).unwrap();
    assert_pass(&r);
    assert_eq!(r.left["representation"], false);
    assert_eq!(r.right["ruling of the full twist"], false);
}

#[test]
fn bijection_formula() {
    let a11 = basic_product(&[(1, 0), (1, 0)]).unwrap();
    let a2 = basic_product(&[(2, 0)]).unwrap();
    assert_pass(&check_bij_formula(&unknot(), &a11, 1).unwrap());
    assert_pass(&check_bij_formula(&trefoil(), &a11, 1).unwrap());
    let r = check_bij_formula(&trefoil(), &a2, 1).unwrap();
    assert_pass(&r);
    let (full, reduced) = satellite_polynomials(&trefoil(), &a2, 1).unwrap();
    assert_eq!(full, reduced);
    let su = stabilize(&unknot(), true).unwrap();
    let r = check_bij_formula(&su, &a11, 1).unwrap();
    assert_pass(&r);
    assert_eq!(reduced_polynomial(&su, &a11, 1).unwrap(), LaurentPoly::zero());
}

#[test]
fn estimate_stab_compatibility() {
    let a11 = basic_product(&[(1, 0), (1, 0)]).unwrap();
    let a2 = basic_product(&[(2, 0)]).unwrap();
    assert_pass(&check_estimate(&trefoil(), &a11, 1).unwrap());
    let st = stabilize(&trefoil(), false).unwrap();
    for descending in [true, false] {
        assert_pass(&check_stab(&st, &zigzag(descending), 1).unwrap());
    }
    assert_pass(&check_stab(&st, &a11, 1).unwrap());
    assert_eq!(check_compatibility(&unknot(), &a2, 1).unwrap().verdict, Verdict::Fail);
    assert_pass(&check_compatibility(&unknot(), &a11, 1).unwrap());
    assert_pass(&check_compatibility(&trefoil(), &a2, 1).unwrap());
}

#[test]
fn a_formula() {
    assert_pass(&check_a_formula(&unknot(), &[1]).unwrap());
    assert_pass(&check_a_formula(&unknot(), &[2]).unwrap());
    assert_pass(&check_a_formula(&trefoil(), &[1, 1]).unwrap());
}

#[test]
fn two_dimensional() {
    let r = check_2dim(&unknot(), 1, BUDGET).unwrap();
    assert_pass(&r);
    assert_eq!(r.left["A(1,1)-compatible"], true);
    assert_eq!(r.left["A(2)-compatible"], false);
    let r = check_2dim(&stabilize(&unknot(), true).unwrap(), 1, BUDGET).unwrap();
    assert_pass(&r);
    assert_eq!(r.left["A(1,1)-compatible"], false);
}

#[test]
fn nested_left_cusps_in_the_companion() {
    let nested = parse_front("L1 | L2; X3; X2; X2; X2; X2; R1; R3").unwrap();
    let a11 = basic_product(&[(1, 0), (1, 0)]).unwrap();
    assert_pass(&check_l_invariance(&[trefoil(), nested], &a11, 1).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduced_polynomial_is_invariant(choices in prop::collection::vec(1..4000usize, 1..8), two in any::<bool>()) {
        let fronts = common::random_isotopy(&trefoil(), &choices);
        prop_assume!(fronts.last().unwrap().crossing_count() <= 10);
        let l = basic_product(if two { &[(2, 0)][..] } else { &[(1, 0), (1, 0)][..] }).unwrap();
        let r = check_l_invariance(&fronts, &l, 1).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Pass, "{}", r.summary());
    }
}
