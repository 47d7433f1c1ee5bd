//! The identities at the degrees the command-line suite runs them.

use bop_core::catalog::SpectrumId;
use bop_core::splitting::{self, CTerm};
use bop_core::{conjecture, tower};

#[test]
fn master_identity_to_512() {
    let r = splitting::verify_rhs_one(512, CTerm::Exact).unwrap();
    assert!(r.pass, "{r}");
}

#[test]
fn induction_steps_to_512() {
    for s in 2..=9 {
        let r = splitting::verify_bcb(s, 512, CTerm::Exact).unwrap();
        assert!(r.pass, "{r}");
    }
}

#[test]
fn rational_splitting_to_256() {
    assert!(splitting::verify_lemma61(256).unwrap().pass);
    assert!(splitting::verify_thm26_homotopy(256).unwrap().pass);
}

#[test]
fn index_arithmetic() {
    assert!(splitting::verify_irreducibility(12).unwrap().pass);
    assert!(splitting::verify_index_bijection(1 << 13).unwrap().pass);
    assert!(splitting::verify_wsw2_5(6, 128).unwrap().pass);
}

#[test]
fn towers() {
    assert!(tower::verify_bo_regression(64).unwrap().pass);
    assert!(tower::verify_prop46(100).unwrap().pass);
    assert!(tower::verify_negative_tower(-8, 5, 64, None).unwrap().pass);
    let r = tower::verify_bop_tower(12, 60).unwrap();
    assert!(r.pass, "{r}");
    for s in [SpectrumId::BP, SpectrumId::Bu] {
        let r = tower::verify_oracle_equivalence(s, -6, 6, 40).unwrap();
        assert!(r.pass, "{r}");
    }
}

#[test]
fn conjecture_suite() {
    let r = conjecture::verify_conjecture_limit(64, 64, Some(16)).unwrap();
    assert!(r.pass, "{r}");
    assert!(conjecture::verify_epsilon_partition(64).unwrap().pass);
    assert!(conjecture::verify_first_appearance(64).unwrap().pass);
    assert!(conjecture::verify_squares(1 << 12).unwrap().pass);
    assert!(conjecture::verify_conjecture_shape(64, 128).unwrap().pass);
}

#[test]
fn conjecture_limit_to_256() {
    let r = conjecture::verify_conjecture_limit(256, 64, None).unwrap();
    assert!(r.pass, "{r}");
    let latest: u64 = r.parameters["latest_stabilization"].parse().unwrap();
    assert!(latest <= 33, "{r}");
}
