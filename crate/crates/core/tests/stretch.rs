//! Larger fixtures. Run with `cargo test --release -- --ignored`.

use qhopf::algebra::CheckOutcome;
use qhopf::cohomology::{check_cocycle, cocycle_from_phi};
use qhopf::families::{build_aq, AqParams, SkewPrimitiveDatum};
use qhopf::twist::TwistConstruction;

#[test]
#[ignore]
fn aq_p5() {
    let a = build_aq(AqParams::new(5, 1).unwrap()).unwrap();
    assert_eq!(a.base().dim(), 125);
    let r = a.verify_all();
    assert!(r.all_pass(), "{:?}", r.failures());
    assert_eq!(a.rank_degree_one().unwrap(), 1.into());
}

#[test]
#[ignore]
fn sl2_n5() {
    let t = TwistConstruction::from_datum(&SkewPrimitiveDatum::sl2(5)).unwrap();
    assert_eq!(t.check_coproduct_closure().unwrap(), CheckOutcome::Pass);
    assert_eq!(t.check_associator_closed_form().unwrap(), CheckOutcome::Pass);
    let a = t.extract_subalgebra().unwrap();
    assert_eq!(a.base().dim(), 125);
    let r = a.verify_all();
    assert!(r.all_pass(), "{:?}", r.failures());
}

#[test]
#[ignore]
fn sl3_n3() {
    let t = TwistConstruction::from_datum(&SkewPrimitiveDatum::sl3(3)).unwrap();
    assert_eq!(t.check_coproduct_closure().unwrap(), CheckOutcome::Pass);
    assert_eq!(t.check_associator_closed_form().unwrap(), CheckOutcome::Pass);
    let a = t.extract_subalgebra().unwrap();
    assert_eq!(a.base().dim(), 6561);
    let w = cocycle_from_phi(a.base()).unwrap();
    assert_eq!(check_cocycle(&w).unwrap(), CheckOutcome::Pass);
}
