use qseries::harness::{rng_for, sample_params};
use qseries::identities::catalog;
use qseries::{Dd, Precision, Scalar, ScalarExt, SumCtrl};

#[test]
fn every_entry_evaluates_at_a_sampled_point() {
    let ctrl = SumCtrl::default_for(Precision::Double);
    for id in catalog() {
        let v = sample_params(id, &mut rng_for(11, id.id, 0)).unwrap().values;
        let l = id.lhs::<f64>(&v, &ctrl).unwrap_or_else(|e| panic!("{} lhs: {e}", id.id));
        let r = id.rhs::<f64>(&v, &ctrl).unwrap_or_else(|e| panic!("{} rhs: {e}", id.id));
        assert!(l.value.norm().is_finite() && r.value.norm().is_finite(), "{}", id.id);
    }
}

#[test]
fn extended_agrees_with_double() {
    let cd = SumCtrl::default_for(Precision::Double);
    let ce = SumCtrl::default_for(Precision::Extended);
    for id in catalog().iter().filter(|i| !i.id.starts_with("thm_multi") && i.id != "multi_6w5") {
        let v = sample_params(id, &mut rng_for(5, id.id, 0)).unwrap().values;
        let p: Vec<Scalar<Dd>> = v.iter().map(|z| <Scalar<Dd> as ScalarExt<Dd>>::from_c64(*z)).collect();
        let d = id.lhs::<f64>(&v, &cd).unwrap().value;
        let e = id.lhs::<Dd>(&p, &ce).unwrap().value.to_c64();
        assert!((d - e).norm() / d.norm().max(1.0) < 1e-12, "{}", id.id);
    }
}

#[test]
fn anchors_are_nonempty_and_params_named() {
    for id in catalog() {
        assert!(!id.anchor.is_empty());
        assert_eq!(id.param_names().len(), id.domain.params.len());
        assert_eq!(id.param_names().last(), Some(&"q"), "{}", id.id);
    }
}
