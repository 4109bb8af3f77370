use num_complex::Complex;
use qseries::harness::*;
use qseries::identities::{catalog, lookup};
use qseries::{Precision, QError, SumCtrl};

type C64 = Complex<f64>;

fn ctrl() -> SumCtrl {
    SumCtrl::default_for(Precision::Double)
}

fn cfg(ids: &[&str], samples: usize) -> RunConfig {
    RunConfig { identity_ids: ids.iter().map(|s| s.to_string()).collect(), samples, ..RunConfig::default() }
}

#[test]
fn reports_are_byte_identical() {
    let c = cfg(&["rogers_fine", "ramanujan_1psi1", "cor39_c"], 12);
    let a = run(&c).unwrap().to_json();
    let b = run(&c).unwrap().to_json();
    assert_eq!(a, b);
    assert!(!a.contains("wall_time_s"));
}

#[test]
fn parallel_matches_serial() {
    let c = cfg(&["reciprocity"], 8);
    let report = run(&c).unwrap();
    let id = lookup("reciprocity").unwrap();
    let serial: Vec<SlotOutcome> = (0..8).map(|s| run_slot(id, &c, s)).collect();
    let worst = report.results[0].worst.as_ref().unwrap();
    let max = serial.iter().map(|o| o.result.as_ref().unwrap().rel_err).fold(0.0, f64::max);
    assert_eq!(report.results[0].max_rel_err, max);
    assert_eq!(serial[worst.slot].result.as_ref().unwrap().rel_err, worst.rel_err);
}

#[test]
fn different_seeds_draw_different_points() {
    let id = lookup("q_gauss").unwrap();
    let a = sample_params(id, &mut rng_for(0, id.id, 0)).unwrap();
    let b = sample_params(id, &mut rng_for(1, id.id, 0)).unwrap();
    let c = sample_params(id, &mut rng_for(0, id.id, 1)).unwrap();
    assert_ne!(a.values, b.values);
    assert_ne!(a.values, c.values);
}

#[test]
fn accepted_samples_satisfy_their_domain() {
    for id in catalog() {
        for slot in 0..20 {
            let s = sample_params(id, &mut rng_for(7, id.id, slot)).unwrap();
            assert_eq!(s.values.len(), id.domain.params.len());
            assert!(id.domain.violated(&s.values).is_none(), "{} slot {slot}", id.id);
            assert!(id.domain.poles_clear(&s.values, POLE_MARGIN, POLE_DEPTH), "{} slot {slot}", id.id);
        }
    }
}

#[test]
fn reciprocity_samples_clear_of_poles() {
    let id = lookup("reciprocity").unwrap();
    let (names, q_at) = (id.param_names(), id.param_names().iter().position(|n| *n == "q").unwrap());
    for slot in 0..50 {
        let v = sample_params(id, &mut rng_for(3, id.id, slot)).unwrap().values;
        let q = v[q_at];
        for (i, p) in v.iter().enumerate() {
            if i == q_at {
                continue;
            }
            for m in 0..=POLE_DEPTH as i32 {
                // no parameter sits on a shifted q-power
                assert!((C64::new(1.0, 0.0) - p * q.powi(m)).norm() > 1e-12, "{} at m = {m}", names[i]);
            }
        }
    }
}

#[test]
fn rogers_fine_at_c_equal_x() {
    let id = lookup("rogers_fine").unwrap();
    let x = C64::new(0.35, -0.25);
    let r = verify_identity::<f64>(id, &[C64::new(0.4, 0.3), x, x, C64::new(0.3, 0.45)], &ctrl(), 1e-8);
    assert_eq!(r.status, Status::Pass);
}

#[test]
fn q_gauss_fixed_point() {
    let id = lookup("q_gauss").unwrap();
    let v: Vec<C64> = [0.3, 0.2, 0.5, 0.4].iter().map(|x| C64::new(*x, 0.0)).collect();
    let r = verify_identity::<f64>(id, &v, &ctrl(), 1e-8);
    assert_eq!(r.status, Status::Pass, "{r:?}");
    assert!(r.rel_err < 1e-13);
    let lhs = id.lhs::<f64>(&v, &ctrl()).unwrap().value;
    assert!((lhs - C64::new(1.47890797986355264263104583421, 0.0)).norm() < 1e-14);
}

#[test]
fn term_budget_exhaustion_is_no_convergence() {
    let id = lookup("rogers_fine").unwrap();
    let v: Vec<C64> = [0.4, 0.3, 0.85, 0.8].iter().map(|x| C64::new(*x, 0.0)).collect();
    let ctrl = SumCtrl::new(1e-14, 3, 5).unwrap();
    let r = verify_identity::<f64>(id, &v, &ctrl, 1e-8);
    assert_eq!(r.status, Status::NoConvergence);
    assert!(r.message.is_some());
}

#[test]
fn no_convergence_fails_the_identity() {
    let c = RunConfig { max_terms: 3, ..cfg(&["rogers_fine"], 4) };
    let r = run(&c).unwrap();
    assert!(!r.summary.all_passed);
    assert_eq!(r.results[0].no_convergence, 4);
}

#[test]
fn unknown_identity_is_not_found() {
    assert!(matches!(run(&cfg(&["no_such_identity"], 1)), Err(QError::NotFound(_))));
    assert!(matches!(lookup("nonsense"), Err(QError::NotFound(_))));
}

#[test]
fn invalid_config_is_rejected() {
    assert!(matches!(run(&cfg(&["q_gauss"], 0)), Err(QError::Domain(_))));
    let c = RunConfig { tol: 0.0, ..cfg(&["q_gauss"], 1) };
    assert!(matches!(run(&c), Err(QError::Domain(_))));
}

#[test]
fn report_schema() {
    let path = std::env::temp_dir().join(format!("qseries-report-{}.json", std::process::id()));
    let c = RunConfig { report_path: Some(path.clone()), timing: true, ..cfg(&["cor312"], 3) };
    run(&c).unwrap();
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["config"]["samples"], 3);
    assert_eq!(v["config"]["precision"], "double");
    let r = &v["results"][0];
    for k in ["id", "anchor", "accepted", "rejections", "failures", "no_convergence", "max_rel_err", "mean_rel_err", "max_tail", "worst", "errors", "pass"] {
        assert!(r.get(k).is_some(), "missing {k}");
    }
    assert!(r["worst"]["assignment"]["q"]["re"].is_string());
    assert_eq!(v["summary"]["all_passed"], true);
    assert!(v["summary"]["wall_time_s"].is_number());
}

#[test]
fn bits_grow_with_scale() {
    assert_eq!(bits_for(1.0, 4), 256);
    assert!(bits_for(1e80, 16) > 256 + 128);
    assert_eq!(bits_for(f64::INFINITY, 4), 512);
}
