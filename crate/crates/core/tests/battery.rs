//! End-to-end dimension checks over the deterministic polynomial battery.

use gramdim_core::battery::{theorem_battery, BATTERY_SEED};
use gramdim_core::{verify_dimension, Status, Tolerances};

#[test]
fn dimension_matches_prediction_across_battery() {
    let tol = Tolerances::default();
    let mut failures = Vec::new();
    for case in theorem_battery(BATTERY_SEED, 8, 2) {
        let rep = verify_dimension(&case.poly, &tol).unwrap();
        assert_eq!(rep.d, case.d, "{}", case.name);
        assert_eq!(rep.e, case.e, "{}", case.name);
        if !rep.agreement {
            failures.push(format!(
                "{}: predicted {} computed {} (rank {}, {:?})",
                case.name, rep.predicted, rep.computed, rep.witness_rank, rep.status
            ));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn witness_reaches_maximal_rank() {
    let tol = Tolerances::default();
    for case in theorem_battery(BATTERY_SEED, 5, 1) {
        let rep = verify_dimension(&case.poly, &tol).unwrap();
        assert_eq!(rep.status, Status::Determined, "{}", case.name);
        assert_eq!(rep.witness_rank, case.d + 1 - case.e, "{}", case.name);
        assert!(rep.sos_residual <= 1e-8, "{}", case.name);
    }
}
