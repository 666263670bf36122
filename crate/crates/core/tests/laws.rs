use std::time::Instant;

use paramcat::matrix::{DenseSampler, MatrixBackend, PermutationSampler, TensorMutation};
use paramcat::param::{check_laws, LawConfig, Param, ParamSpace};

fn print_report(report: &paramcat::param::LawReport) {
    for e in &report.entries {
        println!(
            "{:<34} {:>5} max_dev={:.3e} tol={:e}",
            e.name,
            if e.passed { "ok" } else { "FAIL" },
            e.max_deviation,
            e.tolerance
        );
    }
}

#[test]
fn dense_matrix_backend_satisfies_every_law() {
    let param = Param::new(MatrixBackend::new(), ParamSpace::new(2));
    let start = Instant::now();
    let report = check_laws(&param, &DenseSampler::new(4), &LawConfig::default());
    println!("elapsed {:?}", start.elapsed());
    print_report(&report);
    assert!(report.all_passed());
    assert!(report.max_deviation() < 1e-10);
    assert_eq!(report.entries.len(), 24);
}

#[test]
fn permutation_matrices_satisfy_every_law_exactly() {
    let param = Param::new(MatrixBackend::new(), ParamSpace::new(3));
    let config = LawConfig {
        trials: 25,
        seed: 5,
        tol: 0.0,
    };
    let report = check_laws(&param, &PermutationSampler::new(4), &config);
    print_report(&report);
    assert!(report.all_passed());
    assert_eq!(report.max_deviation(), 0.0);
}

#[test]
fn swapped_tensor_breaks_interchange() {
    let param = Param::new(
        MatrixBackend::with_mutation(TensorMutation::SwapArguments),
        ParamSpace::new(2),
    );
    let report = check_laws(&param, &DenseSampler::new(4), &LawConfig::default());
    print_report(&report);
    let interchange = report.entry("tensor.interchange").unwrap();
    assert!(!interchange.passed);
    let cx = interchange.counterexample.as_ref().expect("counterexample");
    assert!(cx.deviation > 1e-10);
    assert_eq!(cx.point.arity(), 2);
}

#[test]
fn reports_are_seed_deterministic() {
    let param = Param::new(MatrixBackend::new(), ParamSpace::new(1));
    let config = LawConfig {
        trials: 3,
        seed: 42,
        tol: 1e-10,
    };
    let a = check_laws(&param, &DenseSampler::new(3), &config);
    let b = check_laws(&param, &DenseSampler::new(3), &config);
    assert_eq!(a, b);
    let c = check_laws(&param, &DenseSampler::new(3), &LawConfig { seed: 43, ..config });
    assert_ne!(a, c);
}
