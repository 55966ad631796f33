//! Acceptance suite: one line per criterion, exact comparisons throughout.
//!
//! Runs as a plain binary (`harness = false`) so the per-criterion lines are
//! always shown; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use cfklab::algebra::{laurent_snf, LaurentPoly, SparseMatrix};
use cfklab::cfk::{catalog_get, catalog_names, mirror, staircase, tensor, CfkComplex};
use cfklab::invariants::{
    is_d_symmetric_zero_surgery, obstruction_report, pm_one_surgery_d, qhs_fiber_two_knot, six_twist_spin_trefoil,
    zero_surgery_profile, SurgerySign, ZeroSurgeryProfile,
};
use cfklab::rational::{half, int, is_even_integer};
use cfklab::surgery::{
    build_cone, compute_v, d_totally_twisted_zero_surgery, nonsplit_tower, stability_run, twisted_complex_d, ConeMode,
    ConeTotal, EngineConfig, StabilityOp,
};
use cfklab::Rational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

type Outcome = Result<(), String>;

fn cfg() -> EngineConfig {
    EngineConfig::default()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn get(name: &str) -> CfkComplex {
    catalog_get(name).expect("catalog entry")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn profile(name: &str) -> Result<ZeroSurgeryProfile, String> {
    zero_surgery_profile(&get(name), &cfg()).map_err(|e| format!("{name}: {e}"))
}

fn trefoil_table() -> Outcome {
    let p = profile("trefoil_right")?;
    let expected_d = [q(-3, 2), q(-1, 2), q(1, 2), q(3, 2)];
    let expected_dt = [int(-2), int(0), int(0), int(2)];
    ensure(p.d_values() == expected_d && p.dtilde_values() == expected_dt, || {
        format!("got d = {:?}, d~ = {:?}", p.d_values(), p.dtilde_values())
    })
}

fn s1_times_s2() -> Outcome {
    let p = profile("unknot")?;
    ensure(
        p.d_untwisted_plus == half() && p.d_twisted_plus == -half() && p.dtilde_values() == [int(0); 4],
        || format!("got {p:?}"),
    )
}

fn v0_values() -> Outcome {
    let wd = get("whitehead_double_trefoil_model");
    let cases = [
        ("trefoil_right", get("trefoil_right"), 1),
        ("trefoil_left", get("trefoil_left"), 0),
        ("unknot", get("unknot"), 0),
        ("whitehead_double_trefoil_model", wd.clone(), 1),
        ("mirror of whitehead_double_trefoil_model", mirror(&wd), 0),
    ];
    for (name, c, expected) in cases {
        let v = compute_v(&c, 0, &cfg()).map_err(|e| format!("{name}: {e}"))?;
        ensure(v == expected, || format!("{name}: V0 = {v}, expected {expected}"))?;
    }
    Ok(())
}

fn whitehead_double() -> Outcome {
    let wd = profile("whitehead_double_trefoil_model")?;
    let t = profile("trefoil_right")?;
    ensure(wd == t, || format!("{wd:?} != {t:?}"))
}

fn cone_vs_formula() -> Outcome {
    for name in catalog_names() {
        let c = get(name);
        let m = mirror(&c);
        for (label, k, other) in [("", &c, &m), ("mirror of ", &m, &c)] {
            let cone = d_totally_twisted_zero_surgery(k, &cfg()).map_err(|e| e.to_string())?;
            let v = compute_v(other, 0, &cfg()).map_err(|e| e.to_string())?;
            let formula = int(2 * v as i64) - half();
            ensure(cone == formula, || format!("{label}{name}: cone {cone} != formula {formula}"))?;
        }
    }
    Ok(())
}

fn nonsplit_regression() -> Outcome {
    let d = twisted_complex_d(&nonsplit_tower(), &cfg()).map_err(|e| e.to_string())?;
    ensure(d == -half(), || format!("got {d}"))
}

fn parity_and_reversal() -> Outcome {
    for name in catalog_names() {
        let p = profile(name)?;
        ensure(p.dtilde_values().iter().all(is_even_integer), || {
            format!("{name}: odd d~ in {:?}", p.dtilde_values())
        })?;
        ensure(p.dtilde_twisted_plus + p.dtilde_twisted_minus >= int(0), || {
            format!("{name}: twisted reversal fails")
        })?;
        ensure(p.dtilde_untwisted_plus + p.dtilde_untwisted_minus <= int(0), || {
            format!("{name}: untwisted reversal fails")
        })?;
    }
    Ok(())
}

fn twist_spin_pipeline() -> Outcome {
    let d = pm_one_surgery_d(&get("trefoil_left"), SurgerySign::Minus, &cfg()).map_err(|e| e.to_string())?;
    ensure(d == int(2), || format!("d(S^3_-1(left trefoil)) = {d}"))?;
    let quad = qhs_fiber_two_knot(d);
    ensure(quad.values() == [int(2), int(-2), int(2), int(-2)], || format!("{quad:?}"))?;
    let o = obstruction_report(&quad);
    ensure(o.reversible.obstructed && o.negative_amphichiral.obstructed, || format!("{o:?}"))
}

fn d_symmetric_predicate() -> Outcome {
    for (name, expected) in [("unknot", true), ("figure8", true), ("trefoil_right", false)] {
        let got = is_d_symmetric_zero_surgery(&get(name), &cfg()).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("{name}: {got}"))?;
    }
    let o = obstruction_report(&six_twist_spin_trefoil());
    ensure(o.d_symmetric_seifert.obstructed, || format!("{o:?}"))
}

// --- randomized property suite -------------------------------------------

/// Palindromic step lists built from a random first half.
fn steps_strategy(max_half: usize, max_step: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=max_step, 0..=max_half).prop_map(|half| {
        let mut steps = half.clone();
        steps.extend(half.iter().rev());
        steps
    })
}

#[derive(Clone, Debug)]
enum Sample {
    Staircase(Vec<u32>),
    Tensor(Vec<u32>, String),
}

impl Sample {
    fn build(&self) -> CfkComplex {
        match self {
            Sample::Staircase(s) => staircase(s).expect("palindromic"),
            Sample::Tensor(s, name) => tensor(&staircase(s).expect("palindromic"), &get(name)),
        }
    }
}

fn sample_strategy() -> impl Strategy<Value = Sample> {
    let names: Vec<String> = catalog_names().iter().map(|s| s.to_string()).collect();
    prop_oneof![
        steps_strategy(3, 3).prop_map(Sample::Staircase),
        (steps_strategy(2, 2), prop::sample::select(names)).prop_map(|(s, n)| Sample::Tensor(s, n)),
    ]
}

/// Vₛ of a staircase from its corners: min over even-indexed generators of
/// max(i, j − s).
fn corner_v(steps: &[u32], s: i64) -> i64 {
    let height: i64 = steps.iter().step_by(2).map(|&h| h as i64).sum();
    let (mut i, mut j) = (0i64, height);
    let mut best = i.max(j - s);
    for pair in steps.chunks(2) {
        i += pair[0] as i64;
        j -= pair[1] as i64;
        best = best.min(i.max(j - s));
    }
    best
}

fn one_plus_t() -> LaurentPoly {
    LaurentPoly::from_exponents([0, 1])
}

fn check_sample(sample: &Sample) -> Result<(), TestCaseError> {
    let c = sample.build();
    let m = mirror(&c);
    prop_assert!(c.validate().is_ok(), "{:?}", c.validate());
    prop_assert!(m.validate().is_ok(), "mirror: {:?}", m.validate());
    let t = tensor(&c, &get("trefoil_right"));
    prop_assert!(t.validate().is_ok(), "tensor: {:?}", t.validate());

    let strict = EngineConfig {
        stability_rounds: 3,
        ..cfg()
    };
    let v = stability_run(StabilityOp::ComputeV { complex: &c, s: 0 }, &strict)
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(v.value >= int(0));
    prop_assert!(v.certificate.iter().all(|e| e.value == v.value));
    if let Sample::Staircase(steps) = sample {
        prop_assert_eq!(v.value, int(corner_v(steps, 0)));
    }
    let vm = compute_v(&m, 0, &cfg()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let d = stability_run(StabilityOp::DTotallyTwisted { complex: &c }, &cfg())
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(d.value, int(2 * vm as i64) - half());

    let n = cfklab::surgery::truncation_floor(&c);
    let k = n / 2;
    let two = int(2);
    match build_cone(&c, 0, ConeMode::Twisted, n).and_then(|x| x.total()) {
        Ok(ConeTotal::Twisted(gc)) => {
            for g in gc.tower_window(k) {
                let tower = gc.tower_image_at(g, k).expect("in window");
                let on_lattice = g >= d.value && ((g - d.value) / two).is_integer();
                if on_lattice {
                    prop_assert_eq!(tower.free_rank, 0, "grading {}", g);
                    prop_assert_eq!(&tower.torsion, &vec![one_plus_t()], "grading {}", g);
                } else {
                    prop_assert!(tower.is_zero(), "grading {}: {:?}", g, tower);
                }
            }
        }
        other => return Err(TestCaseError::fail(format!("twisted cone: {other:?}"))),
    }
    match build_cone(&c, 0, ConeMode::Untwisted, n).and_then(|x| x.total()) {
        Ok(ConeTotal::Untwisted(gc)) => {
            let summary = gc.summarize(k, cfklab::exec::Exec::Sequential);
            let total: usize = summary.tower_bottoms.iter().map(|b| b.multiplicity).sum();
            prop_assert_eq!(total, 2);
            for g in gc.tower_window(k) {
                let tower = gc.tower_image_at(g, k).expect("in window");
                prop_assert!(tower.free_rank <= 2, "grading {}", g);
            }
        }
        other => return Err(TestCaseError::fail(format!("untwisted cone: {other:?}"))),
    }
    Ok(())
}

fn laurent_matrix_strategy() -> impl Strategy<Value = SparseMatrix<LaurentPoly>> {
    let poly = prop::collection::btree_set(-2i32..=3, 0..=3).prop_map(LaurentPoly::from_exponents);
    (1usize..=4, 1usize..=4).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(poly.clone(), c), r)
            .prop_map(move |rows| SparseMatrix::from_dense_sized(r, c, &rows))
    })
}

fn check_snf(m: &SparseMatrix<LaurentPoly>) -> Result<(), TestCaseError> {
    let snf = laurent_snf(m);
    let rebuilt = snf.left_inverse.matmul(&snf.diagonal()).matmul(&snf.right_inverse);
    prop_assert_eq!(&rebuilt, m);
    prop_assert_eq!(&snf.left.matmul(m).matmul(&snf.right), &snf.diagonal());
    let nonzero: Vec<_> = snf.invariants.iter().filter(|p| !p.is_zero()).collect();
    for w in nonzero.windows(2) {
        prop_assert!(w[0].divides(w[1]), "{} does not divide {}", w[0], w[1]);
    }
    Ok(())
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn property_suite() -> Outcome {
    runner(120)
        .run(&sample_strategy(), |s| check_sample(&s))
        .map_err(|e| format!("complexes: {e}"))?;
    runner(120)
        .run(&laurent_matrix_strategy(), |m| check_snf(&m))
        .map_err(|e| format!("snf: {e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("trefoil zero-surgery table", trefoil_table),
        ("S1xS2 from the unknot", s1_times_s2),
        ("V0 values", v0_values),
        ("Whitehead double has the trefoil profile", whitehead_double),
        ("mapping cone agrees with the V0 formula", cone_vs_formula),
        ("nonsplit twisted tower has d = -1/2", nonsplit_regression),
        ("parity and reversal inequalities", parity_and_reversal),
        ("5-twist-spin pipeline and obstructions", twist_spin_pipeline),
        ("d-symmetric predicate and 6-twist-spin", d_symmetric_predicate),
        ("randomized property suite", property_suite),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
