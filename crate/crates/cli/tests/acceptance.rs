//! Acceptance gate: one test per shipping criterion, each printing a single
//! PASS/FAIL line (visible with --nocapture) and asserting it. Tolerances
//! and budgets are pinned here, not read from flags.

use bigyro_core::bigyro::{bg_add, check_axioms, left_gyr, right_gyr, BgParams, GroupView};
use bigyro_core::clifford::{lift_to_spin, verify_spin_decomposition};
use bigyro_core::finite::{
    build_tables, check_all_theorems, load_group, search_decompositions, verify_bigyrotransversal,
    verify_bitransversal, verify_symmetry, verify_twisted_subgroup, FiniteGroup, SearchOpts,
};
use bigyro_core::gyrocheck::check_sampled;
use bigyro_core::pseudo_orth::{
    beta, biboost_product, embed_lambda, embed_rho, factor, rotation_from_angles, PseudoOrthElem,
};
use bigyro_core::report::{all_hold, all_pass};
use bigyro_core::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

const SEED: u64 = 42;
const LAW_TOL: f64 = 1e-8;
const BOOST_TOL: f64 = 1e-9;
const ROUNDTRIP_TOL: f64 = 1e-8;
const SCALAR_TOL: f64 = 1e-12;
const SPIN_TOL: f64 = 1e-7;
const LIFT_RATE_FLOOR: f64 = 0.99;
const AXIOM_BUDGET: Duration = Duration::from_secs(60);
const ROUNDTRIP_BUDGET: Duration = Duration::from_secs(10);
const FINITE_BUDGET: Duration = Duration::from_secs(300);

fn verdict(label: &str, pass: bool, detail: &str) {
    println!("{}  {label}  ({detail})", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{label}: {detail}");
}

fn stream(trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    rng.set_stream(trial as u64);
    rng
}

fn sample(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Mat<f64> {
    Mat::from_fn(rows, cols, |_, _| rng.gen_range(-2.0..=2.0))
}

#[test]
fn a1_sampled_law_battery_across_signatures() {
    let start = Instant::now();
    let mut pass = true;
    let mut worst = (0.0f64, String::new());
    for m in 1..=5 {
        for n in 1..=5 {
            let params = BgParams::new(m, n, LAW_TOL).unwrap();
            let report = check_axioms(&params, 500, SEED).unwrap();
            pass &= all_pass(&report);
            for check in &report {
                if check.max_residual > worst.0 {
                    worst = (check.max_residual, format!("{} at ({m},{n})", check.law));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    pass &= elapsed <= AXIOM_BUDGET;
    verdict(
        "sampled law battery, 25 signatures x 500 trials",
        pass,
        &format!(
            "worst residual {:.3e} [{}] vs {LAW_TOL:.0e}, {:.1}s of {AXIOM_BUDGET:?}",
            worst.0,
            worst.1,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn a2_commutativity_and_gyrator_identities() {
    let wanted = ["bi-gyrocommutative law", "gyrator identity"];
    let mut pass = true;
    let mut worst = 0.0f64;
    for m in 1..=5 {
        for n in 1..=5 {
            let params = BgParams::new(m, n, LAW_TOL).unwrap();
            let report = check_axioms(&params, 500, SEED).unwrap();
            let found: Vec<_> = report
                .iter()
                .filter(|c| wanted.contains(&c.law.as_str()))
                .collect();
            pass &= found.len() == wanted.len();
            for check in found {
                pass &= check.pass;
                worst = worst.max(check.max_residual);
            }
        }
    }
    verdict(
        "bi-gyrocommutativity and the gyrator identity",
        pass,
        &format!("worst residual {worst:.3e} vs {LAW_TOL:.0e} on the same sample grid"),
    );
}

#[test]
fn a3_independent_gyrogroup_certification() {
    let mut pass = true;
    let mut worst = 0.0f64;
    for m in 1..=5 {
        for n in 1..=5 {
            let params = BgParams::new(m, n, LAW_TOL).unwrap();
            let tuples: Vec<[Mat<f64>; 4]> = (0..500)
                .map(|trial| {
                    let mut rng = stream(trial);
                    [
                        sample(&mut rng, n, m),
                        sample(&mut rng, n, m),
                        sample(&mut rng, n, m),
                        sample(&mut rng, n, m),
                    ]
                })
                .collect();
            let report = check_sampled(&GroupView(&params), &tuples, LAW_TOL, true);
            pass &= all_pass(&report);
            worst = report.iter().fold(worst, |acc, c| acc.max(c.max_residual));
        }
    }
    verdict(
        "independent gyrogroup certification of the twisted addition",
        pass,
        &format!("worst residual {worst:.3e} vs {LAW_TOL:.0e}, 25 signatures x 500 tuples"),
    );
}

#[test]
fn a4_boost_products_split_exactly() {
    let mut pass = true;
    let mut checked = 0usize;
    for m in 1..=4 {
        for n in 1..=4 {
            for trial in 0..500 {
                let mut rng = stream(trial);
                let p1 = sample(&mut rng, n, m);
                let p2 = sample(&mut rng, n, m);
                pass &= biboost_product(&p1, &p2, BOOST_TOL).is_ok();
                checked += 1;
            }
        }
    }
    verdict(
        "boost products split into rotation, boost, rotation",
        pass,
        &format!("{checked} products verified within {BOOST_TOL:.0e}"),
    );
}

#[test]
fn a5_factorization_round_trip_and_uniqueness() {
    let start = Instant::now();
    let mut pass = true;
    let mut worst = 0.0f64;
    for case in 0..1000usize {
        let m = case % 4 + 1;
        let n = (case / 4) % 4 + 1;
        let mut rng = stream(case);
        let om_angles: Vec<f64> = (0..m * (m - 1) / 2)
            .map(|_| rng.gen_range(-3.0..=3.0))
            .collect();
        let on_angles: Vec<f64> = (0..n * (n - 1) / 2)
            .map(|_| rng.gen_range(-3.0..=3.0))
            .collect();
        let om = rotation_from_angles(m, &om_angles);
        let on = rotation_from_angles(n, &on_angles);
        let p = sample(&mut rng, n, m);
        let g = embed_rho(&om, n, BOOST_TOL)
            .unwrap()
            .matrix()
            .mul(beta(&p, BOOST_TOL).unwrap().matrix())
            .unwrap()
            .mul(embed_lambda(&on, m, BOOST_TOL).unwrap().matrix())
            .unwrap();
        let elem = PseudoOrthElem::try_new(g, m, n, ROUNDTRIP_TOL).unwrap();
        let f = factor(&elem, ROUNDTRIP_TOL).unwrap();
        let residual = f
            .om
            .max_abs_diff(&om)
            .max(f.on.max_abs_diff(&on))
            .max(f.p.max_abs_diff(&p));
        worst = worst.max(residual);
        pass &= residual <= ROUNDTRIP_TOL;
        let again = factor(&elem, ROUNDTRIP_TOL).unwrap();
        pass &= again.om.max_abs_diff(&f.om) == 0.0
            && again.p.max_abs_diff(&f.p) == 0.0
            && again.on.max_abs_diff(&f.on) == 0.0;
    }
    let elapsed = start.elapsed();
    pass &= elapsed <= ROUNDTRIP_BUDGET;
    verdict(
        "factorization round trip and uniqueness",
        pass,
        &format!(
            "1000 cases, worst residual {worst:.3e} vs {ROUNDTRIP_TOL:.0e}, \
             refactoring is bit-stable, {:.1}s of {ROUNDTRIP_BUDGET:?}",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn a6_scalar_hyperbolic_oracle() {
    let params = BgParams::new(1, 1, SCALAR_TOL).unwrap();
    let mut pass = true;
    let mut worst = 0.0f64;
    for case in 0..10_000usize {
        let mut rng = stream(case);
        let u1: f64 = rng.gen_range(-3.0..=3.0);
        let u2: f64 = rng.gen_range(-3.0..=3.0);
        let p1 = Mat::from_vec(1, 1, vec![u1.sinh()]).unwrap();
        let p2 = Mat::from_vec(1, 1, vec![u2.sinh()]).unwrap();
        let got = bg_add(&p1, &p2, &params).unwrap().get(0, 0);
        let expected = (u1 + u2).sinh();
        let rel = (got - expected).abs() / (1.0 + expected.abs());
        worst = worst.max(rel);
        pass &= rel <= SCALAR_TOL;
        let l = left_gyr(&p1, &p2, &params).unwrap();
        let r = right_gyr(&p1, &p2, &params).unwrap();
        pass &= (l.matrix().get(0, 0) - 1.0).abs() <= SCALAR_TOL
            && (r.matrix().get(0, 0) - 1.0).abs() <= SCALAR_TOL;
    }
    verdict(
        "scalar addition matches the hyperbolic oracle",
        pass,
        &format!("10000 cases, worst relative error {worst:.3e} vs {SCALAR_TOL:.0e}"),
    );
}

fn fixture_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn trivial_decomposition_passes(group: &FiniteGroup) -> bool {
    let e = group.identity();
    let all: Vec<usize> = (0..group.order()).collect();
    let d = match verify_bitransversal(group, &[e], &all, &[e]) {
        Ok(d) => d,
        Err(_) => return false,
    };
    let mut checks = verify_bigyrotransversal(&d);
    checks.extend(verify_twisted_subgroup(group, d.b()).unwrap());
    let tables = match build_tables(&d) {
        Ok(t) => t,
        Err(_) => return false,
    };
    checks.extend(verify_symmetry(&d, &tables));
    all_hold(&checks) && check_all_theorems(&tables).all_required_hold()
}

fn mutation_is_detected(group: &FiniteGroup) -> bool {
    let mut table = group.table().to_vec();
    if group.order() == 1 {
        table[0][0] = 1;
    } else {
        table[0][1] = table[0][0];
    }
    FiniteGroup::from_table(table, None).is_err()
}

#[test]
fn a7_finite_engine_exhaustive_sweep() {
    let start = Instant::now();
    let names: Vec<String> = (1..=16)
        .map(|k| format!("c{k}.json"))
        .chain((2..=8).map(|k| format!("d{k}.json")))
        .chain(["q8.json".into(), "q16.json".into(), "s3.json".into()])
        .collect();
    let mut pass = true;
    let mut decompositions = 0usize;
    let mut violations = 0usize;
    for name in &names {
        let raw = std::fs::read_to_string(fixture_path(name)).unwrap();
        let group = load_group(&raw).unwrap().group;
        assert!(group.order() <= 16, "{name} exceeds the sweep bound");
        let hits = search_decompositions(&group, &SearchOpts::default()).unwrap();
        for hit in &hits {
            let report = check_all_theorems(&hit.tables);
            pass &= report.all_required_hold();
            violations += report.required.iter().map(|c| c.violations).sum::<usize>();
            decompositions += 1;
        }
        pass &= trivial_decomposition_passes(&group);
        pass &= mutation_is_detected(&group);
    }
    let elapsed = start.elapsed();
    pass &= violations == 0 && elapsed <= FINITE_BUDGET;
    verdict(
        "finite engine exhaustive sweep over all shipped groups of order <= 16",
        pass,
        &format!(
            "{} groups, {decompositions} decompositions, {violations} violations, \
             trivial and mutation checks included, {:.1}s of {FINITE_BUDGET:?}",
            names.len(),
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn a8_spin_lift_suite() {
    let mut pass = true;
    let mut worst = 0.0f64;
    let mut min_rate = 1.0f64;
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let params = BgParams::new(m, n, SPIN_TOL).unwrap();
        let report = verify_spin_decomposition(&params, 200, SEED).unwrap();
        pass &= all_pass(&report);
        worst = report.iter().fold(worst, |acc, c| acc.max(c.max_residual));

        let mut lifted = 0usize;
        for trial in 0..200 {
            let mut rng = stream(trial);
            let p = sample(&mut rng, n, m);
            let elem =
                PseudoOrthElem::try_new(beta(&p, SPIN_TOL).unwrap().matrix().clone(), m, n, SPIN_TOL)
                    .unwrap();
            if lift_to_spin(&elem, SPIN_TOL).is_ok() {
                lifted += 1;
            }
        }
        min_rate = min_rate.min(lifted as f64 / 200.0);
    }
    pass &= min_rate >= LIFT_RATE_FLOOR;
    verdict(
        "spin lifts: homomorphism, kernel, and transported factorization",
        pass,
        &format!(
            "4 signatures x 200 trials, worst residual {worst:.3e} vs {SPIN_TOL:.0e}, \
             lift success rate {min_rate:.4} >= {LIFT_RATE_FLOOR}"
        ),
    );
}

#[test]
fn a9_byte_identical_reports() {
    let run = || {
        std::process::Command::new(env!("CARGO_BIN_EXE_bigyro"))
            .args(["axioms", "--seed", "42"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    let pass = a.status.code() == Some(0) && !a.stdout.is_empty() && a.stdout == b.stdout;
    verdict(
        "seeded reports are byte-identical",
        pass,
        &format!("two runs, {} bytes of JSON each", a.stdout.len()),
    );
}
