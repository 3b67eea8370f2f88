//! Acceptance suite: one test per criterion, each printing a PASS line when
//! its checks hold at the stated tolerance (run with `--nocapture` to see
//! them). Every bound is pinned here, not configurable.

use std::process::Command;

use rayon::prelude::*;

use sts_census::arith;
use sts_census::formulas::{self, CensusRow};
use sts_census::origami::{self, build_from_params};
use sts_census::params::{self, Diagram, ShearMode};

fn formula_counts(n: u64, conv: &arith::ArithTable) -> [i128; 4] {
    [
        formulas::count_a(n),
        formulas::count_b(n, conv),
        formulas::count_c(n),
        formulas::count_d(n, conv),
    ]
}

/// Criterion 1: parameter enumeration equals the closed forms — explicit
/// shears for 4 <= n <= 24, analytic shears for 4 <= n <= 300, exact.
#[test]
fn criterion_1_enumeration_vs_closed_forms() {
    let conv = formulas::conv_term_batch(300).unwrap();
    for n in 4..=24u64 {
        let want = formula_counts(n, &conv);
        for (d, want) in Diagram::ALL.into_iter().zip(want) {
            let got = params::count_by_enumeration(d, n, ShearMode::Explicit).unwrap();
            assert_eq!(got, want, "explicit {d} at n = {n}");
        }
    }
    let results: Vec<(u64, Diagram, i128, i128)> = (4..=300u64)
        .into_par_iter()
        .flat_map_iter(|n| {
            let want = formula_counts(n, &conv);
            Diagram::ALL.into_iter().zip(want).map(move |(d, want)| {
                let got = params::count_by_enumeration(d, n, ShearMode::Analytic).unwrap();
                (n, d, got, want)
            })
        })
        .collect();
    for (n, d, got, want) in results {
        assert_eq!(got, want, "analytic {d} at n = {n}");
    }
    println!(
        "PASS criterion 1: enumeration matches closed forms (explicit to 24, analytic to 300)"
    );
}

/// Criterion 2: the independent S_n x S_n sweep reproduces the counts for
/// n = 4..7 exactly, including the H(2) split.
#[test]
fn criterion_2_brute_force_census() {
    let expect_h11: [(u64, [u64; 4]); 4] = [
        (4, [0, 3, 1, 0]),
        (5, [5, 11, 6, 2]),
        (6, [6, 30, 12, 0]),
        (7, [35, 73, 40, 12]),
    ];
    for (n, h11) in expect_h11 {
        let got = origami::brute_force_census(n).unwrap();
        assert_eq!(got.h11, h11, "H(1,1) split at n = {n}");
        let h2 = formulas::count_h2(n);
        assert_eq!(got.f as i128, h2.f, "F at n = {n}");
        assert_eq!(got.g as i128, h2.g, "G at n = {n}");
    }
    let total6: u64 = origami::brute_force_census(6).unwrap().h11.iter().sum();
    assert_eq!(total6, 48);
    println!("PASS criterion 2: brute force reproduces all counts for n = 4..7");
}

/// Criterion 3: for every parameter tuple of every diagram with n <= 12,
/// the gcd criterion, monodromy block-primitivity and absolute-period
/// lattice index agree with zero discrepancies.
#[test]
fn criterion_3_primitivity_equivalence() {
    let discrepancies: usize = (4..=12u64)
        .into_par_iter()
        .map(|n| {
            let mut bad = 0usize;
            for d in Diagram::ALL {
                params::for_each_params(d, n, |t| {
                    let o = build_from_params(t).unwrap();
                    let by_gcd = t.is_primitive();
                    let by_group = o.is_primitive_group().unwrap();
                    let by_lattice = o.absolute_period_lattice().unwrap().is_full_z2();
                    if by_gcd != by_group || by_group != by_lattice {
                        bad += 1;
                    }
                });
            }
            bad
        })
        .sum();
    assert_eq!(discrepancies, 0);
    println!("PASS criterion 3: gcd = block-primitivity = lattice index 1 for all n <= 12");
}

/// Criterion 4: the identity suites — arithmetic identities and the
/// Ramanujan identity to 2000, intermediate sums to 300, the shear lemma
/// over its offset grid, the quadruple lemma to 60 — all exact.
#[test]
fn criterion_4_identity_suites() {
    use sts_census::verify::{run_suite, Suite, VerifyOptions};
    for (suite, n_max) in [
        (Suite::ArithIdentities, 2000),
        (Suite::IntermediateSums, 300),
        (Suite::ShearLemma, 0),
        (Suite::QuadrupleLemma, 60),
    ] {
        let opts = VerifyOptions {
            n_max: (n_max > 0).then_some(n_max),
            ..Default::default()
        };
        let report = run_suite(suite, opts);
        assert!(
            report.passed(),
            "suite {} failed: {:?}",
            suite.name(),
            &report.failures[..report.failures.len().min(3)]
        );
    }
    println!("PASS criterion 4: identity suites exact (arith 2000, sums 300, shear, quadruple)");
}

/// Criterion 5: A + B + C + D = E and 4C = E exactly for all 4 <= n <= 5000,
/// with B and D going through the convolution term.
#[test]
fn criterion_5_structural_identities_to_5000() {
    let conv = formulas::conv_term_batch(5000).unwrap();
    let rows: Vec<CensusRow> = (4..=5000u64)
        .into_par_iter()
        .map(|n| CensusRow::compute(n, &conv))
        .collect();
    for r in &rows {
        assert_eq!(r.a + r.b + r.c + r.d, r.e, "sum at n = {}", r.n);
        assert_eq!(4 * r.c, r.e, "4C = E at n = {}", r.n);
    }
    println!("PASS criterion 5: A+B+C+D = E and 4C = E for 4 <= n <= 5000");
}

/// Criterion 6: density limits — the computed constants land in the pinned
/// brackets, A/E at n = 10^6 is within 1e-3 of 1/4, and the mean of B/E
/// over n in [2000, 2100] is within 0.02 of the limit.
#[test]
fn criterion_6_density_limits() {
    let d = formulas::limit_densities();
    assert!(d.limit_b >= 0.4534 && d.limit_b <= 0.4535, "limit_b = {}", d.limit_b);
    assert!(d.limit_d >= 0.0465 && d.limit_d <= 0.0466, "limit_d = {}", d.limit_d);

    let n = 1_000_000u64;
    let ratio_a = formulas::count_a(n) as f64 / formulas::count_e(n) as f64;
    assert!((ratio_a - 0.25).abs() < 1e-3, "A/E at 10^6 = {ratio_a}");

    let conv = formulas::conv_term_batch(2100).unwrap();
    let mean: f64 = (2000..=2100u64)
        .map(|n| formulas::count_b(n, &conv) as f64 / formulas::count_e(n) as f64)
        .sum::<f64>()
        / 101.0;
    assert!((mean - d.limit_b).abs() < 0.02, "mean B/E = {mean} vs {}", d.limit_b);
    println!("PASS criterion 6: density limits and convergence within tolerance");
}

/// Criterion 7: the density series for 4 <= n <= 101 has 98 rows, C/E is
/// exactly 0.25 throughout, the four ratios sum to 1, and the emitted bytes
/// are identical across runs.
#[test]
fn criterion_7_densities_cli_reproduction() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_sts-census"))
            .args(["densities", "--n-min", "4", "--n-max", "101"])
            .output()
            .expect("run densities");
        assert!(out.status.success());
        out.stdout
    };
    let bytes = run();
    assert_eq!(bytes, run(), "densities output must be byte-deterministic");

    let text = String::from_utf8(bytes).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,rA,rB,rC,rD");
    assert_eq!(lines.len() - 1, 98, "one row per n in 4..=101");
    for line in &lines[1..] {
        let fields: Vec<f64> =
            line.split(',').skip(1).map(|v| v.parse().unwrap()).collect();
        assert_eq!(fields[2], 0.25, "C/E must be exactly 0.25 in {line}");
        let sum: f64 = fields.iter().sum();
        assert!((sum - 1.0).abs() < 1e-9, "ratio sum in {line}");
    }
    println!("PASS criterion 7: densities series reproduced byte-identically, 98 rows");
}
