//! Cross-checking suites: every identity, lemma and contract the census
//! rests on, runnable one suite at a time from the command line.
//!
//! A suite runs a batch of exact comparisons and reports how many checks ran
//! and which failed. Suites are independent; each has a default range and
//! honors an `n_max` override where that makes sense.
//!
//! `inject_failure` corrupts one expected value in the `param-oracle` suite.
//! It exists so the failure path (nonzero exit, failure listing) can be
//! exercised end to end; it is never set outside tests.

use rayon::prelude::*;

use crate::arith::{
    self, additive_convolve, dirichlet_convolve, divisors, factorize_u64, pointwise_mul,
    tabulate, ArithTable, FuncId,
};
use crate::formulas::{self, SumName};
use crate::origami::{self, build_from_params, Stratum};
use crate::params::{self, Diagram, Params, ShearMode};

/// The available verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    ArithIdentities,
    IntermediateSums,
    ShearLemma,
    QuadrupleLemma,
    ParamOracle,
    BuilderContract,
    AbsPer,
    BruteForce,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::ArithIdentities,
        Suite::IntermediateSums,
        Suite::ShearLemma,
        Suite::QuadrupleLemma,
        Suite::ParamOracle,
        Suite::BuilderContract,
        Suite::AbsPer,
        Suite::BruteForce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ArithIdentities => "arith-identities",
            Suite::IntermediateSums => "intermediate-sums",
            Suite::ShearLemma => "shear-lemma",
            Suite::QuadrupleLemma => "quadruple-lemma",
            Suite::ParamOracle => "param-oracle",
            Suite::BuilderContract => "builder-contract",
            Suite::AbsPer => "absper",
            Suite::BruteForce => "bruteforce",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Options shared by the suites.
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Override of the suite's default upper bound on n.
    pub n_max: Option<u64>,
    /// Permit the n = 8 sweep in the brute-force suite.
    pub allow_n8: bool,
    /// Test fixture: corrupt one expected value in param-oracle.
    pub inject_failure: bool,
}

/// Outcome of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite, checks: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

/// Runs one suite.
pub fn run_suite(suite: Suite, opts: VerifyOptions) -> SuiteReport {
    match suite {
        Suite::ArithIdentities => arith_identities(opts),
        Suite::IntermediateSums => intermediate_sums(opts),
        Suite::ShearLemma => shear_lemma(opts),
        Suite::QuadrupleLemma => quadruple_lemma(opts),
        Suite::ParamOracle => param_oracle(opts),
        Suite::BuilderContract => builder_contract(opts),
        Suite::AbsPer => absper(opts),
        Suite::BruteForce => brute_force(opts),
    }
}

fn table(which: FuncId, k: u32, n: usize) -> ArithTable {
    tabulate(which, k, n).expect("tabulation within verified ranges")
}

/// Identities among the tabulated arithmetic functions, default n <= 2000:
/// Möbius inversion, the sigma and Jordan convolution identities, the
/// Möbius-product evaluation, the Ramanujan additive-convolution identity,
/// the J_2 growth bounds, and convolution algebra laws on pseudo-random
/// tables.
fn arith_identities(opts: VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::ArithIdentities);
    let n = opts.n_max.unwrap_or(2000).max(4) as usize;
    let mu = table(FuncId::Mobius, 0, n);
    let one = table(FuncId::One, 0, n);
    let eps = table(FuncId::Eps, 0, n);
    let phi = table(FuncId::Phi, 0, n);
    let id1 = table(FuncId::IdK, 1, n);

    let mu_one = dirichlet_convolve(&mu, &one).unwrap();
    for m in 1..=n {
        r.check(mu_one.get(m) == eps.get(m), || format!("(mu*1)({m}) != eps({m})"));
    }
    for k in 1..=4u32 {
        let sk = table(FuncId::SigmaK, k, n);
        let idk = table(FuncId::IdK, k, n);
        let conv = dirichlet_convolve(&mu, &sk).unwrap();
        for m in 1..=n {
            r.check(conv.get(m) == idk.get(m), || format!("(mu*sigma_{k})({m}) != {m}^{k}"));
        }
    }
    for k in 1..=2u32 {
        let idk = table(FuncId::IdK, k, n);
        let jk = table(FuncId::JordanK, k, n);
        let conv = dirichlet_convolve(&mu, &idk).unwrap();
        for m in 1..=n {
            r.check(conv.get(m) == jk.get(m), || format!("(mu*Id_{k})({m}) != J_{k}({m})"));
        }
    }
    let id1_mu = pointwise_mul(&id1, &mu).unwrap();
    let phi_conv = dirichlet_convolve(&phi, &id1_mu).unwrap();
    for m in 1..=n {
        r.check(phi_conv.get(m) == mu.get(m), || format!("(phi*(Id_1.mu))({m}) != mu({m})"));
    }

    // Möbius product identity sum_{d|m} mu(d) f(d) = prod_{p|m} (1 - f(p)),
    // for f = sigma_1 directly and for f = 1/Id_1 in the cleared-denominator
    // form sum mu(d) m/d = phi(m).
    let s1 = table(FuncId::SigmaK, 1, n);
    for m in 1..=n.min(1000) {
        let lhs: i128 = divisors(m as u64)
            .into_iter()
            .map(|d| mu.get(d as usize) * s1.get(d as usize))
            .sum();
        let rhs: i128 = factorize_u64(m as u64)
            .into_iter()
            .map(|(p, _)| 1 - arith::sigma_value(1, p))
            .product();
        r.check(lhs == rhs, || format!("mobius-product sigma_1 at {m}: {lhs} != {rhs}"));
        let lhs2: i128 = divisors(m as u64)
            .into_iter()
            .map(|d| mu.get(d as usize) * (m as i128 / d as i128))
            .sum();
        r.check(lhs2 == phi.get(m), || format!("mobius-product 1/Id_1 at {m} (cleared)"));
    }

    // Ramanujan: 12 (sigma_1 Δ sigma_1)(m) = 5 sigma_3(m) + sigma_1(m) - 6 m sigma_1(m)
    let s3 = table(FuncId::SigmaK, 3, n);
    let d11 = additive_convolve(&s1, &s1).unwrap();
    for m in 1..=n {
        let rhs = 5 * s3.get(m) + s1.get(m) - 6 * m as i128 * s1.get(m);
        r.check(12 * d11.get(m) == rhs, || format!("Ramanujan identity at {m}"));
    }

    // Growth bounds in integer form: 608 m^2 < 1000 J_2(m) <= 1000 m^2.
    let j2 = table(FuncId::JordanK, 2, n);
    for m in 2..=n {
        let m2 = (m as i128) * (m as i128);
        r.check(
            608 * m2 < 1000 * j2.get(m) && 1000 * j2.get(m) <= 1000 * m2,
            || format!("J_2 bounds at {m}"),
        );
    }

    // Dirichlet convolution is commutative and associative on seeded
    // pseudo-random triples.
    let mut seed = 0x5eed_u64;
    let mut rnd_table = |len: usize| {
        let vals: Vec<i128> = (0..=len)
            .map(|_| {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((seed >> 40) as i128) - (1 << 23)
            })
            .collect();
        ArithTable::from_values(vals).unwrap()
    };
    for _ in 0..4 {
        let len = 200;
        let (f, g, h) = (rnd_table(len), rnd_table(len), rnd_table(len));
        let fg = dirichlet_convolve(&f, &g).unwrap();
        let gf = dirichlet_convolve(&g, &f).unwrap();
        r.check(fg == gf, || "Dirichlet convolution not commutative".into());
        let fg_h = dirichlet_convolve(&fg, &h).unwrap();
        let f_gh = dirichlet_convolve(&f, &dirichlet_convolve(&g, &h).unwrap()).unwrap();
        r.check(fg_h == f_gh, || "Dirichlet convolution not associative".into());
    }
    r
}

/// Intermediate sums of the enumeration: direct summation equals the
/// closed form for X, Y, U, V, W over 4 <= n <= 300 (default).
fn intermediate_sums(opts: VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::IntermediateSums);
    let hi = opts.n_max.unwrap_or(300).clamp(4, 2000);
    let conv = formulas::conv_term_batch(hi as usize).unwrap();
    let results: Vec<(SumName, u64, i128, i128)> = (4..=hi)
        .into_par_iter()
        .flat_map_iter(|n| {
            let conv = &conv;
            SumName::ALL.into_iter().map(move |name| {
                (
                    name,
                    n,
                    params::intermediate_direct(name, n),
                    formulas::intermediate_closed(name, n, conv),
                )
            })
        })
        .collect();
    for (name, n, direct, closed) in results {
        r.check(direct == closed, || {
            format!("{name:?}({n}): direct {direct} != closed {closed}")
        });
    }
    r
}

/// Shear-box lemma over the stated grid: coprime heights up to 5, box sides
/// up to 12, box offsets in -3..=3; the brute count must match the formula
/// and be independent of the offsets.
fn shear_lemma(_opts: VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::ShearLemma);
    for p in 1..=5u64 {
        for q in 1..=5u64 {
            if arith::gcd(p, q) != 1 {
                continue;
            }
            for k in 1..=12u64 {
                for l in 1..=12u64 {
                    let want = params::shear_count_formula(p, q, k, l).unwrap();
                    for b1 in -3..=3i64 {
                        for b2 in -3..=3i64 {
                            let got =
                                params::shear_count_brute(p, q, k, l, b1, b2).unwrap();
                            r.check(got == want, || {
                                format!(
                                    "shear p={p} q={q} k={k} l={l} box ({b1},{b2}): \
                                     {got} != {want}"
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    r
}

/// Quadruple-counting lemma: closed form equals literal iteration for all
/// n <= 60 (default) and every divisor d | n.
fn quadruple_lemma(opts: VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::QuadrupleLemma);
    let hi = opts.n_max.unwrap_or(60).clamp(4, 100);
    let results: Vec<(u64, u64, i128, i128)> = (4..=hi)
        .into_par_iter()
        .flat_map_iter(|n| {
            divisors(n).into_iter().map(move |d| {
                (
                    n,
                    d,
                    params::quadruple_count(n, d).unwrap(),
                    params::quadruple_count_brute(n, d).unwrap(),
                )
            })
        })
        .collect();
    for (n, d, formula, brute) in results {
        r.check(formula == brute, || {
            format!("quadruples n={n} d={d}: formula {formula} != brute {brute}")
        });
    }
    r
}

/// Parameter enumeration against the closed-form counts: explicit shears to
/// n = 24, analytic shears to n = 300 (default), the Omega quadruple count
/// against the diagram-A formula to n = 200, and the Omega bijection round
/// trip to n = 30.
fn param_oracle(opts: VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::ParamOracle);
    let analytic_hi = opts.n_max.unwrap_or(300).clamp(4, params::ANALYTIC_CAP);
    let conv = formulas::conv_term_batch(analytic_hi.max(24) as usize).unwrap();
    let fudge = i128::from(opts.inject_failure);

    let expected = |d: Diagram, n: u64| match d {
        Diagram::A => formulas::count_a(n),
        Diagram::B => formulas::count_b(n, &conv),
        Diagram::C => formulas::count_c(n),
        Diagram::D => formulas::count_d(n, &conv),
    };

    for n in 4..=params::EXPLICIT_CAP.min(analytic_hi) {
        for d in Diagram::ALL {
            let got = params::count_by_enumeration(d, n, ShearMode::Explicit).unwrap();
            let want = expected(d, n) + fudge;
            r.check(got == want, || {
                format!("explicit enumeration {d} at n={n}: {got} != {want}")
            });
        }
    }

    let analytic: Vec<(Diagram, u64, i128)> = (4..=analytic_hi)
        .into_par_iter()
        .flat_map_iter(|n| {
            Diagram::ALL.into_iter().map(move |d| {
                (d, n, params::count_by_enumeration(d, n, ShearMode::Analytic).unwrap())
            })
        })
        .collect();
    for (d, n, got) in analytic {
        let want = expected(d, n);
        r.check(got == want, || {
            format!("analytic enumeration {d} at n={n}: {got} != {want}")
        });
    }

    let omega_hi = opts.n_max.unwrap_or(200).clamp(4, 200);
    let omega: Vec<(u64, i128)> = (4..=omega_hi)
        .into_par_iter()
        .map(|n| (n, params::count_omega(n)))
        .collect();
    for (n, got) in omega {
        let want = formulas::count_a(n);
        r.check(got == want, || format!("|Omega({n})| = {got} != A({n}) = {want}"));
    }

    for n in 4..=30u64 {
        let mut quads = Vec::new();
        params::for_each_params(Diagram::A, n, |t| {
            if let Params::A(a) = t {
                if a.is_primitive() {
                    let q = params::omega_of_params(a);
                    r.check(params::params_of_omega(n, q) == *a, || {
                        format!("omega bijection round trip fails at {a:?}")
                    });
                    quads.push(q);
                }
            }
        });
        quads.sort_unstable();
        quads.dedup();
        r.check(quads.len() as i128 == formulas::count_a(n), || {
            format!("omega image size at n={n}")
        });
    }
    r
}

/// Multiset of (width, height) pairs a parameter tuple promises.
fn expected_geometry(t: &Params) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = match t {
        Params::A(t) => vec![((t.j + t.k + t.l + t.m) as usize, t.p as usize)],
        Params::B(t) => vec![
            ((t.k + t.l + t.m) as usize, t.p as usize),
            (t.m as usize, t.q as usize),
        ],
        Params::C(t) => vec![
            ((t.k + t.l) as usize, t.p as usize),
            ((t.l + t.m) as usize, t.q as usize),
        ],
        Params::D(t) => vec![
            (t.k as usize, t.p as usize),
            ((t.k + t.l) as usize, t.q as usize),
            (t.l as usize, t.r as usize),
        ],
    };
    v.sort_unstable();
    v
}

fn builder_checks_for_tuple(r: &mut SuiteReport, t: &Params) {
    let o = match build_from_params(t) {
        Ok(o) => o,
        Err(e) => {
            r.check(false, || format!("build failed for {t:?}: {e}"));
            return;
        }
    };
    r.check(o.stratum() == Stratum::H11, || format!("stratum not H(1,1) for {t:?}"));
    match o.classify_diagram() {
        Ok(d) => r.check(d == t.diagram(), || {
            format!("classified {d} but built from {:?}", t.diagram())
        }),
        Err(e) => r.check(false, || format!("classification failed for {t:?}: {e}")),
    }
    match o.cylinder_decomposition() {
        Ok(decomp) => {
            let mut got: Vec<(usize, usize)> =
                decomp.cylinders.iter().map(|c| (c.width, c.height)).collect();
            got.sort_unstable();
            r.check(got == expected_geometry(t), || {
                format!("cylinder geometry mismatch for {t:?}: {got:?}")
            });
        }
        Err(e) => r.check(false, || format!("decomposition failed for {t:?}: {e}")),
    }
}

/// Builder validation contract: every tuple with n <= 12 builds a connected
/// H(1,1) origami with the promised cylinder geometry that classifies back
/// to its own diagram; distinct primitive tuples stay distinct surfaces, in
/// the numbers the closed forms predict (n <= 14); and for diagram A the
/// singular squares reproduce the Omega reparametrization.
fn builder_contract(opts: VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::BuilderContract);
    let hi = opts.n_max.unwrap_or(12).clamp(4, 14);
    let sub: Vec<SuiteReport> = (4..=hi)
        .into_par_iter()
        .map(|n| {
            let mut r = SuiteReport::new(Suite::BuilderContract);
            for d in Diagram::ALL {
                params::for_each_params(d, n, |t| builder_checks_for_tuple(&mut r, t));
            }
            r
        })
        .collect();
    for s in sub {
        r.absorb(s);
    }

    let conv = formulas::conv_term_batch(16).unwrap();
    let dedup_hi = opts.n_max.unwrap_or(14).clamp(4, 14);
    for n in 4..=dedup_hi {
        for d in Diagram::ALL {
            let mut builds = Vec::new();
            params::for_each_params(d, n, |t| {
                if t.is_primitive() {
                    builds.push(build_from_params(t).unwrap());
                }
            });
            let got = origami::dedup_count(builds).unwrap() as i128;
            let want = match d {
                Diagram::A => formulas::count_a(n),
                Diagram::B => formulas::count_b(n, &conv),
                Diagram::C => formulas::count_c(n),
                Diagram::D => formulas::count_d(n, &conv),
            };
            r.check(got == want, || {
                format!("dedup over primitive {d} tuples at n={n}: {got} != {want}")
            });
        }
    }

    for n in 4..=dedup_hi {
        params::for_each_params(Diagram::A, n, |t| {
            if let Params::A(a) = t {
                if a.is_primitive() {
                    let o = build_from_params(t).unwrap();
                    let comm = o.commutator();
                    let mut singular_tops: Vec<u64> = (0..o.n())
                        .filter(|&s| {
                            let up = o.tau()[s] as usize;
                            comm[up] as usize != up
                        })
                        .map(|s| s as u64 + 1)
                        .collect();
                    singular_tops.sort_unstable();
                    r.check(singular_tops == params::omega_of_params(a), || {
                        format!("singular squares disagree with omega map for {a:?}")
                    });
                }
            }
        });
    }
    r
}

/// Three-way primitivity equivalence on every tuple with n <= 12: the gcd
/// criterion, block-primitivity of the monodromy group, and index one of
/// the absolute-period lattice must agree exactly.
fn absper(opts: VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::AbsPer);
    let hi = opts.n_max.unwrap_or(12).clamp(4, 16);
    let sub: Vec<SuiteReport> = (4..=hi)
        .into_par_iter()
        .map(|n| {
            let mut r = SuiteReport::new(Suite::AbsPer);
            for d in Diagram::ALL {
                params::for_each_params(d, n, |t| {
                    let o = build_from_params(t).unwrap();
                    let by_gcd = t.is_primitive();
                    let by_group = o.is_primitive_group().unwrap();
                    let by_lattice = o.absolute_period_lattice().unwrap().is_full_z2();
                    r.check(by_gcd == by_group && by_group == by_lattice, || {
                        format!(
                            "{t:?}: gcd {by_gcd}, blocks {by_group}, lattice {by_lattice}"
                        )
                    });
                });
            }
            r
        })
        .collect();
    for s in sub {
        r.absorb(s);
    }
    r
}

/// Full permutation-pair sweep against the closed forms, n = 4..=6 by
/// default (n = 7 via `--n-max 7`, n = 8 additionally behind `--allow-n8`).
fn brute_force(opts: VerifyOptions) -> SuiteReport {
    let mut r = SuiteReport::new(Suite::BruteForce);
    let hi = opts.n_max.unwrap_or(6).clamp(4, if opts.allow_n8 { 8 } else { 7 });
    let conv = formulas::conv_term_batch(8).unwrap();
    for n in 4..=hi {
        let got = origami::brute_force_census(n).unwrap();
        let want = [
            formulas::count_a(n),
            formulas::count_b(n, &conv),
            formulas::count_c(n),
            formulas::count_d(n, &conv),
        ];
        for (i, d) in Diagram::ALL.into_iter().enumerate() {
            r.check(got.h11[i] as i128 == want[i], || {
                format!("brute force {d} at n={n}: {} != {}", got.h11[i], want[i])
            });
        }
        let h2 = formulas::count_h2(n);
        r.check(got.f as i128 == h2.f, || {
            format!("brute force F at n={n}: {} != {}", got.f, h2.f)
        });
        r.check(got.g as i128 == h2.g, || {
            format!("brute force G at n={n}: {} != {}", got.g, h2.g)
        });
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_at_reduced_ranges() {
        for (suite, n_max) in [
            (Suite::ArithIdentities, 400),
            (Suite::IntermediateSums, 80),
            (Suite::QuadrupleLemma, 30),
            (Suite::ParamOracle, 60),
            (Suite::BuilderContract, 10),
            (Suite::AbsPer, 10),
            (Suite::BruteForce, 5),
        ] {
            let r = run_suite(
                suite,
                VerifyOptions { n_max: Some(n_max), ..Default::default() },
            );
            assert!(
                r.passed(),
                "suite {} failed: {:?}",
                suite.name(),
                &r.failures[..r.failures.len().min(3)]
            );
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn injected_failure_is_detected() {
        let r = run_suite(
            Suite::ParamOracle,
            VerifyOptions { n_max: Some(30), inject_failure: true, ..Default::default() },
        );
        assert!(!r.passed());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }
}
