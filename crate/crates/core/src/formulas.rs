//! Closed-form counts by cylinder diagram for the genus-two strata, the
//! intermediate-sum closed forms behind them, and the asymptotic density
//! constants.
//!
//! Writing `J_k` for the Jordan totient and `conv` for the convolution term
//! `(mu * (Id_2 . mu) * (sigma_1 Δ sigma_2))`, the H(1,1) counts are
//!
//! ```text
//! A(n) = 1/2 n J_1(n) + (1/24 n^2 - 1/4 n) J_2(n)
//! B(n) = conv(n) - (1/12 n^2 + 5/24 n - 3/4) J_2(n) - 1/2 n J_1(n)
//! C(n) = 1/24 (n-2)(n-3) J_2(n)
//! D(n) = (1/6 n^2 - 1/6 n) J_2(n) - conv(n)
//! E(n) = 1/6 (n-2)(n-3) J_2(n)        (total, = A + B + C + D)
//! ```
//!
//! and the two-diagram H(2) counts are
//!
//! ```text
//! F(n) = 1/6 n J_2(n) - 1/2 n J_1(n)                  (one cylinder)
//! G(n) = 5/24 n J_2(n) + 1/2 n J_1(n) - 3/4 J_2(n)    (two cylinders)
//! H(n) = 3/8 (n-2) J_2(n) = F(n) + G(n)
//! ```
//!
//! All fractional coefficients are cleared by computing `24 * count` (or
//! `12 * count`) in i128 and asserting exact divisibility before dividing; a
//! divisibility failure is an implementation bug, never a data condition,
//! and panics. Counts below the domain of a stratum (n < 4 for H(1,1)) are
//! defined as 0: the polynomials return garbage there and the brute force
//! confirms no surfaces exist.

use serde::Serialize;

use crate::arith::{
    self, additive_convolve, dirichlet_convolve, divisors, jordan_value, mobius_value,
    pointwise_mul, sigma_value, tabulate, ArithError, ArithTable, FuncId,
};

/// Additive convolutions are kept to the direct quadratic sum; this cap
/// bounds the work a census table request may ask for.
pub const ADDITIVE_CONV_CAP: usize = 10_000;

/// Default table length for a full census run.
pub const DEFAULT_TABLE_N_MAX: usize = 5_000;

/// Divides exactly, panicking otherwise. Used after clearing fractional
/// coefficients: a failure means a formula was transcribed wrong.
#[track_caller]
fn exact_div(num: i128, den: i128) -> i128 {
    assert!(num % den == 0, "exact division failed: {num} / {den}");
    num / den
}

/// The convolution term `(mu * (Id_2 . mu) * (sigma_1 Δ sigma_2))(m)` for
/// all `m <= n_max`, built from the arithmetic primitives.
///
/// The Dirichlet kernel `mu * (Id_2 . mu)` coincides with the pointwise
/// product `mu . sigma_2` on squarefree arguments but carries an extra `p^2`
/// on arguments exactly divisible by `p^2`; the B and D counts need the
/// kernel form (the first divergence would hit B(8)).
pub fn conv_term_batch(n_max: usize) -> Result<ArithTable, ArithError> {
    let mu = tabulate(FuncId::Mobius, 0, n_max)?;
    let id2 = tabulate(FuncId::IdK, 2, n_max)?;
    let kernel = dirichlet_convolve(&mu, &pointwise_mul(&id2, &mu)?)?;
    let s1 = tabulate(FuncId::SigmaK, 1, n_max)?;
    let s2 = tabulate(FuncId::SigmaK, 2, n_max)?;
    let delta = additive_convolve(&s1, &s2)?;
    dirichlet_convolve(&kernel, &delta)
}

/// Total primitive count E(n) in H(1,1). Zero for n < 4.
pub fn count_e(n: u64) -> i128 {
    if n < 4 {
        return 0;
    }
    let (n, j2) = (n as i128, jordan_value(2, n));
    exact_div((n - 2) * (n - 3) * j2, 6)
}

/// Diagram-A count. Zero for n < 4.
pub fn count_a(n: u64) -> i128 {
    if n < 4 {
        return 0;
    }
    let (j1, j2) = (jordan_value(1, n), jordan_value(2, n));
    let n = n as i128;
    exact_div(12 * n * j1 + (n * n - 6 * n) * j2, 24)
}

/// Diagram-B count; `conv` must cover `n`. Zero for n < 4.
pub fn count_b(n: u64, conv: &ArithTable) -> i128 {
    if n < 4 {
        return 0;
    }
    let (j1, j2) = (jordan_value(1, n), jordan_value(2, n));
    let c = conv.get(n as usize);
    let n = n as i128;
    exact_div(24 * c - (2 * n * n + 5 * n - 18) * j2 - 12 * n * j1, 24)
}

/// Diagram-C count. Zero for n < 4.
pub fn count_c(n: u64) -> i128 {
    if n < 4 {
        return 0;
    }
    let j2 = jordan_value(2, n);
    let n = n as i128;
    exact_div((n - 2) * (n - 3) * j2, 24)
}

/// Diagram-D count; `conv` must cover `n`. Zero for n < 4.
pub fn count_d(n: u64, conv: &ArithTable) -> i128 {
    if n < 4 {
        return 0;
    }
    let j2 = jordan_value(2, n);
    let c = conv.get(n as usize);
    let n = n as i128;
    exact_div((n * n - n) * j2 - 6 * c, 6)
}

/// H(2) counts per diagram and total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct H2Row {
    pub n: u64,
    /// One-cylinder count F(n).
    pub f: i128,
    /// Two-cylinder count G(n).
    pub g: i128,
    /// Total H(n) = F(n) + G(n).
    pub h: i128,
}

/// H(2) counts (F, G, H) for `n >= 3`; F + G = H is asserted.
pub fn count_h2(n: u64) -> H2Row {
    assert!(n >= 3, "H(2) counts need n >= 3");
    let (j1, j2) = (jordan_value(1, n), jordan_value(2, n));
    let ni = n as i128;
    let f = exact_div(ni * j2 - 3 * ni * j1, 6);
    let g = exact_div(5 * ni * j2 + 12 * ni * j1 - 18 * j2, 24);
    let h = exact_div(3 * (ni - 2) * j2, 8);
    assert_eq!(f + g, h, "F + G must equal H at n = {n}");
    H2Row { n, f, g, h }
}

/// The five intermediate sums of the enumeration, named as in their defining
/// summations (see [`crate::params::intermediate_direct`] for those).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumName {
    X,
    Y,
    U,
    V,
    W,
}

impl SumName {
    pub const ALL: [SumName; 5] = [SumName::X, SumName::Y, SumName::U, SumName::V, SumName::W];
}

/// Closed form of the named intermediate sum at `n`.
///
/// `conv` is only consulted for X. At n = 1 every defining sum is empty while
/// three of the closed-form polynomials evaluate to -1/12 or -1/24, so 0 is
/// returned there to match the sums; for n >= 2 closed form and sum agree.
pub fn intermediate_closed(name: SumName, n: u64, conv: &ArithTable) -> i128 {
    if n == 1 {
        return 0;
    }
    let ni = n as i128;
    match name {
        SumName::X => {
            let j2 = jordan_value(2, n);
            exact_div(12 * conv.get(n as usize) - ni * ni * j2, 12)
        }
        SumName::Y => {
            let (j1, j2) = (jordan_value(1, n), jordan_value(2, n));
            exact_div(5 * ni * j2 + 12 * ni * j1 - 18 * j2, 24)
        }
        SumName::U => {
            // (Id_2 . mu) * (1/24 sigma_4 + 1/2 sigma_3 - 1/24 (12 Id_1 + 1) sigma_2)
            let mut acc: i128 = 0;
            for d in divisors(n) {
                let mu = mobius_value(d);
                if mu == 0 {
                    continue;
                }
                let q = n / d;
                let inner = sigma_value(4, q) + 12 * sigma_value(3, q)
                    - (12 * q as i128 + 1) * sigma_value(2, q);
                acc += mu * (d as i128) * (d as i128) * inner;
            }
            exact_div(acc, 24)
        }
        SumName::V => {
            // (Id_1 . mu) * (5/12 sigma_3 + 1/12 sigma_1 - 1/2 Id_1 sigma_1)
            let mut acc: i128 = 0;
            for d in divisors(n) {
                let mu = mobius_value(d);
                if mu == 0 {
                    continue;
                }
                let q = n / d;
                let inner =
                    5 * sigma_value(3, q) + sigma_value(1, q) - 6 * q as i128 * sigma_value(1, q);
                acc += mu * d as i128 * inner;
            }
            exact_div(acc, 12)
        }
        SumName::W => {
            let j2 = jordan_value(2, n);
            exact_div((ni * ni - 2 * ni) * j2, 12)
        }
    }
}

/// One census row: the five counts plus the four diagram ratios as reduced
/// exact rationals (numerator, denominator).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: u64,
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
    pub e: i128,
    pub ratio_a: (i128, i128),
    pub ratio_b: (i128, i128),
    pub ratio_c: (i128, i128),
    pub ratio_d: (i128, i128),
}

fn reduced_ratio(num: i128, den: i128) -> (i128, i128) {
    assert!(den > 0);
    if num == 0 {
        return (0, 1);
    }
    let g = arith::gcd(num.unsigned_abs() as u64, den.unsigned_abs() as u64) as i128;
    (num / g, den / g)
}

impl CensusRow {
    /// Builds the row for `n >= 4`; `conv` must cover `n`.
    pub fn compute(n: u64, conv: &ArithTable) -> CensusRow {
        assert!(n >= 4, "census rows start at n = 4");
        let (a, b, c, d, e) = (
            count_a(n),
            count_b(n, conv),
            count_c(n),
            count_d(n, conv),
            count_e(n),
        );
        assert_eq!(a + b + c + d, e, "diagram counts must sum to E at n = {n}");
        CensusRow {
            n,
            a,
            b,
            c,
            d,
            e,
            ratio_a: reduced_ratio(a, e),
            ratio_b: reduced_ratio(b, e),
            ratio_c: reduced_ratio(c, e),
            ratio_d: reduced_ratio(d, e),
        }
    }
}

/// Asymptotic density constants for the four diagrams.
///
/// `limit_b = zeta(2) zeta(3) / (2 zeta(5)) - 1/2` and
/// `limit_d = 1 - zeta(2) zeta(3) / (2 zeta(5))`; A and C hold exactly a
/// quarter each in the limit.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LimitDensities {
    pub zeta2: f64,
    pub zeta3: f64,
    pub zeta5: f64,
    pub limit_a: f64,
    pub limit_b: f64,
    pub limit_c: f64,
    pub limit_d: f64,
}

/// Riemann zeta at an integer s >= 2 by direct summation of 10^6 terms plus
/// an Euler-Maclaurin tail.
///
/// Error budget: the tail correction `M^{1-s}/(s-1) + M^{-s}/2 - s M^{-s-1}/12`
/// leaves a truncation error below `s(s+1)(s+2) M^{-s-3}/720 < 1e-19` for
/// s >= 2, M = 1e6; summing smallest-first keeps rounding error near a few
/// ulp. Both are far inside the 1e-12 requirement.
fn zeta_int(s: u32) -> f64 {
    const M: u64 = 1_000_000;
    let mut sum = 0.0f64;
    for j in (1..=M).rev() {
        sum += (j as f64).powi(-(s as i32));
    }
    let m = M as f64;
    let si = s as f64;
    sum + m.powf(1.0 - si) / (si - 1.0) - 0.5 * m.powf(-si) + si / 12.0 * m.powf(-si - 1.0)
}

/// Computes the density constants; `zeta2` comes from `pi^2 / 6`.
pub fn limit_densities() -> LimitDensities {
    let zeta2 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
    let zeta3 = zeta_int(3);
    let zeta5 = zeta_int(5);
    let k = zeta2 * zeta3 / (2.0 * zeta5);
    LimitDensities {
        zeta2,
        zeta3,
        zeta5,
        limit_a: 0.25,
        limit_b: k - 0.5,
        limit_c: 0.25,
        limit_d: 1.0 - k,
    }
}

/// Main term `zeta(2) zeta(3) / (12 zeta(5)) * sigma_4(n)` of the additive
/// convolution `(sigma_1 Δ sigma_2)(n)`.
///
/// Diagnostic only: shows the convergence of the convolution toward its
/// first-order asymptotic; never used in exact counts.
pub fn asym_main_term_sigma1_sigma2(n: u64) -> f64 {
    let d = limit_densities();
    d.zeta2 * d.zeta3 / (12.0 * d.zeta5) * sigma_value(4, n) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conv(n_max: usize) -> ArithTable {
        conv_term_batch(n_max).unwrap()
    }

    #[test]
    fn conv_term_examples() {
        let t = conv(8);
        assert_eq!(t.get(1), 0);
        assert_eq!(t.get(4), 24);
        assert_eq!(t.get(5), 78);
        assert_eq!(t.get(7), 324);
    }

    #[test]
    fn h11_counts_small_n() {
        let t = conv(8);
        let row4 = CensusRow::compute(4, &t);
        assert_eq!((row4.a, row4.b, row4.c, row4.d, row4.e), (0, 3, 1, 0, 4));
        let row5 = CensusRow::compute(5, &t);
        assert_eq!((row5.a, row5.b, row5.c, row5.d, row5.e), (5, 11, 6, 2, 24));
        let row7 = CensusRow::compute(7, &t);
        assert_eq!((row7.a, row7.b, row7.c, row7.d, row7.e), (35, 73, 40, 12, 160));
        assert_eq!(count_e(8), 240);
        assert_eq!(count_a(12), 312);
    }

    #[test]
    fn counts_below_domain_are_zero() {
        let t = conv(4);
        for n in 0..4 {
            assert_eq!(count_a(n), 0);
            assert_eq!(count_b(n, &t), 0);
            assert_eq!(count_c(n), 0);
            assert_eq!(count_d(n, &t), 0);
            assert_eq!(count_e(n), 0);
        }
    }

    #[test]
    fn h2_counts() {
        assert_eq!(count_h2(3), H2Row { n: 3, f: 1, g: 2, h: 3 });
        assert_eq!(count_h2(4), H2Row { n: 4, f: 4, g: 5, h: 9 });
        assert_eq!(count_h2(5).f, 10);
        assert_eq!(count_h2(5).g, 17);
        for n in 3..=400 {
            let r = count_h2(n);
            assert_eq!(r.f + r.g, r.h);
        }
    }

    #[test]
    fn count_b_coefficient_forms_agree() {
        // 1/24 (2n+9)(n-2) == 1/12 n^2 + 5/24 n - 3/4: the B count can be
        // cross-checked against the expanded coefficient form.
        let t = conv(300);
        for n in 4..=300u64 {
            let (j1, j2) = (jordan_value(1, n), jordan_value(2, n));
            let ni = n as i128;
            let alt = exact_div(
                24 * t.get(n as usize) - (2 * ni + 9) * (ni - 2) * j2 - 12 * ni * j1,
                24,
            );
            assert_eq!(alt, count_b(n, &t));
        }
    }

    #[test]
    fn structural_identities() {
        let t = conv(600);
        for n in 4..=600u64 {
            let row = CensusRow::compute(n, &t);
            assert_eq!(row.a + row.b + row.c + row.d, row.e);
            assert_eq!(4 * row.c, row.e);
            assert!(row.a >= 0 && row.b >= 0 && row.c >= 0 && row.d >= 0);
            assert!(row.e > 0);
            assert_eq!(row.ratio_c, (1, 4));
        }
    }

    #[test]
    fn e_two_ways() {
        // J_2 via the product formula against mu * Id_2.
        let n_max = 500;
        let mu = tabulate(FuncId::Mobius, 0, n_max).unwrap();
        let id2 = tabulate(FuncId::IdK, 2, n_max).unwrap();
        let j2_conv = dirichlet_convolve(&mu, &id2).unwrap();
        for n in 4..=n_max {
            let e_alt = exact_div((n as i128 - 2) * (n as i128 - 3) * j2_conv.get(n), 6);
            assert_eq!(e_alt, count_e(n as u64));
        }
    }

    #[test]
    fn intermediate_closed_examples() {
        let t = conv(16);
        assert_eq!(intermediate_closed(SumName::X, 4, &t), 8);
        assert_eq!(intermediate_closed(SumName::Y, 3, &t), 2);
        assert_eq!(intermediate_closed(SumName::W, 1, &t), 0);
        assert_eq!(intermediate_closed(SumName::V, 2, &t), 1);
    }

    #[test]
    fn zeta_and_limits() {
        let d = limit_densities();
        assert!((d.zeta2 - 1.6449340668482264).abs() < 1e-12);
        assert!((d.zeta3 - 1.2020569031595943).abs() < 1e-12);
        assert!((d.zeta5 - 1.036_927_755_143_37).abs() < 1e-12);
        assert!(d.limit_b >= 0.4534 && d.limit_b <= 0.4535);
        assert!(d.limit_d >= 0.0465 && d.limit_d <= 0.0466);
        let total = d.limit_a + d.limit_b + d.limit_c + d.limit_d;
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gamma_factor_is_one_twelfth() {
        // Gamma(2) Gamma(3) / Gamma(5) = 1 * 2 / 24
        let d = limit_densities();
        let c = asym_main_term_sigma1_sigma2(1) / (d.zeta2 * d.zeta3 / d.zeta5);
        assert!((c - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn asym_ratio_converges() {
        let n = 2000u64;
        let s1 = tabulate(FuncId::SigmaK, 1, n as usize).unwrap();
        let s2 = tabulate(FuncId::SigmaK, 2, n as usize).unwrap();
        let delta = additive_convolve(&s1, &s2).unwrap();
        let ratio = delta.get(n as usize) as f64 / sigma_value(4, n) as f64;
        let d = limit_densities();
        let target = d.zeta2 * d.zeta3 / (12.0 * d.zeta5);
        assert!((ratio - target).abs() < 0.02, "ratio {ratio} vs {target}");
    }
}
