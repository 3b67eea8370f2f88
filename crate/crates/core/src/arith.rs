//! Exact-integer arithmetic-function kernel.
//!
//! Tabulates the standard multiplicative functions (Möbius, Euler and Jordan
//! totients, divisor sums, powers) as signed 128-bit integers and combines
//! them with the two convolutions used throughout the census:
//!
//! * Dirichlet convolution  `(f * g)(n) = sum_{d|n} f(d) g(n/d)`
//! * additive convolution   `(f Δ g)(n) = sum_{k=1}^{n-1} f(k) g(n-k)`
//!
//! Every operation is exact; any overflow of the 128-bit representation is
//! reported as [`ArithError::Overflow`], never wrapped. Intermediate
//! magnitudes reach `n_max^5`, which i128 accommodates for every table size
//! this crate accepts.

use thiserror::Error;

/// Largest function order accepted by [`tabulate`]; the census needs at most
/// `sigma_4` and `J_2`.
pub const MAX_ORDER: u32 = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("table length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("i128 overflow while tabulating {0}")]
    Overflow(&'static str),
    #[error("function order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(u32),
    #[error("n_max must be at least 1")]
    EmptyTable,
}

/// Greatest common divisor of two unsigned integers.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// gcd of signed integers, taken on absolute values; `gcd_i(0, 0) = 0`.
pub fn gcd_i(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}

/// Three-argument gcd, folded left.
pub fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    gcd(gcd(a, b), c)
}

/// Smallest-prime-factor sieve for `2..=n_max`.
///
/// `spf[p] == p` exactly when `p` is prime; factorization of any `m <= n_max`
/// proceeds by repeated division and terminates in `O(log m)` steps.
pub struct SpfSieve {
    n_max: usize,
    spf: Vec<u32>,
}

impl SpfSieve {
    pub fn new(n_max: usize) -> Self {
        let mut spf = vec![0u32; n_max + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n_max {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            for &p in &primes {
                let ip = i * p as usize;
                if p > spf[i] || ip > n_max {
                    break;
                }
                spf[ip] = p;
            }
        }
        SpfSieve { n_max, spf }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn is_prime(&self, m: usize) -> bool {
        m >= 2 && self.spf[m] == m as u32
    }

    /// Prime factorization of `m` as `(prime, exponent)` pairs in increasing
    /// prime order. `m` must be in `1..=n_max`.
    pub fn factorize(&self, mut m: usize) -> Vec<(u64, u32)> {
        assert!(m >= 1 && m <= self.n_max, "factorize out of sieve range");
        let mut out = Vec::new();
        while m > 1 {
            let p = self.spf[m] as usize;
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        out
    }
}

/// Prime factorization by trial division, for single values too large to
/// warrant a sieve.
pub fn factorize_u64(mut m: u64) -> Vec<(u64, u32)> {
    assert!(m >= 1);
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Jordan totient `J_k(n) = n^k prod_{p|n} (1 - p^{-k})` for a single value,
/// computed as `prod (p^{ke} - p^{k(e-1)})` over the factorization. `J_1` is
/// the Euler totient.
pub fn jordan_value(k: u32, n: u64) -> i128 {
    let mut out: i128 = 1;
    for (p, e) in factorize_u64(n) {
        let pk = (p as i128).pow(k);
        out *= pk.pow(e) - pk.pow(e - 1);
    }
    out
}

/// Euler totient of a single value.
pub fn phi_value(n: u64) -> u64 {
    jordan_value(1, n) as u64
}

/// Divisor sum `sigma_k(n) = sum_{d|n} d^k` for a single value.
pub fn sigma_value(k: u32, n: u64) -> i128 {
    let mut out: i128 = 1;
    for (p, e) in factorize_u64(n) {
        let pk = (p as i128).pow(k);
        // 1 + p^k + ... + p^{ke}
        let mut term: i128 = 1;
        let mut acc: i128 = 1;
        for _ in 0..e {
            acc *= pk;
            term += acc;
        }
        out *= term;
    }
    out
}

/// Möbius function of a single value.
pub fn mobius_value(n: u64) -> i128 {
    let mut out: i128 = 1;
    for (_, e) in factorize_u64(n) {
        if e > 1 {
            return 0;
        }
        out = -out;
    }
    out
}

/// Divisors of `n` in no particular order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1];
    for (p, e) in factorize_u64(n) {
        let prev = out.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            out.extend(prev.iter().map(|d| d * pe));
        }
    }
    out
}

/// Identifier of a tabulated arithmetic function.
///
/// The order `k` passed to [`tabulate`] is ignored by the functions that do
/// not take one (`one`, `eps`, `mobius`, `phi`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FuncId {
    /// Constant 1.
    One,
    /// Dirichlet identity: 1 at n = 1, else 0.
    Eps,
    /// Power function `n^k`.
    IdK,
    /// Möbius function.
    Mobius,
    /// Euler totient.
    Phi,
    /// Jordan totient of order k.
    JordanK,
    /// Divisor sum of order k.
    SigmaK,
}

/// Table of exact values `f(1..=n_max)` of an arithmetic function.
///
/// Index 0 is unused and holds 0. Tables are immutable after construction;
/// all operations on them are pure and safe to call from concurrent workers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithTable {
    values: Vec<i128>,
}

impl ArithTable {
    /// Wraps a value vector indexed from 1; `values[0]` is forced to 0.
    pub fn from_values(mut values: Vec<i128>) -> Result<Self, ArithError> {
        if values.len() < 2 {
            return Err(ArithError::EmptyTable);
        }
        values[0] = 0;
        Ok(ArithTable { values })
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    /// Value at `m`, `1 <= m <= n_max`.
    pub fn get(&self, m: usize) -> i128 {
        self.values[m]
    }

    pub fn values(&self) -> &[i128] {
        &self.values[..]
    }

    fn check_same_len(&self, other: &ArithTable) -> Result<(), ArithError> {
        if self.n_max() != other.n_max() {
            return Err(ArithError::LengthMismatch(self.n_max(), other.n_max()));
        }
        Ok(())
    }
}

/// Tabulates `which(1..=n_max)` exactly.
///
/// The multiplicative functions are built from a smallest-prime-factor sieve;
/// cost is `O(n_max log n_max)`.
pub fn tabulate(which: FuncId, k: u32, n_max: usize) -> Result<ArithTable, ArithError> {
    if n_max < 1 {
        return Err(ArithError::EmptyTable);
    }
    if k > MAX_ORDER {
        return Err(ArithError::OrderTooLarge(k));
    }
    let mut values = vec![0i128; n_max + 1];
    match which {
        FuncId::One => values[1..].fill(1),
        FuncId::Eps => values[1] = 1,
        FuncId::IdK => {
            for (m, v) in values.iter_mut().enumerate().skip(1) {
                *v = checked_pow(m as i128, k).ok_or(ArithError::Overflow("Id_k"))?;
            }
        }
        FuncId::Mobius | FuncId::Phi | FuncId::JordanK | FuncId::SigmaK => {
            let sieve = SpfSieve::new(n_max);
            values[1] = 1;
            for (m, v) in values.iter_mut().enumerate().skip(2) {
                *v = multiplicative_at(which, k, &sieve, m)?;
            }
        }
    }
    ArithTable::from_values(values)
}

fn multiplicative_at(
    which: FuncId,
    k: u32,
    sieve: &SpfSieve,
    m: usize,
) -> Result<i128, ArithError> {
    let mut out: i128 = 1;
    for (p, e) in sieve.factorize(m) {
        let factor = match which {
            FuncId::Mobius => {
                if e > 1 {
                    return Ok(0);
                }
                -1
            }
            FuncId::Phi => {
                let pe = (p as i128).pow(e);
                pe - pe / p as i128
            }
            FuncId::JordanK => {
                let pk = checked_pow(p as i128, k).ok_or(ArithError::Overflow("J_k"))?;
                let hi = pk.checked_pow(e).ok_or(ArithError::Overflow("J_k"))?;
                hi - hi / pk
            }
            FuncId::SigmaK => {
                let pk = checked_pow(p as i128, k).ok_or(ArithError::Overflow("sigma_k"))?;
                let mut term: i128 = 1;
                let mut acc: i128 = 1;
                for _ in 0..e {
                    acc = acc.checked_mul(pk).ok_or(ArithError::Overflow("sigma_k"))?;
                    term = term.checked_add(acc).ok_or(ArithError::Overflow("sigma_k"))?;
                }
                term
            }
            _ => unreachable!(),
        };
        out = out.checked_mul(factor).ok_or(ArithError::Overflow("tabulate"))?;
    }
    Ok(out)
}

fn checked_pow(base: i128, k: u32) -> Option<i128> {
    base.checked_pow(k)
}

/// Dirichlet convolution `(f * g)(m) = sum_{d|m} f(d) g(m/d)` for all
/// `m <= n_max`, via the divisor-pair double loop in `O(n_max log n_max)`.
pub fn dirichlet_convolve(f: &ArithTable, g: &ArithTable) -> Result<ArithTable, ArithError> {
    f.check_same_len(g)?;
    let n = f.n_max();
    let mut values = vec![0i128; n + 1];
    for d in 1..=n {
        let fd = f.get(d);
        if fd == 0 {
            continue;
        }
        let mut m = d;
        let mut q = 1;
        while m <= n {
            let term = fd.checked_mul(g.get(q)).ok_or(ArithError::Overflow("f*g"))?;
            values[m] = values[m].checked_add(term).ok_or(ArithError::Overflow("f*g"))?;
            m += d;
            q += 1;
        }
    }
    ArithTable::from_values(values)
}

/// Additive convolution `(f Δ g)(m) = sum_{j=1}^{m-1} f(j) g(m-j)`.
///
/// The direct `O(n_max^2)` sum, kept exact on purpose; the caller bounds
/// `n_max`. `(f Δ g)(1)` is the empty sum 0.
pub fn additive_convolve(f: &ArithTable, g: &ArithTable) -> Result<ArithTable, ArithError> {
    f.check_same_len(g)?;
    let n = f.n_max();
    let mut values = vec![0i128; n + 1];
    for (m, v) in values.iter_mut().enumerate().skip(2) {
        let mut acc: i128 = 0;
        for j in 1..m {
            let term = f
                .get(j)
                .checked_mul(g.get(m - j))
                .ok_or(ArithError::Overflow("f delta g"))?;
            acc = acc.checked_add(term).ok_or(ArithError::Overflow("f delta g"))?;
        }
        *v = acc;
    }
    ArithTable::from_values(values)
}

/// Pointwise product `(f . g)(m) = f(m) g(m)`.
pub fn pointwise_mul(f: &ArithTable, g: &ArithTable) -> Result<ArithTable, ArithError> {
    f.check_same_len(g)?;
    let values = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(&a, &b)| a.checked_mul(b).ok_or(ArithError::Overflow("f.g")))
        .collect::<Result<Vec<_>, _>>()?;
    ArithTable::from_values(values)
}
