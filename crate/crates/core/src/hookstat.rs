//! Exact combinatorics: partitions, hook lengths, the closed-form coefficient
//! tables of P_t(n,x), support statistics, and the q-series identity checks
//! backing them.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::cache::{load_or_compute, CacheKey};
use crate::series::{euler_e_i128, eta_quotient_expand, EtaFactor, IntSeries};

/// Brute-force enumeration refuses n above this (the oracle is exponential).
pub const ENUMERATION_BOUND: u64 = 45;

/// Default trial-division bound on 3k+1 for `vanish_t3`.
pub const FACTORIZATION_BOUND: u64 = 10_000_000;

/// A partition: nonincreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("partition parts must be nonincreasing".into()));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Column heights of the Young diagram: conj[j] = #{i : parts[i] > j}.
    fn conjugate(&self) -> Vec<u32> {
        let width = self.parts.first().copied().unwrap_or(0) as usize;
        let mut conj = vec![0u32; width];
        for &p in &self.parts {
            for c in conj.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        conj
    }
}

/// The hook multiset H(lambda): arm + leg + 1 for every cell, n entries.
pub fn hook_lengths(p: &Partition) -> Vec<u32> {
    let conj = p.conjugate();
    let mut hooks = Vec::with_capacity(p.size() as usize);
    for (i, &row) in p.parts.iter().enumerate() {
        for j in 0..row as usize {
            let arm = row - j as u32 - 1;
            let leg = conj[j] - i as u32 - 1;
            hooks.push(arm + leg + 1);
        }
    }
    hooks
}

/// #H_t(lambda): hooks divisible by t. Always <= floor(n/t).
pub fn hook_count_divisible(p: &Partition, t: u32) -> u64 {
    assert!(t >= 1, "divisor parameter t must be >= 1");
    hook_lengths(p).iter().filter(|&&h| h % t == 0).count() as u64
}

/// Streams the partitions of n in descending lexicographic order.
#[derive(Debug)]
pub struct PartitionIter {
    current: Option<Vec<u32>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition { parts: cur.clone() };
        // locate the rightmost part > 1; everything after it is 1s
        if let Some(i) = cur.iter().rposition(|&p| p > 1) {
            let ones = cur.len() - i - 1;
            let total = cur[i] as usize + ones;
            let v = (cur[i] - 1) as usize;
            let mut next = cur[..i].to_vec();
            for _ in 0..total / v {
                next.push(v as u32);
            }
            if total % v > 0 {
                next.push((total % v) as u32);
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Yields every partition of n exactly once; refuses n beyond the bound.
pub fn enumerate_partitions(n: u64) -> Result<PartitionIter> {
    if n == 0 || n > ENUMERATION_BOUND {
        return Err(Error::EnumerationBound { n, bound: ENUMERATION_BOUND });
    }
    Ok(PartitionIter { current: Some(vec![n as u32]) })
}

/// Exact coefficients p_t(m,n) of P_t(n,x) for m = 0..floor(n/t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    t: u32,
    n: u64,
    coeffs: Vec<BigInt>,
}

impl CoeffTable {
    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// deg P_t(n,x) = floor(n/t); the coefficient vector has degree+1 slots.
    pub fn degree(&self) -> usize {
        (self.n / self.t as u64) as usize
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &BigInt {
        &self.coeffs[m]
    }

    /// Sum of all coefficients. Equals p(n) for a correctly built table.
    pub fn total(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for c in &self.coeffs {
            acc += c;
        }
        acc
    }

    pub fn nonzero_count(&self) -> u64 {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() as u64
    }
}

/// Ground-truth oracle: counts partitions of n by #H_t directly.
pub fn brute_force_table(t: u32, n: u64) -> Result<CoeffTable> {
    assert!(t >= 2);
    let deg = (n / t as u64) as usize;
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for p in enumerate_partitions(n)? {
        let m = hook_count_divisible(&p, t) as usize;
        coeffs[m] += 1;
    }
    Ok(CoeffTable { t, n, coeffs })
}

fn tri_u64(k: u64) -> bool {
    // k = l(l+1)/2  <=>  8k+1 is an odd perfect square
    let s = (8 * k + 1).isqrt();
    s * s == 8 * k + 1
}

/// True iff k = l(l+1)/2 for some l >= 0 (0 counts as triangular).
pub fn is_triangular(k: i64) -> Result<bool> {
    if k < 0 {
        return Err(Error::NegativeInput(k));
    }
    Ok(tri_u64(k as u64))
}

fn legendre3(d: u64) -> i64 {
    match d % 3 {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// The character sum c(k) = sum over d | 3k+1 of the Legendre symbol (d/3).
/// Nonnegative: it counts the 3-core partitions of k.
pub fn char_sum_c(k: u64) -> i64 {
    let n = 3 * k + 1;
    let mut sum = 0i64;
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            sum += legendre3(d);
            let q = n / d;
            if q != d {
                sum += legendre3(q);
            }
        }
        d += 1;
    }
    sum
}

/// True iff c(k) = 0, decided through the factorization of 3k+1: some prime
/// r = 2 (mod 3) must divide it to an odd power.
pub fn vanish_t3(k: u64) -> Result<bool> {
    vanish_t3_bounded(k, FACTORIZATION_BOUND)
}

/// As `vanish_t3` with an explicit trial-division bound on 3k+1.
pub fn vanish_t3_bounded(k: u64, bound: u64) -> Result<bool> {
    let n = 3 * k + 1;
    if n > bound {
        return Err(Error::FactorizationBound { value: n, bound });
    }
    let mut rem = n;
    let mut p = 2u64;
    while p * p <= rem {
        if rem % p == 0 {
            let mut ord = 0u32;
            while rem % p == 0 {
                rem /= p;
                ord += 1;
            }
            if p % 3 == 2 && ord % 2 == 1 {
                return Ok(true);
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // leftover rem is prime (or 1); a leftover prime has order 1
    Ok(rem > 1 && rem % 3 == 2)
}

/// Number of t-colored partitions of each m <= order: the expansion of
/// prod (1 - q^m)^{-t}. a(m) is the t=2 column, b(m) the t=3 column.
pub fn colored_counts(t: u32, order: usize) -> IntSeries {
    colored_counts_cached(t, order, None).expect("no cache dir, cannot fail")
}

pub fn colored_counts_cached(
    t: u32,
    order: usize,
    cache_dir: Option<&Path>,
) -> Result<IntSeries> {
    assert!(t >= 1);
    let key = CacheKey::new("colored", &[("t", t as u64), ("order", order as u64)]);
    load_or_compute(cache_dir, &key, || {
        let factors: Vec<EtaFactor> = (1..=order.max(1))
            .map(|m| EtaFactor::new(m as u32, -(t as i32)).expect("m >= 1"))
            .collect();
        eta_quotient_expand(&factors, order)
    })
}

/// Number of t-core partitions of each k <= order: the expansion of
/// prod (1 - q^{tm})^t / (1 - q^m). For t=2 this is the indicator of the
/// triangular numbers (including 0); for t=3 it equals c(k).
pub fn tcore_counts(t: u32, order: usize) -> IntSeries {
    tcore_counts_cached(t, order, None).expect("no cache dir, cannot fail")
}

pub fn tcore_counts_cached(t: u32, order: usize, cache_dir: Option<&Path>) -> Result<IntSeries> {
    assert!(t >= 1);
    let key = CacheKey::new("tcore", &[("t", t as u64), ("order", order as u64)]);
    load_or_compute(cache_dir, &key, || {
        let mut factors = Vec::new();
        let mut tm = t as usize;
        while tm <= order {
            factors.push(EtaFactor::new(tm as u32, t as i32).expect("tm >= 1"));
            tm += t as usize;
        }
        for m in 1..=order.max(1) {
            factors.push(EtaFactor::new(m as u32, -1).expect("m >= 1"));
        }
        eta_quotient_expand(&factors, order)
    })
}

fn square_i128(a: &[i128]) -> Vec<i128> {
    let n = a.len();
    let mut out = vec![0i128; n];
    for i in 0..n {
        let ai = a[i];
        if ai == 0 {
            continue;
        }
        if 2 * i < n {
            out[2 * i] += ai * ai;
        }
        for j in (i + 1)..n.saturating_sub(i) {
            let aj = a[j];
            if aj != 0 {
                out[i + j] += 2 * ai * aj;
            }
        }
    }
    out
}

/// Exact d(0..order) for D(q) = prod (1 - q^m)^8, via the sparse pentagonal
/// form of E = prod (1 - q^m) and three squarings. The coefficients stay far
/// inside i128 (polynomial growth), so this needs no big-int passes; the
/// route is cross-checked against the generic eta expansion in tests.
pub fn d_coefficients(order: usize) -> IntSeries {
    let e = euler_e_i128(order);
    let e2 = square_i128(&e);
    let e4 = square_i128(&e2);
    let e8 = square_i128(&e4);
    IntSeries::new(e8.into_iter().map(BigInt::from).collect()).expect("nonempty")
}

/// Exact coefficients of P_t(n,x) by the product factorization
/// p_t(m,n) = a_t(m) * (#t-cores of n - tm).
///
/// t=2 gates a(m) on n-2m being triangular, t=3 multiplies b(m) by the
/// character sum c(n-3m), and general t uses the t-core series directly.
/// All three routes agree with `brute_force_table` (tested).
pub fn coeff_table(t: u32, n: u64) -> CoeffTable {
    coeff_table_cached(t, n, None).expect("no cache dir, cannot fail")
}

pub fn coeff_table_cached(t: u32, n: u64, cache_dir: Option<&Path>) -> Result<CoeffTable> {
    assert!(t >= 2, "divisor parameter t must be >= 2");
    assert!(n >= 1, "weight n must be >= 1");
    let deg = (n / t as u64) as usize;
    let colored = colored_counts_cached(t, deg, cache_dir)?;
    let coeffs: Vec<BigInt> = match t {
        2 => (0..=deg)
            .map(|m| {
                if tri_u64(n - 2 * m as u64) {
                    colored.coeff(m)
                } else {
                    BigInt::zero()
                }
            })
            .collect(),
        3 => (0..=deg)
            .map(|m| colored.coeff(m) * char_sum_c(n - 3 * m as u64))
            .collect(),
        _ => {
            let cores = tcore_counts_cached(t, n as usize, cache_dir)?;
            (0..=deg)
                .map(|m| colored.coeff(m) * cores.coeff(n as usize - t as usize * m))
                .collect()
        }
    };
    Ok(CoeffTable { t, n, coeffs })
}

/// Support statistics of P_t(n,x): how many coefficients are nonzero,
/// normalized by the degree (not by degree+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupportStats {
    pub t: u32,
    pub n: u64,
    pub nonzero_count: u64,
    pub degree: u64,
}

impl SupportStats {
    pub fn proportion_f64(&self) -> f64 {
        self.nonzero_count as f64 / self.degree as f64
    }

    /// Decimal rendering to 5 places, round half up on the exact rational.
    pub fn proportion_string(&self) -> String {
        render_ratio_5dp(self.nonzero_count, self.degree)
    }
}

pub(crate) fn render_ratio_5dp(num: u64, den: u64) -> String {
    assert!(den > 0);
    let scaled = num as u128 * 100_000;
    let rounded = (2 * scaled + den as u128) / (2 * den as u128);
    format!("{}.{:05}", rounded / 100_000, rounded % 100_000)
}

pub fn support_stats(t: u32, n: u64) -> SupportStats {
    assert!(t == 2 || t == 3, "support statistics are defined for t = 2, 3");
    assert!(n >= t as u64, "degree would be zero");
    let table = coeff_table(t, n);
    SupportStats {
        t,
        n,
        nonzero_count: table.nonzero_count(),
        degree: table.degree() as u64,
    }
}

/// The sequence n_j = j^2 n0 with, for each j, whether the scaled mass
/// function f_{t;n_j} vanishes at the grid point indexed by q. t=2 vanishes
/// iff 2qj is not triangular; t=3 iff c(3qj) = 0.
pub fn nonconvergence_sequence(
    t: u32,
    q: u64,
    n0: u64,
    count: u32,
) -> Result<Vec<(u64, bool)>> {
    match t {
        2 => {
            if n0 == 0 || n0 % 2 != 0 || q == 0 || q > n0 / 2 {
                return Err(Error::Domain(format!(
                    "t=2 needs even n0 >= 2 and 1 <= q <= n0/2, got n0={n0}, q={q}"
                )));
            }
        }
        3 => {
            if n0 == 0 || n0 % 3 != 0 || q == 0 || q > n0 / 3 {
                return Err(Error::Domain(format!(
                    "t=3 needs n0 divisible by 3 and 1 <= q <= n0/3, got n0={n0}, q={q}"
                )));
            }
        }
        _ => {
            return Err(Error::Domain(format!(
                "nonconvergence sequences are defined for t = 2, 3, got {t}"
            )))
        }
    }
    let mut out = Vec::with_capacity(count as usize);
    for j in 1..=count as u64 {
        let nj = j * j * n0;
        let is_zero = match t {
            2 => !tri_u64(2 * q * j),
            _ => vanish_t3(3 * q * j)?,
        };
        out.push((nj, is_zero));
    }
    Ok(out)
}

/// One verified identity: its name and how many indices were checked.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub indices_checked: u64,
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub order: usize,
    pub checks: Vec<IdentityCheck>,
}

/// Coefficient-by-coefficient verification, up to `order`, of:
/// the 2-core series being the triangular indicator (Jacobi), the 3-core
/// series equalling c(k) (Han-Ono), the vanishing equivalence
/// c(k)=0 <=> d(k)=0 <=> vanish_t3(k), and the parity law
/// c(k) odd <=> 3k+1 a perfect square.
///
/// The parity index is 3k+1, not k: c(4) = 2 (even, from the divisors of 13)
/// although 4 is a square, while 3*4+1 = 13 is not a square. Multiplicativity
/// of the divisor sum makes c(k) odd exactly when 3k+1 is a square.
pub fn verify_identities(order: usize) -> Result<IdentityReport> {
    let mut checks = Vec::new();

    let two_core = tcore_counts(2, order);
    for k in 0..=order {
        let want = u8::from(tri_u64(k as u64));
        if two_core.coeff(k) != BigInt::from(want) {
            return Err(Error::IdentityViolation { check: "jacobi-two-core", index: k as u64 });
        }
    }
    checks.push(IdentityCheck { name: "jacobi-two-core", indices_checked: order as u64 + 1 });

    let three_core = tcore_counts(3, order);
    for k in 0..=order {
        if three_core.coeff(k) != BigInt::from(char_sum_c(k as u64)) {
            return Err(Error::IdentityViolation { check: "han-ono-three-core", index: k as u64 });
        }
    }
    checks.push(IdentityCheck { name: "han-ono-three-core", indices_checked: order as u64 + 1 });

    let d = d_coefficients(order);
    for k in 0..=order {
        let c_zero = char_sum_c(k as u64) == 0;
        let d_zero = d.coeff(k).is_zero();
        let v = vanish_t3(k as u64)?;
        if c_zero != d_zero || c_zero != v {
            return Err(Error::IdentityViolation {
                check: "c-d-vanishing-equivalence",
                index: k as u64,
            });
        }
    }
    checks.push(IdentityCheck {
        name: "c-d-vanishing-equivalence",
        indices_checked: order as u64 + 1,
    });

    for k in 0..=order as u64 {
        let odd = char_sum_c(k) % 2 != 0;
        let s = (3 * k + 1).isqrt();
        let square = s * s == 3 * k + 1;
        if odd != square {
            return Err(Error::IdentityViolation { check: "c-parity-square", index: k });
        }
    }
    checks.push(IdentityCheck { name: "c-parity-square", indices_checked: order as u64 + 1 });

    Ok(IdentityReport { order, checks })
}
