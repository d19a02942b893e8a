//! Runnable verification suite.
//!
//! Every check computes a named [`CheckOutcome`] carrying the measured
//! values it saw, so a failure message is a self-contained diagnosis. The
//! acceptance tests and the `verify` command both drive these functions;
//! `fast_suite` keeps every input small, `full_suite` runs the complete
//! set at full scale.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use crate::dist::{
    asymptotic_mean, asymptotic_variance, cdf_at_xi, char_samples, eval_poly_on_circle,
    grid_prefactor, h2, h3, limit_cdf, ln_bigint, probabilities, saddle_asymptotic, summary,
    GridPoint,
};
use crate::hookstat::{
    brute_force_table, char_sum_c, coeff_table, colored_counts, d_coefficients, is_triangular,
    nonconvergence_sequence, support_stats, tcore_counts, vanish_t3, verify_identities,
};
use crate::series::partition_numbers;

/// Result of one verification check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub duration: Duration,
}

impl CheckOutcome {
    pub fn summary_line(&self) -> String {
        format!(
            "{} {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.duration.as_secs_f64()
        )
    }
}

fn run(name: &'static str, body: impl FnOnce(&mut String) -> bool) -> CheckOutcome {
    let started = Instant::now();
    let mut details = String::new();
    let passed = body(&mut details);
    CheckOutcome { name, passed, details, duration: started.elapsed() }
}

fn nonincreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] <= w[0] + 1e-12)
}

const CDF_GAP_TOL: f64 = 0.05;
const CHAR_GAP_TOL: f64 = 0.05;
const SADDLE_RATIO_LO: f64 = 0.9;
const SADDLE_RATIO_HI: f64 = 1.1;
const FIT_TOL: f64 = 0.10;
const MOMENT_TOL: f64 = 0.05;

/// The n-grid of the support-density table and the expected 5-decimal
/// renderings of the exact proportions (round half up on the exact
/// rational count/degree).
const DENSITY_GRID: [u64; 11] =
    [100, 500, 1000, 1500, 2000, 2500, 3000, 3500, 4000, 4500, 5000];
const DENSITY_COUNTS_T2: [(u64, u64); 11] = [
    (7, 50),
    (16, 250),
    (23, 500),
    (27, 750),
    (31, 1000),
    (35, 1250),
    (39, 1500),
    (42, 1750),
    (45, 2000),
    (47, 2250),
    (50, 2500),
];
const DENSITY_COUNTS_T3: [(u64, u64); 11] = [
    (21, 33),
    (84, 166),
    (157, 333),
    (231, 500),
    (303, 666),
    (372, 833),
    (444, 1000),
    (511, 1166),
    (582, 1333),
    (648, 1500),
    (718, 1666),
];
const DENSITY_CELLS_T2: [&str; 11] = [
    "0.14000", "0.06400", "0.04600", "0.03600", "0.03100", "0.02800", "0.02600", "0.02400",
    "0.02250", "0.02089", "0.02000",
];
const DENSITY_CELLS_T3: [&str; 11] = [
    "0.63636", "0.50602", "0.47147", "0.46200", "0.45495", "0.44658", "0.44400", "0.43825",
    "0.43661", "0.43200", "0.43097",
];

/// The exact coefficient polynomial at t=2, n=100: seven nonzero terms.
const TABLE_2_100: [(usize, u64); 7] = [
    (11, 752),
    (17, 8470),
    (32, 1046705),
    (36, 3157789),
    (45, 31551450),
    (47, 51124970),
    (50, 103679156),
];

/// The t=2, n=100 coefficient table is exactly the expected seven-term
/// polynomial, built in under a second.
pub fn check_exact_polynomial() -> CheckOutcome {
    run("exact-polynomial-t2-n100", |d| {
        let t0 = Instant::now();
        let table = coeff_table(2, 100);
        let build = t0.elapsed();
        let nonzero: Vec<(usize, BigInt)> = table
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, c.clone()))
            .collect();
        let want: Vec<(usize, BigInt)> =
            TABLE_2_100.iter().map(|&(m, c)| (m, BigInt::from(c))).collect();
        let _ = writeln!(d, "degree: {} (expected 50)", table.degree());
        let _ = writeln!(d, "nonzero terms: {nonzero:?}");
        let _ = writeln!(d, "build time: {build:?} (budget 1s)");
        table.degree() == 50 && nonzero == want && build < Duration::from_secs(1)
    })
}

fn density_check(name: &'static str, rows: &[usize], budget: Duration) -> CheckOutcome {
    run(name, |d| {
        let t0 = Instant::now();
        let mut ok = true;
        for &i in rows {
            let n = DENSITY_GRID[i];
            let s2 = support_stats(2, n);
            let s3 = support_stats(3, n);
            let got2 = (s2.nonzero_count, s2.degree);
            let got3 = (s3.nonzero_count, s3.degree);
            let cell2 = s2.proportion_string();
            let cell3 = s3.proportion_string();
            let row_ok = got2 == DENSITY_COUNTS_T2[i]
                && got3 == DENSITY_COUNTS_T3[i]
                && cell2 == DENSITY_CELLS_T2[i]
                && cell3 == DENSITY_CELLS_T3[i];
            let _ = writeln!(
                d,
                "n={n}: t2 {}/{} -> {cell2} (want {}), t3 {}/{} -> {cell3} (want {}){}",
                got2.0,
                got2.1,
                DENSITY_CELLS_T2[i],
                got3.0,
                got3.1,
                DENSITY_CELLS_T3[i],
                if row_ok { "" } else { "  MISMATCH" }
            );
            ok &= row_ok;
        }
        let elapsed = t0.elapsed();
        let _ = writeln!(d, "elapsed: {elapsed:?} (budget {budget:?})");
        let _ = writeln!(
            d,
            "note: the cells are the round-half-up renderings of the exact fractions; \
             47/2250 renders 0.02089 and 303/666 renders 0.45495"
        );
        ok && elapsed < budget
    })
}

/// Support densities over the full n-grid match the expected counts and
/// 5-decimal cells; runtime budget two minutes.
pub fn check_density_table() -> CheckOutcome {
    density_check(
        "support-density-table",
        &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
        Duration::from_secs(120),
    )
}

fn oracle_check(name: &'static str, max_n: u64, budget: Duration) -> CheckOutcome {
    run(name, |d| {
        let t0 = Instant::now();
        let mut compared = 0u64;
        for t in 2..=6u32 {
            for n in 1..=max_n {
                let fast = coeff_table(t, n);
                let slow = brute_force_table(t, n).expect("n within enumeration bound");
                if fast != slow {
                    let _ = writeln!(d, "mismatch at t={t}, n={n}");
                    let _ = writeln!(d, "  closed form: {:?}", fast.coeffs());
                    let _ = writeln!(d, "  brute force: {:?}", slow.coeffs());
                    return false;
                }
                compared += 1;
            }
        }
        let elapsed = t0.elapsed();
        let _ = writeln!(
            d,
            "all {compared} tables (t in 2..=6, n in 1..={max_n}) match the enumeration oracle"
        );
        let _ = writeln!(d, "elapsed: {elapsed:?} (budget {budget:?})");
        elapsed < budget
    })
}

/// Closed-form tables equal the brute-force enumeration oracle for
/// t in 2..=6 and n <= 35; runtime budget five minutes.
pub fn check_oracle_equivalence() -> CheckOutcome {
    oracle_check("oracle-equivalence", 35, Duration::from_secs(300))
}

fn normalization_check(name: &'static str, max_n: u64) -> CheckOutcome {
    run(name, |d| {
        let a = colored_counts(2, (max_n / 2) as usize);
        let b = colored_counts(3, (max_n / 3) as usize);
        let p = partition_numbers(max_n as usize);
        let ac = a.coeffs();
        let bc = b.coeffs();
        let pc = p.coeffs();
        let cvals: Vec<i64> = (0..=max_n).map(char_sum_c).collect();
        let mut failures = 0u64;
        for n in 1..=max_n {
            let mut s2 = BigInt::zero();
            let mut l = 0u64;
            loop {
                let tri = l * (l + 1) / 2;
                if tri > n {
                    break;
                }
                if (n - tri) % 2 == 0 {
                    s2 += &ac[((n - tri) / 2) as usize];
                }
                l += 1;
            }
            let mut s3 = BigInt::zero();
            for m in 0..=(n / 3) as usize {
                let c = cvals[(n - 3 * m as u64) as usize];
                if c != 0 {
                    s3 += &bc[m] * c;
                }
            }
            if s2 != pc[n as usize] || s3 != pc[n as usize] {
                failures += 1;
                if failures <= 3 {
                    let _ = writeln!(d, "sum mismatch at n={n}");
                }
            }
        }
        // same totals through the actual table constructor at spot values
        for &n in &[100u64, max_n / 2, max_n] {
            for t in [2u32, 3] {
                let table = coeff_table(t, n);
                if table.total() != pc[n as usize] {
                    failures += 1;
                    let _ = writeln!(d, "table total mismatch at t={t}, n={n}");
                }
            }
        }
        let _ = writeln!(
            d,
            "coefficient sums equal the partition numbers for t=2,3 and all n <= {max_n} \
             ({failures} failures)"
        );
        failures == 0
    })
}

/// Coefficient sums reproduce p(n) exactly for t=2,3 and all n <= 5000.
pub fn check_normalization() -> CheckOutcome {
    normalization_check("normalization-to-partition-numbers", 5000)
}

fn identity_check(
    name: &'static str,
    series_order: usize,
    equivalence_order: u64,
) -> CheckOutcome {
    run(name, |d| {
        match verify_identities(series_order) {
            Ok(report) => {
                for c in &report.checks {
                    let _ = writeln!(d, "{}: {} indices", c.name, c.indices_checked);
                }
            }
            Err(e) => {
                let _ = writeln!(d, "identity failure: {e}");
                return false;
            }
        }
        let dser = d_coefficients(equivalence_order as usize);
        for k in 0..=equivalence_order {
            let c = char_sum_c(k);
            let v = match vanish_t3(k) {
                Ok(v) => v,
                Err(e) => {
                    let _ = writeln!(d, "factorization refused at k={k}: {e}");
                    return false;
                }
            };
            if (c == 0) != dser.coeff(k as usize).is_zero() || (c == 0) != v {
                let _ = writeln!(d, "vanishing equivalence fails at k={k}");
                return false;
            }
            let arg = 3 * k + 1;
            let s = arg.isqrt();
            if (c % 2 != 0) != (s * s == arg) {
                let _ = writeln!(d, "parity law fails at k={k}");
                return false;
            }
        }
        let _ = writeln!(
            d,
            "c(k)=0 <=> d(k)=0 <=> odd-order prime 2 mod 3 in 3k+1, and c(k) odd <=> 3k+1 \
             square, for k <= {equivalence_order}"
        );
        let _ = writeln!(
            d,
            "note: the parity law indexes 3k+1; a k-indexed variant fails first at k=4, \
             where c(4)=2 is even although 4 is a square (3*4+1=13 is not)"
        );
        true
    })
}

/// Product/sum identities hold coefficient-wise to order 2000; the
/// vanishing equivalence and the parity law hold for k <= 10^4.
pub fn check_identities() -> CheckOutcome {
    identity_check("q-series-identities", 2000, 10_000)
}

fn degree_positivity_check(
    name: &'static str,
    max_n_23: u64,
    max_n_high: u64,
) -> CheckOutcome {
    run(name, |d| {
        let a = colored_counts(2, (max_n_23 / 2) as usize);
        let b = colored_counts(3, (max_n_23 / 3) as usize);
        for n in 1..=max_n_23 {
            let d2 = (n / 2) as usize;
            let lead_ok = is_triangular((n - 2 * d2 as u64) as i64).expect("nonnegative")
                && a.coeffs()[d2] > BigInt::zero();
            let d3 = (n / 3) as usize;
            let lead3 = char_sum_c(n - 3 * d3 as u64);
            if !lead_ok || lead3 <= 0 || b.coeffs()[d3] <= BigInt::zero() {
                let _ = writeln!(d, "leading coefficient failure at n={n}");
                return false;
            }
        }
        let _ = writeln!(
            d,
            "deg = floor(n/t) with positive leading coefficient for t=2,3, n <= {max_n_23}"
        );
        // spot the full constructor
        for (t, n) in [(2u32, 1u64), (3, 1), (2, max_n_23), (3, max_n_23.saturating_sub(1))] {
            let table = coeff_table(t, n);
            if table.degree() as u64 != n / t as u64 || table.coeff(table.degree()) <= &BigInt::zero()
            {
                let _ = writeln!(d, "constructed table fails at t={t}, n={n}");
                return false;
            }
        }
        let mut triples = 0u64;
        for t in 4..=12u32 {
            let at = colored_counts(t, (max_n_high / t as u64) as usize);
            let ct = tcore_counts(t, max_n_high as usize);
            if at.coeffs().iter().any(|c| c <= &BigInt::zero()) {
                let _ = writeln!(d, "colored count not positive at t={t}");
                return false;
            }
            for n in 1..=max_n_high {
                for m in 0..=(n / t as u64) {
                    if ct.coeffs()[(n - t as u64 * m) as usize] <= BigInt::zero() {
                        let _ = writeln!(d, "zero coefficient at t={t}, n={n}, m={m}");
                        return false;
                    }
                    triples += 1;
                }
            }
            // the factored positivity argument must agree with a real table
            for n in [7u64, max_n_high / 3, max_n_high] {
                let table = coeff_table(t, n.max(1));
                if table.coeffs().iter().any(|c| c <= &BigInt::zero()) {
                    let _ = writeln!(d, "constructed table has a nonpositive entry at t={t}, n={n}");
                    return false;
                }
            }
        }
        let _ = writeln!(
            d,
            "all {triples} coefficients positive for t in 4..=12, n <= {max_n_high}"
        );
        true
    })
}

/// Degree floor(n/t) and positive leading coefficient for t=2,3 up to
/// n=5000; strictly positive coefficients for t in 4..=12 up to n=2000.
pub fn check_degree_positivity() -> CheckOutcome {
    degree_positivity_check("degree-and-positivity", 5000, 2000)
}

/// Exceeds-the-limit check on the standardized CDF: max gap to the limit
/// CDF over x in {-2,...,2}, required nonincreasing over n in
/// {500, 2000, 5000} and below 0.05 at the end, for t=2,3.
///
/// This check states a finite-n bound on an asymptotic statement and is
/// expected to fail: the exact law keeps individual atoms of relative
/// mass on the order of n^{-1/4} (0.068 at t=2, n=5000 right at the
/// mean), so a floor-evaluated step CDF cannot stay within 0.05 of the
/// continuous limit on this range of n. The measured matrix is recorded
/// either way.
pub fn check_cdf_convergence() -> CheckOutcome {
    run("cdf-convergence-to-limit", |d| {
        let xs = [-2.0, -1.0, 0.0, 1.0, 2.0];
        let ns = [500u64, 2000, 5000];
        let mut ok = true;
        for t in [2u32, 3] {
            let gaps: Vec<f64> = ns
                .iter()
                .map(|&n| {
                    let table = coeff_table(t, n);
                    xs.iter()
                        .map(|&x| (cdf_at_xi(&table, x) - limit_cdf(t, x)).abs())
                        .fold(0.0, f64::max)
                })
                .collect();
            let monotone = nonincreasing(&gaps);
            let final_ok = gaps[2] <= CDF_GAP_TOL;
            let _ = writeln!(
                d,
                "t={t}: max |F(xi(x)) - limit| over x in {{-2..2}} at n in {{500,2000,5000}}: \
                 [{:.4}, {:.4}, {:.4}]; nonincreasing: {monotone}; final <= {CDF_GAP_TOL}: {final_ok}",
                gaps[0], gaps[1], gaps[2]
            );
            ok &= monotone && final_ok;
        }
        if !ok {
            let _ = writeln!(
                d,
                "expected failure: the discrete law has atoms of relative mass ~n^(-1/4) \
                 (e.g. t=2, n=5000 carries 0.068 at m=2486, the floor of the mean), so the \
                 step CDF evaluated at floored standardized indices keeps O(atom) gaps"
            );
        }
        ok
    })
}

/// Standardized empirical characteristic function approaches the limit:
/// max gap over r in {+-0.5, +-1, +-2} nonincreasing over n in
/// {500, 2000, 5000} and below 0.05 at the end, for t=2,3.
pub fn check_char_fn_convergence() -> CheckOutcome {
    check_char_fn_convergence_on(&[-2.0, -1.0, -0.5, 0.5, 1.0, 2.0])
}

/// Same gate on a caller-chosen r-grid.
pub fn check_char_fn_convergence_on(rs: &[f64]) -> CheckOutcome {
    run("char-fn-convergence-to-limit", |d| {
        let _ = writeln!(d, "r-grid: {rs:?}");
        let ns = [500u64, 2000, 5000];
        let mut ok = true;
        for t in [2u32, 3] {
            let gaps: Vec<f64> = ns
                .iter()
                .map(|&n| {
                    let table = coeff_table(t, n);
                    char_samples(&table, rs).iter().map(|row| row.gap).fold(0.0, f64::max)
                })
                .collect();
            let monotone = nonincreasing(&gaps);
            let final_ok = gaps[2] <= CHAR_GAP_TOL;
            let _ = writeln!(
                d,
                "t={t}: max char-fn gap at n in {{500,2000,5000}}: [{:.4}, {:.4}, {:.4}]; \
                 nonincreasing: {monotone}; final <= {CHAR_GAP_TOL}: {final_ok}",
                gaps[0], gaps[1], gaps[2]
            );
            ok &= monotone && final_ok;
        }
        ok
    })
}

fn saddle_check(name: &'static str, ns: &[u64], full: bool) -> CheckOutcome {
    run(name, |d| {
        let mut ok = true;
        for t in [2u32, 3] {
            // algebraic reduction at alpha = 0
            for &n in ns {
                let v = saddle_asymptotic(t, n, Complex64::new(0.0, 0.0))
                    .expect("alpha = 0 is admissible");
                let nf = n as f64;
                let hr = std::f64::consts::PI * (2.0 * nf / 3.0).sqrt()
                    - (4.0 * 3.0f64.sqrt() * nf).ln();
                if (v.log_magnitude - hr).abs() > 1e-10 || v.phase.abs() > 1e-12 {
                    let _ = writeln!(d, "alpha=0 does not reduce to the leading term at t={t}, n={n}");
                    ok = false;
                }
            }
            if !full {
                continue;
            }
            for alpha_im in [0.0f64, 0.5, 1.0] {
                let alpha = Complex64::new(0.0, alpha_im);
                let devs: Vec<f64> = ns
                    .iter()
                    .map(|&n| {
                        let table = coeff_table(t, n);
                        let theta = alpha_im / (n as f64).sqrt();
                        let exact_ln = ln_bigint(&table.total())
                            + eval_poly_on_circle(&table, theta).norm().ln();
                        let est = saddle_asymptotic(t, n, alpha).expect("imaginary alpha");
                        ((exact_ln - est.log_magnitude).exp() - 1.0).abs()
                    })
                    .collect();
                let last = devs[devs.len() - 1];
                let in_band =
                    (1.0 - last) >= SADDLE_RATIO_LO && (1.0 + last) <= SADDLE_RATIO_HI;
                let monotone = nonincreasing(&devs);
                let _ = writeln!(
                    d,
                    "t={t}, alpha={alpha_im}i: |ratio-1| at n in {ns:?}: {devs:.4?}; \
                     nonincreasing: {monotone}; final ratio within \
                     [{SADDLE_RATIO_LO},{SADDLE_RATIO_HI}]: {in_band}"
                );
                ok &= monotone && in_band;
            }
        }
        ok
    })
}

/// The closed-form estimate tracks |P_t(n, e^{alpha/sqrt n})| within 10%
/// at n=4000 with a nonincreasing error over n in {1000,2000,4000}; at
/// alpha=0 it is the exact leading-term identity.
pub fn check_saddle_point() -> CheckOutcome {
    saddle_check("saddle-point-estimate", &[1000, 2000, 4000], true)
}

/// Supported grid points with m >= 500 stay within 10% of the continuous
/// approximation (t=2 at n=5000; t=3 bands at n=10000), and the t=3 base
/// curve at x=1 approaches its analytic limit at n=10^6.
pub fn check_continuous_fit() -> CheckOutcome {
    run("continuous-approximation-fit", |d| {
        let mut ok = true;

        let table = coeff_table(2, 5000);
        let probs = probabilities(&table);
        let pref = grid_prefactor(2, 5000);
        let mut max_dev: f64 = 0.0;
        let mut arg = 0u64;
        for m in 500..=table.degree() as u64 {
            if table.coeff(m as usize).is_zero() {
                continue;
            }
            let x = GridPoint::from_m(2, 5000, m).x;
            let f = pref * probs[m as usize];
            let h = h2(5000, x).expect("m >= 1 keeps the inner term positive");
            let dev = (f / h - 1.0).abs();
            if dev > max_dev {
                max_dev = dev;
                arg = m;
            }
        }
        let _ = writeln!(
            d,
            "t=2, n=5000: max |f/h - 1| over supported m >= 500 is {max_dev:.4} at m={arg} \
             (tolerance {FIT_TOL})"
        );
        ok &= max_dev <= FIT_TOL;

        let table = coeff_table(3, 10_000);
        let probs = probabilities(&table);
        let pref = grid_prefactor(3, 10_000);
        let mut max_dev: f64 = 0.0;
        let mut arg = 0u64;
        for m in 500..=table.degree() as u64 {
            let band = char_sum_c(10_000 - 3 * m);
            if band == 0 {
                continue;
            }
            let x = GridPoint::from_m(3, 10_000, m).x;
            let f = pref * probs[m as usize];
            let h = h3(10_000, x).expect("m >= 1 keeps the inner term positive");
            let dev = (f / (band as f64 * h) - 1.0).abs();
            if dev > max_dev {
                max_dev = dev;
                arg = m;
            }
        }
        let _ = writeln!(
            d,
            "t=3, n=10000: max |f/(alpha h) - 1| over supported m >= 500 is {max_dev:.4} \
             at m={arg} (tolerance {FIT_TOL})"
        );
        ok &= max_dev <= FIT_TOL;

        let h = h3(1_000_000, 1.0).expect("x=1 is admissible");
        let limit = 3.0 * 3.0f64.sqrt() / (2.0 * std::f64::consts::PI) * (-1.0f64).exp();
        let rel = (h / limit - 1.0).abs();
        let _ = writeln!(
            d,
            "t=3 base curve at x=1, n=10^6: {h:.6} vs limit {limit:.6}, relative gap {rel:.5} \
             (tolerance 0.01)"
        );
        ok && rel <= 0.01
    })
}

/// Exact mean and variance at n=5000 agree with the asymptotic formulas
/// within 5% for t=2,3.
pub fn check_moment_asymptotics() -> CheckOutcome {
    run("moment-asymptotics", |d| {
        let mut ok = true;
        for t in [2u32, 3] {
            let r = summary(&coeff_table(t, 5000));
            let mean_rel = (r.exact_mean / asymptotic_mean(t, 5000) - 1.0).abs();
            let var_rel = (r.exact_variance / asymptotic_variance(t, 5000) - 1.0).abs();
            let _ = writeln!(
                d,
                "t={t}: exact mean {:.3} vs asymptotic {:.3} (rel {:.2e}); exact variance \
                 {:.3} vs asymptotic {:.3} (rel {:.2e})",
                r.exact_mean, r.asym_mean, mean_rel, r.exact_variance, r.asym_variance, var_rel
            );
            ok &= mean_rel <= MOMENT_TOL && var_rel <= MOMENT_TOL;
        }
        ok
    })
}

/// Along n_j = j^2 n0 the scaled mass function vanishes at the tracked
/// grid point for some j <= 50, for both t=2 and t=3 witnesses.
pub fn check_nonconvergence_witness() -> CheckOutcome {
    run("nonconvergence-witness", |d| {
        let mut ok = true;
        for (t, q, n0) in [(2u32, 1u64, 4u64), (3, 1, 3)] {
            match nonconvergence_sequence(t, q, n0, 50) {
                Ok(seq) => {
                    let zeros: Vec<u64> = seq
                        .iter()
                        .enumerate()
                        .filter(|(_, &(_, z))| z)
                        .map(|(i, _)| i as u64 + 1)
                        .collect();
                    let _ = writeln!(
                        d,
                        "t={t}, q={q}, n0={n0}: vanishing at j in {:?}{} of 50",
                        &zeros[..zeros.len().min(8)],
                        if zeros.len() > 8 { " (first 8)" } else { "" }
                    );
                    ok &= !zeros.is_empty();
                }
                Err(e) => {
                    let _ = writeln!(d, "t={t}, q={q}, n0={n0}: {e}");
                    ok = false;
                }
            }
        }
        ok
    })
}

/// Gap report on a caller-chosen r-grid at small n; informational (always
/// passes), for runs that stay inside small-input bounds.
pub fn check_char_grid_bounded(rs: &[f64]) -> CheckOutcome {
    run("char-fn-grid-bounded", |d| {
        let _ = writeln!(d, "r-grid: {rs:?}");
        for t in [2u32, 3] {
            let table = coeff_table(t, 500);
            let gap = char_samples(&table, rs).iter().map(|row| row.gap).fold(0.0, f64::max);
            let _ = writeln!(d, "t={t}, n=500: max char-fn gap {gap:.4}");
        }
        true
    })
}

/// Every check at full scale, in a fixed order. One of them
/// (`cdf-convergence-to-limit`) is expected to fail; see its
/// documentation.
pub fn full_suite() -> Vec<CheckOutcome> {
    full_suite_with_char_grid(None)
}

/// Full suite with the characteristic-function gate evaluated on a
/// caller-chosen r-grid (`None` keeps the default {+-0.5, +-1, +-2}).
pub fn full_suite_with_char_grid(rs: Option<&[f64]>) -> Vec<CheckOutcome> {
    let char_outcome = match rs {
        Some(rs) => check_char_fn_convergence_on(rs),
        None => check_char_fn_convergence(),
    };
    vec![
        check_exact_polynomial(),
        check_density_table(),
        check_oracle_equivalence(),
        check_normalization(),
        check_identities(),
        check_degree_positivity(),
        check_cdf_convergence(),
        char_outcome,
        check_saddle_point(),
        check_continuous_fit(),
        check_moment_asymptotics(),
        check_nonconvergence_witness(),
    ]
}

/// Small-input variants of the structural checks; every one passes on a
/// correct build in a few seconds.
pub fn fast_suite() -> Vec<CheckOutcome> {
    vec![
        check_exact_polynomial(),
        density_check("support-density-table-bounded", &[0, 1], Duration::from_secs(60)),
        oracle_check("oracle-equivalence-bounded", 20, Duration::from_secs(60)),
        normalization_check("normalization-bounded", 500),
        identity_check("q-series-identities-bounded", 500, 2000),
        degree_positivity_check("degree-and-positivity-bounded", 500, 200),
        saddle_check("saddle-point-identity", &[400], false),
        check_nonconvergence_witness(),
    ]
}
