//! Probability layer: exact PMFs and CDFs of the divisible-hook count, the
//! scaled mass function on its natural grid, Gamma limit laws, continuous
//! approximations, characteristic functions, and the saddle-point estimate
//! of P_t(n, e^{alpha/sqrt n}).

use std::f64::consts::{LN_2, PI};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hookstat::{char_sum_c, CoeffTable};

/// Shape/scale of the limiting Gamma law for divisor parameter t, together
/// with the shift b of the limit variable b - X. k * theta^2 = 1 always.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParams {
    t: u32,
    shape: f64,
    scale: f64,
    shift: f64,
}

impl GammaParams {
    pub fn new(t: u32) -> Self {
        assert!(t >= 2, "divisor parameter t must be >= 2");
        let tf = t as f64;
        GammaParams {
            t,
            shape: (tf - 1.0) / 2.0,
            scale: (2.0 / (tf - 1.0)).sqrt(),
            shift: (2.0 * (tf - 1.0)).sqrt() / 2.0,
        }
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Shape k = (t-1)/2.
    pub fn shape(&self) -> f64 {
        self.shape
    }

    /// Scale theta = sqrt(2/(t-1)).
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Upper support edge b = sqrt(2(t-1))/2 of the reflected limit b - X.
    /// Equals k * theta, the mean of X.
    pub fn upper_edge(&self) -> f64 {
        self.shift
    }
}

/// One point of the grid carrying the scaled mass function: index m and
/// x = (n - tm) pi / sqrt(3(t-1)n). x decreases as m increases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub m: u64,
    pub x: f64,
}

impl GridPoint {
    pub fn from_m(t: u32, n: u64, m: u64) -> GridPoint {
        let tf = t as f64;
        let nf = n as f64;
        let x = (nf - (t as u64 * m) as f64) * PI / (3.0 * (tf - 1.0) * nf).sqrt();
        GridPoint { m, x }
    }
}

/// The full grid in ascending x (descending m).
pub fn grid(table: &CoeffTable) -> Vec<GridPoint> {
    (0..=table.degree() as u64)
        .rev()
        .map(|m| GridPoint::from_m(table.t(), table.n(), m))
        .collect()
}

/// sqrt(3(t-1)n)/(t pi), the factor turning the PMF into the scaled mass
/// function; also the asymptotic standard deviation sigma_t(n).
pub fn grid_prefactor(t: u32, n: u64) -> f64 {
    let tf = t as f64;
    (3.0 * (tf - 1.0) * n as f64).sqrt() / (tf * PI)
}

fn exp2i(e: i64) -> f64 {
    if e >= 1024 {
        f64::INFINITY
    } else if e <= -1075 {
        0.0
    } else {
        2.0f64.powi(e as i32)
    }
}

/// num/den as f64 with >= 15 significant digits, via shifted integer
/// division (the quotient is taken with ~64 significant bits).
pub fn big_ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    let negative = num.is_negative() != den.is_negative();
    let num = num.abs();
    let den = den.abs();
    let shift = 64 + den.bits() as i64 - num.bits() as i64;
    let q = if shift >= 0 {
        (num << shift as usize) / den
    } else {
        num / (den << (-shift) as usize)
    };
    let v = q.to_f64().expect("quotient has ~64 bits") * exp2i(-shift);
    if negative {
        -v
    } else {
        v
    }
}

/// Natural log of a positive big integer, exact to ~1e-12 absolute.
pub fn ln_bigint(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "log of a nonpositive integer");
    let bits = x.bits();
    if bits <= 63 {
        return x.to_f64().expect("fits in 63 bits").ln();
    }
    let shift = bits - 63;
    let top = (x >> shift as usize).to_f64().expect("63 bits");
    top.ln() + shift as f64 * LN_2
}

/// P(count = m) = p_t(m,n)/p(n), exact ratio rounded once to f64.
pub fn pmf(table: &CoeffTable, m: i64) -> Result<f64> {
    let deg = table.degree() as u64;
    if m < 0 || m as u64 > deg {
        return Err(Error::IndexOutOfRange { index: m, max: deg });
    }
    Ok(big_ratio_to_f64(table.coeff(m as usize), &table.total()))
}

/// All PMF values at once (the total is computed a single time).
pub fn probabilities(table: &CoeffTable) -> Vec<f64> {
    let total = table.total();
    table.coeffs().iter().map(|c| big_ratio_to_f64(c, &total)).collect()
}

fn validate_point(table: &CoeffTable, point: GridPoint) -> Result<()> {
    let off = Error::OffGrid { t: table.t(), n: table.n(), m: point.m };
    if point.m > table.degree() as u64 {
        return Err(off);
    }
    let expect = GridPoint::from_m(table.t(), table.n(), point.m).x;
    if (point.x - expect).abs() > 1e-9 * expect.abs().max(1.0) {
        return Err(off);
    }
    Ok(())
}

/// Scaled mass function f_{t;n}(x) = grid_prefactor * PMF at the point.
pub fn scaled_pmf(table: &CoeffTable, point: GridPoint) -> Result<f64> {
    validate_point(table, point)?;
    Ok(grid_prefactor(table.t(), table.n()) * pmf(table, point.m as i64)?)
}

/// The integer band multiplier alpha(x,n) = c(n-3m) at a supported t=3
/// grid point; vanishing points are rejected.
pub fn alpha_factor(table: &CoeffTable, point: GridPoint) -> Result<u64> {
    assert_eq!(table.t(), 3, "band multipliers are a t=3 notion");
    validate_point(table, point)?;
    let c = char_sum_c(table.n() - 3 * point.m);
    if c == 0 {
        return Err(Error::VanishingPoint { m: point.m });
    }
    Ok(c as u64)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Gamma(s) for s > 0 (Lanczos, g = 7, 9 terms).
pub fn ln_gamma(s: f64) -> f64 {
    assert!(s > 0.0, "log-gamma needs s > 0");
    if s < 0.5 {
        return ln_gamma(s + 1.0) - s.ln();
    }
    let z = s - 1.0;
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}

fn gamma(s: f64) -> f64 {
    ln_gamma(s).exp()
}

const GAMMA_MAX_ITER: usize = 500;

/// Regularized lower incomplete gamma P(s,x) = gamma(s,x)/Gamma(s).
/// Power series below x = s+1, Lentz continued fraction above.
pub(crate) fn regularized_lower_gamma(s: f64, x: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("incomplete gamma needs s > 0, got {s}")));
    }
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("incomplete gamma needs x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let log_front = s * x.ln() - x - ln_gamma(s);
    if x < s + 1.0 {
        let mut term = 1.0 / s;
        let mut sum = term;
        for k in 1..=GAMMA_MAX_ITER {
            term *= x / (s + k as f64);
            sum += term;
            if term.abs() < sum.abs() * 1e-16 {
                return Ok(log_front.exp() * sum);
            }
        }
        Err(Error::NoConvergence(GAMMA_MAX_ITER))
    } else {
        let tiny = 1e-300;
        let mut b = x + 1.0 - s;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..=GAMMA_MAX_ITER {
            let an = -(i as f64) * (i as f64 - s);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-15 {
                return Ok(1.0 - log_front.exp() * h);
            }
        }
        Err(Error::NoConvergence(GAMMA_MAX_ITER))
    }
}

/// Lower incomplete gamma function, relative accuracy ~1e-12.
pub fn lower_incomplete_gamma(s: f64, x: f64) -> Result<f64> {
    Ok(regularized_lower_gamma(s, x)? * gamma(s))
}

/// Gamma density x^{k-1} e^{-x/theta} / (Gamma(k) theta^k) on x >= 0.
/// Unbounded at 0 when k < 1 (t = 2), which is signalled, not evaluated.
pub fn gamma_pdf(params: &GammaParams, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("gamma density needs x >= 0, got {x}")));
    }
    if x == 0.0 && params.shape < 1.0 {
        return Err(Error::DensityUnbounded);
    }
    let k = params.shape;
    let th = params.scale;
    Ok(x.powf(k - 1.0) * (-x / th).exp() / (gamma(k) * th.powf(k)))
}

/// CDF of the limit b - X, X ~ Gamma(k,theta): the upper Gamma tail
/// Q(k, (b-x)/theta) for x < b and 1 from b on. For t=3 this is e^{x-1}
/// below 1. Monotone from 0 to 1.
pub fn limit_cdf(t: u32, x: f64) -> f64 {
    let p = GammaParams::new(t);
    if x >= p.upper_edge() {
        return 1.0;
    }
    let z = (p.upper_edge() - x) / p.scale();
    1.0 - regularized_lower_gamma(p.shape(), z)
        .expect("positive shape and argument always converge")
}

/// Continuous approximation to the t=2 scaled mass function on its
/// supported points. Defined while n - sqrt(3n) x / pi > 0.
pub fn h2(n: u64, x: f64) -> Result<f64> {
    let nf = n as f64;
    let inner = nf - (3.0 * nf).sqrt() * x / PI;
    if inner <= 0.0 {
        return Err(Error::Domain(format!("x = {x} is beyond the admissible range for n = {n}")));
    }
    let expo = PI * (2.0f64 / 3.0).sqrt() * (inner.sqrt() - nf.sqrt());
    Ok(3.0f64.powf(0.25) * nf.powf(1.5) * expo.exp() / (2.0 * PI * (inner / 2.0).powf(1.25)))
}

/// Base curve of the t=3 band structure: supported values of f_{3;n}
/// cluster on integer multiples of it. Defined while n - sqrt(6n) x / pi > 0.
pub fn h3(n: u64, x: f64) -> Result<f64> {
    let nf = n as f64;
    let inner = nf - (6.0 * nf).sqrt() * x / PI;
    if inner <= 0.0 {
        return Err(Error::Domain(format!("x = {x} is beyond the admissible range for n = {n}")));
    }
    let expo = PI * (2.0f64 / 3.0).sqrt() * (inner.sqrt() - nf.sqrt());
    Ok(3.0 * 3.0f64.sqrt() * nf.powf(1.5) * expo.exp() / (2.0 * PI * inner.powf(1.5)))
}

/// Asymptotic mean n/t - (t-1) sqrt(6n) / (2 pi t).
pub fn asymptotic_mean(t: u32, n: u64) -> f64 {
    let tf = t as f64;
    let nf = n as f64;
    nf / tf - (tf - 1.0) * (6.0 * nf).sqrt() / (2.0 * PI * tf)
}

/// Asymptotic variance 3(t-1)n / (pi^2 t^2). Its square root is
/// `grid_prefactor`.
pub fn asymptotic_variance(t: u32, n: u64) -> f64 {
    let tf = t as f64;
    3.0 * (tf - 1.0) * n as f64 / (PI * PI * tf * tf)
}

/// Asymptotic mode n/t - (t-3) sqrt(6n) / (2 pi t). For t=2 this exceeds
/// n/2 and thus the whole support: a formal extrapolation.
pub fn asymptotic_mode(t: u32, n: u64) -> f64 {
    let tf = t as f64;
    let nf = n as f64;
    nf / tf - (tf - 3.0) * (6.0 * nf).sqrt() / (2.0 * PI * tf)
}

/// The standardization map xi(x) = mean + sd * x (asymptotic parameters).
pub fn xi(t: u32, n: u64, x: f64) -> f64 {
    asymptotic_mean(t, n) + asymptotic_variance(t, n).sqrt() * x
}

/// F_t(k, n) = P(count <= k), exact prefix ratio. Clamped outside the
/// support: negative k gives 0, k >= degree gives 1.
pub fn cdf(table: &CoeffTable, k: i64) -> f64 {
    if k < 0 {
        return 0.0;
    }
    let k = (k as u64).min(table.degree() as u64) as usize;
    let mut part = BigInt::zero();
    for c in &table.coeffs()[..=k] {
        part += c;
    }
    big_ratio_to_f64(&part, &table.total())
}

/// CDF of the standardized count at x: F_t(floor(xi(x)), n).
pub fn cdf_at_xi(table: &CoeffTable, x: f64) -> f64 {
    let deg = table.degree() as f64;
    let k = xi(table.t(), table.n(), x).floor().clamp(-1.0, deg);
    cdf(table, k as i64)
}

/// Standardized empirical characteristic function
/// sum_m pmf(m) e^{i (m - mean) r / sd}.
pub fn char_fn(table: &CoeffTable, r: f64) -> Complex64 {
    char_fn_with_probs(table, &probabilities(table), r)
}

fn char_fn_with_probs(table: &CoeffTable, probs: &[f64], r: f64) -> Complex64 {
    let mu = asymptotic_mean(table.t(), table.n());
    let sigma = asymptotic_variance(table.t(), table.n()).sqrt();
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, &p) in probs.iter().enumerate() {
        if p != 0.0 {
            let phase = (m as f64 - mu) * r / sigma;
            acc += p * Complex64::new(phase.cos(), phase.sin());
        }
    }
    acc
}

/// Characteristic function of the limit b - X: e^{ibr} / (1 + i theta r)^k,
/// principal branch (the base has positive real part). Modulus
/// (1 + theta^2 r^2)^{-k/2}; value 1 at r = 0.
pub fn limit_char_fn(t: u32, r: f64) -> Complex64 {
    let p = GammaParams::new(t);
    let shift = Complex64::new(0.0, p.upper_edge() * r).exp();
    let base = Complex64::new(1.0, p.scale() * r);
    shift / base.powf(p.shape())
}

/// sum_m (p_t(m,n)/p(n)) e^{i m theta}: the coefficient polynomial on the
/// unit circle, scaled by p(n). Modulus <= 1.
pub fn eval_poly_on_circle(table: &CoeffTable, theta: f64) -> Complex64 {
    let probs = probabilities(table);
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, &p) in probs.iter().enumerate() {
        if p != 0.0 {
            let phase = m as f64 * theta;
            acc += p * Complex64::new(phase.cos(), phase.sin());
        }
    }
    acc
}

/// A complex value carried as log-magnitude plus phase, because the
/// magnitudes here overflow f64 well before n reaches interesting sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleValue {
    pub log_magnitude: f64,
    pub phase: f64,
}

impl SaddleValue {
    pub fn magnitude(&self) -> f64 {
        self.log_magnitude.exp()
    }
}

/// Closed-form saddle-point estimate of P_t(n, e^{alpha/sqrt n}) for purely
/// imaginary alpha:
///   (2^{7/4} 3^{1/4} n)^{-1} sqrt(1/sqrt 6 + alpha/(pi t))
///   * (pi t / (pi t + alpha sqrt 6))^{t/2}
///   * exp(pi sqrt n (sqrt(2/3) + alpha/(pi t))).
/// At alpha = 0 it collapses to exp(pi sqrt(2n/3)) / (4 sqrt 3 n), the
/// leading partition asymptotic, since 2^{7/4} 3^{1/4} 6^{1/4} = 4 sqrt 3.
pub fn saddle_asymptotic(t: u32, n: u64, alpha: Complex64) -> Result<SaddleValue> {
    assert!(t == 2 || t == 3, "the estimate is stated for t = 2, 3");
    if alpha.re != 0.0 {
        return Err(Error::Domain(format!(
            "alpha must be purely imaginary, got {alpha}"
        )));
    }
    let tf = t as f64;
    let nf = n as f64;
    let tpi = tf * PI;
    let root = (Complex64::new(1.0 / 6.0f64.sqrt(), 0.0) + alpha / tpi).sqrt();
    let pow = (tpi / (tpi + alpha * 6.0f64.sqrt())).powf(tf / 2.0);
    let expo = (Complex64::new((2.0f64 / 3.0).sqrt(), 0.0) + alpha / tpi) * PI * nf.sqrt();
    let ln_prefix = (root * pow).ln();
    let log_magnitude =
        ln_prefix.re + expo.re - (7.0 / 4.0 * LN_2 + 0.25 * 3.0f64.ln() + nf.ln());
    let raw_phase = ln_prefix.im + expo.im;
    let mut phase = raw_phase.rem_euclid(2.0 * PI);
    if phase > PI {
        phase -= 2.0 * PI;
    }
    Ok(SaddleValue { log_magnitude, phase })
}

/// One grid row of the curve output: scaled mass f, continuous
/// approximation h (t=2 curve, or alpha-band value for t=3 at supported
/// points), and the limit density g. Absent entries mark points where the
/// curve is undefined (m = 0 edge, vanishing t=3 points, t >= 4 h-curves,
/// the unbounded t=2 density at x = 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub m: u64,
    pub x: f64,
    pub f: f64,
    pub h: Option<f64>,
    pub g: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdfRow {
    pub x: f64,
    pub cdf: f64,
    pub limit: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharRow {
    pub r: f64,
    pub empirical: Complex64,
    pub limit: Complex64,
    pub gap: f64,
}

/// Curve data over the whole grid, ascending in x.
pub fn curve_rows(table: &CoeffTable) -> Vec<CurveRow> {
    let t = table.t();
    let n = table.n();
    let probs = probabilities(table);
    let pref = grid_prefactor(t, n);
    let params = GammaParams::new(t);
    let mut rows = Vec::with_capacity(probs.len());
    for m in (0..=table.degree() as u64).rev() {
        let x = GridPoint::from_m(t, n, m).x;
        let f = pref * probs[m as usize];
        let h = match t {
            2 => h2(n, x).ok(),
            3 => {
                let c = char_sum_c(n - 3 * m);
                if c > 0 {
                    h3(n, x).ok().map(|v| c as f64 * v)
                } else {
                    None
                }
            }
            _ => None,
        };
        let g = gamma_pdf(&params, x).ok();
        rows.push(CurveRow { m, x, f, h, g });
    }
    rows
}

/// Exact-vs-limit CDF rows at the given standardized abscissas.
pub fn cdf_comparison(table: &CoeffTable, xs: &[f64]) -> Vec<CdfRow> {
    xs.iter()
        .map(|&x| {
            let c = cdf_at_xi(table, x);
            let l = limit_cdf(table.t(), x);
            CdfRow { x, cdf: c, limit: l, gap: (c - l).abs() }
        })
        .collect()
}

/// Empirical-vs-limit characteristic function rows at the given r values.
pub fn char_samples(table: &CoeffTable, rs: &[f64]) -> Vec<CharRow> {
    let probs = probabilities(table);
    rs.iter()
        .map(|&r| {
            let e = char_fn_with_probs(table, &probs, r);
            let l = limit_char_fn(table.t(), r);
            CharRow { r, empirical: e, limit: l, gap: (e - l).norm() }
        })
        .collect()
}

/// Distribution summary: exact moments and mode from the table next to
/// their asymptotic counterparts, with optional grid/CDF/char detail.
#[derive(Debug, Clone)]
pub struct DistReport {
    pub t: u32,
    pub n: u64,
    pub exact_mean: f64,
    pub exact_variance: f64,
    pub exact_mode: u64,
    pub asym_mean: f64,
    pub asym_variance: f64,
    pub asym_mode: f64,
    /// Set when the asymptotic mode lies beyond the continuous support
    /// edge n/t (always the case for t = 2).
    pub mode_is_formal_extrapolation: bool,
    pub curves: Vec<CurveRow>,
    pub cdf: Vec<CdfRow>,
    pub char_samples: Vec<CharRow>,
}

/// Exact mean, variance (both from exact rational arithmetic, rounded
/// once) and mode (smallest index on ties) with the asymptotic formulas.
pub fn summary(table: &CoeffTable) -> DistReport {
    let t = table.t();
    let n = table.n();
    let mut s0 = BigInt::zero();
    let mut s1 = BigInt::zero();
    let mut s2 = BigInt::zero();
    let mut mode = 0u64;
    for (m, c) in table.coeffs().iter().enumerate() {
        let mf = BigInt::from(m as u64);
        s0 += c;
        s1 += c * &mf;
        s2 += c * &mf * &mf;
        if c > table.coeff(mode as usize) {
            mode = m as u64;
        }
    }
    let exact_mean = big_ratio_to_f64(&s1, &s0);
    let exact_variance = big_ratio_to_f64(&(&s2 * &s0 - &s1 * &s1), &(&s0 * &s0));
    let asym_mode = asymptotic_mode(t, n);
    DistReport {
        t,
        n,
        exact_mean,
        exact_variance,
        exact_mode: mode,
        asym_mean: asymptotic_mean(t, n),
        asym_variance: asymptotic_variance(t, n),
        asym_mode,
        mode_is_formal_extrapolation: asym_mode > n as f64 / t as f64,
        curves: Vec::new(),
        cdf: Vec::new(),
        char_samples: Vec::new(),
    }
}

/// `summary` plus curve, CDF and characteristic-function detail.
pub fn full_report(table: &CoeffTable, xs: &[f64], rs: &[f64]) -> DistReport {
    let mut report = summary(table);
    report.curves = curve_rows(table);
    report.cdf = cdf_comparison(table, xs);
    report.char_samples = char_samples(table, rs);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hookstat::{brute_force_table, coeff_table};

    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        let mut acc = f(a) + f(b);
        for i in 1..panels {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(a + i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn params_identity() {
        for t in 2..=12 {
            let p = GammaParams::new(t);
            assert!((p.shape() * p.scale() * p.scale() - 1.0).abs() < 1e-14, "t={t}");
            assert!((p.shape() * p.scale() - p.upper_edge()).abs() < 1e-14, "t={t}");
        }
        let p = GammaParams::new(3);
        assert_eq!((p.shape(), p.scale(), p.upper_edge()), (1.0, 1.0, 1.0));
    }

    #[test]
    fn ln_gamma_reference_values() {
        assert!((gamma(0.5) - 1.772_453_850_905_516_03).abs() < 1e-13);
        assert!((gamma(5.5) - 52.342_777_784_553_520_2).abs() < 1e-11);
        assert!((gamma(1.0) - 1.0).abs() < 1e-14);
        assert!((gamma(6.0) - 120.0).abs() < 1e-12);
        assert!((gamma(0.25) - 3.625_609_908_221_908_31).abs() < 1e-13);
    }

    #[test]
    fn incomplete_gamma_reference_values() {
        let cases = [
            (0.5, 0.5, 1.210_035_619_311_108_90_f64 - 0.0),
            (0.5, 1.0, 1.493_648_265_624_854_05),
            (0.5, 2.0, 1.691_806_732_945_198_33),
            (1.5, 2.5, 0.733_975_670_461_100_386),
            (2.5, 0.3, 0.015_947_773_880_990_294_2),
            (5.5, 7.0, 40.147_251_968_810_228_9),
        ];
        for (s, x, want) in cases {
            let got = lower_incomplete_gamma(s, x).unwrap();
            assert!((got - want).abs() < 1e-12 * want.max(1.0), "gamma({s},{x}) = {got}");
        }
    }

    #[test]
    fn incomplete_gamma_shape_one_closed_form() {
        for x in [0.1, 0.5, 1.0, 3.0, 10.0] {
            let got = lower_incomplete_gamma(1.0, x).unwrap();
            assert!((got - (1.0 - (-x).exp())).abs() < 1e-13, "x={x}");
        }
        assert_eq!(lower_incomplete_gamma(2.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn incomplete_gamma_half_vs_quadrature() {
        // gamma(1/2, x) = 2 int_0^sqrt(x) e^{-u^2} du
        for x in [0.5_f64, 1.0, 2.0] {
            let oracle = 2.0 * simpson(|u| (-u * u).exp(), 0.0, x.sqrt(), 20_000);
            let got = lower_incomplete_gamma(0.5, x).unwrap();
            assert!((got - oracle).abs() < 1e-8, "x={x}: {got} vs {oracle}");
        }
    }

    #[test]
    fn incomplete_gamma_domain() {
        assert!(lower_incomplete_gamma(0.0, 1.0).is_err());
        assert!(lower_incomplete_gamma(-1.0, 1.0).is_err());
        assert!(lower_incomplete_gamma(1.0, -0.5).is_err());
    }

    #[test]
    fn gamma_pdf_t3_is_exponential() {
        let p = GammaParams::new(3);
        assert!((gamma_pdf(&p, 0.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_pdf(&p, 1.0).unwrap() - (-1.0_f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn gamma_pdf_edge_behavior() {
        let p2 = GammaParams::new(2);
        assert!(matches!(gamma_pdf(&p2, 0.0), Err(Error::DensityUnbounded)));
        assert!(matches!(gamma_pdf(&p2, -0.1), Err(Error::Domain(_))));
        assert!(gamma_pdf(&GammaParams::new(4), 0.0).unwrap().abs() < 1e-30);
    }

    #[test]
    fn gamma_pdf_normalizes() {
        // t=2 has an integrable singularity at 0; substitute x = u^2
        let p2 = GammaParams::new(2);
        let i2 = simpson(
            |u| 2.0 * u * gamma_pdf(&p2, u * u).unwrap_or(0.0),
            1e-9,
            10.0,
            40_000,
        );
        assert!((i2 - 1.0).abs() < 1e-8, "t=2 integral {i2}");
        let p3 = GammaParams::new(3);
        let i3 = simpson(|x| gamma_pdf(&p3, x).unwrap(), 0.0, 45.0, 40_000);
        assert!((i3 - 1.0).abs() < 1e-8, "t=3 integral {i3}");
        let p11 = GammaParams::new(11);
        let i11 = simpson(|x| gamma_pdf(&p11, x).unwrap(), 0.0, 25.0, 40_000);
        assert!((i11 - 1.0).abs() < 1e-8, "t=11 integral {i11}");
    }

    #[test]
    fn limit_cdf_t3_closed_form() {
        for x in [-3.0_f64, -1.0, 0.0, 0.5, 0.999] {
            let got = limit_cdf(3, x);
            assert!((got - (x - 1.0).exp()).abs() < 1e-12, "x={x}: {got}");
        }
        assert_eq!(limit_cdf(3, 1.0), 1.0);
        assert_eq!(limit_cdf(3, 5.0), 1.0);
    }

    #[test]
    fn limit_cdf_monotone_and_clamped() {
        for t in [2u32, 3, 7] {
            let mut prev = -1.0;
            for i in 0..200 {
                let x = -6.0 + i as f64 * 0.05;
                let v = limit_cdf(t, x);
                assert!((0.0..=1.0).contains(&v));
                assert!(v >= prev - 1e-12, "t={t}, x={x}");
                prev = v;
            }
            assert!(limit_cdf(t, -40.0) < 1e-12);
            let b = GammaParams::new(t).upper_edge();
            assert_eq!(limit_cdf(t, b), 1.0);
        }
    }

    #[test]
    fn big_ratio_values() {
        let r = big_ratio_to_f64(&BigInt::from(1), &BigInt::from(3));
        assert!((r - 1.0 / 3.0).abs() < 1e-16);
        let r = big_ratio_to_f64(&BigInt::from(-2), &BigInt::from(3));
        assert!((r + 2.0 / 3.0).abs() < 1e-16);
        assert_eq!(big_ratio_to_f64(&BigInt::from(0), &BigInt::from(7)), 0.0);
        let big = BigInt::from(10u64).pow(50);
        let r = big_ratio_to_f64(&(&big * 3), &big);
        assert!((r - 3.0).abs() < 1e-14);
    }

    #[test]
    fn ln_bigint_values() {
        assert!((ln_bigint(&BigInt::from(1)) - 0.0).abs() < 1e-15);
        let x = BigInt::from(10u64).pow(100);
        assert!((ln_bigint(&x) - 100.0 * 10.0f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn pmf_frozen_value() {
        let table = coeff_table(2, 100);
        let got = pmf(&table, 50).unwrap();
        assert!((got - 0.544_049_646_781_497_3).abs() < 1e-15, "{got}");
        assert_eq!(pmf(&table, 12).unwrap(), 0.0);
        assert!(matches!(pmf(&table, 51), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(pmf(&table, -1), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn pmf_normalizes() {
        for (t, n) in [(2u32, 300u64), (3, 300), (5, 120)] {
            let table = coeff_table(t, n);
            let total: f64 = probabilities(&table).iter().sum();
            assert!((total - 1.0).abs() < 1e-12, "t={t}, n={n}: {total}");
        }
    }

    #[test]
    fn grid_shape() {
        let table = coeff_table(2, 100);
        let g = grid(&table);
        assert_eq!(g.len(), 51);
        assert_eq!(g[0].m, 50);
        assert_eq!(g[50].m, 0);
        for w in g.windows(2) {
            assert!(w[0].x < w[1].x);
        }
        // x at m = 0 is n pi / sqrt(3(t-1)n)
        let expect = 100.0 * PI / (300.0_f64).sqrt();
        assert!((g[50].x - expect).abs() < 1e-12);
    }

    #[test]
    fn scaled_pmf_prefactor() {
        assert!((grid_prefactor(2, 100) - 300.0_f64.sqrt() / (2.0 * PI)).abs() < 1e-14);
        assert!((grid_prefactor(3, 100) - 600.0_f64.sqrt() / (3.0 * PI)).abs() < 1e-14);
        let table = coeff_table(2, 100);
        let point = GridPoint::from_m(2, 100, 50);
        let f = scaled_pmf(&table, point).unwrap();
        let want = 300.0_f64.sqrt() / (2.0 * PI) * 0.544_049_646_781_497_3;
        assert!((f - want).abs() < 1e-14);
    }

    #[test]
    fn scaled_pmf_rejects_off_grid() {
        let table = coeff_table(2, 100);
        let bad = GridPoint { m: 10, x: 0.123 };
        assert!(matches!(scaled_pmf(&table, bad), Err(Error::OffGrid { .. })));
        let far = GridPoint { m: 99, x: 0.0 };
        assert!(matches!(scaled_pmf(&table, far), Err(Error::OffGrid { .. })));
    }

    #[test]
    fn alpha_factor_rules() {
        let n = 30u64;
        let table = coeff_table(3, n);
        // n - 3m = 0 at m = 10: c(0) = 1
        assert_eq!(alpha_factor(&table, GridPoint::from_m(3, n, 10)).unwrap(), 1);
        // n - 3m = 2 at m = 28/3 -> use m = 9, k = 3: c(3) = 0, vanishing
        match alpha_factor(&table, GridPoint::from_m(3, n, 9)) {
            Err(Error::VanishingPoint { m: 9 }) => {}
            other => panic!("expected vanishing point, got {other:?}"),
        }
        // k = 2: 3k+1 = 7 prime, so the multiplier is 2
        let table = coeff_table(3, 32);
        assert_eq!(alpha_factor(&table, GridPoint::from_m(3, 32, 10)).unwrap(), 2);
    }

    #[test]
    fn h_values() {
        for n in [100u64, 5000, 1_000_000] {
            let h = h3(n, 0.0).unwrap();
            assert!((h - 3.0 * 3.0f64.sqrt() / (2.0 * PI)).abs() < 1e-12, "n={n}");
        }
        let h = h2(100, 0.0).unwrap();
        let want = 3.0f64.powf(0.25) * 2.0f64.powf(1.25) * 100.0f64.powf(0.25) / (2.0 * PI);
        assert!((h - want).abs() < 1e-12);

        // large-n limit of h3 at x=1
        let h = h3(1_000_000, 1.0).unwrap();
        assert!((h - 0.304_531).abs() < 2e-6, "{h}");
        let limit = 3.0 * 3.0f64.sqrt() / (2.0 * PI) * (-1.0f64).exp();
        assert!((h / limit - 1.0).abs() < 0.01);
    }

    #[test]
    fn h_domain() {
        // x beyond the admissible range: inner term hits zero at m = 0
        let x_edge = 100.0 * PI / 300.0f64.sqrt();
        assert!(h2(100, x_edge).is_err());
        assert!(h2(100, x_edge - 1e-6).is_ok());
        let x_edge = 100.0 * PI / 600.0f64.sqrt();
        assert!(h3(100, x_edge).is_err());
    }

    #[test]
    fn summary_frozen_moments() {
        let r = summary(&coeff_table(2, 100));
        assert!((r.exact_mean - 48.034_884_161_714_785).abs() < 1e-12, "{}", r.exact_mean);
        assert!((r.exact_variance - 7.773_655_334_383_802).abs() < 1e-12, "{}", r.exact_variance);
        assert_eq!(r.exact_mode, 50);
        assert!(r.mode_is_formal_extrapolation);

        let r = summary(&coeff_table(3, 99));
        assert!(!r.mode_is_formal_extrapolation);
        assert!((r.asym_mode - 33.0).abs() < 1e-12);
    }

    #[test]
    fn asymptotic_values() {
        let v = asymptotic_variance(2, 5000);
        assert!((v - 15000.0 / (4.0 * PI * PI)).abs() < 1e-10);
        assert!((v - 379.954).abs() < 1e-3);
        assert!((asymptotic_mean(2, 5000) - 2486.217).abs() < 1e-3);
        assert!((asymptotic_mean(3, 5000) - 1648.289).abs() < 1e-3);
    }

    #[test]
    fn cdf_steps() {
        let table = coeff_table(2, 100);
        assert_eq!(cdf(&table, 10), 0.0);
        let got = cdf(&table, 11);
        assert!((got - 3.946_071_227_467_225e-6).abs() < 1e-18, "{got}");
        assert!((cdf(&table, 50) - 1.0).abs() < 1e-14);
        assert_eq!(cdf(&table, -5), 0.0);
        assert!((cdf(&table, 1_000_000) - 1.0).abs() < 1e-14);
        let mut prev = 0.0;
        for k in 0..=50 {
            let v = cdf(&table, k);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn char_fn_basics() {
        let table = coeff_table(3, 200);
        let v = char_fn(&table, 0.0);
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        for r in [-2.0, -0.5, 0.7, 3.3] {
            assert!(char_fn(&table, r).norm() <= 1.0 + 1e-12, "r={r}");
        }
    }

    #[test]
    fn limit_char_fn_values() {
        assert!((limit_char_fn(2, 0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let r = 0.8;
        let want = Complex64::new(0.0, r).exp() / Complex64::new(1.0, r);
        assert!((limit_char_fn(3, r) - want).norm() < 1e-14);
        for t in [2u32, 3, 9] {
            let p = GammaParams::new(t);
            for r in [0.3, 1.7] {
                let want = (1.0 + p.scale() * p.scale() * r * r).powf(-p.shape() / 2.0);
                assert!((limit_char_fn(t, r).norm() - want).abs() < 1e-13, "t={t}, r={r}");
            }
        }
    }

    #[test]
    fn poly_on_circle_values() {
        let table = coeff_table(2, 100);
        assert!((eval_poly_on_circle(&table, 0.0) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        // P_3(4,x) = 2 + 3x: at theta = pi the normalized value is -1/5
        let table = brute_force_table(3, 4).unwrap();
        let v = eval_poly_on_circle(&table, PI);
        assert!((v - Complex64::new(-0.2, 0.0)).norm() < 1e-14, "{v}");
        for theta in [0.4, 2.9] {
            assert!(eval_poly_on_circle(&table, theta).norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn saddle_reduces_to_partition_asymptotic() {
        for n in [50u64, 1000, 4000] {
            let v = saddle_asymptotic(2, n, Complex64::new(0.0, 0.0)).unwrap();
            let nf = n as f64;
            let hr = PI * (2.0 * nf / 3.0).sqrt() - (4.0 * 3.0f64.sqrt() * nf).ln();
            assert!((v.log_magnitude - hr).abs() < 1e-10, "n={n}");
            assert!(v.phase.abs() < 1e-12);
            let w = saddle_asymptotic(3, n, Complex64::new(0.0, 0.0)).unwrap();
            assert!((w.log_magnitude - hr).abs() < 1e-10, "n={n} t=3");
        }
    }

    #[test]
    fn saddle_rejects_real_alpha() {
        assert!(matches!(
            saddle_asymptotic(2, 100, Complex64::new(0.3, 0.1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn curve_rows_shape() {
        let table = coeff_table(3, 99);
        let rows = curve_rows(&table);
        assert_eq!(rows.len(), 34);
        for w in rows.windows(2) {
            assert!(w[0].x < w[1].x);
            assert!(w[0].m > w[1].m);
        }
        // m = deg: x = 0 for 3 | n, so g_3(0) = 1 is present
        assert!((rows[0].g.unwrap() - 1.0).abs() < 1e-12);
        // m = 0 edge: h undefined there
        assert!(rows.last().unwrap().h.is_none());
        // vanishing points have no band value and zero mass
        for r in &rows {
            let c = char_sum_c(99 - 3 * r.m);
            if c == 0 {
                assert!(r.h.is_none());
                assert_eq!(r.f, 0.0);
            } else if r.m > 0 {
                assert!(r.h.is_some());
            }
        }
    }

    #[test]
    fn curve_rows_t2_gap_at_zero() {
        let table = coeff_table(2, 100);
        let rows = curve_rows(&table);
        assert!(rows[0].g.is_none()); // x = 0, unbounded density
        assert!(rows[0].h.is_some());
        assert!(rows.last().unwrap().h.is_none()); // m = 0 edge
    }

    #[test]
    fn report_rows() {
        let table = coeff_table(2, 120);
        let xs = [-1.0, 0.0, 1.0];
        let rs = [0.5, 1.0];
        let r = full_report(&table, &xs, &rs);
        assert_eq!(r.cdf.len(), 3);
        assert_eq!(r.char_samples.len(), 2);
        assert_eq!(r.curves.len(), 61);
        for row in &r.cdf {
            assert!((row.gap - (row.cdf - row.limit).abs()).abs() < 1e-15);
        }
        let s = summary(&table);
        assert_eq!(s.curves.len(), 0);
        assert_eq!(s.t, 2);
    }
}
