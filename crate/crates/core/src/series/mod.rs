//! Truncated power series over exact arbitrary-precision integers.
//!
//! Everything downstream (coefficient tables, probability masses, identity
//! checks) is built from the expansions produced here, so all arithmetic is
//! exact up to the truncation order; floats never enter this module.

pub mod cache;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A power series truncated at `order`: coefficients of q^0 .. q^order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    /// Wraps a coefficient vector; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least the constant coefficient".into(),
            ));
        }
        Ok(IntSeries { order: coeffs.len() - 1, coeffs })
    }

    pub fn zero(order: usize) -> Self {
        IntSeries { order, coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        coeffs[0] = BigInt::one();
        IntSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of q^k, reading past the truncation as zero.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Copy truncated (or zero-padded) to a new order.
    pub fn truncated(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, BigInt::zero());
        coeffs.truncate(order + 1);
        IntSeries { order, coeffs }
    }

    fn from_raw(coeffs: Vec<BigInt>) -> Self {
        debug_assert!(!coeffs.is_empty());
        IntSeries { order: coeffs.len() - 1, coeffs }
    }
}

impl std::ops::Index<usize> for IntSeries {
    type Output = BigInt;
    fn index(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }
}

/// Exact Cauchy product truncated at `order`; inputs shorter than `order`
/// are treated as zero-padded.
pub fn series_mul(a: &IntSeries, b: &IntSeries, order: usize) -> IntSeries {
    let mut out = vec![BigInt::zero(); order + 1];
    for (i, ai) in a.coeffs.iter().enumerate().take(order + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate().take(order + 1 - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] += ai * bj;
        }
    }
    IntSeries::from_raw(out)
}

/// Coefficient-wise sum truncated at `order`.
pub fn series_add(a: &IntSeries, b: &IntSeries, order: usize) -> IntSeries {
    let mut out = vec![BigInt::zero(); order + 1];
    for (k, slot) in out.iter_mut().enumerate() {
        if let Some(ai) = a.coeffs.get(k) {
            *slot += ai;
        }
        if let Some(bi) = b.coeffs.get(k) {
            *slot += bi;
        }
    }
    IntSeries::from_raw(out)
}

/// One factor (1 - q^scale)^exponent of an eta quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EtaFactor {
    scale: u32,
    exponent: i32,
}

impl EtaFactor {
    pub fn new(scale: u32, exponent: i32) -> Result<Self> {
        if scale == 0 {
            return Err(Error::InvalidArgument("eta factor scale must be >= 1".into()));
        }
        Ok(EtaFactor { scale, exponent })
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn exponent(&self) -> i32 {
        self.exponent
    }

    pub fn inverse(&self) -> Self {
        EtaFactor { scale: self.scale, exponent: -self.exponent }
    }
}

/// Exact expansion of prod (1 - q^{j_i})^{e_i} to `order`.
///
/// A positive exponent is applied as repeated in-place multiplication by
/// (1 - q^j); a negative one as repeated multiplication by the geometric
/// series (1 - q^j)^{-1}, which is a single ascending prefix-add pass, so
/// every intermediate value stays an exact integer.
pub fn eta_quotient_expand(factors: &[EtaFactor], order: usize) -> IntSeries {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for f in factors {
        let j = f.scale as usize;
        if j > order {
            // contributes only its constant term 1
            continue;
        }
        if f.exponent >= 0 {
            for _ in 0..f.exponent {
                // descending, so c[k - j] is still the pre-pass value
                for k in (j..=order).rev() {
                    let (lo, hi) = c.split_at_mut(k);
                    hi[0] -= &lo[k - j];
                }
            }
        } else {
            for _ in 0..f.exponent.unsigned_abs() {
                // ascending, so c[k - j] is already the post-pass value
                for k in j..=order {
                    let (lo, hi) = c.split_at_mut(k);
                    hi[0] += &lo[k - j];
                }
            }
        }
    }
    IntSeries::from_raw(c)
}

/// All generalized pentagonal numbers g <= order with the sign of their
/// term in Euler's recurrence, ascending by g.
fn pentagonal_terms(order: usize) -> Vec<(usize, bool)> {
    let mut terms = Vec::new();
    let mut k = 1usize;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        let g2 = k * (3 * k + 1) / 2;
        if g1 > order && g2 > order {
            break;
        }
        let positive = k % 2 == 1;
        if g1 <= order {
            terms.push((g1, positive));
        }
        if g2 <= order {
            terms.push((g2, positive));
        }
        k += 1;
    }
    terms.sort_unstable();
    terms
}

/// p(0..=order) by the pentagonal-number recurrence,
/// p(n) = sum_k (-1)^{k+1} (p(n - k(3k-1)/2) + p(n - k(3k+1)/2)).
pub fn partition_numbers(order: usize) -> IntSeries {
    let mut p = vec![BigInt::zero(); order + 1];
    p[0] = BigInt::one();
    let pents = pentagonal_terms(order);
    for n in 1..=order {
        let mut acc = BigInt::zero();
        for &(g, positive) in &pents {
            if g > n {
                break;
            }
            if positive {
                acc += &p[n - g];
            } else {
                acc -= &p[n - g];
            }
        }
        p[n] = acc;
    }
    IntSeries::from_raw(p)
}

/// The sparse expansion of E(q) = prod (1 - q^m): +-1 at generalized
/// pentagonal indices, zero elsewhere (Euler's pentagonal number theorem).
/// Exposed for the fast small-coefficient powers of E.
pub(crate) fn euler_e_i128(order: usize) -> Vec<i128> {
    let mut e = vec![0i128; order + 1];
    e[0] = 1;
    for (g, positive) in pentagonal_terms(order) {
        e[g] = if positive { -1 } else { 1 };
    }
    e
}
