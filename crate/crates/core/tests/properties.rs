//! Randomized structural properties of the series ring, the eta
//! expansion, and the hook-count tables.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::collection::vec;
use proptest::prelude::*;

use hookdist_core::hookstat::{
    brute_force_table, char_sum_c, coeff_table, enumerate_partitions, hook_count_divisible,
    hook_lengths, Partition,
};
use hookdist_core::series::{
    eta_quotient_expand, partition_numbers, series_add, series_mul, EtaFactor, IntSeries,
};

fn int_series() -> impl Strategy<Value = IntSeries> {
    vec(-50i64..=50, 1..=12).prop_map(|cs| {
        IntSeries::new(cs.into_iter().map(BigInt::from).collect()).expect("nonempty")
    })
}

fn shape() -> impl Strategy<Value = Partition> {
    vec(1u32..=8, 1..=8).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("positive and nonincreasing")
    })
}

proptest! {
    #[test]
    fn mul_commutes(a in int_series(), b in int_series()) {
        let order = a.order().max(b.order());
        prop_assert_eq!(series_mul(&a, &b, order), series_mul(&b, &a, order));
    }

    #[test]
    fn mul_associates(a in int_series(), b in int_series(), c in int_series()) {
        let order = a.order().max(b.order()).max(c.order());
        let left = series_mul(&series_mul(&a, &b, order), &c, order);
        let right = series_mul(&a, &series_mul(&b, &c, order), order);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn mul_distributes_over_add(a in int_series(), b in int_series(), c in int_series()) {
        let order = a.order().max(b.order()).max(c.order());
        let left = series_mul(&a, &series_add(&b, &c, order), order);
        let right = series_add(
            &series_mul(&a, &b, order),
            &series_mul(&a, &c, order),
            order,
        );
        prop_assert_eq!(left, right);
    }

    #[test]
    fn one_is_multiplicative_identity(a in int_series()) {
        let order = a.order();
        prop_assert_eq!(series_mul(&a, &IntSeries::one(order), order), a);
    }

    #[test]
    fn eta_factor_cancels_its_inverse(scale in 1u32..=4, exponent in prop_oneof![-3i32..=-1, 1i32..=3]) {
        let f = EtaFactor::new(scale, exponent).expect("valid factor");
        let expanded = eta_quotient_expand(&[f.clone(), f.inverse()], 24);
        prop_assert_eq!(expanded, IntSeries::one(24));
    }

    #[test]
    fn enumeration_count_matches_partition_numbers(n in 1u64..=30) {
        let p = partition_numbers(n as usize);
        let counted = enumerate_partitions(n).expect("within bound").count();
        prop_assert_eq!(BigInt::from(counted), p.coeff(n as usize));
    }

    #[test]
    fn hooks_cover_the_diagram(p in shape()) {
        let hooks = hook_lengths(&p);
        prop_assert_eq!(hooks.len() as u64, p.size());
        prop_assert!(hooks.iter().all(|&h| h >= 1));
        // every cell has hook length 1 exactly when it is a corner
        prop_assert_eq!(hook_count_divisible(&p, 1), p.size());
    }

    #[test]
    fn divisible_count_is_bounded(p in shape(), t in 1u32..=6) {
        prop_assert!(hook_count_divisible(&p, t) <= p.size() / t as u64);
    }

    #[test]
    fn char_sum_values_are_nonnegative(k in 0u64..=5000) {
        prop_assert!(char_sum_c(k) >= 0);
    }

    #[test]
    fn tables_sum_to_partition_numbers(t in 2u32..=8, n in 1u64..=60) {
        let table = coeff_table(t, n);
        prop_assert_eq!(table.total(), partition_numbers(n as usize).coeff(n as usize));
        prop_assert!(table.coeffs().iter().all(|c| c >= &BigInt::zero()));
        prop_assert_eq!(table.degree() as u64, n / t as u64);
    }

    #[test]
    fn closed_form_matches_enumeration(t in 2u32..=6, n in 1u64..=18) {
        let fast = coeff_table(t, n);
        let slow = brute_force_table(t, n).expect("within bound");
        prop_assert_eq!(fast, slow);
    }
}

#[test]
fn one_series_is_one() {
    let one = IntSeries::one(3);
    assert!(one.coeff(0).is_one());
    assert!(one.coeff(3).is_zero());
}
