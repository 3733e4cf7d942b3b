use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use splitgenus::bounds::AngleSet;
use splitgenus::places::{divisors, mobius};
use splitgenus::weil::{admissible_elliptic_traces, elliptic_classes, isolate_real_roots, power_sums, WeilClass};

const FIELDS: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

/// A field size and 1 to 3 admissible traces over it.
fn arb_traces() -> impl Strategy<Value = (u64, Vec<i64>)> {
    prop::sample::select(FIELDS.to_vec()).prop_flat_map(|q| {
        let ts = admissible_elliptic_traces(q).unwrap();
        (Just(q), prop::collection::vec(prop::sample::select(ts), 1..=3))
    })
}

fn product(q: u64, traces: &[i64]) -> (Vec<WeilClass>, WeilClass) {
    let factors = elliptic_classes(q, traces, true).unwrap();
    let c = WeilClass::product(&factors).unwrap();
    (factors, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn power_sums_are_additive((q, traces) in arb_traces()) {
        let (factors, c) = product(q, &traces);
        let whole = power_sums(&c, 24);
        for n in 1..=24 {
            let parts: BigInt = factors.iter().map(|f| power_sums(f, n).get(n).clone()).sum();
            prop_assert_eq!(whole.get(n), &parts);
        }
    }

    #[test]
    fn gauss_congruence((q, traces) in arb_traces()) {
        let (_, c) = product(q, &traces);
        let ps = power_sums(&c, 30);
        for n in 1..=30u64 {
            let s: BigInt = divisors(n).iter().map(|&k| ps.get(k as usize) * mobius(n / k)).sum();
            prop_assert!((s % BigInt::from(n)).is_zero());
        }
    }

    #[test]
    fn weil_magnitude((q, traces) in arb_traces()) {
        let (_, c) = product(q, &traces);
        let d = c.dim() as u64;
        let ps = power_sums(&c, 30);
        for n in 1..=30usize {
            let p = ps.get(n);
            prop_assert!(p * p <= BigInt::from(4 * d * d) * num_traits::pow(BigInt::from(q), n));
        }
    }

    #[test]
    fn real_roots_match_traces((q, traces) in arb_traces()) {
        let (_, c) = product(q, &traces);
        let roots = isolate_real_roots(&c).unwrap();
        let total: usize = roots.iter().map(|r| r.multiplicity()).sum();
        prop_assert_eq!(total, c.dim());
        let mut distinct = traces.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(roots.len(), distinct.len());
        // Each elliptic factor contributes the real root t.
        for t in &distinct {
            prop_assert!(roots.iter().any(|r| r.interval().contains(&BigInt::from(*t).into())));
        }
    }

    #[test]
    fn angles_of_product_match_factors((q, traces) in arb_traces()) {
        let (factors, c) = product(q, &traces);
        let from_product = AngleSet::from_classes(q, &[c]).unwrap();
        let from_factors = AngleSet::from_classes(q, &factors).unwrap();
        prop_assert_eq!(from_product.s(), from_factors.s());
    }
}

#[test]
fn classification_counts() {
    let counts: Vec<usize> = FIELDS.iter().map(|&q| admissible_elliptic_traces(q).unwrap().len()).collect();
    assert_eq!(counts, vec![5, 7, 9, 9, 11, 9, 13]);
}
