use proptest::prelude::*;
use splitgenus::exactnum::rational;
use splitgenus::lpsolve::{
    enumerate_vectors, ilp_maximize_with_stats, lp_maximize, solve_auto, verify_certificate, LpStatus,
};
use splitgenus::places::inequality_system;
use splitgenus::weil::{admissible_elliptic_traces, elliptic_classes};

/// Nonempty subsets of the elliptic traces over `F_2`.
fn arb_f2_subset() -> impl Strategy<Value = Vec<i64>> {
    (1u32..32).prop_map(|mask| {
        let ts = admissible_elliptic_traces(2).unwrap();
        ts.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| *t).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(31))]

    #[test]
    fn lp_ilp_enumeration_agree(traces in arb_f2_subset()) {
        let classes = elliptic_classes(2, &traces, true).unwrap();
        let auto = solve_auto(2, &classes, 16, true).unwrap();
        let lp = auto.lp.value.clone().unwrap();
        let ilp = auto.ilp.unwrap().value.unwrap();
        prop_assert!(ilp <= lp);
        let g: u64 = rational::floor(&ilp).try_into().unwrap();
        prop_assert!(!enumerate_vectors(&auto.system, g).is_empty());
        prop_assert!(enumerate_vectors(&auto.system, g + 1).is_empty());
        let cert = verify_certificate(&auto.system, &auto.lp.dual).unwrap();
        prop_assert_eq!(cert.genus_cap, rational::floor(&lp));
        // One degree less does not bound.
        if auto.degree > 1 {
            prop_assert_eq!(lp_maximize(&auto.system.truncated(auto.degree - 1)).status, LpStatus::Unbounded);
        }
    }
}

#[test]
fn f3_per_degree_values() {
    let classes = elliptic_classes(3, &[-3, -2, -1, 0, 1, 2, 3], true).unwrap();
    let full = inequality_system(3, &classes, 12).unwrap();
    let lp = lp_maximize(&full);
    assert_eq!(lp.value, Some(rational::int(2091)));
    let (ilp, stats) = ilp_maximize_with_stats(&full).unwrap();
    assert_eq!(ilp.value, Some(rational::int(2085)));
    assert!(stats.nodes > 0);
    assert!(full.satisfied_by(&ilp.primal));
}
