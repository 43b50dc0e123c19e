//! Per-type brute-force counts of F_r against the S-series, one component at
//! a time.

use arcpart::colored::{MemberType, PartitionCache};
use arcpart::identity::{as_counts, series_g, series_s, smallest_part_series, SComponent};
use arcpart::series::{inv_pochhammer, TruncatedSeries};

const N: u32 = 14;

fn component_for(ty: MemberType) -> SComponent {
    match ty {
        MemberType::T1 => SComponent::S1,
        MemberType::T2 => SComponent::S2,
        MemberType::T3a => SComponent::S3a,
        MemberType::T3b => SComponent::S3b,
        MemberType::T4a => SComponent::S4a,
        MemberType::T4b => SComponent::S4b,
    }
}

#[test]
fn type_counts_match_s_components() {
    let cache = PartitionCache::new(N);
    for r in 2..=5 {
        let series: Vec<Vec<u64>> = MemberType::ALL
            .iter()
            .map(|&t| as_counts(&series_s(component_for(t), r, N as usize).unwrap()))
            .collect();
        for n in 0..=N {
            let brute = cache.count_types(r, n).unwrap();
            for (t, ty) in MemberType::ALL.iter().enumerate() {
                assert_eq!(brute[t], series[t][n as usize], "r={r} n={n} {ty:?}");
            }
        }
    }
}

/// Type 4.a with the red factor `1/(q)_k − 1` (at most `k` reds) instead of
/// `1/(q)_{k−1} − 1` overcounts.
#[test]
fn type4a_needs_k_minus_one_reds() {
    let order = N as usize;
    let one = TruncatedSeries::one(order);
    let cache = PartitionCache::new(N);
    for r in 2..=4 {
        let green = &series_g(r, order).unwrap() - &one;
        let mut wide = TruncatedSeries::zero(order);
        for k in 2..=order {
            let red = &inv_pochhammer(k, order) - &one;
            wide = &wide + &(&smallest_part_series(k, order) * &red);
        }
        let wide = as_counts(&(&wide * &green));
        let brute: Vec<u64> = (0..=N)
            .map(|n| cache.count_types(r, n).unwrap()[MemberType::T4a as usize])
            .collect();
        assert_ne!(wide, brute, "r={r}");
        let first = (0..=order).find(|&n| wide[n] != brute[n]).unwrap();
        assert!(wide[first] > brute[first]);
    }
}
