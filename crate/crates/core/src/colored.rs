//! Three-colored partitions (black, red, green), their statistics, and the
//! two formulations of the family `F_r`.

use std::fmt;

use serde::Serialize;

use crate::partition::{check_r, is_gordon, partitions_up_to, Partition, PartitionError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Color {
    Black,
    Red,
    Green,
}

impl Color {
    pub fn suffix(self) -> char {
        match self {
            Color::Black => 'b',
            Color::Red => 'r',
            Color::Green => 'g',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct ColoredPartition {
    pub black: Partition,
    pub red: Partition,
    pub green: Partition,
}

impl ColoredPartition {
    pub fn new(black: Partition, red: Partition, green: Partition) -> Self {
        ColoredPartition { black, red, green }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds from `(part, color)` pairs in any order.
    pub fn from_parts(parts: &[(u32, Color)]) -> Result<Self, PartitionError> {
        let pick = |c: Color| {
            Partition::from_unsorted(
                parts
                    .iter()
                    .filter(|(_, x)| *x == c)
                    .map(|(p, _)| *p)
                    .collect(),
            )
        };
        Ok(ColoredPartition {
            black: pick(Color::Black)?,
            red: pick(Color::Red)?,
            green: pick(Color::Green)?,
        })
    }

    pub fn weight(&self) -> u32 {
        self.black.weight() + self.red.weight() + self.green.weight()
    }

    pub fn get(&self, color: Color) -> &Partition {
        match color {
            Color::Black => &self.black,
            Color::Red => &self.red,
            Color::Green => &self.green,
        }
    }

    /// Number of non-empty sub-partitions.
    pub fn color_count(&self) -> usize {
        [&self.black, &self.red, &self.green]
            .iter()
            .filter(|p| !p.is_empty())
            .count()
    }

    pub fn is_empty(&self) -> bool {
        self.color_count() == 0
    }

    pub fn stats(&self) -> ColorStats {
        let k = self.black.smallest();
        let i_k = k.and_then(|k| self.red.kth_smallest(k as usize));
        ColorStats {
            ell_b: self.black.len(),
            ell_r: self.red.len(),
            ell_g: self.green.len(),
            k,
            i_k,
            green_ones: self.green.multiplicity(1),
        }
    }
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(u32, Color)> = Vec::new();
        for c in [Color::Black, Color::Red, Color::Green] {
            terms.extend(self.get(c).parts().iter().map(|&p| (p, c)));
        }
        if terms.is_empty() {
            return write!(f, "∅");
        }
        terms.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let s: Vec<String> = terms
            .iter()
            .map(|(p, c)| format!("{p}_{}", c.suffix()))
            .collect();
        write!(f, "{}", s.join("+"))
    }
}

/// `ℓ_b, ℓ_r, ℓ_g`, the smallest black part `k`, the `k`-th smallest red part
/// `i_k` (counted with multiplicity) and `#{1_g}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ColorStats {
    pub ell_b: usize,
    pub ell_r: usize,
    pub ell_g: usize,
    pub k: Option<u32>,
    pub i_k: Option<u32>,
    pub green_ones: usize,
}

impl ColorStats {
    /// `ℓ_r ≤ k − 1`; false without black parts.
    fn few_reds(&self) -> bool {
        self.k.is_some_and(|k| self.ell_r < k as usize)
    }

    /// `k + i_k` when `ℓ_r ≥ k`.
    fn k_plus_ik(&self) -> Option<u32> {
        Some(self.k? + self.i_k?)
    }
}

/// The types of the second formulation of `F_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MemberType {
    /// Empty or a single color.
    T1,
    /// Black and green, or red and green.
    T2,
    T3a,
    T3b,
    T4a,
    T4b,
}

impl MemberType {
    pub const ALL: [MemberType; 6] = [
        MemberType::T1,
        MemberType::T2,
        MemberType::T3a,
        MemberType::T3b,
        MemberType::T4a,
        MemberType::T4b,
    ];
}

fn green_ok(lambda: &ColoredPartition, r: u32) -> bool {
    is_gordon(lambda.green.parts(), r, r)
}

/// Membership in `F_r` as stated with conditions 1, 2 and 3.
pub fn in_f_intro(lambda: &ColoredPartition, r: u32) -> Result<bool, PartitionError> {
    check_r(r)?;
    if !green_ok(lambda, r) {
        return Ok(false);
    }
    let s = lambda.stats();
    let colors = lambda.color_count();
    let has_green = !lambda.green.is_empty();
    // Condition 1.
    if colors <= 1 || (colors == 2 && has_green) {
        return Ok(true);
    }
    let rb = |s: &ColorStats| s.few_reds() || s.k_plus_ik().is_some_and(|t| t >= r);
    if colors == 2 {
        // Condition 2: black and red.
        return Ok(rb(&s));
    }
    // Condition 3: all three colors.
    if s.few_reds() {
        return Ok(true);
    }
    Ok(match s.k_plus_ik() {
        Some(t) if t >= r => ((s.ell_g - s.green_ones) as u32) < t - r + 1,
        _ => false,
    })
}

/// Whether `λ` satisfies the defining condition of one member type.
pub fn matches_type(
    lambda: &ColoredPartition,
    r: u32,
    ty: MemberType,
) -> Result<bool, PartitionError> {
    check_r(r)?;
    let (b, rd, g) = (
        !lambda.black.is_empty(),
        !lambda.red.is_empty(),
        !lambda.green.is_empty(),
    );
    let s = lambda.stats();
    let reds_large = || s.k_plus_ik().is_some_and(|t| t >= r);
    let greens_few = || {
        s.k_plus_ik()
            .is_some_and(|t| t >= r && ((s.ell_g - s.green_ones) as u32) < t - r + 1)
    };
    Ok(match ty {
        MemberType::T1 => match (b, rd, g) {
            (false, false, false) | (true, false, false) | (false, true, false) => true,
            (false, false, true) => green_ok(lambda, r),
            _ => false,
        },
        MemberType::T2 => (b ^ rd) && g && green_ok(lambda, r),
        MemberType::T3a => b && rd && !g && s.few_reds(),
        MemberType::T3b => b && rd && !g && reds_large(),
        MemberType::T4a => b && rd && g && green_ok(lambda, r) && s.few_reds(),
        MemberType::T4b => b && rd && g && green_ok(lambda, r) && greens_few(),
    })
}

/// Type of `λ` under the four-type formulation, or `None` when `λ ∉ F_r`.
pub fn classify(lambda: &ColoredPartition, r: u32) -> Result<Option<MemberType>, PartitionError> {
    for ty in MemberType::ALL {
        if matches_type(lambda, r, ty)? {
            return Ok(Some(ty));
        }
    }
    Ok(None)
}

/// Membership in `F_r` under the four-type formulation.
pub fn in_f_sec2(lambda: &ColoredPartition, r: u32) -> Result<bool, PartitionError> {
    Ok(classify(lambda, r)?.is_some())
}

/// All partitions of weight `0..=max_n`, reused across colored enumerations.
#[derive(Debug, Clone)]
pub struct PartitionCache {
    by_weight: Vec<Vec<Partition>>,
}

impl PartitionCache {
    pub fn new(max_n: u32) -> Self {
        PartitionCache {
            by_weight: partitions_up_to(max_n),
        }
    }

    pub fn max_weight(&self) -> u32 {
        self.by_weight.len() as u32 - 1
    }

    pub fn of_weight(&self, n: u32) -> &[Partition] {
        &self.by_weight[n as usize]
    }

    /// Visits every 3-colored partition of `n`, ordered by
    /// `(|black|, |red|, |green|)` and then by descending partition order.
    pub fn for_each_colored(&self, n: u32, mut f: impl FnMut(&Partition, &Partition, &Partition)) {
        assert!(n <= self.max_weight(), "weight {n} beyond cache");
        for wb in 0..=n {
            for wr in 0..=n - wb {
                let wg = n - wb - wr;
                for b in self.of_weight(wb) {
                    for r in self.of_weight(wr) {
                        for g in self.of_weight(wg) {
                            f(b, r, g);
                        }
                    }
                }
            }
        }
    }

    pub fn enumerate_colored(&self, n: u32) -> Vec<ColoredPartition> {
        let mut out = Vec::new();
        self.for_each_colored(n, |b, r, g| {
            out.push(ColoredPartition::new(b.clone(), r.clone(), g.clone()))
        });
        out
    }

    pub fn count_colored(&self, n: u32) -> u64 {
        (0..=n)
            .flat_map(|wb| (0..=n - wb).map(move |wr| (wb, wr, n - wb - wr)))
            .map(|(a, b, c)| {
                (self.of_weight(a).len() * self.of_weight(b).len() * self.of_weight(c).len()) as u64
            })
            .sum()
    }

    /// `F_r(n)` by filtering every colored partition through [`in_f_intro`].
    pub fn count_f(&self, r: u32, n: u32) -> Result<u64, PartitionError> {
        check_r(r)?;
        let mut c = 0;
        let mut scratch = ColoredPartition::empty();
        self.for_each_colored(n, |b, rd, g| {
            scratch.black.clone_from(b);
            scratch.red.clone_from(rd);
            scratch.green.clone_from(g);
            if in_f_intro(&scratch, r).expect("r checked") {
                c += 1;
            }
        });
        Ok(c)
    }

    /// Brute-force count of each member type of `F_r` at weight `n`.
    pub fn count_types(&self, r: u32, n: u32) -> Result<[u64; 6], PartitionError> {
        check_r(r)?;
        let mut c = [0u64; 6];
        let mut scratch = ColoredPartition::empty();
        self.for_each_colored(n, |b, rd, g| {
            scratch.black.clone_from(b);
            scratch.red.clone_from(rd);
            scratch.green.clone_from(g);
            if let Some(t) = classify(&scratch, r).expect("r checked") {
                c[t as usize] += 1;
            }
        });
        Ok(c)
    }

    /// Colored partitions of `n` whose green parts all equal one: part 1 in
    /// three colors, every larger part in two.
    pub fn count_target(&self, n: u32) -> u64 {
        let mut c = 0u64;
        for wg in 0..=n {
            // Green must be 1+1+...+1, exactly one such partition per weight.
            let rest = n - wg;
            for wb in 0..=rest {
                c += (self.of_weight(wb).len() * self.of_weight(rest - wb).len()) as u64;
            }
        }
        c
    }
}

pub fn enumerate_colored(n: u32) -> Vec<ColoredPartition> {
    PartitionCache::new(n).enumerate_colored(n)
}

pub fn count_f(r: u32, n: u32) -> Result<u64, PartitionError> {
    PartitionCache::new(n).count_f(r, n)
}

/// Both routes to the common value of `F_r(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TargetCount {
    pub enumerated: u64,
    pub series: u64,
}

impl TargetCount {
    pub fn agree(&self) -> bool {
        self.enumerated == self.series
    }
}

pub fn target_count(n: u32) -> TargetCount {
    let enumerated = PartitionCache::new(n).count_target(n);
    let series =
        crate::identity::as_counts(&crate::identity::target_series(n as usize))[n as usize];
    TargetCount { enumerated, series }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::*;

    fn cp(parts: &[(u32, Color)]) -> ColoredPartition {
        ColoredPartition::from_parts(parts).unwrap()
    }

    #[test]
    fn stats_of_intro_example() {
        let l = cp(&[(7, Black), (6, Red), (3, Black), (3, Red), (1, Red)]);
        assert_eq!(l.black.parts(), &[7, 3]);
        assert_eq!(l.red.parts(), &[6, 3, 1]);
        assert!(l.green.is_empty());
        let s = l.stats();
        assert_eq!((s.k, s.ell_r, s.i_k), (Some(3), 3, Some(6)));
        assert_eq!(l.to_string(), "7_b+6_r+3_b+3_r+1_r");
    }

    #[test]
    fn stats_edge_cases() {
        let s = ColoredPartition::empty().stats();
        assert_eq!(
            (s.ell_b, s.ell_r, s.ell_g, s.k, s.i_k),
            (0, 0, 0, None, None)
        );
        let s = cp(&[(1, Black), (1, Red)]).stats();
        assert_eq!((s.k, s.i_k), (Some(1), Some(1)));
        let s = cp(&[(2, Black), (5, Red)]).stats();
        assert_eq!((s.k, s.i_k), (Some(2), None));
        let s = cp(&[(1, Green), (1, Green), (4, Green)]).stats();
        assert_eq!((s.ell_g, s.green_ones), (3, 2));
    }

    #[test]
    fn membership_examples() {
        let gg = cp(&[(1, Green), (1, Green)]);
        assert!(!in_f_intro(&gg, 2).unwrap());
        assert!(!in_f_sec2(&gg, 2).unwrap());
        let br = cp(&[(1, Black), (1, Red)]);
        assert!(!in_f_intro(&br, 3).unwrap());
        assert!(in_f_intro(&br, 2).unwrap());
        for r in 2..8 {
            assert!(in_f_intro(&ColoredPartition::empty(), r).unwrap());
            assert!(in_f_sec2(&ColoredPartition::empty(), r).unwrap());
        }
        assert!(in_f_intro(&br, 1).is_err());
        assert!(classify(&br, 0).is_err());
    }

    #[test]
    fn colored_partitions_of_two() {
        let listed = [
            vec![(2, Black)],
            vec![(2, Red)],
            vec![(2, Green)],
            vec![(1, Black), (1, Black)],
            vec![(1, Black), (1, Red)],
            vec![(1, Black), (1, Green)],
            vec![(1, Red), (1, Green)],
            vec![(1, Red), (1, Red)],
            vec![(1, Green), (1, Green)],
        ];
        let mut expect: Vec<ColoredPartition> = listed.iter().map(|v| cp(v)).collect();
        let mut got = enumerate_colored(2);
        assert_eq!(got.len(), 9);
        expect.sort();
        got.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn small_f_counts() {
        assert_eq!(count_f(2, 2).unwrap(), 8);
        assert_eq!(count_f(3, 2).unwrap(), 8);
        let excluded = |r| {
            enumerate_colored(2)
                .into_iter()
                .filter(|l| !in_f_intro(l, r).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(excluded(2), vec![cp(&[(1, Green), (1, Green)])]);
        assert_eq!(excluded(3), vec![cp(&[(1, Black), (1, Red)])]);
        for r in 2..6 {
            assert_eq!(count_f(r, 0).unwrap(), 1);
        }
    }

    #[test]
    fn colored_count_matches_h_cubed() {
        let cache = PartitionCache::new(12);
        let h = crate::series::partition_series(12);
        let h3 = crate::identity::as_counts(&(&(&h * &h) * &h));
        for n in 0..=12 {
            assert_eq!(cache.count_colored(n), h3[n as usize]);
            if n <= 6 {
                assert_eq!(cache.enumerate_colored(n).len() as u64, h3[n as usize]);
            }
        }
    }

    #[test]
    fn target_examples() {
        let expect = [1, 3, 8, 18];
        for (n, &e) in expect.iter().enumerate() {
            let t = target_count(n as u32);
            assert_eq!(
                t,
                TargetCount {
                    enumerated: e,
                    series: e
                },
                "n={n}"
            );
        }
    }

    #[test]
    fn type_classification_is_exclusive() {
        let cache = PartitionCache::new(8);
        for r in 2..=4 {
            for n in 0..=8 {
                for l in cache.enumerate_colored(n) {
                    let hits = MemberType::ALL
                        .iter()
                        .filter(|&&t| matches_type(&l, r, t).unwrap())
                        .count();
                    assert!(hits <= 1, "{l} r={r}");
                    assert_eq!(hits == 1, in_f_intro(&l, r).unwrap(), "{l} r={r}");
                }
            }
        }
    }
}
