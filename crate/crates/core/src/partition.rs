//! Ordinary partitions and the brute-force oracles built on them: Gordon's
//! difference families, the residue families, Durfee decompositions and the
//! bounded families used to check the series identities.
//!
//! Enumeration is by recursive descent with a max-part bound and yields
//! partitions in lexicographically descending order.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be positive and non-increasing: {0:?}")]
    NotAPartition(Vec<u32>),
    #[error("invalid parameters: {0}")]
    Parameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition { parts })
        } else {
            Err(PartitionError::NotAPartition(parts))
        }
    }

    /// Sorts the parts into non-increasing order. Zero parts are rejected.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, value: u32) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.parts.last().copied()
    }

    /// The `k`-th smallest part, counted with multiplicity (1-based).
    pub fn kth_smallest(&self, k: usize) -> Option<u32> {
        if k == 0 || k > self.parts.len() {
            None
        } else {
            Some(self.parts[self.parts.len() - k])
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join("+"))
    }
}

/// Calls `f` on every partition of `n` whose parts are at most `max_part`,
/// in lexicographically descending order.
pub fn for_each_partition(n: u32, max_part: u32, mut f: impl FnMut(&[u32])) {
    fn go(rem: u32, max: u32, buf: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if rem == 0 {
            f(buf);
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            buf.push(p);
            go(rem - p, p, buf, f);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(n as usize);
    go(n, max_part, &mut buf, &mut f);
}

pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, n, |p| out.push(Partition { parts: p.to_vec() }));
    out
}

/// p(n) by enumeration.
pub fn partition_count(n: u32) -> u64 {
    let mut c = 0;
    for_each_partition(n, n, |_| c += 1);
    c
}

/// All partitions of weight `0..=max_n`, indexed by weight.
pub fn partitions_up_to(max_n: u32) -> Vec<Vec<Partition>> {
    (0..=max_n).map(enumerate_partitions).collect()
}

pub(crate) fn check_r(r: u32) -> Result<(), PartitionError> {
    if r < 2 {
        Err(PartitionError::Parameter(format!(
            "r must be at least 2, got {r}"
        )))
    } else {
        Ok(())
    }
}

pub(crate) fn check_ri(r: u32, i: u32) -> Result<(), PartitionError> {
    check_r(r)?;
    if i < 1 || i > r {
        Err(PartitionError::Parameter(format!(
            "i must lie in 1..={r}, got {i}"
        )))
    } else {
        Ok(())
    }
}

/// `λ_j − λ_{j+r−1} ≥ 2` for every valid `j`.
pub fn satisfies_difference(parts: &[u32], r: u32) -> bool {
    let w = (r - 1) as usize;
    parts.len() <= w || parts.windows(w + 1).all(|win| win[0] >= win[w] + 2)
}

/// Membership in `B_{r,i}`: the difference condition plus at most `i−1` ones.
pub fn is_gordon(parts: &[u32], r: u32, i: u32) -> bool {
    let ones = parts.iter().rev().take_while(|&&p| p == 1).count();
    ones < i as usize && satisfies_difference(parts, r)
}

/// Visits the partitions of `n` satisfying the `r` difference condition,
/// pruning as soon as a prefix violates it.
pub fn for_each_difference_partition(n: u32, r: u32, mut f: impl FnMut(&[u32])) {
    fn go(rem: u32, max: u32, w: usize, buf: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if rem == 0 {
            f(buf);
            return;
        }
        let mut top = max.min(rem);
        if buf.len() >= w {
            let anchor = buf[buf.len() - w];
            if anchor < 2 {
                return;
            }
            top = top.min(anchor - 2);
        }
        for p in (1..=top).rev() {
            buf.push(p);
            go(rem - p, p, w, buf, f);
            buf.pop();
        }
    }
    let mut buf = Vec::new();
    go(n, n, (r - 1) as usize, &mut buf, &mut f);
}

/// `B_{r,i}(n)`.
pub fn enumerate_b(r: u32, i: u32, n: u32) -> Result<Vec<Partition>, PartitionError> {
    check_ri(r, i)?;
    let mut out = Vec::new();
    for_each_difference_partition(n, r, |p| {
        if is_gordon(p, r, i) {
            out.push(Partition { parts: p.to_vec() });
        }
    });
    Ok(out)
}

pub fn count_b_total(r: u32, i: u32, n: u32) -> Result<u64, PartitionError> {
    check_ri(r, i)?;
    let mut c = 0;
    for_each_difference_partition(n, r, |p| {
        if is_gordon(p, r, i) {
            c += 1;
        }
    });
    Ok(c)
}

/// `A_{r,i}(n)`: partitions of `n` with no part congruent to `0, ±i` mod `2r+1`.
pub fn count_a(r: u32, i: u32, n: u32) -> Result<u64, PartitionError> {
    check_ri(r, i)?;
    let modulus = 2 * r + 1;
    let allowed = |p: u32| {
        let res = p % modulus;
        res != 0 && res != i && res != modulus - i
    };
    let mut c = 0;
    for_each_partition(n, n, |p| {
        if p.iter().all(|&x| allowed(x)) {
            c += 1;
        }
    });
    Ok(c)
}

/// `b_{r,i}(m, n)`: members of `B_{r,i}(n)` with exactly `m` parts.
/// `i = 0` is accepted and gives zero.
pub fn count_b(r: u32, i: u32, m: u32, n: u32) -> Result<u64, PartitionError> {
    check_r(r)?;
    if i == 0 {
        return Ok(0);
    }
    check_ri(r, i)?;
    let mut c = 0;
    for_each_difference_partition(n, r, |p| {
        if p.len() == m as usize && is_gordon(p, r, i) {
            c += 1;
        }
    });
    Ok(c)
}

/// Table `t[m][n] = b_{r,i}(m, n)` for `m, n ≤ max_n`.
pub fn b_table(r: u32, i: u32, max_n: u32) -> Result<Vec<Vec<u64>>, PartitionError> {
    check_ri(r, i)?;
    let size = max_n as usize + 1;
    let mut t = vec![vec![0u64; size]; size];
    for n in 0..=max_n {
        for_each_difference_partition(n, r, |p| {
            if is_gordon(p, r, i) {
                t[p.len()][n as usize] += 1;
            }
        });
    }
    Ok(t)
}

/// Successive Durfee decomposition: `r−i` horizontal rectangles of `d` rows
/// by `d+1` columns followed by `i−1` squares.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DurfeeProfile {
    sides: Vec<u32>,
    rectangles: usize,
}

impl DurfeeProfile {
    /// Largest side of each shape, non-increasing, length `r−1`.
    pub fn sides(&self) -> &[u32] {
        &self.sides
    }

    pub fn rectangle_count(&self) -> usize {
        self.rectangles
    }

    pub fn square_count(&self) -> usize {
        self.sides.len() - self.rectangles
    }

    /// Rows covered by the shapes: `(∂_1−1)+…+(∂_{r−i}−1)+∂_{r−i+1}+…+∂_{r−1}`.
    pub fn covered_rows(&self) -> u32 {
        let (rects, squares) = self.sides.split_at(self.rectangles);
        rects.iter().map(|s| s - 1).sum::<u32>() + squares.iter().sum::<u32>()
    }
}

/// Greedy successive decomposition of `λ`. A rectangle with zero rows has
/// side 1 and is always available, so the first `r−i` shapes always exist;
/// `λ` belongs to `D_{r,i}` iff the shapes exhaust every row.
pub fn durfee_profile(
    lambda: &Partition,
    r: u32,
    i: u32,
) -> Result<Option<DurfeeProfile>, PartitionError> {
    check_ri(r, i)?;
    let parts = lambda.parts();
    let rectangles = (r - i) as usize;
    let mut sides = Vec::with_capacity(r as usize - 1);
    let mut pos = 0usize;
    for shape in 0..(r as usize - 1) {
        let extra = u32::from(shape < rectangles);
        let mut d = 0usize;
        while pos + d < parts.len() && parts[pos + d] >= d as u32 + 1 + extra {
            d += 1;
        }
        sides.push(d as u32 + extra);
        pos += d;
    }
    Ok((pos == parts.len()).then_some(DurfeeProfile { sides, rectangles }))
}

/// `d_{r,i}(m, n)`: members of `D_{r,i}(n)` with exactly `m` parts.
pub fn count_d(r: u32, i: u32, m: u32, n: u32) -> Result<u64, PartitionError> {
    check_ri(r, i)?;
    let mut c = 0;
    for lambda in enumerate_partitions(n) {
        if lambda.len() == m as usize && durfee_profile(&lambda, r, i)?.is_some() {
            c += 1;
        }
    }
    Ok(c)
}

/// Table `t[m][n] = d_{r,i}(m, n)` for `m, n ≤ max_n`.
pub fn d_table(r: u32, i: u32, max_n: u32) -> Result<Vec<Vec<u64>>, PartitionError> {
    check_ri(r, i)?;
    let size = max_n as usize + 1;
    let mut t = vec![vec![0u64; size]; size];
    for n in 0..=max_n {
        for lambda in enumerate_partitions(n) {
            if durfee_profile(&lambda, r, i)?.is_some() {
                t[lambda.len()][n as usize] += 1;
            }
        }
    }
    Ok(t)
}

/// Number of parts different from one.
pub fn non_one_parts(parts: &[u32]) -> usize {
    parts.iter().filter(|&&p| p != 1).count()
}

/// `G_{r,ℓ}(n)`: members of `B_{r,r}(n)` with at most `ℓ` parts different from one.
pub fn count_g(r: u32, ell: u32, n: u32) -> Result<u64, PartitionError> {
    check_r(r)?;
    let mut c = 0;
    for_each_difference_partition(n, r, |p| {
        if is_gordon(p, r, r) && non_one_parts(p) <= ell as usize {
            c += 1;
        }
    });
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn filter_count(n: u32, pred: impl Fn(&[u32]) -> bool) -> u64 {
        enumerate_partitions(n)
            .iter()
            .filter(|p| pred(p.parts()))
            .count() as u64
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let four: Vec<Vec<u32>> = enumerate_partitions(4)
            .into_iter()
            .map(|p| p.parts)
            .collect();
        assert_eq!(
            four,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
        assert_eq!(partition_count(10), 42);
        assert_eq!(partition_count(0), 1);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let all = enumerate_partitions(12);
        assert!(all.windows(2).all(|w| w[0] > w[1]));
        assert!(all.iter().all(|p| p.weight() == 12));
    }

    #[test]
    fn constructor_validation() {
        assert!(Partition::new(vec![3, 1, 1]).is_ok());
        assert!(Partition::new(vec![1, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(
            Partition::from_unsorted(vec![1, 3, 2]).unwrap().parts(),
            &[3, 2, 1]
        );
        let p = Partition::new(vec![6, 3, 1]).unwrap();
        assert_eq!(p.kth_smallest(1), Some(1));
        assert_eq!(p.kth_smallest(3), Some(6));
        assert_eq!(p.kth_smallest(4), None);
    }

    #[test]
    fn b_examples() {
        assert_eq!(count_b_total(2, 2, 4).unwrap(), 2);
        assert_eq!(count_b_total(2, 1, 4).unwrap(), 1);
        for r in 2..6 {
            for i in 1..=r {
                assert_eq!(count_b_total(r, i, 0).unwrap(), 1);
            }
        }
        let b = enumerate_b(2, 2, 4).unwrap();
        assert_eq!(
            b,
            vec![
                Partition::new(vec![4]).unwrap(),
                Partition::new(vec![3, 1]).unwrap()
            ]
        );
    }

    #[test]
    fn a_examples() {
        assert_eq!(count_a(2, 2, 4).unwrap(), 2);
        assert_eq!(count_a(2, 1, 7).unwrap(), count_b_total(2, 1, 7).unwrap());
        assert_eq!(count_a(3, 3, 0).unwrap(), 1);
    }

    #[test]
    fn parameter_errors() {
        assert!(count_b_total(1, 1, 3).is_err());
        assert!(count_b_total(3, 0, 3).is_err());
        assert!(count_b_total(3, 4, 3).is_err());
        assert!(count_a(2, 3, 3).is_err());
        assert!(count_g(1, 0, 3).is_err());
        assert!(durfee_profile(&Partition::empty(), 3, 4).is_err());
        assert_eq!(count_b(3, 0, 2, 5).unwrap(), 0);
    }

    #[test]
    fn pruned_enumeration_matches_filter() {
        for r in 2..=5 {
            for i in 1..=r {
                for n in 0..=18 {
                    let oracle = filter_count(n, |p| {
                        let ones = p.iter().filter(|&&x| x == 1).count();
                        let w = (r - 1) as usize;
                        let diff = (0..p.len()).all(|j| j + w >= p.len() || p[j] - p[j + w] >= 2);
                        diff && ones <= (i - 1) as usize
                    });
                    assert_eq!(count_b_total(r, i, n).unwrap(), oracle, "r={r} i={i} n={n}");
                }
            }
        }
    }

    #[test]
    fn b_length_examples() {
        assert_eq!(count_b(2, 2, 1, 4).unwrap(), 1);
        assert_eq!(count_b(2, 2, 2, 4).unwrap(), 1);
        assert_eq!(count_b(4, 4, 0, 0).unwrap(), 1);
        let t = b_table(3, 2, 15).unwrap();
        for n in 0..=15u32 {
            let total: u64 = (0..=15).map(|m| t[m][n as usize]).sum();
            assert_eq!(total, count_b_total(3, 2, n).unwrap());
            for m in 0..=15u32 {
                assert_eq!(t[m as usize][n as usize], count_b(3, 2, m, n).unwrap());
            }
        }
    }

    #[test]
    fn durfee_figure_example() {
        let lambda = Partition::new(vec![7, 7, 6, 4, 3, 3, 2]).unwrap();
        let prof = durfee_profile(&lambda, 4, 2)
            .unwrap()
            .expect("member of D_{4,2}");
        assert_eq!(prof.sides(), &[4, 3, 2]);
        assert_eq!(prof.rectangle_count(), 2);
        assert_eq!(prof.square_count(), 1);
        assert_eq!(prof.covered_rows(), 7);
        assert!(durfee_profile(&lambda, 6, 4).unwrap().is_some());
        // Two rectangles and no square cannot absorb the last rows.
        assert!(durfee_profile(&lambda, 3, 1).unwrap().is_none());
    }

    #[test]
    fn durfee_empty_partition() {
        for r in 2..6 {
            let p = durfee_profile(&Partition::empty(), r, r).unwrap().unwrap();
            assert!(p.sides().iter().all(|&s| s == 0));
            for i in 1..r {
                let p = durfee_profile(&Partition::empty(), r, i).unwrap().unwrap();
                let (rects, squares) = p.sides().split_at((r - i) as usize);
                assert!(rects.iter().all(|&s| s == 1));
                assert!(squares.iter().all(|&s| s == 0));
            }
        }
    }

    #[test]
    fn durfee_profile_is_non_increasing_and_covers_length() {
        for n in 0..=16 {
            for lambda in enumerate_partitions(n) {
                for r in 2..=5 {
                    for i in 1..=r {
                        if let Some(p) = durfee_profile(&lambda, r, i).unwrap() {
                            assert_eq!(p.sides().len(), (r - 1) as usize);
                            assert!(p.sides().windows(2).all(|w| w[0] >= w[1]));
                            assert_eq!(p.covered_rows() as usize, lambda.len());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn short_partitions_have_r_minus_one_squares() {
        for r in 2..=5 {
            for n in 0..=14 {
                for lambda in enumerate_partitions(n) {
                    if lambda.len() <= (r - 1) as usize {
                        assert!(
                            durfee_profile(&lambda, r, r).unwrap().is_some(),
                            "{lambda} r={r}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn g_examples() {
        for r in 2..5 {
            for l in 0..4 {
                assert_eq!(count_g(r, l, 0).unwrap(), 1);
            }
        }
        assert_eq!(count_g(2, 0, 3).unwrap(), 0);
        assert_eq!(count_g(2, 0, 1).unwrap(), 1);
        // B_{3,3}(3) = {3, 2+1}: both have exactly one part other than 1.
        assert_eq!(count_g(3, 1, 3).unwrap(), 2);
        assert_eq!(count_g(3, 0, 3).unwrap(), 0);
    }

    #[test]
    fn g_monotone_and_stabilises() {
        for r in 2..=4 {
            for n in 0..=16 {
                let total = count_b_total(r, r, n).unwrap();
                let mut prev = 0;
                for l in 0..=n {
                    let g = count_g(r, l, n).unwrap();
                    assert!(g >= prev);
                    prev = g;
                }
                assert_eq!(prev, total);
            }
        }
    }
}
