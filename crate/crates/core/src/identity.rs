//! Closed-form and summation-form q-series for the partition families, and a
//! coefficientwise verifier over a catalogue of identities.
//!
//! Sums over Durfee side tuples `∂_1 ≥ … ≥ ∂_{r−1} ≥ 0` share one cache,
//! [`DurfeeSums`]. Every summand used here has q-valuation at least
//! `Σ(∂_j² − ∂_j)`, so the cache keeps exactly the tuples where that bound is
//! at most the truncation order; all other tuples are invisible.
//!
//! Infinite sums over `k` (smallest black part, `k`-th smallest red part,
//! `ℓ`) are cut where the valuation of the summand exceeds the order; each
//! builder states its bound next to the loop.

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::partition::{self, check_r, check_ri, PartitionError};
use crate::series::{
    inv_pochhammer, partition_series, pochhammer, prod_inv_tail, InvPochhammerTable, SeriesError,
    TruncatedSeries,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error(transparent)]
    Parameter(#[from] PartitionError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// One side tuple with the product `1/((q)_{∂1−∂2} … (q)_{∂_{r−1}})`.
#[derive(Debug, Clone)]
struct SideTerm {
    sides: Vec<u32>,
    square_sum: usize,
    side_sum: usize,
    denominator_inv: TruncatedSeries,
}

/// Cached Durfee-tuple summands for a fixed `r` and order.
#[derive(Debug, Clone)]
pub struct DurfeeSums {
    r: u32,
    order: usize,
    terms: Vec<SideTerm>,
}

impl DurfeeSums {
    pub fn new(r: u32, order: usize) -> Result<Self, IdentityError> {
        check_r(r)?;
        let table = InvPochhammerTable::new(order);
        let mut terms = Vec::new();
        let mut sides = Vec::with_capacity(r as usize - 1);
        collect_tuples(
            r as usize - 1,
            order,
            u32::MAX,
            0,
            &mut sides,
            &mut |s: &[u32]| {
                let mut den = table.get(0).clone();
                for (j, &d) in s.iter().enumerate() {
                    let next = s.get(j + 1).copied().unwrap_or(0);
                    den = &den * table.get((d - next) as usize);
                }
                terms.push(SideTerm {
                    sides: s.to_vec(),
                    square_sum: s.iter().map(|&d| (d * d) as usize).sum(),
                    side_sum: s.iter().map(|&d| d as usize).sum(),
                    denominator_inv: den,
                });
            },
        );
        Ok(DurfeeSums { r, order, terms })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of cached tuples.
    pub fn tuple_count(&self) -> usize {
        self.terms.len()
    }

    /// Largest `Σ∂` among tuples that can still contribute.
    pub fn max_side_sum(&self) -> usize {
        self.terms.iter().map(|t| t.side_sum).max().unwrap_or(0)
    }

    fn d_summand(&self, t: &SideTerm, rectangles: usize) -> Option<TruncatedSeries> {
        let shave: usize = t.sides[..rectangles].iter().map(|&d| d as usize).sum();
        let exponent = t.square_sum - shave;
        if exponent > self.order {
            return None;
        }
        let mut s = t.denominator_inv.shift(exponent);
        if rectangles > 0 {
            s.mul_binomial_factor(t.sides[rectangles - 1] as usize);
        }
        Some(s)
    }

    fn sum_where(&self, rectangles: usize, accept: impl Fn(&SideTerm) -> bool) -> TruncatedSeries {
        let mut acc = TruncatedSeries::zero(self.order);
        for t in self.terms.iter().filter(|t| accept(t)) {
            if let Some(s) = self.d_summand(t, rectangles) {
                acc = &acc + &s;
            }
        }
        acc
    }

    /// Generating series of `D_{r,i}(n)`.
    pub fn series_d(&self, i: u32) -> Result<TruncatedSeries, IdentityError> {
        check_ri(self.r, i)?;
        Ok(self.sum_where((self.r - i) as usize, |_| true))
    }

    /// Fixed-length form: tuples with `Σ∂ = m + r − i`, which is
    /// `Σ_n b_{r,i}(m, n) q^n`.
    pub fn fixed_length(&self, i: u32, m: u32) -> Result<TruncatedSeries, IdentityError> {
        check_ri(self.r, i)?;
        let target = (m + self.r - i) as usize;
        Ok(self.sum_where((self.r - i) as usize, |t| t.side_sum == target))
    }

    /// `X_m`: the `i = r` summands with `Σ∂ = m`.
    pub fn series_x(&self, m: u32) -> TruncatedSeries {
        self.sum_where(0, |t| t.side_sum == m as usize)
    }

    /// `G_{r,ℓ}` as the bounded `X` sum minus the `Σ∂ = ℓ + r` correction.
    pub fn series_gl(&self, ell: u32) -> TruncatedSeries {
        let top = (ell + self.r) as usize;
        let first = self.sum_where(0, |t| t.side_sum < top);
        let mut correction = TruncatedSeries::zero(self.order);
        for t in self.terms.iter().filter(|t| t.side_sum == top) {
            let exponent = t.square_sum - top;
            if exponent > self.order {
                continue;
            }
            let mut s = t.denominator_inv.shift(exponent);
            s.mul_binomial_factor(top);
            correction = &correction + &s;
        }
        &first - &correction
    }
}

/// Enumerates non-increasing tuples of the given length with
/// `Σ(∂² − ∂) ≤ budget`.
fn collect_tuples(
    len: usize,
    budget: usize,
    max_side: u32,
    used: usize,
    buf: &mut Vec<u32>,
    f: &mut dyn FnMut(&[u32]),
) {
    if buf.len() == len {
        f(buf);
        return;
    }
    let mut d = 0u32;
    loop {
        if d > max_side {
            break;
        }
        let cost = (d as usize) * (d as usize).saturating_sub(1);
        if used + cost > budget {
            break;
        }
        buf.push(d);
        collect_tuples(len, budget, d, used + cost, buf, f);
        buf.pop();
        d += 1;
    }
}

pub fn series_d(r: u32, i: u32, order: usize) -> Result<TruncatedSeries, IdentityError> {
    DurfeeSums::new(r, order)?.series_d(i)
}

/// `G_r`, the generating series of `B_{r,r}(n)`.
pub fn series_g(r: u32, order: usize) -> Result<TruncatedSeries, IdentityError> {
    series_d(r, r, order)
}

pub fn series_x(m: u32, r: u32, order: usize) -> Result<TruncatedSeries, IdentityError> {
    Ok(DurfeeSums::new(r, order)?.series_x(m))
}

pub fn series_gl(r: u32, ell: u32, order: usize) -> Result<TruncatedSeries, IdentityError> {
    Ok(DurfeeSums::new(r, order)?.series_gl(ell))
}

pub fn fixed_length_series(
    r: u32,
    i: u32,
    m: u32,
    order: usize,
) -> Result<TruncatedSeries, IdentityError> {
    DurfeeSums::new(r, order)?.fixed_length(i, m)
}

/// `H² / (q)_1`: part 1 in three colors, larger parts in two.
pub fn target_series(order: usize) -> TruncatedSeries {
    let h = partition_series(order);
    &(&h * &h) * &inv_pochhammer(1, order)
}

/// The product `1/(1−q³) · Π_{i≥2} 1/(1−q^i)` in the form printed for the
/// arc HP-series.
pub fn printed_rdp_series(order: usize) -> TruncatedSeries {
    let mut s = prod_inv_tail(2, order);
    s.mul_geometric(3);
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SComponent {
    S1,
    S2,
    S3a,
    S3b,
    S3,
    S4a,
    S4b,
    Total,
}

impl SComponent {
    pub const ALL: [SComponent; 8] = [
        SComponent::S1,
        SComponent::S2,
        SComponent::S3a,
        SComponent::S3b,
        SComponent::S3,
        SComponent::S4a,
        SComponent::S4b,
        SComponent::Total,
    ];
}

/// The pieces `H`, `G_r` and `1/(q)_1` every closed form is built from.
struct Ingredients {
    one: TruncatedSeries,
    h: TruncatedSeries,
    g: TruncatedSeries,
    q1_inv: TruncatedSeries,
    poch_r1: TruncatedSeries,
}

impl Ingredients {
    fn new(r: u32, order: usize) -> Result<Self, IdentityError> {
        Ok(Ingredients {
            one: TruncatedSeries::one(order),
            h: partition_series(order),
            g: series_g(r, order)?,
            q1_inv: inv_pochhammer(1, order),
            poch_r1: pochhammer(r as usize - 1, order),
        })
    }

    fn s3a(&self) -> TruncatedSeries {
        let n = self.one.order();
        let two_q_minus_one = TruncatedSeries::from_i64s(n, &[-1, 2]);
        &(&(&self.h * &two_q_minus_one) * &self.q1_inv) + &self.one
    }

    fn s3b(&self) -> TruncatedSeries {
        let h2 = &self.h * &self.h;
        &(&(&h2 * &self.poch_r1) * &self.q1_inv) - &(&self.h * &self.q1_inv)
    }

    fn component(&self, c: SComponent) -> TruncatedSeries {
        let one = &self.one;
        let h_1 = &self.h - one;
        let g_1 = &self.g - one;
        match c {
            SComponent::S1 => &(one + &(&h_1 + &h_1)) + &g_1,
            SComponent::S2 => {
                let p = &h_1 * &g_1;
                &p + &p
            }
            SComponent::S3a => self.s3a(),
            SComponent::S3b => self.s3b(),
            SComponent::S3 => {
                let h2 = &self.h * &self.h;
                let tail = &(&h2 * &self.poch_r1) * &self.q1_inv;
                &(one - &(&self.h + &self.h)) + &tail
            }
            SComponent::S4a => &g_1 * &self.s3a(),
            SComponent::S4b => {
                let h2 = &self.h * &self.h;
                let hg = &self.h * &self.g;
                &(&(&h2 - &hg) * &self.q1_inv) - &self.s3b()
            }
            SComponent::Total => [
                SComponent::S1,
                SComponent::S2,
                SComponent::S3,
                SComponent::S4a,
                SComponent::S4b,
            ]
            .into_iter()
            .fold(TruncatedSeries::zero(one.order()), |acc, c| {
                &acc + &self.component(c)
            }),
        }
    }
}

/// Closed form of one type component of `F_r`.
pub fn series_s(
    component: SComponent,
    r: u32,
    order: usize,
) -> Result<TruncatedSeries, IdentityError> {
    Ok(Ingredients::new(r, order)?.component(component))
}

/// All components at once, sharing `H` and `G_r`.
pub fn series_s_all(
    r: u32,
    order: usize,
) -> Result<Vec<(SComponent, TruncatedSeries)>, IdentityError> {
    let ing = Ingredients::new(r, order)?;
    Ok(SComponent::ALL
        .iter()
        .map(|&c| (c, ing.component(c)))
        .collect())
}

/// `q^k / Π_{j≥k}(1−q^j)`: partitions whose smallest part is `k`.
pub fn smallest_part_series(k: usize, order: usize) -> TruncatedSeries {
    prod_inv_tail(k, order).shift(k)
}

/// `H q^{k+i−1} (q)_{k+i−2} / (q)_{k−1}`: partitions of length at least `k`
/// whose `k`-th smallest part is `i`.
pub fn kth_smallest_series(k: usize, i: usize, order: usize) -> TruncatedSeries {
    let mut s = partition_series(order).shift(k + i - 1);
    for j in k..=k + i - 2 {
        s.mul_binomial_factor(j);
    }
    s
}

/// `1/(q)_k − 1`: non-empty partitions with at most `k` parts.
pub fn bounded_length_series(k: usize, order: usize) -> TruncatedSeries {
    &inv_pochhammer(k, order) - &TruncatedSeries::one(order)
}

/// Type 3.a as the sum over the smallest black part `k ≥ 2` with
/// `1 ≤ ℓ_r ≤ k−1`. The summand has valuation `k`.
pub fn type3a_sum(order: usize) -> TruncatedSeries {
    let one = TruncatedSeries::one(order);
    let mut acc = TruncatedSeries::zero(order);
    for k in 2..=order {
        let red = &inv_pochhammer(k - 1, order) - &one;
        acc = &acc + &(&smallest_part_series(k, order) * &red);
    }
    acc
}

/// Visits `(k, i_k)` with `k + i_k ≥ r`, `i_k ≥ 1`, and summand valuation
/// `2k + i_k − 1 ≤ order`.
fn for_each_black_red(r: u32, order: usize, mut f: impl FnMut(usize, usize)) {
    for k in 1..=order {
        let i_min = (r as usize).saturating_sub(k).max(1);
        for i in i_min.. {
            if 2 * k + i - 1 > order {
                break;
            }
            f(k, i);
        }
    }
}

/// Type 3.b as the double sum over `k` and `i_k ≥ max(1, r−k)`.
pub fn type3b_sum(r: u32, order: usize) -> Result<TruncatedSeries, IdentityError> {
    check_r(r)?;
    let mut acc = TruncatedSeries::zero(order);
    for_each_black_red(r, order, |k, i| {
        let term = &smallest_part_series(k, order) * &kth_smallest_series(k, i, order);
        acc = &acc + &term;
    });
    Ok(acc)
}

/// Type 4.a as a sum: the type 3.a sum times the non-empty green factor.
pub fn type4a_sum(r: u32, order: usize) -> Result<TruncatedSeries, IdentityError> {
    let g1 = &series_g(r, order)? - &TruncatedSeries::one(order);
    Ok(&type3a_sum(order) * &g1)
}

/// Type 4.b as the double sum with green factor `G_{r, k+i_k−r} − 1`.
pub fn type4b_sum(r: u32, order: usize) -> Result<TruncatedSeries, IdentityError> {
    let sums = DurfeeSums::new(r, order)?;
    let one = TruncatedSeries::one(order);
    let mut gl_cache: Vec<Option<TruncatedSeries>> = vec![None; order + 1];
    let mut acc = TruncatedSeries::zero(order);
    for_each_black_red(r, order, |k, i| {
        let ell = k + i - r as usize;
        let gl = gl_cache[ell].get_or_insert_with(|| sums.series_gl(ell as u32));
        let green = &*gl - &one;
        let term = &(&smallest_part_series(k, order) * &kth_smallest_series(k, i, order)) * &green;
        acc = &acc + &term;
    });
    Ok(acc)
}

/// `Σ_{k≥m} q^k (q)_{k−1}`; the summand has valuation `k`.
pub fn telescoping_sum(m: usize, order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(order);
    for k in m.max(1)..=order {
        acc = &acc + &pochhammer(k - 1, order).shift(k);
    }
    acc
}

/// Both sides of the `X_m` summation identity:
/// `Σ_{ℓ≥0} q^{r+ℓ}(q)_{r+ℓ−1} Σ_{m≤ℓ+r−1} X_m` and
/// `1 − G_r/H + Σ_{m≥r} X_m (q)_m`.
pub fn x_sum_sides(
    r: u32,
    order: usize,
) -> Result<(TruncatedSeries, TruncatedSeries), IdentityError> {
    let sums = DurfeeSums::new(r, order)?;
    let r = r as usize;
    // X_m vanishes at this order once m exceeds the largest cached side sum.
    let m_max = sums.max_side_sum().max(r);
    let xs: Vec<TruncatedSeries> = (0..=m_max + order)
        .map(|m| sums.series_x(m as u32))
        .collect();
    let mut lhs = TruncatedSeries::zero(order);
    let mut partial = TruncatedSeries::zero(order);
    for x in &xs[..r - 1] {
        partial = &partial + x;
    }
    // Summand for ℓ has valuation r + ℓ.
    for ell in 0..=order.saturating_sub(r) {
        partial = &partial + &xs[ell + r - 1];
        let weight = pochhammer(r + ell - 1, order).shift(r + ell);
        lhs = &lhs + &(&weight * &partial);
    }
    let h = partition_series(order);
    let g = sums.series_d(sums.r())?;
    let mut rhs = &TruncatedSeries::one(order) - &(&g * &h.invert()?);
    for (m, x) in xs.iter().enumerate().skip(r) {
        rhs = &rhs + &(x * &pochhammer(m, order));
    }
    Ok((lhs, rhs))
}

/// Brute-force generating series from a per-weight counter.
pub fn brute_series(
    order: usize,
    mut count: impl FnMut(u32) -> Result<u64, PartitionError>,
) -> Result<TruncatedSeries, IdentityError> {
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        coeffs.push(BigInt::from(count(n as u32)?));
    }
    Ok(TruncatedSeries::from_coeffs(order, coeffs))
}

fn count_partitions_where(n: u32, pred: impl Fn(&[u32]) -> bool) -> u64 {
    let mut c = 0;
    partition::for_each_partition(n, n, |p| {
        if pred(p) {
            c += 1;
        }
    });
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    /// Both sides must agree; a divergence is a failure.
    Equal,
    /// Reported only; never a failure.
    Informational,
}

#[derive(Debug, Clone, Copy)]
pub struct CatalogueEntry {
    pub name: &'static str,
    pub expectation: Expectation,
    /// Parameters the identity reads.
    pub uses: &'static [&'static str],
    pub summary: &'static str,
}

pub const CATALOGUE: &[CatalogueEntry] = &[
    CatalogueEntry {
        name: "bounded_length",
        expectation: Expectation::Equal,
        uses: &["k"],
        summary: "non-empty partitions with at most k parts vs 1/(q)_k - 1",
    },
    CatalogueEntry {
        name: "smallest_part",
        expectation: Expectation::Equal,
        uses: &["k"],
        summary: "partitions with smallest part k vs q^k / prod_{j>=k}(1-q^j)",
    },
    CatalogueEntry {
        name: "lemma_H",
        expectation: Expectation::Equal,
        uses: &["m"],
        summary: "sum_{k>=m} q^k (q)_{k-1} vs (q)_{m-1} - 1/H",
    },
    CatalogueEntry {
        name: "kth_smallest",
        expectation: Expectation::Equal,
        uses: &["k", "i"],
        summary: "partitions whose k-th smallest part is i vs H q^{k+i-1} (q)_{k+i-2}/(q)_{k-1}",
    },
    CatalogueEntry {
        name: "fixed_length",
        expectation: Expectation::Equal,
        uses: &["r", "i", "m"],
        summary: "b_{r,i}(m, n) vs the Durfee sum with side sum m + r - i",
    },
    CatalogueEntry {
        name: "gordon_bounded",
        expectation: Expectation::Equal,
        uses: &["r", "l"],
        summary: "G_{r,l}(n) by enumeration vs the two-term Durfee formula",
    },
    CatalogueEntry {
        name: "x_sum",
        expectation: Expectation::Equal,
        uses: &["r"],
        summary: "sum_l q^{r+l}(q)_{r+l-1} sum_{m<r+l} X_m vs 1 - G_r/H + sum_{m>=r} X_m (q)_m",
    },
    CatalogueEntry {
        name: "type3",
        expectation: Expectation::Equal,
        uses: &["r"],
        summary: "type 3 black/red sums vs 1 - 2H + H^2 (q)_{r-1}/(q)_1",
    },
    CatalogueEntry {
        name: "type4a",
        expectation: Expectation::Equal,
        uses: &["r"],
        summary: "type 4.a sum vs (G_r - 1) S3a",
    },
    CatalogueEntry {
        name: "type4b",
        expectation: Expectation::Equal,
        uses: &["r"],
        summary: "type 4.b sum vs (H^2 - H G_r)/(q)_1 - S3b",
    },
    CatalogueEntry {
        name: "theorem_main",
        expectation: Expectation::Equal,
        uses: &["r"],
        summary: "S1 + S2 + S3 + S4a + S4b vs H^2/(q)_1",
    },
    CatalogueEntry {
        name: "rdp_printed_form",
        expectation: Expectation::Informational,
        uses: &["r"],
        summary: "printed product 1/(1-q^3) prod_{i>=2} 1/(1-q^i) vs H^2/(q)_1",
    },
];

pub fn catalogue_entry(name: &str) -> Option<&'static CatalogueEntry> {
    CATALOGUE.iter().find(|e| e.name == name)
}

/// Raw parameters; missing values fall back to `r = 2`, `i = r`, `m = 1`,
/// `k = 1`, `l = 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IdentityParams {
    pub r: Option<u32>,
    pub i: Option<u32>,
    pub m: Option<u32>,
    pub k: Option<u32>,
    pub l: Option<u32>,
}

/// Parameters after defaults, restricted to what the identity reads.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ResolvedParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
}

impl IdentityParams {
    fn resolve(&self, uses: &[&str]) -> ResolvedParams {
        let r = self.r.unwrap_or(2);
        let pick = |key: &str, v: u32| uses.contains(&key).then_some(v);
        ResolvedParams {
            r: pick("r", r),
            i: pick("i", self.i.unwrap_or(r)),
            m: pick("m", self.m.unwrap_or(1)),
            k: pick("k", self.k.unwrap_or(1)),
            l: pick("l", self.l.unwrap_or(0)),
        }
    }
}

fn bigint_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub exponent: usize,
    #[serde(serialize_with = "bigint_string")]
    pub lhs: BigInt,
    #[serde(serialize_with = "bigint_string")]
    pub rhs: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub params: ResolvedParams,
    pub order: usize,
    pub expectation: Expectation,
    pub equal: bool,
    pub first_divergence: Option<Divergence>,
}

impl IdentityReport {
    /// Compares two series of the same order coefficient by coefficient.
    pub fn compare(
        name: &str,
        params: ResolvedParams,
        expectation: Expectation,
        lhs: &TruncatedSeries,
        rhs: &TruncatedSeries,
    ) -> Result<Self, IdentityError> {
        if lhs.order() != rhs.order() {
            return Err(SeriesError::OrderMismatch {
                left: lhs.order(),
                right: rhs.order(),
            }
            .into());
        }
        let first_divergence = lhs
            .coeffs()
            .iter()
            .zip(rhs.coeffs())
            .position(|(a, b)| a != b)
            .map(|n| Divergence {
                exponent: n,
                lhs: lhs.coeff(n).clone(),
                rhs: rhs.coeff(n).clone(),
            });
        Ok(IdentityReport {
            name: name.to_string(),
            params,
            order: lhs.order(),
            expectation,
            equal: first_divergence.is_none(),
            first_divergence,
        })
    }

    /// False only for an unexpected divergence.
    pub fn passed(&self) -> bool {
        self.equal || self.expectation == Expectation::Informational
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (N={}): ", self.name, self.order)?;
        match (&self.first_divergence, self.expectation) {
            (None, _) => write!(f, "equal"),
            (Some(d), e) => write!(
                f,
                "{} at q^{} ({} vs {})",
                if e == Expectation::Informational {
                    "diverges (informational)"
                } else {
                    "DIVERGES"
                },
                d.exponent,
                d.lhs,
                d.rhs
            ),
        }
    }
}

/// Runs one catalogued identity at truncation order `order`.
pub fn verify(
    name: &str,
    params: &IdentityParams,
    order: usize,
) -> Result<IdentityReport, IdentityError> {
    let entry =
        catalogue_entry(name).ok_or_else(|| IdentityError::UnknownIdentity(name.to_string()))?;
    let p = params.resolve(entry.uses);
    let n = order;
    let (lhs, rhs) = match name {
        "bounded_length" => {
            let k = p.k.unwrap_or(1) as usize;
            let lhs = brute_series(n, |w| {
                Ok(count_partitions_where(w, |q| !q.is_empty() && q.len() <= k))
            })?;
            (lhs, bounded_length_series(k, n))
        }
        "smallest_part" => {
            let k = p.k.unwrap_or(1);
            if k == 0 {
                return Err(PartitionError::Parameter("k must be at least 1".into()).into());
            }
            let lhs = brute_series(n, |w| {
                Ok(count_partitions_where(w, |q| q.last() == Some(&k)))
            })?;
            (lhs, smallest_part_series(k as usize, n))
        }
        "lemma_H" => {
            let m = p.m.unwrap_or(1) as usize;
            if m == 0 {
                return Err(PartitionError::Parameter("m must be at least 1".into()).into());
            }
            let rhs = &pochhammer(m - 1, n) - &partition_series(n).invert()?;
            (telescoping_sum(m, n), rhs)
        }
        "kth_smallest" => {
            let (k, i) = (p.k.unwrap_or(1), p.i.unwrap_or(1));
            if k == 0 || i == 0 {
                return Err(PartitionError::Parameter("k and i must be at least 1".into()).into());
            }
            let lhs = brute_series(n, |w| {
                Ok(count_partitions_where(w, |q| {
                    q.len() >= k as usize && q[q.len() - k as usize] == i
                }))
            })?;
            (lhs, kth_smallest_series(k as usize, i as usize, n))
        }
        "fixed_length" => {
            let (r, i, m) = (p.r.unwrap_or(2), p.i.unwrap_or(2), p.m.unwrap_or(1));
            let lhs = brute_series(n, |w| partition::count_b(r, i, m, w))?;
            (lhs, fixed_length_series(r, i, m, n)?)
        }
        "gordon_bounded" => {
            let (r, l) = (p.r.unwrap_or(2), p.l.unwrap_or(0));
            let lhs = brute_series(n, |w| partition::count_g(r, l, w))?;
            (lhs, series_gl(r, l, n)?)
        }
        "x_sum" => x_sum_sides(p.r.unwrap_or(2), n)?,
        "type3" => {
            let r = p.r.unwrap_or(2);
            let lhs = &type3a_sum(n) + &type3b_sum(r, n)?;
            (lhs, series_s(SComponent::S3, r, n)?)
        }
        "type4a" => {
            let r = p.r.unwrap_or(2);
            (type4a_sum(r, n)?, series_s(SComponent::S4a, r, n)?)
        }
        "type4b" => {
            let r = p.r.unwrap_or(2);
            (type4b_sum(r, n)?, series_s(SComponent::S4b, r, n)?)
        }
        "theorem_main" => {
            let r = p.r.unwrap_or(2);
            (series_s(SComponent::Total, r, n)?, target_series(n))
        }
        "rdp_printed_form" => {
            check_r(p.r.unwrap_or(2))?;
            (printed_rdp_series(n), target_series(n))
        }
        _ => unreachable!("catalogue entry without a verifier"),
    };
    IdentityReport::compare(name, p, entry.expectation, &lhs, &rhs)
}

/// Runs the whole catalogue in catalogue order.
pub fn verify_all(
    params: &IdentityParams,
    order: usize,
) -> Result<Vec<IdentityReport>, IdentityError> {
    use rayon::prelude::*;
    CATALOGUE
        .par_iter()
        .map(|e| verify(e.name, params, order))
        .collect()
}

/// Coefficients of a series as `u64` counts; panics on a negative entry.
pub fn as_counts(s: &TruncatedSeries) -> Vec<u64> {
    use num_traits::ToPrimitive;
    s.coeffs()
        .iter()
        .map(|c| c.to_u64().expect("non-negative count"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{b_table, count_b_total, count_g, d_table};

    fn counts(s: &TruncatedSeries) -> Vec<i128> {
        s.to_i128()
    }

    #[test]
    fn d_series_constant_term() {
        for r in 2..6 {
            for i in 1..=r {
                assert_eq!(counts(&series_d(r, i, 5).unwrap())[0], 1, "r={r} i={i}");
            }
        }
    }

    #[test]
    fn d_series_matches_gordon_enumeration() {
        let n = 20;
        for r in 2..=4 {
            for i in 1..=r {
                let s = series_d(r, i, n).unwrap();
                for w in 0..=n {
                    assert_eq!(
                        counts(&s)[w] as u64,
                        count_b_total(r, i, w as u32).unwrap(),
                        "r={r} i={i} n={w}"
                    );
                }
            }
        }
        assert_eq!(&counts(&series_d(2, 2, 10).unwrap())[..5], &[1, 1, 1, 1, 2]);
    }

    #[test]
    fn g_series_values() {
        let g = series_g(2, 10).unwrap();
        assert_eq!(counts(&g), vec![1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6]);
        let g3 = series_g(3, 15).unwrap();
        for w in 0..=15 {
            assert_eq!(
                counts(&g3)[w] as u64,
                count_b_total(3, 3, w as u32).unwrap()
            );
        }
    }

    #[test]
    fn x_series_matches_durfee_counts() {
        let n = 24;
        for r in 2..=4 {
            let sums = DurfeeSums::new(r, n).unwrap();
            assert_eq!(sums.series_x(0), TruncatedSeries::one(n));
            let d = d_table(r, r, n as u32).unwrap();
            for m in 0..=6 {
                let x: Vec<u64> = counts(&sums.series_x(m))
                    .iter()
                    .map(|&c| c as u64)
                    .collect();
                assert_eq!(x, d[m as usize], "r={r} m={m}");
            }
        }
    }

    #[test]
    fn x_partial_sum_is_inverse_pochhammer() {
        let n = 40;
        for r in 2..=5 {
            let sums = DurfeeSums::new(r, n).unwrap();
            let total = (0..r).fold(TruncatedSeries::zero(n), |acc, m| &acc + &sums.series_x(m));
            assert_eq!(total, inv_pochhammer(r as usize - 1, n), "r={r}");
        }
    }

    #[test]
    fn fixed_length_matches_b_table() {
        let n = 24;
        for r in 2..=4 {
            for i in 1..=r {
                let sums = DurfeeSums::new(r, n).unwrap();
                let t = b_table(r, i, n as u32).unwrap();
                for m in 0..=8 {
                    let s = sums.fixed_length(i, m).unwrap();
                    let expect: Vec<i128> = (0..=n).map(|w| t[m as usize][w] as i128).collect();
                    assert_eq!(counts(&s), expect, "r={r} i={i} m={m}");
                }
            }
        }
    }

    #[test]
    fn gl_series_matches_enumeration() {
        assert_eq!(counts(&series_gl(3, 2, 8).unwrap())[0], 1);
        for (r, l, n) in [(2, 0, 12), (4, 3, 20), (3, 1, 15)] {
            let s = series_gl(r, l, n).unwrap();
            for w in 0..=n {
                assert_eq!(
                    counts(&s)[w] as u64,
                    count_g(r, l, w as u32).unwrap(),
                    "r={r} l={l} n={w}"
                );
            }
        }
    }

    #[test]
    fn s_component_examples() {
        for r in 2..=6 {
            let total = series_s(SComponent::Total, r, 50).unwrap();
            assert_eq!(total, target_series(50), "r={r}");
        }
        assert_eq!(counts(&series_s(SComponent::S2, 2, 6).unwrap())[2], 2);
        assert_eq!(counts(&series_s(SComponent::S1, 3, 6).unwrap())[0], 1);
        let target = counts(&target_series(10));
        assert_eq!(&target[..5], &[1, 3, 8, 18, 38]);
    }

    #[test]
    fn s3_splits_into_a_and_b() {
        for r in 2..=5 {
            let all = series_s_all(r, 30).unwrap();
            let get = |c: SComponent| all.iter().find(|(x, _)| *x == c).unwrap().1.clone();
            assert_eq!(
                &get(SComponent::S3a) + &get(SComponent::S3b),
                get(SComponent::S3)
            );
        }
    }

    #[test]
    fn counting_series_are_nonnegative() {
        for r in 2..=5 {
            for (c, s) in series_s_all(r, 40).unwrap() {
                assert!(s.is_nonnegative(), "{c:?} r={r}");
            }
            assert!(series_g(r, 40).unwrap().is_nonnegative());
            for i in 1..=r {
                assert!(series_d(r, i, 40).unwrap().is_nonnegative());
            }
            for l in 0..5 {
                assert!(series_gl(r, l, 40).unwrap().is_nonnegative());
            }
        }
    }

    #[test]
    fn lemma_h_hand_expansion() {
        // q(q)_0 + q^2(q)_1 + q^3(q)_2 + q^4(q)_3 + q^5(q)_4 up to q^5.
        let lhs = telescoping_sum(1, 5);
        assert_eq!(counts(&lhs), vec![0, 1, 1, 0, 0, -1]);
        let report = verify(
            "lemma_H",
            &IdentityParams {
                m: Some(1),
                ..Default::default()
            },
            5,
        )
        .unwrap();
        assert!(report.equal);
    }

    #[test]
    fn printed_form_diverges_at_q1() {
        let rep = verify(
            "rdp_printed_form",
            &IdentityParams {
                r: Some(2),
                ..Default::default()
            },
            10,
        )
        .unwrap();
        assert!(!rep.equal);
        assert!(rep.passed());
        let d = rep.first_divergence.unwrap();
        assert_eq!(
            (d.exponent, d.lhs, d.rhs),
            (1, BigInt::from(0), BigInt::from(3))
        );
    }

    #[test]
    fn unknown_identity_rejected() {
        assert_eq!(
            verify("nope", &IdentityParams::default(), 5),
            Err(IdentityError::UnknownIdentity("nope".into()))
        );
    }

    #[test]
    fn whole_catalogue_holds_at_moderate_order() {
        for r in 2..=4 {
            let params = IdentityParams {
                r: Some(r),
                m: Some(2),
                k: Some(2),
                l: Some(1),
                i: None,
            };
            for rep in verify_all(&params, 24).unwrap() {
                assert!(rep.passed(), "{rep}");
                if rep.expectation == Expectation::Equal {
                    assert!(rep.equal);
                }
            }
        }
    }

    #[test]
    fn report_invariant_equal_iff_no_divergence() {
        let a = TruncatedSeries::from_i64s(3, &[1, 2]);
        let b = TruncatedSeries::from_i64s(3, &[1, 2, 0, 1]);
        let r = IdentityReport::compare("x", ResolvedParams::default(), Expectation::Equal, &a, &b)
            .unwrap();
        assert!(!r.equal && r.first_divergence.as_ref().unwrap().exponent == 3);
        let r = IdentityReport::compare("x", ResolvedParams::default(), Expectation::Equal, &a, &a)
            .unwrap();
        assert!(r.equal && r.first_divergence.is_none());
    }
}
