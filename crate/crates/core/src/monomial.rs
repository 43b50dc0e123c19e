//! Monomials of `S = K[x_i, y_i, z_i : i ≥ 1]` with `x_i, y_i, z_i` of weight
//! `i`, the monomial ideals `I_r` and `J_r`, and their standard monomials.
//!
//! A monomial corresponds to a 3-colored partition: `x_i` is a black part
//! `i`, `y_i` a red part and `z_i` a green part, with multiplicity equal to
//! the exponent.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::colored::{ColoredPartition, PartitionCache};
use crate::partition::{check_r, Partition, PartitionError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    X,
    Y,
    Z,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::X, Family::Y, Family::Z];

    pub fn letter(self) -> char {
        match self {
            Family::X => 'x',
            Family::Y => 'y',
            Family::Z => 'z',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'x' => Some(Family::X),
            'y' => Some(Family::Y),
            'z' => Some(Family::Z),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub family: Family,
    pub index: u32,
}

impl Variable {
    pub fn new(family: Family, index: u32) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        Variable { family, index }
    }

    pub fn x(i: u32) -> Self {
        Self::new(Family::X, i)
    }

    pub fn y(i: u32) -> Self {
        Self::new(Family::Y, i)
    }

    pub fn z(i: u32) -> Self {
        Self::new(Family::Z, i)
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse monomial `{0}`")]
pub struct ParseMonomialError(String);

/// Sparse exponent map; zero exponents are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: BTreeMap<Variable, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Variable) -> Self {
        Self::from_exponents([(v, 1)])
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in exps {
            m.mul_var(v, e);
        }
        m
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    /// Variables with their exponents in ascending variable order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Variable, u32)> + '_ {
        self.exps.iter().map(|(v, e)| (*v, *e))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.exps.iter().map(|(v, e)| v.index * e).sum()
    }

    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    pub fn mul_var(&mut self, v: Variable, e: u32) {
        if e > 0 {
            *self.exps.entry(v).or_insert(0) += e;
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (v, e) in other.iter() {
            out.mul_var(v, e);
        }
        out
    }

    /// `self / v`, or `None` when `v` does not divide.
    pub fn div_var(&self, v: Variable) -> Option<Monomial> {
        let e = self.exponent(v);
        if e == 0 {
            return None;
        }
        let mut out = self.clone();
        if e == 1 {
            out.exps.remove(&v);
        } else {
            out.exps.insert(v, e - 1);
        }
        Some(out)
    }

    /// Indices of one family, ascending, repeated by exponent.
    pub fn indices(&self, family: Family) -> Vec<u32> {
        self.iter()
            .filter(|(v, _)| v.family == family)
            .flat_map(|(v, e)| std::iter::repeat_n(v.index, e as usize))
            .collect()
    }

    pub fn to_colored(&self) -> ColoredPartition {
        let part = |f: Family| {
            let mut idx = self.indices(f);
            idx.reverse();
            Partition::new(idx).expect("indices are positive")
        };
        ColoredPartition::new(part(Family::X), part(Family::Y), part(Family::Z))
    }

    pub fn from_colored(lambda: &ColoredPartition) -> Monomial {
        let mut m = Monomial::one();
        for (family, p) in [
            (Family::X, &lambda.black),
            (Family::Y, &lambda.red),
            (Family::Z, &lambda.green),
        ] {
            for &i in p.parts() {
                m.mul_var(Variable::new(family, i), 1);
            }
        }
        m
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.iter() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = ParseMonomialError;

    /// Parses `1` or factors like `x2^2*y2*z3` joined by `*`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseMonomialError(s.to_string());
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        let mut m = Monomial::one();
        for factor in s.split('*') {
            let factor = factor.trim();
            let mut chars = factor.chars();
            let family = chars.next().and_then(Family::from_letter).ok_or_else(err)?;
            let rest = chars.as_str();
            let (idx, exp) = match rest.split_once('^') {
                Some((i, e)) => (i, e.parse::<u32>().map_err(|_| err())?),
                None => (rest, 1),
            };
            let index = idx.parse::<u32>().map_err(|_| err())?;
            if index == 0 {
                return Err(err());
            }
            m.mul_var(Variable::new(family, index), exp);
        }
        Ok(m)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Membership in `I_r = (z_i^a z_{i+1}^{r−a} : i ≥ 1, 1 ≤ a ≤ r)`.
pub fn in_i(m: &Monomial, r: u32) -> Result<bool, PartitionError> {
    check_r(r)?;
    Ok(z_in_i(m, r))
}

fn z_in_i(m: &Monomial, r: u32) -> bool {
    m.iter()
        .filter(|(v, _)| v.family == Family::Z)
        .any(|(v, e)| {
            let next = m.exponent(Variable::z(v.index + 1));
            e + next >= r
        })
}

/// Membership in `J_r`.
///
/// Besides `I_r`, the generators pair a black `x_k` with `k` red variables
/// `y_{i_1} … y_{i_k}`. For a fixed `k` the best red choice is always the
/// `k` smallest red indices: it minimises `i_k`, which helps the
/// `k + i_k ≤ r − 1` generators directly, and when those fail
/// (`k + i_k ≥ r` even for the minimum) it also minimises the number
/// `k + i_k − r + 1` of green variables of index at least 2 that the
/// remaining generators require.
pub fn in_j(m: &Monomial, r: u32) -> Result<bool, PartitionError> {
    check_r(r)?;
    if z_in_i(m, r) {
        return Ok(true);
    }
    let reds = m.indices(Family::Y);
    let big_greens = m.indices(Family::Z).iter().filter(|&&j| j >= 2).count() as u32;
    for k in m.indices(Family::X) {
        let Some(&i_k) = reds.get(k as usize - 1) else {
            continue;
        };
        let t = k + i_k;
        if t < r || big_greens > t - r {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All monomials of weight `n`, in colored enumeration order.
pub fn monomials_of_weight(cache: &PartitionCache, n: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    cache.for_each_colored(n, |b, r, g| {
        out.push(Monomial::from_colored(&ColoredPartition::new(
            b.clone(),
            r.clone(),
            g.clone(),
        )));
    });
    out
}

/// Monomials of weight `0..=max_n` outside `J_r`, per weight.
pub fn standard_monomials(r: u32, max_n: u32) -> Result<Vec<Vec<Monomial>>, PartitionError> {
    check_r(r)?;
    let cache = PartitionCache::new(max_n);
    (0..=max_n)
        .map(|n| {
            let mut keep = Vec::new();
            for m in monomials_of_weight(&cache, n) {
                if !in_j(&m, r)? {
                    keep.push(m);
                }
            }
            Ok(keep)
        })
        .collect()
}

/// Hilbert function of `S / J_r` for weights `0..=max_n`.
pub fn hilbert_j(r: u32, max_n: u32) -> Result<Vec<u64>, PartitionError> {
    Ok(standard_monomials(r, max_n)?
        .iter()
        .map(|v| v.len() as u64)
        .collect())
}

/// Hilbert function of `K[z_1, z_2, …] / (I_r, z_{j_1} ⋯ z_{j_{ℓ+1}} : j ≥ 2)`.
pub fn hilbert_gl_quotient(r: u32, ell: u32, max_n: u32) -> Result<Vec<u64>, PartitionError> {
    check_r(r)?;
    let mut out = Vec::with_capacity(max_n as usize + 1);
    for n in 0..=max_n {
        let mut c = 0u64;
        crate::partition::for_each_partition(n, n, |p| {
            let m = Monomial::from_exponents(p.iter().map(|&i| (Variable::z(i), 1)));
            let big = p.iter().filter(|&&i| i >= 2).count() as u32;
            if big <= ell && !z_in_i(&m, r) {
                c += 1;
            }
        });
        out.push(c);
    }
    Ok(out)
}
