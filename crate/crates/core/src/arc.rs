//! Arc equations of `h_r = z^r − xy` for arcs through the origin and the
//! weight-graded initial ideal of the ideal they generate.
//!
//! For `γ(t) = (x(t), y(t), z(t))` with `x(t) = Σ_{j≥1} x_j t^j` (and the same
//! for `y`, `z`), `H̄_i` is the coefficient of `t^i` in `z(t)^r − x(t)y(t)`.
//! Every `H̄_i` is weighted homogeneous of weight `i`, so the ideal
//! `𝔞 = (H̄_i)` is graded and its weight-`n` piece is spanned by the products
//! `m · H̄_j` with `m` a monomial of weight `n − j`. Each piece is reduced to
//! echelon form independently with exact integer arithmetic.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::colored::PartitionCache;
use crate::identity::{as_counts, target_series};
use crate::monomial::{in_j, monomials_of_weight, Family, Monomial, Variable};
use crate::partition::{check_r, PartitionError};

pub const DEFAULT_WEIGHT_CAP: u32 = 12;

#[derive(Debug, Error)]
pub enum ArcError {
    #[error(transparent)]
    Parameter(#[from] PartitionError),
    #[error("weight {requested} exceeds the cap {cap}")]
    WeightCap { requested: u32, cap: u32 },
    #[error("invalid monomial order: {0}")]
    Order(String),
}

/// Weighted homogeneous polynomial with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcPolynomial {
    weight: u32,
    terms: BTreeMap<Monomial, BigRational>,
}

impl ArcPolynomial {
    pub fn zero(weight: u32) -> Self {
        ArcPolynomial {
            weight,
            terms: BTreeMap::new(),
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Adds `c · m`; panics if `m` has the wrong weight.
    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        assert_eq!(m.weight(), self.weight, "term {m} has the wrong weight");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.weight);
        }
        ArcPolynomial {
            weight: self.weight,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        ArcPolynomial {
            weight: self.weight + m.weight(),
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.weight + other.weight);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    /// The derivation with `D(x_i) = x_{i+1}`, `D(y_i) = y_{i+1}`,
    /// `D(z_i) = z_{i+1}`, extended by the Leibniz rule. Raises weight by one.
    pub fn derivation(&self) -> Self {
        let mut out = Self::zero(self.weight + 1);
        for (m, c) in &self.terms {
            for (v, e) in m.iter() {
                let mut t = m.div_var(v).expect("variable divides its monomial");
                t.mul_var(Variable::new(v.family, v.index + 1), 1);
                out.add_term(t, c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        out
    }
}

impl fmt::Display for ArcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let (sign, abs) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            match (n, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `x(t) = Σ x_j t^j`.
    #[default]
    Plain,
    /// `x(t) = Σ x_j t^j / j!`, the coordinates in which `D` is `d/dt`.
    Adapted,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Plain => "plain",
            Mode::Adapted => "adapted",
        })
    }
}

fn arc_series(family: Family, max_n: u32, mode: Mode) -> Vec<ArcPolynomial> {
    let mut factorial = BigInt::one();
    let mut out = vec![ArcPolynomial::zero(0)];
    for j in 1..=max_n {
        factorial *= j;
        let c = match mode {
            Mode::Plain => BigRational::one(),
            Mode::Adapted => BigRational::new(BigInt::one(), factorial.clone()),
        };
        let mut p = ArcPolynomial::zero(j);
        p.add_term(Monomial::var(Variable::new(family, j)), c);
        out.push(p);
    }
    out
}

fn truncated_product(a: &[ArcPolynomial], b: &[ArcPolynomial]) -> Vec<ArcPolynomial> {
    let max_n = a.len().min(b.len());
    (0..max_n)
        .map(|n| {
            let mut acc = ArcPolynomial::zero(n as u32);
            for k in 0..=n {
                for (m, c) in a[k].mul(&b[n - k]).terms {
                    acc.add_term(m, c);
                }
            }
            acc
        })
        .collect()
}

/// `H̄_2, …, H̄_N` in weight order; empty for `N < 2`.
pub fn arc_equations(r: u32, max_n: u32, mode: Mode) -> Result<Vec<ArcPolynomial>, ArcError> {
    check_r(r)?;
    let x = arc_series(Family::X, max_n, mode);
    let y = arc_series(Family::Y, max_n, mode);
    let z = arc_series(Family::Z, max_n, mode);
    let mut zr = z.clone();
    for _ in 1..r {
        zr = truncated_product(&zr, &z);
    }
    let xy = truncated_product(&x, &y);
    Ok((2..=max_n as usize).map(|i| zr[i].sub(&xy[i])).collect())
}

/// The products `m · H̄_j` spanning the weight-`n` piece of the ideal, in
/// generator order and then monomial enumeration order.
pub fn weight_piece_basis(
    gens: &[ArcPolynomial],
    n: u32,
    cache: &PartitionCache,
) -> Vec<ArcPolynomial> {
    let mut out = Vec::new();
    for g in gens.iter().filter(|g| g.weight() <= n) {
        for m in monomials_of_weight(cache, n - g.weight()) {
            out.push(g.mul_monomial(&m));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexDirection {
    /// `v_{i+1} > v_i` within a family.
    Higher,
    /// `v_i > v_{i+1}` within a family.
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    Revlex,
    Lex,
}

/// Weighted order: total weight first, then lex or revlex with respect to a
/// variable order that ranks families by `families` (largest first) and
/// refines by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    families: [Family; 3],
    index_dir: IndexDirection,
    tie_break: TieBreak,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder {
            families: [Family::Z, Family::Y, Family::X],
            index_dir: IndexDirection::Higher,
            tie_break: TieBreak::Revlex,
        }
    }
}

const PERMUTATIONS: [[Family; 3]; 6] = [
    [Family::Z, Family::Y, Family::X],
    [Family::Z, Family::X, Family::Y],
    [Family::Y, Family::Z, Family::X],
    [Family::Y, Family::X, Family::Z],
    [Family::X, Family::Z, Family::Y],
    [Family::X, Family::Y, Family::Z],
];

impl MonomialOrder {
    pub fn new(
        families: [Family; 3],
        index_dir: IndexDirection,
        tie_break: TieBreak,
    ) -> Result<Self, ArcError> {
        let distinct: BTreeSet<Family> = families.iter().copied().collect();
        if distinct.len() != 3 {
            return Err(ArcError::Order(format!(
                "{families:?} is not a permutation of x, y, z"
            )));
        }
        Ok(MonomialOrder {
            families,
            index_dir,
            tie_break,
        })
    }

    /// Parses `zyx` or `z>y>x` (largest family first).
    pub fn parse_families(s: &str) -> Result<[Family; 3], ArcError> {
        let letters: Vec<char> = s
            .chars()
            .filter(|c| *c != '>' && !c.is_whitespace())
            .collect();
        let fams: Option<Vec<Family>> = letters.iter().map(|&c| Family::from_letter(c)).collect();
        match fams.as_deref() {
            Some(&[a, b, c]) if a != b && b != c && a != c => Ok([a, b, c]),
            _ => Err(ArcError::Order(format!("bad family order `{s}`"))),
        }
    }

    pub fn families(&self) -> [Family; 3] {
        self.families
    }

    pub fn index_dir(&self) -> IndexDirection {
        self.index_dir
    }

    pub fn tie_break(&self) -> TieBreak {
        self.tie_break
    }

    /// The twelve orders sharing one tie-break style.
    pub fn builtin(tie_break: TieBreak) -> Vec<MonomialOrder> {
        let mut out = Vec::with_capacity(12);
        for families in PERMUTATIONS {
            for index_dir in [IndexDirection::Higher, IndexDirection::Lower] {
                out.push(MonomialOrder {
                    families,
                    index_dir,
                    tie_break,
                });
            }
        }
        out
    }

    /// Both tie-break styles, 24 orders.
    pub fn all() -> Vec<MonomialOrder> {
        let mut out = Self::builtin(TieBreak::Revlex);
        out.extend(Self::builtin(TieBreak::Lex));
        out
    }

    pub fn label(&self) -> String {
        let fams: Vec<String> = self
            .families
            .iter()
            .map(|f| f.letter().to_string())
            .collect();
        let dir = match self.index_dir {
            IndexDirection::Higher => "higher",
            IndexDirection::Lower => "lower",
        };
        let tb = match self.tie_break {
            TieBreak::Revlex => "revlex",
            TieBreak::Lex => "lex",
        };
        format!("{}/{dir}/{tb}", fams.join(">"))
    }

    fn key(&self, v: Variable) -> (u8, u32) {
        let rank = 2 - self
            .families
            .iter()
            .position(|&f| f == v.family)
            .expect("permutation") as u8;
        let idx = match self.index_dir {
            IndexDirection::Higher => v.index,
            IndexDirection::Lower => u32::MAX - v.index,
        };
        (rank, idx)
    }

    pub fn compare_variables(&self, a: Variable, b: Variable) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let by_weight = a.weight().cmp(&b.weight());
        if by_weight != Ordering::Equal {
            return by_weight;
        }
        let mut vars: Vec<Variable> = a.iter().chain(b.iter()).map(|(v, _)| v).collect();
        vars.sort_by_key(|&v| self.key(v));
        vars.dedup();
        match self.tie_break {
            TieBreak::Lex => {
                for &v in vars.iter().rev() {
                    let c = a.exponent(v).cmp(&b.exponent(v));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
            }
            TieBreak::Revlex => {
                for &v in &vars {
                    let c = b.exponent(v).cmp(&a.exponent(v));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
            }
        }
        Ordering::Equal
    }

    /// Leading monomial of a nonzero polynomial.
    pub fn leading(&self, p: &ArcPolynomial) -> Option<Monomial> {
        p.terms().keys().max_by(|a, b| self.compare(a, b)).cloned()
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for MonomialOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Sparse integer row; entries sorted by column, column 0 the largest monomial.
type Row = Vec<(u32, BigInt)>;

fn normalize(row: &mut Row) {
    let mut g = BigInt::zero();
    for (_, c) in row.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, c)| c.is_negative()) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for (_, c) in row.iter_mut() {
            *c /= &g;
        }
    }
}

/// `a · row − b · pivot` where the leading entries cancel.
fn eliminate(row: &Row, pivot: &Row) -> Row {
    let (lr, lp) = (&row[0].1, &pivot[0].1);
    let g = lr.gcd(lp);
    let a = lp / &g;
    let b = lr / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(u32::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(u32::MAX, |e| e.0);
        match ci.cmp(&cj) {
            Ordering::Less => {
                out.push((ci, &a * &row[i].1));
                i += 1;
            }
            Ordering::Greater => {
                out.push((cj, -(&b * &pivot[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = &a * &row[i].1 - &b * &pivot[j].1;
                if !v.is_zero() {
                    out.push((ci, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    normalize(&mut out);
    out
}

/// The weight-`n` piece of the ideal in echelon form with respect to an order.
#[derive(Debug, Clone)]
pub struct WeightPiece {
    weight: u32,
    columns: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    pivots: Vec<Option<Row>>,
    generators: usize,
}

impl WeightPiece {
    pub fn build(
        gens: &[ArcPolynomial],
        n: u32,
        order: &MonomialOrder,
        cache: &PartitionCache,
    ) -> Self {
        let mut columns = monomials_of_weight(cache, n);
        columns.sort_by(|a, b| order.compare(b, a));
        let index: HashMap<Monomial, u32> = columns
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        let mut piece = WeightPiece {
            weight: n,
            pivots: vec![None; columns.len()],
            columns,
            index,
            generators: 0,
        };
        let mut rows: Vec<Row> = weight_piece_basis(gens, n, cache)
            .iter()
            .map(|p| piece.to_row(p))
            .collect();
        piece.generators = rows.len();
        // Short rows first keeps intermediate coefficients small; the final
        // leading set does not depend on the processing order.
        rows.sort_by_key(|r| r.len());
        for row in rows {
            piece.insert(row);
        }
        piece
    }

    fn to_row(&self, p: &ArcPolynomial) -> Row {
        let lcm = p
            .terms()
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut row: Row = p
            .terms()
            .iter()
            .map(|(m, c)| (self.index[m], c.numer() * (&lcm / c.denom())))
            .collect();
        row.sort_by_key(|e| e.0);
        normalize(&mut row);
        row
    }

    /// Top-reduces `row`; returns the remainder, empty iff `row` is in the span.
    fn reduce(&self, mut row: Row) -> Row {
        while let Some(&(lead, _)) = row.first() {
            match &self.pivots[lead as usize] {
                Some(p) => row = eliminate(&row, p),
                None => break,
            }
        }
        row
    }

    fn insert(&mut self, row: Row) {
        let row = self.reduce(row);
        if let Some(&(lead, _)) = row.first() {
            self.pivots[lead as usize] = Some(row);
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn monomial_count(&self) -> usize {
        self.columns.len()
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn ideal_dim(&self) -> usize {
        self.pivots.iter().filter(|p| p.is_some()).count()
    }

    pub fn quotient_dim(&self) -> usize {
        self.monomial_count() - self.ideal_dim()
    }

    /// Weight-`n` monomials of the initial ideal, largest first.
    pub fn leading(&self) -> Vec<Monomial> {
        self.columns
            .iter()
            .zip(&self.pivots)
            .filter(|(_, p)| p.is_some())
            .map(|(m, _)| m.clone())
            .collect()
    }

    /// Whether `p` (of this weight) lies in the piece.
    pub fn contains(&self, p: &ArcPolynomial) -> bool {
        assert_eq!(p.weight(), self.weight, "polynomial of the wrong weight");
        p.is_zero() || self.reduce(self.to_row(p)).is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabConfig {
    pub r: u32,
    pub max_weight: u32,
    pub order: MonomialOrder,
    pub mode: Mode,
    pub weight_cap: u32,
}

impl LabConfig {
    pub fn new(r: u32, max_weight: u32) -> Self {
        LabConfig {
            r,
            max_weight,
            order: MonomialOrder::default(),
            mode: Mode::Plain,
            weight_cap: DEFAULT_WEIGHT_CAP,
        }
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    fn validate(&self) -> Result<(), ArcError> {
        check_r(self.r)?;
        if self.max_weight > self.weight_cap {
            return Err(ArcError::WeightCap {
                requested: self.max_weight,
                cap: self.weight_cap,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub weight: u32,
    pub monomials: usize,
    pub generators: usize,
    pub ideal_dim: usize,
    pub quotient_dim: usize,
    pub expected_quotient_dim: u64,
    pub hilbert_ok: bool,
    pub leading: Vec<Monomial>,
    /// `None` unless compared with `J_r`.
    pub agrees_with_j: Option<bool>,
    /// In the initial ideal but not in `J_r`.
    pub only_initial: Vec<Monomial>,
    /// In `J_r` but not in the initial ideal.
    pub only_j: Vec<Monomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InitialIdealReport {
    pub r: u32,
    pub max_weight: u32,
    pub order: MonomialOrder,
    pub mode: Mode,
    pub weights: Vec<WeightReport>,
}

impl InitialIdealReport {
    pub fn hilbert_ok(&self) -> bool {
        self.weights.iter().all(|w| w.hilbert_ok)
    }

    pub fn quotient_dims(&self) -> Vec<usize> {
        self.weights.iter().map(|w| w.quotient_dim).collect()
    }

    /// `None` if no comparison was made.
    pub fn agrees_with_j(&self) -> Option<bool> {
        self.weights
            .iter()
            .map(|w| w.agrees_with_j)
            .try_fold(true, |acc, a| a.map(|a| acc && a))
    }

    pub fn divergent_weights(&self) -> Vec<u32> {
        self.weights
            .iter()
            .filter(|w| w.agrees_with_j == Some(false))
            .map(|w| w.weight)
            .collect()
    }

    pub fn same_leading_sets(&self, other: &InitialIdealReport) -> bool {
        self.weights.len() == other.weights.len()
            && self.weights.iter().zip(&other.weights).all(|(a, b)| {
                let sa: BTreeSet<&Monomial> = a.leading.iter().collect();
                let sb: BTreeSet<&Monomial> = b.leading.iter().collect();
                sa == sb
            })
    }
}

fn run(cfg: &LabConfig, compare: bool) -> Result<InitialIdealReport, ArcError> {
    cfg.validate()?;
    let n_max = cfg.max_weight;
    let gens = arc_equations(cfg.r, n_max, cfg.mode)?;
    let cache = PartitionCache::new(n_max);
    let expected = as_counts(&target_series(n_max as usize));
    let weights = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let piece = WeightPiece::build(&gens, n, &cfg.order, &cache);
            let leading = piece.leading();
            let expected_quotient_dim = expected[n as usize];
            let mut w = WeightReport {
                weight: n,
                monomials: piece.monomial_count(),
                generators: piece.generator_count(),
                ideal_dim: piece.ideal_dim(),
                quotient_dim: piece.quotient_dim(),
                expected_quotient_dim,
                hilbert_ok: piece.quotient_dim() as u64 == expected_quotient_dim,
                leading,
                agrees_with_j: None,
                only_initial: Vec::new(),
                only_j: Vec::new(),
            };
            if compare {
                let lead: BTreeSet<&Monomial> = w.leading.iter().collect();
                let (mut only_initial, mut only_j) = (Vec::new(), Vec::new());
                for m in &piece.columns {
                    let a = lead.contains(m);
                    let b = in_j(m, cfg.r).expect("r validated");
                    if a && !b {
                        only_initial.push(m.clone());
                    } else if b && !a {
                        only_j.push(m.clone());
                    }
                }
                w.agrees_with_j = Some(only_initial.is_empty() && only_j.is_empty());
                w.only_initial = only_initial;
                w.only_j = only_j;
            }
            w
        })
        .collect();
    Ok(InitialIdealReport {
        r: cfg.r,
        max_weight: n_max,
        order: cfg.order,
        mode: cfg.mode,
        weights,
    })
}

/// Initial ideal of `𝔞` weight by weight up to `cfg.max_weight`.
pub fn initial_ideal(cfg: &LabConfig) -> Result<InitialIdealReport, ArcError> {
    run(cfg, false)
}

/// [`initial_ideal`] with per-weight comparison against `J_r`.
pub fn compare_with_j(cfg: &LabConfig) -> Result<InitialIdealReport, ArcError> {
    run(cfg, true)
}

/// Runs `cfg` once per order; reports come back in the order given.
pub fn sweep(
    cfg: &LabConfig,
    orders: &[MonomialOrder],
    compare: bool,
) -> Result<Vec<InitialIdealReport>, ArcError> {
    cfg.validate()?;
    orders
        .par_iter()
        .map(|&o| run(&cfg.with_order(o), compare))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn poly(w: u32, terms: &[(i64, &str)]) -> ArcPolynomial {
        let mut p = ArcPolynomial::zero(w);
        for &(c, m) in terms {
            p.add_term(mono(m), int(c));
        }
        p
    }

    #[test]
    fn equations_r2_plain() {
        let h = arc_equations(2, 4, Mode::Plain).unwrap();
        assert_eq!(h.len(), 3);
        assert_eq!(h[0], poly(2, &[(1, "z1^2"), (-1, "x1*y1")]));
        assert_eq!(h[1], poly(3, &[(2, "z1*z2"), (-1, "x1*y2"), (-1, "x2*y1")]));
        assert_eq!(h[0].to_string(), "z1^2 - x1*y1");
        assert!(arc_equations(2, 1, Mode::Plain).unwrap().is_empty());
        assert!(arc_equations(1, 4, Mode::Plain).is_err());
    }

    #[test]
    fn equations_by_direct_expansion() {
        // Brute force: sum over index tuples of the products.
        for r in 2..=4u32 {
            for mode in [Mode::Plain, Mode::Adapted] {
                let n_max = 7;
                let h = arc_equations(r, n_max, mode).unwrap();
                let fact = |j: u32| (1..=j as i64).product::<i64>();
                let c = |j: u32| match mode {
                    Mode::Plain => int(1),
                    Mode::Adapted => BigRational::new(BigInt::one(), BigInt::from(fact(j))),
                };
                for i in 2..=n_max {
                    let mut p = ArcPolynomial::zero(i);
                    let mut idx = vec![1u32; r as usize];
                    loop {
                        if idx.iter().sum::<u32>() == i {
                            let m =
                                Monomial::from_exponents(idx.iter().map(|&j| (Variable::z(j), 1)));
                            let coeff = idx.iter().fold(int(1), |acc, &j| acc * c(j));
                            p.add_term(m, coeff);
                        }
                        let mut k = 0;
                        while k < idx.len() && idx[k] == i {
                            idx[k] = 1;
                            k += 1;
                        }
                        if k == idx.len() {
                            break;
                        }
                        idx[k] += 1;
                    }
                    for a in 1..i {
                        let m = mono(&format!("x{a}*y{}", i - a));
                        p.add_term(m, -(c(a) * c(i - a)));
                    }
                    assert_eq!(h[(i - 2) as usize], p, "r={r} i={i} {mode}");
                }
            }
        }
    }

    #[test]
    fn derivation_leibniz() {
        let p = poly(2, &[(1, "z1^2"), (-1, "x1*y1")]);
        assert_eq!(
            p.derivation(),
            poly(3, &[(2, "z1*z2"), (-1, "x2*y1"), (-1, "x1*y2")])
        );
        assert_eq!(
            poly(3, &[(1, "x1^3")]).derivation(),
            poly(4, &[(3, "x1^2*x2")])
        );
    }

    /// With index-0 coordinates present `D(H_i) = (i+1) H_{i+1}`; dropping
    /// them leaves the correction `Σ_v v_1 · ∂H_i/∂v_0` evaluated at the origin.
    #[test]
    fn derivation_leibniz_correction_adapted() {
        let n_max = 8;
        for r in 2..=4u32 {
            let gens = arc_equations(r, n_max, Mode::Adapted).unwrap();
            let x = arc_series(Family::X, n_max, Mode::Adapted);
            let y = arc_series(Family::Y, n_max, Mode::Adapted);
            let z = arc_series(Family::Z, n_max, Mode::Adapted);
            let mut z_pow = vec![ArcPolynomial::zero(0); n_max as usize + 1];
            z_pow[0].add_term(Monomial::one(), int(1));
            for _ in 0..r - 1 {
                z_pow = truncated_product(&z_pow, &z);
            }
            for i in 2..n_max {
                let h = &gens[(i - 2) as usize];
                let next = &gens[(i - 1) as usize];
                let mut rhs = next.scale(&int(i as i64 + 1));
                let corr = [
                    y[i as usize].mul_monomial(&mono("x1")),
                    x[i as usize].mul_monomial(&mono("y1")),
                    z_pow[i as usize]
                        .mul_monomial(&mono("z1"))
                        .scale(&int(-(r as i64))),
                ];
                for c in corr {
                    for (m, v) in c.terms() {
                        rhs.add_term(m.clone(), v.clone());
                    }
                }
                assert_eq!(h.derivation(), rhs, "r={r} i={i}");
            }
        }
    }

    #[test]
    fn derivation_and_ideal_membership() {
        let gens = arc_equations(2, 4, Mode::Adapted).unwrap();
        let cache = PartitionCache::new(4);
        let order = MonomialOrder::default();
        let w3 = WeightPiece::build(&gens, 3, &order, &cache);
        let w4 = WeightPiece::build(&gens, 4, &order, &cache);
        // D(H̄_2) = 2 H̄_3, but D(H̄_3) leaves the ideal: the fibre over the
        // origin is not stable under D.
        assert_eq!(gens[0].derivation(), gens[1].scale(&int(2)));
        assert!(w3.contains(&gens[0].derivation()));
        assert!(!w4.contains(&gens[1].derivation()));
        assert!(w4.contains(&gens[2]));
        assert!(w4.contains(&gens[1].mul_monomial(&mono("y1"))));
    }

    #[test]
    fn basis_rows() {
        let gens = arc_equations(2, 3, Mode::Plain).unwrap();
        let cache = PartitionCache::new(3);
        assert_eq!(weight_piece_basis(&gens, 2, &cache), vec![gens[0].clone()]);
        let b3 = weight_piece_basis(&gens, 3, &cache);
        assert_eq!(b3.len(), 4);
        assert!(b3.contains(&gens[1]));
        for v in ["x1", "y1", "z1"] {
            assert!(b3.contains(&gens[0].mul_monomial(&mono(v))));
        }
        assert!(weight_piece_basis(&gens, 1, &cache).is_empty());
        assert!(weight_piece_basis(&gens, 0, &cache).is_empty());
    }

    #[test]
    fn order_comparisons() {
        let o = MonomialOrder::default();
        assert_eq!(o.compare(&mono("z1^2"), &mono("x1*y1")), Ordering::Greater);
        assert_eq!(o.compare(&mono("x2"), &mono("z1")), Ordering::Greater);
        assert_eq!(
            o.compare_variables(Variable::z(1), Variable::y(9)),
            Ordering::Greater
        );
        assert_eq!(
            o.compare_variables(Variable::z(2), Variable::z(1)),
            Ordering::Greater
        );
        // Revlex: the smallest variable decides, lower exponent wins.
        assert_eq!(o.compare(&mono("z1*z3"), &mono("z2^2")), Ordering::Less);
        let lex = MonomialOrder::new(
            [Family::Z, Family::Y, Family::X],
            IndexDirection::Higher,
            TieBreak::Lex,
        )
        .unwrap();
        assert_eq!(
            lex.compare(&mono("z1*z3"), &mono("z2^2")),
            Ordering::Greater
        );
        assert!(MonomialOrder::new(
            [Family::Z, Family::Z, Family::X],
            IndexDirection::Higher,
            TieBreak::Lex
        )
        .is_err());
        assert_eq!(
            MonomialOrder::parse_families("x>y>z").unwrap(),
            [Family::X, Family::Y, Family::Z]
        );
        assert!(MonomialOrder::parse_families("xy").is_err());
        assert_eq!(MonomialOrder::builtin(TieBreak::Revlex).len(), 12);
        let labels: BTreeSet<String> = MonomialOrder::all().iter().map(|o| o.label()).collect();
        assert_eq!(labels.len(), 24);
        assert_eq!(o.label(), "z>y>x/higher/revlex");
    }

    #[test]
    fn orders_are_total_on_a_weight() {
        let cache = PartitionCache::new(6);
        let ms = monomials_of_weight(&cache, 6);
        for o in MonomialOrder::all() {
            for a in &ms {
                for b in &ms {
                    assert_eq!(o.compare(a, b) == Ordering::Equal, a == b);
                    assert_eq!(o.compare(a, b), o.compare(b, a).reverse());
                }
            }
        }
    }

    #[test]
    fn small_weights() {
        let rep = compare_with_j(&LabConfig::new(2, 2)).unwrap();
        let dims: Vec<_> = rep.quotient_dims();
        assert_eq!(dims, vec![1, 3, 8]);
        assert_eq!(rep.weights[2].leading, vec![mono("z1^2")]);
        assert_eq!(rep.agrees_with_j(), Some(true));
        assert!(rep.hilbert_ok());
        let zero = initial_ideal(&LabConfig::new(2, 0)).unwrap();
        assert_eq!(zero.quotient_dims(), vec![1]);
        assert_eq!(zero.agrees_with_j(), None);
    }

    #[test]
    fn hilbert_r2_weight8() {
        let rep = initial_ideal(&LabConfig::new(2, 8)).unwrap();
        assert_eq!(
            rep.quotient_dims(),
            vec![1, 3, 8, 18, 38, 74, 139, 249, 434]
        );
        for w in &rep.weights {
            assert_eq!(w.ideal_dim + w.quotient_dim, w.monomials);
        }
    }

    #[test]
    fn weight_cap() {
        assert!(matches!(
            initial_ideal(&LabConfig::new(2, 13)),
            Err(ArcError::WeightCap {
                requested: 13,
                cap: 12
            })
        ));
    }
}
