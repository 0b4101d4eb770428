//! Squarefree monomials, mixed-ring monomials and the term orders used
//! throughout the crate.
//!
//! Variables are 1-based: `x1..xn` for the base ring and `t1..tq` for the
//! extra variables of the symmetric-algebra presentation ring.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A squarefree monomial, stored as its strictly increasing support.
///
/// The empty support is the monomial `1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SqMonomial {
    support: Vec<u32>,
}

impl SqMonomial {
    /// Builds a monomial from a strictly increasing list of 1-based indices.
    pub fn new(support: Vec<u32>) -> Result<Self> {
        if support.first() == Some(&0) {
            return Err(Error::Range("variable indices are 1-based".into()));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Range(format!(
                "support {support:?} is not strictly increasing"
            )));
        }
        Ok(Self { support })
    }

    /// Builds a monomial from indices in any order; repeated indices are rejected.
    pub fn from_indices<I: IntoIterator<Item = u32>>(indices: I) -> Result<Self> {
        let mut support: Vec<u32> = indices.into_iter().collect();
        support.sort_unstable();
        Self::new(support)
    }

    /// The monomial `1`.
    pub fn one() -> Self {
        Self::default()
    }

    /// `x_start * x_{start+1} * ... * x_end`.
    pub fn range(start: u32, end: u32) -> Self {
        Self {
            support: (start..=end).collect(),
        }
    }

    pub(crate) fn from_sorted_unchecked(support: Vec<u32>) -> Self {
        debug_assert!(support.windows(2).all(|w| w[0] < w[1]));
        Self { support }
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    pub fn degree(&self) -> usize {
        self.support.len()
    }

    pub fn is_one(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains_var(&self, var: u32) -> bool {
        self.support.binary_search(&var).is_ok()
    }

    /// Largest variable index dividing the monomial.
    pub fn max_index(&self) -> Result<u32> {
        self.support.last().copied().ok_or(Error::UndefinedOnUnit)
    }

    pub fn divides(&self, other: &SqMonomial) -> bool {
        let mut it = other.support.iter();
        self.support.iter().all(|v| it.any(|w| w == v))
    }

    pub fn gcd(&self, other: &SqMonomial) -> SqMonomial {
        let support = self
            .support
            .iter()
            .copied()
            .filter(|v| other.contains_var(*v))
            .collect();
        Self { support }
    }

    pub fn lcm(&self, other: &SqMonomial) -> SqMonomial {
        let mut support: Vec<u32> = self.support.iter().chain(&other.support).copied().collect();
        support.sort_unstable();
        support.dedup();
        Self { support }
    }

    /// `self / other`, defined when `other` divides `self`.
    pub fn quotient(&self, other: &SqMonomial) -> Option<SqMonomial> {
        if !other.divides(self) {
            return None;
        }
        Some(self.without(other))
    }

    /// Support difference `supp(self) \ supp(other)`.
    pub fn without(&self, other: &SqMonomial) -> SqMonomial {
        let support = self
            .support
            .iter()
            .copied()
            .filter(|v| !other.contains_var(*v))
            .collect();
        Self { support }
    }

    pub fn is_coprime(&self, other: &SqMonomial) -> bool {
        self.gcd(other).is_one()
    }

    /// Product with `x_var`, or `None` if `x_var` already divides the monomial.
    pub fn times_var(&self, var: u32) -> Option<SqMonomial> {
        match self.support.binary_search(&var) {
            Ok(_) => None,
            Err(pos) => {
                let mut support = self.support.clone();
                support.insert(pos, var);
                Some(Self { support })
            }
        }
    }

    /// Bitmask of the support, bit `i - 1` for `x_i`. Requires indices ≤ 64.
    pub fn mask(&self) -> u64 {
        self.support.iter().fold(0u64, |acc, &v| {
            debug_assert!((1..=64).contains(&v));
            acc | (1u64 << (v - 1))
        })
    }

    pub fn from_mask(mask: u64) -> Self {
        let support = (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        Self { support }
    }
}

impl fmt::Display for SqMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return f.write_str("1");
        }
        for (k, v) in self.support.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SqMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Homogeneous squarefree lex order, see [`cmp_hslex`].
impl Ord for SqMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_hslex(self, other)
    }
}

impl PartialOrd for SqMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for SqMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_sq_monomial(s, 1)
    }
}

impl Serialize for SqMonomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SqMonomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses `x1*x3*x4` (or `1`). `offset` is the 1-based column of `s[0]` in
/// the surrounding input, used for error positions.
pub(crate) fn parse_sq_monomial(s: &str, offset: usize) -> Result<SqMonomial> {
    let lead = s.len() - s.trim_start().len();
    let body = s.trim();
    if body == "1" {
        return Ok(SqMonomial::one());
    }
    if body.is_empty() {
        return Err(Error::Parse {
            column: offset + lead,
            message: "empty monomial".into(),
        });
    }
    let mut support = Vec::new();
    let mut col = offset + lead;
    for factor in body.split('*') {
        let flead = factor.len() - factor.trim_start().len();
        let name = factor.trim();
        let at = col + flead;
        let index = parse_variable(name, 'x', at)?;
        if support.contains(&index) {
            return Err(Error::Parse {
                column: at,
                message: format!("repeated variable x{index} in a squarefree monomial"),
            });
        }
        support.push(index);
        col += factor.len() + 1;
    }
    support.sort_unstable();
    Ok(SqMonomial { support })
}

pub(crate) fn parse_variable(name: &str, prefix: char, column: usize) -> Result<u32> {
    let digits = name
        .strip_prefix(prefix)
        .or_else(|| name.strip_prefix(prefix.to_ascii_uppercase()))
        .ok_or_else(|| Error::Parse {
            column,
            message: format!("expected a variable {prefix}<index>, found {name:?}"),
        })?;
    match digits.parse::<u32>() {
        Ok(i) if i >= 1 => Ok(i),
        _ => Err(Error::Parse {
            column,
            message: format!("bad variable index in {name:?}"),
        }),
    }
}

/// Lexicographic comparison of two squarefree monomials of equal degree.
///
/// `u > v` when, at the first position where the supports differ, `u` has the
/// smaller index.
pub fn cmp_slex(u: &SqMonomial, v: &SqMonomial) -> Result<Ordering> {
    if u.degree() != v.degree() {
        return Err(Error::DegreeMismatch {
            left: u.degree(),
            right: v.degree(),
        });
    }
    Ok(slex_unchecked(u, v))
}

fn slex_unchecked(u: &SqMonomial, v: &SqMonomial) -> Ordering {
    v.support.cmp(&u.support)
}

/// Homogeneous lex order on all squarefree monomials: the monomial of smaller
/// degree is larger, and equal degrees compare by slex.
pub fn cmp_hslex(u: &SqMonomial, v: &SqMonomial) -> Ordering {
    v.degree()
        .cmp(&u.degree())
        .then_with(|| slex_unchecked(u, v))
}

pub fn max_index(u: &SqMonomial) -> Result<u32> {
    u.max_index()
}

/// `f_i / gcd(f_i, f_j)`.
pub fn colon_quotient(f_i: &SqMonomial, f_j: &SqMonomial) -> Result<SqMonomial> {
    if f_i == f_j {
        return Err(Error::DegeneratePair);
    }
    Ok(f_i.without(f_j))
}

/// A monomial of `K[x1..xn, t1..tq]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MixedMonomial {
    n: usize,
    exps: Vec<u16>,
}

impl MixedMonomial {
    pub fn new(x_exponents: Vec<u16>, t_exponents: Vec<u16>) -> Self {
        let n = x_exponents.len();
        let mut exps = x_exponents;
        exps.extend(t_exponents);
        Self { n, exps }
    }

    pub fn one(n: usize, q: usize) -> Self {
        Self {
            n,
            exps: vec![0; n + q],
        }
    }

    /// `u * t_j` for a squarefree `u` (1-based `j`).
    pub fn from_sq_times_t(u: &SqMonomial, t: usize, n: usize, q: usize) -> Self {
        let mut m = Self::one(n, q);
        for &v in u.support() {
            m.exps[v as usize - 1] = 1;
        }
        m.exps[n + t - 1] += 1;
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.exps.len() - self.n
    }

    pub fn x_exponents(&self) -> &[u16] {
        &self.exps[..self.n]
    }

    pub fn t_exponents(&self) -> &[u16] {
        &self.exps[self.n..]
    }

    pub fn t_degree(&self) -> usize {
        self.t_exponents().iter().map(|&e| e as usize).sum()
    }

    pub fn x_degree(&self) -> usize {
        self.x_exponents().iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.exps.len() != other.exps.len() {
            return Err(Error::DimensionMismatch {
                n1: self.n,
                q1: self.q(),
                n2: other.n,
                q2: other.q(),
            });
        }
        Ok(())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Self) -> Self {
        debug_assert!(other.divides(self));
        Self {
            n: self.n,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// True when every exponent is at most one.
    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Squarefree support as vertex indices `0..n+q` (x first, then t).
    pub fn vertex_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }
}

impl fmt::Display for MixedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if i < self.n {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "t{}", i - self.n + 1)?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MixedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Term orders used in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermOrder {
    /// Lex on squarefree monomials of one degree.
    Slex,
    /// Degree, then slex.
    Hslex,
    /// Pure lex with `t_q > ... > t_1 > x_1 > ... > x_n`.
    MixedLex,
    /// Block order: the t-block by graded reverse lex (`t_q > ... > t_1`),
    /// ties broken on the x-block by graded reverse lex (`x_1 > ... > x_n`).
    /// Only used to check that s-sequence verdicts do not depend on the order.
    MixedBlockRevlex,
}

impl TermOrder {
    pub fn name(self) -> &'static str {
        match self {
            TermOrder::Slex => "slex",
            TermOrder::Hslex => "hslex",
            TermOrder::MixedLex => "mixed_lex",
            TermOrder::MixedBlockRevlex => "mixed_block_revlex",
        }
    }

    pub fn is_mixed(self) -> bool {
        matches!(self, TermOrder::MixedLex | TermOrder::MixedBlockRevlex)
    }

    /// Comparison without shape checks, for the Gröbner engine's inner loops.
    pub(crate) fn cmp_unchecked(self, a: &MixedMonomial, b: &MixedMonomial) -> Ordering {
        let n = a.n;
        match self {
            TermOrder::MixedLex => {
                let (ta, tb) = (&a.exps[n..], &b.exps[n..]);
                ta.iter()
                    .rev()
                    .cmp(tb.iter().rev())
                    .then_with(|| a.exps[..n].cmp(&b.exps[..n]))
            }
            TermOrder::MixedBlockRevlex => grevlex(&a.exps[n..], &b.exps[n..], true)
                .then_with(|| grevlex(&a.exps[..n], &b.exps[..n], false)),
            TermOrder::Slex | TermOrder::Hslex => unreachable!("not a mixed order"),
        }
    }
}

/// Graded reverse lex. With `ascending = false` the first variable is the
/// largest; with `ascending = true` the last variable is the largest.
fn grevlex(a: &[u16], b: &[u16], ascending: bool) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        // the smallest variable decides: fewer of it means larger monomial
        let pairs: Box<dyn Iterator<Item = (&u16, &u16)>> = if ascending {
            Box::new(a.iter().zip(b))
        } else {
            Box::new(a.iter().zip(b).rev())
        };
        for (x, y) in pairs {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Compares mixed monomials under one of the mixed orders.
pub fn cmp_mixed(a: &MixedMonomial, b: &MixedMonomial, ord: TermOrder) -> Result<Ordering> {
    if !ord.is_mixed() {
        return Err(Error::WrongOrderKind(ord.name()));
    }
    a.same_shape(b)?;
    Ok(ord.cmp_unchecked(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(s: &str) -> SqMonomial {
        s.parse().unwrap()
    }

    fn x(n: usize, q: usize, var: usize) -> MixedMonomial {
        let mut e = MixedMonomial::one(n, q);
        e.exps[var - 1] = 1;
        e
    }

    fn t(n: usize, q: usize, var: usize) -> MixedMonomial {
        let mut e = MixedMonomial::one(n, q);
        e.exps[n + var - 1] = 1;
        e
    }

    #[test]
    fn slex_examples() {
        assert_eq!(cmp_slex(&m("x1*x4*x5"), &m("x2*x3*x4")), Ok(Ordering::Greater));
        assert_eq!(cmp_slex(&m("x1*x2"), &m("x1*x2")), Ok(Ordering::Equal));
        assert_eq!(cmp_slex(&m("x1*x2"), &m("x1*x3")), Ok(Ordering::Greater));
        assert_eq!(
            cmp_slex(&m("x1*x2"), &m("x1*x2*x3")),
            Err(Error::DegreeMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn hslex_examples() {
        assert_eq!(cmp_hslex(&m("x1*x2"), &m("x1*x3*x4")), Ordering::Greater);
        assert_eq!(cmp_hslex(&m("x2*x3"), &m("x2*x3")), Ordering::Equal);
        assert_eq!(cmp_hslex(&m("x3*x4"), &m("x1*x2*x3")), Ordering::Greater);
        assert_eq!(cmp_hslex(&m("x1*x3"), &m("x1*x2")), Ordering::Less);
    }

    #[test]
    fn max_index_examples() {
        assert_eq!(max_index(&m("x1*x3*x4")), Ok(4));
        assert_eq!(max_index(&m("x2*x3*x7")), Ok(7));
        let d = 5;
        let k = 9;
        let u = SqMonomial::range(1, d - 1).times_var(k).unwrap();
        assert_eq!(max_index(&u), Ok(k));
        assert_eq!(max_index(&SqMonomial::one()), Err(Error::UndefinedOnUnit));
    }

    #[test]
    fn colon_quotient_examples() {
        for d in 2..7u32 {
            let f1 = SqMonomial::range(1, d);
            let fq = SqMonomial::range(1, d - 2).times_var(d).unwrap().times_var(d + 1).unwrap();
            let f3 = SqMonomial::range(1, d - 1).times_var(d + 2).unwrap();
            assert_eq!(colon_quotient(&f1, &fq).unwrap(), SqMonomial::range(d - 1, d - 1));
            assert_eq!(
                colon_quotient(&f3, &fq).unwrap(),
                SqMonomial::from_indices([d - 1, d + 2]).unwrap()
            );
        }
        assert_eq!(colon_quotient(&m("x1*x2"), &m("x3*x4")).unwrap(), m("x1*x2"));
        assert_eq!(colon_quotient(&m("x1*x2"), &m("x1*x2")), Err(Error::DegeneratePair));
    }

    #[test]
    fn mixed_examples() {
        let (n, q) = (3, 2);
        let ord = TermOrder::MixedLex;
        assert_eq!(cmp_mixed(&t(n, q, 2), &t(n, q, 1), ord), Ok(Ordering::Greater));
        assert_eq!(cmp_mixed(&x(n, q, 1), &t(n, q, 1), ord), Ok(Ordering::Less));
        assert_eq!(cmp_mixed(&x(n, q, 1), &x(n, q, 2), ord), Ok(Ordering::Greater));
        assert!(matches!(
            cmp_mixed(&x(3, 2, 1), &x(4, 2, 1), ord),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            cmp_mixed(&x(n, q, 1), &x(n, q, 2), TermOrder::Slex),
            Err(Error::WrongOrderKind("slex"))
        );
    }

    #[test]
    fn block_order_respects_variable_constraints() {
        let (n, q) = (4, 3);
        let ord = TermOrder::MixedBlockRevlex;
        for i in 1..=n {
            for j in 1..=q {
                assert_eq!(cmp_mixed(&x(n, q, i), &t(n, q, j), ord), Ok(Ordering::Less));
            }
        }
        for i in 1..n {
            assert_eq!(cmp_mixed(&x(n, q, i), &x(n, q, i + 1), ord), Ok(Ordering::Greater));
        }
        for j in 1..q {
            assert_eq!(cmp_mixed(&t(n, q, j), &t(n, q, j + 1), ord), Ok(Ordering::Less));
        }
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(m("x3*x1*x4").support(), &[1, 3, 4]);
        assert_eq!(m("x1*x3*x4").to_string(), "x1*x3*x4");
        assert_eq!(m("1"), SqMonomial::one());
        assert!(matches!(
            "x1*x2*x1".parse::<SqMonomial>(),
            Err(Error::Parse { column: 7, .. })
        ));
        assert!(matches!("x1*y2".parse::<SqMonomial>(), Err(Error::Parse { column: 4, .. })));
        assert!(matches!("x0".parse::<SqMonomial>(), Err(Error::Parse { column: 1, .. })));
        let mm = MixedMonomial::new(vec![0, 0, 0, 1], vec![1, 1, 0, 0]);
        assert_eq!(mm.to_string(), "x4*t1*t2");
    }

    fn sq_strategy(n: u32) -> impl Strategy<Value = SqMonomial> {
        proptest::collection::btree_set(1..=n, 0..=n as usize)
            .prop_map(|s| SqMonomial::new(s.into_iter().collect()).unwrap())
    }

    fn sq_of_degree(n: u32, d: usize) -> impl Strategy<Value = SqMonomial> {
        proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), d)
            .prop_map(|s| SqMonomial::new(s).unwrap())
    }

    fn mixed_strategy(n: usize, q: usize) -> impl Strategy<Value = MixedMonomial> {
        (
            proptest::collection::vec(0u16..3, n),
            proptest::collection::vec(0u16..3, q),
        )
            .prop_map(|(a, b)| MixedMonomial::new(a, b))
    }

    proptest! {
        #[test]
        fn slex_is_total_order(u in sq_of_degree(7, 3), v in sq_of_degree(7, 3), w in sq_of_degree(7, 3)) {
            let uv = cmp_slex(&u, &v).unwrap();
            prop_assert_eq!(uv.reverse(), cmp_slex(&v, &u).unwrap());
            prop_assert_eq!(uv == Ordering::Equal, u == v);
            if uv == Ordering::Greater && cmp_slex(&v, &w).unwrap() == Ordering::Greater {
                prop_assert_eq!(cmp_slex(&u, &w).unwrap(), Ordering::Greater);
            }
        }

        #[test]
        fn hslex_is_total_order(u in sq_strategy(6), v in sq_strategy(6), w in sq_strategy(6)) {
            let uv = cmp_hslex(&u, &v);
            prop_assert_eq!(uv.reverse(), cmp_hslex(&v, &u));
            prop_assert_eq!(uv == Ordering::Equal, u == v);
            if uv != Ordering::Less && cmp_hslex(&v, &w) != Ordering::Less {
                prop_assert_ne!(cmp_hslex(&u, &w), Ordering::Less);
            }
            if u.degree() < v.degree() {
                prop_assert_eq!(uv, Ordering::Greater);
            }
        }

        #[test]
        fn colon_quotient_identities(f in sq_strategy(8), g in sq_strategy(8)) {
            prop_assume!(f != g);
            let quot = colon_quotient(&f, &g).unwrap();
            prop_assert_eq!(quot.lcm(&f.gcd(&g)), f.clone());
            prop_assert!(quot.gcd(&f.gcd(&g)).is_one());
            prop_assert!(quot.is_coprime(&g));
        }

        #[test]
        fn mixed_orders_are_multiplicative(
            a in mixed_strategy(3, 3),
            b in mixed_strategy(3, 3),
            c in mixed_strategy(3, 3),
        ) {
            for ord in [TermOrder::MixedLex, TermOrder::MixedBlockRevlex] {
                let ab = cmp_mixed(&a, &b, ord).unwrap();
                prop_assert_eq!(cmp_mixed(&a.mul(&c), &b.mul(&c), ord).unwrap(), ab);
                prop_assert_ne!(cmp_mixed(&a.mul(&c), &a, ord).unwrap(), Ordering::Less);
            }
        }
    }
}
