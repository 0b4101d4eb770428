//! Squarefree lexsegment ideals: the lexsegment test, universal (USLI) and
//! almost universal (AUSLI) recognition, and USLI construction from a
//! degree sequence.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::SqIdeal;
use crate::monomial::{cmp_slex, SqMonomial};

/// Number of generators requested in each degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeSequence {
    entries: BTreeMap<usize, usize>,
}

impl DegreeSequence {
    pub fn new(entries: BTreeMap<usize, usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidDegreeSequence("empty support".into()));
        }
        if let Some((d, _)) = entries.iter().find(|(_, &k)| k == 0) {
            return Err(Error::InvalidDegreeSequence(format!("degree {d} has count 0")));
        }
        if entries.contains_key(&0) {
            return Err(Error::InvalidDegreeSequence("degree 0 is the unit ideal".into()));
        }
        Ok(Self { entries })
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Result<Self> {
        Self::new(pairs.into_iter().collect())
    }

    /// The degree counts of `G(I)`.
    pub fn of_ideal(ideal: &SqIdeal) -> Self {
        Self {
            entries: ideal.degree_counts(),
        }
    }

    pub fn entries(&self) -> &BTreeMap<usize, usize> {
        &self.entries
    }

    pub fn count(&self, d: usize) -> usize {
        self.entries.get(&d).copied().unwrap_or(0)
    }

    /// `d_t`.
    pub fn top_degree(&self) -> usize {
        *self.entries.keys().next_back().expect("nonempty")
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    /// Smallest number of variables admitting an USLI with these counts.
    pub fn min_variables(&self) -> usize {
        self.top_degree() + self.total() - 1
    }
}

impl FromStr for DegreeSequence {
    type Err = Error;

    /// `d:k[,d:k...]`, e.g. `2:1,3:1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut col = 1;
        for piece in s.split(',') {
            let parsed = piece
                .trim()
                .split_once(':')
                .and_then(|(d, k)| Some((d.trim().parse().ok()?, k.trim().parse().ok()?)));
            let Some((d, k)) = parsed else {
                return Err(Error::Parse {
                    column: col,
                    message: format!("expected degree:count, found {:?}", piece.trim()),
                });
            };
            if entries.insert(d, k).is_some() {
                return Err(Error::Parse {
                    column: col,
                    message: format!("degree {d} listed twice"),
                });
            }
            col += piece.len() + 1;
        }
        Self::new(entries)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.entries.iter().map(|(d, k)| format!("{d}:{k}")).join(",");
        f.write_str(&s)
    }
}

/// The integers `R_j = j + k_1 + ... + k_j` for `j = 1..d_t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RProfile {
    values: BTreeMap<usize, usize>,
}

impl RProfile {
    /// `R_j`, with `R_0 = 0` and `R_j = 0` past the top degree.
    pub fn get(&self, j: usize) -> usize {
        self.values.get(&j).copied().unwrap_or(0)
    }

    pub fn values(&self) -> &BTreeMap<usize, usize> {
        &self.values
    }
}

pub fn compute_r_profile(ds: &DegreeSequence) -> RProfile {
    let mut values = BTreeMap::new();
    let mut partial = 0;
    for j in 1..=ds.top_degree() {
        partial += ds.count(j);
        values.insert(j, j + partial);
    }
    RProfile { values }
}

/// The unique USLI of `K[x1..xn]` with `ds` generators per degree.
pub fn generate_usli(ds: &DegreeSequence, n: usize) -> Result<SqIdeal> {
    let required = ds.min_variables();
    if n < required {
        return Err(Error::InfeasibleAmbient { n, required });
    }
    let r = compute_r_profile(ds);
    let mut gens = Vec::with_capacity(ds.total());
    for &d in ds.entries().keys() {
        let head: Vec<u32> = (1..d).map(|j| r.get(j) as u32).collect();
        for ell in r.get(d - 1) + 1..r.get(d) {
            let mut support = head.clone();
            support.push(ell as u32);
            gens.push(SqMonomial::new(support)?);
        }
    }
    SqIdeal::new(n, gens)
}

/// A degree in which the members of an ideal do not form an slex prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexViolation {
    /// Number of variables of the ring the ideal was read in.
    pub ambient: usize,
    pub degree: usize,
    /// slex-smallest member of the ideal in this degree
    pub member: SqMonomial,
    /// slex-largest non-member; it lies above `member`
    pub non_member: SqMonomial,
}

impl LexViolation {
    /// Whether `v` is a squarefree monomial of this degree, not in `ideal`,
    /// that is slex-larger than some member.
    pub fn is_witness(&self, ideal: &SqIdeal, v: &SqMonomial) -> bool {
        v.degree() == self.degree
            && v.max_index().is_ok_and(|m| m as usize <= self.ambient)
            && !ideal.contains(v)
            && cmp_slex(v, &self.member) == Ok(std::cmp::Ordering::Greater)
    }
}

/// slex-smallest `d`-subset of `[ambient]` containing `g`: the support of
/// `g` plus the largest free indices.
fn slex_min_multiple(g: &SqMonomial, d: usize, ambient: usize) -> Option<SqMonomial> {
    if g.degree() > d || d > ambient {
        return None;
    }
    let mut support: Vec<u32> = g.support().to_vec();
    let mut v = ambient as u32;
    while support.len() < d {
        if !g.contains_var(v) {
            support.push(v);
        }
        v -= 1;
    }
    support.sort_unstable();
    Some(SqMonomial::from_sorted_unchecked(support))
}

/// slex-largest `d`-subset of `[ambient]` containing no generator mask.
fn slex_max_non_member(gen_masks: &[u64], d: usize, ambient: usize) -> Option<SqMonomial> {
    fn dfs(
        gen_masks: &[u64],
        prefix: &mut Vec<u32>,
        mask: u64,
        d: usize,
        ambient: u32,
    ) -> bool {
        if prefix.len() == d {
            return true;
        }
        let start = prefix.last().map_or(1, |&v| v + 1);
        let remaining = (d - prefix.len()) as u32;
        for c in start..=ambient + 1 - remaining {
            let next = mask | 1 << (c - 1);
            if gen_masks.iter().any(|&g| g & next == g) {
                continue;
            }
            prefix.push(c);
            if dfs(gen_masks, prefix, next, d, ambient) {
                return true;
            }
            prefix.pop();
        }
        false
    }
    if d > ambient {
        return None;
    }
    let mut prefix = Vec::with_capacity(d);
    dfs(gen_masks, &mut prefix, 0, d, ambient as u32)
        .then(|| SqMonomial::from_sorted_unchecked(prefix))
}

/// Checks the lexsegment property of `ideal` read in `K[x1..x_ambient]`,
/// in every degree `1..=ambient`.
pub fn lexsegment_violation_in(ideal: &SqIdeal, ambient: usize) -> Result<Option<LexViolation>> {
    if ambient < ideal.n() || ambient > 64 {
        return Err(Error::Range(format!(
            "ambient {ambient} must lie in [{}, 64]",
            ideal.n()
        )));
    }
    let masks: Vec<u64> = ideal.gens().iter().map(SqMonomial::mask).collect();
    for d in 1..=ambient {
        let member = ideal
            .gens()
            .iter()
            .filter_map(|g| slex_min_multiple(g, d, ambient))
            .max_by(|a, b| a.support().cmp(b.support()));
        let Some(member) = member else { continue };
        let Some(non_member) = slex_max_non_member(&masks, d, ambient) else {
            continue;
        };
        if non_member.support() < member.support() {
            return Ok(Some(LexViolation {
                ambient,
                degree: d,
                member,
                non_member,
            }));
        }
    }
    Ok(None)
}

pub fn is_lexsegment(ideal: &SqIdeal) -> bool {
    lexsegment_violation_in(ideal, ideal.n())
        .expect("ambient equals n")
        .is_none()
}

/// Characterization of USLIs by their generators: `G(I)` must coincide with
/// the output of [`generate_usli`] for its own degree counts.
pub fn is_usli_structural(ideal: &SqIdeal) -> bool {
    let ds = DegreeSequence::of_ideal(ideal);
    match generate_usli(&ds, ideal.n()) {
        Ok(expected) => expected.gens() == ideal.gens(),
        Err(_) => false,
    }
}

/// Default extension depth for the brute-force USLI check: `d_t + |G(I)|`.
pub fn default_m_max(ideal: &SqIdeal) -> usize {
    ideal.max_degree() + ideal.num_gens()
}

/// First `m` in `0..=m_max` for which `I A_[m]` is not lexsegment.
pub fn usli_bruteforce_failure(ideal: &SqIdeal, m_max: usize) -> Result<Option<(usize, LexViolation)>> {
    for m in 0..=m_max {
        if let Some(v) = lexsegment_violation_in(ideal, ideal.n() + m)? {
            return Ok(Some((m, v)));
        }
    }
    Ok(None)
}

/// Tests the USLI definition directly in the extensions `A_[0..=m_max]`.
pub fn is_usli_bruteforce(ideal: &SqIdeal, m_max: usize) -> Result<bool> {
    Ok(usli_bruteforce_failure(ideal, m_max)?.is_none())
}

pub fn is_ausli(ideal: &SqIdeal) -> Result<bool> {
    let head = ideal
        .without_smallest()
        .ok_or(Error::TooFewGenerators(ideal.num_gens()))?;
    Ok(is_lexsegment(ideal) && !is_usli_structural(ideal) && is_usli_structural(&head))
}

/// The `q` slex-largest squarefree monomials of degree `d` in `n` variables.
pub fn lexsegment_prefix(d: usize, q: usize, n: usize) -> Result<SqIdeal> {
    if d == 0 || d > n {
        return Err(Error::Range(format!("degree {d} not in 1..={n}")));
    }
    let total = binomial(n, d);
    if q == 0 || q > total {
        return Err(Error::Range(format!("prefix length {q} not in 1..={total}")));
    }
    let gens = (1..=n as u32)
        .combinations(d)
        .take(q)
        .map(SqMonomial::from_sorted_unchecked)
        .collect();
    SqIdeal::new(n, gens)
}

/// All squarefree lexsegment ideals of `K[x1..xn]` generated in degrees at
/// most `max_degree`.
pub fn all_lexsegment_ideals(n: usize, max_degree: usize) -> Vec<SqIdeal> {
    fn grow(
        n: usize,
        d: usize,
        max_degree: usize,
        gens: &mut Vec<SqMonomial>,
        out: &mut Vec<SqIdeal>,
    ) {
        if d > max_degree.min(n) {
            if !gens.is_empty() {
                let ideal = SqIdeal::new(n, gens.clone()).expect("valid generators");
                if is_lexsegment(&ideal) {
                    out.push(ideal);
                }
            }
            return;
        }
        let level: Vec<SqMonomial> = (1..=n as u32)
            .combinations(d)
            .map(SqMonomial::from_sorted_unchecked)
            .collect();
        let is_member = |u: &SqMonomial, gens: &[SqMonomial]| gens.iter().any(|g| g.divides(u));
        let present = level.iter().take_while(|u| is_member(u, gens)).count();
        if level[present..].iter().any(|u| is_member(u, gens)) {
            return;
        }
        for len in present..=level.len() {
            let before = gens.len();
            gens.extend(level[present..len].iter().cloned());
            grow(n, d + 1, max_degree, gens, out);
            gens.truncate(before);
        }
    }
    let mut out = Vec::new();
    grow(n, 1, max_degree, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ideal(n: usize, text: &str) -> SqIdeal {
        SqIdeal::parse(n, text).unwrap()
    }

    fn ds(text: &str) -> DegreeSequence {
        text.parse().unwrap()
    }

    /// Lexsegment test by listing every squarefree monomial of every degree.
    fn lexsegment_by_enumeration(ideal: &SqIdeal, ambient: usize) -> bool {
        (1..=ambient).all(|d| {
            let members: Vec<bool> = (1..=ambient as u32)
                .combinations(d)
                .map(|s| ideal.contains(&SqMonomial::new(s).unwrap()))
                .collect();
            let first_out = members.iter().position(|&m| !m).unwrap_or(members.len());
            members[first_out..].iter().all(|&m| !m)
        })
    }

    #[test]
    fn r_profile_examples() {
        let r = compute_r_profile(&ds("2:1,3:1"));
        assert_eq!(r.values(), &BTreeMap::from([(1, 1), (2, 3), (3, 5)]));
        let r = compute_r_profile(&ds("4:3"));
        assert_eq!(r.values(), &BTreeMap::from([(1, 1), (2, 2), (3, 3), (4, 7)]));
        let r = compute_r_profile(&ds("2:6"));
        assert_eq!(r.values(), &BTreeMap::from([(1, 1), (2, 8)]));
    }

    #[test]
    fn generate_examples() {
        assert_eq!(generate_usli(&ds("2:1,3:1"), 4).unwrap(), ideal(4, "x1*x2, x1*x3*x4"));
        assert_eq!(generate_usli(&ds("2:1"), 2).unwrap(), ideal(2, "x1*x2"));
        for d in 1..5u32 {
            for q in 1..5u32 {
                let n = (d + q - 1) as usize + 1;
                let expected: Vec<SqMonomial> = (d..d + q)
                    .map(|k| SqMonomial::range(1, d - 1).times_var(k).unwrap())
                    .collect();
                let got = generate_usli(&DegreeSequence::from_pairs([(d as usize, q as usize)]).unwrap(), n).unwrap();
                assert_eq!(got, SqIdeal::new(n, expected).unwrap());
            }
        }
        assert_eq!(
            generate_usli(&ds("2:1,3:1"), 3),
            Err(Error::InfeasibleAmbient { n: 3, required: 4 })
        );
    }

    #[test]
    fn lexsegment_examples() {
        assert!(is_lexsegment(&ideal(4, "x1*x2, x1*x3*x4")));
        assert!(!is_lexsegment(&ideal(5, "x1*x2, x1*x3*x4, x2*x3*x4")));
        assert!(is_lexsegment(&ideal(4, "x1*x2, x1*x3*x4, x2*x3*x4")));
        for n in 3..7 {
            assert!(is_lexsegment(&SqIdeal::new(n, vec![SqMonomial::range(1, 3)]).unwrap()));
        }
    }

    #[test]
    fn structural_examples() {
        assert!(is_usli_structural(&ideal(4, "x1*x2, x1*x3*x4")));
        assert!(!is_usli_structural(&ideal(4, "x1*x2, x1*x3*x4, x2*x3*x4")));
        for n in 3..8 {
            for d in 2..n {
                let usli = lexsegment_prefix(d, n - d + 1, n).unwrap();
                assert!(is_usli_structural(&usli));
                if n - d + 2 <= binomial(n, d) {
                    let next = lexsegment_prefix(d, n - d + 2, n).unwrap();
                    assert!(!is_usli_structural(&next));
                }
            }
        }
    }

    #[test]
    fn bruteforce_examples() {
        let i = ideal(4, "x1*x2, x1*x3*x4, x2*x3*x4");
        assert!(!is_usli_bruteforce(&i, 1).unwrap());
        let (m, violation) = usli_bruteforce_failure(&i, 1).unwrap().unwrap();
        assert_eq!(m, 1);
        assert!(violation.is_witness(&i, &"x1*x4*x5".parse().unwrap()));
        assert!(is_usli_bruteforce(&ideal(4, "x1*x2, x1*x3*x4"), 3).unwrap());
        let not_lex = ideal(5, "x1*x2, x1*x3*x4, x2*x3*x4");
        assert!(!is_usli_bruteforce(&not_lex, 0).unwrap());
    }

    #[test]
    fn ausli_examples() {
        assert_eq!(is_ausli(&ideal(4, "x1*x2, x1*x3*x4, x2*x3*x4")), Ok(true));
        assert_eq!(is_ausli(&ideal(4, "x1*x2, x1*x3*x4")), Ok(false));
        assert_eq!(is_ausli(&ideal(4, "x1*x2")), Err(Error::TooFewGenerators(1)));
        for n in 3..8 {
            for d in 2..n {
                let q = n - d + 2;
                if q <= binomial(n, d) {
                    assert_eq!(is_ausli(&lexsegment_prefix(d, q, n).unwrap()), Ok(true), "n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(lexsegment_prefix(2, 5, 4).unwrap(), ideal(4, "x1*x2, x1*x3, x1*x4, x2*x3, x2*x4"));
        assert_eq!(lexsegment_prefix(3, 1, 6).unwrap(), ideal(6, "x1*x2*x3"));
        assert_eq!(lexsegment_prefix(3, 2, 5).unwrap(), ideal(5, "x1*x2*x3, x1*x2*x4"));
        assert!(matches!(lexsegment_prefix(2, 7, 4), Err(Error::Range(_))));
        assert!(matches!(lexsegment_prefix(2, 0, 4), Err(Error::Range(_))));
    }

    #[test]
    fn degree_sequence_parsing() {
        assert!(matches!("2:0".parse::<DegreeSequence>(), Err(Error::InvalidDegreeSequence(_))));
        assert!(matches!("2:1,x".parse::<DegreeSequence>(), Err(Error::Parse { column: 5, .. })));
        assert_eq!(ds("3:1, 2:1").to_string(), "2:1,3:1");
    }

    #[test]
    fn extremal_lex_elements_match_enumeration() {
        // the fast extremal-element test against the literal definition
        for n in 1..=5 {
            for ideal in all_lexsegment_ideals(n, n) {
                for m in 0..3 {
                    let fast = lexsegment_violation_in(&ideal, n + m).unwrap().is_none();
                    assert_eq!(fast, lexsegment_by_enumeration(&ideal, n + m), "{ideal} m={m}");
                }
            }
        }
    }

    #[test]
    fn enumerated_lexsegment_ideals_are_distinct_and_lex() {
        let all = all_lexsegment_ideals(4, 4);
        assert!(all.iter().all(|i| lexsegment_by_enumeration(i, 4)));
        let unique: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(unique.len(), all.len());
        // degree-1 lexsegment ideals in four variables: (x1), ..., (x1..x4)
        assert_eq!(all.iter().filter(|i| i.max_degree() == 1).count(), 4);
    }

    proptest! {
        #[test]
        fn usli_round_trip(pairs in proptest::collection::btree_map(1usize..5, 1usize..4, 1..4), extra in 0usize..2) {
            let ds = DegreeSequence::new(pairs).unwrap();
            let n = ds.min_variables() + extra;
            let usli = generate_usli(&ds, n).unwrap();
            prop_assert!(is_usli_structural(&usli));
            prop_assert_eq!(DegreeSequence::of_ideal(&usli), ds);
            prop_assert!(is_lexsegment(&usli));
        }

        #[test]
        fn arbitrary_sets_agree_with_enumeration(
            n in 2usize..6,
            raw in proptest::collection::vec(proptest::collection::btree_set(1u32..6, 1..4), 1..5),
            m in 0usize..3,
        ) {
            let gens: Vec<SqMonomial> = raw
                .into_iter()
                .map(|s| s.into_iter().filter(|&v| v as usize <= n).collect::<Vec<_>>())
                .filter(|s| !s.is_empty())
                .map(|s| SqMonomial::new(s).unwrap())
                .collect();
            prop_assume!(!gens.is_empty());
            let ideal = SqIdeal::new(n, gens).unwrap();
            let fast = lexsegment_violation_in(&ideal, n + m).unwrap();
            prop_assert_eq!(fast.is_none(), lexsegment_by_enumeration(&ideal, n + m));
            if let Some(v) = fast {
                prop_assert!(v.is_witness(&ideal, &v.non_member));
            }
        }
    }
}
