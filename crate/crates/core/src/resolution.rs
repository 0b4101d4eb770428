//! Graded Betti tables of squarefree stable ideals, extremal Betti numbers,
//! and the projective dimension / regularity / depth invariants.
//!
//! Two independent routes produce a Betti table: the closed form for
//! squarefree stable ideals ([`betti_table_stable`]) and exact Koszul
//! homology ([`betti_table_oracle`]), which works for any squarefree
//! monomial ideal.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::SqIdeal;
use crate::koszul;
use crate::lexsegment::{binomial, compute_r_profile, is_usli_structural, DegreeSequence};
use crate::monomial::SqMonomial;

/// Default largest `n` accepted by [`betti_table_oracle`].
pub const DEFAULT_ORACLE_CEILING: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BettiSubject {
    /// Betti numbers of the ideal `I`.
    Ideal,
    /// Betti numbers of the quotient ring `S/I`.
    Quotient,
}

/// Sparse table `(i, j) -> β_{i,j}` with only nonzero entries stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    subject: BettiSubject,
    entries: BTreeMap<(usize, usize), u64>,
}

#[derive(Serialize, Deserialize)]
struct BettiTableWire {
    n: usize,
    subject: BettiSubject,
    entries: Vec<[u64; 3]>,
}

impl BettiTable {
    pub fn new(n: usize, subject: BettiSubject, entries: BTreeMap<(usize, usize), u64>) -> Self {
        let entries = entries.into_iter().filter(|(_, b)| *b > 0).collect();
        Self {
            n,
            subject,
            entries,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subject(&self) -> BettiSubject {
        self.subject
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn projdim(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// `max (j - i)` over nonzero entries.
    pub fn reg(&self) -> usize {
        self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == i)
            .map(|(_, b)| b)
            .sum()
    }

    /// `β_{i,j}(I) = β_{i+1,j}(S/I)`, dropping `β_{0,0}(S/I)`.
    pub fn quotient_to_ideal(&self) -> Result<BettiTable> {
        if self.subject != BettiSubject::Quotient {
            return Err(Error::InvariantViolation("table is already an ideal table".into()));
        }
        let entries = self
            .entries
            .iter()
            .filter(|((i, _), _)| *i > 0)
            .map(|(&(i, j), &b)| ((i - 1, j), b))
            .collect();
        Ok(Self::new(self.n, BettiSubject::Ideal, entries))
    }

    pub fn ideal_to_quotient(&self) -> Result<BettiTable> {
        if self.subject != BettiSubject::Ideal {
            return Err(Error::InvariantViolation("table is already a quotient table".into()));
        }
        let mut entries: BTreeMap<_, _> = self
            .entries
            .iter()
            .map(|(&(i, j), &b)| ((i + 1, j), b))
            .collect();
        entries.insert((0, 0), 1);
        Ok(Self::new(self.n, BettiSubject::Quotient, entries))
    }

    /// Text diagram with one row per homological degree `i` and one column
    /// per shift `j - i`.
    pub fn diagram(&self) -> String {
        let max_i = self.projdim();
        let min_s = self.entries.keys().map(|&(i, j)| j - i).min().unwrap_or(0);
        let max_s = self.reg();
        let width = self
            .entries
            .values()
            .map(|b| b.to_string().len())
            .max()
            .unwrap_or(1)
            .max(max_s.to_string().len())
            .max(1);
        let label = max_i.to_string().len().max(3);
        let mut out = String::new();
        let _ = write!(out, "{:>label$} |", "i\\s");
        for s in min_s..=max_s {
            let _ = write!(out, " {s:>width$}");
        }
        out.push('\n');
        let _ = writeln!(out, "{}", "-".repeat(label + 2 + (max_s - min_s + 1) * (width + 1)));
        for i in 0..=max_i {
            let _ = write!(out, "{i:>label$} |");
            for s in min_s..=max_s {
                match self.entries.get(&(i, i + s)) {
                    Some(b) => {
                        let _ = write!(out, " {b:>width$}");
                    }
                    None => {
                        let _ = write!(out, " {:>width$}", ".");
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.diagram())
    }
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BettiTableWire {
            n: self.n,
            subject: self.subject,
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), &b)| [i as u64, j as u64, b])
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = BettiTableWire::deserialize(d)?;
        let entries = wire
            .entries
            .into_iter()
            .map(|[i, j, b]| ((i as usize, j as usize), b))
            .collect();
        Ok(Self::new(wire.n, wire.subject, entries))
    }
}

/// An extremal Betti number `β_{k,k+ℓ} = value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtremalBetti {
    pub k: usize,
    pub ell: usize,
    pub value: u64,
}

/// Exchange test: `x_j u / x_{m(u)} ∈ I` for every generator `u` and every
/// `j < m(u)` outside `supp(u)`.
pub fn is_squarefree_stable(ideal: &SqIdeal) -> bool {
    stability_failure(ideal).is_none()
}

fn stability_failure(ideal: &SqIdeal) -> Option<(SqMonomial, u32)> {
    for u in ideal.gens() {
        let m = u.max_index().expect("generators are not 1");
        let without_m = SqMonomial::from_sorted_unchecked(u.support()[..u.degree() - 1].to_vec());
        for j in 1..m {
            if u.contains_var(j) {
                continue;
            }
            let moved = without_m.times_var(j).expect("j not in support");
            if !ideal.contains(&moved) {
                return Some((u.clone(), j));
            }
        }
    }
    None
}

fn require_stable(ideal: &SqIdeal) -> Result<()> {
    match stability_failure(ideal) {
        None => Ok(()),
        Some((u, j)) => Err(Error::StabilityViolation(format!(
            "x{j}*{u}/x{} is not in the ideal",
            u.max_index().expect("nonunit")
        ))),
    }
}

/// Closed-form Betti table of a squarefree stable ideal:
/// `β_{i,i+j}(I) = Σ_{u ∈ G(I)_j} C(m(u) - j, i)`.
pub fn betti_table_stable(ideal: &SqIdeal) -> Result<BettiTable> {
    require_stable(ideal)?;
    let mut entries = BTreeMap::new();
    for u in ideal.gens() {
        let j = u.degree();
        let m = u.max_index()? as usize;
        for i in 0..=m - j {
            *entries.entry((i, i + j)).or_insert(0) += binomial(m - j, i) as u64;
        }
    }
    Ok(BettiTable::new(ideal.n(), BettiSubject::Ideal, entries))
}

/// Betti table of `S/M` for a squarefree monomial ideal `M` of
/// `K[x1..x_nvars]` given by generators; `M` may be zero.
pub fn quotient_betti_oracle(nvars: usize, gens: &[SqMonomial], ceiling: usize) -> Result<BettiTable> {
    if nvars > ceiling || nvars > koszul::HARD_LIMIT {
        return Err(Error::OracleTooLarge {
            size: nvars,
            ceiling: ceiling.min(koszul::HARD_LIMIT),
        });
    }
    if let Some(g) = gens.iter().find(|g| g.max_index().map_or(true, |m| m as usize > nvars)) {
        return Err(Error::InvalidIdeal(format!("generator {g} is not in {nvars} variables")));
    }
    let masks: Vec<u64> = gens.iter().map(SqMonomial::mask).collect();
    Ok(BettiTable::new(
        nvars,
        BettiSubject::Quotient,
        koszul::quotient_betti(nvars, &masks),
    ))
}

/// Betti table of `I` from Koszul homology of `A/I` over the rationals.
pub fn betti_table_oracle(ideal: &SqIdeal, ceiling: usize) -> Result<BettiTable> {
    quotient_betti_oracle(ideal.n(), ideal.gens(), ceiling)?.quotient_to_ideal()
}

/// Extremal Betti numbers read off the table by definition, sorted by `ell`.
pub fn extremal_betti(table: &BettiTable) -> Vec<ExtremalBetti> {
    let shifted: Vec<(usize, usize, u64)> = table
        .entries()
        .iter()
        .map(|(&(i, j), &b)| (i, j - i, b))
        .collect();
    let mut out: Vec<ExtremalBetti> = shifted
        .iter()
        .filter(|&&(k, ell, _)| {
            !shifted
                .iter()
                .any(|&(i, s, _)| i >= k && s >= ell && (i, s) != (k, ell))
        })
        .map(|&(k, ell, value)| ExtremalBetti { k, ell, value })
        .collect();
    out.sort_by_key(|e| e.ell);
    out
}

/// Extremal Betti numbers of a squarefree stable ideal from its generators:
/// `β_{k,k+ℓ}` is extremal iff `k + ℓ = max{m(u) : u ∈ G(I)_ℓ}` and
/// `m(u) < k + j` for every generator `u` of degree `j > ℓ`; its value counts
/// the degree-`ℓ` generators with `m(u) = k + ℓ`.
pub fn extremal_betti_from_generators(ideal: &SqIdeal) -> Result<Vec<ExtremalBetti>> {
    require_stable(ideal)?;
    let mut by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for u in ideal.gens() {
        by_degree
            .entry(u.degree())
            .or_default()
            .push(u.max_index()? as usize);
    }
    let mut out = Vec::new();
    for (&ell, ms) in &by_degree {
        let top = *ms.iter().max().expect("nonempty degree");
        let k = top - ell;
        let dominated = by_degree
            .range(ell + 1..)
            .any(|(&j, higher)| higher.iter().any(|&m| m >= k + j));
        if !dominated {
            let value = ms.iter().filter(|&&m| m == top).count() as u64;
            out.push(ExtremalBetti { k, ell, value });
        }
    }
    Ok(out)
}

/// Both extremal routes, required to agree.
pub fn extremal_betti_checked(ideal: &SqIdeal, table: &BettiTable) -> Result<Vec<ExtremalBetti>> {
    let scanned = extremal_betti(table);
    let combinatorial = extremal_betti_from_generators(ideal)?;
    if scanned != combinatorial {
        return Err(Error::InvariantViolation(format!(
            "extremal Betti numbers disagree: table scan {scanned:?}, generators {combinatorial:?}"
        )));
    }
    Ok(scanned)
}

/// Invariants of a universal squarefree lexsegment ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UsliInvariants {
    pub projdim: usize,
    pub reg: usize,
    pub depth_of_quotient: usize,
    pub unique_extremal: ExtremalBetti,
}

/// `projdim = |G(I)| - 1`, `reg = d_t`, `depth A/I = n - |G(I)|`, and the
/// single extremal Betti number `β_{R_{d_t}-1-d_t, R_{d_t}-1} = 1`.
pub fn usli_invariants(ideal: &SqIdeal) -> Result<UsliInvariants> {
    if !is_usli_structural(ideal) {
        return Err(Error::Classification(format!("{ideal} is not an USLI")));
    }
    let ds = DegreeSequence::of_ideal(ideal);
    let top = ds.top_degree();
    let r = compute_r_profile(&ds);
    let q = ideal.num_gens();
    Ok(UsliInvariants {
        projdim: q - 1,
        reg: top,
        depth_of_quotient: ideal.n() - q,
        unique_extremal: ExtremalBetti {
            k: r.get(top) - 1 - top,
            ell: top,
            value: 1,
        },
    })
}

/// Regularity of a squarefree stable ideal: its largest generator degree.
pub fn reg_stable(ideal: &SqIdeal) -> Result<usize> {
    require_stable(ideal)?;
    Ok(ideal.max_degree())
}
