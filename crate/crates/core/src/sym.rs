//! Krull dimension, multiplicity, regularity and depth of the symmetric
//! algebra of an equigenerated universal or almost universal lexsegment ideal.
//!
//! Besides the closed forms there are three independent computations, all
//! working from the annihilator ideals `I_1, ..., I_q`:
//!
//! * a sum over index subsets of `dim A/(I_{i_1} + ... + I_{i_r}) + r`,
//!   valid when every `I_i` is generated by variables;
//! * the facets of the simplicial complex whose nonfaces are the generators
//!   of `(I_1 t_1, ..., I_q t_q)`;
//! * Koszul homology of `K[x, t]/(I_1 t_1, ..., I_q t_q)`.
//!
//! Every variable of `K[x, t]` has degree one.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::SqIdeal;
use crate::lexsegment::{is_ausli, is_lexsegment, is_usli_structural};
use crate::monomial::SqMonomial;
use crate::resolution::{quotient_betti_oracle, BettiTable};
use crate::s_sequence::{AnnihilatorIdeals, SSequenceVerdict};

/// Default largest `n + q` for [`facet_oracle`].
pub const DEFAULT_FACET_CEILING: usize = 14;
/// Default largest `n + q` for [`sym_homological_oracle`].
pub const DEFAULT_HOMOLOGICAL_CEILING: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymSource {
    ClosedForm,
    HrtFormula,
    FacetOracle,
    TorOracle,
}

impl fmt::Display for SymSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymSource::ClosedForm => "closed_form",
            SymSource::HrtFormula => "hrt_formula",
            SymSource::FacetOracle => "facet_oracle",
            SymSource::TorOracle => "tor_oracle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymReport {
    pub dim: usize,
    pub multiplicity: u64,
    pub reg: Option<usize>,
    pub depth: Option<usize>,
    pub source: SymSource,
}

impl SymReport {
    /// Same dimension and multiplicity.
    pub fn agrees_on_dim_and_multiplicity(&self, other: &SymReport) -> bool {
        self.dim == other.dim && self.multiplicity == other.multiplicity
    }
}

/// Which closed form applies to an ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymClass {
    Usli,
    Ausli,
}

pub fn classify_for_sym(ideal: &SqIdeal) -> Result<SymClass> {
    if !ideal.is_equigenerated() {
        return Err(Error::Classification(
            "symmetric algebra formulas need an equigenerated ideal".into(),
        ));
    }
    if is_lexsegment(ideal) && is_usli_structural(ideal) {
        return Ok(SymClass::Usli);
    }
    if ideal.num_gens() >= 2 && is_ausli(ideal)? {
        return Ok(SymClass::Ausli);
    }
    Err(Error::Classification(
        "ideal is neither a universal nor an almost universal lexsegment ideal".into(),
    ))
}

pub fn sym_closed_form(ideal: &SqIdeal) -> Result<SymReport> {
    let n = ideal.n();
    let q = ideal.num_gens() as u64;
    Ok(match classify_for_sym(ideal)? {
        SymClass::Usli => SymReport {
            dim: n + 1,
            multiplicity: q,
            reg: Some(1),
            depth: Some(n + 1),
            source: SymSource::ClosedForm,
        },
        SymClass::Ausli => SymReport {
            dim: n + 1,
            multiplicity: 2 * q - 2,
            reg: None,
            depth: None,
            source: SymSource::ClosedForm,
        },
    })
}

/// Maximum of `n - |vars(I_{i_1} + ... + I_{i_r})| + r` over nonempty index
/// sets, and the number of index sets attaining it.
pub fn sym_hrt_formula(n: usize, ann: &AnnihilatorIdeals) -> Result<SymReport> {
    let q = ann.len();
    if q == 0 || q > 24 {
        return Err(Error::UnsupportedOracle(format!("{q} annihilator ideals")));
    }
    let var_masks: Vec<u64> = (1..=q)
        .map(|i| {
            ann.variables(i)
                .map(|vs| vs.iter().fold(0u64, |acc, &v| acc | 1 << (v - 1)))
                .ok_or_else(|| {
                    Error::UnsupportedOracle(format!("I_{i} is not generated by variables"))
                })
        })
        .collect::<Result<_>>()?;
    let (dim, count) = (1u64..1 << q)
        .into_par_iter()
        .map(|subset| {
            let (union, r) = (0..q)
                .filter(|k| subset >> k & 1 == 1)
                .fold((0u64, 0usize), |(u, r), k| (u | var_masks[k], r + 1));
            (n - union.count_ones() as usize + r, 1u64)
        })
        .reduce(
            || (0, 0),
            |a, b| match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => b,
                std::cmp::Ordering::Greater => a,
                std::cmp::Ordering::Equal => (a.0, a.1 + b.1),
            },
        );
    Ok(SymReport {
        dim,
        multiplicity: count,
        reg: None,
        depth: None,
        source: SymSource::HrtFormula,
    })
}

/// Generators of `(I_1 t_1, ..., I_q t_q)` as squarefree monomials in
/// `n + q` variables, `t_i` being variable `n + i`.
pub fn initial_ideal_generators(n: usize, ann: &AnnihilatorIdeals) -> Vec<SqMonomial> {
    let mut out = Vec::new();
    for (k, gens) in ann.ideals.iter().enumerate() {
        for m in gens {
            out.push(m.times_var((n + k + 1) as u32).expect("t variable is new"));
        }
    }
    out
}

/// Simplicial complex on `x_1..x_n, t_1..t_q` (bits `0..n+q`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetComplex {
    pub vertices: usize,
    pub nonfaces: Vec<u64>,
    pub facets: Vec<u64>,
}

impl FacetComplex {
    pub fn new(vertices: usize, nonfaces: Vec<u64>) -> Self {
        let facets = maximal_faces(vertices, &nonfaces);
        Self {
            vertices,
            nonfaces,
            facets,
        }
    }

    pub fn is_face(&self, set: u64) -> bool {
        is_face(set, &self.nonfaces)
    }

    /// Largest facet size.
    pub fn dim(&self) -> usize {
        self.facets.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0)
    }

    /// Number of facets of the largest size.
    pub fn top_facets(&self) -> u64 {
        let d = self.dim();
        self.facets.iter().filter(|f| f.count_ones() as usize == d).count() as u64
    }
}

fn is_face(set: u64, nonfaces: &[u64]) -> bool {
    nonfaces.iter().all(|&g| g & set != g)
}

fn maximal_faces(vertices: usize, nonfaces: &[u64]) -> Vec<u64> {
    // vertex v is decided at depth v; a partial face containing a nonface is cut
    fn search(v: usize, vertices: usize, face: u64, nonfaces: &[u64], out: &mut Vec<u64>) {
        if v == vertices {
            let maximal = (0..vertices).all(|w| face >> w & 1 == 1 || !is_face(face | 1 << w, nonfaces));
            if maximal {
                out.push(face);
            }
            return;
        }
        let with = face | 1 << v;
        if is_face(with, nonfaces) {
            search(v + 1, vertices, with, nonfaces, out);
        }
        search(v + 1, vertices, face, nonfaces, out);
    }
    let split = vertices.min(3);
    let mut facets: Vec<u64> = (0u64..1 << split)
        .into_par_iter()
        .filter(|&prefix| is_face(prefix, nonfaces))
        .flat_map_iter(|prefix| {
            let mut out = Vec::new();
            search(split, vertices, prefix, nonfaces, &mut out);
            out
        })
        .collect();
    facets.sort_unstable();
    facets
}

/// Dimension and multiplicity of `K[x, t]/(I_1 t_1, ..., I_q t_q)` from its
/// facets. The verdict must confirm the sequence is an s-sequence, so that
/// this ring has the same invariants as the symmetric algebra.
pub fn facet_oracle(n: usize, verdict: &SSequenceVerdict, ceiling: usize) -> Result<SymReport> {
    if !verdict.verdict {
        return Err(Error::UnsupportedOracle(
            "the initial ideal is not generated by the annihilator ideals".into(),
        ));
    }
    let ann = &verdict.annihilators;
    let vertices = n + ann.len();
    if vertices > ceiling || vertices > 63 {
        return Err(Error::OracleTooLarge {
            size: vertices,
            ceiling,
        });
    }
    let nonfaces = initial_ideal_generators(n, ann).iter().map(SqMonomial::mask).collect();
    let complex = FacetComplex::new(vertices, nonfaces);
    Ok(SymReport {
        dim: complex.dim(),
        multiplicity: complex.top_facets(),
        reg: None,
        depth: None,
        source: SymSource::FacetOracle,
    })
}

/// Krull dimension and multiplicity from the numerator
/// `sum (-1)^i β_{i,j} t^j` of the Hilbert series of a quotient table.
pub fn dim_and_multiplicity(table: &BettiTable) -> Result<(usize, u64)> {
    let top = table.entries().keys().map(|&(_, j)| j).max().unwrap_or(0);
    let mut numerator = vec![0i128; top + 1];
    for (&(i, j), &b) in table.entries() {
        let b = b as i128;
        numerator[j] += if i % 2 == 0 { b } else { -b };
    }
    // divide by (1 - t) while it still divides
    let mut factors = 0;
    while numerator.iter().sum::<i128>() == 0 {
        if numerator.iter().all(|&c| c == 0) {
            return Err(Error::InvariantViolation("zero Hilbert numerator".into()));
        }
        let mut quotient = vec![0i128; numerator.len() - 1];
        let mut acc = 0;
        for (k, c) in numerator.iter().take(numerator.len() - 1).enumerate() {
            acc += c;
            quotient[k] = acc;
        }
        numerator = quotient;
        factors += 1;
    }
    let e: i128 = numerator.iter().sum();
    if e <= 0 || factors > table.n() {
        return Err(Error::InvariantViolation(format!(
            "bad Hilbert numerator: multiplicity {e}, {factors} factors"
        )));
    }
    Ok((table.n() - factors, e as u64))
}

/// Homological invariants of `K[x, t]/(I_1 t_1, ..., I_q t_q)` and what they
/// certify about the symmetric algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologicalReport {
    /// `reg` and `depth` of the initial-ideal quotient.
    pub report: SymReport,
    /// `reg(Sym)` when the upper bound from the initial ideal meets the lower
    /// bound `1` from the degree-two relations.
    pub certified_reg: Option<usize>,
    /// `depth(Sym)` when the lower bound from the initial ideal meets `dim`.
    pub certified_depth: Option<usize>,
    pub cohen_macaulay: bool,
}

pub fn sym_homological_oracle(
    n: usize,
    ann: &AnnihilatorIdeals,
    ceiling: usize,
) -> Result<HomologicalReport> {
    let vertices = n + ann.len();
    let table = quotient_betti_oracle(vertices, &initial_ideal_generators(n, ann), ceiling)?;
    let (dim, multiplicity) = dim_and_multiplicity(&table)?;
    let reg = table.reg();
    let depth = vertices - table.projdim();
    let has_relations = ann.ideals.iter().any(|gens| !gens.is_empty());
    Ok(HomologicalReport {
        report: SymReport {
            dim,
            multiplicity,
            reg: Some(reg),
            depth: Some(depth),
            source: SymSource::TorOracle,
        },
        certified_reg: (has_relations && reg == 1).then_some(1),
        certified_depth: (depth == dim).then_some(depth),
        cohen_macaulay: depth == dim,
    })
}
