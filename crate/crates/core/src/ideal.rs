//! Squarefree monomial ideals of `K[x1..xn]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{parse_sq_monomial, SqMonomial};

/// A proper nonzero squarefree monomial ideal, stored by its minimal
/// generators sorted descending in hslex order.
#[derive(Clone)]
pub struct SqIdeal {
    n: usize,
    gens: Vec<SqMonomial>,
    input_was_minimal: bool,
}

// equality ignores how the ideal was written down
impl PartialEq for SqIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.gens == other.gens
    }
}

impl Eq for SqIdeal {}

impl std::hash::Hash for SqIdeal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.gens.hash(state);
    }
}

/// Wire form: `{ "n": 4, "generators": ["x1*x2", "x1*x3*x4"] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSpec {
    pub n: usize,
    pub generators: Vec<SqMonomial>,
}

impl SqIdeal {
    /// Minimalizes `gens` and validates them against the ambient ring.
    pub fn new(n: usize, gens: Vec<SqMonomial>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidIdeal("the zero ideal is not allowed".into()));
        }
        for g in &gens {
            if g.is_one() {
                return Err(Error::InvalidIdeal("the unit ideal is not allowed".into()));
            }
            let m = g.max_index()? as usize;
            if m > n {
                return Err(Error::InvalidIdeal(format!(
                    "generator {g} uses x{m} but the ring has {n} variables"
                )));
            }
        }
        let before = gens.len();
        let minimal = minimalize(gens);
        let input_was_minimal = minimal.len() == before;
        Ok(Self {
            n,
            gens: minimal,
            input_was_minimal,
        })
    }

    /// Parses a comma-separated generator list such as `x1*x2, x1*x3*x4`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        let mut col = 1;
        for piece in text.split(',') {
            gens.push(parse_sq_monomial(piece, col)?);
            col += piece.len() + 1;
        }
        Self::new(n, gens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Minimal generators, descending in hslex order.
    pub fn gens(&self) -> &[SqMonomial] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn input_was_minimal(&self) -> bool {
        self.input_was_minimal
    }

    pub fn contains(&self, u: &SqMonomial) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }

    /// Generator count per degree.
    pub fn degree_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for g in &self.gens {
            *counts.entry(g.degree()).or_insert(0) += 1;
        }
        counts
    }

    pub fn gens_of_degree(&self, d: usize) -> impl Iterator<Item = &SqMonomial> {
        self.gens.iter().filter(move |g| g.degree() == d)
    }

    pub fn max_degree(&self) -> usize {
        self.gens.iter().map(SqMonomial::degree).max().unwrap_or(0)
    }

    pub fn is_equigenerated(&self) -> bool {
        self.gens.iter().all(|g| g.degree() == self.gens[0].degree())
    }

    /// The same generators read in `K[x1..x_{n+m}]`.
    pub fn extend(&self, m: usize) -> Self {
        Self {
            n: self.n + m,
            gens: self.gens.clone(),
            input_was_minimal: self.input_was_minimal,
        }
    }

    /// Drops the hslex-smallest generator, if at least two remain.
    pub fn without_smallest(&self) -> Option<Self> {
        if self.gens.len() < 2 {
            return None;
        }
        Some(Self {
            n: self.n,
            gens: self.gens[..self.gens.len() - 1].to_vec(),
            input_was_minimal: true,
        })
    }

    pub fn to_spec(&self) -> IdealSpec {
        IdealSpec {
            n: self.n,
            generators: self.gens.clone(),
        }
    }

    pub fn from_spec(spec: IdealSpec) -> Result<Self> {
        Self::new(spec.n, spec.generators)
    }
}

/// Keeps only monomials not divisible by another one of the list, sorted
/// descending in hslex.
pub(crate) fn minimalize(mut by_degree: Vec<SqMonomial>) -> Vec<SqMonomial> {
    // a proper divisor has smaller degree
    by_degree.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    by_degree.dedup();
    let mut kept: Vec<SqMonomial> = Vec::new();
    for g in by_degree {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_by(|a, b| b.cmp(a));
    kept
}

impl fmt::Display for SqIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ") in {} variables", self.n)
    }
}

impl fmt::Debug for SqIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SqIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SqIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = IdealSpec::deserialize(d)?;
        Self::from_spec(spec).map_err(serde::de::Error::custom)
    }
}
