//! Exact-rational polynomials in `K[x1..xn, t1..tq]`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::{MixedMonomial, TermOrder};

/// A polynomial as a map from monomials to nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MixedPolynomial {
    terms: BTreeMap<MixedMonomial, BigRational>,
}

impl MixedPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (MixedMonomial, BigRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// `a - b` for monomials `a`, `b`.
    pub fn binomial(a: MixedMonomial, b: MixedMonomial) -> Self {
        Self::from_terms([(a, BigRational::one()), (b, -BigRational::one())])
    }

    pub fn add_term(&mut self, m: MixedMonomial, c: BigRational) {
        let entry = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MixedMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &MixedMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms sorted descending under `ord`.
    pub fn sorted_terms(&self, ord: TermOrder) -> Result<Vec<(&MixedMonomial, &BigRational)>> {
        if !ord.is_mixed() {
            return Err(Error::WrongOrderKind(ord.name()));
        }
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp_unchecked(b.0, a.0));
        Ok(v)
    }

    pub fn leading_monomial(&self, ord: TermOrder) -> Result<Option<MixedMonomial>> {
        Ok(self.sorted_terms(ord)?.first().map(|(m, _)| (*m).clone()))
    }

    /// Largest T-degree among the terms.
    pub fn t_degree(&self) -> usize {
        self.terms.keys().map(MixedMonomial::t_degree).max().unwrap_or(0)
    }

    pub fn monic(&self, ord: TermOrder) -> Result<Self> {
        let lead = self.sorted_terms(ord)?.first().map(|(_, c)| (*c).clone());
        Ok(match lead {
            None => self.clone(),
            Some(lc) => Self {
                terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &lc)).collect(),
            },
        })
    }

    /// Text form `c*x..*t.. + c*x..*t..`, terms descending under `ord`.
    pub fn to_text(&self, ord: TermOrder) -> Result<String> {
        let terms = self.sorted_terms(ord)?;
        if terms.is_empty() {
            return Ok("0".into());
        }
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                let _ = write!(out, " {sign} ");
            }
            let _ = write!(out, "{}*{m}", c.abs());
            if m.is_one() {
                out.truncate(out.len() - 2);
            }
        }
        Ok(out)
    }
}
