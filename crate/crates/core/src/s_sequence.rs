//! Relations of the symmetric algebra of a monomial ideal, annihilator
//! ideals, and the s-sequence test.
//!
//! For generators `f_1 > ... > f_q` the relation ideal `J` of `Sym(I)` in
//! `K[x1..xn, t1..tq]` is generated by `g_ij = f_ij t_j - f_ji t_i` with
//! `f_ij = f_i / gcd(f_i, f_j)`. The sequence is an s-sequence when the
//! initial ideal of `J` is `(I_1 t_1, ..., I_q t_q)`, where `I_i` is the colon
//! ideal `(f_1, ..., f_{i-1}) : f_i`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{self, EngineLimits};
use crate::ideal::{minimalize, SqIdeal};
use crate::lexsegment::{binomial, lexsegment_prefix};
use crate::monomial::{colon_quotient, MixedMonomial, SqMonomial, TermOrder};
use crate::polynomial::MixedPolynomial;

/// Monomial generators in the fixed order `f_1 > f_2 > ... > f_q` (hslex).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSequence {
    n: usize,
    gens: Vec<SqMonomial>,
    reordered: bool,
}

impl GeneratorSequence {
    /// Sorts `gens` descending and records whether that changed their order.
    pub fn new(n: usize, gens: Vec<SqMonomial>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::DegenerateSequence("empty sequence".into()));
        }
        for g in &gens {
            if g.is_one() {
                return Err(Error::DegenerateSequence("the unit monomial".into()));
            }
            if g.max_index()? as usize > n {
                return Err(Error::DegenerateSequence(format!("{g} is not in {n} variables")));
            }
        }
        let mut sorted = gens.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DegenerateSequence(format!("{} repeated", w[0])));
        }
        for a in &sorted {
            if let Some(b) = sorted.iter().find(|b| *b != a && b.divides(a)) {
                return Err(Error::DegenerateSequence(format!("{b} divides {a}")));
            }
        }
        let reordered = sorted != gens;
        Ok(Self {
            n,
            gens: sorted,
            reordered,
        })
    }

    pub fn from_ideal(ideal: &SqIdeal) -> Self {
        Self {
            n: ideal.n(),
            gens: ideal.gens().to_vec(),
            reordered: false,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.gens.len()
    }

    pub fn gens(&self) -> &[SqMonomial] {
        &self.gens
    }

    /// Whether the input had to be re-sorted.
    pub fn reordered(&self) -> bool {
        self.reordered
    }

    /// `f_ij` with 1-based indices.
    pub fn quotient(&self, i: usize, j: usize) -> SqMonomial {
        colon_quotient(&self.gens[i - 1], &self.gens[j - 1]).expect("distinct generators")
    }
}

/// The colon ideals `I_1, ..., I_q`, each by minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorIdeals {
    pub ideals: Vec<Vec<SqMonomial>>,
}

impl AnnihilatorIdeals {
    /// `I_i`, 1-based.
    pub fn get(&self, i: usize) -> &[SqMonomial] {
        &self.ideals[i - 1]
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    /// `I_1 ⊆ I_2 ⊆ ... ⊆ I_q`.
    pub fn is_chain(&self) -> bool {
        self.ideals.windows(2).all(|w| contained(&w[0], &w[1]))
    }

    /// Whether every `I_i` is generated by variables.
    pub fn is_variable_generated(&self) -> bool {
        self.ideals.iter().flatten().all(|m| m.degree() == 1)
    }

    /// Variable indices generating `I_i`, or `None` if some generator is not a
    /// variable.
    pub fn variables(&self, i: usize) -> Option<Vec<u32>> {
        self.get(i)
            .iter()
            .map(|m| (m.degree() == 1).then(|| m.support()[0]))
            .collect()
    }
}

impl fmt::Display for AnnihilatorIdeals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, gens) in self.ideals.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "I{} = (", k + 1)?;
            if gens.is_empty() {
                f.write_str("0")?;
            }
            for (g, m) in gens.iter().enumerate() {
                if g > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{m}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Every generator of `small` is divisible by a generator of `big`.
fn contained(small: &[SqMonomial], big: &[SqMonomial]) -> bool {
    small.iter().all(|u| big.iter().any(|v| v.divides(u)))
}

pub fn annihilator_ideals(seq: &GeneratorSequence) -> AnnihilatorIdeals {
    let ideals = (1..=seq.q())
        .map(|i| {
            let quotients: Vec<SqMonomial> = (1..i).map(|k| seq.quotient(k, i)).collect();
            if quotients.is_empty() {
                Vec::new()
            } else {
                let mut m = minimalize(quotients);
                m.sort_by(|a, b| b.cmp(a));
                m
            }
        })
        .collect();
    AnnihilatorIdeals { ideals }
}

/// A pair `f_ij`, `f_hl` (`i < j`, `h < l`, `i != h`, `j != l`) with a common
/// factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimalityViolation {
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub common: SqMonomial,
}

pub fn coprimality_violations(seq: &GeneratorSequence) -> Vec<CoprimalityViolation> {
    let q = seq.q();
    let mut out = Vec::new();
    for i in 1..=q {
        for j in i + 1..=q {
            let fij = seq.quotient(i, j);
            for h in 1..=q {
                for l in h + 1..=q {
                    if i == h || j == l {
                        continue;
                    }
                    let common = fij.gcd(&seq.quotient(h, l));
                    if !common.is_one() {
                        out.push(CoprimalityViolation {
                            first: (i, j),
                            second: (h, l),
                            common,
                        });
                    }
                }
            }
        }
    }
    out
}

pub fn pairwise_coprime(seq: &GeneratorSequence) -> bool {
    coprimality_violations(seq).is_empty()
}

/// The binomial generators of `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationIdeal {
    pub n: usize,
    pub q: usize,
    /// `((i, j), g_ij)` for `i < j`, lexicographic in `(i, j)`.
    pub generators: Vec<((usize, usize), MixedPolynomial)>,
}

impl PresentationIdeal {
    pub fn polynomials(&self) -> Vec<MixedPolynomial> {
        self.generators.iter().map(|(_, g)| g.clone()).collect()
    }
}

pub fn presentation(seq: &GeneratorSequence) -> PresentationIdeal {
    let (n, q) = (seq.n(), seq.q());
    let mut generators = Vec::with_capacity(q * q.saturating_sub(1) / 2);
    for i in 1..=q {
        for j in i + 1..=q {
            let lead = MixedMonomial::from_sq_times_t(&seq.quotient(i, j), j, n, q);
            let tail = MixedMonomial::from_sq_times_t(&seq.quotient(j, i), i, n, q);
            generators.push(((i, j), MixedPolynomial::binomial(lead, tail)));
        }
    }
    PresentationIdeal { n, q, generators }
}

/// Whether the `g_ij` already form a Gröbner basis of `J`.
pub fn s_pair_reduction_test(p: &PresentationIdeal, ord: TermOrder) -> Result<bool> {
    groebner::all_s_pairs_reduce(&p.polynomials(), ord)
}

/// Reduced Gröbner basis of `J`.
pub fn buchberger(
    p: &PresentationIdeal,
    ord: TermOrder,
    limits: EngineLimits,
) -> Result<Vec<MixedPolynomial>> {
    if p.n + p.q > limits.max_vars {
        return Err(Error::EngineTooLarge(format!(
            "{} variables exceed the ceiling of {}",
            p.n + p.q,
            limits.max_vars
        )));
    }
    groebner::reduced_groebner_basis(&p.polynomials(), ord, limits)
}

/// The monomials `m t_i`, `m` a generator of `I_i`.
pub fn expected_initial_ideal(seq: &GeneratorSequence, ann: &AnnihilatorIdeals) -> Vec<MixedMonomial> {
    let mut out = Vec::new();
    for (k, gens) in ann.ideals.iter().enumerate() {
        for m in gens {
            out.push(MixedMonomial::from_sq_times_t(m, k + 1, seq.n(), seq.q()));
        }
    }
    out
}

fn minimal_monomials(ms: &[MixedMonomial]) -> Vec<MixedMonomial> {
    let mut out: Vec<MixedMonomial> = Vec::new();
    for (k, m) in ms.iter().enumerate() {
        let redundant = ms
            .iter()
            .enumerate()
            .any(|(k2, m2)| k2 != k && m2.divides(m) && (m2 != m || k2 < k));
        if !redundant {
            out.push(m.clone());
        }
    }
    out.sort();
    out
}

/// Equality of two monomial ideals given by generators.
pub fn same_monomial_ideal(a: &[MixedMonomial], b: &[MixedMonomial]) -> bool {
    minimal_monomials(a) == minimal_monomials(b)
}

/// Outcome of the s-sequence test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSequenceVerdict {
    pub verdict: bool,
    /// The `g_ij` are a Gröbner basis.
    pub route_a: bool,
    /// The initial ideal of the reduced basis is `(I_1 t_1, ..., I_q t_q)`.
    pub route_b: bool,
    /// Annihilator ideals form a chain.
    pub strong: bool,
    pub reordered: bool,
    pub annihilators: AnnihilatorIdeals,
    pub basis: Vec<MixedPolynomial>,
}

impl SSequenceVerdict {
    pub fn basis_size(&self) -> usize {
        self.basis.len()
    }

    pub fn max_t_degree(&self) -> usize {
        self.basis.iter().map(MixedPolynomial::t_degree).max().unwrap_or(0)
    }
}

pub fn is_s_sequence(seq: &GeneratorSequence) -> Result<SSequenceVerdict> {
    is_s_sequence_with(seq, TermOrder::MixedLex, EngineLimits::default())
}

/// Runs both routes under `ord` and fails if they disagree.
pub fn is_s_sequence_with(
    seq: &GeneratorSequence,
    ord: TermOrder,
    limits: EngineLimits,
) -> Result<SSequenceVerdict> {
    let annihilators = annihilator_ideals(seq);
    let p = presentation(seq);
    let route_a = s_pair_reduction_test(&p, ord)?;
    let basis = buchberger(&p, ord, limits)?;
    let initial = groebner::leading_monomials(&basis, ord)?;
    let route_b = same_monomial_ideal(&initial, &expected_initial_ideal(seq, &annihilators));
    if route_a != route_b {
        return Err(Error::InvariantViolation(format!(
            "S-pair test says {route_a}, initial-ideal comparison says {route_b} for {:?}",
            seq.gens()
        )));
    }
    Ok(SSequenceVerdict {
        verdict: route_a,
        route_a,
        route_b,
        strong: annihilators.is_chain(),
        reordered: seq.reordered(),
        annihilators,
        basis,
    })
}

/// The verdict on one prefix of a degree-`d` sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixVerdict {
    pub d: usize,
    pub n: usize,
    pub q: usize,
    pub verdict: bool,
    pub expected: bool,
}

/// Verdicts on the lexsegment prefixes of length `1..C(n,d)` (the full
/// Veronese excluded), compared with `q <= n - d + 2`.
pub fn prefix_sweep(d: usize, n: usize) -> Result<Vec<PrefixVerdict>> {
    if d < 1 || d > n {
        return Err(Error::Range(format!("degree {d} not in 1..={n}")));
    }
    let total = binomial(n, d);
    let qs: Vec<usize> = if total == 1 { vec![1] } else { (1..total).collect() };
    qs.into_par_iter()
        .map(|q| {
            let seq = GeneratorSequence::from_ideal(&lexsegment_prefix(d, q, n)?);
            Ok(PrefixVerdict {
                d,
                n,
                q,
                verdict: is_s_sequence(&seq)?.verdict,
                expected: q + d <= n + 2,
            })
        })
        .collect()
}

/// Whether every proper prefix is an s-sequence exactly when it has at most
/// `n - d + 2` generators.
pub fn theorem_t_star_check(d: usize, n: usize) -> Result<bool> {
    Ok(prefix_sweep(d, n)?.iter().all(|v| v.verdict == v.expected))
}

/// Verdict on all squarefree monomials of degree `d` in `n` variables.
pub fn veronese_is_s_sequence(d: usize, n: usize) -> Result<bool> {
    let seq = GeneratorSequence::from_ideal(&lexsegment_prefix(d, binomial(n, d), n)?);
    Ok(is_s_sequence(&seq)?.verdict)
}
