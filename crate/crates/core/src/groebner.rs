//! Buchberger's algorithm over `Q` in `K[x1..xn, t1..tq]`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::{MixedMonomial, TermOrder};
use crate::polynomial::MixedPolynomial;

/// Size limits for one Buchberger run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineLimits {
    /// Largest `n + q` accepted.
    pub max_vars: usize,
    /// Largest intermediate basis before giving up.
    pub max_basis: usize,
}

impl Default for EngineLimits {
    fn default() -> Self {
        Self {
            max_vars: 40,
            max_basis: 4000,
        }
    }
}

/// Terms sorted descending under the order; the leading term comes first.
#[derive(Clone, Debug)]
struct Poly {
    terms: Vec<(MixedMonomial, BigRational)>,
}

impl Poly {
    fn from_mixed(p: &MixedPolynomial, ord: TermOrder) -> Self {
        let mut terms: Vec<_> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| ord.cmp_unchecked(&b.0, &a.0));
        Self { terms }
    }

    fn to_mixed(&self) -> MixedPolynomial {
        MixedPolynomial::from_terms(self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &MixedMonomial {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        if let Some(lc) = self.terms.first().map(|t| t.1.clone()) {
            if !lc.is_one() {
                for t in &mut self.terms {
                    t.1 /= &lc;
                }
            }
        }
    }

    /// `self - c * m * g`.
    fn sub_scaled(&self, c: &BigRational, m: &MixedMonomial, g: &Poly, ord: TermOrder) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).peekable();
        loop {
            let step = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => ord.cmp_unchecked(&x.0, &y.0),
            };
            match step {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let (ym, yc) = b.next().unwrap();
                    out.push((ym, -yc));
                }
                Ordering::Equal => {
                    let (xm, xc) = a.next().unwrap();
                    let (_, yc) = b.next().unwrap();
                    let c = xc - yc;
                    if !c.is_zero() {
                        out.push((xm.clone(), c));
                    }
                }
            }
        }
        Poly { terms: out }
    }
}

fn s_poly(f: &Poly, g: &Poly, ord: TermOrder) -> Poly {
    let l = f.lead().lcm(g.lead());
    let mf = l.div(f.lead());
    let mg = l.div(g.lead());
    // (l/lt f) f - (l/lt g) g, with f and g scaled to monic leads
    let mut left = Poly { terms: Vec::new() };
    left = left.sub_scaled(&(-f.terms[0].1.recip()), &mf, f, ord);
    left.sub_scaled(&g.terms[0].1.recip(), &mg, g, ord)
}

/// Full reduction: no term of the result is divisible by a leading monomial
/// of `basis`.
fn reduce(f: &Poly, basis: &[Poly], ord: TermOrder) -> Poly {
    let mut rest = f.clone();
    let mut done: Vec<(MixedMonomial, BigRational)> = Vec::new();
    while let Some((m, c)) = rest.terms.first().cloned() {
        match basis.iter().find(|g| g.lead().divides(&m)) {
            Some(g) => {
                let factor = c / &g.terms[0].1;
                rest = rest.sub_scaled(&factor, &m.div(g.lead()), g, ord);
            }
            None => {
                done.push((m, c));
                rest.terms.remove(0);
            }
        }
    }
    Poly { terms: done }
}

fn check_order(ord: TermOrder) -> Result<()> {
    if ord.is_mixed() {
        Ok(())
    } else {
        Err(Error::WrongOrderKind(ord.name()))
    }
}

fn convert(gens: &[MixedPolynomial], ord: TermOrder) -> Vec<Poly> {
    gens.iter()
        .filter(|g| !g.is_zero())
        .map(|g| Poly::from_mixed(g, ord))
        .collect()
}

/// S-polynomial of two nonzero polynomials, with monic leading parts.
pub fn s_polynomial(
    f: &MixedPolynomial,
    g: &MixedPolynomial,
    ord: TermOrder,
) -> Result<MixedPolynomial> {
    check_order(ord)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::InvalidIdeal("S-polynomial of zero".into()));
    }
    Ok(s_poly(&Poly::from_mixed(f, ord), &Poly::from_mixed(g, ord), ord).to_mixed())
}

/// Remainder of `f` under full division by `basis`.
pub fn normal_form(
    f: &MixedPolynomial,
    basis: &[MixedPolynomial],
    ord: TermOrder,
) -> Result<MixedPolynomial> {
    check_order(ord)?;
    Ok(reduce(&Poly::from_mixed(f, ord), &convert(basis, ord), ord).to_mixed())
}

/// True when every S-polynomial of a pair of `gens` reduces to zero against
/// `gens` itself, i.e. `gens` is already a Gröbner basis. No pair is skipped.
pub fn all_s_pairs_reduce(gens: &[MixedPolynomial], ord: TermOrder) -> Result<bool> {
    check_order(ord)?;
    let basis = convert(gens, ord);
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !reduce(&s_poly(&basis[i], &basis[j], ord), &basis, ord).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn total_degree(m: &MixedMonomial) -> usize {
    m.x_degree() + m.t_degree()
}

/// Reduced Gröbner basis: monic, interreduced, sorted by leading monomial
/// descending.
pub fn reduced_groebner_basis(
    gens: &[MixedPolynomial],
    ord: TermOrder,
    limits: EngineLimits,
) -> Result<Vec<MixedPolynomial>> {
    check_order(ord)?;
    if let Some(g) = gens.first() {
        let nvars = g.terms().next().map(|(m, _)| m.n() + m.q()).unwrap_or(0);
        if nvars > limits.max_vars {
            return Err(Error::EngineTooLarge(format!(
                "{nvars} variables exceed the ceiling of {}",
                limits.max_vars
            )));
        }
    }
    let mut basis: Vec<Poly> = convert(gens, ord);
    for g in &mut basis {
        g.make_monic();
    }

    // pending pairs keyed by (degree of lcm, i, j)
    let mut pending: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    let pair_key = |basis: &[Poly], i: usize, j: usize| {
        (total_degree(&basis[i].lead().lcm(basis[j].lead())), i, j)
    };
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert(pair_key(&basis, i, j));
        }
    }
    let is_pending = |pending: &BTreeSet<(usize, usize, usize)>, basis: &[Poly], a: usize, b: usize| {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        pending.contains(&pair_key(basis, i, j))
    };

    while let Some(key) = pending.pop_first() {
        let (_, i, j) = key;
        let (li, lj) = (basis[i].lead(), basis[j].lead());
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().divides(&l)
                && !is_pending(&pending, &basis, i, k)
                && !is_pending(&pending, &basis, j, k)
        });
        if chain {
            continue;
        }
        let mut h = reduce(&s_poly(&basis[i], &basis[j], ord), &basis, ord);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        basis.push(h);
        if basis.len() > limits.max_basis {
            return Err(Error::EngineTooLarge(format!(
                "intermediate basis exceeds {} elements",
                limits.max_basis
            )));
        }
        let new = basis.len() - 1;
        for k in 0..new {
            pending.insert(pair_key(&basis, k, new));
        }
    }

    // drop elements whose lead is divisible by another lead, keeping one of equal leads
    let mut minimal: Vec<Poly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(k2, g2)| {
            k2 != k && g2.lead().divides(g.lead()) && (g2.lead() != g.lead() || k2 < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Poly> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(k2, _)| *k2 != k)
            .map(|(_, g)| g.clone())
            .collect();
        let head = Poly {
            terms: vec![minimal[k].terms[0].clone()],
        };
        let tail = Poly {
            terms: minimal[k].terms[1..].to_vec(),
        };
        let mut g = reduce(&tail, &others, ord);
        g.terms.insert(0, head.terms[0].clone());
        g.make_monic();
        reduced.push(g);
    }
    reduced.sort_by(|a, b| ord.cmp_unchecked(b.lead(), a.lead()));
    Ok(reduced.iter().map(Poly::to_mixed).collect())
}

/// Leading monomials of a list of polynomials.
pub fn leading_monomials(basis: &[MixedPolynomial], ord: TermOrder) -> Result<Vec<MixedMonomial>> {
    let mut out = Vec::with_capacity(basis.len());
    for g in basis {
        if let Some(m) = g.leading_monomial(ord)? {
            out.push(m);
        }
    }
    Ok(out)
}
