//! Acceptance checks. Each criterion prints one `PASS`/`FAIL` line; the
//! process exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use usli_core::lexsegment::{
    binomial, generate_usli, is_ausli, is_lexsegment, is_usli_bruteforce, is_usli_structural,
    lexsegment_prefix, usli_bruteforce_failure,
};
use usli_core::resolution::{
    betti_table_oracle, betti_table_stable, extremal_betti, extremal_betti_from_generators,
    is_squarefree_stable, usli_invariants, ExtremalBetti,
};
use usli_core::s_sequence::{annihilator_ideals, is_s_sequence, prefix_sweep, veronese_is_s_sequence, GeneratorSequence};
use usli_core::sweep::{
    expected_annihilator_variables, feasible_degree_sequences, four_extremal_ideal,
    non_s_sequence_ideal, parse_mixed_monomial, reverse_t, NON_S_SEQUENCE_BASIS_REVERSED,
};
use usli_core::sym::{
    facet_oracle, sym_closed_form, sym_homological_oracle, sym_hrt_formula, DEFAULT_FACET_CEILING,
    DEFAULT_HOMOLOGICAL_CEILING,
};
use usli_core::{MixedMonomial, SqIdeal, SqMonomial};

type Outcome = Result<String, String>;

fn within(start: Instant, limit: Duration, detail: String) -> Outcome {
    let took = start.elapsed();
    if took <= limit {
        Ok(format!("{detail} in {took:.2?}"))
    } else {
        Err(format!("{detail}, but took {took:.2?} (limit {limit:?})"))
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn four_extremal_betti_numbers() -> Outcome {
    let start = Instant::now();
    let ideal = four_extremal_ideal();
    let expected: Vec<(usize, usize)> = vec![(5, 7), (4, 7), (3, 7), (2, 7)];
    let cells = |e: &[ExtremalBetti]| -> Vec<(usize, usize, u64)> {
        let mut v: Vec<_> = e.iter().map(|x| (x.k, x.k + x.ell, x.value)).collect();
        v.sort_by(|a, b| b.cmp(a));
        v
    };
    let want: Vec<(usize, usize, u64)> = expected.iter().map(|&(k, j)| (k, j, 1)).collect();
    let closed = betti_table_stable(&ideal).map_err(|e| e.to_string())?;
    let oracle = betti_table_oracle(&ideal, 7).map_err(|e| e.to_string())?;
    let from_closed = extremal_betti(&closed);
    let from_oracle = extremal_betti(&oracle);
    let from_gens = extremal_betti_from_generators(&ideal).map_err(|e| e.to_string())?;
    check(cells(&from_closed) == want, || format!("closed form gives {from_closed:?}"))?;
    check(cells(&from_oracle) == want, || format!("oracle gives {from_oracle:?}"))?;
    check(cells(&from_gens) == want, || format!("generator criterion gives {from_gens:?}"))?;
    check(closed == oracle, || "closed-form and oracle tables differ".into())?;
    within(start, Duration::from_secs(5), "four extremal Betti numbers of value 1 at (5,7), (4,7), (3,7), (2,7)".into())
}

fn two_degree_examples() -> Outcome {
    let start = Instant::now();
    let usli = SqIdeal::parse(4, "x1*x2, x1*x3*x4").map_err(|e| e.to_string())?;
    let ausli = SqIdeal::parse(4, "x1*x2, x1*x3*x4, x2*x3*x4").map_err(|e| e.to_string())?;
    check(is_usli_structural(&usli), || "first ideal is not classified USLI".into())?;
    check(is_usli_bruteforce(&usli, 3) == Ok(true), || "first ideal fails the extension check".into())?;
    check(is_lexsegment(&ausli), || "second ideal is not lexsegment".into())?;
    check(!is_usli_structural(&ausli), || "second ideal classified USLI".into())?;
    check(is_ausli(&ausli) == Ok(true), || "second ideal not classified AUSLI".into())?;
    let failure = usli_bruteforce_failure(&ausli, 1).map_err(|e| e.to_string())?;
    let witness: SqMonomial = "x1*x4*x5".parse().map_err(|e: usli_core::Error| e.to_string())?;
    match &failure {
        Some((1, v)) if v.is_witness(&ausli, &witness) => {}
        other => return Err(format!("extension failure {other:?} does not have witness x1*x4*x5 at m = 1")),
    }
    check(is_lexsegment(&ausli.extend(0)), || "m = 0 already fails".into())?;
    within(start, Duration::from_secs(1), "USLI and AUSLI classified; extension fails at m = 1 with witness x1*x4*x5".into())
}

fn prefix_s_sequence_sweep() -> Outcome {
    let start = Instant::now();
    let mut cells = 0;
    let mut mismatches = Vec::new();
    for n in 3..=6 {
        for d in 2..n {
            for v in prefix_sweep(d, n).map_err(|e| e.to_string())? {
                cells += 1;
                if v.verdict != (v.q <= n - d + 2) {
                    mismatches.push(format!("(n={n}, d={d}, q={}) s-sequence={}", v.q, v.verdict));
                }
            }
        }
    }
    if !mismatches.is_empty() {
        return Err(format!("{} of {cells} prefixes mismatch: {}", mismatches.len(), mismatches.join(", ")));
    }
    within(start, Duration::from_secs(600), format!("{cells} prefixes, zero mismatches"))
}

fn annihilator_closed_form() -> Outcome {
    let mut count = 0;
    for n in 2..=6 {
        for d in 1..=n {
            for q in 1..=(n + 2 - d).min(binomial(n, d)) {
                let ideal = lexsegment_prefix(d, q, n).map_err(|e| e.to_string())?;
                let usli = is_usli_structural(&ideal);
                let ausli = q >= 2 && is_ausli(&ideal).map_err(|e| e.to_string())?;
                if !usli && !ausli {
                    continue;
                }
                count += 1;
                let ann = annihilator_ideals(&GeneratorSequence::from_ideal(&ideal));
                for i in 1..=q {
                    let mut got = ann.variables(i).ok_or_else(|| format!("{ideal}: I_{i} not linear"))?;
                    got.sort_unstable();
                    let want = expected_annihilator_variables(d, n, q, i);
                    check(got == want, || format!("{ideal}: I_{i} = {got:?}, expected {want:?}"))?;
                }
            }
        }
    }
    Ok(format!("annihilator ideals match on {count} USLI/AUSLI prefixes"))
}

fn sym_dimension_and_multiplicity() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in 2..=6 {
        for d in 1..=n {
            for q in 1..=(n + 2 - d).min(binomial(n, d)) {
                let ideal = lexsegment_prefix(d, q, n).map_err(|e| e.to_string())?;
                let usli = is_usli_structural(&ideal);
                let ausli = !usli && q >= 2 && is_ausli(&ideal).map_err(|e| e.to_string())?;
                if !usli && !ausli {
                    continue;
                }
                count += 1;
                let want = (n + 1, if usli { q as u64 } else { 2 * q as u64 - 2 });
                let closed = sym_closed_form(&ideal).map_err(|e| e.to_string())?;
                let verdict = is_s_sequence(&GeneratorSequence::from_ideal(&ideal)).map_err(|e| e.to_string())?;
                let hrt = sym_hrt_formula(n, &verdict.annihilators).map_err(|e| e.to_string())?;
                let facets = facet_oracle(n, &verdict, DEFAULT_FACET_CEILING).map_err(|e| e.to_string())?;
                for r in [&closed, &hrt, &facets] {
                    check((r.dim, r.multiplicity) == want, || {
                        format!("{ideal}: {} gives ({}, {}), expected {want:?}", r.source, r.dim, r.multiplicity)
                    })?;
                }
            }
        }
    }
    within(start, Duration::from_secs(300), format!("closed form, subset formula and facets agree on {count} ideals"))
}

fn sym_regularity_and_depth() -> Outcome {
    let mut count = 0;
    for n in 2..=8 {
        for d in 1..=n {
            for q in 2..=(n + 1 - d) {
                if n + q > DEFAULT_HOMOLOGICAL_CEILING {
                    continue;
                }
                let ideal = lexsegment_prefix(d, q, n).map_err(|e| e.to_string())?;
                check(is_usli_structural(&ideal), || format!("{ideal} is not an USLI"))?;
                count += 1;
                let ann = annihilator_ideals(&GeneratorSequence::from_ideal(&ideal));
                let h = sym_homological_oracle(n, &ann, DEFAULT_HOMOLOGICAL_CEILING).map_err(|e| e.to_string())?;
                check(h.report.reg == Some(1), || format!("{ideal}: reg {:?}", h.report.reg))?;
                check(h.report.depth == Some(n + 1), || format!("{ideal}: depth {:?}", h.report.depth))?;
                check(h.cohen_macaulay && h.report.dim == n + 1, || format!("{ideal}: dim {}", h.report.dim))?;
            }
        }
    }
    Ok(format!("reg 1, depth n+1 = dim on {count} USLIs"))
}

fn veronese_and_non_s_sequence() -> Outcome {
    let d3 = veronese_is_s_sequence(3, 4).map_err(|e| e.to_string())?;
    let d2 = veronese_is_s_sequence(2, 4).map_err(|e| e.to_string())?;
    check(d3 && !d2, || format!("Veronese verdicts d=3: {d3}, d=2: {d2}"))?;
    let v = is_s_sequence(&GeneratorSequence::from_ideal(&non_s_sequence_ideal())).map_err(|e| e.to_string())?;
    check(!v.verdict, || "five-generator ideal accepted".into())?;
    let quadratic: Vec<_> = v.basis.iter().filter(|g| g.t_degree() == 2).collect();
    check(quadratic.len() == 1, || format!("{} basis elements of t-degree 2", quadratic.len()))?;
    // listed for the generators in increasing order, so t_i is read as t_{6-i}
    let (a, b) = NON_S_SEQUENCE_BASIS_REVERSED[6];
    let want: BTreeSet<MixedMonomial> = [a, b]
        .iter()
        .map(|s| parse_mixed_monomial(s, 4, 5).map(|m| reverse_t(&m)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let got: BTreeSet<MixedMonomial> = quadratic[0].terms().map(|(m, _)| m.clone()).collect();
    check(got == want, || format!("t-degree 2 element has support {got:?}"))?;
    let all: BTreeSet<BTreeSet<MixedMonomial>> = v
        .basis
        .iter()
        .map(|g| g.terms().map(|(m, _)| m.clone()).collect())
        .collect();
    let listed: BTreeSet<BTreeSet<MixedMonomial>> = NON_S_SEQUENCE_BASIS_REVERSED
        .iter()
        .map(|(a, b)| {
            [a, b]
                .iter()
                .map(|s| parse_mixed_monomial(s, 4, 5).map(|m| reverse_t(&m)))
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    check(all == listed, || format!("reduced basis supports {all:?}"))?;
    Ok(format!(
        "Veronese d=3 accepted, d=2 rejected; five-generator ideal rejected, t-degree 2 element {}",
        quadratic[0].to_text(usli_core::TermOrder::MixedLex).unwrap_or_default()
    ))
}

/// Smallest squarefree stable ideal containing `seeds`.
fn stable_closure(n: usize, seeds: Vec<SqMonomial>) -> SqIdeal {
    let mut gens = seeds;
    loop {
        let ideal = SqIdeal::new(n, gens.clone()).expect("nonempty seeds");
        let mut added = false;
        for u in ideal.gens() {
            let m = u.max_index().expect("not the unit");
            for j in 1..m {
                if u.contains_var(j) {
                    continue;
                }
                let v = u.without(&SqMonomial::from_indices([m]).unwrap()).times_var(j).unwrap();
                if !ideal.contains(&v) && !gens.contains(&v) {
                    gens.push(v);
                    added = true;
                }
            }
        }
        if !added {
            return ideal;
        }
    }
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize) -> SqMonomial {
    let degree = rng.gen_range(1..=n.min(4));
    let mut vars: Vec<u32> = (1..=n as u32).collect();
    for k in 0..degree {
        let pick = rng.gen_range(k..vars.len());
        vars.swap(k, pick);
    }
    SqMonomial::from_indices(vars[..degree].iter().copied()).unwrap()
}

fn random_stable_ideals_match_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for trial in 0..200 {
        let n = rng.gen_range(2..=6);
        let seeds = (0..rng.gen_range(1..=4)).map(|_| random_monomial(&mut rng, n)).collect();
        let ideal = stable_closure(n, seeds);
        check(is_squarefree_stable(&ideal), || format!("trial {trial}: closure {ideal} not stable"))?;
        let closed = betti_table_stable(&ideal).map_err(|e| e.to_string())?;
        let oracle = betti_table_oracle(&ideal, 6).map_err(|e| e.to_string())?;
        check(closed == oracle, || format!("trial {trial}: tables differ for {ideal}"))?;
    }
    within(start, Duration::from_secs(300), "200 random stable ideals, tables identical".into())
}

fn random_usli_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let mut oracle_checked = 0;
    for trial in 0..100 {
        let n = rng.gen_range(3..=8);
        let mixed: Vec<_> = feasible_degree_sequences(n)
            .into_iter()
            .filter(|ds| ds.entries().len() >= 2)
            .collect();
        let ds = &mixed[rng.gen_range(0..mixed.len())];
        let ideal = generate_usli(ds, n).map_err(|e| e.to_string())?;
        let q = ideal.num_gens();
        let table = if n <= 6 {
            oracle_checked += 1;
            betti_table_oracle(&ideal, 6).map_err(|e| e.to_string())?
        } else {
            betti_table_stable(&ideal).map_err(|e| e.to_string())?
        };
        let inv = usli_invariants(&ideal).map_err(|e| e.to_string())?;
        let depth = n - (table.projdim() + 1);
        let extremal = extremal_betti(&table);
        check(table.projdim() == q - 1 && inv.projdim == q - 1, || format!("trial {trial}: projdim {} for {ideal}", table.projdim()))?;
        check(table.reg() == ds.top_degree() && inv.reg == ds.top_degree(), || format!("trial {trial}: reg {} for {ideal}", table.reg()))?;
        check(depth == n - q && inv.depth_of_quotient == n - q, || format!("trial {trial}: depth {depth} for {ideal}"))?;
        check(extremal.len() == 1 && extremal[0].value == 1 && extremal[0] == inv.unique_extremal, || {
            format!("trial {trial}: extremal {extremal:?} for {ideal}")
        })?;
    }
    Ok(format!("100 random mixed-degree USLIs ({oracle_checked} against the oracle)"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 four extremal Betti numbers", four_extremal_betti_numbers),
        ("2 two-degree USLI/AUSLI examples", two_degree_examples),
        ("3 prefix s-sequence sweep", prefix_s_sequence_sweep),
        ("4 annihilator ideals", annihilator_closed_form),
        ("5 Sym dimension and multiplicity", sym_dimension_and_multiplicity),
        ("6 Sym regularity and depth", sym_regularity_and_depth),
        ("7 Veronese and non-s-sequence basis", veronese_and_non_s_sequence),
        ("8 stable ideals vs Koszul oracle", random_stable_ideals_match_oracle),
        ("9 random USLI invariants", random_usli_invariants),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
