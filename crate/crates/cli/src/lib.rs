//! Report building for the `usli` command-line tool.
//!
//! Every subcommand produces a serializable report plus a flag saying
//! whether all internal cross-checks agreed; `main` turns that flag into the
//! exit status.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use usli_core::lexsegment::{
    compute_r_profile, default_m_max, generate_usli, is_ausli, is_lexsegment, is_usli_bruteforce,
    is_usli_structural, usli_bruteforce_failure, DegreeSequence, LexViolation,
};
use usli_core::resolution::{
    betti_table_oracle, betti_table_stable, extremal_betti, extremal_betti_checked,
    is_squarefree_stable, usli_invariants, BettiTable, ExtremalBetti, UsliInvariants,
    DEFAULT_ORACLE_CEILING,
};
use usli_core::s_sequence::{is_s_sequence, pairwise_coprime, AnnihilatorIdeals, GeneratorSequence};
use usli_core::sweep::{run_golden, run_sweep, GoldenResult, SweepConfig, SweepReport, Theorem, GOLDEN_IDS};
use usli_core::sym::{
    classify_for_sym, facet_oracle, sym_closed_form, sym_homological_oracle, sym_hrt_formula,
    SymClass, SymReport, DEFAULT_FACET_CEILING, DEFAULT_HOMOLOGICAL_CEILING,
};
use usli_core::{Error, IdealSpec, SqIdeal, SqMonomial, TermOrder};

#[derive(Debug, Parser)]
#[command(name = "usli", version, about = "Squarefree lexsegment ideals, their Betti numbers, s-sequences and symmetric algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lexsegment, stability, USLI and AUSLI tests.
    Classify {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Extension depth for the brute-force USLI test.
        #[arg(long)]
        m_max: Option<usize>,
    },
    /// Build the USLI with a given number of generators in each degree.
    Generate {
        /// Degree sequence such as `2:1,3:1`.
        #[arg(long)]
        degrees: String,
        /// Number of variables; defaults to the smallest feasible one.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Graded Betti numbers, extremal Betti numbers and invariants.
    Betti {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CEILING)]
        oracle_ceiling: usize,
    },
    /// s-sequence test of the minimal generators.
    Ssequence {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Include the reduced Gröbner basis.
        #[arg(long)]
        basis: bool,
    },
    /// Symmetric algebra invariants: closed form against every oracle.
    Sym {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, default_value_t = DEFAULT_HOMOLOGICAL_CEILING)]
        oracle_ceiling: usize,
    },
    /// Exhaustive checks over small rings, or a named worked example.
    Sweep {
        /// One of char, T*, P1, sym-usli, sym-ausli, betti (`all` runs every one).
        #[arg(long, conflicts_with = "case")]
        theorem: Option<String>,
        /// Run a named worked example (`all` runs every one).
        #[arg(long)]
        case: Option<String>,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CEILING)]
        oracle_ceiling: usize,
        #[arg(long)]
        m_max: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct IdealArgs {
    /// JSON file `{"n": 4, "generators": ["x1*x2", ...]}`.
    #[arg(long, conflicts_with = "ideal")]
    pub input: Option<PathBuf>,
    /// Inline generators such as `x1*x2, x1*x3*x4`.
    #[arg(long)]
    pub ideal: Option<String>,
    /// Number of variables for an inline ideal.
    #[arg(long)]
    pub n: Option<usize>,
}

/// Failure before any report could be produced.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: line {line}, column {column}: {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: {message}")]
    Inline {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
}

/// Parses `{"n": .., "generators": [..]}` and reports positions on failure.
pub fn parse_ideal_json(text: &str, origin: &str) -> Result<SqIdeal, CliError> {
    let spec: IdealSpec = serde_json::from_str(text).map_err(|e| CliError::Json {
        path: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(SqIdeal::from_spec(spec)?)
}

/// Parses an inline generator list; the ring defaults to the largest index.
pub fn parse_ideal_inline(text: &str, n: Option<usize>) -> Result<SqIdeal, CliError> {
    let gens = text
        .split(',')
        .scan(1usize, |col, piece| {
            let start = *col;
            *col += piece.len() + 1;
            Some(piece.parse::<SqMonomial>().map_err(|e| shift(e, start - 1)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = match n {
        Some(n) => n,
        None => gens.iter().filter_map(|g| g.max_index().ok()).max().unwrap_or(0) as usize,
    };
    Ok(SqIdeal::new(n, gens)?)
}

fn shift(e: Error, by: usize) -> CliError {
    match e {
        Error::Parse { column, message } => CliError::Inline {
            line: 1,
            column: column + by,
            message,
        },
        other => CliError::Core(other),
    }
}

impl IdealArgs {
    pub fn load(&self) -> Result<SqIdeal, CliError> {
        match (&self.input, &self.ideal) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                parse_ideal_json(&text, &path.display().to_string())
            }
            (None, Some(text)) => parse_ideal_inline(text, self.n),
            _ => Err(CliError::Usage("give exactly one of --input or --ideal".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub ideal: IdealSpec,
    pub input_was_minimal: bool,
    pub lexsegment: bool,
    pub stable: bool,
    pub usli: bool,
    pub usli_bruteforce: bool,
    pub m_max: usize,
    pub ausli: Option<bool>,
    pub extension_failure: Option<ExtensionFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionFailure {
    pub m: usize,
    pub violation: LexViolation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerateReport {
    pub degrees: String,
    pub r_profile: Vec<(usize, usize)>,
    pub ideal: IdealSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub ideal: IdealSpec,
    pub stable: bool,
    pub closed_form: Option<BettiTable>,
    pub oracle: Option<BettiTable>,
    pub tables_agree: Option<bool>,
    pub extremal: Vec<ExtremalBetti>,
    pub projdim: usize,
    pub reg: usize,
    pub depth_of_quotient: usize,
    pub usli: Option<UsliInvariants>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSequenceReport {
    pub generators: Vec<SqMonomial>,
    pub reordered: bool,
    pub verdict: bool,
    pub route_a: bool,
    pub route_b: bool,
    pub strong: bool,
    pub pairwise_coprime: bool,
    pub annihilators: AnnihilatorIdeals,
    pub basis_size: usize,
    pub max_t_degree: usize,
    pub basis: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymComparison {
    pub ideal: IdealSpec,
    pub class: SymClass,
    pub closed_form: SymReport,
    pub hrt_formula: SymReport,
    pub facet_oracle: Option<SymReport>,
    pub tor_oracle: Option<SymReport>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SweepOutput {
    Theorems { reports: Vec<SweepReport> },
    Cases { results: Vec<GoldenResult> },
}

/// A finished report of any subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Classify(ClassifyReport),
    Generate(GenerateReport),
    Betti(BettiReport),
    Ssequence(SSequenceReport),
    Sym(SymComparison),
    Sweep(SweepOutput),
}

impl Report {
    /// Whether every internal cross-check agreed.
    pub fn consistent(&self) -> bool {
        match self {
            Report::Classify(r) => r.usli == r.usli_bruteforce,
            Report::Generate(_) => true,
            Report::Betti(r) => r.tables_agree != Some(false),
            Report::Ssequence(r) => r.route_a == r.route_b,
            Report::Sym(r) => r.agree,
            Report::Sweep(SweepOutput::Theorems { reports }) => reports.iter().all(SweepReport::passed),
            Report::Sweep(SweepOutput::Cases { results }) => results.iter().all(|r| r.passed),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let yes = |b: bool| if b { "yes" } else { "no" };
        match self {
            Report::Classify(r) => {
                let _ = writeln!(out, "ideal: {}", generators_text(&r.ideal));
                let _ = writeln!(out, "variables: {}", r.ideal.n);
                let _ = writeln!(out, "lexsegment: {}", yes(r.lexsegment));
                let _ = writeln!(out, "squarefree stable: {}", yes(r.stable));
                let _ = writeln!(out, "USLI: {}", yes(r.usli));
                let _ = writeln!(out, "USLI by extension up to m = {}: {}", r.m_max, yes(r.usli_bruteforce));
                if let Some(a) = r.ausli {
                    let _ = writeln!(out, "AUSLI: {}", yes(a));
                }
                if let Some(f) = &r.extension_failure {
                    let _ = writeln!(
                        out,
                        "not lexsegment after adding {} variable(s): {} lies above {} in degree {}",
                        f.m, f.violation.non_member, f.violation.member, f.violation.degree
                    );
                }
            }
            Report::Generate(r) => {
                let _ = writeln!(out, "degrees: {}", r.degrees);
                let profile: Vec<String> = r.r_profile.iter().map(|(j, v)| format!("R{j}={v}")).collect();
                let _ = writeln!(out, "R: {}", profile.join(" "));
                let _ = writeln!(out, "USLI in {} variables: {}", r.ideal.n, generators_text(&r.ideal));
            }
            Report::Betti(r) => {
                let _ = writeln!(out, "ideal: {}", generators_text(&r.ideal));
                if let Some(t) = r.closed_form.as_ref().or(r.oracle.as_ref()) {
                    out.push_str(&t.diagram());
                }
                if let Some(a) = r.tables_agree {
                    let _ = writeln!(out, "closed form matches oracle: {}", yes(a));
                }
                for e in &r.extremal {
                    let _ = writeln!(out, "extremal beta_{{{},{}}} = {}", e.k, e.k + e.ell, e.value);
                }
                let _ = writeln!(out, "projdim {}, reg {}, depth of quotient {}", r.projdim, r.reg, r.depth_of_quotient);
            }
            Report::Ssequence(r) => {
                let gens: Vec<String> = r.generators.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "generators: {}", gens.join(", "));
                let _ = writeln!(out, "s-sequence: {}", yes(r.verdict));
                let _ = writeln!(out, "  S-pairs reduce to zero: {}", yes(r.route_a));
                let _ = writeln!(out, "  initial ideal matches annihilators: {}", yes(r.route_b));
                let _ = writeln!(out, "strong: {}", yes(r.strong));
                let _ = writeln!(out, "pairwise coprime quotients: {}", yes(r.pairwise_coprime));
                let _ = writeln!(out, "annihilators: {}", r.annihilators);
                let _ = writeln!(out, "reduced basis: {} elements, max t-degree {}", r.basis_size, r.max_t_degree);
                for g in r.basis.iter().flatten() {
                    let _ = writeln!(out, "  {g}");
                }
            }
            Report::Sym(r) => {
                let _ = writeln!(out, "ideal: {}", generators_text(&r.ideal));
                let _ = writeln!(out, "{:<14}{:>5}{:>6}{:>5}{:>7}", "source", "dim", "e", "reg", "depth");
                let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
                for s in [Some(&r.closed_form), Some(&r.hrt_formula), r.facet_oracle.as_ref(), r.tor_oracle.as_ref()]
                    .into_iter()
                    .flatten()
                {
                    let _ = writeln!(
                        out,
                        "{:<14}{:>5}{:>6}{:>5}{:>7}",
                        s.source.to_string(),
                        s.dim,
                        s.multiplicity,
                        opt(s.reg),
                        opt(s.depth)
                    );
                }
                let _ = writeln!(out, "agree: {}", yes(r.agree));
            }
            Report::Sweep(SweepOutput::Theorems { reports }) => {
                for rep in reports {
                    for c in &rep.cells {
                        let d = c.d.map_or(String::new(), |d| format!(" d={d}"));
                        let _ = writeln!(
                            out,
                            "{:<10} n={}{d}: {} ({} cases)",
                            rep.theorem.id(),
                            c.n,
                            if c.passed { "pass" } else { "FAIL" },
                            c.cases
                        );
                        for f in &c.failures {
                            let _ = writeln!(out, "    {f}");
                        }
                    }
                }
            }
            Report::Sweep(SweepOutput::Cases { results }) => {
                for r in results {
                    let _ = writeln!(out, "{:<20} {}  {}", r.id, if r.passed { "pass" } else { "FAIL" }, r.detail);
                }
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

fn generators_text(spec: &IdealSpec) -> String {
    let gens: Vec<String> = spec.generators.iter().map(ToString::to_string).collect();
    format!("({})", gens.join(", "))
}

pub fn classify(ideal: &SqIdeal, m_max: Option<usize>) -> Result<ClassifyReport, CliError> {
    let m_max = m_max.unwrap_or_else(|| default_m_max(ideal));
    let failure = usli_bruteforce_failure(ideal, m_max)?;
    Ok(ClassifyReport {
        ideal: ideal.to_spec(),
        input_was_minimal: ideal.input_was_minimal(),
        lexsegment: is_lexsegment(ideal),
        stable: is_squarefree_stable(ideal),
        usli: is_usli_structural(ideal),
        usli_bruteforce: is_usli_bruteforce(ideal, m_max)?,
        m_max,
        ausli: (ideal.num_gens() >= 2).then(|| is_ausli(ideal)).transpose()?,
        extension_failure: failure.map(|(m, violation)| ExtensionFailure { m, violation }),
    })
}

pub fn generate(degrees: &str, n: Option<usize>) -> Result<GenerateReport, CliError> {
    let ds: DegreeSequence = degrees.parse().map_err(|e| shift(e, 0))?;
    let n = n.unwrap_or_else(|| ds.min_variables());
    let ideal = generate_usli(&ds, n)?;
    Ok(GenerateReport {
        degrees: ds.to_string(),
        r_profile: compute_r_profile(&ds).values().iter().map(|(&j, &v)| (j, v)).collect(),
        ideal: ideal.to_spec(),
    })
}

pub fn betti(ideal: &SqIdeal, oracle_ceiling: usize) -> Result<BettiReport, CliError> {
    let stable = is_squarefree_stable(ideal);
    let closed_form = stable.then(|| betti_table_stable(ideal)).transpose()?;
    let oracle = (ideal.n() <= oracle_ceiling)
        .then(|| betti_table_oracle(ideal, oracle_ceiling))
        .transpose()?;
    let table = match closed_form.as_ref().or(oracle.as_ref()) {
        Some(t) => t.clone(),
        None => {
            return Err(CliError::Usage(format!(
                "{ideal} is not squarefree stable and has more than {oracle_ceiling} variables"
            )))
        }
    };
    let tables_agree = match (&closed_form, &oracle) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let extremal = if stable {
        extremal_betti_checked(ideal, &table)?
    } else {
        extremal_betti(&table)
    };
    Ok(BettiReport {
        ideal: ideal.to_spec(),
        stable,
        tables_agree,
        extremal,
        projdim: table.projdim(),
        reg: table.reg(),
        depth_of_quotient: ideal.n() - table.projdim() - 1,
        usli: is_usli_structural(ideal).then(|| usli_invariants(ideal)).transpose()?,
        closed_form,
        oracle,
    })
}

pub fn ssequence(ideal: &SqIdeal, with_basis: bool) -> Result<SSequenceReport, CliError> {
    let seq = GeneratorSequence::from_ideal(ideal);
    let v = is_s_sequence(&seq)?;
    let basis = with_basis
        .then(|| {
            v.basis
                .iter()
                .map(|g| g.to_text(TermOrder::MixedLex))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    Ok(SSequenceReport {
        generators: seq.gens().to_vec(),
        reordered: v.reordered,
        verdict: v.verdict,
        route_a: v.route_a,
        route_b: v.route_b,
        strong: v.strong,
        pairwise_coprime: pairwise_coprime(&seq),
        basis_size: v.basis_size(),
        max_t_degree: v.max_t_degree(),
        annihilators: v.annihilators,
        basis,
    })
}

pub fn sym(ideal: &SqIdeal, oracle_ceiling: usize) -> Result<SymComparison, CliError> {
    let class = classify_for_sym(ideal)?;
    let closed_form = sym_closed_form(ideal)?;
    let seq = GeneratorSequence::from_ideal(ideal);
    let verdict = is_s_sequence(&seq)?;
    let n = ideal.n();
    let q = ideal.num_gens();
    let hrt_formula = sym_hrt_formula(n, &verdict.annihilators)?;
    let facet = (n + q <= DEFAULT_FACET_CEILING)
        .then(|| facet_oracle(n, &verdict, DEFAULT_FACET_CEILING))
        .transpose()?;
    let tor = (n + q <= oracle_ceiling)
        .then(|| sym_homological_oracle(n, &verdict.annihilators, oracle_ceiling))
        .transpose()?;
    let mut agree = closed_form.agrees_on_dim_and_multiplicity(&hrt_formula)
        && facet.as_ref().is_none_or(|f| closed_form.agrees_on_dim_and_multiplicity(f));
    if let Some(h) = &tor {
        agree &= closed_form.agrees_on_dim_and_multiplicity(&h.report);
        // reg and depth are stated for USLIs with relations only
        if class == SymClass::Usli && q >= 2 {
            agree &= h.report.reg == closed_form.reg && h.report.depth == closed_form.depth;
        }
    }
    Ok(SymComparison {
        ideal: ideal.to_spec(),
        class,
        closed_form,
        hrt_formula,
        facet_oracle: facet,
        tor_oracle: tor.map(|h| h.report),
        agree,
    })
}

pub fn sweep(
    theorem: Option<&str>,
    case: Option<&str>,
    cfg: &SweepConfig,
) -> Result<SweepOutput, CliError> {
    if let Some(case) = case {
        let ids: Vec<&str> = if case == "all" { GOLDEN_IDS.to_vec() } else { vec![case] };
        let results = ids.into_iter().map(run_golden).collect::<Result<Vec<_>, _>>()?;
        return Ok(SweepOutput::Cases { results });
    }
    let theorems: Vec<Theorem> = match theorem {
        None | Some("all") => Theorem::ALL.to_vec(),
        Some(t) => vec![t.parse()?],
    };
    let reports = theorems
        .into_iter()
        .map(|t| run_sweep(t, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepOutput::Theorems { reports })
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    Ok(match &cli.command {
        Command::Classify { ideal, m_max } => Report::Classify(classify(&ideal.load()?, *m_max)?),
        Command::Generate { degrees, n } => Report::Generate(generate(degrees, *n)?),
        Command::Betti { ideal, oracle_ceiling } => {
            positive(*oracle_ceiling)?;
            Report::Betti(betti(&ideal.load()?, *oracle_ceiling)?)
        }
        Command::Ssequence { ideal, basis } => Report::Ssequence(ssequence(&ideal.load()?, *basis)?),
        Command::Sym { ideal, oracle_ceiling } => {
            positive(*oracle_ceiling)?;
            Report::Sym(sym(&ideal.load()?, *oracle_ceiling)?)
        }
        Command::Sweep {
            theorem,
            case,
            n_max,
            oracle_ceiling,
            m_max,
        } => {
            positive(*oracle_ceiling)?;
            let cfg = SweepConfig {
                n_max: *n_max,
                oracle_ceiling: *oracle_ceiling,
                m_max: *m_max,
                ..SweepConfig::default()
            };
            Report::Sweep(sweep(theorem.as_deref(), case.as_deref(), &cfg)?)
        }
    })
}

fn positive(ceiling: usize) -> Result<(), CliError> {
    if ceiling == 0 {
        return Err(CliError::Usage("ceilings must be positive".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_parse_errors_carry_columns() {
        match parse_ideal_inline("x1*x2, x1*y3", Some(4)) {
            Err(CliError::Inline { line: 1, column, .. }) => assert_eq!(column, 11),
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_ideal_inline("x1*x2, x1*x3*x4", None).unwrap().n(), 4);
    }

    #[test]
    fn json_parse_errors_carry_line_and_column() {
        let text = "{\n  \"n\": 4,\n  \"generators\": [\"x1*x2\",]\n}";
        match parse_ideal_json(text, "in.json") {
            Err(CliError::Json { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn classify_example() {
        let i = parse_ideal_inline("x1*x2, x1*x3*x4, x2*x3*x4", Some(4)).unwrap();
        let r = classify(&i, None).unwrap();
        assert!(r.lexsegment && !r.usli && !r.usli_bruteforce && r.ausli == Some(true));
        assert_eq!(r.extension_failure.as_ref().map(|f| f.m), Some(1));
        assert!(Report::Classify(r).consistent());
    }
}
