use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use whitehead_core::catalog::{catalog_csv, catalog_json};
use whitehead_core::pipeline::analyze_batch;
use whitehead_core::snf::is_divisibility_chain;
use whitehead_core::steinberg::{additivity_relator, commutator_relator, parse_steinberg_word};
use whitehead_core::*;

#[derive(Parser)]
#[command(
    name = "whitehead",
    version,
    about = "Ambivalence and Whitehead-group computations for 3-manifold groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full detection report for one group, as JSON.
    Analyze(AnalyzeArgs),
    /// Reports for every built-in group up to an order, as a JSON array
    /// sorted by name.
    Batch {
        #[arg(long, default_value_t = 48)]
        max_order: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        budget: usize,
    },
    /// Recompute ambivalence of all built-in finite 3-manifold groups.
    Classify {
        #[arg(long, default_value_t = 240)]
        max_order: usize,
    },
    /// Invariant factors of Wh1(π; Γ) with trivial action.
    Wh1 {
        #[arg(long)]
        preset: String,
        /// Invariant factors of Γ, comma separated; 0 stands for ℤ.
        #[arg(long, default_value = "2", value_delimiter = ',')]
        gamma: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        budget: usize,
    },
    /// Steinberg word tools.
    Steinberg {
        #[command(subcommand)]
        command: SteinbergCommand,
    },
    /// List the built-in groups.
    Catalog {
        #[arg(long, default_value_t = 120)]
        max_order: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the coset table of a group as CSV.
    Cosets {
        #[command(flatten)]
        input: GroupInput,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        budget: usize,
    },
    /// Randomized self-checks of the Steinberg and Smith form code.
    Check {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

#[derive(Subcommand)]
enum SteinbergCommand {
    /// Evaluate a word to a matrix and report PD form and K2 membership.
    Eval {
        #[arg(long)]
        group: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupInput {
    #[arg(long)]
    preset: Option<String>,
    /// File holding `gens: ...; rels: ...`.
    #[arg(long)]
    presentation: Option<PathBuf>,
    /// Seifert data `b,eps,g,(a1:b1),...`.
    #[arg(long, allow_hyphen_values = true)]
    seifert: Option<String>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: GroupInput,
    #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
    budget: usize,
}

impl GroupInput {
    fn entry(&self) -> Result<CatalogEntry> {
        if let Some(name) = &self.preset {
            return Ok(preset(name)?);
        }
        if let Some(path) = &self.presentation {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let p = Presentation::parse(text.trim())
                .with_context(|| format!("parsing {}", path.display()))?;
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
            return Ok(CatalogEntry::from_presentation(
                name.as_deref().unwrap_or("input"),
                p,
            ));
        }
        if let Some(text) = &self.seifert {
            let s = SeifertInvariants::parse(text)?;
            return Ok(CatalogEntry::from_seifert(text, s));
        }
        bail!("one of --preset, --presentation or --seifert is required")
    }
}

fn finite_group(entry: &CatalogEntry, budget: usize) -> Result<FiniteGroup> {
    let p = entry.construction.presentation()?;
    realize_presentation(&p, budget).with_context(|| format!("realizing {}", entry.name))
}

fn factor_text(factors: &[u64]) -> String {
    if factors.is_empty() {
        return "0".into();
    }
    factors
        .iter()
        .map(|&d| {
            if d == 0 {
                "Z".to_string()
            } else {
                format!("Z/{d}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn run_check(seed: u64, cases: usize) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    let groups: Vec<FiniteGroup> = builtin_groups(12)
        .iter()
        .map(|e| finite_group(e, DEFAULT_MAX_COSETS))
        .collect::<Result<_>>()?;
    let mut relators = 0;
    for _ in 0..cases {
        let g = &groups[rng.gen_range(0..groups.len())];
        let mut elem = || {
            GroupRingElement::from_terms(
                (0..3).map(|_| (rng.gen_range(0..g.order()), rng.gen_range(-3..=3))),
            )
        };
        let (lam, mu) = (elem(), elem());
        for r in [
            additivity_relator(1, 2, &lam, &mu)?,
            commutator_relator(1, 2, 3, &lam, &mu, g)?,
        ] {
            relators += 1;
            if !k2_membership(&r, 3, g)? {
                ok = false;
                println!("relator not in K2: {}", r.to_text(g));
            }
        }
    }
    let mut matrices = 0;
    for _ in 0..cases {
        let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let m = IntMatrix::from_rows(&data);
        let s = smith_normal_form(&m);
        matrices += 1;
        if s.u.mul(&m).mul(&s.v) != s.d || !is_divisibility_chain(&s.diagonal) {
            ok = false;
            println!("bad Smith form for {data:?}");
        }
    }
    println!(
        "seed {seed}: {relators} relators, {matrices} Smith forms, {}",
        if ok { "ok" } else { "FAILED" }
    );
    Ok(ok)
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze(args) => {
            let entry = args.input.entry()?;
            let report = analyze(&entry, args.budget)
                .with_context(|| format!("analyzing {}", entry.name))?;
            println!("{}", report.to_json());
        }
        Command::Batch { max_order, budget } => {
            let mut reports = Vec::new();
            for (name, report) in analyze_batch(&builtin_groups(max_order), budget) {
                reports.push(
                    report
                        .with_context(|| format!("analyzing {name}"))?
                        .to_json(),
                );
            }
            println!("[{}]", reports.join(",\n"));
        }
        Command::Classify { max_order } => {
            let table = reproduce_classification(max_order)?;
            if !table.passed() {
                print!("{}", table.diff_csv());
                return Ok(ExitCode::FAILURE);
            }
            let amb: Vec<&str> = table
                .rows
                .iter()
                .filter(|r| r.computed_ambivalent)
                .map(|r| r.name.as_str())
                .collect();
            println!(
                "pass: {} groups, ambivalent: {}",
                table.rows.len(),
                amb.join(" ")
            );
        }
        Command::Wh1 {
            preset: name,
            gamma,
            budget,
        } => {
            let g = finite_group(&preset(&name)?, budget)?;
            let coeff = CoefficientSystem::trivial(gamma, g.generator_images().len());
            let result = wh1_general(&g, &coeff)?;
            println!("{}", factor_text(&result.invariant_factors));
        }
        Command::Steinberg {
            command: SteinbergCommand::Eval { group, dim, word },
        } => {
            let g = finite_group(&preset(&group)?, DEFAULT_MAX_COSETS)?;
            let w = parse_steinberg_word(&word, &g)?;
            if w.max_index() > dim {
                bail!("word uses index {} but --dim is {dim}", w.max_index());
            }
            let m = evaluate(&w, dim, &g)?;
            print!("{}", m.to_text(&g));
            match is_pd_form(&m) {
                Some(pd) => {
                    let perm: Vec<String> =
                        pd.permutation.iter().map(|r| (r + 1).to_string()).collect();
                    let diag: Vec<String> = pd
                        .diagonal
                        .iter()
                        .map(|&(s, x)| GroupRingElement::monomial(s, x).to_text(&g))
                        .collect();
                    println!(
                        "pd: rows [{}], diagonal [{}]",
                        perm.join(", "),
                        diag.join(", ")
                    );
                }
                None => println!("pd: no"),
            }
            println!("k2: {}", m.is_identity());
        }
        Command::Catalog { max_order, format } => {
            let entries = builtin_groups(max_order);
            match format {
                Format::Json => println!("{}", catalog_json(&entries)?),
                Format::Csv => print!("{}", catalog_csv(&entries)?),
            }
        }
        Command::Cosets { input, budget } => {
            let p = input.entry()?.construction.presentation()?;
            let table = enumerate(&p, budget)?;
            print!("{}", table.to_csv(&p));
        }
        Command::Check { seed, cases } => {
            if !run_check(seed, cases)? {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
