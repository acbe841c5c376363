use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use stdpairs::{
    associated_primes, intersect, irreducible_decomposition, multiplicity, pairs_to_generators,
    primary_decomposition, standard_pairs, Budget, Configuration, DecompositionReport,
    MonomialIdeal, StandardPairSet,
};

use stdpairs_cli::failure::{self, Failure};
use stdpairs_cli::formats::*;
use stdpairs_cli::{render, verify};

#[derive(Parser, Debug)]
#[command(
    name = "stdpairs",
    version,
    about = "Standard pairs of monomial ideals in affine semigroup rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Step budget for each diophantine solve.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Cross-check computed pairs against ideal membership on all `A u`
    /// with `|u| <= bound`; 0 disables the check.
    #[arg(long, global = true, default_value_t = 12)]
    bound: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct Source {
    #[arg(long)]
    matrix: PathBuf,
    /// Ideal file: {"generators": [...]}.
    #[arg(long, conflicts_with = "pairs")]
    ideal: Option<PathBuf>,
    /// Pair-set file: {"pairs": [{"root", "face"}]}.
    #[arg(long)]
    pairs: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a configuration and report its faces.
    Validate {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        ideal: Option<PathBuf>,
    },
    StdPairs(Source),
    AssocPrimes(Source),
    Multiplicity(Source),
    PrimaryDecomp(Source),
    IrreducibleDecomp(Source),
    GensFromPairs {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        pairs: PathBuf,
    },
    Intersect {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        ideal: PathBuf,
        /// The second ideal.
        #[arg(long)]
        with: PathBuf,
    },
    /// SVG plot of the ideal, its standard monomials, holes and pairs (2 rows only).
    #[command(name = "render-2d")]
    Render2d(Source),
}

enum Report {
    Validation(ValidationFile),
    Pairs(PairsFile),
    Faces(FacesFile),
    Multiplicity(MultiplicityFile),
    Decomposition(DecompositionFile),
    Ideal(IdealFile),
    Svg(String),
}

fn budget(common: &Common) -> Budget {
    let mut b = Budget::default();
    if let Some(steps) = common.budget {
        b.solver_steps = steps;
    }
    b
}

fn load_config(path: &Path, common: &Common) -> anyhow::Result<Arc<Configuration>> {
    configuration(&read(path)?, budget(common))
}

fn check(ideal: &MonomialIdeal, std: &StandardPairSet, bound: usize) -> anyhow::Result<()> {
    if bound == 0 {
        return Ok(());
    }
    match verify::disagreement(ideal, std, bound)? {
        Some(point) => Err(stdpairs::Error::NotACover { point }.into()),
        None => Ok(()),
    }
}

/// Both views of the input: the ideal and its standard pairs.
fn load(source: &Source, common: &Common) -> anyhow::Result<(MonomialIdeal, StandardPairSet)> {
    let config = load_config(&source.matrix, common)?;
    match (&source.ideal, &source.pairs) {
        (Some(path), None) => {
            let i = ideal(&config, &read(path)?)?;
            let std = standard_pairs(&i)?;
            check(&i, &std, common.bound)?;
            Ok((i, std))
        }
        (None, Some(path)) => {
            let std = pair_set(&config, &read(path)?)?;
            let i = pairs_to_generators(&std)?;
            Ok((i, std))
        }
        _ => Err(Failure::Parse("exactly one of --ideal or --pairs is required".into()).into()),
    }
}

fn decomposition(report: &DecompositionReport) -> DecompositionFile {
    let mut components: Vec<ComponentEntry> = report
        .components
        .iter()
        .map(|k| ComponentEntry {
            face: one_based(k.ideal.configuration(), k.face),
            generators: k.ideal.sorted_degrees(),
        })
        .collect();
    components.sort_by(|a, b| {
        (a.face.len(), &a.face, &a.generators).cmp(&(b.face.len(), &b.face, &b.generators))
    });
    DecompositionFile {
        kind: report.kind.as_str().to_string(),
        components,
    }
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let common = &cli.common;
    Ok(match &cli.command {
        Command::Validate {
            matrix,
            ideal: path,
        } => {
            let config = load_config(matrix, common)?;
            let generators = match path {
                Some(p) => Some(ideal(&config, &read(p)?)?.sorted_degrees()),
                None => None,
            };
            Report::Validation(ValidationFile {
                dimension: config.dimension(),
                columns: config.column_count(),
                facets: config
                    .facets()
                    .iter()
                    .map(|h| FacetEntry {
                        coefficients: h.coefficients.clone(),
                        face: h.facet.iter().map(|j| j + 1).collect(),
                    })
                    .collect(),
                faces: config.face_ids().map(|f| one_based(&config, f)).collect(),
                generators,
            })
        }
        Command::StdPairs(source) => Report::Pairs(pairs_file(&load(source, common)?.1)),
        Command::AssocPrimes(source) => {
            let (_, std) = load(source, common)?;
            let config = std.configuration();
            Report::Faces(FacesFile {
                faces: associated_primes(&std)
                    .into_iter()
                    .map(|f| one_based(config, f))
                    .collect(),
            })
        }
        Command::Multiplicity(source) => {
            let (_, std) = load(source, common)?;
            let config = std.configuration();
            Report::Multiplicity(MultiplicityFile {
                multiplicities: multiplicity(&std)
                    .entries
                    .into_iter()
                    .map(|(f, m)| MultiplicityEntry {
                        face: one_based(config, f),
                        multiplicity: m,
                    })
                    .collect(),
            })
        }
        Command::PrimaryDecomp(source) => {
            let (i, _) = load(source, common)?;
            Report::Decomposition(decomposition(&primary_decomposition(&i)?))
        }
        Command::IrreducibleDecomp(source) => {
            let (i, _) = load(source, common)?;
            Report::Decomposition(decomposition(&irreducible_decomposition(&i)?))
        }
        Command::GensFromPairs { matrix, pairs } => {
            let config = load_config(matrix, common)?;
            let std = pair_set(&config, &read(pairs)?)?;
            Report::Ideal(ideal_file(&pairs_to_generators(&std)?))
        }
        Command::Intersect {
            matrix,
            ideal: first,
            with,
        } => {
            let config = load_config(matrix, common)?;
            let i = ideal(&config, &read(first)?)?;
            let j = ideal(&config, &read(with)?)?;
            Report::Ideal(ideal_file(&intersect(&i, &j)?))
        }
        Command::Render2d(source) => {
            let config = load_config(&source.matrix, common)?;
            if config.dimension() != 2 {
                return Err(Failure::UnsupportedDimension(config.dimension()).into());
            }
            let (i, std) = load(source, common)?;
            Report::Svg(render::svg(&i, &std)?)
        }
    })
}

fn point(p: &[i64]) -> String {
    let parts: Vec<String> = p.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn face(f: &[usize]) -> String {
    let parts: Vec<String> = f.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn points(ps: &[Vec<i64>]) -> String {
    ps.iter().map(|p| point(p)).collect::<Vec<_>>().join(" ")
}

fn text(report: &Report) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    match report {
        Report::Validation(v) => {
            line(format!("dimension {} columns {}", v.dimension, v.columns));
            for h in &v.facets {
                line(format!(
                    "facet {} support {}",
                    face(&h.face),
                    point(&h.coefficients)
                ));
            }
            line(format!(
                "faces {}",
                v.faces
                    .iter()
                    .map(|f| face(f))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            if let Some(g) = &v.generators {
                line(format!("generators {}", points(g)));
            }
        }
        Report::Pairs(p) => {
            for e in &p.pairs {
                line(format!("{} {}", point(&e.root), face(&e.face)));
            }
            line(format!("{} standard pairs", p.pairs.len()));
        }
        Report::Faces(f) => {
            for x in &f.faces {
                line(face(x));
            }
        }
        Report::Multiplicity(m) => {
            for e in &m.multiplicities {
                line(format!("{} {}", face(&e.face), e.multiplicity));
            }
        }
        Report::Decomposition(d) => {
            line(format!(
                "{} decomposition, {} components",
                d.kind,
                d.components.len()
            ));
            for c in &d.components {
                line(format!("{} <{}>", face(&c.face), points(&c.generators)));
            }
        }
        Report::Ideal(i) => line(format!("<{}>", points(&i.generators))),
        Report::Svg(s) => out.push_str(s),
    }
    out
}

fn render(report: &Report, format: Format) -> String {
    match (report, format) {
        (Report::Svg(s), _) => s.clone(),
        (r, Format::Text) => text(r),
        (Report::Validation(v), Format::Json) => to_json(v),
        (Report::Pairs(p), Format::Json) => to_json(p),
        (Report::Faces(f), Format::Json) => to_json(f),
        (Report::Multiplicity(m), Format::Json) => to_json(m),
        (Report::Decomposition(d), Format::Json) => to_json(d),
        (Report::Ideal(i), Format::Json) => to_json(i),
    }
}

fn emit(cli: &Cli, body: &str) -> anyhow::Result<()> {
    match &cli.common.output {
        Some(path) => {
            std::fs::write(path, body).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let (code, json) = failure::error_json(&anyhow::Error::new(e));
            eprintln!("{json}");
            return ExitCode::from(code);
        }
    };
    match run(&cli).and_then(|r| emit(&cli, &render(&r, cli.common.format))) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (code, json) = failure::error_json(&e);
            eprintln!("{json}");
            ExitCode::from(code)
        }
    }
}
