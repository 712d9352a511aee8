//! `orbitcat`: queries on the polygon model of the type-A orbit category.
//!
//! Exit codes: 0 success, 1 invalid input, 2 verification failure,
//! 3 resource guard exceeded.

mod cache;
mod render;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use orbitcat::endo::endo_quiver;
use orbitcat::orbit::{ext_nonzero, hom_nonzero, Arc, ExtStrategy, HomStrategy};
use orbitcat::rigid::{
    binomial, chain_trees, enumerate_hom_configurations_with_limit,
    enumerate_maximal_rigid_with_limit, riedtmann, ArcSet, NoncrossingPartition,
};
use orbitcat::tiling::validate_tiling;
use orbitcat::verify::verify;

use cache::{Kind, ResultCache};

#[derive(Parser)]
#[command(name = "orbitcat", version, about = "Maximal rigid objects in the type-A orbit category")]
struct Cli {
    /// Largest n accepted by enumerating commands.
    #[arg(long, global = true, env = "ORBITCAT_MAX_N", default_value_t = orbitcat::rigid::DEFAULT_MAX_N)]
    max_n: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print 1 if Hom(X, Y) is nonzero, else 0.
    Hom {
        #[arg(long)]
        n: usize,
        x: String,
        y: String,
    },
    /// Print 1 if Ext¹(X, Y) is nonzero, else 0.
    Ext {
        #[arg(long)]
        n: usize,
        x: String,
        y: String,
    },
    /// List maximal rigid objects, one per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Loop-free maximal rigid objects instead.
        #[arg(long, conflicts_with = "hom_configurations")]
        loop_free: bool,
        /// Maximal Hom-free sets instead.
        #[arg(long)]
        hom_configurations: bool,
        /// Also write the list as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Cache directory (default: $XDG_CACHE_HOME/orbitcat).
        #[arg(long, env = "ORBITCAT_CACHE_DIR")]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
    },
    /// Tile decomposition of the loop-free part of an object.
    Classify {
        #[arg(long)]
        n: usize,
        /// Arcs as "a,b;c,d", or @PATH to a JSON object.
        #[arg(long)]
        object: String,
        #[arg(long)]
        json: bool,
    },
    /// Quiver with relations of the endomorphism algebra.
    Endo {
        #[arg(long)]
        n: usize,
        /// Arcs as "a,b;c,d", or @PATH to a JSON object.
        #[arg(long)]
        object: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Run every check at size n.
    Verify {
        #[arg(long)]
        n: usize,
    },
    /// Hom-configuration of a noncrossing partition.
    Riedtmann {
        #[arg(long)]
        n: usize,
        /// Blocks separated by "|", e.g. "1 2 3|4 5|6".
        #[arg(long)]
        partition: String,
    },
    /// Count chain trees on r sources and s sinks.
    CountTrees {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
    /// Draw an object as an SVG polygon diagram.
    Draw {
        #[arg(long)]
        n: usize,
        /// Arcs as "a,b;c,d", or @PATH to a JSON object.
        #[arg(long)]
        object: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

enum Failure {
    Invalid(String),
    Verification(String),
    Guard(String),
}

impl From<orbitcat::Error> for Failure {
    fn from(e: orbitcat::Error) -> Self {
        match e {
            orbitcat::Error::ResourceLimit(m) => Failure::Guard(m),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut stdout = io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = stdout.flush();
            let (code, msg) = match f {
                Failure::Invalid(m) => (1, m),
                Failure::Verification(m) => (2, m),
                Failure::Guard(m) => (3, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let max_n = cli.max_n;
    match cli.command {
        Command::Hom { n, x, y } => {
            let (x, y) = (Arc::parse(n, &x)?, Arc::parse(n, &y)?);
            writeln!(out, "{}", u8::from(hom_nonzero(x, y, HomStrategy::RectForward)?))?;
        }
        Command::Ext { n, x, y } => {
            let (x, y) = (Arc::parse(n, &x)?, Arc::parse(n, &y)?);
            writeln!(out, "{}", u8::from(ext_nonzero(x, y, ExtStrategy::Coordinate)?))?;
        }
        Command::Enumerate {
            n,
            loop_free,
            hom_configurations,
            json,
            cache_dir,
            no_cache,
        } => {
            let kind = if hom_configurations {
                Kind::HomConfig
            } else if loop_free {
                Kind::LoopFree
            } else {
                Kind::MaximalRigid
            };
            if n < 3 && kind == Kind::MaximalRigid {
                return small_enumeration(n, out);
            }
            let cache = if no_cache {
                None
            } else {
                cache_dir.or_else(ResultCache::default_root).map(ResultCache::new)
            };
            let objects = enumerate(n, kind, max_n, cache.as_ref())?;
            for t in &objects {
                writeln!(out, "{t}")?;
            }
            eprintln!("{} objects", objects.len());
            if let Some(path) = json {
                let value = render::enumeration_value(n, kind.as_str(), &objects);
                fs::write(&path, serde_json::to_string(&value).unwrap() + "\n")?;
            }
        }
        Command::Classify { n, object, json } => {
            let set = read_object(n, &object)?;
            let report = validate_tiling(&set.without_loops());
            let Some(tiling) = report.tiling else {
                return Err(Failure::Invalid(format!(
                    "{set} is not a tiling: {}",
                    report.diagnostics.join("; ")
                )));
            };
            if json {
                writeln!(out, "{}", serde_json::to_string(&render::tiling_value(&tiling)).unwrap())?;
            } else {
                write!(out, "{}", render::tiling_text(&tiling))?;
            }
        }
        Command::Endo { n, object, format } => {
            if n < 3 {
                return small_endo(n, &object, format, out);
            }
            let q = endo_quiver(&read_object(n, &object)?)?;
            match format {
                Format::Dot => write!(out, "{}", render::quiver_dot(&q))?,
                Format::Json => writeln!(out, "{}", serde_json::to_string(&render::quiver_value(n, &q)).unwrap())?,
            }
        }
        Command::Verify { n } => {
            let checks = verify(n, max_n)?;
            let mut failed = Vec::new();
            for c in &checks {
                writeln!(out, "{c}")?;
                if !c.passed {
                    failed.push(c.name.clone());
                }
            }
            writeln!(out, "{} of {} checks passed", checks.len() - failed.len(), checks.len())?;
            if !failed.is_empty() {
                return Err(Failure::Verification(format!("failed: {}", failed.join(", "))));
            }
        }
        Command::Riedtmann { n, partition } => {
            let part = NoncrossingPartition::parse(n, &partition)?;
            writeln!(out, "{}", riedtmann(&part)?)?;
        }
        Command::CountTrees { r, s } => {
            let trees = chain_trees(r, s)?.len() as u64;
            let want = binomial((r + s - 2) as u64, (r - 1) as u64);
            let verdict = if trees == want { "OK" } else { "MISMATCH" };
            writeln!(out, "trees={trees} binomial={want} {verdict}")?;
            if trees != want {
                return Err(Failure::Verification("chain tree count differs".into()));
            }
        }
        Command::Draw { n, object, out: path } => {
            let set = read_object(n, &object)?;
            fs::write(&path, render::polygon_svg(&set))?;
            writeln!(out, "wrote {}", path.display())?;
        }
    }
    Ok(())
}

/// `"a,b;c,d"`, or `@PATH` naming a JSON object `{"n", "arcs"}`.
fn read_object(n: usize, text: &str) -> Result<ArcSet, Failure> {
    let Some(path) = text.strip_prefix('@') else {
        return Ok(ArcSet::parse(n, text)?);
    };
    let raw = fs::read_to_string(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&raw).map_err(|e| Failure::Invalid(format!("{path}: {e}")))?;
    let set = render::parse_object(&value)?;
    if set.n() != n {
        return Err(Failure::Invalid(format!("{path} holds an object for n = {}", set.n())));
    }
    Ok(set)
}

fn enumerate(
    n: usize,
    kind: Kind,
    max_n: usize,
    cache: Option<&ResultCache>,
) -> Result<Vec<ArcSet>, Failure> {
    // guard and size checks run before the cache is consulted
    let compute = || match kind {
        Kind::MaximalRigid => enumerate_maximal_rigid_with_limit(n, false, max_n),
        Kind::LoopFree => enumerate_maximal_rigid_with_limit(n, true, max_n),
        Kind::HomConfig => enumerate_hom_configurations_with_limit(n, max_n),
    };
    orbitcat::cyclic::Polygon::new(n)?;
    if n > max_n.min(orbitcat::orbit::TABLE_MAX_N) {
        return Ok(compute()?);
    }
    if let Some(texts) = cache.and_then(|c| c.load(kind, n)) {
        if let Ok(sets) = texts.iter().map(|t| ArcSet::parse(n, t)).collect() {
            return Ok(sets);
        }
    }
    let sets = compute()?;
    if let Some(c) = cache {
        let texts: Vec<String> = sets.iter().map(ArcSet::to_string).collect();
        c.store(kind, n, &texts);
    }
    Ok(sets)
}

/// For n = 1, 2 every indecomposable is maximal rigid on its own.
fn small_enumeration(n: usize, out: &mut impl Write) -> Outcome {
    if n == 0 {
        return Err(Failure::Invalid("n must be at least 1".into()));
    }
    for s in 1..=n {
        for t in 1..=n {
            writeln!(out, "{s},{t}")?;
        }
    }
    eprintln!("{} objects", n * n);
    Ok(())
}

/// For n = 1, 2 the endomorphism algebra of any maximal rigid object is a
/// single vertex with no arrows.
fn small_endo(n: usize, object: &str, format: Format, out: &mut impl Write) -> Outcome {
    let bad = || Failure::Invalid(format!("expected a single arc \"i,j\" with 1 <= i, j <= {n}"));
    let (s, t) = object.trim().split_once(',').ok_or_else(bad)?;
    let label = |x: &str| x.trim().parse::<usize>().ok().filter(|&v| (1..=n).contains(&v));
    let (s, t) = (label(s).ok_or_else(bad)?, label(t).ok_or_else(bad)?);
    match format {
        Format::Dot => write!(
            out,
            "digraph endo {{\n  /* zero relations:\n  */\n  node [shape=box];\n  v0 [label=\"{s},{t}\"];\n}}\n"
        )?,
        Format::Json => {
            let value = serde_json::json!({
                "n": n,
                "vertices": [[s, t]],
                "arrows": [],
                "relations": [],
                "iterated_tilted": true,
            });
            writeln!(out, "{}", serde_json::to_string(&value).unwrap())?;
        }
    }
    Ok(())
}
