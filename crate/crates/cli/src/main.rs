use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use tjl_core::adelic::{
    matrix_tsv, Factorizer, HeckeOperator, HeckeReport, InfinityAction, SearchBounds,
};
use tjl_core::census::{IrrepsReport, OrbitsReport};
use tjl_core::finite_field::{parse_poly, Poly};
use tjl_core::group::GroupParams;
use tjl_core::quaternion::AlgebraParams;
use tjl_core::reps::IrrepLabel;
use tjl_core::roundtrip::round_trips;
use tjl_core::spectral::{with_threads, SpectralContext, SpectralReport};
use tjl_core::tame::TameReport;
use tjl_core::{Error, SCHEMA_VERSION};

/// Largest `n` accepted by the local (non-adelic) commands.
const MAX_LOCAL_N: u32 = 4;

#[derive(Parser)]
#[command(name = "tjl", version, about = "Level-zero Jacquet-Langlands and Hecke eigensystem checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Irrep census, character table and field-part multiplicities.
    Irreps {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Frobenius orbits of character exponents.
    Orbits {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Irreducible tame parameters and their transfers.
    Tame {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Hecke matrix at a place, or the uniformizer action with `--place inf`.
    Brandt {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Monic irreducible polynomial such as `t+1`, or `inf`.
        #[arg(long)]
        place: String,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Full spectral verification for every (or one) representation.
    Verify {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        spectral: SpectralArgs,
        /// Number of seeded factorization round trips to include.
        #[arg(long, default_value_t = 0)]
        roundtrips: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Projective basis of unit eigenlines.
    Basis {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        spectral: SpectralArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long)]
    q: u32,
    #[arg(long, default_value_t = 2)]
    n: u32,
    #[arg(long = "N", alias = "level", default_value_t = 1)]
    level: u32,
}

#[derive(Args)]
struct AlgebraArgs {
    #[arg(long)]
    q: u32,
    #[arg(long = "N", alias = "level", default_value_t = 1)]
    level: u32,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 6)]
    degree_bound: usize,
    #[arg(long, default_value_t = 16)]
    depth_bound: usize,
    /// Scan every level and insist on a unique witness.
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Args)]
struct SpectralArgs {
    /// Restrict to one representation: `trivial`, `1,3`, `{1,3}:0`, ...
    #[arg(long)]
    sigma: Option<String>,
    /// Hecke place; repeat for several. Defaults to all places of degree ≤ 2.
    #[arg(long)]
    place: Vec<String>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

impl SearchArgs {
    fn bounds(&self) -> SearchBounds {
        SearchBounds {
            degree_bound: self.degree_bound,
            depth_bound: self.depth_bound,
            exhaustive: self.exhaustive,
        }
    }
}

impl GroupArgs {
    fn params(&self) -> Result<GroupParams, Error> {
        if self.n > MAX_LOCAL_N {
            return Err(Error::InvalidParams(format!("n = {} exceeds {MAX_LOCAL_N}", self.n)));
        }
        GroupParams::new(self.q, self.n, self.level)
    }
}

/// What a command produced: the text to write and whether every check held.
struct Outcome {
    text: String,
    ok: bool,
}

fn json_outcome<T: Serialize>(value: &T, ok: bool, out: &OutputArgs) -> Result<Outcome, Error> {
    if out.format != Format::Json {
        return Err(Error::InvalidParams("this command only writes JSON".into()));
    }
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    Ok(Outcome { text, ok })
}

fn parse_places(alg: &AlgebraParams, places: &[String]) -> Result<Option<Vec<Poly>>, Error> {
    if places.is_empty() {
        return Ok(None);
    }
    places.iter().map(|p| parse_poly(p, &alg.fq)).collect::<Result<Vec<_>, _>>().map(Some)
}

fn spectral_context(alg: AlgebraParams, args: &SpectralArgs) -> Result<(SpectralContext, Option<Vec<IrrepLabel>>), Error> {
    let places = parse_places(&alg, &args.place)?;
    let sigmas = match &args.sigma {
        Some(s) => Some(vec![IrrepLabel::parse(s, &alg.group)?]),
        None => None,
    };
    Ok((SpectralContext::new(alg, places, args.search.bounds())?, sigmas))
}

fn run(command: &Command) -> Result<(Outcome, &OutputArgs), Error> {
    match command {
        Command::Irreps { group, out } => {
            let r = IrrepsReport::compute(&group.params()?)?;
            Ok((json_outcome(&r, r.all_ok, out)?, out))
        }
        Command::Orbits { group, out } => {
            let r = OrbitsReport::compute(&group.params()?);
            Ok((json_outcome(&r, r.ok, out)?, out))
        }
        Command::Tame { group, out } => {
            let r = TameReport::compute(&group.params()?)?;
            Ok((json_outcome(&r, r.all_ok, out)?, out))
        }
        Command::Brandt {
            alg,
            place,
            search,
            out,
        } => {
            let alg = AlgebraParams::new(alg.q, alg.level)?;
            let fz = Factorizer::new(alg.clone());
            let bounds = search.bounds();
            if place == "inf" {
                let action = InfinityAction::compute(&fz, &bounds)?;
                let pi = alg.group.frobenius();
                let m = action.matrix(&alg, pi);
                let outcome = match out.format {
                    Format::Tsv => Outcome {
                        text: matrix_tsv(&alg, "place=inf uniformizer", &m),
                        ok: true,
                    },
                    Format::Json => json_outcome(
                        &json!({
                            "schema_version": SCHEMA_VERSION,
                            "q": alg.q,
                            "N": alg.level,
                            "eps": alg.eps,
                            "place": "inf",
                            "infinity_action": action,
                            "matrix": m,
                        }),
                        true,
                        out,
                    )?,
                };
                return Ok((outcome, out));
            }
            let place = parse_poly(place, &alg.fq)?;
            let op = HeckeOperator::compute(&fz, &place, &bounds)?;
            let report = HeckeReport::new(&alg, &op);
            let ok = report.row_sums_ok && report.commutes_with_left;
            let m = op.matrix(&alg);
            let outcome = match out.format {
                Format::Tsv => Outcome {
                    text: matrix_tsv(&alg, &format!("place={}", place.display()), &m),
                    ok,
                },
                Format::Json => json_outcome(&json!({ "report": report, "matrix": m }), ok, out)?,
            };
            Ok((outcome, out))
        }
        Command::Verify {
            alg,
            spectral,
            roundtrips,
            seed,
            out,
        } => {
            let alg = AlgebraParams::new(alg.q, alg.level)?;
            let (ctx, sigmas) = spectral_context(alg.clone(), spectral)?;
            let report = SpectralReport::compute(&ctx, sigmas, true)?;
            let trips = if *roundtrips > 0 {
                let fz = Factorizer::new(alg);
                round_trips(&fz, *seed, *roundtrips, &spectral.search.bounds())?
            } else {
                vec![]
            };
            let trips_ok = trips.iter().all(|t| t.ok);
            let ok = report.all_ok && trips_ok;
            let value = json!({
                "report": report,
                "roundtrips": { "seed": seed, "runs": trips, "ok": trips_ok },
                "all_ok": ok,
            });
            Ok((json_outcome(&value, ok, out)?, out))
        }
        Command::Basis { alg, spectral, out } => {
            let alg = AlgebraParams::new(alg.q, alg.level)?;
            let (ctx, sigmas) = spectral_context(alg, spectral)?;
            let report = SpectralReport::compute(&ctx, sigmas, false)?;
            let bases: Vec<_> = report
                .sigmas
                .iter()
                .map(|s| json!({ "sigma": s.sigma, "ok": s.basis_ok, "projective_basis": s.projective_basis }))
                .collect();
            let ok = report.sigmas.iter().all(|s| s.basis_ok);
            let value = json!({
                "schema_version": SCHEMA_VERSION,
                "q": report.q,
                "N": report.level,
                "bases": bases,
            });
            Ok((json_outcome(&value, ok, out)?, out))
        }
    }
}

fn threads() -> Result<Option<usize>, Error> {
    match std::env::var("TJL_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::InvalidParams(format!("TJL_THREADS = '{v}' is not a positive integer"))),
        },
    }
}

fn write_output(outcome: &Outcome, out: &OutputArgs) -> std::io::Result<()> {
    match &out.output {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().lock().write_all(outcome.text.as_bytes()),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    if e.exit_code() == 3 {
        eprintln!("hint: raise --degree-bound / --depth-bound or pass more --place values");
    }
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = match threads() {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    match with_threads(threads, || run(&cli.command)) {
        Err(e) => fail(&e),
        Ok((outcome, out)) => {
            if let Err(e) = write_output(&outcome, out) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: at least one check failed; see the report");
                ExitCode::from(1)
            }
        }
    }
}
