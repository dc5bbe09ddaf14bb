use std::fs::{self, File, OpenOptions};
use std::io::{self, BufReader};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use idcode::analysis::{
    bench_tag, double_rs_rate, emit_figure_data, fixed_randomness_params, nearest_prime,
    single_rs_rate, Figure, FigureOptions, PUBLISHED_Q,
};
use idcode::concat::{
    capacity_conditions, derive_params, identity_from_integer, identity_from_seed, read_identity,
    tag, tag_value, write_identity, BlockCodePoint, ConcatParams, Identity,
};
use idcode::protocol::{
    run_average_fa_experiment, run_fixed_randomness_experiment, write_report_csv,
};
use idcode::rs::format_symbols;
use idcode::{FieldSpec, Message, RsParams};
use num_bigint::BigUint;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "idcode",
    version,
    about = "Identification codes from concatenated Reed-Solomon codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite field arithmetic
    #[command(subcommand)]
    Field(FieldCmd),
    /// Reed-Solomon codes over GF(p^m)
    #[command(subcommand)]
    Rs(RsCmd),
    /// The (q, k, delta) identification code
    #[command(subcommand)]
    Id(IdCmd),
    /// False identification experiments
    #[command(subcommand)]
    Sim(SimCmd),
    /// Timing of the tag pipeline
    #[command(subcommand)]
    Bench(BenchCmd),
    /// Figure data as CSV
    #[command(subcommand)]
    Fig(FigCmd),
    #[command(subcommand)]
    Util(UtilCmd),
}

#[derive(Args, Clone, Copy)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    m: usize,
}

impl FieldArgs {
    fn build(self) -> Result<FieldSpec> {
        Ok(if self.m == 1 {
            FieldSpec::prime(self.p)?
        } else {
            FieldSpec::extension(self.p, self.m)?
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Modulus and primitive element as JSON
    Info(FieldArgs),
    /// Element with the given discrete-log index
    Element {
        #[command(flatten)]
        field: FieldArgs,
        index: u128,
    },
    /// Discrete-log index of an element
    Index {
        #[command(flatten)]
        field: FieldArgs,
        element: String,
    },
    /// Binary operation on two elements
    Calc {
        #[command(flatten)]
        field: FieldArgs,
        op: FieldOp,
        a: String,
        b: String,
    },
    /// Power of an element
    Pow {
        #[command(flatten)]
        field: FieldArgs,
        element: String,
        exponent: u128,
    },
}

#[derive(Args)]
struct RsArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    n: u128,
    #[arg(long)]
    k: usize,
}

impl RsArgs {
    fn build(&self) -> Result<RsParams> {
        Ok(RsParams::new(
            Arc::new(self.field.build()?),
            self.n,
            self.k,
        )?)
    }
}

#[derive(Subcommand)]
enum RsCmd {
    /// One codeword symbol
    Eval {
        #[command(flatten)]
        code: RsArgs,
        /// Space-separated message elements
        #[arg(long)]
        message: String,
        #[arg(long)]
        locator: u128,
    },
    /// Full codeword
    Codeword {
        #[command(flatten)]
        code: RsArgs,
        #[arg(long)]
        message: String,
    },
    /// Generator matrix, one row per line
    Genmatrix(RsArgs),
    /// Minimum distance by exhaustive search
    Mindist(RsArgs),
}

#[derive(Args, Clone, Copy)]
struct CodeArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    delta: u32,
}

impl CodeArgs {
    fn build(self) -> Result<ConcatParams> {
        Ok(derive_params(self.q, self.k, self.delta)?)
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct IdentitySource {
    /// Identity as an integer below q^(k q^(k-delta)), small codes only
    #[arg(long)]
    identity_int: Option<BigUint>,
    /// Identity drawn from a seed
    #[arg(long)]
    seed: Option<u64>,
    /// Identity file; its header supplies q, k and delta
    #[arg(long)]
    identity_file: Option<PathBuf>,
}

impl IdentitySource {
    fn resolve(&self, code: Option<CodeArgs>) -> Result<(ConcatParams, Identity)> {
        if let Some(path) = &self.identity_file {
            let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            return Ok(read_identity(BufReader::new(file))?);
        }
        let params = code.context("--q, --k and --delta are required")?.build()?;
        let identity = match (&self.identity_int, self.seed) {
            (Some(v), _) => identity_from_integer(&params, v)?,
            (_, Some(s)) => identity_from_seed(&params, s),
            _ => unreachable!("clap enforces one source"),
        };
        Ok((params, identity))
    }
}

#[derive(Args)]
struct OptionalCode {
    #[arg(long, requires_all = ["k", "delta"])]
    q: Option<u64>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    delta: Option<u32>,
}

impl OptionalCode {
    fn get(&self) -> Option<CodeArgs> {
        Some(CodeArgs {
            q: self.q?,
            k: self.k?,
            delta: self.delta?,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    SingleRs,
    DoubleRs,
}

#[derive(Subcommand)]
enum IdCmd {
    /// Derived code parameters as JSON
    Params(CodeArgs),
    /// Tag T_i(j)
    Tag {
        #[command(flatten)]
        code: OptionalCode,
        #[command(flatten)]
        source: IdentitySource,
        #[arg(long)]
        j: u128,
    },
    /// Every tag of an identity, small codes only
    Codeword {
        #[command(flatten)]
        code: OptionalCode,
        #[command(flatten)]
        source: IdentitySource,
    },
    /// Write an identity file
    Write {
        #[command(flatten)]
        code: OptionalCode,
        #[command(flatten)]
        source: IdentitySource,
        #[arg(long)]
        out: PathBuf,
    },
    /// Finite-n trend of the capacity conditions over a family of codes
    CheckCapacity {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, value_delimiter = ',', default_values_t = [23u64, 193, 1009])]
        q: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        delta: u32,
    },
    /// Rate gain r_ID / r_T
    Rate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        delta: u32,
    },
}

#[derive(Args)]
struct SimArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Append a CSV row here, writing the header if the file is new
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SimCmd {
    /// One sender identity and position, many verifier identities
    Fixed(SimArgs),
    /// Everything redrawn per trial
    Average(SimArgs),
}

#[derive(Subcommand)]
enum BenchCmd {
    /// Median wall time of field construction, identity draw and one tag
    Tag {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 5)]
        repetitions: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum FigCmd {
    Emit {
        #[arg(long, value_parser = parse_figure)]
        figure: Figure,
        /// Parameter sets as q,k,delta separated by ';' (defaults per figure)
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        repetitions: u32,
        /// Output path, `-` for stdout
        #[arg(long, default_value = "-")]
        out: String,
    },
}

#[derive(Subcommand)]
enum UtilCmd {
    /// Prime closest to N, the smaller one on ties
    NearestPrime { n: u64 },
}

fn parse_figure(s: &str) -> Result<Figure, String> {
    s.parse().map_err(|e: idcode::Error| e.to_string())
}

fn parse_param_list(s: &str) -> Result<Vec<(u64, u32, u32)>> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let parts: Vec<&str> = t.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                bail!("expected q,k,delta, got {t:?}");
            }
            Ok((parts[0].parse()?, parts[1].parse()?, parts[2].parse()?))
        })
        .collect()
}

fn default_params(figure: Figure) -> Vec<(u64, u32, u32)> {
    match figure {
        Figure::FixedRandomness => fixed_randomness_params(),
        Figure::Lambda2VsParams => PUBLISHED_Q.iter().map(|&q| (q, 3, 2)).collect(),
        // the two largest take minutes; pass them explicitly
        Figure::Tradeoff | Figure::IdentitiesVsTime => {
            PUBLISHED_Q[..6].iter().map(|&q| (q, 3, 2)).collect()
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

#[derive(Serialize)]
struct TagOutput {
    q: u64,
    k: u32,
    delta: u32,
    j: u128,
    tag: u64,
}

fn field_cmd(cmd: FieldCmd) -> Result<()> {
    match cmd {
        FieldCmd::Info(args) => {
            let f = args.build()?;
            let mut v = serde_json::to_value(&f)?;
            v["order"] = f.order().to_string().into();
            v["modulus_poly"] = f.modulus_string().into();
            print_json(&v)
        }
        FieldCmd::Element { field, index } => {
            println!("{}", field.build()?.element_from_index(index)?);
            Ok(())
        }
        FieldCmd::Index { field, element } => {
            let f = field.build()?;
            println!("{}", f.index_of(&f.parse_element(&element)?)?);
            Ok(())
        }
        FieldCmd::Calc { field, op, a, b } => {
            let f = field.build()?;
            let (a, b) = (f.parse_element(&a)?, f.parse_element(&b)?);
            let r = match op {
                FieldOp::Add => f.add(&a, &b),
                FieldOp::Sub => f.sub(&a, &b),
                FieldOp::Mul => f.mul(&a, &b),
                FieldOp::Div => f.div(&a, &b)?,
            };
            println!("{r}");
            Ok(())
        }
        FieldCmd::Pow {
            field,
            element,
            exponent,
        } => {
            let f = field.build()?;
            println!("{}", f.pow(&f.parse_element(&element)?, exponent));
            Ok(())
        }
    }
}

fn rs_cmd(cmd: RsCmd) -> Result<()> {
    match cmd {
        RsCmd::Eval {
            code,
            message,
            locator,
        } => {
            let rs = code.build()?;
            let msg = Message::parse(rs.field(), &message)?;
            println!("{}", rs.evaluate_tag(&msg, locator)?);
        }
        RsCmd::Codeword { code, message } => {
            let rs = code.build()?;
            let msg = Message::parse(rs.field(), &message)?;
            println!("{}", format_symbols(&rs.codeword(&msg)?));
        }
        RsCmd::Genmatrix(code) => {
            for row in code.build()?.generator_matrix()? {
                println!("{}", format_symbols(&row));
            }
        }
        RsCmd::Mindist(code) => println!("{}", code.build()?.min_distance_bruteforce()?),
    }
    Ok(())
}

fn id_cmd(cmd: IdCmd) -> Result<()> {
    match cmd {
        IdCmd::Params(code) => print_json(&code.build()?.summary()),
        IdCmd::Tag { code, source, j } => {
            let (p, id) = source.resolve(code.get())?;
            let t = tag(&p, &id, j)?;
            print_json(&TagOutput {
                q: p.q(),
                k: p.k(),
                delta: p.delta(),
                j,
                tag: t.coefficients()[0],
            })
        }
        IdCmd::Codeword { code, source } => {
            let (p, id) = source.resolve(code.get())?;
            let cap = p.caps().max_symbols;
            if p.blocklength() > cap {
                bail!(idcode::Error::MaterializationTooLarge {
                    requested: p.blocklength(),
                    cap
                });
            }
            let word = (0..p.blocklength())
                .map(|j| tag_value(&p, &id, j).map(|t| t.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            println!("{}", word.join(" "));
            Ok(())
        }
        IdCmd::Write { code, source, out } => {
            let (p, id) = source.resolve(code.get())?;
            let file = File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            write_identity(&p, &id, io::BufWriter::new(file))?;
            Ok(())
        }
        IdCmd::CheckCapacity {
            family,
            q,
            k,
            delta,
        } => {
            let points = q
                .iter()
                .map(|&q| match family {
                    Family::SingleRs => Ok(BlockCodePoint::single_rs(q, k as u64)),
                    Family::DoubleRs => {
                        derive_params(q, k, delta).map(|p| BlockCodePoint::concatenated(&p))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            print_json(&capacity_conditions(&points)?)
        }
        IdCmd::Rate {
            family,
            q,
            k,
            delta,
        } => match family {
            Family::SingleRs => print_json(&single_rs_rate(q, k)?),
            Family::DoubleRs => print_json(&double_rs_rate(&derive_params(q, k, delta)?)),
        },
    }
}

fn append_csv(path: &Path, report: &idcode::protocol::FaExperimentReport) -> Result<()> {
    let fresh = fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening {}", path.display()))?;
    write_report_csv(std::slice::from_ref(report), fresh, file)?;
    Ok(())
}

fn sim_cmd(cmd: SimCmd) -> Result<()> {
    let (args, fixed) = match cmd {
        SimCmd::Fixed(a) => (a, true),
        SimCmd::Average(a) => (a, false),
    };
    let params = args.code.build()?;
    let report = if fixed {
        run_fixed_randomness_experiment(&params, args.trials, args.seed)?
    } else {
        run_average_fa_experiment(&params, args.trials, args.seed)?
    };
    if let Some(path) = &args.csv {
        append_csv(path, &report)?;
    }
    print_json(&report)
}

fn fig_cmd(cmd: FigCmd) -> Result<()> {
    let FigCmd::Emit {
        figure,
        params,
        trials,
        seed,
        repetitions,
        out,
    } = cmd;
    let list = match params {
        Some(s) => parse_param_list(&s)?,
        None => default_params(figure),
    };
    let opts = FigureOptions {
        trials: trials.or((figure == Figure::FixedRandomness).then_some(1000)),
        seed,
        repetitions,
    };
    if out == "-" {
        emit_figure_data(figure, &list, &opts, io::stdout().lock())?;
    } else {
        let file = File::create(&out).with_context(|| format!("creating {out}"))?;
        emit_figure_data(figure, &list, &opts, file)?;
    }
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Field(c) => field_cmd(c),
        Command::Rs(c) => rs_cmd(c),
        Command::Id(c) => id_cmd(c),
        Command::Sim(c) => sim_cmd(c),
        Command::Bench(BenchCmd::Tag {
            code,
            repetitions,
            seed,
        }) => print_json(&bench_tag(code.q, code.k, code.delta, repetitions, seed)?),
        Command::Fig(c) => fig_cmd(c),
        Command::Util(UtilCmd::NearestPrime { n }) => {
            println!("{}", nearest_prime(n));
            Ok(())
        }
    }
}
