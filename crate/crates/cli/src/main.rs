//! `symdyn`: batch front end for symdyn-core.
//!
//! Exit status: 0 success, 1 inconclusive, 2 invariant failure, 3 invalid input.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::Ratio;

use symdyn_core::avoidance::{
    bookkeeping, minimal_m_explorer, solve_prefix, verify_bounds, AvoidanceInstance, Fault, SolveOutcome,
};
use symdyn_core::construct::{
    bernoulli_rs_witness, proximal_k_point, verify_ie_window, verify_syndetic_zeros, KExampleParams,
};
use symdyn_core::independence::{
    density_witness, ip_independence_builder, is_independence_set, max_independence_within, parse_targets,
    sequence_entropy_bracket, single_set_independence, Budget, CylinderTuple, SingleSetFamily, Verdict,
};
use symdyn_core::selfcheck::selfcheck_with;
use symdyn_core::sets::{
    anti_ss_sparse, block_witness, densities, difference_set, family_predicates, find_translate, fss_construct,
    ip_generate, BlockWitness, FamilySpec, SubsetWindow,
};
use symdyn_core::subshift::{Cylinder, Subshift, SubshiftSpec};
use symdyn_core::syndetic::{build_obstruction, verify_certificate, ObstructionCertificate, Status as CertStatus};
use symdyn_core::word::Word;
use symdyn_core::Error;

#[derive(Parser, Debug)]
#[command(name = "symdyn", version, about = "Finite-scale symbolic dynamics computations")]
struct Cli {
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Subsets of the nonnegative integers.
    #[command(subcommand)]
    Families(FamiliesCmd),
    /// Language and recurrence queries on a subshift.
    #[command(subcommand)]
    Subshift(SubshiftCmd),
    /// Independence sets for cylinder tuples.
    #[command(subcommand)]
    Indep(IndepCmd),
    /// Solve a window-avoidance instance.
    Avoid(AvoidArgs),
    /// Build or check minimality obstruction certificates.
    #[command(subcommand)]
    Obstruct(ObstructCmd),
    /// Explicit constructions.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Success rate of seeded avoidance instances per window length.
    Explore(ExploreArgs),
    /// Run the embedded invariant suite.
    Selfcheck(SelfcheckArgs),
}

#[derive(Subcommand, Debug)]
enum FamiliesCmd {
    Densities {
        #[arg(long)]
        set: String,
        #[arg(long)]
        window: u64,
    },
    Predicates {
        #[arg(long)]
        set: String,
        #[arg(long)]
        gap: u64,
        #[arg(long)]
        thick: u64,
    },
    Ip {
        /// Comma-separated generators.
        #[arg(long, value_delimiter = ',')]
        gens: Vec<u64>,
    },
    Block {
        #[arg(long)]
        set: String,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        depth: usize,
    },
    Diff {
        #[arg(long)]
        set: String,
    },
    Translate {
        #[arg(long)]
        set: String,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        k: u64,
    },
    Fss {
        #[arg(long)]
        blocks: usize,
        #[arg(long, default_value_t = 3)]
        growth: u64,
    },
    AntiSs {
        #[arg(long)]
        set: String,
        #[arg(long)]
        n: usize,
    },
    /// Prefix of a family member below a horizon.
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        horizon: u64,
    },
}

#[derive(Args, Debug)]
struct SpecArg {
    /// Spec file, or `builtin:full2`, `builtin:golden`, `builtin:fibonacci`, `builtin:thue-morse`.
    #[arg(long)]
    spec: String,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    #[arg(long, default_value_t = Budget::default().max_nodes)]
    max_nodes: usize,
    #[arg(long, default_value_t = Budget::default().max_checks)]
    max_checks: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.max_nodes,
            max_checks: self.max_checks,
        }
    }
}

#[derive(Subcommand, Debug)]
enum SubshiftCmd {
    /// Kind, alphabet, memory and word counts up to `n`.
    Info {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    Language {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        n: usize,
    },
    ReturnTimes {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        u: Word,
        #[arg(long)]
        v: Word,
        #[arg(long)]
        horizon: u64,
    },
    Mixing {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        n0: u64,
    },
    Minimal {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    Product {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        with: String,
    },
}

#[derive(Args, Debug)]
struct TupleArgs {
    #[command(flatten)]
    spec: SpecArg,
    /// Targets separated by `,`; unions inside a target by `|`.
    #[arg(long)]
    targets: String,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Subcommand, Debug)]
enum IndepCmd {
    Check {
        #[command(flatten)]
        tuple: TupleArgs,
        #[arg(long)]
        set: String,
    },
    /// Profile `a_k` as CSV.
    Density {
        #[command(flatten)]
        tuple: TupleArgs,
        #[arg(long = "K")]
        k: u64,
    },
    Witness {
        #[command(flatten)]
        tuple: TupleArgs,
        /// Density bound, e.g. `1/2`.
        #[arg(long)]
        bound: String,
        #[arg(long)]
        precision: u64,
        #[arg(long)]
        horizon: u64,
    },
    Ip {
        #[command(flatten)]
        tuple: TupleArgs,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 16)]
        step_horizon: u64,
    },
    Entropy {
        #[command(flatten)]
        spec: SpecArg,
        /// Comma-separated cylinder bases.
        #[arg(long, value_delimiter = ',')]
        cylinders: Vec<Word>,
        #[arg(long)]
        f: String,
        #[arg(long)]
        depth: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    Single {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        word: Word,
        /// `multiples`, `ip:a+b+..` or `explicit:h;e1,e2,..`.
        #[arg(long)]
        family: String,
        #[arg(long)]
        horizon: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args, Debug)]
struct AvoidArgs {
    /// Instance file; otherwise one is generated from `--p --m --l --seed`.
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    p: usize,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    l: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    len: usize,
    #[arg(long)]
    lookahead: Option<usize>,
    /// Also rebuild the bookkeeping tables for this many positions and check the bounds.
    #[arg(long)]
    bounds: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum ObstructCmd {
    Build {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        f: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 16])]
        scale: Vec<usize>,
    },
    Verify {
        #[arg(long)]
        cert: PathBuf,
        /// Defaults to the subshift named in the certificate.
        #[arg(long)]
        spec: Option<String>,
        /// Defaults to the set named in the certificate.
        #[arg(long)]
        f: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum ConstructCmd {
    KExample {
        /// Parameter file; the built-in toy run otherwise.
        #[arg(long)]
        params: Option<PathBuf>,
        /// Search an independence set for the first `j` neighbourhoods.
        #[arg(long)]
        ie_j: Option<usize>,
        #[arg(long)]
        ie_m: Option<usize>,
        #[arg(long, default_value_t = 3)]
        ie_s: usize,
        #[arg(long, default_value_t = 60)]
        ie_horizon: u64,
        /// Append the generated prefix.
        #[arg(long)]
        dump_x: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    Bernoulli {
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long)]
        targets: String,
        #[arg(long, default_value_t = 4)]
        multiples: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args, Debug)]
struct ExploreArgs {
    #[arg(long, default_value_t = 2)]
    p: usize,
    #[arg(long, default_value_t = 1)]
    l: usize,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 500)]
    len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct SelfcheckArgs {
    #[arg(long, hide = true)]
    inject_stale_c: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok,
    Inconclusive,
    Failed,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Inconclusive => 1,
            Status::Failed => 2,
        }
    }
}

struct Outcome {
    text: String,
    status: Status,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: Status::Ok }
    }

    fn with(text: String, status: Status) -> Self {
        Outcome { text, status }
    }
}

enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_spec(arg: &str) -> CliResult<SubshiftSpec> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return match name {
            "golden" => Ok(SubshiftSpec::golden_mean()),
            "fibonacci" => Ok(SubshiftSpec::fibonacci()),
            "thue-morse" => Ok(SubshiftSpec::thue_morse()),
            _ => match name.strip_prefix("full").and_then(|p| p.parse().ok()) {
                Some(p) => Ok(SubshiftSpec::full(p)),
                None => Err(Failure::Input(format!("unknown builtin subshift {name}"))),
            },
        };
    }
    let text = read(Path::new(arg))?;
    text.parse().map_err(|e: Error| Failure::Input(format!("{arg}: {e}")))
}

fn load_shift(arg: &str) -> CliResult<Subshift> {
    Ok(Subshift::new(load_spec(arg)?)?)
}

/// `h;e1,e2`, `a..b`, `@file`, or `family@horizon`.
fn load_set(arg: &str) -> CliResult<SubsetWindow> {
    if let Some(path) = arg.strip_prefix('@') {
        let text = read(Path::new(path))?;
        return text.trim().parse().map_err(|e: Error| Failure::Input(format!("{path}: {e}")));
    }
    if !arg.contains(';') {
        if let Some((a, b)) = arg.split_once("..") {
            let bad = || Failure::Input(format!("bad interval {arg}"));
            let (a, b): (u64, u64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            return Ok(SubsetWindow::interval(a..b));
        }
        if let Some((family, horizon)) = arg.rsplit_once('@') {
            let family: FamilySpec = family.parse()?;
            let horizon = horizon
                .parse()
                .map_err(|_| Failure::Input(format!("bad horizon in {arg}")))?;
            return Ok(family.prefix(horizon)?);
        }
    }
    Ok(arg.parse()?)
}

fn load_tuple(args: &TupleArgs) -> CliResult<CylinderTuple> {
    let shift = load_shift(&args.spec.spec)?;
    Ok(CylinderTuple::new(shift, parse_targets(&args.targets)?)?)
}

fn parse_ratio(s: &str) -> CliResult<Ratio<u64>> {
    let bad = || Failure::Input(format!("bad ratio {s}"));
    let r = match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b == 0 {
                return Err(bad());
            }
            Ratio::new(a, b)
        }
        None => Ratio::from_integer(s.trim().parse().map_err(|_| bad())?),
    };
    Ok(r)
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn families(cmd: FamiliesCmd) -> CliResult<Outcome> {
    Ok(match cmd {
        FamiliesCmd::Densities { set, window } => {
            let r = densities(&load_set(&set)?, window)?;
            Outcome::ok(format!(
                "lower,upper,banach_upper,window\n{},{},{},{}\n",
                r.lower, r.upper, r.banach_upper, r.window_length
            ))
        }
        FamiliesCmd::Predicates { set, gap, thick } => {
            let r = family_predicates(&load_set(&set)?, gap, thick)?;
            let pws = r
                .pws_witness
                .map_or("none".to_string(), |w| format!("[{},{}) gap {}", w.start, w.end, w.gap));
            Outcome::ok(format!(
                "syndetic_with_gap={}\nthick_up_to={}\npws_witness={pws}\n",
                r.syndetic_with_gap, r.thick_up_to
            ))
        }
        FamiliesCmd::Ip { gens } => Outcome::ok(format!("{}\n", ip_generate(&gens)?)),
        FamiliesCmd::Block { set, pattern, depth } => match block_witness(&load_set(&set)?, &load_set(&pattern)?, depth)? {
            BlockWitness::Found(b) => Outcome::ok(format!("found {}\n", join(&b))),
            BlockWitness::Inconclusive { failed_at, partial } => Outcome::with(
                format!("inconclusive at j={failed_at} after {}\n", join(&partial)),
                Status::Inconclusive,
            ),
        },
        FamiliesCmd::Diff { set } => Outcome::ok(format!("{}\n", difference_set(&load_set(&set)?)?)),
        FamiliesCmd::Translate {
            set,
            from,
            to,
            pattern,
            k,
        } => {
            let r = find_translate(&load_set(&set)?, from..to, &load_set(&pattern)?, k)?;
            let required = r.required_length.map_or("none".to_string(), |n| n.to_string());
            let text = format!(
                "translate={}\ncount={}\nsuccess={}\nprecondition={}\nrequired_length={required}\n",
                r.translate, r.count, r.success, r.precondition_holds
            );
            let status = if r.success { Status::Ok } else { Status::Inconclusive };
            Outcome::with(text, status)
        }
        FamiliesCmd::Fss { blocks, growth } => {
            let r = fss_construct(blocks, growth)?;
            let mut text = String::from("block,t,elements\n");
            for (i, (a, t)) in r.blocks.iter().enumerate() {
                let _ = writeln!(text, "{},{t},{}", i + 1, a.iter().map(u64::to_string).collect::<Vec<_>>().join(" "));
            }
            let _ = writeln!(text, "set={}", r.set);
            Outcome::ok(text)
        }
        FamiliesCmd::AntiSs { set, n } => {
            let r = anti_ss_sparse(&load_set(&set)?, n)?;
            let text = format!("set={}\nmax_intersection={}\ncomplete={}\n", r.set, r.max_intersection, r.complete);
            let status = if r.complete { Status::Ok } else { Status::Inconclusive };
            Outcome::with(text, status)
        }
        FamiliesCmd::Generate { family, horizon } => {
            let f: FamilySpec = family.parse()?;
            Outcome::ok(format!("{}\n", f.prefix(horizon)?))
        }
    })
}

fn subshift(cmd: SubshiftCmd) -> CliResult<Outcome> {
    Ok(match cmd {
        SubshiftCmd::Info { spec, n } => {
            let shift = load_shift(&spec.spec)?;
            let memory = shift.spec().memory().map_or("none".to_string(), |m| m.to_string());
            let mut text = format!(
                "kind={}\np={}\nmemory={memory}\napproximate={}\nn,count\n",
                shift.spec().kind_name(),
                shift.alphabet_size(),
                shift.is_approximate()
            );
            for k in 1..=n {
                let _ = writeln!(text, "{k},{}", shift.count(k)?);
            }
            Outcome::ok(text)
        }
        SubshiftCmd::Language { spec, n } => {
            let words = load_shift(&spec.spec)?.language(n)?;
            Outcome::ok(words.iter().map(|w| format!("{w}\n")).collect())
        }
        SubshiftCmd::ReturnTimes { spec, u, v, horizon } => {
            let shift = load_shift(&spec.spec)?;
            let r = shift.return_times(&Cylinder::at_zero(u), &Cylinder::at_zero(v), horizon)?;
            Outcome::ok(format!("{r}\n"))
        }
        SubshiftCmd::Mixing { spec, n0 } => {
            let ok = load_shift(&spec.spec)?.is_mixing_window(n0)?;
            Outcome::with(format!("mixing_window={ok}\n"), if ok { Status::Ok } else { Status::Inconclusive })
        }
        SubshiftCmd::Minimal { spec, n, r } => {
            let ok = load_shift(&spec.spec)?.is_minimal_window(n, r)?;
            Outcome::with(format!("minimal_window={ok}\n"), if ok { Status::Ok } else { Status::Inconclusive })
        }
        SubshiftCmd::Product { spec, with } => {
            let a = load_spec(&spec.spec)?;
            let b = load_spec(&with)?;
            Outcome::ok(a.product(&b)?.to_string())
        }
    })
}

fn indep(cmd: IndepCmd) -> CliResult<Outcome> {
    Ok(match cmd {
        IndepCmd::Check { tuple, set } => {
            let t = load_tuple(&tuple)?;
            let f = load_set(&set)?;
            match is_independence_set(&t, &f, tuple.budget.budget())? {
                Verdict::Independent => Outcome::ok("independent\n".into()),
                Verdict::Refuted(a) => {
                    let targets: Vec<usize> = a.iter().map(|i| i + 1).collect();
                    Outcome::ok(format!("refuted targets={}\n", join(&targets)))
                }
            }
        }
        IndepCmd::Density { tuple, k } => {
            let r = max_independence_within(&load_tuple(&tuple)?, k, tuple.budget.budget())?;
            let status = if r.partial { Status::Inconclusive } else { Status::Ok };
            Outcome::with(r.to_csv(), status)
        }
        IndepCmd::Witness {
            tuple,
            bound,
            precision,
            horizon,
        } => {
            let r = density_witness(
                &load_tuple(&tuple)?,
                parse_ratio(&bound)?,
                precision,
                horizon,
                tuple.budget.budget(),
            )?;
            let violation = r.first_violation.map_or("none".to_string(), |v| v.to_string());
            let text = format!("set={}\nfirst_violation={violation}\n", r.set);
            Outcome::with(text, if r.satisfied() { Status::Ok } else { Status::Inconclusive })
        }
        IndepCmd::Ip {
            tuple,
            depth,
            step_horizon,
        } => {
            let r = ip_independence_builder(&load_tuple(&tuple)?, depth, step_horizon, tuple.budget.budget())?;
            let mut text = format!(
                "generators={}\ntried={}\nverified_sums={}\n",
                join(&r.generators),
                join(&r.tried),
                r.verified_sums
            );
            match r.exhausted_at {
                None => Outcome::ok(text),
                Some(step) => {
                    let _ = writeln!(text, "exhausted_at={step}");
                    Outcome::with(text, Status::Inconclusive)
                }
            }
        }
        IndepCmd::Entropy {
            spec,
            cylinders,
            f,
            depth,
            budget,
        } => {
            let shift = load_shift(&spec.spec)?;
            let r = sequence_entropy_bracket(&shift, &cylinders, &load_set(&f)?, depth, budget.budget())?;
            let mut text = format!("lower={:.6}\nupper={:.6}\nm,patterns,independent\n", r.lower, r.upper);
            for (i, (c, s)) in r.pattern_counts.iter().zip(&r.independent_sizes).enumerate() {
                let _ = writeln!(text, "{},{c},{s}", i + 1);
            }
            Outcome::with(text, if r.complete { Status::Ok } else { Status::Inconclusive })
        }
        IndepCmd::Single {
            spec,
            word,
            family,
            horizon,
            budget,
        } => {
            let shift = load_shift(&spec.spec)?;
            let fam: SingleSetFamily = family.parse()?;
            match single_set_independence(&shift, &word, &fam, horizon, budget.budget())? {
                Some(w) => {
                    let step = w.step.map_or("none".to_string(), |s| s.to_string());
                    Outcome::ok(format!("set={}\nstep={step}\n", w.set))
                }
                None => Outcome::with("not found\n".into(), Status::Inconclusive),
            }
        }
    })
}

fn avoid(args: AvoidArgs) -> CliResult<Outcome> {
    let inst = match &args.instance {
        Some(path) => {
            let text = read(path)?;
            text.parse::<AvoidanceInstance>()
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        }
        None => {
            let m = args.m.unwrap_or(4 * args.l + 2);
            let positions = args.len.saturating_sub(m) + 1;
            AvoidanceInstance::generated(args.p, m, args.l, positions.max(args.bounds.unwrap_or(0)), args.seed)?
        }
    };
    if let Some(n) = args.bounds {
        let bk = bookkeeping(&inst, n.min(inst.positions()))?;
        let r = verify_bounds(&bk, &inst)?;
        eprintln!("bounds hold on {} positions; max |C_n| = {}", r.positions, r.max_c);
    }
    let lookahead = args.lookahead.unwrap_or(2 * inst.m());
    Ok(match solve_prefix(&inst, args.len, lookahead)? {
        SolveOutcome::Solved { x, backtracks } => {
            eprintln!("solved with {backtracks} backtracks");
            Outcome::ok(format!("{x}\n"))
        }
        SolveOutcome::Exhausted { position, backtracks } => Outcome::with(
            format!("exhausted at position {position} after {backtracks} backtracks\n"),
            Status::Inconclusive,
        ),
    })
}

fn obstruct(cmd: ObstructCmd) -> CliResult<Outcome> {
    Ok(match cmd {
        ObstructCmd::Build { spec, f, depth, scale } => {
            let shift = load_shift(&spec.spec)?;
            let f = load_set(&f)?;
            let &[s0, s1] = scale.as_slice() else {
                return Err(Failure::Input("--scale takes two values n,r".into()));
            };
            let cert = build_obstruction(&shift, &f, (s0, s1), depth.unwrap_or(f.len()))?;
            let status = match cert.status {
                CertStatus::Refuted => Status::Ok,
                CertStatus::Inconclusive => Status::Inconclusive,
            };
            Outcome::with(cert.to_string(), status)
        }
        ObstructCmd::Verify { cert, spec, f } => {
            let text = read(&cert)?;
            let cert: ObstructionCertificate = text
                .parse()
                .map_err(|e: Error| Failure::Input(format!("{}: {e}", cert.display())))?;
            let shift = match spec {
                Some(s) => load_shift(&s)?,
                None => Subshift::new(cert.spec.clone())?,
            };
            let f = match f {
                Some(f) => load_set(&f)?,
                None => cert.f.clone(),
            };
            let v = verify_certificate(&cert, &shift, &f)?;
            match v.failed {
                None => Outcome::ok("accepted\n".into()),
                Some((stage, why)) => Outcome::with(format!("rejected at {stage}: {why}\n"), Status::Inconclusive),
            }
        }
    })
}

fn construct(cmd: ConstructCmd) -> CliResult<Outcome> {
    Ok(match cmd {
        ConstructCmd::KExample {
            params,
            ie_j,
            ie_m,
            ie_s,
            ie_horizon,
            dump_x,
            budget,
        } => {
            let params = match params {
                Some(path) => {
                    let text = read(&path)?;
                    text.parse::<KExampleParams>()
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
                }
                None => KExampleParams::toy(),
            };
            let run = proximal_k_point(&params)?;
            let mut text = run.audit();
            let mut status = Status::Ok;
            text += "k,n_k,bound,max_gap,pass\n";
            for r in verify_syndetic_zeros(run.x_prefix(), &run.levels) {
                let gap = r.max_gap.map_or("none".to_string(), |g| g.to_string());
                let _ = writeln!(text, "{},{},{},{gap},{}", r.k, r.n, r.bound, r.passed());
                if !r.passed() {
                    status = Status::Failed;
                }
            }
            if let Some(j) = ie_j {
                let m = ie_m.unwrap_or(j + 1);
                let r = verify_ie_window(&run, j, m, ie_s, ie_horizon, budget.budget())?;
                match &r.found {
                    Some(set) => {
                        let _ = writeln!(text, "ie m={} step={} set={}", r.m, r.step, join(set));
                    }
                    None => {
                        let _ = writeln!(text, "ie m={} step={} not found complete={}", r.m, r.step, r.complete);
                        if status == Status::Ok {
                            status = Status::Inconclusive;
                        }
                    }
                }
            }
            if dump_x {
                let _ = writeln!(text, "x={}", run.x_prefix());
            }
            Outcome::with(text, status)
        }
        ConstructCmd::Bernoulli {
            p,
            targets,
            multiples,
            budget,
        } => {
            let shift = Subshift::new(SubshiftSpec::full(p))?;
            let w = bernoulli_rs_witness(&shift, parse_targets(&targets)?, multiples, budget.budget())?;
            let text = format!("k={}\nchecked={}\nverified={}\n", w.k, w.checked, w.verified);
            Outcome::with(text, if w.verified { Status::Ok } else { Status::Failed })
        }
    })
}

fn explore(args: ExploreArgs) -> CliResult<Outcome> {
    let rows = minimal_m_explorer(args.p, args.l, args.trials, args.len, args.seed)?;
    let mut text = String::from("m,trials,successes,rate\n");
    for r in rows {
        let _ = writeln!(text, "{},{},{},{:.4}", r.m, r.trials, r.successes, r.rate());
    }
    Ok(Outcome::ok(text))
}

fn selfcheck(args: SelfcheckArgs) -> Outcome {
    let fault = if args.inject_stale_c { Fault::StaleC } else { Fault::None };
    let r = selfcheck_with(fault);
    let status = if r.passed() { Status::Ok } else { Status::Failed };
    Outcome::with(r.summary(), status)
}

fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Families(c) => families(c),
        Command::Subshift(c) => subshift(c),
        Command::Indep(c) => indep(c),
        Command::Avoid(a) => avoid(a),
        Command::Obstruct(c) => obstruct(c),
        Command::Construct(c) => construct(c),
        Command::Explore(a) => explore(a),
        Command::Selfcheck(a) => Ok(selfcheck(a)),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Invariant(_) => 2,
        Error::SizeLimit(_) => 1,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let out = cli.out.clone();
    match run(cli) {
        Ok(outcome) => {
            match &out {
                Some(path) => {
                    if let Err(e) = fs::write(path, &outcome.text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(3);
                    }
                }
                None => print!("{}", outcome.text),
            }
            ExitCode::from(outcome.status.code())
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
