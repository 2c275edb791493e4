//! Front end for the `momentfrac` binary. Every verb reads one JSON
//! document and writes one JSON document; [`run`] returns the exit status.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use momentfrac::arith::{parse_rational, Rational};
use momentfrac::hankel::{find_alpha, normal_indices, MomentSequence, NormalIndices};
use momentfrac::multidim::{
    associated_f, associated_sequences, evaluate_solution, moments_from_atoms, solve_mp, AtomicMeasure,
    BranchCheck, MultiMomentSequence, MultiVerification, SolutionReport, SolveOptions, Strategy,
    TauPolicy,
};
use momentfrac::pfraction::{
    pfraction_expand, pfraction_expand_odd, pq_polynomials, verify_expansion, PAtom, PFraction, Tail,
};
use momentfrac::sfraction::{
    indeterminacy_partial_sums, s_atoms, stieltjes_polynomials_recurrence, IndeterminacyReport, Parity,
    SAtom,
};
use momentfrac::{Poly, RationalFunction};
use serde::{Deserialize, Serialize};
use serde_json::Value;

mod render;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] momentfrac::Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.name(),
            CliError::Io(_) => "io",
            CliError::Usage(_) => "usage",
        }
    }
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Core(momentfrac::Error::Schema(msg.into()))
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "momentfrac", version, about = "Exact continued-fraction solutions of truncated moment problems")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct Io {
    /// Input document; standard input when absent or `-`.
    input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Normal indices of a sequence, or of every associated sequence of a tensor.
    NormalIndices {
        #[command(flatten)]
        io: Io,
    },
    /// P-fraction atoms and first/second-kind polynomials of a sequence.
    Pfraction {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
        #[arg(long)]
        pretty: bool,
    },
    /// S-fraction atoms and Stieltjes polynomials of a sequence.
    Sfraction {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value = "auto")]
        alpha: String,
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
        #[arg(long)]
        pretty: bool,
    },
    /// Solve a sequence or tensor; the report embeds the problem.
    Solve {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "pfraction")]
        strategy: StrategyArg,
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
        /// `zero`, `inf`, or `rational:[n_0,n_1,...]/[d_0,d_1,...]`.
        #[arg(long)]
        tau: Option<String>,
        #[arg(long, default_value = "auto")]
        alpha: String,
        #[arg(long)]
        common_index: Option<usize>,
        #[arg(long)]
        branch_bound: Option<usize>,
        #[arg(long)]
        pretty: bool,
    },
    /// Check a solve report against its problem (or `--against`); exit 1 on mismatch.
    Verify {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        against: Option<PathBuf>,
        /// Coefficients to compare per branch; defaults to the solution's order.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Moment tensor of an atomic measure.
    MomentsFromAtoms {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        ell: usize,
    },
    /// Value of a solve report (or of a measure's associated function) at a point.
    Eval {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        point: String,
    },
    /// Partial sums of `m_j(alpha)` and `l_j` over the S-fraction atoms.
    Diagnose {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "sfraction-alpha")]
        strategy: StrategyArg,
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
        #[arg(long)]
        depth: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Odd => Parity::Odd,
            ParityArg::Even => Parity::Even,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Pfraction,
    Sfraction,
    SfractionAlpha,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Pfraction => Strategy::Pfraction,
            StrategyArg::Sfraction => Strategy::SfractionRegular,
            StrategyArg::SfractionAlpha => Strategy::SfractionAlpha,
        }
    }
}

/// Input documents, told apart by their keys.
enum Input {
    Sequence(MomentSequence),
    Tensor(MultiMomentSequence),
    Measure(AtomicMeasure),
    Report(Box<SolveDoc>),
}

/// `solve` output: the report plus the tensor it answers.
#[derive(Serialize, Deserialize)]
struct SolveDoc {
    problem: MultiMomentSequence,
    #[serde(flatten)]
    report: SolutionReport,
}

fn decode<T: for<'de> Deserialize<'de>>(v: Value) -> CliResult<T> {
    serde_json::from_value(v).map_err(|e| schema(e.to_string()))
}

fn parse_input(text: &str) -> CliResult<Input> {
    let v: Value = serde_json::from_str(text).map_err(|e| schema(format!("invalid JSON: {e}")))?;
    let has = |k: &str| v.get(k).is_some();
    if has("problem") && has("branches") {
        Ok(Input::Report(Box::new(decode(v)?)))
    } else if has("entries") {
        Ok(Input::Tensor(decode(v)?))
    } else if has("atoms") {
        Ok(Input::Measure(decode(v)?))
    } else if has("moments") {
        let s: MomentSequence = decode(v)?;
        if s.is_empty() {
            return Err(schema("moment sequence is empty"));
        }
        Ok(Input::Sequence(s))
    } else {
        Err(schema("unrecognised document: expected moments, entries, atoms or a solve report"))
    }
}

fn read_source(path: Option<&PathBuf>, stdin: &mut dyn Read) -> CliResult<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn as_sequence(input: Input) -> CliResult<MomentSequence> {
    match input {
        Input::Sequence(s) => Ok(s),
        Input::Tensor(t) if t.dim() == 1 => Ok(MomentSequence::new(t.iter().map(|(_, v)| v.clone()).collect())),
        _ => Err(schema("expected a one-variable moment sequence")),
    }
}

fn as_tensor(input: Input) -> CliResult<MultiMomentSequence> {
    match input {
        Input::Sequence(s) => Ok(MultiMomentSequence::from_sequence(&s)?),
        Input::Tensor(t) => Ok(t),
        _ => Err(schema("expected a moment sequence or tensor")),
    }
}

fn parse_alpha(text: &str) -> CliResult<Option<Rational>> {
    if text == "auto" {
        Ok(None)
    } else {
        Ok(Some(parse_rational(text)?))
    }
}

fn parse_coeffs(text: &str) -> CliResult<Poly> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| CliError::Usage(format!("expected [c0,c1,...], got {text:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Poly::zero());
    }
    let coeffs = inner.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(coeffs))
}

/// `zero`, `inf`, or `rational:[n...]/[d...]` with ascending coefficients.
fn parse_tau(text: &str) -> CliResult<Tail> {
    match text {
        "zero" => Ok(Tail::Zero),
        "inf" => Ok(Tail::Infinite),
        _ => {
            let body = text
                .strip_prefix("rational:")
                .ok_or_else(|| CliError::Usage(format!("unknown tau {text:?}")))?;
            let (n, d) = body
                .split_once("]/[")
                .ok_or_else(|| CliError::Usage(format!("expected rational:[..]/[..], got {text:?}")))?;
            let numer = parse_coeffs(&format!("{n}]"))?;
            let denom = parse_coeffs(&format!("[{d}"))?;
            Ok(Tail::Rational(RationalFunction::new(numer, denom)?))
        }
    }
}

fn parse_point(text: &str) -> CliResult<Vec<Rational>> {
    Ok(text.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?)
}

/// Exit status plus the document to emit.
struct Outcome {
    status: i32,
    body: String,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

fn ok(body: String) -> CliResult<Outcome> {
    Ok(Outcome { status: 0, body })
}

#[derive(Serialize)]
struct IndicesDoc<'a> {
    indices: &'a NormalIndices,
}

#[derive(Serialize)]
struct BranchIndices {
    index: Vec<usize>,
    indices: NormalIndices,
}

#[derive(Serialize)]
struct PolyPair {
    p: Poly,
    q: Poly,
}

#[derive(Serialize)]
struct PfractionDoc<'a> {
    indices: &'a NormalIndices,
    complete: bool,
    open_tail: bool,
    atoms: &'a [PAtom],
    polynomials: Vec<PolyPair>,
}

#[derive(Serialize)]
struct StieltjesEntry {
    k: isize,
    p: Poly,
    q: Poly,
}

#[derive(Serialize)]
struct SfractionDoc<'a> {
    #[serde(with = "momentfrac::arith::rational::serde_rational")]
    alpha: Rational,
    atoms: &'a [SAtom],
    stieltjes: Vec<StieltjesEntry>,
}

#[derive(Serialize)]
struct ValueDoc {
    #[serde(with = "momentfrac::arith::rational::serde_rational")]
    value: Rational,
}

#[derive(Serialize)]
struct DiagnoseDoc {
    branches: Vec<Vec<usize>>,
    #[serde(flatten)]
    sums: IndeterminacyReport,
}

fn expand(s: &MomentSequence, parity: Parity) -> CliResult<PFraction> {
    Ok(match parity {
        Parity::Even => pfraction_expand(s)?,
        Parity::Odd => pfraction_expand_odd(s)?,
    })
}

fn closed_first_kind(pf: &PFraction) -> Vec<Poly> {
    let keep = if pf.has_open_tail() { pf.len() - 1 } else { pf.len() };
    pq_polynomials(pf)[1..=keep].iter().map(|(p, _)| p.clone()).collect()
}

fn default_parity(arg: Option<ParityArg>, len: usize) -> Parity {
    arg.map(Parity::from).unwrap_or_else(|| Parity::of_len(len))
}

fn dispatch(verb: &Verb, input: Input) -> CliResult<Outcome> {
    match verb {
        Verb::NormalIndices { .. } => match input {
            Input::Sequence(s) => ok(json(&IndicesDoc { indices: &normal_indices(&s) })),
            Input::Tensor(t) => {
                let branches: Vec<BranchIndices> = associated_sequences(&t)
                    .into_iter()
                    .map(|(index, seq)| BranchIndices { index, indices: normal_indices(&seq) })
                    .collect();
                ok(json(&serde_json::json!({ "branches": branches })))
            }
            _ => Err(schema("expected a moment sequence or tensor")),
        },
        Verb::Pfraction { parity, pretty, .. } => {
            let s = as_sequence(input)?;
            let pf = expand(&s, default_parity(*parity, s.len()))?;
            if *pretty {
                return ok(render::pfraction(&pf));
            }
            let polynomials = pq_polynomials(&pf).into_iter().map(|(p, q)| PolyPair { p, q }).collect();
            ok(json(&PfractionDoc {
                indices: pf.indices(),
                complete: pf.is_complete(),
                open_tail: pf.has_open_tail(),
                atoms: pf.atoms(),
                polynomials,
            }))
        }
        Verb::Sfraction { alpha, parity, pretty, .. } => {
            let s = as_sequence(input)?;
            let pf = expand(&s, default_parity(*parity, s.len()))?;
            let alpha = parse_alpha(alpha)?.unwrap_or_else(|| find_alpha(&closed_first_kind(&pf)));
            let sf = s_atoms(&pf, &alpha)?;
            if *pretty {
                return ok(render::sfraction(&sf));
            }
            let sp = stieltjes_polynomials_recurrence(&sf);
            let stieltjes = (-1..=sp.max_index())
                .map(|k| StieltjesEntry { k, p: sp.p(k).clone(), q: sp.q(k).clone() })
                .collect();
            ok(json(&SfractionDoc { alpha, atoms: sf.atoms(), stieltjes }))
        }
        Verb::Solve { strategy, parity, tau, alpha, common_index, branch_bound, pretty, .. } => {
            let t = as_tensor(input)?;
            let mut opts = SolveOptions::new((*strategy).into(), default_parity(*parity, t.ell() + 1));
            if let Some(tau) = tau {
                opts.tau = TauPolicy::Uniform(parse_tau(tau)?);
            }
            opts.alpha = parse_alpha(alpha)?;
            opts.common_index = *common_index;
            opts.branch_bound = *branch_bound;
            let sol = solve_mp(&t, &opts)?;
            if *pretty {
                return ok(render::solution(&sol));
            }
            let report = momentfrac::multidim::assemble_report(&sol);
            ok(json(&SolveDoc { problem: t, report }))
        }
        Verb::Verify { .. } => unreachable!("handled by verify"),
        Verb::MomentsFromAtoms { ell, .. } => match input {
            Input::Measure(mu) => ok(json(&moments_from_atoms(&mu, *ell))),
            _ => Err(schema("expected an atomic measure")),
        },
        Verb::Eval { point, .. } => {
            let point = parse_point(point)?;
            let value = match input {
                Input::Report(doc) => evaluate_solution(&doc.report.solution, &point)?,
                Input::Measure(mu) => associated_f(&mu, &point)?,
                _ => return Err(schema("expected a solve report or an atomic measure")),
            };
            ok(json(&ValueDoc { value }))
        }
        Verb::Diagnose { strategy, parity, depth, .. } => {
            let t = as_tensor(input)?;
            let strategy: Strategy = (*strategy).into();
            if strategy == Strategy::Pfraction {
                return Err(CliError::Usage("diagnose needs an S-fraction strategy".into()));
            }
            let opts = SolveOptions::new(strategy, default_parity(*parity, t.ell() + 1));
            let sol = solve_mp(&t, &opts)?;
            let sfs: Vec<_> = sol
                .branches
                .iter()
                .filter_map(|b| match &b.solved.fraction {
                    momentfrac::multidim::Fraction::Sfraction(sf) => Some(sf.clone()),
                    momentfrac::multidim::Fraction::Pfraction(_) => None,
                })
                .collect();
            let sums = indeterminacy_partial_sums(&sfs, depth.unwrap_or(usize::MAX));
            ok(json(&DiagnoseDoc {
                branches: sol.branches.iter().map(|b| b.index.clone()).collect(),
                sums,
            }))
        }
    }
}

fn verify(input: Input, against: Option<&PathBuf>, order: Option<usize>, stdin: &mut dyn Read) -> CliResult<Outcome> {
    let Input::Report(doc) = input else {
        return Err(schema("verify expects a solve report"));
    };
    let tensor = match against {
        Some(p) => as_tensor(parse_input(&read_source(Some(p), stdin)?)?)?,
        None => doc.problem.clone(),
    };
    let sol = &doc.report.solution;
    let result = match order {
        None => momentfrac::multidim::verify_multidim(sol, &tensor)?,
        Some(order) => {
            if tensor.dim() != sol.dim {
                return Err(schema("tensor dimension does not match the report"));
            }
            let assoc = associated_sequences(&tensor);
            let branches = sol
                .branches
                .iter()
                .map(|b| {
                    let seq = assoc
                        .get(&b.index)
                        .ok_or_else(|| schema(format!("tensor has no branch {:?}", b.index)))?;
                    Ok(BranchCheck {
                        index: b.index.clone(),
                        report: verify_expansion(b.solution(), seq, order)?,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            MultiVerification { ok: branches.iter().all(|b| b.report.ok), order, branches }
        }
    };
    Ok(Outcome { status: if result.ok { 0 } else { 1 }, body: json(&result) })
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    error: &'a str,
    message: String,
}

fn error_body(name: &str, message: String) -> String {
    json(&ErrorDoc { error: name, message })
}

/// Runs one invocation. Results go to `stdout` (or `--output`), error
/// documents to `stderr`. Returns 0 on success, 1 on a verification
/// mismatch and 2 on any error.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            let _ = stderr.write_all(error_body("usage", first).as_bytes());
            return 2;
        }
    };
    let io = match &cli.verb {
        Verb::NormalIndices { io }
        | Verb::Pfraction { io, .. }
        | Verb::Sfraction { io, .. }
        | Verb::Solve { io, .. }
        | Verb::Verify { io, .. }
        | Verb::MomentsFromAtoms { io, .. }
        | Verb::Eval { io, .. }
        | Verb::Diagnose { io, .. } => io,
    };
    let result = read_source(io.input.as_ref(), stdin)
        .and_then(|text| parse_input(&text))
        .and_then(|input| match &cli.verb {
            Verb::Verify { against, order, .. } => verify(input, against.as_ref(), *order, stdin),
            verb => dispatch(verb, input),
        });
    match result {
        Ok(out) => {
            let written = match &io.output {
                Some(p) => fs::write(p, &out.body).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
                None => stdout.write_all(out.body.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
            };
            match written {
                Ok(()) => out.status,
                Err(e) => {
                    let _ = stderr.write_all(error_body(e.name(), e.to_string()).as_bytes());
                    2
                }
            }
        }
        Err(e) => {
            let _ = stderr.write_all(error_body(e.name(), e.to_string()).as_bytes());
            2
        }
    }
}
