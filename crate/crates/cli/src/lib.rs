//! Command-line front end. [`run`] takes the full argument vector and
//! returns the exit code together with everything meant for standard output
//! and standard error, so the binary and the tests share one code path.

mod commands;
pub mod report;
pub mod verify;

use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use parity_groups::abelian::{IntegerVector, RationalVector};
use parity_groups::group::{EmbeddedKind, StandardKind};
use parity_groups::lie::{AlgebraKind, Tolerances};
use parity_groups::{Caps, Error, ParityKind, PartitionSpec, SignedPermutation};
use serde::Serialize;

use crate::report::{Format, Report};
use crate::verify::Criterion;

/// Exit code when every check passed.
pub const EXIT_PASS: i32 = 0;
/// Exit code when a verification failed.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for usage and parameter errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "parity", version, about = "Signed-permutation parity groups, quotient lattices and their Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "table", global = true)]
    #[serde(skip)]
    pub format: Format,
    /// Overrides the reconstruction and imaginary-residue tolerances.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    /// Overrides the orthogonality tolerance.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_orthogonality: Option<f64>,
    /// Overrides the input unitarity tolerance.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_unitarity: Option<f64>,
    /// Largest subgroup a closure may produce.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap_closure: Option<usize>,
    /// Largest JP enumeration.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap_jp: Option<usize>,
    /// Largest degree for full enumeration of P_n.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap_enum_degree: Option<usize>,
    /// Largest group order handed to isomorphism search.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap_iso: Option<usize>,
    /// Largest candidate-automorphism enumeration.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap_candidates: Option<usize>,
}

impl GlobalArgs {
    pub fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            closure: self.cap_closure.unwrap_or(d.closure),
            jp: self.cap_jp.unwrap_or(d.jp),
            max_enum_degree: self.cap_enum_degree.unwrap_or(d.max_enum_degree),
            iso: self.cap_iso.unwrap_or(d.iso),
            candidates: self.cap_candidates.unwrap_or(d.candidates),
        }
    }

    pub fn tolerances(&self) -> Result<Tolerances, Error> {
        let d = Tolerances::default();
        let t = Tolerances {
            unitarity: self.tol_unitarity.unwrap_or(d.unitarity),
            reconstruction: self.tol.unwrap_or(d.reconstruction),
            orthogonality: self.tol_orthogonality.unwrap_or(d.orthogonality),
            imaginary: self.tol.unwrap_or(d.imaginary),
        };
        for v in [t.unitarity, t.reconstruction, t.orthogonality, t.imaginary] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Invalid(format!("tolerance must be positive and finite, got {v}")));
            }
        }
        Ok(t)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the acceptance checks.
    Verify(VerifyArgs),
    /// Signed-permutation groups and their parity kernels.
    #[command(subcommand)]
    Group(GroupCmd),
    /// The finite quotients Z^n / JZ^n.
    #[command(subcommand)]
    Quotient(QuotientCmd),
    /// Charts of R^n / JZ^n.
    #[command(subcommand)]
    Chart(ChartCmd),
    /// Quotient-lattice complexes and their rotation groups.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Parity Lie algebras.
    #[command(subcommand)]
    Lie(LieCmd),
    /// Random unitaries and their O·diag·O factorization.
    #[command(subcommand)]
    Unitary(UnitaryCmd),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum, default_value = "all")]
    pub criterion: Criterion,
    /// Caps every degree range at min(stated bound, max-n).
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..=16))]
    pub max_n: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[value(rename_all = "UPPER")]
pub enum GroupKind {
    P,
    AP,
    BP,
    CP,
}

impl GroupKind {
    pub fn standard(self) -> Option<StandardKind> {
        match self {
            GroupKind::P => None,
            GroupKind::AP => Some(StandardKind::AP),
            GroupKind::BP => Some(StandardKind::BP),
            GroupKind::CP => Some(StandardKind::CP),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[value(rename_all = "UPPER")]
pub enum SmallKind {
    CP2,
    BP2,
    AP3,
}

impl SmallKind {
    pub fn embedded(self) -> EmbeddedKind {
        match self {
            SmallKind::CP2 => EmbeddedKind::CP2,
            SmallKind::BP2 => EmbeddedKind::BP2,
            SmallKind::AP3 => EmbeddedKind::AP3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[value(rename_all = "UPPER")]
pub enum LatticeKind {
    A,
    B,
    J,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[value(rename_all = "UPPER")]
pub enum AlgebraArg {
    A,
    B,
    C,
}

impl AlgebraArg {
    pub fn kind(self) -> AlgebraKind {
        match self {
            AlgebraArg::A => AlgebraKind::A,
            AlgebraArg::B => AlgebraKind::B,
            AlgebraArg::C => AlgebraKind::C,
        }
    }
}

fn parse_partition(s: &str) -> Result<PartitionSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_element(s: &str) -> Result<SignedPermutation, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rationals(s: &str) -> Result<RationalVector, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_integers(s: &str) -> Result<IntegerVector, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_parity(s: &str) -> Result<ParityKind, String> {
    s.parse::<u8>()
        .ok()
        .and_then(ParityKind::from_index)
        .ok_or_else(|| format!("parity must be 1, 2 or 3, got `{s}`"))
}

fn degree(n: usize) -> Result<usize, String> {
    if n == 0 {
        Err("n must be at least 1".into())
    } else {
        Ok(n)
    }
}

fn parse_degree(s: &str) -> Result<usize, String> {
    s.parse::<usize>().map_err(|e| e.to_string()).and_then(degree)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DegreeArg {
    #[arg(long, value_parser = parse_degree)]
    pub n: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PartitionArg {
    /// Block sizes, e.g. `2,1`.
    #[arg(long, value_parser = parse_partition)]
    pub partition: PartitionSpec,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ElementArg {
    /// Signed permutation, e.g. `π:[2,1];ε:[+1,-1]`.
    #[arg(long, value_parser = parse_element)]
    pub element: SignedPermutation,
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    /// Order of P_n or one of its parity subgroups.
    Order(GroupKindArgs),
    /// Elements of P_n or a parity subgroup.
    List(GroupKindArgs),
    /// Kernel of one parity homomorphism.
    Kernel(KernelArgs),
    /// The three parities of one element.
    Parity(ElementArg),
    /// Product `left ∘ right`.
    Compose(ComposeArgs),
    /// Signed permutation matrix of an element.
    Matrix(ElementArg),
    /// Closure of embedded copies of a small parity group.
    Generate(GenerateArgs),
    /// Isomorphism test between two groups of the same degree.
    Iso(IsoArgs),
    /// Order of the group JP_n.
    Jp(PartitionArg),
    /// Even-weight subgroup of Z_2^n against the span of pair vectors.
    Z2span(DegreeArg),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GroupKindArgs {
    #[arg(long, value_enum, ignore_case = true, default_value = "P")]
    pub kind: GroupKind,
    #[arg(long, value_parser = parse_degree)]
    pub n: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct KernelArgs {
    /// 1 = permutation sign, 2 = sign product, 3 = determinant.
    #[arg(long, value_parser = parse_parity)]
    pub parity: ParityKind,
    #[arg(long, value_parser = parse_degree)]
    pub n: usize,
    /// Also print the elements.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ComposeArgs {
    #[arg(long, value_parser = parse_element)]
    pub left: SignedPermutation,
    #[arg(long, value_parser = parse_element)]
    pub right: SignedPermutation,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenerateArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub kind: SmallKind,
    #[arg(long, value_parser = parse_degree)]
    pub n: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IsoArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub kind: GroupKind,
    #[arg(long, value_enum, ignore_case = true)]
    pub other: GroupKind,
    #[arg(long, value_parser = parse_degree)]
    pub n: usize,
}

#[derive(Debug, Subcommand)]
pub enum QuotientCmd {
    /// Order of Z^n / JZ^n.
    Order(PartitionArg),
    /// Addition table of Z^n / JZ^n.
    Table(PartitionArg),
    /// Image of an integer vector in Z^n / JZ^n.
    Project(ProjectArgs),
    /// Membership of an integer vector in AZ^n, BZ^n or JZ^n.
    Member(MemberArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ProjectArgs {
    #[arg(long, value_parser = parse_partition)]
    pub partition: PartitionSpec,
    /// Comma-separated integers.
    #[arg(long, value_parser = parse_integers, allow_hyphen_values = true)]
    #[serde(serialize_with = "as_text")]
    pub x: IntegerVector,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MemberArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub lattice: LatticeKind,
    /// Required for `--lattice J`.
    #[arg(long, value_parser = parse_partition)]
    pub partition: Option<PartitionSpec>,
    #[arg(long, value_parser = parse_integers, allow_hyphen_values = true)]
    #[serde(serialize_with = "as_text")]
    pub x: IntegerVector,
}

#[derive(Debug, Subcommand)]
pub enum ChartCmd {
    /// Chart coordinates of a rational point.
    Compute(ChartArgs),
    /// Whether two rational points agree in R^n / JZ^n.
    Equiv(EquivArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ChartArgs {
    #[arg(long, value_parser = parse_partition)]
    pub partition: PartitionSpec,
    /// Comma-separated rationals, e.g. `1/2,-3/4,2`.
    #[arg(long, value_parser = parse_rationals, allow_hyphen_values = true)]
    #[serde(serialize_with = "as_text")]
    pub x: RationalVector,
    /// Also print the angles as multiples of π.
    #[arg(long)]
    pub spherical: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EquivArgs {
    #[arg(long, value_parser = parse_partition)]
    pub partition: PartitionSpec,
    #[arg(long, value_parser = parse_rationals, allow_hyphen_values = true)]
    #[serde(serialize_with = "as_text")]
    pub x: RationalVector,
    #[arg(long, value_parser = parse_rationals, allow_hyphen_values = true)]
    #[serde(serialize_with = "as_text")]
    pub y: RationalVector,
}

#[derive(Debug, Subcommand)]
pub enum LatticeCmd {
    /// Nodes, circles and incidence of the quotient complex.
    Complex(PartitionArg),
    /// Compare the JP action with the rotation group.
    Prop1(PartitionArg),
    /// Rotation group of the quotient complex.
    Rotations(RotationArgs),
    /// Automorphisms of the full quotient by Z^n.
    Full(DegreeArg),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RotationArgs {
    #[arg(long, value_parser = parse_partition)]
    pub partition: PartitionSpec,
    /// Also print the rotations as signed permutations.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Subcommand)]
pub enum LieCmd {
    /// so(2) and so(1,1) generators for a partition.
    Generators(GeneratorArgs),
    /// Bracket closure of the generators.
    Closure(GeneratorArgs),
    /// Generator count and closure dimensions.
    Report(PartitionArg),
    /// Split a monomial matrix into permutation and diagonal.
    Factor(FactorArgs),
    /// Arithmetic in one of the 2×2 algebras.
    Algebra(AlgebraArgs),
    /// One-parameter subgroup exp(tX) in floating point.
    Exp(ExpArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GeneratorArgs {
    #[arg(long, value_parser = parse_partition)]
    pub partition: PartitionSpec,
    /// Use every so(1,1) pair instead of one per block pair.
    #[arg(long)]
    pub full: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FactorArgs {
    /// JSON array of rows of "p/q" strings.
    #[arg(long)]
    pub matrix: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AlgebraArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub kind: AlgebraArg,
    /// First element as `x,y`.
    #[arg(long, value_parser = parse_rationals, allow_hyphen_values = true)]
    #[serde(serialize_with = "as_text")]
    pub a: RationalVector,
    /// Second element as `x,y`; defaults to the first.
    #[arg(long, value_parser = parse_rationals, allow_hyphen_values = true)]
    #[serde(serialize_with = "opt_text", skip_serializing_if = "Option::is_none")]
    pub b: Option<RationalVector>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExpArgs {
    /// B or C.
    #[arg(long, value_enum, ignore_case = true)]
    pub kind: AlgebraArg,
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
}

#[derive(Debug, Subcommand)]
pub enum UnitaryCmd {
    /// Haar-random unitary from a seed.
    Random(RandomArgs),
    /// Factor a unitary as O1·diag(e^{iθ})·O2.
    Decompose(DecomposeArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RandomArgs {
    #[arg(long, value_parser = parse_degree)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DecomposeArgs {
    /// JSON rows of [re, im] pairs; a random unitary is used when absent.
    #[arg(long, conflicts_with = "n")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<String>,
    #[arg(long, value_parser = parse_degree)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// What a single invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first), runs the command and renders the
/// report.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_PASS,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let start = Instant::now();
    let format = cli.global.format;
    match commands::dispatch(&cli) {
        Ok(mut report) => {
            report.elapsed_ms = start.elapsed().as_millis();
            Outcome {
                code: if report.pass() { EXIT_PASS } else { EXIT_FAIL },
                stdout: report.emit(format),
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Residual checks are verification failures; everything else is a
/// parameter problem.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResidueCheck { .. } => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

/// Report skeleton with the command echo and parameters.
fn report_for(command: &str, global: &GlobalArgs, args: &impl Serialize) -> Report {
    let mut r = Report::new(command);
    if let Ok(serde_json::Value::Object(map)) = serde_json::to_value(args) {
        for (k, v) in map {
            r.param(&k, v);
        }
    }
    if let Ok(serde_json::Value::Object(map)) = serde_json::to_value(global) {
        for (k, v) in map {
            r.param(&k, v);
        }
    }
    r
}

fn as_text<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn opt_text<S: serde::Serializer, T: std::fmt::Display>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}
