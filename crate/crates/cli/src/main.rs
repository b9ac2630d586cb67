//! `segeuler`: tables, polynomials, enumeration and identity checks for
//! generalized Eulerian numbers.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 for
//! usage or range errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

#[derive(Parser, Debug)]
#[command(
    name = "segeuler",
    version,
    about = "Generalized Eulerian numbers on segmented permutations"
)]
pub struct Cli {
    /// Largest n the brute-force enumeration oracle may be run at.
    #[arg(long, global = true, default_value_t = segeuler::tables::DEFAULT_ORACLE_CAP)]
    pub oracle_cap: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List segmented compositions or permutations of n.
    Enumerate(EnumerateArgs),
    /// Print a table of counts.
    Table(TableArgs),
    /// Print one of the polynomials.
    Poly(PolyArgs),
    /// Run identity verifications.
    Verify(VerifyArgs),
    /// Write every table and polynomial up to --n-max into a directory.
    Export(ExportArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objects {
    Comps,
    Perms,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
    Latex,
    Bfile,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    pub what: Objects,
    #[arg(long)]
    pub n: usize,
    /// Keep only permutations with this many descents (needs --seg).
    #[arg(long, requires = "seg")]
    pub des: Option<usize>,
    /// Keep only permutations with this many bars (needs --des).
    #[arg(long, requires = "des")]
    pub seg: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableName {
    T,
    K,
    A,
    S,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Sum,
    Recurrence,
    Enumerate,
    RecurrenceN,
    RecurrenceJ,
    ClosedForm,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(value_enum, ignore_case = true)]
    pub name: TableName,
    #[arg(long)]
    pub n_max: usize,
    /// T: sum | recurrence. K: enumerate | recurrence-n | recurrence-j | closed-form.
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Restrict a triangle to its k-th column.
    #[arg(long, conflicts_with = "diagonal")]
    pub column: Option<usize>,
    /// Restrict a triangle to its d-th diagonal counted from the right edge.
    #[arg(long)]
    pub diagonal: Option<usize>,
    /// First index of a b-file; defaults to the natural index n.
    #[arg(long)]
    pub offset: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyName {
    Alpha,
    #[value(name = "P")]
    P,
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    pub name: PolyName,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    All,
    Gf,
    LemmaGf,
    Dobinski,
    Worpitzky,
    Specializations,
    Recurrences,
    Unimodality,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormArg {
    Corrected,
    Printed,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RangeArg {
    Full,
    UpToKMinusOne,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub check: Check,
    #[arg(long, default_value_t = 7)]
    pub n_max: usize,
    /// Series order for the generating-function checks.
    #[arg(long, default_value_t = 7)]
    pub order: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Sample points for the generating-function checks; at least (order+1)^2.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Evaluation points for the Dobinski series, e.g. 0,1/2,-1/2.
    #[arg(long, value_delimiter = ',', value_parser = parse_rational, allow_hyphen_values = true,
          default_values = ["0", "1/2", "-1/2"])]
    pub t: Vec<BigRational>,
    /// Exact terms of the Dobinski series before the tail bound.
    #[arg(long, default_value_t = 300)]
    pub terms: usize,
    #[arg(long, default_value_t = 12)]
    pub k_max: usize,
    /// Largest r for the generalized Worpitzky identity (default n_max - 1).
    #[arg(long)]
    pub r_max: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormArg::Corrected)]
    pub mirror_index: FormArg,
    #[arg(long, value_enum, default_value_t = FormArg::Corrected)]
    pub dobinski_form: FormArg,
    #[arg(long, value_enum, default_value_t = FormArg::Corrected)]
    pub worpitzky_form: FormArg,
    #[arg(long, value_enum, default_value_t = RangeArg::Full)]
    pub sum_range: RangeArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[arg(long)]
    pub n_max: usize,
    #[arg(long)]
    pub out_dir: PathBuf,
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| format!("{s:?} is not a rational number: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
