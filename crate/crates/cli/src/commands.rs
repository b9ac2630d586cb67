use std::error::Error;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use segeuler::identities::{
    unimodality_scan, verify_classical_worpitzky, verify_dobinski, verify_gf, verify_lemma_gf,
    verify_recurrences_and_symmetries, verify_specializations, verify_worpitzky,
    verify_worpitzky_difference, BinomialShift, DenominatorShift, MirrorIndex, SumRange,
    VerificationReport,
};
use segeuler::polyring::{named_poly, Family};
use segeuler::segcomb::{enumerate_compositions, enumerate_permutations};
use segeuler::tables::{
    bfile, entries_csv, entries_json, eulerian_row, k_entries, k_latex, k_text, stirling2_row,
    t_entries, t_latex, t_recurrence_rows, t_table, Method,
};
use segeuler::{BiPoly, KTables};
use serde_json::{json, Value};

use crate::{
    Check, Cli, Command, EnumerateArgs, ExportArgs, FormArg, Format, MethodArg, Objects, PolyArgs,
    PolyName, RangeArg, TableArgs, TableName, VerifyArgs,
};

type Outcome = Result<bool, Box<dyn Error>>;

/// Dispatches one command. `Ok(false)` means a verification failed.
pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Enumerate(args) => enumerate(args, cli.oracle_cap),
        Command::Table(args) => table(args, cli.oracle_cap),
        Command::Poly(args) => poly(args),
        Command::Verify(args) => verify(args, cli.oracle_cap),
        Command::Export(args) => export(args),
    }
}

fn usage(msg: impl Into<String>) -> Box<dyn Error> {
    msg.into().into()
}

fn unsupported(format: Format, what: &str) -> Box<dyn Error> {
    usage(format!(
        "--format {} is not available for {what}",
        format_name(format)
    ))
}

fn format_name(format: Format) -> &'static str {
    match format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Latex => "latex",
        Format::Bfile => "bfile",
    }
}

fn enumerate(args: &EnumerateArgs, cap: usize) -> Outcome {
    if args.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    if args.n > cap {
        return Err(segeuler::Error::OracleCapExceeded { n: args.n, cap }.into());
    }
    let items: Vec<String> = match args.what {
        Objects::Comps => {
            if args.des.is_some() {
                return Err(usage("--des/--seg filter permutations only"));
            }
            enumerate_compositions(args.n)
                .map(|c| c.to_string())
                .collect()
        }
        Objects::Perms => {
            let filter = args.des.zip(args.seg);
            enumerate_permutations(args.n, filter)
                .map(|p| p.to_string())
                .collect()
        }
    };
    match args.format {
        Format::Text => items.iter().for_each(|s| println!("{s}")),
        Format::Json => println!("{}", Value::from(items)),
        f => return Err(unsupported(f, "enumerate")),
    }
    Ok(true)
}

fn triangle(
    name: TableName,
    n_max: usize,
    method: Option<MethodArg>,
) -> Result<Vec<Vec<BigInt>>, Box<dyn Error>> {
    Ok(match name {
        TableName::T => match method {
            None | Some(MethodArg::Recurrence) => t_recurrence_rows(n_max),
            Some(MethodArg::Sum) => (0..=n_max)
                .map(|n| t_table(n, Method::Sum).map(|row| row.entries.into_values().collect()))
                .collect::<Result<_, _>>()?,
            Some(_) => return Err(usage("table T accepts --method sum or recurrence")),
        },
        TableName::A | TableName::S if method.is_some() => {
            return Err(usage("--method applies to tables T and K"));
        }
        TableName::A => (0..=n_max).map(eulerian_row).collect(),
        TableName::S => (0..=n_max).map(stirling2_row).collect(),
        TableName::K => unreachable!("K is not a triangle"),
    })
}

fn k_method(method: Option<MethodArg>) -> Result<Method, Box<dyn Error>> {
    match method {
        None | Some(MethodArg::RecurrenceN) | Some(MethodArg::Recurrence) => {
            Ok(Method::RecurrenceN)
        }
        Some(MethodArg::RecurrenceJ) => Ok(Method::RecurrenceJ),
        Some(MethodArg::ClosedForm) => Ok(Method::ClosedForm),
        Some(MethodArg::Enumerate) => Ok(Method::Enumerate),
        Some(MethodArg::Sum) => Err(usage("table K has no sum method")),
    }
}

/// Column `k` or the `d`-th diagonal from the right edge of a triangle, as
/// `(n, value)` pairs.
fn sequence(
    rows: &[Vec<BigInt>],
    column: Option<usize>,
    diagonal: Option<usize>,
) -> Option<Vec<(usize, BigInt)>> {
    let pick = |row: &Vec<BigInt>| match (column, diagonal) {
        (Some(k), _) => row.get(k).cloned(),
        (None, Some(d)) => row.len().checked_sub(d + 1).map(|k| row[k].clone()),
        (None, None) => None,
    };
    if column.is_none() && diagonal.is_none() {
        return None;
    }
    Some(
        rows.iter()
            .enumerate()
            .filter_map(|(n, row)| pick(row).map(|v| (n, v)))
            .collect(),
    )
}

fn table(args: &TableArgs, cap: usize) -> Outcome {
    if args.name == TableName::K {
        if args.column.is_some() || args.diagonal.is_some() {
            return Err(usage(
                "--column/--diagonal apply to the triangles T, A and S",
            ));
        }
        let tables = KTables::by_method(args.n_max, k_method(args.method)?, cap)?;
        let slices = &tables.slices()[1.min(tables.slices().len())..];
        match args.format {
            Format::Text => {
                let blocks: Vec<String> = slices.iter().map(k_text).collect();
                print!("{}", blocks.join("\n"));
            }
            Format::Json => println!("{}", entries_json(&k_entries(slices))),
            Format::Csv => print!(
                "{}",
                entries_csv(&["n", "i", "j", "value"], &k_entries(slices))?
            ),
            Format::Latex => slices.iter().for_each(|s| print!("{}", k_latex(s))),
            Format::Bfile => {
                return Err(usage(
                    "b-files hold one sequence; use table T, A or S with --column",
                ))
            }
        }
        return Ok(true);
    }

    let rows = triangle(args.name, args.n_max, args.method)?;
    let picked = sequence(&rows, args.column, args.diagonal);
    match (args.format, picked) {
        (Format::Bfile, Some(terms)) => print!("{}", bfile(&terms, args.offset)),
        (Format::Bfile, None) => return Err(usage("--format bfile needs --column or --diagonal")),
        (Format::Text, Some(terms)) | (Format::Csv, Some(terms)) => {
            let entries: Vec<_> = terms.into_iter().map(|(n, v)| (vec![n], v)).collect();
            print!("{}", entries_csv(&["n", "value"], &entries)?);
        }
        (Format::Json, Some(terms)) => {
            let entries: Vec<_> = terms.into_iter().map(|(n, v)| (vec![n], v)).collect();
            println!("{}", entries_json(&entries));
        }
        (Format::Latex, Some(_)) => return Err(usage("--format latex prints whole triangles")),
        (Format::Text, None) => print!("{}", segeuler::tables::t_text(&rows)),
        (Format::Json, None) => println!("{}", entries_json(&t_entries(&rows))),
        (Format::Csv, None) => print!("{}", entries_csv(&["n", "k", "value"], &t_entries(&rows))?),
        (Format::Latex, None) => print!("{}", t_latex(&rows)),
    }
    Ok(true)
}

fn poly(args: &PolyArgs) -> Outcome {
    let (label, p): (&str, BiPoly) = match args.name {
        PolyName::Alpha => ("alpha", segeuler::polyring::alpha_poly(args.n)),
        PolyName::P => ("P", named_poly(Family::P, args.n)),
        PolyName::A => ("A", named_poly(Family::A, args.n)),
        PolyName::B => ("B", named_poly(Family::B, args.n)),
    };
    match args.format {
        Format::Text => println!("{p}"),
        Format::Json => println!(
            "{}",
            json!({ "name": label, "n": args.n, "coefficients": p.to_json() })
        ),
        f => return Err(unsupported(f, "poly")),
    }
    Ok(true)
}

fn mirror(f: FormArg) -> MirrorIndex {
    match f {
        FormArg::Corrected => MirrorIndex::Corrected,
        FormArg::Printed => MirrorIndex::Printed,
    }
}

fn dobinski_shift(f: FormArg) -> DenominatorShift {
    match f {
        FormArg::Corrected => DenominatorShift::Corrected,
        FormArg::Printed => DenominatorShift::Printed,
    }
}

fn worpitzky_shift(f: FormArg) -> BinomialShift {
    match f {
        FormArg::Corrected => BinomialShift::Corrected,
        FormArg::Printed => BinomialShift::Printed,
    }
}

fn sum_range(r: RangeArg) -> SumRange {
    match r {
        RangeArg::Full => SumRange::Full,
        RangeArg::UpToKMinusOne => SumRange::UpToKMinusOne,
    }
}

fn verify(args: &VerifyArgs, cap: usize) -> Outcome {
    if args.n_max == 0 {
        return Err(usage("--n-max must be at least 1"));
    }
    let wants = |c: Check| args.check == Check::All || args.check == c;
    let uses_series = wants(Check::Gf) || wants(Check::LemmaGf);
    let samples = args.samples.unwrap_or((args.order + 1) * (args.order + 1));
    let top = if uses_series {
        args.n_max.max(args.order)
    } else {
        args.n_max
    };
    let tables = KTables::by_recurrence(top);

    let mut reports: Vec<VerificationReport> = Vec::new();
    if wants(Check::Gf) {
        reports.push(verify_gf(&tables, args.order, samples, args.seed)?);
    }
    if wants(Check::LemmaGf) {
        reports.push(verify_lemma_gf(&tables, args.order, samples, args.seed)?);
    }
    if wants(Check::Dobinski) {
        for n in 1..=args.n_max {
            for t0 in &args.t {
                reports.push(verify_dobinski(
                    &tables,
                    n,
                    t0,
                    args.terms,
                    dobinski_shift(args.dobinski_form),
                )?);
            }
        }
    }
    if wants(Check::Worpitzky) {
        let r_max = args.r_max.unwrap_or(args.n_max - 1);
        let shift = worpitzky_shift(args.worpitzky_form);
        reports.push(verify_worpitzky(
            &tables,
            1..=args.n_max,
            0..=r_max,
            args.k_max,
            shift,
        )?);
        reports.push(verify_classical_worpitzky(args.n_max, args.k_max)?);
        reports.push(verify_worpitzky_difference(
            args.n_max,
            args.k_max,
            sum_range(args.sum_range),
        )?);
    }
    if wants(Check::Specializations) {
        reports.push(verify_specializations(&tables, args.n_max)?);
    }
    if wants(Check::Recurrences) {
        reports.push(verify_recurrences_and_symmetries(
            &tables,
            args.n_max,
            mirror(args.mirror_index),
            cap,
        )?);
    }
    if wants(Check::Unimodality) {
        reports.push(unimodality_scan(&tables, args.n_max)?);
    }

    match args.format {
        Format::Text => reports.iter().for_each(|r| println!("{r}")),
        Format::Json => {
            let all: Vec<Value> = reports.iter().map(VerificationReport::to_json).collect();
            println!("{}", serde_json::to_string_pretty(&all)?);
        }
        f => return Err(unsupported(f, "verify")),
    }
    Ok(reports.iter().all(VerificationReport::passed))
}

fn write(dir: &Path, name: &str, body: impl AsRef<[u8]>) -> Result<(), Box<dyn Error>> {
    let path = dir.join(name);
    fs::write(&path, body).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn export(args: &ExportArgs) -> Outcome {
    let dir = &args.out_dir;
    fs::create_dir_all(dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))?;
    let rows = t_recurrence_rows(args.n_max);
    let t = t_entries(&rows);
    write(dir, "T.txt", segeuler::tables::t_text(&rows))?;
    write(dir, "T.json", entries_json(&t).to_string())?;
    write(dir, "T.csv", entries_csv(&["n", "k", "value"], &t)?)?;
    write(dir, "T.tex", t_latex(&rows))?;
    let bell: Vec<(usize, BigInt)> = rows
        .iter()
        .enumerate()
        .map(|(n, r)| (n, r[0].clone()))
        .collect();
    write(dir, "ordered_bell.b", bfile(&bell, None))?;

    let tables = KTables::by_recurrence(args.n_max);
    let slices = &tables.slices()[1.min(tables.slices().len())..];
    let k = k_entries(slices);
    write(dir, "K.json", entries_json(&k).to_string())?;
    write(dir, "K.csv", entries_csv(&["n", "i", "j", "value"], &k)?)?;
    write(dir, "K.tex", slices.iter().map(k_latex).collect::<String>())?;

    let alphas: Vec<Value> = (0..=args.n_max)
        .map(|n| json!({ "name": "alpha", "n": n, "coefficients": tables.alpha(n).to_json() }))
        .collect();
    write(dir, "alpha.json", serde_json::to_string_pretty(&alphas)?)?;
    for (name, rows) in [
        ("A", (0..=args.n_max).map(eulerian_row).collect::<Vec<_>>()),
        ("S", (0..=args.n_max).map(stirling2_row).collect()),
    ] {
        write(
            dir,
            &format!("{name}.csv"),
            entries_csv(&["n", "k", "value"], &t_entries(&rows))?,
        )?;
    }
    println!("wrote tables for n <= {} to {}", args.n_max, dir.display());
    Ok(true)
}
