use std::fmt::{self, Display};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{CommandFactory, Parser, Subcommand};
use fusionlab_cli::document::{Kind, ModularDataDocument, ToLabelRecord};
use fusionlab_cli::suite::{self, PairRange};
use fusionlab_core::affine_sl2::simple_current_row;
use fusionlab_core::extension::shared_exponent;
use fusionlab_core::{
    affine_category, AdmissibleLevel, CosetSetup, Cyclotomic, Error, KacLabel, MinimalModel,
    ModularDatum,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "fusionlab",
    version,
    about = "Exact modular data for Virasoro minimal models and affine sl2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Modular datum of the minimal model Vir(a, b)
    Mm {
        a: u32,
        b: u32,
        /// Write the datum as a JSON document
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// The subcategory C_a = {M_{r,1}} of Vir(a, b) and its modularity
    Ca {
        a: u32,
        b: u32,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Ordinary modules of affine sl2 at admissible level -2 + a/b
    Affine {
        a: u32,
        b: u32,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Run every invariant over all coprime pairs in range
    Verify {
        #[arg(long, default_value_t = 2)]
        amin: u32,
        #[arg(long)]
        amax: u32,
        #[arg(long, default_value_t = 2)]
        bmin: u32,
        #[arg(long)]
        bmax: u32,
        #[arg(long, hide = true)]
        plant_defect: bool,
    },
    /// Modularity grid of C_a and affine sl2 against the parity of b
    Sweep {
        #[arg(long, default_value_t = 2)]
        amin: u32,
        #[arg(long)]
        amax: u32,
        #[arg(long, default_value_t = 2)]
        bmin: u32,
        #[arg(long)]
        bmax: u32,
        /// Write the grid as JSON
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Branching rules and induction for L(l, 0) ⊗ L(1, 0) ⊃ L(l + 1, 0) ⊗ Vir(a, a + b)
    Branch {
        a: u32,
        b: u32,
        /// Print JSON instead of a table
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
struct UsageError(String);

impl Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Bad parameters are usage errors; anything else from the core is a failure.
fn classify(e: Error) -> anyhow::Error {
    match e {
        Error::NotCoprime { .. } | Error::Range(_) | Error::LabelOutOfRange(_) => {
            UsageError(e.to_string()).into()
        }
        other => other.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}\n\n{}", Cli::command().render_usage());
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Mm { a, b, json } => cmd_mm(a, b, json.as_deref()),
        Command::Ca { a, b, json } => cmd_ca(a, b, json.as_deref()),
        Command::Affine { a, b, json } => cmd_affine(a, b, json.as_deref()),
        Command::Verify {
            amin,
            amax,
            bmin,
            bmax,
            plant_defect,
        } => cmd_verify(range(amin, amax, bmin, bmax)?, plant_defect),
        Command::Sweep {
            amin,
            amax,
            bmin,
            bmax,
            json,
        } => cmd_sweep(range(amin, amax, bmin, bmax)?, json.as_deref()),
        Command::Branch { a, b, json } => cmd_branch(a, b, json),
    }
}

fn range(amin: u32, amax: u32, bmin: u32, bmax: u32) -> anyhow::Result<PairRange> {
    if amax < 2 || bmax < 2 {
        return Err(UsageError(format!(
            "--amax and --bmax must be at least 2 (got {amax}, {bmax})"
        ))
        .into());
    }
    if amin < 2 || bmin < 1 {
        return Err(UsageError(format!(
            "--amin must be at least 2 and --bmin at least 1 (got {amin}, {bmin})"
        ))
        .into());
    }
    Ok(PairRange {
        amin,
        amax,
        bmin,
        bmax,
    })
}

fn print_table(headers: &[&str], rows: &[Vec<String>]) {
    let widths: Vec<usize> = (0..headers.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].chars().count())
                .chain([headers[c].chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        println!("{}", padded.join("  ").trim_end());
    };
    line(headers.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
}

fn float(x: &Cyclotomic) -> String {
    let z = x.to_complex();
    if z.im.abs() < 1e-12 {
        format!("{:.6}", z.re)
    } else {
        format!("{:.6}{:+.6}i", z.re, z.im)
    }
}

fn print_datum<L: Clone + Display>(datum: &ModularDatum<L>, name: impl Fn(usize) -> String) {
    let rows: Vec<Vec<String>> = (0..datum.rank())
        .map(|i| {
            vec![
                name(i),
                datum.weights()[i].to_string(),
                datum.twist_exponents()[i].to_string(),
                float(&datum.qdim()[i]),
                datum.qdim()[i].to_string(),
            ]
        })
        .collect();
    print_table(&["label", "h", "twist", "qdim", "qdim (exact)"], &rows);
    println!();
    println!("fusion:");
    let ring = datum.ring();
    for i in 0..datum.rank() {
        for j in i..datum.rank() {
            let terms: Vec<String> = ring
                .fuse(i, j)
                .expect("indices in range")
                .into_iter()
                .map(|(k, m)| {
                    if m == 1 {
                        name(k)
                    } else {
                        format!("{m}·{}", name(k))
                    }
                })
                .collect();
            println!("  {} × {} = {}", name(i), name(j), terms.join(" + "));
        }
    }
}

/// Axioms, Verlinde and balancing, printed one per line.
fn report_consistency<L: Clone + Display>(datum: &ModularDatum<L>) -> bool {
    let checks = [
        ("axioms", datum.ring().verify_axioms().passed()),
        ("verlinde", datum.verlinde_holds()),
        ("balancing", datum.balancing_holds()),
    ];
    for (n, ok) in checks {
        println!("{n}: {}", if ok { "pass" } else { "FAIL" });
    }
    checks.iter().all(|c| c.1)
}

fn write_document<L>(
    path: Option<&Path>,
    kind: Kind,
    a: u32,
    b: u32,
    datum: &ModularDatum<L>,
) -> anyhow::Result<()>
where
    L: ToLabelRecord + Clone + Display,
{
    if let Some(path) = path {
        let doc = ModularDataDocument::from_datum(kind, a, b, datum);
        fs::write(path, doc.to_json()?).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn modular_verdict(modular: bool, b: u32) -> bool {
    let expected = b % 2 == 1;
    println!("modular: {modular} (expected: b odd)");
    if modular == expected {
        println!("parity law: holds");
    } else {
        println!("parity law: VIOLATED (b = {b}, expected modular = {expected})");
    }
    modular == expected
}

fn cmd_mm(a: u32, b: u32, json: Option<&Path>) -> anyhow::Result<bool> {
    let m = MinimalModel::new(a, b).map_err(classify)?;
    let datum = m.modular_datum().map_err(classify)?;
    println!(
        "Vir({a},{b})  c = {}  rank {}",
        m.central_charge(),
        datum.rank()
    );
    println!();
    print_datum(&datum, |i| datum.labels()[i].to_string());
    println!();
    let consistent = report_consistency(&datum);
    let modular = datum.is_modular();
    println!("modular: {modular}");
    write_document(json, Kind::Virasoro, a, b, &datum)?;
    Ok(consistent && modular)
}

/// `0`, `w` or `rw` for the weight rω.
fn omega(r: u32) -> String {
    match r {
        0 => "0".into(),
        1 => "w".into(),
        r => format!("{r}w"),
    }
}

/// M_{r,1} name of a C_a label, whichever orbit representative it carries.
fn ca_name(a: u32, l: KacLabel) -> String {
    let r = if l.s == 1 { l.r } else { a - l.r };
    format!("M_{{{r},1}}")
}

fn cmd_ca(a: u32, b: u32, json: Option<&Path>) -> anyhow::Result<bool> {
    let m = MinimalModel::new(a, b).map_err(classify)?;
    let datum = m.subcategory_ca().map_err(classify)?;
    let name = |i: usize| ca_name(a, datum.labels()[i]);
    println!("C_{a} of Vir({a},{b})  rank {}", datum.rank());
    println!();
    print_datum(&datum, name);
    println!();
    let consistent = report_consistency(&datum);
    let mismatch = (1..a).find(|&r1| {
        let e = i64::from(a) + i64::from(b) * i64::from(r1) + 1;
        let expected = Cyclotomic::from_integer(if e % 2 == 0 { 1 } else { -1 });
        m.sratio(KacLabel::new(a - 1, 1), KacLabel::new(r1, 1)).ok() != Some(expected)
    });
    match mismatch {
        None => println!("simple-current row (-1)^(a+br'+1): pass"),
        Some(r1) => println!("simple-current row (-1)^(a+br'+1): FAIL at r' = {r1}"),
    }
    let transparent: Vec<String> = datum
        .transparent_objects()
        .into_iter()
        .map(|i| {
            if i == datum.unit() {
                "unit".to_string()
            } else {
                name(i)
            }
        })
        .collect();
    println!("transparent: {{{}}}", transparent.join(", "));
    let parity = modular_verdict(datum.is_modular(), b);
    write_document(json, Kind::Ca, a, b, &datum)?;
    Ok(consistent && mismatch.is_none() && parity)
}

fn cmd_affine(a: u32, b: u32, json: Option<&Path>) -> anyhow::Result<bool> {
    let level = AdmissibleLevel::new(a, b).map_err(classify)?;
    let datum = affine_category(a, b).map_err(classify)?;
    println!(
        "affine sl2 at level {}  rank {}",
        level.level(),
        datum.rank()
    );
    println!();
    print_datum(&datum, |i| datum.labels()[i].to_string());
    println!();
    let consistent = report_consistency(&datum);
    let row = simple_current_row(&datum, b);
    match &row {
        Ok(r) => {
            let values: Vec<String> = r.iter().map(ToString::to_string).collect();
            println!(
                "simple-current row (-1)^((r'+1)b+1): pass [{}]",
                values.join(", ")
            );
        }
        Err(e) => println!("simple-current row (-1)^((r'+1)b+1): FAIL ({e})"),
    }
    let parity = modular_verdict(datum.is_modular(), b);
    write_document(json, Kind::Affine, a, b, &datum)?;
    Ok(consistent && row.is_ok() && parity)
}

fn cmd_verify(range: PairRange, plant_defect: bool) -> anyhow::Result<bool> {
    let report = suite::verify(range, plant_defect);
    println!(
        "verified {} coprime pairs (a in {}..={}, b in {}..={})",
        report.pairs, range.amin, range.amax, range.bmin, range.bmax
    );
    let rows: Vec<Vec<String>> = report
        .counts
        .iter()
        .map(|(n, p, t)| vec![n.to_string(), p.to_string(), t.to_string()])
        .collect();
    print_table(&["check", "passed", "total"], &rows);
    if let Some(f) = &report.first_failure {
        println!("first failure: {f}");
    }
    println!("result: {}", if report.passed() { "pass" } else { "FAIL" });
    Ok(report.passed())
}

fn cmd_sweep(range: PairRange, json: Option<&Path>) -> anyhow::Result<bool> {
    let cells = suite::sweep(range).map_err(classify)?;
    let bs: Vec<u32> = (range.bmin..=range.bmax).collect();
    let grid = |title: &str, value: &dyn Fn(&suite::SweepCell) -> Option<bool>| {
        println!("{title}");
        let mut headers = vec!["a\\b".to_string()];
        headers.extend(bs.iter().map(u32::to_string));
        let rows: Vec<Vec<String>> = (range.amin..=range.amax)
            .map(|a| {
                let mut row = vec![a.to_string()];
                row.extend(
                    bs.iter()
                        .map(|&b| match cells.iter().find(|c| c.a == a && c.b == b) {
                            None => ".".to_string(),
                            Some(c) => match value(c) {
                                None => "-".to_string(),
                                Some(true) => "T".to_string(),
                                Some(false) => "F".to_string(),
                            },
                        }),
                );
                row
            })
            .collect();
        let h: Vec<&str> = headers.iter().map(String::as_str).collect();
        print_table(&h, &rows);
        println!();
    };
    grid("C_a modular", &|c| c.ca_modular);
    grid("affine modular", &|c| Some(c.affine_modular));
    println!("expected: modular iff b odd ('.' not coprime, '-' no minimal model)");
    let mismatches: Vec<&suite::SweepCell> = cells.iter().filter(|c| !c.matches()).collect();
    for c in &mismatches {
        let ca = c.ca_modular.map_or("-".to_string(), |v| v.to_string());
        println!(
            "mismatch at (a, b) = ({}, {}): C_a modular = {ca}, affine modular = {}, expected {}",
            c.a, c.b, c.affine_modular, c.expected
        );
    }
    if let Some(path) = json {
        let doc = json!({ "cells": cells });
        fs::write(path, serde_json::to_string_pretty(&doc)?)
            .with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    println!(
        "parity law: {}",
        if mismatches.is_empty() {
            "holds"
        } else {
            "VIOLATED"
        }
    );
    Ok(mismatches.is_empty())
}

fn cmd_branch(a: u32, b: u32, as_json: bool) -> anyhow::Result<bool> {
    let setup = CosetSetup::new(a, b).map_err(classify)?;
    let level = setup.base().level().clone();
    let shifted = setup.shifted().level().clone();
    let violations = setup.verify_weight_congruence().map_err(classify)?;
    let table = setup.branching_table();
    let mut induction = Vec::new();
    for r in 1..a {
        let (label, t) = setup.induce(r).map_err(classify)?;
        let weights = setup.induced_summand_weights(r).map_err(classify)?;
        induction.push((r, label, t, shared_exponent(&weights)));
    }
    let local = induction.iter().all(|x| x.3.is_some());
    let ok = violations.is_empty() && local;

    if as_json {
        let branching: Vec<_> = table
            .iter()
            .map(|(&(r, t), entries)| {
                let summands: Vec<_> = entries
                    .iter()
                    .map(|(s, k)| json!({ "s": s, "kac": [k.r, k.s] }))
                    .collect();
                json!({ "r": r, "t": t, "summands": summands })
            })
            .collect();
        let induced: Vec<_> = induction
            .iter()
            .map(|(r, l, t, e)| {
                json!({
                    "r": r,
                    "affine": l.0,
                    "level_one": t,
                    "local": e.is_some(),
                    "twist_exponent": e.as_ref().map(|x| x.to_fraction_string()),
                })
            })
            .collect();
        let doc = json!({
            "parameters": { "a": a, "b": b },
            "level": level.to_fraction_string(),
            "shifted_level": shifted.to_fraction_string(),
            "coset": [setup.vir().a(), setup.vir().b()],
            "branching": branching,
            "induction": induced,
            "weight_congruence": violations.is_empty(),
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
        return Ok(ok);
    }

    println!(
        "L({level},0) ⊗ L(1,0) ⊃ L({shifted},0) ⊗ Vir({},{})",
        setup.vir().a(),
        setup.vir().b()
    );
    println!();
    for ((r, t), entries) in &table {
        let summands: Vec<String> = entries
            .iter()
            .map(|(s, k)| format!("L({shifted},{}) ⊗ M({},{})", omega(*s), k.r, k.s))
            .collect();
        println!(
            "L({level},{}) ⊗ L(1,{}) = {}",
            omega(*r),
            omega(*t),
            summands.join(" ⊕ ")
        );
    }
    println!();
    println!("induction:");
    let rows: Vec<Vec<String>> = induction
        .iter()
        .map(|(r, l, t, e)| {
            vec![
                format!("M_{{{r},1}}"),
                format!("{l} ⊗ L(1,{})", omega(*t)),
                e.as_ref().map_or("-".to_string(), ToString::to_string),
                if e.is_some() { "yes" } else { "NO" }.to_string(),
            ]
        })
        .collect();
    print_table(&["object", "image", "twist", "local"], &rows);
    println!();
    if violations.is_empty() {
        println!("weight congruence: pass");
    } else {
        println!("weight congruence: FAIL at {violations:?}");
    }
    Ok(ok)
}
