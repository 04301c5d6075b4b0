use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use fano_core::bbw::{cohomology_irred, GrSpec, IrredBundle};
use fano_core::extendability::{beta_derivation, klm_comparison, report, table1, table2, tangent_table};
use fano_core::families::{hilbert_polynomial, n_l, FamilyDb, FanoFamily};
use fano_core::geography::{self, geography_check, row_flag, SurfaceInvariants};
use fano_core::report::{self, Format};
use serde_json::json;

use crate::{Cli, Command, OutputFormat};

fn table_format(f: Option<OutputFormat>) -> Result<Format> {
    Ok(match f {
        None | Some(OutputFormat::Md) => Format::Markdown,
        Some(OutputFormat::Json) => Format::Json,
        Some(OutputFormat::Csv) => Format::Csv,
        Some(OutputFormat::Svg) => bail!("svg output is only available for geography"),
    })
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn select<'a>(db: &'a FamilyDb, ids: &[String]) -> Result<Vec<&'a FanoFamily>> {
    if ids.is_empty() {
        return Ok(db.families.iter().collect());
    }
    ids.iter().map(|id| Ok(db.get(id)?)).collect()
}

fn json_string(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

fn invariants_output(rows: &[SurfaceInvariants], format: Format) -> Result<String> {
    Ok(match format {
        Format::Csv => {
            let mut buf = Vec::new();
            geography::write_csv(rows, &mut buf)?;
            String::from_utf8(buf)?
        }
        Format::Json => json_string(json!({ "schema_version": report::REPORT_SCHEMA_VERSION, "rows": rows })),
        Format::Markdown => {
            let mut s = format!("| {} |\n|{}\n", geography::CSV_HEADER.join(" | "), "---|".repeat(geography::CSV_HEADER.len()));
            for r in rows {
                let c = geography_check(r);
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                    r.family,
                    r.l,
                    r.chi_formula,
                    r.chi_rr,
                    r.k2,
                    r.pg,
                    r.q,
                    c.noether,
                    c.bmy,
                    row_flag(r, c)
                );
            }
            s
        }
    })
}

fn geography_code(rows: &[SurfaceInvariants]) -> u8 {
    if rows.iter().all(|r| row_flag(r, geography_check(r)) == "ok") {
        0
    } else {
        2
    }
}

pub fn run(cli: &Cli) -> Result<u8> {
    let db = FamilyDb::load().context("loading the family database")?;
    match &cli.command {
        Command::Bbw { gr, weight_a, weight_b } => {
            let g = GrSpec::new(gr.0, gr.1)?;
            let e = IrredBundle::new(g, weight_a.clone(), weight_b.clone())?;
            let r = cohomology_irred(&e);
            let text = match table_format(cli.format)? {
                Format::Json => json_string(json!({ "gr": g.to_string(), "bundle": e.to_string(), "result": r })),
                Format::Csv => {
                    let mut s = "degree,dim\n".to_string();
                    if let fano_core::CohomResult::Nonzero { degree, dim } = r {
                        let _ = writeln!(s, "{degree},{dim}");
                    }
                    s
                }
                Format::Markdown => format!("{e} on {g}: {r}\n"),
            };
            emit(cli, &text)?;
            Ok(0)
        }
        Command::Tangent { family, twist } => {
            let y = db.get(family)?;
            let (table, trace) = tangent_table(y, *twist)?;
            if cli.trace {
                eprint!("{trace}");
            }
            let text = match table_format(cli.format)? {
                Format::Json => json_string(json!({
                    "family": y.id, "twist": twist, "table": table,
                    "assumptions_used": trace.assumption_uses().map(|s| s.via.clone()).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    let mut s = "degree,lo,hi\n".to_string();
                    for (q, v) in table.entries().iter().enumerate() {
                        let _ = writeln!(s, "{q},{},{}", v.lo, v.hi.map(|h| h.to_string()).unwrap_or_else(|| "inf".into()));
                    }
                    s
                }
                Format::Markdown => format!("T_Y({}) on {}: {table}\n", -twist, y.id),
            };
            emit(cli, &text)?;
            Ok(0)
        }
        Command::Beta(a) => {
            let y = db.get(&a.family)?;
            if cli.trace {
                for nt in beta_derivation(y, a.l)?.1 {
                    eprintln!("# {}", nt.term);
                    eprint!("{}", nt.trace);
                }
            }
            let rows = vec![report(y, a.l)?];
            emit(cli, &report::render_reports(&rows, table_format(cli.format)?)?)?;
            Ok(report::exit_code(&rows) as u8)
        }
        Command::Table2 { families, l_max } => {
            let fams = select(&db, families)?;
            let rows = table2(&fams, *l_max)?;
            if cli.trace {
                for r in &rows {
                    let y = db.get(&r.family)?;
                    for nt in beta_derivation(y, r.l)?.1 {
                        eprintln!("# {} l={} {}", r.family, r.l, nt.term);
                        eprint!("{}", nt.trace);
                    }
                }
            }
            emit(cli, &report::render_reports(&rows, table_format(cli.format)?)?)?;
            Ok(report::exit_code(&rows) as u8)
        }
        Command::Table1 => {
            emit(cli, &report::render_table1(&table1(&db), table_format(cli.format)?)?)?;
            Ok(0)
        }
        Command::Klm => {
            let rows = klm_comparison(&db)?;
            emit(cli, &report::render_klm(&rows, table_format(cli.format)?)?)?;
            Ok(if rows.iter().all(|r| r.engine_l_y == r.published_l_y) { 0 } else { 2 })
        }
        Command::Nl(a) => {
            let y = db.get(&a.family)?;
            let n = n_l(y, a.l)?;
            let text = match table_format(cli.format)? {
                Format::Json => json_string(json!({
                    "family": y.id, "l": a.l, "n_l": n.value, "threshold_reading": n.threshold_reading,
                })),
                Format::Csv => format!("family,l,N_l,N_l_threshold_reading\n{},{},{},{}\n", y.id, a.l, n.value, n.threshold_reading),
                Format::Markdown => format!("{}\n", n.value),
            };
            emit(cli, &text)?;
            Ok(0)
        }
        Command::Hilbert(a) => {
            let y = db.get(&a.family)?;
            let p = hilbert_polynomial(y, a.l)?;
            let coefficients: Vec<String> = p.0.iter().map(ToString::to_string).collect();
            let text = match table_format(cli.format)? {
                Format::Json => json_string(json!({
                    "family": y.id, "l": a.l, "polynomial": p.to_string(), "coefficients": coefficients,
                })),
                Format::Csv => format!("family,l,polynomial\n{},{},\"{p}\"\n", y.id, a.l),
                Format::Markdown => format!("p(z) = {p}\n"),
            };
            emit(cli, &text)?;
            Ok(0)
        }
        Command::Invariants { family, l_range } => {
            let y = db.get(family)?;
            let rows = (l_range.0..=l_range.1).map(|l| geography::invariants(y, l)).collect::<Result<Vec<_>, _>>()?;
            emit(cli, &invariants_output(&rows, table_format(cli.format)?)?)?;
            Ok(geography_code(&rows))
        }
        Command::Geography { families, extra } => {
            let fams = select(&db, families)?;
            let rows = geography::geography_rows(&fams, *extra)?;
            let text = match cli.format {
                Some(OutputFormat::Svg) => geography::render_svg(&rows),
                None | Some(OutputFormat::Csv) => invariants_output(&rows, Format::Csv)?,
                other => invariants_output(&rows, table_format(other)?)?,
            };
            emit(cli, &text)?;
            Ok(geography_code(&rows))
        }
        Command::Info { id } => {
            let y = db.get(id)?;
            let text = match table_format(cli.format)? {
                Format::Json => json_string(serde_json::to_value(y)?),
                Format::Csv => bail!("info has no csv form"),
                Format::Markdown => info_text(y),
            };
            emit(cli, &text)?;
            Ok(0)
        }
    }
}

fn info_text(y: &FanoFamily) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "family {}: {}", y.id, y.description);
    let _ = writeln!(s, "  index            {}", y.index);
    let _ = writeln!(s, "  j_va             {}", y.j_va);
    let _ = writeln!(s, "  H^3              {} ({})", y.degree_h3, y.degree_source);
    let _ = writeln!(s, "  H.c2             {}", y.h_c2());
    let _ = writeln!(s, "  ambient          {}", y.ambient);
    let _ = writeln!(s, "  defining         {:?}", y.defining);
    for a in &y.assumptions {
        let _ = writeln!(s, "  assumption       {} [{:?}, {:?}]: {} ({})", a.id, a.usage, a.target, a.statement, a.source);
    }
    for c in &y.cited {
        let _ = writeln!(s, "  cited            {}({}) = {} at l={}", c.quantity, c.twist, c.value, c.used_at_l);
    }
    let r = &y.reference;
    let _ = writeln!(s, "  threshold        {}", r.threshold);
    for (l, b) in &r.bounds {
        let _ = writeln!(s, "  bound            l={l}: alpha <= {b}");
    }
    if let Some(e) = &r.extendability {
        let _ = writeln!(s, "  extendability    l={}: {}", e.l, e.value);
    }
    if let Some(v) = r.veronese_bound {
        let _ = writeln!(s, "  veronese bound   {v}");
    }
    s
}
