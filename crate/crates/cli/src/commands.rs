use std::fs;
use std::path::Path;

use dbraid_core::braid::{normal_form, parse_word, BraidContext, NormalForm};
use dbraid_core::centre::{
    centre_group, character_at, characters, cross_check_torsion, format_ratio, invariants_json, Centre,
    TorusCharacter,
};
use dbraid_core::nctorus::{all_parameters, nc_parameters_in, NcTorusParams};
use dbraid_core::par::Execution;
use dbraid_core::scheme::{analyze_graph, parse_scheme, NegativeColourScheme};
use dbraid_core::sweep::{direct_sum_sweep, rank_sweep, torsion_sweep};
use dbraid_core::tables::{builtin_polytope, builtin_polytope_names, finite_order, reproduce_table, TableName, TableReport};
use dbraid_core::toric::{assign_degrees, chop_vertex, facet_graph, DelzantIncidence, FacetGraph};
use dbraid_core::zlinalg::AbelianInvariants;
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::output::{align, Failure, Report, MISMATCH};
use crate::{CentreFlags, NormalizeArgs, PolytopeArgs, SweepCheck, TableChoice};

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_scheme(path: &Path) -> Result<NegativeColourScheme, Failure> {
    Ok(parse_scheme(&read(path)?)?)
}

fn warn_if_not_very_composite(scheme: &NegativeColourScheme) {
    if !scheme.very_composite() {
        eprintln!("warning: some degree is 1; the braid-group reading assumes every degree is at least 2");
    }
}

fn group_text(g: &AbelianInvariants) -> String {
    let torsion = g.torsion_part();
    let torsion = if torsion.is_trivial() {
        "trivial torsion".to_string()
    } else {
        torsion.to_string()
    };
    format!("rank {}, {torsion}", g.rank)
}

fn order_text(g: &AbelianInvariants) -> String {
    finite_order(g).map_or_else(|| "infinite".to_string(), |o| o.to_string())
}

fn character_text(chi: &TorusCharacter) -> String {
    let parts: Vec<String> = chi
        .residues
        .iter()
        .zip(&chi.factors)
        .map(|(j, d)| format!("{j} mod {d}"))
        .collect();
    format!("[{}]", parts.join(", "))
}

fn centre_report(scheme: &NegativeColourScheme, flags: &CentreFlags) -> Result<Report, Failure> {
    let group = centre_group(scheme);
    let inv = group.invariants();
    let mut json = json!({
        "scheme": scheme.to_json(),
        "group": inv.to_string(),
        "rank": inv.rank,
        "invariant_factors": invariants_json(&inv)["invariant_factors"].clone(),
        "order": finite_order(&inv).map(|o| o.to_string()),
    });
    let mut text = format!("{}\ngroup: {inv}\norder: {}\n", group_text(&inv), order_text(&inv));
    let mut code = 0;
    if flags.crosscheck {
        let check = cross_check_torsion(scheme);
        text.push_str(&format!(
            "crosscheck at N = {} and 2N: SNF {} / Diophantine {} / doubled {}: {}\n",
            check.exponent_used,
            check.snf_torsion,
            check.diophantine_torsion,
            check.diophantine_torsion_doubled,
            if check.agree { "agree" } else { "DISAGREE" }
        ));
        if !check.agree {
            code = MISMATCH;
        }
        json["crosscheck"] = check.to_json();
    }
    if flags.characters {
        let listed: Vec<(usize, TorusCharacter)> = characters(&group).take(flags.limit).enumerate().collect();
        let total = inv.torsion_order();
        text.push_str(&format!("torsion characters ({} of {total}):\n", listed.len()));
        for (i, chi) in &listed {
            text.push_str(&format!("  {i}: {}\n", character_text(chi)));
        }
        json["characters"] = json!({
            "total": total.to_string(),
            "listed": listed.iter().map(|(i, chi)| json!({"index": i, "character": chi.to_json()})).collect::<Vec<_>>(),
        });
    }
    Ok(Report::new(json, text).with_code(code))
}

pub fn centre(path: &Path, flags: &CentreFlags) -> Result<Report, Failure> {
    centre_report(&load_scheme(path)?, flags)
}

fn normal_form_text(nf: &NormalForm) -> String {
    let j = nf.to_json();
    format!("M: {}\ncentral: {}\ncentral (canonical): {}\n", j["M"], j["central"], j["central_canonical"])
}

fn words_from(args: &NormalizeArgs) -> Result<Vec<String>, Failure> {
    match (&args.word, &args.file) {
        (Some(w), _) => Ok(vec![w.clone()]),
        (None, Some(path)) => Ok(read(path)?
            .lines()
            .map(str::trim)
            .filter(|l| !l.starts_with('#'))
            .map(String::from)
            .collect()),
        (None, None) => Err(Failure::Input("give a word or --file".into())),
    }
}

pub fn normalize(args: &NormalizeArgs) -> Result<Report, Failure> {
    let scheme = load_scheme(&args.scheme)?;
    warn_if_not_very_composite(&scheme);
    let ctx = BraidContext::new(&scheme, args.genus);
    let parse = |text: &str| -> Result<NormalForm, Failure> {
        let parsed = parse_word(text, &ctx)?;
        for (a, b) in &parsed.dropped {
            eprintln!("warning: b[{a},{b}] is not an edge and equals the identity; dropped");
        }
        Ok(normal_form(&parsed.word))
    };
    let other = args.equal.as_deref().map(parse).transpose()?;
    let words = words_from(args)?;
    let mut entries = Vec::new();
    let mut text = String::new();
    for w in &words {
        let nf = parse(w)?;
        let mut entry = nf.to_json();
        if words.len() > 1 {
            text.push_str(&format!("word: {w}\n"));
        }
        text.push_str(&normal_form_text(&nf));
        if let Some(o) = &other {
            entry["equal"] = Value::from(*o == nf);
            text.push_str(&format!("equal: {}\n", *o == nf));
        }
        if words.len() > 1 {
            entry["word"] = Value::from(w.as_str());
        }
        entries.push(entry);
    }
    let json = if args.word.is_some() {
        entries.pop().expect("one word")
    } else {
        Value::from(entries)
    };
    Ok(Report::new(json, text))
}

fn load_polytope(args: &PolytopeArgs) -> Result<DelzantIncidence, Failure> {
    let path = Path::new(&args.polytope);
    let mut p = if path.exists() {
        DelzantIncidence::from_json(&read(path)?)?
    } else {
        builtin_polytope(&args.polytope).ok_or_else(|| {
            Failure::Input(format!(
                "no file or built-in polytope named `{}` (built-ins: {})",
                args.polytope,
                builtin_polytope_names().collect::<Vec<_>>().join(", ")
            ))
        })?
    };
    for &v in &args.chops {
        p = chop_vertex(&p, v)?.polytope;
    }
    Ok(p)
}

fn labelled(graph: &FacetGraph, labelling: Option<&[usize]>) -> Result<Vec<(usize, usize)>, Failure> {
    let Some(l) = labelling else {
        return Ok(graph.edges.clone());
    };
    let mut sorted = l.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=graph.facets).collect::<Vec<_>>() {
        return Err(Failure::Input(format!(
            "labelling must be a permutation of 1..={}",
            graph.facets
        )));
    }
    let mut edges: Vec<(usize, usize)> = graph
        .edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (l[a - 1], l[b - 1]);
            (x.min(y), x.max(y))
        })
        .collect();
    edges.sort_unstable();
    Ok(edges)
}

pub fn toric_graph(
    args: &PolytopeArgs,
    degrees: Option<&[i64]>,
    labelling: Option<&[usize]>,
    flags: &CentreFlags,
) -> Result<Report, Failure> {
    let p = load_polytope(args)?;
    let graph = facet_graph(&p);
    let edges = labelled(&graph, labelling)?;
    match degrees {
        None => {
            let shape = NegativeColourScheme::new(
                graph.facets,
                edges.iter().map(|&(a, b)| (a as i64, b as i64)),
                &vec![1; graph.facets],
            )?;
            let analysis = analyze_graph(&shape);
            let json = json!({
                "facets": graph.facets,
                "edges": edges.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
                "connected": analysis.is_connected(),
                "bipartite": analysis.is_bipartite(),
            });
            let list: Vec<String> = edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            let text = format!(
                "{} facets, {} edges: {}\nconnected: {}, bipartite: {}\n",
                graph.facets,
                edges.len(),
                list.join(" "),
                analysis.is_connected(),
                analysis.is_bipartite()
            );
            Ok(Report::new(json, text))
        }
        Some(k) => {
            let scheme = match labelling {
                None => assign_degrees(&graph, k)?,
                Some(_) => {
                    if k.len() != graph.facets {
                        return Err(Failure::Input(format!(
                            "expected {} degrees, one per colour, got {}",
                            graph.facets,
                            k.len()
                        )));
                    }
                    NegativeColourScheme::new(graph.facets, edges.iter().map(|&(a, b)| (a as i64, b as i64)), k)?
                }
            };
            centre_report(&scheme, flags)
        }
    }
}

pub fn toric_chop(args: &PolytopeArgs, vertex: usize) -> Result<Report, Failure> {
    let p = load_polytope(args)?;
    let chopped = chop_vertex(&p, vertex)?;
    if chopped.geometry_dropped {
        eprintln!("warning: geometry dropped; the chopped polytope carries incidence only");
    }
    let poly = &chopped.polytope;
    let text = format!(
        "new facet {}; {} facets, {} vertices\n{}\n",
        chopped.new_facet,
        poly.facet_count(),
        poly.vertex_count(),
        serde_json::to_string(&poly.to_json()).expect("serializable")
    );
    Ok(Report::new(poly.to_json(), text))
}

fn table_text(report: &TableReport) -> String {
    let mut out = format!("{} ({})\n", report.table, report.title);
    for g in &report.graphs {
        out.push_str(&format!(
            "graph {}: {} edges, bipartite {}, rank {}{}\n",
            g.name,
            g.edges.len(),
            g.bipartite,
            g.rank,
            if g.matches { "" } else { "  MISMATCH" }
        ));
    }
    let advisory = report.instances.iter().any(|i| i.advisory_order.is_some());
    let mut header = vec!["degrees".to_string()];
    header.extend(report.graphs.iter().map(|g| format!("({})", g.name)));
    if advisory {
        header.extend(["advisory order".to_string(), "computed order".to_string()]);
    }
    let mut rows = vec![header];
    for inst in &report.instances {
        let mut row = vec![inst.label.clone()];
        for c in &inst.cells {
            row.push(if c.matches {
                format!("{} ok", c.computed)
            } else {
                format!("{} MISMATCH, expected {}", c.computed, c.expected)
            });
        }
        if advisory {
            let show = |o: &Option<BigInt>| o.as_ref().map_or("-".to_string(), ToString::to_string);
            row.push(show(&inst.advisory_order));
            row.push(show(&inst.computed_order));
        }
        rows.push(row);
    }
    out.push_str(&align(&rows));
    for (row, note) in &report.notes {
        out.push_str(&format!("note, row {row}: {note}\n"));
    }
    if let Some(s) = &report.search {
        out.push_str(&format!(
            "labelling search: {} labellings, best {}/{} cells, {}\n",
            s.examined,
            s.best_score,
            s.cells,
            if s.full_match { "full match found" } else { "no labelling matches every cell" }
        ));
        for l in &s.best_labellings {
            out.push_str(&format!("  best: {l:?}\n"));
        }
    }
    out.push_str(if report.all_match() { "all cells match\n" } else { "MISMATCH\n" });
    out
}

pub fn tables(exec: Execution, which: TableChoice, search: bool) -> Result<Report, Failure> {
    let names: Vec<TableName> = match which {
        TableChoice::Pentagon => vec![TableName::Pentagon],
        TableChoice::Tree => vec![TableName::Tree],
        TableChoice::Fig10 => vec![TableName::Fig10],
        TableChoice::All => TableName::ALL.to_vec(),
    };
    let mut jsons = Vec::new();
    let mut text = String::new();
    let mut code = 0;
    for name in names {
        let report = reproduce_table(exec, name, search)?;
        let resolved = report.all_match() || report.search.as_ref().is_some_and(|s| s.full_match);
        if !resolved {
            code = MISMATCH;
        }
        if !text.is_empty() {
            text.push('\n');
        }
        text.push_str(&table_text(&report));
        jsons.push(report.to_json());
    }
    let json = if jsons.len() == 1 {
        jsons.pop().expect("one table")
    } else {
        Value::from(jsons)
    };
    Ok(Report::new(json, text).with_code(code))
}

fn params_text(index: usize, p: &NcTorusParams) -> String {
    let mut out = format!("character {index}: {}\n", character_text(&p.character));
    let rows: Vec<Vec<String>> = p
        .theta
        .iter()
        .map(|row| row.iter().map(format_ratio).collect())
        .collect();
    out.push_str(&align(&rows));
    out
}

pub fn nctorus(exec: Execution, path: &Path, genus: usize, character: Option<u64>) -> Result<Report, Failure> {
    let scheme = load_scheme(path)?;
    warn_if_not_very_composite(&scheme);
    let params: Vec<(usize, NcTorusParams)> = match character {
        Some(j) => {
            let centre = Centre::new(&scheme);
            let total = centre.group().torsion_order();
            if BigInt::from(j) >= total {
                return Err(Failure::Input(format!("character index {j} out of range 0..{total}")));
            }
            let chi = character_at(centre.group(), &BigInt::from(j));
            vec![(j as usize, nc_parameters_in(&centre, genus, &chi)?)]
        }
        None => all_parameters(exec, &scheme, genus)?.into_iter().enumerate().collect(),
    };
    let text = params
        .iter()
        .map(|(i, p)| params_text(*i, p))
        .collect::<Vec<_>>()
        .join("\n");
    let json = json!({
        "genus": genus,
        "colours": scheme.r(),
        "dimension": 2 * genus * scheme.r(),
        "parameters": params.iter().map(|(i, p)| {
            let mut v = p.to_json();
            v["index"] = Value::from(*i);
            v
        }).collect::<Vec<_>>(),
    });
    Ok(Report::new(json, text))
}

pub fn sweep(exec: Execution, check: SweepCheck, seed: u64, count: usize) -> Result<Report, Failure> {
    let summary = match check {
        SweepCheck::Rank => rank_sweep(exec, seed, count),
        SweepCheck::Torsion => torsion_sweep(exec, seed, count),
        SweepCheck::DirectSum => direct_sum_sweep(exec, seed, count),
    };
    let text = format!(
        "{}: {} cases, seed {}, {} failures\n",
        summary.check,
        summary.cases,
        summary.seed,
        summary.failures.len()
    );
    let code = if summary.passed() { 0 } else { MISMATCH };
    Ok(Report::new(summary.to_json(), text).with_code(code))
}
