//! Golden tables of centres for blown-up squares and cubes, and their
//! recomputation from polytope combinatorics.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::centre::{centre_group, invariants_json};
use crate::par::{self, Execution};
use crate::scheme::{analyze_graph, NegativeColourScheme};
use crate::toric::{chop_vertex, facet_graph, DelzantIncidence, FacetGraph, ToricError};
use crate::zlinalg::AbelianInvariants;

const POLYTOPES: &[(&str, &str)] = &[
    ("interval", include_str!("../data/polytopes/interval.json")),
    ("square", include_str!("../data/polytopes/square.json")),
    ("cube", include_str!("../data/polytopes/cube.json")),
    ("square_chop", include_str!("../data/polytopes/square_chop.json")),
    ("cube_chop", include_str!("../data/polytopes/cube_chop.json")),
    ("cube_chop_antipodal", include_str!("../data/polytopes/cube_chop_antipodal.json")),
    ("cube_chop_face_diagonal", include_str!("../data/polytopes/cube_chop_face_diagonal.json")),
    ("cube_chop_edge", include_str!("../data/polytopes/cube_chop_edge.json")),
];

pub fn builtin_polytope_names() -> impl Iterator<Item = &'static str> {
    POLYTOPES.iter().map(|p| p.0)
}

/// A shipped polytope file, by name (`square`, `cube`, `cube_chop`, ...).
pub fn builtin_polytope(name: &str) -> Option<DelzantIncidence> {
    POLYTOPES
        .iter()
        .find(|p| p.0 == name)
        .map(|p| DelzantIncidence::from_json(p.1).expect("shipped polytope is valid"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableName {
    Pentagon,
    Tree,
    Fig10,
}

impl TableName {
    pub const ALL: [TableName; 3] = [TableName::Pentagon, TableName::Tree, TableName::Fig10];

    fn source(self) -> &'static str {
        match self {
            TableName::Pentagon => include_str!("../data/tables/pentagon.json"),
            TableName::Tree => include_str!("../data/tables/tree.json"),
            TableName::Fig10 => include_str!("../data/tables/fig10.json"),
        }
    }
}

impl FromStr for TableName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pentagon" => Ok(TableName::Pentagon),
            "tree" => Ok(TableName::Tree),
            "fig10" => Ok(TableName::Fig10),
            other => Err(format!("unknown table `{other}` (expected pentagon, tree or fig10)")),
        }
    }
}

impl fmt::Display for TableName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableName::Pentagon => "pentagon",
            TableName::Tree => "tree",
            TableName::Fig10 => "fig10",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderFormula {
    /// `2 gcd(k) Π k_λ`
    Pentagon,
    /// `(k_1 k_2 k_3) k_7² gcd(k)`
    Tree,
}

impl OrderFormula {
    pub fn evaluate(self, degrees: &[u64]) -> BigInt {
        let g = BigInt::from(degrees.iter().fold(0u64, |a, &k| a.gcd(&k)));
        let k = |i: usize| BigInt::from(degrees[i - 1]);
        match self {
            OrderFormula::Pentagon => degrees.iter().fold(g * 2, |acc, &x| acc * x),
            OrderFormula::Tree => k(1) * k(2) * k(3) * k(7) * k(7) * g,
        }
    }
}

/// A degree or cyclic order: a number, or `a` / `2a`-style multiples of the row parameter.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(u64),
    Expr(String),
}

impl Entry {
    fn eval(&self, a: Option<u64>) -> u64 {
        match self {
            Entry::Int(n) => *n,
            Entry::Expr(s) => {
                let coeff = s.strip_suffix('a').expect("parameter expression ends in `a`");
                let c = if coeff.is_empty() { 1 } else { coeff.parse().expect("integer coefficient") };
                c * a.expect("parametric row has a parameter range")
            }
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct GraphSpec {
    pub name: String,
    /// Vertices to chop, in order, with ids as they are after the previous chops.
    pub chops: Vec<usize>,
    /// `labelling[ρ − 1]` is the colour of facet `ρ`.
    pub labelling: Vec<usize>,
    /// Expected coloured edges.
    pub edges: Vec<(usize, usize)>,
    pub bipartite: bool,
    pub rank: usize,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenRow {
    pub degrees: Vec<Entry>,
    #[serde(default)]
    pub parameter: Option<(u64, u64)>,
    pub printed: Vec<String>,
    pub expected: Vec<Vec<Entry>>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenTable {
    pub name: String,
    pub title: String,
    pub polytope: String,
    pub torsion_only: bool,
    pub order_formula: Option<OrderFormula>,
    pub graphs: Vec<GraphSpec>,
    pub rows: Vec<GoldenRow>,
}

pub fn golden_table(name: TableName) -> GoldenTable {
    serde_json::from_str(name.source()).expect("shipped table is valid")
}

/// One concrete line of a table: a parametric row gives one instance per value.
#[derive(Clone, Debug)]
pub struct Instance {
    pub row: usize,
    pub label: String,
    pub degrees: Vec<u64>,
    pub expected: Vec<AbelianInvariants>,
    pub printed: Vec<String>,
}

impl GoldenTable {
    pub fn instances(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            let values: Vec<Option<u64>> = match row.parameter {
                Some((lo, hi)) => (lo..=hi).map(Some).collect(),
                None => vec![None],
            };
            for a in values {
                let degrees: Vec<u64> = row.degrees.iter().map(|e| e.eval(a)).collect();
                let expected = row
                    .expected
                    .iter()
                    .zip(&self.graphs)
                    .map(|(orders, g)| {
                        let rank = if self.torsion_only { 0 } else { g.rank };
                        AbelianInvariants::from_cyclic_orders(rank, orders.iter().map(|e| BigInt::from(e.eval(a))))
                    })
                    .collect();
                let list = degrees.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
                out.push(Instance {
                    row: i + 1,
                    label: match a {
                        Some(a) => format!("({list}) [a={a}]"),
                        None => format!("({list})"),
                    },
                    degrees,
                    expected,
                    printed: row.printed.clone(),
                });
            }
        }
        out
    }

    /// Facet graphs of the chopped polytope, one per graph spec, in facet ids.
    pub fn facet_graphs(&self) -> Result<Vec<FacetGraph>, ToricError> {
        let base = builtin_polytope(&self.polytope)
            .ok_or_else(|| ToricError::MalformedInput(format!("unknown polytope `{}`", self.polytope)))?;
        self.graphs
            .iter()
            .map(|g| {
                let mut p = base.clone();
                for &v in &g.chops {
                    p = chop_vertex(&p, v)?.polytope;
                }
                Ok(facet_graph(&p))
            })
            .collect()
    }
}

/// Colours the facets of `graph` by `labelling` and attaches `degrees` (by colour).
pub fn coloured_scheme(graph: &FacetGraph, labelling: &[usize], degrees: &[u64]) -> NegativeColourScheme {
    let edges = graph
        .edges
        .iter()
        .map(|&(a, b)| (labelling[a - 1] as i64, labelling[b - 1] as i64));
    let k: Vec<i64> = degrees.iter().map(|&d| d as i64).collect();
    NegativeColourScheme::new(graph.facets, edges, &k).expect("labelling is a permutation")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCheck {
    pub name: String,
    pub edges: Vec<(usize, usize)>,
    pub edges_match: bool,
    pub bipartite: bool,
    pub rank: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub graph: String,
    pub computed: AbelianInvariants,
    pub expected: AbelianInvariants,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceReport {
    pub row: usize,
    pub label: String,
    pub degrees: Vec<u64>,
    pub cells: Vec<Cell>,
    pub printed: Vec<String>,
    pub advisory_order: Option<BigInt>,
    pub computed_order: Option<BigInt>,
}

impl InstanceReport {
    pub fn matches(&self) -> bool {
        self.cells.iter().all(|c| c.matches)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub examined: usize,
    pub cells: usize,
    pub best_score: usize,
    /// Labellings reaching the best score, at most ten.
    pub best_labellings: Vec<Vec<usize>>,
    pub full_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableReport {
    pub table: TableName,
    pub title: String,
    pub graphs: Vec<GraphCheck>,
    pub instances: Vec<InstanceReport>,
    pub notes: Vec<(usize, String)>,
    pub search: Option<SearchReport>,
}

impl TableReport {
    pub fn all_match(&self) -> bool {
        self.graphs.iter().all(|g| g.matches) && self.instances.iter().all(InstanceReport::matches)
    }

    pub fn mismatches(&self) -> Vec<&InstanceReport> {
        self.instances.iter().filter(|i| !i.matches()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "table": self.table.to_string(),
            "title": self.title,
            "all_match": self.all_match(),
            "graphs": self.graphs.iter().map(|g| json!({
                "name": g.name,
                "edges": g.edges.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
                "edges_match": g.edges_match,
                "bipartite": g.bipartite,
                "rank": g.rank,
                "matches": g.matches,
            })).collect::<Vec<_>>(),
            "rows": self.instances.iter().map(|i| {
                let mut row = json!({
                    "row": i.row,
                    "label": i.label,
                    "degrees": i.degrees,
                    "matches": i.matches(),
                    "cells": i.cells.iter().zip(&i.printed).map(|(c, p)| json!({
                        "graph": c.graph,
                        "computed": invariants_json(&c.computed),
                        "computed_text": c.computed.to_string(),
                        "expected": invariants_json(&c.expected),
                        "printed": p,
                        "matches": c.matches,
                    })).collect::<Vec<_>>(),
                });
                if let Some(o) = &i.advisory_order {
                    row["advisory_order"] = Value::from(o.to_string());
                    row["computed_order"] = i.computed_order.as_ref().map_or(Value::Null, |c| Value::from(c.to_string()));
                }
                row
            }).collect::<Vec<_>>(),
            "notes": self.notes.iter().map(|(r, n)| json!({"row": r, "note": n})).collect::<Vec<_>>(),
            "search": self.search.as_ref().map(|s| json!({
                "examined": s.examined,
                "cells": s.cells,
                "best_score": s.best_score,
                "best_labellings": s.best_labellings,
                "full_match": s.full_match,
            })),
        })
    }
}

fn compute_cell(table: &GoldenTable, scheme: &NegativeColourScheme) -> AbelianInvariants {
    let g = centre_group(scheme).invariants();
    if table.torsion_only {
        g.torsion_part()
    } else {
        g
    }
}

/// The `index`-th permutation of `1..=n` in lexicographic order.
pub fn nth_permutation(n: usize, mut index: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut fact: Vec<usize> = vec![1; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * i;
    }
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let q = index / fact[i];
        index %= fact[i];
        out.push(pool.remove(q));
    }
    out
}

/// Searches all colourings of the facets, shared by every graph of the table,
/// for the one matching the most cells.
pub fn search_labellings(exec: Execution, table: &GoldenTable) -> Result<SearchReport, ToricError> {
    let graphs = table.facet_graphs()?;
    let instances = table.instances();
    let n = graphs.iter().map(|g| g.facets).max().unwrap_or(0);
    let total: usize = (1..=n).product();
    let cells = instances.len() * graphs.len();
    let scores = par::map_range(exec, total, |idx| {
        let perm = nth_permutation(n, idx);
        let mut score = 0;
        for inst in &instances {
            for (g, expected) in graphs.iter().zip(&inst.expected) {
                let labelling: Vec<usize> = perm[..g.facets].to_vec();
                if labelling.iter().any(|&c| c > g.facets) {
                    continue;
                }
                if compute_cell(table, &coloured_scheme(g, &labelling, &inst.degrees)) == *expected {
                    score += 1;
                }
            }
        }
        score
    });
    let best_score = scores.iter().copied().max().unwrap_or(0);
    let best_labellings = scores
        .iter()
        .enumerate()
        .filter(|&(_, &s)| s == best_score)
        .take(10)
        .map(|(i, _)| nth_permutation(n, i))
        .collect();
    Ok(SearchReport {
        examined: total,
        cells,
        best_score,
        best_labellings,
        full_match: best_score == cells,
    })
}

/// Recomputes every cell of a table with its stored labelling; when anything
/// disagrees and `search` is set, also runs [`search_labellings`].
pub fn reproduce_table(exec: Execution, name: TableName, search: bool) -> Result<TableReport, ToricError> {
    let table = golden_table(name);
    let facet_graphs = table.facet_graphs()?;
    let graphs: Vec<GraphCheck> = table
        .graphs
        .iter()
        .zip(&facet_graphs)
        .map(|(spec, fg)| {
            let unit = vec![1u64; fg.facets];
            let scheme = coloured_scheme(fg, &spec.labelling, &unit);
            let analysis = analyze_graph(&scheme);
            let rank = centre_group(&scheme).rank();
            let edges = scheme.edges().to_vec();
            let edges_match = edges == spec.edges;
            GraphCheck {
                name: spec.name.clone(),
                matches: edges_match && analysis.is_bipartite() == spec.bipartite && rank == spec.rank,
                edges,
                edges_match,
                bipartite: analysis.is_bipartite(),
                rank,
            }
        })
        .collect();
    let instances = table.instances();
    let reports = par::map_slice(exec, &instances, |inst| {
        let cells: Vec<Cell> = table
            .graphs
            .iter()
            .zip(&facet_graphs)
            .zip(&inst.expected)
            .map(|((spec, fg), expected)| {
                let computed = compute_cell(&table, &coloured_scheme(fg, &spec.labelling, &inst.degrees));
                Cell {
                    graph: spec.name.clone(),
                    matches: computed == *expected,
                    computed,
                    expected: expected.clone(),
                }
            })
            .collect();
        let computed_order = cells
            .first()
            .filter(|c| c.computed.rank == 0)
            .map(|c| c.computed.torsion_order());
        InstanceReport {
            row: inst.row,
            label: inst.label.clone(),
            degrees: inst.degrees.clone(),
            advisory_order: table.order_formula.map(|f| f.evaluate(&inst.degrees)),
            computed_order,
            printed: inst.printed.clone(),
            cells,
        }
    });
    let notes = table
        .rows
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.note.clone().map(|n| (i + 1, n)))
        .collect();
    let mut report = TableReport {
        table: name,
        title: table.title.clone(),
        graphs,
        instances: reports,
        notes,
        search: None,
    };
    if search && !report.all_match() {
        report.search = Some(search_labellings(exec, &table)?);
    }
    Ok(report)
}

/// Order of a finite group given by its invariants, or `None` if infinite.
pub fn finite_order(g: &AbelianInvariants) -> Option<BigInt> {
    (g.rank == 0).then(|| g.torsion.iter().fold(BigInt::one(), |acc, d| acc * d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_polytopes_load() {
        for name in builtin_polytope_names() {
            assert!(builtin_polytope(name).is_some(), "{name}");
        }
        assert_eq!(builtin_polytope("square").unwrap(), DelzantIncidence::square());
        assert_eq!(builtin_polytope("cube").unwrap(), DelzantIncidence::cube());
        assert!(builtin_polytope("dodecahedron").is_none());
    }

    #[test]
    fn permutations_in_order() {
        assert_eq!(nth_permutation(3, 0), vec![1, 2, 3]);
        assert_eq!(nth_permutation(3, 1), vec![1, 3, 2]);
        assert_eq!(nth_permutation(3, 5), vec![3, 2, 1]);
    }

    #[test]
    fn formulas() {
        assert_eq!(OrderFormula::Pentagon.evaluate(&[2, 3, 5, 7, 11]), BigInt::from(4620));
        assert_eq!(OrderFormula::Tree.evaluate(&[2, 3, 5, 7, 11, 13, 17]), BigInt::from(510 * 17));
        assert_eq!(OrderFormula::Tree.evaluate(&[2, 2, 2, 3, 3, 3, 3]), BigInt::from(72));
    }

    #[test]
    fn instances_expand_parameters() {
        let t = golden_table(TableName::Pentagon);
        let inst = t.instances();
        assert_eq!(t.rows.len(), 6);
        assert_eq!(inst.len(), 10);
        let last = inst.last().unwrap();
        assert_eq!(last.degrees, vec![6; 5]);
        assert_eq!(last.expected[0], AbelianInvariants::from_cyclic_orders(0, [12, 6, 6, 6, 6].map(BigInt::from)));
    }

    #[test]
    fn pentagon_reproduces() {
        let r = reproduce_table(Execution::Sequential, TableName::Pentagon, false).unwrap();
        assert!(r.all_match(), "{:?}", r.mismatches());
    }
}
