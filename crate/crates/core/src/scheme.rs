//! Negative colour schemes `(Γ, k)` and the graph combinatorics they need.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("self-loop at colour {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("degree of colour {colour} must be positive, got {value}")]
    NonPositiveDegree { colour: usize, value: i64 },
    #[error("colour index {index} out of range 1..={r}")]
    IndexOutOfRange { index: i64, r: usize },
    #[error("expected {expected} degrees, found {found}")]
    DegreeCountMismatch { expected: usize, found: usize },
    #[error("a scheme needs at least one colour")]
    NoColours,
    #[error("{location}: {message}")]
    Parse { location: String, message: String },
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> SchemeError {
    SchemeError::Parse {
        location: location.into(),
        message: message.into(),
    }
}

/// A simple loopless graph on colours `1..=r` with a positive degree per colour.
///
/// Edges are stored as `(λ, μ)` with `λ < μ`, sorted lexicographically; that
/// order is the generator order used by every downstream computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NegativeColourScheme {
    degrees: Vec<u64>,
    edges: Vec<(usize, usize)>,
    names: Option<Vec<String>>,
}

impl NegativeColourScheme {
    /// Validates and normalizes a raw graph description.
    pub fn new<I>(r: usize, edges: I, degrees: &[i64]) -> Result<Self, SchemeError>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        if r == 0 {
            return Err(SchemeError::NoColours);
        }
        if degrees.len() != r {
            return Err(SchemeError::DegreeCountMismatch {
                expected: r,
                found: degrees.len(),
            });
        }
        let mut ks = Vec::with_capacity(r);
        for (i, &k) in degrees.iter().enumerate() {
            if k < 1 {
                return Err(SchemeError::NonPositiveDegree { colour: i + 1, value: k });
            }
            ks.push(k as u64);
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            for x in [a, b] {
                if x < 1 || x as usize > r {
                    return Err(SchemeError::IndexOutOfRange { index: x, r });
                }
            }
            if a == b {
                return Err(SchemeError::SelfLoop(a as usize));
            }
            let e = (a.min(b) as usize, a.max(b) as usize);
            if !set.insert(e) {
                return Err(SchemeError::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(NegativeColourScheme {
            degrees: ks,
            edges: set.into_iter().collect(),
            names: None,
        })
    }

    /// The scheme with no colours; the identity for [`disjoint_union`].
    pub fn empty() -> Self {
        NegativeColourScheme {
            degrees: Vec::new(),
            edges: Vec::new(),
            names: None,
        }
    }

    /// Two colours joined by one edge.
    pub fn edge(k1: u64, k2: u64) -> Self {
        NegativeColourScheme {
            degrees: vec![k1, k2],
            edges: vec![(1, 2)],
            names: None,
        }
    }

    pub fn complete(degrees: &[u64]) -> Self {
        let r = degrees.len();
        let edges = (1..=r).flat_map(|a| (a + 1..=r).map(move |b| (a, b))).collect();
        NegativeColourScheme {
            degrees: degrees.to_vec(),
            edges,
            names: None,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.r());
        self.names = Some(names);
        self
    }

    pub fn r(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Degree of colour `λ` (1-based).
    pub fn degree(&self, colour: usize) -> u64 {
        self.degrees[colour - 1]
    }

    pub fn total_degree(&self) -> u64 {
        self.degrees.iter().sum()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn very_composite(&self) -> bool {
        self.degrees.iter().all(|&k| k >= 2)
    }

    /// Position of the edge `{a, b}` in [`Self::edges`], if present.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return None;
        }
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index(a, b).is_some()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.r() + 1];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Renames colours: colour `λ` becomes `perm[λ - 1]` (1-based permutation).
    pub fn permute_colours(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.r());
        let mut degrees = vec![0; self.r()];
        for (old, &new) in perm.iter().enumerate() {
            degrees[new - 1] = self.degrees[old];
        }
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a - 1], perm[b - 1]);
                (x.min(y), x.max(y))
            })
            .collect();
        edges.sort_unstable();
        let names = self.names.as_ref().map(|n| {
            let mut out = vec![String::new(); n.len()];
            for (old, &new) in perm.iter().enumerate() {
                out[new - 1] = n[old].clone();
            }
            out
        });
        NegativeColourScheme { degrees, edges, names }
    }

    /// Same graph, different degrees.
    pub fn with_degrees(&self, degrees: &[u64]) -> Result<Self, SchemeError> {
        if degrees.len() != self.r() {
            return Err(SchemeError::DegreeCountMismatch {
                expected: self.r(),
                found: degrees.len(),
            });
        }
        if let Some(i) = degrees.iter().position(|&k| k == 0) {
            return Err(SchemeError::NonPositiveDegree { colour: i + 1, value: 0 });
        }
        Ok(NegativeColourScheme {
            degrees: degrees.to_vec(),
            edges: self.edges.clone(),
            names: self.names.clone(),
        })
    }

    /// Restriction to a vertex subset, relabelled `1..=len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut index = BTreeMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            index.insert(v, i + 1);
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(a, b)| Some((*index.get(&a)?, *index.get(&b)?)))
            .map(|(x, y)| (x.min(y), x.max(y)))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        NegativeColourScheme {
            degrees: vertices.iter().map(|&v| self.degree(v)).collect(),
            edges,
            names: self
                .names
                .as_ref()
                .map(|n| vertices.iter().map(|&v| n[v - 1].clone()).collect()),
        }
    }

    /// Connected components as standalone schemes, with their original vertex lists.
    pub fn components(&self) -> Vec<(NegativeColourScheme, Vec<usize>)> {
        analyze_graph(self)
            .components
            .iter()
            .map(|c| (self.induced(&c.vertices), c.vertices.clone()))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("colours".into(), json!(self.r()));
        obj.insert(
            "edges".into(),
            json!(self.edges.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>()),
        );
        obj.insert("degrees".into(), json!(self.degrees));
        if let Some(n) = &self.names {
            obj.insert("colour_names".into(), json!(n));
        }
        Value::Object(obj)
    }
}

impl fmt::Display for NegativeColourScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k: Vec<String> = self.degrees.iter().map(ToString::to_string).collect();
        let e: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "r={} k=({}) edges=[{}]", self.r(), k.join(","), e.join(" "))
    }
}

/// How a connected component splits: a 2-colouring or an odd closed walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parity {
    /// `signs[i]` is `ε` of `vertices[i]`; the lowest vertex gets `+1`.
    Bipartite { signs: Vec<i8> },
    /// Vertices of an odd cycle; consecutive entries (and last→first) are edges.
    OddCycle(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Sorted ascending.
    pub vertices: Vec<usize>,
    pub parity: Parity,
}

impl Component {
    pub fn is_bipartite(&self) -> bool {
        matches!(self.parity, Parity::Bipartite { .. })
    }

    /// `ε_λ` for a vertex of this component, if bipartite.
    pub fn sign(&self, v: usize) -> Option<i8> {
        match &self.parity {
            Parity::Bipartite { signs } => {
                let i = self.vertices.binary_search(&v).ok()?;
                Some(signs[i])
            }
            Parity::OddCycle(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphAnalysis {
    /// Ordered by lowest vertex.
    pub components: Vec<Component>,
    /// Edge count.
    pub s: usize,
    /// Number of bipartite components.
    pub t: usize,
}

impl GraphAnalysis {
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn is_bipartite(&self) -> bool {
        self.components.iter().all(Component::is_bipartite)
    }

    pub fn component_of(&self, v: usize) -> Option<&Component> {
        self.components.iter().find(|c| c.vertices.binary_search(&v).is_ok())
    }
}

pub fn analyze_graph(scheme: &NegativeColourScheme) -> GraphAnalysis {
    let r = scheme.r();
    let adj = scheme.adjacency();
    let mut seen = vec![false; r + 1];
    let mut side = vec![0i8; r + 1];
    let mut parent = vec![0usize; r + 1];
    let mut depth = vec![0usize; r + 1];
    let mut components = Vec::new();

    for root in 1..=r {
        if seen[root] {
            continue;
        }
        let mut vertices = vec![root];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        side[root] = 1;
        parent[root] = root;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    side[w] = -side[u];
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    vertices.push(w);
                    queue.push_back(w);
                }
            }
        }
        vertices.sort_unstable();

        let conflict = vertices
            .iter()
            .flat_map(|&u| adj[u].iter().map(move |&w| (u, w)))
            .find(|&(u, w)| u < w && side[u] == side[w]);
        let parity = match conflict {
            None => Parity::Bipartite {
                signs: vertices.iter().map(|&v| side[v]).collect(),
            },
            Some((u, w)) => Parity::OddCycle(odd_cycle(u, w, &parent, &depth)),
        };
        components.push(Component { vertices, parity });
    }
    let t = components.iter().filter(|c| c.is_bipartite()).count();
    GraphAnalysis {
        components,
        s: scheme.edge_count(),
        t,
    }
}

/// Closes the BFS tree paths from `u` and `w` (same side, adjacent) into an odd cycle.
fn odd_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Complement of `Γ` within all unordered pairs; vertices and degrees kept.
pub fn negate_graph(scheme: &NegativeColourScheme) -> NegativeColourScheme {
    let r = scheme.r();
    let edges = (1..=r)
        .flat_map(|a| (a + 1..=r).map(move |b| (a, b)))
        .filter(|&(a, b)| !scheme.has_edge(a, b))
        .collect();
    NegativeColourScheme {
        degrees: scheme.degrees.clone(),
        edges,
        names: scheme.names.clone(),
    }
}

/// `a ⊔ b`, with the colours of `b` shifted by `a.r()`.
pub fn disjoint_union(a: &NegativeColourScheme, b: &NegativeColourScheme) -> NegativeColourScheme {
    let shift = a.r();
    let mut edges = a.edges.clone();
    edges.extend(b.edges.iter().map(|&(x, y)| (x + shift, y + shift)));
    let mut degrees = a.degrees.clone();
    degrees.extend_from_slice(&b.degrees);
    let names = match (&a.names, &b.names) {
        (None, None) => None,
        (na, nb) => {
            let fill = |n: &Option<Vec<String>>, s: &NegativeColourScheme, off: usize| {
                n.clone()
                    .unwrap_or_else(|| (1..=s.r()).map(|i| (i + off).to_string()).collect())
            };
            let mut all = fill(na, a, 0);
            all.extend(fill(nb, b, shift));
            Some(all)
        }
    };
    NegativeColourScheme { degrees, edges, names }
}

/// Reads either the JSON or the terse text form, chosen by the first character.
pub fn parse_scheme(text: &str) -> Result<NegativeColourScheme, SchemeError> {
    if text.trim_start().starts_with('{') {
        parse_scheme_json(text)
    } else {
        parse_scheme_text(text)
    }
}

/// Text form: line 1 `r`, line 2 the degrees, then one `λ μ` pair per line.
/// Blank lines and `#` comments are ignored.
pub fn parse_scheme_text(text: &str) -> Result<NegativeColourScheme, SchemeError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let int = |line: usize, field: usize, tok: &str| -> Result<i64, SchemeError> {
        tok.parse::<i64>().map_err(|_| {
            parse_err(format!("line {line}, field {field}"), format!("expected an integer, found `{tok}`"))
        })
    };

    let (ln, first) = lines.next().ok_or_else(|| parse_err("line 1", "empty input"))?;
    let toks: Vec<&str> = first.split_whitespace().collect();
    if toks.len() != 1 {
        return Err(parse_err(format!("line {ln}"), "expected the colour count alone"));
    }
    let r = int(ln, 1, toks[0])?;
    if r < 1 {
        return Err(SchemeError::NoColours);
    }
    let (ln, second) = lines
        .next()
        .ok_or_else(|| parse_err(format!("line {}", ln + 1), "missing degree line"))?;
    let degrees = second
        .split_whitespace()
        .enumerate()
        .map(|(i, t)| int(ln, i + 1, t))
        .collect::<Result<Vec<_>, _>>()?;
    let mut edges = Vec::new();
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(parse_err(format!("line {ln}"), format!("expected `λ μ`, found {} fields", toks.len())));
        }
        edges.push((int(ln, 1, toks[0])?, int(ln, 2, toks[1])?));
    }
    NegativeColourScheme::new(r as usize, edges, &degrees)
}

/// JSON form `{"colours": r, "edges": [[1,2],...], "degrees": [...]}`.
///
/// Edge endpoints may instead be colour names; names are numbered by first
/// appearance (edges first, then `degrees` keys) and `degrees` must then be an
/// object keyed by name.
pub fn parse_scheme_json(text: &str) -> Result<NegativeColourScheme, SchemeError> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| parse_err(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err("document", "expected a JSON object"))?;

    let raw_edges = obj
        .get("edges")
        .map(|e| e.as_array().ok_or_else(|| parse_err("field `edges`", "expected an array")))
        .transpose()?
        .cloned()
        .unwrap_or_default();

    let named = raw_edges
        .iter()
        .any(|e| e.as_array().is_some_and(|p| p.iter().any(Value::is_string)))
        || obj.get("degrees").is_some_and(Value::is_object);

    let mut names: Vec<String> = Vec::new();
    let lookup = |name: &str, names: &mut Vec<String>| -> i64 {
        match names.iter().position(|n| n == name) {
            Some(i) => i as i64 + 1,
            None => {
                names.push(name.to_owned());
                names.len() as i64
            }
        }
    };

    let mut edges = Vec::with_capacity(raw_edges.len());
    for (i, e) in raw_edges.iter().enumerate() {
        let loc = format!("field `edges[{i}]`");
        let pair = e
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| parse_err(&loc, "expected a pair"))?;
        let mut ends = [0i64; 2];
        for (slot, x) in ends.iter_mut().zip(pair) {
            *slot = match x {
                Value::String(s) if named => lookup(s, &mut names),
                Value::Number(n) if !named => n
                    .as_i64()
                    .ok_or_else(|| parse_err(&loc, "endpoint must be an integer"))?,
                _ => return Err(parse_err(&loc, "endpoints must be all integers or all names")),
            };
        }
        edges.push((ends[0], ends[1]));
    }

    let degrees_val = obj
        .get("degrees")
        .ok_or_else(|| parse_err("field `degrees`", "missing"))?;
    let degrees: Vec<i64> = if named {
        let map = degrees_val
            .as_object()
            .ok_or_else(|| parse_err("field `degrees`", "named colours need a name → degree object"))?;
        let mut ks = vec![None; names.len()];
        for (name, k) in map {
            let idx = lookup(name, &mut names) as usize;
            ks.resize(names.len(), None);
            ks[idx - 1] = Some(
                k.as_i64()
                    .ok_or_else(|| parse_err(format!("field `degrees.{name}`"), "expected an integer"))?,
            );
        }
        ks.into_iter()
            .enumerate()
            .map(|(i, k)| {
                k.ok_or_else(|| parse_err("field `degrees`", format!("no degree for colour `{}`", names[i])))
            })
            .collect::<Result<_, _>>()?
    } else {
        degrees_val
            .as_array()
            .ok_or_else(|| parse_err("field `degrees`", "expected an array"))?
            .iter()
            .enumerate()
            .map(|(i, k)| {
                k.as_i64()
                    .ok_or_else(|| parse_err(format!("field `degrees[{i}]`"), "expected an integer"))
            })
            .collect::<Result<_, _>>()?
    };

    let r = match obj.get("colours") {
        Some(c) => {
            let r = c
                .as_u64()
                .ok_or_else(|| parse_err("field `colours`", "expected a positive integer"))?;
            r as usize
        }
        None if named => names.len(),
        None => return Err(parse_err("field `colours`", "missing")),
    };
    if named && r != names.len() {
        return Err(parse_err(
            "field `colours`",
            format!("{} colours declared but {} names used", r, names.len()),
        ));
    }
    let scheme = NegativeColourScheme::new(r, edges, &degrees)?;
    Ok(if named { scheme.with_names(names) } else { scheme })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn five_cycle(k: &[i64]) -> NegativeColourScheme {
        NegativeColourScheme::new(5, [(1, 2), (2, 4), (4, 5), (3, 5), (1, 3)], k).unwrap()
    }

    fn check_odd_cycle(s: &NegativeColourScheme, cycle: &[usize]) {
        assert_eq!(cycle.len() % 2, 1);
        for i in 0..cycle.len() {
            let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            assert!(s.has_edge(a, b), "{a}-{b} is not an edge");
        }
    }

    #[test]
    fn validate_examples() {
        let s = NegativeColourScheme::new(2, [(1, 2)], &[2, 3]).unwrap();
        assert!(s.very_composite());
        let s = NegativeColourScheme::new(1, [], &[5]).unwrap();
        assert_eq!(s.edge_count(), 0);
        assert_eq!(
            NegativeColourScheme::new(2, [(1, 1)], &[2, 2]),
            Err(SchemeError::SelfLoop(1))
        );
    }

    #[test]
    fn validate_errors() {
        assert_eq!(
            NegativeColourScheme::new(3, [(1, 2), (2, 1)], &[2, 2, 2]),
            Err(SchemeError::DuplicateEdge(1, 2))
        );
        assert_eq!(
            NegativeColourScheme::new(2, [], &[2, 0]),
            Err(SchemeError::NonPositiveDegree { colour: 2, value: 0 })
        );
        assert_eq!(
            NegativeColourScheme::new(2, [(1, 3)], &[2, 2]),
            Err(SchemeError::IndexOutOfRange { index: 3, r: 2 })
        );
        assert!(matches!(
            NegativeColourScheme::new(2, [], &[2]),
            Err(SchemeError::DegreeCountMismatch { .. })
        ));
        let s = NegativeColourScheme::new(3, [(3, 1), (2, 1)], &[1, 1, 1]).unwrap();
        assert_eq!(s.edges(), &[(1, 2), (1, 3)]);
        assert!(!s.very_composite());
    }

    #[test]
    fn five_cycle_is_not_bipartite() {
        let s = five_cycle(&[1; 5]);
        let g = analyze_graph(&s);
        assert_eq!(g.components.len(), 1);
        assert_eq!(g.t, 0);
        match &g.components[0].parity {
            Parity::OddCycle(c) => {
                assert_eq!(c.len(), 5);
                check_odd_cycle(&s, c);
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
    }

    #[test]
    fn spider_tree_is_bipartite() {
        let s = NegativeColourScheme::new(7, [(1, 4), (2, 5), (3, 6), (1, 7), (2, 7), (3, 7)], &[1; 7]).unwrap();
        let g = analyze_graph(&s);
        assert!(g.is_connected());
        assert_eq!(g.t, 1);
        let c = &g.components[0];
        assert_eq!(c.sign(1), Some(1));
        for &(a, b) in s.edges() {
            assert_eq!(c.sign(a).unwrap(), -c.sign(b).unwrap());
        }
    }

    #[test]
    fn edgeless_components() {
        let s = NegativeColourScheme::new(4, [], &[1; 4]).unwrap();
        let g = analyze_graph(&s);
        assert_eq!(g.components.len(), 4);
        assert_eq!(g.t, 4);
        assert_eq!(g.s, 0);
    }

    #[test]
    fn lowest_vertex_gets_plus() {
        let s = NegativeColourScheme::new(4, [(2, 3), (3, 4), (1, 4)], &[1; 4]).unwrap();
        let g = analyze_graph(&s);
        assert_eq!(g.components[0].parity, Parity::Bipartite { signs: vec![1, -1, 1, -1] });
    }

    #[test]
    fn negation_examples() {
        let k3 = NegativeColourScheme::complete(&[1, 1, 1]);
        assert_eq!(negate_graph(&k3).edge_count(), 0);
        let e = NegativeColourScheme::edge(2, 3);
        assert!(negate_graph(&e).edges().is_empty());
        // the complement of a 5-cycle is the other 5-cycle on the remaining pairs
        let c = five_cycle(&[1; 5]);
        let n = negate_graph(&c);
        let all: BTreeSet<(usize, usize)> =
            (1..=5).flat_map(|a| (a + 1..=5).map(move |b| (a, b))).collect();
        let expected: Vec<(usize, usize)> =
            all.into_iter().filter(|e| !c.edges().contains(e)).collect();
        assert_eq!(n.edges(), expected.as_slice());
        assert_eq!(n.edges(), &[(1, 4), (1, 5), (2, 3), (2, 5), (3, 4)]);
        let g = analyze_graph(&n);
        assert!(g.is_connected() && !g.is_bipartite());
    }

    #[test]
    fn union_examples() {
        let a = NegativeColourScheme::edge(2, 4);
        let b = NegativeColourScheme::edge(3, 5);
        let u = disjoint_union(&a, &b);
        assert_eq!(u.edges(), &[(1, 2), (3, 4)]);
        assert_eq!(u.degrees(), &[2, 4, 3, 5]);
        assert_eq!(analyze_graph(&u).components.len(), 2);
        assert_eq!(disjoint_union(&a, &NegativeColourScheme::empty()), a);
        assert_eq!(disjoint_union(&NegativeColourScheme::empty(), &a), a);
    }

    #[test]
    fn text_format() {
        let s = parse_scheme("# pentagon\n5\n2 3 5 7 11\n1 2\n1 3\n2 4\n3 5\n4 5\n").unwrap();
        assert_eq!(s.r(), 5);
        assert_eq!(s.edge_count(), 5);
        let err = parse_scheme_text("2\n2 x\n").unwrap_err();
        assert_eq!(err.to_string(), "line 2, field 2: expected an integer, found `x`");
        let err = parse_scheme_text("2\n2 2\n1 2 3\n").unwrap_err();
        assert!(err.to_string().starts_with("line 3"));
        assert!(matches!(parse_scheme_text("2\n2 2\n1 1\n"), Err(SchemeError::SelfLoop(1))));
    }

    #[test]
    fn json_format() {
        let s = parse_scheme(r#"{"colours": 2, "edges": [[1,2]], "degrees": [4, 6]}"#).unwrap();
        assert_eq!(s, NegativeColourScheme::edge(4, 6));
        let err = parse_scheme(r#"{"colours": 2, "edges": [[1,2,3]], "degrees": [4, 6]}"#).unwrap_err();
        assert_eq!(err.to_string(), "field `edges[0]`: expected a pair");
        let err = parse_scheme(r#"{"colours": 2, "edges": [], "degrees": [4, "x"]}"#).unwrap_err();
        assert_eq!(err.to_string(), "field `degrees[1]`: expected an integer");
        assert!(parse_scheme("{").is_err());
    }

    #[test]
    fn json_named_colours() {
        let s = parse_scheme(
            r#"{"edges": [["red","blue"], ["blue","green"]], "degrees": {"green": 5, "red": 2, "blue": 3}}"#,
        )
        .unwrap();
        assert_eq!(s.names().unwrap(), &["red", "blue", "green"]);
        assert_eq!(s.degrees(), &[2, 3, 5]);
        assert_eq!(s.edges(), &[(1, 2), (2, 3)]);
        let echoed = s.to_json();
        assert_eq!(echoed["colour_names"][2], "green");
    }

    #[test]
    fn components_and_induced() {
        let u = disjoint_union(&five_cycle(&[2, 3, 5, 7, 11]), &NegativeColourScheme::edge(4, 6));
        let comps = u.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[1].0, NegativeColourScheme::edge(4, 6));
        assert_eq!(comps[1].1, vec![6, 7]);
    }
}
