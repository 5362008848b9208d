//! Labeled plain graphs.
//!
//! A plain graph has white, external black and internal black vertices and
//! dashed and solid edges. A label is a total order on the generators
//! `o(Γ) = E(Γ) ∪ V(Γ)` together with an orientation of every edge; the
//! orientation is stored as the `(src, dst)` pair of each edge.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parity::ParityTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexKind {
    #[serde(rename = "white")]
    White,
    #[serde(rename = "extBlack")]
    ExtBlack,
    #[serde(rename = "intBlack")]
    IntBlack,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Dashed,
    Solid,
}

/// Marking of a trivalent skeleton vertex of a hairy graph: type (I) has two
/// incoming skeleton edges, type (II) has one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexType {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    pub kind: VertexKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub kind: EdgeKind,
    pub src: VertexId,
    pub dst: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.src == self.dst
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if self.src == v {
            self.dst
        } else {
            self.src
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Vertex(VertexId),
    Edge(EdgeId),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Vertex(v) => write!(f, "v{}", v.0),
            Generator::Edge(e) => write!(f, "e{}", e.0),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("generator id {s:?}"));
        let (head, tail) = s.split_at(s.len().min(1));
        let n: u32 = tail.parse().map_err(|_| bad())?;
        match head {
            "v" => Ok(Generator::Vertex(VertexId(n))),
            "e" => Ok(Generator::Edge(EdgeId(n))),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A label detached from its graph: generator order plus edge orientations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Label {
    pub order: Vec<Generator>,
    pub orientation: BTreeMap<EdgeId, (VertexId, VertexId)>,
}

impl Label {
    /// Returns the same label with edge `e` reversed.
    pub fn reversed(&self, e: EdgeId) -> Label {
        let mut out = self.clone();
        if let Some(o) = out.orientation.get_mut(&e) {
            *o = (o.1, o.0);
        }
        out
    }

    /// Returns the same label with the generators at positions `i` and `j`
    /// exchanged.
    pub fn swapped(&self, i: usize, j: usize) -> Label {
        let mut out = self.clone();
        out.order.swap(i, j);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlainGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    order: Vec<Generator>,
    markings: BTreeMap<VertexId, VertexType>,
    vindex: HashMap<VertexId, usize>,
    eindex: HashMap<EdgeId, usize>,
}

impl PlainGraph {
    /// Builds a graph and checks the valence and connectivity rules of plain
    /// graphs. `order` must list every vertex and edge id exactly once.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>, order: Vec<Generator>) -> Result<Self> {
        let g = Self::unchecked(vertices, edges, order)?;
        g.check_valence()?;
        g.check_components()?;
        Ok(g)
    }

    /// Builds a graph with the canonical label: vertices then edges, each in
    /// the given order.
    pub fn with_construction_order(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        let order = vertices
            .iter()
            .map(|v| Generator::Vertex(v.id))
            .chain(edges.iter().map(|e| Generator::Edge(e.id)))
            .collect();
        Self::new(vertices, edges, order)
    }

    fn unchecked(vertices: Vec<Vertex>, edges: Vec<Edge>, order: Vec<Generator>) -> Result<Self> {
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.id, i).is_some() {
                return Err(Error::MalformedGraph(format!("duplicate vertex id {}", v.id.0)));
            }
        }
        let mut eindex = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            if eindex.insert(e.id, i).is_some() {
                return Err(Error::MalformedGraph(format!("duplicate edge id {}", e.id.0)));
            }
            if !vindex.contains_key(&e.src) || !vindex.contains_key(&e.dst) {
                return Err(Error::MalformedGraph(format!("edge {} has a dangling endpoint", e.id.0)));
            }
        }
        let g = PlainGraph {
            vertices,
            edges,
            order,
            markings: BTreeMap::new(),
            vindex,
            eindex,
        };
        let expected: BTreeSet<Generator> = g.generators().collect();
        let given: BTreeSet<Generator> = g.order.iter().copied().collect();
        if given != expected || g.order.len() != expected.len() {
            return Err(Error::MalformedGraph("label order is not a permutation of o(Γ)".into()));
        }
        Ok(g)
    }

    fn check_valence(&self) -> Result<()> {
        for v in &self.vertices {
            let (d, s) = (self.dashed_degree(v.id), self.solid_degree(v.id));
            match v.kind {
                VertexKind::White if d < 3 || s > 0 => {
                    return Err(Error::MalformedGraph(format!(
                        "white vertex {} needs >= 3 dashed and no solid edges",
                        v.id.0
                    )))
                }
                VertexKind::IntBlack if s < 3 || d > 0 => {
                    return Err(Error::MalformedGraph(format!(
                        "internal black vertex {} needs >= 3 solid and no dashed edges",
                        v.id.0
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn check_components(&self) -> Result<()> {
        for comp in self.components() {
            if !comp.iter().any(|&i| self.vertices[i].kind == VertexKind::ExtBlack) {
                return Err(Error::MalformedGraph(
                    "every component needs an external black vertex".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn with_markings(mut self, markings: BTreeMap<VertexId, VertexType>) -> Self {
        self.markings = markings;
        self
    }

    pub fn markings(&self) -> &BTreeMap<VertexId, VertexType> {
        &self.markings
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, id: VertexId) -> Option<&Vertex> {
        self.vindex.get(&id).map(|&i| &self.vertices[i])
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.eindex.get(&id).map(|&i| &self.edges[i])
    }

    pub(crate) fn vertex_index(&self, id: VertexId) -> usize {
        self.vindex[&id]
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.vertices
            .iter()
            .map(|v| Generator::Vertex(v.id))
            .chain(self.edges.iter().map(|e| Generator::Edge(e.id)))
    }

    pub fn label(&self) -> Label {
        Label {
            order: self.order.clone(),
            orientation: self.edges.iter().map(|e| (e.id, (e.src, e.dst))).collect(),
        }
    }

    /// Same underlying graph carrying `label` instead.
    pub fn relabeled(&self, label: &Label) -> Result<PlainGraph> {
        self.check_label(label)?;
        let mut g = self.clone();
        for e in g.edges.iter_mut() {
            let (s, d) = label.orientation[&e.id];
            e.src = s;
            e.dst = d;
        }
        g.order = label.order.clone();
        Ok(g)
    }

    pub(crate) fn check_label(&self, label: &Label) -> Result<()> {
        if label.order.len() != self.vertices.len() + self.edges.len()
            || label.orientation.len() != self.edges.len()
        {
            return Err(Error::LabelMismatch);
        }
        let expected: BTreeSet<Generator> = self.generators().collect();
        let given: BTreeSet<Generator> = label.order.iter().copied().collect();
        if expected != given {
            return Err(Error::LabelMismatch);
        }
        for e in &self.edges {
            match label.orientation.get(&e.id) {
                Some(&(s, d)) if (s, d) == (e.src, e.dst) || (s, d) == (e.dst, e.src) => {}
                _ => return Err(Error::LabelMismatch),
            }
        }
        Ok(())
    }

    pub fn count_vertices(&self, kind: VertexKind) -> usize {
        self.vertices.iter().filter(|v| v.kind == kind).count()
    }

    pub fn count_edges(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    fn degree_of_kind(&self, v: VertexId, kind: EdgeKind) -> usize {
        self.edges
            .iter()
            .filter(|e| e.kind == kind)
            .map(|e| (e.src == v) as usize + (e.dst == v) as usize)
            .sum()
    }

    pub fn dashed_degree(&self, v: VertexId) -> usize {
        self.degree_of_kind(v, EdgeKind::Dashed)
    }

    pub fn solid_degree(&self, v: VertexId) -> usize {
        self.degree_of_kind(v, EdgeKind::Solid)
    }

    /// `k(Γ) = |E_θ(Γ)| - |W(Γ)|`.
    pub fn order(&self) -> i64 {
        self.count_edges(EdgeKind::Dashed) as i64 - self.count_vertices(VertexKind::White) as i64
    }

    pub fn is_admissible(&self) -> bool {
        self.vertices
            .iter()
            .filter(|v| v.kind == VertexKind::ExtBlack)
            .all(|v| self.dashed_degree(v.id) >= 1)
    }

    /// No internal black vertex, and each solid component is a broken line.
    pub fn is_good(&self) -> bool {
        if self.count_vertices(VertexKind::IntBlack) > 0 {
            return false;
        }
        let solid: Vec<&Edge> = self.edges.iter().filter(|e| e.kind == EdgeKind::Solid).collect();
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &solid {
            uf.union(self.vindex[&e.src], self.vindex[&e.dst]);
        }
        let mut sizes: HashMap<usize, (usize, usize)> = HashMap::new();
        for i in 0..self.vertices.len() {
            sizes.entry(uf.find(i)).or_default().0 += 1;
        }
        for e in &solid {
            sizes.get_mut(&uf.find(self.vindex[&e.src])).unwrap().1 += 1;
        }
        let paths = sizes.values().all(|&(nv, ne)| ne + 1 == nv);
        paths && self.vertices.iter().all(|v| self.solid_degree(v.id) <= 2)
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(self.vindex[&e.src], self.vindex[&e.dst]);
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.vertices.len() {
            comps.entry(uf.find(i)).or_default().push(i);
        }
        comps.into_values().collect()
    }

    /// First Betti number `|E| - |V| + #components`.
    pub fn betti_number(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + self.components().len() as i64
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            label: LabelJson {
                order: self.order.clone(),
            },
            markings: self.markings.clone(),
        }
    }

    pub fn from_json(json: GraphJson) -> Result<Self> {
        Ok(Self::new(json.vertices, json.edges, json.label.order)?.with_markings(json.markings))
    }

    /// Graphviz rendering: white vertices unfilled circles, external black
    /// filled circles, internal black filled squares, dashed edges dashed.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n  node [label=\"\", width=0.15, height=0.15];\n");
        for v in &self.vertices {
            let attrs = match v.kind {
                VertexKind::White => "shape=circle, style=solid",
                VertexKind::ExtBlack => "shape=circle, style=filled, fillcolor=black",
                VertexKind::IntBlack => "shape=square, style=filled, fillcolor=black",
            };
            out += &format!("  v{} [{attrs}, xlabel=\"{}\"];\n", v.id.0, v.id.0);
        }
        for e in &self.edges {
            let style = match e.kind {
                EdgeKind::Dashed => "dashed",
                EdgeKind::Solid => "solid",
            };
            out += &format!("  v{} -- v{} [style={style}, label=\"e{}\"];\n", e.src.0, e.dst.0, e.id.0);
        }
        out += "}\n";
        out
    }
}

/// Support filter for pairing with an order-`k` diagram: does `g` have at
/// least `2k` external black vertices carrying dashed edges? When it does,
/// the count `2|E_θ| ≥ #ext + 3|W|` together with `|E_θ| - |W| ≤ k` forces
/// `|W| = 0`, `|E_θ| = k` and exactly `2k` such vertices; this is re-checked.
pub fn support_check(g: &PlainGraph, k: i64) -> Result<bool> {
    let order = g.order();
    if order > k {
        return Err(Error::OrderExceeded { order, k });
    }
    let ext = g
        .vertices
        .iter()
        .filter(|v| v.kind == VertexKind::ExtBlack && g.dashed_degree(v.id) >= 1)
        .count() as i64;
    if ext < 2 * k {
        return Ok(false);
    }
    let white = g.count_vertices(VertexKind::White);
    let dashed = g.count_edges(EdgeKind::Dashed) as i64;
    if white != 0 || dashed != k || ext != 2 * k {
        return Err(Error::SupportViolation(format!(
            "white = {white}, dashed = {dashed}, external = {ext} at k = {k}"
        )));
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelJson {
    pub order: Vec<Generator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub label: LabelJson,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub markings: BTreeMap<VertexId, VertexType>,
}

/// Sign relating two labels of the same graph: one factor of −1 per
/// transposition of odd generators needed to turn the order of `a` into that
/// of `b`, and one per edge whose orientation differs and whose reversal is
/// odd.
pub fn label_sign(g: &PlainGraph, a: &Label, b: &Label, pt: &ParityTable) -> Result<i8> {
    g.check_label(a)?;
    g.check_label(b)?;
    let odd = |x: &Generator| match *x {
        Generator::Vertex(v) => pt.vertex(g.vertex(v).unwrap().kind).is_odd(),
        Generator::Edge(e) => pt.edge(g.edge(e).unwrap().kind).is_odd(),
    };
    let pos_b: HashMap<Generator, usize> = b
        .order
        .iter()
        .filter(|x| odd(x))
        .enumerate()
        .map(|(i, x)| (*x, i))
        .collect();
    let perm: Vec<usize> = a.order.iter().filter(|x| odd(x)).map(|x| pos_b[x]).collect();
    let mut sign = permutation_sign(&perm);
    for e in &g.edges {
        if a.orientation[&e.id] != b.orientation[&e.id] && pt.reversal(e.kind).is_odd() {
            sign = -sign;
        }
    }
    Ok(sign)
}

/// Sign of a permutation of `0..n` given in one-line notation.
pub fn permutation_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
