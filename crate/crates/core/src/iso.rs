//! Isomorphism, automorphisms and canonical forms of plain graphs.
//!
//! Colour refinement followed by exhaustive individualization; every leaf of
//! the search tree yields a certificate and the lexicographically smallest one
//! is the canonical form. Graphs here are small (a few dozen vertices with
//! tiny automorphism groups), so no pruning beyond refinement is attempted.

use std::collections::{BTreeMap, HashMap};

use crate::error::Result;
use crate::graph::{label_sign, EdgeId, EdgeKind, Generator, Label, PlainGraph, VertexId, VertexKind};
use crate::parity::ParityTable;

/// Kind-preserving isomorphism between two plain graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertices: BTreeMap<VertexId, VertexId>,
    pub edges: BTreeMap<EdgeId, EdgeId>,
}

impl Isomorphism {
    pub fn identity(g: &PlainGraph) -> Self {
        Isomorphism {
            vertices: g.vertices().iter().map(|v| (v.id, v.id)).collect(),
            edges: g.edges().iter().map(|e| (e.id, e.id)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Isomorphism {
            vertices: self.vertices.iter().map(|(a, b)| (*b, *a)).collect(),
            edges: self.edges.iter().map(|(a, b)| (*b, *a)).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Isomorphism) -> Self {
        Isomorphism {
            vertices: self.vertices.iter().map(|(a, b)| (*a, other.vertices[b])).collect(),
            edges: self.edges.iter().map(|(a, b)| (*a, other.edges[b])).collect(),
        }
    }

    pub fn map_generator(&self, x: Generator) -> Generator {
        match x {
            Generator::Vertex(v) => Generator::Vertex(self.vertices[&v]),
            Generator::Edge(e) => Generator::Edge(self.edges[&e]),
        }
    }

    /// Transports a label of the source graph to the target graph.
    pub fn push_label(&self, label: &Label) -> Label {
        Label {
            order: label.order.iter().map(|x| self.map_generator(*x)).collect(),
            orientation: label
                .orientation
                .iter()
                .map(|(e, (s, d))| (self.edges[e], (self.vertices[s], self.vertices[d])))
                .collect(),
        }
    }

    /// Transports a label of the target graph back to the source graph.
    pub fn pull_label(&self, label: &Label) -> Label {
        self.inverse().push_label(label)
    }

    /// Checks that this really is a kind-preserving isomorphism `g1 → g2`.
    pub fn is_valid(&self, g1: &PlainGraph, g2: &PlainGraph) -> bool {
        if self.vertices.len() != g1.vertices().len()
            || self.edges.len() != g1.edges().len()
            || g1.vertices().len() != g2.vertices().len()
            || g1.edges().len() != g2.edges().len()
        {
            return false;
        }
        let vimage: std::collections::BTreeSet<_> = self.vertices.values().collect();
        let eimage: std::collections::BTreeSet<_> = self.edges.values().collect();
        if vimage.len() != self.vertices.len() || eimage.len() != self.edges.len() {
            return false;
        }
        for v in g1.vertices() {
            match self.vertices.get(&v.id).and_then(|w| g2.vertex(*w)) {
                Some(w) if w.kind == v.kind => {}
                _ => return false,
            }
        }
        for e in g1.edges() {
            let Some(f) = self.edges.get(&e.id).and_then(|f| g2.edge(*f)) else {
                return false;
            };
            let (s, d) = (self.vertices[&e.src], self.vertices[&e.dst]);
            if f.kind != e.kind || !((f.src, f.dst) == (s, d) || (f.src, f.dst) == (d, s)) {
                return false;
            }
        }
        true
    }
}

/// Certificate of the isomorphism class of an unlabeled plain graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub kinds: Vec<VertexKind>,
    pub edges: Vec<(usize, usize, EdgeKind)>,
}

struct Search<'a> {
    g: &'a PlainGraph,
    adj: Vec<Vec<(EdgeKind, usize)>>,
    best: Option<CanonicalForm>,
    best_leaves: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a PlainGraph) -> Self {
        let mut adj = vec![Vec::new(); g.vertices().len()];
        for e in g.edges() {
            let (a, b) = (g.vertex_index(e.src), g.vertex_index(e.dst));
            adj[a].push((e.kind, b));
            adj[b].push((e.kind, a));
        }
        Search {
            g,
            adj,
            best: None,
            best_leaves: Vec::new(),
        }
    }

    fn refine(&self, mut colour: Vec<usize>) -> Vec<usize> {
        let mut classes = distinct(&colour);
        loop {
            let sigs: Vec<(usize, Vec<(EdgeKind, usize)>)> = (0..colour.len())
                .map(|v| {
                    let mut nb: Vec<_> = self.adj[v].iter().map(|&(k, w)| (k, colour[w])).collect();
                    nb.sort();
                    (colour[v], nb)
                })
                .collect();
            colour = rank(&sigs);
            let now = distinct(&colour);
            if now == classes {
                return colour;
            }
            classes = now;
        }
    }

    fn certificate(&self, pos: &[usize]) -> CanonicalForm {
        let mut kinds = vec![VertexKind::White; pos.len()];
        for (i, v) in self.g.vertices().iter().enumerate() {
            kinds[pos[i]] = v.kind;
        }
        let mut edges: Vec<_> = self
            .g
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = (pos[self.g.vertex_index(e.src)], pos[self.g.vertex_index(e.dst)]);
                (a.min(b), a.max(b), e.kind)
            })
            .collect();
        edges.sort();
        CanonicalForm { kinds, edges }
    }

    fn descend(&mut self, colour: Vec<usize>) {
        let colour = self.refine(colour);
        let n = colour.len();
        let mut sizes = vec![0usize; n];
        for &c in &colour {
            sizes[c] += 1;
        }
        // first smallest non-singleton cell
        let target = (0..n).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c));
        match target {
            None => {
                let cert = self.certificate(&colour);
                match &self.best {
                    Some(b) if cert > *b => {}
                    Some(b) if cert == *b => self.best_leaves.push(colour),
                    _ => {
                        self.best = Some(cert);
                        self.best_leaves = vec![colour];
                    }
                }
            }
            Some(cell) => {
                for v in (0..n).filter(|&v| colour[v] == cell) {
                    let sigs: Vec<(usize, bool)> = (0..n).map(|w| (colour[w], w != v)).collect();
                    self.descend(rank(&sigs));
                }
            }
        }
    }
}

fn distinct(colour: &[usize]) -> usize {
    let mut c = colour.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut sorted = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect()
}

fn kind_rank(k: VertexKind) -> usize {
    match k {
        VertexKind::White => 0,
        VertexKind::ExtBlack => 1,
        VertexKind::IntBlack => 2,
    }
}

/// Canonical form plus every canonical labelling (vertex index ↦ position)
/// that attains it.
fn search(g: &PlainGraph) -> (CanonicalForm, Vec<Vec<usize>>) {
    let mut s = Search::new(g);
    let start = g.vertices().iter().map(|v| kind_rank(v.kind)).collect();
    s.descend(start);
    let best = s.best.unwrap_or(CanonicalForm {
        kinds: vec![],
        edges: vec![],
    });
    (best, s.best_leaves)
}

pub fn canonical_form(g: &PlainGraph) -> CanonicalForm {
    search(g).0
}

/// Lifts a vertex bijection to edges, pairing parallel edges of the same kind
/// in id order.
fn lift(g1: &PlainGraph, g2: &PlainGraph, vmap: BTreeMap<VertexId, VertexId>) -> Option<Isomorphism> {
    let key = |a: VertexId, b: VertexId, k: EdgeKind| (a.min(b), a.max(b), k);
    let mut pool: HashMap<(VertexId, VertexId, EdgeKind), Vec<EdgeId>> = HashMap::new();
    for e in g2.edges() {
        pool.entry(key(e.src, e.dst, e.kind)).or_default().push(e.id);
    }
    for v in pool.values_mut() {
        v.sort();
        v.reverse();
    }
    let mut edges = BTreeMap::new();
    let mut sorted: Vec<_> = g1.edges().to_vec();
    sorted.sort_by_key(|e| e.id);
    for e in sorted {
        let k = key(vmap[&e.src], vmap[&e.dst], e.kind);
        let f = pool.get_mut(&k)?.pop()?;
        edges.insert(e.id, f);
    }
    Some(Isomorphism { vertices: vmap, edges })
}

fn vertex_map(g1: &PlainGraph, p1: &[usize], g2: &PlainGraph, p2: &[usize]) -> BTreeMap<VertexId, VertexId> {
    let mut at = vec![0usize; p2.len()];
    for (i, &p) in p2.iter().enumerate() {
        at[p] = i;
    }
    g1.vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.id, g2.vertices()[at[p1[i]]].id))
        .collect()
}

/// An isomorphism `g1 → g2` if one exists.
pub fn iso(g1: &PlainGraph, g2: &PlainGraph) -> Option<Isomorphism> {
    if g1.vertices().len() != g2.vertices().len() || g1.edges().len() != g2.edges().len() {
        return None;
    }
    let (c1, l1) = search(g1);
    let (c2, l2) = search(g2);
    if c1 != c2 {
        return None;
    }
    lift(g1, g2, vertex_map(g1, &l1[0], g2, &l2[0]))
}

/// Vertex permutations preserving kinds and the edge multiset, each lifted to
/// edges by pairing parallel edges in id order.
pub fn vertex_automorphisms(g: &PlainGraph) -> Vec<Isomorphism> {
    let (_, leaves) = search(g);
    leaves
        .iter()
        .map(|l| lift(g, g, vertex_map(g, &leaves[0], g, l)).expect("leaf with minimal certificate"))
        .collect()
}

fn parallel_classes(g: &PlainGraph) -> BTreeMap<(VertexId, VertexId, EdgeKind), usize> {
    let mut m = BTreeMap::new();
    for e in g.edges() {
        *m.entry((e.src.min(e.dst), e.src.max(e.dst), e.kind)).or_insert(0) += 1;
    }
    m
}

/// `|Aut(Γ)|`: vertex automorphisms times the permutations of parallel edges.
pub fn automorphism_count(g: &PlainGraph) -> u64 {
    let parallel: u64 = parallel_classes(g)
        .values()
        .map(|&m| (1..=m as u64).product::<u64>())
        .product();
    vertex_automorphisms(g).len() as u64 * parallel
}

/// Sign by which an automorphism acts on the orientation of `g`.
pub fn automorphism_sign(g: &PlainGraph, phi: &Isomorphism, pt: &ParityTable) -> Result<i8> {
    let l = g.label();
    label_sign(g, &l, &phi.push_label(&l), pt)
}

/// Does `g` admit an automorphism acting by −1 on its orientation? The sign is
/// a homomorphism, so it is enough to test the vertex automorphisms together
/// with transpositions of parallel edges.
pub fn has_orientation_reversing_automorphism(g: &PlainGraph, pt: &ParityTable) -> bool {
    let parallel_odd = parallel_classes(g)
        .iter()
        .any(|(&(_, _, kind), &m)| m >= 2 && pt.edge(kind).is_odd());
    let loop_odd = g.edges().iter().any(|e| e.is_loop() && pt.reversal(e.kind).is_odd());
    parallel_odd
        || loop_odd
        || vertex_automorphisms(g)
            .iter()
            .any(|phi| automorphism_sign(g, phi, pt).unwrap() == -1)
}
