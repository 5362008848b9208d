//! Solid-edge structures on chord diagrams and their realized graphs.

use std::collections::BTreeMap;

use crate::diagram::{ChordDiagram, Point};
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, EdgeKind, Generator, Label, PlainGraph, Vertex, VertexId, VertexKind};

/// A chord diagram together with solid edges on each of its lines. Each solid
/// edge is stored as `(lower level, higher level)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphOnDiagram {
    pub diagram: ChordDiagram,
    pub solid: Vec<Vec<(usize, usize)>>,
}

impl GraphOnDiagram {
    /// Structure in which level `l > 0` of line `i` hangs from level
    /// `parents[i][l - 1]`.
    pub fn from_parents(diagram: &ChordDiagram, parents: &[Vec<usize>]) -> Self {
        GraphOnDiagram {
            diagram: diagram.clone(),
            solid: parents
                .iter()
                .map(|ps| ps.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect())
                .collect(),
        }
    }

    /// Violations of condition IV and of the edge encoding.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.solid.len() != self.diagram.s() {
            out.push(format!("{} line structures for {} lines", self.solid.len(), self.diagram.s()));
            return out;
        }
        for (i, (edges, &t)) in self.solid.iter().zip(&self.diagram.lines).enumerate() {
            for &(a, b) in edges {
                if a >= b || b > t {
                    out.push(format!("line {}: solid edge ({a}, {b}) does not go up the line", i + 1));
                }
            }
            for l in 1..=t {
                if !edges.iter().any(|&(a, b)| b == l && a < l) {
                    out.push(format!("line {}: level {l} has no ingoing solid edge", i + 1));
                }
            }
        }
        out
    }

    /// Parent of every level above the axis, when each has exactly one
    /// ingoing edge.
    pub fn parents(&self) -> Option<Vec<Vec<usize>>> {
        if !self.violations().is_empty() {
            return None;
        }
        self.solid
            .iter()
            .zip(&self.diagram.lines)
            .map(|(edges, &t)| {
                if edges.len() != t {
                    return None;
                }
                (1..=t)
                    .map(|l| edges.iter().find(|e| e.1 == l).map(|e| e.0))
                    .collect()
            })
            .collect()
    }

    pub fn solid_edge_count(&self) -> usize {
        self.solid.iter().map(|e| e.len()).sum()
    }
}

/// Solid structures on one line with `t` levels above the axis: each level
/// hangs from exactly one lower level. With `good_only`, only those whose
/// solid part is a path.
pub fn line_structures(t: usize, good_only: bool) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for l in 1..=t {
        out = out
            .into_iter()
            .flat_map(|ps: Vec<usize>| {
                (0..l).map(move |p| {
                    let mut q = ps.clone();
                    q.push(p);
                    q
                })
            })
            .collect();
    }
    if good_only {
        out.retain(|ps| is_path(t, ps));
    }
    out
}

fn is_path(t: usize, parents: &[usize]) -> bool {
    let mut deg = vec![0; t + 1];
    for (i, &p) in parents.iter().enumerate() {
        deg[p] += 1;
        deg[i + 1] += 1;
    }
    deg.iter().all(|&d| d <= 2)
}

/// Every structure of `G(C)` (or the good ones), as structures on the diagram
/// rather than isomorphism classes, in lexicographic order of parent vectors.
pub fn enumerate_structures(c: &ChordDiagram, good_only: bool) -> Result<Vec<GraphOnDiagram>> {
    c.ensure_valid()?;
    let mut all: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for &t in &c.lines {
        let options = line_structures(t, good_only);
        all = all
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect();
    }
    Ok(all.iter().map(|p| GraphOnDiagram::from_parents(c, p)).collect())
}

/// Induced label on `g` for a vertex assignment `sigma` satisfying the pairing
/// conditions: vertices in `V(C)` order; solid edges up the lines, dashed
/// edges along chords; first the ingoing solid edge at each chord's source,
/// then each chord's dashed edge followed by the ingoing solid edge at its
/// target.
pub fn induced_label(g: &PlainGraph, c: &ChordDiagram, sigma: &BTreeMap<VertexId, Point>) -> Result<Label> {
    let bad = |m: &str| Error::InvalidStructure(m.to_string());
    let mut at: BTreeMap<Point, VertexId> = BTreeMap::new();
    for (v, p) in sigma {
        if at.insert(*p, *v).is_some() {
            return Err(bad("assignment is not injective"));
        }
    }
    if at.len() != 2 * c.k() || g.vertices().len() != at.len() {
        return Err(bad("assignment does not cover the diagram"));
    }
    let mut orientation = BTreeMap::new();
    let mut dashed_of_chord = Vec::with_capacity(c.k());
    for ch in &c.chords {
        let (a, b) = (at[&ch.src], at[&ch.dst]);
        let e = g
            .edges()
            .iter()
            .find(|e| e.kind == EdgeKind::Dashed && !orientation.contains_key(&e.id) && ((e.src, e.dst) == (a, b) || (e.src, e.dst) == (b, a)))
            .ok_or_else(|| bad("a chord has no dashed edge"))?;
        orientation.insert(e.id, (a, b));
        dashed_of_chord.push(e.id);
    }
    let ingoing = |p: Point, orientation: &mut BTreeMap<EdgeId, (VertexId, VertexId)>| -> Result<Option<EdgeId>> {
        if p.level == 0 {
            return Ok(None);
        }
        let w = at[&p];
        let mut found = None;
        for e in g.edges().iter().filter(|e| e.kind == EdgeKind::Solid) {
            let other = if e.src == w {
                e.dst
            } else if e.dst == w {
                e.src
            } else {
                continue;
            };
            let q = sigma[&other];
            if q.line == p.line && q.level < p.level {
                if found.is_some() {
                    return Err(bad("a vertex has two ingoing solid edges"));
                }
                found = Some(e.id);
                orientation.insert(e.id, (other, w));
            }
        }
        found.map(Some).ok_or_else(|| bad("a vertex above the axis has no ingoing solid edge"))
    };
    let mut edges = Vec::new();
    for ch in &c.chords {
        if let Some(e) = ingoing(ch.src, &mut orientation)? {
            edges.push(e);
        }
    }
    for (i, ch) in c.chords.iter().enumerate() {
        edges.push(dashed_of_chord[i]);
        if let Some(e) = ingoing(ch.dst, &mut orientation)? {
            edges.push(e);
        }
    }
    if edges.len() != g.edges().len() {
        return Err(bad("some edge is not ordered by the induced label"));
    }
    let mut order: Vec<Generator> = (0..2 * c.k()).map(|i| Generator::Vertex(at[&c.vertex_at(i)])).collect();
    order.extend(edges.into_iter().map(Generator::Edge));
    Ok(Label { order, orientation })
}

/// The realized graph of a structure with its induced label. Vertex `i` is the
/// `i`-th vertex of `V(C)`, dashed edge `i` is chord `i`, and solid edges
/// follow in line order.
pub fn realize(s: &GraphOnDiagram) -> Result<PlainGraph> {
    let c = &s.diagram;
    c.ensure_valid()?;
    let v = s.violations();
    if !v.is_empty() {
        return Err(Error::InvalidStructure(v.join("; ")));
    }
    let k = c.k();
    let vertices: Vec<Vertex> = (0..2 * k)
        .map(|i| Vertex {
            id: VertexId(i as u32),
            kind: VertexKind::ExtBlack,
        })
        .collect();
    let id = |p: Point| VertexId(c.vertex_index(p).expect("valid diagram") as u32);
    let mut edges: Vec<Edge> = c
        .chords
        .iter()
        .enumerate()
        .map(|(i, ch)| Edge {
            id: EdgeId(i as u32),
            kind: EdgeKind::Dashed,
            src: id(ch.src),
            dst: id(ch.dst),
        })
        .collect();
    for (line, es) in s.solid.iter().enumerate() {
        for &(a, b) in es {
            edges.push(Edge {
                id: EdgeId(edges.len() as u32),
                kind: EdgeKind::Solid,
                src: id(Point::new(line, a)),
                dst: id(Point::new(line, b)),
            });
        }
    }
    let g = PlainGraph::with_construction_order(vertices, edges)?;
    let sigma: BTreeMap<VertexId, Point> = (0..2 * k).map(|i| (VertexId(i as u32), c.vertex_at(i))).collect();
    let label = induced_label(&g, c, &sigma)?;
    g.relabeled(&label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::c1;

    #[test]
    fn three_vertex_line_has_chain_and_fork() {
        let s = line_structures(2, false);
        assert_eq!(s, vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(line_structures(2, true).len(), 2);
    }

    #[test]
    fn line_counts() {
        for (t, all, good) in [(0, 1, 1), (1, 1, 1), (2, 2, 2), (3, 6, 4), (4, 24, 8)] {
            assert_eq!(line_structures(t, false).len(), all);
            assert_eq!(line_structures(t, true).len(), good);
        }
    }

    #[test]
    fn missing_ingoing_edge_is_a_violation() {
        let s = GraphOnDiagram {
            diagram: c1(),
            solid: vec![vec![(0, 2), (0, 2)], vec![(0, 1), (1, 2)]],
        };
        assert!(!s.violations().is_empty());
        assert!(realize(&s).is_err());
    }

    #[test]
    fn realized_c1_structure() {
        let all = enumerate_structures(&c1(), false).unwrap();
        assert_eq!(all.len(), 4);
        for s in &all {
            let g = realize(s).unwrap();
            assert_eq!(g.count_vertices(VertexKind::ExtBlack), 6);
            assert_eq!(g.count_edges(EdgeKind::Dashed), 3);
            assert_eq!(g.count_edges(EdgeKind::Solid), 4);
            assert!(g.is_admissible());
        }
    }
}
