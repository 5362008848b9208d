//! STU resolutions of hairy graphs.
//!
//! Every slot of a merged group becomes an external black vertex, every
//! non-internal segment a dashed edge, and the trivalent vertices of a group
//! are resolved into solid edges: each slot above the bottom one hangs from a
//! lower slot of the same group. All resolutions of one hairy graph share the
//! same vertices, dashed edges and generator order, so their labels agree
//! once the solid edges are contracted.

use std::collections::BTreeMap;

use crate::diagram::{diagram_from_layout, Point};
use crate::error::Result;
use crate::graph::{Edge, EdgeId, EdgeKind, PlainGraph, Vertex, VertexId, VertexKind};
use crate::hairy::{HairyLayout, HairySpec, SlotKind};
use crate::iso::Isomorphism;
use crate::structures::{line_structures, realize, GraphOnDiagram};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    /// Resolved graph carrying its aligned label.
    pub graph: PlainGraph,
    /// Parent slot of every slot above the bottom, per group.
    pub parents: Vec<Vec<usize>>,
}

fn resolve(layout: &HairyLayout, parents: &[Vec<usize>]) -> PlainGraph {
    let mut base = Vec::with_capacity(layout.groups.len());
    let mut vertices = Vec::new();
    for g in &layout.groups {
        base.push(vertices.len());
        for _ in &g.slots {
            vertices.push(Vertex {
                id: VertexId(vertices.len() as u32),
                kind: VertexKind::ExtBlack,
            });
        }
    }
    let vid = |(gi, l): (usize, usize)| VertexId((base[gi] + l) as u32);
    let mut edges = Vec::new();
    for (si, seg) in layout.segments.iter().enumerate() {
        if seg.internal {
            continue;
        }
        edges.push(Edge {
            id: EdgeId(edges.len() as u32),
            kind: EdgeKind::Dashed,
            src: vid(layout.slot_of(si, SlotKind::In)),
            dst: vid(layout.slot_of(si, SlotKind::Out)),
        });
    }
    for (gi, ps) in parents.iter().enumerate() {
        for (i, &p) in ps.iter().enumerate() {
            edges.push(Edge {
                id: EdgeId(edges.len() as u32),
                kind: EdgeKind::Solid,
                src: vid((gi, p)),
                dst: vid((gi, i + 1)),
            });
        }
    }
    PlainGraph::with_construction_order(vertices, edges).expect("resolutions are well formed")
}

impl Resolution {
    /// The structure on the hairy graph's diagram with the same parents.
    pub fn structure(&self, layout: &HairyLayout) -> GraphOnDiagram {
        GraphOnDiagram::from_parents(&diagram_from_layout(layout), &self.parents)
    }

    /// The realized structure together with the isomorphism sending each slot
    /// to its diagram vertex, each dashed edge to its chord and each solid
    /// edge to the solid edge entering the same slot.
    pub fn realized(&self, layout: &HairyLayout) -> Result<(PlainGraph, Isomorphism)> {
        let s = self.structure(layout);
        let real = realize(&s)?;
        let c = &s.diagram;
        let mut vertices = BTreeMap::new();
        let mut id = 0u32;
        for (gi, g) in layout.groups.iter().enumerate() {
            for l in 0..g.slots.len() {
                let idx = c.vertex_index(Point::new(gi, l)).expect("every slot is a diagram vertex");
                vertices.insert(VertexId(id), VertexId(idx as u32));
                id += 1;
            }
        }
        let chord_of: BTreeMap<usize, usize> = layout
            .chord_segments()
            .into_iter()
            .enumerate()
            .map(|(i, seg)| (seg, i))
            .collect();
        let mut edges = BTreeMap::new();
        let mut eid = 0u32;
        for (si, seg) in layout.segments.iter().enumerate() {
            if !seg.internal {
                edges.insert(EdgeId(eid), EdgeId(chord_of[&si] as u32));
                eid += 1;
            }
        }
        let k = c.k() as u32;
        let mut solid = 0u32;
        for ps in &self.parents {
            for _ in ps {
                edges.insert(EdgeId(eid), EdgeId(k + solid));
                eid += 1;
                solid += 1;
            }
        }
        let phi = Isomorphism { vertices, edges };
        debug_assert!(phi.is_valid(&self.graph, &real));
        Ok((real, phi))
    }
}

/// All resolutions, in lexicographic order of the parent vectors (first group
/// varying slowest).
pub fn stu_resolutions(spec: HairySpec) -> Result<Vec<Resolution>> {
    let layout = HairyLayout::new(spec)?;
    let mut all: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for g in &layout.groups {
        let options = line_structures(g.t(), false);
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
    Ok(all
        .into_iter()
        .map(|parents| Resolution {
            graph: resolve(&layout, &parents),
            parents,
        })
        .collect())
}
