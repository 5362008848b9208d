//! Hairy graphs Θ(p,q,r) and Y(p₁,…,p₆) and the hair-merging layout shared
//! by their chord diagrams and STU resolutions.
//!
//! A skeleton edge `a → b` carrying `p` hairs is subdivided into `p + 1`
//! dashed segments by trivalent white attachment vertices, each of which
//! carries a dashed hair ending at a univalent external black vertex.
//!
//! The layout merges every trivalent skeleton vertex into one neighbouring
//! hair via an *internal* segment. Each merged group becomes one oriented line
//! of the chord diagram; every other segment becomes a chord.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, EdgeKind, PlainGraph, Vertex, VertexId, VertexKind, VertexType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum HairySpec {
    Theta { p: i64, q: i64, r: i64 },
    Y { hairs: [i64; 6] },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum YCondition {
    /// p₁, p₆, p₃, p₄ ≥ 1
    One,
    /// p₁, p₆, p₄ ≥ 1 and p₂ = p₃ = p₅ = 0
    Two,
    /// p₁, p₆ ≥ 1 and p₂ = … = p₅ = 0
    Three,
}

impl YCondition {
    pub fn of(p: &[i64; 6]) -> Result<YCondition> {
        if p.iter().any(|&x| x < 0) {
            return Err(Error::YDomain(p.to_vec()));
        }
        let [p1, p2, p3, p4, p5, p6] = *p;
        if p1 >= 1 && p6 >= 1 && p3 >= 1 && p4 >= 1 {
            Ok(YCondition::One)
        } else if p1 >= 1 && p6 >= 1 && p4 >= 1 && p2 == 0 && p3 == 0 && p5 == 0 {
            Ok(YCondition::Two)
        } else if p1 >= 1 && p6 >= 1 && p2 == 0 && p3 == 0 && p4 == 0 && p5 == 0 {
            Ok(YCondition::Three)
        } else {
            Err(Error::YDomain(p.to_vec()))
        }
    }

    pub fn number(self) -> u8 {
        match self {
            YCondition::One => 1,
            YCondition::Two => 2,
            YCondition::Three => 3,
        }
    }
}

impl HairySpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            HairySpec::Theta { p, q, r } => {
                if p < 1 || r < 1 || q < 0 {
                    return Err(Error::ThetaDomain { p, q, r });
                }
                Ok(())
            }
            HairySpec::Y { hairs } => YCondition::of(&hairs).map(|_| ()),
        }
    }

    /// Order `k` of the hairy graph.
    pub fn order(&self) -> i64 {
        match *self {
            HairySpec::Theta { p, q, r } => p + q + r + 1,
            HairySpec::Y { hairs } => 2 + hairs.iter().sum::<i64>(),
        }
    }
}

/// A point of the subdivided skeleton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    /// Trivalent skeleton vertex.
    Skeleton(usize),
    /// Attachment point of hair `pos` (counted from the tail) on skeleton edge `edge`.
    Hair { edge: usize, pos: usize },
}

/// One dashed piece of a subdivided skeleton edge, oriented with the edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub edge: usize,
    pub index: usize,
    pub from: Node,
    pub to: Node,
    pub internal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotKind {
    /// End of an incoming segment; becomes the source of a chord.
    Out,
    /// Start of an outgoing segment; becomes the target of a chord.
    In,
}

/// One vertex of an oriented line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Slot {
    pub node: Node,
    pub segment: usize,
    pub kind: SlotKind,
}

/// A hair merged with zero or more skeleton vertices; one oriented line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub hair: (usize, usize),
    pub members: Vec<Node>,
    /// Slots in level order.
    pub slots: Vec<Slot>,
}

impl Group {
    /// Number of levels above the axis.
    pub fn t(&self) -> usize {
        self.slots.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HairyLayout {
    pub spec: HairySpec,
    pub skeleton: Vec<VertexType>,
    /// Skeleton edges `(tail, head, hairs)`.
    pub edges: Vec<(usize, usize, usize)>,
    pub segments: Vec<Segment>,
    pub groups: Vec<Group>,
}

fn theta_skeleton(p: usize, q: usize, r: usize) -> (Vec<VertexType>, Vec<(usize, usize, usize)>) {
    // (I) = 0 receives the middle and lower edges, (II) = 1 the upper one.
    (
        vec![VertexType::TypeI, VertexType::TypeII],
        vec![(0, 1, p), (1, 0, q), (1, 0, r)],
    )
}

const T: usize = 0;
const C: usize = 1;
const LL: usize = 2;
const LR: usize = 3;

fn y_skeleton(h: &[i64; 6]) -> (Vec<VertexType>, Vec<(usize, usize, usize)>) {
    let h: Vec<usize> = h.iter().map(|&x| x as usize).collect();
    (
        vec![VertexType::TypeI, VertexType::TypeI, VertexType::TypeII, VertexType::TypeII],
        vec![
            (T, LL, h[0]),
            (LR, T, h[1]),
            (LL, LR, h[2]),
            (LR, C, h[3]),
            (LL, C, h[4]),
            (C, T, h[5]),
        ],
    )
}

fn segments_of(edges: &[(usize, usize, usize)]) -> Vec<Segment> {
    let mut out = Vec::new();
    for (ei, &(a, b, p)) in edges.iter().enumerate() {
        for s in 0..=p {
            let from = if s == 0 { Node::Skeleton(a) } else { Node::Hair { edge: ei, pos: s - 1 } };
            let to = if s == p { Node::Skeleton(b) } else { Node::Hair { edge: ei, pos: s } };
            out.push(Segment {
                edge: ei,
                index: s,
                from,
                to,
                internal: false,
            });
        }
    }
    out
}

impl HairyLayout {
    pub fn new(spec: HairySpec) -> Result<Self> {
        spec.validate()?;
        let (skeleton, edges) = match spec {
            HairySpec::Theta { p, q, r } => theta_skeleton(p as usize, q as usize, r as usize),
            HairySpec::Y { hairs } => y_skeleton(&hairs),
        };
        let mut segments = segments_of(&edges);
        let first = |e: usize| Node::Hair { edge: e, pos: 0 };
        // internal segments as (from, to); each hair is listed with the
        // skeleton vertices it absorbs
        let (internal, merged): (Vec<(Node, Node)>, Vec<((usize, usize), Vec<Node>)>) = match spec {
            HairySpec::Theta { .. } => (
                vec![(Node::Skeleton(0), first(0)), (Node::Skeleton(1), first(2))],
                vec![((0, 0), vec![Node::Skeleton(0)]), ((2, 0), vec![Node::Skeleton(1)])],
            ),
            HairySpec::Y { hairs } => {
                let s = Node::Skeleton;
                match YCondition::of(&hairs)? {
                    YCondition::One => {
                        let ll_edge = if hairs[4] >= 1 { 4 } else { 2 };
                        (
                            vec![(s(T), first(0)), (s(C), first(5)), (s(LR), first(3)), (s(LL), first(ll_edge))],
                            vec![
                                ((0, 0), vec![s(T)]),
                                ((5, 0), vec![s(C)]),
                                ((3, 0), vec![s(LR)]),
                                ((ll_edge, 0), vec![s(LL)]),
                            ],
                        )
                    }
                    YCondition::Two => (
                        vec![(s(T), first(0)), (s(C), first(5)), (s(LR), first(3)), (s(LL), s(LR))],
                        vec![
                            ((0, 0), vec![s(T)]),
                            ((5, 0), vec![s(C)]),
                            ((3, 0), vec![s(LR), s(LL)]),
                        ],
                    ),
                    YCondition::Three => (
                        vec![(s(T), first(0)), (s(C), first(5)), (s(LR), s(T)), (s(LL), s(LR))],
                        vec![((0, 0), vec![s(T), s(LR), s(LL)]), ((5, 0), vec![s(C)])],
                    ),
                }
            }
        };
        for seg in segments.iter_mut() {
            if internal.contains(&(seg.from, seg.to)) {
                seg.internal = true;
            }
        }
        debug_assert_eq!(segments.iter().filter(|s| s.internal).count(), internal.len());

        let mut owner: BTreeMap<Node, (usize, usize)> = BTreeMap::new();
        for (ei, &(_, _, p)) in edges.iter().enumerate() {
            for pos in 0..p {
                owner.insert(Node::Hair { edge: ei, pos }, (ei, pos));
            }
        }
        for (hair, nodes) in &merged {
            for n in nodes {
                owner.insert(*n, *hair);
            }
        }
        let mut hairs: Vec<(usize, usize)> = owner.values().copied().collect();
        hairs.sort();
        hairs.dedup();

        let groups = hairs
            .iter()
            .map(|&hair| {
                let members: Vec<Node> = owner.iter().filter(|(_, h)| **h == hair).map(|(n, _)| *n).collect();
                let hair_node = Node::Hair { edge: hair.0, pos: hair.1 };
                let mut outs: Vec<Slot> = Vec::new();
                let mut ins: Vec<Slot> = Vec::new();
                for (si, seg) in segments.iter().enumerate() {
                    if seg.internal {
                        continue;
                    }
                    if members.contains(&seg.to) {
                        outs.push(Slot {
                            node: seg.to,
                            segment: si,
                            kind: SlotKind::Out,
                        });
                    }
                    if members.contains(&seg.from) {
                        ins.push(Slot {
                            node: seg.from,
                            segment: si,
                            kind: SlotKind::In,
                        });
                    }
                }
                // segments are already in (edge, index) order; the hair's own
                // continuation goes last among the in-slots
                let cont = ins.iter().position(|s| s.node == hair_node);
                if let Some(i) = cont {
                    let c = ins.remove(i);
                    ins.push(c);
                }
                let mut slots = outs;
                slots.extend(ins);
                Group { hair, members, slots }
            })
            .collect();

        Ok(HairyLayout {
            spec,
            skeleton,
            edges,
            segments,
            groups,
        })
    }

    pub fn order(&self) -> i64 {
        self.spec.order()
    }

    /// Non-internal segments, in chord order (sorted by the line and level of
    /// their out-slot).
    pub fn chord_segments(&self) -> Vec<usize> {
        let mut out: Vec<((usize, usize), usize)> = Vec::new();
        for (gi, g) in self.groups.iter().enumerate() {
            for (l, s) in g.slots.iter().enumerate() {
                if s.kind == SlotKind::Out {
                    out.push(((gi, l), s.segment));
                }
            }
        }
        out.sort();
        out.into_iter().map(|(_, s)| s).collect()
    }

    /// `(line, level)` of the out- and in-slot of a non-internal segment.
    pub fn slot_of(&self, segment: usize, kind: SlotKind) -> (usize, usize) {
        for (gi, g) in self.groups.iter().enumerate() {
            for (l, s) in g.slots.iter().enumerate() {
                if s.segment == segment && s.kind == kind {
                    return (gi, l);
                }
            }
        }
        panic!("segment {segment} has no {kind:?} slot")
    }

    /// The hairy graph itself as a plain graph: skeleton vertices, then for each
    /// edge its attachment vertices and hair tips; segments, then hairs.
    pub fn plain_graph(&self) -> PlainGraph {
        let mut vertices = Vec::new();
        let mut ids: BTreeMap<Node, VertexId> = BTreeMap::new();
        let mut tips: Vec<(Node, VertexId)> = Vec::new();
        let mut next = 0u32;
        let mut fresh = || {
            next += 1;
            VertexId(next - 1)
        };
        for i in 0..self.skeleton.len() {
            let id = fresh();
            ids.insert(Node::Skeleton(i), id);
            vertices.push(Vertex {
                id,
                kind: VertexKind::White,
            });
        }
        for (ei, &(_, _, p)) in self.edges.iter().enumerate() {
            for pos in 0..p {
                let n = Node::Hair { edge: ei, pos };
                let (w, h) = (fresh(), fresh());
                ids.insert(n, w);
                tips.push((n, h));
                vertices.push(Vertex {
                    id: w,
                    kind: VertexKind::White,
                });
                vertices.push(Vertex {
                    id: h,
                    kind: VertexKind::ExtBlack,
                });
            }
        }
        let mut edges = Vec::new();
        for seg in &self.segments {
            edges.push(Edge {
                id: EdgeId(edges.len() as u32),
                kind: EdgeKind::Dashed,
                src: ids[&seg.from],
                dst: ids[&seg.to],
            });
        }
        for (n, h) in tips {
            edges.push(Edge {
                id: EdgeId(edges.len() as u32),
                kind: EdgeKind::Dashed,
                src: ids[&n],
                dst: h,
            });
        }
        let markings = (0..self.skeleton.len())
            .map(|i| (ids[&Node::Skeleton(i)], self.skeleton[i]))
            .collect();
        PlainGraph::with_construction_order(vertices, edges)
            .expect("hairy graphs are well formed")
            .with_markings(markings)
    }
}

pub fn build_theta(p: i64, q: i64, r: i64) -> Result<PlainGraph> {
    Ok(HairyLayout::new(HairySpec::Theta { p, q, r })?.plain_graph())
}

pub fn build_y(hairs: [i64; 6]) -> Result<PlainGraph> {
    Ok(HairyLayout::new(HairySpec::Y { hairs })?.plain_graph())
}
