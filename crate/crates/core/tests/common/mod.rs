#![allow(dead_code)]

use std::collections::BTreeMap;

use graphpair::diagram::{ChordDiagram, Point};
use graphpair::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn int(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// Random plain graph on at most `max_v` vertices. Vertices are external
/// black unless their incidence allows a white or internal black vertex.
pub fn random_graph(rng: &mut ChaCha8Rng, max_v: usize) -> PlainGraph {
    let n = rng.gen_range(2..=max_v);
    let m = rng.gen_range(1..=2 * n);
    let mut edges = Vec::new();
    for i in 0..m {
        let a = rng.gen_range(0..n) as u32;
        let b = if rng.gen_bool(0.1) { a } else { rng.gen_range(0..n) as u32 };
        let kind = if rng.gen_bool(0.5) { EdgeKind::Dashed } else { EdgeKind::Solid };
        edges.push(Edge {
            id: EdgeId(i as u32),
            kind,
            src: VertexId(a),
            dst: VertexId(b),
        });
    }
    let mut vertices: Vec<Vertex> = (0..n)
        .map(|i| Vertex {
            id: VertexId(i as u32),
            kind: VertexKind::ExtBlack,
        })
        .collect();
    let tries = vertices.clone();
    for v in vertices.iter_mut() {
        let deg = |k: EdgeKind| {
            edges
                .iter()
                .filter(|e| e.kind == k)
                .map(|e| (e.src == v.id) as usize + (e.dst == v.id) as usize)
                .sum::<usize>()
        };
        let (d, s) = (deg(EdgeKind::Dashed), deg(EdgeKind::Solid));
        if s == 0 && d >= 3 && rng.gen_bool(0.5) {
            v.kind = VertexKind::White;
        } else if d == 0 && s >= 3 && rng.gen_bool(0.5) {
            v.kind = VertexKind::IntBlack;
        }
    }
    let mut order: Vec<Generator> = vertices
        .iter()
        .map(|v| Generator::Vertex(v.id))
        .chain(edges.iter().map(|e| Generator::Edge(e.id)))
        .collect();
    order.shuffle(rng);
    PlainGraph::new(vertices, edges.clone(), order.clone())
        .or_else(|_| PlainGraph::new(tries, edges, order))
        .expect("all-external graphs are plain")
}

/// A random label: shuffled generator order and random edge directions.
pub fn random_label(rng: &mut ChaCha8Rng, g: &PlainGraph) -> Label {
    let mut order: Vec<Generator> = g.generators().collect();
    order.shuffle(rng);
    let orientation = g
        .edges()
        .iter()
        .map(|e| {
            let o = if rng.gen_bool(0.5) { (e.src, e.dst) } else { (e.dst, e.src) };
            (e.id, o)
        })
        .collect();
    Label { order, orientation }
}

/// `g` with vertex and edge ids permuted and lists shuffled.
pub fn scrambled(rng: &mut ChaCha8Rng, g: &PlainGraph) -> PlainGraph {
    let mut vp: Vec<u32> = (0..g.vertices().len() as u32).collect();
    vp.shuffle(rng);
    let mut ep: Vec<u32> = (0..g.edges().len() as u32).collect();
    ep.shuffle(rng);
    let vmap: BTreeMap<VertexId, VertexId> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.id, VertexId(vp[i])))
        .collect();
    let emap: BTreeMap<EdgeId, EdgeId> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id, EdgeId(ep[i])))
        .collect();
    let mut vertices: Vec<Vertex> = g
        .vertices()
        .iter()
        .map(|v| Vertex {
            id: vmap[&v.id],
            kind: v.kind,
        })
        .collect();
    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| Edge {
            id: emap[&e.id],
            kind: e.kind,
            src: vmap[&e.src],
            dst: vmap[&e.dst],
        })
        .collect();
    vertices.shuffle(rng);
    edges.shuffle(rng);
    let order = g
        .label()
        .order
        .iter()
        .map(|x| match *x {
            Generator::Vertex(v) => Generator::Vertex(vmap[&v]),
            Generator::Edge(e) => Generator::Edge(emap[&e]),
        })
        .collect();
    PlainGraph::new(vertices, edges, order).unwrap()
}

/// Graph on the vertices of `c` with dashed edges along the chords and the
/// given solid edges `(lower, higher)` per line, without any structure check.
pub fn graph_on(c: &ChordDiagram, solid: &[Vec<(usize, usize)>]) -> PlainGraph {
    let k = c.k();
    let vs = (0..2 * k)
        .map(|i| Vertex {
            id: VertexId(i as u32),
            kind: VertexKind::ExtBlack,
        })
        .collect();
    let id = |p: Point| VertexId(c.vertex_index(p).unwrap() as u32);
    let mut es: Vec<Edge> = c
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
    for (l, s) in solid.iter().enumerate() {
        for &(a, b) in s {
            es.push(Edge {
                id: EdgeId(es.len() as u32),
                kind: EdgeKind::Solid,
                src: id(Point::new(l, a)),
                dst: id(Point::new(l, b)),
            });
        }
    }
    PlainGraph::with_construction_order(vs, es).unwrap()
}

/// All permutations of `0..n`, by Heap's algorithm.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            go(k - 1, a, out);
            if k % 2 == 0 {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut (0..n).collect(), &mut out);
    out
}

/// Brute-force `|Aut|`: vertex permutations preserving kinds, each extended by
/// every kind-preserving bijection of edges compatible with the endpoints.
pub fn brute_force_aut(g: &PlainGraph) -> u64 {
    let vs = g.vertices();
    let idx = |v: VertexId| vs.iter().position(|x| x.id == v).unwrap();
    let key = |a: usize, b: usize, k: EdgeKind| (a.min(b), a.max(b), k);
    let mut multiset = BTreeMap::new();
    for e in g.edges() {
        *multiset.entry(key(idx(e.src), idx(e.dst), e.kind)).or_insert(0u64) += 1;
    }
    let mut total = 0;
    for p in permutations(vs.len()) {
        if (0..vs.len()).any(|i| vs[i].kind != vs[p[i]].kind) {
            continue;
        }
        let mut image = BTreeMap::new();
        for (&(a, b, k), &m) in &multiset {
            *image.entry(key(p[a], p[b], k)).or_insert(0u64) += m;
        }
        if image == multiset {
            total += multiset.values().map(|&m| (1..=m).product::<u64>()).product::<u64>();
        }
    }
    total
}
