//! Chord diagrams on oriented lines.
//!
//! Line `i` carries the vertices `(i, 0), …, (i, tᵢ)`; level 0 sits on the
//! x-axis. Chords are ordered and oriented; the source of chord `i`
//! (0-based) is the vertex `2i` of `V(C)` and its target is `2i + 1`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hairy::{HairyLayout, HairySpec, SlotKind};

/// A vertex `(line, level)` of a diagram, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub line: usize,
    pub level: usize,
}

impl Point {
    pub fn new(line: usize, level: usize) -> Self {
        Point { line, level }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Chord {
    pub src: Point,
    pub dst: Point,
    pub sign: i8,
}

impl Chord {
    pub fn new(src: Point, dst: Point) -> Self {
        Chord { src, dst, sign: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChordDiagram {
    pub lines: Vec<usize>,
    pub chords: Vec<Chord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanetarySystem {
    pub star: bool,
    pub orbits: usize,
}

impl ChordDiagram {
    pub fn k(&self) -> usize {
        self.chords.len()
    }

    pub fn s(&self) -> usize {
        self.lines.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.lines.iter().map(|t| t + 1).sum()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.lines
            .iter()
            .enumerate()
            .flat_map(|(i, &t)| (0..=t).map(move |l| Point::new(i, l)))
    }

    /// Every violated invariant; empty when the diagram is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let k = self.k();
        if self.vertex_count() != 2 * k {
            out.push(format!(
                "vertex count {} differs from twice the chord count {}",
                self.vertex_count(),
                2 * k
            ));
        }
        let inside = |p: &Point| p.line < self.lines.len() && p.level <= self.lines[p.line];
        let mut used = std::collections::BTreeMap::new();
        for (i, c) in self.chords.iter().enumerate() {
            for p in [c.src, c.dst] {
                if !inside(&p) {
                    out.push(format!("chord {} ends at ({}, {}), which is not a vertex", i + 1, p.line + 1, p.level));
                }
                *used.entry(p).or_insert(0) += 1;
            }
            if c.src.level == 0 && c.dst.level == 0 {
                out.push(format!("chord {} joins two points on the axis", i + 1));
            }
            if c.dst.level == 0 {
                out.push(format!("chord {} ends on the axis", i + 1));
            }
            if c.src == c.dst {
                out.push(format!("chord {} is a loop", i + 1));
            }
            if c.sign != 1 && c.sign != -1 {
                out.push(format!("chord {} has sign {}", i + 1, c.sign));
            }
        }
        for p in self.points() {
            match used.get(&p).copied().unwrap_or(0) {
                1 => {}
                0 => out.push(format!("vertex ({}, {}) has no chord", p.line + 1, p.level)),
                n => out.push(format!("vertex ({}, {}) has {n} chords", p.line + 1, p.level)),
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidDiagram(v.join("; ")))
        }
    }

    /// Position of `p` in the canonical order of `V(C)`.
    pub fn vertex_index(&self, p: Point) -> Option<usize> {
        self.chords.iter().enumerate().find_map(|(i, c)| {
            if c.src == p {
                Some(2 * i)
            } else if c.dst == p {
                Some(2 * i + 1)
            } else {
                None
            }
        })
    }

    pub fn vertex_at(&self, idx: usize) -> Point {
        let c = &self.chords[idx / 2];
        if idx % 2 == 0 {
            c.src
        } else {
            c.dst
        }
    }

    /// `r(C)`.
    pub fn negative_count(&self) -> usize {
        self.chords.iter().filter(|c| c.sign < 0).count()
    }

    pub fn with_flipped_sign(&self, chord: usize) -> ChordDiagram {
        let mut d = self.clone();
        d.chords[chord].sign = -d.chords[chord].sign;
        d
    }

    pub fn planetary_summary(&self) -> Vec<PlanetarySystem> {
        self.lines
            .iter()
            .enumerate()
            .map(|(i, &t)| PlanetarySystem {
                star: self.chords.iter().any(|c| c.src == Point::new(i, 0)),
                orbits: t,
            })
            .collect()
    }

    /// Are chords listed in the order of their sources (line first, then
    /// level)?
    pub fn chord_order_consistent(&self) -> bool {
        self.chords.windows(2).all(|w| w[0].src < w[1].src)
    }

    /// Same diagram up to a permutation of lines; chord order is ignored.
    pub fn is_isomorphic(&self, other: &ChordDiagram) -> bool {
        if self.k() != other.k() || self.s() != other.s() {
            return false;
        }
        let mut a = self.lines.clone();
        let mut b = other.lines.clone();
        a.sort();
        b.sort();
        if a != b {
            return false;
        }
        let target: BTreeSet<(Point, Point, i8)> = other.chords.iter().map(|c| (c.src, c.dst, c.sign)).collect();
        let mut perm = vec![usize::MAX; self.s()];
        let mut taken = vec![false; self.s()];
        self.extend_line_map(other, 0, &mut perm, &mut taken, &target)
    }

    fn extend_line_map(
        &self,
        other: &ChordDiagram,
        i: usize,
        perm: &mut Vec<usize>,
        taken: &mut Vec<bool>,
        target: &BTreeSet<(Point, Point, i8)>,
    ) -> bool {
        if i == self.s() {
            let map = |p: Point| Point::new(perm[p.line], p.level);
            return self.chords.iter().all(|c| target.contains(&(map(c.src), map(c.dst), c.sign)));
        }
        for j in 0..other.s() {
            if taken[j] || other.lines[j] != self.lines[i] {
                continue;
            }
            // chords among already mapped lines must already match
            perm[i] = j;
            let ok = self.chords.iter().all(|c| {
                if c.src.line > i || c.dst.line > i {
                    return true;
                }
                let (s, d) = (
                    Point::new(perm[c.src.line], c.src.level),
                    Point::new(perm[c.dst.line], c.dst.level),
                );
                target.contains(&(s, d, c.sign))
            });
            if ok {
                taken[j] = true;
                if self.extend_line_map(other, i + 1, perm, taken, target) {
                    return true;
                }
                taken[j] = false;
            }
        }
        perm[i] = usize::MAX;
        false
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            lines: self.lines.clone(),
            chords: self
                .chords
                .iter()
                .map(|c| ChordJson {
                    src: [c.src.line + 1, c.src.level],
                    dst: [c.dst.line + 1, c.dst.level],
                    sign: c.sign,
                })
                .collect(),
        }
    }

    pub fn from_json(json: &DiagramJson) -> Result<Self> {
        let point = |p: [usize; 2]| {
            if p[0] == 0 {
                Err(Error::Parse("lines are numbered from 1".into()))
            } else {
                Ok(Point::new(p[0] - 1, p[1]))
            }
        };
        let chords = json
            .chords
            .iter()
            .map(|c| {
                Ok(Chord {
                    src: point(c.src)?,
                    dst: point(c.dst)?,
                    sign: c.sign,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChordDiagram {
            lines: json.lines.clone(),
            chords,
        })
    }

    /// TikZ picture: lines drawn upwards from the axis, left to right, chords
    /// as dashed arrows labelled by their index and sign.
    pub fn to_tikz(&self) -> String {
        let mut out = String::from("\\begin{tikzpicture}[x=1cm,y=1cm]\n");
        let s = self.s().max(1) as f64;
        let _ = writeln!(out, "  \\draw[->] (-0.5,0) -- ({},0);", 2.0 * s - 0.5);
        for (i, &t) in self.lines.iter().enumerate() {
            let x = 2 * i;
            let _ = writeln!(out, "  \\draw[->, thick] ({x},0) -- ({x},{});", t as f64 + 0.6);
            for l in 0..=t {
                let _ = writeln!(out, "  \\fill ({x},{l}) circle (2pt);");
            }
        }
        for (i, c) in self.chords.iter().enumerate() {
            let sign = if c.sign > 0 { "+" } else { "-" };
            let _ = writeln!(
                out,
                "  \\draw[->, dashed] ({},{}) to[bend left=20] node[midway, fill=white, inner sep=1pt] {{\\tiny {}{}}} ({},{});",
                2 * c.src.line,
                c.src.level,
                i + 1,
                sign,
                2 * c.dst.line,
                c.dst.level
            );
        }
        out += "\\end{tikzpicture}\n";
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph diagram {\n  rankdir=BT;\n  node [shape=point];\n");
        for (i, &t) in self.lines.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_{} {{ label=\"line {}\";", i + 1, i + 1);
            for l in 0..=t {
                let _ = writeln!(out, "    p{}_{};", i + 1, l);
            }
            for l in 0..t {
                let _ = writeln!(out, "    p{}_{} -> p{}_{} [penwidth=2];", i + 1, l, i + 1, l + 1);
            }
            out += "  }\n";
        }
        for (i, c) in self.chords.iter().enumerate() {
            let _ = writeln!(
                out,
                "  p{}_{} -> p{}_{} [style=dashed, constraint=false, label=\"{}{}\"];",
                c.src.line + 1,
                c.src.level,
                c.dst.line + 1,
                c.dst.level,
                i + 1,
                if c.sign > 0 { "+" } else { "-" }
            );
        }
        out += "}\n";
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordJson {
    pub src: [usize; 2],
    pub dst: [usize; 2],
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub lines: Vec<usize>,
    pub chords: Vec<ChordJson>,
}

/// Diagram of a hairy graph: one line per merged hair, one positive chord per
/// non-internal segment, running from the segment's head to its tail.
pub fn diagram_from_layout(layout: &HairyLayout) -> ChordDiagram {
    let lines = layout.groups.iter().map(|g| g.t()).collect();
    let chords = layout
        .chord_segments()
        .into_iter()
        .map(|s| {
            let (a, b) = layout.slot_of(s, SlotKind::Out);
            let (c, d) = layout.slot_of(s, SlotKind::In);
            Chord::new(Point::new(a, b), Point::new(c, d))
        })
        .collect();
    ChordDiagram { lines, chords }
}

pub fn diagram_theta(p: i64, q: i64, r: i64) -> Result<ChordDiagram> {
    Ok(diagram_from_layout(&HairyLayout::new(HairySpec::Theta { p, q, r })?))
}

pub fn diagram_y(hairs: [i64; 6]) -> Result<ChordDiagram> {
    Ok(diagram_from_layout(&HairyLayout::new(HairySpec::Y { hairs })?))
}

/// The two-line, three-chord diagram `C₁` with `t₁ = t₂ = 2`.
pub fn c1() -> ChordDiagram {
    ChordDiagram {
        lines: vec![2, 2],
        chords: vec![
            Chord::new(Point::new(0, 0), Point::new(1, 2)),
            Chord::new(Point::new(1, 0), Point::new(0, 1)),
            Chord::new(Point::new(1, 1), Point::new(0, 2)),
        ],
    }
}
