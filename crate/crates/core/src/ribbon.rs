//! Ribbon presentations of signed chord diagrams.
//!
//! Disks are joined by bands into a tree rooted at the base disk; every band
//! is stored child → parent. A crossing is a band passing through a disk. The
//! only moves modeled are the pull-out resolution rule and the node-copy
//! cancellation used after cross-change moves.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diagram::ChordDiagram;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Base,
    Leaf,
    Node,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Disk {
    pub id: usize,
    pub role: Role,
    /// Node this disk was copied from by a cross-change move.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub copy_of: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Band {
    pub id: usize,
    /// `[child, parent]`, the parent being closer to the base.
    pub ends: [usize; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub id: usize,
    pub band: usize,
    pub disk: usize,
    pub sign: i8,
    pub star: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonPresentation {
    pub disks: Vec<Disk>,
    pub bands: Vec<Band>,
    pub crossings: Vec<Crossing>,
    #[serde(rename = "markedQ", skip_serializing_if = "Option::is_none", default)]
    pub marked_q: Option<[usize; 2]>,
}

/// Result of running the resolution rules to their fixpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    pub reduced: RibbonPresentation,
    pub resolved: BTreeSet<usize>,
}

impl RibbonPresentation {
    pub fn base(&self) -> usize {
        self.disks.iter().find(|d| d.role == Role::Base).map(|d| d.id).unwrap_or(0)
    }

    pub fn disk(&self, id: usize) -> Option<&Disk> {
        self.disks.iter().find(|d| d.id == id)
    }

    pub fn band(&self, id: usize) -> Option<&Band> {
        self.bands.iter().find(|b| b.id == id)
    }

    pub fn nodes(&self) -> Vec<usize> {
        self.disks.iter().filter(|d| d.role == Role::Node).map(|d| d.id).collect()
    }

    pub fn starred_count(&self) -> usize {
        self.crossings.iter().filter(|c| c.star).count()
    }

    /// Band joining `disk` to its parent.
    pub fn band_of(&self, disk: usize) -> Option<usize> {
        self.bands.iter().find(|b| b.ends[0] == disk).map(|b| b.id)
    }

    pub fn parent(&self, disk: usize) -> Option<usize> {
        self.bands.iter().find(|b| b.ends[0] == disk).map(|b| b.ends[1])
    }

    pub fn children(&self, disk: usize) -> Vec<usize> {
        self.bands.iter().filter(|b| b.ends[1] == disk).map(|b| b.ends[0]).collect()
    }

    /// `disk` and everything hanging from it.
    pub fn subtree(&self, disk: usize) -> Vec<usize> {
        let mut out = vec![disk];
        let mut i = 0;
        while i < out.len() {
            out.extend(self.children(out[i]));
            i += 1;
        }
        out
    }

    pub fn is_pierced(&self, disk: usize) -> bool {
        self.crossings.iter().any(|c| c.disk == disk)
    }

    /// Structural problems: bands not forming a tree rooted at the base,
    /// roles inconsistent with incidence, crossings on unknown ids.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let bases = self.disks.iter().filter(|d| d.role == Role::Base).count();
        if bases != 1 {
            out.push(format!("{bases} base disks"));
        }
        let ids: BTreeSet<usize> = self.disks.iter().map(|d| d.id).collect();
        for b in &self.bands {
            if b.ends[0] == b.ends[1] || !ids.contains(&b.ends[0]) || !ids.contains(&b.ends[1]) {
                out.push(format!("band {} does not join two different disks", b.id));
            }
        }
        for d in &self.disks {
            let up = self.bands.iter().filter(|b| b.ends[0] == d.id).count();
            let degree = up + self.children(d.id).len();
            match d.role {
                Role::Base if up != 0 => out.push(format!("base disk {} has a parent", d.id)),
                Role::Leaf if degree != 1 => out.push(format!("leaf {} has {degree} bands", d.id)),
                Role::Node if degree < 2 || self.is_pierced(d.id) => {
                    out.push(format!("node {} must have two bands and no crossing", d.id))
                }
                Role::Leaf | Role::Node if up != 1 => out.push(format!("disk {} has {up} parents", d.id)),
                _ => {}
            }
            // every disk reaches the base
            let mut cur = d.id;
            let mut steps = 0;
            while let Some(p) = self.parent(cur) {
                cur = p;
                steps += 1;
                if steps > self.disks.len() {
                    out.push(format!("disk {} lies on a band cycle", d.id));
                    break;
                }
            }
            if steps <= self.disks.len() && cur != self.base() {
                out.push(format!("disk {} is not connected to the base", d.id));
            }
        }
        for c in &self.crossings {
            if self.band(c.band).is_none() || !ids.contains(&c.disk) {
                out.push(format!("crossing {} refers to a missing band or disk", c.id));
            }
        }
        out
    }

    /// Bands whose pull-out rule currently applies and would delete something:
    /// nothing in the subtree hanging from the band is pierced, yet some band
    /// of that subtree still crosses a disk.
    pub fn applicable_bands(&self) -> Vec<usize> {
        self.bands
            .iter()
            .filter(|b| {
                let sub = self.subtree(b.ends[0]);
                sub.iter().all(|d| !self.is_pierced(*d))
                    && self.crossings.iter().any(|c| {
                        let child = self.band(c.band).unwrap().ends[0];
                        sub.contains(&child)
                    })
            })
            .map(|b| b.id)
            .collect()
    }

    /// One application of the pull-out rule at `band`.
    pub fn pull_out(&self, band: usize) -> RibbonPresentation {
        let b = self.band(band).expect("band exists");
        let sub = self.subtree(b.ends[0]);
        let mut out = self.clone();
        out.crossings.retain(|c| {
            let child = self.band(c.band).unwrap().ends[0];
            !sub.contains(&child)
        });
        out
    }

    /// Pairs of crossings removable by the node-copy rule: an unstarred
    /// crossing of band `B` on a marked disk `q`, and an unstarred crossing of
    /// the same band on a cross-change copy of `q`'s node. Each copy is used
    /// once.
    pub fn copy_cancellations(&self) -> Vec<(usize, usize)> {
        let Some(q) = self.marked_q else { return vec![] };
        let mut used = BTreeSet::new();
        let mut out = Vec::new();
        for c in self.crossings.iter().filter(|c| !c.star && q.contains(&c.disk)) {
            let Some(node) = self.parent(c.disk) else { continue };
            let partner = self.crossings.iter().find(|d| {
                !d.star
                    && d.band == c.band
                    && !used.contains(&d.id)
                    && self.disk(d.disk).and_then(|x| x.copy_of) == Some(node)
            });
            if let Some(d) = partner {
                used.insert(d.id);
                out.push((c.id, d.id));
            }
        }
        out
    }

    fn step(&self) -> Option<RibbonPresentation> {
        if let Some(&(a, b)) = self.copy_cancellations().first() {
            let mut out = self.clone();
            out.crossings.retain(|c| c.id != a && c.id != b);
            return Some(out);
        }
        self.applicable_bands().first().map(|&b| self.pull_out(b))
    }

    fn resolved_disks(&self) -> BTreeSet<usize> {
        self.disks
            .iter()
            .filter(|d| {
                !self.is_pierced(d.id)
                    && self
                        .band_of(d.id)
                        .map(|b| self.crossings.iter().all(|c| c.band != b))
                        .unwrap_or(true)
            })
            .map(|d| d.id)
            .collect()
    }

    pub fn resolution_closure(&self) -> Closure {
        let mut cur = self.clone();
        while let Some(next) = cur.step() {
            cur = next;
        }
        let resolved = cur.resolved_disks();
        Closure {
            reduced: cur,
            resolved,
        }
    }

    /// Some disk of the marked pair ends up resolved.
    pub fn is_degenerate(&self) -> Result<bool> {
        let q = self
            .marked_q
            .ok_or_else(|| Error::Ribbon("degeneracy needs a marked node pattern".into()))?;
        let c = self.resolution_closure();
        Ok(q.iter().any(|d| c.resolved.contains(d)))
    }

    pub fn is_trivial(&self) -> bool {
        self.resolution_closure().reduced.crossings.is_empty()
    }

    /// `εⱼ = +1` keeps the `j`-th starred crossing without its star, `εⱼ = −1`
    /// deletes it.
    pub fn epsilon_variant(&self, eps: &[i8]) -> Result<RibbonPresentation> {
        let starred = self.starred_count();
        if eps.len() != starred || eps.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::EpsilonLength {
                expected: starred,
                found: eps.len(),
            });
        }
        let mut out = self.clone();
        let mut j = 0;
        out.crossings = Vec::new();
        for c in &self.crossings {
            if !c.star {
                out.crossings.push(*c);
                continue;
            }
            if eps[j] == 1 {
                out.crossings.push(Crossing { star: false, ..*c });
            }
            j += 1;
        }
        Ok(out)
    }

    /// Copies `source_node` into a new leaf hanging from it by a new band, and
    /// lets `target_band` pass through the copy with an unstarred crossing of
    /// the opposite sign to the band's crossing on that node's children.
    pub fn cross_change(&self, target_band: usize, source_node: usize) -> Result<RibbonPresentation> {
        match self.disk(source_node) {
            Some(d) if d.role == Role::Node => {}
            _ => return Err(Error::Ribbon(format!("disk {source_node} is not a node"))),
        }
        if self.band(target_band).is_none() {
            return Err(Error::Ribbon(format!("no band {target_band}")));
        }
        let children = self.children(source_node);
        let sign = self
            .crossings
            .iter()
            .find(|c| c.band == target_band && children.contains(&c.disk))
            .map(|c| -c.sign)
            .unwrap_or(1);
        let mut out = self.clone();
        let disk = self.disks.iter().map(|d| d.id).max().unwrap_or(0) + 1;
        let band = self.bands.iter().map(|b| b.id).max().map_or(0, |b| b + 1);
        let crossing = self.crossings.iter().map(|c| c.id).max().map_or(0, |c| c + 1);
        out.disks.push(Disk {
            id: disk,
            role: Role::Leaf,
            copy_of: Some(source_node),
        });
        out.bands.push(Band {
            id: band,
            ends: [disk, source_node],
        });
        out.crossings.push(Crossing {
            id: crossing,
            band: target_band,
            disk,
            sign,
            star: false,
        });
        Ok(out)
    }

    /// For each marked disk, a cross-change copying its node and pierced by
    /// the band that pierces the marked disk.
    pub fn with_marked_cross_changes(&self) -> Result<RibbonPresentation> {
        let q = self
            .marked_q
            .ok_or_else(|| Error::Ribbon("cross-change recipe needs a marked node pattern".into()))?;
        let mut out = self.clone();
        for d in q {
            let node = self.parent(d).ok_or_else(|| Error::Ribbon("marked disk has no node".into()))?;
            for c in self.crossings.iter().filter(|c| c.disk == d) {
                out = out.cross_change(c.band, node)?;
            }
        }
        Ok(out)
    }

    /// Leaves hanging directly from a node.
    pub fn node_adjacent_leaves(&self) -> Vec<usize> {
        self.nodes()
            .into_iter()
            .flat_map(|n| self.children(n))
            .filter(|d| self.disk(*d).map(|x| x.role) == Some(Role::Leaf))
            .collect()
    }
}

/// Each line becomes a chain of bands from its origin leaf to the base disk.
/// A chord source above the axis splits the chain at a new node from which
/// the source's own leaf hangs; a chord target is a segment of the band it
/// lies on. Every chord becomes a starred crossing of the target's band
/// through the source's leaf.
pub fn from_signed_diagram(c: &ChordDiagram) -> Result<RibbonPresentation> {
    c.ensure_valid()?;
    let mut p = RibbonPresentation {
        disks: vec![Disk {
            id: 0,
            role: Role::Base,
            copy_of: None,
        }],
        bands: vec![],
        crossings: vec![],
        marked_q: None,
    };
    let source_of = |line: usize, level: usize| c.chords.iter().position(|ch| ch.src.line == line && ch.src.level == level);
    let target_of = |line: usize, level: usize| c.chords.iter().position(|ch| ch.dst.line == line && ch.dst.level == level);
    let mut leaf_of_chord = vec![0usize; c.k()];
    let mut band_of_chord = vec![0usize; c.k()];
    let new_disk = |p: &mut RibbonPresentation, role: Role| {
        let id = p.disks.len();
        p.disks.push(Disk { id, role, copy_of: None });
        id
    };
    let add_band = |p: &mut RibbonPresentation, child: usize, parent: usize| {
        let id = p.bands.len();
        p.bands.push(Band {
            id,
            ends: [child, parent],
        });
        id
    };
    for (line, &t) in c.lines.iter().enumerate() {
        let origin = new_disk(&mut p, Role::Leaf);
        leaf_of_chord[source_of(line, 0).expect("valid diagram")] = origin;
        let mut current = origin;
        let mut pending: Vec<usize> = Vec::new();
        for level in 1..=t {
            if let Some(ch) = source_of(line, level) {
                let node = new_disk(&mut p, Role::Node);
                let b = add_band(&mut p, current, node);
                for x in pending.drain(..) {
                    band_of_chord[x] = b;
                }
                let leaf = new_disk(&mut p, Role::Leaf);
                add_band(&mut p, leaf, node);
                leaf_of_chord[ch] = leaf;
                current = node;
            } else if let Some(ch) = target_of(line, level) {
                pending.push(ch);
            }
        }
        let b = add_band(&mut p, current, 0);
        for x in pending.drain(..) {
            band_of_chord[x] = b;
        }
    }
    for (i, ch) in c.chords.iter().enumerate() {
        p.crossings.push(Crossing {
            id: i,
            band: band_of_chord[i],
            disk: leaf_of_chord[i],
            sign: ch.sign,
            star: true,
        });
    }
    let nodes = p.nodes();
    if nodes.len() == 1 {
        let ch = p.children(nodes[0]);
        if ch.len() == 2 {
            p.marked_q = Some([ch[0], ch[1]]);
        }
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub epsilon: Vec<i8>,
    pub degenerate: bool,
    pub trivial: bool,
}

/// Degeneracy and triviality of every ε-variant.
pub fn sweep_epsilon(p: &RibbonPresentation) -> Result<Vec<SweepRow>> {
    let k = p.starred_count();
    let mut rows = Vec::with_capacity(1 << k);
    for bits in 0..(1u64 << k) {
        let eps: Vec<i8> = (0..k).map(|j| if bits >> (k - 1 - j) & 1 == 1 { -1 } else { 1 }).collect();
        let v = p.epsilon_variant(&eps)?;
        rows.push(SweepRow {
            degenerate: v.is_degenerate()?,
            trivial: v.is_trivial(),
            epsilon: eps,
        });
    }
    Ok(rows)
}
