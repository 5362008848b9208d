//! Graph–chord pairing and the counting formula.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::diagram::{ChordDiagram, Point};
use crate::error::{Error, Result};
use crate::formal_sum::FormalSum;
use crate::graph::{label_sign, EdgeKind, PlainGraph, UnionFind, VertexId, VertexKind};
use crate::parity::ParityTable;
use crate::structures::{enumerate_structures, induced_label, realize, GraphOnDiagram};
use crate::Rational;

/// A bijection `σ: B(Γ) → V(C)` satisfying conditions I–IV, with its sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub sigma: BTreeMap<VertexId, Point>,
    pub sign: i8,
}

struct MatchSearch<'a> {
    g: &'a PlainGraph,
    c: &'a ChordDiagram,
    dashed: Vec<(VertexId, VertexId)>,
    /// solid component of each vertex and its size
    comp: HashMap<VertexId, (usize, usize)>,
    solid_nb: HashMap<VertexId, Vec<VertexId>>,
    sigma: BTreeMap<VertexId, Point>,
    line_of_comp: HashMap<usize, usize>,
    comp_of_line: HashMap<usize, usize>,
    used: Vec<bool>,
    found: Vec<BTreeMap<VertexId, Point>>,
}

impl MatchSearch<'_> {
    /// Places `v` at `p` if condition III and the component/line sizes allow.
    fn place(&mut self, v: VertexId, p: Point) -> Option<Option<usize>> {
        let (comp, size) = self.comp[&v];
        if size != self.c.lines[p.line] + 1 {
            return None;
        }
        let new_link = match (self.line_of_comp.get(&comp), self.comp_of_line.get(&p.line)) {
            (Some(&l), _) if l != p.line => return None,
            (_, Some(&cc)) if cc != comp => return None,
            (Some(_), _) => None,
            (None, _) => Some(comp),
        };
        if let Some(cc) = new_link {
            self.line_of_comp.insert(cc, p.line);
            self.comp_of_line.insert(p.line, cc);
        }
        self.sigma.insert(v, p);
        Some(new_link)
    }

    fn unplace(&mut self, v: VertexId, link: Option<usize>) {
        self.sigma.remove(&v);
        if let Some(cc) = link {
            let l = self.line_of_comp.remove(&cc).unwrap();
            self.comp_of_line.remove(&l);
        }
    }

    fn condition_iv(&self) -> bool {
        self.sigma.iter().all(|(v, p)| {
            p.level == 0
                || self.solid_nb[v].iter().any(|w| {
                    let q = self.sigma[w];
                    q.line == p.line && q.level < p.level
                })
        })
    }

    fn run(&mut self, chord: usize) {
        if chord == self.c.k() {
            if self.condition_iv() {
                self.found.push(self.sigma.clone());
            }
            return;
        }
        let ch = self.c.chords[chord];
        for e in 0..self.dashed.len() {
            if self.used[e] {
                continue;
            }
            let (a, b) = self.dashed[e];
            for (x, y) in [(a, b), (b, a)] {
                if a == b && x == b {
                    break;
                }
                let Some(lx) = self.place(x, ch.src) else { continue };
                if let Some(ly) = self.place(y, ch.dst) {
                    self.used[e] = true;
                    self.run(chord + 1);
                    self.used[e] = false;
                    self.unplace(y, ly);
                }
                self.unplace(x, lx);
            }
        }
    }
}

/// Every `σ` satisfying conditions I–IV, with signs. Empty unless `g` consists
/// of exactly `2k` external black vertices whose dashed edges form a perfect
/// matching, and has exactly `Σ tᵢ` solid edges (the count forced on
/// top-degree graphs; with more solid edges the induced label is undefined).
pub fn matchings(g: &PlainGraph, c: &ChordDiagram, pt: &ParityTable) -> Result<Vec<Matching>> {
    c.ensure_valid()?;
    let k = c.k();
    let all_ext = g.vertices().iter().all(|v| v.kind == VertexKind::ExtBlack);
    let perfect = g.vertices().iter().all(|v| g.dashed_degree(v.id) == 1);
    let solid_total: usize = c.lines.iter().sum();
    if !all_ext || g.vertices().len() != 2 * k || !perfect || g.count_edges(EdgeKind::Solid) != solid_total {
        return Ok(vec![]);
    }
    let dashed = g
        .edges()
        .iter()
        .filter(|e| e.kind == EdgeKind::Dashed)
        .map(|e| (e.src, e.dst))
        .collect::<Vec<_>>();
    let mut uf = UnionFind::new(g.vertices().len());
    let mut solid_nb: HashMap<VertexId, Vec<VertexId>> = g.vertices().iter().map(|v| (v.id, vec![])).collect();
    for e in g.edges().iter().filter(|e| e.kind == EdgeKind::Solid) {
        uf.union(g.vertex_index(e.src), g.vertex_index(e.dst));
        solid_nb.get_mut(&e.src).unwrap().push(e.dst);
        solid_nb.get_mut(&e.dst).unwrap().push(e.src);
    }
    let roots: Vec<usize> = (0..g.vertices().len()).map(|i| uf.find(i)).collect();
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for &r in &roots {
        *sizes.entry(r).or_default() += 1;
    }
    let comp = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.id, (roots[i], sizes[&roots[i]])))
        .collect();
    let mut search = MatchSearch {
        g,
        c,
        used: vec![false; dashed.len()],
        dashed,
        comp,
        solid_nb,
        sigma: BTreeMap::new(),
        line_of_comp: HashMap::new(),
        comp_of_line: HashMap::new(),
        found: vec![],
    };
    search.run(0);
    let label = g.label();
    search
        .found
        .into_iter()
        .map(|sigma| {
            let induced = induced_label(search.g, c, &sigma)?;
            let sign = label_sign(g, &label, &induced, pt)?;
            Ok(Matching { sigma, sign })
        })
        .collect()
}

/// `⟨Γ, C⟩`: the signed count of matchings.
pub fn pairing_value(g: &PlainGraph, c: &ChordDiagram, pt: &ParityTable) -> Result<i64> {
    Ok(matchings(g, c, pt)?.iter().map(|m| m.sign as i64).sum())
}

/// Contribution of one structure of `G(C)` to the counting formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contribution {
    pub structure: GraphOnDiagram,
    pub realized: PlainGraph,
    /// `w(Γ)` of the matching term (zero when no term matches).
    pub weight: Rational,
    /// `s(Γ, Γ̄)`, when a term matches.
    pub sign: Option<i8>,
}

fn check_term(g: &PlainGraph, k: i64, good_only: bool) -> Result<()> {
    let fail = |m: &str| Err(Error::InvalidTerm(m.to_string()));
    if !g.is_admissible() {
        return fail("term is not admissible");
    }
    if g.order() > k {
        return fail("term has order above the diagram's");
    }
    if g.count_vertices(VertexKind::IntBlack) > 0 {
        return fail("term has an internal black vertex");
    }
    if good_only && !g.is_good() {
        return fail("term is not good");
    }
    Ok(())
}

/// Per-structure terms of `Σ_{Γ̄ ∈ G(C)} w(Γ) s(Γ, Γ̄)`.
pub fn contributions(h: &FormalSum, c: &ChordDiagram, pt: &ParityTable, good_only: bool) -> Result<Vec<Contribution>> {
    c.ensure_valid()?;
    for t in h.terms() {
        check_term(&t.graph, c.k() as i64, good_only)?;
    }
    enumerate_structures(c, good_only)?
        .into_iter()
        .map(|s| {
            let realized = realize(&s)?;
            let (weight, sign) = match h.find(&realized) {
                Some((phi, term)) => {
                    // phi: realized → representative
                    let transported = phi.pull_label(&term.graph.label());
                    let sign = label_sign(&realized, &transported, &realized.label(), pt)?;
                    (term.weight.clone(), Some(sign))
                }
                None => (Rational::zero(), None),
            };
            Ok(Contribution {
                structure: s,
                realized,
                weight,
                sign,
            })
        })
        .collect()
}

/// `(−1)^{r(C)} Σ_{Γ̄ ∈ G(C)} w(Γ) s(Γ, Γ̄)`, over `G′(C)` when `good_only`.
pub fn counting_formula(h: &FormalSum, c: &ChordDiagram, pt: &ParityTable, good_only: bool) -> Result<Rational> {
    let mut total = Rational::zero();
    for x in contributions(h, c, pt, good_only)? {
        if let Some(s) = x.sign {
            total += x.weight * Rational::from_integer(s.into());
        }
    }
    if c.negative_count() % 2 == 1 {
        total = -total;
    }
    Ok(total)
}

/// `Σ w` over a list of weights, for reports.
pub fn weight_sum(ws: &[Rational]) -> Rational {
    ws.iter().fold(Rational::zero(), |a, b| a + b)
}
