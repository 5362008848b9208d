//! Rational linear combinations of labeled plain graphs.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{label_sign, PlainGraph};
use crate::iso::{canonical_form, has_orientation_reversing_automorphism, iso, CanonicalForm, Isomorphism};
use crate::parity::ParityTable;
use crate::Rational;

/// One isomorphism class: a representative labeled graph and the coefficient
/// `w(Γ)` relative to the representative's label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub graph: PlainGraph,
    pub weight: Rational,
}

/// `H = Σ w(Γᵢ)/|Aut(Γᵢ)| Γᵢ`, stored by the weights `w(Γᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum {
    pt: ParityTable,
    terms: BTreeMap<CanonicalForm, Term>,
}

impl FormalSum {
    pub fn new(pt: ParityTable) -> Self {
        FormalSum {
            pt,
            terms: BTreeMap::new(),
        }
    }

    pub fn parity_table(&self) -> &ParityTable {
        &self.pt
    }

    /// Adds `weight · (graph, its label)`. A graph isomorphic to an existing
    /// term is transported onto the representative's label first.
    pub fn add(&mut self, graph: PlainGraph, weight: Rational) -> Result<()> {
        if has_orientation_reversing_automorphism(&graph, &self.pt) {
            return Err(Error::OrientationReversing);
        }
        let key = canonical_form(&graph);
        match self.terms.get_mut(&key) {
            Some(term) => {
                let phi = iso(&graph, &term.graph).expect("equal canonical forms");
                let s = label_sign(&term.graph, &phi.push_label(&graph.label()), &term.graph.label(), &self.pt)?;
                term.weight += weight * Rational::from_integer(s.into());
            }
            None => {
                self.terms.insert(key, Term { graph, weight });
            }
        }
        Ok(())
    }

    /// Representative isomorphic to `graph`, with an isomorphism `graph → rep`.
    pub fn find(&self, graph: &PlainGraph) -> Option<(Isomorphism, &Term)> {
        let term = self.terms.get(&canonical_form(graph))?;
        Some((iso(graph, &term.graph)?, term))
    }

    /// Coefficient of `graph` relative to its own label (zero if absent).
    pub fn coefficient_of(&self, graph: &PlainGraph) -> Rational {
        match self.find(graph) {
            Some((phi, term)) => {
                let s = label_sign(&term.graph, &phi.push_label(&graph.label()), &term.graph.label(), &self.pt)
                    .expect("transported label");
                term.weight.clone() * Rational::from_integer(s.into())
            }
            None => Rational::zero(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.values()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, EdgeId, EdgeKind, Vertex, VertexId, VertexKind};

    fn stick(order: [u32; 2]) -> PlainGraph {
        let vs = order
            .iter()
            .map(|&i| Vertex {
                id: VertexId(i),
                kind: VertexKind::ExtBlack,
            })
            .collect();
        let es = vec![Edge {
            id: EdgeId(0),
            kind: EdgeKind::Dashed,
            src: VertexId(0),
            dst: VertexId(1),
        }];
        PlainGraph::with_construction_order(vs, es).unwrap()
    }

    #[test]
    fn orientation_reversing_graph_is_rejected() {
        // the flip of a single dashed edge swaps two odd vertices and
        // reverses an odd-reversal edge: orientation preserving by default
        let mut h = FormalSum::new(ParityTable::default());
        assert!(h.add(stick([0, 1]), Rational::from_integer(1.into())).is_ok());
        let pt = ParityTable {
            ext_black_vertex: crate::parity::Parity::Even,
            ..ParityTable::default()
        };
        let mut h = FormalSum::new(pt);
        assert_eq!(h.add(stick([0, 1]), Rational::from_integer(1.into())), Err(Error::OrientationReversing));
    }

    #[test]
    fn isomorphic_terms_merge() {
        use crate::parity::Parity;
        let pt = ParityTable {
            dashed_reversal: Parity::Even,
            ext_black_vertex: Parity::Even,
            ..ParityTable::default()
        };
        let mut h = FormalSum::new(pt);
        h.add(stick([0, 1]), Rational::from_integer(2.into())).unwrap();
        h.add(stick([1, 0]), Rational::from_integer(3.into())).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.coefficient_of(&stick([0, 1])), Rational::from_integer(5.into()));
    }
}
