//! Grading parameters and the parity conventions that turn a label into an
//! orientation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeKind, VertexKind};

/// Dimensions of a long embedding `R^j -> R^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradingParams {
    n: i64,
    j: i64,
}

impl GradingParams {
    pub fn new(n: i64, j: i64) -> Result<Self> {
        if n < 4 || j < 2 || n - j < 2 {
            return Err(Error::Grading { n, j });
        }
        Ok(GradingParams { n, j })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn j(&self) -> i64 {
        self.j
    }
}

impl Default for GradingParams {
    fn default() -> Self {
        GradingParams { n: 5, j: 3 }
    }
}

/// Degree `k(n-j-2) + (j-1)(g-1)` in which the order-`k`, `g`-loop cycles live.
pub fn top_degree(k: i64, g: i64, gp: GradingParams) -> i64 {
    k * (gp.n - gp.j - 2) + (gp.j - 1) * (g - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(x: i64) -> Parity {
        if x.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

/// Parity of every generator kind of `o(Γ)` and of every edge reversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ParityTable {
    pub dashed_edge: Parity,
    pub solid_edge: Parity,
    pub white_vertex: Parity,
    pub ext_black_vertex: Parity,
    pub int_black_vertex: Parity,
    pub dashed_reversal: Parity,
    pub solid_reversal: Parity,
}

impl ParityTable {
    /// Default convention: a dashed edge carries an `(n-1)`-form, a solid
    /// edge a `(j-1)`-form, a white vertex `n` and a black vertex `j`
    /// coordinates. Reversing a dashed edge acts by the antipodal map of
    /// `S^{n-1}` (parity `n`); reversing a solid edge has the parity of the
    /// edge itself.
    ///
    /// At odd `n` and `j` this is the only table under which no STU
    /// resolution of Θ(p,q,r) or Y(p₁…p₆) has an orientation-reversing
    /// automorphism and isomorphic resolutions carry compatible aligned labels.
    pub fn standard(gp: GradingParams) -> Self {
        let (n, j) = (gp.n, gp.j);
        ParityTable {
            dashed_edge: Parity::of(n - 1),
            solid_edge: Parity::of(j - 1),
            white_vertex: Parity::of(n),
            ext_black_vertex: Parity::of(j),
            int_black_vertex: Parity::of(j),
            dashed_reversal: Parity::of(n),
            solid_reversal: Parity::of(j - 1),
        }
    }

    /// Table with reversal parity equal to generator parity and solid
    /// edges of parity `j`.
    pub fn generator_reversal(gp: GradingParams) -> Self {
        let (n, j) = (gp.n, gp.j);
        ParityTable {
            dashed_edge: Parity::of(n - 1),
            solid_edge: Parity::of(j),
            white_vertex: Parity::of(n),
            ext_black_vertex: Parity::of(j),
            int_black_vertex: Parity::of(j),
            dashed_reversal: Parity::of(n - 1),
            solid_reversal: Parity::of(j),
        }
    }

    /// All 128 tables, for convention-independence sweeps.
    pub fn all() -> Vec<ParityTable> {
        (0u32..128)
            .map(|bits| {
                let p = |i: u32| {
                    if bits >> i & 1 == 1 {
                        Parity::Odd
                    } else {
                        Parity::Even
                    }
                };
                ParityTable {
                    dashed_edge: p(0),
                    solid_edge: p(1),
                    white_vertex: p(2),
                    ext_black_vertex: p(3),
                    int_black_vertex: p(4),
                    dashed_reversal: p(5),
                    solid_reversal: p(6),
                }
            })
            .collect()
    }

    pub fn vertex(&self, kind: VertexKind) -> Parity {
        match kind {
            VertexKind::White => self.white_vertex,
            VertexKind::ExtBlack => self.ext_black_vertex,
            VertexKind::IntBlack => self.int_black_vertex,
        }
    }

    pub fn edge(&self, kind: EdgeKind) -> Parity {
        match kind {
            EdgeKind::Dashed => self.dashed_edge,
            EdgeKind::Solid => self.solid_edge,
        }
    }

    pub fn reversal(&self, kind: EdgeKind) -> Parity {
        match kind {
            EdgeKind::Dashed => self.dashed_reversal,
            EdgeKind::Solid => self.solid_reversal,
        }
    }
}

impl Default for ParityTable {
    fn default() -> Self {
        ParityTable::standard(GradingParams::default())
    }
}
