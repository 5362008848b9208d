//! Checks of the pairing theorems for Θ(p,q,r) and Y(p₁,…,p₆).
//!
//! The hairy graph's STU resolutions are assembled into a formal sum, paired
//! with the hairy graph's diagram through the counting formula, and the result
//! is compared with the sum of the resolution weights.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::diagram::{diagram_from_layout, ChordDiagram, DiagramJson};
use crate::error::{Error, Result};
use crate::formal_sum::FormalSum;
use crate::graph::{label_sign, support_check, VertexKind};
use crate::hairy::{HairyLayout, HairySpec, YCondition};
use crate::iso::{automorphism_count, canonical_form, has_orientation_reversing_automorphism, iso, CanonicalForm};
use crate::pairing::{contributions, weight_sum};
use crate::parity::ParityTable;
use crate::resolutions::{stu_resolutions, Resolution};
use crate::Rational;

/// `{"num": …, "den": …}` in lowest terms; integers that do not fit in `i64`
/// are written as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalJson {
    pub num: serde_json::Value,
    pub den: serde_json::Value,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        let int = |x: &num_bigint::BigInt| match i64::try_from(x) {
            Ok(v) => serde_json::Value::from(v),
            Err(_) => serde_json::Value::from(x.to_string()),
        };
        RationalJson {
            num: int(r.numer()),
            den: int(r.denom()),
        }
    }
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("rational {s:?}"));
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl Assertion {
    fn new(id: &str, passed: bool, detail: impl Into<String>) -> Self {
        Assertion {
            id: id.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureEntry {
    /// Index of the isomorphism class among the resolutions (first occurrence).
    pub iso_class: Option<usize>,
    pub sign: Option<i8>,
    pub aut: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: HairySpec,
    pub good_only: bool,
    pub diagram: DiagramJson,
    /// `|G(C)|` (or `|G′(C)|` when `good_only`).
    pub structures: usize,
    pub resolutions: usize,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    /// Global sign with `value = epsilon · Σ w_eff`.
    pub epsilon: Option<i8>,
    pub sign_uniform: bool,
    /// `s(Dᵢ, D̄ᵢ)` for every resolution.
    pub resolution_signs: Vec<i8>,
    #[serde(serialize_with = "ser_rationals")]
    pub weights: Vec<Rational>,
    /// Weights actually carried by the formal sum: isomorphic resolutions
    /// share their class's coefficient, and resolutions with an
    /// orientation-reversing automorphism carry zero.
    #[serde(serialize_with = "ser_rationals")]
    pub effective_weights: Vec<Rational>,
    pub adjusted: Vec<usize>,
    pub per_structure: Vec<StructureEntry>,
    pub assertions: Vec<Assertion>,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    RationalJson::from(r).serialize(s)
}

fn ser_rationals<S: serde::Serializer>(r: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    r.iter().map(RationalJson::from).collect::<Vec<_>>().serialize(s)
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

/// Isomorphism class of each resolution (index of its first occurrence) and
/// the sign relating its aligned label to the class representative's.
pub fn resolution_classes(rs: &[Resolution], pt: &ParityTable) -> Vec<(usize, i8)> {
    let forms: Vec<CanonicalForm> = rs.iter().map(|r| canonical_form(&r.graph)).collect();
    let mut out = Vec::with_capacity(rs.len());
    for (i, r) in rs.iter().enumerate() {
        let first = forms.iter().position(|f| *f == forms[i]).unwrap();
        let sign = if first == i {
            1
        } else {
            let phi = iso(&rs[first].graph, &r.graph).expect("equal canonical forms");
            label_sign(&r.graph, &phi.push_label(&rs[first].graph.label()), &r.graph.label(), pt).unwrap()
        };
        out.push((first, sign));
    }
    out
}

/// Weights compatible with one coefficient per isomorphism class.
pub fn effective_weights(rs: &[Resolution], weights: &[Rational], pt: &ParityTable) -> Vec<Rational> {
    let classes = resolution_classes(rs, pt);
    let reversing: Vec<bool> = rs.iter().map(|r| has_orientation_reversing_automorphism(&r.graph, pt)).collect();
    classes
        .iter()
        .enumerate()
        .map(|(i, &(first, sign))| {
            if reversing[i] {
                Rational::zero()
            } else {
                weights[first].clone() * Rational::from_integer(sign.into())
            }
        })
        .collect()
}

/// Resolutions that enter the check: all of them, or only the good ones.
pub fn counted_resolutions(spec: HairySpec, good_only: bool) -> Result<Vec<Resolution>> {
    let mut rs = stu_resolutions(spec)?;
    if good_only {
        rs.retain(|r| r.graph.is_good());
    }
    Ok(rs)
}

pub fn verify(spec: HairySpec, weights: &[Rational], pt: &ParityTable, good_only: bool) -> Result<VerificationReport> {
    let layout = HairyLayout::new(spec)?;
    let c: ChordDiagram = diagram_from_layout(&layout);
    let rs = counted_resolutions(spec, good_only)?;
    if weights.len() != rs.len() {
        return Err(Error::WeightCount {
            expected: rs.len(),
            found: weights.len(),
        });
    }
    let k = c.k() as i64;
    let classes = resolution_classes(&rs, pt);
    let eff = effective_weights(&rs, weights, pt);
    let adjusted: Vec<usize> = (0..rs.len()).filter(|&i| eff[i] != weights[i]).collect();

    let mut h = FormalSum::new(*pt);
    for (i, r) in rs.iter().enumerate() {
        if classes[i].0 == i && !has_orientation_reversing_automorphism(&r.graph, pt) {
            h.add(r.graph.clone(), weights[i].clone())?;
        }
    }

    let mut resolution_signs = Vec::with_capacity(rs.len());
    for r in &rs {
        let (real, phi) = r.realized(&layout)?;
        resolution_signs.push(label_sign(&real, &phi.push_label(&r.graph.label()), &real.label(), pt)?);
    }
    let sign_uniform = resolution_signs.windows(2).all(|w| w[0] == w[1]);

    let contrib = contributions(&h, &c, pt, good_only)?;
    let mut value = Rational::zero();
    for x in &contrib {
        if let Some(s) = x.sign {
            value += x.weight.clone() * Rational::from_integer(s.into());
        }
    }
    let flips = c.negative_count() % 2 == 1;
    if flips {
        value = -value;
    }

    let total = weight_sum(&eff);
    let epsilon = if sign_uniform && !rs.is_empty() {
        let e = resolution_signs[0] * if flips { -1 } else { 1 };
        Some(e)
    } else {
        None
    };
    let mut assertions = Vec::new();
    let formula_ok = match epsilon {
        Some(e) => value == total.clone() * Rational::from_integer(e.into()),
        None => false,
    };
    assertions.push(Assertion::new(
        "counting_formula",
        formula_ok,
        format!("value = {value}, sum of effective weights = {total}, epsilon = {epsilon:?}"),
    ));
    if adjusted.is_empty() {
        assertions.push(Assertion::new("weights_consistent", true, "given weights are one coefficient per class"));
    } else {
        assertions.push(Assertion::new(
            "weights_consistent",
            true,
            format!("weights at {adjusted:?} were replaced by their class coefficient"),
        ));
    }
    // a resolution with an orientation-reversing automorphism vanishes from H
    let reversing: Vec<usize> = (0..rs.len())
        .filter(|&i| has_orientation_reversing_automorphism(&rs[i].graph, pt))
        .collect();
    assertions.push(Assertion::new(
        "no_orientation_reversing",
        reversing.is_empty(),
        if reversing.is_empty() {
            "no resolution has an orientation-reversing automorphism".to_string()
        } else {
            format!("resolutions {reversing:?} have orientation-reversing automorphisms and carry weight 0")
        },
    ));
    assertions.push(Assertion::new(
        "sign_uniformity",
        sign_uniform,
        format!("s(D_i, D̄_i) = {resolution_signs:?}"),
    ));

    // every counted structure is a resolution and conversely
    let res_forms: Vec<CanonicalForm> = rs.iter().map(|r| canonical_form(&r.graph)).collect();
    let mut per_structure = Vec::with_capacity(contrib.len());
    let mut covered = vec![false; rs.len()];
    let mut all_found = true;
    for x in &contrib {
        let f = canonical_form(&x.realized);
        let class = res_forms.iter().position(|g| *g == f);
        match class {
            Some(i) => {
                for (j, g) in res_forms.iter().enumerate() {
                    if *g == f {
                        covered[j] = true;
                    }
                }
                per_structure.push(StructureEntry {
                    iso_class: Some(classes[i].0),
                    sign: x.sign,
                    aut: automorphism_count(&x.realized),
                });
            }
            None => {
                all_found = false;
                per_structure.push(StructureEntry {
                    iso_class: None,
                    sign: x.sign,
                    aut: automorphism_count(&x.realized),
                });
            }
        }
    }
    let complete = all_found && covered.iter().all(|&c| c);
    assertions.push(Assertion::new(
        "completeness",
        complete,
        format!("{} structures, {} resolutions", contrib.len(), rs.len()),
    ));

    let no_internal = contrib.iter().all(|x| {
        x.realized.count_vertices(VertexKind::IntBlack) == 0 && x.realized.count_vertices(VertexKind::White) == 0
    });
    assertions.push(Assertion::new(
        "no_internal_vertices",
        no_internal,
        "counted structures have only external black vertices",
    ));

    let support = rs.iter().all(|r| support_check(&r.graph, k).unwrap_or(false) && r.graph.order() == k);
    assertions.push(Assertion::new(
        "support",
        support,
        format!("every resolution has {k} dashed edges and {} external vertices", 2 * k),
    ));

    let expected = match spec {
        HairySpec::Theta { .. } => Some(4),
        HairySpec::Y { hairs } if !good_only => match YCondition::of(&hairs)? {
            YCondition::One => Some(16),
            YCondition::Two => Some(24),
            YCondition::Three => None,
        },
        HairySpec::Y { .. } => None,
    };
    if let Some(n) = expected {
        assertions.push(Assertion::new(
            "resolution_count",
            rs.len() == n && contrib.len() == n,
            format!("{} resolutions, {} structures, expected {n}", rs.len(), contrib.len()),
        ));
    }

    Ok(VerificationReport {
        subject: spec,
        good_only,
        diagram: c.to_json(),
        structures: contrib.len(),
        resolutions: rs.len(),
        value,
        epsilon,
        sign_uniform,
        resolution_signs,
        weights: weights.to_vec(),
        effective_weights: eff,
        adjusted,
        per_structure,
        assertions,
    })
}

pub fn verify_theta(p: i64, q: i64, r: i64, weights: &[Rational], pt: &ParityTable) -> Result<VerificationReport> {
    verify(HairySpec::Theta { p, q, r }, weights, pt, false)
}

pub fn verify_y(hairs: [i64; 6], weights: &[Rational], pt: &ParityTable, good_only: bool) -> Result<VerificationReport> {
    verify(HairySpec::Y { hairs }, weights, pt, good_only)
}

/// `|value|`, for quick checks.
pub fn magnitude(r: &VerificationReport) -> Rational {
    r.value.abs()
}
