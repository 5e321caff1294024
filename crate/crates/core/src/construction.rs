//! The duplication construction `H(ℓ_1, ..., ℓ_t)`.
//!
//! An edge `F = {x_1, ..., x_a}` of weight `ℓ` becomes the hypergraph `F(ℓ)`
//! on the shadows `x_j#1, ..., x_j#ℓ` whose edges are the transversals
//! `{x_1#f_1, ..., x_a#f_a}` with `f_1 + ... + f_a <= ℓ + a - 1`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::Attachment;
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::ideals::{cover_ideal, Monomial, MonomialIdeal};
use crate::vertex::{Face, Vertex};

/// A hypergraph whose edges carry weights, in a fixed serialized order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedHypergraph {
    vertices: Vec<Vertex>,
    edges: Vec<Face>,
    weights: Vec<u32>,
}

impl WeightedHypergraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Face>, weights: Vec<u32>) -> Result<Self> {
        if edges.len() != weights.len() {
            return Err(invalid(format!("{} weights for {} edges", weights.len(), edges.len())));
        }
        // Validates simplicity and the vertex universe.
        Hypergraph::new(vertices.clone(), edges.clone())?;
        if let Some(x) = vertices.iter().find(|x| x.is_shadow()) {
            return Err(invalid(format!("base vertex {x} is already a shadow")));
        }
        let mut vertices = vertices;
        vertices.sort();
        Ok(WeightedHypergraph { vertices, edges, weights })
    }

    /// Every edge of `h` (in its canonical order) with weight `l`.
    pub fn uniform(h: &Hypergraph, l: u32) -> Self {
        WeightedHypergraph {
            vertices: h.vertices().to_vec(),
            edges: h.edges().to_vec(),
            weights: vec![l; h.edges().len()],
        }
    }

    /// Weights indexed against the facet order of an attachment record.
    pub fn from_attachment(att: &Attachment, weights: Vec<u32>) -> Result<Self> {
        Self::new(att.complex.universe().to_vec(), att.facet_order.clone(), weights)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Face] {
        &self.edges
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn base(&self) -> Hypergraph {
        Hypergraph::new(self.vertices.clone(), self.edges.clone()).expect("validated on construction")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedHypergraphDoc {
    #[serde(rename = "type")]
    pub kind: String,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Face>,
    pub weights: Vec<u32>,
}

impl Serialize for WeightedHypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeightedHypergraphDoc {
            kind: "weighted_hypergraph".into(),
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            weights: self.weights.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedHypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = WeightedHypergraphDoc::deserialize(d)?;
        if doc.kind != "weighted_hypergraph" {
            return Err(serde::de::Error::custom(format!(
                "expected type \"weighted_hypergraph\", found {:?}",
                doc.kind
            )));
        }
        WeightedHypergraph::new(doc.vertices, doc.edges, doc.weights).map_err(serde::de::Error::custom)
    }
}

/// All `f ∈ [max]^a` with `|f| <= bound`, in lexicographic order. `lower[q]`
/// is a strict lower bound for `f_q`.
pub fn bounded_tuples(a: usize, max: u32, lower: &[u32], bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(a);
    fn rec(a: usize, max: u32, lower: &[u32], bound: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let q = cur.len();
        let used: u32 = cur.iter().sum();
        if q == a {
            out.push(cur.clone());
            return;
        }
        // Each later coordinate needs at least its own minimum.
        let rest_min: u32 = (q + 1..a).map(|p| lower.get(p).copied().unwrap_or(0) + 1).sum();
        let lo = lower.get(q).copied().unwrap_or(0) + 1;
        let mut f = lo;
        while f <= max && used + f + rest_min <= bound {
            cur.push(f);
            rec(a, max, lower, bound, cur, out);
            cur.pop();
            f += 1;
        }
    }
    rec(a, max, lower, bound, &mut cur, &mut out);
    out
}

fn shadow_face(edge: &Face, f: &[u32]) -> Face {
    Face::new(edge.iter().zip(f).map(|(x, &c)| x.with_shadow(c)).collect())
}

/// `F(ℓ)`. For `ℓ = 0` only the first shadows are present and there are no
/// edges.
pub fn expand_edge(edge: &Face, l: u32) -> Result<Hypergraph> {
    if let Some(x) = edge.iter().find(|x| x.is_shadow()) {
        return Err(invalid(format!("cannot expand shadow vertex {x}")));
    }
    let a = edge.len();
    if l == 0 {
        return Hypergraph::new(edge.iter().map(|x| x.with_shadow(1)).collect(), vec![]);
    }
    let vertices = edge.iter().flat_map(|x| (1..=l).map(move |c| x.with_shadow(c))).collect();
    let bound = l + a as u32 - 1;
    let edges = bounded_tuples(a, l, &[], bound).iter().map(|f| shadow_face(edge, f)).collect();
    Hypergraph::new(vertices, edges)
}

/// `H(ℓ_1, ..., ℓ_t)`: the union of the expanded edges. Base vertices in no
/// edge do not appear.
pub fn expand_hypergraph(wh: &WeightedHypergraph) -> Result<Hypergraph> {
    let mut vertices = BTreeSet::new();
    let mut edges = Vec::new();
    for (e, &l) in wh.edges.iter().zip(&wh.weights) {
        let part = expand_edge(e, l)?;
        vertices.extend(part.vertices().iter().cloned());
        edges.extend(part.edges().iter().cloned());
    }
    Hypergraph::new(vertices.into_iter().collect(), edges)
        .map_err(|e| Error::Internal(format!("expanded edge set is not simple: {e}")))
}

/// The weight condition: each attachment's distinguished full simplex carries a
/// weight at least that of every facet through the attachment vertex. An
/// attachment without a distinguished simplex cannot satisfy it.
pub fn check_star_condition(att: &Attachment, weights: &[u32]) -> Result<bool> {
    if weights.len() != att.facet_order.len() {
        return Err(invalid(format!(
            "{} weights given for {} facets of the assembled complex",
            weights.len(),
            att.facet_order.len()
        )));
    }
    for (x, d) in att.cover.iter().zip(&att.distinguished) {
        let Some(d) = *d else { return Ok(false) };
        if att.incidence(x).iter().any(|&k| weights[k] > weights[d]) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolarizationReport {
    pub ell: u32,
    pub equal: bool,
    /// Polarized symbolic power of the cover ideal.
    pub lhs: MonomialIdeal,
    /// Cover ideal of the uniform expansion.
    pub rhs: MonomialIdeal,
    pub only_in_lhs: Vec<Monomial>,
    pub only_in_rhs: Vec<Monomial>,
}

/// Compares `polarize(J(H)^(ℓ))` with `J(H(ℓ))` generator by generator.
pub fn verify_polarization_identity(h: &Hypergraph, l: u32) -> Result<PolarizationReport> {
    if l == 0 {
        return Err(invalid("the identity needs ℓ >= 1"));
    }
    let lhs = cover_ideal(h)?.symbolic_power(l)?.polarize()?;
    let rhs = cover_ideal(&expand_hypergraph(&WeightedHypergraph::uniform(h, l))?)?;
    let a: BTreeSet<&Monomial> = lhs.generators().iter().collect();
    let b: BTreeSet<&Monomial> = rhs.generators().iter().collect();
    let only_in_lhs: Vec<Monomial> = a.difference(&b).map(|m| (*m).clone()).collect();
    let only_in_rhs: Vec<Monomial> = b.difference(&a).map(|m| (*m).clone()).collect();
    Ok(PolarizationReport {
        ell: l,
        equal: only_in_lhs.is_empty() && only_in_rhs.is_empty(),
        lhs,
        rhs,
        only_in_lhs,
        only_in_rhs,
    })
}
