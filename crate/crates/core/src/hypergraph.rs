//! Simple hypergraphs with an explicit vertex universe.
//!
//! Isolated vertices are kept in the vertex list until [`Hypergraph::strip_isolated`]
//! removes them; deletion and contraction never drop vertices silently.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{self, Mask, MaskGraph};
use crate::complex::SimplicialComplex;
use crate::error::{invalid, Error, Result};
use crate::vertex::{minimalize_antichain, Face, Vertex};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    vertices: Vec<Vertex>,
    edges: Vec<Face>,
}

impl Hypergraph {
    /// Builds a simple hypergraph. Fails if an edge leaves the vertex list or
    /// if the edge set is not an antichain.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Face>) -> Result<Self> {
        let mut h = Self::normalized(vertices, edges)?;
        let n = h.edges.len();
        h.edges.dedup();
        if h.edges.len() != n {
            return Err(invalid("repeated edge"));
        }
        if minimalize_antichain(h.edges.clone()).len() != h.edges.len() {
            return Err(invalid("edge set is not an antichain (hypergraph not simple)"));
        }
        Ok(h)
    }

    /// Like [`Hypergraph::new`] but keeps only inclusion-maximal edges instead of
    /// failing. Returns the hypergraph and the dropped edges.
    pub fn new_lenient(vertices: Vec<Vertex>, edges: Vec<Face>) -> Result<(Self, Vec<Face>)> {
        let h = Self::normalized(vertices, edges)?;
        let kept = minimalize_antichain(h.edges.clone());
        let dropped: Vec<Face> = {
            let mut d: Vec<Face> = h.edges.iter().filter(|e| !kept.contains(e)).cloned().collect();
            d.dedup();
            d
        };
        Ok((Hypergraph { vertices: h.vertices, edges: kept }, dropped))
    }

    fn normalized(mut vertices: Vec<Vertex>, mut edges: Vec<Face>) -> Result<Self> {
        vertices.sort();
        let n = vertices.len();
        vertices.dedup();
        if vertices.len() != n {
            return Err(invalid("repeated vertex label"));
        }
        for e in &edges {
            if let Some(x) = e.iter().find(|x| vertices.binary_search(x).is_err()) {
                return Err(invalid(format!("edge {e} uses vertex {x} outside the vertex list")));
            }
        }
        edges.sort();
        Ok(Hypergraph { vertices, edges })
    }

    /// Vertices are the union of the edges.
    pub fn from_edges(edges: Vec<Face>) -> Result<Self> {
        let vs: BTreeSet<Vertex> = edges.iter().flat_map(|e| e.iter().cloned()).collect();
        Self::new(vs.into_iter().collect(), edges)
    }

    /// `H(Δ) = (V, F(Δ))`.
    pub fn from_complex(delta: &SimplicialComplex) -> Hypergraph {
        let edges = delta.facets().iter().filter(|f| !f.is_empty()).cloned().collect();
        Hypergraph { vertices: delta.universe().to_vec(), edges }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Face] {
        &self.edges
    }

    pub fn has_vertex(&self, x: &Vertex) -> bool {
        self.vertices.binary_search(x).is_ok()
    }

    pub fn has_edge(&self, e: &Face) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn is_antichain(&self) -> bool {
        minimalize_antichain(self.edges.clone()).len() == self.edges.len()
    }

    /// Isolated vertices: `{x}` is an edge, or `x` lies in no edge.
    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        self.vertices
            .iter()
            .filter(|x| {
                self.edges.iter().all(|e| !e.contains(x)) || self.edges.iter().any(|e| e.len() == 1 && e.contains(x))
            })
            .cloned()
            .collect()
    }

    /// Every vertex is isolated.
    pub fn is_isolated(&self) -> bool {
        self.isolated_vertices().len() == self.vertices.len()
    }

    /// `H°`: drop isolated vertices together with the trivial edges.
    pub fn strip_isolated(&self) -> Hypergraph {
        let iso = self.isolated_vertices();
        let vertices = self.vertices.iter().filter(|x| !iso.contains(x)).cloned().collect();
        let edges = self.edges.iter().filter(|e| e.len() != 1).cloned().collect();
        Hypergraph { vertices, edges }
    }

    fn require_vertex(&self, x: &Vertex) -> Result<()> {
        if !self.has_vertex(x) {
            return Err(invalid(format!("vertex {x} is not in the hypergraph")));
        }
        Ok(())
    }

    /// `H \ x`.
    pub fn delete_vertex(&self, x: &Vertex) -> Result<Hypergraph> {
        self.require_vertex(x)?;
        let vertices = self.vertices.iter().filter(|w| *w != x).cloned().collect();
        let edges = self.edges.iter().filter(|e| !e.contains(x)).cloned().collect();
        Ok(Hypergraph { vertices, edges })
    }

    /// `H / x`: edges through `x` lose it (`E_*`); an edge avoiding `x` survives
    /// unless it contains one of those shrunken edges (`E^*`).
    pub fn contract_vertex(&self, x: &Vertex) -> Result<Hypergraph> {
        self.require_vertex(x)?;
        let lowered: Vec<Face> = self.edges.iter().filter(|e| e.contains(x)).map(|e| e.without(x)).collect();
        let mut edges = lowered.clone();
        for e in self.edges.iter().filter(|e| !e.contains(x)) {
            if !lowered.iter().any(|f| f.is_subset(e)) {
                edges.push(e.clone());
            }
        }
        edges.sort();
        edges.dedup();
        let vertices = self.vertices.iter().filter(|w| *w != x).cloned().collect();
        let h = Hypergraph { vertices, edges };
        if !h.is_antichain() {
            return Err(Error::Internal(format!("contraction by {x} produced a non-simple hypergraph")));
        }
        Ok(h)
    }

    pub(crate) fn index_of(&self, x: &Vertex) -> Option<usize> {
        self.vertices.binary_search(x).ok()
    }

    pub(crate) fn to_masks(&self) -> Result<MaskGraph> {
        if self.vertices.len() > bits::MAX_VERTICES {
            return Err(Error::BudgetExceeded(format!(
                "{} vertices exceeds the {}-vertex limit of the search kernels",
                self.vertices.len(),
                bits::MAX_VERTICES
            )));
        }
        let edges = self.edges.iter().map(|e| self.mask_of(e)).collect();
        Ok(MaskGraph { n: self.vertices.len(), edges })
    }

    pub(crate) fn mask_of(&self, f: &Face) -> Mask {
        f.iter().filter_map(|x| self.index_of(x)).fold(0, |m, i| m | bits::bit(i))
    }

    pub(crate) fn face_of(&self, m: Mask) -> Face {
        Face::new(bits::bits(m).map(|i| self.vertices[i].clone()).collect())
    }

    /// All inclusion-minimal vertex covers.
    pub fn minimal_vertex_covers(&self) -> Result<Vec<Face>> {
        let g = self.to_masks()?;
        let mut out: Vec<Face> = bits::minimal_transversals(&g.edges).into_iter().map(|m| self.face_of(m)).collect();
        out.sort();
        Ok(out)
    }

    /// Complements of the minimal vertex covers.
    pub fn maximal_independent_sets(&self) -> Result<Vec<Face>> {
        let g = self.to_masks()?;
        let mut out: Vec<Face> = g.maximal_independent_sets().into_iter().map(|m| self.face_of(m)).collect();
        out.sort();
        Ok(out)
    }

    pub fn is_independent(&self, s: &Face) -> bool {
        self.edges.iter().all(|e| !e.is_subset(s))
    }

    /// `Δ(H)`, generated by the maximal independent sets.
    pub fn independence_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::new(self.vertices.clone(), self.maximal_independent_sets()?)
    }

    /// Disjoint union; fails when vertex labels collide.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.vertices.iter().any(|x| other.has_vertex(x)) {
            return Err(invalid("disjoint union of hypergraphs sharing a vertex"));
        }
        let mut vs = self.vertices.clone();
        vs.extend(other.vertices.iter().cloned());
        let mut es = self.edges.clone();
        es.extend(other.edges.iter().cloned());
        Hypergraph::new(vs, es)
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V = {{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}, E = {{")?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON form: `{"type":"hypergraph","vertices":[...],"edges":[[...],...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypergraphDoc {
    #[serde(rename = "type")]
    pub kind: String,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Face>,
}

impl From<&Hypergraph> for HypergraphDoc {
    fn from(h: &Hypergraph) -> Self {
        HypergraphDoc { kind: "hypergraph".into(), vertices: h.vertices.clone(), edges: h.edges.clone() }
    }
}

impl TryFrom<HypergraphDoc> for Hypergraph {
    type Error = Error;

    fn try_from(d: HypergraphDoc) -> Result<Self> {
        if d.kind != "hypergraph" {
            return Err(Error::Parse(format!("expected type \"hypergraph\", found {:?}", d.kind)));
        }
        Hypergraph::new(d.vertices, d.edges)
    }
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HypergraphDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        HypergraphDoc::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}
