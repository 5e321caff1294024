//! Shedding vertices and the vertex-decomposability search.
//!
//! The search runs on compacted bitmask hypergraphs. Every hypergraph is
//! stripped of isolated vertices before it is tested, so the canonical key of
//! a node is its stripped edge list over rank-relabeled vertices.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bits::{Mask, MaskGraph};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex::{Face, Vertex};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Whether `x` is a shedding vertex of `h`, decided on maximal independent
/// sets: no facet of `Δ(H ∖ x)` may stay independent once `x` is added.
pub fn is_shedding_vertex(h: &Hypergraph, x: &Vertex) -> Result<bool> {
    let i = h.index_of(x).ok_or_else(|| invalid(format!("vertex {x} is not in the hypergraph")))?;
    Ok(h.to_masks()?.is_shedding(i))
}

/// The definition read literally on the independence complex: every face of
/// `link(x)` lies strictly inside some face of `del(x)`. Exponential in the
/// number of faces; meant as a cross-check on small inputs.
pub fn is_shedding_vertex_literal(h: &Hypergraph, x: &Vertex) -> Result<bool> {
    if !h.has_vertex(x) {
        return Err(invalid(format!("vertex {x} is not in the hypergraph")));
    }
    let delta = h.independence_complex()?;
    let xf = Face::new(vec![x.clone()]);
    let link = delta.link(&xf);
    let del = delta.del(&xf);
    let del_faces = del.faces();
    Ok(link.faces().iter().all(|f| del_faces.iter().any(|g| f.is_subset(g) && f.len() < g.len())))
}

/// Shedding vertices of `H°`, in vertex order.
pub fn shedding_vertices(h: &Hypergraph) -> Result<Vec<Vertex>> {
    let h = h.strip_isolated();
    let g = h.to_masks()?;
    Ok((0..g.n).filter(|&i| g.is_shedding(i)).map(|i| h.vertices()[i].clone()).collect())
}

/// Certificate tree for vertex decomposability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VdWitness {
    Isolated,
    Shed { vertex: Vertex, del: Box<VdWitness>, link: Box<VdWitness> },
}

impl VdWitness {
    pub fn node_count(&self) -> usize {
        match self {
            VdWitness::Isolated => 1,
            VdWitness::Shed { del, link, .. } => 1 + del.node_count() + link.node_count(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WitnessRepr {
    Leaf { isolated: bool },
    Node { shed: Vertex, del: Box<WitnessRepr>, link: Box<WitnessRepr> },
}

impl From<&VdWitness> for WitnessRepr {
    fn from(w: &VdWitness) -> Self {
        match w {
            VdWitness::Isolated => WitnessRepr::Leaf { isolated: true },
            VdWitness::Shed { vertex, del, link } => WitnessRepr::Node {
                shed: vertex.clone(),
                del: Box::new(del.as_ref().into()),
                link: Box::new(link.as_ref().into()),
            },
        }
    }
}

impl TryFrom<WitnessRepr> for VdWitness {
    type Error = Error;

    fn try_from(r: WitnessRepr) -> Result<Self> {
        match r {
            WitnessRepr::Leaf { isolated: true } => Ok(VdWitness::Isolated),
            WitnessRepr::Leaf { isolated: false } => Err(invalid("witness leaf must be {\"isolated\":true}")),
            WitnessRepr::Node { shed, del, link } => Ok(VdWitness::Shed {
                vertex: shed,
                del: Box::new((*del).try_into()?),
                link: Box::new((*link).try_into()?),
            }),
        }
    }
}

impl Serialize for VdWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WitnessRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for VdWitness {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        WitnessRepr::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Yes,
    No,
    BudgetExceeded,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VdStats {
    /// Distinct stripped hypergraphs expanded.
    pub nodes: u64,
    pub memo_hits: u64,
    pub shedding_tests: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VdOutcome {
    pub decision: Decision,
    pub witness: Option<VdWitness>,
    pub stats: VdStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VdOptions {
    pub budget: u64,
    pub memoize: bool,
}

impl Default for VdOptions {
    fn default() -> Self {
        VdOptions { budget: DEFAULT_BUDGET, memoize: true }
    }
}

type Key = (usize, Vec<Mask>);

fn key_of(g: &MaskGraph) -> Key {
    let mut edges = g.edges.clone();
    edges.sort_unstable();
    (g.n, edges)
}

struct Search {
    opts: VdOptions,
    /// Stripped key -> rank of the shedding vertex used, or `None` for "not VD".
    memo: HashMap<Key, Option<usize>>,
    stats: VdStats,
}

struct OutOfBudget;

impl Search {
    fn decide(&mut self, g: &MaskGraph) -> std::result::Result<bool, OutOfBudget> {
        if g.n == 0 {
            return Ok(true);
        }
        let key = key_of(g);
        if self.opts.memoize {
            if let Some(r) = self.memo.get(&key) {
                self.stats.memo_hits += 1;
                return Ok(r.is_some());
            }
        }
        self.stats.nodes += 1;
        if self.stats.nodes > self.opts.budget {
            return Err(OutOfBudget);
        }
        let mut found = None;
        for x in 0..g.n {
            self.stats.shedding_tests += 1;
            if !g.is_shedding(x) {
                continue;
            }
            if self.decide(&g.delete(x).strip().0)? && self.decide(&g.contract(x).strip().0)? {
                found = Some(x);
                break;
            }
        }
        self.memo.insert(key, found);
        Ok(found.is_some())
    }
}

/// Decides whether `H` is vertex decomposable, trying shedding candidates in
/// vertex order and memoizing on stripped canonical forms.
pub fn vd_check(h: &Hypergraph, opts: VdOptions) -> Result<VdOutcome> {
    let root = h.strip_isolated();
    let g = root.to_masks()?;
    let mut search = Search { opts, memo: HashMap::new(), stats: VdStats::default() };
    let verdict = search.decide(&g);
    let stats = search.stats;
    match verdict {
        Err(OutOfBudget) => Ok(VdOutcome { decision: Decision::BudgetExceeded, witness: None, stats }),
        Ok(false) => Ok(VdOutcome { decision: Decision::No, witness: None, stats }),
        Ok(true) => {
            let witness = rebuild(&root, &search.memo)?;
            Ok(VdOutcome { decision: Decision::Yes, witness: Some(witness), stats })
        }
    }
}

/// Replays the recorded shedding choices on labeled hypergraphs.
fn rebuild(h: &Hypergraph, memo: &HashMap<Key, Option<usize>>) -> Result<VdWitness> {
    let h = h.strip_isolated();
    if h.vertices().is_empty() {
        return Ok(VdWitness::Isolated);
    }
    let key = key_of(&h.to_masks()?);
    let Some(Some(x)) = memo.get(&key) else {
        return Err(Error::Internal(format!("no recorded shedding vertex for {h}")));
    };
    let x = h.vertices()[*x].clone();
    Ok(VdWitness::Shed {
        del: Box::new(rebuild(&h.delete_vertex(&x)?, memo)?),
        link: Box::new(rebuild(&h.contract_vertex(&x)?, memo)?),
        vertex: x,
    })
}

/// Replays a witness: every node must name a shedding vertex of the stripped
/// hypergraph at that point, and every leaf must meet an isolated one.
pub fn verify_certificate(h: &Hypergraph, w: &VdWitness) -> Result<bool> {
    let h = h.strip_isolated();
    match w {
        VdWitness::Isolated => Ok(h.vertices().is_empty()),
        VdWitness::Shed { vertex, del, link } => {
            if !h.has_vertex(vertex) || !is_shedding_vertex(&h, vertex)? {
                return Ok(false);
            }
            Ok(verify_certificate(&h.delete_vertex(vertex)?, del)?
                && verify_certificate(&h.contract_vertex(vertex)?, link)?)
        }
    }
}

/// Plain recursion without memo or budget; exponential, for cross-checks.
pub fn is_vertex_decomposable_naive(h: &Hypergraph) -> Result<bool> {
    fn rec(g: &MaskGraph) -> bool {
        g.n == 0 || (0..g.n).any(|x| g.is_shedding(x) && rec(&g.delete(x).strip().0) && rec(&g.contract(x).strip().0))
    }
    Ok(rec(&h.strip_isolated().to_masks()?.strip().0))
}
