//! Simplicial complexes given by their facets.
//!
//! Besides link and deletion this module carries the forest theory used to
//! decide where skeletons may be attached: leaves, good leaves, special cycles
//! and cycle covers. Special cycles are taken to have length at least 3
//! throughout; two facets meeting in an edge do not count as a cycle.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex::{minimalize_antichain, Face, Vertex};

/// A complex on an explicit vertex universe, stored as a sorted facet antichain.
///
/// No facets at all is the void complex; the single facet `∅` is `{∅}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    universe: Vec<Vertex>,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Builds a complex from generating faces; faces contained in others are
    /// absorbed.
    pub fn new(universe: Vec<Vertex>, faces: Vec<Face>) -> Result<Self> {
        Ok(Self::new_reporting(universe, faces)?.0)
    }

    /// As [`SimplicialComplex::new`], also returning the generators that were
    /// absorbed because another generator contains them.
    pub fn new_reporting(mut universe: Vec<Vertex>, faces: Vec<Face>) -> Result<(Self, Vec<Face>)> {
        universe.sort();
        let n = universe.len();
        universe.dedup();
        if universe.len() != n {
            return Err(invalid("repeated vertex label in universe"));
        }
        for f in &faces {
            if let Some(x) = f.iter().find(|x| universe.binary_search(x).is_err()) {
                return Err(invalid(format!("facet {f} uses vertex {x} outside the universe")));
            }
        }
        let facets = minimalize_antichain(faces.clone());
        let mut absorbed: Vec<Face> = faces.into_iter().filter(|f| !facets.contains(f)).collect();
        absorbed.sort();
        absorbed.dedup();
        Ok((SimplicialComplex { universe, facets }, absorbed))
    }

    /// Universe = union of the facets.
    pub fn from_facets(faces: Vec<Face>) -> Result<Self> {
        let vs: BTreeSet<Vertex> = faces.iter().flat_map(|f| f.iter().cloned()).collect();
        Self::new(vs.into_iter().collect(), faces)
    }

    /// The full simplex on `vertices`.
    pub fn simplex(vertices: Vec<Vertex>) -> Self {
        let f = Face::new(vertices);
        SimplicialComplex { universe: f.vertices().to_vec(), facets: vec![f] }
    }

    pub fn universe(&self) -> &[Vertex] {
        &self.universe
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Largest facet dimension; -1 for `{∅}` and for the void complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(Face::dim).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn contains_face(&self, f: &Face) -> bool {
        self.facets.iter().any(|g| f.is_subset(g))
    }

    /// Every face, the empty face included, sorted by size then lexicographically.
    pub fn faces(&self) -> Vec<Face> {
        let mut all = BTreeSet::new();
        for f in &self.facets {
            let vs = f.vertices();
            let n = vs.len();
            for m in 0u64..(1u64 << n) {
                all.insert(Face::new((0..n).filter(|i| m >> i & 1 == 1).map(|i| vs[i].clone()).collect()));
            }
        }
        let mut out: Vec<Face> = all.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Face counts `f_{-1}, f_0, ..., f_dim`.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut counts = vec![0u64; (self.dim() + 2) as usize];
        if self.is_void() {
            return counts;
        }
        for f in self.faces() {
            counts[f.len()] += 1;
        }
        counts
    }

    /// `Δ^(s)`: the maximal faces of dimension at most `s`.
    pub fn skeleton(&self, s: usize) -> Result<SimplicialComplex> {
        if s as isize > self.dim() {
            return Err(invalid(format!("skeleton degree {s} exceeds dimension {}", self.dim())));
        }
        let mut faces = Vec::new();
        for f in &self.facets {
            if f.len() <= s + 1 {
                faces.push(f.clone());
            } else {
                faces.extend(k_subsets(f, s + 1));
            }
        }
        SimplicialComplex::new(self.universe.clone(), faces)
    }

    /// `del_Δ(F)`: faces disjoint from `F`, on the universe minus `F`.
    pub fn del(&self, f: &Face) -> SimplicialComplex {
        let faces = self.facets.iter().map(|g| g.minus(f)).collect();
        let universe = self.universe.iter().filter(|x| !f.contains(x)).cloned().collect();
        SimplicialComplex { universe, facets: minimalize_antichain(faces) }
    }

    /// `link_Δ(F)`: faces `G` disjoint from `F` with `G ∪ F` a face. Void when
    /// `F` is not a face.
    pub fn link(&self, f: &Face) -> SimplicialComplex {
        let faces = self.facets.iter().filter(|g| f.is_subset(g)).map(|g| g.minus(f)).collect();
        let universe = self.universe.iter().filter(|x| !f.contains(x)).cloned().collect();
        SimplicialComplex { universe, facets: minimalize_antichain(faces) }
    }

    /// Induced subcomplex on `w`.
    pub fn restrict(&self, w: &Face) -> SimplicialComplex {
        let faces = self.facets.iter().map(|g| g.intersection(w)).collect();
        let universe = self.universe.iter().filter(|x| w.contains(x)).cloned().collect();
        SimplicialComplex { universe, facets: minimalize_antichain(faces) }
    }

    /// Sub-collection generated by a subset of the facets.
    fn subcollection(&self, facets: Vec<Face>) -> SimplicialComplex {
        SimplicialComplex { universe: self.universe.clone(), facets }
    }

    /// `F` is a good leaf when its traces `F ∩ G` on all facets form a chain.
    pub fn is_good_leaf(&self, f: &Face) -> bool {
        if !self.facets.contains(f) {
            return false;
        }
        let mut traces: Vec<Face> = self.facets.iter().map(|g| f.intersection(g)).collect();
        traces.sort_by_key(Face::len);
        traces.windows(2).all(|w| w[0].is_subset(&w[1]))
    }

    /// A leaf in the sense of the branch condition: either the only facet, or
    /// some other facet `G` contains every trace `F ∩ H`, `H ≠ F`.
    pub fn is_leaf(&self, f: &Face) -> bool {
        if !self.facets.contains(f) {
            return false;
        }
        if self.facets.len() == 1 {
            return true;
        }
        let others: Vec<&Face> = self.facets.iter().filter(|g| *g != f).collect();
        others.iter().any(|g| {
            let branch = f.intersection(g);
            others.iter().all(|h| f.intersection(h).is_subset(&branch))
        })
    }

    /// Greedy good-leaf elimination: repeatedly remove the least good leaf of
    /// what remains. Returns `None` when some stage has no good leaf.
    pub fn good_leaf_order(&self) -> Option<Vec<Face>> {
        let mut rest = self.facets.clone();
        let mut order = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            let sub = self.subcollection(rest.clone());
            let pos = rest.iter().position(|f| sub.is_good_leaf(f))?;
            order.push(rest.remove(pos));
        }
        Some(order)
    }

    /// Special cycles of length `3..=max_len` avoiding `forbidden`, one
    /// canonical representative per cycle (least vertex first, then the
    /// smaller neighbour). `max_len = None` means unbounded.
    pub fn special_cycles(&self, max_len: Option<usize>, forbidden: &[Vertex]) -> Vec<Cycle> {
        let mut out = Vec::new();
        CycleSearch::new(self, forbidden, max_len).run(&mut |c| {
            out.push(c);
            true
        });
        out.sort();
        out
    }

    /// Whether some special cycle of length >= 3 avoids `forbidden`.
    pub fn has_special_cycle(&self, forbidden: &[Vertex]) -> bool {
        let mut found = false;
        CycleSearch::new(self, forbidden, None).run(&mut |_| {
            found = true;
            false
        });
        found
    }

    /// Forest test by both routes: special-cycle search and good-leaf
    /// elimination. A disagreement is reported as [`Error::Internal`].
    pub fn is_forest(&self) -> Result<bool> {
        let by_cycles = !self.has_special_cycle(&[]);
        let by_leaves = self.good_leaf_order().is_some();
        if by_cycles != by_leaves {
            return Err(Error::Internal(format!(
                "forest checkers disagree on {self}: cycle search says {by_cycles}, good-leaf elimination says {by_leaves}"
            )));
        }
        Ok(by_cycles)
    }

    /// `W` meets every special cycle of length >= 3.
    pub fn is_cycle_cover(&self, w: &[Vertex]) -> bool {
        !self.has_special_cycle(w)
    }

    /// All cycle covers of minimum cardinality, found by brute force over
    /// subsets of the universe in increasing size.
    pub fn minimum_cycle_covers(&self) -> Vec<Vec<Vertex>> {
        let n = self.universe.len();
        for k in 0..=n {
            let mut found = Vec::new();
            for combo in index_combinations(n, k) {
                let w: Vec<Vertex> = combo.iter().map(|&i| self.universe[i].clone()).collect();
                if self.is_cycle_cover(&w) {
                    found.push(w);
                }
            }
            if !found.is_empty() {
                return found;
            }
        }
        vec![]
    }

    /// All minimal vertex covers share one cardinality.
    pub fn is_unmixed(&self) -> Result<bool> {
        let covers = Hypergraph::from_complex(self).minimal_vertex_covers()?;
        Ok(covers.windows(2).all(|w| w[0].len() == w[1].len()))
    }
}

fn k_subsets(f: &Face, k: usize) -> Vec<Face> {
    let vs = f.vertices();
    index_combinations(vs.len(), k)
        .into_iter()
        .map(|c| Face::new(c.into_iter().map(|i| vs[i].clone()).collect()))
        .collect()
}

pub(crate) fn index_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// An alternating cycle `x_1, F_1, x_2, ..., x_q, F_q, x_1` with
/// `x_p, x_{p+1} ∈ F_p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cycle {
    pub vertices: Vec<Vertex>,
    pub facets: Vec<Face>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Each facet of the cycle holds exactly two cycle vertices.
    pub fn is_special(&self) -> bool {
        self.facets.iter().all(|f| self.vertices.iter().filter(|x| f.contains(x)).count() <= 2)
    }

    /// Checks the cycle axioms: distinct vertices and facets, consecutive
    /// vertices in the facet between them.
    pub fn is_valid(&self) -> bool {
        let q = self.vertices.len();
        if q < 2 || self.facets.len() != q {
            return false;
        }
        let vs: BTreeSet<_> = self.vertices.iter().collect();
        let fs: BTreeSet<_> = self.facets.iter().collect();
        vs.len() == q
            && fs.len() == q
            && (0..q).all(|p| {
                self.facets[p].contains(&self.vertices[p]) && self.facets[p].contains(&self.vertices[(p + 1) % q])
            })
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, g) in self.vertices.iter().zip(&self.facets) {
            write!(f, "{x},{g},")?;
        }
        if let Some(x) = self.vertices.first() {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct CycleSearch<'a> {
    facets: &'a [Face],
    verts: Vec<Vertex>,
    max_len: usize,
}

impl<'a> CycleSearch<'a> {
    fn new(delta: &'a SimplicialComplex, forbidden: &[Vertex], max_len: Option<usize>) -> Self {
        let verts: Vec<Vertex> = delta.universe.iter().filter(|x| !forbidden.contains(x)).cloned().collect();
        let max_len = max_len.unwrap_or(verts.len()).min(verts.len());
        CycleSearch { facets: &delta.facets, verts, max_len }
    }

    /// Calls `emit` on each canonical special cycle; stops when it returns false.
    fn run(&self, emit: &mut dyn FnMut(Cycle) -> bool) {
        if self.max_len < 3 {
            return;
        }
        for (si, s) in self.verts.iter().enumerate() {
            let mut path = vec![s.clone()];
            let mut used: Vec<usize> = Vec::new();
            if !self.extend(si, &mut path, &mut used, emit) {
                return;
            }
        }
    }

    /// The facet `fi` may join `path`'s last vertex to `next` only if it
    /// contains no other path vertex; earlier facets must not contain `next`.
    fn extend(
        &self,
        si: usize,
        path: &mut Vec<Vertex>,
        used: &mut Vec<usize>,
        emit: &mut dyn FnMut(Cycle) -> bool,
    ) -> bool {
        let start = &self.verts[si];
        let last = path.last().unwrap().clone();
        let q = path.len();
        for (fi, f) in self.facets.iter().enumerate() {
            if used.contains(&fi) || !f.contains(&last) {
                continue;
            }
            // facet must not contain path vertices other than `last` (and the
            // start when closing)
            let inner = if q > 2 { &path[1..q - 1] } else { &[][..] };
            if inner.iter().any(|x| f.contains(x)) {
                continue;
            }
            let holds_start = q > 1 && f.contains(start);
            // closing move
            if q >= 3 && holds_start && path[1] < path[q - 1] {
                let mut facets: Vec<Face> = used.iter().map(|&i| self.facets[i].clone()).collect();
                facets.push(f.clone());
                if !emit(Cycle { vertices: path.clone(), facets }) {
                    return false;
                }
            }
            if q == self.max_len || holds_start {
                continue;
            }
            for next in f.iter() {
                if next <= start || path.contains(next) || !self.verts.contains(next) {
                    continue;
                }
                if used.iter().any(|&i| self.facets[i].contains(next)) {
                    continue;
                }
                path.push(next.clone());
                used.push(fi);
                let go_on = self.extend(si, path, used, emit);
                used.pop();
                path.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.facets.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON form: `{"type":"simplicial_complex","vertices":[...],"facets":[[...],...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexDoc {
    #[serde(rename = "type")]
    pub kind: String,
    pub vertices: Vec<Vertex>,
    pub facets: Vec<Face>,
}

impl From<&SimplicialComplex> for ComplexDoc {
    fn from(c: &SimplicialComplex) -> Self {
        ComplexDoc { kind: "simplicial_complex".into(), vertices: c.universe.clone(), facets: c.facets.clone() }
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ComplexDoc::deserialize(d)?;
        if doc.kind != "simplicial_complex" {
            return Err(serde::de::Error::custom(format!(
                "expected type \"simplicial_complex\", found {:?}",
                doc.kind
            )));
        }
        SimplicialComplex::new(doc.vertices, doc.facets).map_err(serde::de::Error::custom)
    }
}

/// One simplex of a skeleton complex together with its skeleton degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonPart {
    pub vertices: Face,
    pub s: usize,
}

/// Skeletons `Γ_k^(s_k)` of simplices glued at a common apex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonSpec {
    pub apex: Vertex,
    pub parts: Vec<SkeletonPart>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Purity {
    Pure,
    NonPure,
}

impl SkeletonSpec {
    fn validate(&self) -> Result<()> {
        if self.parts.is_empty() {
            return Err(invalid(format!("skeleton spec at {} has no parts", self.apex)));
        }
        for p in &self.parts {
            if !p.vertices.contains(&self.apex) {
                return Err(invalid(format!("part {} does not contain the apex {}", p.vertices, self.apex)));
            }
            let dim = p.vertices.dim();
            if dim < 1 {
                return Err(invalid(format!("part {} has dimension < 1", p.vertices)));
            }
            if p.s < 1 || p.s as isize > dim {
                return Err(invalid(format!("skeleton degree {} out of range 1..={dim} for {}", p.s, p.vertices)));
            }
        }
        let apex = Face::new(vec![self.apex.clone()]);
        for (i, a) in self.parts.iter().enumerate() {
            for b in &self.parts[i + 1..] {
                if a.vertices.intersection(&b.vertices) != apex {
                    return Err(invalid(format!(
                        "parts {} and {} share more than the apex {}",
                        a.vertices, b.vertices, self.apex
                    )));
                }
            }
        }
        Ok(())
    }

    /// Vertices other than the apex.
    pub fn new_vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> =
            self.parts.iter().flat_map(|p| p.vertices.iter().filter(|x| **x != self.apex).cloned()).collect();
        vs.sort();
        vs
    }

    /// The part kept at full dimension that plays the distinguished role;
    /// the lexicographically least when several qualify.
    pub fn full_part(&self) -> Option<&Face> {
        self.parts.iter().filter(|p| p.s as isize == p.vertices.dim()).map(|p| &p.vertices).min()
    }
}

/// Union of the skeletons; non-pure iff some part keeps its full dimension.
pub fn build_skeleton_complex(spec: &SkeletonSpec) -> Result<(SimplicialComplex, Purity)> {
    spec.validate()?;
    let mut faces = Vec::new();
    for p in &spec.parts {
        let simplex = SimplicialComplex::simplex(p.vertices.vertices().to_vec());
        faces.extend(simplex.skeleton(p.s)?.facets().iter().cloned());
    }
    let purity = if spec.full_part().is_some() { Purity::NonPure } else { Purity::Pure };
    Ok((SimplicialComplex::from_facets(faces)?, purity))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AttachOptions {
    /// Accept pure skeleton complexes (outside the hypotheses of the main
    /// theorem; used for negative controls).
    pub allow_pure: bool,
    /// Require the attachment vertices to form a cycle cover.
    pub require_cycle_cover: bool,
}

impl Default for AttachOptions {
    fn default() -> Self {
        AttachOptions { allow_pure: false, require_cycle_cover: true }
    }
}

/// `Δ̄` together with the facet bookkeeping needed by the weight conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub complex: SimplicialComplex,
    /// Attachment vertices `W` in index order.
    pub cover: Vec<Vertex>,
    /// `F_1, ..., F_t`: the facets of `Δ` that survive, then the distinguished
    /// full simplex of each attachment (in cover order, when present), then
    /// the remaining skeleton facets.
    pub facet_order: Vec<Face>,
    /// Number of leading entries of `facet_order` that come from `Δ`.
    pub base_count: usize,
    /// For each cover vertex, the index into `facet_order` of its distinguished
    /// full simplex.
    pub distinguished: Vec<Option<usize>>,
    /// Bookkeeping positions: cover vertices first, then the rest of `Δ`'s
    /// universe, then each attachment's new vertices.
    pub setup_index: Vec<(Vertex, usize)>,
}

impl Attachment {
    /// The record for a complex with nothing attached.
    pub fn trivial(delta: &SimplicialComplex) -> Attachment {
        Attachment {
            complex: delta.clone(),
            cover: vec![],
            facet_order: delta.facets().to_vec(),
            base_count: delta.facets().len(),
            distinguished: vec![],
            setup_index: delta.universe().iter().cloned().enumerate().map(|(i, x)| (x, i + 1)).collect(),
        }
    }

    /// `Υ_i`: indices `k` with `x_i ∈ F_k`.
    pub fn incidence(&self, x: &Vertex) -> Vec<usize> {
        self.facet_order.iter().enumerate().filter(|(_, f)| f.contains(x)).map(|(k, _)| k).collect()
    }
}

/// Attaches a skeleton complex at each key of `assignments` and records the
/// facet order.
pub fn attach_skeletons(
    delta: &SimplicialComplex,
    assignments: &BTreeMap<Vertex, SkeletonSpec>,
    opts: AttachOptions,
) -> Result<Attachment> {
    let cover: Vec<Vertex> = assignments.keys().cloned().collect();
    for x in &cover {
        if delta.universe.binary_search(x).is_err() {
            return Err(invalid(format!("attachment vertex {x} is not a vertex of the complex")));
        }
    }
    if opts.require_cycle_cover && !delta.is_cycle_cover(&cover) {
        let witness = delta.special_cycles(None, &cover).into_iter().next();
        return Err(Error::PreconditionViolation(format!(
            "attachment vertices {:?} do not form a cycle cover{}",
            cover,
            witness.map(|c| format!("; special cycle {c} avoids them")).unwrap_or_default()
        )));
    }
    let mut seen: BTreeSet<Vertex> = delta.universe.iter().cloned().collect();
    let mut built = Vec::new();
    for (x, spec) in assignments {
        if spec.apex != *x {
            return Err(invalid(format!("spec attached at {x} has apex {}", spec.apex)));
        }
        let (gamma, purity) = build_skeleton_complex(spec)?;
        if purity == Purity::Pure && !opts.allow_pure {
            return Err(Error::PreconditionViolation(format!(
                "skeleton complex at {x} is pure (no part kept at full dimension); pass allow_pure to attach it anyway"
            )));
        }
        for y in spec.new_vertices() {
            if !seen.insert(y.clone()) {
                return Err(invalid(format!("new vertex {y} of the skeleton at {x} is already in use")));
            }
        }
        built.push((x.clone(), spec, gamma));
    }

    let mut universe: Vec<Vertex> = seen.into_iter().collect();
    universe.sort();
    let mut all_faces = delta.facets.clone();
    for (_, _, g) in &built {
        all_faces.extend(g.facets().iter().cloned());
    }
    let complex = SimplicialComplex::new(universe, all_faces)?;
    let live = |f: &Face| complex.facets.binary_search(f).is_ok();

    let mut facet_order: Vec<Face> = delta.facets.iter().filter(|f| live(f)).cloned().collect();
    let base_count = facet_order.len();
    let mut distinguished = Vec::new();
    for (_, spec, _) in &built {
        match spec.full_part() {
            Some(full) if live(full) => {
                distinguished.push(Some(facet_order.len()));
                facet_order.push(full.clone());
            }
            _ => distinguished.push(None),
        }
    }
    for (_, _, g) in &built {
        for f in g.facets() {
            if live(f) && !facet_order.contains(f) {
                facet_order.push(f.clone());
            }
        }
    }

    let mut setup_index = Vec::new();
    let mut next = 1;
    for x in cover.iter().chain(delta.universe.iter().filter(|x| !cover.contains(x))) {
        setup_index.push((x.clone(), next));
        next += 1;
    }
    for (_, spec, _) in &built {
        for y in spec.new_vertices() {
            setup_index.push((y, next));
            next += 1;
        }
    }

    Ok(Attachment { complex, cover, facet_order, base_count, distinguished, setup_index })
}
