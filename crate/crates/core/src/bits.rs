//! Bitmask kernels behind the labeled types.
//!
//! Vertices are indices `0..n` (n <= 128) and sets are `u128` masks. These
//! routines carry the exponential searches; the labeled wrappers translate in
//! and out.

pub(crate) type Mask = u128;

pub(crate) const MAX_VERTICES: usize = 128;

#[inline]
pub(crate) fn bit(i: usize) -> Mask {
    1u128 << i
}

#[inline]
pub(crate) fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[inline]
pub(crate) fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Packs the bits of `m` selected by `keep` into the low positions, in order.
pub(crate) fn compress(m: Mask, keep: Mask) -> Mask {
    let mut out = 0;
    for (j, i) in bits(keep).enumerate() {
        if m & bit(i) != 0 {
            out |= bit(j);
        }
    }
    out
}

/// All inclusion-minimal transversals of `edges`, sorted ascending.
///
/// Branches on an uncovered edge with the fewest admissible vertices; vertices
/// of that edge tried earlier are forbidden in later branches so every
/// transversal is produced once. A partial set in which some chosen vertex has
/// lost all private edges is abandoned, since private edges only shrink.
pub(crate) fn minimal_transversals(edges: &[Mask]) -> Vec<Mask> {
    let mut out = Vec::new();
    if edges.iter().any(|&e| e == 0) {
        return out;
    }
    transversal_rec(edges, 0, 0, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

fn has_private_edges(edges: &[Mask], chosen: Mask) -> bool {
    bits(chosen).all(|v| edges.iter().any(|&e| e & chosen == bit(v)))
}

fn transversal_rec(edges: &[Mask], chosen: Mask, forbidden: Mask, out: &mut Vec<Mask>) {
    let mut best: Option<Mask> = None;
    for &e in edges {
        if e & chosen != 0 {
            continue;
        }
        let avail = e & !forbidden;
        if avail == 0 {
            return;
        }
        if best.map_or(true, |b| avail.count_ones() < b.count_ones()) {
            best = Some(avail);
        }
    }
    let Some(avail) = best else {
        if has_private_edges(edges, chosen) {
            out.push(chosen);
        }
        return;
    };
    let mut earlier = 0;
    for v in bits(avail) {
        let next = chosen | bit(v);
        if has_private_edges(edges, next) {
            transversal_rec(edges, next, forbidden | earlier, out);
        }
        earlier |= bit(v);
    }
}

/// Compact hypergraph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct MaskGraph {
    pub n: usize,
    pub edges: Vec<Mask>,
}

impl MaskGraph {
    pub fn all(&self) -> Mask {
        if self.n == 128 {
            !0
        } else {
            bit(self.n) - 1
        }
    }

    /// Vertices that are isolated: in no edge, or forming a trivial edge.
    pub fn isolated(&self) -> Mask {
        let mut covered = 0;
        let mut trivial = 0;
        for &e in &self.edges {
            if e.count_ones() == 1 {
                trivial |= e;
            } else {
                covered |= e;
            }
        }
        (self.all() & !covered) | trivial
    }

    /// Removes isolated vertices and trivial edges; returns the kept-vertex mask
    /// (in the old numbering) alongside the compacted graph.
    pub fn strip(&self) -> (MaskGraph, Mask) {
        let keep = self.all() & !self.isolated();
        let mut edges: Vec<Mask> =
            self.edges.iter().filter(|e| e.count_ones() != 1).map(|&e| compress(e, keep)).collect();
        edges.sort_unstable();
        (MaskGraph { n: keep.count_ones() as usize, edges }, keep)
    }

    pub fn delete(&self, x: usize) -> MaskGraph {
        let keep = self.all() & !bit(x);
        let mut edges: Vec<Mask> =
            self.edges.iter().filter(|&&e| e & bit(x) == 0).map(|&e| compress(e, keep)).collect();
        edges.sort_unstable();
        MaskGraph { n: self.n - 1, edges }
    }

    /// `E_* ∪ E^*`: edges through `x` lose `x`; other edges survive unless
    /// they contain some shrunken edge.
    pub fn contract(&self, x: usize) -> MaskGraph {
        let xb = bit(x);
        let lowered: Vec<Mask> = self.edges.iter().filter(|&&e| e & xb != 0).map(|&e| e & !xb).collect();
        let mut kept: Vec<Mask> = lowered.clone();
        for &e in &self.edges {
            if e & xb == 0 && !lowered.iter().any(|&f| is_subset(f, e)) {
                kept.push(e);
            }
        }
        let keep = self.all() & !xb;
        let mut edges: Vec<Mask> = kept.into_iter().map(|e| compress(e, keep)).collect();
        edges.sort_unstable();
        edges.dedup();
        MaskGraph { n: self.n - 1, edges }
    }

    /// Maximal independent sets, as complements of minimal transversals.
    pub fn maximal_independent_sets(&self) -> Vec<Mask> {
        let all = self.all();
        let mut v: Vec<Mask> = minimal_transversals(&self.edges).into_iter().map(|c| all & !c).collect();
        v.sort_unstable();
        v
    }

    /// `x` is shedding iff no maximal independent set of `H \ x` stays
    /// independent after adding `x`, i.e. no facet of the deletion is a face of
    /// the link in the independence complex.
    pub fn is_shedding(&self, x: usize) -> bool {
        let xb = bit(x);
        let del: Vec<Mask> = self.edges.iter().copied().filter(|&e| e & xb == 0).collect();
        let low: Vec<Mask> = self.edges.iter().filter(|&&e| e & xb != 0).map(|&e| e & !xb).collect();
        if low.iter().any(|&e| e == 0) {
            // {x} is an edge: x is in no face, the link is void.
            return true;
        }
        let order: Vec<usize> = (0..self.n).filter(|&v| v != x).collect();
        let search = ShedSearch { del: &del, low: &low, order: &order };
        !search.exists(0, 0, 0)
    }
}

struct ShedSearch<'a> {
    del: &'a [Mask],
    low: &'a [Mask],
    order: &'a [usize],
}

impl ShedSearch<'_> {
    fn blockable(&self, u: usize, out: Mask) -> bool {
        self.del.iter().any(|&e| e & bit(u) != 0 && (e & !bit(u)) & out == 0)
    }

    /// Looks for S, independent in H and with S ∪ {x} independent, that is a
    /// maximal independent set of H \ x.
    fn exists(&self, idx: usize, inside: Mask, out: Mask) -> bool {
        if idx == self.order.len() {
            return bits(out).all(|u| self.del.iter().any(|&e| e & bit(u) != 0 && is_subset(e & !bit(u), inside)));
        }
        let v = self.order[idx];
        let vb = bit(v);
        let with = inside | vb;
        let ok_in = self.del.iter().all(|&e| e & vb == 0 || !is_subset(e, with))
            && self.low.iter().all(|&e| e & vb == 0 || !is_subset(e, with));
        if ok_in && self.exists(idx + 1, with, out) {
            return true;
        }
        let out2 = out | vb;
        if self.blockable(v, out2) && bits(out).all(|u| self.blockable(u, out2)) {
            return self.exists(idx + 1, inside, out2);
        }
        false
    }
}
