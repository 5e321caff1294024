//! Reduction traces: strings of D/L moves applied to shadow vertices of an
//! expanded hypergraph, with the bookkeeping needed to predict every edge of
//! the reduced hypergraph.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::Attachment;
use crate::construction::{bounded_tuples, check_star_condition, expand_hypergraph, WeightedHypergraph};
use crate::decomposability::is_shedding_vertex;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex::{Face, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Move {
    /// Deletion.
    D,
    /// Contraction (link).
    L,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::D => "D",
            Move::L => "L",
        })
    }
}

impl FromStr for Move {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "D" | "d" => Ok(Move::D),
            "L" | "l" => Ok(Move::L),
            other => Err(Error::Parse(format!("unknown move {other:?}, expected D or L"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    #[serde(rename = "move")]
    pub mv: Move,
    pub vertex: Vertex,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.mv, self.vertex)
    }
}

/// Parses `"D:x1#1,L:x1#2"`.
pub fn parse_steps(s: &str) -> Result<Vec<Step>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (m, x) = p.split_once(':').ok_or_else(|| Error::Parse(format!("step {p:?} is not MOVE:VERTEX")))?;
            let vertex: Vertex = x.trim().parse()?;
            if !vertex.is_shadow() {
                return Err(Error::Parse(format!("step vertex {vertex} must be a shadow x#c")));
            }
            Ok(Step { mv: m.parse()?, vertex })
        })
        .collect()
}

/// Parses `"D,L,D"` or `"DLD"`.
pub fn parse_moves(s: &str) -> Result<Vec<Move>> {
    s.chars().filter(|c| !c.is_whitespace() && *c != ',').map(|c| c.to_string().parse()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub origin: WeightedHypergraph,
    pub steps: Vec<Step>,
}

/// `H[S,x;r]` with its bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceState {
    pub r: usize,
    pub current: Hypergraph,
    /// Bases contracted so far, with the shadow used (`A_r`).
    pub contracted: BTreeMap<Vertex, u32>,
    /// Bases deleted so far, with every shadow used (`B_r`).
    pub deleted: BTreeMap<Vertex, Vec<u32>>,
    /// `ℓ_{k,r}` in the origin's edge order.
    pub reduced_weights: Vec<u32>,
}

impl TraceState {
    pub fn a_set(&self) -> Vec<Vertex> {
        self.contracted.keys().cloned().collect()
    }

    pub fn b_set(&self) -> Vec<Vertex> {
        self.deleted.keys().cloned().collect()
    }

    pub fn stripped(&self) -> Hypergraph {
        self.current.strip_isolated()
    }
}

fn reduced_weights(origin: &WeightedHypergraph, contracted: &BTreeMap<Vertex, u32>) -> Vec<u32> {
    origin
        .edges()
        .iter()
        .zip(origin.weights())
        .map(|(f, &l)| {
            let d: i64 = f.iter().filter_map(|x| contracted.get(x)).map(|&c| c as i64 - 1).sum();
            (l as i64 - d).max(0) as u32
        })
        .collect()
}

fn initial_state(origin: &WeightedHypergraph) -> Result<TraceState> {
    Ok(TraceState {
        r: 0,
        current: expand_hypergraph(origin)?,
        contracted: BTreeMap::new(),
        deleted: BTreeMap::new(),
        reduced_weights: origin.weights().to_vec(),
    })
}

/// Least shadow of `base` among the vertices of `H°`.
fn min_live_shadow(stripped: &Hypergraph, base: &Vertex) -> Option<u32> {
    stripped.vertices().iter().filter(|x| x.base_vertex() == *base).filter_map(Vertex::shadow).min()
}

fn advance(origin: &WeightedHypergraph, prev: &TraceState, step: &Step, strict: bool) -> Result<TraceState> {
    let r = prev.r + 1;
    let fail = |reason: String| Error::TraceInvalid { step: r, reason };
    let x = &step.vertex;
    let Some(c) = x.shadow() else {
        return Err(fail(format!("{x} is not a shadow vertex")));
    };
    if !prev.current.has_vertex(x) {
        return Err(fail(format!("{x} is not a vertex of the current hypergraph")));
    }
    let base = x.base_vertex();
    if step.mv == Move::L && prev.contracted.contains_key(&base) {
        return Err(fail(format!("base {base} is contracted twice")));
    }
    if strict {
        match min_live_shadow(&prev.stripped(), &base) {
            Some(m) if m == c => {}
            Some(m) => return Err(fail(format!("strict mode needs {} but the step uses {x}", base.with_shadow(m)))),
            None => return Err(fail(format!("no shadow of {base} survives stripping"))),
        }
        if let Some(cs) = prev.deleted.get(&base) {
            if cs.iter().any(|&d| d >= c) {
                return Err(Error::Internal(format!(
                    "step {r}: {x} does not exceed an earlier deleted shadow of {base}"
                )));
            }
        }
    }
    let mut next = TraceState {
        r,
        current: match step.mv {
            Move::D => prev.current.delete_vertex(x)?,
            Move::L => prev.current.contract_vertex(x)?,
        },
        contracted: prev.contracted.clone(),
        deleted: prev.deleted.clone(),
        reduced_weights: vec![],
    };
    match step.mv {
        Move::D => next.deleted.entry(base).or_default().push(c),
        Move::L => {
            next.contracted.insert(base, c);
        }
    }
    next.reduced_weights = reduced_weights(origin, &next.contracted);
    Ok(next)
}

/// States `0..=len(steps)`; state 0 is the expansion of the origin.
pub fn apply_trace(origin: &WeightedHypergraph, steps: &[Step], strict_min_shadow: bool) -> Result<Vec<TraceState>> {
    let mut states = vec![initial_state(origin)?];
    for step in steps {
        let next = advance(origin, states.last().unwrap(), step, strict_min_shadow)?;
        states.push(next);
    }
    Ok(states)
}

/// Strict lower bounds on the shadows of each base of `F_k ∖ A_r`: a
/// constructible tuple must exceed every shadow deleted from a base in
/// `B_r ∖ A_r`.
fn lower_bounds(state: &TraceState, bases: &[Vertex]) -> Vec<u32> {
    bases
        .iter()
        .map(|x| {
            if state.contracted.contains_key(x) {
                0
            } else {
                state.deleted.get(x).and_then(|cs| cs.iter().max().copied()).unwrap_or(0)
            }
        })
        .collect()
}

fn free_bases(state: &TraceState, f: &Face) -> Vec<Vertex> {
    f.iter().filter(|x| !state.contracted.contains_key(x)).cloned().collect()
}

/// Whether `E` arises from some edge index `k` of the origin.
pub fn is_constructible(origin: &WeightedHypergraph, state: &TraceState, e: &Face) -> bool {
    let bases: Vec<Vertex> = e.iter().map(Vertex::base_vertex).collect();
    if e.iter().any(|x| !x.is_shadow()) {
        return false;
    }
    let mut distinct = bases.clone();
    distinct.dedup();
    if distinct.len() != bases.len() {
        return false;
    }
    let shadows: Vec<u32> = e.iter().map(|x| x.shadow().unwrap()).collect();
    origin.edges().iter().zip(origin.weights()).enumerate().any(|(k, (f, &l))| {
        let free = free_bases(state, f);
        if free != bases {
            return false;
        }
        let a = free.len() as i64;
        let lower = lower_bounds(state, &free);
        let sum: i64 = shadows.iter().map(|&s| s as i64).sum();
        shadows.iter().zip(&lower).all(|(&s, &lo)| s >= 1 && s <= l && s > lo)
            && sum <= state.reduced_weights[k] as i64 + a - 1
    })
}

/// All constructible sets, for every edge index.
pub fn constructible_sets(origin: &WeightedHypergraph, state: &TraceState) -> Vec<Face> {
    let mut out = Vec::new();
    for (k, (f, &l)) in origin.edges().iter().zip(origin.weights()).enumerate() {
        let free = free_bases(state, f);
        let a = free.len() as i64;
        let bound = state.reduced_weights[k] as i64 + a - 1;
        if bound < 0 {
            continue;
        }
        let lower = lower_bounds(state, &free);
        for t in bounded_tuples(free.len(), l, &lower, bound as u32) {
            out.push(Face::new(free.iter().zip(&t).map(|(x, &c)| x.with_shadow(c)).collect()));
        }
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub r: usize,
    pub forward_ok: bool,
    pub backward_ok: bool,
    /// Current edges that are not constructible.
    pub unconstructible_edges: Vec<Face>,
    /// Constructible sets containing no current edge.
    pub uncovered_sets: Vec<Face>,
    /// Every edge of the stripped hypergraph is constructible. Trivial edges
    /// left behind on a base that a later step uses again can make
    /// `forward_ok` false while this stays true.
    pub stripped_forward_ok: bool,
}

/// Forward: every current edge is constructible. Backward: every
/// constructible set contains a current edge.
pub fn check_constructible_duality(origin: &WeightedHypergraph, state: &TraceState) -> DualityReport {
    let unconstructible_edges: Vec<Face> =
        state.current.edges().iter().filter(|e| !is_constructible(origin, state, e)).cloned().collect();
    let uncovered_sets: Vec<Face> = constructible_sets(origin, state)
        .into_iter()
        .filter(|c| !state.current.edges().iter().any(|e| e.is_subset(c)))
        .collect();
    let stripped_forward_ok = state.stripped().edges().iter().all(|e| is_constructible(origin, state, e));
    DualityReport {
        r: state.r,
        stripped_forward_ok,
        forward_ok: unconstructible_edges.is_empty(),
        backward_ok: uncovered_sets.is_empty(),
        unconstructible_edges,
        uncovered_sets,
    }
}

/// The witness sequence for one move string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessRun {
    pub trace: ReductionTrace,
    pub alpha: usize,
    #[serde(skip)]
    pub states: Vec<TraceState>,
}

/// Builds the witness sequence: at each step the ≺_v-least vertex of the
/// stripped hypergraph whose base is an attachment vertex. Moves beyond the
/// supplied list are taken to be `D`. Stops when no such vertex remains.
pub fn witness_sequence(att: &Attachment, weights: &[u32], moves: &[Move]) -> Result<WitnessRun> {
    if !check_star_condition(att, weights)? {
        return Err(Error::PreconditionViolation(format!("weights {weights:?} violate the weight condition")));
    }
    let origin = WeightedHypergraph::from_attachment(att, weights.to_vec())?;
    let mut states = vec![initial_state(&origin)?];
    let mut steps = Vec::new();
    loop {
        let state = states.last().unwrap();
        let stripped = state.stripped();
        let next = stripped.vertices().iter().find(|x| att.cover.contains(&x.base_vertex())).cloned();
        let Some(x) = next else { break };
        let step = Step { mv: moves.get(steps.len()).copied().unwrap_or(Move::D), vertex: x };
        let s = advance(&origin, state, &step, true)?;
        steps.push(step);
        states.push(s);
    }
    let alpha = steps.len();
    Ok(WitnessRun { trace: ReductionTrace { origin, steps }, alpha, states })
}

/// Every move string of length α, found by extending a prefix while the run
/// it drives is longer than the prefix.
pub fn all_move_patterns(att: &Attachment, weights: &[u32]) -> Result<Vec<Vec<Move>>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![]];
    while let Some(prefix) = stack.pop() {
        let run = witness_sequence(att, weights, &prefix)?;
        if run.alpha > prefix.len() {
            for m in [Move::L, Move::D] {
                let mut p = prefix.clone();
                p.push(m);
                stack.push(p);
            }
        } else {
            out.push(prefix);
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub alpha: usize,
    pub moves: Vec<Move>,
    /// Per-base shadows form a consecutive run taken at consecutive steps,
    /// every move of a run but the last being `D`.
    pub consecutive_runs: bool,
    /// The attached simplex edge is present before each step.
    pub attached_edge: bool,
    /// Each step vertex is shedding in the stripped hypergraph it acts on.
    pub shedding: bool,
    /// After the last step every edge of the stripped hypergraph has support
    /// `F_k ∖ W` for some `k`.
    pub terminal: bool,
    pub failures: Vec<String>,
}

impl WitnessReport {
    pub fn all_pass(&self) -> bool {
        self.consecutive_runs && self.attached_edge && self.shedding && self.terminal
    }
}

pub fn check_witness_properties(att: &Attachment, run: &WitnessRun) -> Result<WitnessReport> {
    let steps = &run.trace.steps;
    let mut failures = Vec::new();

    let mut consecutive_runs = true;
    let mut positions: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    for (q, s) in steps.iter().enumerate() {
        positions.entry(s.vertex.base_vertex()).or_default().push(q);
    }
    for (base, pos) in &positions {
        let contiguous = pos.windows(2).all(|w| w[1] == w[0] + 1);
        let shadows: Vec<u32> = pos.iter().map(|&q| steps[q].vertex.shadow().unwrap()).collect();
        let interval = shadows.windows(2).all(|w| w[1] == w[0] + 1);
        let deletes_first = pos[..pos.len() - 1].iter().all(|&q| steps[q].mv == Move::D);
        if !(contiguous && interval && deletes_first) {
            consecutive_runs = false;
            failures.push(format!("base {base}: shadows {shadows:?} at steps {pos:?} do not form a deletion run"));
        }
    }

    let mut attached_edge = true;
    let mut shedding = true;
    for (r, s) in steps.iter().enumerate() {
        let before = run.states[r].stripped();
        let base = s.vertex.base_vertex();
        let i = att.cover.iter().position(|w| *w == base).ok_or_else(|| {
            Error::Internal(format!("step {} uses {} whose base is not an attachment vertex", r + 1, s.vertex))
        })?;
        match att.distinguished[i] {
            Some(d) => {
                let f = &att.facet_order[d];
                let mut e: Vec<Vertex> = f.iter().filter(|y| **y != base).map(|y| y.with_shadow(1)).collect();
                e.push(s.vertex.clone());
                let e = Face::new(e);
                if !before.has_edge(&e) {
                    attached_edge = false;
                    failures.push(format!("step {}: edge {e} missing", r + 1));
                }
            }
            None => {
                attached_edge = false;
                failures.push(format!("step {}: attachment at {base} has no full simplex", r + 1));
            }
        }
        if !is_shedding_vertex(&before, &s.vertex)? {
            shedding = false;
            failures.push(format!("step {}: {} is not shedding", r + 1, s.vertex));
        }
    }

    let last = run.states.last().unwrap().stripped();
    let supports: Vec<Face> = att
        .facet_order
        .iter()
        .map(|f| Face::new(f.iter().filter(|x| !att.cover.contains(x)).cloned().collect()))
        .collect();
    let mut terminal = true;
    for e in last.edges() {
        let b = Face::new(e.iter().map(Vertex::base_vertex).collect());
        if b.len() != e.len() || !supports.contains(&b) {
            terminal = false;
            failures.push(format!("terminal edge {e} has support {b}, not of the form F_k minus the cover"));
        }
    }

    Ok(WitnessReport {
        alpha: run.alpha,
        moves: steps.iter().map(|s| s.mv).collect(),
        consecutive_runs,
        attached_edge,
        shedding,
        terminal,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::{face, v};

    fn k4_boundary(l: u32) -> WeightedHypergraph {
        let h = Hypergraph::from_edges(vec![
            face(&["x1", "x2", "x3"]),
            face(&["x1", "x2", "x4"]),
            face(&["x1", "x3", "x4"]),
            face(&["x2", "x3", "x4"]),
        ])
        .unwrap();
        WeightedHypergraph::uniform(&h, l)
    }

    #[test]
    fn steps_parse() {
        let s = parse_steps("D:x1#1, L:x1#2,D:x2#1").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[1], Step { mv: Move::L, vertex: v("x1#2") });
        assert!(parse_steps("X:x1#1").is_err());
        assert!(parse_steps("D:x1").is_err());
        assert_eq!(parse_moves("D,L,D").unwrap(), vec![Move::D, Move::L, Move::D]);
    }

    #[test]
    fn empty_trace_is_the_expansion() {
        let o = k4_boundary(2);
        let states = apply_trace(&o, &[], true).unwrap();
        assert_eq!(states.len(), 1);
        assert_eq!(states[0].current, expand_hypergraph(&o).unwrap());
    }

    #[test]
    fn double_contraction_of_a_base_is_rejected() {
        let o = k4_boundary(2);
        let steps = parse_steps("L:x1#1,L:x1#2").unwrap();
        assert!(matches!(apply_trace(&o, &steps, false), Err(Error::TraceInvalid { step: 2, .. })));
    }

    #[test]
    fn strict_mode_rejects_skipped_shadows() {
        let o = k4_boundary(2);
        let steps = parse_steps("D:x1#2").unwrap();
        assert!(matches!(apply_trace(&o, &steps, true), Err(Error::TraceInvalid { step: 1, .. })));
        assert!(apply_trace(&o, &steps, false).is_ok());
    }

    #[test]
    fn reduced_weights_drop_with_contraction_shadow() {
        let o = k4_boundary(3);
        let steps = parse_steps("D:x1#1,L:x1#2").unwrap();
        let states = apply_trace(&o, &steps, true).unwrap();
        // edges through x1 lose c - 1 = 1; the last edge avoids x1.
        assert_eq!(states[2].reduced_weights, vec![2, 2, 2, 3]);
        assert_eq!(states[2].a_set(), vec![v("x1")]);
        assert_eq!(states[2].b_set(), vec![v("x1")]);
    }

    #[test]
    fn duality_along_a_strict_trace() {
        let o = k4_boundary(2);
        let steps = parse_steps("D:x1#1,L:x1#2,D:x2#1").unwrap();
        for s in apply_trace(&o, &steps, true).unwrap() {
            let rep = check_constructible_duality(&o, &s);
            assert!(rep.forward_ok && rep.backward_ok, "{rep:?}");
        }
    }

    #[test]
    fn leftover_trivial_edge_is_not_constructible() {
        let h = Hypergraph::from_edges(vec![face(&["x1", "x2"]), face(&["x2", "x3"])]).unwrap();
        let o = WeightedHypergraph::new(h.vertices().to_vec(), h.edges().to_vec(), vec![1, 2]).unwrap();
        let states = apply_trace(&o, &parse_steps("L:x1#1,L:x2#2").unwrap(), true).unwrap();
        let rep = check_constructible_duality(&o, &states[2]);
        assert_eq!(rep.unconstructible_edges, vec![face(&["x2#1"])]);
        assert!(!rep.forward_ok && rep.backward_ok && rep.stripped_forward_ok);
    }
}
