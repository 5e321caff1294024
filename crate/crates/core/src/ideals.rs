//! Monomial ideals over named variables.
//!
//! Variables share the vertex label space, so the polarization of `x^k`
//! produces exactly the shadow vertices `x#1, ..., x#k` used by the
//! duplication construction. Heavy operations convert to dense exponent
//! vectors over the ideal's variable list.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::{self, Mask};
use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex::{Face, Vertex};

/// `∏ x^a` with every stored exponent positive.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(BTreeMap<Vertex, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(x: Vertex) -> Self {
        Monomial(BTreeMap::from([(x, 1)]))
    }

    pub fn from_exponents<I: IntoIterator<Item = (Vertex, u32)>>(it: I) -> Self {
        let mut m = BTreeMap::new();
        for (x, a) in it {
            if a > 0 {
                *m.entry(x).or_insert(0) += a;
            }
        }
        Monomial(m)
    }

    /// Squarefree monomial `∏_{x ∈ F} x`.
    pub fn from_face(f: &Face) -> Self {
        Monomial(f.iter().map(|x| (x.clone(), 1)).collect())
    }

    pub fn exponent(&self, x: &Vertex) -> u32 {
        self.0.get(x).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&Vertex, u32)> {
        self.0.iter().map(|(x, &a)| (x, a))
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.values().all(|&a| a == 1)
    }

    pub fn support(&self) -> Face {
        Face::new(self.0.keys().cloned().collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(x, &a)| other.exponent(x) >= a)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.exponents().chain(other.exponents()).map(|(x, a)| (x.clone(), a)))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (x, &a) in &other.0 {
            let e = m.entry(x.clone()).or_insert(0);
            *e = (*e).max(a);
        }
        Monomial(m)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.0.iter().map(|(x, &a)| (x.clone(), a.min(other.exponent(x)))))
    }

    /// `self : other = self / gcd(self, other)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.0.iter().map(|(x, &a)| (x.clone(), a.saturating_sub(other.exponent(x)))))
    }

    /// The single variable `x` when `self = x`.
    pub fn as_variable(&self) -> Option<&Vertex> {
        match self.0.iter().next() {
            Some((x, 1)) if self.0.len() == 1 => Some(x),
            _ => None,
        }
    }
}

impl Ord for Monomial {
    /// Degree first, then lex with the larger exponent of the earliest
    /// variable first (`x1^2 < x1*x2 < x2^2`).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let vars: BTreeSet<&Vertex> = self.0.keys().chain(other.0.keys()).collect();
            for x in vars {
                match other.exponent(x).cmp(&self.exponent(x)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (x, &a)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if a == 1 {
                write!(f, "{x}")?;
            } else {
                write!(f, "{x}^{a}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// `token ('^' positive-int)?` joined by `*`; `1` is the unit.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        let mut m = BTreeMap::new();
        for part in s.split('*') {
            let (var, exp) = match part.split_once('^') {
                Some((v, e)) => {
                    let e: u32 = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))?;
                    if e == 0 {
                        return Err(Error::Parse(format!("zero exponent in {part:?}")));
                    }
                    (v.trim(), e)
                }
                None => (part.trim(), 1),
            };
            let x: Vertex = var.parse().map_err(|e: Error| Error::Parse(format!("{part:?}: {e}")))?;
            *m.entry(x).or_insert(0) += exp;
        }
        Ok(Monomial(m))
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Ideal given by its minimal generators, sorted by degree then lex.
///
/// No generators is the zero ideal; the generator `1` is the unit ideal.
/// Equality compares generators only; the variable list is the ambient ring.
#[derive(Clone)]
pub struct MonomialIdeal {
    variables: Vec<Vertex>,
    gens: Vec<Monomial>,
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for MonomialIdeal {}

impl std::hash::Hash for MonomialIdeal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.gens.hash(state);
    }
}

/// Dense exponent vectors over a fixed variable list.
type Dense = Vec<u32>;

fn dense_le(a: &Dense, b: &Dense) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn dense_cmp(a: &Dense, b: &Dense) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

/// Keeps the divisibility-minimal vectors, sorted canonically.
fn minimalize_dense(mut v: Vec<Dense>) -> Vec<Dense> {
    v.sort_by(dense_cmp);
    v.dedup();
    let mut kept: Vec<Dense> = Vec::with_capacity(v.len());
    for m in v {
        if !kept.iter().any(|k| dense_le(k, &m)) {
            kept.push(m);
        }
    }
    kept
}

impl MonomialIdeal {
    /// Minimalizes `gens`; the variable list is extended by any variable the
    /// generators use.
    pub fn new(variables: Vec<Vertex>, gens: Vec<Monomial>) -> Self {
        let mut vars: BTreeSet<Vertex> = variables.into_iter().collect();
        for g in &gens {
            vars.extend(g.0.keys().cloned());
        }
        let variables: Vec<Vertex> = vars.into_iter().collect();
        let dense = gens.iter().map(|g| Self::dense_of(&variables, g)).collect();
        let gens = minimalize_dense(dense).iter().map(|d| Self::sparse_of(&variables, d)).collect();
        MonomialIdeal { variables, gens }
    }

    pub fn from_generators(gens: Vec<Monomial>) -> Self {
        Self::new(vec![], gens)
    }

    pub fn zero(variables: Vec<Vertex>) -> Self {
        Self::new(variables, vec![])
    }

    pub fn variables(&self) -> &[Vertex] {
        &self.variables
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Largest generator degree; 0 for the zero ideal.
    pub fn deg_max(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_equigenerated(&self) -> bool {
        self.gens.windows(2).all(|w| w[0].degree() == w[1].degree())
    }

    fn dense_of(vars: &[Vertex], m: &Monomial) -> Dense {
        vars.iter().map(|x| m.exponent(x)).collect()
    }

    fn sparse_of(vars: &[Vertex], d: &Dense) -> Monomial {
        Monomial::from_exponents(vars.iter().cloned().zip(d.iter().copied()))
    }

    fn dense(&self, vars: &[Vertex]) -> Vec<Dense> {
        self.gens.iter().map(|g| Self::dense_of(vars, g)).collect()
    }

    fn union_vars(&self, other: &MonomialIdeal) -> Vec<Vertex> {
        let s: BTreeSet<Vertex> = self.variables.iter().chain(&other.variables).cloned().collect();
        s.into_iter().collect()
    }

    fn from_dense(vars: Vec<Vertex>, dense: Vec<Dense>) -> Self {
        let gens = minimalize_dense(dense).iter().map(|d| Self::sparse_of(&vars, d)).collect();
        MonomialIdeal { variables: vars, gens }
    }

    /// `I ∩ J`, generated by pairwise lcms.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let vars = self.union_vars(other);
        let a = self.dense(&vars);
        let b = other.dense(&vars);
        let mut out = Vec::with_capacity(a.len() * b.len());
        for u in &a {
            for w in &b {
                out.push(u.iter().zip(w).map(|(x, y)| *x.max(y)).collect());
            }
        }
        Self::from_dense(vars, out)
    }

    /// `I · J`.
    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let vars = self.union_vars(other);
        let a = self.dense(&vars);
        let b = other.dense(&vars);
        let mut out = Vec::with_capacity(a.len() * b.len());
        for u in &a {
            for w in &b {
                out.push(u.iter().zip(w).map(|(x, y)| x + y).collect());
            }
        }
        Self::from_dense(vars, out)
    }

    /// `I^ℓ`, `ℓ >= 1`.
    pub fn power(&self, l: u32) -> Result<MonomialIdeal> {
        if l == 0 {
            return Err(invalid("power exponent must be at least 1"));
        }
        let mut acc = self.clone();
        for _ in 1..l {
            acc = acc.product(self);
        }
        Ok(acc)
    }

    /// `I : m`.
    pub fn colon_by_monomial(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.variables.clone(), self.gens.iter().map(|u| u.colon(m)).collect())
    }

    fn require_squarefree(&self, what: &str) -> Result<()> {
        if !self.is_squarefree() {
            return Err(invalid(format!("{what} needs a squarefree ideal")));
        }
        Ok(())
    }

    fn to_masks(&self) -> Result<Vec<Mask>> {
        if self.variables.len() > bits::MAX_VERTICES {
            return Err(Error::BudgetExceeded(format!(
                "{} variables exceeds the {}-variable limit",
                self.variables.len(),
                bits::MAX_VERTICES
            )));
        }
        Ok(self
            .gens
            .iter()
            .map(|g| {
                g.0.keys().fold(0, |m, x| m | bits::bit(self.variables.binary_search(x).expect("variable listed")))
            })
            .collect())
    }

    fn mask_monomial(&self, m: Mask) -> Monomial {
        Monomial(bits::bits(m).map(|i| (self.variables[i].clone(), 1)).collect())
    }

    /// Minimal primes of a squarefree ideal, each as its variable set.
    pub fn minimal_primes(&self) -> Result<Vec<Face>> {
        self.require_squarefree("minimal primes")?;
        let mut out: Vec<Face> = bits::minimal_transversals(&self.to_masks()?)
            .into_iter()
            .map(|m| Face::new(bits::bits(m).map(|i| self.variables[i].clone()).collect()))
            .collect();
        out.sort();
        Ok(out)
    }

    /// `I^∨`: generated by the minimal transversals of the generator supports.
    pub fn alexander_dual(&self) -> Result<MonomialIdeal> {
        self.require_squarefree("the Alexander dual")?;
        let gens = bits::minimal_transversals(&self.to_masks()?).into_iter().map(|m| self.mask_monomial(m)).collect();
        Ok(MonomialIdeal::new(self.variables.clone(), gens))
    }

    /// `℘^ℓ` for the prime generated by `vars`.
    pub fn prime_power(variables: &[Vertex], prime: &Face, l: u32) -> MonomialIdeal {
        let p = MonomialIdeal::new(variables.to_vec(), prime.iter().cloned().map(Monomial::var).collect());
        p.power(l.max(1)).expect("positive exponent")
    }

    /// `I^(ℓ) = ∩ ℘^ℓ` over the minimal primes.
    pub fn symbolic_power(&self, l: u32) -> Result<MonomialIdeal> {
        if l == 0 {
            return Err(invalid("symbolic power exponent must be at least 1"));
        }
        let primes = self.minimal_primes()?;
        let mut acc: Option<MonomialIdeal> = None;
        for p in &primes {
            let q = Self::prime_power(&self.variables, p, l);
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q),
            });
        }
        Ok(acc.unwrap_or_else(|| MonomialIdeal::new(self.variables.clone(), vec![Monomial::one()])))
    }

    /// Replaces `x^k` by `x#1 ⋯ x#k`. Variables that are already shadows
    /// cannot be polarized.
    pub fn polarize(&self) -> Result<MonomialIdeal> {
        if let Some(x) = self.variables.iter().find(|x| x.is_shadow()) {
            return Err(invalid(format!("cannot polarize shadow variable {x}")));
        }
        let mut vars = BTreeSet::new();
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut m = BTreeMap::new();
            for (x, a) in g.exponents() {
                for k in 1..=a {
                    let y = x.with_shadow(k);
                    vars.insert(y.clone());
                    m.insert(y, 1);
                }
            }
            gens.push(Monomial(m));
        }
        Ok(MonomialIdeal::new(vars.into_iter().collect(), gens))
    }

    /// Sends every shadow `x#k` back to `x`.
    pub fn depolarize(&self) -> MonomialIdeal {
        let vars: BTreeSet<Vertex> = self.variables.iter().map(Vertex::base_vertex).collect();
        let gens = self
            .gens
            .iter()
            .map(|g| Monomial::from_exponents(g.exponents().map(|(x, a)| (x.base_vertex(), a))))
            .collect();
        MonomialIdeal::new(vars.into_iter().collect(), gens)
    }

    /// Renames every variable `x` to `x#1`.
    pub fn to_shadow_one(&self) -> MonomialIdeal {
        let vars = self.variables.iter().map(|x| x.with_shadow(1)).collect();
        let gens = self
            .gens
            .iter()
            .map(|g| Monomial::from_exponents(g.exponents().map(|(x, a)| (x.with_shadow(1), a))))
            .collect();
        MonomialIdeal::new(vars, gens)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealDoc {
    #[serde(rename = "type")]
    pub kind: String,
    pub variables: Vec<Vertex>,
    pub generators: Vec<Monomial>,
}

impl From<&MonomialIdeal> for IdealDoc {
    fn from(i: &MonomialIdeal) -> Self {
        IdealDoc { kind: "monomial_ideal".into(), variables: i.variables.clone(), generators: i.gens.clone() }
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IdealDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = IdealDoc::deserialize(d)?;
        if doc.kind != "monomial_ideal" {
            return Err(serde::de::Error::custom(format!("expected type \"monomial_ideal\", found {:?}", doc.kind)));
        }
        Ok(MonomialIdeal::new(doc.variables, doc.generators))
    }
}

/// `I(H)`, generated by the edge products.
pub fn edge_ideal(h: &Hypergraph) -> MonomialIdeal {
    MonomialIdeal::new(h.vertices().to_vec(), h.edges().iter().map(Monomial::from_face).collect())
}

/// `J(H)`, generated by the minimal vertex cover products.
pub fn cover_ideal(h: &Hypergraph) -> Result<MonomialIdeal> {
    let covers = h.minimal_vertex_covers()?;
    Ok(MonomialIdeal::new(h.vertices().to_vec(), covers.iter().map(Monomial::from_face).collect()))
}

pub const DEFAULT_LQ_CAP: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum LinearQuotients {
    Found { order: Vec<Monomial> },
    NoneExists,
    CapExceeded { nodes: u64 },
}

/// Generators in a fixed order as the search sees them.
enum Gens {
    Squarefree(Vec<Mask>),
    General(Vec<Dense>),
}

impl Gens {
    fn len(&self) -> usize {
        match self {
            Gens::Squarefree(v) => v.len(),
            Gens::General(v) => v.len(),
        }
    }

    /// `⟨placed⟩ : u_i` is generated by variables: every `u_j : u_i` is
    /// divisible by some `u_l : u_i` that is a single variable.
    fn admissible(&self, placed: &[usize], i: usize) -> bool {
        match self {
            Gens::Squarefree(g) => {
                let ui = g[i];
                let mut singles: Mask = 0;
                for &l in placed {
                    let q = g[l] & !ui;
                    if q.count_ones() == 1 {
                        singles |= q;
                    }
                }
                placed.iter().all(|&j| g[j] & !ui & singles != 0)
            }
            Gens::General(g) => {
                let ui = &g[i];
                let colon = |u: &Dense| -> Dense { u.iter().zip(ui).map(|(a, b)| a.saturating_sub(*b)).collect() };
                let mut singles = vec![false; ui.len()];
                for &l in placed {
                    let q = colon(&g[l]);
                    if q.iter().sum::<u32>() == 1 {
                        singles[q.iter().position(|&e| e == 1).unwrap()] = true;
                    }
                }
                placed.iter().all(|&j| colon(&g[j]).iter().zip(&singles).any(|(&e, &s)| s && e > 0))
            }
        }
    }
}

struct LqSearch<'a> {
    gens: &'a Gens,
    failed: HashSet<Vec<u64>>,
    nodes: u64,
    cap: u64,
}

fn set_key(placed: &[usize], n: usize) -> Vec<u64> {
    let mut k = vec![0u64; n.div_ceil(64)];
    for &i in placed {
        k[i / 64] |= 1 << (i % 64);
    }
    k
}

impl LqSearch<'_> {
    /// `Err(())` when the node cap is hit.
    fn extend(&mut self, placed: &mut Vec<usize>, used: &mut [bool]) -> std::result::Result<bool, ()> {
        let n = self.gens.len();
        if placed.len() == n {
            return Ok(true);
        }
        let key = set_key(placed, n);
        if self.failed.contains(&key) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(());
        }
        for i in 0..n {
            if used[i] || !self.gens.admissible(placed, i) {
                continue;
            }
            used[i] = true;
            placed.push(i);
            if self.extend(placed, used)? {
                return Ok(true);
            }
            placed.pop();
            used[i] = false;
        }
        self.failed.insert(key);
        Ok(false)
    }
}

/// Searches for a linear-quotients order: candidates in canonical generator
/// order, depth first, with a memo of generator sets from which no completion
/// exists. The admissibility of a generator depends only on the set placed
/// before it, which is what makes the memo sound.
pub fn linear_quotients_order(i: &MonomialIdeal, cap: u64) -> LinearQuotients {
    if i.gens.is_empty() {
        return LinearQuotients::Found { order: vec![] };
    }
    let gens = match i.to_masks() {
        Ok(m) if i.is_squarefree() => Gens::Squarefree(m),
        _ => Gens::General(i.dense(&i.variables)),
    };
    let mut search = LqSearch { gens: &gens, failed: HashSet::new(), nodes: 0, cap };
    let mut placed = Vec::with_capacity(gens.len());
    let mut used = vec![false; gens.len()];
    match search.extend(&mut placed, &mut used) {
        Ok(true) => LinearQuotients::Found { order: placed.iter().map(|&k| i.gens[k].clone()).collect() },
        Ok(false) => LinearQuotients::NoneExists,
        Err(()) => LinearQuotients::CapExceeded { nodes: search.nodes },
    }
}

/// Checks a proposed order against the colon criterion.
pub fn is_linear_quotients_order(order: &[Monomial]) -> bool {
    (1..order.len()).all(|i| {
        let ui = &order[i];
        let vars: Vec<Vertex> = order[..i].iter().filter_map(|u| u.colon(ui).as_variable().cloned()).collect();
        order[..i].iter().all(|uj| {
            let q = uj.colon(ui);
            vars.iter().any(|x| q.exponent(x) > 0)
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "certificate", rename_all = "snake_case")]
pub enum ClCertificate {
    LinearQuotients { order: Vec<Monomial> },
    Unknown,
}

/// Linear quotients certify componentwise linearity; their absence proves
/// nothing, so the only other answer is `Unknown`.
pub fn cl_certificate(i: &MonomialIdeal, cap: u64) -> ClCertificate {
    match linear_quotients_order(i, cap) {
        LinearQuotients::Found { order } => ClCertificate::LinearQuotients { order },
        _ => ClCertificate::Unknown,
    }
}

/// Regularity when a componentwise-linearity certificate exists.
pub fn reg_if_cl(i: &MonomialIdeal, cap: u64) -> Option<u32> {
    match cl_certificate(i, cap) {
        ClCertificate::LinearQuotients { .. } => Some(i.deg_max()),
        ClCertificate::Unknown => None,
    }
}
