//! Brute-force oracles shared by the integration tests. Everything here works
//! from the definitions on plain bitmasks and never calls the library's
//! algorithms.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skelvd::construction::WeightedHypergraph;
use skelvd::ideals::Monomial;
use skelvd::trace::{Move, Step};
use skelvd::vertex::{face, v};
use skelvd::{Face, Hypergraph, SimplicialComplex, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn labels(n: usize) -> Vec<Vertex> {
    (1..=n).map(|i| v(&format!("x{i}"))).collect()
}

pub fn faces(sets: &[&[&str]]) -> Vec<Face> {
    let mut out: Vec<Face> = sets.iter().map(|f| face(f)).collect();
    out.sort();
    out
}

fn mask_face(universe: &[Vertex], m: u64) -> Face {
    Face::new(universe.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, x)| x.clone()).collect())
}

fn face_mask(universe: &[Vertex], f: &Face) -> u64 {
    f.iter().map(|x| 1u64 << universe.iter().position(|y| y == x).expect("vertex in universe")).fold(0, |a, b| a | b)
}

fn subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

fn maximal(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable();
    sets.dedup();
    let keep: Vec<u64> = sets.iter().copied().filter(|&a| !sets.iter().any(|&b| b != a && subset(a, b))).collect();
    keep
}

fn minimal(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable();
    sets.dedup();
    sets.iter().copied().filter(|&a| !sets.iter().any(|&b| b != a && subset(b, a))).collect()
}

/// A random simple hypergraph on at most `max_v` vertices.
pub fn random_hypergraph(r: &mut ChaCha8Rng, max_v: usize, max_e: usize, max_size: usize) -> Hypergraph {
    let n = r.gen_range(1..=max_v);
    let e = r.gen_range(0..=max_e);
    let mut sets = Vec::new();
    for _ in 0..e {
        let size = r.gen_range(1..=max_size.min(n));
        let mut m = 0u64;
        while (m.count_ones() as usize) < size {
            m |= 1 << r.gen_range(0..n);
        }
        sets.push(m);
    }
    let universe = labels(n);
    let edges = minimal(sets).into_iter().map(|m| mask_face(&universe, m)).collect();
    Hypergraph::new(universe, edges).unwrap()
}

/// A random complex with at most `max_v` vertices and `max_f` facets.
pub fn random_complex(r: &mut ChaCha8Rng, max_v: usize, max_f: usize) -> SimplicialComplex {
    let n = r.gen_range(1..=max_v);
    let f = r.gen_range(1..=max_f);
    let mut sets = Vec::new();
    for _ in 0..f {
        let size = r.gen_range(1..=n.min(4));
        let mut m = 0u64;
        while (m.count_ones() as usize) < size {
            m |= 1 << r.gen_range(0..n);
        }
        sets.push(m);
    }
    let universe = labels(n);
    SimplicialComplex::from_facets(maximal(sets).into_iter().map(|m| mask_face(&universe, m)).collect()).unwrap()
}

/// Every nonempty antichain of nonempty subsets of an `n`-set.
pub fn all_antichains(n: usize) -> Vec<Vec<u64>> {
    let subsets: Vec<u64> = (1..1u64 << n).collect();
    let mut out = Vec::new();
    fn rec(i: usize, subsets: &[u64], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == subsets.len() {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        rec(i + 1, subsets, cur, out);
        let s = subsets[i];
        if cur.iter().all(|&c| !subset(c, s) && !subset(s, c)) {
            cur.push(s);
            rec(i + 1, subsets, cur, out);
            cur.pop();
        }
    }
    rec(0, &subsets, &mut Vec::new(), &mut out);
    out
}

pub fn complex_from_masks(n: usize, facets: &[u64]) -> SimplicialComplex {
    let universe = labels(n);
    SimplicialComplex::from_facets(facets.iter().map(|&m| mask_face(&universe, m)).collect()).unwrap()
}

/// Forest by definition: every nonempty set of facets has a leaf, where `F`
/// is a leaf if it is alone or some other facet `G` contains `F ∩ H` for
/// every other `H`.
pub fn forest_by_leaves(c: &SimplicialComplex) -> bool {
    let u = c.universe().to_vec();
    let fs: Vec<u64> = c.facets().iter().map(|f| face_mask(&u, f)).collect();
    let t = fs.len();
    (1u32..1 << t).all(|sel| {
        let sub: Vec<u64> = (0..t).filter(|i| sel >> i & 1 == 1).map(|i| fs[i]).collect();
        if sub.len() == 1 {
            return true;
        }
        (0..sub.len()).any(|i| {
            (0..sub.len()).any(|j| j != i && (0..sub.len()).all(|h| h == i || subset(sub[i] & sub[h], sub[j])))
        })
    })
}

/// Minimal vertex covers by subset enumeration.
pub fn brute_min_covers(h: &Hypergraph) -> Vec<Face> {
    let u = h.vertices().to_vec();
    let es: Vec<u64> = h.edges().iter().map(|e| face_mask(&u, e)).collect();
    let covers: Vec<u64> = (0..1u64 << u.len()).filter(|&c| es.iter().all(|&e| e & c != 0)).collect();
    let mut out: Vec<Face> = minimal(covers).into_iter().map(|m| mask_face(&u, m)).collect();
    out.sort();
    out
}

/// Facets of the independence complex, by subset enumeration.
fn independence_facets(h: &Hypergraph) -> Vec<u64> {
    let u = h.vertices().to_vec();
    let es: Vec<u64> = h.edges().iter().map(|e| face_mask(&u, e)).collect();
    let indep: Vec<u64> = (0..1u64 << u.len()).filter(|&s| es.iter().all(|&e| !subset(e, s))).collect();
    maximal(indep)
}

/// Vertex decomposability of a complex given by its facets, straight from
/// the definition: a simplex, or some vertex whose link and deletion are
/// vertex decomposable with no facet of the deletion lying in the link.
pub fn complex_vd(facets: Vec<u64>, memo: &mut HashMap<Vec<u64>, bool>) -> bool {
    let facets = maximal(facets);
    if facets.len() <= 1 {
        return true;
    }
    if let Some(&b) = memo.get(&facets) {
        return b;
    }
    let support = facets.iter().fold(0, |a, &b| a | b);
    let mut ok = false;
    for x in 0..64 {
        let xb = 1u64 << x;
        if support & xb == 0 {
            continue;
        }
        let link = maximal(facets.iter().filter(|&&f| f & xb != 0).map(|&f| f & !xb).collect());
        let del = maximal(facets.iter().map(|&f| f & !xb).collect());
        let shedding = del.iter().all(|&d| !link.iter().any(|&l| subset(d, l)));
        if shedding && complex_vd(link, memo) && complex_vd(del, memo) {
            ok = true;
            break;
        }
    }
    memo.insert(facets, ok);
    ok
}

pub fn hypergraph_vd_oracle(h: &Hypergraph) -> bool {
    assert!(h.vertices().len() <= 22, "oracle is exponential in the vertex count");
    complex_vd(independence_facets(h), &mut HashMap::new())
}

/// Vertices whose deletion from the independence complex is a shedding move.
pub fn shedding_oracle(h: &Hypergraph) -> Vec<Vertex> {
    let s = h.strip_isolated();
    let u = s.vertices().to_vec();
    let facets = independence_facets(&s);
    (0..u.len())
        .filter(|&x| {
            let xb = 1u64 << x;
            let link = maximal(facets.iter().filter(|&&f| f & xb != 0).map(|&f| f & !xb).collect());
            let del = maximal(facets.iter().map(|&f| f & !xb).collect());
            del.iter().all(|&d| !link.iter().any(|&l| subset(d, l)))
        })
        .map(|x| u[x].clone())
        .collect()
}

/// Minimal generators of `J(H)^(ℓ)`: exponent vectors meeting every edge
/// with total at least `ℓ`, minimal under lowering any coordinate.
pub fn symbolic_power_oracle(h: &Hypergraph, l: u32) -> BTreeSet<Monomial> {
    let u = h.vertices().to_vec();
    let es: Vec<Vec<usize>> =
        h.edges().iter().map(|e| e.iter().map(|x| u.iter().position(|y| y == x).unwrap()).collect()).collect();
    let ok = |e: &[u32]| es.iter().all(|f| f.iter().map(|&i| e[i]).sum::<u32>() >= l);
    let mut out = BTreeSet::new();
    let mut e = vec![0u32; u.len()];
    loop {
        if ok(&e)
            && (0..u.len()).all(|i| {
                if e[i] == 0 {
                    return true;
                }
                let mut lower = e.clone();
                lower[i] -= 1;
                !ok(&lower)
            })
        {
            out.insert(Monomial::from_exponents(u.iter().cloned().zip(e.iter().copied()).filter(|(_, k)| *k > 0)));
        }
        let mut i = 0;
        loop {
            if i == u.len() {
                return out;
            }
            if e[i] < l {
                e[i] += 1;
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// Membership in `J(H)^(ℓ)` by edge sums.
pub fn in_symbolic_power(h: &Hypergraph, l: u32, m: &Monomial) -> bool {
    h.edges().iter().all(|f| f.iter().map(|x| m.exponent(x)).sum::<u32>() >= l)
}

/// `H(ℓ_1, ..., ℓ_t)` by direct tuple enumeration.
pub fn expansion_oracle(wh: &WeightedHypergraph) -> BTreeSet<Face> {
    let mut out = BTreeSet::new();
    for (e, &l) in wh.edges().iter().zip(wh.weights()) {
        let a = e.len() as u32;
        let xs = e.vertices();
        let total = (l as u64).pow(a);
        for code in 0..total {
            let mut c = code;
            let f: Vec<u32> = (0..a)
                .map(|_| {
                    let d = (c % l as u64) as u32 + 1;
                    c /= l as u64;
                    d
                })
                .collect();
            if f.iter().sum::<u32>() <= l + a - 1 {
                out.insert(Face::new(xs.iter().zip(&f).map(|(x, &d)| x.with_shadow(d)).collect()));
            }
        }
    }
    out
}

const P: i64 = 1_000_000_007;

fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = pow_mod(rows[rank][c], P - 2);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % P;
                for k in c..cols {
                    rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % P + P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    b = (b % P + P) % P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Reduced Betti numbers modulo a large prime, index 0 for degree -1.
pub fn betti_mod_p(c: &SimplicialComplex) -> Vec<u64> {
    if c.is_void() {
        return vec![];
    }
    let u = c.universe().to_vec();
    let fs: Vec<u64> = c.facets().iter().map(|f| face_mask(&u, f)).collect();
    let mut by_size: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
    let all: BTreeSet<u64> = fs.iter().flat_map(|&f| subsets_of(f)).collect();
    for s in all {
        by_size.entry(s.count_ones()).or_default().push(s);
    }
    let top = *by_size.keys().max().unwrap() as usize;
    let count = |k: usize| by_size.get(&(k as u32)).map_or(0, Vec::len);
    // rank of the boundary from size k to size k-1
    let rank = |k: usize| -> usize {
        if k == 0 || count(k) == 0 || count(k - 1) == 0 {
            return 0;
        }
        let lower = &by_size[&((k - 1) as u32)];
        let rows: Vec<Vec<i64>> = by_size[&(k as u32)]
            .iter()
            .map(|&s| {
                let mut row = vec![0i64; lower.len()];
                let bits: Vec<usize> = (0..64).filter(|i| s >> i & 1 == 1).collect();
                for (pos, &b) in bits.iter().enumerate() {
                    let t = s & !(1u64 << b);
                    let j = lower.iter().position(|&x| x == t).unwrap();
                    row[j] = if pos % 2 == 0 { 1 } else { P - 1 };
                }
                row
            })
            .collect();
        rank_mod_p(rows)
    };
    (0..=top).map(|k| (count(k) - rank(k) - rank(k + 1)) as u64).collect()
}

fn subsets_of(f: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut s = f;
    loop {
        out.push(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & f;
    }
    out
}

/// Constructibility from the definition, with the bookkeeping rebuilt from
/// the raw step list: `A` holds contracted bases with their shadow, `B` the
/// deleted shadows per base.
pub struct ReplayBook {
    pub a: BTreeMap<Vertex, u32>,
    pub b: BTreeMap<Vertex, Vec<u32>>,
}

pub fn replay_book(steps: &[Step]) -> ReplayBook {
    let mut a = BTreeMap::new();
    let mut b: BTreeMap<Vertex, Vec<u32>> = BTreeMap::new();
    for s in steps {
        let base = s.vertex.base_vertex();
        let c = s.vertex.shadow().unwrap();
        match s.mv {
            Move::L => {
                a.insert(base, c);
            }
            Move::D => b.entry(base).or_default().push(c),
        }
    }
    ReplayBook { a, b }
}

/// All constructible sets, by enumerating `[ℓ_k]^a` for every edge index.
pub fn constructible_oracle(origin: &WeightedHypergraph, book: &ReplayBook) -> BTreeSet<Face> {
    let mut out = BTreeSet::new();
    for (f, &l) in origin.edges().iter().zip(origin.weights()) {
        let d: i64 = f.iter().filter_map(|x| book.a.get(x)).map(|&c| c as i64 - 1).sum();
        let lr = (l as i64 - d).max(0);
        let free: Vec<&Vertex> = f.iter().filter(|x| !book.a.contains_key(*x)).collect();
        let a = free.len() as u32;
        if l == 0 {
            continue;
        }
        let total = (l as u64).pow(a);
        for code in 0..total {
            let mut c = code;
            let t: Vec<u32> = (0..a)
                .map(|_| {
                    let q = (c % l as u64) as u32 + 1;
                    c /= l as u64;
                    q
                })
                .collect();
            let above_deleted =
                free.iter().zip(&t).all(|(x, &s)| book.b.get(*x).map_or(true, |cs| cs.iter().all(|&c| s > c)));
            if above_deleted && t.iter().map(|&s| s as i64).sum::<i64>() <= lr + a as i64 - 1 {
                out.insert(Face::new(free.iter().zip(&t).map(|(x, &s)| x.with_shadow(s)).collect()));
            }
        }
    }
    out
}
