//! Vertex labels, shadow vertices and faces.
//!
//! A vertex is a base label such as `x3`, optionally carrying a shadow index
//! (`x3#2`). Shadow vertices are produced by the duplication construction and
//! by polarization, and both use the same textual form so that the two sides
//! of the polarization identity compare without any renaming.
//!
//! Vertices are ordered by base label under natural ordering (`x2 < x10`),
//! then by shadow. This is the order induced by index; [`cmp_shadow`] gives
//! the order induced by shadows.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    base: String,
    shadow: Option<u32>,
}

fn check_base(base: &str) -> Result<()> {
    if base.is_empty() {
        return Err(invalid("empty vertex label"));
    }
    if base.chars().any(|c| c == '#' || c.is_whitespace() || c == '*' || c == '^') {
        return Err(invalid(format!("illegal character in vertex label {base:?}")));
    }
    Ok(())
}

impl Vertex {
    /// A plain vertex (no shadow index).
    pub fn plain(base: &str) -> Result<Self> {
        check_base(base)?;
        Ok(Vertex { base: base.to_owned(), shadow: None })
    }

    /// The shadow vertex `base#shadow`.
    pub fn shadowed(base: &str, shadow: u32) -> Result<Self> {
        check_base(base)?;
        if shadow == 0 {
            return Err(invalid(format!("shadow index of {base} must be positive")));
        }
        Ok(Vertex { base: base.to_owned(), shadow: Some(shadow) })
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn shadow(&self) -> Option<u32> {
        self.shadow
    }

    pub fn is_shadow(&self) -> bool {
        self.shadow.is_some()
    }

    /// The plain vertex this one shadows (itself if already plain).
    pub fn base_vertex(&self) -> Vertex {
        Vertex { base: self.base.clone(), shadow: None }
    }

    /// `self#k`, for a plain vertex.
    pub fn with_shadow(&self, k: u32) -> Vertex {
        debug_assert!(k > 0);
        Vertex { base: self.base.clone(), shadow: Some(k) }
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('#') {
            None => Vertex::plain(s),
            Some((base, k)) => {
                let k: u32 = k.parse().map_err(|_| Error::Parse(format!("bad shadow index in {s:?}")))?;
                Vertex::shadowed(base, k)
            }
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.shadow {
            None => f.write_str(&self.base),
            Some(k) => write!(f, "{}#{}", self.base, k),
        }
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.base, &other.base).then(self.shadow.cmp(&other.shadow))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Natural string order: runs of ASCII digits compare numerically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (a, b) = (a.as_bytes(), b.as_bytes());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].is_ascii_digit() && b[j].is_ascii_digit() {
            let si = i;
            while i < a.len() && a[i].is_ascii_digit() {
                i += 1;
            }
            let sj = j;
            while j < b.len() && b[j].is_ascii_digit() {
                j += 1;
            }
            let da = trim_zeros(&a[si..i]);
            let db = trim_zeros(&b[sj..j]);
            let ord = da.len().cmp(&db.len()).then_with(|| da.cmp(db));
            if ord != Ordering::Equal {
                return ord;
            }
            // equal values: fewer leading zeros first
            let ord = (i - si).cmp(&(j - sj));
            if ord != Ordering::Equal {
                return ord;
            }
        } else {
            let ord = a[i].cmp(&b[j]);
            if ord != Ordering::Equal {
                return ord;
            }
            i += 1;
            j += 1;
        }
    }
    (a.len() - i).cmp(&(b.len() - j))
}

fn trim_zeros(d: &[u8]) -> &[u8] {
    let k = d.iter().take_while(|&&c| c == b'0').count();
    &d[k..]
}

/// Order induced by shadows: shadow first, then base. Plain vertices count as
/// shadow 1.
pub fn cmp_shadow(u: &Vertex, v: &Vertex) -> Ordering {
    u.shadow
        .unwrap_or(1)
        .cmp(&v.shadow.unwrap_or(1))
        .then_with(|| natural_cmp(&u.base, &v.base))
        .then(u.shadow.cmp(&v.shadow))
}

/// Order induced by index: base first, then shadow. Same as `Ord`.
pub fn cmp_index(u: &Vertex, v: &Vertex) -> Ordering {
    u.cmp(v)
}

/// A finite set of vertices kept sorted and duplicate free.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Face(Vec<Vertex>);

impl Face {
    pub fn new(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort();
        vertices.dedup();
        Face(vertices)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    /// Parses labels, rejecting duplicates.
    pub fn parse<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let vs = labels.iter().map(|s| s.as_ref().parse()).collect::<Result<Vec<Vertex>>>()?;
        let n = vs.len();
        let f = Face::new(vs);
        if f.len() != n {
            return Err(invalid("repeated vertex in face"));
        }
        Ok(f)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|F| - 1`; the empty face has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                match w.cmp(v) {
                    Ordering::Less => continue,
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0.iter().filter(|v| other.contains(v)).cloned().collect())
    }

    pub fn union(&self, other: &Face) -> Face {
        Face::new(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    pub fn minus(&self, other: &Face) -> Face {
        Face(self.0.iter().filter(|v| !other.contains(v)).cloned().collect())
    }

    pub fn without(&self, v: &Vertex) -> Face {
        Face(self.0.iter().filter(|w| *w != v).cloned().collect())
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.0.iter().all(|v| !other.contains(v))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vertex> {
        self.0.iter()
    }

    pub fn labels(&self) -> Vec<String> {
        self.0.iter().map(Vertex::label).collect()
    }
}

impl FromIterator<Vertex> for Face {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        Face::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Face {
    type Item = &'a Vertex;
    type IntoIter = std::slice::Iter<'a, Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Face {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<String>::deserialize(d)?;
        Face::parse(&labels).map_err(serde::de::Error::custom)
    }
}

/// Removes duplicates and every set properly contained in another, then sorts.
pub fn minimalize_antichain(mut sets: Vec<Face>) -> Vec<Face> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Keeps only inclusion-minimal sets (the clutter of minimal elements), sorted.
pub fn minimal_sets(mut sets: Vec<Face>) -> Vec<Face> {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Parses a list of labels into vertices.
pub fn parse_vertices<S: AsRef<str>>(labels: &[S]) -> Result<Vec<Vertex>> {
    labels.iter().map(|s| s.as_ref().parse()).collect()
}

/// Shorthand used throughout tests and fixtures.
pub fn v(label: &str) -> Vertex {
    label.parse().expect("valid vertex label")
}

/// Shorthand: a face from labels.
pub fn face(labels: &[&str]) -> Face {
    Face::parse(labels).expect("valid face")
}
