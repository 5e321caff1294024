//! Small complexes and attachments used by the tests, the acceptance suite
//! and the command-line tool.

use std::collections::BTreeMap;

use crate::complex::{attach_skeletons, AttachOptions, Attachment, SimplicialComplex, SkeletonPart, SkeletonSpec};
use crate::error::{invalid, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex::{face, v, Face};

fn complex(facets: &[&[&str]]) -> SimplicialComplex {
    SimplicialComplex::from_facets(facets.iter().map(|f| face(f)).collect()).expect("fixture is well formed")
}

fn single(apex: &str, vertices: &[&str], s: usize) -> SkeletonSpec {
    SkeletonSpec { apex: v(apex), parts: vec![SkeletonPart { vertices: face(vertices), s }] }
}

pub fn single_edge() -> SimplicialComplex {
    complex(&[&["x1", "x2"]])
}

pub fn triangle_graph() -> SimplicialComplex {
    complex(&[&["x1", "x2"], &["x1", "x3"], &["x2", "x3"]])
}

/// The triangle `{x2,x3,x5}` with a triangle glued on each of its edges.
/// Not a forest; `{x5}` is a cycle cover.
pub fn flapped_triangle() -> SimplicialComplex {
    complex(&[&["x1", "x2", "x3"], &["x2", "x3", "x5"], &["x2", "x4", "x5"], &["x3", "x5", "x6"]])
}

/// The four triangles on `{x1,...,x4}`.
pub fn k4_boundary() -> SimplicialComplex {
    complex(&[&["x1", "x2", "x3"], &["x1", "x2", "x4"], &["x1", "x3", "x4"], &["x2", "x3", "x4"]])
}

/// Eight triples on `x1..x10` where deleting `x5` isolates `x2, x4, x8, x10`
/// and contracting `x5` isolates `x6`.
pub fn isolation_hypergraph() -> Hypergraph {
    Hypergraph::new(
        (1..=10).map(|i| v(&format!("x{i}"))).collect(),
        vec![
            face(&["x1", "x3", "x5"]),
            face(&["x2", "x3", "x5"]),
            face(&["x1", "x4", "x5"]),
            face(&["x1", "x3", "x6"]),
            face(&["x5", "x7", "x9"]),
            face(&["x6", "x7", "x9"]),
            face(&["x5", "x8", "x9"]),
            face(&["x5", "x7", "x10"]),
        ],
    )
    .expect("fixture is well formed")
}

/// Four triangles in a ring through `x1, x3, x5, x7`.
pub fn triangle_ring() -> SimplicialComplex {
    complex(&[&["x1", "x2", "x3"], &["x3", "x4", "x5"], &["x5", "x6", "x7"], &["x1", "x7", "x8"]])
}

/// The ring facets followed by the attached triangle, in the order the
/// weight tuple `(2,1,1,2,1)` refers to.
pub fn ring_listed_order() -> Vec<Face> {
    [["x1", "x2", "x3"], ["x3", "x4", "x5"], ["x5", "x6", "x7"], ["x1", "x7", "x8"], ["x1", "x9", "x10"]]
        .iter()
        .map(|f| face(f))
        .collect()
}

/// The ring with the triangle `{x1,x9,x10}` attached at the cycle cover `{x1}`.
pub fn ring_with_triangle() -> Attachment {
    let mut a = BTreeMap::new();
    a.insert(v("x1"), single("x1", &["x1", "x9", "x10"], 2));
    attach_skeletons(&triangle_ring(), &a, AttachOptions::default()).expect("fixture is well formed")
}

/// Weights on `ring_with_triangle` that violate the weight condition and
/// whose expansion is not vertex decomposable.
pub fn ring_bad_weights() -> Vec<u32> {
    weights_by_facet(&ring_with_triangle(), &ring_listed_order(), &[2, 1, 1, 2, 1]).expect("fixture is well formed")
}

/// `flapped_triangle` with the triangle `{x5,x7,x8}` attached at `x5`.
pub fn flapped_with_triangle() -> Attachment {
    let mut a = BTreeMap::new();
    a.insert(v("x5"), single("x5", &["x5", "x7", "x8"], 2));
    attach_skeletons(&flapped_triangle(), &a, AttachOptions::default()).expect("fixture is well formed")
}

/// The 4-cycle with the (pure) 2-skeleton of the tetrahedron `{x1,x5,x6,x7}`
/// attached at `x1`.
pub fn square_with_pure_skeleton() -> Attachment {
    let square = complex(&[&["x1", "x2"], &["x2", "x3"], &["x3", "x4"], &["x1", "x4"]]);
    let mut a = BTreeMap::new();
    a.insert(v("x1"), single("x1", &["x1", "x5", "x6", "x7"], 2));
    let opts = AttachOptions { allow_pure: true, ..Default::default() };
    attach_skeletons(&square, &a, opts).expect("fixture is well formed")
}

/// The ring with a whisker at each vertex of the vertex cover
/// `{x2,x4,x6,x8}`, which is not a cycle cover.
pub fn whiskered_ring() -> Attachment {
    let mut a = BTreeMap::new();
    for (x, y) in [("x2", "x9"), ("x4", "x10"), ("x6", "x11"), ("x8", "x12")] {
        a.insert(v(x), single(x, &[x, y], 1));
    }
    let opts = AttachOptions { require_cycle_cover: false, ..Default::default() };
    attach_skeletons(&triangle_ring(), &a, opts).expect("fixture is well formed")
}

/// Reorders weights given against `listed` into `att.facet_order`.
pub fn weights_by_facet(att: &Attachment, listed: &[Face], weights: &[u32]) -> Result<Vec<u32>> {
    if listed.len() != weights.len() || listed.len() != att.facet_order.len() {
        return Err(invalid(format!(
            "{} facets and {} weights listed for {} facets",
            listed.len(),
            weights.len(),
            att.facet_order.len()
        )));
    }
    att.facet_order
        .iter()
        .map(|f| {
            listed
                .iter()
                .position(|g| g == f)
                .map(|i| weights[i])
                .ok_or_else(|| invalid(format!("facet {f} is not listed")))
        })
        .collect()
}

/// The complexes on which the polarization identity is checked.
pub fn catalog() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("single_edge", single_edge()),
        ("triangle_graph", triangle_graph()),
        ("flapped_triangle", flapped_triangle()),
        ("k4_boundary", k4_boundary()),
        ("ring_with_triangle", ring_with_triangle().complex),
    ]
}
