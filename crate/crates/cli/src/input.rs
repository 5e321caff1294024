use std::collections::BTreeMap;
use std::io::Read;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use skelvd::complex::{attach_skeletons, build_skeleton_complex, AttachOptions, Attachment, ComplexDoc, Purity};
use skelvd::construction::{WeightedHypergraph, WeightedHypergraphDoc};
use skelvd::fixtures::weights_by_facet;
use skelvd::hypergraph::HypergraphDoc;
use skelvd::ideals::MonomialIdeal;
use skelvd::{Error, Face, Hypergraph, Result, SimplicialComplex, SkeletonSpec};

/// Where an input came from, echoed in every report.
#[derive(Clone, Debug, Serialize)]
pub struct Source {
    pub path: String,
    pub sha256: String,
}

pub enum Input {
    Complex { complex: SimplicialComplex, absorbed: Vec<Face> },
    Hypergraph { hypergraph: Hypergraph, dropped: Vec<Face> },
    Ideal(MonomialIdeal),
    Weighted(WeightedHypergraph),
    Skeleton { spec: SkeletonSpec, complex: SimplicialComplex, purity: Purity },
    Assembly { attachment: Attachment, weights: Option<Vec<u32>> },
}

#[derive(Deserialize)]
struct FacetWeight {
    facet: Face,
    weight: u32,
}

/// A complex with skeleton complexes attached at some of its vertices.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AssemblyDoc {
    #[serde(rename = "type")]
    _kind: String,
    complex: SimplicialComplex,
    attachments: Vec<SkeletonSpec>,
    #[serde(default)]
    allow_pure: bool,
    #[serde(default = "yes")]
    require_cycle_cover: bool,
    #[serde(default)]
    weights: Option<Vec<FacetWeight>>,
}

fn yes() -> bool {
    true
}

#[derive(Deserialize)]
struct SkeletonDoc {
    #[serde(rename = "type")]
    _kind: String,
    #[serde(flatten)]
    spec: SkeletonSpec,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn read_source(path: &str) -> Result<(Vec<u8>, Source)> {
    let bytes = if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read(path).map_err(|e| Error::InvalidArgument(format!("{path}: {e}")))?
    };
    let sha256 = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
    Ok((bytes, Source { path: path.to_string(), sha256 }))
}

pub fn load(path: &str) -> Result<(Input, Source)> {
    let (bytes, source) = read_source(path)?;
    let mut value: Value = serde_json::from_slice(&bytes).map_err(parse_err)?;
    let obj = value.as_object_mut().ok_or_else(|| Error::Parse("input must be a JSON object".into()))?;
    obj.remove("note");
    let kind = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("input has no \"type\" field".into()))?
        .to_string();
    let input = match kind.as_str() {
        "simplicial_complex" => {
            let doc: ComplexDoc = serde_json::from_value(value).map_err(parse_err)?;
            let (complex, absorbed) = SimplicialComplex::new_reporting(doc.vertices, doc.facets)?;
            Input::Complex { complex, absorbed }
        }
        "hypergraph" => {
            let doc: HypergraphDoc = serde_json::from_value(value).map_err(parse_err)?;
            let (hypergraph, dropped) = Hypergraph::new_lenient(doc.vertices, doc.edges)?;
            Input::Hypergraph { hypergraph, dropped }
        }
        "monomial_ideal" => Input::Ideal(serde_json::from_value(value).map_err(parse_err)?),
        "weighted_hypergraph" => {
            let doc: WeightedHypergraphDoc = serde_json::from_value(value).map_err(parse_err)?;
            Input::Weighted(WeightedHypergraph::new(doc.vertices, doc.edges, doc.weights)?)
        }
        "skeleton_complex" => {
            let doc: SkeletonDoc = serde_json::from_value(value).map_err(parse_err)?;
            let (complex, purity) = build_skeleton_complex(&doc.spec)?;
            Input::Skeleton { spec: doc.spec, complex, purity }
        }
        "assembly" => {
            let doc: AssemblyDoc = serde_json::from_value(value).map_err(parse_err)?;
            let mut specs = BTreeMap::new();
            for s in doc.attachments {
                if specs.insert(s.apex.clone(), s).is_some() {
                    return Err(Error::InvalidArgument("two attachments share an apex".into()));
                }
            }
            let opts = AttachOptions { allow_pure: doc.allow_pure, require_cycle_cover: doc.require_cycle_cover };
            let attachment = attach_skeletons(&doc.complex, &specs, opts)?;
            let weights = match doc.weights {
                None => None,
                Some(list) => {
                    let (facets, ws): (Vec<Face>, Vec<u32>) = list.into_iter().map(|w| (w.facet, w.weight)).unzip();
                    Some(weights_by_facet(&attachment, &facets, &ws)?)
                }
            };
            Input::Assembly { attachment, weights }
        }
        other => return Err(Error::Parse(format!("unknown input type {other:?}"))),
    };
    Ok((input, source))
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Complex { .. } => "simplicial_complex",
            Input::Hypergraph { .. } => "hypergraph",
            Input::Ideal(_) => "monomial_ideal",
            Input::Weighted(_) => "weighted_hypergraph",
            Input::Skeleton { .. } => "skeleton_complex",
            Input::Assembly { .. } => "assembly",
        }
    }

    /// The complex an input describes, if it describes one.
    pub fn complex(&self) -> Result<SimplicialComplex> {
        match self {
            Input::Complex { complex, .. } | Input::Skeleton { complex, .. } => Ok(complex.clone()),
            Input::Assembly { attachment, .. } => Ok(attachment.complex.clone()),
            Input::Hypergraph { hypergraph, .. } => {
                SimplicialComplex::new(hypergraph.vertices().to_vec(), hypergraph.edges().to_vec())
            }
            _ => Err(Error::InvalidArgument(format!("a {} input does not describe a complex", self.kind()))),
        }
    }

    /// `H(Δ)` for complexes, the hypergraph itself otherwise.
    pub fn hypergraph(&self) -> Result<Hypergraph> {
        match self {
            Input::Hypergraph { hypergraph, .. } => Ok(hypergraph.clone()),
            Input::Weighted(w) => Ok(w.base()),
            Input::Ideal(_) => {
                Err(Error::InvalidArgument("a monomial_ideal input does not describe a hypergraph".into()))
            }
            _ => Ok(Hypergraph::from_complex(&self.complex()?)),
        }
    }

    /// Weights from `--ells` (one value for every edge, or one per edge in
    /// the input's edge order), falling back to weights carried by the input.
    pub fn weighted(&self, ells: Option<&[u32]>) -> Result<WeightedHypergraph> {
        let (vertices, edges, carried) = match self {
            Input::Weighted(w) => (w.vertices().to_vec(), w.edges().to_vec(), Some(w.weights().to_vec())),
            Input::Assembly { attachment, weights } => {
                (attachment.complex.universe().to_vec(), attachment.facet_order.clone(), weights.clone())
            }
            _ => {
                let h = self.hypergraph()?;
                (h.vertices().to_vec(), h.edges().to_vec(), None)
            }
        };
        let weights = match (ells, carried) {
            (Some([l]), _) => vec![*l; edges.len()],
            (Some(ls), _) => ls.to_vec(),
            (None, Some(w)) => w,
            (None, None) => return Err(Error::InvalidArgument("no weights given: pass --ells".into())),
        };
        WeightedHypergraph::new(vertices, edges, weights)
    }

    pub fn attachment(&self) -> Result<Attachment> {
        match self {
            Input::Assembly { attachment, .. } => Ok(attachment.clone()),
            Input::Complex { complex, .. } => Ok(Attachment::trivial(complex)),
            _ => Err(Error::InvalidArgument(format!("expected an assembly or a complex, found {}", self.kind()))),
        }
    }

    pub fn carried_weights(&self) -> Option<Vec<u32>> {
        match self {
            Input::Assembly { weights, .. } => weights.clone(),
            Input::Weighted(w) => Some(w.weights().to_vec()),
            _ => None,
        }
    }

    /// Normalization warnings raised while reading.
    pub fn warnings(&self) -> Vec<String> {
        match self {
            Input::Complex { absorbed, .. } => {
                absorbed.iter().map(|f| format!("face {f} lies in a larger facet and was dropped")).collect()
            }
            Input::Hypergraph { dropped, .. } => {
                dropped.iter().map(|e| format!("edge {e} lies in a larger edge and was dropped")).collect()
            }
            _ => vec![],
        }
    }
}
