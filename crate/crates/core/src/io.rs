//! JSON documents: groupoids, homomorphisms, representations, graded
//! representations and jobs bundling them.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coefficients::{GradedRepresentation, Representation};
use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, GroupoidHom, GroupoidSpec};
use crate::linalg::RationalMatrix;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Groupoid(GroupoidDoc),
    Homomorphism(HomDoc),
    Representation(RepDoc),
    GradedRepresentation(GradedDoc),
    Job(JobDoc),
}

impl Document {
    pub fn id(&self) -> &str {
        match self {
            Document::Groupoid(d) => &d.id,
            Document::Homomorphism(d) => &d.id,
            Document::Representation(d) => &d.id,
            Document::GradedRepresentation(d) => &d.id,
            Document::Job(d) => &d.id,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Groupoid(_) => "groupoid",
            Document::Homomorphism(_) => "homomorphism",
            Document::Representation(_) => "representation",
            Document::GradedRepresentation(_) => "graded-representation",
            Document::Job(_) => "job",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidDoc {
    pub id: String,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    pub units: BTreeMap<String, String>,
    /// `"g|h"` is `g` after `h`.
    pub compose: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub id: String,
    pub source: String,
    pub target: String,
    pub on_objects: BTreeMap<String, String>,
    pub on_arrows: BTreeMap<String, String>,
}

/// Row-major matrix with exact rational entries as strings.
pub type MatrixDoc = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDoc {
    pub id: String,
    pub groupoid: String,
    pub fibers: BTreeMap<String, usize>,
    pub matrices: BTreeMap<String, MatrixDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DegreeDoc {
    /// A representation declared elsewhere.
    Ref(String),
    Inline {
        fibers: BTreeMap<String, usize>,
        matrices: BTreeMap<String, MatrixDoc>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedDoc {
    pub id: String,
    pub groupoid: String,
    pub degrees: Vec<DegreeDoc>,
    /// `d_n[k][object]: E^k -> E^{k+1}`
    pub d_n: Vec<BTreeMap<String, MatrixDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobDoc {
    pub id: String,
    pub documents: Vec<Document>,
}

/// Parses one JSON document; errors carry line and column.
pub fn parse_document(text: &str, origin: &str) -> Result<Document> {
    serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("{origin}: line {}, column {}: {e}", e.line(), e.column())))
}

pub fn read_document(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_document(&text, &path.display().to_string())
}

pub fn to_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn flatten(doc: Document, out: &mut Vec<Document>) {
    match doc {
        Document::Job(j) => j.documents.into_iter().for_each(|d| flatten(d, out)),
        d => out.push(d),
    }
}

impl Document {
    /// The document itself, or the members of a job, recursively.
    pub fn flattened(self) -> Vec<Document> {
        let mut out = Vec::new();
        flatten(self, &mut out);
        out
    }
}

/// Validation outcome of one document.
#[derive(Clone, Debug)]
pub struct LoadRecord {
    pub kind: &'static str,
    pub id: String,
    pub error: Option<Error>,
}

/// Validated structures by id.
#[derive(Clone, Debug, Default)]
pub struct Library {
    pub groupoids: BTreeMap<String, Arc<FiniteGroupoid>>,
    pub homomorphisms: BTreeMap<String, GroupoidHom>,
    pub representations: BTreeMap<String, Representation>,
    pub graded: BTreeMap<String, GradedRepresentation>,
    /// Ids in input order, per kind.
    pub order: Vec<(&'static str, String)>,
}

fn parse_matrix(m: &MatrixDoc, rows: usize, cols: usize, what: &str) -> Result<RationalMatrix> {
    let data: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|s| s.parse()).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch {
            context: what.to_string(),
            expected: (rows, cols),
            found: (data.len(), data.first().map_or(0, Vec::len)),
        });
    }
    RationalMatrix::from_dense(rows, cols, &data)
}

fn matrix_doc(m: &RationalMatrix) -> MatrixDoc {
    m.to_dense()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

pub fn groupoid_from_doc(d: &GroupoidDoc) -> Result<FiniteGroupoid> {
    let mut compose = Vec::with_capacity(d.compose.len());
    for (k, v) in &d.compose {
        let (g, h) = k
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("composition key {k:?} is not of the form \"g|h\"")))?;
        compose.push(((g.to_string(), h.to_string()), v.clone()));
    }
    FiniteGroupoid::new(GroupoidSpec {
        name: d.id.clone(),
        objects: d.objects.clone(),
        arrows: d
            .arrows
            .iter()
            .map(|a| (a.id.clone(), a.src.clone(), a.tgt.clone()))
            .collect(),
        units: d.units.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        compose,
        inverse: d
            .inverse
            .as_ref()
            .map(|m| m.iter().map(|(k, v)| (k.clone(), v.clone())).collect()),
    })
}

pub fn groupoid_doc(g: &FiniteGroupoid) -> GroupoidDoc {
    let spec = g.to_spec();
    GroupoidDoc {
        id: spec.name,
        objects: spec.objects,
        arrows: spec
            .arrows
            .into_iter()
            .map(|(id, src, tgt)| ArrowDoc { id, src, tgt })
            .collect(),
        units: spec.units.into_iter().collect(),
        compose: spec
            .compose
            .into_iter()
            .map(|((g, h), k)| (format!("{g}|{h}"), k))
            .collect(),
        inverse: spec.inverse.map(|v| v.into_iter().collect()),
    }
}

pub fn hom_doc(f: &GroupoidHom) -> HomDoc {
    let (h, g) = (f.source(), f.target());
    HomDoc {
        id: f.name().to_string(),
        source: h.name().to_string(),
        target: g.name().to_string(),
        on_objects: (0..h.num_objects())
            .map(|x| (h.object_name(x).to_string(), g.object_name(f.f0(x)).to_string()))
            .collect(),
        on_arrows: (0..h.num_arrows())
            .map(|a| (h.arrow_name(a).to_string(), g.arrow_name(f.f1(a)).to_string()))
            .collect(),
    }
}

pub fn rep_doc(id: &str, rep: &Representation) -> RepDoc {
    let g = rep.groupoid();
    RepDoc {
        id: id.to_string(),
        groupoid: g.name().to_string(),
        fibers: (0..g.num_objects())
            .map(|x| (g.object_name(x).to_string(), rep.fiber_dim(x)))
            .collect(),
        matrices: (0..g.num_arrows())
            .map(|a| (g.arrow_name(a).to_string(), matrix_doc(rep.action(a))))
            .collect(),
    }
}

pub fn graded_doc(id: &str, e: &GradedRepresentation) -> GradedDoc {
    let g = e.groupoid();
    GradedDoc {
        id: id.to_string(),
        groupoid: g.name().to_string(),
        degrees: (0..=e.top())
            .map(|k| {
                let r = rep_doc("", e.degree(k));
                DegreeDoc::Inline {
                    fibers: r.fibers,
                    matrices: r.matrices,
                }
            })
            .collect(),
        d_n: (0..e.top())
            .map(|k| {
                (0..g.num_objects())
                    .map(|x| (g.object_name(x).to_string(), matrix_doc(e.d_n(k, x))))
                    .collect()
            })
            .collect(),
    }
}

fn rep_from_parts(
    g: &Arc<FiniteGroupoid>,
    fibers: &BTreeMap<String, usize>,
    matrices: &BTreeMap<String, MatrixDoc>,
) -> Result<Representation> {
    let mut dims = vec![None; g.num_objects()];
    for (name, &d) in fibers {
        dims[g.object_id(name)?] = Some(d);
    }
    let dims: Vec<usize> = dims
        .iter()
        .enumerate()
        .map(|(x, d)| {
            d.ok_or_else(|| Error::InvalidRepresentation {
                law: "fiber totality".into(),
                witness: g.object_name(x).to_string(),
            })
        })
        .collect::<Result<_>>()?;
    let mut action = vec![None; g.num_arrows()];
    for (name, m) in matrices {
        let a = g.arrow_id(name)?;
        let what = format!("matrix of arrow {name}");
        action[a] = Some(parse_matrix(m, dims[g.tgt(a)], dims[g.src(a)], &what)?);
    }
    let action = action
        .into_iter()
        .enumerate()
        .map(|(a, m)| {
            m.ok_or_else(|| Error::InvalidRepresentation {
                law: "action totality".into(),
                witness: g.arrow_name(a).to_string(),
            })
        })
        .collect::<Result<_>>()?;
    Representation::new(g.clone(), dims, action)
}

impl Library {
    /// Validates documents in dependency order; every document gets a
    /// record, and the library holds the ones that validated.
    pub fn load(docs: Vec<Document>) -> (Library, Vec<LoadRecord>) {
        let mut flat = Vec::new();
        docs.into_iter().for_each(|d| flatten(d, &mut flat));
        let mut lib = Library::default();
        let mut records = Vec::new();
        let mut seen: BTreeMap<(&'static str, String), ()> = BTreeMap::new();
        for pass in 0..4 {
            for doc in &flat {
                let stage = match doc {
                    Document::Groupoid(_) => 0,
                    Document::Homomorphism(_) => 1,
                    Document::Representation(_) => 2,
                    Document::GradedRepresentation(_) => 3,
                    Document::Job(_) => unreachable!(),
                };
                if stage != pass {
                    continue;
                }
                let key = (doc.kind(), doc.id().to_string());
                let result = if seen.insert(key.clone(), ()).is_some() {
                    Err(Error::DuplicateId(format!("{} {}", key.0, key.1)))
                } else {
                    lib.add(doc)
                };
                if result.is_ok() {
                    lib.order.push(key.clone());
                }
                records.push(LoadRecord {
                    kind: key.0,
                    id: key.1,
                    error: result.err(),
                });
            }
        }
        (lib, records)
    }

    /// Strict loading: the first failure is an error.
    pub fn from_documents(docs: Vec<Document>) -> Result<Library> {
        let (lib, records) = Library::load(docs);
        match records.into_iter().find_map(|r| r.error) {
            Some(e) => Err(e),
            None => Ok(lib),
        }
    }

    fn groupoid(&self, id: &str) -> Result<&Arc<FiniteGroupoid>> {
        self.groupoids
            .get(id)
            .ok_or_else(|| Error::DanglingReference(format!("groupoid {id}")))
    }

    fn add(&mut self, doc: &Document) -> Result<()> {
        match doc {
            Document::Groupoid(d) => {
                let g = groupoid_from_doc(d)?;
                self.groupoids.insert(d.id.clone(), Arc::new(g));
            }
            Document::Homomorphism(d) => {
                let h = self.groupoid(&d.source)?.clone();
                let g = self.groupoid(&d.target)?.clone();
                let objs: Vec<(String, String)> = d.on_objects.clone().into_iter().collect();
                let arrs: Vec<(String, String)> = d.on_arrows.clone().into_iter().collect();
                let f = GroupoidHom::from_names(&d.id, h, g, &objs, &arrs)?;
                self.homomorphisms.insert(d.id.clone(), f);
            }
            Document::Representation(d) => {
                let g = self.groupoid(&d.groupoid)?.clone();
                let r = rep_from_parts(&g, &d.fibers, &d.matrices)?;
                self.representations.insert(d.id.clone(), r);
            }
            Document::GradedRepresentation(d) => {
                let g = self.groupoid(&d.groupoid)?.clone();
                let degrees = d
                    .degrees
                    .iter()
                    .map(|k| match k {
                        DegreeDoc::Ref(id) => {
                            let r = self
                                .representations
                                .get(id)
                                .ok_or_else(|| Error::DanglingReference(format!("representation {id}")))?;
                            if r.groupoid().name() != g.name() {
                                return Err(Error::DanglingReference(format!(
                                    "representation {id} lives on {}",
                                    r.groupoid().name()
                                )));
                            }
                            Ok(r.clone())
                        }
                        DegreeDoc::Inline { fibers, matrices } => rep_from_parts(&g, fibers, matrices),
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mut d_n = Vec::with_capacity(d.d_n.len());
                for (k, block) in d.d_n.iter().enumerate() {
                    if k + 1 >= degrees.len() {
                        return Err(Error::InvalidRepresentation {
                            law: "degree count".into(),
                            witness: format!("{} differentials for {} degrees", d.d_n.len(), degrees.len()),
                        });
                    }
                    let mut per = vec![None; g.num_objects()];
                    for (name, m) in block {
                        let x = g.object_id(name)?;
                        let (lo, hi) = (degrees[k].fiber_dim(x), degrees[k + 1].fiber_dim(x));
                        per[x] = Some(parse_matrix(
                            m,
                            hi,
                            lo,
                            &format!("internal differential {k} at {name}"),
                        )?);
                    }
                    let per = per
                        .into_iter()
                        .enumerate()
                        .map(|(x, m)| {
                            m.ok_or_else(|| Error::InvalidRepresentation {
                                law: "internal differential totality".into(),
                                witness: format!("degree {k}, object {}", g.object_name(x)),
                            })
                        })
                        .collect::<Result<_>>()?;
                    d_n.push(per);
                }
                self.graded
                    .insert(d.id.clone(), GradedRepresentation::new(degrees, d_n)?);
            }
            Document::Job(_) => unreachable!(),
        }
        Ok(())
    }
}

/// Reads and validates every file; all cross references are resolved over
/// the union of the files.
pub fn parse_inputs<P: AsRef<Path>>(paths: &[P]) -> Result<Library> {
    let docs = paths
        .iter()
        .map(|p| read_document(p.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    Library::from_documents(docs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::pair;

    #[test]
    fn groupoid_round_trip() {
        let g = pair(2);
        let doc = Document::Groupoid(groupoid_doc(&g));
        let text = to_json(&doc);
        let back = parse_document(&text, "pair2").unwrap();
        assert_eq!(back, doc);
        let lib = Library::from_documents(vec![back]).unwrap();
        let g2 = &lib.groupoids["pair2"];
        assert_eq!((g2.num_objects(), g2.num_arrows()), (2, 4));
    }

    #[test]
    fn malformed_rational_and_dangling() {
        let g = Document::Groupoid(groupoid_doc(&crate::groupoid::cyclic_delooping(2)));
        let rep = r#"{"kind":"representation","id":"r","groupoid":"bz2",
            "fibers":{"*":1},"matrices":{"g0":[["1"]],"g1":[["1/0"]]}}"#;
        let rep = parse_document(rep, "r").unwrap();
        let err = Library::from_documents(vec![g.clone(), rep]).unwrap_err();
        assert!(matches!(err, Error::MalformedRational(_)), "{err:?}");
        let hom = r#"{"kind":"homomorphism","id":"f","source":"bz2","target":"nowhere",
            "on_objects":{},"on_arrows":{}}"#;
        let err = Library::from_documents(vec![g, parse_document(hom, "f").unwrap()]).unwrap_err();
        assert!(matches!(err, Error::DanglingReference(_)));
    }

    #[test]
    fn syntax_error_has_line() {
        let err = parse_document("{\n\"kind\": \"groupoid\",\n oops}", "bad.json").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }
}
