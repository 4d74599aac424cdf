//! JSON documents for families. Vertices are 1-based on the wire.
//!
//! ```json
//! {"n": 7, "k": 3, "edges": [[1,2,3], [1,4,5], ...], "labels": ["a", ...]}
//! {"n": 117, "k": 3, "generators": [[1,2,3], ...]}
//! ```

use crate::bits::{VertexSet, MAX_VERTICES};
use crate::constructions::GeneratedFamily;
use crate::error::{Error, Result};
use crate::setfam::Family;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FamilyDoc {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    pub n: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub edges: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generators: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labels: Option<Vec<String>>,
}

/// A parsed document: an explicit family or a generated one.
#[derive(Clone, Debug)]
pub enum Parsed {
    Explicit {
        family: Family,
        labels: Option<Vec<String>>,
    },
    Generated(GeneratedFamily),
}

impl Parsed {
    /// The explicit family, enumerating a generated one if it fits.
    pub fn into_family(self) -> Result<Family> {
        match self {
            Parsed::Explicit { family, .. } => Ok(family),
            Parsed::Generated(g) => g.enumerate(),
        }
    }
}

/// Converts one 1-based vertex list, naming it by position on error.
fn edge_mask(idx: usize, edge: &[usize], n: usize, what: &str) -> Result<VertexSet> {
    let mut m = VertexSet::EMPTY;
    for &v in edge {
        if v == 0 || v > n {
            return Err(Error::Json(format!(
                "{what} #{idx} {edge:?}: vertex {v} outside [1..{n}]"
            )));
        }
        if m.contains(v - 1) {
            return Err(Error::Json(format!(
                "{what} #{idx} {edge:?}: vertex {v} repeated"
            )));
        }
        m.insert(v - 1);
    }
    Ok(m)
}

impl FamilyDoc {
    pub fn from_family(fam: &Family) -> Self {
        FamilyDoc {
            name: None,
            n: fam.n(),
            k: fam.k(),
            edges: Some(fam.to_one_based()),
            generators: None,
            labels: None,
        }
    }

    pub fn from_generated(g: &GeneratedFamily) -> Self {
        FamilyDoc {
            name: None,
            n: g.n,
            k: g.k,
            edges: None,
            generators: Some(
                g.generators
                    .iter()
                    .map(|e| e.iter().map(|v| v + 1).collect())
                    .collect(),
            ),
            labels: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_labels(mut self, labels: Option<Vec<String>>) -> Self {
        self.labels = labels;
        self
    }

    pub fn parse(self) -> Result<Parsed> {
        if let Some(labels) = &self.labels {
            if labels.len() != self.n {
                return Err(Error::Json(format!(
                    "{} labels given for n = {}",
                    labels.len(),
                    self.n
                )));
            }
        }
        match (self.edges, self.generators) {
            (Some(_), Some(_)) => Err(Error::Json(
                "give either \"edges\" or \"generators\", not both".into(),
            )),
            (None, None) => Err(Error::Json("missing \"edges\"".into())),
            (None, Some(gens)) => {
                if self.n > 4096 {
                    return Err(Error::Json(format!("n = {} is unreasonably large", self.n)));
                }
                let mut masks = Vec::with_capacity(gens.len());
                for (i, g) in gens.iter().enumerate() {
                    if let Some(&v) = g.iter().find(|&&v| v > MAX_VERTICES) {
                        return Err(Error::Json(format!(
                            "generator #{i} {g:?}: vertex {v} beyond the {MAX_VERTICES}-vertex support cap"
                        )));
                    }
                    masks.push(edge_mask(i, g, self.n, "generator")?);
                }
                Ok(Parsed::Generated(GeneratedFamily::new(
                    self.n, self.k, masks,
                )?))
            }
            (Some(edges), None) => {
                if self.n > MAX_VERTICES {
                    return Err(Error::GroundTooLarge { n: self.n });
                }
                let mut masks = Vec::with_capacity(edges.len());
                for (i, e) in edges.iter().enumerate() {
                    let m = edge_mask(i, e, self.n, "edge")?;
                    if m.len() != self.k {
                        return Err(Error::Json(format!(
                            "edge #{i} {e:?}: has {} vertices, expected k = {}",
                            m.len(),
                            self.k
                        )));
                    }
                    masks.push(m);
                }
                Ok(Parsed::Explicit {
                    family: Family::new(self.n, self.k, masks)?,
                    labels: self.labels,
                })
            }
        }
    }
}

pub fn parse_str(text: &str) -> Result<Parsed> {
    let doc: FamilyDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    doc.parse()
}

/// Parses an explicit family (or enumerates a generated one).
pub fn family_from_str(text: &str) -> Result<Family> {
    parse_str(text)?.into_family()
}

pub fn family_to_string(fam: &Family) -> String {
    serde_json::to_string_pretty(&FamilyDoc::from_family(fam)).expect("plain data serialises")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fano, generated, t0};

    #[test]
    fn round_trip() {
        for f in [fano(), t0()] {
            assert_eq!(family_from_str(&family_to_string(&f)).unwrap(), f);
        }
    }

    #[test]
    fn reader_sorts_and_dedups() {
        let f = family_from_str(r#"{"n":4,"k":2,"edges":[[2,1],[3,4],[1,2]]}"#).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.to_one_based(), vec![vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn diagnostics_name_the_edge() {
        let err = family_from_str(r#"{"n":4,"k":2,"edges":[[1,2],[3,5]]}"#).unwrap_err();
        assert!(err.to_string().contains("edge #1 [3, 5]"), "{err}");
        let err = family_from_str(r#"{"n":4,"k":2,"edges":[[1,2],[1,2,3]]}"#).unwrap_err();
        assert!(err.to_string().contains("edge #1 [1, 2, 3]"), "{err}");
        let err = family_from_str(r#"{"n":4,"k":2,"edges":[[1,1]]}"#).unwrap_err();
        assert!(err.to_string().contains("repeated"), "{err}");
        assert!(family_from_str("{\"n\":4").is_err());
    }

    #[test]
    fn generated_documents() {
        let g = generated(&fano(), 117, 3).unwrap();
        let text = serde_json::to_string(&FamilyDoc::from_generated(&g)).unwrap();
        assert!(!text.contains("edges"));
        match parse_str(&text).unwrap() {
            Parsed::Generated(back) => assert_eq!(back, g),
            _ => panic!("expected generated"),
        }
        let small = generated(&fano(), 8, 4).unwrap();
        let text = serde_json::to_string(&FamilyDoc::from_generated(&small)).unwrap();
        assert_eq!(family_from_str(&text).unwrap().len(), 35);
    }
}
