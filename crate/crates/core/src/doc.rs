//! Structured matroid documents: a JSON object with exactly one constructor
//! key (`bases`, `circuits`, `graph`, `uniform`, `freedom` or `paving`), an
//! optional `name`, and for the first two an optional or required ground-set
//! size `n`.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ginv::{freedom_matroid, paving_matroid, RankSeq};
use crate::graph::GraphInput;
use crate::matroid::Matroid;

/// How the matroid is presented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constructor {
    Bases { n: Option<usize>, bases: Vec<Vec<usize>> },
    Circuits { n: usize, circuits: Vec<Vec<usize>> },
    Graph { vertices: usize, edges: Vec<(usize, usize)> },
    Uniform { r: usize, n: usize },
    Freedom { sequence: String },
    Paving { n: usize, r: usize, copoints: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidDocument {
    pub name: Option<String>,
    pub constructor: Constructor,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|u| u as usize)
        .ok_or_else(|| bad(format!("{what} must be a nonnegative integer, got {v}")))
}

fn as_sets(v: &Value, what: &str) -> Result<Vec<Vec<usize>>> {
    let outer = v
        .as_array()
        .ok_or_else(|| bad(format!("{what} must be an array of element lists")))?;
    outer
        .iter()
        .map(|inner| {
            let list = inner
                .as_array()
                .ok_or_else(|| bad(format!("{what} entries must be element lists")))?;
            list.iter()
                .map(|e| as_usize(e, &format!("{what} element")))
                .collect()
        })
        .collect()
}

impl MatroidDocument {
    pub fn parse(text: &str) -> Result<MatroidDocument> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| bad(format!("not valid JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| bad("top level must be an object"))?;
        MatroidDocument::from_object(obj)
    }

    fn from_object(obj: &Map<String, Value>) -> Result<MatroidDocument> {
        const CONSTRUCTORS: [&str; 6] =
            ["bases", "circuits", "graph", "uniform", "freedom", "paving"];
        let mut found: Vec<&str> = Vec::new();
        for key in obj.keys() {
            match key.as_str() {
                "name" | "n" => {}
                k if CONSTRUCTORS.contains(&k) => {
                    found.push(CONSTRUCTORS.iter().find(|c| **c == k).unwrap())
                }
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }
        if found.len() != 1 {
            return Err(bad(format!(
                "want exactly one of {CONSTRUCTORS:?}, found {found:?}"
            )));
        }
        let name = match obj.get("name") {
            None => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(v) => return Err(bad(format!("name must be a string, got {v}"))),
        };
        let top_n = obj.get("n").map(|v| as_usize(v, "n")).transpose()?;
        let key = found[0];
        if top_n.is_some() && !matches!(key, "bases" | "circuits") {
            return Err(bad(format!(
                "top-level n only accompanies bases or circuits, not {key}"
            )));
        }
        let payload = &obj[key];
        let constructor = match key {
            "bases" => Constructor::Bases {
                n: top_n,
                bases: as_sets(payload, "bases")?,
            },
            "circuits" => Constructor::Circuits {
                n: top_n.ok_or_else(|| bad("circuits need a top-level n"))?,
                circuits: as_sets(payload, "circuits")?,
            },
            "graph" => {
                let g = payload
                    .as_object()
                    .ok_or_else(|| bad("graph must be an object"))?;
                for k in g.keys() {
                    if k != "vertices" && k != "edges" {
                        return Err(bad(format!("unknown graph key {k:?}")));
                    }
                }
                let vertices = as_usize(
                    g.get("vertices").ok_or_else(|| bad("graph needs vertices"))?,
                    "vertices",
                )?;
                let edge_sets = as_sets(
                    g.get("edges").ok_or_else(|| bad("graph needs edges"))?,
                    "edges",
                )?;
                let edges = edge_sets
                    .into_iter()
                    .map(|e| {
                        if e.len() == 2 {
                            Ok((e[0], e[1]))
                        } else {
                            Err(bad("each edge must list exactly two endpoints"))
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                Constructor::Graph { vertices, edges }
            }
            "uniform" => {
                let u = payload
                    .as_object()
                    .ok_or_else(|| bad("uniform must be an object"))?;
                for k in u.keys() {
                    if k != "r" && k != "n" {
                        return Err(bad(format!("unknown uniform key {k:?}")));
                    }
                }
                Constructor::Uniform {
                    r: as_usize(u.get("r").ok_or_else(|| bad("uniform needs r"))?, "r")?,
                    n: as_usize(u.get("n").ok_or_else(|| bad("uniform needs n"))?, "n")?,
                }
            }
            "freedom" => {
                let s = payload
                    .as_str()
                    .ok_or_else(|| bad("freedom must be a 0/1 string"))?;
                Constructor::Freedom {
                    sequence: s.to_string(),
                }
            }
            "paving" => {
                let p = payload
                    .as_object()
                    .ok_or_else(|| bad("paving must be an object"))?;
                for k in p.keys() {
                    if k != "n" && k != "r" && k != "copoints" {
                        return Err(bad(format!("unknown paving key {k:?}")));
                    }
                }
                Constructor::Paving {
                    n: as_usize(p.get("n").ok_or_else(|| bad("paving needs n"))?, "n")?,
                    r: as_usize(p.get("r").ok_or_else(|| bad("paving needs r"))?, "r")?,
                    copoints: as_sets(
                        p.get("copoints").ok_or_else(|| bad("paving needs copoints"))?,
                        "copoints",
                    )?,
                }
            }
            _ => unreachable!(),
        };
        Ok(MatroidDocument { name, constructor })
    }

    /// Canonical JSON form; `parse` of this text reproduces the document.
    pub fn to_json(&self) -> String {
        let mut obj = Map::new();
        if let Some(name) = &self.name {
            obj.insert("name".into(), json!(name));
        }
        match &self.constructor {
            Constructor::Bases { n, bases } => {
                if let Some(n) = n {
                    obj.insert("n".into(), json!(n));
                }
                obj.insert("bases".into(), json!(bases));
            }
            Constructor::Circuits { n, circuits } => {
                obj.insert("n".into(), json!(n));
                obj.insert("circuits".into(), json!(circuits));
            }
            Constructor::Graph { vertices, edges } => {
                let edge_lists: Vec<Vec<usize>> =
                    edges.iter().map(|&(u, v)| vec![u, v]).collect();
                obj.insert(
                    "graph".into(),
                    json!({"vertices": vertices, "edges": edge_lists}),
                );
            }
            Constructor::Uniform { r, n } => {
                obj.insert("uniform".into(), json!({"r": r, "n": n}));
            }
            Constructor::Freedom { sequence } => {
                obj.insert("freedom".into(), json!(sequence));
            }
            Constructor::Paving { n, r, copoints } => {
                obj.insert(
                    "paving".into(),
                    json!({"n": n, "r": r, "copoints": copoints}),
                );
            }
        }
        Value::Object(obj).to_string()
    }

    /// Runs the named constructor.
    pub fn build(&self) -> Result<Matroid> {
        match &self.constructor {
            Constructor::Bases { n, bases } => {
                let n = n.unwrap_or_else(|| {
                    bases.iter().flatten().copied().max().unwrap_or(0)
                });
                Matroid::from_bases(n, bases)
            }
            Constructor::Circuits { n, circuits } => Matroid::from_circuits(*n, circuits),
            Constructor::Graph { .. } => self.graph_input()?.unwrap().cycle_matroid(),
            Constructor::Uniform { r, n } => Matroid::uniform(*r, *n),
            Constructor::Freedom { sequence } => freedom_matroid(RankSeq::parse(sequence)?),
            Constructor::Paving { n, r, copoints } => paving_matroid(*n, *r, copoints),
        }
    }

    /// The underlying graph for `graph` documents, `None` otherwise.
    pub fn graph_input(&self) -> Result<Option<GraphInput>> {
        match &self.constructor {
            Constructor::Graph { vertices, edges } => {
                Ok(Some(GraphInput::new(*vertices, edges.clone())?))
            }
            _ => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_circuit_form() {
        let doc = MatroidDocument::parse(
            r#"{"circuits": [[1,2,3],[1,5,6],[2,4,6],[3,4,5]], "n": 6}"#,
        )
        .unwrap();
        let m = doc.build().unwrap();
        assert_eq!(m.n(), 6);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.bases().len(), 16);
    }

    #[test]
    fn parses_uniform_and_freedom_and_paving() {
        let u = MatroidDocument::parse(r#"{"uniform": {"r": 3, "n": 6}}"#).unwrap();
        assert_eq!(u.build().unwrap(), Matroid::uniform(3, 6).unwrap());

        let f = MatroidDocument::parse(r#"{"freedom": "110100"}"#).unwrap();
        assert_eq!(f.build().unwrap().bases().len(), 19);

        let p = MatroidDocument::parse(
            r#"{"paving": {"n": 6, "r": 3, "copoints": [[1,2,3,4],[4,5,6]]}, "name": "P"}"#,
        )
        .unwrap();
        assert_eq!(p.name.as_deref(), Some("P"));
        assert_eq!(p.build().unwrap().bases().len(), 15);
    }

    #[test]
    fn parses_graphs() {
        let doc = MatroidDocument::parse(
            r#"{"graph": {"vertices": 4, "edges": [[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}}"#,
        )
        .unwrap();
        let g = doc.graph_input().unwrap().unwrap();
        assert_eq!(g.vertices, 4);
        let m = doc.build().unwrap();
        assert_eq!(m.bases().len(), 16);
        assert!(MatroidDocument::parse(r#"{"uniform": {"r":1,"n":2}}"#)
            .unwrap()
            .graph_input()
            .unwrap()
            .is_none());
    }

    #[test]
    fn bases_infer_the_ground_set() {
        let doc = MatroidDocument::parse(r#"{"bases": [[1,2],[1,3]]}"#).unwrap();
        assert_eq!(doc.build().unwrap().n(), 3);
        let padded = MatroidDocument::parse(r#"{"bases": [[1,2],[1,3]], "n": 4}"#).unwrap();
        assert_eq!(padded.build().unwrap().n(), 4);
    }

    #[test]
    fn constructor_errors_pass_through() {
        let doc = MatroidDocument::parse(r#"{"bases": [[1],[1,2]]}"#).unwrap();
        assert!(matches!(
            doc.build(),
            Err(Error::UnequalBasisCardinalities(_))
        ));
    }

    #[test]
    fn rejects_malformed_documents() {
        for text in [
            "not json",
            "[1,2]",
            r#"{"name": "x"}"#,
            r#"{"bases": [[1]], "circuits": [[1]], "n": 1}"#,
            r#"{"circuits": [[1,2]]}"#,
            r#"{"uniform": {"r": 1, "n": 2}, "n": 2}"#,
            r#"{"uniform": {"rank": 1, "n": 2}}"#,
            r#"{"mystery": 3}"#,
            r#"{"graph": {"vertices": 2, "edges": [[1,2,2]]}}"#,
            r#"{"freedom": 42}"#,
            r#"{"bases": [[1]], "name": 7}"#,
            r#"{"bases": [[-1]]}"#,
        ] {
            assert!(
                matches!(MatroidDocument::parse(text), Err(Error::Document(_))),
                "accepted {text}"
            );
        }
    }

    #[test]
    fn serialize_then_parse_is_identity() {
        for text in [
            r#"{"circuits": [[1,2,3],[1,5,6],[2,4,6],[3,4,5]], "n": 6, "name": "K"}"#,
            r#"{"uniform": {"r": 3, "n": 6}}"#,
            r#"{"freedom": "110100"}"#,
            r#"{"paving": {"n": 6, "r": 3, "copoints": [[1,2,3,4],[4,5,6]]}}"#,
            r#"{"graph": {"vertices": 3, "edges": [[1,2],[2,3]]}}"#,
            r#"{"bases": [[1,2],[1,3]], "n": 4}"#,
        ] {
            let doc = MatroidDocument::parse(text).unwrap();
            let round = MatroidDocument::parse(&doc.to_json()).unwrap();
            assert_eq!(doc, round);
            assert_eq!(doc.to_json(), round.to_json());
        }
    }
}
