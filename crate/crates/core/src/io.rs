//! Reading and writing instances: matrix JSON, point-cloud JSON, graph JSON and CSV.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::metric::{build_from_graph, build_from_matrix, build_from_points, MetricInstance, Norm, WeightedEdge};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelBlock {
    #[serde(default)]
    clients: Option<Vec<String>>,
    #[serde(default)]
    facilities: Option<Vec<String>>,
}

/// Matrix form. `clients` and `facilities` are label lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clients: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facilities: Option<Vec<String>>,
    pub dist: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<Vec<usize>>,
    #[serde(default, skip_serializing)]
    labels: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Value>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PointsDoc {
    pub client_points: Vec<Vec<f64>>,
    pub facility_points: Vec<Vec<f64>>,
    #[serde(default = "default_norm", deserialize_with = "norm_any")]
    pub norm: Norm,
    #[serde(default)]
    pub provenance: Option<Value>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<WeightedEdge>,
    pub clients: Vec<String>,
    pub facilities: Vec<String>,
    #[serde(default)]
    pub provenance: Option<Value>,
}

fn default_norm() -> Norm {
    Norm::L2
}

/// Accepts the norm as a number (`1`, `2`) or a string (`"1"`, `"inf"`).
fn norm_any<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Norm, D::Error> {
    let v = Value::deserialize(d)?;
    let s = match &v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(serde::de::Error::custom(format!("bad norm {other}"))),
    };
    s.parse().map_err(serde::de::Error::custom)
}

fn attach(inst: MetricInstance, provenance: Option<Value>) -> MetricInstance {
    match provenance {
        Some(p) => inst.with_provenance(p),
        None => inst,
    }
}

pub fn instance_from_matrix_doc(doc: MatrixDoc) -> Result<MetricInstance> {
    let mut inst = build_from_matrix(doc.dist, doc.cross)?;
    if let Some(m) = doc.multiplicity {
        inst = inst.with_multiplicity(m)?;
    }
    let block: LabelBlock = match doc.labels {
        Some(v) => serde_json::from_value(v)?,
        None => LabelBlock::default(),
    };
    let clients = doc.clients.or(block.clients);
    let facilities = doc.facilities.or(block.facilities);
    if clients.is_some() || facilities.is_some() {
        let c = clients.unwrap_or_else(|| inst.client_labels().to_vec());
        let f = facilities.unwrap_or_else(|| inst.facility_labels().to_vec());
        inst = inst.with_labels(c, f)?;
    }
    Ok(attach(inst, doc.provenance))
}

pub fn instance_from_points_doc(doc: PointsDoc) -> Result<MetricInstance> {
    let inst = build_from_points(&doc.client_points, &doc.facility_points, doc.norm)?;
    Ok(attach(inst, doc.provenance))
}

pub fn instance_from_graph_doc(doc: GraphDoc) -> Result<MetricInstance> {
    let inst = build_from_graph(&doc.vertices, &doc.edges, &doc.clients, &doc.facilities)?;
    Ok(attach(inst, doc.provenance))
}

/// Parses any of the three JSON forms, told apart by their keys.
pub fn parse_instance_json(text: &str) -> Result<MetricInstance> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value.as_object().ok_or_else(|| Error::UnknownFormat("top level is not an object".into()))?;
    if obj.contains_key("dist") {
        instance_from_matrix_doc(serde_json::from_value(value)?)
    } else if obj.contains_key("client_points") {
        instance_from_points_doc(serde_json::from_value(value)?)
    } else if obj.contains_key("edges") {
        instance_from_graph_doc(serde_json::from_value(value)?)
    } else {
        Err(Error::UnknownFormat("expected one of the keys dist, client_points or edges".into()))
    }
}

/// Parses a client-by-facility CSV matrix. The header row holds facility
/// labels; if its first cell is empty, the first column holds client labels.
pub fn parse_instance_csv(text: &str) -> Result<MetricInstance> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    let labelled = header.first().is_some_and(|h| h.is_empty());
    let facilities: Vec<String> = header.into_iter().skip(usize::from(labelled)).collect();
    let mut clients = Vec::new();
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let mut cells = record.iter();
        if labelled {
            clients.push(cells.next().unwrap_or_default().to_string());
        } else {
            clients.push(format!("c{i}"));
        }
        let row = cells
            .enumerate()
            .map(|(j, c)| c.parse::<f64>().map_err(|_| Error::NonFinite { row: i, col: j }))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    build_from_matrix(rows, None)?.with_labels(clients, facilities)
}

/// Loads an instance, choosing CSV by the `.csv` extension and JSON otherwise.
pub fn load_instance(path: &Path) -> Result<MetricInstance> {
    let text = std::fs::read_to_string(path)?;
    let is_csv = path.extension().and_then(|e| e.to_str()).is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        parse_instance_csv(&text)
    } else {
        parse_instance_json(&text)
    }
}

/// The matrix form of an instance, accepted back by [`parse_instance_json`].
pub fn instance_to_doc(inst: &MetricInstance) -> MatrixDoc {
    MatrixDoc {
        clients: Some(inst.client_labels().to_vec()),
        facilities: Some(inst.facility_labels().to_vec()),
        dist: inst.dist_rows(),
        cross: inst.cross().map(|c| c.rows()),
        multiplicity: (!inst.has_unit_multiplicity()).then(|| inst.multiplicities().to_vec()),
        labels: None,
        provenance: inst.provenance().cloned(),
    }
}

pub fn instance_to_json(inst: &MetricInstance) -> Result<String> {
    Ok(serde_json::to_string_pretty(&instance_to_doc(inst))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let text = r#"{"clients":["a","b"],"facilities":["x"],"dist":[[1.0],[2.5]],"multiplicity":[3,1]}"#;
        let inst = parse_instance_json(text).unwrap();
        assert_eq!(inst.n_clients(), 4);
        assert_eq!(inst.client_labels(), ["a", "b"]);
        let back = parse_instance_json(&instance_to_json(&inst).unwrap()).unwrap();
        assert_eq!(back.dist_rows(), inst.dist_rows());
        assert_eq!(back.multiplicities(), inst.multiplicities());
    }

    #[test]
    fn labels_block_is_accepted() {
        let text = r#"{"dist":[[1.0,2.0]],"labels":{"facilities":["p","q"]}}"#;
        let inst = parse_instance_json(text).unwrap();
        assert_eq!(inst.facility_labels(), ["p", "q"]);
    }

    #[test]
    fn points_with_numeric_and_string_norm() {
        let a = parse_instance_json(r#"{"client_points":[[0,0]],"facility_points":[[1,1]],"norm":1}"#).unwrap();
        assert_eq!(a.distance(0, 0), 2.0);
        let b = parse_instance_json(r#"{"client_points":[[0,0]],"facility_points":[[1,1]],"norm":"inf"}"#).unwrap();
        assert_eq!(b.distance(0, 0), 1.0);
        let c = parse_instance_json(r#"{"client_points":[[0,0]],"facility_points":[[1,1]]}"#).unwrap();
        assert!((c.distance(0, 0) - 2f64.sqrt()).abs() < 1e-15);
        assert!(parse_instance_json(r#"{"client_points":[[0]],"facility_points":[[1]],"norm":3}"#).is_err());
    }

    #[test]
    fn graph_document() {
        let text =
            r#"{"vertices":["a","b","c"],"edges":[["a","b",1.0],["b","c",1.0]],"clients":["a"],"facilities":["c"]}"#;
        let inst = parse_instance_json(text).unwrap();
        assert_eq!(inst.distance(0, 0), 2.0);
        assert!(inst.is_metric_verified());
    }

    #[test]
    fn csv_with_and_without_client_labels() {
        let inst = parse_instance_csv(",x,y\nu,1,2\nv,3,4\n").unwrap();
        assert_eq!(inst.client_labels(), ["u", "v"]);
        assert_eq!(inst.facility_labels(), ["x", "y"]);
        assert_eq!(inst.distance(1, 1), 4.0);
        let inst = parse_instance_csv("x,y\n1,2\n").unwrap();
        assert_eq!(inst.n_clients(), 1);
        assert!(parse_instance_csv("x\nfoo\n").is_err());
    }

    #[test]
    fn unknown_shapes_are_rejected() {
        assert!(matches!(parse_instance_json("[]"), Err(Error::UnknownFormat(_))));
        assert!(matches!(parse_instance_json(r#"{"foo":1}"#), Err(Error::UnknownFormat(_))));
        assert!(matches!(parse_instance_json("{"), Err(Error::Json(_))));
    }
}
