//! JSON documents for relations, families, topologies and reports.
//!
//! Every emitted document starts with `"schema": "ordrep/1"`. On input the
//! field may be omitted, but any other value is rejected.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::partial_fn::{PartialFn, ReprFamily, ReprKind};
use crate::rational::{self, Rational};
use crate::relation::{GroundSet, Relation};
use crate::topology::{mask_of, members, FiniteTopology};

pub const SCHEMA: &str = "ordrep/1";

pub fn check_schema(schema: Option<&str>) -> Result<()> {
    match schema {
        None | Some(SCHEMA) => Ok(()),
        Some(other) => Err(Error::Parse(format!("unsupported schema `{other}` (expected {SCHEMA})"))),
    }
}

/// `{"schema": …}` followed by the fields of `body`, which must serialise to an object.
pub fn document<T: Serialize>(body: &T) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), Value::String(SCHEMA.into()));
    match serde_json::to_value(body).expect("serialisable") {
        Value::Object(fields) => out.extend(fields),
        other => {
            out.insert("value".into(), other);
        }
    }
    Value::Object(out)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationDoc {
    #[serde(default)]
    schema: Option<String>,
    elements: Vec<String>,
    pairs: Vec<[String; 2]>,
    #[serde(default)]
    reflexive_closure: bool,
    #[serde(default)]
    transitive_closure: bool,
}

pub fn relation_from_json(text: &str) -> Result<Relation> {
    let doc: RelationDoc = serde_json::from_str(text)?;
    check_schema(doc.schema.as_deref())?;
    let g = GroundSet::new(doc.elements)?;
    let pairs: Vec<(&str, &str)> = doc.pairs.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
    let r = Relation::from_labeled_pairs(g, &pairs, doc.reflexive_closure)?;
    Ok(if doc.transitive_closure { r.transitive_closure() } else { r })
}

/// Reflexive relations are written without their diagonal.
pub fn relation_to_json(r: &Relation) -> Value {
    let reflexive = (0..r.len()).all(|x| r.le(x, x));
    let pairs: Vec<[&str; 2]> = r.pairs().filter(|&(x, y)| !(reflexive && x == y)).map(|(x, y)| [r.name(x), r.name(y)]).collect();
    json!({
        "schema": SCHEMA,
        "elements": r.ground().names(),
        "pairs": pairs,
        "reflexive_closure": reflexive,
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyDoc {
    #[serde(default)]
    schema: Option<String>,
    kind: String,
    #[serde(default)]
    threshold: Option<Value>,
    functions: Vec<FunctionDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionDoc {
    values: Map<String, Value>,
}

fn number(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s),
        Value::Number(n) => n.as_i64().map(rational::int).ok_or_else(|| Error::Parse(format!("`{n}` is not an integer; write fractions as \"p/q\""))),
        other => Err(Error::Parse(format!("expected a number or \"p/q\", got {other}"))),
    }
}

/// `kind` overrides the kind written in the document.
pub fn family_from_json(text: &str, ground: &Arc<GroundSet>, kind: Option<ReprKind>) -> Result<ReprFamily> {
    let doc: FamilyDoc = serde_json::from_str(text)?;
    check_schema(doc.schema.as_deref())?;
    let kind = match kind {
        Some(k) => k,
        None => doc.kind.parse()?,
    };
    let fns = doc
        .functions
        .iter()
        .map(|f| {
            let entries = f.values.iter().map(|(k, v)| Ok((k.as_str(), number(v)?))).collect::<Result<Vec<_>>>()?;
            PartialFn::from_labeled(ground.clone(), &entries)
        })
        .collect::<Result<Vec<_>>>()?;
    let threshold = match (&doc.threshold, kind.is_scott_suppes()) {
        (Some(t), _) => Some(number(t)?),
        (None, true) => Some(rational::int(1)),
        (None, false) => None,
    };
    ReprFamily::with_threshold(kind, fns, threshold)
}

pub fn function_to_json(f: &PartialFn) -> Value {
    let values: Map<String, Value> =
        f.domain().into_iter().map(|x| (f.ground().name(x).to_string(), Value::String(rational::format(&f.at(x).expect("in domain"))))).collect();
    json!({ "values": values })
}

pub fn family_to_json(family: &ReprFamily) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), SCHEMA.into());
    out.insert("kind".into(), family.kind().as_str().into());
    if let Some(t) = family.threshold() {
        out.insert("threshold".into(), rational::format(&t).into());
    }
    out.insert("functions".into(), family.functions().iter().map(function_to_json).collect());
    Value::Object(out)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TopologyDoc {
    #[serde(default)]
    schema: Option<String>,
    #[serde(default)]
    elements: Option<Vec<String>>,
    opens: Vec<Vec<String>>,
}

pub fn topology_from_json(text: &str, ground: &Arc<GroundSet>) -> Result<FiniteTopology> {
    let doc: TopologyDoc = serde_json::from_str(text)?;
    check_schema(doc.schema.as_deref())?;
    if doc.elements.as_deref().is_some_and(|e| e != ground.names()) {
        return Err(Error::GroundMismatch);
    }
    let opens = doc
        .opens
        .iter()
        .map(|o| o.iter().map(|x| ground.index_of(x)).collect::<Result<Vec<_>>>().map(|v| mask_of(&v)))
        .collect::<Result<Vec<_>>>()?;
    FiniteTopology::from_opens(ground.clone(), opens)
}

/// `∅` and `X` are left implicit.
pub fn topology_to_json(t: &FiniteTopology) -> Value {
    let opens: Vec<Vec<String>> =
        t.opens().iter().filter(|&&o| o != 0 && o != t.full()).map(|&o| t.ground().labels(&members(o))).collect();
    json!({ "schema": SCHEMA, "elements": t.ground().names(), "opens": opens })
}

/// Labelings as maps from element to label.
pub fn labelings_to_json(labelings: &[PartialFn]) -> Value {
    let list: Vec<Value> = labelings
        .iter()
        .map(|f| {
            let m: Map<String, Value> =
                (0..f.ground().len()).map(|x| (f.ground().name(x).to_string(), json!(f.at(x).map(|v| v.to_integer())))).collect();
            Value::Object(m)
        })
        .collect();
    json!({ "schema": SCHEMA, "labelings": list })
}

pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::generate_example;
    use crate::verify::verify;

    const FIG1: &str = r#"{"schema":"ordrep/1","elements":["x1","x2","x3","x4"],
        "pairs":[["x1","x2"],["x2","x4"],["x3","x4"]],"reflexive_closure":true,"transitive_closure":true}"#;

    #[test]
    fn relation_round_trip() {
        let r = relation_from_json(FIG1).unwrap();
        assert!(r.le(0, 3));
        let back = relation_from_json(&relation_to_json(&r).to_string()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn non_reflexive_relations_keep_their_diagonal() {
        let g = GroundSet::new(["a", "b"]).unwrap();
        let r = Relation::from_pairs(g, &[(0, 0), (0, 1)]).unwrap();
        let v = relation_to_json(&r);
        assert_eq!(v["reflexive_closure"], json!(false));
        assert_eq!(relation_from_json(&v.to_string()).unwrap(), r);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(relation_from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(relation_from_json(r#"{"elements":["a"],"pairs":[],"extra":1}"#), Err(Error::Parse(_))));
        assert!(matches!(relation_from_json(r#"{"schema":"v0","elements":["a"],"pairs":[]}"#), Err(Error::Parse(_))));
        assert_eq!(relation_from_json(r#"{"elements":["a"],"pairs":[["a","b"]]}"#).unwrap_err(), Error::UnknownElement("b".into()));
    }

    #[test]
    fn family_round_trip() {
        let ex = generate_example("e05", &[]).unwrap();
        let fam = ex.family.unwrap();
        let text = family_to_json(&fam).to_string();
        assert_eq!(family_from_json(&text, ex.relation.ground(), None).unwrap(), fam);
        let ss = generate_example("eseq_truncation", &[2]).unwrap();
        let fam = ss.family.unwrap();
        let v = family_to_json(&fam);
        assert_eq!(v["threshold"], json!("1"));
        assert_eq!(family_from_json(&v.to_string(), ss.relation.ground(), None).unwrap(), fam);
    }

    #[test]
    fn family_values_accept_integers_and_fractions() {
        let r = relation_from_json(FIG1).unwrap();
        let text = r#"{"kind":"partial-rp-mu","functions":[{"values":{"x1":1,"x2":"3/2","x4":"2"}},{"values":{"x3":1,"x4":2}}]}"#;
        let fam = family_from_json(text, r.ground(), None).unwrap();
        assert_eq!(fam.functions()[0].at(1), Some(rational::ratio(3, 2)));
        assert!(verify(&r, &fam).unwrap().ok);
        let bad = r#"{"kind":"partial-rp-mu","functions":[{"values":{"x1":1.5}}]}"#;
        assert!(family_from_json(bad, r.ground(), None).is_err());
    }

    #[test]
    fn topology_round_trip() {
        let ex = generate_example("e05", &[]).unwrap();
        let (_, tau1) = &ex.topologies[0];
        let v = topology_to_json(tau1);
        assert_eq!(v["opens"][0], json!(["x4"]));
        assert_eq!(&topology_from_json(&v.to_string(), ex.relation.ground()).unwrap(), tau1);
        let other = GroundSet::new(["p"]).unwrap();
        assert_eq!(topology_from_json(&v.to_string(), &other).unwrap_err(), Error::GroundMismatch);
    }

    #[test]
    fn documents_lead_with_the_schema() {
        let v = document(&crate::verify::Verdict::ok());
        assert_eq!(v.to_string(), r#"{"schema":"ordrep/1","ok":true,"violations":[]}"#);
    }
}
