//! Sparse JSON form of an A-infinity algebra:
//! `{"field": "Q", "degrees": [0, 1], "unit": 0, "mu": {"2": [{"inputs": [1, 1], "output": {"0": "1"}}]}}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::AInfty;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AInftyJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: String,
    pub degrees: Vec<u8>,
    #[serde(default)]
    pub unit: Option<usize>,
    #[serde(default)]
    pub mu: BTreeMap<String, Vec<EntryJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryJson {
    pub inputs: Vec<usize>,
    pub output: BTreeMap<String, Value>,
}

fn scalar(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse_scalar(s),
        Value::Number(n) => field.parse_scalar(&n.to_string()),
        _ => Err(Error::parse(format!("coefficient {v} is not a number or string"))),
    }
}

impl AInfty {
    pub fn from_json_str(text: &str) -> Result<AInfty> {
        let j: AInftyJson = serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
        let field: Field = j.field.parse()?;
        let mut a = AInfty::new(j.name.as_deref().unwrap_or("A"), field, j.degrees, j.unit)?;
        let n = a.dim();
        for (k, entries) in &j.mu {
            let k: usize = k.parse().map_err(|_| Error::parse(format!("arity key {k:?} is not a number")))?;
            for e in entries {
                if e.inputs.len() != k {
                    return Err(Error::invalid(format!("entry {:?} listed under arity {k}", e.inputs)));
                }
                let mut out = a.zero();
                for (i, c) in &e.output {
                    let i: usize = i.parse().map_err(|_| Error::parse(format!("output index {i:?} is not a number")))?;
                    if i >= n {
                        return Err(Error::invalid(format!("output index {i} out of range")));
                    }
                    out[i] = &out[i] + &scalar(field, c)?;
                }
                let prev = a.mu(&e.inputs).cloned().unwrap_or_else(|| a.zero());
                a.set_op(e.inputs.clone(), prev.iter().zip(&out).map(|(x, y)| x + y).collect())?;
            }
        }
        Ok(a)
    }

    pub fn to_json(&self) -> AInftyJson {
        let mut mu: BTreeMap<String, Vec<EntryJson>> = BTreeMap::new();
        for (w, v) in self.entries() {
            let output = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i.to_string(), Value::String(c.to_string())))
                .collect();
            mu.entry(w.len().to_string()).or_default().push(EntryJson { inputs: w.clone(), output });
        }
        AInftyJson {
            name: Some(self.name.clone()),
            field: self.field().to_string(),
            degrees: self.degrees().to_vec(),
            unit: self.unit(),
            mu,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::super::corpus::all;
    use super::*;

    #[test]
    fn round_trip() {
        for a in all() {
            assert_eq!(AInfty::from_json_str(&a.to_json_string()).unwrap(), a);
        }
    }

    #[test]
    fn example_format() {
        let a = AInfty::from_json_str(
            r#"{"field": "Q", "degrees": [0, 1], "unit": 0,
                "mu": {"2": [{"inputs": [0, 0], "output": {"0": "1"}},
                             {"inputs": [0, 1], "output": {"1": -1}},
                             {"inputs": [1, 0], "output": {"1": "1"}},
                             {"inputs": [1, 1], "output": {"0": "0"}}]}}"#,
        )
        .unwrap();
        assert_eq!(a.mu(&[1, 1]), None);
        assert!(a.check_relations(4).ok());
        assert_eq!(a.entries().count(), 3);
    }

    #[test]
    fn errors() {
        assert!(matches!(AInfty::from_json_str("{"), Err(Error::Parse(_))));
        let bad = r#"{"field": "Q", "degrees": [0, 1], "mu": {"2": [{"inputs": [1, 1], "output": {"1": "1"}}]}}"#;
        assert!(matches!(AInfty::from_json_str(bad), Err(Error::Invalid(_))));
        let bad = r#"{"field": "Q", "degrees": [0, 1], "mu": {"3": [{"inputs": [1, 1], "output": {"0": "1"}}]}}"#;
        assert!(AInfty::from_json_str(bad).is_err());
    }
}
