//! JSON lattice descriptors.
//!
//! ```json
//! {"family": "E8"}
//! {"family": "Dn", "rank": 5}
//! {"gram": [[2, 1], [1, 2]]}
//! {"direct_sum": [{"family": "E8"}, {"family": "Zn", "rank": 2}]}
//! {"scaled": {"inner": {"family": "An", "rank": 2}, "factor": 3}}
//! ```
//!
//! Exactly one of `family`, `gram`, `direct_sum`, `scaled` per object;
//! unknown keys are rejected.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use intlat_core::{Family, LatticeDescriptor};
use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescriptorError {
    Io(String),
    Json(String),
    Invalid(String),
}

impl fmt::Display for DescriptorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DescriptorError::Io(msg) => write!(f, "cannot read descriptor: {msg}"),
            DescriptorError::Json(msg) => write!(f, "descriptor is not valid JSON: {msg}"),
            DescriptorError::Invalid(msg) => write!(f, "invalid descriptor: {msg}"),
        }
    }
}

impl std::error::Error for DescriptorError {}

fn invalid(msg: impl Into<String>) -> DescriptorError {
    DescriptorError::Invalid(msg.into())
}

pub fn parse_descriptor(text: &str) -> Result<LatticeDescriptor, DescriptorError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| DescriptorError::Json(e.to_string()))?;
    descriptor_from_json(&value)
}

pub fn load_descriptor(path: &Path) -> Result<LatticeDescriptor, DescriptorError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DescriptorError::Io(format!("{}: {e}", path.display())))?;
    parse_descriptor(&text)
}

fn integer(v: &Value, what: &str) -> Result<BigInt, DescriptorError> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| invalid(format!("{what} must be an integer, got {n}"))),
        other => Err(invalid(format!("{what} must be an integer, got {other}"))),
    }
}

fn only_keys(obj: &Map<String, Value>, allowed: &[&str]) -> Result<(), DescriptorError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(invalid(format!("unknown key `{k}`"))),
        None => Ok(()),
    }
}

pub fn descriptor_from_json(value: &Value) -> Result<LatticeDescriptor, DescriptorError> {
    let obj = value
        .as_object()
        .ok_or_else(|| invalid("a descriptor must be a JSON object"))?;
    let kinds: Vec<&str> = ["family", "gram", "direct_sum", "scaled"]
        .into_iter()
        .filter(|k| obj.contains_key(*k))
        .collect();
    match kinds.as_slice() {
        ["family"] => {
            only_keys(obj, &["family", "rank"])?;
            let tag = obj["family"]
                .as_str()
                .ok_or_else(|| invalid("`family` must be a string"))?;
            let family = Family::from_tag(tag).ok_or_else(|| {
                invalid(format!(
                    "unknown family `{tag}` (expected Zn, An, Dn, E6, E7, E8)"
                ))
            })?;
            let rank =
                match obj.get("rank") {
                    Some(r) => Some(usize::try_from(integer(r, "`rank`")?).map_err(|_| {
                        invalid("`rank` must be a nonnegative machine-size integer")
                    })?),
                    None => None,
                };
            let rank = match (rank, family.fixed_rank()) {
                (Some(r), _) => r,
                (None, Some(r)) => r,
                (None, None) => return Err(invalid(format!("family `{tag}` needs a `rank`"))),
            };
            Ok(LatticeDescriptor::family(family, rank))
        }
        ["gram"] => {
            only_keys(obj, &["gram"])?;
            let rows = obj["gram"]
                .as_array()
                .ok_or_else(|| invalid("`gram` must be an array of arrays"))?;
            let rows = rows
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| invalid("`gram` rows must be arrays"))?
                        .iter()
                        .map(|v| integer(v, "Gram entry"))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(LatticeDescriptor::Explicit(rows))
        }
        ["direct_sum"] => {
            only_keys(obj, &["direct_sum"])?;
            let parts = obj["direct_sum"]
                .as_array()
                .ok_or_else(|| invalid("`direct_sum` must be an array"))?;
            if parts.is_empty() {
                return Err(invalid("`direct_sum` must not be empty"));
            }
            Ok(LatticeDescriptor::DirectSum(
                parts
                    .iter()
                    .map(descriptor_from_json)
                    .collect::<Result<_, _>>()?,
            ))
        }
        ["scaled"] => {
            only_keys(obj, &["scaled"])?;
            let inner = obj["scaled"]
                .as_object()
                .ok_or_else(|| invalid("`scaled` must be an object"))?;
            only_keys(inner, &["inner", "factor"])?;
            let factor = integer(
                inner
                    .get("factor")
                    .ok_or_else(|| invalid("`scaled` needs `factor`"))?,
                "`factor`",
            )?;
            if factor < BigInt::from(1) {
                return Err(invalid("`factor` must be a positive integer"));
            }
            let inner = descriptor_from_json(
                inner
                    .get("inner")
                    .ok_or_else(|| invalid("`scaled` needs `inner`"))?,
            )?;
            Ok(LatticeDescriptor::Scaled {
                inner: Box::new(inner),
                factor,
            })
        }
        [] => Err(invalid(
            "expected one of `family`, `gram`, `direct_sum`, `scaled`",
        )),
        _ => Err(invalid(format!("conflicting keys {kinds:?}"))),
    }
}

fn number(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integer literal"))
}

pub fn descriptor_to_json(d: &LatticeDescriptor) -> Value {
    match d {
        LatticeDescriptor::Family { family, rank } => {
            let mut m = Map::new();
            m.insert("family".into(), Value::String(family.tag().into()));
            if family.fixed_rank().is_none() {
                m.insert("rank".into(), Value::from(*rank));
            }
            Value::Object(m)
        }
        LatticeDescriptor::Explicit(rows) => serde_json::json!({
            "gram": rows.iter().map(|r| r.iter().map(number).collect::<Vec<_>>()).collect::<Vec<_>>()
        }),
        LatticeDescriptor::DirectSum(parts) => serde_json::json!({
            "direct_sum": parts.iter().map(descriptor_to_json).collect::<Vec<_>>()
        }),
        LatticeDescriptor::Scaled { inner, factor } => serde_json::json!({
            "scaled": {"inner": descriptor_to_json(inner), "factor": number(factor)}
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        assert_eq!(
            parse_descriptor(r#"{"family":"E8"}"#).unwrap(),
            LatticeDescriptor::e8()
        );
        assert_eq!(
            parse_descriptor(r#"{"family":"Zn","rank":3}"#).unwrap(),
            LatticeDescriptor::zn(3)
        );
        let g = parse_descriptor(r#"{"gram":[[2,1],[1,2]]}"#).unwrap();
        assert_eq!(
            g,
            LatticeDescriptor::Explicit(vec![vec![2.into(), 1.into()], vec![1.into(), 2.into()]])
        );
        let s = parse_descriptor(r#"{"scaled":{"inner":{"family":"Zn","rank":2},"factor":3}}"#)
            .unwrap();
        assert_eq!(s, LatticeDescriptor::scaled(LatticeDescriptor::zn(2), 3));
        let d = parse_descriptor(r#"{"direct_sum":[{"family":"E8"},{"family":"Zn","rank":1}]}"#)
            .unwrap();
        assert_eq!(
            d,
            LatticeDescriptor::direct_sum([LatticeDescriptor::e8(), LatticeDescriptor::zn(1)])
        );
    }

    #[test]
    fn big_entries_survive() {
        let d = parse_descriptor(r#"{"gram":[[123456789012345678901234567890]]}"#).unwrap();
        let LatticeDescriptor::Explicit(rows) = d else {
            panic!()
        };
        assert_eq!(rows[0][0].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            r#"{"family":"E8","colour":"red"}"#,
            r#"{"family":"E8","gram":[[1]]}"#,
            r#"{"family":"Q7"}"#,
            r#"{"family":"Zn"}"#,
            r#"{"gram":[[1.5]]}"#,
            r#"{"direct_sum":[]}"#,
            r#"{"scaled":{"inner":{"family":"E8"},"factor":0}}"#,
            r#"{"scaled":{"inner":{"family":"E8"},"factor":2,"x":1}}"#,
            r#"{}"#,
            r#"[1]"#,
            r#"{"family":"#,
        ] {
            assert!(parse_descriptor(text).is_err(), "{text}");
        }
    }

    #[test]
    fn json_round_trip() {
        let d = LatticeDescriptor::direct_sum([
            LatticeDescriptor::scaled(LatticeDescriptor::family(Family::A, 2), 2),
            LatticeDescriptor::Explicit(vec![vec![3.into()]]),
            LatticeDescriptor::family(Family::E7, 7),
        ]);
        assert_eq!(descriptor_from_json(&descriptor_to_json(&d)).unwrap(), d);
    }
}
