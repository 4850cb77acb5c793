//! The `.alg` file format: a JSON document naming every element.
//!
//! ```json
//! {
//!   "name": "U1",
//!   "elements": ["1", "0"],
//!   "unit": "1",
//!   "product": [
//!     ["1", "0"],
//!     ["0", "0"]
//!   ],
//!   "omega": ["1", "0"],
//!   "omegastar": ["1", "0"],
//!   "shuffle": {
//!     "entries": [],
//!     "default": "0"
//!   }
//! }
//! ```
//!
//! `product` is row-major (`product[x][y] = x·y`). Shuffle subsets not
//! listed take `default`; without a default they are undefined.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{validate_axioms, AlgebraError, FiniteCircleAlgebra, ShuffleTable};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot access {path}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("schema error in `{field}` at {location}: {message}")]
    Schema {
        field: String,
        location: String,
        message: String,
    },
    #[error("axiom `{law}` fails at {witness}")]
    Axiom { law: String, witness: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    elements: Vec<String>,
    unit: String,
    product: Vec<Vec<String>>,
    omega: Vec<String>,
    omegastar: Vec<String>,
    #[serde(default)]
    shuffle: ShuffleSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShuffleSection {
    #[serde(default)]
    entries: Vec<ShuffleEntry>,
    default: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShuffleEntry {
    subset: Vec<String>,
    value: String,
}

fn schema(field: &str, location: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Schema {
        field: field.to_string(),
        location: location.into(),
        message: message.into(),
    }
}

/// Parses an `.alg` document and, when `validate` is set, rejects it unless
/// every axiom holds.
pub fn parse_algebra(text: &str, validate: bool) -> Result<FiniteCircleAlgebra, IoError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| {
        schema(
            "document",
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let n = file.elements.len();
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, name) in file.elements.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(schema("elements", format!("index {i}"), format!("duplicate element `{name}`")));
        }
    }
    let lookup = |field: &str, location: String, name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| schema(field, location, format!("unknown element `{name}`")))
    };
    let unit = lookup("unit", "value".into(), &file.unit)?;
    if file.product.len() != n {
        return Err(schema("product", "rows", format!("expected {n} rows, found {}", file.product.len())));
    }
    let mut product = Vec::with_capacity(n * n);
    for (x, row) in file.product.iter().enumerate() {
        if row.len() != n {
            return Err(schema("product", format!("row {x}"), format!("expected {n} entries, found {}", row.len())));
        }
        for (y, v) in row.iter().enumerate() {
            product.push(lookup("product", format!("row {x}, column {y}"), v)?);
        }
    }
    let unary = |field: &str, values: &[String]| -> Result<Vec<usize>, IoError> {
        if values.len() != n {
            return Err(schema(field, "list", format!("expected {n} entries, found {}", values.len())));
        }
        values
            .iter()
            .enumerate()
            .map(|(i, v)| lookup(field, format!("index {i}"), v))
            .collect()
    };
    let omega = unary("omega", &file.omega)?;
    let omegastar = unary("omegastar", &file.omegastar)?;
    let mut entries = BTreeMap::new();
    for (i, e) in file.shuffle.entries.iter().enumerate() {
        if e.subset.is_empty() {
            return Err(schema("shuffle", format!("entry {i}"), "empty subset"));
        }
        let subset = e
            .subset
            .iter()
            .map(|s| lookup("shuffle", format!("entry {i}"), s))
            .collect::<Result<Vec<_>, _>>()?;
        let value = lookup("shuffle", format!("entry {i}"), &e.value)?;
        entries.insert(subset, value);
    }
    let default = match &file.shuffle.default {
        Some(d) => Some(lookup("shuffle", "default".into(), d)?),
        None => None,
    };
    let alg = FiniteCircleAlgebra::new(
        file.name,
        file.elements.clone(),
        unit,
        product,
        omega,
        omegastar,
        ShuffleTable::Explicit { entries, default },
    )?;
    if validate {
        let report = validate_axioms(&alg);
        if let Some((law, instance)) = report.first_failure() {
            return Err(IoError::Axiom {
                law: law.to_string(),
                witness: instance.describe(&alg),
            });
        }
    }
    Ok(alg)
}

pub fn load_algebra(path: impl AsRef<Path>) -> Result<FiniteCircleAlgebra, IoError> {
    load_algebra_with(path, true)
}

pub fn load_algebra_with(path: impl AsRef<Path>, validate: bool) -> Result<FiniteCircleAlgebra, IoError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_algebra(&text, validate)
}

fn quoted(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn list<'a>(items: impl IntoIterator<Item = &'a str>) -> String {
    let parts: Vec<String> = items.into_iter().map(quoted).collect();
    format!("[{}]", parts.join(", "))
}

/// Canonical `.alg` text. A derived shuffle is written out as an explicit
/// table (budget `subset_budget`), with its most frequent value as default.
pub fn format_algebra(alg: &FiniteCircleAlgebra, subset_budget: u64) -> Result<String, IoError> {
    let explicit;
    let alg = match alg.shuffle_table() {
        ShuffleTable::Explicit { .. } => alg,
        ShuffleTable::Derived(_) => {
            explicit = alg.materialize_shuffle(subset_budget)?;
            &explicit
        }
    };
    let ShuffleTable::Explicit { entries, default } = alg.shuffle_table() else {
        unreachable!("shuffle was materialized")
    };
    let name = |x: usize| alg.name_of(x);
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"name\": {},", quoted(alg.name()));
    let _ = writeln!(out, "  \"elements\": {},", list(alg.names().iter().map(|s| s.as_str())));
    let _ = writeln!(out, "  \"unit\": {},", quoted(name(alg.unit())));
    out.push_str("  \"product\": [\n");
    let rows: Vec<String> = alg
        .elements()
        .map(|x| format!("    {}", list(alg.elements().map(|y| name(alg.mul(x, y))))))
        .collect();
    out.push_str(&rows.join(",\n"));
    out.push_str("\n  ],\n");
    let _ = writeln!(out, "  \"omega\": {},", list(alg.elements().map(|x| name(alg.omega(x)))));
    let _ = writeln!(out, "  \"omegastar\": {},", list(alg.elements().map(|x| name(alg.omegastar(x)))));
    out.push_str("  \"shuffle\": {\n");
    if entries.is_empty() {
        out.push_str("    \"entries\": []");
    } else {
        out.push_str("    \"entries\": [\n");
        let lines: Vec<String> = entries
            .iter()
            .map(|(s, &v)| {
                format!(
                    "      {{\"subset\": {}, \"value\": {}}}",
                    list(s.iter().map(|&e| name(e))),
                    quoted(name(v))
                )
            })
            .collect();
        out.push_str(&lines.join(",\n"));
        out.push_str("\n    ]");
    }
    match default {
        Some(d) => {
            let _ = write!(out, ",\n    \"default\": {}\n", quoted(name(*d)));
        }
        None => out.push('\n'),
    }
    out.push_str("  }\n}\n");
    Ok(out)
}

pub fn save_algebra(alg: &FiniteCircleAlgebra, path: impl AsRef<Path>) -> Result<(), IoError> {
    let text = format_algebra(alg, 1 << 16)?;
    let path = path.as_ref();
    std::fs::write(path, text).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{builtin, direct_product};

    const U1: &str = include_str!("../../data/u1.alg");
    const GAP: &str = include_str!("../../data/gap.alg");

    #[test]
    fn bundled_files_match_builtins() {
        let u1 = parse_algebra(U1, true).unwrap();
        assert!(u1.same_tables(&builtin::u1(), 1 << 10).unwrap());
        let gap = parse_algebra(GAP, true).unwrap();
        assert!(gap.same_tables(&builtin::gap(), 1 << 10).unwrap());
    }

    #[test]
    fn round_trip_is_byte_identical() {
        for text in [U1, GAP] {
            let alg = parse_algebra(text, true).unwrap();
            assert_eq!(format_algebra(&alg, 1 << 10).unwrap(), text);
        }
        assert_eq!(format_algebra(&builtin::u1(), 1 << 10).unwrap(), U1);
    }

    #[test]
    fn derived_shuffles_are_written_out() {
        let p = direct_product(&builtin::u1(), &builtin::delta(1));
        let text = format_algebra(&p, 1 << 10).unwrap();
        let back = parse_algebra(&text, true).unwrap();
        assert!(back.same_tables(&p, 1 << 10).unwrap());
        assert_eq!(format_algebra(&back, 1 << 10).unwrap(), text);
    }

    #[test]
    fn non_associative_product_names_the_triple() {
        let bad = r#"{"name": "bad", "elements": ["1", "a", "b"], "unit": "1",
            "product": [["1", "a", "b"], ["a", "b", "a"], ["b", "b", "a"]],
            "omega": ["1", "a", "b"], "omegastar": ["1", "a", "b"], "shuffle": {"default": "a"}}"#;
        match parse_algebra(bad, true) {
            Err(IoError::Axiom { law, witness }) => {
                assert_eq!(law, "associativity");
                assert_eq!(witness, "x=a y=a z=a");
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_algebra(bad, false).is_ok());
    }

    #[test]
    fn schema_errors() {
        let unknown = U1.replacen("\"unit\": \"1\"", "\"unit\": \"7\"", 1);
        assert!(matches!(parse_algebra(&unknown, true), Err(IoError::Schema { field, .. }) if field == "unit"));
        assert!(matches!(parse_algebra("{", true), Err(IoError::Schema { field, .. }) if field == "document"));
        let short = U1.replacen("    [\"1\", \"0\"],\n", "", 1);
        assert!(matches!(parse_algebra(&short, true), Err(IoError::Schema { field, .. }) if field == "product"));
    }
}
