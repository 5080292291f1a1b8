//! Parsing of matrix documents and mutation paths.

use std::path::Path;

use serde_json::Value;

use cluster_core::exchange::{ExchangeMatrix, ExtendedExchangeMatrix};
use cluster_core::gca::{GcaSeed, MutationData};
use cluster_core::linalg::IntMatrix;
use cluster_core::pattern::{initial_seed, GeometricSeed, PatternError, PrincipalSeed};
use cluster_core::polyring::VarArena;

use crate::CliError;

/// A parsed matrix document.
///
/// Accepted shapes: a bare square matrix, `{"b": ...}`, `{"bt": ..., "vars": [...]}`
/// for geometric type, and `{"b": ..., "data": {"r": ..., "z": ...}}` for
/// generalized mutation.
#[derive(Debug, Clone)]
pub enum SeedInput {
    Exchange(ExchangeMatrix),
    Geometric {
        bt: ExtendedExchangeMatrix,
        vars: Option<Vec<String>>,
    },
    Gca {
        b: ExchangeMatrix,
        data: MutationData,
    },
}

fn matrix(v: &Value, what: &str) -> Result<IntMatrix, CliError> {
    serde_json::from_value(v.clone()).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

impl SeedInput {
    pub fn from_value(v: &Value) -> Result<SeedInput, CliError> {
        if v.is_array() {
            return Ok(SeedInput::Exchange(ExchangeMatrix::new(matrix(v, "b")?)?));
        }
        let Some(obj) = v.as_object() else {
            return Err(CliError::Input("expected a matrix or an object with \"b\" or \"bt\"".into()));
        };
        if let Some(bt) = obj.get("bt") {
            let bt = ExtendedExchangeMatrix::from_rows(matrix(bt, "bt")?)?;
            let vars = match obj.get("vars") {
                None | Some(Value::Null) => None,
                Some(v) => Some(serde_json::from_value(v.clone()).map_err(|e| CliError::Input(format!("vars: {e}")))?),
            };
            return Ok(SeedInput::Geometric { bt, vars });
        }
        let b = obj.get("b").ok_or_else(|| CliError::Input("missing \"b\" or \"bt\"".into()))?;
        let b = ExchangeMatrix::new(matrix(b, "b")?)?;
        match obj.get("data") {
            None | Some(Value::Null) => Ok(SeedInput::Exchange(b)),
            Some(d) => Ok(SeedInput::Gca {
                b,
                data: MutationData::from_json(d)?,
            }),
        }
    }

    pub fn from_str(s: &str) -> Result<SeedInput, CliError> {
        let v: Value = serde_json::from_str(s).map_err(|e| CliError::Input(format!("invalid JSON: {e}")))?;
        SeedInput::from_value(&v)
    }

    /// Reads `--b` text or a `--matrix` file, with optional `--data` JSON
    /// attached to an exchange matrix.
    pub fn load(inline: Option<&str>, file: Option<&Path>, data: Option<&str>) -> Result<SeedInput, CliError> {
        let text = match (inline, file) {
            (Some(s), None) => s.to_string(),
            (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
            (Some(_), Some(_)) => return Err(CliError::Input("give either --b or --matrix, not both".into())),
            (None, None) => return Err(CliError::Input("an exchange matrix is required (--b or --matrix)".into())),
        };
        let input = SeedInput::from_str(&text)?;
        match (input, data) {
            (input, None) => Ok(input),
            (SeedInput::Exchange(b), Some(d)) => {
                let d: Value = serde_json::from_str(d).map_err(|e| CliError::Input(format!("invalid --data JSON: {e}")))?;
                Ok(SeedInput::Gca {
                    b,
                    data: MutationData::from_json(&d)?,
                })
            }
            (_, Some(_)) => Err(CliError::Input("--data applies to a plain exchange matrix only".into())),
        }
    }

    /// Rank of the mutable part.
    pub fn n(&self) -> usize {
        match self {
            SeedInput::Exchange(b) | SeedInput::Gca { b, .. } => b.n(),
            SeedInput::Geometric { bt, .. } => bt.n(),
        }
    }

    /// The principal part of the matrix.
    pub fn exchange_matrix(&self) -> ExchangeMatrix {
        match self {
            SeedInput::Exchange(b) | SeedInput::Gca { b, .. } => b.clone(),
            SeedInput::Geometric { bt, .. } => {
                ExchangeMatrix::new(bt.rows()[..bt.n()].to_vec()).expect("principal part of a valid extended matrix")
            }
        }
    }

    pub fn principal(&self) -> Result<PrincipalSeed, CliError> {
        match self {
            SeedInput::Exchange(b) => Ok(initial_seed(b)),
            _ => Err(CliError::Input("this command needs a plain exchange matrix".into())),
        }
    }

    pub fn geometric(bt: &ExtendedExchangeMatrix, vars: Option<&[String]>) -> Result<GeometricSeed, CliError> {
        match vars {
            None => Ok(GeometricSeed::new(bt.clone())),
            Some(v) => GeometricSeed::with_arena(bt.clone(), VarArena::new(v.iter().cloned()))
                .map_err(|e: PatternError| CliError::Input(e.to_string())),
        }
    }

    pub fn gca(b: &ExchangeMatrix, data: &MutationData) -> Result<GcaSeed, CliError> {
        Ok(GcaSeed::initial(b, data.clone())?)
    }
}

/// Parses a one-based path such as `121`, `1,2,1` or `1 2 1` into zero-based
/// directions. Undelimited digits are single directions.
pub fn parse_path(s: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let s = s.trim();
    let parts: Vec<&str> = if s.contains([',', ' ']) {
        s.split([',', ' ']).filter(|p| !p.is_empty()).collect()
    } else {
        s.char_indices().map(|(i, c)| &s[i..i + c.len_utf8()]).collect()
    };
    parts
        .into_iter()
        .map(|p| {
            let k: usize = p.parse().map_err(|_| CliError::Input(format!("bad path entry {p:?}")))?;
            if k == 0 || k > n {
                return Err(CliError::Input(format!("path entry {k} outside 1..={n}")));
            }
            Ok(k - 1)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn paths() {
        assert_eq!(parse_path("121", 2).unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_path("1, 2,1", 2).unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_path("10 2", 10).unwrap(), vec![9, 1]);
        assert_eq!(parse_path("", 2).unwrap(), Vec::<usize>::new());
        assert!(parse_path("13", 2).is_err());
        assert!(parse_path("1a", 2).is_err());
    }

    #[test]
    fn shapes() {
        assert!(matches!(
            SeedInput::from_value(&json!([[0, 1], [-1, 0]])).unwrap(),
            SeedInput::Exchange(_)
        ));
        assert!(matches!(
            SeedInput::from_value(&json!({"b": [[0, 1], [-1, 0]]})).unwrap(),
            SeedInput::Exchange(_)
        ));
        let g = SeedInput::from_value(&json!({"bt": [[0, 1], [-1, 0], [1, 0]], "vars": ["a", "b", "u"]})).unwrap();
        assert_eq!(g.n(), 2);
        assert!(matches!(g, SeedInput::Geometric { .. }));
        let gca = SeedInput::from_value(&json!({"b": [[0, -1], [1, 0]], "data": {"r": [2, 1], "z": [[1, "z", 1], [1, 1]]}}));
        assert!(matches!(gca.unwrap(), SeedInput::Gca { .. }));
        assert!(SeedInput::from_value(&json!([[0, 1], [1, 0]])).is_err());
        assert!(SeedInput::from_value(&json!({"c": 1})).is_err());
        assert!(SeedInput::from_str("[[0,").is_err());
    }
}
