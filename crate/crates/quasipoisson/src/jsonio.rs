//! JSON input schemas for algebras, pairings and quadruples, and the JSON
//! rendering of derived bialgebras. Rational coefficients are accepted as
//! integers or `"p/q"` strings and always emitted as strings.

use crate::lie::{InvariantPairing, LieAlgebraSC};
use crate::linalg::Mat;
use crate::manin::{parabolic_quadruple, ManinQuadruple, QuasiBialgebra};
use crate::rational::{fmt_rat, parse_rat, Rat};
use crate::{Error, Result};
use serde_json::{json, Value};

fn rat_from_value(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(crate::rational::int)
            .ok_or_else(|| Error::InvalidInput(format!("non-integer number {n}; use a \"p/q\" string"))),
        Value::String(s) => {
            parse_rat(s).ok_or_else(|| Error::InvalidInput(format!("bad rational literal {s:?}")))
        }
        _ => Err(Error::InvalidInput(format!("expected a rational, got {v}"))),
    }
}

fn rat_matrix(v: &Value) -> Result<Mat<Rat>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("expected an array of rows".into()))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::InvalidInput("expected an array row".into()))?
                .iter()
                .map(rat_from_value)
                .collect()
        })
        .collect()
}

/// `{ "basis": ["e","h","f"], "brackets": [["e","f",[["h",1]]], ...] }`
pub fn parse_algebra(v: &Value) -> Result<LieAlgebraSC> {
    let basis: Vec<String> = v
        .get("basis")
        .and_then(|b| b.as_array())
        .ok_or_else(|| Error::InvalidInput("algebra needs a \"basis\" array".into()))?
        .iter()
        .map(|s| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::InvalidInput("basis names must be strings".into()))
        })
        .collect::<Result<_>>()?;
    let index_of = |name: &str| -> Result<usize> {
        basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown basis name {name:?}")))
    };
    let mut brackets = Vec::new();
    if let Some(list) = v.get("brackets") {
        let list = list
            .as_array()
            .ok_or_else(|| Error::InvalidInput("\"brackets\" must be an array".into()))?;
        for entry in list {
            let triple = entry
                .as_array()
                .filter(|t| t.len() == 3)
                .ok_or_else(|| Error::InvalidInput("each bracket is [x, y, [[z, c], ...]]".into()))?;
            let i = index_of(
                triple[0]
                    .as_str()
                    .ok_or_else(|| Error::InvalidInput("bracket operand must be a name".into()))?,
            )?;
            let j = index_of(
                triple[1]
                    .as_str()
                    .ok_or_else(|| Error::InvalidInput("bracket operand must be a name".into()))?,
            )?;
            let terms = triple[2]
                .as_array()
                .ok_or_else(|| Error::InvalidInput("bracket value must be an array".into()))?;
            let mut out = Vec::new();
            for t in terms {
                let pair = t
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::InvalidInput("bracket term must be [name, coeff]".into()))?;
                let k = index_of(
                    pair[0]
                        .as_str()
                        .ok_or_else(|| Error::InvalidInput("bracket term name must be a string".into()))?,
                )?;
                out.push((k, rat_from_value(&pair[1])?));
            }
            brackets.push(((i, j), out));
        }
    }
    LieAlgebraSC::new(basis, brackets)
}

/// `{ "d": { ...algebra..., "gram": [[...]] }, "a": [[...]], "b": ..., "c": ... }`
/// or the shortcut `{ "parabolic": { "n": 3, "partition": [1, 2] } }`.
pub fn parse_quadruple(v: &Value) -> Result<ManinQuadruple> {
    if let Some(p) = v.get("parabolic") {
        let n = p
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::InvalidInput("parabolic needs \"n\"".into()))? as usize;
        let partition: Vec<usize> = p
            .get("partition")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::InvalidInput("parabolic needs \"partition\"".into()))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|u| u as usize)
                    .ok_or_else(|| Error::InvalidInput("partition entries must be integers".into()))
            })
            .collect::<Result<_>>()?;
        return parabolic_quadruple(n, &partition);
    }
    let d_val = v
        .get("d")
        .ok_or_else(|| Error::InvalidInput("quadruple needs \"d\" or \"parabolic\"".into()))?;
    let d = parse_algebra(d_val)?;
    let gram = rat_matrix(
        d_val
            .get("gram")
            .ok_or_else(|| Error::InvalidInput("\"d\" needs a \"gram\" matrix".into()))?,
    )?;
    if gram.len() != d.dim() || gram.iter().any(|r| r.len() != d.dim()) {
        return Err(Error::DimensionMismatch("gram size vs algebra dimension".into()));
    }
    let sub = |name: &str| -> Result<Mat<Rat>> {
        let m = rat_matrix(
            v.get(name)
                .ok_or_else(|| Error::InvalidInput(format!("quadruple needs \"{name}\"")))?,
        )?;
        if m.iter().any(|r| r.len() != d.dim()) {
            return Err(Error::DimensionMismatch(format!(
                "\"{name}\" vectors must have length {}",
                d.dim()
            )));
        }
        Ok(m)
    };
    Ok(ManinQuadruple {
        pairing: InvariantPairing::new(gram),
        a: sub("a")?,
        b: sub("b")?,
        c: sub("c")?,
        d,
        matrices: None,
    })
}

fn mat_json(m: &Mat<Rat>) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(|c| Value::String(fmt_rat(c))).collect()))
            .collect(),
    )
}

/// Render a derived bialgebra: h and g structure constants, the action and
/// the cobracket, all with exact string rationals.
pub fn bialgebra_json(b: &QuasiBialgebra) -> Value {
    let alg_json = |alg: &LieAlgebraSC| -> Value {
        let mut brackets = Vec::new();
        for i in 0..alg.dim() {
            for j in i + 1..alg.dim() {
                let entry = alg.bracket_basis(i, j);
                let terms: Vec<Value> = entry
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !crate::jet::Scalar::is_zero(*c))
                    .map(|(k, c)| json!([alg.name(k), fmt_rat(c)]))
                    .collect();
                if !terms.is_empty() {
                    brackets.push(json!([alg.name(i), alg.name(j), terms]));
                }
            }
        }
        json!({ "basis": alg.names(), "brackets": brackets })
    };
    json!({
        "h": alg_json(&b.h),
        "g": alg_json(&b.g),
        "g_gram": mat_json(&b.g_pairing.gram),
        "action": b.action.iter().map(mat_json).collect::<Vec<_>>(),
        "cobracket": b.cobracket.iter().map(mat_json).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::report::Status;

    #[test]
    fn parse_sl2_algebra() {
        let v: Value = serde_json::from_str(
            r#"{ "basis": ["e","h","f"],
                 "brackets": [["h","e",[["e",2]]], ["h","f",[["f",-2]]], ["e","f",[["h","1"]]]] }"#,
        )
        .unwrap();
        let alg = parse_algebra(&v).unwrap();
        assert!(alg.jacobi_violations().is_empty());
        assert_eq!(alg.bracket_basis(0, 2), vec![int(0), int(1), int(0)]);
    }

    #[test]
    fn parse_parabolic_shortcut() {
        let v: Value = serde_json::from_str(r#"{ "parabolic": { "n": 3, "partition": [1, 2] } }"#).unwrap();
        let q = parse_quadruple(&v).unwrap();
        assert_eq!(q.dims(), (2, 4, 2));
        assert!(q.check().iter().all(|c| c.status == Status::Pass));
    }

    #[test]
    fn parse_explicit_quadruple() {
        // sl(2) written out fully, with a as E12, b as H, c as E21
        let v: Value = serde_json::from_str(
            r#"{
              "d": { "basis": ["E12","H","E21"],
                     "brackets": [["H","E12",[["E12",2]]],
                                  ["H","E21",[["E21",-2]]],
                                  ["E12","E21",[["H",1]]]],
                     "gram": [[0,0,1],[0,2,0],[1,0,0]] },
              "a": [[1,0,0]],
              "b": [[0,1,0]],
              "c": [[0,0,1]]
            }"#,
        )
        .unwrap();
        let q = parse_quadruple(&v).unwrap();
        assert!(q.check().iter().all(|c| c.status == Status::Pass));
        let _ = rat(1, 2);
    }

    #[test]
    fn bad_inputs_are_rejected() {
        let v: Value = serde_json::from_str(r#"{ "basis": ["e"], "brackets": [["e","x",[]]] }"#).unwrap();
        assert!(parse_algebra(&v).is_err());
        let v: Value = serde_json::from_str(r#"{ "parabolic": { "n": 3, "partition": [1, 1] } }"#).unwrap();
        assert!(parse_quadruple(&v).is_err());
    }
}
