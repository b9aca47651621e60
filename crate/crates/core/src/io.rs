//! Text formats for tensors and results: JSON and CSV, in both arithmetic
//! modes.
//!
//! Conventions, frozen for byte-identical output across runs:
//!
//! - Exact values travel as strings `"p/q"` (`"p"` when the denominator is
//!   1); float values as plain JSON numbers. Exact mode rejects float
//!   literals instead of rounding them.
//! - Complex values flatten into `re`/`im` pairs.
//! - A tensor is `{"voigt": [[...]]}` (6×6, ordering 11, 22, 33, 23, 13,
//!   12) or `{"components": [[[[...]]]]}` (3×3×3×3), or CSV: one record of
//!   the 21 upper-triangle Voigt entries in row-major order.
//! - JSON object keys render in sorted order.
//!
//! Every parse error is a one-line diagnostic naming the offending field.

use crate::covariants::{CovariantDegree, CovariantSet};
use crate::diophantine::Solution;
use crate::harmonic::HarmonicParts;
use crate::invariants::{InvariantVector, OrbitReport};
use crate::scalar::Scalar;
use crate::tensor::{tensor_to_voigt, voigt_to_tensor, ElasticityTensor, Quaternion};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Zero;
use serde_json::{json, Map, Value};
use std::fmt::Write as _;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("field `{field}`: {reason}")]
    Field { field: String, reason: String },
}

fn field_err(field: &str, reason: impl Into<String>) -> IoError {
    IoError::Field {
        field: field.to_string(),
        reason: reason.into(),
    }
}

/// Parses `"p"` or `"p/q"` with arbitrary-precision integer parts.
pub fn parse_rational_str(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n = BigInt::from_str(num).map_err(|_| format!("`{num}` is not an integer"))?;
    let d = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| format!("`{d}` is not an integer"))?,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err("denominator is zero".to_string());
    }
    Ok(BigRational::new(n, d))
}

/// Parses one textual value in the active mode: exact accepts integers and
/// `p/q`, float additionally accepts decimal and scientific notation.
pub fn parse_scalar_token<S: Scalar>(tok: &str, field: &str) -> Result<S, IoError> {
    let tok = tok.trim();
    if S::EXACT {
        parse_rational_str(tok)
            .map(|r| S::from_big_rational(&r))
            .map_err(|reason| {
                field_err(
                    field,
                    format!("{reason}; exact mode takes integers or `p/q` rationals"),
                )
            })
    } else if let Ok(r) = parse_rational_str(tok) {
        Ok(S::from_big_rational(&r))
    } else {
        f64::from_str(tok)
            .map_err(|_| field_err(field, format!("`{tok}` is not a number")))
            .map(|x| S::try_from_f64(x).expect("float mode accepts floats"))
    }
}

fn parse_scalar_json<S: Scalar>(v: &Value, field: &str) -> Result<S, IoError> {
    match v {
        Value::String(s) => parse_scalar_token(s, field),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(S::from_int(i))
            } else if S::EXACT {
                Err(field_err(
                    field,
                    format!("`{n}` is a float literal; exact mode takes integers or `\"p/q\"` strings"),
                ))
            } else {
                let x = n.as_f64().ok_or_else(|| field_err(field, "not a finite number"))?;
                Ok(S::try_from_f64(x).expect("float mode accepts floats"))
            }
        }
        other => Err(field_err(field, format!("expected a number, found {other}"))),
    }
}

/// Renders the real part: a `"p/q"` string in exact mode, a number in
/// float mode.
pub fn scalar_to_json<S: Scalar>(v: &S) -> Value {
    if S::EXACT {
        Value::String(v.re_string())
    } else {
        serde_json::Number::from_f64(v.re_f64())
            .map(Value::Number)
            .unwrap_or_else(|| Value::String(v.re_string()))
    }
}

fn im_to_json<S: Scalar>(v: &S) -> Value {
    if S::EXACT {
        Value::String(v.im_string())
    } else {
        serde_json::Number::from_f64(v.im_f64())
            .map(Value::Number)
            .unwrap_or_else(|| Value::String(v.im_string()))
    }
}

/// Which JSON shape [`tensor_to_json`] emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorRepr {
    Voigt,
    Components,
}

pub fn tensor_from_json_str<S: Scalar>(text: &str) -> Result<ElasticityTensor<S>, IoError> {
    let root: Value = serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or_else(|| field_err("(root)", "expected an object with `voigt` or `components`"))?;
    match (obj.get("voigt"), obj.get("components")) {
        (Some(_), Some(_)) => Err(field_err(
            "(root)",
            "give `voigt` or `components`, not both",
        )),
        (Some(v), None) => voigt_from_json(v),
        (None, Some(v)) => components_from_json(v),
        (None, None) => Err(field_err(
            "(root)",
            "expected an object with `voigt` or `components`",
        )),
    }
}

fn voigt_from_json<S: Scalar>(v: &Value) -> Result<ElasticityTensor<S>, IoError> {
    let rows = v
        .as_array()
        .filter(|a| a.len() == 6)
        .ok_or_else(|| field_err("voigt", "expected a 6x6 array"))?;
    let mut m: [[S; 6]; 6] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
    for (i, row) in rows.iter().enumerate() {
        let cells = row
            .as_array()
            .filter(|a| a.len() == 6)
            .ok_or_else(|| field_err(&format!("voigt[{i}]"), "expected a row of 6 values"))?;
        for (j, cell) in cells.iter().enumerate() {
            m[i][j] = parse_scalar_json(cell, &format!("voigt[{i}][{j}]"))?;
        }
    }
    voigt_to_tensor(&m).map_err(|e| field_err("voigt", e.to_string()))
}

fn components_from_json<S: Scalar>(v: &Value) -> Result<ElasticityTensor<S>, IoError> {
    let mut c: Vec<S> = Vec::with_capacity(81);
    let level1 = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| field_err("components", "expected a 3x3x3x3 array"))?;
    for (i, l1) in level1.iter().enumerate() {
        let level2 = l1
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| field_err(&format!("components[{i}]"), "expected 3 entries"))?;
        for (j, l2) in level2.iter().enumerate() {
            let level3 = l2.as_array().filter(|a| a.len() == 3).ok_or_else(|| {
                field_err(&format!("components[{i}][{j}]"), "expected 3 entries")
            })?;
            for (k, l3) in level3.iter().enumerate() {
                let level4 = l3.as_array().filter(|a| a.len() == 3).ok_or_else(|| {
                    field_err(&format!("components[{i}][{j}][{k}]"), "expected 3 entries")
                })?;
                for (l, cell) in level4.iter().enumerate() {
                    c.push(parse_scalar_json(
                        cell,
                        &format!("components[{i}][{j}][{k}][{l}]"),
                    )?);
                }
            }
        }
    }
    let mut it = c.into_iter();
    let arr: crate::tensor::Array4<S> =
        std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| it.next().unwrap()))));
    ElasticityTensor::new(arr).map_err(|e| field_err("components", e.to_string()))
}

/// Upper-triangle Voigt positions in row-major order: (0,0), (0,1), …,
/// (5,5).
fn upper_triangle() -> impl Iterator<Item = (usize, usize)> {
    (0..6).flat_map(|i| (i..6).map(move |j| (i, j)))
}

pub fn tensor_from_csv_str<S: Scalar>(text: &str) -> Result<ElasticityTensor<S>, IoError> {
    let tokens: Vec<&str> = text
        .split([',', '\n', '\r'])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.len() != 21 {
        return Err(field_err(
            "csv",
            format!(
                "expected the 21 upper-triangle Voigt entries, found {} value(s)",
                tokens.len()
            ),
        ));
    }
    let mut m: [[S; 6]; 6] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
    for ((i, j), tok) in upper_triangle().zip(&tokens) {
        let v = parse_scalar_token::<S>(tok, &format!("csv entry ({},{})", i + 1, j + 1))?;
        m[i][j] = v.clone();
        m[j][i] = v;
    }
    voigt_to_tensor(&m).map_err(|e| field_err("csv", e.to_string()))
}

/// Parses a tensor from JSON or CSV, sniffing by the leading character.
pub fn tensor_from_str<S: Scalar>(text: &str) -> Result<ElasticityTensor<S>, IoError> {
    if text.trim_start().starts_with('{') {
        tensor_from_json_str(text)
    } else {
        tensor_from_csv_str(text)
    }
}

pub fn tensor_to_json<S: Scalar>(c: &ElasticityTensor<S>, repr: TensorRepr) -> Value {
    match repr {
        TensorRepr::Voigt => {
            let m = tensor_to_voigt(c);
            let rows: Vec<Value> = m
                .iter()
                .map(|row| Value::Array(row.iter().map(scalar_to_json).collect()))
                .collect();
            json!({ "voigt": rows })
        }
        TensorRepr::Components => {
            let rows: Vec<Value> = (0..3)
                .map(|i| {
                    Value::Array(
                        (0..3)
                            .map(|j| {
                                Value::Array(
                                    (0..3)
                                        .map(|k| {
                                            Value::Array(
                                                (0..3)
                                                    .map(|l| scalar_to_json(c.get(i, j, k, l)))
                                                    .collect(),
                                            )
                                        })
                                        .collect(),
                                )
                            })
                            .collect(),
                    )
                })
                .collect();
            json!({ "components": rows })
        }
    }
}

fn csv_cell<S: Scalar>(v: &S) -> String {
    v.re_string()
}

pub fn tensor_to_csv<S: Scalar>(c: &ElasticityTensor<S>) -> String {
    let m = tensor_to_voigt(c);
    let cells: Vec<String> = upper_triangle().map(|(i, j)| csv_cell(&m[i][j])).collect();
    cells.join(",") + "\n"
}

/// Sorted index multisets of a totally symmetric 4-tensor over {1,2,3}:
/// its 15 independent components, in lexicographic order.
fn sym4_keys() -> Vec<[usize; 4]> {
    let mut keys = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            for k in j..3 {
                for l in k..3 {
                    keys.push([i, j, k, l]);
                }
            }
        }
    }
    keys
}

pub fn decompose_to_json<S: Scalar>(parts: &HarmonicParts<S>) -> Value {
    let mat3 = |m: &crate::tensor::HarmonicTensor2<S>| -> Value {
        Value::Array(
            (0..3)
                .map(|i| Value::Array((0..3).map(|j| scalar_to_json(m.get(i, j))).collect()))
                .collect(),
        )
    };
    let mut d4 = Map::new();
    for [i, j, k, l] in sym4_keys() {
        let key = format!("{}{}{}{}", i + 1, j + 1, k + 1, l + 1);
        d4.insert(key, scalar_to_json(parts.d4.get(i, j, k, l)));
    }
    json!({
        "lambda0": scalar_to_json(&parts.lambda0),
        "mu0": scalar_to_json(&parts.mu0),
        "a": mat3(&parts.a),
        "b": mat3(&parts.b),
        "d4": Value::Object(d4),
    })
}

pub fn decompose_to_csv<S: Scalar>(parts: &HarmonicParts<S>) -> String {
    let mut out = String::from("part,value\n");
    let _ = writeln!(out, "lambda0,{}", csv_cell(&parts.lambda0));
    let _ = writeln!(out, "mu0,{}", csv_cell(&parts.mu0));
    for (name, m) in [("a", &parts.a), ("b", &parts.b)] {
        for i in 0..3 {
            for j in i..3 {
                let _ = writeln!(out, "{name}{}{},{}", i + 1, j + 1, csv_cell(m.get(i, j)));
            }
        }
    }
    for [i, j, k, l] in sym4_keys() {
        let _ = writeln!(
            out,
            "d{}{}{}{},{}",
            i + 1,
            j + 1,
            k + 1,
            l + 1,
            csv_cell(parts.d4.get(i, j, k, l))
        );
    }
    out
}

pub fn invariants_to_json<S: Scalar>(v: &InvariantVector<S>) -> Value {
    Value::Array(
        v.iter()
            .map(|(id, val)| {
                json!({
                    "id": id.to_string(),
                    "family": id.family.as_str(),
                    "degree": id.degree,
                    "index": id.index,
                    "value_re": scalar_to_json(val),
                    "value_im": im_to_json(val),
                })
            })
            .collect(),
    )
}

pub fn invariants_to_csv<S: Scalar>(v: &InvariantVector<S>) -> String {
    let mut out = String::from("id,family,degree,index,value_re,value_im\n");
    for (id, val) in v.iter() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            id,
            id.family.as_str(),
            id.degree,
            id.index,
            val.re_string(),
            val.im_string()
        );
    }
    out
}

fn degree_label(d: CovariantDegree) -> String {
    match d {
        CovariantDegree::Single(n) => n.to_string(),
        CovariantDegree::Pair(p, q) => format!("{p};{q}"),
    }
}

pub fn covariants_to_json<S: Scalar>(sets: &[&CovariantSet<S>]) -> Value {
    let mut rows = Vec::new();
    for set in sets {
        for c in set.iter() {
            let coeffs: Vec<Value> = (0..=c.form.degree())
                .map(|j| {
                    let v = c.form.coeff(j);
                    Value::Array(vec![scalar_to_json(v), im_to_json(v)])
                })
                .collect();
            rows.push(json!({
                "id": c.id,
                "degree": degree_label(c.degree),
                "order": c.order,
                "raw": coeffs,
            }));
        }
    }
    Value::Array(rows)
}

pub fn covariants_to_csv<S: Scalar>(sets: &[&CovariantSet<S>]) -> String {
    let mut out = String::from("id,degree,order,j,re,im\n");
    for set in sets {
        for c in set.iter() {
            for j in 0..=c.form.degree() {
                let v = c.form.coeff(j);
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    c.id,
                    degree_label(c.degree),
                    c.order,
                    j,
                    v.re_string(),
                    v.im_string()
                );
            }
        }
    }
    out
}

pub fn orbit_to_json(report: &OrbitReport) -> Value {
    json!({
        "equivalent": report.equivalent,
        "max_discrepancy": report.max_discrepancy,
        "worst": report.worst.map(|id| id.to_string()),
    })
}

pub fn orbit_to_csv(report: &OrbitReport) -> String {
    format!(
        "equivalent,max_discrepancy,worst\n{},{},{}\n",
        report.equivalent,
        report.max_discrepancy,
        report.worst.map(|id| id.to_string()).unwrap_or_default()
    )
}

pub fn hilbert_to_json(orders_a: &[u64], orders_b: &[u64], cap: u64, solutions: &[Solution]) -> Value {
    json!({
        "orders_a": orders_a,
        "orders_b": orders_b,
        "cap": cap,
        "unknowns": orders_a.len() + orders_b.len() + 3,
        "solutions": solutions,
    })
}

pub fn hilbert_to_csv(solutions: &[Solution]) -> String {
    let mut out = String::new();
    for s in solutions {
        let cells: Vec<String> = s.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

/// Parses `"q0,q1,q2,q3"` with rational components into a quaternion.
pub fn parse_quaternion_list(s: &str) -> Result<Quaternion, IoError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(field_err(
            "quaternion",
            format!("expected 4 comma-separated components, found {}", parts.len()),
        ));
    }
    let mut q = Vec::with_capacity(4);
    for (i, p) in parts.iter().enumerate() {
        q.push(
            parse_rational_str(p)
                .map_err(|reason| field_err(&format!("quaternion[{i}]"), reason))?,
        );
    }
    Quaternion::new(q[0].clone(), q[1].clone(), q[2].clone(), q[3].clone())
        .map_err(|e| field_err("quaternion", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::harmonic_decompose_elasticity;
    use crate::invariants::full_basis;
    use crate::scalar::{ExactScalar, FloatScalar};

    fn iso_json(lambda: i64, mu: i64) -> String {
        let l2m = lambda + 2 * mu;
        format!(
            r#"{{"voigt": [
                [{l2m}, {lambda}, {lambda}, 0, 0, 0],
                [{lambda}, {l2m}, {lambda}, 0, 0, 0],
                [{lambda}, {lambda}, {l2m}, 0, 0, 0],
                [0, 0, 0, {mu}, 0, 0],
                [0, 0, 0, 0, {mu}, 0],
                [0, 0, 0, 0, 0, {mu}]
            ]}}"#
        )
    }

    #[test]
    fn rational_strings_parse_and_reduce() {
        assert_eq!(
            parse_rational_str("-4/6").unwrap(),
            BigRational::new(BigInt::from(-2), BigInt::from(3))
        );
        assert_eq!(
            parse_rational_str("7").unwrap(),
            BigRational::from_integer(BigInt::from(7))
        );
        assert!(parse_rational_str("1/0").unwrap_err().contains("denominator"));
        assert!(parse_rational_str("abc").unwrap_err().contains("abc"));
    }

    #[test]
    fn voigt_json_round_trips_exactly() {
        let c = tensor_from_json_str::<ExactScalar>(&iso_json(2, 3)).unwrap();
        for repr in [TensorRepr::Voigt, TensorRepr::Components] {
            let text = serde_json::to_string(&tensor_to_json(&c, repr)).unwrap();
            let back = tensor_from_json_str::<ExactScalar>(&text).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn csv_round_trips_exactly() {
        let text = "3,1,1,0,0,0,3,1,0,0,0,3,0,0,0,1,0,0,1,0,1\n";
        let c = tensor_from_csv_str::<ExactScalar>(text).unwrap();
        assert_eq!(tensor_to_csv(&c), text);
        let sniffed = tensor_from_str::<ExactScalar>(text).unwrap();
        assert_eq!(sniffed, c);
    }

    #[test]
    fn exact_mode_rejects_float_literals_by_field() {
        // Perturb the (0,0) diagonal entry, which keeps the matrix symmetric.
        let text = iso_json(2, 3).replacen('8', "8.5", 1);
        let err = tensor_from_json_str::<ExactScalar>(&text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("voigt[0][0]"), "{msg}");
        assert!(msg.contains("float literal"), "{msg}");
        assert!(!msg.contains('\n'));

        // The same file is fine in float mode.
        assert!(tensor_from_json_str::<FloatScalar>(&text).is_ok());
    }

    #[test]
    fn rational_strings_are_accepted_in_both_modes() {
        let text = iso_json(2, 3).replace("[2, 2", "[\"2/1\", 2");
        assert!(tensor_from_json_str::<ExactScalar>(&text).is_ok());
        assert!(tensor_from_json_str::<FloatScalar>(&text).is_ok());
    }

    #[test]
    fn symmetry_violations_are_reported_on_one_line() {
        // Break voigt symmetry: (0,1) becomes 4 while (1,0) stays 2.
        let text = iso_json(2, 3).replacen("[8, 2", "[8, 4", 1);
        let err = tensor_from_json_str::<ExactScalar>(&text).unwrap_err();
        assert!(!err.to_string().contains('\n'));

        let short = tensor_from_csv_str::<ExactScalar>("1,2,3").unwrap_err();
        assert!(short.to_string().contains("21"));
    }

    #[test]
    fn decompose_output_is_complete_and_sorted() {
        let c = tensor_from_json_str::<ExactScalar>(&iso_json(1, 1)).unwrap();
        let parts = harmonic_decompose_elasticity(&c);
        let v = decompose_to_json(&parts);
        assert_eq!(v["lambda0"], Value::String("15".into()));
        assert_eq!(v["mu0"], Value::String("15".into()));
        let d4 = v["d4"].as_object().unwrap();
        assert_eq!(d4.len(), 15);
        let keys: Vec<&String> = d4.keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(keys[0], "1111");

        let csv = decompose_to_csv(&parts);
        assert_eq!(csv.lines().count(), 1 + 2 + 6 + 6 + 15);
    }

    #[test]
    fn invariant_output_has_297_rows_in_both_formats() {
        let c = tensor_from_json_str::<ExactScalar>(&iso_json(1, 1)).unwrap();
        let v = full_basis(&c).unwrap();
        let arr = invariants_to_json(&v);
        assert_eq!(arr.as_array().unwrap().len(), 297);
        assert_eq!(arr[0]["id"], Value::String("H0-lambda:1:1".into()));
        assert_eq!(arr[0]["value_re"], Value::String("15".into()));
        assert_eq!(arr[0]["value_im"], Value::String("0".into()));

        let csv = invariants_to_csv(&v);
        assert_eq!(csv.lines().count(), 298);
        assert!(csv.starts_with("id,family,degree,index,value_re,value_im\n"));

        let zeros = arr
            .as_array()
            .unwrap()
            .iter()
            .filter(|row| row["value_re"] == Value::String("0".into()))
            .count();
        assert_eq!(zeros, 295);
    }

    #[test]
    fn quaternion_lists_parse_with_field_diagnostics() {
        assert!(parse_quaternion_list("1,2,-1,3").is_ok());
        assert!(parse_quaternion_list("1/2,0,0,1").is_ok());
        let err = parse_quaternion_list("1,2,3").unwrap_err().to_string();
        assert!(err.contains("4 comma-separated"), "{err}");
        let err = parse_quaternion_list("1,x,0,0").unwrap_err().to_string();
        assert!(err.contains("quaternion[1]"), "{err}");
        let err = parse_quaternion_list("0,0,0,0").unwrap_err().to_string();
        assert!(err.contains("zero quaternion"), "{err}");
    }

    #[test]
    fn orbit_and_hilbert_renderers_are_stable() {
        let report = OrbitReport {
            equivalent: false,
            max_discrepancy: 0.25,
            worst: None,
        };
        assert_eq!(
            serde_json::to_string(&orbit_to_json(&report)).unwrap(),
            r#"{"equivalent":false,"max_discrepancy":0.25,"worst":null}"#
        );
        assert_eq!(
            orbit_to_csv(&report),
            "equivalent,max_discrepancy,worst\nfalse,0.25,\n"
        );

        let sols = vec![vec![0, 1, 0, 2, 0], vec![1, 0, 2, 0, 0]];
        let v = hilbert_to_json(&[2], &[2], 6, &sols);
        assert_eq!(v["unknowns"], json!(5));
        assert_eq!(v["solutions"][0], json!([0, 1, 0, 2, 0]));
        assert_eq!(hilbert_to_csv(&sols), "0,1,0,2,0\n1,0,2,0,0\n");
    }
}
