//! JSON encoding of scalars, vectors and matrices.
//!
//! A complex number is `{"re": .., "im": ..}`. String parts (`"3/2"`,
//! `"-4"`, `"0.25"`) select the exact backend, numeric parts the floating
//! one. A bicomplex scalar is `{"idem": [c1, c2]}` or `{"eucl": [z1, z2]}`.
//! A matrix is `{"rows", "cols", "backend", "entries": [[scalar, ..], ..]}`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::field::{ComplexField, GaussRational, C64};
use crate::jordan::{BicomplexJordanData, ComplexJordanData};
use crate::lattice::{BicomplexSubspace, Lattice, Subspace};
use crate::matrix::{BicomplexMatrix, BicomplexVector, Matrix};
use crate::scalar::{BicomplexScalar, HyperbolicValue};
use crate::spectral::BicomplexSpectralData;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        }
    }
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(Error::Parse(format!("unknown backend {other:?}"))),
        }
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// A real number as read from JSON, before a backend is chosen.
#[derive(Debug, Clone, PartialEq)]
enum RawReal {
    Exact(BigRational),
    Float(f64),
}

impl RawReal {
    fn parse(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s).map(RawReal::Exact),
            Value::Number(n) => n
                .as_f64()
                .map(RawReal::Float)
                .ok_or_else(|| parse_err(format!("number {n} out of range"))),
            other => Err(parse_err(format!("expected a number or string, found {other}"))),
        }
    }

    fn to_exact(&self) -> Result<BigRational> {
        match self {
            RawReal::Exact(q) => Ok(q.clone()),
            RawReal::Float(x) => BigRational::from_f64(*x)
                .ok_or_else(|| parse_err(format!("{x} has no exact value"))),
        }
    }

    fn to_f64(&self) -> f64 {
        match self {
            RawReal::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            RawReal::Float(x) => *x,
        }
    }

    fn is_exact(&self) -> bool {
        matches!(self, RawReal::Exact(_))
    }
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-0.125"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if let Ok(q) = BigRational::from_str(t) {
        if !q.denom().eq(&BigInt::from(0)) {
            return Ok(q);
        }
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let bad = || parse_err(format!("cannot read {s:?} as a rational number"));
    let (int, frac) = body.split_once('.').ok_or_else(bad)?;
    if (int.is_empty() && frac.is_empty())
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = BigInt::from_str(format!("{int}{frac}").trim_start_matches('0'))
        .unwrap_or_else(|_| BigInt::from(0));
    let q = BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    Ok(if neg { -q } else { q })
}

#[derive(Debug, Clone, PartialEq)]
struct RawComplex {
    re: RawReal,
    im: RawReal,
}

impl RawComplex {
    fn parse(v: &Value) -> Result<Self> {
        match v {
            Value::Object(m) => {
                let part = |k: &str| -> Result<RawReal> {
                    match m.get(k) {
                        Some(x) => RawReal::parse(x),
                        None => Ok(RawReal::Exact(BigRational::from_integer(0.into()))),
                    }
                };
                if m.keys().any(|k| k != "re" && k != "im") {
                    return Err(parse_err(format!("unexpected keys in complex number {v}")));
                }
                let (re, im) = (part("re")?, part("im")?);
                // a missing part adopts the backend of the other
                let im = if m.contains_key("im") || re.is_exact() { im } else { RawReal::Float(0.0) };
                let re = if m.contains_key("re") || im.is_exact() { re } else { RawReal::Float(0.0) };
                Ok(RawComplex { re, im })
            }
            Value::String(_) | Value::Number(_) => {
                let re = RawReal::parse(v)?;
                let im = if re.is_exact() {
                    RawReal::Exact(BigRational::from_integer(0.into()))
                } else {
                    RawReal::Float(0.0)
                };
                Ok(RawComplex { re, im })
            }
            other => Err(parse_err(format!("expected a complex number, found {other}"))),
        }
    }

    fn is_exact(&self) -> bool {
        self.re.is_exact() && self.im.is_exact()
    }

    fn to_exact(&self) -> Result<GaussRational> {
        Ok(Complex::new(self.re.to_exact()?, self.im.to_exact()?))
    }

    fn to_float(&self) -> C64 {
        Complex::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[derive(Debug, Clone, PartialEq)]
struct RawScalar {
    idem: bool,
    a: RawComplex,
    b: RawComplex,
}

impl RawScalar {
    fn parse(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| parse_err(format!("expected a bicomplex scalar object, found {v}")))?;
        let (idem, pair) = match (obj.get("idem"), obj.get("eucl")) {
            (Some(p), None) if obj.len() == 1 => (true, p),
            (None, Some(p)) if obj.len() == 1 => (false, p),
            _ => return Err(parse_err(format!("scalar needs exactly one of \"idem\" or \"eucl\": {v}"))),
        };
        let arr = pair
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| parse_err(format!("expected a pair of complex numbers, found {pair}")))?;
        Ok(RawScalar {
            idem,
            a: RawComplex::parse(&arr[0])?,
            b: RawComplex::parse(&arr[1])?,
        })
    }

    fn is_exact(&self) -> bool {
        self.a.is_exact() && self.b.is_exact()
    }

    fn build<F: ComplexField>(&self, a: F, b: F) -> BicomplexScalar<F> {
        if self.idem {
            BicomplexScalar::from_idempotent(a, b)
        } else {
            BicomplexScalar::from_euclidean(a, b)
        }
    }

    fn to_exact(&self) -> Result<BicomplexScalar<GaussRational>> {
        Ok(self.build(self.a.to_exact()?, self.b.to_exact()?))
    }

    fn to_float(&self) -> BicomplexScalar<C64> {
        self.build(self.a.to_float(), self.b.to_float())
    }
}

/// A value on whichever backend the input selected.
#[derive(Debug, Clone, PartialEq)]
pub enum Dual<E, F> {
    Exact(E),
    Float(F),
}

pub type AnyScalar = Dual<BicomplexScalar<GaussRational>, BicomplexScalar<C64>>;
pub type AnyScalars = Dual<Vec<BicomplexScalar<GaussRational>>, Vec<BicomplexScalar<C64>>>;
pub type AnyMatrix = Dual<BicomplexMatrix<GaussRational>, BicomplexMatrix<C64>>;

impl AnyMatrix {
    pub fn backend(&self) -> Backend {
        match self {
            Dual::Exact(_) => Backend::Exact,
            Dual::Float(_) => Backend::Float,
        }
    }

    pub fn into_float(self) -> BicomplexMatrix<C64> {
        match self {
            Dual::Exact(m) => m.to_c64(),
            Dual::Float(m) => m,
        }
    }

    pub fn into_exact(self) -> Result<BicomplexMatrix<GaussRational>> {
        match self {
            Dual::Exact(m) => Ok(m),
            Dual::Float(m) => Ok(BicomplexMatrix::new(
                m.m1().try_map(|z| GaussRational::from_c64(*z))?,
                m.m2().try_map(|z| GaussRational::from_c64(*z))?,
            )?),
        }
    }

    pub fn convert(self, backend: Backend) -> Result<Self> {
        Ok(match backend {
            Backend::Exact => Dual::Exact(self.into_exact()?),
            Backend::Float => Dual::Float(self.into_float()),
        })
    }
}

/// Reads one scalar; `backend` forces a backend, otherwise string parts
/// select exact arithmetic.
pub fn scalar_from_json(v: &Value, backend: Option<Backend>) -> Result<AnyScalar> {
    let raw = RawScalar::parse(v)?;
    match backend.unwrap_or(if raw.is_exact() { Backend::Exact } else { Backend::Float }) {
        Backend::Exact => Ok(Dual::Exact(raw.to_exact()?)),
        Backend::Float => Ok(Dual::Float(raw.to_float())),
    }
}

/// Reads a list of scalars onto a common backend: exact only if every
/// entry is exact, unless `backend` says otherwise.
pub fn scalars_from_json(values: &[Value], backend: Option<Backend>) -> Result<AnyScalars> {
    let raw = values.iter().map(RawScalar::parse).collect::<Result<Vec<_>>>()?;
    let chosen = backend.unwrap_or(if raw.iter().all(RawScalar::is_exact) {
        Backend::Exact
    } else {
        Backend::Float
    });
    match chosen {
        Backend::Exact => Ok(Dual::Exact(raw.iter().map(RawScalar::to_exact).collect::<Result<_>>()?)),
        Backend::Float => Ok(Dual::Float(raw.iter().map(RawScalar::to_float).collect())),
    }
}

fn get_usize(obj: &Map<String, Value>, key: &str) -> Result<Option<usize>> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_u64()
            .map(|n| Some(n as usize))
            .ok_or_else(|| parse_err(format!("\"{key}\" must be a nonnegative integer"))),
    }
}

pub fn matrix_from_json(v: &Value, backend: Option<Backend>) -> Result<AnyMatrix> {
    let obj = v
        .as_object()
        .ok_or_else(|| parse_err("matrix must be a JSON object"))?;
    let rows_json = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("matrix needs an \"entries\" array of rows"))?;
    let rows = get_usize(obj, "rows")?.unwrap_or(rows_json.len());
    if rows != rows_json.len() {
        return Err(parse_err(format!(
            "\"rows\" is {rows} but {} rows are given",
            rows_json.len()
        )));
    }
    let mut flat = Vec::new();
    let mut cols = get_usize(obj, "cols")?;
    for (r, row) in rows_json.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| parse_err(format!("row {r} is not an array")))?;
        match cols {
            None => cols = Some(row.len()),
            Some(c) if c != row.len() => {
                return Err(parse_err(format!("row {r} has {} entries, expected {c}", row.len())))
            }
            _ => {}
        }
        flat.extend(row.iter().cloned());
    }
    let cols = cols.unwrap_or(0);
    if rows == 0 || cols == 0 {
        return Err(parse_err("matrix must have at least one row and one column"));
    }
    let declared = match obj.get("backend") {
        None => None,
        Some(Value::String(s)) => Some(s.parse::<Backend>()?),
        Some(other) => return Err(parse_err(format!("\"backend\" must be a string, found {other}"))),
    };
    let m = match scalars_from_json(&flat, declared)? {
        Dual::Exact(e) => Dual::Exact(BicomplexMatrix::from_entries(rows, cols, e)?),
        Dual::Float(f) => Dual::Float(BicomplexMatrix::from_entries(rows, cols, f)?),
    };
    match backend {
        Some(b) => m.convert(b),
        None => Ok(m),
    }
}

/// JSON value of a complex number on either backend.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for GaussRational {
    fn to_json(&self) -> Value {
        json!({"re": self.re.to_string(), "im": self.im.to_string()})
    }
}

impl ToJson for C64 {
    fn to_json(&self) -> Value {
        json!({"re": self.re, "im": self.im})
    }
}

impl<F: ComplexField + ToJson> ToJson for BicomplexScalar<F> {
    fn to_json(&self) -> Value {
        json!({"idem": [self.c1.to_json(), self.c2.to_json()]})
    }
}

impl<F: ComplexField + ToJson> ToJson for BicomplexVector<F> {
    fn to_json(&self) -> Value {
        Value::Array(self.entries().iter().map(ToJson::to_json).collect())
    }
}

impl<F: ComplexField + ToJson> ToJson for Matrix<F> {
    fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows())
                .map(|r| Value::Array(self.row(r).iter().map(ToJson::to_json).collect()))
                .collect(),
        )
    }
}

impl<F: ComplexField + ToJson> ToJson for BicomplexMatrix<F> {
    fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.rows())
            .map(|r| Value::Array((0..self.cols()).map(|c| self.entry(r, c).to_json()).collect()))
            .collect();
        json!({
            "rows": self.rows(),
            "cols": self.cols(),
            "backend": if F::EXACT { "exact" } else { "float" },
            "entries": entries,
        })
    }
}

impl ToJson for HyperbolicValue<BigRational> {
    fn to_json(&self) -> Value {
        let (a, b) = self.raw();
        if self.is_squared() {
            json!({"squared": [a.to_string(), b.to_string()], "approx": self.to_f64()})
        } else {
            json!({"value": [a.to_string(), b.to_string()]})
        }
    }
}

impl ToJson for HyperbolicValue<f64> {
    fn to_json(&self) -> Value {
        json!({"value": self.to_f64()})
    }
}

impl ToJson for AnyMatrix {
    fn to_json(&self) -> Value {
        match self {
            Dual::Exact(m) => m.to_json(),
            Dual::Float(m) => m.to_json(),
        }
    }
}

/// Reads a bicomplex vector given as an array of scalars.
pub fn vector_from_json(v: &Value) -> Result<BicomplexVector<C64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err("vector must be an array of scalars"))?;
    match scalars_from_json(arr, Some(Backend::Float))? {
        Dual::Float(s) => Ok(BicomplexVector::from_entries(s)),
        Dual::Exact(_) => unreachable!("float backend requested"),
    }
}

/// Parses JSON text, mapping syntax errors to [`Error::Parse`].
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))
}

fn component_blocks_json(c: &ComplexJordanData) -> Value {
    Value::Array(
        c.blocks
            .iter()
            .map(|b| json!({"eigenvalue": b.eigenvalue.to_json(), "size": b.size()}))
            .collect(),
    )
}

/// `{p, j, blocks, superdiagonal_alphabet}` for a Jordan decomposition.
pub fn jordan_json(d: &BicomplexJordanData) -> Value {
    json!({
        "p": d.p.to_json(),
        "j": d.j.to_json(),
        "blocks": {"1": component_blocks_json(&d.comp1), "2": component_blocks_json(&d.comp2)},
        "superdiagonal_alphabet": d.superdiagonal_alphabet().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    })
}

/// `{nodes, covers, complete, warnings}` for a lattice.
pub fn lattice_json(l: &Lattice<BicomplexSubspace>) -> Value {
    let nodes: Vec<Value> = l
        .nodes
        .iter()
        .map(|n| {
            let (d1, d2) = n.subspace.dims();
            let basis = |s: &Subspace| -> Value {
                Value::Array(
                    s.basis()
                        .iter()
                        .map(|v| Value::Array(v.iter().map(ToJson::to_json).collect()))
                        .collect(),
                )
            };
            json!({
                "label": n.label,
                "tuple": n.tuple,
                "dims": [d1, d2],
                "basis": {"1": basis(&n.subspace.s1), "2": basis(&n.subspace.s2)},
            })
        })
        .collect();
    json!({
        "nodes": nodes,
        "covers": l.covers.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "complete": l.complete,
        "warnings": l.warnings,
        "family": "prefix spans of Jordan chains",
    })
}

/// `{p, d, pairing, residuals}` for a diagonalization.
pub fn spectral_json(d: &BicomplexSpectralData) -> Value {
    json!({
        "p": d.p.to_json(),
        "d": d.d.to_json(),
        "pairing": d.pairing,
        "residuals": {
            "unitarity": [d.unitarity_residual.0, d.unitarity_residual.1],
            "reconstruction": [d.reconstruction_residual.0, d.reconstruction_residual.1],
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{gauss, gauss_frac};

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/2").unwrap(), BigRational::new(3.into(), 2.into()));
        assert_eq!(parse_rational("-0.125").unwrap(), BigRational::new((-1).into(), 8.into()));
        assert_eq!(parse_rational("7").unwrap(), BigRational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn backend_inference() {
        let e = parse_json(r#"{"idem":[{"re":"1/2","im":"0"},{"re":"3"}]}"#).unwrap();
        assert_eq!(
            scalar_from_json(&e, None).unwrap(),
            Dual::Exact(BicomplexScalar::from_idempotent(gauss_frac(1, 2, 0, 1), gauss(3, 0)))
        );
        let f = parse_json(r#"{"idem":[{"re":0.5,"im":0},{"re":3}]}"#).unwrap();
        assert!(matches!(scalar_from_json(&f, None).unwrap(), Dual::Float(_)));
    }

    #[test]
    fn euclidean_input() {
        let v = parse_json(r#"{"eucl":[{"re":"3","im":"4"},{"re":"1","im":"-2"}]}"#).unwrap();
        let Dual::Exact(s) = scalar_from_json(&v, None).unwrap() else { panic!() };
        assert_eq!(s, BicomplexScalar::from_euclidean(gauss(3, 4), gauss(1, -2)));
    }

    #[test]
    fn matrix_round_trip() {
        let text = r#"{"rows":1,"cols":2,"backend":"exact","entries":[[{"idem":["1","2"]},{"idem":["0","-1/3"]}]]}"#;
        let m = matrix_from_json(&parse_json(text).unwrap(), None).unwrap();
        let again = matrix_from_json(&m.to_json(), None).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn malformed_inputs() {
        for text in [
            r#"{"rows":2,"entries":[[{"idem":["1","2"]}]]}"#,
            r#"{"entries":[[{"idem":["1"]}]]}"#,
            r#"{"entries":[[{"idem":["1","2"],"eucl":["1","2"]}]]}"#,
            r#"{"entries":[]}"#,
            r#"[1,2]"#,
        ] {
            let v = parse_json(text).unwrap();
            assert!(matches!(matrix_from_json(&v, None), Err(Error::Parse(_))), "{text}");
        }
        assert!(matches!(parse_json("{"), Err(Error::Parse(_))));
    }
}
