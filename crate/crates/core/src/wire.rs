//! JSON encodings of fields, elements, matrices and certificates.
//!
//! Every matrix carries its field inline, so a certificate can be checked
//! without any other context.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classify::{Certificate, Label, Step, StepName, StepParams};
use crate::error::{Error, Result};
use crate::gf::{build_field, Elem, Field, Twist};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u32,
    pub d: usize,
    /// Ascending coefficients of the defining polynomial; checked when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemJson {
    pub p: u32,
    pub d: usize,
    pub coeffs: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: FieldJson,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<ElemJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum LabelJson {
    Ws { s: usize },
    Identity,
    PlaneZ0,
    PlaneZ1,
    PlaneX0,
    PlaneX1,
    PlaneX2,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(flatten)]
    pub vectors: BTreeMap<String, Vec<ElemJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub name: String,
    pub params: ParamsJson,
    pub matrix: MatrixJson,
    pub claimed: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub input: MatrixJson,
    pub q: u64,
    pub label: LabelJson,
    #[serde(rename = "T")]
    pub t: MatrixJson,
    pub field: FieldJson,
    pub trace: Vec<StepJson>,
    #[serde(default)]
    pub seed: Option<u64>,
}

pub fn field_to_json(k: &Field) -> FieldJson {
    FieldJson { p: k.p(), d: k.degree(), modulus: Some(k.modulus().to_vec()) }
}

/// Rebuilds the field from `(p, d)` and rejects a header whose modulus differs.
pub fn field_from_json(f: &FieldJson) -> Result<Field> {
    let k = build_field(f.p as u64, f.d)?;
    if let Some(m) = &f.modulus {
        if m.as_slice() != k.modulus() {
            return Err(Error::Malformed(format!(
                "modulus {:?} is not the defining polynomial {:?} of F_{}^{}",
                m,
                k.modulus(),
                f.p,
                f.d
            )));
        }
    }
    Ok(k)
}

pub fn elem_to_json(k: &Field, x: &Elem) -> ElemJson {
    ElemJson { p: k.p(), d: k.degree(), coeffs: x.coeffs().to_vec() }
}

pub fn elem_from_json(k: &Field, e: &ElemJson) -> Result<Elem> {
    if e.p != k.p() || e.d != k.degree() {
        return Err(Error::Malformed(format!(
            "element of F_{}^{} inside a matrix over F_{}^{}",
            e.p,
            e.d,
            k.p(),
            k.degree()
        )));
    }
    k.from_coeffs(&e.coeffs)
}

pub fn matrix_to_json(m: &Matrix) -> MatrixJson {
    let k = m.field();
    MatrixJson {
        field: field_to_json(k),
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows()).map(|i| m.row(i).iter().map(|x| elem_to_json(k, x)).collect()).collect(),
        seed: None,
    }
}

pub fn matrix_from_json(m: &MatrixJson) -> Result<Matrix> {
    let k = field_from_json(&m.field)?;
    if m.entries.len() != m.rows || m.entries.iter().any(|r| r.len() != m.cols) {
        return Err(Error::Malformed(format!("entries do not form a {}x{} array", m.rows, m.cols)));
    }
    let rows = m
        .entries
        .iter()
        .map(|r| r.iter().map(|e| elem_from_json(&k, e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if m.rows == 0 || m.cols == 0 {
        return Err(Error::Malformed("empty matrix".into()));
    }
    Matrix::from_rows(&k, rows)
}

pub fn label_to_json(l: Label) -> LabelJson {
    match l {
        Label::Ws(s) => LabelJson::Ws { s },
        Label::Identity => LabelJson::Identity,
        Label::PlaneZ0 => LabelJson::PlaneZ0,
        Label::PlaneZ1 => LabelJson::PlaneZ1,
        Label::PlaneX0 => LabelJson::PlaneX0,
        Label::PlaneX1 => LabelJson::PlaneX1,
        Label::PlaneX2 => LabelJson::PlaneX2,
    }
}

pub fn label_from_json(l: &LabelJson) -> Label {
    match *l {
        LabelJson::Ws { s } => Label::Ws(s),
        LabelJson::Identity => Label::Identity,
        LabelJson::PlaneZ0 => Label::PlaneZ0,
        LabelJson::PlaneZ1 => Label::PlaneZ1,
        LabelJson::PlaneX0 => Label::PlaneX0,
        LabelJson::PlaneX1 => Label::PlaneX1,
        LabelJson::PlaneX2 => Label::PlaneX2,
    }
}

fn params_to_json(k: &Field, p: &StepParams) -> ParamsJson {
    ParamsJson {
        s: p.s,
        r: p.r,
        note: p.note.clone(),
        vectors: p.vectors.iter().map(|(name, v)| (name.clone(), v.iter().map(|x| elem_to_json(k, x)).collect())).collect(),
    }
}

fn params_from_json(k: &Field, p: &ParamsJson) -> Result<StepParams> {
    let vectors = p
        .vectors
        .iter()
        .map(|(name, v)| Ok((name.clone(), v.iter().map(|e| elem_from_json(k, e)).collect::<Result<Vec<_>>>()?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(StepParams { s: p.s, r: p.r, vectors, note: p.note.clone() })
}

pub fn certificate_to_json(c: &Certificate) -> CertificateJson {
    CertificateJson {
        input: matrix_to_json(&c.input),
        q: c.q.q(),
        label: label_to_json(c.label),
        t: matrix_to_json(&c.t),
        field: field_to_json(&c.field),
        trace: c
            .trace
            .iter()
            .map(|s| StepJson {
                name: s.name.as_str().to_string(),
                params: params_to_json(&c.field, &s.params),
                matrix: matrix_to_json(&s.matrix),
                claimed: matrix_to_json(&s.claimed),
            })
            .collect(),
        seed: c.seed,
    }
}

/// Decodes a certificate; every matrix except the input must live in the
/// certificate's field.
pub fn certificate_from_json(c: &CertificateJson) -> Result<Certificate> {
    let field = field_from_json(&c.field)?;
    let in_field = |m: &MatrixJson, what: &str| -> Result<Matrix> {
        let m = matrix_from_json(m)?;
        if m.field() != &field {
            return Err(Error::Malformed(format!("{what} is not over the certificate field")));
        }
        Ok(m)
    };
    let trace = c
        .trace
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let name = StepName::parse(&s.name).ok_or_else(|| Error::Malformed(format!("unknown step name {:?}", s.name)))?;
            Ok(Step {
                name,
                params: params_from_json(&field, &s.params)?,
                matrix: in_field(&s.matrix, &format!("step {i} matrix"))?,
                claimed: in_field(&s.claimed, &format!("step {i} claimed"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate {
        input: matrix_from_json(&c.input)?,
        q: Twist::new(c.q)?,
        label: label_from_json(&c.label),
        t: in_field(&c.t, "T")?,
        field,
        trace,
        seed: c.seed,
    })
}

pub fn certificate_to_string(c: &Certificate) -> String {
    serde_json::to_string_pretty(&certificate_to_json(c)).expect("plain data serializes")
}

pub fn parse_certificate(s: &str) -> Result<Certificate> {
    let json: CertificateJson = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
    certificate_from_json(&json)
}

pub fn matrix_to_string(m: &Matrix) -> String {
    serde_json::to_string_pretty(&matrix_to_json(m)).expect("plain data serializes")
}

/// Parses a matrix and its optional seed.
pub fn parse_matrix(s: &str) -> Result<(Matrix, Option<u64>)> {
    let json: MatrixJson = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
    Ok((matrix_from_json(&json)?, json.seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify_corank_one, w_matrix};
    use crate::gf::DEFAULT_MAX_EXT_DEGREE;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn element_encoding() {
        let k = build_field(2, 2).unwrap();
        let json = serde_json::to_string(&elem_to_json(&k, &k.generator())).unwrap();
        assert_eq!(json, r#"{"p":2,"d":2,"coeffs":[0,1]}"#);
        let f = serde_json::to_string(&field_to_json(&k)).unwrap();
        assert_eq!(f, r#"{"p":2,"d":2,"modulus":[1,1,1]}"#);
    }

    #[test]
    fn certificate_roundtrip() {
        let k = build_field(2, 2).unwrap();
        let q = Twist::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = Matrix::random_invertible(&k, 4, &mut rng);
        let a = w_matrix(&k, 3, 2).unwrap().congruence(&t, q).unwrap();
        let cert = classify_corank_one(&a, q, DEFAULT_MAX_EXT_DEGREE).unwrap();
        let text = certificate_to_string(&cert);
        assert!(text.contains(r#""kind": "Ws""#));
        assert_eq!(parse_certificate(&text).unwrap(), cert);
    }

    #[test]
    fn rejects_bad_headers() {
        let k = build_field(2, 2).unwrap();
        let mut json = matrix_to_json(&Matrix::identity(&k, 2));
        json.field.modulus = Some(vec![1, 0, 1]);
        assert!(matches!(matrix_from_json(&json), Err(Error::Malformed(_))));
        let mut json = matrix_to_json(&Matrix::identity(&k, 2));
        json.entries[0][0].coeffs = vec![2, 0];
        assert!(matrix_from_json(&json).is_err());
        json.entries[0][0] = ElemJson { p: 3, d: 1, coeffs: vec![1] };
        assert!(matrix_from_json(&json).is_err());
        assert!(parse_matrix("{").is_err());
    }
}
