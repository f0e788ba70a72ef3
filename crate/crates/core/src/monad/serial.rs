//! Versioned JSON form of monad points.
//!
//! ```json
//! {"schema_version": 1, "e": 1, "field": {"type": "prime", "p": 10007},
//!  "blocks": {"a1": [[[{"exps": [1, 0, 1, 0], "coeff": "3"}]], ...], ...},
//!  "seed": 42}
//! ```
//!
//! Coefficients are strings: decimal for prime fields, `"n/d"` for the
//! rationals. Terms are written in increasing monomial order, so writing a
//! parsed document reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use super::{shape, BlockSpec, MonadPoint};
use crate::cox::{CoxMonomial, CoxPolynomial, PolyMatrix};
use crate::error::{HblError, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::pic::Surface;

pub const MONAD_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    exps: [i64; 4],
    coeff: String,
}

type MatrixJson = Vec<Vec<Vec<TermJson>>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlocksJson {
    a1: MatrixJson,
    a2: MatrixJson,
    b1: MatrixJson,
    b2: MatrixJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonadJson {
    schema_version: u32,
    e: u32,
    field: FieldSpec,
    blocks: BlocksJson,
    seed: Option<u64>,
}

fn write_matrix<F: Field>(f: &F, m: &PolyMatrix<F::Elem>) -> MatrixJson {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|p| {
                    p.terms()
                        .iter()
                        .map(|(mono, c)| TermJson {
                            exps: mono.exps,
                            coeff: f.format_elem(c),
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn read_matrix<F: Field>(
    f: &F,
    s: &Surface,
    spec: &BlockSpec,
    m: &MatrixJson,
) -> Result<PolyMatrix<F::Elem>> {
    if m.len() != spec.rows || m.iter().any(|r| r.len() != spec.cols) {
        return Err(HblError::Parse(format!(
            "block {} must be {} x {}",
            spec.name, spec.rows, spec.cols
        )));
    }
    m.iter()
        .map(|row| {
            row.iter()
                .map(|terms| {
                    let parsed = terms
                        .iter()
                        .map(|t| Ok((CoxMonomial { exps: t.exps }, f.parse_elem(&t.coeff)?)))
                        .collect::<Result<Vec<_>>>()?;
                    CoxPolynomial::from_terms(f, s, spec.degree, parsed)
                })
                .collect()
        })
        .collect()
}

impl<F: Field> MonadPoint<F> {
    fn to_doc(&self) -> MonadJson {
        let f = &self.field;
        MonadJson {
            schema_version: MONAD_SCHEMA_VERSION,
            e: self.shape.e,
            field: f.spec(),
            blocks: BlocksJson {
                a1: write_matrix(f, &self.a1),
                a2: write_matrix(f, &self.a2),
                b1: write_matrix(f, &self.b1),
                b2: write_matrix(f, &self.b2),
            },
            seed: self.seed,
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_doc()).expect("monad documents always serialize")
    }

    /// Pretty JSON with sorted keys, byte-identical to printing
    /// [`Self::to_json_value`].
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("monad documents always serialize")
    }

    fn from_doc(field: F, doc: &MonadJson) -> Result<Self> {
        if doc.schema_version != MONAD_SCHEMA_VERSION {
            return Err(HblError::Parse(format!(
                "unsupported schema_version {}",
                doc.schema_version
            )));
        }
        if doc.field != field.spec() {
            return Err(HblError::Parse(format!(
                "document is over {}, expected {}",
                doc.field,
                field.spec()
            )));
        }
        let sh = shape(doc.e)?;
        let s = sh.surface();
        let [sa1, sa2, sb1, sb2] = sh.blocks();
        Ok(MonadPoint {
            a1: read_matrix(&field, &s, &sa1, &doc.blocks.a1)?,
            a2: read_matrix(&field, &s, &sa2, &doc.blocks.a2)?,
            b1: read_matrix(&field, &s, &sb1, &doc.blocks.b1)?,
            b2: read_matrix(&field, &s, &sb2, &doc.blocks.b2)?,
            shape: sh,
            field,
            seed: doc.seed,
        })
    }

    pub fn from_json_value(field: F, v: &serde_json::Value) -> Result<Self> {
        let doc: MonadJson =
            serde_json::from_value(v.clone()).map_err(|e| HblError::Parse(e.to_string()))?;
        Self::from_doc(field, &doc)
    }

    pub fn from_json(field: F, text: &str) -> Result<Self> {
        let doc: MonadJson = serde_json::from_str(text).map_err(|e| HblError::Parse(e.to_string()))?;
        Self::from_doc(field, &doc)
    }
}

/// A monad over whichever field its document names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMonad {
    Prime(MonadPoint<PrimeField>),
    Rational(MonadPoint<Rationals>),
}

impl AnyMonad {
    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let doc: MonadJson =
            serde_json::from_value(v.clone()).map_err(|e| HblError::Parse(e.to_string()))?;
        match doc.field {
            FieldSpec::Prime { p } => Ok(AnyMonad::Prime(MonadPoint::from_doc(PrimeField::new(p)?, &doc)?)),
            FieldSpec::Rational => Ok(AnyMonad::Rational(MonadPoint::from_doc(Rationals::default(), &doc)?)),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| HblError::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            AnyMonad::Prime(m) => m.to_json_value(),
            AnyMonad::Rational(m) => m.to_json_value(),
        }
    }

    pub fn e(&self) -> u32 {
        match self {
            AnyMonad::Prime(m) => m.shape.e,
            AnyMonad::Rational(m) => m.shape.e,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::sample_monad;

    #[test]
    fn prime_round_trip_is_exact() {
        let f = PrimeField::new(10007).unwrap();
        let m = sample_monad(f, 2, 9).unwrap();
        let text = m.to_json();
        let back = MonadPoint::from_json(f, &text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json(), text);
        assert_eq!(AnyMonad::from_json(&text).unwrap(), AnyMonad::Prime(m));
    }

    #[test]
    fn rational_round_trip_is_exact() {
        let m = sample_monad(Rationals::default(), 1, 4).unwrap();
        let text = m.to_json();
        assert!(text.contains('/'));
        let back = MonadPoint::from_json(Rationals::default(), &text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn rejects_bad_documents() {
        let f = PrimeField::new(10007).unwrap();
        let m = sample_monad(f, 1, 1).unwrap();
        let mut v = m.to_json_value();
        v["schema_version"] = 99.into();
        assert!(AnyMonad::from_json_value(&v).is_err());

        let mut v = m.to_json_value();
        v["blocks"]["a2"][0][0] = serde_json::json!([{"exps": [1, 0, 0, 0], "coeff": "1"}]);
        assert!(matches!(
            AnyMonad::from_json_value(&v),
            Err(HblError::DegreeMismatch { .. })
        ));

        let mut v = m.to_json_value();
        v["e"] = 0.into();
        assert!(matches!(AnyMonad::from_json_value(&v), Err(HblError::ZeroTwist(0))));

        assert!(MonadPoint::from_json(Rationals::default(), &m.to_json()).is_err());
    }
}
