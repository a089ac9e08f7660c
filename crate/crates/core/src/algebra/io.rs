use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Algebra, Kind};
use crate::error::{Error, Result};
use crate::exact::{Elem, Field, Mat};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    #[serde(default = "one")]
    pub e: u32,
}

fn one() -> u32 {
    1
}

impl FieldSpec {
    pub fn of(field: &Field) -> Self {
        FieldSpec {
            p: field.p(),
            e: field.e(),
        }
    }

    pub fn build(&self) -> Result<Field> {
        Field::new(self.p, self.e)
    }
}

/// A field coefficient: an integer (reduced mod p) or a list of polynomial
/// coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Poly(Vec<i64>),
}

impl Coeff {
    pub fn to_elem(&self, field: &Field) -> Result<Elem> {
        match self {
            Coeff::Int(v) => Ok(field.from_int(*v)),
            Coeff::Poly(c) => field.from_poly(c),
        }
    }

    pub fn from_elem(field: &Field, x: Elem) -> Self {
        if field.is_prime_field() {
            Coeff::Int(x as i64)
        } else {
            Coeff::Poly(field.to_poly(x).into_iter().map(i64::from).collect())
        }
    }
}

/// The on-disk algebra document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub field: FieldSpec,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<Coeff>,
    pub mult: Vec<(usize, usize, Vec<(usize, Coeff)>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<Vec<Coeff>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<Kind>,
}

impl AlgebraDoc {
    pub fn from_algebra(a: &Algebra) -> Self {
        let f = a.field();
        let d = a.dim();
        let mut mult = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let prod = a.basis_product(i, j);
                if !prod.is_empty() {
                    mult.push((
                        i,
                        j,
                        prod.iter().map(|&(k, c)| (k, Coeff::from_elem(f, c))).collect(),
                    ));
                }
            }
        }
        AlgebraDoc {
            schema_version: Some(SCHEMA_VERSION),
            field: FieldSpec::of(f),
            dim: d,
            basis: a.names().to_vec(),
            unit: a.unit().iter().map(|&x| Coeff::from_elem(f, x)).collect(),
            mult,
            form: a.form().map(|g| {
                g.row_vecs()
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| Coeff::from_elem(f, x)).collect())
                    .collect()
            }),
            kind: a.kind().cloned(),
        }
    }

    pub fn to_algebra(&self) -> Result<Algebra> {
        if let Some(found) = self.schema_version.filter(|&v| v != SCHEMA_VERSION) {
            return Err(Error::SchemaVersionMismatch {
                found,
                expected: SCHEMA_VERSION,
            });
        }
        let f = self.field.build()?;
        let d = self.dim;
        if self.basis.len() != d {
            return Err(Error::MalformedDocument(format!(
                "dim is {d} but {} basis names given",
                self.basis.len()
            )));
        }
        if self.unit.len() != d {
            return Err(Error::MalformedDocument(format!(
                "unit has {} coordinates, expected {d}",
                self.unit.len()
            )));
        }
        let unit = self
            .unit
            .iter()
            .map(|c| c.to_elem(&f))
            .collect::<Result<Vec<_>>>()?;
        let mut products = vec![Vec::new(); d * d];
        for (i, j, terms) in &self.mult {
            if *i >= d || *j >= d {
                return Err(Error::MalformedDocument(format!("product ({i}, {j}) out of range")));
            }
            for (k, c) in terms {
                if *k >= d {
                    return Err(Error::MalformedDocument(format!(
                        "product ({i}, {j}) has coordinate {k} out of range"
                    )));
                }
                products[i * d + j].push((*k, c.to_elem(&f)?));
            }
        }
        let form = match &self.form {
            None => None,
            Some(rows) => {
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    return Err(Error::MalformedDocument(format!("form must be {d}x{d}")));
                }
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|c| c.to_elem(&f)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Some(Mat::from_rows(&f, d, &rows))
            }
        };
        let a = Algebra::new(&f, self.basis.clone(), unit, products, form)?;
        Ok(match &self.kind {
            Some(k) => a.with_kind(k.clone()),
            None => a,
        })
    }
}

impl Algebra {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AlgebraDoc::from_algebra(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Algebra> {
        let doc: AlgebraDoc =
            serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
        doc.to_algebra()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Algebra> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::MalformedDocument(format!("{}: {e}", path.display())))?;
        Algebra::from_json(&text)
    }
}
