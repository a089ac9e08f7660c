//! A fixed list of small symmetric algebras used by tests and sweeps.

use crate::algebra::{matrix_algebra, trivial_extension, truncated_poly, Algebra};
use crate::error::Result;
use crate::exact::Field;

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub algebra: Algebra,
}

/// Names of all corpus algebras, in a fixed order.
pub const NAMES: &[&str] = &[
    "gf2/k",
    "gf2/k[x]/x^2",
    "gf2/k[y]/y^4",
    "gf2/C2",
    "gf2/C4",
    "gf2/C8",
    "gf2/C2xC2",
    "gf2/S3",
    "gf2/M2(k)",
    "gf2/T(k)",
    "gf2/T(k[x]/x^2)",
    "gf2/M2(k[x]/x^2)",
    "gf3/k[x]/x^3",
    "gf3/C3",
    "gf3/C9",
    "gf4/C2",
    "gf4/C4",
];

pub fn by_name(name: &str) -> Result<Option<Algebra>> {
    let gf2 = Field::new(2, 1)?;
    let gf3 = Field::new(3, 1)?;
    let gf4 = Field::new(2, 2)?;
    let a = match name {
        "gf2/k" => truncated_poly(&gf2, 1)?,
        "gf2/k[x]/x^2" => truncated_poly(&gf2, 2)?,
        "gf2/k[y]/y^4" => truncated_poly(&gf2, 4)?,
        "gf2/C2" => Algebra::group_cyclic(&gf2, 2)?,
        "gf2/C4" => Algebra::group_cyclic(&gf2, 4)?,
        "gf2/C8" => Algebra::group_cyclic(&gf2, 8)?,
        "gf2/C2xC2" => Algebra::group_klein(&gf2)?,
        "gf2/S3" => Algebra::group_symmetric(&gf2, 3)?,
        "gf2/M2(k)" => matrix_algebra(&truncated_poly(&gf2, 1)?, 2)?,
        "gf2/T(k)" => trivial_extension(&truncated_poly(&gf2, 1)?)?,
        "gf2/T(k[x]/x^2)" => trivial_extension(&truncated_poly(&gf2, 2)?)?,
        "gf2/M2(k[x]/x^2)" => matrix_algebra(&truncated_poly(&gf2, 2)?, 2)?,
        "gf3/k[x]/x^3" => truncated_poly(&gf3, 3)?,
        "gf3/C3" => Algebra::group_cyclic(&gf3, 3)?,
        "gf3/C9" => Algebra::group_cyclic(&gf3, 9)?,
        "gf4/C2" => Algebra::group_cyclic(&gf4, 2)?,
        "gf4/C4" => Algebra::group_cyclic(&gf4, 4)?,
        _ => return Ok(None),
    };
    Ok(Some(a))
}

pub fn all() -> Vec<Entry> {
    NAMES
        .iter()
        .map(|&name| Entry {
            name,
            algebra: by_name(name).unwrap().unwrap(),
        })
        .collect()
}

/// Corpus algebras of dimension at most `d`.
pub fn up_to_dim(d: usize) -> Vec<Entry> {
    all().into_iter().filter(|e| e.algebra.dim() <= d).collect()
}
