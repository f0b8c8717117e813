use serde::{Deserialize, Serialize};

use super::PeirceAlgebra;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// One structure constant: `e_a ⋆ e_b` has coefficient `coeff` on `e_c`,
/// for `e_a ∈ 𝔄_{i,-j}`, `e_b ∈ 𝔄_{j,-k}`, `e_c ∈ 𝔄_{i,-k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub coeff: Rational,
}

/// Wire format of a [`PeirceAlgebra`]; products absent from `products` are zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeirceAlgebraJson {
    pub max_degree: usize,
    pub dims: Vec<Vec<usize>>,
    #[serde(with = "crate::rational::serde_vec")]
    pub unit0: Vec<Rational>,
    pub products: Vec<ProductEntry>,
}

impl From<&PeirceAlgebra> for PeirceAlgebraJson {
    fn from(p: &PeirceAlgebra) -> Self {
        let n = p.max_degree() + 1;
        let mut products = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for (a, b, c, v) in p.product(i, j, k).nonzero_entries() {
                        products.push(ProductEntry {
                            i,
                            j,
                            k,
                            a,
                            b,
                            c,
                            coeff: v.clone(),
                        });
                    }
                }
            }
        }
        Self {
            max_degree: p.max_degree(),
            dims: p.dims().to_vec(),
            unit0: p.unit0().to_vec(),
            products,
        }
    }
}

impl TryFrom<PeirceAlgebraJson> for PeirceAlgebra {
    type Error = Error;

    fn try_from(j: PeirceAlgebraJson) -> Result<Self> {
        let mut p = PeirceAlgebra::zero(j.max_degree, j.dims)?;
        p.set_unit0(j.unit0)?;
        for e in j.products {
            p.set_structure_constant((e.i, e.j, e.k), (e.a, e.b, e.c), e.coeff)?;
        }
        Ok(p)
    }
}

impl Serialize for PeirceAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PeirceAlgebraJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PeirceAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PeirceAlgebraJson::deserialize(d)?;
        PeirceAlgebra::try_from(j).map_err(serde::de::Error::custom)
    }
}
