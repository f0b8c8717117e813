//! Higher Zhu algebras as isomorphism types: `A_d ≅ ∏_j ∏_i Mat_{D^i_j}(R)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::labeled_partition_count;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleModuleData {
    pub label: String,
    /// `dim S_0, dim S_1, ...`.
    pub graded_dims: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_rational")]
    pub conformal_weight: Option<Rational>,
}

impl SimpleModuleData {
    pub fn new(label: impl Into<String>, graded_dims: Vec<u64>) -> Self {
        Self {
            label: label.into(),
            graded_dims,
            conformal_weight: None,
        }
    }

    pub fn dim_at(&self, j: usize) -> u64 {
        self.graded_dims.get(j).copied().unwrap_or(0)
    }
}

mod opt_rational {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_str(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| crate::rational::parse(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Coefficient ring of a matrix factor. Serialized as `"Q"` or `"Q[h1,...,hn]"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseRing {
    ScalarField,
    PolynomialRing(usize),
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::ScalarField => write!(f, "Q"),
            BaseRing::PolynomialRing(n) => {
                let vars: Vec<String> = (1..=*n).map(|i| format!("h{i}")).collect();
                write!(f, "Q[{}]", vars.join(","))
            }
        }
    }
}

impl std::str::FromStr for BaseRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(BaseRing::ScalarField);
        }
        let inner = s
            .strip_prefix("Q[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("unknown ring {s:?}")))?;
        let vars: Vec<&str> = inner.split(',').collect();
        let ok = vars.iter().enumerate().all(|(i, v)| *v == format!("h{}", i + 1));
        if !ok || inner.is_empty() {
            return Err(Error::Parse(format!("unknown ring {s:?}")));
        }
        Ok(BaseRing::PolynomialRing(vars.len()))
    }
}

impl Serialize for BaseRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BaseRing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFactor {
    pub size: u64,
    pub ring: BaseRing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelBlock {
    pub level: usize,
    pub factors: Vec<MatrixFactor>,
}

/// Zero-size factors are omitted; every level `0..=degree` is present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZhuDescriptor {
    pub degree: usize,
    pub blocks: Vec<LevelBlock>,
}

impl ZhuDescriptor {
    /// Sizes of all factors, level by level.
    pub fn sizes(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .flat_map(|b| b.factors.iter().map(|f| f.size))
            .collect()
    }

    /// `Σ size²` when every factor is over the scalars.
    pub fn scalar_dimension(&self) -> Option<u128> {
        self.blocks
            .iter()
            .flat_map(|b| &b.factors)
            .map(|f| (f.ring == BaseRing::ScalarField).then(|| u128::from(f.size) * u128::from(f.size)))
            .sum()
    }
}

impl fmt::Display for ZhuDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<&MatrixFactor> = self.blocks.iter().flat_map(|b| &b.factors).collect();
        write!(f, "A_{} ≅ ", self.degree)?;
        if factors.is_empty() {
            return write!(f, "0");
        }
        let poly = factors.iter().find_map(|x| match x.ring {
            BaseRing::PolynomialRing(n) => Some(BaseRing::PolynomialRing(n)),
            BaseRing::ScalarField => None,
        });
        let parts: Vec<String> = factors
            .iter()
            .map(|x| match x.ring {
                BaseRing::ScalarField => format!("Mat_{}(Q)", x.size),
                ring if Some(ring) == poly => format!("Mat_{}(A)", x.size),
                ring => format!("Mat_{}({ring})", x.size),
            })
            .collect();
        write!(f, "{}", parts.join(" × "))?;
        if let Some(ring) = poly {
            write!(f, ", A = {ring}")?;
        }
        Ok(())
    }
}

fn check_degree(modules: &[SimpleModuleData], d: usize) -> Result<()> {
    for m in modules {
        if m.graded_dims.len() <= d {
            return Err(Error::DegreeOutOfRange {
                degree: d,
                max: m.graded_dims.len().saturating_sub(1),
            });
        }
    }
    Ok(())
}

/// `A_d ≅ ∏_{j≤d} ∏_i Mat_{D^i_j}(Q)` for a rational VOA with simple modules
/// `S^i`.
pub fn rational_zhu_descriptor(modules: &[SimpleModuleData], d: usize) -> Result<ZhuDescriptor> {
    check_degree(modules, d)?;
    let blocks = (0..=d)
        .map(|j| LevelBlock {
            level: j,
            factors: modules
                .iter()
                .map(|m| m.graded_dims[j])
                .filter(|&s| s > 0)
                .map(|size| MatrixFactor {
                    size,
                    ring: BaseRing::ScalarField,
                })
                .collect(),
        })
        .collect();
    Ok(ZhuDescriptor { degree: d, blocks })
}

/// Labels of the modules with a nonzero degree-`d` component.
pub fn zd_support(modules: &[SimpleModuleData], d: usize) -> Vec<String> {
    modules
        .iter()
        .filter(|m| m.dim_at(d) > 0)
        .map(|m| m.label.clone())
        .collect()
}

fn poly_descriptor(sizes: &[u64], n: usize, d: usize) -> ZhuDescriptor {
    ZhuDescriptor {
        degree: d,
        blocks: sizes[..=d]
            .iter()
            .enumerate()
            .map(|(j, &size)| LevelBlock {
                level: j,
                factors: vec![MatrixFactor {
                    size,
                    ring: BaseRing::PolynomialRing(n),
                }],
            })
            .collect(),
    }
}

/// `p^n_0, ..., p^n_d` as machine integers.
pub fn heisenberg_block_sizes(n: usize, d: usize) -> Result<Vec<u64>> {
    (0..=d)
        .map(|j| u64::try_from(labeled_partition_count(n, j)).map_err(|_| Error::Overflow("partition count")))
        .collect()
}

/// `A_d ≅ ∏_{m≤d} Mat_{p^n_m}(Q[h_1..h_n])` for the rank-n Heisenberg VOA.
pub fn heisenberg_zhu_descriptor(n: usize, d: usize) -> Result<ZhuDescriptor> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(poly_descriptor(&heisenberg_block_sizes(n, d)?, n, d))
}

/// `A_d ≅ ∏_{j≤d} Mat_{dim V_j}(A)` with `A` a polynomial ring in `n_vars`
/// variables; every degree up to `d` must be non-exceptional.
pub fn cor1_descriptor(graded_dims: &[u64], n_vars: usize, d: usize) -> Result<ZhuDescriptor> {
    if graded_dims.len() <= d {
        return Err(Error::DegreeOutOfRange {
            degree: d,
            max: graded_dims.len().saturating_sub(1),
        });
    }
    if graded_dims[0] != 1 {
        return Err(Error::Precondition(format!(
            "dim V_0 is {}, expected 1",
            graded_dims[0]
        )));
    }
    if let Some(j) = graded_dims[..=d].iter().position(|&x| x == 0) {
        return Err(Error::ExceptionalDegree(j));
    }
    Ok(poly_descriptor(graded_dims, n_vars, d))
}

/// Degrees `j ≤ d_max` with `dim Φ^L(A)_j = 0`; at those degrees `𝔄_j` and
/// `Z_j` are zero rings.
pub fn exceptional_degrees(phi_dims: &[u64], d_max: usize) -> Result<Vec<usize>> {
    if phi_dims.len() <= d_max {
        return Err(Error::DegreeOutOfRange {
            degree: d_max,
            max: phi_dims.len().saturating_sub(1),
        });
    }
    Ok((0..=d_max).filter(|&j| phi_dims[j] == 0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn m(label: &str, dims: &[u64]) -> SimpleModuleData {
        SimpleModuleData::new(label, dims.to_vec())
    }

    #[test]
    fn rational_examples() {
        let holo = [m("V", &[1, 0])];
        let z = rational_zhu_descriptor(&holo, 1).unwrap();
        assert_eq!(z.blocks[0].factors.len(), 1);
        assert!(z.blocks[1].factors.is_empty());
        assert_eq!(z.to_string(), "A_1 ≅ Mat_1(Q)");

        let two = [m("S1", &[1, 1]), m("S2", &[1, 2])];
        let z = rational_zhu_descriptor(&two, 1).unwrap();
        assert_eq!(z.sizes(), vec![1, 1, 1, 2]);
        assert_eq!(z.blocks[1].factors[1].size, 2);
        assert_eq!(z.scalar_dimension(), Some(1 + 1 + 1 + 4));
        let z0 = rational_zhu_descriptor(&two, 0).unwrap();
        assert_eq!(z0.blocks.len(), 1);
        assert_eq!(z0.sizes(), vec![1, 1]);
        assert!(rational_zhu_descriptor(&two, 2).is_err());
    }

    #[test]
    fn support_examples() {
        let mods = [m("a", &[1, 1]), m("b", &[2, 3])];
        assert_eq!(zd_support(&mods, 1), vec!["a", "b"]);
        assert_eq!(zd_support(&[m("V", &[1, 0])], 1), Vec::<String>::new());
        assert_eq!(zd_support(&[m("x", &[1, 0]), m("y", &[3])], 0), vec!["x", "y"]);
    }

    #[test]
    fn heisenberg_examples() {
        let z = heisenberg_zhu_descriptor(1, 2).unwrap();
        assert_eq!(z.sizes(), vec![1, 1, 2]);
        assert_eq!(z.to_string(), "A_2 ≅ Mat_1(A) × Mat_1(A) × Mat_2(A), A = Q[h1]");
        assert_eq!(heisenberg_zhu_descriptor(3, 0).unwrap().sizes(), vec![1]);
        assert_eq!(heisenberg_zhu_descriptor(2, 2).unwrap().sizes(), vec![1, 2, 5]);
        assert_eq!(
            heisenberg_zhu_descriptor(2, 0).unwrap().to_string(),
            "A_0 ≅ Mat_1(A), A = Q[h1,h2]"
        );
        assert!(heisenberg_zhu_descriptor(0, 1).is_err());
    }

    #[test]
    fn cor1_examples() {
        let dims = heisenberg_block_sizes(2, 4).unwrap();
        assert_eq!(
            cor1_descriptor(&dims, 2, 4).unwrap(),
            heisenberg_zhu_descriptor(2, 4).unwrap()
        );
        assert_eq!(cor1_descriptor(&[1, 0, 3], 1, 2), Err(Error::ExceptionalDegree(1)));
        assert_eq!(cor1_descriptor(&[1, 3, 9], 1, 2).unwrap().sizes(), vec![1, 3, 9]);
        assert!(matches!(cor1_descriptor(&[2, 3], 1, 1), Err(Error::Precondition(_))));
        assert!(cor1_descriptor(&[1, 3], 1, 2).is_err());
    }

    #[test]
    fn exceptional_examples() {
        assert_eq!(exceptional_degrees(&[1, 0, 1], 2).unwrap(), vec![1]);
        assert_eq!(exceptional_degrees(&[1, 0], 0).unwrap(), Vec::<usize>::new());
        let h = heisenberg_block_sizes(1, 8).unwrap();
        assert!(exceptional_degrees(&h, 8).unwrap().is_empty());
        assert!(exceptional_degrees(&[1], 1).is_err());
    }

    #[test]
    fn json_shapes() {
        let z = heisenberg_zhu_descriptor(1, 1).unwrap();
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(
            s,
            r#"{"degree":1,"blocks":[{"level":0,"factors":[{"size":1,"ring":"Q[h1]"}]},{"level":1,"factors":[{"size":1,"ring":"Q[h1]"}]}]}"#
        );
        assert_eq!(serde_json::from_str::<ZhuDescriptor>(&s).unwrap(), z);
        let mut data = m("S", &[1, 2]);
        data.conformal_weight = Some(frac(1, 16));
        let s = serde_json::to_string(&data).unwrap();
        assert_eq!(s, r#"{"label":"S","graded_dims":[1,2],"conformal_weight":"1/16"}"#);
        assert_eq!(serde_json::from_str::<SimpleModuleData>(&s).unwrap(), data);
        let bare: SimpleModuleData = serde_json::from_str(r#"{"label":"T","graded_dims":[1]}"#).unwrap();
        assert!(bare.conformal_weight.is_none());
        assert!("Q[x]".parse::<BaseRing>().is_err());
    }
}
