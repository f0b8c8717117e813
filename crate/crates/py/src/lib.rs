//! Python bindings. Rationals cross the boundary as `fractions.Fraction`,
//! reports as plain dicts and lists.

use std::collections::BTreeMap;

use mta_core::heisenberg::{self, Mode};
use mta_core::lattice;
use mta_core::partitions::{self as parts, LabeledPartition};
use mta_core::peirce::{self, FdAlgebra, ModuleRep, Side};
use mta_core::zhu::{self, SimpleModuleData};
use mta_core::Rational;
use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

fn err(e: mta_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Converts any serializable report into Python objects through `json.loads`.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn partition(slots: Vec<Vec<u32>>) -> PyResult<LabeledPartition> {
    LabeledPartition::from_parts(slots).map_err(err)
}

fn raw_parts(sigma: &LabeledPartition) -> Vec<Vec<u32>> {
    sigma.slots().iter().map(|p| p.parts().to_vec()).collect()
}

#[pyfunction]
fn labeled_partition_count(n: usize, m: usize) -> BigUint {
    parts::labeled_partition_count(n, m)
}

#[pyfunction]
fn enumerate_labeled_partitions(n: usize, m: u32) -> Vec<Vec<Vec<u32>>> {
    parts::enumerate_labeled_partitions(n, m)
        .iter()
        .map(raw_parts)
        .collect()
}

#[pyfunction]
fn symmetry_factor(sigma: Vec<Vec<u32>>) -> PyResult<BigUint> {
    Ok(parts::symmetry_factor(&partition(sigma)?))
}

#[pyfunction]
fn strong_identity(n: usize, d: u32) -> Vec<(Vec<Vec<u32>>, Rational)> {
    heisenberg::strong_identity(n, d)
        .terms
        .into_iter()
        .map(|t| (raw_parts(&t.partition), t.coeff))
        .collect()
}

#[pyfunction]
fn pairing(sigma: Vec<Vec<u32>>, tau: Vec<Vec<u32>>) -> PyResult<APoly> {
    let p = heisenberg::pairing(&partition(sigma)?, &partition(tau)?).map_err(err)?;
    Ok(APoly(p))
}

#[pyfunction]
fn verify_strong_identity<'py>(py: Python<'py>, n: usize, d: u32) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| heisenberg::verify_strong_identity(n, d)).map_err(err)?;
    to_py(py, &r)
}

#[pyfunction]
fn phil_rank_certificate<'py>(py: Python<'py>, n: usize, d: u32) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| heisenberg::phil_rank_certificate(n, d)).map_err(err)?;
    to_py(py, &r)
}

/// Polynomial in `h_1..h_n` with rational coefficients.
#[pyclass(module = "mta", name = "APoly")]
struct APoly(heisenberg::APoly);

#[pymethods]
impl APoly {
    /// `{exponent tuple: coefficient}`.
    fn terms(&self) -> BTreeMap<Vec<u32>, Rational> {
        self.0.terms().clone()
    }

    fn evaluate(&self, point: Vec<Rational>) -> PyResult<Rational> {
        self.0.evaluate(&point).map_err(err)
    }

    fn is_constant(&self) -> bool {
        self.0.is_constant()
    }

    fn constant_term(&self) -> Rational {
        self.0.constant_term()
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("APoly({})", self.0)
    }
}

/// Element of the enveloping algebra of the rank-n Heisenberg Lie algebra.
#[pyclass(module = "mta", name = "UElement")]
struct UElement(heisenberg::UElement);

#[pymethods]
impl UElement {
    /// The product of the listed modes `(generator, exponent)`, normal ordered.
    #[new]
    fn new(rank: usize, modes: Vec<(usize, i64)>) -> PyResult<Self> {
        let modes: Vec<Mode> = modes.into_iter().map(|(g, e)| Mode::new(g, e)).collect();
        heisenberg::UElement::from_modes(rank, &modes).map(Self).map_err(err)
    }

    #[staticmethod]
    fn u(sigma: Vec<Vec<u32>>) -> PyResult<Self> {
        Ok(Self(heisenberg::u_element(&partition(sigma)?)))
    }

    #[staticmethod]
    fn ubar(sigma: Vec<Vec<u32>>) -> PyResult<Self> {
        Ok(Self(heisenberg::ubar_element(&partition(sigma)?)))
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn degree(&self) -> PyResult<Option<i64>> {
        self.0.homogeneous_degree().map_err(err)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Terms as dicts with `coeff`, `creators`, `zeros`, `annihilators`.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.to_terms())
    }

    fn star_to_a(&self) -> PyResult<APoly> {
        self.0.star_to_a().map(APoly).map_err(err)
    }

    fn __mul__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.multiply(&other.0).map(Self).map_err(err)
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.add(&other.0).map(Self).map_err(err)
    }

    fn __sub__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.sub(&other.0).map(Self).map_err(err)
    }

    fn scale(&self, c: Rational) -> Self {
        Self(self.0.scale(&c))
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("UElement({})", self.0)
    }
}

/// Graded algebra `𝔄 = ⊕ 𝔄_{i,j}` with sparse structure constants.
#[pyclass(module = "mta", name = "PeirceAlgebra")]
struct PeirceAlgebra(peirce::PeirceAlgebra);

#[pymethods]
impl PeirceAlgebra {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(Self)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("algebra serializes")
    }

    #[staticmethod]
    fn matrix_model(sizes: Vec<Vec<usize>>) -> PyResult<Self> {
        peirce::matrix_model(&sizes).map(Self).map_err(err)
    }

    #[staticmethod]
    fn heisenberg_truncation(n: usize, max_degree: usize, point: Vec<Rational>) -> PyResult<Self> {
        peirce::heisenberg_truncation(n, max_degree, &point)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn degenerate_pairing() -> Self {
        Self(peirce::degenerate_pairing())
    }

    #[getter]
    fn max_degree(&self) -> usize {
        self.0.max_degree()
    }

    #[getter]
    fn dims(&self) -> Vec<Vec<usize>> {
        self.0.dims().to_vec()
    }

    fn set_structure_constant(
        &mut self,
        ijk: (usize, usize, usize),
        abc: (usize, usize, usize),
        value: Rational,
    ) -> PyResult<()> {
        self.0.set_structure_constant(ijk, abc, value).map_err(err)
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = py.detach(|| self.0.validate());
        to_py(py, &r)
    }

    fn find_strong_identity(&self, d: usize) -> PyResult<Option<Vec<Rational>>> {
        self.0.find_strong_identity(d).map(|s| s.element).map_err(err)
    }

    fn exceptional_degrees(&self) -> Vec<usize> {
        self.0.exceptional_degrees()
    }

    fn degree_report<'py>(&self, py: Python<'py>, d: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.degree_report(d).map_err(err)?)
    }

    fn zigzag_laws<'py>(&self, py: Python<'py>, d: usize) -> PyResult<Bound<'py, PyAny>> {
        let laws = py
            .detach(|| peirce::zigzag(&self.0, d).map(|z| z.laws()))
            .map_err(err)?;
        to_py(py, &laws)
    }

    /// Round trips of the regular modules over `𝔄_d` and over `Z_d`.
    fn morita_roundtrips<'py>(&self, py: Python<'py>, d: usize) -> PyResult<Bound<'py, PyAny>> {
        let reports = py
            .detach(|| {
                let ctx = peirce::morita_context(&self.0, d)?;
                let corner = FdAlgebra {
                    unit: Some(ctx.strong_identity.clone()),
                    ..self.0.corner(d)
                };
                let a = ctx.roundtrip(&ModuleRep::regular("regular", &corner, Side::Left))?;
                let z = ctx.roundtrip_zd(&ModuleRep::regular("regular Z_d", &ctx.zd_algebra, Side::Left))?;
                Ok(vec![a, z])
            })
            .map_err(err)?;
        to_py(py, &reports)
    }
}

/// Positive-definite even lattice given by its Gram matrix.
#[pyclass(module = "mta", name = "EvenLattice")]
struct EvenLattice(lattice::EvenLattice);

#[pymethods]
impl EvenLattice {
    #[new]
    fn new(gram: Vec<Vec<i64>>) -> PyResult<Self> {
        lattice::EvenLattice::new(gram).map(Self).map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        lattice::EvenLattice::parse(text).map(Self).map_err(err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    /// `(index, residues, lambda)` for each class of `L'/L`.
    fn dual_cosets(&self) -> PyResult<Vec<(usize, Vec<i64>, Vec<Rational>)>> {
        let cosets = self.0.dual_cosets().map_err(err)?;
        Ok(cosets.into_iter().map(|c| (c.index, c.residues, c.lambda)).collect())
    }

    fn conformal_weight(&self, lam: Vec<Rational>) -> PyResult<Rational> {
        self.0.conformal_weight(&lam).map_err(err)
    }

    fn count_norm_layer(&self, lam: Vec<Rational>, j: Rational) -> PyResult<u64> {
        self.0.count_norm_layer(&lam, &j).map_err(err)
    }

    fn graded_dims(&self, lam: Vec<Rational>, max: usize) -> PyResult<Vec<u64>> {
        self.0.graded_dims(&lam, max).map_err(err)
    }

    fn coset_table<'py>(&self, py: Python<'py>, max: usize) -> PyResult<Bound<'py, PyAny>> {
        let t = py.detach(|| self.0.coset_table(max)).map_err(err)?;
        to_py(py, &t)
    }
}

#[pyfunction]
fn heisenberg_zhu_descriptor(n: usize, d: usize) -> PyResult<(String, Vec<u64>)> {
    let z = zhu::heisenberg_zhu_descriptor(n, d).map_err(err)?;
    Ok((z.to_string(), z.sizes()))
}

/// `modules` is a list of `(label, graded_dims)`.
#[pyfunction]
fn rational_zhu_descriptor(modules: Vec<(String, Vec<u64>)>, d: usize) -> PyResult<(String, Vec<u64>)> {
    let mods: Vec<SimpleModuleData> = modules.into_iter().map(|(l, g)| SimpleModuleData::new(l, g)).collect();
    let z = zhu::rational_zhu_descriptor(&mods, d).map_err(err)?;
    Ok((z.to_string(), z.sizes()))
}

#[pyfunction]
fn exceptional_degrees(phi_dims: Vec<u64>, d_max: usize) -> PyResult<Vec<usize>> {
    zhu::exceptional_degrees(&phi_dims, d_max).map_err(err)
}

#[pymodule]
fn mta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<APoly>()?;
    m.add_class::<UElement>()?;
    m.add_class::<PeirceAlgebra>()?;
    m.add_class::<EvenLattice>()?;
    m.add_function(wrap_pyfunction!(labeled_partition_count, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_labeled_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(symmetry_factor, m)?)?;
    m.add_function(wrap_pyfunction!(strong_identity, m)?)?;
    m.add_function(wrap_pyfunction!(pairing, m)?)?;
    m.add_function(wrap_pyfunction!(verify_strong_identity, m)?)?;
    m.add_function(wrap_pyfunction!(phil_rank_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(heisenberg_zhu_descriptor, m)?)?;
    m.add_function(wrap_pyfunction!(rational_zhu_descriptor, m)?)?;
    m.add_function(wrap_pyfunction!(exceptional_degrees, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_round_trip() {
        let p = partition(vec![vec![1, 2], vec![]]).unwrap();
        assert_eq!(raw_parts(&p), vec![vec![2, 1], vec![]]);
        assert!(partition(vec![vec![0]]).is_err());
    }

    #[test]
    fn reports_become_python_objects() {
        Python::initialize();
        Python::attach(|py| {
            let obj = to_py(py, &mta_core::zhu::heisenberg_zhu_descriptor(1, 1).unwrap()).unwrap();
            let degree: usize = obj.get_item("degree").unwrap().extract().unwrap();
            assert_eq!(degree, 1);
            let c: Rational = strong_identity(1, 2)[1].1.clone();
            assert_eq!(c, mta_core::rational::frac(1, 2));
        });
    }
}
