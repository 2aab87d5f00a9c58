//! Python bindings. Rationals cross the boundary as `fractions.Fraction`.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ::whurwitz::feynman::{elliptic_qseries_pipeline, feynman_qseries, types_qseries};
use ::whurwitz::oracles::{
    brute_force_double, brute_force_elliptic, char_double_disconnected, connected_double, elliptic_branch_count,
};
use ::whurwitz::partition::partitions_of as core_partitions_of;
use ::whurwitz::poly::{interpolate_chamber, wall_crossing_check as core_wall_crossing, BalancedPoint};
use ::whurwitz::quasimod::fit_quasimodular;
use ::whurwitz::tropical::{
    completed_cycles_double as core_completed, cover_multiplicity, enumerate_covers, refined_tropical, tropical_double,
};
use ::whurwitz::{characters, format_rational, parse_rational, Partition, Rational, TruncSeries, Var, WeightFunction};

create_exception!(whurwitz, HurwitzError, PyValueError);

fn err(e: ::whurwitz::Error) -> PyErr {
    let msg = format!("{}: {e}", e.kind());
    if e.is_invariant_violation() {
        PyRuntimeError::new_err(msg)
    } else {
        HurwitzError::new_err(msg)
    }
}

fn fraction<'py>(py: Python<'py>, x: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((format_rational(x),))
}

fn fractions<'py>(py: Python<'py>, xs: &[Rational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    xs.iter().map(|x| fraction(py, x)).collect()
}

fn to_rational(x: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&x.str()?.to_cow()?).map_err(err)
}

fn partition(parts: Vec<u32>) -> PyResult<Partition> {
    if parts.contains(&0) {
        return Err(HurwitzError::new_err("InvalidInput: parts must be positive"));
    }
    Ok(Partition::from_unsorted(parts))
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.getattr("loads")?.call1((v.to_string(),))
}

/// A weight generating function.
#[pyclass(name = "Weight", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyWeight(WeightFunction);

#[pymethods]
impl PyWeight {
    /// Classical weight exp(z).
    #[staticmethod]
    fn exp() -> Self {
        PyWeight(WeightFunction::Exp)
    }

    /// 1 + z.
    #[staticmethod]
    fn strictly_monotone() -> Self {
        PyWeight(WeightFunction::strictly_monotone())
    }

    /// 1 / (1 - z).
    #[staticmethod]
    fn monotone() -> Self {
        PyWeight(WeightFunction::monotone())
    }

    #[staticmethod]
    fn product_g(c: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let c = c.iter().map(to_rational).collect::<PyResult<_>>()?;
        Ok(PyWeight(WeightFunction::ProductG { c }))
    }

    #[staticmethod]
    fn product_gtilde(c: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let c = c.iter().map(to_rational).collect::<PyResult<_>>()?;
        Ok(PyWeight(WeightFunction::ProductGtilde { c }))
    }

    #[staticmethod]
    fn completed_cycles(r: u32) -> PyResult<Self> {
        let w = WeightFunction::CompletedCycles { r };
        w.validate().map_err(err)?;
        Ok(PyWeight(w))
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        WeightFunction::from_json(s).map(PyWeight).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.name()
    }

    /// A_0, ..., A_k with log G(z) = sum A_k z^k.
    fn a_coefficients<'py>(&self, py: Python<'py>, k: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, &self.0.a_coefficients(k).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Weight({})", self.0.to_json())
    }
}

/// A truncated power series with exact coefficients.
#[pyclass(name = "Series", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySeries(TruncSeries);

fn parse_var(s: &str) -> PyResult<Var> {
    serde_json::from_value(serde_json::Value::String(s.into()))
        .map_err(|_| HurwitzError::new_err(format!("InvalidInput: unknown variable {s:?}")))
}

#[pymethods]
impl PySeries {
    #[new]
    fn new(var: &str, coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let cs = coeffs.iter().map(to_rational).collect::<PyResult<_>>()?;
        Ok(PySeries(TruncSeries::new(parse_var(var)?, cs)))
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, self.0.coeffs())
    }

    fn coeff<'py>(&self, py: Python<'py>, k: usize) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.0.coeff(k).map_err(err)?)
    }

    fn log(&self) -> PyResult<Self> {
        self.0.log().map(PySeries).map_err(err)
    }

    fn exp(&self) -> PyResult<Self> {
        self.0.exp().map(PySeries).map_err(err)
    }

    fn invert(&self) -> PyResult<Self> {
        self.0.invert().map(PySeries).map_err(err)
    }

    fn __add__(&self, other: &PySeries) -> PyResult<Self> {
        self.0.add(&other.0).map(PySeries).map_err(err)
    }

    fn __sub__(&self, other: &PySeries) -> PyResult<Self> {
        self.0.sub(&other.0).map(PySeries).map_err(err)
    }

    fn __mul__(&self, other: &PySeries) -> PyResult<Self> {
        self.0.mul(&other.0).map(PySeries).map_err(err)
    }

    fn __eq__(&self, other: &PySeries) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Series({})", self.0)
    }
}

#[pyfunction]
fn partitions_of(n: u32) -> Vec<Vec<u32>> {
    core_partitions_of(n).into_iter().map(|p| p.parts().to_vec()).collect()
}

/// Irreducible character chi^lambda at the class mu.
#[pyfunction]
fn character(lam: Vec<u32>, mu: Vec<u32>) -> PyResult<i64> {
    let v = characters::character(&partition(lam)?, &partition(mu)?).map_err(err)?;
    v.try_into().map_err(|_| PyValueError::new_err("character does not fit in 64 bits"))
}

#[pyfunction]
fn central_character<'py>(py: Python<'py>, nu: Vec<u32>, gamma: Vec<u32>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &characters::central_character(&partition(nu)?, &partition(gamma)?).map_err(err)?)
}

#[pyfunction]
fn f2<'py>(py: Python<'py>, lam: Vec<u32>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &characters::f2_eval(&partition(lam)?))
}

/// Weighted double Hurwitz number by the chosen route.
#[pyfunction]
#[pyo3(signature = (weight, mu, nu, r, connected=false, route="character"))]
fn double_hurwitz<'py>(
    py: Python<'py>,
    weight: &PyWeight,
    mu: Vec<u32>,
    nu: Vec<u32>,
    r: u32,
    connected: bool,
    route: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let (w, mu, nu) = (&weight.0, partition(mu)?, partition(nu)?);
    let v = py
        .detach(|| match (route, connected) {
            ("character", false) => Ok(char_double_disconnected(w, &mu, &nu, r)),
            ("character", true) => Ok(connected_double(w, &mu, &nu, r)),
            ("brute", c) => Ok(brute_force_double(w, &mu, &nu, r, c)),
            ("tropical", c) => Ok(tropical_double(w, &mu, &nu, r, c)),
            _ => Err(()),
        })
        .map_err(|_| HurwitzError::new_err(format!("InvalidInput: unknown route {route:?}")))?
        .map_err(err)?;
    fraction(py, &v)
}

/// Contribution of covers whose vertex decorations form lambda.
#[pyfunction]
#[pyo3(signature = (weight, mu, nu, lam, connected=false))]
fn double_refined<'py>(
    py: Python<'py>,
    weight: &PyWeight,
    mu: Vec<u32>,
    nu: Vec<u32>,
    lam: Vec<u32>,
    connected: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let (mu, nu, lam) = (partition(mu)?, partition(nu)?, partition(lam)?);
    let v = py.detach(|| refined_tropical(&weight.0, &mu, &nu, &lam, connected)).map_err(err)?;
    fraction(py, &v)
}

#[pyfunction]
#[pyo3(signature = (rcc, mu, nu, s, connected=false))]
fn completed_cycles_double<'py>(
    py: Python<'py>,
    rcc: u32,
    mu: Vec<u32>,
    nu: Vec<u32>,
    s: u32,
    connected: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let (mu, nu) = (partition(mu)?, partition(nu)?);
    let v = py.detach(|| core_completed(rcc, &mu, &nu, s, connected)).map_err(err)?;
    fraction(py, &v)
}

/// Tropical covers as dictionaries; multiplicities are included when a
/// weight is given.
#[pyfunction]
#[pyo3(signature = (mu, nu, r, connected=false, weight=None))]
fn tropical_covers<'py>(
    py: Python<'py>,
    mu: Vec<u32>,
    nu: Vec<u32>,
    r: u32,
    connected: bool,
    weight: Option<&PyWeight>,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let cs = enumerate_covers(&partition(mu)?, &partition(nu)?, r, connected).map_err(err)?;
    cs.iter()
        .map(|c| {
            let m = weight.map(|w| cover_multiplicity(&w.0, c)).transpose().map_err(err)?;
            json_to_py(py, &c.to_json(m.as_ref()))
        })
        .collect()
}

/// Connected elliptic q-series coefficients N_0..N_dmax.
#[pyfunction]
#[pyo3(signature = (weight, g, dmax, profiles=Vec::new(), route="shiftsym"))]
fn elliptic_qseries<'py>(
    py: Python<'py>,
    weight: &PyWeight,
    g: u32,
    dmax: u32,
    profiles: Vec<Vec<u32>>,
    route: &str,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let profiles = profiles.into_iter().map(partition).collect::<PyResult<Vec<_>>>()?;
    let w = &weight.0;
    let res = py.detach(|| -> Option<::whurwitz::Result<TruncSeries>> {
        Some(match route {
            "shiftsym" => elliptic_qseries_pipeline(w, g, &profiles, dmax).map(|(_, c)| c),
            "feynman" if profiles.is_empty() => feynman_qseries(w, g, dmax),
            "types" if profiles.is_empty() => types_qseries(w, g, dmax),
            "brute" => (1..=dmax)
                .map(|d| match elliptic_branch_count(&profiles, g) {
                    Some(r) => brute_force_elliptic(w, &profiles, d, r, true),
                    None => Ok(Rational::from_integer(0.into())),
                })
                .collect::<::whurwitz::Result<Vec<_>>>()
                .map(|mut v| {
                    v.insert(0, Rational::from_integer(0.into()));
                    TruncSeries::new(Var::Q, v)
                }),
            _ => return None,
        })
    });
    let s = res
        .ok_or_else(|| HurwitzError::new_err(format!("InvalidInput: route {route:?} does not apply")))?
        .map_err(err)?;
    fractions(py, s.coeffs())
}

/// Writes the q-series in the quasimodular basis of weight <= wmax. Returns
/// (coordinates, number of validated coefficients).
#[pyfunction]
#[pyo3(signature = (coeffs, wmax=6, hold_out=3))]
fn fit_quasimodular_series<'py>(
    py: Python<'py>,
    coeffs: Vec<Bound<'py, PyAny>>,
    wmax: u32,
    hold_out: usize,
) -> PyResult<(Bound<'py, PyDict>, usize)> {
    let cs = coeffs.iter().map(to_rational).collect::<PyResult<Vec<_>>>()?;
    let f = fit_quasimodular(&TruncSeries::new(Var::Q, cs), wmax, hold_out).map_err(err)?;
    let d = PyDict::new(py);
    for (k, v) in &f.coords {
        d.set_item(k, fraction(py, v)?)?;
    }
    Ok((d, f.validated))
}

/// Chamber polynomial through x0 of the end-labeled connected numbers.
#[pyfunction]
#[pyo3(signature = (weight, r, x0, lam=None, validation=5))]
fn chamber_polynomial<'py>(
    py: Python<'py>,
    weight: &PyWeight,
    r: u32,
    x0: Vec<i64>,
    lam: Option<Vec<u32>>,
    validation: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let x0 = BalancedPoint::new(x0).map_err(err)?;
    let lam = lam.map(partition).transpose()?;
    let fit = py.detach(|| interpolate_chamber(&weight.0, r, &x0, lam.as_ref(), validation)).map_err(err)?;
    json_to_py(py, &fit.to_json())
}

/// Compares both sides of the wall-crossing formula; `subset` is 1-based.
#[pyfunction]
#[pyo3(signature = (weight, lam, subset, x_wall, points=3))]
fn wall_crossing<'py>(
    py: Python<'py>,
    weight: &PyWeight,
    lam: Vec<u32>,
    subset: Vec<usize>,
    x_wall: Vec<i64>,
    points: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let lam = partition(lam)?;
    if subset.iter().any(|&i| i == 0 || i > x_wall.len()) {
        return Err(HurwitzError::new_err("InvalidInput: subset index out of range"));
    }
    let subset: Vec<usize> = subset.into_iter().map(|i| i - 1).collect();
    let check = py.detach(|| core_wall_crossing(&weight.0, &lam, &subset, &x_wall, points)).map_err(err)?;
    json_to_py(py, &check.to_json())
}

#[pymodule]
#[pyo3(name = "whurwitz")]
fn whurwitz_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HurwitzError", m.py().get_type::<HurwitzError>())?;
    m.add_class::<PyWeight>()?;
    m.add_class::<PySeries>()?;
    m.add_function(wrap_pyfunction!(partitions_of, m)?)?;
    m.add_function(wrap_pyfunction!(character, m)?)?;
    m.add_function(wrap_pyfunction!(central_character, m)?)?;
    m.add_function(wrap_pyfunction!(f2, m)?)?;
    m.add_function(wrap_pyfunction!(double_hurwitz, m)?)?;
    m.add_function(wrap_pyfunction!(double_refined, m)?)?;
    m.add_function(wrap_pyfunction!(completed_cycles_double, m)?)?;
    m.add_function(wrap_pyfunction!(tropical_covers, m)?)?;
    m.add_function(wrap_pyfunction!(elliptic_qseries, m)?)?;
    m.add_function(wrap_pyfunction!(fit_quasimodular_series, m)?)?;
    m.add_function(wrap_pyfunction!(chamber_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(wall_crossing, m)?)?;
    Ok(())
}
