//! Python bindings: `import c2stems`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyTuple;

use c2stems::divisibility;
use c2stems::expr::{self, EvalError, ExprError};
use c2stems::rational::{presentation_of, rationalize, RationalElement as CoreRational};
use c2stems::ring::{char_fixed, char_underlying, BasisElement, RingElement, RingError, RingModel};
use c2stems::spectral::{self, ExtCGenerator, TriWindow};

create_exception!(c2stems, ParseError, PyValueError, "Malformed expression.");
create_exception!(
    c2stems,
    InexactDivisionError,
    PyArithmeticError,
    "Quotient is not in the ring."
);

fn expr_err(e: ExprError) -> PyErr {
    match e {
        ExprError::Parse(p) => ParseError::new_err(p.to_string()),
        ExprError::Eval(e @ EvalError::InexactDivision { .. }) => {
            InexactDivisionError::new_err(e.to_string())
        }
        ExprError::Eval(e) => PyArithmeticError::new_err(e.to_string()),
    }
}

fn ring_err(e: RingError) -> PyErr {
    PyArithmeticError::new_err(e.to_string())
}

fn basis_of(label: &str) -> PyResult<BasisElement> {
    let a = expr::evaluate(label).map_err(expr_err)?;
    let single = match a.terms().next() {
        Some((b, c)) if a.len() == 1 && *c == BigInt::from(1) => Some(*b),
        _ => None,
    };
    single.ok_or_else(|| PyValueError::new_err(format!("{a} is not a basis element")))
}

/// An element of the reduced ring with integer coefficients.
#[pyclass(module = "c2stems", frozen, from_py_object)]
#[derive(Clone)]
pub struct Element {
    inner: RingElement,
}

#[derive(FromPyObject)]
enum Operand {
    Element(Element),
    Int(BigInt),
}

impl Operand {
    fn into_element(self) -> RingElement {
        match self {
            Operand::Element(e) => e.inner,
            Operand::Int(k) => RingElement::scalar(k),
        }
    }
}

fn wrap(inner: RingElement) -> Element {
    Element { inner }
}

#[pymethods]
impl Element {
    /// Parses and evaluates an expression such as `"eta^8 / 2^3"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        expr::evaluate(text).map(wrap).map_err(expr_err)
    }

    #[staticmethod]
    fn one() -> Self {
        wrap(RingElement::one())
    }

    #[staticmethod]
    fn scalar(k: BigInt) -> Self {
        wrap(RingElement::scalar(k))
    }

    #[staticmethod]
    #[pyo3(signature = (i = 1))]
    fn rho(i: u32) -> Self {
        wrap(RingElement::rho_pow(i))
    }

    #[staticmethod]
    fn eta() -> Self {
        wrap(RingElement::x(1))
    }

    #[staticmethod]
    fn omega(n: i64) -> Self {
        wrap(RingElement::omega(n))
    }

    #[staticmethod]
    fn x(i: u32) -> PyResult<Self> {
        if i == 0 {
            return Err(PyValueError::new_err("x index must be >= 1"));
        }
        Ok(wrap(RingElement::x(i)))
    }

    /// `(stem, weight)`, or `None` for zero and inhomogeneous elements.
    #[getter]
    fn degree(&self) -> Option<(i64, i64)> {
        self.inner.degree().map(|d| (d.stem, d.weight))
    }

    /// `(basis label, coefficient)` pairs in canonical order.
    fn terms(&self) -> Vec<(String, BigInt)> {
        self.inner
            .terms()
            .map(|(b, c)| (b.to_string(), c.clone()))
            .collect()
    }

    fn phi_e(&self) -> BigInt {
        char_underlying(&self.inner)
    }

    fn phi_fix(&self) -> BigInt {
        char_fixed(&self.inner)
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn rationalize(&self) -> RationalElement {
        RationalElement {
            inner: rationalize(&self.inner),
        }
    }

    fn __add__(&self, other: Operand) -> Self {
        wrap(&self.inner + &other.into_element())
    }

    fn __radd__(&self, other: Operand) -> Self {
        wrap(&other.into_element() + &self.inner)
    }

    fn __sub__(&self, other: Operand) -> Self {
        wrap(&self.inner - &other.into_element())
    }

    fn __rsub__(&self, other: Operand) -> Self {
        wrap(&other.into_element() - &self.inner)
    }

    fn __mul__(&self, other: Operand) -> PyResult<Self> {
        RingModel::standard()
            .try_mul(&self.inner, &other.into_element())
            .map(wrap)
            .map_err(ring_err)
    }

    fn __rmul__(&self, other: Operand) -> PyResult<Self> {
        self.__mul__(other)
    }

    fn __neg__(&self) -> Self {
        wrap(-&self.inner)
    }

    fn __pow__(&self, exponent: u32, modulo: Option<Bound<'_, PyAny>>) -> PyResult<Self> {
        if modulo.is_some() {
            return Err(PyTypeError::new_err(
                "modular exponentiation is not supported",
            ));
        }
        if exponent > expr::MAX_EXPONENT {
            return Err(PyValueError::new_err(format!(
                "exponent exceeds {}",
                expr::MAX_EXPONENT
            )));
        }
        RingModel::standard()
            .try_pow(&self.inner, exponent)
            .map(wrap)
            .map_err(ring_err)
    }

    fn __eq__(&self, other: Operand) -> bool {
        self.inner == other.into_element()
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.inner.to_string().hash(&mut h);
        h.finish()
    }

    fn __bool__(&self) -> bool {
        !self.inner.is_zero()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element('{}')", self.inner)
    }

    fn __reduce__<'py>(
        slf: &Bound<'py, Self>,
    ) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyTuple>)> {
        let cls = slf.get_type().into_any();
        let args = PyTuple::new(slf.py(), [slf.get().inner.to_string()])?;
        Ok((cls, args))
    }
}

/// An element of the rationalized ring.
#[pyclass(module = "c2stems", frozen, from_py_object)]
#[derive(Clone)]
pub struct RationalElement {
    inner: CoreRational,
}

#[pymethods]
impl RationalElement {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        expr::evaluate_rational(text)
            .map(|inner| RationalElement { inner })
            .map_err(expr_err)
    }

    #[getter]
    fn degree(&self) -> Option<(i64, i64)> {
        self.inner.degree().map(|d| (d.stem, d.weight))
    }

    /// `(basis label, numerator, denominator)` triples in canonical order.
    fn terms(&self) -> Vec<(String, BigInt, BigInt)> {
        self.inner
            .terms()
            .map(|(b, c)| (b.to_string(), c.numer().clone(), c.denom().clone()))
            .collect()
    }

    fn is_integral(&self) -> bool {
        expr::is_integral(&self.inner)
    }

    /// The same element written in `rho`, `eta`, `w[1]`, `w[-1]`.
    fn presentation(&self) -> String {
        presentation_of(&self.inner).to_string()
    }

    fn __add__(&self, other: &Self) -> Self {
        RationalElement {
            inner: &self.inner + &other.inner,
        }
    }

    fn __sub__(&self, other: &Self) -> Self {
        RationalElement {
            inner: &self.inner - &other.inner,
        }
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        RingModel::standard()
            .try_mul(&self.inner, &other.inner)
            .map(|inner| RationalElement { inner })
            .map_err(ring_err)
    }

    fn __neg__(&self) -> Self {
        RationalElement {
            inner: -&self.inner,
        }
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalElement('{}')", self.inner)
    }
}

#[pyfunction]
fn evaluate(text: &str) -> PyResult<Element> {
    Element::new(text)
}

#[pyfunction]
fn evaluate_rational(text: &str) -> PyResult<RationalElement> {
    RationalElement::new(text)
}

fn index_err(e: divisibility::DivisibilityError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyfunction]
fn n_of(i: i64) -> PyResult<u32> {
    divisibility::n_of(i).map_err(index_err)
}

#[pyfunction]
fn m_of(i: i64) -> PyResult<u32> {
    divisibility::m_of(i).map_err(index_err)
}

#[pyfunction]
fn b_of(i: i64) -> PyResult<u32> {
    divisibility::b_of(i).map_err(index_err)
}

/// Adams name of a basis element given as an expression (`"x[7]"`), or `None`.
#[pyfunction]
fn adams_name(label: &str) -> PyResult<Option<String>> {
    Ok(spectral::adams_name(&basis_of(label)?).map(|n| n.to_string()))
}

/// Basis elements with degree in the box, in canonical order.
#[pyfunction]
fn basis(smin: i64, smax: i64, wmin: i64, wmax: i64) -> Vec<Element> {
    BasisElement::in_box(smin, smax, wmin, wmax)
        .into_iter()
        .map(|b| wrap(RingElement::basis(b)))
        .collect()
}

type E1Row = (String, String, u32, u32, (i64, i64, i64));

/// `E_1^-` classes as `(name, family, a, b, (stem, filtration, weight))`.
///
/// `catalog` is catalog-file text; the bundled catalog is used when omitted.
#[pyfunction]
#[pyo3(signature = (stem, filtration, weight, catalog = None))]
fn enumerate_e1(
    stem: (i64, i64),
    filtration: (i64, i64),
    weight: (i64, i64),
    catalog: Option<&str>,
) -> PyResult<Vec<E1Row>> {
    let generators: Vec<ExtCGenerator> = match catalog {
        Some(text) => {
            spectral::parse_catalog(text).map_err(|e| PyValueError::new_err(e.to_string()))?
        }
        None => spectral::bundled_catalog(),
    };
    let window = TriWindow {
        stem: stem.0..=stem.1,
        filtration: filtration.0..=filtration.1,
        weight: weight.0..=weight.1,
    };
    let classes = spectral::enumerate_e1_minus(&generators, &window)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(classes
        .into_iter()
        .map(|c| {
            let d = c.degree;
            (
                c.name(),
                c.family.to_string(),
                c.rho_exponent,
                c.tau_exponent,
                (d.stem, d.filtration, d.weight),
            )
        })
        .collect())
}

/// Runs verification suites through the CLI; returns `(exit_code, report)`.
#[pyfunction]
#[pyo3(signature = (*suites, window = 24))]
fn check(suites: Vec<String>, window: u32) -> (i32, String) {
    let mut args = vec![
        "c2stems".to_owned(),
        "--window".to_owned(),
        window.to_string(),
        "check".to_owned(),
    ];
    args.extend(suites);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = c2stems::cli::run(args, &mut out, &mut err);
    out.extend(err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

#[pymodule(name = "c2stems")]
fn c2stems_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Element>()?;
    m.add_class::<RationalElement>()?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add(
        "InexactDivisionError",
        m.py().get_type::<InexactDivisionError>(),
    )?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_rational, m)?)?;
    m.add_function(wrap_pyfunction!(n_of, m)?)?;
    m.add_function(wrap_pyfunction!(m_of, m)?)?;
    m.add_function(wrap_pyfunction!(b_of, m)?)?;
    m.add_function(wrap_pyfunction!(adams_name, m)?)?;
    m.add_function(wrap_pyfunction!(basis, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_e1, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    Ok(())
}
