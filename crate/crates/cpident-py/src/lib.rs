//! Python bindings: exact cyclotomic arithmetic, omega-binomials, Drinfeld
//! polynomials, certified roots, and the batch verifier.

use std::sync::Arc;

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use cpident::qseries::{check_product_identity, QBinomialTable};
use cpident::report::{run_bench, run_verify, OutputFormat, RunConfig, Suite};
use cpident::roots::{compute_b, isolate_and_refine};
use cpident::{drinfeld, CycField, CycNum, Error};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// The field Q(zeta_{2N}); zeta is a primitive 2N-th root of unity and
/// omega = zeta^2.
#[pyclass(name = "Field", frozen)]
struct PyField {
    inner: Arc<CycField>,
}

#[pymethods]
impl PyField {
    #[new]
    fn new(n: u32) -> PyResult<Self> {
        if n < 2 {
            return Err(PyValueError::new_err("need N >= 2"));
        }
        Ok(PyField {
            inner: CycField::new(n),
        })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    /// omega^k as a field element.
    fn omega(&self, k: i64) -> PyNum {
        PyNum {
            inner: CycNum::omega_power(&self.inner, k),
        }
    }

    /// zeta^k as a field element.
    fn zeta(&self, k: i64) -> PyNum {
        PyNum {
            inner: CycNum::zeta_power(&self.inner, k),
        }
    }

    fn integer(&self, v: i64) -> PyNum {
        PyNum {
            inner: CycNum::from_integer(&self.inner, v),
        }
    }

    /// Gaussian binomial [n over r] at omega.
    fn omega_binomial(&self, n: u32, r: u32) -> PyResult<PyNum> {
        let table = QBinomialTable::new(&self.inner);
        if n > 2 * self.inner.n() - 2 || r > self.inner.n() - 1 {
            return Err(PyValueError::new_err("index out of tabulated range"));
        }
        Ok(PyNum {
            inner: table.q_binomial(n, r),
        })
    }

    fn __repr__(&self) -> String {
        format!("Field(N={})", self.inner.n())
    }
}

/// An element of Q(zeta_{2N}) in canonical power-basis form.
#[pyclass(name = "Num", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyNum {
    inner: CycNum,
}

#[pymethods]
impl PyNum {
    fn __add__(&self, other: &PyNum) -> PyNum {
        PyNum {
            inner: self.inner.add(&other.inner),
        }
    }

    fn __sub__(&self, other: &PyNum) -> PyNum {
        PyNum {
            inner: self.inner.sub(&other.inner),
        }
    }

    fn __mul__(&self, other: &PyNum) -> PyNum {
        PyNum {
            inner: self.inner.mul(&other.inner),
        }
    }

    fn __neg__(&self) -> PyNum {
        PyNum {
            inner: self.inner.neg(),
        }
    }

    fn __eq__(&self, other: &PyNum) -> bool {
        self.inner == other.inner
    }

    fn inverse(&self) -> PyResult<PyNum> {
        if self.inner.is_zero() {
            return Err(PyZeroDivisionError::new_err("inverse of zero"));
        }
        Ok(PyNum {
            inner: self.inner.inverse(),
        })
    }

    fn conjugate(&self) -> PyNum {
        PyNum {
            inner: self.inner.conjugate(),
        }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Power-basis coordinates as rational strings "p/q".
    fn coeffs(&self) -> Vec<String> {
        self.inner.coeffs().iter().map(|c| c.to_string()).collect()
    }

    /// The element as a rational string, if it lies in Q.
    fn as_rational(&self) -> Option<String> {
        self.inner.to_rational().map(|r| r.to_string())
    }

    /// Complex enclosure (re_mid, im_mid) as decimal strings.
    fn embed(&self, precision_bits: u32) -> (String, String) {
        let z = self.inner.complex_embed(precision_bits);
        let digits = (precision_bits as f64 * 0.301) as usize;
        (
            z.re.to_decimal_string(digits.min(40)),
            z.im.to_decimal_string(digits.min(40)),
        )
    }

    fn __repr__(&self) -> String {
        format!("Num({})", self.coeffs().join(", "))
    }
}

/// Lambda coefficients and degree of the Drinfeld-style polynomial P_Q.
#[pyfunction(name = "drinfeld")]
fn py_drinfeld(py: Python<'_>, n: u32, l: usize, q: u32) -> PyResult<Py<PyDict>> {
    if n < 2 || q >= n || l < 1 {
        return Err(PyValueError::new_err("need N >= 2, L >= 1, 0 <= Q < N"));
    }
    let dd = drinfeld(n, l, q);
    let d = PyDict::new(py);
    d.set_item(
        "lambda",
        dd.lambda.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    )?;
    d.set_item("m_q", dd.m_q)?;
    Ok(d.into())
}

/// Certified real roots of P_Q and the constants B_k.
#[pyfunction]
#[pyo3(signature = (n, l, q, prec=128))]
fn roots(py: Python<'_>, n: u32, l: usize, q: u32, prec: u32) -> PyResult<Py<PyDict>> {
    if n < 2 || q >= n || l < 1 {
        return Err(PyValueError::new_err("need N >= 2, L >= 1, 0 <= Q < N"));
    }
    let dd = drinfeld(n, l, q);
    let d = PyDict::new(py);
    d.set_item("m_q", dd.m_q)?;
    if dd.m_q == 0 {
        d.set_item("roots", Vec::<Py<PyDict>>::new())?;
        d.set_item("distinct", true)?;
        d.set_item("all_real", true)?;
        return Ok(d.into());
    }
    let rs = isolate_and_refine(&dd, prec).map_err(err)?;
    let b = compute_b(&rs);
    let digits = ((prec as f64) * 0.301) as usize;
    let mut out = Vec::new();
    for (i, r) in rs.roots.iter().enumerate() {
        let e = PyDict::new(py);
        e.set_item("mid", r.to_decimal_string(digits.min(50)))?;
        e.set_item("exact", rs.exact[i])?;
        e.set_item("b", b[i].to_decimal_string(digits.min(50)))?;
        out.push(e);
    }
    d.set_item("roots", out)?;
    d.set_item("distinct", rs.distinct)?;
    d.set_item("all_real", rs.all_real)?;
    Ok(d.into())
}

/// True when prod_j J_j = (1 + t^N)^{l-n} prod_j Jbar_j for this
/// (mu, lambda) pair; exact check in the cyclotomic field.
#[pyfunction]
fn product_identity(n: u32, mu: Vec<u32>, lam: Vec<u32>) -> PyResult<bool> {
    let field = CycField::new(n);
    let table = QBinomialTable::new(&field);
    check_product_identity(&table, &mu, &lam).map_err(err)
}

/// Run verification suites; returns the JSON report as a string.
#[pyfunction]
#[pyo3(signature = (n, l, q=None, suites=None, prec=128, threads=1, seed=0))]
fn verify(
    n: Vec<u32>,
    l: Vec<usize>,
    q: Option<Vec<u32>>,
    suites: Option<Vec<String>>,
    prec: u32,
    threads: usize,
    seed: u64,
) -> PyResult<String> {
    let suites = match suites {
        None => Suite::ALL.to_vec(),
        Some(v) => v
            .iter()
            .map(|s| Suite::parse(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?,
    };
    let config = RunConfig {
        n_list: n,
        l_list: l,
        q_list: q,
        suites,
        precision_bits: prec,
        threads,
        seed,
        format: OutputFormat::Json,
        out: None,
    };
    let report = run_verify(&config).map_err(err)?;
    serde_json::to_string_pretty(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Time the two K-coefficient routes; returns a JSON string.
#[pyfunction(name = "bench")]
#[pyo3(signature = (n, l, reps=3))]
fn py_bench(n: u32, l: usize, reps: usize) -> PyResult<String> {
    let r = run_bench(n, l, reps).map_err(err)?;
    serde_json::to_string_pretty(&r).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn cpident_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyNum>()?;
    m.add_function(wrap_pyfunction!(py_drinfeld, m)?)?;
    m.add_function(wrap_pyfunction!(roots, m)?)?;
    m.add_function(wrap_pyfunction!(product_identity, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(py_bench, m)?)?;
    Ok(())
}
