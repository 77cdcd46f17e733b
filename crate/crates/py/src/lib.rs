//! Python bindings: catalog listing, verification, generating functions and
//! constants. Structured results come back as plain dicts and lists.

use num_bigint::BigInt;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use binharm_core::ball::{bits_for_digits, constant, ConstantName};
use binharm_core::exact::{self, parse_rational, BinetIdentity, SurdQ5};
use binharm_core::genfunc::{gf_eval_exact, GfName};
use binharm_core::registry::{self, Filter};
use binharm_core::verifier::{self, DigitsPolicy, PrecisionPolicy, SuiteOptions};
use binharm_core::Error;

fn to_py(err: Error) -> PyErr {
    match err {
        Error::UnknownIdentity(id) => PyKeyError::new_err(id),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn serialize<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let value = serde_json::to_value(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    json_to_py(py, &value)
}

/// Catalog records, optionally filtered by status and family name.
#[pyfunction]
#[pyo3(signature = (status=None, family=None))]
fn list_identities<'py>(py: Python<'py>, status: Option<&str>, family: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let filter = Filter {
        status: status.map(str::parse).transpose().map_err(to_py)?,
        family: family.map(str::parse).transpose().map_err(to_py)?,
    };
    let records: Vec<_> = registry::list_identities(&filter)
        .iter()
        .map(|e| e.catalog_record())
        .collect();
    serialize(py, &records)
}

/// Report for one identity; digits default to its convergence class.
#[pyfunction]
#[pyo3(signature = (id, digits=None, max_terms=binharm_core::series::DEFAULT_MAX_TERMS))]
fn verify<'py>(py: Python<'py>, id: &str, digits: Option<u32>, max_terms: u64) -> PyResult<Bound<'py, PyAny>> {
    let entry = registry::registry().get(id).map_err(to_py)?;
    let digits = digits.unwrap_or_else(|| DigitsPolicy::default().digits_for(entry));
    let report = py
        .detach(|| verifier::verify_entry(entry, digits, max_terms, PrecisionPolicy::default()))
        .map_err(to_py)?;
    serialize(py, &report)
}

/// Whole-catalog run with reports and summary.
#[pyfunction]
#[pyo3(signature = (digits=None, workers=0))]
fn verify_all<'py>(py: Python<'py>, digits: Option<u32>, workers: usize) -> PyResult<Bound<'py, PyAny>> {
    let opts = SuiteOptions {
        digits: digits.map_or_else(DigitsPolicy::default, DigitsPolicy::uniform),
        workers,
        ..SuiteOptions::default()
    };
    let suite = py.detach(|| verifier::verify_all(&opts)).map_err(to_py)?;
    serialize(py, &suite)
}

/// Enclosure of a generating function at the exact rational `x = "p/q"`.
#[pyfunction]
#[pyo3(signature = (name, x, digits=30))]
fn gf_eval(name: &str, x: &str, digits: u32) -> PyResult<String> {
    let name: GfName = name.parse().map_err(to_py)?;
    let x = SurdQ5::from_rational(parse_rational(x).map_err(to_py)?);
    let v = gf_eval_exact(name, &x, bits_for_digits(digits, 64)).map_err(to_py)?;
    Ok(v.to_decimal())
}

/// Every named constant as a `"mid ± rad"` string.
#[pyfunction]
#[pyo3(signature = (digits=30))]
fn constants(py: Python<'_>, digits: u32) -> PyResult<Bound<'_, PyDict>> {
    let prec = bits_for_digits(digits, 64);
    let out = PyDict::new(py);
    for c in ConstantName::ALL {
        out.set_item(c.name(), constant(c, prec).to_decimal_sig(digits as usize))?;
    }
    Ok(out)
}

#[pyfunction]
fn fib(n: i64) -> BigInt {
    exact::fib(n)
}

#[pyfunction]
fn lucas(n: i64) -> BigInt {
    exact::lucas(n)
}

/// Exact check of a named Binet consequence at `(m, n)`.
#[pyfunction]
fn check_binet_identity(identity: &str, m: i64, n: i64) -> PyResult<bool> {
    let id: BinetIdentity = identity.parse().map_err(to_py)?;
    Ok(exact::check_binet_identity(id, m, n))
}

#[pymodule]
fn binharm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(list_identities, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    m.add_function(wrap_pyfunction!(gf_eval, m)?)?;
    m.add_function(wrap_pyfunction!(constants, m)?)?;
    m.add_function(wrap_pyfunction!(fib, m)?)?;
    m.add_function(wrap_pyfunction!(lucas, m)?)?;
    m.add_function(wrap_pyfunction!(check_binet_identity, m)?)?;
    Ok(())
}
