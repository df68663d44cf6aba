//! Python bindings. Sessions use the same text format as the `resint` binary
//! and reports come back as JSON strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ::resint::cli::{parse_session, run_session, Session, Tier};
use ::resint::error::Error;
use ::resint::koszul::KoszulComplex;
use ::resint::residual::make_residual;
use ::resint::zplus::disguised_residual;

fn to_py(e: Error) -> PyErr {
    match ::resint::cli::error_kind(&e) {
        "input" | "precondition" => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// A session with ring `ring` (e.g. `"ZZ/32003 [x,y] grevlex"`) and the
/// given named ideals.
fn session_of(ring: &str, ideals: &[(&str, &[String])]) -> PyResult<Session> {
    let mut src = format!("ring R = {ring};\n");
    for (name, gens) in ideals {
        src.push_str(&format!("ideal {name} = {};\n", gens.join(", ")));
    }
    parse_session(&src).map_err(to_py)
}

/// Run every task of a session file's text; returns a JSON array of reports.
#[pyfunction]
#[pyo3(signature = (source, tier = "fast", seed = 0))]
fn run(py: Python<'_>, source: &str, tier: &str, seed: u64) -> PyResult<String> {
    let tier = match tier {
        "fast" => Tier::Fast,
        "extended" => Tier::Extended,
        other => return Err(PyValueError::new_err(format!("unknown tier {other:?}"))),
    };
    let session = parse_session(source).map_err(to_py)?;
    let reports = py.allow_threads(|| run_session(&session, tier, seed));
    let docs: Vec<serde_json::Value> = reports.iter().map(|r| serde_json::to_value(r).unwrap()).collect();
    Ok(serde_json::Value::Array(docs).to_string())
}

/// Minimal generators of the residual intersection `a : I` with `s`
/// defaulting to the number of generators of `a`.
#[pyfunction]
#[pyo3(signature = (ring, i, a, s = None))]
fn residual_intersection(ring: &str, i: Vec<String>, a: Vec<String>, s: Option<usize>) -> PyResult<Vec<String>> {
    let session = session_of(ring, &[("I", &i), ("a", &a)])?;
    let rd = make_residual(session.ideal("I").unwrap(), session.ideal("a").unwrap(), s.unwrap_or(a.len()))
        .map_err(to_py)?;
    Ok(rd.j.minimalized().to_strings())
}

/// The ideal presented by `H_0` of the complex built from `I` and `a`.
#[pyfunction]
#[pyo3(signature = (ring, i, a, s = None))]
fn disguised(ring: &str, i: Vec<String>, a: Vec<String>, s: Option<usize>) -> PyResult<Vec<String>> {
    let session = session_of(ring, &[("I", &i), ("a", &a)])?;
    let rd = make_residual(session.ideal("I").unwrap(), session.ideal("a").unwrap(), s.unwrap_or(a.len()))
        .map_err(to_py)?;
    Ok(disguised_residual(&rd).map_err(to_py)?.minimalized().to_strings())
}

/// Annihilator of the `index`-th Koszul homology of `gens`.
#[pyfunction]
fn koszul_annihilator(ring: &str, gens: Vec<String>, index: usize) -> PyResult<Vec<String>> {
    let session = session_of(ring, &[("f", &gens)])?;
    let kc = KoszulComplex::new(&session.ring, session.ideal("f").unwrap().gens()).map_err(to_py)?;
    Ok(kc.ann_homology(index).map_err(to_py)?.minimalized().to_strings())
}

#[pymodule]
fn resint(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(residual_intersection, m)?)?;
    m.add_function(wrap_pyfunction!(disguised, m)?)?;
    m.add_function(wrap_pyfunction!(koszul_annihilator, m)?)?;
    Ok(())
}
