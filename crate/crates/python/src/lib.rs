//! Python bindings: `closext_py.ImplicationalBase`, `closext_py.MeetFamily`
//! and the brute-force oracle.

use closext::{self as cx, AttrSet, GroundSet, Implication, DEFAULT_GUARD};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde_json::Value;

create_exception!(closext_py, ClosextError, PyValueError);
create_exception!(closext_py, GuardExceededError, ClosextError);

fn err(e: cx::Error) -> PyErr {
    match e {
        cx::Error::GuardExceeded { .. } => GuardExceededError::new_err(e.to_string()),
        _ => ClosextError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, value: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match value {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_f64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(f)) => f.into_pyobject(py)?.into_any(),
            _ => py.None().into_bound(py),
        },
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, to_py(py, v)?)?;
            }
            dict.into_any()
        }
    })
}

fn parse_tokens(ground: &GroundSet, tokens: Vec<String>) -> PyResult<AttrSet> {
    ground
        .set_of(tokens.iter().map(String::as_str))
        .map_err(err)
}

fn element(ground: &GroundSet, name: &str) -> PyResult<usize> {
    ground
        .index_of(name)
        .ok_or_else(|| err(cx::Error::UnknownElement(name.to_string())))
}

fn family_lists(ground: &GroundSet, sets: impl IntoIterator<Item = AttrSet>) -> Vec<Vec<String>> {
    sets.into_iter().map(|s| ground.tokens(s)).collect()
}

/// Implicational base over a named ground set.
#[pyclass(
    name = "ImplicationalBase",
    module = "closext_py",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyBase {
    inner: cx::ImplicationalBase,
}

#[pymethods]
impl PyBase {
    /// `rules` is a list of `(premise, conclusion)` token lists.
    #[new]
    fn new(elements: Vec<String>, rules: Vec<(Vec<String>, Vec<String>)>) -> PyResult<Self> {
        let ground = GroundSet::new(elements).map_err(err)?;
        let mut imps = Vec::with_capacity(rules.len());
        for (l, r) in rules {
            imps.push(Implication::new(
                parse_tokens(&ground, l)?,
                parse_tokens(&ground, r)?,
            ));
        }
        let inner = cx::ImplicationalBase::new(ground, imps).map_err(err)?;
        Ok(PyBase { inner })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        cx::ImplicationalBase::parse(text)
            .map(|inner| PyBase { inner })
            .map_err(err)
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.ground().names().to_vec()
    }

    #[getter]
    fn rules(&self) -> Vec<(Vec<String>, Vec<String>)> {
        let g = self.inner.ground();
        self.inner
            .implications()
            .iter()
            .map(|i| (g.tokens(i.premise), g.tokens(i.conclusion)))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        let g = self.inner.ground();
        let parts: Vec<String> = self
            .inner
            .implications()
            .iter()
            .map(|i| i.compact(g))
            .collect();
        format!("ImplicationalBase({{{}}})", parts.join(", "))
    }

    fn closure(&self, tokens: Vec<String>) -> PyResult<Vec<String>> {
        let g = self.inner.ground();
        Ok(g.tokens(self.inner.closure(parse_tokens(g, tokens)?)))
    }

    #[pyo3(signature = (guard = DEFAULT_GUARD))]
    fn closed_sets(&self, guard: usize) -> PyResult<Vec<Vec<String>>> {
        let f = cx::enumerate_closed(&self.inner, guard).map_err(err)?;
        Ok(family_lists(f.ground(), f.iter()))
    }

    fn pivots(&self) -> Vec<String> {
        let g = self.inner.ground();
        cx::UnitTable::compute(&self.inner)
            .pivots()
            .iter()
            .map(|&x| g.name(x).to_string())
            .collect()
    }

    /// Recognizer report: `verdict`, `ideal_closed_violations`, `premise_violations`.
    fn check_largest<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let report = cx::check_largest(&self.inner).map_err(err)?;
        to_py(py, &report.to_json(self.inner.ground()))
    }

    fn saturate(&self) -> Self {
        PyBase {
            inner: self.inner.saturate(),
        }
    }

    fn non_unitary(&self) -> Self {
        PyBase {
            inner: self.inner.non_unitary(),
        }
    }

    fn largest_extension(&self) -> Self {
        PyBase {
            inner: cx::largest_extension_base(&self.inner),
        }
    }

    /// Drop `x -> Φ(x)` from a saturated base.
    fn remove_unitary(&self, x: &str) -> PyResult<Self> {
        let x = element(self.inner.ground(), x)?;
        cx::remove_unitary_step(&self.inner, x)
            .map(|inner| PyBase { inner })
            .map_err(err)
    }

    #[pyo3(signature = (guard = DEFAULT_GUARD))]
    fn meets(&self, guard: usize) -> PyResult<PyMeets> {
        cx::MeetFamily::of_closure(&self.inner, guard)
            .map(|inner| PyMeets { inner })
            .map_err(err)
    }
}

/// Family of meet-irreducible sets; the closed sets are its intersections.
#[pyclass(
    name = "MeetFamily",
    module = "closext_py",
    frozen,
    eq,
    skip_from_py_object
)]
#[derive(Clone, PartialEq)]
struct PyMeets {
    inner: cx::MeetFamily,
}

#[pymethods]
impl PyMeets {
    #[new]
    fn new(elements: Vec<String>, sets: Vec<Vec<String>>) -> PyResult<Self> {
        let ground = GroundSet::new(elements).map_err(err)?;
        let mut parsed = Vec::with_capacity(sets.len());
        for s in sets {
            parsed.push(parse_tokens(&ground, s)?);
        }
        cx::MeetFamily::new(ground, parsed)
            .map(|inner| PyMeets { inner })
            .map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        cx::MeetFamily::parse(text)
            .map(|inner| PyMeets { inner })
            .map_err(err)
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.ground().names().to_vec()
    }

    #[getter]
    fn sets(&self) -> Vec<Vec<String>> {
        family_lists(self.inner.ground(), self.inner.iter())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("MeetFamily({})", self.inner.as_family().compact())
    }

    fn closure(&self, tokens: Vec<String>) -> PyResult<Vec<String>> {
        let g = self.inner.ground();
        Ok(g.tokens(self.inner.closure(parse_tokens(g, tokens)?)))
    }

    #[pyo3(signature = (guard = DEFAULT_GUARD))]
    fn closed_sets(&self, guard: usize) -> PyResult<Vec<Vec<String>>> {
        let f = self.inner.closed_sets(guard).map_err(err)?;
        Ok(family_lists(f.ground(), f.iter()))
    }

    fn is_reduced(&self) -> bool {
        self.inner.is_reduced()
    }

    fn reduce(&self) -> Self {
        PyMeets {
            inner: self.inner.reduce(),
        }
    }

    /// Buckets `m1`..`m6` relative to pivot `x`, plus `pivot` and `star`.
    fn partition<'py>(&self, py: Python<'py>, x: &str) -> PyResult<Bound<'py, PyAny>> {
        let g = self.inner.ground();
        let p = self.inner.partition(element(g, x)?).map_err(err)?;
        to_py(py, &p.to_json(g))
    }

    fn step(&self, x: &str) -> PyResult<Self> {
        let x = element(self.inner.ground(), x)?;
        self.inner
            .step(x)
            .map(|inner| PyMeets { inner })
            .map_err(err)
    }

    /// Meets of the largest extension. With `order`, pivots are processed in
    /// that order; it must list every pivot exactly once.
    #[pyo3(signature = (order = None))]
    fn largest_extension(&self, order: Option<Vec<String>>) -> PyResult<Self> {
        let trace = self.run(order)?;
        Ok(PyMeets {
            inner: trace.final_meets,
        })
    }

    /// Full trace: `initial`, `adjoined_empty`, `steps`, `final`.
    #[pyo3(signature = (order = None))]
    fn trace<'py>(
        &self,
        py: Python<'py>,
        order: Option<Vec<String>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.run(order)?.to_json())
    }
}

impl PyMeets {
    fn run(&self, order: Option<Vec<String>>) -> PyResult<cx::ExtensionTrace> {
        match order {
            None => Ok(self.inner.largest_extension()),
            Some(names) => {
                let g = self.inner.ground();
                let idx = names
                    .iter()
                    .map(|n| element(g, n))
                    .collect::<PyResult<Vec<_>>>()?;
                self.inner.largest_extension_ordered(&idx).map_err(err)
            }
        }
    }
}

/// Largest extension by brute force, as a sorted list of closed sets.
#[pyfunction]
#[pyo3(signature = (system, guard = DEFAULT_GUARD))]
fn bruteforce_largest(system: &Bound<'_, PyAny>, guard: usize) -> PyResult<Vec<Vec<String>>> {
    let f = if let Ok(b) = system.cast::<PyBase>() {
        cx::largest_extension_bruteforce(&b.get().inner, guard)
    } else if let Ok(m) = system.cast::<PyMeets>() {
        cx::largest_extension_bruteforce(&m.get().inner, guard)
    } else {
        return Err(ClosextError::new_err(
            "expected an ImplicationalBase or a MeetFamily",
        ));
    }
    .map_err(err)?;
    Ok(family_lists(f.ground(), f.iter()))
}

/// Seeded random base with `k` non-trivial single-conclusion rules over `n` elements.
#[pyfunction]
#[pyo3(signature = (n, k, seed = 0))]
fn random_base(n: usize, k: usize, seed: u64) -> PyResult<PyBase> {
    cx::random_base(n, k, seed)
        .map(|inner| PyBase { inner })
        .map_err(err)
}

#[pymodule]
fn closext_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBase>()?;
    m.add_class::<PyMeets>()?;
    m.add_function(wrap_pyfunction!(bruteforce_largest, m)?)?;
    m.add_function(wrap_pyfunction!(random_base, m)?)?;
    m.add("ClosextError", m.py().get_type::<ClosextError>())?;
    m.add(
        "GuardExceededError",
        m.py().get_type::<GuardExceededError>(),
    )?;
    m.add("DEFAULT_GUARD", DEFAULT_GUARD)?;
    m.add("MAX_GUARD", cx::MAX_GUARD)?;
    Ok(())
}
