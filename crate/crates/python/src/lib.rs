//! Python bindings for `hgp_erasure_core`.
//!
//! Binary vectors cross the boundary as lists of 0/1 integers.

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hgp_erasure_core as core;
use core::sim::{self, CodeSource};
use core::{BinaryVector, DecoderKind, ErasureSample};

fn to_py_err(e: core::Error) -> PyErr {
    match e {
        core::Error::Io(io) => PyIOError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn to_bits(v: &BinaryVector) -> Vec<u8> {
    v.to_bools().into_iter().map(u8::from).collect()
}

fn from_bits(bits: &[u8]) -> PyResult<BinaryVector> {
    if let Some(b) = bits.iter().find(|&&b| b > 1) {
        return Err(PyValueError::new_err(format!("bit value {b} is not 0 or 1")));
    }
    Ok(BinaryVector::from_bits(bits))
}

fn dense(m: &core::BinaryMatrix) -> Vec<Vec<u8>> {
    (0..m.rows()).map(|i| to_bits(&m.row(i))).collect()
}

/// Classical code given by its Tanner graph.
#[pyclass(name = "TannerGraph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTannerGraph {
    inner: core::TannerGraph,
}

#[pymethods]
impl PyTannerGraph {
    /// Build from a dense parity-check matrix.
    #[new]
    fn new(rows: Vec<Vec<u8>>) -> PyResult<Self> {
        if rows.iter().flatten().any(|&b| b > 1) {
            return Err(PyValueError::new_err("matrix entries must be 0 or 1"));
        }
        if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
            return Err(PyValueError::new_err("matrix rows differ in length"));
        }
        let m = core::BinaryMatrix::from_dense(&rows);
        Ok(Self {
            inner: core::TannerGraph::from_matrix(&m),
        })
    }

    #[staticmethod]
    fn from_alist(text: &str) -> PyResult<Self> {
        let inner = core::read_alist(text).map_err(to_py_err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let inner = core::classical::load_alist(path).map_err(to_py_err)?;
        Ok(Self { inner })
    }

    /// Progressive edge growth.
    #[staticmethod]
    #[pyo3(signature = (num_bits, num_checks, bit_degree, seed=0))]
    fn peg(num_bits: usize, num_checks: usize, bit_degree: usize, seed: u64) -> PyResult<Self> {
        let params = core::PegParams {
            num_bits,
            num_checks,
            bit_degree,
            seed,
        };
        let inner = core::peg_generate(&params).map_err(to_py_err)?;
        Ok(Self { inner })
    }

    fn to_alist(&self) -> String {
        core::write_alist(&self.inner)
    }

    fn matrix(&self) -> Vec<Vec<u8>> {
        dense(&self.inner.to_matrix())
    }

    #[getter]
    fn num_bits(&self) -> usize {
        self.inner.num_bits()
    }

    #[getter]
    fn num_checks(&self) -> usize {
        self.inner.num_checks()
    }

    fn is_stopping_set(&self, bits: Vec<usize>) -> bool {
        core::is_stopping_set(&self.inner, &bits)
    }

    fn __repr__(&self) -> String {
        format!(
            "TannerGraph(num_checks={}, num_bits={}, edges={})",
            self.inner.num_checks(),
            self.inner.num_bits(),
            self.inner.num_edges()
        )
    }
}

/// Hypergraph product of a classical code with itself.
#[pyclass(name = "HgpCode", frozen)]
struct PyHgpCode {
    inner: core::HgpCode,
}

#[pymethods]
impl PyHgpCode {
    #[new]
    fn new(graph: &PyTannerGraph) -> PyResult<Self> {
        let inner = core::HgpCode::new(&graph.inner).map_err(to_py_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn num_qubits(&self) -> usize {
        self.inner.num_qubits()
    }

    #[getter]
    fn num_x_checks(&self) -> usize {
        self.inner.num_x_checks()
    }

    #[getter]
    fn num_z_checks(&self) -> usize {
        self.inner.num_z_checks()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k_logical()
    }

    fn h_x(&self) -> Vec<Vec<u8>> {
        dense(self.inner.h_x())
    }

    fn h_z(&self) -> Vec<Vec<u8>> {
        dense(self.inner.h_z())
    }

    fn is_css_valid(&self) -> bool {
        self.inner.is_css_valid()
    }

    fn syndrome(&self, error: Vec<u8>) -> PyResult<Vec<u8>> {
        let s = self.inner.syndrome(&from_bits(&error)?).map_err(to_py_err)?;
        Ok(to_bits(&s))
    }

    /// Draw `(erasure, error, syndrome)` from stream `stream` of `seed`.
    #[pyo3(signature = (p, seed, stream=0))]
    fn sample(&self, p: f64, seed: u64, stream: u64) -> PyResult<(Vec<u8>, Vec<u8>, Vec<u8>)> {
        let s = core::sample(&self.inner, p, &core::RngStream::new(seed, stream)).map_err(to_py_err)?;
        Ok((to_bits(&s.erasure), to_bits(&s.error), to_bits(&s.syndrome)))
    }

    /// Run a decoder; returns a dict with `status`, `correction` and
    /// `residual_erasure`.
    fn decode<'py>(
        &self,
        py: Python<'py>,
        decoder: &str,
        erasure: Vec<u8>,
        syndrome: Vec<u8>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let kind: DecoderKind = decoder.parse().map_err(to_py_err)?;
        let erasure = from_bits(&erasure)?;
        let sample = ErasureSample {
            error: BinaryVector::zeros(erasure.len()),
            erasure,
            syndrome: from_bits(&syndrome)?,
        };
        let out = kind.decode(&self.inner, &sample).map_err(to_py_err)?;
        let d = PyDict::new(py);
        d.set_item("status", if out.is_corrected() { "corrected" } else { "aborted" })?;
        d.set_item("correction", to_bits(&out.correction))?;
        d.set_item("residual_erasure", to_bits(&out.residual_erasure))?;
        Ok(d)
    }

    /// `"success"` or `"logical-failure"`.
    fn classify(&self, correction: Vec<u8>, error: Vec<u8>) -> PyResult<String> {
        let v = core::classify_residual(&self.inner, &from_bits(&correction)?, &from_bits(&error)?, "python")
            .map_err(to_py_err)?;
        Ok(v.verdict.to_string())
    }

    fn erasure_supports_logical(&self, erasure: Vec<u8>) -> PyResult<bool> {
        core::erasure_supports_logical(&self.inner, &from_bits(&erasure)?).map_err(to_py_err)
    }

    /// Monte Carlo sweep; returns the CSV text.
    #[pyo3(signature = (p_grid, trials, decoders, seed=0, workers=1))]
    fn sweep(
        &self,
        py: Python<'_>,
        p_grid: Vec<f64>,
        trials: u64,
        decoders: Vec<String>,
        seed: u64,
        workers: usize,
    ) -> PyResult<String> {
        let decoders = decoders
            .iter()
            .map(|d| d.parse())
            .collect::<Result<Vec<DecoderKind>, _>>()
            .map_err(to_py_err)?;
        let spec = core::SweepSpec {
            code_source: CodeSource::Graph(self.inner.input_graph().clone()),
            p_grid,
            trials,
            decoders,
            seed,
            max_workers: workers,
            record_timing: false,
        };
        let code = &self.inner;
        let result = py
            .detach(|| sim::run_sweep_on(code, &spec))
            .map_err(to_py_err)?;
        let mut out = Vec::new();
        core::write_csv(&result, &mut out).map_err(to_py_err)?;
        Ok(String::from_utf8(out).expect("CSV is ASCII"))
    }

    fn __repr__(&self) -> String {
        format!(
            "HgpCode(N={}, R_X={}, R_Z={}, k={})",
            self.inner.num_qubits(),
            self.inner.num_x_checks(),
            self.inner.num_z_checks(),
            self.inner.k_logical()
        )
    }
}

#[pymodule]
fn hgp_erasure(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTannerGraph>()?;
    m.add_class::<PyHgpCode>()?;
    Ok(())
}
