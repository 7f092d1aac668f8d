use crate::error::{Error, Result};

/// A dense clique potential attached to a sorted hyperedge.
///
/// Values are stored row-major: the last vertex's state varies fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct CliqueTensor {
    vertices: Vec<usize>,
    shape: Vec<usize>,
    values: Vec<f64>,
}

impl CliqueTensor {
    pub fn new(vertices: Vec<usize>, shape: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidModel("tensor with no vertices".into()));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidModel(format!(
                "tensor vertices {vertices:?} are not strictly increasing"
            )));
        }
        if shape.len() != vertices.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} vertices but shape {shape:?}",
                vertices.len()
            )));
        }
        if shape.contains(&0) {
            return Err(Error::ShapeMismatch(format!("zero extent in shape {shape:?}")));
        }
        let len: usize = shape.iter().product();
        if values.len() != len {
            return Err(Error::ShapeMismatch(format!(
                "shape {shape:?} needs {len} values, got {}",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "non-finite entry {v} on hyperedge {vertices:?}"
            )));
        }
        Ok(Self { vertices, shape, values })
    }

    pub fn zeros(vertices: Vec<usize>, shape: Vec<usize>) -> Result<Self> {
        let len = shape.iter().product();
        Self::new(vertices, shape, vec![0.0; len])
    }

    /// Builds a tensor by evaluating `f` at every multi-index, in storage order.
    pub fn from_fn(
        vertices: Vec<usize>,
        shape: Vec<usize>,
        mut f: impl FnMut(&[usize]) -> f64,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(shape.iter().product());
        for_each_index(&shape, |idx| values.push(f(idx)));
        Self::new(vertices, shape, values)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.vertices.binary_search(&node).is_ok()
    }

    /// Position of `node` among this tensor's vertices.
    pub fn position(&self, node: usize) -> Option<usize> {
        self.vertices.binary_search(&node).ok()
    }

    pub fn strides(&self) -> Vec<usize> {
        strides(&self.shape)
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.shape.len());
        idx.iter()
            .zip(&self.shape)
            .fold(0, |acc, (&i, &k)| {
                debug_assert!(i < k);
                acc * k + i
            })
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.values[self.flat_index(idx)]
    }

    /// Entry selected by a full configuration of the model (indexed by node).
    pub fn at_configuration(&self, x: &[usize]) -> f64 {
        let flat = self
            .vertices
            .iter()
            .zip(&self.shape)
            .fold(0, |acc, (&v, &k)| acc * k + x[v]);
        self.values[flat]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Largest absolute fiber sum over every mode.
    pub fn max_fiber_sum(&self) -> f64 {
        (0..self.order())
            .flat_map(|mode| self.fiber_sums(mode))
            .fold(0.0_f64, |m, s| m.max(s.abs()))
    }

    /// Sums along `mode`, one per assignment of the other indices (row-major
    /// over the remaining shape).
    pub fn fiber_sums(&self, mode: usize) -> Vec<f64> {
        let stride = strides(&self.shape)[mode];
        let extent = self.shape[mode];
        let block = stride * extent;
        let mut sums = vec![0.0; self.values.len() / extent];
        for (flat, v) in self.values.iter().enumerate() {
            let outer = flat / block;
            let inner = flat % stride;
            sums[outer * stride + inner] += v;
        }
        sums
    }

    /// True iff every fiber sum has absolute value at most `tol`.
    pub fn is_centered(&self, tol: f64) -> bool {
        self.max_fiber_sum() <= tol
    }

    /// Subtracts the mean of every fiber along `mode` and returns the
    /// subtracted means, laid out row-major over the remaining indices.
    pub(crate) fn center_mode(&mut self, mode: usize) -> Vec<f64> {
        let extent = self.shape[mode] as f64;
        let mut means = self.fiber_sums(mode);
        for m in &mut means {
            *m /= extent;
        }
        let stride = strides(&self.shape)[mode];
        let block = stride * self.shape[mode];
        for (flat, v) in self.values.iter_mut().enumerate() {
            *v -= means[(flat / block) * stride + flat % stride];
        }
        means
    }

    pub(crate) fn add_assign(&mut self, other: &[f64]) {
        debug_assert_eq!(other.len(), self.values.len());
        for (a, b) in self.values.iter_mut().zip(other) {
            *a += b;
        }
    }
}

/// Free-function form of [`CliqueTensor::is_centered`].
pub fn is_centered(tensor: &CliqueTensor, tol: f64) -> bool {
    tensor.is_centered(tol)
}

pub(crate) fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * shape[i + 1];
    }
    s
}

/// Visits every multi-index of `shape` in row-major order.
pub fn for_each_index(shape: &[usize], mut f: impl FnMut(&[usize])) {
    let total: usize = shape.iter().product();
    if total == 0 {
        return;
    }
    let mut idx = vec![0; shape.len()];
    for _ in 0..total {
        f(&idx);
        for d in (0..shape.len()).rev() {
            idx[d] += 1;
            if idx[d] < shape[d] {
                break;
            }
            idx[d] = 0;
        }
    }
}
