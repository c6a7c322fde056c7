use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered tensor factorization of a Hilbert space: one local dimension and
/// one unique party label per factor. The first factor is the most
/// significant digit of the row/column index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemLayout {
    dims: Vec<usize>,
    labels: Vec<String>,
}

impl SubsystemLayout {
    pub fn new<S: AsRef<str>>(dims: &[usize], labels: &[S]) -> Result<Self> {
        if dims.len() != labels.len() {
            return Err(Error::Layout(format!(
                "{} dims but {} labels",
                dims.len(),
                labels.len()
            )));
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::Layout(format!("factor {pos} has dimension 0")));
        }
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_owned()).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::LabelCollision(l.clone()));
            }
        }
        Ok(Self {
            dims: dims.to_vec(),
            labels,
        })
    }

    /// A single unlabeled-looking factor, used for scalars and plain matrices.
    pub fn single(dim: usize, label: &str) -> Result<Self> {
        Self::new(&[dim], &[label])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.dims[self.position(label)?])
    }

    /// Positions of a label set, in the order given. Rejects repeats.
    pub fn positions<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            let p = self.position(l.as_ref())?;
            if out.contains(&p) {
                return Err(Error::LabelCollision(l.as_ref().to_owned()));
            }
            out.push(p);
        }
        Ok(out)
    }

    /// Row-major strides: index = sum(digit_k * stride_k).
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    pub fn concat(&self, other: &SubsystemLayout) -> Result<Self> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        Self::new(&dims, &labels)
    }

    /// Layout restricted to the given factor positions (kept in layout order).
    pub fn select(&self, keep: &[usize]) -> Self {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        Self {
            dims: keep.iter().map(|&k| self.dims[k]).collect(),
            labels: keep.iter().map(|&k| self.labels[k].clone()).collect(),
        }
    }

    /// Layout with factors reordered so that factor `i` of the result is
    /// factor `order[i]` of `self`.
    pub fn reorder(&self, order: &[usize]) -> Self {
        Self {
            dims: order.iter().map(|&k| self.dims[k]).collect(),
            labels: order.iter().map(|&k| self.labels[k].clone()).collect(),
        }
    }

    pub fn relabel(&self, from: &str, to: &str) -> Result<Self> {
        let pos = self.position(from)?;
        let mut labels = self.labels.clone();
        labels[pos] = to.to_owned();
        Self::new(&self.dims, &labels)
    }
}

impl fmt::Display for SubsystemLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .dims
            .iter()
            .zip(&self.labels)
            .map(|(d, l)| format!("{l}:{d}"))
            .collect();
        write!(f, "[{}]", parts.join(" x "))
    }
}
