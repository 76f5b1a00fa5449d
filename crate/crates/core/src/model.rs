//! Problem description shared by every other module.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance on `Im gamma` for operations that need a real penalty.
pub const REAL_GAMMA_TOL: f64 = 1e-14;

/// Right-hand side `f` of `u'' + k^2 u = -f`.
#[derive(Clone, Default)]
pub enum RhsSpec {
    /// `f(x) = -1`.
    #[default]
    ConstantNegOne,
    /// A user-supplied smooth function on `[0, 1]`.
    Function(Arc<dyn Fn(f64) -> Complex64 + Send + Sync>),
}

impl RhsSpec {
    /// Wraps a closure as a right-hand side.
    pub fn function<F>(f: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        RhsSpec::Function(Arc::new(f))
    }

    /// Evaluates `f(x)`.
    #[inline]
    pub fn eval(&self, x: f64) -> Complex64 {
        match self {
            RhsSpec::ConstantNegOne => Complex64::new(-1.0, 0.0),
            RhsSpec::Function(f) => f(x),
        }
    }

    /// True for the constant `-1` right-hand side.
    pub fn is_constant_neg_one(&self) -> bool {
        matches!(self, RhsSpec::ConstantNegOne)
    }
}

impl fmt::Debug for RhsSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhsSpec::ConstantNegOne => f.write_str("ConstantNegOne"),
            RhsSpec::Function(_) => f.write_str("Function(..)"),
        }
    }
}

/// Uniform mesh of `[0, 1]` with `n` elements `K_j = (x_{j-1}, x_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformMesh {
    n: usize,
    h: f64,
    nodes: Vec<f64>,
}

impl UniformMesh {
    /// Builds the mesh `x_j = j / n`, `j = 0..=n`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidProblem("mesh needs at least one element".into()));
        }
        let nf = n as f64;
        let nodes = (0..=n).map(|j| j as f64 / nf).collect();
        Ok(Self { n, h: 1.0 / nf, nodes })
    }

    /// Number of elements.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Mesh size `1 / n`.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Node positions `x_0 = 0, ..., x_n = 1`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Endpoints of element `j` (1-based, `1 <= j <= n`).
    pub fn element(&self, j: usize) -> (f64, f64) {
        (self.nodes[j - 1], self.nodes[j])
    }
}

/// A validated model problem.
///
/// `t = k h` is computed once at construction; every module reads the cached
/// value through [`Problem::t`].
#[derive(Debug, Clone)]
pub struct Problem {
    k: f64,
    n: usize,
    h: f64,
    t: f64,
    gamma: Complex64,
    rhs: RhsSpec,
    include_boundary_penalty: bool,
}

impl Problem {
    /// Validates and builds a problem. The boundary least-squares penalty is
    /// off; see [`Problem::with_boundary_penalty`].
    pub fn new(k: f64, n: usize, gamma: Complex64, rhs: RhsSpec) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidProblem(format!("wavenumber must be positive, got {k}")));
        }
        if n < 2 {
            return Err(Error::InvalidProblem(format!("need at least 2 elements, got {n}")));
        }
        if !(gamma.re.is_finite() && gamma.im.is_finite()) {
            return Err(Error::InvalidProblem(format!("penalty must be finite, got {gamma}")));
        }
        let h = 1.0 / n as f64;
        Ok(Self {
            k,
            n,
            h,
            t: k / n as f64,
            gamma,
            rhs,
            include_boundary_penalty: false,
        })
    }

    /// Toggles the penalty `gamma h (u'(1) - i k u(1)) conj(v'(1) - i k v(1))`.
    pub fn with_boundary_penalty(mut self, on: bool) -> Self {
        self.include_boundary_penalty = on;
        self
    }

    /// Wavenumber.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Element count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Mesh size.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// `k h`.
    pub fn t(&self) -> f64 {
        self.t
    }

    /// Penalty parameter.
    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    /// Right-hand side.
    pub fn rhs(&self) -> &RhsSpec {
        &self.rhs
    }

    /// Whether the boundary least-squares term is part of the form.
    pub fn include_boundary_penalty(&self) -> bool {
        self.include_boundary_penalty
    }

    /// The mesh this problem lives on.
    pub fn mesh(&self) -> UniformMesh {
        // n >= 2 was checked in `new`
        UniformMesh::new(self.n).expect("validated element count")
    }

    /// Returns `Re gamma` if the penalty is real within [`REAL_GAMMA_TOL`].
    pub fn real_gamma(&self) -> Result<f64> {
        if self.gamma.im.abs() > REAL_GAMMA_TOL {
            return Err(Error::Unsupported(format!(
                "operation needs a real penalty, got gamma = {}",
                self.gamma
            )));
        }
        Ok(self.gamma.re)
    }
}
