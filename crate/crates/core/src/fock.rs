//! Dense operator algebra on a truncated bosonic Fock space.
//!
//! The space keeps the levels `|0⟩…|D−1⟩`. Truncation is a hard cutoff: `a†`
//! sends `|D−1⟩` to zero, so every operator here is an endomorphism of the
//! same finite space and `[a, a†]` deviates from the identity only in its
//! last diagonal entry.

use std::fmt;

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::{Error, Result};

/// Number of retained Fock levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockSpace {
    dim: usize,
}

impl FockSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, other: &FockSpace) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }
}

impl fmt::Display for FockSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fock({})", self.dim)
    }
}

pub fn make_space(dim: usize) -> Result<FockSpace> {
    FockSpace::new(dim)
}

/// Dense `D×D` complex matrix with `entries[[m, n]] = ⟨m|O|n⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    space: FockSpace,
    entries: Array2<C64>,
}

impl Operator {
    /// Wraps a matrix, rejecting wrong shapes and non-finite entries.
    pub fn from_entries(space: FockSpace, entries: Array2<C64>) -> Result<Self> {
        let (rows, cols) = entries.dim();
        if rows != space.dim {
            return Err(Error::ShapeMismatch {
                left: space.dim,
                right: rows,
            });
        }
        if cols != space.dim {
            return Err(Error::ShapeMismatch {
                left: space.dim,
                right: cols,
            });
        }
        if let Some(((m, _), _)) = entries
            .indexed_iter()
            .find(|(_, z)| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite(m));
        }
        Ok(Self { space, entries })
    }

    pub fn zeros(space: FockSpace) -> Self {
        Self {
            space,
            entries: Array2::zeros((space.dim, space.dim)),
        }
    }

    pub fn identity(space: FockSpace) -> Self {
        Self {
            space,
            entries: Array2::eye(space.dim),
        }
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn entries(&self) -> &Array2<C64> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[[row, col]]
    }

    pub fn matmul(&self, rhs: &Operator) -> Result<Operator> {
        self.space.check(&rhs.space)?;
        Ok(Self {
            space: self.space,
            entries: self.entries.dot(&rhs.entries),
        })
    }

    pub fn add(&self, rhs: &Operator) -> Result<Operator> {
        self.space.check(&rhs.space)?;
        Ok(Self {
            space: self.space,
            entries: &self.entries + &rhs.entries,
        })
    }

    pub fn sub(&self, rhs: &Operator) -> Result<Operator> {
        self.space.check(&rhs.space)?;
        Ok(Self {
            space: self.space,
            entries: &self.entries - &rhs.entries,
        })
    }

    pub fn scale(&self, c: C64) -> Operator {
        Self {
            space: self.space,
            entries: self.entries.mapv(|z| c * z),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Operator {
        Self {
            space: self.space,
            entries: self.entries.t().mapv(|z| z.conj()),
        }
    }

    pub fn commutator(&self, rhs: &Operator) -> Result<Operator> {
        self.matmul(rhs)?.sub(&rhs.matmul(self)?)
    }

    pub fn anticommutator(&self, rhs: &Operator) -> Result<Operator> {
        self.matmul(rhs)?.add(&rhs.matmul(self)?)
    }

    /// Largest entrywise modulus.
    pub fn max_abs_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max_abs_norm(self − rhs)`.
    pub fn distance(&self, rhs: &Operator) -> Result<f64> {
        Ok(self.sub(rhs)?.max_abs_norm())
    }

    pub fn apply(&self, v: &Ket) -> Result<Ket> {
        self.space.check(&v.space)?;
        Ok(Ket {
            space: self.space,
            amplitudes: self.entries.dot(&v.amplitudes),
        })
    }

    /// The block `⟨i|O|j⟩` for `i, j ∈ {0, 1}`.
    pub fn two_level_block(&self) -> [[C64; 2]; 2] {
        let e = &self.entries;
        [[e[[0, 0]], e[[0, 1]]], [e[[1, 0]], e[[1, 1]]]]
    }
}

/// Complex amplitudes `⟨n|ψ⟩` in the Fock basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    space: FockSpace,
    amplitudes: Array1<C64>,
}

impl Ket {
    pub fn from_amplitudes(space: FockSpace, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != space.dim {
            return Err(Error::ShapeMismatch {
                left: space.dim,
                right: amplitudes.len(),
            });
        }
        if let Some(n) = amplitudes
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite(n));
        }
        Ok(Self {
            space,
            amplitudes: Array1::from(amplitudes),
        })
    }

    pub fn zeros(space: FockSpace) -> Self {
        Self {
            space,
            amplitudes: Array1::zeros(space.dim),
        }
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    pub fn get(&self, n: usize) -> C64 {
        self.amplitudes[n]
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Ket) -> Result<C64> {
        self.space.check(&other.space)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(u, v)| u.conj() * v)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, c: C64) -> Ket {
        Self {
            space: self.space,
            amplitudes: self.amplitudes.mapv(|z| c * z),
        }
    }

    pub fn add(&self, other: &Ket) -> Result<Ket> {
        self.space.check(&other.space)?;
        Ok(Self {
            space: self.space,
            amplitudes: &self.amplitudes + &other.amplitudes,
        })
    }

    /// Largest componentwise modulus of `self − other`.
    pub fn distance(&self, other: &Ket) -> Result<f64> {
        self.space.check(&other.space)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(u, v)| (u - v).norm())
            .fold(0.0, f64::max))
    }

    /// `|self⟩⟨other|`.
    pub fn outer(&self, other: &Ket) -> Result<Operator> {
        self.space.check(&other.space)?;
        let d = self.space.dim;
        let entries = Array2::from_shape_fn((d, d), |(m, n)| {
            self.amplitudes[m] * other.amplitudes[n].conj()
        });
        Ok(Operator {
            space: self.space,
            entries,
        })
    }
}

/// `a|n⟩ = √n |n−1⟩`.
pub fn annihilator(space: FockSpace) -> Operator {
    let mut op = Operator::zeros(space);
    for n in 1..space.dim {
        op.entries[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
    }
    op
}

/// `a†|n⟩ = √(n+1) |n+1⟩`, with `a†|D−1⟩ = 0`.
pub fn creator(space: FockSpace) -> Operator {
    annihilator(space).dagger()
}

pub fn number_operator(space: FockSpace) -> Operator {
    diagonal(space, |n| C64::new(n as f64, 0.0))
}

fn diagonal(space: FockSpace, g: impl Fn(usize) -> C64) -> Operator {
    let mut op = Operator::zeros(space);
    for n in 0..space.dim {
        op.entries[[n, n]] = g(n);
    }
    op
}

/// `g(N) = Σₙ g(n)|n⟩⟨n|`.
pub fn diagonal_from_function(space: FockSpace, g: impl Fn(usize) -> C64) -> Result<Operator> {
    let op = diagonal(space, g);
    for n in 0..space.dim {
        let z = op.entries[[n, n]];
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite(n));
        }
    }
    Ok(op)
}

pub fn fock_ket(space: FockSpace, n: usize) -> Result<Ket> {
    if n >= space.dim {
        return Err(Error::IndexOutOfRange {
            index: n,
            dim: space.dim,
        });
    }
    let mut ket = Ket::zeros(space);
    ket.amplitudes[n] = C64::new(1.0, 0.0);
    Ok(ket)
}

/// Operator that keeps only the levels listed by `keep` and zeroes the rest.
pub fn level_projector(space: FockSpace, keep: impl Fn(usize) -> bool) -> Operator {
    diagonal(space, |n| {
        if keep(n) {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}
