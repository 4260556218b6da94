//! One-generator Grassmann algebra `{a + bθ : θ² = 0}` over the complex
//! numbers, Grassmann-valued kets, and the `σ₋` eigenket with a Grassmann
//! eigenvalue.
//!
//! Grassmann scalars commute with the complex operator entries, so applying a
//! complex matrix to a Grassmann ket is an ordinary matrix-vector product with
//! [`GrassmannScalar::scale`] for the entry products.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as C64;

use crate::bosonization::{sigma_minus, BosonizationParams};
use crate::fock::{FockSpace, Operator};
use crate::{Error, Result};

/// `body + soul·θ`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GrassmannScalar {
    pub body: C64,
    pub soul: C64,
}

impl GrassmannScalar {
    pub const ZERO: GrassmannScalar = GrassmannScalar::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    pub const ONE: GrassmannScalar = GrassmannScalar::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    /// The generator `θ`.
    pub const THETA: GrassmannScalar = GrassmannScalar::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0));

    pub const fn new(body: C64, soul: C64) -> Self {
        Self { body, soul }
    }

    pub fn from_body(body: C64) -> Self {
        Self::new(body, C64::new(0.0, 0.0))
    }

    /// `soul·θ`.
    pub fn pure(soul: C64) -> Self {
        Self::new(C64::new(0.0, 0.0), soul)
    }

    pub fn scale(self, c: C64) -> Self {
        Self::new(c * self.body, c * self.soul)
    }

    pub fn is_pure(&self) -> bool {
        self.body == C64::new(0.0, 0.0)
    }

    /// `max(|body|, |soul|)`.
    pub fn modulus(&self) -> f64 {
        self.body.norm().max(self.soul.norm())
    }
}

impl Add for GrassmannScalar {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.body + rhs.body, self.soul + rhs.soul)
    }
}

impl Sub for GrassmannScalar {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.body - rhs.body, self.soul - rhs.soul)
    }
}

impl Neg for GrassmannScalar {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.body, -self.soul)
    }
}

impl Mul for GrassmannScalar {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        // the θ² term vanishes identically
        Self::new(
            self.body * rhs.body,
            self.body * rhs.soul + self.soul * rhs.body,
        )
    }
}

impl fmt::Display for GrassmannScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})θ", self.body, self.soul)
    }
}

pub fn gmul(x: GrassmannScalar, y: GrassmannScalar) -> GrassmannScalar {
    x * y
}

pub fn gadd(x: GrassmannScalar, y: GrassmannScalar) -> GrassmannScalar {
    x + y
}

pub fn gscale(c: C64, x: GrassmannScalar) -> GrassmannScalar {
    x.scale(c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannKet {
    space: FockSpace,
    amplitudes: Vec<GrassmannScalar>,
}

impl GrassmannKet {
    pub fn new(space: FockSpace, amplitudes: Vec<GrassmannScalar>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(Error::ShapeMismatch {
                left: space.dim(),
                right: amplitudes.len(),
            });
        }
        let finite = |z: C64| z.re.is_finite() && z.im.is_finite();
        if let Some(n) = amplitudes
            .iter()
            .position(|g| !(finite(g.body) && finite(g.soul)))
        {
            return Err(Error::NonFinite(n));
        }
        Ok(Self { space, amplitudes })
    }

    pub fn zeros(space: FockSpace) -> Self {
        Self {
            space,
            amplitudes: vec![GrassmannScalar::ZERO; space.dim()],
        }
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &[GrassmannScalar] {
        &self.amplitudes
    }

    /// Scalar multiple `x·|v⟩`, componentwise Grassmann product.
    pub fn times(&self, x: GrassmannScalar) -> GrassmannKet {
        Self {
            space: self.space,
            amplitudes: self.amplitudes.iter().map(|a| x * *a).collect(),
        }
    }

    /// Largest component modulus, over both body and soul parts.
    pub fn max_modulus(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(GrassmannScalar::modulus)
            .fold(0.0, f64::max)
    }

    pub fn distance(&self, other: &GrassmannKet) -> Result<f64> {
        if self.space != other.space {
            return Err(Error::ShapeMismatch {
                left: self.space.dim(),
                right: other.space.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (*a - *b).modulus())
            .fold(0.0, f64::max))
    }
}

pub fn apply_to_grassmann_ket(op: &Operator, v: &GrassmannKet) -> Result<GrassmannKet> {
    if op.space() != v.space {
        return Err(Error::ShapeMismatch {
            left: op.space().dim(),
            right: v.space.dim(),
        });
    }
    let entries = op.entries();
    let amplitudes = entries
        .rows()
        .into_iter()
        .map(|row| {
            row.iter()
                .zip(&v.amplitudes)
                .fold(GrassmannScalar::ZERO, |acc, (m, a)| acc + a.scale(*m))
        })
        .collect();
    Ok(GrassmannKet {
        space: v.space,
        amplitudes,
    })
}

/// `|ξ⟩ = |0⟩ + ξ|1⟩`.
///
/// The exponential generating the eigenket stops after its linear term since
/// `ξ² = 0`, and the level-1 coefficient `√1/cos^l(0)` equals 1 for every `l`.
pub fn sigma_minus_eigenket(space: FockSpace, xi: GrassmannScalar) -> Result<GrassmannKet> {
    if !xi.is_pure() {
        return Err(Error::NotGrassmann(xi.body));
    }
    let mut ket = GrassmannKet::zeros(space);
    ket.amplitudes[0] = GrassmannScalar::ONE;
    ket.amplitudes[1] = xi;
    Ok(ket)
}

/// Residuals of `σ₋|ξ⟩ = ξ|ξ⟩` and `σ₋²|ξ⟩ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenCheck {
    pub eigen: f64,
    pub nilpotent: f64,
}

pub fn eigen_check(space: FockSpace, l: u32, xi: GrassmannScalar) -> Result<EigenCheck> {
    let params = BosonizationParams::new(l, space)?;
    let sm = sigma_minus(&params);
    let ket = sigma_minus_eigenket(space, xi)?;
    let once = apply_to_grassmann_ket(&sm, &ket)?;
    let twice = apply_to_grassmann_ket(&sm, &once)?;
    Ok(EigenCheck {
        eigen: once.distance(&ket.times(xi))?,
        nilpotent: twice.max_modulus(),
    })
}
