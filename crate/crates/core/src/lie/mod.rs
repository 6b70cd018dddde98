//! Parity Lie algebras and the unitary factorization.
//!
//! Everything except [`unitary`] is exact over the rationals.

mod closure;
mod matrix;
mod monomial;
mod unitary;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::format_rational;
use crate::error::{Error, Result};

pub use closure::{
    bracket_closure, closure_report, generator_set, is_bracket_closed, p_formula, so11_generator, so2_generator,
    ClosureReport, LieBasis, MAX_CLOSURE_DEGREE,
};
pub use matrix::RationalMatrix;
pub use monomial::{factor_monomial, MonomialFactor};
pub use unitary::{
    odo_decompose, random_orthogonal, random_unitary, ComplexMatrix, DecompositionResult, Tolerances,
    MAX_UNITARY_DEGREE,
};

/// The three commutative 2×2 matrix algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraKind {
    /// `diag(x, y)`
    A,
    /// `[[x, y], [y, x]]`
    B,
    /// `[[x, y], [-y, x]]`
    C,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraKind::A => "A",
            AlgebraKind::B => "B",
            AlgebraKind::C => "C",
        })
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(AlgebraKind::A),
            "B" | "b" => Ok(AlgebraKind::B),
            "C" | "c" => Ok(AlgebraKind::C),
            other => Err(Error::parse("algebra kind", format!("unknown kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoByTwo {
    kind: AlgebraKind,
    x: BigRational,
    y: BigRational,
}

impl TwoByTwo {
    pub fn new(kind: AlgebraKind, x: BigRational, y: BigRational) -> Self {
        TwoByTwo { kind, x, y }
    }

    pub fn from_ratios(kind: AlgebraKind, x: (i64, i64), y: (i64, i64)) -> Self {
        let r = |(p, q): (i64, i64)| BigRational::new(p.into(), q.into());
        TwoByTwo::new(kind, r(x), r(y))
    }

    /// `(1, 0)` for B and C; A needs `(1, 1)` since its elements are
    /// `diag(x, y)`.
    pub fn identity(kind: AlgebraKind) -> Self {
        let y = match kind {
            AlgebraKind::A => BigRational::one(),
            AlgebraKind::B | AlgebraKind::C => BigRational::zero(),
        };
        TwoByTwo::new(kind, BigRational::one(), y)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    fn same_kind(&self, other: &TwoByTwo) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch {
                left: self.kind,
                right: other.kind,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TwoByTwo) -> Result<TwoByTwo> {
        self.same_kind(other)?;
        Ok(TwoByTwo::new(self.kind, &self.x + &other.x, &self.y + &other.y))
    }

    pub fn mul(&self, other: &TwoByTwo) -> Result<TwoByTwo> {
        self.same_kind(other)?;
        let (x, y, u, v) = (&self.x, &self.y, &other.x, &other.y);
        let (nx, ny) = match self.kind {
            AlgebraKind::A => (x * u, y * v),
            AlgebraKind::B => (x * u + y * v, x * v + y * u),
            AlgebraKind::C => (x * u - y * v, x * v + y * u),
        };
        Ok(TwoByTwo::new(self.kind, nx, ny))
    }

    pub fn det(&self) -> BigRational {
        let (x, y) = (&self.x, &self.y);
        match self.kind {
            AlgebraKind::A => x * y,
            AlgebraKind::B => x * x - y * y,
            AlgebraKind::C => x * x + y * y,
        }
    }

    /// Multiplicative inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<TwoByTwo> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        Some(match self.kind {
            AlgebraKind::A => TwoByTwo::new(self.kind, self.x.recip(), self.y.recip()),
            AlgebraKind::B | AlgebraKind::C => TwoByTwo::new(self.kind, &self.x / &d, -&self.y / &d),
        })
    }

    /// Membership in `det = 1` for B (`SO(1,1)`) and C (`SO(2)`).
    pub fn det_kernel_member(&self) -> Result<bool> {
        if self.kind == AlgebraKind::A {
            return Err(Error::UnsupportedKind(AlgebraKind::A));
        }
        Ok(self.det().is_one())
    }

    pub fn to_matrix(&self) -> RationalMatrix {
        let (x, y) = (self.x.clone(), self.y.clone());
        let z = BigRational::zero();
        let rows = match self.kind {
            AlgebraKind::A => vec![vec![x, z.clone()], vec![z, y]],
            AlgebraKind::B => vec![vec![x.clone(), y.clone()], vec![y, x]],
            AlgebraKind::C => vec![vec![x.clone(), y.clone()], vec![-y, x]],
        };
        RationalMatrix::new(rows).expect("square")
    }
}

impl fmt::Display for TwoByTwo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(x={}, y={})", self.kind, format_rational(&self.x), format_rational(&self.y))
    }
}
