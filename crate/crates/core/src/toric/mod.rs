//! Fan combinatorics in the rank-4 lattice `N = Z^4`.
//!
//! Everything here is exact and generic over the integer type; the crate
//! root exposes `i64` aliases. Scope is deliberately small: cones have at
//! most [`MAX_RAYS`] rays and faces are found by brute-force enumeration.

use std::fmt;
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use thiserror::Error;

mod cone;
mod demo;
mod fan;
pub mod linalg;

pub use cone::{Cone, HRep, HilbertBasis, SmoothnessCertificate};
pub use demo::{candidate_rays, resolve_demo, DemoReport, DemoStep, OrderingAttempt};
pub use fan::{parse_fan_script, Fan, FanScript, SupportCheck};

/// Lattice rank.
pub const RANK: usize = 4;
/// Largest number of rays accepted on a single cone.
pub const MAX_RAYS: usize = 8;
/// Largest number of lattice points scanned by the Hilbert basis search.
pub const MAX_BOX_POINTS: u64 = 1 << 22;

/// Integer types usable as lattice coordinates.
pub trait LatticeScalar:
    Clone + fmt::Debug + fmt::Display + Ord + Hash + Integer + Signed + FromPrimitive + ToPrimitive
{
}

impl<T> LatticeScalar for T where
    T: Clone
        + fmt::Debug
        + fmt::Display
        + Ord
        + Hash
        + Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("scope cap exceeded: {0}")]
    ScopeCap(String),
    #[error("ray {0} is not primitive")]
    NotPrimitive(String),
    #[error("ray {0} is zero")]
    ZeroRay(String),
    #[error("rays {0} and {1} are proportional")]
    Proportional(String, String),
    #[error("cone is not strongly convex")]
    NotStronglyConvex,
    #[error("cone is not full-dimensional")]
    NotFullDimensional,
    #[error("vector {0} lies outside the support of the fan")]
    OutsideSupport(String),
    #[error("maximal cones {0} and {1} do not meet along a common face")]
    NotAFan(usize, usize),
    #[error("no ordering of the candidate star subdivisions yields a smooth fan")]
    NoResolvingOrder,
    #[error("line {line}, column {column}: {message}")]
    Script {
        line: usize,
        column: usize,
        message: String,
    },
}

/// A point of `Z^4`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector<T> {
    coords: [T; RANK],
}

impl<T: LatticeScalar> LatticeVector<T> {
    pub fn new(coords: [T; RANK]) -> Self {
        Self { coords }
    }

    /// Panics if an entry does not fit in `T`.
    pub fn from_i64(coords: [i64; RANK]) -> Self {
        Self {
            coords: coords.map(|c| T::from_i64(c).expect("coordinate fits the scalar type")),
        }
    }

    pub fn zero() -> Self {
        Self::new(std::array::from_fn(|_| T::zero()))
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Self::zero();
        v.coords[i] = T::one();
        v
    }

    pub fn coords(&self) -> &[T; RANK] {
        &self.coords
    }

    pub fn to_vec(&self) -> Vec<T> {
        self.coords.to_vec()
    }

    pub fn from_slice(v: &[T]) -> Self {
        assert_eq!(v.len(), RANK, "lattice vectors have {RANK} coordinates");
        Self::new(std::array::from_fn(|i| v[i].clone()))
    }

    pub fn dot(&self, other: &Self) -> T {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Gcd of the coordinates.
    pub fn content(&self) -> T {
        self.coords.iter().fold(T::zero(), |acc, c| acc.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn primitive(&self) -> Self {
        Self::from_slice(&linalg::make_primitive(self.to_vec(), false))
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(std::array::from_fn(|i| self.coords[i].clone() * k.clone()))
    }

    /// Whether `other` is a positive multiple of `self` (or vice versa).
    pub fn same_direction(&self, other: &Self) -> bool {
        !self.is_zero() && self.primitive() == other.primitive()
    }
}

impl<T: LatticeScalar> std::ops::Add for &LatticeVector<T> {
    type Output = LatticeVector<T>;

    fn add(self, rhs: Self) -> LatticeVector<T> {
        LatticeVector::new(std::array::from_fn(|i| {
            self.coords[i].clone() + rhs.coords[i].clone()
        }))
    }
}

impl<T: LatticeScalar> std::ops::Sub for &LatticeVector<T> {
    type Output = LatticeVector<T>;

    fn sub(self, rhs: Self) -> LatticeVector<T> {
        LatticeVector::new(std::array::from_fn(|i| {
            self.coords[i].clone() - rhs.coords[i].clone()
        }))
    }
}

impl<T: LatticeScalar> std::ops::Neg for &LatticeVector<T> {
    type Output = LatticeVector<T>;

    fn neg(self) -> LatticeVector<T> {
        LatticeVector::new(std::array::from_fn(|i| -self.coords[i].clone()))
    }
}

impl<T: fmt::Display> fmt::Display for LatticeVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.coords[0], self.coords[1], self.coords[2], self.coords[3]
        )
    }
}

impl<T: fmt::Debug> fmt::Debug for LatticeVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:?},{:?},{:?},{:?})",
            self.coords[0], self.coords[1], self.coords[2], self.coords[3]
        )
    }
}

/// The cone of the `uv = xyz` singularity.
pub fn xyz_cone<T: LatticeScalar>() -> Cone<T> {
    Cone::new(
        [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [1, 0, 1, 0],
            [0, 1, 1, 0],
            [1, 0, 0, 1],
            [0, 1, 0, 1],
        ]
        .into_iter()
        .map(LatticeVector::from_i64)
        .collect(),
    )
    .expect("the uv = xyz cone is strongly convex")
}

/// The positive orthant.
pub fn orthant<T: LatticeScalar>() -> Cone<T> {
    Cone::new((0..RANK).map(LatticeVector::unit).collect()).expect("orthant is a valid cone")
}

pub fn dual_generators<T: LatticeScalar>(c: &Cone<T>) -> Vec<LatticeVector<T>> {
    c.dual_generators()
}

pub fn hilbert_basis<T: LatticeScalar>(c: &Cone<T>) -> Result<HilbertBasis<T>, ToricError> {
    c.hilbert_basis()
}

pub fn singular_faces<T: LatticeScalar>(c: &Cone<T>) -> Vec<Cone<T>> {
    c.singular_faces()
}

pub fn star_subdivide<T: LatticeScalar>(
    f: &Fan<T>,
    rho: &LatticeVector<T>,
) -> Result<Fan<T>, ToricError> {
    f.star_subdivide(rho)
}
