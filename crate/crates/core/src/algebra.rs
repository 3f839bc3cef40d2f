//! Octonions and para-octonions as pairs of quaternions.
//!
//! Both algebras live on `H ⊕ H` with the basis
//! `x1..x8 = (1,0), (i,0), (j,0), (k,0), (0,1), (0,i), (0,j), (0,k)`
//! and differ only in the sign of the `conj(p2) q2` term of the doubling
//! product:
//!
//! ```text
//! octonion:       (q1, q2)(p1, p2) = (q1 p1 - conj(p2) q2, p2 q1 + q2 conj(p1))
//! para-octonion:  (q1, q2)(p1, p2) = (q1 p1 + conj(p2) q2, p2 q1 + q2 conj(p1))
//! ```
//!
//! The para-octonion inner product has signature (4,4): `<xi, xj> = δij εi`
//! with `εi = +1` for the first quaternion half and `-1` for the second.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances::NULL_NORM;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    Octonion,
    ParaOctonion,
}

const OCTONION_SIGNS: [f64; 8] = [1.0; 8];
const PARA_SIGNS: [f64; 8] = [1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0];

impl AlgebraKind {
    /// Signs `εi` of the diagonal inner product, indexed from 0.
    pub const fn signs(self) -> &'static [f64; 8] {
        match self {
            AlgebraKind::Octonion => &OCTONION_SIGNS,
            AlgebraKind::ParaOctonion => &PARA_SIGNS,
        }
    }

    pub const fn epsilon(self, index: usize) -> f64 {
        self.signs()[index]
    }

    /// Sign in front of `conj(p2) q2` in the first half of the product.
    const fn doubling_sign(self) -> f64 {
        match self {
            AlgebraKind::Octonion => -1.0,
            AlgebraKind::ParaOctonion => 1.0,
        }
    }

    fn check(self, other: AlgebraKind) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::KindMismatch { left: self, right: other })
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Octonion => f.write_str("octonion"),
            AlgebraKind::ParaOctonion => f.write_str("para-octonion"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Quat([f64; 4]);

impl Quat {
    #[inline]
    fn conj(self) -> Quat {
        let [a, b, c, d] = self.0;
        Quat([a, -b, -c, -d])
    }

    #[inline]
    fn mul(self, rhs: Quat) -> Quat {
        let [a1, b1, c1, d1] = self.0;
        let [a2, b2, c2, d2] = rhs.0;
        Quat([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }

    #[inline]
    fn add_scaled(self, rhs: Quat, s: f64) -> Quat {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += s * r;
        }
        Quat(out)
    }
}

/// An element of the octonions or the para-octonions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperNumber {
    kind: AlgebraKind,
    coeffs: [f64; 8],
}

impl HyperNumber {
    pub const fn new(kind: AlgebraKind, coeffs: [f64; 8]) -> Self {
        HyperNumber { kind, coeffs }
    }

    pub const fn zero(kind: AlgebraKind) -> Self {
        HyperNumber::new(kind, [0.0; 8])
    }

    pub const fn one(kind: AlgebraKind) -> Self {
        HyperNumber::real(kind, 1.0)
    }

    pub const fn real(kind: AlgebraKind, value: f64) -> Self {
        let mut coeffs = [0.0; 8];
        coeffs[0] = value;
        HyperNumber::new(kind, coeffs)
    }

    /// Basis element `x_{index+1}`. Panics if `index >= 8`.
    pub fn basis(kind: AlgebraKind, index: usize) -> Self {
        let mut coeffs = [0.0; 8];
        coeffs[index] = 1.0;
        HyperNumber::new(kind, coeffs)
    }

    pub fn from_halves(kind: AlgebraKind, first: [f64; 4], second: [f64; 4]) -> Self {
        let mut coeffs = [0.0; 8];
        coeffs[..4].copy_from_slice(&first);
        coeffs[4..].copy_from_slice(&second);
        HyperNumber::new(kind, coeffs)
    }

    pub const fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub const fn coeffs(&self) -> &[f64; 8] {
        &self.coeffs
    }

    #[inline]
    fn halves(&self) -> (Quat, Quat) {
        let c = &self.coeffs;
        (Quat([c[0], c[1], c[2], c[3]]), Quat([c[4], c[5], c[6], c[7]]))
    }

    pub fn re(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn conj(&self) -> Self {
        let mut coeffs = self.coeffs;
        for c in &mut coeffs[1..] {
            *c = -*c;
        }
        HyperNumber::new(self.kind, coeffs)
    }

    /// `|a|^2 = <a, a>`, which may be negative or zero for para-octonions.
    pub fn norm_sq(&self) -> f64 {
        self.kind.signs().iter().zip(&self.coeffs).map(|(s, c)| s * c * c).sum()
    }

    pub fn inner(&self, other: &HyperNumber) -> Result<f64> {
        self.kind.check(other.kind)?;
        Ok(self.inner_unchecked(other))
    }

    #[inline]
    pub(crate) fn inner_unchecked(&self, other: &HyperNumber) -> f64 {
        let signs = self.kind.signs();
        (0..8).map(|i| signs[i] * self.coeffs[i] * other.coeffs[i]).sum()
    }

    pub fn try_mul(&self, rhs: &HyperNumber) -> Result<HyperNumber> {
        self.kind.check(rhs.kind)?;
        Ok(self.mul_unchecked(rhs))
    }

    #[inline]
    fn mul_unchecked(&self, rhs: &HyperNumber) -> HyperNumber {
        let (q1, q2) = self.halves();
        let (p1, p2) = rhs.halves();
        let first = q1.mul(p1).add_scaled(p2.conj().mul(q2), self.kind.doubling_sign());
        let second = p2.mul(q1).add_scaled(q2.mul(p1.conj()), 1.0);
        HyperNumber::from_halves(self.kind, first.0, second.0)
    }

    /// `conj(a) / |a|^2`; fails when `| |a|^2 |` is below the null tolerance.
    pub fn inverse(&self) -> Result<HyperNumber> {
        let n = self.norm_sq();
        if n.abs() <= NULL_NORM {
            return Err(Error::NonInvertible { norm_sq: n });
        }
        Ok(self.conj() / n)
    }

    /// `[a, b, c] = a(bc) - (ab)c`.
    pub fn associator(a: &HyperNumber, b: &HyperNumber, c: &HyperNumber) -> Result<HyperNumber> {
        a.kind.check(b.kind)?;
        a.kind.check(c.kind)?;
        Ok(*a * (*b * *c) - (*a * *b) * *c)
    }

    /// `Re[a(bc)]`, well defined because the associator is pure imaginary.
    pub fn re_triple(a: &HyperNumber, b: &HyperNumber, c: &HyperNumber) -> Result<f64> {
        a.kind.check(b.kind)?;
        a.kind.check(c.kind)?;
        Ok((*a * (*b * *c)).re())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn max_abs_diff(&self, other: &HyperNumber) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0.0)
    }
}

impl fmt::Display for HyperNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

// Operators panic on mixed algebras; use `try_mul`/`inner` to get an error instead.

impl Mul for HyperNumber {
    type Output = HyperNumber;

    #[inline]
    fn mul(self, rhs: HyperNumber) -> HyperNumber {
        assert_eq!(self.kind, rhs.kind, "multiplying elements of different algebras");
        self.mul_unchecked(&rhs)
    }
}

impl Add for HyperNumber {
    type Output = HyperNumber;

    #[inline]
    fn add(mut self, rhs: HyperNumber) -> HyperNumber {
        self += rhs;
        self
    }
}

impl AddAssign for HyperNumber {
    #[inline]
    fn add_assign(&mut self, rhs: HyperNumber) {
        assert_eq!(self.kind, rhs.kind, "adding elements of different algebras");
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for HyperNumber {
    type Output = HyperNumber;

    #[inline]
    fn sub(mut self, rhs: HyperNumber) -> HyperNumber {
        self -= rhs;
        self
    }
}

impl SubAssign for HyperNumber {
    #[inline]
    fn sub_assign(&mut self, rhs: HyperNumber) {
        assert_eq!(self.kind, rhs.kind, "subtracting elements of different algebras");
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for HyperNumber {
    type Output = HyperNumber;

    #[inline]
    fn neg(self) -> HyperNumber {
        self * -1.0
    }
}

impl Mul<f64> for HyperNumber {
    type Output = HyperNumber;

    #[inline]
    fn mul(mut self, s: f64) -> HyperNumber {
        for c in &mut self.coeffs {
            *c *= s;
        }
        self
    }
}

impl Mul<HyperNumber> for f64 {
    type Output = HyperNumber;

    #[inline]
    fn mul(self, h: HyperNumber) -> HyperNumber {
        h * self
    }
}

impl Div<f64> for HyperNumber {
    type Output = HyperNumber;

    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, s: f64) -> HyperNumber {
        self * s.recip()
    }
}

/// Cayley-Dickson product; errors when the algebras differ.
pub fn multiply(a: &HyperNumber, b: &HyperNumber) -> Result<HyperNumber> {
    a.try_mul(b)
}

pub fn conjugate(a: &HyperNumber) -> HyperNumber {
    a.conj()
}

pub fn inner_product(a: &HyperNumber, b: &HyperNumber) -> Result<f64> {
    a.inner(b)
}

pub fn norm_sq(a: &HyperNumber) -> f64 {
    a.norm_sq()
}

pub fn real_part(a: &HyperNumber) -> f64 {
    a.re()
}

pub fn inverse(a: &HyperNumber) -> Result<HyperNumber> {
    a.inverse()
}

pub fn associator(a: &HyperNumber, b: &HyperNumber, c: &HyperNumber) -> Result<HyperNumber> {
    HyperNumber::associator(a, b, c)
}

pub fn re_triple(a: &HyperNumber, b: &HyperNumber, c: &HyperNumber) -> Result<f64> {
    HyperNumber::re_triple(a, b, c)
}

/// Products of basis elements: `x_i x_j = sign * x_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureTable {
    pub kind: AlgebraKind,
    pub entries: [[(usize, f64); 8]; 8],
}

impl StructureTable {
    fn generate(kind: AlgebraKind) -> Self {
        let mut entries = [[(0, 0.0); 8]; 8];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let p = HyperNumber::basis(kind, i) * HyperNumber::basis(kind, j);
                let (index, value) = p
                    .coeffs
                    .iter()
                    .enumerate()
                    .find(|(_, c)| **c != 0.0)
                    .map(|(k, c)| (k, *c))
                    .expect("product of basis elements vanished");
                debug_assert_eq!(p.coeffs.iter().filter(|c| **c != 0.0).count(), 1);
                *entry = (index, value);
            }
        }
        StructureTable { kind, entries }
    }

    /// Multiplies through the table instead of the quaternion halves.
    pub fn multiply(&self, a: &HyperNumber, b: &HyperNumber) -> HyperNumber {
        let mut out = [0.0; 8];
        for (i, ai) in a.coeffs.iter().enumerate() {
            for (j, bj) in b.coeffs.iter().enumerate() {
                let (k, s) = self.entries[i][j];
                out[k] += s * ai * bj;
            }
        }
        HyperNumber::new(self.kind, out)
    }
}

/// The basis product table of `kind`, generated once from the doubling product.
pub fn structure_table(kind: AlgebraKind) -> &'static StructureTable {
    static OCT: OnceLock<StructureTable> = OnceLock::new();
    static PARA: OnceLock<StructureTable> = OnceLock::new();
    match kind {
        AlgebraKind::Octonion => OCT.get_or_init(|| StructureTable::generate(kind)),
        AlgebraKind::ParaOctonion => PARA.get_or_init(|| StructureTable::generate(kind)),
    }
}
