//! Exact arithmetic in GF(2^e) for 1 <= e <= 8.
//!
//! Elements are bit vectors in the polynomial basis: bit `i` of the stored
//! integer is the coefficient of `t^i`. Addition is XOR and needs no field
//! context, so [`Gf`] implements `Add` directly; everything else goes through
//! a [`Field`], which owns precomputed multiplication, inverse, square-root and
//! trace tables.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 8;

/// Default irreducible moduli, indexed by degree (leading bit included).
const DEFAULT_MODULI: [u16; 9] = [0, 0b11, 0b111, 0b1011, 0x13, 0x25, 0x43, 0x83, 0x11d];

/// An element of GF(2^e), stored as its coefficient bit vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Gf(pub u8);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn bits(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

// characteristic 2: addition is XOR
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Gf {
    type Output = Gf;

    #[inline]
    fn add(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Gf {
    #[inline]
    fn add_assign(&mut self, rhs: Gf) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Extension degree plus the irreducible modulus defining the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    degree: u32,
    modulus: u16,
}

impl FieldSpec {
    /// Validates `modulus` (leading bit included) as an irreducible polynomial of
    /// degree `degree` over GF(2).
    pub fn new(degree: u32, modulus: u16) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(usage!("extension degree {degree} outside 1..={MAX_DEGREE}"));
        }
        if poly_degree(modulus as u32) != degree as i32 {
            return Err(usage!("modulus {modulus:#x} has degree {}, expected {degree}", poly_degree(modulus as u32)));
        }
        if !is_irreducible(modulus as u32) {
            return Err(usage!("modulus {modulus:#x} is reducible over GF(2)"));
        }
        Ok(FieldSpec { degree, modulus })
    }

    pub fn with_default_modulus(degree: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(usage!("extension degree {degree} outside 1..={MAX_DEGREE}"));
        }
        FieldSpec::new(degree, DEFAULT_MODULI[degree as usize])
    }

    /// Field of order `q` (a power of two), optionally with a custom modulus.
    pub fn for_order(q: usize, modulus: Option<u16>) -> Result<Self> {
        if q < 2 || !q.is_power_of_two() {
            return Err(usage!("q = {q} is not a power of 2 with q >= 2"));
        }
        let degree = q.trailing_zeros();
        match modulus {
            Some(m) => FieldSpec::new(degree, m),
            None => FieldSpec::with_default_modulus(degree),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u16 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        1 << self.degree
    }
}

fn poly_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b);
    while poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

/// Trial division by every polynomial of degree 1..=deg/2.
pub(crate) fn is_irreducible(p: u32) -> bool {
    let d = poly_degree(p);
    if d < 1 {
        return false;
    }
    let half = d / 2;
    (2u32..(1 << (half + 1))).all(|t| poly_degree(t) > half || poly_rem(p, t) != 0)
}

fn mul_reduce(a: u8, b: u8, spec: &FieldSpec) -> u8 {
    let mut r: u32 = 0;
    for i in 0..8 {
        if (b >> i) & 1 == 1 {
            r ^= (a as u32) << i;
        }
    }
    let e = spec.degree as i32;
    for bit in (e..16).rev() {
        if (r >> bit) & 1 == 1 {
            r ^= (spec.modulus as u32) << (bit - e);
        }
    }
    r as u8
}

/// A concrete field GF(2^e) with lookup tables.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    mul: Box<[u8]>,
    inv: Box<[u8]>,
    sqrt: Box<[u8]>,
    trace: Box<[u8]>,
    primitive: Gf,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let q = spec.order();
        let e = spec.degree;
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                mul[(a << e) | b] = mul_reduce(a as u8, b as u8, &spec);
            }
        }
        let mut inv = vec![0u8; q];
        let mut sqrt = vec![0u8; q];
        for a in 1..q {
            for b in 1..q {
                if mul[(a << e) | b] == 1 {
                    inv[a] = b as u8;
                    break;
                }
            }
        }
        for a in 0..q {
            sqrt[mul[(a << e) | a] as usize] = a as u8;
        }
        let mut trace = vec![0u8; q];
        for (a, t) in trace.iter_mut().enumerate() {
            let mut acc = 0u8;
            let mut x = a as u8;
            for _ in 0..e {
                acc ^= x;
                x = mul[((x as usize) << e) | x as usize];
            }
            *t = acc;
        }
        let order_of = |g: u8| {
            let mut x = g;
            let mut n = 1usize;
            while x != 1 {
                x = mul[((x as usize) << e) | g as usize];
                n += 1;
            }
            n
        };
        let primitive = (1..q).map(|g| g as u8).find(|&g| order_of(g) == q - 1).map(Gf).unwrap_or(Gf::ONE);
        Field {
            spec,
            mul: mul.into_boxed_slice(),
            inv: inv.into_boxed_slice(),
            sqrt: sqrt.into_boxed_slice(),
            trace: trace.into_boxed_slice(),
            primitive,
        }
    }

    /// GF(q) with the default modulus.
    pub fn with_order(q: usize) -> Result<Self> {
        Ok(Field::new(FieldSpec::for_order(q, None)?))
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    #[inline]
    pub fn order(&self) -> usize {
        1 << self.spec.degree
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.spec.degree
    }

    /// All elements in increasing integer order.
    pub fn elements(&self) -> impl Iterator<Item = Gf> + Clone {
        (0..self.order()).map(|v| Gf(v as u8))
    }

    /// Nonzero elements in increasing integer order.
    pub fn nonzero(&self) -> impl Iterator<Item = Gf> + Clone {
        (1..self.order()).map(|v| Gf(v as u8))
    }

    /// Parses a raw integer into an element of this field.
    pub fn element(&self, v: u64) -> Result<Gf> {
        if v >= self.order() as u64 {
            return Err(usage!("{v} is not an element of GF({})", self.order()));
        }
        Ok(Gf(v as u8))
    }

    /// Addition with a range check on both operands.
    pub fn checked_add(&self, a: Gf, b: Gf) -> Result<Gf> {
        self.element(a.0 as u64)?;
        self.element(b.0 as u64)?;
        Ok(a + b)
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        Gf(self.mul[((a.0 as usize) << self.spec.degree) | b.0 as usize])
    }

    #[inline]
    pub fn square(&self, a: Gf) -> Gf {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        if a.is_zero() {
            return Err(domain!("inverse of zero"));
        }
        Ok(Gf(self.inv[a.0 as usize]))
    }

    /// Inverse of an element the caller knows to be nonzero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: Gf) -> Gf {
        debug_assert!(!a.is_zero());
        Gf(self.inv[a.0 as usize])
    }

    pub fn div(&self, a: Gf, b: Gf) -> Result<Gf> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Gf, mut n: u64) -> Gf {
        let mut base = a;
        let mut acc = Gf::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            n >>= 1;
        }
        acc
    }

    /// Absolute trace a + a^2 + ... + a^(2^(e-1)); always 0 or 1.
    #[inline]
    pub fn trace(&self, a: Gf) -> u8 {
        self.trace[a.0 as usize]
    }

    /// The unique square root, a^(2^(e-1)).
    #[inline]
    pub fn sqrt(&self, a: Gf) -> Gf {
        Gf(self.sqrt[a.0 as usize])
    }

    /// A generator of the multiplicative group (smallest such integer).
    pub fn primitive_element(&self) -> Gf {
        self.primitive
    }

    /// Root of x^2 + x = c, if any. The two roots differ by 1; the smaller
    /// bit vector is returned.
    pub fn solve_artin_schreier(&self, c: Gf) -> Option<Gf> {
        if self.trace(c) == 1 {
            return None;
        }
        self.elements().find(|&x| self.square(x) + x == c)
    }

    /// Evaluates `sum coeffs[i] * t^i`.
    pub fn eval_poly(&self, coeffs: &[Gf], t: Gf) -> Gf {
        coeffs.iter().rev().fold(Gf::ZERO, |acc, &c| self.mul(acc, t) + c)
    }

    /// All roots in the field of a nonzero polynomial of degree <= 3, by
    /// exhaustive evaluation. `coeffs[i]` is the coefficient of `t^i`.
    pub fn univariate_roots(&self, coeffs: &[Gf]) -> Result<Vec<Gf>> {
        let len = coeffs.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
        if len == 0 {
            return Err(usage!("root finding on the zero polynomial"));
        }
        if len > 4 {
            return Err(usage!("polynomial of degree {} exceeds 3", len - 1));
        }
        Ok(self.elements().filter(|&t| self.eval_poly(&coeffs[..len], t).is_zero()).collect())
    }
}
