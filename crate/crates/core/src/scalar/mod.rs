//! Exact coefficient fields: the rationals with arbitrary-precision integers and
//! prime fields `F_p` for word-sized `p`.

mod unipoly;

pub use unipoly::{RationalRoots, UniPoly};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for prime fields; products of residues fit in `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

/// A coefficient field. Cheap to copy; carried by every container.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

/// An element of a [`Field`]. Residues are always stored reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    /// Characteristic of the field; zero for the rationals.
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn is_prime_field(self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Mod { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor_u64(p);
                Scalar::Mod { value: r, modulus: p }
            }
        }
    }

    /// Image of a rational number; fails over `F_p` when `p` divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Rat(q.clone())),
            Field::Prime(_) => {
                let den = self.from_bigint(q.denom());
                let inv = den.inv().ok_or_else(|| {
                    Error::domain(format!("denominator of {q} vanishes in {self}"))
                })?;
                Ok(&self.from_bigint(q.numer()) * &inv)
            }
        }
    }

    /// Parses a decimal integer or `a/b` fraction into the field.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let q = parse_rational(text)?;
        self.from_rational(&q)
    }

    /// Every element of a prime field, in increasing residue order.
    pub fn elements(self) -> Vec<Scalar> {
        match self {
            Field::Rationals => Vec::new(),
            Field::Prime(p) => (0..p).map(|v| Scalar::Mod { value: v, modulus: p }).collect(),
        }
    }

    pub fn contains(self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rationals, Scalar::Rat(_)) => true,
            (Field::Prime(p), Scalar::Mod { modulus, .. }) => p == *modulus,
            _ => false,
        }
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        r.to_u64().expect("residue fits in u64")
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::parse(format!("invalid rational literal {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(text).map_err(|_| bad())?)),
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        let p = s
            .strip_prefix('F')
            .and_then(|rest| rest.parse::<u64>().ok())
            .ok_or_else(|| Error::parse(format!("unknown field {s:?}; expected Q or F<p>")))?;
        Field::prime(p)
    }
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(q) => Scalar::Rat(q.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power allowing negative exponents on units.
    pub fn powi(&self, e: i64) -> Option<Scalar> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.inv().map(|i| i.pow(e.unsigned_abs()))
        }
    }

    /// Residue as an integer in `0..p`, for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }

    /// Total order used only for deterministic sorting of reports.
    pub fn sort_key(&self, other: &Scalar) -> std::cmp::Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Mod { value: a, .. }, Scalar::Mod { value: b, .. }) => a.cmp(b),
            (Scalar::Rat(_), Scalar::Mod { .. }) => std::cmp::Ordering::Less,
            (Scalar::Mod { .. }, Scalar::Rat(_)) => std::cmp::Ordering::Greater,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod { value: (a + b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod { value: (a + p - b) % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod { value: a * b % p, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Sign helper: `(-1)^e` in the given field.
pub fn sign(field: Field, e: i64) -> Scalar {
    if e.rem_euclid(2) == 0 {
        field.one()
    } else {
        -field.one()
    }
}
