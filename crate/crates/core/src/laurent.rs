//! Sparse multivariate Laurent polynomials over an exact field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Variable names plus coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentRing {
    vars: Vec<String>,
    field: Field,
}

impl LaurentRing {
    pub fn new(vars: Vec<String>, field: Field) -> Arc<LaurentRing> {
        Arc::new(LaurentRing { vars, field })
    }

    /// Ring with variables `{prefix}1 .. {prefix}n`.
    pub fn numbered(prefix: &str, n: usize, field: Field) -> Arc<LaurentRing> {
        LaurentRing::new((1..=n).map(|i| format!("{prefix}{i}")).collect(), field)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// A Laurent polynomial; terms keyed by exponent vector in lexicographic order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    ring: Arc<LaurentRing>,
    terms: BTreeMap<Vec<i64>, Scalar>,
}

impl LaurentPoly {
    pub fn zero(ring: &Arc<LaurentRing>) -> LaurentPoly {
        LaurentPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<LaurentRing>, c: Scalar) -> LaurentPoly {
        LaurentPoly::monomial(ring, vec![0; ring.nvars()], c)
    }

    pub fn one(ring: &Arc<LaurentRing>) -> LaurentPoly {
        LaurentPoly::constant(ring, ring.field.one())
    }

    pub fn monomial(ring: &Arc<LaurentRing>, exps: Vec<i64>, c: Scalar) -> LaurentPoly {
        assert_eq!(exps.len(), ring.nvars(), "exponent vector length");
        let mut p = LaurentPoly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable with index `i`.
    pub fn var(ring: &Arc<LaurentRing>, i: usize) -> LaurentPoly {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        LaurentPoly::monomial(ring, e, ring.field.one())
    }

    /// Builds from `(coefficient, exponents)` pairs, summing repeats.
    pub fn from_terms(ring: &Arc<LaurentRing>, terms: impl IntoIterator<Item = (Scalar, Vec<i64>)>) -> LaurentPoly {
        let mut p = LaurentPoly::zero(ring);
        for (c, e) in terms {
            assert_eq!(e.len(), ring.nvars(), "exponent vector length");
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<i64>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = &*old + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn ring(&self) -> &Arc<LaurentRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i64]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.field().zero())
    }

    fn check_ring(&self, other: &LaurentPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "Laurent ring mismatch: {:?} over {} vs {:?} over {}",
                self.ring.vars, self.ring.field, other.ring.vars, other.ring.field
            )))
        }
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_ring(other)?;
        let mut out = LaurentPoly::zero(&self.ring);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea
                    .iter()
                    .zip(eb)
                    .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                    .collect();
                out.add_term(e, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        (0..k).fold(LaurentPoly::one(&self.ring), |acc, _| &acc * self)
    }

    pub fn scalar_mul(&self, c: &Scalar) -> LaurentPoly {
        let mut out = LaurentPoly::zero(&self.ring);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), &(a * c));
        }
        out
    }

    /// `z_i * dW/dz_i`: each term `c z^e` becomes `e_i c z^e`.
    pub fn log_derivative(&self, i: usize) -> LaurentPoly {
        assert!(i < self.ring.nvars(), "variable index out of range");
        let field = self.field();
        let mut out = LaurentPoly::zero(&self.ring);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &(c * &field.from_i64(e[i])));
        }
        out
    }

    /// Substitutes a point with all coordinates nonzero.
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.ring.nvars() {
            return Err(Error::usage(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.ring.nvars()
            )));
        }
        if let Some(i) = point.iter().position(Scalar::is_zero) {
            return Err(Error::domain(format!(
                "coordinate {} is zero; Laurent monomials need units",
                self.ring.vars[i]
            )));
        }
        let mut acc = self.field().zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                t = &t * &x.powi(k).expect("nonzero coordinate");
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Componentwise minimum of exponents over all terms (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut m = vec![0; self.ring.nvars()];
        for (k, e) in self.terms.keys().enumerate() {
            for (mi, &ei) in m.iter_mut().zip(e) {
                *mi = if k == 0 { ei } else { (*mi).min(ei) };
            }
        }
        m
    }

    /// Multiplies by the monomial `z^shift`.
    pub fn shift(&self, shift: &[i64]) -> LaurentPoly {
        LaurentPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> LaurentJson {
        LaurentJson {
            variables: self.ring.vars.clone(),
            field: Some(self.field().to_string()),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson { coeff: c.to_string(), exps: e.clone() })
                .collect(),
        }
    }

    /// Parses the JSON form; `field` overrides the file's field when given.
    pub fn from_json_str(text: &str, field: Option<Field>) -> Result<LaurentPoly> {
        let raw: LaurentJson = serde_json::from_str(text)?;
        raw.into_poly(field)
    }
}

/// Serialized form: `{"variables": [...], "field": "F7", "terms": [{"coeff": "3", "exps": [1,-2]}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<i64>,
}

impl LaurentJson {
    pub fn into_poly(self, field: Option<Field>) -> Result<LaurentPoly> {
        let field = match (field, &self.field) {
            (Some(f), _) => f,
            (None, Some(s)) => s.parse()?,
            (None, None) => Field::Rationals,
        };
        if self.variables.is_empty() {
            return Err(Error::parse("Laurent polynomial needs at least one variable"));
        }
        let ring = LaurentRing::new(self.variables, field);
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in self.terms {
            if t.exps.len() != ring.nvars() {
                return Err(Error::parse(format!(
                    "term {:?} has {} exponents, expected {}",
                    t.coeff,
                    t.exps.len(),
                    ring.nvars()
                )));
            }
            terms.push((field.parse_scalar(&t.coeff)?, t.exps));
        }
        Ok(LaurentPoly::from_terms(&ring, terms))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for &LaurentPoly {
            type Output = LaurentPoly;
            /// Panics on ring mismatch; use the `try_` form for fallible use.
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

/// Writes `c*x^a*y^b` style monomials; used by several display impls.
pub(crate) fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], exps: &[i64]) -> fmt::Result {
    let mut first = true;
    for (v, &e) in vars.iter().zip(exps) {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    if first {
        write!(f, "1")?;
    }
    Ok(())
}

pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    vars: &[String],
    terms: impl Iterator<Item = (&'a [i64], &'a Scalar)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let s = c.to_string();
        let (neg, mag) = match s.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, s),
        };
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let constant = e.iter().all(|&k| k == 0);
        if constant {
            write!(f, "{mag}")?;
        } else {
            if mag != "1" {
                write!(f, "{mag}*")?;
            }
            write_monomial(f, vars, e)?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    /// Terms in decreasing lexicographic order of exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.ring.vars, self.terms.iter().rev().map(|(e, c)| (e.as_slice(), c)))
    }
}
