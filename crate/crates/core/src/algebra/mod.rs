//! Finite-dimensional commutative algebras given by structure constants.

pub mod decompose;
pub mod linear;

pub use decompose::{bezout_idempotents, local_decompose, madic_profile, radical_char_p, BezoutSplit, LocalFactor};
pub use linear::Matrix;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar, UniPoly};
use crate::DEFAULT_SEED;

/// Number of basis triples checked for associativity at construction.
const ASSOC_SAMPLES: usize = 256;

/// Algebra on `F^dim`; `left[i]` is the matrix of multiplication by basis element `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    field: Field,
    labels: Vec<String>,
    left: Vec<Matrix>,
    unit: Vec<Scalar>,
    coords: Vec<(String, Vec<Scalar>)>,
}

impl FiniteAlgebra {
    /// Checks that `unit` is a two-sided identity and spot-checks associativity.
    pub fn new(field: Field, labels: Vec<String>, left: Vec<Matrix>, unit: Vec<Scalar>) -> Result<FiniteAlgebra> {
        let dim = labels.len();
        if left.len() != dim || unit.len() != dim {
            return Err(Error::usage("structure constants do not match the basis size"));
        }
        if left.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::usage("multiplication matrices must be dim x dim"));
        }
        let alg = FiniteAlgebra { field, labels, left, unit, coords: Vec::new() };
        let id = Matrix::identity(field, dim);
        if alg.mult_matrix(&alg.unit) != id {
            return Err(Error::invalid("unit is not a left identity"));
        }
        for j in 0..dim {
            if alg.mul(&alg.basis_vector(j), &alg.unit) != alg.basis_vector(j) {
                return Err(Error::invalid(format!("unit is not a right identity on {}", alg.labels[j])));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        let triples: Vec<(usize, usize, usize)> = if dim * dim * dim <= ASSOC_SAMPLES {
            (0..dim).flat_map(|i| (0..dim).flat_map(move |j| (0..dim).map(move |k| (i, j, k)))).collect()
        } else {
            (0..ASSOC_SAMPLES)
                .map(|_| (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim)))
                .collect()
        };
        for (i, j, k) in triples {
            let (a, b, c) = (alg.basis_vector(i), alg.basis_vector(j), alg.basis_vector(k));
            if alg.mul(&alg.mul(&a, &b), &c) != alg.mul(&a, &alg.mul(&b, &c)) {
                return Err(Error::invalid(format!(
                    "associativity fails on ({}, {}, {})",
                    alg.labels[i], alg.labels[j], alg.labels[k]
                )));
            }
        }
        Ok(alg)
    }

    /// Attaches named coordinate elements (e.g. the classes of the ring variables).
    pub fn with_coords(mut self, coords: Vec<(String, Vec<Scalar>)>) -> FiniteAlgebra {
        self.coords = coords;
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn coords(&self) -> &[(String, Vec<Scalar>)] {
        &self.coords
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    /// Matrix of multiplication by `a`.
    pub fn mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim(), self.dim());
        for (c, l) in a.iter().zip(&self.left) {
            if !c.is_zero() {
                m = m.add(&l.scale(c));
            }
        }
        m
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        for (c, l) in a.iter().zip(&self.left) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(l.apply(b)) {
                *o = &*o + &(c * &x);
            }
        }
        out
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
        a.iter().map(|x| c * x).collect()
    }

    pub fn pow(&self, a: &[Scalar], mut k: u64) -> Vec<Scalar> {
        let mut base = a.to_vec();
        let mut acc = self.unit.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// `f(a)` with `unit` standing in for the constant term (pass the algebra unit or an idempotent).
    pub fn eval_poly_with_unit(&self, f: &UniPoly, a: &[Scalar], unit: &[Scalar]) -> Vec<Scalar> {
        f.coeffs().iter().rev().fold(self.zero(), |acc, c| {
            let prod = self.mul(&acc, a);
            self.add(&prod, &self.scale(c, unit))
        })
    }

    pub fn eval_poly(&self, f: &UniPoly, a: &[Scalar]) -> Vec<Scalar> {
        self.eval_poly_with_unit(f, a, &self.unit.clone())
    }

    /// Minimal polynomial of `a` inside the unital subalgebra whose unit is `unit`.
    pub fn element_minpoly(&self, a: &[Scalar], unit: &[Scalar]) -> UniPoly {
        let dim = self.dim();
        let mut powers = vec![unit.to_vec()];
        loop {
            let m = Matrix::from_columns(self.field, dim, &powers);
            if let Some(v) = m.kernel().first() {
                return UniPoly::new(self.field, v.clone()).monic();
            }
            let next = self.mul(powers.last().expect("nonempty"), a);
            powers.push(next);
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| {
            (i + 1..self.dim()).all(|j| {
                let (a, b) = (self.basis_vector(i), self.basis_vector(j));
                self.mul(&a, &b) == self.mul(&b, &a)
            })
        })
    }

    pub fn is_zero(&self, a: &[Scalar]) -> bool {
        a.iter().all(Scalar::is_zero)
    }

    /// Basis of the subspace `e * A`.
    pub fn ideal_span(&self, e: &[Scalar]) -> Vec<Vec<Scalar>> {
        self.mult_matrix(e).image()
    }

    /// Matrix of the linear map `x -> x^p` (additive in characteristic `p` for commutative algebras).
    pub fn frobenius_matrix(&self) -> Result<Matrix> {
        let p = match self.field {
            Field::Prime(p) => p,
            Field::Rationals => return Err(Error::usage("Frobenius needs a prime field")),
        };
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.pow(&self.basis_vector(j), p)).collect();
        Ok(Matrix::from_columns(self.field, self.dim(), &cols))
    }

    /// Renders an element as a combination of basis labels.
    pub fn format_element(&self, a: &[Scalar]) -> String {
        let mut parts = Vec::new();
        for (c, l) in a.iter().zip(&self.labels) {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            let body = match (mag.as_str(), l.as_str()) {
                (m, "1") => m.to_string(),
                ("1", l) => l.to_string(),
                (m, l) => format!("{m}*{l}"),
            };
            parts.push((neg, body));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (neg, body)) in parts.into_iter().enumerate() {
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

/// `k[t]/(f)` with basis `1, t, .., t^(d-1)`; handy for tests and small examples.
pub fn univariate_quotient(f: &UniPoly, var: &str) -> Result<FiniteAlgebra> {
    let field = f.field();
    let d = f.degree().filter(|&d| d > 0).ok_or_else(|| Error::usage("need a nonconstant modulus"))?;
    let f = f.monic();
    let labels: Vec<String> = (0..d)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        })
        .collect();
    let t = UniPoly::x(field);
    let mut left = Vec::with_capacity(d);
    for i in 0..d {
        let cols: Vec<Vec<Scalar>> = (0..d)
            .map(|j| {
                let r = t.pow(i + j).rem(&f);
                (0..d).map(|k| r.coeff(k)).collect()
            })
            .collect();
        left.push(Matrix::from_columns(field, d, &cols));
    }
    let mut unit = vec![field.zero(); d];
    unit[0] = field.one();
    let mut tv = vec![field.zero(); d];
    if d > 1 {
        tv[1] = field.one();
    } else {
        tv = vec![-&f.coeff(0)];
    }
    Ok(FiniteAlgebra::new(field, labels, left, unit)?.with_coords(vec![(var.to_string(), tv)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_quotient_multiplies() {
        let f7 = Field::Prime(7);
        let a = univariate_quotient(&UniPoly::from_i64s(f7, &[-1, 0, 0, 1]), "z").unwrap();
        let z = a.basis_vector(1);
        assert_eq!(a.pow(&z, 4), z);
        assert_eq!(a.pow(&z, 3), a.unit().to_vec());
        assert!(a.is_commutative());
        assert_eq!(a.element_minpoly(&z, a.unit()), UniPoly::from_i64s(f7, &[-1, 0, 0, 1]));
        assert_eq!(a.format_element(&a.add(&z, &a.scale(&f7.from_i64(-2), a.unit()))), "5 + z");
    }

    #[test]
    fn rejects_broken_unit() {
        let q = Field::Rationals;
        let l = vec![Matrix::identity(q, 1)];
        assert!(FiniteAlgebra::new(q, vec!["1".into()], l, vec![q.from_i64(2)]).is_err());
    }

    #[test]
    fn frobenius_needs_prime_field() {
        let a = univariate_quotient(&UniPoly::from_i64s(Field::Rationals, &[-1, 0, 1]), "z").unwrap();
        assert!(matches!(a.frobenius_matrix(), Err(Error::Usage(_))));
    }
}
