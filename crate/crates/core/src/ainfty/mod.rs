//! Finite-dimensional `Z/2`-graded A-infinity algebras: relations, opposites, cohomology,
//! and (in submodules) bimodules and Hochschild cochains.
//!
//! Inputs are always listed in written order `a_k, .., a_1`, so `a_1` is the last entry.
//! Operations above the largest stored arity are zero.

pub mod bimodule;
pub mod corpus;
pub mod hochschild;
pub mod json;
pub mod report;

use std::collections::BTreeMap;

use crate::algebra::linear::{in_span, span_basis};
use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::scalar::{sign, Field, Scalar};

/// One slot of a multilinear operation: a basis element or an arbitrary vector.
#[derive(Clone, Copy, Debug)]
pub enum Slot<'a> {
    B(usize),
    V(&'a [Scalar]),
}

/// Calls `f(tuple, coefficient)` for every basis tuple in the multilinear expansion of `slots`.
pub(crate) fn expand(field: Field, slots: &[Slot], f: &mut dyn FnMut(&[usize], &Scalar)) {
    fn rec(slots: &[Slot], acc: &mut Vec<usize>, c: &Scalar, f: &mut dyn FnMut(&[usize], &Scalar)) {
        match slots.first() {
            None => f(acc, c),
            Some(Slot::B(i)) => {
                acc.push(*i);
                rec(&slots[1..], acc, c, f);
                acc.pop();
            }
            Some(Slot::V(v)) => {
                for (i, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc.push(i);
                        rec(&slots[1..], acc, &(c * x), f);
                        acc.pop();
                    }
                }
            }
        }
    }
    rec(slots, &mut Vec::with_capacity(slots.len()), &field.one(), f);
}

pub(crate) fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

/// `sum (|a| - 1)` over the given degrees, as a parity.
pub fn maltese(degrees: impl IntoIterator<Item = u8>) -> u8 {
    degrees.into_iter().fold(0, |acc, d| acc ^ (d ^ 1))
}

/// `sum_{i<j} (|c_i| - 1)(|c_j| - 1)`, as a parity.
pub fn triangle(degrees: &[u8]) -> u8 {
    let odd = degrees.iter().filter(|&&d| d ^ 1 == 1).count();
    ((odd * odd.saturating_sub(1) / 2) % 2) as u8
}

/// All tuples in `0..d` of length `r`, in lexicographic order.
pub fn tuples(d: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Operations `mu^k` stored sparsely as `inputs -> output vector`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfty {
    pub name: String,
    field: Field,
    degrees: Vec<u8>,
    unit: Option<usize>,
    ops: BTreeMap<Vec<usize>, Vec<Scalar>>,
}

/// Nonzero entries of an A-infinity relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub inputs: Vec<usize>,
    pub value: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub up_to_arity: usize,
    pub checked: usize,
    pub residuals: Vec<Residual>,
}

impl RelationReport {
    pub fn ok(&self) -> bool {
        self.residuals.is_empty()
    }
}

impl AInfty {
    pub fn new(name: &str, field: Field, degrees: Vec<u8>, unit: Option<usize>) -> Result<AInfty> {
        if degrees.iter().any(|&d| d > 1) {
            return Err(Error::invalid("degrees must be 0 or 1"));
        }
        if unit.is_some_and(|u| u >= degrees.len()) {
            return Err(Error::invalid("unit index out of range"));
        }
        Ok(AInfty { name: name.to_string(), field, degrees, unit, ops: BTreeMap::new() })
    }

    /// Sets `mu(inputs)`, checking that the output has degree `sum |a| + 2 - k`.
    pub fn set_op(&mut self, inputs: Vec<usize>, output: Vec<Scalar>) -> Result<()> {
        let d = self.dim();
        if inputs.is_empty() || inputs.iter().any(|&i| i >= d) || output.len() != d {
            return Err(Error::invalid(format!("operation entry {inputs:?} has the wrong shape")));
        }
        let want = self.op_degree(&inputs);
        if let Some(i) = output.iter().enumerate().position(|(i, c)| !c.is_zero() && self.degrees[i] != want) {
            return Err(Error::invalid(format!(
                "mu{inputs:?} has a component on basis element {i} of the wrong degree"
            )));
        }
        if output.iter().all(Scalar::is_zero) {
            self.ops.remove(&inputs);
        } else {
            self.ops.insert(inputs, output);
        }
        Ok(())
    }

    /// A dg algebra as an A-infinity algebra: `mu^1(a) = (-1)^|a| da`, `mu^2(a2, a1) = (-1)^|a1| a2 a1`.
    pub fn from_dga(
        name: &str,
        field: Field,
        degrees: Vec<u8>,
        unit: Option<usize>,
        differential: &dyn Fn(usize) -> Vec<Scalar>,
        product: &dyn Fn(usize, usize) -> Vec<Scalar>,
    ) -> Result<AInfty> {
        let mut a = AInfty::new(name, field, degrees, unit)?;
        let n = a.dim();
        for i in 0..n {
            let s = sign(field, a.degrees[i] as i64);
            a.set_op(vec![i], differential(i).iter().map(|x| &s * x).collect())?;
            for j in 0..n {
                let s = sign(field, a.degrees[j] as i64);
                a.set_op(vec![i, j], product(i, j).iter().map(|x| &s * x).collect())?;
            }
        }
        Ok(a)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u8] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> u8 {
        self.degrees[i]
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn max_arity(&self) -> usize {
        self.ops.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<Scalar>)> {
        self.ops.iter()
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    /// Degree of `mu(inputs)`.
    pub fn op_degree(&self, inputs: &[usize]) -> u8 {
        let s: usize = inputs.iter().map(|&i| self.degrees[i] as usize).sum();
        ((s + inputs.len()) % 2) as u8
    }

    /// Degree of a homogeneous vector, `None` for zero or mixed vectors.
    pub fn vector_degree(&self, v: &[Scalar]) -> Option<u8> {
        let mut ds = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| self.degrees[i]);
        let first = ds.next()?;
        ds.all(|d| d == first).then_some(first)
    }

    pub fn mu(&self, inputs: &[usize]) -> Option<&Vec<Scalar>> {
        self.ops.get(inputs)
    }

    /// `mu` on slots, expanded multilinearly.
    pub fn mu_slots(&self, slots: &[Slot]) -> Vec<Scalar> {
        let mut out = self.zero();
        if slots.len() > self.max_arity() || slots.is_empty() {
            return out;
        }
        expand(self.field, slots, &mut |t, c| {
            if let Some(v) = self.ops.get(t) {
                axpy(&mut out, c, v);
            }
        });
        out
    }

    pub fn mu1_matrix(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|i| self.mu(&[i]).cloned().unwrap_or_else(|| self.zero())).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }

    /// `sum_{i,j} (-1)^{maltese_i} mu(a_k, .., mu^j(a_{i+j}, .., a_{i+1}), a_i, .., a_1)`.
    pub fn relation(&self, w: &[usize]) -> Vec<Scalar> {
        let k = w.len();
        let mut out = self.zero();
        for i in 0..k {
            let s = sign(self.field, maltese(w[k - i..].iter().map(|&t| self.degrees[t])) as i64);
            for j in 1..=k - i {
                let lo = k - i - j;
                let Some(inner) = self.mu(&w[lo..k - i]) else { continue };
                let mut slots: Vec<Slot> = w[..lo].iter().map(|&t| Slot::B(t)).collect();
                slots.push(Slot::V(inner));
                slots.extend(w[k - i..].iter().map(|&t| Slot::B(t)));
                axpy(&mut out, &s, &self.mu_slots(&slots));
            }
        }
        out
    }

    /// Checks the A-infinity relations on every basis tuple of length `1..=up_to`.
    pub fn check_relations(&self, up_to: usize) -> RelationReport {
        let mut residuals = Vec::new();
        let mut checked = 0;
        for k in 1..=up_to {
            for w in tuples(self.dim(), k) {
                checked += 1;
                let value = self.relation(&w);
                if value.iter().any(|c| !c.is_zero()) {
                    residuals.push(Residual { inputs: w, value });
                }
            }
        }
        RelationReport { up_to_arity: up_to, checked, residuals }
    }

    /// `mu_op^l(c_l, .., c_1) = (-1)^{triangle + l - 1} mu^l(c_1, .., c_l)`.
    pub fn opposite(&self) -> AInfty {
        let ops = self
            .ops
            .iter()
            .map(|(w, v)| {
                let rev: Vec<usize> = w.iter().rev().copied().collect();
                let ds: Vec<u8> = w.iter().map(|&t| self.degrees[t]).collect();
                let s = sign(self.field, (triangle(&ds) as usize + w.len() - 1) as i64);
                (rev, v.iter().map(|x| &s * x).collect())
            })
            .collect();
        AInfty { name: format!("{}^op", self.name), ops, ..self.clone() }
    }

    /// Cohomology of `mu^1` with the induced product `[c2][c1] = (-1)^|c1| [mu^2(c2, c1)]`.
    pub fn cohomology(&self) -> Result<Cohomology> {
        let f = self.field;
        let n = self.dim();
        let d = self.mu1_matrix();
        if !d.mul(&d).is_zero() {
            return Err(Error::domain(format!("{}: mu1 does not square to zero", self.name)));
        }
        let parity_part = |v: &[Scalar], q: u8| -> Vec<Scalar> {
            v.iter().enumerate().map(|(i, c)| if self.degrees[i] == q { c.clone() } else { f.zero() }).collect()
        };
        let kernel = d.kernel();
        let image = d.image();
        let mut reps = Vec::new();
        let mut degrees = Vec::new();
        let mut boundaries = Vec::new();
        for q in 0..2u8 {
            let z: Vec<Vec<Scalar>> = kernel.iter().map(|v| parity_part(v, q)).collect();
            let z = span_basis(f, n, &z);
            let b = span_basis(f, n, &image.iter().map(|v| parity_part(v, q)).collect::<Vec<_>>());
            let mut have = b.clone();
            for v in z {
                if !in_span(f, n, &have, &v) {
                    have.push(v.clone());
                    reps.push(v);
                    degrees.push(q);
                }
            }
            boundaries.extend(b);
        }
        let mut cols = reps.clone();
        cols.extend(boundaries.iter().cloned());
        let solver = Matrix::from_columns(f, n, &cols);
        let h = reps.len();
        let coords = |v: &[Scalar]| -> Result<Vec<Scalar>> {
            let x = solver.solve(v).ok_or_else(|| Error::anomaly("product of cocycles is not a cocycle"))?;
            Ok(x[..h].to_vec())
        };
        let mut product = vec![vec![Vec::new(); h]; h];
        for i in 0..h {
            for j in 0..h {
                let m = self.mu_slots(&[Slot::V(&reps[i]), Slot::V(&reps[j])]);
                let s = sign(f, degrees[j] as i64);
                product[i][j] = coords(&m.iter().map(|x| &s * x).collect::<Vec<_>>())?;
            }
        }
        let coh = Cohomology { field: f, reps, degrees, product };
        Ok(coh)
    }
}

/// `H(A)` on chosen cocycle representatives; `product[i][j]` are the coordinates of `[h_i][h_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub field: Field,
    pub reps: Vec<Vec<Scalar>>,
    pub degrees: Vec<u8>,
    pub product: Vec<Vec<Vec<Scalar>>>,
}

impl Cohomology {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                if !a.is_zero() && !b.is_zero() {
                    axpy(&mut out, &(a * b), &self.product[i][j]);
                }
            }
        }
        out
    }

    pub fn is_associative(&self) -> bool {
        let h = self.dim();
        let e = |i: usize| {
            let mut v = vec![self.field.zero(); h];
            v[i] = self.field.one();
            v
        };
        (0..h).all(|i| {
            (0..h).all(|j| {
                (0..h).all(|k| self.mul(&self.mul(&e(i), &e(j)), &e(k)) == self.mul(&e(i), &self.mul(&e(j), &e(k))))
            })
        })
    }

    /// Whether `other` is the graded opposite of `self`: `other[i][j] = (-1)^{|h_i||h_j|} self[j][i]`
    /// (same representatives assumed).
    pub fn is_graded_opposite_of(&self, other: &Cohomology) -> bool {
        if self.reps != other.reps {
            return false;
        }
        let h = self.dim();
        (0..h).all(|i| {
            (0..h).all(|j| {
                let s = sign(self.field, (self.degrees[i] * self.degrees[j]) as i64);
                other.product[i][j] == self.product[j][i].iter().map(|x| &s * x).collect::<Vec<_>>()
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::corpus::*;
    use super::*;

    #[test]
    fn corpus_satisfies_relations() {
        for a in all() {
            let r = a.check_relations(4);
            assert!(r.ok(), "{}: {:?}", a.name, r.residuals.first());
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn corrupted_product_fails_at_arity_three() {
        let mut a = upper_triangular();
        // make e22 * e22 = 0 (was e22): associativity breaks but arity 1 and 2 still hold
        a.set_op(vec![2, 2], a.zero()).unwrap();
        let r = a.check_relations(4);
        assert!(!r.ok());
        assert!(r.residuals.iter().all(|x| x.inputs.len() == 3));
        assert!(a.check_relations(2).ok());
    }

    #[test]
    fn opposite_is_an_involution_and_fixes_graded_commutative() {
        for a in all() {
            let op = a.opposite();
            assert!(op.check_relations(4).ok(), "{}", a.name);
            assert_eq!(op.opposite().ops, a.ops);
        }
        for a in [exterior1(), exterior2(), cdga()] {
            assert_eq!(a.opposite().ops, a.ops, "{}", a.name);
        }
        let t = upper_triangular();
        assert_ne!(t.opposite().ops, t.ops);
    }

    #[test]
    fn cohomology_examples() {
        for a in [exterior1(), exterior2(), upper_triangular()] {
            let h = a.cohomology().unwrap();
            assert_eq!(h.dim(), a.dim());
            assert!(h.is_associative());
        }
        let h = cdga().cohomology().unwrap();
        assert_eq!(h.dim(), 1);
        assert_eq!(h.degrees, vec![0]);

        let q = Field::Rationals;
        let mut iso = AInfty::new("k->k", q, vec![0, 1], None).unwrap();
        iso.set_op(vec![0], vec![q.zero(), q.one()]).unwrap();
        assert_eq!(iso.cohomology().unwrap().dim(), 0);

        let mut bad = AInfty::new("bad", q, vec![0, 1], None).unwrap();
        bad.set_op(vec![0], vec![q.zero(), q.one()]).unwrap();
        bad.set_op(vec![1], vec![q.one(), q.zero()]).unwrap();
        assert!(matches!(bad.cohomology(), Err(Error::Domain(_))));
    }

    #[test]
    fn cohomology_of_opposite_is_graded_opposite() {
        for a in all() {
            let h = a.cohomology().unwrap();
            let hop = a.opposite().cohomology().unwrap();
            assert!(h.is_graded_opposite_of(&hop), "{}", a.name);
        }
        // the upper-triangular algebra is not commutative, so the check has content
        let h = upper_triangular().cohomology().unwrap();
        assert!(!h.is_graded_opposite_of(&h));
    }

    #[test]
    fn wrong_degree_is_rejected() {
        let q = Field::Rationals;
        let mut a = AInfty::new("x", q, vec![0, 1], Some(0)).unwrap();
        assert!(a.set_op(vec![1, 1], vec![q.zero(), q.one()]).is_err());
    }

    #[test]
    fn sign_helpers() {
        assert_eq!(maltese([0, 0, 1]), 0);
        assert_eq!(maltese([0]), 1);
        assert_eq!(triangle(&[0, 0]), 1);
        assert_eq!(triangle(&[0, 0, 0]), 1);
        assert_eq!(triangle(&[0, 0, 0, 0]), 0);
        assert_eq!(triangle(&[1, 0]), 0);
    }
}
