//! Hochschild cochains `phi = (phi^0, .., phi^L)` with values in a bimodule, truncated at
//! length `L`.
//!
//! Output `r` of the differential and of the product only reads components of length `<= r`,
//! so every computed component is exact; `exact_upto` records the last one.

use super::bimodule::{apply_hom, Bimodule};
use super::{axpy, expand, maltese, tuples, AInfty, Slot};
use crate::error::{Error, Result};
use crate::scalar::{sign, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: u8,
    pub source_dim: usize,
    pub target_dim: usize,
    /// `components[r][index(w)]` is `phi^r(w)` for the written-order tuple `w`.
    pub components: Vec<Vec<Vec<Scalar>>>,
    pub exact_upto: usize,
}

/// Mixed-radix position of a tuple in [`tuples`] order.
pub fn index(d: usize, w: &[usize]) -> usize {
    w.iter().fold(0, |acc, &i| acc * d + i)
}

impl Cochain {
    pub fn zero(field: Field, degree: u8, source_dim: usize, target_dim: usize, length: usize) -> Cochain {
        let components = (0..=length)
            .map(|r| vec![vec![field.zero(); target_dim]; source_dim.pow(r as u32)])
            .collect();
        Cochain { degree, source_dim, target_dim, components, exact_upto: length }
    }

    /// The length-0 cochain with `phi^0 = v`.
    pub fn constant(field: Field, degree: u8, source_dim: usize, v: Vec<Scalar>, length: usize) -> Cochain {
        let mut c = Cochain::zero(field, degree, source_dim, v.len(), length);
        c.components[0][0] = v;
        c
    }

    /// The operations of `a` as a degree-0 cochain with values in `a`.
    pub fn from_operations(a: &AInfty, length: usize) -> Cochain {
        let mut c = Cochain::zero(a.field(), 0, a.dim(), a.dim(), length);
        for (w, v) in a.entries() {
            if w.len() <= length {
                c.components[w.len()][index(a.dim(), w)] = v.clone();
            }
        }
        c
    }

    pub fn length(&self) -> usize {
        self.components.len() - 1
    }

    pub fn get(&self, w: &[usize]) -> &[Scalar] {
        &self.components[w.len()][index(self.source_dim, w)]
    }

    pub fn set(&mut self, w: &[usize], v: Vec<Scalar>) {
        let i = index(self.source_dim, w);
        self.components[w.len()][i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().flatten().all(Scalar::is_zero)
    }

    /// `phi^n` evaluated on slots, or zero beyond the stored length.
    pub fn eval(&self, field: Field, slots: &[Slot]) -> Vec<Scalar> {
        let mut out = vec![field.zero(); self.target_dim];
        if slots.len() > self.length() {
            return out;
        }
        expand(field, slots, &mut |t, c| axpy(&mut out, c, self.get(t)));
        out
    }

    /// First component (by length, then tuple) where `self` and `other` differ, if any.
    pub fn first_difference(&self, other: &Cochain) -> Option<(usize, Vec<usize>)> {
        let upto = self.exact_upto.min(other.exact_upto);
        (0..=upto).find_map(|r| {
            tuples(self.source_dim, r).into_iter().find(|w| self.get(w) != other.get(w)).map(|w| (r, w))
        })
    }

    /// Checks that `phi^r(w)` has degree `|phi| + maltese(w)` for every entry.
    pub fn check_degrees(&self, source: &[u8], target: &[u8]) -> Result<()> {
        for r in 0..=self.length() {
            for w in tuples(self.source_dim, r) {
                let want = self.degree ^ maltese(w.iter().map(|&i| source[i]));
                if let Some(i) = self.get(&w).iter().enumerate().position(|(i, c)| !c.is_zero() && target[i] != want) {
                    return Err(Error::invalid(format!(
                        "cochain component {w:?} has a term on {i} of the wrong degree"
                    )));
                }
            }
        }
        Ok(())
    }

    fn scaled(&self, s: &Scalar) -> Cochain {
        let mut c = self.clone();
        c.components.iter_mut().flatten().flatten().for_each(|x| *x = s * &*x);
        c
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        let mut c = self.clone();
        let l = self.length().min(other.length());
        c.components.truncate(l + 1);
        for r in 0..=l {
            for (x, y) in c.components[r].iter_mut().zip(&other.components[r]) {
                for (p, q) in x.iter_mut().zip(y) {
                    *p = &*p - q;
                }
            }
        }
        c.exact_upto = self.exact_upto.min(other.exact_upto);
        c
    }
}

fn block_maltese(a: &AInfty, w: &[usize]) -> i64 {
    maltese(w.iter().map(|&i| a.degree(i))) as i64
}

fn mu_with(a: &AInfty, w: &[usize], s: usize, e: usize, v: &[Scalar]) -> Vec<Scalar> {
    let mut slots: Vec<Slot> = w[..s].iter().map(|&i| Slot::B(i)).collect();
    slots.push(Slot::V(v));
    slots.extend(w[e..].iter().map(|&i| Slot::B(i)));
    a.mu_slots(&slots)
}

/// The internal half of the differential: `sum (-1)^{|phi| + maltese_i} phi(.., mu^j(..), a_i, .., a_1)`.
fn insert_mu(a: &AInfty, phi: &Cochain, w: &[usize], out: &mut [Scalar]) {
    let f = a.field();
    let r = w.len();
    for s in 0..r {
        for e in s + 1..=r {
            let Some(inner) = a.mu(&w[s..e]) else { continue };
            let sg = sign(f, phi.degree as i64 + block_maltese(a, &w[e..]));
            let mut slots: Vec<Slot> = w[..s].iter().map(|&i| Slot::B(i)).collect();
            slots.push(Slot::V(inner));
            slots.extend(w[e..].iter().map(|&i| Slot::B(i)));
            axpy(out, &sg, &phi.eval(f, &slots));
        }
    }
}

/// `mu^1_CC(phi)` with values in the bimodule `p`:
/// `sum (-1)^{|phi| maltese_l + 1} mu_P(.., phi(..), b_l, .., b_1) + sum (-1)^{|phi| + maltese_i} phi(.., mu(..), a_i, .., a_1)`.
pub fn hochschild_diff(p: &dyn Bimodule, phi: &Cochain) -> Cochain {
    let a = p.algebra();
    let f = a.field();
    let mut out = Cochain::zero(f, phi.degree ^ 1, a.dim(), p.dim(), phi.length());
    out.exact_upto = phi.exact_upto;
    for r in 0..=phi.length() {
        for w in tuples(a.dim(), r) {
            let mut acc = vec![f.zero(); p.dim()];
            for s in 0..=r {
                for e in s..=r {
                    let v = phi.get(&w[s..e]);
                    if v.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let sg = sign(f, phi.degree as i64 * block_maltese(a, &w[e..]) + 1);
                    axpy(&mut acc, &sg, &p.act(&w[..s], v, &w[e..]));
                }
            }
            insert_mu(a, phi, &w, &mut acc);
            out.set(&w, acc);
        }
    }
    out
}

/// The diagonal case written directly:
/// `sum (-1)^{(|phi| - 1) maltese_i} mu(.., phi(..), a_i, .., a_1) + sum (-1)^{|phi| + maltese_i} phi(.., mu(..), a_i, .., a_1)`.
pub fn hochschild_diff_diagonal(a: &AInfty, phi: &Cochain) -> Cochain {
    let f = a.field();
    let mut out = Cochain::zero(f, phi.degree ^ 1, a.dim(), a.dim(), phi.length());
    out.exact_upto = phi.exact_upto;
    for r in 0..=phi.length() {
        for w in tuples(a.dim(), r) {
            let mut acc = a.zero();
            for s in 0..=r {
                for e in s..=r {
                    let v = phi.get(&w[s..e]);
                    if v.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let sg = sign(f, (phi.degree as i64 + 1) * block_maltese(a, &w[e..]));
                    axpy(&mut acc, &sg, &mu_with(a, &w, s, e, v));
                }
            }
            insert_mu(a, phi, &w, &mut acc);
            out.set(&w, acc);
        }
    }
    out
}

/// `mu^2_CC(psi, phi) = sum (-1)^{(|psi| - 1) maltese_l + (|phi| - 1) maltese_i} mu(.., psi(..), .., phi(..), a_i, .., a_1)`,
/// where `maltese_l` runs over every input to the right of the `psi` block.
pub fn hochschild_prod(a: &AInfty, psi: &Cochain, phi: &Cochain) -> Cochain {
    let f = a.field();
    let d = a.dim();
    let length = psi.length().min(phi.length());
    let mut out = Cochain::zero(f, psi.degree ^ phi.degree, d, d, length);
    out.exact_upto = psi.exact_upto.min(phi.exact_upto).min(length);
    for r in 0..=length {
        for w in tuples(d, r) {
            let mut acc = a.zero();
            for s1 in 0..=r {
                for e1 in s1..=r {
                    let u = psi.get(&w[s1..e1]);
                    if u.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    for s2 in e1..=r {
                        for e2 in s2..=r {
                            let v = phi.get(&w[s2..e2]);
                            if v.iter().all(Scalar::is_zero) {
                                continue;
                            }
                            let e = (psi.degree as i64 + 1) * block_maltese(a, &w[e1..])
                                + (phi.degree as i64 + 1) * block_maltese(a, &w[e2..]);
                            let mut slots: Vec<Slot> = w[..s1].iter().map(|&i| Slot::B(i)).collect();
                            slots.push(Slot::V(u));
                            slots.extend(w[e1..s2].iter().map(|&i| Slot::B(i)));
                            slots.push(Slot::V(v));
                            slots.extend(w[e2..].iter().map(|&i| Slot::B(i)));
                            axpy(&mut acc, &sign(f, e), &a.mu_slots(&slots));
                        }
                    }
                }
            }
            out.set(&w, acc);
        }
    }
    out
}

/// `theta(c)(a_k, .., a_1)(x) = (-1)^{|c|(|x| - 1)} mu(a_k, .., a_1, x, c)`, a cochain with values in
/// `hom(A, A)` of degree `|c|`.
pub fn theta(a: &AInfty, c: &[Scalar], length: usize) -> Result<Cochain> {
    let f = a.field();
    let d = a.dim();
    let deg = match a.vector_degree(c) {
        Some(q) => q,
        None if c.iter().all(Scalar::is_zero) => 0,
        None => return Err(Error::invalid("theta needs a homogeneous element")),
    };
    let mut out = Cochain::zero(f, deg, d, d * d, length);
    for r in 0..=length {
        for w in tuples(d, r) {
            let mut zeta = vec![f.zero(); d * d];
            for j in 0..d {
                let mut slots: Vec<Slot> = w.iter().map(|&i| Slot::B(i)).collect();
                slots.push(Slot::B(j));
                slots.push(Slot::V(c));
                let s = sign(f, deg as i64 * (a.degree(j) as i64 + 1));
                for (i, x) in a.mu_slots(&slots).iter().enumerate() {
                    zeta[i * d + j] = &s * x;
                }
            }
            out.set(&w, zeta);
        }
    }
    Ok(out)
}

/// `Pi(phi) = (-1)^{|phi|} phi^0(e)` for a cochain with values in `hom(A, A)`.
pub fn pi_map(a: &AInfty, phi: &Cochain) -> Result<Vec<Scalar>> {
    let e = a.unit().ok_or_else(|| Error::usage(format!("{} has no designated unit", a.name)))?;
    let d = a.dim();
    if phi.target_dim != d * d {
        return Err(Error::usage("Pi needs a cochain with values in hom(A, A)"));
    }
    let v = apply_hom(a.field(), d, phi.get(&[]), &a.basis_vector(e));
    let s = sign(a.field(), phi.degree as i64);
    Ok(v.iter().map(|x| &s * x).collect())
}

/// `theta(mu^1 c) - mu^1_CC(theta(c))` in the endomorphism bimodule.
pub fn theta_chain_residual(a: &AInfty, p: &dyn Bimodule, c: &[Scalar], length: usize) -> Result<Cochain> {
    let t = theta(a, c, length)?;
    let dc = a.mu_slots(&[Slot::V(c)]);
    let lhs = if dc.iter().all(Scalar::is_zero) {
        Cochain::zero(a.field(), t.degree ^ 1, a.dim(), a.dim() * a.dim(), length)
    } else {
        theta(a, &dc, length)?
    };
    Ok(lhs.sub(&hochschild_diff(p, &t)))
}

impl Cochain {
    pub fn negate_if(&self, field: Field, odd: bool) -> Cochain {
        if odd {
            self.scaled(&sign(field, 1))
        } else {
            self.clone()
        }
    }
}
