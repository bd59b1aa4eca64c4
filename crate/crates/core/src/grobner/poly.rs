//! Polynomials in ordinary (non-Laurent) variables with a runtime monomial order.

use std::cmp::Ordering;
use std::fmt;

use crate::scalar::{Field, Scalar};

/// Monomial orders. `Block(k)`: degrevlex on the first `k` variables, ties broken by
/// degrevlex on the rest (an elimination order for the first block).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    Block(usize),
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Block(k) => {
                degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
            }
        }
    }
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_div(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Terms sorted strictly decreasing in `order`; no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Vec<u32>, Scalar)>,
}

impl Poly {
    pub fn zero(field: Field, nvars: usize, order: MonomialOrder) -> Poly {
        Poly { field, nvars, order, terms: Vec::new() }
    }

    pub fn from_terms(
        field: Field,
        nvars: usize,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
    ) -> Poly {
        let mut ts: Vec<(Vec<u32>, Scalar)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        assert!(ts.iter().all(|(m, _)| m.len() == nvars), "monomial length");
        ts.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Vec<u32>, Scalar)> = Vec::with_capacity(ts.len());
        for (m, c) in ts {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { field, nvars, order, terms: out }
    }

    pub fn monomial(field: Field, nvars: usize, order: MonomialOrder, m: Vec<u32>, c: Scalar) -> Poly {
        Poly::from_terms(field, nvars, order, [(m, c)])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Vec<u32>, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &[u32] {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Scalar {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero lead");
                self.scale_term(&vec![0; self.nvars], &inv)
            }
            None => self.clone(),
        }
    }

    pub fn with_order(&self, order: MonomialOrder) -> Poly {
        Poly::from_terms(self.field, self.nvars, order, self.terms.clone())
    }

    /// `c * m * self`.
    pub fn scale_term(&self, m: &[u32], c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars, self.order);
        }
        Poly {
            field: self.field,
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(t, a)| (mono_mul(t, m), a * c)).collect(),
        }
    }

    /// `self - c * m * g`, merging sorted term lists.
    pub fn sub_scaled(&self, g: &Poly, m: &[u32], c: &Scalar) -> Poly {
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut gi = g.terms.iter().map(|(t, a)| (mono_mul(t, m), a * c)).peekable();
        while i < self.terms.len() || gi.peek().is_some() {
            let take = match (self.terms.get(i), gi.peek()) {
                (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match take {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (t, b) = gi.next().expect("peeked");
                    out.push((t, -b));
                }
                Ordering::Equal => {
                    let (t, b) = gi.next().expect("peeked");
                    let s = &self.terms[i].1 - &b;
                    if !s.is_zero() {
                        out.push((t, s));
                    }
                    i += 1;
                }
            }
        }
        Poly { field: self.field, nvars: self.nvars, order, terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.sub_scaled(other, &vec![0; self.nvars], &-self.field.one())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.sub_scaled(other, &vec![0; self.nvars], &self.field.one())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut acc = Poly::zero(self.field, self.nvars, self.order);
        for (m, c) in &other.terms {
            acc = acc.sub_scaled(self, m, &-c);
        }
        acc
    }

    /// Fully reduced remainder modulo `basis` (any list of nonzero polynomials).
    pub fn reduce(&self, basis: &[Poly]) -> Poly {
        let mut p = self.clone();
        let mut rem: Vec<(Vec<u32>, Scalar)> = Vec::new();
        while let Some((m, c)) = p.terms.first().cloned() {
            match basis.iter().find(|g| divides(g.lm(), &m)) {
                Some(g) => {
                    let q = &c * &g.lc().inv().expect("nonzero lead");
                    p = p.sub_scaled(g, &mono_div(&m, g.lm()), &q);
                }
                None => {
                    rem.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        Poly { field: self.field, nvars: self.nvars, order: self.order, terms: rem }
    }

    pub fn display_with(&self, vars: &[String]) -> String {
        struct D<'a>(&'a Poly, &'a [String]);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let exps: Vec<(Vec<i64>, &Scalar)> = self
                    .0
                    .terms
                    .iter()
                    .map(|(m, c)| (m.iter().map(|&x| x as i64).collect(), c))
                    .collect();
                crate::laurent::write_terms(f, self.1, exps.iter().map(|(m, c)| (m.as_slice(), *c)))
            }
        }
        D(self, vars).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_examples() {
        let o = MonomialOrder::DegRevLex;
        // x > y > z; xz < y^2 in degrevlex
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 1, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 0, 3], &[1, 1, 0]), Ordering::Greater);
        let l = MonomialOrder::Lex;
        assert_eq!(l.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
        let b = MonomialOrder::Block(1);
        assert_eq!(b.cmp(&[1, 0], &[0, 9]), Ordering::Greater);
    }

    #[test]
    fn arithmetic_and_reduction() {
        let f = Field::Rationals;
        let o = MonomialOrder::DegRevLex;
        let p = |ts: &[(&[u32], i64)]| Poly::from_terms(f, 2, o, ts.iter().map(|(m, c)| (m.to_vec(), f.from_i64(*c))));
        let a = p(&[(&[1, 0], 1), (&[0, 1], 1)]);
        let sq = a.mul(&a);
        assert_eq!(sq, p(&[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]));
        let r = sq.reduce(&[p(&[(&[1, 0], 1), (&[0, 0], -1)])]);
        assert_eq!(r, p(&[(&[0, 2], 1), (&[0, 1], 2), (&[0, 0], 1)]));
        assert!(sq.sub(&sq).is_zero());
    }
}
