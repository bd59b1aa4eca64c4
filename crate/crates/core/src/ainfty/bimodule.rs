//! Left modules and bimodules over an A-infinity algebra.
//!
//! Bimodule operations `mu^{k|1|l}(a_k, .., a_1, p, b_l, .., b_1)` take the left inputs, the
//! module element and the right inputs in written order.

use super::{maltese, tuples, AInfty, RelationReport, Residual, Slot};
use crate::error::Result;
use crate::scalar::{sign, Field, Scalar};

pub trait LeftModule {
    fn degrees(&self) -> &[u8];
    /// `mu_M^{k|1}(a_k, .., a_1, m)`, including `k = 0`.
    fn act(&self, a: &[usize], m: &[Scalar]) -> Vec<Scalar>;
}

/// `A` over itself with `mu_M = -mu_A`.
pub struct Regular<'a>(pub &'a AInfty);

impl LeftModule for Regular<'_> {
    fn degrees(&self) -> &[u8] {
        self.0.degrees()
    }

    fn act(&self, a: &[usize], m: &[Scalar]) -> Vec<Scalar> {
        let mut slots: Vec<Slot> = a.iter().map(|&i| Slot::B(i)).collect();
        slots.push(Slot::V(m));
        self.0.mu_slots(&slots).iter().map(|x| -x).collect()
    }
}

pub trait Bimodule {
    fn algebra(&self) -> &AInfty;
    fn degrees(&self) -> &[u8];
    fn act(&self, left: &[usize], p: &[Scalar], right: &[usize]) -> Vec<Scalar>;

    fn dim(&self) -> usize {
        self.degrees().len()
    }

    fn field(&self) -> Field {
        self.algebra().field()
    }
}

/// `A` over itself: `mu_P(a, p, b) = (-1)^{maltese(b) + 1} mu(a, p, b)`.
pub struct Diagonal<'a>(pub &'a AInfty);

impl Bimodule for Diagonal<'_> {
    fn algebra(&self) -> &AInfty {
        self.0
    }

    fn degrees(&self) -> &[u8] {
        self.0.degrees()
    }

    fn act(&self, left: &[usize], p: &[Scalar], right: &[usize]) -> Vec<Scalar> {
        let a = self.0;
        let mut slots: Vec<Slot> = left.iter().map(|&i| Slot::B(i)).collect();
        slots.push(Slot::V(p));
        slots.extend(right.iter().map(|&i| Slot::B(i)));
        let s = sign(a.field(), maltese(right.iter().map(|&i| a.degree(i))) as i64 + 1);
        a.mu_slots(&slots).iter().map(|x| &s * x).collect()
    }
}

/// Linear maps `M -> N`; basis `E_ij : m_j -> n_i` at index `i * dim M + j`.
pub struct HomBimodule<'a> {
    algebra: &'a AInfty,
    m: &'a dyn LeftModule,
    n: &'a dyn LeftModule,
    degrees: Vec<u8>,
}

impl<'a> HomBimodule<'a> {
    pub fn new(algebra: &'a AInfty, m: &'a dyn LeftModule, n: &'a dyn LeftModule) -> HomBimodule<'a> {
        let degrees = n.degrees().iter().flat_map(|&i| m.degrees().iter().map(move |&j| i ^ j)).collect();
        HomBimodule { algebra, m, n, degrees }
    }
}

/// `zeta(x)` for `zeta` stored as an `n x m` matrix in row-major order.
pub fn apply_hom(field: Field, dm: usize, zeta: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
    let dn = zeta.len() / dm.max(1);
    (0..dn)
        .map(|i| {
            let mut s = field.zero();
            for (j, xj) in x.iter().enumerate() {
                let z = &zeta[i * dm + j];
                if !z.is_zero() && !xj.is_zero() {
                    s = &s + &(z * xj);
                }
            }
            s
        })
        .collect()
}

/// Builds the map whose value on the `j`th basis element is `column(j)`.
fn hom_from_columns(field: Field, dn: usize, dm: usize, column: &mut dyn FnMut(usize) -> Vec<Scalar>) -> Vec<Scalar> {
    let mut out = vec![field.zero(); dn * dm];
    for j in 0..dm {
        for (i, v) in column(j).into_iter().enumerate() {
            out[i * dm + j] = v;
        }
    }
    out
}

pub(crate) fn basis(field: Field, d: usize, j: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); d];
    v[j] = field.one();
    v
}

impl Bimodule for HomBimodule<'_> {
    fn algebra(&self) -> &AInfty {
        self.algebra
    }

    fn degrees(&self) -> &[u8] {
        &self.degrees
    }

    fn act(&self, left: &[usize], zeta: &[Scalar], right: &[usize]) -> Vec<Scalar> {
        let f = self.field();
        let (dm, dn) = (self.m.degrees().len(), self.n.degrees().len());
        let md = self.m.degrees();
        let ap = |z: &[Scalar], x: &[Scalar]| apply_hom(f, dm, z, x);
        match (left.len(), right.len()) {
            (0, 0) => hom_from_columns(f, dn, dm, &mut |j| {
                let mj = basis(f, dm, j);
                let s = sign(f, md[j] as i64);
                let a = self.n.act(&[], &ap(zeta, &mj));
                let b = ap(zeta, &self.m.act(&[], &mj));
                a.iter().zip(&b).map(|(x, y)| &s * &(x - y)).collect()
            }),
            (_, 0) => hom_from_columns(f, dn, dm, &mut |j| {
                let s = sign(f, md[j] as i64);
                self.n.act(left, &ap(zeta, &basis(f, dm, j))).iter().map(|x| &s * x).collect()
            }),
            (0, _) => hom_from_columns(f, dn, dm, &mut |j| {
                let s = sign(f, md[j] as i64 + 1);
                ap(zeta, &self.m.act(right, &basis(f, dm, j))).iter().map(|x| &s * x).collect()
            }),
            _ => vec![f.zero(); dn * dm],
        }
    }
}

/// `hom(A, A)` written out directly:
/// `mu^{0|0} = (-1)^{|x|+1}(mu^1(zeta x) - zeta(mu^1 x))`, `mu^{k|0} = (-1)^{|x|+1} mu(a, zeta x)`,
/// `mu^{0|l} = (-1)^{|x|} zeta(mu(a, x))`.
pub struct EndBimodule<'a> {
    algebra: &'a AInfty,
    degrees: Vec<u8>,
}

impl<'a> EndBimodule<'a> {
    pub fn new(algebra: &'a AInfty) -> EndBimodule<'a> {
        let d = algebra.degrees();
        EndBimodule { algebra, degrees: d.iter().flat_map(|&i| d.iter().map(move |&j| i ^ j)).collect() }
    }
}

impl Bimodule for EndBimodule<'_> {
    fn algebra(&self) -> &AInfty {
        self.algebra
    }

    fn degrees(&self) -> &[u8] {
        &self.degrees
    }

    fn act(&self, left: &[usize], zeta: &[Scalar], right: &[usize]) -> Vec<Scalar> {
        let a = self.algebra;
        let f = a.field();
        let d = a.dim();
        let mu = |pre: &[usize], x: &[Scalar]| {
            let mut slots: Vec<Slot> = pre.iter().map(|&i| Slot::B(i)).collect();
            slots.push(Slot::V(x));
            a.mu_slots(&slots)
        };
        let scaled = |s: Scalar, v: Vec<Scalar>| v.iter().map(|x| &s * x).collect::<Vec<_>>();
        match (left.len(), right.len()) {
            (0, 0) => hom_from_columns(f, d, d, &mut |j| {
                let x = basis(f, d, j);
                let u = mu(&[], &apply_hom(f, d, zeta, &x));
                let v = apply_hom(f, d, zeta, &mu(&[], &x));
                scaled(sign(f, a.degree(j) as i64 + 1), u.iter().zip(&v).map(|(p, q)| p - q).collect())
            }),
            (_, 0) => hom_from_columns(f, d, d, &mut |j| {
                scaled(sign(f, a.degree(j) as i64 + 1), mu(left, &apply_hom(f, d, zeta, &basis(f, d, j))))
            }),
            (0, _) => hom_from_columns(f, d, d, &mut |j| {
                scaled(sign(f, a.degree(j) as i64), apply_hom(f, d, zeta, &mu(right, &basis(f, d, j))))
            }),
            _ => vec![f.zero(); d * d],
        }
    }
}

/// The square-zero extension `A + P` with `nu(a, p, b) = (-1)^{maltese(b) + 1} mu_P(a, p, b)`;
/// its A-infinity relations with one `P` input are the bimodule relations.
pub fn square_zero_extension(p: &dyn Bimodule, arity_cap: usize) -> Result<AInfty> {
    let a = p.algebra();
    let (da, dp) = (a.dim(), p.dim());
    let mut degrees = a.degrees().to_vec();
    degrees.extend_from_slice(p.degrees());
    let mut ext = AInfty::new(&format!("{} + bimodule", a.name), a.field(), degrees, a.unit())?;
    for (w, v) in a.entries() {
        let mut out = v.clone();
        out.resize(da + dp, a.field().zero());
        ext.set_op(w.clone(), out)?;
    }
    for k in 1..=arity_cap {
        for pos in 0..k {
            for outer in tuples(da, k - 1) {
                let (left, right) = outer.split_at(pos);
                let s = sign(a.field(), maltese(right.iter().map(|&i| a.degree(i))) as i64 + 1);
                for q in 0..dp {
                    let v = p.act(left, &basis(a.field(), dp, q), right);
                    if v.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let mut out = vec![a.field().zero(); da];
                    out.extend(v.iter().map(|x| &s * x));
                    let mut w = left.to_vec();
                    w.push(da + q);
                    w.extend_from_slice(right);
                    ext.set_op(w, out)?;
                }
            }
        }
    }
    Ok(ext)
}

/// Bimodule relations on every input tuple with exactly one module element, up to `up_to` inputs.
pub fn bimodule_residuals(p: &dyn Bimodule, up_to: usize) -> Result<RelationReport> {
    let ext = square_zero_extension(p, up_to)?;
    let da = p.algebra().dim();
    let mut residuals = Vec::new();
    let mut checked = 0;
    for k in 1..=up_to {
        for pos in 0..k {
            for outer in tuples(da, k - 1) {
                for q in 0..p.dim() {
                    let mut w = outer[..pos].to_vec();
                    w.push(da + q);
                    w.extend_from_slice(&outer[pos..]);
                    checked += 1;
                    let value = ext.relation(&w);
                    if value.iter().any(|c| !c.is_zero()) {
                        residuals.push(Residual { inputs: w, value });
                    }
                }
            }
        }
    }
    Ok(RelationReport { up_to_arity: up_to, checked, residuals })
}

#[cfg(test)]
mod tests {
    use super::super::corpus::*;
    use super::*;

    #[test]
    fn diagonal_relations_hold() {
        for a in all() {
            let r = bimodule_residuals(&Diagonal(&a), 3).unwrap();
            assert!(r.ok(), "{}: {:?}", a.name, r.residuals.first());
        }
    }

    #[test]
    fn hom_of_regular_is_end() {
        for a in all() {
            let reg = Regular(&a);
            let hom = HomBimodule::new(&a, &reg, &reg);
            let end = EndBimodule::new(&a);
            assert_eq!(hom.degrees(), end.degrees());
            let d = a.dim();
            for k in 0..3 {
                for l in 0..3 - k {
                    for left in tuples(d, k) {
                        for right in tuples(d, l) {
                            for z in 0..d * d {
                                let zeta = basis(a.field(), d * d, z);
                                assert_eq!(hom.act(&left, &zeta, &right), end.act(&left, &zeta, &right));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hom_relations_hold() {
        for a in [exterior1(), exterior2(), upper_triangular(), cdga(), exterior1_mu3()] {
            let reg = Regular(&a);
            let hom = HomBimodule::new(&a, &reg, &reg);
            let r = bimodule_residuals(&hom, 3).unwrap();
            assert!(r.ok(), "{}: {:?}", a.name, r.residuals.first());
        }
    }

    #[test]
    fn zero_differential_gives_zero_mu00() {
        let a = exterior2();
        let reg = Regular(&a);
        let hom = HomBimodule::new(&a, &reg, &reg);
        for z in 0..16 {
            assert!(hom.act(&[], &basis(a.field(), 16, z), &[]).iter().all(Scalar::is_zero));
        }
    }
}
