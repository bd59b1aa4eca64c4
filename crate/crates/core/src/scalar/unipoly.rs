use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Field, Scalar};
use crate::error::{Error, Result};
use crate::DEFAULT_SEED;

/// Dense univariate polynomial, lowest degree first. Never stores a zero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

/// Rational roots of a polynomial over the rationals and what is left after removing them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    pub roots: Vec<(BigRational, usize)>,
    /// Monic cofactor with no rational roots.
    pub residual: UniPoly,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> UniPoly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> UniPoly {
        UniPoly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field) -> UniPoly {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> UniPoly {
        UniPoly::new(c.field(), vec![c])
    }

    pub fn one(field: Field) -> UniPoly {
        UniPoly::constant(field.one())
    }

    /// The polynomial `t`.
    pub fn x(field: Field) -> UniPoly {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    /// `t - root`.
    pub fn linear(root: &Scalar) -> UniPoly {
        let field = root.field();
        UniPoly::new(field, vec![-root, field.one()])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead().inv() {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * t) + c)
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_i64(i as i64))
            .collect();
        UniPoly::new(self.field, coeffs)
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        (0..e).fold(UniPoly::one(self.field), |acc, _| &acc * self)
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().inv().expect("nonzero lead is invertible");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = &rem[i] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = &rem[k] - &(&c * dc);
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(self.field, quot), UniPoly::new(self.field, rem))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Exact division; the caller guarantees divisibility.
    pub fn exact_div(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let field = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(field), UniPoly::zero(field));
        let (mut t0, mut t1) = (UniPoly::zero(field), UniPoly::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().inv() {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            None => (r0, s0, t0),
        }
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &UniPoly) -> UniPoly {
        let mut base = self.rem(m);
        let mut acc = UniPoly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Complete factorization over `F_p` with the default seed.
    pub fn factor(&self) -> Result<Vec<(UniPoly, usize)>> {
        self.factor_seeded(DEFAULT_SEED)
    }

    /// Complete factorization over `F_p` into monic irreducibles with multiplicities.
    ///
    /// Squarefree decomposition, then distinct-degree, then equal-degree splitting.
    /// The seed only drives equal-degree splitting; the sorted output does not depend on it.
    pub fn factor_seeded(&self, seed: u64) -> Result<Vec<(UniPoly, usize)>> {
        let p = match self.field {
            Field::Prime(p) => p,
            Field::Rationals => {
                return Err(Error::usage("complete factorization is only offered over F_p"))
            }
        };
        if self.is_zero() {
            return Err(Error::domain("cannot factor the zero polynomial"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for (sqf, mult) in squarefree_decomposition(&self.monic(), p) {
            for (part, deg) in distinct_degree(&sqf, p) {
                for irr in equal_degree(&part, deg, p, &mut rng) {
                    out.push((irr, mult));
                }
            }
        }
        out.sort_by(|a, b| factor_order(&a.0, &b.0));
        Ok(out)
    }

    /// Rational roots (with multiplicity) via the rational-root candidate set.
    pub fn rational_roots(&self) -> Result<RationalRoots> {
        if self.field != Field::Rationals {
            return Err(Error::usage("rational_roots expects a polynomial over Q"));
        }
        if self.is_zero() {
            return Err(Error::domain("zero polynomial has no finite root set"));
        }
        let mut rest = self.monic();
        let mut roots = Vec::new();
        let mut zero_mult = 0;
        while rest.coeff(0).is_zero() {
            rest = rest.exact_div(&UniPoly::x(self.field));
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((BigRational::zero(), zero_mult));
        }
        if rest.degree().unwrap_or(0) > 0 {
            let ints = primitive_integer_form(&rest);
            let a0 = ints[0].abs();
            let an = ints.last().expect("nonconstant").abs();
            let nums = divisors(&a0)?;
            let dens = divisors(&an)?;
            let mut candidates: Vec<BigRational> = Vec::new();
            for n in &nums {
                for d in &dens {
                    let r = BigRational::new(n.clone(), d.clone());
                    for c in [r.clone(), -r] {
                        if !candidates.contains(&c) {
                            candidates.push(c);
                        }
                    }
                }
            }
            for r in candidates {
                let root = Scalar::Rat(r.clone());
                let lin = UniPoly::linear(&root);
                let mut mult = 0;
                while rest.degree().unwrap_or(0) > 0 && rest.eval(&root).is_zero() {
                    rest = rest.exact_div(&lin);
                    mult += 1;
                }
                if mult > 0 {
                    roots.push((r, mult));
                }
            }
        }
        roots.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(RationalRoots { roots, residual: rest.monic() })
    }
}

fn primitive_integer_form(f: &UniPoly) -> Vec<BigInt> {
    let qs: Vec<&BigRational> = f
        .coeffs
        .iter()
        .map(|c| c.as_rational().expect("rational coefficients"))
        .collect();
    let lcm = qs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| (*q * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    ints.into_iter().map(|n| n / &g).collect()
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n
        .to_u64()
        .ok_or_else(|| Error::domain("coefficient too large for rational-root search"))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d != n / d {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out.sort();
    Ok(out)
}

/// Degree first, then the coefficients of `(-1)^d f(-t)` from the top down, so that
/// linear factors come out in increasing order of their root.
fn factor_order(a: &UniPoly, b: &UniPoly) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| {
        let d = a.degree().unwrap_or(0);
        let key = |f: &UniPoly| -> Vec<u64> {
            (0..d)
                .rev()
                .map(|i| {
                    let c = f.coeff(i);
                    let c = if (d - i) % 2 == 1 { -&c } else { c };
                    c.residue().unwrap_or(0)
                })
                .collect()
        };
        key(a).cmp(&key(b))
    })
}

fn squarefree_decomposition(f: &UniPoly, p: u64) -> Vec<(UniPoly, usize)> {
    let field = f.field;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if !c.is_one() {
        // c is a p-th power: over F_p the p-th root just compresses exponents.
        let root_coeffs = c.coeffs.iter().step_by(p as usize).cloned().collect();
        let root = UniPoly::new(field, root_coeffs);
        for (g, m) in squarefree_decomposition(&root, p) {
            out.push((g, m * p as usize));
        }
    }
    out
}

fn distinct_degree(f: &UniPoly, p: u64) -> Vec<(UniPoly, usize)> {
    let field = f.field;
    let x = UniPoly::x(field);
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = x.clone();
    let mut i = 1;
    while g.degree().unwrap_or(0) >= 2 * i {
        h = h.pow_mod(p as u128, &g);
        let d = (&h - &x).gcd(&g);
        if !d.is_one() {
            g = g.exact_div(&d);
            h = h.rem(&g);
            out.push((d, i));
        }
        i += 1;
    }
    if g.degree().unwrap_or(0) > 0 {
        let deg = g.degree().unwrap_or(0);
        out.push((g, deg));
    }
    out
}

fn random_poly(field: Field, p: u64, below: usize, rng: &mut ChaCha8Rng) -> UniPoly {
    UniPoly::new(
        field,
        (0..below).map(|_| field.from_i64(rng.gen_range(0..p) as i64)).collect(),
    )
}

fn equal_degree(f: &UniPoly, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field;
    loop {
        let a = random_poly(field, p, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            let mut acc = a.rem(f);
            let mut term = acc.clone();
            for _ in 1..d {
                term = (&term * &term).rem(f);
                acc = &acc + &term;
            }
            acc
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut norm = a.rem(f);
            let mut frob = norm.clone();
            for _ in 1..d {
                frob = frob.pow_mod(p as u128, f);
                norm = (&norm * &frob).rem(f);
            }
            &norm.pow_mod(((p - 1) / 2) as u128, f) - &UniPoly::one(field)
        };
        let g = b.gcd(f);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&f.exact_div(&g), d, p, rng));
            return out;
        }
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(self.field, (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(self.field, (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.field, out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            match (mag.as_str(), mono.is_empty()) {
                (m, true) => write!(f, "{m}")?,
                ("1", false) => write!(f, "{mono}")?,
                (m, false) => write!(f, "{m}*{mono}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(Field::Prime(p), c)
    }

    fn q(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(Field::Rationals, c)
    }

    fn product(field: Field, factors: &[(UniPoly, usize)]) -> UniPoly {
        factors
            .iter()
            .fold(UniPoly::one(field), |acc, (g, m)| &acc * &g.pow(*m))
    }

    /// Roots by exhaustive scan of F_p.
    fn brute_roots(f: &UniPoly) -> Vec<u64> {
        f.field()
            .elements()
            .into_iter()
            .filter(|a| f.eval(a).is_zero())
            .map(|a| a.residue().unwrap())
            .collect()
    }

    #[test]
    fn frobenius_square_over_f2() {
        let f = fp(2, &[1, 0, 1]);
        assert_eq!(f.factor().unwrap(), vec![(fp(2, &[1, 1]), 2)]);
    }

    #[test]
    fn cube_roots_of_six_mod_seven() {
        let f = fp(7, &[-6, 0, 0, 1]);
        assert_eq!(brute_roots(&f), vec![3, 5, 6]);
        let expected = vec![
            (fp(7, &[-3, 1]), 1),
            (fp(7, &[-5, 1]), 1),
            (fp(7, &[-6, 1]), 1),
        ];
        assert_eq!(f.factor().unwrap(), expected);
    }

    #[test]
    fn cube_root_of_three_mod_five() {
        let f = fp(5, &[-3, 0, 0, 1]);
        assert_eq!(brute_roots(&f), vec![2]);
        let cof = fp(5, &[4, 2, 1]);
        assert!(brute_roots(&cof).is_empty());
        assert_eq!(f.factor().unwrap(), vec![(fp(5, &[-2, 1]), 1), (cof, 1)]);
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(matches!(UniPoly::zero(Field::Prime(3)).factor(), Err(Error::Domain(_))));
        assert!(matches!(
            UniPoly::zero(Field::Rationals).rational_roots(),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn rational_roots_examples() {
        let r = q(&[-4, 0, 1]).rational_roots().unwrap();
        let two = BigRational::from_integer(2.into());
        assert_eq!(r.roots, vec![(two.clone(), 1), (-two, 1)]);
        let r = q(&[-27, 0, 0, 1]).rational_roots().unwrap();
        assert_eq!(r.roots, vec![(BigRational::from_integer(3.into()), 1)]);
        assert_eq!(r.residual, q(&[9, 3, 1]));
        let r = q(&[1, 0, 1]).rational_roots().unwrap();
        assert!(r.roots.is_empty());
    }

    #[test]
    fn rational_roots_with_multiplicity_and_fractions() {
        // (2t - 1)^2 t (t + 3)
        let f = &(&q(&[-1, 2]).pow(2) * &q(&[0, 1])) * &q(&[3, 1]);
        let r = f.rational_roots().unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            r.roots,
            vec![
                (half, 2),
                (BigRational::zero(), 1),
                (BigRational::from_integer((-3).into()), 1)
            ]
        );
        assert!(r.residual.is_one());
    }

    #[test]
    fn xgcd_bezout_identity() {
        let a = fp(7, &[1, 2, 3, 1]);
        let b = fp(7, &[5, 0, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert!(a.rem(&g).is_zero() && b.rem(&g).is_zero());
    }

    #[test]
    fn seed_does_not_change_sorted_output() {
        let f = fp(13, &[3, 1, 4, 1, 5, 9, 2]);
        assert_eq!(f.factor_seeded(1).unwrap(), f.factor_seeded(99).unwrap());
    }

    #[test]
    fn repeated_irreducible_factors() {
        // (t^2 + t + 1)^3 (t + 1)^2 over F_2
        let f = &fp(2, &[1, 1, 1]).pow(3) * &fp(2, &[1, 1]).pow(2);
        assert_eq!(
            f.factor().unwrap(),
            vec![(fp(2, &[1, 1]), 2), (fp(2, &[1, 1, 1]), 3)]
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn prime() -> impl Strategy<Value = u64> {
            prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])
        }

        proptest! {
            #[test]
            fn factorization_multiplies_back(p in prime(), cs in prop::collection::vec(-50i64..50, 1..8)) {
                let f = fp(p, &cs);
                prop_assume!(!f.is_zero());
                let facs = f.factor().unwrap();
                prop_assert_eq!(product(f.field(), &facs), f.monic());
                for (i, (g, _)) in facs.iter().enumerate() {
                    prop_assert_eq!(g, &g.monic());
                    // irreducible factors of degree <= 3 have no roots
                    if (2..=3).contains(&g.degree().unwrap()) {
                        prop_assert!(brute_roots(g).is_empty());
                    }
                    for h in &facs[i + 1..] {
                        prop_assert_ne!(g, &h.0);
                    }
                }
            }

            #[test]
            fn rational_roots_of_products_union(
                a in prop::collection::vec(-6i64..6, 1..4),
                b in prop::collection::vec(-6i64..6, 1..4),
            ) {
                let (f, g) = (q(&a), q(&b));
                prop_assume!(!f.is_zero() && !g.is_zero());
                let mut lhs = (&f * &g).rational_roots().unwrap().roots;
                let mut rhs = f.rational_roots().unwrap().roots;
                for (r, m) in g.rational_roots().unwrap().roots {
                    match rhs.iter_mut().find(|(s, _)| *s == r) {
                        Some(e) => e.1 += m,
                        None => rhs.push((r, m)),
                    }
                }
                lhs.sort();
                rhs.sort();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
