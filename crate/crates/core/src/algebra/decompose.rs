//! Radicals, local factors and idempotents of finite commutative algebras.

use std::cmp::Ordering;

use super::linear::{in_span, span_basis, span_dim, Matrix};
use super::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar, UniPoly};
use crate::DEFAULT_SEED;

/// One local summand `e * A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    pub idempotent: Vec<Scalar>,
    /// Basis of `e * A`, in coordinates of the ambient algebra.
    pub basis: Vec<Vec<Scalar>>,
    /// Basis of the maximal ideal of `e * A`.
    pub maximal_ideal: Vec<Vec<Scalar>>,
    pub dim: usize,
    pub residue_degree: usize,
    /// Values of the designated coordinates when the residue field is the base field.
    pub point: Option<Vec<Scalar>>,
}

/// Output of [`bezout_idempotents`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutSplit {
    pub e: Vec<Scalar>,
    pub e_perp: Vec<Scalar>,
    /// Algebraic multiplicity of the eigenvalue; zero when it is not a root.
    pub multiplicity: usize,
    pub is_root: bool,
}

fn require_char_p(a: &FiniteAlgebra) -> Result<u64> {
    let p = match a.field() {
        Field::Prime(p) => p,
        Field::Rationals => return Err(Error::usage("this operation needs a prime field")),
    };
    if !a.is_commutative() {
        return Err(Error::usage("algebra is not commutative"));
    }
    Ok(p)
}

/// Nilradical as the kernel of `x -> x^(p^k)` with `p^k >= dim`.
pub fn radical_char_p(a: &FiniteAlgebra) -> Result<Vec<Vec<Scalar>>> {
    let p = require_char_p(a)?;
    let frob = a.frobenius_matrix()?;
    let mut k = 0;
    let mut reach: u128 = 1;
    while reach < a.dim() as u128 {
        reach *= p as u128;
        k += 1;
    }
    Ok(frob.pow(k.max(1)).kernel())
}

/// Decomposition into local factors with the default seed.
pub fn local_decompose(a: &FiniteAlgebra) -> Result<Vec<LocalFactor>> {
    local_decompose_seeded(a, DEFAULT_SEED)
}

/// Splits `A` by the minimal polynomials of its designated generators (CRT idempotents),
/// recursing until each piece is local. Locality is certified by the Frobenius-fixed
/// elements of a piece forming a one-dimensional space; pieces failing the certificate
/// are split further using those fixed elements.
pub fn local_decompose_seeded(a: &FiniteAlgebra, seed: u64) -> Result<Vec<LocalFactor>> {
    require_char_p(a)?;
    let field = a.field();
    let dim = a.dim();
    let generators: Vec<Vec<Scalar>> = if a.coords().is_empty() {
        (0..dim).map(|i| a.basis_vector(i)).collect()
    } else {
        a.coords().iter().map(|(_, v)| v.clone()).collect()
    };
    let frob = a.frobenius_matrix()?;
    let fixed = frob.sub(&Matrix::identity(field, dim)).kernel();
    let radical = radical_char_p(a)?;

    let mut pending = vec![a.unit().to_vec()];
    let mut done = Vec::new();
    while let Some(e) = pending.pop() {
        let mut split = None;
        for g in &generators {
            let x = a.mul(g, &e);
            if let Some(parts) = crt_split(a, &x, &e, seed)? {
                split = Some(parts);
                break;
            }
        }
        if split.is_none() {
            let fixed_here: Vec<Vec<Scalar>> = fixed.iter().map(|k| a.mul(&e, k)).collect();
            let fixed_here = span_basis(field, dim, &fixed_here);
            if fixed_here.len() > 1 {
                let e_line = vec![e.clone()];
                let k = fixed_here
                    .iter()
                    .find(|k| !in_span(field, dim, &e_line, k))
                    .expect("fixed space larger than the unit line");
                split = crt_split(a, k, &e, seed)?;
                if split.is_none() {
                    return Err(Error::anomaly("Frobenius-fixed element failed to split a non-local piece"));
                }
            }
        }
        match split {
            Some(parts) => pending.extend(parts),
            None => done.push(e),
        }
    }

    let mut factors: Vec<LocalFactor> = done
        .into_iter()
        .map(|e| build_factor(a, e, &radical, seed))
        .collect::<Result<_>>()?;
    factors.sort_by(|x, y| {
        x.dim
            .cmp(&y.dim)
            .then(x.residue_degree.cmp(&y.residue_degree))
            .then_with(|| lex(&x.idempotent, &y.idempotent))
    });
    Ok(factors)
}

fn lex(a: &[Scalar], b: &[Scalar]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.sort_key(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Idempotents of `e * A` cut out by coprime prime-power factors of the minimal polynomial of `x`.
fn crt_split(a: &FiniteAlgebra, x: &[Scalar], e: &[Scalar], seed: u64) -> Result<Option<Vec<Vec<Scalar>>>> {
    let m = a.element_minpoly(x, e);
    let factors = m.factor_seeded(seed)?;
    if factors.len() <= 1 {
        return Ok(None);
    }
    let mut parts = Vec::with_capacity(factors.len());
    for (f, k) in &factors {
        let prime_power = f.pow(*k);
        let cofactor = m.exact_div(&prime_power);
        let (g, _, t) = prime_power.xgcd(&cofactor);
        debug_assert!(g.is_one());
        parts.push(a.eval_poly_with_unit(&(&t * &cofactor), x, e));
    }
    Ok(Some(parts))
}

fn build_factor(a: &FiniteAlgebra, e: Vec<Scalar>, radical: &[Vec<Scalar>], seed: u64) -> Result<LocalFactor> {
    let field = a.field();
    let dim = a.dim();
    let basis = a.ideal_span(&e);
    let m: Vec<Vec<Scalar>> = radical.iter().map(|r| a.mul(&e, r)).collect();
    let maximal_ideal = span_basis(field, dim, &m);
    let residue_degree = basis.len() - maximal_ideal.len();
    let point = if residue_degree == 1 && !a.coords().is_empty() {
        let mut pt = Vec::new();
        for (name, c) in a.coords() {
            let x = a.mul(c, &e);
            let fac = a.element_minpoly(&x, &e).factor_seeded(seed)?;
            match fac.as_slice() {
                [(lin, _)] if lin.degree() == Some(1) => pt.push(-&lin.coeff(0)),
                _ => {
                    return Err(Error::anomaly(format!(
                        "coordinate {name} has no single eigenvalue on a residue-degree-1 factor"
                    )))
                }
            }
        }
        Some(pt)
    } else {
        None
    };
    Ok(LocalFactor { dim: basis.len(), idempotent: e, basis, maximal_ideal, residue_degree, point })
}

/// Graded dimensions `dim m^k / m^(k+1)` for `k = 0, 1, ..` until `m^k = 0`.
pub fn madic_profile(a: &FiniteAlgebra, factor: &LocalFactor) -> Vec<usize> {
    let field = a.field();
    let dim = a.dim();
    let mut dims = vec![factor.dim];
    let mut power = factor.maximal_ideal.clone();
    while !power.is_empty() {
        dims.push(power.len());
        let prods: Vec<Vec<Scalar>> = power
            .iter()
            .flat_map(|x| factor.maximal_ideal.iter().map(move |y| (x, y)))
            .map(|(x, y)| a.mul(x, y))
            .collect();
        let next = span_basis(field, dim, &prods);
        if next.len() == power.len() {
            // m^k = m^(k+1) only happens for non-nilpotent input; stop rather than loop.
            break;
        }
        power = next;
    }
    dims.push(0);
    dims.windows(2).map(|w| w[0] - w[1]).collect()
}

/// Idempotent projecting onto the generalized `lambda`-eigenspace of multiplication by `x`.
///
/// With `chi` the characteristic polynomial of multiplication by `x` and `m` the multiplicity
/// of `lambda`, write `chi = (t - lambda)^m q`, solve `(t - lambda)^m f + q g = 1` and take
/// `e = (q g)(x)`.
pub fn bezout_idempotents(a: &FiniteAlgebra, x: &[Scalar], lambda: &Scalar) -> BezoutSplit {
    let chi = a.mult_matrix(x).charpoly();
    let lin = UniPoly::linear(lambda);
    let mut q = chi;
    let mut mult = 0;
    while q.eval(lambda).is_zero() {
        q = q.exact_div(&lin);
        mult += 1;
    }
    if mult == 0 {
        return BezoutSplit { e: a.zero(), e_perp: a.unit().to_vec(), multiplicity: 0, is_root: false };
    }
    let (g, _, cof) = lin.pow(mult).xgcd(&q);
    debug_assert!(g.is_one());
    let e = a.eval_poly(&(&q * &cof), x);
    let e_perp = a.sub(a.unit(), &e);
    BezoutSplit { e, e_perp, multiplicity: mult, is_root: true }
}

/// Dimension of the generalized eigenspace `ker (M_x - lambda)^dim`.
pub fn generalized_eigenspace_dim(a: &FiniteAlgebra, x: &[Scalar], lambda: &Scalar) -> usize {
    let field = a.field();
    let n = a.dim();
    let shifted = a.mult_matrix(x).sub(&Matrix::identity(field, n).scale(lambda));
    shifted.pow(n).kernel().len()
}

/// Dimension of `span(vectors)`; re-exported for report builders.
pub fn rank_of(field: Field, dim: usize, vectors: &[Vec<Scalar>]) -> usize {
    span_dim(field, dim, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::univariate_quotient;

    fn quot(p: Option<u64>, coeffs: &[i64]) -> FiniteAlgebra {
        let field = p.map_or(Field::Rationals, Field::Prime);
        univariate_quotient(&UniPoly::from_i64s(field, coeffs), "z").unwrap()
    }

    #[test]
    fn radical_examples() {
        // (z+1)^2 over F2
        let a = quot(Some(2), &[1, 0, 1]);
        let r = radical_char_p(&a).unwrap();
        assert_eq!(r.len(), 1);
        assert!(in_span(a.field(), 2, &r, &[a.field().one(), a.field().one()]));

        assert!(radical_char_p(&quot(Some(7), &[-1, 0, 0, 1])).unwrap().is_empty());

        // (x+1)^3 over F3
        let c = quot(Some(3), &[1, 3, 3, 1]);
        let r = radical_char_p(&c).unwrap();
        assert_eq!(r.len(), 2);
        let f = c.field();
        let xp1 = vec![f.one(), f.one(), f.zero()];
        assert!(in_span(f, 3, &r, &xp1));
        assert!(in_span(f, 3, &r, &c.mul(&xp1, &xp1)));
        for v in &r {
            assert!(c.is_zero(&c.pow(v, 3)));
        }
    }

    #[test]
    fn radical_needs_char_p() {
        assert!(matches!(radical_char_p(&quot(None, &[-1, 0, 1])), Err(Error::Usage(_))));
    }

    #[test]
    fn decompose_cube_roots_of_unity_over_f2() {
        let a = quot(Some(2), &[-1, 0, 0, 1]);
        let fs = local_decompose(&a).unwrap();
        assert_eq!(fs.iter().map(|f| (f.dim, f.residue_degree)).collect::<Vec<_>>(), vec![(1, 1), (2, 2)]);
        assert_eq!(fs[0].point, Some(vec![Field::Prime(2).one()]));
        assert_eq!(fs[1].point, None);
    }

    #[test]
    fn decompose_cube_root_of_three_over_f5() {
        let a = quot(Some(5), &[-3, 0, 0, 1]);
        let fs = local_decompose(&a).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!((fs[0].dim, fs[0].residue_degree), (1, 1));
        assert_eq!(fs[0].point, Some(vec![Field::Prime(5).from_i64(2)]));
        assert_eq!((fs[1].dim, fs[1].residue_degree), (2, 2));
    }

    #[test]
    fn decompose_local_cube() {
        let a = quot(Some(3), &[1, 3, 3, 1]);
        let fs = local_decompose(&a).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!((fs[0].dim, fs[0].residue_degree), (3, 1));
        assert_eq!(fs[0].point, Some(vec![Field::Prime(3).from_i64(-1)]));
        assert_eq!(madic_profile(&a, &fs[0]), vec![1, 1, 1]);
    }

    #[test]
    fn madic_profiles_of_small_factors() {
        let a = quot(Some(7), &[-1, 0, 0, 1]);
        for f in local_decompose(&a).unwrap() {
            assert_eq!(madic_profile(&a, &f), vec![1]);
        }
        let b = quot(Some(2), &[1, 0, 1]);
        let fs = local_decompose(&b).unwrap();
        assert_eq!(madic_profile(&b, &fs[0]), vec![1, 1]);
    }

    /// F_p[x,y]/(x^2-a, y^2-a) with a a non-square: each generator has an irreducible
    /// minimal polynomial but the algebra is F_{p^2} x F_{p^2}.
    #[test]
    fn splits_when_generators_alone_do_not() {
        let f = Field::Prime(5);
        // basis 1, x, y, xy ; a = 2 is a non-square mod 5
        let two = f.from_i64(2);
        let one = f.one();
        let z = f.zero();
        let col = |v: [&Scalar; 4]| v.iter().map(|s| (*s).clone()).collect::<Vec<_>>();
        let mx = Matrix::from_columns(
            f,
            4,
            &[col([&z, &one, &z, &z]), col([&two, &z, &z, &z]), col([&z, &z, &z, &one]), col([&z, &z, &two, &z])],
        );
        let my = Matrix::from_columns(
            f,
            4,
            &[col([&z, &z, &one, &z]), col([&z, &z, &z, &one]), col([&two, &z, &z, &z]), col([&z, &two, &z, &z])],
        );
        let mxy = mx.mul(&my);
        let alg = FiniteAlgebra::new(
            f,
            vec!["1".into(), "x".into(), "y".into(), "x*y".into()],
            vec![Matrix::identity(f, 4), mx, my, mxy],
            vec![one.clone(), z.clone(), z.clone(), z.clone()],
        )
        .unwrap()
        .with_coords(vec![
            ("x".into(), vec![z.clone(), one.clone(), z.clone(), z.clone()]),
            ("y".into(), vec![z.clone(), z.clone(), one.clone(), z.clone()]),
        ]);
        let fs = local_decompose(&alg).unwrap();
        assert_eq!(fs.iter().map(|f| (f.dim, f.residue_degree)).collect::<Vec<_>>(), vec![(2, 2), (2, 2)]);
    }

    #[test]
    fn bezout_examples() {
        let q = Field::Rationals;
        let a = quot(None, &[-1, 0, 1]);
        let two_z = vec![q.zero(), q.from_i64(2)];
        let s = bezout_idempotents(&a, &two_z, &q.from_i64(2));
        let half = q.parse_scalar("1/2").unwrap();
        assert_eq!(s.e, vec![half.clone(), half]);
        assert_eq!(s.multiplicity, 1);

        let none = bezout_idempotents(&a, &two_z, &q.from_i64(5));
        assert!(!none.is_root);
        assert!(a.is_zero(&none.e));
        assert_eq!(none.e_perp, a.unit().to_vec());

        let f7 = Field::Prime(7);
        let b = quot(Some(7), &[-1, 0, 0, 1]);
        let three_z = vec![f7.zero(), f7.from_i64(3), f7.zero()];
        let s = bezout_idempotents(&b, &three_z, &f7.from_i64(3));
        let span = b.ideal_span(&s.e);
        assert_eq!(span.len(), 1);
        // eigenvector of z with eigenvalue 1 is 1 + z + z^2
        assert!(in_span(f7, 3, &span, &[f7.one(), f7.one(), f7.one()]));
    }

    /// Brute-force points of k[z1^±, z2^±]/(f, g) over F_p.
    fn points(p: u64, rels: &[Box<dyn Fn(i64, i64) -> i64>]) -> usize {
        (1..p as i64)
            .flat_map(|x| (1..p as i64).map(move |y| (x, y)))
            .filter(|&(x, y)| rels.iter().all(|r| r(x, y).rem_euclid(p as i64) == 0))
            .count()
    }

    #[test]
    fn rational_points_match_degree_one_factors() {
        for p in [2u64, 3, 5, 7] {
            // z^3 = 1 (CP^2 Jacobian after elimination)
            let a = quot(Some(p), &[-1, 0, 0, 1]);
            let deg1 = local_decompose(&a).unwrap().iter().filter(|f| f.residue_degree == 1).count();
            let rels: Vec<Box<dyn Fn(i64, i64) -> i64>> =
                vec![Box::new(|x, y| x - y), Box::new(|x, _| x * x * x - 1)];
            assert_eq!(deg1, points(p, &rels), "p = {p}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn idempotents_partition_unity(
                p in prop::sample::select(vec![2u64, 3, 5, 7]),
                cs in prop::collection::vec(-6i64..7, 1..6),
            ) {
                let f = Field::Prime(p);
                let mut coeffs = cs.clone();
                coeffs.push(1);
                let a = univariate_quotient(&UniPoly::from_i64s(f, &coeffs), "z").unwrap();
                let fs = local_decompose(&a).unwrap();
                prop_assert_eq!(fs.iter().map(|x| x.dim).sum::<usize>(), a.dim());
                let mut total = a.zero();
                for (i, x) in fs.iter().enumerate() {
                    prop_assert_eq!(a.mul(&x.idempotent, &x.idempotent), x.idempotent.clone());
                    for y in &fs[i + 1..] {
                        prop_assert!(a.is_zero(&a.mul(&x.idempotent, &y.idempotent)));
                    }
                    total = a.add(&total, &x.idempotent);
                    let prof = madic_profile(&a, x);
                    prop_assert_eq!(prof[0], x.residue_degree);
                    prop_assert_eq!(prof.iter().sum::<usize>(), x.dim);
                }
                prop_assert_eq!(total, a.unit().to_vec());
            }

            #[test]
            fn bezout_lands_in_generalized_eigenspace(
                cs in prop::collection::vec(-4i64..5, 1..5),
                lam in 0i64..7,
            ) {
                let f = Field::Prime(7);
                let mut coeffs = cs.clone();
                coeffs.push(1);
                let a = univariate_quotient(&UniPoly::from_i64s(f, &coeffs), "z").unwrap();
                let z = a.coords()[0].1.clone();
                let lam = f.from_i64(lam);
                let s = bezout_idempotents(&a, &z, &lam);
                prop_assert_eq!(a.mul(&s.e, &s.e), s.e.clone());
                prop_assert!(a.is_zero(&a.mul(&s.e, &s.e_perp)));
                prop_assert_eq!(a.add(&s.e, &s.e_perp), a.unit().to_vec());
                let span = a.ideal_span(&s.e);
                prop_assert_eq!(span.len(), s.multiplicity);
                prop_assert_eq!(span.len(), generalized_eigenspace_dim(&a, &z, &lam));
                let shifted = a.mult_matrix(&z).sub(&Matrix::identity(f, a.dim()).scale(&lam)).pow(a.dim());
                for v in span {
                    prop_assert!(shifted.apply(&v).iter().all(Scalar::is_zero));
                }
            }

            #[test]
            fn radical_is_nilpotent(
                p in prop::sample::select(vec![2u64, 3, 5]),
                cs in prop::collection::vec(-3i64..4, 1..6),
            ) {
                let f = Field::Prime(p);
                let mut coeffs = cs.clone();
                coeffs.push(1);
                let a = univariate_quotient(&UniPoly::from_i64s(f, &coeffs), "z").unwrap();
                for v in radical_char_p(&a).unwrap() {
                    prop_assert!(a.is_zero(&a.pow(&v, a.dim() as u64)));
                }
            }
        }
    }
}
