//! Delzant polytopes: validation, monotone normalization, the lattice of relations among
//! facet normals, Stanley-Reisner cohomology and the toric superpotential.

use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Matrix;
use crate::error::{Error, Result, ValidationError};
use crate::grobner::{polynomial_quotient, MonomialOrder, Poly};
use crate::laurent::{LaurentPoly, LaurentRing};
use crate::scalar::{parse_rational, Field, Scalar};

/// `{x : <nu_j, x> >= -lambda_j}` with integer normals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelzantPolytope {
    pub name: String,
    pub dim: usize,
    pub normals: Vec<Vec<i64>>,
    pub lambdas: Vec<BigRational>,
    /// Set by [`monotone_normalize`]: the polytope was translated by `a` and scaled by `1/c`.
    pub normalization: Option<Normalization>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub translation: Vec<BigRational>,
    pub scale: BigRational,
}

/// Vertices with the (0-based, sorted) facets through each; ordered by incidence set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexData {
    pub vertices: Vec<Vec<BigRational>>,
    pub incidence: Vec<Vec<usize>>,
}

/// Integer vectors `p` with `sum_j p_j nu_j = 0`, in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2Lattice {
    pub basis: Vec<Vec<i64>>,
}

/// File form: `{"name": "CP2", "dim": 2, "normals": [[1,0],[0,1],[-1,-1]], "lambda": ["1","1","1"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub name: String,
    pub dim: usize,
    pub normals: Vec<Vec<i64>>,
    pub lambda: Vec<serde_json::Value>,
}

impl DelzantPolytope {
    pub fn new(name: &str, normals: Vec<Vec<i64>>, lambdas: Vec<BigRational>) -> DelzantPolytope {
        let dim = normals.first().map_or(0, Vec::len);
        DelzantPolytope { name: name.to_string(), dim, normals, lambdas, normalization: None }
    }

    /// All support constants equal to one.
    pub fn with_unit_lambdas(name: &str, normals: Vec<Vec<i64>>) -> DelzantPolytope {
        let n = normals.len();
        DelzantPolytope::new(name, normals, vec![BigRational::from_integer(1.into()); n])
    }

    pub fn facets(&self) -> usize {
        self.normals.len()
    }

    pub fn from_json_str(text: &str) -> Result<DelzantPolytope> {
        let raw: PolytopeJson = serde_json::from_str(text)?;
        let lambdas = raw
            .lambda
            .iter()
            .map(|v| match v {
                serde_json::Value::String(s) => parse_rational(s),
                serde_json::Value::Number(n) => parse_rational(&n.to_string()),
                other => Err(Error::parse(format!("lambda entry {other} is not a rational"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DelzantPolytope {
            name: raw.name,
            dim: raw.dim,
            normals: raw.normals,
            lambdas,
            normalization: None,
        })
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson {
            name: self.name.clone(),
            dim: self.dim,
            normals: self.normals.clone(),
            lambda: self.lambdas.iter().map(|l| serde_json::Value::String(fmt_q(l))).collect(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.lambdas.iter().all(|l| *l == BigRational::from_integer(1.into()))
    }
}

/// Exact decimal-free rendering, `p/q` or `p`.
pub fn fmt_q(q: &BigRational) -> String {
    Scalar::Rat(q.clone()).to_string()
}

fn fmt_point(p: &[BigRational]) -> Vec<String> {
    p.iter().map(fmt_q).collect()
}

fn one_based(s: &[usize]) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn q_matrix(rows: &[&Vec<i64>]) -> Matrix {
    let f = Field::Rationals;
    Matrix::from_rows(f, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
}

fn dot(nu: &[i64], x: &[BigRational]) -> BigRational {
    nu.iter()
        .zip(x)
        .fold(BigRational::zero(), |acc, (&a, b)| acc + b * BigInt::from(a))
}

fn as_rationals(v: &[Scalar]) -> Vec<BigRational> {
    v.iter().map(|s| s.as_rational().expect("rational").clone()).collect()
}

/// Enumerates vertices and checks the Delzant conditions, in this order: shape, facet count,
/// boundedness, nonemptiness, interior, simplicity, unimodularity, irredundancy.
pub fn validate(p: &DelzantPolytope) -> Result<VertexData> {
    let n = p.dim;
    let big_n = p.facets();
    if n == 0 {
        return Err(ValidationError::Shape("dimension must be positive".into()).into());
    }
    if let Some(j) = p.normals.iter().position(|v| v.len() != n) {
        return Err(ValidationError::Shape(format!("normal of facet {} has length {}, expected {n}", j + 1, p.normals[j].len())).into());
    }
    if p.lambdas.len() != big_n {
        return Err(ValidationError::Shape(format!("{} normals but {} support constants", big_n, p.lambdas.len())).into());
    }
    if big_n < n + 1 {
        return Err(ValidationError::TooFewFacets { needed: n + 1, got: big_n }.into());
    }
    check_bounded(p)?;

    let mut found: Vec<Vec<BigRational>> = Vec::new();
    for s in subsets(big_n, n) {
        let rows: Vec<&Vec<i64>> = s.iter().map(|&j| &p.normals[j]).collect();
        let m = q_matrix(&rows);
        if m.det().is_zero() {
            continue;
        }
        let rhs: Vec<Scalar> = s.iter().map(|&j| Scalar::Rat(-p.lambdas[j].clone())).collect();
        let x = as_rationals(&m.solve(&rhs).expect("nonsingular system"));
        let feasible = (0..big_n).all(|i| dot(&p.normals[i], &x) >= -p.lambdas[i].clone());
        if feasible && !found.contains(&x) {
            found.push(x);
        }
    }
    if found.is_empty() {
        return Err(ValidationError::Empty.into());
    }
    let mut pairs: Vec<(Vec<usize>, Vec<BigRational>)> = found
        .into_iter()
        .map(|x| {
            let inc = (0..big_n).filter(|&i| dot(&p.normals[i], &x) == -p.lambdas[i].clone()).collect();
            (inc, x)
        })
        .collect();
    pairs.sort();

    // Nonempty interior: vertices affinely span R^n.
    let base = &pairs[0].1;
    let diffs: Vec<Vec<Scalar>> = pairs[1..]
        .iter()
        .map(|(_, x)| x.iter().zip(base).map(|(a, b)| Scalar::Rat(a - b)).collect())
        .collect();
    if crate::algebra::linear::span_dim(Field::Rationals, n, &diffs) < n {
        return Err(ValidationError::NoInterior.into());
    }
    for (inc, x) in &pairs {
        if inc.len() > n {
            return Err(ValidationError::NotSimple { vertex: fmt_point(x), facets: one_based(inc) }.into());
        }
    }
    for (inc, x) in &pairs {
        let rows: Vec<&Vec<i64>> = inc.iter().map(|&j| &p.normals[j]).collect();
        let det = q_matrix(&rows).det();
        let det = det.as_rational().expect("rational").to_integer();
        if det.abs() != BigInt::from(1) {
            return Err(ValidationError::NotUnimodular {
                vertex: fmt_point(x),
                facets: one_based(inc),
                det: det.to_i64().unwrap_or(i64::MAX),
            }
            .into());
        }
    }
    for j in 0..big_n {
        if !pairs.iter().any(|(inc, _)| inc.contains(&j)) {
            return Err(ValidationError::Redundant { facet: j + 1 }.into());
        }
    }
    let (incidence, vertices) = pairs.into_iter().unzip();
    Ok(VertexData { vertices, incidence })
}

/// The recession cone `{d : <nu_j, d> >= 0}` must be zero. Its extreme rays are cut out by
/// `n - 1` independent normals, so it suffices to test the kernels of those subsystems.
fn check_bounded(p: &DelzantPolytope) -> Result<()> {
    let n = p.dim;
    let all: Vec<&Vec<i64>> = p.normals.iter().collect();
    let full = q_matrix(&all);
    let recession = |d: &[BigRational]| p.normals.iter().all(|nu| !dot(nu, d).is_negative());
    if full.rank() < n {
        let d = as_rationals(&full.kernel()[0]);
        let dir = if recession(&d) { d } else { d.iter().map(|x| -x).collect() };
        return Err(ValidationError::Unbounded { direction: fmt_point(&dir) }.into());
    }
    for s in subsets(p.facets(), n - 1) {
        let ker = if s.is_empty() {
            vec![vec![Field::Rationals.one()]]
        } else {
            let rows: Vec<&Vec<i64>> = s.iter().map(|&j| &p.normals[j]).collect();
            q_matrix(&rows).kernel()
        };
        if ker.len() != 1 {
            continue;
        }
        let d = as_rationals(&ker[0]);
        for dir in [d.clone(), d.iter().map(|x| -x).collect::<Vec<_>>()] {
            if recession(&dir) {
                return Err(ValidationError::Unbounded { direction: fmt_point(&dir) }.into());
            }
        }
    }
    Ok(())
}

/// Translates and rescales so that every support constant is one.
///
/// Solves `lambda_j + <nu_j, a> = c` for `(a, c)`; the result is `(P + a) / c`.
pub fn monotone_normalize(p: &DelzantPolytope) -> Result<DelzantPolytope> {
    validate(p)?;
    let f = Field::Rationals;
    let n = p.dim;
    let rows: Vec<Vec<Scalar>> = p
        .normals
        .iter()
        .map(|nu| nu.iter().map(|&x| f.from_i64(x)).chain([f.from_i64(-1)]).collect())
        .collect();
    let rhs: Vec<Scalar> = p.lambdas.iter().map(|l| Scalar::Rat(-l.clone())).collect();
    let sol = Matrix::from_rows(f, rows).solve(&rhs).ok_or_else(|| {
        Error::NotMonotone(format!(
            "{}: no point is equidistant from all facets (lambda + <nu, a> = c has no solution)",
            p.name
        ))
    })?;
    let sol = as_rationals(&sol);
    let (a, c) = (sol[..n].to_vec(), sol[n].clone());
    if !c.is_positive() {
        return Err(Error::NotMonotone(format!("{}: common support constant {} is not positive", p.name, fmt_q(&c))));
    }
    Ok(DelzantPolytope {
        name: p.name.clone(),
        dim: n,
        normals: p.normals.clone(),
        lambdas: vec![BigRational::from_integer(1.into()); p.facets()],
        normalization: Some(Normalization { translation: a, scale: c }),
    })
}

/// Unimodular row reduction over columns `0..ncols`: pivots positive, entries above each
/// pivot in `[0, pivot)`. Returns the rank; rows past it vanish on those columns.
fn integer_echelon(rows: &mut [Vec<i128>], ncols: usize) -> usize {
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            let pivot = (r..rows.len()).filter(|&i| rows[i][c] != 0).min_by_key(|&i| rows[i][c].abs());
            let Some(pv) = pivot else { break };
            rows.swap(r, pv);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c] != 0 {
                    let q = Integer::div_floor(&rows[i][c], &rows[r][c]);
                    let (lo, hi) = rows.split_at_mut(i);
                    for (x, y) in hi[0].iter_mut().zip(&lo[r]) {
                        *x -= q * y;
                    }
                    done &= rows[i][c] == 0;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c] == 0 {
            continue;
        }
        if rows[r][c] < 0 {
            for x in rows[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let q = Integer::div_floor(&rows[i][c], &rows[r][c]);
            if q != 0 {
                let (lo, hi) = rows.split_at_mut(r);
                for (x, y) in lo[i].iter_mut().zip(&hi[0]) {
                    *x -= q * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Integer kernel of `p -> sum_j p_j nu_j`, rank `N - n`, in Hermite normal form.
pub fn h2_lattice(p: &DelzantPolytope) -> Result<H2Lattice> {
    validate(p)?;
    let big_n = p.facets();
    let n = p.dim;
    // Row-reduce [nu | I]; rows whose normal part vanishes span the kernel lattice.
    let mut rows: Vec<Vec<i128>> = (0..big_n)
        .map(|j| {
            let mut row: Vec<i128> = p.normals[j].iter().map(|&x| x as i128).collect();
            row.extend((0..big_n).map(|k| i128::from(k == j)));
            row
        })
        .collect();
    let r = integer_echelon(&mut rows, n);
    let mut kernel: Vec<Vec<i128>> = rows[r..].iter().map(|row| row[n..].to_vec()).collect();
    let rank = integer_echelon(&mut kernel, big_n);
    if r != n || rank != big_n - n {
        return Err(Error::anomaly("relation lattice has the wrong rank"));
    }
    let basis = kernel
        .into_iter()
        .map(|row| row.into_iter().map(|x| i64::try_from(x).expect("lattice entry fits in i64")).collect())
        .collect();
    Ok(H2Lattice { basis })
}

/// `gcd |sum_j p_j|` over the lattice basis; `None` when every pairing vanishes.
pub fn minimal_chern(lattice: &H2Lattice) -> Option<u64> {
    let g = lattice
        .basis
        .iter()
        .fold(0i64, |acc, p| acc.gcd(&p.iter().sum::<i64>()));
    (g != 0).then_some(g.unsigned_abs())
}

/// Minimal facet sets (0-based) contained in no vertex's incidence set.
pub fn primitive_collections(v: &VertexData) -> Vec<Vec<usize>> {
    let big_n = v.incidence.iter().flatten().max().map_or(0, |m| m + 1);
    let is_face = |s: &[usize]| v.incidence.iter().any(|inc| s.iter().all(|j| inc.contains(j)));
    let mut out = Vec::new();
    for k in 1..=big_n {
        for s in subsets(big_n, k) {
            if is_face(&s) {
                continue;
            }
            let minimal = (0..s.len()).all(|drop| {
                let t: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, &j)| j).collect();
                is_face(&t)
            });
            if minimal {
                out.push(s);
            }
        }
    }
    out
}

/// Graded dimensions of `k[H_1..H_N] / (linear relations, Stanley-Reisner monomials)`.
pub fn classical_cohomology(p: &DelzantPolytope, field: Field, budget: u64) -> Result<Vec<usize>> {
    let v = validate(p)?;
    let big_n = p.facets();
    let order = MonomialOrder::DegRevLex;
    let mut gens = Vec::new();
    for i in 0..p.dim {
        gens.push(Poly::from_terms(
            field,
            big_n,
            order,
            (0..big_n).map(|j| {
                let mut m = vec![0; big_n];
                m[j] = 1;
                (m, field.from_i64(p.normals[j][i]))
            }),
        ));
    }
    for s in primitive_collections(&v) {
        let mut m = vec![0; big_n];
        for j in s {
            m[j] = 1;
        }
        gens.push(Poly::monomial(field, big_n, order, m, field.one()));
    }
    let vars = (1..=big_n).map(|j| format!("H{j}")).collect();
    let q = polynomial_quotient(vars, gens, order, budget)?.finite()?;
    Ok(q.degree_counts())
}

/// Mod-2 cohomology of the real locus: the same presentation over `F_2`, with `h_j` in degree one.
pub fn real_cohomology_dims(p: &DelzantPolytope, budget: u64) -> Result<Vec<usize>> {
    classical_cohomology(p, Field::Prime(2), budget)
}

/// `W = sum_j z^{nu_j}`; the polytope must already have unit support constants.
pub fn superpotential(p: &DelzantPolytope, field: Field) -> Result<LaurentPoly> {
    if !p.is_normalized() {
        return Err(Error::usage(format!(
            "{}: superpotential needs a monotone-normalized polytope (all lambda = 1)",
            p.name
        )));
    }
    let ring: Arc<LaurentRing> = LaurentRing::numbered("z", p.dim, field);
    Ok(LaurentPoly::from_terms(&ring, p.normals.iter().map(|nu| (field.one(), nu.clone()))))
}

/// Standard polytopes used throughout the tests and examples.
pub mod corpus {
    use super::DelzantPolytope;

    pub fn cp(n: usize) -> DelzantPolytope {
        let mut normals: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        normals.push(vec![-1; n]);
        DelzantPolytope::with_unit_lambdas(&format!("CP{n}"), normals)
    }

    /// Product of `k` projective lines; facets ordered `e_1..e_k, -e_1..-e_k`.
    pub fn cp1_power(k: usize) -> DelzantPolytope {
        let mut normals = Vec::new();
        for sign in [1, -1] {
            for i in 0..k {
                normals.push((0..k).map(|j| if i == j { sign } else { 0 }).collect());
            }
        }
        let name = vec!["CP1"; k].join("x");
        DelzantPolytope::with_unit_lambdas(&name, normals)
    }

    /// The monotone toric manifolds exercised by the property suites.
    pub fn all() -> Vec<DelzantPolytope> {
        vec![cp(1), cp(2), cp(3), cp1_power(2), cp1_power(3)]
    }
}

#[cfg(test)]
mod tests {
    use super::corpus::*;
    use super::*;
    use crate::DEFAULT_BUDGET;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn cp2_validates_with_three_vertices() {
        let v = validate(&cp(2)).unwrap();
        assert_eq!(v.vertices.len(), 3);
        assert_eq!(v.incidence, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(v.vertices[0], vec![q("-1"), q("-1")]);
        assert_eq!(v.vertices[1], vec![q("-1"), q("2")]);
    }

    #[test]
    fn determinant_two_fails_at_facets_one_three() {
        let p = DelzantPolytope::with_unit_lambdas("bad", vec![vec![1, 0], vec![0, 1], vec![-1, -2]]);
        match validate(&p) {
            Err(Error::Validation(ValidationError::NotUnimodular { facets, det, vertex })) => {
                assert_eq!(facets, vec![1, 3]);
                assert_eq!(det.abs(), 2);
                assert_eq!(vertex, vec!["-1", "1"]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hirzebruch_two_fails_simplicity() {
        let p = DelzantPolytope::with_unit_lambdas("F2", vec![vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]]);
        match validate(&p) {
            Err(Error::Validation(ValidationError::NotSimple { vertex, facets })) => {
                assert_eq!(vertex, vec!["-1", "-1"]);
                assert_eq!(facets, vec![1, 2, 3]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn other_validation_failures() {
        let few = DelzantPolytope::with_unit_lambdas("few", vec![vec![1, 0], vec![0, 1]]);
        assert!(matches!(validate(&few), Err(Error::Validation(ValidationError::TooFewFacets { .. }))));
        let strip = DelzantPolytope::with_unit_lambdas("strip", vec![vec![1, 0], vec![-1, 0], vec![1, 0]]);
        assert!(matches!(validate(&strip), Err(Error::Validation(ValidationError::Unbounded { .. }))));
        let wedge = DelzantPolytope::with_unit_lambdas("wedge", vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert!(matches!(validate(&wedge), Err(Error::Validation(ValidationError::Unbounded { .. }))));
        let point = DelzantPolytope::new("pt", cp(2).normals, vec![q("0"); 3]);
        assert!(matches!(validate(&point), Err(Error::Validation(ValidationError::NoInterior))));
        let empty = DelzantPolytope::new("empty", vec![vec![1], vec![-1]], vec![q("-1"), q("-1")]);
        assert!(matches!(validate(&empty), Err(Error::Validation(ValidationError::Empty))));
        let mut red = cp1_power(2);
        red.normals.push(vec![1, 1]);
        red.lambdas.push(q("5"));
        assert!(matches!(validate(&red), Err(Error::Validation(ValidationError::Redundant { facet: 5 }))));
        let shape = DelzantPolytope::new("shape", vec![vec![1, 0], vec![0]], vec![q("1"); 2]);
        assert!(matches!(validate(&shape), Err(Error::Validation(ValidationError::Shape(_)))));
    }

    #[test]
    fn normalization_examples() {
        let p = DelzantPolytope::new("CP2", cp(2).normals, vec![q("1"), q("1"), q("2")]);
        let m = monotone_normalize(&p).unwrap();
        assert!(m.is_normalized());
        let t = m.normalization.unwrap();
        assert_eq!(t.translation, vec![q("1/3"), q("1/3")]);
        assert_eq!(t.scale, q("4/3"));

        let same = monotone_normalize(&cp(2)).unwrap();
        assert_eq!(same.lambdas, cp(2).lambdas);
        assert_eq!(same.normalization.unwrap().scale, q("1"));

        let bad = DelzantPolytope::new("P1xP1", cp1_power(2).normals, vec![q("1"), q("1"), q("1"), q("2")]);
        assert!(matches!(monotone_normalize(&bad), Err(Error::NotMonotone(_))));
    }

    #[test]
    fn lattice_and_chern_examples() {
        assert_eq!(h2_lattice(&cp(2)).unwrap().basis, vec![vec![1, 1, 1]]);
        assert_eq!(h2_lattice(&cp1_power(2)).unwrap().basis, vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
        assert_eq!(h2_lattice(&cp(3)).unwrap().basis, vec![vec![1, 1, 1, 1]]);
        assert_eq!(minimal_chern(&h2_lattice(&cp(2)).unwrap()), Some(3));
        assert_eq!(minimal_chern(&h2_lattice(&cp(3)).unwrap()), Some(4));
        assert_eq!(minimal_chern(&h2_lattice(&cp1_power(2)).unwrap()), Some(2));
        assert_eq!(minimal_chern(&H2Lattice { basis: vec![vec![1, -1]] }), None);
    }

    #[test]
    fn primitive_collection_examples() {
        assert_eq!(primitive_collections(&validate(&cp(2)).unwrap()), vec![vec![0, 1, 2]]);
        assert_eq!(primitive_collections(&validate(&cp1_power(2)).unwrap()), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(primitive_collections(&validate(&cp(3)).unwrap()), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn cohomology_examples() {
        let b = DEFAULT_BUDGET;
        assert_eq!(classical_cohomology(&cp(2), Field::Rationals, b).unwrap(), vec![1, 1, 1]);
        assert_eq!(classical_cohomology(&cp1_power(2), Field::Prime(2), b).unwrap(), vec![1, 2, 1]);
        assert_eq!(classical_cohomology(&cp(3), Field::Rationals, b).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(real_cohomology_dims(&cp(2), b).unwrap(), vec![1, 1, 1]);
        assert_eq!(real_cohomology_dims(&cp1_power(2), b).unwrap(), vec![1, 2, 1]);
        assert_eq!(real_cohomology_dims(&cp(3), b).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn superpotential_examples() {
        let f = Field::Rationals;
        assert_eq!(superpotential(&cp(2), f).unwrap().to_string(), "z1 + z2 + z1^-1*z2^-1");
        assert_eq!(superpotential(&cp(1), f).unwrap().to_string(), "z1 + z1^-1");
        assert_eq!(superpotential(&cp1_power(2), f).unwrap().to_string(), "z1 + z2 + z2^-1 + z1^-1");
        let skew = DelzantPolytope::new("CP2", cp(2).normals, vec![q("1"), q("1"), q("2")]);
        assert!(matches!(superpotential(&skew, f), Err(Error::Usage(_))));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"name": "CP2", "dim": 2, "normals": [[1,0],[0,1],[-1,-1]], "lambda": ["1","1/2",3]}"#;
        let p = DelzantPolytope::from_json_str(text).unwrap();
        assert_eq!(p.lambdas, vec![q("1"), q("1/2"), q("3")]);
        let back = DelzantPolytope::from_json_str(&serde_json::to_string(&p.to_json()).unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn corpus_invariants() {
        let b = DEFAULT_BUDGET;
        for p in all() {
            let v = validate(&p).unwrap();
            let over_q = classical_cohomology(&p, Field::Rationals, b).unwrap();
            let over_f2 = classical_cohomology(&p, Field::Prime(2), b).unwrap();
            assert_eq!(over_q, over_f2, "{}", p.name);
            assert_eq!(over_q, real_cohomology_dims(&p, b).unwrap());
            assert_eq!(over_q.iter().sum::<usize>(), v.vertices.len(), "{}", p.name);
            let lat = h2_lattice(&p).unwrap();
            for row in &lat.basis {
                for i in 0..p.dim {
                    assert_eq!((0..p.facets()).map(|j| row[j] * p.normals[j][i]).sum::<i64>(), 0);
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn normalization_lands_on_unit_lambdas(
                which in 0usize..5,
                shift in prop::collection::vec(-3i64..4, 3),
                scale in 1i64..5,
            ) {
                // lambda_j = scale * (1 + <nu_j, s>) describes a translated, rescaled monotone polytope.
                let base = all()[which].clone();
                let lambdas: Vec<BigRational> = base
                    .normals
                    .iter()
                    .map(|nu| {
                        let s: i64 = nu.iter().zip(&shift).map(|(a, b)| a * b).sum();
                        BigRational::new(BigInt::from(scale * (3 + s)), BigInt::from(3))
                    })
                    .collect();
                let p = DelzantPolytope::new(&base.name, base.normals.clone(), lambdas);
                prop_assume!(validate(&p).is_ok());
                let m = monotone_normalize(&p).unwrap();
                prop_assert!(m.is_normalized());
                prop_assert!(validate(&m).is_ok());
            }
        }
    }
}
