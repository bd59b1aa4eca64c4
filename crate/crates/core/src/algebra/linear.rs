//! Dense exact linear algebra: Gaussian elimination, kernels, images, span containment,
//! characteristic and minimal polynomials.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar, UniPoly};

/// Row-major dense matrix. Vectors are columns; a matrix acts by `M * v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64s(field: Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::usage(format!(
                "vector of length {} does not fit a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(self.field.zero(), |acc, j| {
                    if v[j].is_zero() {
                        acc
                    } else {
                        &acc + &(self.get(i, j) * &v[j])
                    }
                })
            })
            .collect())
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.try_apply(v).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Matrix {
        (0..k).fold(Matrix::identity(self.field, self.rows), |acc, _| acc.mul(self))
    }

    /// `f(M)` for a univariate polynomial `f`.
    pub fn eval_poly(&self, f: &UniPoly) -> Matrix {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let id = Matrix::identity(self.field, self.rows);
        f.coeffs()
            .iter()
            .rev()
            .fold(Matrix::zeros(self.field, self.rows, self.cols), |acc, c| {
                acc.mul(self).add(&id.scale(c))
            })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let x = m.get(r, j) * &inv;
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let x = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column (that coordinate set to 1).
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            out.push(v);
        }
        out
    }

    /// Echelon basis of the column space.
    pub fn image(&self) -> Vec<Vec<Scalar>> {
        span_basis(self.field, self.rows, &self.columns())
    }

    /// Some solution of `M x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Determinant by elimination.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..m.cols {
                    let x = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, x);
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(t I - M)` via reduction to Hessenberg form.
    pub fn charpoly(&self) -> UniPoly {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let field = self.field;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(p) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else {
                continue;
            };
            if p != j + 1 {
                h.swap_rows(p, j + 1);
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + j + 1);
                }
            }
            let inv = h.get(j + 1, j).inv().expect("nonzero pivot");
            for k in j + 2..n {
                let u = h.get(k, j) * &inv;
                if u.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let x = h.get(k, c) - &(&u * h.get(j + 1, c));
                    h.set(k, c, x);
                }
                for r in 0..n {
                    let x = h.get(r, j + 1) + &(&u * h.get(r, k));
                    h.set(r, j + 1, x);
                }
            }
        }
        // p[m] = charpoly of the leading m x m block.
        let t = UniPoly::x(field);
        let mut p = vec![UniPoly::one(field)];
        for m in 1..=n {
            let mm = m - 1;
            let mut next = &(&t - &UniPoly::constant(h.get(mm, mm).clone())) * &p[m - 1];
            let mut prod = field.one();
            for i in (0..mm).rev() {
                prod = &prod * h.get(i + 1, i);
                if prod.is_zero() {
                    break;
                }
                let c = &prod * h.get(i, mm);
                next = &next - &p[i].scale(&c);
            }
            p.push(next);
        }
        p.pop().expect("nonempty")
    }

    /// Minimal polynomial: least common multiple of the Krylov annihilators of basis vectors.
    pub fn minpoly(&self) -> UniPoly {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let field = self.field;
        let n = self.rows;
        let mut acc = UniPoly::one(field);
        for i in 0..n {
            let mut e = vec![field.zero(); n];
            e[i] = field.one();
            if acc.degree() == Some(n) {
                break;
            }
            // Skip vectors already annihilated by the running lcm.
            if self.eval_poly(&acc).apply(&e).iter().all(Scalar::is_zero) {
                continue;
            }
            let mut krylov = vec![e];
            loop {
                let next = self.apply(krylov.last().expect("nonempty"));
                krylov.push(next);
                let m = Matrix::from_columns(field, n, &krylov);
                let ker = m.kernel();
                if let Some(v) = ker.first() {
                    let ann = UniPoly::new(field, v.clone()).monic();
                    acc = (&acc * &ann).exact_div(&acc.gcd(&ann));
                    break;
                }
            }
        }
        acc.monic()
    }
}

/// Echelon basis (reduced) of the span of `vectors` in `F^dim`.
pub fn span_basis(field: Field, dim: usize, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(field, vectors.to_vec());
    assert_eq!(m.cols, dim, "vector length");
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

pub fn span_dim(field: Field, dim: usize, vectors: &[Vec<Scalar>]) -> usize {
    span_basis(field, dim, vectors).len()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(field: Field, dim: usize, basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_dim(field, dim, &all) == span_dim(field, dim, basis)
}

/// First vector of `sub` outside the span of `sup`, or `None` when span(sub) ⊆ span(sup).
pub fn containment_witness(
    field: Field,
    dim: usize,
    sub: &[Vec<Scalar>],
    sup: &[Vec<Scalar>],
) -> Option<Vec<Scalar>> {
    let base = span_basis(field, dim, sup);
    sub.iter().find(|v| !in_span(field, dim, &base, v)).cloned()
}

pub fn contains(field: Field, dim: usize, sup: &[Vec<Scalar>], sub: &[Vec<Scalar>]) -> bool {
    containment_witness(field, dim, sub, sup).is_none()
}

/// Whether two families span the same subspace.
pub fn same_span(field: Field, dim: usize, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    span_basis(field, dim, a) == span_basis(field, dim, b)
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let m = Matrix::zeros(Q, 2, 3);
        assert_eq!(m.kernel().len(), 3);
        assert!(m.image().is_empty());
    }

    #[test]
    fn containment_is_reflexive() {
        let v = vec![vec![Q.from_i64(1), Q.from_i64(2)], vec![Q.from_i64(0), Q.from_i64(1)]];
        assert!(contains(Q, 2, &v, &v));
        let line = vec![vec![Q.from_i64(1), Q.from_i64(1)]];
        assert!(contains(Q, 2, &v, &line));
        assert!(!contains(Q, 2, &line, &v));
    }

    #[test]
    fn dimension_mismatch_is_usage_error() {
        let a = Matrix::zeros(Q, 2, 3);
        assert!(matches!(a.try_mul(&a), Err(Error::Usage(_))));
        assert!(matches!(a.try_apply(&[Q.one()]), Err(Error::Usage(_))));
    }

    #[test]
    fn solve_and_det() {
        let m = Matrix::from_i64s(Q, &[&[2, 1], &[1, 3]]);
        assert_eq!(m.det(), Q.from_i64(5));
        let x = m.solve(&[Q.from_i64(3), Q.from_i64(4)]).unwrap();
        assert_eq!(m.apply(&x), vec![Q.from_i64(3), Q.from_i64(4)]);
        let sing = Matrix::from_i64s(Q, &[&[1, 1], &[1, 1]]);
        assert!(sing.solve(&[Q.from_i64(1), Q.from_i64(2)]).is_none());
    }

    #[test]
    fn charpoly_of_companion_matrix() {
        // companion of t^3 - 2t + 5
        let m = Matrix::from_i64s(Q, &[&[0, 0, -5], &[1, 0, 2], &[0, 1, 0]]);
        assert_eq!(m.charpoly(), UniPoly::from_i64s(Q, &[5, -2, 0, 1]));
        assert_eq!(m.minpoly(), UniPoly::from_i64s(Q, &[5, -2, 0, 1]));
    }

    #[test]
    fn minpoly_of_scalar_matrix() {
        let m = Matrix::identity(Q, 3).scale(&Q.from_i64(4));
        assert_eq!(m.minpoly(), UniPoly::from_i64s(Q, &[-4, 1]));
        assert_eq!(m.charpoly(), UniPoly::from_i64s(Q, &[-4, 1]).pow(3));
    }

    /// Cofactor expansion of det(tI - M) evaluated at integer points, as an oracle.
    fn charpoly_at(m: &Matrix, t: i64) -> Scalar {
        let f = m.field();
        let shifted = Matrix::identity(f, m.rows()).scale(&f.from_i64(t)).sub(m);
        laplace(&shifted)
    }

    fn laplace(m: &Matrix) -> Scalar {
        let n = m.rows();
        let f = m.field();
        if n == 0 {
            return f.one();
        }
        let mut acc = f.zero();
        for j in 0..n {
            let minor = Matrix::from_rows(
                f,
                (1..n)
                    .map(|i| (0..n).filter(|&c| c != j).map(|c| m.get(i, c).clone()).collect())
                    .collect(),
            );
            let term = m.get(0, j) * &laplace(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_matrix(field: Field) -> impl Strategy<Value = Matrix> {
            (1usize..5).prop_flat_map(move |n| {
                prop::collection::vec(-3i64..4, n * n).prop_map(move |xs| {
                    Matrix::from_rows(
                        field,
                        xs.chunks(n).map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect(),
                    )
                })
            })
        }

        proptest! {
            #[test]
            fn charpoly_matches_cofactor_expansion(m in arb_matrix(Field::Rationals), t in -3i64..4) {
                prop_assert_eq!(m.charpoly().eval(&Field::Rationals.from_i64(t)), charpoly_at(&m, t));
            }

            #[test]
            fn charpoly_over_f3_matches(m in arb_matrix(Field::Prime(3)), t in 0i64..3) {
                prop_assert_eq!(m.charpoly().eval(&Field::Prime(3).from_i64(t)), charpoly_at(&m, t));
            }

            #[test]
            fn minpoly_annihilates_and_divides_charpoly(m in arb_matrix(Field::Prime(5))) {
                let mp = m.minpoly();
                prop_assert!(m.eval_poly(&mp).is_zero());
                prop_assert!(m.charpoly().rem(&mp).is_zero());
            }

            #[test]
            fn rank_nullity(m in arb_matrix(Field::Prime(2))) {
                prop_assert_eq!(m.rank() + m.kernel().len(), m.cols());
                for v in m.kernel() {
                    prop_assert!(m.apply(&v).iter().all(Scalar::is_zero));
                }
            }
        }
    }
}
