//! Small A-infinity algebras over `Q` used in tests, the CLI and the data files.

use super::AInfty;
use crate::scalar::{Field, Scalar};

const Q: Field = Field::Rationals;

fn vec_of(n: usize, entries: &[(usize, i64)]) -> Vec<Scalar> {
    let mut v = vec![Q.zero(); n];
    for &(i, c) in entries {
        v[i] = Q.from_i64(c);
    }
    v
}

type Sparse<'a> = &'a [(usize, i64)];

/// Builds a dg algebra from a sparse product table `(a, b) -> a*b` and differential.
fn dga(name: &str, degrees: Vec<u8>, d: &[(usize, Sparse)], prod: &[((usize, usize), Sparse)]) -> AInfty {
    let n = degrees.len();
    let diff = |i: usize| d.iter().find(|(j, _)| *j == i).map_or_else(|| vec![Q.zero(); n], |(_, e)| vec_of(n, e));
    let product = |a: usize, b: usize| {
        if a == 0 {
            return vec_of(n, &[(b, 1)]);
        }
        if b == 0 {
            return vec_of(n, &[(a, 1)]);
        }
        prod.iter().find(|(k, _)| *k == (a, b)).map_or_else(|| vec![Q.zero(); n], |(_, e)| vec_of(n, e))
    };
    AInfty::from_dga(name, Q, degrees, Some(0), &diff, &product).expect("corpus algebra is well formed")
}

/// `Lambda(x)` with `|x| = 1`; basis `1, x`.
pub fn exterior1() -> AInfty {
    dga("Lambda(x)", vec![0, 1], &[], &[])
}

/// `Lambda(x, y)`; basis `1, x, y, xy`.
pub fn exterior2() -> AInfty {
    dga(
        "Lambda(x,y)",
        vec![0, 1, 1, 0],
        &[],
        &[((1, 2), &[(3, 1)]), ((2, 1), &[(3, -1)])],
    )
}

/// Upper-triangular 2x2 matrices, basis `1, e12, e22`, all even.
pub fn upper_triangular() -> AInfty {
    dga(
        "upper-triangular",
        vec![0, 0, 0],
        &[],
        &[((1, 2), &[(1, 1)]), ((2, 2), &[(2, 1)])],
    )
}

/// Basis `1, x, y` with `|x| = 0`, `|y| = 1`, `dx = y` and all other products zero.
pub fn cdga() -> AInfty {
    dga("acyclic-cdga", vec![0, 0, 1], &[(1, &[(2, 1)])], &[])
}

/// `Lambda(x)` with the extra operation `mu^3(x, x, x) = 1`.
pub fn exterior1_mu3() -> AInfty {
    let mut a = exterior1();
    a.name = "Lambda(x)+mu3".to_string();
    a.set_op(vec![1, 1, 1], vec_of(2, &[(0, 1)])).expect("degree is even");
    a
}

pub fn all() -> Vec<AInfty> {
    vec![exterior1(), exterior2(), upper_triangular(), cdga(), exterior1_mu3()]
}
