//! Algebra maps out of Laurent presentations into finite quotients.

use std::sync::Arc;

use super::quotient::{laurent_quotient, QuotientAlgebra};
use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, LaurentRing};
use crate::scalar::Scalar;

/// Why a proposed map fails to be well defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismFailure {
    /// Relation with this index does not map to zero; `image` is its normal form.
    RelationNotPreserved { index: usize, image: Vec<Scalar> },
    /// A generator that must be inverted has a non-invertible image.
    NotInvertible { generator: usize },
}

/// Outcome of [`algebra_morphism`]. When well defined, `matrix` has one column per domain
/// staircase monomial, expressed in the codomain staircase basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub well_defined: bool,
    pub failure: Option<MorphismFailure>,
    pub domain: Option<QuotientAlgebra>,
    pub matrix: Option<Matrix>,
    pub kernel_dim: Option<usize>,
    pub surjective: Option<bool>,
}

impl Morphism {
    pub fn is_isomorphism(&self) -> bool {
        self.well_defined && self.kernel_dim == Some(0) && self.surjective == Some(true)
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.matrix.as_ref().map(Matrix::kernel).unwrap_or_default()
    }
}

/// Evaluates Laurent polynomials of the domain ring at chosen images in `codomain`.
struct Evaluator<'a> {
    codomain: &'a QuotientAlgebra,
    images: Vec<Vec<Scalar>>,
    inverses: Vec<Option<Vec<Scalar>>>,
}

impl Evaluator<'_> {
    fn eval(&self, p: &LaurentPoly) -> std::result::Result<Vec<Scalar>, usize> {
        let b = self.codomain;
        let mut acc = vec![b.field().zero(); b.dim()];
        for (e, c) in p.terms() {
            let mut t = b.unit();
            for (i, &k) in e.iter().enumerate() {
                let base = if k >= 0 {
                    &self.images[i]
                } else {
                    self.inverses[i].as_ref().ok_or(i)?
                };
                for _ in 0..k.unsigned_abs() {
                    t = b.mul(&t, base);
                }
            }
            for (a, x) in acc.iter_mut().zip(&t) {
                *a = &*a + &(c * x);
            }
        }
        Ok(acc)
    }
}

/// Map from `k[Z^±]/(relations)` to `codomain` sending generator `i` to `images[i]`.
///
/// Relations are checked first (in order); the linear map is then taken on a computed
/// staircase basis of the domain quotient.
pub fn algebra_morphism(
    domain_ring: &Arc<LaurentRing>,
    relations: &[LaurentPoly],
    codomain: &QuotientAlgebra,
    images: &[LaurentPoly],
    budget: u64,
) -> Result<Morphism> {
    if images.len() != domain_ring.nvars() {
        return Err(Error::usage(format!(
            "need one image per domain generator: {} generators, {} images",
            domain_ring.nvars(),
            images.len()
        )));
    }
    let field = codomain.field();
    if domain_ring.field() != field {
        return Err(Error::usage("domain and codomain fields differ"));
    }
    let image_vecs: Vec<Vec<Scalar>> = images.iter().map(|p| codomain.normal_form(p)).collect::<Result<_>>()?;
    let inverses: Vec<Option<Vec<Scalar>>> = image_vecs
        .iter()
        .map(|v| codomain.element_matrix(v).solve(&codomain.unit()))
        .collect();
    let ev = Evaluator { codomain, images: image_vecs, inverses };
    let fail = |failure| Morphism {
        well_defined: false,
        failure: Some(failure),
        domain: None,
        matrix: None,
        kernel_dim: None,
        surjective: None,
    };
    for (index, r) in relations.iter().enumerate() {
        match ev.eval(r) {
            Ok(v) if v.iter().all(Scalar::is_zero) => {}
            Ok(image) => return Ok(fail(MorphismFailure::RelationNotPreserved { index, image })),
            Err(generator) => return Ok(fail(MorphismFailure::NotInvertible { generator })),
        }
    }
    if let Some(generator) = ev.inverses.iter().position(Option::is_none) {
        return Ok(fail(MorphismFailure::NotInvertible { generator }));
    }
    let domain = laurent_quotient(domain_ring, relations, budget)?.finite()?;
    let ring = domain_ring.clone();
    let cols: Vec<Vec<Scalar>> = domain
        .laurent_staircase()
        .expect("Laurent domain")
        .into_iter()
        .map(|e| {
            ev.eval(&LaurentPoly::monomial(&ring, e, field.one()))
                .map_err(|_| Error::anomaly("inverse vanished after relation check"))
        })
        .collect::<Result<_>>()?;
    let matrix = Matrix::from_columns(field, codomain.dim(), &cols);
    let rank = matrix.rank();
    Ok(Morphism {
        well_defined: true,
        failure: None,
        kernel_dim: Some(domain.dim() - rank),
        surjective: Some(rank == codomain.dim()),
        domain: Some(domain),
        matrix: Some(matrix),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::DEFAULT_BUDGET;

    fn lp(r: &Arc<LaurentRing>, terms: &[(i64, &[i64])]) -> LaurentPoly {
        LaurentPoly::from_terms(r, terms.iter().map(|(c, e)| (r.field().from_i64(*c), e.to_vec())))
    }

    #[test]
    fn identity_is_an_isomorphism() {
        let f = Field::Prime(5);
        let r = LaurentRing::numbered("z", 2, f);
        let rels = vec![lp(&r, &[(1, &[2, 0]), (-1, &[0, 1])]), lp(&r, &[(1, &[0, 3]), (-2, &[0, 0])])];
        let a = laurent_quotient(&r, &rels, DEFAULT_BUDGET).unwrap().finite().unwrap();
        let imgs: Vec<LaurentPoly> = (0..2).map(|i| LaurentPoly::var(&r, i)).collect();
        let m = algebra_morphism(&r, &rels, &a, &imgs, DEFAULT_BUDGET).unwrap();
        assert!(m.is_isomorphism());
        assert_eq!(m.matrix.unwrap(), Matrix::identity(f, a.dim()));
    }

    #[test]
    fn cp2_presentation_maps_onto_jacobian() {
        let f = Field::Prime(7);
        let dom = LaurentRing::numbered("Z", 1, f);
        let rels = vec![lp(&dom, &[(1, &[3]), (-1, &[0])])];
        let cod = LaurentRing::numbered("z", 2, f);
        let jac = laurent_quotient(
            &cod,
            &[lp(&cod, &[(1, &[1, 0]), (-1, &[-1, -1])]), lp(&cod, &[(1, &[0, 1]), (-1, &[-1, -1])])],
            DEFAULT_BUDGET,
        )
        .unwrap()
        .finite()
        .unwrap();
        let m = algebra_morphism(&dom, &rels, &jac, &[LaurentPoly::var(&cod, 0)], DEFAULT_BUDGET).unwrap();
        assert!(m.well_defined);
        assert_eq!(m.kernel_dim, Some(0));
        assert_eq!(m.surjective, Some(true));
    }

    #[test]
    fn violated_relation_is_reported_not_raised() {
        let q = Field::Rationals;
        let dom = LaurentRing::numbered("Z", 1, q);
        let rels = vec![lp(&dom, &[(1, &[2]), (-1, &[0])])];
        let pt = LaurentRing::numbered("w", 1, q);
        let k = laurent_quotient(&pt, &[lp(&pt, &[(1, &[1]), (-1, &[0])])], DEFAULT_BUDGET).unwrap().finite().unwrap();
        let m = algebra_morphism(&dom, &rels, &k, &[LaurentPoly::zero(&pt)], DEFAULT_BUDGET).unwrap();
        assert!(!m.well_defined);
        assert_eq!(
            m.failure,
            Some(MorphismFailure::RelationNotPreserved { index: 0, image: vec![q.from_i64(-1)] })
        );
    }
}
