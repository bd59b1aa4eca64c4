//! Characteristic-two check that the real locus of a monotone toric manifold split-generates:
//! the squaring map on the weighted presentation must kill nothing outside the kernel of the
//! reduction to quantum cohomology.

use serde::Serialize;

use crate::algebra::decompose::local_decompose_seeded;
use crate::algebra::linear::{containment_witness, same_span};
use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::grobner::algebra_morphism;
use crate::laurent::LaurentPoly;
use crate::quantum::{qh_presentation, QhPresentation, QhVariant};
use crate::scalar::{Field, Scalar};
use crate::toric::{minimal_chern, DelzantPolytope};
use crate::Settings;

pub const VERDICT_REAL: &str = "real locus split-generates F(X)_0 over char 2";
pub const VERDICT_INAPPLICABLE: &str = "criterion inapplicable (minimal Maslov < 2)";

/// Both presentations over `F_2` with the reduction `pi` and the squaring map `f_R` on the
/// weighted one.
#[derive(Clone, Debug)]
pub struct RealGenData {
    pub qh_r: QhPresentation,
    pub qh: QhPresentation,
    pub pi: Matrix,
    pub frobenius: Matrix,
    pub pi_kernel: Vec<Vec<Scalar>>,
    pub frobenius_kernel: Vec<Vec<Scalar>>,
    /// Element of `ker f_R` outside `ker pi`, if any.
    pub witness: Option<Vec<Scalar>>,
    pub minimal_chern: Option<u64>,
}

impl RealGenData {
    pub fn contained(&self) -> bool {
        self.witness.is_none()
    }

    pub fn kernels_equal(&self) -> bool {
        same_span(Field::Prime(2), self.qh_r.algebra.dim(), &self.pi_kernel, &self.frobenius_kernel)
    }
}

/// The reduction `Z_j -> Z_j` from the weighted presentation onto the plain one.
pub fn reduction_pi(qh_r: &QhPresentation, qh: &QhPresentation, budget: u64) -> Result<Matrix> {
    let images: Vec<LaurentPoly> = (0..qh.ring.nvars()).map(|j| LaurentPoly::var(&qh.ring, j)).collect();
    let m = algebra_morphism(&qh_r.ring, &qh_r.relations, &qh.algebra, &images, budget)?;
    if !m.well_defined || m.surjective != Some(true) {
        return Err(Error::anomaly(format!("reduction map is not a surjective algebra map: {:?}", m.failure)));
    }
    Ok(m.matrix.expect("well-defined morphism"))
}

pub fn real_gen_data(p: &DelzantPolytope, budget: u64) -> Result<RealGenData> {
    let f2 = Field::Prime(2);
    let qh_r = qh_presentation(p, f2, QhVariant::Mod2Weights, budget)?;
    let qh = qh_presentation(p, f2, QhVariant::Plain, budget)?;
    let pi = reduction_pi(&qh_r, &qh, budget)?;
    let frobenius = qh_r.algebra.to_finite_algebra()?.frobenius_matrix()?;
    let pi_kernel = pi.kernel();
    let frobenius_kernel = frobenius.kernel();
    let witness = containment_witness(f2, qh_r.algebra.dim(), &frobenius_kernel, &pi_kernel);
    let minimal_chern = minimal_chern(&qh.lattice);
    Ok(RealGenData { qh_r, qh, pi, frobenius, pi_kernel, frobenius_kernel, witness, minimal_chern })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealSummand {
    pub dim: usize,
    pub residue_degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealGenReport {
    pub input: String,
    pub field: String,
    pub seed: u64,
    pub minimal_chern: Option<u64>,
    pub qh_dim: usize,
    pub qh_r_dim: usize,
    pub pi_kernel_dim: usize,
    pub frobenius_kernel_dim: usize,
    pub containment: bool,
    pub kernels_equal: bool,
    pub witness: Option<Vec<String>>,
    /// Local factors of quantum cohomology over `F_2`.
    pub summands: Vec<RealSummand>,
    pub verdict: String,
    pub anomaly: bool,
}

pub fn real_generation_report(p: &DelzantPolytope, settings: Settings) -> Result<RealGenReport> {
    let d = real_gen_data(p, settings.budget)?;
    let factors = local_decompose_seeded(&d.qh.algebra.to_finite_algebra()?, settings.seed)?;
    let applicable = d.minimal_chern.is_none_or(|n| n >= 2);
    let (verdict, anomaly) = match (applicable, d.contained()) {
        (false, _) => (VERDICT_INAPPLICABLE.to_string(), false),
        (true, true) => (VERDICT_REAL.to_string(), false),
        (true, false) => ("kernel of squaring not contained in kernel of reduction".to_string(), true),
    };
    Ok(RealGenReport {
        input: p.name.clone(),
        field: Field::Prime(2).to_string(),
        seed: settings.seed,
        minimal_chern: d.minimal_chern,
        qh_dim: d.qh.algebra.dim(),
        qh_r_dim: d.qh_r.algebra.dim(),
        pi_kernel_dim: d.pi_kernel.len(),
        frobenius_kernel_dim: d.frobenius_kernel.len(),
        containment: d.contained(),
        kernels_equal: d.kernels_equal(),
        witness: d.witness.as_ref().map(|w| w.iter().map(Scalar::to_string).collect()),
        summands: factors.iter().map(|f| RealSummand { dim: f.dim, residue_degree: f.residue_degree }).collect(),
        verdict,
        anomaly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::linear::contains;
    use crate::toric::corpus::{cp, cp1_power};
    use crate::DEFAULT_BUDGET;

    const F2: Field = Field::Prime(2);

    fn z_power(d: &RealGenData, k: i64) -> Vec<Scalar> {
        let mut e = vec![0; d.qh_r.ring.nvars()];
        e[0] = k;
        d.qh_r.algebra.monomial_class(&e).unwrap()
    }

    fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    #[test]
    fn cp2_kernels() {
        let d = real_gen_data(&cp(2), DEFAULT_BUDGET).unwrap();
        assert_eq!((d.qh_r.algebra.dim(), d.qh.algebra.dim()), (6, 3));
        assert_eq!(d.pi_kernel.len(), 3);
        assert_eq!(d.frobenius_kernel.len(), 3);
        // (Z^3 + 1) * {1, Z, Z^2}
        let expected: Vec<Vec<Scalar>> = (0..3).map(|k| add(&z_power(&d, k + 3), &z_power(&d, k))).collect();
        assert!(same_span(F2, 6, &expected, &d.pi_kernel));
        assert!(d.kernels_equal());
        // squaring sends Z^k to Z^(2k mod 6)
        for k in 0..6 {
            assert_eq!(d.frobenius.apply(&z_power(&d, k)), z_power(&d, (2 * k) % 6));
        }
    }

    #[test]
    fn cp1_kernels() {
        let d = real_gen_data(&cp(1), DEFAULT_BUDGET).unwrap();
        assert_eq!((d.qh_r.algebra.dim(), d.qh.algebra.dim()), (4, 2));
        let expected = vec![add(&z_power(&d, 0), &z_power(&d, 2)), add(&z_power(&d, 1), &z_power(&d, 3))];
        assert!(same_span(F2, 4, &expected, &d.frobenius_kernel));
        assert!(contains(F2, 4, &d.pi_kernel, &d.frobenius_kernel));
        assert_eq!(d.pi_kernel.len(), 2);
    }

    #[test]
    fn cp1xcp1_kernels() {
        let d = real_gen_data(&cp1_power(2), DEFAULT_BUDGET).unwrap();
        assert_eq!((d.qh_r.algebra.dim(), d.qh.algebra.dim()), (16, 4));
        assert_eq!(d.pi_kernel.len(), 12);
        assert!(d.contained());
        assert!(d.kernels_equal());
    }

    #[test]
    fn pi_forgets_weights() {
        for p in [cp(2), cp1_power(2)] {
            let d = real_gen_data(&p, DEFAULT_BUDGET).unwrap();
            let a = &d.qh_r.algebra;
            for w in &d.qh_r.lattice.basis {
                let za = a.monomial_class(w).unwrap();
                for i in 0..a.dim() {
                    let mut x = vec![F2.zero(); a.dim()];
                    x[i] = F2.one();
                    assert_eq!(d.pi.apply(&a.mul(&za, &x)), d.pi.apply(&x));
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive_and_unital() {
        let d = real_gen_data(&cp1_power(2), DEFAULT_BUDGET).unwrap();
        let a = d.qh_r.algebra.to_finite_algebra().unwrap();
        assert_eq!(d.frobenius.apply(a.unit()), a.unit().to_vec());
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let (x, y) = (a.basis_vector(i), a.basis_vector(j));
                let s = a.add(&x, &y);
                assert_eq!(a.mul(&s, &s), a.add(&d.frobenius.apply(&x), &d.frobenius.apply(&y)));
            }
        }
    }

    #[test]
    fn reports() {
        let s = Settings::default();
        for (p, nx) in [(cp(2), 3), (cp(3), 4), (cp1_power(2), 2)] {
            let r = real_generation_report(&p, s).unwrap();
            assert_eq!(r.minimal_chern, Some(nx));
            assert_eq!(r.verdict, VERDICT_REAL);
            assert!(r.containment && r.kernels_equal && !r.anomaly);
            assert_eq!(r.qh_r_dim, r.qh_dim << (p.facets() - p.dim));
        }
        let r = real_generation_report(&cp1_power(2), s).unwrap();
        assert_eq!(r.summands, vec![RealSummand { dim: 4, residue_degree: 1 }]);
        // the one-point blow-up of CP2 has a sphere of Chern number one
        let blowup = DelzantPolytope::with_unit_lambdas("F1", vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, -1]]);
        let r = real_generation_report(&blowup, s).unwrap();
        assert_eq!(r.minimal_chern, Some(1));
        assert_eq!(r.verdict, VERDICT_INAPPLICABLE);
    }
}
