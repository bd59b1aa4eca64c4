//! One-shot verification of the chain-level identities on a single algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::bimodule::{Bimodule, Diagonal, EndBimodule, HomBimodule, Regular};
use super::hochschild::{hochschild_diff, hochschild_diff_diagonal, pi_map, theta, theta_chain_residual, Cochain};
use super::{maltese, tuples, AInfty, Slot};
use crate::error::Result;
use crate::scalar::Field;

/// A cochain with small random coefficients on every entry allowed by the degree.
pub fn random_cochain(a: &AInfty, target: &[u8], degree: u8, length: usize, rng: &mut ChaCha8Rng) -> Cochain {
    let f: Field = a.field();
    let mut c = Cochain::zero(f, degree, a.dim(), target.len(), length);
    for r in 0..=length {
        for w in tuples(a.dim(), r) {
            let want = degree ^ maltese(w.iter().map(|&i| a.degree(i)));
            let v = target
                .iter()
                .map(|&t| if t == want { f.from_i64(rng.gen_range(-2..=2)) } else { f.zero() })
                .collect();
            c.set(&w, v);
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainIdentityReport {
    pub name: String,
    pub field: String,
    pub dim: usize,
    pub length_cap: usize,
    pub relations_checked: usize,
    pub relation_residuals: usize,
    pub opposite_involutive: bool,
    pub opposite_equal: bool,
    pub cohomology_dim: Option<usize>,
    pub cohomology_associative: Option<bool>,
    pub cohomology_opposite: Option<bool>,
    pub diagonal_d_squared_zero: bool,
    pub diagonal_formulas_agree: bool,
    pub hom_d_squared_zero: bool,
    pub hom_matches_end: bool,
    pub theta_chain_residual_zero: bool,
    pub pi_theta: Option<bool>,
    /// Every computed component is exact; these are the lengths used for each check.
    pub exact_window: usize,
    pub hom_length: usize,
    pub theta_length: usize,
    pub anomaly: bool,
}

/// Runs every identity with cochains of length at most `length_cap` and random tests from `seed`.
pub fn chain_identity_report(a: &AInfty, length_cap: usize, seed: u64) -> Result<ChainIdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rel = a.check_relations(4.max(a.max_arity() + 1));
    let op = a.opposite();
    let coh = a.cohomology().ok();
    let coh_op = op.cohomology().ok();
    let diag = Diagonal(a);
    let reg = Regular(a);
    let hom = HomBimodule::new(a, &reg, &reg);
    let end = EndBimodule::new(a);

    let hom_length = length_cap.min(3);
    let theta_length = length_cap.min(3);
    let mut diagonal_d2 = true;
    let mut agree = true;
    let mut hom_d2 = true;
    for degree in 0..2 {
        let phi = random_cochain(a, a.degrees(), degree, length_cap, &mut rng);
        let d1 = hochschild_diff(&diag, &phi);
        agree &= d1 == hochschild_diff_diagonal(a, &phi);
        diagonal_d2 &= hochschild_diff(&diag, &d1).is_zero();
        let zeta = random_cochain(a, hom.degrees(), degree, hom_length, &mut rng);
        hom_d2 &= hochschild_diff(&hom, &hochschild_diff(&hom, &zeta)).is_zero();
    }

    let mut hom_matches_end = true;
    for k in 0..3 {
        for l in 0..3 - k {
            for left in tuples(a.dim(), k) {
                for right in tuples(a.dim(), l) {
                    for z in 0..hom.dim() {
                        let zeta = super::bimodule::basis(a.field(), hom.dim(), z);
                        hom_matches_end &= hom.act(&left, &zeta, &right) == end.act(&left, &zeta, &right);
                    }
                }
            }
        }
    }

    let mut theta_ok = true;
    let mut pi_ok = a.unit().map(|_| true);
    for c in 0..a.dim() {
        let cv = a.basis_vector(c);
        theta_ok &= theta_chain_residual(a, &end, &cv, theta_length)?.is_zero();
        if let (Some(ok), Some(e)) = (pi_ok.as_mut(), a.unit()) {
            let t = theta(a, &cv, 0)?;
            *ok &= pi_map(a, &t)? == a.mu_slots(&[Slot::B(e), Slot::B(c)]);
        }
    }

    let mut r = ChainIdentityReport {
        name: a.name.clone(),
        field: a.field().to_string(),
        dim: a.dim(),
        length_cap,
        relations_checked: rel.checked,
        relation_residuals: rel.residuals.len(),
        opposite_involutive: op.opposite().entries().eq(a.entries()),
        opposite_equal: op.entries().eq(a.entries()),
        cohomology_dim: coh.as_ref().map(|h| h.dim()),
        cohomology_associative: coh.as_ref().map(|h| h.is_associative()),
        cohomology_opposite: coh.as_ref().zip(coh_op.as_ref()).map(|(h, o)| h.is_graded_opposite_of(o)),
        diagonal_d_squared_zero: diagonal_d2,
        diagonal_formulas_agree: agree,
        hom_d_squared_zero: hom_d2,
        hom_matches_end,
        theta_chain_residual_zero: theta_ok,
        pi_theta: pi_ok,
        exact_window: length_cap,
        hom_length,
        theta_length,
        anomaly: false,
    };
    r.anomaly = !(r.relation_residuals == 0
        && r.opposite_involutive
        && r.cohomology_associative != Some(false)
        && r.cohomology_opposite != Some(false)
        && r.diagonal_d_squared_zero
        && r.diagonal_formulas_agree
        && r.hom_d_squared_zero
        && r.hom_matches_end
        && r.theta_chain_residual_zero
        && r.pi_theta != Some(false));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::super::corpus::*;
    use super::*;

    #[test]
    fn corpus_reports_are_clean() {
        for a in all() {
            let r = chain_identity_report(&a, 4, crate::DEFAULT_SEED).unwrap();
            assert!(!r.anomaly, "{r:?}");
            assert_eq!(r.pi_theta, Some(true));
        }
        let r = chain_identity_report(&exterior2(), 4, 1).unwrap();
        assert!(r.opposite_equal);
        assert_eq!(r.cohomology_dim, Some(4));
        let r = chain_identity_report(&upper_triangular(), 4, 1).unwrap();
        assert!(!r.opposite_equal);
    }

    #[test]
    fn corrupted_structure_is_flagged() {
        let mut a = upper_triangular();
        a.set_op(vec![2, 2], a.zero()).unwrap();
        let r = chain_identity_report(&a, 3, 1).unwrap();
        assert!(r.relation_residuals > 0);
        assert!(r.anomaly);
    }
}
