//! Quantum cohomology presentations of monotone toric manifolds, Jacobian rings of their
//! superpotentials, the closed-open map between them, and summand-by-summand reports.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::decompose::{generalized_eigenspace_dim, local_decompose_seeded};
use crate::algebra::linear::span_dim;
use crate::algebra::{bezout_idempotents, FiniteAlgebra, LocalFactor, Matrix};
use crate::error::{Error, Result};
use crate::grobner::{algebra_morphism, laurent_quotient, Morphism, QuotientAlgebra, QuotientOutcome};
use crate::laurent::{LaurentPoly, LaurentRing};
use crate::scalar::{Field, Scalar, UniPoly};
use crate::toric::{h2_lattice, minimal_chern, superpotential, DelzantPolytope, H2Lattice};
use crate::Settings;

/// `k[z^±] / (z_1 dW/dz_1, .., z_n dW/dz_n)`.
pub fn jacobian_ring(w: &LaurentPoly, budget: u64) -> Result<QuotientOutcome> {
    let gens: Vec<LaurentPoly> = (0..w.ring().nvars()).map(|i| w.log_derivative(i)).collect();
    laurent_quotient(w.ring(), &gens, budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QhVariant {
    /// Monomial relations `Z^A - 1`.
    Plain,
    /// Monomial relations `Z^(2A) - 1`; only meaningful over `F_2`.
    Mod2Weights,
}

/// `k[Z_1^±, .., Z_N^±] / (sum_j nu_j Z_j, Z^A - 1)` for `A` running over a lattice basis.
#[derive(Clone, Debug)]
pub struct QhPresentation {
    pub variant: QhVariant,
    pub ring: Arc<LaurentRing>,
    pub relations: Vec<LaurentPoly>,
    pub lattice: H2Lattice,
    pub algebra: QuotientAlgebra,
}

fn require_normalized(p: &DelzantPolytope) -> Result<()> {
    if p.is_normalized() {
        Ok(())
    } else {
        Err(Error::usage(format!("{}: polytope must be monotone-normalized (all lambda = 1)", p.name)))
    }
}

/// Relations of the presentation, in the order: linear components, then monomial relations.
pub fn qh_relations(
    p: &DelzantPolytope,
    ring: &Arc<LaurentRing>,
    lattice: &H2Lattice,
    variant: QhVariant,
) -> Vec<LaurentPoly> {
    let field = ring.field();
    let big_n = p.facets();
    let mut rels = Vec::new();
    for i in 0..p.dim {
        rels.push(LaurentPoly::from_terms(
            ring,
            (0..big_n).map(|j| {
                let mut e = vec![0; big_n];
                e[j] = 1;
                (field.from_i64(p.normals[j][i]), e)
            }),
        ));
    }
    let weight = match variant {
        QhVariant::Plain => 1,
        QhVariant::Mod2Weights => 2,
    };
    for a in &lattice.basis {
        let e: Vec<i64> = a.iter().map(|x| weight * x).collect();
        rels.push(LaurentPoly::from_terms(ring, [(field.one(), e), (-field.one(), vec![0; big_n])]));
    }
    rels
}

pub fn qh_presentation(p: &DelzantPolytope, field: Field, variant: QhVariant, budget: u64) -> Result<QhPresentation> {
    require_normalized(p)?;
    if variant == QhVariant::Mod2Weights && field != Field::Prime(2) {
        return Err(Error::usage("the weighted presentation is defined over F2 only"));
    }
    let lattice = h2_lattice(p)?;
    let ring = LaurentRing::numbered("Z", p.facets(), field);
    let relations = qh_relations(p, &ring, &lattice, variant);
    let algebra = laurent_quotient(&ring, &relations, budget)?.finite()?;
    Ok(QhPresentation { variant, ring, relations, lattice, algebra })
}

/// The closed-open map `Z_j -> z^(nu_j)` from the plain presentation to the Jacobian ring.
#[derive(Clone, Debug)]
pub struct Co0 {
    pub qh: QhPresentation,
    pub w: LaurentPoly,
    pub jac: QuotientAlgebra,
    pub morphism: Morphism,
}

impl Co0 {
    pub fn summary(&self) -> Co0Summary {
        Co0Summary {
            well_defined: self.morphism.well_defined,
            kernel_dim: self.morphism.kernel_dim,
            surjective: self.morphism.surjective,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Co0Summary {
    pub well_defined: bool,
    pub kernel_dim: Option<usize>,
    pub surjective: Option<bool>,
}

pub fn co0_map(p: &DelzantPolytope, field: Field, budget: u64) -> Result<Co0> {
    let qh = qh_presentation(p, field, QhVariant::Plain, budget)?;
    let w = superpotential(p, field)?;
    let jac = jacobian_ring(&w, budget)?.finite()?;
    let images: Vec<LaurentPoly> = p
        .normals
        .iter()
        .map(|nu| LaurentPoly::monomial(w.ring(), nu.clone(), field.one()))
        .collect();
    let morphism = algebra_morphism(&qh.ring, &qh.relations, &jac, &images, budget)?;
    Ok(Co0 { qh, w, jac, morphism })
}

/// `c_1 = sum_j Z_j` in the presentation.
pub fn c1_qh(qh: &QhPresentation) -> Result<Vec<Scalar>> {
    let field = qh.ring.field();
    let n = qh.ring.nvars();
    let sum = LaurentPoly::from_terms(
        &qh.ring,
        (0..n).map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            (field.one(), e)
        }),
    );
    qh.algebra.normal_form(&sum)
}

/// `c_1` on the Jacobian side is the class of `W`.
pub fn c1_jac(jac: &QuotientAlgebra, w: &LaurentPoly) -> Result<Vec<Scalar>> {
    jac.normal_form(w)
}

/// One block of the characteristic polynomial with its generalized eigenspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumBlock {
    /// Irreducible factor over `F_p`; over `Q` either `t - r` or the residual without rational roots.
    pub factor: UniPoly,
    pub multiplicity: usize,
    /// Nullity of `factor(M)^multiplicity`.
    pub eigenspace_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub charpoly: UniPoly,
    pub blocks: Vec<SpectrumBlock>,
}

impl Spectrum {
    /// Eigenvalues lying in the base field, with generalized eigenspace dimensions.
    pub fn rational_eigenvalues(&self) -> Vec<(Scalar, usize)> {
        self.blocks
            .iter()
            .filter(|b| b.factor.degree() == Some(1))
            .map(|b| (-&b.factor.coeff(0), b.eigenspace_dim))
            .collect()
    }
}

/// Characteristic polynomial of multiplication by `x`, split as far as the base field allows.
pub fn c1_spectrum(a: &FiniteAlgebra, x: &[Scalar], seed: u64) -> Result<Spectrum> {
    let m = a.mult_matrix(x);
    let charpoly = m.charpoly();
    let field = a.field();
    let factors: Vec<(UniPoly, usize)> = match field {
        Field::Prime(_) => charpoly.factor_seeded(seed)?,
        Field::Rationals => {
            let rr = charpoly.rational_roots()?;
            let mut fs: Vec<(UniPoly, usize)> = rr
                .roots
                .iter()
                .map(|(r, k)| (UniPoly::linear(&Scalar::Rat(r.clone())), *k))
                .collect();
            if rr.residual.degree().is_some_and(|d| d > 0) {
                fs.push((rr.residual.clone(), 1));
            }
            fs
        }
    };
    let blocks = factors
        .into_iter()
        .map(|(f, k)| {
            let eigenspace_dim = if f.degree() == Some(1) {
                generalized_eigenspace_dim(a, x, &-&f.coeff(0))
            } else {
                m.eval_poly(&f.pow(k)).kernel().len()
            };
            SpectrumBlock { factor: f, multiplicity: k, eigenspace_dim }
        })
        .collect();
    Ok(Spectrum { charpoly, blocks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub point: Vec<Scalar>,
    pub value: Scalar,
    /// Dimension of the local factor (its Milnor number).
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct CriticalLocus {
    pub factors: Vec<LocalFactor>,
    pub points: Vec<CriticalPoint>,
    /// `(dim, residue_degree)` for factors whose residue field is a proper extension.
    pub nonsplit: Vec<(usize, usize)>,
}

/// Critical points of `W` over a prime field, read off the local factors of its Jacobian ring.
pub fn critical_points(w: &LaurentPoly, jac: &QuotientAlgebra, seed: u64) -> Result<CriticalLocus> {
    let fa = jac.to_finite_algebra()?;
    let factors = local_decompose_seeded(&fa, seed)?;
    let mut points = Vec::new();
    let mut nonsplit = Vec::new();
    for f in &factors {
        match &f.point {
            Some(pt) => {
                for i in 0..w.ring().nvars() {
                    if !w.log_derivative(i).evaluate(pt)?.is_zero() {
                        return Err(Error::anomaly(format!("log-derivative {} does not vanish at a reported point", i + 1)));
                    }
                }
                points.push(CriticalPoint { point: pt.to_vec(), value: w.evaluate(pt)?, dim: f.dim });
            }
            None => nonsplit.push((f.dim, f.residue_degree)),
        }
    }
    Ok(CriticalLocus { factors, points, nonsplit })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandReport {
    pub dim: usize,
    pub residue_degree: Option<usize>,
    pub idempotent: Vec<String>,
    pub point: Option<Vec<String>>,
    pub critical_value: Option<String>,
    /// Rank defect of the closed-open map restricted to the matching summand.
    pub co0_kernel_dim: Option<usize>,
    pub verdict: String,
    pub statement: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    pub input: String,
    pub field: String,
    pub seed: u64,
    pub co0: Option<Co0Summary>,
    pub summands: Vec<SummandReport>,
    pub minimal_chern: Option<u64>,
    pub notes: Vec<String>,
    pub anomaly: bool,
}

pub const VERDICT_SPLIT: &str = "split-generates";
pub const VERDICT_NONSPLIT: &str = "not split over base field";

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

/// A summand `e * Jac` before it is matched with quantum cohomology.
struct JacSummand {
    e: Vec<Scalar>,
    dim: usize,
    residue_degree: Option<usize>,
    point: Option<Vec<Scalar>>,
    value: Option<Scalar>,
}

/// Over `Q`: generalized eigenspaces of `c_1` for its rational eigenvalues, plus the rest.
fn rational_summands(jac: &FiniteAlgebra, w: &LaurentPoly, c1: &[Scalar], seed: u64) -> Result<Vec<JacSummand>> {
    let spectrum = c1_spectrum(jac, c1, seed)?;
    let mut out = Vec::new();
    let mut rest = jac.unit().to_vec();
    for (lambda, _) in spectrum.rational_eigenvalues() {
        let split = bezout_idempotents(jac, c1, &lambda);
        rest = jac.sub(&rest, &split.e);
        let dim = jac.ideal_span(&split.e).len();
        // A rational point exists when every coordinate has a single rational eigenvalue here.
        let mut point = Some(Vec::new());
        for (_, z) in jac.coords() {
            let zm = jac.element_minpoly(&jac.mul(z, &split.e), &split.e);
            let rr = zm.rational_roots()?;
            match (rr.roots.as_slice(), rr.residual.degree(), point.as_mut()) {
                ([(r, _)], Some(0), Some(pt)) => pt.push(Scalar::Rat(r.clone())),
                _ => point = None,
            }
        }
        let value = match &point {
            Some(pt) => {
                let v = w.evaluate(pt)?;
                if v != lambda {
                    return Err(Error::anomaly(format!("critical value {v} differs from eigenvalue {lambda}")));
                }
                Some(v)
            }
            None => Some(lambda.clone()),
        };
        let residue_degree = point.as_ref().map(|_| 1);
        out.push(JacSummand { e: split.e, dim, residue_degree, point, value });
    }
    if !jac.is_zero(&rest) {
        let dim = jac.ideal_span(&rest).len();
        out.push(JacSummand { e: rest, dim, residue_degree: None, point: None, value: None });
    }
    Ok(out)
}

fn prime_summands(jac: &QuotientAlgebra, w: &LaurentPoly, c1: &[Scalar], seed: u64) -> Result<Vec<JacSummand>> {
    let fa = jac.to_finite_algebra()?;
    let locus = critical_points(w, jac, seed)?;
    let mut out = Vec::new();
    for f in locus.factors {
        let value = match &f.point {
            Some(pt) => {
                let v = w.evaluate(pt)?;
                // c_1 acts on a local factor with the critical value as its only eigenvalue.
                if generalized_eigenspace_dim(&fa, c1, &v) < f.dim {
                    return Err(Error::anomaly(format!("critical value {v} is not the c1-eigenvalue of its summand")));
                }
                Some(v)
            }
            None => None,
        };
        out.push(JacSummand {
            e: f.idempotent,
            dim: f.dim,
            residue_degree: Some(f.residue_degree),
            point: f.point,
            value,
        });
    }
    Ok(out)
}

fn summand_statement(s: &JacSummand, field: Field, co0: bool) -> (String, String) {
    match (s.residue_degree, &s.point) {
        (Some(1), Some(pt)) => {
            let loc = format!("({})", strings(pt).join(", "));
            let text = if co0 {
                format!(
                    "monotone fibre with local system {loc} split-generates this summand: the closed-open map is injective on the matching quantum cohomology summand"
                )
            } else {
                format!("critical point {loc} of W; Jacobian-ring summand only (no quantum cohomology comparison)")
            };
            (VERDICT_SPLIT.to_string(), text)
        }
        (Some(d), _) => {
            let ext = match field {
                Field::Prime(p) => format!("F_{}", (p as u128).pow(d as u32)),
                Field::Rationals => format!("a degree-{d} extension"),
            };
            (VERDICT_NONSPLIT.to_string(), format!("critical local system defined over {ext}, not split over base field"))
        }
        (None, _) => (
            VERDICT_NONSPLIT.to_string(),
            "c1-eigenvalues of this summand are not in the base field; critical local systems not split over base field"
                .to_string(),
        ),
    }
}

fn build_report(
    input: &str,
    jac: &QuotientAlgebra,
    w: &LaurentPoly,
    co0: Option<&Co0>,
    minimal_chern: Option<u64>,
    settings: Settings,
) -> Result<GenerationReport> {
    let field = jac.field();
    let c1 = c1_jac(jac, w)?;
    let pieces = match field {
        Field::Prime(_) => prime_summands(jac, w, &c1, settings.seed)?,
        Field::Rationals => rational_summands(&jac.to_finite_algebra()?, w, &c1, settings.seed)?,
    };
    let mut notes = Vec::new();
    let mut anomaly = false;
    let iso = co0.map(|c| c.morphism.is_isomorphism());
    if iso == Some(false) {
        anomaly = true;
        notes.push("closed-open map is not an isomorphism; summands are reported on the Jacobian side only".into());
    }
    let total: usize = pieces.iter().map(|s| s.dim).sum();
    if total != jac.dim() {
        return Err(Error::anomaly(format!("summand dimensions sum to {total}, algebra has dim {}", jac.dim())));
    }
    let mut summands = Vec::new();
    for s in &pieces {
        let co0_kernel_dim = match (co0, iso) {
            (Some(c), Some(true)) => Some(restricted_kernel_dim(c, &s.e)?),
            _ => None,
        };
        let (mut verdict, statement) = summand_statement(s, field, co0.is_some());
        if co0_kernel_dim.is_some_and(|k| k > 0) {
            anomaly = true;
            verdict = "closed-open map not injective on summand".into();
        }
        summands.push(SummandReport {
            dim: s.dim,
            residue_degree: s.residue_degree,
            idempotent: strings(&s.e),
            point: s.point.as_deref().map(strings),
            critical_value: s.value.as_ref().map(Scalar::to_string),
            co0_kernel_dim,
            verdict,
            statement,
        });
    }
    Ok(GenerationReport {
        input: input.to_string(),
        field: field.to_string(),
        seed: settings.seed,
        co0: co0.map(Co0::summary),
        summands,
        minimal_chern,
        notes,
        anomaly,
    })
}

/// Pulls the Jacobian idempotent back to quantum cohomology and measures the kernel of the
/// closed-open map on that summand.
fn restricted_kernel_dim(c: &Co0, e_jac: &[Scalar]) -> Result<usize> {
    let m: &Matrix = c.morphism.matrix.as_ref().expect("well-defined morphism");
    let domain = c.morphism.domain.as_ref().expect("well-defined morphism");
    let e_qh = m.solve(e_jac).ok_or_else(|| Error::anomaly("idempotent not in the image of the closed-open map"))?;
    let summand: Vec<Vec<Scalar>> = (0..domain.dim())
        .map(|i| {
            let mut b = vec![domain.field().zero(); domain.dim()];
            b[i] = domain.field().one();
            domain.mul(&e_qh, &b)
        })
        .collect();
    let qh_dim = span_dim(domain.field(), domain.dim(), &summand);
    let images: Vec<Vec<Scalar>> = summand.iter().map(|v| m.apply(v)).collect();
    Ok(qh_dim - span_dim(c.jac.field(), c.jac.dim(), &images))
}

/// Summand-by-summand split-generation report for a monotone toric manifold.
pub fn toric_generation_report(p: &DelzantPolytope, field: Field, settings: Settings) -> Result<GenerationReport> {
    let co0 = co0_map(p, field, settings.budget)?;
    let nx = minimal_chern(&co0.qh.lattice);
    build_report(&p.name, &co0.jac, &co0.w, Some(&co0), nx, settings)
}

/// Jacobian-side report for a superpotential given directly (no polytope).
pub fn superpotential_report(name: &str, w: &LaurentPoly, settings: Settings) -> Result<GenerationReport> {
    let jac = jacobian_ring(w, settings.budget)?.finite()?;
    build_report(name, &jac, w, None, None, settings)
}

/// `S / m^2` for `m = (z_1 - rho_1, .., z_n - rho_n)`.
#[derive(Clone, Debug)]
pub struct SModM2 {
    pub algebra: QuotientAlgebra,
    /// Coordinates of `z_i - rho_i`.
    pub sigma: Vec<Vec<Scalar>>,
    pub m_squared_zero: bool,
    /// `{1, sigma_i}` is a basis and `sigma_i sigma_j = 0`: the square-zero extension `k + k^n`.
    pub square_zero_table: bool,
}

pub fn s_mod_m2(field: Field, rho: &[Scalar], budget: u64) -> Result<SModM2> {
    let n = rho.len();
    if n == 0 {
        return Err(Error::usage("need at least one variable"));
    }
    if let Some(i) = rho.iter().position(Scalar::is_zero) {
        return Err(Error::usage(format!("monodromy entry {} is zero", i + 1)));
    }
    let ring = LaurentRing::numbered("z", n, field);
    let sig: Vec<LaurentPoly> = (0..n)
        .map(|i| &LaurentPoly::var(&ring, i) - &LaurentPoly::constant(&ring, rho[i].clone()))
        .collect();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i..n {
            gens.push(&sig[i] * &sig[j]);
        }
    }
    let algebra = laurent_quotient(&ring, &gens, budget)?.finite()?;
    let sigma: Vec<Vec<Scalar>> = sig.iter().map(|s| algebra.normal_form(s)).collect::<Result<_>>()?;
    let m_squared_zero = sigma
        .iter()
        .all(|a| sigma.iter().all(|b| algebra.mul(a, b).iter().all(Scalar::is_zero)));
    let mut basis = vec![algebra.unit()];
    basis.extend(sigma.iter().cloned());
    let square_zero_table = algebra.dim() == n + 1 && span_dim(field, algebra.dim(), &basis) == n + 1 && m_squared_zero;
    Ok(SModM2 { algebra, sigma, m_squared_zero, square_zero_table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::corpus::{cp, cp1_power};
    use crate::toric::classical_cohomology;
    use crate::DEFAULT_BUDGET;

    const B: u64 = DEFAULT_BUDGET;

    fn st() -> Settings {
        Settings::default()
    }

    fn quadric(field: Field) -> LaurentPoly {
        let r = LaurentRing::new(vec!["x".into(), "y".into(), "z".into()], field);
        LaurentPoly::from_terms(
            &r,
            [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, 0], [0, -1, -1]].map(|e| (field.one(), e.to_vec())),
        )
    }

    fn s(f: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn jacobian_examples() {
        let q = Field::Rationals;
        let r = LaurentRing::numbered("z", 1, q);
        let w = LaurentPoly::from_terms(&r, [(q.one(), vec![1]), (q.one(), vec![-1])]);
        let j = jacobian_ring(&w, B).unwrap().finite().unwrap();
        assert_eq!(j.dim(), 2);
        let f5 = Field::Prime(5);
        let j = jacobian_ring(&quadric(f5), B).unwrap().finite().unwrap();
        assert_eq!(j.dim(), 3);
        assert_eq!(j.monomial_class(&[3, 0, 0]).unwrap(), j.normal_form(&LaurentPoly::constant(j.laurent_ring().unwrap(), f5.from_i64(3))).unwrap());
        assert_eq!(jacobian_ring(&superpotential(&cp(2), Field::Prime(7)).unwrap(), B).unwrap().finite().unwrap().dim(), 3);
    }

    #[test]
    fn presentation_examples() {
        let f7 = Field::Prime(7);
        let qh = qh_presentation(&cp(2), f7, QhVariant::Plain, B).unwrap();
        assert_eq!(qh.algebra.dim(), 3);
        let z1 = qh.algebra.monomial_class(&[1, 0, 0]).unwrap();
        assert_eq!(qh.algebra.monomial_class(&[0, 0, 1]).unwrap(), z1);
        assert_eq!(qh.algebra.monomial_class(&[3, 0, 0]).unwrap(), qh.algebra.unit());

        let f2 = Field::Prime(2);
        let r = qh_presentation(&cp(2), f2, QhVariant::Mod2Weights, B).unwrap();
        assert_eq!(r.algebra.dim(), 6);
        assert_eq!(r.algebra.monomial_class(&[6, 0, 0]).unwrap(), r.algebra.unit());
        assert_ne!(r.algebra.monomial_class(&[3, 0, 0]).unwrap(), r.algebra.unit());

        let pp = qh_presentation(&cp1_power(2), f2, QhVariant::Plain, B).unwrap();
        assert_eq!(pp.algebra.dim(), 4);
        assert_eq!(pp.algebra.monomial_class(&[2, 0, 0, 0]).unwrap(), pp.algebra.unit());
        assert_eq!(pp.algebra.monomial_class(&[0, 0, 1, 0]).unwrap(), pp.algebra.monomial_class(&[1, 0, 0, 0]).unwrap());

        assert!(matches!(qh_presentation(&cp(2), f7, QhVariant::Mod2Weights, B), Err(Error::Usage(_))));
    }

    #[test]
    fn lattice_basis_monomials_generate_all_monomial_relations() {
        // (Z^A - 1) Z^B + (Z^B - 1) = Z^(A+B) - 1, so sums of lattice vectors are relations too.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for p in [cp(2), cp1_power(2), cp1_power(3)] {
            let qh = qh_presentation(&p, Field::Prime(3), QhVariant::Plain, B).unwrap();
            for _ in 0..20 {
                let mut e = vec![0i64; p.facets()];
                for a in &qh.lattice.basis {
                    let k: i64 = rng.gen_range(-3..4);
                    for (x, y) in e.iter_mut().zip(a) {
                        *x += k * y;
                    }
                }
                assert_eq!(qh.algebra.monomial_class(&e).unwrap(), qh.algebra.unit());
            }
        }
    }

    #[test]
    fn co0_examples() {
        let m = co0_map(&cp(2), Field::Prime(7), B).unwrap();
        assert!(m.morphism.is_isomorphism());
        assert_eq!(m.jac.dim(), 3);
        let m = co0_map(&cp(1), Field::Rationals, B).unwrap();
        assert!(m.morphism.is_isomorphism());
        let m = co0_map(&cp(3), Field::Prime(2), B).unwrap();
        assert!(m.morphism.is_isomorphism());
        assert_eq!(m.jac.dim(), 4);
    }

    #[test]
    fn c1_examples() {
        let f7 = Field::Prime(7);
        let m = co0_map(&cp(2), f7, B).unwrap();
        let c1 = c1_jac(&m.jac, &m.w).unwrap();
        let z = m.jac.monomial_class(&[1, 0]).unwrap();
        assert_eq!(c1, z.iter().map(|x| x * &f7.from_i64(3)).collect::<Vec<_>>());
        let q = Field::Rationals;
        let m = co0_map(&cp(1), q, B).unwrap();
        let z = m.jac.monomial_class(&[1]).unwrap();
        assert_eq!(c1_jac(&m.jac, &m.w).unwrap(), z.iter().map(|x| x * &q.from_i64(2)).collect::<Vec<_>>());
        // the image of c1 on the QH side matches W under the map
        let c1q = c1_qh(&m.qh).unwrap();
        assert_eq!(m.morphism.matrix.as_ref().unwrap().apply(&c1q), c1_jac(&m.jac, &m.w).unwrap());

        let f5 = Field::Prime(5);
        let w = quadric(f5);
        let j = jacobian_ring(&w, B).unwrap().finite().unwrap();
        let x6 = j.monomial_class(&[1, 0, 0]).unwrap().iter().map(|c| c * &f5.from_i64(6)).collect::<Vec<_>>();
        assert_eq!(c1_jac(&j, &w).unwrap(), x6);
    }

    #[test]
    fn spectrum_examples() {
        let q = Field::Rationals;
        let m = co0_map(&cp(1), q, B).unwrap();
        let fa = m.jac.to_finite_algebra().unwrap();
        let sp = c1_spectrum(&fa, &c1_jac(&m.jac, &m.w).unwrap(), 0).unwrap();
        assert_eq!(sp.charpoly, UniPoly::from_i64s(q, &[-4, 0, 1]));
        assert_eq!(sp.rational_eigenvalues(), vec![(q.from_i64(2), 1), (q.from_i64(-2), 1)]);

        let m = co0_map(&cp(2), q, B).unwrap();
        let fa = m.jac.to_finite_algebra().unwrap();
        let sp = c1_spectrum(&fa, &c1_jac(&m.jac, &m.w).unwrap(), 0).unwrap();
        assert_eq!(sp.charpoly, UniPoly::from_i64s(q, &[-27, 0, 0, 1]));
        assert_eq!(sp.rational_eigenvalues(), vec![(q.from_i64(3), 1)]);
        assert_eq!(sp.blocks[1].factor, UniPoly::from_i64s(q, &[9, 3, 1]));
        assert_eq!(sp.blocks.iter().map(|b| b.eigenspace_dim).sum::<usize>(), 3);

        let f7 = Field::Prime(7);
        let m = co0_map(&cp(2), f7, B).unwrap();
        let fa = m.jac.to_finite_algebra().unwrap();
        let sp = c1_spectrum(&fa, &c1_jac(&m.jac, &m.w).unwrap(), 0).unwrap();
        assert_eq!(sp.charpoly, UniPoly::from_i64s(f7, &[-6, 0, 0, 1]));
        assert_eq!(sp.rational_eigenvalues(), vec![(f7.from_i64(3), 1), (f7.from_i64(5), 1), (f7.from_i64(6), 1)]);
    }

    #[test]
    fn critical_point_examples() {
        let f7 = Field::Prime(7);
        let w = superpotential(&cp(2), f7).unwrap();
        let j = jacobian_ring(&w, B).unwrap().finite().unwrap();
        let cl = critical_points(&w, &j, 0).unwrap();
        let mut pts: Vec<Vec<Scalar>> = cl.points.iter().map(|c| c.point.clone()).collect();
        pts.sort_by_key(|p| p[0].residue());
        assert_eq!(pts, vec![s(f7, &[1, 1]), s(f7, &[2, 2]), s(f7, &[4, 4])]);

        let f2 = Field::Prime(2);
        let w = superpotential(&cp(1), f2).unwrap();
        let j = jacobian_ring(&w, B).unwrap().finite().unwrap();
        let cl = critical_points(&w, &j, 0).unwrap();
        assert_eq!(cl.points, vec![CriticalPoint { point: s(f2, &[1]), value: f2.zero(), dim: 2 }]);

        let f5 = Field::Prime(5);
        let w = quadric(f5);
        let j = jacobian_ring(&w, B).unwrap().finite().unwrap();
        let cl = critical_points(&w, &j, 0).unwrap();
        assert_eq!(cl.points.len(), 1);
        assert_eq!(cl.points[0].point, s(f5, &[2, 4, 2]));
        assert_eq!(cl.nonsplit, vec![(2, 2)]);
    }

    /// Brute-force oracle: points of `(F_p^x)^n` where every log-derivative vanishes.
    fn brute_critical(w: &LaurentPoly) -> Vec<Vec<Scalar>> {
        let f = w.field();
        let units: Vec<Scalar> = f.elements().into_iter().filter(|x| !x.is_zero()).collect();
        let n = w.ring().nvars();
        let mut pts: Vec<Vec<Scalar>> = vec![vec![]];
        for _ in 0..n {
            pts = pts
                .into_iter()
                .flat_map(|p| units.iter().map(move |u| [p.clone(), vec![u.clone()]].concat()))
                .collect();
        }
        pts.into_iter()
            .filter(|p| (0..n).all(|i| w.log_derivative(i).evaluate(p).unwrap().is_zero()))
            .collect()
    }

    #[test]
    fn critical_points_match_brute_force() {
        for p in [5, 7, 11, 13, 31] {
            let f = Field::Prime(p);
            for w in [quadric(f), superpotential(&cp(2), f).unwrap(), superpotential(&cp1_power(2), f).unwrap()] {
                let j = jacobian_ring(&w, B).unwrap().finite().unwrap();
                let cl = critical_points(&w, &j, 0).unwrap();
                let mut found: Vec<Vec<Scalar>> = cl.points.iter().map(|c| c.point.clone()).collect();
                let mut brute = brute_critical(&w);
                let key = |v: &Vec<Scalar>| v.iter().map(|x| x.residue().unwrap()).collect::<Vec<_>>();
                found.sort_by_key(key);
                brute.sort_by_key(key);
                assert_eq!(found, brute, "p = {p}, W = {w}");
            }
        }
    }

    #[test]
    fn generation_report_examples() {
        let r = toric_generation_report(&cp(2), Field::Prime(7), st()).unwrap();
        assert!(!r.anomaly);
        assert_eq!(r.summands.len(), 3);
        assert!(r.summands.iter().all(|s| s.verdict == VERDICT_SPLIT && s.co0_kernel_dim == Some(0)));
        let mut vals: Vec<String> = r.summands.iter().map(|s| s.critical_value.clone().unwrap()).collect();
        vals.sort();
        assert_eq!(vals, vec!["3", "5", "6"]);
        assert_eq!(r.minimal_chern, Some(3));

        let r = toric_generation_report(&cp(2), Field::Prime(2), st()).unwrap();
        assert_eq!(r.summands.iter().map(|s| s.dim).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(r.summands[1].residue_degree, Some(2));
        assert_eq!(r.summands[1].statement, "critical local system defined over F_4, not split over base field");

        let r = toric_generation_report(&cp(1), Field::Rationals, st()).unwrap();
        assert_eq!(r.summands.len(), 2);
        assert_eq!(
            r.summands.iter().map(|s| s.critical_value.clone().unwrap()).collect::<Vec<_>>(),
            vec!["2", "-2"]
        );
        assert_eq!(r.summands[0].point, Some(vec!["1".to_string()]));

        let r = toric_generation_report(&cp(2), Field::Rationals, st()).unwrap();
        assert_eq!(r.summands.iter().map(|s| s.dim).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(r.summands[1].verdict, VERDICT_NONSPLIT);
    }

    #[test]
    fn quadric_report_has_no_qh_side() {
        let r = superpotential_report("quadric", &quadric(Field::Prime(31)), st()).unwrap();
        assert!(r.co0.is_none());
        assert_eq!(r.summands.len(), 3);
        assert!(r.summands.iter().all(|s| s.residue_degree == Some(1)));
    }

    #[test]
    fn s_mod_m2_examples() {
        let f3 = Field::Prime(3);
        let a = s_mod_m2(f3, &s(f3, &[1]), B).unwrap();
        assert_eq!(a.algebra.dim(), 2);
        assert!(a.m_squared_zero && a.square_zero_table);
        let f2 = Field::Prime(2);
        assert_eq!(s_mod_m2(f2, &s(f2, &[1, 1]), B).unwrap().algebra.dim(), 3);
        let f7 = Field::Prime(7);
        let a = s_mod_m2(f7, &s(f7, &[2]), B).unwrap();
        assert_eq!(a.algebra.dim(), 2);
        assert!(a.square_zero_table);
        assert!(matches!(s_mod_m2(f7, &s(f7, &[0]), B), Err(Error::Usage(_))));
    }

    #[test]
    fn corpus_dimension_identities() {
        for p in crate::toric::corpus::all() {
            for f in [Field::Rationals, Field::Prime(2), Field::Prime(3)] {
                let jac = jacobian_ring(&superpotential(&p, f).unwrap(), B).unwrap().finite().unwrap();
                let h: usize = classical_cohomology(&p, f, B).unwrap().iter().sum();
                assert_eq!(jac.dim(), h, "{} over {f}", p.name);
            }
            let plain = qh_presentation(&p, Field::Prime(2), QhVariant::Plain, B).unwrap();
            let weighted = qh_presentation(&p, Field::Prime(2), QhVariant::Mod2Weights, B).unwrap();
            assert_eq!(weighted.algebra.dim(), plain.algebra.dim() << (p.facets() - p.dim));
        }
    }
}
