//! Finite-dimensional quotients of polynomial and Laurent polynomial rings.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::buchberger::{buchberger, GroebnerBasis};
use super::poly::{divides, MonomialOrder, Poly};
use crate::algebra::{FiniteAlgebra, Matrix};
use crate::error::{Error, Result};
use crate::laurent::{write_monomial, LaurentPoly, LaurentRing, TermJson};
use crate::scalar::{Field, Scalar};

/// Where a quotient came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// `k[z_1^±, .., z_n^±] / (gens)`, encoded with one inverse variable per `z_i`.
    Laurent { ring: Arc<LaurentRing>, gens: Vec<LaurentPoly> },
    /// `k[x_1, .., x_m] / (gens)`.
    Polynomial { vars: Vec<String>, gens: Vec<Poly> },
}

/// A finite-dimensional quotient with its staircase basis and multiplication matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientAlgebra {
    field: Field,
    source: Source,
    vars: Vec<String>,
    gb: GroebnerBasis,
    staircase: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    mult: Vec<Matrix>,
    /// Multiplication matrix of each staircase monomial.
    left: Vec<Matrix>,
}

/// Result of building a quotient: infinite-dimensional quotients are an outcome, not an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientOutcome {
    Finite(QuotientAlgebra),
    Infinite {
        /// Encoded variables with no pure power among the leading monomials.
        free_variables: Vec<String>,
        gb: GroebnerBasis,
    },
}

impl QuotientOutcome {
    pub fn is_finite(&self) -> bool {
        matches!(self, QuotientOutcome::Finite(_))
    }

    /// The finite algebra, or a domain error naming the free directions.
    pub fn finite(self) -> Result<QuotientAlgebra> {
        match self {
            QuotientOutcome::Finite(q) => Ok(q),
            QuotientOutcome::Infinite { free_variables, .. } => Err(Error::domain(format!(
                "quotient is infinite-dimensional (no pure power of {})",
                free_variables.join(", ")
            ))),
        }
    }
}

fn inverse_name(v: &str) -> String {
    format!("{v}_inv")
}

/// Encodes a Laurent polynomial in `2n` variables ordered `z_1_inv .. z_n_inv, z_1 .. z_n`;
/// negative exponents become powers of the inverses. Listing the inverses first makes them
/// larger in degrevlex, so staircases prefer positive powers of the `z_i`.
fn encode_laurent(p: &LaurentPoly, order: MonomialOrder) -> Poly {
    let n = p.ring().nvars();
    Poly::from_terms(
        p.field(),
        2 * n,
        order,
        p.terms().iter().map(|(e, c)| {
            let mut m = vec![0u32; 2 * n];
            for (i, &k) in e.iter().enumerate() {
                if k >= 0 {
                    m[n + i] = k as u32;
                } else {
                    m[i] = (-k) as u32;
                }
            }
            (m, c.clone())
        }),
    )
}

/// Quotient of the Laurent ring by `gens`.
///
/// Each generator is multiplied by the monomial making its exponents nonnegative (a unit, so
/// the ideal is unchanged) and the relations `z_i * z_i_inv - 1` are added.
pub fn laurent_quotient(ring: &Arc<LaurentRing>, gens: &[LaurentPoly], budget: u64) -> Result<QuotientOutcome> {
    for g in gens {
        if g.ring() != ring {
            return Err(Error::usage("generator lives in a different Laurent ring"));
        }
    }
    let n = ring.nvars();
    let order = MonomialOrder::DegRevLex;
    let field = ring.field();
    let mut polys = Vec::with_capacity(gens.len() + n);
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let shift: Vec<i64> = g.min_exponents().iter().map(|m| -m).collect();
        polys.push(encode_laurent(&g.shift(&shift), order));
    }
    for i in 0..n {
        let mut m = vec![0u32; 2 * n];
        m[i] = 1;
        m[n + i] = 1;
        polys.push(Poly::from_terms(field, 2 * n, order, [(m, field.one()), (vec![0; 2 * n], -field.one())]));
    }
    let mut vars: Vec<String> = ring.vars().iter().map(|v| inverse_name(v)).collect();
    vars.extend(ring.vars().iter().cloned());
    let gb = buchberger(&polys, order, budget)?;
    finish(field, Source::Laurent { ring: ring.clone(), gens: gens.to_vec() }, vars, gb)
}

/// Quotient of an ordinary polynomial ring.
pub fn polynomial_quotient(vars: Vec<String>, gens: Vec<Poly>, order: MonomialOrder, budget: u64) -> Result<QuotientOutcome> {
    let first = gens.first().ok_or_else(|| Error::usage("need at least one generator"))?;
    let field = first.field();
    if gens.iter().any(|g| g.nvars() != vars.len() || g.field() != field) {
        return Err(Error::usage("generators do not match the polynomial ring"));
    }
    let nonzero: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let gb = if nonzero.is_empty() {
        GroebnerBasis { order, basis: Vec::new() }
    } else {
        buchberger(&nonzero, order, budget)?
    };
    finish(field, Source::Polynomial { vars: vars.clone(), gens }, vars, gb)
}

fn finish(field: Field, source: Source, vars: Vec<String>, gb: GroebnerBasis) -> Result<QuotientOutcome> {
    let m = vars.len();
    let order = gb.order;
    let leads: Vec<&[u32]> = gb.basis.iter().map(|g| g.lm()).collect();
    let unit_ideal = leads.iter().any(|l| l.iter().all(|&e| e == 0));
    let free: Vec<String> = (0..m)
        .filter(|&i| {
            !leads
                .iter()
                .any(|l| l[i] > 0 && l.iter().enumerate().all(|(j, &e)| j == i || e == 0))
        })
        .map(|i| vars[i].clone())
        .collect();
    if !free.is_empty() && !unit_ideal {
        return Ok(QuotientOutcome::Infinite { free_variables: free, gb });
    }
    let standard = |mono: &[u32]| !leads.iter().any(|l| divides(l, mono));
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut frontier = Vec::new();
    let zero = vec![0u32; m];
    if standard(&zero) {
        seen.insert(zero.clone());
        frontier.push(zero);
    }
    while let Some(mono) = frontier.pop() {
        for i in 0..m {
            let mut next = mono.clone();
            next[i] += 1;
            if standard(&next) && seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let mut staircase: Vec<Vec<u32>> = seen.into_iter().collect();
    staircase.sort_by(|a, b| order.cmp(a, b));
    let index: HashMap<Vec<u32>, usize> = staircase.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut q = QuotientAlgebra { field, source, vars, gb, staircase, index, mult: Vec::new(), left: Vec::new() };
    let d = q.dim();
    for v in 0..m {
        let cols: Vec<Vec<Scalar>> = q
            .staircase
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t[v] += 1;
                q.normal_form_poly(&Poly::monomial(field, m, order, t, field.one()))
            })
            .collect();
        q.mult.push(Matrix::from_columns(field, d, &cols));
    }
    // The staircase is an order ideal sorted by degree, so s - e_v comes before s.
    for i in 0..d {
        let s = q.staircase[i].clone();
        let m = match s.iter().position(|&e| e > 0) {
            None => Matrix::identity(field, d),
            Some(v) => {
                let mut prev = s.clone();
                prev[v] -= 1;
                q.mult[v].mul(&q.left[q.index[&prev]])
            }
        };
        q.left.push(m);
    }
    Ok(QuotientOutcome::Finite(q))
}

impl QuotientAlgebra {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.staircase.len()
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Encoded polynomial variables (Laurent sources: `z_i_inv` then `z_i`).
    pub fn encoded_vars(&self) -> &[String] {
        &self.vars
    }

    pub fn staircase(&self) -> &[Vec<u32>] {
        &self.staircase
    }

    /// Multiplication matrix of encoded variable `v`.
    pub fn var_matrix(&self, v: usize) -> &Matrix {
        &self.mult[v]
    }

    /// Multiplication by the Laurent variable `z_i` (or its inverse).
    pub fn laurent_var_matrix(&self, i: usize, inverse: bool) -> Result<&Matrix> {
        let n = self.laurent_ring().ok_or_else(|| Error::usage("not a Laurent quotient"))?.nvars();
        Ok(&self.mult[if inverse { i } else { n + i }])
    }

    pub fn laurent_ring(&self) -> Option<&Arc<LaurentRing>> {
        match &self.source {
            Source::Laurent { ring, .. } => Some(ring),
            Source::Polynomial { .. } => None,
        }
    }

    /// Staircase monomials as Laurent exponent vectors (Laurent sources only).
    pub fn laurent_staircase(&self) -> Option<Vec<Vec<i64>>> {
        let n = self.laurent_ring()?.nvars();
        Some(
            self.staircase
                .iter()
                .map(|s| (0..n).map(|i| s[n + i] as i64 - s[i] as i64).collect())
                .collect(),
        )
    }

    pub fn staircase_labels(&self) -> Vec<String> {
        struct Mono<'a>(&'a [String], Vec<i64>);
        impl fmt::Display for Mono<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_monomial(f, self.0, &self.1)
            }
        }
        match (&self.source, self.laurent_staircase()) {
            (Source::Laurent { ring, .. }, Some(ls)) => {
                ls.into_iter().map(|e| Mono(ring.vars(), e).to_string()).collect()
            }
            _ => self
                .staircase
                .iter()
                .map(|s| Mono(&self.vars, s.iter().map(|&e| e as i64).collect()).to_string())
                .collect(),
        }
    }

    pub fn unit(&self) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        if let Some(&i) = self.index.get(&vec![0; self.vars.len()]) {
            v[i] = self.field.one();
        }
        v
    }

    pub fn normal_form_poly(&self, p: &Poly) -> Vec<Scalar> {
        let r = self.gb.reduce(&p.with_order(self.gb.order));
        let mut v = vec![self.field.zero(); self.dim()];
        for (m, c) in r.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Coordinates of a Laurent polynomial from the source ring.
    pub fn normal_form(&self, p: &LaurentPoly) -> Result<Vec<Scalar>> {
        match &self.source {
            Source::Laurent { ring, .. } if ring == p.ring() => {
                Ok(self.normal_form_poly(&encode_laurent(p, self.gb.order)))
            }
            _ => Err(Error::usage("polynomial is not in this quotient's Laurent ring")),
        }
    }

    /// Coordinates of the class of the Laurent monomial `z^e`.
    pub fn monomial_class(&self, e: &[i64]) -> Result<Vec<Scalar>> {
        let ring = self.laurent_ring().ok_or_else(|| Error::usage("not a Laurent quotient"))?;
        self.normal_form(&LaurentPoly::monomial(ring, e.to_vec(), self.field.one()))
    }

    /// Multiplication matrix of an arbitrary element.
    pub fn element_matrix(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim(), self.dim());
        for (c, l) in a.iter().zip(&self.left) {
            if !c.is_zero() {
                m = m.add(&l.scale(c));
            }
        }
        m
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (c, l) in a.iter().zip(&self.left) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(l.apply(b)) {
                *o = &*o + &(c * &x);
            }
        }
        out
    }

    /// Structure-constant form; designated coordinates are the classes of the ring variables.
    pub fn to_finite_algebra(&self) -> Result<FiniteAlgebra> {
        let left = self.left.clone();
        let coords: Vec<(String, Vec<Scalar>)> = match &self.source {
            Source::Laurent { ring, .. } => ring
                .vars()
                .iter()
                .enumerate()
                .map(|(i, v)| Ok((v.clone(), self.normal_form(&LaurentPoly::var(ring, i))?)))
                .collect::<Result<_>>()?,
            Source::Polynomial { vars, .. } => vars
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let mut m = vec![0; vars.len()];
                    m[i] = 1;
                    let p = Poly::monomial(self.field, vars.len(), self.gb.order, m, self.field.one());
                    (v.clone(), self.normal_form_poly(&p))
                })
                .collect(),
        };
        Ok(FiniteAlgebra::new(self.field, self.staircase_labels(), left, self.unit())?.with_coords(coords))
    }

    /// Number of staircase monomials in each total degree (polynomial sources: the Hilbert function).
    pub fn degree_counts(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for s in &self.staircase {
            let d = s.iter().sum::<u32>() as usize;
            if out.len() <= d {
                out.resize(d + 1, 0);
            }
            out[d] += 1;
        }
        out
    }

    pub fn to_json(&self) -> PresentationJson {
        let (variables, relations) = match &self.source {
            Source::Laurent { ring, gens } => (
                ring.vars().to_vec(),
                gens.iter().map(|g| g.to_json().terms).collect(),
            ),
            Source::Polynomial { vars, gens } => (
                vars.clone(),
                gens.iter()
                    .map(|g| {
                        g.terms()
                            .iter()
                            .map(|(m, c)| TermJson { coeff: c.to_string(), exps: m.iter().map(|&e| e as i64).collect() })
                            .collect()
                    })
                    .collect(),
            ),
        };
        PresentationJson {
            kind: match self.source {
                Source::Laurent { .. } => "laurent".into(),
                Source::Polynomial { .. } => "polynomial".into(),
            },
            variables,
            field: self.field.to_string(),
            relations,
            dim: self.dim(),
            staircase: self.staircase_labels(),
        }
    }
}

/// Serialized presentation; re-ingesting it recomputes the same staircase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub kind: String,
    pub variables: Vec<String>,
    pub field: String,
    pub relations: Vec<Vec<TermJson>>,
    pub dim: usize,
    pub staircase: Vec<String>,
}

impl PresentationJson {
    /// Rebuilds the quotient from the variables and relations (dim and staircase are ignored).
    pub fn rebuild(&self, budget: u64) -> Result<QuotientOutcome> {
        let field: Field = self.field.parse()?;
        match self.kind.as_str() {
            "laurent" => {
                let ring = LaurentRing::new(self.variables.clone(), field);
                let gens = self
                    .relations
                    .iter()
                    .map(|ts| {
                        crate::laurent::LaurentJson {
                            variables: self.variables.clone(),
                            field: Some(self.field.clone()),
                            terms: ts.clone(),
                        }
                        .into_poly(None)
                        .map(|p| LaurentPoly::from_terms(&ring, p.terms().iter().map(|(e, c)| (c.clone(), e.clone()))))
                    })
                    .collect::<Result<Vec<_>>>()?;
                laurent_quotient(&ring, &gens, budget)
            }
            "polynomial" => {
                let n = self.variables.len();
                let order = MonomialOrder::DegRevLex;
                let mut gens = Vec::new();
                for ts in &self.relations {
                    let mut terms = Vec::new();
                    for t in ts {
                        if t.exps.len() != n || t.exps.iter().any(|&e| e < 0) {
                            return Err(Error::parse("polynomial relation with bad exponents"));
                        }
                        terms.push((t.exps.iter().map(|&e| e as u32).collect(), field.parse_scalar(&t.coeff)?));
                    }
                    gens.push(Poly::from_terms(field, n, order, terms));
                }
                polynomial_quotient(self.variables.clone(), gens, order, budget)
            }
            other => Err(Error::parse(format!("unknown presentation kind {other:?}"))),
        }
    }
}
