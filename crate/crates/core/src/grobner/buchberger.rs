//! Buchberger's algorithm with the product and chain criteria, followed by full interreduction.

use std::collections::BTreeSet;

use super::poly::{coprime, divides, mono_div, mono_lcm, MonomialOrder, Poly};
use crate::error::{Error, Result};

/// Reduced Groebner basis: monic, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub basis: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].lm().iter().all(|&e| e == 0)
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        p.reduce(&self.basis)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }
}

fn spoly(f: &Poly, g: &Poly) -> Poly {
    let l = mono_lcm(f.lm(), g.lm());
    let a = f.scale_term(&mono_div(&l, f.lm()), &f.lc().inv().expect("nonzero lead"));
    a.sub_scaled(g, &mono_div(&l, g.lm()), &g.lc().inv().expect("nonzero lead"))
}

/// Reduced Groebner basis of the ideal generated by `gens` (all in the same ring and order).
///
/// `budget` caps the number of S-polynomial reductions; exceeding it is a resource error.
pub fn buchberger(gens: &[Poly], order: MonomialOrder, budget: u64) -> Result<GroebnerBasis> {
    let mut g: Vec<Poly> = Vec::new();
    for p in gens {
        let p = p.with_order(order);
        if !p.is_zero() {
            g.push(p.monic());
        }
    }
    if g.is_empty() {
        return Err(Error::usage("Groebner basis needs at least one nonzero generator"));
    }
    if g.iter().any(|p| p.lm().iter().all(|&e| e == 0)) {
        return Ok(unit_basis(&g[0], order));
    }
    // Pending pairs keyed so that the pair with the smallest lcm is processed first.
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    let mut reductions = 0u64;
    loop {
        let next = pairs.iter().copied().min_by(|a, b| {
            let la = mono_lcm(g[a.0].lm(), g[a.1].lm());
            let lb = mono_lcm(g[b.0].lm(), g[b.1].lm());
            order.cmp(&la, &lb).then(a.cmp(b))
        });
        let Some((i, j)) = next else { break };
        pairs.remove(&(i, j));
        if coprime(g[i].lm(), g[j].lm()) {
            continue;
        }
        let l = mono_lcm(g[i].lm(), g[j].lm());
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && divides(g[k].lm(), &l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        reductions += 1;
        if reductions > budget {
            return Err(Error::Resource(format!(
                "Groebner basis exceeded {budget} S-pair reductions (basis size {}, {} pairs pending)",
                g.len(),
                pairs.len()
            )));
        }
        let r = spoly(&g[i], &g[j]).reduce(&g);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.lm().iter().all(|&e| e == 0) {
            return Ok(unit_basis(&r, order));
        }
        let k = g.len();
        g.push(r);
        for i in 0..k {
            pairs.insert((i, k));
        }
    }
    Ok(GroebnerBasis { order, basis: interreduce(g) })
}

fn unit_basis(template: &Poly, order: MonomialOrder) -> GroebnerBasis {
    let one = Poly::monomial(
        template.field(),
        template.nvars(),
        order,
        vec![0; template.nvars()],
        template.field().one(),
    );
    GroebnerBasis { order, basis: vec![one] }
}

fn interreduce(g: Vec<Poly>) -> Vec<Poly> {
    let order = g[0].order();
    // Drop elements whose leading monomial is divisible by another's (keep first of equal ones).
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(j, q)| {
            j != i && divides(q.lm(), p.lm()) && (q.lm() != p.lm() || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let lead = Poly::monomial(
            minimal[i].field(),
            minimal[i].nvars(),
            order,
            minimal[i].lm().to_vec(),
            minimal[i].lc().clone(),
        );
        let tail = minimal[i].sub(&lead).reduce(&others);
        out.push(lead.add(&tail).monic());
    }
    out.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    out
}
