use std::fmt::Write as _;
use std::path::Path;

use floergen_core::ainfty::report::chain_identity_report;
use floergen_core::ainfty::AInfty;
use floergen_core::algebra::decompose::local_decompose_seeded;
use floergen_core::algebra::{madic_profile, FiniteAlgebra};
use floergen_core::grobner::QuotientAlgebra;
use floergen_core::laurent::LaurentPoly;
use floergen_core::quantum::{
    c1_jac, c1_qh, c1_spectrum, co0_map, jacobian_ring, qh_presentation, s_mod_m2, superpotential_report,
    toric_generation_report, GenerationReport, QhVariant,
};
use floergen_core::realgen::real_generation_report;
use floergen_core::toric::{
    classical_cohomology, h2_lattice, minimal_chern, monotone_normalize, primitive_collections,
    fmt_q as q, real_cohomology_dims, superpotential as toric_superpotential, validate as toric_validate, DelzantPolytope,
};
use floergen_core::{Error, Field, Result, Scalar};
use serde_json::{json, Value};

use crate::{Opts, Output, Variant};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn raw_polytope(o: &Opts) -> Result<DelzantPolytope> {
    let path = o.polytope.as_ref().ok_or_else(|| Error::Usage("this command needs --polytope".into()))?;
    DelzantPolytope::from_json_str(&read(path)?)
}

/// Validated and monotone-normalized.
fn polytope(o: &Opts) -> Result<DelzantPolytope> {
    monotone_normalize(&raw_polytope(o)?)
}

/// The superpotential from `--superpotential`, or the one of `--polytope`.
fn potential(o: &Opts) -> Result<(String, LaurentPoly, Option<DelzantPolytope>)> {
    match (&o.superpotential, &o.polytope) {
        (Some(_), Some(_)) => Err(Error::Usage("give either --superpotential or --polytope, not both".into())),
        (Some(path), None) => {
            let field = o.field.as_deref().map(str::parse::<Field>).transpose()?;
            let w = LaurentPoly::from_json_str(&read(path)?, field)?;
            let name = path.file_stem().map_or("W".into(), |s| s.to_string_lossy().into_owned());
            Ok((name, w, None))
        }
        (None, Some(_)) => {
            let p = polytope(o)?;
            let w = toric_superpotential(&p, o.field()?)?;
            Ok((p.name.clone(), w, Some(p)))
        }
        (None, None) => Err(Error::Usage("this command needs --superpotential or --polytope".into())),
    }
}

fn strs(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

fn tuple(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

fn finite(a: &QuotientAlgebra) -> Result<FiniteAlgebra> {
    a.to_finite_algebra()
}

pub fn validate(o: &Opts) -> Result<Output> {
    let raw = raw_polytope(o)?;
    let v = toric_validate(&raw)?;
    let p = monotone_normalize(&raw)?;
    let lattice = h2_lattice(&p)?;
    let nx = minimal_chern(&lattice);
    let prim = primitive_collections(&v);
    let norm = p.normalization.clone().expect("set by normalization");
    let vertices: Vec<Vec<String>> = v.vertices.iter().map(|x| x.iter().map(q).collect()).collect();
    let incidence: Vec<Vec<usize>> = v.incidence.iter().map(|s| s.iter().map(|i| i + 1).collect()).collect();
    let prim1: Vec<Vec<usize>> = prim.iter().map(|s| s.iter().map(|i| i + 1).collect()).collect();
    let translation: Vec<String> = norm.translation.iter().map(q).collect();

    let mut t = String::new();
    writeln!(t, "polytope: {}", raw.name).unwrap();
    writeln!(t, "dimension: {}", raw.dim).unwrap();
    writeln!(t, "facets: {}", raw.facets()).unwrap();
    writeln!(t, "vertices: {}", vertices.len()).unwrap();
    for (x, s) in vertices.iter().zip(&incidence) {
        writeln!(t, "  {} on facets {:?}", tuple(x), s).unwrap();
    }
    writeln!(t, "Delzant: yes").unwrap();
    writeln!(t, "monotone: yes (translation {}, scale {})", tuple(&translation), q(&norm.scale)).unwrap();
    writeln!(t, "H2 lattice basis: {:?}", lattice.basis).unwrap();
    writeln!(t, "minimal Chern number: {}", nx.map_or("none".into(), |n| n.to_string())).unwrap();
    writeln!(t, "primitive collections: {prim1:?}").unwrap();
    let json = json!({
        "polytope": raw.name,
        "dim": raw.dim,
        "facets": raw.facets(),
        "vertices": vertices,
        "incidence": incidence,
        "delzant": true,
        "monotone": true,
        "translation": translation,
        "scale": q(&norm.scale),
        "h2_lattice": lattice.basis,
        "minimal_chern": nx,
        "primitive_collections": prim1,
    });
    Ok(Output { text: t, json, anomaly: false })
}

pub fn cohomology(o: &Opts) -> Result<Output> {
    let p = raw_polytope(o)?;
    let v = toric_validate(&p)?;
    let field = o.field()?;
    let dims = classical_cohomology(&p, field, o.budget)?;
    let over_q = classical_cohomology(&p, Field::Rationals, o.budget)?;
    let over_f2 = classical_cohomology(&p, Field::Prime(2), o.budget)?;
    let real = real_cohomology_dims(&p, o.budget)?;
    let total: usize = dims.iter().sum();
    let anomaly = over_q != over_f2 || over_q != real || total != v.vertices.len();
    let mut t = String::new();
    writeln!(t, "polytope: {}", p.name).unwrap();
    writeln!(t, "field: {field}").unwrap();
    writeln!(t, "H^(2k)(X) dims: {dims:?}").unwrap();
    writeln!(t, "total: {total}").unwrap();
    writeln!(t, "H^k(real locus; F2) dims: {real:?}").unwrap();
    writeln!(t, "vertices: {}", v.vertices.len()).unwrap();
    writeln!(t, "Q and F2 dims agree with real-locus dims: {}", if anomaly { "no" } else { "yes" }).unwrap();
    let json = json!({
        "polytope": p.name,
        "field": field.to_string(),
        "dims": dims,
        "dims_q": over_q,
        "dims_f2": over_f2,
        "real_dims_f2": real,
        "total": total,
        "vertices": v.vertices.len(),
        "anomaly": anomaly,
    });
    Ok(Output { text: t, json, anomaly })
}

pub fn superpotential(o: &Opts) -> Result<Output> {
    let p = polytope(o)?;
    let field = o.field()?;
    let w = toric_superpotential(&p, field)?;
    let text = format!("polytope: {}\nfield: {field}\nW = {w}\n", p.name);
    let json = json!({"polytope": p.name, "field": field.to_string(), "superpotential": w.to_json()});
    Ok(Output { text, json, anomaly: false })
}

fn element_lines(t: &mut String, fa: &FiniteAlgebra, named: &[(String, Vec<Scalar>)]) -> Vec<Value> {
    let mut js = Vec::new();
    for (name, v) in named {
        writeln!(t, "  {name} = {}", fa.format_element(v)).unwrap();
        js.push(json!({"element": name, "class": strs(v), "text": fa.format_element(v)}));
    }
    js
}

pub fn jac(o: &Opts) -> Result<Output> {
    let (name, w, _) = potential(o)?;
    let field = w.field();
    let j = jacobian_ring(&w, o.budget)?.finite()?;
    let fa = finite(&j)?;
    let ring = w.ring().clone();
    let mut named = Vec::new();
    for (i, v) in ring.vars().iter().enumerate() {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        named.push((v.clone(), j.monomial_class(&e)?));
        e[i] = -1;
        named.push((format!("{v}^-1"), j.monomial_class(&e)?));
    }
    named.push(("W".into(), c1_jac(&j, &w)?));
    let mut t = String::new();
    writeln!(t, "input: {name}").unwrap();
    writeln!(t, "field: {field}").unwrap();
    writeln!(t, "W = {w}").unwrap();
    writeln!(t, "dim: {}", j.dim()).unwrap();
    writeln!(t, "basis: {}", j.staircase_labels().join(", ")).unwrap();
    writeln!(t, "classes:").unwrap();
    let classes = element_lines(&mut t, &fa, &named);
    let json = json!({
        "input": name,
        "field": field.to_string(),
        "dim": j.dim(),
        "basis": j.staircase_labels(),
        "classes": classes,
        "presentation": j.to_json(),
    });
    Ok(Output { text: t, json, anomaly: false })
}

pub fn qh(o: &Opts, variant: Variant) -> Result<Output> {
    let p = polytope(o)?;
    let field = o.field()?;
    let v = match variant {
        Variant::Plain => QhVariant::Plain,
        Variant::Mod2 => QhVariant::Mod2Weights,
    };
    let pres = qh_presentation(&p, field, v, o.budget)?;
    let fa = finite(&pres.algebra)?;
    let c1 = c1_qh(&pres)?;
    let mut t = String::new();
    writeln!(t, "polytope: {}", p.name).unwrap();
    writeln!(t, "field: {field}").unwrap();
    writeln!(t, "variant: {}", match variant { Variant::Plain => "plain", Variant::Mod2 => "mod2" }).unwrap();
    writeln!(t, "relations:").unwrap();
    for r in &pres.relations {
        writeln!(t, "  {r}").unwrap();
    }
    writeln!(t, "H2 lattice basis: {:?}", pres.lattice.basis).unwrap();
    writeln!(t, "dim: {}", pres.algebra.dim()).unwrap();
    writeln!(t, "basis: {}", pres.algebra.staircase_labels().join(", ")).unwrap();
    writeln!(t, "c1 = {}", fa.format_element(&c1)).unwrap();
    let json = json!({
        "polytope": p.name,
        "field": field.to_string(),
        "variant": v,
        "relations": pres.relations.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "h2_lattice": pres.lattice.basis,
        "dim": pres.algebra.dim(),
        "basis": pres.algebra.staircase_labels(),
        "c1": strs(&c1),
        "presentation": pres.algebra.to_json(),
    });
    Ok(Output { text: t, json, anomaly: false })
}

pub fn co0(o: &Opts) -> Result<Output> {
    let p = polytope(o)?;
    let field = o.field()?;
    let c = co0_map(&p, field, o.budget)?;
    let s = c.summary();
    let jfa = finite(&c.jac)?;
    let mut t = String::new();
    writeln!(t, "polytope: {}", p.name).unwrap();
    writeln!(t, "field: {field}").unwrap();
    writeln!(t, "W = {}", c.w).unwrap();
    writeln!(t, "dim QH: {}", c.qh.algebra.dim()).unwrap();
    writeln!(t, "dim Jac: {}", c.jac.dim()).unwrap();
    writeln!(t, "images:").unwrap();
    let mut images = Vec::new();
    for (j, nu) in p.normals.iter().enumerate() {
        let img = c.jac.monomial_class(nu)?;
        writeln!(t, "  Z{} -> {}", j + 1, jfa.format_element(&img)).unwrap();
        images.push(json!({"generator": format!("Z{}", j + 1), "image": strs(&img)}));
    }
    let mut c1_to_w = None;
    if let Some(m) = &c.morphism.matrix {
        let ok = m.apply(&c1_qh(&c.qh)?) == c1_jac(&c.jac, &c.w)?;
        writeln!(t, "c1 -> W: {}", if ok { "yes" } else { "no" }).unwrap();
        c1_to_w = Some(ok);
    }
    writeln!(t, "well defined: {}", s.well_defined).unwrap();
    writeln!(t, "kernel dim: {}", s.kernel_dim.map_or("n/a".into(), |k| k.to_string())).unwrap();
    writeln!(t, "surjective: {}", s.surjective.map_or("n/a".into(), |k| k.to_string())).unwrap();
    let iso = c.morphism.is_isomorphism();
    writeln!(t, "isomorphism: {iso}").unwrap();
    let anomaly = !iso || c1_to_w == Some(false);
    let json = json!({
        "polytope": p.name,
        "field": field.to_string(),
        "qh_dim": c.qh.algebra.dim(),
        "jac_dim": c.jac.dim(),
        "images": images,
        "c1_to_w": c1_to_w,
        "summary": s,
        "isomorphism": iso,
    });
    Ok(Output { text: t, json, anomaly })
}

pub fn spectrum(o: &Opts) -> Result<Output> {
    let (name, w, _) = potential(o)?;
    let field = w.field();
    let j = jacobian_ring(&w, o.budget)?.finite()?;
    let fa = finite(&j)?;
    let c1 = c1_jac(&j, &w)?;
    let sp = c1_spectrum(&fa, &c1, o.seed)?;
    let mut t = String::new();
    writeln!(t, "input: {name}").unwrap();
    writeln!(t, "field: {field}").unwrap();
    writeln!(t, "characteristic polynomial of c1: {}", sp.charpoly).unwrap();
    writeln!(t, "blocks:").unwrap();
    let mut blocks = Vec::new();
    for b in &sp.blocks {
        writeln!(t, "  ({})^{}  generalized eigenspace dim {}", b.factor, b.multiplicity, b.eigenspace_dim).unwrap();
        blocks.push(json!({"factor": b.factor.to_string(), "multiplicity": b.multiplicity, "eigenspace_dim": b.eigenspace_dim}));
    }
    let eig: Vec<(String, usize)> = sp.rational_eigenvalues().into_iter().map(|(l, d)| (l.to_string(), d)).collect();
    writeln!(
        t,
        "eigenvalues in {field}: {}",
        eig.iter().map(|(l, d)| format!("{l} (dim {d})")).collect::<Vec<_>>().join(", ")
    )
    .unwrap();
    let json = json!({
        "input": name,
        "field": field.to_string(),
        "seed": o.seed,
        "charpoly": sp.charpoly.to_string(),
        "blocks": blocks,
        "eigenvalues": eig.iter().map(|(l, d)| json!({"value": l, "dim": d})).collect::<Vec<_>>(),
    });
    Ok(Output { text: t, json, anomaly: false })
}

pub fn decompose(o: &Opts) -> Result<Output> {
    let (name, w, _) = potential(o)?;
    let field = w.field();
    if field == Field::Rationals {
        return Err(Error::Usage("decompose needs a prime field (--field F<p>); over Q use spectrum or toric-gen".into()));
    }
    let j = jacobian_ring(&w, o.budget)?.finite()?;
    let fa = finite(&j)?;
    let factors = local_decompose_seeded(&fa, o.seed)?;
    let mut t = String::new();
    writeln!(t, "input: {name}").unwrap();
    writeln!(t, "field: {field}").unwrap();
    writeln!(t, "dim: {}", j.dim()).unwrap();
    writeln!(t, "local factors: {}", factors.len()).unwrap();
    let vars = w.ring().vars().to_vec();
    let mut js = Vec::new();
    for (k, f) in factors.iter().enumerate() {
        let profile = madic_profile(&fa, f);
        writeln!(t, "factor {}:", k + 1).unwrap();
        writeln!(t, "  dim: {}", f.dim).unwrap();
        writeln!(t, "  residue degree: {}", f.residue_degree).unwrap();
        let value = match &f.point {
            Some(pt) => {
                let coords: Vec<String> = vars.iter().zip(pt).map(|(v, x)| format!("{v} = {x}")).collect();
                writeln!(t, "  point: {}", coords.join(", ")).unwrap();
                let value = w.evaluate(pt)?;
                writeln!(t, "  critical value: {value}").unwrap();
                Some(value.to_string())
            }
            None => {
                writeln!(t, "  point: not defined over {field}").unwrap();
                None
            }
        };
        writeln!(t, "  m-adic profile: {profile:?}").unwrap();
        writeln!(t, "  idempotent: {}", fa.format_element(&f.idempotent)).unwrap();
        js.push(json!({
            "dim": f.dim,
            "residue_degree": f.residue_degree,
            "point": f.point.as_deref().map(strs),
            "critical_value": value,
            "madic_profile": profile,
            "idempotent": strs(&f.idempotent),
        }));
    }
    let total: usize = factors.iter().map(|f| f.dim).sum();
    let anomaly = total != j.dim();
    let json = json!({"input": name, "field": field.to_string(), "seed": o.seed, "dim": j.dim(), "factors": js});
    Ok(Output { text: t, json, anomaly })
}

fn generation_text(r: &GenerationReport) -> String {
    let mut t = String::new();
    writeln!(t, "input: {}", r.input).unwrap();
    writeln!(t, "field: {}", r.field).unwrap();
    writeln!(t, "seed: {}", r.seed).unwrap();
    if let Some(c) = &r.co0 {
        writeln!(
            t,
            "closed-open map: well defined {}, kernel dim {}, surjective {}",
            c.well_defined,
            c.kernel_dim.map_or("n/a".into(), |k| k.to_string()),
            c.surjective.map_or("n/a".into(), |k| k.to_string())
        )
        .unwrap();
    }
    if let Some(n) = r.minimal_chern {
        writeln!(t, "minimal Chern number: {n}").unwrap();
    }
    writeln!(t, "summands: {}", r.summands.len()).unwrap();
    for (k, s) in r.summands.iter().enumerate() {
        writeln!(t, "summand {}:", k + 1).unwrap();
        writeln!(t, "  dim: {}", s.dim).unwrap();
        writeln!(t, "  residue degree: {}", s.residue_degree.map_or("n/a".into(), |d| d.to_string())).unwrap();
        if let Some(p) = &s.point {
            writeln!(t, "  critical point: {}", tuple(p)).unwrap();
        }
        if let Some(v) = &s.critical_value {
            writeln!(t, "  critical value: {v}").unwrap();
        }
        if let Some(k) = s.co0_kernel_dim {
            writeln!(t, "  closed-open kernel on summand: {k}").unwrap();
        }
        writeln!(t, "  verdict: {}", s.verdict).unwrap();
        writeln!(t, "  {}", s.statement).unwrap();
    }
    for n in &r.notes {
        writeln!(t, "note: {n}").unwrap();
    }
    writeln!(t, "anomaly: {}", r.anomaly).unwrap();
    t
}

pub fn toric_gen(o: &Opts) -> Result<Output> {
    let r = match (&o.superpotential, &o.polytope) {
        (None, Some(_)) => toric_generation_report(&polytope(o)?, o.field()?, o.settings())?,
        _ => {
            let (name, w, _) = potential(o)?;
            superpotential_report(&name, &w, o.settings())?
        }
    };
    Ok(Output { text: generation_text(&r), json: serde_json::to_value(&r)?, anomaly: r.anomaly })
}

pub fn real_gen(o: &Opts) -> Result<Output> {
    let p = polytope(o)?;
    let r = real_generation_report(&p, o.settings())?;
    let mut t = String::new();
    writeln!(t, "input: {}", r.input).unwrap();
    writeln!(t, "field: {}", r.field).unwrap();
    writeln!(t, "seed: {}", r.seed).unwrap();
    writeln!(t, "minimal Chern number: {}", r.minimal_chern.map_or("none".into(), |n| n.to_string())).unwrap();
    writeln!(t, "dim QH: {}", r.qh_dim).unwrap();
    writeln!(t, "dim QH_R: {}", r.qh_r_dim).unwrap();
    writeln!(t, "dim ker pi: {}", r.pi_kernel_dim).unwrap();
    writeln!(t, "dim ker f_R: {}", r.frobenius_kernel_dim).unwrap();
    writeln!(t, "ker f_R in ker pi: {}", r.containment).unwrap();
    writeln!(t, "ker f_R = ker pi: {}", r.kernels_equal).unwrap();
    if let Some(w) = &r.witness {
        writeln!(t, "witness: {}", tuple(w)).unwrap();
    }
    let dims: Vec<String> = r.summands.iter().map(|s| format!("{} (residue degree {})", s.dim, s.residue_degree)).collect();
    writeln!(t, "local factors of QH over F2: {}", dims.join(", ")).unwrap();
    writeln!(t, "verdict: {}", r.verdict).unwrap();
    writeln!(t, "anomaly: {}", r.anomaly).unwrap();
    Ok(Output { text: t, json: serde_json::to_value(&r)?, anomaly: r.anomaly })
}

pub fn smod2(o: &Opts, rho: &[String]) -> Result<Output> {
    let field = o.field()?;
    let rho: Vec<Scalar> = rho.iter().map(|s| field.parse_scalar(s)).collect::<Result<_>>()?;
    let s = s_mod_m2(field, &rho, o.budget)?;
    let n = rho.len();
    let anomaly = !(s.m_squared_zero && s.square_zero_table && s.algebra.dim() == n + 1);
    let mut t = String::new();
    writeln!(t, "field: {field}").unwrap();
    writeln!(t, "rho: {}", tuple(&strs(&rho))).unwrap();
    writeln!(t, "dim: {}", s.algebra.dim()).unwrap();
    writeln!(t, "basis: {}", s.algebra.staircase_labels().join(", ")).unwrap();
    writeln!(t, "m^2 = 0: {}", s.m_squared_zero).unwrap();
    writeln!(t, "k + H1 square-zero structure: {}", s.square_zero_table).unwrap();
    let json = json!({
        "field": field.to_string(),
        "rho": strs(&rho),
        "dim": s.algebra.dim(),
        "basis": s.algebra.staircase_labels(),
        "m_squared_zero": s.m_squared_zero,
        "square_zero_table": s.square_zero_table,
    });
    Ok(Output { text: t, json, anomaly })
}

pub fn ainfty_check(o: &Opts, length: usize) -> Result<Output> {
    let path = o.ainfty.as_ref().ok_or_else(|| Error::Usage("this command needs --ainfty".into()))?;
    let mut a = AInfty::from_json_str(&read(path)?)?;
    if a.name == "A" {
        a.name = path.file_stem().map_or("A".into(), |s| s.to_string_lossy().into_owned());
    }
    let r = chain_identity_report(&a, length, o.seed)?;
    let yn = |b: bool| if b { "yes" } else { "no" };
    let opt = |b: Option<bool>| b.map_or("n/a", yn);
    let mut t = String::new();
    writeln!(t, "algebra: {}", r.name).unwrap();
    writeln!(t, "field: {}", r.field).unwrap();
    writeln!(t, "dim: {}", r.dim).unwrap();
    writeln!(t, "A-infinity relations: {} tuples checked, {} nonzero residuals", r.relations_checked, r.relation_residuals).unwrap();
    writeln!(t, "opposite is an involution: {}", yn(r.opposite_involutive)).unwrap();
    writeln!(t, "opposite equals original: {}", yn(r.opposite_equal)).unwrap();
    writeln!(t, "cohomology dim: {}", r.cohomology_dim.map_or("n/a".into(), |d| d.to_string())).unwrap();
    writeln!(t, "cohomology product associative: {}", opt(r.cohomology_associative)).unwrap();
    writeln!(t, "H(A^op) is the graded opposite of H(A): {}", opt(r.cohomology_opposite)).unwrap();
    writeln!(t, "exact window: lengths 0..={}", r.exact_window).unwrap();
    writeln!(t, "diagonal mu1_CC^2 = 0: {}", yn(r.diagonal_d_squared_zero)).unwrap();
    writeln!(t, "diagonal and bimodule differentials agree: {}", yn(r.diagonal_formulas_agree)).unwrap();
    writeln!(t, "hom(A, A) mu1_CC^2 = 0 (lengths 0..={}): {}", r.hom_length, yn(r.hom_d_squared_zero)).unwrap();
    writeln!(t, "hom(A, A) matches the endomorphism bimodule: {}", yn(r.hom_matches_end)).unwrap();
    writeln!(t, "theta chain-map residual zero (lengths 0..={}): {}", r.theta_length, yn(r.theta_chain_residual_zero)).unwrap();
    writeln!(t, "Pi(theta(c)) = mu2(e, c): {}", opt(r.pi_theta)).unwrap();
    writeln!(t, "anomaly: {}", r.anomaly).unwrap();
    Ok(Output { text: t, json: serde_json::to_value(&r)?, anomaly: r.anomaly })
}
