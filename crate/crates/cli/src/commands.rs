use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use k3lat_core::arith::{fmt_rat, parse_int_list, parse_rat_list};
use k3lat_core::divisor::{self, EnriquesShape};
use k3lat_core::finite_form::discriminant_form;
use k3lat_core::kummer::{self, Transcendental};
use k3lat_core::lattice::io::LatticeFile;
use k3lat_core::lattice::{enumerate_vectors, FramedLattice, RationalVector};
use k3lat_core::models::{self, Polynomial, PolynomialFile};
use k3lat_core::orbit;
use k3lat_core::quotient;
use k3lat_core::report::{Report, Verdict};
use k3lat_core::suite::status_name;
use k3lat_core::Error;

fn file_value(file: &LatticeFile) -> Value {
    serde_json::from_str(&file.to_text()).expect("lattice file text is JSON")
}

fn framed(name: &str, d: u64, case_iv: bool) -> Result<FramedLattice> {
    Ok(match name {
        "K" => kummer::kummer_lattice()?,
        "N" => kummer::nikulin_lattice()?,
        "MG" => kummer::mg_lattice()?,
        "K4d" => kummer::k4d_prime(d)?,
        "NSY" => kummer::nsy_lattice(d, case_iv)?.0,
        "Lambda" => kummer::k3_lattice_glued()?,
        other => return Err(Error::UnknownLattice(other.into()).into()),
    })
}

pub fn family_build(name: &str, d: u64, case: Option<&str>, family: &str, out: Option<&Path>) -> Result<Report> {
    let case_iv = match case {
        None => false,
        Some("iv") => true,
        Some(other) => bail!("unknown case {other:?}, only `iv` is supported"),
    };
    let mut report = Report::new("family build").input("name", name).input("d", d);
    if case_iv {
        report = report.input("case", "iv");
    }
    let file = if name == "T" {
        report = report.input("family", family);
        let fam = Transcendental::parse(family, d as i64)?;
        let t = fam.lattice();
        let check = kummer::transcendental_cross_check(fam)?;
        report.verdicts.push(Verdict::eq("signature", format!("{:?}", (2, t.rank() - 2)), format!("{:?}", t.signature())));
        report.verdicts.push(Verdict::holds(format!("|det| agrees with {}", check.partner), check.abs_det_match));
        report.verdicts.push(Verdict::holds(format!("discriminant form matches {}", check.partner), check.forms_match));
        let file = LatticeFile { lattice: t.clone(), glue: vec![] };
        report.results = json!({ "lattice": file_value(&file), "invariants": t.invariants(), "cross_check": check });
        file
    } else {
        let (l, named) = kummer::named_report(name, d, case_iv)?;
        let file = if name == "Omega" {
            LatticeFile { lattice: l.clone(), glue: vec![] }
        } else {
            LatticeFile::from_framed(&framed(name, d, case_iv)?)
        };
        report.verdicts.push(Verdict::eq("rank", named.expected_rank, named.rank));
        report.verdicts.push(Verdict::eq("|det|", &named.expected_abs_det, l.det().abs()));
        report.verdicts.push(Verdict::eq(
            "discriminant group",
            format!("{:?}", named.expected_discriminant_group),
            format!("{:?}", named.discriminant_group),
        ));
        report.verdicts.push(Verdict::holds("even", named.even));
        report.results = json!({ "lattice": file_value(&file), "report": named });
        file
    };
    if let Some(path) = out {
        std::fs::write(path, file.to_text()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report)
}

pub fn orbit_classify(p: i64, vector: &str) -> Result<Report> {
    let v = parse_int_list(vector)?;
    if v.len() != 5 {
        bail!("expected five coordinates, got {}", v.len());
    }
    let c = orbit::classify_t2p(p, &v)?;
    let inv = orbit::orbit_invariants(p, &v)?;
    let mut params = serde_json::to_value(&c.form)?;
    if let Some(m) = params.as_object_mut() {
        m.remove("tag");
    }
    let mut report = Report::new("orbit classify").input("p", p).input("vector", vector);
    report.verdicts.push(Verdict::holds("witness is an isometry of T_2p", orbit::is_isometry(&c.witness, &orbit::t2p_gram(p))));
    report.verdicts.push(Verdict::holds(
        "witness maps the input to the representative",
        c.witness.mul_vec(&v)? == c.form.vector(p),
    ));
    report.verdicts.push(Verdict::eq("v^2 matches the table", c.form.norm(p), inv.norm));
    report.verdicts.push(Verdict::eq("d(v^perp) matches the table", c.form.complement_det(p), inv.det_complement));
    let witness: Vec<Vec<String>> =
        c.witness.to_rows().iter().map(|r| r.iter().map(BigInt::to_string).collect()).collect();
    report.results = json!({
        "tag": c.form.tag(),
        "params": params,
        "norm": inv.norm,
        "det_complement": inv.det_complement,
        "alias": c.alias,
        "representative": c.representative,
        "witness": witness,
    });
    Ok(report)
}

fn parse_class(s: &str, rank: usize) -> Result<RationalVector> {
    let v = parse_rat_list(s)?;
    if v.len() != rank {
        bail!("class has {} coordinates, the frame has rank {rank}", v.len());
    }
    Ok(v)
}

#[allow(clippy::too_many_arguments)]
pub fn divisor_check(
    path: &Path,
    class: Option<&str>,
    mode: &str,
    expect: &str,
    sections: &[String],
    components: &[String],
    curves: Option<&str>,
) -> Result<Report> {
    let ns = LatticeFile::read(path)?.build()?;
    let rank = ns.frame.rank();
    let mut report = Report::new("divisor check").input("lattice", path.display()).input("mode", mode);
    if let Some(c) = class {
        report = report.input("class", c);
    }
    let need_class = || class.ok_or_else(|| anyhow!("--class is required in {mode} mode"));
    match mode {
        "ample" => {
            let x = parse_class(need_class()?, rank)?;
            let v = divisor::ample_up_to_weyl(&ns, &x)?;
            report.verdicts.push(Verdict::eq("status", expect, status_name(v.status)));
            report = report.with_results(&v);
        }
        "fibration" => {
            let f = parse_class(need_class()?, rank)?;
            let named = |list: &[String], prefix: &str| -> Result<Vec<(String, RationalVector)>> {
                list.iter().enumerate().map(|(i, s)| Ok((format!("{prefix}{}", i + 1), parse_class(s, rank)?))).collect()
            };
            let rep = divisor::fibration_check(&ns, &f, &named(sections, "section")?, &named(components, "component")?)?;
            report.verdicts.push(Verdict::eq("F^2", 0, &rep.f_norm));
            report.verdicts.push(Verdict::holds(
                "sections meet F once and components are orthogonal to F",
                rep.consistent(),
            ));
            report = report.with_results(&rep);
        }
        "evenset" => {
            let labels: Vec<String> = match curves {
                Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
                None => (0..rank)
                    .filter(|&i| *ns.frame.gram().get(i, i) == BigInt::from(-2))
                    .map(|i| ns.frame.labels[i].clone())
                    .collect(),
            };
            let classes = divisor::curve_classes(&ns, &labels)?;
            let r = divisor::even_sets(&ns, &classes)?;
            let sizes: Vec<u32> = r.weights.keys().copied().collect();
            report.verdicts.push(Verdict::check(
                "every even set has 8 or 16 curves",
                "[8, 16]",
                format!("{sizes:?}"),
                sizes.iter().all(|s| *s == 8 || *s == 16),
            ));
            report.results = json!({ "curves": labels, "even_sets": r });
        }
        other => bail!("unknown mode {other}"),
    }
    Ok(report)
}

pub fn enriques_search(q: &str) -> Result<Report> {
    let shape = EnriquesShape::parse(q)?;
    let mut report = Report::new("enriques search").input("q", q);
    match divisor::enriques_embedding(shape) {
        Ok(c) => {
            report.verdicts.push(Verdict::check(
                "induced Gram is U(2) + Q(2)",
                format!("{:?}", c.expected_gram),
                format!("{:?}", c.induced_gram),
                c.induced_gram == c.expected_gram,
            ));
            report.verdicts.push(Verdict::holds("embedding is primitive", c.elementary_divisors.iter().all(|d| d == "1")));
            report.verdicts.push(Verdict::eq("-2 vectors in the complement", 0, c.complement_roots));
            report = report.with_results(&c);
        }
        Err(Error::SearchExhausted(msg)) => {
            report.verdicts.push(Verdict::check("certificate found", "certificate", format!("exhausted: {msg}"), false));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

pub fn quotient_verify() -> Result<Report> {
    let identities = quotient::verify_quotient_identities()?;
    let chain = quotient::overlattice_chain_check()?;
    let mut report = Report::new("quotient verify");
    for i in &identities {
        report.verdicts.push(Verdict::check(&i.name, "holds", i.counterexample.as_deref().unwrap_or("holds"), i.pass));
    }
    let two = |k: u32| BigInt::from(2).pow(k);
    report.verdicts.push(Verdict::eq("total index", two(23), &chain.total_index));
    report.verdicts.push(Verdict::eq("quarter step index", two(12), &chain.quarter_step_index));
    report.verdicts.push(Verdict::eq("glue step index", two(11), &chain.glue_step_index));
    report.verdicts.push(Verdict::holds("chain closes at a unimodular lattice", chain.closes && chain.combined_unimodular));
    report.results = json!({ "identities": identities, "chain": chain });
    Ok(report)
}

pub fn igusa_check() -> Result<Report> {
    let check = models::igusa_relation_check()?;
    let point = [1, 2, 3, 5];
    let spot = models::igusa_at(&models::int_point(&point))?;
    let mut report = Report::new("models igusa-check");
    report.verdicts.push(Verdict::check(
        "relation vanishes on p_0..p_4",
        "0",
        check.witness.clone().unwrap_or_else(|| "0".into()),
        check.holds,
    ));
    report.verdicts.push(Verdict::eq("value at (1:2:3:5)", "0", fmt_rat(&spot)));
    report.results = json!({
        "relation": models::igusa_relation(16).to_string(),
        "identity": check,
        "spot_point": point,
        "spot_value": fmt_rat(&spot),
    });
    Ok(report)
}

pub fn invariants(degree: u32, group: &str) -> Result<Report> {
    let (gens, vars) = match group {
        "heisenberg" => (models::heisenberg_generators(), 4),
        "even-sign" => (models::even_sign_generators(), 6),
        other => bail!("unknown group {other:?}, expected heisenberg or even-sign"),
    };
    let space = models::invariant_space(&gens, vars, degree)?;
    let mut report = Report::new("models invariants").input("degree", degree).input("group", group);
    let mut fixed = true;
    for p in &space {
        for g in &gens {
            fixed &= g.apply(p)? == *p;
        }
    }
    report.verdicts.push(Verdict::holds("every basis element is fixed by the generators", fixed));
    if group == "heisenberg" && degree == 4 {
        let mut joint = space.clone();
        joint.extend(models::heisenberg_invariants());
        report.verdicts.push(Verdict::eq("dimension", 5, space.len()));
        report.verdicts.push(Verdict::eq("rank of basis + p_0..p_4", 5, models::span_rank(&joint)?));
    }
    let basis: Vec<String> = space.iter().map(Polynomial::to_string).collect();
    report.results = json!({ "dimension": space.len(), "basis": basis });
    Ok(report)
}

pub fn gradient(path: &Path, point: &str) -> Result<Report> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let poly = Polynomial::from_file(&PolynomialFile::parse(&text)?)?;
    let x = parse_rat_list(point)?;
    let grad = poly.gradient_at(&x)?;
    let value = poly.eval(&x)?;
    let mut report = Report::new("models gradient").input("poly", path.display()).input("point", point);
    if let (true, Some(deg)) = (poly.is_homogeneous(), poly.degree()) {
        // Euler: sum x_i df/dx_i = deg * f
        let lhs = x.iter().zip(&grad).fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
        let rhs = &value * BigRational::from_integer(deg.into());
        report.verdicts.push(Verdict::eq("Euler identity", fmt_rat(&rhs), fmt_rat(&lhs)));
    }
    let singular = value.is_zero() && grad.iter().all(Zero::is_zero);
    report.results = json!({
        "value": fmt_rat(&value),
        "gradient": grad.iter().map(fmt_rat).collect::<Vec<_>>(),
        "degree": poly.degree(),
        "singular_point": singular,
    });
    Ok(report)
}

pub fn lattice_info(path: &Path) -> Result<Report> {
    let file = LatticeFile::read(path)?;
    let canonical = file.to_text();
    let reread = LatticeFile::parse(&canonical)?;
    let m = file.build()?;
    let mut report = Report::new("lattice info").input("file", path.display());
    report.verdicts.push(Verdict::holds("canonical text round-trips", reread == file && reread.to_text() == canonical));
    let (census, group) = if m.lattice.is_even() {
        let (form, _) = discriminant_form(&m.lattice)?;
        (Some(form.q_census_strings()?), form.invariant_factors())
    } else {
        (None, vec![])
    };
    report.results = json!({
        "invariants": m.lattice.invariants(),
        "index_over_frame": m.index.to_string(),
        "discriminant_group": group,
        "q_census": census,
    });
    Ok(report)
}

pub fn lattice_enumerate(path: &Path, norm: i64) -> Result<Report> {
    let m = LatticeFile::read(path)?.build()?;
    let vecs = enumerate_vectors(&m.lattice, norm)?;
    let mut report = Report::new("lattice enumerate").input("file", path.display()).input("norm", norm);
    let mut ok = true;
    for v in &vecs {
        ok &= m.lattice.norm(v)? == BigInt::from(norm);
    }
    report.verdicts.push(Verdict::holds("every listed vector has the requested norm", ok));
    let rows: Vec<Vec<String>> = vecs.iter().map(|v| v.iter().map(BigInt::to_string).collect()).collect();
    report.results = json!({ "count_up_to_sign": vecs.len(), "vectors": rows });
    Ok(report)
}
