//! The full verification matrix as numbered criteria, each producing a list
//! of verdicts. Criteria run in parallel; the report is ordered by id.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::divisor::{self, AmpleStatus, EnriquesShape, RootType, ShiodaInoseCase};
use crate::error::Result;
use crate::finite_form::{discriminant_form, forms_isomorphic, q2, verify_isometry};
use crate::kummer::{self, F2Point};
use crate::lattice::FramedLattice;
use crate::models;
use crate::orbit;
use crate::parallel::{self, Execution};
use crate::quotient;
use crate::report::{fmt_census, Report, Verdict};

type Runner = fn(Execution) -> Result<Vec<Verdict>>;

#[derive(Clone, Copy)]
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub group: &'static str,
    run: Runner,
}

impl Criterion {
    pub fn matches(&self, filter: &str) -> bool {
        let f = filter.to_ascii_lowercase();
        self.group == f || self.name.contains(&f) || self.id.to_string() == f
    }

    pub fn run(&self, exec: Execution) -> CriterionOutcome {
        let start = Instant::now();
        let (verdicts, error) = match (self.run)(exec) {
            Ok(v) => (v, None),
            Err(e) => (vec![Verdict::check("completed without error", "ok", &e, false)], Some(e.to_string())),
        };
        CriterionOutcome {
            id: self.id,
            name: self.name,
            group: self.group,
            pass: verdicts.iter().all(|v| v.pass) && !verdicts.is_empty(),
            verdicts,
            error,
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub group: &'static str,
    pub pass: bool,
    pub verdicts: Vec<Verdict>,
    pub error: Option<String>,
    #[serde(skip)]
    pub elapsed_ms: u64,
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, group, run| Criterion { id, name, group, run };
    vec![
        c(1, "kummer-lattice", "kummer", c01_kummer),
        c(2, "kummer-form-witness", "kummer", c02_kummer_form),
        c(3, "nikulin-and-mg", "kummer", c03_nikulin_mg),
        c(4, "k4d-family", "kummer", c04_k4d),
        c(5, "k3-lattice-glue", "kummer", c05_lambda),
        c(6, "omega-complement", "kummer", c06_omega),
        c(7, "orbit-roundtrip", "orbit", c07_orbit_roundtrip),
        c(8, "orbit-disjointness", "orbit", c08_disjointness),
        c(9, "ampleness", "divisor", c09_ampleness),
        c(10, "even-sets", "divisor", c10_even_sets),
        c(11, "line-basis", "divisor", c11_lines),
        c(12, "fibrations", "divisor", c12_fibrations),
        c(13, "shioda-tate", "divisor", c13_shioda_tate),
        c(14, "ns-kummer-quotient", "kummer", c14_nsy),
        c(15, "quotient-maps", "quotient", c15_quotient),
        c(16, "polynomial-identities", "models", c16_models),
        c(17, "enriques-embedding", "enriques", c17_enriques),
    ]
}

/// Runs every criterion matching `filter` (all when `None`).
pub fn run_criteria(filter: Option<&str>, exec: Execution) -> Vec<CriterionOutcome> {
    let selected: Vec<Criterion> = criteria().into_iter().filter(|c| filter.is_none_or(|f| c.matches(f))).collect();
    let mut out = parallel::map(exec, &selected, |c| c.run(exec));
    out.sort_by_key(|o| o.id);
    out
}

#[derive(Serialize)]
struct SuiteRow<'a> {
    id: u32,
    name: &'a str,
    group: &'a str,
    pass: bool,
    error: &'a Option<String>,
}

pub fn paper_suite(filter: Option<&str>, exec: Execution) -> Report {
    let start = Instant::now();
    let outcomes = run_criteria(filter, exec);
    let rows: Vec<SuiteRow> =
        outcomes.iter().map(|o| SuiteRow { id: o.id, name: o.name, group: o.group, pass: o.pass, error: &o.error }).collect();
    let mut report = Report::new("suite").input("filter", filter.unwrap_or("all")).with_results(&rows);
    for o in &outcomes {
        for v in &o.verdicts {
            let mut v = v.clone();
            v.claim = format!("[{:02} {}] {}", o.id, o.name, v.claim);
            report.verdicts.push(v);
        }
    }
    if outcomes.is_empty() {
        report.verdicts.push(Verdict::check("filter selects at least one criterion", ">= 1", 0, false));
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

fn one() -> BigRational {
    BigRational::one()
}

/// Rank, definiteness, determinant, group and census of a Kummer lattice
/// candidate.
pub fn kummer_verdicts(k: &FramedLattice) -> Result<Vec<Verdict>> {
    let l = &k.lattice;
    let (form, _) = discriminant_form(l)?;
    Ok(vec![
        Verdict::eq("rank", 16, l.rank()),
        Verdict::holds("negative definite", l.is_negative_definite()),
        Verdict::holds("even", l.is_even()),
        Verdict::eq("|det|", 64, l.det().abs()),
        Verdict::eq("discriminant group", "[2, 2, 2, 2, 2, 2]", format!("{:?}", form.invariant_factors())),
        Verdict::eq("nonzero q census", "{0: 35, 1: 28}", fmt_census(&form.q_census_nonzero()?)),
    ])
}

fn c01_kummer(_: Execution) -> Result<Vec<Verdict>> {
    let k = kummer::kummer_lattice()?;
    let mut v = kummer_verdicts(&k)?;
    let mut inside = 0;
    let hyperplanes = kummer::AffineSubspace::hyperplanes();
    for h in &hyperplanes {
        let labels: Vec<String> = h.points().into_iter().map(kummer::k_label).collect();
        if k.contains(&k.half_sum(&labels)?)? {
            inside += 1;
        }
    }
    v.push(Verdict::eq("affine hyperplane half-sums in K", hyperplanes.len(), inside));
    v.push(Verdict::eq("affine hyperplanes", 30, hyperplanes.len()));
    Ok(v)
}

fn c02_kummer_form(_: Execution) -> Result<Vec<Verdict>> {
    let (form, _) = discriminant_form(&kummer::kummer_lattice()?.lattice)?;
    let target = q2().direct_sum(&q2()).direct_sum(&q2());
    let iso = forms_isomorphic(&form, &target)?;
    let verified = iso.as_ref().is_some_and(|i| verify_isometry(&form, &target, i));
    Ok(vec![
        Verdict::holds("isometry to disc(U(2)^3) found", iso.is_some()),
        Verdict::holds("witness verified", verified),
    ])
}

fn c03_nikulin_mg(_: Execution) -> Result<Vec<Verdict>> {
    let n = kummer::nikulin_lattice()?;
    let mg = kummer::mg_lattice()?;
    let (form, _) = discriminant_form(&mg.lattice)?;
    Ok(vec![
        Verdict::eq("N |det|", 64, n.lattice.det().abs()),
        Verdict::eq("M_G rank", 15, mg.lattice.rank()),
        Verdict::eq("M_G |det|", 128, mg.lattice.det().abs()),
        Verdict::eq("M_G discriminant group", format!("{:?}", vec![2; 7]), format!("{:?}", form.invariant_factors())),
        Verdict::eq("index of <M_i> in M_G", 16, &mg.index),
        Verdict::holds("M_G agrees with the complement of K_0000 in K", kummer::mg_constructions_agree()?.isometric),
    ])
}

fn c04_k4d(_: Execution) -> Result<Vec<Verdict>> {
    let mut v = Vec::new();
    for d in 1..=6u64 {
        let l = kummer::k4d_prime(d)?.lattice;
        v.push(Verdict::holds(format!("d={d} even"), l.is_even()));
        v.push(Verdict::eq(format!("d={d} signature"), "(1, 16)", format!("{:?}", l.signature())));
        v.push(Verdict::eq(format!("d={d} |det|"), 64 * d, l.det().abs()));
        let expected = if d % 2 == 0 { "{4: 4, 8: 24, 12: 4}" } else { "{6: 16, 10: 16}" };
        v.push(Verdict::eq(
            format!("d={d} divisible class census"),
            expected,
            fmt_census(&kummer::divisible_class_census(d)?.census),
        ));
    }
    Ok(v)
}

fn c05_lambda(_: Execution) -> Result<Vec<Verdict>> {
    let l = kummer::k3_lattice_glued()?;
    Ok(vec![
        Verdict::holds("unimodular", l.lattice.is_unimodular()),
        Verdict::holds("even", l.lattice.is_even()),
        Verdict::eq("signature", "(3, 19)", format!("{:?}", l.lattice.signature())),
        Verdict::eq("index over <-2>^16 + U(2)^3", BigInt::from(2).pow(11), &l.index),
    ])
}

fn c06_omega(_: Execution) -> Result<Vec<Verdict>> {
    let mut v = Vec::new();
    let mut censuses = Vec::new();
    for d in 1..=3u64 {
        let (_, omega) = kummer::omega_g(d)?;
        let (form, _) = discriminant_form(&omega.sub)?;
        v.push(Verdict::eq(format!("d={d} rank"), 15, omega.sub.rank()));
        v.push(Verdict::eq(format!("d={d} |det|"), 512, omega.sub.det().abs()));
        censuses.push(fmt_census(&form.q_census_strings()?));
    }
    v.push(Verdict::check(
        "q census identical for d = 1, 2, 3",
        &censuses[0],
        censuses.join(" | "),
        censuses.iter().all(|c| *c == censuses[0]),
    ));
    Ok(v)
}

/// Seed of the fixed orbit corpus.
pub const ORBIT_SEED: u64 = 20_240_607;

fn c07_orbit_roundtrip(exec: Execution) -> Result<Vec<Verdict>> {
    let mut v = Vec::new();
    for p in [2, 3, 5] {
        let forms = orbit::normal_form_domain(p, 2);
        let r = orbit::orbit_sweep(p, &forms, 500, ORBIT_SEED, exec);
        let first = r.failures.first().map_or("none".to_string(), |f| format!("{:?}", f));
        v.push(Verdict::check(
            format!("p={p}: {} forms x 500 images classify back with table invariants", r.forms),
            0,
            format!("{} failures (first: {first})", r.failures.len()),
            r.failures.is_empty() && r.forms > 0,
        ));
    }
    Ok(v)
}

fn c08_disjointness(exec: Execution) -> Result<Vec<Verdict>> {
    let collisions = orbit::disjointness_sweep(&[2, 3, 5, 7], 20, exec)?;
    Ok(vec![Verdict::eq("(norm, det) collisions across tags, p <= 7, params <= 20", 0, collisions.len())])
}

fn c09_ampleness(_: Execution) -> Result<Vec<Verdict>> {
    let mut v = Vec::new();
    for d in 1..=5u64 {
        let l = kummer::k4d_prime(d)?;
        let h = divisor::ample_up_to_weyl(&l, &l.class(&[("H", one())])?)?;
        v.push(Verdict::eq(
            format!("d={d} H"),
            "big_nef_with_roots 16A1",
            format!("{} {}", status_name(h.status), h.root_type),
        ));
    }
    for d in 2..=5u64 {
        let l = kummer::k4d_prime(d)?;
        let r = divisor::ample_up_to_weyl(&l, &divisor::h_minus_half_sum(&l)?)?;
        let expected = if d == 2 { AmpleStatus::IsotropicNefCandidate } else { AmpleStatus::AmpleUpToWeyl };
        v.push(Verdict::eq(format!("d={d} H - 1/2 sum K"), status_name(expected), status_name(r.status)));
    }
    for d in 1..=5u64 {
        let l = kummer::k4d_prime(d)?;
        let mut statuses = Vec::new();
        for r in 0..=16 {
            statuses.push(divisor::ample_up_to_weyl(&l, &divisor::h_minus_curves(&l, r)?)?.status);
        }
        let positive = |s: &AmpleStatus| matches!(s, AmpleStatus::AmpleUpToWeyl | AmpleStatus::BigNefWithRoots);
        let boundary = statuses.iter().position(|s| !positive(s)).unwrap_or(17);
        let shape = statuses.iter().enumerate().all(|(r, s)| match r.cmp(&boundary) {
            std::cmp::Ordering::Less => positive(s),
            std::cmp::Ordering::Equal => *s == AmpleStatus::IsotropicNefCandidate,
            std::cmp::Ordering::Greater => *s == AmpleStatus::NotPositive,
        });
        v.push(Verdict::check(
            format!("d={d} H - (K_1 + .. + K_r) positive exactly for r < 2d"),
            2 * d,
            boundary,
            shape && boundary == 2 * d as usize,
        ));
    }
    Ok(v)
}

pub fn status_name(s: AmpleStatus) -> String {
    serde_json::to_value(s).ok().and_then(|x| x.as_str().map(String::from)).unwrap_or_default()
}

fn c10_even_sets(_: Execution) -> Result<Vec<Verdict>> {
    let l = kummer::k4d_prime(2)?;
    let curves = divisor::curve_classes(&l, &l.frame.labels[1..])?;
    let k = divisor::even_sets(&l, &curves)?;
    let mut v = vec![
        Verdict::eq("Kummer: kernel dimension", 5, k.kernel_dim),
        Verdict::eq("Kummer: weights", "{8: 30, 16: 1}", fmt_census(&k.weights)),
    ];
    for d in 1..=3u64 {
        let (ny, _) = kummer::nsy_lattice(d, false)?;
        let curves = divisor::curve_classes(&ny, &ny.frame.labels[1..])?;
        let r = divisor::even_sets(&ny, &curves)?;
        v.push(Verdict::eq(format!("NS(Y) d={d}: curves"), 15, r.curves));
        v.push(Verdict::eq(format!("NS(Y) d={d}: kernel dimension"), 4, r.kernel_dim));
        v.push(Verdict::eq(format!("NS(Y) d={d}: weights"), "{8: 15}", fmt_census(&r.weights)));
    }
    Ok(v)
}

fn c11_lines(_: Execution) -> Result<Vec<Verdict>> {
    let (l, s, d) = divisor::jacobian_line_set()?;
    let r = divisor::line_basis_check(&l, &s, &d)?;
    Ok(vec![
        Verdict::eq("classes", 17, s.len()),
        Verdict::holds("basis", r.is_basis),
        Verdict::check("det", "+-1", &r.det, r.det == "1" || r.det == "-1"),
        Verdict::check("D-degrees all 1", "1", r.degrees.join(","), r.degrees.iter().all(|x| x == "1")),
        Verdict::eq("D^2", 8, &r.d_norm),
    ])
}

fn c12_fibrations(_: Execution) -> Result<Vec<Verdict>> {
    let mut v = Vec::new();
    let es: Vec<String> = (1..=8).map(|i| format!("E{i}")).collect();
    for case in ShiodaInoseCase::all() {
        let (ns, f) = divisor::shioda_inose_basis(case)?;
        let units = divisor::labelled_units(&ns, &es)?;
        let mut zero = Vec::new();
        for (name, u) in &units {
            if ns.pairing_frame(&f, u)?.is_one() {
                zero.push((name.clone(), u.clone()));
            }
        }
        let rep = divisor::fibration_check(&ns, &f, &zero, &[])?;
        v.push(Verdict::eq(format!("{case:?}: F^2"), 0, &rep.f_norm));
        v.push(Verdict::check(
            format!("{case:?}: one E_i meets F once (zero section)"),
            1,
            zero.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join(","),
            zero.len() == 1,
        ));
    }
    let (l, f, sections, components) = divisor::k8_fibration()?;
    let rep = divisor::fibration_check(&l, &f, &sections, &components)?;
    v.push(Verdict::holds("K'_8 fibration: F^2 = 0, sections meet F once, components orthogonal", rep.consistent()));
    v.push(Verdict::eq("K'_8 fibration: frame root type", "12A1", rep.root_type.unwrap_or_default()));
    Ok(v)
}

fn c13_shioda_tate(_: Execution) -> Result<Vec<Verdict>> {
    let first = RootType::parse("D14+A1")?;
    let second = RootType::parse("D7+A2+6A1")?;
    let a = divisor::shioda_tate_discriminant(&first.component_dets(), 2)?;
    let b = divisor::shioda_tate_discriminant(&second.component_dets(), 2)?;
    let k12 = kummer::k4d_prime(3)?.lattice.det().abs();
    Ok(vec![
        Verdict::eq("I_10^* + I_2 with 2-torsion: (4*2)/4", 2, a),
        Verdict::eq("I_3^* + I_3 + 6 I_2 with 2-torsion: (4*3*2^6)/4", 192, &b),
        Verdict::eq("equals |det K'_12|", k12, b),
    ])
}

fn c14_nsy(_: Execution) -> Result<Vec<Verdict>> {
    let mut v = Vec::new();
    for d in 1..=5u64 {
        let (l, r) = kummer::named_report("NSY", d, false)?;
        v.push(Verdict::holds(format!("d={d} even"), l.is_even()));
        v.push(Verdict::eq(format!("d={d} |det|"), 64 * d, l.det().abs()));
        v.push(Verdict::eq(
            format!("d={d} discriminant group"),
            format!("{:?}", kummer::nsy_expected_group(d)),
            format!("{:?}", r.discriminant_group),
        ));
    }
    let (l, r) = kummer::named_report("NSY", 3, true)?;
    v.push(Verdict::holds("case iv d=3 report verified", r.all_verified()));
    let (form, _) = discriminant_form(&l)?;
    let stated = kummer::case_iv_stated_form(3)?;
    v.push(Verdict::holds(
        "case iv d=3: stated block matches disc(NS) up to the global sign",
        forms_isomorphic(&form.negate(), &stated)?.is_some(),
    ));
    Ok(v)
}

fn c15_quotient(_: Execution) -> Result<Vec<Verdict>> {
    let mut v: Vec<Verdict> = quotient::verify_quotient_identities()?
        .into_iter()
        .map(|i| Verdict::check(i.name, "holds", i.counterexample.unwrap_or_else(|| "holds".into()), i.pass))
        .collect();
    let c = quotient::overlattice_chain_check()?;
    v.push(Verdict::eq("total index", BigInt::from(2).pow(23), &c.total_index));
    v.push(Verdict::eq("quarter step index", BigInt::from(2).pow(12), &c.quarter_step_index));
    v.push(Verdict::holds("quarter step gives U(2)^3", c.quarter_step_is_u2));
    v.push(Verdict::eq("glue step index", BigInt::from(2).pow(11), &c.glue_step_index));
    v.push(Verdict::holds("combined overlattice unimodular", c.combined_unimodular));
    v.push(Verdict::holds("chain closes", c.closes));
    Ok(v)
}

fn c16_models(_: Execution) -> Result<Vec<Verdict>> {
    let igusa = models::igusa_relation_check()?;
    let space = models::invariant_space(&models::heisenberg_generators(), 4, 4)?;
    let mut joint = space.clone();
    joint.extend(models::heisenberg_invariants());
    let even = models::even_sign_invariants_check()?;
    Ok(vec![
        Verdict::check("Igusa relation vanishes identically", "0", igusa.witness.unwrap_or_else(|| "0".into()), igusa.holds),
        Verdict::eq("degree-4 invariant dimension", 5, space.len()),
        Verdict::eq("p_0..p_4 span the invariants", 5, models::span_rank(&joint)?),
        Verdict::holds("t^2 - prod y_i vanishes on t = prod z_i, y_i = z_i^2", even.relation.holds),
        Verdict::holds("even sign group invariants", even.all_pass()),
    ])
}

fn c17_enriques(_: Execution) -> Result<Vec<Verdict>> {
    let mut v = Vec::new();
    for t in 1..=2 {
        let c = divisor::enriques_embedding(EnriquesShape::T(t))?;
        v.push(Verdict::check(
            format!("t={t}: induced Gram U(2) + Q(2)"),
            format!("{:?}", c.expected_gram),
            format!("{:?}", c.induced_gram),
            c.induced_gram == c.expected_gram,
        ));
        v.push(Verdict::holds(format!("t={t}: primitive"), c.elementary_divisors.iter().all(|d| d == "1")));
        v.push(Verdict::eq(format!("t={t}: -2 vectors in complement"), 0, c.complement_roots));
    }
    Ok(v)
}

/// Builds `K` with the given glue supports, for fault injection.
pub fn kummer_with_supports(supports: &[Vec<F2Point>]) -> Result<FramedLattice> {
    let k = kummer::kummer_lattice()?;
    let frame = FramedLattice::trivial(k.frame.clone());
    let glue = supports
        .iter()
        .map(|s| frame.half_sum(&s.iter().map(|&p| kummer::k_label(p)).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    crate::lattice::overlattice(&k.frame, &glue, "K")
}

/// Criterion ids with a failing verdict.
pub fn failing_ids(outcomes: &[CriterionOutcome]) -> Vec<u32> {
    outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect()
}

/// `id -> pass` for the selected criteria.
pub fn pass_map(outcomes: &[CriterionOutcome]) -> BTreeMap<u32, bool> {
    outcomes.iter().map(|o| (o.id, o.pass)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_ordered_and_filters_select() {
        let ids: Vec<u32> = criteria().iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=17).collect::<Vec<_>>());
        let kummer: Vec<u32> = criteria().iter().filter(|c| c.matches("kummer")).map(|c| c.id).collect();
        assert_eq!(kummer, vec![1, 2, 3, 4, 5, 6, 14]);
        assert_eq!(criteria().iter().filter(|c| c.matches("13")).count(), 1);
    }

    #[test]
    fn corrupted_glue_fails_named_claim() {
        let mut supports = kummer::kummer_glue_supports();
        supports.pop();
        let k = kummer_with_supports(&supports).unwrap();
        let failed: Vec<String> = kummer_verdicts(&k).unwrap().into_iter().filter(|v| !v.pass).map(|v| v.claim).collect();
        assert!(failed.contains(&"|det|".to_string()), "{failed:?}");
        let k = kummer_with_supports(&kummer::kummer_glue_supports()).unwrap();
        assert!(kummer_verdicts(&k).unwrap().iter().all(|v| v.pass));
    }

    #[test]
    fn filtered_suite_report() {
        let r = paper_suite(Some("shioda-tate"), Execution::Sequential);
        assert!(r.passed(), "{}", r.to_human());
        assert!(r.verdicts[0].claim.starts_with("[13 shioda-tate]"));
        assert!(!paper_suite(Some("nothing-matches"), Execution::Sequential).passed());
    }
}
