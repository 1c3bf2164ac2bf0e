use std::fs;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use jetlift::admissibility::{check_extension, extend_admissible, is_admissible, AdmissibilityReport};
use jetlift::field::{lie_bracket, lie_d};
use jetlift::foliation::{check_foliation_bracket, sample_tangency_points, tangency_ideal, velocity_in_foliation};
use jetlift::io::{field_strings, load_setup, parse_vf, Problem, VfFile};
use jetlift::jet::{difference_formula, flow_jet, jet_difference};
use jetlift::lifting::{cech_cocycle, cech_glue, default_splitting, lift_to_order};
use jetlift::suite::{run_suite, SuiteConfig};
use jetlift::symplectic::{check_bracket_perp, ham_field, ham_field_td, hamiltonian_extension, pullback_form_along_flow};
use jetlift::{MembershipCertificate, Setup, SheafSpec, TangentFieldOnY, TimeDepVectorField, VectorField};
use serde_json::{json, Value};

/// Output of one subcommand: the JSON results and whether every verdict
/// in them is a pass.
pub struct Outcome {
    pub results: Value,
    pub ok: bool,
}

fn done(results: Value) -> Result<Outcome> {
    Ok(Outcome { results, ok: true })
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn vf(path: &Path) -> Result<VfFile> {
    parse_vf(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn setup(path: &Path, degree_bound: Option<u32>) -> Result<Setup> {
    let mut s = load_setup(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    if degree_bound.is_some() {
        s.degree_bound = degree_bound;
    }
    Ok(s)
}

/// Re-read field files in the setup's chart so that both share variables.
fn vf_for(path: &Path, setup: &Setup) -> Result<VfFile> {
    let f = vf(path)?;
    ensure!(
        f.vars.names() == setup.vars.names(),
        "{} declares variables {:?} but the setup uses {:?}",
        path.display(),
        f.vars.names(),
        setup.vars.names()
    );
    let fields = f.fields.iter().map(|a| TimeDepVectorField::new(&setup.vars, a.components().iter().map(|p| p.rebase(&setup.vars)).collect::<jetlift::Result<_>>()?)).collect::<jetlift::Result<_>>()?;
    let polys = f.polys.iter().map(|p| p.rebase(&setup.vars)).collect::<jetlift::Result<_>>()?;
    Ok(VfFile { vars: setup.vars.clone(), y: setup.y.clone(), fields, polys })
}

fn fields<'a>(f: &'a VfFile, n: usize, what: &str) -> Result<&'a [TimeDepVectorField]> {
    ensure!(f.fields.len() >= n, "{what} needs {n} `field` line(s), found {}", f.fields.len());
    Ok(&f.fields[..n])
}

fn static_field(a: &TimeDepVectorField, what: &str) -> Result<VectorField> {
    a.as_time_independent().with_context(|| format!("{what} must not depend on t"))
}

fn tdf(a: &TimeDepVectorField) -> Value {
    json!(field_strings(a.components()))
}

fn vfield(a: &VectorField) -> Value {
    json!(field_strings(a.components()))
}

fn on_y(a: &TangentFieldOnY) -> Value {
    json!(field_strings(a.components()))
}

fn cert(c: &MembershipCertificate) -> Value {
    json!(c.to_json())
}

fn admissibility(r: &AdmissibilityReport) -> Value {
    json!({
        "order": r.order,
        "admissible": r.admissible(),
        "defects": r.defects.iter().map(on_y).collect::<Vec<_>>(),
        "verdicts": r.verdicts.iter().map(cert).collect::<Vec<_>>(),
    })
}

pub fn bracket(file: &Path) -> Result<Outcome> {
    let f = vf(file)?;
    let [a, b] = fields(&f, 2, "bracket")? else { unreachable!() };
    done(json!({ "bracket": tdf(&lie_bracket(a, b)?), "lie_d": tdf(&lie_d(a, b)?) }))
}

pub fn flow(file: &Path, order: usize) -> Result<Outcome> {
    let f = vf(file)?;
    let a = &fields(&f, 1, "flow")?[0];
    let jet = flow_jet(a, order);
    let mut out = json!({ "jet": jet.to_json() });
    if !f.y.vanishing().is_empty() {
        out["jet_on_y"] = json!(jet.restrict(&f.y).to_json());
    }
    done(out)
}

pub fn diff_formula(file: &Path, order: usize) -> Result<Outcome> {
    ensure!(order >= 1, "--order must be at least 1");
    let f = vf(file)?;
    let [a, b] = fields(&f, 2, "diff-formula")? else { unreachable!() };
    let formula = TangentFieldOnY::restrict(&difference_formula(&vec![a.clone(); order], b)?, &f.y);
    let gap = jet_difference(&flow_jet(b, order + 1), &flow_jet(a, order + 1), &f.y)?;
    let agree = formula == gap;
    Ok(Outcome { results: json!({ "formula": on_y(&formula), "jet_gap": on_y(&gap), "agree": agree }), ok: agree })
}

pub fn admissible(setup_path: &Path, file: &Path, order: usize, bound: Option<u32>) -> Result<Outcome> {
    let s = setup(setup_path, bound)?;
    let f = vf_for(file, &s)?;
    let r = is_admissible(&fields(&f, 1, "admissible")?[0], order, &s)?;
    Ok(Outcome { results: admissibility(&r), ok: r.admissible() })
}

pub fn extend(setup_path: &Path, file: &Path, order: usize, bound: Option<u32>) -> Result<Outcome> {
    let s = setup(setup_path, bound)?;
    let f = vf_for(file, &s)?;
    let [a, d] = fields(&f, 2, "extend")? else { unreachable!() };
    let delta = static_field(d, "the correction")?;
    let ext = extend_admissible(a, &delta, order, &s)?;
    let check = check_extension(a, &ext.field, &delta, order, &s)?;
    Ok(Outcome {
        results: json!({
            "field": tdf(&ext.field),
            "e": vfield(&ext.e),
            "admissibility": admissibility(&check.admissibility),
            "jets_agree": check.jets_agree,
            "difference": on_y(&check.difference),
            "difference_matches": check.difference_matches,
        }),
        ok: check.passed(),
    })
}

fn problem(path: &Path, bound: Option<u32>) -> Result<Problem> {
    let mut p = Problem::load(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    if bound.is_some() {
        p.setup.degree_bound = bound;
    }
    Ok(p)
}

pub fn lift(path: &Path, bound: Option<u32>) -> Result<Outcome> {
    let p = problem(path, bound)?;
    let r = lift_to_order(&p.deformation()?)?;
    let stages: Vec<Value> = r
        .stages
        .iter()
        .map(|s| json!({ "order": s.order, "field": tdf(&s.field), "difference": on_y(&s.difference), "matches_correction": s.matches_correction }))
        .collect();
    Ok(Outcome {
        results: json!({
            "field": tdf(&r.field),
            "jet": r.jet.to_json(),
            "admissibility": admissibility(&r.report),
            "stages": stages,
            "seed_preserved": r.seed_preserved,
            "coherent": r.coherent,
        }),
        ok: r.passed(),
    })
}

pub fn cech(path: &Path, bound: Option<u32>) -> Result<Outcome> {
    let p = problem(path, bound)?;
    let charts = p.charts()?;
    ensure!(!charts.is_empty(), "problem has no `charts`");
    let data = cech_cocycle(&charts, p.json.order, &p.setup)?;
    let splitting = match p.splitting()? {
        Some(s) => s,
        None => default_splitting(&data),
    };
    let cocycle: Vec<Value> = data
        .certificates
        .iter()
        .map(|((j, k), c)| json!({ "j": j, "k": k, "value": on_y(&data.cocycle[*j][*k]), "certificate": cert(c) }))
        .collect();
    let (glued, glue_error) = match cech_glue(&data, &splitting, &p.setup) {
        Ok(g) => (Some(g), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let ok = data.antisymmetric() && data.cocycle_identity() && data.in_g() && glued.is_some();
    let mut results = json!({
        "order": data.order,
        "cocycle": cocycle,
        "antisymmetric": data.antisymmetric(),
        "cocycle_identity": data.cocycle_identity(),
        "in_g": data.in_g(),
        "splitting": splitting.iter().map(on_y).collect::<Vec<_>>(),
    });
    if let Some(g) = glued {
        results["corrected"] = json!(g.corrected.iter().map(tdf).collect::<Vec<_>>());
        results["jet"] = json!(g.jet.to_json());
    }
    if let Some(e) = glue_error {
        results["glue_error"] = json!(e);
    }
    Ok(Outcome { results, ok })
}

fn darboux(f: &VfFile) -> Result<jetlift::DarbouxSpace> {
    Ok(jetlift::DarbouxSpace::with_vars(&f.vars)?)
}

pub fn ham(file: &Path) -> Result<Outcome> {
    let f = vf(file)?;
    let space = darboux(&f)?;
    ensure!(!f.polys.is_empty(), "ham needs at least one `poly` line");
    let out: Vec<Value> = f.polys.iter().map(|h| json!({ "hamiltonian": h.to_string(), "field": tdf(&ham_field_td(h, &space)) })).collect();
    done(json!({ "fields": out }))
}

fn setup_space(s: &Setup) -> Result<jetlift::DarbouxSpace> {
    match &s.sheaf {
        SheafSpec::Hamiltonian(space) => Ok(space.clone()),
        other => bail!("this subcommand needs a hamiltonian sheaf, not {}", other.kind()),
    }
}

pub fn extend_ham(setup_path: &Path, file: &Path, bound: Option<u32>) -> Result<Outcome> {
    let s = setup(setup_path, bound)?;
    let space = setup_space(&s)?;
    let f = vf_for(file, &s)?;
    let a = static_field(&fields(&f, 1, "extend-ham")?[0], "the field on Y")?;
    let v = s.restrict(&a);
    let g = hamiltonian_extension(&v, &space)?;
    let back = TangentFieldOnY::restrict(&ham_field(&g, &space), &s.y);
    let ok = back == v;
    Ok(Outcome { results: json!({ "field_on_y": on_y(&v), "hamiltonian": g.to_string(), "reproduces": ok }), ok })
}

pub fn perp_check(setup_path: &Path, file: &Path, bound: Option<u32>) -> Result<Outcome> {
    let s = setup(setup_path, bound)?;
    let space = setup_space(&s)?;
    let f = vf_for(file, &s)?;
    ensure!(f.polys.len() >= 2, "perp-check needs two `poly` lines");
    let r = check_bracket_perp(&ham_field(&f.polys[0], &space), &ham_field(&f.polys[1], &space), &s.y, &space)?;
    Ok(Outcome {
        results: json!({ "bracket": vfield(&r.bracket), "restricted": on_y(&r.restricted), "certificate": cert(&r.certificate) }),
        ok: r.certificate.is_member(),
    })
}

pub fn omega_check(file: &Path, order: usize) -> Result<Outcome> {
    let f = vf(file)?;
    let space = darboux(&f)?;
    ensure!(!f.polys.is_empty(), "omega-check needs a `poly` line with the Hamiltonian");
    let a = ham_field_td(&f.polys[0], &space);
    let residual = pullback_form_along_flow(&a, order, &space)?;
    let zero = residual.iter().flatten().all(|p| p.is_zero());
    let rows: Vec<Vec<String>> = residual.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
    Ok(Outcome { results: json!({ "field": tdf(&a), "order": order, "residual": rows, "zero": zero }), ok: zero })
}

fn foliation_gens(s: &Setup) -> Result<Vec<VectorField>> {
    match &s.sheaf {
        SheafSpec::FoliationSpan(g) | SheafSpec::ConstantSpan(g) => Ok(g.clone()),
        other => bail!("this subcommand needs a foliation sheaf, not {}", other.kind()),
    }
}

pub fn tangency(setup_path: &Path, bound: Option<u32>) -> Result<Outcome> {
    let s = setup(setup_path, bound)?;
    let gens = foliation_gens(&s)?;
    let ideal = tangency_ideal(&gens, &s.y);
    let points: Vec<Vec<String>> = sample_tangency_points(&ideal, &s.y).iter().map(|p| p.iter().map(|c| c.to_string()).collect()).collect();
    done(json!({
        "ideal": ideal.generators.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "sample_points": points,
    }))
}

pub fn fol_check(setup_path: &Path, file: &Path, bound: Option<u32>) -> Result<Outcome> {
    let s = setup(setup_path, bound)?;
    let gens = foliation_gens(&s)?;
    let f = vf_for(file, &s)?;
    let [a, b] = fields(&f, 2, "fol-check")? else { unreachable!() };
    let r = check_foliation_bracket(&static_field(a, "A")?, &static_field(b, "B")?, &gens, &s.y, s.degree_bound)?;
    Ok(Outcome {
        results: json!({
            "bracket": vfield(&r.bracket),
            "restricted": on_y(&r.restricted),
            "certificate": cert(&r.certificate),
            "tangency_points": r.tangency_points,
            "vanishes_on_tangency_locus": r.vanishes_on_t,
        }),
        ok: r.passed(),
    })
}

pub fn velocity_check(setup_path: &Path, file: &Path, order: usize, bound: Option<u32>) -> Result<Outcome> {
    let s = setup(setup_path, bound)?;
    let gens = foliation_gens(&s)?;
    let f = vf_for(file, &s)?;
    let r = velocity_in_foliation(&fields(&f, 1, "velocity-check")?[0], &gens, order, s.degree_bound)?;
    let strings = |v: &[jetlift::Poly]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
    Ok(Outcome {
        results: json!({
            "velocity": strings(&r.velocity),
            "transported": r.transported.iter().map(|g| strings(g)).collect::<Vec<_>>(),
            "certificate": cert(&r.certificate),
        }),
        ok: r.certificate.is_member(),
    })
}

pub fn verify(cfg: &SuiteConfig) -> Result<Outcome> {
    let r = run_suite(cfg);
    Ok(Outcome { ok: r.all_green(), results: serde_json::to_value(&r)? })
}
