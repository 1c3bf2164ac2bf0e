//! Frozen values for small hand-checkable examples.

use std::sync::Arc;

use jetlift::admissibility::{extend_admissible, is_admissible};
use jetlift::foliation::{check_foliation_bracket, tangency_ideal};
use jetlift::jet::{difference_formula, flow_jet};
use jetlift::lifting::{lift_to_order, DeformationProblem};
use jetlift::parse::{parse_field, parse_poly};
use jetlift::symplectic::{check_bracket_perp, ham_field, ham_field_td, hamiltonian_extension, poisson_bracket};
use jetlift::*;

fn plane() -> (DarbouxSpace, Arc<Vars>) {
    let s = DarbouxSpace::new(1);
    let v = s.vars();
    (s, v)
}

fn ham_setup() -> (DarbouxSpace, Setup) {
    let (s, v) = plane();
    let st = Setup::new(&v, SubspaceY::new(2, &[0]).unwrap(), SheafSpec::Hamiltonian(s.clone()), ObstructionSpec::Perp(s.clone()));
    (s, st)
}

fn strs(f: &VectorField) -> Vec<String> {
    f.components().iter().map(|p| p.to_string()).collect()
}

#[test]
fn partial_and_restriction() {
    let (_, v) = plane();
    let p = parse_poly("x^2*y", &v).unwrap();
    assert_eq!(p.partial_named("x").unwrap().to_string(), "2*x*y");
    assert!(parse_poly("x*y", &v).unwrap().restrict(&[0]).is_zero());
}

#[test]
fn curve_substitution() {
    let (_, v) = plane();
    let p = parse_poly("x*y", &v).unwrap();
    let t = Poly::time(&v);
    let curve = [t.clone(), Poly::one(&v).try_add(&t).unwrap(), t.clone()];
    let q = p.substitute(&curve, &v).unwrap();
    assert_eq!(q.to_string(), "t^2 + t");
}

#[test]
fn flow_jet_of_linear_field() {
    let (_, v) = plane();
    let f = parse_field("(y + t*x, -x)", &v).unwrap();
    let j = flow_jet(&f, 4).to_json();
    assert_eq!(j.coeffs[0], ["x", "y", "0", "1/6*y", "0"]);
    assert_eq!(j.coeffs[1], ["y", "-x", "-1/2*y", "0", "-1/24*y"]);
}

#[test]
fn difference_formula_second_order() {
    let (_, v) = plane();
    let a = parse_field("(y + t*x, -x)", &v).unwrap();
    let b = parse_field("(y + t*x + x^2*t, -x)", &v).unwrap();
    let d = difference_formula(&[a.clone(), a], &b).unwrap();
    assert_eq!(strs(&d), ["4*x*y", "2*x^2"]);
}

#[test]
fn hamiltonian_fields_and_brackets() {
    let (s, v) = plane();
    let h = parse_poly("x*y", &v).unwrap();
    let k = parse_poly("x*y + x^2*y", &v).unwrap();
    assert_eq!(strs(&ham_field(&h, &s)), ["x", "-y"]);
    assert_eq!(strs(&ham_field(&k, &s)), ["x^2 + x", "-2*x*y - y"]);
    let br = ham_field(&h, &s).bracket(&ham_field(&k, &s)).unwrap();
    assert_eq!(strs(&br), ["x^2", "-2*x*y"]);
    assert_eq!(br, ham_field(&poisson_bracket(&h, &k, &s), &s));
}

#[test]
fn hamiltonian_extension_of_tangent_field() {
    let (_, st) = ham_setup();
    let (s, v) = plane();
    let f = VectorField::new(&v, vec![Poly::one(&v), Poly::var(&v, 1)]).unwrap();
    let tf = TangentFieldOnY::restrict(&f, &st.y);
    let g = hamiltonian_extension(&tf, &s).unwrap();
    assert_eq!(g.to_string(), "-x*y + y");
    assert_eq!(TangentFieldOnY::restrict(&ham_field(&g, &s), &st.y), tf);
}

#[test]
fn bracket_of_agreeing_hamiltonians_is_perp() {
    let (s, st) = ham_setup();
    let v = s.vars();
    let f = ham_field(&parse_poly("x*y", &v).unwrap(), &s);
    let g = ham_field(&parse_poly("x*y + x^2*y", &v).unwrap(), &s);
    let r = check_bracket_perp(&f, &g, &st.y, &s).unwrap();
    assert!(r.certificate.is_member());
}

#[test]
fn first_order_extension() {
    let (s, st) = ham_setup();
    let v = s.vars();
    let a = ham_field_td(&parse_poly("x*y", &v).unwrap(), &s);
    let d = ham_field(&parse_poly("x", &v).unwrap(), &s);
    let ext = extend_admissible(&a, &d, 1, &st).unwrap();
    assert_eq!(ext.field.to_string(), "(x, 1/2*t^2 - y - t)");
    assert_eq!(strs(&ext.e), ["0", "1"]);
}

#[test]
fn admissibility_of_time_dependent_hamiltonian() {
    let (s, st) = ham_setup();
    let v = s.vars();
    let a = ham_field_td(&parse_poly("x*y + t*x^2", &v).unwrap(), &s);
    assert_eq!(a.to_string(), "(x, -2*x*t - y)");
    let r = is_admissible(&a, 2, &st).unwrap();
    assert!(r.admissible());
    assert!(r.defects.iter().all(|d| d.is_zero()));
}

#[test]
fn lift_to_second_order() {
    let (s, st) = ham_setup();
    let v = s.vars();
    let problem = DeformationProblem {
        setup: st,
        seed: ham_field(&parse_poly("x*y", &v).unwrap(), &s),
        corrections: vec![ham_field(&parse_poly("x", &v).unwrap(), &s)],
        order: 2,
    };
    let l = lift_to_order(&problem).unwrap();
    assert_eq!(l.field.to_string(), "(x, 1/2*t^2 - y - t)");
    let j = l.jet.to_json();
    assert_eq!(j.coeffs[0], ["x", "x", "1/2*x"]);
    assert_eq!(j.coeffs[1], ["y", "-y", "1/2*y - 1/2"]);
}

#[test]
fn foliation_tangency_and_bracket() {
    // The parabola foliation spanned by (1, x), with Y = {y = 0}.
    let v = Vars::chart(2);
    let y = SubspaceY::new(2, &[1]).unwrap();
    let gens = vec![VectorField::new(&v, vec![Poly::one(&v), Poly::var(&v, 0)]).unwrap()];
    let ideal = tangency_ideal(&gens, &y);
    assert_eq!(ideal.generators.iter().map(|p| p.to_string()).collect::<Vec<_>>(), ["x1"]);
    let a = gens[0].clone();
    let b = gens[0].mul_poly(&Poly::one(&v).try_add(&Poly::var(&v, 1)).unwrap());
    let r = check_foliation_bracket(&a, &b, &gens, &y, None).unwrap();
    assert!(r.passed());
    assert_eq!(strs(&r.bracket), ["x1", "x1^2"]);
}
