//! Invariance checkers: webs against curves, equations against curves, and
//! the invariant-line solvers they share.

use super::{InvariantsError, ProjectiveCurve};
use crate::algebra::bihom::{bihom_vars, chart_vars, BiHomPoly};
use crate::algebra::field::Field;
use crate::algebra::poly::MPoly;
use crate::contact::SecondOrderODE;
use crate::lines::{line_divides, LineSolutions};
use crate::webs::PlaneWeb;

/// Outcome of an invariance check; the cofactor H with X_W(F) = F H is
/// attached when it is defined over the coefficient field.
#[derive(Clone, Debug)]
pub struct Invariance {
    pub invariant: bool,
    pub cofactor: Option<BiHomPoly>,
}

/// A checker with the per-object data hoisted out: the infinity-line
/// verdict, the vertical-lift restriction, and the chart data are fixed by
/// the object, so bulk screening computes them once.
pub struct CurveChecker {
    infinity_invariant: bool,
    /// The tangency-type section restricted to vertical lifts: a polynomial
    /// in (x, y) whose y-coefficients must die modulo the vertical part.
    vertical_restriction: MPoly,
    core: CoreTest,
}

enum CoreTest {
    Web { chart_coeffs: Vec<MPoly> },
    Ode { chart_a: MPoly, chart_b: MPoly },
}

impl CurveChecker {
    pub fn for_web(w: &PlaneWeb) -> CurveChecker {
        CurveChecker {
            infinity_invariant: infinity_line_invariant(w.section()),
            vertical_restriction: vertical_restriction(w.section()),
            core: CoreTest::Web { chart_coeffs: w.chart_coefficients() },
        }
    }

    pub fn for_ode(e: &SecondOrderODE) -> CurveChecker {
        let (chart_a, chart_b) = e.chart_vector_field();
        CurveChecker {
            infinity_invariant: infinity_line_invariant(e.vertical_part()),
            vertical_restriction: vertical_restriction(e.vertical_part()),
            core: CoreTest::Ode { chart_a, chart_b },
        }
    }

    pub fn is_invariant(&self, curve: &ProjectiveCurve) -> bool {
        let split = curve.split();
        if split.infinity_mult >= 1 && !self.infinity_invariant {
            return false;
        }
        if split.vertical.degree_in(0).unwrap_or(0) >= 1
            && !vertical_condition(&self.vertical_restriction, &split.vertical)
        {
            return false;
        }
        if !split.core.is_constant() {
            let ok = match &self.core {
                CoreTest::Web { chart_coeffs } => web_core_condition(chart_coeffs, &split.core),
                CoreTest::Ode { chart_a, chart_b } => {
                    ode_core_condition(chart_a, chart_b, &split.core)
                }
            };
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Is the curve invariant by the web? The test runs on the chart split: the
/// line at infinity and vertical lines through the divisibility of the
/// section along their lifts, the core through the direction substitution
/// E_W(f) = sum_i a_i f_y^{k-i} (-f_x)^i with f | E_W(f).
pub fn is_invariant_curve_web(
    w: &PlaneWeb,
    curve: &ProjectiveCurve,
) -> Result<Invariance, InvariantsError> {
    let invariant = CurveChecker::for_web(w).is_invariant(curve);
    let cofactor = if invariant { gradient_cofactor(w, curve) } else { None };
    Ok(Invariance { invariant, cofactor })
}

/// The homogeneous route: X_W(F) = B(X, grad F), vanishing mod F exactly on
/// invariant curves, with the cofactor of degree d + k(r-1) - r.
pub fn invariance_via_gradient(
    w: &PlaneWeb,
    curve: &ProjectiveCurve,
) -> Result<Invariance, InvariantsError> {
    let field = curve.field();
    if let Field::Prime(p) = field {
        if curve.degree() as u64 % p == 0 {
            // the Euler identity degenerates; fall back to the chart route
            return is_invariant_curve_web(w, curve);
        }
    }
    let derived = web_derivative(w.section(), curve.form());
    match derived.try_div(curve.form().as_poly()) {
        Some(q) => {
            let (d, k) = w.section().bidegree();
            let r = curve.degree();
            let expected = d + k * (r - 1) - r;
            let cof = if q.is_zero() {
                BiHomPoly::zero(field, expected, 0)
            } else {
                BiHomPoly::new(q)?
            };
            Ok(Invariance { invariant: true, cofactor: Some(cof) })
        }
        None => Ok(Invariance { invariant: false, cofactor: None }),
    }
}

/// B(X, grad F): the section with the gradient of the curve substituted for
/// the line coordinates.
fn web_derivative(section: &BiHomPoly, form: &BiHomPoly) -> MPoly {
    let field = section.field();
    let bv = bihom_vars();
    let xs = [
        MPoly::var_idx(field, &bv, 0),
        MPoly::var_idx(field, &bv, 1),
        MPoly::var_idx(field, &bv, 2),
    ];
    let grad = [
        form.as_poly().partial(0),
        form.as_poly().partial(1),
        form.as_poly().partial(2),
    ];
    section.subst(&xs, &grad).expect("gradient substitution")
}

fn gradient_cofactor(w: &PlaneWeb, curve: &ProjectiveCurve) -> Option<BiHomPoly> {
    if let Field::Prime(p) = curve.field() {
        if curve.degree() as u64 % p == 0 {
            return None;
        }
    }
    let derived = web_derivative(w.section(), curve.form());
    let q = derived.try_div(curve.form().as_poly())?;
    let (d, k) = w.section().bidegree();
    let r = curve.degree();
    let expected = d + k * (r - 1) - r;
    Some(if q.is_zero() {
        BiHomPoly::zero(curve.field(), expected, 0)
    } else {
        BiHomPoly::new(q).ok()?
    })
}

/// E_W(f) = sum_i a_i(x, y) (-f_x)^i f_y^(k-i), divisible by f exactly when
/// the core curve is invariant.
fn web_core_condition(chart_coeffs: &[MPoly], core: &MPoly) -> bool {
    let e = direction_substitution(chart_coeffs, core);
    e.try_div(core).is_some()
}

/// Substitutes the tangent direction (f_y, -f_x) into a p-coefficient list.
fn direction_substitution(coeffs: &[MPoly], f: &MPoly) -> MPoly {
    let field = f.field;
    let cv = f.vars.clone();
    let fx = f.partial(0);
    let fy = f.partial(1);
    let k = coeffs.len() - 1;
    let mut pow_fx = vec![MPoly::one(field, &cv)];
    let mut pow_fy = vec![MPoly::one(field, &cv)];
    for i in 1..=k {
        pow_fx.push(pow_fx[i - 1].mul(&fx.neg()));
        pow_fy.push(pow_fy[i - 1].mul(&fy));
    }
    let mut acc = MPoly::zero(field, &cv);
    for (i, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        acc = acc.add(&a.mul(&pow_fx[i]).mul(&pow_fy[k - i]));
    }
    acc
}

/// Is the line at infinity invariant for the tangency-type section?
fn infinity_line_invariant(section: &BiHomPoly) -> bool {
    let field = section.field();
    line_divides(section, &[field.one(), field.zero(), field.zero()])
}

/// The section restricted to vertical-line lifts: points (1, x, y) with line
/// coordinates (x, -1, 0), as a polynomial in the chart ring.
fn vertical_restriction(section: &BiHomPoly) -> MPoly {
    let field = section.field();
    let cv = chart_vars();
    let x = MPoly::var_idx(field, &cv, 0);
    let y = MPoly::var_idx(field, &cv, 1);
    let one = MPoly::one(field, &cv);
    let zero = MPoly::zero(field, &cv);
    section
        .subst(&[one.clone(), x.clone(), y], &[x, one.neg(), zero])
        .expect("vertical substitution")
}

/// All vertical lines x = c with v(c) = 0 at once: the restricted section
/// must vanish modulo v.
fn vertical_condition(restriction: &MPoly, v: &MPoly) -> bool {
    restriction
        .coeffs_in(1)
        .iter()
        .all(|c| c.is_zero() || c.try_div(v).is_some())
}

/// Is the plane curve a solution of the equation, i.e. is its lift invariant
/// by the foliation? Vertical and infinity components reduce to divisibility
/// of F2 along their lifts; the core uses the second-order contact test:
/// with g = f_x + p f_y, the derivation X(g) must vanish on the lift.
pub fn is_solution_ode(
    e: &SecondOrderODE,
    curve: &ProjectiveCurve,
) -> Result<bool, InvariantsError> {
    Ok(CurveChecker::for_ode(e).is_invariant(curve))
}

fn ode_core_condition(chart_a: &MPoly, chart_b: &MPoly, core: &MPoly) -> bool {
    let field = core.field;
    let cv = chart_vars();
    let p = MPoly::var_idx(field, &cv, 2);
    let g = core.partial(0).add(&p.mul(&core.partial(1)));
    let xg = chart_b
        .mul(&g.partial(0))
        .add(&p.mul(chart_b).mul(&g.partial(1)))
        .add(&chart_a.mul(&g.partial(2)));
    if xg.is_zero() {
        return true;
    }
    // substitute p = -f_x / f_y and clear powers of f_y
    let coeffs = xg.coeffs_in(2);
    let r = direction_substitution(&coeffs, core);
    r.try_div(core).is_some()
}

/// All invariant lines of an equation: lines whose lifts the foliation keeps.
/// A line is one exactly when it divides F2 evaluated along it, so this
/// delegates to the line-divisibility solver on the vertical component.
pub fn find_invariant_lines_ode(e: &SecondOrderODE) -> Result<LineSolutions, InvariantsError> {
    Ok(crate::lines::solve_line_divisibility(e.vertical_part())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::contact::embed_r2;

    fn q() -> Field {
        Field::Rational
    }

    fn curve(expr: &str) -> ProjectiveCurve {
        let f = parse_poly(expr, q(), &chart_vars()).unwrap();
        ProjectiveCurve::from_affine(&f).unwrap()
    }

    fn web(expr: &str) -> PlaneWeb {
        let s = BiHomPoly::new(parse_poly(expr, q(), &bihom_vars()).unwrap()).unwrap();
        PlaneWeb::new(s).unwrap()
    }

    #[test]
    fn horizontal_foliation_invariants() {
        // chart form p (section -A1): leaves y = c
        let w = web("A1");
        assert!(is_invariant_curve_web(&w, &curve("y - 5")).unwrap().invariant);
        assert!(!is_invariant_curve_web(&w, &curve("x")).unwrap().invariant);
    }

    #[test]
    fn pencil_cofactor_degree() {
        // pencil through the origin: F = xp - y is section A0; the line
        // y = 3x is invariant with the zero cofactor in degree -1
        let w = web("A0");
        let inv = is_invariant_curve_web(&w, &curve("y - 3*x")).unwrap();
        assert!(inv.invariant);
        let cof = inv.cofactor.unwrap();
        assert_eq!(cof.bidegree(), (-1, 0));
        assert!(cof.is_zero());
        // chart oracle: E_W(f) = -f, divisible, cofactor route agrees
        let via_grad = invariance_via_gradient(&w, &curve("y - 3*x")).unwrap();
        assert!(via_grad.invariant);
    }

    #[test]
    fn cofactor_degree_formula() {
        // the foliation y' = 2x (chart form p - 2x, a 1-web of degree 1)
        // keeps the parabolas y = x^2 + c
        let f = parse_poly("p - 2*x", q(), &chart_vars()).unwrap();
        let section = crate::algebra::chart_to_bihom(&f, 1, 1).unwrap();
        let w = PlaneWeb::new(section).unwrap();
        assert_eq!((w.rank(), w.degree()), (1, 1));
        let c = curve("y - x^2");
        let inv = is_invariant_curve_web(&w, &c).unwrap();
        assert!(inv.invariant);
        let cof = inv.cofactor.unwrap();
        // d + k(r-1) - r = 1 + 1 - 2 = 0
        assert_eq!(cof.bidegree().0, 0);
        let via_grad = invariance_via_gradient(&w, &c).unwrap();
        assert_eq!(via_grad.cofactor.unwrap(), cof);
    }

    #[test]
    fn reducible_curves_need_every_factor() {
        let w = web("A0"); // pencil through origin
        // both factors through the origin: invariant
        assert!(is_invariant_curve_web(&w, &curve("(y - 3*x)*(y + x)")).unwrap().invariant);
        // one factor misses the origin
        assert!(!is_invariant_curve_web(&w, &curve("(y - 3*x)*(y + x - 1)")).unwrap().invariant);
    }

    #[test]
    fn lines_solve_the_lines_equation() {
        let l = SecondOrderODE::lines_equation(q());
        for expr in ["y - 3*x - 1", "y + 7*x", "x - 2", "y - 5"] {
            assert!(is_solution_ode(&l, &curve(expr)).unwrap(), "{expr}");
        }
        assert!(!is_solution_ode(&l, &curve("y - x^2")).unwrap());
        let sols = find_invariant_lines_ode(&l).unwrap();
        assert!(sols.family);
    }

    #[test]
    fn parabolas_solve_y_double_prime_equals_one() {
        // y'' = 1: A = 1, B = 1: F1 = X0^3, F2 = A2^3, bidegree (1,1)
        let f1 = BiHomPoly::new(parse_poly("X0^3", q(), &bihom_vars()).unwrap()).unwrap();
        let f2 = BiHomPoly::new(parse_poly("A2^3", q(), &bihom_vars()).unwrap()).unwrap();
        let e = SecondOrderODE::new(f1, f2).unwrap();
        assert_eq!(e.bidegree(), crate::chow::Bidegree::new(1, 1));
        assert!(is_solution_ode(&e, &curve("2*y - x^2")).unwrap());
        assert!(is_solution_ode(&e, &curve("2*y - x^2 - 2*x - 5")).unwrap());
        assert!(!is_solution_ode(&e, &curve("y - x^2")).unwrap());
        assert!(!is_solution_ode(&e, &curve("y - 3*x - 1")).unwrap());
        // the vertical pencil is invariant (tang(F, L) = 3 hd is the
        // tripled pencil through (0:0:1)), so the line solver reports a family
        let sols = find_invariant_lines_ode(&e).unwrap();
        assert!(sols.family);
        assert!(is_solution_ode(&e, &curve("x - 4")).unwrap());
    }

    #[test]
    fn no_invariant_lines_when_f2_is_generic_cubic() {
        // bidegree (1,1) equation with F2 = A1^3 + A2^3 - A0^3: the dual
        // cubic has rational points, each one an invariant line
        let f1 = BiHomPoly::new(parse_poly("X0^3", q(), &bihom_vars()).unwrap()).unwrap();
        let f2 =
            BiHomPoly::new(parse_poly("A1^3 + A2^3 - A0^3", q(), &bihom_vars()).unwrap()).unwrap();
        let e = SecondOrderODE::new(f1, f2).unwrap();
        let sols = find_invariant_lines_ode(&e).unwrap();
        // E(1,b): the solution set is the dual curve, a one-parameter family
        assert!(sols.family);
        // and a rational point of it gives a line solving the equation:
        // a = (1, 0, 1): a0^3 = 1... -1 + 0 + 1 = 0: line X0 + X2 = 0,
        // affine y = -1
        assert!(is_solution_ode(&e, &curve("y + 1")).unwrap());
    }

    #[test]
    fn embedded_web_equation_shares_invariants() {
        // E = F . X_V for a web section F: the invariant lifts are exactly
        // the web-invariant curves
        let w = web("A0"); // pencil through origin
        let e = embed_r2(w.section().clone()).unwrap();
        assert!(is_solution_ode(&e, &curve("y - 3*x")).unwrap());
        assert!(!is_solution_ode(&e, &curve("y - 3*x - 1")).unwrap());
    }

    #[test]
    fn screening_style_vertical_cases() {
        // an equation whose F2 = A2^3 kills exactly the pencil through
        // (0:0:1): vertical lines and the line at infinity
        let f1 = BiHomPoly::new(parse_poly("X0^3", q(), &bihom_vars()).unwrap()).unwrap();
        let f2 = BiHomPoly::new(parse_poly("A2^3", q(), &bihom_vars()).unwrap()).unwrap();
        let e = SecondOrderODE::new(f1, f2).unwrap();
        // the product of two vertical lines is a (squarefree) invariant conic
        assert!(is_solution_ode(&e, &curve("(x - 1)*(x + 2)")).unwrap());
        // mixed product with a non-invariant line fails
        assert!(!is_solution_ode(&e, &curve("(x - 1)*(y - x)")).unwrap());
    }
}
