//! The contact variety M = P(TP^2): charts, the contact form, second-order
//! equations as section pairs, lifts of plane curves, and tangency machinery.
//!
//! A second-order equation of bidegree (a, b) is stored split as
//! X = F1 * X_L + F2 * X_V with F1 of bidegree (a+2, b-1) and F2 of bidegree
//! (a-1, b+2); in the principal chart X = B dx + pB dy + A dp with
//! B = F1|chart and A = F2|chart, the classical y'' = A/B.

use crate::algebra::bihom::{chart_vars, BiHomPoly};
use crate::algebra::field::{Field, FieldElem};
use crate::algebra::poly::MPoly;
use crate::algebra::univar::{self, gcd_univar, is_univariate_in, squarefree_decomposition};
use crate::algebra::{resultant, AlgebraError};
use crate::chow::Bidegree;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ContactError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("component bidegrees {f1:?} and {f2:?} are not consistent with one equation")]
    InconsistentBidegrees { f1: (i64, i64), f2: (i64, i64) },
    #[error("both components are zero")]
    ZeroEquation,
    #[error("expected a polynomial in x, y only")]
    NotAPlaneCurve,
    #[error("curve must be nonconstant")]
    ConstantCurve,
    #[error("curve is not squarefree")]
    NotSquarefree,
    #[error("the ideal does not cut a curve")]
    NotACurve,
    #[error("leading coefficient degenerates along the curve")]
    DegenerateLeadingCoefficient,
    #[error("constant recovery failed: {0}")]
    Recovery(String),
}

/// A second-order differential equation X = F1*X_L + F2*X_V of bidegree (a, b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondOrderODE {
    bidegree: Bidegree,
    lines_part: BiHomPoly,
    vertical_part: BiHomPoly,
}

impl SecondOrderODE {
    /// Builds an equation from its two components. Nonzero components fix
    /// the bidegree; zero components are re-stamped to the matching slot.
    pub fn new(
        lines_part: BiHomPoly,
        vertical_part: BiHomPoly,
    ) -> Result<SecondOrderODE, ContactError> {
        let field = lines_part.field();
        let from_f1 = |d: (i64, i64)| Bidegree::new(d.0 - 2, d.1 + 1);
        let from_f2 = |d: (i64, i64)| Bidegree::new(d.0 + 1, d.1 - 2);
        let bidegree = match (lines_part.is_zero(), vertical_part.is_zero()) {
            (true, true) => return Err(ContactError::ZeroEquation),
            (false, true) => from_f1(lines_part.bidegree()),
            (true, false) => from_f2(vertical_part.bidegree()),
            (false, false) => {
                let d1 = from_f1(lines_part.bidegree());
                let d2 = from_f2(vertical_part.bidegree());
                if d1 != d2 {
                    return Err(ContactError::InconsistentBidegrees {
                        f1: lines_part.bidegree(),
                        f2: vertical_part.bidegree(),
                    });
                }
                d1
            }
        };
        let (a, b) = (bidegree.a, bidegree.b);
        let lines_part = if lines_part.is_zero() {
            BiHomPoly::zero(field, a + 2, b - 1)
        } else {
            lines_part
        };
        let vertical_part = if vertical_part.is_zero() {
            BiHomPoly::zero(field, a - 1, b + 2)
        } else {
            vertical_part
        };
        Ok(SecondOrderODE { bidegree, lines_part, vertical_part })
    }

    /// The lines equation y'' = 0, of bidegree (-2, 1).
    pub fn lines_equation(field: Field) -> SecondOrderODE {
        SecondOrderODE {
            bidegree: Bidegree::new(-2, 1),
            lines_part: BiHomPoly::constant(field, field.one()),
            vertical_part: BiHomPoly::zero(field, -3, 3),
        }
    }

    /// The fiber foliation, of bidegree (1, -2).
    pub fn vertical_foliation(field: Field) -> SecondOrderODE {
        SecondOrderODE {
            bidegree: Bidegree::new(1, -2),
            lines_part: BiHomPoly::zero(field, 3, -3),
            vertical_part: BiHomPoly::constant(field, field.one()),
        }
    }

    pub fn bidegree(&self) -> Bidegree {
        self.bidegree
    }

    pub fn field(&self) -> Field {
        self.lines_part.field()
    }

    pub fn lines_part(&self) -> &BiHomPoly {
        &self.lines_part
    }

    pub fn vertical_part(&self) -> &BiHomPoly {
        &self.vertical_part
    }

    /// The chart pair (A, B) with X = B dx + pB dy + A dp, i.e. y'' = A/B.
    pub fn chart_vector_field(&self) -> (MPoly, MPoly) {
        (self.vertical_part.chart(), self.lines_part.chart())
    }

    /// T1(X) = X ^ X_L and T2(X) = X ^ X_V against the frame, normalized to
    /// (+F2, +F1).
    pub fn extract_t1_t2(&self) -> (BiHomPoly, BiHomPoly) {
        (self.vertical_part.clone(), self.lines_part.clone())
    }

    pub fn reduce_mod(&self, p: u64) -> Result<SecondOrderODE, AlgebraError> {
        Ok(SecondOrderODE {
            bidegree: self.bidegree,
            lines_part: self.lines_part.reduce_mod(p)?,
            vertical_part: self.vertical_part.reduce_mod(p)?,
        })
    }

    /// Applies the chart vector field to a chart function.
    pub fn chart_derivation(&self, f: &MPoly) -> MPoly {
        let (a, b) = self.chart_vector_field();
        let cv = chart_vars();
        let p = MPoly::var_idx(self.field(), &cv, 2);
        b.mul(&f.partial(0))
            .add(&p.mul(&b).mul(&f.partial(1)))
            .add(&a.mul(&f.partial(2)))
    }
}

/// R1(F) = F * X_L, an element of E(a-2, b+1) for F of bidegree (a, b).
pub fn embed_r1(f: BiHomPoly) -> Result<SecondOrderODE, ContactError> {
    if f.is_zero() {
        return Err(ContactError::ZeroEquation);
    }
    let field = f.field();
    let (m, n) = f.bidegree();
    Ok(SecondOrderODE {
        bidegree: Bidegree::new(m - 2, n + 1),
        vertical_part: BiHomPoly::zero(field, m - 3, n + 3),
        lines_part: f,
    })
}

/// R2(F) = F * X_V, an element of E(a+1, b-2) for F of bidegree (a, b).
pub fn embed_r2(f: BiHomPoly) -> Result<SecondOrderODE, ContactError> {
    if f.is_zero() {
        return Err(ContactError::ZeroEquation);
    }
    let field = f.field();
    let (m, n) = f.bidegree();
    Ok(SecondOrderODE {
        bidegree: Bidegree::new(m + 1, n - 2),
        lines_part: BiHomPoly::zero(field, m + 3, n - 3),
        vertical_part: f,
    })
}

/// The wedge section X1 ^ X2 = F1' F2'' - F2' F1'' of bidegree
/// (a1+a2+1, b1+b2+1); its chart restriction is B1 A2 - A1 B2.
pub fn tangency_section_pair(
    e1: &SecondOrderODE,
    e2: &SecondOrderODE,
) -> Result<BiHomPoly, AlgebraError> {
    let t1 = e1.lines_part.mul(&e2.vertical_part)?;
    let t2 = e1.vertical_part.mul(&e2.lines_part)?;
    t1.sub(&t2)
}

/// The contact form alpha = dy - p dx as (dx, dy, dp) coefficients.
pub fn contact_form(field: Field) -> [MPoly; 3] {
    let cv = chart_vars();
    let p = MPoly::var_idx(field, &cv, 2);
    [p.neg(), MPoly::one(field, &cv), MPoly::zero(field, &cv)]
}

/// Coefficient of dx^dy^dp in alpha ^ d(alpha); nonzero = non-integrability.
pub fn contact_nonintegrability_coefficient(field: Field) -> MPoly {
    // alpha = dy - p dx, d(alpha) = -dp^dx:
    // alpha ^ d(alpha) = (dy - p dx) ^ (-dp^dx) = -dy^dp^dx = -dx^dy^dp
    let cv = chart_vars();
    MPoly::from_i64(field, &cv, -1)
}

/// The lift of a plane curve {f = 0}: the chart ideal (f, f_x + p f_y).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedCurve {
    pub plane_curve: MPoly,
    pub lift_g: MPoly,
}

/// Builds the lift ideal of a nonconstant squarefree plane curve f(x, y).
pub fn lift_plane_curve(f: &MPoly) -> Result<LiftedCurve, ContactError> {
    if f.vars != chart_vars() {
        return Err(ContactError::NotAPlaneCurve);
    }
    if f.degree_in(2).unwrap_or(0) > 0 {
        return Err(ContactError::NotAPlaneCurve);
    }
    if f.is_constant() {
        return Err(ContactError::ConstantCurve);
    }
    if !plane_squarefree(f)? {
        return Err(ContactError::NotSquarefree);
    }
    let cv = chart_vars();
    let p = MPoly::var_idx(f.field, &cv, 2);
    let g = f.partial(0).add(&p.mul(&f.partial(1)));
    Ok(LiftedCurve { plane_curve: f.clone(), lift_g: g })
}

/// Squarefree test for a bivariate f(x, y): squarefree content together with
/// a nonvanishing discriminant-style resultant of the primitive part.
pub fn plane_squarefree(f: &MPoly) -> Result<bool, ContactError> {
    if f.is_constant() {
        return Ok(true);
    }
    let var = if f.degree_in(1).unwrap_or(0) > 0 { 1 } else { 0 };
    let content = univar::content_wrt(f, var);
    let other = 1 - var;
    if content.degree_in(other).unwrap_or(0) > 0 && !univar::squarefree_univar(&content, other)? {
        return Ok(false);
    }
    let primitive = f.try_div(&content).expect("content divides");
    if primitive.degree_in(var).unwrap_or(0) == 0 {
        return Ok(true);
    }
    if is_univariate_in(&primitive, var) {
        return Ok(univar::squarefree_univar(&primitive, var)?);
    }
    let r = resultant(&primitive, &primitive.partial(var), var)?;
    Ok(!r.is_zero())
}

/// Decides tangency to the contact distribution for the curve cut by the
/// chart ideal (f(x,y), g(x,y,p)): alpha ^ df ^ dg restricted to the curve.
pub fn is_tangent_to_contact(f: &MPoly, g: &MPoly) -> Result<bool, ContactError> {
    if f.vars != chart_vars() || g.vars != chart_vars() {
        return Err(ContactError::NotAPlaneCurve);
    }
    if f.is_zero() || g.is_zero() || f.degree_in(2).unwrap_or(0) > 0 {
        return Err(ContactError::NotACurve);
    }
    if f.is_constant() {
        return Err(ContactError::NotACurve);
    }
    if !plane_squarefree(f)? {
        return Err(ContactError::NotSquarefree);
    }
    let dp_g = g.degree_in(2).unwrap_or(0);
    if dp_g == 0 {
        // both generators p-free: finitely many plane points times full
        // fibers, and fibers are tangent; a shared factor is 2-dimensional
        if shares_plane_factor(f, g)? {
            return Err(ContactError::NotACurve);
        }
        return Ok(true);
    }
    // all p-coefficients of g divisible by f makes the ideal 2-dimensional
    if g.coeffs_in(2).iter().all(|c| c.is_zero() || c.try_div(f).is_some()) {
        return Err(ContactError::NotACurve);
    }
    // alpha ^ df ^ dg = -g_p * (f_x + p f_y) dx^dy^dp for p-free f
    let cv = chart_vars();
    let p = MPoly::var_idx(f.field, &cv, 2);
    let w = g.partial(2).mul(&f.partial(0).add(&p.mul(&f.partial(1)))).neg();
    poly_vanishes_on_curve(&w, f, g)
}

/// Does w vanish on the curve {f = 0, g = 0} (f plane, g of positive
/// p-degree)? Pseudo-reduction by g in p, then divisibility of the
/// coefficients by f.
fn poly_vanishes_on_curve(w: &MPoly, f: &MPoly, g: &MPoly) -> Result<bool, ContactError> {
    if w.is_zero() {
        return Ok(true);
    }
    let lc = g.coeffs_in(2).into_iter().next_back().expect("g has p-degree >= 1");
    if !lc.is_constant() && shares_plane_factor(f, &lc)? {
        return Err(ContactError::DegenerateLeadingCoefficient);
    }
    let r = pseudo_rem_p(w, g);
    Ok(r.coeffs_in(2).iter().all(|c| c.is_zero() || c.try_div(f).is_some()))
}

/// Pseudo-remainder of w by g in the variable p: lc(g)^k * w mod g.
pub(crate) fn pseudo_rem_p(w: &MPoly, g: &MPoly) -> MPoly {
    let dg = g.degree_in(2).unwrap_or(0);
    assert!(dg >= 1);
    let lc = g.coeffs_in(2).into_iter().next_back().unwrap();
    let cv = w.vars.clone();
    let mut r = w.clone();
    loop {
        let dr = r.degree_in(2).unwrap_or(0);
        if r.is_zero() || dr < dg {
            return r;
        }
        let lr = r.coeffs_in(2).into_iter().next_back().unwrap();
        let mut shift = vec![0u32; cv.len()];
        shift[2] = dr - dg;
        let shift_mono = MPoly::monomial(w.field, &cv, shift, w.field.one());
        r = r.mul(&lc).sub(&lr.mul(&shift_mono).mul(g));
    }
}

/// Do two p-free chart polynomials share a nonconstant factor?
pub(crate) fn shares_plane_factor(f: &MPoly, g: &MPoly) -> Result<bool, ContactError> {
    if f.is_zero() || g.is_zero() {
        return Ok(true);
    }
    if f.is_constant() || g.is_constant() {
        return Ok(false);
    }
    // pick a variable where both have positive degree if one exists
    for var in [0usize, 1] {
        let df = f.degree_in(var).unwrap_or(0);
        let dg = g.degree_in(var).unwrap_or(0);
        if df > 0 && dg > 0 {
            let other = 1 - var;
            let cf = univar::content_wrt(f, var);
            let cg = univar::content_wrt(g, var);
            if cf.degree_in(other).unwrap_or(0) > 0
                && cg.degree_in(other).unwrap_or(0) > 0
                && !gcd_univar(&cf, &cg, other).is_constant()
            {
                return Ok(true);
            }
            let pf = f.try_div(&cf).expect("content divides");
            let pg = g.try_div(&cg).expect("content divides");
            if pf.degree_in(var).unwrap_or(0) > 0 && pg.degree_in(var).unwrap_or(0) > 0 {
                let r = resultant(&pf, &pg, var)?;
                if r.is_zero() {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
    }
    // no shared variable of positive degree: each lives in one variable
    let fv = if f.degree_in(0).unwrap_or(0) > 0 { 0 } else { 1 };
    let gv = if g.degree_in(0).unwrap_or(0) > 0 { 0 } else { 1 };
    if fv != gv {
        return Ok(false);
    }
    Ok(!gcd_univar(f, g, fv).is_constant())
}

/// A curve on M along which tangencies are counted.
#[derive(Clone, Debug)]
pub enum CurveOnM {
    /// The lift of the line with the given coordinates.
    LiftedLine([FieldElem; 3]),
    /// The fiber of pi over the given point.
    Fiber([FieldElem; 3]),
}

impl CurveOnM {
    pub fn line_slope_intercept(field: Field, m: i64, c: i64) -> CurveOnM {
        // y = m x + c has line coordinates (-c, -m, 1)
        CurveOnM::LiftedLine([field.from_i64(-c), field.from_i64(-m), field.one()])
    }

    pub fn fiber_at(field: Field, x0: i64, y0: i64) -> CurveOnM {
        CurveOnM::Fiber([field.one(), field.from_i64(x0), field.from_i64(y0)])
    }
}

/// The tangency divisor of an equation along a lifted line or a fiber.
#[derive(Clone, Debug)]
pub enum Tangency {
    /// The tangency function vanishes identically: the curve is invariant.
    CurveInvariant,
    Divisor(TangencyDivisor),
}

/// Roots with multiplicity of the restricted tangency polynomial, plus the
/// multiplicity at the infinity of the parametrization.
#[derive(Clone, Debug)]
pub struct TangencyDivisor {
    /// Squarefree factors of the affine tangency polynomial with multiplicity.
    pub factors: Vec<(u32, MPoly)>,
    pub at_infinity: i64,
    pub total: i64,
}

/// Counts tangencies of the equation along the given curve (Cor 2.8: a-1
/// along non-invariant lifted lines, b-1 along non-invariant fibers).
pub fn tangency_on_curve(e: &SecondOrderODE, curve: &CurveOnM) -> Result<Tangency, ContactError> {
    let (restriction, expected) = restrict_tangency_section(e, curve)?;
    if restriction.is_zero() {
        return Ok(Tangency::CurveInvariant);
    }
    let deg = restriction.degree_in(0).unwrap_or(0) as i64;
    assert!(deg <= expected, "tangency restriction exceeds its degree bound");
    let factors = squarefree_decomposition(&restriction, 0).map_err(ContactError::Algebra)?;
    Ok(Tangency::Divisor(TangencyDivisor {
        factors,
        at_infinity: expected - deg,
        total: expected,
    }))
}

/// The tangency polynomial along the curve as a univariate polynomial in the
/// parameter t, with the degree of the compactified section.
fn restrict_tangency_section(
    e: &SecondOrderODE,
    curve: &CurveOnM,
) -> Result<(MPoly, i64), ContactError> {
    let field = e.field();
    let tv = crate::algebra::poly::vars(&["t"]);
    let constant = |c: &FieldElem| MPoly::constant(field, &tv, c.clone());
    let t = MPoly::var_idx(field, &tv, 0);
    match curve {
        CurveOnM::LiftedLine(line) => {
            // zeros of the vertical component along the lift, parametrized by
            // two points spanning the line
            let (p0, p1) = span_of_line(field, line);
            let xs = [
                constant(&p0[0]).add(&t.scale(&p1[0])),
                constant(&p0[1]).add(&t.scale(&p1[1])),
                constant(&p0[2]).add(&t.scale(&p1[2])),
            ];
            let as_ = [constant(&line[0]), constant(&line[1]), constant(&line[2])];
            let r = e.vertical_part.subst(&xs, &as_)?;
            Ok((r, e.vertical_part.bidegree().0.max(0)))
        }
        CurveOnM::Fiber(point) => {
            // zeros of the lines component along the pencil through the point
            let (l0, l1) = span_of_line(field, point);
            let xs = [constant(&point[0]), constant(&point[1]), constant(&point[2])];
            let as_ = [
                constant(&l0[0]).add(&t.scale(&l1[0])),
                constant(&l0[1]).add(&t.scale(&l1[1])),
                constant(&l0[2]).add(&t.scale(&l1[2])),
            ];
            let r = e.lines_part.subst(&xs, &as_)?;
            Ok((r, e.lines_part.bidegree().1.max(0)))
        }
    }
}

/// Two independent vectors orthogonal to v (points spanning the line v, or
/// lines through the point v).
pub(crate) fn span_of_line(field: Field, v: &[FieldElem; 3]) -> ([FieldElem; 3], [FieldElem; 3]) {
    let zero = field.zero();
    let candidates = [
        [v[1].neg(), v[0].clone(), zero.clone()],
        [v[2].neg(), zero.clone(), v[0].clone()],
        [zero.clone(), v[2].neg(), v[1].clone()],
    ];
    let nonzero: Vec<_> = candidates
        .into_iter()
        .filter(|c| c.iter().any(|e| !e.is_zero()))
        .collect();
    for i in 0..nonzero.len() {
        for j in i + 1..nonzero.len() {
            if !proportional(&nonzero[i], &nonzero[j]) {
                return (nonzero[i].clone(), nonzero[j].clone());
            }
        }
    }
    unreachable!("a nonzero v has two independent orthogonal vectors")
}

fn proportional(u: &[FieldElem; 3], v: &[FieldElem; 3]) -> bool {
    for i in 0..3 {
        for j in i + 1..3 {
            let cross = u[i].mul(&v[j]).sub(&u[j].mul(&v[i]));
            if !cross.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Recovers T*L = O(-2, 1) by the tangency procedure: the fiber count gives
/// b - 1 = 0, and the tangency curve of L on a vertical surface H is the
/// lifted line, of class hd^2 = -h^2 + h*hd, so a + 1 = -1.
pub fn recover_lines_constants(field: Field) -> Result<Bidegree, ContactError> {
    let lines = SecondOrderODE::lines_equation(field);
    let b = match tangency_on_curve(&lines, &CurveOnM::fiber_at(field, 2, 3))? {
        Tangency::CurveInvariant => {
            return Err(ContactError::Recovery("fiber is invariant for L".into()))
        }
        Tangency::Divisor(d) => d.total + 1,
    };
    // tangency curve of L on H = pi^{-1}(y = m x + c): apply X_L to the
    // pulled-back equation and compare with the lift ideal of the line
    let cv = chart_vars();
    let (m, c) = (5i64, -7i64);
    let x = MPoly::var_idx(field, &cv, 0);
    let y = MPoly::var_idx(field, &cv, 1);
    let line_chart = y
        .sub(&x.scale(&field.from_i64(m)))
        .sub(&MPoly::from_i64(field, &cv, c));
    let section = lines.chart_derivation(&line_chart);
    let lift = lift_plane_curve(&line_chart)?;
    if section != lift.lift_g {
        return Err(ContactError::Recovery(
            "tangency section of L on H is not the lift of the line".into(),
        ));
    }
    // [lifted line] = hd^2 = -h^2 + h*hd; Prop 2.5 gives (a+1)h^2 + b*h*hd
    let a = -1 - 1;
    if b != 1 {
        return Err(ContactError::Recovery(format!("fiber count gave b = {b}")));
    }
    Ok(Bidegree::new(a, b))
}

/// Recovers T*V = O(1, -2): the lifted-line count gives a - 1 = 0, and the
/// tangency curve of V on a dual surface is a fiber, of class h^2, so the
/// hd-side formula -(b+1)h^2 + (a+b+1)h*hd = h^2 forces b = -2.
pub fn recover_vertical_constants(field: Field) -> Result<Bidegree, ContactError> {
    let vertical = SecondOrderODE::vertical_foliation(field);
    let a = match tangency_on_curve(&vertical, &CurveOnM::line_slope_intercept(field, 2, 1))? {
        Tangency::CurveInvariant => {
            return Err(ContactError::Recovery("line is invariant for V".into()))
        }
        Tangency::Divisor(d) => d.total + 1,
    };
    // tangency curve of V on the dual surface {A . P = 0}, P = (1, p1, p2):
    // apply X_V = d/dp to its chart equation
    let cv = chart_vars();
    let (p1, p2) = (3i64, 4i64);
    let x = MPoly::var_idx(field, &cv, 0);
    let y = MPoly::var_idx(field, &cv, 1);
    let p = MPoly::var_idx(field, &cv, 2);
    // chart of A.P with P = (1, p1, p2): (p x - y) + p1*(-p) + p2
    let dual_chart = p
        .mul(&x)
        .sub(&y)
        .sub(&p.scale(&field.from_i64(p1)))
        .add(&MPoly::from_i64(field, &cv, p2));
    let section = dual_chart.partial(2);
    let expect_x = x.sub(&MPoly::from_i64(field, &cv, p1));
    if section != expect_x {
        return Err(ContactError::Recovery("unexpected tangency section for V".into()));
    }
    // the tangency curve {A.P = 0, x = p1} is the fiber over (p1, p2)
    let on_fiber = dual_chart.substitute(0, &MPoly::from_i64(field, &cv, p1))?;
    let expect_y = MPoly::from_i64(field, &cv, p2).sub(&y);
    if on_fiber != expect_y {
        return Err(ContactError::Recovery(
            "tangency curve of V on the dual surface is not a fiber".into(),
        ));
    }
    // [fiber] = h^2 forces -(b+1) = 1 in the hd-side tangency class
    let b = -1 - 1;
    if a != 1 {
        return Err(ContactError::Recovery(format!("line count gave a = {a}")));
    }
    Ok(Bidegree::new(a, b))
}
