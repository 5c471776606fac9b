//! Witness constructions: seeded random equations built from clean webs,
//! screened and certified, mirroring the genericity arguments.

use super::screen::{screen_finite_field, Certificate, ScreenConfig, ScreenObject};
use super::InvariantsError;
use crate::algebra::bihom::chart_vars;
use crate::algebra::field::{Field, FieldElem};
use crate::algebra::poly::MPoly;
use crate::algebra::resultant;
use crate::algebra::univar::gcd_univar;
use crate::contact::{embed_r1, embed_r2, shares_plane_factor, SecondOrderODE};
use crate::sample::{random_web, rng_from_seed};
use crate::webs::{web_singular_locus, PlaneWeb};
use rand::Rng;

const WITNESS_RETRIES: u32 = 16;

/// Which construction assembles the equation from the web section.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessMode {
    /// F . X_V from a (b+2)-web of degree a-1; needs a >= 3, b >= 1.
    Vertical,
    /// F . X_L from a (b-1)-web of degree a+2; needs a, b >= 3.
    Lines,
}

/// Draws a seeded random web of the prescribed type, screens it over the
/// configured primes, and assembles the equation in E(a, b). A screening hit
/// triggers a redraw, up to a bounded number of retries.
pub fn genericity_witness(
    a: i64,
    b: i64,
    seed: u64,
    mode: WitnessMode,
    config: &ScreenConfig,
) -> Result<(SecondOrderODE, Certificate), InvariantsError> {
    let (k, d) = match mode {
        WitnessMode::Vertical => {
            if a < 3 || b < 1 {
                return Err(InvariantsError::WitnessRange(format!(
                    "the F.X_V construction needs a >= 3 and b >= 1, got ({a},{b})"
                )));
            }
            (b + 2, a - 1)
        }
        WitnessMode::Lines => {
            if a < 3 || b < 3 {
                return Err(InvariantsError::WitnessRange(format!(
                    "the F.X_L construction needs a, b >= 3, got ({a},{b})"
                )));
            }
            (b - 1, a + 2)
        }
    };
    let field = Field::Rational;
    let mut rng = rng_from_seed(seed);
    for _ in 0..WITNESS_RETRIES {
        let web = random_web(&mut rng, field, k, d);
        let web_cert = screen_finite_field(ScreenObject::Web(&web), config)?;
        if web_cert.found_invariant() || web_cert.inconclusive() {
            continue;
        }
        let ode = match mode {
            WitnessMode::Vertical => embed_r2(web.section().clone()),
            WitnessMode::Lines => embed_r1(web.section().clone()),
        }
        .map_err(InvariantsError::Contact)?;
        debug_assert_eq!(ode.bidegree(), crate::chow::Bidegree::new(a, b));
        match mode {
            WitnessMode::Vertical => {
                // the invariant lifts of F.X_V are exactly the web-invariant
                // curves, so the equation screen must agree with the web one
                let mut cert = screen_finite_field(ScreenObject::Ode(&ode), config)?;
                if cert.found_invariant() || cert.inconclusive() {
                    continue;
                }
                cert.notes.push(
                    "equation assembled as F.X_V from the screened web; its invariant \
                     lifted curves coincide with the web-invariant curves"
                        .to_string(),
                );
                return Ok((ode, cert));
            }
            WitnessMode::Lines => {
                // every lifted line solves a pure X_L multiple, so the curve
                // screen applies to the web; the equation-specific content is
                // the absence of invariant fibers, i.e. web base points
                if !base_point_free(&web, config)? {
                    continue;
                }
                let mut cert = web_cert;
                cert.notes.push(
                    "equation assembled as F.X_L from the screened web; lifted lines \
                     are always solutions of such equations and are excluded; the web \
                     was checked base-point free, so no fiber is invariant"
                        .to_string(),
                );
                return Ok((ode, cert));
            }
        }
    }
    Err(InvariantsError::RetriesExhausted(WITNESS_RETRIES))
}

/// Base-point freeness of the web section: no point of the plane lies on
/// every direction of the web. Checked exhaustively over each screening
/// prime and by a resultant certificate over the rationals.
fn base_point_free(w: &PlaneWeb, config: &ScreenConfig) -> Result<bool, InvariantsError> {
    // over each prime: enumerate the projective plane
    for &p in &config.primes {
        let reduced = match w.reduce_mod(p) {
            Ok(r) => r,
            Err(_) => continue,
        };
        let field = reduced.field();
        for point in all_points_fp(field, p) {
            if reduced.section().at_point(&point).is_zero() {
                return Ok(false);
            }
        }
    }
    // over Q: the chart coefficients must have no common zero; a constant
    // gcd of the pairwise resultants certifies emptiness in the chart, and
    // the forms at infinity are handled by restriction
    let coeffs: Vec<MPoly> = w.chart_coefficients().into_iter().filter(|c| !c.is_zero()).collect();
    if coeffs.len() < 2 {
        return Ok(false);
    }
    if !affine_system_empty(&coeffs)? {
        return Ok(false);
    }
    infinity_points_empty(w)
}

fn all_points_fp(field: Field, p: u64) -> Vec<[FieldElem; 3]> {
    crate::lines::all_lines_fp(field, p)
}

/// Substitutes p = num/den into g and clears the denominator.
fn substitute_linear_p(g: &MPoly, num: &MPoly, den: &MPoly) -> MPoly {
    let coeffs = g.coeffs_in(2);
    let d = coeffs.len().saturating_sub(1);
    let field = g.field;
    let vars = g.vars.clone();
    let mut acc = MPoly::zero(field, &vars);
    let mut num_pow = vec![MPoly::one(field, &vars)];
    let mut den_pow = vec![MPoly::one(field, &vars)];
    for i in 1..=d {
        num_pow.push(num_pow[i - 1].mul(num));
        den_pow.push(den_pow[i - 1].mul(den));
    }
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&c.mul(&num_pow[j]).mul(&den_pow[d - j]));
    }
    acc
}

/// No common root in p for a univariate system (zero members make the
/// system degenerate).
fn univariate_system_empty_in_p(polys: &[MPoly]) -> bool {
    if polys.iter().any(|g| g.is_zero()) {
        return false;
    }
    if polys.iter().any(|g| g.is_constant()) {
        return true;
    }
    let mut g = polys[0].clone();
    for h in &polys[1..] {
        g = gcd_univar(&g, h, 2);
        if g.is_constant() {
            return true;
        }
    }
    false
}

/// A sufficient emptiness certificate for a system of plane curves: pivot
/// the eliminations on the smallest member (a common zero of the system
/// zeroes every pivot resultant at its x-coordinate, so a constant gcd
/// across them certifies emptiness).
fn affine_system_empty(coeffs: &[MPoly]) -> Result<bool, InvariantsError> {
    // any constant nonzero coefficient empties the system at once
    if coeffs.iter().any(|c| c.is_constant() && !c.is_zero()) {
        return Ok(true);
    }
    if coeffs.len() < 2 {
        return Ok(false);
    }
    let pivot = coeffs
        .iter()
        .min_by_key(|c| c.terms.len() + c.total_degree().unwrap_or(0) as usize)
        .expect("nonempty system");
    let mut eliminants: Vec<MPoly> = Vec::new();
    for g in coeffs.iter().filter(|g| !std::ptr::eq(*g, pivot)) {
        if shares_plane_factor(pivot, g).map_err(InvariantsError::Contact)? {
            continue;
        }
        let r = if pivot.degree_in(1).unwrap_or(0) > 0 && g.degree_in(1).unwrap_or(0) > 0 {
            resultant(pivot, g, 1).map_err(InvariantsError::Algebra)?
        } else if pivot.degree_in(1).unwrap_or(0) == 0 {
            pivot.clone()
        } else {
            g.clone()
        };
        if r.is_constant() && !r.is_zero() {
            return Ok(true);
        }
        eliminants.push(r);
    }
    // a common zero of the system makes every pairwise eliminant vanish at
    // its x-coordinate, so a constant gcd across them certifies emptiness
    let univariate: Vec<&MPoly> = eliminants
        .iter()
        .filter(|r| r.degree_in(1).unwrap_or(0) == 0 && r.degree_in(0).unwrap_or(0) > 0)
        .collect();
    if univariate.len() < 2 {
        return Ok(false);
    }
    let mut g = univariate[0].clone();
    for r in &univariate[1..] {
        g = gcd_univar(&g, r, 0);
        if g.is_constant() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// No base point on the line at infinity: the section restricted to points
/// (0, s, t) must have no common zero among its A-coefficient forms.
fn infinity_points_empty(w: &PlaneWeb) -> Result<bool, InvariantsError> {
    let field = w.field();
    let sv = crate::algebra::poly::vars(&["s", "t"]);
    let s = MPoly::var_idx(field, &sv, 0);
    let t = MPoly::var_idx(field, &sv, 1);
    let zero = MPoly::zero(field, &sv);
    // restrict to (0, s, t) keeping the line slots symbolic is not needed:
    // collect the coefficient forms of each A-monomial
    let section = w.section().as_poly();
    let mut forms: std::collections::BTreeMap<(u32, u32, u32), MPoly> =
        std::collections::BTreeMap::new();
    for (m, c) in &section.terms {
        let key = (m.0[3], m.0[4], m.0[5]);
        let mono = if m.0[0] > 0 {
            zero.clone() // X0 = 0 kills the term
        } else {
            s.pow(m.0[1]).mul(&t.pow(m.0[2])).scale(&c.clone())
        };
        let entry = forms.entry(key).or_insert_with(|| MPoly::zero(field, &sv));
        *entry = entry.add(&mono);
    }
    let nonzero: Vec<MPoly> = forms.into_values().filter(|f| !f.is_zero()).collect();
    if nonzero.iter().any(|f| f.is_constant()) {
        return Ok(true);
    }
    if nonzero.len() < 2 {
        return Ok(false);
    }
    // binary forms: gcd at t = 1 plus a check at the point (0, 0, 1)... the
    // point (0:1:0) corresponds to s = 1, t = 0
    let tv = crate::algebra::poly::vars(&["t"]);
    let dehom: Vec<MPoly> = nonzero
        .iter()
        .map(|f| {
            f.substitute_all(&[MPoly::one(field, &tv), MPoly::var_idx(field, &tv, 0)])
                .expect("binary form dehomogenization")
        })
        .collect();
    let mut g = dehom[0].clone();
    for f in &dehom[1..] {
        if f.is_zero() {
            continue;
        }
        if f.is_constant() {
            return Ok(true);
        }
        g = gcd_univar(&g, f, 0);
        if g.is_constant() {
            break;
        }
    }
    if !g.is_constant() {
        return Ok(false);
    }
    // remaining point (0:0:1): s = 0, t = 1
    let at_001 = nonzero.iter().all(|f| {
        f.eval(&[field.zero(), field.one()]).is_zero()
    });
    Ok(!at_001)
}

/// The product-web construction: a clean (k-1)-web of degree d times a
/// pencil of lines whose lift avoids the factor's singular locus.
#[derive(Clone, Debug)]
pub struct ProductWebWitness {
    pub web: PlaneWeb,
    pub factor: PlaneWeb,
    pub pencil_point: [FieldElem; 3],
}

pub fn product_web_witness(
    k: i64,
    d: i64,
    seed: u64,
) -> Result<ProductWebWitness, InvariantsError> {
    if k < 2 || d < 2 {
        return Err(InvariantsError::WitnessRange(format!(
            "the product construction needs k >= 2 and d >= 2, got (k,d) = ({k},{d})"
        )));
    }
    let field = Field::Rational;
    let mut rng = rng_from_seed(seed);
    for _ in 0..WITNESS_RETRIES {
        let factor = random_web(&mut rng, field, k - 1, d);
        let locus = web_singular_locus(&factor).map_err(InvariantsError::Web)?;
        if locus.finiteness != crate::webs::Finiteness::Finite {
            continue;
        }
        // a random pencil; verified to avoid the singular locus entirely
        let point = [
            field.from_i64(rng.gen_range(-9..=9)),
            field.from_i64(rng.gen_range(-9..=9)),
            field.one(),
        ];
        let Ok(pencil) = PlaneWeb::pencil_through(field, &point) else {
            continue;
        };
        if !pencil_avoids_singularities(&factor, &locus.generators, &point)? {
            continue;
        }
        let web = factor.product(&pencil).map_err(InvariantsError::Web)?;
        return Ok(ProductWebWitness { web, factor, pencil_point: point });
    }
    Err(InvariantsError::RetriesExhausted(WITNESS_RETRIES))
}

/// Certifies that the lift of the pencil through P misses the singular locus
/// of the factor web: the combined chart system is empty, and so is the
/// fiber-direction locus at infinity.
fn pencil_avoids_singularities(
    factor: &PlaneWeb,
    sing_generators: &[MPoly],
    point: &[FieldElem; 3],
) -> Result<bool, InvariantsError> {
    let field = factor.field();
    let cv = chart_vars();
    let x = MPoly::var_idx(field, &cv, 0);
    let y = MPoly::var_idx(field, &cv, 1);
    let p = MPoly::var_idx(field, &cv, 2);
    // chart equation of the pencil lift: A(x,y,p) . P
    let pencil_eq = p
        .mul(&x)
        .sub(&y)
        .scale(&point[0])
        .add(&p.neg().scale(&point[1]))
        .add(&MPoly::constant(field, &cv, point[2].clone()));
    // the pencil equation is linear in p: substitute its root into the three
    // singular-locus generators, clearing the denominator D = P0 x - P1.
    // Away from {D = 0} a singular point on the pencil lift becomes a common
    // zero of the substituted system; over {D = 0} the lift contains whole
    // fibers only above the pencil center, checked separately.
    let f = &sing_generators[0];
    let fp = &sing_generators[1];
    let dir = &sing_generators[2];
    if fp.is_zero() || dir.is_zero() {
        return Ok(false);
    }
    let pcoeffs = pencil_eq.coeffs_in(2);
    if pcoeffs.len() != 2 {
        return Ok(false);
    }
    let den = pcoeffs[1].clone(); // P0 x - P1
    let num = pcoeffs[0].neg(); // p = num / den on the pencil lift
    let substituted: Vec<MPoly> = [f, fp, dir]
        .iter()
        .map(|g| substitute_linear_p(g, &num, &den))
        .collect();
    if substituted.iter().any(|r| r.is_zero()) {
        return Ok(false);
    }
    if !affine_system_empty(&substituted)? {
        return Ok(false);
    }
    // whole-fiber part of the pencil lift: the fiber over the pencil center
    if !point[0].is_zero() {
        let x_c = point[1].div(&point[0]).map_err(InvariantsError::Algebra)?;
        let y_c = point[2].div(&point[0]).map_err(InvariantsError::Algebra)?;
        let at_center = |g: &MPoly| -> MPoly {
            let gx = g
                .substitute(0, &MPoly::constant(field, &cv, x_c.clone()))
                .expect("substitute x");
            gx.substitute(1, &MPoly::constant(field, &cv, y_c.clone()))
                .expect("substitute y")
        };
        let fc = at_center(f);
        let fpc = at_center(fp);
        let dirc = at_center(dir);
        if !univariate_system_empty_in_p(&[fc, fpc, dirc]) {
            return Ok(false);
        }
    }
    // vertical-direction singular points at infinity of the fiber chart:
    // on {a_k = a_{k-1} = 0}, the pencil passes through the vertical
    // direction line x*P0 - P1 = 0
    let coeffs = factor.chart_coefficients();
    let top = &coeffs[factor.rank() as usize];
    let second = &coeffs[factor.rank() as usize - 1];
    if top.is_zero() {
        return Ok(false);
    }
    if point[0].is_zero() {
        // the vertical-direction line condition degenerates; the pencil
        // center sits at infinity, accept only when the top system is empty
        return affine_system_empty(&[top.clone(), second.clone()]);
    }
    let x_star = point[1].div(&point[0]).map_err(InvariantsError::Algebra)?;
    let xv = MPoly::constant(field, &cv, x_star);
    let t1 = top.substitute(0, &xv).map_err(InvariantsError::Algebra)?;
    let t2 = second.substitute(0, &xv).map_err(InvariantsError::Algebra)?;
    match (t1.is_zero(), t2.is_zero()) {
        (true, true) => Ok(false),
        (true, false) | (false, true) => {
            let nz = if t1.is_zero() { t2 } else { t1 };
            Ok(nz.is_constant())
        }
        (false, false) => {
            if t1.is_constant() || t2.is_constant() {
                return Ok(true);
            }
            Ok(gcd_univar(&t1, &t2, 1).is_constant())
        }
    }
}
