//! Univariate and bivariate helpers: gcd chains, content, squarefree tests.

use super::poly::MPoly;
use super::AlgebraError;

/// True when every term of `f` involves no variable other than `var`.
pub fn is_univariate_in(f: &MPoly, var: usize) -> bool {
    f.terms
        .keys()
        .all(|m| m.0.iter().enumerate().all(|(v, &e)| v == var || e == 0))
}

/// Monic Euclidean gcd of two polynomials univariate in `var`.
pub fn gcd_univar(f: &MPoly, g: &MPoly, var: usize) -> MPoly {
    assert!(is_univariate_in(f, var) && is_univariate_in(g, var), "gcd_univar: inputs not univariate");
    let mut a = f.clone();
    let mut b = g.clone();
    while !b.is_zero() {
        let r = rem_univar(&a, &b, var);
        a = b;
        b = r;
    }
    make_monic(&a)
}

/// Remainder of univariate division in `var` over the coefficient field.
pub fn rem_univar(f: &MPoly, g: &MPoly, var: usize) -> MPoly {
    assert!(!g.is_zero());
    let dg = g.degree_in(var).unwrap_or(0);
    let lc_g = coeff_of(g, var, dg);
    let lc_inv = lc_g.inv().expect("leading coefficient invertible");
    let mut r = f.clone();
    loop {
        let dr = match r.degree_in(var) {
            Some(d) if !r.is_zero() => d,
            _ => return r,
        };
        if r.is_zero() || dr < dg {
            return r;
        }
        let lc_r = coeff_of(&r, var, dr);
        let mut shift = vec![0u32; f.vars.len()];
        shift[var] = dr - dg;
        let t = MPoly::monomial(f.field, &f.vars, shift, lc_r.mul(&lc_inv));
        r = r.sub(&t.mul(g));
    }
}

/// The field coefficient of var^k in a polynomial univariate in `var`.
fn coeff_of(f: &MPoly, var: usize, k: u32) -> super::field::FieldElem {
    for (m, c) in &f.terms {
        if m.0[var] == k {
            return c.clone();
        }
    }
    f.field.zero()
}

pub fn make_monic(f: &MPoly) -> MPoly {
    match f.leading_coeff() {
        None => f.clone(),
        Some(lc) => f.scale(&lc.inv().expect("nonzero leading coefficient")),
    }
}

/// Squarefree test for a polynomial univariate in `var`.
///
/// Uses gcd(f, f'). In characteristic p this requires deg f < p so the
/// derivative cannot collapse.
pub fn squarefree_univar(f: &MPoly, var: usize) -> Result<bool, AlgebraError> {
    let d = f.degree_in(var).unwrap_or(0);
    if d == 0 {
        return Ok(true);
    }
    if let super::field::Field::Prime(p) = f.field {
        if d as u64 >= p {
            return Err(AlgebraError::DegreeVsCharacteristic { degree: d, prime: p });
        }
    }
    let g = gcd_univar(f, &f.partial(var), var);
    Ok(g.is_constant())
}

/// Squarefree factorization f = prod_i w_i^i for univariate f (Yun's algorithm).
/// Returns (multiplicity, monic factor) pairs with nonconstant factors only.
pub fn squarefree_decomposition(f: &MPoly, var: usize) -> Result<Vec<(u32, MPoly)>, AlgebraError> {
    let d = f.degree_in(var).unwrap_or(0);
    if d == 0 {
        return Ok(vec![]);
    }
    if let super::field::Field::Prime(p) = f.field {
        if d as u64 >= p {
            return Err(AlgebraError::DegreeVsCharacteristic { degree: d, prime: p });
        }
    }
    let fm = make_monic(f);
    let df = fm.partial(var);
    let a0 = gcd_univar(&fm, &df, var);
    let mut b = fm.try_div(&a0).expect("gcd divides");
    let mut c = df.try_div(&a0).expect("gcd divides derivative");
    let mut out = Vec::new();
    let mut i = 1u32;
    loop {
        let d_poly = c.sub(&b.partial(var));
        if d_poly.is_zero() {
            if b.degree_in(var).unwrap_or(0) > 0 {
                out.push((i, make_monic(&b)));
            }
            break;
        }
        let a = gcd_univar(&b, &d_poly, var);
        if a.degree_in(var).unwrap_or(0) > 0 {
            out.push((i, a.clone()));
        }
        b = b.try_div(&a).expect("factor divides");
        c = d_poly.try_div(&a).expect("factor divides");
        i += 1;
    }
    Ok(out)
}

/// Rational roots of a polynomial univariate in `var` over Q, or all roots in F_p.
/// Returned as field elements, without multiplicity.
pub fn rational_roots(f: &MPoly, var: usize) -> Vec<super::field::FieldElem> {
    use super::field::{Field, FieldElem};
    let mut roots = Vec::new();
    if f.is_zero() {
        return roots;
    }
    match f.field {
        Field::Prime(p) => {
            for r in 0..p {
                let pt: Vec<FieldElem> = (0..f.vars.len())
                    .map(|v| if v == var { f.field.from_i64(r as i64) } else { f.field.zero() })
                    .collect();
                if f.eval(&pt).is_zero() {
                    roots.push(f.field.from_i64(r as i64));
                }
            }
        }
        Field::Rational => {
            assert!(is_univariate_in(f, var), "rational_roots: input not univariate");
            // clear denominators to an integer polynomial, then use the
            // rational root theorem
            use num_bigint::BigInt;
            use num_traits::{One, Signed, Zero};
            let coeffs = f.coeffs_in(var);
            let mut lcm = BigInt::one();
            for c in &coeffs {
                if let FieldElem::Rat(r) = c.constant_term() {
                    let den = r.denom().clone();
                    let g = num_integer::Integer::gcd(&lcm, &den);
                    lcm = &lcm / g * den;
                }
            }
            let ints: Vec<BigInt> = coeffs
                .iter()
                .map(|c| match c.constant_term() {
                    FieldElem::Rat(r) => r.numer() * (&lcm / r.denom()),
                    _ => BigInt::zero(),
                })
                .collect();
            let lead = ints.iter().rev().find(|c| !c.is_zero());
            let trail = ints.iter().find(|c| !c.is_zero());
            let (Some(lead), Some(trail)) = (lead, trail) else {
                return roots;
            };
            // candidates p/q with p | trail, q | lead
            let ps = small_divisors(trail.abs());
            let qs = small_divisors(lead.abs());
            let mut seen = std::collections::BTreeSet::new();
            for p in &ps {
                for q in &qs {
                    for sign in [1i64, -1] {
                        let cand = num_rational::BigRational::new(p * sign, q.clone());
                        if !seen.insert(cand.to_string()) {
                            continue;
                        }
                        let pt: Vec<FieldElem> = (0..f.vars.len())
                            .map(|v| {
                                if v == var {
                                    FieldElem::Rat(cand.clone())
                                } else {
                                    f.field.zero()
                                }
                            })
                            .collect();
                        if f.eval(&pt).is_zero() {
                            roots.push(FieldElem::Rat(cand.clone()));
                        }
                    }
                }
            }
            // x = 0 root
            let pt: Vec<FieldElem> = vec![f.field.zero(); f.vars.len()];
            if f.eval(&pt).is_zero() && !roots.iter().any(|r| r.is_zero()) {
                roots.push(f.field.zero());
            }
        }
    }
    roots
}

fn small_divisors(n: num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let mut out = Vec::new();
    if n.is_zero() {
        return vec![BigInt::from(1)];
    }
    let mut d = BigInt::from(1);
    // trial division up to a budget; enough for the coefficient sizes in play
    let limit = BigInt::from(1_000_000u64);
    while &d * &d <= n && d <= limit {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    if out.is_empty() {
        out.push(BigInt::from(1));
        out.push(n);
    }
    out.sort();
    out.dedup();
    out
}

/// Content of `f` with respect to `var`: the gcd of the coefficients of the
/// powers of `var`, which must all be univariate in one other variable
/// (or constants).
pub fn content_wrt(f: &MPoly, var: usize) -> MPoly {
    let coeffs = f.coeffs_in(var);
    let nonzero: Vec<&MPoly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return MPoly::zero(f.field, &f.vars);
    }
    let other = (0..f.vars.len()).find(|&v| {
        v != var && nonzero.iter().any(|c| c.degree_in(v).unwrap_or(0) > 0)
    });
    let Some(other) = other else {
        return MPoly::one(f.field, &f.vars);
    };
    let mut g = nonzero[0].clone();
    for c in &nonzero[1..] {
        g = gcd_univar(&g, c, other);
        if g.is_constant() {
            break;
        }
    }
    make_monic(&g)
}
