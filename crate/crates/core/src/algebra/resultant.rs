//! Resultants via Sylvester matrices with fraction-free determinant evaluation.

use super::poly::MPoly;
use super::AlgebraError;

/// The resultant of f and g with respect to `var`: the determinant of the
/// Sylvester matrix, a polynomial in the remaining variables.
///
/// Vanishes exactly when f and g share a root in `var` over the algebraic
/// closure, provided the leading coefficients do not both vanish.
pub fn resultant(f: &MPoly, g: &MPoly, var: usize) -> Result<MPoly, AlgebraError> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::ZeroResultantInput);
    }
    let n = f.degree_in(var).unwrap_or(0) as usize;
    let m = g.degree_in(var).unwrap_or(0) as usize;
    if n == 0 && m == 0 {
        return Err(AlgebraError::ConstantResultantInput);
    }
    // res(f, c) = c^deg(f) for constant c in var
    if m == 0 {
        return Ok(g.pow(n as u32));
    }
    if n == 0 {
        return Ok(f.pow(m as u32));
    }
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let size = n + m;
    let zero = MPoly::zero(f.field, &f.vars);
    let mut rows: Vec<Vec<MPoly>> = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in fc.iter().enumerate() {
            row[i + (n - k)] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in gc.iter().enumerate() {
            row[i + (m - k)] = c.clone();
        }
        rows.push(row);
    }
    Ok(bareiss_det(rows))
}

/// Fraction-free determinant of a square matrix of polynomials
/// (Bareiss one-step elimination; every division is exact).
fn bareiss_det(mut m: Vec<Vec<MPoly>>) -> MPoly {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n));
    let field = m[0][0].field;
    let vars = m[0][0].vars.clone();
    let one = MPoly::one(field, &vars);
    let mut prev = one;
    let mut sign = false;
    for k in 0..n {
        // pivot search
        let Some(pr) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return MPoly::zero(field, &vars);
        };
        if pr != k {
            m.swap(pr, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.try_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MPoly::zero(field, &vars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::field::Field;
    use super::super::poly::vars;

    #[test]
    fn evaluation_style_resultant() {
        // res_x(x^2 - 1, x - 2) = 3
        let q = Field::Rational;
        let v = vars(&["x"]);
        let x = MPoly::var(q, &v, "x").unwrap();
        let f = x.pow(2).sub(&MPoly::one(q, &v));
        let g = x.sub(&MPoly::from_i64(q, &v, 2));
        assert_eq!(resultant(&f, &g, 0).unwrap(), MPoly::from_i64(q, &v, 3));
    }

    #[test]
    fn linear_resultant_up_to_sign() {
        // res_x(x - y, x - z) = y - z
        let q = Field::Rational;
        let v = vars(&["x", "y", "z"]);
        let x = MPoly::var(q, &v, "x").unwrap();
        let y = MPoly::var(q, &v, "y").unwrap();
        let z = MPoly::var(q, &v, "z").unwrap();
        let r = resultant(&x.sub(&y), &x.sub(&z), 0).unwrap();
        let zy = z.sub(&y);
        assert!(r == zy || r == zy.neg());
    }

    #[test]
    fn shared_root_vanishes() {
        let q = Field::Rational;
        let v = vars(&["x", "y"]);
        let x = MPoly::var(q, &v, "x").unwrap();
        let y = MPoly::var(q, &v, "y").unwrap();
        // f = (x - y)(x + 1), g = (x - y)(x + 2) share the root x = y
        let f = x.sub(&y).mul(&x.add(&MPoly::one(q, &v)));
        let g = x.sub(&y).mul(&x.add(&MPoly::from_i64(q, &v, 2)));
        assert!(resultant(&f, &g, 0).unwrap().is_zero());
    }

    #[test]
    fn constant_inputs_rejected() {
        let q = Field::Rational;
        let v = vars(&["x"]);
        let a = MPoly::from_i64(q, &v, 2);
        let b = MPoly::from_i64(q, &v, 3);
        assert!(resultant(&a, &b, 0).is_err());
    }
}
