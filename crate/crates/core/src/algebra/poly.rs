//! Sparse multivariate polynomials over an exact field, in graded-lex order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::field::{Field, FieldElem};
use super::AlgebraError;

/// An exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial: ordered variable list plus a term map
/// holding only nonzero coefficients. Equality is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    pub field: Field,
    pub vars: Arc<Vec<String>>,
    pub terms: BTreeMap<Monomial, FieldElem>,
}

impl MPoly {
    pub fn zero(field: Field, vars: &Arc<Vec<String>>) -> MPoly {
        MPoly { field, vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: Field, vars: &Arc<Vec<String>>, c: FieldElem) -> MPoly {
        let mut p = MPoly::zero(field, vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; vars.len()]), c);
        }
        p
    }

    pub fn from_i64(field: Field, vars: &Arc<Vec<String>>, n: i64) -> MPoly {
        MPoly::constant(field, vars, field.from_i64(n))
    }

    pub fn one(field: Field, vars: &Arc<Vec<String>>) -> MPoly {
        MPoly::from_i64(field, vars, 1)
    }

    /// The polynomial equal to the named variable.
    pub fn var(field: Field, vars: &Arc<Vec<String>>, name: &str) -> Result<MPoly, AlgebraError> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        Ok(MPoly::var_idx(field, vars, idx))
    }

    pub fn var_idx(field: Field, vars: &Arc<Vec<String>>, idx: usize) -> MPoly {
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut p = MPoly::zero(field, vars);
        p.terms.insert(Monomial(e), field.one());
        p
    }

    pub fn monomial(
        field: Field,
        vars: &Arc<Vec<String>>,
        expo: Vec<u32>,
        coeff: FieldElem,
    ) -> MPoly {
        assert_eq!(expo.len(), vars.len(), "exponent vector length");
        let mut p = MPoly::zero(field, vars);
        if !coeff.is_zero() {
            p.terms.insert(Monomial(expo), coeff);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// The constant term.
    pub fn constant_term(&self) -> FieldElem {
        self.terms
            .get(&Monomial(vec![0; self.vars.len()]))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    fn check_compatible(&self, other: &MPoly) -> Result<(), AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch { left: self.field, right: other.field });
        }
        if self.vars != other.vars {
            return Err(AlgebraError::VariableMismatch);
        }
        Ok(())
    }

    fn insert_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly, AlgebraError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = MPoly::zero(self.field, &self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// Unchecked convenience wrappers; panic on field/variable mismatch.
    pub fn add(&self, other: &MPoly) -> MPoly {
        self.checked_add(other).expect("add: incompatible polynomials")
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.checked_sub(other).expect("sub: incompatible polynomials")
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.checked_mul(other).expect("mul: incompatible polynomials")
    }

    pub fn scale(&self, c: &FieldElem) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.field, &self.vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.mul(c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.field, &self.vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to the variable at `var`.
    pub fn partial(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.field, &self.vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut me = m.clone();
            me.0[var] = e - 1;
            out.insert_term(me, c.mul(&self.field.from_i64(e as i64)));
        }
        out
    }

    /// Substitutes a polynomial (over a possibly different variable list)
    /// for every variable at once.
    pub fn substitute_all(&self, images: &[MPoly]) -> Result<MPoly, AlgebraError> {
        assert_eq!(images.len(), self.vars.len());
        let target_vars = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut out = MPoly::zero(self.field, &target_vars);
        // power cache per variable
        let mut pows: Vec<Vec<MPoly>> = images
            .iter()
            .map(|p| vec![MPoly::one(self.field, &target_vars), p.clone()])
            .collect();
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(self.field, &target_vars, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while pows[v].len() <= e as usize {
                    let last = pows[v].last().unwrap().clone();
                    let step = pows[v][1].clone();
                    pows[v].push(last.mul(&step));
                }
                term = term.mul(&pows[v][e as usize]);
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Substitutes one variable, leaving the rest in place.
    pub fn substitute(&self, var: usize, image: &MPoly) -> Result<MPoly, AlgebraError> {
        let images: Vec<MPoly> = (0..self.vars.len())
            .map(|i| {
                if i == var {
                    image.clone()
                } else {
                    MPoly::var_idx(self.field, &self.vars, i)
                }
            })
            .collect();
        self.substitute_all(&images)
    }

    /// Evaluates fully at field elements.
    pub fn eval(&self, point: &[FieldElem]) -> FieldElem {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&point[v].pow(e as u64));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// The coefficients of the polynomial viewed as univariate in `var`,
    /// index i = coefficient of var^i (an MPoly in the same ring with var absent).
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly> {
        let d = self.degree_in(var).map(|d| d as usize + 1).unwrap_or(0);
        let mut out = vec![MPoly::zero(self.field, &self.vars); d];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut me = m.clone();
            me.0[var] = 0;
            out[e].insert_term(me, c.clone());
        }
        out
    }

    /// Exact division attempt: returns the quotient when `divisor` divides
    /// self exactly, otherwise None. Single-divisor multivariate division.
    pub fn try_div(&self, divisor: &MPoly) -> Option<MPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero(self.field, &self.vars));
        }
        self.check_compatible(divisor).ok()?;
        let (lm, lc) = divisor.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.field, &self.vars);
        while let Some((m, c)) = rem.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = c.mul(&lc_inv);
            let mut t = MPoly::zero(self.field, &self.vars);
            t.insert_term(qm.clone(), qc.clone());
            quot.insert_term(qm, qc);
            rem = rem.sub(&t.mul(divisor));
        }
        Some(quot)
    }

    /// Leading coefficient in graded-lex order.
    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.terms.values().next_back()
    }

    /// Maps every coefficient into F_p. Fails on bad reduction.
    pub fn reduce_mod(&self, p: u64) -> Result<MPoly, AlgebraError> {
        let field = Field::prime(p)?;
        let mut out = MPoly::zero(field, &self.vars);
        for (m, c) in &self.terms {
            out.insert_term(m.clone(), c.reduce_mod(p)?);
        }
        Ok(out)
    }

    /// Renders in a deterministic normal form (terms in descending graded-lex order).
    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut mono = String::new();
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(&self.vars[v]);
                if e > 1 {
                    mono.push_str(&format!("^{e}"));
                }
            }
            let cs = c.to_string();
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

/// Builds the shared variable list for a ring.
pub fn vars(names: &[&str]) -> Arc<Vec<String>> {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<Vec<String>> {
        vars(&["x", "y"])
    }

    #[test]
    fn difference_of_squares() {
        let q = Field::Rational;
        let v = xy();
        let x = MPoly::var(q, &v, "x").unwrap();
        let y = MPoly::var(q, &v, "y").unwrap();
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn partial_derivative() {
        // d/dp (y - p*x) = -x
        let q = Field::Rational;
        let v = vars(&["x", "y", "p"]);
        let x = MPoly::var(q, &v, "x").unwrap();
        let y = MPoly::var(q, &v, "y").unwrap();
        let p = MPoly::var(q, &v, "p").unwrap();
        let f = y.sub(&p.mul(&x));
        assert_eq!(f.partial(2), x.neg());
    }

    #[test]
    fn modular_product() {
        // over F5: (2x+3)(3x+4) = x^2 + 2x + 2
        let f5 = Field::prime(5).unwrap();
        let v = vars(&["x"]);
        let x = MPoly::var(f5, &v, "x").unwrap();
        let a = x.scale(&f5.from_i64(2)).add(&MPoly::from_i64(f5, &v, 3));
        let b = x.scale(&f5.from_i64(3)).add(&MPoly::from_i64(f5, &v, 4));
        let expect = x
            .pow(2)
            .add(&x.scale(&f5.from_i64(2)))
            .add(&MPoly::from_i64(f5, &v, 2));
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let v = xy();
        let a = MPoly::one(Field::Rational, &v);
        let b = MPoly::one(Field::prime(5).unwrap(), &v);
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn exact_division() {
        let q = Field::Rational;
        let v = xy();
        let x = MPoly::var(q, &v, "x").unwrap();
        let y = MPoly::var(q, &v, "y").unwrap();
        let f = x.pow(2).sub(&y.pow(2));
        let d = x.sub(&y);
        assert_eq!(f.try_div(&d).unwrap(), x.add(&y));
        assert!(f.try_div(&x.add(&MPoly::one(q, &v))).is_none());
    }

    #[test]
    fn degree_additivity() {
        let q = Field::Rational;
        let v = xy();
        let x = MPoly::var(q, &v, "x").unwrap();
        let y = MPoly::var(q, &v, "y").unwrap();
        let f = x.pow(3).add(&y);
        let g = y.pow(2).add(&x);
        assert_eq!(
            f.mul(&g).total_degree().unwrap(),
            f.total_degree().unwrap() + g.total_degree().unwrap()
        );
    }
}
