//! Bihomogeneous polynomials on P^2 x P^2* in incidence normal form.
//!
//! Points carry coordinates X0, X1, X2 and lines A0, A1, A2; the flag
//! variety is cut by A0*X0 + A1*X1 + A2*X2 = 0. Sections of O_M(m, n) are
//! represented by normal forms with no monomial divisible by A0*X0
//! (reduction A0*X0 -> -A1*X1 - A2*X2).

use std::fmt;
use std::sync::Arc;

use super::field::{Field, FieldElem};
use super::linalg::Matrix;
use super::poly::{vars, MPoly, Monomial};
use super::AlgebraError;

pub const POINT_VARS: [&str; 3] = ["X0", "X1", "X2"];
pub const LINE_VARS: [&str; 3] = ["A0", "A1", "A2"];
pub const CHART_VARS: [&str; 3] = ["x", "y", "p"];

/// The shared six-variable ring X0..X2, A0..A2.
pub fn bihom_vars() -> Arc<Vec<String>> {
    vars(&["X0", "X1", "X2", "A0", "A1", "A2"])
}

/// The principal chart ring (x, y, p).
pub fn chart_vars() -> Arc<Vec<String>> {
    vars(&["x", "y", "p"])
}

fn x_degree(m: &Monomial) -> u32 {
    m.0[0] + m.0[1] + m.0[2]
}

fn a_degree(m: &Monomial) -> u32 {
    m.0[3] + m.0[4] + m.0[5]
}

/// A bihomogeneous polynomial of bidegree (m, n) in incidence normal form.
/// The zero section carries its declared bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiHomPoly {
    m: i64,
    n: i64,
    poly: MPoly,
}

impl BiHomPoly {
    /// Wraps a raw bihomogeneous polynomial, reducing it to normal form.
    /// Nonzero input must be bihomogeneous; its bidegree is inferred.
    pub fn new(raw: MPoly) -> Result<BiHomPoly, AlgebraError> {
        if raw.vars != bihom_vars() {
            return Err(AlgebraError::VariableMismatch);
        }
        let Some(first) = raw.terms.keys().next() else {
            return Err(AlgebraError::ZeroNeedsBidegree);
        };
        let (m, n) = (x_degree(first), a_degree(first));
        if raw.terms.keys().any(|t| x_degree(t) != m || a_degree(t) != n) {
            return Err(AlgebraError::NotBihomogeneous);
        }
        let poly = reduce_mod_incidence(&raw)?;
        Ok(BiHomPoly { m: m as i64, n: n as i64, poly })
    }

    /// The zero section of the given bidegree (negative entries allowed:
    /// those bundles have no nonzero sections).
    pub fn zero(field: Field, m: i64, n: i64) -> BiHomPoly {
        BiHomPoly { m, n, poly: MPoly::zero(field, &bihom_vars()) }
    }

    pub fn constant(field: Field, c: FieldElem) -> BiHomPoly {
        BiHomPoly { m: 0, n: 0, poly: MPoly::constant(field, &bihom_vars(), c) }
    }

    pub fn bidegree(&self) -> (i64, i64) {
        (self.m, self.n)
    }

    pub fn field(&self) -> Field {
        self.poly.field
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn as_poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn add(&self, other: &BiHomPoly) -> Result<BiHomPoly, AlgebraError> {
        if !self.is_zero() && !other.is_zero() && (self.m, self.n) != (other.m, other.n) {
            return Err(AlgebraError::BidegreeMismatch {
                left: (self.m, self.n),
                right: (other.m, other.n),
            });
        }
        let (m, n) = if self.is_zero() { (other.m, other.n) } else { (self.m, self.n) };
        Ok(BiHomPoly { m, n, poly: self.poly.checked_add(&other.poly)? })
    }

    pub fn sub(&self, other: &BiHomPoly) -> Result<BiHomPoly, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiHomPoly {
        BiHomPoly { m: self.m, n: self.n, poly: self.poly.neg() }
    }

    pub fn scale(&self, c: &FieldElem) -> BiHomPoly {
        BiHomPoly { m: self.m, n: self.n, poly: self.poly.scale(c) }
    }

    /// Product, re-reduced to normal form; bidegrees add.
    pub fn mul(&self, other: &BiHomPoly) -> Result<BiHomPoly, AlgebraError> {
        let poly = reduce_mod_incidence(&self.poly.checked_mul(&other.poly)?)?;
        Ok(BiHomPoly { m: self.m + other.m, n: self.n + other.n, poly })
    }

    /// General substitution: X -> xs, A -> as_, over any target ring.
    pub fn subst(&self, xs: &[MPoly; 3], as_: &[MPoly; 3]) -> Result<MPoly, AlgebraError> {
        let images = [
            xs[0].clone(),
            xs[1].clone(),
            xs[2].clone(),
            as_[0].clone(),
            as_[1].clone(),
            as_[2].clone(),
        ];
        self.poly.substitute_all(&images)
    }

    /// Restriction to the principal chart: X = (1, x, y), A = (p*x - y, -p, 1).
    pub fn chart(&self) -> MPoly {
        let cv = chart_vars();
        let f = self.field();
        let x = MPoly::var_idx(f, &cv, 0);
        let y = MPoly::var_idx(f, &cv, 1);
        let p = MPoly::var_idx(f, &cv, 2);
        let one = MPoly::one(f, &cv);
        self.subst(
            &[one, x.clone(), y.clone()],
            &[p.mul(&x).sub(&y), p.neg(), MPoly::one(f, &cv)],
        )
        .expect("chart substitution")
    }

    /// Swaps the point and line roles (the flag variety self-duality);
    /// bidegree (m, n) becomes (n, m).
    pub fn swap_duality(&self) -> BiHomPoly {
        let bv = bihom_vars();
        let mut out = MPoly::zero(self.field(), &bv);
        for (mono, c) in &self.poly.terms {
            let e = &mono.0;
            let swapped = Monomial(vec![e[3], e[4], e[5], e[0], e[1], e[2]]);
            out.terms.insert(swapped, c.clone());
        }
        let reduced = reduce_mod_incidence(&out).expect("swap stays bihomogeneous");
        BiHomPoly { m: self.n, n: self.m, poly: reduced }
    }

    /// Evaluates the A-slots at a fixed line, leaving a polynomial in X
    /// over the three point variables.
    pub fn at_line(&self, line: &[FieldElem; 3]) -> MPoly {
        let xv = vars(&POINT_VARS);
        let f = self.field();
        let xs = [
            MPoly::var_idx(f, &xv, 0),
            MPoly::var_idx(f, &xv, 1),
            MPoly::var_idx(f, &xv, 2),
        ];
        let as_ = [
            MPoly::constant(f, &xv, line[0].clone()),
            MPoly::constant(f, &xv, line[1].clone()),
            MPoly::constant(f, &xv, line[2].clone()),
        ];
        self.subst(&xs, &as_).expect("line substitution")
    }

    /// Evaluates the X-slots at a fixed point, leaving a polynomial in A.
    pub fn at_point(&self, point: &[FieldElem; 3]) -> MPoly {
        let av = vars(&LINE_VARS);
        let f = self.field();
        let xs = [
            MPoly::constant(f, &av, point[0].clone()),
            MPoly::constant(f, &av, point[1].clone()),
            MPoly::constant(f, &av, point[2].clone()),
        ];
        let as_ = [
            MPoly::var_idx(f, &av, 0),
            MPoly::var_idx(f, &av, 1),
            MPoly::var_idx(f, &av, 2),
        ];
        self.subst(&xs, &as_).expect("point substitution")
    }

    pub fn reduce_mod(&self, p: u64) -> Result<BiHomPoly, AlgebraError> {
        Ok(BiHomPoly { m: self.m, n: self.n, poly: self.poly.reduce_mod(p)? })
    }

    /// Largest e with A2^e dividing the normal form (the p-degree collapse
    /// multiplicity of a web section); zero for the zero section.
    pub fn a2_multiplicity(&self) -> u32 {
        self.poly.terms.keys().map(|m| m.0[5]).min().unwrap_or(0)
    }

    /// Divides the normal form by A2^e (valid in the quotient ring since
    /// normal forms divisible by A2 are exactly those with A2 in every term).
    pub fn strip_a2(&self, e: u32) -> BiHomPoly {
        let mut out = MPoly::zero(self.field(), &self.poly.vars);
        for (mono, c) in &self.poly.terms {
            let mut m2 = mono.clone();
            assert!(m2.0[5] >= e);
            m2.0[5] -= e;
            out.terms.insert(m2, c.clone());
        }
        BiHomPoly { m: self.m, n: self.n - e as i64, poly: out }
    }
}

impl fmt::Display for BiHomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({},{}): {}", self.m, self.n, self.poly)
    }
}

/// Reduces a raw bihomogeneous polynomial to incidence normal form:
/// rewrites A0*X0 -> -(A1*X1 + A2*X2) until no term is divisible by A0*X0.
pub fn reduce_mod_incidence(raw: &MPoly) -> Result<MPoly, AlgebraError> {
    if raw.vars != bihom_vars() {
        return Err(AlgebraError::VariableMismatch);
    }
    if let Some(first) = raw.terms.keys().next() {
        let (m, n) = (x_degree(first), a_degree(first));
        if raw.terms.keys().any(|t| x_degree(t) != m || a_degree(t) != n) {
            return Err(AlgebraError::NotBihomogeneous);
        }
    }
    let field = raw.field;
    let bv = raw.vars.clone();
    let mut out = MPoly::zero(field, &bv);
    let mut work = raw.clone();
    while let Some((mono, c)) = work
        .terms
        .iter()
        .find(|(m, _)| m.0[0] >= 1 && m.0[3] >= 1)
        .map(|(m, c)| (m.clone(), c.clone()))
    {
        // strip one A0*X0 and replace with -(A1*X1 + A2*X2)
        let mut base = mono.clone();
        base.0[0] -= 1;
        base.0[3] -= 1;
        let mut t = MPoly::zero(field, &bv);
        t.terms.insert(mono, c.clone());
        work = work.sub(&t);
        for (xi, ai) in [(1usize, 4usize), (2usize, 5usize)] {
            let mut m2 = base.clone();
            m2.0[xi] += 1;
            m2.0[ai] += 1;
            let mut add = MPoly::zero(field, &bv);
            add.terms.insert(m2, c.neg());
            work = work.add(&add);
        }
    }
    // what remains has no reducible term; sweep the already-normal terms
    for (m, c) in work.terms {
        out.terms.insert(m, c);
    }
    Ok(out)
}

/// Exponent vectors of the degree-d monomials in three variables, in
/// ascending graded-lex order.
pub fn homogeneous_exponents(d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i0 in 0..=d {
        for i1 in 0..=(d - i0) {
            out.push(vec![i0, i1, d - i0 - i1]);
        }
    }
    out.sort_by(|a, b| Monomial(a.clone()).cmp(&Monomial(b.clone())));
    out
}

/// All bidegree-(m, n) monomials not divisible by A0*X0, in ascending
/// graded-lex order. Negative bidegrees give the empty list (no sections).
pub fn monomial_basis(m: i64, n: i64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if m < 0 || n < 0 {
        return out;
    }
    let (m, n) = (m as u32, n as u32);
    for i0 in 0..=m {
        for i1 in 0..=(m - i0) {
            let i2 = m - i0 - i1;
            for j0 in 0..=n {
                if i0 > 0 && j0 > 0 {
                    continue;
                }
                for j1 in 0..=(n - j0) {
                    let j2 = n - j0 - j1;
                    out.push(vec![i0, i1, i2, j0, j1, j2]);
                }
            }
        }
    }
    out.sort_by(|a, b| Monomial(a.clone()).cmp(&Monomial(b.clone())));
    out
}

/// Reconstructs the bidegree-(m, n) section whose principal-chart
/// restriction equals `chart_poly`, if one exists.
pub fn chart_to_bihom(chart_poly: &MPoly, m: i64, n: i64) -> Result<BiHomPoly, AlgebraError> {
    if chart_poly.vars != chart_vars() {
        return Err(AlgebraError::VariableMismatch);
    }
    let field = chart_poly.field;
    if chart_poly.is_zero() {
        return Ok(BiHomPoly::zero(field, m, n));
    }
    if m < 0 || n < 0 {
        return Err(AlgebraError::NoChartLift { m, n });
    }
    let basis = monomial_basis(m, n);
    let images: Vec<MPoly> = basis
        .iter()
        .map(|e| {
            let mono = MPoly::monomial(field, &bihom_vars(), e.clone(), field.one());
            BiHomPoly::new(mono).expect("basis monomial").chart()
        })
        .collect();
    // collect every chart monomial appearing anywhere
    let mut rows_idx = std::collections::BTreeSet::new();
    for img in images.iter().chain(std::iter::once(chart_poly)) {
        for k in img.terms.keys() {
            rows_idx.insert(k.clone());
        }
    }
    let rows: Vec<_> = rows_idx.into_iter().collect();
    let mut mat = Vec::with_capacity(rows.len());
    let mut rhs = Vec::with_capacity(rows.len());
    for r in &rows {
        mat.push(
            images
                .iter()
                .map(|img| img.terms.get(r).cloned().unwrap_or_else(|| field.zero()))
                .collect::<Vec<_>>(),
        );
        rhs.push(chart_poly.terms.get(r).cloned().unwrap_or_else(|| field.zero()));
    }
    let mat = Matrix::from_rows(field, mat)?;
    let sol = mat.solve(&rhs).ok_or(AlgebraError::NoChartLift { m, n })?;
    let mut acc = MPoly::zero(field, &bihom_vars());
    for (e, c) in basis.iter().zip(sol) {
        if !c.is_zero() {
            acc = acc.add(&MPoly::monomial(field, &bihom_vars(), e.clone(), c));
        }
    }
    if acc.is_zero() {
        return Ok(BiHomPoly::zero(field, m, n));
    }
    BiHomPoly::new(acc)
}
