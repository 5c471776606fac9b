//! k-webs of degree d on the plane as sections of O_M(d, k): lift surfaces,
//! products, the degree-0 duality with curves, the degree-1 duality with
//! foliations on the dual plane, and singular loci.

use crate::algebra::bihom::{bihom_vars, chart_vars, homogeneous_exponents, BiHomPoly};
use crate::algebra::field::{Field, FieldElem};
use crate::algebra::linalg::Matrix;
use crate::algebra::poly::{vars, MPoly, Monomial};
use crate::algebra::univar::{gcd_univar, rational_roots};
use crate::algebra::{resultant, AlgebraError};
use crate::contact::{plane_squarefree, shares_plane_factor, ContactError};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WebError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Contact(#[from] ContactError),
    #[error("a web needs rank k >= 1 and degree d >= 0 (got k={k}, d={d})")]
    BadRankOrDegree { k: i64, d: i64 },
    #[error("p-degree collapse: section divisible by the vertical component A2^{multiplicity}; reduced section: {reduced}")]
    PDegreeCollapse { multiplicity: u32, reduced: String },
    #[error("curve is not squarefree")]
    NotSquarefree,
    #[error("web has degree {0}, expected degree 1")]
    NotDegreeOne(i64),
    #[error("section is not linear in the point coordinates")]
    NotLinearInPoints,
    #[error("coefficient triple violates the Euler contraction")]
    NotEuler,
    #[error("foliation is not saturated (codimension-one singular part)")]
    NotSaturated,
    #[error("foliation has non-isolated singularities")]
    DegenerateSingularities,
    #[error("elimination left the system in special position; re-draw")]
    NotInGeneralPosition,
}

/// Which plane a web lives on. Dual-plane webs are stored in standard
/// coordinates after the flag-variety swap, so all machinery applies as is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plane {
    Primal,
    Dual,
}

/// A k-web of degree d, stored as its lift-surface section of O_M(d, k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneWeb {
    k: i64,
    d: i64,
    plane: Plane,
    section: BiHomPoly,
}

impl PlaneWeb {
    /// Validates and wraps a section of bidegree (d, k). The chart form must
    /// have p-degree exactly k, which fails exactly when the section is
    /// divisible by the vertical-pencil section A2.
    pub fn new(section: BiHomPoly) -> Result<PlaneWeb, WebError> {
        PlaneWeb::on_plane(section, Plane::Primal)
    }

    pub fn on_plane(section: BiHomPoly, plane: Plane) -> Result<PlaneWeb, WebError> {
        let (d, k) = section.bidegree();
        if k < 1 || d < 0 || section.is_zero() {
            return Err(WebError::BadRankOrDegree { k, d });
        }
        let collapse = section.a2_multiplicity();
        if collapse > 0 {
            let reduced = section.strip_a2(collapse);
            return Err(WebError::PDegreeCollapse {
                multiplicity: collapse,
                reduced: reduced.to_string(),
            });
        }
        Ok(PlaneWeb { k, d, plane, section })
    }

    /// The pencil of lines through a point: the 1-web of degree 0 with
    /// section A . P.
    pub fn pencil_through(field: Field, point: &[FieldElem; 3]) -> Result<PlaneWeb, WebError> {
        let bv = bihom_vars();
        let mut acc = MPoly::zero(field, &bv);
        for (i, c) in point.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0u32; 6];
                e[3 + i] = 1;
                acc = acc.add(&MPoly::monomial(field, &bv, e, c.clone()));
            }
        }
        let section = BiHomPoly::new(acc).map_err(WebError::Algebra)?;
        PlaneWeb::new(section)
    }

    pub fn rank(&self) -> i64 {
        self.k
    }

    pub fn degree(&self) -> i64 {
        self.d
    }

    pub fn plane(&self) -> Plane {
        self.plane
    }

    pub fn section(&self) -> &BiHomPoly {
        &self.section
    }

    pub fn field(&self) -> Field {
        self.section.field()
    }

    /// Chart form F(x, y, p) = a_0 + a_1 p + ... + a_k p^k.
    pub fn chart_form(&self) -> MPoly {
        self.section.chart()
    }

    /// The chart coefficients a_0 .. a_k as polynomials in x, y.
    pub fn chart_coefficients(&self) -> Vec<MPoly> {
        let mut c = self.chart_form().coeffs_in(2);
        while (c.len() as i64) < self.k + 1 {
            c.push(MPoly::zero(self.field(), &chart_vars()));
        }
        c
    }

    /// The superposition W1 x W2: sections multiply, ranks and degrees add.
    pub fn product(&self, other: &PlaneWeb) -> Result<PlaneWeb, WebError> {
        assert_eq!(self.plane, other.plane, "webs live on different planes");
        let section = self.section.mul(&other.section)?;
        PlaneWeb::on_plane(section, self.plane)
    }

    pub fn reduce_mod(&self, p: u64) -> Result<PlaneWeb, WebError> {
        let section = self.section.reduce_mod(p)?;
        PlaneWeb::on_plane(section, self.plane)
    }
}

impl fmt::Display for PlaneWeb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-web of degree {}: {}", self.k, self.d, self.section)
    }
}

/// Dual coordinates for foliations on the dual plane.
pub fn dual_vars() -> Arc<Vec<String>> {
    vars(&["a0", "a1", "a2"])
}

/// A degree-k foliation on the dual plane, as the 1-form sum X_i(a) da_i
/// with Euler contraction zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualFoliation {
    degree: i64,
    components: [MPoly; 3],
    saturated: bool,
}

impl DualFoliation {
    /// Wraps a coefficient triple, checking the Euler contraction and
    /// computing the saturation flag.
    pub fn new(components: [MPoly; 3]) -> Result<DualFoliation, WebError> {
        let dv = dual_vars();
        if components.iter().any(|c| c.vars != dv) {
            return Err(WebError::Algebra(AlgebraError::VariableMismatch));
        }
        if components.iter().all(|c| c.is_zero()) {
            return Err(WebError::NotEuler);
        }
        let field = components[0].field;
        let mut euler = MPoly::zero(field, &dv);
        for (i, c) in components.iter().enumerate() {
            euler = euler.add(&MPoly::var_idx(field, &dv, i).mul(c));
        }
        if !euler.is_zero() {
            return Err(WebError::NotEuler);
        }
        let degree = components
            .iter()
            .filter_map(|c| c.total_degree())
            .max()
            .unwrap_or(0) as i64
            - 1;
        let saturated = !affine_components_share_factor(&components)?;
        Ok(DualFoliation { degree, components, saturated })
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn components(&self) -> &[MPoly; 3] {
        &self.components
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn field(&self) -> Field {
        self.components[0].field
    }
}

/// Shared nonconstant factor of the two affine components (a0 = 1)?
/// By the Euler relation this detects a positive-dimensional singular set
/// away from the line at infinity.
fn affine_components_share_factor(components: &[MPoly; 3]) -> Result<bool, WebError> {
    let [x1h, x2h] = dehomogenized_pair(components);
    if x1h.is_zero() && x2h.is_zero() {
        return Ok(true);
    }
    if x1h.is_zero() || x2h.is_zero() {
        let nz = if x1h.is_zero() { &x2h } else { &x1h };
        return Ok(!nz.is_constant());
    }
    Ok(shares_plane_factor(&chart_pair_embed(&x1h), &chart_pair_embed(&x2h))?)
}

/// The affine components (X1, X2) at a0 = 1, in the dual ring.
fn dehomogenized_pair(components: &[MPoly; 3]) -> [MPoly; 2] {
    let dv = dual_vars();
    let field = components[0].field;
    let one = MPoly::one(field, &dv);
    [
        components[1].substitute(0, &one).expect("dehomogenize"),
        components[2].substitute(0, &one).expect("dehomogenize"),
    ]
}

/// Re-embeds a polynomial in (a1, a2) into the chart ring (x, y, p) so the
/// bivariate helpers from the contact module apply.
fn chart_pair_embed(f: &MPoly) -> MPoly {
    let cv = chart_vars();
    let mut out = MPoly::zero(f.field, &cv);
    for (m, c) in &f.terms {
        assert_eq!(m.0[0], 0, "a0 must be eliminated first");
        out.terms.insert(Monomial(vec![m.0[1], m.0[2], 0]), c.clone());
    }
    out
}

/// The dual web of a plane curve: for g homogeneous of degree k cutting a
/// squarefree curve, the k-web of degree zero on the dual plane whose leaves
/// are the tangent lines, parametrized by the points of the curve. Stored
/// after the flag swap, so its section is g with A-variables in place of X.
pub struct DualWebOfCurve {
    pub web: PlaneWeb,
    /// Rational lines contained in the curve, when any (the tangent-line
    /// description of the leaves breaks along these).
    pub rational_linear_factors: Vec<[FieldElem; 3]>,
}

pub fn dual_web_of_curve(g: &BiHomPoly) -> Result<DualWebOfCurve, WebError> {
    let (k, n) = g.bidegree();
    if n != 0 || k < 1 {
        return Err(WebError::BadRankOrDegree { k: n, d: k });
    }
    if !homogeneous_squarefree(g)? {
        return Err(WebError::NotSquarefree);
    }
    let swapped = g.swap_duality(); // bidegree (0, k)
    let web = PlaneWeb::on_plane(swapped, Plane::Dual)?;
    let rational_linear_factors = crate::lines::solve_line_divisibility(g)?.rational_lines;
    Ok(DualWebOfCurve { web, rational_linear_factors })
}

/// Squarefree test for a homogeneous curve g(X0, X1, X2): the X0 power must
/// be at most one and the dehomogenization squarefree. Degrees one and two
/// take closed-form shortcuts (a conic is non-squarefree exactly when its
/// symmetric matrix has rank one).
pub fn homogeneous_squarefree(g: &BiHomPoly) -> Result<bool, WebError> {
    if g.bidegree().1 != 0 {
        return Err(WebError::Algebra(AlgebraError::NotBihomogeneous));
    }
    match g.bidegree().0 {
        1 => return Ok(true),
        2 => return Ok(conic_matrix_rank_at_least_two(g)),
        _ => {}
    }
    let mut e = 0u32;
    let mut core = g.as_poly().clone();
    let x0 = MPoly::var_idx(g.field(), &bihom_vars(), 0);
    while let Some(q) = core.try_div(&x0) {
        core = q;
        e += 1;
    }
    if e > 1 {
        return Ok(false);
    }
    let cv = chart_vars();
    let field = g.field();
    let images = vec![
        MPoly::one(field, &cv),
        MPoly::var_idx(field, &cv, 0),
        MPoly::var_idx(field, &cv, 1),
        MPoly::zero(field, &cv),
        MPoly::zero(field, &cv),
        MPoly::zero(field, &cv),
    ];
    let affine = core.substitute_all(&images)?;
    if affine.is_constant() {
        return Ok(true);
    }
    Ok(plane_squarefree(&affine)?)
}

/// Doubled symmetric matrix test for a conic a00 X0^2 + ... (odd or zero
/// characteristic): rank <= 1 means a doubled line.
fn conic_matrix_rank_at_least_two(g: &BiHomPoly) -> bool {
    let field = g.field();
    let coeff = |i: usize, j: usize| -> FieldElem {
        let mut e = [0u32; 6];
        e[i] += 1;
        e[j] += 1;
        g.as_poly()
            .terms
            .get(&Monomial(e.to_vec()))
            .cloned()
            .unwrap_or_else(|| field.zero())
    };
    let two = field.from_i64(2);
    // doubled matrix: diagonal 2*a_ii, off-diagonal a_ij
    let m = [
        [coeff(0, 0).mul(&two), coeff(0, 1), coeff(0, 2)],
        [coeff(0, 1), coeff(1, 1).mul(&two), coeff(1, 2)],
        [coeff(0, 2), coeff(1, 2), coeff(2, 2).mul(&two)],
    ];
    for r1 in 0..3 {
        for r2 in r1 + 1..3 {
            for c1 in 0..3 {
                for c2 in c1 + 1..3 {
                    let minor = m[r1][c1].mul(&m[r2][c2]).sub(&m[r1][c2].mul(&m[r2][c1]));
                    if !minor.is_zero() {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// The foliation on the dual plane induced by a degree-1 web: the section is
/// linear in points, B = X . L(A), and the foliation components are
/// X(a) = L(a) x a, so the Euler contraction vanishes identically.
pub fn dual_foliation_of_degree1_web(w: &PlaneWeb) -> Result<DualFoliation, WebError> {
    if w.degree() != 1 {
        return Err(WebError::NotDegreeOne(w.degree()));
    }
    let l = point_linear_coefficients(w.section())?;
    let x = cross_with_position(&l);
    DualFoliation::new(x)
}

/// Splits a bidegree-(1, k) section as X0 L0(A) + X1 L1(A) + X2 L2(A),
/// returning the L_i rewritten in the dual ring.
fn point_linear_coefficients(section: &BiHomPoly) -> Result<[MPoly; 3], WebError> {
    let field = section.field();
    let dv = dual_vars();
    let mut ls = [
        MPoly::zero(field, &dv),
        MPoly::zero(field, &dv),
        MPoly::zero(field, &dv),
    ];
    for (m, c) in &section.as_poly().terms {
        let xdeg: u32 = m.0[..3].iter().sum();
        if xdeg != 1 {
            return Err(WebError::NotLinearInPoints);
        }
        let i = (0..3).find(|&i| m.0[i] == 1).unwrap();
        ls[i]
            .terms
            .insert(Monomial(vec![m.0[3], m.0[4], m.0[5]]), c.clone());
    }
    Ok(ls)
}

/// X(a) = L(a) x a, componentwise.
fn cross_with_position(l: &[MPoly; 3]) -> [MPoly; 3] {
    let dv = dual_vars();
    let field = l[0].field;
    let a: Vec<MPoly> = (0..3).map(|i| MPoly::var_idx(field, &dv, i)).collect();
    [
        l[1].mul(&a[2]).sub(&l[2].mul(&a[1])),
        l[2].mul(&a[0]).sub(&l[0].mul(&a[2])),
        l[0].mul(&a[1]).sub(&l[1].mul(&a[0])),
    ]
}

/// Inverse of the degree-1 duality: recovers a linear-in-points section from
/// a saturated Euler triple by solving the cross-product relation. L is
/// determined up to multiples of a, which die in the incidence quotient, so
/// the web is recovered exactly.
pub fn web_of_foliation(f: &DualFoliation) -> Result<PlaneWeb, WebError> {
    if !f.is_saturated() {
        return Err(WebError::NotSaturated);
    }
    let field = f.field();
    let k = f.degree();
    if k < 1 {
        return Err(WebError::BadRankOrDegree { k, d: 1 });
    }
    let dv = dual_vars();
    let deg_k = homogeneous_exponents(k as u32);
    let deg_k1 = homogeneous_exponents(k as u32 + 1);
    let row_index =
        |e: &[u32]| deg_k1.iter().position(|f| f == e).expect("degree k+1 monomial");
    let ncols = 3 * deg_k.len();
    let nrows = 3 * deg_k1.len();
    let mut mat = Matrix::new(field, nrows, ncols);
    for (j, e) in deg_k.iter().enumerate() {
        for li in 0..3 {
            let col = li * deg_k.len() + j;
            let mut l = [
                MPoly::zero(field, &dv),
                MPoly::zero(field, &dv),
                MPoly::zero(field, &dv),
            ];
            l[li] = MPoly::monomial(field, &dv, e.clone(), field.one());
            let x = cross_with_position(&l);
            for (comp, xc) in x.iter().enumerate() {
                for (m, c) in &xc.terms {
                    let r = comp * deg_k1.len() + row_index(&m.0);
                    let v = mat.at(r, col).add(c);
                    mat.data[r * ncols + col] = v;
                }
            }
        }
    }
    let mut rhs = vec![field.zero(); nrows];
    for (comp, xc) in f.components().iter().enumerate() {
        for (m, c) in &xc.terms {
            rhs[comp * deg_k1.len() + row_index(&m.0)] = c.clone();
        }
    }
    let sol = mat.solve(&rhs).ok_or(WebError::NotEuler)?;
    let bv = bihom_vars();
    let mut acc = MPoly::zero(field, &bv);
    for (j, e) in deg_k.iter().enumerate() {
        for li in 0..3 {
            let c = &sol[li * deg_k.len() + j];
            if c.is_zero() {
                continue;
            }
            let mut expo = vec![0u32; 6];
            expo[li] = 1;
            expo[3] = e[0];
            expo[4] = e[1];
            expo[5] = e[2];
            acc = acc.add(&MPoly::monomial(field, &bv, expo, c.clone()));
        }
    }
    let section = BiHomPoly::new(acc)?;
    PlaneWeb::new(section)
}

/// Singularity data of a dual foliation.
#[derive(Clone, Debug)]
pub struct SingularityCount {
    /// Total multiplicity of the affine singularities (a0 != 0).
    pub affine: usize,
    /// Contribution along the line at infinity.
    pub at_infinity: usize,
    /// Rational singular points found, as projective triples.
    pub rational_points: Vec<[FieldElem; 3]>,
}

impl SingularityCount {
    pub fn total(&self) -> usize {
        self.affine + self.at_infinity
    }
}

/// Counts singularities of the foliation with multiplicity: common zeros of
/// the affine component pair via a resultant, plus the line at infinity.
/// Generic degree-k foliations have k^2 + k + 1 of them.
pub fn singularity_count(f: &DualFoliation) -> Result<SingularityCount, WebError> {
    if !f.is_saturated() {
        return Err(WebError::DegenerateSingularities);
    }
    let [x1h, x2h] = dehomogenized_pair(f.components());
    let g1 = chart_pair_embed(&x1h);
    let g2 = chart_pair_embed(&x2h);
    if g1.is_zero() || g2.is_zero() {
        return Err(WebError::DegenerateSingularities);
    }
    // affine count: the degree of res in the second coordinate, valid when
    // nothing escapes to its infinity (leading coefficients stay coprime)
    let (r, affine) = if g1.degree_in(1).unwrap_or(0) == 0 && g2.degree_in(1).unwrap_or(0) == 0 {
        (None, 0usize)
    } else if g1.degree_in(1).unwrap_or(0) == 0 || g2.degree_in(1).unwrap_or(0) == 0 {
        return Err(WebError::NotInGeneralPosition);
    } else {
        let lc1 = g1.coeffs_in(1).into_iter().next_back().unwrap();
        let lc2 = g2.coeffs_in(1).into_iter().next_back().unwrap();
        if !lc1.is_constant() && !lc2.is_constant() && shares_plane_factor(&lc1, &lc2)? {
            return Err(WebError::NotInGeneralPosition);
        }
        let r = resultant(&g1, &g2, 1)?;
        if r.is_zero() {
            return Err(WebError::DegenerateSingularities);
        }
        let d = r.degree_in(0).unwrap_or(0) as usize;
        (Some(r), d)
    };
    let field = f.field();
    let mut rational_points = Vec::new();
    if let Some(r) = &r {
        for alpha in rational_roots(r, 0) {
            let s1 = eval_first(&g1, &alpha);
            let s2 = eval_first(&g2, &alpha);
            let g = match (s1.is_zero(), s2.is_zero()) {
                (true, true) => return Err(WebError::DegenerateSingularities),
                (true, false) => s2,
                (false, true) => s1,
                (false, false) => gcd_univar(&s1, &s2, 1),
            };
            for beta in rational_roots(&g, 1) {
                rational_points.push([field.one(), alpha.clone(), beta]);
            }
        }
    }
    // line at infinity besides (0:0:1): common roots of X0(0,1,t), X2(0,1,t)
    let mut at_infinity = 0usize;
    let tv = vars(&["t"]);
    let at_inf = |c: &MPoly| -> MPoly {
        let images = vec![
            MPoly::zero(field, &tv),
            MPoly::one(field, &tv),
            MPoly::var_idx(field, &tv, 0),
        ];
        c.substitute_all(&images).expect("infinity substitution")
    };
    let u = at_inf(&f.components()[0]);
    let w = at_inf(&f.components()[2]);
    match (u.is_zero(), w.is_zero()) {
        (true, true) => return Err(WebError::DegenerateSingularities),
        (true, false) | (false, true) => {
            let nz = if u.is_zero() { &w } else { &u };
            if !nz.is_constant() {
                at_infinity += nz.degree_in(0).unwrap_or(0) as usize;
                for t in rational_roots(nz, 0) {
                    rational_points.push([field.zero(), field.one(), t]);
                }
            }
        }
        (false, false) => {
            let g = gcd_univar(&u, &w, 0);
            if !g.is_constant() {
                at_infinity += g.degree_in(0).unwrap_or(0) as usize;
                for t in rational_roots(&g, 0) {
                    rational_points.push([field.zero(), field.one(), t]);
                }
            }
        }
    }
    // the remaining point (0:0:1)
    let orig = [field.zero(), field.zero(), field.one()];
    if f.components()[0].eval(&orig).is_zero() && f.components()[1].eval(&orig).is_zero() {
        at_infinity += 1;
        rational_points.push(orig);
    }
    Ok(SingularityCount { affine, at_infinity, rational_points })
}

fn eval_first(g: &MPoly, alpha: &FieldElem) -> MPoly {
    let c = MPoly::constant(g.field, &g.vars, alpha.clone());
    g.substitute(0, &c).expect("substitute alpha")
}

/// The chart ideal of the singular locus of a web's lift foliation, with a
/// finiteness verdict from iterated resultants.
#[derive(Clone, Debug)]
pub struct SingularLocus {
    /// Chart generators: F, dF/dp, F_x + p F_y.
    pub generators: Vec<MPoly>,
    pub finiteness: Finiteness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Finiteness {
    Finite,
    /// The locus contains a curve.
    NonFinite,
    /// The cascade could not decide.
    Undetermined,
}

pub fn web_singular_locus(w: &PlaneWeb) -> Result<SingularLocus, WebError> {
    let cv = chart_vars();
    let field = w.field();
    let f = w.chart_form();
    let fp = f.partial(2);
    let p = MPoly::var_idx(field, &cv, 2);
    let dir = f.partial(0).add(&p.mul(&f.partial(1)));
    let generators = vec![f.clone(), fp.clone(), dir.clone()];
    let finiteness = singular_locus_finiteness(w, &f, &fp, &dir)?;
    Ok(SingularLocus { generators, finiteness })
}

fn singular_locus_finiteness(
    w: &PlaneWeb,
    f: &MPoly,
    fp: &MPoly,
    dir: &MPoly,
) -> Result<Finiteness, WebError> {
    if fp.is_zero() || dir.is_zero() {
        return Ok(Finiteness::NonFinite);
    }
    let r1 = if fp.degree_in(2).unwrap_or(0) == 0 {
        fp.clone()
    } else {
        resultant(f, fp, 2)?
    };
    let r2 = if dir.degree_in(2).unwrap_or(0) == 0 {
        dir.clone()
    } else {
        resultant(f, dir, 2)?
    };
    if r1.is_zero() || r2.is_zero() {
        return Ok(Finiteness::NonFinite);
    }
    if !r1.is_constant() && !r2.is_constant() && shares_plane_factor(&r1, &r2)? {
        return Ok(Finiteness::NonFinite);
    }
    // direction at infinity (q = 0): the top two chart coefficients
    let coeffs = w.chart_coefficients();
    let top = &coeffs[w.rank() as usize];
    if top.is_zero() {
        return Ok(Finiteness::NonFinite);
    }
    if w.rank() >= 1 {
        let second = &coeffs[w.rank() as usize - 1];
        if !top.is_constant()
            && !second.is_zero()
            && !second.is_constant()
            && shares_plane_factor(top, second)?
        {
            return Ok(Finiteness::NonFinite);
        }
    }
    Ok(Finiteness::Finite)
}

/// Verdict of the invariant-line search for a web.
#[derive(Clone, Debug)]
pub enum WebInvariantLines {
    /// A one-parameter (or larger) family of invariant lines.
    Family,
    Finite {
        /// Count with multiplicity via the dual foliation (degree-one webs).
        count: Option<usize>,
        rational_lines: Vec<[FieldElem; 3]>,
    },
}

/// Invariant lines of a web: tautological family for d = 0, dual-foliation
/// singularities for d = 1, and the line-divisibility solver in general.
pub fn invariant_lines_of_web(w: &PlaneWeb) -> Result<WebInvariantLines, WebError> {
    if w.degree() == 0 {
        return Ok(WebInvariantLines::Family);
    }
    let solved = crate::lines::solve_line_divisibility(w.section())?;
    if solved.family {
        return Ok(WebInvariantLines::Family);
    }
    let count = if w.degree() == 1 {
        match dual_foliation_of_degree1_web(w).and_then(|f| singularity_count(&f)) {
            Ok(c) => Some(c.total()),
            Err(_) => None,
        }
    } else {
        None
    };
    Ok(WebInvariantLines::Finite { count, rational_lines: solved.rational_lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn q() -> Field {
        Field::Rational
    }

    fn bi(expr: &str) -> BiHomPoly {
        BiHomPoly::new(parse_poly(expr, q(), &bihom_vars()).unwrap()).unwrap()
    }

    fn web(expr: &str) -> PlaneWeb {
        PlaneWeb::new(bi(expr)).unwrap()
    }

    #[test]
    fn horizontal_pencil_is_a_degree_zero_web() {
        // chart form p: section -A1, the pencil of horizontal lines
        let w = web("A1");
        assert_eq!((w.rank(), w.degree()), (1, 0));
        let cv = chart_vars();
        let p = MPoly::var(q(), &cv, "p").unwrap();
        assert_eq!(w.chart_form(), p.neg());
    }

    #[test]
    fn pencil_through_origin() {
        let w = PlaneWeb::pencil_through(q(), &[q().one(), q().zero(), q().zero()]).unwrap();
        assert_eq!((w.rank(), w.degree()), (1, 0));
        let cv = chart_vars();
        assert_eq!(w.chart_form(), parse_poly("x*p - y", q(), &cv).unwrap());
    }

    #[test]
    fn p_degree_collapse_reports_factor() {
        let raw = bi("A2*A1*X0");
        match PlaneWeb::new(raw) {
            Err(WebError::PDegreeCollapse { multiplicity, .. }) => assert_eq!(multiplicity, 1),
            other => panic!("expected collapse, got {other:?}"),
        }
    }

    #[test]
    fn random_bidegree_2_3_section() {
        let w = web("X0^2*A1^3 + X1*X2*A1*A2^2 - X0*X2*A2^3");
        assert_eq!((w.rank(), w.degree()), (3, 2));
        assert_eq!(
            crate::chow::web_lift_class(w.rank(), w.degree()).unwrap(),
            crate::chow::ChowClass::surface(2, 3)
        );
    }

    #[test]
    fn product_adds_ranks_and_degrees() {
        let w1 = web("X0^2*A1^2 + X1^2*A2^2");
        let pencil = PlaneWeb::pencil_through(q(), &[q().one(), q().zero(), q().zero()]).unwrap();
        let prod = w1.product(&pencil).unwrap();
        assert_eq!((prod.rank(), prod.degree()), (3, 2));
        let p2 = PlaneWeb::pencil_through(q(), &[q().zero(), q().one(), q().zero()]).unwrap();
        let two = pencil.product(&p2).unwrap();
        assert_eq!((two.rank(), two.degree()), (2, 0));
        // the vertical pencil itself has no valid chart form
        assert!(PlaneWeb::pencil_through(q(), &[q().zero(), q().zero(), q().one()]).is_err());
    }

    #[test]
    fn dual_web_of_conic() {
        let g = bi("X0*X2 - X1^2");
        let dw = dual_web_of_curve(&g).unwrap();
        assert_eq!((dw.web.rank(), dw.web.degree()), (2, 0));
        assert_eq!(dw.web.plane(), Plane::Dual);
        assert!(dw.rational_linear_factors.is_empty());
        assert!(dual_web_of_curve(&bi("X1^2")).is_err());
        // a product of two lines is the product of two pencils, flagged
        let dw = dual_web_of_curve(&bi("X1*(X0 + X2)")).unwrap();
        assert_eq!((dw.web.rank(), dw.web.degree()), (2, 0));
        assert_eq!(dw.rational_linear_factors.len(), 2);
    }

    #[test]
    fn dual_web_leaves_satisfy_chart_form() {
        // points (1, t, t^2) of the conic give leaves with slope -1/t through
        // the pencil of lines touching it; check one rational leaf
        let g = bi("X0*X2 - X1^2");
        let dw = dual_web_of_curve(&g).unwrap();
        let chart = dw.web.chart_form();
        // leaf through the curve point t = 1: line 1 + alpha + beta = 0 in
        // dual chart (alpha, beta), slope p = -1; parametrize alpha = s,
        // beta = -1 - s
        let cv = chart_vars();
        let s = MPoly::var(q(), &cv, "x").unwrap(); // reuse x as the parameter
        let alpha = s.clone();
        let beta = MPoly::from_i64(q(), &cv, -1).sub(&s);
        let p = MPoly::from_i64(q(), &cv, -1);
        let restricted = chart
            .substitute(0, &alpha)
            .and_then(|f| f.substitute(1, &beta))
            .and_then(|f| f.substitute(2, &p))
            .unwrap();
        assert!(restricted.is_zero());
    }

    #[test]
    fn dual_foliation_euler_and_round_trip() {
        let w = web("X0*A1^2 + X1*A2^2 - X2*A0*A1");
        let f = dual_foliation_of_degree1_web(&w).unwrap();
        assert_eq!(f.degree(), w.rank());
        let back = web_of_foliation(&f).unwrap();
        assert_eq!(back.section(), w.section());
    }

    #[test]
    fn degree1_duality_rejects_other_degrees() {
        let w = web("X0^2*A1^2 + X1^2*A2^2");
        assert!(dual_foliation_of_degree1_web(&w).is_err());
    }

    #[test]
    fn product_with_pencil_has_unsaturated_dual() {
        // (1,2)-section divisible by A1: a degree-0 pencil forced into the web
        let w = web("X0*A1^2 - X2*A1*A2");
        assert_eq!((w.rank(), w.degree()), (2, 1));
        match dual_foliation_of_degree1_web(&w) {
            Ok(fol) => assert!(!fol.is_saturated()),
            Err(WebError::NotSaturated) => {}
            Err(other) => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn generic_degree1_webs_have_k2_k_1_invariant_lines() {
        // k = 1: three singularities of the dual foliation
        let w = web("X0*A1 + 2*X1*A2 - X2*A1 + X2*A2");
        let f = dual_foliation_of_degree1_web(&w).unwrap();
        assert_eq!(singularity_count(&f).unwrap().total(), 3);
        // k = 2: seven
        let w = web("X0*A1^2 + 2*X1*A2^2 + X2*A1*A2 - X0*A2^2");
        let f = dual_foliation_of_degree1_web(&w).unwrap();
        assert_eq!(singularity_count(&f).unwrap().total(), 7);
    }

    #[test]
    fn singular_locus_of_products_is_nonfinite() {
        let p1 = PlaneWeb::pencil_through(q(), &[q().one(), q().zero(), q().zero()]).unwrap();
        let p2 = PlaneWeb::pencil_through(q(), &[q().zero(), q().one(), q().zero()]).unwrap();
        let prod = p1.product(&p2).unwrap();
        let locus = web_singular_locus(&prod).unwrap();
        assert_eq!(locus.finiteness, Finiteness::NonFinite);
    }

    #[test]
    fn generic_web_singular_locus_is_finite() {
        // chart form p^3 + x^2 p - y: isolated singularities only
        let w = web("-X0^2*A1^3 - X1^2*A1*A2^2 - X0*X2*A2^3");
        let locus = web_singular_locus(&w).unwrap();
        assert_eq!(locus.finiteness, Finiteness::Finite);
    }

    #[test]
    fn invariant_lines_family_for_degree_zero() {
        let pencil = PlaneWeb::pencil_through(q(), &[q().one(), q().zero(), q().zero()]).unwrap();
        assert!(matches!(invariant_lines_of_web(&pencil).unwrap(), WebInvariantLines::Family));
    }
}
