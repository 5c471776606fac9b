//! Exact invariance and solution checkers, invariant-line solvers,
//! finite-field screening certificates, and witness constructions.

mod checker;
mod screen;
mod witness;

pub use checker::{
    find_invariant_lines_ode, invariance_via_gradient, is_invariant_curve_web, is_solution_ode,
    Invariance,
};
pub use screen::{
    screen_finite_field, Certificate, Finding, PrimeReport, ScreenConfig, ScreenObject,
};
pub use witness::{genericity_witness, product_web_witness, ProductWebWitness, WitnessMode};

use crate::algebra::bihom::{bihom_vars, chart_vars, BiHomPoly};
use crate::algebra::poly::MPoly;
use crate::algebra::univar::content_wrt;
use crate::algebra::{AlgebraError, Field};
use crate::contact::ContactError;
use crate::webs::{homogeneous_squarefree, WebError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InvariantsError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Contact(#[from] ContactError),
    #[error(transparent)]
    Web(#[from] WebError),
    #[error("curve must be nonconstant")]
    ConstantCurve,
    #[error("curve is not squarefree")]
    NotSquarefree,
    #[error("curve polynomial must be homogeneous in the point coordinates")]
    NotACurveForm,
    #[error("screening degree bound {degree} must stay below every prime (got {prime})")]
    DegreeBoundVsPrime { degree: u32, prime: u64 },
    #[error("screening budget exceeded: {size} curves > {budget}")]
    BudgetExceeded { size: u64, budget: u64 },
    #[error("witness parameters out of range: {0}")]
    WitnessRange(String),
    #[error("witness retries exhausted after {0} draws")]
    RetriesExhausted(u32),
}

/// A plane projective curve, stored as a squarefree form of degree r >= 1 in
/// the point coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveCurve {
    form: BiHomPoly,
}

/// The chart split of a curve: the line at infinity to some multiplicity,
/// a vertical part in x alone, and a core with positive y-degree on every
/// component.
pub struct CurveSplit {
    pub infinity_mult: u32,
    pub vertical: MPoly,
    pub core: MPoly,
}

impl ProjectiveCurve {
    /// Wraps a homogeneous form in X0, X1, X2 (A-degree zero).
    pub fn from_form(form: BiHomPoly) -> Result<ProjectiveCurve, InvariantsError> {
        let (r, n) = form.bidegree();
        if n != 0 || form.is_zero() {
            return Err(InvariantsError::NotACurveForm);
        }
        if r < 1 {
            return Err(InvariantsError::ConstantCurve);
        }
        if !homogeneous_squarefree(&form)? {
            return Err(InvariantsError::NotSquarefree);
        }
        Ok(ProjectiveCurve { form })
    }

    /// Homogenizes an affine curve f(x, y) to its projective closure.
    pub fn from_affine(f: &MPoly) -> Result<ProjectiveCurve, InvariantsError> {
        if f.vars != chart_vars() || f.degree_in(2).unwrap_or(0) > 0 {
            return Err(InvariantsError::NotACurveForm);
        }
        let Some(r) = f.total_degree().filter(|&r| r > 0) else {
            return Err(InvariantsError::ConstantCurve);
        };
        let bv = bihom_vars();
        let field = f.field;
        let mut acc = MPoly::zero(field, &bv);
        for (m, c) in &f.terms {
            let (i, j) = (m.0[0], m.0[1]);
            let expo = vec![r - i - j, i, j, 0, 0, 0];
            acc = acc.add(&MPoly::monomial(field, &bv, expo, c.clone()));
        }
        ProjectiveCurve::from_form(BiHomPoly::new(acc)?)
    }

    pub fn form(&self) -> &BiHomPoly {
        &self.form
    }

    pub fn degree(&self) -> i64 {
        self.form.bidegree().0
    }

    pub fn field(&self) -> Field {
        self.form.field()
    }

    pub fn reduce_mod(&self, p: u64) -> Result<ProjectiveCurve, InvariantsError> {
        ProjectiveCurve::from_form(self.form.reduce_mod(p)?)
    }

    /// Splits off the line at infinity and the vertical components, leaving
    /// a core whose components all have positive y-degree.
    pub fn split(&self) -> CurveSplit {
        let field = self.field();
        // the X0-power dividing the form, then term-by-term dehomogenization
        // (X0^a X1^i X2^j -> x^i y^j)
        let poly = self.form.as_poly();
        let infinity_mult = poly.terms.keys().map(|m| m.0[0]).min().unwrap_or(0);
        let cv = chart_vars();
        let mut affine = MPoly::zero(field, &cv);
        for (m, c) in &poly.terms {
            affine
                .terms
                .insert(crate::algebra::Monomial(vec![m.0[1], m.0[2], 0]), c.clone());
        }
        if affine.is_constant() {
            return CurveSplit {
                infinity_mult,
                vertical: MPoly::one(field, &cv),
                core: MPoly::one(field, &cv),
            };
        }
        let vertical = if affine.degree_in(1).unwrap_or(0) == 0 {
            affine.clone()
        } else {
            content_wrt(&affine, 1)
        };
        let core = affine.try_div(&vertical).expect("content divides");
        CurveSplit { infinity_mult, vertical, core }
    }
}
