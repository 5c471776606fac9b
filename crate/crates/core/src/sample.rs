//! Seeded random generation of sections, equations, and webs.
//!
//! Every draw is a pure function of a ChaCha stream, so a seed reproduces
//! the same objects on any platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::bihom::{bihom_vars, monomial_basis, BiHomPoly};
use crate::algebra::field::Field;
use crate::algebra::poly::MPoly;
use crate::contact::SecondOrderODE;
use crate::webs::PlaneWeb;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random section of O_M(m, n) with small integer coefficients.
/// Zero when the bidegree has no sections.
pub fn random_section(rng: &mut impl Rng, field: Field, m: i64, n: i64) -> BiHomPoly {
    let basis = monomial_basis(m, n);
    if basis.is_empty() {
        return BiHomPoly::zero(field, m, n);
    }
    let bv = bihom_vars();
    loop {
        let mut acc = MPoly::zero(field, &bv);
        for e in &basis {
            let c: i64 = rng.gen_range(-9..=9);
            if c != 0 {
                acc = acc.add(&MPoly::monomial(field, &bv, e.clone(), field.from_i64(c)));
            }
        }
        if !acc.is_zero() {
            return BiHomPoly::new(acc).expect("basis monomials are bihomogeneous");
        }
    }
}

/// A random equation of bidegree (a, b); slots with no sections stay zero.
pub fn random_ode(rng: &mut impl Rng, field: Field, a: i64, b: i64) -> SecondOrderODE {
    loop {
        let f1 = random_section(rng, field, a + 2, b - 1);
        let f2 = random_section(rng, field, a - 1, b + 2);
        if let Ok(e) = SecondOrderODE::new(f1, f2) {
            return e;
        }
    }
}

/// A random k-web of degree d (re-drawn past the rare chart collapses).
pub fn random_web(rng: &mut impl Rng, field: Field, k: i64, d: i64) -> PlaneWeb {
    loop {
        let section = random_section(rng, field, d, k);
        if let Ok(w) = PlaneWeb::new(section) {
            return w;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::Bidegree;

    #[test]
    fn seeded_draws_are_reproducible() {
        let q = Field::Rational;
        let mut r1 = rng_from_seed(42);
        let mut r2 = rng_from_seed(42);
        assert_eq!(random_ode(&mut r1, q, 2, 2), random_ode(&mut r2, q, 2, 2));
        assert_eq!(random_web(&mut r1, q, 3, 2), random_web(&mut r2, q, 3, 2));
    }

    #[test]
    fn bidegrees_come_out_right() {
        let q = Field::Rational;
        let mut rng = rng_from_seed(7);
        for (a, b) in [(1i64, 1i64), (3, 1), (2, 4)] {
            let e = random_ode(&mut rng, q, a, b);
            assert_eq!(e.bidegree(), Bidegree::new(a, b));
        }
        let w = random_web(&mut rng, q, 4, 3);
        assert_eq!((w.rank(), w.degree()), (4, 3));
    }
}
