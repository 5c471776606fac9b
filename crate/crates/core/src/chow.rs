//! The cohomology ring of M = P(TP^2) and the intersection formulas built on it.
//!
//! H*(M) = Z[h, hd] / (h^3, h^2 - h*hd + hd^2), where h and hd are the
//! hyperplane classes pulled back from P^2 and its dual. Classes are stored
//! in the basis {1; h, hd; h^2, h*hd; pt}, with hd^2 rewritten as h*hd - h^2
//! and pt = h^2*hd = h*hd^2.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ChowError {
    #[error("class is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: u32 },
    #[error("invalid surface class: expected a*h + b*hd with a, b >= 0, not both zero")]
    InvalidSurfaceClass,
    #[error("dim E(a,b) is only defined for a, b >= 1 (got a={a}, b={b})")]
    OdeDimensionRange { a: i64, b: i64 },
    #[error("a k-web needs k >= 1 (got k={0})")]
    WebRank(i64),
}

/// An element of H*(M) in the basis {1; h, hd; h^2, h*hd; pt}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChowClass(pub [i64; 6]);

pub const ONE: ChowClass = ChowClass([1, 0, 0, 0, 0, 0]);
pub const H: ChowClass = ChowClass([0, 1, 0, 0, 0, 0]);
pub const HD: ChowClass = ChowClass([0, 0, 1, 0, 0, 0]);
pub const H2: ChowClass = ChowClass([0, 0, 0, 1, 0, 0]);
pub const HHD: ChowClass = ChowClass([0, 0, 0, 0, 1, 0]);
pub const PT: ChowClass = ChowClass([0, 0, 0, 0, 0, 1]);

impl ChowClass {
    pub fn zero() -> ChowClass {
        ChowClass([0; 6])
    }

    /// a*h + b*hd.
    pub fn surface(a: i64, b: i64) -> ChowClass {
        ChowClass([0, a, b, 0, 0, 0])
    }

    /// a*h^2 + b*h*hd.
    pub fn curve(a: i64, b: i64) -> ChowClass {
        ChowClass([0, 0, 0, a, b, 0])
    }

    pub fn add(&self, other: &ChowClass) -> ChowClass {
        let mut out = [0; 6];
        for i in 0..6 {
            out[i] = self.0[i] + other.0[i];
        }
        ChowClass(out)
    }

    pub fn scale(&self, c: i64) -> ChowClass {
        let mut out = self.0;
        for v in &mut out {
            *v *= c;
        }
        ChowClass(out)
    }

    /// True when every nonzero coefficient sits in the degree-d graded piece.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        let degs = [0u32, 1, 1, 2, 2, 3];
        self.0
            .iter()
            .zip(degs)
            .all(|(&c, deg)| c == 0 || deg == d)
    }
}

/// Basis-times-basis products, reduced to the canonical basis.
fn basis_mul(i: usize, j: usize) -> ChowClass {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    match (i, j) {
        (0, k) => {
            let mut v = [0; 6];
            v[k] = 1;
            ChowClass(v)
        }
        (1, 1) => H2,                       // h*h
        (1, 2) => HHD,                      // h*hd
        (2, 2) => ChowClass([0, 0, 0, -1, 1, 0]), // hd^2 = h*hd - h^2
        (1, 4) | (2, 3) | (2, 4) => PT,     // h*(h*hd), hd*h^2, hd*(h*hd) = pt
        (1, 3) => ChowClass::zero(),        // h*h^2 = h^3 = 0
        _ => ChowClass::zero(),             // degree > 3
    }
}

/// Product in H*(M).
pub fn chow_mul(u: &ChowClass, v: &ChowClass) -> ChowClass {
    let mut out = ChowClass::zero();
    for i in 0..6 {
        if u.0[i] == 0 {
            continue;
        }
        for j in 0..6 {
            if v.0[j] == 0 {
                continue;
            }
            out = out.add(&basis_mul(i, j).scale(u.0[i] * v.0[j]));
        }
    }
    out
}

/// The intersection number of a top-degree class: its pt-coefficient.
pub fn intersection_number(u: &ChowClass) -> Result<i64, ChowError> {
    if !u.is_homogeneous(3) {
        return Err(ChowError::NotHomogeneous { expected: 3 });
    }
    Ok(u.0[5])
}

/// The bidegree (a, b) of a second-order equation: T*F = O_M(a, b).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub a: i64,
    pub b: i64,
}

impl Bidegree {
    pub fn new(a: i64, b: i64) -> Bidegree {
        Bidegree { a, b }
    }

    pub fn class(&self) -> ChowClass {
        ChowClass::surface(self.a, self.b)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// The fixed bundle classes of the contact geometry.
pub mod bundles {
    use super::{Bidegree, ChowClass};

    /// K_M = O(-2,-2).
    pub const CANONICAL: Bidegree = Bidegree { a: -2, b: -2 };
    /// N_D = det(D) = O(1,1).
    pub const CONTACT_NORMAL: Bidegree = Bidegree { a: 1, b: 1 };
    /// T*L = O(-2,1): the lines equation y'' = 0.
    pub const LINES_COTANGENT: Bidegree = Bidegree { a: -2, b: 1 };
    /// T*V = O(1,-2): the fiber foliation.
    pub const VERTICAL_COTANGENT: Bidegree = Bidegree { a: 1, b: -2 };

    /// c1 of the tautological subbundle O_{P(TS)}(-1) = 2h - hd.
    pub fn tautological_c1() -> ChowClass {
        ChowClass::surface(2, -1)
    }
}

/// Class of the tangency curve between an equation of bidegree F and a
/// surface of class T = alpha*h + beta*hd: (F + T) * T.
pub fn tangency_class_surface(f: Bidegree, t: &ChowClass) -> Result<ChowClass, ChowError> {
    if !t.is_homogeneous(1) || (t.0[1] == 0 && t.0[2] == 0) || t.0[1] < 0 || t.0[2] < 0 {
        return Err(ChowError::InvalidSurfaceClass);
    }
    Ok(chow_mul(&f.class().add(t), t))
}

/// Tangency count of an equation along a smooth compact curve tangent to
/// the contact distribution: T*F.C + det(D).C - chi(C).
pub fn tangency_count_curve(
    f: Bidegree,
    curve: &ChowClass,
    euler: i64,
) -> Result<i64, ChowError> {
    if !curve.is_homogeneous(2) {
        return Err(ChowError::NotHomogeneous { expected: 2 });
    }
    let t1 = intersection_number(&chow_mul(&f.class(), curve))?;
    let t2 = intersection_number(&chow_mul(&bundles::CONTACT_NORMAL.class(), curve))?;
    Ok(t1 + t2 - euler)
}

/// Bidegree of the tangency divisor between two equations:
/// c1(det(D) (x) T*F1 (x) T*F2) = (a1+a2+1, b1+b2+1).
pub fn tangency_class_pair(f1: Bidegree, f2: Bidegree) -> Bidegree {
    Bidegree::new(f1.a + f2.a + 1, f1.b + f2.b + 1)
}

/// h^0(O_M(a,b)) = (a+1)(b+1)(a+b+2)/2 for a, b >= 0; the `extrapolated`
/// flag marks inputs outside the proven range (value reported as 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionDim {
    pub value: i64,
    pub extrapolated: bool,
}

pub fn dim_sections(a: i64, b: i64) -> SectionDim {
    if a < 0 || b < 0 {
        return SectionDim { value: 0, extrapolated: true };
    }
    SectionDim { value: (a + 1) * (b + 1) * (a + b + 2) / 2, extrapolated: false }
}

/// dim E(a,b) = (2a^2 b + 2ab^2 + 3a^2 + 3b^2 + 12ab + 9a + 9b)/2 - 1 for a, b >= 1.
pub fn dim_ode_space(a: i64, b: i64) -> Result<i64, ChowError> {
    if a < 1 || b < 1 {
        return Err(ChowError::OdeDimensionRange { a, b });
    }
    Ok((2 * a * a * b + 2 * a * b * b + 3 * a * a + 3 * b * b + 12 * a * b + 9 * a + 9 * b) / 2 - 1)
}

/// Class of the lift surface of a k-web of degree d: [S_W] = d*h + k*hd.
pub fn web_lift_class(k: i64, d: i64) -> Result<ChowClass, ChowError> {
    if k < 1 {
        return Err(ChowError::WebRank(k));
    }
    Ok(ChowClass::surface(d, k))
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["1", "h", "hd", "h^2", "h*hd", "pt"];
        let mut first = true;
        for (c, name) in self.0.iter().zip(names) {
            if *c == 0 {
                continue;
            }
            if first {
                if *c == 1 && name != "1" {
                    write!(f, "{name}")?;
                } else if *c == -1 && name != "1" {
                    write!(f, "-{name}")?;
                } else if name == "1" {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "{c}*{name}")?;
                }
                first = false;
            } else {
                let sign = if *c < 0 { '-' } else { '+' };
                let mag = c.abs();
                if mag == 1 && name != "1" {
                    write!(f, " {sign} {name}")?;
                } else if name == "1" {
                    write!(f, " {sign} {mag}")?;
                } else {
                    write!(f, " {sign} {mag}*{name}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
