//! Input records: plain key-value files describing equations, webs, and
//! foliations, with polynomial values in the shared expression grammar.

use anyhow::{anyhow, bail, Context, Result};
use std::collections::BTreeMap;
use std::path::Path;

use webode::algebra::bihom::{bihom_vars, chart_vars};
use webode::algebra::{chart_to_bihom, parse_poly, BiHomPoly, Field, MPoly};
use webode::contact::SecondOrderODE;
use webode::webs::{dual_vars, DualFoliation, PlaneWeb};

/// A parsed key-value record: `key = value` lines, `#` comments, values
/// optionally double-quoted.
pub struct Record {
    entries: BTreeMap<String, String>,
}

impl Record {
    pub fn parse(text: &str) -> Result<Record> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected `key = value`", lineno + 1))?;
            let key = key.trim().to_string();
            let mut value = value.trim();
            if value.len() >= 2 && value.starts_with('"') && value.ends_with('"') {
                value = &value[1..value.len() - 1];
            }
            if entries.insert(key.clone(), value.to_string()).is_some() {
                bail!("line {}: duplicate key `{key}`", lineno + 1);
            }
        }
        Ok(Record { entries })
    }

    pub fn load(path: &Path) -> Result<Record> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        Record::parse(&text)
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|s| s.as_str())
    }

    fn int(&self, key: &str) -> Result<Option<i64>> {
        self.get(key)
            .map(|v| v.parse::<i64>().with_context(|| format!("key `{key}`: not an integer")))
            .transpose()
    }
}

/// Loads an equation: either the section pair F1, F2 (with optional a, b for
/// zero slots) or the chart pair A, B with declared a, b.
pub fn load_ode(record: &Record, field: Field) -> Result<SecondOrderODE> {
    let a = record.int("a")?;
    let b = record.int("b")?;
    let has_sections = record.get("F1").is_some() || record.get("F2").is_some();
    let has_chart = record.get("A").is_some() || record.get("B").is_some();
    if has_sections && has_chart {
        bail!("give either F1/F2 or A/B, not both");
    }
    if has_chart {
        let (a, b) = match (a, b) {
            (Some(a), Some(b)) => (a, b),
            _ => bail!("chart input needs declared a and b"),
        };
        let parse_chart = |key: &str| -> Result<MPoly> {
            match record.get(key) {
                Some(expr) => {
                    Ok(parse_poly(expr, field, &chart_vars()).context("parsing chart expression")?)
                }
                None => Ok(MPoly::zero(field, &chart_vars())),
            }
        };
        let a_poly = parse_chart("A")?;
        let b_poly = parse_chart("B")?;
        let f1 = chart_to_bihom(&b_poly, a + 2, b - 1)
            .context("B is not the chart of a section of bidegree (a+2, b-1)")?;
        let f2 = chart_to_bihom(&a_poly, a - 1, b + 2)
            .context("A is not the chart of a section of bidegree (a-1, b+2)")?;
        return Ok(SecondOrderODE::new(f1, f2)?);
    }
    let parse_section = |key: &str, m: Option<i64>, n: Option<i64>| -> Result<Option<BiHomPoly>> {
        match record.get(key) {
            None | Some("0") => match (m, n) {
                (Some(m), Some(n)) => Ok(Some(BiHomPoly::zero(field, m, n))),
                _ => Ok(None),
            },
            Some(expr) => {
                let poly = parse_poly(expr, field, &bihom_vars())
                    .with_context(|| format!("parsing {key}"))?;
                Ok(Some(BiHomPoly::new(poly)?))
            }
        }
    };
    let f1 = parse_section("F1", a.map(|a| a + 2), b.map(|b| b - 1))?;
    let f2 = parse_section("F2", a.map(|a| a - 1), b.map(|b| b + 2))?;
    match (f1, f2) {
        (Some(f1), Some(f2)) => Ok(SecondOrderODE::new(f1, f2)?),
        (Some(f1), None) => {
            let d = f1.bidegree();
            Ok(SecondOrderODE::new(f1, BiHomPoly::zero(field, d.0 - 3, d.1 + 3))?)
        }
        (None, Some(f2)) => {
            let d = f2.bidegree();
            Ok(SecondOrderODE::new(BiHomPoly::zero(field, d.0 + 3, d.1 - 3), f2)?)
        }
        (None, None) => bail!("record defines neither F1/F2 nor A/B"),
    }
}

/// Loads a web: the section expression (key `section`) or the chart form
/// (key `F`) with declared k, d.
pub fn load_web(record: &Record, field: Field) -> Result<PlaneWeb> {
    let k = record.int("k")?;
    let d = record.int("d")?;
    if let Some(expr) = record.get("section") {
        let poly = parse_poly(expr, field, &bihom_vars()).context("parsing section")?;
        let section = BiHomPoly::new(poly)?;
        let web = PlaneWeb::new(section)?;
        if let Some(k) = k {
            if web.rank() != k {
                bail!("declared k = {k} but the section has rank {}", web.rank());
            }
        }
        if let Some(d) = d {
            if web.degree() != d {
                bail!("declared d = {d} but the section has degree {}", web.degree());
            }
        }
        return Ok(web);
    }
    if let Some(expr) = record.get("F") {
        let (k, d) = match (k, d) {
            (Some(k), Some(d)) => (k, d),
            _ => bail!("chart input needs declared k and d"),
        };
        let chart = parse_poly(expr, field, &chart_vars()).context("parsing chart form")?;
        let section = chart_to_bihom(&chart, d, k)
            .context("F is not the chart form of a section of bidegree (d, k)")?;
        return Ok(PlaneWeb::new(section)?);
    }
    bail!("record defines neither `section` nor `F`")
}

/// Loads a dual-plane foliation from components X0, X1, X2 in a0, a1, a2.
pub fn load_foliation(record: &Record, field: Field) -> Result<DualFoliation> {
    let mut comps = Vec::new();
    for key in ["X0", "X1", "X2"] {
        let expr = record
            .get(key)
            .ok_or_else(|| anyhow!("foliation record needs {key}"))?;
        comps.push(parse_poly(expr, field, &dual_vars()).context("parsing component")?);
    }
    Ok(DualFoliation::new([
        comps[0].clone(),
        comps[1].clone(),
        comps[2].clone(),
    ])?)
}

/// Parses an affine or homogeneous curve expression into a projective curve.
pub fn load_curve(expr: &str, field: Field) -> Result<webode::invariants::ProjectiveCurve> {
    use webode::invariants::ProjectiveCurve;
    if expr.contains('X') {
        let poly = parse_poly(expr, field, &bihom_vars()).context("parsing homogeneous curve")?;
        Ok(ProjectiveCurve::from_form(BiHomPoly::new(poly)?)?)
    } else {
        let poly = parse_poly(expr, field, &chart_vars()).context("parsing affine curve")?;
        Ok(ProjectiveCurve::from_affine(&poly)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ode_record_with_sections() {
        let r = Record::parse("F1 = \"X0^3\"\nF2 = \"A2^3\"\n").unwrap();
        let e = load_ode(&r, Field::Rational).unwrap();
        assert_eq!(e.bidegree(), webode::chow::Bidegree::new(1, 1));
    }

    #[test]
    fn ode_record_with_chart() {
        // y'' = 1 in chart form
        let r = Record::parse("a = 1\nb = 1\nA = \"1\"\nB = \"1\"\n").unwrap();
        let e = load_ode(&r, Field::Rational).unwrap();
        let (a, b) = e.chart_vector_field();
        assert!(a.is_constant() && b.is_constant());
    }

    #[test]
    fn lines_equation_record() {
        let r = Record::parse("a = -2\nb = 1\nF1 = \"1\"\n").unwrap();
        let e = load_ode(&r, Field::Rational).unwrap();
        assert_eq!(e, SecondOrderODE::lines_equation(Field::Rational));
    }

    #[test]
    fn web_record() {
        let r = Record::parse("k = 1\nd = 0\nsection = \"A0\"\n").unwrap();
        let w = load_web(&r, Field::Rational).unwrap();
        assert_eq!((w.rank(), w.degree()), (1, 0));
        let r = Record::parse("k = 1\nd = 0\nF = \"x*p - y\"\n").unwrap();
        let w2 = load_web(&r, Field::Rational).unwrap();
        assert_eq!(w.section(), w2.section());
    }

    #[test]
    fn bad_records() {
        assert!(Record::parse("a = 1\na = 2\n").is_err());
        let r = Record::parse("a = 1\n").unwrap();
        assert!(load_ode(&r, Field::Rational).is_err());
    }
}
