//! JSON input formats: curvature data and trigonometric polynomials.

use std::path::Path;

use heatsym_core::algebra::{parse_rational, AlgebraError, Cyclo8, Matrix};
use heatsym_core::cm::{CmError, FnMatrix, TrigFunction};
use heatsym_core::geometry::{CurvatureData, GeometryError};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid curvature: {0}")]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Cm(#[from] CmError),
    #[error("{0}")]
    Format(String),
}

pub fn read_file(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Read { path: path.display().to_string(), source })
}

/// `{"n": 4, "riemann": [[1,2,1,2,"1"], …], "twist": {"rank": 1, "F": [[1,2,[[["0","1"]]]], …]}}`
///
/// Indices are 1-based; only independent components are needed.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvatureJson {
    pub n: u32,
    #[serde(default)]
    pub riemann: Vec<(usize, usize, usize, usize, String)>,
    pub twist: Option<TwistJson>,
}

/// (k, l, rows of [re, im]).
pub type TwistEntry = (usize, usize, Vec<Vec<(String, String)>>);

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistJson {
    pub rank: usize,
    #[serde(rename = "F", default)]
    pub f: Vec<TwistEntry>,
}

fn zero_based(i: usize, n: u32) -> Result<usize, InputError> {
    if i == 0 || i > n as usize {
        return Err(GeometryError::IndexOutOfRange(i, n).into());
    }
    Ok(i - 1)
}

impl CurvatureJson {
    pub fn into_curvature(self) -> Result<CurvatureData, InputError> {
        let n = self.n;
        let mut riemann = Vec::with_capacity(self.riemann.len());
        for (i, j, k, l, v) in &self.riemann {
            let ix = [zero_based(*i, n)?, zero_based(*j, n)?, zero_based(*k, n)?, zero_based(*l, n)?];
            riemann.push((ix, parse_rational(v)?));
        }
        let (rank, twist) = match &self.twist {
            None => (1, Vec::new()),
            Some(t) => {
                let mut out = Vec::with_capacity(t.f.len());
                for (k, l, rows) in &t.f {
                    if rows.len() != t.rank || rows.iter().any(|r| r.len() != t.rank) {
                        return Err(GeometryError::TwistRank(t.rank).into());
                    }
                    let rows = rows
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|(re, im)| Ok(Cyclo8::complex(parse_rational(re)?, parse_rational(im)?)))
                                .collect::<Result<Vec<_>, InputError>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    out.push(([zero_based(*k, n)?, zero_based(*l, n)?], Matrix::from_rows(rows)));
                }
                (t.rank, out)
            }
        };
        Ok(CurvatureData::from_components(n, &riemann, rank, &twist)?)
    }
}

pub fn parse_curvature(text: &str) -> Result<CurvatureData, InputError> {
    serde_json::from_str::<CurvatureJson>(text)?.into_curvature()
}

type TermJson = (Vec<i64>, Vec<String>);

/// A single function (`terms`), a tuple (`functions`) or a matrix (`matrix`)
/// of trigonometric polynomials on T^dim. Mantissas are one rational or four
/// rationals on the basis 1, ζ, ζ², ζ³ with ζ = e^{iπ/4}.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigJson {
    pub dim: u32,
    pub terms: Option<Vec<TermJson>>,
    pub functions: Option<Vec<Vec<TermJson>>>,
    pub matrix: Option<Vec<Vec<Vec<TermJson>>>>,
}

fn mantissa(parts: &[String]) -> Result<Cyclo8, InputError> {
    let q = parts.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
    match q.len() {
        1 => Ok(Cyclo8::from_rational(q[0].clone())),
        4 => Ok(Cyclo8::new(q[0].clone(), q[1].clone(), q[2].clone(), q[3].clone())),
        k => Err(InputError::Format(format!("mantissa needs 1 or 4 rationals, got {k}"))),
    }
}

fn trig_function(dim: u32, terms: &[TermJson]) -> Result<TrigFunction, InputError> {
    let parsed = terms.iter().map(|(m, c)| Ok((m.clone(), mantissa(c)?))).collect::<Result<Vec<_>, InputError>>()?;
    Ok(TrigFunction::from_terms(dim, parsed)?)
}

#[derive(Debug)]
pub enum TrigInput {
    Function(TrigFunction),
    Tuple(Vec<TrigFunction>),
    Matrix(FnMatrix<TrigFunction>),
}

pub fn parse_trig(text: &str) -> Result<TrigInput, InputError> {
    let j: TrigJson = serde_json::from_str(text)?;
    match (&j.terms, &j.functions, &j.matrix) {
        (Some(t), None, None) => Ok(TrigInput::Function(trig_function(j.dim, t)?)),
        (None, Some(fs), None) => {
            Ok(TrigInput::Tuple(fs.iter().map(|t| trig_function(j.dim, t)).collect::<Result<_, _>>()?))
        }
        (None, None, Some(rows)) => {
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|t| trig_function(j.dim, t)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            Ok(TrigInput::Matrix(FnMatrix::from_rows(rows)?))
        }
        _ => Err(InputError::Format("exactly one of \"terms\", \"functions\", \"matrix\" is required".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use heatsym_core::algebra::rat;

    #[test]
    fn sphere_components() {
        let c = parse_curvature(r#"{"n": 2, "riemann": [[1, 2, 1, 2, "1"]]}"#).unwrap();
        assert_eq!(c.kappa(), &rat(2, 1));
        assert_eq!(c.r(1, 0, 0, 1), &rat(-1, 1));
    }

    #[test]
    fn twist_is_completed() {
        let c = parse_curvature(r#"{"n": 2, "twist": {"rank": 1, "F": [[1, 2, [[["0", "1/2"]]]]]}}"#).unwrap();
        assert_eq!(c.f(1, 0).get(0, 0), &Cyclo8::complex(rat(0, 1), rat(-1, 2)));
    }

    #[test]
    fn broken_bianchi_is_named() {
        let e = parse_curvature(r#"{"n": 4, "riemann": [[1, 2, 3, 4, "1"]]}"#).unwrap_err();
        assert!(matches!(e, InputError::Geometry(GeometryError::Bianchi(..))), "{e}");
    }

    #[test]
    fn unknown_field_rejected() {
        assert!(matches!(parse_curvature(r#"{"n": 2, "ricci": []}"#), Err(InputError::Json(_))));
    }

    #[test]
    fn trig_shapes() {
        let f = parse_trig(r#"{"dim": 1, "terms": [[[1], ["1"]], [[0], ["0", "0", "1", "0"]]]}"#).unwrap();
        let TrigInput::Function(f) = f else { panic!() };
        assert_eq!(f.coeff(&[0]), Cyclo8::i());
        let m = parse_trig(r#"{"dim": 1, "matrix": [[[[[2], ["1"]]]]]}"#).unwrap();
        assert!(matches!(m, TrigInput::Matrix(_)));
        assert!(parse_trig(r#"{"dim": 1}"#).is_err());
        assert!(parse_trig(r#"{"dim": 1, "terms": [[[1], ["1", "2"]]]}"#).is_err());
    }
}
