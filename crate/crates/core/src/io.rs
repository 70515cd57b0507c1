//! JSON file formats for moment problems and atomic measures. Values are
//! accepted as JSON numbers or as strings (`"3/4"`, `"-1.25e2"`); exact mode
//! parses strings as rationals, float mode converts to f64.

use crate::moments::{Atom, AtomicMeasure, MomentError, MomentSequence};
use crate::scalar::{parse_big_rational, render_scalar, ParseScalarError, Scalar};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad value: {0}")]
    Value(#[from] ParseScalarError),
    #[error("bad moments: {0}")]
    Moment(#[from] MomentError),
    #[error("value {0} is not finite")]
    NotFinite(f64),
}

/// Scalar literal: a plain JSON number or a string in rational or decimal
/// notation.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum NumLit {
    Num(f64),
    Str(String),
}

impl NumLit {
    pub fn to_scalar<S: Scalar>(&self) -> Result<S, IoError> {
        match self {
            NumLit::Num(v) => {
                let r = BigRational::from_float(*v).ok_or(IoError::NotFinite(*v))?;
                Ok(S::from_big_rational(&r))
            }
            NumLit::Str(s) => {
                let r = parse_big_rational(s)?;
                Ok(S::from_big_rational(&r))
            }
        }
    }

    pub fn from_scalar<S: Scalar>(v: &S) -> Self {
        if S::EXACT {
            NumLit::Str(render_scalar(v))
        } else {
            NumLit::Num(v.to_f64())
        }
    }
}

/// Problem file: the degree bound n and the moments of order up to 2n.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    pub n: u32,
    /// Entries (i, j, beta_ij); all 0 <= i + j <= 2n must be present.
    pub entries: Vec<(u32, u32, NumLit)>,
}

impl ProblemFile {
    pub fn to_moments<S: Scalar>(&self) -> Result<MomentSequence<S>, IoError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for (i, j, v) in &self.entries {
            entries.push((*i, *j, v.to_scalar::<S>()?));
        }
        Ok(MomentSequence::from_entries(self.n, entries)?)
    }

    pub fn from_moments<S: Scalar>(beta: &MomentSequence<S>) -> Self {
        ProblemFile {
            n: beta.n(),
            entries: beta
                .entries()
                .map(|(m, v)| (m.i, m.j, NumLit::from_scalar(v)))
                .collect(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, IoError> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), IoError> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}

/// One atom of a measure file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtomFile {
    pub x: NumLit,
    pub y: NumLit,
    pub density: NumLit,
}

/// Measure file: atoms plus a flag recording whether every coordinate is
/// exact (false when some location was isolated only numerically).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureFile {
    pub atoms: Vec<AtomFile>,
    pub exact: bool,
}

impl MeasureFile {
    pub fn to_measure<S: Scalar>(&self) -> Result<AtomicMeasure<S>, IoError> {
        let mut atoms = Vec::with_capacity(self.atoms.len());
        for a in &self.atoms {
            atoms.push(Atom {
                x: a.x.to_scalar::<S>()?,
                y: a.y.to_scalar::<S>()?,
                density: a.density.to_scalar::<S>()?,
            });
        }
        Ok(AtomicMeasure::new(atoms)?)
    }

    pub fn from_measure<S: Scalar>(mu: &AtomicMeasure<S>, exact: bool) -> Self {
        MeasureFile {
            atoms: mu
                .atoms()
                .iter()
                .map(|a| AtomFile {
                    x: NumLit::from_scalar(&a.x),
                    y: NumLit::from_scalar(&a.y),
                    density: NumLit::from_scalar(&a.density),
                })
                .collect(),
            exact,
        }
    }

    pub fn load(path: &Path) -> Result<Self, IoError> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), IoError> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn problem_file_round_trips_exact_and_float() {
        let mu = AtomicMeasure::new(vec![
            Atom { x: rat(1, 2), y: rat(-1, 3), density: rat(2, 7) },
            Atom { x: rat(0, 1), y: rat(4, 1), density: rat(5, 7) },
        ])
        .unwrap();
        let beta = mu.moments(2);
        let file = ProblemFile::from_moments(&beta);
        let json = serde_json::to_string(&file).unwrap();
        let parsed: ProblemFile = serde_json::from_str(&json).unwrap();
        let back = parsed.to_moments::<BigRational>().unwrap();
        assert_eq!(
            back.entries().collect::<Vec<_>>(),
            beta.entries().collect::<Vec<_>>()
        );

        let as_float = parsed.to_moments::<f64>().unwrap();
        for ((m, v), (m2, w)) in beta.entries().zip(as_float.entries()) {
            assert_eq!(m, m2);
            assert!((crate::scalar::Scalar::to_f64(v) - *w).abs() < 1e-15);
        }
    }

    #[test]
    fn literals_accept_numbers_and_strings() {
        let p: ProblemFile = serde_json::from_str(
            r#"{"n": 1, "entries": [[0,0,1], [1,0,"1/3"], [0,1,"-0.5"],
                 [2,0,2.25], [1,1,"0"], [0,2,"7/4"]]}"#,
        )
        .unwrap();
        let beta = p.to_moments::<BigRational>().unwrap();
        assert_eq!(beta.get(1, 0), &rat(1, 3));
        assert_eq!(beta.get(0, 1), &rat(-1, 2));
        assert_eq!(beta.get(2, 0), &rat(9, 4));
        let dup: Result<MomentSequence<BigRational>, _> = serde_json::from_str::<ProblemFile>(
            r#"{"n": 1, "entries": [[0,0,1], [0,0,2], [1,0,0], [0,1,0], [2,0,1], [1,1,0], [0,2,1]]}"#,
        )
        .unwrap()
        .to_moments();
        assert!(dup.is_err());
    }

    #[test]
    fn measure_file_round_trip() {
        let mu = AtomicMeasure::new(vec![
            Atom { x: rat(-5, 1), y: rat(0, 1), density: rat(2, 225) },
            Atom { x: rat(4, 1), y: rat(3, 1), density: rat(5, 576) },
        ])
        .unwrap();
        let f = MeasureFile::from_measure(&mu, true);
        let json = serde_json::to_string_pretty(&f).unwrap();
        let parsed: MeasureFile = serde_json::from_str(&json).unwrap();
        assert!(parsed.exact);
        let back = parsed.to_measure::<BigRational>().unwrap();
        assert_eq!(back.atoms(), mu.atoms());
    }
}
