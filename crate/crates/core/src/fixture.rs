//! JSON instance files: `{"ambient": N | [m, n], "generators": [...]}` with
//! optional ideal generators and planted ground truth.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::ComplexMatrix;
use crate::planted::{AlgebraBlock, PlantedAlgebra, PlantedTro, TroBlock};
use crate::star_algebra::StarAlgebra;
use crate::tol::Tolerances;
use crate::tro::Tro;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ambient {
    Square(usize),
    Rect([usize; 2]),
}

impl Ambient {
    pub fn shape(&self) -> (usize, usize) {
        match *self {
            Ambient::Square(n) => (n, n),
            Ambient::Rect([m, n]) => (m, n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroundTruth {
    Algebra { blocks: Vec<AlgebraBlock> },
    Tro { blocks: Vec<TroBlock> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Fixture {
    pub ambient: Ambient,
    pub generators: Vec<ComplexMatrix>,
    /// Adjoin the identity of `M_N` when generating the algebra.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unital: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal_generators: Option<Vec<ComplexMatrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ground_truth: Option<GroundTruth>,
}

impl Fixture {
    pub fn algebra(n: usize, generators: Vec<ComplexMatrix>) -> Fixture {
        Fixture {
            ambient: Ambient::Square(n),
            generators,
            unital: false,
            ideal_generators: None,
            ground_truth: None,
        }
    }

    pub fn tro(m: usize, n: usize, generators: Vec<ComplexMatrix>) -> Fixture {
        Fixture {
            ambient: Ambient::Rect([m, n]),
            generators,
            unital: false,
            ideal_generators: None,
            ground_truth: None,
        }
    }

    pub fn from_planted_algebra(p: &PlantedAlgebra) -> Fixture {
        Fixture {
            ground_truth: Some(GroundTruth::Algebra {
                blocks: p.blocks.clone(),
            }),
            ..Fixture::algebra(p.ambient, p.generators.clone())
        }
    }

    pub fn from_planted_tro(p: &PlantedTro) -> Fixture {
        Fixture {
            ground_truth: Some(GroundTruth::Tro {
                blocks: p.blocks.clone(),
            }),
            ..Fixture::tro(p.rows, p.cols, p.generators.clone())
        }
    }

    /// Parse and check every matrix against the declared ambient shape.
    pub fn from_json(text: &str) -> Result<Fixture> {
        let fixture: Fixture = serde_json::from_str(text)
            .map_err(|e| Error::InvalidMatrix(format!("fixture does not parse: {e}")))?;
        fixture.validate()?;
        Ok(fixture)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixture serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let (m, n) = self.ambient.shape();
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameters("ambient must be positive".into()));
        }
        for g in &self.generators {
            if g.shape() != (m, n) {
                return Err(Error::ShapeMismatch {
                    expected: (m, n),
                    found: g.shape(),
                });
            }
        }
        for g in self.ideal_generators.iter().flatten() {
            if g.shape() != (m, m) {
                return Err(Error::ShapeMismatch {
                    expected: (m, m),
                    found: g.shape(),
                });
            }
        }
        Ok(())
    }

    pub fn build_algebra(&self, tol: Tolerances) -> Result<StarAlgebra> {
        let (m, n) = self.ambient.shape();
        if m != n {
            return Err(Error::InvalidParameters(format!(
                "an algebra needs a square ambient, got {m}×{n}"
            )));
        }
        StarAlgebra::generate(n, &self.generators, self.unital, tol)
    }

    pub fn build_tro(&self, tol: Tolerances) -> Result<Tro> {
        let (m, n) = self.ambient.shape();
        Tro::generate(m, n, &self.generators, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_and_rectangular_ambients() {
        let text = r#"{"ambient": 2, "generators": [{"rows": 2, "cols": 2,
            "entries": [[0,0],[1,0],[0,0],[0,0]]}], "ideal_generators": []}"#;
        let f = Fixture::from_json(text).unwrap();
        assert_eq!(f.ambient, Ambient::Square(2));
        assert_eq!(f.build_algebra(Tolerances::default()).unwrap().dim(), 4);

        let text = r#"{"ambient": [1, 2], "generators": [{"rows": 1, "cols": 2,
            "entries": [[1,0],[0,0]]}]}"#;
        let f = Fixture::from_json(text).unwrap();
        assert_eq!(f.ambient.shape(), (1, 2));
        assert_eq!(f.build_tro(Tolerances::default()).unwrap().dim(), 1);
        assert!(f.build_algebra(Tolerances::default()).is_err());
    }

    #[test]
    fn shape_errors_and_junk() {
        let text = r#"{"ambient": 3, "generators": [{"rows": 2, "cols": 2,
            "entries": [[0,0],[1,0],[0,0],[0,0]]}]}"#;
        assert!(matches!(Fixture::from_json(text), Err(Error::ShapeMismatch { .. })));
        assert!(Fixture::from_json("{").is_err());
        assert!(Fixture::from_json(r#"{"ambient": 2}"#).is_err());
    }

    #[test]
    fn roundtrip_is_bit_exact() {
        let p = crate::planted::planted_algebra(
            &[AlgebraBlock { size: 2, multiplicity: 1 }],
            1,
            3,
        )
        .unwrap();
        let f = Fixture::from_planted_algebra(&p);
        let back = Fixture::from_json(&f.to_json()).unwrap();
        assert_eq!(back.generators, f.generators);
        assert_eq!(back.ground_truth, f.ground_truth);
        assert_eq!(back.to_json(), f.to_json());
    }
}
