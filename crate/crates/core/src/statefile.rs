//! JSON state files: either sixteen row-major `[re, im]` pairs,
//! `{"matrix": [[re, im], ...]}`, or the parameter form
//! `{"x": [..3], "y": [..3], "c": [..3]}`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::operator::Mat4;
use crate::pauli::PauliDecomposition;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixForm {
    pub matrix: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterForm {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub c: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateFile {
    Matrix(MatrixForm),
    Parameters(ParameterForm),
}

impl StateFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises")
    }

    /// Raw operator described by the file; no validity checks beyond shape.
    pub fn to_matrix<T: Scalar>(&self) -> Result<Mat4<T>> {
        match self {
            Self::Matrix(MatrixForm { matrix }) => {
                if matrix.len() != 16 {
                    return Err(Error::Parse(format!(
                        "matrix needs 16 entries, found {}",
                        matrix.len()
                    )));
                }
                let mut m = Mat4::zeros();
                for (k, [re, im]) in matrix.iter().enumerate() {
                    if !(re.is_finite() && im.is_finite()) {
                        return Err(Error::Parse(format!("non-finite entry at index {k}")));
                    }
                    m[(k / 4, k % 4)] = Complex::new(T::lit(*re), T::lit(*im));
                }
                Ok(m)
            }
            Self::Parameters(ParameterForm { x, y, c }) => {
                if x.iter().chain(y).chain(c).any(|v| !v.is_finite()) {
                    return Err(Error::Parse("non-finite parameter".into()));
                }
                let lift = |v: &[f64; 3]| v.map(T::lit);
                Ok(PauliDecomposition::diagonal(lift(x), lift(y), lift(c)).compose())
            }
        }
    }

    pub fn to_state<T: Scalar>(&self) -> Result<DensityMatrix<T>> {
        DensityMatrix::new(self.to_matrix()?)
    }

    /// Matrix form of a state.
    pub fn from_state<T: Scalar>(rho: &DensityMatrix<T>) -> Self {
        let m = rho.matrix();
        let matrix = (0..16)
            .map(|k| {
                let z = m[(k / 4, k % 4)];
                [z.re.as_f64(), z.im.as_f64()]
            })
            .collect();
        Self::Matrix(MatrixForm { matrix })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::make_werner;

    #[test]
    fn parameter_form() {
        let f = StateFile::parse(r#"{"x":[0,0,0],"y":[0,0,0],"c":[-0.5,-0.5,-0.5]}"#).unwrap();
        let rho: DensityMatrix<f64> = f.to_state().unwrap();
        assert!(
            rho.matrix()
                .max_abs_diff(make_werner(0.5).unwrap().matrix())
                < 1e-15
        );
    }

    #[test]
    fn matrix_form_round_trip() {
        let w = make_werner(0.3f64).unwrap();
        let text = StateFile::from_state(&w).to_json();
        let back: DensityMatrix<f64> = StateFile::parse(&text).unwrap().to_state().unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(StateFile::parse("{"), Err(Error::Parse(_))));
        assert!(matches!(
            StateFile::parse(r#"{"x":[0,0],"y":[0,0,0],"c":[0,0,0]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            StateFile::parse(r#"{"matrix":[[1,0]],"x":[0,0,0]}"#),
            Err(Error::Parse(_))
        ));
        let short = StateFile::parse(r#"{"matrix":[[1,0],[0,0]]}"#).unwrap();
        assert!(matches!(short.to_state::<f64>(), Err(Error::Parse(_))));
        let bad = StateFile::parse(r#"{"x":[0,0,0],"y":[0,0,0],"c":[1,1,1]}"#).unwrap();
        assert!(matches!(
            bad.to_state::<f64>(),
            Err(Error::NotPositive { .. })
        ));
    }
}
