//! File formats: the JSON matrix payload and the sweep CSV layout.

use std::io::Write;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize, Serializer};

use crate::generators::sweep::EnsembleRecord;
use crate::hermitian::{validate_hermitian, HermitianOperator};
use crate::{Error, Result, C64};

/// Hermiticity tolerance applied when decoding a [`MatrixFile`].
pub const MATRIX_FILE_TOLERANCE: f64 = 1e-10;

/// Writes finite values as numbers and `±inf`/`nan` as strings, since JSON
/// has no literal for them.
pub fn float_or_inf<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if v.is_nan() {
        s.serialize_str("nan")
    } else if *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

/// Dense `n x n` matrix, row-major, with an optional imaginary part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub re: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<f64>>,
}

impl MatrixFile {
    /// Omits `im` when every imaginary part is exactly zero.
    pub fn encode(op: &HermitianOperator) -> Self {
        let n = op.dim();
        let m = op.matrix();
        let mut re = Vec::with_capacity(n * n);
        let mut im = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                re.push(m[(i, j)].re);
                im.push(m[(i, j)].im);
            }
        }
        let im = im.iter().any(|&v| v != 0.0).then_some(im);
        Self { n, re, im }
    }

    pub fn decode(&self) -> Result<HermitianOperator> {
        self.decode_with(MATRIX_FILE_TOLERANCE)
    }

    /// Decodes with an explicit hermiticity tolerance.
    pub fn decode_with(&self, tol: f64) -> Result<HermitianOperator> {
        let n2 = self.n * self.n;
        if self.n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if self.re.len() != n2 {
            return Err(Error::Format(format!("re: expected {n2} entries, found {}", self.re.len())));
        }
        if let Some(im) = &self.im {
            if im.len() != n2 {
                return Err(Error::Format(format!("im: expected {n2} entries, found {}", im.len())));
            }
        }
        let m = DMatrix::from_fn(self.n, self.n, |i, j| {
            let k = i * self.n + j;
            C64::new(self.re[k], self.im.as_ref().map_or(0.0, |im| im[k]))
        });
        validate_hermitian(&m, tol)
    }

    pub fn from_json(text: &str) -> Result<HermitianOperator> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        file.decode()
    }

    pub fn to_json(op: &HermitianOperator) -> String {
        serde_json::to_string(&Self::encode(op)).expect("matrix payload serializes")
    }
}

pub const SWEEP_HEADER: [&str; 19] = [
    "seed",
    "trial",
    "n",
    "disposition",
    "d",
    "D",
    "x",
    "offdiag",
    "theta_exact",
    "bound_sin2theta",
    "margin_sin2theta",
    "bound_generic_pi",
    "margin_generic_pi",
    "bound_tan2theta",
    "margin_tan2theta",
    "bound_tantheta",
    "margin_tantheta",
    "dist_omega_Omega",
    "enclosures_pass",
];

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes the sweep table. Cells of inapplicable bounds, and every numeric
/// cell of a record whose instance failed, are left empty.
pub fn write_sweep_csv<W: Write>(records: &[EnsembleRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io_err = |e: csv::Error| Error::Format(e.to_string());
    w.write_record(SWEEP_HEADER).map_err(io_err)?;
    for r in records {
        let o = r.outcome.as_ref();
        let row = [
            r.seed.to_string(),
            r.trial.to_string(),
            r.n.to_string(),
            r.disposition.to_string(),
            cell(o.map(|o| o.d)),
            cell(o.and_then(|o| o.gap_length)),
            r.x.to_string(),
            r.offdiagonal.to_string(),
            cell(o.map(|o| o.theta_exact)),
            cell(o.and_then(|o| o.sin2theta.bound)),
            cell(o.and_then(|o| o.sin2theta.margin)),
            cell(o.and_then(|o| o.generic_pi.bound)),
            cell(o.and_then(|o| o.generic_pi.margin)),
            cell(o.and_then(|o| o.tan2theta.bound)),
            cell(o.and_then(|o| o.tan2theta.margin)),
            cell(o.and_then(|o| o.tantheta.bound)),
            cell(o.and_then(|o| o.tantheta.margin)),
            cell(o.map(|o| o.dist_omega_big_omega)),
            o.map(|o| o.enclosures_pass.to_string()).unwrap_or_default(),
        ];
        w.write_record(&row).map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::Format(e.to_string()))?;
    Ok(())
}

pub fn sweep_csv_string(records: &[EnsembleRecord]) -> String {
    let mut buf = Vec::new();
    write_sweep_csv(records, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("csv output is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_matrix_round_trip_is_bit_exact() {
        let values = [0.1, 1.0 / 3.0, -2.5e-17, std::f64::consts::PI];
        let m = DMatrix::from_fn(2, 2, |i, j| values[i * 2 + j]);
        let m = (&m + m.transpose()) * 0.5;
        let op = HermitianOperator::from_real(&m).unwrap();
        let text = MatrixFile::to_json(&op);
        assert!(!text.contains("im"));
        let back = MatrixFile::from_json(&text).unwrap();
        assert_eq!(back, op);
    }

    #[test]
    fn complex_round_trip() {
        let file = MatrixFile {
            n: 2,
            re: vec![0.0, 1.0, 1.0, 2.0],
            im: Some(vec![0.0, 1.0, -1.0, 0.0]),
        };
        let op = file.decode().unwrap();
        assert_eq!(MatrixFile::encode(&op), file);
    }

    #[test]
    fn wrong_lengths_are_rejected() {
        let file = MatrixFile {
            n: 2,
            re: vec![0.0; 3],
            im: None,
        };
        assert!(matches!(file.decode(), Err(Error::Format(msg)) if msg.starts_with("re")));
        let file = MatrixFile {
            n: 2,
            re: vec![0.0; 4],
            im: Some(vec![0.0; 5]),
        };
        assert!(matches!(file.decode(), Err(Error::Format(msg)) if msg.starts_with("im")));
    }

    #[test]
    fn non_hermitian_payload_is_rejected() {
        let err = MatrixFile::from_json(r#"{"n":2,"re":[0,1,0,0]}"#).unwrap_err();
        assert!(err.to_string().starts_with("NotHermitian"));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(MatrixFile::from_json(r#"{"n":1,"re":[0],"extra":1}"#).is_err());
    }

    #[test]
    fn infinities_become_strings() {
        #[derive(Serialize)]
        struct W(#[serde(serialize_with = "float_or_inf")] f64);
        assert_eq!(serde_json::to_string(&W(f64::INFINITY)).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&W(f64::NEG_INFINITY)).unwrap(), "\"-inf\"");
        assert_eq!(serde_json::to_string(&W(0.5)).unwrap(), "0.5");
    }
}
