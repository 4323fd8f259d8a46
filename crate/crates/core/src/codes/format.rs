//! Versioned JSON documents for schemes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::Matrix;

use super::scheme::{CodeSpec, LinearScheme, Params, Rational};

pub const FORMAT_VERSION: u32 = 1;

/// Always `"p/r"`, integers included (`"2/1"`).
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"p/r"` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Format(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SpecDoc {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "N_B")]
    pub nb: usize,
    #[serde(rename = "K_B")]
    pub kb: usize,
    pub q: u32,
    pub kappa: usize,
    pub lambda0: String,
    #[serde(rename = "lambdaB")]
    pub lambda_b: String,
    #[serde(rename = "L")]
    pub l: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct MatricesDoc {
    #[serde(rename = "A")]
    pub a: Vec<Vec<u32>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<u32>>,
    #[serde(rename = "Z")]
    pub z: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SchemeDoc {
    #[serde(alias = "version")]
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    pub spec: SpecDoc,
    pub matrices: MatricesDoc,
}

impl From<&CodeSpec> for SpecDoc {
    fn from(s: &CodeSpec) -> Self {
        SpecDoc {
            n: s.params.n,
            k: s.params.k,
            nb: s.params.nb,
            kb: s.params.kb,
            q: s.q,
            kappa: s.kappa,
            lambda0: rational_to_string(&s.lambda0),
            lambda_b: rational_to_string(&s.lambda_b),
            l: s.l,
        }
    }
}

impl SpecDoc {
    pub fn to_spec(&self) -> Result<CodeSpec> {
        let spec = CodeSpec {
            params: Params::new(self.n, self.k, self.nb, self.kb)?,
            q: self.q,
            kappa: self.kappa,
            lambda0: parse_rational(&self.lambda0)?,
            lambda_b: parse_rational(&self.lambda_b)?,
            l: self.l,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<&LinearScheme> for SchemeDoc {
    fn from(s: &LinearScheme) -> Self {
        SchemeDoc {
            format_version: FORMAT_VERSION,
            construction: s.construction().map(str::to_string),
            spec: SpecDoc::from(&s.spec),
            matrices: MatricesDoc {
                a: s.a().to_rows(),
                b: s.b().to_rows(),
                z: s.z().to_rows(),
            },
        }
    }
}

impl SchemeDoc {
    pub fn to_scheme(&self) -> Result<LinearScheme> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported version {}", self.format_version)));
        }
        let spec = self.spec.to_spec()?;
        let field = Field::new(spec.q as u64)?;
        let cols = spec.storage_len();
        let m = |rows: &[Vec<u32>]| Matrix::from_rows_with_cols(&field, rows, cols);
        let scheme = LinearScheme::new(
            spec,
            m(&self.matrices.a)?,
            m(&self.matrices.b)?,
            m(&self.matrices.z)?,
        )?;
        Ok(match &self.construction {
            Some(c) => scheme.with_construction(c),
            None => scheme,
        })
    }
}

impl LinearScheme {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SchemeDoc::from(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: SchemeDoc = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        doc.to_scheme()
    }
}
