use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;

/// Exact rate values.
pub type Rational = num_rational::Ratio<i64>;

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Node counts `(N, K, N_B, K_B)`: `N` storage nodes of which any `K`
/// survive, `N_B` shared-randomness nodes of which any `K_B` survive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    pub n: usize,
    pub k: usize,
    pub nb: usize,
    pub kb: usize,
}

impl Params {
    pub fn new(n: usize, k: usize, nb: usize, kb: usize) -> Result<Self> {
        let p = Params { n, k, nb, kb };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k > self.n {
            return Err(Error::InvalidParams(format!("K={} exceeds N={}", self.k, self.n)));
        }
        if self.kb > self.nb {
            return Err(Error::InvalidParams(format!("K_B={} exceeds N_B={}", self.kb, self.nb)));
        }
        Ok(())
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.k, self.nb, self.kb)
    }
}

/// Scheme parameters. Sizes are in dits: the message carries `kappa*lambda0`
/// dits, each SR node `kappa*lambdaB`, each storage node `kappa`, and the
/// encoder draws `l` local random dits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub params: Params,
    pub q: u32,
    pub kappa: usize,
    pub lambda0: Rational,
    pub lambda_b: Rational,
    pub l: usize,
}

fn scaled(kappa: usize, r: Rational, what: &str) -> Result<usize> {
    let v = r * Rational::from_integer(kappa as i64);
    if r < Rational::zero() || !v.is_integer() {
        return Err(Error::InvalidScheme(format!(
            "kappa*{what} = {kappa}*{r} is not a nonnegative integer"
        )));
    }
    Ok(v.to_integer().to_usize().expect("nonnegative"))
}

impl CodeSpec {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.kappa == 0 {
            return Err(Error::InvalidScheme("kappa must be at least 1".into()));
        }
        scaled(self.kappa, self.lambda0, "lambda0")?;
        scaled(self.kappa, self.lambda_b, "lambdaB")?;
        Ok(())
    }

    /// `kappa * lambda0`.
    pub fn message_len(&self) -> usize {
        scaled(self.kappa, self.lambda0, "lambda0").expect("validated spec")
    }

    /// `kappa * lambdaB`, the size of one SR node.
    pub fn sr_node_len(&self) -> usize {
        scaled(self.kappa, self.lambda_b, "lambdaB").expect("validated spec")
    }

    pub fn sr_len(&self) -> usize {
        self.params.nb * self.sr_node_len()
    }

    /// Length of the full input `x = (y0, b, z)`.
    pub fn input_len(&self) -> usize {
        self.message_len() + self.sr_len() + self.l
    }

    pub fn storage_len(&self) -> usize {
        self.params.n * self.kappa
    }

    pub fn rate(&self) -> (Rational, Rational) {
        (self.lambda0, self.lambda_b)
    }

    /// Input coordinates of SR node `i` (0-based) inside `x`.
    pub fn sr_range(&self, i: usize) -> std::ops::Range<usize> {
        let s = self.message_len() + i * self.sr_node_len();
        s..s + self.sr_node_len()
    }

    /// Codeword coordinates of storage node `n` (0-based).
    pub fn node_range(&self, n: usize) -> std::ops::Range<usize> {
        n * self.kappa..(n + 1) * self.kappa
    }
}

/// A linear scheme `Y = y0*A + b*B + z*Z`, each matrix having `N*kappa`
/// columns with column block `n` feeding storage node `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearScheme {
    pub spec: CodeSpec,
    field: Field,
    a: Matrix,
    b: Matrix,
    z: Matrix,
    construction: Option<String>,
}

/// One encoder input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingInput {
    pub y0: Vec<Elem>,
    pub b: Vec<Elem>,
    pub z: Vec<Elem>,
}

impl EncodingInput {
    pub fn flat(&self) -> Vec<Elem> {
        let mut x = Vec::with_capacity(self.y0.len() + self.b.len() + self.z.len());
        x.extend_from_slice(&self.y0);
        x.extend_from_slice(&self.b);
        x.extend_from_slice(&self.z);
        x
    }
}

/// `N` blocks of `kappa` dits.
pub type StorageWord = Vec<Vec<Elem>>;

impl LinearScheme {
    pub fn new(spec: CodeSpec, a: Matrix, b: Matrix, z: Matrix) -> Result<Self> {
        spec.validate()?;
        let field = a.field().clone();
        if field.order() != spec.q {
            return Err(Error::InvalidScheme(format!(
                "matrices over F_{} for a spec with q={}",
                field.order(),
                spec.q
            )));
        }
        if b.field() != &field || z.field() != &field {
            return Err(Error::FieldMismatch);
        }
        let cols = spec.storage_len();
        for (name, m, rows) in [
            ("A", &a, spec.message_len()),
            ("B", &b, spec.sr_len()),
            ("Z", &z, spec.l),
        ] {
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::InvalidScheme(format!(
                    "{name} is {}x{}, expected {rows}x{cols}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(LinearScheme {
            spec,
            field,
            a,
            b,
            z,
            construction: None,
        })
    }

    /// Splits a stacked generator `[A; B; Z]` by the `CodeSpec` sizes.
    pub fn from_generator(spec: CodeSpec, g: &Matrix) -> Result<Self> {
        spec.validate()?;
        if g.rows() != spec.input_len() {
            return Err(Error::InvalidScheme(format!(
                "generator has {} rows, spec needs {}",
                g.rows(),
                spec.input_len()
            )));
        }
        let (m0, sb) = (spec.message_len(), spec.sr_len());
        let a = g.row_block(0, m0);
        let b = g.row_block(m0, sb);
        let z = g.row_block(m0 + sb, spec.l);
        Self::new(spec, a, b, z)
    }

    pub fn with_construction(mut self, name: &str) -> Self {
        self.construction = Some(name.to_string());
        self
    }

    pub fn construction(&self) -> Option<&str> {
        self.construction.as_deref()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn params(&self) -> Params {
        self.spec.params
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn z(&self) -> &Matrix {
        &self.z
    }

    /// `[A; B; Z]`, mapping the flat input `x` to the flat codeword.
    pub fn generator(&self) -> Matrix {
        Matrix::vstack(&[&self.a, &self.b, &self.z]).expect("shapes checked at construction")
    }

    /// Codeword as one flat vector of `N*kappa` dits.
    pub fn encode_flat(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != self.spec.input_len() {
            return Err(Error::LengthMismatch(format!(
                "input has {} dits, scheme takes {}",
                x.len(),
                self.spec.input_len()
            )));
        }
        for &v in x {
            self.field.check(v)?;
        }
        self.generator().vec_mul(x)
    }

    pub fn encode(&self, input: &EncodingInput) -> Result<StorageWord> {
        let s = &self.spec;
        for (name, got, want) in [
            ("message", input.y0.len(), s.message_len()),
            ("shared randomness", input.b.len(), s.sr_len()),
            ("local randomness", input.z.len(), s.l),
        ] {
            if got != want {
                return Err(Error::LengthMismatch(format!("{name} has {got} dits, expected {want}")));
            }
        }
        let y = self.encode_flat(&input.flat())?;
        Ok(y.chunks(s.kappa).map(<[Elem]>::to_vec).collect())
    }
}
