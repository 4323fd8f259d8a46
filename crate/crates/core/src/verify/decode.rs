use crate::codes::LinearScheme;
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::linalg::Matrix;

use super::{observation_matrix, ErasurePattern};

/// Linear decoder for one erasure pattern.
///
/// With `M` the observation map, `D` solves `M D = P_a` so the message is
/// `obs * D`; the columns of `C` span the right kernel of `M`, and an
/// observation lies in the code's image exactly when `obs * C = 0`.
#[derive(Clone, Debug)]
pub struct PatternDecoder {
    pattern: ErasurePattern,
    d: Matrix,
    c: Matrix,
    obs_len: usize,
}

impl PatternDecoder {
    pub fn new(scheme: &LinearScheme, pattern: &ErasurePattern) -> Result<Self> {
        let m = observation_matrix(scheme, pattern)?;
        let m0 = scheme.spec.message_len();
        let mut p = Matrix::zeros(scheme.field(), m.rows(), m0);
        for i in 0..m0 {
            p.set(i, i, 1);
        }
        let d = m.solve_right(&p).map_err(|e| match e {
            Error::NoSolution => Error::Infeasible,
            other => other,
        })?;
        let c = m.right_kernel().transpose();
        Ok(PatternDecoder {
            pattern: pattern.clone(),
            d,
            c,
            obs_len: m.cols(),
        })
    }

    pub fn pattern(&self) -> &ErasurePattern {
        &self.pattern
    }

    /// `c x m0` matrix taking observations to the message.
    pub fn matrix(&self) -> &Matrix {
        &self.d
    }

    /// Observation is `(Y_𝒦, b_{𝒦_B})` flattened, nodes in ascending order.
    pub fn decode_flat(&self, obs: &[Elem]) -> Result<Vec<Elem>> {
        if obs.len() != self.obs_len {
            return Err(Error::LengthMismatch(format!(
                "observation has {} dits, pattern expects {}",
                obs.len(),
                self.obs_len
            )));
        }
        let f = self.d.field();
        for &v in obs {
            f.check(v)?;
        }
        if self.c.cols() > 0 && self.c.vec_mul(obs)?.iter().any(|&x| x != 0) {
            return Err(Error::InconsistentObservation);
        }
        self.d.vec_mul(obs)
    }

    pub fn decode(&self, nodes: &[Vec<Elem>], sr: &[Vec<Elem>]) -> Result<Vec<Elem>> {
        if nodes.len() != self.pattern.storage.len() || sr.len() != self.pattern.sr.len() {
            return Err(Error::LengthMismatch(format!(
                "{} storage and {} SR blocks for pattern {}",
                nodes.len(),
                sr.len(),
                self.pattern
            )));
        }
        let obs: Vec<Elem> = nodes.iter().chain(sr).flatten().copied().collect();
        self.decode_flat(&obs)
    }
}

/// Recovers `y0` from surviving storage blocks `Y_𝒦` and SR blocks
/// `b_{𝒦_B}`, both in ascending node order.
pub fn decode(
    scheme: &LinearScheme,
    pattern: &ErasurePattern,
    nodes: &[Vec<Elem>],
    sr: &[Vec<Elem>],
) -> Result<Vec<Elem>> {
    PatternDecoder::new(scheme, pattern)?.decode(nodes, sr)
}
