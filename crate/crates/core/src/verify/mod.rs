//! Feasibility of linear schemes.
//!
//! A scheme is feasible when, for every erasure pattern, the surviving
//! storage and SR nodes determine the message (decodability), the erased
//! ones reveal nothing about it (security), and all storage nodes together
//! determine the shared randomness (SR recovery). For linear schemes with
//! uniform inputs each condition is a rank comparison.

mod audit;
mod decode;
mod oracle;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::codes::{LinearScheme, Params};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub use audit::{audit, audit_with_cap, count_patterns, AuditReport, PatternVerdict, DEFAULT_PATTERN_CAP};
pub use decode::{decode, PatternDecoder};
pub use oracle::{entropy_oracle, oracle_verdicts, EntropyOracle, OracleVerdicts, Var, DEFAULT_ORACLE_CAP};

/// Surviving storage nodes `𝒦` and SR nodes `𝒦_B`, 0-based and ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ErasurePattern {
    pub storage: Vec<usize>,
    pub sr: Vec<usize>,
}

impl ErasurePattern {
    pub fn new(params: Params, storage: &[usize], sr: &[usize]) -> Result<Self> {
        let check = |set: &[usize], size: usize, total: usize, what: &str| -> Result<Vec<usize>> {
            let v: Vec<usize> = set.iter().copied().sorted().dedup().collect();
            if v.len() != set.len() || v.len() != size || v.last().is_some_and(|&x| x >= total) {
                return Err(Error::PatternMismatch(format!(
                    "{what} set {set:?} must hold {size} distinct indices below {total}"
                )));
            }
            Ok(v)
        };
        Ok(ErasurePattern {
            storage: check(storage, params.k, params.n, "storage")?,
            sr: check(sr, params.kb, params.nb, "SR")?,
        })
    }

    /// Parses `"K=1,3;KB=1,2"` (1-based indices).
    pub fn parse(params: Params, s: &str) -> Result<Self> {
        let mut storage = None;
        let mut sr = None;
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, list) = part
                .split_once('=')
                .ok_or_else(|| Error::PatternMismatch(format!("expected KEY=list in {part:?}")))?;
            let idx: Vec<usize> = list
                .split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| match x.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(Error::PatternMismatch(format!("bad index {x:?}"))),
                })
                .collect::<Result<_>>()?;
            match key.trim() {
                "K" => storage = Some(idx),
                "KB" => sr = Some(idx),
                other => return Err(Error::PatternMismatch(format!("unknown key {other:?}"))),
            }
        }
        Self::new(params, &storage.unwrap_or_default(), &sr.unwrap_or_default())
    }

    pub fn erased_storage(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|i| !self.storage.contains(i)).collect()
    }

    pub fn erased_sr(&self, nb: usize) -> Vec<usize> {
        (0..nb).filter(|i| !self.sr.contains(i)).collect()
    }

    /// Every pattern in lexicographic `(𝒦, 𝒦_B)` order.
    pub fn all(params: Params) -> impl Iterator<Item = ErasurePattern> {
        let sr_sets: Vec<Vec<usize>> = (0..params.nb).combinations(params.kb).collect();
        (0..params.n)
            .combinations(params.k)
            .flat_map(move |s| {
                sr_sets.clone().into_iter().map(move |b| ErasurePattern {
                    storage: s.clone(),
                    sr: b,
                })
            })
    }

    pub fn check_fits(&self, params: Params) -> Result<()> {
        Self::new(params, &self.storage, &self.sr).map(|_| ())
    }
}

impl std::fmt::Display for ErasurePattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let one = |v: &[usize]| v.iter().map(|x| (x + 1).to_string()).join(",");
        write!(f, "K={};KB={}", one(&self.storage), one(&self.sr))
    }
}

/// Generator columns of the listed storage nodes followed by identity
/// columns selecting the listed SR nodes from `x`.
pub(crate) fn view_matrix(
    scheme: &LinearScheme,
    g: &Matrix,
    nodes: &[usize],
    sr_nodes: &[usize],
) -> Matrix {
    let spec = &scheme.spec;
    let r = spec.input_len();
    let mut m = Matrix::zeros(scheme.field(), r, nodes.len() * spec.kappa + sr_nodes.len() * spec.sr_node_len());
    let mut c = 0;
    for &n in nodes {
        for col in spec.node_range(n) {
            for row in 0..r {
                m.set(row, c, g.get(row, col));
            }
            c += 1;
        }
    }
    for &i in sr_nodes {
        for row in spec.sr_range(i) {
            m.set(row, c, 1);
            c += 1;
        }
    }
    m
}

/// Map from `x` to the survivors' view `(Y_𝒦, b_{𝒦_B})`.
pub fn observation_matrix(scheme: &LinearScheme, pattern: &ErasurePattern) -> Result<Matrix> {
    pattern.check_fits(scheme.params())?;
    Ok(view_matrix(scheme, &scheme.generator(), &pattern.storage, &pattern.sr))
}

/// Map from `x` to the erased view `(Y_{𝒦^c}, b_{𝒦_B^c})`.
pub fn erased_matrix(scheme: &LinearScheme, pattern: &ErasurePattern) -> Result<Matrix> {
    pattern.check_fits(scheme.params())?;
    let p = scheme.params();
    Ok(view_matrix(
        scheme,
        &scheme.generator(),
        &pattern.erased_storage(p.n),
        &pattern.erased_sr(p.nb),
    ))
}

/// `rank([M | P]) == rank(M)` where `P` selects input rows `range`:
/// the selected inputs are linear functions of `x * M`.
fn determines(m: &Matrix, range: std::ops::Range<usize>) -> bool {
    let mut p = Matrix::zeros(m.field(), m.rows(), range.len());
    for (j, row) in range.enumerate() {
        p.set(row, j, 1);
    }
    let aug = Matrix::hstack(&[m, &p]).expect("same rows");
    aug.rank() == m.rank()
}

/// Row space of the message rows inside that of the `(b, z)` rows.
fn hides_message(m: &Matrix, m0: usize) -> bool {
    let bz = m.row_block(m0, m.rows() - m0);
    m.rank() == bz.rank()
}

pub(crate) fn decodable_with(scheme: &LinearScheme, g: &Matrix, p: &ErasurePattern) -> bool {
    let m = view_matrix(scheme, g, &p.storage, &p.sr);
    determines(&m, 0..scheme.spec.message_len())
}

pub(crate) fn secure_with(scheme: &LinearScheme, g: &Matrix, p: &ErasurePattern) -> bool {
    let pr = scheme.params();
    let m = view_matrix(scheme, g, &p.erased_storage(pr.n), &p.erased_sr(pr.nb));
    hides_message(&m, scheme.spec.message_len())
}

pub fn check_decodability(scheme: &LinearScheme, pattern: &ErasurePattern) -> Result<bool> {
    pattern.check_fits(scheme.params())?;
    Ok(decodable_with(scheme, &scheme.generator(), pattern))
}

pub fn check_security(scheme: &LinearScheme, pattern: &ErasurePattern) -> Result<bool> {
    pattern.check_fits(scheme.params())?;
    Ok(secure_with(scheme, &scheme.generator(), pattern))
}

pub fn check_sr_recovery(scheme: &LinearScheme) -> bool {
    let s = &scheme.spec;
    let m0 = s.message_len();
    determines(&scheme.generator(), m0..m0 + s.sr_len())
}
