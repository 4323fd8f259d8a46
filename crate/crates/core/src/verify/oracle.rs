//! Brute-force entropies by enumerating every input.
//!
//! Independent of the rank criteria: the joint distribution of the requested
//! variables is tabulated over all `q^r` inputs `x = (y0, b, z)`, and each
//! entropy is read off the resulting histogram.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;

use crate::codes::{LinearScheme, Rational};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::linalg::Matrix;

use super::ErasurePattern;

/// Default enumeration cap on `q^r`.
pub const DEFAULT_ORACLE_CAP: u64 = 1 << 22;

/// A random variable of the scheme. Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Message,
    Node(usize),
    Sr(usize),
    Local,
}

pub struct EntropyOracle<'a> {
    scheme: &'a LinearScheme,
    cap: u64,
}

#[derive(Hash, PartialEq, Eq)]
enum Key {
    Packed(u128),
    Wide(Box<[Elem]>),
}

/// Oracle verdicts for every pattern plus SR recovery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdicts {
    /// `(pattern, H(Y0 | survivors) == 0, I(Y0; erased) == 0)`.
    pub patterns: Vec<(ErasurePattern, bool, bool)>,
    /// `H(B | Y_1..Y_N) == 0`.
    pub sr_recovery: bool,
}

impl<'a> EntropyOracle<'a> {
    pub fn new(scheme: &'a LinearScheme) -> Self {
        Self::with_cap(scheme, DEFAULT_ORACLE_CAP)
    }

    pub fn with_cap(scheme: &'a LinearScheme, cap: u64) -> Self {
        EntropyOracle { scheme, cap }
    }

    fn columns(&self, var: Var) -> Result<Vec<usize>> {
        // columns of [G | I_r]
        let s = &self.scheme.spec;
        let ncols = s.storage_len();
        let m0 = s.message_len();
        let bad = |what: &str| Err(Error::PatternMismatch(format!("no {what} in this scheme")));
        Ok(match var {
            Var::Message => (ncols..ncols + m0).collect(),
            Var::Node(n) if n < s.params.n => s.node_range(n).collect(),
            Var::Node(_) => return bad("such storage node"),
            Var::Sr(i) if i < s.params.nb => s.sr_range(i).map(|c| ncols + c).collect(),
            Var::Sr(_) => return bad("such SR node"),
            Var::Local => (ncols + m0 + s.sr_len()..ncols + s.input_len()).collect(),
        })
    }

    /// Joint entropies of each set of variables, in q-ary units, from a
    /// single enumeration pass.
    pub fn entropies(&self, sets: &[Vec<Var>]) -> Result<Vec<Rational>> {
        let s = &self.scheme.spec;
        let field = self.scheme.field();
        let q = field.order() as u64;
        let r = s.input_len();
        let total = (0..r).try_fold(1u64, |acc, _| acc.checked_mul(q).filter(|&t| t <= self.cap));
        let Some(total) = total else {
            return Err(Error::TooLarge { exponent: r });
        };

        // distinct columns needed, and each set's positions among them
        let mut set_cols: Vec<Vec<usize>> = Vec::with_capacity(sets.len());
        for set in sets {
            let mut cols = BTreeSet::new();
            for &v in set {
                cols.extend(self.columns(v)?);
            }
            set_cols.push(cols.into_iter().collect());
        }
        let used: Vec<usize> = set_cols.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let pos: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let set_pos: Vec<Vec<usize>> = set_cols.iter().map(|c| c.iter().map(|x| pos[x]).collect()).collect();

        let full = Matrix::hstack(&[&self.scheme.generator(), &Matrix::identity(field, r)])?;
        let phi = full.select_cols(&used)?;
        let bits = 32 - (q as u32 - 1).leading_zeros();
        let bits = bits.max(1) as usize;

        let mut hists: Vec<HashMap<Key, u64>> = (0..sets.len()).map(|_| HashMap::new()).collect();
        let mut x = vec![0 as Elem; r];
        let mut y = vec![0 as Elem; used.len()];
        let mut scratch = Vec::new();
        for step in 0..total {
            for (h, positions) in hists.iter_mut().zip(&set_pos) {
                let key = if positions.len() * bits <= 128 {
                    Key::Packed(
                        positions
                            .iter()
                            .fold(0u128, |acc, &p| (acc << bits) | y[p] as u128),
                    )
                } else {
                    scratch.clear();
                    scratch.extend(positions.iter().map(|&p| y[p]));
                    Key::Wide(scratch.clone().into_boxed_slice())
                };
                *h.entry(key).or_insert(0) += 1;
            }
            if step + 1 == total {
                break;
            }
            // odometer increment with incremental update of y = x * phi
            #[allow(clippy::needless_range_loop)]
            for i in 0..r {
                let old = x[i];
                let new = if old + 1 == q as Elem { 0 } else { old + 1 };
                x[i] = new;
                let delta = field.sub(new, old);
                field.sub_scaled(&mut y, field.neg(delta), phi.row(i));
                if new != 0 {
                    break;
                }
            }
        }

        hists
            .into_iter()
            .map(|h| {
                let support = h.len() as u64;
                let first = *h.values().next().expect("at least one outcome");
                if h.values().any(|&c| c != first) {
                    return Err(Error::NonUniform);
                }
                let mut e = 0i64;
                let mut v = 1u64;
                while v < support {
                    v *= q;
                    e += 1;
                }
                if v != support {
                    return Err(Error::NonUniform);
                }
                Ok(Rational::from_integer(e))
            })
            .collect()
    }

    pub fn entropy(&self, vars: &[Var]) -> Result<Rational> {
        Ok(self.entropies(&[vars.to_vec()])?[0])
    }

    /// `H(target | cond) = H(target, cond) - H(cond)`.
    pub fn conditional_entropy(&self, target: &[Var], cond: &[Var]) -> Result<Rational> {
        let joint: Vec<Var> = target.iter().chain(cond).copied().collect();
        let h = self.entropies(&[joint, cond.to_vec()])?;
        Ok(h[0] - h[1])
    }

    /// `I(a; b) = H(a) + H(b) - H(a, b)`.
    pub fn mutual_information(&self, a: &[Var], b: &[Var]) -> Result<Rational> {
        let joint: Vec<Var> = a.iter().chain(b).copied().collect();
        let h = self.entropies(&[a.to_vec(), b.to_vec(), joint])?;
        Ok(h[0] + h[1] - h[2])
    }
}

/// `H(target | cond)` with the default cap.
pub fn entropy_oracle(scheme: &LinearScheme, target: &[Var], cond: &[Var]) -> Result<Rational> {
    EntropyOracle::new(scheme).conditional_entropy(target, cond)
}

fn survivors(p: &ErasurePattern) -> Vec<Var> {
    p.storage.iter().map(|&n| Var::Node(n)).chain(p.sr.iter().map(|&i| Var::Sr(i))).collect()
}

fn erased(p: &ErasurePattern, n: usize, nb: usize) -> Vec<Var> {
    p.erased_storage(n)
        .into_iter()
        .map(Var::Node)
        .chain(p.erased_sr(nb).into_iter().map(Var::Sr))
        .collect()
}

/// Oracle verdicts for all patterns of `scheme` in one enumeration.
pub fn oracle_verdicts(scheme: &LinearScheme, cap: u64) -> Result<OracleVerdicts> {
    let pr = scheme.params();
    let patterns: Vec<ErasurePattern> = ErasurePattern::all(pr).collect();
    let with = |mut v: Vec<Var>, extra: &[Var]| {
        v.extend_from_slice(extra);
        v
    };
    let mut sets = vec![vec![Var::Message]];
    for p in &patterns {
        let obs = survivors(p);
        let era = erased(p, pr.n, pr.nb);
        sets.push(with(obs.clone(), &[Var::Message]));
        sets.push(obs);
        sets.push(with(era.clone(), &[Var::Message]));
        sets.push(era);
    }
    let nodes: Vec<Var> = (0..pr.n).map(Var::Node).collect();
    let srs: Vec<Var> = (0..pr.nb).map(Var::Sr).collect();
    sets.push(with(nodes.clone(), &srs));
    sets.push(nodes);
    let h = EntropyOracle::with_cap(scheme, cap).entropies(&sets)?;
    let h_msg = h[0];
    let verdicts = patterns
        .into_iter()
        .enumerate()
        .map(|(i, p)| {
            let b = 1 + 4 * i;
            let decodable = (h[b] - h[b + 1]).is_zero();
            // I(Y0; E) = H(Y0) + H(E) - H(Y0, E)
            let secure = (h_msg + h[b + 3] - h[b + 2]).is_zero();
            (p, decodable, secure)
        })
        .collect();
    let n = h.len();
    Ok(OracleVerdicts {
        patterns: verdicts,
        sr_recovery: (h[n - 2] - h[n - 1]).is_zero(),
    })
}
