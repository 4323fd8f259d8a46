use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{rational_to_string, LinearScheme, Params, FORMAT_VERSION};
use crate::error::{Error, Result};

use super::{decodable_with, secure_with, check_sr_recovery, ErasurePattern};

pub const DEFAULT_PATTERN_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternVerdict {
    pub pattern: ErasurePattern,
    pub decodable: bool,
    pub secure: bool,
}

impl PatternVerdict {
    pub fn pass(&self) -> bool {
        self.decodable && self.secure
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub params: Params,
    /// Lexicographic `(𝒦, 𝒦_B)` order.
    pub patterns: Vec<PatternVerdict>,
    pub sr_recovery: bool,
    pub pass: bool,
}

impl AuditReport {
    pub fn failing(&self) -> impl Iterator<Item = &PatternVerdict> {
        self.patterns.iter().filter(|v| !v.pass())
    }

    pub fn to_json(&self, scheme: &LinearScheme) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry {
            storage: Vec<usize>,
            sr: Vec<usize>,
            decodable: bool,
            secure: bool,
        }
        let entries: Vec<Entry> = self
            .patterns
            .iter()
            .map(|v| Entry {
                storage: v.pattern.storage.iter().map(|x| x + 1).collect(),
                sr: v.pattern.sr.iter().map(|x| x + 1).collect(),
                decodable: v.decodable,
                secure: v.secure,
            })
            .collect();
        let s = &scheme.spec;
        serde_json::json!({
            "format_version": FORMAT_VERSION,
            "params": {"N": s.params.n, "K": s.params.k, "N_B": s.params.nb, "K_B": s.params.kb},
            "q": s.q,
            "kappa": s.kappa,
            "lambda0": rational_to_string(&s.lambda0),
            "lambdaB": rational_to_string(&s.lambda_b),
            "patterns": entries,
            "summary": {
                "pattern_count": self.patterns.len(),
                "decodable": self.patterns.iter().filter(|v| v.decodable).count(),
                "secure": self.patterns.iter().filter(|v| v.secure).count(),
                "sr_recovery": self.sr_recovery,
                "pass": self.pass,
            }
        })
    }
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub fn count_patterns(p: Params) -> u128 {
    binom(p.n, p.k) * binom(p.nb, p.kb)
}

pub fn audit(scheme: &LinearScheme) -> Result<AuditReport> {
    audit_with_cap(scheme, DEFAULT_PATTERN_CAP)
}

pub fn audit_with_cap(scheme: &LinearScheme, cap: u128) -> Result<AuditReport> {
    let params = scheme.params();
    let count = count_patterns(params);
    if count > cap {
        return Err(Error::TooManyPatterns { count, cap });
    }
    let g = scheme.generator();
    let patterns: Vec<ErasurePattern> = ErasurePattern::all(params).collect();
    let verdicts: Vec<PatternVerdict> = patterns
        .into_par_iter()
        .map(|p| PatternVerdict {
            decodable: decodable_with(scheme, &g, &p),
            secure: secure_with(scheme, &g, &p),
            pattern: p,
        })
        .collect();
    let sr_recovery = check_sr_recovery(scheme);
    let pass = sr_recovery && verdicts.iter().all(PatternVerdict::pass);
    Ok(AuditReport {
        params,
        patterns: verdicts,
        sr_recovery,
        pass,
    })
}
