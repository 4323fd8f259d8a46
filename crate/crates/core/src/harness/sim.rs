use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{rational_to_string, LinearScheme, FORMAT_VERSION};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::verify::{count_patterns, ErasurePattern, PatternDecoder, DEFAULT_PATTERN_CAP};

use super::chunk::{chunk_payload, unchunk_payload};

/// Diagnostics kept in a report; further failures are only counted.
pub const MAX_FAILURE_RECORDS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErasurePolicy {
    /// Every pattern on every trial.
    Exhaustive,
    /// One uniformly drawn pattern per trial.
    Random,
}

impl std::str::FromStr for ErasurePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(ErasurePolicy::Exhaustive),
            "random" => Ok(ErasurePolicy::Random),
            other => Err(Error::InvalidParams(format!("unknown policy {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub scheme: LinearScheme,
    pub payload: Vec<u8>,
    pub trials: usize,
    pub policy: ErasurePolicy,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternStats {
    /// 1-based.
    pub storage: Vec<usize>,
    pub sr: Vec<usize>,
    pub attempts: u64,
    pub successes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: usize,
    /// `K=..;KB=..`, 1-based.
    pub pattern: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SrLogEntry {
    pub trial: usize,
    /// SR dits of the first chunk.
    pub b: Vec<Elem>,
    /// Recovered from all storage nodes and equal to `b`.
    pub recovered: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Throughput {
    pub chunks_per_trial: usize,
    pub dits_stored_per_trial: usize,
    pub decodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimReport {
    pub format_version: u32,
    pub construction: Option<String>,
    pub params: [usize; 4],
    pub q: u32,
    pub lambda0: String,
    #[serde(rename = "lambdaB")]
    pub lambda_b: String,
    pub policy: ErasurePolicy,
    pub seed: u64,
    pub payload_bytes: usize,
    pub trials: usize,
    pub attempts: u64,
    pub successes: u64,
    pub patterns: Vec<PatternStats>,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub sr_log: Vec<SrLogEntry>,
    pub throughput: Throughput,
}

impl SimReport {
    /// Every attempt decoded the payload byte for byte.
    pub fn all_recovered(&self) -> bool {
        self.failure_count == 0 && self.successes == self.attempts
    }

    pub fn failing_patterns(&self) -> impl Iterator<Item = &PatternStats> {
        self.patterns.iter().filter(|p| p.successes < p.attempts)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct TrialOutcome {
    /// `(pattern index, error)` per attempt.
    attempts: Vec<(usize, Option<String>)>,
    sr: SrLogEntry,
}

/// Runs `config.trials` independent trials. Trial `t` draws its SR and
/// local randomness from the seeded stream `t`, so results do not depend on
/// scheduling.
pub fn run_sim(config: &SimConfig) -> Result<SimReport> {
    let scheme = &config.scheme;
    let spec = &scheme.spec;
    let params = scheme.params();
    let count = count_patterns(params);
    if count > DEFAULT_PATTERN_CAP {
        return Err(Error::TooManyPatterns { count, cap: DEFAULT_PATTERN_CAP });
    }
    let patterns: Vec<ErasurePattern> = ErasurePattern::all(params).collect();
    let decoders: Vec<std::result::Result<PatternDecoder, String>> = patterns
        .iter()
        .map(|p| PatternDecoder::new(scheme, p).map_err(|e| e.to_string()))
        .collect();
    let chunks = if config.trials == 0 {
        Vec::new()
    } else {
        chunk_payload(&config.payload, scheme)?
    };
    let g = scheme.generator();
    let q = spec.q;
    let m0 = spec.message_len();
    let sr_len = spec.sr_len();
    let rand_len = sr_len + spec.l;

    let outcomes: Vec<TrialOutcome> = (0..config.trials)
        .into_par_iter()
        .map(|t| -> Result<TrialOutcome> {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(t as u64);
            let mut words = Vec::with_capacity(chunks.len());
            let mut inputs = Vec::with_capacity(chunks.len());
            for c in &chunks {
                let mut x = c.clone();
                x.extend((0..rand_len).map(|_| rng.random_range(0..q)));
                words.push(g.vec_mul(&x)?);
                inputs.push(x);
            }
            let chosen: Vec<usize> = match config.policy {
                ErasurePolicy::Exhaustive => (0..patterns.len()).collect(),
                ErasurePolicy::Random => vec![rng.random_range(0..patterns.len())],
            };
            let attempts = chosen
                .into_iter()
                .map(|pi| {
                    let err = match &decoders[pi] {
                        Err(e) => Some(format!("no decoder: {e}")),
                        Ok(d) => attempt(scheme, d, &patterns[pi], &words, &inputs, &config.payload),
                    };
                    (pi, err)
                })
                .collect();
            let sr = match inputs.first() {
                Some(x) => SrLogEntry {
                    trial: t,
                    b: x[m0..m0 + sr_len].to_vec(),
                    recovered: g
                        .solve(&words[0])
                        .is_ok_and(|x2| x2[m0..m0 + sr_len] == x[m0..m0 + sr_len]),
                },
                None => SrLogEntry { trial: t, b: Vec::new(), recovered: true },
            };
            Ok(TrialOutcome { attempts, sr })
        })
        .collect::<Result<_>>()?;

    let mut stats: Vec<PatternStats> = patterns
        .iter()
        .map(|p| PatternStats {
            storage: p.storage.iter().map(|x| x + 1).collect(),
            sr: p.sr.iter().map(|x| x + 1).collect(),
            attempts: 0,
            successes: 0,
        })
        .collect();
    let mut failures = Vec::new();
    let mut failure_count = 0;
    let mut sr_log = Vec::with_capacity(outcomes.len());
    for (t, o) in outcomes.into_iter().enumerate() {
        for (pi, err) in o.attempts {
            stats[pi].attempts += 1;
            match err {
                None => stats[pi].successes += 1,
                Some(reason) => {
                    failure_count += 1;
                    if failures.len() < MAX_FAILURE_RECORDS {
                        failures.push(Failure { trial: t, pattern: patterns[pi].to_string(), reason });
                    }
                }
            }
        }
        sr_log.push(o.sr);
    }
    if config.trials == 0 {
        stats.clear();
    }
    let attempts: u64 = stats.iter().map(|s| s.attempts).sum();
    let successes: u64 = stats.iter().map(|s| s.successes).sum();
    Ok(SimReport {
        format_version: FORMAT_VERSION,
        construction: scheme.construction().map(str::to_string),
        params: [params.n, params.k, params.nb, params.kb],
        q,
        lambda0: rational_to_string(&spec.lambda0),
        lambda_b: rational_to_string(&spec.lambda_b),
        policy: config.policy,
        seed: config.seed,
        payload_bytes: config.payload.len(),
        trials: config.trials,
        attempts,
        successes,
        patterns: stats,
        failure_count,
        failures,
        sr_log,
        throughput: Throughput {
            chunks_per_trial: chunks.len(),
            dits_stored_per_trial: chunks.len() * spec.storage_len(),
            decodes: attempts * chunks.len() as u64,
        },
    })
}

/// Erase, decode every chunk, unchunk and compare. `None` on success.
fn attempt(
    scheme: &LinearScheme,
    dec: &PatternDecoder,
    p: &ErasurePattern,
    words: &[Vec<Elem>],
    inputs: &[Vec<Elem>],
    payload: &[u8],
) -> Option<String> {
    let spec = &scheme.spec;
    let m0 = spec.message_len();
    let mut decoded = Vec::with_capacity(words.len());
    for (ci, (y, x)) in words.iter().zip(inputs).enumerate() {
        let obs: Vec<Elem> = p
            .storage
            .iter()
            .flat_map(|&n| y[spec.node_range(n)].iter().copied())
            .chain(p.sr.iter().flat_map(|&i| x[spec.sr_range(i)].iter().copied()))
            .collect();
        match dec.decode_flat(&obs) {
            Ok(m) if m[..] == x[..m0] => decoded.push(m),
            Ok(_) => return Some(format!("chunk {ci} decoded to a wrong message")),
            Err(e) => return Some(format!("chunk {ci}: {e}")),
        }
    }
    match unchunk_payload(&decoded, scheme) {
        Ok(bytes) if bytes == payload => None,
        Ok(_) => Some("payload differs after unchunking".into()),
        Err(e) => Some(format!("unchunking failed: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::fig1;

    fn config(scheme: LinearScheme, trials: usize) -> SimConfig {
        SimConfig {
            scheme,
            payload: b"coset".to_vec(),
            trials,
            policy: ErasurePolicy::Exhaustive,
            seed: 11,
        }
    }

    #[test]
    fn fig1_exhaustive_recovers() {
        let r = run_sim(&config(fig1(2).unwrap(), 2)).unwrap();
        assert_eq!(r.patterns.len(), 9);
        assert!(r.patterns.iter().all(|p| p.attempts == 2 && p.successes == 2));
        assert!(r.all_recovered());
        assert!(r.sr_log.iter().all(|e| e.recovered));
    }

    #[test]
    fn deterministic_under_seed() {
        let mut c = config(fig1(2).unwrap(), 4);
        c.policy = ErasurePolicy::Random;
        let a = run_sim(&c).unwrap().to_json();
        assert_eq!(a, run_sim(&c).unwrap().to_json());
        c.seed = 12;
        assert_ne!(a, run_sim(&c).unwrap().to_json());
    }

    #[test]
    fn zero_trials_empty() {
        let r = run_sim(&config(fig1(2).unwrap(), 0)).unwrap();
        assert_eq!(r.attempts, 0);
        assert!(r.patterns.is_empty());
        assert!(r.sr_log.is_empty());
    }

    #[test]
    fn corrupted_message_map_pinpointed() {
        let s = fig1(2).unwrap();
        let mut a = s.a().clone();
        // message dit 1 no longer reaches node 1
        for c in 0..6 {
            a.set(0, c, 0);
        }
        let broken = LinearScheme::new(s.spec.clone(), a, s.b().clone(), s.z().clone()).unwrap();
        let r = run_sim(&config(broken, 1)).unwrap();
        assert!(!r.all_recovered());
        assert!(r.failing_patterns().count() > 0);
        assert!(r.failing_patterns().all(|p| p.storage == vec![1]));
    }
}
