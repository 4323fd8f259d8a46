mod common;

use eaqs::codes::{case2, fig1, LinearScheme, Params};
use eaqs::harness::{
    chunk_dits, chunk_payload, run_sim, unchunk_dits, unchunk_payload, ErasurePolicy, SimConfig,
};
use eaqs::verify::{ErasurePattern, PatternDecoder};
use eaqs::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg(scheme: LinearScheme, payload: Vec<u8>, policy: ErasurePolicy, trials: usize) -> SimConfig {
    SimConfig { scheme, payload, trials, policy, seed: 5 }
}

/// payload -> chunk -> encode -> erase -> decode -> unchunk, over dits.
#[test]
fn end_to_end_every_constructed_scheme() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (name, params, s) in common::sweep(4, 3) {
        let spec = &s.spec;
        let q = spec.q;
        if spec.message_len() == 0 {
            continue;
        }
        let dits: Vec<u32> = (0..20).map(|_| rng.random_range(0..q)).collect();
        let chunks = chunk_dits(&dits, q, spec.message_len()).unwrap();
        let words: Vec<(Vec<u32>, Vec<u32>)> = chunks
            .iter()
            .map(|c| {
                let mut x = c.clone();
                x.extend((0..spec.sr_len() + spec.l).map(|_| rng.random_range(0..q)));
                (s.encode_flat(&x).unwrap(), x)
            })
            .collect();
        for pat in ErasurePattern::all(params) {
            let dec = PatternDecoder::new(&s, &pat).unwrap();
            let out: Vec<Vec<u32>> = words
                .iter()
                .map(|(y, x)| {
                    let obs: Vec<u32> = pat
                        .storage
                        .iter()
                        .flat_map(|&n| y[spec.node_range(n)].to_vec())
                        .chain(pat.sr.iter().flat_map(|&i| x[spec.sr_range(i)].to_vec()))
                        .collect();
                    dec.decode_flat(&obs).unwrap()
                })
                .collect();
            assert_eq!(unchunk_dits(&out).unwrap(), dits, "{name} {params} {pat}");
        }
    }
}

#[test]
fn binary_alphabets_round_trip_bytes() {
    let s = case2(Params::new(2, 1, 3, 2).unwrap(), 8).unwrap();
    let payload: Vec<u8> = (0..=255).collect();
    let rep = run_sim(&cfg(s.clone(), payload.clone(), ErasurePolicy::Exhaustive, 3)).unwrap();
    assert!(rep.all_recovered());
    assert_eq!(rep.attempts, 18);
    let c = chunk_payload(&payload, &s).unwrap();
    assert_eq!(unchunk_payload(&c, &s).unwrap(), payload);
}

#[test]
fn fig1_random_policy_covers_patterns() {
    let rep = run_sim(&cfg(fig1(2).unwrap(), b"abc".to_vec(), ErasurePolicy::Random, 200)).unwrap();
    assert_eq!(rep.attempts, 200);
    assert!(rep.all_recovered());
    assert!(rep.patterns.iter().all(|p| p.attempts > 0));
    assert!(rep.sr_log.iter().all(|e| e.recovered));
}

#[test]
fn report_bytes_are_reproducible() {
    let c = cfg(fig1(4).unwrap(), b"reproducible".to_vec(), ErasurePolicy::Random, 16);
    assert_eq!(run_sim(&c).unwrap().to_json(), run_sim(&c).unwrap().to_json());
    let v: serde_json::Value = serde_json::from_str(&run_sim(&c).unwrap().to_json()).unwrap();
    assert_eq!(v["format_version"], 1);
    assert_eq!(v["policy"], "random");
}

#[test]
fn odd_field_rejects_bytes() {
    let s = fig1(3).unwrap();
    let err = run_sim(&cfg(s, b"x".to_vec(), ErasurePolicy::Exhaustive, 1)).unwrap_err();
    assert_eq!(err, Error::UnsupportedAlphabet(3));
}

#[test]
fn corrupted_a_is_pinpointed() {
    let s = case2(Params::new(2, 1, 3, 2).unwrap(), 8).unwrap();
    let mut a = s.a().clone();
    // node 1 loses the message
    a.set(0, 0, 0);
    a.set(0, 1, 0);
    let broken = LinearScheme::new(s.spec.clone(), a, s.b().clone(), s.z().clone()).unwrap();
    let rep = run_sim(&cfg(broken, b"payload".to_vec(), ErasurePolicy::Exhaustive, 2)).unwrap();
    assert!(!rep.all_recovered());
    let failing: Vec<&Vec<usize>> = rep.failing_patterns().map(|p| &p.storage).collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|st| st.as_slice() == [1]));
    assert!(rep.failures.iter().all(|f| f.pattern.starts_with("K=1;")));
}
