mod common;

use eaqs::codes::{
    by_name, case2, fig1, min_field_order, ratio, EncodingInput, LinearScheme, Params, SCHEME_NAMES,
};
use eaqs::verify::{
    audit, check_decodability, check_security, decode, entropy_oracle, oracle_verdicts,
    EntropyOracle, ErasurePattern, Var,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(n: usize, k: usize, nb: usize, kb: usize) -> Params {
    Params::new(n, k, nb, kb).unwrap()
}

#[test]
fn json_round_trip_keeps_audit() {
    for (name, params, s) in common::sweep(4, 3) {
        let back = LinearScheme::from_json(&s.to_json()).unwrap();
        assert_eq!(back.generator(), s.generator(), "{name} {params}");
        assert_eq!(back.spec, s.spec);
        assert_eq!(audit(&back).unwrap().pass, audit(&s).unwrap().pass);
    }
}

#[test]
fn default_fields_are_smallest_admissible() {
    let params = p(3, 1, 3, 2);
    for name in ["case3a", "case3b"] {
        let s = by_name(name, params, None).unwrap();
        let bound = min_field_order(name, params).unwrap();
        assert!(s.spec.q as u64 >= bound);
        // every smaller prime power is rejected
        for q in (2..s.spec.q).filter(|&q| eaqs::gf::prime_power(q as u64).is_some()) {
            if (q as u64) < bound {
                assert!(by_name(name, params, Some(q)).is_err(), "{name} q={q}");
            }
        }
    }
    assert!(SCHEME_NAMES.iter().all(|n| min_field_order(n, params).is_some()));
}

#[test]
fn every_pattern_decodes_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, params, s) in common::sweep(5, 3) {
        let spec = &s.spec;
        let q = spec.q;
        let sl = spec.sr_node_len();
        for pat in ErasurePattern::all(params) {
            let input = EncodingInput {
                y0: (0..spec.message_len()).map(|_| rng.random_range(0..q)).collect(),
                b: (0..spec.sr_len()).map(|_| rng.random_range(0..q)).collect(),
                z: (0..spec.l).map(|_| rng.random_range(0..q)).collect(),
            };
            let y = s.encode(&input).unwrap();
            let nodes: Vec<Vec<u32>> = pat.storage.iter().map(|&n| y[n].clone()).collect();
            let sr: Vec<Vec<u32>> = pat.sr.iter().map(|&i| input.b[i * sl..(i + 1) * sl].to_vec()).collect();
            assert_eq!(decode(&s, &pat, &nodes, &sr).unwrap(), input.y0, "{name} {params} {pat}");
        }
    }
}

#[test]
fn fig1_entropies() {
    let s = fig1(2).unwrap();
    let o = EntropyOracle::new(&s);
    assert_eq!(o.entropy(&[Var::Message]).unwrap(), ratio(3, 1));
    assert_eq!(o.entropy(&[Var::Node(0)]).unwrap(), ratio(6, 1));
    let pat = ErasurePattern::parse(s.params(), "K=1;KB=1,2").unwrap();
    assert_eq!(
        entropy_oracle(&s, &[Var::Message], &[Var::Node(0), Var::Sr(0), Var::Sr(1)]).unwrap(),
        ratio(0, 1)
    );
    assert!(check_decodability(&s, &pat).unwrap());
    assert_eq!(
        o.mutual_information(&[Var::Message], &[Var::Node(1), Var::Node(2), Var::Sr(2)]).unwrap(),
        ratio(0, 1)
    );
    // all storage nodes give back the SR
    let nodes: Vec<Var> = (0..3).map(Var::Node).collect();
    let srs: Vec<Var> = (0..3).map(Var::Sr).collect();
    assert_eq!(o.conditional_entropy(&srs, &nodes).unwrap(), ratio(0, 1));
}

#[test]
fn oracle_flags_mutations_like_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let base = case2(p(2, 1, 3, 2), 8).unwrap();
    let mut seen_fail = 0;
    for _ in 0..20 {
        let s = common::mutate(&base, &mut rng);
        let rank = audit(&s).unwrap();
        let oracle = oracle_verdicts(&s, 1 << 20).unwrap();
        for (v, (_, dec, sec)) in rank.patterns.iter().zip(&oracle.patterns) {
            assert_eq!((v.decodable, v.secure), (*dec, *sec));
        }
        seen_fail += usize::from(!rank.pass);
    }
    assert!(seen_fail > 0);
}

#[test]
fn insecure_case2_variant() {
    // copying y0 into node 2 leaks it when only node 1 survives
    let s = case2(p(2, 1, 3, 2), 8).unwrap();
    let mut a = s.a().clone();
    a.set(0, 2, 1);
    a.set(0, 3, 0);
    let mut b = s.b().clone();
    for r in 0..b.rows() {
        b.set(r, 2, 0);
    }
    let leaky = LinearScheme::new(s.spec.clone(), a, b, s.z().clone()).unwrap();
    let pat = ErasurePattern::parse(leaky.params(), "K=1;KB=1,2").unwrap();
    assert!(!check_security(&leaky, &pat).unwrap());
    let o = EntropyOracle::new(&leaky);
    assert!(o.mutual_information(&[Var::Message], &[Var::Node(1), Var::Sr(2)]).unwrap() > ratio(0, 1));
}
