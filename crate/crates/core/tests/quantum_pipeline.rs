mod common;

use eaqs::codes::{appendix_b, case2, fig1, LinearScheme, Params};
use eaqs::quantum::{
    apply_label_unitary, available_subsystems, brute_force_factorization, css_encode_basis_state,
    css_encode_state, factorization_check, quantum_verdicts, synthesize_decoder, transcript_json,
};
use eaqs::verify::{audit, ErasurePattern};
use eaqs::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn appendix_b_pipelines() {
    for (n, k, q) in [(3, 1, 7), (5, 1, 11), (5, 2, 11)] {
        let s = appendix_b(n, k, q).unwrap();
        let verdicts = quantum_verdicts(&s).unwrap();
        assert_eq!(verdicts.len(), eaqs::verify::count_patterns(s.params()) as usize);
        assert!(verdicts.iter().all(|v| v.1), "({n},{k})");
    }
}

#[test]
fn fig1_every_pattern() {
    let s = fig1(2).unwrap();
    let v = quantum_verdicts(&s).unwrap();
    assert_eq!(v.len(), 9);
    assert!(v.iter().all(|x| x.1));
}

#[test]
fn decoders_never_touch_erased_subsystems() {
    for (_, params, s) in common::sweep(4, 3) {
        for pat in ErasurePattern::all(params) {
            let allowed = available_subsystems(&pat);
            for u in synthesize_decoder(&s, &pat).unwrap() {
                assert!(u.targets.iter().all(|t| allowed.contains(t)), "{params} {pat}");
                assert!(!u.targets.iter().any(|t| t == "R"));
            }
        }
    }
}

#[test]
fn audit_and_factorization_agree_on_random_schemes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let bases = [
        case2(Params::new(2, 1, 3, 2).unwrap(), 8).unwrap(),
        case2(Params::new(3, 2, 1, 1).unwrap(), 7).unwrap(),
        appendix_b(3, 1, 7).unwrap(),
    ];
    let mut compared = 0;
    let mut failing = 0;
    for base in &bases {
        for _ in 0..15 {
            let s = common::mutate(base, &mut rng);
            let s = common::disguise(&s, &mut rng);
            // only isometric encoders have a coset state
            let Ok(verdicts) = quantum_verdicts(&s) else { continue };
            let rep = audit(&s).unwrap();
            for (v, (pat, ok)) in rep.patterns.iter().zip(&verdicts) {
                assert_eq!(v.pass(), *ok, "{pat}");
            }
            compared += 1;
            failing += usize::from(!rep.pass);
        }
    }
    assert!(compared >= 20 && failing > 0, "{compared} compared, {failing} failing");
}

#[test]
fn insecure_pattern_fails_factorization_exactly_there() {
    let s = case2(Params::new(2, 1, 3, 2).unwrap(), 8).unwrap();
    // node 2 stores the message in the clear next to its SR terms
    let mut a = s.a().clone();
    let mut b = s.b().clone();
    a.set(0, 2, 1);
    a.set(0, 3, 0);
    for r in 0..b.rows() {
        b.set(r, 2, 0);
    }
    let leaky = LinearScheme::new(s.spec.clone(), a, b, s.z().clone()).unwrap();
    let rep = audit(&leaky).unwrap();
    assert!(!rep.pass);
    let v = quantum_verdicts(&leaky).unwrap();
    assert!(v.iter().any(|x| !x.1));
    for (verdict, (pat, ok)) in rep.patterns.iter().zip(&v) {
        assert_eq!(verdict.pass(), *ok, "{pat}");
    }
}

#[test]
fn brute_force_matches_on_unfinished_decoding() {
    // stop after the first step: verdicts must still agree
    let s = case2(Params::new(2, 1, 3, 2).unwrap(), 8).unwrap();
    let enc = css_encode_state(&s).unwrap();
    for pat in ErasurePattern::all(s.params()) {
        let steps = synthesize_decoder(&s, &pat).unwrap();
        let half = apply_label_unitary(&enc, &steps[0]).unwrap();
        assert_eq!(
            factorization_check(&half, &pat).unwrap(),
            brute_force_factorization(&half, &pat).unwrap()
        );
    }
}

#[test]
fn basis_state_layout_has_no_reference() {
    let s = appendix_b(3, 1, 7).unwrap();
    let st = css_encode_basis_state(&s, &[4]).unwrap();
    assert!(st.layout().range("R").is_err());
    assert_eq!(st.rank(), s.spec.input_len() - 1);
    let pat = ErasurePattern::new(s.params(), &[0], &[0]).unwrap();
    assert!(matches!(factorization_check(&st, &pat), Err(Error::LayoutMismatch(_))));
}

#[test]
fn transcript_lists_matrices() {
    let s = appendix_b(3, 1, 7).unwrap();
    let pat = ErasurePattern::new(s.params(), &[2], &[0]).unwrap();
    let steps = synthesize_decoder(&s, &pat).unwrap();
    let t = transcript_json(&pat, &steps, Some(true));
    assert_eq!(t["format_version"], 1);
    let last = t["steps"].as_array().unwrap().last().unwrap();
    assert_eq!(last["targets"], serde_json::json!(["Q3", "B1"]));
    assert_eq!(last["matrix"].as_array().unwrap().len(), 3);
}
