use std::collections::HashSet;

use rayon::prelude::*;
use serde_json::json;

use crate::codes::{LinearScheme, FORMAT_VERSION};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::linalg::{Matrix, Subspace};
use crate::verify::{view_matrix, ErasurePattern};

use super::{apply_label_unitary, css_encode_state, CosetState, LabelUnitary};

/// Largest support the brute-force check will enumerate.
pub const BRUTE_FORCE_CAP: u64 = 1 << 16;

/// Names of the subsystems the decoder may touch: `Q_k` for `k ∈ 𝒦`, then
/// `B_i` for `i ∈ 𝒦_B`, ascending. The decoded message lands on the first
/// `κλ0` of their concatenated coordinates.
pub fn available_subsystems(pattern: &ErasurePattern) -> Vec<String> {
    pattern
        .storage
        .iter()
        .map(|k| format!("Q{}", k + 1))
        .chain(pattern.sr.iter().map(|i| format!("B{}", i + 1)))
        .collect()
}

/// Decoder steps for one pattern, acting only on surviving subsystems.
///
/// Step one removes the surviving SR dits from the surviving storage dits.
/// Step two is a change of basis taking the surviving labels `s(x)` to
/// `(a, z1', z2', 0)`: the message, functionals shared with the erased view,
/// the rest of the surviving view, and zeros for dependent coordinates.
pub fn synthesize_decoder(scheme: &LinearScheme, pattern: &ErasurePattern) -> Result<Vec<LabelUnitary>> {
    let pr = scheme.params();
    pattern.check_fits(pr)?;
    let spec = &scheme.spec;
    let f = scheme.field();
    let g = scheme.generator();
    let m0 = spec.message_len();
    let targets = available_subsystems(pattern);
    let s = view_matrix(scheme, &g, &pattern.storage, &pattern.sr);
    let e = view_matrix(scheme, &g, &pattern.erased_storage(pr.n), &pattern.erased_sr(pr.nb));
    let c = s.cols();
    let ny = pattern.storage.len() * spec.kappa;

    let mut steps = Vec::new();
    let sr_rows: Vec<usize> = pattern.sr.iter().flat_map(|&i| spec.sr_range(i)).collect();
    let q_cols: Vec<usize> = pattern.storage.iter().flat_map(|&k| spec.node_range(k)).collect();
    let b_sub = g.submatrix(&sr_rows, &q_cols)?;
    let mut shear = Matrix::identity(f, c);
    if !b_sub.is_zero() {
        for (i, _) in sr_rows.iter().enumerate() {
            for j in 0..ny {
                shear.set(ny + i, j, f.neg(b_sub.get(i, j)));
            }
        }
        steps.push(LabelUnitary::new(targets.clone(), shear.clone())?);
    }
    let s1 = s.mul(&shear)?;

    // functionals of x as row vectors of F^r
    let seen = s1.column_space();
    let erased = e.column_space();
    let shared = seen.intersection(&erased)?;
    let r = spec.input_len();
    let id = Matrix::identity(f, r);
    let mut picked: Vec<Vec<Elem>> = Vec::new();
    let mut span = Subspace::zero(f, r);
    for i in 0..m0 {
        let v = id.row(i);
        if !seen.contains(v) {
            return Err(Error::InfeasibleScheme(format!("message is not decodable under {pattern}")));
        }
        span = span.sum(&Subspace::from_rows(f, r, &[v])?)?;
        picked.push(v.to_vec());
    }
    for src in [&shared, &seen] {
        for i in 0..src.dim() {
            let v = src.basis().row(i);
            if !span.contains(v) {
                span = span.sum(&Subspace::from_rows(f, r, &[v])?)?;
                picked.push(v.to_vec());
            }
        }
    }
    let targets_t = Matrix::from_rows_with_cols(f, &picked, r)?.transpose();
    let t1 = s1.solve_right(&targets_t)?;
    let t2 = s1.right_kernel().transpose();
    let t = Matrix::hstack(&[&t1, &t2])?;
    steps.push(LabelUnitary::new(targets, t)?);
    Ok(steps)
}

fn reference_and_output(state: &CosetState, pattern: &ErasurePattern) -> Result<(Vec<usize>, Vec<usize>)> {
    let layout = state.layout();
    let reference: Vec<usize> = layout.range("R")?.collect();
    let avail = layout.coords(&available_subsystems(pattern))?;
    if avail.len() < reference.len() {
        return Err(Error::LayoutMismatch(format!(
            "pattern {pattern} leaves {} dits for a {}-dit message",
            avail.len(),
            reference.len()
        )));
    }
    Ok((reference.clone(), avail[..reference.len()].to_vec()))
}

/// True iff the support is `Δ ⊕ W'` with `Δ = {(a, a, 0)}` on `(R, Q̂0)` and
/// `W'` zero on both, i.e. `R Q̂0` is maximally entangled and decoupled from
/// everything else. Nonzero offsets are rejected.
pub fn factorization_check(state: &CosetState, pattern: &ErasurePattern) -> Result<bool> {
    let (reference, output) = reference_and_output(state, pattern)?;
    if state.offset().iter().any(|&x| x != 0) {
        return Ok(false);
    }
    let w = state.space();
    let f = w.field();
    let n = w.ambient_dim();
    for (&r, &o) in reference.iter().zip(&output) {
        let mut v = vec![0; n];
        v[r] = 1;
        v[o] = 1;
        if !w.contains(&v) {
            return Ok(false);
        }
    }
    let outside: Vec<Vec<Elem>> = (0..n)
        .filter(|c| !reference.contains(c) && !output.contains(c))
        .map(|c| {
            let mut v = vec![0; n];
            v[c] = 1;
            v
        })
        .collect();
    let rest = w.intersection(&Subspace::from_rows(f, n, &outside)?)?;
    Ok(w.dim() == reference.len() + rest.dim())
}

/// Same verdict as [`factorization_check`] by listing the support: it
/// contains zero, `R = Q̂0` on every element, `R` takes all values and the
/// support is the product of its `R` values and its residual parts.
pub fn brute_force_factorization(state: &CosetState, pattern: &ErasurePattern) -> Result<bool> {
    let (reference, output) = reference_and_output(state, pattern)?;
    let g = state.generator();
    let f = g.field();
    let q = f.order() as u64;
    let total = (0..g.rows()).try_fold(1u64, |acc, _| acc.checked_mul(q).filter(|&t| t <= BRUTE_FORCE_CAP));
    let Some(total) = total else {
        return Err(Error::TooLarge { exponent: g.rows() });
    };
    let n = g.cols();
    let residual_cols: Vec<usize> = (0..n).filter(|c| !reference.contains(c) && !output.contains(c)).collect();
    let mut refs = HashSet::new();
    let mut residuals = HashSet::new();
    let mut has_zero = false;
    let mut coeffs = vec![0 as Elem; g.rows()];
    for step in 0..total {
        let mut v = state.offset().to_vec();
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                f.sub_scaled(&mut v, f.neg(c), g.row(i));
            }
        }
        has_zero |= v.iter().all(|&x| x == 0);
        let rv: Vec<Elem> = reference.iter().map(|&c| v[c]).collect();
        if output.iter().map(|&c| v[c]).ne(rv.iter().copied()) {
            return Ok(false);
        }
        refs.insert(rv);
        residuals.insert(residual_cols.iter().map(|&c| v[c]).collect::<Vec<_>>());
        if step + 1 < total {
            for c in coeffs.iter_mut() {
                *c = if *c + 1 == q as Elem { 0 } else { *c + 1 };
                if *c != 0 {
                    break;
                }
            }
        }
    }
    let full = q.checked_pow(reference.len() as u32).is_some_and(|t| t == refs.len() as u64);
    Ok(has_zero && full && (refs.len() * residuals.len()) as u64 == total)
}

/// For a basis-message state: the first `a0.len()` surviving coordinates
/// hold `a0` on the whole support.
pub fn basis_recovery_check(state: &CosetState, pattern: &ErasurePattern, a0: &[Elem]) -> Result<bool> {
    let avail = state.layout().coords(&available_subsystems(pattern))?;
    if avail.len() < a0.len() {
        return Err(Error::LayoutMismatch(format!("pattern {pattern} leaves {} dits", avail.len())));
    }
    let g = state.generator();
    Ok(avail[..a0.len()]
        .iter()
        .zip(a0)
        .all(|(&c, &a)| state.offset()[c] == a && (0..g.rows()).all(|i| g.get(i, c) == 0)))
}

/// Encode, decode and check one pattern.
pub fn check_pattern(scheme: &LinearScheme, pattern: &ErasurePattern) -> Result<bool> {
    let mut state = css_encode_state(scheme)?;
    for u in synthesize_decoder(scheme, pattern)? {
        state = apply_label_unitary(&state, &u)?;
    }
    factorization_check(&state, pattern)
}

/// [`check_pattern`] over every pattern, lexicographic order.
///
/// Patterns that cannot be decoded at all are reported as failing.
pub fn quantum_verdicts(scheme: &LinearScheme) -> Result<Vec<(ErasurePattern, bool)>> {
    let encoded = css_encode_state(scheme)?;
    let patterns: Vec<ErasurePattern> = ErasurePattern::all(scheme.params()).collect();
    patterns
        .into_par_iter()
        .map(|p| {
            let steps = match synthesize_decoder(scheme, &p) {
                Ok(s) => s,
                Err(Error::InfeasibleScheme(_)) => return Ok((p, false)),
                Err(e) => return Err(e),
            };
            let mut state = encoded.clone();
            for u in &steps {
                state = apply_label_unitary(&state, u)?;
            }
            let ok = factorization_check(&state, &p)?;
            Ok((p, ok))
        })
        .collect()
}

/// Decoder steps with 1-based pattern indices, for inspection.
pub fn transcript_json(pattern: &ErasurePattern, steps: &[LabelUnitary], verdict: Option<bool>) -> serde_json::Value {
    let steps: Vec<serde_json::Value> = steps
        .iter()
        .map(|u| json!({"targets": u.targets, "matrix": u.matrix.to_rows()}))
        .collect();
    json!({
        "format_version": FORMAT_VERSION,
        "pattern": {
            "storage": pattern.storage.iter().map(|x| x + 1).collect::<Vec<_>>(),
            "sr": pattern.sr.iter().map(|x| x + 1).collect::<Vec<_>>(),
        },
        "steps": steps,
        "factorizes": verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{appendix_b, case2, fig1, Params};
    use crate::quantum::css_encode_basis_state;

    fn decoded(s: &LinearScheme, p: &ErasurePattern) -> CosetState {
        let mut st = css_encode_state(s).unwrap();
        for u in synthesize_decoder(s, p).unwrap() {
            st = apply_label_unitary(&st, &u).unwrap();
        }
        st
    }

    #[test]
    fn case2_all_patterns_factorize() {
        let s = case2(Params::new(2, 1, 3, 2).unwrap(), 8).unwrap();
        for p in ErasurePattern::all(s.params()) {
            let st = decoded(&s, &p);
            assert!(factorization_check(&st, &p).unwrap(), "{p}");
            assert!(brute_force_factorization(&st, &p).unwrap(), "{p}");
        }
    }

    #[test]
    fn case2_decoder_has_two_steps() {
        let s = case2(Params::new(2, 1, 3, 2).unwrap(), 8).unwrap();
        let p = ErasurePattern::new(s.params(), &[0], &[0, 2]).unwrap();
        let steps = synthesize_decoder(&s, &p).unwrap();
        assert_eq!(steps.len(), 2);
        for u in &steps {
            assert_eq!(u.targets, vec!["Q1", "B1", "B3"]);
        }
    }

    #[test]
    fn fig1_and_appendix_b_factorize() {
        for s in [fig1(2).unwrap(), appendix_b(3, 1, 7).unwrap()] {
            for (p, ok) in quantum_verdicts(&s).unwrap() {
                assert!(ok, "{p}");
            }
        }
    }

    #[test]
    fn undecoded_state_does_not_factorize() {
        let s = case2(Params::new(2, 1, 3, 2).unwrap(), 8).unwrap();
        let p = ErasurePattern::new(s.params(), &[1], &[1, 2]).unwrap();
        let st = css_encode_state(&s).unwrap();
        assert_eq!(
            factorization_check(&st, &p).unwrap(),
            brute_force_factorization(&st, &p).unwrap()
        );
        assert!(!factorization_check(&st, &p).unwrap());
    }

    #[test]
    fn basis_states_decode_verbatim() {
        let s = case2(Params::new(2, 1, 3, 2).unwrap(), 8).unwrap();
        for p in ErasurePattern::all(s.params()) {
            let steps = synthesize_decoder(&s, &p).unwrap();
            for a in 0..8 {
                let mut st = css_encode_basis_state(&s, &[a]).unwrap();
                for u in &steps {
                    st = apply_label_unitary(&st, u).unwrap();
                }
                assert!(basis_recovery_check(&st, &p, &[a]).unwrap());
                assert!(!basis_recovery_check(&st, &p, &[(a + 1) % 8]).unwrap());
            }
        }
    }

    #[test]
    fn transcript_is_one_based() {
        let s = case2(Params::new(2, 1, 3, 2).unwrap(), 8).unwrap();
        let p = ErasurePattern::new(s.params(), &[0], &[0, 2]).unwrap();
        let steps = synthesize_decoder(&s, &p).unwrap();
        let t = transcript_json(&p, &steps, Some(true));
        assert_eq!(t["pattern"]["sr"], json!([1, 3]));
        assert_eq!(t["steps"].as_array().unwrap().len(), 2);
    }
}
