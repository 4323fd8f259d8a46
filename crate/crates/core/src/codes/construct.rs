//! Scheme constructors.
//!
//! Each construction is written in terms of "forms": an `r x k` matrix whose
//! columns are linear functions of the input `x = (y0, b, z)` of length `r`.
//! Multiplying forms by a matrix on the right composes the linear maps, and
//! the final generator is the horizontal concatenation of the storage nodes'
//! forms.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::{cauchy, default_cauchy, default_points, grs, vandermonde, Matrix};

use super::scheme::{ratio, CodeSpec, LinearScheme, Params, Rational};

fn cols(m: &Matrix, r: Range<usize>) -> Matrix {
    let idx: Vec<usize> = r.collect();
    m.select_cols(&idx).expect("range inside matrix")
}

fn hcat(parts: &[Matrix]) -> Matrix {
    let refs: Vec<&Matrix> = parts.iter().collect();
    Matrix::hstack(&refs).expect("forms share their row count")
}

fn require_field(q: u32, required: u64) -> Result<Field> {
    let field = Field::new(q as u64)?;
    if (q as u64) < required {
        return Err(Error::FieldTooSmall {
            required,
            got: q as u64,
        });
    }
    Ok(field)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    params: Params,
    field: &Field,
    kappa: usize,
    m0: usize,
    sr: usize,
    l: usize,
    g: &Matrix,
    name: &str,
) -> Result<LinearScheme> {
    let spec = CodeSpec {
        params,
        q: field.order(),
        kappa,
        lambda0: ratio(m0 as i64, kappa as i64),
        lambda_b: ratio(sr as i64, kappa as i64),
        l,
    };
    Ok(LinearScheme::from_generator(spec, g)?.with_construction(name))
}

/// Minimum field order each constructor accepts.
pub fn min_field_order(scheme: &str, p: Params) -> Option<u64> {
    let (n, k, nb, kb) = (p.n as u64, p.k as u64, p.nb as u64, p.kb as u64);
    Some(match scheme {
        "baseline" => (2 * n).max(2),
        "case2" => 2 * n * kb,
        "case3a" => 2 * n * kb,
        "case3b" => (2 * k * nb * kb).max(n + 1),
        "fig1" => 2,
        "appendixb" => 2 * n,
        _ => return None,
    })
}

/// Ramp secret sharing without assistance: `(y0, z)` of total length `K`
/// through a `K x N` Cauchy matrix, giving `lambda0 = max(2K - N, 0)`.
/// SR nodes, if any, are carried with zero size.
pub fn baseline(params: Params, q: u32) -> Result<LinearScheme> {
    params.validate()?;
    let Params { n, k, .. } = params;
    if 2 * k <= n {
        let field = Field::new(q as u64)?;
        let g = Matrix::zeros(&field, 0, n);
        return finish(params, &field, 1, 0, 0, 0, &g, "baseline");
    }
    let field = require_field(q, 2 * n as u64)?;
    let g = default_cauchy(&field, k, n)?;
    finish(params, &field, 1, 2 * k - n, 0, n - k, &g, "baseline")
}

fn check_case(params: Params, storage_majority: bool) -> Result<()> {
    params.validate()?;
    let Params { n, k, nb, kb } = params;
    if 2 * kb <= nb {
        return Err(Error::CaseMismatch(format!("needs K_B/N_B > 1/2, got {kb}/{nb}")));
    }
    if storage_majority && 2 * k < n {
        return Err(Error::CaseMismatch(format!("needs K/N >= 1/2, got {k}/{n}")));
    }
    if !storage_majority && (2 * k >= n || k == 0) {
        return Err(Error::CaseMismatch(format!("needs 0 < K/N < 1/2, got {k}/{n}")));
    }
    Ok(())
}

/// `K/N >= 1/2`, `K_B/N_B > 1/2`: `(y0, B_1, .., B_{N_B})` through one
/// `NK_B x NK_B` Cauchy matrix, `kappa = K_B`.
pub fn case2(params: Params, q: u32) -> Result<LinearScheme> {
    check_case(params, true)?;
    let Params { n, k, nb, kb } = params;
    let field = require_field(q, 2 * (n * kb) as u64)?;
    let m0 = n * kb - (n - k) * nb;
    let g = default_cauchy(&field, n * kb, n * kb)?;
    finish(params, &field, kb, m0, n - k, 0, &g, "case2")
}

/// `K/N < 1/2`, `K_B/N_B > 1/2`, the extreme point at `lambdaB = K/(2K_B)`.
pub fn case3a(params: Params, q: u32) -> Result<LinearScheme> {
    check_case(params, false)?;
    let Params { n, k, nb, kb } = params;
    let field = require_field(q, 2 * (n * kb) as u64)?;
    let kappa = 2 * kb;
    let m0 = k * (2 * kb - nb);
    let sr = k;
    let l = (n - k) * kb;
    let r = m0 + nb * sr + l;
    let x = Matrix::identity(&field, r);
    let y0 = cols(&x, 0..m0);
    let b = cols(&x, m0..m0 + nb * sr);
    let z = cols(&x, m0 + nb * sr..r);

    // (f0, f_1..f_K) = (y0, B) F
    let f_mat = default_cauchy(&field, 2 * k * kb, k * nb)?;
    let f = hcat(&[y0.clone(), b]).mul(&f_mat)?;
    let f0_len = k * (nb - kb);
    let f0 = cols(&f, 0..f0_len);
    let fi = |i: usize| cols(&f, f0_len + i * kb..f0_len + (i + 1) * kb);

    // fbar_n[j] = sum_i f_i[j] V[i][n]
    let v = vandermonde(&field, &default_points(&field, n)?, k)?;
    let fbar: Vec<Matrix> = (0..kb)
        .map(|j| {
            let stacked = hcat(&(0..k).map(|i| cols(&fi(i), j..j + 1)).collect::<Vec<_>>());
            stacked.mul(&v)
        })
        .collect::<Result<_>>()?;

    // (h_1..h_N) = (f0, y0, z) H
    let h_mat = default_cauchy(&field, n * kb, n * kb)?;
    let h = hcat(&[f0, y0, z]).mul(&h_mat)?;

    let nodes: Vec<Matrix> = (0..n)
        .flat_map(|node| {
            let mut parts: Vec<Matrix> = fbar.iter().map(|fj| cols(fj, node..node + 1)).collect();
            parts.push(cols(&h, node * kb..(node + 1) * kb));
            parts
        })
        .collect();
    finish(params, &field, kappa, m0, sr, l, &hcat(&nodes), "case3a")
}

/// `K/N < 1/2`, `K_B/N_B > 1/2`, the extreme point at
/// `lambdaB = (N - 2K)/N_B + K/K_B`, using a GRS pair `(G; F)` so the
/// dual of `G` zero-forces the `h` terms when recovering the SR.
pub fn case3b(params: Params, q: u32) -> Result<LinearScheme> {
    check_case(params, false)?;
    let Params { n, k, nb, kb } = params;
    let field = require_field(q, ((2 * k * nb * kb) as u64).max(n as u64 + 1))?;
    let kappa = nb * kb;
    let m0 = k * nb * (2 * kb - nb);
    let x_len = (n - k) * kb;
    let y_len = k * (nb - kb);
    let sr = x_len + y_len;
    let r = m0 + nb * sr;
    let x = Matrix::identity(&field, r);
    let y0 = cols(&x, 0..m0);
    let bt = |t: usize| m0 + t * sr;
    // b^{i,x}_t, i in 0..N-K, each K_B long
    let bx = |t: usize, i: usize| cols(&x, bt(t) + i * kb..bt(t) + (i + 1) * kb);
    let by = |t: usize| cols(&x, bt(t) + x_len..bt(t) + sr);

    // a zero point would zero a column of F, so F would not be MDS
    let alphas: Vec<Elem> = default_points(&field, n + 1)?[1..].to_vec();
    let full = grs(&field, &vec![1; n], &alphas)?;
    let g = full.select_rows(&(0..k).collect::<Vec<_>>())?;
    let f = full.select_rows(&(k..n).collect::<Vec<_>>())?;

    // h^i_t ordered t-major: (y0, b^y_1, .., b^y_{N_B}) H
    let h_mat = default_cauchy(&field, k * nb * kb, k * nb * kb)?;
    let mut h_in = vec![y0];
    h_in.extend((0..nb).map(by));
    let h = hcat(&h_in).mul(&h_mat)?;
    let hit = |t: usize, i: usize| {
        let s = (t * k + i) * kb;
        cols(&h, s..s + kb)
    };

    // per (t, j): column n of hbar and bbar at position j
    let mut node_parts: Vec<Vec<Matrix>> = vec![Vec::new(); n];
    for t in 0..nb {
        for j in 0..kb {
            let hs = hcat(&(0..k).map(|i| cols(&hit(t, i), j..j + 1)).collect::<Vec<_>>());
            let xs = hcat(&(0..n - k).map(|i| cols(&bx(t, i), j..j + 1)).collect::<Vec<_>>());
            let sum = hs.mul(&g)?.add(&xs.mul(&f)?)?;
            for (node, parts) in node_parts.iter_mut().enumerate() {
                parts.push(cols(&sum, node..node + 1));
            }
        }
    }
    let nodes: Vec<Matrix> = node_parts.into_iter().flatten().collect();
    finish(params, &field, kappa, m0, sr, 0, &hcat(&nodes), "case3b")
}

/// The hand-built `(3,1,3,2)` code with `kappa = 6`, valid over every field.
///
/// `Y0 = (a1, a2, a3)`, `a4 = a1 + a2`; SR node `n` holds
/// `(b0, b11, b12, b21, b22)` and `b3i = b1i + b2i`. Entry `(i, c)` of the
/// `2 x 3` block of `Y_m` is `a[i][c] + b0 of node s[i][c] + b_{m,i} of node c`,
/// stored column-major.
pub fn fig1(q: u32) -> Result<LinearScheme> {
    let field = Field::new(q as u64)?;
    let params = Params::new(3, 1, 3, 2)?;
    let r = 3 + 15;
    let a_terms: [[&[usize]; 3]; 2] = [[&[0], &[2], &[2]], [&[1], &[0, 1], &[1]]];
    // node index (0-based) whose b0 appears at (i, c)
    let b0_node = [[1, 2, 0], [2, 0, 1]];
    let b = |node: usize, slot: usize| 3 + 5 * node + slot;
    // b_{m,i} slots: b11=1, b12=2, b21=3, b22=4
    let b_mi = |m: usize, i: usize, node: usize| -> Vec<usize> {
        match m {
            0 => vec![b(node, 1 + i)],
            1 => vec![b(node, 3 + i)],
            _ => vec![b(node, 1 + i), b(node, 3 + i)],
        }
    };
    let mut g = Matrix::zeros(&field, r, 18);
    for m in 0..3 {
        for c in 0..3 {
            for i in 0..2 {
                let col = 6 * m + 2 * c + i;
                let mut vars: Vec<usize> = a_terms[i][c].to_vec();
                vars.push(b(b0_node[i][c], 0));
                vars.extend(b_mi(m, i, c));
                for v in vars {
                    g.set(v, col, field.add(g.get(v, col), 1));
                }
            }
        }
    }
    finish(params, &field, 6, 3, 5, 0, &g, "fig1")
}

/// `N_B = K_B = 1`, `K/N < 1/2`: `Y_n = (f_n, h_n)` with
/// `f = (a + b) V` and `h = (a, z) H`, rate `(K/2, K/2)`.
pub fn appendix_b(n: usize, k: usize, q: u32) -> Result<LinearScheme> {
    let params = Params::new(n, k, 1, 1)?;
    check_case(params, false)?;
    let field = require_field(q, 2 * n as u64)?;
    let r = k + k + (n - k);
    let x = Matrix::identity(&field, r);
    let a = cols(&x, 0..k);
    let b = cols(&x, k..2 * k);
    let z = cols(&x, 2 * k..r);
    let v = vandermonde(&field, &default_points(&field, n)?, k)?;
    let f = a.add(&b)?.mul(&v)?;
    let pts = default_points(&field, 2 * n)?;
    let h = hcat(&[a, z]).mul(&cauchy(&field, &pts[..n], &pts[n..])?)?;
    let nodes: Vec<Matrix> = (0..n)
        .flat_map(|c| [cols(&f, c..c + 1), cols(&h, c..c + 1)])
        .collect();
    finish(params, &field, 2, k, k, n - k, &hcat(&nodes), "appendixb")
}

/// Builds a scheme by name with the smallest admissible field if `q` is `None`.
pub fn by_name(name: &str, params: Params, q: Option<u32>) -> Result<LinearScheme> {
    let q = match q {
        Some(q) => q,
        None => {
            let lower = min_field_order(name, params)
                .ok_or_else(|| Error::InvalidParams(format!("unknown scheme {name}")))?;
            crate::gf::next_prime_power(lower) as u32
        }
    };
    match name {
        "baseline" => baseline(params, q),
        "case2" => case2(params, q),
        "case3a" => case3a(params, q),
        "case3b" => case3b(params, q),
        "fig1" => fig1(q),
        "appendixb" => {
            if (params.nb, params.kb) != (1, 1) {
                return Err(Error::InvalidParams("appendixb fixes N_B = K_B = 1".into()));
            }
            appendix_b(params.n, params.k, q)
        }
        _ => Err(Error::InvalidParams(format!("unknown scheme {name}"))),
    }
}

/// Closed-form rate of each constructor, used to cross-check outputs.
pub fn expected_rate(name: &str, p: Params) -> Option<(Rational, Rational)> {
    let (n, k, nb, kb) = (p.n as i64, p.k as i64, p.nb as i64, p.kb as i64);
    Some(match name {
        "baseline" => (ratio((2 * k - n).max(0), 1), ratio(0, 1)),
        "case2" => (ratio(n * kb - (n - k) * nb, kb), ratio(n - k, kb)),
        "case3a" => (ratio(k * (2 * kb - nb), 2 * kb), ratio(k, 2 * kb)),
        "case3b" => (
            ratio(2 * k * (2 * kb - nb), 2 * kb),
            ratio(n - 2 * k, nb) + ratio(k, kb),
        ),
        "fig1" => (ratio(1, 2), ratio(5, 6)),
        "appendixb" => (ratio(k, 2), ratio(k, 2)),
        _ => return None,
    })
}
