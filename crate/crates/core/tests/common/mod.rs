#![allow(dead_code)]

use eaqs::codes::{by_name, ratio, CodeSpec, LinearScheme, Params};
use eaqs::linalg::Matrix;
use eaqs::Field;
use rand::Rng;

/// Constructor names with the parameter tuples they accept.
pub fn sweep_tuples(max_n: usize, max_nb: usize) -> Vec<(&'static str, Params)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for k in 1..=n {
            for nb in 1..=max_nb {
                for kb in 1..=nb {
                    let p = Params::new(n, k, nb, kb).unwrap();
                    let sr_majority = 2 * kb > nb;
                    out.push(("baseline", p));
                    if sr_majority && 2 * k >= n {
                        out.push(("case2", p));
                    }
                    if sr_majority && 2 * k < n {
                        out.push(("case3a", p));
                        out.push(("case3b", p));
                    }
                    if nb == 1 && kb == 1 && 2 * k < n {
                        out.push(("appendixb", p));
                    }
                }
            }
        }
    }
    out
}

/// Every constructor over the sweep at its smallest admissible field.
pub fn sweep(max_n: usize, max_nb: usize) -> Vec<(&'static str, Params, LinearScheme)> {
    sweep_tuples(max_n, max_nb)
        .into_iter()
        .map(|(name, p)| (name, p, by_name(name, p, None).unwrap()))
        .collect()
}

pub fn random_invertible<R: Rng>(f: &Field, n: usize, rng: &mut R) -> Matrix {
    let q = f.order();
    loop {
        let data = (0..n * n).map(|_| rng.random_range(0..q)).collect();
        let m = Matrix::from_vec(f, n, n, data).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

/// Mixes the dits inside each storage node and the local randomness rows
/// by random invertible maps. Feasibility is unchanged.
pub fn disguise<R: Rng>(s: &LinearScheme, rng: &mut R) -> LinearScheme {
    let f = s.field();
    let spec = &s.spec;
    let kappa = spec.kappa;
    let n = spec.params.n;
    let mut block = Matrix::zeros(f, n * kappa, n * kappa);
    for node in 0..n {
        let m = random_invertible(f, kappa, rng);
        for i in 0..kappa {
            for j in 0..kappa {
                block.set(node * kappa + i, node * kappa + j, m.get(i, j));
            }
        }
    }
    let z = if spec.l > 0 {
        random_invertible(f, spec.l, rng).mul(s.z()).unwrap()
    } else {
        s.z().clone()
    };
    LinearScheme::new(
        spec.clone(),
        s.a().mul(&block).unwrap(),
        s.b().mul(&block).unwrap(),
        z.mul(&block).unwrap(),
    )
    .unwrap()
}

/// Small scheme with uniformly random matrices, `q^r <= max_space`.
pub fn random_scheme<R: Rng>(rng: &mut R, max_space: u64) -> LinearScheme {
    loop {
        let q = [2u32, 3, 4, 5][rng.random_range(0..4)];
        let n = rng.random_range(1..=3);
        let k = rng.random_range(1..=n);
        let nb = rng.random_range(0..=2);
        let kb = if nb == 0 { 0 } else { rng.random_range(1..=nb) };
        let kappa = rng.random_range(1..=2);
        let m0 = rng.random_range(0..=kappa);
        let sl = if nb == 0 { 0 } else { rng.random_range(0..=kappa) };
        let l = rng.random_range(0..=2);
        let r = m0 + nb * sl + l;
        if (q as u64).checked_pow(r as u32).is_none_or(|s| s > max_space) {
            continue;
        }
        let f = Field::new(q as u64).unwrap();
        let spec = CodeSpec {
            params: Params::new(n, k, nb, kb).unwrap(),
            q,
            kappa,
            lambda0: ratio(m0 as i64, kappa as i64),
            lambda_b: ratio(sl as i64, kappa as i64),
            l,
        };
        let mut m = |rows: usize| {
            let data = (0..rows * n * kappa).map(|_| rng.random_range(0..q)).collect();
            Matrix::from_vec(&f, rows, n * kappa, data).unwrap()
        };
        let (a, b, z) = (m(m0), m(nb * sl), m(l));
        return LinearScheme::new(spec, a, b, z).unwrap();
    }
}

/// Same scheme with one random entry of `A` replaced.
pub fn mutate<R: Rng>(s: &LinearScheme, rng: &mut R) -> LinearScheme {
    let mut a = s.a().clone();
    let q = s.field().order();
    if a.rows() > 0 {
        let (i, j) = (rng.random_range(0..a.rows()), rng.random_range(0..a.cols()));
        let old = a.get(i, j);
        a.set(i, j, (old + rng.random_range(1..q)) % q);
    }
    LinearScheme::new(s.spec.clone(), a, s.b().clone(), s.z().clone()).unwrap()
}
