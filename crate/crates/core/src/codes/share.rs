use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::scheme::{ratio, CodeSpec, LinearScheme};

/// Runs `u*kappa2` copies of `s1` next to `(v-u)*kappa1` copies of `s2`,
/// both counts divided by their gcd (the rates only see the ratio).
///
/// Every message, SR node, local-randomness vector and storage node of the
/// result is the concatenation of the corresponding pieces of the copies,
/// `s1` copies first. The rate is `u/v` of `s1`'s plus `(v-u)/v` of `s2`'s.
pub fn space_share(s1: &LinearScheme, s2: &LinearScheme, u: usize, v: usize) -> Result<LinearScheme> {
    if s1.params() != s2.params() {
        return Err(Error::ParamMismatch);
    }
    if s1.field() != s2.field() {
        return Err(Error::FieldMismatch);
    }
    if v == 0 || u > v {
        return Err(Error::InvalidParams(format!("need 0 <= u <= v and v >= 1, got u={u}, v={v}")));
    }
    let (k1, k2) = (s1.spec.kappa, s2.spec.kappa);
    let (c1, c2) = (u * k2, (v - u) * k1);
    let d = gcd(c1, c2);
    let (c1, c2) = (c1 / d, c2 / d);
    let copies: Vec<&LinearScheme> = std::iter::repeat_n(s1, c1)
        .chain(std::iter::repeat_n(s2, c2))
        .collect();
    let p = s1.params();
    let kappa = c1 * k1 + c2 * k2;
    let m0: usize = copies.iter().map(|s| s.spec.message_len()).sum();
    let sr: usize = copies.iter().map(|s| s.spec.sr_node_len()).sum();
    let l: usize = copies.iter().map(|s| s.spec.l).sum();
    let spec = CodeSpec {
        params: p,
        q: s1.spec.q,
        kappa,
        lambda0: ratio(m0 as i64, kappa as i64),
        lambda_b: ratio(sr as i64, kappa as i64),
        l,
    };

    let r = m0 + p.nb * sr + l;
    let mut g = Matrix::zeros(s1.field(), r, p.n * kappa);
    let (mut msg_off, mut sr_off, mut z_off, mut col_off) = (0, 0, 0, 0);
    for s in &copies {
        let cs = &s.spec;
        let gc = s.generator();
        // global row of each local input coordinate
        let mut row_map: Vec<usize> = (0..cs.message_len()).map(|i| msg_off + i).collect();
        for t in 0..p.nb {
            row_map.extend((0..cs.sr_node_len()).map(|i| m0 + t * sr + sr_off + i));
        }
        row_map.extend((0..cs.l).map(|i| m0 + p.nb * sr + z_off + i));
        for (lr, &gr) in row_map.iter().enumerate() {
            for node in 0..p.n {
                for j in 0..cs.kappa {
                    let val = gc.get(lr, node * cs.kappa + j);
                    g.set(gr, node * kappa + col_off + j, val);
                }
            }
        }
        msg_off += cs.message_len();
        sr_off += cs.sr_node_len();
        z_off += cs.l;
        col_off += cs.kappa;
    }
    Ok(LinearScheme::from_generator(spec, &g)?.with_construction("space-share"))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{case2, case3a, case3b, Params};

    #[test]
    fn degenerate_mixtures() {
        let p = Params::new(3, 1, 3, 2).unwrap();
        let a = case3a(p, 13).unwrap();
        let b = case3b(p, 13).unwrap();
        assert_eq!(space_share(&a, &b, 1, 1).unwrap().spec.rate(), a.spec.rate());
        assert_eq!(space_share(&a, &b, 0, 3).unwrap().spec.rate(), b.spec.rate());
        let half = space_share(&a, &b, 1, 2).unwrap();
        assert_eq!(half.spec.rate(), (ratio(3, 8), ratio(13, 24)));
    }

    #[test]
    fn mismatches() {
        let a = case3a(Params::new(3, 1, 3, 2).unwrap(), 13).unwrap();
        let b = case2(Params::new(2, 1, 3, 2).unwrap(), 13).unwrap();
        assert_eq!(space_share(&a, &b, 1, 2).unwrap_err(), Error::ParamMismatch);
        let c = case3a(Params::new(3, 1, 3, 2).unwrap(), 16).unwrap();
        assert_eq!(space_share(&a, &c, 1, 2).unwrap_err(), Error::FieldMismatch);
        assert!(space_share(&a, &a, 3, 2).is_err());
    }
}
