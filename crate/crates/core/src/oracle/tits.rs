//! The Tits form `q(v) = Σ v_i² − Σ e¹_ij v_i v_j + Σ e²_ij v_i v_j` with
//! `e^k_ij = dim Ext^k(S_i, S_j)`.

use crate::error::{Error, Result};
use crate::oracle::homological::Oracle;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TitsForm {
    pub ext1: Vec<Vec<i64>>,
    pub ext2: Vec<Vec<i64>>,
}

impl TitsForm {
    pub fn eval(&self, v: &[i64]) -> i64 {
        let n = v.len();
        let mut q: i64 = v.iter().map(|x| x * x).sum();
        for i in 0..n {
            for j in 0..n {
                q += (self.ext2[i][j] - self.ext1[i][j]) * v[i] * v[j];
            }
        }
        q
    }
}

/// Ext dimensions between simples from minimal projective resolutions.
pub fn tits_form(o: &Oracle) -> Result<TitsForm> {
    if !o.alg().is_triangular() {
        return Err(Error::NotTriangular);
    }
    let n = o.n();
    let mut ext1 = vec![vec![0; n]; n];
    let mut ext2 = vec![vec![0; n]; n];
    for i in 0..n {
        let r = o.resolution(&o.simple(i), 2);
        for (k, ext) in [(1, &mut ext1), (2, &mut ext2)] {
            if let Some(s) = r.summands.get(k) {
                for &j in s {
                    ext[i][j] += 1;
                }
            }
        }
    }
    Ok(TitsForm { ext1, ext2 })
}

/// All nonzero `v ≥ 0` with entries at most `entry_bound` and `q(v) = 1`,
/// in lexicographic order.
pub fn tits_positive_roots(o: &Oracle, entry_bound: i64) -> Result<Vec<Vec<i64>>> {
    let q = tits_form(o)?;
    let n = o.n();
    let mut out = Vec::new();
    let mut v = vec![0i64; n];
    loop {
        if v.iter().any(|&x| x != 0) && q.eval(&v) == 1 {
            out.push(v.clone());
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if v[k] < entry_bound {
                v[k] += 1;
                break;
            }
            v[k] = 0;
        }
    }
}
