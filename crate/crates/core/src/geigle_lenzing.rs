//! The rank-one abelian group `𝕃 = ⟨x_1, …, x_n, c⟩ / (p_i x_i = c)` and
//! the order given by the submonoid generated by the `x_i` and `c`.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::lcm;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GLData {
    weights: Vec<u32>,
    d: u32,
}

impl GLData {
    /// An empty weight list is accepted and gives `𝕃 = ℤc`.
    pub fn new(weights: Vec<u32>, d: u32) -> Result<GLData> {
        if let Some(p) = weights.iter().find(|&&p| p < 2) {
            return Err(Error::InvalidParams(format!("weight {p} is below 2")));
        }
        if d == 0 {
            return Err(Error::InvalidParams("d must be at least 1".into()));
        }
        Ok(GLData { weights, d })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn zero(&self) -> LElement {
        LElement { weights: self.weights.clone(), a: vec![0; self.n()], b: 0 }
    }

    pub fn c(&self) -> LElement {
        LElement { b: 1, ..self.zero() }
    }

    pub fn x(&self, i: usize) -> LElement {
        self.element(&(0..self.n()).map(|j| i64::from(i == j)).collect::<Vec<_>>(), 0)
    }

    /// `Σ a_i x_i + b c`, reduced to normal form.
    pub fn element(&self, a: &[i64], b: i64) -> LElement {
        assert_eq!(a.len(), self.n(), "coefficient count");
        let mut out = LElement { weights: self.weights.clone(), a: vec![0; self.n()], b };
        for (i, &ai) in a.iter().enumerate() {
            let p = i64::from(self.weights[i]);
            out.a[i] = ai.rem_euclid(p);
            out.b += ai.div_euclid(p);
        }
        out
    }

    /// `ω = (n − d − 1)c − Σ x_i`, normal form `a_i = p_i − 1`, `b = −(d+1)`.
    pub fn omega(&self) -> LElement {
        let minus_x: Vec<i64> = vec![-1; self.n()];
        self.element(&minus_x, self.n() as i64 - i64::from(self.d) - 1)
    }

    /// `p̄ = lcm(p_i)`.
    pub fn pbar(&self) -> i64 {
        self.weights.iter().fold(1u64, |acc, &p| lcm(acc, u64::from(p))) as i64
    }

    /// The degree map `δ(x_i) = p̄/p_i`, `δ(c) = p̄`.
    pub fn delta(&self, z: &LElement) -> i64 {
        let pbar = self.pbar();
        z.a.iter().zip(&self.weights).map(|(a, &p)| a * (pbar / i64::from(p))).sum::<i64>() + z.b * pbar
    }

    /// Torsion test through the Smith normal form of the relation matrix,
    /// cross-checked against `δ(z) = 0`.
    pub fn is_torsion(&self, z: &LElement) -> bool {
        let n = self.n();
        // relation rows p_i e_i − e_c over generators x_1..x_n, c
        let mut rel = vec![vec![0i128; n + 1]; n];
        for (i, &p) in self.weights.iter().enumerate() {
            rel[i][i] = i128::from(p);
            rel[i][n] = -1;
        }
        let (diag, v) = smith_columns(rel, n + 1);
        let mut coords = vec![0i128; n + 1];
        for (j, c) in coords.iter_mut().enumerate() {
            *c = (0..n).map(|i| i128::from(z.a[i]) * v[i][j]).sum::<i128>() + i128::from(z.b) * v[n][j];
        }
        // free coordinates are those beyond the nonzero invariant factors
        let rank = diag.iter().filter(|&&d| d != 0).count();
        let torsion = coords[rank..].iter().all(|&c| c == 0);
        debug_assert_eq!(torsion, self.delta(z) == 0);
        torsion
    }

    /// `[0, d·c]`: normal forms with `b ≥ 0` and `b + |supp a| ≤ d`.
    pub fn interval_zero_dc(&self) -> Vec<LElement> {
        let d = i64::from(self.d);
        let mut out = Vec::new();
        let mut a = vec![0i64; self.n()];
        loop {
            let supp = a.iter().filter(|&&x| x != 0).count() as i64;
            for b in 0..=(d - supp) {
                out.push(LElement { weights: self.weights.clone(), a: a.clone(), b });
            }
            let mut i = 0;
            loop {
                if i == self.n() {
                    return out;
                }
                a[i] += 1;
                if a[i] < i64::from(self.weights[i]) {
                    break;
                }
                a[i] = 0;
                i += 1;
            }
        }
    }
}

/// Diagonalises an integer matrix by row and column operations, returning
/// the diagonal and the unimodular column transform `V` with `U·R·V = D`.
fn smith_columns(mut m: Vec<Vec<i128>>, cols: usize) -> (Vec<i128>, Vec<Vec<i128>>) {
    let rows = m.len();
    let mut v: Vec<Vec<i128>> = (0..cols).map(|i| (0..cols).map(|j| i128::from(i == j)).collect()).collect();
    let col_op = |m: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, dst: usize, src: usize, k: i128| {
        for r in m.iter_mut() {
            r[dst] -= k * r[src];
        }
        for r in v.iter_mut() {
            r[dst] -= k * r[src];
        }
    };
    let swap_cols = |m: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, a: usize, b: usize| {
        for r in m.iter_mut() {
            r.swap(a, b);
        }
        for r in v.iter_mut() {
            r.swap(a, b);
        }
    };
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry in the remaining block to (t, t)
            let piv = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs());
            let Some((pi, pj)) = piv else {
                break;
            };
            m.swap(t, pi);
            swap_cols(&mut m, &mut v, t, pj);
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let k = m[i][t].div_euclid(p);
                let tr = m[t].clone();
                for (x, y) in m[i].iter_mut().zip(&tr) {
                    *x -= k * y;
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let k = m[t][j].div_euclid(p);
                col_op(&mut m, &mut v, j, t, k);
                clean &= m[t][j] == 0;
            }
            if clean {
                break;
            }
        }
        diag.push(m[t][t]);
    }
    (diag, v)
}

/// An element of `𝕃` in normal form `Σ a_i x_i + b c`, `0 ≤ a_i < p_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LElement {
    weights: Vec<u32>,
    pub a: Vec<i64>,
    pub b: i64,
}

impl LElement {
    fn data(&self) -> GLData {
        GLData { weights: self.weights.clone(), d: 1 }
    }

    fn same(&self, other: &LElement) -> Result<()> {
        if self.weights == other.weights {
            Ok(())
        } else {
            Err(Error::MixedWeights)
        }
    }

    pub fn add(&self, other: &LElement) -> Result<LElement> {
        self.same(other)?;
        let a: Vec<i64> = self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect();
        Ok(self.data().element(&a, self.b + other.b))
    }

    pub fn neg(&self) -> LElement {
        let a: Vec<i64> = self.a.iter().map(|x| -x).collect();
        self.data().element(&a, -self.b)
    }

    pub fn sub(&self, other: &LElement) -> Result<LElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> LElement {
        let a: Vec<i64> = self.a.iter().map(|x| k * x).collect();
        self.data().element(&a, k * self.b)
    }

    pub fn geq_zero(&self) -> bool {
        self.b >= 0
    }

    /// `self ≤ other` iff `other − self` lies in the positive monoid.
    pub fn leq(&self, other: &LElement) -> Result<bool> {
        Ok(other.sub(self)?.geq_zero())
    }
}

impl fmt::Display for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.a.iter().enumerate() {
            if *a != 0 {
                write!(f, "{a}x{}+", i + 1)?;
            }
        }
        write!(f, "{}c", self.b)
    }
}

impl Serialize for LElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("a", &self.a)?;
        m.serialize_entry("b", &self.b)?;
        m.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanVerdict {
    pub certified: bool,
    /// Pairs `(k, x)` examined.
    pub checked: usize,
    pub counterexample: Option<(i64, LElement)>,
}

/// For `k ∈ [−K, K]` and `x ∈ [0, dc]`, checks that `0 ≤ x + kω` and
/// `x + kω ≤ dc + ω` never hold together.
pub fn canonical_nu_formal_scan(data: &GLData, k_range: i64) -> ScanVerdict {
    let omega = data.omega();
    let top = data.c().scale(i64::from(data.d())).add(&omega).expect("same weights");
    let interval = data.interval_zero_dc();
    let hits: Vec<(i64, LElement)> = (-k_range..=k_range)
        .into_par_iter()
        .filter_map(|k| {
            let shift = omega.scale(k);
            interval.iter().find_map(|x| {
                let y = x.add(&shift).expect("same weights");
                let cond_a = y.geq_zero();
                let cond_b = y.leq(&top).expect("same weights");
                (cond_a && cond_b).then(|| (k, x.clone()))
            })
        })
        .collect();
    ScanVerdict {
        certified: hits.is_empty(),
        checked: interval.len() * (2 * k_range as usize + 1),
        counterexample: hits.into_iter().next(),
    }
}
