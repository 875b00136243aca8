//! New algebras from old: replicated algebras, idempotent corners, tensor
//! products, and the Hom-vanishing gate for SGC truncations.

use crate::error::{Error, Result};
use crate::matrix::{Mat, Subspace};
use crate::nakayama::KupischSeries;
use crate::oracle::algebra::{BasicAlgebra, SVec, StructureConstantAlgebra};
use crate::oracle::homological::Oracle;
use crate::oracle::module::{HomSpace, Morphism};
use crate::rational::Q;

fn push(out: &mut SVec, idx: usize, c: Q) {
    if !c.is_zero() {
        out.push((idx, c));
    }
}

fn normalise(mut v: SVec) -> SVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, d)) if *j == i => *d += &c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// The `m`-replicated algebra: `m + 1` diagonal copies of `A` and `m`
/// subdiagonal copies of `DA`, with `DA · DA = 0`.
///
/// Basis: layer `i` copy of `b_k` at `i·d + k`, then the dual basis vector
/// `φ_k` of the copy between layers `i + 1` and `i` at `(m+1)·d + i·d + k`.
/// The idempotent of vertex `x` in layer `i` is listed at `i·n + x`.
pub fn build_replicated(base: &StructureConstantAlgebra, m: usize) -> StructureConstantAlgebra {
    let d = base.dim();
    let total = (2 * m + 1) * d;
    let a_idx = |i: usize, k: usize| i * d + k;
    let f_idx = |i: usize, k: usize| (m + 1) * d + i * d + k;
    let mut labels = Vec::with_capacity(total);
    for i in 0..=m {
        labels.extend(base.labels().iter().map(|l| format!("{l}@{i}")));
    }
    for i in 0..m {
        labels.extend(base.labels().iter().map(|l| format!("D{l}@{i}")));
    }
    // left and right actions of A on DA in the dual basis:
    // b_p · φ_k = Σ_q c(q,p;k) φ_q and φ_k · b_p = Σ_q c(p,q;k) φ_q
    let mut left = vec![vec![Vec::new(); d]; d];
    let mut right = vec![vec![Vec::new(); d]; d];
    for p in 0..d {
        for q in 0..d {
            for (k, c) in base.mult_basis(q, p) {
                left[p][*k].push((q, c.clone()));
            }
            for (k, c) in base.mult_basis(p, q) {
                right[*k][p].push((q, c.clone()));
            }
        }
    }
    let mut mult = vec![vec![Vec::new(); total]; total];
    for i in 0..=m {
        for p in 0..d {
            for q in 0..d {
                mult[a_idx(i, p)][a_idx(i, q)] =
                    base.mult_basis(p, q).iter().map(|(k, c)| (a_idx(i, *k), c.clone())).collect();
            }
        }
    }
    for i in 0..m {
        for p in 0..d {
            for k in 0..d {
                let mut l = Vec::new();
                for (q, c) in &left[p][k] {
                    push(&mut l, f_idx(i, *q), c.clone());
                }
                mult[a_idx(i + 1, p)][f_idx(i, k)] = normalise(l);
                let mut r = Vec::new();
                for (q, c) in &right[k][p] {
                    push(&mut r, f_idx(i, *q), c.clone());
                }
                mult[f_idx(i, k)][a_idx(i, p)] = normalise(r);
            }
        }
    }
    let mut unit = vec![Q::ZERO; total];
    for i in 0..=m {
        for k in 0..d {
            unit[a_idx(i, k)] = base.unit()[k].clone();
        }
    }
    let idempotents = (0..=m)
        .flat_map(|i| {
            base.idempotents().iter().map(move |e| {
                let mut v = vec![Q::ZERO; total];
                for k in 0..d {
                    v[a_idx(i, k)] = e[k].clone();
                }
                v
            })
        })
        .collect();
    StructureConstantAlgebra::new_unchecked(labels, mult, unit, idempotents)
}

/// The corner algebra `eAe` for `e` the sum of the chosen idempotents.
pub fn corner(a: &StructureConstantAlgebra, chosen: &[usize]) -> Result<StructureConstantAlgebra> {
    let dim = a.dim();
    let mut e = vec![Q::ZERO; dim];
    for &x in chosen {
        for (k, c) in a.idempotents()[x].iter().enumerate() {
            e[k] += c;
        }
    }
    let rows: Vec<Vec<Q>> = (0..dim).map(|k| a.mul(&a.mul(&e, &a.basis_vector(k)), &e)).collect();
    let sub = Subspace::span(&Mat::from_rows(rows, dim));
    let basis = sub.basis().row_vecs();
    let r = basis.len();
    let coords = |v: &[Q]| -> SVec {
        sub.coords(v)
            .expect("closed under multiplication")
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    };
    let mut mult = vec![vec![Vec::new(); r]; r];
    for i in 0..r {
        for j in 0..r {
            mult[i][j] = coords(&a.mul(&basis[i], &basis[j]));
        }
    }
    let dense = |s: SVec| {
        let mut v = vec![Q::ZERO; r];
        for (i, c) in s {
            v[i] = c;
        }
        v
    };
    let labels = (0..r).map(|i| format!("v{i}")).collect();
    let unit = dense(coords(&e));
    let idempotents = chosen.iter().map(|&x| dense(coords(&a.idempotents()[x]))).collect();
    StructureConstantAlgebra::new(labels, mult, unit, idempotents)
}

/// `A ⊗_K B` with basis `b_i ⊗ b'_j` at `i·dim B + j`.
pub fn tensor(a: &StructureConstantAlgebra, b: &StructureConstantAlgebra) -> StructureConstantAlgebra {
    let (da, db) = (a.dim(), b.dim());
    let idx = |i: usize, j: usize| i * db + j;
    let mut labels = Vec::with_capacity(da * db);
    for la in a.labels() {
        for lb in b.labels() {
            labels.push(format!("{la}⊗{lb}"));
        }
    }
    let mut mult = vec![vec![Vec::new(); da * db]; da * db];
    for i in 0..da {
        for k in 0..da {
            let ab = a.mult_basis(i, k);
            if ab.is_empty() {
                continue;
            }
            for j in 0..db {
                for l in 0..db {
                    let bb = b.mult_basis(j, l);
                    let mut out = Vec::new();
                    for (p, c) in ab {
                        for (q, e) in bb {
                            push(&mut out, idx(*p, *q), c * e);
                        }
                    }
                    mult[idx(i, j)][idx(k, l)] = normalise(out);
                }
            }
        }
    }
    let kron = |u: &[Q], v: &[Q]| -> Vec<Q> { u.iter().flat_map(|x| v.iter().map(move |y| x * y)).collect() };
    let unit = kron(a.unit(), b.unit());
    let idempotents =
        a.idempotents().iter().flat_map(|e| b.idempotents().iter().map(|f| kron(e, f)).collect::<Vec<_>>()).collect();
    StructureConstantAlgebra::new_unchecked(labels, mult, unit, idempotents)
}

/// Outcome of testing `Hom_A(DA, eA) = 0` where `e` sums the vertices whose
/// projective is not injective.
#[derive(Debug, Clone)]
pub struct Gate {
    pub e: Vec<usize>,
    pub gate: bool,
    /// `(y, x, f)` with `0 ≠ f: I_y -> P_x`.
    pub witness: Option<(usize, usize, Morphism)>,
}

pub fn hom_vanishing_gate(o: &Oracle) -> Gate {
    let e: Vec<usize> = (0..o.n()).filter(|&x| o.projective_is_injective(x).is_none()).collect();
    for &x in &e {
        for y in 0..o.n() {
            let h = HomSpace::new(o.alg(), o.injective(y), o.projective(x));
            if let Some(f) = h.basis.into_iter().next() {
                return Gate { e, gate: false, witness: Some((y, x, f)) };
            }
        }
    }
    Gate { e, gate: true, witness: None }
}

/// `e^{[m]} A^{(m)} e^{[m]}` with `e^{[m]} = diag(e, ..., e, 1)`.
pub fn sgc_truncation(base: &StructureConstantAlgebra, m: usize) -> Result<StructureConstantAlgebra> {
    let o = Oracle::from_sca(base)?;
    let g = hom_vanishing_gate(&o);
    if let Some((y, x, _)) = g.witness {
        return Err(Error::GateFailed { injective: y + 1, projective: x + 1 });
    }
    let alg = o.alg().sca();
    let n = o.n();
    let rep = build_replicated(alg, m);
    let chosen: Vec<usize> =
        (0..m).flat_map(|i| g.e.iter().map(move |&x| i * n + x)).chain((0..n).map(|x| m * n + x)).collect();
    corner(&rep, &chosen)
}

/// The Kupisch series of a Nakayama algebra with linear quiver, read off
/// as the dimensions of the indecomposable projectives from the source.
pub fn recover_kupisch(a: &BasicAlgebra) -> Result<KupischSeries> {
    let n = a.n();
    let bad = || Error::InvalidKupisch("quiver is not linearly oriented of type A".into());
    let mut next = vec![None; n];
    let mut indeg = vec![0; n];
    for &(s, t) in a.arrows() {
        if next[s].is_some() || s == t {
            return Err(bad());
        }
        next[s] = Some(t);
        indeg[t] += 1;
    }
    if indeg.iter().any(|&d| d > 1) {
        return Err(bad());
    }
    let mut v = (0..n).find(|&x| indeg[x] == 0).ok_or_else(bad)?;
    let mut order = vec![v];
    while let Some(w) = next[v] {
        order.push(w);
        v = w;
    }
    if order.len() != n {
        return Err(bad());
    }
    let c = order.iter().map(|&x| (0..n).map(|y| a.block(x, y).len()).sum()).collect();
    KupischSeries::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dim::Dim;
    use crate::oracle::presentation::{compile_basic, Presentation};

    fn basic(t: &str) -> BasicAlgebra {
        compile_basic(&Presentation::parse(t).unwrap(), 64).unwrap()
    }

    fn same_up_to_relabelling(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
        fn go(a: &[Vec<usize>], b: &[Vec<usize>], perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = perm.len();
            if k == a.len() {
                return true;
            }
            for v in 0..a.len() {
                if used[v] {
                    continue;
                }
                perm.push(v);
                let ok = (0..=k).all(|i| a[perm[i]][perm[k]] == b[i][k] && a[perm[k]][perm[i]] == b[k][i]);
                if ok {
                    used[v] = true;
                    if go(a, b, perm, used) {
                        return true;
                    }
                    used[v] = false;
                }
                perm.pop();
            }
            false
        }
        a.len() == b.len() && go(a, b, &mut Vec::new(), &mut vec![false; a.len()])
    }

    #[test]
    fn replicated_is_an_algebra() {
        for t in ["arrows: a:1->2", "arrows: a:1->2; b:1->2", "arrows: a:1->2; b:2->3; c:3->2\nrelations: b*c; c*b"] {
            let a = basic(t);
            for m in 0..=2 {
                let r = build_replicated(a.sca(), m);
                assert_eq!(r.dim(), (2 * m + 1) * a.dim());
                r.validate().unwrap();
            }
        }
    }

    #[test]
    fn linear_a2_replicated_twice_is_t63() {
        let a = basic("arrows: a:1->2");
        let r = BasicAlgebra::from_sca(&build_replicated(a.sca(), 2)).unwrap();
        assert_eq!(recover_kupisch(&r).unwrap(), KupischSeries::tnl(6, 3).unwrap());
    }

    #[test]
    fn kronecker_replicated_matches_presentation() {
        let a = basic("arrows: a:1->2; b:1->2");
        let o = Oracle::from_sca(&build_replicated(a.sca(), 1)).unwrap();
        let explicit = Oracle::new(basic(
            "arrows: a1:1->2; b1:1->2; a2:2->3; b2:2->3; a3:3->4; b3:3->4\n\
             relations: a1*a2; b1*b2; a1*b2 - b1*a2; a2*a3; b2*b3; a2*b3 - b2*a3; len>=3",
        ));
        assert_eq!(o.alg().dim(), explicit.alg().dim());
        assert!(same_up_to_relabelling(&o.alg().cartan(), &explicit.alg().cartan()));
        let (mut r1, mut r2) = (o.report(10), explicit.report(10));
        assert_eq!(r1.projective_injectives.len(), r2.projective_injectives.len());
        r1.projective_injectives.clear();
        r2.projective_injectives.clear();
        assert_eq!(r1, r2);
        assert_eq!((r1.domdim, r1.gldim), (Dim::Finite(2), Dim::Finite(3)));
    }

    #[test]
    fn gate_and_truncation() {
        // 1 -> 2 <- 3 has no projective-injectives
        let a = basic("arrows: a:1->2; b:3->2");
        let o = Oracle::new(a.clone());
        let g = hom_vanishing_gate(&o);
        assert_eq!((g.e.len(), g.gate), (3, true));
        let t = sgc_truncation(a.sca(), 1).unwrap();
        assert_eq!(t.dim(), 3 * a.dim());

        let t43 = compile_basic(&Presentation::nakayama(&KupischSeries::tnl(4, 3).unwrap()), 64).unwrap();
        let g = hom_vanishing_gate(&Oracle::new(t43.clone()));
        assert!(g.gate);
        assert_eq!(g.e, vec![2, 3]);
        let t = BasicAlgebra::from_sca(&sgc_truncation(t43.sca(), 1).unwrap()).unwrap();
        assert_eq!(recover_kupisch(&t).unwrap(), KupischSeries::tnl(6, 3).unwrap());

        // self-injective base: only the last layer survives
        let si = basic("arrows: a:1->2; b:2->1\nrelations: a*b; b*a");
        let g = hom_vanishing_gate(&Oracle::new(si.clone()));
        assert!(g.e.is_empty() && g.gate);
        assert_eq!(sgc_truncation(si.sca(), 2).unwrap().dim(), si.dim());
    }

    #[test]
    fn tensor_dimensions() {
        let a = basic("arrows: a:1->2");
        let t = tensor(a.sca(), a.sca());
        t.validate().unwrap();
        let o = Oracle::from_sca(&t).unwrap();
        assert_eq!(o.alg().dim(), 9);
        assert_eq!(o.gldim(10), Dim::Finite(2));
    }
}
