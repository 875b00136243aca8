//! Right modules as quiver representations and their morphisms.
//!
//! A module stores a vector space per vertex (`M e_x`) and, for each arrow
//! `α: x -> y`, the matrix of `m |-> m·α` from `M e_x` to `M e_y` in the
//! row-vector convention.

use crate::error::{Error, Result};
use crate::matrix::{Mat, Subspace};
use crate::oracle::algebra::BasicAlgebra;
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Module {
    pub dims: Vec<usize>,
    pub maps: Vec<Mat>,
}

/// A module map, one matrix per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub mats: Vec<Mat>,
}

impl Module {
    pub fn zero(alg: &BasicAlgebra) -> Module {
        Module { dims: vec![0; alg.n()], maps: alg.arrows().iter().map(|_| Mat::zeros(0, 0)).collect() }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn simple(alg: &BasicAlgebra, x: usize) -> Module {
        let mut dims = vec![0; alg.n()];
        dims[x] = 1;
        let maps = alg.arrows().iter().map(|&(s, t)| Mat::zeros(dims[s], dims[t])).collect();
        Module { dims, maps }
    }

    /// `P_x = e_x A` with the basis `block(x, y)` at vertex `y`.
    pub fn projective(alg: &BasicAlgebra, x: usize) -> Module {
        let n = alg.n();
        let dims: Vec<usize> = (0..n).map(|y| alg.block(x, y).len()).collect();
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| {
                let mut m = Mat::zeros(dims[s], dims[t]);
                for (r, &b) in alg.block(x, s).iter().enumerate() {
                    for (c, v) in alg.right_arrow(b, k) {
                        m.set(r, alg.pos(*c), v.clone());
                    }
                }
                m
            })
            .collect();
        Module { dims, maps }
    }

    /// `D M` as a module over the opposite algebra.
    pub fn dual(&self) -> Module {
        Module { dims: self.dims.clone(), maps: self.maps.iter().map(Mat::transpose).collect() }
    }

    /// The matrix by which a path word acts, from `M e_src` to `M e_tgt`.
    pub fn word_action(&self, alg: &BasicAlgebra, src: usize, word: &[usize]) -> Mat {
        let mut m = Mat::identity(self.dims[src]);
        for &k in word {
            m = m.mul(&self.maps[k]);
        }
        let _ = alg;
        m
    }

    /// Action of basis element `b` on the whole module, in coordinates
    /// ordered vertex by vertex.
    pub fn action_matrix(&self, alg: &BasicAlgebra, b: usize) -> Mat {
        let w = &alg.basis()[b];
        let total = self.total_dim();
        let offset: Vec<usize> = self
            .dims
            .iter()
            .scan(0, |acc, &d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let block = self.word_action(alg, w.src, &w.word);
        let mut out = Mat::zeros(total, total);
        for i in 0..block.rows() {
            for j in 0..block.cols() {
                out.set(offset[w.src] + i, offset[w.tgt] + j, block.get(i, j).clone());
            }
        }
        out
    }

    /// Shapes match and the arrow matrices satisfy every relation of the
    /// algebra.
    pub fn validate(&self, alg: &BasicAlgebra) -> Result<()> {
        if self.dims.len() != alg.n() || self.maps.len() != alg.arrows().len() {
            return Err(Error::InvalidModule("shape does not match the quiver".into()));
        }
        for (k, &(s, t)) in alg.arrows().iter().enumerate() {
            if self.maps[k].rows() != self.dims[s] || self.maps[k].cols() != self.dims[t] {
                return Err(Error::InvalidModule(format!("arrow {k} has the wrong shape")));
            }
        }
        let acts: Vec<Mat> = alg.basis().iter().map(|w| self.word_action(alg, w.src, &w.word)).collect();
        for (b, w) in alg.basis().iter().enumerate() {
            for (k, &(s, t)) in alg.arrows().iter().enumerate() {
                if w.tgt != s {
                    continue;
                }
                let lhs = acts[b].mul(&self.maps[k]);
                let mut rhs = Mat::zeros(self.dims[w.src], self.dims[t]);
                for (c, v) in alg.right_arrow(b, k) {
                    rhs = rhs.add(&acts[*c].scale(v));
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!("relation fails for basis element {b} times arrow {k}")));
                }
            }
        }
        Ok(())
    }

    pub fn direct_sum(alg: &BasicAlgebra, parts: &[&Module]) -> Module {
        let n = alg.n();
        let dims = (0..n).map(|x| parts.iter().map(|p| p.dims[x]).sum()).collect();
        let maps = (0..alg.arrows().len())
            .map(|k| Mat::block_diag(&parts.iter().map(|p| &p.maps[k]).collect::<Vec<_>>()))
            .collect();
        Module { dims, maps }
    }

    /// `rad M = M·J` at vertex `x`.
    pub fn radical_at(&self, alg: &BasicAlgebra, x: usize) -> Subspace {
        let mut rows = Mat::zeros(0, self.dims[x]);
        for (k, &(_, t)) in alg.arrows().iter().enumerate() {
            if t == x {
                rows = rows.vstack(&self.maps[k]);
            }
        }
        Subspace::span(&rows)
    }

    /// Dimension vector of the top `M / rad M`.
    pub fn top_dims(&self, alg: &BasicAlgebra) -> Vec<usize> {
        (0..alg.n()).map(|x| self.dims[x] - self.radical_at(alg, x).dim()).collect()
    }

    /// Socle at vertex `x`: vectors killed by every arrow out of `x`.
    pub fn socle_at(&self, alg: &BasicAlgebra, x: usize) -> Mat {
        let mut out = Mat::zeros(self.dims[x], 0);
        for (k, &(s, _)) in alg.arrows().iter().enumerate() {
            if s == x {
                out = out.hstack(&self.maps[k]);
            }
        }
        out.left_kernel()
    }

    pub fn socle_dims(&self, alg: &BasicAlgebra) -> Vec<usize> {
        (0..alg.n()).map(|x| self.socle_at(alg, x).rows()).collect()
    }
}

impl Morphism {
    pub fn zero(m: &Module, n: &Module) -> Morphism {
        Morphism { mats: m.dims.iter().zip(&n.dims).map(|(&a, &b)| Mat::zeros(a, b)).collect() }
    }

    pub fn identity(m: &Module) -> Morphism {
        Morphism { mats: m.dims.iter().map(|&d| Mat::identity(d)).collect() }
    }

    /// First `self`, then `g`.
    pub fn then(&self, g: &Morphism) -> Morphism {
        Morphism { mats: self.mats.iter().zip(&g.mats).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn dual(&self) -> Morphism {
        Morphism { mats: self.mats.iter().map(Mat::transpose).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Mat::is_zero)
    }

    pub fn add(&self, g: &Morphism) -> Morphism {
        Morphism { mats: self.mats.iter().zip(&g.mats).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &Q) -> Morphism {
        Morphism { mats: self.mats.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_module_map(&self, alg: &BasicAlgebra, m: &Module, n: &Module) -> bool {
        alg.arrows().iter().enumerate().all(|(k, &(s, t))| m.maps[k].mul(&self.mats[t]) == self.mats[s].mul(&n.maps[k]))
    }

    pub fn flatten(&self) -> Vec<Q> {
        self.mats.iter().flat_map(|m| (0..m.rows()).flat_map(move |i| m.row(i).to_vec())).collect()
    }

    /// Block-diagonal map between direct sums.
    pub fn direct_sum(parts: &[&Morphism]) -> Morphism {
        let n = parts.first().map_or(0, |p| p.mats.len());
        Morphism {
            mats: (0..n).map(|x| Mat::block_diag(&parts.iter().map(|p| &p.mats[x]).collect::<Vec<_>>())).collect(),
        }
    }
}

/// Kernel of `f: M -> N` with its inclusion.
pub fn kernel(alg: &BasicAlgebra, m: &Module, f: &Morphism) -> (Module, Morphism) {
    let n = alg.n();
    let incl: Vec<Mat> = (0..n).map(|x| f.mats[x].left_kernel()).collect();
    let subs: Vec<Subspace> = incl.iter().map(|k| Subspace::from_independent(k.clone())).collect();
    let maps =
        alg.arrows().iter().enumerate().map(|(k, &(s, t))| subs[t].coords_matrix(&incl[s].mul(&m.maps[k]))).collect();
    let dims = incl.iter().map(Mat::rows).collect();
    (Module { dims, maps }, Morphism { mats: incl })
}

/// Cokernel of `f: M -> N` with the projection from `N`.
pub fn cokernel(alg: &BasicAlgebra, nmod: &Module, f: &Morphism) -> (Module, Morphism) {
    let n = alg.n();
    let subs: Vec<Subspace> = (0..n).map(|x| Subspace::span(&f.mats[x])).collect();
    let proj: Vec<Mat> = subs.iter().map(Subspace::quotient_map).collect();
    let comps: Vec<Vec<usize>> = subs.iter().map(Subspace::complement_positions).collect();
    let maps =
        alg.arrows().iter().enumerate().map(|(k, &(s, t))| nmod.maps[k].select_rows(&comps[s]).mul(&proj[t])).collect();
    let dims = comps.iter().map(Vec::len).collect();
    (Module { dims, maps }, Morphism { mats: proj })
}

/// The map `P_x -> M` sending `e_x` to `m ∈ M e_x`.
pub fn map_from_projective(alg: &BasicAlgebra, x: usize, target: &Module, m: &[Q]) -> Morphism {
    let n = alg.n();
    let mats = (0..n)
        .map(|y| {
            let blk = alg.block(x, y);
            let mut out = Mat::zeros(blk.len(), target.dims[y]);
            for (r, &b) in blk.iter().enumerate() {
                let mut v = m.to_vec();
                for &k in &alg.basis()[b].word {
                    v = target.maps[k].apply(&v);
                }
                for (c, val) in v.into_iter().enumerate() {
                    out.set(r, c, val);
                }
            }
            out
        })
        .collect();
    Morphism { mats }
}

/// A projective cover `⊕ P_{tops[i]} -> M`.
#[derive(Debug, Clone)]
pub struct Cover {
    pub tops: Vec<usize>,
    pub module: Module,
    pub map: Morphism,
}

pub fn projective_cover(alg: &BasicAlgebra, m: &Module) -> Cover {
    let mut tops = Vec::new();
    let mut parts = Vec::new();
    let mut comps = Vec::new();
    for x in 0..alg.n() {
        let rad = m.radical_at(alg, x);
        for j in rad.complement_positions() {
            let mut v = vec![Q::ZERO; m.dims[x]];
            v[j] = Q::ONE;
            tops.push(x);
            parts.push(Module::projective(alg, x));
            comps.push(map_from_projective(alg, x, m, &v));
        }
    }
    let refs: Vec<&Module> = parts.iter().collect();
    let module = Module::direct_sum(alg, &refs);
    // stack the component maps vertically
    let mats =
        (0..alg.n()).map(|y| comps.iter().fold(Mat::zeros(0, m.dims[y]), |acc, f| acc.vstack(&f.mats[y]))).collect();
    Cover { tops, module, map: Morphism { mats } }
}

/// A basis of `Hom_A(M, N)` obtained by solving the commutation equations
/// arrow by arrow.
pub fn hom_basis(alg: &BasicAlgebra, m: &Module, nmod: &Module) -> Vec<Morphism> {
    let n = alg.n();
    let mut offset = vec![0; n + 1];
    for x in 0..n {
        offset[x + 1] = offset[x] + m.dims[x] * nmod.dims[x];
    }
    let unknowns = offset[n];
    if unknowns == 0 {
        return Vec::new();
    }
    let eqs: usize = alg.arrows().iter().map(|&(s, t)| m.dims[s] * nmod.dims[t]).sum();
    let mut c = Mat::zeros(unknowns, eqs);
    let mut e0 = 0;
    for (k, &(s, t)) in alg.arrows().iter().enumerate() {
        let (ma, na) = (&m.maps[k], &nmod.maps[k]);
        // (M_a f_t - f_s N_a)[i][j] = 0
        for i in 0..m.dims[s] {
            for j in 0..nmod.dims[t] {
                let e = e0 + i * nmod.dims[t] + j;
                for kk in 0..m.dims[t] {
                    let v = ma.get(i, kk);
                    if !v.is_zero() {
                        let u = offset[t] + kk * nmod.dims[t] + j;
                        *c.get_mut(u, e) += v;
                    }
                }
                for kk in 0..nmod.dims[s] {
                    let v = na.get(kk, j);
                    if !v.is_zero() {
                        let u = offset[s] + i * nmod.dims[s] + kk;
                        *c.get_mut(u, e) -= v;
                    }
                }
            }
        }
        e0 += m.dims[s] * nmod.dims[t];
    }
    let ker = c.left_kernel();
    (0..ker.rows())
        .map(|r| {
            let row = ker.row(r);
            let mats = (0..n)
                .map(|x| {
                    let (a, b) = (m.dims[x], nmod.dims[x]);
                    let mut mat = Mat::zeros(a, b);
                    for i in 0..a {
                        for j in 0..b {
                            mat.set(i, j, row[offset[x] + i * b + j].clone());
                        }
                    }
                    mat
                })
                .collect();
            Morphism { mats }
        })
        .collect()
}

/// A Hom space with coordinates for its elements.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub basis: Vec<Morphism>,
    span: Subspace,
}

impl HomSpace {
    pub fn new(alg: &BasicAlgebra, m: &Module, n: &Module) -> HomSpace {
        let basis = hom_basis(alg, m, n);
        let width: usize = m.dims.iter().zip(&n.dims).map(|(a, b)| a * b).sum();
        let rows: Vec<Vec<Q>> = basis.iter().map(Morphism::flatten).collect();
        let span = Subspace::from_independent(Mat::from_rows(rows, width));
        HomSpace { basis, span }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, f: &Morphism) -> Vec<Q> {
        self.span.coords(&f.flatten()).expect("map outside the Hom space")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::presentation::{compile_basic, Presentation};

    fn alg(t: &str) -> BasicAlgebra {
        compile_basic(&Presentation::parse(t).unwrap(), 64).unwrap()
    }

    #[test]
    fn projectives_are_modules_and_covers_are_iso() {
        for t in [
            "arrows: a:1->2; b:2->3; c:3->4\nrelations: len>=3",
            "arrows: a:1->2; b:2->3; c:3->2\nrelations: b*c; c*b",
            "arrows: a:1->2; b:1->2",
            "arrows: a:1->2; b:2->4; c:1->3; d:3->4\nrelations: a*b - c*d",
        ] {
            let a = alg(t);
            for x in 0..a.n() {
                let p = Module::projective(&a, x);
                p.validate(&a).unwrap();
                assert_eq!(p.total_dim(), (0..a.n()).map(|y| a.block(x, y).len()).sum::<usize>());
                let c = projective_cover(&a, &p);
                assert_eq!(c.tops, vec![x]);
                assert!(c.map.is_module_map(&a, &c.module, &p));
                let s = Module::simple(&a, x);
                let cs = projective_cover(&a, &s);
                assert!(cs.map.is_module_map(&a, &cs.module, &s));
                let (k, inc) = kernel(&a, &cs.module, &cs.map);
                k.validate(&a).unwrap();
                assert!(inc.is_module_map(&a, &k, &cs.module));
                assert_eq!(k.total_dim() + 1, p.total_dim());
                let (q, pr) = cokernel(&a, &cs.module, &inc);
                q.validate(&a).unwrap();
                assert!(pr.is_module_map(&a, &cs.module, &q));
                assert_eq!(q.dims, s.dims);
                // action matrices respect the multiplication table
                for i in 0..a.dim() {
                    for j in 0..a.dim() {
                        let lhs = p.action_matrix(&a, i).mul(&p.action_matrix(&a, j));
                        let mut rhs = Mat::zeros(p.total_dim(), p.total_dim());
                        for (k, c) in a.sca().mult_basis(i, j) {
                            rhs = rhs.add(&p.action_matrix(&a, *k).scale(c));
                        }
                        if a.basis()[i].tgt == a.basis()[j].src {
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hom_dimensions_between_projectives() {
        let a = alg("arrows: a:1->2; b:2->3; c:3->4\nrelations: len>=3");
        for x in 0..4 {
            for y in 0..4 {
                let h = HomSpace::new(&a, &Module::projective(&a, x), &Module::projective(&a, y));
                // Hom(e_x A, e_y A) = e_y A e_x
                assert_eq!(h.dim(), a.block(y, x).len());
                for f in &h.basis {
                    assert!(f.is_module_map(&a, &Module::projective(&a, x), &Module::projective(&a, y)));
                }
            }
        }
    }
}
