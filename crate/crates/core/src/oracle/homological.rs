//! Minimal resolutions and the homological dimensions read off them.

use serde::Serialize;

use crate::dim::Dim;
use crate::error::Result;
use crate::matrix::Subspace;
use crate::oracle::algebra::{BasicAlgebra, StructureConstantAlgebra};
use crate::oracle::module::{cokernel, kernel, projective_cover, Module, Morphism};

/// An algebra together with its opposite and the indecomposable
/// projectives and injectives on both.
#[derive(Debug, Clone)]
pub struct Oracle {
    alg: BasicAlgebra,
    op: BasicAlgebra,
    proj: Vec<Module>,
    inj: Vec<Module>,
    rho: Vec<Morphism>,
    lambda: Vec<Morphism>,
    /// `proj_inj[x] = Some(y)` when `P_x ≅ I_y`.
    proj_inj: Vec<Option<usize>>,
    /// `inj_proj[y] = Some(x)` when `I_y ≅ P_x`.
    inj_proj: Vec<Option<usize>>,
}

/// An injective envelope `M -> ⊕ I_{socs[i]}`.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub socs: Vec<usize>,
    pub module: Module,
    pub map: Morphism,
}

/// A minimal injective coresolution `M -> I^0 -> I^1 -> ...` or projective
/// resolution `... -> P_1 -> P_0 -> M`.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub terms: Vec<Module>,
    /// Vertex labels of the indecomposable summands of each term.
    pub summands: Vec<Vec<usize>>,
    /// `I^j -> I^{j+1}` for coresolutions, `P_{j+1} -> P_j` for resolutions.
    pub differentials: Vec<Morphism>,
    pub augmentation: Morphism,
    pub complete: bool,
    pub bound: usize,
}

impl Resolution {
    /// Length if the resolution terminated.
    pub fn length(&self) -> Dim {
        if self.complete {
            Dim::Finite(self.terms.len().saturating_sub(1) as u32)
        } else {
            Dim::Unbounded { bound: self.bound }
        }
    }

    /// Number of leading terms satisfying `good`.
    fn leading(&self, good: impl Fn(usize) -> bool) -> Dim {
        match self.summands.iter().position(|s| !s.iter().all(|&v| good(v))) {
            Some(k) => Dim::Finite(k as u32),
            None if self.complete => Dim::Infinite,
            None => Dim::Unbounded { bound: self.bound },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologicalReport {
    pub gldim: Dim,
    pub idim_right: Dim,
    pub idim_left: Dim,
    pub domdim: Dim,
    pub domdim_left: Dim,
    /// Codominant dimension of `DA`.
    pub codomdim_dual: Dim,
    pub qf2: bool,
    pub qf3: bool,
    /// Vertices `x` with `P_x` injective.
    pub projective_injectives: Vec<usize>,
}

fn rho_maps(alg: &BasicAlgebra, proj: &[Module]) -> Vec<Morphism> {
    // left multiplication by arrow k: x -> y, as a map P_y -> P_x
    alg.arrows()
        .iter()
        .enumerate()
        .map(|(k, &(x, y))| {
            let mats = (0..alg.n())
                .map(|z| {
                    let mut m = crate::matrix::Mat::zeros(proj[y].dims[z], proj[x].dims[z]);
                    for (r, &b) in alg.block(y, z).iter().enumerate() {
                        for (c, v) in alg.left_arrow(b, k) {
                            m.set(r, alg.pos(*c), v.clone());
                        }
                    }
                    m
                })
                .collect();
            Morphism { mats }
        })
        .collect()
}

impl Oracle {
    pub fn new(alg: BasicAlgebra) -> Oracle {
        let op = alg.opposite();
        let n = alg.n();
        let proj: Vec<Module> = (0..n).map(|x| Module::projective(&alg, x)).collect();
        let proj_op: Vec<Module> = (0..n).map(|x| Module::projective(&op, x)).collect();
        let inj: Vec<Module> = proj_op.iter().map(Module::dual).collect();
        let rho = rho_maps(&alg, &proj);
        let lambda = rho_maps(&op, &proj_op).iter().map(Morphism::dual).collect();
        let mut o = Oracle { alg, op, proj, inj, rho, lambda, proj_inj: vec![None; n], inj_proj: vec![None; n] };
        for x in 0..n {
            let env = o.envelope(&o.proj[x]);
            if env.module.total_dim() == o.proj[x].total_dim() {
                o.proj_inj[x] = Some(env.socs[0]);
                o.inj_proj[env.socs[0]] = Some(x);
            }
        }
        o
    }

    pub fn from_sca(sca: &StructureConstantAlgebra) -> Result<Oracle> {
        Ok(Oracle::new(BasicAlgebra::from_sca(sca)?))
    }

    pub fn alg(&self) -> &BasicAlgebra {
        &self.alg
    }

    pub fn op_alg(&self) -> &BasicAlgebra {
        &self.op
    }

    pub fn n(&self) -> usize {
        self.alg.n()
    }

    pub fn opposite(&self) -> Oracle {
        Oracle::new(self.op.clone())
    }

    pub fn projective(&self, x: usize) -> &Module {
        &self.proj[x]
    }

    pub fn injective(&self, x: usize) -> &Module {
        &self.inj[x]
    }

    pub fn simple(&self, x: usize) -> Module {
        Module::simple(&self.alg, x)
    }

    /// `P_y -> P_x`, left multiplication by arrow `k: x -> y`.
    pub fn rho(&self, k: usize) -> &Morphism {
        &self.rho[k]
    }

    /// `I_y -> I_x`, the left action of arrow `k: x -> y` on `DA`.
    pub fn lambda(&self, k: usize) -> &Morphism {
        &self.lambda[k]
    }

    pub fn projective_is_injective(&self, x: usize) -> Option<usize> {
        self.proj_inj[x]
    }

    pub fn injective_is_projective(&self, y: usize) -> Option<usize> {
        self.inj_proj[y]
    }

    pub fn envelope(&self, m: &Module) -> Envelope {
        let c = projective_cover(&self.op, &m.dual());
        Envelope { socs: c.tops, module: c.module.dual(), map: c.map.dual() }
    }

    pub fn is_projective(&self, m: &Module) -> bool {
        projective_cover(&self.alg, m).module.total_dim() == m.total_dim()
    }

    pub fn is_injective(&self, m: &Module) -> bool {
        self.envelope(m).module.total_dim() == m.total_dim()
    }

    /// `Some(y)` when `M ≅ P_y`.
    pub fn as_indecomposable_projective(&self, m: &Module) -> Option<usize> {
        let c = projective_cover(&self.alg, m);
        (c.tops.len() == 1 && c.module.total_dim() == m.total_dim()).then(|| c.tops[0])
    }

    /// `Some(y)` when `M ≅ I_y`.
    pub fn as_indecomposable_injective(&self, m: &Module) -> Option<usize> {
        let e = self.envelope(m);
        (e.socs.len() == 1 && e.module.total_dim() == m.total_dim()).then(|| e.socs[0])
    }

    /// Minimal injective coresolution with at most `bound + 1` terms.
    pub fn coresolution(&self, m: &Module, bound: usize) -> Resolution {
        let mut res = Resolution {
            terms: Vec::new(),
            summands: Vec::new(),
            differentials: Vec::new(),
            augmentation: Morphism { mats: Vec::new() },
            complete: true,
            bound,
        };
        if m.is_zero() {
            return res;
        }
        let env = self.envelope(m);
        let mut cur = env.map.clone();
        res.augmentation = env.map;
        res.terms.push(env.module);
        res.summands.push(env.socs);
        loop {
            let last = res.terms.last().unwrap();
            let (c, pi) = cokernel(&self.alg, last, &cur);
            if c.is_zero() {
                break;
            }
            if res.terms.len() > bound {
                res.complete = false;
                break;
            }
            let env = self.envelope(&c);
            res.differentials.push(pi.then(&env.map));
            cur = env.map;
            res.terms.push(env.module);
            res.summands.push(env.socs);
        }
        res
    }

    /// Minimal projective resolution with at most `bound + 1` terms.
    pub fn resolution(&self, m: &Module, bound: usize) -> Resolution {
        let mut res = Resolution {
            terms: Vec::new(),
            summands: Vec::new(),
            differentials: Vec::new(),
            augmentation: Morphism { mats: Vec::new() },
            complete: true,
            bound,
        };
        if m.is_zero() {
            return res;
        }
        let cov = projective_cover(&self.alg, m);
        let mut cur = cov.map.clone();
        res.augmentation = cov.map;
        res.terms.push(cov.module);
        res.summands.push(cov.tops);
        loop {
            let last = res.terms.last().unwrap();
            let (k, inc) = kernel(&self.alg, last, &cur);
            if k.is_zero() {
                break;
            }
            if res.terms.len() > bound {
                res.complete = false;
                break;
            }
            let cov = projective_cover(&self.alg, &k);
            res.differentials.push(cov.map.then(&inc));
            cur = cov.map;
            res.terms.push(cov.module);
            res.summands.push(cov.tops);
        }
        res
    }

    pub fn idim(&self, m: &Module, bound: usize) -> Dim {
        self.coresolution(m, bound).length()
    }

    pub fn pdim(&self, m: &Module, bound: usize) -> Dim {
        self.resolution(m, bound).length()
    }

    /// Leading projective-injective terms of the minimal coresolution.
    pub fn domdim(&self, m: &Module, bound: usize) -> Dim {
        self.coresolution(m, bound).leading(|y| self.inj_proj[y].is_some())
    }

    /// Leading projective-injective terms of the minimal resolution.
    pub fn codomdim(&self, m: &Module, bound: usize) -> Dim {
        self.resolution(m, bound).leading(|x| self.proj_inj[x].is_some())
    }

    /// `sup` of the projective dimensions of the simples.
    pub fn gldim(&self, bound: usize) -> Dim {
        (0..self.n()).map(|x| self.pdim(&self.simple(x), bound)).fold(Dim::Finite(0), Dim::max)
    }

    /// `idim A_A` and `domdim A_A`.
    pub fn regular_dims(&self, bound: usize) -> (Dim, Dim) {
        let mut idim = Dim::Finite(0);
        let mut domdim = Dim::Infinite;
        for x in 0..self.n() {
            let r = self.coresolution(&self.proj[x], bound);
            idim = idim.max(r.length());
            domdim = domdim.min(r.leading(|y| self.inj_proj[y].is_some()));
        }
        (idim, domdim)
    }

    pub fn report(&self, bound: usize) -> HomologicalReport {
        let (idim_right, domdim) = self.regular_dims(bound);
        let (idim_left, domdim_left) = self.opposite().regular_dims(bound);
        let codomdim_dual = (0..self.n()).map(|y| self.codomdim(&self.inj[y], bound)).fold(Dim::Infinite, Dim::min);
        let qf2 = (0..self.n()).all(|x| self.proj[x].socle_dims(&self.alg).iter().sum::<usize>() == 1);
        HomologicalReport {
            gldim: self.gldim(bound),
            idim_right,
            idim_left,
            domdim,
            domdim_left,
            codomdim_dual,
            qf2,
            qf3: domdim != Dim::Finite(0),
            projective_injectives: (0..self.n()).filter(|&x| self.proj_inj[x].is_some()).collect(),
        }
    }
}

/// A bounded complex `C^start -> C^{start+1} -> ...`.
#[derive(Debug, Clone)]
pub struct ModuleComplex {
    pub start: i64,
    pub terms: Vec<Module>,
    /// `diffs[j]: terms[j] -> terms[j+1]`.
    pub diffs: Vec<Morphism>,
}

impl ModuleComplex {
    /// The coresolution `I^0 -> I^1 -> ...` placed in degrees `0, 1, ...`.
    pub fn from_coresolution(r: &Resolution) -> ModuleComplex {
        ModuleComplex { start: 0, terms: r.terms.clone(), diffs: r.differentials.clone() }
    }

    /// The resolution `... -> P_1 -> P_0` placed in degrees `..., -1, 0`.
    pub fn from_resolution(r: &Resolution) -> ModuleComplex {
        let k = r.terms.len();
        ModuleComplex {
            start: -(k as i64 - 1).max(0),
            terms: r.terms.iter().rev().cloned().collect(),
            diffs: r.differentials.iter().rev().cloned().collect(),
        }
    }

    pub fn is_complex(&self, alg: &BasicAlgebra) -> bool {
        self.diffs.iter().enumerate().all(|(j, d)| d.is_module_map(alg, &self.terms[j], &self.terms[j + 1]))
            && self.diffs.windows(2).all(|w| w[0].then(&w[1]).is_zero())
    }

    /// Nonzero cohomology modules with their degrees.
    pub fn cohomology(&self, alg: &BasicAlgebra) -> Vec<(i64, Module)> {
        let mut out = Vec::new();
        for j in 0..self.terms.len() {
            let c = &self.terms[j];
            let (z, inc) = match self.diffs.get(j) {
                Some(d) => kernel(alg, c, d),
                None => (c.clone(), Morphism::identity(c)),
            };
            let h = match j.checked_sub(1).map(|i| &self.diffs[i]) {
                Some(d) => {
                    let into = Morphism {
                        mats: (0..alg.n())
                            .map(|x| Subspace::from_independent(inc.mats[x].clone()).coords_matrix(&d.mats[x]))
                            .collect(),
                    };
                    cokernel(alg, &z, &into).0
                }
                None => z,
            };
            if !h.is_zero() {
                out.push((self.start + j as i64, h));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nakayama::{kupisch_algebra_dims, KupischSeries};
    use crate::oracle::presentation::{compile_basic, Presentation};

    fn oracle(t: &str) -> Oracle {
        Oracle::new(compile_basic(&Presentation::parse(t).unwrap(), 64).unwrap())
    }

    #[test]
    fn nakayama_dims_match_the_kupisch_walk() {
        for n in 1..=5 {
            for ks in KupischSeries::all(n) {
                let o = Oracle::new(compile_basic(&Presentation::nakayama(&ks), 64).unwrap());
                let r = o.report(20);
                let w = kupisch_algebra_dims(&ks, 20);
                assert_eq!(r.gldim, w.gldim, "{ks}");
                assert_eq!(r.domdim, w.domdim, "{ks}");
                assert_eq!(r.idim_right, w.idim, "{ks}");
                assert_eq!(r.domdim, r.domdim_left, "{ks}");
                assert_eq!(r.domdim, r.codomdim_dual, "{ks}");
                if r.idim_right.is_finite() && r.idim_left.is_finite() {
                    assert_eq!(r.idim_right, r.idim_left, "{ks}");
                }
                assert!(r.qf2);
            }
        }
    }

    #[test]
    fn kronecker_and_commutative_square() {
        let k = oracle("arrows: a:1->2; b:1->2").report(10);
        assert_eq!((k.gldim, k.domdim), (Dim::Finite(1), Dim::Finite(0)));
        assert!(!k.qf2 && !k.qf3);
        let sq = oracle("arrows: a:1->2; b:2->4; c:1->3; d:3->4\nrelations: a*b - c*d").report(10);
        assert_eq!(sq.gldim, Dim::Finite(2));
        assert_eq!(sq.projective_injectives, vec![0]);
    }

    #[test]
    fn loop_algebra_has_infinite_gldim() {
        let o = oracle("arrows: a:1->1\nrelations: a*a");
        assert_eq!(o.gldim(6), Dim::Unbounded { bound: 6 });
        assert_eq!(o.report(6).domdim, Dim::Infinite);
    }

    #[test]
    fn coresolution_complex_recovers_the_module() {
        let o = oracle("arrows: a:1->2; b:2->3; c:3->4; d:4->5\nrelations: len>=3");
        for x in 0..5 {
            let s = o.simple(x);
            let r = o.coresolution(&s, 10);
            let c = ModuleComplex::from_coresolution(&r);
            assert!(c.is_complex(o.alg()));
            let h = c.cohomology(o.alg());
            assert_eq!(h.len(), 1);
            assert_eq!((h[0].0, &h[0].1.dims), (0, &s.dims));
            let p = ModuleComplex::from_resolution(&o.resolution(&s, 10));
            assert!(p.is_complex(o.alg()));
            let h = p.cohomology(o.alg());
            assert_eq!((h.len(), h[0].0, &h[0].1.dims), (1, 0, &s.dims));
        }
    }
}
