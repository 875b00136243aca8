//! Dominant and injective dimensions of replicated algebras `A^(m)` from the
//! shift functions of `A`.
//!
//! Internally everything uses `s_minus ≤ 0`. The hereditary bookkeeping
//! `s_P(k) = s_minus(k) + k` is converted at the boundary.

use serde::Serialize;

use crate::dim::Dim;
use crate::dynkin::HereditaryDescriptor;
use crate::error::{Error, Result};
use crate::oracle::{profile_from_oracle, Oracle, StructureConstantAlgebra};
use crate::serre::{hereditary_profile, hereditary_shift, SerreProfile};

/// Dimensions of the stalk module `[P_x]_i` over `A^(m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StalkDims {
    pub x: usize,
    pub i: usize,
    pub domdim: i64,
    pub idim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub m: usize,
    pub domdim: i64,
    pub idim: i64,
    /// Known when the base has finite global dimension.
    pub gldim: Option<i64>,
    pub higher_auslander: bool,
    pub minimal_ag: bool,
    pub iwanaga_gorenstein: bool,
    /// `t` with `m = t·h_A − 1` when `A^(m)` is minimal Auslander-Gorenstein
    /// and the base is periodic.
    pub schedule_t: Option<usize>,
    pub stalks: Vec<StalkDims>,
}

impl DimensionReport {
    fn new(m: usize, domdim: i64, idim: i64, stalks: Vec<StalkDims>) -> DimensionReport {
        DimensionReport {
            m,
            domdim,
            idim,
            gldim: None,
            higher_auslander: false,
            minimal_ag: domdim == idim,
            iwanaga_gorenstein: true,
            schedule_t: None,
            stalks,
        }
    }

    /// Records that `gldim A^(m)` is finite, hence equal to `idim`.
    pub fn with_finite_gldim(mut self) -> DimensionReport {
        self.gldim = Some(self.idim);
        self.higher_auslander = self.minimal_ag;
        self
    }

    fn with_schedule(mut self, profile: &SerreProfile) -> DimensionReport {
        if self.minimal_ag {
            if let Ok(Some((h, _))) = profile.twisted_cy() {
                if (self.m + 1) % h == 0 {
                    self.schedule_t = Some((self.m + 1) / h);
                }
            }
        }
        self
    }
}

fn need(profile: &SerreProfile, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidParams("replication level must be at least 1".into()));
    }
    if profile.horizon < m + 1 {
        return Err(Error::HorizonTooSmall { horizon: profile.horizon, need: m + 1 });
    }
    if profile.n() < 1 {
        return Err(Error::InvalidParams("empty profile".into()));
    }
    Ok(())
}

fn stalks(profile: &SerreProfile, m: usize) -> Vec<StalkDims> {
    let mut out = Vec::new();
    for x in 0..profile.n() {
        let s = &profile.s_minus[x];
        for i in 0..=m {
            out.push(StalkDims { x, i, domdim: (m - i) as i64 - s[m - i], idim: (m - i) as i64 - s[m - i + 1] });
        }
    }
    out
}

/// Hereditary base: `domdim = 2m − max s_P(m)` and
/// `gldim = 2m − min (s_P(m) − ε_P(m))`.
pub fn replicated_dims_hereditary(profile: &SerreProfile, m: usize) -> Result<DimensionReport> {
    need(profile, m)?;
    let n = profile.n();
    let mm = 2 * m as i64;
    let sp: Vec<i64> = (0..n).map(|x| hereditary_shift(profile, x, m)).collect();
    let eps: Vec<i64> = (0..n).map(|x| i64::from(profile.p_orbit[x][m].injective.is_none())).collect();
    let domdim = mm - sp.iter().max().unwrap();
    let gldim = mm - (0..n).map(|x| sp[x] - eps[x]).min().unwrap();
    Ok(DimensionReport::new(m, domdim, gldim, stalks(profile, m)).with_finite_gldim().with_schedule(profile))
}

/// Serre-formal base: `domdim = m − max s⁻(m) = m + min s⁺(m)` and
/// `idim = m − min s⁻(m+1) = m + max s⁺(m+1)`.
pub fn replicated_dims_serre_formal(profile: &SerreProfile, m: usize) -> Result<DimensionReport> {
    need(profile, m)?;
    let mi = m as i64;
    let col = |v: &[Vec<i64>], k: usize| -> Vec<i64> { v.iter().map(|r| r[k]).collect() };
    let domdim = mi - col(&profile.s_minus, m).into_iter().max().unwrap();
    let idim = mi - col(&profile.s_minus, m + 1).into_iter().min().unwrap();
    let domdim_plus = mi + col(&profile.s_plus, m).into_iter().min().unwrap();
    let idim_plus = mi + col(&profile.s_plus, m + 1).into_iter().max().unwrap();
    if domdim != domdim_plus || idim != idim_plus {
        return Err(Error::InvalidParams(format!(
            "shift functions disagree: ({domdim}, {idim}) from s- against ({domdim_plus}, {idim_plus}) from s+"
        )));
    }
    Ok(DimensionReport::new(m, domdim, idim, stalks(profile, m)).with_schedule(profile))
}

/// Members `m = t·h − 1` of the minimal Auslander-Gorenstein series with
/// common dimension `t(h + c) − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Schedule {
    pub periodic: bool,
    pub h: Option<usize>,
    pub c: Option<i64>,
}

impl Schedule {
    pub fn member(&self, t: usize) -> Option<(usize, i64)> {
        let (h, c) = (self.h?, self.c?);
        (t >= 1).then(|| (t * h - 1, t as i64 * (h as i64 + c) - 1))
    }

    pub fn members(&self, max_m: usize) -> Vec<(usize, i64)> {
        (1..).map_while(|t| self.member(t).filter(|(m, _)| *m <= max_m)).filter(|(m, _)| *m >= 1).collect()
    }

    pub fn contains(&self, m: usize) -> bool {
        m >= 1 && self.h.is_some_and(|h| (m + 1) % h == 0)
    }
}

pub fn minimal_ag_schedule(profile: &SerreProfile) -> Result<Schedule> {
    Ok(match profile.twisted_cy()? {
        Some((h, c)) => Schedule { periodic: true, h: Some(h), c: Some(c) },
        None => Schedule { periodic: false, h: None, c: None },
    })
}

/// `r_x^-(k)`: injectives among `P_x^{≻i}` for `i < k`, after checking
/// `s_x^-(k) = −(k − r_x^-(k))·d`.
pub fn r_counts(profile: &SerreProfile, d: usize) -> Result<Vec<Vec<usize>>> {
    if d == 0 {
        return Err(Error::NotDHereditary("d must be positive".into()));
    }
    let mut out = Vec::with_capacity(profile.n());
    for x in 0..profile.n() {
        let mut r = vec![0usize];
        for k in 1..=profile.horizon {
            let hit = usize::from(profile.p_orbit[x][k - 1].injective.is_some());
            r.push(r[k - 1] + hit);
            let expect = -((k - r[k]) as i64) * d as i64;
            if profile.s_minus[x][k] != expect {
                return Err(Error::NotDHereditary(format!(
                    "vertex {}: shift {} at step {k}, expected {expect}",
                    x + 1,
                    profile.s_minus[x][k]
                )));
            }
        }
        out.push(r);
    }
    Ok(out)
}

/// `idim = (d+1)m + d − d·min r(m+1)` and `domdim = (d+1)m − d·max r(m)`.
pub fn d_hereditary_dims(d: usize, r: &[Vec<usize>], m: usize) -> Result<DimensionReport> {
    if d == 0 {
        return Err(Error::NotDHereditary("d must be positive".into()));
    }
    if m == 0 || r.is_empty() || r.iter().any(|row| row.len() < m + 2) {
        return Err(Error::InvalidParams(format!("need counts up to step {}", m + 1)));
    }
    let (d, mi) = (d as i64, m as i64);
    let rmin = r.iter().map(|row| row[m + 1]).min().unwrap() as i64;
    let rmax = r.iter().map(|row| row[m]).max().unwrap() as i64;
    let idim = (d + 1) * mi + d - d * rmin;
    let domdim = (d + 1) * mi - d * rmax;
    Ok(DimensionReport::new(m, domdim, idim, Vec::new()).with_finite_gldim())
}

/// The `d`-representation-finite schedule: `m = th − 1` with
/// `gldim = domdim = ((d+1)h − dr)t − 1`.
pub fn d_rf_schedule(d: usize, h: usize, r: usize, t: usize) -> (usize, i64) {
    let (d, h, r, t) = (d as i64, h as i64, r as i64, t as i64);
    ((t * h - 1) as usize, ((d + 1) * h - d * r) * t - 1)
}

/// Number of indecomposable `A^(m)`-modules for a representation-finite
/// hereditary base with `r` positive roots.
pub fn indec_count_rf(r: usize, m: usize) -> usize {
    (2 * m + 1) * r
}

#[derive(Debug, Clone)]
pub enum ReplicatedBase {
    Hereditary(HereditaryDescriptor),
    Profile(SerreProfile),
    Algebra(StructureConstantAlgebra),
}

#[derive(Debug, Clone)]
pub struct ReplicatedDescriptor {
    pub base: ReplicatedBase,
    pub m: usize,
}

impl ReplicatedDescriptor {
    /// Routes algebra bases through the oracle profile first; `bound` caps
    /// the resolutions used there.
    pub fn report(&self, bound: usize) -> Result<DimensionReport> {
        let m = self.m;
        match &self.base {
            ReplicatedBase::Hereditary(d) => replicated_dims_hereditary(&hereditary_profile(d, m + 1)?, m),
            ReplicatedBase::Profile(p) => replicated_dims_serre_formal(p, m),
            ReplicatedBase::Algebra(a) => {
                let o = Oracle::from_sca(a)?;
                let p = profile_from_oracle(&o, m + 1, bound)?;
                let r = replicated_dims_serre_formal(&p, m)?;
                Ok(if matches!(o.gldim(bound), Dim::Finite(_)) { r.with_finite_gldim() } else { r })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::parse_quiver;
    use crate::nakayama::tnl_dims;

    fn profile(s: &str, horizon: usize) -> SerreProfile {
        hereditary_profile(&HereditaryDescriptor::new(parse_quiver(s).unwrap().0).unwrap(), horizon).unwrap()
    }

    #[test]
    fn linear_a2_and_kronecker() {
        let p = profile("A2", 4);
        let r = replicated_dims_hereditary(&p, 2).unwrap();
        assert_eq!((r.domdim, r.gldim), (3, Some(3)));
        assert!(r.higher_auslander);
        assert_eq!(r.schedule_t, Some(1));
        let s = replicated_dims_serre_formal(&p, 2).unwrap();
        assert_eq!((s.domdim, s.idim), (3, 3));
        let k = profile("kronecker", 8);
        for m in 1..=3 {
            let r = replicated_dims_hereditary(&k, m).unwrap();
            assert_eq!((r.domdim, r.gldim), (2 * m as i64, Some(2 * m as i64 + 1)));
            assert!(!r.minimal_ag);
        }
    }

    #[test]
    fn linear_an_matches_nakayama_closed_forms() {
        for n in 2..=5 {
            let p = profile(&format!("A{n}"), 5);
            for m in 1..=3 {
                let h = replicated_dims_hereditary(&p, m).unwrap();
                let s = replicated_dims_serre_formal(&p, m).unwrap();
                let t = tnl_dims(n * (m + 1), n + 1).unwrap();
                assert_eq!((h.domdim, h.gldim), (t.domdim as i64, Some(t.gldim as i64)), "A{n} m={m}");
                assert_eq!((s.domdim, s.idim), (h.domdim, t.gldim as i64));
                // stalk [P_x]_0 values bracket the algebra values
                let p0: Vec<_> = h.stalks.iter().filter(|s| s.i == 0).collect();
                assert_eq!(p0.iter().map(|s| s.domdim).min(), Some(h.domdim));
                assert_eq!(p0.iter().map(|s| s.idim).max(), Some(h.idim));
                if m >= 2 {
                    assert!(h.domdim > m as i64);
                }
            }
        }
    }

    #[test]
    fn schedules() {
        let a2 = minimal_ag_schedule(&profile("A2", 8)).unwrap();
        assert_eq!(a2.members(8), vec![(2, 3), (5, 7), (8, 11)]);
        let a3 = minimal_ag_schedule(&profile("A3", 8)).unwrap();
        assert_eq!(a3.members(7), vec![(3, 5), (7, 11)]);
        let k = minimal_ag_schedule(&profile("kronecker", 8)).unwrap();
        assert!(!k.periodic && k.members(100).is_empty());
        let si = minimal_ag_schedule(&SerreProfile::self_injective(&[1, 0], 4)).unwrap();
        assert_eq!(si.members(3), vec![(1, 1), (2, 2), (3, 3)]);
        let r = replicated_dims_serre_formal(&SerreProfile::self_injective(&[1, 0], 4), 1).unwrap();
        assert_eq!((r.domdim, r.idim), (1, 1));
    }

    #[test]
    fn d_hereditary() {
        let ri = vec![vec![0; 4]; 3];
        let r = d_hereditary_dims(2, &ri, 1).unwrap();
        assert_eq!((r.idim, r.domdim), (5, 3));
        assert!(matches!(d_hereditary_dims(0, &ri, 1), Err(Error::NotDHereditary(_))));
        assert_eq!(d_rf_schedule(1, 3, 2, 1), (2, 3));
        // linear A_2 as a 1-representation-finite algebra
        let p = profile("A2", 6);
        let r1 = r_counts(&p, 1).unwrap();
        for m in 1..=4 {
            let a = d_hereditary_dims(1, &r1, m).unwrap();
            let b = replicated_dims_hereditary(&p, m).unwrap();
            assert_eq!((a.idim, a.domdim), (b.idim, b.domdim));
        }
        assert!(r_counts(&p, 2).is_err());
        assert_eq!(indec_count_rf(3, 1), 9);
        assert_eq!(indec_count_rf(6, 2), 30);
        assert_eq!(indec_count_rf(7, 0), 7);
    }

    #[test]
    fn horizon_checks() {
        let p = profile("A3", 2);
        assert_eq!(replicated_dims_hereditary(&p, 2), Err(Error::HorizonTooSmall { horizon: 2, need: 3 }));
    }
}
