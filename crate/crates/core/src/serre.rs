//! Orbits of indecomposable projectives and injectives under powers of the
//! Serre functor, recorded as shift functions.
//!
//! Convention: `ν^{-k}(P_x)` is the stalk complex `P_x^{≻k}[-s_minus[x][k]]`
//! read so that `s_minus` is non-increasing from 0, and `ν^{k}(I_x)` is
//! `I_x^{≺k}` shifted by `s_plus[x][k] ≥ 0`.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::dynkin::{apply_int, HereditaryDescriptor};
use crate::error::{Error, Result};
use crate::rational::lcm;

/// One module on an orbit, identified by its dimension vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OrbitPoint {
    pub dim: Vec<i64>,
    /// `Some(y)` when the module is the indecomposable projective `P_y`.
    pub projective: Option<usize>,
    /// `Some(y)` when the module is the indecomposable injective `I_y`.
    pub injective: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Periodicity {
    Periodic,
    /// No orbit of a projective ever reaches an injective.
    Aperiodic,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitLength {
    Known(usize),
    /// Not reached within the horizon.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreProfile {
    pub labels: Vec<String>,
    /// Points `k = 0..=horizon` are stored.
    pub horizon: usize,
    pub s_minus: Vec<Vec<i64>>,
    pub s_plus: Vec<Vec<i64>>,
    pub p_orbit: Vec<Vec<OrbitPoint>>,
    pub i_orbit: Vec<Vec<OrbitPoint>>,
    /// Set when the source certifies that no projective orbit hits an injective.
    pub certified_aperiodic: bool,
}

impl SerreProfile {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// `ℓ_x = min { k ≥ 1 : P_x^{≻k-1} injective }`.
    pub fn ell(&self) -> Vec<OrbitLength> {
        self.p_orbit
            .iter()
            .map(|orb| match orb.iter().position(|p| p.injective.is_some()) {
                Some(k) => OrbitLength::Known(k + 1),
                None => OrbitLength::Unknown,
            })
            .collect()
    }

    /// `σ(x) = y` when `P_x^{≻ℓ_x} = P_y`.
    pub fn sigma(&self) -> Vec<Option<usize>> {
        self.ell()
            .iter()
            .zip(&self.p_orbit)
            .map(|(l, orb)| match l {
                OrbitLength::Known(l) if *l <= self.horizon => orb[*l].projective,
                _ => None,
            })
            .collect()
    }

    /// The least `m ≥ 1` with `{P_x^{≻m}} = {P_x}` as multisets and one
    /// common shift, as `(h_A, c_A)`; `None` when aperiodicity is certified.
    pub fn twisted_cy(&self) -> Result<Option<(usize, i64)>> {
        for m in 1..=self.horizon {
            let mut hit = vec![false; self.n()];
            let shift = self.s_minus[0][m];
            let ok = (0..self.n()).all(|x| {
                self.s_minus[x][m] == shift
                    && match self.p_orbit[x][m].projective {
                        Some(y) if !hit[y] => {
                            hit[y] = true;
                            true
                        }
                        _ => false,
                    }
            });
            if ok {
                return Ok(Some((m, -shift)));
            }
        }
        if self.certified_aperiodic {
            Ok(None)
        } else {
            Err(Error::HorizonTooSmall { horizon: self.horizon, need: self.horizon + 1 })
        }
    }

    pub fn periodicity(&self) -> Periodicity {
        match self.twisted_cy() {
            Ok(Some(_)) => Periodicity::Periodic,
            Ok(None) => Periodicity::Aperiodic,
            Err(_) => Periodicity::Unknown,
        }
    }

    /// Restricts to a smaller horizon.
    pub fn truncate(&self, horizon: usize) -> SerreProfile {
        let h = horizon.min(self.horizon);
        let cut = |v: &Vec<Vec<i64>>| v.iter().map(|r| r[..=h].to_vec()).collect();
        let cut_o = |v: &Vec<Vec<OrbitPoint>>| v.iter().map(|r| r[..=h].to_vec()).collect();
        SerreProfile {
            labels: self.labels.clone(),
            horizon: h,
            s_minus: cut(&self.s_minus),
            s_plus: cut(&self.s_plus),
            p_orbit: cut_o(&self.p_orbit),
            i_orbit: cut_o(&self.i_orbit),
            certified_aperiodic: self.certified_aperiodic,
        }
    }

    /// Profile of a self-injective algebra with Nakayama permutation `sigma`
    /// (`ν^{-1} P_x = P_{σ(x)}`), stalks in degree 0 forever.
    pub fn self_injective(sigma: &[usize], horizon: usize) -> SerreProfile {
        let n = sigma.len();
        let inv = |y: usize| sigma.iter().position(|&s| s == y).expect("sigma is a permutation");
        // ν^{-1} P_y = P_{σ(y)} forces P_y = I_{σ(y)}
        let point = |y: usize| {
            let mut dim = vec![0; n];
            dim[y] = 1;
            OrbitPoint { dim, projective: Some(y), injective: Some(sigma[y]) }
        };
        let mut p_orbit = vec![Vec::new(); n];
        let mut i_orbit = vec![Vec::new(); n];
        for x in 0..n {
            let (mut a, mut b) = (x, inv(x));
            for _ in 0..=horizon {
                p_orbit[x].push(point(a));
                i_orbit[x].push(point(b));
                a = sigma[a];
                b = inv(b);
            }
        }
        SerreProfile {
            labels: (1..=n).map(|i| i.to_string()).collect(),
            horizon,
            s_minus: vec![vec![0; horizon + 1]; n],
            s_plus: vec![vec![0; horizon + 1]; n],
            p_orbit,
            i_orbit,
            certified_aperiodic: false,
        }
    }

    /// Pointwise sum of shift functions on the product index set, as for
    /// `ν(X ⊗ Y) = ν(X) ⊗ ν(Y)`.
    pub fn tensor(&self, other: &SerreProfile) -> SerreProfile {
        let h = self.horizon.min(other.horizon);
        let mut labels = Vec::new();
        let (mut sm, mut sp, mut po, mut io) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        let n2 = other.n();
        let combine = |a: &OrbitPoint, b: &OrbitPoint| OrbitPoint {
            dim: a.dim.iter().flat_map(|&u| b.dim.iter().map(move |&v| u * v)).collect(),
            projective: a.projective.zip(b.projective).map(|(y, z)| y * n2 + z),
            injective: a.injective.zip(b.injective).map(|(y, z)| y * n2 + z),
        };
        for x in 0..self.n() {
            for y in 0..n2 {
                labels.push(format!("({},{})", self.labels[x], other.labels[y]));
                sm.push((0..=h).map(|k| self.s_minus[x][k] + other.s_minus[y][k]).collect());
                sp.push((0..=h).map(|k| self.s_plus[x][k] + other.s_plus[y][k]).collect());
                po.push((0..=h).map(|k| combine(&self.p_orbit[x][k], &other.p_orbit[y][k])).collect());
                io.push((0..=h).map(|k| combine(&self.i_orbit[x][k], &other.i_orbit[y][k])).collect());
            }
        }
        SerreProfile {
            labels,
            horizon: h,
            s_minus: sm,
            s_plus: sp,
            p_orbit: po,
            i_orbit: io,
            certified_aperiodic: self.certified_aperiodic || other.certified_aperiodic,
        }
    }

    /// Period of the tensor product predicted from the factors: the lcm of
    /// the two `h_A` (the module-level minimum may be smaller).
    pub fn tensor_period_bound(p: (usize, i64), q: (usize, i64)) -> usize {
        lcm(p.0 as u64, q.0 as u64) as usize
    }
}

impl Serialize for SerreProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let ell: Vec<Option<usize>> = self
            .ell()
            .iter()
            .map(|l| match l {
                OrbitLength::Known(k) => Some(*k),
                OrbitLength::Unknown => None,
            })
            .collect();
        let sigma: Vec<Option<usize>> = self.sigma().iter().map(|o| o.map(|y| y + 1)).collect();
        let cy = self.twisted_cy().ok().flatten().map(|(h, c)| [h as i64, c]);
        let mut m = s.serialize_map(Some(8))?;
        m.serialize_entry("ell", &ell)?;
        m.serialize_entry("horizon", &self.horizon)?;
        m.serialize_entry("labels", &self.labels)?;
        match self.periodicity() {
            Periodicity::Periodic => m.serialize_entry("periodic", &true)?,
            Periodicity::Aperiodic => m.serialize_entry("periodic", &false)?,
            Periodicity::Unknown => m.serialize_entry("periodic", "unknown")?,
        }
        m.serialize_entry("s_minus", &self.s_minus)?;
        m.serialize_entry("s_plus", &self.s_plus)?;
        m.serialize_entry("sigma", &sigma)?;
        m.serialize_entry("twisted_cy", &cy)?;
        m.end()
    }
}

fn identify(d: &HereditaryDescriptor, v: &[i64]) -> OrbitPoint {
    OrbitPoint {
        dim: v.to_vec(),
        projective: d.projective_dims.iter().position(|p| p.as_slice() == v),
        injective: d.injective_dims.iter().position(|p| p.as_slice() == v),
    }
}

/// Orbit data of a hereditary algebra from its Coxeter matrix.
///
/// Along the projective side a non-injective module `M` goes to `τ^- M`
/// with one extra negative shift, while an injective `I_y` goes to `P_y`
/// with no shift. The injective side is dual.
pub fn hereditary_profile(d: &HereditaryDescriptor, horizon: usize) -> Result<SerreProfile> {
    if horizon == 0 {
        return Err(Error::HorizonTooSmall { horizon, need: 1 });
    }
    let n = d.n();
    let mut s_minus = vec![Vec::with_capacity(horizon + 1); n];
    let mut s_plus = vec![Vec::with_capacity(horizon + 1); n];
    let mut p_orbit = vec![Vec::with_capacity(horizon + 1); n];
    let mut i_orbit = vec![Vec::with_capacity(horizon + 1); n];
    for x in 0..n {
        let mut v = d.projective_dims[x].clone();
        let mut s = 0i64;
        for k in 0..=horizon {
            if v.iter().any(|&c| c < 0) {
                return Err(Error::NonPositiveVector { x, step: k });
            }
            let pt = identify(d, &v);
            s_minus[x].push(s);
            let next = match pt.injective {
                Some(y) => d.projective_dims[y].clone(),
                None => {
                    s -= 1;
                    apply_int(&v, &d.coxeter).ok_or(Error::Overflow { x })?
                }
            };
            p_orbit[x].push(pt);
            v = next;
        }
        let mut v = d.injective_dims[x].clone();
        let mut s = 0i64;
        for k in 0..=horizon {
            if v.iter().any(|&c| c < 0) {
                return Err(Error::NonPositiveVector { x, step: k });
            }
            let pt = identify(d, &v);
            s_plus[x].push(s);
            let next = match pt.projective {
                Some(y) => d.injective_dims[y].clone(),
                None => {
                    s += 1;
                    apply_int(&v, &d.coxeter_inverse).ok_or(Error::Overflow { x })?
                }
            };
            i_orbit[x].push(pt);
            v = next;
        }
    }
    Ok(SerreProfile {
        labels: (1..=n).map(|i| i.to_string()).collect(),
        horizon,
        s_minus,
        s_plus,
        p_orbit,
        i_orbit,
        certified_aperiodic: !d.representation_finite,
    })
}

/// `s_P(k) = s_minus(k) + k`, the count of injective hits before step `k`
/// in the hereditary bookkeeping.
pub fn hereditary_shift(profile: &SerreProfile, x: usize, k: usize) -> i64 {
    profile.s_minus[x][k] + k as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{parse_quiver, ValuedDynkinGraph};

    fn profile(s: &str, k: usize) -> SerreProfile {
        let d = HereditaryDescriptor::new(parse_quiver(s).unwrap().0).unwrap();
        hereditary_profile(&d, k).unwrap()
    }

    #[test]
    fn linear_a2() {
        let p = profile("A2:linear", 4);
        assert_eq!(p.ell(), vec![OrbitLength::Known(1), OrbitLength::Known(2)]);
        assert_eq!(p.sigma(), vec![Some(1), Some(0)]);
        assert_eq!(p.s_minus[0], vec![0, 0, -1, -1, -1]);
        assert_eq!(p.s_minus[1], vec![0, -1, -1, -1, -2]);
        assert_eq!(p.twisted_cy().unwrap(), Some((3, 1)));
        assert_eq!(p.periodicity(), Periodicity::Periodic);
    }

    #[test]
    fn linear_a3_and_ell_identity() {
        let p = profile("A3:linear", 6);
        assert_eq!(p.ell(), vec![OrbitLength::Known(1), OrbitLength::Known(2), OrbitLength::Known(3)]);
        assert_eq!(p.twisted_cy().unwrap(), Some((4, 2)));
    }

    #[test]
    fn kronecker_never_hits() {
        let p = profile("kronecker", 10);
        for x in 0..2 {
            assert_eq!(p.s_minus[x], (0..=10).map(|k| -k).collect::<Vec<i64>>());
            assert_eq!(p.s_plus[x], (0..=10).collect::<Vec<i64>>());
        }
        assert_eq!(p.twisted_cy().unwrap(), None);
        assert_eq!(p.periodicity(), Periodicity::Aperiodic);
    }

    #[test]
    fn shift_invariants() {
        for g in ["A4", "D5", "E6", "B3", "G2"] {
            let g: ValuedDynkinGraph = g.parse().unwrap();
            for q in g.orientations().into_iter().take(4) {
                let d = HereditaryDescriptor::new(q).unwrap();
                let p = hereditary_profile(&d, 3 * g.coxeter_number()).unwrap();
                for x in 0..g.rank {
                    assert_eq!(p.s_minus[x][0], 0);
                    assert_eq!(p.s_plus[x][0], 0);
                    for k in 0..p.horizon {
                        let step = p.s_minus[x][k] - p.s_minus[x][k + 1];
                        assert!(step == 0 || step == 1);
                        assert_eq!(step == 0, p.p_orbit[x][k].injective.is_some());
                        let up = p.s_plus[x][k + 1] - p.s_plus[x][k];
                        assert_eq!(up == 0, p.i_orbit[x][k].projective.is_some());
                        assert!(hereditary_shift(&p, x, k) >= 0);
                    }
                }
                for k in 0..=p.horizon {
                    let lo = (0..g.rank).map(|x| -p.s_minus[x][k]).min();
                    let lo2 = (0..g.rank).map(|x| p.s_plus[x][k]).min();
                    assert_eq!(lo, lo2);
                    let hi = (0..g.rank).map(|x| -p.s_minus[x][k]).max();
                    let hi2 = (0..g.rank).map(|x| p.s_plus[x][k]).max();
                    assert_eq!(hi, hi2);
                }
            }
        }
    }

    #[test]
    fn sigma_is_nu_delta() {
        for g in ["A5", "D5", "D4", "E6", "E7"] {
            let g: ValuedDynkinGraph = g.parse().unwrap();
            let (h, nu) = g.coxeter_data();
            for q in g.orientations().into_iter().take(8) {
                let d = HereditaryDescriptor::new(q).unwrap();
                let p = hereditary_profile(&d, h + 1).unwrap();
                for x in 0..g.rank {
                    let OrbitLength::Known(l) = p.ell()[x] else { panic!() };
                    assert_eq!(p.p_orbit[x][l - 1].injective, Some(nu[x]));
                }
            }
        }
    }

    #[test]
    fn tensor_profiles() {
        let a2 = profile("A2:linear", 9);
        let si = SerreProfile::self_injective(&[0], 9);
        let t = a2.tensor(&si);
        assert_eq!(t.s_minus, a2.s_minus);
        assert_eq!(t.twisted_cy().unwrap(), Some((3, 1)));
        let sq = a2.tensor(&a2);
        for k in 0..=9 {
            assert_eq!(sq.s_minus[1][k], a2.s_minus[0][k] + a2.s_minus[1][k]);
        }
        assert_eq!(sq.twisted_cy().unwrap(), Some((3, 2)));
        assert_eq!(SerreProfile::tensor_period_bound((3, 1), (3, 1)), 3);
    }

    #[test]
    fn self_injective_cy() {
        let p = SerreProfile::self_injective(&[1, 2, 0], 6);
        assert_eq!(p.twisted_cy().unwrap(), Some((1, 0)));
        assert_eq!(p.sigma(), vec![Some(1), Some(2), Some(0)]);
    }

    #[test]
    fn json_keys() {
        let p = profile("A2:linear", 4);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["twisted_cy"], serde_json::json!([3, 1]));
        assert_eq!(v["periodic"], serde_json::json!(true));
        assert_eq!(v["sigma"], serde_json::json!([2, 1]));
        let k = serde_json::to_value(profile("kronecker", 3)).unwrap();
        assert_eq!(k["periodic"], serde_json::json!(false));
        assert_eq!(k["twisted_cy"], serde_json::Value::Null);
    }
}
