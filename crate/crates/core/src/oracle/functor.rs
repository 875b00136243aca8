//! The Nakayama functor, its inverse, their derived versions on stalk
//! complexes, and the Serre-formality check built on them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::oracle::homological::{ModuleComplex, Oracle};
use crate::oracle::module::{HomSpace, Module, Morphism};
use crate::serre::{OrbitPoint, SerreProfile};

/// `ν⁻ M = Hom(DA, M)` together with the Hom spaces `Hom(I_x, M)` that
/// carry its coordinates.
fn nu_inverse_spaces(o: &Oracle, m: &Module) -> (Module, Vec<HomSpace>) {
    let alg = o.alg();
    let spaces: Vec<HomSpace> = (0..o.n()).map(|x| HomSpace::new(alg, o.injective(x), m)).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, &(x, y))| {
            let rows = spaces[x].basis.iter().map(|f| spaces[y].coords(&o.lambda(k).then(f))).collect();
            Mat::from_rows(rows, spaces[y].dim())
        })
        .collect();
    (Module { dims: spaces.iter().map(HomSpace::dim).collect(), maps }, spaces)
}

pub fn inverse_nakayama(o: &Oracle, m: &Module) -> Module {
    nu_inverse_spaces(o, m).0
}

/// `ν M = D Hom(M, A)`.
pub fn nakayama_functor(o: &Oracle, m: &Module) -> Module {
    nu_spaces(o, m).0
}

fn nu_spaces(o: &Oracle, m: &Module) -> (Module, Vec<HomSpace>) {
    let alg = o.alg();
    let spaces: Vec<HomSpace> = (0..o.n()).map(|x| HomSpace::new(alg, m, o.projective(x))).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, &(x, y))| {
            // Hom(M, P_y) -> Hom(M, P_x) by composing with ρ, then transpose
            let rows = spaces[y].basis.iter().map(|f| spaces[x].coords(&f.then(o.rho(k)))).collect();
            Mat::from_rows(rows, spaces[x].dim()).transpose()
        })
        .collect();
    (Module { dims: spaces.iter().map(HomSpace::dim).collect(), maps }, spaces)
}

/// Cohomology of `ν⁻` applied termwise to the minimal injective
/// coresolution of `M`.
pub fn nu_inverse_derived(o: &Oracle, m: &Module, bound: usize) -> Result<Vec<(i64, Module)>> {
    let res = o.coresolution(m, bound);
    if !res.complete {
        return Err(Error::ResolutionBoundExceeded { bound });
    }
    let images: Vec<(Module, Vec<HomSpace>)> = res.terms.iter().map(|t| nu_inverse_spaces(o, t)).collect();
    let diffs = res
        .differentials
        .iter()
        .enumerate()
        .map(|(j, d)| Morphism {
            mats: (0..o.n())
                .map(|x| {
                    let (src, tgt) = (&images[j].1[x], &images[j + 1].1[x]);
                    let rows = src.basis.iter().map(|f| tgt.coords(&f.then(d))).collect();
                    Mat::from_rows(rows, tgt.dim())
                })
                .collect(),
        })
        .collect();
    let cx = ModuleComplex { start: 0, terms: images.into_iter().map(|(m, _)| m).collect(), diffs };
    debug_assert!(cx.is_complex(o.alg()));
    Ok(cx.cohomology(o.alg()))
}

/// Cohomology of `ν` applied termwise to the minimal projective resolution.
pub fn nu_derived(o: &Oracle, m: &Module, bound: usize) -> Result<Vec<(i64, Module)>> {
    let res = o.resolution(m, bound);
    if !res.complete {
        return Err(Error::ResolutionBoundExceeded { bound });
    }
    let images: Vec<(Module, Vec<HomSpace>)> = res.terms.iter().map(|t| nu_spaces(o, t)).collect();
    // differential P_{j+1} -> P_j induces D Hom(P_{j+1}, A) -> D Hom(P_j, A)
    let k = res.terms.len();
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for j in (0..k).rev() {
        terms.push(images[j].0.clone());
        if j > 0 {
            let d = &res.differentials[j - 1];
            diffs.push(Morphism {
                mats: (0..o.n())
                    .map(|x| {
                        let (hj, hi) = (&images[j].1[x], &images[j - 1].1[x]);
                        let rows = hi.basis.iter().map(|f| hj.coords(&d.then(f))).collect();
                        Mat::from_rows(rows, hj.dim()).transpose()
                    })
                    .collect(),
            });
        }
    }
    let cx = ModuleComplex { start: -(k as i64 - 1), terms, diffs };
    debug_assert!(cx.is_complex(o.alg()));
    Ok(cx.cohomology(o.alg()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SerreVerdict {
    SerreFormal {
        profile: SerreProfileData,
    },
    /// `ν^{-step}(P_x)` (or `ν^{step}(I_x)` on the injective side) has
    /// cohomology in more than one degree.
    NotSerreFormal {
        x: usize,
        step: usize,
        degrees: Vec<i64>,
        injective_side: bool,
    },
    Inconclusive {
        reason: String,
    },
}

/// Orbit and shift data recorded along a successful check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SerreProfileData {
    pub s_minus: Vec<Vec<i64>>,
    pub s_plus: Vec<Vec<i64>>,
}

struct Orbit {
    shifts: Vec<i64>,
    points: Vec<OrbitPoint>,
}

fn point(o: &Oracle, m: &Module) -> OrbitPoint {
    OrbitPoint {
        dim: m.dims.iter().map(|&d| d as i64).collect(),
        projective: o.as_indecomposable_projective(m),
        injective: o.as_indecomposable_injective(m),
    }
}

/// Follows `ν^{-k}(P_x)` for `k = 0..=horizon` while each power stays a
/// stalk complex.
fn minus_orbit(o: &Oracle, x: usize, horizon: usize, bound: usize) -> Result<Orbit> {
    let mut cur = o.projective(x).clone();
    let mut deg = 0i64;
    let mut orbit = Orbit { shifts: vec![0], points: vec![point(o, &cur)] };
    for step in 1..=horizon {
        let h = nu_inverse_derived(o, &cur, bound)?;
        if h.len() != 1 {
            return Err(Error::NotSerreFormal { x, step, degrees: h.iter().map(|(d, _)| d + deg).collect() });
        }
        let (d, m) = h.into_iter().next().unwrap();
        deg += d;
        cur = m;
        orbit.shifts.push(-deg);
        orbit.points.push(point(o, &cur));
    }
    Ok(orbit)
}

fn check_gorenstein(o: &Oracle, bound: usize) -> std::result::Result<(), String> {
    let (right, _) = o.regular_dims(bound);
    let (left, _) = o.opposite().regular_dims(bound);
    if !right.is_finite() || !left.is_finite() {
        return Err(format!("idim of the regular module exceeds {bound} (right {right}, left {left})"));
    }
    Ok(())
}

/// Builds the full profile from `ν^{-k}(P_x)` on `A` and, through the
/// duality with the opposite algebra, `ν^k(I_x)`.
pub fn profile_from_oracle(o: &Oracle, horizon: usize, bound: usize) -> Result<SerreProfile> {
    let n = o.n();
    let op = o.opposite();
    let mut s_minus = Vec::with_capacity(n);
    let mut p_orbit = Vec::with_capacity(n);
    let mut s_plus = Vec::with_capacity(n);
    let mut i_orbit = Vec::with_capacity(n);
    for x in 0..n {
        let orb = minus_orbit(o, x, horizon, bound)?;
        s_minus.push(orb.shifts);
        p_orbit.push(orb.points);
        let orb = minus_orbit(&op, x, horizon, bound).map_err(|e| match e {
            Error::NotSerreFormal { x, step, degrees } => {
                Error::NotSerreFormal { x, step, degrees: degrees.iter().map(|d| -d).collect() }
            }
            e => e,
        })?;
        s_plus.push(orb.shifts.iter().map(|s| -s).collect());
        i_orbit.push(
            orb.points
                .into_iter()
                .map(|p| OrbitPoint { dim: p.dim, projective: p.injective, injective: p.projective })
                .collect(),
        );
    }
    Ok(SerreProfile {
        labels: (1..=n).map(|i| i.to_string()).collect(),
        horizon,
        s_minus,
        s_plus,
        p_orbit,
        i_orbit,
        certified_aperiodic: false,
    })
}

/// Checks Iwanaga-Gorensteinness, then whether every power of the Serre
/// functor up to `horizon` sends indecomposable projectives and injectives
/// to stalk complexes.
pub fn serre_formal_check(o: &Oracle, horizon: usize, bound: usize) -> SerreVerdict {
    if let Err(reason) = check_gorenstein(o, bound) {
        return SerreVerdict::Inconclusive { reason };
    }
    let op = o.opposite();
    for x in 0..o.n() {
        for (side, alg) in [(false, o), (true, &op)] {
            match minus_orbit(alg, x, horizon, bound) {
                Ok(_) => {}
                Err(Error::NotSerreFormal { x, step, degrees }) => {
                    let degrees = if side { degrees.iter().map(|d| -d).rev().collect() } else { degrees };
                    return SerreVerdict::NotSerreFormal { x, step, degrees, injective_side: side };
                }
                Err(e) => return SerreVerdict::Inconclusive { reason: e.to_string() },
            }
        }
    }
    match profile_from_oracle(o, horizon, bound) {
        Ok(p) => SerreVerdict::SerreFormal { profile: SerreProfileData { s_minus: p.s_minus, s_plus: p.s_plus } },
        Err(e) => SerreVerdict::Inconclusive { reason: e.to_string() },
    }
}
