//! Nakayama algebras given by Kupisch series: quotients of the path algebra
//! of the linear quiver `1 -> 2 -> ... -> n`.
//!
//! `M(i, s)` is the uniserial module with top `S_i` and composition factors
//! `S_i, ..., S_{i+s-1}`; `P_i = M(i, c_i)`. Vertices are 1-based here, as in
//! the usual Kupisch notation.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dim::Dim;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct KupischSeries {
    c: Vec<usize>,
}

impl KupischSeries {
    pub fn new(c: Vec<usize>) -> Result<Self> {
        let n = c.len();
        if n == 0 {
            return Err(Error::InvalidKupisch("empty series".into()));
        }
        if c[n - 1] != 1 {
            return Err(Error::InvalidKupisch(format!("last entry must be 1, got {}", c[n - 1])));
        }
        for i in 0..n - 1 {
            if c[i] < 2 {
                return Err(Error::InvalidKupisch(format!("c_{} = {} < 2 disconnects the quiver", i + 1, c[i])));
            }
            if c[i] > c[i + 1] + 1 {
                return Err(Error::InvalidKupisch(format!("c_{} = {} exceeds c_{} + 1", i + 1, c[i], i + 2)));
            }
        }
        Ok(KupischSeries { c })
    }

    /// `T_{n,l}`, the linear quiver modulo paths of length `l`.
    pub fn tnl(n: usize, l: usize) -> Result<Self> {
        if l < 1 || l > n {
            return Err(Error::InvalidParams(format!("T(n={n}, l={l}) needs 1 <= l <= n")));
        }
        Ok(KupischSeries { c: (1..=n).map(|i| l.min(n - i + 1)).collect() })
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.c
    }

    /// `c_i`, 1-based.
    pub fn c(&self, i: usize) -> usize {
        self.c[i - 1]
    }

    pub fn dim(&self) -> usize {
        self.c.iter().sum()
    }

    /// Loewy length `l` when the series is that of `T_{n,l}`.
    pub fn as_tnl(&self) -> Option<usize> {
        let l = self.c[0];
        (KupischSeries::tnl(self.n(), l).ok()? == *self).then_some(l)
    }

    /// Length of the injective `I_j`: the number of `i ≤ j` with `S_j` a
    /// composition factor of `P_i`.
    pub fn injective_length(&self, j: usize) -> usize {
        (1..=j).filter(|&i| i + self.c(i) > j).count()
    }

    pub fn module(&self, i: usize, s: usize) -> Result<SerialModule> {
        if i < 1 || i > self.n() || s < 1 || s > self.c(i) {
            return Err(Error::InvalidParams(format!("M({i},{s}) is not a module over {self}")));
        }
        Ok(SerialModule { i, s })
    }

    /// Every indecomposable module.
    pub fn modules(&self) -> Vec<SerialModule> {
        (1..=self.n()).flat_map(|i| (1..=self.c(i)).map(move |s| SerialModule { i, s })).collect()
    }

    pub fn is_projective(&self, m: SerialModule) -> bool {
        m.s == self.c(m.i)
    }

    pub fn is_injective(&self, m: SerialModule) -> bool {
        m.s == self.injective_length(m.socle())
    }

    /// The injective envelope and the cosyzygy (if nonzero).
    pub fn envelope(&self, m: SerialModule) -> (SerialModule, Option<SerialModule>) {
        let j = m.socle();
        let d = self.injective_length(j);
        let top = j + 1 - d;
        let hull = SerialModule { i: top, s: d };
        let rest = (d > m.s).then_some(SerialModule { i: top, s: d - m.s });
        (hull, rest)
    }

    /// The projective cover and the syzygy (if nonzero).
    pub fn cover(&self, m: SerialModule) -> (SerialModule, Option<SerialModule>) {
        let c = self.c(m.i);
        let p = SerialModule { i: m.i, s: c };
        let rest = (c > m.s).then_some(SerialModule { i: m.i + m.s, s: c - m.s });
        (p, rest)
    }

    /// Terms of the minimal injective coresolution of `m`.
    pub fn coresolution(
        &self,
        m: SerialModule,
        bound: usize,
    ) -> std::result::Result<Vec<SerialModule>, PartialResolution> {
        let mut terms = Vec::new();
        let mut cur = Some(m);
        while let Some(x) = cur {
            if terms.len() > bound {
                return Err(PartialResolution { bound, terms });
            }
            let (hull, rest) = self.envelope(x);
            terms.push(hull);
            cur = rest;
        }
        Ok(terms)
    }

    /// Terms of the minimal projective resolution of `m`.
    pub fn resolution(
        &self,
        m: SerialModule,
        bound: usize,
    ) -> std::result::Result<Vec<SerialModule>, PartialResolution> {
        let mut terms = Vec::new();
        let mut cur = Some(m);
        while let Some(x) = cur {
            if terms.len() > bound {
                return Err(PartialResolution { bound, terms });
            }
            let (p, rest) = self.cover(x);
            terms.push(p);
            cur = rest;
        }
        Ok(terms)
    }

    /// Every connected series with `n` simples.
    pub fn all(n: usize) -> Vec<KupischSeries> {
        fn rec(prefix_rev: &mut Vec<usize>, n: usize, out: &mut Vec<KupischSeries>) {
            // built from the end: c_n = 1, then c_i in 2..=c_{i+1}+1
            if prefix_rev.len() == n {
                let mut c = prefix_rev.clone();
                c.reverse();
                out.push(KupischSeries { c });
                return;
            }
            let next = *prefix_rev.last().unwrap();
            for v in 2..=next + 1 {
                prefix_rev.push(v);
                rec(prefix_rev, n, out);
                prefix_rev.pop();
            }
        }
        let mut out = Vec::new();
        if n >= 1 {
            rec(&mut vec![1], n, &mut out);
        }
        out
    }
}

impl fmt::Display for KupischSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.c.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for KupischSeries {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let c = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad Kupisch entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        KupischSeries::new(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SerialModule {
    pub i: usize,
    pub s: usize,
}

impl SerialModule {
    /// Vertex of the simple socle.
    pub fn socle(&self) -> usize {
        self.i + self.s - 1
    }
}

impl fmt::Display for SerialModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.i, self.s)
    }
}

/// A resolution cut off at the bound, with the terms found so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialResolution {
    pub bound: usize,
    pub terms: Vec<SerialModule>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModuleDims {
    pub pdim: Dim,
    pub idim: Dim,
    pub domdim: Dim,
    pub codomdim: Dim,
}

fn leading(
    terms: &std::result::Result<Vec<SerialModule>, PartialResolution>,
    good: impl Fn(SerialModule) -> bool,
) -> Dim {
    match terms {
        Ok(t) => match t.iter().position(|&m| !good(m)) {
            Some(k) => Dim::Finite(k as u32),
            None => Dim::Infinite,
        },
        Err(p) => match p.terms.iter().position(|&m| !good(m)) {
            Some(k) => Dim::Finite(k as u32),
            None => Dim::Unbounded { bound: p.bound },
        },
    }
}

fn length(terms: &std::result::Result<Vec<SerialModule>, PartialResolution>) -> Dim {
    match terms {
        Ok(t) => Dim::Finite(t.len() as u32 - 1),
        Err(p) => Dim::Unbounded { bound: p.bound },
    }
}

/// Homological dimensions of one uniserial module by walking its
/// resolutions.
pub fn kupisch_module_dims(ks: &KupischSeries, m: SerialModule, bound: usize) -> Result<ModuleDims> {
    ks.module(m.i, m.s)?;
    let co = ks.coresolution(m, bound);
    let res = ks.resolution(m, bound);
    Ok(ModuleDims {
        pdim: length(&res),
        idim: length(&co),
        domdim: leading(&co, |x| ks.is_projective(x)),
        codomdim: leading(&res, |x| ks.is_injective(x)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlgebraDims {
    pub gldim: Dim,
    pub domdim: Dim,
    pub idim: Dim,
}

/// Global, dominant and self-injective dimension of the algebra.
pub fn kupisch_algebra_dims(ks: &KupischSeries, bound: usize) -> AlgebraDims {
    let mut gldim = Dim::Finite(0);
    for i in 1..=ks.n() {
        let d = kupisch_module_dims(ks, SerialModule { i, s: 1 }, bound).expect("simple module");
        gldim = gldim.max(d.pdim);
    }
    let mut domdim = Dim::Infinite;
    let mut idim = Dim::Finite(0);
    for i in 1..=ks.n() {
        let d = kupisch_module_dims(ks, SerialModule { i, s: ks.c(i) }, bound).expect("projective module");
        domdim = domdim.min(d.domdim);
        idim = idim.max(d.idim);
    }
    AlgebraDims { gldim, domdim, idim }
}

/// Dominant and injective dimension of `M(i, s)` over the linear `A_∞`
/// quiver modulo paths of length `l`.
///
/// `s = l` is projective-injective and returns `(Infinite, 0)`.
pub fn serial_dims(i: usize, s: usize, l: usize) -> Result<(Dim, u32)> {
    if i < 1 {
        return Err(Error::InvalidParams("vertices start at 1".into()));
    }
    if s < 1 || s > l {
        return Err(Error::InvalidLength { s, l });
    }
    if s == l {
        return Ok((Dim::Infinite, 0));
    }
    let (mut i, mut s) = (i as i64, s as i64);
    let l = l as i64;
    let mut steps = 0u32;
    loop {
        if i <= 0 {
            return Ok((Dim::Finite(steps), steps));
        }
        if s <= l - i {
            let g = if i == 1 { 0 } else { 1 };
            return Ok((Dim::Finite(steps), steps + g));
        }
        // unfold once: d_{i,s} = 1 + d_{i+s-l, l-s}
        let ni = i + s - l;
        s = l - s;
        i = ni;
        steps += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TnlReport {
    pub n: usize,
    pub l: usize,
    pub gldim: u32,
    pub domdim: u32,
    pub higher_auslander: bool,
    /// Base series `B` with `T_{n,l} = End(B ⊕ DB)` when higher Auslander.
    pub corresponding_pair: Option<KupischSeries>,
}

/// Closed forms for `T_{n,l}` with `n = lt + r`.
pub fn tnl_dims(n: usize, l: usize) -> Result<TnlReport> {
    if l < 2 || l > n {
        return Err(Error::InvalidParams(format!("tnl_dims needs 2 <= l <= n, got n={n}, l={l}")));
    }
    let (t, r) = ((n / l) as u32, n % l);
    let gldim = match r {
        0 => 2 * t - 1,
        1 => 2 * t,
        _ => 2 * t + 1,
    };
    let domdim = if r + 1 < l { 2 * t - 1 } else { 2 * t };
    let higher_auslander = gldim == domdim;
    let corresponding_pair = higher_auslander.then(|| {
        let base = n + 1 - l;
        KupischSeries::tnl(base, l.min(base)).expect("valid base")
    });
    Ok(TnlReport { n, l, gldim, domdim, higher_auslander, corresponding_pair })
}

/// Kupisch series of the `m`-th SGC extension of `T_{n,l}`, which is
/// `T_{n + m(l-1), l}`.
pub fn sgc_kupisch(n: usize, l: usize, m: usize) -> Result<KupischSeries> {
    if l < 2 || l > n {
        return Err(Error::InvalidParams(format!("sgc_kupisch needs 2 <= l <= n, got n={n}, l={l}")));
    }
    KupischSeries::tnl(n + m * (l - 1), l)
}

pub fn sgc_higher_auslander(n: usize, l: usize, m: usize) -> Result<bool> {
    if l < 2 || l > n {
        return Err(Error::InvalidParams(format!("sgc_higher_auslander needs 2 <= l <= n, got n={n}, l={l}")));
    }
    Ok(l == 2 || n.abs_diff(m) % l == 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum KupischCase {
    /// Some `c_i < c_{i+1}` (1-based `i`).
    Rising {
        i: usize,
    },
    /// Some `c_{i-1} - 1 = c_i = c_{i+1}`.
    Plateau {
        i: usize,
    },
    Truncated {
        l: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SerreFormalClass {
    pub serre_formal: bool,
    pub case: KupischCase,
    /// `d` with the algebra `d`-representation-finite, when Serre-formal.
    pub d: Option<usize>,
}

/// Serre-formality of a connected quotient of the linear path algebra.
///
/// Only `T_{n,l}` with `l = 2`, `l | n - 1` or `l = n` (the hereditary
/// algebra itself) are Serre-formal.
pub fn serre_formal_class_nakayama(ks: &KupischSeries) -> SerreFormalClass {
    let c = ks.as_slice();
    let n = c.len();
    if let Some(i) = (0..n.saturating_sub(1)).find(|&i| c[i] < c[i + 1]) {
        return SerreFormalClass { serre_formal: false, case: KupischCase::Rising { i: i + 1 }, d: None };
    }
    if let Some(i) = (1..n.saturating_sub(1)).find(|&i| c[i - 1] == c[i] + 1 && c[i] == c[i + 1]) {
        return SerreFormalClass { serre_formal: false, case: KupischCase::Plateau { i: i + 1 }, d: None };
    }
    let l = ks.as_tnl().expect("the remaining shape is T(n,l)");
    let case = KupischCase::Truncated { l };
    if n == 1 {
        return SerreFormalClass { serre_formal: true, case, d: None };
    }
    if l == n {
        return SerreFormalClass { serre_formal: true, case, d: Some(1) };
    }
    if l == 2 || (n - 1) % l == 0 {
        return SerreFormalClass { serre_formal: true, case, d: Some(2 * (n - 1) / l) };
    }
    SerreFormalClass { serre_formal: false, case, d: None }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Qf13Report {
    pub holds: bool,
    pub modules_checked: usize,
    /// First module with `domdim = codomdim = 0`.
    pub failure: Option<SerialModule>,
}

/// The criterion "every indecomposable has dominant or codominant
/// dimension at least 1", applicable when `domdim T_{n,l} ≥ 2`.
pub fn qf13_nakayama(n: usize, l: usize) -> Result<Qf13Report> {
    let ks = KupischSeries::tnl(n, l)?;
    if l < 2 {
        return Err(Error::InvalidParams("qf13_nakayama needs l >= 2".into()));
    }
    let dd = tnl_dims(n, l)?.domdim;
    if dd < 2 {
        return Err(Error::CriterionInapplicable { domdim: dd });
    }
    let bound = 4 * n + 4;
    let modules = ks.modules();
    let failure = modules.iter().copied().find(|&m| {
        let d = kupisch_module_dims(&ks, m, bound).expect("valid module");
        d.domdim == Dim::Finite(0) && d.codomdim == Dim::Finite(0)
    });
    Ok(Qf13Report { holds: failure.is_none(), modules_checked: modules.len(), failure })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_validation() {
        assert!(KupischSeries::new(vec![3, 3, 2, 1]).is_ok());
        assert!(KupischSeries::new(vec![3, 1]).is_err());
        assert!(KupischSeries::new(vec![2, 2, 2]).is_err());
        assert!(KupischSeries::new(vec![1, 1]).is_err());
        let ks: KupischSeries = "[3,3,3,2,1]".parse().unwrap();
        assert_eq!(ks.to_string(), "[3,3,3,2,1]");
        assert_eq!(ks.as_tnl(), Some(3));
        assert_eq!(KupischSeries::tnl(4, 4).unwrap().as_slice(), &[4, 3, 2, 1]);
        // Catalan numbers count the connected series
        assert_eq!(KupischSeries::all(5).len(), 14);
    }

    #[test]
    fn serial_dims_examples() {
        assert_eq!(serial_dims(1, 2, 3).unwrap(), (Dim::Finite(0), 0));
        assert_eq!(serial_dims(4, 1, 3).unwrap(), (Dim::Finite(2), 2));
        assert_eq!(serial_dims(2, 2, 3).unwrap(), (Dim::Finite(1), 1));
        assert_eq!(serial_dims(3, 3, 3).unwrap(), (Dim::Infinite, 0));
        assert_eq!(serial_dims(1, 4, 3), Err(Error::InvalidLength { s: 4, l: 3 }));
        assert_eq!(serial_dims(1, 0, 3), Err(Error::InvalidLength { s: 0, l: 3 }));
    }

    #[test]
    fn module_dims_examples() {
        let t63 = KupischSeries::tnl(6, 3).unwrap();
        let d = kupisch_module_dims(&t63, SerialModule { i: 5, s: 2 }, 20).unwrap();
        assert_eq!(d.domdim, Dim::Finite(3));
        let d = kupisch_module_dims(&t63, SerialModule { i: 1, s: 3 }, 20).unwrap();
        assert_eq!(d.domdim, Dim::Infinite);
        let t43 = KupischSeries::tnl(4, 3).unwrap();
        let d = kupisch_module_dims(&t43, SerialModule { i: 1, s: 1 }, 20).unwrap();
        assert_eq!((d.idim, d.pdim), (Dim::Finite(0), Dim::Finite(2)));
    }

    #[test]
    fn serial_dims_match_walk_on_long_truncations() {
        for l in 2..=6 {
            let ks = KupischSeries::tnl(12 + 3 * l, l).unwrap();
            for i in 1..=12 {
                for s in 1..=l {
                    let (dd, id) = serial_dims(i, s, l).unwrap();
                    let w = kupisch_module_dims(&ks, SerialModule { i, s }, 100).unwrap();
                    assert_eq!(w.domdim, dd, "M({i},{s}) l={l}");
                    assert_eq!(w.idim, Dim::Finite(id), "M({i},{s}) l={l}");
                    if let Dim::Finite(d) = dd {
                        assert!(id == d || id == d + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn tnl_examples_and_walk() {
        let r = tnl_dims(6, 3).unwrap();
        assert_eq!((r.gldim, r.domdim, r.higher_auslander), (3, 3, true));
        assert_eq!(r.corresponding_pair.unwrap().as_slice(), &[3, 3, 2, 1]);
        let r = tnl_dims(7, 3).unwrap();
        assert_eq!((r.gldim, r.domdim, r.higher_auslander), (4, 3, false));
        let r = tnl_dims(5, 2).unwrap();
        assert_eq!((r.gldim, r.domdim, r.higher_auslander), (4, 4, true));
        assert!(tnl_dims(3, 4).is_err());
        assert!(tnl_dims(3, 1).is_err());
        for n in 2..=20 {
            for l in 2..=n {
                let r = tnl_dims(n, l).unwrap();
                let w = kupisch_algebra_dims(&KupischSeries::tnl(n, l).unwrap(), 200);
                assert_eq!(w.gldim, Dim::Finite(r.gldim), "T({n},{l})");
                assert_eq!(w.domdim, Dim::Finite(r.domdim), "T({n},{l})");
                assert_eq!(w.idim, w.gldim);
            }
        }
    }

    #[test]
    fn sgc_examples() {
        assert_eq!(sgc_kupisch(4, 3, 1).unwrap(), KupischSeries::tnl(6, 3).unwrap());
        assert_eq!(sgc_kupisch(5, 3, 0).unwrap(), KupischSeries::tnl(5, 3).unwrap());
        assert_eq!(sgc_kupisch(5, 2, 3).unwrap(), KupischSeries::tnl(8, 2).unwrap());
        assert!(sgc_higher_auslander(4, 3, 1).unwrap());
        assert!(!sgc_higher_auslander(4, 3, 2).unwrap());
        assert!(sgc_higher_auslander(9, 2, 5).unwrap());
        for n in 2..=10 {
            for l in 2..=n {
                for m in 0..=6 {
                    let ks = sgc_kupisch(n, l, m).unwrap();
                    let ha = tnl_dims(ks.n(), l).unwrap().higher_auslander;
                    assert_eq!(ha, sgc_higher_auslander(n, l, m).unwrap(), "({n},{l},{m})");
                }
            }
        }
    }

    #[test]
    fn classification_examples() {
        let c = serre_formal_class_nakayama(&"[3,3,3,3,2,1]".parse().unwrap());
        assert!(!c.serre_formal);
        let c = serre_formal_class_nakayama(&"[3,3,3,3,3,2,1]".parse().unwrap());
        assert_eq!((c.serre_formal, c.d), (true, Some(4)));
        let c = serre_formal_class_nakayama(&"[2,2,1]".parse().unwrap());
        assert_eq!((c.serre_formal, c.d), (true, Some(2)));
        let c = serre_formal_class_nakayama(&"[2,3,2,1]".parse().unwrap());
        assert_eq!(c.case, KupischCase::Rising { i: 1 });
        let c = serre_formal_class_nakayama(&"[3,2,2,1]".parse().unwrap());
        assert_eq!(c.case, KupischCase::Plateau { i: 2 });
        let c = serre_formal_class_nakayama(&KupischSeries::tnl(4, 4).unwrap());
        assert_eq!((c.serre_formal, c.d), (true, Some(1)));
    }

    #[test]
    fn qf13() {
        let r = qf13_nakayama(6, 3).unwrap();
        assert!(r.holds);
        assert_eq!(r.modules_checked, 15);
        assert!(matches!(qf13_nakayama(3, 3), Err(Error::CriterionInapplicable { .. })));
        for n in 2..=6 {
            for l in 2..=n {
                for m in 1..=3 {
                    let big = n + m * (l - 1);
                    if tnl_dims(big, l).unwrap().domdim >= 2 {
                        assert!(qf13_nakayama(big, l).unwrap().holds, "T({big},{l})");
                    }
                }
            }
        }
    }
}
