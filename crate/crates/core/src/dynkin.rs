//! Dynkin graphs, valued quivers, Cartan and Coxeter matrices.
//!
//! Vertices of A, D and E6 are enumerated as in the usual diagrams
//! (A: a chain; D_n: a chain 1..n-1 with n attached to n-2; E: a chain with
//! one extra vertex attached to vertex 3). B, C, F4 and G2 use Bourbaki
//! order. A valued arrow `u -> v` carries `(a, b)`: the bimodule has
//! dimension `a` over the division ring at `u` and `b` over the one at `v`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::rational::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ValuedDynkinGraph {
    pub family: Family,
    pub rank: usize,
}

impl ValuedDynkinGraph {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E6 => rank == 6,
            Family::E7 => rank == 7,
            Family::E8 => rank == 8,
            Family::F4 => rank == 4,
            Family::G2 => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidGraph(format!("{family:?} does not exist in rank {rank}")));
        }
        Ok(ValuedDynkinGraph { family, rank })
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E6 | Family::E7 | Family::E8)
    }

    /// Squared root lengths, normalised so short roots have length 1.
    pub fn root_lengths(&self) -> Vec<i64> {
        let n = self.rank;
        match self.family {
            Family::B => (0..n).map(|i| if i + 1 == n { 1 } else { 2 }).collect(),
            Family::C => (0..n).map(|i| if i + 1 == n { 2 } else { 1 }).collect(),
            Family::F4 => vec![2, 2, 1, 1],
            Family::G2 => vec![1, 3],
            _ => vec![1; n],
        }
    }

    /// Undirected edges `(i, j)` with `i < j`, 0-based.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self.family {
            Family::A | Family::B | Family::C | Family::F4 | Family::G2 => chain(n),
            Family::D => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1));
                e
            }
            Family::E6 | Family::E7 | Family::E8 => {
                let mut e = chain(n - 1);
                e.push((2, n - 1));
                e
            }
        }
    }

    /// Generalised Cartan matrix `a_ij = 2(α_i, α_j) / (α_i, α_i)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let len = self.root_lengths();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.edges() {
            let m = len[i].max(len[j]);
            a[i][j] = -m / len[i];
            a[j][i] = -m / len[j];
        }
        a
    }

    /// Twice the Gram matrix of the simple roots.
    fn double_gram(&self) -> Vec<Vec<i64>> {
        let len = self.root_lengths();
        let a = self.cartan_matrix();
        (0..self.rank).map(|i| (0..self.rank).map(|j| a[i][j] * len[i]).collect()).collect()
    }

    /// The quadratic form `q(v) = (v, v) / (short root length)`; simple roots
    /// and all short roots have `q = 1`.
    pub fn quadratic_form(&self, v: &[i64]) -> Q {
        let g = self.double_gram();
        let mut s = 0i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += g[i][j] * v[i] * v[j];
            }
        }
        Q::new(s, 2)
    }

    /// Coxeter number and the involution `ν_Δ` (0-based).
    pub fn coxeter_data(&self) -> (usize, Vec<usize>) {
        let n = self.rank;
        let id: Vec<usize> = (0..n).collect();
        match self.family {
            Family::A => (n + 1, (0..n).map(|i| n - 1 - i).collect()),
            Family::B | Family::C => (2 * n, id),
            Family::D => {
                let mut nu = id;
                if n % 2 == 1 {
                    nu.swap(n - 2, n - 1);
                }
                (2 * n - 2, nu)
            }
            Family::E6 => (12, vec![4, 3, 2, 1, 0, 5]),
            Family::E7 => (18, id),
            Family::E8 => (30, id),
            Family::F4 => (12, id),
            Family::G2 => (6, id),
        }
    }

    pub fn coxeter_number(&self) -> usize {
        self.coxeter_data().0
    }

    /// Positive roots by closing the simple roots under simple reflections.
    pub fn positive_roots(&self) -> RootSystem {
        let n = self.rank;
        let a = self.cartan_matrix();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let c: i64 = (0..n).map(|j| beta[j] * a[i][j]).sum();
                if c == 0 {
                    continue;
                }
                let mut r = beta.clone();
                r[i] -= c;
                if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        RootSystem { roots: seen.into_iter().collect() }
    }

    /// The classical positive-root count.
    pub fn classical_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E6 => 36,
            Family::E7 => 63,
            Family::E8 => 120,
            Family::F4 => 24,
            Family::G2 => 6,
        }
    }

    /// The valued quiver with edge `{i, j}` oriented by `forward[k]`
    /// (`true`: smaller index to larger).
    pub fn orient(&self, forward: &[bool]) -> Result<ValuedQuiver> {
        let edges = self.edges();
        if forward.len() != edges.len() {
            return Err(Error::InvalidGraph(format!(
                "{} edges need {} orientation bits, got {}",
                self,
                edges.len(),
                forward.len()
            )));
        }
        let a = self.cartan_matrix();
        let arrows = edges
            .iter()
            .zip(forward)
            .map(|(&(i, j), &f)| {
                let (u, v) = if f { (i, j) } else { (j, i) };
                ValuedArrow { src: u, tgt: v, valuation: ((-a[u][v]) as u32, (-a[v][u]) as u32) }
            })
            .collect();
        ValuedQuiver::new(self.rank, arrows)
    }

    /// All `2^edges` orientations in binary counting order.
    pub fn orientations(&self) -> Vec<ValuedQuiver> {
        let e = self.edges().len();
        (0..1u64 << e)
            .map(|mask| {
                let bits: Vec<bool> = (0..e).map(|k| mask >> k & 1 == 0).collect();
                self.orient(&bits).expect("orientation of a Dynkin graph")
            })
            .collect()
    }

    pub fn linear(&self) -> ValuedQuiver {
        self.orient(&vec![true; self.edges().len()]).expect("orientation of a Dynkin graph")
    }
}

impl fmt::Display for ValuedDynkinGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A | Family::B | Family::C | Family::D => write!(f, "{:?}{}", self.family, self.rank),
            other => write!(f, "{other:?}"),
        }
    }
}

impl FromStr for ValuedDynkinGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown Dynkin type {s:?}"));
        let upper = s.to_ascii_uppercase();
        let (family, rank) = match upper.as_str() {
            "E6" => (Family::E6, 6),
            "E7" => (Family::E7, 7),
            "E8" => (Family::E8, 8),
            "F4" => (Family::F4, 4),
            "G2" => (Family::G2, 2),
            _ => {
                let mut chars = upper.chars();
                let fam = match chars.next() {
                    Some('A') => Family::A,
                    Some('B') => Family::B,
                    Some('C') => Family::C,
                    Some('D') => Family::D,
                    _ => return Err(bad()),
                };
                let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
                (fam, rank)
            }
        };
        ValuedDynkinGraph::new(family, rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    pub roots: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.roots.binary_search_by(|r| r.as_slice().cmp(v)).is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ValuedArrow {
    pub src: usize,
    pub tgt: usize,
    pub valuation: (u32, u32),
}

/// A finite quiver whose arrows carry valuations; parallel arrows are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuedQuiver {
    pub n: usize,
    pub arrows: Vec<ValuedArrow>,
}

impl ValuedQuiver {
    pub fn new(n: usize, arrows: Vec<ValuedArrow>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("quiver without vertices".into()));
        }
        for a in &arrows {
            if a.src >= n || a.tgt >= n {
                return Err(Error::InvalidGraph(format!("arrow {}->{} out of range", a.src + 1, a.tgt + 1)));
            }
            if a.valuation.0 == 0 || a.valuation.1 == 0 {
                return Err(Error::InvalidGraph("valuations must be positive".into()));
            }
        }
        Ok(ValuedQuiver { n, arrows })
    }

    pub fn kronecker() -> ValuedQuiver {
        let a = ValuedArrow { src: 0, tgt: 1, valuation: (1, 1) };
        ValuedQuiver { n: 2, arrows: vec![a, a] }
    }

    pub fn is_simply_laced(&self) -> bool {
        self.arrows.iter().all(|a| a.valuation == (1, 1))
    }

    pub fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.n];
        for a in &self.arrows {
            adj[a.src].push(a.tgt);
            adj[a.tgt].push(a.src);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// A topological order of the vertices, or the vertex on a cycle.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        for a in &self.arrows {
            indeg[a.tgt] += 1;
        }
        let mut ready: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        ready.reverse();
        let mut order = Vec::with_capacity(self.n);
        while let Some(u) = ready.pop() {
            order.push(u);
            for a in self.arrows.iter().filter(|a| a.src == u) {
                indeg[a.tgt] -= 1;
                if indeg[a.tgt] == 0 {
                    ready.push(a.tgt);
                }
            }
        }
        if order.len() < self.n {
            let v = (0..self.n).find(|&v| indeg[v] > 0).unwrap_or(0);
            return Err(Error::CyclicQuiver(v));
        }
        Ok(order)
    }

    /// Generalised Cartan matrix of the underlying valued graph.
    pub fn graph_cartan(&self) -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; self.n]; self.n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for ar in &self.arrows {
            a[ar.src][ar.tgt] -= ar.valuation.0 as i64;
            a[ar.tgt][ar.src] -= ar.valuation.1 as i64;
        }
        a
    }

    /// Whether the underlying valued graph is of Dynkin type, tested as
    /// positive definiteness of the symmetrised Cartan matrix.
    pub fn is_dynkin(&self) -> Result<bool> {
        let a = self.graph_cartan();
        let n = self.n;
        // symmetriser f with f_u a_uv = f_v a_vu
        let mut f: Vec<Option<Q>> = vec![None; n];
        for start in 0..n {
            if f[start].is_some() {
                continue;
            }
            f[start] = Some(Q::ONE);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for v in 0..n {
                    if v == u || a[u][v] == 0 {
                        continue;
                    }
                    let want = f[u].as_ref().unwrap() * &Q::new(a[u][v], a[v][u]);
                    match &f[v] {
                        None => {
                            f[v] = Some(want);
                            stack.push(v);
                        }
                        Some(cur) if *cur != want => {
                            return Err(Error::InvalidGraph("valued graph is not symmetrisable".into()));
                        }
                        _ => {}
                    }
                }
            }
        }
        let sym = Mat::from_rows(
            (0..n).map(|u| (0..n).map(|v| f[u].as_ref().unwrap() * &Q::int(a[u][v])).collect()).collect(),
            n,
        );
        let idx: Vec<usize> = (0..n).collect();
        Ok((1..=n).all(|k| sym.select_rows(&idx[..k]).select_cols(&idx[..k]).determinant().signum() > 0))
    }
}

impl fmt::Display for ValuedQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .arrows
            .iter()
            .map(|a| {
                if a.valuation == (1, 1) {
                    format!("{}->{}", a.src + 1, a.tgt + 1)
                } else {
                    format!("{}-({},{})->{}", a.src + 1, a.valuation.0, a.valuation.1, a.tgt + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "{} vertices, no arrows", self.n)
        } else {
            write!(f, "{}", parts.join(","))
        }
    }
}

/// How a base quiver is described on the command line.
///
/// Accepted forms: `A3` or `A3:linear` (every edge from smaller to larger
/// index), `A3:reverse`, `A3:alternating`, `A3:0110` (one bit per edge,
/// `0` forward), `kronecker`, `point`, and explicit arrow lists
/// `1->2,2->3` or valued `1-(1,2)->2`.
pub fn parse_quiver(s: &str) -> Result<(ValuedQuiver, Option<ValuedDynkinGraph>)> {
    let s = s.trim();
    let lower = s.to_ascii_lowercase();
    if lower == "kronecker" {
        return Ok((ValuedQuiver::kronecker(), None));
    }
    if lower == "point" {
        return Ok((ValuedQuiver::new(1, vec![])?, None));
    }
    if s.contains("->") {
        return parse_arrow_list(s).map(|q| (q, None));
    }
    let (ty, orient) = match s.split_once(':') {
        Some((t, o)) => (t, o.trim().to_ascii_lowercase()),
        None => (s, "linear".to_string()),
    };
    let g: ValuedDynkinGraph = ty.parse()?;
    let e = g.edges().len();
    let bits: Vec<bool> = match orient.as_str() {
        "linear" => vec![true; e],
        "reverse" => vec![false; e],
        "alternating" => {
            // bipartite: vertices at even distance from vertex 1 are sources
            let parity = bipartition(&g);
            g.edges().iter().map(|&(i, _)| parity[i] == 0).collect()
        }
        bitstr if bitstr.chars().all(|c| c == '0' || c == '1') && bitstr.len() == e => {
            bitstr.chars().map(|c| c == '0').collect()
        }
        other => return Err(Error::Parse(format!("unknown orientation {other:?} for {g}"))),
    };
    Ok((g.orient(&bits)?, Some(g)))
}

fn bipartition(g: &ValuedDynkinGraph) -> Vec<u8> {
    let n = g.rank;
    let mut adj = vec![Vec::new(); n];
    for (i, j) in g.edges() {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut col = vec![u8::MAX; n];
    col[0] = 0;
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if col[v] == u8::MAX {
                col[v] = 1 - col[u];
                stack.push(v);
            }
        }
    }
    col
}

fn parse_arrow_list(s: &str) -> Result<ValuedQuiver> {
    let mut arrows = Vec::new();
    let mut n = 0;
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    for part in parts.into_iter().map(str::trim).filter(|p| !p.is_empty()) {
        let (lhs, rhs) = part.split_once("->").ok_or_else(|| Error::Parse(format!("bad arrow {part:?}")))?;
        let num = |t: &str| -> Result<usize> {
            let v: usize = t.trim().parse().map_err(|_| Error::Parse(format!("bad vertex in {part:?}")))?;
            if v == 0 {
                return Err(Error::Parse("vertices are numbered from 1".into()));
            }
            Ok(v)
        };
        let (src, valuation) = match lhs.split_once('-') {
            Some((u, val)) => {
                let val = val.trim().trim_start_matches('(').trim_end_matches(')');
                let (a, b) = val.split_once(',').ok_or_else(|| Error::Parse(format!("bad valuation in {part:?}")))?;
                let p =
                    |t: &str| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad valuation in {part:?}")));
                (num(u)?, (p(a)?, p(b)?))
            }
            None => (num(lhs)?, (1, 1)),
        };
        let tgt = num(rhs)?;
        n = n.max(src).max(tgt);
        arrows.push(ValuedArrow { src: src - 1, tgt: tgt - 1, valuation });
    }
    ValuedQuiver::new(n, arrows)
}

/// Cartan and Coxeter data of the (valued) path algebra of an acyclic quiver.
///
/// Row `i` of `cartan` is `dim P_i` and column `i` of `cartan_injective` is
/// `dim I_i`; for simply-laced quivers the two coincide. Dimension vectors
/// are row vectors and `dim τ^- M = dim M · coxeter`.
#[derive(Debug, Clone, Serialize)]
pub struct HereditaryDescriptor {
    pub quiver: ValuedQuiver,
    pub topological_order: Vec<usize>,
    pub cartan: Vec<Vec<i64>>,
    pub cartan_injective: Vec<Vec<i64>>,
    pub coxeter: Vec<Vec<i64>>,
    pub coxeter_inverse: Vec<Vec<i64>>,
    pub projective_dims: Vec<Vec<i64>>,
    pub injective_dims: Vec<Vec<i64>>,
    pub representation_finite: bool,
}

impl HereditaryDescriptor {
    pub fn new(quiver: ValuedQuiver) -> Result<Self> {
        let order = quiver.topological_order()?;
        if !quiver.is_connected() {
            return Err(Error::Disconnected);
        }
        let n = quiver.n;
        let path_count = |weight: fn(&ValuedArrow) -> i64| {
            let mut c = vec![vec![0i64; n]; n];
            for &u in order.iter().rev() {
                c[u][u] = 1;
                for a in quiver.arrows.iter().filter(|a| a.src == u) {
                    let w = weight(a);
                    for j in 0..n {
                        c[u][j] += w * c[a.tgt][j];
                    }
                }
            }
            c
        };
        let cp = path_count(|a| a.valuation.1 as i64);
        let ci = path_count(|a| a.valuation.0 as i64);
        let cp_m = Mat::from_i64(&cp);
        let ci_m = Mat::from_i64(&ci);
        let ci_inv_t = ci_m.inverse().expect("unitriangular").transpose();
        let phi = ci_inv_t.mul(&cp_m).scale(&Q::int(-1));
        let phi_inv = phi.inverse().expect("Coxeter matrix is invertible");
        let to_int = |m: &Mat| m.to_i64().ok_or_else(|| Error::InvalidGraph("non-integral Coxeter matrix".into()));
        let coxeter = to_int(&phi)?;
        let coxeter_inverse = to_int(&phi_inv)?;
        let injective_dims = (0..n).map(|i| (0..n).map(|j| ci[j][i]).collect()).collect();
        let representation_finite = quiver.is_dynkin()?;
        Ok(HereditaryDescriptor {
            projective_dims: cp.clone(),
            injective_dims,
            topological_order: order,
            cartan: cp,
            cartan_injective: ci,
            coxeter,
            coxeter_inverse,
            representation_finite,
            quiver,
        })
    }

    pub fn n(&self) -> usize {
        self.quiver.n
    }

    /// Order of the Coxeter matrix, searched up to `limit`.
    pub fn coxeter_order(&self, limit: usize) -> Option<usize> {
        let phi = Mat::from_i64(&self.coxeter);
        let id = Mat::identity(self.n());
        let mut p = phi.clone();
        for k in 1..=limit {
            if p == id {
                return Some(k);
            }
            p = p.mul(&phi);
        }
        None
    }
}

/// `v · M` for integer row vectors with overflow detection.
pub fn apply_int(v: &[i64], m: &[Vec<i64>]) -> Option<Vec<i64>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![0i64; cols];
    for (k, &a) in v.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            *o = o.checked_add(a.checked_mul(m[k][j])?)?;
        }
    }
    Some(out)
}
