//! Algebras by structure constants, and their normalisation to a quiver
//! with a basis of paths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Mat, Subspace};
use crate::rational::Q;

/// Sparse coordinate vector.
pub type SVec = Vec<(usize, Q)>;

/// A finite-dimensional algebra over the rationals.
///
/// `mult[i][j]` holds the coordinates of `b_i b_j`. The idempotents must be
/// orthogonal, sum to the unit and be primitive; the algebra is assumed
/// basic (checked during normalisation).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstantAlgebra {
    labels: Vec<String>,
    mult: Vec<Vec<SVec>>,
    unit: Vec<Q>,
    idempotents: Vec<Vec<Q>>,
}

fn sparse(v: &[Q]) -> SVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

impl StructureConstantAlgebra {
    /// Validates associativity and the unit and idempotent laws on all basis
    /// triples and pairs.
    pub fn new(labels: Vec<String>, mult: Vec<Vec<SVec>>, unit: Vec<Q>, idempotents: Vec<Vec<Q>>) -> Result<Self> {
        let a = StructureConstantAlgebra { labels, mult, unit, idempotents };
        a.validate()?;
        Ok(a)
    }

    /// Skips validation; for constructions that are correct by design and
    /// re-checked in tests.
    pub(crate) fn new_unchecked(
        labels: Vec<String>,
        mult: Vec<Vec<SVec>>,
        unit: Vec<Q>,
        idempotents: Vec<Vec<Q>>,
    ) -> Self {
        StructureConstantAlgebra { labels, mult, unit, idempotents }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let bad = |s: String| Err(Error::InvalidAlgebra(s));
        if self.mult.len() != n || self.mult.iter().any(|r| r.len() != n) || self.unit.len() != n {
            return bad("shape of the multiplication table".into());
        }
        if self.mult.iter().flatten().flatten().any(|(k, _)| *k >= n) {
            return bad("structure constant index out of range".into());
        }
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    if self.mult[i][j].is_empty() && self.mult[j][l].is_empty() {
                        continue;
                    }
                    let mut lhs = vec![Q::ZERO; n];
                    for (k, c) in &self.mult[i][j] {
                        for (t, d) in &self.mult[*k][l] {
                            lhs[*t] += &(c * d);
                        }
                    }
                    let mut rhs = vec![Q::ZERO; n];
                    for (k, c) in &self.mult[j][l] {
                        for (t, d) in &self.mult[i][*k] {
                            rhs[*t] += &(c * d);
                        }
                    }
                    if lhs != rhs {
                        return bad(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[l]
                        ));
                    }
                }
            }
        }
        for i in 0..n {
            let mut e = vec![Q::ZERO; n];
            e[i] = Q::ONE;
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return bad(format!("unit law fails on {}", self.labels[i]));
            }
        }
        let mut sum = vec![Q::ZERO; n];
        for (x, e) in self.idempotents.iter().enumerate() {
            if e.len() != n {
                return bad("idempotent of wrong length".into());
            }
            for (y, f) in self.idempotents.iter().enumerate() {
                let p = self.mul(e, f);
                let want: Vec<Q> = if x == y { e.clone() } else { vec![Q::ZERO; n] };
                if p != want {
                    return bad(format!("idempotents {x} and {y} are not orthogonal idempotents"));
                }
            }
            for (s, v) in sum.iter_mut().zip(e) {
                *s += v;
            }
        }
        if sum != self.unit {
            return bad("idempotents do not sum to the unit".into());
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vec<Q>] {
        &self.idempotents
    }

    pub fn num_idempotents(&self) -> usize {
        self.idempotents.len()
    }

    pub fn mult_basis(&self, i: usize, j: usize) -> &SVec {
        &self.mult[i][j]
    }

    /// Product of two elements in coordinates.
    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::ZERO; n];
        let sb = sparse(b);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in &sb {
                let xy = x * y;
                for (k, c) in &self.mult[i][*j] {
                    out[*k] += &(&xy * c);
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Q> {
        let mut e = vec![Q::ZERO; self.dim()];
        e[i] = Q::ONE;
        e
    }

    /// Transports the structure along a change of basis whose rows are the
    /// new basis vectors in old coordinates.
    pub fn rebase(&self, labels: Vec<String>, new_basis: &Mat) -> Result<StructureConstantAlgebra> {
        let n = self.dim();
        let inv = new_basis.inverse().ok_or_else(|| Error::InvalidAlgebra("singular change of basis".into()))?;
        let rows = new_basis.row_vecs();
        let mut mult = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = self.mul(&rows[i], &rows[j]);
                if p.iter().all(Q::is_zero) {
                    continue;
                }
                mult[i][j] = sparse(&inv.apply(&p));
            }
        }
        let unit = inv.apply(&self.unit);
        let idempotents = self.idempotents.iter().map(|e| inv.apply(e)).collect();
        Ok(StructureConstantAlgebra { labels, mult, unit, idempotents })
    }

    /// The Jacobson radical as the kernel of the trace form of the regular
    /// representation (valid in characteristic zero).
    pub fn trace_radical(&self) -> Subspace {
        let n = self.dim();
        // t_k = trace of left multiplication by b_k
        let t: Vec<Q> = (0..n)
            .map(|k| {
                let mut s = Q::ZERO;
                for l in 0..n {
                    for (idx, c) in &self.mult[k][l] {
                        if *idx == l {
                            s += c;
                        }
                    }
                }
                s
            })
            .collect();
        let mut g = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut s = Q::ZERO;
                for (k, c) in &self.mult[i][j] {
                    s += &(c * &t[*k]);
                }
                g.set(i, j, s);
            }
        }
        Subspace::from_independent(g.left_kernel())
    }

    /// Serialises to a JSON structure-constant dump.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialisable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let a: StructureConstantAlgebra = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        a.validate()?;
        Ok(a)
    }
}

/// An element of the path basis: a word in the arrows from `src` to `tgt`
/// (empty word: the idempotent at `src`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathWord {
    pub src: usize,
    pub tgt: usize,
    pub word: Vec<usize>,
}

/// A basic algebra `KQ/I` with a basis of path classes, each lying in a
/// single block `e_x A e_y`.
#[derive(Debug, Clone)]
pub struct BasicAlgebra {
    n: usize,
    arrows: Vec<(usize, usize)>,
    basis: Vec<PathWord>,
    block: Vec<Vec<Vec<usize>>>,
    pos: Vec<usize>,
    arrow_elem: Vec<usize>,
    right: Vec<Vec<SVec>>,
    left: Vec<Vec<SVec>>,
    sca: StructureConstantAlgebra,
}

impl BasicAlgebra {
    /// Builds from an algebra whose basis is already a set of path classes:
    /// the idempotents are basis elements, each basis element is
    /// homogeneous, and `arrows[k]` is the basis element `arrow_elem[k]`.
    pub(crate) fn from_words(
        sca: StructureConstantAlgebra,
        n: usize,
        arrows: Vec<(usize, usize)>,
        basis: Vec<PathWord>,
    ) -> Result<Self> {
        let dim = sca.dim();
        if basis.len() != dim {
            return Err(Error::InvalidAlgebra("word basis size".into()));
        }
        let mut block = vec![vec![Vec::new(); n]; n];
        let mut pos = vec![0; dim];
        for (b, w) in basis.iter().enumerate() {
            pos[b] = block[w.src][w.tgt].len();
            block[w.src][w.tgt].push(b);
        }
        let arrow_elem: Vec<usize> = (0..arrows.len())
            .map(|k| {
                basis
                    .iter()
                    .position(|w| w.word.len() == 1 && w.word[0] == k)
                    .ok_or_else(|| Error::InvalidAlgebra(format!("arrow {k} is not a basis element")))
            })
            .collect::<Result<_>>()?;
        let mut right = vec![vec![Vec::new(); arrows.len()]; dim];
        let mut left = vec![vec![Vec::new(); arrows.len()]; dim];
        for b in 0..dim {
            for (k, &(s, t)) in arrows.iter().enumerate() {
                if basis[b].tgt == s {
                    right[b][k] = sca.mult_basis(b, arrow_elem[k]).clone();
                }
                if basis[b].src == t {
                    left[b][k] = sca.mult_basis(arrow_elem[k], b).clone();
                }
            }
        }
        Ok(BasicAlgebra { n, arrows, basis, block, pos, arrow_elem, right, left, sca })
    }

    /// Normalises an arbitrary basic algebra: radical by the trace form,
    /// arrows from a complement of `J^2` in `J`, and a basis of products of
    /// arrows chosen greedily by length.
    pub fn from_sca(sca: &StructureConstantAlgebra) -> Result<Self> {
        let dim = sca.dim();
        let n = sca.num_idempotents();
        let e = sca.idempotents();
        let project = |v: &[Q], x: usize, y: usize| sca.mul(&sca.mul(&e[x], v), &e[y]);
        let rad = sca.trace_radical();
        let jrows = rad.basis().row_vecs();
        // blocks of J
        let mut jb: Vec<Vec<Vec<Vec<Q>>>> = vec![vec![Vec::new(); n]; n];
        for x in 0..n {
            for y in 0..n {
                let rows: Vec<Vec<Q>> = jrows.iter().map(|r| project(r, x, y)).collect();
                let sub = Subspace::span(&Mat::from_rows(rows, dim));
                jb[x][y] = sub.basis().row_vecs();
            }
        }
        for x in 0..n {
            let full =
                Subspace::span(&Mat::from_rows((0..dim).map(|i| project(&sca.basis_vector(i), x, x)).collect(), dim));
            if full.dim() != jb[x][x].len() + 1 {
                return Err(Error::InvalidAlgebra(format!(
                    "e_{x} A e_{x} / rad is not one-dimensional: algebra not basic or idempotent not primitive"
                )));
            }
        }
        // arrows: complement of J^2 in J, blockwise
        let mut arrows = Vec::new();
        let mut arrow_vecs = Vec::new();
        for x in 0..n {
            for z in 0..n {
                let mut sq = Vec::new();
                for y in 0..n {
                    for a in &jb[x][y] {
                        for b in &jb[y][z] {
                            sq.push(sca.mul(a, b));
                        }
                    }
                }
                let mut acc = Subspace::span(&Mat::from_rows(sq, dim));
                for v in &jb[x][z] {
                    if !acc.contains(v) {
                        arrows.push((x, z));
                        arrow_vecs.push(v.clone());
                        let mut rows = acc.basis().row_vecs();
                        rows.push(v.clone());
                        acc = Subspace::from_independent(Mat::from_rows(rows, dim));
                    }
                }
            }
        }
        // greedy word basis, extending only kept words
        let mut words: Vec<PathWord> = (0..n).map(|x| PathWord { src: x, tgt: x, word: vec![] }).collect();
        let mut vecs: Vec<Vec<Q>> = e.to_vec();
        let mut spans: Vec<Vec<Subspace>> = vec![vec![Subspace::from_independent(Mat::zeros(0, dim)); n]; n];
        for x in 0..n {
            spans[x][x] = Subspace::from_independent(Mat::from_rows(vec![e[x].clone()], dim));
        }
        let mut frontier: Vec<usize> = (0..n).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &w in &frontier {
                for (k, &(s, t)) in arrows.iter().enumerate() {
                    if words[w].tgt != s {
                        continue;
                    }
                    let v = sca.mul(&vecs[w], &arrow_vecs[k]);
                    let src = words[w].src;
                    if spans[src][t].contains(&v) {
                        continue;
                    }
                    let mut rows = spans[src][t].basis().row_vecs();
                    rows.push(v.clone());
                    spans[src][t] = Subspace::from_independent(Mat::from_rows(rows, dim));
                    let mut word = words[w].word.clone();
                    word.push(k);
                    words.push(PathWord { src, tgt: t, word });
                    vecs.push(v);
                    next.push(words.len() - 1);
                }
            }
            frontier = next;
        }
        if words.len() != dim {
            return Err(Error::InvalidAlgebra(format!("arrows generate {} of {} dimensions", words.len(), dim)));
        }
        let labels = words.iter().map(|w| word_label(w)).collect();
        let rebased = sca.rebase(labels, &Mat::from_rows(vecs, dim))?;
        BasicAlgebra::from_words(rebased, n, arrows, words)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn basis(&self) -> &[PathWord] {
        &self.basis
    }

    /// Basis indices of `e_x A e_y`.
    pub fn block(&self, x: usize, y: usize) -> &[usize] {
        &self.block[x][y]
    }

    pub fn pos(&self, b: usize) -> usize {
        self.pos[b]
    }

    pub fn arrow_elem(&self, k: usize) -> usize {
        self.arrow_elem[k]
    }

    /// Coordinates of `b · arrow_k` (empty when not composable or zero).
    pub fn right_arrow(&self, b: usize, k: usize) -> &SVec {
        &self.right[b][k]
    }

    /// Coordinates of `arrow_k · b`.
    pub fn left_arrow(&self, b: usize, k: usize) -> &SVec {
        &self.left[b][k]
    }

    pub fn sca(&self) -> &StructureConstantAlgebra {
        &self.sca
    }

    /// The opposite algebra on the same basis: arrows reversed, words
    /// read backwards.
    pub fn opposite(&self) -> BasicAlgebra {
        let dim = self.dim();
        let mut mult = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                mult[i][j] = self.sca.mult_basis(j, i).clone();
            }
        }
        let sca = StructureConstantAlgebra::new_unchecked(
            self.sca.labels().iter().map(|l| format!("{l}^op")).collect(),
            mult,
            self.sca.unit().to_vec(),
            self.sca.idempotents().to_vec(),
        );
        let mut block = vec![vec![Vec::new(); self.n]; self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                block[y][x] = self.block[x][y].clone();
            }
        }
        BasicAlgebra {
            n: self.n,
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
            basis: self
                .basis
                .iter()
                .map(|w| PathWord { src: w.tgt, tgt: w.src, word: w.word.iter().rev().copied().collect() })
                .collect(),
            block,
            pos: self.pos.clone(),
            arrow_elem: self.arrow_elem.clone(),
            right: self.left.clone(),
            left: self.right.clone(),
            sca,
        }
    }

    /// Whether the quiver has no oriented cycles.
    pub fn is_triangular(&self) -> bool {
        let mut indeg = vec![0usize; self.n];
        for &(s, t) in &self.arrows {
            if s == t {
                return false;
            }
            indeg[t] += 1;
        }
        let mut ready: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = ready.pop() {
            seen += 1;
            for &(s, t) in &self.arrows {
                if s == u {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        seen == self.n
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(s, t) in &self.arrows {
                for (a, b) in [(s, t), (t, s)] {
                    if a == u && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `(dim e_x A e_y)`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| (0..self.n).map(|y| self.block[x][y].len()).collect()).collect()
    }
}

pub(crate) fn word_label(w: &PathWord) -> String {
    if w.word.is_empty() {
        format!("e{}", w.src + 1)
    } else {
        w.word.iter().map(|k| format!("a{}", k + 1)).collect::<Vec<_>>().join("*")
    }
}
