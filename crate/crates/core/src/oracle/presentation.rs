//! Bound quiver presentations `KQ/I` and their compilation to structure
//! constants.
//!
//! Text format (one directive per line, `#` starts a comment):
//!
//! ```text
//! vertices: 3
//! arrows: a:1->2; b:2->3
//! relations: a*b; len>=3
//! ```
//!
//! A relation is a linear combination of parallel paths of one length,
//! such as `a*b2 - b*a2` or `2 a*b + 1/2 c*d`. `len>=k` kills every path of
//! length at least `k`.

use std::collections::HashMap;

use crate::dynkin::ValuedQuiver;
use crate::error::{Error, Result};
use crate::matrix::{Mat, Subspace};
use crate::nakayama::KupischSeries;
use crate::oracle::algebra::{BasicAlgebra, PathWord, SVec, StructureConstantAlgebra};
use crate::rational::Q;

/// Degree past which path classes are declared non-terminating.
pub const DEFAULT_DEGREE_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub terms: Vec<(Q, Vec<usize>)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub n: usize,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    pub zero_from_length: Option<usize>,
}

impl Presentation {
    pub fn new(n: usize, arrows: Vec<Arrow>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("presentation without vertices".into()));
        }
        for a in &arrows {
            if a.src >= n || a.tgt >= n {
                return Err(Error::InvalidParams(format!("arrow {} leaves the vertex range", a.name)));
            }
        }
        Ok(Presentation { n, arrows, relations: Vec::new(), zero_from_length: None })
    }

    /// Adds a relation after checking that its paths are composable,
    /// parallel, of one length at least 2.
    pub fn add_relation(&mut self, terms: Vec<(Q, Vec<usize>)>) -> Result<()> {
        let terms: Vec<(Q, Vec<usize>)> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        let Some((_, first)) = terms.first() else {
            return Ok(());
        };
        let len = first.len();
        if len < 2 {
            return Err(Error::InvalidParams("relations must have length at least 2".into()));
        }
        let ends = |p: &[usize]| -> Result<(usize, usize)> {
            for w in p.windows(2) {
                if self.arrows[w[0]].tgt != self.arrows[w[1]].src {
                    return Err(Error::InvalidParams(format!(
                        "{}*{} is not a path",
                        self.arrows[w[0]].name, self.arrows[w[1]].name
                    )));
                }
            }
            Ok((self.arrows[p[0]].src, self.arrows[*p.last().unwrap()].tgt))
        };
        let e0 = ends(first)?;
        for (_, p) in &terms {
            if p.len() != len {
                return Err(Error::InvalidParams("relations must be homogeneous in path length".into()));
            }
            if ends(p)? != e0 {
                return Err(Error::InvalidParams("relation terms are not parallel".into()));
            }
        }
        self.relations.push(Relation { terms });
        Ok(())
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| Error::Parse(format!("unknown arrow {name:?}")))
    }

    /// Path algebra of a simply-laced acyclic quiver.
    pub fn path_algebra(q: &ValuedQuiver) -> Result<Self> {
        if !q.is_simply_laced() {
            return Err(Error::InvalidParams("valued quivers have no module oracle".into()));
        }
        let arrows = q
            .arrows
            .iter()
            .enumerate()
            .map(|(k, a)| Arrow { name: format!("a{}", k + 1), src: a.src, tgt: a.tgt })
            .collect();
        Presentation::new(q.n, arrows)
    }

    /// The Nakayama algebra with Kupisch series `ks` as a monomial quotient
    /// of the linear quiver.
    pub fn nakayama(ks: &KupischSeries) -> Self {
        let n = ks.n();
        let arrows = (0..n - 1).map(|i| Arrow { name: format!("a{}", i + 1), src: i, tgt: i + 1 }).collect();
        let mut p = Presentation::new(n, arrows).expect("valid linear quiver");
        for i in 1..=n {
            let c = ks.c(i);
            if i + c <= n {
                let path: Vec<usize> = (i - 1..i - 1 + c).collect();
                p.add_relation(vec![(Q::ONE, path)]).expect("monomial relation");
            }
        }
        p
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut arrow_specs: Vec<(String, usize, usize)> = Vec::new();
        let mut rel_text: Vec<String> = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, val) =
                line.split_once(':').ok_or_else(|| Error::Parse(format!("expected `key: value`, got {line:?}")))?;
            match key.trim() {
                "vertices" => {
                    n = Some(val.trim().parse().map_err(|_| Error::Parse(format!("bad vertex count {val:?}")))?);
                }
                "arrows" => {
                    for spec in val.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                        let (name, ends) =
                            spec.split_once(':').ok_or_else(|| Error::Parse(format!("bad arrow {spec:?}")))?;
                        let (s, t) =
                            ends.split_once("->").ok_or_else(|| Error::Parse(format!("bad arrow {spec:?}")))?;
                        let v = |x: &str| -> Result<usize> {
                            let k: usize =
                                x.trim().parse().map_err(|_| Error::Parse(format!("bad vertex in {spec:?}")))?;
                            if k == 0 {
                                return Err(Error::Parse("vertices are numbered from 1".into()));
                            }
                            Ok(k - 1)
                        };
                        arrow_specs.push((name.trim().to_string(), v(s)?, v(t)?));
                    }
                }
                "relations" => rel_text.extend(val.split(';').map(|s| s.trim().to_string()).filter(|s| !s.is_empty())),
                other => return Err(Error::Parse(format!("unknown directive {other:?}"))),
            }
        }
        let n = n.unwrap_or_else(|| arrow_specs.iter().map(|a| a.1.max(a.2) + 1).max().unwrap_or(1));
        let arrows = arrow_specs.into_iter().map(|(name, src, tgt)| Arrow { name, src, tgt }).collect();
        let mut p = Presentation::new(n, arrows)?;
        for r in rel_text {
            if let Some(k) = r.strip_prefix("len>=") {
                let k: usize = k.trim().parse().map_err(|_| Error::Parse(format!("bad length bound {r:?}")))?;
                if k < 2 {
                    return Err(Error::InvalidParams("length bound must be at least 2".into()));
                }
                p.zero_from_length = Some(p.zero_from_length.map_or(k, |old: usize| old.min(k)));
                continue;
            }
            let terms = parse_combination(&p, &r)?;
            p.add_relation(terms)?;
        }
        Ok(p)
    }
}

fn parse_combination(p: &Presentation, s: &str) -> Result<Vec<(Q, Vec<usize>)>> {
    let mut terms = Vec::new();
    let mut sign = Q::ONE;
    let mut cur = String::new();
    let flush = |cur: &mut String, sign: &Q, terms: &mut Vec<(Q, Vec<usize>)>| -> Result<()> {
        let t = cur.trim();
        if t.is_empty() {
            return Ok(());
        }
        let mut coeff = sign.clone();
        let mut rest = t;
        if let Some((c, path)) = t.split_once(char::is_whitespace) {
            if let Ok(q) = c.parse::<Q>() {
                coeff = &coeff * &q;
                rest = path.trim();
            }
        }
        let path = rest.split('*').map(|a| p.arrow_index(a.trim())).collect::<Result<Vec<_>>>()?;
        terms.push((coeff, path));
        cur.clear();
        Ok(())
    };
    for ch in s.chars() {
        match ch {
            '+' | '-' => {
                if !cur.trim().is_empty() {
                    flush(&mut cur, &sign, &mut terms)?;
                }
                sign = if ch == '-' { Q::int(-1) } else { Q::ONE };
            }
            _ => cur.push(ch),
        }
    }
    flush(&mut cur, &sign, &mut terms)?;
    Ok(terms)
}

type PathKey = (usize, Vec<usize>);

struct Level {
    paths: Vec<PathKey>,
    index: HashMap<PathKey, usize>,
    ideal: Subspace,
    /// quotient map `V_k -> V_k / I_k` in complement coordinates
    quotient: Mat,
    /// global basis index of each complement coordinate
    basis_ids: Vec<usize>,
}

/// Compiles a presentation to an algebra with a path-class basis.
pub fn compile_basic(p: &Presentation, degree_bound: usize) -> Result<BasicAlgebra> {
    let arrows = &p.arrows;
    let end = |key: &PathKey| if key.1.is_empty() { key.0 } else { arrows[*key.1.last().unwrap()].tgt };
    let mut levels: Vec<Level> = Vec::new();
    let mut words: Vec<PathWord> = Vec::new();
    // degree 0
    {
        let paths: Vec<PathKey> = (0..p.n).map(|x| (x, vec![])).collect();
        let index = paths.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let ideal = Subspace::from_independent(Mat::zeros(0, p.n));
        let quotient = ideal.quotient_map();
        for x in 0..p.n {
            words.push(PathWord { src: x, tgt: x, word: vec![] });
        }
        levels.push(Level { paths, index, ideal, quotient, basis_ids: (0..p.n).collect() });
    }
    let mut k = 1;
    loop {
        let prev = &levels[k - 1];
        let mut paths: Vec<PathKey> = Vec::new();
        for key in &prev.paths {
            for (a, ar) in arrows.iter().enumerate() {
                if ar.src == end(key) {
                    let mut w = key.1.clone();
                    w.push(a);
                    paths.push((key.0, w));
                }
            }
        }
        if paths.is_empty() {
            break;
        }
        if k > degree_bound {
            return Err(Error::InfiniteDimensional { degree: degree_bound });
        }
        let index: HashMap<PathKey, usize> = paths.iter().cloned().enumerate().map(|(i, key)| (key, i)).collect();
        let width = paths.len();
        let everything = p.zero_from_length.is_some_and(|z| k >= z);
        let ideal = if everything {
            Subspace::from_independent(Mat::identity(width))
        } else {
            let mut gens: Vec<Vec<Q>> = Vec::new();
            if k >= 2 {
                for r in 0..prev.ideal.dim() {
                    let row = prev.ideal.basis().row(r);
                    for (a, ar) in arrows.iter().enumerate() {
                        let mut right = vec![Q::ZERO; width];
                        let mut left = vec![Q::ZERO; width];
                        let (mut any_r, mut any_l) = (false, false);
                        for (i, c) in row.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let key = &prev.paths[i];
                            if end(key) == ar.src {
                                let mut w = key.1.clone();
                                w.push(a);
                                right[index[&(key.0, w)]] += c;
                                any_r = true;
                            }
                            if key.0 == ar.tgt {
                                let mut w = vec![a];
                                w.extend(&key.1);
                                left[index[&(ar.src, w)]] += c;
                                any_l = true;
                            }
                        }
                        if any_r {
                            gens.push(right);
                        }
                        if any_l {
                            gens.push(left);
                        }
                    }
                }
            }
            for rel in p.relations.iter().filter(|r| r.terms[0].1.len() == k) {
                let mut v = vec![Q::ZERO; width];
                for (c, path) in &rel.terms {
                    let src = arrows[path[0]].src;
                    v[index[&(src, path.clone())]] += c;
                }
                gens.push(v);
            }
            Subspace::span(&Mat::from_rows(gens, width))
        };
        let comp = ideal.complement_positions();
        if comp.is_empty() {
            break;
        }
        let quotient = ideal.quotient_map();
        let mut basis_ids = Vec::new();
        for &c in &comp {
            let (src, w) = paths[c].clone();
            let tgt = arrows[*w.last().unwrap()].tgt;
            basis_ids.push(words.len());
            words.push(PathWord { src, tgt, word: w });
        }
        levels.push(Level { paths, index, ideal, quotient, basis_ids });
        k += 1;
    }
    let dim = words.len();
    let mut mult: Vec<Vec<SVec>> = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let (wi, wj) = (&words[i], &words[j]);
            if wi.tgt != wj.src {
                continue;
            }
            let deg = wi.word.len() + wj.word.len();
            if deg >= levels.len() {
                continue;
            }
            let mut w = wi.word.clone();
            w.extend(&wj.word);
            let lvl = &levels[deg];
            let key = (wi.src, w);
            let idx = lvl.index[&key];
            let row = lvl.quotient.row(idx);
            mult[i][j] = row
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(c, v)| (lvl.basis_ids[c], v.clone()))
                .collect();
        }
    }
    let labels = words
        .iter()
        .map(|w| {
            if w.word.is_empty() {
                format!("e{}", w.src + 1)
            } else {
                w.word.iter().map(|&a| arrows[a].name.clone()).collect::<Vec<_>>().join("*")
            }
        })
        .collect();
    let mut unit = vec![Q::ZERO; dim];
    for u in unit.iter_mut().take(p.n) {
        *u = Q::ONE;
    }
    let idempotents = (0..p.n)
        .map(|x| {
            let mut e = vec![Q::ZERO; dim];
            e[x] = Q::ONE;
            e
        })
        .collect();
    let sca = StructureConstantAlgebra::new_unchecked(labels, mult, unit, idempotents);
    BasicAlgebra::from_words(sca, p.n, arrows.iter().map(|a| (a.src, a.tgt)).collect(), words)
}

/// Structure constants of `KQ/I` on the basis of non-zero path classes.
pub fn compile_bound_quiver(p: &Presentation) -> Result<StructureConstantAlgebra> {
    Ok(compile_basic(p, DEFAULT_DEGREE_BOUND)?.sca().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_compilations() {
        let a3 = Presentation::parse("arrows: a:1->2; b:2->3").unwrap();
        let alg = compile_bound_quiver(&a3).unwrap();
        assert_eq!(alg.dim(), 6);
        alg.validate().unwrap();
        let t43 = Presentation::nakayama(&KupischSeries::tnl(4, 3).unwrap());
        assert_eq!(compile_bound_quiver(&t43).unwrap().dim(), 9);
        let t43b = Presentation::parse("arrows: a:1->2; b:2->3; c:3->4\nrelations: len>=3").unwrap();
        assert_eq!(compile_bound_quiver(&t43b).unwrap().dim(), 9);
    }

    #[test]
    fn commutative_square() {
        let p = Presentation::parse("arrows: a:1->2; b:2->4; c:1->3; d:3->4\nrelations: a*b - c*d").unwrap();
        let alg = compile_bound_quiver(&p).unwrap();
        assert_eq!(alg.dim(), 4 + 4 + 1);
        alg.validate().unwrap();
    }

    #[test]
    fn loops_need_bounds() {
        let p = Presentation::parse("vertices: 1\narrows: x:1->1").unwrap();
        assert_eq!(compile_basic(&p, 10).unwrap_err(), Error::InfiniteDimensional { degree: 10 });
        let p = Presentation::parse("vertices: 1\narrows: x:1->1\nrelations: x*x").unwrap();
        assert_eq!(compile_bound_quiver(&p).unwrap().dim(), 2);
    }

    #[test]
    fn rejects_bad_relations() {
        assert!(Presentation::parse("arrows: a:1->2; b:2->3\nrelations: a*b - a").is_err());
        assert!(Presentation::parse("arrows: a:1->2; b:2->3\nrelations: b*a").is_err());
        assert!(Presentation::parse("arrows: a:1->2; b:1->2; c:2->3\nrelations: a*c - b").is_err());
    }

    #[test]
    fn trace_radical_is_arrow_ideal() {
        let texts = [
            "arrows: a:1->2; b:2->3; c:3->4\nrelations: len>=3",
            "arrows: a:1->2; b:2->3; c:3->2\nrelations: b*c; c*b",
            "arrows: a:1->2; b:1->2",
            "arrows: a:1->2; b:2->4; c:1->3; d:3->4\nrelations: a*b + c*d",
        ];
        for t in texts {
            let b = compile_basic(&Presentation::parse(t).unwrap(), 64).unwrap();
            let rad = b.sca().trace_radical();
            let n = b.n();
            assert_eq!(rad.dim(), b.dim() - n, "{t}");
            for i in n..b.dim() {
                assert!(rad.contains(&b.sca().basis_vector(i)), "{t}");
            }
        }
    }
}
