//! Acceptance run: one line per criterion, exit status 1 if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use algolab::catalog::serial_module;
use algolab::dynkin::{parse_quiver, HereditaryDescriptor, ValuedDynkinGraph};
use algolab::geigle_lenzing::{canonical_nu_formal_scan, GLData};
use algolab::nakayama::{
    serial_dims, serre_formal_class_nakayama, sgc_higher_auslander, sgc_kupisch, tnl_dims, KupischSeries,
};
use algolab::oracle::{
    build_replicated, compile_basic, compile_bound_quiver, profile_from_oracle, recover_kupisch, serre_formal_check,
    sgc_truncation, tits_positive_roots, BasicAlgebra, Oracle, Presentation, SerreVerdict,
};
use algolab::replicated::{minimal_ag_schedule, replicated_dims_hereditary, replicated_dims_serre_formal};
use algolab::serre::{hereditary_profile, OrbitLength, SerreProfile};
use algolab::Dim;
use rayon::prelude::*;

const BOUND: usize = 64;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tnl_oracle(n: usize, l: usize) -> Oracle {
    let ks = KupischSeries::tnl(n, l).unwrap();
    Oracle::new(compile_basic(&Presentation::nakayama(&ks), n + 1).unwrap())
}

fn kupisch_oracle(ks: &KupischSeries) -> Oracle {
    Oracle::new(compile_basic(&Presentation::nakayama(ks), ks.n() + 1).unwrap())
}

fn quiver_sca(s: &str) -> algolab::oracle::StructureConstantAlgebra {
    let (q, _) = parse_quiver(s).unwrap();
    compile_bound_quiver(&Presentation::path_algebra(&q).unwrap()).unwrap()
}

fn hprofile(s: &str, horizon: usize) -> SerreProfile {
    let (q, _) = parse_quiver(s).unwrap();
    hereditary_profile(&HereditaryDescriptor::new(q).unwrap(), horizon).unwrap()
}

fn fin(d: u32) -> Dim {
    Dim::Finite(d)
}

fn nakayama_closed_forms() -> Check {
    let grid: Vec<(usize, usize)> = (2..=14).flat_map(|n| (2..=n).map(move |l| (n, l))).collect();
    grid.par_iter()
        .map(|&(n, l)| {
            let t = tnl_dims(n, l).unwrap();
            let r = tnl_oracle(n, l).report(BOUND);
            ensure(r.gldim == fin(t.gldim) && r.domdim == fin(t.domdim) && r.domdim_left == fin(t.domdim), || {
                format!(
                    "T({n},{l}): formula ({}, {}), oracle gldim {} domdim {}/{}",
                    t.gldim, t.domdim, r.gldim, r.domdim, r.domdim_left
                )
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{} algebras T(n,l), 2 <= l <= n <= 14", grid.len()))
}

fn recursion_fidelity() -> Check {
    let grid: Vec<(usize, usize)> = (2..=12).flat_map(|n| (2..=n.min(6)).map(move |l| (n, l))).collect();
    let counts = grid
        .par_iter()
        .map(|&(n, l)| {
            let ks = KupischSeries::tnl(n, l).unwrap();
            let o = tnl_oracle(n, l);
            let mut count = 0;
            for m in ks.modules() {
                let module = serial_module(&o, m.i, m.s);
                let (od, oi) = (o.domdim(&module, BOUND), o.idim(&module, BOUND));
                let (sd, si) = serial_dims(m.i, m.s, l).unwrap();
                ensure(sd == od && fin(si) == oi, || {
                    format!("T({n},{l}) M({},{}): recursion ({sd}, {si}), oracle ({od}, {oi})", m.i, m.s)
                })?;
                if let Dim::Finite(d) = sd {
                    ensure(si == d || si == d + 1, || {
                        format!("T({n},{l}) M({},{}): idim - domdim = {}", m.i, m.s, si as i64 - d as i64)
                    })?;
                }
                count += 1;
            }
            Ok(count)
        })
        .collect::<Result<Vec<usize>, String>>()?;
    Ok(format!("{} serial modules over {} algebras", counts.iter().sum::<usize>(), grid.len()))
}

fn replicated_hereditary() -> Check {
    let mut cases: Vec<(String, usize)> =
        (1..=4).flat_map(|n| (1..=3).map(move |m| (format!("A{n}:linear"), m))).collect();
    cases.extend([("kronecker".to_string(), 1), ("kronecker".to_string(), 2)]);
    cases
        .par_iter()
        .map(|(base, m)| {
            let m = *m;
            let r = replicated_dims_hereditary(&hprofile(base, m + 1), m).unwrap();
            let o = Oracle::from_sca(&build_replicated(&quiver_sca(base), m)).unwrap();
            let rep = o.report(BOUND);
            let gl = r.gldim.unwrap() as u32;
            ensure(rep.domdim == fin(r.domdim as u32) && rep.gldim == fin(gl), || {
                format!("{base} m={m}: formula ({}, {gl}), oracle ({}, {})", r.domdim, rep.domdim, rep.gldim)
            })?;
            if base == "kronecker" {
                ensure((r.domdim, gl) == (2 * m as i64, 2 * m as u32 + 1), || {
                    format!("kronecker m={m}: ({}, {gl})", r.domdim)
                })?;
            }
            Ok::<(), String>(())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{} replicated algebras, formula equals oracle", cases.len()))
}

fn coxeter_identity() -> Check {
    let mut quivers = Vec::new();
    let mut graphs: Vec<ValuedDynkinGraph> = (1..=6).map(|n| format!("A{n}").parse().unwrap()).collect();
    graphs.extend(["D4", "D5", "D6", "E6"].map(|s| s.parse::<ValuedDynkinGraph>().unwrap()));
    for g in &graphs {
        for q in g.orientations() {
            quivers.push((*g, q));
        }
    }
    for s in ["B3", "C3", "F4", "G2"] {
        let g: ValuedDynkinGraph = s.parse().unwrap();
        quivers.push((g, g.linear()));
    }
    for (g, q) in &quivers {
        let (h, nu) = g.coxeter_data();
        let p = hereditary_profile(&HereditaryDescriptor::new(q.clone()).unwrap(), h + 1).unwrap();
        let ell: Vec<usize> = p
            .ell()
            .into_iter()
            .map(|l| match l {
                OrbitLength::Known(k) => k,
                OrbitLength::Unknown => usize::MAX / 4,
            })
            .collect();
        for i in 0..g.rank {
            ensure(ell[i] + ell[nu[i]] == h, || {
                format!("{g} {q}: l_{} + l_{} = {} != {h}", i + 1, nu[i] + 1, ell[i] + ell[nu[i]])
            })?;
        }
    }
    Ok(format!("{} oriented quivers", quivers.len()))
}

fn schedules() -> Check {
    let mut count = 0;
    for n in 1..=4 {
        let p = hprofile(&format!("A{n}:linear"), 2 * n + 16);
        let s = minimal_ag_schedule(&p).unwrap();
        for m in 1..=12 {
            let t = tnl_dims(n * (m + 1), n + 1).unwrap();
            let r = replicated_dims_hereditary(&p, m).unwrap();
            ensure(r.domdim == t.domdim as i64 && r.gldim == Some(t.gldim as i64), || {
                format!(
                    "A{n} m={m}: formula ({}, {:?}), T({},{}) ({}, {})",
                    r.domdim,
                    r.gldim,
                    n * (m + 1),
                    n + 1,
                    t.domdim,
                    t.gldim
                )
            })?;
            ensure(s.contains(m) == t.higher_auslander, || {
                format!("A{n} m={m}: schedule membership {}", s.contains(m))
            })?;
            // the pointwise condition on the profile
            let pointwise = {
                let a: Vec<i64> = p.s_minus.iter().map(|r| r[m]).collect();
                let b: Vec<i64> = p.s_minus.iter().map(|r| r[m + 1]).collect();
                a.iter().all(|x| b.iter().all(|y| x == y))
            };
            ensure(pointwise == s.contains(m), || format!("A{n} m={m}: pointwise condition {pointwise}"))?;
            if let Some(&(_, dim)) = s.members(12).iter().find(|(mm, _)| *mm == m) {
                ensure(dim == t.gldim as i64 && dim == t.domdim as i64, || format!("A{n} m={m}: schedule dims {dim}"))?;
            }
            count += 1;
        }
    }
    let p = hprofile("A3:linear", 10);
    let r = replicated_dims_hereditary(&p, 3).unwrap();
    ensure((r.domdim, r.gldim) == (5, Some(5)), || format!("A3 m=3: ({}, {:?})", r.domdim, r.gldim))?;
    Ok(format!("{count} (n, m) pairs; A3 m=3 gives (5,5) = T(12,4)"))
}

fn serre_classification() -> Check {
    let series: Vec<KupischSeries> = (1..=7).flat_map(KupischSeries::all).collect();
    series
        .par_iter()
        .map(|ks| {
            let predicted = serre_formal_class_nakayama(ks).serre_formal;
            let v = serre_formal_check(&kupisch_oracle(ks), 2 * ks.n() + 2, BOUND);
            let found = match &v {
                SerreVerdict::SerreFormal { .. } => Some(true),
                SerreVerdict::NotSerreFormal { .. } => Some(false),
                SerreVerdict::Inconclusive { .. } => None,
            };
            ensure(found == Some(predicted), || format!("{ks}: classification {predicted}, oracle {v:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{} connected Kupisch series with n <= 7", series.len()))
}

fn three_vertex_non_example() -> Check {
    let p = Presentation::parse("arrows: a:1->2; b:2->3; c:3->2\nrelations: b*c; c*b").unwrap();
    let o = Oracle::new(compile_basic(&p, BOUND).unwrap());
    match serre_formal_check(&o, 4, BOUND) {
        SerreVerdict::NotSerreFormal { x, step, mut degrees, .. } => {
            degrees.sort();
            ensure(x == 1 && step == 1 && degrees == vec![0, 1], || {
                format!("vertex {} step {step} degrees {degrees:?}", x + 1)
            })?;
            Ok("not Serre-formal at P_2, step 1, degrees {0,1}".into())
        }
        other => Err(format!("{other:?}")),
    }
}

fn sgc_correspondence() -> Check {
    let mut built = 0;
    for n in 2..=6 {
        for l in 1..=3usize {
            if l + 1 > n {
                continue;
            }
            let base = compile_basic(&Presentation::nakayama(&KupischSeries::tnl(n, l + 1).unwrap()), n + 1).unwrap();
            for m in 1..=2 {
                let t = sgc_truncation(base.sca(), m).map_err(|e| format!("T({n},{}) m={m}: {e}", l + 1))?;
                let ks = recover_kupisch(&BasicAlgebra::from_sca(&t).unwrap()).unwrap();
                let want = KupischSeries::tnl(n + m * l, l + 1).unwrap();
                ensure(ks == want, || format!("T({n},{}) m={m}: got {ks}, want {want}", l + 1))?;
                built += 1;
            }
        }
    }
    let mut flags = 0;
    for n in 2..=10 {
        for l in 2..=n {
            for m in 0..=6 {
                let ks = sgc_kupisch(n, l, m).unwrap();
                let t = tnl_dims(ks.n(), l).unwrap();
                let f = sgc_higher_auslander(n, l, m).unwrap();
                ensure(f == t.higher_auslander, || {
                    format!("n={n} l={l} m={m}: flag {f}, closed form {}", t.higher_auslander)
                })?;
                flags += 1;
            }
        }
    }
    Ok(format!("{built} truncations built by the oracle, {flags} flags"))
}

fn tits_census() -> Check {
    let mut out = Vec::new();
    for (base, r, max_m) in [("A2:linear", 3usize, 2usize), ("A3:linear", 6, 1)] {
        for m in 1..=max_m {
            let o = Oracle::from_sca(&build_replicated(&quiver_sca(base), m)).unwrap();
            let roots = tits_positive_roots(&o, 2).map_err(|e| e.to_string())?;
            ensure(roots.len() == (2 * m + 1) * r, || {
                format!("{base} m={m}: {} roots, want {}", roots.len(), (2 * m + 1) * r)
            })?;
            out.push(format!("{base} m={m}: {}", roots.len()));
        }
    }
    Ok(out.join(", "))
}

fn geigle_lenzing() -> Check {
    for (w, expect) in [(vec![2, 2, 2, 2], true), (vec![2, 3, 7], false), (vec![2, 2, 2], false)] {
        let g = GLData::new(w.clone(), 1).unwrap();
        let t = g.is_torsion(&g.omega());
        ensure(t == expect, || format!("weights {w:?}: torsion {t}"))?;
    }
    let mut tuples: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..4 {
        let next: Vec<Vec<u32>> = tuples
            .iter()
            .filter(|t| t.len() == tuples.last().unwrap().len())
            .flat_map(|t| {
                let lo = t.last().copied().unwrap_or(2);
                (lo..=5).map(move |p| {
                    let mut u = t.clone();
                    u.push(p);
                    u
                })
            })
            .collect();
        tuples.extend(next);
    }
    let mut scans = 0;
    for w in &tuples {
        for d in 1..=3 {
            let v = canonical_nu_formal_scan(&GLData::new(w.clone(), d).unwrap(), 25);
            ensure(v.certified, || format!("weights {w:?} d={d}: {:?}", v.counterexample))?;
            scans += 1;
        }
    }
    Ok(format!("torsion verdicts match; {scans} scans certified over {} weight tuples", tuples.len()))
}

fn dual_identities() -> Check {
    let mut profiles: Vec<(String, SerreProfile)> = Vec::new();
    for s in
        ["A1", "A2", "A3", "A4", "A3:alternating", "D4", "D5:alternating", "E6", "B3", "C3", "F4", "G2", "kronecker"]
    {
        profiles.push((s.into(), hprofile(s, 14)));
    }
    let sf: Vec<KupischSeries> =
        (1..=7).flat_map(KupischSeries::all).filter(|k| serre_formal_class_nakayama(k).serre_formal).collect();
    for ks in &sf {
        profiles.push((ks.to_string(), profile_from_oracle(&kupisch_oracle(ks), 8, BOUND).unwrap()));
    }
    for (name, p) in &profiles {
        for m in 1..p.horizon {
            replicated_dims_serre_formal(p, m).map_err(|e| format!("{name} m={m}: {e}"))?;
        }
    }
    let mut algebras: Vec<(String, Oracle)> = Vec::new();
    for n in 1..=6 {
        for ks in KupischSeries::all(n) {
            algebras.push((ks.to_string(), kupisch_oracle(&ks)));
        }
    }
    for (base, m) in [("A2:linear", 2), ("A3:linear", 1), ("A3:alternating", 2), ("kronecker", 1), ("D4", 1)] {
        algebras.push((format!("{base}^({m})"), Oracle::from_sca(&build_replicated(&quiver_sca(base), m)).unwrap()));
    }
    algebras
        .par_iter()
        .map(|(name, o)| {
            let r = o.report(BOUND);
            ensure(r.domdim == r.codomdim_dual, || {
                format!("{name}: domdim {} vs codomdim DA {}", r.domdim, r.codomdim_dual)
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{} profiles, {} oracle algebras", profiles.len(), algebras.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, Option<u64>); 11] = [
        ("nakayama closed forms", nakayama_closed_forms, Some(60)),
        ("recursion fidelity", recursion_fidelity, None),
        ("replicated hereditary dims", replicated_hereditary, Some(300)),
        ("coxeter identity", coxeter_identity, None),
        ("higher auslander schedules", schedules, None),
        ("serre-formal classification", serre_classification, Some(300)),
        ("three-vertex non-example", three_vertex_non_example, None),
        ("sgc correspondence", sgc_correspondence, None),
        ("tits root census", tits_census, None),
        ("geigle-lenzing", geigle_lenzing, Some(60)),
        ("dual identities", dual_identities, None),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(s)) if took > Duration::from_secs(*s) => Err(format!("took {took:.1?}, limit {s} s")),
            (r, _) => r,
        };
        let limit_text = limit.map(|s| format!(", limit {s} s")).unwrap_or_default();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({took:.2?}{limit_text})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({took:.2?}{limit_text})", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
