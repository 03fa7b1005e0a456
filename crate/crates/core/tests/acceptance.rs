//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use arcmaps::gfproj::ProjPoint;
use arcmaps::groups::{build_group, Family, Group};
use arcmaps::mapgeom::{build_revmap, flag_system, MapGeometry, Recognized};
use arcmaps::record::check_coprime;
use arcmaps::triples::{
    enumerate_reversing_triples, ext_construction_set, ext_triple, orbit_representatives, pgl_construction_set,
    psl_construction_set, ReversingTriple, TriplePattern, DEFAULT_TRIPLE_BUDGET,
};
use arcmaps::verify::{
    a5_exceptional_case, check_membership_lemma, check_no_rotary, check_pgl_action,
    coprime_census, membership_split_holds, sylow_lcm_holds, verify_matrix, CensusMode, VerifyOptions,
    DEFAULT_ROTARY_BUDGET,
};

type Outcome = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

struct Run {
    failures: usize,
    /// Group order and stabiliser orders of every coprime map built on the way.
    stabilisers: Vec<(u64, Vec<u64>)>,
    /// The same for constructed maps whose chi and |E| share a factor.
    non_coprime: Vec<(u64, Vec<u64>)>,
}

impl Run {
    fn criterion(&mut self, n: u32, name: &str, limit: Duration, body: impl FnOnce(&mut Self) -> Outcome) {
        let start = Instant::now();
        let mut result = body(self);
        let elapsed = start.elapsed();
        if result.is_ok() && elapsed > limit {
            result = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
        }
        match result {
            Ok(()) => println!("criterion {n:>2} PASS  {name} ({elapsed:.2?})"),
            Err(why) => {
                self.failures += 1;
                println!("criterion {n:>2} FAIL  {name} ({elapsed:.2?}): {why}");
            }
        }
    }

    fn keep(&mut self, m: &MapGeometry) {
        let entry = (m.group_order() as u64, m.stabilizer_orders());
        if check_coprime(m.euler_characteristic(), m.counts().e as u64) {
            self.stabilisers.push(entry);
        } else {
            self.non_coprime.push(entry);
        }
    }
}

fn fixed_points(g: &Group, x: arcmaps::groups::ElemId) -> Vec<ProjPoint> {
    (0..=g.p()).map(ProjPoint).filter(|&pt| g.act(x, pt) == pt).collect()
}

/// Census over `g` restricted to the predicted pattern; checks the maps
/// and returns them.
fn census_maps(run: &mut Run, g: &Group, mode: CensusMode, want: [u64; 3], chi: i64) -> Result<Vec<MapGeometry>, String> {
    let census = coprime_census(g, mode, DEFAULT_TRIPLE_BUDGET).map_err(|e| e.to_string())?;
    let found = census.patterns();
    ensure(found == BTreeSet::from([want]), || format!("patterns {found:?}, want {{{want:?}}}"))?;
    let mut maps = Vec::new();
    for t in &census.orbits {
        let m = build_revmap(g, t).map_err(|e| e.to_string())?;
        let flags = flag_system(&m).map_err(|e| e.to_string())?;
        let c = m.counts();
        ensure(m.euler_characteristic() == chi, || format!("chi {} for {t:?}", m.euler_characteristic()))?;
        ensure(check_coprime(chi, c.e as u64), || format!("gcd({chi}, {}) != 1", c.e))?;
        ensure(!flags.is_bipartite(), || "flag graph is bipartite".into())?;
        ensure(flags.len() == 4 * c.e, || "flag count".into())?;
        run.keep(&m);
        maps.push(m);
    }
    ensure(!maps.is_empty(), || "no maps".into())?;
    Ok(maps)
}

fn construction_agrees(g: &Group, pattern: TriplePattern, constructed: Vec<ReversingTriple>) -> Outcome {
    let enumerated = enumerate_reversing_triples(g, pattern, DEFAULT_TRIPLE_BUDGET).map_err(|e| e.to_string())?;
    let constructed: Vec<_> = constructed.into_iter().filter(|t| t.generates && t.pattern == pattern).collect();
    let (a, b) = (orbit_representatives(g, &enumerated), orbit_representatives(g, &constructed));
    ensure(!a.is_empty() && a == b, || format!("{}: {} enumerated orbits vs {} constructed", g.descriptor(), a.len(), b.len()))
}

fn group(f: Family, p: u32, m: u32) -> Result<Group, String> {
    build_group(f, p, m).map_err(|e| e.to_string())
}

fn main() {
    let mut run = Run { failures: 0, stabilisers: Vec::new(), non_coprime: Vec::new() };
    let secs = Duration::from_secs;

    run.criterion(1, "A5 flag-regular maps: K6 and Petersen on the projective plane", secs(1), |run| {
        let r = a5_exceptional_case().map_err(|e| e.to_string())?;
        ensure(r.passed, || "report did not pass".into())?;
        let (k, d) = (&r.k6, &r.petersen);
        ensure((k.counts.v, k.counts.e, k.counts.faces()) == (6, 15, 10), || format!("{:?}", k.counts))?;
        ensure((d.counts.v, d.counts.e, d.counts.faces()) == (10, 15, 6), || format!("{:?}", d.counts))?;
        ensure(k.chi == 1 && d.chi == 1 && !k.orientable && !d.orientable, || "chi or orientability".into())?;
        ensure(k.graph.recognized == Recognized::Complete(6), || format!("{}", k.graph.recognized))?;
        ensure(d.graph.recognized == Recognized::Petersen, || format!("{}", d.graph.recognized))?;
        let mut stabs: BTreeSet<u64> = k.stabilizer_orders.iter().copied().collect();
        stabs.insert(r.arc_stabilizer_order);
        ensure(stabs == BTreeSet::from([10, 6, 4, 2]), || format!("stabilisers {stabs:?}"))?;
        for rec in [k, d] {
            run.stabilisers.push((60, rec.stabilizer_orders.clone()));
        }
        Ok(())
    });

    run.criterion(2, "PSL(2,5): exhaustive census gives only {10,6,4}, chi 1, nonorientable", secs(5), |run| {
        let g = group(Family::Psl2, 5, 1)?;
        let census = coprime_census(&g, CensusMode::Full, DEFAULT_TRIPLE_BUDGET).map_err(|e| e.to_string())?;
        ensure(census.examined == 15 * 14 * 13, || format!("examined {}", census.examined))?;
        let maps = census_maps(run, &g, CensusMode::Full, [10, 6, 4], 1)?;
        // rotated orbits put a face subgroup at the vertex; chi and |E| agree
        let mut oriented = 0;
        for m in &maps {
            let c = m.counts();
            ensure(c.e == 30 && c.v + c.faces() == 31, || format!("{c:?}"))?;
            if m.stabilizer_orders()[0] == 10 {
                oriented += 1;
                ensure((c.v, c.faces()) == (6, 25), || format!("{c:?}"))?;
            }
        }
        ensure(oriented > 0, || "no orbit with vertex stabiliser of order 10".into())
    });

    for p in [7, 11] {
        run.criterion(3, &format!("PSL(2,{p}): no coprime reversing triple"), secs(30), |_| {
            let g = group(Family::Psl2, p, 1)?;
            let census = coprime_census(&g, CensusMode::Full, DEFAULT_TRIPLE_BUDGET).map_err(|e| e.to_string())?;
            ensure(census.qualifying == 0, || format!("{} qualifying triples", census.qualifying))
        });
    }

    run.criterion(4, "PSL(2,13): only {26,14,12}, chi -335, all triples of the constructed form", secs(300), |run| {
        let g = group(Family::Psl2, 13, 1)?;
        census_maps(run, &g, CensusMode::ClassReps, [26, 14, 12], -335)?;
        ensure(check_coprime(-335, 546), || "gcd(335, 546)".into())?;
        let pattern = TriplePattern::new(26, 14, 12);
        let all = enumerate_reversing_triples(&g, pattern, DEFAULT_TRIPLE_BUDGET).map_err(|e| e.to_string())?;
        for t in &all {
            let common = fixed_points(&g, t.x).iter().any(|pt| fixed_points(&g, t.y).contains(pt));
            ensure(common && fixed_points(&g, t.z).len() == 2, || format!("{t:?} not of the constructed form"))?;
        }
        construction_agrees(&g, pattern, psl_construction_set(&g).map_err(|e| e.to_string())?)
    });

    run.criterion(5, "PGL(2,p), p in {5,7,11}: pattern {2p,2(p+1),2(p-1)}, chi, membership split", secs(600), |run| {
        for (p, chi) in [(5u32, -23i64), (7, -95), (11, -479)] {
            let g = group(Family::Pgl2, p, 1)?;
            let q = p as u64;
            census_maps(run, &g, CensusMode::ClassReps, [2 * (q + 1), 2 * q, 2 * (q - 1)], chi)?;
            let pattern = TriplePattern::new(2 * q, 2 * (q + 1), 2 * (q - 1));
            let all = enumerate_reversing_triples(&g, pattern, DEFAULT_TRIPLE_BUDGET).map_err(|e| e.to_string())?;
            ensure(membership_split_holds(&g, &all), || format!("membership split fails at p={p}"))?;
            ensure(check_membership_lemma(p).unwrap_or(false), || format!("membership lemma fails at p={p}"))?;
            construction_agrees(&g, pattern, pgl_construction_set(&g).map_err(|e| e.to_string())?)?;
        }
        Ok(())
    });

    run.criterion(6, "EXT (7,3), (7,5), (11,3): constructed pattern, (7,5) chi -571, only constructed triples", secs(900), |run| {
        for (p, m) in [(7u32, 3u32), (7, 5), (11, 3)] {
            let x = group(Family::Ext, p, m)?;
            let (q, mm) = (p as u64, m as u64);
            let pattern = TriplePattern::new(2 * mm * q, 2 * (q + 1), 2 * (q - 1));
            let t = ext_triple(&x, 0, 1, 0).map_err(|e| e.to_string())?;
            ensure(t.pattern == pattern && t.generates, || format!("({p},{m}): {}", t.pattern))?;
            let map = build_revmap(&x, &t).map_err(|e| e.to_string())?;
            run.keep(&map);
            if (p, m) == (7, 5) {
                let e = map.counts().e as u64;
                ensure(map.euler_characteristic() == -571 && e == 840 && check_coprime(-571, e), || {
                    format!("chi {} |E| {e}", map.euler_characteristic())
                })?;
                census_maps(run, &x, CensusMode::ClassReps, pattern.multiset(), -571)?;
            }
            construction_agrees(&x, pattern, ext_construction_set(&x).map_err(|e| e.to_string())?)?;
        }
        Ok(())
    });

    run.criterion(7, "no coprime vertex-rotary map over PSL(2,5), PGL(2,5), PSL(2,7)", secs(120), |_| {
        for (f, p) in [(Family::Psl2, 5), (Family::Pgl2, 5), (Family::Psl2, 7)] {
            let g = group(f, p, 1)?;
            ensure(check_no_rotary(&g, DEFAULT_ROTARY_BUDGET).unwrap_or(false), || format!("{}", g.descriptor()))?;
        }
        Ok(())
    });

    run.criterion(8, "PGL(2,p) action properties for p in {5,7,11,13}", secs(60), |_| {
        for p in [5, 7, 11, 13] {
            ensure(check_pgl_action(p).unwrap_or(false), || format!("p={p}"))?;
        }
        Ok(())
    });

    run.criterion(9, "lcm identity on every coprime map from criteria 1-6", secs(1), |run| {
        ensure(run.stabilisers.len() > 2, || "no maps recorded".into())?;
        for (order, stabs) in &run.stabilisers {
            ensure(sylow_lcm_holds(*order, stabs), || format!("|G|={order}, stabilisers {stabs:?}"))?;
        }
        // outside the hypothesis the identity is expected to break
        ensure(run.non_coprime.len() == 2, || format!("{} non-coprime maps", run.non_coprime.len()))?;
        for (order, stabs) in &run.non_coprime {
            ensure(!sylow_lcm_holds(*order, stabs), || format!("identity holds unexpectedly at |G|={order}"))?;
        }
        Ok(())
    });

    run.criterion(10, "verify matrix JSON is byte-identical across runs and worker counts", secs(600), |_| {
        let render = |threads: usize| -> Result<String, String> {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
            let reports = pool.install(|| verify_matrix(VerifyOptions::default())).map_err(|e| e.to_string())?;
            serde_json::to_string(&reports).map_err(|e| e.to_string())
        };
        let (a, b) = (render(0)?, render(1)?);
        ensure(a == b, || "outputs differ".into())?;
        ensure(a == render(0)?, || "outputs differ between identical runs".into())
    });

    if run.failures > 0 {
        println!("{} criteria failed", run.failures);
        std::process::exit(1);
    }
}
