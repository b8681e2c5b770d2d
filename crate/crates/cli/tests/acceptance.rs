//! Acceptance checks, one line per criterion. Runs without the libtest harness
//! so every line is printed even when an earlier criterion fails.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use common::{build, c_by_characteristic_scan, legendre, Brute, CORPUS};
use profin::backtrack::{conjugating_element, normalizer};
use profin::construct::{cyclic, direct_product, symmetric};
use profin::fusion::{alperin_closure_check, g_fusion, subgroup_classes_of_sylow};
use profin::normal::{c_invariant, component_orbit_check, components, tate_check, NormalLattice};
use profin::sylow::{prime_divisors, sylow};
use profin::towers::wreath_tower;
use profin::{Caps, PermGroup};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> Result<String, String> {
    let mut argv = vec!["profin"];
    argv.extend_from_slice(args);
    let out = profin_cli::run(argv);
    if out.code != 0 {
        return Err(format!(
            "profin {} exited {}: {}",
            args.join(" "),
            out.code,
            out.stderr.trim()
        ));
    }
    Ok(out.stdout)
}

fn json(args: &[&str]) -> Result<serde_json::Value, String> {
    serde_json::from_str(&cli(args)?).map_err(|e| e.to_string())
}

fn order(g: &PermGroup) -> u64 {
    g.order_u64().unwrap()
}

fn primes_of(g: &PermGroup) -> Vec<u64> {
    prime_divisors(&g.order())
}

fn criterion_1() -> Check {
    for (p, k) in [(2u64, 6u32), (3, 4), (5, 3)] {
        let n_max = p.pow(k);
        let spec = format!("cyclic({n_max})");
        let csv = cli(&["ob-table", &spec, "--max-n", &n_max.to_string()])?;
        let mut lines = csv.lines();
        ensure(lines.next() == Some("n,ob"), || "bad CSV header".into())?;
        for (row, n) in lines.zip(1..) {
            let mut expected = 1;
            while expected * p <= n.min(n_max) {
                expected *= p;
            }
            ensure(row == format!("{n},{expected}"), || {
                format!("{spec}: row `{row}`, expected ob({n}) = {expected}")
            })?;
        }
    }
    Ok("cyclic(64), cyclic(81), cyclic(125): ob(n) = p^s for every n".into())
}

fn criterion_2() -> Check {
    let caps = Caps::default();
    let s8 = symmetric(8).unwrap();
    let s = sylow(&s8, 2).map_err(|e| e.to_string())?;
    ensure(order(&s) == 128, || format!("|Syl_2(Sym(8))| = {}", order(&s)))?;
    let tower = wreath_tower(2, 3, &caps).map_err(|e| e.to_string())?;
    let w = &tower.levels()[2];
    let x = conjugating_element(&s8, &s, w).ok_or("no conjugating element")?;
    ensure(s8.contains(&x).unwrap(), || "witness outside Sym(8)".into())?;
    ensure(
        s.generators().iter().all(|y| w.contains(&y.conjugate_by(&x)).unwrap()) && order(w) == 128,
        || "witness does not conjugate onto the tower level".into(),
    )?;
    let mut checked = 0;
    for n in 2..=12u64 {
        let g = symmetric(n as usize).unwrap();
        for p in [2u64, 3, 5, 7, 11] {
            let got = order(&sylow(&g, p).map_err(|e| e.to_string())?);
            ensure(got == p.pow(legendre(n, p)), || {
                format!("Sym({n}), p = {p}: order {got}")
            })?;
            checked += 1;
        }
    }
    for (k, level) in tower.levels().iter().enumerate() {
        let pk = 2u64.pow(k as u32 + 1);
        ensure(order(level) == 2u64.pow(legendre(pk, 2)), || {
            format!("tower level {}", k + 1)
        })?;
    }
    Ok(format!(
        "order 128, conjugate to wreath level 3 by {x}; {checked} Legendre checks"
    ))
}

const TATE_GROUPS: &[&str] = &[
    "sym(3)",
    "sym(4)",
    "sym(5)",
    "sym(6)",
    "alt(4)",
    "alt(5)",
    "alt(6)",
    "dihedral(3)",
    "dihedral(4)",
    "dihedral(5)",
    "dihedral(6)",
    "dihedral(9)",
    "dihedral(10)",
    "dihedral(12)",
    "direct(sym(3), sym(3))",
    "direct(alt(4), cyclic(3))",
    "direct(sym(4), cyclic(2))",
    "direct(alt(5), cyclic(2))",
    "wreath(sym(3), 2, cyclic(2))",
    "wreath(cyclic(3), 2, cyclic(2))",
    "wreath(alt(4), 2, cyclic(2))",
    "affine(2, 2, [[1,1],[0,1]], [[0,1],[1,0]])",
    "affine(7, 1, [[3]])",
];

fn criterion_3() -> Check {
    let caps = Caps::default();
    let mut instances = 0;
    let mut brute_checked = 0;
    let mut outcomes = [0usize; 2];
    for spec in TATE_GROUPS {
        let g = build(spec);
        let elems = g.elements(caps.order).unwrap();
        let brute = (order(&g) <= 200).then(|| Brute::new(&g));
        for p in primes_of(&g) {
            let s = sylow(&g, p).unwrap();
            let mut ks: Vec<PermGroup> = vec![g.clone(), s.clone(), normalizer(&g, &s).unwrap()];
            let step = (elems.len() / 24).max(1);
            for x in elems.iter().step_by(step) {
                ks.push(s.closure(std::slice::from_ref(x)));
            }
            let mut distinct: Vec<PermGroup> = Vec::new();
            for k in ks {
                if !distinct.iter().any(|d| d.same_elements(&k)) {
                    distinct.push(k);
                }
            }
            for k in &distinct {
                let r = tate_check(&g, k, p, &caps).map_err(|e| format!("{spec}, p = {p}: {e}"))?;
                ensure(r.all_equal(), || format!("{spec}, p = {p}, |K| = {}: {r:?}", order(k)))?;
                if let Some(b) = &brute {
                    // G' ∩ S = K' ∩ S, straight from the definitions
                    let sset = b.set_of(&s);
                    let kb = Brute::new(k);
                    let kd: BTreeSet<usize> = kb.derived().iter().map(|&i| b.index[&kb.elems[i]]).collect();
                    let gd = b.derived();
                    let same = sset.iter().all(|x| gd.contains(x) == kd.contains(x));
                    ensure(same == r.derived, || {
                        format!("{spec}, p = {p}: derived condition disagrees with brute force")
                    })?;
                    brute_checked += 1;
                }
                outcomes[r.derived as usize] += 1;
                instances += 1;
            }
        }
    }
    ensure(instances >= 200, || format!("only {instances} instances"))?;
    Ok(format!(
        "{instances} instances agree ({} true, {} false); {brute_checked} checked by brute force",
        outcomes[1], outcomes[0]
    ))
}

/// Corpus plus groups with larger components.
fn component_corpus() -> Vec<String> {
    let mut v: Vec<String> = CORPUS.iter().map(|s| s.to_string()).collect();
    v.push("direct(alt(5), alt(5))".into());
    v.push("wreath(alt(5), 2, cyclic(2))".into());
    v
}

fn criterion_4() -> Check {
    let caps = Caps::default();
    let corpus = component_corpus();
    for spec in &corpus {
        let g = build(spec);
        let lat = NormalLattice::new(&g, &caps).map_err(|e| format!("{spec}: {e}"))?;
        let fd = lat.fitting_data(&caps).map_err(|e| e.to_string())?;
        let fstar = lat.group(fd.generalized_fitting);
        let b = Brute::new(&g);
        let fset = b.set_of(&fstar);
        let c = b.centralizer(&fstar);
        ensure(c.iter().all(|x| fset.contains(x)), || {
            format!("{spec}: C_G(F*) is not inside F*")
        })?;
    }
    let mut spots = Vec::new();
    for (spec, expected) in [("sym(4)", 4), ("sym(5)", 60), ("direct(alt(5), alt(5))", 3600)] {
        let v = json(&["invariants", spec])?;
        let got = v["invariants"]["generalized_fitting_order"].as_u64().unwrap_or(0);
        ensure(got == expected, || format!("F*({spec}) = {got}, expected {expected}"))?;
        spots.push(format!("F*({spec}) = {got}"));
    }
    Ok(format!(
        "{} groups self-centralizing; {}",
        corpus.len(),
        spots.join(", ")
    ))
}

fn criterion_5() -> Check {
    let caps = Caps::default();
    let mut bearing = 0;
    let mut orbit_checks = 0;
    for spec in component_corpus() {
        let g = build(&spec);
        let comps = components(&g, &caps).map_err(|e| e.to_string())?;
        if comps.is_empty() {
            continue;
        }
        bearing += 1;
        for (i, a) in comps.iter().enumerate() {
            for b in &comps[i + 1..] {
                ensure(a.commutes_with(b), || format!("{spec}: two components do not commute"))?;
            }
        }
        let lat = NormalLattice::new(&g, &caps).unwrap();
        let fd = lat.fitting_data(&caps).unwrap();
        let (e, f) = (lat.group(fd.layer), lat.group(fd.fitting));
        ensure(e.commutes_with(&f), || format!("{spec}: [E, F] != 1"))?;
        let bg = Brute::new(&g);
        let comp_sets: Vec<BTreeSet<usize>> = comps.iter().map(|q| bg.set_of(q)).collect();
        let all_gens: Vec<_> = comps.iter().flat_map(|q| q.generators().to_vec()).collect();
        ensure(bg.span(&all_gens) == bg.set_of(&e), || {
            format!("{spec}: E is not the product of the components")
        })?;
        for p in primes_of(&g) {
            let r = component_orbit_check(&g, p, &caps).map_err(|e| e.to_string())?;
            // orbits of S on the components of order divisible by p, and d(S)
            let s = profin::sylow::sylow_seeded(&g, p, 0).unwrap();
            let live: Vec<usize> = (0..comps.len())
                .filter(|&i| order(&comps[i]).is_multiple_of(p))
                .collect();
            let mut orbit_of: HashMap<usize, usize> = HashMap::new();
            let mut orbits = 0u32;
            for &i in &live {
                if orbit_of.contains_key(&i) {
                    continue;
                }
                for x in &Brute::new(&s).elems {
                    let img: BTreeSet<usize> = comp_sets[i]
                        .iter()
                        .map(|&y| bg.index[&bg.elems[y].conjugate_by(x)])
                        .collect();
                    let j = live
                        .iter()
                        .copied()
                        .find(|&j| comp_sets[j] == img)
                        .ok_or("components not permuted")?;
                    orbit_of.insert(j, orbits as usize);
                }
                orbits += 1;
            }
            let bs = Brute::new(&s);
            let mut d = 0u32;
            let mut q = bs.order() / bs.frattini_p(p).len();
            while q > 1 {
                q /= p as usize;
                d += 1;
            }
            ensure(r.orbits == orbits && r.bound == d, || {
                format!(
                    "{spec}, p = {p}: engine ({}, {}) vs brute force ({orbits}, {d})",
                    r.orbits, r.bound
                )
            })?;
            ensure(orbits <= d, || format!("{spec}, p = {p}: {orbits} orbits > d(S) = {d}"))?;
            orbit_checks += 1;
        }
    }
    ensure(bearing >= 5, || format!("only {bearing} component-bearing groups"))?;
    Ok(format!(
        "{bearing} component-bearing groups; {orbit_checks} orbit bounds checked"
    ))
}

fn criterion_6() -> Check {
    let v = json(&["tower", "--family", "fitting_degenerate", "--params", "2,3,2,3"])?;
    let seq: Vec<u64> = v["fitting_sequence"]
        .as_array()
        .ok_or("no fitting_sequence")?
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    ensure(seq == [1, 2, 18], || format!("fitting sequence {seq:?}"))?;
    ensure(seq[1..].windows(2).all(|w| w[0] < w[1]), || "not increasing".into())?;
    let orders: Vec<&str> = v["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["order"].as_str().unwrap())
        .collect();
    Ok(format!("fitting sequence {seq:?}, level orders {orders:?}"))
}

fn criterion_7() -> Check {
    let caps = Caps::default();
    let cases: &[(&str, u64)] = &[
        ("sym(4)", 2),
        ("sym(5)", 2),
        ("alt(5)", 2),
        ("wreath(sym(3), 2, cyclic(2))", 2),
        ("wreath(sym(3), 2, cyclic(2))", 3),
        ("sym(6)", 2),
        ("sym(6)", 3),
        ("alt(4)", 2),
        ("dihedral(6)", 2),
        ("direct(sym(3), sym(3))", 3),
        ("direct(alt(5), cyclic(2))", 2),
        ("affine(2, 2, [[1,1],[0,1]], [[0,1],[1,0]])", 2),
        ("wreath(cyclic(3), 2, cyclic(2))", 3),
        ("affine(7, 1, [[3]])", 7),
    ];
    let mut chains = 0;
    for &(spec, p) in cases {
        let g = build(spec);
        let mut t = subgroup_classes_of_sylow(&g, p, &caps).map_err(|e| e.to_string())?;
        g_fusion(&mut t).map_err(|e| e.to_string())?;
        let r = alperin_closure_check(&t).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("{spec}, p = {p}: closure differs from fusion"))?;
        let b = Brute::new(&g);
        let k = t.class_count();
        let reps: Vec<PermGroup> = (0..k).map(|c| t.representative(c)).collect();
        let rep_sets: Vec<BTreeSet<usize>> = reps.iter().map(|r| b.set_of(r)).collect();
        // union-find over the chains
        let mut root: Vec<usize> = (0..k).collect();
        fn find(root: &mut [usize], x: usize) -> usize {
            if root[x] != x {
                let r = find(root, root[x]);
                root[x] = r;
            }
            root[x]
        }
        for ch in &r.chains {
            ensure(g.contains(&ch.element).unwrap(), || {
                format!("{spec}: chain element outside G")
            })?;
            let img: BTreeSet<usize> = rep_sets[ch.from]
                .iter()
                .map(|&y| b.index[&b.elems[y].conjugate_by(&ch.element)])
                .collect();
            ensure(img == rep_sets[ch.to], || {
                format!("{spec}: chain {} -> {} does not conjugate", ch.from, ch.to)
            })?;
            for step in &ch.steps {
                if let Some(c) = step.class {
                    ensure(t.subgroup(step.source).is_subgroup_of(&reps[c]), || {
                        format!("{spec}: restriction source not inside its local subgroup")
                    })?;
                }
            }
            let (x, y) = (find(&mut root, ch.from), find(&mut root, ch.to));
            root[x] = y;
            chains += 1;
        }
        for a in 0..k {
            for c in a + 1..k {
                let fused = order(&reps[a]) == order(&reps[c]) && b.conjugate(&reps[a], &rep_sets[c]);
                let joined = find(&mut root, a) == find(&mut root, c);
                ensure(fused == joined, || {
                    format!("{spec}, p = {p}: classes {a}, {c}: fused {fused}, chained {joined}")
                })?;
            }
        }
    }
    Ok(format!(
        "{} cases, {chains} chains verified against brute-force fusion",
        cases.len()
    ))
}

fn criterion_8() -> Check {
    let caps = Caps::default();
    let mut lines = Vec::new();
    let power = |p: usize, d: usize| {
        let c = cyclic(p).unwrap();
        (1..d).fold(c.clone(), |acc, _| direct_product(&acc, &c))
    };
    let mut cases: Vec<(String, PermGroup, u64, u32)> = Vec::new();
    for p in [2usize, 3] {
        for d in 1..=3 {
            cases.push((format!("C{p}^{d}"), power(p, d), p as u64, d as u32));
        }
        let big = direct_product(&cyclic(p * p).unwrap(), &cyclic(p).unwrap());
        cases.push((format!("C{}xC{p}", p * p), big, p as u64, 1));
    }
    for (name, s, p, expected) in cases {
        let c = c_invariant(&s, &caps).map_err(|e| e.to_string())?;
        let oracle = c_by_characteristic_scan(&s, p);
        ensure(c == expected && oracle == expected, || {
            format!("{name}: c = {c}, oracle {oracle}, expected {expected}")
        })?;
        lines.push(format!("c({name}) = {c}"));
    }
    Ok(lines.join(", "))
}

fn criterion_9() -> Check {
    let caps = Caps::default();
    let mut lattices = 0;
    for spec in CORPUS {
        let g = build(spec);
        ensure(order(&g) <= 2000, || format!("{spec} is too large for the corpus"))?;
        let b = Brute::new(&g);
        let lat = NormalLattice::new(&g, &caps).unwrap();
        let engine: BTreeSet<BTreeSet<usize>> = lat
            .members()
            .iter()
            .map(|m| m.set.ones().map(|i| b.index[lat.table().element(i)]).collect())
            .collect();
        ensure(engine.len() == lat.len(), || {
            format!("{spec}: duplicate lattice members")
        })?;
        let brute = b.normal_subgroups();
        ensure(engine == brute, || {
            format!(
                "{spec}: {} normal subgroups, brute force finds {}",
                engine.len(),
                brute.len()
            )
        })?;
        lattices += 1;
    }
    ensure(lattices >= 50, || format!("only {lattices} lattices"))?;
    let mut orders = 0;
    let extra = [
        "direct(alt(5), alt(5))",
        "direct(sym(5), sym(4))",
        "direct(sym(6), sym(3))",
        "wreath(cyclic(2), 4, sym(4))",
        "wreath(sym(3), 3, sym(3))",
        "perm(9, (1 2 3 4 5 6 7 8 9), (1 2))",
    ];
    for spec in CORPUS.iter().chain(extra.iter()) {
        let g = build(spec);
        if order(&g) > 5000 {
            continue;
        }
        let brute = Brute::new(&g).order() as u64;
        ensure(order(&g) == brute, || {
            format!("{spec}: chain order {} vs closure {brute}", order(&g))
        })?;
        orders += 1;
    }
    Ok(format!(
        "{lattices} lattices match brute force; {orders} chain orders match closure size"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("obliquity of Z_p truncations", criterion_1),
        ("Sylow subgroups of symmetric groups", criterion_2),
        ("Tate transfer equivalence", criterion_3),
        ("F* self-centralizing", criterion_4),
        ("component structure and orbit bound", criterion_5),
        ("Fitting degeneracy witness", criterion_6),
        ("Alperin factorization", criterion_7),
        ("c-invariant against characteristic scan", criterion_8),
        ("lattice and order cross-validation", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
