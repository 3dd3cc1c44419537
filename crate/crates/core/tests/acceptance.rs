//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use revcore::action::{
    coproduct, enumerate_equivariant_maps, is_equivariant_on_image, product, validate_biaction,
};
use revcore::burnside::{burnside_add, burnside_class, burnside_mul, BurnsideElement, LatticeClass};
use revcore::cli::run_command;
use revcore::homotopy::{factorize_weq, find_isomorphism, is_weak_equivalence};
use revcore::inverse::{evaluate, inv_total, reversible_core};
use revcore::machines::{names, nat};
use revcore::{EquivariantMap, FiniteBiAction, MonoidPresentation, Side, Transform};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn testdata(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("testdata")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn free(rank: usize) -> MonoidPresentation {
    let gens: Vec<String> = (0..rank).map(|g| format!("i{g}")).collect();
    MonoidPresentation::free(gens).unwrap()
}

fn left_machine(p: &MonoidPresentation, gens: &[Vec<usize>]) -> FiniteBiAction {
    let n = gens[0].len();
    let left = gens.iter().map(|g| Transform::new(g.clone())).collect();
    FiniteBiAction::left_only(p.clone(), names(n), left).unwrap()
}

fn all_functions(n: usize) -> Vec<Vec<usize>> {
    let total = n.pow(n as u32);
    (0..total)
        .map(|mut k| {
            let mut f = vec![0; n];
            for x in (0..n).rev() {
                f[x] = k % n;
                k /= n;
            }
            f
        })
        .collect()
}

fn random_function(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..n)).collect()
}

// ---------------------------------------------------------------- 1

fn run(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["revcore"];
    argv.extend_from_slice(args);
    let out = run_command(argv);
    (out.code, out.stdout + &out.stderr)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let swap = testdata("swap.json");
    let second = testdata("second.json");
    let expected: Vec<(Vec<&str>, &str)> = vec![
        (vec!["core", "--side", "l", &swap], "core: x0 x1\n"),
        (
            vec!["invert", "--side", "l", &swap],
            "core: x0 x1\ncarrier: x0 x1\nright i0: x0->x0 x1->x1\nright i1: x0->x1 x1->x0\n\
             isomorphic to base: x0->x0 x1->x1\n",
        ),
        (vec!["attractors", &swap], "attractor 1: x0 x1 [periodic]\nbasin: x0 x1\n"),
        (vec!["core", "--side", "l", &second], "core: x1\n"),
        (
            vec!["invert", "--side", "l", &second],
            "core: x1\ncarrier: x1\naction: trivial\nisomorphic to base: no\n",
        ),
        (vec!["attractors", &second], "attractor 1: x1 [periodic]\nbasin: x0 x1\n"),
    ];
    for (args, want) in &expected {
        let (code, got) = run(args);
        check(code == 0 && got == *want, || {
            format!("`{}` gave exit {code} and {got:?}, expected {want:?}", args[0])
        })?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{} reports match in {elapsed:.2?}", expected.len()))
}

// ---------------------------------------------------------------- 2

/// The transition monoid with its right-multiplication table by generators:
/// `next[t][g]` is the element `t∘g`.
fn transition_closure(gens: &[Vec<usize>], n: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut elements = vec![(0..n).collect::<Vec<_>>()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut next: Vec<Vec<usize>> = Vec::new();
    let mut k = 0;
    while k < elements.len() {
        let t = elements[k].clone();
        let mut row = Vec::new();
        for g in gens {
            let u: Vec<usize> = (0..n).map(|x| t[g[x]]).collect();
            let id = *index.entry(u.clone()).or_insert_with(|| {
                elements.push(u);
                elements.len() - 1
            });
            row.push(id);
        }
        next.push(row);
        k += 1;
    }
    (elements, next)
}

/// Counts maps `f: T → A` with `f(t) = g(f(t∘g))` for all `t` and generators
/// `g`, by backtracking with constraint propagation.
fn count_equivariant_from_monoid(gens: &[Vec<usize>], n: usize) -> usize {
    let (elements, next) = transition_closure(gens, n);
    let m = elements.len();
    let mut preds: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
    for (t, row) in next.iter().enumerate() {
        for (g, &u) in row.iter().enumerate() {
            preds[u].push((t, g));
        }
    }
    // preimage[g][v]: states x with g(x) = v, as a bitmask
    let preimage: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| {
            (0..n)
                .map(|v| (0..n).filter(|&x| g[x] == v).fold(0u32, |acc, x| acc | 1 << x))
                .collect()
        })
        .collect();

    fn propagate(
        domains: &mut [u32],
        start: usize,
        gens: &[Vec<usize>],
        next: &[Vec<usize>],
        preds: &[Vec<(usize, usize)>],
        preimage: &[Vec<u32>],
    ) -> bool {
        let mut queue = vec![start];
        while let Some(t) = queue.pop() {
            let v = domains[t].trailing_zeros() as usize;
            let mut narrow = |u: usize, mask: u32, queue: &mut Vec<usize>| {
                let before = domains[u];
                let after = before & mask;
                domains[u] = after;
                if after == 0 {
                    return false;
                }
                if after != before && after.count_ones() == 1 {
                    queue.push(u);
                }
                true
            };
            for (g, &u) in next[t].iter().enumerate() {
                if !narrow(u, preimage[g][v], &mut queue) {
                    return false;
                }
            }
            for &(s, g) in &preds[t] {
                if !narrow(s, 1 << gens[g][v], &mut queue) {
                    return false;
                }
            }
        }
        true
    }

    fn search(
        domains: Vec<u32>,
        gens: &[Vec<usize>],
        next: &[Vec<usize>],
        preds: &[Vec<(usize, usize)>],
        preimage: &[Vec<u32>],
    ) -> usize {
        let open = (0..domains.len())
            .filter(|&t| domains[t].count_ones() > 1)
            .min_by_key(|&t| domains[t].count_ones());
        let Some(t) = open else {
            // every variable fixed: verify all constraints directly
            let f: Vec<usize> = domains.iter().map(|d| d.trailing_zeros() as usize).collect();
            let ok = (0..f.len()).all(|t| {
                next[t]
                    .iter()
                    .enumerate()
                    .all(|(g, &u)| f[t] == gens[g][f[u]])
            });
            return usize::from(ok);
        };
        let mut total = 0;
        let mut bits = domains[t];
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            let mut d = domains.clone();
            d[t] = 1 << v;
            if propagate(&mut d, t, gens, next, preds, preimage) {
                total += search(d, gens, next, preds, preimage);
            }
        }
        total
    }

    let full = (1u32 << n) - 1;
    let mut domains = vec![full; m];
    // singleton domains must be propagated before branching
    for t in 0..m {
        if domains[t].count_ones() == 1 && !propagate(&mut domains, t, gens, &next, &preds, &preimage) {
            return 0;
        }
    }
    search(domains, gens, &next, &preds, &preimage)
}

/// Machines of suite 2: every generator tuple on 1 to 3 states, and a seeded
/// sample on 4 states, over free monoids of rank 1 and 2.
fn suite_machines() -> Vec<(usize, Vec<Vec<usize>>)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let fs = all_functions(n);
        for a in &fs {
            out.push((n, vec![a.clone()]));
            for b in &fs {
                out.push((n, vec![a.clone(), b.clone()]));
            }
        }
    }
    for a in all_functions(4) {
        out.push((4, vec![a]));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..3000 {
        out.push((4, vec![random_function(&mut rng, 4), random_function(&mut rng, 4)]));
    }
    out
}

fn criterion_2(machines: &[(usize, Vec<Vec<usize>>)]) -> Outcome {
    let start = Instant::now();
    let (p1, p2) = (free(1), free(2));
    let mut checked = 0;
    for (n, gens) in machines {
        let (elements, _) = transition_closure(gens, *n);
        if elements.len() > 256 {
            continue;
        }
        let p = if gens.len() == 1 { &p1 } else { &p2 };
        let a = left_machine(p, gens);
        let core = reversible_core(&a, Side::Left).map_err(|e| e.to_string())?;
        let oracle = count_equivariant_from_monoid(gens, *n);
        check(core.len() == oracle, || {
            format!("machine {gens:?}: |core| = {} but oracle counts {oracle}", core.len())
        })?;
        checked += 1;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} machines, 0 mismatches in {elapsed:.2?}"))
}

// ---------------------------------------------------------------- 3

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn criterion_3() -> Outcome {
    let p = nat();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let err = |e: revcore::Error| e.to_string();
    for k in 0..200 {
        let na = rng.gen_range(1..=5);
        let nb = rng.gen_range(1..=5);
        let a = left_machine(&p, &[random_function(&mut rng, na)]);
        let b = left_machine(&p, &[random_function(&mut rng, nb)]);
        let (ca, cb) = (burnside_class(&a).map_err(err)?, burnside_class(&b).map_err(err)?);
        let prod = burnside_class(&product(&a, &b).map_err(err)?).map_err(err)?;
        let sum = burnside_class(&coproduct(&a, &b).map_err(err)?).map_err(err)?;
        let want_prod = burnside_mul(&ca, &cb).map_err(err)?;
        let want_sum = burnside_add(&ca, &cb).map_err(err)?;
        check(prod == want_prod, || format!("pair {k}: [A×B] = {prod}, [A]·[B] = {want_prod}"))?;
        check(sum == want_sum, || format!("pair {k}: [A⊔B] = {sum}, [A]+[B] = {want_sum}"))?;
    }
    for m in 1..=8u64 {
        for n in 1..=8u64 {
            let x = BurnsideElement::class(LatticeClass::cyclic(m).map_err(err)?);
            let y = BurnsideElement::class(LatticeClass::cyclic(n).map_err(err)?);
            let got = burnside_mul(&x, &y).map_err(err)?;
            let g = gcd(m, n);
            let want = format!("{g}*[{}]", m * n / g);
            check(got.to_string() == want, || format!("[{m}]·[{n}] = {got}, expected {want}"))?;
        }
    }
    Ok("200 random pairs and 64 gcd/lcm products agree".into())
}

// ---------------------------------------------------------------- 4

/// All biactions over `p` on `n` states, optionally only semi-invertible ones.
fn biactions(p: &MonoidPresentation, n: usize) -> Vec<FiniteBiAction> {
    let fs = all_functions(n);
    let rank = p.rank();
    let mut families: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for _ in 0..rank {
        families = families
            .into_iter()
            .flat_map(|fam| {
                fs.iter().map(move |f| {
                    let mut next = fam.clone();
                    next.push(f.clone());
                    next
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for l in &families {
        for r in &families {
            let left = l.iter().map(|t| Transform::new(t.clone())).collect();
            let right = r.iter().map(|t| Transform::new(t.clone())).collect();
            if let Ok(a) = FiniteBiAction::new(p.clone(), names(n), Some(left), Some(right)) {
                out.push(a);
            }
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let err = |e: revcore::Error| e.to_string();
    let mut composites = 0usize;
    let mut inverses = 0usize;
    let mut broken_without_semi = 0usize;
    for p in [free(1), free(2)] {
        let max_n = if p.rank() == 1 { 3 } else { 2 };
        let all: Vec<FiniteBiAction> = (1..=max_n).flat_map(|n| biactions(&p, n)).collect();
        let semi: Vec<bool> = all
            .iter()
            .map(|a| validate_biaction(a).map(|f| f.semi_invertible))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let small: Vec<usize> = (0..all.len()).filter(|&i| all[i].len() <= 2).collect();
        let maps: HashMap<(usize, usize), Vec<EquivariantMap>> = small
            .iter()
            .flat_map(|&i| small.iter().map(move |&j| (i, j)))
            .map(|(i, j)| Ok(((i, j), enumerate_equivariant_maps(&all[i], &all[j], 1 << 20)?)))
            .collect::<Result<_, revcore::Error>>()
            .map_err(err)?;
        for &b in &small {
            for &a in &small {
                for &c in &small {
                    for f in &maps[&(a, b)] {
                        for g in &maps[&(b, c)] {
                            let gf: Vec<usize> = f.map().iter().map(|&x| g.apply(x)).collect();
                            let ok = is_equivariant_on_image(&gf, &all[a], &all[c]).map_err(err)?;
                            if semi[b] {
                                check(ok, || {
                                    format!("composite through semi-invertible {:?} is not equivariant", all[b])
                                })?;
                                composites += 1;
                            } else if !ok {
                                broken_without_semi += 1;
                            }
                        }
                    }
                }
            }
        }
        // bijections, including 3-state ones, between semi-invertible actions
        let semi_idx: Vec<usize> = (0..all.len()).filter(|&i| semi[i]).collect();
        for &a in &semi_idx {
            for &b in &semi_idx {
                if all[a].len() != all[b].len() {
                    continue;
                }
                for f in enumerate_equivariant_maps(&all[a], &all[b], 1 << 20).map_err(err)? {
                    if !f.is_bijective() {
                        continue;
                    }
                    let mut inv = vec![0; f.map().len()];
                    for (x, &y) in f.map().iter().enumerate() {
                        inv[y] = x;
                    }
                    let ok = is_equivariant_on_image(&inv, &all[b], &all[a]).map_err(err)?;
                    check(ok, || format!("inverse of bijection {:?} is not equivariant", f.map()))?;
                    inverses += 1;
                }
            }
        }
    }
    Ok(format!(
        "{composites} composites and {inverses} inverses equivariant \
         ({broken_without_semi} non-equivariant composites through non-semi-invertible middles)"
    ))
}

// ---------------------------------------------------------------- 5

fn criterion_5(machines: &[(usize, Vec<Vec<usize>>)]) -> Outcome {
    let err = |e: revcore::Error| e.to_string();
    let (p1, p2) = (free(1), free(2));
    for (_, gens) in machines {
        let p = if gens.len() == 1 { &p1 } else { &p2 };
        let m = left_machine(p, gens);
        let core = reversible_core(&m, Side::Left).map_err(err)?;
        let inv = inv_total(&m).map_err(err)?;
        let inner = reversible_core(inv.action(), Side::Right).map_err(err)?;
        let inner_in_base: Vec<usize> = inner.iter().map(|&k| inv.core()[k]).collect();
        check(inner_in_base == core, || format!("{gens:?}: core(Inv M) differs from core(M)"))?;
        let ev = evaluate(&inv).map_err(err)?;
        let image: Vec<usize> = ev.map().to_vec();
        check(ev.is_injective() && image == core, || format!("{gens:?}: ev is not a bijection onto the core"))?;
        let twice = inv_total(inv.action()).map_err(err)?;
        let iso = find_isomorphism(twice.action(), inv.action()).map_err(err)?;
        check(iso.is_some(), || format!("{gens:?}: Inv∘Inv(M) is not isomorphic to Inv(M)"))?;
    }
    Ok(format!("{} machines, 0 violations", machines.len()))
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Outcome {
    let err = |e: revcore::Error| e.to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut found = 0;
    let mut attempts = 0;
    while found < 50 {
        attempts += 1;
        if attempts > 100_000 {
            return Err(format!("only {found} weak equivalences generated"));
        }
        let rank = rng.gen_range(1..=2);
        let p = free(rank);
        let (n, m) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let src = left_machine(&p, &(0..rank).map(|_| random_function(&mut rng, n)).collect::<Vec<_>>());
        let dst = left_machine(&p, &(0..rank).map(|_| random_function(&mut rng, m)).collect::<Vec<_>>());
        let maps = enumerate_equivariant_maps(&src, &dst, 1 << 20).map_err(err)?;
        let weqs: Vec<&EquivariantMap> = maps
            .iter()
            .filter(|f| is_weak_equivalence(f).map(|c| c.verdict).unwrap_or(false))
            .collect();
        if weqs.is_empty() {
            continue;
        }
        let w = weqs[rng.gen_range(0..weqs.len())];
        let cert = factorize_weq(w).map_err(err)?;
        let (u, v) = (&cert.factorization.u, &cert.factorization.v);
        let vu: Vec<usize> = u.map().iter().map(|&x| v.apply(x)).collect();
        check(vu == w.map(), || format!("v∘u ≠ w for {:?}", w.map()))?;
        check(u.is_injective() && is_weak_equivalence(u).map_err(err)?.verdict, || {
            format!("u is not an injective weak equivalence for {:?}", w.map())
        })?;
        check(v.is_surjective() && is_weak_equivalence(v).map_err(err)?.verdict, || {
            format!("v is not a surjective weak equivalence for {:?}", w.map())
        })?;
        found += 1;
    }
    Ok(format!("50 factorizations verified ({attempts} random pairs drawn)"))
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Outcome {
    let err = |e: revcore::Error| e.to_string();
    let p = free(1);
    let mut reps: Vec<FiniteBiAction> = Vec::new();
    for n in 1..=3 {
        for f in all_functions(n) {
            let a = left_machine(&p, &[f]);
            let mut new = true;
            for r in &reps {
                if find_isomorphism(r, &a).map_err(err)?.is_some() {
                    new = false;
                    break;
                }
            }
            if new {
                reps.push(a);
            }
        }
    }
    check(reps.len() == 11, || format!("{} machines up to isomorphism, expected 11", reps.len()))?;
    let k = reps.len();
    let mut maps: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![Vec::new(); k]; k];
    for a in 0..k {
        for b in 0..k {
            maps[a][b] = enumerate_equivariant_maps(&reps[a], &reps[b], 1 << 20)
                .map_err(err)?
                .into_iter()
                .map(|f| f.map().to_vec())
                .collect();
        }
    }
    let mut cache: HashMap<(usize, usize, Vec<usize>), bool> = HashMap::new();
    let mut weq = |a: usize, b: usize, f: &[usize]| -> Result<bool, String> {
        if let Some(&v) = cache.get(&(a, b, f.to_vec())) {
            return Ok(v);
        }
        let m = EquivariantMap::new(reps[a].clone(), reps[b].clone(), f.to_vec()).map_err(err)?;
        let v = is_weak_equivalence(&m).map_err(err)?.verdict;
        cache.insert((a, b, f.to_vec()), v);
        Ok(v)
    };
    let compose = |f: &[usize], g: &[usize]| -> Vec<usize> { f.iter().map(|&x| g[x]).collect() };
    let mut triples = 0usize;
    let mut premises = 0usize;
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for f in &maps[a][b] {
                    for g in &maps[b][c] {
                        let gf = compose(f, g);
                        let gf_weq = weq(a, c, &gf)?;
                        for (d, to_d) in maps[c].iter().enumerate() {
                            for h in to_d {
                                triples += 1;
                                if !gf_weq {
                                    continue;
                                }
                                let hg = compose(g, h);
                                if !weq(b, d, &hg)? {
                                    continue;
                                }
                                premises += 1;
                                let hgf = compose(&gf, h);
                                let all = weq(a, b, f)? && weq(b, c, g)? && weq(c, d, h)? && weq(a, d, &hgf)?;
                                check(all, || {
                                    format!("2-out-of-6 fails for f={f:?} g={g:?} h={h:?}")
                                })?;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{triples} composable triples, {premises} with hg and gf weak equivalences, 0 violations"))
}

// ---------------------------------------------------------------- 8

fn criterion_8() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_revcore");
    let dir = std::env::temp_dir().join(format!("revcore-acceptance-{}", std::process::id()));
    let d = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let t = testdata;
    let commands: Vec<(Vec<String>, Vec<PathBuf>)> = vec![
        (vec!["validate".into(), t("twisted.json")], vec![]),
        (vec!["tmon".into(), t("swap.json")], vec![]),
        (vec!["core".into(), "--side".into(), "l".into(), t("cycle_with_tail.json")], vec![]),
        (vec!["core".into(), "--side".into(), "r".into(), t("second.json")], vec![]),
        (
            vec!["invert".into(), "--side".into(), "l".into(), t("swap.json"), "-o".into(), d("inv.json")],
            vec![dir.join("inv.json")],
        ),
        (vec!["inv".into(), t("cycle_with_tail.json")], vec![]),
        (vec!["ev".into(), t("second.json")], vec![]),
        (vec!["equivariant".into(), t("not_equivariant.json")], vec![]),
        (vec!["maps".into(), t("c3.json"), t("cycle_with_tail.json")], vec![]),
        (vec!["weq".into(), t("collapse.json")], vec![]),
        (vec!["iso".into(), t("c3.json"), t("c3.json")], vec![]),
        (
            vec!["product".into(), t("c2.json"), t("c3.json"), "-o".into(), d("prod.json")],
            vec![dir.join("prod.json")],
        ),
        (
            vec!["coproduct".into(), t("c2.json"), t("c3.json"), "-o".into(), d("sum.json")],
            vec![dir.join("sum.json")],
        ),
        (
            vec!["pushout".into(), t("ev_second.json"), t("core_to_c1.json"), "-o".into(), d("po")],
            ["object.json", "f_prime.json", "u_prime.json"].iter().map(|f| dir.join("po").join(f)).collect(),
        ),
        (
            vec!["pullback".into(), t("collapse.json"), t("collapse.json"), "-o".into(), d("pb")],
            ["object.json", "g_prime.json", "v_prime.json"].iter().map(|f| dir.join("pb").join(f)).collect(),
        ),
        (
            vec!["factorize".into(), t("ev_second.json"), "-o".into(), d("fz")],
            ["middle.json", "u.json", "v.json", "u_tilde.json"].iter().map(|f| dir.join("fz").join(f)).collect(),
        ),
        (vec!["burnside".into(), "class".into(), t("nat_pair.json")], vec![]),
        (vec!["burnside".into(), "mul".into(), "1*[4]".into(), "1*[6]".into()], vec![]),
        (vec!["burnside".into(), "add".into(), "1*[4]".into(), "2*[1] + -1*[4]".into()], vec![]),
        (vec!["attractors".into(), t("cycle_with_tail.json")], vec![]),
        (vec!["attractors".into(), "--reach".into(), "any".into(), t("swap.json")], vec![]),
        (vec!["dot".into(), t("swap.json")], vec![]),
        (vec!["dot".into(), t("second.json"), "-o".into(), d("second.dot")], vec![dir.join("second.dot")]),
    ];
    for (args, files) in &commands {
        let mut runs = Vec::new();
        for threads in ["1", "4"] {
            for _ in 0..3 {
                let out = Command::new(exe)
                    .args(args)
                    .env("RAYON_NUM_THREADS", threads)
                    .output()
                    .map_err(|e| e.to_string())?;
                let contents: Vec<Vec<u8>> = files
                    .iter()
                    .map(|f| std::fs::read(f).map_err(|e| format!("{}: {e}", f.display())))
                    .collect::<Result<_, _>>()?;
                for f in files {
                    let _ = std::fs::remove_file(f);
                }
                runs.push((out.status.code(), out.stdout, out.stderr, contents));
            }
        }
        check(runs.windows(2).all(|w| w[0] == w[1]), || {
            format!("`revcore {}` is not deterministic", args.join(" "))
        })?;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} commands byte-identical over 6 runs (1 and 4 threads)", commands.len()))
}

fn main() {
    let machines = suite_machines();
    let criteria: Vec<Criterion> = vec![
        ("worked examples", Box::new(criterion_1)),
        ("core size equals equivariant maps from the monoid", Box::new(|| criterion_2(&machines))),
        ("Burnside classes of N-sets", Box::new(criterion_3)),
        ("composites and inverses of equivariant maps", Box::new(criterion_4)),
        ("idempotence of Inv", Box::new(|| criterion_5(&machines))),
        ("3-arrow factorization", Box::new(criterion_6)),
        ("2-out-of-6", Box::new(criterion_7)),
        ("CLI determinism", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {detail}", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
