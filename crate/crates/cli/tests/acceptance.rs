//! Acceptance run: one line per criterion, exact arithmetic throughout.
//! Built with `harness = false` so the lines are always shown.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use lazard::bchgroup::LazardGroup;
use lazard::cohomology::{
    compare, h0_group, h0_lie, lie_h1, lie_h2, Bounds, Correspondence, GroupExtension, LieExtension,
    ModuleExtension,
};
use lazard::crossedmod::{exp_crossed, lie_zoo, log_crossed, Equivalence};
use lazard::fiveterm::five_term_verify;
use lazard::freelie::bch_table;
use lazard::liering::{abelian, heisenberg, NilLieRing};
use lazard::ring::{AbelianPGroup, Subgroup};
use lazard::schur::compare_schur;
use lazard::triples::{
    exp_morphism, exp_triple, group_morphism_check, log_morphism, log_triple, GroupMorphism, LieMorphism, LieTriple,
};
use lazard::zoo::{morphism_zoo, triple_zoo};
use lazard::PLocalRat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

// -- test-side oracle for log(exp x exp y) --

type Series = BTreeMap<Vec<u8>, PLocalRat>;

fn q(n: i128, d: i128) -> PLocalRat {
    PLocalRat::new(n, d)
}

fn mul(a: &Series, b: &Series, cut: usize) -> Series {
    let mut out = Series::new();
    for (u, x) in a {
        for (v, y) in b {
            if u.len() + v.len() <= cut {
                let w = [u.as_slice(), v.as_slice()].concat();
                *out.entry(w).or_insert(q(0, 1)) += x * y;
            }
        }
    }
    out.retain(|_, c| *c != q(0, 1));
    out
}

fn add_scaled(acc: &mut Series, a: &Series, c: PLocalRat) {
    for (w, x) in a {
        *acc.entry(w.clone()).or_insert(q(0, 1)) += x * c;
    }
    acc.retain(|_, c| *c != q(0, 1));
}

fn oracle_bch(cut: usize) -> Series {
    let one: Series = [(vec![], q(1, 1))].into();
    let exp = |letter: u8| {
        let x: Series = [(vec![letter], q(1, 1))].into();
        let mut acc = one.clone();
        let mut pw = one.clone();
        let mut fact = 1i128;
        for k in 1..=cut {
            pw = mul(&pw, &x, cut);
            fact *= k as i128;
            add_scaled(&mut acc, &pw, q(1, fact));
        }
        acc
    };
    let mut y = mul(&exp(0), &exp(1), cut);
    y.remove(&vec![]);
    let mut acc = Series::new();
    let mut pw = one.clone();
    for k in 1..=cut {
        pw = mul(&pw, &y, cut);
        let sign = if k % 2 == 1 { 1 } else { -1 };
        add_scaled(&mut acc, &pw, q(sign, k as i128));
    }
    acc
}

fn c1_bch() -> Check {
    let start = Instant::now();
    for c in 1..=5 {
        let table = bch_table(c);
        let ours: Series = table.to_assoc().terms().map(|(w, x)| (w.clone(), *x)).filter(|(_, x)| *x != q(0, 1)).collect();
        ensure!(ours == oracle_bch(c), "class {c} differs from the associative oracle");
    }
    let t = bch_table(3);
    ensure!(t.coefficient(&[0, 1]) == q(1, 2), "[x,y] coefficient");
    ensure!(t.coefficient(&[0, 0, 1]) == q(1, 12), "[x,[x,y]] coefficient");
    // [y,[x,y]] = -[[x,y],y]; the Lyndon word xyy carries [[x,y],y]
    ensure!(-t.coefficient(&[0, 1, 1]) == q(-1, 12), "[y,[x,y]] coefficient");
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 1.0, "took {secs:.2} s");
    Ok(format!("classes 1..5 match; 1/2, 1/12, -1/12 ({secs:.2} s)"))
}

fn c2_group_laws() -> Check {
    let start = Instant::now();
    let g = LazardGroup::new(heisenberg(5, 1)).map_err(|e| e.to_string())?;
    let n = g.order();
    let table = g.to_cayley();
    let elems: Vec<_> = (0..n).map(|i| g.element(i)).collect();
    for a in 0..n {
        for b in 0..n {
            ensure!(table.mul(a, b) == g.index_of(&g.g_mul(&elems[a], &elems[b])), "table disagrees at ({a}, {b})");
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table.mul(a, b);
            for c in 0..n {
                ensure!(table.mul(ab, c) == table.mul(a, table.mul(b, c)), "associativity fails at ({a}, {b}, {c})");
            }
        }
    }
    let e = g.identity();
    for x in &elems {
        ensure!(g.g_mul(x, &e) == *x && g.g_mul(&e, x) == *x, "identity law at {x:?}");
        let i = g.g_inv(x);
        ensure!(g.g_mul(x, &i) == e && g.g_mul(&i, x) == e, "inverse law at {x:?}");
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 30.0, "took {secs:.1} s");
    Ok(format!("{} triples associative ({secs:.1} s)", n * n * n))
}

fn c3_round_trips() -> Check {
    let zoo = triple_zoo();
    for (name, t) in &zoo {
        let g = exp_triple(t).map_err(|e| format!("{name}: {e}"))?;
        let back = log_triple(&g).map_err(|e| format!("{name}: {e}"))?;
        ensure!(&back == t, "{name}: Log(Exp(T)) != T");
        ensure!(exp_triple(&back).map_err(|e| e.to_string())? == g, "{name}: Exp(Log(G)) != G");
    }
    let ms = morphism_zoo();
    let mut composed = 0;
    for m in &ms {
        let (g1, g2) = (exp_triple(&m.source).unwrap(), exp_triple(&m.target).unwrap());
        let e = exp_morphism(&m.morphism, &m.source, &m.target);
        group_morphism_check(&e, &g1, &g2).map_err(|x| format!("{}: {x}", m.name))?;
        ensure!(log_morphism(&e, &g1, &g2).map_err(|x| x.to_string())? == m.morphism, "{}: Log(Exp(f)) != f", m.name);
        let id = LieMorphism::identity(&m.source);
        ensure!(exp_morphism(&id, &m.source, &m.source) == GroupMorphism::identity(&g1), "{}: identity", m.name);
        for n in ms.iter().filter(|n| n.source == m.target) {
            let g3 = exp_triple(&n.target).unwrap();
            let lhs = exp_morphism(&m.morphism.then(&n.morphism), &m.source, &n.target);
            let rhs = e.then(&exp_morphism(&n.morphism, &n.source, &n.target));
            ensure!(lhs == rhs, "{} then {}: composition", m.name, n.name);
            group_morphism_check(&lhs, &g1, &g3).map_err(|x| x.to_string())?;
            composed += 1;
        }
    }
    ensure!(zoo.len() >= 50 && ms.len() >= 20, "zoo too small");
    Ok(format!("{} triples, {} morphisms, {composed} composites", zoo.len(), ms.len()))
}

fn distinct_rings() -> Vec<(String, NilLieRing)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (name, t) in triple_zoo() {
        if seen.insert(t.ring.clone()) {
            out.push((name, t.ring));
        }
    }
    out
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn c4_subobjects() -> Check {
    let mut checked = 0;
    for (name, l) in distinct_rings() {
        let g = LazardGroup::new(l.clone()).map_err(|e| e.to_string())?;
        let cay = g.to_cayley();
        let idx = |a: &[u64]| l.module.index_of(a);
        // one representative per additive cyclic subgroup: both closures
        // only see the cyclic subgroups of the generators
        let mut reps = Vec::new();
        let mut seen = HashSet::new();
        for a in l.elements() {
            let cyc = sorted(Subgroup::new(&l.module, &[a.clone()]).elements().iter().map(|x| idx(x)).collect());
            if seen.insert(cyc) {
                reps.push(a);
            }
        }
        let pairs = l.order() <= l.p.pow(3);
        let mut done: HashMap<Vec<usize>, ()> = HashMap::new();
        for i in 0..reps.len() {
            for j in i..if pairs { reps.len() } else { i + 1 } {
                let gens = vec![reps[i].clone(), reps[j].clone()];
                let s = l.subring_closure(&gens);
                let set = sorted(s.elements().iter().map(|x| idx(x)).collect());
                let h = sorted(cay.subgroup_closure(&[idx(&gens[0]), idx(&gens[1])]));
                ensure!(set == h, "{name}: subring and subgroup generated by {gens:?} differ");
                if done.insert(set.clone(), ()).is_some() {
                    continue;
                }
                ensure!(l.is_ideal(&s) == cay.is_normal(&h), "{name}: ideal vs normal for {gens:?}");
                let (sub, _) = l.subring_ring(&s).map_err(|e| e.to_string())?;
                let (sg, _) = cay.subgroup_group(&h);
                ensure!(sub.nilpotency_class().unwrap() == sg.nilpotency_class(), "{name}: class of {gens:?}");
                checked += 1;
            }
        }
        ensure!(l.nilpotency_class().unwrap() == cay.gamma_series().len() - 1, "{name}: class vs gamma series");
    }
    Ok(format!("{checked} distinct subobjects (pairs for |L| <= p^3, cyclic above)"))
}

fn same(a: &Subgroup, b: &Subgroup) -> bool {
    a.contains_subgroup(b) && b.contains_subgroup(a)
}

fn c5_degree0() -> Check {
    let zoo = triple_zoo();
    for (name, t) in &zoo {
        let g = exp_triple(t).unwrap();
        ensure!(same(&h0_group(&g), &h0_lie(t)), "{name}: fixed points differ from annihilator");
        let (cg, cl) = (g.chain().map_err(|e| e.to_string())?, t.chain().map_err(|e| e.to_string())?);
        ensure!(cg.len() == cl.len() && cg.iter().zip(&cl).all(|(a, b)| same(a, b)), "{name}: [M, _i G] != [M, _i L]");
    }
    Ok(format!("{} triples", zoo.len()))
}

fn h1_pair(corr: &Correspondence, a: &[u64], b: &[u64]) -> Result<bool, String> {
    let lh = lie_h1(&corr.lie);
    let gh = corr.cochains.h1();
    let e = |x: lazard::cohomology::CohomologyError| x.to_string();
    let (va, vb) = (lh.representative(a), lh.representative(b));
    let sum = lh.add_classes(a, b);
    let lsum = ModuleExtension::from_derivation(corr, &va)
        .baer_sum(&ModuleExtension::from_derivation(corr, &vb))
        .cocycle_values()
        .map_err(e)?
        .concat();
    let gvals = ModuleExtension::from_crossed(corr, &corr.h1_to_group(&va).map_err(e)?)
        .baer_sum(&ModuleExtension::from_crossed(corr, &corr.h1_to_group(&vb).map_err(e)?))
        .cocycle_values()
        .map_err(e)?;
    let gsum = gh.classify(&corr.cochains.restrict_crossed(&gvals));
    let transported = gh.classify(&corr.h1_to_group(&lh.representative(&sum)).map_err(e)?);
    Ok(lh.classify(&lsum) == Some(sum) && gsum.is_some() && gsum == transported)
}

fn c6_degree1() -> Check {
    let mut used = Vec::new();
    for (name, t) in triple_zoo() {
        let d = t.action_length().unwrap();
        if d + 1 >= t.ring.p as usize {
            continue;
        }
        let corr = Correspondence::new(t.clone()).map_err(|e| format!("{name}: {e}"))?;
        let (lh, gh) = (lie_h1(&t), corr.cochains.h1());
        ensure!(lh.invariants() == gh.invariants(), "{name}: {} vs {}", lh.invariants(), gh.invariants());
        let images: Vec<Vec<u64>> = lh
            .generators()
            .iter()
            .map(|v| gh.classify(&corr.h1_to_group(v).unwrap()).unwrap())
            .collect();
        ensure!(gh.span(&images).order() as u128 == gh.invariants().order(), "{name}: transport not onto");
        for v in lh.generators() {
            let back = corr.h1_to_lie(&corr.h1_to_group(&v).unwrap()).unwrap();
            ensure!(lh.classify(&back) == lh.classify(&v), "{name}: round trip");
        }
        if !lh.invariants().is_trivial() {
            used.push((name, corr, lh));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    for _ in 0..20 {
        let (name, corr, lh) = &used[rng.gen_range(0..used.len())];
        let c = lh.classes();
        let pick = |rng: &mut ChaCha8Rng| -> Vec<u64> { (0..c.rank()).map(|i| rng.gen_range(0..c.modulus(i))).collect() };
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        ensure!(h1_pair(corr, &a, &b)?, "{name}: Baer sum of {a:?} and {b:?} not additive");
    }
    let corr = Correspondence::new(LieTriple::trivial(heisenberg(5, 1), AbelianPGroup::new(5, vec![1]))).unwrap();
    let (l, g) = (lie_h1(&corr.lie).invariants(), corr.cochains.h1().invariants());
    ensure!(l.factors() == vec![5, 5] && g.factors() == vec![5, 5], "heisenberg H^1 = {l} / {g}");
    Ok(format!("{} triples with nontrivial H^1, 20 random Baer pairs, heisenberg gives [5,5]", used.len()))
}

fn c7_degree2() -> Check {
    let mut n = 0;
    for (name, t) in triple_zoo() {
        let (p, c, d) = (t.ring.p, t.class().unwrap(), t.action_length().unwrap());
        if t.ring.order() > p * p || c + d >= p as usize {
            continue;
        }
        let r = compare(&t, 2, &Bounds::cube(p)).map_err(|e| format!("{name}: {e}"))?;
        ensure!(r.isomorphic == Some(true), "{name}: {:?} vs {:?}", r.lie, r.group);
        ensure!(r.transport_bijective != Some(false) && r.transport_additive != Some(false), "{name}: transport");
        n += 1;
    }
    let order = |l: NilLieRing| {
        let r = compare(&LieTriple::trivial(l, AbelianPGroup::new(5, vec![1])), 2, &Bounds::cube(5)).unwrap();
        (r.lie.unwrap().order(), r.group.unwrap().order())
    };
    ensure!(order(abelian(5, vec![1])) == (5, 5), "Z/5");
    ensure!(order(abelian(5, vec![1, 1])) == (125, 125), "(Z/5)^2");
    // exhaustive Baer sums over the base Z/5
    let t = LieTriple::trivial(abelian(5, vec![1]), AbelianPGroup::new(5, vec![1]));
    let corr = Correspondence::new(t.clone()).unwrap();
    let c = &corr.cochains;
    let (lh, gh) = (lie_h2(&t), c.h2(&Bounds::cube(5)).unwrap());
    let units: Vec<Vec<u64>> = (0..5).map(|k| vec![k]).collect();
    for a in &units {
        for b in &units {
            let sum = lh.add_classes(a, b);
            let (va, vb) = (lh.representative(a), lh.representative(b));
            let le = LieExtension::from_tails(&t, &va).baer_sum(&LieExtension::from_tails(&t, &vb), &t).unwrap();
            ensure!(lh.classify(&le.tails(&t).unwrap()) == Some(sum.clone()), "Lie Baer sum {a:?} + {b:?}");
            let ext = |v: &[u64]| GroupExtension::from_cocycle(c, &c.expand_cocycle(&corr.h2_to_group(v).unwrap()));
            let ge = ext(&va).baer_sum(&ext(&vb), c).unwrap();
            let got = gh.classify(&c.restrict_table_full(&ge.cocycle(c).unwrap()));
            let want = gh.classify(&corr.h2_to_group(&lh.representative(&sum)).unwrap());
            ensure!(got.is_some() && got == want, "group Baer sum {a:?} + {b:?}");
            let direct = gh.add_classes(&gh.classify(&corr.h2_to_group(&va).unwrap()).unwrap(), &gh.classify(&corr.h2_to_group(&vb).unwrap()).unwrap());
            ensure!(got == Some(direct), "cocycle addition {a:?} + {b:?}");
        }
    }
    Ok(format!("{n} triples equal; Z/5 -> 5, (Z/5)^2 -> 125; 25 Baer pairs over Z/5"))
}

fn c8_schur() -> Check {
    let start = Instant::now();
    let mut out = Vec::new();
    for (name, l) in [("cyclic", abelian(5, vec![1])), ("(Z/5)^2", abelian(5, vec![1, 1])), ("heisenberg", heisenberg(5, 1))] {
        let r = compare_schur(&l, &Bounds::cube(5)).map_err(|e| format!("{name}: {e}"))?;
        ensure!(r.verdict == "equal" && r.equal && r.squares_commute, "{name}: {}", r.verdict);
        for side in [&r.lie, &r.group] {
            ensure!(side.stabilized_at.is_some_and(|s| s <= side.cap), "{name}: not certified below the cap");
        }
        out.push(format!("{name} {}", r.lie.stable.clone().unwrap()));
    }
    ensure!(out[0].ends_with("[]") && out[1].ends_with("[5]"), "{out:?}");
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 300.0, "took {secs:.0} s");
    Ok(format!("{} ({secs:.1} s)", out.join(", ")))
}

fn c9_five_term() -> Check {
    let start = Instant::now();
    let h = heisenberg(5, 1);
    let a = abelian(5, vec![1, 1]);
    for (name, l, gens) in [("heisenberg, center", &h, vec![vec![0, 0, 1]]), ("(Z/5)^2, factor", &a, vec![vec![1, 0]])] {
        let r = five_term_verify(l, &l.ideal_closure(&gens), &Bounds::cube(5)).map_err(|e| format!("{name}: {e}"))?;
        ensure!(r.exactness.len() == 3 && r.exact, "{name}: exactness {:?}", r.exactness);
        ensure!(r.commutes && r.maps.iter().all(|m| m.square_commutes), "{name}: squares");
        ensure!(r.vertical_isomorphisms, "{name}: verticals");
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 60.0, "took {secs:.0} s");
    Ok(format!("two pairs exact and commuting ({secs:.1} s)"))
}

fn c10_crossed() -> Check {
    let zoo = lie_zoo();
    ensure!(zoo.len() >= 10, "zoo has {}", zoo.len());
    let mut groups = Vec::new();
    for (name, y) in &zoo {
        ensure!(y.check_axioms().is_empty(), "{name}: Lie axioms");
        let x = exp_crossed(y).map_err(|e| format!("{name}: {e}"))?;
        ensure!(x.check_axioms().is_empty(), "{name}: group axioms");
        ensure!(&log_crossed(&x).map_err(|e| e.to_string())? == y, "{name}: log(exp Y) != Y");
        let (ys, xs) = (y.baer_sum(y).map_err(|e| e.to_string())?, x.baer_sum(&x).map_err(|e| e.to_string())?);
        ensure!((&ys.g1, &ys.g2, &ys.alpha, &ys.module) == (&y.g1, &y.g2, &y.alpha, &y.module), "{name}: Lie boundary");
        ensure!((&xs.g1, &xs.g2, &xs.alpha, &xs.module) == (&x.g1, &x.g2, &x.alpha, &x.module), "{name}: group boundary");
        groups.push(x);
    }
    let mut decided = 0;
    for i in 0..zoo.len() {
        let split = zoo[i].1.split().map_err(|e| e.to_string())?;
        let candidates: Vec<_> = (i..zoo.len()).map(|j| zoo[j].1.clone()).chain([split]).collect();
        for z in candidates {
            if zoo[i].1.same_boundary(&z).is_err() {
                continue;
            }
            let bound = 125;
            let lie = zoo[i].1.equivalent(&z, bound);
            let group = groups[i].equivalent(&exp_crossed(&z).unwrap(), bound);
            ensure!(lie == group, "{}: {lie:?} vs {group:?}", zoo[i].0);
            if lie != Equivalence::Undecided {
                decided += 1;
            }
        }
    }
    Ok(format!("{} modules round-trip; {decided} decided equivalence pairs agree", zoo.len()))
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn c11_guards() -> Check {
    let bin = env!("CARGO_BIN_EXE_lazard-lab");
    let cases: [(&str, Vec<String>); 6] = [
        ("c < p", vec!["exp".into(), data("filiform5.toml")]),
        ("d < p - 1", vec!["cohomology".into(), "--degree".into(), "1".into(), data("jordan4.toml")]),
        ("c + d < p", vec!["cohomology".into(), "--degree".into(), "2".into(), data("jordan4.toml")]),
        ("c < p - 1", vec!["schur".into(), data("heisenberg3.toml")]),
        ("c < p - 1", vec!["five-term".into(), data("heisenberg3.toml"), "--normal".into(), "z".into()]),
        ("c + d < p", vec!["crossed".into(), data("adjoint3.toml"), "--op".into(), "log".into()]),
    ];
    for (needle, args) in &cases {
        let out = Command::new(bin).args(args).env_remove("LAZARD_MAX_ELEMENTS").output().map_err(|e| e.to_string())?;
        ensure!(out.status.code() == Some(2), "{args:?} exited {:?}", out.status.code());
        let text = String::from_utf8_lossy(&out.stdout);
        ensure!(text.contains(needle) && text.contains("\"refused\""), "{args:?}: report lacks `{needle}`");
    }
    // the library refuses the same cases without computing
    let jordan4 = lazard::zoo::jordan_triple(5, vec![1], 4, &[1]);
    let corr = Correspondence::new(jordan4.clone()).unwrap();
    let v = lie_h1(&jordan4).generators()[0].clone();
    ensure!(corr.h1_to_group(&v).is_err(), "degree-1 transport computed with d = 4, p = 5");
    ensure!(!compare(&jordan4, 2, &Bounds::cube(5)).unwrap().in_scope, "degree 2 flagged in scope");
    Ok(format!("{} refusals with exit code 2", cases.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("BCH series", c1_bch),
        ("group laws", c2_group_laws),
        ("Lazard round trips", c3_round_trips),
        ("subobjects and class", c4_subobjects),
        ("degree 0", c5_degree0),
        ("degree 1", c6_degree1),
        ("degree 2", c7_degree2),
        ("Schur multipliers", c8_schur),
        ("five-term sequence", c9_five_term),
        ("crossed modules", c10_crossed),
        ("guards", c11_guards),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    let mut err = std::io::stderr();
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|x| name.contains(x.as_str())) {
            continue;
        }
        let start = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &r {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => {
                failed += 1;
                ("FAIL", d.clone())
            }
        };
        let line = format!("criterion {:>2} {tag}  {name}: {detail} [{secs:.1} s]\n", i + 1);
        print!("{line}");
        let _ = err.flush();
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
