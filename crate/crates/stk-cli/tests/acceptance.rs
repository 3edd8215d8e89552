use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stk_graph::{example_3_1, Graph, Lattice, VertexSet};
use stk_peak::{CaseLabel, PeakError, PeakSystem};
use stk_stabilizer::{
    build_rx, gl_presentation, is_in_st_k, matrix_split, short_generators, tietze_reduce, to_matrix, tower_factorize,
    Automorphism, GenWord, IntMatrix, MatrixFrame, OmegaSystem, Presentation, Strategy,
};
use stk_whitehead::{enumerate_family, EndoMap, FamilyKind, LetterSet, WhiteheadAuto};
use stk_word::{conjugacy_length, conjugate, normal_form, Letter, NormalWord};

type Outcome = Result<(), String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn names(g: &Graph, s: VertexSet) -> BTreeSet<String> {
    s.iter().map(|v| g.name(v).to_string()).collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn random_graph(rng: &mut impl Rng, n: usize) -> Graph {
    let es: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.4)).collect();
    Graph::from_adjacency(n, &es).unwrap()
}

fn small_graphs() -> Vec<(String, Graph)> {
    let mut gs = vec![("example".to_string(), example_3_1()), ("P4".to_string(), Graph::path(4))];
    for n in 1..=4 {
        gs.push((format!("null({n})"), Graph::null(n)));
        gs.push((format!("complete({n})"), Graph::complete(n)));
    }
    gs
}

fn random_gen_word(rng: &mut impl Rng, n: usize, len: usize) -> GenWord {
    (0..len).map(|_| (rng.gen_range(0..n), if rng.gen_bool(0.5) { 1 } else { -1 })).collect()
}

fn invert(w: &[(usize, i32)]) -> GenWord {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

fn type2(g: &Graph, letters: &[&str], mult: &str) -> EndoMap {
    let lit = |s: &str| -> Letter {
        match s.strip_suffix("^-1") {
            Some(v) => Letter::neg(g.vertex(v).unwrap()),
            None => Letter::pos(g.vertex(s).unwrap()),
        }
    };
    let set = letters.iter().fold(LetterSet::EMPTY, |acc, s| acc.with(lit(s)));
    WhiteheadAuto::make_type2(g, set, lit(mult)).unwrap().to_map(g)
}

fn lit_map(g: &Graph, s: &str) -> EndoMap {
    WhiteheadAuto::parse(g, s).unwrap().to_map(g)
}

fn example_lattice() -> Outcome {
    let g = example_3_1();
    let lat = Lattice::build(&g);
    let expected: [(&str, &[&str]); 7] = [
        ("a", &["a", "b", "d", "h"]),
        ("c", &["c", "d", "e"]),
        ("d", &["d"]),
        ("e", &["d", "e"]),
        ("f", &["d", "e", "f", "g"]),
        ("h", &["h"]),
        ("i", &["c", "d", "e", "h", "i"]),
    ];
    for (x, want) in expected {
        let got = names(&g, g.admissible(g.vertex(x).unwrap()));
        check!(got == set(want), "admissible({x}) = {got:?}");
    }
    for (x, want) in [("a", &["a", "b"]), ("f", &["f", "g"])] {
        let got = names(&g, g.sim_class(g.vertex(x).unwrap()));
        check!(got == set(want), "class({x}) = {got:?}");
    }
    check!(lat.max_height == 3, "height {}", lat.max_height);
    check!(names(&g, lat.levels[2]) == set(&["c", "f", "g"]), "v(2) = {:?}", names(&g, lat.levels[2]));
    check!(names(&g, lat.cumulative[1]) == set(&["a", "b", "d", "e", "h"]), "A(1) = {:?}", names(&g, lat.cumulative[1]));
    Ok(())
}

fn cover_pairs() -> Outcome {
    let g = example_3_1();
    let lat = Lattice::build(&g);
    let got: BTreeSet<String> = lat.cover_pairs().iter().map(|&(u, v)| format!("{}<{}", g.name(u), g.name(v))).collect();
    let want = set(&["h<i", "h<a", "c<i", "d<a", "e<c", "d<e", "e<f"]);
    check!(got == want, "covers {got:?}");
    check!(lat.cover_pairs().len() == 7, "duplicate covers");
    Ok(())
}

fn matrix_model() -> Outcome {
    let g = example_3_1();
    let f = g.vertex("f").unwrap();
    let frame = MatrixFrame::new(&g, f).map_err(|e| e.to_string())?;
    check!(frame.r() == 4 && frame.s == 2, "frame r={} s={}", frame.r(), frame.s);
    let z = |i: usize, j: usize| {
        let mut m = IntMatrix::zeros(2, 2);
        m.set(i, j, 1);
        m
    };
    let mat = |s: &str| to_matrix(&g, f, &lit_map(&g, s)).unwrap();
    for (lit, i, j) in [("tau f d", 0, 0), ("tau f e", 0, 1), ("tau g d", 1, 0), ("tau g e", 1, 1)] {
        let m = mat(lit);
        check!(m.block(0, 2, 2, 4) == z(i, j), "{lit}: U block {:?}", m.block(0, 2, 2, 4));
        check!(m.block(0, 2, 0, 2).is_identity() && m.block(2, 4, 2, 4).is_identity(), "{lit}: diagonal blocks");
    }
    let tau_fg = mat("tau f g");
    check!(tau_fg.block(0, 2, 0, 2) == IntMatrix::elementary(2, 0, 1), "tau f g: {:?}", tau_fg.block(0, 2, 0, 2));
    check!(mat("tau g f").block(0, 2, 0, 2) == IntMatrix::elementary(2, 1, 0), "tau g f");
    check!(mat("inv f").block(0, 2, 0, 2) == IntMatrix::sign(2, 0), "inv f");
    check!(mat("inv g").block(0, 2, 0, 2) == IntMatrix::sign(2, 1), "inv g");

    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for x in ["e", "f"] {
        let x = g.vertex(x).unwrap();
        let s = MatrixFrame::new(&g, x).unwrap().s;
        let (p, _) = gl_presentation(&g, x).map_err(|e| e.to_string())?;
        let maps = p.maps(&g);
        for _ in 0..50 {
            let (k1, k2) = (rng.gen_range(1..6), rng.gen_range(1..6));
            let w1 = random_gen_word(&mut rng, p.generators.len(), k1);
            let w2 = random_gen_word(&mut rng, p.generators.len(), k2);
            let (m1, m2) = (Presentation::evaluate(&g, &maps, &w1), Presentation::evaluate(&g, &maps, &w2));
            let (a, b) = (to_matrix(&g, x, &m1).unwrap(), to_matrix(&g, x, &m2).unwrap());
            check!(to_matrix(&g, x, &m1.then(&g, &m2)).unwrap() == a.mul(&b), "matrix map is not multiplicative");
            let (d, u) = matrix_split(&a, s).map_err(|e| e.to_string())?;
            check!(d.mul(&u) == a, "split does not recompose");
            let (d2, u2) = matrix_split(&b, s).unwrap();
            let (dp, up) = matrix_split(&a.mul(&b), s).unwrap();
            // (D₁U₁)(D₂U₂) = D₁D₂ · (D₂⁻¹U₁D₂)U₂
            let conj = d2.inverse_unimodular().unwrap().mul(&u).mul(&d2);
            check!(dp == d.mul(&d2) && up == conj.mul(&u2), "theta law fails");
        }
    }
    Ok(())
}

fn structure_flags() -> Outcome {
    let g = example_3_1();
    let e = g.vertex("e").unwrap();
    check!(g.class_partition(e).abelian, "e not abelian");
    let fe = MatrixFrame::new(&g, e).map_err(|e| e.to_string())?;
    check!(fe.r() == 2 && fe.s == 1, "e: r={} s={}", fe.r(), fe.s);
    for x in ["d", "h"] {
        let fr = MatrixFrame::new(&g, g.vertex(x).unwrap()).map_err(|e| e.to_string())?;
        check!(fr.r() == 1 && fr.s == 1, "{x}: r={} s={}", fr.r(), fr.s);
    }
    for x in ["a", "c", "i"] {
        check!(!g.class_partition(g.vertex(x).unwrap()).abelian, "{x} should be free");
    }
    Ok(())
}

fn short_parts() -> Outcome {
    let g = example_3_1();
    for (x, want) in [("a", vec!["tau a d", "tau b d"]), ("c", vec!["tau c d"]), ("i", vec!["tau i h"])] {
        let got: Vec<String> = short_generators(&g, g.vertex(x).unwrap()).iter().map(|a| a.to_literal(&g)).collect();
        check!(got == want, "St_{x},s = {got:?}");
    }
    Ok(())
}

fn omega_and_relators() -> Outcome {
    let g = example_3_1();
    let (i, c) = (g.vertex("i").unwrap(), g.vertex("c").unwrap());
    let signed = |v: &str| [v.to_string(), format!("{v}^-1")];
    let outer: Vec<String> = ["c", "d", "e"].iter().flat_map(|v| signed(v)).collect();
    let mut want: HashSet<EndoMap> = HashSet::new();
    want.insert(lit_map(&g, "inv i"));
    for s in &outer {
        for ie in signed("i") {
            want.insert(type2(&g, &[&ie, s], s));
        }
        want.insert(type2(&g, &["i", "i^-1", s], s));
    }
    let omega = OmegaSystem::new(&g, i).map_err(|e| e.to_string())?;
    let got: HashSet<EndoMap> = omega.maps.iter().cloned().collect();
    check!(got == want && omega.len() == 19, "Omega_i has {} members, expected 19", omega.len());

    let rx = build_rx(&g, i, Strategy::default()).map_err(|e| e.to_string())?;
    for fam in ["R3*", "R4", "R4*", "R5"] {
        check!(rx.count(fam) == 0, "R_i has {} {fam} relators", rx.count(fam));
    }
    check!(rx.pres.first_failure(&g, Strategy::default()).is_none(), "R_i relator fails");

    let reduced = |x: usize| tietze_reduce(&g, &build_rx(&g, x, Strategy::default()).unwrap(), true, Strategy::default()).unwrap();
    let gens = |p: &Presentation| -> HashSet<EndoMap> { p.generators.iter().map(|gn| gn.auto.to_map(&g)).collect() };
    let mut want_i: HashSet<EndoMap> = HashSet::new();
    want_i.insert(lit_map(&g, "inv i"));
    for s in ["c", "d", "e"] {
        for ie in signed("i") {
            want_i.insert(type2(&g, &[&ie, s], s));
        }
    }
    let ri = reduced(i);
    check!(gens(&ri.pres) == want_i && ri.pres.generators.len() == 7, "Omega'_i has {} generators", ri.pres.generators.len());
    check!(ri.pres.first_failure(&g, Strategy::default()).is_none(), "reduced R_i relator fails");
    let want_c: HashSet<EndoMap> =
        [lit_map(&g, "inv c"), type2(&g, &["c", "e"], "e"), type2(&g, &["c^-1", "e"], "e")].into_iter().collect();
    let rc = reduced(c);
    check!(gens(&rc.pres) == want_c && rc.pres.generators.len() == 3, "Omega'_c has {} generators", rc.pres.generators.len());
    check!(rc.pres.first_failure(&g, Strategy::default()).is_none(), "reduced R_c relator fails");
    Ok(())
}

fn relation_soundness() -> Outcome {
    let mut gs = small_graphs();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    gs.extend((0..20).map(|k| (format!("random#{k}"), random_graph(&mut rng, 6))));
    for (name, g) in &gs {
        let lat = Lattice::build(g);
        for &y in lat.transversal.iter().flatten() {
            if g.class_partition(y).abelian {
                let (p, _) = gl_presentation(g, y).map_err(|e| format!("{name}: {e}"))?;
                check!(p.first_failure(g, Strategy::default()).is_none(), "{name}: GL relator fails at {}", g.name(y));
            } else {
                let rx = build_rx(g, y, Strategy::default()).map_err(|e| format!("{name}: {e}"))?;
                if let Some(k) = rx.pres.first_failure(g, Strategy::default()) {
                    return Err(format!("{name}: R_{} relator {k} ({}) fails", g.name(y), rx.pres.relators[k].provenance));
                }
            }
        }
    }
    Ok(())
}

fn tower_round_trip() -> Outcome {
    let mut gs = small_graphs();
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    gs.extend((0..4).map(|k| (format!("random#{k}"), random_graph(&mut rng, 6))));
    for (name, g) in &gs {
        let lat = Lattice::build(g);
        let mut gens = enumerate_family(g, FamilyKind::Inv).unwrap();
        gens.extend(enumerate_family(g, FamilyKind::Tr).unwrap());
        for _ in 0..100 {
            let len = if gens.is_empty() { 0 } else { rng.gen_range(0..=6) };
            let fs: Vec<_> =
                (0..len).map(|_| (gens[rng.gen_range(0..gens.len())].clone(), if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
            let phi = Automorphism::product(g, &fs);
            check!(is_in_st_k(g, &lat, &phi.fwd, Some(&phi.inv), 8).unwrap_or(false), "{name}: product left St(K)");
            let t = tower_factorize(g, &lat, &phi).map_err(|e| format!("{name}: {e}"))?;
            check!(t.recompose(g) == phi, "{name}: tower does not recompose");
        }
    }
    Ok(())
}

/// Lex-least geodesic found by exhausting commuting swaps and cancellations.
fn brute_geodesic(g: &Graph, w: &[Letter]) -> Vec<Letter> {
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut stack = vec![w.to_vec()];
    seen.insert(w.to_vec());
    let mut best = w.to_vec();
    while let Some(u) = stack.pop() {
        if (u.len(), &u) < (best.len(), &best) {
            best = u.clone();
        }
        for i in 0..u.len().saturating_sub(1) {
            let (a, b) = (u[i], u[i + 1]);
            let mut v = u.clone();
            if a == b.inverse() {
                v.drain(i..i + 2);
            } else if a.vertex() != b.vertex() && g.adjacent(a.vertex(), b.vertex()) {
                v.swap(i, i + 1);
            } else {
                continue;
            }
            if seen.insert(v.clone()) {
                stack.push(v);
            }
        }
    }
    best
}

fn all_words(n: usize, len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..2 * n).map(move |i| {
                    let mut v = w.clone();
                    v.push(Letter::from_index(i));
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn random_letters(rng: &mut impl Rng, n: usize, max: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max);
    (0..len).map(|_| Letter::from_index(rng.gen_range(0..2 * n))).collect()
}

fn word_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let ex = example_3_1();
    for _ in 0..10_000 {
        let g = random_graph(&mut rng, 5);
        let w = if rng.gen_bool(0.5) { random_letters(&mut rng, 5, 8) } else { random_letters(&mut rng, 9, 7) };
        let g = if w.iter().any(|l| l.vertex() >= 5) { &ex } else { &g };
        let nf = normal_form(g, &w);
        check!(nf.letters() == brute_geodesic(g, &w).as_slice(), "normal form of {w:?}");
    }
    let mut tested = 0;
    while tested < 1000 {
        let g = random_graph(&mut rng, 4);
        let conjugators: Vec<NormalWord> = all_words(4, 3).iter().map(|c| normal_form(&g, c)).collect();
        for _ in 0..50 {
            let w = normal_form(&g, &random_letters(&mut rng, 4, 6));
            let brute = conjugators.iter().map(|c| conjugate(&g, &w, c).len()).min().unwrap();
            check!(conjugacy_length(&g, &w) == brute, "conjugacy length of {w:?}");
            tested += 1;
        }
    }
    Ok(())
}

fn peak_systems() -> Vec<(String, PeakSystem)> {
    let g = example_3_1();
    let a = g.vertex("a").unwrap();
    vec![
        ("class a".to_string(), PeakSystem::new(&g, a, Strategy::default()).unwrap()),
        ("null(2)".to_string(), PeakSystem::new(&Graph::null(2), 0, Strategy::default()).unwrap()),
    ]
}

fn peak_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    for (name, s) in peak_systems() {
        for _ in 0..500 {
            let len = rng.gen_range(0..=6);
            let w = random_gen_word(&mut rng, s.len(), len);
            let out = s.peak_reduce(&w, &s.c2).map_err(|e| format!("{name}: {e}"))?;
            let ws: Vec<usize> = out.word.iter().map(|&(i, _)| i).collect();
            check!(s.is_peak_reduced(&ws, &s.c2), "{name}: output not peak-reduced");
            check!(s.eval(&out.word) == s.eval(&w), "{name}: value changed");
        }
    }
    let e = example_3_1();
    let mut systems: Vec<PeakSystem> = peak_systems().into_iter().map(|(_, s)| s).collect();
    for x in ["i", "c"] {
        systems.push(PeakSystem::new(&e, e.vertex(x).unwrap(), Strategy::default()).unwrap());
    }
    let mut seen: BTreeSet<CaseLabel> = BTreeSet::new();
    for s in &systems {
        let mut tuples = vec![s.c2.clone()];
        tuples.extend((0..s.len()).map(|k| s.c2.act(&s.graph, s.map(k))));
        for c in &tuples {
            for a in 0..s.len() {
                for b in 0..s.len() {
                    match s.lower_peak(a, b, c) {
                        Ok(low) => seen.extend(low.trace.labels()),
                        Err(PeakError::NotPeak(_)) => {}
                        Err(err) => return Err(format!("{} {}: {err}", s.symbol(a), s.symbol(b))),
                    }
                }
            }
        }
    }
    let missing: Vec<&str> = CaseLabel::ALL.iter().filter(|l| !seen.contains(l)).map(|l| l.as_str()).collect();
    check!(missing.is_empty() && CaseLabel::ALL.len() == 11, "labels never fired: {missing:?}");
    Ok(())
}

fn word_problem() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(127);
    for (name, s) in peak_systems() {
        let rels = &s.rx.pres.relators;
        for _ in 0..100 {
            let mut w = GenWord::new();
            for _ in 0..rng.gen_range(1..=3) {
                let r = &rels[rng.gen_range(0..rels.len())].word;
                let k = rng.gen_range(0..=2);
                let conj = random_gen_word(&mut rng, s.len(), k);
                w.extend(invert(&conj));
                w.extend(if rng.gen_bool(0.5) { r.clone() } else { invert(r) });
                w.extend(conj);
            }
            let res = s.word_problem(&w).map_err(|e| format!("{name}: {e}"))?;
            check!(res.identity, "{name}: relator product not recognised");
            let cert = res.certificate.ok_or_else(|| format!("{name}: missing certificate"))?;
            let json = serde_json::to_string(&cert).map_err(|e| e.to_string())?;
            let cert: stk_peak::Certificate = serde_json::from_str(&json).map_err(|e| e.to_string())?;
            s.replay(&cert).map_err(|e| format!("{name}: replay {e}"))?;
        }
        let mut rejected = 0;
        while rejected < 200 {
            let k = rng.gen_range(1..=6);
            let w = random_gen_word(&mut rng, s.len(), k);
            if s.eval(&w).is_identity() {
                continue;
            }
            let res = s.word_problem(&w).map_err(|e| format!("{name}: {e}"))?;
            check!(!res.identity && res.moved.is_some() && res.certificate.is_none(), "{name}: non-identity accepted");
            rejected += 1;
        }
    }
    Ok(())
}

fn example_relator_sets() -> Outcome {
    let g = example_3_1();
    let labels = |x: &str| -> Vec<String> {
        let rx = build_rx(&g, g.vertex(x).unwrap(), Strategy::default()).unwrap();
        let red = tietze_reduce(&g, &rx, true, Strategy::default()).unwrap();
        red.pres.relators.iter().map(|r| r.provenance.clone()).collect()
    };
    let count = |ls: &[String], l: &str| ls.iter().filter(|x| *x == l).count();
    let li = labels("i");
    let got = [count(&li, "R2+R3(a)"), count(&li, "R3(b)"), count(&li, "R6"), count(&li, "R7")];
    check!(got == [9, 4, 3, 1] && li.len() == 17, "class i relators {li:?}");
    let lc = labels("c");
    check!(lc.len() == 3 && count(&lc, "R2") == 1 && count(&lc, "R6") == 1 && count(&lc, "R7") == 1, "class c relators {lc:?}");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("admissible sets, classes, height and levels of the example", example_lattice),
        ("cover pairs of the example lattice", cover_pairs),
        ("matrix model of abelian classes", matrix_model),
        ("abelian structure flags", structure_flags),
        ("short stabilizer generators", short_parts),
        ("Omega and R for class i, Tietze reductions", omega_and_relators),
        ("relation soundness on small and random graphs", relation_soundness),
        ("tower factorisation round trip", tower_round_trip),
        ("word oracle", word_oracle),
        ("peak reduction and case coverage", peak_reduction),
        ("word problem certificates", word_problem),
        ("example relator sets", example_relator_sets),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
