use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stk_graph::{example_3_1, Graph, Lattice};
use stk_stabilizer::*;
use stk_stabilizer::Strategy;
use stk_whitehead::{enumerate_family, FamilyKind, WhiteheadAuto};

fn random_graph(rng: &mut impl Rng, n: usize) -> Graph {
    let es: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.4)).collect();
    Graph::from_adjacency(n, &es).unwrap()
}

fn graphs() -> Vec<Graph> {
    let mut gs = vec![example_3_1(), Graph::path(4)];
    for n in 1..=4 {
        gs.push(Graph::null(n));
        gs.push(Graph::complete(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    gs.extend((0..6).map(|_| random_graph(&mut rng, 6)));
    gs
}

fn inv_tr(g: &Graph) -> Vec<WhiteheadAuto> {
    let mut out = enumerate_family(g, FamilyKind::Inv).unwrap();
    out.extend(enumerate_family(g, FamilyKind::Tr).unwrap());
    out
}

#[test]
fn rx_relators_hold_on_free_classes() {
    for g in graphs() {
        let lat = Lattice::build(&g);
        for &y in lat.transversal.iter().flatten() {
            if g.class_partition(y).abelian {
                continue;
            }
            let rx = build_rx(&g, y, Strategy::Parallel).unwrap();
            assert!(rx.pres.relators.iter().all(|r| !r.word.is_empty()));
        }
    }
}

#[test]
fn tower_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for g in graphs() {
        let lat = Lattice::build(&g);
        let gens = inv_tr(&g);
        for _ in 0..30 {
            let len = rng.gen_range(0..=6);
            let fs: Vec<_> = (0..len).map(|_| (gens[rng.gen_range(0..gens.len())].clone(), if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
            let phi = Automorphism::product(&g, &fs);
            assert!(is_in_st_k(&g, &lat, &phi.fwd, Some(&phi.inv), 8).unwrap());
            assert!(is_in_st_k(&g, &lat, &phi.fwd, None, 8).unwrap());
            let t = tower_factorize(&g, &lat, &phi).unwrap();
            assert_eq!(t.recompose(&g), phi);
            for f in &t.factors {
                assert!(lat.transversal[f.level].contains(&f.rep));
            }
        }
    }
}

#[test]
fn outside_st_k_is_rejected() {
    let g = example_3_1();
    let lat = Lattice::build(&g);
    let d = g.vertex("d").unwrap();
    let a = g.vertex("a").unwrap();
    let mut m = stk_whitehead::EndoMap::identity(&g);
    m.set_image(d, stk_word::normal_form(&g, &[stk_word::Letter::pos(d), stk_word::Letter::pos(a)]));
    assert!(matches!(is_in_st_k(&g, &lat, &m, None, 8), Ok(false) | Err(StabError::NotHomomorphism)));
}

#[test]
fn theta_law_on_abelian_blocks() {
    let g = example_3_1();
    let e = g.vertex("e").unwrap();
    let (p, _) = gl_presentation(&g, e).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let maps = p.maps(&g);
    for _ in 0..50 {
        let w1: GenWord = (0..rng.gen_range(1..6)).map(|_| (rng.gen_range(0..p.generators.len()), if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
        let w2: GenWord = (0..rng.gen_range(1..6)).map(|_| (rng.gen_range(0..p.generators.len()), if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
        let (m1, m2) = (Presentation::evaluate(&g, &maps, &w1), Presentation::evaluate(&g, &maps, &w2));
        let (a, b) = (to_matrix(&g, e, &m1).unwrap(), to_matrix(&g, e, &m2).unwrap());
        assert_eq!(to_matrix(&g, e, &m1.then(&g, &m2)).unwrap(), a.mul(&b));
        let (d, u) = matrix_split(&a, 1).unwrap();
        assert_eq!(d.mul(&u), a);
    }
}

#[test]
fn emitted_presentations_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut gs = vec![example_3_1(), Graph::path(4), Graph::null(2), Graph::complete(3)];
    gs.extend((0..3).map(|_| random_graph(&mut rng, 5)));
    for g in gs {
        let lat = Lattice::build(&g);
        for keep_perms in [true, false] {
            let cfg = Config { keep_perms, ..Config::default() };
            let sp = emit_presentation(&g, &lat, &cfg).unwrap();
            assert_eq!(sp.pres.first_failure(&g, Strategy::Sequential), None);
            let json = sp.pres.to_json_value(&g);
            assert_eq!(json.relators.len(), json.provenance.len());
            assert!(sp.pres.to_gap().starts_with("F := FreeGroup("));
        }
    }
}

#[test]
fn example_class_presentations() {
    let g = example_3_1();
    let i = g.vertex("i").unwrap();
    let rx = build_rx(&g, i, Strategy::Parallel).unwrap();
    let red = tietze_reduce(&g, &rx, true, Strategy::Parallel).unwrap();
    let labels: Vec<&str> = red.pres.relators.iter().map(|r| r.provenance.as_str()).collect();
    assert_eq!(labels.iter().filter(|&&l| l == "R2+R3(a)").count(), 9);
    assert_eq!(labels.iter().filter(|&&l| l == "R3(b)").count(), 4);
    assert_eq!(labels.iter().filter(|&&l| l == "R6").count(), 3);
    assert_eq!(labels.iter().filter(|&&l| l == "R7").count(), 1);
    assert_eq!(labels.len(), 17);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gl_factors_recompose(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3)) {
        let m = IntMatrix::from_rows(&rows);
        if m.det().abs() == 1 {
            let f = m.gl_factors().unwrap();
            let back = f.iter().fold(IntMatrix::identity(3), |acc, x| acc.mul(&x.matrix(3)));
            prop_assert_eq!(back, m);
        } else {
            prop_assert!(m.gl_factors().is_err());
        }
    }

    #[test]
    fn cyclic_canonical_is_invariant(w in prop::collection::vec((0usize..4, prop::bool::ANY), 1..8), r in 0usize..8) {
        let w: GenWord = w.into_iter().map(|(g, s)| (g, if s { 1 } else { -1 })).collect();
        let k = r % w.len();
        let rot: GenWord = w[k..].iter().chain(&w[..k]).copied().collect();
        prop_assert_eq!(cyclic_canonical(&w), cyclic_canonical(&rot));
        prop_assert_eq!(cyclic_canonical(&w), cyclic_canonical(&invert_word(&w)));
    }
}
