//! Brute-force oracles for the structure module.

use homthresh::generators::{andrasfai, blow_up, cycle, grotzsch, BlowupSpec};
use homthresh::structure::*;
use homthresh::{make_graph, Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    make_graph(n, &e).unwrap()
}

/// A maximal {C3, C5}-free graph obtained by saturating the empty graph in a random order.
fn random_maximal(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    saturate(&Graph::empty(n), 3).unwrap().permuted(&perm)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Number of distinct cycles on exactly the vertex set `s` (Hamiltonian cycles of G[s]).
fn hamiltonian_cycles(g: &Graph, s: &[usize]) -> usize {
    let (first, rest) = s.split_first().unwrap();
    let mut count = 0;
    for p in permutations(rest) {
        let mut c = vec![*first];
        c.extend(p);
        let k = c.len();
        if (0..k).all(|i| g.has_edge(c[i], c[(i + 1) % k])) {
            count += 1;
        }
    }
    count / 2
}

#[test]
fn seven_cycle_count_of_f3_matches_subset_scan() {
    let f3 = andrasfai(3, 3).unwrap();
    let brute: usize = subsets(12, 7).iter().map(|s| hamiltonian_cycles(&f3, s)).sum();
    assert_eq!(enumerate_cycles(&f3, 7).len(), brute);
    assert!(brute > 0);
}

#[test]
fn cycle_enumeration_matches_subset_scan_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let g = random_graph(&mut rng, 8, 0.45);
        for len in 3..=6 {
            let brute: usize = subsets(8, len).iter().map(|s| hamiltonian_cycles(&g, s)).sum();
            let found = enumerate_cycles(&g, len);
            assert_eq!(found.len(), brute, "len {len}");
            assert!(found.iter().all(|w| w.is_cycle_in(&g)));
        }
    }
}

/// Shortest odd cycle length by exhaustive cycle enumeration.
fn brute_odd_girth(g: &Graph) -> OddGirth {
    (3..=g.order())
        .step_by(2)
        .find(|&l| !enumerate_cycles(g, l).is_empty())
        .map_or(OddGirth::Bipartite, OddGirth::Cycle)
}

#[test]
fn odd_girth_matches_cycle_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=8 {
        for _ in 0..60 {
            let p = rng.gen_range(0.1..0.6);
            let g = random_graph(&mut rng, n, p);
            assert_eq!(odd_girth(&g), brute_odd_girth(&g));
            if let Some(c) = shortest_odd_cycle(&g) {
                assert!(PatternWitness::new("cycle", c).is_cycle_in(&g));
            }
        }
    }
    assert_eq!(brute_odd_girth(&grotzsch()), OddGirth::Cycle(5));
}

#[test]
fn odd_girth_of_sparse_graphs_up_to_16() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 9..=16 {
        for _ in 0..25 {
            let g = random_graph(&mut rng, n, 2.2 / n as f64);
            assert_eq!(odd_girth(&g), brute_odd_girth(&g));
        }
    }
}

#[test]
fn saturation_addability_is_rechecked_by_trial() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let n = rng.gen_range(2..=12);
        let g = random_graph(&mut rng, n, 0.15);
        if !is_free(&g, 3) {
            assert!(saturate(&g, 3).is_err());
            continue;
        }
        let s = saturate(&g, 3).unwrap();
        assert!(is_free(&s, 3));
        for (u, v) in g.edges() {
            assert!(s.has_edge(u, v));
        }
        for u in 0..n {
            for v in u + 1..n {
                if !s.has_edge(u, v) {
                    assert!(!is_free(&s.with_edge(u, v).unwrap(), 3), "{u}{v} addable");
                }
            }
        }
        assert_eq!(saturate(&s, 3).unwrap(), s);
    }
}

#[test]
fn saturating_c6_adds_exactly_the_long_diagonals() {
    let c6 = cycle(6).unwrap();
    let s = saturate(&c6, 3).unwrap();
    let added: Vec<_> = s.edges().into_iter().filter(|&(u, v)| !c6.has_edge(u, v)).collect();
    assert_eq!(added, vec![(0, 3), (1, 4), (2, 5)]);
}

fn brute_induced(host: &Graph, pattern: &Graph) -> bool {
    let k = pattern.order();
    subsets(host.order(), k).iter().any(|s| {
        permutations(s).iter().any(|img| {
            (0..k).all(|i| (i + 1..k).all(|j| pattern.has_edge(i, j) == host.has_edge(img[i], img[j])))
        })
    })
}

#[test]
fn induced_search_matches_subset_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let patterns = [cycle(4).unwrap(), cycle(5).unwrap(), make_graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()];
    for _ in 0..25 {
        let n = rng.gen_range(4..=9);
        let g = random_graph(&mut rng, n, 0.4);
        for p in &patterns {
            let found = find_induced_pattern(&g, p);
            assert_eq!(found.is_some(), brute_induced(&g, p));
            if let Some(w) = found {
                assert!(w.realises(&g, p, true));
            }
        }
    }
}

/// Plain definitions evaluated on every labelled cycle, without twin reduction.
mod naive {
    use super::*;

    fn labelled(g: &Graph, len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for w in enumerate_cycles(g, len) {
            let c = w.vertices;
            for r in 0..len {
                let rot: Vec<usize> = (0..len).map(|i| c[(r + i) % len]).collect();
                let mut rev = rot.clone();
                rev[1..].reverse();
                out.push(rot);
                out.push(rev);
            }
        }
        out
    }

    pub fn domination(g: &Graph) -> bool {
        enumerate_cycles(g, 7)
            .iter()
            .all(|c| (0..g.order()).all(|v| c.vertices.iter().any(|&x| g.has_edge(v, x))))
    }

    pub fn common_neighbour(g: &Graph) -> bool {
        let n = g.order();
        enumerate_cycles(g, 7).iter().all(|c| {
            let c = &c.vertices;
            (0..n)
                .filter(|&u| !c.contains(&u) && c.iter().all(|&x| !g.has_edge(u, x)))
                .all(|u| {
                    let a = g
                        .neighbours(u)
                        .all(|w| c.iter().filter(|&&x| g.has_edge(w, x)).count() < 2);
                    let partners = c
                        .iter()
                        .filter(|&&x| (0..n).any(|w| g.has_edge(u, w) && g.has_edge(w, x)))
                        .count();
                    a && partners <= 1
                })
        })
    }

    pub fn well_behaved(g: &Graph, len: usize) -> bool {
        enumerate_cycles(g, len).iter().all(|c| {
            let h = &c.vertices;
            (0..g.order()).all(|u| {
                h.iter().any(|&v| h.iter().all(|&w| !g.has_edge(u, w) || g.has_edge(v, w)))
            })
        })
    }

    fn ladder(c: &[usize]) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = (0..12)
            .map(|i| (c[i], c[(i + 1) % 12]))
            .chain((0..6).map(|i| (c[i], c[i + 6])))
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        e.sort();
        e
    }

    pub fn twelve(g: &Graph) -> bool {
        labelled(g, 12).iter().all(|x| {
            if !(g.has_edge(x[0], x[6]) && g.has_edge(x[1], x[7])) {
                return true;
            }
            let mut induced = Vec::new();
            for i in 0..12 {
                for j in i + 1..12 {
                    if g.has_edge(x[i], x[j]) {
                        induced.push((x[i].min(x[j]), x[i].max(x[j])));
                    }
                }
            }
            induced.sort();
            let other = [x[1], x[2], x[3], x[4], x[5], x[6], x[0], x[11], x[10], x[9], x[8], x[7]];
            induced == ladder(x) || induced == ladder(&other)
        })
    }
}

fn agree_with_naive(g: &Graph) {
    assert_eq!(check_seven_cycle_domination(g).holds, naive::domination(g));
    assert_eq!(check_common_neighbour_obs(g).holds, naive::common_neighbour(g));
    assert_eq!(check_well_behaved_cycles(g, 7).holds, naive::well_behaved(g, 7));
    assert_eq!(check_well_behaved_cycles(g, 5).holds, naive::well_behaved(g, 5));
    if g.order() <= 14 {
        assert_eq!(check_twelve_cycle_lemma(g).holds, naive::twelve(g));
    }
    for v in [
        check_seven_cycle_domination(g),
        check_common_neighbour_obs(g),
        check_well_behaved_cycles(g, 7),
        check_twelve_cycle_lemma(g),
        check_induced_c6(g),
        check_two_seven_cycles_lemma(g),
    ] {
        if let Some(w) = &v.witness {
            assert!(w.recheck(g), "{v:?}");
        }
    }
    assert_eq!(
        check_induced_c6(g).holds,
        find_induced_pattern(g, &cycle(6).unwrap()).is_none()
    );
    assert_eq!(
        check_two_seven_cycles_lemma(g).holds,
        find_induced_pattern(g, &two_seven_cycles_gadget()).is_none()
    );
}

#[test]
fn twin_reduced_checks_agree_with_plain_definitions_on_blow_ups() {
    let f3 = andrasfai(3, 3).unwrap();
    for big in 0..12 {
        let mut sizes = vec![1; 12];
        sizes[big] = 2;
        agree_with_naive(&blow_up(&BlowupSpec::new(f3.clone(), sizes).unwrap()).unwrap());
    }
    let f2 = andrasfai(2, 3).unwrap();
    agree_with_naive(&blow_up(&BlowupSpec::new(f2, vec![2, 1, 2, 1, 3, 1, 2]).unwrap()).unwrap());
}

#[test]
fn twin_reduced_checks_agree_with_plain_definitions_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..30 {
        let n = rng.gen_range(7..=13);
        agree_with_naive(&random_maximal(&mut rng, n));
        let g = random_graph(&mut rng, n, 0.3);
        agree_with_naive(&g);
    }
}

#[test]
fn twelve_cycle_negative_control() {
    let mut e: Vec<(usize, usize)> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
    e.extend([(0, 6), (1, 7)]);
    let g = make_graph(12, &e).unwrap();
    assert!(!naive::twelve(&g));
    let v = check_twelve_cycle_lemma(&g);
    assert!(!v.holds);
    assert!(v.witness.unwrap().recheck(&g));
}

#[test]
fn seven_cycles_are_well_behaved_in_free_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let n = rng.gen_range(7..=16);
        let g = random_maximal(&mut rng, n);
        assert!(check_well_behaved_cycles(&g, 7).holds);
    }
    let c6 = cycle(6).unwrap().disjoint_union(&Graph::empty(1));
    let h = VertexSet::from_iter_in(7, 0..6).unwrap();
    assert!(is_well_behaved(&c6, &h).is_ok());
}

fn valid_half_set(h: &Graph, x: &VertexSet) -> bool {
    2 * x.len() >= h.order() && x.iter().all(|v| h.neighbours(v).any(|w| !x.contains(w)))
}

#[test]
fn half_set_exhaustive_small() {
    // every isolated-vertex-free graph on up to 6 labelled vertices
    for n in 2..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let e: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            let g = make_graph(n, &e).unwrap();
            if g.degrees().contains(&0) {
                assert!(half_set(&g).is_err());
                continue;
            }
            assert!(valid_half_set(&g, &half_set(&g).unwrap()), "{e:?}");
        }
    }
}

#[test]
fn half_set_random_up_to_30() {
    let mut rng = ChaCha8Rng::seed_from_u64(30);
    let mut done = 0;
    while done < 10_000 {
        let n = rng.gen_range(2..=30);
        let p = rng.gen_range(1.0..4.0) / n as f64;
        let mut g = random_graph(&mut rng, n, p.min(1.0));
        // attach isolated vertices to a random other vertex
        for v in 0..n {
            if g.degree(v) == 0 {
                let mut w = rng.gen_range(0..n);
                if w == v {
                    w = (v + 1) % n;
                }
                g = g.with_edge(v, w).unwrap();
            }
        }
        assert!(valid_half_set(&g, &half_set(&g).unwrap()));
        done += 1;
    }
}
