use std::collections::BTreeSet;

use proptest::prelude::*;

use cubrig::boxcat::{enumerate_maps, BoxMap};
use cubrig::cubeset::q_complex;
use cubrig::necklace::{hom_nec, Necklace};
use cubrig::pathcat::{kappa, step_sequence};
use cubrig::posets::{nerve, nerve_map, FinitePoset};
use cubrig::rigidify::subneck_diagram;
use cubrig::sset::{colimit, TruncSSet};
use cubrig::vertex::Vertex;

fn box_map() -> impl Strategy<Value = BoxMap> {
    (0usize..=3, 0usize..=3, any::<prop::sample::Index>()).prop_map(|(n, m, i)| {
        let maps = enumerate_maps(n, m).unwrap();
        maps[i.index(maps.len())].clone()
    })
}

fn composable() -> impl Strategy<Value = (BoxMap, BoxMap, BoxMap)> {
    (0usize..=3, 0usize..=3, 0usize..=3, 0usize..=3, any::<[prop::sample::Index; 3]>()).prop_map(|(a, b, c, d, ix)| {
        let pick = |n, m, i: prop::sample::Index| {
            let maps = enumerate_maps(n, m).unwrap();
            maps[i.index(maps.len())].clone()
        };
        (pick(a, b, ix[0]), pick(b, c, ix[1]), pick(c, d, ix[2]))
    })
}

/// A random partial order on `0..n` generated by edges `i -> j` with `i < j`.
fn poset() -> impl Strategy<Value = FinitePoset> {
    (1usize..=7)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let mut gens = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        gens.push((i, j));
                    }
                    k += 1;
                }
            }
            FinitePoset::from_generators((0..n).map(|i| i.to_string()).collect(), &gens).unwrap()
        })
}

fn necklace(max_total: usize) -> impl Strategy<Value = Necklace> {
    prop::collection::vec(1usize..=3, 1..=3)
        .prop_filter("total dimension", move |b| b.iter().sum::<usize>() <= max_total)
        .prop_map(|b| Necklace::new(b).unwrap())
}

fn up_closure(p: &FinitePoset, set: &[usize]) -> Vec<usize> {
    (0..p.len()).filter(|&x| set.iter().any(|&y| p.leq(y, x))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_rebuilds_the_map(f in box_map()) {
        let back = BoxMap::from_normal_form(f.src_dim(), f.normal_form().clone()).unwrap();
        prop_assert_eq!(back.table(), f.table());
        let parsed = cubrig::boxcat::NormalForm::parse(&f.normal_form().to_string()).unwrap();
        prop_assert_eq!(&parsed, f.normal_form());
    }

    #[test]
    fn epi_mono_is_a_factorisation(f in box_map()) {
        let (e, m) = f.epi_mono();
        prop_assert!(e.is_epi() && m.is_mono());
        prop_assert_eq!(m.after(&e).unwrap(), f.clone());
        prop_assert_eq!(e.dst_dim(), m.src_dim());
    }

    #[test]
    fn composition_is_associative((f, g, h) in composable()) {
        let left = h.after(&g).unwrap().after(&f).unwrap();
        let right = h.after(&g.after(&f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn mono_iff_endpoints_at_full_distance(f in box_map()) {
        let d = f.image_alpha().distance(&f.image_omega());
        prop_assert_eq!(f.is_mono(), d == Some(f.src_dim()));
    }

    #[test]
    fn lub_is_least(p in poset(), xs in prop::collection::vec(any::<prop::sample::Index>(), 1..=3)) {
        let xs: Vec<usize> = xs.iter().map(|i| i.index(p.len())).collect();
        let uppers: Vec<usize> = (0..p.len()).filter(|&u| xs.iter().all(|&x| p.leq(x, u))).collect();
        match p.lub(&xs) {
            Some(l) => {
                prop_assert!(uppers.contains(&l));
                prop_assert!(uppers.iter().all(|&u| p.leq(l, u)));
            }
            None => prop_assert!(uppers.iter().all(|&u| !uppers.iter().all(|&v| p.leq(u, v)))),
        }
    }

    #[test]
    fn euler_characteristic_matches_betti(p in poset()) {
        let s = nerve(&p, None).unwrap().sset;
        let h = s.homology().unwrap();
        let alt: i64 = h.degrees.iter().map(|d| if d.degree % 2 == 0 { d.betti as i64 } else { -(d.betti as i64) }).sum();
        prop_assert_eq!(alt, s.euler_characteristic());
        prop_assert_eq!(h.euler_characteristic, s.euler_characteristic());
    }

    #[test]
    fn adding_a_top_makes_the_nerve_acyclic(p in poset()) {
        let n = p.len();
        let mut labels: Vec<String> = p.labels().to_vec();
        labels.push("top".into());
        let mut gens: Vec<(usize, usize)> = p.covers().to_vec();
        gens.extend((0..n).map(|x| (x, n)));
        let q = FinitePoset::from_generators(labels, &gens).unwrap();
        prop_assert!(nerve(&q, None).unwrap().sset.homology().unwrap().is_point());
    }

    #[test]
    fn union_of_upward_closed_sets_is_a_pushout(
        p in poset(),
        a in prop::collection::vec(any::<bool>(), 7),
        b in prop::collection::vec(any::<bool>(), 7),
    ) {
        let n = p.len();
        let u = up_closure(&p, &(0..n).filter(|&x| a[x]).collect::<Vec<_>>());
        let rest: Vec<usize> = (0..n).filter(|&x| !u.contains(&x) || b[x]).collect();
        let v = up_closure(&p, &rest);
        let w: Vec<usize> = u.iter().copied().filter(|x| v.contains(x)).collect();
        let top = p.longest_chain();
        let sub = |elems: &[usize]| -> TruncSSet {
            if elems.is_empty() {
                TruncSSet::new(top)
            } else {
                nerve(&p.subposet(elems), Some(top)).unwrap().sset
            }
        };
        let (nu, nv, nw) = (sub(&u), sub(&v), sub(&w));
        let mut arrows = Vec::new();
        if !w.is_empty() {
            let full_w = nerve(&p.subposet(&w), Some(top)).unwrap();
            for (k, part) in [&u, &v].into_iter().enumerate() {
                let target = nerve(&p.subposet(part), Some(top)).unwrap();
                let map = nerve_map(&full_w, &target, |x| part.iter().position(|&y| y == w[x]).unwrap());
                arrows.push((0, k + 1, map));
            }
        }
        let col = colimit(&[nw, nu, nv], &arrows).unwrap();
        let whole = nerve(&p, Some(top)).unwrap().sset;
        prop_assert_eq!(col.sset.counts(), whole.counts());
    }

    #[test]
    fn kappa_recovers_the_path(steps in Just((1u8..=4).collect::<Vec<u8>>()).prop_shuffle(), reps in prop::collection::vec(1usize..3, 5)) {
        let n = steps.len();
        let mut path = vec![Vertex::alpha(n)];
        for &s in &steps {
            let last = *path.last().unwrap();
            path.push(Vertex::new(n, last.bits() | 1 << (s - 1)).unwrap());
        }
        let padded: Vec<Vertex> = path.iter().zip(&reps).flat_map(|(&v, &r)| std::iter::repeat(v).take(r)).collect();
        prop_assert_eq!(kappa(&padded), path.clone());
        prop_assert_eq!(kappa(&kappa(&padded)), path.clone());
        prop_assert_eq!(step_sequence(&path), steps);
    }

    #[test]
    fn downward_closed_colimits_inject(t in necklace(4), pick in prop::collection::vec(any::<bool>(), 75)) {
        let d = subneck_diagram(&t.to_subcomplex(), t.alpha(), t.omega(), None).unwrap();
        let whole = d.colimit().unwrap();
        let p = &d.subneck.poset;
        let set = p.down_closure(&(0..p.len()).filter(|&x| pick[x]).collect::<Vec<_>>());
        prop_assert!(p.is_downward_closed(&set));
        let partial = d.colimit_over(&set).unwrap();
        prop_assert!(d.comparison(&set, &partial, &whole).is_injective());
    }

    #[test]
    fn necklace_maps_compose(t in necklace(3), u in necklace(3), v in necklace(3)) {
        let tv: BTreeSet<Vec<(Vertex, Vertex)>> = hom_nec(&t, &v).unwrap().iter().map(|h| h.vertex_map()).collect();
        for f in hom_nec(&t, &u).unwrap() {
            for g in hom_nec(&u, &v).unwrap() {
                let composite: Vec<(Vertex, Vertex)> = f.vertex_map().into_iter().map(|(x, y)| (x, g.apply(y))).collect();
                prop_assert!(tv.contains(&composite));
            }
        }
    }

    #[test]
    fn vertex_order_is_subset(n in 0usize..=6, x in any::<u32>(), y in any::<u32>()) {
        let mask = (1u32 << n) - 1;
        let (a, b) = (Vertex::new(n, x & mask).unwrap(), Vertex::new(n, y & mask).unwrap());
        prop_assert_eq!(a.leq(&b), a.bits() & !b.bits() == 0);
        match a.distance(&b) {
            Some(d) => prop_assert_eq!(d, b.weight() - a.weight()),
            None => prop_assert!(!a.leq(&b)),
        }
    }
}

#[test]
fn q_edges_raise_sup() {
    for n in 1..=5 {
        let q = q_complex(n).unwrap();
        let mut seen = BTreeSet::new();
        for x in 0..q.complex.count(1) {
            let (s, t) = q.complex.edge_ends(x);
            assert!(q.vertex_sup[s] < q.vertex_sup[t], "n = {n}, edge {x}");
            seen.insert((q.vertex_sup[s], q.vertex_sup[t]));
        }
        // one nondegenerate edge per pair i < j
        assert_eq!(seen.len(), n * (n + 1) / 2);
        assert_eq!(q.complex.count(1), seen.len());
    }
}
