mod common;

use digitop::continuity::{
    connected_image_check, is_continuous_lattice, is_continuous_lattice_neighborhood,
    is_continuous_relation, DigitalMap,
};
use digitop::group::{check_ap1_group, check_dt_group, cyclic_group, verify_group};
use digitop::image::{curves, msc18, DigitalImage};
use digitop::product::{c_star, product, PairRelation};
use proptest::prelude::*;

fn map_strategy() -> impl Strategy<Value = (DigitalImage, DigitalMap)> {
    (common::image_strategy(3, 8, 3), common::image_strategy(3, 4, 3)).prop_flat_map(|(dom, cod)| {
        let m = dom.len();
        prop::collection::vec(0..cod.len(), m).prop_map(move |choice| {
            let cpts = cod.points();
            let f = DigitalMap::new(
                dom.points()
                    .iter()
                    .zip(&choice)
                    .map(|(x, &i)| (x.clone(), cpts[i].clone()))
                    .collect(),
                cod.adjacency(),
            )
            .unwrap();
            (dom.clone(), f)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn pair_and_neighborhood_continuity_agree((dom, f) in map_strategy()) {
        let pair = is_continuous_lattice(&f, dom.adjacency()).unwrap();
        let nbhd = is_continuous_lattice_neighborhood(&f, dom.adjacency()).unwrap();
        prop_assert_eq!(pair.continuous, nbhd.continuous);
        prop_assert_eq!(pair.witness.is_some(), !pair.continuous);
    }

    #[test]
    fn connected_images_characterize_continuity((dom, f) in map_strategy()) {
        let pair = is_continuous_lattice(&f, dom.adjacency()).unwrap();
        prop_assert_eq!(pair.continuous, connected_image_check(&f, dom.adjacency(), dom.len()).unwrap());
    }

    #[test]
    fn lattice_relation_matches_lattice_continuity((dom, f) in map_strategy()) {
        let rel = PairRelation::lattice(dom.points().to_vec(), dom.t());
        prop_assert_eq!(
            is_continuous_relation(&f, &rel).unwrap(),
            is_continuous_lattice(&f, dom.adjacency()).unwrap()
        );
    }
}

/// Maps between corpus curves that send the sequence index `i` to `(a * i + b) mod l`.
fn index_maps(from: &digitop::SimpleClosedCurve, to: &digitop::SimpleClosedCurve) -> Vec<DigitalMap> {
    let (s, d) = (from.sequence(), to.sequence());
    let mut out = Vec::new();
    for a in 0..d.len() {
        for b in 0..d.len() {
            let pairs = s
                .iter()
                .enumerate()
                .map(|(i, x)| (x.clone(), d[(a * i + b) % d.len()].clone()))
                .collect();
            out.push(DigitalMap::new(pairs, to.adjacency()).unwrap());
        }
    }
    out
}

#[test]
fn composition_preserves_continuity_on_corpus_curves() {
    let all = curves::all();
    let mut composed = 0;
    for (_, x) in &all {
        for (_, y) in all.iter().filter(|(_, y)| y.len() == x.len()) {
            for (_, z) in all.iter().filter(|(_, z)| z.len() == x.len()) {
                for f in index_maps(x, y) {
                    if !is_continuous_lattice(&f, x.adjacency()).unwrap().continuous {
                        continue;
                    }
                    for g in index_maps(y, z).into_iter().step_by(3) {
                        if is_continuous_lattice(&g, y.adjacency()).unwrap().continuous {
                            let h = f.then(&g).unwrap();
                            assert!(is_continuous_lattice(&h, x.adjacency()).unwrap().continuous);
                            composed += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(composed > 100);
}

#[test]
fn cyclic_groups_verify_on_every_curve() {
    for (name, c) in curves::all() {
        let g = cyclic_group(&c);
        assert_eq!(verify_group(&g), Ok(()), "{name}");
        assert!(g.is_abelian());
    }
}

#[test]
fn ap1_star_implies_ap1_and_dt_on_corpus_curves() {
    for (name, c) in curves::all() {
        let (x, g) = (c.image(), cyclic_group(&c));
        let star = check_ap1_group(&x, &g, true).unwrap();
        if star.holds {
            assert!(check_ap1_group(&x, &g, false).unwrap().holds, "{name}");
            assert!(check_dt_group(&x, &g).unwrap().holds, "{name}");
        }
    }
}

/// Where `C_{k*}` exists on the square, the AP_1* verdict is the DT verdict
/// taken over the `C_{k*}` pair set.
#[test]
fn ap1_star_matches_dt_over_c_star_pairs() {
    let mut compared = 0;
    for (name, c) in curves::all() {
        let x = c.image();
        let g = cyclic_group(&c);
        let cs = c_star(&x, &x).unwrap();
        let Some(adj) = cs.adjacency else { continue };
        let prod = product(vec![x.clone(), x.clone()]).unwrap();
        let c_rel = PairRelation::lattice(prod.points().to_vec(), adj.t());
        let alpha = DigitalMap::from_fn(prod.points(), x.adjacency(), |p| {
            let comps = prod.components(p);
            let i = c.sequence().iter().position(|s| s == &comps[0]).unwrap();
            let j = c.sequence().iter().position(|s| s == &comps[1]).unwrap();
            c.sequence()[g.op(i, j)].clone()
        })
        .unwrap();
        let via_c = is_continuous_relation(&alpha, &c_rel).unwrap();
        let star = check_ap1_group(&x, &g, true).unwrap();
        assert_eq!(star.multiplication.as_ref(), Some(&via_c), "{name}");
        compared += 1;
    }
    assert!(compared >= 3);
}

#[test]
fn msc18_doubling_map_fails_every_form() {
    let c = msc18();
    let s = c.sequence();
    let f = DigitalMap::new(
        (0..6).map(|i| (s[i].clone(), s[(2 * i) % 6].clone())).collect(),
        c.adjacency(),
    )
    .unwrap();
    assert!(!is_continuous_lattice(&f, c.adjacency()).unwrap().continuous);
    assert!(!is_continuous_lattice_neighborhood(&f, c.adjacency()).unwrap().continuous);
    assert!(!connected_image_check(&f, c.adjacency(), 6).unwrap());
}
