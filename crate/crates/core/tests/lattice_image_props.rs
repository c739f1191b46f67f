mod common;

use digitop::image::{curves, is_connected, k_path, msc18, validate_curve, DigitalImage};
use digitop::lattice::{k_value, lattice_adjacent, lattice_neighborhood, Ground, Point};
use proptest::prelude::*;

fn point_pair(max_dim: usize) -> impl Strategy<Value = (Point, Point, usize)> {
    (1..=max_dim).prop_flat_map(|n| {
        (
            prop::collection::vec(-2i64..=2, n),
            prop::collection::vec(-2i64..=2, n),
            1..=n,
        )
            .prop_map(|(a, b, t)| (Point::new(a).unwrap(), Point::new(b).unwrap(), t))
    })
}

proptest! {
    #[test]
    fn adjacency_is_symmetric_and_irreflexive((p, q, t) in point_pair(6)) {
        prop_assert_eq!(lattice_adjacent(&p, &q, t).unwrap(), lattice_adjacent(&q, &p, t).unwrap());
        prop_assert!(!lattice_adjacent(&p, &p, t).unwrap());
    }

    #[test]
    fn adjacency_is_monotone_in_t((p, q, t) in point_pair(6)) {
        if lattice_adjacent(&p, &q, t).unwrap() {
            for wider in t..=p.dim() {
                prop_assert!(lattice_adjacent(&p, &q, wider).unwrap());
            }
        }
    }

    #[test]
    fn full_lattice_neighborhood_has_k_points(
        coords in (1usize..=5).prop_flat_map(|n| prop::collection::vec(-100i64..=100, n)),
        t_seed in 0usize..5,
    ) {
        let p = Point::new(coords).unwrap();
        let t = 1 + t_seed % p.dim();
        let n = lattice_neighborhood(&p, t, Ground::FullLattice).unwrap();
        prop_assert_eq!(n.punctured.len() as u64, k_value(t, p.dim()).unwrap());
        prop_assert!(n.punctured.iter().all(|q| lattice_adjacent(&p, q, t).unwrap()));
    }

    #[test]
    fn connectivity_matches_transitive_closure(image in common::image_strategy(3, 12, 3)) {
        prop_assert_eq!(is_connected(&image), common::closure_connected(&image));
    }

    #[test]
    fn k_path_is_a_shortest_path(image in common::image_strategy(3, 10, 3), a in 0usize..10, b in 0usize..10) {
        let pts = image.points();
        let (x, y) = (&pts[a % pts.len()], &pts[b % pts.len()]);
        let dist = common::bfs_distances(&image, a % pts.len());
        match k_path(&image, x, y).unwrap() {
            None => prop_assert!(dist[b % pts.len()].is_none()),
            Some(path) => {
                prop_assert_eq!(path.first(), Some(x));
                prop_assert_eq!(path.last(), Some(y));
                prop_assert_eq!(Some(path.len() - 1), dist[b % pts.len()]);
                for w in path.windows(2) {
                    prop_assert!(lattice_adjacent(&w[0], &w[1], image.t()).unwrap());
                }
            }
        }
    }

    #[test]
    fn curves_survive_rotation_and_reversal(which in 0usize..8, shift in 0usize..8, reverse: bool) {
        let (_, curve) = curves::all().swap_remove(which % 8);
        let mut seq = curve.sequence().to_vec();
        let len = seq.len();
        seq.rotate_left(shift % len);
        if reverse {
            seq.reverse();
        }
        prop_assert!(validate_curve(seq, curve.adjacency().t()).is_ok());
    }
}

#[test]
fn every_library_curve_is_connected() {
    for (name, c) in curves::all() {
        assert!(is_connected(&c.image()), "{name}");
    }
}

#[test]
fn msc18_paths_between_opposite_points() {
    let c = msc18();
    let s = c.sequence();
    let path = k_path(&c.image(), &s[0], &s[3]).unwrap().unwrap();
    assert_eq!(path.len(), 4);
    let single = k_path(&c.image(), &s[2], &s[2]).unwrap().unwrap();
    assert_eq!(single, vec![s[2].clone()]);
}

#[test]
fn disconnected_pair_has_no_path() {
    let x = DigitalImage::new([digitop::pt(&[0, 0]), digitop::pt(&[2, 2])], 1).unwrap();
    assert!(!is_connected(&x));
    assert_eq!(k_path(&x, &x.points()[0], &x.points()[1]).unwrap(), None);
}
