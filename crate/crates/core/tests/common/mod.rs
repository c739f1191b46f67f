#![allow(dead_code)]

use std::collections::VecDeque;

use digitop::image::DigitalImage;
use digitop::lattice::{lattice_adjacent, Point};
use proptest::prelude::*;
use rand::Rng;

/// Up to `max_points` points of `[0, side)^n` with a random `t`.
pub fn random_image(rng: &mut impl Rng, max_dim: usize, max_points: usize, side: i64) -> DigitalImage {
    let n = rng.gen_range(1..=max_dim);
    let t = rng.gen_range(1..=n);
    let size = rng.gen_range(1..=max_points);
    let points: Vec<Point> = (0..size)
        .map(|_| Point::new((0..n).map(|_| rng.gen_range(0..side)).collect()).unwrap())
        .collect();
    DigitalImage::new(points, t).unwrap()
}

pub fn image_strategy(max_dim: usize, max_points: usize, side: i64) -> impl Strategy<Value = DigitalImage> {
    (1..=max_dim).prop_flat_map(move |n| {
        (
            1..=n,
            prop::collection::vec(prop::collection::vec(0..side, n), 1..=max_points),
        )
            .prop_map(|(t, pts)| {
                DigitalImage::new(pts.into_iter().map(|c| Point::new(c).unwrap()), t).unwrap()
            })
    })
}

/// Connectivity by transitive closure of the adjacency matrix.
pub fn closure_connected(image: &DigitalImage) -> bool {
    let pts = image.points();
    let m = pts.len();
    let mut reach = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            reach[i][j] = i == j || lattice_adjacent(&pts[i], &pts[j], image.t()).unwrap();
        }
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    reach.iter().all(|row| row.iter().all(|&r| r))
}

/// Breadth-first distances from `start`, independent of the library.
pub fn bfs_distances(image: &DigitalImage, start: usize) -> Vec<Option<usize>> {
    let pts = image.points();
    let mut dist = vec![None; pts.len()];
    dist[start] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        for j in 0..pts.len() {
            if dist[j].is_none() && lattice_adjacent(&pts[i], &pts[j], image.t()).unwrap() {
                dist[j] = Some(dist[i].unwrap() + 1);
                queue.push_back(j);
            }
        }
    }
    dist
}
