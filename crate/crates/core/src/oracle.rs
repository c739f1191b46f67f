//! Neighborhood-form characterizations, kept as an independent cross-check of
//! the pairwise decisions in [`crate::product`] and [`crate::continuity`].
//!
//! A product adjacency `k(t, N)` realizes a structure exactly when every
//! product point's lattice neighborhood (taken inside the product) equals the
//! set predicted from the factor neighborhoods:
//!
//! * normal: `N(x) × N(y)`;
//! * C-compatible: `(N(x) × {y}) ∪ ({x} × N(y))`;
//! * `AP_u`: the union, over nonempty sets `S` of at most `u` factors, of the
//!   block product with `N(x_i)` for `i` in `S` and `{x_i}` elsewhere.
//!
//! Nothing here touches the pair classifier used by
//! [`adjacency_existence`](crate::product::adjacency_existence).

use std::collections::BTreeSet;

use crate::error::Result;
use crate::lattice::{lattice_neighborhood, Ground, Point};
use crate::product::{ProductKind, ProductSpace};

/// All tuples of the Cartesian product of `blocks`, concatenated.
fn block_product(blocks: &[Vec<Point>]) -> Vec<Point> {
    let mut acc: Vec<Vec<&Point>> = vec![Vec::new()];
    for block in blocks {
        let mut next = Vec::with_capacity(acc.len() * block.len());
        for prefix in &acc {
            for p in block {
                let mut v = prefix.clone();
                v.push(p);
                next.push(v);
            }
        }
        acc = next;
    }
    acc.into_iter().map(Point::concat).collect()
}

/// The closed neighborhood of `p` predicted by `kind` from factor neighborhoods.
pub fn predicted_neighborhood(
    prod: &ProductSpace,
    kind: ProductKind,
    p: &Point,
) -> Result<BTreeSet<Point>> {
    kind.check_arity(prod.arity())?;
    let comps = prod.components(p);
    let factor_nbhds = comps
        .iter()
        .zip(prod.factors())
        .map(|(x, f)| Ok(lattice_neighborhood(x, f.t(), Ground::Finite(f.points()))?.closed()))
        .collect::<Result<Vec<_>>>()?;
    let singleton = |i: usize| vec![comps[i].clone()];
    let v = prod.arity();

    let mut out = BTreeSet::new();
    match kind {
        ProductKind::Normal => {
            out.extend(block_product(&factor_nbhds));
        }
        ProductKind::CCompatible => {
            out.extend(block_product(&[factor_nbhds[0].clone(), singleton(1)]));
            out.extend(block_product(&[singleton(0), factor_nbhds[1].clone()]));
        }
        ProductKind::Ap(u) => {
            for mask in 1u32..(1 << v) {
                if mask.count_ones() as usize > u {
                    continue;
                }
                let blocks: Vec<Vec<Point>> = (0..v)
                    .map(|i| {
                        if mask & (1 << i) != 0 {
                            factor_nbhds[i].clone()
                        } else {
                            singleton(i)
                        }
                    })
                    .collect();
                out.extend(block_product(&blocks));
            }
        }
    }
    Ok(out)
}

/// The closed `k(t, N)` neighborhood of `p` inside the product.
pub fn lattice_neighborhood_in_product(
    prod: &ProductSpace,
    t: usize,
    p: &Point,
) -> Result<BTreeSet<Point>> {
    Ok(lattice_neighborhood(p, t, Ground::Finite(prod.points()))?
        .closed()
        .into_iter()
        .collect())
}

/// Whether the neighborhood equation for `kind` holds at `p` under `k(t, N)`.
pub fn neighborhood_form_holds_at(
    prod: &ProductSpace,
    kind: ProductKind,
    t: usize,
    p: &Point,
) -> Result<bool> {
    Ok(lattice_neighborhood_in_product(prod, t, p)? == predicted_neighborhood(prod, kind, p)?)
}

/// Admissible `t` values computed through neighborhoods at every point.
pub fn existence_by_neighborhoods(prod: &ProductSpace, kind: ProductKind) -> Result<Vec<usize>> {
    let predicted = prod
        .points()
        .iter()
        .map(|p| predicted_neighborhood(prod, kind, p))
        .collect::<Result<Vec<_>>>()?;
    let mut admissible = Vec::new();
    'scan: for t in 1..=prod.dim() {
        for (p, expected) in prod.points().iter().zip(&predicted) {
            if &lattice_neighborhood_in_product(prod, t, p)? != expected {
                continue 'scan;
            }
        }
        admissible.push(t);
    }
    Ok(admissible)
}
