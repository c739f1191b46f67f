//! Products of digital images and exact existence decisions for product
//! adjacencies.
//!
//! A product `X_1 × ... × X_v` lives in `Z^{n_1 + ... + n_v}` with coordinate
//! blocks concatenated in factor order. For each kind of product structure
//! there is a *defining condition* on pairs of product points, phrased in
//! terms of the factors:
//!
//! * **normal** (`v = 2`): one component is fixed and the other moves by a
//!   factor adjacency, or both move by factor adjacencies;
//! * **C-compatible** (`v = 2`): exactly one component moves, by a factor
//!   adjacency;
//! * **`AP_u`**: between `1` and `u` components move, each by its factor
//!   adjacency, and all other components are fixed.
//!
//! A lattice adjacency `k(t, N)` on the product *realizes* the structure when,
//! for every pair of distinct product points, lattice adjacency holds if and
//! only if the defining condition holds. [`adjacency_existence`] scans every
//! `t` in `[1, N]` and reports which ones do.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::DigitalImage;
use crate::lattice::{step_count_coords, LatticeAdjacency, Neighborhood, Point};

/// The materialized product of `v >= 2` digital images.
#[derive(Clone, Debug)]
pub struct ProductSpace {
    factors: Vec<DigitalImage>,
    block_bounds: Vec<usize>,
    points: Vec<Point>,
    tuples: Vec<Vec<usize>>,
    factor_adjacency: Vec<Vec<Vec<bool>>>,
}

pub fn product(factors: Vec<DigitalImage>) -> Result<ProductSpace> {
    if factors.len() < 2 {
        return Err(Error::Arity {
            what: "a product",
            expected: "at least 2",
            found: factors.len(),
        });
    }
    let mut block_bounds = vec![0];
    for f in &factors {
        block_bounds.push(block_bounds.last().unwrap() + f.dim());
    }

    // Odometer over factor indices; factors are sorted, so this yields the
    // concatenated points in lexicographic order.
    let sizes: Vec<usize> = factors.iter().map(DigitalImage::len).collect();
    let total: usize = sizes.iter().product();
    let mut tuples = Vec::with_capacity(total);
    let mut cur = vec![0usize; factors.len()];
    for _ in 0..total {
        tuples.push(cur.clone());
        for i in (0..cur.len()).rev() {
            cur[i] += 1;
            if cur[i] < sizes[i] {
                break;
            }
            cur[i] = 0;
        }
    }
    let points = tuples
        .iter()
        .map(|tup| Point::concat(tup.iter().zip(&factors).map(|(&i, f)| &f.points()[i])))
        .collect();
    let factor_adjacency = factors
        .iter()
        .map(|f| {
            (0..f.len())
                .map(|i| (0..f.len()).map(|j| f.adjacent_indices(i, j)).collect())
                .collect()
        })
        .collect();
    Ok(ProductSpace {
        factors,
        block_bounds,
        points,
        tuples,
        factor_adjacency,
    })
}

impl ProductSpace {
    pub fn factors(&self) -> &[DigitalImage] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    /// Offsets `0 = b_0 < b_1 < ... < b_v = N` of the coordinate blocks.
    pub fn block_bounds(&self) -> &[usize] {
        &self.block_bounds
    }

    /// Total dimension `N`.
    pub fn dim(&self) -> usize {
        *self.block_bounds.last().unwrap()
    }

    /// Product points in lexicographic order.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Factor indices of each product point.
    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// Splits a product point into its factor components.
    pub fn components(&self, p: &Point) -> Vec<Point> {
        self.block_bounds
            .windows(2)
            .map(|w| p.block(w[0], w[1]))
            .collect()
    }

    fn index_of_tuple(&self, tuple: &[usize]) -> usize {
        tuple
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&i, f)| acc * f.len() + i)
    }

    #[inline]
    fn factor_adjacent(&self, factor: usize, a: usize, b: usize) -> bool {
        self.factor_adjacency[factor][a][b]
    }
}

/// Which product structure to decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductKind {
    Normal,
    CCompatible,
    Ap(usize),
}

impl ProductKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProductKind::Normal => "normal",
            ProductKind::CCompatible => "c_compatible",
            ProductKind::Ap(_) => "ap",
        }
    }

    pub fn u(&self) -> Option<usize> {
        match self {
            ProductKind::Ap(u) => Some(*u),
            _ => None,
        }
    }

    pub(crate) fn check_arity(&self, v: usize) -> Result<()> {
        match self {
            ProductKind::Normal | ProductKind::CCompatible if v != 2 => Err(Error::Arity {
                what: if *self == ProductKind::Normal {
                    "a normal adjacency"
                } else {
                    "a C-compatible adjacency"
                },
                expected: "exactly 2",
                found: v,
            }),
            ProductKind::Ap(u) if *u < 1 || *u > v => Err(Error::URange { u: *u, v }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProductKind::Normal => write!(f, "normal"),
            ProductKind::CCompatible => write!(f, "C-compatible"),
            ProductKind::Ap(u) => write!(f, "AP_{u}"),
        }
    }
}

/// The defining condition of `kind` for product points with factor index
/// tuples `a` and `b`.
pub(crate) fn defining_condition(
    prod: &ProductSpace,
    kind: ProductKind,
    a: &[usize],
    b: &[usize],
) -> bool {
    match kind {
        ProductKind::Normal => {
            let adj0 = prod.factor_adjacent(0, a[0], b[0]);
            let adj1 = prod.factor_adjacent(1, a[1], b[1]);
            (a[1] == b[1] && adj0) || (a[0] == b[0] && adj1) || (adj0 && adj1)
        }
        ProductKind::CCompatible => {
            let adj0 = prod.factor_adjacent(0, a[0], b[0]);
            let adj1 = prod.factor_adjacent(1, a[1], b[1]);
            (a[1] == b[1] && adj0) || (a[0] == b[0] && adj1)
        }
        ProductKind::Ap(u) => {
            let mut moved = 0;
            for (i, (&x, &y)) in a.iter().zip(b).enumerate() {
                if x != y {
                    if !prod.factor_adjacent(i, x, y) {
                        return false;
                    }
                    moved += 1;
                }
            }
            moved >= 1 && moved <= u
        }
    }
}

/// Which side of the defining "if and only if" broke.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IffFailure {
    /// The points are lattice-adjacent but the defining condition fails.
    LatticeOnly,
    /// The defining condition holds but the points are not lattice-adjacent.
    ConditionOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub p: Point,
    pub q: Point,
    pub failure: IffFailure,
}

/// Outcome of [`adjacency_existence`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExistenceReport {
    #[serde(serialize_with = "serialize_kind")]
    pub kind: ProductKind,
    pub u: Option<usize>,
    /// Total dimension `N` of the product.
    pub dim: usize,
    pub admissible_t: Vec<usize>,
    pub admissible_k: Vec<u64>,
    pub star_t: Option<usize>,
    pub star_k: Option<u64>,
    /// First failing pair (in canonical order) for each rejected `t`.
    pub witnesses: BTreeMap<usize, PairWitness>,
}

fn serialize_kind<S: serde::Serializer>(kind: &ProductKind, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(kind.name())
}

impl ExistenceReport {
    pub fn exists(&self) -> bool {
        !self.admissible_t.is_empty()
    }

    /// The minimal realizing adjacency, if any.
    pub fn star(&self) -> Option<LatticeAdjacency> {
        self.star_t
            .map(|t| LatticeAdjacency::new(t, self.dim).expect("admissible t is in range"))
    }
}

type FirstWitness = Vec<Option<(usize, usize, IffFailure)>>;

fn merge_first(mut a: FirstWitness, b: FirstWitness) -> FirstWitness {
    for (x, y) in a.iter_mut().zip(b) {
        match (&x, &y) {
            (None, Some(_)) => *x = y,
            (Some((i, j, _)), Some((k, l, _))) if (k, l) < (i, j) => *x = y,
            _ => {}
        }
    }
    a
}

/// Decides, for every `t` in `[1, N]`, whether `k(t, N)` realizes `kind` on
/// the product.
///
/// Each pair of distinct points is classified once: the pair fails every `t`
/// below its step count when the condition holds, and every `t` at or above
/// its step count when the condition fails. The scan is parallel over the
/// first index; witnesses are merged by canonical pair order so the result
/// does not depend on scheduling.
pub fn adjacency_existence(prod: &ProductSpace, kind: ProductKind) -> Result<ExistenceReport> {
    kind.check_arity(prod.arity())?;
    let n = prod.dim();
    let m = prod.len();

    let first: FirstWitness = (0..m)
        .into_par_iter()
        .fold(
            || vec![None; n + 1],
            |mut acc: FirstWitness, i| {
                let p = prod.points[i].coords();
                let a = &prod.tuples[i];
                for j in (i + 1)..m {
                    let steps = step_count_coords(p, prod.points[j].coords());
                    let cond = defining_condition(prod, kind, a, &prod.tuples[j]);
                    let (range, failure) = match (cond, steps) {
                        (true, Some(c)) => (1..c.min(n + 1), IffFailure::ConditionOnly),
                        (true, None) => (1..n + 1, IffFailure::ConditionOnly),
                        (false, Some(c)) => (c..n + 1, IffFailure::LatticeOnly),
                        (false, None) => continue,
                    };
                    for t in range {
                        if acc[t].is_none() {
                            acc[t] = Some((i, j, failure));
                        }
                    }
                }
                acc
            },
        )
        .reduce(|| vec![None; n + 1], merge_first);

    let mut admissible_t = Vec::new();
    let mut witnesses = BTreeMap::new();
    for (t, w) in first.into_iter().enumerate().skip(1) {
        match w {
            None => admissible_t.push(t),
            Some((i, j, failure)) => {
                witnesses.insert(
                    t,
                    PairWitness {
                        p: prod.points[i].clone(),
                        q: prod.points[j].clone(),
                        failure,
                    },
                );
            }
        }
    }
    let admissible_k = admissible_t
        .iter()
        .map(|&t| LatticeAdjacency::new(t, n).map(|a| a.k()))
        .collect::<Result<Vec<_>>>()?;
    let star_t = admissible_t.first().copied();
    Ok(ExistenceReport {
        kind,
        u: kind.u(),
        dim: n,
        star_k: admissible_k.first().copied(),
        admissible_t,
        admissible_k,
        star_t,
        witnesses,
    })
}

/// A symmetric, irreflexive relation on a finite point set.
///
/// The ground set keeps the order it was built with; pair enumeration and
/// witness searches follow that order.
#[derive(Clone, Debug)]
pub struct PairRelation {
    ground: Vec<Point>,
    index: HashMap<Point, usize>,
    neighbors: Vec<Vec<usize>>,
}

impl PairRelation {
    fn from_neighbor_lists(ground: Vec<Point>, mut neighbors: Vec<Vec<usize>>) -> Self {
        for (i, l) in neighbors.iter_mut().enumerate() {
            l.retain(|&j| j != i);
            l.sort_unstable();
            l.dedup();
        }
        let index = ground
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        PairRelation {
            ground,
            index,
            neighbors,
        }
    }

    /// Builds the relation `{(p, q) : related(p, q)}`; `related` must be symmetric.
    pub fn from_predicate(ground: Vec<Point>, related: impl Fn(&Point, &Point) -> bool) -> Self {
        let m = ground.len();
        let mut lists = vec![Vec::new(); m];
        for i in 0..m {
            for j in (i + 1)..m {
                if related(&ground[i], &ground[j]) {
                    lists[i].push(j);
                    lists[j].push(i);
                }
            }
        }
        PairRelation::from_neighbor_lists(ground, lists)
    }

    /// Builds a relation from explicit unordered pairs; self-pairs are dropped.
    pub fn from_pairs(ground: Vec<Point>, pairs: &[(Point, Point)]) -> Result<Self> {
        let index: HashMap<&Point, usize> = ground.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut lists = vec![Vec::new(); ground.len()];
        for (p, q) in pairs {
            let i = *index.get(p).ok_or_else(|| Error::PointNotInImage(p.clone()))?;
            let j = *index.get(q).ok_or_else(|| Error::PointNotInImage(q.clone()))?;
            lists[i].push(j);
            lists[j].push(i);
        }
        Ok(PairRelation::from_neighbor_lists(ground, lists))
    }

    /// `k(t, N)`-adjacency restricted to `ground`.
    pub fn lattice(ground: Vec<Point>, t: usize) -> Self {
        PairRelation::from_predicate(ground, |p, q| {
            matches!(step_count_coords(p.coords(), q.coords()), Some(c) if c >= 1 && c <= t)
        })
    }

    pub fn ground(&self) -> &[Point] {
        &self.ground
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn related(&self, p: &Point, q: &Point) -> bool {
        match (self.index.get(p), self.index.get(q)) {
            (Some(&i), Some(&j)) => self.neighbors[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    /// Related ground indices of ground index `i`, ascending.
    pub fn neighbor_indices(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    /// Number of unordered pairs.
    pub fn pair_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Unordered pairs `(p, q)` with `p` before `q` in ground order, in
    /// canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        self.neighbors.iter().enumerate().flat_map(move |(i, l)| {
            l.iter()
                .filter(move |&&j| j > i)
                .map(move |&j| (&self.ground[i], &self.ground[j]))
        })
    }

    /// Pairs as a sorted list of `(min, max)` points; order-independent.
    pub fn pair_set(&self) -> Vec<(Point, Point)> {
        let mut out: Vec<(Point, Point)> = self
            .pairs()
            .map(|(p, q)| {
                if p <= q {
                    (p.clone(), q.clone())
                } else {
                    (q.clone(), p.clone())
                }
            })
            .collect();
        out.sort();
        out
    }

    pub fn same_pairs(&self, other: &PairRelation) -> bool {
        self.pair_set() == other.pair_set()
    }

    /// The same relation with its ground set re-sorted by `key`.
    pub fn reordered_by_key<K: Ord>(&self, key: impl Fn(&Point) -> K) -> PairRelation {
        let mut order: Vec<usize> = (0..self.ground.len()).collect();
        order.sort_by_key(|&i| key(&self.ground[i]));
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let ground = order.iter().map(|&i| self.ground[i].clone()).collect();
        let lists = order
            .iter()
            .map(|&old| self.neighbors[old].iter().map(|&j| new_index[j]).collect())
            .collect();
        PairRelation::from_neighbor_lists(ground, lists)
    }
}

/// The relation of points satisfying the `AP_u` defining condition: between
/// 1 and `u` components move, each by its factor adjacency.
///
/// Built constructively from factor adjacency lists rather than by scanning
/// all pairs.
pub fn condition_pairs(prod: &ProductSpace, u: usize) -> Result<PairRelation> {
    let v = prod.arity();
    if u < 1 || u > v {
        return Err(Error::URange { u, v });
    }
    let factor_lists: Vec<Vec<Vec<usize>>> =
        prod.factors.iter().map(DigitalImage::adjacency_lists).collect();
    let mut lists = Vec::with_capacity(prod.len());
    for tuple in &prod.tuples {
        let mut out = Vec::new();
        // Nonempty subsets of factors with at most u members.
        for mask in 1u32..(1 << v) {
            if mask.count_ones() as usize > u {
                continue;
            }
            let moving: Vec<usize> = (0..v).filter(|i| mask & (1 << i) != 0).collect();
            let mut choice = tuple.clone();
            extend_moves(prod, &factor_lists, &moving, 0, tuple, &mut choice, &mut out);
        }
        lists.push(out);
    }
    Ok(PairRelation::from_neighbor_lists(prod.points.clone(), lists))
}

fn extend_moves(
    prod: &ProductSpace,
    factor_lists: &[Vec<Vec<usize>>],
    moving: &[usize],
    depth: usize,
    base: &[usize],
    choice: &mut Vec<usize>,
    out: &mut Vec<usize>,
) {
    if depth == moving.len() {
        out.push(prod.index_of_tuple(choice));
        return;
    }
    let f = moving[depth];
    for &next in &factor_lists[f][base[f]] {
        choice[f] = next;
        extend_moves(prod, factor_lists, moving, depth + 1, base, choice, out);
    }
    choice[f] = base[f];
}

/// The `G_{k*}` relation on `X_1 × X_2`: one component fixed, the other moved
/// by its factor adjacency. Always exists; labelled by
/// `k* = k(max(t_1, t_2), n_1 + n_2)`.
pub fn g_star(x1: &DigitalImage, x2: &DigitalImage) -> Result<(PairRelation, LatticeAdjacency)> {
    let k_star = LatticeAdjacency::new(x1.t().max(x2.t()), x1.dim() + x2.dim())?;
    let prod = product(vec![x1.clone(), x2.clone()])?;
    Ok((condition_pairs(&prod, 1)?, k_star))
}

/// How the least C-compatible adjacency compares with `k*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CStarDiagnostic {
    /// No C-compatible adjacency at all.
    NoCCompatible,
    /// The least C-compatible adjacency is `k*`.
    MinIsKStar,
    /// The least C-compatible adjacency differs from `k*`.
    MinDiffers { min_t: usize, k_star_t: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct CStarResult {
    /// `C_{k*}` when it exists.
    pub adjacency: Option<LatticeAdjacency>,
    pub k_star: LatticeAdjacency,
    pub diagnostic: CStarDiagnostic,
    pub report: ExistenceReport,
}

pub fn c_star(x1: &DigitalImage, x2: &DigitalImage) -> Result<CStarResult> {
    let k_star = LatticeAdjacency::new(x1.t().max(x2.t()), x1.dim() + x2.dim())?;
    let prod = product(vec![x1.clone(), x2.clone()])?;
    let report = adjacency_existence(&prod, ProductKind::CCompatible)?;
    let (adjacency, diagnostic) = match report.star_t {
        None => (None, CStarDiagnostic::NoCCompatible),
        Some(t) if t == k_star.t() => (Some(k_star), CStarDiagnostic::MinIsKStar),
        Some(t) => (
            None,
            CStarDiagnostic::MinDiffers {
                min_t: t,
                k_star_t: k_star.t(),
            },
        ),
    };
    Ok(CStarResult {
        adjacency,
        k_star,
        diagnostic,
        report,
    })
}

/// `N*` and `N` of `p` in a relation set.
pub fn relation_neighborhood(rel: &PairRelation, p: &Point) -> Result<Neighborhood> {
    let i = rel
        .index_of(p)
        .ok_or_else(|| Error::PointNotInImage(p.clone()))?;
    let mut punctured: Vec<Point> = rel.neighbors[i]
        .iter()
        .map(|&j| rel.ground[j].clone())
        .collect();
    punctured.sort();
    Ok(Neighborhood {
        center: p.clone(),
        punctured,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::{curves, msc18};
    use crate::lattice::pt;

    fn square(c: &crate::image::SimpleClosedCurve) -> ProductSpace {
        product(vec![c.image(), c.image()]).unwrap()
    }

    #[test]
    fn product_sizes() {
        let p = square(&msc18());
        assert_eq!((p.len(), p.dim()), (36, 6));
        let p = square(&curves::sc8_2_4());
        assert_eq!((p.len(), p.dim()), (16, 4));
        let x = curves::sc18_3_6().image();
        let p = product(vec![x.clone(), x.clone(), x]).unwrap();
        assert_eq!((p.len(), p.dim()), (216, 9));
        assert_eq!(p.block_bounds(), &[0, 3, 6, 9]);
        assert!(p.points().windows(2).all(|w| w[0] < w[1]));
        assert!(product(vec![msc18().image()]).is_err());
    }

    fn section_four_product() -> ProductSpace {
        let x1 = DigitalImage::new([pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1])], 1).unwrap();
        let x2 = DigitalImage::new([pt(&[0, 0]), pt(&[1, 1])], 2).unwrap();
        product(vec![x1, x2]).unwrap()
    }

    #[test]
    fn condition_sets_around_origin() {
        let prod = section_four_product();
        let p = pt(&[0, 0, 0, 0]);
        let t1 = relation_neighborhood(&condition_pairs(&prod, 1).unwrap(), &p).unwrap();
        assert_eq!(t1.punctured, vec![pt(&[0, 0, 1, 1]), pt(&[1, 0, 0, 0])]);
        let t2 = relation_neighborhood(&condition_pairs(&prod, 2).unwrap(), &p).unwrap();
        assert_eq!(
            t2.punctured,
            vec![pt(&[0, 0, 1, 1]), pt(&[1, 0, 0, 0]), pt(&[1, 0, 1, 1])]
        );
        assert!(!t2.punctured.contains(&pt(&[1, 1, 0, 0])));
        assert!(condition_pairs(&prod, 3).is_err());
        assert!(condition_pairs(&prod, 0).is_err());
    }

    #[test]
    fn condition_pairs_match_pairwise_condition() {
        let x = curves::sc8_2_4().image();
        let prod = product(vec![x.clone(), curves::sc4_2_4().image(), x]).unwrap();
        for u in 1..=3 {
            let rel = condition_pairs(&prod, u).unwrap();
            for i in 0..prod.len() {
                for j in 0..prod.len() {
                    let expect =
                        i != j && defining_condition(&prod, ProductKind::Ap(u), &prod.tuples[i], &prod.tuples[j]);
                    assert_eq!(rel.related(&prod.points[i], &prod.points[j]), expect);
                }
            }
        }
    }

    #[test]
    fn msc18_square_has_neither_structure() {
        let prod = square(&msc18());
        for kind in [ProductKind::Normal, ProductKind::CCompatible] {
            let r = adjacency_existence(&prod, kind).unwrap();
            assert!(r.admissible_t.is_empty());
            assert_eq!(r.star_k, None);
            assert_eq!(r.witnesses.len(), 6);
        }
    }

    #[test]
    fn diamond_square_c_compatible() {
        let r = adjacency_existence(&square(&curves::sc8_2_4()), ProductKind::CCompatible).unwrap();
        assert_eq!(r.admissible_k, vec![32, 64]);
        assert_eq!(r.star_k, Some(32));
    }

    #[test]
    fn arity_errors() {
        let x = curves::sc8_2_4().image();
        let p3 = product(vec![x.clone(), x.clone(), x]).unwrap();
        assert!(matches!(
            adjacency_existence(&p3, ProductKind::Normal),
            Err(Error::Arity { .. })
        ));
        assert!(matches!(
            adjacency_existence(&p3, ProductKind::Ap(4)),
            Err(Error::URange { u: 4, v: 3 })
        ));
    }

    #[test]
    fn witnesses_name_the_failing_direction() {
        let r = adjacency_existence(&square(&curves::sc8_2_4()), ProductKind::CCompatible).unwrap();
        // t = 1 is too small: a diagonal factor step is not 1-adjacent.
        assert_eq!(r.witnesses[&1].failure, IffFailure::ConditionOnly);
        // t = 4 is too large: two simultaneous diagonal steps become adjacent.
        assert_eq!(r.witnesses[&4].failure, IffFailure::LatticeOnly);
    }

    #[test]
    fn g_star_and_c_star() {
        let (rel, k) = g_star(&curves::sc4_2_8().image(), &curves::sc8_2_6().image()).unwrap();
        assert_eq!(k.k(), 32);
        let lattice = PairRelation::lattice(rel.ground().to_vec(), k.t());
        assert!(rel.pair_count() < lattice.pair_count());
        assert!(rel.pairs().all(|(p, q)| lattice.related(p, q)));

        let (_, k) = g_star(&msc18().image(), &msc18().image()).unwrap();
        assert_eq!(k.k(), 72);

        let c = c_star(&curves::sc8_2_4().image(), &curves::sc26_3_4().image()).unwrap();
        assert_eq!(c.report.admissible_k, vec![130, 210]);
        assert_eq!(c.adjacency.map(|a| a.k()), Some(130));
        assert_eq!(c.diagnostic, CStarDiagnostic::MinIsKStar);

        let c = c_star(&msc18().image(), &msc18().image()).unwrap();
        assert_eq!(c.adjacency, None);
        assert_eq!(c.diagnostic, CStarDiagnostic::NoCCompatible);
    }

    #[test]
    fn c_star_min_below_k_star_is_reported() {
        // An 8-image whose only adjacent pair is an axis step.
        let x = DigitalImage::new([pt(&[0, 0]), pt(&[1, 0])], 2).unwrap();
        let c = c_star(&x, &x).unwrap();
        assert_eq!(c.report.admissible_t, vec![1]);
        assert_eq!(c.adjacency, None);
        assert_eq!(
            c.diagnostic,
            CStarDiagnostic::MinDiffers {
                min_t: 1,
                k_star_t: 2
            }
        );
    }

    #[test]
    fn reordering_keeps_pairs() {
        let prod = section_four_product();
        let rel = condition_pairs(&prod, 2).unwrap();
        let re = rel.reordered_by_key(|p| std::cmp::Reverse(p.clone()));
        assert!(rel.same_pairs(&re));
        assert_eq!(re.ground().first(), prod.points().last());
    }

    #[test]
    fn report_json_shape() {
        let r = adjacency_existence(&square(&curves::sc8_2_4()), ProductKind::Ap(1)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["kind"], "ap");
        assert_eq!(v["u"], 1);
        assert_eq!(v["admissible_t"], serde_json::json!([2, 3]));
        assert_eq!(v["admissible_k"], serde_json::json!([32, 64]));
        assert_eq!(v["star_k"], 32);
        assert!(v["witnesses"]["1"]["p"].is_array());
    }
}
