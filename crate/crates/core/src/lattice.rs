//! Integer-lattice arithmetic: points of `Z^n`, the `k(t, n)` adjacency
//! family and lattice neighborhoods.
//!
//! Two distinct points of `Z^n` are `k(t, n)`-adjacent when every coordinate
//! differs by at most one and at most `t` coordinates differ at all. The
//! number of such neighbors of a point is
//!
//! ```text
//! k(t, n) = sum_{i = 1..t} 2^i * C(n, i)
//! ```
//!
//! so `k(1, 2) = 4`, `k(2, 2) = 8`, `k(2, 3) = 18`, `k(3, 3) = 26` and so on.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `Z^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(Point(coords))
    }

    /// The origin of `Z^n`.
    pub fn origin(n: usize) -> Result<Self> {
        Point::new(vec![0; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    /// Concatenates coordinate blocks in order, e.g. `(x, y) -> (x_1.., y_1..)`.
    pub fn concat<'a, I>(parts: I) -> Point
    where
        I: IntoIterator<Item = &'a Point>,
    {
        let coords: Vec<i64> = parts.into_iter().flat_map(|p| p.0.iter().copied()).collect();
        assert!(!coords.is_empty(), "concatenation of no blocks");
        Point(coords)
    }

    /// The coordinate block `[start, end)` as a point of lower dimension.
    pub fn block(&self, start: usize, end: usize) -> Point {
        assert!(start < end && end <= self.dim());
        Point(self.0[start..end].to_vec())
    }

    fn check_dim(&self, other: &Point) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Point) -> Result<Point> {
        self.check_dim(other)?;
        Ok(Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn neg(&self) -> Point {
        Point(self.0.iter().map(|a| -a).collect())
    }

    /// L1 norm, used for centered window orderings.
    pub fn l1_norm(&self) -> i64 {
        self.0.iter().map(|a| a.abs()).sum()
    }
}

impl TryFrom<Vec<i64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<i64>) -> Result<Self> {
        Point::new(coords)
    }
}

impl From<Point> for Vec<i64> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Shorthand for building points in tests and examples. Panics on an empty slice.
pub fn pt(coords: &[i64]) -> Point {
    Point::new(coords.to_vec()).expect("point needs at least one coordinate")
}

/// One member `k(t, n)` of the lattice adjacency family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAdjacency", into = "RawAdjacency")]
pub struct LatticeAdjacency {
    t: usize,
    n: usize,
    k: u64,
}

#[derive(Serialize, Deserialize)]
struct RawAdjacency {
    t: usize,
    n: usize,
    k: Option<u64>,
}

impl TryFrom<RawAdjacency> for LatticeAdjacency {
    type Error = Error;

    fn try_from(raw: RawAdjacency) -> Result<Self> {
        let adj = LatticeAdjacency::new(raw.t, raw.n)?;
        match raw.k {
            Some(k) if k != adj.k => Err(Error::Fixture(format!(
                "k({}, {}) is {}, not {k}",
                raw.t, raw.n, adj.k
            ))),
            _ => Ok(adj),
        }
    }
}

impl From<LatticeAdjacency> for RawAdjacency {
    fn from(a: LatticeAdjacency) -> Self {
        RawAdjacency {
            t: a.t,
            n: a.n,
            k: Some(a.k),
        }
    }
}

impl LatticeAdjacency {
    pub fn new(t: usize, n: usize) -> Result<Self> {
        let k = k_value(t, n)?;
        Ok(LatticeAdjacency { t, n, k })
    }

    /// The city-block adjacency `k(1, n) = 2n`.
    pub fn city_block(n: usize) -> Result<Self> {
        LatticeAdjacency::new(1, n)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Adjacency test for two points of this adjacency's ambient lattice.
    pub fn adjacent(&self, p: &Point, q: &Point) -> Result<bool> {
        if p.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.dim(),
            });
        }
        lattice_adjacent(p, q, self.t)
    }
}

impl fmt::Display for LatticeAdjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k({},{})={}", self.t, self.n, self.k)
    }
}

/// Binomial coefficient by Pascal's rule, row `n` only.
pub(crate) fn binomial_row(n: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(1);
        for w in row.windows(2) {
            next.push(w[0] + w[1]);
        }
        next.push(1);
        row = next;
    }
    row
}

/// Number of `k(t, n)` neighbors of a lattice point.
pub fn k_value(t: usize, n: usize) -> Result<u64> {
    if n < 1 || t < 1 || t > n {
        return Err(Error::AdjacencyDomain { t, n });
    }
    let row = binomial_row(n);
    Ok((1..=t).map(|i| (1u64 << i) * row[i]).sum())
}

/// Number of coordinates in which `p` and `q` differ, provided every
/// difference is in `{-1, 0, 1}`; `None` otherwise.
///
/// Two points are `k(t, n)`-adjacent exactly when this is `Some(c)` with
/// `1 <= c <= t`.
pub fn step_count(p: &Point, q: &Point) -> Option<usize> {
    debug_assert_eq!(p.dim(), q.dim());
    step_count_coords(p.coords(), q.coords())
}

#[inline]
pub(crate) fn step_count_coords(p: &[i64], q: &[i64]) -> Option<usize> {
    let mut count = 0;
    for (a, b) in p.iter().zip(q) {
        match a - b {
            0 => {}
            1 | -1 => count += 1,
            _ => return None,
        }
    }
    Some(count)
}

pub fn lattice_adjacent(p: &Point, q: &Point, t: usize) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    if t < 1 || t > p.dim() {
        return Err(Error::AdjacencyDomain { t, n: p.dim() });
    }
    Ok(matches!(step_count(p, q), Some(c) if c >= 1 && c <= t))
}

/// Where neighborhoods are taken.
#[derive(Clone, Copy, Debug)]
pub enum Ground<'a> {
    /// All of `Z^n`.
    FullLattice,
    /// A finite point set.
    Finite(&'a [Point]),
}

/// A neighborhood `N` together with its punctured part `N* = N \ {p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighborhood {
    pub center: Point,
    /// Sorted lexicographically.
    pub punctured: Vec<Point>,
}

impl Neighborhood {
    /// `N = N* ∪ {p}`, sorted.
    pub fn closed(&self) -> Vec<Point> {
        let mut all = self.punctured.clone();
        all.push(self.center.clone());
        all.sort();
        all
    }
}

/// The `3^n - 1` nonzero offset vectors with entries in `{-1, 0, 1}`, in
/// lexicographic order.
pub fn unit_offsets(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![-1i64; n];
    loop {
        if cur.iter().any(|&c| c != 0) {
            out.push(cur.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < 1 {
                cur[i] += 1;
                break;
            }
            cur[i] = -1;
        }
    }
}

pub fn lattice_neighborhood(p: &Point, t: usize, ground: Ground<'_>) -> Result<Neighborhood> {
    let n = p.dim();
    if t < 1 || t > n {
        return Err(Error::AdjacencyDomain { t, n });
    }
    let mut punctured = match ground {
        Ground::FullLattice => unit_offsets(n)
            .into_iter()
            .filter(|o| o.iter().filter(|&&c| c != 0).count() <= t)
            .map(|o| Point(p.coords().iter().zip(&o).map(|(a, b)| a + b).collect()))
            .collect::<Vec<_>>(),
        Ground::Finite(points) => {
            let mut out = Vec::new();
            for q in points {
                if lattice_adjacent(p, q, t)? {
                    out.push(q.clone());
                }
            }
            out
        }
    };
    punctured.sort();
    punctured.dedup();
    Ok(Neighborhood {
        center: p.clone(),
        punctured,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        assert_eq!(k_value(2, 4).unwrap(), 32);
        assert_eq!(k_value(6, 6).unwrap(), 728);
        assert_eq!(k_value(3, 5).unwrap(), 130);
        for n in 1..=9 {
            assert_eq!(k_value(1, n).unwrap(), 2 * n as u64);
        }
        // k(n, n) counts every nonzero unit offset.
        for n in 1..=9 {
            assert_eq!(k_value(n, n).unwrap(), 3u64.pow(n as u32) - 1);
        }
    }

    #[test]
    fn k_value_domain_errors() {
        assert!(k_value(0, 3).is_err());
        assert!(k_value(4, 3).is_err());
        assert!(k_value(1, 0).is_err());
    }

    #[test]
    fn adjacency_examples() {
        assert!(lattice_adjacent(&pt(&[0, 0, 0]), &pt(&[1, -1, 0]), 2).unwrap());
        let p = pt(&[3, 4]);
        assert!(!lattice_adjacent(&p, &p, 2).unwrap());
        assert!(!lattice_adjacent(&pt(&[0, 0]), &pt(&[1, 1]), 1).unwrap());
        assert!(lattice_adjacent(&pt(&[0]), &pt(&[0, 1]), 1).is_err());
    }

    #[test]
    fn neighborhood_in_finite_ground() {
        let ground = [pt(&[0, 0]), pt(&[1, 1])];
        let nb = lattice_neighborhood(&pt(&[0, 0]), 1, Ground::Finite(&ground)).unwrap();
        assert!(nb.punctured.is_empty());
        assert_eq!(nb.closed(), vec![pt(&[0, 0])]);
    }

    #[test]
    fn full_lattice_neighborhood_counts() {
        for n in 1..=5 {
            for t in 1..=n {
                let nb = lattice_neighborhood(&Point::origin(n).unwrap(), t, Ground::FullLattice)
                    .unwrap();
                assert_eq!(nb.punctured.len() as u64, k_value(t, n).unwrap());
            }
        }
    }

    #[test]
    fn adjacency_serde_checks_k() {
        let a: LatticeAdjacency = serde_json::from_str(r#"{"t":2,"n":3}"#).unwrap();
        assert_eq!(a.k(), 18);
        assert!(serde_json::from_str::<LatticeAdjacency>(r#"{"t":2,"n":3,"k":26}"#).is_err());
    }
}
