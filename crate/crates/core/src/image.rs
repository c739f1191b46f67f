//! Finite digital images `(X, k)`, paths, connectivity and simple closed curves.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{CurveDefect, Error, Result};
use crate::lattice::{step_count_coords, LatticeAdjacency, Point};

/// A finite point set of `Z^n` with one `k(t, n)` adjacency.
///
/// Points are deduplicated and kept in lexicographic order, which is the
/// canonical order used for every witness search over the image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitalImage {
    points: Vec<Point>,
    adj: LatticeAdjacency,
}

impl DigitalImage {
    pub fn new(points: impl IntoIterator<Item = Point>, t: usize) -> Result<Self> {
        let mut points: Vec<Point> = points.into_iter().collect();
        let first = points.first().ok_or(Error::EmptyImage)?;
        let n = first.dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.dim(),
            });
        }
        let adj = LatticeAdjacency::new(t, n)?;
        points.sort();
        points.dedup();
        Ok(DigitalImage { points, adj })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn adjacency(&self) -> LatticeAdjacency {
        self.adj
    }

    pub fn dim(&self) -> usize {
        self.adj.n()
    }

    pub fn t(&self) -> usize {
        self.adj.t()
    }

    pub fn k(&self) -> u64 {
        self.adj.k()
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

    pub fn contains(&self, p: &Point) -> bool {
        self.index_of(p).is_some()
    }

    /// Whether points `i` and `j` (indices into [`points`](Self::points)) are adjacent.
    pub fn adjacent_indices(&self, i: usize, j: usize) -> bool {
        matches!(
            step_count_coords(self.points[i].coords(), self.points[j].coords()),
            Some(c) if c >= 1 && c <= self.adj.t()
        )
    }

    /// Adjacency lists by point index.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let m = self.points.len();
        let mut lists = vec![Vec::new(); m];
        for i in 0..m {
            for j in (i + 1)..m {
                if self.adjacent_indices(i, j) {
                    lists[i].push(j);
                    lists[j].push(i);
                }
            }
        }
        for l in &mut lists {
            l.sort_unstable();
        }
        lists
    }

    /// The same point set under a different `t`.
    pub fn with_t(&self, t: usize) -> Result<Self> {
        Ok(DigitalImage {
            points: self.points.clone(),
            adj: LatticeAdjacency::new(t, self.dim())?,
        })
    }
}

/// A simple closed `k`-curve: an ordered cycle of `l >= 4` distinct points in
/// which two points are adjacent exactly when their indices are consecutive
/// modulo `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleClosedCurve {
    seq: Vec<Point>,
    adj: LatticeAdjacency,
}

impl SimpleClosedCurve {
    /// Points in circular order.
    pub fn sequence(&self) -> &[Point] {
        &self.seq
    }

    pub fn adjacency(&self) -> LatticeAdjacency {
        self.adj
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// The underlying image; its points are re-sorted canonically.
    pub fn image(&self) -> DigitalImage {
        DigitalImage::new(self.seq.iter().cloned(), self.adj.t())
            .expect("validated curve is a valid image")
    }
}

/// Checks that `seq` is a simple closed curve under `k(t, n)`.
///
/// The rejection carries the first violating pair `(i, j)`, `i < j`, in
/// lexicographic order of index pairs.
pub fn validate_curve(seq: Vec<Point>, t: usize) -> Result<SimpleClosedCurve> {
    let l = seq.len();
    if l < 4 {
        return Err(Error::CurveTooShort(l));
    }
    let n = seq[0].dim();
    if let Some(bad) = seq.iter().find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    let adj = LatticeAdjacency::new(t, n)?;
    for i in 0..l {
        for j in (i + 1)..l {
            if seq[i] == seq[j] {
                return Err(Error::DuplicateCurvePoint { i, j });
            }
        }
    }
    for i in 0..l {
        for j in (i + 1)..l {
            let consecutive = j == i + 1 || (i == 0 && j == l - 1);
            let adjacent = matches!(
                step_count_coords(seq[i].coords(), seq[j].coords()),
                Some(c) if c >= 1 && c <= t
            );
            if consecutive != adjacent {
                let defect = if consecutive {
                    CurveDefect::Gap
                } else {
                    CurveDefect::Chord
                };
                return Err(Error::NotSimpleClosedCurve { i, j, defect });
            }
        }
    }
    Ok(SimpleClosedCurve { seq, adj })
}

fn bfs_parents(image: &DigitalImage, lists: &[Vec<usize>], start: usize) -> Vec<Option<usize>> {
    let mut parent = vec![None; image.len()];
    parent[start] = Some(start);
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        for &j in &lists[i] {
            if parent[j].is_none() {
                parent[j] = Some(i);
                queue.push_back(j);
            }
        }
    }
    parent
}

pub fn is_connected(image: &DigitalImage) -> bool {
    let lists = image.adjacency_lists();
    bfs_parents(image, &lists, 0).iter().all(Option::is_some)
}

/// A shortest `k`-path from `x` to `y` inside the image, or `None` when the
/// two points lie in different components. `k_path(x, x)` is `[x]`.
pub fn k_path(image: &DigitalImage, x: &Point, y: &Point) -> Result<Option<Vec<Point>>> {
    let start = image
        .index_of(x)
        .ok_or_else(|| Error::PointNotInImage(x.clone()))?;
    let end = image
        .index_of(y)
        .ok_or_else(|| Error::PointNotInImage(y.clone()))?;
    let lists = image.adjacency_lists();
    let parent = bfs_parents(image, &lists, start);
    if parent[end].is_none() {
        return Ok(None);
    }
    let mut path = vec![end];
    let mut cur = end;
    while cur != start {
        cur = parent[cur].expect("reached nodes have parents");
        path.push(cur);
    }
    path.reverse();
    Ok(Some(path.into_iter().map(|i| image.points[i].clone()).collect()))
}

/// Whether an arbitrary point set is connected under `k(t, n)`; used for images of maps.
pub(crate) fn points_connected(points: &[Point], t: usize) -> bool {
    if points.len() <= 1 {
        return true;
    }
    let m = points.len();
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..m {
            if !seen[j]
                && matches!(step_count_coords(points[i].coords(), points[j].coords()), Some(c) if c >= 1 && c <= t)
            {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// On-disk image format: `{"dim": n, "t": t, "points": [[..], ..]}`.
///
/// Curves set `"ordered": true` and list their points in circular order; a
/// curve file may also carry `"cyclic": true` to request the cyclic group.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ImageFile {
    pub dim: usize,
    pub t: usize,
    pub points: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub ordered: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub cyclic: bool,
    /// Free-form metadata, e.g. whether coordinates were chosen by hand.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A parsed image file.
#[derive(Clone, Debug)]
pub enum LoadedImage {
    Plain(DigitalImage),
    Curve(SimpleClosedCurve),
}

impl LoadedImage {
    pub fn image(&self) -> DigitalImage {
        match self {
            LoadedImage::Plain(img) => img.clone(),
            LoadedImage::Curve(c) => c.image(),
        }
    }

    pub fn curve(&self) -> Option<&SimpleClosedCurve> {
        match self {
            LoadedImage::Curve(c) => Some(c),
            LoadedImage::Plain(_) => None,
        }
    }
}

impl ImageFile {
    pub fn from_image(image: &DigitalImage) -> Self {
        ImageFile {
            dim: image.dim(),
            t: image.t(),
            points: image.points().iter().map(|p| p.coords().to_vec()).collect(),
            ordered: false,
            cyclic: false,
            note: None,
        }
    }

    pub fn from_curve(curve: &SimpleClosedCurve) -> Self {
        ImageFile {
            dim: curve.adj.n(),
            t: curve.adj.t(),
            points: curve.seq.iter().map(|p| p.coords().to_vec()).collect(),
            ordered: true,
            cyclic: false,
            note: None,
        }
    }

    pub fn load(&self) -> Result<LoadedImage> {
        let points = self
            .points
            .iter()
            .map(|c| Point::new(c.clone()))
            .collect::<Result<Vec<_>>>()?;
        if let Some(bad) = points.iter().find(|p| p.dim() != self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: bad.dim(),
            });
        }
        if self.ordered {
            Ok(LoadedImage::Curve(validate_curve(points, self.t)?))
        } else {
            Ok(LoadedImage::Plain(DigitalImage::new(points, self.t)?))
        }
    }
}

/// The six-point simple closed 18-curve `MSC_18` in `Z^3`.
pub fn msc18() -> SimpleClosedCurve {
    curves::from_coords(
        &[
            &[0, 0, 0],
            &[1, -1, 0],
            &[1, -1, 1],
            &[2, 0, 1],
            &[1, 1, 1],
            &[1, 1, 0],
        ],
        2,
    )
}

/// A library of small simple closed curves, named `sc<k>_<n>_<l>` after the
/// adjacency `k`, dimension `n` and length `l`.
///
/// `sc8_2_4`, `sc18_3_6` and [`msc18`] use published coordinates; the others
/// are hand-constructed instances. Every constructor validates its curve.
pub mod curves {
    use super::{validate_curve, SimpleClosedCurve};
    use crate::lattice::pt;

    pub(crate) fn from_coords(coords: &[&[i64]], t: usize) -> SimpleClosedCurve {
        validate_curve(coords.iter().map(|c| pt(c)).collect(), t)
            .expect("library curve must validate")
    }

    /// Unit square, a 4-cycle in `Z^2`.
    pub fn sc4_2_4() -> SimpleClosedCurve {
        from_coords(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]], 1)
    }

    /// Boundary of a 3x3 square.
    pub fn sc4_2_8() -> SimpleClosedCurve {
        from_coords(
            &[
                &[0, 0],
                &[1, 0],
                &[2, 0],
                &[2, 1],
                &[2, 2],
                &[1, 2],
                &[0, 2],
                &[0, 1],
            ],
            1,
        )
    }

    /// Diamond `s_0 = (0,0), s_1 = (1,-1), s_2 = (2,0), s_3 = (1,1)`.
    pub fn sc8_2_4() -> SimpleClosedCurve {
        from_coords(&[&[0, 0], &[1, -1], &[2, 0], &[1, 1]], 2)
    }

    /// Flat hexagon.
    pub fn sc8_2_6() -> SimpleClosedCurve {
        from_coords(
            &[&[0, 0], &[1, -1], &[2, -1], &[3, 0], &[2, 1], &[1, 1]],
            2,
        )
    }

    /// The six-point 18-curve through `(0,0,0), (1,0,1), (2,1,1), ...`.
    pub fn sc18_3_6() -> SimpleClosedCurve {
        from_coords(
            &[
                &[0, 0, 0],
                &[1, 0, 1],
                &[2, 1, 1],
                &[1, 2, 1],
                &[0, 2, 0],
                &[-1, 1, 0],
            ],
            2,
        )
    }

    /// Four points joined by body diagonals.
    pub fn sc26_3_4() -> SimpleClosedCurve {
        from_coords(&[&[0, 0, 0], &[1, 1, 1], &[2, 0, 0], &[1, -1, -1]], 3)
    }

    /// A six-cycle on the unit cube.
    pub fn sc6_3_6() -> SimpleClosedCurve {
        from_coords(
            &[
                &[0, 0, 0],
                &[1, 0, 0],
                &[1, 1, 0],
                &[1, 1, 1],
                &[0, 1, 1],
                &[0, 0, 1],
            ],
            1,
        )
    }

    /// Every library curve with its name.
    pub fn all() -> Vec<(&'static str, SimpleClosedCurve)> {
        vec![
            ("sc4_2_4", sc4_2_4()),
            ("sc4_2_8", sc4_2_8()),
            ("sc8_2_4", sc8_2_4()),
            ("sc8_2_6", sc8_2_6()),
            ("sc18_3_6", sc18_3_6()),
            ("msc18", super::msc18()),
            ("sc26_3_4", sc26_3_4()),
            ("sc6_3_6", sc6_3_6()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::pt;

    #[test]
    fn msc18_is_the_published_curve() {
        let c = msc18();
        let expected = [
            pt(&[0, 0, 0]),
            pt(&[1, -1, 0]),
            pt(&[1, -1, 1]),
            pt(&[2, 0, 1]),
            pt(&[1, 1, 1]),
            pt(&[1, 1, 0]),
        ];
        assert_eq!(c.sequence(), &expected);
        assert_eq!(c.adjacency().k(), 18);
        assert_eq!(c.len(), 6);
    }

    #[test]
    fn library_curves_have_advertised_parameters() {
        let expect = [
            ("sc4_2_4", 4, 2, 4),
            ("sc4_2_8", 4, 2, 8),
            ("sc8_2_4", 8, 2, 4),
            ("sc8_2_6", 8, 2, 6),
            ("sc18_3_6", 18, 3, 6),
            ("msc18", 18, 3, 6),
            ("sc26_3_4", 26, 3, 4),
            ("sc6_3_6", 6, 3, 6),
        ];
        for ((name, c), (ename, k, n, l)) in curves::all().into_iter().zip(expect) {
            assert_eq!(name, ename);
            assert_eq!((c.adjacency().k(), c.adjacency().n(), c.len()), (k, n, l), "{name}");
        }
    }

    #[test]
    fn curve_rejections() {
        let short = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[1, 1])];
        assert!(matches!(validate_curve(short, 1), Err(Error::CurveTooShort(3))));

        // The unit square with 8-adjacency has both diagonals as chords.
        let square = curves::sc4_2_4().sequence().to_vec();
        match validate_curve(square, 2) {
            Err(Error::NotSimpleClosedCurve { i, j, defect }) => {
                assert_eq!((i, j, defect), (0, 2, CurveDefect::Chord));
            }
            other => panic!("unexpected {other:?}"),
        }

        // Swapping two points of the square breaks consecutiveness.
        let bad = vec![pt(&[0, 0]), pt(&[1, 1]), pt(&[1, 0]), pt(&[0, 1])];
        match validate_curve(bad, 1) {
            Err(Error::NotSimpleClosedCurve { i, j, defect }) => {
                assert_eq!((i, j, defect), (0, 1, CurveDefect::Gap));
            }
            other => panic!("unexpected {other:?}"),
        }

        let dup = vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 0]), pt(&[0, 1])];
        assert!(matches!(
            validate_curve(dup, 1),
            Err(Error::DuplicateCurvePoint { i: 0, j: 2 })
        ));
    }

    #[test]
    fn connectivity_and_paths() {
        let cycle = msc18().image();
        assert!(is_connected(&cycle));

        let apart = DigitalImage::new([pt(&[0, 0]), pt(&[2, 2])], 1).unwrap();
        assert!(!is_connected(&apart));
        assert_eq!(k_path(&apart, &pt(&[0, 0]), &pt(&[2, 2])).unwrap(), None);

        let single = DigitalImage::new([pt(&[5])], 1).unwrap();
        assert!(is_connected(&single));
        assert_eq!(
            k_path(&single, &pt(&[5]), &pt(&[5])).unwrap(),
            Some(vec![pt(&[5])])
        );

        let seq = msc18().sequence().to_vec();
        let path = k_path(&cycle, &seq[0], &seq[3]).unwrap().unwrap();
        assert_eq!(path.len(), 4);
        assert!(k_path(&cycle, &seq[0], &pt(&[9, 9, 9])).is_err());
    }

    #[test]
    fn image_rejects_mixed_dimensions() {
        assert!(DigitalImage::new([pt(&[0]), pt(&[0, 0])], 1).is_err());
        assert!(matches!(
            DigitalImage::new(Vec::<Point>::new(), 1),
            Err(Error::EmptyImage)
        ));
    }

    #[test]
    fn image_file_round_trip() {
        let f = ImageFile::from_curve(&msc18());
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"ordered\":true"));
        let back: ImageFile = serde_json::from_str(&json).unwrap();
        let loaded = back.load().unwrap();
        assert_eq!(loaded.curve().unwrap(), &msc18());
    }
}
