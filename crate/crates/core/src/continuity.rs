//! Digital continuity of explicit finite maps.
//!
//! A map `f: (X, k_0) -> (Y, k_1)` is continuous when every `k_0`-adjacent
//! pair `x, x'` has `f(x) = f(x')` or `f(x)` `k_1`-adjacent to `f(x')`. The
//! same test with a product relation in place of `k_0` gives the
//! relation-based continuities used for group multiplications.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{points_connected, ImageFile, LoadedImage};
use crate::lattice::{lattice_neighborhood, step_count_coords, Ground, LatticeAdjacency, Point};
use crate::product::PairRelation;

/// Default cap on subset size for [`connected_image_check`].
pub const DEFAULT_MAX_SUBSET: usize = 8;

/// Default cap on the number of subsets [`connected_image_check`] may visit.
pub const SUBSET_BUDGET: u128 = 1 << 22;

/// A total map on a finite domain, stored as a table.
#[derive(Clone, Debug)]
pub struct DigitalMap {
    domain: Vec<Point>,
    images: Vec<Point>,
    index: HashMap<Point, usize>,
    codomain_adj: LatticeAdjacency,
}

impl DigitalMap {
    /// Builds a map from `(x, f(x))` pairs; the domain keeps the given order.
    pub fn new(pairs: Vec<(Point, Point)>, codomain_adj: LatticeAdjacency) -> Result<Self> {
        let mut domain = Vec::with_capacity(pairs.len());
        let mut images = Vec::with_capacity(pairs.len());
        let mut index = HashMap::with_capacity(pairs.len());
        for (x, y) in pairs {
            if y.dim() != codomain_adj.n() {
                return Err(Error::DimensionMismatch {
                    expected: codomain_adj.n(),
                    found: y.dim(),
                });
            }
            if let Some(&i) = index.get(&x) {
                if images[i] != y {
                    return Err(Error::MapConflict(x));
                }
                continue;
            }
            index.insert(x.clone(), domain.len());
            domain.push(x);
            images.push(y);
        }
        Ok(DigitalMap {
            domain,
            images,
            index,
            codomain_adj,
        })
    }

    pub fn from_fn(
        domain: &[Point],
        codomain_adj: LatticeAdjacency,
        f: impl Fn(&Point) -> Point,
    ) -> Result<Self> {
        DigitalMap::new(domain.iter().map(|x| (x.clone(), f(x))).collect(), codomain_adj)
    }

    pub fn domain(&self) -> &[Point] {
        &self.domain
    }

    pub fn codomain_adjacency(&self) -> LatticeAdjacency {
        self.codomain_adj
    }

    pub fn apply(&self, x: &Point) -> Option<&Point> {
        self.index.get(x).map(|&i| &self.images[i])
    }

    /// `(x, f(x))` in domain order.
    pub fn table(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.domain.iter().zip(&self.images)
    }

    /// `g ∘ self`, defined where `self`'s values lie in `g`'s domain.
    pub fn then(&self, g: &DigitalMap) -> Result<DigitalMap> {
        let pairs = self
            .table()
            .map(|(x, y)| {
                g.apply(y)
                    .map(|z| (x.clone(), z.clone()))
                    .ok_or_else(|| Error::MapUndefined(y.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        DigitalMap::new(pairs, g.codomain_adj)
    }

    fn codomain_close(&self, a: &Point, b: &Point) -> bool {
        a == b
            || matches!(step_count_coords(a.coords(), b.coords()), Some(c) if c >= 1 && c <= self.codomain_adj.t())
    }
}

/// A violating pair `x, x'` with their images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapWitness {
    pub p: Point,
    pub q: Point,
    pub fp: Point,
    pub fq: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuityReport {
    pub continuous: bool,
    pub witness: Option<MapWitness>,
}

impl ContinuityReport {
    fn pass() -> Self {
        ContinuityReport {
            continuous: true,
            witness: None,
        }
    }

    fn fail(p: &Point, q: &Point, fp: &Point, fq: &Point) -> Self {
        ContinuityReport {
            continuous: false,
            witness: Some(MapWitness {
                p: p.clone(),
                q: q.clone(),
                fp: fp.clone(),
                fq: fq.clone(),
            }),
        }
    }
}

fn check_domain_dim(f: &DigitalMap, domain_adj: LatticeAdjacency) -> Result<()> {
    if let Some(bad) = f.domain.iter().find(|x| x.dim() != domain_adj.n()) {
        return Err(Error::DimensionMismatch {
            expected: domain_adj.n(),
            found: bad.dim(),
        });
    }
    Ok(())
}

/// `(k_0, k_1)`-continuity in pair form. The witness is the first failing
/// pair `(x_i, x_j)`, `i < j`, in domain order.
pub fn is_continuous_lattice(f: &DigitalMap, domain_adj: LatticeAdjacency) -> Result<ContinuityReport> {
    check_domain_dim(f, domain_adj)?;
    let m = f.domain.len();
    for i in 0..m {
        for j in (i + 1)..m {
            let adjacent = matches!(
                step_count_coords(f.domain[i].coords(), f.domain[j].coords()),
                Some(c) if c >= 1 && c <= domain_adj.t()
            );
            if adjacent && !f.codomain_close(&f.images[i], &f.images[j]) {
                return Ok(ContinuityReport::fail(
                    &f.domain[i],
                    &f.domain[j],
                    &f.images[i],
                    &f.images[j],
                ));
            }
        }
    }
    Ok(ContinuityReport::pass())
}

/// `(k_0, k_1)`-continuity in neighborhood form: `f(N(x)) ⊆ N(f(x))` for every `x`.
///
/// The codomain neighborhood is taken in the full lattice.
pub fn is_continuous_lattice_neighborhood(
    f: &DigitalMap,
    domain_adj: LatticeAdjacency,
) -> Result<ContinuityReport> {
    check_domain_dim(f, domain_adj)?;
    for (x, fx) in f.table() {
        let source = lattice_neighborhood(x, domain_adj.t(), Ground::Finite(&f.domain))?;
        let target = lattice_neighborhood(fx, f.codomain_adj.t(), Ground::FullLattice)?.closed();
        for y in &source.punctured {
            let fy = f.apply(y).expect("neighbor lies in the domain");
            if target.binary_search(fy).is_err() {
                return Ok(ContinuityReport::fail(x, y, fx, fy));
            }
        }
    }
    Ok(ContinuityReport::pass())
}

/// Continuity from a relation set `(domain, rel)` to `(Y, k)`.
///
/// Covers `(G_{k*}, k)`, `(C_{k*}, k)`, `(AP_u, k)` and `(AP_u*, k)` continuity
/// by choice of relation. Witnesses follow the relation's ground order.
pub fn is_continuous_relation(f: &DigitalMap, rel: &PairRelation) -> Result<ContinuityReport> {
    if rel.ground().len() != f.domain.len()
        || rel.ground().iter().any(|p| f.apply(p).is_none())
    {
        return Err(Error::GroundMismatch);
    }
    for (p, q) in rel.pairs() {
        let fp = f.apply(p).expect("ground checked");
        let fq = f.apply(q).expect("ground checked");
        if !f.codomain_close(fp, fq) {
            return Ok(ContinuityReport::fail(p, q, fp, fq));
        }
    }
    Ok(ContinuityReport::pass())
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Checks that every connected domain subset of at most `max_subset_size`
/// points has a connected image.
///
/// With the full subset size this is equivalent to continuity; it is
/// exponential and meant for small domains.
pub fn connected_image_check(
    f: &DigitalMap,
    domain_adj: LatticeAdjacency,
    max_subset_size: usize,
) -> Result<bool> {
    check_domain_dim(f, domain_adj)?;
    let m = f.domain.len();
    let s = max_subset_size.min(m);
    let needed: u128 = (1..=s).map(|k| binomial(m, k)).sum();
    if needed > SUBSET_BUDGET {
        return Err(Error::SubsetBudget {
            needed,
            budget: SUBSET_BUDGET,
        });
    }
    let mut chosen = Vec::with_capacity(s);
    Ok(subsets_ok(f, domain_adj.t(), 0, s, &mut chosen))
}

fn subsets_ok(f: &DigitalMap, t: usize, start: usize, room: usize, chosen: &mut Vec<usize>) -> bool {
    if !chosen.is_empty() {
        let subset: Vec<Point> = chosen.iter().map(|&i| f.domain[i].clone()).collect();
        if points_connected(&subset, t) {
            let mut image: Vec<Point> = chosen.iter().map(|&i| f.images[i].clone()).collect();
            image.sort();
            image.dedup();
            if !points_connected(&image, f.codomain_adj.t()) {
                return false;
            }
        }
    }
    if room == 0 {
        return true;
    }
    for i in start..f.domain.len() {
        chosen.push(i);
        let ok = subsets_ok(f, t, i + 1, room - 1, chosen);
        chosen.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Reference to an image inside a map file: a path or an inline image.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImageRef {
    Path(String),
    Inline(ImageFile),
}

impl ImageRef {
    pub fn resolve(&self, base: &Path) -> Result<LoadedImage> {
        match self {
            ImageRef::Inline(f) => f.load(),
            ImageRef::Path(p) => {
                let text = std::fs::read_to_string(base.join(p))?;
                serde_json::from_str::<ImageFile>(&text)?.load()
            }
        }
    }
}

/// On-disk map format:
/// `{"domain_image": ..., "codomain_image": ..., "pairs": [[p, f(p)], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapFile {
    pub domain_image: ImageRef,
    pub codomain_image: ImageRef,
    pub pairs: Vec<(Vec<i64>, Vec<i64>)>,
}

/// A map file resolved against its images.
#[derive(Clone, Debug)]
pub struct LoadedMap {
    pub domain: LoadedImage,
    pub codomain: LoadedImage,
    pub map: DigitalMap,
}

impl MapFile {
    /// Resolves image paths relative to `base` and checks the table is a
    /// total map from the domain image into the codomain image.
    pub fn load(&self, base: &Path) -> Result<LoadedMap> {
        let domain = self.domain_image.resolve(base)?;
        let codomain = self.codomain_image.resolve(base)?;
        let dom_img = domain.image();
        let cod_img = codomain.image();
        let pairs = self
            .pairs
            .iter()
            .map(|(x, y)| Ok((Point::new(x.clone())?, Point::new(y.clone())?)))
            .collect::<Result<Vec<_>>>()?;
        for (x, y) in &pairs {
            if !dom_img.contains(x) {
                return Err(Error::PointNotInImage(x.clone()));
            }
            if !cod_img.contains(y) {
                return Err(Error::PointNotInImage(y.clone()));
            }
        }
        let map = DigitalMap::new(pairs, cod_img.adjacency())?;
        if let Some(missing) = dom_img.points().iter().find(|x| map.apply(x).is_none()) {
            return Err(Error::MapUndefined(missing.clone()));
        }
        Ok(LoadedMap {
            domain,
            codomain,
            map,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::msc18;
    use crate::lattice::pt;

    fn doubling_on_msc18() -> DigitalMap {
        let seq = msc18().sequence().to_vec();
        let pairs = (0..6).map(|i| (seq[i].clone(), seq[(2 * i) % 6].clone())).collect();
        DigitalMap::new(pairs, msc18().adjacency()).unwrap()
    }

    #[test]
    fn identity_and_constant_maps_are_continuous() {
        let img = msc18().image();
        let id = DigitalMap::from_fn(img.points(), img.adjacency(), Clone::clone).unwrap();
        assert!(is_continuous_lattice(&id, img.adjacency()).unwrap().continuous);
        let c = DigitalMap::from_fn(img.points(), img.adjacency(), |_| pt(&[0, 0, 0])).unwrap();
        assert!(is_continuous_lattice(&c, img.adjacency()).unwrap().continuous);
    }

    #[test]
    fn doubling_map_fails_on_first_edge() {
        let f = doubling_on_msc18();
        let seq = msc18().sequence().to_vec();
        let r = is_continuous_lattice(&f, msc18().adjacency()).unwrap();
        assert!(!r.continuous);
        assert_eq!(
            r.witness.unwrap(),
            MapWitness {
                p: seq[0].clone(),
                q: seq[1].clone(),
                fp: seq[0].clone(),
                fq: seq[2].clone(),
            }
        );
        let nb = is_continuous_lattice_neighborhood(&f, msc18().adjacency()).unwrap();
        assert!(!nb.continuous);
        assert!(!connected_image_check(&f, msc18().adjacency(), DEFAULT_MAX_SUBSET).unwrap());
    }

    #[test]
    fn empty_relation_is_vacuous() {
        let f = doubling_on_msc18();
        let rel = PairRelation::from_predicate(f.domain().to_vec(), |_, _| false);
        assert!(is_continuous_relation(&f, &rel).unwrap().continuous);
        let wrong = PairRelation::from_predicate(vec![pt(&[0, 0, 0])], |_, _| false);
        assert!(matches!(
            is_continuous_relation(&f, &wrong),
            Err(Error::GroundMismatch)
        ));
    }

    #[test]
    fn singleton_domain() {
        let adj = LatticeAdjacency::new(1, 2).unwrap();
        let f = DigitalMap::new(vec![(pt(&[0, 0]), pt(&[7, 7]))], adj).unwrap();
        assert!(connected_image_check(&f, adj, DEFAULT_MAX_SUBSET).unwrap());
    }

    #[test]
    fn map_errors() {
        let adj = LatticeAdjacency::new(1, 1).unwrap();
        let conflict = vec![(pt(&[0]), pt(&[0])), (pt(&[0]), pt(&[1]))];
        assert!(matches!(DigitalMap::new(conflict, adj), Err(Error::MapConflict(_))));
        let f = DigitalMap::new(vec![(pt(&[0, 0]), pt(&[0]))], adj).unwrap();
        assert!(is_continuous_lattice(&f, adj).is_err());

        let big: Vec<(Point, Point)> = (0..200).map(|i| (pt(&[i]), pt(&[0]))).collect();
        let f = DigitalMap::new(big, adj).unwrap();
        assert!(matches!(
            connected_image_check(&f, adj, 8),
            Err(Error::SubsetBudget { .. })
        ));
    }

    #[test]
    fn map_file_with_inline_images() {
        let json = r#"{
            "domain_image": {"dim": 1, "t": 1, "points": [[0],[1],[2]]},
            "codomain_image": {"dim": 1, "t": 1, "points": [[0],[1]]},
            "pairs": [[[0],[0]], [[1],[1]], [[2],[1]]]
        }"#;
        let mf: MapFile = serde_json::from_str(json).unwrap();
        let loaded = mf.load(Path::new(".")).unwrap();
        let adj = loaded.domain.image().adjacency();
        assert!(is_continuous_lattice(&loaded.map, adj).unwrap().continuous);

        let partial = r#"{
            "domain_image": {"dim": 1, "t": 1, "points": [[0],[1]]},
            "codomain_image": {"dim": 1, "t": 1, "points": [[0]]},
            "pairs": [[[0],[0]]]
        }"#;
        let mf: MapFile = serde_json::from_str(partial).unwrap();
        assert!(matches!(mf.load(Path::new(".")), Err(Error::MapUndefined(_))));
    }
}
