//! Group structures on digital images and their digital-topological checks.
//!
//! A group `(X, *)` on a digital image `(X, k)` is certified by two
//! continuity checks: the multiplication `X × X -> X` against some relation
//! on the square, and the inversion `x -> x^{-1}` as a `k`-continuous self
//! map. The relation on the square decides the flavour:
//!
//! | structure          | relation on `X × X`                              |
//! |--------------------|--------------------------------------------------|
//! | DT-`k`-group       | `G_{k*}` (always exists)                         |
//! | `AP_1`-`k`-group   | some lattice `AP_1(k, k)` adjacency, if any      |
//! | `AP_1*`-`k`-group  | the least `AP_1(k, k)` adjacency, if any         |
//! | `AP_2` probe       | the `AP_2` condition relation (negative results) |

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::continuity::{
    is_continuous_lattice, is_continuous_relation, ContinuityReport, DigitalMap, MapWitness,
};
use crate::error::{Error, Result};
use crate::image::{DigitalImage, LoadedImage, SimpleClosedCurve};
use crate::lattice::{LatticeAdjacency, Point};
use crate::product::{
    adjacency_existence, condition_pairs, g_star, product, PairRelation, ProductKind, ProductSpace,
};

/// A finite group given by its Cayley table over an ordered carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    carrier: Vec<Point>,
    op: Vec<Vec<usize>>,
}

/// The first group axiom a table violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    Closure { a: usize, b: usize },
    Associativity { a: usize, b: usize, c: usize },
    Identity,
    Inverse { a: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Closure { a, b } => write!(f, "{a} * {b} leaves the carrier"),
            AxiomViolation::Associativity { a, b, c } => {
                write!(f, "({a} * {b}) * {c} != {a} * ({b} * {c})")
            }
            AxiomViolation::Identity => write!(f, "no two-sided identity"),
            AxiomViolation::Inverse { a } => write!(f, "{a} has no two-sided inverse"),
        }
    }
}

impl GroupTable {
    pub fn new(carrier: Vec<Point>, op: Vec<Vec<usize>>) -> Result<Self> {
        let m = carrier.len();
        if m == 0 {
            return Err(Error::MalformedTable("empty carrier".into()));
        }
        if op.len() != m || op.iter().any(|row| row.len() != m) {
            return Err(Error::MalformedTable(format!("table must be {m} x {m}")));
        }
        let mut sorted = carrier.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedTable("carrier repeats a point".into()));
        }
        Ok(GroupTable { carrier, op })
    }

    pub fn carrier(&self) -> &[Point] {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.op
    }

    /// Index of the two-sided identity, if any.
    pub fn identity(&self) -> Option<usize> {
        let m = self.order();
        (0..m).find(|&e| (0..m).all(|a| self.op[e][a] == a && self.op[a][e] == a))
    }

    /// Index of the two-sided inverse of `a`, if any.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        let e = self.identity()?;
        (0..self.order()).find(|&b| self.op[a][b] == e && self.op[b][a] == e)
    }

    pub fn is_abelian(&self) -> bool {
        let m = self.order();
        (0..m).all(|a| (0..m).all(|b| self.op[a][b] == self.op[b][a]))
    }

    /// The componentwise group on the product of the carriers, with carrier
    /// points concatenated in odometer order.
    pub fn direct_product(&self, other: &GroupTable) -> GroupTable {
        let m2 = other.order();
        let carrier = self
            .carrier
            .iter()
            .flat_map(|a| other.carrier.iter().map(move |b| Point::concat([a, b])))
            .collect();
        let op = (0..self.order() * m2)
            .map(|x| {
                (0..self.order() * m2)
                    .map(|y| {
                        self.op[x / m2][y / m2] * m2 + other.op[x % m2][y % m2]
                    })
                    .collect()
            })
            .collect();
        GroupTable { carrier, op }
    }
}

/// Checks closure, associativity, identity and inverses, in that order.
pub fn verify_group(g: &GroupTable) -> std::result::Result<(), AxiomViolation> {
    let m = g.order();
    for a in 0..m {
        for b in 0..m {
            if g.op[a][b] >= m {
                return Err(AxiomViolation::Closure { a, b });
            }
        }
    }
    for a in 0..m {
        for b in 0..m {
            let ab = g.op[a][b];
            for c in 0..m {
                if g.op[ab][c] != g.op[a][g.op[b][c]] {
                    return Err(AxiomViolation::Associativity { a, b, c });
                }
            }
        }
    }
    if g.identity().is_none() {
        return Err(AxiomViolation::Identity);
    }
    for a in 0..m {
        if g.inverse(a).is_none() {
            return Err(AxiomViolation::Inverse { a });
        }
    }
    Ok(())
}

/// `x_i * x_j = x_{(i + j) mod l}` on a simple closed curve.
pub fn cyclic_group(curve: &SimpleClosedCurve) -> GroupTable {
    let l = curve.len();
    GroupTable {
        carrier: curve.sequence().to_vec(),
        op: (0..l).map(|i| (0..l).map(|j| (i + j) % l).collect()).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    DtGroup,
    Ap1Group,
    Ap1StarGroup,
    Ap2Probe,
}

/// Why a verdict failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Failure {
    /// The required product adjacency does not exist.
    NoAdjacency { u: usize, adjacency: String },
    Multiplication { witness: MapWitness },
    Inverse { witness: MapWitness },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::NoAdjacency { u, adjacency } => {
                write!(f, "no AP_{u} adjacency: {adjacency} does not exist")
            }
            Failure::Multiplication { witness: w } => write!(
                f,
                "multiplication not continuous: {} ~ {} but {} and {} are neither equal nor adjacent",
                w.p, w.q, w.fp, w.fq
            ),
            Failure::Inverse { witness: w } => write!(
                f,
                "inversion not continuous: {} ~ {} but {} and {} are neither equal nor adjacent",
                w.p, w.q, w.fp, w.fq
            ),
        }
    }
}

/// Multiplication continuity under one admissible `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibleVerdict {
    pub t: usize,
    pub k: u64,
    pub report: ContinuityReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupVerdict {
    pub structure: Structure,
    pub holds: bool,
    /// `None` when no relation on the square could be formed.
    pub multiplication: Option<ContinuityReport>,
    /// `None` when the image carries no adjacency to check inversion against.
    pub inverse: Option<ContinuityReport>,
    pub adjacency_used: String,
    /// One entry per admissible `t` that was checked (AP_1 structures only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub per_t: Vec<AdmissibleVerdict>,
    pub failure: Option<Failure>,
}

impl GroupVerdict {
    fn from_reports(
        structure: Structure,
        multiplication: ContinuityReport,
        inverse: ContinuityReport,
        adjacency_used: String,
        per_t: Vec<AdmissibleVerdict>,
    ) -> Self {
        let failure = if let Some(w) = &multiplication.witness {
            Some(Failure::Multiplication { witness: w.clone() })
        } else {
            inverse
                .witness
                .as_ref()
                .map(|w| Failure::Inverse { witness: w.clone() })
        };
        GroupVerdict {
            structure,
            holds: failure.is_none(),
            multiplication: Some(multiplication),
            inverse: Some(inverse),
            adjacency_used,
            per_t,
            failure,
        }
    }

    /// `adjacency` names the missing `AP_1` adjacency, e.g. `AP_1(18,18)`.
    fn no_adjacency(structure: Structure, adjacency: String, inverse: Option<ContinuityReport>) -> Self {
        GroupVerdict {
            structure,
            holds: false,
            multiplication: None,
            inverse,
            adjacency_used: format!("no {adjacency} adjacency"),
            per_t: Vec::new(),
            failure: Some(Failure::NoAdjacency { u: 1, adjacency }),
        }
    }
}

/// Binds a verified group to the points of an image.
struct BoundGroup<'a> {
    g: &'a GroupTable,
    index: HashMap<&'a Point, usize>,
    identity: usize,
}

impl<'a> BoundGroup<'a> {
    fn new(image: &DigitalImage, g: &'a GroupTable) -> Result<Self> {
        if g.order() != image.len() || g.carrier.iter().any(|p| !image.contains(p)) {
            return Err(Error::CarrierMismatch);
        }
        verify_group(g).map_err(|v| Error::Precondition(format!("not a group: {v}")))?;
        Ok(BoundGroup {
            g,
            index: g.carrier.iter().enumerate().map(|(i, p)| (p, i)).collect(),
            identity: g.identity().expect("verified"),
        })
    }

    fn mul(&self, a: &Point, b: &Point) -> Point {
        let r = self.g.op[self.index[a]][self.index[b]];
        self.g.carrier[r].clone()
    }

    fn inv(&self, a: &Point) -> Point {
        let i = self.index[a];
        let j = (0..self.g.order())
            .find(|&j| self.g.op[i][j] == self.identity)
            .expect("verified");
        self.g.carrier[j].clone()
    }

    /// The multiplication as a map on `prod = X × X`.
    fn multiplication(&self, prod: &ProductSpace, codomain: LatticeAdjacency) -> Result<DigitalMap> {
        DigitalMap::from_fn(prod.points(), codomain, |p| {
            let c = prod.components(p);
            self.mul(&c[0], &c[1])
        })
    }

    fn inverse_report(&self, image: &DigitalImage) -> Result<ContinuityReport> {
        let beta = DigitalMap::from_fn(image.points(), image.adjacency(), |x| self.inv(x))?;
        is_continuous_lattice(&beta, image.adjacency())
    }
}

fn square(image: &DigitalImage) -> Result<ProductSpace> {
    product(vec![image.clone(), image.clone()])
}

/// DT-`k`-group: `(G_{k*}, k)`-continuous multiplication and `k`-continuous inversion.
pub fn check_dt_group(image: &DigitalImage, g: &GroupTable) -> Result<GroupVerdict> {
    let bound = BoundGroup::new(image, g)?;
    let (rel, k_star) = g_star(image, image)?;
    let prod = square(image)?;
    let alpha = bound.multiplication(&prod, image.adjacency())?;
    let mult = is_continuous_relation(&alpha, &rel)?;
    let inverse = bound.inverse_report(image)?;
    Ok(GroupVerdict::from_reports(
        Structure::DtGroup,
        mult,
        inverse,
        format!("G_{{k*}} with k* = {}", k_star.k()),
        Vec::new(),
    ))
}

/// `AP_1`-`k`-group (`star = false`) or `AP_1*`-`k`-group (`star = true`).
///
/// Without `star`, every admissible `t` is checked and the structure holds
/// when the multiplication is continuous for at least one of them.
pub fn check_ap1_group(image: &DigitalImage, g: &GroupTable, star: bool) -> Result<GroupVerdict> {
    let bound = BoundGroup::new(image, g)?;
    let prod = square(image)?;
    let report = adjacency_existence(&prod, ProductKind::Ap(1))?;
    let inverse = bound.inverse_report(image)?;
    let structure = if star {
        Structure::Ap1StarGroup
    } else {
        Structure::Ap1Group
    };
    if !report.exists() {
        return Ok(GroupVerdict::no_adjacency(
            structure,
            format!("AP_1({0},{0})", image.k()),
            Some(inverse),
        ));
    }
    let alpha = bound.multiplication(&prod, image.adjacency())?;
    let ts: Vec<usize> = if star {
        vec![report.star_t.expect("exists")]
    } else {
        report.admissible_t.clone()
    };
    let per_t = ts
        .iter()
        .map(|&t| {
            let rel = PairRelation::lattice(prod.points().to_vec(), t);
            Ok(AdmissibleVerdict {
                t,
                k: LatticeAdjacency::new(t, prod.dim())?.k(),
                report: is_continuous_relation(&alpha, &rel)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let chosen = per_t
        .iter()
        .find(|v| v.report.continuous)
        .unwrap_or(&per_t[0]);
    let used = if star {
        format!("AP_1*({0},{0}) = {1}", image.k(), chosen.k)
    } else {
        format!("AP_1({0},{0}) = {1}", image.k(), chosen.k)
    };
    let mult = chosen.report.clone();
    Ok(GroupVerdict::from_reports(structure, mult, inverse, used, per_t))
}

/// The window `[-r, r]^n` of `Z^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub n: usize,
    pub t: usize,
    pub radius: i64,
}

impl Window {
    pub fn new(n: usize, t: usize, radius: i64) -> Result<Self> {
        if n < 1 || t < 1 || t > n {
            return Err(Error::WindowDomain(format!("need 1 <= t <= n, got t = {t}, n = {n}")));
        }
        if radius < 1 {
            return Err(Error::WindowDomain(format!("radius must be positive, got {radius}")));
        }
        Ok(Window { n, t, radius })
    }

    pub fn image(&self) -> Result<DigitalImage> {
        let side: Vec<i64> = (-self.radius..=self.radius).collect();
        let mut points = vec![Vec::new()];
        for _ in 0..self.n {
            points = points
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    side.iter().map(move |&c| {
                        let mut v = prefix.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        DigitalImage::new(points.into_iter().map(Point::new).collect::<Result<Vec<_>>>()?, self.t)
    }
}

/// Witness order for windows: nearest the origin first (L1 norm), ties
/// broken toward positive coordinates.
pub fn centered_key(p: &Point) -> (i64, std::cmp::Reverse<Point>) {
    (p.l1_norm(), std::cmp::Reverse(p.clone()))
}

fn window_verdict(window: Window, u: usize, structure: Structure) -> Result<GroupVerdict> {
    let w = window.image()?;
    let prod = square(&w)?;
    let rel = condition_pairs(&prod, u)?.reordered_by_key(centered_key);
    let codomain = w.adjacency();
    let alpha = DigitalMap::from_fn(rel.ground(), codomain, |p| {
        let c = prod.components(p);
        c[0].checked_add(&c[1]).expect("same block dimension")
    })?;
    let mult = is_continuous_relation(&alpha, &rel)?;
    let mut domain = w.points().to_vec();
    domain.sort_by_key(centered_key);
    let beta = DigitalMap::from_fn(&domain, codomain, Point::neg)?;
    let inverse = is_continuous_lattice(&beta, codomain)?;
    Ok(GroupVerdict::from_reports(
        structure,
        mult,
        inverse,
        format!(
            "AP_{u} condition relation on ([-{r},{r}]^{n}, {k})^2",
            r = window.radius,
            n = window.n,
            k = codomain.k()
        ),
        Vec::new(),
    ))
}

/// `(Z^n, k(t, n), +)` restricted to the window `[-radius, radius]^n`.
///
/// The multiplication is checked against the `AP_u` condition relation on
/// `W × W`; sums may leave the window and are compared with the pure lattice
/// predicate. `u = 1` is the `AP_1` check, `u = 2` the `AP_2` probe.
pub fn window_group_check(n: usize, t: usize, radius: i64, u: usize) -> Result<GroupVerdict> {
    let window = Window::new(n, t, radius)?;
    let structure = match u {
        1 => Structure::Ap1Group,
        2 => Structure::Ap2Probe,
        _ => return Err(Error::WindowDomain(format!("u must be 1 or 2, got {u}"))),
    };
    window_verdict(window, u, structure)
}

/// Input to [`ap2_probe`].
pub enum Ap2Input<'a> {
    Image {
        image: &'a DigitalImage,
        group: &'a GroupTable,
    },
    Window(Window),
}

/// Checks the multiplication against `AP_2` on the square. Exists to exhibit
/// failures; there is no positive `AP_2` structure.
pub fn ap2_probe(input: Ap2Input<'_>) -> Result<GroupVerdict> {
    match input {
        Ap2Input::Window(w) => window_verdict(w, 2, Structure::Ap2Probe),
        Ap2Input::Image { image, group } => {
            let bound = BoundGroup::new(image, group)?;
            let prod = square(image)?;
            let report = adjacency_existence(&prod, ProductKind::Ap(2))?;
            if !report.exists() {
                return Err(Error::NoApAdjacency { u: 2 });
            }
            let rel = condition_pairs(&prod, 2)?;
            let alpha = bound.multiplication(&prod, image.adjacency())?;
            let mult = is_continuous_relation(&alpha, &rel)?;
            let inverse = bound.inverse_report(image)?;
            Ok(GroupVerdict::from_reports(
                Structure::Ap2Probe,
                mult,
                inverse,
                format!(
                    "AP_2({0},{0}) in {1:?}",
                    image.k(),
                    report.admissible_k
                ),
                Vec::new(),
            ))
        }
    }
}

/// Forms the direct-product group on `X_1 × X_2` and checks it as an
/// `AP_1*`-group, which first needs an `AP_1(k_1, k_2, k_1, k_2)` adjacency
/// on `(X_1 × X_2)^2`.
pub fn product_group_probe(
    x1: &DigitalImage,
    g1: &GroupTable,
    x2: &DigitalImage,
    g2: &GroupTable,
) -> Result<GroupVerdict> {
    for (x, g) in [(x1, g1), (x2, g2)] {
        if !check_ap1_group(x, g, true)?.holds {
            return Err(Error::Precondition(format!(
                "factor in Z^{} is not an AP_1*-group",
                x.dim()
            )));
        }
    }
    let g = g1.direct_product(g2);
    let pair = product(vec![x1.clone(), x2.clone()])?;
    let label = format!("AP_1({0},{1},{0},{1})", x1.k(), x2.k());

    let four = product(vec![x1.clone(), x2.clone(), x1.clone(), x2.clone()])?;
    let report = adjacency_existence(&four, ProductKind::Ap(1))?;
    let Some(star_t) = report.star_t else {
        return Ok(GroupVerdict::no_adjacency(
            Structure::Ap1StarGroup,
            label,
            None,
        ));
    };
    let Some(codomain_adj) = adjacency_existence(&pair, ProductKind::Ap(1))?.star() else {
        let adjacency = format!("AP_1({},{})", x1.k(), x2.k());
        return Ok(GroupVerdict::no_adjacency(Structure::Ap1StarGroup, adjacency, None));
    };
    let carrier_image = DigitalImage::new(pair.points().iter().cloned(), codomain_adj.t())?;
    let bound = BoundGroup::new(&carrier_image, &g)?;
    let inverse = bound.inverse_report(&carrier_image)?;
    let rel = PairRelation::lattice(four.points().to_vec(), star_t);
    let square = square(&carrier_image)?;
    debug_assert_eq!(square.points(), four.points());
    let alpha = bound.multiplication(&square, codomain_adj)?;
    let mult = is_continuous_relation(&alpha, &rel)?;
    Ok(GroupVerdict::from_reports(
        Structure::Ap1StarGroup,
        mult,
        inverse,
        format!("AP_1*({},{},{},{}) = {}", x1.k(), x2.k(), x1.k(), x2.k(), report.star_k.unwrap()),
        Vec::new(),
    ))
}

/// On-disk group format: an explicit Cayley table over a carrier, or the
/// cyclic group of a curve.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupFile {
    Table {
        carrier: Vec<Vec<i64>>,
        table: Vec<Vec<usize>>,
    },
    Cyclic {
        cyclic: bool,
    },
}

impl GroupFile {
    /// Builds the group for `image`; the cyclic form needs a curve.
    pub fn load(&self, image: &LoadedImage) -> Result<GroupTable> {
        match self {
            GroupFile::Table { carrier, table } => GroupTable::new(
                carrier
                    .iter()
                    .map(|c| Point::new(c.clone()))
                    .collect::<Result<Vec<_>>>()?,
                table.clone(),
            ),
            GroupFile::Cyclic { cyclic: true } => image
                .curve()
                .map(cyclic_group)
                .ok_or_else(|| Error::Precondition("the cyclic group needs an ordered curve".into())),
            GroupFile::Cyclic { cyclic: false } => {
                Err(Error::MalformedTable("\"cyclic\": false names no group".into()))
            }
        }
    }
}
