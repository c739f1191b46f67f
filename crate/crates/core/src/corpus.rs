//! A machine-readable corpus of worked facts and a replay verifier.
//!
//! Facts live in JSON files (`corpus/facts/*.json`), each an array of
//! objects `{"id", "claim", "check", ..inputs.., "expect": {..}}`. Images are
//! referenced by name and resolved against `corpus/images/<name>.json`.
//! Every fact is decided by one toolkit operation; the verifier compares the
//! computed fields with `expect` and reports any differences.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{
    ap2_probe, check_ap1_group, check_dt_group, cyclic_group, product_group_probe,
    window_group_check, Ap2Input, Failure, GroupVerdict, Structure, Window,
};
use crate::image::{DigitalImage, ImageFile, LoadedImage};
use crate::lattice::{k_value, lattice_neighborhood, Ground, Point};
use crate::oracle::{neighborhood_form_holds_at, predicted_neighborhood};
use crate::product::{
    adjacency_existence, c_star, condition_pairs, g_star, product, relation_neighborhood,
    PairRelation, ProductKind, ProductSpace,
};

macro_rules! embedded {
    ($dir:literal: $($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $dir, "/", $name, ".json")))),*]
    };
}

const EMBEDDED_IMAGES: &[(&str, &str)] = embedded!("images":
    "corner3", "diagonal2", "msc18", "sc18_3_6", "sc26_3_4", "sc4_2_4", "sc4_2_8",
    "sc6_3_6", "sc8_2_4", "sc8_2_6",
);

const EMBEDDED_FACTS: &[(&str, &str)] = embedded!("facts":
    "adjacency", "binary_products", "condition_relation", "curves", "groups", "multi_products",
);

/// One corpus entry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusFact {
    pub id: String,
    /// The claim in words.
    pub claim: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(flatten)]
    pub check: Check,
}

/// The operation deciding a fact, with its inputs and expected results.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Check {
    KTable {
        expect: KTableExpect,
    },
    Curve {
        image: String,
        expect: CurveExpect,
    },
    Existence {
        factors: Vec<String>,
        kind: String,
        #[serde(default)]
        u: Option<usize>,
        expect: ExistenceExpect,
    },
    NeighborhoodFormAt {
        factors: Vec<String>,
        kind: String,
        #[serde(default)]
        u: Option<usize>,
        point: Vec<i64>,
        expect: HoldingExpect,
    },
    KindEquivalence {
        factors: Vec<String>,
        expect: EquivalenceExpect,
    },
    GStar {
        factors: Vec<String>,
        expect: GStarExpect,
    },
    CStar {
        factors: Vec<String>,
        expect: CStarExpect,
    },
    CStarNeighborhoods {
        factors: Vec<String>,
        expect: CoincideExpect,
    },
    ApNeighborhoods {
        factors: Vec<String>,
        u: usize,
        expect: BlockFormExpect,
    },
    ConditionNeighbors {
        factors: Vec<String>,
        point: Vec<i64>,
        u: usize,
        expect: NeighborsExpect,
    },
    LatticeNeighborhoodSizes {
        factors: Vec<String>,
        point: Vec<i64>,
        expect: SizesExpect,
    },
    CityBlockSample {
        seed: u64,
        samples: usize,
        expect: CityBlockExpect,
    },
    WindowAp1 {
        dims: Vec<usize>,
        radius: i64,
        expect: WindowAp1Expect,
    },
    Group {
        image: String,
        structure: Structure,
        expect: GroupExpect,
    },
    WindowGroup {
        n: usize,
        t: usize,
        radius: i64,
        u: usize,
        expect: WindowGroupExpect,
    },
    ProductGroup {
        factors: Vec<String>,
        expect: GroupExpect,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KTableExpect {
    /// `(n, t, k)` triples.
    pub rows: Vec<[u64; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveExpect {
    pub length: usize,
    pub k: u64,
    pub cyclic_group_abelian: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExistenceExpect {
    pub admissible_k: Vec<u64>,
    pub star_k: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HoldingExpect {
    pub holding_t: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquivalenceExpect {
    pub c_compatible_equals_ap1: bool,
    pub normal_equals_ap2: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GStarExpect {
    pub k_star: u64,
    /// Whether the relation equals `k*`-adjacency restricted to the product.
    pub equals_k_star_restriction: bool,
    /// Whether every relation degree is at most the restricted `k*` degree.
    pub degree_bound: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CStarExpect {
    pub k_star: u64,
    pub c_star_k: Option<u64>,
    pub diagnostic: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoincideExpect {
    pub coincide: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockFormExpect {
    pub block_form_holds: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NeighborsExpect {
    pub neighbors: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SizesExpect {
    /// `(k, |N*_k(p)|)` pairs.
    pub sizes: Vec<(u64, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CityBlockExpect {
    pub all_c_star_2n: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WindowAp1Expect {
    pub admissible_k: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupExpect {
    pub holds: bool,
    /// `no_adjacency`, `multiplication` or `inverse`.
    pub failure: Option<String>,
    /// The `k` of every admissible adjacency checked, when relevant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjacency_k: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WindowGroupExpect {
    pub holds: bool,
    /// `(p, q, f(p), f(q))` of the first failing pair.
    pub witness: Option<[Vec<i64>; 4]>,
}

/// A field whose computed value differs from the expectation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diff {
    pub field: String,
    pub expected: Value,
    pub computed: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactOutcome {
    pub id: String,
    pub check: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diffs: Vec<Diff>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub outcomes: Vec<FactOutcome>,
}

impl CorpusSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Plain-text table, one row per fact, then any diffs.
    pub fn render_table(&self) -> String {
        let width = self.outcomes.iter().map(|o| o.id.len()).max().unwrap_or(2).max(2);
        let mut out = String::new();
        let _ = writeln!(out, "{:<width$}  {:<26}  result", "id", "check");
        for o in &self.outcomes {
            let verdict = if o.passed { "pass" } else { "FAIL" };
            let _ = writeln!(out, "{:<width$}  {:<26}  {verdict}", o.id, o.check);
        }
        for o in self.outcomes.iter().filter(|o| !o.passed) {
            if let Some(e) = &o.error {
                let _ = writeln!(out, "{}: error: {e}", o.id);
            }
            for d in &o.diffs {
                let _ = writeln!(
                    out,
                    "{}: {} expected {} computed {}",
                    o.id, d.field, d.expected, d.computed
                );
            }
        }
        let _ = writeln!(out, "{} facts, {} passed, {} failed", self.total, self.passed, self.failed);
        out
    }
}

/// Named fixture images plus the facts that refer to them.
#[derive(Clone, Debug)]
pub struct Corpus {
    images: BTreeMap<String, LoadedImage>,
    facts: Vec<CorpusFact>,
}

fn fixture_err(what: &str, e: impl std::fmt::Display) -> Error {
    Error::Fixture(format!("{what}: {e}"))
}

impl Corpus {
    /// The corpus compiled into the library.
    pub fn embedded() -> Result<Self> {
        Self::from_sources(
            EMBEDDED_IMAGES.iter().map(|(n, s)| (n.to_string(), s.to_string())),
            EMBEDDED_FACTS.iter().map(|(n, s)| (n.to_string(), s.to_string())),
        )
    }

    /// Loads `dir/images/*.json` and `dir/facts/*.json`.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let read = |sub: &str| -> Result<Vec<(String, String)>> {
            let mut entries = Vec::new();
            for entry in fs::read_dir(dir.join(sub))? {
                let path = entry?.path();
                if path.extension().is_some_and(|e| e == "json") {
                    let stem = path
                        .file_stem()
                        .and_then(|s| s.to_str())
                        .ok_or_else(|| fixture_err("bad file name", path.display()))?
                        .to_string();
                    entries.push((stem, fs::read_to_string(&path)?));
                }
            }
            entries.sort();
            Ok(entries)
        };
        Self::from_sources(read("images")?, read("facts")?)
    }

    fn from_sources(
        images: impl IntoIterator<Item = (String, String)>,
        facts: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self> {
        let mut loaded = BTreeMap::new();
        for (name, text) in images {
            let file: ImageFile =
                serde_json::from_str(&text).map_err(|e| fixture_err(&format!("image {name}"), e))?;
            let image = file.load().map_err(|e| fixture_err(&format!("image {name}"), e))?;
            loaded.insert(name, image);
        }
        let mut all = Vec::new();
        let mut seen = BTreeSet::new();
        for (name, text) in facts {
            let batch: Vec<CorpusFact> = serde_json::from_str(&text)
                .map_err(|e| fixture_err(&format!("fact file {name}"), e))?;
            for fact in batch {
                if !seen.insert(fact.id.clone()) {
                    return Err(fixture_err("duplicate fact id", &fact.id));
                }
                all.push(fact);
            }
        }
        let corpus = Corpus {
            images: loaded,
            facts: all,
        };
        for fact in &corpus.facts {
            for name in fact.check.image_names() {
                if !corpus.images.contains_key(name) {
                    return Err(fixture_err(&format!("fact {}", fact.id), format!("unknown image {name}")));
                }
            }
        }
        Ok(corpus)
    }

    pub fn facts(&self) -> &[CorpusFact] {
        &self.facts
    }

    pub fn image(&self, name: &str) -> Option<&LoadedImage> {
        self.images.get(name)
    }

    pub fn image_names(&self) -> impl Iterator<Item = &str> {
        self.images.keys().map(String::as_str)
    }

    /// Runs every fact whose id contains `filter` (all facts when `None`).
    ///
    /// Facts run in parallel; outcomes keep corpus order.
    pub fn run(&self, filter: Option<&str>) -> CorpusSummary {
        let selected: Vec<&CorpusFact> = self
            .facts
            .iter()
            .filter(|f| filter.is_none_or(|pat| f.id.contains(pat)))
            .collect();
        let outcomes: Vec<FactOutcome> = selected.par_iter().map(|f| self.run_fact(f)).collect();
        let passed = outcomes.iter().filter(|o| o.passed).count();
        CorpusSummary {
            total: outcomes.len(),
            passed,
            failed: outcomes.len() - passed,
            outcomes,
        }
    }

    fn run_fact(&self, fact: &CorpusFact) -> FactOutcome {
        let check = fact.check.name().to_string();
        match self.evaluate(&fact.check) {
            Ok(pairs) => {
                let diffs: Vec<Diff> = pairs
                    .into_iter()
                    .filter(|(_, e, c)| e != c)
                    .map(|(field, expected, computed)| Diff {
                        field: field.to_string(),
                        expected,
                        computed,
                    })
                    .collect();
                FactOutcome {
                    id: fact.id.clone(),
                    check,
                    passed: diffs.is_empty(),
                    diffs,
                    error: None,
                }
            }
            Err(e) => FactOutcome {
                id: fact.id.clone(),
                check,
                passed: false,
                diffs: Vec::new(),
                error: Some(e.to_string()),
            },
        }
    }

    fn images_of(&self, names: &[String]) -> Vec<DigitalImage> {
        names.iter().map(|n| self.images[n].image()).collect()
    }

    fn product_of(&self, names: &[String]) -> Result<ProductSpace> {
        product(self.images_of(names))
    }

    fn pair_of(&self, names: &[String]) -> Result<(DigitalImage, DigitalImage)> {
        match self.images_of(names).as_slice() {
            [a, b] => Ok((a.clone(), b.clone())),
            other => Err(Error::Arity {
                what: "this check",
                expected: "exactly 2 factors",
                found: other.len(),
            }),
        }
    }

    fn group_image(&self, name: &str) -> Result<(DigitalImage, crate::group::GroupTable)> {
        let loaded = &self.images[name];
        let curve = loaded
            .curve()
            .ok_or_else(|| Error::Precondition(format!("{name} is not a curve")))?;
        Ok((loaded.image(), cyclic_group(curve)))
    }

    /// `(field, expected, computed)` triples for one check.
    fn evaluate(&self, check: &Check) -> Result<Vec<(&'static str, Value, Value)>> {
        Ok(match check {
            Check::KTable { expect } => {
                let computed = expect
                    .rows
                    .iter()
                    .map(|&[n, t, _]| Ok([n, t, k_value(t as usize, n as usize)?]))
                    .collect::<Result<Vec<_>>>()?;
                vec![("rows", json!(expect.rows), json!(computed))]
            }
            Check::Curve { image, expect } => {
                let curve = self.images[image]
                    .curve()
                    .ok_or_else(|| Error::Precondition(format!("{image} is not a curve")))?;
                let g = cyclic_group(curve);
                let group_ok = crate::group::verify_group(&g).is_ok();
                vec![
                    ("length", json!(expect.length), json!(curve.len())),
                    ("k", json!(expect.k), json!(curve.adjacency().k())),
                    (
                        "cyclic_group_abelian",
                        json!(expect.cyclic_group_abelian),
                        json!((group_ok && g.is_abelian())),
                    ),
                ]
            }
            Check::Existence {
                factors,
                kind,
                u,
                expect,
            } => {
                let report = adjacency_existence(&self.product_of(factors)?, parse_kind(kind, *u)?)?;
                vec![
                    ("admissible_k", json!(expect.admissible_k), json!(report.admissible_k)),
                    ("star_k", json!(expect.star_k), json!(report.star_k)),
                ]
            }
            Check::NeighborhoodFormAt {
                factors,
                kind,
                u,
                point,
                expect,
            } => {
                let prod = self.product_of(factors)?;
                let kind = parse_kind(kind, *u)?;
                let p = Point::new(point.clone())?;
                if prod.index_of(&p).is_none() {
                    return Err(Error::PointNotInImage(p));
                }
                let mut holding = Vec::new();
                for t in 1..=prod.dim() {
                    if neighborhood_form_holds_at(&prod, kind, t, &p)? {
                        holding.push(t);
                    }
                }
                vec![("holding_t", json!(expect.holding_t), json!(holding))]
            }
            Check::KindEquivalence { factors, expect } => {
                let prod = self.product_of(factors)?;
                let set = |k| adjacency_existence(&prod, k).map(|r| r.admissible_t);
                vec![
                    (
                        "c_compatible_equals_ap1",
                        json!(expect.c_compatible_equals_ap1),
                        json!((set(ProductKind::CCompatible)? == set(ProductKind::Ap(1))?)),
                    ),
                    (
                        "normal_equals_ap2",
                        json!(expect.normal_equals_ap2),
                        json!((set(ProductKind::Normal)? == set(ProductKind::Ap(2))?)),
                    ),
                ]
            }
            Check::GStar { factors, expect } => {
                let (a, b) = self.pair_of(factors)?;
                let (rel, k_star) = g_star(&a, &b)?;
                let lattice = PairRelation::lattice(rel.ground().to_vec(), k_star.t());
                let degree_ok = (0..rel.ground().len())
                    .all(|i| rel.neighbor_indices(i).len() <= lattice.neighbor_indices(i).len());
                vec![
                    ("k_star", json!(expect.k_star), json!(k_star.k())),
                    (
                        "equals_k_star_restriction",
                        json!(expect.equals_k_star_restriction),
                        json!(rel.same_pairs(&lattice)),
                    ),
                    ("degree_bound", json!(expect.degree_bound), json!(degree_ok)),
                ]
            }
            Check::CStar { factors, expect } => {
                let (a, b) = self.pair_of(factors)?;
                let r = c_star(&a, &b)?;
                let status = serde_json::to_value(r.diagnostic)?["status"].clone();
                vec![
                    ("k_star", json!(expect.k_star), json!(r.k_star.k())),
                    ("c_star_k", json!(expect.c_star_k), json!(r.adjacency.map(|a| a.k()))),
                    ("diagnostic", json!(expect.diagnostic), status),
                ]
            }
            Check::CStarNeighborhoods { factors, expect } => {
                let (a, b) = self.pair_of(factors)?;
                let r = c_star(&a, &b)?;
                let coincide = match r.adjacency {
                    None => false,
                    Some(adj) => {
                        let (g, _) = g_star(&a, &b)?;
                        let c = PairRelation::lattice(g.ground().to_vec(), adj.t());
                        let ground = Ground::Finite(g.ground());
                        g.ground().iter().try_fold(true, |ok, p| {
                            let n_g = relation_neighborhood(&g, p)?;
                            let n_c = relation_neighborhood(&c, p)?;
                            let n_k = lattice_neighborhood(p, adj.t(), ground)?;
                            Ok::<_, Error>(ok && n_g == n_c && n_c == n_k)
                        })?
                    }
                };
                vec![("coincide", json!(expect.coincide), json!(coincide))]
            }
            Check::ApNeighborhoods { factors, u, expect } => {
                let prod = self.product_of(factors)?;
                let kind = ProductKind::Ap(*u);
                let report = adjacency_existence(&prod, kind)?;
                let rel = condition_pairs(&prod, *u)?;
                let mut holds = report.exists();
                for &t in &report.admissible_t {
                    for p in prod.points() {
                        let lattice: BTreeSet<Point> =
                            lattice_neighborhood(p, t, Ground::Finite(prod.points()))?
                                .closed()
                                .into_iter()
                                .collect();
                        let by_relation: BTreeSet<Point> =
                            relation_neighborhood(&rel, p)?.closed().into_iter().collect();
                        let blocks = predicted_neighborhood(&prod, kind, p)?;
                        holds &= lattice == blocks && by_relation == blocks;
                    }
                }
                vec![("block_form_holds", json!(expect.block_form_holds), json!(holds))]
            }
            Check::ConditionNeighbors {
                factors,
                point,
                u,
                expect,
            } => {
                let rel = condition_pairs(&self.product_of(factors)?, *u)?;
                let n = relation_neighborhood(&rel, &Point::new(point.clone())?)?;
                let computed: Vec<Vec<i64>> =
                    n.punctured.iter().map(|q| q.coords().to_vec()).collect();
                vec![("neighbors", json!(expect.neighbors), json!(computed))]
            }
            Check::LatticeNeighborhoodSizes {
                factors,
                point,
                expect,
            } => {
                let prod = self.product_of(factors)?;
                let p = Point::new(point.clone())?;
                let computed = (1..=prod.dim())
                    .map(|t| {
                        let n = lattice_neighborhood(&p, t, Ground::Finite(prod.points()))?;
                        Ok((k_value(t, prod.dim())?, n.punctured.len()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                vec![("sizes", json!(expect.sizes), json!(computed))]
            }
            Check::CityBlockSample {
                seed,
                samples,
                expect,
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut all = true;
                for _ in 0..*samples {
                    let a = random_city_block_image(&mut rng)?;
                    let b = random_city_block_image(&mut rng)?;
                    let r = c_star(&a, &b)?;
                    let expected = 2 * (a.dim() + b.dim()) as u64;
                    all &= r.adjacency.map(|adj| adj.k()) == Some(expected);
                }
                vec![("all_c_star_2n", json!(expect.all_c_star_2n), json!(all))]
            }
            Check::WindowAp1 {
                dims,
                radius,
                expect,
            } => {
                let factors = dims
                    .iter()
                    .map(|&n| Window::new(n, 1, *radius)?.image())
                    .collect::<Result<Vec<_>>>()?;
                let report = adjacency_existence(&product(factors)?, ProductKind::Ap(1))?;
                vec![("admissible_k", json!(expect.admissible_k), json!(report.admissible_k))]
            }
            Check::Group {
                image,
                structure,
                expect,
            } => {
                let (x, g) = self.group_image(image)?;
                let verdict = match structure {
                    Structure::DtGroup => check_dt_group(&x, &g)?,
                    Structure::Ap1Group => check_ap1_group(&x, &g, false)?,
                    Structure::Ap1StarGroup => check_ap1_group(&x, &g, true)?,
                    Structure::Ap2Probe => ap2_probe(Ap2Input::Image {
                        image: &x,
                        group: &g,
                    })?,
                };
                group_fields(expect, &verdict)
            }
            Check::WindowGroup {
                n,
                t,
                radius,
                u,
                expect,
            } => {
                let verdict = window_group_check(*n, *t, *radius, *u)?;
                let witness = verdict.failure.as_ref().and_then(|f| match f {
                    Failure::Multiplication { witness: w } | Failure::Inverse { witness: w } => {
                        Some([&w.p, &w.q, &w.fp, &w.fq].map(|p| p.coords().to_vec()))
                    }
                    Failure::NoAdjacency { .. } => None,
                });
                vec![
                    ("holds", json!(expect.holds), json!(verdict.holds)),
                    ("witness", json!(expect.witness), json!(witness)),
                ]
            }
            Check::ProductGroup { factors, expect } => {
                let [a, b] = factors.as_slice() else {
                    return Err(Error::Arity {
                        what: "a product group probe",
                        expected: "exactly 2 factors",
                        found: factors.len(),
                    });
                };
                let (x1, g1) = self.group_image(a)?;
                let (x2, g2) = self.group_image(b)?;
                group_fields(expect, &product_group_probe(&x1, &g1, &x2, &g2)?)
            }
        })
    }
}

fn group_fields(expect: &GroupExpect, v: &GroupVerdict) -> Vec<(&'static str, Value, Value)> {
    let failure = v.failure.as_ref().map(|f| match f {
        Failure::NoAdjacency { .. } => "no_adjacency",
        Failure::Multiplication { .. } => "multiplication",
        Failure::Inverse { .. } => "inverse",
    });
    let mut out = vec![
        ("holds", json!(expect.holds), json!(v.holds)),
        ("failure", json!(expect.failure), json!(failure)),
    ];
    if let Some(ks) = &expect.adjacency_k {
        let computed: Vec<u64> = v.per_t.iter().map(|p| p.k).collect();
        out.push(("adjacency_k", json!(ks), json!(computed)));
    }
    out
}

/// Parses `normal`, `c_compatible` or `ap` (with `u`).
pub fn parse_kind(kind: &str, u: Option<usize>) -> Result<ProductKind> {
    match (kind, u) {
        ("normal", None) => Ok(ProductKind::Normal),
        ("c_compatible", None) => Ok(ProductKind::CCompatible),
        ("ap", Some(u)) => Ok(ProductKind::Ap(u)),
        _ => Err(Error::Fixture(format!("bad product kind {kind:?} with u = {u:?}"))),
    }
}

/// A random image with 4-style adjacency: 1 to 5 points in `[0, 2]^n`,
/// `n` in `[1, 3]`.
pub fn random_city_block_image(rng: &mut impl Rng) -> Result<DigitalImage> {
    let n = rng.gen_range(1..=3);
    let size = rng.gen_range(1..=5);
    let points = (0..size)
        .map(|_| Point::new((0..n).map(|_| rng.gen_range(0..=2)).collect()))
        .collect::<Result<Vec<_>>>()?;
    DigitalImage::new(points, 1)
}

impl Check {
    pub fn name(&self) -> &'static str {
        match self {
            Check::KTable { .. } => "k_table",
            Check::Curve { .. } => "curve",
            Check::Existence { .. } => "existence",
            Check::NeighborhoodFormAt { .. } => "neighborhood_form_at",
            Check::KindEquivalence { .. } => "kind_equivalence",
            Check::GStar { .. } => "g_star",
            Check::CStar { .. } => "c_star",
            Check::CStarNeighborhoods { .. } => "c_star_neighborhoods",
            Check::ApNeighborhoods { .. } => "ap_neighborhoods",
            Check::ConditionNeighbors { .. } => "condition_neighbors",
            Check::LatticeNeighborhoodSizes { .. } => "lattice_neighborhood_sizes",
            Check::CityBlockSample { .. } => "city_block_sample",
            Check::WindowAp1 { .. } => "window_ap1",
            Check::Group { .. } => "group",
            Check::WindowGroup { .. } => "window_group",
            Check::ProductGroup { .. } => "product_group",
        }
    }

    /// Fixture images the check refers to.
    pub fn image_names(&self) -> Vec<&str> {
        match self {
            Check::Curve { image, .. } | Check::Group { image, .. } => vec![image.as_str()],
            Check::Existence { factors, .. }
            | Check::NeighborhoodFormAt { factors, .. }
            | Check::KindEquivalence { factors, .. }
            | Check::GStar { factors, .. }
            | Check::CStar { factors, .. }
            | Check::CStarNeighborhoods { factors, .. }
            | Check::ApNeighborhoods { factors, .. }
            | Check::ConditionNeighbors { factors, .. }
            | Check::LatticeNeighborhoodSizes { factors, .. }
            | Check::ProductGroup { factors, .. } => factors.iter().map(String::as_str).collect(),
            Check::KTable { .. }
            | Check::CityBlockSample { .. }
            | Check::WindowAp1 { .. }
            | Check::WindowGroup { .. } => Vec::new(),
        }
    }
}

/// Runs the embedded corpus.
pub fn run_corpus(filter: Option<&str>) -> Result<CorpusSummary> {
    Ok(Corpus::embedded()?.run(filter))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::{curves, msc18};

    #[test]
    fn fixtures_match_the_curve_library() {
        let corpus = Corpus::embedded().unwrap();
        let mut library = curves::all();
        library.push(("msc18", msc18()));
        for (name, curve) in library {
            let loaded = corpus.image(name).unwrap().curve().unwrap();
            assert_eq!(loaded, &curve, "{name}");
        }
    }

    #[test]
    fn embedded_and_directory_corpora_agree() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
        let from_dir = Corpus::from_dir(&dir).unwrap();
        let embedded = Corpus::embedded().unwrap();
        assert_eq!(from_dir.facts().len(), embedded.facts().len());
        assert_eq!(
            from_dir.image_names().collect::<Vec<_>>(),
            embedded.image_names().collect::<Vec<_>>()
        );
    }

    #[test]
    fn filter_selects_by_substring() {
        let s = run_corpus(Some("msc18-square")).unwrap();
        assert!(s.total >= 4);
        assert!(s.outcomes.iter().all(|o| o.id.contains("msc18-square")));
        assert_eq!(run_corpus(Some("no-such-fact")).unwrap().total, 0);
    }

    #[test]
    fn mismatch_is_reported_as_diff() {
        let facts = r#"[{"id": "wrong", "claim": "deliberately wrong", "check": "k_table",
                         "expect": {"rows": [[4, 2, 33]]}}]"#;
        let corpus = Corpus::from_sources([], [("x".into(), facts.into())]).unwrap();
        let s = corpus.run(None);
        assert_eq!(s.failed, 1);
        assert_eq!(s.outcomes[0].diffs[0].field, "rows");
        assert!(s.render_table().contains("FAIL"));
    }

    #[test]
    fn loader_rejects_bad_fixtures() {
        let bad_curve = r#"{"dim": 2, "t": 2, "points": [[0,0],[1,0],[1,1],[0,1]], "ordered": true}"#;
        assert!(Corpus::from_sources([("sq".into(), bad_curve.into())], []).is_err());
        let unknown = r#"[{"id": "a", "claim": "", "check": "curve", "image": "nope",
                          "expect": {"length": 4, "k": 4, "cyclic_group_abelian": true}}]"#;
        assert!(Corpus::from_sources([], [("f".into(), unknown.into())]).is_err());
        let dup = r#"[{"id": "a", "claim": "", "check": "k_table", "expect": {"rows": []}},
                      {"id": "a", "claim": "", "check": "k_table", "expect": {"rows": []}}]"#;
        assert!(Corpus::from_sources([], [("f".into(), dup.into())]).is_err());
    }
}
