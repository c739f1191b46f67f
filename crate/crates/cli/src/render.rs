//! Human-readable reports, plus the few CLI-only JSON shapes.

use std::fmt::Write;

use digitop::continuity::ContinuityReport;
use digitop::product::{CStarDiagnostic, CStarResult, IffFailure};
use digitop::{ExistenceReport, GroupVerdict, LatticeAdjacency, PairRelation, Structure};
use serde::Serialize;

#[derive(Serialize)]
pub struct GStarReport {
    pub k_star: u64,
    pub t: usize,
    pub dim: usize,
    pub points: usize,
    pub related_pairs: usize,
}

impl GStarReport {
    pub fn new(rel: &PairRelation, k_star: LatticeAdjacency) -> Self {
        GStarReport {
            k_star: k_star.k(),
            t: k_star.t(),
            dim: k_star.n(),
            points: rel.ground().len(),
            related_pairs: rel.pair_count(),
        }
    }
}

#[derive(Serialize)]
pub struct StarReport {
    pub kind: String,
    pub u: Option<usize>,
    pub dim: usize,
    pub star_t: Option<usize>,
    pub star_k: Option<u64>,
}

impl StarReport {
    pub fn new(r: &ExistenceReport) -> Self {
        StarReport {
            kind: r.kind.name().to_string(),
            u: r.u,
            dim: r.dim,
            star_t: r.star_t,
            star_k: r.star_k,
        }
    }
}

#[derive(Serialize)]
pub struct ConnectedReport {
    pub continuous: bool,
}

#[derive(Serialize)]
pub struct RefusedProbe {
    pub holds: bool,
    pub reason: String,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "refuted"
    }
}

pub fn curve(valid: bool, length: usize, k: u64, reason: Option<&str>) -> String {
    match reason {
        None if valid => format!("valid simple closed {k}-curve with {length} points\n"),
        _ => format!("not a simple closed {k}-curve: {}\n", reason.unwrap_or("unknown")),
    }
}

pub fn existence(r: &ExistenceReport) -> String {
    let mut out = String::new();
    let label = match r.u {
        Some(u) => format!("AP_{u}"),
        None => r.kind.name().to_string(),
    };
    let _ = writeln!(out, "{label} adjacency on a product in Z^{}", r.dim);
    let _ = writeln!(out, "admissible k: {:?}", r.admissible_k);
    match r.star_k {
        Some(k) => {
            let _ = writeln!(out, "least: k({}, {}) = {k}", r.star_t.unwrap_or(0), r.dim);
        }
        None => {
            let _ = writeln!(out, "no adjacency exists");
        }
    }
    for (t, w) in &r.witnesses {
        let why = match w.failure {
            IffFailure::LatticeOnly => "lattice-adjacent but the condition fails",
            IffFailure::ConditionOnly => "the condition holds but not lattice-adjacent",
        };
        let _ = writeln!(out, "  t = {t}: {} and {}: {why}", w.p, w.q);
    }
    out
}

pub fn star(s: &StarReport) -> String {
    match s.star_k {
        Some(k) => format!("least adjacency: k({}, {}) = {k}\n", s.star_t.unwrap_or(0), s.dim),
        None => "no adjacency exists\n".to_string(),
    }
}

pub fn g_star(r: &GStarReport) -> String {
    format!(
        "G_{{k*}} with k* = k({}, {}) = {}: {} points, {} related pairs\n",
        r.t, r.dim, r.k_star, r.points, r.related_pairs
    )
}

pub fn c_star(r: &CStarResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "k* = {}", r.k_star.k());
    match (&r.adjacency, r.diagnostic) {
        (Some(a), CStarDiagnostic::MinIsKStar) => {
            let _ = writeln!(out, "C_{{k*}} = {} (the least C-compatible adjacency)", a.k());
        }
        (_, CStarDiagnostic::MinDiffers { min_t, k_star_t }) => {
            let _ = writeln!(
                out,
                "least C-compatible adjacency uses t = {min_t}, k* uses t = {k_star_t}"
            );
        }
        (_, CStarDiagnostic::NoCCompatible) => {
            let _ = writeln!(out, "no C-compatible adjacency exists");
        }
        (None, CStarDiagnostic::MinIsKStar) => {}
    }
    out.push_str(&existence(&r.report));
    out
}

pub fn continuity(r: &ContinuityReport) -> String {
    match &r.witness {
        None => "continuous\n".to_string(),
        Some(w) => format!(
            "not continuous: {} ~ {} but {} and {} are neither equal nor adjacent\n",
            w.p, w.q, w.fp, w.fq
        ),
    }
}

pub fn connected(continuous: bool) -> String {
    if continuous {
        "continuous: every connected subset has a connected image\n".to_string()
    } else {
        "not continuous: some connected subset has a disconnected image\n".to_string()
    }
}

pub fn group(v: &GroupVerdict) -> String {
    let mut out = String::new();
    let name = match v.structure {
        Structure::DtGroup => "DT-k-group",
        Structure::Ap1Group => "AP_1-k-group",
        Structure::Ap1StarGroup => "AP_1*-k-group",
        Structure::Ap2Probe => "AP_2-k-group",
    };
    let _ = writeln!(out, "{name}: {}", yes_no(v.holds));
    let _ = writeln!(out, "adjacency: {}", v.adjacency_used);
    for a in &v.per_t {
        let _ = writeln!(out, "  k = {}: multiplication {}", a.k, yes_no(a.report.continuous));
    }
    if let Some(f) = &v.failure {
        let _ = writeln!(out, "reason: {f}");
    }
    out
}
