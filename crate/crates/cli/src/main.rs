//! `digitop`: batch front end for the verification toolkit.
//!
//! Exit status: 0 when the checked property holds, 2 when it is refuted,
//! 1 on usage or input errors.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use digitop::continuity::{
    connected_image_check, is_continuous_lattice, is_continuous_lattice_neighborhood, MapFile,
};
use digitop::corpus::Corpus;
use digitop::group::{
    ap2_probe, check_ap1_group, check_dt_group, window_group_check, Ap2Input, GroupFile, Window,
};
use digitop::image::{validate_curve, ImageFile, LoadedImage};
use digitop::lattice::{k_value, Point};
use digitop::{adjacency_existence, c_star, g_star, product, Error, ProductKind};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "digitop", version, about = "Check adjacency, continuity and group facts on digital images")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print k(t, n) for every t in [1, n].
    AdjacencyTable {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=12))]
        n: u8,
    },
    /// Check that an ordered image file lists a simple closed curve.
    ValidateCurve { file: PathBuf },
    /// Decide which product adjacencies exist on a product of images.
    CheckProduct {
        #[arg(required = true)]
        images: Vec<PathBuf>,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Factor bound for `--kind ap`.
        #[arg(long)]
        u: Option<usize>,
        /// Report only the least admissible adjacency.
        #[arg(long)]
        star: bool,
    },
    /// Check a map file for continuity.
    CheckContinuity {
        map: PathBuf,
        #[arg(long, value_enum, default_value_t = FormArg::Pair)]
        form: FormArg,
    },
    /// Check a group on an image, or coordinatewise addition on a window of Z^n.
    CheckGroup {
        #[arg(required_unless_present = "window")]
        image: Option<PathBuf>,
        /// A group file, or `cyclic` for the cyclic group of a curve.
        #[arg(required_unless_present = "window")]
        group: Option<String>,
        #[arg(long, value_enum, default_value_t = StructureArg::Dt)]
        structure: StructureArg,
        /// Window `n,t,radius` of Z^n under k(t, n), instead of an image.
        #[arg(long, value_parser = parse_window, conflicts_with_all = ["image", "group"])]
        window: Option<Window>,
        /// Factor bound for window checks.
        #[arg(long, default_value_t = 1)]
        u: usize,
    },
    /// Replay the fact corpus.
    VerifyCorpus {
        /// Corpus directory with images/ and facts/; the embedded corpus by default.
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Run only facts whose id contains this string.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Normal,
    CCompatible,
    Ap,
    GStar,
    CStar,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    Pair,
    Neighborhood,
    ConnectedImage,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StructureArg {
    Dt,
    Ap1,
    Ap1Star,
    Ap2Probe,
}

fn parse_window(s: &str) -> Result<Window, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [n, t, r] = parts.as_slice() else {
        return Err("expected n,t,radius".into());
    };
    let n = n.parse().map_err(|e| format!("n: {e}"))?;
    let t = t.parse().map_err(|e| format!("t: {e}"))?;
    let r = r.parse().map_err(|e| format!("radius: {e}"))?;
    Window::new(n, t, r).map_err(|e| e.to_string())
}

/// What a verb concluded; errors travel separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Verdict {
    Holds,
    Refuted,
}

impl Verdict {
    fn from_bool(holds: bool) -> Self {
        if holds {
            Verdict::Holds
        } else {
            Verdict::Refuted
        }
    }

    fn code(self) -> u8 {
        match self {
            Verdict::Holds => 0,
            Verdict::Refuted => 2,
        }
    }
}

struct Output {
    json: bool,
}

impl Output {
    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
        } else {
            print!("{}", text());
        }
    }
}

fn read_image(path: &Path) -> digitop::Result<LoadedImage> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str::<ImageFile>(&text)?.load()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = Output { json: cli.json };
    match run(cli.command, &out) {
        Ok(v) => ExitCode::from(v.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, out: &Output) -> digitop::Result<Verdict> {
    match command {
        Command::AdjacencyTable { n } => adjacency_table(n as usize, out),
        Command::ValidateCurve { file } => validate(&file, out),
        Command::CheckProduct {
            images,
            kind,
            u,
            star,
        } => check_product(&images, kind, u, star, out),
        Command::CheckContinuity { map, form } => check_continuity(&map, form, out),
        Command::CheckGroup {
            image,
            group,
            structure,
            window,
            u,
        } => match window {
            Some(w) => check_window(w, structure, u, out),
            None => check_group(
                image.as_deref().expect("clap requires an image"),
                group.as_deref().expect("clap requires a group"),
                structure,
                out,
            ),
        },
        Command::VerifyCorpus {
            dir,
            filter,
            threads,
        } => verify_corpus(dir.as_deref(), filter.as_deref(), threads, out),
    }
}

#[derive(Serialize)]
struct TableRow {
    t: usize,
    n: usize,
    k: u64,
}

fn adjacency_table(n: usize, out: &Output) -> digitop::Result<Verdict> {
    let rows = (1..=n)
        .map(|t| Ok(TableRow { t, n, k: k_value(t, n)? }))
        .collect::<digitop::Result<Vec<_>>>()?;
    out.emit(&rows, || {
        rows.iter().map(|r| format!("k({}, {}) = {}\n", r.t, r.n, r.k)).collect()
    });
    Ok(Verdict::Holds)
}

#[derive(Serialize)]
struct CurveReport {
    valid: bool,
    length: usize,
    k: u64,
    reason: Option<String>,
}

fn validate(path: &Path, out: &Output) -> digitop::Result<Verdict> {
    let file: ImageFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let k = k_value(file.t, file.dim)?;
    let seq = file
        .points
        .iter()
        .map(|c| {
            let p = Point::new(c.clone())?;
            if p.dim() != file.dim {
                return Err(Error::DimensionMismatch {
                    expected: file.dim,
                    found: p.dim(),
                });
            }
            Ok(p)
        })
        .collect::<digitop::Result<Vec<_>>>()?;
    let length = seq.len();
    let reason = match validate_curve(seq, file.t) {
        Ok(_) => None,
        Err(
            e @ (Error::CurveTooShort(_)
            | Error::DuplicateCurvePoint { .. }
            | Error::NotSimpleClosedCurve { .. }),
        ) => Some(e.to_string()),
        Err(e) => return Err(e),
    };
    let report = CurveReport {
        valid: reason.is_none(),
        length,
        k,
        reason,
    };
    out.emit(&report, || render::curve(report.valid, length, k, report.reason.as_deref()));
    Ok(Verdict::from_bool(report.valid))
}

fn check_product(
    paths: &[PathBuf],
    kind: KindArg,
    u: Option<usize>,
    star: bool,
    out: &Output,
) -> digitop::Result<Verdict> {
    let images = paths
        .iter()
        .map(|p| read_image(p).map(|l| l.image()))
        .collect::<digitop::Result<Vec<_>>>()?;
    let binary = |what: &'static str| {
        if images.len() == 2 {
            Ok(())
        } else {
            Err(Error::Arity {
                what,
                expected: "2",
                found: images.len(),
            })
        }
    };
    let kind = match kind {
        KindArg::GStar => {
            binary("G_{k*}")?;
            let (rel, k_star) = g_star(&images[0], &images[1])?;
            let report = render::GStarReport::new(&rel, k_star);
            out.emit(&report, || render::g_star(&report));
            return Ok(Verdict::Holds);
        }
        KindArg::CStar => {
            binary("C_{k*}")?;
            let result = c_star(&images[0], &images[1])?;
            out.emit(&result, || render::c_star(&result));
            return Ok(Verdict::from_bool(result.adjacency.is_some()));
        }
        KindArg::Normal => ProductKind::Normal,
        KindArg::CCompatible => ProductKind::CCompatible,
        KindArg::Ap => ProductKind::Ap(u.ok_or_else(|| {
            Error::Precondition("--kind ap needs --u".into())
        })?),
    };
    let report = adjacency_existence(&product(images)?, kind)?;
    if star {
        let s = render::StarReport::new(&report);
        out.emit(&s, || render::star(&s));
    } else {
        out.emit(&report, || render::existence(&report));
    }
    Ok(Verdict::from_bool(report.exists()))
}

fn check_continuity(path: &Path, form: FormArg, out: &Output) -> digitop::Result<Verdict> {
    let file: MapFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let loaded = file.load(base)?;
    let domain_adj = loaded.domain.image().adjacency();
    let report = match form {
        FormArg::Pair => is_continuous_lattice(&loaded.map, domain_adj)?,
        FormArg::Neighborhood => is_continuous_lattice_neighborhood(&loaded.map, domain_adj)?,
        FormArg::ConnectedImage => {
            let n = loaded.map.domain().len();
            let continuous = connected_image_check(&loaded.map, domain_adj, n)?;
            let report = render::ConnectedReport { continuous };
            out.emit(&report, || render::connected(continuous));
            return Ok(Verdict::from_bool(continuous));
        }
    };
    out.emit(&report, || render::continuity(&report));
    Ok(Verdict::from_bool(report.continuous))
}

fn check_group(
    image_path: &Path,
    group: &str,
    structure: StructureArg,
    out: &Output,
) -> digitop::Result<Verdict> {
    let loaded = read_image(image_path)?;
    let file = if group == "cyclic" {
        GroupFile::Cyclic { cyclic: true }
    } else {
        serde_json::from_str(&std::fs::read_to_string(group)?)?
    };
    let g = file.load(&loaded)?;
    let image = loaded.image();
    let verdict = match structure {
        StructureArg::Dt => check_dt_group(&image, &g),
        StructureArg::Ap1 => check_ap1_group(&image, &g, false),
        StructureArg::Ap1Star => check_ap1_group(&image, &g, true),
        StructureArg::Ap2Probe => ap2_probe(Ap2Input::Image {
            image: &image,
            group: &g,
        }),
    };
    finish_group(verdict, out)
}

fn check_window(w: Window, structure: StructureArg, u: usize, out: &Output) -> digitop::Result<Verdict> {
    let verdict = match structure {
        StructureArg::Ap2Probe => ap2_probe(Ap2Input::Window(w)),
        StructureArg::Ap1 | StructureArg::Ap1Star => window_group_check(w.n, w.t, w.radius, u),
        StructureArg::Dt => {
            return Err(Error::Precondition(
                "windows support --structure ap1, ap1-star or ap2-probe".into(),
            ))
        }
    };
    finish_group(verdict, out)
}

fn finish_group(verdict: digitop::Result<digitop::GroupVerdict>, out: &Output) -> digitop::Result<Verdict> {
    match verdict {
        Ok(v) => {
            out.emit(&v, || render::group(&v));
            Ok(Verdict::from_bool(v.holds))
        }
        // A missing square adjacency refutes the probe; it is not an input error.
        Err(e @ Error::NoApAdjacency { .. }) => {
            let report = render::RefusedProbe {
                holds: false,
                reason: e.to_string(),
            };
            out.emit(&report, || format!("refuted: {}\n", report.reason));
            Ok(Verdict::Refuted)
        }
        Err(e) => Err(e),
    }
}

fn verify_corpus(
    dir: Option<&Path>,
    filter: Option<&str>,
    threads: Option<usize>,
    out: &Output,
) -> digitop::Result<Verdict> {
    let corpus = match dir {
        Some(d) => Corpus::from_dir(d)?,
        None => Corpus::embedded()?,
    };
    let summary = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?
            .install(|| corpus.run(filter)),
        None => corpus.run(filter),
    };
    out.emit(&summary, || summary.render_table());
    Ok(Verdict::from_bool(summary.all_passed()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn window_argument() {
        let w = parse_window("2, 1, 3").unwrap();
        assert_eq!((w.n, w.t, w.radius), (2, 1, 3));
        assert!(parse_window("2,1").is_err());
        assert!(parse_window("2,3,1").is_err());
        assert!(parse_window("a,1,1").is_err());
    }

    #[test]
    fn window_and_image_conflict() {
        let r = Cli::try_parse_from(["digitop", "check-group", "x.json", "cyclic", "--window", "1,1,1"]);
        assert!(r.is_err());
        let r = Cli::try_parse_from(["digitop", "check-group", "--window", "1,1,1"]);
        assert!(r.is_ok());
    }
}
