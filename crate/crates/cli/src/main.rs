//! `depthlab` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

mod report;
mod scene;
mod svg;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use depthlab::covering::{covering_median_search, uniqueness_test};
use depthlab::depth::{depth, depth_open, minimizing_halfspaces};
use depthlab::experiments::consistency_experiment;
use depthlab::regions::{alpha_star, region, Method, RegionKind, DEFAULT_K};
use depthlab::{MixtureMeasure, Point};
use serde_json::json;

use report::{emit_json, CliError};

#[derive(Parser)]
#[command(
    name = "depthlab",
    version,
    about = "Halfspace depth, trimmed regions and covering medians in the plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Depth and minimizing halfplanes at a point.
    Depth {
        #[command(flatten)]
        scene: SceneArgs,
        /// Query point as `x,y`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Depth region, floating body or open interior region.
    Region {
        #[command(flatten)]
        scene: SceneArgs,
        /// Comma-separated levels; `star` stands for the maximal depth.
        #[arg(long)]
        alpha: String,
        #[arg(long, value_enum, default_value_t = KindArg::Depth)]
        kind: KindArg,
        #[command(flatten)]
        method: MethodArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Search for a covering median.
    CoveringMedian {
        #[command(flatten)]
        scene: SceneArgs,
        /// Area threshold that stops the search.
        #[arg(long)]
        eps: Option<f64>,
        #[command(flatten)]
        method: MethodArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Runs a bundled example check.
    Verify {
        /// One of the names listed by `depthlab verify --help`.
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(verify::NAMES))]
        name: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sample consistency of empirical depth regions; CSV on stdout.
    Consistency {
        #[command(flatten)]
        scene: SceneArgs,
        /// Comma-separated levels in the scene's mass units.
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "100,400,1600")]
        ns: String,
        #[arg(long, default_value_t = 20)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Writes the summary and warnings as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SceneArgs {
    /// Scene JSON file or built-in name.
    #[arg(long)]
    scene: String,
    /// Rescales the scene to total mass 1.
    #[arg(long)]
    normalize: bool,
}

#[derive(Args)]
struct MethodArgs {
    /// Defaults to exact for atomic scenes, directional otherwise.
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Number of directions of the directional method.
    #[arg(long = "K", default_value_t = DEFAULT_K)]
    k: usize,
}

#[derive(Args)]
struct OutArgs {
    /// Writes the JSON report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Depth,
    Fb,
    Open,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Directional,
}

impl KindArg {
    fn kind(self) -> RegionKind {
        match self {
            KindArg::Depth => RegionKind::Depth,
            KindArg::Fb => RegionKind::FloatingBody,
            KindArg::Open => RegionKind::OpenInterior,
        }
    }
}

impl MethodArgs {
    fn resolve(&self, m: &MixtureMeasure) -> Result<Method, CliError> {
        match self.method {
            None => Ok(match Method::auto(m) {
                Method::Directional { .. } => Method::Directional { k: self.k },
                exact => exact,
            }),
            Some(MethodArg::Exact) if !m.is_atomic() => {
                Err(CliError::Usage("the exact method needs a purely atomic scene".into()))
            }
            Some(MethodArg::Exact) => Ok(Method::AtomicExact),
            Some(MethodArg::Directional) => Ok(Method::Directional { k: self.k }),
        }
    }
}

fn load(args: &SceneArgs) -> Result<MixtureMeasure, CliError> {
    let m = scene::load(&args.scene)?;
    Ok(if args.normalize { m.normalized() } else { m })
}

fn parse_point(s: &str) -> Result<Point, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || CliError::Usage(format!("point must be `x,y` with finite numbers, got `{s}`"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let x: f64 = parts[0].parse().map_err(|_| bad())?;
    let y: f64 = parts[1].parse().map_err(|_| bad())?;
    if !x.is_finite() || !y.is_finite() {
        return Err(bad());
    }
    Ok(Point::new(x, y))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad {what} `{p}`")))
        })
        .collect()
}

fn method_json(method: Method) -> serde_json::Value {
    match method {
        Method::AtomicExact => json!({"method": "exact"}),
        Method::Directional { k } => json!({"method": "directional", "K": k}),
    }
}

fn cmd_depth(scene: &SceneArgs, point: &str, out: &OutArgs) -> Result<(), CliError> {
    let m = load(scene)?;
    let x = parse_point(point)?;
    let set = minimizing_halfspaces(&m, x, 1e-9 * m.total_mass());
    let report = json!({
        "scene": scene.scene,
        "point": x,
        "depth": depth(&m, x),
        "depth_open": depth_open(&m, x),
        "total_mass": m.total_mass(),
        "minimizers": set.clusters,
    });
    if let Some(path) = &out.svg {
        let mut s = svg::Svg::new(&m);
        s.measure(&m);
        s.marker(x, "#d62728");
        s.save(path)?;
    }
    emit_json(&report, out.json.as_deref())
}

fn cmd_region(
    scene: &SceneArgs,
    alpha: &str,
    kind: KindArg,
    method: &MethodArgs,
    out: &OutArgs,
) -> Result<(), CliError> {
    let m = load(scene)?;
    let method = method.resolve(&m)?;
    let mut levels = Vec::new();
    for a in alpha.split(',').map(str::trim) {
        if a == "star" {
            levels.push(alpha_star(&m, method)?.value);
        } else {
            let v: f64 = a.parse().map_err(|_| CliError::Usage(format!("bad alpha `{a}`")))?;
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Usage(format!("alpha must be positive, got {a}")));
            }
            levels.push(v);
        }
    }
    let mut regions = Vec::new();
    let mut shapes = Vec::new();
    for &a in &levels {
        let r = region(&m, a, kind.kind(), method)?;
        regions.push(json!({
            "alpha": a,
            "shape": r.shape,
            "area": r.shape.area(),
            "unbounded": r.unbounded,
            "degenerate_search": r.degenerate_search,
        }));
        shapes.push(r.shape);
    }
    let report = json!({
        "scene": scene.scene,
        "kind": kind.kind(),
        "method": method_json(method),
        "regions": regions,
    });
    if let Some(path) = &out.svg {
        let mut s = svg::Svg::new(&m);
        s.measure(&m);
        for (i, sh) in shapes.iter().enumerate() {
            s.shape(sh, svg::PALETTE[i % svg::PALETTE.len()]);
        }
        s.save(path)?;
    }
    emit_json(&report, out.json.as_deref())
}

fn cmd_covering_median(
    scene: &SceneArgs,
    eps: Option<f64>,
    method: &MethodArgs,
    out: &OutArgs,
) -> Result<(), CliError> {
    let m = load(scene)?;
    let method = method.resolve(&m)?;
    if let Some(e) = eps {
        if !(e.is_finite() && e > 0.0) {
            return Err(CliError::Usage(format!("eps must be positive, got {e}")));
        }
    }
    let r = covering_median_search(&m, method, eps)?;
    let uniqueness = r.covers.then(|| uniqueness_test(&m, r.point, r.gamma_star));
    let report = json!({
        "scene": scene.scene,
        "method": method_json(method),
        "point": r.point,
        "covers": r.covers,
        "iterations": r.iterations,
        "alpha_star": r.alpha_star,
        "gamma_star": r.gamma_star,
        "depth": depth(&m, r.point),
        "decay_ok": r.decay_ok,
        "stopped_on_area": r.stopped_on_area,
        "barycentres": r.barycentres,
        "halfplanes": r.halfplanes,
        "areas": r.areas,
        "uniqueness": uniqueness,
    });
    if let Some(path) = &out.svg {
        let mut s = svg::Svg::new(&m);
        s.measure(&m);
        s.shape(&r.start_region, svg::PALETTE[0]);
        s.path(&r.barycentres, "#555555");
        s.marker(r.point, "#d62728");
        s.save(path)?;
    }
    emit_json(&report, out.json.as_deref())
}

fn cmd_consistency(
    scene: &SceneArgs,
    alpha: &str,
    ns: &str,
    reps: usize,
    seed: u64,
    json_path: Option<&std::path::Path>,
) -> Result<(), CliError> {
    let m = load(scene)?;
    let alphas: Vec<f64> = parse_list(alpha, "alpha")?;
    if alphas.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
        return Err(CliError::Usage("alpha values must be positive".into()));
    }
    let ns: Vec<usize> = parse_list(ns, "sample size")?;
    if reps == 0 || ns.contains(&0) {
        return Err(CliError::Usage("sample sizes and replications must be positive".into()));
    }
    let table = consistency_experiment(&m, &alphas, &ns, reps, seed)?;
    for w in &table.warnings {
        eprintln!("warning: {w}");
    }
    report::stdout(&table.to_csv())?;
    if let Some(path) = json_path {
        let report = json!({
            "scene": scene.scene,
            "summary": table.summary,
            "warnings": table.warnings,
            "strictly_decreasing": table.strictly_decreasing(),
        });
        emit_json(&report, Some(path))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Depth { scene, point, out } => cmd_depth(&scene, &point, &out),
        Command::Region {
            scene,
            alpha,
            kind,
            method,
            out,
        } => cmd_region(&scene, &alpha, kind, &method, &out),
        Command::CoveringMedian {
            scene,
            eps,
            method,
            out,
        } => cmd_covering_median(&scene, eps, &method, &out),
        Command::Verify { name, seed, json } => verify::run(&name, seed, json.as_deref()),
        Command::Consistency {
            scene,
            alpha,
            ns,
            reps,
            seed,
            json,
        } => cmd_consistency(&scene, &alpha, &ns, reps, seed, json.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
