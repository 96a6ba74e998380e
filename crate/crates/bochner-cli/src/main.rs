use std::path::PathBuf;
use std::process::ExitCode;

use bochner::classification::{
    cells_containing, char_poly_pc, classify_cells, construct_from_cell, orbifold_case40,
    orbifold_roots, reduced_momentum, reduced_polys, verdict, CaseVerdict, Face, MomentumCell,
};
use bochner::curvature_verifier::{curvature_report, CurvatureRecord};
use bochner::explicit_metrics::{
    dim1_suite, grho_metric, leaf_metric, rotsym_metric, weighted_reduction_metric, wps_metric,
    Branch, MetricField, RotSymParams,
};
use bochner::geodesic_ode::{
    admissible_direction, conserved_drift, constant_factor_check, integrate, ConstantFactorReport,
};
use bochner::structure_space::{
    conserved_ck, invariants_phi, normal_form, symmetry_dims, CVec, InvariantVector,
    StructurePointRecord, SymmetryDims,
};
use bochner::{RealPolynomial, StructurePoint, Tolerances};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

mod failure;
mod plot;
mod sample;

use failure::Failure;

const DEFAULT_SEED: u64 = 20_240_917;
const VERIFY_CSV_VERSION: &str = "# bochner-verify v1";

#[derive(Parser, Debug)]
#[command(
    name = "bochner",
    version,
    about = "Bochner-Kähler classification and verification toolkit"
)]
struct Cli {
    /// JSON input file (a structure point, or construct parameters)
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Relative tolerance for merging eigenvalues
    #[arg(long, global = true)]
    tol_cluster: Option<f64>,
    /// Base finite-difference step for the curvature verifier
    #[arg(long, global = true)]
    fd_step: Option<f64>,
    /// Seed for sampled points
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form, invariants, polynomials, cell and verdict of a point
    Classify(PointArgs),
    /// Build a point from p_C, p_D, μ and reduced momentum k
    Construct(ConstructArgs),
    /// All momentum cells of p_D
    Cells(CellsArgs),
    /// Finite-difference curvature reports for an explicit metric family
    Verify(VerifyArgs),
    /// Integrate the structure equations along a direction
    Geodesic(GeodesicArgs),
    /// Root pattern, components and periods of t³ + C₂t + C₃
    Dim1(Dim1Args),
    /// Polynomials of the compact orbifold cells
    Orbifold(OrbifoldArgs),
}

#[derive(Args, Debug)]
struct PointArgs {
    /// Diagonal of H (real), used when no --input is given
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    h: Option<Vec<f64>>,
    /// Real T, same length as --h
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    t: Option<Vec<f64>>,
    #[arg(long, allow_hyphen_values = true)]
    v: Option<f64>,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// Coefficients of p_C, leading first
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    pc: Option<Vec<f64>>,
    /// Coefficients of p_D, leading first
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    pd: Option<Vec<f64>>,
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    mu: Option<Vec<usize>>,
    /// Reduced momentum (h'_1, ..., h'_m)
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    k: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct CellsArgs {
    /// Coefficients of p_D, leading first
    #[arg(
        long,
        allow_hyphen_values = true,
        value_delimiter = ',',
        conflicts_with = "roots"
    )]
    pd: Option<Vec<f64>>,
    /// Roots of a monic p_D (repeat a root for multiplicity)
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    roots: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Rotsym,
    Grho,
    Wps,
    Leaf,
    Reduction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    One,
    Two,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Number of sample points
    #[arg(long, default_value_t = 10)]
    points: usize,
    /// rotsym: complex dimension
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// rotsym: k
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    k: f64,
    /// rotsym: a
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    a: f64,
    #[arg(long, value_enum, default_value_t = BranchArg::One)]
    branch: BranchArg,
    /// grho and wps: the weights ρ
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    rho: Option<Vec<f64>>,
    /// reduction: the three weights
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    weights: Option<Vec<f64>>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.5)]
    level: f64,
    /// reduction: the homogeneous coordinate set to 1
    #[arg(long, default_value_t = 0)]
    chart: usize,
    /// leaf: simple roots of p_D
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    roots: Option<Vec<f64>>,
    /// leaf: index of the cell in the `cells` listing
    #[arg(long, default_value_t = 0)]
    cell: usize,
    /// grho, wps, reduction: half width of the sampling box per coordinate
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.8)]
    half_width: f64,
}

#[derive(Args, Debug)]
struct GeodesicArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Real parts of the direction w
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    w: Vec<f64>,
    /// Imaginary parts of w
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    w_im: Option<Vec<f64>>,
    #[arg(long, allow_hyphen_values = true)]
    length: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1e-3)]
    step: f64,
    /// Replace w by the nearest admissible direction before integrating
    #[arg(long)]
    project: bool,
}

#[derive(Args, Debug)]
struct Dim1Args {
    #[arg(long, allow_hyphen_values = true)]
    c2: f64,
    #[arg(long, allow_hyphen_values = true)]
    c3: f64,
}

#[derive(Args, Debug)]
struct OrbifoldArgs {
    #[arg(long, allow_hyphen_values = true)]
    r: f64,
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    p: Vec<u64>,
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    nu: Vec<u64>,
}

struct Ctx {
    input: Option<PathBuf>,
    tol: Tolerances,
    fd_step: Option<f64>,
    seed: u64,
    format: Option<Format>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("{}", Failure::usage(e.to_string().trim_end()).record());
            return ExitCode::from(failure::USAGE as u8);
        }
    };
    let output = cli.output.clone();
    match run(cli).and_then(|text| emit(output.as_ref(), &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.record());
            ExitCode::from(f.exit as u8)
        }
    }
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<String, Failure> {
    let mut tol = Tolerances::default();
    if let Some(c) = cli.tol_cluster {
        if !(c > 0.0) {
            return Err(Failure::usage("--tol-cluster must be positive"));
        }
        tol.cluster = c;
    }
    if let Some(h) = cli.fd_step {
        if !(h > 0.0) {
            return Err(Failure::usage("--fd-step must be positive"));
        }
    }
    if let Some(p) = &cli.input {
        if !p.is_file() {
            return Err(Failure::usage(format!(
                "input file {} does not exist",
                p.display()
            )));
        }
    }
    let ctx = Ctx {
        input: cli.input,
        tol,
        fd_step: cli.fd_step,
        seed: cli.seed,
        format: cli.format,
    };
    match cli.command {
        Command::Classify(a) => classify(&ctx, &a),
        Command::Construct(a) => construct(&ctx, &a),
        Command::Cells(a) => cells(&ctx, &a),
        Command::Verify(a) => verify(&ctx, &a),
        Command::Geodesic(a) => geodesic(&ctx, &a),
        Command::Dim1(a) => dim1(&ctx, &a),
        Command::Orbifold(a) => orbifold(&ctx, &a),
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn only_json(ctx: &Ctx, command: &str) -> Result<(), Failure> {
    match ctx.format {
        None | Some(Format::Json) => Ok(()),
        Some(f) => Err(Failure::usage(format!("{command} has no {f:?} output"))),
    }
}

fn read_point(ctx: &Ctx, a: &PointArgs) -> Result<StructurePoint, Failure> {
    if let Some(path) = &ctx.input {
        if a.h.is_some() || a.t.is_some() || a.v.is_some() {
            return Err(Failure::usage(
                "give either --input or --h/--t/--v, not both",
            ));
        }
        let rec: StructurePointRecord = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        return Ok(StructurePoint::try_from(&rec)?);
    }
    match (&a.h, &a.t, a.v) {
        (Some(h), Some(t), Some(v)) => Ok(StructurePoint::diagonal(h, t, v)?),
        _ => Err(Failure::usage(
            "a point needs --input or all of --h, --t, --v",
        )),
    }
}

/// One momentum cell as written in reports. Infinite band ends are `null`.
#[derive(Serialize, Deserialize)]
struct CellRecord {
    case: String,
    mu: Vec<usize>,
    roots: Vec<f64>,
    mults: Vec<usize>,
    bands: Vec<BandRecord>,
    faces: Vec<Face>,
    verdict: CaseVerdict,
}

#[derive(Serialize, Deserialize)]
struct BandRecord {
    lo: Option<f64>,
    hi: Option<f64>,
    lo_closed: bool,
    hi_closed: bool,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl From<&MomentumCell> for CellRecord {
    fn from(c: &MomentumCell) -> Self {
        Self {
            case: c.case.to_string(),
            mu: c.mu.clone(),
            roots: c.roots.clone(),
            mults: c.mults.clone(),
            bands: c
                .bands
                .iter()
                .map(|b| BandRecord {
                    lo: finite(b.lo),
                    hi: finite(b.hi),
                    lo_closed: b.lo_closed,
                    hi_closed: b.hi_closed,
                })
                .collect(),
            faces: c.faces.clone(),
            verdict: verdict(c),
        }
    }
}

#[derive(Serialize)]
struct ClassifyReport {
    n: usize,
    normal_form: StructurePointRecord,
    phi: InvariantVector,
    /// `C_2, ..., C_{n+2}`
    c: Vec<f64>,
    /// polynomial coefficients, leading first
    p_c: Vec<f64>,
    p_d: Vec<f64>,
    p_hpp: Vec<f64>,
    m: usize,
    dims: SymmetryDims,
    k: Vec<f64>,
    /// closed cells containing `k`; one unless `k` sits on a shared face
    cells: Vec<CellRecord>,
}

fn classify(ctx: &Ctx, a: &PointArgs) -> Result<String, Failure> {
    only_json(ctx, "classify")?;
    let p = read_point(ctx, a)?;
    let rp = reduced_polys(&p, &ctx.tol)?;
    let k = reduced_momentum(&p, &ctx.tol)?;
    let cells = cells_containing(&rp.p_d, &k, &ctx.tol)?;
    if cells.is_empty() {
        return Err(Failure {
            exit: failure::NUMERICAL,
            kind: "inconsistent",
            message: format!("reduced momentum {k:?} lies in no cell of p_D"),
        });
    }
    json(&ClassifyReport {
        n: p.n(),
        normal_form: normal_form(&p, &ctx.tol).point.to_record(),
        phi: invariants_phi(&p),
        c: conserved_ck(&p).c,
        p_c: char_poly_pc(&p).coeffs().to_vec(),
        p_d: rp.p_d.coeffs().to_vec(),
        p_hpp: rp.p_hpp.coeffs().to_vec(),
        m: rp.m,
        dims: symmetry_dims(&p, &ctx.tol),
        k,
        cells: cells.iter().map(CellRecord::from).collect(),
    })
}

/// Construct parameters from a file; a `classify` report is accepted as is.
#[derive(Deserialize)]
struct ConstructInput {
    p_c: Vec<f64>,
    p_d: Vec<f64>,
    k: Vec<f64>,
    #[serde(default)]
    mu: Option<Vec<usize>>,
    #[serde(default)]
    cells: Vec<MuOnly>,
}

#[derive(Deserialize)]
struct MuOnly {
    mu: Vec<usize>,
}

#[derive(Serialize)]
struct ConstructReport {
    case: String,
    point: StructurePointRecord,
    phi: InvariantVector,
    c: Vec<f64>,
}

fn construct(ctx: &Ctx, a: &ConstructArgs) -> Result<String, Failure> {
    only_json(ctx, "construct")?;
    let (pc, pd, k, mu) = match &ctx.input {
        Some(path) => {
            let inp: ConstructInput = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let mu =
                a.mu.clone()
                    .or(inp.mu)
                    .or_else(|| inp.cells.into_iter().next().map(|c| c.mu));
            (inp.p_c, inp.p_d, inp.k, mu)
        }
        None => match (&a.pc, &a.pd, &a.k) {
            (Some(pc), Some(pd), Some(k)) => (pc.clone(), pd.clone(), k.clone(), a.mu.clone()),
            _ => {
                return Err(Failure::usage(
                    "construct needs --input or all of --pc, --pd, --k",
                ))
            }
        },
    };
    let pc = RealPolynomial::new(pc);
    let pd = RealPolynomial::new(pd);
    let all = classify_cells(&pd)?;
    let cell = match mu {
        Some(mu) => all
            .into_iter()
            .find(|c| c.mu == mu)
            .ok_or_else(|| Failure::usage(format!("p_D has no cell with mu = {mu:?}")))?,
        None => {
            let mut found = cells_containing(&pd, &k, &ctx.tol)?;
            if found.len() != 1 {
                return Err(Failure::usage(format!(
                    "k lies in {} cells; pass --mu to choose one",
                    found.len()
                )));
            }
            found.remove(0)
        }
    };
    let p = construct_from_cell(&pc, &pd, &cell, &k, &ctx.tol)?;
    json(&ConstructReport {
        case: cell.case.to_string(),
        point: p.to_record(),
        phi: invariants_phi(&p),
        c: conserved_ck(&p).c,
    })
}

fn cells(ctx: &Ctx, a: &CellsArgs) -> Result<String, Failure> {
    let pd = match (&a.pd, &a.roots) {
        (Some(c), None) => RealPolynomial::new(c.clone()),
        (None, Some(r)) => RealPolynomial::from_roots(r),
        _ => return Err(Failure::usage("cells needs --pd or --roots")),
    };
    let cells = classify_cells(&pd)?;
    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => json(&cells.iter().map(CellRecord::from).collect::<Vec<_>>()),
        Format::Csv => Ok(plot::cell_plot(&cells)?.to_csv()),
        Format::Svg => Ok(plot::cell_plot(&cells)?.to_svg()),
    }
}

#[derive(Serialize)]
struct VerifyReport {
    family: String,
    seed: u64,
    fd_step: Option<f64>,
    points: usize,
    max_residual: f64,
    max_symmetry_defect: f64,
    reports: Vec<CurvatureRecord>,
}

fn verify(ctx: &Ctx, a: &VerifyArgs) -> Result<String, Failure> {
    if a.points == 0 {
        return Err(Failure::usage("--points must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let weights = |name: &str, v: &Option<Vec<f64>>| {
        v.clone().ok_or_else(|| {
            Failure::usage(format!(
                "family {name} needs --{}",
                if name == "reduction" {
                    "weights"
                } else {
                    "rho"
                }
            ))
        })
    };
    let (field, pts): (MetricField, Vec<Vec<Complex64>>) = match a.family {
        Family::Rotsym => {
            let branch = match a.branch {
                BranchArg::One => Branch::TypeOne,
                BranchArg::Two => Branch::TypeTwo,
            };
            let params = RotSymParams::new(a.n, a.k, a.a, branch)?;
            (
                rotsym_metric(&params)?,
                sample::rotsym_points(&params, &mut rng, a.points),
            )
        }
        Family::Grho | Family::Wps | Family::Reduction => {
            let field = match a.family {
                Family::Grho => grho_metric(&weights("grho", &a.rho)?)?,
                Family::Wps => wps_metric(&weights("wps", &a.rho)?)?,
                _ => {
                    let w = weights("reduction", &a.weights)?;
                    let w: [f64; 3] = w
                        .try_into()
                        .map_err(|_| Failure::usage("--weights takes exactly three values"))?;
                    weighted_reduction_metric(w, a.level, a.chart)?
                }
            };
            if !(a.half_width > 0.0) {
                return Err(Failure::usage("--half-width must be positive"));
            }
            let pts = sample::box_points(&field, &mut rng, a.points, a.half_width)?;
            (field, pts)
        }
        Family::Leaf => {
            let roots = a
                .roots
                .as_ref()
                .ok_or_else(|| Failure::usage("family leaf needs --roots"))?;
            let cells = classify_cells(&RealPolynomial::from_roots(roots))?;
            let cell = cells.get(a.cell).ok_or_else(|| {
                Failure::usage(format!(
                    "p_D has {} cells, --cell {} is out of range",
                    cells.len(),
                    a.cell
                ))
            })?;
            let anchor = sample::cell_anchor(cell);
            let chart = leaf_metric(cell, &anchor, &ctx.tol)?;
            let pts = sample::leaf_points(&chart, cell, &mut rng, a.points)?;
            (chart.metric_field(), pts)
        }
    };
    let reports = pts
        .iter()
        .map(|z| curvature_report(&field, z, ctx.fd_step))
        .collect::<bochner::Result<Vec<_>>>()?;
    let max_residual = reports
        .iter()
        .map(|r| r.bochner_residual)
        .fold(0.0, f64::max);
    let max_symmetry_defect = reports
        .iter()
        .map(|r| r.symmetry_defect)
        .fold(0.0, f64::max);
    match ctx.format.unwrap_or(Format::Json) {
        Format::Json => json(&VerifyReport {
            family: field.label().to_string(),
            seed: ctx.seed,
            fd_step: ctx.fd_step,
            points: reports.len(),
            max_residual,
            max_symmetry_defect,
            reports: reports.iter().map(|r| r.to_record()).collect(),
        }),
        Format::Csv => {
            let q = field.dim();
            let mut cols = vec!["point".to_string()];
            for i in 1..=q {
                cols.push(format!("z{i}_re"));
                cols.push(format!("z{i}_im"));
            }
            cols.extend(["bochner_residual", "symmetry_defect", "scalar"].map(String::from));
            cols.extend((1..=q).map(|i| format!("ricci{i}")));
            cols.extend((1..=q).map(|i| format!("h{i}")));
            let mut out = format!("{VERIFY_CSV_VERSION}\n{}\n", cols.join(","));
            for (i, r) in reports.iter().enumerate() {
                let mut row = vec![i.to_string()];
                for c in &r.z {
                    row.push(format!("{:.17e}", c.re));
                    row.push(format!("{:.17e}", c.im));
                }
                let nums = [r.bochner_residual, r.symmetry_defect, r.scalar]
                    .into_iter()
                    .chain(r.ricci_eigenvalues.iter().copied())
                    .chain(r.momentum.h.iter().copied());
                row.extend(nums.map(|x| format!("{x:.17e}")));
                out.push_str(&row.join(","));
                out.push('\n');
            }
            Ok(out)
        }
        Format::Svg => Err(Failure::usage("verify has no svg output")),
    }
}

#[derive(Serialize)]
struct DriftReport {
    length: f64,
    step: f64,
    samples: usize,
    /// max over the path of `|C_k(s) - C_k(0)|`, k = 2..n+2
    drift: Vec<f64>,
    max_drift: f64,
    max_symmetrization_defect: f64,
    constant_factor: Option<ConstantFactorReport>,
    /// why `constant_factor` is missing, when it is
    constant_factor_note: Option<String>,
}

fn geodesic(ctx: &Ctx, a: &GeodesicArgs) -> Result<String, Failure> {
    let p = read_point(ctx, &a.point)?;
    let im = a.w_im.clone().unwrap_or_else(|| vec![0.0; a.w.len()]);
    if im.len() != a.w.len() {
        return Err(Failure::usage("--w and --w-im differ in length"));
    }
    let w = CVec::from_iterator(
        a.w.len(),
        a.w.iter().zip(&im).map(|(r, i)| Complex64::new(*r, *i)),
    );
    let w = if a.project {
        admissible_direction(&p, &w, &ctx.tol)?
    } else {
        w
    };
    let path = integrate(&p, &w, a.length, a.step)?;
    let drift = conserved_drift(&path);
    let (constant_factor, constant_factor_note) = match constant_factor_check(&path, &ctx.tol) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let report = DriftReport {
        length: a.length,
        step: a.step,
        samples: path.samples.len(),
        max_drift: drift.iter().copied().fold(0.0, f64::max),
        drift,
        max_symmetrization_defect: path.max_symmetrization_defect,
        constant_factor,
        constant_factor_note,
    };
    match ctx.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            // the path goes to the output, the drift report to stderr
            eprintln!("{}", serde_json::to_string(&report)?);
            Ok(path.to_csv())
        }
        Format::Json => json(&report),
        Format::Svg => Err(Failure::usage("geodesic has no svg output")),
    }
}

fn dim1(ctx: &Ctx, a: &Dim1Args) -> Result<String, Failure> {
    only_json(ctx, "dim1")?;
    json(&dim1_suite(a.c2, a.c3)?)
}

#[derive(Serialize)]
struct OrbifoldReport {
    r: f64,
    p: Vec<u64>,
    nu: Vec<u64>,
    roots: Vec<f64>,
    p_d: Vec<f64>,
    p_c: Vec<f64>,
}

fn orbifold(ctx: &Ctx, a: &OrbifoldArgs) -> Result<String, Failure> {
    only_json(ctx, "orbifold")?;
    if a.p.len() != a.nu.len() {
        return Err(Failure::usage("--p and --nu differ in length"));
    }
    let (p_d, p_c) = orbifold_case40(a.r, &a.p, &a.nu)?;
    json(&OrbifoldReport {
        r: a.r,
        p: a.p.clone(),
        nu: a.nu.clone(),
        roots: orbifold_roots(a.r, &a.p, &a.nu),
        p_d: p_d.coeffs().to_vec(),
        p_c: p_c.coeffs().to_vec(),
    })
}
