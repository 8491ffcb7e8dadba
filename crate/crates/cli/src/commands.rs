use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::sync::Arc;

use camc_core::analysis::{tilted_cyclic_surface, CertificateTolerances, FrenetCurve};
use camc_core::energy::{discrete_graph_energy, surface_energy_quadrature, ScalarFn, ScalarGrid};
use camc_core::families::{normalize_by_rotation, schwarz_extend};
use camc_core::odes::first_integral_for_mode;
use camc_core::{
    camc_certificate, cyclic_surface, dirichlet_energy, domain_interval, family_profile, fmt_real, hyperboloid_energy,
    integrate, isotropic_energy, rotational_solution, AxiallySymmetricEnergy, CamcError, CyclicFamilyParams,
    CyclicOdeState, FamilyKind, GridSpec, Interval, JetMode, MeshExport, OdeMode, ParametricSurface, Termination, V3,
};
use serde::Serialize;

use crate::args::*;

/// Failure that maps to exit status 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(CamcError),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "error: {e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<CamcError> for CliError {
    fn from(e: CamcError) -> Self {
        CliError::Core(e)
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

/// What a command produced: the bytes to emit and the exit status.
pub struct Outcome {
    pub body: String,
    pub status: i32,
    pub note: Option<String>,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self { body, status: 0, note: None }
    }
}

fn apply_preset(preset: Option<Preset>, s: &SurfaceArgs) -> Result<SurfaceArgs, CliError> {
    let mut s = s.clone();
    let (family, lambda, c) = match preset {
        None => return Ok(s),
        Some(Preset::Fig1) => (Family::Type1, 2.0, 1.0),
        Some(Preset::Fig2) => (Family::Type2, 1.0, 0.0),
        // the caption's c = 0 is outside the Type III parameter range
        Some(Preset::Fig3) => (Family::Type3, 1.0, 1.0),
        Some(Preset::Fig4) => return usage("fig4 is a cross-section preset; use `crosssection fig4`"),
    };
    s.family.get_or_insert(family);
    s.lambda.get_or_insert(lambda);
    s.mu.get_or_insert(0.0);
    s.c.get_or_insert(c);
    Ok(s)
}

fn cyclic_params(kind: FamilyKind, s: &SurfaceArgs) -> Result<CyclicFamilyParams, CliError> {
    let lambda = s.lambda.unwrap_or(1.0);
    let mu = s.mu.unwrap_or(0.0);
    let c = s.c.unwrap_or(1.0);
    Ok(CyclicFamilyParams::new(kind, lambda, mu, c)?)
}

fn family_kind(f: Family) -> Option<FamilyKind> {
    match f {
        Family::Type1 => Some(FamilyKind::TypeI),
        Family::Type2 => Some(FamilyKind::TypeII),
        Family::Type3 => Some(FamilyKind::TypeIII),
        _ => None,
    }
}

/// Default s-range well inside the open domain of each family.
fn default_range(params: &CyclicFamilyParams) -> (f64, f64) {
    let dom = domain_interval(params);
    match params.kind {
        FamilyKind::TypeI => {
            let mid = 0.5 * (dom.lo + dom.hi);
            let h = 0.9 * FRAC_PI_2 / params.c.abs();
            (mid - h, mid + h)
        }
        FamilyKind::TypeII => (dom.lo + 0.1, dom.lo + 4.0),
        FamilyKind::TypeIII => (0.1 / params.c.abs(), 3.0 / params.c.abs()),
    }
}

struct Built {
    surface: ParametricSurface,
    domain: Interval,
    range: (f64, f64),
    cyclic: Option<CyclicFamilyParams>,
    lambda0: Option<f64>,
    provenance: Vec<(String, String)>,
}

fn constant_fn(v: f64) -> ScalarFn {
    Arc::new(move |_| v)
}

fn build_surface(s: &SurfaceArgs) -> Result<Built, CliError> {
    let Some(family) = s.family else {
        return usage("a surface is required: give a preset or --family");
    };
    let mut provenance = vec![("family".to_string(), format!("{family:?}").to_lowercase())];
    let mut built = if let Some(kind) = family_kind(family) {
        let p = cyclic_params(kind, s)?;
        provenance.extend([
            ("lambda".to_string(), fmt_real(p.lambda)),
            ("mu".to_string(), fmt_real(p.mu)),
            ("c".to_string(), fmt_real(p.c)),
        ]);
        Built {
            surface: cyclic_surface(&p),
            domain: domain_interval(&p),
            range: default_range(&p),
            cyclic: Some(p),
            lambda0: Some(0.0),
            provenance,
        }
    } else if family == Family::Tilted {
        let curve = match s.curve {
            CurveKind::Arc => FrenetCurve::circular_arc_xz(s.curve_radius),
            CurveKind::Helix => FrenetCurve::helix(s.curve_radius, s.pitch, Interval::open(-50.0, 50.0)),
            CurveKind::Line => FrenetCurve::straight_line(V3::zeros(), V3::x(), Interval::open(-50.0, 50.0)),
        };
        let surf =
            tilted_cyclic_surface(&curve, constant_fn(s.tube_radius), (constant_fn(0.0), constant_fn(0.0)), s.fd_step)?;
        provenance.extend([
            ("curve".to_string(), curve.label().to_string()),
            ("tube_radius".to_string(), fmt_real(s.tube_radius)),
        ]);
        Built { surface: surf, domain: curve.span(), range: (-2.0, 2.0), cyclic: None, lambda0: None, provenance }
    } else {
        let (c1, c2, lam) = match family {
            Family::Paraboloid => (0.0, 0.0, 8.0),
            Family::Log => (1.0, 0.0, 0.0),
            _ => (s.c1.unwrap_or(0.0), s.c2.unwrap_or(0.0), s.lambda0.unwrap_or(0.0)),
        };
        let prof = rotational_solution(c1, c2, lam);
        provenance.extend([
            ("c1".to_string(), fmt_real(c1)),
            ("c2".to_string(), fmt_real(c2)),
            ("lambda_camc".to_string(), fmt_real(lam)),
        ]);
        Built {
            surface: prof.surface(),
            domain: Interval::open(0.0, f64::INFINITY),
            range: (0.1, 3.0),
            cyclic: None,
            lambda0: Some(lam),
            provenance,
        }
    };
    if s.mode == Mode::Fd && built.surface.has_analytic_jet() {
        built.surface = built.surface.clone().with_jet_mode(JetMode::FiniteDifference { step: s.fd_step })?;
        built.provenance.push(("mode".to_string(), format!("fd h={}", fmt_real(s.fd_step))));
    }
    if let Some(l0) = s.lambda0 {
        built.lambda0 = Some(l0);
    }
    Ok(built)
}

fn build_grid(g: &GridArgs, built: &Built, ns: usize, ntheta: usize) -> Result<GridSpec, CliError> {
    if !(g.margin >= 0.0) {
        return usage("--margin must be non-negative");
    }
    let smin = g.smin.unwrap_or(built.range.0);
    let smax = g.smax.unwrap_or(built.range.1);
    let grid = GridSpec::cyclic(smin, smax, g.ns.unwrap_or(ns), g.ntheta.unwrap_or(ntheta)).with_margin(g.margin);
    grid.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    grid.validate_within(&built.domain)?;
    Ok(grid)
}

fn energy_of(kind: EnergyKind) -> AxiallySymmetricEnergy {
    match kind {
        EnergyKind::Dirichlet => dirichlet_energy(),
        EnergyKind::Hyperboloid => hyperboloid_energy(),
        EnergyKind::Isotropic => isotropic_energy(),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn generate(a: &GenerateArgs, header: &str) -> Result<Outcome, CliError> {
    let s = apply_preset(a.preset, &a.surface)?;
    let built = build_surface(&s)?;
    let grid = build_grid(&a.grid, &built, 101, 64)?;
    let copies = a.extend.unwrap_or(if a.preset.is_some() { 2 } else { 1 });
    if copies == 0 {
        return usage("--extend must be at least 1");
    }
    let pieces = match (built.cyclic, copies) {
        (_, 1) => vec![built.surface.clone()],
        (Some(p), k) => {
            let ext = match p.kind {
                FamilyKind::TypeI => schwarz_extend(&p, k)?,
                _ if k == 2 => schwarz_extend(&p, 1)?,
                _ => return usage("Types II and III extend to exactly 2 pieces"),
            };
            if s.mode == Mode::Fd {
                ext.pieces
                    .into_iter()
                    .map(|pc| pc.with_jet_mode(JetMode::FiniteDifference { step: s.fd_step }))
                    .collect::<Result<_, _>>()?
            } else {
                ext.pieces
            }
        }
        (None, _) => return usage("--extend applies to the cyclic families only"),
    };
    let mut provenance = built.provenance.clone();
    provenance.push((
        "grid".to_string(),
        format!("s in [{}, {}], ns={}, ntheta={}", fmt_real(grid.s_min), fmt_real(grid.s_max), grid.n_s, grid.n_theta),
    ));
    provenance.push(("pieces".to_string(), pieces.len().to_string()));
    let mut mesh = MeshExport { vertices: vec![], faces: vec![], provenance };
    for piece in &pieces {
        let m = MeshExport::tessellate(piece, &grid, vec![])?;
        let off = mesh.vertices.len();
        mesh.vertices.extend(m.vertices);
        mesh.faces.extend(m.faces.into_iter().map(|f| f.map(|k| k + off)));
    }
    mesh.validate()?;
    match a.output.format.unwrap_or(Format::Obj) {
        Format::Obj => Ok(Outcome::ok(mesh.to_obj(header))),
        Format::Json => Ok(Outcome::ok(to_json(&mesh)?)),
        Format::Csv => usage("generate writes obj or json"),
    }
}

pub fn check(a: &CheckArgs) -> Result<Outcome, CliError> {
    let s = apply_preset(a.preset, &a.surface)?;
    let built = build_surface(&s)?;
    let grid = build_grid(&a.grid, &built, 101, 64)?;
    let tol_abs = a.tol.unwrap_or(if s.mode == Mode::Fd { 1e-4 } else { 1e-6 });
    if !(tol_abs > 0.0) {
        return usage("--tol must be positive");
    }
    let tol = CertificateTolerances {
        lambda_abs: tol_abs,
        fourier_abs: tol_abs,
        mode_cutoff: a.modes,
        nu3_floor: a.nu3_floor,
    };
    let report = camc_certificate(&built.surface, &energy_of(a.energy), &grid, built.lambda0, &tol)?;
    let status = if report.pass { 0 } else { 1 };
    let note = format!(
        "{}: max |Lambda - {}| = {:e} over {} nodes ({} excluded)",
        if report.pass { "PASS" } else { "FAIL" },
        fmt_real(report.target),
        report.max_abs_dev,
        report.admissible_nodes,
        report.excluded_nodes
    );
    Ok(Outcome { body: to_json(&report)?, status, note: Some(note) })
}

pub fn integrate_cmd(a: &IntegrateArgs) -> Result<Outcome, CliError> {
    if !(a.step > 0.0 && a.step.is_finite()) {
        return usage(format!("--step must be positive, got {}", a.step));
    }
    let mode = match a.ode {
        OdeKind::Anisotropic => OdeMode::Anisotropic,
        OdeKind::Isotropic => OdeMode::Isotropic,
    };
    let init = match (a.family, a.r0) {
        (Some(f), None) => {
            let Some(kind) = family_kind(f) else {
                return usage("--family for integrate must be type1, type2 or type3");
            };
            let p = CyclicFamilyParams::new(kind, a.lambda, a.mu, a.c.unwrap_or(1.0))?;
            CyclicOdeState::from_profile(&p, a.s0)?
        }
        (None, Some(r0)) => CyclicOdeState::new(a.s0, r0, a.rp0, a.a0, a.b0),
        (Some(_), Some(_)) => return usage("give either --family or --r0, not both"),
        (None, None) => return usage("an initial state is required: --family or --r0"),
    };
    let traj = integrate(init, a.lambda, a.mu, mode, a.s_end, a.step)?;
    let body = match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => traj.to_csv(),
        Format::Json => to_json(&traj)?,
        Format::Obj => return usage("integrate writes csv or json"),
    };
    let (status, note) = match traj.termination {
        Termination::Completed => {
            let c1 = first_integral_for_mode(traj.last(), a.lambda, a.mu, mode)?;
            (0, format!("completed at s = {}, first integral {}", fmt_real(traj.last().s), fmt_real(c1)))
        }
        t => (2, format!("error: integration stopped early: {t:?}")),
    };
    Ok(Outcome { body, status, note: Some(note) })
}

#[derive(Serialize)]
struct Polyline {
    family: String,
    curve: String,
    points: Vec<[f64; 2]>,
}

fn cross_section_lines(p: &CyclicFamilyParams, grid: &GridArgs, ns: usize) -> Result<Vec<Polyline>, CliError> {
    let (norm, _) = normalize_by_rotation(p);
    let dom = domain_interval(&norm);
    let (lo, hi) = default_range(&norm);
    let smin = grid.smin.unwrap_or(lo);
    let smax = grid.smax.unwrap_or(hi);
    let n = grid.ns.unwrap_or(ns);
    let g = GridSpec::cyclic(smin, smax, n, 8).with_margin(grid.margin);
    g.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    g.validate_within(&dom)?;
    let name = norm.kind.name().to_string();
    let mut th0 = Vec::with_capacity(n);
    let mut thpi = Vec::with_capacity(n);
    let mut centers = Vec::with_capacity(n);
    for s in g.s_nodes() {
        let pr = family_profile(&norm, s)?;
        th0.push([pr.a + pr.r, s]);
        thpi.push([pr.a - pr.r, s]);
        centers.push([pr.a, s]);
    }
    Ok(vec![
        Polyline { family: name.clone(), curve: "theta0".into(), points: th0 },
        Polyline { family: name.clone(), curve: "thetapi".into(), points: thpi },
        Polyline { family: name, curve: "centers".into(), points: centers },
    ])
}

pub fn crosssection(a: &CrossArgs) -> Result<Outcome, CliError> {
    let plane: String = a.plane.chars().filter(|c| !c.is_whitespace()).collect();
    if plane != "y=0" {
        return usage(format!("unsupported plane `{}`; only y=0 (the symmetry plane) is available", a.plane));
    }
    let params: Vec<CyclicFamilyParams> = match a.preset {
        Some(Preset::Fig4) => vec![
            CyclicFamilyParams::new(FamilyKind::TypeI, 2.0, 0.0, 1.0)?,
            CyclicFamilyParams::new(FamilyKind::TypeII, 1.0, 0.0, 0.0)?,
            CyclicFamilyParams::new(FamilyKind::TypeIII, 1.0, 0.0, 1.0)?,
        ],
        preset => {
            let mut s = a.surface.clone();
            let (family, lambda, c) = match preset {
                Some(Preset::Fig1) => (Some(Family::Type1), Some(2.0), Some(1.0)),
                Some(Preset::Fig2) => (Some(Family::Type2), Some(1.0), Some(0.0)),
                Some(Preset::Fig3) => (Some(Family::Type3), Some(1.0), Some(1.0)),
                _ => (None, None, None),
            };
            s.family = s.family.or(family);
            s.lambda = s.lambda.or(lambda);
            s.c = s.c.or(c);
            let Some(kind) = s.family.and_then(family_kind) else {
                return usage("crosssection needs a cyclic family (type1, type2, type3) or a preset");
            };
            vec![cyclic_params(kind, &s)?]
        }
    };
    let mut lines = Vec::new();
    for p in &params {
        lines.extend(cross_section_lines(p, &a.grid, 201)?);
    }
    match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut out = String::from("family,curve,s,x,z\n");
            for l in &lines {
                for pt in &l.points {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        l.family,
                        l.curve,
                        fmt_real(pt[1]),
                        fmt_real(pt[0]),
                        fmt_real(pt[1])
                    );
                }
            }
            Ok(Outcome::ok(out))
        }
        Format::Json => Ok(Outcome::ok(to_json(&lines)?)),
        Format::Obj => usage("crosssection writes csv or json"),
    }
}

#[derive(Serialize)]
struct EnergyReport {
    surface_descriptor: String,
    energy_label: String,
    parametric: f64,
    graph_form: Option<f64>,
    relative_difference: Option<f64>,
}

pub fn energy(a: &EnergyArgs) -> Result<Outcome, CliError> {
    let e = energy_of(a.energy);
    let report = if let Some(patch) = a.graph {
        if a.n < 3 {
            return usage("--n must be at least 3");
        }
        let (label, u): (&str, fn(f64, f64) -> f64) = match patch {
            GraphPatch::PlaneX => ("u=x", |x, _| x),
            GraphPatch::PlaneXy => ("u=x+2y", |x, y| x + 2.0 * y),
            GraphPatch::Saddle => ("u=x^2-y^2", |x, y| x * x - y * y),
        };
        let surf = ParametricSurface::graph(label, u, 1e-4);
        let grid = GridSpec::rect((0.0, 1.0), a.n + 1, (0.0, 1.0), a.n + 1);
        let parametric = surface_energy_quadrature(&surf, &e, &grid)?;
        let graph = discrete_graph_energy(&ScalarGrid::sample((0.0, 1.0), (0.0, 1.0), a.n + 1, a.n + 1, u), 0.0)?;
        EnergyReport {
            surface_descriptor: label.to_string(),
            energy_label: e.label().to_string(),
            parametric,
            graph_form: Some(graph),
            relative_difference: Some((parametric - graph).abs() / graph.abs().max(f64::MIN_POSITIVE)),
        }
    } else {
        let built = build_surface(&a.surface)?;
        let grid = build_grid(&a.grid, &built, 101, 64)?;
        let parametric = surface_energy_quadrature(&built.surface, &e, &grid)?;
        EnergyReport {
            surface_descriptor: built.surface.label().to_string(),
            energy_label: e.label().to_string(),
            parametric,
            graph_form: None,
            relative_difference: None,
        }
    };
    Ok(Outcome::ok(to_json(&report)?))
}
