use serde::Serialize;

use manakov::classical::{
    critical_lines, critical_values, fiber_component_oracle, parameter_classification,
    torus_critical_curves, EmDiagram, OracleConfig, OracleOutcome, OracleVerdict, ParameterClass, Region,
    RegionLabel, Torus,
};
use manakov::monodromy::{
    generic_monodromy_from, irrep_lattice_from, limiting_lattice, limiting_loop, limiting_transport, JointLattice,
    LimitingBasis, MonodromyResult,
};
use manakov::report::{
    default_cluster_tol, region_multiplicity_report, strata_pairing_report, MultiplicityReport, PairingReport,
};
use manakov::spectrum::joint_spectrum;
use manakov::spin::parse_spin;
use manakov::{Error, IrrepLabel, ModelParams};

use crate::output::{csv, write_file, write_json, CliError, CliResult, CsvRow, SCHEMA};
use crate::svg::Figure;
use crate::{BasisChoice, ClassicalArgs, ComponentsArgs, MonodromyArgs, Preset, SpectrumArgs};

const TORUS_SAMPLES: usize = 256;

fn parse_irrep(s: &str) -> CliResult<IrrepLabel> {
    Ok(s.parse::<IrrepLabel>()?)
}

fn region_name(label: RegionLabel) -> String {
    match label {
        RegionLabel::Inside(r) => r.name().to_string(),
        RegionLabel::Boundary => "boundary".into(),
        RegionLabel::Outside => "outside".into(),
    }
}

/// Region outlines, or just the critical values when no layout is available.
fn draw_diagram(fig: &mut Figure, a: f64, b: f64) -> CliResult<()> {
    match EmDiagram::new(a, b) {
        Ok(d) => {
            for s in &d.regions {
                fig.polygon(&s.polygon, "#4477aa", 0.08);
            }
            fig.polyline(&d.arc, "#cc3311", 1.5);
        }
        Err(e) if e.is_validation() => {}
        Err(e) => return Err(e.into()),
    }
    for (name, p) in critical_values(a, b)?.labelled() {
        fig.scatter(&[p], "#cc3311", 3.0);
        fig.text(p, name);
    }
    Ok(())
}

#[derive(Serialize)]
struct ClusterJson<'a> {
    schema: u32,
    seed: u64,
    multiplicity: &'a MultiplicityReport,
    pairing: &'a PairingReport,
}

pub fn spectrum(args: &SpectrumArgs) -> CliResult<()> {
    let c = &args.common;
    let spin = parse_spin(args.spin)?;
    if args.unfolded {
        return unfolded_spectrum(args, spin);
    }
    let params = ModelParams::new(c.a, c.b, spin)?;
    let filter = args.irrep.as_deref().map(parse_irrep).transpose()?;
    let tol = match args.tol {
        Some(t) if !(t > 0.0) => {
            return Err(Error::InvalidArgument(format!("cluster tolerance must be positive, got {t}")).into())
        }
        Some(t) => t,
        None => default_cluster_tol(c.a, c.b)?,
    };
    let js = joint_spectrum(&params, c.seed)?;
    let rows: Vec<_> = js.eigenvalues.iter().filter(|e| filter.is_none_or(|l| e.irrep == l)).collect();
    let labels: Vec<String> = rows.iter().map(|e| e.irrep.to_string()).collect();
    write_file(
        &c.out,
        "spectrum.csv",
        &csv(rows.iter().zip(&labels).map(|(e, l)| CsvRow { x: e.x, y: e.y, irrep: l, residual: e.residual })),
    )?;
    println!("{} eigenvalues", rows.len());

    match (region_multiplicity_report(&js, tol), strata_pairing_report(&js, tol)) {
        (Ok(m), Ok(p)) => {
            write_json(&c.out, "clusters.json", &ClusterJson { schema: SCHEMA, seed: c.seed, multiplicity: &m, pairing: &p })?;
            for r in &m.regions {
                println!(
                    "region {}: modal cluster size {} (classical components {})",
                    r.region.name(),
                    r.modal_size.map_or("-".to_string(), |s| s.to_string()),
                    r.expected
                );
            }
        }
        (Err(e), _) | (_, Err(e)) if e.is_validation() => println!("no cluster report: {e}"),
        (Err(e), _) | (_, Err(e)) => return Err(e.into()),
    }

    if c.svg {
        let pts: Vec<[f64; 2]> = rows.iter().map(|e| [e.x, e.y]).collect();
        let cv = critical_values(c.a, c.b)?;
        let mut fig = Figure::fit(pts.iter().chain(cv.labelled().iter().map(|(_, p)| p)));
        let title = match filter {
            Some(l) => format!("joint spectrum a={} b={} S={spin}, {l}", c.a, c.b),
            None => format!("joint spectrum a={} b={} S={spin}", c.a, c.b),
        };
        fig.title(&title);
        draw_diagram(&mut fig, c.a, c.b)?;
        fig.scatter(&pts, "black", 1.2);
        write_file(&c.out, "spectrum.svg", &fig.finish())?;
    }
    Ok(())
}

fn unfolded_spectrum(args: &SpectrumArgs, spin: u32) -> CliResult<()> {
    let c = &args.common;
    if c.a != 2.0 || c.b != 1.0 {
        return Err(Error::InvalidArgument(format!("--unfolded needs a=2, b=1 (got a={}, b={})", c.a, c.b)).into());
    }
    if args.irrep.is_some() {
        return Err(Error::InvalidArgument("--unfolded points carry no irrep label".into()).into());
    }
    let lattice = limiting_lattice(spin)?;
    write_file(
        &c.out,
        "spectrum.csv",
        &csv(lattice.points.iter().zip(&lattice.residuals).map(|(p, r)| CsvRow { x: p[0], y: p[1], irrep: "-", residual: *r })),
    )?;
    println!("{} lattice points", lattice.len());
    if c.svg {
        let mut fig = Figure::fit(&lattice.points);
        fig.title(&format!("unfolded joint spectrum (x, y') S={spin}"));
        fig.scatter(&lattice.points, "black", 1.5);
        fig.scatter(&[[0.0, 0.0]], "#cc3311", 3.5);
        write_file(&c.out, "spectrum.svg", &fig.finish())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct NamedPoint {
    label: &'static str,
    x: f64,
    y: f64,
}

#[derive(Serialize)]
struct NamedLine {
    label: &'static str,
    slope: f64,
    anchor: f64,
}

#[derive(Serialize)]
struct RegionJson {
    label: &'static str,
    components: usize,
    polygon: Vec<[f64; 2]>,
    probe: [f64; 2],
}

#[derive(Serialize)]
struct TorusCurveJson {
    torus: Torus,
    sign: i8,
    image: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct ClassicalJson {
    schema: u32,
    a: f64,
    b: f64,
    classification: ParameterClass,
    description: String,
    points: Vec<NamedPoint>,
    lines: Vec<NamedLine>,
    parabola: Option<Vec<[f64; 2]>>,
    regions: Option<Vec<RegionJson>>,
    torus_curves: Vec<TorusCurveJson>,
}

pub fn classical(args: &ClassicalArgs) -> CliResult<()> {
    let c = &args.common;
    let class = parameter_classification(c.a, c.b);
    if let Err(e) = manakov::model::check_params(c.a, c.b) {
        eprintln!("parameter classification: {}", class.describe());
        return Err(e.into());
    }
    let cv = critical_values(c.a, c.b)?;
    let lines = critical_lines(c.a, c.b)?;
    let diagram = match EmDiagram::new(c.a, c.b) {
        Ok(d) => Some(d),
        Err(e) if e.is_validation() => {
            println!("no region layout: {e}");
            None
        }
        Err(e) => return Err(e.into()),
    };
    let mut torus_curves = Vec::new();
    for t in Torus::ALL {
        for br in torus_critical_curves(t, c.a, c.b, TORUS_SAMPLES)? {
            torus_curves.push(TorusCurveJson { torus: t, sign: br.sign, image: br.image });
        }
    }
    let json = ClassicalJson {
        schema: SCHEMA,
        a: c.a,
        b: c.b,
        description: class.describe(),
        classification: class,
        points: cv.labelled().iter().map(|&(label, p)| NamedPoint { label, x: p[0], y: p[1] }).collect(),
        lines: lines.all().iter().map(|&(label, l)| NamedLine { label, slope: l.slope, anchor: l.anchor }).collect(),
        parabola: diagram.as_ref().map(|d| d.arc.clone()),
        regions: diagram.as_ref().map(|d| {
            Region::ALL
                .iter()
                .map(|&r| RegionJson {
                    label: r.name(),
                    components: r.component_count(),
                    polygon: d.shape(r).polygon.clone(),
                    probe: d.interior_probe(r),
                })
                .collect()
        }),
        torus_curves,
    };
    write_json(&c.out, "classical.json", &json)?;
    println!("classification: {}", json.description);
    if c.svg {
        let mut fig = Figure::fit(cv.labelled().iter().map(|(_, p)| p));
        fig.title(&format!("energy-momentum diagram a={} b={}", c.a, c.b));
        for curve in &json.torus_curves {
            fig.polyline(&curve.image, "#999999", 0.8);
        }
        draw_diagram(&mut fig, c.a, c.b)?;
        if let Some(regions) = &json.regions {
            for r in regions {
                fig.text(r.probe, r.label);
            }
        }
        write_file(&c.out, "classical.svg", &fig.finish())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct MonodromyJson<'a> {
    schema: u32,
    preset: &'static str,
    a: f64,
    b: f64,
    spin: u32,
    seed: u64,
    irrep: Option<IrrepLabel>,
    det: i64,
    trace: i64,
    #[serde(flatten)]
    result: &'a MonodromyResult,
}

fn cell_outline(origin: [f64; 2], basis: [[f64; 2]; 2]) -> Vec<[f64; 2]> {
    let p1 = [origin[0] + basis[0][0], origin[1] + basis[0][1]];
    let p2 = [origin[0] + basis[1][0], origin[1] + basis[1][1]];
    let p3 = [p1[0] + basis[1][0], p1[1] + basis[1][1]];
    vec![origin, p1, p3, p2, origin]
}

pub fn monodromy(args: &MonodromyArgs) -> CliResult<()> {
    let c = &args.common;
    let spin = parse_spin(args.spin)?;
    let (result, lattice, irrep, a, b): (MonodromyResult, JointLattice, Option<IrrepLabel>, f64, f64) = match args.preset {
        Preset::Limiting => {
            let basis = match args.basis {
                BasisChoice::Standard => LimitingBasis::Standard,
                BasisChoice::Alt => LimitingBasis::Alternate,
            };
            let lattice = limiting_lattice(spin)?;
            let r = limiting_transport(&lattice, &limiting_loop(false), basis)?;
            (r, lattice, None, 2.0, 1.0)
        }
        Preset::Generic => {
            let irrep = parse_irrep(&args.irrep)?;
            let params = ModelParams::new(c.a, c.b, spin)?;
            // validate before the expensive spectrum
            manakov::monodromy::generic_preconditions(&params)?;
            let js = joint_spectrum(&params, c.seed)?;
            let r = generic_monodromy_from(&js, irrep)?;
            let lattice = irrep_lattice_from(&js, irrep).rechart(r.chart);
            (r, lattice, Some(irrep), c.a, c.b)
        }
    };
    let preset = match args.preset {
        Preset::Limiting => "limiting-loop",
        Preset::Generic => "generic-loop",
    };
    let json = MonodromyJson {
        schema: SCHEMA,
        preset,
        a,
        b,
        spin,
        seed: c.seed,
        irrep,
        det: result.det(),
        trace: result.trace(),
        result: &result,
    };
    write_json(&c.out, "monodromy.json", &json)?;
    println!("matrix {:?}", result.matrix);
    if c.svg {
        let mut fig = Figure::fit(&lattice.points);
        fig.title(&format!("{preset}: monodromy {:?}", result.matrix));
        fig.scatter(&lattice.points, "black", 1.2);
        fig.polyline(&result.path, "#4477aa", 1.2);
        let start = lattice.points[result.initial_cell.anchor];
        fig.polyline(&cell_outline(start, result.initial_basis), "#228833", 2.0);
        if let Some(last) = result.snaps.last() {
            fig.polyline(&cell_outline(lattice.points[last.anchor], last.basis), "#cc3311", 2.0);
        }
        write_file(&c.out, "monodromy.svg", &fig.finish())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ProbeJson {
    region: String,
    expected: Option<usize>,
    outcome: OracleOutcome,
}

#[derive(Serialize)]
struct ComponentsJson {
    schema: u32,
    a: f64,
    b: f64,
    config: OracleConfig,
    probes: Vec<ProbeJson>,
}

pub fn components(args: &ComponentsArgs) -> CliResult<()> {
    let c = &args.common;
    let cfg = OracleConfig { samples: args.samples, delta: args.delta, eps_factor: args.eps, seed: c.seed };
    manakov::model::check_params(c.a, c.b)?;
    let diagram = match EmDiagram::new(c.a, c.b) {
        Ok(d) => Some(d),
        Err(e) if e.is_validation() => None,
        Err(e) => return Err(e.into()),
    };
    let probes: Vec<(String, Option<usize>, [f64; 2])> = match &args.probe {
        Some(p) => {
            let label = diagram.as_ref().map(|d| d.classify(p[0], p[1]));
            let region = label.map_or("unclassified".to_string(), region_name);
            vec![(region, label.and_then(|l| l.component_count()), [p[0], p[1]])]
        }
        None => {
            let d = diagram.as_ref().ok_or_else(|| {
                Error::InvalidArgument("automatic probes need a > b > 1; pass --probe X Y".into())
            })?;
            Region::ALL
                .iter()
                .map(|&r| (r.name().to_string(), Some(r.component_count()), d.interior_probe(r)))
                .collect()
        }
    };
    let mut out = Vec::new();
    let mut inconclusive = Vec::new();
    for (region, expected, p) in probes {
        let outcome = fiber_component_oracle(p[0], p[1], c.a, c.b, &cfg)?;
        match outcome.verdict {
            OracleVerdict::Components(k) => println!("probe ({}, {}) region {region}: {k} components", p[0], p[1]),
            OracleVerdict::Inconclusive => {
                println!("probe ({}, {}) region {region}: inconclusive, {} samples retained", p[0], p[1], outcome.retained);
                inconclusive.push(format!("({}, {})", p[0], p[1]));
            }
        }
        out.push(ProbeJson { region, expected, outcome });
    }
    write_json(&c.out, "components.json", &ComponentsJson { schema: SCHEMA, a: c.a, b: c.b, config: cfg, probes: out })?;
    if !inconclusive.is_empty() {
        return Err(CliError::Inconclusive(format!(
            "oracle inconclusive at {}: fewer than {} samples retained",
            inconclusive.join(", "),
            manakov::classical::MIN_RETAINED
        )));
    }
    Ok(())
}
