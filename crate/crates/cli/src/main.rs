use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use cobcalc::cobordism::{
    arc_presentation, cone_from_cobordism, present_group, rotate_preferred_end, verify_theorem, CobordismDatum,
    GroupPresentation,
};
use cobcalc::cone::{k0_class, left_associate};
use cobcalc::disk::{
    full_cycle, hom_rank, mu, universal_decomposition, universal_triangle, GradingAssignment, MorphismGenerator,
};
use cobcalc::gluing::{add_stop, attach_handle, circular_glue, glue_disk, CircleRef, GluingReport, StopRef};
use cobcalc::par::Execution;
use cobcalc::surface::{flip_graph, surface_homology, SurfaceSpecFile};
use cobcalc::verify::{grid_surfaces, run_suite, surface_checks, Check};
use cobcalc::{Error, StoppedSurface};

#[derive(Parser)]
#[command(name = "cobcalc", version, about = "Cobordism groups of stopped surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Relative homology H_1(S, dS - f) of a surface file
    Homology { file: PathBuf },
    /// Cobordism group from a minimal arc system, from homology, or both
    Cobgroup {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Via::Both)]
        via: Via,
        /// Write the arc presentation as a relations document
        #[arg(long)]
        relations_out: Option<PathBuf>,
    },
    /// Cone decomposition and K0 relation of a cobordism with the given ends
    Cone {
        /// Preferred end first, then the others counterclockwise
        #[arg(long, value_delimiter = ',', required = true)]
        ends: Vec<String>,
        /// Grading shifts of the non-preferred ends
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        shifts: Vec<i64>,
        /// Number of times to rotate the preferred end
        #[arg(long, default_value_t = 0)]
        rotate: usize,
        #[arg(long, value_enum, default_value_t = Assoc::Right)]
        assoc: Assoc,
    },
    /// Tables for the disk with m stops
    Disk {
        #[arg(long)]
        stops: usize,
        /// `standard`, `triangle` or a comma separated list of rationals
        #[arg(long, default_value = "standard", allow_hyphen_values = true)]
        gradings: String,
    },
    /// Surgery on a surface file, with the predicted group relation checked
    Glue {
        #[command(subcommand)]
        op: GlueOp,
        /// Print the report as JSON
        #[arg(long, global = true)]
        json: bool,
    },
    /// Flip graph of triangulations of a polygon
    Flipgraph {
        #[arg(long)]
        polygon: usize,
        /// Write the graph in DOT format (`-` for stdout)
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run the invariant suite on a surface file, a relations document, or a grid
    Verify {
        #[arg(required_unless_present = "grid", conflicts_with = "grid")]
        file: Option<PathBuf>,
        /// Bounds gmax bmax smax
        #[arg(long, num_args = 3, value_names = ["GMAX", "BMAX", "SMAX"])]
        grid: Option<Vec<usize>>,
        /// Run without the thread pool
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Presentation,
    Homology,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Assoc {
    Left,
    Right,
}

#[derive(Subcommand)]
enum GlueOp {
    /// Add a stop to a circle
    Stop { file: PathBuf, circle: String },
    /// Attach a one-handle at two stops
    Handle { file: PathBuf, minus: String, plus: String },
    /// Cap a stopless circle with a disk
    Disk { file: PathBuf, circle: String },
    /// Identify two stopless circles
    Circle { file: PathBuf, minus: String, plus: String },
}

enum Failure {
    Mismatch(String),
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) | Error::EmptyBoundary(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<(SurfaceSpecFile, StoppedSurface), Failure> {
    let spec = SurfaceSpecFile::from_json(&read(path)?)?;
    let surface = spec.surface()?;
    Ok((spec, surface))
}

fn homology(file: &Path) -> Outcome {
    let (_, s) = load(file)?;
    Ok(format!("{}\n", surface_homology(&s)?))
}

/// Generator names get a component prefix when there is more than one.
fn surface_presentation(s: &StoppedSurface) -> Result<GroupPresentation, Failure> {
    let many = s.components.len() > 1;
    let mut out = GroupPresentation::default();
    for (i, c) in s.components.iter().enumerate() {
        let p = arc_presentation(c)?;
        let name = |g: &str| if many { format!("c{i}.{g}") } else { g.to_string() };
        out.generators.extend(p.generators.iter().map(|g| name(g)));
        for mut r in p.relations {
            r.row = r.row.into_iter().map(|(g, c)| (name(&g), c)).collect();
            out.relations.push(r);
        }
    }
    Ok(out)
}

fn cobgroup(file: &Path, via: Via, relations_out: Option<&Path>) -> Outcome {
    let (spec, s) = load(file)?;
    if let Some(path) = relations_out {
        let p = surface_presentation(&s)?;
        let mut doc = serde_json::to_value(&p).expect("presentation serializes");
        let surface = serde_json::json!({ "components": spec.components });
        doc.as_object_mut().expect("object").insert("surface".into(), surface);
        let text = serde_json::to_string_pretty(&doc).expect("document serializes");
        fs::write(path, text + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    match via {
        Via::Presentation => Ok(format!("{}\n", present_group(&surface_presentation(&s)?)?)),
        Via::Homology => Ok(format!("{}\n", surface_homology(&s)?)),
        Via::Both => {
            let report = verify_theorem(&s)?;
            if report.passed() {
                Ok(report.render())
            } else {
                Err(Failure::Mismatch(report.render()))
            }
        }
    }
}

fn cone(ends: &[String], shifts: &[i64], rotate: usize, assoc: Assoc) -> Outcome {
    let (preferred, rest) = ends.split_first().expect("clap requires one end");
    let rest: Vec<&str> = rest.iter().map(String::as_str).collect();
    let mut datum = CobordismDatum::new(preferred, &rest);
    if !shifts.is_empty() {
        datum = datum.with_shifts(shifts)?;
    }
    for _ in 0..rotate {
        datum = rotate_preferred_end(&datum)?;
    }
    let target = datum.preferred.to_string();
    if datum.ends.is_empty() {
        return Ok(format!("{target} ≅ 0\n{target} = 0\n"));
    }
    let d = cone_from_cobordism(&datum)?;
    let expr = match assoc {
        Assoc::Right => d.expr(),
        Assoc::Left => left_associate(&d),
    };
    let order: Vec<&str> = ends.iter().map(String::as_str).collect();
    let class = k0_class(&expr).to_string_ordered(&order);
    Ok(format!(
        "{target} ≅ {expr}\n{} = {class}\n",
        datum.preferred.class().to_string_ordered(&order)
    ))
}

fn disk(stops: usize, gradings: &str) -> Outcome {
    let n = stops.checked_sub(1).filter(|&n| n >= 2).ok_or_else(|| {
        Failure::Input(format!(
            "the disk with {stops} stops has n = {}; hom ranks and compositions need n >= 2, \
             because with fewer than three stops the chord a_j and its successor share both ends",
            stops as i64 - 1
        ))
    })?;
    let g = GradingAssignment::parse(gradings, n)?;
    let mut out = format!("disk with {stops} stops (n = {n})\n");
    let values: Vec<String> = g.values().iter().map(ToString::to_string).collect();
    out.push_str(&format!("gradings: {}\n", values.join(", ")));
    let degrees: Vec<String> = g
        .degrees()
        .iter()
        .enumerate()
        .map(|(j, d)| format!("|a{j}| = {d}"))
        .collect();
    out.push_str(&format!(
        "degrees: {} (sum {}, compatible: {})\n",
        degrees.join(", "),
        g.degree_sum(),
        if g.is_compatible() { "yes" } else { "no" }
    ));

    out.push_str("hom ranks:\n");
    let header: Vec<String> = (0..=n).map(|k| format!("{:>4}", format!("D{k}"))).collect();
    out.push_str(&format!("      {}\n", header.join("")));
    for j in 0..=n {
        let ranks = (0..=n)
            .map(|k| hom_rank(j, k, n).map(|r| format!("{r:>4}")))
            .collect::<Result<Vec<_>, _>>()?;
        out.push_str(&format!("  {:<4}{}\n", format!("D{j}"), ranks.join("")));
    }

    out.push_str("mu relations:\n");
    for j in 0..=n {
        let inputs = full_cycle(j, n);
        let names: Vec<String> = inputs.iter().map(MorphismGenerator::to_string).collect();
        let value = match mu(&inputs, &g)? {
            Some(x) => x.to_string(),
            None => "0".into(),
        };
        out.push_str(&format!("  mu{}({}) = {value}\n", inputs.len(), names.join(", ")));
    }

    let u = universal_decomposition(n)?;
    out.push_str(&format!("decomposition: {}\n", u.decomposition));
    out.push_str(&format!("left associated: D0 ≅ {}\n", left_associate(&u.decomposition)));
    for step in &u.steps {
        out.push_str(&format!("  {step}\n"));
    }
    if n == 2 {
        out.push_str("triangle:\n");
        for s in universal_triangle().statements {
            out.push_str(&format!("  {s}\n"));
        }
    }
    Ok(out)
}

fn parse_index(text: &str, what: &str) -> Result<usize, Failure> {
    text.parse()
        .map_err(|_| Failure::Input(format!("bad {what} reference {text:?}")))
}

fn circle_ref(spec: &SurfaceSpecFile, text: &str) -> Result<CircleRef, Failure> {
    if let Some(l) = spec.find(text) {
        if l.stop.is_some() {
            return Err(Failure::Input(format!(
                "label {text:?} names a stop, expected a circle"
            )));
        }
        return Ok(CircleRef {
            component: l.component,
            circle: l.circle,
        });
    }
    match text.split(':').collect::<Vec<_>>()[..] {
        [c, k] => Ok(CircleRef {
            component: parse_index(c, "circle")?,
            circle: parse_index(k, "circle")?,
        }),
        _ => Err(Failure::Input(format!(
            "bad circle reference {text:?}, expected COMPONENT:CIRCLE or a label"
        ))),
    }
}

fn stop_ref(spec: &SurfaceSpecFile, text: &str) -> Result<StopRef, Failure> {
    if let Some(l) = spec.find(text) {
        let stop = l
            .stop
            .ok_or_else(|| Failure::Input(format!("label {text:?} names a circle, expected a stop")))?;
        return Ok(StopRef {
            component: l.component,
            circle: l.circle,
            stop,
        });
    }
    match text.split(':').collect::<Vec<_>>()[..] {
        [c, k, i] => Ok(StopRef {
            component: parse_index(c, "stop")?,
            circle: parse_index(k, "stop")?,
            stop: parse_index(i, "stop")?,
        }),
        _ => Err(Failure::Input(format!(
            "bad stop reference {text:?}, expected COMPONENT:CIRCLE:STOP or a label"
        ))),
    }
}

fn glue(op: &GlueOp, json: bool) -> Outcome {
    let report: GluingReport = match op {
        GlueOp::Stop { file, circle } => {
            let (spec, s) = load(file)?;
            add_stop(&s, circle_ref(&spec, circle)?)?
        }
        GlueOp::Handle { file, minus, plus } => {
            let (spec, s) = load(file)?;
            attach_handle(&s, stop_ref(&spec, minus)?, stop_ref(&spec, plus)?)?
        }
        GlueOp::Disk { file, circle } => {
            let (spec, s) = load(file)?;
            glue_disk(&s, circle_ref(&spec, circle)?)?
        }
        GlueOp::Circle { file, minus, plus } => {
            let (spec, s) = load(file)?;
            circular_glue(&s, circle_ref(&spec, minus)?, circle_ref(&spec, plus)?)?
        }
    };
    let text = if json { report.to_json() + "\n" } else { report.render() };
    if report.verdict {
        Ok(text)
    } else {
        Err(Failure::Mismatch(text))
    }
}

fn flipgraph(polygon: usize, dot: Option<&Path>) -> Outcome {
    let g = flip_graph(polygon)?;
    let mut out = format!("{}\n", g.summary());
    match dot {
        Some(p) if p == Path::new("-") => out.push_str(&g.to_dot()),
        Some(p) => fs::write(p, g.to_dot()).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => {}
    }
    Ok(out)
}

fn summarize(checks: &[Check]) -> Outcome {
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    if failed.is_empty() {
        return Ok(format!("all {} checks passed\n", checks.len()));
    }
    let mut out = String::new();
    for c in &failed {
        out.push_str(&format!("{c}\n"));
    }
    out.push_str(&format!("{} of {} checks failed\n", failed.len(), checks.len()));
    Err(Failure::Mismatch(out))
}

/// Compares a relations document against the homology of its surface.
fn verify_relations(doc: Value) -> Outcome {
    let Value::Object(mut map) = doc else {
        return Err(Failure::Input("relations document must be a JSON object".into()));
    };
    let surface = map.remove("surface").expect("caller checked the key");
    let spec: SurfaceSpecFile = serde_json::from_value(surface).map_err(|e| Failure::Input(format!("surface: {e}")))?;
    let s = spec.surface()?;
    let p = GroupPresentation::from_json(&Value::Object(map).to_string())?;
    let presented = present_group(&p)?;
    let homology = surface_homology(&s)?;
    let mut out = format!("presentation: {presented}\nhomology: {homology}\n");
    if presented == homology {
        out.push_str("MATCH\n");
        Ok(out)
    } else {
        out.push_str(&format!("- {homology}\n+ {presented}\nMISMATCH\n"));
        Err(Failure::Mismatch(out))
    }
}

/// Processing order for the grid. `COBCALC_SEED` shuffles it; results are
/// reported in grid order regardless.
fn schedule(len: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..len).collect();
    if let Some(seed) = std::env::var("COBCALC_SEED").ok().and_then(|s| s.parse().ok()) {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    order
}

fn verify(file: Option<&Path>, grid: Option<&[usize]>, sequential: bool) -> Outcome {
    let exec = if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    if let Some(&[gmax, bmax, smax]) = grid {
        let surfaces = grid_surfaces(gmax, bmax, smax);
        let order = schedule(surfaces.len());
        let shuffled: Vec<StoppedSurface> = order.iter().map(|&i| surfaces[i].clone()).collect();
        let results = cobcalc::par::map(&shuffled, exec, surface_checks);
        let mut by_index: Vec<(usize, Vec<Check>)> = order.into_iter().zip(results).collect();
        by_index.sort_by_key(|(i, _)| *i);
        let checks: Vec<Check> = by_index.into_iter().flat_map(|(_, c)| c).collect();
        return summarize(&checks);
    }
    let path = file.expect("clap requires a file or a grid");
    let text = read(path)?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if doc.get("surface").is_some() {
        return verify_relations(doc);
    }
    let (_, s) = load(path)?;
    let checks = run_suite(&[s], exec);
    let mut out = String::new();
    for c in &checks {
        out.push_str(&format!("{c}\n"));
    }
    match summarize(&checks) {
        Ok(line) => Ok(out + &line),
        Err(Failure::Mismatch(_)) => {
            let failed = checks.iter().filter(|c| !c.passed).count();
            Err(Failure::Mismatch(
                out + &format!("{failed} of {} checks failed\n", checks.len()),
            ))
        }
        Err(e) => Err(e),
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Homology { file } => homology(file),
        Command::Cobgroup {
            file,
            via,
            relations_out,
        } => cobgroup(file, *via, relations_out.as_deref()),
        Command::Cone {
            ends,
            shifts,
            rotate,
            assoc,
        } => cone(ends, shifts, *rotate, *assoc),
        Command::Disk { stops, gradings } => disk(*stops, gradings),
        Command::Glue { op, json } => glue(op, *json),
        Command::Flipgraph { polygon, dot } => flipgraph(*polygon, dot.as_deref()),
        Command::Verify { file, grid, sequential } => verify(file.as_deref(), grid.as_deref(), *sequential),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Mismatch(out) => print!("{out}"),
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::Internal(msg) => eprintln!("internal error: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}
