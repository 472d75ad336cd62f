//! `geodex`: build distance-transitive graphs and check their geodesic
//! structure from the command line.
//!
//! Exit codes: 0 pass, 1 fail, 2 bad parameters, 3 instance too large,
//! 4 malformed input.

mod family;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use geodex::families::io::{self, GraphFormat};
use geodex::families::{build, Built, FamilySpec, Graph};
use geodex::metrics::{
    bfs_all, bijection_check, census_formula, geodesic_census, intersection_array, primitivity, ArrayOutcome,
};
use geodex::polar_geo::{
    bell, c_tau, enumerate_types, is_opposite, nonopposite_orbit_count, not_drg_witness, orbit_fingerprint,
    partition_oracle, pg_distance, pg_geodesic_normalize, predicted_orbit_profile, type_of, PgInstance,
};
use geodex::spaces::SpaceKind;
use geodex::symmetry::{
    all_arcs, all_geodesics, census_screens, check_distance_transitive, check_geodesic_transitive,
    check_geodesic_transitive_rooted, geodesics_from, is_group_primitive, orbits_on_tuples, psigmasp_order,
    ObjectClass,
};
use geodex::{Bounds, Error};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use family::{FamilyArgs, PgArgs, Source};
use output::Format;

#[derive(Parser, Debug, Serialize)]
#[command(name = "geodex", version, about = "Distance-transitive graphs and their geodesics")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Serialize)]
struct Global {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for every sampled check
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to the number of cores
    #[arg(long, global = true, env = "GEODEX_THREADS")]
    threads: Option<usize>,
    /// Write the report here instead of stdout; for `build`, the graph file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = Bounds::default().max_vertices)]
    max_vertices: usize,
    #[arg(long, global = true, default_value_t = Bounds::default().max_vectors)]
    max_vectors: u64,
}

#[derive(Subcommand, Debug, Serialize)]
enum Command {
    /// Build a graph and write it in an exchange format
    Build(BuildArgs),
    /// Intersection array, or a witness that there is none
    Array(SourceArgs),
    /// Geodesic counts per length against the array formula
    Census(SourceArgs),
    /// Flag-to-geodesic bijection between two vertices
    Bijection(BijectionArgs),
    /// Primitivity of the graph and, for families, of the generated group
    Primitivity(SourceArgs),
    /// Orbits of the generated group on pairs, geodesics or arcs
    Orbits(OrbitArgs),
    /// Pass/fail checks
    #[command(subcommand)]
    Check(CheckCommand),
    /// Divisibility screens on the Taylor and sporadic graphs
    Screens(ScreenArgs),
    /// Polar Grassmann geodesic calculus
    #[command(subcommand)]
    Pg(PgCommand),
}

#[derive(Args, Debug, Serialize)]
struct BuildArgs {
    /// Family name; parameters follow as flags
    name: Option<String>,
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = FileFormat::Json)]
    graph_format: FileFormat,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FileFormat {
    Json,
    Gdx1,
}

#[derive(Args, Debug, Serialize)]
struct SourceArgs {
    #[command(flatten)]
    family: FamilyArgs,
}

#[derive(Args, Debug, Serialize)]
struct BijectionArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, requires = "y")]
    x: Option<u32>,
    #[arg(long, requires = "x")]
    y: Option<u32>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Object {
    Pairs,
    Geodesics,
    Arcs,
}

#[derive(Args, Debug, Serialize)]
struct OrbitArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, value_enum)]
    object: Object,
    /// Distance, geodesic length or arc length
    #[arg(long)]
    length: u32,
}

#[derive(Args, Debug, Serialize)]
struct GtgArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Count orbits through the stabiliser of vertex 0
    #[arg(long)]
    rooted: bool,
}

#[derive(Args, Debug, Serialize)]
struct ScreenArgs {
    #[arg(long, default_value_t = 10_000)]
    qmax: u64,
}

#[derive(Subcommand, Debug, Serialize)]
enum CheckCommand {
    /// Passes when the graph is distance-regular
    Array(SourceArgs),
    /// Passes when the generated group has one orbit on geodesics of each length
    Gtg(GtgArgs),
    /// Passes when the generated group has one orbit on pairs at each distance
    Dtg(SourceArgs),
    /// Passes when the graph is primitive
    Primitivity(SourceArgs),
    /// Passes when flags map one-to-one onto geodesics
    Bijection(BijectionArgs),
    /// Passes when orbit counts on geodesics match the type-vector prediction
    PgOrbits(PgArgs),
    /// Passes when every screen rules out geodesic-transitivity
    Screens(ScreenArgs),
}

#[derive(Args, Debug, Serialize)]
struct PairArgs {
    #[command(flatten)]
    pg: PgArgs,
    #[arg(long)]
    x: u32,
    #[arg(long)]
    y: u32,
}

#[derive(Args, Debug, Serialize)]
struct NormalizeArgs {
    #[command(flatten)]
    pg: PgArgs,
    /// Comma-separated vertex indices
    #[arg(long, value_delimiter = ',', conflicts_with = "random")]
    path: Vec<u32>,
    /// Normalise this many geodesics sampled with the seed
    #[arg(long, requires = "length")]
    random: Option<usize>,
    #[arg(long)]
    length: Option<u32>,
}

#[derive(Args, Debug, Serialize)]
struct TypesArgs {
    #[command(flatten)]
    pg: PgArgs,
    /// Geodesic length
    #[arg(long)]
    m: usize,
}

#[derive(Args, Debug, Serialize)]
struct PgOrbitArgs {
    #[command(flatten)]
    pg: PgArgs,
    /// Also count orbits by brute force
    #[arg(long)]
    brute: bool,
}

#[derive(Subcommand, Debug, Serialize)]
enum PgCommand {
    /// Distance between two vertices from their intersections
    Distance(PairArgs),
    /// Whether two vertices are opposite
    Opposite(PairArgs),
    /// Normal form of a geodesic
    Normalize(NormalizeArgs),
    /// Type vectors of length m with their orbit counts
    Types(TypesArgs),
    /// Predicted orbit counts on geodesics of each length
    Orbits(PgOrbitArgs),
    /// Vertices showing the graph is not distance-regular
    Witness(PgArgs),
}

/// What a command produced: a report and whether it passed.
struct Outcome {
    report: Value,
    pass: bool,
}

fn ok(report: Value) -> Outcome {
    Outcome { report, pass: true }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("report serialises")
}

struct Ctx {
    bounds: Bounds,
    seed: u64,
}

enum Loaded {
    Family(Built),
    File(Graph),
}

impl Loaded {
    fn graph(&self) -> &Graph {
        match self {
            Loaded::Family(b) => &b.graph,
            Loaded::File(g) => g,
        }
    }
}

impl Ctx {
    fn load(&self, args: &FamilyArgs) -> geodex::Result<Loaded> {
        match args.resolve()? {
            Source::Family(spec) => {
                let built = build(&spec, &self.bounds)?;
                Ok(Loaded::Family(built))
            }
            Source::File(path) => io::load(&path).map(Loaded::File),
        }
    }

    fn load_family(&self, args: &FamilyArgs) -> geodex::Result<(FamilySpec, Built)> {
        let spec = args.resolve_family()?;
        let built = build(&spec, &self.bounds)?;
        Ok((spec, built))
    }

    fn pg(&self, args: &PgArgs) -> geodex::Result<PgInstance> {
        PgInstance::new(args.space_spec()?, args.k, &self.bounds)
    }
}

fn cmd_build(ctx: &Ctx, args: &BuildArgs, out: Option<&PathBuf>) -> geodex::Result<Outcome> {
    let spec = match &args.name {
        Some(name) if args.family.family.is_none() => family::family_from_params(name, &args.family)?,
        Some(_) => return Err(Error::BadParams("give the family either by name or by --family".into())),
        None => args.family.resolve_family()?,
    };
    let built = build(&spec, &ctx.bounds)?;
    let dt = bfs_all(&built.graph)?;
    let format = match args.graph_format {
        FileFormat::Json => GraphFormat::Json,
        FileFormat::Gdx1 => GraphFormat::Gdx1,
    };
    if let Some(path) = out {
        io::save(&built.graph, path, format)?;
    }
    Ok(ok(json!({
        "family": spec.to_string(),
        "n": built.graph.n(),
        "valency": built.graph.valency(),
        "diameter": dt.diameter(),
        "edges": built.graph.edge_count(),
        "generators": built.gens.len(),
        "file": out,
        "notes": built.notes,
    })))
}

fn cmd_array(ctx: &Ctx, args: &FamilyArgs) -> geodex::Result<Outcome> {
    let loaded = ctx.load(args)?;
    let g = loaded.graph();
    let dt = bfs_all(g)?;
    let outcome = intersection_array(g, &dt);
    let display = outcome.array().map(ToString::to_string);
    let pass = matches!(outcome, ArrayOutcome::Regular(_));
    Ok(Outcome { report: json!({ "n": g.n(), "diameter": dt.diameter(), "array": display, "outcome": outcome }), pass })
}

fn cmd_census(ctx: &Ctx, args: &FamilyArgs) -> geodex::Result<Outcome> {
    let loaded = ctx.load(args)?;
    let g = loaded.graph();
    let dt = bfs_all(g)?;
    let census = geodesic_census(g)?;
    let formula = intersection_array(g, &dt).array().map(|a| census_formula(g.n(), a));
    let pass = formula.as_ref().is_none_or(|f| *f == census);
    Ok(Outcome { report: json!({ "n": g.n(), "census": census, "formula": formula, "matches": pass }), pass })
}

fn cmd_bijection(ctx: &Ctx, args: &BijectionArgs) -> geodex::Result<Outcome> {
    let (spec, built) = ctx.load_family(&args.family)?;
    let pair = args.x.zip(args.y);
    let report = bijection_check(&spec, &built, pair, &ctx.bounds)?;
    Ok(Outcome { pass: report.pass, report: to_value(report) })
}

fn cmd_primitivity(ctx: &Ctx, args: &FamilyArgs) -> geodex::Result<Outcome> {
    let loaded = ctx.load(args)?;
    let g = loaded.graph();
    let dt = bfs_all(g)?;
    let class = primitivity(g, &dt);
    let group = match &loaded {
        Loaded::Family(b) => Some(is_group_primitive(&b.gens.perms, g.n())?),
        Loaded::File(_) => None,
    };
    let pass = class == geodex::metrics::Primitivity::Primitive;
    Ok(Outcome { report: json!({ "graph": class, "group_primitive": group }), pass })
}

fn cmd_orbits(ctx: &Ctx, args: &OrbitArgs) -> geodex::Result<Outcome> {
    let (_, built) = ctx.load_family(&args.family)?;
    let g = &built.graph;
    let gens = &built.gens.perms;
    let report = match args.object {
        Object::Pairs => {
            let dt = bfs_all(g)?;
            if args.length > dt.diameter() {
                return Err(Error::BadDistance(args.length as usize));
            }
            let pairs: Vec<Vec<u32>> = (0..g.n() as u32)
                .flat_map(|u| dt.sphere(u, args.length).into_iter().map(move |v| vec![u, v]))
                .collect();
            orbits_on_tuples(gens, &pairs, ObjectClass::Pairs { distance: args.length })?
        }
        Object::Geodesics => {
            let dt = bfs_all(g)?;
            if args.length > dt.diameter() {
                return Err(Error::BadDistance(args.length as usize));
            }
            orbits_on_tuples(gens, &all_geodesics(g, &dt, args.length), ObjectClass::Geodesics { length: args.length })?
        }
        Object::Arcs => {
            if args.length == 0 {
                return Err(Error::BadParams("arcs need --length >= 1".into()));
            }
            orbits_on_tuples(gens, &all_arcs(g, args.length), ObjectClass::Arcs { s: args.length })?
        }
    };
    Ok(Outcome { pass: report.is_single_orbit(), report: to_value(report) })
}

fn pg_orbits(ctx: &Ctx, args: &PgArgs, brute: bool) -> geodex::Result<Outcome> {
    let predicted = predicted_orbit_profile(args.space_spec()?.omega, args.k)?;
    if !brute {
        return Ok(ok(json!({ "predicted": predicted })));
    }
    let inst = ctx.pg(args)?;
    let order = (args.space_spec()?.kind == SpaceKind::Symplectic).then(|| psigmasp_order(args.omega as u32, args.q));
    let verdict = check_geodesic_transitive_rooted(&inst.built.graph, &inst.built.gens.perms, order.as_ref())?;
    let lengths: Vec<u128> = verdict.reports.iter().map(|r| r.orbit_count as u128).collect();
    let pass = lengths == predicted && verdict.lagrange_ok;
    Ok(Outcome {
        report: json!({
            "predicted": predicted,
            "lengths": lengths,
            "group_order": verdict.group_order.to_string(),
            "geodesic_transitive": verdict.holds,
            "matches": pass,
        }),
        pass,
    })
}

fn cmd_check(ctx: &Ctx, cmd: &CheckCommand) -> geodex::Result<Outcome> {
    match cmd {
        CheckCommand::Array(a) => cmd_array(ctx, &a.family),
        CheckCommand::Gtg(a) => {
            let (spec, built) = ctx.load_family(&a.family)?;
            let v = if a.rooted {
                let order = match spec {
                    FamilySpec::PolarGrassmann { space, .. } if space.kind == SpaceKind::Symplectic => {
                        Some(psigmasp_order(space.omega as u32, space.q))
                    }
                    _ => None,
                };
                check_geodesic_transitive_rooted(&built.graph, &built.gens.perms, order.as_ref())?
            } else {
                check_geodesic_transitive(&built.graph, &built.gens.perms)?
            };
            Ok(Outcome { pass: v.holds, report: to_value(v) })
        }
        CheckCommand::Dtg(a) => {
            let (_, built) = ctx.load_family(&a.family)?;
            let v = check_distance_transitive(&built.graph, &built.gens.perms)?;
            Ok(Outcome { pass: v.holds, report: to_value(v) })
        }
        CheckCommand::Primitivity(a) => cmd_primitivity(ctx, &a.family),
        CheckCommand::Bijection(a) => cmd_bijection(ctx, a),
        CheckCommand::PgOrbits(a) => pg_orbits(ctx, a, true),
        CheckCommand::Screens(a) => cmd_screens(a),
    }
}

fn cmd_screens(args: &ScreenArgs) -> geodex::Result<Outcome> {
    let report = census_screens(args.qmax)?;
    Ok(Outcome { pass: report.all_confirmed, report: to_value(report) })
}

fn bases(path: &[geodex::algebra::Subspace]) -> Vec<Vec<Vec<u32>>> {
    path.iter().map(|s| s.basis()).collect()
}

fn cmd_pg(ctx: &Ctx, cmd: &PgCommand) -> geodex::Result<Outcome> {
    match cmd {
        PgCommand::Distance(a) => {
            let inst = ctx.pg(&a.pg)?;
            let p = inst.path(&[a.x, a.y])?;
            let d = pg_distance(&inst.space, inst.k, &p[0], &p[1])?;
            Ok(ok(json!({ "x": a.x, "y": a.y, "distance": d, "bases": bases(&p) })))
        }
        PgCommand::Opposite(a) => {
            let inst = ctx.pg(&a.pg)?;
            let p = inst.path(&[a.x, a.y])?;
            let r = is_opposite(&inst.space, &p[0], &p[1])?;
            Ok(ok(json!({
                "x": a.x,
                "y": a.y,
                "opposite": r.opposite,
                "exhaustive": r.exhaustive,
                "meet": r.meet.basis(),
                "xperp_meet_y": r.xperp_meet_y.basis(),
                "x_meet_yperp": r.x_meet_yperp.basis(),
                "radical": r.radical.basis(),
            })))
        }
        PgCommand::Normalize(a) => {
            let inst = ctx.pg(&a.pg)?;
            let paths: Vec<Vec<u32>> = match (a.random, a.length) {
                (Some(count), Some(len)) => {
                    let g = &inst.built.graph;
                    let dt = bfs_all(g)?;
                    if len > dt.diameter() {
                        return Err(Error::BadDistance(len as usize));
                    }
                    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
                    let vertices: Vec<u32> = (0..g.n() as u32).collect();
                    (0..count)
                        .map(|_| {
                            let root = *vertices.choose(&mut rng).expect("nonempty graph");
                            geodesics_from(g, &dt, root, len)
                                .choose(&mut rng)
                                .cloned()
                                .expect("vertex-transitive graph")
                        })
                        .collect()
                }
                _ if a.path.is_empty() => return Err(Error::BadParams("give --path or --random with --length".into())),
                _ => vec![a.path.clone()],
            };
            let mut forms = Vec::new();
            for p in &paths {
                let subs = inst.path(p)?;
                let nf = pg_geodesic_normalize(&inst.space, inst.k, &subs)?;
                let t = type_of(&inst.space, inst.k, &subs).ok();
                forms.push(json!({
                    "path": p,
                    "normal_form": nf,
                    "type": t.map(|t| t.0),
                    "fingerprint": orbit_fingerprint(&inst.space, inst.k, &subs)?,
                }));
            }
            Ok(ok(json!({ "geodesics": forms })))
        }
        PgCommand::Types(a) => {
            let omega = a.pg.space_spec()?.omega;
            let total = nonopposite_orbit_count(a.m, omega, a.pg.k)?;
            let cap = (omega - a.pg.k) as u32;
            let types: Vec<Value> = enumerate_types(a.m, cap)
                .iter()
                .map(|t| Ok(json!({ "type": t.0, "c_tau": c_tau(t)? })))
                .collect::<geodex::Result<_>>()?;
            let oracle = partition_oracle(a.m, cap as usize);
            Ok(Outcome {
                report: json!({ "m": a.m, "cap": cap, "types": types, "total": total, "partition_oracle": oracle, "bell": bell(a.m) }),
                pass: total == oracle,
            })
        }
        PgCommand::Orbits(a) => pg_orbits(ctx, &a.pg, a.brute),
        PgCommand::Witness(a) => {
            let space = a.space_spec()?.build()?;
            let w = not_drg_witness(&space, a.k)?;
            Ok(Outcome {
                pass: w.valid,
                report: json!({
                    "x": w.x.basis(),
                    "x1": w.x1.basis(),
                    "x2": w.x2.basis(),
                    "y2": w.y2.basis(),
                    "d_x_x1": w.d_x_x1,
                    "d_x_x2": w.d_x_x2,
                    "d_x_y2": w.d_x_y2,
                    "y2_adjacent_x2": w.y2_adjacent_x2,
                    "neighbours_of_x1": w.neighbours_of_x1,
                    "max_from_x1_neighbours": w.max_from_x1_neighbours,
                    "valid": w.valid,
                }),
            })
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TooLarge(_) => 3,
        Error::Malformed(_) | Error::Io(_) => 4,
        Error::Disconnected
        | Error::NotBipartite
        | Error::NotAntipodal
        | Error::NotDistanceRegular
        | Error::NotInvariant => 1,
        _ => 2,
    }
}

fn command_name(cmd: &Command) -> String {
    let v = to_value(cmd);
    // externally tagged enums serialise as {"variant": ...}
    let mut name = Vec::new();
    let mut cur = &v;
    while let Value::Object(map) = cur {
        match map.iter().next() {
            Some((k, inner)) if map.len() == 1 && k.chars().next().is_some_and(char::is_uppercase) => {
                let mut kebab = String::new();
                for (i, c) in k.chars().enumerate() {
                    if c.is_uppercase() && i > 0 {
                        kebab.push('-');
                    }
                    kebab.push(c.to_ascii_lowercase());
                }
                name.push(kebab);
                cur = inner;
            }
            _ => break,
        }
    }
    name.join(" ")
}

fn run(cli: &Cli) -> geodex::Result<Outcome> {
    let ctx = Ctx {
        bounds: Bounds {
            max_vertices: cli.global.max_vertices,
            max_vectors: cli.global.max_vectors,
            ..Bounds::default()
        },
        seed: cli.global.seed,
    };
    match &cli.command {
        Command::Build(a) => cmd_build(&ctx, a, cli.global.out.as_ref()),
        Command::Array(a) => cmd_array(&ctx, &a.family),
        Command::Census(a) => cmd_census(&ctx, &a.family),
        Command::Bijection(a) => cmd_bijection(&ctx, a),
        Command::Primitivity(a) => cmd_primitivity(&ctx, &a.family),
        Command::Orbits(a) => cmd_orbits(&ctx, a),
        Command::Check(c) => cmd_check(&ctx, c),
        Command::Screens(a) => cmd_screens(a),
        Command::Pg(c) => cmd_pg(&ctx, c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().expect("thread pool is configured once");
    }
    let config = json!({
        "command": command_name(&cli.command),
        "args": cli.command,
        "seed": cli.global.seed,
        "threads": rayon::current_num_threads(),
        "format": cli.global.format,
        "bounds": { "max_vertices": cli.global.max_vertices, "max_vectors": cli.global.max_vectors },
    });
    match run(&cli) {
        Ok(outcome) => {
            let mut report = outcome.report;
            if let Value::Object(map) = &mut report {
                map.insert("pass".into(), Value::Bool(outcome.pass));
            }
            let text = output::render(cli.global.format, &config, &report);
            let target = match cli.command {
                Command::Build(_) => None,
                _ => cli.global.out.as_deref(),
            };
            if let Err(e) = output::emit(&text, target) {
                eprintln!("error: {e}");
                return ExitCode::from(4);
            }
            ExitCode::from(if outcome.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
