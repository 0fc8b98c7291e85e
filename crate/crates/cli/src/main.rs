use std::io::{Read as _, Write as _};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use tops_core::degeneration::{classify_cy3, classify_k3, dual_graph, summit_triangulation, DegenerationReport};
use tops_core::io::{
    export_mesh, json_report, parse_polytope_file, reflexive_2d_database, reflexive_3d_database, run_survey, Exportable,
    MeshFormat, PolytopeRecord,
};
use tops_core::tops::{build_short_top_family, is_short_top, is_top, DualTop, ParameterAssignment, Top, TopFamily};
use tops_core::triangulation::{is_regular, is_unimodular, is_valid, triangulate_boundary, BoundaryVariant, Triangulation};
use tops_core::{polar, Int, LatticePolytope};

#[derive(Parser)]
#[command(name = "tops-kit", version, about = "Reflexive polytopes, tops and the degenerations they encode")]
struct Cli {
    /// Emit a versioned JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Vertex-matrix file, `-` for stdin, or `db:3d` / `db:2d` for the bundled databases.
    input: String,
    /// Record index, 0-based.
    #[arg(long)]
    record: Option<usize>,
}

#[derive(Args)]
struct FamilyArgs {
    #[command(flatten)]
    input: Input,
    /// Which boundary points the star triangulation uses.
    #[arg(long, value_enum, default_value_t = Variant::Maximal)]
    variant: Variant,
}

#[derive(Args)]
struct TopArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Parameter values `a1,a2,...`. Without them the input is read as a top.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    params: Option<Vec<i64>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Vertices,
    Maximal,
}

impl From<Variant> for BoundaryVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Vertices => BoundaryVariant::VerticesOnly,
            Variant::Maximal => BoundaryVariant::Maximal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Predicate {
    Reflexive,
    SmoothFano,
    Top,
    ShortTop,
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    /// The input polytope itself.
    Polytope,
    /// The top (its summit, for rank 4).
    Top,
    DualTop,
    /// Dual graph of the degeneration.
    Graph,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Obj,
    Edges,
}

#[derive(Subcommand)]
enum Command {
    /// Test records against a predicate.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        predicate: Predicate,
        /// Print nothing; exit 1 if any record fails.
        #[arg(long, short)]
        quiet: bool,
    },
    /// Lattice polar of a polytope.
    Polar(Input),
    /// Regular star triangulation of the boundary.
    Triangulate(FamilyArgs),
    /// Short-top family over a reflexive base, with its conditions.
    Family(FamilyArgs),
    /// One member of the short-top family.
    Instantiate(TopArgs),
    /// Degeneration of K3 surfaces from a rank-4 short top.
    ClassifyK3 {
        #[command(flatten)]
        top: TopArgs,
        /// Triangulate the whole top boundary instead of the summit.
        #[arg(long)]
        full: bool,
    },
    /// Degeneration of Calabi-Yau threefolds from a rank-5 short top.
    ClassifyCy3 {
        #[command(flatten)]
        top: TopArgs,
        #[arg(long)]
        full: bool,
    },
    /// Split and segment verdicts over a database of reflexive 3-polytopes.
    Survey {
        /// Defaults to the bundled database.
        #[arg(default_value = "db:3d")]
        input: String,
    },
    /// Mesh or edge list for plotting.
    Export {
        #[command(flatten)]
        top: TopArgs,
        #[arg(long, value_enum, default_value_t = Object::Top)]
        object: Object,
        #[arg(long, value_enum, default_value_t = Format::Obj)]
        format: Format,
        /// Output file; stdout when omitted.
        #[arg(long, short)]
        output: Option<std::path::PathBuf>,
    },
    /// Random feasible instantiations of the family, each checked.
    Sample {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Parameters are drawn from `[-1, bound]`.
        #[arg(long, default_value_t = 4)]
        bound: i64,
    },
}

fn load(input: &str) -> Result<Vec<PolytopeRecord>> {
    let records = match input {
        "db:3d" => reflexive_3d_database(),
        "db:2d" => reflexive_2d_database(),
        _ => {
            let mut text = String::new();
            if input == "-" {
                std::io::stdin().read_to_string(&mut text)?;
            } else {
                text = std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
            }
            let out = parse_polytope_file(&text, input);
            for e in &out.errors {
                eprintln!("warning: {input}: {e}");
            }
            out.records
        }
    };
    if records.is_empty() {
        bail!("{input}: no records");
    }
    Ok(records)
}

fn select(input: &Input) -> Result<Vec<PolytopeRecord>> {
    let all = load(&input.input)?;
    match input.record {
        None => Ok(all),
        Some(i) => {
            let n = all.len();
            let r = all.into_iter().nth(i).ok_or_else(|| anyhow!("record {i} out of range ({n} records)"))?;
            Ok(vec![r])
        }
    }
}

fn one(input: &Input) -> Result<(PolytopeRecord, LatticePolytope)> {
    let r = select(input)?.swap_remove(0);
    let p = r.polytope()?;
    Ok((r, p))
}

fn family(args: &FamilyArgs) -> Result<TopFamily> {
    let (_, base) = one(&args.input)?;
    let tri = triangulate_boundary(&base, args.variant.into())?;
    Ok(build_short_top_family(&base, &tri)?)
}

fn top(args: &TopArgs) -> Result<(Top, Option<DualTop>)> {
    match &args.params {
        Some(a) => {
            let (t, d) = family(&args.family)?.instantiate(&ParameterAssignment::from_i64s(a))?;
            Ok((t, Some(d)))
        }
        None => {
            let (r, p) = one(&args.family.input)?;
            let t = is_top(&p).ok_or_else(|| anyhow!("{} is not a top", r.id))?;
            Ok((t, None))
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn out(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit<T: Serialize>(json: bool, kind: &str, data: &T, text: impl FnOnce() -> String) -> Result<()> {
    if json {
        out(&format!("{}\n", serde_json::to_string_pretty(&json_report(kind, data)?)?))
    } else {
        out(&text())
    }
}

fn vertex_lines(vs: &[tops_core::IntVector]) -> String {
    vs.iter().map(|v| format!("  {v}\n")).collect()
}

fn params(a: &[Int]) -> String {
    a.iter().enumerate().map(|(i, v)| format!("a{} = {v}", i + 1)).collect::<Vec<_>>().join(", ")
}

fn run(cli: Cli) -> Result<ExitCode> {
    let json = cli.json;
    match cli.command {
        Command::Check { input, predicate, quiet } => {
            let mut rows = Vec::new();
            for r in select(&input)? {
                let p = r.polytope()?;
                let ok = match predicate {
                    Predicate::Reflexive => p.is_reflexive(),
                    Predicate::SmoothFano => p.is_smooth_fano()?,
                    Predicate::Top => is_top(&p).is_some(),
                    Predicate::ShortTop => is_top(&p).is_some_and(|t| is_short_top(&t)),
                };
                rows.push(json!({"id": r.id, "index": r.class_index, "holds": ok}));
            }
            let all = rows.iter().all(|r| r["holds"] == true);
            if quiet {
                return Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) });
            }
            let data = json!({"predicate": predicate, "records": rows, "all": all});
            emit(json, "check", &data, || {
                rows.iter()
                    .map(|r| format!("{}: {}\n", r["id"].as_str().unwrap_or(""), if r["holds"] == true { "yes" } else { "no" }))
                    .collect()
            })?;
        }
        Command::Polar(input) => {
            let (r, p) = one(&input)?;
            let q = polar(&p)?;
            match q.to_lattice() {
                Some(l) => emit(json, "polar", &l, || format!("# polar of {}\n{}", r.id, tops_core::io::write_polytope_file(&[record(&l)])))?,
                None => emit(json, "polar", &q, || {
                    let mut s = format!("# polar of {} is not a lattice polytope\n", r.id);
                    for v in q.vertices() {
                        s += &format!("  ({})\n", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
                    }
                    s
                })?,
            }
        }
        Command::Triangulate(args) => {
            let (_, base) = one(&args.input)?;
            let t = triangulate_boundary(&base, args.variant.into())?;
            let regular = is_regular(&t)?.is_some();
            let data = json!({"triangulation": t, "valid": is_valid(&t), "regular": regular, "unimodular": is_unimodular(&t)});
            emit(json, "triangulate", &data, || triangulation_text(&t, regular))?;
        }
        Command::Family(args) => {
            let f = family(&args)?;
            emit(json, "family", &f, || family_text(&f))?;
        }
        Command::Instantiate(args) => {
            if args.params.is_none() {
                bail!("instantiate needs --params");
            }
            let (t, d) = top(&args)?;
            let data = json!({"top": t, "short": is_short_top(&t), "dual_top": d});
            emit(json, "instantiate", &data, || {
                let mut s = format!("top of rank {}, short: {}\n", t.rank(), is_short_top(&t));
                s += &format!("vertices:\n{}", vertex_lines(t.polytope().vertices()));
                s += &format!("summit vertices:\n{}", vertex_lines(&t.summit_vertices()));
                s
            })?;
        }
        Command::ClassifyK3 { top: args, full } => classify(&args, full, json, classify_k3)?,
        Command::ClassifyCy3 { top: args, full } => classify(&args, full, json, classify_cy3)?,
        Command::Survey { input } => {
            let report = run_survey(&load(&input)?);
            emit(json, "survey", &report, || {
                let c = &report.counts;
                let mut s = format!("{} records, {} reflexive, {} not reflexive\n", report.total, c.reflexive, c.non_reflexive);
                s += &format!("polar reflexive: {}\nsmooth Fano: {}\n", c.polar_reflexive, c.smooth_fano);
                s += &format!("no case-2 split: {} {:?}\n", c.case2_failures, report.case2_failure_indices);
                s += &format!("no origin segment: {} {:?}\n", c.segment_failures, report.segment_failure_indices);
                s += &format!("no case-3(a) star triangulation found: {}\n", c.case3a_failures);
                s
            })?;
        }
        Command::Export { top: args, object, format, output } => {
            let format = match format {
                Format::Obj => MeshFormat::Obj,
                Format::Edges => MeshFormat::EdgeList,
            };
            let text = match object {
                Object::Polytope => export_mesh(Exportable::Polytope(&one(&args.family.input)?.1), format)?,
                Object::Top => export_mesh(Exportable::Top(&top(&args)?.0), format)?,
                Object::DualTop => {
                    let d = top(&args)?.1.ok_or_else(|| anyhow!("dual top needs --params"))?;
                    export_mesh(Exportable::DualTop(&d), format)?
                }
                Object::Graph => {
                    let t = top(&args)?.0;
                    export_mesh(Exportable::Graph(&dual_graph(&t, &summit_triangulation(&t)?)?), format)?
                }
            };
            match output {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => out(&text)?,
            }
        }
        Command::Sample { family: args, count, bound } => {
            let f = family(&args)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let (mut feasible, mut short) = (0usize, 0usize);
            for _ in 0..count {
                let a: Vec<i64> = (0..f.parameter_count()).map(|_| rng.gen_range(-1..=bound)).collect();
                let s = ParameterAssignment::from_i64s(&a);
                if f.violation(&s).is_some() {
                    continue;
                }
                feasible += 1;
                let (t, _) = f.instantiate(&s)?;
                short += usize::from(is_short_top(&t));
            }
            let data = json!({"seed": cli.seed, "count": count, "bound": bound, "feasible": feasible, "short": short});
            emit(json, "sample", &data, || {
                format!("seed {}: {feasible} of {count} draws feasible, {short} instantiated as short tops\n", cli.seed)
            })?;
            if short != feasible {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn classify(
    args: &TopArgs,
    full: bool,
    json: bool,
    f: fn(&Top, &Triangulation) -> tops_core::Result<DegenerationReport>,
) -> Result<()> {
    let (t, _) = top(args)?;
    let tri = if full { triangulate_boundary(t.polytope(), BoundaryVariant::Maximal)? } else { summit_triangulation(&t)? };
    let r = f(&t, &tri)?;
    let a: Option<Vec<Int>> = args.params.as_ref().map(|a| a.iter().map(|&v| Int::from(v)).collect());
    emit(json, "degeneration", &r, || report_text(&r, a.as_deref()))
}

fn record(p: &LatticePolytope) -> PolytopeRecord {
    PolytopeRecord {
        id: String::new(),
        matrix: p.vertex_matrix(),
        source_line: 0,
        class_index: 0,
    }
}

fn triangulation_text(t: &Triangulation, regular: bool) -> String {
    let mut s = format!(
        "{} points, {} simplices; valid: {}, regular: {regular}, unimodular: {}\n",
        t.points().len(),
        t.simplices().len(),
        is_valid(t),
        is_unimodular(t)
    );
    s += "points:\n";
    for (i, p) in t.points().iter().enumerate() {
        s += &format!("  {i}: {p}\n");
    }
    s += "simplices:\n";
    for c in t.simplices() {
        s += &format!("  {}\n", c.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
    }
    s
}

fn family_text(f: &TopFamily) -> String {
    let pts = f.triangulation().points();
    let mut s = format!("{} free parameters\n", f.parameter_count());
    for (i, &p) in f.parameters().iter().enumerate() {
        s += &format!("  a{} at {}\n", i + 1, pts[p]);
    }
    s += "pinned to -1:\n";
    for &p in f.pinned() {
        s += &format!("  {}\n", pts[p]);
    }
    let mut ineq: Vec<String> = f.inequalities().iter().filter(|c| !c.form.is_constant()).map(|c| format!("{} >= 0", c.form)).collect();
    ineq.sort();
    ineq.dedup();
    s += &format!("convexity ({} ridges):\n", f.inequalities().len());
    for l in ineq {
        s += &format!("  {l}\n");
    }
    if f.divisibility_is_trivial() {
        s += "divisibility: none\n";
    } else {
        s += "divisibility:\n";
        for d in f.divisibility().iter().filter(|d| !d.is_trivial()) {
            for c in d.congruences.iter().filter(|c| !c.is_trivial()) {
                s += &format!("  {} | {}\n", c.modulus, c.form);
            }
        }
    }
    s
}

fn report_text(r: &DegenerationReport, a: Option<&[Int]>) -> String {
    let mut s = String::new();
    if let Some(a) = a {
        s += &format!("{}\n", params(a));
    }
    s += &format!("case {}: summit is {}\n", r.case_label, r.summit);
    s += &format!("components: {}\n", r.components);
    s += &format!("cells by dimension: {:?}, Euler characteristic {}\n", r.graph.cell_counts(), r.verdict.euler_characteristic);
    s += &format!("support {:?}: {}\n", r.verdict.support, if r.verdict.passed { "passed" } else { "FAILED" });
    for (name, ok) in &r.verdict.checks {
        s += &format!("  {name}: {ok}\n");
    }
    if let Some(n) = r.maximal_nilpotency {
        s += &format!("N^3 != 0: {n}\n");
    }
    if let Some(m) = r.smoothness {
        s += &format!("smoothness: {m:?}\n");
    }
    for n in &r.notes {
        s += &format!("{n}\n");
    }
    s
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
