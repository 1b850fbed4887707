//! Command-line front end. Every verb writes JSON (or CSV with
//! `--format csv`) to stdout. Exit codes: 0 success, 1 domain error (one JSON
//! error object on stdout), 2 usage error (message on stderr).

use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::comparability::{comparability_graph, flip_sequence, graphs_isomorphic};
use crate::error::Error;
use crate::face_lattice::{
    face_lattice, lattices_equivalent, permutohedron_lattice, two_face_census,
};
use crate::flip_map::{classify_tubes, decompose, flip_tubing_with_decomposition};
use crate::invariance::check_invariance;
use crate::poset::{complete_graded, parse_poset, Composition, Poset};
use crate::tubing::{
    enumerate_tubes, enumerate_tubings, f_vector, maximal_tubings, parse_tubing, Tubing,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Posets larger than this need `--force` for enumerating verbs.
pub const SIZE_GUARD: usize = 12;

#[derive(Parser, Debug)]
#[command(
    name = "poset-assoc",
    version,
    about = "Face data of poset associahedra"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// A poset given as a file path or as `graded:a1,a2,...`.
#[derive(Args, Debug, Clone)]
struct PosetArgs {
    /// Poset JSON file, or `graded:1,2,2`.
    poset: Option<String>,
    /// Use the complete graded poset of this composition.
    #[arg(long, value_name = "LIST")]
    graded: Option<String>,
    /// Allow enumeration on posets with more than 12 elements.
    #[arg(long)]
    force: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the complete graded poset of a composition.
    Graded { parts: String },
    /// Face counts by dimension.
    Fvector(PosetArgs),
    /// Coefficients of f(z - 1).
    Hvector(PosetArgs),
    /// All proper tubes.
    Tubes(PosetArgs),
    /// All proper tubings.
    Tubings {
        #[command(flatten)]
        poset: PosetArgs,
        #[arg(long)]
        count_only: bool,
    },
    /// Tubings of maximal size (vertices).
    Maximal(PosetArgs),
    /// Apply the flip map to one tubing.
    FlipMap {
        #[command(flatten)]
        poset: PosetArgs,
        /// Autonomous subset, comma-separated labels.
        #[arg(long, value_name = "LABELS")]
        subset: String,
        /// Tubing file.
        #[arg(long, value_name = "FILE")]
        tubing: String,
    },
    /// Decompose the bad tubes of a tubing.
    Decompose {
        #[command(flatten)]
        poset: PosetArgs,
        #[arg(long, value_name = "LABELS")]
        subset: String,
        #[arg(long, value_name = "FILE")]
        tubing: String,
    },
    /// Flip every autonomous subset and compare face counts.
    CheckInvariance(PosetArgs),
    /// Combinatorial equivalence of two associahedra, or one against a permutohedron.
    Equiv {
        /// Posets: file paths or `graded:LIST`.
        posets: Vec<String>,
        /// Complete graded posets, may repeat.
        #[arg(long, value_name = "LIST")]
        graded: Vec<String>,
        /// Compare against the permutohedron on n letters.
        #[arg(long, value_name = "N")]
        permutohedron: Option<usize>,
        #[arg(long)]
        force: bool,
    },
    /// Vertex counts of the 2-dimensional faces.
    Polygons(PosetArgs),
    /// Search a flip sequence between two posets.
    FlipSeq {
        posets: Vec<String>,
        #[arg(long, value_name = "LIST")]
        graded: Vec<String>,
        #[arg(long, default_value_t = 8)]
        max_depth: usize,
        #[arg(long)]
        force: bool,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(&'static str, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.code(), e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

/// Parse `argv` (including the program name) and execute.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(code, message)) => {
            let obj = json!({"schema_version": SCHEMA_VERSION, "error": code, "message": message});
            Outcome {
                code: 1,
                stdout: format!("{obj}\n"),
                stderr: String::new(),
            }
        }
    }
}

fn load_source(source: &str) -> CliResult<Poset> {
    if let Some(parts) = source.strip_prefix("graded:") {
        return graded_poset(parts);
    }
    let text = fs::read_to_string(source)
        .map_err(|e| Failure::Domain("Io", format!("cannot read `{source}`: {e}")))?;
    Ok(parse_poset(&text)?)
}

fn graded_poset(parts: &str) -> CliResult<Poset> {
    let a: Composition = parts.parse()?;
    Ok(complete_graded(&a)?)
}

fn guard(p: &Poset, force: bool) -> CliResult<()> {
    if p.len() > SIZE_GUARD && !force {
        return Err(Failure::Domain(
            "TooLarge",
            format!(
                "poset has {} elements (limit {SIZE_GUARD}); pass --force to enumerate anyway",
                p.len()
            ),
        ));
    }
    Ok(())
}

impl PosetArgs {
    fn load(&self, enumerates: bool) -> CliResult<Poset> {
        let p = match (&self.poset, &self.graded) {
            (Some(_), Some(_)) => {
                return Err(Failure::Usage(
                    "give either a poset file or --graded, not both".into(),
                ))
            }
            (None, None) => {
                return Err(Failure::Usage(
                    "missing poset: give a file or --graded".into(),
                ))
            }
            (Some(src), None) => load_source(src)?,
            (None, Some(parts)) => graded_poset(parts)?,
        };
        if enumerates {
            guard(&p, self.force)?;
        }
        Ok(p)
    }
}

fn load_many(posets: &[String], graded: &[String]) -> CliResult<Vec<Poset>> {
    let mut out = posets
        .iter()
        .map(|s| load_source(s))
        .collect::<CliResult<Vec<_>>>()?;
    for g in graded {
        out.push(graded_poset(g)?);
    }
    Ok(out)
}

fn subset_arg(p: &Poset, labels: &str) -> CliResult<crate::set::ElementSet> {
    let names: Vec<&str> = labels
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        return Err(Failure::Usage("--subset needs at least one label".into()));
    }
    Ok(p.subset_of(&names)?)
}

fn read_tubing(p: &Poset, path: &str) -> CliResult<Tubing> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Domain("Io", format!("cannot read `{path}`: {e}")))?;
    Ok(parse_tubing(p, &text)?)
}

fn with_schema(value: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    if let Value::Object(rest) = value {
        map.extend(rest);
    }
    Value::Object(map)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn json_out(value: Value) -> String {
    format!("{}\n", with_schema(value))
}

fn csv_out(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn tube_text(p: &Poset, t: crate::set::ElementSet) -> String {
    p.labels_of(t).join(";")
}

fn tubing_text(p: &Poset, t: &Tubing) -> String {
    t.tubes()
        .iter()
        .map(|&x| tube_text(p, x))
        .collect::<Vec<_>>()
        .join("|")
}

fn tubing_json(p: &Poset, t: &Tubing) -> Value {
    to_value(&t.to_file(p))
}

fn poset_json(p: &Poset) -> Value {
    to_value(&p.to_file())
}

fn execute(cli: &Cli) -> CliResult<String> {
    let csv = cli.format == Format::Csv;
    match &cli.command {
        Command::Graded { parts } => {
            let p = graded_poset(parts)?;
            if csv {
                let rows = p
                    .covers()
                    .into_iter()
                    .map(|(i, j)| vec![p.label(i).to_owned(), p.label(j).to_owned()])
                    .collect();
                return Ok(csv_out(&["lower", "upper"], rows));
            }
            Ok(json_out(poset_json(&p)))
        }
        Command::Fvector(args) => {
            let p = args.load(true)?;
            let f = f_vector(&p)?;
            if csv {
                let rows = f
                    .counts()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| vec![i.to_string(), c.to_string()])
                    .collect();
                return Ok(csv_out(&["dim", "f"], rows));
            }
            Ok(json_out(json!({
                "dim": f.dim(),
                "f": f.counts(),
                "convention": "f[i] counts i-dimensional faces, i.e. tubings with dim - i tubes",
            })))
        }
        Command::Hvector(args) => {
            let p = args.load(true)?;
            let f = f_vector(&p)?;
            let h = f.h_vector();
            if csv {
                let rows = h
                    .iter()
                    .enumerate()
                    .map(|(k, c)| vec![k.to_string(), c.to_string()])
                    .collect();
                return Ok(csv_out(&["k", "h"], rows));
            }
            Ok(json_out(json!({"f": f.counts(), "h": h})))
        }
        Command::Tubes(args) => {
            let p = args.load(true)?;
            let tubes = enumerate_tubes(&p)?;
            if csv {
                let rows = tubes
                    .iter()
                    .enumerate()
                    .map(|(i, &t)| vec![i.to_string(), t.len().to_string(), tube_text(&p, t)])
                    .collect();
                return Ok(csv_out(&["index", "size", "members"], rows));
            }
            let list: Vec<Vec<String>> = tubes.iter().map(|&t| p.labels_of(t)).collect();
            Ok(json_out(json!({"count": list.len(), "tubes": list})))
        }
        Command::Tubings { poset, count_only } => {
            let p = poset.load(true)?;
            if *count_only {
                let n = enumerate_tubings(&p)?.count();
                if csv {
                    return Ok(csv_out(&["count"], vec![vec![n.to_string()]]));
                }
                return Ok(json_out(json!({"count": n})));
            }
            let all: Vec<Tubing> = enumerate_tubings(&p)?.collect();
            Ok(tubing_list(&p, &all, csv))
        }
        Command::Maximal(args) => {
            let p = args.load(true)?;
            let all = maximal_tubings(&p)?;
            Ok(tubing_list(&p, &all, csv))
        }
        Command::FlipMap {
            poset,
            subset,
            tubing,
        } => {
            let p = poset.load(false)?;
            let s = subset_arg(&p, subset)?;
            let t = read_tubing(&p, tubing)?;
            let image = flip_tubing_with_decomposition(&p, s, &t)?;
            if csv {
                let rows = vec![
                    vec!["input".to_owned(), tubing_text(&p, &t)],
                    vec!["image".to_owned(), tubing_text(&p, &image.tubing)],
                ];
                return Ok(csv_out(&["role", "tubes"], rows));
            }
            Ok(json_out(json!({
                "subset": p.labels_of(s),
                "input": tubing_json(&p, &t),
                "image": tubing_json(&p, &image.tubing),
                "flipped_poset": poset_json(&image.flipped),
                "decomposition": to_value(&image.decomposition.to_file(&p)),
                "image_decomposition": to_value(&image.decomposition.reversed().to_file(&p)),
            })))
        }
        Command::Decompose {
            poset,
            subset,
            tubing,
        } => {
            let p = poset.load(false)?;
            let s = subset_arg(&p, subset)?;
            let t = read_tubing(&p, tubing)?;
            let classes = classify_tubes(&p, s, &t)?;
            let d = decompose(&p, s, &classes);
            let file = d.to_file(&p);
            if csv {
                let mut rows = Vec::new();
                for (part, seq) in [("L", &file.lower), ("U", &file.upper)] {
                    for (i, e) in seq.iter().enumerate() {
                        rows.push(vec![
                            part.into(),
                            i.to_string(),
                            e.star.to_string(),
                            e.set.join(";"),
                        ]);
                    }
                }
                for (i, b) in file.blocks.iter().enumerate() {
                    rows.push(vec!["M".into(), i.to_string(), String::new(), b.join(";")]);
                }
                return Ok(csv_out(&["part", "index", "star", "members"], rows));
            }
            Ok(json_out(to_value(&file)))
        }
        Command::CheckInvariance(args) => {
            let p = args.load(true)?;
            let reports = check_invariance(&p)?;
            let all = reports.iter().all(|r| r.passed());
            if csv {
                let rows = reports
                    .iter()
                    .map(|r| {
                        vec![
                            tube_text(&p, r.subset),
                            join_counts(r.f_original.counts()),
                            join_counts(r.f_flipped.counts()),
                            r.f_vector_preserved().to_string(),
                            (r.round_trip && r.bijective && r.size_preserved).to_string(),
                        ]
                    })
                    .collect();
                return Ok(csv_out(
                    &[
                        "subset",
                        "f_original",
                        "f_flipped",
                        "f_vector_preserved",
                        "flip_map_bijective",
                    ],
                    rows,
                ));
            }
            let subsets: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "subset": p.labels_of(r.subset),
                        "f_flipped": r.f_flipped.counts(),
                        "f_vector_preserved": r.f_vector_preserved(),
                        "size_preserved": r.size_preserved,
                        "round_trip": r.round_trip,
                        "bijective": r.bijective,
                        "verdict": format!("f-vector preserved: {}", r.f_vector_preserved()),
                    })
                })
                .collect();
            let f = f_vector(&p)?;
            Ok(json_out(
                json!({"f": f.counts(), "subsets": subsets, "all_passed": all}),
            ))
        }
        Command::Equiv {
            posets,
            graded,
            permutohedron,
            force,
        } => {
            let ps = load_many(posets, graded)?;
            for p in &ps {
                guard(p, *force)?;
            }
            let (left, right, right_f) = match (ps.as_slice(), permutohedron) {
                ([a], Some(n)) => {
                    if *n < 2 {
                        return Err(Failure::Usage("--permutohedron needs n >= 2".into()));
                    }
                    let la = face_lattice(a)?;
                    let lb = permutohedron_lattice(*n);
                    let fb = lb.rank_counts();
                    (la, lb, fb)
                }
                ([a, b], None) => {
                    let la = face_lattice(a)?;
                    let lb = face_lattice(b)?;
                    let fb = lb.rank_counts();
                    (la, lb, fb)
                }
                _ => {
                    return Err(Failure::Usage(
                        "equiv takes two posets, or one poset and --permutohedron N".into(),
                    ))
                }
            };
            let equivalent = lattices_equivalent(&left, &right);
            let left_f = left.rank_counts();
            if csv {
                return Ok(csv_out(
                    &["equivalent", "f_left", "f_right"],
                    vec![vec![
                        equivalent.to_string(),
                        join_counts(&left_f),
                        join_counts(&right_f),
                    ]],
                ));
            }
            Ok(json_out(json!({
                "equivalent": equivalent,
                "f_left": left_f,
                "f_right": right_f,
                "f_equal": left_f == right_f,
            })))
        }
        Command::Polygons(args) => {
            let p = args.load(true)?;
            let census = two_face_census(&p)?;
            let hist = census.histogram();
            if csv {
                let rows = hist
                    .iter()
                    .map(|(k, c)| vec![k.to_string(), c.to_string()])
                    .collect();
                return Ok(csv_out(&["sides", "count"], rows));
            }
            let hist: Vec<Value> = hist
                .iter()
                .map(|(k, c)| json!({"sides": k, "count": c}))
                .collect();
            Ok(json_out(
                json!({"census": census.sizes(), "histogram": hist}),
            ))
        }
        Command::FlipSeq {
            posets,
            graded,
            max_depth,
            force,
        } => {
            let ps = load_many(posets, graded)?;
            let [a, b] = ps.as_slice() else {
                return Err(Failure::Usage("flip-seq takes exactly two posets".into()));
            };
            guard(a, *force)?;
            guard(b, *force)?;
            let graphs_iso =
                graphs_isomorphic(&comparability_graph(a), &comparability_graph(b)).is_some();
            match flip_sequence(a, b, *max_depth) {
                Ok(seq) => {
                    if csv {
                        let rows = seq
                            .steps
                            .iter()
                            .enumerate()
                            .map(|(i, &s)| vec![i.to_string(), tube_text(a, s)])
                            .collect();
                        return Ok(csv_out(&["step", "subset"], rows));
                    }
                    let steps: Vec<Vec<String>> =
                        seq.steps.iter().map(|&s| a.labels_of(s)).collect();
                    let witness: Map<String, Value> = seq
                        .witness
                        .iter()
                        .enumerate()
                        .map(|(i, &j)| (a.label(i).to_owned(), json!(b.label(j))))
                        .collect();
                    Ok(json_out(json!({
                        "found": true,
                        "comparability_graphs_isomorphic": graphs_iso,
                        "steps": steps,
                        "witness": witness,
                    })))
                }
                Err(reason) => {
                    if csv {
                        return Ok(csv_out(
                            &["found", "reason"],
                            vec![vec!["false".into(), reason.to_string()]],
                        ));
                    }
                    Ok(json_out(json!({
                        "found": false,
                        "comparability_graphs_isomorphic": graphs_iso,
                        "reason": reason.to_string(),
                    })))
                }
            }
        }
    }
}

fn join_counts<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn tubing_list(p: &Poset, all: &[Tubing], csv: bool) -> String {
    if csv {
        let rows = all
            .iter()
            .enumerate()
            .map(|(i, t)| vec![i.to_string(), t.len().to_string(), tubing_text(p, t)])
            .collect();
        return csv_out(&["index", "size", "tubes"], rows);
    }
    let list: Vec<Value> = all.iter().map(|t| tubing_json(p, t)).collect();
    json_out(json!({"count": list.len(), "tubings": list}))
}
