use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use raagsep::separation::Phase;
use raagsep::{
    decompose, lh_contains, michailova_generators, normal_form, parse_graph_with,
    parse_presentation, parse_word, raag_presentation, separability_verdict, separate_cyclic,
    todd_coxeter, Budget, Error, Graph, ObstructionKind, ObstructionWitness, Separation, Verdict,
};

const EXIT_POSITIVE: u8 = 0;
const EXIT_INPUT: u8 = 2;
const EXIT_NEGATIVE: u8 = 3;
const EXIT_EXHAUSTED: u8 = 4;
const EXIT_INCONCLUSIVE: u8 = 5;

#[derive(Parser)]
#[command(name = "raagsep", version, about = "Subgroup separability of right-angled Artin groups")]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArgs {
    /// Graph file: one `u v` edge or `u` vertex per line.
    graph: PathBuf,

    /// Accept a file with no vertices.
    #[arg(long)]
    allow_empty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide subgroup separability; report a witness or the group structure.
    Analyze {
        #[command(flatten)]
        graph: GraphArgs,
        /// Include the input graph in Graphviz format.
        #[arg(long)]
        emit_dot: bool,
    },
    /// Print the decomposition tree of a separable graph.
    Decompose {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Print the RAAG presentation of a graph.
    Present {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Test two words for equality in the RAAG.
    Equal {
        #[command(flatten)]
        graph: GraphArgs,
        w1: String,
        w2: String,
    },
    /// Print the shortlex normal form of a word.
    Nf {
        #[command(flatten)]
        graph: GraphArgs,
        word: String,
    },
    /// Decide membership of a pair `u | v` in the subgroup L_H of F_n × F_n.
    Michailova {
        /// Presentation file: `gens: x y` then one relator per line.
        presentation: PathBuf,
        pair: String,
        #[arg(long, default_value_t = raagsep::michailova::DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Search for a finite quotient separating x from the cyclic subgroup ⟨h⟩.
    Separate {
        #[command(flatten)]
        graph: GraphArgs,
        h: String,
        x: String,
        /// Largest permutation degree searched exhaustively.
        #[arg(long, default_value_t = Budget::default().max_degree)]
        degree: usize,
        /// Seed for the randomized phase (decimal or 0x-prefixed hex).
        #[arg(long, value_parser = parse_seed, default_value = "0x52414147")]
        seed: u64,
        /// Wall-clock cap in seconds.
        #[arg(long, default_value_t = 10.0)]
        time_cap: f64,
        #[arg(long, default_value_t = Budget::default().max_candidates)]
        max_candidates: u64,
    },
}

fn parse_seed(s: &str) -> Result<u64, String> {
    match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16).map_err(|e| e.to_string()),
        None => s.parse().map_err(|e: std::num::ParseIntError| e.to_string()),
    }
}

struct Output {
    code: u8,
    text: String,
    payload: Map<String, Value>,
}

impl Output {
    fn new(code: u8, text: impl Into<String>, payload: Value) -> Self {
        let payload = match payload {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        Output {
            code,
            text: text.into(),
            payload,
        }
    }

    fn error(code: u8, message: String) -> Self {
        Output {
            code,
            text: format!("error: {message}"),
            payload: Map::from_iter([("message".to_string(), Value::String(message))]),
        }
    }
}

fn failure(e: Error) -> Output {
    let code = match e {
        Error::Exhausted(_) => EXIT_EXHAUSTED,
        _ => EXIT_INPUT,
    };
    Output::error(code, e.to_string())
}

fn read(path: &Path) -> Result<String, Output> {
    std::fs::read_to_string(path)
        .map_err(|e| Output::error(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_graph(args: &GraphArgs) -> Result<Graph, Output> {
    let text = read(&args.graph)?;
    parse_graph_with(&text, args.allow_empty).map_err(failure)
}

fn kind_name(k: ObstructionKind) -> &'static str {
    match k {
        ObstructionKind::PathLength3 => "path3",
        ObstructionKind::Square => "square",
    }
}

fn witness_json(w: &ObstructionWitness) -> Value {
    json!({
        "kind": kind_name(w.kind),
        "vertices": w.vertices,
        "group": w.kind.group_name(),
        "presentation": w.obstruction_group.to_string(),
        "relations": w.obstruction_group.relations_string(),
    })
}

fn witness_text(w: &ObstructionWitness) -> String {
    format!(
        "separable: no\nwitness: {}\npresentation: {}",
        w,
        w.obstruction_group
    )
}

fn analyze(args: &GraphArgs, emit_dot: bool) -> Result<Output, Output> {
    let g = load_graph(args)?;
    let mut out = match separability_verdict(&g) {
        Verdict::NotSeparable(w) => Output::new(
            EXIT_NEGATIVE,
            witness_text(&w),
            json!({ "separable": false, "witness": witness_json(&w) }),
        ),
        Verdict::Separable(t) => Output::new(
            EXIT_POSITIVE,
            format!(
                "separable: yes\nstructure: {}\ngroup: {}",
                t.render(),
                t.summary()
            ),
            json!({
                "separable": true,
                "structure": t.render(),
                "group": t.summary(),
                "tree": t,
            }),
        ),
    };
    if emit_dot {
        let dot = g.to_dot();
        out.text.push('\n');
        out.text.push_str(dot.trim_end());
        out.payload.insert("dot".into(), Value::String(dot));
    }
    Ok(out)
}

fn decompose_cmd(args: &GraphArgs) -> Result<Output, Output> {
    let g = load_graph(args)?;
    match decompose(&g) {
        Ok(t) => Ok(Output::new(
            EXIT_POSITIVE,
            format!("{}\n{}", t.render(), t.to_json()),
            json!({ "structure": t.render(), "group": t.summary(), "tree": t }),
        )),
        Err(Error::ObstructionPresent(w)) => Ok(Output::new(
            EXIT_NEGATIVE,
            witness_text(&w),
            json!({ "separable": false, "witness": witness_json(&w) }),
        )),
        Err(e) => Err(failure(e)),
    }
}

fn present(args: &GraphArgs) -> Result<Output, Output> {
    let g = load_graph(args)?;
    let p = raag_presentation(&g);
    let relators: Vec<String> = p
        .relators
        .iter()
        .map(|r| r.display(&p.generators).to_string())
        .collect();
    Ok(Output::new(
        EXIT_POSITIVE,
        p.to_string(),
        json!({
            "generators": p.generators,
            "relators": relators,
            "presentation": p.to_string(),
        }),
    ))
}

fn equal(args: &GraphArgs, w1: &str, w2: &str) -> Result<Output, Output> {
    let g = load_graph(args)?;
    let a = parse_word(&g, w1).map_err(failure)?;
    let b = parse_word(&g, w2).map_err(failure)?;
    let na = normal_form(&g, &a).map_err(failure)?;
    let nb = normal_form(&g, &b).map_err(failure)?;
    let eq = na == nb;
    Ok(Output::new(
        if eq { EXIT_POSITIVE } else { EXIT_NEGATIVE },
        eq.to_string(),
        json!({
            "equal": eq,
            "normal_forms": [
                na.display(g.vertices()).to_string(),
                nb.display(g.vertices()).to_string(),
            ],
        }),
    ))
}

fn nf(args: &GraphArgs, word: &str) -> Result<Output, Output> {
    let g = load_graph(args)?;
    let w = parse_word(&g, word).map_err(failure)?;
    let n = normal_form(&g, &w).map_err(failure)?;
    let s = n.display(g.vertices()).to_string();
    Ok(Output::new(
        EXIT_POSITIVE,
        s.clone(),
        json!({ "normal_form": s, "length": n.len() }),
    ))
}

fn michailova(path: &Path, pair: &str, max_cosets: usize) -> Result<Output, Output> {
    let h = parse_presentation(&read(path)?).map_err(failure)?;
    let p = h.parse_pair(pair).map_err(failure)?;
    let table = todd_coxeter(&h, max_cosets).map_err(failure)?;
    let member = lh_contains(&h, &p, &table).map_err(failure)?;
    let gens: Vec<String> = michailova_generators(&h)
        .iter()
        .map(|g| g.display(h.generators()).to_string())
        .collect();
    let pair_s = p.display(h.generators()).to_string();
    Ok(Output::new(
        if member { EXIT_POSITIVE } else { EXIT_NEGATIVE },
        format!(
            "{}: {pair_s}\n|H| = {}",
            if member { "member" } else { "non-member" },
            table.coset_count()
        ),
        json!({
            "member": member,
            "pair": pair_s,
            "order": table.coset_count(),
            "generators": gens,
        }),
    ))
}

fn phase_name(p: Phase) -> String {
    match p {
        Phase::Abelian { modulus } => format!("abelian_mod_{modulus}"),
        Phase::Exhaustive => "exhaustive".into(),
        Phase::Random => "random".into(),
    }
}

fn separate(args: &GraphArgs, h: &str, x: &str, budget: Budget) -> Result<Output, Output> {
    let g = load_graph(args)?;
    let hw = parse_word(&g, h).map_err(failure)?;
    let xw = parse_word(&g, x).map_err(failure)?;
    match separate_cyclic(&g, &hw, &xw, &budget) {
        Ok(Separation::Found {
            witness,
            phase,
            candidates,
        }) => {
            let images: Vec<String> = witness
                .images
                .iter()
                .map(|(v, p)| format!("  {v} -> {p}"))
                .collect();
            Ok(Output::new(
                EXIT_POSITIVE,
                format!(
                    "separated in degree {} ({})\n{}\nq(x) = {}\n|q(<h>)| = {}",
                    witness.degree,
                    phase_name(phase),
                    images.join("\n"),
                    witness.qx,
                    witness.qh_powers.len()
                ),
                json!({
                    "result": "separated",
                    "phase": phase_name(phase),
                    "candidates": candidates,
                    "witness": witness.to_json_value(),
                }),
            ))
        }
        Ok(Separation::Inconclusive {
            candidates,
            timed_out,
        }) => Ok(Output::new(
            EXIT_INCONCLUSIVE,
            format!("inconclusive after {candidates} candidates"),
            json!({ "result": "inconclusive", "candidates": candidates, "timed_out": timed_out }),
        )),
        Err(Error::NotOutside(e)) => Ok(Output::new(
            EXIT_NEGATIVE,
            format!("not outside: x = h^{e}"),
            json!({ "result": "not_outside", "exponent": e }),
        )),
        Err(e) => Err(failure(e)),
    }
}

fn run(cli: &Cli) -> Output {
    let result = match &cli.command {
        Command::Analyze { graph, emit_dot } => analyze(graph, *emit_dot),
        Command::Decompose { graph } => decompose_cmd(graph),
        Command::Present { graph } => present(graph),
        Command::Equal { graph, w1, w2 } => equal(graph, w1, w2),
        Command::Nf { graph, word } => nf(graph, word),
        Command::Michailova {
            presentation,
            pair,
            max_cosets,
        } => michailova(presentation, pair, *max_cosets),
        Command::Separate {
            graph,
            h,
            x,
            degree,
            seed,
            time_cap,
            max_candidates,
        } => {
            if !time_cap.is_finite() || *time_cap < 0.0 {
                Err(Output::error(EXIT_INPUT, "--time-cap must be a non-negative number".into()))
            } else {
                let budget = Budget {
                    max_degree: *degree,
                    max_candidates: *max_candidates,
                    seed: *seed,
                    time_cap: Duration::from_secs_f64(*time_cap),
                };
                separate(graph, h, x, budget)
            }
        }
    };
    result.unwrap_or_else(|e| e)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Decompose { .. } => "decompose",
        Command::Present { .. } => "present",
        Command::Equal { .. } => "equal",
        Command::Nf { .. } => "nf",
        Command::Michailova { .. } => "michailova",
        Command::Separate { .. } => "separate",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    let ok = out.code == EXIT_POSITIVE || out.code == EXIT_NEGATIVE || out.code == EXIT_INCONCLUSIVE;
    if cli.json {
        let mut obj = Map::new();
        obj.insert("status".into(), json!(if ok { "ok" } else { "error" }));
        obj.insert("command".into(), json!(command_name(&cli.command)));
        obj.extend(out.payload);
        println!("{}", Value::Object(obj));
    } else if ok {
        println!("{}", out.text);
    } else {
        eprintln!("{}", out.text);
    }
    ExitCode::from(out.code)
}
