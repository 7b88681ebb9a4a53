//! Command line front end. Exit codes: 0 success, 1 domain error, 2 input
//! error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::io::{quiver_to_json, read_quiver, read_rep, read_root, rep_to_json, root_to_json};
use crate::linalg::{Field, FieldTag, PrimeField, Rationals};
use crate::order::{build_order_window, check_well_founded, poset_filtration};
use crate::quiver::{analyze_shapes, finite_retraction, is_eventually_outward, QuiverSpec, Subquiver};
use crate::reflection::{mountainize, phi_minus, phi_plus, reflect_quiver};
use crate::rep::{decompose_with_seed, dimension_vector, is_isomorphic, AnyRepresentation, Representation};
use crate::roots::{
    enumerate_positive_roots, indecomposable_from_root, is_positive_definite, tits_form_limit, tits_limit_net_oracle,
};

pub const SEED_ENV: &str = "QUIVERCALC_SEED";

#[derive(Debug, Parser)]
#[command(name = "quivercalc", version, about = "Exact computations with quiver representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized searches; QUIVERCALC_SEED takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a quiver file and print its normal form.
    Validate {
        #[arg(long)]
        quiver: PathBuf,
    },
    /// Shape of every component and the positive definiteness verdict.
    Classify {
        #[arg(long)]
        quiver: PathBuf,
    },
    /// Whether every ray is eventually outward.
    Outward {
        #[arg(long)]
        quiver: PathBuf,
    },
    /// A finite retraction containing the given vertices.
    Retraction {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, value_delimiter = ',')]
        atleast: Vec<String>,
    },
    /// Limit of the Tits form at a root.
    Tits {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        root: PathBuf,
    },
    /// Tits values over the net of finite IC subquivers.
    Net {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        root: PathBuf,
        #[arg(long, default_value_t = 10)]
        max: usize,
    },
    /// Positive roots seen by a window.
    Roots {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, default_value_t = 0)]
        depth: usize,
    },
    /// The indecomposable with a given dimension vector.
    Indec {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long)]
        root: PathBuf,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Krull-Schmidt decomposition.
    Decompose {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Reflect a quiver, or a representation, at a sink (--plus) or source
    /// (--minus).
    #[command(group(ArgGroup::new("input").required(true).args(["quiver", "rep"])))]
    #[command(group(ArgGroup::new("polarity").required(true).args(["plus", "minus"])))]
    Reflect {
        #[arg(long)]
        quiver: Option<PathBuf>,
        #[arg(long)]
        rep: Option<PathBuf>,
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        plus: bool,
        #[arg(long)]
        minus: bool,
    },
    /// Reflections taking a D-infinity orientation to the mountain.
    Mountainize {
        #[arg(long)]
        quiver: PathBuf,
    },
    /// Hasse diagram of the order on classes seen at a depth, as DOT.
    Order {
        #[arg(long)]
        quiver: PathBuf,
        #[arg(long, default_value_t = 0)]
        depth: usize,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Summand counts per class from the order filtration.
    Filtrate {
        #[arg(long)]
        rep: PathBuf,
    },
    /// Whether two representations are isomorphic.
    Isiso {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
}

/// Parse arguments, run, and return the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match run(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.code());
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    }
}

fn seed(cli: &Cli) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) => {
            s.trim().parse().map_err(|_| Error::Schema(format!("{SEED_ENV} must be an unsigned integer, got {s:?}")))
        }
        Err(_) => Ok(cli.seed),
    }
}

fn spec_at(path: &Path) -> Result<Arc<QuiverSpec>> {
    Ok(Arc::new(read_quiver(path)?))
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("values serialize"))?;
    Ok(())
}

fn line(out: &mut dyn Write, s: impl std::fmt::Display) -> Result<()> {
    writeln!(out, "{s}")?;
    Ok(())
}

macro_rules! on_rep {
    ($any:expr, $r:ident => $body:expr) => {
        match $any {
            AnyRepresentation::Rational($r) => $body,
            AnyRepresentation::Prime($r) => $body,
        }
    };
}

macro_rules! on_field {
    ($tag:expr, $f:ident => $body:expr) => {
        match $tag {
            FieldTag::Rational => {
                let $f = &Rationals;
                $body
            }
            FieldTag::Prime(p) => {
                let $f = &PrimeField::new(p)?;
                $body
            }
        }
    };
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let json = cli.json;
    let seed = seed(cli)?;
    match &cli.command {
        Command::Validate { quiver } => {
            let s = read_quiver(quiver)?;
            if json {
                emit(out, &quiver_to_json(&s))
            } else {
                line(
                    out,
                    format!(
                        "ok: {} ({} vertices, {} arrows, {} rays)",
                        s.name,
                        s.vertices.len(),
                        s.arrows.len(),
                        s.rays.len()
                    ),
                )
            }
        }
        Command::Classify { quiver } => {
            let s = spec_at(quiver)?;
            let shapes = analyze_shapes(&s);
            let d = is_positive_definite(&s);
            if json {
                let comps: Vec<Value> = s
                    .components()
                    .iter()
                    .zip(&shapes)
                    .map(|(c, a)| json!({"vertices": c.vertices, "class": a.class.to_string()}))
                    .collect();
                let witness = d
                    .witness
                    .as_ref()
                    .map(|w| json!({"labels": w.labels, "value": w.value, "root": w.root.as_ref().map(root_to_json)}));
                emit(out, &json!({"components": comps, "positive_definite": d.positive_definite, "witness": witness}))
            } else {
                for (c, a) in s.components().iter().zip(&shapes) {
                    line(out, format!("{}: {}", c.vertices.join(","), a.class))?;
                }
                line(out, format!("positive definite: {}", d.positive_definite))?;
                if let Some(w) = d.witness {
                    let labels: Vec<String> = w.labels.iter().map(|(v, x)| format!("{v}={x}")).collect();
                    line(out, format!("witness: {} (value {})", labels.join(" "), w.value))?;
                }
                Ok(())
            }
        }
        Command::Outward { quiver } => {
            let o = is_eventually_outward(&read_quiver(quiver)?);
            if json {
                emit(out, &json!({"outward": o.outward, "witness": o.witness}))
            } else {
                match o.witness {
                    None => line(out, "true"),
                    Some(r) => line(out, format!("false (ray {r})")),
                }
            }
        }
        Command::Retraction { quiver, atleast } => {
            let s = read_quiver(quiver)?;
            let sub = Subquiver::full(&s, atleast.iter().cloned())?;
            let r = finite_retraction(&s, &sub)?;
            if json {
                emit(out, &json!({"vertices": r.vertices, "arrows": r.arrows}))
            } else {
                line(out, r.vertices.join(" "))
            }
        }
        Command::Tits { quiver, root } => {
            let s = spec_at(quiver)?;
            let n = read_root(&s, root)?;
            let limit = tits_form_limit(&n);
            if json {
                emit(out, &serde_json::to_value(limit).expect("limits serialize"))
            } else {
                line(out, limit)
            }
        }
        Command::Net { quiver, root, max } => {
            let s = spec_at(quiver)?;
            let n = read_root(&s, root)?;
            let report = tits_limit_net_oracle(&n, *max)?;
            if json {
                emit(out, &serde_json::to_value(&report).expect("reports serialize"))
            } else {
                match report.outcome {
                    crate::roots::NetOutcome::Stabilized(v) => line(out, format!("stabilized {v}")),
                    crate::roots::NetOutcome::Unstabilized => Err(Error::Unstabilized(*max)),
                }
            }
        }
        Command::Roots { quiver, depth } => {
            let s = spec_at(quiver)?;
            let roots = enumerate_positive_roots(&s, *depth)?;
            if json {
                emit(out, &Value::Array(roots.iter().map(root_to_json).collect()))
            } else {
                roots.iter().try_for_each(|r| line(out, r))
            }
        }
        Command::Indec { quiver, root, field } => {
            let s = spec_at(quiver)?;
            let n = read_root(&s, root)?;
            on_field!(field.parse::<FieldTag>()?, f => emit(out, &rep_to_json(&indecomposable_from_root(f, &n)?)))
        }
        Command::Decompose { rep } => on_rep!(read_rep(rep)?, v => report_decomposition(&v, seed, json, out)),
        Command::Reflect { quiver, rep, vertex, plus, minus: _ } => match (quiver, rep) {
            (_, Some(rep)) => on_rep!(read_rep(rep)?, v => {
                let w = if *plus { phi_plus(&v, vertex)? } else { phi_minus(&v, vertex)? };
                emit(out, &rep_to_json(&w))
            }),
            (Some(q), None) => {
                let s = read_quiver(q)?;
                if *plus && !s.is_sink(vertex)? {
                    return Err(Error::NotSink(vertex.clone()));
                }
                if !*plus && !s.is_source(vertex)? {
                    return Err(Error::NotSource(vertex.clone()));
                }
                emit(out, &quiver_to_json(&reflect_quiver(&s, vertex)?))
            }
            (None, None) => unreachable!("clap requires one input"),
        },
        Command::Mountainize { quiver } => {
            let steps = mountainize(&read_quiver(quiver)?)?;
            emit(out, &serde_json::to_value(steps).expect("steps serialize"))
        }
        Command::Order { quiver, depth, field } => {
            let s = spec_at(quiver)?;
            on_field!(field.parse::<FieldTag>()?, f => report_order(f, &s, *depth, json, out))
        }
        Command::Filtrate { rep } => on_rep!(read_rep(rep)?, v => {
            let f = poset_filtration(&v, seed)?;
            emit(out, &json!({"classes": f.counts(), "audit": f.audit}))?;
            if f.audit.passed() {
                Ok(())
            } else {
                Err(Error::AuditFailure(format!("{:?}", f.audit)))
            }
        }),
        Command::Isiso { rep, other } => {
            let same = match (read_rep(rep)?, read_rep(other)?) {
                (AnyRepresentation::Rational(a), AnyRepresentation::Rational(b)) => is_isomorphic(&a, &b)?,
                (AnyRepresentation::Prime(a), AnyRepresentation::Prime(b)) => is_isomorphic(&a, &b)?,
                (a, b) => return Err(Error::FieldMismatch { left: a.field_tag(), right: b.field_tag() }),
            };
            if json {
                emit(out, &json!({"isomorphic": same}))
            } else {
                line(out, same)
            }
        }
    }
}

fn report_decomposition<K: Field>(v: &Representation<K>, seed: u64, json: bool, out: &mut dyn Write) -> Result<()> {
    let d = decompose_with_seed(v, seed);
    if json {
        let summands: Vec<Value> = d.summands.iter().map(rep_to_json).collect();
        return emit(out, &json!({"certificate": d.certificate, "summands": summands}));
    }
    line(
        out,
        format!("{} summands ({})", d.summands.len(), serde_json::to_value(d.certificate).unwrap().as_str().unwrap()),
    )?;
    for s in &d.summands {
        line(out, dimension_vector(s)?)?;
    }
    Ok(())
}

fn report_order<K: Field>(field: &K, s: &Arc<QuiverSpec>, depth: usize, json: bool, out: &mut dyn Write) -> Result<()> {
    let w = build_order_window(field, s, depth)?;
    let wf = check_well_founded(&w);
    if json {
        let classes: Vec<Value> = w
            .classes
            .iter()
            .map(|c| json!({"root": root_to_json(&c.dimension), "type": c.dinfty.as_ref().map(|t| t.kind.to_string())}))
            .collect();
        let mut edges = Vec::new();
        for a in 0..w.len() {
            for b in 0..w.len() {
                if w.adjacency(a, b) {
                    edges.push([a, b]);
                }
            }
        }
        return emit(
            out,
            &json!({"depth": depth, "classes": classes, "edges": edges, "acyclic": wf.acyclic, "cycle": wf.cycle}),
        );
    }
    if !wf.acyclic {
        return Err(Error::OrderCycle);
    }
    write!(out, "{}", w.hasse_dot()?)?;
    Ok(())
}

/// Convenience for the binary.
pub fn main_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    main_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
