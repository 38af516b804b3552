//! The `oddsig` command line.
//!
//! Exit codes: 0 for a positive result (certificate found, certificate
//! accepted, map found, command completed), 1 for a negative one, 2 for any
//! error. Output depends only on the inputs and flags; `--jobs` changes the
//! number of worker threads, never the output.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::thread;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use oddsig_core::freesig::derive_witness_from_mycielski;
use oddsig_core::homposet::{
    dismantle, hom_complex, is_crown, iterated_subdivision, q_poset, z2_map_search, MapSearch,
    Z2Poset, DEFAULT_ELEMENT_CAP,
};
use oddsig_core::mycielski::{base_cycle, class_member, coind2_certificate_search, CoindSearch};
use oddsig_core::oracle::{exhaustive_detect, MAX_EDGEWISE_EDGES};
use oddsig_core::sig2::{detect_component, ComponentReport, ComponentVerdict, DetectOptions};
use oddsig_core::Graph;

use crate::cert::{self, Verdict};
use crate::dot::poset_dot;
use crate::formats::{parse_graph, write_dimacs, write_edge_list};

#[derive(Debug, Parser)]
#[command(
    name = "oddsig",
    version,
    about = "Odd closed walks with trivial 4-cycle signatures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CertFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dimacs,
    Edges,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search every component for an odd closed walk with zero signature.
    Detect {
        graph: PathBuf,
        /// Write the first certificate found here.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: CertFormat,
        /// Also express the walk signature as a sum of relators.
        #[arg(long)]
        decompose: bool,
        /// Cross-check each component by exhaustive enumeration when small.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check a JSON certificate against a graph.
    Verify {
        graph: PathBuf,
        certificate: PathBuf,
    },
    /// Print a graph in DIMACS form.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
        #[arg(long, global = true)]
        output: Option<PathBuf>,
        #[arg(long, global = true, value_enum, default_value = "dimacs")]
        format: GraphFormat,
    },
    /// Search a homomorphism from a cone over an odd cycle and derive a
    /// rewriting certificate for its base cycle.
    Witness {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_q: usize,
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Hom-complex reports.
    Homposet {
        graph: PathBuf,
        #[command(subcommand)]
        action: PosetAction,
        /// Largest poset built at any stage.
        #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
        /// Deepest barycentric subdivision allowed.
        #[arg(long, global = true, default_value_t = 2)]
        max_depth: usize,
        /// Node budget of the map search.
        #[arg(long, global = true, default_value_t = 10_000_000)]
        budget: u64,
        /// Write the Hasse diagram of the final poset.
        #[arg(long, global = true)]
        dot: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum GenerateKind {
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// Iterated cone over K_2, a member of the class K_k.
    Mycielski {
        k: usize,
        heights: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum PosetAction {
    Build,
    Dismantle,
    /// Z2-map from the hom-complex to Q_1.
    Z2map,
    Subdivide {
        m: usize,
    },
}

/// Runs one invocation; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Detect {
            graph,
            certificate,
            format,
            decompose,
            oracle,
            jobs,
        } => cmd_detect(
            &graph,
            certificate.as_deref(),
            format,
            decompose,
            oracle,
            jobs,
            out,
        ),
        Command::Verify { graph, certificate } => cmd_verify(&graph, &certificate, out),
        Command::Generate {
            kind,
            output,
            format,
        } => cmd_generate(kind, output.as_deref(), format, out),
        Command::Witness {
            graph,
            max_q,
            max_n,
            budget,
            certificate,
        } => cmd_witness(&graph, max_q, max_n, budget, certificate.as_deref(), out),
        Command::Homposet {
            graph,
            action,
            cap,
            max_depth,
            budget,
            dot,
        } => cmd_homposet(&graph, action, cap, max_depth, budget, dot.as_deref(), out),
    }
}

/// Component reports in component order, computed on up to `jobs` threads.
fn reports(g: &Graph, opts: DetectOptions, jobs: usize) -> Vec<ComponentReport> {
    let comps = g.connected_components();
    let jobs = jobs.clamp(1, comps.len().max(1));
    let mut slots: Vec<Option<ComponentReport>> = vec![None; comps.len()];
    thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                let comps = &comps;
                s.spawn(move || {
                    (w..comps.len())
                        .step_by(jobs)
                        .map(|i| (i, detect_component(g, &comps[i], i, opts)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("detector thread") {
                slots[i] = Some(r);
            }
        }
    });
    slots
        .into_iter()
        .map(|r| r.expect("every component"))
        .collect()
}

fn cmd_detect(
    path: &Path,
    certificate: Option<&Path>,
    format: CertFormat,
    decompose: bool,
    oracle: bool,
    jobs: usize,
    out: &mut dyn Write,
) -> Result<i32> {
    let g = read_graph(path)?;
    if g.has_loops() {
        bail!("graph has loops");
    }
    let reports = reports(&g, DetectOptions { decompose }, jobs);
    writeln!(
        out,
        "graph: {} vertices, {} edges, {} component{}",
        g.vertex_count(),
        g.edge_count(),
        reports.len(),
        if reports.len() == 1 { "" } else { "s" }
    )?;
    let mut first = None;
    for r in &reports {
        let what = match &r.verdict {
            ComponentVerdict::Bipartite => "bipartite".to_string(),
            ComponentVerdict::NoSolution => "no solution".to_string(),
            ComponentVerdict::Certificate(c) => {
                first.get_or_insert(c);
                format!("certificate, walk length {}", c.walk.len())
            }
        };
        writeln!(
            out,
            "component {} ({} vertices): {what}",
            r.component,
            r.vertices.len()
        )?;
        if oracle {
            let sub = g.induced_subgraph(&r.vertices);
            if sub.edge_count() > MAX_EDGEWISE_EDGES {
                writeln!(out, "  oracle: skipped ({} edges)", sub.edge_count())?;
            } else {
                let yes = exhaustive_detect(&sub)
                    .map_err(|e| anyhow!("oracle: {e}"))?
                    .is_yes();
                let ours = matches!(r.verdict, ComponentVerdict::Certificate(_));
                if yes != ours {
                    bail!("oracle disagrees on component {}", r.component);
                }
                writeln!(out, "  oracle: {} (agrees)", if yes { "yes" } else { "no" })?;
            }
        }
    }
    match first {
        Some(c) => {
            if let Some(p) = certificate {
                let text = match format {
                    CertFormat::Json => cert::to_json(&cert::sigma2_json(&g, c)),
                    CertFormat::Text => cert::write_sigma2_text(&g, c),
                };
                write_file(p, &text)?;
            }
            let walk: Vec<String> = c.walk.vertices().iter().map(|v| v.to_string()).collect();
            writeln!(out, "result: certificate (component {})", c.component)?;
            writeln!(out, "walk: {}", walk.join(" "))?;
            Ok(0)
        }
        None => {
            writeln!(out, "result: no solution")?;
            Ok(1)
        }
    }
}

fn cmd_verify(graph: &Path, certificate: &Path, out: &mut dyn Write) -> Result<i32> {
    let g = read_graph(graph)?;
    let text = fs::read_to_string(certificate)
        .with_context(|| format!("reading {}", certificate.display()))?;
    let c = cert::from_json(&text).with_context(|| format!("parsing {}", certificate.display()))?;
    match cert::verify_json(&g, &c)? {
        Verdict::Accepted => {
            writeln!(out, "accepted ({})", c.kind)?;
            Ok(0)
        }
        Verdict::Rejected(why) => {
            writeln!(out, "rejected: {why}")?;
            Ok(1)
        }
    }
}

fn cmd_generate(
    kind: GenerateKind,
    output: Option<&Path>,
    format: GraphFormat,
    out: &mut dyn Write,
) -> Result<i32> {
    let (g, note) = match kind {
        GenerateKind::Cycle { n } => {
            if n < 3 {
                bail!("a cycle needs at least 3 vertices");
            }
            (Graph::cycle(n), format!("cycle n={n}"))
        }
        GenerateKind::Complete { n } => (Graph::complete(n), format!("complete n={n}")),
        GenerateKind::Mycielski { k, heights } => {
            if heights.contains(&0) {
                bail!("heights must be positive");
            }
            let g = class_member(k, &heights)?;
            let hs: Vec<String> = heights.iter().map(|h| h.to_string()).collect();
            (g, format!("mycielski k={k} heights={}", hs.join(",")))
        }
    };
    let text = match format {
        GraphFormat::Dimacs => write_dimacs(&g, &[format!("oddsig generate {note}")]),
        GraphFormat::Edges => write_edge_list(&g),
    };
    match output {
        Some(p) => write_file(p, &text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}

fn cmd_witness(
    path: &Path,
    max_q: usize,
    max_n: usize,
    budget: u64,
    certificate: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let g = read_graph(path)?;
    match coind2_certificate_search(&g, max_q, max_n, budget) {
        CoindSearch::Found { q, n, cone, hom } => {
            let rewrite = derive_witness_from_mycielski(&cone, &hom)?;
            let walk = base_cycle(&cone, &hom)?;
            writeln!(out, "found: M_{q}(C_{n}) -> graph")?;
            let w: Vec<String> = walk.vertices().iter().map(|v| v.to_string()).collect();
            writeln!(out, "base cycle: {}", w.join(" "))?;
            writeln!(out, "rewrite steps: {}", rewrite.steps.len())?;
            if let Some(p) = certificate {
                write_file(p, &cert::to_json(&cert::sigma1_json(&g, &walk, &rewrite)))?;
            }
            Ok(0)
        }
        CoindSearch::NoneFound => {
            writeln!(
                out,
                "none-found (exhaustive within q <= {max_q}, n <= {max_n})"
            )?;
            Ok(1)
        }
        CoindSearch::Exhausted => {
            writeln!(out, "exhausted (budget {budget} per cell)")?;
            Ok(1)
        }
    }
}

fn cmd_homposet(
    path: &Path,
    action: PosetAction,
    cap: usize,
    max_depth: usize,
    budget: u64,
    dot: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let g = read_graph(path)?;
    let resource = |e| anyhow!("resource error: {e}");
    let complex = hom_complex(&g, cap).map_err(resource)?;
    let mut shown: Z2Poset = complex.z2().clone();
    let code = match action {
        PosetAction::Build => {
            let shape = if is_crown(complex.z2()) {
                ", crown"
            } else {
                ""
            };
            writeln!(out, "{} elements{shape}", complex.len())?;
            0
        }
        PosetAction::Dismantle => {
            let p = complex.poset();
            let d = dismantle(p, &[]);
            for &(x, y) in &d.removed {
                writeln!(out, "remove {} dominated by {}", p.label(x), p.label(y))?;
            }
            writeln!(out, "core: {} elements", d.core.len())?;
            if d.is_dismantlable() {
                writeln!(out, "dismantlable")?;
                0
            } else {
                writeln!(out, "not dismantlable")?;
                1
            }
        }
        PosetAction::Z2map => match z2_map_search(complex.z2(), &q_poset(1), budget) {
            MapSearch::Found(f) => {
                writeln!(out, "found")?;
                let q1 = q_poset(1);
                for (x, &y) in f.iter().enumerate() {
                    writeln!(
                        out,
                        "  {} -> {}",
                        complex.poset().label(x),
                        q1.poset().label(y)
                    )?;
                }
                0
            }
            MapSearch::NoneFound => {
                writeln!(out, "none-found (exhaustive)")?;
                1
            }
            MapSearch::Exhausted => {
                writeln!(out, "exhausted (budget {budget})")?;
                1
            }
        },
        PosetAction::Subdivide { m } => {
            if m > max_depth {
                bail!("resource error: subdivision depth {m} exceeds the cap {max_depth}");
            }
            shown = iterated_subdivision(complex.z2(), m, cap).map_err(resource)?;
            writeln!(out, "S^{m}: {} elements", shown.len())?;
            0
        }
    };
    if let Some(p) = dot {
        write_file(p, &poset_dot(shown.poset(), "homposet"))?;
    }
    Ok(code)
}
