//! `qlayout`: exact queue layouts from the command line.
//!
//! Exit codes: 0 success or yes, 1 a negative answer or an invalid layout,
//! 2 bad input, 3 an internal failure (including a produced layout that does
//! not validate), 4 a capacity limit.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qlayout::layout::{max_rainbow, validate_layout};
use qlayout::oracle::{oracle_queue_number, DEFAULT_CAP};
use qlayout::params::min_vertex_cover;
use qlayout::td_kernel::{decide_1queue_td, kernelize_1queue, Canonicalizer, Thresholds, DEFAULT_KERNEL_CAP};
use qlayout::vc_kernel::{build_vc_kernel, queue_number_vc};
use qlayout::{Edge, Graph, KernelError, LayoutError, LinearLayout, OracleError, Validation, VcError};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qlayout", version, about = "Exact queue layouts of small and structured graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Number of queues, for `kernel-vc` and `oracle`.
    #[arg(long, global = true)]
    h: Option<usize>,

    /// `paper` or `synthetic:<c2>[,<c3>,...]`, for `td1` and `kernel-td`.
    #[arg(long, global = true)]
    thresholds: Option<String>,

    /// Minimum class size before a component may be pruned (synthetic only).
    #[arg(long, global = true)]
    min_class: Option<usize>,

    /// Largest kernel `td1` searches exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_KERNEL_CAP)]
    kernel_cap: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the produced layout here (SVG with `--format svg`, JSON
    /// otherwise); commands without a layout write their report instead.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Accepted for harness compatibility; every computation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    oracle_cap: usize,

    /// Solve each connected component separately (`qn` always does).
    #[arg(long, global = true)]
    per_component: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Queue number via the vertex-cover kernel, with an optimal layout.
    Qn { input: Option<PathBuf> },
    /// Validate a layout JSON file against a graph.
    Check { graph: PathBuf, layout: PathBuf },
    /// Decide whether the graph has a 1-queue layout via the treedepth kernel.
    Td1 { input: Option<PathBuf> },
    /// Print the treedepth kernel and its removal log.
    KernelTd { input: Option<PathBuf> },
    /// Print the vertex-cover kernel for `--h` queues and its trim log.
    KernelVc { input: Option<PathBuf> },
    /// Queue number by exhaustive search over vertex orders.
    Oracle { input: Option<PathBuf> },
    /// Draw a layout as an SVG arc diagram, its largest rainbow in bold.
    Render { graph: PathBuf, layout: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

enum Failure {
    Input(String),
    Internal(String),
    Capacity(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
            Failure::Capacity(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Internal(m) | Failure::Capacity(m) => m,
        }
    }
}

impl From<KernelError> for Failure {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::KernelTooLarge { .. } | KernelError::ComponentTooLarge { .. } => Failure::Capacity(e.to_string()),
            KernelError::Graph(_) => Failure::Input(e.to_string()),
            e => Failure::Internal(e.to_string()),
        }
    }
}

impl From<VcError> for Failure {
    fn from(e: VcError) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Capacity(format!("{e}; raise it with --oracle-cap"))
    }
}

/// What a command produced: whether the answer is positive, the report, and
/// the layout in the requested file format, if there is one.
struct Report {
    yes: bool,
    body: String,
    artifact: Option<String>,
}

impl Report {
    fn plain(yes: bool, body: String) -> Self {
        Report { yes, body, artifact: None }
    }
}

type Outcome = Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => match emit(&report, cli.output.as_deref()) {
            Ok(()) => ExitCode::from(if report.yes { 0 } else { 1 }),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn emit(report: &Report, output: Option<&Path>) -> io::Result<()> {
    let stdout = match (output, &report.artifact) {
        (Some(path), Some(artifact)) => {
            fs::write(path, artifact)?;
            &report.body
        }
        (Some(path), None) => return fs::write(path, &report.body),
        (None, _) => &report.body,
    };
    print!("{stdout}");
    if !stdout.ends_with('\n') {
        println!();
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    let td_command = matches!(cli.command, Command::Td1 { .. } | Command::KernelTd { .. });
    if !td_command && (cli.thresholds.is_some() || cli.min_class.is_some()) {
        return Err(Failure::Input("--thresholds and --min-class only apply to td1 and kernel-td".into()));
    }
    match &cli.command {
        Command::Qn { input } => cmd_qn(cli, &read_graph(input.as_deref())?),
        Command::Check { graph, layout } => {
            let g = read_graph(Some(graph))?;
            cmd_check(&g, &read_layout(&g, layout)?)
        }
        Command::Td1 { input } => cmd_td1(cli, &read_graph(input.as_deref())?),
        Command::KernelTd { input } => cmd_kernel_td(cli, &read_graph(input.as_deref())?),
        Command::KernelVc { input } => cmd_kernel_vc(cli, &read_graph(input.as_deref())?),
        Command::Oracle { input } => cmd_oracle(cli, &read_graph(input.as_deref())?),
        Command::Render { graph, layout } => {
            let g = read_graph(Some(graph))?;
            cmd_render(&g, &read_layout(&g, layout)?)
        }
    }
}

fn read_text(path: Option<&Path>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        }
        _ => {
            io::stdin().read_to_string(&mut text).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn read_graph(path: Option<&Path>) -> Result<Graph, Failure> {
    qlayout::parse_graph(&read_text(path)?).map_err(|e| Failure::Input(e.to_string()))
}

fn read_layout(g: &Graph, path: &Path) -> Result<LinearLayout, Failure> {
    let layout = LinearLayout::from_json(g, &read_text(Some(path))?).map_err(|e| Failure::Input(e.to_string()))?;
    // Structural mismatches are input errors; nesting is judged by the caller.
    validate_layout(g, &layout).map_err(layout_input_error)?;
    Ok(layout)
}

fn layout_input_error(e: LayoutError) -> Failure {
    Failure::Input(e.to_string())
}

fn thresholds(cli: &Cli) -> Result<Thresholds, Failure> {
    let mut t: Thresholds = cli.thresholds.as_deref().unwrap_or("paper").parse().map_err(Failure::Input)?;
    if let Some(m) = cli.min_class {
        match &mut t {
            Thresholds::Synthetic { min_class, .. } => *min_class = m,
            Thresholds::Exact => return Err(Failure::Input("--min-class needs synthetic thresholds".into())),
        }
    }
    Ok(t)
}

/// The self-check every produced layout passes before it is printed.
fn checked(g: &Graph, layout: &LinearLayout, queues: usize) -> Result<(), Failure> {
    match validate_layout(g, layout) {
        Ok(Validation::Valid) if layout.num_queues() <= queues => Ok(()),
        Ok(Validation::Valid) => Err(Failure::Internal(format!(
            "produced layout uses {} queues, more than the claimed {queues}",
            layout.num_queues()
        ))),
        Ok(Validation::Nested(v)) => Err(Failure::Internal(format!(
            "produced layout is invalid: {} in queue {}",
            describe_nesting(g, v.outer, v.inner),
            v.queue
        ))),
        Err(e) => Err(Failure::Internal(format!("produced layout is malformed: {e}"))),
    }
}

fn edge_label(g: &Graph, e: Edge) -> String {
    format!("{}-{}", g.label(e.0), g.label(e.1))
}

fn describe_nesting(g: &Graph, outer: Edge, inner: Edge) -> String {
    format!("{} nests over {}", edge_label(g, outer), edge_label(g, inner))
}

fn order_line(g: &Graph, layout: &LinearLayout) -> String {
    layout.order().iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(" ")
}

fn queue_lines(g: &Graph, layout: &LinearLayout) -> String {
    let mut out = String::new();
    for q in 1..=layout.num_queues() {
        let edges: Vec<String> =
            layout.queues().iter().filter(|(_, &x)| x == q).map(|(&e, _)| edge_label(g, e)).collect();
        out.push_str(&format!("queue {q}: {}\n", edges.join(" ")));
    }
    out
}

fn render_layout(g: &Graph, layout: &LinearLayout) -> String {
    qlayout::svg::render(g, layout, &max_rainbow(g, layout.order()).edges)
}

/// Layout section of a report, in the chosen format.
fn layout_report(cli: &Cli, g: &Graph, headline: String, extra: Value, layout: Option<&LinearLayout>) -> String {
    let format = if cli.output.is_some() && cli.format == Format::Svg { Format::Text } else { cli.format };
    match format {
        Format::Svg => match layout {
            Some(l) => render_layout(g, l),
            None => format!("{headline}\n"),
        },
        Format::Json => {
            let mut doc = extra;
            doc["layout"] = layout.map_or(Value::Null, |l| l.to_json(g));
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
        Format::Text => {
            let mut out = format!("{headline}\n");
            if let Some(l) = layout.filter(|l| !l.order().is_empty()) {
                out.push_str(&format!("order: {}\n", order_line(g, l)));
                out.push_str(&queue_lines(g, l));
            }
            out
        }
    }
}

/// Runs `f` on every component and glues the layouts together.
fn per_component<T>(
    g: &Graph,
    mut f: impl FnMut(&Graph) -> Result<(T, Option<LinearLayout>), Failure>,
) -> Result<(Vec<T>, Option<LinearLayout>), Failure> {
    let mut results = Vec::new();
    let mut parts = Some(Vec::new());
    for c in g.connected_components() {
        let (sub, origin) = g.induced_subgraph(&c).map_err(|e| Failure::Internal(e.to_string()))?;
        let (r, layout) = f(&sub)?;
        results.push(r);
        match (layout, parts.as_mut()) {
            (Some(l), Some(p)) => p.push(l.map_vertices(&origin)),
            _ => parts = None,
        }
    }
    Ok((results, parts.map(LinearLayout::concat)))
}

/// The layout as it is written to `--output`.
fn artifact(cli: &Cli, g: &Graph, layout: Option<&LinearLayout>) -> Option<String> {
    let l = layout?;
    Some(match cli.format {
        Format::Svg => render_layout(g, l),
        _ => format!("{}\n", serde_json::to_string_pretty(&l.to_json(g)).expect("serializable")),
    })
}

fn cmd_qn(cli: &Cli, g: &Graph) -> Outcome {
    let (hs, layout) = per_component(g, |sub| {
        let (h, l) = queue_number_vc(sub)?;
        Ok((h, Some(l)))
    })?;
    let h = hs.into_iter().max().unwrap_or(0);
    let layout = layout.expect("every component has a layout");
    checked(g, &layout, h)?;
    let body = layout_report(cli, g, h.to_string(), json!({ "queue_number": h }), Some(&layout));
    Ok(Report { yes: true, body, artifact: artifact(cli, g, Some(&layout)) })
}

fn cmd_check(g: &Graph, layout: &LinearLayout) -> Outcome {
    match validate_layout(g, layout).map_err(layout_input_error)? {
        Validation::Valid => Ok(Report::plain(true, format!("valid {}-queue layout\n", layout.num_queues()))),
        Validation::Nested(v) => Ok(Report::plain(
            false,
            format!("invalid: {} in queue {}\n", describe_nesting(g, v.outer, v.inner), v.queue),
        )),
    }
}

fn require_connected(cli: &Cli, g: &Graph) -> Result<(), Failure> {
    let comps = g.connected_components().len();
    if comps > 1 && !cli.per_component {
        return Err(Failure::Input(format!("graph is disconnected ({comps} components); pass --per-component")));
    }
    Ok(())
}

struct TdPart {
    yes: bool,
    kernel_size: usize,
    removals: Vec<Value>,
    fallback: bool,
}

fn cmd_td1(cli: &Cli, g: &Graph) -> Outcome {
    require_connected(cli, g)?;
    let t = thresholds(cli)?;
    let (parts, layout) = per_component(g, |sub| {
        let d = decide_1queue_td(sub, &t, cli.kernel_cap)?;
        let part = TdPart {
            yes: d.is_yes(),
            kernel_size: d.kernel.graph.n(),
            removals: log_entries(d.kernel.removal_log_json(sub)),
            fallback: d.fallback,
        };
        Ok((part, d.layout))
    })?;
    let yes = parts.iter().all(|p| p.yes);
    let kernel_size: usize = parts.iter().map(|p| p.kernel_size).sum();
    let removals: Vec<Value> = parts.iter().flat_map(|p| p.removals.iter().cloned()).collect();
    let fallback = parts.iter().any(|p| p.fallback);
    let layout = if yes { layout } else { None };
    if let Some(l) = &layout {
        checked(g, l, 1)?;
    }
    let answer = if yes { "yes" } else { "no" };
    let body = match cli.format {
        Format::Text => {
            let mut out = format!("{answer}\nkernel: {kernel_size} of {} vertices\n", g.n());
            if fallback {
                out.push_str("a pruned component could not be re-inserted; the layout was searched directly\n");
            }
            out.push_str(&removal_lines(&removals));
            let rest = layout_report(cli, g, String::new(), Value::Null, layout.as_ref());
            out.push_str(rest.trim_start_matches('\n'));
            out
        }
        _ => layout_report(
            cli,
            g,
            answer.into(),
            json!({ "answer": answer, "kernel_size": kernel_size, "fallback": fallback, "removals": removals }),
            layout.as_ref(),
        ),
    };
    Ok(Report { yes, body, artifact: artifact(cli, g, layout.as_ref()) })
}

fn log_entries(log: Value) -> Vec<Value> {
    match log {
        Value::Array(entries) => entries,
        _ => Vec::new(),
    }
}

fn removal_lines(removals: &[Value]) -> String {
    removals
        .iter()
        .map(|r| {
            let removed: Vec<&str> = r["removed"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
            let mut line = format!("removed {{{}}} (class of {})", removed.join(", "), r["class_size"]);
            if let Some(anchor) = r["anchor"].as_str() {
                line.push_str(&format!(" below {anchor} at depth {}", r["depth"]));
            }
            line + "\n"
        })
        .collect()
}

fn cmd_kernel_td(cli: &Cli, g: &Graph) -> Outcome {
    require_connected(cli, g)?;
    let t = thresholds(cli)?;
    let mut canon = Canonicalizer::default();
    let (parts, _) = per_component(g, |sub| {
        let kernel = kernelize_1queue(sub, &t, &mut canon)?;
        let kept: Vec<String> = kernel.origin.iter().map(|&v| sub.label(v).to_string()).collect();
        let log = log_entries(kernel.removal_log_json(sub));
        let edges: Vec<(String, String)> = kernel
            .graph
            .edges()
            .iter()
            .map(|e| (kernel.graph.label(e.0).to_string(), kernel.graph.label(e.1).to_string()))
            .collect();
        let entry = (kernel.k, kept, edges, log);
        Ok((entry, None))
    })?;
    let height = parts.iter().map(|p| p.0).max().unwrap_or(0);
    let removals: Vec<Value> = parts.iter().flat_map(|p| p.3.iter().cloned()).collect();
    let kept: Vec<String> = parts.iter().flat_map(|p| p.1.iter().cloned()).collect();
    let edges: Vec<&(String, String)> = parts.iter().flat_map(|p| p.2.iter()).collect();
    let body = match cli.format {
        Format::Json => {
            let pairs: Vec<Value> = edges.iter().map(|(a, b)| json!([a, b])).collect();
            let doc = json!({
                "height": height,
                "kernel": { "vertices": kept, "edges": pairs },
                "removals": removals,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
        _ => format!(
            "kernel: {} of {} vertices, decomposition height {height}\n{}edges: {}\n",
            kept.len(),
            g.n(),
            removal_lines(&removals),
            edges.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" ")
        ),
    };
    Ok(Report::plain(true, body))
}

fn cmd_kernel_vc(cli: &Cli, g: &Graph) -> Outcome {
    let h = cli.h.ok_or_else(|| Failure::Input("kernel-vc needs --h".into()))?;
    if h == 0 {
        return Err(Failure::Input("--h must be positive".into()));
    }
    let cover = min_vertex_cover(g, g.n()).expect("the full vertex set is a cover");
    let kernel = build_vc_kernel(g, &cover, h);
    let cover_labels: Vec<&str> = cover.cover.iter().map(|v| g.label(v)).collect();
    let trims = log_entries(kernel.trims_to_json(g));
    let body = match cli.format {
        Format::Json => {
            let doc = json!({
                "cover": cover_labels,
                "class_bound": kernel.bound,
                "kernel": kernel.graph.to_json(),
                "trims": trims,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
        _ => {
            let edges: Vec<String> = kernel.graph.edges().iter().map(|&e| edge_label(&kernel.graph, e)).collect();
            format!(
                "kernel: {} of {} vertices\ncover: {}\nclass bound: {}\n{}edges: {}\n",
                kernel.graph.n(),
                g.n(),
                cover_labels.join(" "),
                kernel.bound,
                removal_lines(&trims),
                edges.join(" ")
            )
        }
    };
    Ok(Report::plain(true, body))
}

fn cmd_oracle(cli: &Cli, g: &Graph) -> Outcome {
    let r = oracle_queue_number(g, cli.oracle_cap)?;
    checked(g, &r.witness, r.queue_number)?;
    let yes = cli.h.map_or(true, |h| r.queue_number <= h);
    let body = layout_report(
        cli,
        g,
        r.queue_number.to_string(),
        json!({ "queue_number": r.queue_number, "orders_examined": r.orders_examined }),
        Some(&r.witness),
    );
    Ok(Report { yes, body, artifact: artifact(cli, g, Some(&r.witness)) })
}

fn cmd_render(g: &Graph, layout: &LinearLayout) -> Outcome {
    if let Validation::Nested(v) = validate_layout(g, layout).map_err(layout_input_error)? {
        return Ok(Report::plain(
            false,
            format!("invalid: {} in queue {}\n", describe_nesting(g, v.outer, v.inner), v.queue),
        ));
    }
    Ok(Report::plain(true, render_layout(g, layout)))
}
