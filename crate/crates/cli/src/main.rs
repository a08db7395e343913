//! `homthresh`: generate, check, fold and enumerate graphs; run verification campaigns.
//!
//! Results are JSON on stdout (or in `--out`/`--report` files). Exit status is
//! 0 on success, 1 when a check, campaign or homomorphism verification fails,
//! and 2 on usage or input errors. `HOMTHRESH_THREADS` sets the worker count.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use homthresh::generators::{
    andrasfai, blow_up, complement_power_cycle, mycielski, named_family, subdivided_k4, subdivided_k4_weights,
    BlowupSpec,
};
use homthresh::harness::{self, CampaignConfig, DegreeBound, EnumerationConstraints};
use homthresh::homomorphism::{
    chromatic_number, find_hom_with, fold_to_andrasfai, is_core, verify_hom, FoldOptions, HomOptions, Homomorphism,
};
use homthresh::io::{read_graphs, to_graph6, write_graph, Format};
use homthresh::optimizer::{optimal_blowup_weights, parse_ratio, realize_weights, Exact, RationalWeights};
use homthresh::structure::{first_addable_edge, is_free, saturate, shortest_odd_cycle, two_seven_cycles_gadget};
use homthresh::Graph;

#[derive(Parser)]
#[command(name = "homthresh", version, about = "Verification laboratory for {C3, C5}-free graphs of large minimum degree")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph from a named family.
    Gen(GenArgs),
    /// Evaluate a predicate on every input graph.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Add edges until no more can be added without a short odd cycle.
    Saturate {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'l', long, default_value_t = 3)]
        ell: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Homomorphism search and verification.
    Hom {
        #[command(subcommand)]
        op: HomCmd,
    },
    /// Fold a maximal graph onto the least possible Andrásfai graph.
    Fold(FoldArgs),
    /// Decide whether each graph is a core.
    Core(Input),
    /// Exact chromatic number.
    Chi(Input),
    /// Exact blow-up weights maximising the minimum weighted degree.
    Optimize {
        /// Pattern graph file.
        #[arg(long, alias = "in")]
        pattern: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Also build the blow-up realising the weights at this order.
        #[arg(long)]
        realize: Option<usize>,
    },
    /// Isomorph-free enumeration under constraints.
    Enumerate(EnumArgs),
    /// Run a verification campaign (or `all`).
    Campaign(CampaignArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    G6,
    Edges,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::G6 => Format::Graph6,
            FormatArg::Edges => Format::EdgeList,
        }
    }
}

#[derive(Args)]
struct Input {
    /// Graph file, directory of `.g6` files, or `-` for stdin (graph6).
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct Output {
    /// Output file; graph6 on stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format; inferred from the extension when omitted.
    #[arg(long = "out-format", value_enum)]
    out_format: Option<FormatArg>,
}

#[derive(Args)]
struct GenArgs {
    /// andrasfai, complement-power, mycielski, t, t-star, blowup, gadget, cycle, path, complete, grotzsch, moebius.
    family: String,
    #[arg(short = 'k')]
    k: Option<usize>,
    #[arg(short = 'l', long = "ell")]
    ell: Option<usize>,
    #[arg(short = 'n')]
    n: Option<usize>,
    /// Power for `complement-power`.
    #[arg(short = 'p')]
    p: Option<usize>,
    /// Class sizes for `blowup`, comma separated.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Base graph for `mycielski` and `blowup`.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// No odd cycle shorter than 2ℓ+1.
    Freeness {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'l', long, default_value_t = 3)]
        ell: usize,
    },
    /// Free and no edge can be added.
    Saturate {
        #[command(flatten)]
        input: Input,
        #[arg(short = 'l', long, default_value_t = 3)]
        ell: usize,
    },
    /// A structural statement, or `all` of them.
    Lemma {
        /// well-behaved-7-cycles, seven-cycle-domination, common-neighbour, induced-c6,
        /// two-seven-cycles, twelve-cycle-diagonals or all.
        name: String,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand)]
enum HomCmd {
    /// Search for a homomorphism into the target.
    Find {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
        /// Disable orbit-based symmetry breaking.
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Check a map given as a JSON array of target indices.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    Fold(FoldArgs),
    Core(Input),
    Chi(Input),
}

#[derive(Args)]
struct FoldArgs {
    #[command(flatten)]
    input: Input,
    #[arg(short = 'l', long, default_value_t = 3)]
    ell: usize,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
    /// Also build the class partition from a copy of the folded graph.
    #[arg(long)]
    structural: bool,
}

#[derive(Args)]
struct EnumArgs {
    #[arg(long, default_value_t = 1)]
    nmin: usize,
    #[arg(long)]
    nmax: usize,
    #[arg(long)]
    connected: bool,
    #[arg(long)]
    odd_girth: Option<usize>,
    #[arg(long)]
    forbid_c5: bool,
    /// Keep graphs with δ ≥ this value.
    #[arg(long, conflicts_with = "min_degree_above")]
    min_degree: Option<usize>,
    /// Keep graphs with δ > slope·n + offset; slope as `p/q`.
    #[arg(long)]
    min_degree_above: Option<String>,
    #[arg(long, default_value = "0", requires = "min_degree_above")]
    offset: String,
    /// Print only the count.
    #[arg(long)]
    count: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CampaignArgs {
    /// theorem_main, forbidden_structures, fk_properties, c5_triangle_free, counterexample_t or all.
    name: String,
    /// JSON configuration; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    allow_large: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Slack ε in δ > (1/5 + ε)n, as `p/q`.
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    blowups: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    fk_k_max: Option<usize>,
    #[arg(long)]
    t_k_max: Option<usize>,
    #[arg(long)]
    c5_nmax: Option<usize>,
    #[arg(long)]
    probe_12: bool,
    #[arg(long)]
    budget: Option<u64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

/// Failure of a checked property, as opposed to an error.
struct Failed;

fn main() -> ExitCode {
    if let Ok(t) = std::env::var("HOMTHRESH_THREADS") {
        match t.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: HOMTHRESH_THREADS must be a positive integer, got '{t}'");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Failed)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

type Outcome = anyhow::Result<Option<Failed>>;

fn ok_if(pass: bool) -> Option<Failed> {
    (!pass).then_some(Failed)
}

fn read_input(input: &Input) -> anyhow::Result<Vec<Graph>> {
    read_path(&input.input, input.format.map(Format::from))
}

fn read_path(path: &Path, format: Option<Format>) -> anyhow::Result<Vec<Graph>> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(read_graphs(&text, format.unwrap_or(Format::Graph6))?);
    }
    if path.is_dir() {
        let mut files: Vec<PathBuf> = fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| Format::from_path(p) == Format::Graph6)
            .collect();
        files.sort();
        let mut out = Vec::new();
        for f in files {
            out.extend(read_path(&f, Some(Format::Graph6))?);
        }
        return Ok(out);
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let graphs = read_graphs(&text, format.unwrap_or_else(|| Format::from_path(path)))
        .with_context(|| format!("parsing {}", path.display()))?;
    if graphs.is_empty() {
        bail!("{} contains no graph", path.display());
    }
    Ok(graphs)
}

fn read_one(path: &Path) -> anyhow::Result<Graph> {
    let mut gs = read_path(path, None)?;
    if gs.len() != 1 {
        bail!("{} must hold exactly one graph, found {}", path.display(), gs.len());
    }
    Ok(gs.remove(0))
}

/// One value per input graph; a lone graph prints a bare object.
fn emit(mut values: Vec<Value>) -> anyhow::Result<()> {
    let v = if values.len() == 1 { values.remove(0) } else { Value::Array(values) };
    print_stdout(&format!("{}\n", serde_json::to_string_pretty(&v)?))
}

/// Writes to stdout, treating a closed pipe (`| head`) as success.
fn print_stdout(text: &str) -> anyhow::Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn write_graphs(graphs: &[Graph], output: &Output) -> anyhow::Result<()> {
    let format = output
        .out_format
        .map(Format::from)
        .or_else(|| output.out.as_deref().map(Format::from_path))
        .unwrap_or(Format::Graph6);
    if format == Format::EdgeList && graphs.len() != 1 {
        bail!("edge-list output holds one graph; use graph6 for {}", graphs.len());
    }
    let text: String = graphs.iter().map(|g| write_graph(g, format)).collect();
    match &output.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print_stdout(&text)?,
    }
    Ok(())
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Gen(a) => gen(a),
        Cmd::Check { what } => check(what),
        Cmd::Saturate { input, ell, output } => {
            let graphs = read_input(&input)?
                .iter()
                .map(|g| saturate(g, ell))
                .collect::<homthresh::Result<Vec<_>>>()?;
            write_graphs(&graphs, &output)?;
            Ok(None)
        }
        Cmd::Hom { op } => match op {
            HomCmd::Find { input, target, budget, no_symmetry } => {
                let h = read_one(&target)?;
                let opts = HomOptions { budget, symmetry_breaking: !no_symmetry };
                let out = read_input(&input)?
                    .iter()
                    .map(|g| serde_json::to_value(find_hom_with(g, &h, opts)))
                    .collect::<Result<Vec<_>, _>>()?;
                emit(out)?;
                Ok(None)
            }
            HomCmd::Verify { input, target, map } => {
                let h = read_one(&target)?;
                let f: Homomorphism = serde_json::from_str(&fs::read_to_string(&map)?)
                    .context("the map must be a JSON array of target indices")?;
                let g = read_one(&input.input)?;
                let valid = verify_hom(&g, &h, &f)?;
                emit(vec![json!({ "valid": valid })])?;
                Ok(ok_if(valid))
            }
            HomCmd::Fold(a) => fold(a),
            HomCmd::Core(i) => core(i),
            HomCmd::Chi(i) => chi(i),
        },
        Cmd::Fold(a) => fold(a),
        Cmd::Core(i) => core(i),
        Cmd::Chi(i) => chi(i),
        Cmd::Optimize { pattern, format, realize } => {
            let h = read_path(&pattern, format.map(Format::from))?
                .into_iter()
                .next()
                .ok_or_else(|| anyhow!("no pattern graph"))?;
            let lp = optimal_blowup_weights(&h)?;
            let mut v = serde_json::to_value(&lp)?;
            v["certified"] = json!(lp.certify(&h));
            if let Some(n) = realize {
                let r = realize_weights(&h, &lp.weights, n)?;
                v["realization"] = serde_json::to_value(&r)?;
                v["realization"]["graph6"] = json!(to_graph6(&r.graph));
            }
            emit(vec![v])?;
            Ok(None)
        }
        Cmd::Enumerate(a) => enumerate(a),
        Cmd::Campaign(a) => campaign(a),
    }
}

fn gen(a: GenArgs) -> Outcome {
    let need = |v: Option<usize>, what: &str| v.ok_or_else(|| anyhow!("family '{}' needs {what}", a.family));
    let base = || -> anyhow::Result<Graph> {
        read_one(a.input.as_deref().ok_or_else(|| anyhow!("family '{}' needs --in", a.family))?)
    };
    let g = match a.family.as_str() {
        "andrasfai" => andrasfai(need(a.k, "-k")?, a.ell.unwrap_or(3))?,
        "complement-power" => complement_power_cycle(need(a.n, "-n")?, need(a.p, "-p")?)?,
        "mycielski" => mycielski(&base()?),
        "t" => subdivided_k4(need(a.ell, "-l")?)?,
        "t-star" => {
            let ell = need(a.ell, "-l")?;
            let w = RationalWeights::from_integers(&subdivided_k4_weights(ell)?)?;
            realize_weights(&subdivided_k4(ell)?, &w, 6 * ell - 4)?.graph
        }
        "blowup" => blow_up(&BlowupSpec::new(base()?, a.sizes.clone())?)?,
        "gadget" => two_seven_cycles_gadget(),
        other => named_family(other, a.n)?,
    };
    write_graphs(&[g], &a.output)?;
    Ok(None)
}

fn check(what: CheckCmd) -> Outcome {
    let mut all_hold = true;
    let mut out = Vec::new();
    match what {
        CheckCmd::Freeness { input, ell } => {
            for g in read_input(&input)? {
                let short = shortest_odd_cycle(&g).filter(|c| c.len() < 2 * ell + 1);
                all_hold &= short.is_none();
                out.push(json!({
                    "graph6": to_graph6(&g),
                    "statement": format!("free-{ell}"),
                    "verdict": if short.is_none() { "holds" } else { "fails" },
                    "witness": short.map(|c| json!({ "odd_cycle": c })),
                }));
            }
        }
        CheckCmd::Saturate { input, ell } => {
            for g in read_input(&input)? {
                let free = is_free(&g, ell);
                let addable = if free { first_addable_edge(&g, ell) } else { None };
                let holds = free && addable.is_none();
                all_hold &= holds;
                out.push(json!({
                    "graph6": to_graph6(&g),
                    "statement": format!("maximal-free-{ell}"),
                    "verdict": if holds { "holds" } else { "fails" },
                    "witness": if !free {
                        json!({ "odd_cycle": shortest_odd_cycle(&g) })
                    } else {
                        json!(addable.map(|(u, v)| json!({ "addable_edge": [u, v] })))
                    },
                }));
            }
        }
        CheckCmd::Lemma { name, input } => {
            let names: Vec<&str> = if name == "all" {
                harness::STRUCTURE_STATEMENTS.to_vec()
            } else if harness::STRUCTURE_STATEMENTS.contains(&name.as_str()) {
                vec![name.as_str()]
            } else {
                bail!("unknown statement '{name}'; expected one of {} or all", harness::STRUCTURE_STATEMENTS.join(", "));
            };
            for g in read_input(&input)? {
                for s in &names {
                    let v = harness::run_statement(s, &g).expect("known statement");
                    all_hold &= v.holds;
                    out.push(json!({
                        "graph6": to_graph6(&g),
                        "statement": v.statement,
                        "verdict": if v.holds { "holds" } else { "fails" },
                        "examined": v.examined,
                        "witness": v.witness,
                    }));
                }
            }
        }
    }
    emit(out)?;
    Ok(ok_if(all_hold))
}

fn fold(a: FoldArgs) -> Outcome {
    let opts = FoldOptions { ell: a.ell, k_max: a.k_max, budget: a.budget, structural: a.structural };
    let mut all = true;
    let mut out = Vec::new();
    for g in read_input(&a.input)? {
        let r = fold_to_andrasfai(&g, opts)?;
        all &= r.k.is_some();
        out.push(serde_json::to_value(&r)?);
    }
    emit(out)?;
    Ok(ok_if(all))
}

fn core(i: Input) -> Outcome {
    let out = read_input(&i)?
        .iter()
        .map(|g| json!({ "graph6": to_graph6(g), "core": is_core(g) }))
        .collect();
    emit(out)?;
    Ok(None)
}

fn chi(i: Input) -> Outcome {
    let mut out = Vec::new();
    for g in read_input(&i)? {
        out.push(json!({ "graph6": to_graph6(&g), "chromatic_number": chromatic_number(&g)? }));
    }
    emit(out)?;
    Ok(None)
}

fn enumerate(a: EnumArgs) -> Outcome {
    let min_degree = match (&a.min_degree, &a.min_degree_above) {
        (Some(d), _) => DegreeBound::AtLeast { value: *d },
        (None, Some(slope)) => DegreeBound::above(parse_ratio(slope)?, parse_ratio(&a.offset)?),
        (None, None) => DegreeBound::None,
    };
    let c = EnumerationConstraints {
        min_order: a.nmin,
        max_order: a.nmax,
        connected: a.connected,
        odd_girth_at_least: a.odd_girth,
        forbid_c5: a.forbid_c5,
        min_degree,
    };
    let graphs = harness::enumerate_graphs(&c)?;
    if a.count {
        print_stdout(&format!("{}\n", graphs.len()))?;
    } else {
        write_graphs(&graphs, &a.output)?;
    }
    Ok(None)
}

fn campaign(a: CampaignArgs) -> Outcome {
    let mut cfg: CampaignConfig = match &a.config {
        Some(p) => serde_json::from_str(&fs::read_to_string(p)?).context("campaign configuration")?,
        None => CampaignConfig::default(),
    };
    if let Some(n) = a.nmax {
        cfg.n_max = n;
    }
    cfg.allow_large |= a.allow_large;
    cfg.c5_probe_12 |= a.probe_12;
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(e) = &a.epsilon {
        cfg.epsilon = Exact(parse_ratio(e)?);
    }
    if let Some(b) = a.blowups {
        cfg.blowup_count = b;
    }
    if let Some(k) = a.k_max {
        cfg.k_max = k;
    }
    if let Some(k) = a.fk_k_max {
        cfg.fk_k_max = k;
    }
    if let Some(k) = a.t_k_max {
        cfg.t_k_max = k;
    }
    if let Some(n) = a.c5_nmax {
        cfg.c5_n_max = n;
    }
    if a.budget.is_some() {
        cfg.budget = a.budget;
    }
    let (value, reports) = if a.name == "all" {
        let r = harness::campaign_all(&cfg)?;
        (serde_json::to_value(&r)?, r.campaigns)
    } else {
        let r = harness::run_campaign(&a.name, &cfg)?;
        (serde_json::to_value(&r)?, vec![r])
    };
    for r in &reports {
        eprintln!(
            "{}: {} instances, {} skipped, {} violations, {} findings, {} ms",
            r.campaign,
            r.instances,
            r.skipped,
            r.violations.len(),
            r.findings.len(),
            r.runtime_ms
        );
        for (s, t) in &r.statements {
            eprintln!("  {s}: {} ({} checked, {} skipped, {} findings)", t.verdict(), t.checked, t.skipped, t.findings);
        }
    }
    let text = serde_json::to_string_pretty(&value)?;
    match &a.report {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print_stdout(&format!("{text}\n"))?,
    }
    Ok(ok_if(reports.iter().all(|r| r.passed())))
}
