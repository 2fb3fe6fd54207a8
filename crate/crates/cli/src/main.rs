use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cfree_core::colorstats::{
    best_subhypergraph, best_subhypergraph_heuristic, check_randomlike, check_randomlike_oriented,
    derandomized_coloring, monochromatic_fraction, rainbow_bound, BigRational, CheckMode,
    MultisetFamily, EXHAUSTIVE_CAP,
};
use cfree_core::constructions::{
    bipartite_blowup, clique_blowup, paste_doubled, paste_hyperdouble, verify_pasted,
};
use cfree_core::dot::ToDot;
use cfree_core::experiment::{fmt_float, run_experiment, ExperimentKind, ExperimentSpec, Verify};
use cfree_core::graphcore::io::{
    parse_classes, parse_graph, parse_oriented, parse_uniform, write_graph, write_oriented,
    write_uniform,
};
use cfree_core::graphcore::{BipartiteGraph, Graph};
use cfree_core::hypergen::{
    high_girth_bipartite, hoeffding_sample_size, random_hypergraph, random_oriented, repair_girth,
    repair_girth_oriented, GenConfig,
};
use cfree_core::kuhn_osthus::{build_layering, extraction_from};
use cfree_core::oracles::{
    certify_c2k_free, max_bipartite_girth_subgraph, max_c4free_subgraph, max_cut,
};
use cfree_core::SearchBudget;

#[derive(Parser)]
#[command(
    name = "cfree",
    version,
    about = "Cycle-free subgraphs: generators, constructions, checkers and exact oracles"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Node limit for exact searches.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget_nodes: u64,
    /// Time limit for exact searches, in seconds.
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
    /// Certification depth for experiments.
    #[arg(long, global = true, value_enum, default_value_t = VerifyArg::Deep)]
    verify: VerifyArg,
}

impl Global {
    fn budget(&self) -> SearchBudget {
        let b = SearchBudget::nodes(self.budget_nodes);
        match self.budget_seconds {
            Some(s) => b.with_time(Duration::from_secs_f64(s)),
            None => b,
        }
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                std::io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyArg {
    Deep,
    Fast,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Nonmono,
    Rainbow,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    C4free,
    Bipgirth,
    Maxcut,
    C2kfree,
}

#[derive(Subcommand)]
enum Command {
    /// Random a-uniform hypergraph (or oriented hypergraph).
    GenHypergraph {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        oriented: bool,
    },
    /// Delete hyperedges until the Berge-girth exceeds k.
    Repair {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Keep only the largest connected component afterwards.
        #[arg(long)]
        largest_component: bool,
    },
    /// Random connected bipartite graph with given girth and minimum degree.
    GenBipartite {
        /// Vertices per class.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        girth: usize,
        #[arg(long, default_value_t = 2)]
        min_degree: usize,
    },
    /// Colouring with few monochromatic hyperedges by conditional expectations.
    ColorDerand {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        b: usize,
    },
    /// Largest subhypergraph whose colour multisets lie in a family.
    QExhaustive {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::Nonmono)]
        family: FamilyArg,
        /// Use local search instead (reported as non-exact).
        #[arg(long)]
        heuristic: bool,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
    },
    /// Compare hyperedge counts per colour multiset (or sequence) with the
    /// complete-hypergraph proportions.
    CheckRandomlike {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Sampled colourings; default is the Hoeffding size for eps and delta.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
    },
    /// C4-free subgraph of a bipartite graph from the largest layer of the
    /// edge poset.
    Extract {
        #[arg(long = "in")]
        input: PathBuf,
        /// Class file: class A in order, optionally class B on a second line.
        #[arg(long)]
        classes: Option<PathBuf>,
        /// Also write the layered graph as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Replace every hyperedge by a clique.
    BlowupClique {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Replace every oriented hyperedge by K_{k-1,l}.
    BlowupBipartite {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Two copies of a bipartite graph joined by connector paths.
    PasteDoubled {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        classes: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        l: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Fat/thin doubling of a linear 3-uniform hypergraph.
    PasteHyperdouble {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check that a graph is pasted together from C_{2l}s (exit 1 if not).
    VerifyPasted {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        l: usize,
    },
    /// Check that a graph has no cycle of length L (exit 1 if it has one).
    VerifyCfree {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "L")]
        len: usize,
    },
    /// Exact solvers.
    Oracle {
        #[arg(value_enum)]
        kind: OracleKind,
        #[arg(long = "in")]
        input: PathBuf,
        /// For bipgirth: keep only cycles longer than this.
        #[arg(long, default_value_t = 4)]
        girth_gt: usize,
        /// For c2kfree.
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Run an experiment pipeline and write a CSV report (exit 1 on any
    /// failed guarantee).
    Experiment {
        #[arg(value_parser = parse_kind)]
        id: ExperimentKind,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        eps: Option<f64>,
        /// Number of instances (seeds seed, seed+1, ...).
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Explicit bipartite graph for kuhn-osthus.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Graphviz rendering of a graph file.
    ExportDot {
        #[arg(long = "in")]
        input: PathBuf,
        /// Label edges by their layer in the edge poset.
        #[arg(long)]
        layers: bool,
        #[arg(long)]
        classes: Option<PathBuf>,
    },
}

fn parse_kind(s: &str) -> Result<ExperimentKind, String> {
    s.parse().map_err(|e: cfree_core::Error| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn first_word(text: &str) -> &str {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("")
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_bipartite(path: &Path, classes: Option<&Path>) -> Result<BipartiteGraph> {
    let g = load_graph(path)?;
    Ok(match classes {
        Some(c) => {
            let (a, b) = parse_classes(&read(c)?, g.n())?;
            BipartiteGraph::with_classes(g, a, b)?
        }
        None => BipartiteGraph::from_graph(g)?,
    })
}

fn write_dot(path: Option<&PathBuf>, object: &impl ToDot) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, object.to_dot()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn csv_line(cells: &[String]) -> String {
    let mut s = cells.join(",");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = &cli.global;
    match cli.command {
        Command::GenHypergraph { a, n, m, oriented } => {
            let cfg = GenConfig {
                a,
                n,
                m,
                k: 2,
                seed: g.seed,
            };
            if oriented {
                g.emit(&write_oriented(&random_oriented(&cfg)?))?;
            } else {
                g.emit(&write_uniform(&random_hypergraph(&cfg)?))?;
            }
        }
        Command::Repair {
            input,
            k,
            largest_component,
        } => {
            let text = read(&input)?;
            if first_word(&text) == "ohg" {
                let (o, deleted) = repair_girth_oriented(&parse_oriented(&text)?, k)?;
                eprintln!(
                    "deleted {} hyperedges, kept {}",
                    deleted.len(),
                    o.edge_count()
                );
                g.emit(&write_oriented(&o))?;
            } else {
                let r = repair_girth(&parse_uniform(&text)?, k)?;
                eprintln!(
                    "deleted {} hyperedges, kept {}",
                    r.deleted.len(),
                    r.kept.len()
                );
                let h = if largest_component {
                    r.hypergraph.largest_component()
                } else {
                    r.hypergraph
                };
                g.emit(&write_uniform(&h))?;
            }
        }
        Command::GenBipartite {
            n,
            girth,
            min_degree,
        } => {
            let b = high_girth_bipartite(n, girth, min_degree, g.seed)?;
            g.emit(&write_graph(b.graph()))?;
        }
        Command::ColorDerand { input, b } => {
            let h = parse_uniform(&read(&input)?)?;
            let d = derandomized_coloring(&h, b)?;
            let m = h.edge_count();
            let guarantee = m - m / b.pow(h.a() as u32 - 1);
            eprintln!("coloring {}", d.coloring);
            g.emit(&format!(
                "n,m,a,b,q,bound,ratio\n{}",
                csv_line(&[
                    h.n().to_string(),
                    m.to_string(),
                    h.a().to_string(),
                    b.to_string(),
                    d.kept.edge_count().to_string(),
                    guarantee.to_string(),
                    fmt_float(if m == 0 {
                        1.0
                    } else {
                        d.kept.edge_count() as f64 / m as f64
                    }),
                ])
            ))?;
        }
        Command::QExhaustive {
            input,
            b,
            family,
            heuristic,
            restarts,
        } => {
            let h = parse_uniform(&read(&input)?)?;
            let (a, m) = (h.a(), h.edge_count());
            let (fam, fraction) = match family {
                FamilyArg::Nonmono => (
                    MultisetFamily::non_monochromatic(a, b),
                    (num_one() - monochromatic_fraction(a, b)).to_string(),
                ),
                FamilyArg::Rainbow => (
                    MultisetFamily::rainbow(a, b),
                    rainbow_bound(a, b)?.to_string(),
                ),
                FamilyArg::All => (MultisetFamily::all(a, b), "1".to_string()),
            };
            let r = if heuristic {
                best_subhypergraph_heuristic(&h, b, &fam, g.seed, restarts)?
            } else {
                best_subhypergraph(&h, b, &fam).with_context(|| {
                    format!("exhaustive search covers at most {EXHAUSTIVE_CAP} colourings; try --heuristic")
                })?
            };
            eprintln!("coloring {} exact={}", r.coloring, r.exact);
            g.emit(&format!(
                "n,m,a,b,q,bound,ratio\n{}",
                csv_line(&[
                    h.n().to_string(),
                    m.to_string(),
                    a.to_string(),
                    b.to_string(),
                    r.q.to_string(),
                    fraction,
                    fmt_float(if m == 0 { 1.0 } else { r.q as f64 / m as f64 }),
                ])
            ))?;
        }
        Command::CheckRandomlike {
            input,
            b,
            eps,
            mode,
            samples,
            delta,
        } => {
            let text = read(&input)?;
            let mode = match mode {
                ModeArg::Exhaustive => CheckMode::Exhaustive,
                ModeArg::Sampled => CheckMode::Sampled {
                    seed: g.seed,
                    count: match samples {
                        Some(s) => s,
                        None => hoeffding_sample_size(eps, delta)? as u64,
                    },
                },
            };
            let header = "pass,exhaustive,colorings,coloring,target,count,expected,deviation\n";
            let line = if first_word(&text) == "ohg" {
                let r = check_randomlike_oriented(&parse_oriented(&text)?, b, eps, mode)?;
                let w = r.worst.as_ref();
                csv_line(&[
                    r.pass.to_string(),
                    r.exhaustive.to_string(),
                    r.colorings_checked.to_string(),
                    w.map_or(String::new(), |w| w.coloring.to_string()),
                    w.map_or(String::new(), |w| format!("\"{}\"", w.target)),
                    w.map_or(String::new(), |w| w.count.to_string()),
                    w.map_or(String::new(), |w| w.expected.to_string()),
                    w.map_or(String::new(), |w| fmt_float(w.deviation)),
                ])
            } else {
                let r = check_randomlike(&parse_uniform(&text)?, b, eps, mode)?;
                let w = r.worst.as_ref();
                csv_line(&[
                    r.pass.to_string(),
                    r.exhaustive.to_string(),
                    r.colorings_checked.to_string(),
                    w.map_or(String::new(), |w| w.coloring.to_string()),
                    w.map_or(String::new(), |w| format!("\"{}\"", w.target)),
                    w.map_or(String::new(), |w| w.count.to_string()),
                    w.map_or(String::new(), |w| w.expected.to_string()),
                    w.map_or(String::new(), |w| fmt_float(w.deviation)),
                ])
            };
            g.emit(&format!("{header}{line}"))?;
        }
        Command::Extract {
            input,
            classes,
            dot,
        } => {
            let b = load_bipartite(&input, classes.as_deref())?;
            let layering = build_layering(&b);
            let x = extraction_from(&layering);
            eprintln!(
                "edges {} layers {} kept {} (layer {})",
                b.graph().edge_count(),
                x.layer_count,
                x.edges.len(),
                x.layer_index
            );
            write_dot(dot.as_ref(), &layering)?;
            g.emit(&write_graph(&x.subgraph))?;
        }
        Command::BlowupClique { input, k } => {
            let h = parse_uniform(&read(&input)?)?;
            if h.a() != 2 * k - 1 {
                bail!(
                    "k = {k} needs a {}-uniform hypergraph, found a = {}",
                    2 * k - 1,
                    h.a()
                );
            }
            g.emit(&write_graph(&clique_blowup(&h)?.graph))?;
        }
        Command::BlowupBipartite { input, k, l } => {
            let o = parse_oriented(&read(&input)?)?;
            g.emit(&write_graph(&bipartite_blowup(&o, k, l)?.graph))?;
        }
        Command::PasteDoubled {
            input,
            classes,
            l,
            dot,
        } => {
            let b = load_bipartite(&input, classes.as_deref())?;
            let pg = paste_doubled(&b, l)?;
            write_dot(dot.as_ref(), &pg)?;
            g.emit(&write_graph(&pg.graph))?;
        }
        Command::PasteHyperdouble { input, dot } => {
            let h = parse_uniform(&read(&input)?)?;
            let pg = paste_hyperdouble(&h)?;
            write_dot(dot.as_ref(), &pg)?;
            g.emit(&write_graph(&pg.graph))?;
        }
        Command::VerifyPasted { input, l } => {
            let graph = load_graph(&input)?;
            let c = verify_pasted(&graph, l, &g.budget())?;
            g.emit(&format!(
                "pasted,cycles,components,uncovered\n{}",
                csv_line(&[
                    c.holds.to_string(),
                    c.cycles.len().to_string(),
                    c.components.to_string(),
                    c.uncovered.len().to_string(),
                ])
            ))?;
            return Ok(if c.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::VerifyCfree { input, len } => {
            let graph = load_graph(&input)?;
            let cycle = cfree_core::graphcore::find_cycle_of_length(&graph, len, &g.budget())?;
            let free = cycle.is_none();
            let witness = cycle.map_or(String::new(), |c| {
                format!(
                    "\"{}\"",
                    c.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
                )
            });
            g.emit(&format!(
                "length,free,cycle\n{}",
                csv_line(&[len.to_string(), free.to_string(), witness])
            ))?;
            return Ok(if free {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::Oracle {
            kind,
            input,
            girth_gt,
            k,
        } => {
            let graph = load_graph(&input)?;
            let budget = g.budget();
            let (size, nodes, extra) = match kind {
                OracleKind::C4free => {
                    let r = max_c4free_subgraph(&graph, &budget)?;
                    (r.size.to_string(), r.nodes, String::new())
                }
                OracleKind::Bipgirth => {
                    let r = max_bipartite_girth_subgraph(&graph, girth_gt, &budget)?;
                    (r.size.to_string(), r.nodes, sides(&r.sides))
                }
                OracleKind::Maxcut => {
                    let r = max_cut(&graph, &budget)?;
                    (r.size.to_string(), r.nodes, sides(&r.sides))
                }
                OracleKind::C2kfree => (
                    certify_c2k_free(&graph, k, &budget)?.to_string(),
                    0,
                    String::new(),
                ),
            };
            g.emit(&format!(
                "edges,result,nodes,sides\n{}",
                csv_line(&[
                    graph.edge_count().to_string(),
                    size,
                    nodes.to_string(),
                    extra
                ])
            ))?;
        }
        Command::Experiment {
            id,
            k,
            l,
            a,
            b,
            n,
            m,
            eps,
            count,
            input,
        } => {
            let d = ExperimentSpec::new(id);
            let spec = ExperimentSpec {
                k: k.unwrap_or(d.k),
                l: l.unwrap_or(d.l),
                a: a.unwrap_or(d.a),
                b: b.unwrap_or(d.b),
                n: n.unwrap_or(d.n),
                m: m.unwrap_or(d.m),
                eps: eps.unwrap_or(d.eps),
                seed: g.seed,
                count,
                budget: g.budget(),
                verify: match g.verify {
                    VerifyArg::Deep => Verify::Deep,
                    VerifyArg::Fast => Verify::Fast,
                },
                graph: match input {
                    Some(p) => Some(load_bipartite(&p, None)?),
                    None => None,
                },
                ..d
            };
            let report = run_experiment(&spec)?;
            g.emit(&report.to_csv())?;
            for v in &report.violations {
                eprintln!("violation: {v}");
            }
            if !report.violations.is_empty() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::ExportDot {
            input,
            layers,
            classes,
        } => {
            if layers {
                let b = load_bipartite(&input, classes.as_deref())?;
                g.emit(&build_layering(&b).to_dot())?;
            } else {
                g.emit(&load_graph(&input)?.to_dot())?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn sides(s: &[u8]) -> String {
    s.iter().map(|c| c.to_string()).collect()
}

fn num_one() -> BigRational {
    BigRational::from_integer(1.into())
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
