use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use homlab::budget;
use homlab::geometry::Arrangement;
use homlab::induced::longest_induced_path;
use homlab::local::{oracle_local, solve_local, LocalConfig, LocalInstance};
use homlab::reductions::{self, brute, CnfFormula, Dialect, Goal, ReductionOutput};
use homlab::separator::{find_balanced_separator, Balance};
use homlab::star::forbidden_witness;
use homlab::weight::meets_threshold;
use homlab::whom::{oracle_whom, solve_whom_with, WhomConfig, WhomInstance};
use homlab::{models, targets, Graph, HomError, ListAssignment, LocalKind, Result, WeightModel};

use crate::{DialectArg, GenerateArgs, Problem, Reduction, SolveArgs, Variant};

const ORACLE_NODES: u64 = 100_000_000;
const MAX_CNF_VARS: usize = 30;

pub struct Outcome {
    pub text: String,
    pub positive: bool,
}

impl Outcome {
    fn new(text: String, positive: bool) -> Self {
        Outcome { text, positive }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| HomError::Malformed(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| HomError::Malformed(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph> {
    Graph::parse(&read(path)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn witness_lines(out: &mut String, map: &[usize]) {
    for (v, a) in map.iter().enumerate() {
        let _ = writeln!(out, "m {v} {a}");
    }
}

fn time_cap(a: &SolveArgs) -> Option<Duration> {
    budget::env_time_cap().or(a.time_ms.map(Duration::from_millis))
}

/// Target from `--target`, `--target-file`, or the named weight model.
fn resolve_instance(a: &SolveArgs, g: &Graph) -> Result<(Graph, WeightModel)> {
    let explicit = match (&a.target, &a.target_file) {
        (Some(name), _) => Some(targets::parse_target(name)?),
        (None, Some(p)) => Some(load_graph(p)?),
        (None, None) => None,
    };
    let named = match a.weights.as_deref() {
        Some("maxcut") => Some(models::maxcut(g)),
        Some("oct") => Some(models::oct(g)),
        Some("is") => Some(models::independent_set(g)),
        _ => None,
    };
    match (explicit, named) {
        (Some(h), Some((mh, _))) if h != mh => Err(HomError::Precondition(
            "the named weight model fixes a different target".into(),
        )),
        (_, Some((h, w))) => Ok((h, w)),
        (Some(h), None) => {
            let w = match &a.weights {
                Some(p) => WeightModel::parse(&read(Path::new(p))?)?,
                None => WeightModel::new(),
            };
            Ok((h, w))
        }
        (None, None) => Err(HomError::Malformed(
            "a target is required (--target or --target-file)".into(),
        )),
    }
}

fn load_lists(a: &SolveArgs, n: usize, k: usize) -> Result<ListAssignment> {
    match &a.lists {
        Some(p) => ListAssignment::parse(&read(p)?, n, k),
        None => Ok(ListAssignment::full(n, k)),
    }
}

fn local_kind(a: &SolveArgs) -> Result<LocalKind> {
    let implied = match a.problem {
        Problem::Lihom => Some(LocalKind::Injective),
        Problem::Lbhom => Some(LocalKind::Bijective),
        Problem::Lshom => Some(LocalKind::Surjective),
        Problem::Local | Problem::Whom => None,
    };
    let given = a.variant.map(|v| match v {
        Variant::Inj => LocalKind::Injective,
        Variant::Bij => LocalKind::Bijective,
        Variant::Surj => LocalKind::Surjective,
    });
    match (implied, given) {
        (Some(x), Some(y)) if x != y => Err(HomError::Malformed("--variant contradicts the problem".into())),
        (Some(x), _) | (None, Some(x)) => Ok(x),
        (None, None) => Err(HomError::Malformed("`local` needs --variant inj|bij|surj".into())),
    }
}

pub fn solve(a: &SolveArgs, oracle: bool) -> Result<Outcome> {
    let g = load_graph(&a.graph)?;
    let mut out = String::new();
    if a.problem == Problem::Whom {
        let (h, w) = resolve_instance(a, &g)?;
        let lists = load_lists(a, g.n(), h.n())?;
        let inst = WhomInstance::new(g, h, w, lists)?;
        let r = if oracle {
            oracle_whom(&inst, a.steps.unwrap_or(ORACLE_NODES))?
        } else {
            let config = WhomConfig {
                step_budget: a.steps.unwrap_or(u64::MAX),
                time_cap: time_cap(a),
                jobs: a.jobs.max(1),
                ..WhomConfig::default()
            };
            solve_whom_with(&inst, config)?
        };
        let mut positive = r.optimum.is_some();
        match r.optimum {
            Some(opt) => {
                let _ = writeln!(out, "optimum {opt}");
            }
            None => out.push_str("infeasible\n"),
        }
        if let Some(t) = a.threshold {
            let meets = r.optimum.is_some_and(|o| meets_threshold(o, t));
            let _ = writeln!(out, "threshold {t}\nmeets {}", yes_no(meets));
            positive = meets;
        }
        if a.stats {
            let s = &r.stats;
            let _ = writeln!(
                out,
                "# nodes {} branch {} separators {} heuristic {} oversized {} largest {}",
                s.nodes,
                s.branch_steps,
                s.separator_steps,
                s.heuristic_separators,
                s.oversized_separators,
                s.largest_separator
            );
        }
        if let Some(map) = &r.witness {
            witness_lines(&mut out, map);
        }
        return Ok(Outcome::new(out, positive));
    }

    let kind = local_kind(a)?;
    if a.weights.is_some() || a.threshold.is_some() {
        return Err(HomError::Malformed(
            "weights and thresholds apply to `whom` only".into(),
        ));
    }
    let (h, _) = resolve_instance(a, &g)?;
    let lists = load_lists(a, g.n(), h.n())?;
    let inst = LocalInstance::with_lists(g, h, lists)?;
    let r = if oracle {
        oracle_local(&inst, kind, a.steps.unwrap_or(ORACLE_NODES))?
    } else {
        let config = LocalConfig {
            step_budget: a.steps.unwrap_or(u64::MAX),
            time_cap: time_cap(a),
            ..LocalConfig::default()
        };
        solve_local(&inst, kind, &config)?
    };
    let _ = writeln!(out, "{}", yes_no(r.exists()));
    if a.stats {
        let s = &r.stats;
        let _ = writeln!(
            out,
            "# separators {} heuristic {} oversized {} largest {} bicliques {} leaves {}",
            s.separators,
            s.heuristic_separators,
            s.oversized_separators,
            s.largest_separator,
            s.biclique_branches,
            s.leaves
        );
    }
    if let Some(map) = &r.witness {
        witness_lines(&mut out, map);
    }
    Ok(Outcome::new(out, r.exists()))
}

enum Source {
    Formula(CnfFormula),
    Graph(Graph, usize),
}

fn load_source(a: &GenerateArgs) -> Result<Source> {
    let needs_cnf = matches!(
        a.kind,
        Reduction::NaeMaxcut | Reduction::LshomPath | Reduction::LshomCycle | Reduction::LshomLoop
    );
    if needs_cnf {
        let path = a
            .cnf
            .as_ref()
            .ok_or_else(|| HomError::Malformed("--cnf is required".into()))?;
        let dialect = match (a.dialect, a.kind) {
            (Some(DialectArg::ThreeSat), _) => Dialect::ThreeSat,
            (Some(DialectArg::Posnae3), _) => Dialect::PosNae3,
            (None, Reduction::NaeMaxcut) => Dialect::PosNae3,
            (None, _) => Dialect::ThreeSat,
        };
        return Ok(Source::Formula(CnfFormula::parse_dimacs(&read(path)?, dialect)?));
    }
    let path = a
        .graph
        .as_ref()
        .ok_or_else(|| HomError::Malformed("--graph is required".into()))?;
    let k = a.k.ok_or_else(|| HomError::Malformed("-k is required".into()))?;
    Ok(Source::Graph(load_graph(path)?, k))
}

fn need_k(a: &GenerateArgs) -> Result<usize> {
    a.k.ok_or_else(|| HomError::Malformed("-k (target length) is required".into()))
}

fn build(a: &GenerateArgs, src: &Source) -> Result<ReductionOutput> {
    match (a.kind, src) {
        (Reduction::NaeMaxcut, Source::Formula(phi)) => reductions::posnae3sat_to_maxcut(phi),
        (Reduction::LshomPath, Source::Formula(phi)) => reductions::threesat_to_lshom_path(phi, need_k(a)?),
        (Reduction::LshomCycle, Source::Formula(phi)) => reductions::threesat_to_lshom_cycle(phi, need_k(a)?),
        (Reduction::LshomLoop, Source::Formula(phi)) => reductions::threesat_to_lshom_loopedge(phi, a.occ_clique),
        (Reduction::Bisection, Source::Graph(g, k)) => reductions::maxcut_to_bisection(g, *k),
        (Reduction::MaxcutSegments, Source::Graph(g, k)) => reductions::bisection_to_maxcut_segments(g, *k),
        (Reduction::Oct, Source::Graph(g, k)) => reductions::is_to_oct_segments(g, *k),
        (Reduction::C4Grid, Source::Graph(g, k)) => reductions::is_to_whom_c4(g, *k),
        _ => unreachable!("source kind follows the reduction kind"),
    }
}

/// Brute-force answer of the source problem.
fn source_answer(a: &GenerateArgs, src: &Source) -> Result<bool> {
    match src {
        Source::Formula(phi) => Ok(phi.brute_force(MAX_CNF_VARS)?.is_some()),
        Source::Graph(g, k) => Ok(match a.kind {
            Reduction::Bisection => brute::max_cut(g)? >= *k,
            Reduction::MaxcutSegments => brute::max_bisection(g)?.is_some_and(|c| c >= *k),
            _ => brute::independence_number(g)? >= *k,
        }),
    }
}

fn goal_line(goal: Goal) -> String {
    match goal {
        Goal::AtLeast(t) => format!("threshold {t}"),
        Goal::Bisection(t) => format!("bisection {t}"),
        Goal::Surjective => "decision locally-surjective".into(),
    }
}

fn meta_text(a: &GenerateArgs, r: &ReductionOutput) -> String {
    let kind = clap::ValueEnum::to_possible_value(&a.kind)
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let mut s = String::new();
    let _ = writeln!(s, "kind {kind}");
    let _ = writeln!(s, "vertices {}", r.graph.n());
    let _ = writeln!(s, "edges {}", r.graph.m());
    let _ = writeln!(s, "target-vertices {}", r.target.n());
    let _ = writeln!(s, "{}", goal_line(r.goal));
    if let Some(k) = r.claimed_slope_count {
        let _ = writeln!(s, "slopes {k}");
    }
    let _ = writeln!(s, "notes {}", r.notes);
    s
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn generate(a: &GenerateArgs) -> Result<Outcome> {
    let src = load_source(a)?;
    let r = build(a, &src)?;
    r.check_arrangement()?;
    let meta = meta_text(a, &r);
    let Some(prefix) = &a.output else {
        let mut out = meta;
        out.push_str(&r.graph.to_text());
        return Ok(Outcome::new(out, true));
    };
    let mut files = vec![(".graph", r.graph.to_text()), (".target", r.target.to_text())];
    if let Some(w) = &r.weights {
        files.push((".weights", w.to_text()));
    }
    if let Some(l) = &r.lists {
        files.push((".lists", l.to_text(r.target.n())));
    }
    if let Some(arr) = &r.arrangement {
        files.push((".seg", arr.to_text()));
    }
    if let Some(labels) = r.graph.labels() {
        let text: String = labels.iter().enumerate().map(|(v, l)| format!("{v} {l}\n")).collect();
        files.push((".labels", text));
    }
    files.push((".meta", meta.clone()));
    let mut out = meta;
    for (suffix, text) in &files {
        let path = with_suffix(prefix, suffix);
        write(&path, text)?;
        let _ = writeln!(out, "wrote {}", path.display());
    }
    Ok(Outcome::new(out, true))
}

pub fn verify(a: &GenerateArgs) -> Result<Outcome> {
    let src = load_source(a)?;
    let r = build(a, &src)?;
    r.check_arrangement()?;
    let want = source_answer(a, &src)?;
    let got = r.decide(a.steps.unwrap_or(ORACLE_NODES))?;
    let text = format!(
        "vertices {}\nsource {}\ninstance {}\nagree {}\n",
        r.graph.n(),
        yes_no(want),
        yes_no(got),
        yes_no(want == got)
    );
    Ok(Outcome::new(text, want == got))
}

pub fn check_star(target: &str) -> Result<Outcome> {
    let path = Path::new(target);
    let h = if path.is_file() {
        load_graph(path)?
    } else {
        targets::parse_target(target)?
    };
    Ok(match forbidden_witness(&h) {
        None => Outcome::new("true\n".into(), true),
        Some(w) => {
            let emb: Vec<String> = w.embedding.iter().map(|v| v.to_string()).collect();
            Outcome::new(
                format!("false\nwitness ({}) {}\n", w.pattern.letter(), emb.join(" ")),
                false,
            )
        }
    })
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(|v| format!(" {v}")).collect()
}

pub fn separator(graph: &Path, max_size: Option<usize>, beta: &str) -> Result<Outcome> {
    let g = load_graph(graph)?;
    let beta = Balance::parse(beta)?;
    Ok(match find_balanced_separator(&g, max_size.unwrap_or(g.n()), beta)? {
        None => Outcome::new("none\n".into(), false),
        Some(sep) => Outcome::new(
            format!(
                "size {}\ns{}\nv1{}\nv2{}\n",
                sep.size(),
                join(&sep.s),
                join(&sep.v1),
                join(&sep.v2)
            ),
            true,
        ),
    })
}

pub fn segments_to_graph(segments: &Path, output: Option<&Path>) -> Result<Outcome> {
    let arr = Arrangement::parse(&read(segments)?)?;
    let text = format!("# slopes {}\n{}", arr.slope_count(), arr.intersection_graph().to_text());
    match output {
        Some(p) => {
            write(p, &text)?;
            Ok(Outcome::new(String::new(), true))
        }
        None => Ok(Outcome::new(text, true)),
    }
}

pub fn induced_path(graph: &Path, cap: Option<usize>) -> Result<Outcome> {
    let g = load_graph(graph)?;
    let cap = cap.unwrap_or(g.n());
    let len = longest_induced_path(&g, cap);
    let text = if len > cap {
        format!("longest >{cap}\n")
    } else {
        format!("longest {len}\n")
    };
    Ok(Outcome::new(text, true))
}
