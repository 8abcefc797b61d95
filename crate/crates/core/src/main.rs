use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pebblekit::constructions::PatternSpec;
use pebblekit::lp::{self, LpProblem};
use pebblekit::ratio::{self, to_pq};
use pebblekit::render::{self, Overlay};
use pebblekit::verify::{self, Scale};
use pebblekit::{optimal, weight, Engine, Error, GridSpec, ParsedDistribution, Result, SearchBudget, Vertex};

const ANALYSIS_SCHEMA: &str = "pebblekit.analysis.v1";
const REACH_SCHEMA: &str = "pebblekit.reach.v1";
const LP_SCHEMA: &str = "pebblekit.lp.v1";
const OPTIMAL_SCHEMA: &str = "pebblekit.optimal.v1";

#[derive(Parser)]
#[command(name = "pebblekit", version, about = "Exact pebbling on grids and tori")]
struct Cli {
    /// Node cap for each reachability search.
    #[arg(long, global = true, default_value_t = pebblekit::reach::DEFAULT_NODE_CAP)]
    node_cap: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "PEBBLEKIT_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated distribution.
    Gen(GenArgs),
    /// Coverage, weights and ceiling of a distribution file, as JSON.
    Analyze(AnalyzeArgs),
    /// Decide whether k pebbles can be moved to a vertex.
    Reach(ReachArgs),
    /// Solve a linear program exactly.
    Lp(LpArgs),
    /// Optimal pebbling numbers of small square grids.
    Optimal(OptimalArgs),
    /// Recompute the published fixtures; exit status 0 iff all pass.
    VerifyPaper(VerifyArgs),
    /// Draw a distribution.
    Render(RenderArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Diag7,
    RowOnes,
    CascadeOnes,
    Fig4,
    Fig4Augmented,
    UniformFrac,
    Density7Frac,
    BlockComposition,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    #[arg(long, num_args = 2, value_names = ["W", "H"])]
    torus: Option<Vec<u32>>,
    #[arg(long, num_args = 2, value_names = ["W", "H"])]
    plane: Option<Vec<u32>>,
    #[arg(short)]
    n: Option<u32>,
    #[arg(short)]
    m: Option<u32>,
    #[arg(short)]
    k: Option<u32>,
    #[arg(long)]
    with_unit2: bool,
    #[arg(long)]
    augmented: bool,
    /// Amount per vertex for uniform-frac, e.g. 1/9.
    #[arg(long)]
    q: Option<String>,
    /// Solvable block for block-composition.
    #[arg(long)]
    inner: Option<PathBuf>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    path: PathBuf,
    #[arg(long)]
    coverage: bool,
    #[arg(long)]
    weights: bool,
    #[arg(long)]
    ceiling: bool,
    /// Evaluate the ceiling on the unbounded grid.
    #[arg(long)]
    infinite_mode: bool,
}

#[derive(Args)]
struct ReachArgs {
    path: PathBuf,
    #[arg(long, num_args = 2, value_names = ["COL", "ROW"], required = true)]
    target: Vec<u32>,
    #[arg(short, default_value_t = 1)]
    k: u64,
}

#[derive(Args)]
struct LpArgs {
    /// Problem as JSON: {"objective", "constraints", "rhs"} with "p/q" entries.
    path: Option<PathBuf>,
    /// The lone-pebble excess problem.
    #[arg(long)]
    lemma2: bool,
    /// With --lemma2, use the misprinted coefficient.
    #[arg(long)]
    as_printed: bool,
    /// Fractional optimal pebbling of a torus.
    #[arg(long, num_args = 2, value_names = ["W", "H"])]
    fractional_torus: Option<Vec<u32>>,
    /// Fractional optimal pebbling of a plane grid.
    #[arg(long, num_args = 2, value_names = ["W", "H"])]
    fractional_plane: Option<Vec<u32>>,
}

#[derive(Args)]
struct OptimalArgs {
    #[arg(long, default_value_t = 3)]
    max_n: u32,
    /// Directory for witness files.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Small,
    FullDesk,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = ScaleArg::Small)]
    scale: ScaleArg,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum OverlayArg {
    None,
    Coverage,
    Weights,
}

#[derive(Args)]
struct RenderArgs {
    path: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    format: Format,
    #[arg(long, value_enum, default_value_t = OverlayArg::None)]
    overlay: OverlayArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let engine = Engine::new(SearchBudget { node_cap: cli.node_cap });
    match run(&engine, cli.command) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(engine: &Engine, command: Command) -> Result<(String, ExitCode)> {
    let out = match command {
        Command::Gen(a) => {
            let d = pattern(&a)?.generate()?;
            match a.out {
                Some(p) => {
                    fs::write(p, d.to_text())?;
                    String::new()
                }
                None => d.to_text(),
            }
        }
        Command::Analyze(a) => pretty(&analyze(engine, &a)?)?,
        Command::Reach(a) => {
            let d = read(&a.path)?.into_integer()?;
            let t = Vertex::new(a.target[0], a.target[1]);
            let moves = engine.find_moves(&d, t, a.k)?;
            let out = json!({
                "schema": REACH_SCHEMA,
                "target": [t.col, t.row],
                "k": a.k,
                "reachable": moves.is_some(),
                "moves": moves.map(|ms| ms.iter().map(|m| json!([[m.from.col, m.from.row], [m.to.col, m.to.row]])).collect::<Vec<_>>()),
            });
            pretty(&out)?
        }
        Command::Lp(a) => pretty(&solve_lp(&a)?)?,
        Command::Optimal(a) => optimal_table(engine, &a)?,
        Command::VerifyPaper(a) => {
            let scale = match a.scale {
                ScaleArg::Small => Scale::Small,
                ScaleArg::FullDesk => Scale::FullDesk,
            };
            let report = verify::verify_paper(engine, scale);
            let code = if report.all_passed { ExitCode::SUCCESS } else { ExitCode::FAILURE };
            let text = if a.json { pretty(&report)? } else { report.to_text() };
            return Ok((text, code));
        }
        Command::Render(a) => {
            let d = read(&a.path)?;
            let overlay = match a.overlay {
                OverlayArg::None => Overlay::None,
                OverlayArg::Coverage => Overlay::Coverage,
                OverlayArg::Weights => Overlay::Weights,
            };
            match a.format {
                Format::Ascii => render::render_ascii(engine, &d, overlay)?,
                Format::Svg => render::render_svg(engine, &d, overlay)?,
            }
        }
    };
    Ok((out, ExitCode::SUCCESS))
}

fn pretty<T: serde::Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn read(path: &Path) -> Result<ParsedDistribution> {
    let text = fs::read_to_string(path)?;
    let continuous = path.extension().is_some_and(|e| e == "frac");
    pebblekit::distribution::parse_with_mode(&text, continuous)
}

fn grid_arg(a: &GenArgs) -> Result<GridSpec> {
    match (&a.torus, &a.plane) {
        (Some(t), None) => GridSpec::torus(t[0], t[1]),
        (None, Some(p)) => GridSpec::plane(p[0], p[1]),
        _ => Err(Error::Input("give exactly one of --torus W H or --plane W H".into())),
    }
}

fn need(v: Option<u32>, flag: &str) -> Result<u32> {
    v.ok_or_else(|| Error::Input(format!("missing -{flag}")))
}

fn pattern(a: &GenArgs) -> Result<PatternSpec> {
    Ok(match a.family {
        Family::Diag7 => PatternSpec::Diag7 { grid: grid_arg(a)? },
        Family::RowOnes => PatternSpec::RowOnes { k: need(a.k, "k")?, with_unit2: a.with_unit2 },
        Family::CascadeOnes => PatternSpec::CascadeOnes { k: need(a.k, "k")? },
        Family::Fig4 if a.augmented => PatternSpec::Fig4Augmented { n: need(a.n, "n")?, m: need(a.m, "m")? },
        Family::Fig4 => PatternSpec::Fig4 { n: need(a.n, "n")?, m: need(a.m, "m")? },
        Family::Fig4Augmented => PatternSpec::Fig4Augmented { n: need(a.n, "n")?, m: need(a.m, "m")? },
        Family::UniformFrac => {
            let q = a.q.as_deref().ok_or_else(|| Error::Input("missing --q".into()))?;
            let q = ratio::parse(q).ok_or_else(|| Error::Input(format!("bad rational {q:?}")))?;
            PatternSpec::UniformFrac { grid: grid_arg(a)?, q }
        }
        Family::Density7Frac => PatternSpec::Density7Frac { grid: grid_arg(a)? },
        Family::BlockComposition => {
            let path = a.inner.as_deref().ok_or_else(|| Error::Input("missing --inner".into()))?;
            PatternSpec::BlockComposition { n: need(a.n, "n")?, inner: read(path)?.into_integer()? }
        }
    })
}

fn analyze(engine: &Engine, a: &AnalyzeArgs) -> Result<Value> {
    let d = read(&a.path)?;
    let all = !(a.coverage || a.weights || a.ceiling);
    let mut out = json!({
        "schema": ANALYSIS_SCHEMA,
        "grid": d.grid(),
        "size": match &d {
            ParsedDistribution::Integer(d) => to_pq(&ratio::int(d.size() as i64)),
            ParsedDistribution::Continuous(c) => to_pq(&c.size()),
        },
    });
    if a.coverage || all {
        if let ParsedDistribution::Integer(d) = &d {
            let c = engine.coverage(d)?;
            out["coverage"] = json!({
                "cov": c.cov,
                "ratio": to_pq(&c.ratio),
                "solvable": c.is_complete(),
                "reachable": c.reachable.iter().map(|v| [v.col, v.row]).collect::<Vec<_>>(),
                "boundary": c.boundary.iter().map(|v| [v.col, v.row]).collect::<Vec<_>>(),
            });
        }
    }
    if a.weights || all {
        let report = match &d {
            ParsedDistribution::Integer(d) => weight::weight_report(d),
            ParsedDistribution::Continuous(c) => weight::weight_report(c),
        };
        out["weights"] = report.to_json();
        out["fractional_solvable"] = json!(report.min_weight().is_some_and(|w| *w >= ratio::int(1)));
    }
    if a.ceiling || all {
        let (mode, value) = match (&d, a.infinite_mode) {
            (ParsedDistribution::Integer(d), true) => ("infinite-analytic", weight::ceiling_infinite(d)?),
            (ParsedDistribution::Continuous(_), true) => {
                return Err(Error::Input("infinite mode needs an integer distribution".into()))
            }
            (ParsedDistribution::Integer(d), false) => ("finite", weight::covering_ratio_ceiling(d)?),
            (ParsedDistribution::Continuous(c), false) => ("finite", weight::covering_ratio_ceiling(c)?),
        };
        out["ceiling"] = json!({ "mode": mode, "value": to_pq(&value) });
    }
    Ok(out)
}

fn solve_lp(a: &LpArgs) -> Result<Value> {
    if let Some(dims) = a.fractional_torus.as_ref().or(a.fractional_plane.as_ref()) {
        let grid = if a.fractional_torus.is_some() {
            GridSpec::torus(dims[0], dims[1])?
        } else {
            GridSpec::plane(dims[0], dims[1])?
        };
        let (value, witness) = lp::fractional_optimal_pebbling(&grid)?;
        return Ok(json!({
            "schema": LP_SCHEMA,
            "grid": grid,
            "value": to_pq(&value),
            "witness": witness.to_text(),
        }));
    }
    let problem = match (&a.path, a.lemma2) {
        (_, true) if a.as_printed => lp::lemma2_problem_as_printed(),
        (_, true) => lp::lemma2_problem(),
        (Some(p), false) => serde_json::from_str::<LpProblem>(&fs::read_to_string(p)?)?,
        (None, false) => return Err(Error::Input("give a problem file, --lemma2 or --fractional-torus".into())),
    };
    let solution = lp::solve(&problem)?;
    Ok(json!({
        "schema": LP_SCHEMA,
        "solution": solution,
        "certified": lp::verify_solution(&problem, &solution),
    }))
}

fn optimal_table(engine: &Engine, a: &OptimalArgs) -> Result<String> {
    let series = optimal::optimal_ratio_series(engine, a.max_n)?;
    let mut witnesses = vec![];
    for row in series.iter().filter(|r| r.pi_opt.is_some()) {
        let path = match &a.out_dir {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                let res = optimal::optimal_pebbling_number(engine, &GridSpec::plane(row.n, row.n)?)?;
                let p = dir.join(format!("opt_{0}x{0}.txt", row.n));
                fs::write(&p, res.witness.to_text())?;
                Some(p.display().to_string())
            }
            None => None,
        };
        witnesses.push((row.n, path));
    }
    if a.json {
        let out = json!({
            "schema": OPTIMAL_SCHEMA,
            "series": series,
            "witness_files": witnesses.iter().map(|(n, p)| json!({"n": n, "path": p})).collect::<Vec<_>>(),
        });
        return pretty(&out);
    }
    let mut text = format!("{:>3} {:>7} {:>8} {:>9} {:>9}  witness\n", "n", "pi_opt", "ratio", "composed", "lp_lower");
    for row in &series {
        let witness = witnesses.iter().find(|(n, _)| *n == row.n).and_then(|(_, p)| p.clone()).unwrap_or_default();
        text += &format!(
            "{:>3} {:>7} {:>8} {:>9} {:>9}  {}\n",
            row.n,
            row.pi_opt.map_or("-".into(), |p| p.to_string()),
            row.ratio.as_ref().map_or("-".into(), to_pq),
            row.composed_bound.map_or("-".into(), |b| b.to_string()),
            row.lp_lower_bound.map_or("-".into(), |b| b.to_string()),
            witness
        );
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> (String, ExitCode) {
        let cli = Cli::try_parse_from(std::iter::once("pebblekit").chain(args.iter().copied())).unwrap();
        run(&Engine::default(), cli.command).unwrap()
    }

    fn json_of(args: &[&str]) -> Value {
        serde_json::from_str(&cli(args).0).unwrap()
    }

    #[test]
    fn gen_sizes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.txt");
        let p = path.to_str().unwrap();
        cli(&["gen", "diag7", "--torus", "14", "14", "-o", p]);
        let d = read(&path).unwrap().into_integer().unwrap();
        assert_eq!(d.size(), 56);

        let (text, _) = cli(&["gen", "fig4", "-n", "1", "-m", "1"]);
        let d = pebblekit::parse_distribution(&text).unwrap().into_integer().unwrap();
        assert_eq!(d.size(), 12);

        let frac = dir.path().join("u.frac");
        cli(&["gen", "uniform-frac", "--q", "1/9", "--torus", "9", "9", "-o", frac.to_str().unwrap()]);
        match read(&frac).unwrap() {
            ParsedDistribution::Continuous(c) => assert_eq!(c.size(), ratio::int(9)),
            _ => panic!("expected a continuous file"),
        }
    }

    #[test]
    fn gen_rejects_missing_parameters() {
        let cli = Cli::try_parse_from(["pebblekit", "gen", "row-ones"]).unwrap();
        assert!(run(&Engine::default(), cli.command).is_err());
    }

    #[test]
    fn analyze_reports() {
        let dir = tempfile::tempdir().unwrap();
        let unit = dir.path().join("unit2.txt");
        fs::write(&unit, pebblekit::verify::unit2().to_text()).unwrap();
        let v = json_of(&["analyze", unit.to_str().unwrap(), "--ceiling", "--infinite-mode"]);
        assert_eq!(v["schema"], ANALYSIS_SCHEMA);
        assert_eq!(v["ceiling"]["value"], "17/2");
        assert!(v.get("coverage").is_none());

        let fig4 = dir.path().join("fig4.txt");
        cli(&["gen", "fig4", "-n", "1", "-m", "1", "-o", fig4.to_str().unwrap()]);
        let v = json_of(&["analyze", fig4.to_str().unwrap(), "--coverage"]);
        assert_eq!(v["coverage"]["ratio"], "1/1");
        assert_eq!(v["coverage"]["solvable"], false);

        let frac = dir.path().join("u.frac");
        cli(&["gen", "uniform-frac", "--q", "1/9", "--torus", "9", "9", "-o", frac.to_str().unwrap()]);
        let v = json_of(&["analyze", frac.to_str().unwrap(), "--weights"]);
        assert_eq!(v["weights"]["min_weight"], "529/576");
        assert_eq!(v["fractional_solvable"], false);
    }

    #[test]
    fn analyze_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.txt");
        cli(&["gen", "row-ones", "-k", "4", "--with-unit2", "-o", path.to_str().unwrap()]);
        let a = cli(&["analyze", path.to_str().unwrap()]).0;
        assert_eq!(a, cli(&["analyze", path.to_str().unwrap()]).0);
    }

    #[test]
    fn reach_gives_moves() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.txt");
        fs::write(&path, "grid 3 3 plane\npebble 1 1 4\n").unwrap();
        let v = json_of(&["reach", path.to_str().unwrap(), "--target", "0", "0"]);
        assert_eq!(v["reachable"], true);
        assert_eq!(v["moves"].as_array().unwrap().len(), 3);
        let v = json_of(&["reach", path.to_str().unwrap(), "--target", "0", "0", "-k", "2"]);
        assert_eq!(v["reachable"], false);
        assert!(v["moves"].is_null());
    }

    #[test]
    fn lp_modes() {
        let v = json_of(&["lp", "--lemma2"]);
        assert_eq!(v["solution"]["objective_value"], "12/25");
        assert_eq!(v["certified"], true);
        let v = json_of(&["lp", "--lemma2", "--as-printed"]);
        assert_eq!(v["solution"]["objective_value"], "114/233");
        let v = json_of(&["lp", "--fractional-plane", "3", "3"]);
        assert_eq!(v["value"], "25/9");

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.json");
        fs::write(&path, r#"{"objective":["1","1"],"constraints":[["1","2"],["3","1"]],"rhs":["2","3"]}"#).unwrap();
        let v = json_of(&["lp", path.to_str().unwrap()]);
        assert_eq!(v["schema"], LP_SCHEMA);
        assert_eq!(v["solution"]["objective_value"], "7/5");
    }

    #[test]
    fn optimal_table_and_witnesses() {
        let dir = tempfile::tempdir().unwrap();
        let (text, _) = cli(&["optimal", "--max-n", "2", "--out-dir", dir.path().to_str().unwrap()]);
        assert!(text.lines().nth(2).unwrap().split_whitespace().take(3).eq(["2", "3", "3/4"]));
        let w = read(&dir.path().join("opt_2x2.txt")).unwrap().into_integer().unwrap();
        assert_eq!(w.size(), 3);
        assert!(Engine::default().is_solvable(&w).unwrap());
        let v = json_of(&["optimal", "--max-n", "1", "--json"]);
        assert_eq!(v["schema"], OPTIMAL_SCHEMA);
        assert_eq!(v["series"][0]["pi_opt"], 1);
    }

    #[test]
    fn render_formats() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.txt");
        fs::write(&path, "grid 3 3 plane\npebble 1 1 4\n").unwrap();
        assert_eq!(cli(&["render", path.to_str().unwrap()]).0, "...\n.4.\n...\n");
        let svg = cli(&["render", path.to_str().unwrap(), "--format", "svg", "--overlay", "coverage"]).0;
        assert!(svg.starts_with("<svg"));
    }

    #[test]
    fn verify_exit_status_follows_report() {
        let (text, code) = cli(&["verify-paper", "--json"]);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema"], verify::REPORT_SCHEMA);
        let all = v["all_passed"].as_bool().unwrap();
        assert_eq!(code == ExitCode::SUCCESS, all);
        // The only failing check is the finite-torus uniform ninth, whose
        // weight is strictly below one.
        let failed: Vec<_> = v["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).map(|c| c["id"].clone()).collect();
        assert_eq!(failed, ["uniform-1/9-tori-5-to-9"]);
    }

    #[test]
    fn threads_flag_reads_env() {
        std::env::set_var("PEBBLEKIT_THREADS", "3");
        let cli = Cli::try_parse_from(["pebblekit", "optimal"]).unwrap();
        assert_eq!(cli.threads, Some(3));
    }
}
