use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

use topofix::cases::{closed_map_check, run_all, run_case, weak_checks, CaseOptions, CASES};
use topofix::contraction::{check_topological_contraction, reverify_topological};
use topofix::hyperspace::{attractor, hutchinson, Ifs};
use topofix::maps::{default_space_for, map_by_id, map_entries};
use topofix::report::{Check, Report};
use topofix::topology::{
    catalog_entries, hausdorff_rank, lookup, parse_covers, parse_pairs, space_by_id, CatalogSpace,
    RankValue, Space, Topology,
};
use topofix::verdict::{Outcome, Verdict};

use crate::{CatalogCommand, Cli, Command, ContractCommand, Output};

const DEFAULT_NMAX: usize = 200;
const DEFAULT_IFS_NMAX: usize = 16;
const CLOSED_SAMPLES: usize = 200;

pub fn run(cli: Cli) -> Result<u8> {
    let threads = if cli.parallel { 0 } else { 1 };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("starting the worker pool")?;
    let opts = CaseOptions {
        nmax: cli.nmax,
        seed: cli.seed,
        tol: cli.tol,
    };
    match cli.command {
        Command::Catalog(CatalogCommand::List) => {
            list();
            Ok(0)
        }
        Command::Verify { case, out } => emit(run_case(&case, &opts)?, &out),
        Command::Contract(ContractCommand::Check {
            space,
            map,
            covers,
            pairs,
            topological,
            out,
        }) => {
            let files = ContractFiles {
                covers: &covers,
                pairs: &pairs,
            };
            let report = contract_check(space.as_deref(), &map, files, topological, &opts)?;
            emit(report, &out)
        }
        Command::Attractor { ifs, space, out } => {
            emit(attractor_report(&ifs, space.as_deref(), &opts)?, &out)
        }
        Command::Rank { space, depth, out } => emit(rank_report(&space, depth)?, &out),
        Command::Report { json } => report_all(&json, &opts),
    }
}

fn list() {
    println!("spaces:");
    for (id, what) in catalog_entries() {
        println!("  {id:<28} {what}");
    }
    println!("maps:");
    for (id, what) in map_entries() {
        println!("  {id:<28} {what}");
    }
    println!("cases:");
    for (id, what) in CASES {
        println!("  {id:<28} {what}");
    }
}

fn write_json(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(report: Report, out: &Output) -> Result<u8> {
    print!("{}", report.render_text());
    if let Some(path) = &out.json {
        write_json(path, &report.to_json())?;
    }
    Ok(report.exit_code() as u8)
}

/// 1 if any report has a failed check, else 2 if any ended unknown.
fn combined_exit(reports: &[Report]) -> u8 {
    let codes: Vec<i32> = reports.iter().map(Report::exit_code).collect();
    if codes.contains(&1) {
        1
    } else if codes.contains(&2) {
        2
    } else {
        0
    }
}

fn report_all(path: &Path, opts: &CaseOptions) -> Result<u8> {
    let reports = run_all(opts)?;
    for r in &reports {
        let failed = r.checks.iter().filter(|c| !c.passed()).count();
        println!(
            "{:<18} exit {}  {} checks, {failed} not as expected, {:.1} ms",
            r.case_id,
            r.exit_code(),
            r.checks.len(),
            r.elapsed_ms
        );
    }
    write_json(path, &serde_json::to_string_pretty(&reports)?)?;
    Ok(combined_exit(&reports))
}

fn host_space(space: Option<&str>, map: &str) -> Result<Space> {
    match space {
        Some(id) => Ok(space_by_id(id)?),
        None => match default_space_for(map) {
            Some(s) => Ok(s),
            None => bail!("map `{map}` needs --space"),
        },
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

struct ContractFiles<'a> {
    covers: &'a Path,
    pairs: &'a Path,
}

fn contract_check(
    space: Option<&str>,
    map: &str,
    files: ContractFiles<'_>,
    topological: bool,
    opts: &CaseOptions,
) -> Result<Report> {
    let ContractFiles { covers, pairs } = files;
    let start = std::time::Instant::now();
    let space = host_space(space, map)?;
    let f = map_by_id(map, &space)?;
    let covers_v = parse_covers(&read(covers)?, &space)
        .with_context(|| format!("parsing {}", covers.display()))?;
    let pairs_v = parse_pairs(&read(pairs)?, &space)
        .with_context(|| format!("parsing {}", pairs.display()))?;
    let nmax = opts.nmax.unwrap_or(DEFAULT_NMAX);
    let mut report = Report::new("contract-check");
    report
        .input("space", space.id())
        .input("map", f.id())
        .input("covers", &covers_v)
        .input("pairs", &pairs_v)
        .bound("nmax", nmax)
        .bound("closed_samples", CLOSED_SAMPLES)
        .bound("seed", opts.seed);
    report.push(closed_map_check(&f, opts.seed, CLOSED_SAMPLES)?);
    if topological {
        let v = check_topological_contraction(&f, &covers_v, nmax)?;
        let mut c = Check::from_verdict("topological contraction", Outcome::Proved, &v);
        match &v {
            Verdict::Proved(p) => {
                c = c
                    .detail(format!("depth {}", p.depth))
                    .reverified(reverify_topological(&f, &covers_v, p)?);
            }
            Verdict::Refuted(r) => c = c.detail(r.reason.clone()),
            Verdict::Unknown(_) => {}
        }
        report.push(c);
    }
    weak_checks(&mut report, &f, &covers_v, &pairs_v, nmax)?;
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(report)
}

fn attractor_report(ids: &str, space: Option<&str>, opts: &CaseOptions) -> Result<Report> {
    let start = std::time::Instant::now();
    let host = space.map(space_by_id).transpose()?;
    let ifs = Ifs::from_ids(ids, host.as_ref())?;
    let nmax = opts.nmax.unwrap_or(DEFAULT_IFS_NMAX);
    let mut report = Report::new("attractor");
    report
        .input("ifs", ifs.id())
        .input("space", ifs.space().id())
        .bound("nmax", nmax)
        .bound("closed_samples", CLOSED_SAMPLES);
    for f in ifs.maps() {
        report.push(closed_map_check(f, opts.seed, CLOSED_SAMPLES)?);
    }
    let v = attractor(&ifs, nmax)?;
    let mut c = Check::from_verdict("attractor", Outcome::Proved, &v);
    if let Verdict::Proved(a) = &v {
        let stable = hutchinson(&ifs, &a.carrier)? == a.carrier;
        c = c
            .detail(format!("{} after {} Hutchinson steps", a.carrier, a.steps))
            .reverified(stable && ifs.space().is_closed(&a.carrier));
    }
    report.push(c);
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(report)
}

fn rank_check<T: Topology>(id: &str, space: &T, depth: usize) -> Check {
    let rank = hausdorff_rank(space, depth);
    let name = format!("Hausdorff rank of {id}");
    let outcome = match &rank {
        RankValue::Finite(_) => Outcome::Proved,
        RankValue::Undefined { reason, .. } if reason.contains("depth bound") => Outcome::Unknown,
        RankValue::Undefined { .. } => Outcome::Refuted,
    };
    let detail = match &rank {
        RankValue::Finite(r) => format!("rank {r}"),
        RankValue::Undefined { witness, reason } => format!("{reason} at {witness}"),
    };
    let again = hausdorff_rank(space, 2 * depth.max(1));
    let mut c = Check::new(name, Outcome::Proved, outcome)
        .witness(&rank)
        .detail(detail);
    if outcome == Outcome::Proved {
        c = c.reverified(again == rank);
    }
    c
}

fn rank_report(id: &str, depth: usize) -> Result<Report> {
    let start = std::time::Instant::now();
    let space = lookup(id)?;
    let mut report = Report::new("rank");
    report.input("space", space.id()).bound("depth", depth);
    report.push(match &space {
        CatalogSpace::Single(s) => rank_check(id, s, depth),
        CatalogSpace::Product(p) => rank_check(id, p, depth),
    });
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(report)
}
