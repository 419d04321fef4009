use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use dmckay::constel::{default_family, socle_table, stratum_witnesses, theta_check, StabilityParam, Verdict};
use dmckay::exactnum::{parse_rat, Rat};
use dmckay::hilb::{boundary_strict_transforms, build_flop_atlas, fixed_points, stage_range, x1_atlas};
use dmckay::intersect::{domination_chain, fold, CurveConfig};
use dmckay::repr::{char_table, mckay_quiver, GroupSpec, Irr};
use dmckay::taut::{
    build_ledger, check_ledger, default_k, fm_table_checked, refdivisor_certify, torsion_check, torsion_class, Space,
    TautContext,
};
use dmckay::verify::{verify_all, VerifyConfig};

#[derive(Parser)]
#[command(name = "dmckay", version, about = "Exact computations for the McKay correspondence of dihedral groups D_2n")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Clone, Copy, PartialEq, Eq)]
enum Cmd {
    /// Character table of D_2n (or Z_n with --group cyclic)
    Chartable,
    /// McKay quiver of the natural representation
    Quiver,
    /// Toric charts of Z_n-Hilb(C^2), or the flop stages with --flops
    HilbAtlas,
    /// Z_2-fixed Z_n-clusters with Groebner certificates
    FixedPoints,
    /// Strict transforms of the boundary curves in every chart
    StrictTransforms,
    /// Folded intersection data on the Z_2 quotient
    Fold,
    /// Blow-down chain from the fold to the quotient
    Chain,
    /// Socles and tops of constellations, one witness per stratum
    SocleTable,
    /// Tautological bundle ledgers and the torsion check
    TautTable,
    /// Images of the point sheaves, cross-checked against the socle table
    FmTable,
    /// Reference divisors W_k and their pairings with E_i
    Refdiv,
    /// Run every acceptance criterion
    Verify,
}

#[derive(Args)]
struct Opts {
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Inclusive range `A..B`
    #[arg(long = "n-range", global = true, value_parser = parse_range)]
    n_range: Option<(usize, usize)>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Witness parameter for generic strata
    #[arg(long, global = true, value_parser = parse_rat_arg)]
    alpha: Option<Rat>,
    /// Stability parameter, one rational per irreducible in table order
    #[arg(long, global = true)]
    theta: Option<String>,
    /// `default`, or a file with one seed set of basis labels per line
    #[arg(long, global = true, default_value = "default")]
    family: String,
    /// Index of the reference divisor W_k
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = SpaceArg::Both)]
    space: SpaceArg,
    #[arg(long, global = true, value_enum, default_value_t = GroupArg::Dihedral)]
    group: GroupArg,
    /// hilb-atlas: emit every flop stage instead of the X1 atlas
    #[arg(long, global = true)]
    flops: bool,
    /// Seed for the randomized criteria of `verify`
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum SpaceArg {
    Coarse,
    Stack,
    Both,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum GroupArg {
    Dihedral,
    Cyclic,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|_| format!("bad lower bound `{a}`"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad upper bound `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn parse_rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s.trim()).ok_or_else(|| format!("not a rational: `{s}`"))
}

enum Failure {
    Usage(String),
    Verification(Value),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Output for one value of `n`.
struct Section {
    n: usize,
    anchor: &'static str,
    payload: Value,
    table: String,
    dot: Option<String>,
    failures: Vec<String>,
}

impl Section {
    fn new(n: usize, anchor: &'static str, payload: impl Serialize) -> Self {
        let payload = serde_json::to_value(payload).expect("serializable payload");
        Section { n, anchor, payload, table: String::new(), dot: None, failures: Vec::new() }
    }
}

fn anchor(cmd: Cmd) -> &'static str {
    match cmd {
        Cmd::Chartable => "character table",
        Cmd::Quiver => "McKay quiver",
        Cmd::HilbAtlas => "Z_n-Hilb(C^2) toric atlas",
        Cmd::FixedPoints => "Z_2-fixed Z_n-clusters",
        Cmd::StrictTransforms => "boundary strict transforms",
        Cmd::Fold => "folded intersection form",
        Cmd::Chain => "blow-down chain",
        Cmd::SocleTable => "constellation socles and tops",
        Cmd::TautTable => "tautological bundles",
        Cmd::FmTable => "Fourier-Mukai images of point sheaves",
        Cmd::Refdiv => "reference divisors W_k",
        Cmd::Verify => "acceptance criteria",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(report)) => {
            eprintln!("{}", serde_json::to_string_pretty(&report).expect("report"));
            ExitCode::from(2)
        }
    }
}

fn ns(o: &Opts, cmd: Cmd) -> Result<Option<Vec<usize>>, Failure> {
    let ns: Vec<usize> = match (o.n, o.n_range) {
        (Some(_), Some(_)) => return Err(usage("--n and --n-range are exclusive")),
        (Some(n), None) => vec![n],
        (None, Some((a, b))) => (a..=b).collect(),
        (None, None) if cmd == Cmd::Verify => return Ok(None),
        (None, None) => return Err(usage("--n or --n-range is required")),
    };
    if let Some(&bad) = ns.iter().find(|&&n| n < 3) {
        return Err(usage(format!("--n: n must be at least 3, got {bad}")));
    }
    Ok(Some(ns))
}

fn check_format(cmd: Cmd, f: Format) -> Result<(), Failure> {
    let dot = matches!(cmd, Cmd::Quiver | Cmd::Fold | Cmd::Chain);
    if f == Format::Dot && !dot {
        return Err(usage("--format dot is not available for this subcommand; use json or table"));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let o = &cli.opts;
    check_format(cli.cmd, o.format)?;
    if cli.cmd == Cmd::Verify {
        return run_verify(o);
    }
    let ns = ns(o, cli.cmd)?.expect("range for non-verify commands");
    let family = match o.family.as_str() {
        "default" => None,
        path => Some(read_family(path)?),
    };
    let mut sections = Vec::new();
    for &n in &ns {
        sections.push(section(cli.cmd, n, o, family.as_deref())?);
    }
    let text = match o.format {
        Format::Json => {
            let v: Vec<Value> = sections.iter().map(|s| json!({"anchor": s.anchor, "n": s.n, "payload": s.payload})).collect();
            let v = if v.len() == 1 { v.into_iter().next().unwrap() } else { Value::Array(v) };
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Dot => sections.iter().filter_map(|s| s.dot.clone()).collect(),
        Format::Table => sections.iter().map(|s| s.table.clone()).collect::<Vec<_>>().join("\n"),
    };
    emit(o, &text)?;
    let failures: Vec<Value> = sections
        .iter()
        .filter(|s| !s.failures.is_empty())
        .map(|s| json!({"anchor": s.anchor, "n": s.n, "failures": s.failures}))
        .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(json!({ "failures": failures })))
    }
}

fn emit(o: &Opts, text: &str) -> Result<(), Failure> {
    match &o.out {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("--out {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn read_family(path: &str) -> Result<Vec<Vec<String>>, Failure> {
    let s = std::fs::read_to_string(path).map_err(|e| usage(format!("--family {path}: {e}")))?;
    Ok(s.lines()
        .map(|l| l.split('#').next().unwrap_or("").split_whitespace().map(String::from).collect::<Vec<_>>())
        .filter(|v| !v.is_empty())
        .collect())
}

fn parse_theta(n: usize, s: &str) -> Result<StabilityParam, Failure> {
    let vals: Vec<Rat> = s.split(',').map(parse_rat_arg).collect::<Result<_, _>>().map_err(|e| usage(format!("--theta: {e}")))?;
    StabilityParam::from_values(n, &vals).map_err(|e| usage(format!("--theta: {e}")))
}

fn alpha(o: &Opts) -> Rat {
    o.alpha.clone().unwrap_or_else(dmckay::constel::default_alpha)
}

fn section(cmd: Cmd, n: usize, o: &Opts, family: Option<&[Vec<String>]>) -> Result<Section, Failure> {
    let a = anchor(cmd);
    let m = n / 2;
    let s = match cmd {
        Cmd::Chartable => {
            let g = match o.group {
                GroupArg::Dihedral => GroupSpec::dihedral(n),
                GroupArg::Cyclic => GroupSpec::cyclic(n),
            };
            let t = char_table(g);
            let classes: Vec<Value> = t.classes.iter().map(|c| json!({"label": c.label.to_string(), "size": c.size})).collect();
            let chars: Vec<Value> = t
                .chars
                .iter()
                .map(|c| json!({"irr": c.name.map(|r| r.to_string()), "values": c.values.iter().map(|v| v.to_string()).collect::<Vec<_>>()}))
                .collect();
            let mut s = Section::new(n, a, json!({"group": g, "classes": classes, "characters": chars, "root": format!("t = exp(2 pi i/{n})")}));
            let mut rows = vec![std::iter::once(String::new()).chain(t.classes.iter().map(|c| format!("{} ({})", c.label, c.size))).collect::<Vec<_>>()];
            for c in &t.chars {
                rows.push(std::iter::once(c.name.map(|r| r.to_string()).unwrap_or_default()).chain(c.values.iter().map(|v| v.to_string())).collect());
            }
            s.table = format!("n = {n}, t = exp(2 pi i/{n})\n{}", grid(&rows));
            s
        }
        Cmd::Quiver => {
            let q = mckay_quiver(n);
            let mut s = Section::new(n, a, json!({"quiver": q, "edges": q.edges().iter().map(|(x, y, k)| json!([x, y, k])).collect::<Vec<_>>(), "loop_note": q.loop_note()}));
            let mut rows = vec![std::iter::once(String::new()).chain(q.vertices.iter().map(Irr::to_string)).collect::<Vec<_>>()];
            for (i, v) in q.vertices.iter().enumerate() {
                rows.push(std::iter::once(v.to_string()).chain(q.adjacency[i].iter().map(u64::to_string)).collect());
            }
            s.table = format!("n = {n}\n{}", grid(&rows));
            if let Some(note) = q.loop_note() {
                let _ = writeln!(s.table, "note: {note}");
            }
            s.dot = Some(q.to_dot());
            s
        }
        Cmd::HilbAtlas if o.flops => {
            let mut atl = Vec::new();
            let mut table = format!("n = {n}\n");
            for st in stage_range(n) {
                let f = build_flop_atlas(n, st).ok_or_else(|| usage(format!("no flop atlas for stage {st:?}")))?;
                let names: Vec<&str> = f.atlas.charts.iter().map(|c| c.name.as_str()).collect();
                let j = st.j.map(|j| format!(" j={j}")).unwrap_or_default();
                let _ = writeln!(table, "stage i={}{j}: {} | curves on the surface: {}", st.i, names.join(" "), f.surface_curves());
                atl.push(f.to_json());
            }
            let mut s = Section::new(n, a, atl);
            s.table = table;
            s
        }
        Cmd::HilbAtlas => {
            let h = x1_atlas(n);
            let j = h.to_json();
            let mut table = format!("n = {n}, atoms {}\n", j.atlas.atoms.join(" "));
            for c in &j.atlas.charts {
                let _ = writeln!(table, "{}: {}", c.name, c.coords.join(", "));
            }
            for (d, e) in &j.divisors {
                let _ = writeln!(table, "{d} = {e}");
            }
            let mut s = Section::new(n, a, j);
            s.table = table;
            s
        }
        Cmd::FixedPoints => {
            let fps = fixed_points(n);
            let mut table = format!("n = {n}\n");
            for f in &fps {
                let al: Vec<String> = f.aliases.iter().map(ToString::to_string).collect();
                let _ = writeln!(table, "{} = {} | basis {}", f.point, al.join(" = "), f.certificate.join(", "));
            }
            let mut s = Section::new(n, a, fps);
            s.table = table;
            s
        }
        Cmd::StrictTransforms => {
            let sts: Vec<_> = boundary_strict_transforms(n).iter().map(|s| s.to_json()).collect();
            let mut table = format!("n = {n}\n");
            for t in &sts {
                let meets: Vec<String> = t.meets.iter().map(|(ax, _, cl)| format!("{ax} at {}", cl.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))).collect();
                let tail = if t.constant_term_one { "constant term 1".to_string() } else { meets.join("; ") };
                let _ = writeln!(table, "{} in {}: {} | {tail}", t.label, t.chart, t.strict);
            }
            let mut s = Section::new(n, a, sts);
            s.table = table;
            s
        }
        Cmd::Fold => {
            let f = fold(n);
            let mut s = Section::new(n, a, f.to_json());
            s.table = format!("n = {n}\n{}", config_table(&f));
            s.dot = Some(f.to_dot(&format!("fold n={n}")));
            s
        }
        Cmd::Chain => {
            let ch = domination_chain(n).map_err(|e| Failure::Verification(json!({"anchor": a, "n": n, "failures": [e.to_string()]})))?;
            let mut s = Section::new(n, a, ch.iter().map(CurveConfig::to_json).collect::<Vec<_>>());
            let mut table = format!("n = {n}, {} configurations\n", ch.len());
            let mut dot = String::new();
            for (i, c) in ch.iter().enumerate() {
                let _ = write!(table, "step {i}\n{}", config_table(c));
                dot += &c.to_dot(&format!("chain n={n} step {i}"));
            }
            s.table = table;
            s.dot = Some(dot);
            s
        }
        Cmd::SocleTable => socle_section(n, o, family)?,
        Cmd::TautTable => {
            let spaces = match o.space {
                SpaceArg::Coarse => vec![Space::Coarse],
                SpaceArg::Stack => vec![Space::Stack],
                SpaceArg::Both => vec![Space::Coarse, Space::Stack],
            };
            let k = o.k.unwrap_or_else(|| default_k(n));
            let ctx = TautContext::new(n, k).map_err(|e| usage(format!("--k: {e}")))?;
            let ledgers: Vec<_> = spaces.into_iter().map(|sp| build_ledger(n, sp)).collect();
            let verdict = torsion_check(&ctx, &torsion_class(n));
            let mut s = Section::new(n, a, json!({"ledgers": ledgers, "k": k, "torsion": verdict}));
            let mut table = String::new();
            for l in &ledgers {
                if let Err(e) = check_ledger(l) {
                    s.failures.push(e.to_string());
                }
                let _ = writeln!(table, "{}\nrelation: {}\n", l.to_markdown(), l.relation);
            }
            let _ = writeln!(table, "torsion class {} (D = W_{k}): {}", verdict.class, if verdict.torsion { "2-torsion" } else { "not torsion" });
            if !verdict.torsion {
                s.failures.push(format!("{} is not torsion for k = {k}", verdict.class));
            }
            s.table = table;
            s
        }
        Cmd::FmTable => {
            let t = fm_table_checked(n, &alpha(o)).map_err(|e| Failure::Verification(json!({"anchor": a, "n": n, "failures": [e.to_string()]})))?;
            let mut rows = vec![vec!["rho".to_string(), "support".into(), "twist".into(), "shift".into()]];
            for e in &t.entries {
                rows.push(vec![e.irr.to_string(), e.support.to_string(), e.twist.to_string(), format!("[{}]", e.shift)]);
            }
            let mut s = Section::new(n, a, &t);
            s.table = format!("n = {n}\n{}", grid(&rows));
            s
        }
        Cmd::Refdiv => {
            let ks: Vec<usize> = match o.k {
                Some(k) => vec![k],
                None => (1..=m).collect(),
            };
            let certs = ks.iter().map(|&k| refdivisor_certify(n, k)).collect::<Result<Vec<_>, _>>().map_err(|e| usage(format!("--k: {e}")))?;
            let mut table = format!("n = {n}\n");
            let mut failures = Vec::new();
            for c in &certs {
                let p: Vec<String> = c.pairings.iter().map(ToString::to_string).collect();
                let w = c.chart_witness.as_ref().map(|w| format!(" | {}: {}", w.chart, w.strict)).unwrap_or_default();
                let _ = writeln!(table, "W_{} = {} | D.E = ({}) | transversal {}{w}", c.k, c.equation, p.join(", "), c.transversal);
                if !c.transversal {
                    failures.push(format!("W_{} is not transversal to E_{}", c.k, c.k));
                }
            }
            let mut s = Section::new(n, a, certs);
            s.table = table;
            s.failures = failures;
            s
        }
        Cmd::Verify => unreachable!(),
    };
    Ok(s)
}

fn socle_section(n: usize, o: &Opts, family: Option<&[Vec<String>]>) -> Result<Section, Failure> {
    let a = anchor(Cmd::SocleTable);
    let al = alpha(o);
    let fail = |e: String| Failure::Verification(json!({"anchor": a, "n": n, "failures": [e]}));
    let rows = socle_table(n, &al).map_err(|e| fail(e.to_string()))?;
    let theta = o.theta.as_deref().map(|t| parse_theta(n, t)).transpose()?;
    let mut verdicts = Vec::new();
    if let Some(th) = &theta {
        for w in stratum_witnesses(n, &al).map_err(|e| fail(e.to_string()))? {
            let fam = match family {
                None => default_family(&w.module),
                Some(f) => f
                    .iter()
                    .filter_map(|set| set.iter().map(|l| w.module.labels.iter().position(|x| x == l)).collect::<Option<Vec<usize>>>())
                    .collect(),
            };
            verdicts.push((w.stratum.clone(), theta_check(&w.module, th, &fam)));
        }
    }
    let mut head = vec!["stratum", "curves", "socle", "top", "expected", "ok"].into_iter().map(String::from).collect::<Vec<_>>();
    if theta.is_some() {
        head.push("theta".into());
    }
    let mut grid_rows = vec![head];
    let mut failures = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let curves: Vec<String> = r.curves.iter().map(|c| format!("E{c}")).collect();
        let z = |c: &dmckay::repr::RClass| if c.is_zero() { "0".to_string() } else { c.to_string() };
        let mut row = vec![r.stratum.clone(), curves.join(","), z(&r.socle), z(&r.top), z(&r.expected_socle), (r.matches && r.regular).to_string()];
        if let Some((_, v)) = verdicts.get(i) {
            row.push(match v {
                Verdict::NoViolationFound => "no violation found".into(),
                Verdict::DestabilizedBy { class, value, .. } => format!("destabilized by {class} ({value})"),
            });
        }
        grid_rows.push(row);
        if !r.matches || !r.regular {
            failures.push(format!("{}: socle {} expected {}", r.stratum, r.socle, r.expected_socle));
        }
    }
    let theta_json: Vec<Value> = verdicts.iter().map(|(s, v)| json!({"stratum": s, "verdict": v})).collect();
    let mut s = Section::new(n, a, json!({"alpha": al.to_string(), "rows": rows, "theta": theta.map(|t| t.to_string()), "theta_checks": theta_json}));
    s.table = format!("n = {n}, alpha = {al}\n{}", grid(&grid_rows));
    s.failures = failures;
    Ok(s)
}

fn run_verify(o: &Opts) -> Result<(), Failure> {
    let mut cfg = VerifyConfig::default();
    if let Some(ns) = ns(o, Cmd::Verify)? {
        cfg.range = Some(ns[0]..=ns[ns.len() - 1]);
    }
    if let Some(al) = &o.alpha {
        cfg.alpha = al.clone();
    }
    if let Some(seed) = o.seed {
        cfg.seed = seed;
    }
    let reports = verify_all(&cfg);
    let checks: usize = reports.iter().map(|r| r.checks).sum();
    let passed = reports.iter().filter(|r| r.passed).count();
    let n = cfg.range.as_ref().map(|r| json!([r.start(), r.end()])).unwrap_or(Value::Null);
    let text = match o.format {
        Format::Json => {
            let v = json!({"anchor": anchor(Cmd::Verify), "n": n, "payload": {"criteria": reports, "passed": passed, "checks": checks}});
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        _ => {
            let mut t: String = reports.iter().map(|r| format!("{r}\n")).collect();
            let _ = writeln!(t, "{passed}/{} criteria passed, {checks} checks", reports.len());
            t
        }
    };
    emit(o, &text)?;
    if passed == reports.len() {
        Ok(())
    } else {
        let failed: Vec<Value> = reports.iter().filter(|r| !r.passed).map(|r| json!({"criterion": r.id, "title": r.title, "failures": r.failures})).collect();
        Err(Failure::Verification(json!({ "failures": failed })))
    }
}

fn config_table(c: &CurveConfig) -> String {
    let mut rows = vec![std::iter::once(String::new()).chain(c.labels.iter().cloned()).chain(["K.E".into(), "a".into()]).collect::<Vec<_>>()];
    for i in 0..c.len() {
        rows.push(
            std::iter::once(c.labels[i].clone())
                .chain(c.q[i].iter().map(ToString::to_string))
                .chain([c.k_dot[i].to_string(), c.discrepancy[i].to_string()])
                .collect(),
        );
    }
    grid(&rows)
}

/// Left-aligned columns separated by two spaces.
fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let w: Vec<usize> = (0..cols).map(|j| rows.iter().filter_map(|r| r.get(j)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(j, s)| format!("{s:<width$}", width = w[j])).collect();
        out += line.join("  ").trim_end();
        out.push('\n');
    }
    out
}
