use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lenslab::conemodel::{
    grading_shift_n, homology_rank, is_lspace_pattern, parse_profile, ConePattern,
};
use lenslab::exactmath::dedekind_fast;
use lenslab::lens::{linking_forms_isomorphic, LensSpace};
use lenslab::obstruct::{classify_with, table, Mode, RouteReport, Verdict, VerdictKind};
use lenslab::seifert::SeifertData;
use lenslab::Error;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "lenslab", version, about = "Exact lens space invariants and distance one surgery obstructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    PaperFaithful,
    Strict,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::PaperFaithful => Mode::PaperFaithful,
            ModeArg::Strict => Mode::Strict,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify one pair, or every s for a given n.
    Classify {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(allow_negative_numbers = true)]
        s: Option<i64>,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        #[arg(long, value_enum, env = "LENSLAB_MODE", default_value = "paper-faithful")]
        mode: ModeArg,
    },
    /// Classify every pair with 1 <= |s| <= n <= n-max.
    Table {
        #[arg(long = "n-max")]
        n_max: i64,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
        #[arg(long, value_enum, env = "LENSLAB_MODE", default_value = "paper-faithful")]
        mode: ModeArg,
    },
    /// d-invariants of L(p, q) over all Spin^c labels.
    D {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Casson-Walker invariant.
    Cw {
        #[command(subcommand)]
        space: Space,
    },
    /// Dedekind sum s(q, p).
    Dedekind {
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Whether the linking forms q1/p and q2/p are isomorphic.
    Linkform {
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q1: i64,
        #[arg(allow_negative_numbers = true)]
        q2: i64,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Mapping-cone checks on a profile file (`g=` header) or a raw symbol pattern.
    Cone {
        file: PathBuf,
        #[arg(long, group = "action")]
        check: bool,
        #[arg(long, group = "action")]
        rank: bool,
        /// Grading shift N on the given coset.
        #[arg(long = "N", group = "action", allow_negative_numbers = true)]
        n: Option<i64>,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Space {
    Lens {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
    /// Fibers written as b/a, e.g. `1/2 1/3 -1/5`.
    Seifert {
        #[arg(required = true, allow_hyphen_values = true)]
        fibers: Vec<String>,
        #[arg(long, value_enum, default_value = "pretty")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 1 } else { 2 })
        }
    }
}

fn run(command: Command) -> lenslab::Result<String> {
    match command {
        Command::Classify { n, s, format, mode } => {
            let mode = Mode::from(mode);
            let verdicts = match s {
                Some(s) => vec![classify_with(n, s, mode)?],
                None => {
                    if n < 1 {
                        return Err(Error::Domain(format!("n must be at least 1, got {n}")));
                    }
                    (-n..=n).rev().filter(|&s| s != 0).map(|s| classify_with(n, s, mode)).collect::<Result<_, _>>()?
                }
            };
            Ok(render_verdicts(&verdicts, format, s.is_some()))
        }
        Command::Table { n_max, format, mode } => {
            let rows = table(n_max, mode.into())?;
            Ok(render_table(&rows, format))
        }
        Command::D { p, q, format } => {
            let lens = LensSpace::new(p, q)?;
            let values: Vec<String> = lens.d_values().iter().map(ToString::to_string).collect();
            Ok(match format {
                Format::Json => json_line(&serde_json::json!({ "space": lens.to_string(), "d": values })),
                Format::Tsv => values.iter().enumerate().map(|(i, d)| format!("{i}\t{d}\n")).collect(),
                Format::Pretty => format!("{}\n", values.join(" ")),
            })
        }
        Command::Cw { space } => {
            let (name, value, format) = match space {
                Space::Lens { p, q, format } => {
                    let lens = LensSpace::new(p, q)?;
                    (lens.to_string(), lens.casson_walker(), format)
                }
                Space::Seifert { fibers, format } => {
                    let data = SeifertData::new(&parse_fibers(&fibers)?)?;
                    (data.to_string(), data.casson_walker()?, format)
                }
            };
            Ok(scalar(&name, "casson_walker", &value.to_string(), format))
        }
        Command::Dedekind { q, p, format } => {
            let value = dedekind_fast(q, p)?;
            Ok(scalar(&format!("s({q}, {p})"), "dedekind", &value.to_string(), format))
        }
        Command::Linkform { p, q1, q2, format } => {
            let witness = linking_forms_isomorphic(p, q1, q2)?;
            Ok(match format {
                Format::Json => json_line(&serde_json::json!({
                    "p": p, "q1": q1, "q2": q2, "isomorphic": witness.is_some(), "witness": witness,
                })),
                Format::Tsv => format!("{p}\t{q1}\t{q2}\t{}\n", witness.map_or("-".to_string(), |a| a.to_string())),
                Format::Pretty => match witness {
                    Some(a) => format!("isomorphic: {q1} = {q2} * {a}^2 (mod {p})\n"),
                    None => "not isomorphic\n".to_string(),
                },
            })
        }
        Command::Cone { file, check, rank, n, format } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::Domain(format!("cannot read {}: {e}", file.display())))?;
            cone(&text, check, rank, n, format)
        }
    }
}

fn parse_fibers(fibers: &[String]) -> lenslab::Result<Vec<(i64, i64)>> {
    fibers
        .iter()
        .map(|f| {
            let (b, a) = f.split_once('/').ok_or_else(|| Error::Domain(format!("fiber {f:?} is not b/a")))?;
            let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::Domain(format!("bad fiber {f:?}")));
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

fn json_line(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialize");
    s.push('\n');
    s
}

fn scalar(name: &str, key: &str, value: &str, format: Format) -> String {
    match format {
        Format::Json => json_line(&serde_json::json!({ "input": name, key: value })),
        Format::Tsv => format!("{name}\t{value}\n"),
        Format::Pretty => format!("{value}\n"),
    }
}

fn cone(text: &str, check: bool, rank: bool, coset: Option<i64>, format: Format) -> lenslab::Result<String> {
    let is_profile = text.lines().any(|l| l.split('#').next().unwrap_or("").trim().starts_with("g="));
    if !is_profile {
        let body: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect();
        let pattern: ConePattern = body.parse()?;
        if coset.is_some() {
            return Err(Error::Domain("--N needs a profile file, not a raw pattern".into()));
        }
        return pattern_report(&pattern, None, !rank || check, rank, format);
    }
    let (profile, framing) = parse_profile(text)?;
    if let Some(c) = coset {
        let value = grading_shift_n(&profile, framing, c);
        return Ok(scalar(&format!("coset {c}"), "N", &value.to_string(), format));
    }
    let mut out = String::new();
    for c in 0..framing.g().abs() {
        let pattern = ConePattern::from_profile(&profile, framing, c)?;
        out.push_str(&pattern_report(&pattern, Some(c), !rank || check, rank, format)?);
    }
    Ok(out)
}

fn pattern_report(
    pattern: &ConePattern,
    coset: Option<i64>,
    check: bool,
    rank: bool,
    format: Format,
) -> lenslab::Result<String> {
    let lspace = is_lspace_pattern(pattern)?;
    let rank_value = homology_rank(pattern)?;
    let prefix = coset.map_or(String::new(), |c| format!("coset {c}: "));
    Ok(match format {
        Format::Json => json_line(&serde_json::json!({
            "coset": coset,
            "pattern": pattern.to_string(),
            "is_lspace": lspace.is_lspace,
            "violated": lspace.violated,
            "rank": rank_value,
        })),
        Format::Tsv => format!(
            "{}\t{pattern}\t{}\t{}\t{rank_value}\n",
            coset.map_or("-".to_string(), |c| c.to_string()),
            lspace.is_lspace,
            lspace.violated.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        ),
        Format::Pretty => {
            let mut line = prefix;
            if check {
                if lspace.is_lspace {
                    line.push_str("L-space");
                } else {
                    let clauses: Vec<String> = lspace.violated.iter().map(|c| format!("({c})")).collect();
                    let _ = write!(line, "not L-space: violates {}", clauses.join(","));
                }
            }
            if rank {
                if check {
                    line.push_str(", ");
                }
                let _ = write!(line, "rank {rank_value}");
            }
            line.push('\n');
            line
        }
    })
}

fn route_summary(r: &RouteReport) -> String {
    let k = r.k.map_or("-".to_string(), |k| k.to_string());
    let m = r.m.map_or("-".to_string(), |m| m.to_string());
    format!("k={k} m={m} [{}] {}", r.tag, if r.survives() { "survives" } else { "excluded" })
}

fn render_verdicts(verdicts: &[Verdict], format: Format, single: bool) -> String {
    match format {
        Format::Json if single => json_line(&verdicts[0]),
        Format::Json => json_line(&verdicts),
        Format::Tsv => {
            let mut out = String::from("n\ts\tverdict\tconstruction\tcandidates\n");
            verdicts.iter().for_each(|v| out.push_str(&tsv_row(v)));
            out
        }
        Format::Pretty => verdicts.iter().map(pretty_verdict).collect(),
    }
}

fn tsv_row(v: &Verdict) -> String {
    let construction = v.construction.as_ref().map_or("-".to_string(), |c| format!("{} ({})", c.name, c.figure));
    let candidates = serde_json::to_string(&v.candidates).expect("routes serialize");
    format!("{}\t{}\t{}\t{construction}\t{candidates}\n", v.n, v.s, v.verdict)
}

fn pretty_verdict(v: &Verdict) -> String {
    let mut out = format!("L({}, 1) -> L({}, 1): {}", v.n, v.s, v.verdict);
    if let Some((a, b)) = v.input {
        let _ = write!(out, "  (normalized from ({a}, {b}))");
    }
    out.push('\n');
    if let Some(c) = &v.construction {
        let _ = writeln!(out, "  construction: {} [{}]", c.name, c.figure);
    }
    for r in &v.candidates {
        let _ = writeln!(out, "  route {}", route_summary(r));
        for p in &r.passing {
            let _ = writeln!(out, "    passes: {}", serde_json::to_string(p).expect("serializes"));
        }
        for c in &r.certificates {
            let _ = writeln!(out, "    certificate: {}", serde_json::to_string(c).expect("serializes"));
        }
    }
    out
}

#[derive(Serialize)]
struct Summary {
    realized: usize,
    unresolved: usize,
    obstructed: usize,
    chiral_slice: Vec<i64>,
}

fn summarize(rows: &[Verdict]) -> Summary {
    let count = |k: VerdictKind| rows.iter().filter(|v| v.verdict == k).count();
    Summary {
        realized: count(VerdictKind::Realized),
        unresolved: count(VerdictKind::Unresolved),
        obstructed: count(VerdictKind::Obstructed),
        chiral_slice: rows.iter().filter(|v| v.s == -v.n && !v.is_obstructed()).map(|v| v.n).collect(),
    }
}

fn render_table(rows: &[Verdict], format: Format) -> String {
    let summary = summarize(rows);
    let slice: Vec<String> = summary.chiral_slice.iter().map(ToString::to_string).collect();
    match format {
        Format::Json => json_line(&serde_json::json!({ "rows": rows, "summary": summary })),
        Format::Tsv => {
            let mut out = render_verdicts(rows, Format::Tsv, false);
            let _ = writeln!(
                out,
                "# realized={} unresolved={} obstructed={} chiral_slice={}",
                summary.realized,
                summary.unresolved,
                summary.obstructed,
                slice.join(",")
            );
            out
        }
        Format::Pretty => {
            let mut out = String::new();
            for v in rows {
                let survivors: Vec<String> = v.surviving().map(route_summary).collect();
                let detail = match v.verdict {
                    VerdictKind::Realized => v.construction.as_ref().map(|c| c.figure.clone()).unwrap_or_default(),
                    VerdictKind::Unresolved => survivors.join("; "),
                    VerdictKind::Obstructed => {
                        let kinds: Vec<&str> = v.certificates().map(|c| c.kind()).collect();
                        kinds.join(",")
                    }
                };
                let _ = writeln!(out, "{:>4} {:>5}  {:<10}  {detail}", v.n, v.s, v.verdict.to_string());
            }
            let _ = writeln!(
                out,
                "summary: {} realized, {} unresolved, {} obstructed",
                summary.realized, summary.unresolved, summary.obstructed
            );
            let _ = writeln!(out, "chiral slice: {}", slice.join(" "));
            out
        }
    }
}
