use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fubini::cells::{
    cell_codimension, cell_dimension, omega_cells, omega_pattern_matrix, pattern_matrix, rank_function,
};
use fubini::fieldlab::{canonicalize_traced, count_x, count_y, parse_fp_matrix, parse_rational_matrix, verify_free_action};
use fubini::polyring::MultiPoly;
use fubini::qseries::QPoly;
use fubini::quotient::{structure_constants_csv, Expansion, Quotient, RingSpec};
use fubini::schubert::{double_schubert, dual_stable_check, schubert_word, stanley_stability};
use fubini::selftest::{self, Scale};
use fubini::symfunc::{grfrob_r, grfrob_t, hilbert_from_frobenius};
use fubini::words::{
    dimension_stat, enumerate_fubini, enumerate_tail, enumerate_words_s, is_convex, standardize, Perm, Word,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "fubini", version, about = "Fubini words, Schubert polynomials and the rings R_{n,k}")]
struct Cli {
    /// Output format (JSON unless stated otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads; subcommands default to 1, selftest to all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
    Ascii,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    R,
    Rs,
    T,
}

#[derive(Args)]
struct RingArgs {
    #[arg(long, value_enum, default_value = "r", ignore_case = true)]
    ring: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
}

impl RingArgs {
    fn spec(&self) -> Result<RingSpec, CliError> {
        let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("--ring needs --{flag}")));
        let spec = match self.ring {
            Family::R => RingSpec::r(self.n, self.k),
            Family::Rs => RingSpec::rs(self.n, self.k, need(self.s, "s")?),
            Family::T => RingSpec::t(self.n, self.k, need(self.r, "r")?),
        };
        Ok(spec?)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// List W_{n,k} (or W_{n,k,s} with --s, tail words with --r) with dim statistics.
    Words {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, conflicts_with = "r")]
        s: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Schubert polynomial of a word, or the double Schubert polynomial of a permutation.
    Schubert {
        #[arg(long)]
        word: String,
        #[arg(long)]
        k: Option<usize>,
        /// Treat --word as a permutation and return S_w(x; y).
        #[arg(long)]
        double: bool,
    },
    /// Normal form of a polynomial modulo the ideal of a ring.
    Nf {
        #[command(flatten)]
        ring: RingArgs,
        /// Polynomial such as "x1^2*x2 - 3*x3".
        #[arg(long)]
        poly: String,
    },
    /// Schubert expansion in R_{n,k}: a product S_u S_v, a polynomial, or (csv) the whole table.
    Expand {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, requires = "v")]
        u: Option<String>,
        #[arg(long, requires = "u")]
        v: Option<String>,
        #[arg(long, conflicts_with = "u")]
        poly: Option<String>,
    },
    /// Hilbert series of a quotient ring, as a coefficient list.
    Hilbert {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Graded Frobenius characteristic of R_{n,k} or T_{n,k,r} in the Schur basis.
    Frobenius {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Finite-field orbit counts and canonical forms.
    Fieldlab {
        #[command(subcommand)]
        cmd: FieldCmd,
    },
    /// Pattern matrices, cell dimension and closure data of a word.
    Cells {
        #[arg(long)]
        word: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Stability of Schubert polynomials under 1 x w.
    Stability {
        #[arg(long)]
        word: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Treat --word as a permutation and report Stanley truncations (heuristic).
        #[arg(long)]
        stanley: bool,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Run the acceptance criteria and print a pass/fail matrix (ascii unless --format is given).
    Selftest {
        /// Smaller parameter ranges.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Compare |Y_{n,k}(F_p)| or |X_{n,k}(F_p)| with the closed form.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u32,
        /// Count X (with the U-torus quotient dropped) instead of Y.
        #[arg(long)]
        x: bool,
        /// Also check freeness of the group action by brute force.
        #[arg(long)]
        verify_orbits: bool,
    },
    /// Canonical form of a k x n matrix; rows separated by ';'.
    Canonicalize {
        #[arg(long)]
        matrix: String,
        /// Work over F_p instead of Q.
        #[arg(long)]
        p: Option<u32>,
    },
}

enum CliError {
    Usage(String),
    Lib(fubini::Error),
}

impl From<fubini::Error> for CliError {
    fn from(e: fubini::Error) -> Self {
        CliError::Lib(e)
    }
}

/// Rendered output; `ok = false` marks a falsified identity.
struct Report {
    text: String,
    ok: bool,
}

impl Report {
    fn ok(text: String) -> Report {
        Report { text, ok: true }
    }
}

fn unsupported(format: Format) -> CliError {
    let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    CliError::Usage(format!("--format {name} is not available for this subcommand"))
}

fn to_json(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn parse_word(s: &str, k: Option<usize>) -> Result<Word, CliError> {
    Ok(Word::parse(s, k)?)
}

fn parse_poly(s: &str, n: usize) -> Result<MultiPoly, CliError> {
    Ok(MultiPoly::parse(s, n)?)
}

fn qpoly_latex(p: &QPoly) -> String {
    let mut s = String::new();
    for (d, c) in p.coeffs().iter().enumerate().filter(|(_, c)| c.to_string() != "0") {
        let c = c.to_string();
        let (neg, abs) = match c.strip_prefix('-') {
            Some(a) => (true, a.to_string()),
            None => (false, c),
        };
        s.push_str(match (s.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        let coeff = if abs == "1" && d > 0 { String::new() } else { abs };
        let _ = match d {
            0 => write!(s, "{coeff}"),
            1 => write!(s, "{coeff}q"),
            _ => write!(s, "{coeff}q^{{{d}}}"),
        };
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn expansion_text(e: &Expansion, latex: bool) -> String {
    let mut s = String::new();
    for (w, c) in e.pairs() {
        let (neg, abs) = match c.strip_prefix('-') {
            Some(a) => (true, a.to_string()),
            None => (false, c),
        };
        s.push_str(match (s.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        if abs != "1" {
            let _ = write!(s, "{abs}{}", if latex { "" } else { "*" });
        }
        let _ = if latex { write!(s, "\\mathfrak{{S}}_{{{w}}}") } else { write!(s, "S_{w}") };
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn words(n: usize, k: usize, s: Option<usize>, r: Option<usize>, format: Format) -> Result<Report, CliError> {
    let list = match (s, r) {
        (Some(s), _) => enumerate_words_s(n, k, s)?,
        (_, Some(r)) => enumerate_tail(n, k, r)?,
        _ => enumerate_fubini(n, k)?,
    };
    let rows: Vec<(Word, Option<usize>)> = list.into_iter().map(|w| (w.clone(), dimension_stat(&w).ok())).collect();
    let text = match format {
        Format::Json => to_json(&Value::Array(rows.iter().map(|(w, d)| json!({"word": w, "dim": d})).collect())),
        Format::Csv => {
            let mut s = String::from("word,dim\n");
            for (w, d) in &rows {
                let _ = writeln!(s, "{w},{}", d.map(|d| d.to_string()).unwrap_or_default());
            }
            s.trim_end().to_string()
        }
        Format::Ascii => rows.iter().map(|(w, _)| w.to_string()).collect::<Vec<_>>().join("\n"),
        Format::Latex => return Err(unsupported(format)),
    };
    Ok(Report::ok(text))
}

fn schubert(word: &str, k: Option<usize>, double: bool, format: Format) -> Result<Report, CliError> {
    let (label, poly, names) = if double {
        let p = Perm::parse(word)?;
        let m = p.len();
        let names: Vec<String> = (1..=m).map(|i| format!("x{i}")).chain((1..=m).map(|j| format!("y{j}"))).collect();
        (p.to_string(), double_schubert(&p), Some(names))
    } else {
        let w = parse_word(word, k)?;
        (w.to_string(), schubert_word(&w), None)
    };
    let plain = match &names {
        Some(names) => poly.display_with(names),
        None => poly.to_string(),
    };
    let text = match format {
        Format::Json => {
            to_json(&json!({"word": label, "nvars": poly.nvars(), "polynomial": plain, "terms": poly}))
        }
        Format::Ascii => plain,
        Format::Latex => match &names {
            Some(names) => {
                let latex: Vec<String> = names.iter().map(|v| format!("{}_{{{}}}", &v[..1], &v[1..])).collect();
                poly.latex_with(&latex)
            }
            None => poly.to_latex(),
        },
        Format::Csv => {
            let mut s = String::from("exponents,coefficient\n");
            for (m, c) in poly.terms() {
                let e: Vec<String> = m.iter().map(|e| e.to_string()).collect();
                let _ = writeln!(s, "{},{c}", e.join(" "));
            }
            s.trim_end().to_string()
        }
    };
    Ok(Report::ok(text))
}

fn nf(ring: &RingArgs, poly: &str, format: Format) -> Result<Report, CliError> {
    let spec = ring.spec()?;
    let q = Quotient::new(spec)?;
    let f = parse_poly(poly, spec.n())?;
    let g = q.normal_form(&f)?;
    let text = match format {
        Format::Json => to_json(&json!({
            "ring": spec,
            "input": f.to_string(),
            "normal_form": g.to_string(),
            "in_ideal": g.is_zero(),
        })),
        Format::Ascii => g.to_string(),
        Format::Latex => g.to_latex(),
        Format::Csv => return Err(unsupported(format)),
    };
    Ok(Report::ok(text))
}

fn expand(
    n: usize,
    k: usize,
    uv: Option<(&str, &str)>,
    poly: Option<&str>,
    format: Format,
) -> Result<Report, CliError> {
    let q = Quotient::new(RingSpec::r(n, k)?)?;
    let e = match (uv, poly) {
        (Some((u, v)), _) => q.structure_constants(&parse_word(u, Some(k))?, &parse_word(v, Some(k))?)?,
        (None, Some(p)) => q.schubert_expand(&parse_poly(p, n)?)?,
        (None, None) if format == Format::Csv => return Ok(Report::ok(structure_constants_csv(&q)?.trim_end().into())),
        (None, None) => return Err(CliError::Usage("expand needs --u/--v or --poly (or --format csv for the table)".into())),
    };
    let text = match format {
        Format::Json => to_json(&serde_json::to_value(&e).expect("serializable")),
        Format::Csv => {
            let mut s = String::from("word,coefficient\n");
            for (w, c) in e.pairs() {
                let _ = writeln!(s, "{w},{c}");
            }
            s.trim_end().to_string()
        }
        Format::Ascii => expansion_text(&e, false),
        Format::Latex => expansion_text(&e, true),
    };
    Ok(Report::ok(text))
}

fn hilbert(ring: &RingArgs, format: Format) -> Result<Report, CliError> {
    let h = Quotient::shared(ring.spec()?)?.hilbert_series();
    let text = match format {
        Format::Json => to_json(&serde_json::to_value(&h).expect("serializable")),
        Format::Csv => {
            let mut s = String::from("degree,dimension\n");
            for (d, c) in h.coeffs().iter().enumerate() {
                let _ = writeln!(s, "{d},{c}");
            }
            s.trim_end().to_string()
        }
        Format::Ascii => h.to_string(),
        Format::Latex => qpoly_latex(&h),
    };
    Ok(Report::ok(text))
}

fn frobenius(ring: &RingArgs, format: Format) -> Result<Report, CliError> {
    let spec = ring.spec()?;
    let f = match spec {
        RingSpec::R { n, k } => grfrob_r(n, k)?,
        RingSpec::T { n, k, r } => grfrob_t(n, k, r)?,
        RingSpec::Rs { .. } => return Err(CliError::Usage("frobenius supports --ring R and T".into())),
    };
    let text = match format {
        Format::Json => to_json(&json!({
            "ring": spec,
            "schur": f,
            "hilbert": hilbert_from_frobenius(&f),
        })),
        Format::Csv => {
            let mut s = String::from("partition,coefficients\n");
            for (l, c) in &f.0 {
                let cs: Vec<String> = c.coeffs().iter().map(|c| c.to_string()).collect();
                let _ = writeln!(s, "\"{l}\",{}", cs.join(" "));
            }
            s.trim_end().to_string()
        }
        Format::Ascii => f.to_string(),
        Format::Latex => {
            let terms: Vec<String> = f
                .0
                .iter()
                .rev()
                .map(|(l, c)| {
                    let parts: Vec<String> = l.parts().iter().map(|p| p.to_string()).collect();
                    format!("({}) s_{{{}}}", qpoly_latex(c), parts.join(","))
                })
                .collect();
            terms.join(" + ")
        }
    };
    Ok(Report::ok(text))
}

fn fieldlab(cmd: &FieldCmd, format: Format) -> Result<Report, CliError> {
    match cmd {
        FieldCmd::Count { n, k, p, x, verify_orbits } => {
            let report = if *x { count_x(*n, *k, *p)? } else { count_y(*n, *k, *p)? };
            let free = if *verify_orbits { Some(verify_free_action(*n, *k, *p)?) } else { None };
            let ok = report.matches && free.as_ref().is_none_or(|f| f.holds());
            let text = match format {
                Format::Json => {
                    let mut v = serde_json::to_value(&report).expect("serializable");
                    v["set"] = json!(if *x { "X" } else { "Y" });
                    if let Some(f) = &free {
                        v["orbits"] = serde_json::to_value(f).expect("serializable");
                    }
                    to_json(&v)
                }
                Format::Csv => format!(
                    "set,n,k,p,closed_form,enumerated,match\n{},{n},{k},{p},{},{},{}",
                    if *x { "X" } else { "Y" },
                    report.closed_form,
                    report.enumerated,
                    report.matches
                ),
                Format::Ascii => format!(
                    "closed form {}, enumerated {}: {}",
                    report.closed_form,
                    report.enumerated,
                    if ok { "match" } else { "MISMATCH" }
                ),
                Format::Latex => return Err(unsupported(format)),
            };
            Ok(Report { text, ok })
        }
        FieldCmd::Canonicalize { matrix, p } => {
            let (word, m, stages) = match p {
                Some(p) => {
                    let c = canonicalize_traced(&parse_fp_matrix(matrix, *p)?)?;
                    let stages: Vec<Value> = c.stages.iter().map(|s| serde_json::to_value(s).expect("serializable")).collect();
                    (c.word, (serde_json::to_value(&c.matrix).expect("serializable"), c.matrix.to_string()), stages)
                }
                None => {
                    let c = canonicalize_traced(&parse_rational_matrix(matrix)?)?;
                    let stages: Vec<Value> = c.stages.iter().map(|s| serde_json::to_value(s).expect("serializable")).collect();
                    (c.word, (serde_json::to_value(&c.matrix).expect("serializable"), c.matrix.to_string()), stages)
                }
            };
            let text = match format {
                Format::Json => to_json(&json!({"word": word, "matrix": m.0, "stages": stages})),
                Format::Ascii => format!("{word}\n{}", m.1),
                Format::Csv | Format::Latex => return Err(unsupported(format)),
            };
            Ok(Report::ok(text))
        }
    }
}

fn cells(word: &str, k: Option<usize>, format: Format) -> Result<Report, CliError> {
    let w = parse_word(word, k)?;
    let pm = pattern_matrix(&w);
    let convex = is_convex(&w);
    let opm = if convex { Some(omega_pattern_matrix(&w)?) } else { None };
    let omega = if convex { Some(omega_cells(&w)?) } else { None };
    let text = match format {
        Format::Json => to_json(&json!({
            "word": w,
            "convex": convex,
            "pattern_matrix": pm.to_string(),
            "omega_pattern_matrix": opm.as_ref().map(|m| m.to_string()),
            "dimension": cell_dimension(&w),
            "codimension": cell_codimension(&w),
            "dim_statistic": dimension_stat(&w).ok(),
            "std": standardize(&w),
            "rank_function": rank_function(&w).values(),
            "omega_cells": omega,
        })),
        Format::Ascii => {
            let mut s = format!("PM({w}):\n{pm}");
            if let Some(o) = &opm {
                let _ = write!(s, "\nOPM({w}):\n{o}");
            }
            s
        }
        Format::Csv | Format::Latex => return Err(unsupported(format)),
    };
    Ok(Report::ok(text))
}

fn stability(
    word: &str,
    k: Option<usize>,
    m: usize,
    stanley: bool,
    max_degree: Option<u32>,
    format: Format,
) -> Result<Report, CliError> {
    if stanley {
        let r = stanley_stability(&Perm::parse(word)?, m, max_degree);
        let text = match format {
            Format::Json => to_json(&json!({
                "m": r.m,
                "truncations": r.truncations.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "stable": r.stable.to_string(),
                "unstable_monomials": r.unstable,
                "heuristic": r.heuristic,
            })),
            Format::Ascii => format!("stable part (heuristic): {}", r.stable),
            Format::Latex => r.stable.to_latex(),
            Format::Csv => return Err(unsupported(format)),
        };
        return Ok(Report::ok(text));
    }
    let r = dual_stable_check(&parse_word(word, k)?, m)?;
    let text = match format {
        Format::Json => {
            let rows: Vec<Value> = r
                .words
                .iter()
                .zip(&r.reversed)
                .map(|(w, rev)| json!({"word": w, "schubert": schubert_word(w).to_string(), "reversed": rev.to_string()}))
                .collect();
            to_json(&json!({"tower": rows, "holds": r.holds}))
        }
        Format::Ascii | Format::Latex => {
            let latex = format == Format::Latex;
            let lines: Vec<String> = r
                .words
                .iter()
                .zip(&r.reversed)
                .map(|(w, rev)| {
                    let s = schubert_word(w);
                    if latex {
                        format!("\\mathfrak{{S}}_{{{w}}} = {} \\quad {}", s.to_latex(), rev.to_latex())
                    } else {
                        format!("{w}: {s} | {rev}")
                    }
                })
                .collect();
            lines.join("\n")
        }
        Format::Csv => {
            let mut s = String::from("word,schubert,reversed\n");
            for (w, rev) in r.words.iter().zip(&r.reversed) {
                let _ = writeln!(s, "{w},\"{}\",\"{rev}\"", schubert_word(w));
            }
            s.trim_end().to_string()
        }
    };
    Ok(Report { text, ok: r.holds })
}

fn selftest_cmd(quick: bool, format: Option<Format>) -> Result<Report, CliError> {
    let reports = selftest::run(if quick { Scale::Quick } else { Scale::Full });
    let ok = reports.iter().all(|r| r.passed);
    let text = match format.unwrap_or(Format::Ascii) {
        Format::Json => to_json(&serde_json::to_value(&reports).expect("serializable")),
        Format::Csv => {
            let mut s = String::from("criterion,name,passed,checks,counterexample\n");
            for r in &reports {
                let ce = r.counterexample.as_deref().unwrap_or("").replace('"', "'");
                let _ = writeln!(s, "{},\"{}\",{},{},\"{ce}\"", r.id, r.name, r.passed, r.checks);
            }
            s.trim_end().to_string()
        }
        Format::Ascii => {
            let mut s = String::new();
            for r in &reports {
                let _ = write!(s, "{:>2}  {}  {:<45} {:>6} checks", r.id, if r.passed { "PASS" } else { "FAIL" }, r.name, r.checks);
                if let Some(c) = &r.counterexample {
                    let _ = write!(s, "  counterexample: {c}");
                }
                s.push('\n');
            }
            s.trim_end().to_string()
        }
        Format::Latex => return Err(unsupported(Format::Latex)),
    };
    Ok(Report { text, ok })
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let format = cli.format.unwrap_or(Format::Json);
    match &cli.cmd {
        Cmd::Words { n, k, s, r } => words(*n, *k, *s, *r, format),
        Cmd::Schubert { word, k, double } => schubert(word, *k, *double, format),
        Cmd::Nf { ring, poly } => nf(ring, poly, format),
        Cmd::Expand { n, k, u, v, poly } => {
            let uv = u.as_deref().zip(v.as_deref());
            expand(*n, *k, uv, poly.as_deref(), format)
        }
        Cmd::Hilbert { ring } => hilbert(ring, format),
        Cmd::Frobenius { ring } => frobenius(ring, format),
        Cmd::Fieldlab { cmd } => fieldlab(cmd, format),
        Cmd::Cells { word, k } => cells(word, *k, format),
        Cmd::Stability { word, k, m, stanley, max_degree } => stability(word, *k, *m, *stanley, *max_degree, format),
        Cmd::Selftest { quick } => selftest_cmd(*quick, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default_jobs = if matches!(cli.cmd, Cmd::Selftest { .. }) { 0 } else { 1 };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(default_jobs)).build_global() {
        eprintln!("warning: {e}");
    }
    match run(&cli) {
        Ok(report) => {
            println!("{}", report.text);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                fubini::Error::Param(_) | fubini::Error::Word(_) | fubini::Error::Perm(_) | fubini::Error::Parse(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
