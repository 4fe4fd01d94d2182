use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tropical::json::{
    fpoly_from_json, fpoly_to_json, pseries_from_json, pseries_list_from_json, spoly_from_json,
    spoly_to_json, sval_to_json, tpoly_from_json, tpoly_to_json,
};
use tropical::sample::Sampler;
use tropical::spoly::{FactorOutcome, Factorization, UniqueFactorization};
use tropical::system::{axiom_check, SystemTag, AXIOMS};
use tropical::text::{
    fmt_fpoly, fmt_gval, fmt_rat, fmt_spoly, fmt_sval, fmt_tpoly, parse_fpoly, parse_pseries,
    parse_pseries_list, parse_rat, parse_spoly, parse_sval, parse_tpoly,
};
use tropical::{mult, puiseux, spoly, tpoly};
use tropical::{Error, FPoly, PSeries, Rat, Result, SPoly, SVal, TPoly};

#[derive(Parser)]
#[command(
    name = "trop",
    version,
    about = "Exact tropical polynomial algebra: corners, signed roots, multiplicities, lifts"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Include derivations (saturation data, witnesses, tallies) in text output.
    #[arg(long, global = true)]
    verbose: bool,

    /// Worker count, accepted for interface stability; the driver is single-threaded.
    #[arg(long, global = true, default_value = "1", value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ring {
    Tmax,
    Smax,
    Bs,
    Puiseux,
}

impl Ring {
    fn tag(self) -> &'static str {
        match self {
            Ring::Tmax => "tmax",
            Ring::Smax => "smax",
            Ring::Bs => "bs",
            Ring::Puiseux => "puiseux",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Omega {
    Quadratic,
}

#[derive(Args)]
struct Input {
    /// Inline input text or JSON; `-` or omitted reads standard input.
    #[arg(allow_hyphen_values = true)]
    input: Option<String>,

    /// Read the input from this file instead.
    #[arg(long, conflicts_with = "input", value_name = "PATH")]
    file: Option<PathBuf>,

    /// Coefficient ring of the input.
    #[arg(long, value_enum)]
    ring: Option<Ring>,
}

impl Input {
    fn text(&self) -> Result<String> {
        if let Some(path) = &self.file {
            return std::fs::read_to_string(path)
                .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())));
        }
        match self.input.as_deref() {
            Some("-") | None => std::io::read_to_string(std::io::stdin())
                .map_err(|e| Error::parse(format!("cannot read standard input: {e}"))),
            Some(s) => Ok(s.to_string()),
        }
    }

    fn ring(&self, default: Ring, allowed: &[Ring]) -> Result<Ring> {
        let r = self.ring.unwrap_or(default);
        if allowed.contains(&r) {
            Ok(r)
        } else {
            let names: Vec<&str> = allowed.iter().map(|a| a.tag()).collect();
            Err(Error::domain(format!(
                "this command reads the {} ring, not {}",
                names.join(" or "),
                r.tag()
            )))
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Corners of a max-plus polynomial, with multiplicities.
    Corners(Input),
    /// Concave hull of the coefficient sequence.
    Hull(Input),
    /// Canonical form of a max-plus polynomial function.
    Canonical(Input),
    /// Factor a max-plus polynomial function into linear factors.
    Tfactor(Input),
    /// Factor a signed polynomial function, with a uniqueness verdict.
    Sfactor(Input),
    /// Signed root candidates and which of them are roots.
    Roots(Input),
    /// Multiplicity of a signed root by the sign-change rule.
    Mult {
        #[command(flatten)]
        input: Input,
        /// The root, in signed-value syntax.
        #[arg(long, allow_hyphen_values = true)]
        root: String,
    },
    /// Multiplicity of a signed root by the exhaustive recursive oracle.
    MultOracle {
        #[command(flatten)]
        input: Input,
        /// The root, in signed-value syntax.
        #[arg(long, allow_hyphen_values = true)]
        root: String,
    },
    /// Signed valuation of a series, or of a series polynomial coefficient-wise.
    Sv(Input),
    /// Lift a signed polynomial to a series polynomial with matching valuations.
    Lift {
        #[command(flatten)]
        input: Input,
        /// Lift parameter.
        #[arg(long, default_value = "2", value_name = "RAT", allow_hyphen_values = true)]
        u_start: String,
        /// Exponent weight family.
        #[arg(long, value_enum, default_value = "quadratic")]
        omega: Omega,
    },
    /// Search for a lift parameter making the signed root bounds tight.
    VerifyDescartes {
        #[command(flatten)]
        input: Input,
        /// Starting lift parameter; it is squared after each failed attempt.
        #[arg(long, default_value = "2", value_name = "RAT", allow_hyphen_values = true)]
        u_start: String,
        /// Maximum number of attempts.
        #[arg(long, default_value = "12")]
        u_cap: usize,
        /// Exponent weight family.
        #[arg(long, value_enum, default_value = "quadratic")]
        omega: Omega,
    },
    /// Compare root valuation counts of a product with its corner multiplicities.
    Kapranov(Input),
    /// Check the balance axioms of a coefficient system.
    Axioms {
        /// System to check: bs is exhaustive, smax adds seeded sampling.
        #[arg(long, default_value = "smax", value_name = "SYSTEM")]
        ring: String,
        /// Sample seed for the smax system.
        #[arg(long, default_value = "0")]
        seed: u64,
        /// Sample count for the smax system.
        #[arg(long, default_value = "10000")]
        samples: usize,
    },
}

struct Output {
    text: String,
    json: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(&cli) {
        Ok(out) => {
            match format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", out.json),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!(
                "{}",
                json!({"error": {"kind": e.kind(), "message": e.message()}})
            );
            ExitCode::from(match e.kind() {
                "parse" => 2,
                "domain" => 3,
                "capacity" => 4,
                _ => 1,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.cmd {
        Cmd::Corners(inp) => cmd_corners(inp),
        Cmd::Hull(inp) => cmd_hull(inp, false),
        Cmd::Canonical(inp) => cmd_hull(inp, true),
        Cmd::Tfactor(inp) => cmd_tfactor(inp),
        Cmd::Sfactor(inp) => cmd_sfactor(inp, cli.verbose),
        Cmd::Roots(inp) => cmd_roots(inp),
        Cmd::Mult { input, root } => cmd_mult(input, root, false, cli.verbose),
        Cmd::MultOracle { input, root } => cmd_mult(input, root, true, cli.verbose),
        Cmd::Sv(inp) => cmd_sv(inp),
        Cmd::Lift { input, u_start, .. } => cmd_lift(input, u_start),
        Cmd::VerifyDescartes {
            input,
            u_start,
            u_cap,
            ..
        } => cmd_verify_descartes(input, u_start, *u_cap),
        Cmd::Kapranov(inp) => cmd_kapranov(inp, cli.verbose),
        Cmd::Axioms {
            ring,
            seed,
            samples,
        } => cmd_axioms(ring, *seed, *samples),
    }
}

/// Left-aligns each column to its widest cell, two spaces between
/// columns, trailing whitespace trimmed.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut lines = Vec::with_capacity(rows.len());
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            if i + 1 == row.len() {
                line.push_str(cell);
            } else {
                line.push_str(&format!("{cell:<w$}", w = widths[i]));
            }
        }
        lines.push(line.trim_end().to_string());
    }
    lines.join("\n")
}

fn row(key: &str, value: impl Into<String>) -> Vec<String> {
    vec![key.to_string(), value.into()]
}

fn joined<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().collect::<Vec<_>>().join(" ")
}

/// Inputs whose first non-space byte opens an object or array are JSON;
/// everything else goes through the text grammar.
fn json_input(text: &str) -> Option<Result<Value>> {
    let t = text.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Some(
            serde_json::from_str(text)
                .map_err(|e| Error::parse(format!("invalid JSON input: {e}"))),
        )
    } else {
        None
    }
}

fn load_tpoly(text: &str) -> Result<TPoly> {
    match json_input(text) {
        Some(v) => tpoly_from_json(&v?),
        None => parse_tpoly(text),
    }
}

fn load_spoly(text: &str) -> Result<SPoly> {
    match json_input(text) {
        Some(v) => spoly_from_json(&v?),
        None => parse_spoly(text),
    }
}

fn load_signed(inp: &Input) -> Result<SPoly> {
    let ring = inp.ring(Ring::Smax, &[Ring::Smax, Ring::Bs])?;
    let p = load_spoly(&inp.text()?)?;
    if ring == Ring::Bs {
        mult::bs_digits(&p)?;
    }
    Ok(p)
}

fn require_bs_root(r: &SVal) -> Result<()> {
    if r.is_zero() || *r == SVal::one() || *r == SVal::minus_one() {
        Ok(())
    } else {
        Err(Error::domain("oracle roots must be zero or a signed unit"))
    }
}

fn cmd_corners(inp: &Input) -> Result<Output> {
    inp.ring(Ring::Tmax, &[Ring::Tmax])?;
    let p = load_tpoly(&inp.text()?)?;
    let cs = tpoly::corners(&p)?;
    let mut rows = vec![row("corner", "mult")];
    let mut arr = Vec::new();
    for (c, m) in &cs.items {
        rows.push(vec![fmt_gval(c), m.to_string()]);
        arr.push(json!({"corner": fmt_gval(c), "mult": m}));
    }
    Ok(Output {
        text: table(&rows),
        json: json!({"corners": arr}),
    })
}

fn cmd_hull(inp: &Input, canonical: bool) -> Result<Output> {
    inp.ring(Ring::Tmax, &[Ring::Tmax])?;
    let p = load_tpoly(&inp.text()?)?;
    let h = if canonical {
        tpoly::canonical_form(&p)?
    } else {
        tpoly::concave_hull(&p)
    };
    Ok(Output {
        text: fmt_tpoly(&h),
        json: tpoly_to_json(&h),
    })
}

fn cmd_tfactor(inp: &Input) -> Result<Output> {
    inp.ring(Ring::Tmax, &[Ring::Tmax])?;
    let p = load_tpoly(&inp.text()?)?;
    let (scale, roots) = tpoly::t_factor(&p)?;
    let names: Vec<String> = roots.iter().map(fmt_gval).collect();
    let json = json!({"scale": fmt_gval(&scale), "roots": names});
    let rows = vec![row("scale", fmt_gval(&scale)), row("roots", joined(names))];
    Ok(Output {
        text: table(&rows),
        json,
    })
}

fn factorization_json(f: &Factorization<Rat>) -> Value {
    json!({
        "lead": sval_to_json(&f.lead),
        "roots": f.roots.iter().map(sval_to_json).collect::<Vec<_>>(),
    })
}

fn cmd_sfactor(inp: &Input, verbose: bool) -> Result<Output> {
    let p = load_signed(inp)?;
    let outcome = spoly::factor_function(&p)?;
    let uniq = spoly::unique_factorization(&p)?;

    let mut obj = serde_json::Map::new();
    let mut rows = Vec::new();
    match &outcome {
        FactorOutcome::Factored(f) => {
            rows.push(row("outcome", "factored"));
            rows.push(row("lead", fmt_sval(&f.lead)));
            rows.push(row("roots", joined(f.roots.iter().map(fmt_sval))));
            obj.insert("outcome".into(), json!("factored"));
            obj.insert("lead".into(), sval_to_json(&f.lead));
            obj.insert(
                "roots".into(),
                Value::Array(f.roots.iter().map(sval_to_json).collect()),
            );
        }
        FactorOutcome::NotFactoredBySufficientCondition => {
            rows.push(row("outcome", "not factored by the sufficient condition"));
            obj.insert("outcome".into(), json!("not-factored"));
        }
    }
    match &uniq {
        UniqueFactorization::Unique(_) => {
            rows.push(row("unique", "unique"));
            obj.insert("unique".into(), json!("unique"));
        }
        UniqueFactorization::NonUnique(ws) => {
            rows.push(row("unique", format!("non-unique ({} witnesses)", ws.len())));
            obj.insert("unique".into(), json!("non-unique"));
            obj.insert(
                "witnesses".into(),
                Value::Array(ws.iter().map(factorization_json).collect()),
            );
            if verbose {
                for (i, w) in ws.iter().enumerate() {
                    rows.push(row(
                        &format!("witness {}", i + 1),
                        format!(
                            "lead {}; roots {}",
                            fmt_sval(&w.lead),
                            joined(w.roots.iter().map(fmt_sval))
                        ),
                    ));
                }
            }
        }
        UniqueFactorization::Unknown => {
            rows.push(row("unique", "unknown (enumeration capped)"));
            obj.insert("unique".into(), json!("unknown"));
        }
    }
    Ok(Output {
        text: table(&rows),
        json: Value::Object(obj),
    })
}

fn cmd_roots(inp: &Input) -> Result<Output> {
    let p = load_signed(inp)?;
    let pairs = spoly::signed_roots(&p)?;
    let mut rows = vec![row("candidate", "root")];
    let mut arr = Vec::new();
    for (v, is_root) in &pairs {
        rows.push(vec![
            fmt_sval(v),
            if *is_root { "yes" } else { "no" }.to_string(),
        ]);
        arr.push(json!({"value": sval_to_json(v), "root": is_root}));
    }
    Ok(Output {
        text: table(&rows),
        json: json!({"candidates": arr}),
    })
}

fn cmd_mult(inp: &Input, root: &str, oracle: bool, verbose: bool) -> Result<Output> {
    let ring = inp.ring(Ring::Smax, &[Ring::Smax, Ring::Bs])?;
    let p = load_spoly(&inp.text()?)?;
    let r = parse_sval(root)?;
    if ring == Ring::Bs {
        mult::bs_digits(&p)?;
        require_bs_root(&r)?;
    }
    let rep = if oracle {
        mult::mult_oracle_report(&p, &r)?
    } else {
        mult::mult(&p, &r)?
    };
    let text = if verbose {
        table(&[
            row("mult", rep.mult.to_string()),
            row("path", rep.path.tag()),
            row("saturation", joined(rep.sat_set.iter().map(|k| k.to_string()))),
            row("sat poly", fmt_spoly(&rep.sat_poly)),
        ])
    } else {
        rep.mult.to_string()
    };
    Ok(Output {
        text,
        json: json!({
            "root": sval_to_json(&rep.root),
            "mult": rep.mult,
            "path": rep.path.tag(),
            "saturation": rep.sat_set,
            "sat_poly": spoly_to_json(&rep.sat_poly),
        }),
    })
}

fn cmd_sv(inp: &Input) -> Result<Output> {
    inp.ring(Ring::Puiseux, &[Ring::Puiseux])?;
    let text = inp.text()?;
    enum Loaded {
        Series(PSeries),
        Poly(FPoly),
    }
    let loaded = match json_input(&text) {
        Some(v) => {
            let v = v?;
            if v.is_array() {
                Loaded::Series(pseries_from_json(&v)?)
            } else {
                Loaded::Poly(fpoly_from_json(&v)?)
            }
        }
        // A series polynomial always mentions the indeterminate Y; a
        // plain series never does.
        None if text.contains('Y') => Loaded::Poly(parse_fpoly(&text)?),
        None => Loaded::Series(parse_pseries(&text)?),
    };
    Ok(match loaded {
        Loaded::Series(f) => {
            let s = puiseux::sv(&f);
            Output {
                text: fmt_sval(&s),
                json: json!({"sv": sval_to_json(&s)}),
            }
        }
        Loaded::Poly(p) => {
            let sp = puiseux::sv_poly(&p);
            Output {
                text: fmt_spoly(&sp),
                json: json!({"sv_poly": spoly_to_json(&sp)}),
            }
        }
    })
}

fn cmd_lift(inp: &Input, u_start: &str) -> Result<Output> {
    let p = load_signed(inp)?;
    let u = parse_rat(u_start)?;
    let deg = p
        .deg()
        .ok_or_else(|| Error::domain("the zero polynomial has no lift"))?;
    let omega = puiseux::omega_quadratic(deg);
    let lift = puiseux::viro_lift(&p, &u, &omega)?;
    Ok(Output {
        text: fmt_fpoly(&lift),
        json: fpoly_to_json(&lift),
    })
}

fn cmd_verify_descartes(inp: &Input, u_start: &str, u_cap: usize) -> Result<Output> {
    let p = load_signed(inp)?;
    let u = parse_rat(u_start)?;
    let rep = puiseux::verify_descartes(&p, &u, u_cap)?;

    let witness = match &rep.witness_u {
        Some(u) => fmt_rat(u),
        None => "none".to_string(),
    };
    let summary = table(&[
        row("success", rep.success.to_string()),
        row("witness u", witness.clone()),
        row("attempts", rep.attempts.to_string()),
        row("zero mult", rep.zero_mult.to_string()),
    ]);
    let mut arr = Vec::new();
    let mut rows = vec![vec![
        "corner".to_string(),
        "mult+".to_string(),
        "mult-".to_string(),
        "count+".to_string(),
        "count-".to_string(),
        "squarefree".to_string(),
        "tight".to_string(),
    ]];
    for c in &rep.corners {
        rows.push(vec![
            fmt_rat(&c.corner),
            c.mult_pos.to_string(),
            c.mult_neg.to_string(),
            c.count_pos.to_string(),
            c.count_neg.to_string(),
            if c.squarefree { "yes" } else { "no" }.to_string(),
            if c.tight() { "yes" } else { "no" }.to_string(),
        ]);
        arr.push(json!({
            "corner": fmt_rat(&c.corner),
            "mult_pos": c.mult_pos,
            "mult_neg": c.mult_neg,
            "count_pos": c.count_pos,
            "count_neg": c.count_neg,
            "squarefree": c.squarefree,
            "tight": c.tight(),
        }));
    }
    let text = if rep.corners.is_empty() {
        summary
    } else {
        format!("{summary}\n\n{}", table(&rows))
    };
    Ok(Output {
        text,
        json: json!({
            "success": rep.success,
            "witness_u": rep.witness_u.as_ref().map(fmt_rat),
            "attempts": rep.attempts,
            "zero_mult": rep.zero_mult,
            "corners": arr,
        }),
    })
}

fn cmd_kapranov(inp: &Input, verbose: bool) -> Result<Output> {
    inp.ring(Ring::Puiseux, &[Ring::Puiseux])?;
    let text = inp.text()?;
    let roots = match json_input(&text) {
        Some(v) => pseries_list_from_json(&v?)?,
        None => parse_pseries_list(&text)?,
    };
    let equal = puiseux::kapranov_check(&roots)?;
    let tally = puiseux::count_roots_by_sv(&roots);
    let prod = puiseux::expand_linear_product(&roots);
    let cs = tpoly::corners(&puiseux::val_poly(&prod))?;

    let tally_txt = joined(
        tally
            .iter()
            .map(|(v, n)| format!("{}:{n}", fmt_sval(v))),
    );
    let corner_txt = joined(cs.items.iter().map(|(c, m)| format!("{}:{m}", fmt_gval(c))));
    let text = if verbose {
        table(&[
            row("equal", equal.to_string()),
            row("valuations", tally_txt),
            row("corners", corner_txt),
        ])
    } else {
        equal.to_string()
    };
    Ok(Output {
        text,
        json: json!({
            "equal": equal,
            "valuations": tally
                .iter()
                .map(|(v, n)| json!({"value": sval_to_json(v), "count": n}))
                .collect::<Vec<_>>(),
            "corners": cs
                .items
                .iter()
                .map(|(c, m)| json!({"corner": fmt_gval(c), "mult": m}))
                .collect::<Vec<_>>(),
        }),
    })
}

fn cmd_axioms(ring: &str, seed: u64, samples: usize) -> Result<Output> {
    let sys = SystemTag::from_tag(ring)?;
    let (name, mode, triples) = match sys {
        SystemTag::Bs => ("bs", "exhaustive".to_string(), Vec::new()),
        SystemTag::Smax => (
            "smax",
            format!("core + {samples} samples, seed {seed}"),
            Sampler::new(seed).triples(samples),
        ),
    };
    let mut rows = vec![row("system", name), row("mode", mode)];
    let mut results = Vec::new();
    for ax in AXIOMS {
        let pass = axiom_check(sys, ax, &triples);
        rows.push(row(ax.tag(), if pass { "pass" } else { "fail" }));
        results.push(json!({"axiom": ax.tag(), "pass": pass}));
    }
    let mut obj = serde_json::Map::new();
    obj.insert("system".into(), json!(name));
    match sys {
        SystemTag::Bs => {
            obj.insert("mode".into(), json!("exhaustive"));
        }
        SystemTag::Smax => {
            obj.insert("mode".into(), json!("sampled"));
            obj.insert("seed".into(), json!(seed));
            obj.insert("samples".into(), json!(samples));
        }
    }
    obj.insert("results".into(), Value::Array(results));
    Ok(Output {
        text: table(&rows),
        json: Value::Object(obj),
    })
}
