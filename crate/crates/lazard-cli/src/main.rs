use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lazard::algebra::{series_terms, DomainElem, DomainRing, Integers, Partition, SeriesTerm};
use lazard::chow::{
    additive_chern_number, cha_closed_class, chern_number, chern_numbers, chx_closed_class, euler_number, fundamental_class, fundamental_class_l, is_prime, specialize_class, Theory, VarietySpec,
};
use lazard::fgl::{additive_fgl, cha_closed_form, cha_fgl, chx_closed_form, chx_fgl, chx_mult_closed_form, universal_fgl, universal_fgl_mod_p, FormalGroupLaw};
use lazard::fixedpoint::{catalog, verify, Builtin, MuTwoAction, Theorem, VerifyOptions, LMOD2_MAX_DIM};
use lazard::report::{CheckRecord, Report, Status};
use lazard::symmfunc::EPoly;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lazard", version, about = "Formal group laws, Chern numbers and fixed-point checks for involutions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand a formal group law and optionally a formal multiple.
    Fgl(FglArgs),
    /// Euler number, Chern numbers and fundamental class of a variety.
    Chern(ChernArgs),
    /// Run fixed-point checks on an action.
    Verify(VerifyArgs),
    /// List builtin actions and variety constructors.
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Law {
    Universal,
    Chx,
    Cha,
    Additive,
    UniversalModP,
}

#[derive(Args)]
struct FglArgs {
    #[arg(long, value_enum)]
    law: Law,
    /// Keep terms of total degree below this.
    #[arg(long, env = "COBORDISM_ORDER", default_value_t = 12)]
    order: u32,
    /// Also expand `[a](x)`.
    #[arg(long, allow_hyphen_values = true)]
    mult: Option<i64>,
    #[arg(long)]
    p: Option<u64>,
}

/// Where a variety or action comes from.
#[derive(Args)]
struct Source {
    /// JSON file, or `-` for stdin. Used when no other source is given.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Builtin action family: linear_pn, factorwise_p1n, swap_square.
    #[arg(long)]
    builtin: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    a: Option<u32>,
    /// Inline variety spec JSON (the factor `Y` for swap_square).
    #[arg(long)]
    spec: Option<String>,
}

#[derive(Args)]
struct ChernArgs {
    #[command(flatten)]
    src: Source,
    /// Partition such as `2,1`; prints that Chern number.
    #[arg(long)]
    alpha: Option<String>,
    /// Also specialize the class: l, lp, chx or cha.
    #[arg(long)]
    theory: Option<String>,
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "all", value_parser = parse_theorem)]
    theorem: Option<Theorem>,
    /// Every theorem; over the whole catalog unless a source is given.
    #[arg(long, conflicts_with = "theorem")]
    all: bool,
    #[command(flatten)]
    src: Source,
    #[arg(long, env = "COBORDISM_ORDER")]
    order: Option<u32>,
    #[arg(long)]
    max_m: Option<u32>,
    /// Restrict `ks` to this partition.
    #[arg(long)]
    alpha: Option<String>,
    /// Restrict `ks` to this polynomial in the Chern classes, as
    /// `coeff:partition` terms joined by `;`, e.g. `1:1,1;3:2`.
    #[arg(long)]
    poly: Option<String>,
    /// Primes for `decomposable`, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
    primes: Vec<u64>,
    #[arg(long, default_value_t = LMOD2_MAX_DIM)]
    lmod2_max_dim: u32,
}

#[derive(Args)]
struct CatalogArgs {
    #[arg(long)]
    json: bool,
    /// Show the parameters of one family.
    #[arg(long)]
    builtin: Option<String>,
}

fn parse_theorem(s: &str) -> std::result::Result<Theorem, String> {
    Theorem::parse(s).map_err(|e| e.to_string())
}

fn parse_partition(s: &str) -> Result<Partition> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Partition::empty());
    }
    let parts = s.split(',').map(|p| p.trim().parse::<u32>().with_context(|| format!("bad partition {:?}", s))).collect::<Result<Vec<_>>>()?;
    Partition::try_from_parts(parts).ok_or_else(|| anyhow!("partition parts must be positive: {:?}", s))
}

fn parse_poly(s: &str) -> Result<EPoly> {
    let mut f = EPoly::new();
    for term in s.split(';').filter(|t| !t.trim().is_empty()) {
        let (c, mu) = match term.split_once(':') {
            Some((c, mu)) => (c.trim().parse::<BigInt>().with_context(|| format!("bad coefficient in {:?}", term))?, mu),
            None => (BigInt::from(1), term),
        };
        *f.entry(parse_partition(mu)?).or_default() += c;
    }
    f.retain(|_, c| c != &BigInt::from(0));
    Ok(f)
}

fn read_input(path: Option<&PathBuf>) -> Result<String> {
    let mut s = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => s = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        _ => {
            std::io::stdin().read_to_string(&mut s)?;
        }
    }
    Ok(s)
}

impl Source {
    fn given(&self) -> bool {
        self.input.is_some() || self.builtin.is_some() || self.spec.is_some()
    }

    fn builtin(&self) -> Result<Option<Builtin>> {
        let Some(name) = &self.builtin else { return Ok(None) };
        let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| anyhow!("{} needs --{}", name, flag));
        let b = match name.as_str() {
            "linear_pn" => Builtin::LinearPn { n: need(self.n, "n")?, a: need(self.a, "a")? },
            "factorwise_p1n" => Builtin::FactorwiseP1n { n: need(self.n, "n")? },
            "swap_square" => {
                let spec = match (&self.spec, self.n) {
                    (Some(s), _) => VarietySpec::from_json(s)?,
                    (None, Some(n)) => VarietySpec::projective(n),
                    (None, None) => bail!("swap_square needs --spec or --n"),
                };
                Builtin::SwapSquare { spec }
            }
            other => bail!("unknown builtin {:?}; see `lazard catalog`", other),
        };
        Ok(Some(b))
    }

    fn action(&self) -> Result<MuTwoAction> {
        if let Some(b) = self.builtin()? {
            return Ok(b.action()?);
        }
        Ok(MuTwoAction::from_json(&read_input(self.input.as_ref())?)?)
    }

    /// A variety: an inline spec, the ambient of a builtin action, or JSON
    /// holding either a variety spec or an action.
    fn variety(&self) -> Result<VarietySpec> {
        if self.builtin.is_some() {
            return Ok(self.action()?.ambient);
        }
        if let Some(s) = &self.spec {
            return Ok(VarietySpec::from_json(s)?);
        }
        let text = read_input(self.input.as_ref())?;
        match VarietySpec::from_json(&text) {
            Ok(v) => Ok(v),
            Err(_) => Ok(MuTwoAction::from_json(&text).context("input is neither a variety spec nor an action")?.ambient),
        }
    }
}

fn law_json<R: DomainRing>(f: &FormalGroupLaw<R>, mult: Option<i64>) -> Value {
    let mut v = json!({ "domain": f.base().domain(), "F": series_terms(&f.ring, &f.law) });
    if let Some(a) = mult {
        let u = f.univariate();
        v["mult"] = json!({ "a": a, "series": series_terms(&u, &f.formal_mult(a)) });
    }
    v
}

fn cmd_fgl(args: &FglArgs) -> Result<Report> {
    if !(2..=40).contains(&args.order) {
        bail!("order must lie in 2..=40, got {}", args.order);
    }
    let name = match args.law {
        Law::Universal => "universal",
        Law::Chx => "chx",
        Law::Cha => "cha",
        Law::Additive => "additive",
        Law::UniversalModP => "universal-mod-p",
    };
    let mut data = match args.law {
        Law::Universal => law_json(&universal_fgl(args.order)?, args.mult),
        Law::Chx => law_json(&chx_fgl(args.order)?, args.mult),
        Law::Cha => law_json(&cha_fgl(args.order)?, args.mult),
        Law::Additive => law_json(&additive_fgl(Integers, args.order), args.mult),
        Law::UniversalModP => {
            let p = args.p.ok_or_else(|| anyhow!("universal-mod-p needs --p"))?;
            if !is_prime(p) {
                bail!("--p must be prime, got {}", p);
            }
            law_json(&universal_fgl_mod_p(args.order, p)?, args.mult)
        }
    };
    data["law"] = json!(name);
    data["order"] = json!(args.order);
    let mut report = Report::new(format!("fgl --law {} --order {}", name, args.order));
    match args.law {
        Law::Chx => {
            let f = chx_fgl(args.order)?;
            let ok = f.law == chx_closed_form(args.order).law;
            report.push(CheckRecord::flag("fgl.closed-form", "b_i ↦ (−t)^i gives (x + y − 2txy)/(1 − t²xy)", ok, format!("order {}", args.order)));
            if let Some(a) = args.mult {
                let ok = f.formal_mult(a) == chx_mult_closed_form(a, args.order);
                report.push(CheckRecord::flag("fgl.mult-closed-form", "[a](x) = ax/(1 + (a − 1)tx) for b_i ↦ (−t)^i", ok, format!("a = {}", a)));
            }
        }
        Law::Cha => {
            let ok = cha_fgl(args.order)?.law == cha_closed_form(args.order).law;
            report.push(CheckRecord::flag("fgl.closed-form", "b_i ↦ εt^i gives x + y + ε Σ_{i≥1} ((x+y)^{i+1} − x^{i+1} − y^{i+1}) t^i", ok, format!("order {}", args.order)));
        }
        Law::UniversalModP => {
            let p = args.p.expect("checked above");
            if args.mult == Some(p as i64) {
                let f = universal_fgl_mod_p(args.order, p)?;
                report.push(CheckRecord::flag("fgl.p-series", "[p](x) = 0 over 𝔽_p[b]", f.formal_mult(p as i64).is_empty(), format!("p = {}", p)));
            }
        }
        _ => {}
    }
    report.data = Some(data);
    Ok(report)
}

fn big(n: &BigInt) -> Value {
    json!(n.to_string())
}

fn cmd_chern(args: &ChernArgs) -> Result<Report> {
    let spec = args.src.variety()?;
    let v = spec.build()?;
    let class = fundamental_class_l(&v);
    let mut data = json!({
        "spec": spec,
        "components": v.components.len(),
        "dim": v.pure_dim(),
        "euler": big(&euler_number(&spec)?),
        "class": specialize_class(Theory::L, &class),
    });
    if v.pure_dim().is_some() {
        data["additive_chern_number"] = big(&additive_chern_number(&spec)?);
        let mut table: std::collections::BTreeMap<Partition, BigInt> = Default::default();
        for m in &v.components {
            for (alpha, c) in chern_numbers(m) {
                *table.entry(alpha).or_default() += c;
            }
        }
        data["chern_numbers"] = table.iter().map(|(a, c)| json!({ "alpha": a, "value": big(c) })).collect();
    }
    if let Some(a) = &args.alpha {
        let alpha = parse_partition(a)?;
        data["requested"] = json!({ "alpha": alpha, "value": big(&chern_number(&spec, &alpha)?) });
    }
    if let Some(t) = &args.theory {
        let theory = Theory::parse(t, args.p)?;
        data["theory"] = json!({ "name": theory.to_string(), "class": fundamental_class(&spec, theory)? });
    }
    let mut report = Report::new(format!("chern {}", spec.to_json()));
    report.push(CheckRecord::equal("chern.chx", "specializing ⟦X⟧ along b_i ↦ (−t)^i gives χ(X)·t^n", specialize_class(Theory::Chx, &class), chx_closed_class(&v)));
    report.push(CheckRecord::equal("chern.cha", "specializing ⟦X⟧ along b_i ↦ εt^i gives 1 + ε·c_(n)(X)·t^n", specialize_class(Theory::Cha, &class), cha_closed_class(&v)));
    report.data = Some(data);
    Ok(report)
}

fn options(args: &VerifyArgs) -> Result<VerifyOptions> {
    Ok(VerifyOptions {
        order: args.order,
        max_m: args.max_m,
        alpha: args.alpha.as_deref().map(parse_partition).transpose()?,
        poly: args.poly.as_deref().map(parse_poly).transpose()?,
        lmod2_max_dim: args.lmod2_max_dim,
        primes: args.primes.clone(),
    })
}

/// For `--all`, errors and out-of-range dimensions become records.
fn run_one(a: &lazard::fixedpoint::BuiltAction, t: Theorem, opts: &VerifyOptions) -> Vec<CheckRecord> {
    if t == Theorem::Lmod2 && a.dim > opts.lmod2_max_dim {
        return vec![CheckRecord::not_met("lmod2", "L/2 relations", format!("dim X = {} exceeds the bound {}", a.dim, opts.lmod2_max_dim))];
    }
    match verify(a, t, opts) {
        Ok(rs) => rs,
        Err(e) => vec![CheckRecord::flag(t.to_string(), "verifier ran to completion", false, format!("error: {}", e))],
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<Report> {
    let opts = options(args)?;
    if let Some(p) = opts.primes.iter().find(|&&p| !is_prime(p)) {
        bail!("--primes must be primes, got {}", p);
    }
    if !args.all {
        let t = args.theorem.expect("clap enforces --theorem");
        let action = args.src.action()?;
        let built = action.build()?;
        let mut report = Report::new(format!("verify --theorem {}", t));
        report.extend(verify(&built, t, &opts)?);
        return Ok(report);
    }
    let actions: Vec<(String, MuTwoAction)> = if args.src.given() {
        vec![(String::new(), args.src.action()?)]
    } else {
        catalog().into_iter().map(|b| Ok((b.name(), b.action()?))).collect::<Result<_>>()?
    };
    let built = actions.iter().map(|(name, a)| Ok((name, a.build()?))).collect::<Result<Vec<_>>>()?;
    let jobs: Vec<_> = built.iter().flat_map(|(name, a)| Theorem::ALL.into_iter().map(move |t| (*name, a, t))).collect();
    // collect() keeps job order, so the merge is deterministic
    let results: Vec<Vec<CheckRecord>> = jobs
        .par_iter()
        .map(|(name, a, t)| {
            run_one(a, *t, &opts)
                .into_iter()
                .map(|mut r| {
                    if !name.is_empty() {
                        r.id = format!("{}/{}", name, r.id);
                    }
                    r
                })
                .collect()
        })
        .collect();
    let mut report = Report::new("verify --all");
    report.extend(results.into_iter().flatten());
    Ok(report)
}

struct Family {
    name: &'static str,
    params: &'static str,
    doc: &'static str,
}

const FAMILIES: [Family; 3] = [
    Family { name: "linear_pn", params: "--n N --a A, 0 ≤ A < N", doc: "ℙᴺ with the first A+1 coordinates negated; fixed locus ℙᴬ ⊔ ℙ^{N−A−1} with normal bundles (N−A)·O(1) and (A+1)·O(1)" },
    Family { name: "factorwise_p1n", params: "--n N, 1 ≤ N ≤ 12", doc: "(ℙ¹)ᴺ with z ↦ −z on each factor; 2ᴺ isolated fixed points" },
    Family {
        name: "swap_square",
        params: "--spec Y (variety JSON) or --n N for Y = ℙᴺ",
        doc: "Y × Y with the factors swapped; fixed locus the diagonal with normal bundle T_Y. Needs T_Y ⊕ 1 to split into honest lines, which holds for products of projective spaces of dimension 1 and for single ℙᵐ",
    },
];

const CONSTRUCTORS: [(&str, &str); 4] = [
    ("multiproj", r#"{"type":"multiproj","dims":[n1,...]} for ℙ^{n1} × ⋯; [] is the point"#),
    ("projbundle", r#"{"type":"projbundle","base":SPEC,"lines":[[c,...],...]} for ℙ(⊕ L_i), each line a coefficient vector over the base generators"#),
    ("product", r#"{"type":"product","factors":[SPEC,...]}"#),
    ("disjoint", r#"{"type":"disjoint","components":[SPEC,...]}"#),
];

fn cmd_catalog(args: &CatalogArgs) -> Result<String> {
    let families: Vec<&Family> = match &args.builtin {
        Some(name) => vec![FAMILIES.iter().find(|f| f.name == name).ok_or_else(|| anyhow!("unknown builtin {:?}", name))?],
        None => FAMILIES.iter().collect(),
    };
    if args.json {
        let mut v = json!({
            "builtins": families.iter().map(|f| json!({ "name": f.name, "params": f.params, "doc": f.doc })).collect::<Vec<_>>(),
        });
        if args.builtin.is_none() {
            v["varieties"] = CONSTRUCTORS.iter().map(|(n, d)| json!({ "name": n, "schema": d })).collect();
            v["verify_all"] = catalog().iter().map(|b| json!({ "name": b.name(), "action": b })).collect();
        }
        return Ok(serde_json::to_string(&v)? + "\n");
    }
    let mut out = String::from("builtin actions\n");
    for f in &families {
        out += &format!("  {:<16} {}\n  {:<16} {}\n", f.name, f.params, "", f.doc);
    }
    if args.builtin.is_none() {
        out += "variety constructors\n";
        for (n, d) in CONSTRUCTORS {
            out += &format!("  {:<16} {}\n", n, d);
        }
        out += &format!("verify --all runs {} catalog actions\n", catalog().len());
    }
    Ok(out)
}

fn pretty_series(terms: &[SeriesTerm], vars: &[&str]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = terms
        .iter()
        .map(|t| {
            let mono: String = t.exps.iter().zip(vars).filter(|(e, _)| **e > 0).map(|(e, v)| if *e == 1 { v.to_string() } else { format!("{}^{}", v, e) }).collect();
            let c = t.coeff.pretty();
            match (c.as_str(), mono.is_empty()) {
                (_, true) => c,
                ("1", false) => mono,
                _ if t.coeff.terms.len() == 1 => format!("{}·{}", c, mono),
                _ => format!("({})·{}", c, mono),
            }
        })
        .collect();
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        match p.strip_prefix('-') {
            Some(rest) => out += &format!(" − {}", rest),
            None => out += &format!(" + {}", p),
        }
    }
    out
}

fn pretty_data(report: &Report) -> String {
    let Some(d) = &report.data else { return String::new() };
    let mut out = String::new();
    if let Some(f) = d.get("F") {
        let terms: Vec<SeriesTerm> = serde_json::from_value(f.clone()).unwrap_or_default();
        out += &format!("F(x, y) = {}\n", pretty_series(&terms, &["x", "y"]));
        if let Some(m) = d.get("mult") {
            let terms: Vec<SeriesTerm> = serde_json::from_value(m["series"].clone()).unwrap_or_default();
            out += &format!("[{}](x) = {}\n", m["a"], pretty_series(&terms, &["x"]));
        }
        return out;
    }
    for key in ["dim", "euler", "additive_chern_number"] {
        if let Some(v) = d.get(key) {
            out += &format!("{} = {}\n", key, v.as_str().map(String::from).unwrap_or_else(|| v.to_string()));
        }
    }
    if let Some(c) = d.get("class").and_then(|c| serde_json::from_value::<DomainElem>(c.clone()).ok()) {
        out += &format!("class = {}\n", c.pretty());
    }
    if let Some(rows) = d.get("chern_numbers").and_then(Value::as_array) {
        for r in rows {
            out += &format!("c_{} = {}\n", r["alpha"], r["value"].as_str().unwrap_or(""));
        }
    }
    if let Some(r) = d.get("requested") {
        out += &format!("requested c_{} = {}\n", r["alpha"], r["value"].as_str().unwrap_or(""));
    }
    if let Some(t) = d.get("theory") {
        let c = serde_json::from_value::<DomainElem>(t["class"].clone()).map(|c| c.pretty()).unwrap_or_default();
        out += &format!("class in {} = {}\n", t["name"].as_str().unwrap_or(""), c);
    }
    out
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let report = match &cli.cmd {
        Cmd::Fgl(a) => cmd_fgl(a)?,
        Cmd::Chern(a) => cmd_chern(a)?,
        Cmd::Verify(a) => cmd_verify(a)?,
        Cmd::Catalog(a) => {
            emit(cli, &cmd_catalog(a)?)?;
            return Ok(ExitCode::SUCCESS);
        }
    };
    let text = if cli.pretty { pretty_data(&report) + &report.pretty() } else { report.to_json() + "\n" };
    emit(cli, &text)?;
    let failing = report.records.iter().any(|r| r.status == Status::Fail);
    Ok(if failing { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}
