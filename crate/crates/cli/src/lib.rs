//! The `gpd` command line: parsing, dispatch and report emission.

pub mod corpus;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use gpdcoh::coefficients::{axiom_report, cochains, graded_cochains, GradedRepresentation, Representation};
use gpdcoh::groupoid::{is_weak_equivalence, FiniteGroupoid, GroupoidHom};
use gpdcoh::io::{read_document, Document, Library};
use gpdcoh::morita::{certify_doubles, decalage_report, morita_check, CoefficientMode, FDouble, MoritaOptions};
use gpdcoh::simplicial::nerve;
use gpdcoh::Error;
use serde::Serialize;
use serde_json::{json, Value};

pub const DEFAULT_LEVEL_BUDGET: usize = 200_000;
pub const BUDGET_ENV: &str = "GPD_LEVEL_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Validate every document.
    Check,
    /// Trusted cohomology table of each groupoid.
    Cohomology,
    /// Concentration of décalage shifts and the standard augmentations.
    Decalage,
    /// Double complex of each homomorphism with its certificates.
    Doubles,
    /// Invariance of cohomology along each homomorphism.
    Morita,
    /// Simplicial and cosimplicial identity scans.
    Axioms,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "gpd", version, about = "Cohomology of finite groupoids over the rationals")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Input documents; references resolve across all of them.
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Top simplicial level built.
    #[arg(long, default_value_t = 5)]
    pub max_degree: usize,
    /// Representation or graded representation to use as coefficients.
    #[arg(long)]
    pub coefficients: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest level size allowed; GPD_LEVEL_BUDGET overrides.
    #[arg(long, default_value_t = DEFAULT_LEVEL_BUDGET)]
    pub level_budget: usize,
}

/// Exit status contract.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAILED: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const BUDGET: i32 = 3;
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn error(e: &Error) -> Self {
        let code = match e {
            Error::Overflow { .. } => exit::BUDGET,
            _ => exit::INPUT,
        };
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code,
        }
    }
}

/// Parses arguments (the first is the program name) and executes.
pub fn run<I, T>(args: I, env_budget: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, env_budget.as_deref()),
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::PASS };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            }
        }
    }
}

fn file_label(p: &Path) -> String {
    p.file_name()
        .map_or_else(|| p.display().to_string(), |n| n.to_string_lossy().into_owned())
}

/// Documents read from the inputs, split by origin.
struct Inputs {
    lib: Library,
    /// (kind, id) of documents from the positional files.
    primary: Ids,
    /// Coefficient ids from `--coefficients`.
    coefficients: Ids,
}

type Ids = Vec<(&'static str, String)>;

fn ids(docs: &[Document]) -> Ids {
    docs.iter().map(|d| (d.kind(), d.id().to_string())).collect()
}

fn read_all(cli: &Cli) -> Result<(Vec<Document>, Ids, Ids), Error> {
    let mut docs = Vec::new();
    for p in &cli.files {
        docs.extend(read_document(p)?.flattened());
    }
    let primary = ids(&docs);
    let mut coefficients = Vec::new();
    if let Some(p) = &cli.coefficients {
        let extra = read_document(p)?.flattened();
        coefficients = ids(&extra)
            .into_iter()
            .filter(|(k, _)| *k == "representation" || *k == "graded-representation")
            .collect();
        if coefficients.is_empty() {
            return Err(Error::Parse(format!(
                "{}: no representation in coefficients file",
                p.display()
            )));
        }
        for d in extra {
            if !primary.contains(&(d.kind(), d.id().to_string())) {
                docs.push(d);
            }
        }
    }
    Ok((docs, primary, coefficients))
}

fn load(cli: &Cli) -> Result<Inputs, Error> {
    let (docs, primary, coefficients) = read_all(cli)?;
    let lib = Library::from_documents(docs)?;
    Ok(Inputs {
        lib,
        primary,
        coefficients,
    })
}

fn budget(cli: &Cli, env: Option<&str>) -> Result<usize, Error> {
    match env {
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{BUDGET_ENV} is not a count: {v:?}"))),
        None => Ok(cli.level_budget),
    }
}

#[derive(Clone)]
struct Coefficients {
    id: String,
    graded: GradedRepresentation,
    single: Option<Representation>,
}

impl Inputs {
    fn groupoids(&self) -> Vec<Arc<FiniteGroupoid>> {
        self.primary
            .iter()
            .filter(|(k, _)| *k == "groupoid")
            .map(|(_, id)| self.lib.groupoids[id].clone())
            .collect()
    }

    fn homomorphisms(&self) -> Vec<&GroupoidHom> {
        self.primary
            .iter()
            .filter(|(k, _)| *k == "homomorphism")
            .map(|(_, id)| &self.lib.homomorphisms[id])
            .collect()
    }

    fn coefficient_list(&self) -> Vec<Coefficients> {
        self.coefficients
            .iter()
            .map(|(k, id)| {
                if *k == "representation" {
                    let r = self.lib.representations[id].clone();
                    Coefficients {
                        id: id.clone(),
                        graded: GradedRepresentation::single(r.clone()),
                        single: Some(r),
                    }
                } else {
                    Coefficients {
                        id: id.clone(),
                        graded: self.lib.graded[id].clone(),
                        single: None,
                    }
                }
            })
            .collect()
    }

    /// Coefficients on `g`: the given ones living there, or the trivial
    /// representation when none were given at all.
    fn coefficients_on(&self, g: &Arc<FiniteGroupoid>) -> Vec<Coefficients> {
        if self.coefficients.is_empty() {
            let r = Representation::trivial(g);
            return vec![Coefficients {
                id: "trivial".into(),
                graded: GradedRepresentation::single(r.clone()),
                single: Some(r),
            }];
        }
        self.coefficient_list()
            .into_iter()
            .filter(|c| c.graded.groupoid().name() == g.name())
            .collect()
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    budget: usize,
}

struct Body {
    trusted_through: i64,
    results: Vec<Value>,
    pass: bool,
    tsv: Option<String>,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn require_degree(cli: &Cli, least: usize) -> Result<(), Error> {
    if cli.max_degree < least {
        return Err(Error::Parse(format!(
            "{:?} needs --max-degree of at least {least}",
            cli.command
        )));
    }
    Ok(())
}

fn unmatched(what: &str) -> Error {
    Error::DanglingReference(format!("no coefficients live on any {what} of the inputs"))
}

/// Runs a parsed command line. `env_budget` is the value of
/// `GPD_LEVEL_BUDGET`, if set.
pub fn execute(cli: &Cli, env_budget: Option<&str>) -> Outcome {
    let start = Instant::now();
    let budget = match budget(cli, env_budget) {
        Ok(b) => b,
        Err(e) => return Outcome::error(&e),
    };
    if cli.format == Format::Tsv && cli.command != Command::Cohomology {
        return Outcome::error(&Error::Parse("tsv output is only available for cohomology".into()));
    }
    let ctx = Ctx { cli, budget };
    let body = match cli.command {
        Command::Check => check(&ctx),
        c => load(cli).and_then(|inputs| match c {
            Command::Cohomology => cohomology(&ctx, &inputs),
            Command::Decalage => decalage(&ctx, &inputs),
            Command::Doubles => doubles(&ctx, &inputs),
            Command::Morita => morita(&ctx, &inputs),
            Command::Axioms => axioms(&ctx, &inputs),
            Command::Check => unreachable!(),
        }),
    };
    let body = match body {
        Ok(b) => b,
        Err(e) => return Outcome::error(&e),
    };
    let code = if body.pass { exit::PASS } else { exit::FAILED };
    if let Some(tsv) = body.tsv {
        return Outcome {
            stdout: tsv,
            stderr: String::new(),
            code,
        };
    }
    let report = json!({
        "command": cli.command,
        "inputs": cli.files.iter().map(|p| file_label(p)).collect::<Vec<_>>(),
        "configuration": {
            "max_degree": cli.max_degree,
            "trusted_through": body.trusted_through,
            "level_budget": budget,
            "coefficients": cli.coefficients.as_deref().map(file_label),
        },
        "results": body.results,
        "pass": body.pass,
        "timing": { "elapsed_ms": start.elapsed().as_millis() as u64 },
    });
    let mut stdout = serde_json::to_string_pretty(&report).expect("reports serialize");
    stdout.push('\n');
    Outcome {
        stdout,
        stderr: String::new(),
        code,
    }
}

fn check(ctx: &Ctx) -> Result<Body, Error> {
    let (docs, ..) = read_all(ctx.cli)?;
    let (lib, records) = Library::load(docs);
    let mut results = Vec::new();
    let mut pass = true;
    for r in &records {
        let mut entry = json!({ "kind": r.kind, "id": r.id });
        match &r.error {
            None => {
                entry["status"] = json!("valid");
                if r.kind == "groupoid" {
                    let g = &lib.groupoids[&r.id];
                    entry["objects"] = json!(g.num_objects());
                    entry["arrows"] = json!(g.num_arrows());
                    entry["orbits"] = json!(g.num_orbits());
                }
                if r.kind == "homomorphism" {
                    let w = is_weak_equivalence(&lib.homomorphisms[&r.id]);
                    entry["weak_equivalence"] = json!(w.pass());
                }
            }
            Some(e) => {
                let law = matches!(
                    e,
                    Error::InvalidGroupoid { .. }
                        | Error::InvalidHomomorphism { .. }
                        | Error::InvalidRepresentation { .. }
                );
                if !law {
                    return Err(e.clone());
                }
                pass = false;
                entry["status"] = json!("invalid");
                entry["witness"] = json!(e.to_string());
            }
        }
        results.push(entry);
    }
    Ok(Body {
        trusted_through: -1,
        results,
        pass,
        tsv: None,
    })
}

fn cohomology(ctx: &Ctx, inputs: &Inputs) -> Result<Body, Error> {
    let n = ctx.cli.max_degree;
    let trusted = n as i64 - 2;
    let mut jobs: Vec<(Arc<FiniteGroupoid>, Coefficients)> = Vec::new();
    if inputs.coefficients.is_empty() {
        for g in inputs.groupoids() {
            jobs.extend(inputs.coefficients_on(&g).into_iter().map(|c| (g.clone(), c)));
        }
    } else {
        for c in inputs.coefficient_list() {
            jobs.push((c.graded.groupoid().clone(), c));
        }
    }
    let mut results = Vec::new();
    let mut tsv = String::from("groupoid\tcoefficients\tdegree\tdimension\tstatus\n");
    for (g, c) in jobs {
        let nv = nerve(&g, n, ctx.budget)?;
        let complex = match &c.single {
            Some(r) => cochains(nv.simplicial(), r).complex(),
            None => graded_cochains(nv.simplicial(), &c.graded)?.total()?,
        };
        let table = complex.cohomology(None, n);
        for (k, d) in table.dims.iter().enumerate() {
            let status = if k as i64 <= trusted { "trusted" } else { "provisional" };
            tsv.push_str(&format!("{}\t{}\t{k}\t{d}\t{status}\n", g.name(), c.id));
        }
        results.push(json!({
            "groupoid": g.name(),
            "coefficients": c.id,
            "trusted_through": trusted,
            "trusted": table.dims.iter().take((trusted + 1).max(0) as usize).collect::<Vec<_>>(),
            "provisional": table.dims.iter().skip((trusted + 1).max(0) as usize).collect::<Vec<_>>(),
        }));
    }
    Ok(Body {
        trusted_through: trusted,
        results,
        pass: true,
        tsv: (ctx.cli.format == Format::Tsv).then_some(tsv),
    })
}

fn decalage(ctx: &Ctx, inputs: &Inputs) -> Result<Body, Error> {
    require_degree(ctx.cli, 3)?;
    let n = ctx.cli.max_degree;
    let ks: Vec<usize> = [1, 2].into_iter().filter(|k| k + 2 <= n).collect();
    let mut results = Vec::new();
    let mut pass = true;
    for g in inputs.groupoids() {
        let nv = nerve(&g, n, ctx.budget)?;
        for c in inputs.coefficients_on(&g) {
            let rep = c
                .single
                .as_ref()
                .ok_or_else(|| Error::Parse(format!("decalage takes ungraded coefficients, {} is graded", c.id)))?;
            let r = decalage_report(&nv, rep, &ks)?;
            pass &= r.pass();
            let mut v = to_value(&r);
            v["coefficients"] = json!(c.id);
            v["pass"] = json!(r.pass());
            results.push(v);
        }
    }
    if results.is_empty() && !inputs.coefficients.is_empty() {
        return Err(unmatched("groupoid"));
    }
    Ok(Body {
        trusted_through: n as i64 - 2,
        results,
        pass,
        tsv: None,
    })
}

fn hom_jobs(inputs: &Inputs) -> Result<Vec<(&GroupoidHom, Coefficients)>, Error> {
    let mut jobs = Vec::new();
    for f in inputs.homomorphisms() {
        jobs.extend(inputs.coefficients_on(f.target()).into_iter().map(|c| (f, c)));
    }
    if jobs.is_empty() && !inputs.coefficients.is_empty() {
        return Err(unmatched("homomorphism target"));
    }
    Ok(jobs)
}

fn doubles(ctx: &Ctx, inputs: &Inputs) -> Result<Body, Error> {
    require_degree(ctx.cli, 3)?;
    let opts = MoritaOptions {
        max_degree: ctx.cli.max_degree,
        budget: ctx.budget,
    };
    let mut results = Vec::new();
    let mut pass = true;
    for (f, c) in hom_jobs(inputs)? {
        let r = certify_doubles(f, &c.graded, opts)?;
        pass &= r.certificates.pass();
        let mut v = to_value(&r);
        v["coefficients"] = json!(c.id);
        v["pass"] = json!(r.certificates.pass());
        results.push(v);
    }
    Ok(Body {
        trusted_through: ctx.cli.max_degree as i64 - 3,
        results,
        pass,
        tsv: None,
    })
}

fn morita(ctx: &Ctx, inputs: &Inputs) -> Result<Body, Error> {
    require_degree(ctx.cli, 3)?;
    let opts = MoritaOptions {
        max_degree: ctx.cli.max_degree,
        budget: ctx.budget,
    };
    let mut results = Vec::new();
    let mut pass = true;
    for (f, c) in hom_jobs(inputs)? {
        let mode = match (&c.single, inputs.coefficients.is_empty()) {
            (_, true) => CoefficientMode::Functions,
            (Some(_), false) => CoefficientMode::Representation,
            (None, false) => CoefficientMode::Graded,
        };
        let v = morita_check(f, &c.graded, mode, opts)?;
        pass &= v.pass;
        let mut value = to_value(&v);
        value["coefficients"] = json!(c.id);
        results.push(value);
    }
    Ok(Body {
        trusted_through: ctx.cli.max_degree as i64 - 3,
        results,
        pass,
        tsv: None,
    })
}

fn axioms(ctx: &Ctx, inputs: &Inputs) -> Result<Body, Error> {
    require_degree(ctx.cli, 1)?;
    let n = ctx.cli.max_degree;
    let mut results = Vec::new();
    let mut pass = true;
    let mut seen = BTreeSet::new();
    for g in inputs.groupoids() {
        let nv = nerve(&g, n, ctx.budget)?;
        for c in inputs.coefficients_on(&g) {
            let r = axiom_report(&nv, &c.graded)?;
            pass &= r.pass;
            let mut v = to_value(&r);
            v["coefficients"] = json!(c.id);
            results.push(v);
            seen.insert(g.name().to_string());
        }
    }
    for f in inputs.homomorphisms() {
        let fd = FDouble::build(f, n, ctx.budget)?;
        let r = fd.simplicial().check_identities(&|a, b, x| fd.describe(a, b, x));
        pass &= r.pass();
        results.push(json!({
            "homomorphism": f.name(),
            "checks": [{
                "name": "F-double simplicial identities",
                "checked": r.checked,
                "violations": r.violations.len(),
                "witness": r.violations.first().map(|v| format!("{} at level {} {:?}: {}", v.identity, v.level, v.indices, v.witness)),
            }],
            "pass": r.pass(),
        }));
    }
    if seen.is_empty() && !inputs.coefficients.is_empty() {
        return Err(unmatched("groupoid"));
    }
    Ok(Body {
        trusted_through: n as i64 - 2,
        results,
        pass,
        tsv: None,
    })
}
