use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use syzygy::afprw::{
    co_wahl, decomposable_probe, euler_finisher, euler_identity, folk_verify, koszul_module_dim, wahl,
    FolkOptions, FolkReport, KoszulModuleInstance, REPORT_SCHEMA,
};
use syzygy::graded::{
    ci_module, default_ci_quadrics, load_module, omega_module, polynomial_ring_module, pushforward_module,
    rnc_module, save_module, tangent_module, GradedModule, Poly, TangentMethod,
};
use syzygy::koszul::{betti_table, check_np, koszul_group, NpReport};
use syzygy::multilinear::{hermite_verify, wedge2_decompose};
use syzygy::{Error, Field, FieldSpec, PrimeField};

use crate::fields::{probe_field, with_field};
use crate::{Cli, Command, ObjectArg};

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Computation(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Computation(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(m) | Failure::Computation(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidPrime(_) | Error::Precondition(_) | Error::Io(_) | Error::Json(_)
            | Error::NotRegularSequence { .. } => {
                Failure::Config(e.to_string())
            }
            other => Failure::Computation(other.to_string()),
        }
    }
}

/// What a command produced: one rendering per output format, and whether
/// every verification it ran succeeded.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub csv: Option<String>,
    pub verified: bool,
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Betti {
            object,
            genus,
            pmax,
            qmax,
            quadrics,
        } => betti(cli, *object, *genus, *pmax, *qmax, quadrics),
        Command::Folk { genus, no_np } => folk(cli, *genus, !no_np),
        Command::Hermite { amax } => hermite(*amax),
        Command::Wahl { imax } => wahl_certificates(cli, *imax),
        Command::Koszulmodule {
            instance,
            co_wahl,
            qmax,
            probe_trials,
        } => koszul_module(cli, instance.as_deref(), *co_wahl, *qmax, *probe_trials),
        Command::Euler { nmax, verify_upto } => euler(cli, *nmax, *verify_upto),
        Command::Mesh { genus, samples, output } => crate::mesh::run(*genus, *samples, output.as_deref()),
    }
}

fn check_budget(cli: &Cli, genus: usize) -> Result<(), Failure> {
    if cli.unsafe_budget {
        return Ok(());
    }
    let (limit, what) = if cli.field.any_rational() {
        (7, "rationals")
    } else {
        (10, "prime fields")
    };
    if genus > limit {
        return Err(Failure::Config(format!(
            "genus {genus} exceeds the budget of {limit} over {what}; pass --unsafe-budget to proceed"
        )));
    }
    Ok(())
}

fn header(cli: &Cli, command: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), json!(REPORT_SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("seed".into(), json!(cli.seed));
    m
}

fn object_name(o: ObjectArg) -> &'static str {
    match o {
        ObjectArg::Rnc => "rnc",
        ObjectArg::Tangent => "tangent",
        ObjectArg::Pushforward => "pushforward",
        ObjectArg::Omega => "omega",
        ObjectArg::Ci => "ci",
        ObjectArg::PolynomialRing => "polynomial-ring",
    }
}

fn build_module<F: Field>(
    f: &F,
    object: ObjectArg,
    genus: usize,
    qmax: usize,
    quadrics: &[Poly],
) -> syzygy::Result<GradedModule<F>> {
    Ok(match object {
        ObjectArg::Rnc => rnc_module(f, genus, qmax),
        ObjectArg::Tangent => tangent_module(f, genus, qmax, TangentMethod::Image)?,
        ObjectArg::Pushforward => pushforward_module(f, genus, qmax),
        ObjectArg::Omega => omega_module(f, genus, qmax),
        ObjectArg::Ci => ci_module(f, quadrics, qmax)?,
        ObjectArg::PolynomialRing => polynomial_ring_module(f, genus + 1, qmax),
    })
}

/// Loads the module from the cache when present, otherwise builds and stores it.
fn cached_module<F: Field>(
    f: &F,
    cache: Option<&Path>,
    object: ObjectArg,
    genus: usize,
    qmax: usize,
    quadrics: &[Poly],
) -> syzygy::Result<GradedModule<F>> {
    let Some(root) = cache else {
        return build_module(f, object, genus, qmax, quadrics);
    };
    let mut key = format!("{}-g{genus}-q{qmax}-{}", object_name(object), f.spec()).replace(':', "-");
    if object == ObjectArg::Ci {
        let joined: Vec<String> = quadrics.iter().map(|q| q.to_string()).collect();
        key = format!("ci-q{qmax}-{}-{}", f.spec(), joined.join("_"))
            .replace(':', "-")
            .replace([' ', '*', '^'], "");
    }
    let dir = root.join(key);
    if dir.join("module.json").exists() {
        return load_module(f, &dir);
    }
    let m = build_module(f, object, genus, qmax, quadrics)?;
    save_module(&m, &dir)?;
    Ok(m)
}

fn betti(
    cli: &Cli,
    object: ObjectArg,
    genus: usize,
    pmax: Option<usize>,
    qmax: usize,
    quadrics: &[String],
) -> Result<Outcome, Failure> {
    let min_genus = match object {
        ObjectArg::Tangent | ObjectArg::Pushforward | ObjectArg::Omega => 3,
        _ => 2,
    };
    if object != ObjectArg::Ci && genus < min_genus {
        return Err(Failure::Config(format!("{} needs genus >= {min_genus}", object_name(object))));
    }
    if matches!(object, ObjectArg::Tangent | ObjectArg::Pushforward | ObjectArg::Omega) {
        check_budget(cli, genus)?;
    }
    if object != ObjectArg::Ci && !quadrics.is_empty() {
        return Err(Failure::Config("--quadric only applies to --object ci".into()));
    }
    let quadrics: Vec<Poly> = if quadrics.is_empty() {
        default_ci_quadrics()
    } else {
        quadrics.iter().map(|q| q.parse::<Poly>()).collect::<Result<_, _>>()?
    };
    let num_forms = if object == ObjectArg::Ci { 4 } else { genus + 1 };
    let pmax = pmax.unwrap_or(num_forms);
    let mut tables = Vec::new();
    for spec in cli.field.specs(cli.seed) {
        let table = with_field!(spec, |f| {
            let m = cached_module(f, cli.cache_dir.as_deref(), object, genus, qmax + 1, &quadrics)?;
            betti_table(&m, pmax, qmax)?
        });
        tables.push(if cli.timings { table } else { table.without_timings() });
    }
    let agree = tables.windows(2).all(|w| w[0].same_grid(&w[1]));
    let table = &tables[0];
    let np: Vec<NpReport> = if qmax >= 2 {
        (1..=pmax).map(|p| check_np(table, p)).collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    let mut text = String::new();
    writeln!(text, "object: {}  genus: {}  field: {}", table.object, table.genus, table.field).ok();
    text.push_str(&table.to_text());
    for r in &np {
        let status = if r.holds { "holds" } else { "fails" };
        match r.first_failure {
            Some((i, q, v)) => writeln!(text, "N_{}: {status} (b[{i}][{q}] = {v})", r.p),
            None => writeln!(text, "N_{}: {status}", r.p),
        }
        .ok();
    }
    let mut json = header(cli, "betti");
    json.insert("table".into(), serde_json::to_value(table).expect("table"));
    json.insert("np".into(), serde_json::to_value(&np).expect("np"));
    if cli.field.is_consensus() {
        let specs: Vec<String> = tables.iter().map(|t| t.field.to_string()).collect();
        writeln!(text, "consensus over {}: {}", specs.join(", "), if agree { "agree" } else { "DISAGREE" }).ok();
        json.insert("consensus".into(), json!({ "fields": specs, "agree": agree }));
    }
    Ok(Outcome {
        text,
        json: Value::Object(json),
        csv: Some(table.to_csv()),
        verified: agree,
    })
}

fn folk(cli: &Cli, genus: usize, np_check: bool) -> Result<Outcome, Failure> {
    if genus < 3 {
        return Err(Failure::Config("folk needs genus >= 3".into()));
    }
    check_budget(cli, genus)?;
    let opts = FolkOptions {
        np_check,
        timings: cli.timings,
        seed: cli.field.is_consensus().then_some(cli.seed),
    };
    let mut reports: Vec<FolkReport> = Vec::new();
    for spec in cli.field.specs(cli.seed) {
        reports.push(with_field!(spec, |f| folk_verify(f, genus, opts)?));
    }
    let agree = reports.windows(2).all(|w| w[0].same_content(&w[1]));
    let pass = agree && reports.iter().all(|r| r.pass);
    let mut text = String::new();
    for r in &reports {
        writeln!(text, "genus {} over {}", r.genus, r.field).ok();
        writeln!(text, "   i  direct  ker gamma  ker gamma'  agree").ok();
        for e in &r.entries {
            writeln!(
                text,
                "{:>4}  {:>6}  {:>9}  {:>10}  {}",
                e.i,
                e.direct,
                e.ker_gamma,
                e.ker_gamma_prime,
                if e.agree { "yes" } else { "NO" }
            )
            .ok();
        }
        writeln!(
            text,
            "K_({},1) = 0: {}",
            genus / 2,
            if r.required_vanishing { "yes" } else { "NO" }
        )
        .ok();
        if let Some(np) = &r.np {
            writeln!(text, "N_{}: {}", np.p, if np.holds { "holds" } else { "fails" }).ok();
        }
    }
    if cli.field.is_consensus() {
        writeln!(text, "consensus over {} primes: {}", reports.len(), if agree { "agree" } else { "DISAGREE" }).ok();
    }
    writeln!(text, "verdict: {}", if pass { "pass" } else { "FAIL" }).ok();
    let json = if reports.len() == 1 {
        serde_json::to_value(&reports[0]).expect("report")
    } else {
        let mut m = header(cli, "folk");
        m.insert("agree".into(), json!(agree));
        m.insert("pass".into(), json!(pass));
        m.insert("runs".into(), serde_json::to_value(&reports).expect("reports"));
        Value::Object(m)
    };
    Ok(Outcome {
        text,
        json,
        csv: None,
        verified: pass,
    })
}

fn hermite(amax: usize) -> Result<Outcome, Failure> {
    if amax == 0 {
        return Err(Failure::Config("--amax must be positive".into()));
    }
    let mut reports = Vec::new();
    for b in 0..=amax {
        for a in 1..=b + 1 {
            reports.push(hermite_verify(a, b));
        }
    }
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    let mut text = format!(
        "Hermite reciprocity L^a S^b U = S^(b+1-a) S^a U for 1 <= a <= b+1 <= {}: {} cases, {} failed\n",
        amax + 1,
        reports.len(),
        failed.len()
    );
    for r in &failed {
        writeln!(text, "  a={} b={}: first difference {:?}", r.a, r.b, r.first_difference).ok();
    }
    let mut csv = String::from("a,b,dim,passed\n");
    for r in &reports {
        writeln!(csv, "{},{},{},{}", r.a, r.b, r.dim_wedge, r.passed()).ok();
    }
    Ok(Outcome {
        text,
        json: json!({ "schema": REPORT_SCHEMA, "command": "hermite", "cases": reports, "failed": failed.len() }),
        csv: Some(csv),
        verified: failed.is_empty(),
    })
}

fn wahl_certificates(cli: &Cli, imax: usize) -> Result<Outcome, Failure> {
    let spec = single_field(cli)?;
    let mut rows = Vec::new();
    let mut text = String::from("   i  wahl rank  wahl defect  co-wahl defect  c  top multiplicity\n");
    let mut ok = true;
    for i in 1..=imax {
        let row = with_field!(spec, |f| {
            let w = wahl(f, i)?;
            let rank = syzygy::elim::rank(&w.matrix).rank;
            let (cw, c) = co_wahl(f, i)?;
            let top = wedge2_decompose(i + 1).iter().filter(|&&h| h == 2 * i).count();
            json!({
                "i": i,
                "wahl_rank": rank,
                "wahl_defect": w.defect,
                "co_wahl_defect": cw.defect,
                "c": f.format(&c),
                "top_multiplicity": top,
            })
        });
        let good = row["wahl_rank"] == json!(2 * i + 1) && row["top_multiplicity"] == json!(1);
        ok &= good;
        let num = |k: &str| row[k].as_u64().unwrap_or(0);
        writeln!(
            text,
            "{:>4}  {:>9}  {:>11}  {:>14}  {}  {}",
            i,
            num("wahl_rank"),
            num("wahl_defect"),
            num("co_wahl_defect"),
            row["c"].as_str().unwrap_or("?"),
            num("top_multiplicity")
        )
        .ok();
        rows.push(row);
    }
    let mut json = header(cli, "wahl");
    json.insert("field".into(), json!(spec.to_string()));
    json.insert("rows".into(), Value::Array(rows));
    Ok(Outcome {
        text,
        json: Value::Object(json),
        csv: None,
        verified: ok,
    })
}

fn single_field(cli: &Cli) -> Result<FieldSpec, Failure> {
    match cli.field.specs(cli.seed).as_slice() {
        [one] => Ok(*one),
        _ => Err(Failure::Config("this command runs over a single field".into())),
    }
}

fn koszul_module(
    cli: &Cli,
    instance: Option<&Path>,
    co_wahl_i: Option<usize>,
    qmax: Option<usize>,
    trials: usize,
) -> Result<Outcome, Failure> {
    let spec = single_field(cli)?;
    let load = |pf: &PrimeField| -> syzygy::Result<(KoszulModuleInstance<PrimeField>, Option<usize>)> {
        match (instance, co_wahl_i) {
            (Some(path), _) => KoszulModuleInstance::load(pf, path),
            (None, Some(i)) => Ok((KoszulModuleInstance::co_wahl_image(pf, i)?, None)),
            (None, None) => unreachable!("checked below"),
        }
    };
    if instance.is_none() && co_wahl_i.is_none() {
        return Err(Failure::Config("give --instance <file> or --co-wahl <i>".into()));
    }
    let (rows, n, dim_a) = with_field!(spec, |f| {
        let (inst, file_qmax) = match (instance, co_wahl_i) {
            (Some(path), _) => KoszulModuleInstance::load(f, path)?,
            (None, Some(i)) => (KoszulModuleInstance::co_wahl_image(f, i)?, None),
            (None, None) => unreachable!("checked above"),
        };
        let top = qmax.or(file_qmax).unwrap_or(inst.n.saturating_sub(2));
        let rows = (0..=top).map(|q| koszul_module_dim(&inst, q)).collect::<Result<Vec<_>, _>>()?;
        (rows, inst.n, inst.dim_a())
    });
    let pf = probe_field(spec, cli.seed);
    let (pinst, _) = load(&pf)?;
    let probe = decomposable_probe(&pinst, trials, cli.seed);
    let surjective = rows.iter().all(|r| r.right_surjective);
    let mut text = format!("dim V = {n}, dim A = {dim_a}, field {spec}\n   q  dim W_q  right map onto\n");
    for r in &rows {
        writeln!(text, "{:>4}  {:>7}  {}", r.q, r.dim, if r.right_surjective { "yes" } else { "NO" }).ok();
    }
    writeln!(text, "vanishing expected for q >= {}", n.saturating_sub(3)).ok();
    writeln!(text, "probe over F_{}: {}", probe.prime, probe.summary()).ok();
    let mut json = header(cli, "koszulmodule");
    json.insert("field".into(), json!(spec.to_string()));
    json.insert("n".into(), json!(n));
    json.insert("dim_a".into(), json!(dim_a));
    json.insert("modules".into(), serde_json::to_value(&rows).expect("rows"));
    json.insert("probe".into(), serde_json::to_value(&probe).expect("probe"));
    let mut csv = String::from("q,dim,right_surjective\n");
    for r in &rows {
        writeln!(csv, "{},{},{}", r.q, r.dim, r.right_surjective).ok();
    }
    Ok(Outcome {
        text,
        json: Value::Object(json),
        csv: Some(csv),
        verified: surjective,
    })
}

fn euler(cli: &Cli, nmax: usize, verify_upto: usize) -> Result<Outcome, Failure> {
    if nmax < 3 {
        return Err(Failure::Config("--nmax must be at least 3".into()));
    }
    let spec = single_field(cli)?;
    let mut text = String::from("   n   g  identity\n");
    let mut csv = String::from("n,g,identity\n");
    let mut identities = Vec::new();
    let mut ok = true;
    for n in 3..=nmax {
        let v = euler_identity(n);
        ok &= v == 0;
        writeln!(text, "{:>4}  {:>2}  {v}", n, 2 * n - 3).ok();
        writeln!(csv, "{n},{},{v}", 2 * n - 3).ok();
        identities.push(json!({ "n": n, "genus": 2 * n - 3, "value": v.to_string() }));
    }
    let mut finishers = Vec::new();
    for n in 4..=verify_upto.min(nmax) {
        let g = 2 * n - 3;
        let (report, direct) = with_field!(spec, |f| {
            let r = euler_finisher(f, g)?;
            let t = tangent_module(f, g, 2, TangentMethod::Image)?;
            (r, koszul_group(&t, n - 2, 1)?)
        });
        let agrees = report.conclusion == Some(direct as i128);
        ok &= report.passed() && agrees;
        writeln!(
            text,
            "g = {g}: dims {:?}, W_{} = {}, conclusion dim K_({},1) = {}, direct = {direct}",
            report.dims,
            report.q,
            report.koszul_module_dim,
            n - 2,
            report.conclusion.map_or("n/a".to_string(), |c| c.to_string())
        )
        .ok();
        finishers.push(json!({ "report": report, "direct": direct, "agree": agrees }));
    }
    let mut json = header(cli, "euler");
    json.insert("field".into(), json!(spec.to_string()));
    json.insert("identities".into(), Value::Array(identities));
    json.insert("finishers".into(), Value::Array(finishers));
    Ok(Outcome {
        text,
        json: Value::Object(json),
        csv: Some(csv),
        verified: ok,
    })
}
