use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use whisker::oracle::{
    betti_bruteforce, colon_generators, depth_bruteforce, facets_bruteforce, is_shelling,
    is_vertex_decomposable_bruteforce, verify_linear_quotients,
};
use whisker::polar::{face_to_monomial, phi, polar_vertices};
use whisker::resolution::l_ideal;
use whisker::{
    admissible_order, betti_formula, build_context, check_regular, colon_set, delta_facets,
    depth_profile, h_vector, max_lcm_degree, polarize, power_generators, q_invariant,
    random_artinian, shelling_order, vd_certificate, verify_certificate, ArtinianContext, Face,
    Monomial, MonomialIdeal,
};

const SCHEMA_VERSION: u32 = 1;
/// `verify` skips the quadratic power-order check above this many generators.
const VERIFY_MAX_POWER_GENERATORS: usize = 2_000;

#[derive(Parser)]
#[command(
    name = "whisker",
    version,
    about = "Exact combinatorics of zero-dimensional monomial ideals"
)]
struct Cli {
    /// Emit JSON instead of tab-separated text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of variables, bounds, length and h-vector.
    Info { input: PathBuf },
    /// Facets of the complex, one per standard monomial.
    Facets { input: PathBuf },
    /// Generators of the dual ideal in linear-quotient order with their colon sets.
    Lgens { input: PathBuf },
    /// Betti numbers of the dual ideal.
    Betti {
        input: PathBuf,
        /// Also compute Betti numbers by simplicial homology.
        #[arg(long)]
        oracle: bool,
    },
    /// Depth of the powers of the dual ideal.
    Depth {
        input: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        kmax: u32,
    },
    /// Vertex-decomposition certificate.
    Vd { input: PathBuf },
    /// Shelling order of the facets.
    Shelling { input: PathBuf },
    /// Cross-check every closed form against the brute-force oracles.
    Verify {
        input: PathBuf,
        /// Largest power checked.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        kmax: u32,
    },
    /// Print a seeded random zero-dimensional ideal.
    Random {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        bmax: u32,
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Library(whisker::Error),
    Input(String),
    /// Output is complete but reports a failed check.
    Checks(String),
}

impl From<whisker::Error> for Failure {
    fn from(e: whisker::Error) -> Self {
        Failure::Library(e)
    }
}

type Outcome = Result<String, Failure>;

struct Report {
    out: String,
    failed: bool,
}

fn main() -> ExitCode {
    // usage errors are validation failures; 2 is reserved for scale refusals
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.out);
            if report.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Checks(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_scale() { 2 } else { 1 })
        }
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let ok = |out: String| Report { out, failed: false };
    match &cli.command {
        Command::Info { input } => info(&load(input)?, cli.json).map(ok),
        Command::Facets { input } => facets(&load(input)?, cli.json).map(ok),
        Command::Lgens { input } => lgens(&load(input)?, cli.json).map(ok),
        Command::Betti { input, oracle } => betti(&load(input)?, *oracle, cli.json),
        Command::Depth { input, kmax } => depth(&load(input)?, *kmax as usize, cli.json).map(ok),
        Command::Vd { input } => vd(&load(input)?, cli.json),
        Command::Shelling { input } => shelling(&load(input)?, cli.json),
        Command::Verify { input, kmax } => verify(&load(input)?, *kmax as usize, cli.json),
        Command::Random {
            n,
            bmax,
            extra,
            seed,
        } => {
            let ideal = random_artinian(*n as usize, *bmax, *extra, *seed);
            Ok(ok(if cli.json {
                envelope("random", json!({ "ideal": ideal, "seed": seed }))
            } else {
                ideal.to_text()
            }))
        }
    }
}

fn load(path: &Path) -> Result<ArtinianContext, Failure> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let ideal = MonomialIdeal::parse(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(build_context(ideal)?)
}

fn envelope(command: &str, mut data: Value) -> String {
    let obj = data.as_object_mut().expect("reports are JSON objects");
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("command".into(), json!(command));
    format!(
        "{}\n",
        serde_json::to_string_pretty(&data).expect("JSON values serialize")
    )
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn info(ctx: &ArtinianContext, as_json: bool) -> Outcome {
    let h = h_vector(ctx);
    if as_json {
        return Ok(envelope(
            "info",
            json!({
                "ideal": ctx.ideal(),
                "n": ctx.n(),
                "bounds": ctx.bounds(),
                "length": ctx.length(),
                "h_vector": h,
            }),
        ));
    }
    Ok(format!(
        "ideal\t{}\nn\t{}\nbounds\t{}\nlength\t{}\nh_vector\t{}\n",
        ctx.ideal(),
        ctx.n(),
        join(ctx.bounds()),
        ctx.length(),
        join(&h)
    ))
}

/// `(u, 𝒮 ∖ φ(u))` in standard-monomial order.
fn facet_rows(ctx: &ArtinianContext) -> Result<Vec<(Monomial, Face)>, Failure> {
    let all = Face::new(polar_vertices(ctx));
    ctx.standard()
        .iter()
        .map(|u| Ok((u.clone(), all.difference(&phi(ctx, u)?))))
        .collect()
}

fn facets(ctx: &ArtinianContext, as_json: bool) -> Outcome {
    let rows = facet_rows(ctx)?;
    if as_json {
        let rows: Vec<Value> = rows
            .iter()
            .map(|(u, f)| json!({ "source": u, "facet": f }))
            .collect();
        return Ok(envelope(
            "facets",
            json!({ "count": rows.len(), "facets": rows }),
        ));
    }
    let mut out = String::from("source\tfacet\n");
    for (u, f) in &rows {
        let _ = writeln!(out, "{u}\t{f}");
    }
    Ok(out)
}

fn lgens(ctx: &ArtinianContext, as_json: bool) -> Outcome {
    let order = admissible_order(ctx);
    if as_json {
        let rows: Vec<Value> = order
            .iter()
            .map(|g| json!({ "rank": g.rank, "source": g.source, "face": g.face, "set": colon_set(g) }))
            .collect();
        return Ok(envelope("lgens", json!({ "generators": rows })));
    }
    let mut out = String::from("rank\tsource\tface\tset\n");
    for g in &order {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}",
            g.rank,
            g.source,
            g.face,
            colon_set(g)
        );
    }
    Ok(out)
}

fn betti(ctx: &ArtinianContext, oracle: bool, as_json: bool) -> Result<Report, Failure> {
    let summary = betti_formula(ctx)?;
    let formula = &summary.betti.0;
    let brute = if oracle {
        Some(betti_bruteforce(&l_ideal(ctx), ctx.polar_var_count())?.quotient_totals())
    } else {
        None
    };
    let agree = brute.as_ref().is_none_or(|b| b == formula);
    let out = if as_json {
        envelope(
            "betti",
            json!({
                "betti": formula,
                "oracle": brute,
                "agree": brute.as_ref().map(|_| agree),
                "projdim": summary.projdim,
                "depth": summary.depth,
            }),
        )
    } else {
        let mut out = String::from(if oracle {
            "i\tbeta\toracle\n"
        } else {
            "i\tbeta\n"
        });
        let rows = brute
            .as_ref()
            .map_or(formula.len(), |b| b.len().max(formula.len()));
        for i in 0..rows {
            let f = formula.get(i).copied().unwrap_or(0);
            match &brute {
                Some(b) => {
                    let _ = writeln!(out, "{i}\t{f}\t{}", b.get(i).copied().unwrap_or(0));
                }
                None => {
                    let _ = writeln!(out, "{i}\t{f}");
                }
            }
        }
        let _ = writeln!(
            out,
            "projdim\t{}\ndepth\t{}",
            summary.projdim, summary.depth
        );
        if oracle {
            let _ = writeln!(out, "agree\t{}", if agree { "yes" } else { "no" });
        }
        out
    };
    Ok(Report {
        out,
        failed: !agree,
    })
}

fn depth(ctx: &ArtinianContext, kmax: usize, as_json: bool) -> Outcome {
    let profile = depth_profile(ctx, kmax)?;
    if as_json {
        return Ok(envelope(
            "depth",
            json!({ "kmax": kmax, "profile": profile }),
        ));
    }
    let mut out = String::from("k\tq\tdepth\tstabilized\n");
    for row in &profile.rows {
        let flag = if row.stabilized { "Y" } else { "N" };
        let _ = writeln!(out, "{}\t{}\t{}\t{flag}", row.k, row.q, row.depth);
    }
    let _ = writeln!(
        out,
        "stabilization_k\t{}",
        profile
            .stabilization_k
            .map_or("-".to_string(), |k| k.to_string())
    );
    Ok(out)
}

fn vd(ctx: &ArtinianContext, as_json: bool) -> Result<Report, Failure> {
    let cert = vd_certificate(ctx)?;
    let verdict = verify_certificate(&delta_facets(ctx), &cert);
    let out = if as_json {
        envelope(
            "vd",
            json!({ "certificate": cert, "verified": verdict.is_ok(), "failure": verdict.as_ref().err() }),
        )
    } else {
        let mut out = cert.to_text();
        match &verdict {
            Ok(()) => out.push_str("verified\tyes\n"),
            Err(f) => {
                let _ = writeln!(out, "verified\tno\t{}\t{}", f.path, f.reason);
            }
        }
        out
    };
    Ok(Report {
        out,
        failed: verdict.is_err(),
    })
}

fn shelling(ctx: &ArtinianContext, as_json: bool) -> Result<Report, Failure> {
    let order = shelling_order(ctx);
    let ok = is_shelling(&order);
    let out = if as_json {
        envelope("shelling", json!({ "order": order, "is_shelling": ok }))
    } else {
        let mut out = String::from("position\tfacet\n");
        for (pos, f) in order.iter().enumerate() {
            let _ = writeln!(out, "{}\t{f}", pos + 1);
        }
        let _ = writeln!(out, "is_shelling\t{}", if ok { "yes" } else { "no" });
        out
    };
    Ok(Report { out, failed: !ok })
}

enum Status {
    Pass,
    Fail,
    Skip,
}

struct Check {
    name: String,
    status: Status,
    detail: String,
}

/// Turns a check body into a row: scale refusals become skips, any other
/// error a failure.
fn check(
    name: impl Into<String>,
    body: impl FnOnce() -> whisker::Result<Result<String, String>>,
) -> Check {
    let (status, detail) = match body() {
        Ok(Ok(detail)) => (Status::Pass, detail),
        Ok(Err(detail)) => (Status::Fail, detail),
        Err(e) if e.is_scale() => (Status::Skip, e.to_string()),
        Err(e) => (Status::Fail, e.to_string()),
    };
    Check {
        name: name.into(),
        status,
        detail,
    }
}

fn verdict(
    ok: bool,
    pass: impl Into<String>,
    fail: impl FnOnce() -> String,
) -> Result<String, String> {
    if ok {
        Ok(pass.into())
    } else {
        Err(fail())
    }
}

fn battery(ctx: &ArtinianContext, kmax: usize) -> Vec<Check> {
    let mut checks = vec![
        check("facets", || {
            let delta = delta_facets(ctx);
            let brute = facets_bruteforce(&polarize(ctx.ideal()), &polar_vertices(ctx))?;
            Ok(verdict(
                delta.facets().len() == ctx.length() && brute == delta.facets(),
                format!("{} facets", ctx.length()),
                || "facet sets differ".into(),
            ))
        }),
        check("betti", || {
            let formula = betti_formula(ctx)?.betti.0;
            let brute = betti_bruteforce(&l_ideal(ctx), ctx.polar_var_count())?;
            let linear = brute.is_linear(ctx.n() as u32);
            Ok(verdict(
                formula == brute.quotient_totals() && linear,
                join(&formula),
                || {
                    format!(
                        "formula {} oracle {} linear {linear}",
                        join(&formula),
                        join(&brute.quotient_totals())
                    )
                },
            ))
        }),
        check("linear-quotients", || {
            let order = admissible_order(ctx);
            let gens = l_ideal(ctx);
            if !verify_linear_quotients(&gens).ok {
                return Ok(Err("order does not have linear quotients".into()));
            }
            for (pos, g) in order.iter().enumerate().skip(1) {
                let mut explicit = colon_generators(&gens[..pos], &gens[pos]);
                explicit.sort();
                let mut closed: Vec<Monomial> = colon_set(g)
                    .members()
                    .iter()
                    .map(|&v| face_to_monomial(ctx, &Face::new([v])))
                    .collect();
                closed.sort();
                if explicit != closed {
                    return Ok(Err(format!("colon set differs at rank {}", g.rank)));
                }
            }
            Ok(Ok(format!("{} generators", gens.len())))
        }),
        check("shelling", || {
            Ok(verdict(is_shelling(&shelling_order(ctx)), "ok", || {
                "not a shelling".into()
            }))
        }),
        check("regularity", || {
            let report = check_regular(ctx);
            Ok(verdict(
                report.regular && report.witnesses.iter().all(|w| w.contained),
                format!("{} witnesses", report.witnesses.len()),
                || "decomposition function is not regular".into(),
            ))
        }),
        check("vd-certificate", || {
            let cert = vd_certificate(ctx)?;
            Ok(verify_certificate(&delta_facets(ctx), &cert)
                .map(|()| format!("depth {}", cert.depth()))
                .map_err(|f| format!("{}: {}", f.path, f.reason)))
        }),
        check("vd-oracle", || {
            let ok = is_vertex_decomposable_bruteforce(&delta_facets(ctx))?;
            Ok(verdict(ok, "ok", || "not vertex decomposable".into()))
        }),
        check("euler", || {
            let chi = delta_facets(ctx).reduced_euler_characteristic()?;
            let expected = if ctx.ideal().is_pure_powers() {
                let e = ctx.bounds().iter().sum::<u32>() as i64 - ctx.n() as i64 - 1;
                1 - 2 * e.rem_euclid(2)
            } else {
                0
            };
            Ok(verdict(chi == expected, chi.to_string(), || {
                format!("{chi}, expected {expected}")
            }))
        }),
    ];
    let profile = depth_profile(ctx, kmax);
    for k in 1..=kmax {
        checks.push(check(format!("power-{k}-linear-quotients"), || {
            let gens = power_generators(ctx, k)?;
            if gens.len() > VERIFY_MAX_POWER_GENERATORS {
                return Err(whisker::Error::Scale {
                    what: "power generators checked by verify",
                    got: gens.len() as u128,
                    limit: VERIFY_MAX_POWER_GENERATORS as u128,
                });
            }
            let monos: Vec<Monomial> = gens.iter().map(|g| g.to_monomial(ctx)).collect();
            Ok(verdict(
                verify_linear_quotients(&monos).ok,
                format!("{} generators", monos.len()),
                || "power order does not have linear quotients".into(),
            ))
        }));
        checks.push(check(format!("power-{k}-q"), || {
            let q = q_invariant(ctx, k)?;
            let lcm = max_lcm_degree(ctx, k)?;
            Ok(verdict(
                q.value == lcm && q.colon_route.is_none_or(|c| c == lcm),
                lcm.to_string(),
                || format!("q {} max lcm degree {lcm}", q.value),
            ))
        }));
        checks.push(check(format!("power-{k}-depth"), || {
            let profile = profile.clone()?;
            let gens: Vec<Monomial> = power_generators(ctx, k)?
                .iter()
                .map(|g| g.to_monomial(ctx))
                .collect();
            let brute = depth_bruteforce(&gens, ctx.polar_var_count())?;
            let formula = profile.depth(k);
            Ok(verdict(formula == Some(brute), brute.to_string(), || {
                format!("profile {formula:?} oracle {brute}")
            }))
        }));
    }
    checks
}

fn verify(ctx: &ArtinianContext, kmax: usize, as_json: bool) -> Result<Report, Failure> {
    let checks = battery(ctx, kmax);
    let failed = checks.iter().any(|c| matches!(c.status, Status::Fail));
    let label = |s: &Status| match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skip => "skip",
    };
    let out = if as_json {
        let rows: Vec<Value> = checks
            .iter()
            .map(|c| json!({ "check": c.name, "result": label(&c.status), "detail": c.detail }))
            .collect();
        envelope(
            "verify",
            json!({ "ideal": ctx.ideal(), "checks": rows, "ok": !failed }),
        )
    } else {
        let mut out = String::from("check\tresult\tdetail\n");
        for c in &checks {
            let _ = writeln!(out, "{}\t{}\t{}", c.name, label(&c.status), c.detail);
        }
        let _ = writeln!(out, "overall\t{}", if failed { "FAIL" } else { "pass" });
        out
    };
    if failed {
        Err(Failure::Checks(out))
    } else {
        Ok(Report { out, failed })
    }
}
