//! Command-line surface for the apolar toolkit.
//!
//! Every subcommand reads its payload from an inline argument, a file path,
//! or stdin (`-`), and prints JSON (or a Bertini input file) to stdout.  All
//! randomness flows from `--seed`, falling back to the `APOLAR_SEED`
//! environment variable and then to 0, never to wall-clock time.  Exit codes:
//! 0 when the command (and any verification it performs) succeeds, 1 when a
//! verification fails, 2 on input or usage errors.

use std::io::Read as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use apolar::apolarity::{ann_component, hilbert, GradedBasis};
use apolar::arrangements::{star_config_generators, ArrangementDoc, MultiArrangement};
use apolar::catalog;
use apolar::poly::{apolar_act, parse_const, parse_poly};
use apolar::ranksearch::{bertini, build_rank_system, build_reduced_system, tracker};
use apolar::waring::{verify_decomposition, CertificateDoc, WaringCertificate};
use apolar::{CycElem, Error, Poly, Rat, Ring, Scalar};

#[derive(Parser)]
#[command(name = "apolar", version, about = "Exact apolarity toolkit for products of linear forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldChoice {
    /// Rational numbers
    Rat,
    /// The cyclotomic field generated by a primitive twelfth root of unity
    Cyc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EmitFormat {
    Bertini,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Basis of the annihilator of a form in one dual degree
    Ann {
        /// Form expression, built-in name f1..f6, file path, or '-' for stdin
        form: String,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value = "rat")]
        field: FieldChoice,
    },
    /// Hilbert function and generator profile of the apolar algebra
    Hilbert {
        form: String,
        #[arg(long, value_enum, default_value = "rat")]
        field: FieldChoice,
    },
    /// Whether an arrangement document is generic
    Generic { arrangement: String },
    /// Whether an arrangement document is irreducible
    Irreducible { arrangement: String },
    /// Star-configuration generators from a list of linear forms
    Star {
        /// Linear forms separated by ';' or newlines
        forms: String,
        #[arg(long)]
        codim: usize,
    },
    /// Verify a Waring decomposition certificate document
    WaringVerify { certificate: String },
    /// Initial-degree and size bounds for a simple generic arrangement
    Bounds { arrangement: String },
    /// Emit the rank-constrained catalecticant system
    Ranksys {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "bertini")]
        emit: EmitFormat,
        /// Fix the fifth factor: three comma-separated exact constants
        /// (coefficient syntax, e.g. "1,z12^4,conj(z12^4)") or a built-in
        /// name f1..f6 whose fifth factor is taken
        #[arg(long)]
        fix_factor: Option<String>,
    },
    /// Track a squared system from a file (Bertini or JSON format)
    Track {
        system: String,
        #[arg(long)]
        threads: Option<usize>,
        /// Override the patch/start seed stored in the system file
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check the published tables for the six classified sextics
    VerifyTables,
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var("APOLAR_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(0)
}

fn read_payload(arg: &str) -> apolar::Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Invalid(format!("reading stdin: {e}")))?;
        Ok(s)
    } else if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Error::Invalid(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn basis_strings<K: Scalar>(b: &GradedBasis<K>) -> Vec<String> {
    b.basis.iter().map(|p| p.to_string()).collect()
}

fn cmd_ann(form: &str, degree: u32, field: FieldChoice) -> apolar::Result<String> {
    let src = read_payload(form)?;
    let src = src.trim();
    let strings = if let Ok(f) = catalog::form_by_name(src) {
        basis_strings(&ann_component(&f, degree)?)
    } else {
        match field {
            FieldChoice::Rat => {
                let f: Poly<Rat> = parse_poly(src, Ring::Primal, 3)?;
                basis_strings(&ann_component(&f, degree)?)
            }
            FieldChoice::Cyc => {
                let f: Poly<CycElem> = parse_poly(src, Ring::Primal, 3)?;
                basis_strings(&ann_component(&f, degree)?)
            }
        }
    };
    Ok(serde_json::to_string(&strings).expect("string array serializes"))
}

fn cmd_hilbert(form: &str, field: FieldChoice) -> apolar::Result<String> {
    let src = read_payload(form)?;
    let src = src.trim();
    let data = if let Ok(f) = catalog::form_by_name(src) {
        hilbert(&f)?
    } else {
        match field {
            FieldChoice::Rat => hilbert(&parse_poly::<Rat>(src, Ring::Primal, 3)?)?,
            FieldChoice::Cyc => hilbert(&parse_poly::<CycElem>(src, Ring::Primal, 3)?)?,
        }
    };
    Ok(serde_json::to_string(&data).expect("hilbert data serializes"))
}

fn parse_arrangement(payload: &str) -> apolar::Result<MultiArrangement<CycElem>> {
    let doc: ArrangementDoc = serde_json::from_str(payload)
        .map_err(|e| Error::Invalid(format!("bad arrangement JSON: {e}")))?;
    MultiArrangement::from_doc(&doc)
}

fn cmd_star(forms: &str, codim: usize) -> apolar::Result<String> {
    let payload = read_payload(forms)?;
    let mut parsed: Vec<Poly<CycElem>> = Vec::new();
    for part in payload.split(|c| c == ';' || c == '\n') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        parsed.push(parse_poly(part, Ring::Primal, 3)?);
    }
    let gens = star_config_generators(&parsed, codim)?;
    let strings: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    Ok(serde_json::to_string(&strings).expect("string array serializes"))
}

fn cmd_waring_verify(certificate: &str) -> apolar::Result<(String, bool)> {
    let payload = read_payload(certificate)?;
    let doc: CertificateDoc = serde_json::from_str(&payload)
        .map_err(|e| Error::Invalid(format!("bad certificate JSON: {e}")))?;
    let cert: WaringCertificate<CycElem> = WaringCertificate::from_doc(&doc)?;
    let verified = verify_decomposition(&cert)?;
    let out = serde_json::json!({
        "verified": verified,
        "points": cert.terms.len(),
        "degree": cert.degree,
    });
    Ok((out.to_string(), verified))
}

fn parse_fix_factor(arg: &str) -> apolar::Result<[Complex64; 3]> {
    let arg = arg.trim();
    if let Some(rest) = arg.strip_prefix('f') {
        if let Ok(i) = rest.parse::<usize>() {
            if (1..=6).contains(&i) {
                let [p, _] = catalog::factor_params(i);
                return Ok([p[0].embed(), p[1].embed(), p[2].embed()]);
            }
        }
    }
    let parts: Vec<&str> = arg.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Invalid(format!(
            "--fix-factor wants three comma-separated constants or f1..f6, got '{arg}'"
        )));
    }
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        let c: CycElem = parse_const(part.trim())?;
        *slot = c.embed();
    }
    Ok(out)
}

fn cmd_ranksys(seed: Option<u64>, emit: EmitFormat, fix_factor: Option<&str>) -> apolar::Result<String> {
    let seed = resolve_seed(seed);
    let sys = match fix_factor {
        None => build_rank_system(seed),
        Some(text) => build_reduced_system(seed, parse_fix_factor(text)?),
    };
    Ok(match emit {
        EmitFormat::Bertini => bertini::emit_bertini(&sys),
        EmitFormat::Json => bertini::system_to_json(&sys),
    })
}

fn cmd_track(system: &str, threads: Option<usize>, seed: Option<u64>) -> apolar::Result<String> {
    let text = read_payload(system)?;
    let mut sys = if text.trim_start().starts_with('{') {
        bertini::system_from_json(&text)?
    } else {
        bertini::parse_bertini(&text)?
    };
    if let Some(s) = seed {
        sys.seed = s;
    }
    let opts = tracker::TrackOptions::default();
    let sols = match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?
            .install(|| tracker::track_system(&sys, &opts)),
        None => tracker::track_system(&sys, &opts),
    };
    Ok(bertini::solutions_to_json(&sys, &sols))
}

fn cmd_verify_tables() -> apolar::Result<bool> {
    let mut all_ok = true;
    for i in 1..=6 {
        let f = catalog::form(i);
        let mut fails: Vec<String> = Vec::new();
        for (j, op) in catalog::known_annihilators(i).iter().enumerate() {
            if !apolar_act(op, &f)?.is_zero() {
                fails.push(format!("entry {} ({op}) does not annihilate", j + 1));
            }
        }
        let dim3 = ann_component(&f, 3)?.dim();
        if dim3 != 4 {
            fails.push(format!("dim of the degree-3 annihilator is {dim3}, want 4"));
        }
        let h = hilbert(&f)?;
        if h.h_vector[3] != 6 {
            fails.push(format!("h_3 = {}, want 6", h.h_vector[3]));
        }
        if fails.is_empty() {
            println!("table1 f{i}: pass");
        } else {
            all_ok = false;
            println!("table1 f{i}: FAIL ({})", fails.join("; "));
        }
    }
    for i in 1..=5 {
        let cert = catalog::waring_certificate(i).expect("decomposition rows exist for f1..f5");
        if verify_decomposition(&cert)? {
            println!("table2 f{i}: pass");
        } else {
            all_ok = false;
            println!("table2 f{i}: FAIL (decomposition does not expand to the form)");
        }
    }
    println!("{}", if all_ok { "all tables verified" } else { "table verification FAILED" });
    Ok(all_ok)
}

fn run(cli: Cli) -> apolar::Result<ExitCode> {
    match cli.command {
        Command::Ann { form, degree, field } => {
            println!("{}", cmd_ann(&form, degree, field)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Hilbert { form, field } => {
            println!("{}", cmd_hilbert(&form, field)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Generic { arrangement } => {
            let arr = parse_arrangement(&read_payload(&arrangement)?)?;
            println!("{}", serde_json::json!({ "generic": arr.is_generic() }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Irreducible { arrangement } => {
            let arr = parse_arrangement(&read_payload(&arrangement)?)?;
            println!("{}", serde_json::json!({ "irreducible": arr.is_irreducible() }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Star { forms, codim } => {
            println!("{}", cmd_star(&forms, codim)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::WaringVerify { certificate } => {
            let (out, verified) = cmd_waring_verify(&certificate)?;
            println!("{out}");
            Ok(if verified { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Bounds { arrangement } => {
            let arr = parse_arrangement(&read_payload(&arrangement)?)?;
            let report = arr.bounds()?;
            println!("{}", serde_json::to_string(&report).expect("bound report serializes"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Ranksys { seed, emit, fix_factor } => {
            print!("{}", cmd_ranksys(seed, emit, fix_factor.as_deref())?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Track { system, threads, seed } => {
            print!("{}", cmd_track(&system, threads, seed)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyTables => {
            let ok = cmd_verify_tables()?;
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
