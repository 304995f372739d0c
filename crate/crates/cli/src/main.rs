use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gorlink::corpus::{
    apolar_annihilator, gen_ci_family, gen_extrasymmetric, gen_generic_minors, gen_sally, gen_small_pair, parse_field,
    parse_input, parse_polynomial, random_form, run_corpus_verification, sally_units, CorpusConfig, FChoice, Family,
    InputDocument, DEFAULT_SEED,
};
use gorlink::homological::{minimalize, resolve, verify_resolution, BettiTable, ChainComplex};
use gorlink::kustin_miller::{assemble_resolution, biliaison_certificate, minimality_check};
use gorlink::liaison::{direct_link, hilbert_identity_check, two_link_construct, BiliaisonData};
use gorlink::{Error, Field, Ideal, PolyRing, Polynomial};

#[derive(Parser)]
#[command(name = "gorlink", version, about = "Gorenstein liaison and Kustin-Miller resolutions")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IdealInput {
    /// Input file, or `-` for standard input.
    file: String,
    /// Name of the ideal to use (default: the first one declared).
    #[arg(long)]
    ideal: Option<String>,
}

#[derive(Args)]
struct PairInput {
    /// Input file, or `-` for standard input.
    file: String,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    /// Polynomial expression or name of a declared polynomial.
    #[arg(long)]
    y: String,
    /// Fix f instead of searching for it.
    #[arg(long, conflicts_with_all = ["seed", "z"])]
    f: Option<String>,
    /// Seed of the search for f.
    #[arg(long)]
    seed: Option<u64>,
    /// Fix the second linking form z = ω + f·y (f is solved for).
    #[arg(long, conflicts_with = "seed")]
    z: Option<String>,
    /// Number of candidates tried by the search.
    #[arg(long, default_value_t = 50)]
    trials: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Gröbner basis.
    Gb(IdealInput),
    /// Minimal graded free resolution.
    Res(IdealInput),
    /// Graded Betti table of R/I.
    Betti(IdealInput),
    /// Hilbert function and series of R/I.
    Hilbert {
        #[command(flatten)]
        input: IdealInput,
        /// Last degree to tabulate.
        #[arg(long, default_value_t = 10)]
        upto: usize,
    },
    /// Direct link J = c : I with its certificate.
    Link {
        #[command(flatten)]
        input: IdealInput,
        /// Name of the linking ideal.
        #[arg(long)]
        by: String,
    },
    /// Two-link construction of I from 𝔟 ⊂ 𝔞.
    Biliaison(PairInput),
    /// Resolution of I assembled from the resolutions of 𝔞 and 𝔟.
    KmRes(PairInput),
    /// Print an input document for one of the example families.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Run the whole example corpus and report every check.
    VerifyCorpus {
        #[arg(long, default_value = "gf:32003")]
        field: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// 𝔟 = (x^2 - z^2, y^2 - z^2) ⊂ (x, y, z), y = z^2, f = 5z.
    SmallPair {
        #[arg(long, default_value = "gf:32003")]
        field: String,
    },
    /// Complete intersections of powers of variables.
    Ci {
        /// Exponents of 𝔟, comma separated (g - 1 of them).
        #[arg(long, value_delimiter = ',')]
        m: Vec<u32>,
        /// Exponents of 𝔞, comma separated (g of them).
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        #[arg(long, default_value = "gf:32003")]
        field: String,
    },
    /// Gorenstein ideals with h-vector (1, n, 1).
    Sally {
        #[arg(long)]
        n: usize,
        /// Units c_1..c_{n-1}; drawn from --seed when omitted.
        #[arg(long, value_delimiter = ',')]
        units: Option<Vec<i64>>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value = "gf:32003")]
        field: String,
    },
    /// Submaximal minors of a generic n×n matrix.
    Minors {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "gf:32003")]
        field: String,
    },
    /// 4×4 Pfaffians of an extrasymmetric 6×6 matrix.
    Extrasymmetric {
        #[arg(long, default_value_t = 1)]
        lambda: i64,
        #[arg(long, default_value = "gf:32003")]
        field: String,
    },
    /// Annihilator of a random form under contraction.
    Apolar {
        #[arg(long, default_value_t = 5)]
        vars: usize,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value = "gf:32003")]
        field: String,
    },
}

/// Exit status 1: a check failed; 2: bad input.
enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::UnknownIdentifier { .. }
            | Error::Inhomogeneous(_)
            | Error::InvalidField(_)
            | Error::InvalidRing(_) => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

type CliResult = Result<Output, Failure>;

/// Text and JSON renderings of a command's result, and whether every check
/// it performed passed.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gb(input) => cmd_gb(&input),
        Command::Res(input) => cmd_res(&input),
        Command::Betti(input) => cmd_betti(&input),
        Command::Hilbert { input, upto } => cmd_hilbert(&input, upto),
        Command::Link { input, by } => cmd_link(&input, &by),
        Command::Biliaison(pair) => cmd_biliaison(&pair),
        Command::KmRes(pair) => cmd_km_res(&pair),
        Command::Gen { family } => cmd_gen(&family),
        Command::VerifyCorpus { field, seed } => cmd_verify_corpus(&field, seed),
    };
    match result {
        Ok(out) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("JSON values serialize") + "\n"
            } else {
                out.text
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().write_all(text.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_document(path: &str) -> Result<InputDocument, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {path}: {e}")))?
    };
    Ok(parse_input(&text)?)
}

fn named_ideal(doc: &InputDocument, name: Option<&str>) -> Result<(String, Ideal), Failure> {
    let name = match name {
        Some(n) => n.to_string(),
        None => doc.ideals.first().map(|(n, _)| n.clone()).ok_or_else(|| Failure::Usage("no ideal declared".into()))?,
    };
    let ideal = doc.ideal(&name).ok_or_else(|| Failure::Usage(format!("no ideal named `{name}`")))??;
    Ok((name, ideal))
}

fn poly_arg(doc: &InputDocument, text: &str) -> Result<Polynomial, Failure> {
    Ok(parse_polynomial(&doc.ring, text, &doc.polys)?)
}

fn field_arg(text: &str) -> Result<Field, Failure> {
    parse_field(text).map_err(|e| Failure::Usage(e.to_string()))
}

fn render_minimal(i: &Ideal) -> String {
    format!("({})", strings(i.minimal_generators()).join(", "))
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn betti_json(b: &BettiTable) -> Value {
    json!({ "ranks": b.ranks(), "entries": b.entries() })
}

fn complex_json(c: &ChainComplex) -> Value {
    let modules: Vec<Value> = c.modules().iter().map(|m| json!(m.degrees())).collect();
    let maps: Vec<Value> = c.maps().iter().map(|m| json!(m.rows().iter().map(|r| strings(r)).collect::<Vec<_>>())).collect();
    json!({ "ranks": c.ranks(), "degrees": modules, "differentials": maps })
}

fn cmd_gb(input: &IdealInput) -> CliResult {
    let doc = read_document(&input.file)?;
    let (name, ideal) = named_ideal(&doc, input.ideal.as_deref())?;
    let gb = ideal.groebner_basis();
    let mut text = String::new();
    for g in gb {
        text.push_str(&format!("{g}\n"));
    }
    Ok(Output { text, json: json!({ "ideal": name, "groebner_basis": strings(gb) }), ok: true })
}

fn cmd_res(input: &IdealInput) -> CliResult {
    let doc = read_document(&input.file)?;
    let (name, ideal) = named_ideal(&doc, input.ideal.as_deref())?;
    let res = resolve(&ideal)?;
    let betti = BettiTable::from_complex(&res)?;
    let text = format!("{res}\n{betti}");
    Ok(Output { text, json: json!({ "ideal": name, "resolution": complex_json(&res), "betti": betti_json(&betti) }), ok: true })
}

fn cmd_betti(input: &IdealInput) -> CliResult {
    let doc = read_document(&input.file)?;
    let (name, ideal) = named_ideal(&doc, input.ideal.as_deref())?;
    let betti = BettiTable::from_complex(&resolve(&ideal)?)?;
    Ok(Output { text: betti.to_string(), json: json!({ "ideal": name, "betti": betti_json(&betti) }), ok: true })
}

fn cmd_hilbert(input: &IdealInput, upto: usize) -> CliResult {
    let doc = read_document(&input.file)?;
    let (name, ideal) = named_ideal(&doc, input.ideal.as_deref())?;
    let h = ideal.hilbert();
    let values = h.values(upto);
    let mut text = format!("dimension: {}\nnumerator: {:?}\nvalues: {:?}\n", h.dimension(), h.numerator(), values);
    if let Some(v) = h.h_vector() {
        text.push_str(&format!("h-vector: {v:?}\n"));
    }
    let json = json!({
        "ideal": name,
        "dimension": h.dimension(),
        "numerator": h.numerator(),
        "values": values,
        "h_vector": h.h_vector(),
    });
    Ok(Output { text, json, ok: true })
}

fn cmd_link(input: &IdealInput, by: &str) -> CliResult {
    let doc = read_document(&input.file)?;
    let (name, ideal) = named_ideal(&doc, input.ideal.as_deref())?;
    let (_, c) = named_ideal(&doc, Some(by))?;
    let (j, cert) = direct_link(&c, &ideal)?;
    let summary = cert.summary();
    let text = format!(
        "residual: {}\ncontained: {}\nforward: {}\nbackward: {}\ngrades_equal: {}\n",
        render_minimal(&j),
        summary.contained,
        summary.forward,
        summary.backward,
        summary.grades_equal
    );
    let json = json!({ "ideal": name, "by": by, "residual": render_minimal(&j), "certificate": summary });
    Ok(Output { text, json, ok: cert.is_valid() })
}

fn construct(doc: &InputDocument, pair: &PairInput) -> Result<BiliaisonData, Failure> {
    let (_, a) = named_ideal(doc, Some(&pair.a))?;
    let (_, b) = named_ideal(doc, Some(&pair.b))?;
    let y = poly_arg(doc, &pair.y)?;
    let data = BiliaisonData::new(&a, &b, &y)?;
    let data = if let Some(f) = &pair.f {
        data.with_f(&poly_arg(doc, f)?)?
    } else if let Some(z) = &pair.z {
        data.with_target_z(&poly_arg(doc, z)?)?
    } else {
        data.search_f(pair.trials, pair.seed.unwrap_or(DEFAULT_SEED))?
    };
    Ok(two_link_construct(data)?)
}

fn cmd_biliaison(pair: &PairInput) -> CliResult {
    let doc = read_document(&pair.file)?;
    let data = construct(&doc, pair)?;
    let i = data.ideal().expect("construction ran");
    let betti = BettiTable::from_complex(data.i_res.as_ref().expect("construction ran"))?;
    let identity = hilbert_identity_check(&data)?;
    let first = data.first_link.as_ref().expect("construction ran");
    let second = data.second_link.as_ref().expect("construction ran");
    let f = data.f.clone().expect("construction ran");
    let z = data.z.clone().expect("construction ran");
    let j = data.j.as_ref().expect("construction ran");
    let formula = data.formula.as_ref().expect("construction ran");
    let ok = first.is_valid() && second.is_valid() && identity.holds;
    let text = format!(
        "d = {}\nomega = {}\nf = {f}\nz = {z}\nJ = {}\nI = {}\nlinks valid: {}\nhilbert identity: {}\n{betti}",
        data.d,
        data.omega.omega,
        render_minimal(j),
        render_minimal(i),
        first.is_valid() && second.is_valid(),
        identity.holds,
    );
    let json = json!({
        "g": data.g,
        "d": data.d,
        "omega": data.omega.omega.to_string(),
        "f": f.to_string(),
        "z": z.to_string(),
        "j": render_minimal(j),
        "i": render_minimal(i),
        "i_minimal_generators": strings(i.minimal_generators()),
        "first_link": first.summary(),
        "second_link": second.summary(),
        "hilbert_identity": identity,
        "formula_matches": formula.matches,
        "formula_matches_opposite_sign": formula.opposite_sign_matches,
        "h_vector": i.hilbert().h_vector(),
        "betti": betti_json(&betti),
    });
    Ok(Output { text, json, ok })
}

fn cmd_km_res(pair: &PairInput) -> CliResult {
    let doc = read_document(&pair.file)?;
    let data = construct(&doc, pair)?;
    let i = data.ideal().expect("construction ran");
    let km = assemble_resolution(&data)?;
    let exact = verify_resolution(&km.resolution, i);
    let minimal = minimality_check(&data, &km)?;
    let minimized = if minimal { km.resolution.clone() } else { minimalize(&km.resolution)? };
    let betti = BettiTable::from_complex(&minimized)?;
    let cert = biliaison_certificate(&data)?;
    let ok = exact.ok && cert.holds();
    let text = format!(
        "I = {}\nassembled: {}\nexact: {}\nminimal: {minimal}\nbiliaison certificate: {}\n{betti}",
        render_minimal(i),
        km.resolution,
        exact.ok,
        cert.holds(),
    );
    let json = json!({
        "i": render_minimal(i),
        "d": data.d,
        "f_effective": km.f.to_string(),
        "assembled": complex_json(&km.resolution),
        "exact": exact.ok,
        "witness": exact.witness,
        "minimal": minimal,
        "betti": betti_json(&betti),
        "biliaison_certificate": cert,
    });
    Ok(Output { text, json, ok })
}

fn family_document(family: &Family, extra_polys: Vec<(String, Polynomial)>) -> InputDocument {
    let ring = family.ring().clone();
    let mut polys = vec![("Y".to_string(), family.y.clone())];
    match &family.choice {
        FChoice::Given(f) => polys.push(("F".into(), f.clone())),
        FChoice::TargetZ(z) => polys.push(("Z".into(), z.clone())),
        FChoice::Search { .. } => {}
    }
    polys.extend(extra_polys);
    let mut ideals = vec![("a".to_string(), family.a.gens().to_vec()), ("b".to_string(), family.b.gens().to_vec())];
    if let Some(e) = &family.expected {
        ideals.push(("expected".into(), e.gens().to_vec()));
    }
    InputDocument { field: ring.field(), ring, polys, ideals }
}

fn cmd_gen(family: &GenFamily) -> CliResult {
    let doc = match family {
        GenFamily::SmallPair { field } => family_document(&gen_small_pair(field_arg(field)?)?, vec![]),
        GenFamily::Ci { m, n, field } => {
            let ci = gen_ci_family(field_arg(field)?, m, n, DEFAULT_SEED)?;
            family_document(&ci.family, vec![("C".into(), ci.c.clone())])
        }
        GenFamily::Sally { n, units, seed, field } => {
            let field = field_arg(field)?;
            let units = units.clone().unwrap_or_else(|| sally_units(field, *n, *seed));
            if units.len() + 1 != *n {
                return Err(Failure::Usage(format!("need {} units for n = {n}", n.saturating_sub(1))));
            }
            family_document(&gen_sally(field, &units)?, vec![])
        }
        GenFamily::Minors { n, field } => {
            let (ideal, family) = gen_generic_minors(*n, field_arg(field)?)?;
            match family {
                Some(f) => family_document(&f, vec![]),
                None => {
                    let ring = ideal.ring().clone();
                    InputDocument { field: ring.field(), ring, polys: vec![], ideals: vec![("i".into(), ideal.gens().to_vec())] }
                }
            }
        }
        GenFamily::Extrasymmetric { lambda, field } => family_document(&gen_extrasymmetric(field_arg(field)?, *lambda)?.family, vec![]),
        GenFamily::Apolar { vars, degree, seed, field } => {
            let ring = PolyRing::indexed("x", *vars, field_arg(field)?)?;
            let form = random_form(&ring, *degree, *seed);
            let ann = apolar_annihilator(&form, *degree)?;
            InputDocument {
                field: ring.field(),
                ring,
                polys: vec![("F".into(), form)],
                ideals: vec![("ann".into(), ann.minimal_generators().to_vec())],
            }
        }
    };
    let text = doc.render();
    Ok(Output { json: json!({ "document": text }), text, ok: true })
}

fn cmd_verify_corpus(field: &str, seed: u64) -> CliResult {
    let field = field_arg(field)?;
    let report = run_corpus_verification(&CorpusConfig { field, seed });
    let mut text = String::new();
    for e in &report.examples {
        let ms = report.timings_ms.get(&e.name).copied().unwrap_or(0);
        text.push_str(&format!("{} {} ({ms} ms)\n", if e.passed() { "PASS" } else { "FAIL" }, e.name));
        for c in e.checks.iter().filter(|c| !c.passed) {
            text.push_str(&format!("    failed: {} {}\n", c.name, c.detail.clone().unwrap_or_default()));
        }
    }
    let ok = report.passed();
    text.push_str(&format!("{} examples, {} failed checks\n", report.examples.len(), report.failures().len()));
    let json = serde_json::to_value(&report).expect("reports serialize");
    Ok(Output { text, json, ok })
}

