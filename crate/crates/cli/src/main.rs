use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use geoideal::classify::{classify, emit, Format};
use geoideal::geometry::{critical_transversality_certificate, forward_orbit_hits, CtVerdict, RationalPoint};
use geoideal::homology::{graded_tor, homologically_transverse, serre_multiplicity_total, Transversality};
use geoideal::idealizer::{idealizer_hilbert, membership_oracle, IdealizerScene};
use geoideal::poly::{HomIdeal, Monomial, Poly};
use geoideal::scene::{parse_scene, SceneFile};
use geoideal::twist::{twist_multiply, TwistedElement};
use geoideal::Error;

#[derive(Parser)]
#[command(name = "geoideal", version, about = "Geometric idealizers in twisted homogeneous coordinate rings")]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutFormat::Text, global = true)]
    format: OutFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Gröbner basis of I_Z and of its saturation.
    Gb { scene: PathBuf },
    /// The colon ideals (I : I^(σ^n)).
    Colon {
        scene: PathBuf,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Hilbert data of Tor_j(S/I_Z, S/J).
    Tor {
        scene: PathBuf,
        /// Generators of J, comma separated.
        #[arg(long)]
        with: String,
        #[arg(long, default_value_t = 8)]
        deg_bound: u32,
    },
    /// Homological transversality of Z and V(J).
    Transverse {
        scene: PathBuf,
        #[arg(long)]
        with: String,
    },
    /// Alternating sum of Tor lengths for a proper intersection.
    Bezout {
        scene: PathBuf,
        #[arg(long)]
        with: String,
    },
    /// Twist relations between variables and associativity on low-degree monomials.
    TwistCheck {
        scene: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
    },
    /// Graded dimensions of B, I and R.
    Idealizer {
        scene: PathBuf,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Also cross-check each R_n basis element against the membership oracle.
        #[arg(long)]
        oracle_horizon: Option<u32>,
    },
    /// Forward-orbit intersections of sample points with Z.
    Orbit {
        scene: PathBuf,
        /// Point "[a0 : ... : ad]"; defaults to the scene's points.
        #[arg(long)]
        point: Vec<String>,
        #[arg(long)]
        horizon: Option<u64>,
    },
    /// Critical-transversality certificate for {σ^n Z}.
    CtCert { scene: PathBuf },
    /// The full classification report.
    Classify { scene: PathBuf },
}

enum Failure {
    Parse(String),
    Engine(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Engine(e)
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Parse(_) => 2,
        Failure::Io(_) => 1,
        Failure::Engine(e) => match e {
            Error::Parse { .. }
            | Error::Inhomogeneous(_)
            | Error::VariableOutOfRange { .. }
            | Error::BadModulus(_)
            | Error::DenominatorVanishes { .. } => 2,
            Error::DecompositionMismatch { .. } | Error::BadComponent(_) => 3,
            Error::SaturationCap(_) | Error::ResourceCap(_) | Error::TooManyVariables(_) => 4,
            _ => 1,
        },
    }
}

fn load(path: &PathBuf) -> Result<SceneFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    parse_scene(&text).map_err(|diags| {
        let lines: Vec<String> = diags.iter().map(|d| format!("{}: {d}", path.display())).collect();
        Failure::Parse(lines.join("\n"))
    })
}

struct Out {
    format: OutFormat,
    text: String,
}

impl Out {
    fn record(&mut self, v: Value) {
        if let OutFormat::Records = self.format {
            self.text.push_str(&v.to_string());
            self.text.push('\n');
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        if let OutFormat::Text = self.format {
            self.text.push_str(s.as_ref());
            self.text.push('\n');
        }
    }
}

fn gens(ideal: &HomIdeal) -> Vec<String> {
    ideal.gens().iter().map(|g| g.to_string()).collect()
}

fn run(cli: Cli) -> Result<String, Failure> {
    let mut out = Out {
        format: cli.format,
        text: String::new(),
    };
    match cli.command {
        Command::Gb { scene } => {
            let sf = load(&scene)?;
            let gb = sf.ideal.groebner().to_vec();
            let sat = sf.ideal.saturate()?;
            let sat_gb = sat.groebner().to_vec();
            let show = |v: &[Poly]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
            out.record(json!({"record": "gb", "ideal": "I", "basis": show(&gb)}));
            out.record(json!({"record": "gb", "ideal": "saturation", "basis": show(&sat_gb)}));
            out.line(format!("GB(I)     = [{}]", show(&gb).join(", ")));
            out.line(format!("GB(I^sat) = [{}]", show(&sat_gb).join(", ")));
        }
        Command::Colon { scene, max_degree } => {
            let sf = load(&scene)?;
            let sc = sf.idealizer_scene()?;
            for n in 1..=max_degree.unwrap_or(sf.maxdeg) {
                let c = sc.colon(n);
                let equals_i = c == *sc.ideal();
                let unit = c.is_unit();
                let c = c.with_groebner();
                out.record(json!({"record": "colon", "n": n, "basis": gens(&c), "equals_i": equals_i, "unit": unit}));
                let tag = if unit {
                    " (unit)"
                } else if equals_i {
                    " (= I)"
                } else {
                    ""
                };
                out.line(format!("n={n}: {c}{tag}"));
            }
        }
        Command::Tor { scene, with, deg_bound } => {
            let sf = load(&scene)?;
            let j_ideal = sf.parse_ideal(&with)?;
            for j in 0..=sf.nvars() {
                let t = graded_tor(&sf.ideal, &j_ideal, j, deg_bound);
                out.record(json!({
                    "record": "tor", "j": j, "dims": t.table,
                    "hilbert_polynomial": t.hilbert_polynomial.to_string(),
                    "sheaf_zero": t.is_sheaf_zero(),
                }));
                out.line(format!(
                    "Tor_{j}: dims(0..={deg_bound}) = {:?}  HP = {}",
                    t.table, t.hilbert_polynomial
                ));
            }
        }
        Command::Transverse { scene, with } => {
            let sf = load(&scene)?;
            let t = homologically_transverse(&sf.ideal, &sf.parse_ideal(&with)?)?;
            out.record(json!({"record": "transverse", "transverse": t.holds(),
                "fails_at": match t { Transversality::Fails { j } => Some(j), _ => None }}));
            out.line(match t {
                Transversality::Transverse => "transverse".to_string(),
                Transversality::Fails { j } => format!("not transverse: Tor_{j} sheaf nonzero"),
            });
        }
        Command::Bezout { scene, with } => {
            let sf = load(&scene)?;
            let total = serre_multiplicity_total(&sf.ideal, &sf.parse_ideal(&with)?)?;
            out.record(json!({"record": "bezout", "total": total}));
            out.line(format!("intersection multiplicity total = {total}"));
        }
        Command::TwistCheck { scene, max_degree } => {
            let sf = load(&scene)?;
            twist_check(&sf, max_degree, &mut out);
        }
        Command::Idealizer {
            scene,
            max_degree,
            oracle_horizon,
        } => {
            let sf = load(&scene)?;
            let sc = sf.idealizer_scene()?;
            idealizer_table(&sc, max_degree.unwrap_or(sf.maxdeg), oracle_horizon, &mut out);
        }
        Command::Orbit { scene, point, horizon } => {
            let sf = load(&scene)?;
            let pts = if point.is_empty() {
                sf.points.clone()
            } else {
                point
                    .iter()
                    .map(|p| RationalPoint::parse(p))
                    .collect::<Result<Vec<_>, _>>()?
            };
            if pts.iter().any(|p| p.nvars() != sf.nvars()) {
                return Err(Failure::Parse(format!("points must have {} coordinates", sf.nvars())));
            }
            let h = horizon.unwrap_or(sf.horizon as u64);
            for p in pts {
                let r = forward_orbit_hits(&p, &sf.sigma, &sf.ideal, h);
                out.record(json!({"record": "orbit", "point": r.point.to_string(), "horizon": r.horizon, "hits": r.hits, "verdict": r.verdict}));
                out.line(format!("{}: hits {:?}  verdict {:?}", r.point, r.hits, r.verdict));
            }
        }
        Command::CtCert { scene } => {
            let sf = load(&scene)?;
            let c = critical_transversality_certificate(&sf.sigma, &sf.ideal);
            let checked: Vec<Value> = c
                .checked
                .iter()
                .map(|(y, t)| json!({"subscheme": y.to_string(), "transverse": t.holds()}))
                .collect();
            out.record(json!({"record": "ct-cert", "verdict": c.verdict, "checked": checked, "hypotheses": c.hypotheses}));
            for (y, t) in &c.checked {
                out.line(format!("  V{y}: {}", if t.holds() { "transverse" } else { "not transverse" }));
            }
            out.line(match &c.verdict {
                CtVerdict::Certified => format!("certified ({})", c.hypotheses),
                CtVerdict::Refuted { witness, j } => format!("refuted: witness V{witness}, Tor_{j} nonzero"),
                CtVerdict::Inconclusive { reason } => format!("inconclusive: {reason}"),
            });
        }
        Command::Classify { scene } => {
            let sf = load(&scene)?;
            let report = classify(&sf)?;
            let fmt = match cli.format {
                OutFormat::Text => Format::Text,
                OutFormat::Records => Format::Records,
            };
            return Ok(emit(&report, fmt));
        }
    }
    Ok(out.text)
}

fn twist_check(sf: &SceneFile, max_degree: u32, out: &mut Out) {
    let field = sf.field;
    let nvars = sf.nvars();
    let var = |i| TwistedElement::new(1, Poly::var(i, field)).expect("degree 1");
    for i in 0..nvars {
        for j in i + 1..nvars {
            let ab = twist_multiply(&var(i), &var(j), &sf.sigma);
            let ba = twist_multiply(&var(j), &var(i), &sf.sigma);
            let ratio = ab.poly().lead().zip(ba.poly().lead()).and_then(|(a, b)| {
                (ab.poly() == &ba.poly().scale(&a.1.div(&b.1)) && a.0 == b.0).then(|| a.1.div(&b.1))
            });
            match ratio {
                Some(c) => {
                    out.record(json!({"record": "relation", "i": i, "j": j, "scalar": c.to_string()}));
                    out.line(format!("x{i}*x{j} = {c} x{j}*x{i}"));
                }
                None => {
                    out.record(json!({"record": "relation", "i": i, "j": j, "scalar": Value::Null}));
                    out.line(format!("x{i}*x{j} is not a scalar multiple of x{j}*x{i}"));
                }
            }
        }
    }
    let mut elems = Vec::new();
    for d in 1..=max_degree.max(1) {
        for m in Monomial::all_of_degree(nvars, d) {
            elems.push(TwistedElement::new(d, Poly::monomial(m, field.one())).expect("homogeneous"));
        }
    }
    let mut failures = 0usize;
    let mut checked = 0usize;
    for a in &elems {
        for b in &elems {
            for c in &elems {
                let left = twist_multiply(&twist_multiply(a, b, &sf.sigma), c, &sf.sigma);
                let right = twist_multiply(a, &twist_multiply(b, c, &sf.sigma), &sf.sigma);
                checked += 1;
                if left != right {
                    failures += 1;
                }
            }
        }
    }
    out.record(json!({"record": "associativity", "triples": checked, "failures": failures}));
    let mut s = String::new();
    let _ = write!(s, "associativity: {checked} monomial triples, {failures} failures");
    out.line(s);
}

fn idealizer_table(sc: &IdealizerScene, max: u32, oracle: Option<u32>, out: &mut Out) {
    out.line(format!("{:>3} {:>8} {:>8} {:>8}  stabilized", "n", "dim B_n", "dim I_n", "dim R_n"));
    for row in idealizer_hilbert(sc, max) {
        let oracle_ok = oracle.filter(|_| row.n >= 1).map(|m| {
            geoideal::idealizer::idealizer_piece(sc, row.n)
                .basis()
                .iter()
                .all(|b| membership_oracle(&TwistedElement::new(row.n, b.clone()).expect("homogeneous"), sc, m))
        });
        out.record(json!({"record": "idealizer", "row": row, "oracle_agrees": oracle_ok}));
        let extra = oracle_ok.map_or(String::new(), |ok| format!("  oracle {}", if ok { "agrees" } else { "DISAGREES" }));
        out.line(format!(
            "{:>3} {:>8} {:>8} {:>8}  {}{extra}",
            row.n,
            row.dim_b,
            row.dim_i,
            row.dim_r,
            if row.stabilized { "yes" } else { "no" }
        ));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Parse(msg) | Failure::Io(msg) => eprintln!("{msg}"),
                Failure::Engine(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(exit_code(&f))
        }
    }
}
