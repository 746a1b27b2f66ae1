//! The `grtab` command line.

use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use grtab::characters::{Engine, DEFAULT_MAX_K};
use grtab::cluster::{closure, g_factorization, g_vector, initial_seed, Seed};
use grtab::monomials::{
    lm_reality_witness, monomial_to_multisegment, multisegment_to_monomial, phi_tilde, psi, zelevinsky_dual,
    DominantMonomial, LmVerdict, Multisegment,
};
use grtab::plucker::RationalMatrix;
use grtab::tableaux::Tableau;
use grtab::Error;
use rand::SeedableRng;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_LOCALIZED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "grtab", version, about = "Tableaux, characters and seeds for Grassmannian cluster algebras")]
pub struct Cli {
    /// Largest gap weight for Kazhdan-Lusztig sums.
    #[arg(long, global = true, env = "GRTAB_MAX_K", default_value_t = DEFAULT_MAX_K)]
    pub max_k: usize,
    /// Worker threads (0 = rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Emit JSON where the command supports it.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Dims {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct Payload {
    /// Inline value, `@path` to read a file, or `-`/nothing for stdin.
    pub input: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Tableau,
    Monomial,
    Multisegment,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Translate between tableaux, dominant monomials and multisegments.
    Convert {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum)]
        from: Kind,
        #[arg(long, value_enum)]
        to: Kind,
        /// Print the reduced tableau instead of the small-gaps form.
        #[arg(long)]
        reduce: bool,
        #[command(flatten)]
        payload: Payload,
    },
    /// Small-gaps factorization `T = T″ ∪ T′`.
    Factor {
        #[command(flatten)]
        dims: Dims,
        #[command(flatten)]
        payload: Payload,
    },
    /// `ch(T)` in standard monomials.
    Ch {
        #[command(flatten)]
        dims: Dims,
        #[command(flatten)]
        payload: Payload,
    },
    /// q-character formula of a dominant monomial.
    Qchar {
        /// Restrict to `U_q(sl_n)`-hat.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        payload: Payload,
    },
    /// Is `ch(T)² = ch(T ∪ T)`?
    Reality {
        #[command(flatten)]
        dims: Dims,
        #[command(flatten)]
        payload: Payload,
    },
    /// Search for a factorization `ch(T) = ch(A) ch(B)`.
    Prime {
        #[command(flatten)]
        dims: Dims,
        #[command(flatten)]
        payload: Payload,
    },
    /// Zelevinsky dual of a multisegment.
    Zelevinsky {
        #[command(flatten)]
        payload: Payload,
    },
    /// Lapid-Minguez reality test for a regular multisegment.
    Lm {
        #[command(flatten)]
        payload: Payload,
    },
    /// g-vector of a tableau or monomial.
    Gvector {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value = "tableau")]
        from: Kind,
        /// Also factor the tableau over the labels of the initial seed.
        #[arg(long)]
        factor: bool,
        #[command(flatten)]
        payload: Payload,
    },
    /// Initial seed of `Gr(n,m)` as JSON.
    Seed {
        #[command(flatten)]
        dims: Dims,
    },
    /// Mutate a seed (JSON) at a sequence of vertices.
    Mutate {
        /// Vertex id such as "(1,0)"; repeat for a path.
        #[arg(long = "at")]
        at: Vec<String>,
        /// JSON file holding an array of vertex ids.
        #[arg(long)]
        steps: Option<String>,
        /// Check every exchange relation on the way.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        payload: Payload,
    },
    /// Breadth-first mutation closure.
    Closure {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        depth: Option<usize>,
        /// Seed JSON; defaults to the initial seed of `Gr(n,m)`.
        #[command(flatten)]
        payload: Payload,
    },
    /// Compare `ch(T′)` with the Kazhdan-Lusztig immanant at random totally positive points.
    ImmanantCheck {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, default_value_t = 3)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        payload: Payload,
    },
    /// Evaluate `ch(T)` at a point of the affine cone.
    Eval {
        #[command(flatten)]
        dims: Dims,
        /// `n × m` matrix as JSON rows of rationals; a random totally positive point otherwise.
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        payload: Payload,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::KTooLarge { .. }) { EXIT_REFUSED } else { EXIT_INPUT };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

type Out = std::result::Result<(String, i32), Failure>;

/// Parses `args` (program name first), runs the command and writes to the given streams.
pub fn run<I, T>(args: I, stdin: &mut (dyn Read + Send), out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "grtab: {e}");
            return EXIT_INPUT;
        }
    };
    let result = pool.install(|| execute(&cli, stdin));
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "grtab: {}", f.message);
            f.code
        }
    }
}

fn read_payload(p: &Payload, stdin: &mut (dyn Read + Send)) -> std::result::Result<String, Failure> {
    match p.input.as_deref() {
        Some(path) if path.starts_with('@') => {
            std::fs::read_to_string(&path[1..]).map_err(|e| input_error(format!("{}: {e}", &path[1..])))
        }
        Some(s) if s != "-" => Ok(s.to_string()),
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| input_error(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn need_dims(d: &Dims) -> std::result::Result<(usize, usize), Failure> {
    match (d.n, d.m) {
        (Some(n), Some(m)) if n >= 1 && m >= n => Ok((n, m)),
        (Some(n), Some(m)) => Err(input_error(format!("bad dimensions (n,m) = ({n},{m})"))),
        _ => Err(input_error("--n and --m are required")),
    }
}

/// A tableau as column text (`1,3,5|2,4,6`) or JSON (`{"n":..,"m":..,"rows":..}`).
fn parse_tableau(text: &str, d: &Dims) -> std::result::Result<Tableau, Failure> {
    let text = text.trim();
    if text.starts_with('{') {
        let t: Tableau = serde_json::from_str(text).map_err(|e| input_error(format!("tableau JSON: {e}")))?;
        if d.n.is_some_and(|n| n != t.n()) || d.m.is_some_and(|m| m != t.m()) {
            return Err(Error::DimensionMismatch(
                format!("{},{}", t.n(), t.m()),
                format!("{},{}", d.n.unwrap_or(t.n()), d.m.unwrap_or(t.m())),
            )
            .into());
        }
        return Ok(t);
    }
    let (n, m) = need_dims(d)?;
    Ok(Tableau::parse_text(text, n, m)?)
}

/// A monomial as text (`Y[1,-5] Y[1,-3]^2`) or JSON `[[i, s, exponent], ...]`.
fn parse_monomial(text: &str) -> std::result::Result<DominantMonomial, Failure> {
    let text = text.trim();
    if text.starts_with('[') {
        return serde_json::from_str(text).map_err(|e| input_error(format!("monomial JSON: {e}")));
    }
    Ok(DominantMonomial::parse_text(text)?)
}

fn parse_seed(text: &str) -> std::result::Result<Seed, Failure> {
    serde_json::from_str(text.trim()).map_err(|e| input_error(format!("seed JSON: {e}")))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn random_point(n: usize, m: usize, seed: u64) -> std::result::Result<RationalMatrix, Failure> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    Ok(RationalMatrix::random_totally_positive(n, m, &mut rng).normalize_frozens()?)
}

fn execute(cli: &Cli, stdin: &mut (dyn Read + Send)) -> Out {
    let engine = Engine::new(cli.max_k);
    match &cli.command {
        Command::Convert { dims, from, to, reduce, payload } => {
            let text = read_payload(payload, stdin)?;
            let mono = match from {
                Kind::Tableau => psi(&parse_tableau(&text, dims)?),
                Kind::Monomial => parse_monomial(&text)?,
                Kind::Multisegment => multisegment_to_monomial(&Multisegment::parse_text(&text)?),
            };
            if let (Some(n), Some(m)) = (dims.n, dims.m) {
                mono.check_window(n, m)?;
            }
            let s = match to {
                Kind::Monomial => mono.to_text(),
                Kind::Multisegment => monomial_to_multisegment(&mono)?.to_text(),
                Kind::Tableau => {
                    let (n, m) = need_dims(dims)?;
                    let mut t = phi_tilde(&mono, n, m)?;
                    if *reduce {
                        t = t.reduce();
                    }
                    if cli.json {
                        return Ok((to_json(&t), EXIT_OK));
                    }
                    t.to_text()
                }
            };
            Ok((line(s), EXIT_OK))
        }
        Command::Factor { dims, payload } => {
            let t = parse_tableau(&read_payload(payload, stdin)?, dims)?;
            let (tp, frac) = t.small_gaps_form();
            let mut s = String::new();
            writeln!(s, "small-gaps: {}", tp.to_text()).unwrap();
            writeln!(s, "frozen: {}", frac).unwrap();
            let cols: Vec<String> = tp.columns().iter().map(|c| c.to_string()).collect();
            writeln!(s, "fundamental: {}", if cols.is_empty() { "()".to_string() } else { cols.join(" ") }).unwrap();
            Ok((s, EXIT_OK))
        }
        Command::Ch { dims, payload } => {
            let t = parse_tableau(&read_payload(payload, stdin)?, dims)?;
            let r = engine.ch(&t)?;
            let code = if r.in_ring { EXIT_OK } else { EXIT_LOCALIZED };
            let s = if cli.json { to_json(&r.value) } else { line(r.value.to_text()) };
            Ok((s, code))
        }
        Command::Qchar { n, payload } => {
            let mono = parse_monomial(&read_payload(payload, stdin)?)?;
            let f = engine.qchar_formula(&mono, *n)?;
            let s = if cli.json { to_json(&f) } else { line(f.to_text()) };
            Ok((s, EXIT_OK))
        }
        Command::Reality { dims, payload } => {
            let t = parse_tableau(&read_payload(payload, stdin)?, dims)?;
            let r = engine.reality_test(&t)?;
            if cli.json {
                let v = serde_json::json!({ "real": r.real, "certificate": r.certificate });
                return Ok((to_json(&v), EXIT_OK));
            }
            let s = if r.real { line("real") } else { format!("nonreal\n{}\n", r.certificate.to_text()) };
            Ok((s, EXIT_OK))
        }
        Command::Prime { dims, payload } => {
            let t = parse_tableau(&read_payload(payload, stdin)?, dims)?;
            let r = engine.primeness_test(&t)?;
            if cli.json {
                let v = serde_json::json!({ "prime": r.prime, "factors": r.factors });
                return Ok((to_json(&v), EXIT_OK));
            }
            let s = match r.factors {
                None => line("prime"),
                Some((a, b)) => format!("composite\n{}\n{}\n", a.to_text(), b.to_text()),
            };
            Ok((s, EXIT_OK))
        }
        Command::Zelevinsky { payload } => {
            let ms = Multisegment::parse_text(&read_payload(payload, stdin)?)?;
            Ok((line(zelevinsky_dual(&ms).to_text()), EXIT_OK))
        }
        Command::Lm { payload } => {
            let ms = Multisegment::parse_text(&read_payload(payload, stdin)?)?;
            let s = match lm_reality_witness(&ms) {
                (LmVerdict::Real, _) => line("real"),
                (LmVerdict::NotApplicable, _) => line("not regular"),
                (LmVerdict::NonReal, Some((sub, p))) => format!("nonreal {p}\n{}\n", sub.to_text()),
                (LmVerdict::NonReal, None) => line("nonreal"),
            };
            Ok((s, EXIT_OK))
        }
        Command::Gvector { dims, from, factor, payload } => {
            let text = read_payload(payload, stdin)?;
            let (n, m) = need_dims(dims)?;
            if m < n + 2 {
                return Err(input_error("g-vectors need m >= n + 2"));
            }
            let (mono, t) = match from {
                Kind::Tableau => {
                    let t = parse_tableau(&text, dims)?;
                    (psi(&t), Some(t))
                }
                Kind::Monomial => (parse_monomial(&text)?, None),
                Kind::Multisegment => (multisegment_to_monomial(&Multisegment::parse_text(&text)?), None),
            };
            mono.check_window(n, m)?;
            let g = g_vector(&mono, n, m - n - 1)?;
            let fact = match (factor, t) {
                (true, Some(t)) => Some(g_factorization(&t, &initial_seed(n, m)?)?),
                (true, None) => Some(g_factorization(&phi_tilde(&mono, n, m)?, &initial_seed(n, m)?)?),
                _ => None,
            };
            if cli.json {
                let v = serde_json::json!({ "gvector": g, "factorization": fact });
                return Ok((to_json(&v), EXIT_OK));
            }
            let mut s = line(g.to_text());
            if let Some(f) = fact {
                let parts: Vec<String> = f.iter().map(|(id, e)| format!("{id}^{e}")).collect();
                writeln!(s, "factorization: {}", parts.join(" ")).unwrap();
            }
            Ok((s, EXIT_OK))
        }
        Command::Seed { dims } => {
            let (n, m) = need_dims(dims)?;
            Ok((to_json(&initial_seed(n, m)?), EXIT_OK))
        }
        Command::Mutate { at, steps, check, payload } => {
            let mut seed = parse_seed(&read_payload(payload, stdin)?)?;
            let mut path = at.clone();
            if let Some(file) = steps {
                let text = std::fs::read_to_string(file).map_err(|e| input_error(format!("{file}: {e}")))?;
                let more: Vec<String> =
                    serde_json::from_str(&text).map_err(|e| input_error(format!("steps JSON: {e}")))?;
                path.extend(more);
            }
            for id in &path {
                let k = seed.quiver().index_of(id)?;
                if *check && !seed.exchange_check(&engine, k)? {
                    return Err(input_error(format!("exchange relation fails at {id}")));
                }
                seed = seed.mutate(k)?;
            }
            Ok((to_json(&seed), EXIT_OK))
        }
        Command::Closure { dims, depth, payload } => {
            let seed = match (dims.n, dims.m, &payload.input) {
                (Some(n), Some(m), None) => initial_seed(n, m)?,
                _ => parse_seed(&read_payload(payload, stdin)?)?,
            };
            let c = closure(&seed, *depth)?;
            if cli.json {
                let v = serde_json::json!({
                    "complete": c.complete,
                    "clusters": c.seeds,
                    "variables": c.variables,
                });
                return Ok((to_json(&v), EXIT_OK));
            }
            let mut s = String::new();
            writeln!(s, "clusters: {}{}", c.seeds, if c.complete { "" } else { " (depth limit reached)" }).unwrap();
            writeln!(s, "variables: {}", c.variables.len()).unwrap();
            for t in &c.variables {
                writeln!(s, "{}", t.to_text()).unwrap();
            }
            Ok((s, EXIT_OK))
        }
        Command::ImmanantCheck { dims, points, seed, payload } => {
            let t = parse_tableau(&read_payload(payload, stdin)?, dims)?;
            let (tp, _) = t.small_gaps_form();
            let mut s = String::new();
            let mut all = true;
            for p in 0..*points {
                let x = random_point(t.n(), t.m(), seed.wrapping_add(p as u64))?;
                let ok = engine.immanant_check(&tp, &x)?;
                all &= ok;
                writeln!(s, "point {p}: {}", if ok { "agree" } else { "differ" }).unwrap();
            }
            writeln!(s, "{}", if all { "ok" } else { "mismatch" }).unwrap();
            Ok((s, if all { EXIT_OK } else { EXIT_INPUT }))
        }
        Command::Eval { dims, point, seed, payload } => {
            let t = parse_tableau(&read_payload(payload, stdin)?, dims)?;
            let x = match point {
                Some(p) => {
                    let text = match p.strip_prefix('@') {
                        Some(path) => {
                            std::fs::read_to_string(path).map_err(|e| input_error(format!("{path}: {e}")))?
                        }
                        None => p.clone(),
                    };
                    let rows: Vec<Vec<serde_json::Value>> =
                        serde_json::from_str(&text).map_err(|e| input_error(format!("point JSON: {e}")))?;
                    let rows: Vec<Vec<String>> = rows
                        .into_iter()
                        .map(|r| r.into_iter().map(|v| v.as_str().map_or_else(|| v.to_string(), str::to_string)).collect())
                        .collect();
                    let x = RationalMatrix::from_strings(&rows)?;
                    if x.n() != t.n() || x.m() != t.m() {
                        return Err(Error::DimensionMismatch(
                            format!("{}x{}", x.n(), x.m()),
                            format!("{}x{}", t.n(), t.m()),
                        )
                        .into());
                    }
                    x
                }
                None => random_point(t.n(), t.m(), *seed)?,
            };
            let r = engine.ch(&t)?;
            let v = r.value.evaluate(&x)?;
            let code = if r.in_ring { EXIT_OK } else { EXIT_LOCALIZED };
            Ok((line(v), code))
        }
    }
}
