//! Command-line front end.
//!
//! Exit codes: 0 success, 2 malformed input or options, 3 violated
//! precondition, 4 resource limit, 5 internal consistency failure.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::calculus::{delta, delta_k, d_prefix, d_slot, hodge_prefix, hodge_slot, poincare_homotopy, MetricKind};
use crate::charges::{
    bump_field, boundary_field, default_epsilon, flux_quantization_at, fracton_moments, gaussian_burst,
    memory_balance, refinement, NewsProfile, DEFAULT_RESOLUTION, DEFAULT_STEPS, REFINEMENT_STEPS,
};
use crate::complexes::{
    as_reduction, build_complex, cohomology, de_rham_reference, ComplexSpec, Domain, Truncation, DEFAULT_MAX_DIM,
};
use crate::document::{form_to_json, parse_form_str, provenance, CoefficientDomain, FormDocument};
use crate::duality::{build_duality_maps, DualityOptions};
use crate::error::{Error, Result};
use crate::sample::random_polynomial_form;
use crate::tensor::{project, young_projector, Shape};

#[derive(Parser, Debug)]
#[command(name = "multiform", version, about = "Exact calculus of mixed-symmetry tensors")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Coefficient domain of truncated computations.
    #[arg(long, value_enum, global = true)]
    pub domain: Option<DomainArg>,
    /// Polynomial degree cap on a box.
    #[arg(long, global = true)]
    pub degree_cap: Option<u32>,
    /// Frequency cap K on a torus.
    #[arg(long, global = true)]
    pub freq_cap: Option<u32>,
    #[arg(long, value_enum, global = true, default_value = "euclidean")]
    pub metric: MetricArg,
    /// Worker threads; 1 forces fully deterministic scheduling.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest node dimension before a resource error.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainArg {
    Box,
    Torus,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetricArg {
    Euclidean,
    Minkowski,
}

impl From<MetricArg> for MetricKind {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Euclidean => MetricKind::Euclidean,
            MetricArg::Minkowski => MetricKind::Minkowski,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ComplexArgs {
    #[arg(long = "dim", short = 'D')]
    pub dim: usize,
    /// Number of slots N.
    #[arg(long, short = 'N')]
    pub arity: usize,
    /// k_1,…,k_{N−1}.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub augmentation: Vec<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Young-project a multi-form document onto its principal subspace.
    Project {
        #[arg(long)]
        input: PathBuf,
        /// Expected label; must match the document signature.
        #[arg(long, value_delimiter = ',')]
        label: Option<Vec<usize>>,
    },
    /// Apply d^(i), d^(1)…d^(k) or δ^(k) to a document.
    Differentiate {
        #[arg(long)]
        input: PathBuf,
        /// Single slot differential d^(i), 1-based.
        #[arg(long, conflicts_with_all = ["prefix", "delta"])]
        slot: Option<usize>,
        /// Unprojected composite d^(k)∘…∘d^(1).
        #[arg(long, conflicts_with = "delta")]
        prefix: Option<usize>,
        /// De Rham-like δ^(k); without a value, δ^(N).
        #[arg(long, num_args = 0..=1, default_missing_value = "0")]
        delta: Option<usize>,
    },
    /// Hodge dual on one slot or on the first k slots.
    Hodge {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, conflicts_with = "prefix")]
        slot: Option<usize>,
        #[arg(long)]
        prefix: Option<usize>,
    },
    /// Potential of a closed polynomial multi-form.
    Homotopy {
        #[arg(long)]
        input: PathBuf,
    },
    /// Node shapes and edge orders of an augmented complex.
    BuildComplex {
        #[command(flatten)]
        complex: ComplexArgs,
    },
    /// De Rham-like cohomology dimensions on a truncation.
    Cohomology {
        #[command(flatten)]
        complex: ComplexArgs,
    },
    /// Reduction to the asymptotic-symmetry spaces at one position.
    AsCheck {
        #[command(flatten)]
        complex: ComplexArgs,
        #[arg(long)]
        position: usize,
        /// On a torus, leave out the zero-frequency block.
        #[arg(long)]
        skip_zero_mode: bool,
    },
    /// Duality maps between a shape and its dual descriptions.
    Duality {
        #[arg(long = "dim", short = 'D')]
        dim: usize,
        #[arg(long, value_delimiter = ',')]
        signature: Vec<usize>,
        /// Abort when a cohomology certificate does not vanish.
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = 20)]
        test_fields: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Memory balance law for a radiative burst.
    Memory {
        #[arg(long = "dim", short = 'D', default_value_t = 4)]
        dim: usize,
        /// Named synthetic burst.
        #[arg(long, default_value = "gaussian")]
        burst: String,
        /// News profile document; overrides the named burst.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        steps: usize,
        /// Duality ratios η_j for dual channels, as rationals.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        eta: Vec<String>,
    },
    /// Flux of a quantized field strength through a linking sphere.
    Flux {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Codimension of the defect.
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
    },
    /// Charge and dipole moment of a fracton Gauss-law source.
    Fracton {
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, value_enum, default_value = "bump")]
        field: FractonField,
    },
    /// Deterministic battery of small checks across all modules.
    Selftest,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FractonField {
    Bump,
    Boundary,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(t) = cli.global.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return 2;
        }
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match execute(&cli).and_then(|v| emit(&cli.global, &v)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> ! {
    std::process::exit(run(std::env::args_os()))
}

fn emit(g: &GlobalOpts, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v).map_err(|e| Error::Consistency(e.to_string()))?;
    text.push('\n');
    match &g.out {
        Some(p) => std::fs::write(p, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_form(path: &PathBuf) -> Result<FormDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_form_str(&text)
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Consistency(e.to_string()))
}

fn with_provenance(mut report: Value, module: &str, parameters: Value) -> Value {
    if let Value::Object(m) = &mut report {
        m.insert("provenance".into(), provenance(module, parameters));
    }
    report
}

fn truncation(g: &GlobalOpts, default: DomainArg) -> Result<Truncation> {
    let t = match g.domain.unwrap_or(default) {
        DomainArg::Box => Truncation::boxed(g.degree_cap.unwrap_or(4)),
        DomainArg::Torus => Truncation::torus(g.freq_cap.unwrap_or(1)),
    };
    Ok(t.with_max_dim(g.max_dim))
}

fn complex_of(c: &ComplexArgs) -> Result<ComplexSpec> {
    let aug = if c.augmentation.is_empty() && c.arity > 1 {
        vec![0; c.arity - 1]
    } else {
        c.augmentation.clone()
    };
    build_complex(c.dim, c.arity, &aug)
}

fn slot_index(slot: usize) -> Result<usize> {
    slot.checked_sub(1)
        .ok_or_else(|| Error::Domain("slots are numbered from 1".into()))
}

macro_rules! each_form {
    ($doc:expr, |$f:ident, $dom:ident| $body:expr) => {{
        let $dom = $doc.domain();
        match $doc {
            FormDocument::Rational($f) => $body,
            FormDocument::Polynomial($f, _) => $body,
            FormDocument::Trig($f, _) => $body,
        }
    }};
}

fn execute(cli: &Cli) -> Result<Value> {
    let g = &cli.global;
    match &cli.command {
        Command::Project { input, label } => {
            let doc = read_form(input)?;
            if let Some(l) = label {
                if l.as_slice() != doc.shape().signature() {
                    return Err(Error::Shape(format!(
                        "label {:?} does not match the document signature {:?}",
                        l,
                        doc.shape().signature()
                    )));
                }
            }
            each_form!(&doc, |f, dom| Ok(form_to_json(&project(f)?, &dom)))
        }
        Command::Differentiate { input, slot, prefix, delta: k } => {
            let doc = read_form(input)?;
            let out = each_form!(&doc, |f, dom| {
                let r = match (slot, prefix, k) {
                    (Some(s), _, _) => d_slot(f, slot_index(*s)?)?,
                    (_, Some(p), _) => d_prefix(f, *p)?,
                    (_, _, Some(0)) => delta(f)?,
                    (_, _, Some(k)) => delta_k(f, *k)?,
                    _ => return Err(Error::Parse("choose one of --slot, --prefix or --delta".into())),
                };
                match r {
                    Some(r) => form_to_json(&r, &dom),
                    None => json!({"top_degree": true, "result": null}),
                }
            });
            Ok(out)
        }
        Command::Hodge { input, slot, prefix } => {
            let doc = read_form(input)?;
            let metric = MetricKind::from(g.metric).build(doc.shape().dim());
            each_form!(&doc, |f, dom| {
                let r = match (slot, prefix) {
                    (Some(s), _) => hodge_slot(f, slot_index(*s)?, &metric)?,
                    (_, Some(k)) => hodge_prefix(f, *k, &metric)?,
                    _ => return Err(Error::Parse("choose one of --slot or --prefix".into())),
                };
                Ok(form_to_json(&r, &dom))
            })
        }
        Command::Homotopy { input } => {
            let doc = read_form(input)?;
            let FormDocument::Polynomial(f, cap) = doc else {
                return Err(Error::UnsupportedDomain(
                    "the homotopy needs polynomial coefficients on a box".into(),
                ));
            };
            let w = poincare_homotopy(&f)?;
            let dom = CoefficientDomain::Polynomial {
                degree_cap: cap + w.order as u32,
            };
            Ok(with_provenance(
                json!({
                    "order": w.order,
                    "descent_steps": w.descent_steps,
                    "completed_by_solve": w.completed_by_solve,
                    "potential": form_to_json(&w.potential, &dom),
                }),
                "calculus::homotopy",
                json!({"degree_cap": cap}),
            ))
        }
        Command::BuildComplex { complex } => {
            let spec = complex_of(complex)?;
            let nodes: Vec<Value> = spec
                .nodes
                .iter()
                .enumerate()
                .map(|(j, s)| json!({"position": j, "signature": s.signature(), "closure_order": spec.closure_order(j)}))
                .collect();
            Ok(with_provenance(
                json!({"D": spec.dim, "N": spec.arity, "augmentation": spec.augmentation, "nodes": nodes, "edges": spec.edges}),
                "complexes::spec",
                json!({}),
            ))
        }
        Command::Cohomology { complex } => {
            let spec = complex_of(complex)?;
            let trunc = truncation(g, DomainArg::Torus)?;
            let report = cohomology(&spec, &trunc)?;
            let mut v = to_value(&report)?;
            if let Domain::Torus { .. } = trunc.domain {
                let reference = de_rham_reference(spec.dim, &trunc)?;
                let pass = reference == report.h();
                if let Value::Object(m) = &mut v {
                    m.insert("h".into(), json!(report.h()));
                    m.insert("de_rham_reference".into(), json!(reference));
                    m.insert("pass".into(), json!(pass));
                }
            } else if let Value::Object(m) = &mut v {
                m.insert("h".into(), json!(report.h()));
            }
            Ok(with_provenance(v, "complexes::cohomology", to_value(&trunc)?))
        }
        Command::AsCheck { complex, position, skip_zero_mode } => {
            let spec = complex_of(complex)?;
            let trunc = truncation(g, DomainArg::Box)?;
            let r = as_reduction(&spec, *position, &trunc, *skip_zero_mode)?;
            Ok(with_provenance(to_value(&r)?, "complexes::reduction", to_value(&trunc)?))
        }
        Command::Duality { dim, signature, strict, test_fields, seed } => {
            if g.domain == Some(DomainArg::Torus) {
                return Err(Error::UnsupportedDomain(
                    "exact field strengths on a torus have no constant part, so every charge vanishes; use a box".into(),
                ));
            }
            let shape = Shape::new(*dim, signature.clone())?;
            let opts = DualityOptions {
                degree_cap: g.degree_cap.unwrap_or(2),
                metric: g.metric.into(),
                strict: *strict,
                test_fields: *test_fields,
                seed: *seed,
                max_dim: g.max_dim,
                ..DualityOptions::default()
            };
            let r = build_duality_maps(&shape, &opts)?;
            Ok(with_provenance(
                to_value(&r)?,
                "duality",
                json!({"degree_cap": opts.degree_cap, "metric": opts.metric, "seed": opts.seed}),
            ))
        }
        Command::Memory { dim, burst, input, resolution, steps, eta } => {
            let profile: NewsProfile = match input {
                Some(p) => {
                    let text =
                        std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("news profile: {e}")))?
                }
                None if burst == "gaussian" => gaussian_burst(*dim, *resolution, *steps)?,
                None => return Err(Error::Parse(format!("unknown burst {burst:?}"))),
            };
            let etas: Vec<f64> = eta
                .iter()
                .map(|s| crate::rational::parse_rational(s).map(|r| crate::rational::rational_to_f64(&r)))
                .collect::<Result<_>>()?;
            let sphere = profile.sphere()?;
            let eps = default_epsilon(&sphere, profile.rank);
            let balance = memory_balance(&profile, &eps, &etas)?;
            let refine = refinement(profile.dim, profile.resolution.min(12), &REFINEMENT_STEPS)?;
            Ok(with_provenance(
                json!({"balance": balance, "refinement": refine, "nodes": sphere.len(), "u_samples": profile.u.len()}),
                "charges::memory",
                json!({"D": profile.dim, "resolution": profile.resolution, "steps": profile.u.len() - 1}),
            ))
        }
        Command::Flux { n, k, radius, resolution } => {
            let r = flux_quantization_at(*n, *k, *radius, *resolution)?;
            Ok(with_provenance(to_value(&r)?, "charges::flux", json!({"resolution": resolution})))
        }
        Command::Fracton { grid, field } => {
            let e = match field {
                FractonField::Bump => bump_field(*grid)?,
                FractonField::Boundary => boundary_field(*grid)?,
            };
            let m = fracton_moments(&e)?;
            let mut v = to_value(&m)?;
            if let Value::Object(o) = &mut v {
                o.insert("relative".into(), json!(m.relative()));
                o.insert("status".into(), json!(if m.boundary_warning { "warning" } else { "ok" }));
            }
            Ok(with_provenance(v, "charges::fracton", json!({"grid": grid})))
        }
        Command::Selftest => selftest(),
    }
}

/// Small deterministic battery; the report holds results only, no timings.
pub fn selftest() -> Result<Value> {
    let mut checks: Vec<Value> = Vec::new();
    let mut all = true;
    let mut record = |name: &str, pass: bool, detail: Value| {
        all &= pass;
        checks.push(json!({"name": name, "pass": pass, "detail": detail}));
    };

    for (dim, sig) in [(3usize, vec![1usize, 1]), (4, vec![2, 1]), (4, vec![1, 1, 1])] {
        let shape = Shape::new(dim, sig.clone())?;
        let p = young_projector(&shape)?;
        record(
            &format!("projector D{dim} {sig:?}"),
            p.is_idempotent(),
            json!({"rank": p.rank()}),
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut nilpotent = true;
    for (dim, sig) in [(3usize, vec![0usize, 0]), (4, vec![1, 0]), (4, vec![1, 1])] {
        let shape = Shape::new(dim, sig)?;
        for _ in 0..5 {
            let f = random_polynomial_form(&shape, 4, 4, &mut rng);
            if let Some(once) = delta(&f)? {
                if let Some(twice) = delta(&once)? {
                    nilpotent &= twice.is_zero();
                }
            }
        }
    }
    record("delta squared vanishes", nilpotent, json!({}));

    let shape = Shape::new(3, vec![0, 0])?;
    let s0 = random_polynomial_form(&shape, 3, 3, &mut rng);
    let t = delta(&s0)?.ok_or_else(|| Error::Consistency("δ of a scalar vanished".into()))?;
    let w = poincare_homotopy(&t)?;
    let back = delta(&w.potential)?.map(|b| b == t).unwrap_or(false);
    record("homotopy round trip", back, json!({"descent_steps": w.descent_steps}));

    let trunc = Truncation::torus(1);
    let h2 = de_rham_reference(2, &trunc)?;
    record("de Rham reference D=2", h2 == vec![1, 2, 1], json!({"h": h2}));

    let d = build_duality_maps(&Shape::new(4, vec![1])?, &DualityOptions::default())?;
    record(
        "duality D=4 {1}",
        d.all_checks_pass(),
        json!({"eta": d.etas().iter().map(crate::rational::format_rational).collect::<Vec<_>>(), "n": d.on_shell_dimension}),
    );

    let p = gaussian_burst(4, 8, 64)?;
    let sphere = p.sphere()?;
    let b = memory_balance(&p, &default_epsilon(&sphere, p.rank), &[])?;
    record(
        "memory balance D=4",
        b.residual <= 1e-8 * b.delta_direct.abs().max(1.0),
        json!({"delta_direct": b.delta_direct, "delta_news": b.delta_news}),
    );

    let f = flux_quantization_at(3, 3, 1.0, 16)?;
    record("flux n=3 k=3", f.error < 1e-8, json!({"value": f.value}));

    let m = fracton_moments(&bump_field(24)?)?;
    record("fracton moments", m.relative() < 1e-6, json!({"charge": m.charge, "dipole": m.dipole}));

    let report = json!({"pass": all, "checks": checks});
    if !all {
        return Err(Error::Consistency(format!("self-test failed: {report}")));
    }
    Ok(with_provenance(report, "cli::selftest", json!({"seed": 11})))
}
