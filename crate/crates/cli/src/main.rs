//! Command line front end for the algebra library.
//!
//! * Global flags pick the coefficient field (`--field q` or
//!   `--field fp:<p>`), the defining polynomial (`--h "x^2"`), JSON
//!   output (`--json`, versioned under `"schema": "ahlib/1"`), and the
//!   probe seed (`--seed`).
//! * One subcommand per library operation: element arithmetic, the
//!   derivation, central elements, the partition table, module
//!   construction and analysis, classification, and induced elements.
//! * Exit codes: 0 on success, 1 on domain errors, 2 on usage or parse
//!   errors.

use ahlib::{
    ann_bounded, classify_char_p, d_annihilator, embed_weyl, expand_delta_x, induced_generates,
    induced_reduce, is_indecomposable, is_irreducible_seeded, is_uniserial, l_module_factor,
    l_z_beta, left_ideal_window, n_module, n_quotient_hom, n_quotient_target, one_dim,
    same_annihilator, submodule_lattice, weight_decomposition, weyl_restrict, AhContext,
    AhElement, AhError, FieldContext, FinModule, InducedElement, PartitionCoeffTable, Poly,
    Scalar, ScalarMat, Verdict, DEFAULT_SEED,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ahlib",
    version,
    about = "Exact computations in the algebras A_h: y x = x y + h(x)"
)]
struct Cli {
    /// Coefficient field: `q` for the rationals, `fp:<p>` for a prime field.
    #[arg(long, global = true, default_value = "q")]
    field: String,

    /// Defining polynomial h, e.g. "x^2" or "2*x^2 + 3".
    #[arg(long, global = true, default_value = "x")]
    h: String,

    /// Emit JSON (versioned under "schema": "ahlib/1") instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for the randomized probes used by some analyses.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Multiply two elements and print the normal form.
    Mul { a: String, b: String },
    /// Commutator [a, b] = ab - ba.
    Comm { a: String, b: String },
    /// Power a^e in normal form.
    Pow { a: String, e: u32 },
    /// Exact one-sided division: find c with d*c = w (left) or c*d = w (right).
    Divide {
        #[arg(long, value_enum, default_value_t = Side::Left)]
        side: Side,
        d: String,
        w: String,
    },
    /// Apply the derivation delta(r) = r' h, k times.
    Delta {
        r: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Expand delta^k(x) through the partition coefficient table.
    DeltaExpand { k: u32 },
    /// The central element z_p = y(y + h')...(y + (p-1)h') in characteristic p.
    Zp,
    /// Basis of the center intersected with a degree window.
    Center {
        #[arg(long, default_value_t = 4)]
        dx: u32,
        #[arg(long, default_value_t = 4)]
        dy: u32,
    },
    /// Basis of the centralizer of an element within a degree window.
    Centralizer {
        a: String,
        #[arg(long, default_value_t = 4)]
        dx: u32,
        #[arg(long, default_value_t = 4)]
        dy: u32,
    },
    /// Window-bounded normality check for an element.
    Normal {
        b: String,
        #[arg(long, default_value_t = 3)]
        dx: u32,
        #[arg(long, default_value_t = 3)]
        dy: u32,
    },
    /// Image of an element under the embedding into the Weyl algebra (h = 1).
    Embed { a: String },
    /// Partition coefficient table rows 1..k with factorial checks.
    Ctable { k: u32 },
    /// Intersection of the left ideal generated by elements with a window.
    IdealWindow {
        #[arg(long, default_value_t = 3)]
        dx: u32,
        #[arg(long, default_value_t = 3)]
        dy: u32,
        gens: Vec<String>,
    },
    /// Classify the irreducible modules with a given central character
    /// (characteristic p).
    Classify { lambda: String, beta: String },
    /// Build and analyze finite dimensional modules.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Build and transform induced module elements.
    #[command(subcommand)]
    Induced(InducedCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Construct a module and print its JSON form.
    #[command(subcommand)]
    Build(BuildCmd),
    /// Re-verify the defining relation on a stored module.
    Check { path: String },
    /// Exhaustive submodule lattice (small finite fields).
    Lattice { path: String },
    /// Irreducibility verdict.
    Irreducible { path: String },
    /// Indecomposability verdict.
    Indecomposable { path: String },
    /// Uniseriality verdict.
    Uniserial { path: String },
    /// Monic generator of the polynomial-subalgebra annihilator.
    Dann { path: String },
    /// Generalized weight space decomposition.
    Weights { path: String },
    /// Basis of the annihilator within a degree window.
    Ann {
        path: String,
        #[arg(long, default_value_t = 3)]
        dx: u32,
        #[arg(long, default_value_t = 3)]
        dy: u32,
    },
    /// Compare the window annihilators of two modules.
    SameAnn {
        path1: String,
        path2: String,
        #[arg(long, default_value_t = 3)]
        dx: u32,
        #[arg(long, default_value_t = 3)]
        dy: u32,
    },
    /// Direct sum of two stored modules.
    DirectSum { path1: String, path2: String },
}

#[derive(Subcommand)]
enum BuildCmd {
    /// One dimensional module: x acts by lambda, y by mu; needs h(lambda) = 0.
    OneDim { lambda: String, mu: String },
    /// Uniserial module of dimension n+1 over the ideal (x - lambda)^(n+1).
    NModule {
        lambda: String,
        #[arg(long, default_value = "0")]
        q: String,
        #[arg(long, default_value_t = 0)]
        n: u32,
    },
    /// Quotient of the induced module by a prime gbar = y^n - sum g_j y^j.
    LFactor {
        f: String,
        /// Coefficients g_0 g_1 ... g_{n-1} of gbar.
        g: Vec<String>,
    },
    /// The p-dimensional module at lambda with h(lambda) != 0.
    #[command(name = "l-z-beta")]
    LZBeta { lambda: String, beta: String },
    /// The quotient target D/(f) with y acting by r -> q r + delta(r).
    QuotientTarget {
        f: String,
        #[arg(long, default_value = "0")]
        q: String,
    },
    /// Restrict a Weyl algebra module (Y X - X Y = I) along the embedding.
    WeylRestrict { path: String },
}

#[derive(Subcommand)]
enum InducedCmd {
    /// The canonical generator of the induced module over (f).
    Generator { f: String },
    /// Multiply by f: one descent step (characteristic 0, f not dividing h).
    Reduce { path: String },
    /// Full descent certifying the element generates; prints the chain.
    Generates { path: String },
    /// Image under the quotient homomorphism onto the target for q.
    Hom {
        path: String,
        #[arg(long, default_value = "0")]
        q: String,
    },
    /// Act by an algebra element.
    Act { path: String, a: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                AhError::ParseError(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

/// Either plain text or a JSON document under the versioned schema key.
struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, text: String, mut value: Value) {
        if self.json {
            if let Value::Object(map) = &mut value {
                map.insert("schema".into(), json!("ahlib/1"));
            }
            write_line(&serde_json::to_string_pretty(&value).unwrap());
        } else {
            write_line(&text);
        }
    }
}

/// Print one line, exiting quietly if the reader closed the pipe.
fn write_line(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{s}").is_err() {
        std::process::exit(0);
    }
}

fn read_input(path: &str) -> Result<Value, AhError> {
    let data = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| AhError::ParseError(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| AhError::ParseError(format!("reading {path}: {e}")))?
    };
    let v: Value = serde_json::from_str(&data)
        .map_err(|e| AhError::ParseError(format!("malformed JSON in {path}: {e}")))?;
    // Accept both a bare document and the enveloped CLI output.
    if let Value::Object(map) = &v {
        for key in ["module", "element", "result"] {
            if let Some(inner) = map.get(key) {
                if inner.is_object() {
                    return Ok(inner.clone());
                }
            }
        }
    }
    Ok(v)
}

fn load_module(ctx: &AhContext, path: &str) -> Result<FinModule, AhError> {
    FinModule::from_json(ctx, &read_input(path)?)
}

fn load_induced(ctx: &AhContext, path: &str) -> Result<InducedElement, AhError> {
    InducedElement::from_json(ctx, &read_input(path)?)
}

fn elements_json(elems: &[AhElement]) -> Value {
    Value::Array(elems.iter().map(|e| e.to_json()).collect())
}

fn elements_text(elems: &[AhElement]) -> String {
    if elems.is_empty() {
        return "(empty)".into();
    }
    elems
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

fn matrix_json(m: &ScalarMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|c| Value::String(c.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn verdict_text(v: &Verdict) -> String {
    let mut out = match v.value {
        ahlib::Answer::Yes => "yes".to_string(),
        ahlib::Answer::No => "no".to_string(),
        ahlib::Answer::Unknown => "unknown".to_string(),
    };
    if let Some(m) = v.method {
        out.push_str(&format!(
            " ({})",
            match m {
                ahlib::Method::Exhaustive => "exhaustive",
                ahlib::Method::Theorem => "theorem",
                ahlib::Method::DimensionOne => "dimension-one",
            }
        ));
    }
    if let Some(w) = &v.witness {
        match w {
            ahlib::Witness::Vector(vec) => {
                let parts: Vec<String> = vec.iter().map(|c| c.to_string()).collect();
                out.push_str(&format!("; witness vector [{}]", parts.join(", ")));
            }
            ahlib::Witness::Idempotent(_) => out.push_str("; witness idempotent"),
            ahlib::Witness::Factor(s) => out.push_str(&format!("; certificate: {s}")),
        }
    }
    out
}

fn emit_module(out: &Out, m: &FinModule) {
    let doc = m.to_json();
    if out.json {
        out.emit(String::new(), json!({ "module": doc }));
    } else {
        write_line(&serde_json::to_string_pretty(&doc).unwrap());
    }
}

fn scalar_of(ctx: &AhContext, s: &str) -> Result<Scalar, AhError> {
    Scalar::parse(ctx.field(), s)
}

fn poly_of(ctx: &AhContext, s: &str) -> Result<Poly, AhError> {
    Poly::parse(ctx.field(), s)
}

fn elem_of(ctx: &AhContext, s: &str) -> Result<AhElement, AhError> {
    AhElement::parse(ctx, s)
}

fn run(cli: &Cli) -> Result<(), AhError> {
    let field = FieldContext::parse_spec(&cli.field)?;
    let h = Poly::parse(&field, &cli.h)?;
    let ctx = AhContext::new(h)?;
    let out = Out { json: cli.json };

    match &cli.cmd {
        Cmd::Mul { a, b } => {
            let r = elem_of(&ctx, a)?.multiply(&elem_of(&ctx, b)?)?;
            out.emit(r.to_string(), json!({ "element": r.to_json() }));
        }
        Cmd::Comm { a, b } => {
            let r = elem_of(&ctx, a)?.commutator(&elem_of(&ctx, b)?)?;
            out.emit(r.to_string(), json!({ "element": r.to_json() }));
        }
        Cmd::Pow { a, e } => {
            let r = elem_of(&ctx, a)?.pow(*e)?;
            out.emit(r.to_string(), json!({ "element": r.to_json() }));
        }
        Cmd::Divide { side, d, w } => {
            let d = elem_of(&ctx, d)?;
            let w = elem_of(&ctx, w)?;
            let q = match side {
                Side::Left => d.left_divide(&w)?,
                Side::Right => d.right_divide(&w)?,
            };
            match q {
                Some(c) => out.emit(
                    c.to_string(),
                    json!({ "divides": true, "quotient": c.to_json() }),
                ),
                None => out.emit("does not divide".into(), json!({ "divides": false })),
            }
        }
        Cmd::Delta { r, k } => {
            let r = poly_of(&ctx, r)?;
            let d = ctx.delta_k(&r, *k);
            out.emit(d.to_string(), json!({ "poly": d.to_string() }));
        }
        Cmd::DeltaExpand { k } => {
            let d = expand_delta_x(&ctx, *k)?;
            out.emit(d.to_string(), json!({ "poly": d.to_string() }));
        }
        Cmd::Zp => {
            let z = ctx.make_z_p()?;
            out.emit(z.to_string(), json!({ "element": z.to_json() }));
        }
        Cmd::Center { dx, dy } => {
            let basis = ctx.center_bounded(*dx, *dy)?;
            out.emit(
                elements_text(&basis),
                json!({ "basis": elements_json(&basis) }),
            );
        }
        Cmd::Centralizer { a, dx, dy } => {
            let a = elem_of(&ctx, a)?;
            let basis = ctx.centralizer_bounded(&a, *dx, *dy)?;
            out.emit(
                elements_text(&basis),
                json!({ "basis": elements_json(&basis) }),
            );
        }
        Cmd::Normal { b, dx, dy } => {
            let b = elem_of(&ctx, b)?;
            let normal = b.is_normal_bounded(*dx, *dy)?;
            out.emit(
                if normal { "normal" } else { "not normal" }.into(),
                json!({ "normal": normal }),
            );
        }
        Cmd::Embed { a } => {
            let img = embed_weyl(&elem_of(&ctx, a)?);
            out.emit(img.to_string(), json!({ "element": img.to_json() }));
        }
        Cmd::Ctable { k } => {
            let table = PartitionCoeffTable::new(*k)?;
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for kk in 1..=*k {
                lines.push(format!("k={kk}: {}", table.row_display(kk)));
                let entries: Vec<Value> = table
                    .row(kk)
                    .iter()
                    .map(|(mu, c)| {
                        json!({
                            "parts": mu.parts(),
                            "coeff": c.to_string(),
                        })
                    })
                    .collect();
                rows.push(json!({
                    "k": kk,
                    "entries": entries,
                    "sum": table.row_sum(kk).to_string(),
                    "factorial_check": table.factorial_sum_check(kk),
                }));
            }
            out.emit(lines.join("\n"), json!({ "rows": rows }));
        }
        Cmd::IdealWindow { dx, dy, gens } => {
            let gens = gens
                .iter()
                .map(|g| elem_of(&ctx, g))
                .collect::<Result<Vec<_>, _>>()?;
            let basis = left_ideal_window(&ctx, &gens, *dx, *dy)?;
            out.emit(
                elements_text(&basis),
                json!({ "basis": elements_json(&basis) }),
            );
        }
        Cmd::Classify { lambda, beta } => {
            let lambda = scalar_of(&ctx, lambda)?;
            let beta = scalar_of(&ctx, beta)?;
            let c = classify_char_p(&ctx, &lambda, &beta)?;
            let dims: Vec<usize> = c.modules().iter().map(|m| m.dim()).collect();
            out.emit(
                format!("case: {}; module dimensions: {dims:?}", c.case_label()),
                json!({ "classification": c.to_json() }),
            );
        }
        Cmd::Module(mc) => run_module(&ctx, &out, cli.seed, mc)?,
        Cmd::Induced(ic) => run_induced(&ctx, &out, ic)?,
    }
    Ok(())
}

fn run_module(ctx: &AhContext, out: &Out, seed: u64, mc: &ModuleCmd) -> Result<(), AhError> {
    match mc {
        ModuleCmd::Build(bc) => {
            let m = match bc {
                BuildCmd::OneDim { lambda, mu } => {
                    one_dim(ctx, &scalar_of(ctx, lambda)?, &scalar_of(ctx, mu)?)?
                }
                BuildCmd::NModule { lambda, q, n } => {
                    n_module(ctx, &scalar_of(ctx, lambda)?, &poly_of(ctx, q)?, *n)?
                }
                BuildCmd::LFactor { f, g } => {
                    let f = poly_of(ctx, f)?;
                    let g = g
                        .iter()
                        .map(|s| poly_of(ctx, s))
                        .collect::<Result<Vec<_>, _>>()?;
                    l_module_factor(ctx, &f, &g)?
                }
                BuildCmd::LZBeta { lambda, beta } => {
                    l_z_beta(ctx, &scalar_of(ctx, lambda)?, &scalar_of(ctx, beta)?)?
                }
                BuildCmd::QuotientTarget { f, q } => {
                    n_quotient_target(ctx, &poly_of(ctx, f)?, &poly_of(ctx, q)?)?
                }
                BuildCmd::WeylRestrict { path } => {
                    let doc = read_input(path)?;
                    let probe = FinModule::from_json(ctx, &doc);
                    // The stored pair satisfies the Weyl relation, not ours,
                    // so read the matrices leniently through a scratch parse.
                    let (x, y) = match probe {
                        Ok(m) => (m.x_mat().clone(), m.y_mat().clone()),
                        Err(_) => matrices_from_json(ctx, &doc)?,
                    };
                    weyl_restrict(ctx, &x, &y)?
                }
            };
            emit_module(out, &m);
        }
        ModuleCmd::Check { path } => {
            let m = load_module(ctx, path)?;
            out.emit(
                format!("relation holds on a module of dimension {}", m.dim()),
                json!({ "ok": true, "dim": m.dim() }),
            );
        }
        ModuleCmd::Lattice { path } => {
            let m = load_module(ctx, path)?;
            let lat = submodule_lattice(&m)?;
            let text = format!(
                "{} submodules; chain: {}",
                lat.len(),
                if lat.is_chain() { "yes" } else { "no" }
            );
            out.emit(text, json!({ "lattice": lat.to_json() }));
        }
        ModuleCmd::Irreducible { path } => {
            let m = load_module(ctx, path)?;
            let v = is_irreducible_seeded(&m, seed);
            out.emit(verdict_text(&v), json!({ "verdict": v.to_json() }));
        }
        ModuleCmd::Indecomposable { path } => {
            let m = load_module(ctx, path)?;
            let v = is_indecomposable(&m);
            out.emit(verdict_text(&v), json!({ "verdict": v.to_json() }));
        }
        ModuleCmd::Uniserial { path } => {
            let m = load_module(ctx, path)?;
            let v = is_uniserial(&m)?;
            out.emit(verdict_text(&v), json!({ "verdict": v.to_json() }));
        }
        ModuleCmd::Dann { path } => {
            let m = load_module(ctx, path)?;
            let d = d_annihilator(&m);
            out.emit(d.to_string(), json!({ "poly": d.to_string() }));
        }
        ModuleCmd::Weights { path } => {
            let m = load_module(ctx, path)?;
            let spaces = weight_decomposition(&m)?;
            let mut lines = Vec::new();
            let mut arr = Vec::new();
            for w in &spaces {
                lines.push(format!(
                    "prime {}: dimension {}, {}",
                    w.prime,
                    w.basis.nrows(),
                    if w.is_weight {
                        "weight space"
                    } else {
                        "generalized only"
                    }
                ));
                arr.push(json!({
                    "prime": w.prime.to_string(),
                    "basis": matrix_json(&w.basis),
                    "is_weight": w.is_weight,
                }));
            }
            out.emit(lines.join("\n"), json!({ "spaces": arr }));
        }
        ModuleCmd::Ann { path, dx, dy } => {
            let m = load_module(ctx, path)?;
            let basis = ann_bounded(&m, *dx, *dy);
            out.emit(
                elements_text(&basis),
                json!({ "basis": elements_json(&basis) }),
            );
        }
        ModuleCmd::SameAnn {
            path1,
            path2,
            dx,
            dy,
        } => {
            let m1 = load_module(ctx, path1)?;
            let m2 = load_module(ctx, path2)?;
            let cmp = same_annihilator(&m1, &m2, *dx, *dy)?;
            let text = format!(
                "window annihilators {}; window {}",
                if cmp.equal { "equal" } else { "differ" },
                if cmp.window_sufficient {
                    "covers both constructions"
                } else {
                    "may be too small to decide"
                }
            );
            out.emit(
                text,
                json!({ "equal": cmp.equal, "window_sufficient": cmp.window_sufficient }),
            );
        }
        ModuleCmd::DirectSum { path1, path2 } => {
            let m1 = load_module(ctx, path1)?;
            let m2 = load_module(ctx, path2)?;
            emit_module(out, &m1.direct_sum(&m2)?);
        }
    }
    Ok(())
}

/// Pull raw X and Y matrices out of a module-shaped JSON document without
/// re-running the A_h relation check (used by weyl-restrict, whose input
/// satisfies the Weyl relation instead).
fn matrices_from_json(ctx: &AhContext, doc: &Value) -> Result<(ScalarMat, ScalarMat), AhError> {
    let read_mat = |key: &str| -> Result<ScalarMat, AhError> {
        let rows = doc
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| AhError::ParseError(format!("missing matrix {key:?}")))?;
        let mut data = Vec::new();
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| AhError::ParseError(format!("bad row in {key:?}")))?;
            let mut r = Vec::new();
            for cell in row {
                let s = cell
                    .as_str()
                    .ok_or_else(|| AhError::ParseError(format!("bad entry in {key:?}")))?;
                r.push(Scalar::parse(ctx.field(), s)?);
            }
            data.push(r);
        }
        Ok(ScalarMat::from_rows(ctx.field(), data))
    };
    Ok((read_mat("X")?, read_mat("Y")?))
}

fn run_induced(ctx: &AhContext, out: &Out, ic: &InducedCmd) -> Result<(), AhError> {
    let emit_elem = |v: &InducedElement| {
        out.emit(v.to_string(), json!({ "element": v.to_json() }));
    };
    match ic {
        InducedCmd::Generator { f } => {
            let u = InducedElement::generator(ctx, &poly_of(ctx, f)?)?;
            emit_elem(&u);
        }
        InducedCmd::Reduce { path } => {
            let v = load_induced(ctx, path)?;
            emit_elem(&induced_reduce(&v)?);
        }
        InducedCmd::Generates { path } => {
            let v = load_induced(ctx, path)?;
            let trail = induced_generates(&v)?;
            let text = trail
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join("\n");
            let arr: Vec<Value> = trail.iter().map(|t| t.to_json()).collect();
            out.emit(
                format!("{text}\ngenerates: reached the canonical generator"),
                json!({ "generates": true, "chain": arr }),
            );
        }
        InducedCmd::Hom { path, q } => {
            let v = load_induced(ctx, path)?;
            let img = n_quotient_hom(&v, &poly_of(ctx, q)?)?;
            let parts: Vec<String> = img.iter().map(|c| c.to_string()).collect();
            out.emit(
                format!("[{}]", parts.join(", ")),
                json!({ "coords": parts }),
            );
        }
        InducedCmd::Act { path, a } => {
            let v = load_induced(ctx, path)?;
            emit_elem(&v.act_ah(&elem_of(ctx, a)?));
        }
    }
    Ok(())
}
