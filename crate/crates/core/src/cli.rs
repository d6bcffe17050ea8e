//! The `qf` command line: JSON in, one JSON report out.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::clifford::{
    clifford_map, clifford_sum_iso, derived_clifford, h0_derived, h_minus_one_certificate, hyperbolic_action,
};
use crate::complexes::{ChainMap, Complex};
use crate::dga::{
    default_cap, graded_tensor, make_morphism, parse_presentation, parse_presentation_json, presentation_to_json,
    push_class, Presentation, Truncation,
};
use crate::error::{Error, Result};
use crate::json::{
    chain_map_from_json, complex_from_json, form_from_json, form_to_json, pairing_to_json, scalar_to_json,
    witness_from_json, SCHEMA,
};
use crate::linalg::{Field, Matrix, Scalar};
use crate::quadratic::{
    decalage, fiber_product_form, fixture, gw_invariants, hyperbolic, inverse_decalage, is_lagrangian,
    lagrangian_theta, orthogonal_sum, pullback, qf_space_dim, transgress, HomotopyWitness, OrientedAlgebra, Pairing,
    QuadraticForm,
};

#[derive(Parser, Debug)]
#[command(name = "qf", version, about = "Shifted quadratic complexes and derived Clifford algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Weight cap of the truncation F_{≤w}.
    #[arg(long, global = true, default_value_t = 6)]
    wmax: i32,
    /// Degree range `lo..hi` for cohomology reports.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_degrees)]
    degrees: Option<(i32, i32)>,
    /// `Q` or `Fp:<p>`.
    #[arg(long, global = true)]
    field: Option<Field>,
    /// Human-readable output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Basis words per degree; QFLAB_CAP overrides the default.
    #[arg(long, global = true)]
    cap: Option<usize>,
}

fn parse_degrees(s: &str) -> std::result::Result<(i32, i32), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected lo..hi")?;
    let lo: i32 = lo.trim().parse().map_err(|_| format!("bad lower degree {lo:?}"))?;
    let hi: i32 = hi.trim().parse().map_err(|_| format!("bad upper degree {hi:?}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Nondegeneracy of a form.
    CheckNondeg {
        #[arg(long)]
        form: String,
        #[arg(long)]
        complex: Option<String>,
    },
    /// Dimension of shift-s forms up to homotopy.
    QfDim {
        #[arg(long)]
        complex: String,
        #[arg(long, allow_hyphen_values = true)]
        shift: i32,
    },
    /// Orthogonal sum of two forms.
    Sum {
        #[arg(long)]
        form: String,
        #[arg(long)]
        form2: String,
    },
    /// Pullback of a form along a chain map into its carrier.
    Pullback {
        #[arg(long)]
        map: String,
        #[arg(long)]
        form: String,
    },
    /// hyp(C; n, m).
    Hyperbolic {
        #[arg(long)]
        complex: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        n: i32,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        m: i32,
    },
    /// Décalage of an antisymmetric pairing, or its inverse with --inverse.
    Decalage {
        #[arg(long)]
        complex: Option<String>,
        #[arg(long)]
        pairing: Option<String>,
        #[arg(long)]
        form: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        eps: i32,
        #[arg(long)]
        inverse: bool,
    },
    /// Lagrangian test for a map with a null witness.
    Lagrangian {
        #[arg(long)]
        map: String,
        #[arg(long)]
        form: String,
        #[arg(long)]
        witness: Option<String>,
    },
    /// Form on the derived intersection of two lagrangians.
    FiberForm {
        #[arg(long)]
        form: String,
        #[arg(long)]
        map: String,
        #[arg(long)]
        witness: Option<String>,
        #[arg(long)]
        map2: String,
        #[arg(long)]
        witness2: Option<String>,
    },
    /// Transgression along `sphere:d`, `circle` or `point`.
    Transgress {
        #[arg(long)]
        form: String,
        #[arg(long)]
        algebra: String,
    },
    /// Named fixture forms.
    Fixture {
        #[arg(long)]
        name: String,
        /// Comma-separated parameters.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        params: String,
    },
    /// Rank, discriminant and signature over Q.
    GwInvariants {
        #[arg(long)]
        form: String,
        #[arg(long)]
        complex: Option<String>,
    },
    /// Derived Clifford algebras.
    #[command(subcommand)]
    Clifford(CliffordCmd),
    /// Weighted semi-free dgas.
    #[command(subcommand)]
    Dga(DgaCmd),
}

#[derive(Args, Debug)]
struct FormInput {
    #[arg(long)]
    form: String,
    #[arg(long)]
    complex: Option<String>,
}

#[derive(Subcommand, Debug)]
enum CliffordCmd {
    /// The presentation in the textual dga format.
    Present(FormInput),
    /// H⁰ by both routes.
    H0(FormInput),
    /// Truncated cohomology.
    Cohomology(FormInput),
    /// H⁻¹ certificate for q = 0.
    Hminus1 {
        #[arg(long)]
        rank: Option<usize>,
        /// `zero`, `identity` or `diag:a,b,…`.
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        form: Option<String>,
    },
    /// Cliff(C₁ ⊕ C₂) → Cliff(C₁) ⊗ʷ Cliff(C₂).
    SumIso {
        #[arg(long)]
        form: String,
        #[arg(long)]
        form2: String,
    },
    /// Morphism induced by an isometry with witness.
    Map {
        #[arg(long)]
        map: String,
        #[arg(long)]
        form: String,
        #[arg(long)]
        form2: String,
        #[arg(long)]
        witness: Option<String>,
    },
    /// Cl(hyp(kʳ)) acting on Λkʳ.
    HypAction {
        #[arg(long)]
        rank: usize,
    },
}

#[derive(Subcommand, Debug)]
enum DgaCmd {
    /// Parse and check d² = 0.
    Validate {
        #[arg(long)]
        dga: String,
    },
    /// Cohomology of F_{≤w}.
    Cohomology {
        #[arg(long)]
        dga: String,
    },
    /// D₁ ⊗ʷ D₂.
    Tensor {
        #[arg(long)]
        dga: String,
        #[arg(long)]
        dga2: String,
    },
    /// Validate a morphism, optionally pushing a cycle through it.
    Map {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        /// JSON object `{"x":"0","y":"y"}`, inline or a path.
        #[arg(long)]
        images: String,
        #[arg(long)]
        cycle: Option<String>,
    },
}

/// Exit code and the text written to stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read_input(arg: &str) -> Result<(String, String)> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(("inline".into(), arg.to_string()));
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Error::Io(format!("{arg}: {e}")))?;
    Ok((arg.to_string(), text))
}

fn load_json(arg: &str) -> Result<Value> {
    let (name, text) = read_input(arg)?;
    serde_json::from_str(&text).map_err(|e| Error::parse(format!("{name}:{}:{}", e.line(), e.column()), e.to_string()))
}

fn load_presentation(arg: &str, field: Option<Field>) -> Result<Presentation> {
    let (name, text) = if arg.contains(';') && !std::path::Path::new(arg).exists() {
        ("inline".to_string(), arg.to_string())
    } else {
        read_input(arg)?
    };
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| Error::parse(format!("{name}:{}:{}", e.line(), e.column()), e.to_string()))?;
        parse_presentation_json(&v, field)
    } else {
        parse_presentation(&text, field)
    }
}

struct Ctx {
    g: Global,
}

impl Ctx {
    fn cap(&self) -> usize {
        match std::env::var("QFLAB_CAP").ok().and_then(|v| v.trim().parse().ok()) {
            Some(c) => c,
            None => self.g.cap.unwrap_or_else(default_cap),
        }
    }

    fn complex(&self, arg: &str) -> Result<Complex> {
        complex_from_json(&load_json(arg)?, self.g.field)
    }

    fn form(&self, arg: &str, complex: Option<&str>) -> Result<QuadraticForm> {
        let c = complex.map(|c| self.complex(c)).transpose()?;
        form_from_json(&load_json(arg)?, c.as_ref(), self.g.field)
    }

    fn map(&self, arg: &str) -> Result<ChainMap> {
        chain_map_from_json(&load_json(arg)?, self.g.field)
    }

    fn witness(&self, arg: Option<&str>, carrier: &Complex, s: i32) -> Result<HomotopyWitness> {
        match arg {
            None => Ok(HomotopyWitness::zero(carrier, s)),
            Some(a) => witness_from_json(&load_json(a)?, carrier),
        }
    }

    fn degrees(&self, default: (i32, i32)) -> (i32, i32) {
        self.g.degrees.unwrap_or(default)
    }
}

fn truncation_report(pres: &Presentation, w_max: i32, (lo, hi): (i32, i32), cap: usize) -> Result<Value> {
    let tr = Truncation::new(pres, w_max, lo, hi, cap)?;
    let degrees: Vec<Value> = (lo..=hi)
        .map(|deg| {
            let reps: Vec<String> = tr.representatives(deg).iter().map(|p| pres.format_poly(p)).collect();
            json!({"degree": deg, "w_max": w_max, "dim": reps.len(), "representatives": reps})
        })
        .collect();
    let mut out = json!({"w_max": w_max, "degrees": degrees});
    if pres.is_weight_homogeneous() {
        let pieces: Vec<Value> = tr
            .cohomology_by_weight(cap)?
            .into_iter()
            .map(|p| json!({"weight": p.weight, "degree": p.degree, "dim": p.dim}))
            .collect();
        out["by_weight"] = Value::Array(pieces);
    }
    Ok(out)
}

fn gram_from_arg(field: Field, rank: usize, arg: &str) -> Result<QuadraticForm> {
    let diag: Vec<Scalar> = match arg.trim() {
        "zero" => vec![Scalar::zero(); rank],
        "identity" => vec![Scalar::one(); rank],
        other => {
            let list = other
                .strip_prefix("diag:")
                .ok_or_else(|| Error::parse("--q", "expected zero, identity or diag:a,b,…"))?;
            list.split(',').map(|x| x.parse()).collect::<Result<_>>()?
        }
    };
    let entries = diag
        .iter()
        .enumerate()
        .map(|(k, x)| Ok((k, k, field.element(x)?)))
        .collect::<Result<Vec<_>>>()?;
    QuadraticForm::gram(field, Matrix::assemble(field, diag.len(), diag.len(), entries))
}

fn algebra(field: Field, arg: &str) -> Result<OrientedAlgebra> {
    match arg.trim() {
        "circle" => Ok(OrientedAlgebra::circle(field)),
        "point" => Ok(OrientedAlgebra::point(field)),
        s => {
            let d = s
                .strip_prefix("sphere:")
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::parse("--algebra", "expected sphere:d, circle or point"))?;
            OrientedAlgebra::sphere(field, d)
        }
    }
}

fn run(cli: Cli) -> Result<Value> {
    let ctx = Ctx { g: cli.global };
    let w_max = ctx.g.wmax;
    let f_or_q = ctx.g.field.unwrap_or_default();
    let out = match cli.cmd {
        Cmd::CheckNondeg { form, complex } => {
            let q = ctx.form(&form, complex.as_deref())?;
            json!({"nondegenerate": q.is_nondegenerate()})
        }
        Cmd::QfDim { complex, shift } => {
            let c = ctx.complex(&complex)?;
            json!({"dim": qf_space_dim(&c, shift)})
        }
        Cmd::Sum { form, form2 } => {
            let q = orthogonal_sum(&ctx.form(&form, None)?, &ctx.form(&form2, None)?)?;
            json!({"form": form_to_json(&q)})
        }
        Cmd::Pullback { map, form } => {
            let f = ctx.map(&map)?;
            let q = form_from_json(&load_json(&form)?, Some(f.target()), ctx.g.field)?;
            json!({"form": form_to_json(&pullback(&f, &q)?)})
        }
        Cmd::Hyperbolic { complex, n, m } => {
            let q = hyperbolic(&ctx.complex(&complex)?, n, m)?;
            json!({"form": form_to_json(&q), "nondegenerate": q.is_nondegenerate()})
        }
        Cmd::Decalage {
            complex,
            pairing,
            form,
            eps,
            inverse,
        } => {
            if inverse {
                let form = form.ok_or_else(|| Error::parse("decalage", "--inverse needs --form"))?;
                let q = ctx.form(&form, complex.as_deref())?;
                json!({"pairing": pairing_to_json(&inverse_decalage(&q, eps)?)})
            } else {
                let c = ctx.complex(&complex.ok_or_else(|| Error::parse("decalage", "missing --complex"))?)?;
                let v = load_json(&pairing.ok_or_else(|| Error::parse("decalage", "missing --pairing"))?)?;
                let omega = pairing_from_json(&v, &c)?;
                let q = decalage(&omega, eps)?;
                json!({"form": form_to_json(&q)})
            }
        }
        Cmd::Lagrangian { map, form, witness } => {
            let f = ctx.map(&map)?;
            let q = form_from_json(&load_json(&form)?, Some(f.target()), ctx.g.field)?;
            let gamma = ctx.witness(witness.as_deref(), f.source(), q.shift())?;
            let theta = lagrangian_theta(&f, &q, &gamma)?;
            json!({"lagrangian": is_lagrangian(&f, &q, &gamma)?, "theta": pairing_to_json(&theta)})
        }
        Cmd::FiberForm {
            form,
            map,
            witness,
            map2,
            witness2,
        } => {
            let (f1, f2) = (ctx.map(&map)?, ctx.map(&map2)?);
            let q = form_from_json(&load_json(&form)?, Some(f1.target()), ctx.g.field)?;
            let g1 = ctx.witness(witness.as_deref(), f1.source(), q.shift())?;
            let g2 = ctx.witness(witness2.as_deref(), f2.source(), q.shift())?;
            let z = fiber_product_form(&q, &f1, &g1, &f2, &g2)?;
            json!({"form": form_to_json(&z), "shift": z.shift(), "nondegenerate": z.is_nondegenerate()})
        }
        Cmd::Transgress { form, algebra: alg } => {
            let q = ctx.form(&form, None)?;
            let t = transgress(&q, &algebra(q.field(), &alg)?)?;
            json!({"form": form_to_json(&t), "shift": t.shift(), "nondegenerate": t.is_nondegenerate()})
        }
        Cmd::Fixture { name, params } => {
            let ps: Vec<Scalar> = params
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(str::parse)
                .collect::<Result<_>>()?;
            let fx = fixture(f_or_q, &name, &ps)?;
            json!({"name": fx.name, "form": form_to_json(&fx.form)})
        }
        Cmd::GwInvariants { form, complex } => {
            let inv = gw_invariants(&ctx.form(&form, complex.as_deref())?)?;
            let disc = Scalar::from_bigint(inv.discriminant.clone());
            json!({"rank": inv.rank, "discriminant": scalar_to_json(&disc), "signature": inv.signature})
        }
        Cmd::Clifford(c) => run_clifford(&ctx, c, w_max)?,
        Cmd::Dga(d) => run_dga(&ctx, d, w_max)?,
    };
    Ok(out)
}

fn pairing_from_json(v: &Value, c: &Complex) -> Result<Pairing> {
    let s = v
        .get("shift")
        .and_then(Value::as_i64)
        .ok_or_else(|| Error::parse("pairing", "missing integer shift"))? as i32;
    let mut blocks = BTreeMap::new();
    if let Some(obj) = v.get("blocks").and_then(Value::as_object) {
        for (k, m) in obj {
            let i: i32 = k
                .trim()
                .parse()
                .map_err(|_| Error::parse("pairing.blocks", format!("bad degree {k:?}")))?;
            let m = crate::json::matrix_from_json(m, c.field(), Some((c.dim(i), c.dim(-s - i))), &format!("pairing.blocks.{k}"))?;
            blocks.insert(i, m);
        }
    }
    Pairing::new(c.clone(), c.clone(), s, blocks)
}

fn run_clifford(ctx: &Ctx, cmd: CliffordCmd, w_max: i32) -> Result<Value> {
    let cap = ctx.cap();
    Ok(match cmd {
        CliffordCmd::Present(inp) => {
            let cl = derived_clifford(&ctx.form(&inp.form, inp.complex.as_deref())?)?;
            let p = cl.presentation();
            json!({
                "text": p.to_text(),
                "presentation": presentation_to_json(p),
                "generators": p.generators().len(),
                "weight_homogeneous": cl.is_weight_homogeneous(),
            })
        }
        CliffordCmd::H0(inp) => {
            let h = h0_derived(&ctx.form(&inp.form, inp.complex.as_deref())?, w_max, cap)?;
            json!({
                "dim": h.dim,
                "classical_dim": h.classical_dim(),
                "agree": h.agree(),
                "structure": h.structure,
                "w_max": w_max,
            })
        }
        CliffordCmd::Cohomology(inp) => {
            let cl = derived_clifford(&ctx.form(&inp.form, inp.complex.as_deref())?)?;
            truncation_report(cl.presentation(), w_max, ctx.degrees((-1, 0)), cap)?
        }
        CliffordCmd::Hminus1 { rank, q, form } => {
            let f = ctx.g.field.unwrap_or_default();
            let qf = match (form, rank) {
                (Some(path), _) => ctx.form(&path, None)?,
                (None, Some(r)) => gram_from_arg(f, r, q.as_deref().unwrap_or("zero"))?,
                (None, None) => return Err(Error::parse("hminus1", "give --rank with --q, or --form")),
            };
            match h_minus_one_certificate(&qf, w_max, cap)? {
                None => json!({"certified": false, "nonzero": Value::Null}),
                Some(cert) => json!({
                    "certified": true,
                    "nonzero": cert.nonzero(),
                    "cycle": cert.cycle_text(),
                    "weight": cert.weight,
                    "per_weight": cert.per_weight,
                    "detection": {
                        "target": cert.detection.target().to_text(),
                        "images": cert.detection.table(),
                        "image": cert.detection.target().format_poly(&cert.pushed.image),
                        "nonzero": cert.pushed.nonzero,
                        "definitive": cert.pushed.definitive,
                    },
                }),
            }
        }
        CliffordCmd::SumIso { form, form2 } => {
            let iso = clifford_sum_iso(&ctx.form(&form, None)?, &ctx.form(&form2, None)?)?;
            let h0 = match iso.h0(w_max, cap) {
                Ok(h) => json!({
                    "source_dim": h.source_dim,
                    "target_dim": h.target_dim,
                    "classical_dim": h.classical_dim,
                    "induced_rank": h.induced_rank,
                    "iso": h.is_iso(),
                }),
                Err(Error::Precondition(_)) => Value::Null,
                Err(e) => return Err(e),
            };
            json!({"valid": true, "images": iso.morphism.table(), "target": iso.target.to_text(), "h0": h0})
        }
        CliffordCmd::Map {
            map,
            form,
            form2,
            witness,
        } => {
            let f = ctx.map(&map)?;
            let q1 = form_from_json(&load_json(&form)?, Some(f.source()), ctx.g.field)?;
            let q2 = form_from_json(&load_json(&form2)?, Some(f.target()), ctx.g.field)?;
            let h = ctx.witness(witness.as_deref(), f.source(), q1.shift())?;
            let m = clifford_map(&f, &q1, &q2, &h)?;
            json!({"valid": true, "images": m.table()})
        }
        CliffordCmd::HypAction { rank } => {
            let a = hyperbolic_action(ctx.g.field.unwrap_or_default(), rank)?;
            json!({
                "rank": rank,
                "clifford_dim": a.clifford.dim(),
                "module_dim": 1usize << rank,
                "structure_rank": a.structure_rank,
                "relations_hold": a.relations_hold,
                "bijective": a.is_bijective(),
            })
        }
    })
}

fn run_dga(ctx: &Ctx, cmd: DgaCmd, w_max: i32) -> Result<Value> {
    let cap = ctx.cap();
    let field = ctx.g.field;
    Ok(match cmd {
        DgaCmd::Validate { dga } => {
            let p = load_presentation(&dga, field)?;
            json!({
                "valid": true,
                "presentation": presentation_to_json(&p),
                "weight_homogeneous": p.is_weight_homogeneous(),
            })
        }
        DgaCmd::Cohomology { dga } => {
            let p = load_presentation(&dga, field)?;
            truncation_report(&p, w_max, ctx.degrees((-1, 0)), cap)?
        }
        DgaCmd::Tensor { dga, dga2 } => {
            let a = load_presentation(&dga, field)?;
            let b = load_presentation(&dga2, Some(a.field()))?;
            let t = graded_tensor(&a, &b)?;
            json!({"text": t.to_text(), "presentation": presentation_to_json(&t)})
        }
        DgaCmd::Map {
            source,
            target,
            images,
            cycle,
        } => {
            let s = load_presentation(&source, field)?;
            let t = load_presentation(&target, Some(s.field()))?;
            let raw = load_json(&images)?;
            let obj = raw
                .as_object()
                .ok_or_else(|| Error::parse("images", "expected an object of polynomials"))?;
            let mut imgs = BTreeMap::new();
            for (k, v) in obj {
                let text = v
                    .as_str()
                    .ok_or_else(|| Error::parse(format!("images.{k}"), "polynomial must be a string"))?;
                imgs.insert(k.clone(), t.parse_poly(text)?);
            }
            let m = make_morphism(&s, &t, imgs)?;
            let mut out = json!({"valid": true, "images": m.table()});
            if let Some(c) = cycle {
                let r = push_class(&m, &s.parse_poly(&c)?, w_max, cap)?;
                out["push"] = json!({
                    "image": t.format_poly(&r.image),
                    "nonzero": r.nonzero,
                    "definitive": r.definitive,
                });
            }
            out
        }
    })
}

fn pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            let width = m.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, x) in m {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        pretty(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k:<width$}  {}\n", scalar_text(x))),
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    pretty(x, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar_text(v))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        _ => true,
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) if s.contains('\n') => format!("\n{s}"),
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

/// Parses arguments, runs the job and renders the report.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    let pretty_mode = cli.global.pretty;
    match run(cli) {
        Ok(mut v) => {
            if let Value::Object(m) = &mut v {
                m.insert("schema".into(), json!(SCHEMA));
            }
            let stdout = if pretty_mode {
                let mut s = String::new();
                pretty(&v, 0, &mut s);
                s
            } else {
                format!("{}\n", serde_json::to_string(&v).expect("serializable"))
            };
            Outcome {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let mut err = Map::new();
            err.insert("schema".into(), json!(SCHEMA));
            err.insert("error".into(), json!(e.to_string()));
            err.insert("exit_code".into(), json!(e.exit_code()));
            Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr: format!("{}\n", Value::Object(err)),
            }
        }
    }
}
