use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphpair::diagram::{c1, diagram_from_layout, ChordDiagram, DiagramJson};
use graphpair::formal_sum::FormalSum;
use graphpair::hairy::{HairyLayout, HairySpec};
use graphpair::iso::{automorphism_count, canonical_form, has_orientation_reversing_automorphism};
use graphpair::pairing::{counting_formula, matchings};
use graphpair::ribbon::{from_signed_diagram, sweep_epsilon, RibbonPresentation};
use graphpair::structures::{enumerate_structures, realize};
use graphpair::verify::{counted_resolutions, parse_rational, resolution_classes, verify, RationalJson, VerificationReport};
use graphpair::{GradingParams, ParityTable, PlainGraph, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const SCHEMA: &str = "graphpair/1";

#[derive(Parser)]
#[command(name = "graphpair", version, about = "Pairings of plain graphs with chord diagrams")]
struct Cli {
    /// Dimension n of the ambient space
    #[arg(long, global = true, default_value_t = 5)]
    n: i64,
    /// Dimension j of the source space
    #[arg(long, global = true, default_value_t = 3)]
    j: i64,
    /// JSON parity table overriding the one derived from n and j
    #[arg(long, global = true)]
    parity_table: Option<PathBuf>,
    /// Count only good structures
    #[arg(long, global = true)]
    good_only: bool,
    /// Comma-separated rational weights, one per resolution
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<String>>,
    /// Seed for random class-consistent weights when --weights is absent
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Tikz,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Subject {
    /// Θ(p,q,r)
    #[arg(long, num_args = 3, value_names = ["P", "Q", "R"], allow_hyphen_values = true)]
    theta: Option<Vec<i64>>,
    /// Y(p₁,…,p₆)
    #[arg(long, num_args = 6, value_names = ["P1", "P2", "P3", "P4", "P5", "P6"], allow_hyphen_values = true)]
    y: Option<Vec<i64>>,
    /// The two-line example diagram C₁
    #[arg(long)]
    c1: bool,
    /// Diagram JSON file
    #[arg(long)]
    diagram: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Hairy graph Θ(p,q,r) as a plain graph
    BuildTheta {
        #[arg(allow_hyphen_values = true)]
        p: i64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
        #[arg(allow_hyphen_values = true)]
        r: i64,
    },
    /// Hairy graph Y(p₁,…,p₆) as a plain graph
    BuildY {
        #[arg(num_args = 6, required = true)]
        hairs: Vec<i64>,
    },
    /// Chord diagram of a hairy graph
    Diagram(Subject),
    /// Structures of G(C) (or G′(C) with --good-only)
    EnumStructures(Subject),
    /// Matchings of a plain graph with a diagram
    Pair {
        /// Plain graph JSON file
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        subject: Subject,
    },
    /// Counting formula of a formal sum against a diagram
    Counting {
        /// JSON list of {"graph": …, "weight": "a/b"}; defaults to the
        /// subject's resolutions with --weights
        #[arg(long)]
        terms: Option<PathBuf>,
        #[command(flatten)]
        subject: Subject,
    },
    /// Check the Θ(p,q,r) pairing theorem
    VerifyTheta {
        #[arg(allow_hyphen_values = true)]
        p: i64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
        #[arg(allow_hyphen_values = true)]
        r: i64,
    },
    /// Check the Y(p₁,…,p₆) pairing theorem
    VerifyY {
        #[arg(num_args = 6, required = true)]
        hairs: Vec<i64>,
    },
    /// Ribbon presentation of a diagram, optionally an ε-variant
    Ribbon {
        /// Comma-separated ±1 per starred crossing
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        epsilon: Option<Vec<i8>>,
        /// Apply the cross-change recipe to the marked disks first
        #[arg(long)]
        cross_change: bool,
        #[command(flatten)]
        subject: Subject,
    },
    /// Degeneracy and triviality of every ε-variant
    SweepEpsilon {
        #[arg(long)]
        cross_change: bool,
        #[command(flatten)]
        subject: Subject,
    },
    /// Hairy graph, diagram, resolutions and ribbon presentation together
    Export(Subject),
}

enum Failure {
    Usage(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out = std::result::Result<(String, bool), Failure>;

struct Ctx {
    pt: ParityTable,
    good_only: bool,
    weights: Option<Vec<Rational>>,
    seed: Option<u64>,
    format: Format,
}

fn theta_spec(v: &[i64]) -> HairySpec {
    HairySpec::Theta {
        p: v[0],
        q: v[1],
        r: v[2],
    }
}

fn y_spec(v: &[i64]) -> HairySpec {
    let mut hairs = [0; 6];
    hairs.copy_from_slice(v);
    HairySpec::Y { hairs }
}

impl Subject {
    fn hairy(&self) -> Option<HairySpec> {
        self.theta
            .as_deref()
            .map(theta_spec)
            .or_else(|| self.y.as_deref().map(y_spec))
    }

    fn diagram(&self) -> std::result::Result<ChordDiagram, Failure> {
        if let Some(spec) = self.hairy() {
            spec.validate()?;
            return Ok(diagram_from_layout(&HairyLayout::new(spec)?));
        }
        if self.c1 {
            return Ok(c1());
        }
        let path = self.diagram.as_ref().expect("clap enforces one subject");
        let json: DiagramJson = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        Ok(ChordDiagram::from_json(&json)?)
    }

    fn name(&self) -> String {
        match (self.hairy(), self.c1) {
            (Some(HairySpec::Theta { p, q, r }), _) => format!("theta_{p}_{q}_{r}"),
            (Some(HairySpec::Y { hairs }), _) => {
                format!("y_{}", hairs.iter().map(|h| h.to_string()).collect::<Vec<_>>().join("_"))
            }
            (None, true) => "c1".into(),
            _ => "diagram".into(),
        }
    }
}

fn wrap(command: &str, mut body: Value) -> Value {
    let mut out = json!({ "schema": SCHEMA, "command": command });
    if let Value::Object(m) = &mut body {
        out.as_object_mut().unwrap().append(m);
    }
    out
}

fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap() + "\n"
}

fn text_only(ctx: &Ctx, what: &str) -> std::result::Result<(), Failure> {
    if ctx.format == Format::Tikz {
        return Err(Failure::Usage(format!("--format tikz is only available for diagrams, not {what}")));
    }
    Ok(())
}

/// Weights from --weights, random ones from --seed, or all ones.
fn weights_for(ctx: &Ctx, spec: HairySpec) -> std::result::Result<Vec<Rational>, Failure> {
    let rs = counted_resolutions(spec, ctx.good_only)?;
    if let Some(w) = &ctx.weights {
        if w.len() != rs.len() {
            return Err(Failure::Usage(format!(
                "--weights needs one weight per resolution: expected {}, got {}",
                rs.len(),
                w.len()
            )));
        }
        return Ok(w.clone());
    }
    let Some(seed) = ctx.seed else {
        return Ok(vec![Rational::from_integer(1.into()); rs.len()]);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let free: Vec<Rational> = (0..rs.len())
        .map(|_| Rational::new(rng.gen_range(-30..=30).into(), rng.gen_range(1..=12).into()))
        .collect();
    Ok(resolution_classes(&rs, &ctx.pt)
        .iter()
        .enumerate()
        .map(|(i, &(first, s))| {
            if has_orientation_reversing_automorphism(&rs[i].graph, &ctx.pt) {
                Rational::from_integer(0.into())
            } else {
                free[first].clone() * Rational::from_integer(s.into())
            }
        })
        .collect())
}

fn report_json(r: &VerificationReport, g: usize, g_prime: usize) -> Value {
    let mut v = serde_json::to_value(r).unwrap();
    v["counts"] = json!({ "G": g, "G_prime": g_prime, "resolutions": r.resolutions });
    v["passed"] = json!(r.passed());
    v
}

fn run_verify(ctx: &Ctx, command: &str, spec: HairySpec) -> Out {
    text_only(ctx, command)?;
    spec.validate()?;
    let weights = weights_for(ctx, spec)?;
    let r = verify(spec, &weights, &ctx.pt, ctx.good_only)?;
    let c = diagram_from_layout(&HairyLayout::new(spec)?);
    let g = enumerate_structures(&c, false)?.len();
    let gp = enumerate_structures(&c, true)?.len();
    if ctx.format == Format::Dot {
        return Ok((c.to_dot(), r.passed()));
    }
    Ok((render(&wrap(command, report_json(&r, g, gp))), r.passed()))
}

fn presentation(subject: &Subject, cross_change: bool) -> std::result::Result<RibbonPresentation, Failure> {
    let p = from_signed_diagram(&subject.diagram()?)?;
    Ok(if cross_change { p.with_marked_cross_changes()? } else { p })
}

fn run(cli: Cli) -> Out {
    let gp = GradingParams::new(cli.n, cli.j)?;
    let pt = match &cli.parity_table {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        None => ParityTable::standard(gp),
    };
    let weights = match &cli.weights {
        Some(ws) => Some(ws.iter().map(|w| parse_rational(w)).collect::<graphpair::Result<Vec<_>>>()?),
        None => None,
    };
    let ctx = Ctx {
        pt,
        good_only: cli.good_only,
        weights,
        seed: cli.seed,
        format: cli.format,
    };
    match &cli.command {
        Command::BuildTheta { p, q, r } => build(&ctx, "build-theta", theta_spec(&[*p, *q, *r])),
        Command::BuildY { hairs } => build(&ctx, "build-y", y_spec(hairs)),
        Command::Diagram(s) => {
            let c = s.diagram()?;
            let text = match ctx.format {
                Format::Json => render(&wrap(
                    "diagram",
                    json!({
                        "k": c.k(),
                        "s": c.s(),
                        "diagram": c.to_json(),
                        "planetary": c.planetary_summary().iter().map(|p| json!({"star": p.star, "orbits": p.orbits})).collect::<Vec<_>>(),
                    }),
                )),
                Format::Dot => c.to_dot(),
                Format::Tikz => c.to_tikz(),
            };
            Ok((text, true))
        }
        Command::EnumStructures(s) => {
            text_only(&ctx, "enum-structures")?;
            let c = s.diagram()?;
            let structures = enumerate_structures(&c, ctx.good_only)?;
            let mut forms = vec![];
            let mut list = vec![];
            let mut dots = String::new();
            for (i, st) in structures.iter().enumerate() {
                let g = realize(st)?;
                let f = canonical_form(&g);
                let class = forms.iter().position(|x| *x == f).unwrap_or_else(|| {
                    forms.push(f);
                    forms.len() - 1
                });
                if ctx.format == Format::Dot {
                    dots += &g.to_dot(&format!("structure_{i}"));
                }
                list.push(json!({
                    "parents": st.parents(),
                    "iso_class": class,
                    "aut": automorphism_count(&g),
                    "good": g.is_good(),
                    "graph": g.to_json(),
                }));
            }
            if ctx.format == Format::Dot {
                return Ok((dots, true));
            }
            Ok((
                render(&wrap(
                    "enum-structures",
                    json!({
                        "diagram": c.to_json(),
                        "good_only": ctx.good_only,
                        "structures": structures.len(),
                        "iso_classes": forms.len(),
                        "list": list,
                    }),
                )),
                true,
            ))
        }
        Command::Pair { graph, subject } => {
            text_only(&ctx, "pair")?;
            let c = subject.diagram()?;
            let g = PlainGraph::from_json(serde_json::from_str(&std::fs::read_to_string(graph)?)?)?;
            let ms = matchings(&g, &c, &ctx.pt)?;
            let value: i64 = ms.iter().map(|m| m.sign as i64).sum();
            let list: Vec<Value> = ms
                .iter()
                .map(|m| {
                    json!({
                        "sigma": m.sigma.iter().map(|(v, p)| json!([v.0, [p.line + 1, p.level]])).collect::<Vec<_>>(),
                        "sign": m.sign,
                    })
                })
                .collect();
            Ok((
                render(&wrap("pair", json!({ "diagram": c.to_json(), "value": value, "matchings": list }))),
                true,
            ))
        }
        Command::Counting { terms, subject } => {
            text_only(&ctx, "counting")?;
            let c = subject.diagram()?;
            let mut h = FormalSum::new(ctx.pt);
            match terms {
                Some(path) => {
                    let list: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    for t in list {
                        let g = PlainGraph::from_json(serde_json::from_value(t["graph"].clone())?)?;
                        let w = match &t["weight"] {
                            Value::String(s) => parse_rational(s)?,
                            Value::Number(n) => parse_rational(&n.to_string())?,
                            _ => return Err(Failure::Usage("every term needs a weight".into())),
                        };
                        h.add(g, w)?;
                    }
                }
                None => {
                    let spec = subject
                        .hairy()
                        .ok_or_else(|| Failure::Usage("counting needs --terms or a hairy subject".into()))?;
                    spec.validate()?;
                    let rs = counted_resolutions(spec, ctx.good_only)?;
                    let w = weights_for(&ctx, spec)?;
                    let classes = resolution_classes(&rs, &ctx.pt);
                    for (i, r) in rs.iter().enumerate() {
                        if classes[i].0 == i && !has_orientation_reversing_automorphism(&r.graph, &ctx.pt) {
                            h.add(r.graph.clone(), w[i].clone())?;
                        }
                    }
                }
            }
            let value = counting_formula(&h, &c, &ctx.pt, ctx.good_only)?;
            Ok((
                render(&wrap(
                    "counting",
                    json!({
                        "diagram": c.to_json(),
                        "terms": h.len(),
                        "good_only": ctx.good_only,
                        "value": RationalJson::from(&value),
                    }),
                )),
                true,
            ))
        }
        Command::VerifyTheta { p, q, r } => run_verify(&ctx, "verify-theta", theta_spec(&[*p, *q, *r])),
        Command::VerifyY { hairs } => run_verify(&ctx, "verify-y", y_spec(hairs)),
        Command::Ribbon {
            epsilon,
            cross_change,
            subject,
        } => {
            text_only(&ctx, "ribbon")?;
            let mut p = presentation(subject, *cross_change)?;
            if let Some(e) = epsilon {
                p = p.epsilon_variant(e)?;
            }
            let closure = p.resolution_closure();
            let mut body = serde_json::to_value(&p)?;
            body["closure"] = json!({
                "remaining": closure.reduced.crossings.iter().map(|c| c.id).collect::<Vec<_>>(),
                "resolved": closure.resolved,
            });
            body["trivial"] = json!(p.is_trivial());
            body["degenerate"] = match p.is_degenerate() {
                Ok(d) => json!(d),
                Err(_) => Value::Null,
            };
            Ok((render(&wrap("ribbon", body)), true))
        }
        Command::SweepEpsilon { cross_change, subject } => {
            text_only(&ctx, "sweep-epsilon")?;
            let p = presentation(subject, *cross_change)?;
            if p.marked_q.is_none() {
                return Err(Failure::Usage(
                    "sweep-epsilon needs a presentation with one node (a theta subject or C1)".into(),
                ));
            }
            let rows = sweep_epsilon(&p)?;
            // the degeneracy claim: exactly the vectors with a −1 are degenerate
            let passed = *cross_change || rows.iter().all(|r| r.degenerate == r.epsilon.contains(&-1));
            let body = json!({
                "subject": subject.name(),
                "cross_change": cross_change,
                "rows": rows,
                "assertions": [{
                    "id": "degenerate_iff_negative",
                    "passed": passed,
                    "detail": if *cross_change { "not checked after cross-changes" } else { "every ε with a −1 is degenerate, all-ones is not" },
                }],
                "passed": passed,
            });
            Ok((render(&wrap("sweep-epsilon", body)), passed))
        }
        Command::Export(s) => {
            let c = s.diagram()?;
            let spec = s.hairy();
            if ctx.format == Format::Dot {
                let mut text = String::new();
                if let Some(spec) = spec {
                    text += &HairyLayout::new(spec)?.plain_graph().to_dot(&s.name());
                }
                text += &c.to_dot();
                return Ok((text, true));
            }
            if ctx.format == Format::Tikz {
                return Ok((c.to_tikz(), true));
            }
            let mut body = json!({
                "subject": s.name(),
                "diagram": c.to_json(),
                "ribbon": from_signed_diagram(&c)?,
            });
            if let Some(spec) = spec {
                body["hairy_graph"] = serde_json::to_value(HairyLayout::new(spec)?.plain_graph().to_json())?;
                body["resolutions"] = counted_resolutions(spec, ctx.good_only)?
                    .iter()
                    .map(|r| json!({ "parents": r.parents, "graph": r.graph.to_json() }))
                    .collect();
            }
            Ok((render(&wrap("export", body)), true))
        }
    }
}

fn build(ctx: &Ctx, command: &str, spec: HairySpec) -> Out {
    spec.validate()?;
    let layout = HairyLayout::new(spec)?;
    let g = layout.plain_graph();
    match ctx.format {
        Format::Dot => Ok((g.to_dot(command), true)),
        Format::Tikz => Err(Failure::Usage("--format tikz is only available for diagrams".into())),
        Format::Json => Ok((
            render(&wrap(
                command,
                json!({
                    "subject": spec,
                    "order": g.order(),
                    "betti": g.betti_number(),
                    "graph": g.to_json(),
                }),
            )),
            true,
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok((text, passed)) => {
            let written = match out {
                Some(path) => std::fs::write(&path, text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
