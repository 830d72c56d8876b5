use std::fmt::Write;

use mpae_core::decision::{
    compare, cutpoint, distance, emit_buchi, mt_query, parse_query, threshold_decision, witness_lasso, CompareKind,
    QueryError, ThresholdKind,
};
use mpae_core::model::{Expr, ValidatedSpec};
use mpae_core::value::{analyze, evaluate_expr, value_report};
use mpae_core::Error;
use mpae_geometry::rational::to_string;
use mpae_geometry::{parse_rational, Rational};
use serde_json::{json, Map, Value};

use crate::render;
use crate::{Command, Common, Format};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_)
            | Error::Validation(_)
            | Error::UnknownExpression(_)
            | Error::UnknownPayoff(_)
            | Error::UnknownLetter(_)
            | Error::AlphabetMismatch
            | Error::InvalidArgument(_)
            | Error::Query(QueryError::Syntax { .. }) => 2,
            Error::NotIsolated { .. }
            | Error::NoWitness { .. }
            | Error::WitnessUnreachable { .. }
            | Error::Query(QueryError::VariableOutOfRange { .. }) => 3,
            Error::CycleBudget { .. } => 4,
            Error::Geometry(_) => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: String) -> Failure {
    Failure { code: 2, message }
}

type Outcome = Result<String, Failure>;

fn load(c: &Common) -> Result<ValidatedSpec, Failure> {
    let text = std::fs::read_to_string(&c.file).map_err(|e| usage(format!("cannot read {}: {e}", c.file.display())))?;
    Ok(ValidatedSpec::parse(&text)?)
}

fn rational_arg(flag: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| usage(format!("--{flag}: {e}")))
}

fn expression<'a>(spec: &'a ValidatedSpec, name: &str) -> Result<&'a Expr, Failure> {
    Ok(spec.expression(name)?)
}

/// JSON object, or `key: value` lines for text output.
fn emit(format: Format, fields: Vec<(&str, Value)>, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => render::json_line(&Value::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())),
        Format::Text => text(),
    }
}

pub fn run(command: &Command) -> Outcome {
    match command {
        Command::Check(c) => check(c),
        Command::VectorSet(a) => {
            let spec = load(&a.common)?;
            let e = expression(&spec, &a.expr)?;
            let analysis = analyze(&spec, e, a.common.cycle_budget)?;
            let vs = &analysis.vector_set;
            if a.common.dump_geometry {
                for (scc, p) in &vs.per_scc {
                    eprint!("# scc {scc}\n{}", p.dump());
                }
            }
            let polys: Vec<Value> =
                vs.per_scc.iter().map(|(scc, p)| json!({ "scc": scc, "constraints": render::polyhedron(p) })).collect();
            let mut fields = vec![
                ("result", Value::Array(polys)),
                ("leaves", json!(vs.leaves)),
                ("flip_mask", json!(vs.flip_mask)),
            ];
            let cycles: Vec<Value> = analysis
                .cycle_sets
                .iter()
                .map(|c| {
                    let points: Vec<Value> = c.points.iter().map(|p| render::vector(&analysis.leaf_point(p))).collect();
                    json!({ "scc": c.scc, "points": points, "cycle_count": c.cycle_count })
                })
                .collect();
            if a.dump_cycles {
                fields.push(("cycles", Value::Array(cycles.clone())));
            }
            Ok(emit(a.common.format, fields, || {
                let mut out = format!("leaves: {}\n", vs.leaves.join(", "));
                for (scc, p) in &vs.per_scc {
                    write!(out, "scc {scc}:\n{}", indent(&p.dump())).unwrap();
                }
                if a.dump_cycles {
                    for c in &analysis.cycle_sets {
                        writeln!(out, "scc {} cycles ({} simple):", c.scc, c.cycle_count).unwrap();
                        for p in &c.points {
                            let pt: Vec<String> = analysis.leaf_point(p).iter().map(to_string).collect();
                            writeln!(out, "  ({})", pt.join(", ")).unwrap();
                        }
                    }
                }
                out
            }))
        }
        Command::ValueSet(a) => {
            let spec = load(&a.common)?;
            let e = expression(&spec, &a.expr)?;
            let analysis = analyze(&spec, e, a.common.cycle_budget)?;
            let report = value_report(&analysis, e)?;
            if a.common.dump_geometry {
                for v in &report.per_scc {
                    for (k, p) in v.folded.disjuncts().iter().enumerate() {
                        eprint!("# scc {} piece {k}\n{}", v.scc, p.dump());
                    }
                }
            }
            let per_scc: Vec<Value> = report
                .per_scc
                .iter()
                .map(|v| json!({ "scc": v.scc, "lo": render::rational(&v.interval.lo), "hi": render::rational(&v.interval.hi) }))
                .collect();
            Ok(emit(
                a.common.format,
                vec![("result", render::intervals(&report.value_set)), ("per_scc", Value::Array(per_scc))],
                || {
                    let mut out = format!("{}\n", report.value_set);
                    for v in &report.per_scc {
                        writeln!(out, "scc {}: {}", v.scc, v.interval).unwrap();
                    }
                    out
                },
            ))
        }
        Command::Empty(a) | Command::Universal(a) => {
            let kind = if matches!(command, Command::Empty(_)) { ThresholdKind::Emptiness } else { ThresholdKind::Universality };
            let spec = load(&a.common)?;
            let nu = rational_arg("nu", &a.nu)?;
            let ans = threshold_decision(&spec, expression(&spec, &a.expr)?, kind, &nu, a.common.cycle_budget)?;
            let mut fields = vec![("result", json!(ans.holds))];
            if let Some(scc) = ans.scc {
                fields.push(("scc", json!(scc)));
            }
            Ok(emit(a.common.format, fields, || match ans.scc {
                Some(scc) => format!("{} (scc {scc})\n", ans.holds),
                None => format!("{}\n", ans.holds),
            }))
        }
        Command::Includes(a) | Command::Equiv(a) => {
            let kind = if matches!(command, Command::Includes(_)) { CompareKind::Inclusion } else { CompareKind::Equivalence };
            let spec = load(&a.common)?;
            let (l, r) = (expression(&spec, &a.lhs)?, expression(&spec, &a.rhs)?);
            let holds = compare(&spec, l, r, kind, a.common.cycle_budget)?;
            Ok(emit(a.common.format, vec![("result", json!(holds))], || format!("{holds}\n")))
        }
        Command::Distance(a) => {
            let spec = load(&a.common)?;
            let (l, r) = (expression(&spec, &a.lhs)?, expression(&spec, &a.rhs)?);
            let d = distance(&spec, l, r, a.common.cycle_budget)?;
            Ok(emit(a.common.format, vec![("result", render::rational(&d))], || format!("{}\n", to_string(&d))))
        }
        Command::Cutpoint(a) => {
            let spec = load(&a.common)?;
            let eta = rational_arg("eta", &a.eta)?;
            let cp = cutpoint(&spec, expression(&spec, &a.expr)?, &eta, a.common.cycle_budget)?;
            let mut fields = vec![("result", json!(cp.isolated))];
            if let Some(g) = &cp.gap {
                fields.push(("gap", render::rational(g)));
            }
            Ok(emit(a.common.format, fields, || match &cp.gap {
                Some(g) => format!("isolated, gap {}\n", to_string(g)),
                None => "not isolated\n".to_string(),
            }))
        }
        Command::Buchi(a) => {
            let spec = load(&a.common)?;
            let eta = rational_arg("eta", &a.eta)?;
            let b = emit_buchi(&spec, expression(&spec, &a.expr)?, &eta, a.common.cycle_budget)?;
            Ok(emit(a.common.format, vec![("result", render::buchi(&b))], || b.to_text()))
        }
        Command::Query(a) => {
            let spec = load(&a.common)?;
            let q = parse_query(&a.query).map_err(Error::from)?;
            let ans = mt_query(spec.payoff(&a.automaton)?, &q, a.common.cycle_budget)?;
            let verdict = if ans.sat { "sat" } else { "unsat" };
            let mut fields = vec![("result", json!(verdict))];
            if let (Some(p), Some(scc)) = (&ans.point, ans.scc) {
                fields.push(("point", render::vector(p)));
                fields.push(("scc", json!(scc)));
            }
            Ok(emit(a.common.format, fields, || format!("{verdict}\n")))
        }
        Command::Witness(a) => {
            let spec = load(&a.common)?;
            let nu = rational_arg("nu", &a.nu)?;
            let eps = rational_arg("eps", &a.eps)?;
            let e = expression(&spec, &a.expr)?;
            let w = witness_lasso(&spec, e, &nu, &eps, a.common.cycle_budget)?;
            let value = evaluate_expr(&spec, e, &w)?;
            Ok(emit(a.common.format, vec![("result", render::lasso(&w)), ("value", render::rational(&value))], || {
                format!("{w}\nvalue {}\n", to_string(&value))
            }))
        }
    }
}

fn check(c: &Common) -> Outcome {
    let spec = load(c)?;
    let exprs: Map<String, Value> = spec
        .expressions()
        .iter()
        .map(|(name, e)| {
            let info = json!({ "tree": e.to_string(), "leaves": e.leaves().len(), "sum_ops": e.sum_count() });
            (name.clone(), info)
        })
        .collect();
    let automata: Vec<&String> = spec.automata().keys().collect();
    let payoffs: Vec<&String> = spec.payoffs().keys().collect();
    Ok(emit(
        c.format,
        vec![("result", json!(true)), ("automata", json!(automata)), ("payoffs", json!(payoffs)), ("expressions", Value::Object(exprs))],
        || {
            let mut out = format!("ok: {} automata, {} payoff automata\n", automata.len(), payoffs.len());
            for (name, e) in spec.expressions() {
                writeln!(out, "{name} = {e} (n = {}, k = {})", e.leaves().len(), e.sum_count()).unwrap();
            }
            out
        },
    ))
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}
