//! Acceptance suite. Each criterion runs against its time limit and prints
//! one PASS/FAIL line; the process exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use mpae_core::analysis::DEFAULT_CYCLE_BUDGET;
use mpae_core::decision::{compare, cutpoint, distance, emit_buchi, witness_lasso, CompareKind};
use mpae_core::model::{Expr, ValidatedSpec};
use mpae_core::value::{evaluate_expr, value_set, vector_set, Interval, IntervalUnion};
use mpae_core::Error;
use mpae_geometry::oracle::{in_convex_hull, orthant_supported};
use mpae_geometry::{fmin_finite, fmin_region, gamma_closure, hull_constraints, Rational};
use rand::Rng;

const BUDGET: usize = DEFAULT_CYCLE_BUDGET;

type Outcome = Result<(), String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_points(rng: &mut TestRng, dim: usize, max_len: usize, span: i64) -> Vec<Vec<Rational>> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| (0..dim).map(|_| r(rng.gen_range(-span..=span))).collect()).collect()
}

fn sorted(mut v: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    v.sort();
    v.dedup();
    v
}

fn fmt_points(v: &[Vec<Rational>]) -> String {
    let pts: Vec<String> = v
        .iter()
        .map(|p| format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    pts.join(" ")
}

fn c1_ab_pair_vector_set() -> Outcome {
    let s = ab_pair();
    let v = vector_set(&s, "Emax", BUDGET).map_err(|e| e.to_string())?;
    let triangle = hull_constraints(&[vec![r(0), r(0)], vec![r(1), r(0)], vec![r(0), r(1)]], &[]).unwrap();
    check(v.per_scc.len() == 1, || format!("{} SCC polyhedra", v.per_scc.len()))?;
    check(v.per_scc[0].1.constraints() == triangle.canonical().constraints(), || {
        format!("got\n{}expected\n{}", v.per_scc[0].1.dump(), triangle.canonical().dump())
    })?;
    check(v.contains(&[r(0), r(0)]), || "(0,0) missing".into())
}

fn c2_three_point_closure() -> Outcome {
    let s = vec![vec![r(0), r(1), r(0)], vec![r(-1), r(-1), r(1)], vec![r(1), r(1), r(1)]];
    let finite = sorted(fmin_finite(&s).unwrap());
    let mut expected = s.clone();
    expected.push(vec![r(-1), r(-1), r(0)]);
    let expected = sorted(expected);
    check(finite == expected, || format!("fmin_finite = {}", fmt_points(&finite)))?;
    let origin = vec![r(0), r(0), r(0)];
    check(fmin_region(&s).unwrap().contains(&origin), || "(0,0,0) not in the closure".into())?;
    check(!in_convex_hull(&finite, &origin), || "(0,0,0) in conv(fmin_finite)".into())
}

fn c3_planar_equality() -> Outcome {
    let mut rng = rng(3);
    for case in 0..300 {
        let s = random_points(&mut rng, 2, 8, 5);
        let region = fmin_region(&s).unwrap();
        let hull = hull_constraints(&fmin_finite(&s).unwrap(), &[]).unwrap();
        check(hull.canonical() == region && hull.same_set(&region), || format!("case {case}: {}", fmt_points(&s)))?;
    }
    Ok(())
}

fn c4_orthant_membership() -> Outcome {
    let mut rng = rng(4);
    for case in 0..100 {
        let d = rng.gen_range(1..=4);
        let s = random_points(&mut rng, d, 6, 4);
        let region = fmin_region(&s).unwrap();
        for _ in 0..200 {
            let y: Vec<Rational> = (0..d).map(|_| q(rng.gen_range(-15..=15), rng.gen_range(1..=3))).collect();
            check(region.contains(&y) == orthant_supported(&s, &y), || {
                format!("case {case}: S = {}, y = {}", fmt_points(&s), fmt_points(std::slice::from_ref(&y)))
            })?;
        }
    }
    Ok(())
}

fn c5_gamma_oracle() -> Outcome {
    let mut rng = rng(5);
    for case in 0..50 {
        let s = random_points(&mut rng, 3, 5, 3);
        let g = gamma_closure(&s).unwrap();
        let hull = hull_constraints(&fmin_finite(&g).unwrap(), &[]).unwrap();
        check(hull.canonical() == fmin_region(&s).unwrap(), || format!("case {case}: {}", fmt_points(&s)))?;
    }
    Ok(())
}

fn c6_value_set_soundness() -> Outcome {
    let mut rng = rng(6);
    for case in 0..20 {
        let rs = random_spec(&mut rng, 3, 4, 1, 3);
        let values = value_set(&rs.spec, "E0", BUDGET).map_err(|e| format!("case {case}: {e}\n{}", rs.text))?;
        for _ in 0..500 {
            let w = random_lasso(&mut rng, 4, 6);
            let v = eval(&rs.spec, "E0", &w);
            check(values.contains(&v), || format!("case {case}: {w} has value {v} outside {values}\n{}", rs.text))?;
        }
    }
    Ok(())
}

fn c7_ab_pair_values() -> Outcome {
    let s = ab_pair();
    // grid oracle over the triangle of achievable leaf values
    let grid = simplex_grid(60);
    let span = |f: &dyn Fn(&Rational, &Rational) -> Rational| {
        let vals: Vec<Rational> = grid.iter().map(|(x, y)| f(x, y)).collect();
        Interval::new(vals.iter().min().unwrap().clone(), vals.iter().max().unwrap().clone())
    };
    let max_oracle = span(&|x, y| x.max(y).clone());
    let min_oracle = span(&|x, y| x.min(y).clone());
    let dist_oracle = grid.iter().map(|(x, y)| (x.max(y) - x.min(y)).clone()).max().unwrap();
    let vmax = value_set(&s, "Emax", BUDGET).unwrap();
    let vmin = value_set(&s, "Emin", BUDGET).unwrap();
    let e = |n: &str| s.expression(n).unwrap().clone();
    let dist = distance(&s, &e("Emax"), &e("Emin"), BUDGET).unwrap();
    check(vmax == IntervalUnion::new(vec![max_oracle]), || format!("max: {vmax}"))?;
    check(vmin == IntervalUnion::new(vec![min_oracle]), || format!("min: {vmin}"))?;
    check(dist == dist_oracle, || format!("distance {dist}"))?;
    // lasso sampling stays inside and reaches the endpoints
    let words = [("Emax", vec!["a"], r(1)), ("Emax", vec!["a", "b"], q(1, 2)), ("Emin", vec!["a", "b"], q(1, 2))];
    for (name, cycle, value) in words {
        let w = mpae_core::model::LassoWord::from_strs(&[], &cycle);
        check(eval(&s, name, &w) == value, || format!("{name} on {w}"))?;
    }
    // pinned exact values
    check(vmax.to_string() == "[0, 1]" && vmin.to_string() == "[0, 1/2]" && dist == r(1), || "pinned values".into())
}

fn c8_decision_consistency() -> Outcome {
    let mut rng = rng(8);
    for case in 0..50 {
        let rs = random_spec(&mut rng, 2, 3, 3, 2);
        let s = &rs.spec;
        let e = |n: &str| s.expression(n).unwrap().clone();
        let (x, y, z) = (e("E0"), e("E1"), e("E2"));
        let ctx = || format!("case {case}\n{}", rs.text);
        let d = |a: &Expr, b: &Expr| distance(s, a, b, BUDGET).unwrap();
        let dxy = d(&x, &y);
        let equiv = compare(s, &x, &y, CompareKind::Equivalence, BUDGET).unwrap();
        let both = compare(s, &x, &y, CompareKind::Inclusion, BUDGET).unwrap()
            && compare(s, &y, &x, CompareKind::Inclusion, BUDGET).unwrap();
        check(equiv == (dxy == r(0)) && equiv == both, || format!("{}: equiv {equiv}, distance {dxy}, both {both}", ctx()))?;
        check(dxy == d(&y, &x), || format!("{}: asymmetric", ctx()))?;
        check(d(&x, &x) == r(0), || format!("{}: d(E,E) != 0", ctx()))?;
        let (dyz, dxz) = (d(&y, &z), d(&x, &z));
        check(dxz <= &dxy + &dyz, || format!("{}: triangle {dxz} > {dxy} + {dyz}", ctx()))?;
    }
    Ok(())
}

/// Copies every automaton with each weight moved by a random amount in
/// `[-eps, eps]`; `E0p` is `E0` over the copies.
fn perturbed(rng: &mut TestRng, rs: &RandomSpec, eps: &Rational) -> ValidatedSpec {
    let mut text = rs.text.clone();
    for id in &rs.ids {
        let a = &rs.spec.automata()[id];
        let mut s = format!("automaton {id}p {} {{ alphabet a, b; initial {};", a.semantics.keyword(), a.states[a.initial]);
        for (qi, row) in a.transitions.iter().enumerate() {
            for (l, (t, w)) in row.iter().enumerate() {
                let delta = eps * q(rng.gen_range(-1000..=1000), 1000);
                s.push_str(&format!(" {} -{}/{}-> {};", a.states[qi], a.alphabet[l], w + delta, a.states[*t]));
            }
        }
        text.push_str(&s);
        text.push_str(" }\n");
    }
    let e0 = rs.text.lines().find(|l| l.starts_with("expression E0 =")).unwrap();
    let mut body = e0.trim_start_matches("expression E0 =").trim_end_matches(';').to_string();
    for id in rs.ids.iter().rev() {
        body = replace_ident(&body, id, &format!("{id}p"));
    }
    text.push_str(&format!("expression E0p = {body};\n"));
    ValidatedSpec::parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}"))
}

fn replace_ident(s: &str, from: &str, to: &str) -> String {
    let mut out = String::new();
    let bytes: Vec<char> = s.chars().collect();
    let f: Vec<char> = from.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let boundary_before = i == 0 || !bytes[i - 1].is_alphanumeric();
        let matches = bytes[i..].starts_with(&f);
        let boundary_after = i + f.len() >= bytes.len() || !bytes[i + f.len()].is_alphanumeric();
        if boundary_before && matches && boundary_after {
            out.push_str(to);
            i += f.len();
        } else {
            out.push(bytes[i]);
            i += 1;
        }
    }
    out
}

fn c9_perturbation_bound() -> Outcome {
    let mut rng = rng(9);
    let mut failures = Vec::new();
    for case in 0..30 {
        let rs = random_spec(&mut rng, 2, 3, 1, 2);
        for eps in [q(1, 10), q(1, 100)] {
            let s = perturbed(&mut rng, &rs, &eps);
            let e = s.expression("E0").unwrap();
            let k = e.sum_count();
            let d = distance(&s, e, s.expression("E0p").unwrap(), BUDGET).map_err(|e| e.to_string())?;
            let bound = r(k.max(1) as i64) * &eps;
            if d > bound {
                failures.push(format!("case {case}: k = {k}, eps = {eps}, distance {d} > {bound} for E0 = {e}"));
            }
        }
    }
    check(failures.is_empty(), || format!("{} of 60 violate the bound:\n  {}", failures.len(), failures.join("\n  ")))
}

fn c10_cutpoint_buchi() -> Outcome {
    let s = ab_pair();
    let e = s.expression("Emin").unwrap();
    let cp = cutpoint(&s, e, &q(3, 4), BUDGET).unwrap();
    check(cp.isolated && cp.gap == Some(q(1, 4)), || format!("{cp:?}"))?;
    let buchi = emit_buchi(&s, e, &q(3, 4), BUDGET).unwrap();
    let mut rng = rng(10);
    for _ in 0..200 {
        let w = random_lasso(&mut rng, 4, 8);
        let accepted = buchi.accepts(&w).unwrap();
        let v = evaluate_expr(&s, e, &w).unwrap();
        check(accepted == (v >= q(3, 4)), || format!("{w}: accepted {accepted}, value {v}"))?;
    }
    check(!cutpoint(&s, e, &q(1, 4), BUDGET).unwrap().isolated, || "1/4 reported isolated".into())?;
    check(matches!(emit_buchi(&s, e, &q(1, 4), BUDGET), Err(Error::NotIsolated { .. })), || "buchi accepted 1/4".into())
}

fn c11_witness() -> Outcome {
    let s = ab_pair();
    let eps = q(1, 10);
    let e = s.expression("Emin").unwrap();
    let w = witness_lasso(&s, e, &q(1, 2), &eps, BUDGET).map_err(|e| e.to_string())?;
    let v = evaluate_expr(&s, e, &w).unwrap();
    check(v >= q(1, 2) - &eps, || format!("{w} has value {v}"))?;
    let mut rng = rng(11);
    for case in 0..10 {
        let rs = random_spec(&mut rng, 2, 3, 1, 2);
        let e = rs.spec.expression("E0").unwrap();
        let values = value_set(&rs.spec, "E0", BUDGET).unwrap();
        let nu = values.max().unwrap().clone();
        match witness_lasso(&rs.spec, e, &nu, &eps, BUDGET) {
            Ok(w) => {
                let v = evaluate_expr(&rs.spec, e, &w).unwrap();
                check(v >= &nu - &eps, || format!("case {case}: {w} has value {v} < {nu} - {eps}"))?;
            }
            Err(Error::WitnessUnreachable { .. }) => {}
            Err(err) => return Err(format!("case {case}: {err}\n{}", rs.text)),
        }
    }
    Ok(())
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 a-b pair vector set", 1, c1_ab_pair_vector_set),
        ("2 three-point closure", 1, c2_three_point_closure),
        ("3 planar closure equals hull of finite closure", 30, c3_planar_equality),
        ("4 orthant membership oracle", 60, c4_orthant_membership),
        ("5 gamma construction oracle", 120, c5_gamma_oracle),
        ("6 value-set soundness", 60, c6_value_set_soundness),
        ("7 a-b pair value sets and distance", 5, c7_ab_pair_values),
        ("8 decision consistency and metric laws", 120, c8_decision_consistency),
        ("9 perturbation bound", 120, c9_perturbation_bound),
        ("10 cut-point isolation and Buchi language", 10, c10_cutpoint_buchi),
        ("11 witness soundness", 10, c11_witness),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, limit, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.starts_with(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = outcome.and_then(|()| {
            check(took <= Duration::from_secs(limit), || format!("took {took:.2?}, limit {limit} s"))
        });
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({took:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({took:.2?}): {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
