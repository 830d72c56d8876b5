#![allow(dead_code)]

use mpae_core::model::{LassoWord, ValidatedSpec};
use mpae_core::value::evaluate_expr;
use mpae_geometry::Rational;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub const ALPHABET: [&str; 2] = ["a", "b"];

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub const AB_PAIR: &str = "automaton A1 liminf { alphabet a, b; initial q0; q0 -a/1-> q0; q0 -b/0-> q0; }\n\
                        automaton A2 liminf { alphabet a, b; initial q0; q0 -a/0-> q0; q0 -b/1-> q0; }\n\
                        expression Emax = max(A1, A2);\n\
                        expression Emin = min(A1, A2);\n";

pub fn ab_pair() -> ValidatedSpec {
    ValidatedSpec::parse(AB_PAIR).unwrap()
}

/// Text of a random total automaton over {a, b} with integer weights.
pub fn automaton_text(rng: &mut TestRng, id: &str, max_states: usize, span: i64) -> String {
    let n = rng.gen_range(1..=max_states);
    let semantics = if rng.gen_bool(0.5) { "liminf" } else { "limsup" };
    let mut s = format!("automaton {id} {semantics} {{ alphabet a, b; initial s0;");
    for q in 0..n {
        for letter in ALPHABET {
            let t = rng.gen_range(0..n);
            let w = rng.gen_range(-span..=span);
            s.push_str(&format!(" s{q} -{letter}/{w}-> s{t};"));
        }
    }
    s.push_str(" }\n");
    s
}

/// Random expression in surface syntax; `neg` and `scale` appear now and then.
pub fn expr_text(rng: &mut TestRng, ids: &[String], depth: usize) -> String {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    let base = if leaf {
        ids.choose(rng).unwrap().clone()
    } else {
        let op = ["max", "min", "sum"].choose(rng).unwrap();
        format!("{op}({}, {})", expr_text(rng, ids, depth - 1), expr_text(rng, ids, depth - 1))
    };
    match rng.gen_range(0..10) {
        0 => format!("neg({base})"),
        1 => {
            let c = [(1, 2), (2, 1), (-3, 2), (3, 1)].choose(rng).unwrap();
            format!("scale({}/{}, {base})", c.0, c.1)
        }
        _ => base,
    }
}

pub struct RandomSpec {
    pub text: String,
    pub spec: ValidatedSpec,
    pub ids: Vec<String>,
}

/// Up to `max_automata` automata with up to `max_states` states each and
/// expressions `E0..E{exprs-1}` over them.
pub fn random_spec(rng: &mut TestRng, max_automata: usize, max_states: usize, exprs: usize, depth: usize) -> RandomSpec {
    let k = rng.gen_range(1..=max_automata);
    let ids: Vec<String> = (0..k).map(|i| format!("A{i}")).collect();
    let mut text = String::new();
    for id in &ids {
        text.push_str(&automaton_text(rng, id, max_states, 3));
    }
    for e in 0..exprs {
        text.push_str(&format!("expression E{e} = {};\n", expr_text(rng, &ids, depth)));
    }
    let spec = ValidatedSpec::parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    RandomSpec { text, spec, ids }
}

pub fn random_lasso(rng: &mut TestRng, max_prefix: usize, max_cycle: usize) -> LassoWord {
    let p = rng.gen_range(0..=max_prefix);
    let prefix = word(rng, p);
    let c = rng.gen_range(1..=max_cycle);
    let cycle = word(rng, c);
    LassoWord::new(prefix, cycle)
}

pub fn word(rng: &mut TestRng, len: usize) -> Vec<String> {
    (0..len).map(|_| ALPHABET.choose(rng).unwrap().to_string()).collect()
}

pub fn eval(spec: &ValidatedSpec, name: &str, w: &LassoWord) -> Rational {
    evaluate_expr(spec, spec.expression(name).unwrap(), w).unwrap()
}

/// Weights `(i/k, j/k)` with `i + j <= k`, the grid of a 2-simplex.
pub fn simplex_grid(k: i64) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for i in 0..=k {
        for j in 0..=(k - i) {
            out.push((q(i, k), q(j, k)));
        }
    }
    out
}
