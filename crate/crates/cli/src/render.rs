use mpae_core::decision::BuchiAutomaton;
use mpae_core::model::LassoWord;
use mpae_core::value::IntervalUnion;
use mpae_geometry::rational::to_string;
use mpae_geometry::{Polyhedron, Rational};
use serde_json::{json, Value};

pub fn rational(x: &Rational) -> Value {
    Value::String(to_string(x))
}

pub fn vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn intervals(u: &IntervalUnion) -> Value {
    Value::Array(u.intervals().iter().map(|i| json!({ "lo": rational(&i.lo), "hi": rational(&i.hi) })).collect())
}

pub fn lasso(w: &LassoWord) -> Value {
    json!({ "prefix": w.prefix, "cycle": w.cycle })
}

pub fn polyhedron(p: &Polyhedron) -> Value {
    Value::Array(p.constraints().iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn buchi(b: &BuchiAutomaton) -> Value {
    let mut edges = Vec::new();
    for (s, row) in b.states.iter().zip(&b.transitions) {
        for (letter, &t) in b.alphabet.iter().zip(row) {
            edges.push(json!({ "src": s, "letter": letter, "dst": b.states[t] }));
        }
    }
    let accepting: Vec<&String> = b.states.iter().zip(&b.accepting).filter(|(_, &a)| a).map(|(s, _)| s).collect();
    json!({
        "states": b.states,
        "initial": b.initial_name(),
        "alphabet": b.alphabet,
        "accepting": accepting,
        "edges": edges,
    })
}

/// Compact JSON with sorted keys and a trailing newline.
pub fn json_line(v: &Value) -> String {
    format!("{v}\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use mpae_core::value::Interval;
    use mpae_geometry::rational::{frac, int};

    #[test]
    fn canonical_shapes() {
        let u = IntervalUnion::new(vec![Interval::new(int(0), frac(1, 2))]);
        assert_eq!(intervals(&u).to_string(), r#"[{"hi":"1/2","lo":"0"}]"#);
        assert_eq!(json_line(&json!({ "result": true })), "{\"result\":true}\n");
        let w = LassoWord::from_strs(&[], &["a", "b"]);
        assert_eq!(lasso(&w).to_string(), r#"{"cycle":["a","b"],"prefix":[]}"#);
    }
}
