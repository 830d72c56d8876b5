use std::fmt::Write;

use mpae_geometry::rational::Display as R;

use super::validate::ValidatedSpec;

/// Renders a validated spec in the input format. Expressions are printed in
/// rewritten form, so `neg` and `scale` appear only around leaves.
pub fn print_spec(spec: &ValidatedSpec) -> String {
    let mut out = String::new();
    for a in spec.automata().values() {
        writeln!(out, "automaton {} {} {{", a.id, a.semantics).unwrap();
        writeln!(out, "  alphabet {};", a.alphabet.join(", ")).unwrap();
        writeln!(out, "  initial {};", a.states[a.initial]).unwrap();
        for (q, row) in a.transitions.iter().enumerate() {
            for (l, (t, w)) in row.iter().enumerate() {
                writeln!(out, "  {} -{}/{}-> {};", a.states[q], a.alphabet[l], R(w), a.states[*t]).unwrap();
            }
        }
        out.push_str("}\n");
    }
    for p in spec.payoffs().values() {
        writeln!(out, "payoff {} {{", p.id).unwrap();
        writeln!(out, "  alphabet {};", p.alphabet.join(", ")).unwrap();
        writeln!(out, "  initial {};", p.states[p.initial]).unwrap();
        for (q, row) in p.transitions.iter().enumerate() {
            for (l, (t, w)) in row.iter().enumerate() {
                let ws: Vec<String> = w.iter().map(|x| R(x).to_string()).collect();
                writeln!(out, "  {} -{}/({})-> {};", p.states[q], p.alphabet[l], ws.join(", "), p.states[*t]).unwrap();
            }
        }
        out.push_str("}\n");
    }
    for (name, e) in spec.expressions() {
        writeln!(out, "expression {name} = {e};").unwrap();
    }
    out
}
