use super::product::ProductAutomaton;

/// Strongly connected component of the reachable product graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scc {
    pub id: usize,
    /// Sorted product state indices.
    pub states: Vec<usize>,
    pub reachable: bool,
    pub has_cycle: bool,
}

/// Tarjan's algorithm, iterative. Components are returned with sorted
/// members, ordered by their smallest member.
pub fn strongly_connected_components(n: usize, succ: &dyn Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, Vec<usize>, usize)> = vec![(root, succ(root), 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some((v, next, pos)) = call.last_mut() {
            let v = *v;
            if *pos < next.len() {
                let w = next[*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, succ(w), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some((parent, _, _)) = call.last() {
                let p = *parent;
                low[p] = low[p].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                out.push(comp);
            }
        }
    }
    out.sort_by_key(|c| c[0]);
    out
}

/// All SCCs of the reachable product, flagged with whether they carry a cycle.
pub fn reachable_sccs(p: &ProductAutomaton) -> Vec<Scc> {
    let comps = strongly_connected_components(p.states.len(), &|s| p.successors(s).collect());
    comps
        .into_iter()
        .enumerate()
        .map(|(id, states)| {
            let has_cycle = states.len() > 1 || p.successors(states[0]).any(|t| t == states[0]);
            Scc { id, states, reachable: true, has_cycle }
        })
        .collect()
}
