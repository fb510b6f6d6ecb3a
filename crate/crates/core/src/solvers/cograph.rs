use crate::graph::Graph;

/// A graph is a cograph iff every induced subgraph on at least two vertices
/// is disconnected or has a disconnected complement.
pub fn is_cograph(g: &Graph) -> bool {
    if g.vertex_count() <= 1 {
        return true;
    }
    let comps = g.components();
    if comps.len() > 1 {
        return comps.iter().all(|c| is_cograph(&restrict(g, c)));
    }
    let co = g.complement();
    let co_comps = co.components();
    if co_comps.len() > 1 {
        return co_comps.iter().all(|c| is_cograph(&restrict(g, c)));
    }
    false
}

fn restrict(g: &Graph, members: &[usize]) -> Graph {
    let mut keep = vec![false; g.vertex_count()];
    for &i in members {
        keep[i] = true;
    }
    g.induced_by(|i| keep[i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let k4 = Graph::from_indexed(4, |i| i.to_string(), [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(is_cograph(&k4));
        let p4 = Graph::from_indexed(4, |i| i.to_string(), [(0, 1), (1, 2), (2, 3)]);
        assert!(!is_cograph(&p4));
        let c4 = Graph::from_indexed(4, |i| i.to_string(), [(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(is_cograph(&c4));
        assert!(is_cograph(&Graph::default()));
        // P4 plus an isolated vertex
        let p4i = Graph::from_indexed(5, |i| i.to_string(), [(0, 1), (1, 2), (2, 3)]);
        assert!(!is_cograph(&p4i));
    }
}
