use std::collections::VecDeque;

use super::group::GroupPresentation;
use crate::category::AcyclicCategory;

/// Edge-path presentation of the fundamental group of the nerve: one
/// generator per nonidentity morphism, one relator `f g (g∘f)^-1` per
/// composable pair, and the edges of a spanning tree set to 1.
/// Assumes the nerve is connected.
pub fn edge_path_presentation(c: &AcyclicCategory) -> GroupPresentation {
    let generators = (0..c.morphism_count()).map(|m| format!("m{m}")).collect();
    let mut relators = Vec::new();
    for f in 0..c.morphism_count() {
        for &g in c.outgoing(c.target(f)) {
            if let Some(h) = c.compose(f, g) {
                relators.push(vec![f as i32 + 1, g as i32 + 1, -(h as i32 + 1)]);
            }
        }
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); c.object_count()];
    for (m, &(s, t)) in c.morphisms().iter().enumerate() {
        incident[s].push(m);
        incident[t].push(m);
    }
    let mut seen = vec![false; c.object_count()];
    for root in 0..c.object_count() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &m in &incident[x] {
                let (s, t) = c.morphisms()[m];
                let y = if s == x { t } else { s };
                if !seen[y] {
                    seen[y] = true;
                    relators.push(vec![m as i32 + 1]);
                    queue.push_back(y);
                }
            }
        }
    }
    GroupPresentation::new(generators, relators)
}
