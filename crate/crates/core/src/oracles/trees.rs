use std::collections::BTreeSet;

use crate::order_terms::Term;
use crate::order_trees::RegTree;
use crate::relations::rel::thin;

fn atom(t: &RegTree) -> Term<RegTree> {
    Term::Atom(t.clone())
}

/// Child words built from a tree `t` of the previous rank and a tree `u`
/// of any lower rank.
fn words_for(t: &RegTree, lower: &[RegTree]) -> Vec<Term<RegTree>> {
    let leaf = RegTree::leaf();
    let mut out = vec![
        atom(t),
        Term::omega(atom(t)),
        Term::omega_star(atom(t)),
        Term::zeta(atom(t)),
        Term::sum([atom(t), Term::Fin(2)]),
        Term::sum([Term::omega(atom(&leaf)), atom(t)]),
    ];
    for u in lower {
        out.push(Term::sum([atom(t), atom(u)]));
        out.push(Term::sum([Term::zeta(atom(u)), atom(t)]));
        out.push(Term::omega(Term::sum([atom(t), atom(u)])));
    }
    out
}

/// Canonical trees of rank `2..=max_rank` plus the leaf, at most `per_rank`
/// of each rank, in a fixed order.
pub fn enumerate_trees(max_rank: usize, per_rank: usize) -> Vec<RegTree> {
    let mut all = vec![RegTree::leaf()];
    let mut prev = vec![RegTree::leaf()];
    for r in 2..=max_rank {
        let lower = thin(all.clone(), 4);
        let mut level = BTreeSet::new();
        for t in thin(prev.clone(), 8) {
            for w in words_for(&t, &lower) {
                let n = RegTree::node(w).canon();
                if n.rank() == r {
                    level.insert(n);
                }
            }
        }
        prev = thin(level.into_iter().collect(), per_rank);
        all.extend(prev.iter().cloned());
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_and_counts() {
        let ts = enumerate_trees(4, 100);
        assert!(ts.len() >= 200, "{}", ts.len());
        assert!(ts.iter().all(|t| t.rank() <= 4));
        let set: BTreeSet<_> = ts.iter().collect();
        assert_eq!(set.len(), ts.len());
        assert!(ts.iter().all(|t| t.canon() == *t));
    }
}
