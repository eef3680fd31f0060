//! Union-find based component analysis shared by the solution-graph
//! modules.

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] as usize != i {
            self.parent[i] = self.parent[self.parent[i] as usize];
            i = self.parent[i] as usize;
        }
        i
    }

    pub fn union(&mut self, i: usize, j: usize) {
        let (mut a, mut b) = (self.find(i), self.find(j));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a as u32;
        self.size[a] += self.size[b];
    }
}

/// Sizes and representatives of the connected components of a solution
/// graph. `component_sizes` is descending; ties are broken by the
/// representative that comes first in the node ordering, so the giant
/// component is the one containing the smallest node key.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport<T> {
    pub total_nonzero: u64,
    pub component_sizes: Vec<u64>,
    pub giant_size: u64,
    pub residual: u64,
    pub min_component: u64,
    pub representatives: Vec<T>,
}

/// Full decomposition: the node list (in the caller's canonical order),
/// a component index per node (0 is the giant component), and the
/// summary report.
#[derive(Debug, Clone)]
pub struct Decomposition<T> {
    pub nodes: Vec<T>,
    pub comp_of: Vec<u32>,
    pub report: ComponentReport<T>,
    index: HashMap<T, usize>,
}

impl<T: Clone + Eq + Hash> Decomposition<T> {
    /// Component index of a node, if it is in the graph.
    pub fn component_of(&self, node: &T) -> Option<u32> {
        self.index.get(node).map(|&i| self.comp_of[i])
    }
}

/// Decompose the graph spanned by `nodes` under `neighbors`. Nodes must
/// already be in the canonical (ascending key) order; component output
/// is independent of traversal order by construction.
pub fn decompose<T, F>(nodes: Vec<T>, mut neighbors: F) -> Decomposition<T>
where
    T: Clone + Eq + Hash,
    F: FnMut(&T) -> Vec<T>,
{
    let index: HashMap<T, usize> =
        nodes.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
    let mut uf = UnionFind::new(nodes.len());
    for (i, node) in nodes.iter().enumerate() {
        for nb in neighbors(node) {
            if let Some(&j) = index.get(&nb) {
                uf.union(i, j);
            }
        }
    }
    // group by root, keep first-seen order of roots (= smallest member)
    let mut comp_ids: HashMap<usize, usize> = HashMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for i in 0..nodes.len() {
        let root = uf.find(i);
        let id = *comp_ids.entry(root).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        members[id].push(i);
    }
    // rank components: size descending, then representative ascending
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(members[c].len()), members[c][0]));

    let mut comp_of = vec![0u32; nodes.len()];
    let mut component_sizes = Vec::with_capacity(order.len());
    let mut representatives = Vec::with_capacity(order.len());
    for (rank, &c) in order.iter().enumerate() {
        component_sizes.push(members[c].len() as u64);
        representatives.push(nodes[members[c][0]].clone());
        for &i in &members[c] {
            comp_of[i] = rank as u32;
        }
    }
    let total = nodes.len() as u64;
    let giant = component_sizes.first().copied().unwrap_or(0);
    let report = ComponentReport {
        total_nonzero: total,
        component_sizes: component_sizes.clone(),
        giant_size: giant,
        residual: total - giant,
        min_component: component_sizes.last().copied().unwrap_or(0),
        representatives,
    };
    Decomposition { nodes, comp_of, report, index }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_components() {
        // path 0-1-2 plus isolated pair 3-4
        let nodes = vec![0u64, 1, 2, 3, 4];
        let dec = decompose(nodes, |&n| match n {
            0 => vec![1],
            1 => vec![0, 2],
            2 => vec![1],
            3 => vec![4],
            4 => vec![3],
            _ => vec![],
        });
        assert_eq!(dec.report.component_sizes, vec![3, 2]);
        assert_eq!(dec.report.giant_size, 3);
        assert_eq!(dec.report.residual, 2);
        assert_eq!(dec.report.min_component, 2);
        assert_eq!(dec.report.representatives, vec![0, 3]);
        assert_eq!(dec.comp_of, vec![0, 0, 0, 1, 1]);
    }

    #[test]
    fn tie_break_by_smallest_node() {
        let nodes = vec![0u64, 1, 2, 3];
        let dec = decompose(nodes, |&n| vec![n ^ 1]);
        assert_eq!(dec.report.component_sizes, vec![2, 2]);
        assert_eq!(dec.report.representatives[0], 0);
    }
}
