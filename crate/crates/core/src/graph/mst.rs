use std::collections::BTreeSet;

use super::HyperTree;
use crate::error::{Error, Result};
use crate::hypergraph::{HvId, HyperGraph};

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Kruskal's algorithm on the subgraph induced by `subset`. Equal-cost edges
/// are taken in (a, b) order. The anchor is left unset.
pub fn kruskal_mst(h: &HyperGraph, subset: &BTreeSet<HvId>) -> Result<HyperTree> {
    if subset.is_empty() {
        return Err(Error::DisconnectedSubset);
    }
    let mut candidates: Vec<(f64, HvId, HvId)> = h
        .edges()
        .iter()
        .filter(|e| subset.contains(&e.a) && subset.contains(&e.b))
        .map(|e| (e.cost, e.a, e.b))
        .collect();
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0).then((x.1, x.2).cmp(&(y.1, y.2))));

    let local: Vec<HvId> = subset.iter().copied().collect();
    let slot = |v: HvId| local.binary_search(&v).expect("edge endpoints are in the subset");
    let mut sets = DisjointSets::new(local.len());
    let mut edges = BTreeSet::new();
    let mut total_cost = 0.0;
    for (cost, a, b) in candidates {
        if sets.union(slot(a), slot(b)) {
            edges.insert((a, b));
            total_cost += cost;
            if edges.len() + 1 == local.len() {
                break;
            }
        }
    }
    if edges.len() + 1 != local.len() {
        return Err(Error::DisconnectedSubset);
    }
    Ok(HyperTree { vertices: subset.clone(), edges, anchor: None, total_cost })
}
