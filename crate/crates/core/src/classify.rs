//! Recognition of finite and affine irreducible Coxeter diagrams.
//!
//! A connected diagram is matched structurally against the finite families
//! `A_n, B_n, D_n, E_6..E_8, F_4, H_3, H_4, I_2(m)` and the affine families
//! `Ã_n, B̃_n, C̃_n, D̃_n, Ẽ_6..Ẽ_8, F̃_4, G̃_2`. The match is invariant under
//! relabelling of the nodes, so it plays the role of an isomorphism lookup.

use serde::Serialize;

use crate::matrix::{CoxeterMatrix, Order};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SubsetKind {
    Spherical,
    Affine,
    Indefinite,
}

struct Diagram {
    n: usize,
    adj: Vec<Vec<(usize, Order)>>,
}

impl Diagram {
    fn new(m: &CoxeterMatrix, nodes: &[u8]) -> Self {
        let n = nodes.len();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                let o = m.get(nodes[i].into(), nodes[j].into());
                if i != j && o.is_edge() {
                    adj[i].push((j, o));
                }
            }
        }
        Diagram { n, adj }
    }

    fn edges(&self) -> Vec<(usize, usize, Order)> {
        let mut out = Vec::new();
        for (i, nb) in self.adj.iter().enumerate() {
            for &(j, o) in nb {
                if i < j {
                    out.push((i, j, o));
                }
            }
        }
        out
    }

    fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    /// Walks away from `from` through `start` until a leaf; returns the nodes
    /// visited in order. Only meaningful on trees where the arm is a path.
    fn arm(&self, from: usize, start: usize) -> Option<Vec<usize>> {
        let mut path = vec![start];
        let (mut prev, mut cur) = (from, start);
        loop {
            let next: Vec<usize> = self.adj[cur].iter().map(|&(j, _)| j).filter(|&j| j != prev).collect();
            match next.len() {
                0 => return Some(path),
                1 => {
                    prev = cur;
                    cur = next[0];
                    path.push(cur);
                }
                _ => return None,
            }
        }
    }

    fn label(&self, i: usize, j: usize) -> Order {
        self.adj[i].iter().find(|&&(k, _)| k == j).map(|&(_, o)| o).unwrap_or(Order::Finite(2))
    }

    /// Nodes of a path diagram in order, starting from a leaf.
    fn path_order(&self) -> Option<Vec<usize>> {
        if self.n == 1 {
            return Some(vec![0]);
        }
        let leaf = (0..self.n).find(|&i| self.degree(i) == 1)?;
        let first = self.adj[leaf][0].0;
        let mut nodes = vec![leaf];
        nodes.extend(self.arm(leaf, first)?);
        (nodes.len() == self.n).then_some(nodes)
    }
}

/// Classifies one connected component given by its node list.
pub fn classify_component(m: &CoxeterMatrix, nodes: &[u8]) -> SubsetKind {
    use SubsetKind::*;
    let d = Diagram::new(m, nodes);
    let n = d.n;
    match n {
        0 | 1 => return Spherical,
        2 => {
            return match d.label(0, 1) {
                Order::Infinite => Affine,
                _ => Spherical,
            }
        }
        _ => {}
    }
    let edges = d.edges();
    if edges.iter().any(|e| e.2 == Order::Infinite) {
        return Indefinite;
    }
    if edges.len() >= n {
        let cycle = edges.len() == n && (0..n).all(|i| d.degree(i) == 2);
        let simply_laced = edges.iter().all(|e| e.2 == Order::Finite(3));
        return if cycle && simply_laced { Affine } else { Indefinite };
    }

    // Tree from here on.
    let heavy: Vec<(usize, usize, u32)> = edges
        .iter()
        .filter_map(|&(i, j, o)| o.finite().filter(|&x| x > 3).map(|x| (i, j, x)))
        .collect();
    let branches: Vec<usize> = (0..n).filter(|&i| d.degree(i) >= 3).collect();

    match heavy.as_slice() {
        [] => simply_laced_tree(&d, &branches),
        [(a, b, 4)] => {
            if branches.is_empty() {
                let path = d.path_order().expect("tree without branch is a path");
                let pos = edge_position(&path, *a, *b);
                let (left, right) = (pos + 1, n - 1 - pos);
                match (left.min(right), left.max(right)) {
                    (1, _) => Spherical,
                    (2, 2) => Spherical,
                    (2, 3) => Affine,
                    _ => Indefinite,
                }
            } else if branches.len() == 1 && d.degree(branches[0]) == 3 {
                b_tilde(&d, branches[0], (*a, *b))
            } else {
                Indefinite
            }
        }
        [(a1, b1, 4), (a2, b2, 4)] if branches.is_empty() => {
            let path = d.path_order().expect("path");
            let p1 = edge_position(&path, *a1, *b1);
            let p2 = edge_position(&path, *a2, *b2);
            let ends = [0, n - 2];
            if ends.contains(&p1) && ends.contains(&p2) && p1 != p2 {
                Affine
            } else {
                Indefinite
            }
        }
        [(a, b, 5)] if branches.is_empty() => {
            let path = d.path_order().expect("path");
            let p = edge_position(&path, *a, *b);
            if (p == 0 || p == n - 2) && (n == 3 || n == 4) {
                Spherical
            } else {
                Indefinite
            }
        }
        [(a, b, 6)] if branches.is_empty() && n == 3 => {
            let path = d.path_order().expect("path");
            let p = edge_position(&path, *a, *b);
            if p == 0 || p == 1 {
                Affine
            } else {
                Indefinite
            }
        }
        _ => Indefinite,
    }
}

fn edge_position(path: &[usize], a: usize, b: usize) -> usize {
    path.windows(2)
        .position(|w| (w[0] == a && w[1] == b) || (w[0] == b && w[1] == a))
        .expect("edge lies on path")
}

fn simply_laced_tree(d: &Diagram, branches: &[usize]) -> SubsetKind {
    use SubsetKind::*;
    match branches {
        [] => Spherical,
        [c] => {
            let arms: Option<Vec<usize>> =
                d.adj[*c].iter().map(|&(j, _)| d.arm(*c, j).map(|a| a.len())).collect();
            let Some(mut arms) = arms else { return Indefinite };
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] | [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Spherical,
                [2, 2, 2] | [1, 3, 3] | [1, 2, 5] | [1, 1, 1, 1] => Affine,
                _ => Indefinite,
            }
        }
        [c1, c2] => {
            // D̃_n: both branch points have degree 3 and carry two leaves each.
            let leafy = |c: usize| {
                d.degree(c) == 3 && d.adj[c].iter().filter(|&&(j, _)| d.degree(j) == 1).count() == 2
            };
            if leafy(*c1) && leafy(*c2) {
                Affine
            } else {
                Indefinite
            }
        }
        _ => Indefinite,
    }
}

/// `B̃_n`: a fork `(1, 1, k)` whose long arm ends in the order-4 bond.
fn b_tilde(d: &Diagram, c: usize, heavy: (usize, usize)) -> SubsetKind {
    let arms: Option<Vec<Vec<usize>>> = d.adj[c].iter().map(|&(j, _)| d.arm(c, j)).collect();
    let Some(arms) = arms else { return SubsetKind::Indefinite };
    let on_arm = |arm: &Vec<usize>| {
        let mut nodes = vec![c];
        nodes.extend(arm);
        nodes.windows(2).position(|w| {
            (w[0] == heavy.0 && w[1] == heavy.1) || (w[0] == heavy.1 && w[1] == heavy.0)
        })
    };
    let Some(idx) = arms.iter().position(|a| on_arm(a).is_some()) else {
        return SubsetKind::Indefinite;
    };
    let pos = on_arm(&arms[idx]).unwrap();
    let others_short = arms.iter().enumerate().all(|(i, a)| i == idx || a.len() == 1);
    if others_short && pos == arms[idx].len() - 1 {
        SubsetKind::Affine
    } else {
        SubsetKind::Indefinite
    }
}
