//! Permutations of `{0, ..., n-1}` and the few group computations the
//! tables need.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::ffpoly::Partition;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| v as usize == i)
        });
        Perm(images)
    }

    /// From disjoint or overlapping cycles on `1..=n`, composed left to right.
    pub fn from_cycles(n: usize, cycles: &[&[u8]]) -> Self {
        let mut acc = Perm::identity(n);
        for cyc in cycles {
            let mut img: Vec<u8> = (0..n as u8).collect();
            for (i, &a) in cyc.iter().enumerate() {
                let b = cyc[(i + 1) % cyc.len()];
                img[a as usize - 1] = b - 1;
            }
            acc = acc.then(&Perm(img));
        }
        acc
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u8;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            parts.push(len);
        }
        Partition::new(parts)
    }

    pub fn is_even(&self) -> bool {
        let n = self.0.len();
        let cycles = self.cycle_type().parts().len();
        (n - cycles) % 2 == 0
    }
}

/// All elements of the group generated by `gens`, sorted.
pub fn closure(n: usize, gens: &[Perm]) -> Vec<Perm> {
    let id = Perm::identity(n);
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.then(s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    let mut all: Vec<Perm> = seen.into_iter().collect();
    all.sort();
    all
}

pub fn is_transitive(n: usize, gens: &[Perm]) -> bool {
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for g in gens {
            let j = g.apply(i);
            if !reached[j] {
                reached[j] = true;
                stack.push(j);
            }
        }
    }
    reached.into_iter().all(|r| r)
}

/// Smallest block system containing `a` and `b` in one block, as a class
/// label per point.
fn minimal_block(n: usize, gens: &[Perm], a: usize, b: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut pending = vec![(a, b)];
    while let Some((x, y)) = pending.pop() {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx == ry {
            continue;
        }
        parent[rx] = ry;
        for g in gens {
            pending.push((g.apply(x), g.apply(y)));
        }
    }
    (0..n).map(|i| find(&mut parent, i)).collect()
}

/// A transitive group is primitive when no pair `{0, b}` generates a
/// proper block.
pub fn is_primitive(n: usize, gens: &[Perm]) -> bool {
    if !is_transitive(n, gens) {
        return false;
    }
    (1..n).all(|b| {
        let classes = minimal_block(n, gens, 0, b);
        classes.iter().all(|&c| c == classes[0])
    })
}

pub fn cycle_types(elements: &[Perm]) -> BTreeSet<Partition> {
    elements.iter().map(Perm::cycle_type).collect()
}
