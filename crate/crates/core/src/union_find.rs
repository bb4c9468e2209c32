/// Disjoint sets over `0..n` with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two sets were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Classes restricted to `members`, each sorted, ordered by smallest element.
    pub fn classes_of(&mut self, members: &[usize]) -> Vec<Vec<usize>> {
        let mut by_root: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut slot = vec![usize::MAX; self.parent.len()];
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        for x in sorted {
            let r = self.find(x);
            if slot[r] == usize::MAX {
                slot[r] = by_root.len();
                by_root.push((r, Vec::new()));
            }
            by_root[slot[r]].1.push(x);
        }
        by_root.into_iter().map(|(_, c)| c).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::UnionFind;

    #[test]
    fn merges_and_lists_classes() {
        let mut uf = UnionFind::new(6);
        assert!(uf.union(4, 1));
        assert!(uf.union(1, 5));
        assert!(!uf.union(5, 4));
        assert!(uf.same(4, 5));
        assert!(!uf.same(0, 1));
        assert_eq!(
            uf.classes_of(&[0, 1, 2, 3, 4, 5]),
            vec![vec![0], vec![1, 4, 5], vec![2], vec![3]]
        );
        assert_eq!(uf.classes_of(&[5, 3]), vec![vec![3], vec![5]]);
    }
}
