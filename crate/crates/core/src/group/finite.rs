use super::GroupError;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A permutation of `0..n`, acting on the left: `(p q)(i) = p(q(i))`.
pub type Perm = Vec<usize>;

pub fn compose_perm(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

pub fn invert_perm(p: &[usize]) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

pub fn is_perm(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n
        && p.iter().all(|&i| {
            if i >= n || seen[i] {
                false
            } else {
                seen[i] = true;
                true
            }
        })
}

/// A finite group as a Cayley table; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub table: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
    pub names: Vec<String>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Closure of the given permutations of degree `n`, elements listed in BFS order from the
    /// identity. Returns the group together with the permutation of each element.
    pub fn from_permutations(
        n: usize,
        gens: &[Perm],
        bound: usize,
    ) -> Result<(Self, Vec<Perm>), GroupError> {
        for (i, g) in gens.iter().enumerate() {
            if !is_perm(g, n) {
                return Err(GroupError::BadPermutation(i));
            }
        }
        let id: Perm = (0..n).collect();
        let mut elems = vec![id.clone()];
        let mut index = BTreeMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for g in gens {
                let p = compose_perm(g, &elems[a]);
                if !index.contains_key(&p) {
                    if elems.len() >= bound {
                        return Err(GroupError::ClosureBound(bound));
                    }
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose_perm(a, b)]).collect())
            .collect();
        let inverse = elems.iter().map(|a| index[&invert_perm(a)]).collect();
        let names = (0..elems.len()).map(|i| format!("e{i}")).collect();
        Ok((FiniteGroup { table, inverse, names }, elems))
    }

    pub fn cyclic(n: usize) -> Self {
        let gen: Perm = (0..n).map(|i| (i + 1) % n).collect();
        let (mut g, _) = Self::from_permutations(n, &[gen], n).expect("cyclic group");
        // BFS order from a single generator is 0, 1, 2, ... so element k is rotation by k.
        g.names = (0..n).map(|k| k.to_string()).collect();
        g
    }

    pub fn dihedral(n: usize) -> Self {
        let r: Perm = (0..n).map(|i| (i + 1) % n).collect();
        let s: Perm = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(n, &[r, s], 2 * n).expect("dihedral group").0
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n > 1 {
            gens.push((0..n).map(|i| (i + 1) % n).collect());
            let mut t: Perm = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
        }
        let bound = (1..=n).product();
        Self::from_permutations(n, &gens, bound).expect("symmetric group").0
    }

    pub fn alternating(n: usize) -> Self {
        let gens: Vec<Perm> = (2..n)
            .map(|k| {
                let mut p: Perm = (0..n).collect();
                p[0] = 1;
                p[1] = k;
                p[k] = 0;
                p
            })
            .collect();
        let bound = (1..=n).product::<usize>() / 2;
        Self::from_permutations(n, &gens, bound.max(1)).expect("alternating group").0
    }

    pub fn quaternion() -> Self {
        // Left regular representation of Q8 on {1,i,j,k,-1,-i,-j,-k}.
        let i: Perm = vec![1, 4, 3, 6, 5, 0, 7, 2];
        let j: Perm = vec![2, 7, 4, 1, 6, 3, 0, 5];
        Self::from_permutations(8, &[i, j], 8).expect("quaternion group").0
    }

    pub fn direct_product(a: &Self, b: &Self) -> Self {
        let nb = b.order();
        let n = a.order() * nb;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        let inverse = (0..n).map(|x| a.inv(x / nb) * nb + b.inv(x % nb)).collect();
        let names = (0..n)
            .map(|x| format!("({},{})", a.names[x / nb], b.names[x % nb]))
            .collect();
        FiniteGroup { table, inverse, names }
    }

    pub fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set = BTreeSet::from([0]);
        let mut queue = VecDeque::from([0]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if set.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        set
    }

    pub fn is_normal(&self, h: &BTreeSet<usize>) -> bool {
        (0..self.order()).all(|g| h.iter().all(|&x| h.contains(&self.mul(self.mul(g, x), self.inv(g)))))
    }

    pub fn is_central(&self, h: &BTreeSet<usize>) -> bool {
        h.iter().all(|&x| (0..self.order()).all(|g| self.mul(g, x) == self.mul(x, g)))
    }

    /// Subgroups generated by at most two elements, deduplicated, ordered by (size, members).
    pub fn small_subgroups(&self) -> Vec<BTreeSet<usize>> {
        let n = self.order();
        let mut found = BTreeSet::new();
        for a in 0..n {
            for b in a..n {
                found.insert(self.closure(&[a, b]));
            }
        }
        let mut v: Vec<_> = found.into_iter().collect();
        v.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
        v
    }

    pub fn normal_subgroups(&self) -> Vec<BTreeSet<usize>> {
        self.small_subgroups().into_iter().filter(|h| self.is_normal(h)).collect()
    }

    /// Left cosets `gH`, each as a sorted set, ordered by least element.
    pub fn left_cosets(&self, h: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for g in 0..self.order() {
            if seen.contains(&g) {
                continue;
            }
            let c: BTreeSet<usize> = h.iter().map(|&x| self.mul(g, x)).collect();
            seen.extend(c.iter().copied());
            out.push(c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_group(g: &FiniteGroup) -> bool {
        let n = g.order();
        (0..n).all(|a| g.mul(0, a) == a && g.mul(a, 0) == a && g.mul(a, g.inv(a)) == 0)
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)))))
    }

    #[test]
    fn catalogue_orders() {
        assert_eq!(FiniteGroup::cyclic(5).order(), 5);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(FiniteGroup::alternating(4).order(), 12);
        assert_eq!(FiniteGroup::quaternion().order(), 8);
        let k = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3));
        assert_eq!(k.order(), 6);
        for g in [FiniteGroup::dihedral(3), FiniteGroup::quaternion(), k] {
            assert!(is_group(&g));
        }
    }

    #[test]
    fn normal_subgroups_of_s3() {
        let s3 = FiniteGroup::symmetric(3);
        let sizes: Vec<usize> = s3.normal_subgroups().iter().map(|h| h.len()).collect();
        assert_eq!(sizes, vec![1, 3, 6]);
        // Q8 is Hamiltonian: every subgroup is normal.
        let q = FiniteGroup::quaternion();
        assert_eq!(q.small_subgroups().len(), q.normal_subgroups().len());
    }
}
