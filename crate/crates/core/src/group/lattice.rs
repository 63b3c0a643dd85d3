use super::GroupError;

/// A full-rank sublattice of `Z^nu`, stored as an upper-triangular basis with positive pivots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    rows: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn new(nu: usize, generators: &[Vec<i64>]) -> Result<Self, GroupError> {
        for g in generators {
            if g.len() != nu {
                return Err(GroupError::Dimension { expected: nu, got: g.len() });
            }
        }
        let mut m: Vec<Vec<i64>> = generators.to_vec();
        let mut rows = Vec::with_capacity(nu);
        for c in 0..nu {
            // Euclid on column c over the remaining rows.
            loop {
                let mut nz: Vec<usize> = (0..m.len()).filter(|&i| m[i][c] != 0).collect();
                if nz.len() <= 1 {
                    break;
                }
                nz.sort_by_key(|&i| m[i][c].abs());
                let p = nz[0];
                for &i in &nz[1..] {
                    let q = m[i][c] / m[p][c];
                    let pr = m[p].clone();
                    for (a, b) in m[i].iter_mut().zip(pr.iter()) {
                        *a -= q * b;
                    }
                }
            }
            let Some(p) = (0..m.len()).find(|&i| m[i][c] != 0) else {
                return Err(GroupError::NotFullRank(nu));
            };
            let mut row = m.swap_remove(p);
            if row[c] < 0 {
                row.iter_mut().for_each(|v| *v = -*v);
            }
            rows.push(row);
        }
        Ok(Lattice { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// `[Z^nu : L]`.
    pub fn index(&self) -> u64 {
        self.rows.iter().enumerate().map(|(i, r)| r[i] as u64).product()
    }

    /// Splits `v = rep + b` with `b` in the lattice and `0 <= rep_i < pivot_i`.
    pub fn split(&self, v: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let mut rep = v.to_vec();
        for (i, row) in self.rows.iter().enumerate() {
            let k = rep[i].div_euclid(row[i]);
            if k != 0 {
                for (a, b) in rep.iter_mut().zip(row.iter()) {
                    *a -= k * b;
                }
            }
        }
        let b = v.iter().zip(rep.iter()).map(|(x, r)| x - r).collect();
        (rep, b)
    }

    pub fn rep(&self, v: &[i64]) -> Vec<i64> {
        self.split(v).0
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.rep(v).iter().all(|&x| x == 0)
    }

    /// All coset representatives, in lexicographic order; the zero vector comes first.
    pub fn reps(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for i in 0..self.dim() {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (0..self.rows[i][i]).map(move |k| {
                        let mut q = p.clone();
                        q.push(k);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_and_reps() {
        let l = Lattice::new(2, &[vec![2, 1], vec![0, 3]]).unwrap();
        assert_eq!(l.index(), 6);
        assert_eq!(l.reps().len(), 6);
        assert!(l.contains(&[2, 4]));
        assert!(!l.contains(&[1, 0]));
        let reps = l.reps();
        for a in &reps {
            for b in &reps {
                let d: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                assert_eq!(a == b, l.contains(&d));
            }
        }
        assert!(Lattice::new(2, &[vec![1, 1], vec![2, 2]]).is_err());
    }
}
