//! Integer lattices in ℤ^n via Hermite normal form.

use num_integer::Integer;

/// A sublattice of ℤ^n stored as an echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    dim: usize,
    basis: Vec<Vec<i128>>,
}

impl IntLattice {
    pub fn from_generators<'a>(dim: usize, gens: impl IntoIterator<Item = &'a [i64]>) -> Self {
        let mut lat = IntLattice { dim, basis: Vec::new() };
        for g in gens {
            lat.insert(g.iter().map(|&x| x as i128).collect());
        }
        lat
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i128>] {
        &self.basis
    }

    /// Reduce `v` against the basis; the remainder is zero iff v is in the lattice.
    fn reduce(&self, mut v: Vec<i128>) -> Vec<i128> {
        for b in &self.basis {
            let p = pivot(b).unwrap();
            if v[p] != 0 {
                let q = Integer::div_floor(&v[p], &b[p]);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= q * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let r = self.reduce(v.iter().map(|&x| x as i128).collect());
        r.iter().all(|&x| x == 0)
    }

    fn insert(&mut self, v: Vec<i128>) {
        let mut v = v;
        let mut i = 0;
        loop {
            let Some(pv) = pivot(&v) else { return };
            // find basis row with the same pivot column
            while i < self.basis.len() && pivot(&self.basis[i]).unwrap() < pv {
                i += 1;
            }
            if i == self.basis.len() || pivot(&self.basis[i]).unwrap() > pv {
                if v[pv] < 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                self.basis.insert(i, v);
                self.normalize();
                return;
            }
            // gcd step on column pv between basis[i] and v
            let mut b = std::mem::take(&mut self.basis[i]);
            while v[pv] != 0 {
                let q = Integer::div_floor(&b[pv], &v[pv]);
                for (x, y) in b.iter_mut().zip(&v) {
                    *x -= q * y;
                }
                std::mem::swap(&mut b, &mut v);
            }
            if b[pv] < 0 {
                b.iter_mut().for_each(|x| *x = -*x);
            }
            self.basis[i] = b;
            i += 1;
        }
    }

    /// Reduce entries above pivots, keeping numbers small.
    fn normalize(&mut self) {
        for i in 0..self.basis.len() {
            let p = pivot(&self.basis[i]).unwrap();
            for j in 0..i {
                let q = Integer::div_floor(&self.basis[j][p], &self.basis[i][p]);
                if q != 0 {
                    let row = self.basis[i].clone();
                    for (x, y) in self.basis[j].iter_mut().zip(&row) {
                        *x -= q * y;
                    }
                }
            }
        }
    }
}

fn pivot(v: &[i128]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}
