//! Dense linear algebra over `F_p`.

/// Arithmetic in `F_p` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Fp {
        assert!((2..1 << 32).contains(&p), "modulus out of range");
        Fp { p }
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn reduce(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
}

/// A growing row-echelon basis: each stored row has a leading 1 and zeros
/// in the pivot columns of the rows stored before it.
#[derive(Clone, Debug)]
pub struct Echelon {
    fp: Fp,
    width: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new(fp: Fp, width: usize) -> Echelon {
        Echelon { fp, width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, v: &mut [u64]) {
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = self.fp.sub(*x, self.fp.mul(c, *r));
                }
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        match w.iter().position(|&x| x != 0) {
            None => false,
            Some(pivot) => {
                let inv = self.fp.inv(w[pivot]);
                w.iter_mut().for_each(|x| *x = self.fp.mul(*x, inv));
                self.rows.push((pivot, w));
                true
            }
        }
    }
}

/// Rank of the span of `rows`.
pub fn rank(fp: Fp, width: usize, rows: &[Vec<u64>]) -> usize {
    let mut e = Echelon::new(fp, width);
    rows.iter().filter(|r| e.insert(r)).count()
}

/// Basis of `{c : sum_k c_k images[k] = 0}`, in reduced row echelon form
/// (so it does not depend on elimination order).
pub fn kernel(fp: Fp, width: usize, images: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = images.len();
    let mut e = Echelon::new(fp, width + n);
    let mut found = Vec::new();
    for (k, img) in images.iter().enumerate() {
        let mut row = img.clone();
        row.resize(width + n, 0);
        row[width + k] = 1;
        e.reduce(&mut row);
        if row[..width].iter().all(|&x| x == 0) {
            found.push(row[width..].to_vec());
        } else {
            e.insert(&row);
        }
    }
    rref(fp, found)
}

/// Reduced row echelon form of the span of `rows`, zero rows dropped.
pub fn rref(fp: Fp, rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut e = Echelon::new(fp, width);
    for r in &rows {
        e.insert(r);
    }
    let mut out: Vec<(usize, Vec<u64>)> = e.rows;
    // later rows are already clear in earlier pivot columns
    for k in (0..out.len()).rev() {
        let (pivot, row) = out[k].clone();
        for (_, other) in out.iter_mut().take(k) {
            let c = other[pivot];
            if c != 0 {
                for (x, r) in other.iter_mut().zip(&row) {
                    *x = fp.sub(*x, fp.mul(c, *r));
                }
            }
        }
    }
    out.sort_by_key(|(pivot, _)| *pivot);
    out.into_iter().map(|(_, r)| r).collect()
}
