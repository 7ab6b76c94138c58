//! Dense linear algebra over the prime field F_p for small p.
//!
//! Every hom-space in the engine is a coordinate space F_p^d with d tiny
//! (single digits), so plain dense Gaussian elimination is the right tool.
//! Entries are stored as `u8` values already reduced mod p.

/// Reduce an integer into `0..p`.
#[inline]
pub fn norm(x: i64, p: u8) -> u8 {
    let p = p as i64;
    (((x % p) + p) % p) as u8
}

/// Multiplicative inverse mod p (p prime, x nonzero).
#[inline]
pub fn inv_mod(x: u8, p: u8) -> u8 {
    // p <= 251 so a linear scan is fine.
    debug_assert!(!x.is_multiple_of(p));
    (1..p).find(|&y| (x as u16 * y as u16) % p as u16 == 1).unwrap()
}

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub struct Mat {
    p: u8,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Mat {
    pub fn zero(p: u8, rows: usize, cols: usize) -> Self {
        Mat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u8, n: usize) -> Self {
        let mut m = Mat::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u8, cols: usize, rows: &[Vec<u8>]) -> Self {
        let mut m = Mat::zero(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    pub fn from_fn(p: u8, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut m = Mat::zero(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j) % p);
            }
        }
        m
    }

    #[inline]
    pub fn p(&self) -> u8 {
        self.p
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        self.data[i * self.cols + j] = x % self.p;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        assert_eq!(self.p, rhs.p);
        let p = self.p as u32;
        let mut out = Mat::zero(self.p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u32;
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = (out.get(i, j) as u32 + a * rhs.get(k, j) as u32) % p;
                    out.data[i * rhs.cols + j] = v as u8;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u32;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u32;
                for j in 0..self.cols {
                    acc = (acc + self.get(i, j) as u32 * v[j] as u32) % p;
                }
                acc as u8
            })
            .collect()
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.p, self.rows, self.cols, |i, j| {
            ((self.get(i, j) as u16 + rhs.get(i, j) as u16) % self.p as u16) as u8
        })
    }

    pub fn neg(&self) -> Mat {
        Mat::from_fn(self.p, self.rows, self.cols, |i, j| norm(-(self.get(i, j) as i64), self.p))
    }

    pub fn scale(&self, c: u8) -> Mat {
        Mat::from_fn(self.p, self.rows, self.cols, |i, j| {
            ((self.get(i, j) as u16 * c as u16) % self.p as u16) as u8
        })
    }

    /// Stack `self` on top of `other`.
    pub fn vcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Place `self` to the left of `other`.
    pub fn hcat(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.p, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    /// Reduced row echelon form together with the pivot column of each
    /// nonzero row.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let p = m.p as i64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                let (a, b) = (m.get(r, j), m.get(pr, j));
                m.set(r, j, b);
                m.set(pr, j, a);
            }
            let inv = inv_mod(m.get(r, c), m.p);
            for j in 0..m.cols {
                m.set(r, j, ((m.get(r, j) as u16 * inv as u16) % m.p as u16) as u8);
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let f = m.get(i, c) as i64;
                    for j in 0..m.cols {
                        let v = norm(m.get(i, j) as i64 - f * m.get(r, j) as i64 % p, m.p);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[u8]) -> Option<Vec<u8>> {
        assert_eq!(b.len(), self.rows);
        let bm = Mat::from_fn(self.p, self.rows, 1, |i, _| b[i]);
        let aug = self.hcat(&bm);
        let (r, pivots) = aug.rref();
        let mut x = vec![0u8; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            if pc == self.cols {
                return None; // pivot in the augmented column
            }
            x[pc] = r.get(row, self.cols);
        }
        Some(x)
    }

    /// Basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<u8>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivset: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        for free in 0..self.cols {
            if pivset[free] {
                continue;
            }
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = norm(-(r.get(row, free) as i64), self.p);
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let aug = self.hcat(&Mat::identity(self.p, self.rows));
        let (r, pivots) = aug.rref();
        if pivots.len() != self.rows || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(Mat::from_fn(self.p, self.rows, self.cols, |i, j| r.get(i, self.cols + j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// A linear subspace of F_p^n kept in reduced echelon form, with the
/// projection onto the quotient space read off the non-pivot coordinates.
#[derive(Clone, Debug)]
pub struct Subspace {
    p: u8,
    ambient: usize,
    basis: Mat, // rref rows, one per dimension
    pivots: Vec<usize>,
    free: Vec<usize>, // non-pivot coordinates, in order
}

impl Subspace {
    pub fn span(p: u8, ambient: usize, vectors: &[Vec<u8>]) -> Self {
        let m = if vectors.is_empty() {
            Mat::zero(p, 0, ambient)
        } else {
            Mat::from_rows(p, ambient, vectors)
        };
        let (r, pivots) = m.rref();
        let basis = Mat::from_fn(p, pivots.len(), ambient, |i, j| r.get(i, j));
        let free = (0..ambient).filter(|c| !pivots.contains(c)).collect();
        Subspace { p, ambient, basis, pivots, free }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Dimension of the quotient F_p^n / self.
    pub fn codim(&self) -> usize {
        self.ambient - self.pivots.len()
    }

    /// Reduce `v` modulo the subspace: pivot coordinates become zero.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.ambient);
        let p = self.p as i64;
        let mut v: Vec<i64> = v.iter().map(|&x| x as i64).collect();
        for (row, &pc) in self.pivots.iter().enumerate() {
            let f = v[pc] % p;
            if f != 0 {
                for j in 0..self.ambient {
                    v[j] -= f * self.basis.get(row, j) as i64;
                }
            }
        }
        v.into_iter().map(|x| norm(x, self.p)).collect()
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Quotient coordinates of `v` (length = codim).
    pub fn project(&self, v: &[u8]) -> Vec<u8> {
        let r = self.reduce(v);
        self.free.iter().map(|&c| r[c]).collect()
    }

    /// The echelon basis rows of the subspace.
    pub fn basis_rows(&self) -> Vec<Vec<u8>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    /// Matrix of the projection F_p^n → F_p^codim.
    pub fn proj_matrix(&self) -> Mat {
        let mut cols: Vec<Vec<u8>> = Vec::with_capacity(self.ambient);
        for j in 0..self.ambient {
            let mut e = vec![0u8; self.ambient];
            e[j] = 1;
            cols.push(self.project(&e));
        }
        Mat::from_fn(self.p, self.codim(), self.ambient, |i, j| cols[j][i])
    }

    /// Matrix of the canonical section F_p^codim → F_p^n.
    pub fn lift_matrix(&self) -> Mat {
        let mut m = Mat::zero(self.p, self.ambient, self.codim());
        for (idx, &c) in self.free.iter().enumerate() {
            m.set(c, idx, 1);
        }
        m
    }

    /// Canonical representative of a quotient coordinate vector.
    pub fn lift(&self, q: &[u8]) -> Vec<u8> {
        assert_eq!(q.len(), self.free.len());
        let mut v = vec![0u8; self.ambient];
        for (idx, &c) in self.free.iter().enumerate() {
            v[c] = q[idx] % self.p;
        }
        v
    }
}

/// All vectors of F_p^dim in lexicographic order (last coordinate fastest).
pub struct VecIter {
    p: u8,
    cur: Option<Vec<u8>>,
}

impl VecIter {
    pub fn new(p: u8, dim: usize) -> Self {
        VecIter { p, cur: Some(vec![0; dim]) }
    }
}

impl Iterator for VecIter {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        let out = self.cur.clone()?;
        let mut nxt = out.clone();
        let mut i = nxt.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if nxt[i] + 1 < self.p {
                nxt[i] += 1;
                for x in nxt[i + 1..].iter_mut() {
                    *x = 0;
                }
                self.cur = Some(nxt);
                break;
            }
        }
        Some(out)
    }
}
