//! Exact integer and prime-field linear algebra on small dense matrices.
//!
//! Integer work uses arbitrary precision with fraction-free (Bareiss)
//! elimination, mod-p work uses field arithmetic with deterministic
//! pivoting so that nullspace bases are reproducible. No floating point.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::primality::is_prime_u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    NotSquare,
    IndexOutOfRange,
    ShapeMismatch,
    /// The modulus failed a primality check; solving is only done over
    /// fields.
    CompositeModulus { modulus: u64 },
}

impl fmt::Display for LinAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinAlgError::NotSquare => write!(f, "matrix is not square"),
            LinAlgError::IndexOutOfRange => write!(f, "row or column index out of range"),
            LinAlgError::ShapeMismatch => write!(f, "matrix dimensions do not match"),
            LinAlgError::CompositeModulus { modulus } => {
                write!(f, "modulus {modulus} is not prime")
            }
        }
    }
}

impl core::error::Error for LinAlgError {}

/// Dense matrix of arbitrary-precision integers, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        IntMatrix { n_rows, n_cols, data: vec![BigInt::zero(); n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, LinAlgError> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(LinAlgError::ShapeMismatch);
        }
        Ok(IntMatrix { n_rows, n_cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, LinAlgError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.n_cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinAlgError> {
        if self.n_cols != other.n_rows {
            return Err(LinAlgError::ShapeMismatch);
        }
        let mut out = IntMatrix::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for j in 0..other.n_cols {
                let mut acc = BigInt::zero();
                for l in 0..self.n_cols {
                    acc += self.get(i, l) * other.get(l, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Exact determinant by Bareiss fraction-free elimination. The empty
    /// 0x0 matrix has determinant 1.
    pub fn det(&self) -> Result<BigInt, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare);
        }
        let n = self.n_rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.data.clone();
        let at = |a: &[BigInt], i: usize, j: usize| a[i * n + j].clone();
        let mut negate = false;
        let mut prev = BigInt::one();
        for r in 0..n - 1 {
            if a[r * n + r].is_zero() {
                match (r + 1..n).find(|&i| !a[i * n + r].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(r * n + j, i * n + j);
                        }
                        negate = !negate;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in r + 1..n {
                for j in r + 1..n {
                    // Exact by the Bareiss identity: `prev` always divides.
                    let num = at(&a, i, j) * at(&a, r, r) - at(&a, i, r) * at(&a, r, j);
                    a[i * n + j] = num / &prev;
                }
                a[i * n + r] = BigInt::zero();
            }
            prev = at(&a, r, r);
        }
        let det = at(&a, n - 1, n - 1);
        Ok(if negate { -det } else { det })
    }

    /// Unsigned minor: determinant of the matrix with row `i` and column
    /// `j` deleted (0-based).
    pub fn minor(&self, i: usize, j: usize) -> Result<BigInt, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare);
        }
        if i >= self.n_rows || j >= self.n_cols {
            return Err(LinAlgError::IndexOutOfRange);
        }
        let n = self.n_rows;
        let mut sub = IntMatrix::zeros(n - 1, n - 1);
        let mut si = 0;
        for r in 0..n {
            if r == i {
                continue;
            }
            let mut sj = 0;
            for c in 0..n {
                if c == j {
                    continue;
                }
                sub.set(si, sj, self.get(r, c).clone());
                sj += 1;
            }
            si += 1;
        }
        sub.det()
    }

    /// Cofactor `(-1)^(i+j) * minor(i, j)`.
    pub fn cofactor(&self, i: usize, j: usize) -> Result<BigInt, LinAlgError> {
        let m = self.minor(i, j)?;
        Ok(if (i + j) % 2 == 0 { m } else { -m })
    }

    /// The matrix of all cofactors; its transpose is the adjugate.
    pub fn cofactor_matrix(&self) -> Result<IntMatrix, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare);
        }
        let n = self.n_rows;
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.cofactor(i, j)?);
            }
        }
        Ok(out)
    }

    /// Adjugate: transpose of the cofactor matrix, so that
    /// `m * adjugate(m) = det(m) * I`.
    pub fn adjugate(&self) -> Result<IntMatrix, LinAlgError> {
        Ok(self.cofactor_matrix()?.transpose())
    }

    /// Entrywise `self + 1` (`self` plus the all-ones matrix).
    pub fn add_all_ones(&self) -> Result<IntMatrix, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare);
        }
        let mut out = self.clone();
        for entry in &mut out.data {
            *entry += 1;
        }
        Ok(out)
    }

    /// Gcd of the absolute values of all (n-1)x(n-1) minors, with the
    /// all-zero convention gcd() = 0. For a 1x1 matrix the single 0x0
    /// minor is 1.
    pub fn minor_gcd(&self) -> Result<BigInt, LinAlgError> {
        let cof = self.cofactor_matrix()?;
        let mut g = BigInt::zero();
        for entry in &cof.data {
            g = g.gcd(entry);
        }
        Ok(g)
    }

    fn reduced_mod_p(&self, p: u64) -> Vec<Vec<u64>> {
        let bp = BigInt::from(p);
        (0..self.n_rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| {
                        let r = x.mod_floor(&bp);
                        let (_, digits) = r.to_u64_digits();
                        digits.first().copied().unwrap_or(0)
                    })
                    .collect()
            })
            .collect()
    }

    /// Echelon basis of `{x : self * x = 0 mod p}` over the field with `p`
    /// elements, by Gauss-Jordan elimination with deterministic pivoting
    /// (first nonzero entry in column order). One basis vector per free
    /// column, in ascending column order; the vector for free column `f`
    /// has a 1 at `f` and zeros at the other free columns.
    pub fn nullspace_mod_p(&self, p: u64) -> Result<Vec<ModPVector>, LinAlgError> {
        if !is_prime_u64(p) {
            return Err(LinAlgError::CompositeModulus { modulus: p });
        }
        let rows = self.n_rows;
        let cols = self.n_cols;
        let mut m = self.reduced_mod_p(p);
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut rank = 0usize;
        for c in 0..cols {
            let Some(pr) = (rank..rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(rank, pr);
            let inv = pow_mod_u64(m[rank][c], p - 2, p);
            for x in &mut m[rank] {
                *x = mul_mod_u64(*x, inv, p);
            }
            for i in 0..rows {
                if i != rank && m[i][c] != 0 {
                    let factor = m[i][c];
                    for j in 0..cols {
                        let sub = mul_mod_u64(factor, m[rank][j], p);
                        m[i][j] = (m[i][j] + p - sub) % p;
                    }
                }
            }
            pivot_cols.push(c);
            rank += 1;
        }
        let mut basis = Vec::new();
        for f in 0..cols {
            if pivot_cols.contains(&f) {
                continue;
            }
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - m[row][f]) % p;
            }
            basis.push(ModPVector { modulus: p, entries: v });
        }
        Ok(basis)
    }

    /// `self * v mod p`, reducing entries of `self` mod p.
    pub fn mul_vec_mod_p(&self, v: &ModPVector) -> Result<ModPVector, LinAlgError> {
        if self.n_cols != v.entries.len() {
            return Err(LinAlgError::ShapeMismatch);
        }
        let p = v.modulus;
        let m = self.reduced_mod_p(p);
        let entries = m
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&v.entries)
                    .fold(0u64, |acc, (&a, &b)| (acc + mul_mod_u64(a, b, p)) % p)
            })
            .collect();
        Ok(ModPVector { modulus: p, entries })
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Vector of residues modulo a prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPVector {
    pub modulus: u64,
    pub entries: Vec<u64>,
}

impl ModPVector {
    pub fn new(modulus: u64, entries: Vec<u64>) -> Self {
        let entries = entries.into_iter().map(|x| x % modulus).collect();
        ModPVector { modulus, entries }
    }

    pub fn all_ones(modulus: u64, len: usize) -> Self {
        ModPVector { modulus, entries: vec![1 % modulus; len] }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// Constant vectors are exactly the multiples of the all-ones vector.
    pub fn is_constant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] == w[1])
    }

    pub fn add(&self, other: &ModPVector) -> ModPVector {
        debug_assert_eq!(self.modulus, other.modulus);
        ModPVector {
            modulus: self.modulus,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| (a + b) % self.modulus)
                .collect(),
        }
    }

    pub fn scaled(&self, factor: u64) -> ModPVector {
        ModPVector {
            modulus: self.modulus,
            entries: self
                .entries
                .iter()
                .map(|&a| mul_mod_u64(a, factor % self.modulus, self.modulus))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    /// A 4x4 coloring matrix of a virtual diagram whose minors are not all
    /// equal (its columns do not sum to zero).
    fn uneven_minors_fixture() -> IntMatrix {
        m(&[&[-1, -1, 2, 0], &[2, -1, -1, 0], &[2, 0, -1, -1], &[-1, 2, 0, -1]])
    }

    /// Naive cofactor-expansion determinant, used as an independent oracle
    /// for the Bareiss implementation.
    fn det_oracle(a: &IntMatrix) -> BigInt {
        let n = a.n_rows();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return a.get(0, 0).clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            let mut sub = IntMatrix::zeros(n - 1, n - 1);
            for i in 1..n {
                let mut sj = 0;
                for c in 0..n {
                    if c == j {
                        continue;
                    }
                    sub.set(i - 1, sj, a.get(i, c).clone());
                    sj += 1;
                }
            }
            let term = a.get(0, j) * det_oracle(&sub);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn det_examples() {
        assert_eq!(m(&[&[2, -1], &[-1, 2]]).det().unwrap(), BigInt::from(3));
        assert_eq!(IntMatrix::identity(4).det().unwrap(), BigInt::one());
        assert_eq!(IntMatrix::zeros(0, 0).det().unwrap(), BigInt::one());
        // the (1,1) submatrix of the fixture has |det| = 1
        let sub = m(&[&[-1, -1, 0], &[0, -1, -1], &[2, 0, -1]]);
        assert_eq!(sub.det().unwrap().abs(), BigInt::one());
        assert!(IntMatrix::zeros(2, 3).det().is_err());
    }

    #[test]
    fn det_matches_cofactor_expansion_oracle() {
        let mut rng = SplitMix64::new(0xDE7E_C7AB1E);
        for _ in 0..1000 {
            let n = (rng.next_u64() % 6) as usize;
            let mut a = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    a.set(i, j, BigInt::from((rng.next_u64() % 5) as i64 - 2));
                }
            }
            assert_eq!(a.det().unwrap(), det_oracle(&a));
        }
    }

    #[test]
    fn minor_examples() {
        assert_eq!(uneven_minors_fixture().minor(0, 0).unwrap().abs(), BigInt::one());
        assert_eq!(uneven_minors_fixture().minor(3, 3).unwrap().abs(), BigInt::from(3));
        assert_eq!(m(&[&[5]]).minor(0, 0).unwrap(), BigInt::one());
        assert!(uneven_minors_fixture().minor(4, 0).is_err());
    }

    #[test]
    fn cofactor_matrix_examples() {
        let c = m(&[&[1, -1], &[-1, 1]]).cofactor_matrix().unwrap();
        assert_eq!(c, m(&[&[1, 1], &[1, 1]]));
        let trefoil = m(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        let c = trefoil.cofactor_matrix().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(*c.get(i, j), BigInt::from(3));
            }
        }
        assert_eq!(
            IntMatrix::identity(2).cofactor_matrix().unwrap(),
            IntMatrix::identity(2)
        );
        // cross-check the rank-one-update identity on the trefoil matrix
        assert_eq!(trefoil.add_all_ones().unwrap().det().unwrap(), BigInt::from(27));
    }

    #[test]
    fn fixture_minors_are_not_all_equal() {
        let cof = uneven_minors_fixture().cofactor_matrix().unwrap();
        let first = cof.get(0, 0).clone();
        assert!((0..4).any(|i| (0..4).any(|j| *cof.get(i, j) != first)));
        assert_eq!(uneven_minors_fixture().minor_gcd().unwrap(), BigInt::one());
    }

    #[test]
    fn adjugate_identity_on_random_matrices() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..200 {
            let n = 1 + (rng.next_u64() % 4) as usize;
            let mut a = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    a.set(i, j, BigInt::from((rng.next_u64() % 7) as i64 - 3));
                }
            }
            let det = a.det().unwrap();
            let product = a.mul(&a.adjugate().unwrap()).unwrap();
            let mut expected = IntMatrix::zeros(n, n);
            for i in 0..n {
                expected.set(i, i, det.clone());
            }
            assert_eq!(product, expected);
        }
    }

    #[test]
    fn equal_cofactors_when_rows_and_columns_sum_to_zero() {
        // Build small square matrices with all row and column sums zero by
        // completing a random (n-1)x(n-1) block; classically all their
        // cofactors agree.
        let mut rng = SplitMix64::new(1234);
        for _ in 0..100 {
            let n = 2 + (rng.next_u64() % 3) as usize;
            let mut a = IntMatrix::zeros(n, n);
            for i in 0..n - 1 {
                for j in 0..n - 1 {
                    a.set(i, j, BigInt::from((rng.next_u64() % 9) as i64 - 4));
                }
            }
            for i in 0..n - 1 {
                let s: BigInt = (0..n - 1).map(|j| a.get(i, j).clone()).sum();
                a.set(i, n - 1, -s);
            }
            for j in 0..n {
                let s: BigInt = (0..n - 1).map(|i| a.get(i, j).clone()).sum();
                a.set(n - 1, j, -s);
            }
            let cof = a.cofactor_matrix().unwrap();
            let first = cof.get(0, 0).clone();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(*cof.get(i, j), first);
                }
            }
        }
    }

    #[test]
    fn nullspace_examples() {
        let trefoil = m(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        let basis = trefoil.nullspace_mod_p(3).unwrap();
        assert_eq!(basis.len(), 2);
        let basis = trefoil.nullspace_mod_p(5).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].entries, [1, 1, 1]);
        let basis = IntMatrix::zeros(3, 3).nullspace_mod_p(2).unwrap();
        assert_eq!(basis.len(), 3);
        assert!(matches!(
            trefoil.nullspace_mod_p(4),
            Err(LinAlgError::CompositeModulus { modulus: 4 })
        ));
    }

    #[test]
    fn nullspace_vectors_are_in_the_kernel_and_count_matches() {
        let mut rng = SplitMix64::new(55);
        for &p in &[2u64, 3, 5] {
            for _ in 0..40 {
                let rows = 1 + (rng.next_u64() % 3) as usize;
                let cols = 1 + (rng.next_u64() % 3) as usize;
                let mut a = IntMatrix::zeros(rows, cols);
                for i in 0..rows {
                    for j in 0..cols {
                        a.set(i, j, BigInt::from((rng.next_u64() % 11) as i64 - 5));
                    }
                }
                let basis = a.nullspace_mod_p(p).unwrap();
                for v in &basis {
                    assert!(a.mul_vec_mod_p(v).unwrap().is_zero());
                }
                // independent count: enumerate all p^cols vectors
                let mut kernel = 0u64;
                let total = p.pow(cols as u32);
                for idx in 0..total {
                    let mut v = vec![0u64; cols];
                    let mut t = idx;
                    for entry in &mut v {
                        *entry = t % p;
                        t /= p;
                    }
                    let v = ModPVector { modulus: p, entries: v };
                    if a.mul_vec_mod_p(&v).unwrap().is_zero() {
                        kernel += 1;
                    }
                }
                assert_eq!(kernel, p.pow(basis.len() as u32));
            }
        }
    }

    #[test]
    fn add_all_ones_examples() {
        let trefoil = m(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert_eq!(
            trefoil.add_all_ones().unwrap(),
            m(&[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3]])
        );
        assert_eq!(m(&[&[0]]).add_all_ones().unwrap(), m(&[&[1]]));
        assert!(IntMatrix::zeros(2, 3).add_all_ones().is_err());
    }
}
