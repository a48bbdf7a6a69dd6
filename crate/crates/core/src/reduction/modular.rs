//! Word-size modular linear algebra used to assemble the exact division map.

use rug::Integer;

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Primes just below `2^62`, in decreasing order.
pub struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    pub fn new() -> Self {
        PrimeStream { next: (1u64 << 62) - 1 }
    }
}

impl Default for PrimeStream {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for PrimeStream {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while self.next > 2 {
            let c = self.next;
            self.next -= 2;
            if is_prime_u64(c) {
                return Some(c);
            }
        }
        None
    }
}

pub fn reduce_integer(x: &Integer, p: u64) -> u64 {
    let m = Integer::from(x % p);
    let m = if m < 0 { m + p } else { m };
    m.to_u64().expect("reduced residue fits in u64")
}

/// Result of Gauss–Jordan elimination of `[M | I]` modulo a prime.
pub struct ModularRref {
    pub prime: u64,
    /// Pivot columns of `M`, in increasing order.
    pub pivots: Vec<usize>,
    /// `det(M[:, pivots])`, meaningful when the rank equals the row count.
    pub det: u64,
    /// Right block of the reduced matrix, row `k` for the `k`-th pivot.
    pub transform: Vec<Vec<u64>>,
}

impl ModularRref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduced row echelon form of `[M | I]` with first-nonzero pivoting.
/// `m` is given row-major with `ncols` columns and already reduced mod `p`.
pub fn rref_with_transform(rows: &[Vec<u64>], ncols: usize, p: u64) -> ModularRref {
    let nrows = rows.len();
    let width = ncols + nrows;
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = Vec::with_capacity(width);
            v.extend_from_slice(r);
            v.resize(width, 0);
            v[ncols + i] = 1;
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut det = 1u64;
    let mut cur = 0usize;
    for col in 0..ncols {
        if cur == nrows {
            break;
        }
        let Some(pr) = (cur..nrows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        if pr != cur {
            a.swap(pr, cur);
            det = (p - det) % p;
        }
        let pv = a[cur][col];
        det = mul_mod(det, pv, p);
        let inv = inv_mod(pv, p);
        let support: Vec<usize> = {
            let row = &mut a[cur];
            let mut s = Vec::new();
            for (j, x) in row.iter_mut().enumerate().skip(col) {
                if *x != 0 {
                    *x = mul_mod(*x, inv, p);
                    s.push(j);
                }
            }
            s
        };
        let pivot_row = a[cur].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == cur {
                continue;
            }
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            let neg = p - factor;
            for &j in &support {
                let t = mul_mod(neg, pivot_row[j], p);
                let s = row[j] + t;
                row[j] = if s >= p { s - p } else { s };
            }
        }
        pivots.push(col);
        cur += 1;
    }
    let transform = a
        .into_iter()
        .take(pivots.len())
        .map(|r| r[ncols..].to_vec())
        .collect();
    ModularRref {
        prime: p,
        pivots,
        det,
        transform,
    }
}

/// Garner reconstruction of the symmetric representative of a value known
/// modulo each prime in `primes`.
pub struct Crt {
    primes: Vec<u64>,
    /// `inv[i][j] = primes[j]^{-1} mod primes[i]` for `j < i`.
    inv: Vec<Vec<u64>>,
    modulus: Integer,
}

impl Crt {
    pub fn new(primes: Vec<u64>) -> Crt {
        let inv = primes
            .iter()
            .enumerate()
            .map(|(i, &pi)| primes[..i].iter().map(|&pj| inv_mod(pj % pi, pi)).collect())
            .collect();
        let modulus = primes.iter().fold(Integer::from(1), |acc, &p| acc * p);
        Crt {
            primes,
            inv,
            modulus,
        }
    }

    pub fn modulus(&self) -> &Integer {
        &self.modulus
    }

    pub fn reconstruct(&self, residues: &[u64]) -> Integer {
        let n = self.primes.len();
        debug_assert_eq!(residues.len(), n);
        let mut mixed = vec![0u64; n];
        for i in 0..n {
            let pi = self.primes[i];
            let mut x = residues[i] % pi;
            for j in 0..i {
                // x = (x - mixed[j]) * primes[j]^{-1} mod pi
                let mj = mixed[j] % pi;
                x = if x >= mj { x - mj } else { x + pi - mj };
                x = mul_mod(x, self.inv[i][j], pi);
            }
            mixed[i] = x;
        }
        let mut acc = Integer::from(mixed[n - 1]);
        for i in (0..n - 1).rev() {
            acc *= self.primes[i];
            acc += mixed[i];
        }
        let half = Integer::from(&self.modulus >> 1);
        if acc > half {
            acc -= &self.modulus;
        }
        acc
    }
}
