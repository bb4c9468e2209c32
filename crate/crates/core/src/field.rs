//! Arithmetic in the prime field of order `2^61 - 1` and incremental
//! row-echelon bases over it. This is the workhorse behind every randomised
//! rank computation.

use rand::Rng;

/// The Mersenne prime `2^61 - 1`.
pub const MODULUS: u64 = (1 << 61) - 1;

#[inline]
fn fold(x: u64) -> u64 {
    let s = (x & MODULUS) + (x >> 61);
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    fold(a + b)
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    fold(a + MODULUS - b)
}

#[inline]
pub fn neg(a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        MODULUS - a
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    let z = a as u128 * b as u128;
    let lo = (z as u64) & MODULUS;
    let hi = (z >> 61) as u64;
    fold(lo + hi)
}

pub fn pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse; `a` must be non-zero.
pub fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, MODULUS - 2)
}

/// Uniform field element.
pub fn random<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    rng.random_range(0..MODULUS)
}

/// Reduces a signed integer into the field.
pub fn from_i64(x: i64) -> u64 {
    if x >= 0 {
        fold(x as u64)
    } else {
        neg(fold(x.unsigned_abs()))
    }
}

/// A row space under construction. Rows are stored normalised (pivot = 1)
/// and reduced against all earlier rows, so reducing a new vector in
/// insertion order eliminates every stored pivot.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn reduce(&self, row: &mut [u64]) {
        for (stored, &p) in self.rows.iter().zip(&self.pivots) {
            let c = row[p];
            if c != 0 {
                for (x, &s) in row[p..].iter_mut().zip(&stored[p..]) {
                    if s != 0 {
                        *x = sub(*x, mul(c, s));
                    }
                }
            }
        }
    }

    /// Whether `row` lies in the current span.
    pub fn contains(&self, row: &[u64]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(|&x| x == 0)
    }

    /// Adds `row`; returns false (leaving the space unchanged) if it was
    /// already in the span.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        debug_assert_eq!(row.len(), self.width);
        self.reduce(&mut row);
        let Some(p) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        let scale = inv(row[p]);
        for x in &mut row[p..] {
            *x = mul(*x, scale);
        }
        self.rows.push(row);
        self.pivots.push(p);
        true
    }
}

/// Rank of a list of rows of equal width.
pub fn rank<I>(width: usize, rows: I) -> usize
where
    I: IntoIterator<Item = Vec<u64>>,
{
    let mut e = Echelon::new(width);
    for r in rows {
        e.insert(r);
        if e.rank() == width {
            break;
        }
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_arithmetic() {
        assert_eq!(add(MODULUS - 1, 1), 0);
        assert_eq!(sub(0, 1), MODULUS - 1);
        assert_eq!(mul(MODULUS - 1, MODULUS - 1), 1);
        assert_eq!(from_i64(-1), MODULUS - 1);
        assert_eq!(mul(inv(12345), 12345), 1);
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(3, Vec::<Vec<u64>>::new()), 0);
        assert_eq!(rank(2, vec![vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(2, vec![vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(3, vec![vec![1, 2, 3], vec![0, 1, 1], vec![1, 3, 4]]), 2);
    }

    proptest! {
        #[test]
        fn mul_matches_u128(a in 0..MODULUS, b in 0..MODULUS) {
            prop_assert_eq!(mul(a, b) as u128, (a as u128 * b as u128) % MODULUS as u128);
        }

        #[test]
        fn echelon_membership(a in 1..MODULUS, b in 0..MODULUS, c in 0..MODULUS) {
            let mut e = Echelon::new(3);
            prop_assert!(e.insert(vec![a, b, 0]));
            prop_assert!(e.insert(vec![0, 1, c]));
            let combo = vec![mul(a, 5), add(mul(b, 5), 7), mul(c, 7)];
            prop_assert!(e.contains(&combo));
            prop_assert!(!e.insert(combo));
        }
    }
}
