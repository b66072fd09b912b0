//! Exact rank of rational matrices through word-size primes.
//!
//! Elimination modulo `p` gives `rank_p ≤ rank_Q`. The kernel found modulo a
//! product of primes is lifted to `Q` by rational reconstruction and checked
//! exactly against the integer-scaled rows; a verified lift of `cols − rank_p`
//! independent vectors pins `rank_Q = rank_p`. Anything that does not verify
//! falls back to elimination over `Q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::Matrix;

/// Primes below `2^31`, so products of residues fit in a `u64`.
struct Primes(u64);

impl Iterator for Primes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            self.0 -= 1;
            let n = self.0;
            if n < 3 {
                return None;
            }
            if n % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0) {
                return Some(n);
            }
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn residue(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

/// Reduced row echelon form modulo `p`: pivot columns and, for each pivot row, the
/// entries in the free columns.
struct Reduced {
    pivots: Vec<usize>,
    rows: Vec<Vec<u64>>,
}

fn reduce_mod(int_rows: &[Vec<BigInt>], cols: usize, p: u64) -> Reduced {
    let mut m: Vec<Vec<u64>> = int_rows
        .iter()
        .map(|r| r.iter().map(|x| residue(x, p)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = inv_mod(m[rank][c], p);
        for x in m[rank][c..].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[c] == 0 {
                continue;
            }
            let f = p - row[c];
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if *y != 0 {
                    *x = (*x + f * y) % p;
                }
            }
        }
        pivots.push(c);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    Reduced { pivots, rows: m }
}

/// `n/d ≡ a (mod m)` with `|n|, d ≤ sqrt(m/2)`, if such a fraction exists.
fn reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Rows scaled by the lcm of their denominators.
fn integer_rows(m: &Matrix<BigRational>) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Lift the mod-`modulus` kernel; `None` unless every entry reconstructs and every
/// vector annihilates the rows exactly.
fn lift_kernel(
    int_rows: &[Vec<BigInt>],
    cols: usize,
    pivots: &[usize],
    residues: &[Vec<BigInt>],
    modulus: &BigInt,
) -> Option<()> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    for (fi, &f) in free.iter().enumerate() {
        // kernel vector: 1 at `f`, −R[i][f] at pivot `i`, cleared to integers
        let mut entries = Vec::with_capacity(pivots.len());
        for row in residues {
            entries.push(-reconstruct(&row[fi], modulus)?);
        }
        let l = entries.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut v: Vec<(usize, BigInt)> = vec![(f, l.clone())];
        for (x, &c) in entries.iter().zip(pivots) {
            if !x.is_zero() {
                v.push((c, x.numer() * (&l / x.denom())));
            }
        }
        for row in int_rows {
            let s: BigInt = v.iter().filter(|(c, _)| !row[*c].is_zero()).map(|(c, x)| &row[*c] * x).sum();
            if !s.is_zero() {
                return None;
            }
        }
    }
    Some(())
}

const MAX_PRIMES: usize = 64;

/// Primes below `2^26`, largest first. Products of two residues stay below `2^52`, so
/// `rank_mod` can add `2^11` of them before reducing.
pub fn small_primes() -> impl Iterator<Item = u64> {
    Primes(1 << 26)
}

/// `x mod p`, or `None` when `p` divides the denominator.
pub fn residue_of(x: &BigRational, p: u64) -> Option<u64> {
    let small = |n: &BigInt| match n.to_i64() {
        Some(v) => v.rem_euclid(p as i64) as u64,
        None => residue(n, p),
    };
    let den = small(x.denom());
    (den != 0).then(|| small(x.numer()) * inv_mod(den, p) % p)
}

/// Rank of a matrix of residues modulo `p < 2^26`.
pub fn rank_mod(mut m: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    const LAZY: u32 = 1 << 11;
    debug_assert!(p < 1 << 26);
    // entries stay below `p + pending · p^2 < 2^63`
    let mut pending = vec![0u32; m.len()];
    let mut rank = 0;
    for c in 0..cols {
        if rank == m.len() {
            break;
        }
        let Some(pr) = (rank..m.len()).find(|&r| m[r][c] % p != 0) else {
            continue;
        };
        m.swap(rank, pr);
        pending.swap(rank, pr);
        let inv = inv_mod(m[rank][c] % p, p);
        for x in m[rank][c..].iter_mut() {
            *x = *x % p * inv % p;
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot = &head[rank][c + 1..];
        for (row, count) in tail.iter_mut().zip(&mut pending[rank + 1..]) {
            let a = row[c] % p;
            row[c] = 0;
            if a == 0 {
                continue;
            }
            let f = p - a;
            for (x, y) in row[c + 1..].iter_mut().zip(pivot) {
                *x += f * y;
            }
            *count += 1;
            if *count == LAZY {
                for x in row.iter_mut() {
                    *x %= p;
                }
                *count = 0;
            }
        }
        rank += 1;
    }
    rank
}

/// Exact rank of a rational matrix.
pub fn rank(m: &Matrix<BigRational>) -> usize {
    let cols = m.cols();
    if m.rows() == 0 || cols == 0 {
        return 0;
    }
    let int_rows = integer_rows(m);
    let mut best: Option<(Vec<usize>, Vec<Vec<BigInt>>, BigInt)> = None;
    for p in Primes(1 << 31).take(MAX_PRIMES) {
        let red = reduce_mod(&int_rows, cols, p);
        if red.pivots.len() == cols {
            return cols;
        }
        let free: Vec<usize> = {
            let mut is_pivot = vec![false; cols];
            for &c in &red.pivots {
                is_pivot[c] = true;
            }
            (0..cols).filter(|&c| !is_pivot[c]).collect()
        };
        let cur: Vec<Vec<u64>> = red.rows.iter().map(|r| free.iter().map(|&f| r[f]).collect()).collect();
        let pb = BigInt::from(p);
        let mut changed = true;
        best = match best.take() {
            // a higher rank, or the same rank with earlier pivots, marks the old primes as bad
            Some((piv, _, _)) if red.pivots.len() > piv.len() || (red.pivots.len() == piv.len() && red.pivots < piv) => {
                Some(lift_start(red.pivots, &cur, pb))
            }
            Some((piv, res, modulus)) if red.pivots == piv => {
                // Chinese remaindering of the previous residues with the new ones
                let inv = BigInt::from(inv_mod(residue(&modulus, p), p));
                let res = res
                    .into_iter()
                    .zip(&cur)
                    .map(|(row, new)| {
                        row.into_iter()
                            .zip(new)
                            .map(|(a, &b)| {
                                let diff = (BigInt::from(b) - &a).mod_floor(&pb);
                                a + &modulus * ((diff * &inv).mod_floor(&pb))
                            })
                            .collect()
                    })
                    .collect();
                Some((piv, res, modulus * pb))
            }
            Some(old) => {
                changed = false;
                Some(old)
            }
            None => Some(lift_start(red.pivots, &cur, pb)),
        };
        let (piv, res, modulus) = best.as_ref().expect("set above");
        if changed && lift_kernel(&int_rows, cols, piv, res, modulus).is_some() {
            return piv.len();
        }
    }
    debug_assert!(false, "modular rank did not certify");
    m.rank()
}

fn lift_start(pivots: Vec<usize>, cur: &[Vec<u64>], p: BigInt) -> (Vec<usize>, Vec<Vec<BigInt>>, BigInt) {
    let res = cur.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    (pivots, res, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn primes_descend_below_two_to_the_31() {
        let ps: Vec<u64> = Primes(1 << 31).take(3).collect();
        assert_eq!(ps, vec![2147483647, 2147483629, 2147483587]);
    }

    #[test]
    fn reconstruction_inverts_reduction() {
        let m = BigInt::from(2147483647u64) * BigInt::from(2147483629u64);
        for (n, d) in [(3, 7), (-5, 12), (0, 1), (123456, 789)] {
            let x = q(n, d);
            let a = (x.numer() * x.denom().modinv(&m).unwrap()).mod_floor(&m);
            assert_eq!(reconstruct(&a, &m), Some(x));
        }
    }

    #[test]
    fn rank_sees_large_entries() {
        // a rank-one matrix whose entries are far beyond any single prime
        let big = BigRational::from_integer(BigInt::from(3).pow(200));
        let m = Matrix::from_rows(vec![
            vec![big.clone(), q(1, 2)],
            vec![big.clone() * q(2, 1), q(1, 1)],
        ]);
        assert_eq!(rank(&m), 1);
        let m2 = Matrix::from_rows(vec![vec![big.clone(), q(1, 2)], vec![big, q(1, 3)]]);
        assert_eq!(rank(&m2), 2);
    }

    #[test]
    fn prime_multiple_entries_do_not_fool_rank() {
        let p = 2147483647i64;
        let m = Matrix::from_rows(vec![vec![q(p, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn rank_mod_counts_dependent_rows() {
        let p = small_primes().next().unwrap();
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1], vec![1, 3, 4]];
        assert_eq!(rank_mod(m, 3, p), 2);
    }

    #[test]
    fn residues_of_fractions() {
        let p = 7;
        assert_eq!(residue_of(&q(1, 2), p), Some(4));
        assert_eq!(residue_of(&q(-3, 1), p), Some(4));
        assert_eq!(residue_of(&q(1, 7), p), None);
    }

    proptest! {
        #[test]
        fn rank_mod_matches_rational_rank_on_small_entries(
            rows in 1usize..9,
            cols in 1usize..9,
            seed in proptest::collection::vec(-3i64..4, 64),
        ) {
            let p = small_primes().next().unwrap();
            let data: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| seed[r * 8 + c]).collect()).collect();
            let exact = Matrix::from_rows(data.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect()).rank();
            let m = data.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()).collect();
            // entries are tiny, so no minor can be divisible by a 26-bit prime
            prop_assert_eq!(rank_mod(m, cols, p), exact);
        }

        #[test]
        fn agrees_with_rational_elimination(
            rows in 1usize..7,
            cols in 1usize..7,
            seed in proptest::collection::vec((-4i64..5, 1i64..4), 49),
            dup in 0usize..3,
        ) {
            let mut data: Vec<Vec<BigRational>> = (0..rows)
                .map(|r| (0..cols).map(|c| { let (n, d) = seed[r * 7 + c]; q(n, d) }).collect())
                .collect();
            // force dependencies
            for k in 0..dup.min(rows.saturating_sub(1)) {
                let a = data[k].clone();
                let b = data[k + 1].clone();
                data.push(a.iter().zip(&b).map(|(x, y)| x * q(2, 3) - y).collect());
            }
            let m = Matrix::from_rows(data);
            prop_assert_eq!(rank(&m), m.rank());
        }
    }
}
