//! Miller-Rabin primality testing.
//!
//! Below 2^64 the test is deterministic (the first twelve primes are a
//! proven witness set for that range). Above 2^64 it falls back to 64
//! rounds with bases drawn from a splitmix64 stream seeded from the number
//! itself, so the answer is still a pure function of the input.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::rng::{mix, SplitMix64};

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
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

/// Seeds the witness stream from the number under test.
fn seed_from(n: &BigUint) -> u64 {
    let mut seed = 0u64;
    for digit in n.to_u64_digits() {
        seed = mix(seed ^ digit);
    }
    seed
}

/// A pseudo-random residue in `[0, bound)`; `bound` must be nonzero.
fn random_below(rng: &mut SplitMix64, bound: &BigUint) -> BigUint {
    let words = (bound.bits() as usize + 63) / 64 + 1;
    let mut digits = alloc::vec::Vec::with_capacity(words);
    for _ in 0..words {
        digits.push(rng.next_u64());
    }
    BigUint::new(digits.iter().flat_map(|d| [*d as u32, (*d >> 32) as u32]).collect()) % bound
}

pub(crate) fn is_prime_biguint(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &WITNESSES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let n_minus_1 = n - &one;
    let n_minus_3 = n - BigUint::from(3u32);
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut rng = SplitMix64::new(seed_from(n));
    'round: for _ in 0..64 {
        let a = random_below(&mut rng, &n_minus_3) + &two;
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'round;
            }
        }
        return false;
    }
    true
}
