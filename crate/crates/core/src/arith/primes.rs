//! Prime enumeration, primality and integer factorization.
//!
//! Small primes come from a segmented sieve. Larger integers are split by trial
//! division followed by Pollard–Brent with a fixed retry schedule, and pieces are
//! certified with Miller–Rabin (deterministic below 2^64).

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Prime;

/// Default sieve bound when nothing else is configured.
pub const DEFAULT_PRIME_BOUND: u64 = 1_000_000;

/// Trial division is used below this bound before falling back to Pollard–Brent.
const TRIAL_BOUND: u64 = 1 << 14;

/// All primes `≤ bound`, produced by a segmented sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let root = (bound as f64).sqrt() as u64 + 1;
    // base primes up to sqrt(bound) with a plain sieve
    let mut small = vec![true; (root + 1) as usize];
    small[0] = false;
    if root >= 1 {
        small[1] = false;
    }
    let mut i = 2usize;
    while i * i <= root as usize {
        if small[i] {
            let mut j = i * i;
            while j <= root as usize {
                small[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    let base: Vec<u64> = (2..=root).filter(|&k| small[k as usize]).collect();

    let segment = 1u64 << 16;
    let mut out = Vec::new();
    let mut low = 2u64;
    while low <= bound {
        let high = (low + segment - 1).min(bound);
        let mut mark = vec![true; (high - low + 1) as usize];
        for &p in &base {
            if p * p > high {
                break;
            }
            let mut start = ((low + p - 1) / p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut k = start;
            while k <= high {
                mark[(k - low) as usize] = false;
                k += p;
            }
        }
        out.extend(
            mark.iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(i, _)| low + i as u64),
        );
        low = high + 1;
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primality: deterministic below 2^64, Miller–Rabin with 24 fixed bases above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let bases = primes_up_to(90);
    'outer: for a in bases.into_iter().take(24) {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let one = BigUint::one();
    let m = 64u64;
    let mut y = BigUint::from(2u8);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let limit = 1u64 << 26;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > limit {
            return None;
        }
    }
    if &g == n {
        // backtrack one step at a time
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    if &g == n || g.is_zero() {
        None
    } else {
        Some(g)
    }
}

fn split_into(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    for c in 1..64u64 {
        if let Some(d) = pollard_brent(&n, c) {
            let other = &n / &d;
            split_into(d, out);
            split_into(other, out);
            return;
        }
    }
    // The retry schedule is exhausted only for pathological inputs far beyond desk scale.
    panic!("factorization of {n} did not finish");
}

/// Complete prime factorization of a positive integer.
pub fn factor(n: &BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    for p in primes_up_to(TRIAL_BOUND) {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.insert(bp, e);
        }
    }
    if rest.is_one() {
        return out;
    }
    let small_enough = rest
        .to_u64()
        .map(|r| r < TRIAL_BOUND * TRIAL_BOUND)
        .unwrap_or(false);
    if small_enough {
        *out.entry(rest).or_insert(0) += 1;
    } else {
        split_into(rest, &mut out);
    }
    out
}

/// Distinct prime divisors of a positive integer.
pub fn prime_divisors(n: &BigUint) -> Vec<Prime> {
    factor(n).into_keys().map(Prime::new_unchecked).collect()
}

/// Removes every factor of the given primes; returns the cofactor.
pub fn strip_primes(n: &BigUint, primes: &[Prime]) -> BigUint {
    let mut rest = n.clone();
    for p in primes {
        let p = p.as_biguint();
        loop {
            let (q, r) = rest.div_rem(p);
            if !r.is_zero() || rest.is_zero() {
                break;
            }
            rest = q;
        }
    }
    rest
}
