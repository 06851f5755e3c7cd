//! Integer helpers: gcd/lcm, modular arithmetic, deterministic primality and
//! factorization for 64-bit values.
//!
//! Factorization runs trial division up to 10^6 followed by Brent's variant
//! of Pollard rho with a fixed parameter schedule, so results are fully
//! deterministic across runs.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// (a - b) mod m, with a and b first reduced mod m.
pub fn submod(a: u64, b: u64, m: u64) -> u64 {
    debug_assert!(m > 0);
    let (a, b) = (a % m, b % m);
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

pub fn addmod(a: u64, b: u64, m: u64) -> u64 {
    debug_assert!(m > 0);
    ((a % m) as u128 + (b % m) as u128).rem_euclid(m as u128) as u64
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse of `a` mod `m` when gcd(a, m) = 1.
pub fn modinv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for u64 (the 12-prime base set is exact below 2^64).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent-cycle Pollard rho; `n` must be composite, odd, with no factor <= 10^6.
fn pollard_rho(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| addmod(mulmod(x, x, n), c, n);
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
            count += 1;
            if count > n.isqrt() + 2 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
    }
    unreachable!()
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Prime factorization as sorted (prime, multiplicity) pairs.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| {
        if let Some(last) = out.iter_mut().find(|e| e.0 == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    if n <= 1 {
        return out;
    }
    while n % 2 == 0 {
        push(2, &mut out);
        n /= 2;
    }
    let mut d = 3;
    while d <= TRIAL_LIMIT && d as u128 * d as u128 <= n as u128 {
        while n % d == 0 {
            push(d, &mut out);
            n /= d;
        }
        d += 2;
    }
    // remainder has no factor below 10^6
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if m < TRIAL_LIMIT * TRIAL_LIMIT || is_prime(m) {
            push(m, &mut out);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factor(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_lcm_basic() {
        assert_eq!(gcd(5, 15), 5);
        assert_eq!(gcd(7, 15), 1);
        assert_eq!(lcm(5, 15), 15);
        assert_eq!(lcm(6, 10), 30);
    }

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(8191));
        assert!(!is_prime(2047)); // 23 * 89
        assert!(is_prime(2_147_483_647)); // 2^31 - 1
        assert!(!is_prime(4_294_967_295));
    }

    #[test]
    fn factor_mersenne() {
        assert_eq!(factor(15), vec![(3, 1), (5, 1)]);
        assert_eq!(factor(2047), vec![(23, 1), (89, 1)]);
        assert_eq!(factor(4095), vec![(3, 2), (5, 1), (7, 1), (13, 1)]);
        // 2^61 - 1 is prime
        assert_eq!(factor((1u64 << 61) - 1), vec![((1u64 << 61) - 1, 1)]);
        // 2^59 - 1 = 179951 * 3203431780337
        assert_eq!(
            factor((1u64 << 59) - 1),
            vec![(179_951, 1), (3_203_431_780_337, 1)]
        );
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(15), 8);
        assert_eq!(euler_phi(7), 6);
        assert_eq!(euler_phi(1023), 600);
    }

    #[test]
    fn modinv_basic() {
        assert_eq!(modinv(3, 7), Some(5));
        assert_eq!(modinv(2, 4), None);
        assert_eq!(modinv(1, 1), Some(0));
    }
}
