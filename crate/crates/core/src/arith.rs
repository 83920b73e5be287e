//! Small integer number theory shared by the other modules.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
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

/// Inverse of `a` modulo `m`; panics if they are not coprime.
pub fn inv_mod(a: u64, m: u64) -> u64 {
    let g = (a as i128).extended_gcd(&(m as i128));
    assert!(g.gcd == 1, "{a} is not invertible modulo {m}");
    g.x.rem_euclid(m as i128) as u64
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
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

/// Smallest prime `q ≡ 1 mod e` with `q > lower`.
pub fn prime_one_mod(e: u64, lower: u64) -> u64 {
    let mut q = lower / e * e + 1;
    while q <= lower || !is_prime(q) {
        q += e;
    }
    q
}

/// An element of exact multiplicative order `e` modulo the prime `q` (`e | q − 1`).
pub fn root_of_unity_mod(e: u64, q: u64) -> u64 {
    assert_eq!((q - 1) % e, 0);
    let primes = prime_divisors(e);
    (2..q)
        .map(|a| pow_mod(a, (q - 1) / e, q))
        .find(|&z| primes.iter().all(|&l| pow_mod(z, e / l, q) != 1))
        .unwrap_or(1)
}

/// Prime factorisation as (prime, exponent) pairs in increasing order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = (1..=n)
        .take_while(|d| d * d <= n)
        .filter(|d| n % d == 0)
        .collect();
    let more: Vec<u64> = ds
        .iter()
        .rev()
        .map(|d| n / d)
        .filter(|&e| e * e != n)
        .collect();
    ds.extend(more);
    ds
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// ν_p(n); `n` must be nonzero.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Splits `n` into its p-part and p'-part.
pub fn split_part(n: u64, p: u64) -> (u64, u64) {
    let pa = p.pow(valuation(n, p));
    (pa, n / pa)
}

/// Multiplicative order of `a` modulo `m` (`gcd(a, m) = 1`).
pub fn mult_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let phi = euler_phi(m);
    let mut ord = phi;
    for (q, _) in factor(phi) {
        while ord % q == 0 && pow_mod(a, ord / q, m) == 1 {
            ord /= q;
        }
    }
    ord
}

/// Smallest primitive root modulo `p^a` for an odd prime `p`.
pub fn primitive_root_prime_power(p: u64, a: u32) -> u64 {
    assert!(p % 2 == 1 && a >= 1);
    let m = p.pow(a);
    let phi = euler_phi(m);
    (2..m)
        .find(|&g| gcd(g, p) == 1 && mult_order(g, m) == phi)
        .expect("odd prime powers have primitive roots")
}

/// The unique `x mod m1*m2` with `x ≡ r1 mod m1`, `x ≡ r2 mod m2` for coprime moduli.
pub fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    let m = m1 * m2;
    if m1 == 1 {
        return r2 % m;
    }
    if m2 == 1 {
        return r1 % m;
    }
    let r1 = r1 % m1;
    let t = mul_mod((r2 % m2 + m2 - r1 % m2) % m2, inv_mod(m1 % m2, m2), m2);
    (r1 + m1 * t) % m
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factor_and_phi() {
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(euler_phi(36), 12);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(primitive_root_prime_power(3, 2), 2);
        assert_eq!(primitive_root_prime_power(7, 1), 3);
        assert_eq!(prime_one_mod(6, 10), 13);
        assert_eq!(pow_mod(root_of_unity_mod(6, 13), 6, 13), 1);
        assert_ne!(pow_mod(root_of_unity_mod(6, 13), 3, 13), 1);
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        let slow = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), slow(n), "{n}");
        }
        assert!(is_prime((1 << 61) - 1));
    }

    proptest! {
        #[test]
        fn crt_solves(r1 in 0u64..50, r2 in 0u64..50, m1 in 1u64..50, m2 in 1u64..50) {
            prop_assume!(gcd(m1, m2) == 1);
            let x = crt(r1, m1, r2, m2);
            prop_assert!(x < m1 * m2);
            prop_assert_eq!(x % m1, r1 % m1);
            prop_assert_eq!(x % m2, r2 % m2);
        }

        #[test]
        fn inverse_is_inverse(a in 1u64..1000, m in 2u64..1000) {
            prop_assume!(gcd(a, m) == 1);
            prop_assert_eq!(mul_mod(a, inv_mod(a, m), m), 1 % m);
        }
    }
}
