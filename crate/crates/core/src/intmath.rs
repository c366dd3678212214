//! Small-integer number theory used throughout the crate.
//!
//! Everything here works on machine integers; levels, conductors and
//! moduli stay far below the point where `u64` arithmetic could overflow
//! (products are taken in `u128` where it matters).

use alloc::vec::Vec;
use num_integer::Integer;

/// Prime factorization as `(p, e)` pairs with `p` increasing. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factorize(0)");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = alloc::vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: u64) -> u64 {
    prime_divisors(n).into_iter().product()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

pub fn moebius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// `v_p(n)` for `n != 0`.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Least non-negative residue of `a` modulo `m` (`m > 0`).
pub fn modulo(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
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

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`. Modulo 1 the inverse is 0.
pub fn inv_mod(a: i64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let g = i128::from(a).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// `(g, x, y)` with `a x + b y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = i128::from(a).extended_gcd(&i128::from(b));
    let (g, x, y) = (e.gcd, e.x, e.y);
    if g < 0 {
        ((-g) as i64, (-x) as i64, (-y) as i64)
    } else {
        (g as i64, x as i64, y as i64)
    }
}

/// Multiplicative order of `a` modulo `m`; `a` must be a unit.
pub fn mult_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let lam = carmichael(m);
    let mut ord = lam;
    for p in prime_divisors(lam) {
        while ord % p == 0 && pow_mod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    ord
}

/// Carmichael's function: the exponent of `(Z/m)^*`.
pub fn carmichael(m: u64) -> u64 {
    factorize(m)
        .into_iter()
        .map(|(p, e)| {
            if p == 2 && e >= 3 {
                1u64 << (e - 2)
            } else {
                (p - 1) * p.pow(e - 1)
            }
        })
        .fold(1, lcm)
}

/// The least primitive root modulo `p^e` for an odd prime `p`.
pub fn primitive_root_prime_power(p: u64, e: u32) -> u64 {
    assert!(p % 2 == 1, "odd prime expected");
    let pe = p.pow(e);
    let phi = (p - 1) * p.pow(e - 1);
    let ps = prime_divisors(phi);
    (2..pe)
        .find(|&g| g % p != 0 && ps.iter().all(|&q| pow_mod(g, phi / q, pe) != 1))
        .expect("primitive roots exist modulo odd prime powers")
}

/// Solve `x = r_i (mod m_i)` for pairwise coprime moduli; returns the least non-negative solution.
pub fn crt(residues: &[(u64, u64)]) -> u64 {
    let mut x: u128 = 0;
    let mut m: u128 = 1;
    for &(r, mi) in residues {
        let mi = mi as u128;
        // x + m t = r (mod mi)
        let inv = inv_mod((m % mi) as i64, mi as u64).expect("moduli must be coprime") as u128;
        let diff = ((r as u128 % mi) + mi - x % mi) % mi;
        let t = diff * inv % mi;
        x += m * t;
        m *= mi;
        x %= m;
    }
    x as u64
}

/// Jacobi/Kronecker symbol `(a / n)` for odd prime `n` (Legendre symbol).
pub fn legendre(a: i64, p: u64) -> i32 {
    let a = modulo(a, p);
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Kronecker symbol `(D / p)` for a prime `p`, as used for splitting in quadratic fields.
pub fn kronecker_prime(d: i64, p: u64) -> i32 {
    if p == 2 {
        if d % 2 == 0 {
            0
        } else if modulo(d, 8) == 1 || modulo(d, 8) == 7 {
            1
        } else {
            -1
        }
    } else {
        legendre(d, p)
    }
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = num_traits::Float::sqrt(n as f64) as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(divisors(12), alloc::vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(20), 8);
        assert_eq!(moebius(30), -1);
        assert_eq!(moebius(12), 0);
        assert_eq!(carmichael(16), 4);
        assert_eq!(mult_order(3, 8), 2);
        assert_eq!(primitive_root_prime_power(5, 2), 2);
        assert_eq!(crt(&[(2, 3), (3, 5)]), 8);
        assert_eq!(inv_mod(-1, 5), Some(4));
        assert_eq!(kronecker_prime(5, 2), -1);
        assert_eq!(kronecker_prime(5, 11), 1);
        assert_eq!(isqrt(99), 9);
    }
}
