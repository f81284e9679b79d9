//! Word-sized integer arithmetic: primality, factorization, totient and friends.

use num_integer::Integer;

/// Prime factorization as `(prime, multiplicity)` pairs with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Factorization(pub Vec<(u64, u32)>);

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn multiplicity(&self, p: u64) -> u32 {
        self.0.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, m)| m)
    }

    /// Reassembles the factored number. Panics on overflow, which cannot happen
    /// for a factorization produced by [`factorize`].
    pub fn value(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, &(p, m)| acc * p.pow(m))
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
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

const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller–Rabin; the first twelve primes are a complete witness set below 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
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

const TRIAL_LIMIT: u64 = 1 << 20;

/// Factors `n`. Trial division up to 2^20, then Miller–Rabin on the cofactor,
/// with Pollard–Brent splitting for any composite cofactor that remains.
/// `factorize(0)` and `factorize(1)` both return the empty list.
pub fn factorize(n: u64) -> Factorization {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n <= 1 {
        return Factorization(out);
    }
    let mut n = n;
    let push = |p: u64, out: &mut Vec<(u64, u32)>| match out.iter_mut().find(|e| e.0 == p) {
        Some(e) => e.1 += 1,
        None => out.push((p, 1)),
    };
    for p in [2u64, 3, 5] {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
    }
    // wheel over 6k±1
    let mut p = 7u64;
    let mut step = 4u64;
    while p <= TRIAL_LIMIT && p * p <= n {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
        p += step;
        step = 6 - step;
    }
    if n > 1 {
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            if m == 1 {
                continue;
            }
            if is_prime(m) {
                push(m, &mut out);
            } else {
                let d = pollard_brent(m);
                stack.push(d);
                stack.push(m / d);
            }
        }
    }
    out.sort_unstable();
    Factorization(out)
}

fn pollard_brent(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    factorize(n)
        .0
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Möbius function.
pub fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.0.iter().any(|&(_, m)| m > 1) {
        0
    } else if f.0.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, m) in factorize(n).0 {
        let base = ds.clone();
        let mut pk = 1u64;
        for _ in 0..m {
            pk *= p;
            ds.extend(base.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// Returns `(ell, f)` when `n = ell^f` with `ell` prime and `f ≥ 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let f = factorize(n);
    match f.0.as_slice() {
        [(p, m)] => Some((*p, *m)),
        _ => None,
    }
}

/// Splits `n` into its `p`-part and `p'`-part.
pub fn split_p_part(n: u64, p: u64) -> (u64, u64) {
    let mut pp = 1;
    let mut rest = n;
    while rest % p == 0 {
        rest /= p;
        pp *= p;
    }
    (pp, rest)
}

/// Multiplicative order of `a` modulo `m` (`gcd(a, m) = 1`, `m ≥ 2`).
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m < 2 || a.gcd(&m) != 1 {
        return None;
    }
    let lam = euler_phi(m);
    let mut ord = lam;
    for (p, _) in factorize(lam).0 {
        while ord % p == 0 && pow_mod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    Some(ord)
}

/// Least primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let fs: Vec<u64> = factorize(p - 1).primes().collect();
    (2..p)
        .find(|&g| fs.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("prime modulus has a primitive root")
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

pub fn isqrt(n: u64) -> u64 {
    n.isqrt()
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Primes `p ≤ n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_examples() {
        assert_eq!(factorize(1).0, vec![]);
        assert_eq!(factorize(68).0, vec![(2, 2), (17, 1)]);
        assert_eq!(factorize(29120).0, vec![(2, 6), (5, 1), (7, 1), (13, 1)]);
        let big = 4_294_967_291u64 * 4_294_967_279u64;
        assert_eq!(
            factorize(big).0,
            vec![(4_294_967_279, 1), (4_294_967_291, 1)]
        );
    }

    #[test]
    fn totient_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(73), 72);
        assert_eq!(euler_phi(4369), 4096);
    }

    #[test]
    fn primality_against_sieve() {
        let n = 20_000usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..=n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
        }
        for (k, &s) in sieve.iter().enumerate() {
            assert_eq!(is_prime(k as u64), s, "{k}");
        }
        // strong pseudoprime to bases 2..=11
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn orders_and_roots() {
        assert_eq!(multiplicative_order(2, 127), Some(7));
        assert_eq!(multiplicative_order(2, 6), None);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(41), 6);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(prime_power(243), Some((3, 5)));
        assert_eq!(prime_power(12), None);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
    }
}
