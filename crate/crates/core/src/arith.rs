//! Elementary integer arithmetic: gcd, modular powers, factorisation and
//! smallest-prime-factor sieves.

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
        return 0;
    }
    a / gcd(a, b) * b
}

#[inline]
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

/// Reduce a signed integer into `[0, m)`.
#[inline]
pub fn reduce(n: i64, m: u64) -> u64 {
    (n as i128).rem_euclid(m as i128) as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
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

/// Trial-division factorisation, returned as ascending `(p, e)` pairs.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5u64;
    while p * p <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(n.max(1), |acc, (p, _)| acc / p * (p - 1))
}

/// Binomial coefficient as `f64`; exact while the value fits in 53 bits.
pub fn binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n.saturating_sub(k));
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as f64
}

/// The d-fold divisor function `tau_d(n)`.
pub fn tau_d(n: u64, d: u32) -> f64 {
    if d == 0 {
        return if n == 1 { 1.0 } else { 0.0 };
    }
    factor(n)
        .into_iter()
        .map(|(_, e)| binomial(e as u64 + d as u64 - 1, d as u64 - 1))
        .product()
}

/// Primes `<= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::with_capacity(n / 10 + 16);
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Linear sieve of smallest prime factors, with the full prime-power part
/// of each `n` at its smallest prime recorded alongside.
#[derive(Debug, Clone)]
pub struct SpfSieve {
    spf: Vec<u32>,
    /// `p^e` where `p = spf[n]` and `p^e || n`.
    head: Vec<u32>,
    head_exp: Vec<u8>,
    primes: Vec<u32>,
}

impl SpfSieve {
    pub fn new(limit: u64) -> Self {
        assert!(limit < u32::MAX as u64, "sieve limit out of range");
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut head = vec![0u32; n + 1];
        let mut head_exp = vec![0u8; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        if n >= 1 {
            head[1] = 1;
        }
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let ip = i as u64 * p as u64;
                if p > si || ip > n as u64 {
                    break;
                }
                spf[ip as usize] = p;
            }
            let p = spf[i] as usize;
            let m = i / p;
            if m > 1 && spf[m] as usize == p {
                head[i] = head[m] * p as u32;
                head_exp[i] = head_exp[m] + 1;
            } else {
                head[i] = p as u32;
                head_exp[i] = 1;
            }
        }
        SpfSieve {
            spf,
            head,
            head_exp,
            primes,
        }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    pub fn smallest_prime_factor(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    /// `(p, e, p^e)` for the smallest prime `p | n`.
    #[inline]
    pub fn head(&self, n: u64) -> (u64, u32, u64) {
        let i = n as usize;
        (self.spf[i] as u64, self.head_exp[i] as u32, self.head[i] as u64)
    }

    pub fn factor(&self, mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        while n > 1 {
            let (p, e, pe) = self.head(n);
            out.push((p, e));
            n /= pe;
        }
        out
    }
}

/// Number of distinct prime factors of each `m <= limit` lying in `[p1, p2]`.
pub fn window_omega_table(limit: u64, p1: u64, p2: u64) -> Vec<u8> {
    let mut omega = vec![0u8; limit as usize + 1];
    for p in primes_up_to(p2.min(limit)) {
        if p < p1 {
            continue;
        }
        let mut m = p;
        while m <= limit {
            omega[m as usize] += 1;
            m += p;
        }
    }
    omega
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_and_phi() {
        assert_eq!(factor(1), vec![]);
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor(999_983), vec![(999_983, 1)]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(101), 100);
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        let sieve = SpfSieve::new(5000);
        for n in 2..=5000 {
            assert_eq!(sieve.factor(n), factor(n), "n = {n}");
            assert_eq!(sieve.is_prime(n), is_prime(n));
        }
        assert_eq!(sieve.primes().len(), 669);
    }

    #[test]
    fn tau_d_counts_ordered_factorisations() {
        // Brute-force count of ordered triples with product 12.
        let mut count = 0;
        for a in 1..=12u64 {
            for b in 1..=12u64 {
                if 12 % (a * b) == 0 {
                    count += 1;
                }
            }
        }
        assert_eq!(tau_d(12, 3), count as f64);
        assert_eq!(count, 18);
    }

    #[test]
    fn inverse_mod() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(6, 9), None);
        assert_eq!(reduce(-1, 8), 7);
    }

    #[test]
    fn omega_window() {
        let omega = window_omega_table(100, 3, 7);
        assert_eq!(omega[30], 2);
        assert_eq!(omega[8], 0);
        assert_eq!(omega[105.min(100)], 1);
    }
}
