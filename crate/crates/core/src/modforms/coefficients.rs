//! Integer coefficient sequences behind the named q-expansions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `σ_k(n) = Σ_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    assert!(n > 0, "sigma is defined for n >= 1");
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            total += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    total
}

/// Signed generalized pentagonal numbers `(k(3k-1)/2, (-1)^k)` below `bound`,
/// i.e. the exponents of `∏(1 - q^n)`.
pub fn pentagonal_terms(bound: i64) -> Vec<(i64, i64)> {
    let mut out = vec![(0, 1)];
    for k in 1i64.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let a = k * (3 * k - 1) / 2;
        let b = k * (3 * k + 1) / 2;
        if a >= bound {
            break;
        }
        out.push((a, sign));
        if b < bound {
            out.push((b, sign));
        }
    }
    out.sort_unstable();
    out
}

/// Number of `colors`-colored partitions `p_colors(n)` for `n < len`, from
/// `n p(n) = colors · Σ_{k=1}^{n} σ₁(k) p(n-k)`.
pub fn colored_partitions(colors: u32, len: usize) -> Vec<BigInt> {
    let sig: Vec<BigInt> = (1..len as u64).map(|k| sigma(1, k)).collect();
    let mut p = Vec::with_capacity(len);
    if len == 0 {
        return p;
    }
    p.push(BigInt::one());
    for n in 1..len {
        let mut acc = BigInt::zero();
        for k in 1..=n {
            acc += &sig[k - 1] * &p[n - k];
        }
        acc *= colors;
        debug_assert!((&acc % n).is_zero());
        p.push(acc / n);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_sums() {
        assert_eq!(sigma(3, 1), BigInt::from(1));
        assert_eq!(sigma(3, 2), BigInt::from(9));
        assert_eq!(sigma(1, 12), BigInt::from(28));
        assert_eq!(sigma(5, 4), BigInt::from(1 + 32 + 1024));
    }

    #[test]
    fn pentagonal_matches_euler_product() {
        let n = 60usize;
        let mut prod = vec![0i64; n];
        prod[0] = 1;
        for k in 1..n {
            for i in (k..n).rev() {
                prod[i] -= prod[i - k];
            }
        }
        let mut pent = vec![0i64; n];
        for (e, s) in pentagonal_terms(n as i64) {
            pent[e as usize] = s;
        }
        assert_eq!(prod, pent);
    }

    #[test]
    fn ordinary_partitions() {
        let p = colored_partitions(1, 11);
        let expect = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        assert_eq!(p, expect.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>());
    }

    #[test]
    fn eight_colored_partitions_start() {
        // 1/∏(1-q^n)^8 = 1 + 8q + 44q^2 + 192q^3 + ...
        let p = colored_partitions(8, 4);
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(8), BigInt::from(44), BigInt::from(192)]);
    }
}
