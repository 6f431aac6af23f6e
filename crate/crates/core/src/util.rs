//! Small shared integer helpers.

/// Floor of the integer square root of `n`.
///
/// Used to compare integer quantities against irrational bounds of the shape
/// `c + B*sqrt(q)` exactly: for integers `s`, `c`, `B >= 0`,
/// `s <= c + B*sqrt(q)` iff `s <= c + isqrt(B*B*q)`.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // Newton iteration from a power-of-two overestimate; converges in a few steps.
    let mut x = 1u128 << (n.ilog2() / 2 + 1);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            break;
        }
        x = y;
    }
    debug_assert!(x * x <= n && (x + 1).checked_mul(x + 1).is_none_or(|s| s > n));
    x
}

/// Exact binomial coefficient C(n, k), saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul((n - i) as u128) {
            Some(v) => acc = v / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_small_and_boundaries() {
        for n in 0u128..=1000 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "n={n}");
        }
        assert_eq!(isqrt(1 << 40), 1 << 20);
        assert_eq!(isqrt((1 << 40) - 1), (1 << 20) - 1);
        assert_eq!(isqrt(u128::MAX), (1u128 << 64) - 1);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(15, 6), 5005);
        assert_eq!(binomial(15, 7), 6435);
        assert_eq!(binomial(255, 5), 8_637_487_551);
        assert_eq!(binomial(10, 0), 1);
        assert_eq!(binomial(10, 11), 0);
        assert_eq!(binomial(200, 100), u128::MAX); // saturates
    }
}
