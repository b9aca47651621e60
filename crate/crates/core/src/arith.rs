//! Small exact integer helpers shared by the polynomial kernels.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::One;

pub(crate) fn factorial_big(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

pub(crate) fn binom_i128(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for j in 0..k {
        acc = acc
            .checked_mul((n - j) as i128)
            .expect("binomial coefficient overflows i128")
            / (j as i128 + 1);
    }
    acc
}

/// Falling factorial `n (n−1) ⋯ (n−k+1)`.
pub(crate) fn falling_i128(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let mut acc: i128 = 1;
    for j in 0..k {
        acc = acc
            .checked_mul((n - j) as i128)
            .expect("falling factorial overflows i128");
    }
    acc
}

/// Multinomial coefficient `n! / (e₀! e₁! e₂!)` for `e₀+e₁+e₂ = n`.
pub(crate) fn multinomial3_big(e: [u8; 3]) -> BigInt {
    let n = (e[0] + e[1] + e[2]) as usize;
    let mut acc = factorial_big(n);
    for part in e {
        acc /= factorial_big(part as usize);
    }
    acc
}

pub(crate) fn big_ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binom_i128(8, 4), 70);
        assert_eq!(binom_i128(18, 9), 48620);
        assert_eq!(binom_i128(4, 7), 0);
        assert_eq!(falling_i128(5, 2), 20);
        assert_eq!(falling_i128(2, 3), 0);
        assert_eq!(factorial_big(6), BigInt::from(720));
        assert_eq!(multinomial3_big([2, 1, 1]), BigInt::from(12));
        assert_eq!(multinomial3_big([4, 0, 0]), BigInt::from(1));
        assert_eq!(multinomial3_big([2, 2, 0]), BigInt::from(6));
    }
}
