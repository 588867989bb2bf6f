//! Hirzebruch-Jung continued fractions.
//!
//! `p/q = a1 - 1/(a2 - 1/(... - 1/ak))` with every `ai >= 2`; the expansion
//! is unique under that constraint and ties linear plumbing chains to lens
//! spaces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntAlgError;

/// Expands `p/q` (with `0 < q < p`, `gcd(p, q) = 1`) into its
/// Hirzebruch-Jung coefficient list.
pub fn hj_continued_fraction(p: &BigInt, q: &BigInt) -> Result<Vec<BigInt>, IntAlgError> {
    if !(q.is_positive() && q < p) || !p.gcd(q).is_one() {
        return Err(IntAlgError::HjDomain {
            p: p.clone(),
            q: q.clone(),
        });
    }
    let mut p = p.clone();
    let mut q = q.clone();
    let mut out = Vec::new();
    loop {
        // a = ceil(p / q), then p/q = a - 1/(q / (a*q - p))
        let (mut a, r) = p.div_mod_floor(&q);
        if !r.is_zero() {
            a += 1;
        }
        let next = &a * &q - &p;
        out.push(a);
        if next.is_zero() {
            return Ok(out);
        }
        p = q;
        q = next;
    }
}

/// Evaluates a coefficient list back to a reduced fraction `p/q`.
///
/// Total on any nonempty integer list whose tails never evaluate to zero;
/// with all coefficients `>= 2` it is the exact inverse of
/// [`hj_continued_fraction`].
pub fn evaluate_hj(coeffs: &[BigInt]) -> Result<(BigInt, BigInt), IntAlgError> {
    let Some((last, init)) = coeffs.split_last() else {
        return Err(IntAlgError::HjEmpty);
    };
    let mut num = last.clone();
    let mut den = BigInt::one();
    for (index, a) in init.iter().enumerate().rev() {
        if num.is_zero() {
            return Err(IntAlgError::HjZeroTail { index });
        }
        let next = a * &num - &den;
        den = num;
        num = next;
    }
    // gcd(a*num - den, num) = gcd(num, den), so the fraction stays reduced;
    // only the sign of the denominator needs normalizing.
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    Ok((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn expand(p: i64, q: i64) -> Result<Vec<BigInt>, IntAlgError> {
        hj_continued_fraction(&big(p), &big(q))
    }

    #[test]
    fn integral_case() {
        assert_eq!(expand(4, 1).unwrap(), vec![big(4)]);
    }

    #[test]
    fn nine_halves() {
        assert_eq!(expand(9, 2).unwrap(), vec![big(5), big(2)]);
    }

    #[test]
    fn twentyfive_fourths() {
        assert_eq!(expand(25, 4).unwrap(), vec![big(7), big(2), big(2), big(2)]);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(expand(4, 4), Err(IntAlgError::HjDomain { .. })));
        assert!(matches!(expand(4, 0), Err(IntAlgError::HjDomain { .. })));
        assert!(matches!(expand(4, 2), Err(IntAlgError::HjDomain { .. })));
        assert!(matches!(expand(3, 5), Err(IntAlgError::HjDomain { .. })));
    }

    #[test]
    fn evaluate_simple() {
        assert_eq!(evaluate_hj(&[big(4)]).unwrap(), (big(4), big(1)));
        assert_eq!(evaluate_hj(&[big(5), big(2)]).unwrap(), (big(9), big(2)));
        assert_eq!(evaluate_hj(&[big(2), big(2), big(2)]).unwrap(), (big(4), big(3)));
    }

    #[test]
    fn evaluate_zero_tail() {
        // inner tail 2 - 1/1 ... here [2, 1, 1]: 1 - 1/1 = 0, then division by zero
        let err = evaluate_hj(&[big(2), big(1), big(1)]).unwrap_err();
        assert_eq!(err, IntAlgError::HjZeroTail { index: 0 });
        assert!(matches!(evaluate_hj(&[]), Err(IntAlgError::HjEmpty)));
    }

    #[test]
    fn round_trip_small() {
        for p in 2i64..=40 {
            for q in 1..p {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let coeffs = expand(p, q).unwrap();
                assert!(coeffs.iter().all(|a| *a >= big(2)));
                assert_eq!(evaluate_hj(&coeffs).unwrap(), (big(p), big(q)));
            }
        }
    }

    #[test]
    fn lens_family_shape() {
        // p^2 / (p - 1) expands as [p + 2, 2, ..., 2] with p - 1 terms
        for p in 2i64..=12 {
            let coeffs = expand(p * p, p - 1).unwrap();
            assert_eq!(coeffs.len(), (p - 1) as usize);
            assert_eq!(coeffs[0], big(p + 2));
            assert!(coeffs[1..].iter().all(|a| *a == big(2)));
        }
    }
}
