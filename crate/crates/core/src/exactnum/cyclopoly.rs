//! Cyclotomic polynomials and the reduction maps built on them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Coefficients of Φ_n from the constant term up; monic of degree φ(n).
pub(crate) fn cyclotomic_polynomial(n: u64) -> Arc<[i64]> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<[i64]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }

    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut quotient = vec![0i64; n as usize + 1];
    quotient[0] = -1;
    quotient[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d);
            quotient = exact_div_monic(&quotient, &divisor);
        }
    }
    let poly: Arc<[i64]> = quotient.into();
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

fn exact_div_monic(dividend: &[i64], divisor: &[i64]) -> Vec<i64> {
    let dd = divisor.len() - 1;
    let mut rem = dividend.to_vec();
    let qlen = dividend.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in divisor.iter().enumerate() {
                rem[i + j] = rem[i + j]
                    .checked_sub(c.checked_mul(dj).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    q
}

pub(crate) fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Reduce a dense integer polynomial modulo Φ_n in place, using x^n = 1 first.
/// Returns `None` on i128 overflow.
pub(crate) fn reduce_i128(coeffs: &[i128], n: u64) -> Option<Vec<i128>> {
    let n_us = n as usize;
    let mut folded = vec![0i128; n_us.max(1)];
    for (e, &c) in coeffs.iter().enumerate() {
        let slot = e % n_us;
        folded[slot] = folded[slot].checked_add(c)?;
    }
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for top in (deg..folded.len()).rev() {
        let c = folded[top];
        if c == 0 {
            continue;
        }
        for (j, &pj) in phi.iter().enumerate() {
            let idx = top - deg + j;
            folded[idx] = folded[idx].checked_sub(c.checked_mul(pj as i128)?)?;
        }
    }
    folded.truncate(deg);
    Some(folded)
}

pub(crate) fn reduce_big(coeffs: &[BigInt], n: u64) -> Vec<BigInt> {
    let n_us = n as usize;
    let mut folded = vec![BigInt::zero(); n_us.max(1)];
    for (e, c) in coeffs.iter().enumerate() {
        folded[e % n_us] += c;
    }
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for top in (deg..folded.len()).rev() {
        if folded[top].is_zero() {
            continue;
        }
        let c = folded[top].clone();
        for (j, &pj) in phi.iter().enumerate() {
            if pj != 0 {
                folded[top - deg + j] -= &c * pj;
            }
        }
    }
    folded.truncate(deg);
    folded
}

/// Integer convolution followed by reduction; i128 fast path with BigInt fallback.
pub(crate) fn mul_reduce(a: &[BigInt], b: &[BigInt], n: u64) -> Vec<BigInt> {
    if let Some(out) = mul_reduce_small(a, b, n) {
        return out;
    }
    let mut prod = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    reduce_big(&prod, n)
}

fn mul_reduce_small(a: &[BigInt], b: &[BigInt], n: u64) -> Option<Vec<BigInt>> {
    let a: Vec<i64> = a.iter().map(|x| x.to_i64()).collect::<Option<_>>()?;
    let b: Vec<i64> = b.iter().map(|x| x.to_i64()).collect::<Option<_>>()?;
    let mut prod = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                prod[i + j] = prod[i + j].checked_add(x as i128 * y as i128)?;
            }
        }
    }
    let reduced = reduce_i128(&prod, n)?;
    Some(reduced.into_iter().map(BigInt::from).collect())
}
