use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclopoly::{cyclotomic_polynomial, euler_phi, mul_reduce, reduce_big};
use super::rational::Rational;
use crate::error::{Error, Result};

/// An element of Q(ζ_n), stored in the power basis 1, ζ, …, ζ^{φ(n)-1}
/// reduced modulo Φ_n.
///
/// Coefficients are kept as integer numerators over one positive common
/// denominator, with no common factor shared by all of them. Together with the
/// reduction modulo Φ_n this makes the representation unique for a fixed order.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero(order: u64) -> Result<Self> {
        check_order(order)?;
        Ok(Self::zero_unchecked(order))
    }

    fn zero_unchecked(order: u64) -> Self {
        let deg = euler_phi(order) as usize;
        Cyclotomic {
            order,
            num: vec![BigInt::zero(); deg],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// A rational number, viewed in Q(ζ_1) = Q.
    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic {
            order: 1,
            num: vec![q.numerator().clone()],
            den: q.denominator().clone(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }

    /// Σ c_k ζ_n^k for arbitrary integer exponents k (taken mod n).
    pub fn from_terms(order: u64, terms: &[(i64, Rational)]) -> Result<Self> {
        check_order(order)?;
        let den = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denominator()));
        let mut dense = vec![BigInt::zero(); order as usize];
        for (k, c) in terms {
            let slot = k.rem_euclid(order as i64) as usize;
            dense[slot] += c.numerator() * (&den / c.denominator());
        }
        Ok(Self::normalized(order, reduce_big(&dense, order), den))
    }

    fn normalized(order: u64, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if num.iter().all(Zero::is_zero) {
            return Cyclotomic {
                order,
                num,
                den: BigInt::one(),
            };
        }
        if !den.is_one() {
            let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c /= &g;
                }
                den /= &g;
            }
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        Cyclotomic { order, num, den }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Dimension φ(n) of the stored basis.
    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        match self.num.get(k) {
            Some(c) => Rational::new(c.clone(), self.den.clone()),
            None => Rational::zero(),
        }
    }

    pub fn coefficients(&self) -> Vec<Rational> {
        (0..self.num.len()).map(|k| self.coefficient(k)).collect()
    }

    /// Nonzero coefficients of the reduced representation, by exponent.
    pub fn nonzero_terms(&self) -> Vec<(usize, Rational)> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, Rational::new(c.clone(), self.den.clone())))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        let lowered = self.restrict_to(1)?;
        Some(lowered.coefficient(0))
    }

    /// The same value viewed in Q(ζ_m); `m` must be a multiple of the order.
    pub fn lift_to(&self, m: u64) -> Result<Self> {
        check_order(m)?;
        if !m.is_multiple_of(self.order) {
            return Err(Error::Range(format!(
                "cannot lift order {} to order {m}",
                self.order
            )));
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let step = (m / self.order) as usize;
        let mut dense = vec![BigInt::zero(); m as usize];
        for (j, c) in self.num.iter().enumerate() {
            dense[j * step] = c.clone();
        }
        Ok(Self::normalized(m, reduce_big(&dense, m), self.den.clone()))
    }

    /// Inverse of [`lift_to`](Self::lift_to): the same value in Q(ζ_n) if it
    /// lies there, where `n` divides the current order.
    pub fn restrict_to(&self, n: u64) -> Option<Self> {
        if n == 0 || !self.order.is_multiple_of(n) {
            return None;
        }
        if n == self.order {
            return Some(self.clone());
        }
        let basis: Vec<Cyclotomic> = (0..euler_phi(n) as i64)
            .map(|j| cyc_root(n, j).and_then(|z| z.lift_to(self.order)))
            .collect::<Result<_>>()
            .ok()?;
        let target: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect();
        let columns: Vec<Vec<BigRational>> = basis
            .iter()
            .map(|b| {
                b.num
                    .iter()
                    .map(|c| BigRational::new(c.clone(), b.den.clone()))
                    .collect()
            })
            .collect();
        let solution = solve_exact(&columns, &target)?;
        let terms: Vec<(i64, Rational)> = solution
            .into_iter()
            .enumerate()
            .map(|(j, c)| (j as i64, Rational::from_big(c)))
            .collect();
        Self::from_terms(n, &terms).ok()
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let m = self.order.lcm(&other.order);
        (
            self.lift_to(m).expect("lcm is a multiple"),
            other.lift_to(m).expect("lcm is a multiple"),
        )
    }

    fn add_same_order(&self, other: &Self, negate: bool) -> Self {
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(x, y)| {
                let y = y * &fb;
                if negate {
                    x * &fa - y
                } else {
                    x * &fa + y
                }
            })
            .collect();
        Self::normalized(self.order, num, den)
    }

    fn mul_same_order(&self, other: &Self) -> Self {
        let num = mul_reduce(&self.num, &other.num, self.order);
        Self::normalized(self.order, num, &self.den * &other.den)
    }

    fn combine(&self, other: &Self, f: impl Fn(&Self, &Self) -> Self) -> Self {
        if self.order == other.order {
            f(self, other)
        } else {
            let (a, b) = self.align(other);
            f(&a, &b)
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * q.numerator()).collect();
        Self::normalized(self.order, num, &self.den * q.denominator())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        if k == 1 {
            return self.clone();
        }
        let num = self.num.iter().map(|c| c * k).collect();
        Self::normalized(self.order, num, self.den.clone())
    }

    /// Complex conjugation, ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut dense = vec![BigInt::zero(); n];
        for (j, c) in self.num.iter().enumerate() {
            dense[(n - j) % n] += c;
        }
        Self::normalized(self.order, reduce_big(&dense, self.order), self.den.clone())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo Φ_n.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let modulus: Vec<BigRational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let f: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect();
        let inv = poly_inverse_mod(&f, &modulus).ok_or(Error::NotInvertible)?;
        let terms: Vec<(i64, Rational)> = inv
            .into_iter()
            .enumerate()
            .map(|(j, c)| (j as i64, Rational::from_big(c)))
            .collect();
        Self::from_terms(self.order, &terms)
    }

    /// Numeric value with ζ_n = e^{2πi/n}. Display and cross-checks only.
    pub fn to_complex(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let n = self.order as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / n;
            let w = c.to_f64().unwrap_or(f64::NAN) / den;
            acc += Complex64::from_polar(w, theta);
        }
        acc
    }
}

fn check_order(order: u64) -> Result<()> {
    if order == 0 {
        Err(Error::InvalidOrder(order))
    } else {
        Ok(())
    }
}

/// ζ_n^{k mod n}.
pub fn cyc_root(n: u64, k: i64) -> Result<Cyclotomic> {
    Cyclotomic::from_terms(n, &[(k, Rational::one())])
}

/// Exact sin(πm/n) in Q(ζ_{lcm(2n, 4)}).
pub fn sin_pi(m: i64, n: u64) -> Result<Cyclotomic> {
    check_order(n)?;
    let order = (2 * n).lcm(&4);
    // (ζ_{2n}^m - ζ_{2n}^{-m}) · (-ζ_4 / 2)
    let step = (order / (2 * n)) as i64;
    let quarter = (order / 4) as i64;
    let half = Rational::new(1, 2);
    Cyclotomic::from_terms(
        order,
        &[
            (m * step + quarter, -half.clone()),
            (-m * step + quarter, half),
        ],
    )
}

/// Exact cos(πm/n) in Q(ζ_{2n}).
pub fn cos_pi(m: i64, n: u64) -> Result<Cyclotomic> {
    check_order(n)?;
    let half = Rational::new(1, 2);
    Cyclotomic::from_terms(2 * n, &[(m, half.clone()), (-m, half)])
}

/// Memoized inverse of sin(πm/n); fails when n divides m.
pub fn sin_pi_inverse(m: i64, n: u64) -> Result<Cyclotomic> {
    static CACHE: OnceLock<Mutex<HashMap<(i64, u64), Cyclotomic>>> = OnceLock::new();
    check_order(n)?;
    let key = (m.rem_euclid(2 * n as i64), n);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let inv = sin_pi(key.0, n)?.inverse()?;
    cache.lock().unwrap().insert(key, inv.clone());
    Ok(inv)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = self.align(other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.nonzero_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·z{}", self.order)?,
                _ => write!(f, "({c})·z{}^{k}", self.order)?,
            }
        }
        Ok(())
    }
}

macro_rules! cyc_binop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.combine(rhs, $body)
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$f(rhs)
            }
        }
    };
}
cyc_binop!(Add, add, |a, b| a.add_same_order(b, false));
cyc_binop!(Sub, sub, |a, b| a.add_same_order(b, true));
cyc_binop!(Mul, mul, |a, b| a.mul_same_order(b));

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::from_integer(0), |acc, x| acc + x)
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = &rem[i + db] / lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    trim(&mut rem);
    (q, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// u with u·f ≡ 1 (mod modulus), or `None` if they share a factor.
fn poly_inverse_mod(f: &[BigRational], modulus: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = modulus.to_vec();
    let mut r1 = f.to_vec();
    trim(&mut r1);
    let mut s0: Vec<BigRational> = vec![];
    let mut s1 = vec![BigRational::one()];
    while r1.len() > 1 {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    let c = r1.first()?.clone();
    if c.is_zero() {
        return None;
    }
    let (_, u) = poly_divrem(&s1.iter().map(|x| x / &c).collect::<Vec<_>>(), modulus);
    Some(u)
}

/// Solve Σ_j x_j·columns[j] = target exactly; `None` if inconsistent.
fn solve_exact(columns: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = target.len();
    let cols = columns.len();
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::with_capacity(cols);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let lead = m[rank][c].clone();
        for x in m[rank].iter_mut() {
            *x /= &lead;
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    let delta = &factor * p;
                    *x -= delta;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if m[rank..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(cyc_root(1, 0).unwrap(), Cyclotomic::one());
        assert_eq!(cyc_root(4, 2).unwrap(), Cyclotomic::from_integer(-1));
        assert_eq!(cyc_root(4, -1).unwrap(), cyc_root(4, 3).unwrap());
        let sum: Cyclotomic = (1..=4).map(|k| cyc_root(5, k).unwrap()).sum();
        assert_eq!(sum, Cyclotomic::from_integer(-1));
        assert_eq!(cyc_root(0, 1), Err(Error::InvalidOrder(0)));
    }

    #[test]
    fn sines() {
        assert_eq!(sin_pi(1, 2).unwrap(), Cyclotomic::one());
        assert_eq!(
            sin_pi(1, 6).unwrap(),
            Cyclotomic::from_rational(Rational::new(1, 2))
        );
        assert!(sin_pi(5, 5).unwrap().is_zero());
        assert!(sin_pi(0, 7).unwrap().is_zero());
        let s = sin_pi(1, 5).unwrap().to_complex();
        assert!((s.re - 0.587785252292473).abs() < 1e-12 && s.im.abs() < 1e-12);
    }

    #[test]
    fn float_embedding() {
        assert!(approx(
            Cyclotomic::one().to_complex(),
            Complex64::new(1.0, 0.0),
            1e-15
        ));
        assert!(approx(
            cyc_root(4, 1).unwrap().to_complex(),
            Complex64::new(0.0, 1.0),
            1e-15
        ));
    }

    #[test]
    fn mixed_order_equality() {
        let i4 = cyc_root(4, 1).unwrap();
        let i12 = cyc_root(12, 3).unwrap();
        assert_eq!(i4, i12);
        assert_eq!(
            Cyclotomic::from_integer(3),
            Cyclotomic::from_integer(3).lift_to(30).unwrap()
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let s = sin_pi(2, 7).unwrap();
        let inv = s.inverse().unwrap();
        assert_eq!(&s * &inv, Cyclotomic::one());
        assert_eq!(
            Cyclotomic::zero(5).unwrap().inverse(),
            Err(Error::NotInvertible)
        );
    }

    #[test]
    fn restrict_recovers_lifted_value() {
        let x = Cyclotomic::from_terms(10, &[(1, Rational::new(3, 7)), (3, Rational::from(-2))])
            .unwrap();
        let up = x.lift_to(30).unwrap();
        assert_eq!(up.restrict_to(10).unwrap(), x);
        assert!(cyc_root(8, 1).unwrap().restrict_to(4).is_none());
        assert_eq!(
            sin_pi(1, 6).unwrap().as_rational(),
            Some(Rational::new(1, 2))
        );
    }

    #[test]
    fn golden_ratio_identity() {
        // 2cos(π/5) = φ satisfies φ² = φ + 1
        let phi = cos_pi(1, 5).unwrap().scale_int(2);
        assert_eq!(&phi * &phi, &phi + &Cyclotomic::one());
    }
}
