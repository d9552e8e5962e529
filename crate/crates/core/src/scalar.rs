//! Exact scalars: arbitrary-precision rationals and cyclotomic field elements.
//!
//! A cyclotomic scalar of conductor `m` is an integer polynomial in a fixed
//! primitive m-th root of unity, reduced modulo the m-th cyclotomic
//! polynomial, together with a positive denominator. The representation is
//! canonical: content-free numerator, positive denominator, degree below
//! phi(m). Equal values therefore have equal representations, which lets
//! scalars be hashed and compared structurally.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Which field an arrangement's coefficients live in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldSpec {
    Rational,
    /// Rationals extended by a primitive root of unity of order `m` (m >= 3).
    Cyclotomic { m: u32 },
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Cyclotomic { m } => write!(f, "cyclotomic(m={m})"),
        }
    }
}

// ---------------------------------------------------------------------------
// integer polynomial helpers (dense, constant term first)
// ---------------------------------------------------------------------------

fn poly_trim(p: &mut Vec<BigInt>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    poly_trim(&mut out);
    out
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_monic(num: &[BigInt], div: &[BigInt]) -> Vec<BigInt> {
    assert!(div.last().map_or(false, |c| c.is_one()), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    poly_trim(&mut rem);
    let d = div.len() - 1;
    if rem.len() <= d {
        assert!(rem.is_empty(), "non-exact polynomial division");
        return Vec::new();
    }
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    for k in (d..rem.len()).rev() {
        let coef = std::mem::replace(&mut rem[k], BigInt::zero());
        if coef.is_zero() {
            continue;
        }
        for (i, c) in div.iter().take(d).enumerate() {
            rem[k - d + i] -= &coef * c;
        }
        quot[k - d] = coef;
    }
    poly_trim(&mut rem);
    assert!(rem.is_empty(), "non-exact polynomial division");
    quot
}

/// Reduce an integer polynomial modulo a monic integer polynomial, in place.
fn poly_reduce_monic(p: &mut Vec<BigInt>, modulus: &[BigInt]) {
    let d = modulus.len() - 1;
    while p.len() > d {
        let coef = p.pop().unwrap();
        if coef.is_zero() {
            continue;
        }
        let k = p.len(); // degree of the removed term is k
        for (i, c) in modulus.iter().take(d).enumerate() {
            p[k - d + i] -= &coef * c;
        }
    }
    poly_trim(p);
}

fn divisors(m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    for d in 1..=m {
        if m % d == 0 {
            out.push(d);
        }
    }
    out
}

/// Euler's totient.
pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if n > 1 {
        result = result / n * (n - 1);
    }
    result
}

/// The m-th cyclotomic polynomial, constant term first, cached per conductor.
pub fn cyclotomic_polynomial(m: u32) -> std::sync::Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, std::sync::Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let poly = compute_cyclotomic(m);
    let arc = std::sync::Arc::new(poly);
    cache.lock().unwrap().insert(m, arc.clone());
    arc
}

fn compute_cyclotomic(m: u32) -> Vec<BigInt> {
    assert!(m >= 1);
    // x^m - 1 divided by the product of Phi_d over proper divisors d of m.
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in divisors(m) {
        if d == m {
            continue;
        }
        den = poly_mul(&den, &cyclotomic_polynomial(d));
    }
    poly_div_monic(&num, &den)
}

// ---------------------------------------------------------------------------
// cyclotomic numbers
// ---------------------------------------------------------------------------

/// An element of the cyclotomic field of conductor `m`: an integer polynomial
/// in the chosen primitive root, reduced mod Phi_m, over a positive
/// denominator with no common content.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclotomic {
    m: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    fn canonical(m: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let phi = cyclotomic_polynomial(m);
        poly_reduce_monic(&mut num, &phi);
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if num.is_empty() {
            return Cyclotomic { m, num, den: BigInt::one() };
        }
        let mut g = den.clone();
        for c in &num {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if !g.is_one() {
            den = &den / &g;
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
        }
        Cyclotomic { m, num, den }
    }

    pub fn zero(m: u32) -> Self {
        Cyclotomic { m, num: Vec::new(), den: BigInt::one() }
    }

    pub fn from_int(m: u32, v: BigInt) -> Self {
        Cyclotomic::canonical(m, vec![v], BigInt::one())
    }

    /// The chosen primitive m-th root of unity, raised to the k-th power.
    pub fn root_pow(m: u32, k: u32) -> Self {
        let mut num = vec![BigInt::zero(); (k % m) as usize + 1];
        *num.last_mut().unwrap() = BigInt::one();
        Cyclotomic::canonical(m, num, BigInt::one())
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn numerator_coeffs(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.m, other.m, "mixed cyclotomic conductors");
    }

    fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let len = self.num.len().max(other.num.len());
        let mut num = vec![BigInt::zero(); len];
        for (i, c) in self.num.iter().enumerate() {
            num[i] += c * &other.den;
        }
        for (i, c) in other.num.iter().enumerate() {
            num[i] += c * &self.den;
        }
        Cyclotomic::canonical(self.m, num, &self.den * &other.den)
    }

    fn neg(&self) -> Self {
        Cyclotomic {
            m: self.m,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        Cyclotomic::canonical(self.m, poly_mul(&self.num, &other.num), &self.den * &other.den)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// modulo the (irreducible) cyclotomic polynomial.
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let phi = cyclotomic_polynomial(self.m);
        let a: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let b: Vec<BigRational> = phi
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (g, u) = rational_poly_egcd(&a, &b);
        // g is a nonzero constant since Phi_m is irreducible and a is nonzero.
        assert_eq!(g.len(), 1, "cyclotomic polynomial not coprime with element");
        let scale = g[0].recip();
        // inverse of num/den is den * u / g
        let mut num = Vec::with_capacity(u.len());
        let mut den_lcm = BigInt::one();
        let scaled: Vec<BigRational> = u.iter().map(|c| c * &scale).collect();
        for c in &scaled {
            den_lcm = den_lcm.lcm(c.denom());
        }
        for c in &scaled {
            num.push(c.numer() * (&den_lcm / c.denom()) * &self.den);
        }
        Cyclotomic::canonical(self.m, num, den_lcm)
    }
}

/// Extended gcd in Q[x]: returns (g, u) with u*a = g modulo b.
fn rational_poly_egcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    fn trim(p: &mut Vec<BigRational>) {
        while p.last().map_or(false, |c| c.is_zero()) {
            p.pop();
        }
    }
    fn rem_div(num: &[BigRational], div: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = num.to_vec();
        trim(&mut rem);
        let d = div.len() - 1;
        let lead = div.last().unwrap().clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1;
            let coef = rem.last().unwrap() / &lead;
            rem.pop();
            for (i, c) in div.iter().take(d).enumerate() {
                let t = &coef * c;
                rem[k - d + i] -= t;
            }
            quot[k - d] = coef;
            trim(&mut rem);
        }
        (quot, rem)
    }
    // Maintain r_i = u_i * a (mod b_original); we never need the b-cofactor.
    let mut r0: Vec<BigRational> = b.to_vec();
    let mut r1: Vec<BigRational> = a.to_vec();
    let mut u0: Vec<BigRational> = Vec::new();
    let mut u1: Vec<BigRational> = vec![BigRational::one()];
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let (q, rem) = rem_div(&r0, &r1);
        let qu = poly_mul_rat(&q, &u1);
        let mut unew: Vec<BigRational> = u0.clone();
        if unew.len() < qu.len() {
            unew.resize(qu.len(), BigRational::zero());
        }
        for (i, c) in qu.iter().enumerate() {
            unew[i] -= c;
        }
        trim(&mut unew);
        r0 = r1;
        r1 = rem;
        u0 = u1;
        u1 = unew;
    }
    (r0, u0)
}

fn poly_mul_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    while out.last().map_or(false, |c| c.is_zero()) {
        out.pop();
    }
    out
}

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

/// An exact field element, rational or cyclotomic.
///
/// Arithmetic between scalars of different fields (or different conductors)
/// is a programming error and panics; arrangements are field-homogeneous by
/// construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(Cyclotomic),
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rational => Scalar::Rational(BigRational::zero()),
            FieldSpec::Cyclotomic { m } => Scalar::Cyclotomic(Cyclotomic::zero(m)),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: FieldSpec, v: i64) -> Self {
        match field {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Cyclotomic { m } => {
                Scalar::Cyclotomic(Cyclotomic::from_int(m, BigInt::from(v)))
            }
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar::Rational(q)
    }

    /// zeta_m^k where zeta_m is the chosen primitive m-th root of unity.
    pub fn root_of_unity_pow(m: u32, k: u32) -> Self {
        match m {
            1 => Scalar::from_int(FieldSpec::Rational, 1),
            2 => Scalar::from_int(FieldSpec::Rational, if k % 2 == 0 { 1 } else { -1 }),
            _ => Scalar::Cyclotomic(Cyclotomic::root_pow(m, k)),
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Cyclotomic(c) => FieldSpec::Cyclotomic { m: c.m },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Cyclotomic(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Cyclotomic(c) => c.den.is_one() && c.num.len() == 1 && c.num[0].is_one(),
        }
    }

    /// True when the denominator is 1 (the scalar lies in Z or Z[zeta]).
    pub fn is_integral(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.denom().is_one(),
            Scalar::Cyclotomic(c) => c.den.is_one(),
        }
    }

    pub fn denominator(&self) -> BigInt {
        match self {
            Scalar::Rational(q) => q.denom().clone(),
            Scalar::Cyclotomic(c) => c.den.clone(),
        }
    }

    /// gcd of this scalar's integer coefficients with `acc` (requires integrality).
    pub fn content_gcd(&self, acc: &mut BigInt) {
        match self {
            Scalar::Rational(q) => {
                debug_assert!(q.denom().is_one());
                *acc = acc.gcd(q.numer());
            }
            Scalar::Cyclotomic(c) => {
                debug_assert!(c.den.is_one());
                for coef in &c.num {
                    *acc = acc.gcd(coef);
                    if acc.is_one() {
                        return;
                    }
                }
            }
        }
    }

    /// Exact division of an integral scalar by a positive integer dividing
    /// its content.
    pub fn div_int_exact(&self, d: &BigInt) -> Scalar {
        match self {
            Scalar::Rational(q) => {
                debug_assert!((q.numer() % d).is_zero());
                Scalar::Rational(BigRational::from_integer(q.numer() / d))
            }
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclotomic {
                m: c.m,
                num: c.num.iter().map(|x| x / d).collect(),
                den: BigInt::one(),
            }),
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(q * BigRational::from_integer(k.clone())),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(Cyclotomic::canonical(
                c.m,
                c.num.iter().map(|x| x * k).collect(),
                c.den.clone(),
            )),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => Scalar::Cyclotomic(a.add(b)),
            _ => panic!("mixed field scalars"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Cyclotomic(a) => Scalar::Cyclotomic(a.neg()),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => Scalar::Cyclotomic(a.mul(b)),
            _ => panic!("mixed field scalars"),
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => {
                assert!(!a.is_zero(), "division by zero");
                Scalar::Rational(a.recip())
            }
            Scalar::Cyclotomic(a) => Scalar::Cyclotomic(a.inv()),
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// As an i64 when the scalar is a small rational integer.
    pub fn to_small_int(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.denom().is_one() => {
                let (sign, digits) = q.numer().to_u64_digits();
                match digits.len() {
                    0 => Some(0),
                    1 if digits[0] <= i64::MAX as u64 => {
                        let v = digits[0] as i64;
                        Some(if sign == num::bigint::Sign::Minus { -v } else { v })
                    }
                    _ => None,
                }
            }
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Cyclotomic(c) => {
                if c.is_zero() {
                    return write!(f, "0");
                }
                let mut parts = Vec::new();
                for (i, coef) in c.num.iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    let term = match i {
                        0 => format!("{coef}"),
                        1 => format!("{coef}*z"),
                        _ => format!("{coef}*z^{i}"),
                    };
                    parts.push(term);
                }
                let body = parts.join(" + ");
                if c.den.is_one() {
                    write!(f, "{body}")
                } else {
                    write!(f, "({body})/{}", c.den)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi_coeffs(m: u32) -> Vec<i64> {
        cyclotomic_polynomial(m)
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn cyclotomic_polynomials_small() {
        assert_eq!(phi_coeffs(1), vec![-1, 1]);
        assert_eq!(phi_coeffs(2), vec![1, 1]);
        assert_eq!(phi_coeffs(3), vec![1, 1, 1]);
        assert_eq!(phi_coeffs(4), vec![1, 0, 1]);
        assert_eq!(phi_coeffs(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(phi_coeffs(6), vec![1, -1, 1]);
        assert_eq!(phi_coeffs(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn root_of_unity_order() {
        for m in [3u32, 4, 5, 6, 7, 12] {
            let z = Scalar::root_of_unity_pow(m, 1);
            let mut p = Scalar::one(FieldSpec::Cyclotomic { m });
            for _ in 0..m {
                p = p.mul(&z);
            }
            assert!(p.is_one(), "zeta_{m}^{m} != 1");
            let mut q = Scalar::one(FieldSpec::Cyclotomic { m });
            for k in 1..m {
                q = q.mul(&z);
                assert!(!q.is_one(), "zeta_{m} has order < {m} at power {k}");
            }
        }
    }

    #[test]
    fn cyclotomic_inverse() {
        let m = 5;
        let z = Scalar::root_of_unity_pow(m, 1);
        let two = Scalar::from_int(FieldSpec::Cyclotomic { m }, 2);
        let a = z.add(&two); // 2 + zeta
        let b = a.inv();
        assert!(a.mul(&b).is_one());
        // 1/(1 - zeta) times (1 - zeta) is 1 as well
        let one = Scalar::one(FieldSpec::Cyclotomic { m });
        let c = one.sub(&z);
        assert!(c.mul(&c.inv()).is_one());
    }

    #[test]
    fn rational_arithmetic() {
        let a = Scalar::from_rational(BigRational::new(BigInt::from(3), BigInt::from(4)));
        let b = Scalar::from_rational(BigRational::new(BigInt::from(1), BigInt::from(4)));
        assert!(a.add(&b).is_one());
        assert_eq!(a.mul(&b), Scalar::from_rational(BigRational::new(3.into(), 16.into())));
        assert_eq!(a.to_small_int(), None);
        assert_eq!(Scalar::from_int(FieldSpec::Rational, -7).to_small_int(), Some(-7));
    }

    #[test]
    fn canonical_form_is_reduced() {
        // (2 + 2 zeta)/2 reduces to 1 + zeta
        let m = 3;
        let z = Scalar::root_of_unity_pow(m, 1);
        let one = Scalar::one(FieldSpec::Cyclotomic { m });
        let half = Scalar::Cyclotomic(Cyclotomic::canonical(
            m,
            vec![BigInt::from(2), BigInt::from(2)],
            BigInt::from(2),
        ));
        assert_eq!(half, one.add(&z));
        // zeta^2 reduced mod Phi_3 = -1 - zeta
        let z2 = z.mul(&z);
        assert_eq!(z2, one.neg().add(&z.neg()));
    }

    #[test]
    fn phi_function() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(3), 2);
        assert_eq!(euler_phi(4), 2);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(30), 8);
    }
}
