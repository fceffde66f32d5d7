//! Residue field arithmetic: finite fields 𝔽_{p^s} with a deterministic
//! modulus choice, the characteristic-zero rational residue field, and the
//! degree analysis of radical constants that drives every residual degree.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResidueError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field extension degree must be positive")]
    ZeroExtensionDegree,
    #[error("field 𝔽_p^s exceeds the supported size")]
    FieldTooLarge,
    #[error("radical constant must be nonzero")]
    ZeroConstant,
    #[error("root order must be positive")]
    ZeroRootOrder,
    #[error("degree list must be nonempty")]
    EmptyDegreeList,
    #[error("residue degree {sub} does not divide {sup}: inconsistent tower pair")]
    NonDivisibleDegrees { sub: u64, sup: u64 },
    #[error(
        "root degrees over the rationals are only computed for constants with a rational root"
    )]
    UnsupportedRationalConstant,
    #[error("constant does not belong to the residue field of this base")]
    ConstantKindMismatch,
    #[error("integer overflow in degree arithmetic")]
    Overflow,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
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

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

const MAX_FIELD_SIZE: u64 = 1_000_000;

/// An element of 𝔽_{p^s}: coefficients of a polynomial in the formal
/// generator `w`, lowest degree first, length `s`.
pub type FFElem = Vec<u64>;

/// 𝔽_{p^s} represented as 𝔽_p\[w\]/(modulus), the modulus being the
/// lexicographically least irreducible monic polynomial of degree s
/// (coefficient vectors read as base-p integers).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    s: u32,
    /// lower coefficients of the monic modulus, length s; empty meaning for s = 1
    modulus: Vec<u64>,
}

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of dividend by a monic divisor over 𝔽_p. Both are dense
/// coefficient vectors, lowest degree first.
fn poly_rem(mut dividend: Vec<u64>, divisor: &[u64], p: u64) -> Vec<u64> {
    poly_trim(&mut dividend);
    let dv_deg = divisor.len() - 1;
    while dividend.len() > dv_deg {
        let lead = *dividend.last().unwrap();
        let shift = dividend.len() - 1 - dv_deg;
        if lead != 0 {
            for (i, &c) in divisor.iter().enumerate() {
                let sub = (lead as u128 * c as u128 % p as u128) as u64;
                let idx = shift + i;
                dividend[idx] = (dividend[idx] + p - sub) % p;
            }
        }
        dividend.pop();
        poly_trim(&mut dividend);
    }
    dividend
}

fn poly_is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    // trial division by every monic polynomial of degree up to deg/2
    for dv_deg in 1..=deg / 2 {
        let count = p.pow(dv_deg as u32);
        for k in 0..count {
            let mut divisor = Vec::with_capacity(dv_deg + 1);
            let mut v = k;
            for _ in 0..dv_deg {
                divisor.push(v % p);
                v /= p;
            }
            divisor.push(1);
            if poly_rem(poly.to_vec(), &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(p: u64, s: u32) -> Result<Self, ResidueError> {
        if !is_prime(p) {
            return Err(ResidueError::NotPrime(p));
        }
        if s == 0 {
            return Err(ResidueError::ZeroExtensionDegree);
        }
        let mut size: u64 = 1;
        for _ in 0..s {
            size = size.checked_mul(p).ok_or(ResidueError::FieldTooLarge)?;
            if size > MAX_FIELD_SIZE {
                return Err(ResidueError::FieldTooLarge);
            }
        }
        if s == 1 {
            return Ok(FiniteField {
                p,
                s,
                modulus: Vec::new(),
            });
        }
        for k in 0..size {
            let mut poly = Vec::with_capacity(s as usize + 1);
            let mut v = k;
            for _ in 0..s {
                poly.push(v % p);
                v /= p;
            }
            poly.push(1);
            if poly_is_irreducible(&poly, p) {
                let modulus = poly[..s as usize].to_vec();
                return Ok(FiniteField { p, s, modulus });
            }
        }
        unreachable!("an irreducible monic polynomial of every degree exists over 𝔽_p")
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.s
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.s)
    }

    /// Lower coefficients of the monic modulus; empty for s = 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Full rendering of an element with its field, e.g.
    /// "2*w+1 in GF(9) mod w^2+1".
    pub fn describe_element(&self, e: &FFElem) -> String {
        format!("{} in {}", element_string(e), self)
    }

    pub fn zero(&self) -> FFElem {
        vec![0; self.s as usize]
    }

    pub fn one(&self) -> FFElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FFElem {
        let mut e = self.zero();
        let p = self.p as i64;
        e[0] = (((n % p) + p) % p) as u64;
        e
    }

    /// The formal generator `w`; only defined when s > 1.
    pub fn generator(&self) -> Option<FFElem> {
        if self.s < 2 {
            return None;
        }
        let mut e = self.zero();
        e[1] = 1;
        Some(e)
    }

    pub fn is_zero(&self, a: &FFElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &FFElem) -> FFElem {
        a.iter().map(|&x| (self.p - x) % self.p).collect()
    }

    pub fn sub(&self, a: &FFElem, b: &FFElem) -> FFElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let s = self.s as usize;
        let p = self.p as u128;
        let mut prod = vec![0u64; 2 * s - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let cur = prod[i + j] as u128 + x as u128 * y as u128 % p;
                prod[i + j] = (cur % p) as u64;
            }
        }
        // reduce by the monic modulus: w^s = -(lower coefficients)
        for deg in (s..2 * s - 1).rev() {
            let lead = prod[deg];
            if lead == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &c) in self.modulus.iter().enumerate() {
                let sub = (lead as u128 * c as u128 % p) as u64;
                let idx = deg - s + i;
                prod[idx] = (prod[idx] + self.p - sub) % self.p;
            }
        }
        prod.truncate(s);
        prod
    }

    pub fn pow(&self, a: &FFElem, mut e: u64) -> FFElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FFElem) -> Result<FFElem, ResidueError> {
        if self.is_zero(a) {
            return Err(ResidueError::ZeroConstant);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// a^e for signed e.
    pub fn pow_signed(&self, a: &FFElem, e: i64) -> Result<FFElem, ResidueError> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            let inv = self.inv(a)?;
            Ok(self.pow(&inv, e.unsigned_abs()))
        }
    }

    /// Order of a in the multiplicative group 𝔽_{p^s}^*.
    pub fn multiplicative_order(&self, a: &FFElem) -> Result<u64, ResidueError> {
        if self.is_zero(a) {
            return Err(ResidueError::ZeroConstant);
        }
        let group = self.order() - 1;
        let mut ord = group;
        let mut rest = group;
        let mut f = 2;
        while f * f <= rest {
            if rest.is_multiple_of(f) {
                while rest.is_multiple_of(f) {
                    rest /= f;
                }
                while ord.is_multiple_of(f) && self.pow(a, ord / f) == self.one() {
                    ord /= f;
                }
            }
            f += 1;
        }
        if rest > 1 {
            while ord.is_multiple_of(rest) && self.pow(a, ord / rest) == self.one() {
                ord /= rest;
            }
        }
        Ok(ord)
    }

    /// The unique p-th root of a (Frobenius is an automorphism).
    pub fn pth_root(&self, a: &FFElem) -> FFElem {
        if self.s == 1 {
            return a.clone();
        }
        self.pow(a, self.order() / self.p)
    }

    /// Degrees over 𝔽_{p^s} of all roots of X^m - c in the algebraic closure.
    pub fn root_degrees(&self, c: &FFElem, m: u64) -> Result<RootDegreeResult, ResidueError> {
        self.root_degrees_in_extension(c, m, 1)
    }

    /// Degrees over the extension 𝔽_{q^ext} (q = p^s) of all roots of
    /// X^m - c, for a constant c of the base field. Only the multiplicative
    /// order of c enters, so the extension never has to be constructed.
    pub fn root_degrees_in_extension(
        &self,
        c: &FFElem,
        m: u64,
        ext: u64,
    ) -> Result<RootDegreeResult, ResidueError> {
        if self.is_zero(c) {
            return Err(ResidueError::ZeroConstant);
        }
        if m == 0 || ext == 0 {
            return Err(ResidueError::ZeroRootOrder);
        }
        // the field is perfect: p-th roots are unique, so the p-part of m
        // contributes nothing to the degrees
        let mut m_sep = m;
        while m_sep.is_multiple_of(self.p) {
            m_sep /= self.p;
        }
        let order = self.multiplicative_order(c)?;
        let q = BigInt::from(self.order()).pow(ext.try_into().map_err(|_| ResidueError::Overflow)?);
        Ok(degrees_from_order(&q, order, m_sep))
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s == 1 {
            write!(f, "GF({})", self.p)
        } else {
            let mut mono = self.modulus.clone();
            mono.push(1);
            write!(f, "GF({}) mod {}", self.order(), poly_string(&mono))
        }
    }
}

fn poly_string(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (c, i) {
            (c, 0) => format!("{c}"),
            (1, 1) => "w".to_string(),
            (c, 1) => format!("{c}*w"),
            (1, _) => format!("w^{i}"),
            (c, _) => format!("{c}*w^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// Renders an element as a polynomial expression in the generator `w`.
pub fn element_string(e: &FFElem) -> String {
    poly_string(e)
}

/// Multiset of degrees of the roots of a separable radical equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDegreeResult {
    pub degrees: Vec<u64>,
    pub min_degree: u64,
    pub max_degree: u64,
    pub ambiguous: bool,
}

impl RootDegreeResult {
    fn from_multiset(mut degrees: Vec<u64>) -> Self {
        degrees.sort_unstable();
        let min_degree = *degrees.first().expect("nonempty root multiset");
        let max_degree = *degrees.last().unwrap();
        RootDegreeResult {
            ambiguous: min_degree != max_degree,
            degrees,
            min_degree,
            max_degree,
        }
    }
}

/// Degree multiset of the roots of X^m - c over the field with q elements,
/// where c has multiplicative order `order` and gcd(m, char) = 1. A root
/// lies in 𝔽_{q^d} iff c is an m-th power there, and then there are exactly
/// gcd(m, q^d - 1) of them.
fn degrees_from_order(q: &BigInt, order: u64, m: u64) -> RootDegreeResult {
    let mut exact: Vec<(u64, u64)> = Vec::new();
    let mut found: u64 = 0;
    let big_order = BigInt::from(order);
    for d in 1..=m {
        if found == m {
            break;
        }
        let group = q.pow(d as u32) - BigInt::one();
        let g = BigInt::from(m).gcd(&group);
        let solvable = ((&group / &g) % &big_order).is_zero();
        if !solvable {
            continue;
        }
        let roots_here = g.to_u64().expect("gcd bounded by m");
        let mut lower = 0;
        for &(d2, count) in &exact {
            if d % d2 == 0 {
                lower += count;
            }
        }
        if roots_here > lower {
            exact.push((d, roots_here - lower));
            found += roots_here - lower;
        }
    }
    debug_assert_eq!(found, m, "X^m - c must have m roots in the closure");
    let mut degrees = Vec::with_capacity(m as usize);
    for (d, count) in exact {
        for _ in 0..count {
            degrees.push(d);
        }
    }
    RootDegreeResult::from_multiset(degrees)
}

/// Degrees over ℚ of the roots of X^m - c for rational c. Supported whenever
/// the positive part of c has a rational m-th root; the roots then differ
/// from it by roots of unity and their degrees are Euler phi values.
pub fn rational_root_degrees(c: &BigRational, m: u64) -> Result<RootDegreeResult, ResidueError> {
    if c.is_zero() {
        return Err(ResidueError::ZeroConstant);
    }
    if m == 0 {
        return Err(ResidueError::ZeroRootOrder);
    }
    if rational_nth_root(c, m).is_some() {
        let mut degrees = Vec::new();
        for d in divisors(m) {
            let phi = euler_phi(d);
            for _ in 0..phi {
                degrees.push(phi);
            }
        }
        return Ok(RootDegreeResult::from_multiset(degrees));
    }
    if c.is_negative() && m.is_multiple_of(2) && rational_nth_root(&(-c), m).is_some() {
        // roots are w·ζ with ζ^m = -1: exactly the ζ of order d = 2·gcd(d, m)
        let mut degrees = Vec::new();
        for d in divisors(2 * m) {
            if d == 2 * d.gcd(&m) {
                let phi = euler_phi(d);
                for _ in 0..phi {
                    degrees.push(phi);
                }
            }
        }
        debug_assert_eq!(degrees.len() as u64, m);
        return Ok(RootDegreeResult::from_multiset(degrees));
    }
    Err(ResidueError::UnsupportedRationalConstant)
}

fn rational_nth_root(c: &BigRational, m: u64) -> Option<BigRational> {
    let m32: u32 = m.try_into().ok()?;
    if c.is_negative() && m.is_multiple_of(2) {
        return None;
    }
    let (sign, abs) = if c.is_negative() {
        (-BigInt::one(), -c)
    } else {
        (BigInt::one(), c.clone())
    };
    let num_root = abs.numer().nth_root(m32);
    let den_root = abs.denom().nth_root(m32);
    if num_root.pow(m32) == *abs.numer() && den_root.pow(m32) == *abs.denom() {
        Some(BigRational::new(sign * num_root, den_root))
    } else {
        None
    }
}

/// Compositum degree of finite subfields of a fixed closure: the lcm.
pub fn extension_degree_join(degrees: &[u64]) -> Result<u64, ResidueError> {
    if degrees.is_empty() {
        return Err(ResidueError::EmptyDegreeList);
    }
    let mut acc: u64 = 1;
    for &d in degrees {
        let g = acc.gcd(&d);
        acc = (acc / g).checked_mul(d).ok_or(ResidueError::Overflow)?;
    }
    Ok(acc)
}

/// Relative degree f_sup / f_sub; subfields of a fixed closure are ordered
/// by divisibility, so anything else flags an inconsistent tower pair.
pub fn relative_degree(f_sub: u64, f_sup: u64) -> Result<u64, ResidueError> {
    if f_sub == 0 || !f_sup.is_multiple_of(f_sub) {
        return Err(ResidueError::NonDivisibleDegrees {
            sub: f_sub,
            sup: f_sup,
        });
    }
    Ok(f_sup / f_sub)
}

/// A residue field: finite 𝔽_{p^s} or the characteristic-zero rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ResidueField {
    Rational,
    Finite(FiniteField),
}

impl ResidueField {
    pub fn rational() -> Self {
        ResidueField::Rational
    }

    pub fn finite(p: u64, s: u32) -> Result<Self, ResidueError> {
        Ok(ResidueField::Finite(FiniteField::new(p, s)?))
    }

    /// Residue characteristic: p for finite fields, 1 in characteristic zero.
    pub fn residue_char(&self) -> u64 {
        match self {
            ResidueField::Rational => 1,
            ResidueField::Finite(ff) => ff.p,
        }
    }

    pub fn const_one(&self) -> Constant {
        match self {
            ResidueField::Rational => Constant::Rational(BigRational::one()),
            ResidueField::Finite(ff) => Constant::Finite(ff.one()),
        }
    }

    pub fn const_from_int(&self, n: i64) -> Constant {
        match self {
            ResidueField::Rational => Constant::Rational(BigRational::from(BigInt::from(n))),
            ResidueField::Finite(ff) => Constant::Finite(ff.from_int(n)),
        }
    }

    pub fn const_is_zero(&self, c: &Constant) -> bool {
        match (self, c) {
            (ResidueField::Rational, Constant::Rational(r)) => r.is_zero(),
            (ResidueField::Finite(ff), Constant::Finite(e)) => ff.is_zero(e),
            _ => false,
        }
    }

    pub fn const_is_one(&self, c: &Constant) -> bool {
        match (self, c) {
            (ResidueField::Rational, Constant::Rational(r)) => r.is_one(),
            (ResidueField::Finite(ff), Constant::Finite(e)) => *e == ff.one(),
            _ => false,
        }
    }

    pub fn const_mul(&self, a: &Constant, b: &Constant) -> Result<Constant, ResidueError> {
        match (self, a, b) {
            (ResidueField::Rational, Constant::Rational(x), Constant::Rational(y)) => {
                Ok(Constant::Rational(x * y))
            }
            (ResidueField::Finite(ff), Constant::Finite(x), Constant::Finite(y)) => {
                Ok(Constant::Finite(ff.mul(x, y)))
            }
            _ => Err(ResidueError::ConstantKindMismatch),
        }
    }

    pub fn const_add(&self, a: &Constant, b: &Constant) -> Result<Constant, ResidueError> {
        match (self, a, b) {
            (ResidueField::Rational, Constant::Rational(x), Constant::Rational(y)) => {
                Ok(Constant::Rational(x + y))
            }
            (ResidueField::Finite(ff), Constant::Finite(x), Constant::Finite(y)) => {
                Ok(Constant::Finite(ff.add(x, y)))
            }
            _ => Err(ResidueError::ConstantKindMismatch),
        }
    }

    pub fn const_neg(&self, a: &Constant) -> Result<Constant, ResidueError> {
        match (self, a) {
            (ResidueField::Rational, Constant::Rational(x)) => Ok(Constant::Rational(-x)),
            (ResidueField::Finite(ff), Constant::Finite(x)) => Ok(Constant::Finite(ff.neg(x))),
            _ => Err(ResidueError::ConstantKindMismatch),
        }
    }

    pub fn const_pow(&self, a: &Constant, e: i64) -> Result<Constant, ResidueError> {
        match (self, a) {
            (ResidueField::Rational, Constant::Rational(x)) => {
                if x.is_zero() && e < 0 {
                    return Err(ResidueError::ZeroConstant);
                }
                let e32: i32 = e.try_into().map_err(|_| ResidueError::Overflow)?;
                Ok(Constant::Rational(x.pow(e32)))
            }
            (ResidueField::Finite(ff), Constant::Finite(x)) => {
                Ok(Constant::Finite(ff.pow_signed(x, e)?))
            }
            _ => Err(ResidueError::ConstantKindMismatch),
        }
    }

    pub fn const_string(&self, c: &Constant) -> String {
        match c {
            Constant::Rational(r) => r.to_string(),
            Constant::Finite(e) => element_string(e),
        }
    }

    /// Degrees over this field of the roots of X^m - c.
    pub fn root_degrees(&self, c: &Constant, m: u64) -> Result<RootDegreeResult, ResidueError> {
        self.root_degrees_in_extension(c, m, 1)
    }

    /// Degrees over the extension of this field of relative degree `ext`.
    pub fn root_degrees_in_extension(
        &self,
        c: &Constant,
        m: u64,
        ext: u64,
    ) -> Result<RootDegreeResult, ResidueError> {
        match (self, c) {
            (ResidueField::Rational, Constant::Rational(r)) => {
                debug_assert_eq!(
                    ext, 1,
                    "characteristic-zero residue extensions are trivial in scope"
                );
                rational_root_degrees(r, m)
            }
            (ResidueField::Finite(ff), Constant::Finite(e)) => {
                ff.root_degrees_in_extension(e, m, ext)
            }
            _ => Err(ResidueError::ConstantKindMismatch),
        }
    }
}

impl fmt::Display for ResidueField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueField::Rational => write!(f, "Q"),
            ResidueField::Finite(ff) => write!(f, "{ff}"),
        }
    }
}

/// A constant of a residue field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Constant {
    Rational(BigRational),
    Finite(FFElem),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_make_prime_field() {
        let f3 = FiniteField::new(3, 1).unwrap();
        assert_eq!(f3.order(), 3);
        assert_eq!(f3.to_string(), "GF(3)");
        assert_eq!(
            FiniteField::new(6, 1).unwrap_err(),
            ResidueError::NotPrime(6)
        );
    }

    #[test]
    fn field_make_gf9_modulus() {
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(f9.modulus, vec![1, 0]);
        assert_eq!(f9.to_string(), "GF(9) mod w^2+1");
    }

    #[test]
    fn gf9_arithmetic_has_order_eight_generator() {
        let f9 = FiniteField::new(3, 2).unwrap();
        let w = f9.generator().unwrap();
        // w^2 = -1, so w has multiplicative order 4
        assert_eq!(f9.mul(&w, &w), f9.from_int(-1));
        assert_eq!(f9.multiplicative_order(&w).unwrap(), 4);
        let inv = f9.inv(&w).unwrap();
        assert_eq!(f9.mul(&w, &inv), f9.one());
    }

    #[test]
    fn root_degrees_matches_worked_cases() {
        let f3 = FiniteField::new(3, 1).unwrap();
        let two = f3.from_int(2);
        let one = f3.one();
        let r = f3.root_degrees(&two, 2).unwrap();
        assert_eq!(r.degrees, vec![2, 2]);
        assert!(!r.ambiguous);

        let r = f3.root_degrees(&one, 2).unwrap();
        assert_eq!(r.degrees, vec![1, 1]);
        assert!(!r.ambiguous);

        let r = f3.root_degrees(&one, 4).unwrap();
        assert_eq!(r.degrees, vec![1, 1, 2, 2]);
        assert!(r.ambiguous);
        assert_eq!(r.min_degree, 1);
        assert_eq!(r.max_degree, 2);

        let f7 = FiniteField::new(7, 1).unwrap();
        let minus_one = f7.from_int(-1);
        let r = f7.root_degrees(&minus_one, 2).unwrap();
        assert_eq!(r.degrees, vec![2, 2]);
    }

    #[test]
    fn root_degrees_strips_p_part() {
        let f9 = FiniteField::new(3, 2).unwrap();
        let w = f9.generator().unwrap();
        let direct = f9.root_degrees(&w, 6).unwrap();
        let stripped = f9.root_degrees(&f9.pth_root(&w), 2).unwrap();
        assert_eq!(direct, stripped);
    }

    #[test]
    fn root_degrees_rejects_degenerate_input() {
        let f3 = FiniteField::new(3, 1).unwrap();
        assert_eq!(
            f3.root_degrees(&f3.zero(), 2).unwrap_err(),
            ResidueError::ZeroConstant
        );
        assert_eq!(
            f3.root_degrees(&f3.one(), 0).unwrap_err(),
            ResidueError::ZeroRootOrder
        );
    }

    #[test]
    fn root_degrees_in_extension_collapse() {
        // X^4 - 1 over GF(9) splits: every degree is 1
        let f3 = FiniteField::new(3, 1).unwrap();
        let r = f3.root_degrees_in_extension(&f3.one(), 4, 2).unwrap();
        assert_eq!(r.degrees, vec![1, 1, 1, 1]);
    }

    #[test]
    fn rational_root_degree_cases() {
        let one = BigRational::one();
        let r = rational_root_degrees(&one, 4).unwrap();
        assert_eq!(r.degrees, vec![1, 1, 2, 2]);
        assert!(r.ambiguous);

        let minus_one = -BigRational::one();
        let r = rational_root_degrees(&minus_one, 2).unwrap();
        assert_eq!(r.degrees, vec![2, 2]);

        let c = BigRational::new(BigInt::from(4), BigInt::one());
        let r = rational_root_degrees(&c, 2).unwrap();
        assert_eq!(r.degrees, vec![1, 1]);

        let c = BigRational::new(BigInt::from(2), BigInt::one());
        assert_eq!(
            rational_root_degrees(&c, 2).unwrap_err(),
            ResidueError::UnsupportedRationalConstant
        );
    }

    #[test]
    fn join_and_relative_degrees() {
        assert_eq!(extension_degree_join(&[2, 2]).unwrap(), 2);
        assert_eq!(extension_degree_join(&[1]).unwrap(), 1);
        assert_eq!(extension_degree_join(&[2, 3]).unwrap(), 6);
        assert_eq!(
            extension_degree_join(&[]).unwrap_err(),
            ResidueError::EmptyDegreeList
        );

        assert_eq!(relative_degree(1, 2).unwrap(), 2);
        assert_eq!(relative_degree(3, 3).unwrap(), 1);
        assert_eq!(relative_degree(2, 6).unwrap(), 3);
        assert!(relative_degree(2, 3).is_err());
    }

    #[test]
    fn element_strings() {
        let f9 = FiniteField::new(3, 2).unwrap();
        let w = f9.generator().unwrap();
        let e = f9.add(&f9.mul(&f9.from_int(2), &w), &f9.one());
        assert_eq!(element_string(&e), "2*w+1");
        assert_eq!(f9.describe_element(&e), "2*w+1 in GF(9) mod w^2+1");
        assert_eq!(element_string(&f9.zero()), "0");
    }
}
