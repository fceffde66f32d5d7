//! Independent brute-force verifiers for the property suite and the CLI
//! self-check. These deliberately share no algorithmic path with the main
//! modules: coset counting instead of determinants, box enumeration instead
//! of triangular solves, and exhaustive root searches in explicitly built
//! extension fields instead of order arithmetic. Guards are hard limits
//! with explicit errors.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::valgroup::ValueLattice;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("oracle precondition failed: {0}")]
    Precondition(String),
}

const MAX_COSETS: usize = 10_000;
const MAX_BOX_POINTS: u128 = 2_000_000;
const MAX_SEARCH_FIELD: u64 = 1_000_000;

// ---- rational Gauss solver (independent of the HNF machinery) ----------------------

/// Solves x · basis = v over ℚ by dense Gaussian elimination on the
/// transposed system. The basis is square and invertible.
#[allow(clippy::needless_range_loop)]
fn solve_rational(basis: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    let n = v.len();
    // column j of `aug` is basis row j (unknown x_j multiplies basis row j)
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n).map(|j| basis[j][i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .expect("basis is invertible");
        aug.swap(col, pivot);
        let scale = aug[col][col].clone();
        for e in aug[col].iter_mut() {
            *e /= &scale;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in 0..=n {
                let s = &aug[col][c] * &factor;
                aug[r][c] -= s;
            }
        }
    }
    (0..n).map(|i| aug[i][n].clone()).collect()
}

fn fractional_part(q: &BigRational) -> BigRational {
    q - q.floor()
}

/// Counts [sup : sub] by enumerating distinct cosets: reduce sup points into
/// a fundamental domain of sub and close under the sup basis translations.
pub fn index_by_coset_enumeration(
    sub: &ValueLattice,
    sup: &ValueLattice,
) -> Result<u64, OracleError> {
    let n = sub.ambient_dim();
    if n != sup.ambient_dim() {
        return Err(OracleError::Precondition(
            "ambient dimensions differ".into(),
        ));
    }
    let sub_basis = sub.basis_rows();
    let sup_basis = sup.basis_rows();
    let reduce = |v: &[BigRational]| -> Vec<BigRational> {
        let coords = solve_rational(&sub_basis, v);
        let fracs: Vec<BigRational> = coords.iter().map(fractional_part).collect();
        (0..n)
            .map(|j| {
                let mut acc = BigRational::zero();
                for (k, frac) in fracs.iter().enumerate() {
                    acc += frac * &sub_basis[k][j];
                }
                acc
            })
            .collect()
    };
    let zero = vec![BigRational::zero(); n];
    let mut seen: HashSet<Vec<BigRational>> = HashSet::new();
    let mut queue: VecDeque<Vec<BigRational>> = VecDeque::new();
    let start = reduce(&zero);
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(rep) = queue.pop_front() {
        for step in &sup_basis {
            let moved: Vec<BigRational> = rep.iter().zip(step).map(|(a, b)| a + b).collect();
            let next = reduce(&moved);
            if seen.insert(next.clone()) {
                if seen.len() > MAX_COSETS {
                    return Err(OracleError::GuardExceeded(format!(
                        "more than {MAX_COSETS} cosets"
                    )));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// Membership by bounded exhaustive search over integer coefficient boxes.
/// The box bound is valid for the reduced canonical bases the lattice type
/// maintains; the point count is guarded.
pub fn membership_by_integer_solve(
    lattice: &ValueLattice,
    v: &[BigRational],
) -> Result<bool, OracleError> {
    let n = lattice.ambient_dim();
    if v.len() != n {
        return Err(OracleError::Precondition(
            "vector length differs from ambient dimension".into(),
        ));
    }
    let denom = lattice.denominator();
    // clear denominators: k · M = w with M integral
    let mut w: Vec<i128> = Vec::with_capacity(n);
    for c in v {
        let scaled = c * BigRational::from(denom.clone());
        if !scaled.is_integer() {
            return Ok(false);
        }
        let val = scaled.to_integer().to_i128().ok_or_else(|| {
            OracleError::GuardExceeded("vector entries exceed the search range".into())
        })?;
        w.push(val);
    }
    let mut m: Vec<Vec<i128>> = Vec::with_capacity(n);
    for row in lattice.integer_rows() {
        let mut out = Vec::with_capacity(n);
        for e in row {
            out.push(e.to_i128().ok_or_else(|| {
                OracleError::GuardExceeded("basis entries exceed the search range".into())
            })?);
        }
        m.push(out);
    }
    let max_w = w.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    let bound_u128 = (1 + max_w) << (n.saturating_sub(1));
    let points = (2 * bound_u128 + 1)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if points > MAX_BOX_POINTS {
        return Err(OracleError::GuardExceeded(format!(
            "coefficient box holds {points} points, limit {MAX_BOX_POINTS}"
        )));
    }
    let bound = bound_u128 as i128;
    let mut k = vec![-bound; n];
    loop {
        let mut matches = true;
        for j in 0..n {
            let mut acc: i128 = 0;
            for (ki, row) in k.iter().zip(&m) {
                acc += ki * row[j];
            }
            if acc != w[j] {
                matches = false;
                break;
            }
        }
        if matches {
            return Ok(true);
        }
        // odometer
        let mut idx = 0;
        loop {
            if idx == n {
                return Ok(false);
            }
            k[idx] += 1;
            if k[idx] <= bound {
                break;
            }
            k[idx] = -bound;
            idx += 1;
        }
    }
}

// ---- a self-contained 𝔽_{p^k} just for root searching ------------------------------

mod gf {
    /// Dense polynomial arithmetic over 𝔽_p, lowest coefficient first.
    pub fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y % p) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        // Fermat
        let mut acc: u64 = 1;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    pub fn pmod(a: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let d = modulus.len() - 1;
        let lead_inv = inv_mod(modulus[d], p);
        while r.len() > d {
            let coeff = r[r.len() - 1] * lead_inv % p;
            let shift = r.len() - 1 - d;
            if coeff != 0 {
                for (i, &mc) in modulus.iter().enumerate() {
                    let sub = coeff * mc % p;
                    r[shift + i] = (r[shift + i] + p - sub) % p;
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = pmod(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn powmod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = pmod(base, modulus, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = pmod(&pmul(&acc, &b, p), modulus, p);
            }
            b = pmod(&pmul(&b, &b, p), modulus, p);
            e >>= 1;
        }
        acc
    }

    /// Rabin irreducibility test: g of degree k is irreducible over 𝔽_p iff
    /// X^(p^k) ≡ X (mod g) and gcd(X^(p^(k/ℓ)) − X, g) = 1 for primes ℓ | k.
    pub fn is_irreducible(g: &[u64], p: u64) -> bool {
        let k = g.len() - 1;
        if k == 0 {
            return false;
        }
        let x = vec![0u64, 1];
        let frob = |e: usize| -> Vec<u64> {
            // X^(p^e) mod g by iterated p-th powering
            let mut h = x.clone();
            for _ in 0..e {
                h = powmod(&h, p, g, p);
            }
            h
        };
        let mut prime_divisors = Vec::new();
        let mut rest = k;
        let mut f = 2;
        while f * f <= rest {
            if rest.is_multiple_of(f) {
                prime_divisors.push(f);
                while rest.is_multiple_of(f) {
                    rest /= f;
                }
            }
            f += 1;
        }
        if rest > 1 {
            prime_divisors.push(rest);
        }
        for l in prime_divisors {
            let mut h = frob(k / l);
            // h - X
            if h.len() < 2 {
                h.resize(2, 0);
            }
            h[1] = (h[1] + p - 1) % p;
            trim(&mut h);
            let g1 = pgcd(&h, g, p);
            if g1.len() != 1 {
                return false;
            }
        }
        let mut h = frob(k);
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        trim(&mut h);
        h.is_empty()
    }

    /// First irreducible monic polynomial of degree k, scanning coefficient
    /// vectors as base-p integers counted downwards from the top.
    pub fn find_modulus(p: u64, k: usize) -> Vec<u64> {
        if k == 1 {
            return vec![0, 1];
        }
        let total = p.pow(k as u32);
        for raw in (0..total).rev() {
            let mut g = Vec::with_capacity(k + 1);
            let mut v = raw;
            for _ in 0..k {
                g.push(v % p);
                v /= p;
            }
            g.push(1);
            if is_irreducible(&g, p) {
                return g;
            }
        }
        unreachable!("irreducible polynomials of every degree exist")
    }
}

/// Exhaustive root-degree oracle: for d = 1..m, scan the explicitly built
/// field 𝔽_{p^(s·d)} for roots of X^m − c and record the exact degree of
/// each over 𝔽_{p^s}. `base_modulus` is the monic modulus presenting c's
/// field (empty for s = 1).
pub fn root_degrees_by_search(
    p: u64,
    s: u32,
    base_modulus: &[u64],
    c: &[u64],
    m: u64,
) -> Result<Vec<u64>, OracleError> {
    if m == 0 {
        return Err(OracleError::Precondition(
            "root order must be positive".into(),
        ));
    }
    if c.iter().all(|&x| x == 0) {
        return Err(OracleError::Precondition("constant must be nonzero".into()));
    }
    let mut degrees = Vec::new();
    for d in 1..=m {
        let k = s as u64 * d;
        let mut size: u64 = 1;
        for _ in 0..k {
            size = size
                .checked_mul(p)
                .filter(|&v| v <= MAX_SEARCH_FIELD)
                .ok_or_else(|| {
                    OracleError::GuardExceeded(format!(
                        "field of size p^{k} exceeds {MAX_SEARCH_FIELD}"
                    ))
                })?;
        }
        let modulus = gf::find_modulus(p, k as usize);
        // embed c: find an image of the base generator, i.e. a root of the
        // base modulus, then evaluate c's polynomial there
        let c_embedded: Vec<u64> = if s == 1 {
            vec![c[0] % p]
        } else {
            let mut base_mono: Vec<u64> = base_modulus.to_vec();
            base_mono.push(1);
            let root = enumerate_elements(p, k as usize)
                .find(|cand| eval_poly(&base_mono, cand, &modulus, p).is_empty())
                .ok_or_else(|| {
                    OracleError::Precondition("base modulus has no root in the search field".into())
                })?;
            eval_poly(c, &root, &modulus, p)
        };
        let base_size = p.pow(s);
        for gamma in enumerate_elements(p, k as usize) {
            if gamma.iter().all(|&x| x == 0) {
                continue;
            }
            let power = gf::powmod(&gamma, m, &modulus, p);
            if power != c_embedded {
                continue;
            }
            // exact degree over the base field: least e with gamma^(q^e) = gamma
            let mut e = 1;
            loop {
                let mut acc = gamma.clone();
                for _ in 0..e {
                    acc = gf::powmod(&acc, base_size, &modulus, p);
                }
                if acc == gamma {
                    break;
                }
                e += 1;
            }
            if e == d {
                degrees.push(d);
            }
        }
    }
    degrees.sort_unstable();
    Ok(degrees)
}

fn eval_poly(coeffs: &[u64], at: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc: Vec<u64> = Vec::new();
    for &c in coeffs.iter().rev() {
        acc = gf::pmod(&gf::pmul(&acc, at, p), modulus, p);
        if c != 0 {
            if acc.is_empty() {
                acc = vec![c % p];
            } else {
                acc[0] = (acc[0] + c) % p;
                gf::trim(&mut acc);
            }
        }
    }
    acc
}

fn enumerate_elements(p: u64, k: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = p.pow(k as u32);
    (0..total).map(move |raw| {
        let mut v = Vec::with_capacity(k);
        let mut x = raw;
        for _ in 0..k {
            v.push(x % p);
            x /= p;
        }
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    })
}

/// Verifies a lattice index claim, returning the oracle count.
pub fn check_index(
    sub: &ValueLattice,
    sup: &ValueLattice,
    claimed: &BigInt,
) -> Result<bool, OracleError> {
    let counted = index_by_coset_enumeration(sub, sup)?;
    Ok(BigInt::from(counted) == *claimed)
}
