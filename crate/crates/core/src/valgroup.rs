//! Finitely generated full-rank subgroups of ℚⁿ — the value groups of every
//! field in scope — in a canonical Hermite-normal-form representation.
//!
//! A lattice is stored as `(1/denominator) * rows` where `rows` is an n×n
//! integer matrix in row HNF with minimal denominator. Canonicity makes
//! equality, subgroup indices and quotient invariants pure integer
//! arithmetic on the stored data.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::zmat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("vector has length {got}, ambient dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generating set spans rank {rank} < ambient dimension {dim}")]
    RankDeficient { dim: usize, rank: usize },
    #[error("basis vector of the claimed subgroup lies outside the supergroup")]
    NotSubgroup,
    #[error("residue characteristic must be 1 or prime, got {0}")]
    BadCharacteristic(u64),
    #[error("ambient dimension must be positive")]
    ZeroDimension,
}

/// Full-rank lattice ℤⁿ-style subgroup of ℚⁿ in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValueLattice {
    dim: usize,
    denominator: BigInt,
    rows: Vec<Vec<BigInt>>,
}

impl ValueLattice {
    /// Canonical lattice generated by the given rational vectors.
    /// The generators alone must span rank n.
    pub fn canonical_basis(
        dim: usize,
        generators: &[Vec<BigRational>],
    ) -> Result<Self, LatticeError> {
        if dim == 0 {
            return Err(LatticeError::ZeroDimension);
        }
        for g in generators {
            if g.len() != dim {
                return Err(LatticeError::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
        }
        let mut denom = BigInt::one();
        for g in generators {
            for c in g {
                denom = denom.lcm(c.denom());
            }
        }
        let mut mat: zmat::Matrix = generators
            .iter()
            .map(|g| g.iter().map(|c| c.numer() * (&denom / c.denom())).collect())
            .collect();
        let rank = zmat::row_hnf(&mut mat, None);
        if rank < dim {
            return Err(LatticeError::RankDeficient { dim, rank });
        }
        mat.truncate(dim);
        Ok(Self::normalized(dim, denom, mat))
    }

    /// The standard lattice ℤⁿ.
    pub fn standard(dim: usize) -> Self {
        ValueLattice {
            dim,
            denominator: BigInt::one(),
            rows: zmat::identity(dim),
        }
    }

    fn normalized(dim: usize, denom: BigInt, mut rows: Vec<Vec<BigInt>>) -> Self {
        let mut g = denom.clone();
        for row in &rows {
            for e in row {
                g = g.gcd(e);
            }
        }
        if !g.is_one() {
            for row in rows.iter_mut() {
                for e in row.iter_mut() {
                    *e /= &g;
                }
            }
        }
        ValueLattice {
            dim,
            denominator: denom / g,
            rows,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn integer_rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Basis rows as exact rational vectors.
    pub fn basis_rows(&self) -> Vec<Vec<BigRational>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| BigRational::new(e.clone(), self.denominator.clone()))
                    .collect()
            })
            .collect()
    }

    /// Integer coordinates of `v` in this basis, when `v` is a member.
    pub fn coordinates(&self, v: &[BigRational]) -> Result<Option<Vec<BigInt>>, LatticeError> {
        if v.len() != self.dim {
            return Err(LatticeError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        // w = D*v must be integral for membership
        let mut w = Vec::with_capacity(self.dim);
        for c in v {
            let scaled = c * BigRational::from(self.denominator.clone());
            if !scaled.is_integer() {
                return Ok(None);
            }
            w.push(scaled.to_integer());
        }
        // solve k * rows = w against the upper-triangular basis, column by column
        let mut coeffs: Vec<BigInt> = Vec::with_capacity(self.dim);
        for (j, wj) in w.iter().enumerate() {
            let mut rem = wj.clone();
            for (i, k) in coeffs.iter().enumerate() {
                rem -= k * &self.rows[i][j];
            }
            let (q, r) = rem.div_rem(&self.rows[j][j]);
            if !r.is_zero() {
                return Ok(None);
            }
            coeffs.push(q);
        }
        Ok(Some(coeffs))
    }

    /// Membership test: is `v` an integer combination of the basis rows?
    pub fn contains(&self, v: &[BigRational]) -> Result<bool, LatticeError> {
        Ok(self.coordinates(v)?.is_some())
    }

    fn check_subgroup(sub: &ValueLattice, sup: &ValueLattice) -> Result<(), LatticeError> {
        if sub.dim != sup.dim {
            return Err(LatticeError::DimensionMismatch {
                expected: sup.dim,
                got: sub.dim,
            });
        }
        for row in sub.basis_rows() {
            if !sup.contains(&row)? {
                return Err(LatticeError::NotSubgroup);
            }
        }
        Ok(())
    }

    /// Group index [sup : sub] for sub ⊆ sup.
    pub fn index(sub: &ValueLattice, sup: &ValueLattice) -> Result<BigInt, LatticeError> {
        Self::check_subgroup(sub, sup)?;
        // |det sub| / |det sup| with det L = diag-product / D^n
        let num = zmat::diagonal_product(&sub.rows) * sup.denominator.pow(sub.dim as u32);
        let den = zmat::diagonal_product(&sup.rows) * sub.denominator.pow(sub.dim as u32);
        let (q, r) = num.div_rem(&den);
        debug_assert!(r.is_zero());
        let _ = r;
        Ok(q.abs())
    }

    /// Canonical lattice generated by both inputs together.
    pub fn sum(&self, other: &ValueLattice) -> Result<ValueLattice, LatticeError> {
        if self.dim != other.dim {
            return Err(LatticeError::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut gens = self.basis_rows();
        gens.extend(other.basis_rows());
        ValueLattice::canonical_basis(self.dim, &gens)
    }

    /// Invariant factors d₁ | d₂ | … of the finite quotient sup/sub,
    /// with trivial factors removed.
    pub fn quotient_invariants(
        sub: &ValueLattice,
        sup: &ValueLattice,
    ) -> Result<Vec<BigInt>, LatticeError> {
        Self::check_subgroup(sub, sup)?;
        // rows of sub expressed in sup coordinates give an integer matrix
        // whose cokernel is the quotient group
        let mut rel: zmat::Matrix = Vec::with_capacity(sub.dim);
        for row in sub.basis_rows() {
            let coords = sup.coordinates(&row)?.expect("subgroup rows lie in sup");
            rel.push(coords);
        }
        let invariants = zmat::smith_invariants(rel);
        Ok(invariants.into_iter().filter(|d| !d.is_one()).collect())
    }

    /// The unique intermediate lattice M, sub ⊆ M ⊆ sup, with M/sub the
    /// prime-to-p part of sup/sub. `p = 1` means residue characteristic zero
    /// and returns sup.
    pub fn prime_to_p_part(
        sub: &ValueLattice,
        sup: &ValueLattice,
        p: u64,
    ) -> Result<ValueLattice, LatticeError> {
        if p != 1 && !crate::residue::is_prime(p) {
            return Err(LatticeError::BadCharacteristic(p));
        }
        Self::check_subgroup(sub, sup)?;
        if p == 1 {
            return Ok(sup.clone());
        }
        let index = Self::index(sub, sup)?;
        let big_p = BigInt::from(p);
        let mut p_power = BigInt::one();
        let mut rest = index;
        while (&rest % &big_p).is_zero() {
            rest /= &big_p;
            p_power *= &big_p;
        }
        // multiplication by the p-part of the index kills exactly the p-torsion
        let mut gens = sub.basis_rows();
        let scale = BigRational::from(p_power);
        for row in sup.basis_rows() {
            gens.push(row.into_iter().map(|c| c * &scale).collect());
        }
        ValueLattice::canonical_basis(sub.dim, &gens)
    }
}

impl fmt::Display for ValueLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{} [", self.denominator)?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "]")
    }
}
