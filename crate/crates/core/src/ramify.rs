//! Absolute and relative ramification data for towers: value groups via
//! lattice indices, residual degrees via kernel-unit residue analysis, and
//! the tame/wild classification.
//!
//! Degrees are always reported as e·f. The defect status records whether
//! that equality is proof-backed: a tame tower is defectless, and a tower
//! whose e·f reaches the product of its generator orders leaves no room for
//! a defect. Everything else is flagged rather than guessed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::residue::{Constant, ResidueError};
use crate::tower::{GroupElement, RadicalGenerator, Tower, TowerError};
use crate::valgroup::{LatticeError, ValueLattice};
use crate::zmat;

#[derive(Debug, Error)]
pub enum RamifyError {
    #[error("towers are built over different base fields")]
    BaseMismatch,
    #[error("the claimed subtower has a generator the larger tower lacks")]
    NotSubtower,
    #[error("residue degrees are only defined for elements of value zero")]
    NonzeroValue,
    #[error("exponent arithmetic overflow")]
    Overflow,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error(transparent)]
    Tower(#[from] TowerError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefectStatus {
    CertifiedOne,
    AssumedOne,
    Undetermined,
}

impl fmt::Display for DefectStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DefectStatus::CertifiedOne => write!(f, "certified-1"),
            DefectStatus::AssumedOne => write!(f, "assumed-1"),
            DefectStatus::Undetermined => write!(f, "undetermined"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Unramified,
    TameRamified,
    PurelyWild,
    Mixed,
    Undetermined,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Unramified => write!(f, "unramified"),
            Classification::TameRamified => write!(f, "tame-ramified"),
            Classification::PurelyWild => write!(f, "purely-wild"),
            Classification::Mixed => write!(f, "mixed"),
            Classification::Undetermined => write!(f, "undetermined"),
        }
    }
}

/// Root datum of one residue generator: a unit u with u^order = constant,
/// contributing a residue of the recorded degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    pub constant: Constant,
    pub order: u64,
    pub degree: u64,
}

/// Residue field description of a tower: its degree f over the base residue
/// field, the generating root data, and whether any degree was ambiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSummary {
    pub f: u64,
    pub ambiguous: bool,
    pub generators: Vec<RootDatum>,
}

#[derive(Debug, Clone)]
pub struct RamificationReport {
    pub e: BigInt,
    pub f: u64,
    pub degree: BigInt,
    pub defect: DefectStatus,
    pub classification: Classification,
    pub value_group: ValueLattice,
    pub residue_ambiguous: bool,
    pub residue_generators: Vec<RootDatum>,
}

/// Value group of a tower: the lattice generated by ℤⁿ and the generator
/// values aᵢ/rᵢ.
pub fn value_group(t: &Tower) -> ValueLattice {
    let n = t.ambient_dim();
    let mut gens: Vec<Vec<BigRational>> = ValueLattice::standard(n).basis_rows();
    for g in t.generators() {
        gens.push(g.value());
    }
    ValueLattice::canonical_basis(n, &gens).expect("tower value groups contain ℤⁿ")
}

/// Basis of the integer kernel of the value map on exponent vectors over
/// (generators ++ variables); each basis vector names a unit of the
/// valuation ring.
pub fn unit_kernel(t: &Tower) -> Vec<Vec<BigInt>> {
    let n = t.ambient_dim();
    let g = t.generators().len();
    let mut denom = BigInt::one();
    for gen in t.generators() {
        denom = denom.lcm(&BigInt::from(gen.order));
    }
    let mut mat: zmat::Matrix = Vec::with_capacity(g + n);
    for gen in t.generators() {
        let row = gen
            .value()
            .into_iter()
            .map(|q| q.numer() * (&denom / q.denom()))
            .collect();
        mat.push(row);
    }
    for j in 0..n {
        let mut row = vec![BigInt::zero(); n];
        row[j] = denom.clone();
        mat.push(row);
    }
    zmat::kernel_basis(&mat)
}

fn kernel_element(t: &Tower, vector: &[BigInt]) -> Result<GroupElement, RamifyError> {
    let mut exponents = Vec::with_capacity(vector.len());
    for e in vector {
        let e: i64 = e.try_into().map_err(|_| RamifyError::Overflow)?;
        exponents.push(e);
    }
    Ok(GroupElement {
        constant: t.base().residue().const_one(),
        exponents,
    })
}

/// Root datum (C, s) of a value-zero element: s is the least positive
/// integer making every generator exponent k·s/r integral, and then
/// u^s = C is an explicit residue constant.
pub fn root_datum_of(t: &Tower, e: &GroupElement) -> Result<(Constant, u64), RamifyError> {
    let residue = t.base().residue();
    let mut s: u64 = 1;
    for (gen, &k) in t.generators().iter().zip(&e.exponents) {
        if k == 0 {
            continue;
        }
        let g = gen.order.gcd(&k.unsigned_abs());
        s = s.lcm(&(gen.order / g));
    }
    let s_i64: i64 = s.try_into().map_err(|_| RamifyError::Overflow)?;
    let mut c = residue.const_pow(&e.constant, s_i64)?;
    for (gen, &k) in t.generators().iter().zip(&e.exponents) {
        if k == 0 {
            continue;
        }
        let exp = (k as i128 * s as i128) / gen.order as i128;
        let exp: i64 = exp.try_into().map_err(|_| RamifyError::Overflow)?;
        c = residue.const_mul(&c, &residue.const_pow(&gen.constant, exp)?)?;
    }
    Ok((c, s))
}

/// Residual degree data of the tower over its base.
pub fn residue_field_of(t: &Tower) -> Result<ResidueSummary, RamifyError> {
    let residue = t.base().residue();
    let mut generators = Vec::new();
    let mut degrees = Vec::new();
    let mut ambiguous = false;
    for vector in unit_kernel(t) {
        let unit = kernel_element(t, &vector)?;
        let (c, s) = root_datum_of(t, &unit)?;
        let result = residue.root_degrees(&c, s)?;
        ambiguous |= result.ambiguous;
        degrees.push(result.min_degree);
        generators.push(RootDatum {
            constant: c,
            order: s,
            degree: result.min_degree,
        });
    }
    let f = if degrees.is_empty() {
        1
    } else {
        crate::residue::extension_degree_join(&degrees)?
    };
    Ok(ResidueSummary {
        f,
        ambiguous,
        generators,
    })
}

fn is_tame_order(order: u64, p: u64) -> bool {
    p == 1 || order.gcd(&p) == 1
}

fn order_product(gens: &[&RadicalGenerator]) -> BigInt {
    gens.iter().map(|g| BigInt::from(g.order)).product()
}

fn classify(
    e: &BigInt,
    f: u64,
    tame: bool,
    ambiguous: bool,
    order_bound: &BigInt,
    wild_order_present: bool,
    p: u64,
) -> (DefectStatus, Classification) {
    let ef = e * BigInt::from(f);
    // tame extensions are defectless; otherwise e·f reaching the product of
    // the generator orders leaves no room for a defect
    let defect = if tame || (!ambiguous && ef == *order_bound) {
        DefectStatus::CertifiedOne
    } else if ambiguous {
        DefectStatus::Undetermined
    } else {
        DefectStatus::AssumedOne
    };
    let classification = if ambiguous {
        Classification::Undetermined
    } else if tame {
        if e.is_one() {
            Classification::Unramified
        } else {
            Classification::TameRamified
        }
    } else if defect == DefectStatus::CertifiedOne {
        if f == 1 && wild_order_present && is_p_power(e, p) {
            Classification::PurelyWild
        } else {
            Classification::Mixed
        }
    } else {
        Classification::Undetermined
    };
    (defect, classification)
}

fn is_p_power(e: &BigInt, p: u64) -> bool {
    if p == 1 {
        return e.is_one();
    }
    let big_p = BigInt::from(p);
    let mut rest = e.abs();
    while (&rest % &big_p).is_zero() {
        rest /= &big_p;
    }
    rest.is_one()
}

/// Ramification data of the tower over its base field.
pub fn absolute_data(t: &Tower) -> Result<RamificationReport, RamifyError> {
    let p = t.base().residue_char();
    let vg = value_group(t);
    let e = ValueLattice::index(&ValueLattice::standard(t.ambient_dim()), &vg)?;
    let summary = residue_field_of(t)?;
    let tame = t.generators().iter().all(|g| is_tame_order(g.order, p));
    let bound = order_product(&t.generators().iter().collect::<Vec<_>>());
    let wild_present = t.generators().iter().any(|g| !is_tame_order(g.order, p));
    let (defect, classification) = classify(
        &e,
        summary.f,
        tame,
        summary.ambiguous,
        &bound,
        wild_present,
        p,
    );
    let degree = &e * BigInt::from(summary.f);
    Ok(RamificationReport {
        e,
        f: summary.f,
        degree,
        defect,
        classification,
        value_group: vg,
        residue_ambiguous: summary.ambiguous,
        residue_generators: summary.generators,
    })
}

/// Matches sub's generators inside big as a multiset of radicals and
/// returns the indices of big's generators left over.
fn added_generator_indices(big: &Tower, sub: &Tower) -> Result<Vec<usize>, RamifyError> {
    if big.base() != sub.base() {
        return Err(RamifyError::BaseMismatch);
    }
    let mut used = vec![false; big.generators().len()];
    for sg in sub.generators() {
        let slot = big
            .generators()
            .iter()
            .enumerate()
            .position(|(i, bg)| !used[i] && bg.same_radical(sg));
        match slot {
            Some(i) => used[i] = true,
            None => return Err(RamifyError::NotSubtower),
        }
    }
    Ok((0..big.generators().len()).filter(|&i| !used[i]).collect())
}

/// Ramification data of big over sub, for sub a subtower (its generators a
/// sub-multiset of big's radicals over the same base).
pub fn relative_data(big: &Tower, sub: &Tower) -> Result<RamificationReport, RamifyError> {
    let p = big.base().residue_char();
    let added = added_generator_indices(big, sub)?;
    let vg_big = value_group(big);
    let vg_sub = value_group(sub);
    let e = ValueLattice::index(&vg_sub, &vg_big)?;
    let sum_big = residue_field_of(big)?;
    let sum_sub = residue_field_of(sub)?;
    let f = crate::residue::relative_degree(sum_sub.f, sum_big.f)?;
    let ambiguous = sum_big.ambiguous || sum_sub.ambiguous;
    let added_gens: Vec<&RadicalGenerator> = added.iter().map(|&i| &big.generators()[i]).collect();
    let tame = added_gens.iter().all(|g| is_tame_order(g.order, p));
    let bound = order_product(&added_gens);
    let wild_present = added_gens.iter().any(|g| !is_tame_order(g.order, p));
    let (defect, classification) = classify(&e, f, tame, ambiguous, &bound, wild_present, p);
    let degree = &e * BigInt::from(f);
    Ok(RamificationReport {
        e,
        f,
        degree,
        defect,
        classification,
        value_group: vg_big,
        residue_ambiguous: ambiguous,
        residue_generators: sum_big.generators,
    })
}

/// Relative ramification index alone; needs no residue analysis.
pub fn relative_value_index(big: &Tower, sub: &Tower) -> Result<BigInt, RamifyError> {
    added_generator_indices(big, sub)?;
    Ok(ValueLattice::index(&value_group(sub), &value_group(big))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueDegree {
    pub degree: u64,
    pub ambiguous: bool,
}

/// Degree over sub's residue field of the residue of theta, a value-zero
/// element of big. Positive-value elements have residue zero and are
/// rejected; only units carry residue data.
pub fn residue_degree_over(
    big: &Tower,
    sub: &Tower,
    theta: &GroupElement,
) -> Result<ResidueDegree, RamifyError> {
    added_generator_indices(big, sub)?;
    let value = big.value_of(theta)?;
    if !crate::tower::vector_is_zero(&value) {
        return Err(RamifyError::NonzeroValue);
    }
    let (c, s) = root_datum_of(big, theta)?;
    let sum_sub = residue_field_of(sub)?;
    let residue = big.base().residue();
    let result = residue.root_degrees_in_extension(&c, s, sum_sub.f)?;
    Ok(ResidueDegree {
        degree: result.min_degree,
        ambiguous: result.ambiguous || sum_sub.ambiguous,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_element, parse_generator, ParsedExpr};
    use crate::residue::ResidueField;
    use crate::tower::BaseField;

    pub(crate) fn tower_over(residue: ResidueField, vars: &[&str], gens: &[&str]) -> Tower {
        let base = BaseField::new(residue, vars.iter().map(|s| s.to_string()).collect()).unwrap();
        let mut t = Tower::new(base.clone());
        for (i, text) in gens.iter().enumerate() {
            let spec = parse_generator(text, &base).unwrap();
            t = t
                .adjoin(RadicalGenerator {
                    name: format!("g{}", i + 1),
                    constant: spec.constant,
                    exponents: spec.exponents,
                    order: spec.order,
                })
                .unwrap();
        }
        t
    }

    fn element(t: &Tower, text: &str) -> GroupElement {
        match parse_element(text, t).unwrap() {
            ParsedExpr::Element(e) => e,
            other => panic!("expected element, got {other:?}"),
        }
    }

    fn q_residue() -> ResidueField {
        ResidueField::rational()
    }

    fn f(p: u64) -> ResidueField {
        ResidueField::finite(p, 1).unwrap()
    }

    #[test]
    fn value_group_of_sqrt_x() {
        let t = tower_over(q_residue(), &["X", "Y"], &["sqrt(X)"]);
        assert_eq!(value_group(&t).to_string(), "1/2 [1 0; 0 2]");
        let empty = tower_over(q_residue(), &["X", "Y"], &[]);
        assert_eq!(value_group(&empty), ValueLattice::standard(2));
        let both = tower_over(q_residue(), &["X", "Y"], &["sqrt(X)", "sqrt(Y)"]);
        assert_eq!(both.generators().len(), 2);
        assert_eq!(value_group(&both).to_string(), "1/2 [1 0; 0 1]");
    }

    // membership of v in the integer span of the kernel basis, by greedy
    // reduction against the HNF of the kernel rows
    fn kernel_contains(t: &Tower, v: &[i64]) -> bool {
        let mut mat: zmat::Matrix = unit_kernel(t);
        if mat.is_empty() {
            return false;
        }
        let dim = v.len();
        let rank = zmat::row_hnf(&mut mat, None);
        let mut rem: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for row in mat.iter().take(rank) {
            let pivot_col = (0..dim).find(|&j| !row[j].is_zero()).unwrap();
            let (q, rr) = rem[pivot_col].div_rem(&row[pivot_col]);
            if !rr.is_zero() {
                return false;
            }
            for j in 0..dim {
                let s = &row[j] * &q;
                rem[j] -= s;
            }
        }
        rem.iter().all(|e| e.is_zero())
    }

    #[test]
    fn unit_kernel_of_radical_towers() {
        let t = tower_over(f(3), &["t"], &["sqrt(t)", "root(4, 2*t)"]);
        assert!(kernel_contains(&t, &[-1, 2, 0]));

        let base_only = tower_over(f(3), &["t"], &[]);
        assert!(unit_kernel(&base_only).is_empty());

        let xy = tower_over(q_residue(), &["X", "Y"], &["sqrt(X)", "sqrt(Y)"]);
        assert!(kernel_contains(&xy, &[2, 0, -1, 0]));
        assert!(kernel_contains(&xy, &[0, 2, 0, -1]));
    }

    #[test]
    fn residue_field_of_worked_towers() {
        let t = tower_over(f(3), &["t"], &["sqrt(t)", "root(4, 2*t)"]);
        let summary = residue_field_of(&t).unwrap();
        assert_eq!(summary.f, 2);
        assert!(!summary.ambiguous);
        let two = Constant::Finite(vec![2]);
        assert!(summary
            .generators
            .iter()
            .any(|g| g.constant == two && g.order == 2 && g.degree == 2));

        let xy = tower_over(q_residue(), &["X", "Y"], &["sqrt(X)", "sqrt(Y)"]);
        assert_eq!(residue_field_of(&xy).unwrap().f, 1);

        let f7 = tower_over(f(7), &["t"], &["sqrt(t)", "sqrt(-t)"]);
        let summary = residue_field_of(&f7).unwrap();
        assert_eq!(summary.f, 2);
        assert!(!summary.ambiguous);
    }

    #[test]
    fn absolute_data_classifies() {
        let l1 = tower_over(q_residue(), &["X", "Y"], &["sqrt(X)"]);
        let r = absolute_data(&l1).unwrap();
        assert_eq!(r.e, BigInt::from(2));
        assert_eq!(r.f, 1);
        assert_eq!(r.degree, BigInt::from(2));
        assert_eq!(r.classification, Classification::TameRamified);
        assert_eq!(r.defect, DefectStatus::CertifiedOne);

        let base_only = tower_over(q_residue(), &["X"], &[]);
        let r = absolute_data(&base_only).unwrap();
        assert_eq!(r.e, BigInt::one());
        assert_eq!(r.f, 1);
        assert_eq!(r.classification, Classification::Unramified);

        let wild = tower_over(f(3), &["t"], &["root(3, t)"]);
        let r = absolute_data(&wild).unwrap();
        assert_eq!(r.e, BigInt::from(3));
        assert_eq!(r.f, 1);
        assert_eq!(r.degree, BigInt::from(3));
        assert_eq!(r.classification, Classification::PurelyWild);
        assert_eq!(r.defect, DefectStatus::CertifiedOne);
    }

    #[test]
    fn wild_tower_with_possible_redundancy_is_undetermined() {
        // X^3 - t^3 factors in characteristic 3, so e·f stays below the
        // order bound and the engine must not certify a defect of 1
        let t = tower_over(f(3), &["t"], &["root(3, t^3)"]);
        let r = absolute_data(&t).unwrap();
        assert_eq!(r.e, BigInt::one());
        assert_eq!(r.defect, DefectStatus::AssumedOne);
        assert_eq!(r.classification, Classification::Undetermined);
    }

    #[test]
    fn relative_data_on_f3_tower() {
        let big = tower_over(f(3), &["t"], &["sqrt(t)", "root(4, 2*t)"]);
        let sub = tower_over(f(3), &["t"], &["sqrt(t)"]);
        let r = relative_data(&big, &sub).unwrap();
        assert_eq!(r.e, BigInt::from(2));
        assert_eq!(r.f, 2);
        assert_eq!(r.degree, BigInt::from(4));
        assert_eq!(r.classification, Classification::TameRamified);

        let same = relative_data(&big, &big).unwrap();
        assert_eq!(same.e, BigInt::one());
        assert_eq!(same.f, 1);
        assert_eq!(same.degree, BigInt::one());
        assert_eq!(same.classification, Classification::Unramified);
    }

    #[test]
    fn relative_data_detects_ramified_counterexample() {
        let big = tower_over(q_residue(), &["X", "Y"], &["sqrt(X)", "sqrt(Y)"]);
        let sub = tower_over(q_residue(), &["X", "Y"], &["sqrt(Y)"]);
        let r = relative_data(&big, &sub).unwrap();
        assert_eq!(r.e, BigInt::from(2));
        assert_eq!(r.f, 1);
        assert_eq!(r.classification, Classification::TameRamified);
    }

    #[test]
    fn relative_data_rejects_non_subtower() {
        let big = tower_over(f(3), &["t"], &["sqrt(t)"]);
        let other = tower_over(f(3), &["t"], &["root(4, 2*t)"]);
        assert!(matches!(
            relative_data(&big, &other),
            Err(RamifyError::NotSubtower)
        ));
    }

    #[test]
    fn residue_degree_over_worked_elements() {
        let big = tower_over(f(3), &["t"], &["sqrt(t)", "root(4, 2*t)"]);
        let sub = tower_over(f(3), &["t"], &["sqrt(t)"]);
        let theta = element(&big, "g2^2/g1");
        assert_eq!(big.value_of(&theta).unwrap(), vec![BigRational::zero()]);
        let d = residue_degree_over(&big, &sub, &theta).unwrap();
        assert_eq!(d.degree, 2);
        assert!(!d.ambiguous);

        let one = element(&big, "1");
        assert_eq!(residue_degree_over(&big, &sub, &one).unwrap().degree, 1);

        let f7 = tower_over(f(7), &["t"], &["sqrt(t)", "sqrt(-t)"]);
        let base = tower_over(f(7), &["t"], &[]);
        let theta = element(&f7, "g1/g2");
        let d = residue_degree_over(&f7, &base, &theta).unwrap();
        assert_eq!(d.degree, 2);

        let nonunit = element(&big, "g1");
        assert!(matches!(
            residue_degree_over(&big, &sub, &nonunit),
            Err(RamifyError::NonzeroValue)
        ));
    }
}
