//! Deciding elimination of tame ramification: given a tame tower t1 and an
//! arbitrary tower t2 over the same base, is the compositum unramified over
//! t2? The check needs only the tame part of t2 and compares e₂′·d_max with
//! e₁·[L′:L₁], where d_max is the residue degree of L′ over L₁ witnessed by
//! a kernel unit. The direct verdict is recomputed independently from the
//! value groups, so fixtures and sweeps can confront the two.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::ramify::{
    absolute_data, relative_data, relative_value_index, residue_degree_over, unit_kernel,
    value_group, Classification, RamifyError,
};
use crate::tower::{GroupElement, RadicalGenerator, Tower};
use crate::valgroup::ValueLattice;

#[derive(Debug, Error)]
pub enum ElimError {
    #[error("towers are built over different base fields")]
    BaseMismatch,
    #[error("the first tower must be tame: generator {name} has order {order} sharing the residue characteristic {p}")]
    NotTame { name: String, order: u64, p: u64 },
    #[error("the second tower must be purely wild, found classification {0}")]
    NotPurelyWild(Classification),
    #[error(transparent)]
    Ramify(#[from] RamifyError),
}

fn require_same_base(t1: &Tower, t2: &Tower) -> Result<(), ElimError> {
    if t1.base() != t2.base() {
        return Err(ElimError::BaseMismatch);
    }
    Ok(())
}

fn require_tame(t: &Tower) -> Result<(), ElimError> {
    let p = t.base().residue_char();
    if p == 1 {
        return Ok(());
    }
    for g in t.generators() {
        if g.order.gcd(&p) != 1 {
            return Err(ElimError::NotTame {
                name: g.name.clone(),
                order: g.order,
                p,
            });
        }
    }
    Ok(())
}

/// Compositum: t1's generators followed by t2's, renamed where names collide.
pub fn compositum(t1: &Tower, t2: &Tower) -> Result<Tower, ElimError> {
    require_same_base(t1, t2)?;
    let mut out = t1.clone();
    for g in t2.generators() {
        let mut name = g.name.clone();
        let mut i = 2;
        while out.generator_index(&name).is_some() || out.variable_index(&name).is_some() {
            name = format!("{}_{}", g.name, i);
            i += 1;
        }
        out = out
            .adjoin(RadicalGenerator { name, ..g.clone() })
            .map_err(RamifyError::Tower)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityCheck {
    pub e1: BigInt,
    pub e2: BigInt,
    pub divides: bool,
}

/// The classical necessary condition: e1 divides e2.
pub fn necessary_divisibility(t1: &Tower, t2: &Tower) -> Result<DivisibilityCheck, ElimError> {
    require_same_base(t1, t2)?;
    let n = t1.ambient_dim();
    let std = ValueLattice::standard(n);
    let e1 = ValueLattice::index(&std, &value_group(t1)).map_err(RamifyError::Lattice)?;
    let e2 = ValueLattice::index(&std, &value_group(t2)).map_err(RamifyError::Lattice)?;
    let divides = (&e2 % &e1).is_zero();
    Ok(DivisibilityCheck { e1, e2, divides })
}

use num_traits::Zero;

/// Tame part of a tower: each generator (c·M)^(1/r) with r = p^a·r′,
/// gcd(r′, p) = 1, is replaced by its p^a-th power (c·M)^(1/r′); generators
/// that collapse to order 1 lie in the base and are dropped. For p = 1 the
/// tower is returned unchanged.
pub fn tame_part(t: &Tower) -> Tower {
    let p = t.base().residue_char();
    if p == 1 {
        return t.clone();
    }
    let mut out = Tower::new(t.base().clone());
    for g in t.generators() {
        let mut r = g.order;
        while r % p == 0 {
            r /= p;
        }
        if r == 1 {
            continue;
        }
        out = out
            .adjoin(RadicalGenerator {
                order: r,
                ..g.clone()
            })
            .expect("stripping orders preserves validity");
    }
    out
}

/// True when the syntactic tame part carries exactly the prime-to-p closure
/// of the tower's value group inside it.
pub fn tame_part_value_group_law(t: &Tower) -> bool {
    let p = t.base().residue_char();
    let n = t.ambient_dim();
    let std = ValueLattice::standard(n);
    let expected = ValueLattice::prime_to_p_part(&std, &value_group(t), p);
    match expected {
        Ok(lattice) => lattice == value_group(&tame_part(t)),
        Err(_) => false,
    }
}

/// All quantities of the elimination criterion for one (t1, t2) pair.
#[derive(Debug, Clone)]
pub struct EliminationVerdict {
    pub e1: BigInt,
    pub e2: BigInt,
    pub e2_prime: BigInt,
    pub deg_lprime_over_l1: BigInt,
    pub d_max: u64,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub condition_holds: bool,
    pub direct_unramified: bool,
    pub divisibility_e1_e2: bool,
    pub e_compositum: BigInt,
    pub lcm_e1_e2: BigInt,
    pub witness_theta: Option<GroupElement>,
    pub witness_display: Option<String>,
    pub lprime_residue_degree: u64,
    pub lprime: Tower,
}

#[derive(Debug, Clone)]
pub enum EliminationOutcome {
    Determined(Box<EliminationVerdict>),
    Undetermined {
        reason: String,
        e1: BigInt,
        e2: BigInt,
        divisibility_e1_e2: bool,
    },
}

fn witness_search(
    lprime: &Tower,
    t1: &Tower,
    d_max: u64,
) -> Result<Option<GroupElement>, ElimError> {
    if d_max == 1 {
        return Ok(Some(lprime.element_one()));
    }
    let kernel = unit_kernel(lprime);
    let k = kernel.len();
    if k == 0 {
        return Ok(None);
    }
    // exponent combinations over the kernel basis, smallest first
    const RANGE: i64 = 3;
    let mut combos: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for c in &combos {
            for e in 0..=RANGE {
                let mut c2 = c.clone();
                c2.push(e);
                next.push(c2);
            }
        }
        combos = next;
        if combos.len() > 4096 {
            break;
        }
    }
    combos.sort_by_key(|c| (c.iter().map(|&e| e.unsigned_abs()).sum::<u64>(), c.clone()));
    for combo in combos {
        if combo.iter().all(|&e| e == 0) {
            continue;
        }
        let mut exponents = vec![0i64; lprime.arity()];
        let mut overflow = false;
        for (c, vector) in combo.iter().zip(&kernel) {
            if *c == 0 {
                continue;
            }
            for (slot, e) in exponents.iter_mut().zip(vector) {
                let e: i64 = match e.try_into() {
                    Ok(v) => v,
                    Err(_) => {
                        overflow = true;
                        break;
                    }
                };
                *slot += c * e;
            }
        }
        if overflow {
            continue;
        }
        let theta = GroupElement {
            constant: lprime.base().residue().const_one(),
            exponents,
        };
        match residue_degree_over(lprime, t1, &theta) {
            Ok(d) if !d.ambiguous && d.degree == d_max => return Ok(Some(theta)),
            Ok(_) => continue,
            Err(RamifyError::NonzeroValue) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(None)
}

/// Decides whether the compositum of a tame tower t1 with t2 is unramified
/// over t2, via the tame part L₂′ and the compositum L′ = L₁·L₂′: the
/// verdict compares e₂′·d_max against e₁·[L′:L₁] and is confronted with an
/// independent value-group computation.
pub fn elimination_check(t1: &Tower, t2: &Tower) -> Result<EliminationOutcome, ElimError> {
    require_same_base(t1, t2)?;
    require_tame(t1)?;
    let div = necessary_divisibility(t1, t2)?;
    let undetermined = |reason: String, div: &DivisibilityCheck| {
        Ok(EliminationOutcome::Undetermined {
            reason,
            e1: div.e1.clone(),
            e2: div.e2.clone(),
            divisibility_e1_e2: div.divides,
        })
    };

    let l2_prime = tame_part(t2);
    if !tame_part_value_group_law(t2) {
        return undetermined(
            "tame part fails the prime-to-p value group law".into(),
            &div,
        );
    }
    let n = t1.ambient_dim();
    let std = ValueLattice::standard(n);
    let e2_prime =
        ValueLattice::index(&std, &value_group(&l2_prime)).map_err(RamifyError::Lattice)?;

    let l = compositum(t1, t2)?;
    let lprime = compositum(t1, &l2_prime)?;
    let e_compositum = ValueLattice::index(&std, &value_group(&l)).map_err(RamifyError::Lattice)?;
    let lcm_e1_e2 = div.e1.lcm(&div.e2);

    let rel = relative_data(&lprime, t1)?;
    if rel.residue_ambiguous {
        return undetermined("ambiguous residue degrees in L'/L1".into(), &div);
    }
    let d_max = rel.f;
    let deg_lprime_over_l1 = rel.degree.clone();

    let witness = witness_search(&lprime, t1, d_max)?;
    let Some(witness) = witness else {
        return undetermined(
            "no kernel-unit witness attains the maximal residue degree".into(),
            &div,
        );
    };

    let lprime_abs = absolute_data(&lprime)?;
    if lprime_abs.residue_ambiguous {
        return undetermined("ambiguous residue degrees in L'".into(), &div);
    }

    // independent route: is the compositum's value group already t2's?
    let direct_unramified = relative_value_index(&l, t2)?.is_one();

    let lhs = &e2_prime * BigInt::from(d_max);
    let rhs = &div.e1 * &deg_lprime_over_l1;
    let condition_holds = lhs == rhs;
    let witness_display = Some(lprime.element_string(&witness));
    Ok(EliminationOutcome::Determined(Box::new(
        EliminationVerdict {
            e1: div.e1,
            e2: div.e2,
            e2_prime,
            deg_lprime_over_l1,
            d_max,
            lhs,
            rhs,
            condition_holds,
            direct_unramified,
            divisibility_e1_e2: div.divides,
            e_compositum,
            lcm_e1_e2,
            witness_theta: Some(witness),
            witness_display,
            lprime_residue_degree: lprime_abs.f,
            lprime,
        },
    )))
}

/// The equal-index special case: when e₁ = e₂′, the compositum is
/// unramified over t2 exactly when L′ is unramified over L₁. Both sides are
/// pure value-group computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryOutcome {
    pub applicable: bool,
    pub e1: BigInt,
    pub e2_prime: BigInt,
    pub verdict: bool,
}

pub fn equal_index_corollary(t1: &Tower, t2: &Tower) -> Result<CorollaryOutcome, ElimError> {
    require_same_base(t1, t2)?;
    require_tame(t1)?;
    let n = t1.ambient_dim();
    let std = ValueLattice::standard(n);
    let e1 = ValueLattice::index(&std, &value_group(t1)).map_err(RamifyError::Lattice)?;
    let l2_prime = tame_part(t2);
    let e2_prime =
        ValueLattice::index(&std, &value_group(&l2_prime)).map_err(RamifyError::Lattice)?;
    let lprime = compositum(t1, &l2_prime)?;
    let verdict = relative_value_index(&lprime, t1)?.is_one();
    Ok(CorollaryOutcome {
        applicable: e1 == e2_prime,
        e1,
        e2_prime,
        verdict,
    })
}

/// Index product law for a tame tower against a purely wild one, with the
/// relative classifications of the compositum over each part.
#[derive(Debug, Clone)]
pub struct ProductCheck {
    pub e: BigInt,
    pub e1_times_e2: BigInt,
    pub equal: bool,
    pub class_over_tame: Classification,
    pub class_over_wild: Classification,
}

pub fn tame_wild_product(t_tame: &Tower, t_wild: &Tower) -> Result<ProductCheck, ElimError> {
    require_same_base(t_tame, t_wild)?;
    require_tame(t_tame)?;
    let wild_report = absolute_data(t_wild)?;
    if wild_report.classification != Classification::PurelyWild && !t_wild.generators().is_empty() {
        return Err(ElimError::NotPurelyWild(wild_report.classification));
    }
    let n = t_tame.ambient_dim();
    let std = ValueLattice::standard(n);
    let comp = compositum(t_tame, t_wild)?;
    let e = ValueLattice::index(&std, &value_group(&comp)).map_err(RamifyError::Lattice)?;
    let e1 = ValueLattice::index(&std, &value_group(t_tame)).map_err(RamifyError::Lattice)?;
    let e1_times_e2 = e1 * wild_report.e;
    let class_over_tame = relative_data(&comp, t_tame)?.classification;
    let class_over_wild = relative_data(&comp, t_wild)?.classification;
    Ok(ProductCheck {
        equal: e == e1_times_e2,
        e,
        e1_times_e2,
        class_over_tame,
        class_over_wild,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_generator;
    use crate::residue::ResidueField;
    use crate::tower::BaseField;

    fn tower_over(residue: ResidueField, vars: &[&str], gens: &[&str]) -> Tower {
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

    fn q() -> ResidueField {
        ResidueField::rational()
    }

    fn f(p: u64) -> ResidueField {
        ResidueField::finite(p, 1).unwrap()
    }

    fn determined(outcome: EliminationOutcome) -> EliminationVerdict {
        match outcome {
            EliminationOutcome::Determined(v) => *v,
            EliminationOutcome::Undetermined { reason, .. } => {
                panic!("expected determined verdict, got undetermined: {reason}")
            }
        }
    }

    #[test]
    fn compositum_concatenates_and_renames() {
        let t1 = tower_over(q(), &["X", "Y"], &["sqrt(X)"]);
        let t2 = tower_over(q(), &["X", "Y"], &["sqrt(Y)"]);
        let l = compositum(&t1, &t2).unwrap();
        assert_eq!(l.generators().len(), 2);
        assert_eq!(l.generators()[0].name, "g1");
        assert_eq!(l.generators()[1].name, "g1_2");

        let base = tower_over(q(), &["X", "Y"], &[]);
        assert_eq!(compositum(&t1, &base).unwrap(), t1);
    }

    #[test]
    fn divisibility_worked_cases() {
        let t1 = tower_over(q(), &["X", "Y"], &["sqrt(X)"]);
        let t2 = tower_over(q(), &["X", "Y"], &["sqrt(Y)"]);
        let d = necessary_divisibility(&t1, &t2).unwrap();
        assert_eq!(
            (d.e1.clone(), d.e2.clone(), d.divides),
            (BigInt::from(2), BigInt::from(2), true)
        );

        let base = tower_over(q(), &["X", "Y"], &[]);
        assert!(necessary_divisibility(&base, &t2).unwrap().divides);

        let cbrt = tower_over(q(), &["X", "Y"], &["root(3, Y)"]);
        let d = necessary_divisibility(&t1, &cbrt).unwrap();
        assert_eq!(
            (d.e1, d.e2, d.divides),
            (BigInt::from(2), BigInt::from(3), false)
        );
    }

    #[test]
    fn tame_part_strips_p_power() {
        let t = tower_over(f(3), &["t"], &["root(18, 2*t)"]);
        let stripped = tame_part(&t);
        assert_eq!(stripped.generators().len(), 1);
        assert_eq!(stripped.generators()[0].order, 2);
        assert_eq!(stripped.generators()[0].exponents, vec![1]);
        assert!(tame_part_value_group_law(&t));

        let tame = tower_over(f(3), &["t"], &["sqrt(t)", "root(4, 2*t)"]);
        assert_eq!(tame_part(&tame), tame);

        let wild = tower_over(f(3), &["t"], &["root(3, t)"]);
        assert!(tame_part(&wild).generators().is_empty());
        assert!(tame_part_value_group_law(&wild));

        let char0 = tower_over(q(), &["X"], &["sqrt(X)"]);
        assert_eq!(tame_part(&char0), char0);
    }

    #[test]
    fn elimination_check_counterexample_pair() {
        // divisibility holds yet the compositum stays ramified
        let t1 = tower_over(q(), &["X", "Y"], &["sqrt(X)"]);
        let t2 = tower_over(q(), &["X", "Y"], &["sqrt(Y)"]);
        let v = determined(elimination_check(&t1, &t2).unwrap());
        assert_eq!(v.e1, BigInt::from(2));
        assert_eq!(v.e2, BigInt::from(2));
        assert_eq!(v.e2_prime, BigInt::from(2));
        assert_eq!(v.deg_lprime_over_l1, BigInt::from(2));
        assert_eq!(v.d_max, 1);
        assert_eq!(v.lhs, BigInt::from(2));
        assert_eq!(v.rhs, BigInt::from(4));
        assert!(!v.condition_holds);
        assert!(!v.direct_unramified);
        assert!(v.divisibility_e1_e2);
    }

    #[test]
    fn elimination_check_f3_pair_is_unramified() {
        let t1 = tower_over(f(3), &["t"], &["sqrt(t)"]);
        let t2 = tower_over(f(3), &["t"], &["root(4, 2*t)"]);
        let v = determined(elimination_check(&t1, &t2).unwrap());
        assert_eq!(v.e2_prime, BigInt::from(4));
        assert_eq!(v.d_max, 2);
        assert_eq!(v.lhs, BigInt::from(8));
        assert_eq!(v.rhs, BigInt::from(8));
        assert!(v.condition_holds);
        assert!(v.direct_unramified);
        assert_eq!(v.lprime_residue_degree, 2);
        // the witness attains d_max
        let theta = v.witness_theta.clone().unwrap();
        let d = residue_degree_over(&v.lprime, &t1, &theta).unwrap();
        assert_eq!(d.degree, 2);
    }

    #[test]
    fn elimination_check_lcm_diagnostic() {
        let t1 = tower_over(q(), &["X", "Y"], &["sqrt(X)"]);
        let t2 = tower_over(q(), &["X", "Y"], &["root(3, Y)"]);
        let v = determined(elimination_check(&t1, &t2).unwrap());
        assert_eq!(v.e_compositum, BigInt::from(6));
        assert_eq!(v.lcm_e1_e2, BigInt::from(6));
        assert!(!v.condition_holds);
        assert!(!v.direct_unramified);
        assert!(!v.divisibility_e1_e2);
    }

    #[test]
    fn elimination_check_p7_pair() {
        let t1 = tower_over(f(7), &["t"], &["sqrt(t)"]);
        let t2 = tower_over(f(7), &["t"], &["sqrt(-t)"]);
        let v = determined(elimination_check(&t1, &t2).unwrap());
        assert_eq!(v.e1, BigInt::from(2));
        assert_eq!(v.e2_prime, BigInt::from(2));
        assert!(v.condition_holds);
        assert!(v.direct_unramified);
        assert_eq!(v.d_max, 2);
    }

    #[test]
    fn elimination_check_requires_tame_t1() {
        let t1 = tower_over(f(3), &["t"], &["root(3, t)"]);
        let t2 = tower_over(f(3), &["t"], &["sqrt(t)"]);
        assert!(matches!(
            elimination_check(&t1, &t2),
            Err(ElimError::NotTame { .. })
        ));
    }

    #[test]
    fn mismatched_bases_are_rejected() {
        let t1 = tower_over(q(), &["X", "Y"], &["sqrt(X)"]);
        let t2 = tower_over(f(3), &["t"], &["sqrt(t)"]);
        assert!(matches!(
            necessary_divisibility(&t1, &t2),
            Err(ElimError::BaseMismatch)
        ));
        assert!(matches!(compositum(&t1, &t2), Err(ElimError::BaseMismatch)));
    }

    #[test]
    fn corollary_agrees_with_direct_verdicts() {
        let t1 = tower_over(f(7), &["t"], &["sqrt(t)"]);
        let t2 = tower_over(f(7), &["t"], &["sqrt(-t)"]);
        let c = equal_index_corollary(&t1, &t2).unwrap();
        assert!(c.applicable);
        assert!(c.verdict);

        let t1 = tower_over(q(), &["X", "Y"], &["sqrt(X)"]);
        let t2 = tower_over(q(), &["X", "Y"], &["sqrt(Y)"]);
        let c = equal_index_corollary(&t1, &t2).unwrap();
        assert!(c.applicable);
        assert!(!c.verdict);

        let base = tower_over(q(), &["X", "Y"], &[]);
        let c = equal_index_corollary(&t1, &base).unwrap();
        assert!(!c.applicable);
    }

    #[test]
    fn product_law_for_tame_against_wild() {
        let t1 = tower_over(f(3), &["t"], &["sqrt(t)"]);
        let t2 = tower_over(f(3), &["t"], &["root(3, t)"]);
        let pc = tame_wild_product(&t1, &t2).unwrap();
        assert_eq!(pc.e, BigInt::from(6));
        assert_eq!(pc.e1_times_e2, BigInt::from(6));
        assert!(pc.equal);
        assert_eq!(pc.class_over_tame, Classification::PurelyWild);
        assert_eq!(pc.class_over_wild, Classification::TameRamified);

        let t5a = tower_over(f(5), &["t"], &["sqrt(t)"]);
        let t5b = tower_over(f(5), &["t"], &["root(5, t)"]);
        let pc = tame_wild_product(&t5a, &t5b).unwrap();
        assert_eq!(pc.e, BigInt::from(10));
        assert!(pc.equal);

        let base = tower_over(f(3), &["t"], &[]);
        let pc = tame_wild_product(&t1, &base).unwrap();
        assert_eq!(pc.e, BigInt::from(2));
        assert!(pc.equal);

        // a tame second tower violates the precondition and is reported
        let tame2 = tower_over(f(3), &["t"], &["root(4, t)"]);
        assert!(matches!(
            tame_wild_product(&t1, &tame2),
            Err(ElimError::NotPurelyWild(_))
        ));
    }
}
