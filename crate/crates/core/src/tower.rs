//! Base valued fields (henselized rational function fields with the min-lex
//! monomial valuation) and radical extension towers over them.
//!
//! A tower never constructs field elements beyond multiplicative monomials
//! in its radical generators and base variables; sums exist only over the
//! base field, as polynomials. That keeps every valuation exact.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::residue::{Constant, ResidueError, ResidueField};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TowerError {
    #[error("generator name {0:?} is already in use")]
    DuplicateName(String),
    #[error("variable names must be distinct identifiers")]
    DuplicateVariable,
    #[error("radical order must be positive")]
    ZeroOrder,
    #[error("radical constant must be nonzero")]
    ZeroConstant,
    #[error("characteristic-zero residue fields only admit radical constant 1")]
    CharZeroConstant,
    #[error("monomial exponent vector has length {got}, base has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },
    #[error("element exponent vector has length {got}, tower expects {expected}")]
    ElementArity { expected: usize, got: usize },
    #[error(transparent)]
    Residue(#[from] ResidueError),
}

/// Henselization of k(X_1,...,X_n) under the min-lex monomial valuation:
/// the value group is ℤⁿ ordered lexicographically and the valuation is
/// trivial on the residue field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseField {
    residue: ResidueField,
    variables: Vec<String>,
}

impl BaseField {
    pub fn new(residue: ResidueField, variables: Vec<String>) -> Result<Self, TowerError> {
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(TowerError::DuplicateVariable);
            }
        }
        Ok(BaseField { residue, variables })
    }

    pub fn residue(&self) -> &ResidueField {
        &self.residue
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn ambient_dim(&self) -> usize {
        self.variables.len()
    }

    pub fn residue_char(&self) -> u64 {
        self.residue.residue_char()
    }
}

/// A radical generator (c·M)^(1/r): a root of order r of a residue constant
/// times a monomial in the base variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalGenerator {
    pub name: String,
    pub constant: Constant,
    pub exponents: Vec<i64>,
    pub order: u64,
}

impl RadicalGenerator {
    /// Exact value: (1/r) times the monomial exponent vector.
    pub fn value(&self) -> Vec<BigRational> {
        self.exponents
            .iter()
            .map(|&a| BigRational::new(BigInt::from(a), BigInt::from(self.order)))
            .collect()
    }

    /// Generators agree as radicals when constant, monomial and order match;
    /// names are labels only.
    pub fn same_radical(&self, other: &RadicalGenerator) -> bool {
        self.constant == other.constant
            && self.exponents == other.exponents
            && self.order == other.order
    }
}

/// A base field together with an ordered list of radical generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    base: BaseField,
    generators: Vec<RadicalGenerator>,
}

impl Tower {
    pub fn new(base: BaseField) -> Self {
        Tower {
            base,
            generators: Vec::new(),
        }
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn generators(&self) -> &[RadicalGenerator] {
        &self.generators
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.ambient_dim()
    }

    /// Width of element exponent vectors: generators then variables.
    pub fn arity(&self) -> usize {
        self.generators.len() + self.base.ambient_dim()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.base.variables.iter().position(|v| v == name)
    }

    /// Returns the extended tower; r = 1 radicals are legal no-ops.
    pub fn adjoin(&self, g: RadicalGenerator) -> Result<Tower, TowerError> {
        if g.order == 0 {
            return Err(TowerError::ZeroOrder);
        }
        if g.exponents.len() != self.base.ambient_dim() {
            return Err(TowerError::ArityMismatch {
                expected: self.base.ambient_dim(),
                got: g.exponents.len(),
            });
        }
        if self.generator_index(&g.name).is_some() || self.variable_index(&g.name).is_some() {
            return Err(TowerError::DuplicateName(g.name));
        }
        if self.base.residue.const_is_zero(&g.constant) {
            return Err(TowerError::ZeroConstant);
        }
        match (&self.base.residue, &g.constant) {
            (ResidueField::Rational, c) if !self.base.residue.const_is_one(c) => {
                return Err(TowerError::CharZeroConstant)
            }
            (ResidueField::Rational, Constant::Finite(_))
            | (ResidueField::Finite(_), Constant::Rational(_)) => {
                return Err(TowerError::Residue(ResidueError::ConstantKindMismatch))
            }
            _ => {}
        }
        let mut generators = self.generators.clone();
        generators.push(g);
        Ok(Tower {
            base: self.base.clone(),
            generators,
        })
    }

    /// Exact value of a multiplicative element, as a rational vector.
    pub fn value_of(&self, e: &GroupElement) -> Result<Vec<BigRational>, TowerError> {
        if e.exponents.len() != self.arity() {
            return Err(TowerError::ElementArity {
                expected: self.arity(),
                got: e.exponents.len(),
            });
        }
        let n = self.base.ambient_dim();
        let g = self.generators.len();
        let mut value = vec![BigRational::zero(); n];
        for (i, gen) in self.generators.iter().enumerate() {
            let k = e.exponents[i];
            if k == 0 {
                continue;
            }
            let kf = BigRational::from(BigInt::from(k));
            for (slot, c) in value.iter_mut().zip(gen.value()) {
                *slot += c * &kf;
            }
        }
        for (slot, &b) in value.iter_mut().zip(&e.exponents[g..]) {
            if b != 0 {
                *slot += BigRational::from(BigInt::from(b));
            }
        }
        Ok(value)
    }

    /// Multiplies two elements of this tower.
    pub fn element_mul(
        &self,
        a: &GroupElement,
        b: &GroupElement,
    ) -> Result<GroupElement, TowerError> {
        if a.exponents.len() != self.arity() || b.exponents.len() != self.arity() {
            return Err(TowerError::ElementArity {
                expected: self.arity(),
                got: a.exponents.len().max(b.exponents.len()),
            });
        }
        let constant = self.base.residue.const_mul(&a.constant, &b.constant)?;
        let exponents = a
            .exponents
            .iter()
            .zip(&b.exponents)
            .map(|(x, y)| x + y)
            .collect();
        Ok(GroupElement {
            constant,
            exponents,
        })
    }

    /// Raises an element to a signed integer power.
    pub fn element_pow(&self, a: &GroupElement, e: i64) -> Result<GroupElement, TowerError> {
        let constant = self.base.residue.const_pow(&a.constant, e)?;
        let exponents = a.exponents.iter().map(|x| x * e).collect();
        Ok(GroupElement {
            constant,
            exponents,
        })
    }

    pub fn element_one(&self) -> GroupElement {
        GroupElement {
            constant: self.base.residue.const_one(),
            exponents: vec![0; self.arity()],
        }
    }

    /// Element for a single generator or variable by position.
    pub fn element_unit(&self, index: usize) -> GroupElement {
        let mut e = self.element_one();
        e.exponents[index] = 1;
        e
    }

    /// Renders an element in the grammar the parser accepts.
    pub fn element_string(&self, e: &GroupElement) -> String {
        let residue = &self.base.residue;
        let mut num = Vec::new();
        let mut den = Vec::new();
        let names: Vec<&str> = self
            .generators
            .iter()
            .map(|g| g.name.as_str())
            .chain(self.base.variables.iter().map(|v| v.as_str()))
            .collect();
        for (name, &k) in names.iter().zip(&e.exponents) {
            match k.cmp(&0) {
                Ordering::Greater if k == 1 => num.push(name.to_string()),
                Ordering::Greater => num.push(format!("{name}^{k}")),
                Ordering::Less if k == -1 => den.push(name.to_string()),
                Ordering::Less => den.push(format!("{name}^{}", -k)),
                Ordering::Equal => {}
            }
        }
        let constant = residue.const_string(&e.constant);
        let constant_part = if residue.const_is_one(&e.constant) && !num.is_empty() {
            None
        } else if constant.contains('+') || constant.contains('-') && !constant.starts_with('-') {
            Some(format!("({constant})"))
        } else {
            Some(constant)
        };
        let mut out = String::new();
        if let Some(c) = constant_part {
            out.push_str(&c);
            if !num.is_empty() {
                out.push('*');
            }
        }
        out.push_str(&num.join("*"));
        if out.is_empty() {
            out.push('1');
        }
        for d in den {
            out.push('/');
            out.push_str(&d);
        }
        out
    }
}

/// A multiplicative element: a residue constant times integer powers of the
/// tower generators and base variables, exponents in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub constant: Constant,
    pub exponents: Vec<i64>,
}

/// A polynomial over the base field in collected form: only nonzero
/// coefficients are stored, so the support is exact.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BasePolynomial {
    terms: BTreeMap<Vec<u64>, Constant>,
}

impl BasePolynomial {
    pub fn zero() -> Self {
        BasePolynomial::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u64>, &Constant)> {
        self.terms.iter()
    }

    pub fn add_term(
        &mut self,
        residue: &ResidueField,
        exponents: Vec<u64>,
        coeff: Constant,
    ) -> Result<(), ResidueError> {
        match self.terms.remove(&exponents) {
            None => {
                if !residue.const_is_zero(&coeff) {
                    self.terms.insert(exponents, coeff);
                }
            }
            Some(existing) => {
                let sum = residue.const_add(&existing, &coeff)?;
                if !residue.const_is_zero(&sum) {
                    self.terms.insert(exponents, sum);
                }
            }
        }
        Ok(())
    }

    pub fn mul(
        &self,
        residue: &ResidueField,
        other: &BasePolynomial,
    ) -> Result<BasePolynomial, ResidueError> {
        let mut out = BasePolynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let coeff = residue.const_mul(ca, cb)?;
                out.add_term(residue, exps, coeff)?;
            }
        }
        Ok(out)
    }

    pub fn neg(&self, residue: &ResidueField) -> Result<BasePolynomial, ResidueError> {
        let mut out = BasePolynomial::zero();
        for (e, c) in &self.terms {
            out.add_term(residue, e.clone(), residue.const_neg(c)?)?;
        }
        Ok(out)
    }

    pub fn add(
        &self,
        residue: &ResidueField,
        other: &BasePolynomial,
    ) -> Result<BasePolynomial, ResidueError> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(residue, e.clone(), c.clone())?;
        }
        Ok(out)
    }
}

/// Value of a polynomial: the valuation takes ν(0) = ∞.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyValue {
    Finite(Vec<BigRational>),
    Infinity,
}

impl fmt::Display for PolyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyValue::Infinity => write!(f, "infinity"),
            PolyValue::Finite(v) => {
                write!(f, "(")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn lex_min<'a>(a: &'a [u64], b: &'a [u64]) -> &'a [u64] {
    match a.cmp(b) {
        Ordering::Greater => b,
        _ => a,
    }
}

/// Min-lex valuation of a base polynomial: the lexicographic minimum over
/// the support.
pub fn value_of_polynomial(base: &BaseField, f: &BasePolynomial) -> Result<PolyValue, TowerError> {
    let n = base.ambient_dim();
    let mut min: Option<&[u64]> = None;
    for (exps, _) in f.terms() {
        if exps.len() != n {
            return Err(TowerError::ArityMismatch {
                expected: n,
                got: exps.len(),
            });
        }
        min = Some(match min {
            None => exps,
            Some(cur) => lex_min(cur, exps),
        });
    }
    Ok(match min {
        None => PolyValue::Infinity,
        Some(exps) => PolyValue::Finite(
            exps.iter()
                .map(|&a| BigRational::from(BigInt::from(a)))
                .collect(),
        ),
    })
}

/// ν(f/g) = ν(f) − ν(g); the numerator may be zero, the denominator may not.
pub fn value_of_rational_function(
    base: &BaseField,
    f: &BasePolynomial,
    g: &BasePolynomial,
) -> Result<PolyValue, TowerError> {
    if g.is_zero() {
        return Err(TowerError::ZeroConstant);
    }
    let vf = value_of_polynomial(base, f)?;
    let vg = value_of_polynomial(base, g)?;
    Ok(match (vf, vg) {
        (PolyValue::Infinity, _) => PolyValue::Infinity,
        (PolyValue::Finite(a), PolyValue::Finite(b)) => {
            PolyValue::Finite(a.into_iter().zip(b).map(|(x, y)| x - y).collect())
        }
        (_, PolyValue::Infinity) => unreachable!("nonzero denominator has finite value"),
    })
}

/// Formats a rational vector as the reports print values.
pub fn vector_string(v: &[BigRational]) -> String {
    let mut out = String::from("(");
    for (i, c) in v.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&c.to_string());
    }
    out.push(')');
    out
}

pub fn vector_is_zero(v: &[BigRational]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// True when the value vector is non-negative in the lex sense, i.e. the
/// element lies in the valuation ring.
pub fn lex_non_negative(v: &[BigRational]) -> bool {
    for c in v {
        if c.is_positive() {
            return true;
        }
        if c.is_negative() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq_base(vars: &[&str]) -> BaseField {
        BaseField::new(
            ResidueField::rational(),
            vars.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn sqrt_gen(base: &BaseField, name: &str, var: usize) -> RadicalGenerator {
        let mut exps = vec![0i64; base.ambient_dim()];
        exps[var] = 1;
        RadicalGenerator {
            name: name.to_string(),
            constant: base.residue().const_one(),
            exponents: exps,
            order: 2,
        }
    }

    #[test]
    fn adjoin_builds_towers_and_validates() {
        let base = qq_base(&["X", "Y"]);
        let t = Tower::new(base.clone());
        let t1 = t.adjoin(sqrt_gen(&base, "g1", 0)).unwrap();
        assert_eq!(t1.generators().len(), 1);
        let err = t1.adjoin(sqrt_gen(&base, "g1", 1)).unwrap_err();
        assert_eq!(err, TowerError::DuplicateName("g1".into()));

        let trivial = RadicalGenerator {
            name: "g2".into(),
            constant: base.residue().const_one(),
            exponents: vec![1, 0],
            order: 1,
        };
        let t2 = t1.adjoin(trivial).unwrap();
        assert_eq!(t2.generators().len(), 2);

        let bad = RadicalGenerator {
            name: "g3".into(),
            constant: base.residue().const_from_int(2),
            exponents: vec![1, 0],
            order: 2,
        };
        assert_eq!(t1.adjoin(bad).unwrap_err(), TowerError::CharZeroConstant);
    }

    #[test]
    fn value_of_sqrt_x() {
        let base = qq_base(&["X", "Y"]);
        let t = Tower::new(base.clone())
            .adjoin(sqrt_gen(&base, "g1", 0))
            .unwrap();
        let v = t.value_of(&t.element_unit(0)).unwrap();
        assert_eq!(v, vec![rat(1, 2), rat(0, 1)]);
        let c = t.element_one();
        assert_eq!(t.value_of(&c).unwrap(), vec![rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn value_is_multiplicative() {
        let base = qq_base(&["X", "Y"]);
        let t = Tower::new(base.clone())
            .adjoin(sqrt_gen(&base, "g1", 0))
            .unwrap()
            .adjoin(sqrt_gen(&base, "g2", 1))
            .unwrap();
        let a = GroupElement {
            constant: t.base().residue().const_one(),
            exponents: vec![3, -1, 2, 0],
        };
        let b = GroupElement {
            constant: t.base().residue().const_one(),
            exponents: vec![-1, 4, 0, -2],
        };
        let prod = t.element_mul(&a, &b).unwrap();
        let lhs = t.value_of(&prod).unwrap();
        let va = t.value_of(&a).unwrap();
        let vb = t.value_of(&b).unwrap();
        let rhs: Vec<BigRational> = va.into_iter().zip(vb).map(|(x, y)| x + y).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn polynomial_value_is_lex_min() {
        let base = qq_base(&["X", "Y"]);
        let residue = base.residue().clone();
        let mut f = BasePolynomial::zero();
        f.add_term(&residue, vec![1, 0], residue.const_one())
            .unwrap();
        f.add_term(&residue, vec![0, 1], residue.const_one())
            .unwrap();
        let v = value_of_polynomial(&base, &f).unwrap();
        assert_eq!(v, PolyValue::Finite(vec![rat(0, 1), rat(1, 1)]));

        let mut g = BasePolynomial::zero();
        g.add_term(&residue, vec![2, 1], residue.const_one())
            .unwrap();
        g.add_term(&residue, vec![3, 0], residue.const_one())
            .unwrap();
        let mut y = BasePolynomial::zero();
        y.add_term(&residue, vec![0, 1], residue.const_one())
            .unwrap();
        let q = value_of_rational_function(&base, &g, &y).unwrap();
        assert_eq!(q, PolyValue::Finite(vec![rat(2, 1), rat(0, 1)]));
    }

    #[test]
    fn zero_polynomial_has_infinite_value() {
        let base = qq_base(&["X"]);
        let v = value_of_polynomial(&base, &BasePolynomial::zero()).unwrap();
        assert_eq!(v, PolyValue::Infinity);
        assert_eq!(v.to_string(), "infinity");
    }

    #[test]
    fn collected_form_drops_cancelled_terms() {
        let base = qq_base(&["X"]);
        let residue = base.residue().clone();
        let mut f = BasePolynomial::zero();
        f.add_term(&residue, vec![1], residue.const_one()).unwrap();
        f.add_term(&residue, vec![1], residue.const_from_int(-1))
            .unwrap();
        assert!(f.is_zero());
    }
}
