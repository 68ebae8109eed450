//! Real quadratic Dirichlet characters and finite groups of them.

use std::collections::BTreeSet;
use std::fmt;

use crate::arith::{factor, kronecker, squarefree_kernel};

use super::AnalyticError;

/// The principal character or the Kronecker character `(d/.)` of a
/// fundamental discriminant `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuadCharacter {
    Principal,
    Kronecker(i64),
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let sqf = |m: i64| m != 0 && squarefree_kernel(m as i128).map_or(false, |k| k == m as i128);
    match d.rem_euclid(4) {
        1 => sqf(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && sqf(m)
        }
        _ => false,
    }
}

impl QuadCharacter {
    pub fn kronecker(d: i64) -> Result<Self, AnalyticError> {
        if is_fundamental_discriminant(d) {
            Ok(QuadCharacter::Kronecker(d))
        } else {
            Err(AnalyticError::NotFundamental(d))
        }
    }

    /// Character of `Q(sqrt m)` for a nonzero integer `m`.
    pub fn of_field(m: i64) -> Result<Self, AnalyticError> {
        let k = squarefree_kernel(m as i128).map_err(|_| AnalyticError::NotFundamental(m))? as i64;
        if k == 1 {
            return Ok(QuadCharacter::Principal);
        }
        let d = if k.rem_euclid(4) == 1 { k } else { 4 * k };
        QuadCharacter::kronecker(d)
    }

    pub fn modulus(&self) -> u64 {
        match self {
            QuadCharacter::Principal => 1,
            QuadCharacter::Kronecker(d) => d.unsigned_abs(),
        }
    }

    #[inline]
    pub fn eval(&self, n: u64) -> i8 {
        match self {
            QuadCharacter::Principal => 1,
            QuadCharacter::Kronecker(d) => kronecker(*d as i128, n as i128),
        }
    }

    pub fn is_ramified(&self, p: u64) -> bool {
        match self {
            QuadCharacter::Principal => false,
            QuadCharacter::Kronecker(d) => d.unsigned_abs() % p == 0,
        }
    }

    /// The product character, agreeing with `self * other` at every prime
    /// unramified in both.
    pub fn product(&self, other: &QuadCharacter) -> QuadCharacter {
        match (self, other) {
            (QuadCharacter::Principal, c) | (c, QuadCharacter::Principal) => *c,
            (QuadCharacter::Kronecker(a), QuadCharacter::Kronecker(b)) => {
                let g = num_integer::gcd(*a, *b);
                let m = (a / g) * (b / g);
                QuadCharacter::of_field(m).expect("product of fundamental discriminants")
            }
        }
    }
}

impl fmt::Display for QuadCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadCharacter::Principal => write!(f, "1"),
            QuadCharacter::Kronecker(d) => write!(f, "chi_{d}"),
        }
    }
}

/// A finite group of quadratic characters containing the principal one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterGroup {
    members: Vec<QuadCharacter>,
}

impl CharacterGroup {
    /// Checks identity, closure and that the order is a power of two.
    pub fn new(members: Vec<QuadCharacter>) -> Result<Self, AnalyticError> {
        let set: BTreeSet<QuadCharacter> = members.iter().copied().collect();
        if set.len() != members.len() {
            return Err(AnalyticError::GroupAxiom("repeated member".to_string()));
        }
        if !set.contains(&QuadCharacter::Principal) {
            return Err(AnalyticError::GroupAxiom("principal character missing".to_string()));
        }
        for a in &set {
            for b in &set {
                let c = a.product(b);
                if !set.contains(&c) {
                    return Err(AnalyticError::GroupAxiom(format!("{a} * {b} = {c} is not a member")));
                }
            }
        }
        if !members.len().is_power_of_two() {
            return Err(AnalyticError::GroupAxiom("order is not a power of two".to_string()));
        }
        Ok(CharacterGroup {
            members: set.into_iter().collect(),
        })
    }

    /// The group generated by the characters of the given fundamental
    /// discriminants.
    pub fn generated_by(discs: &[i64]) -> Result<Self, AnalyticError> {
        let mut set: BTreeSet<QuadCharacter> = BTreeSet::new();
        set.insert(QuadCharacter::Principal);
        for &d in discs {
            let chi = QuadCharacter::kronecker(d)?;
            let current: Vec<QuadCharacter> = set.iter().copied().collect();
            for c in current {
                set.insert(c.product(&chi));
            }
        }
        CharacterGroup::new(set.into_iter().collect())
    }

    pub fn members(&self) -> &[QuadCharacter] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, chi: &QuadCharacter) -> bool {
        self.members.contains(chi)
    }

    /// Whether `p` divides the modulus of some member.
    pub fn is_ramified(&self, p: u64) -> bool {
        self.members.iter().any(|c| c.is_ramified(p))
    }

    /// `1` iff every member takes the value 1 at the unramified prime `p`.
    #[inline]
    pub fn zero_indicator(&self, p: u64) -> u8 {
        u8::from(self.members.iter().all(|c| c.eval(p) == 1))
    }

    /// Primes dividing some member's modulus, together with those of `extra`.
    pub fn ramified_primes(&self, extra: &[QuadCharacter]) -> Vec<u64> {
        let mut out = BTreeSet::new();
        for c in self.members.iter().chain(extra) {
            if c.modulus() > 1 {
                for &(p, _) in factor(c.modulus() as i128).expect("nonzero").factors() {
                    out.insert(p as u64);
                }
            }
        }
        out.into_iter().collect()
    }
}
