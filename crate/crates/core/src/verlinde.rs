//! Dimensions of the TQFT state spaces of closed surfaces: the ordinary
//! Verlinde formula and its refinements by spin structures (`B` family) and
//! by classes `h` in `H^1(Sigma_g; Z_2)` (`D` family).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catdata::CategoryTable;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::roots::Family;
use crate::CycNum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Arf {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Refinement {
    None,
    Spin(Arf),
    /// `true` for the zero class.
    Cohomology {
        zero: bool,
    },
}

/// One state-space dimension request.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerlindeQuery {
    pub genus: u32,
    pub refinement: Refinement,
}

impl VerlindeQuery {
    pub fn evaluate(&self, table: &CategoryTable) -> Result<BigInt> {
        match self.refinement {
            Refinement::None => verlinde_dim(table, self.genus),
            Refinement::Spin(arf) => spin_verlinde_dim(table, self.genus, arf),
            Refinement::Cohomology { zero } => coh_verlinde_dim(table, self.genus, zero),
        }
    }
}

/// Number of spin structures on `Sigma_g` with the given Arf invariant:
/// `2^{g-1}(2^g + 1)` even, `2^{g-1}(2^g - 1)` odd.
pub fn spin_structure_count(genus: u32, arf: Arf) -> BigInt {
    let half = BigInt::one() << (genus - 1);
    let full = BigInt::one() << genus;
    match arf {
        Arf::Even => half * (full + 1),
        Arf::Odd => half * (full - 1),
    }
}

fn check_genus(genus: u32) -> Result<()> {
    if genus == 0 {
        Err(Error::InvalidSpec("genus must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn require_family(table: &CategoryTable, family: Family) -> Result<()> {
    if table.spec().family() == family {
        Ok(())
    } else {
        Err(Error::WrongFamily(family))
    }
}

/// `(sum over Gamma \ Gamma_1, sum over Gamma_1)` of `dim^{2-2g}`, and `<Omega>^{g-1}`.
fn graded_sums(table: &CategoryTable, genus: u32) -> Result<(CycNum, CycNum, CycNum)> {
    let field = table.category().field();
    let power = 2 * i64::from(genus) - 2;
    let inverses = table.dim_inverses()?;
    let gamma1 = table.simples().gamma1();
    let mut rest = Cyclotomic::zero(field);
    let mut fixed = Cyclotomic::zero(field);
    for (i, inv) in inverses.iter().enumerate() {
        let term = inv.pow(power)?;
        if gamma1.contains(&i) {
            fixed = fixed + term;
        } else {
            rest = rest + term;
        }
    }
    let norm = table.omega_norm().pow(i64::from(genus) - 1)?;
    Ok((rest, fixed, norm))
}

fn nonnegative_integer(value: &CycNum, what: &str) -> Result<BigInt> {
    match value.to_integer() {
        Some(v) if !v.is_negative() => Ok(v),
        _ => Err(Error::NonIntegral(format!("{what} = {value}"))),
    }
}

fn four_pow(genus: u32) -> BigInt {
    BigInt::one() << (2 * genus)
}

fn scale_by(value: CycNum, numer: &BigInt, denom: &BigInt) -> CycNum {
    value.scale(&num_rational::BigRational::new(numer.clone(), denom.clone()))
}

/// `<Omega>^{g-1} sum_Gamma dim^{2-2g}`.
pub fn verlinde_dim(table: &CategoryTable, genus: u32) -> Result<BigInt> {
    check_genus(genus)?;
    let (rest, fixed, norm) = graded_sums(table, genus)?;
    nonnegative_integer(&(norm * (rest + fixed)), &format!("Verlinde dimension at genus {genus}"))
}

/// `<Omega>^{g-1}/4^g [sum_{Gamma \ Gamma_1} dim^{2-2g} +- 2^g sum_{Gamma_1} dim^{2-2g}]`,
/// the sign being `(-1)^{Arf}`.
pub fn spin_verlinde_dim(table: &CategoryTable, genus: u32, arf: Arf) -> Result<BigInt> {
    check_genus(genus)?;
    require_family(table, Family::B)?;
    let (rest, fixed, norm) = graded_sums(table, genus)?;
    let sign = match arf {
        Arf::Even => BigInt::one(),
        Arf::Odd => -BigInt::one(),
    };
    let weighted = scale_by(fixed, &(sign << genus), &BigInt::one());
    let value = scale_by(norm * (rest + weighted), &BigInt::one(), &four_pow(genus));
    nonnegative_integer(&value, &format!("spin Verlinde dimension at genus {genus}, {arf:?} Arf"))
}

/// `<Omega>^{g-1}/4^g sum_{Gamma \ Gamma_1} dim^{2-2g}` for `h != 0`; the zero
/// class adds `4^g sum_{Gamma_1} dim^{2-2g}` inside the bracket.
pub fn coh_verlinde_dim(table: &CategoryTable, genus: u32, h_zero: bool) -> Result<BigInt> {
    check_genus(genus)?;
    require_family(table, Family::D)?;
    let (rest, fixed, norm) = graded_sums(table, genus)?;
    let bracket = if h_zero { rest + scale_by(fixed, &four_pow(genus), &BigInt::one()) } else { rest };
    let value = scale_by(norm * bracket, &BigInt::one(), &four_pow(genus));
    let class = if h_zero { "h = 0" } else { "h != 0" };
    nonnegative_integer(&value, &format!("cohomological Verlinde dimension at genus {genus}, {class}"))
}

/// One refined dimension with the number of refinement classes sharing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinedTerm {
    pub refinement: Refinement,
    #[serde(serialize_with = "as_decimal")]
    pub classes: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub dimension: BigInt,
}

fn as_decimal<S: serde::Serializer>(value: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(value)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinementReport {
    pub genus: u32,
    #[serde(serialize_with = "as_decimal")]
    pub ordinary: BigInt,
    pub terms: Vec<RefinedTerm>,
    /// `sum classes * dimension == ordinary`.
    pub passed: bool,
    /// For `B`: whether the even dimension is at least the odd one.
    pub even_dominates: Option<bool>,
}

/// Checks that the refined dimensions, weighted by the number of spin
/// structures or cohomology classes, add up to the ordinary dimension.
pub fn refinement_sum_check(table: &CategoryTable, genus: u32) -> Result<RefinementReport> {
    let ordinary = verlinde_dim(table, genus)?;
    let terms = match table.spec().family() {
        Family::B => [Arf::Even, Arf::Odd]
            .into_iter()
            .map(|arf| {
                Ok(RefinedTerm {
                    refinement: Refinement::Spin(arf),
                    classes: spin_structure_count(genus, arf),
                    dimension: spin_verlinde_dim(table, genus, arf)?,
                })
            })
            .collect::<Result<Vec<_>>>()?,
        Family::D => vec![
            RefinedTerm {
                refinement: Refinement::Cohomology { zero: true },
                classes: BigInt::one(),
                dimension: coh_verlinde_dim(table, genus, true)?,
            },
            RefinedTerm {
                refinement: Refinement::Cohomology { zero: false },
                classes: four_pow(genus) - 1,
                dimension: coh_verlinde_dim(table, genus, false)?,
            },
        ],
    };
    let total = terms.iter().fold(BigInt::zero(), |acc, t| acc + &t.classes * &t.dimension);
    let even_dominates = match table.spec().family() {
        Family::B => Some(terms[0].dimension >= terms[1].dimension),
        Family::D => None,
    };
    Ok(RefinementReport { genus, passed: total == ordinary, ordinary, terms, even_dominates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::CatSpec;

    fn table(spec: Result<CatSpec>) -> CategoryTable {
        CategoryTable::build(spec.unwrap()).unwrap()
    }

    #[test]
    fn genus_one_counts_simples() {
        for spec in [CatSpec::b(1, 1), CatSpec::b(2, 1), CatSpec::d(2, 2), CatSpec::d(3, 1)] {
            let t = table(spec);
            assert_eq!(verlinde_dim(&t, 1).unwrap(), BigInt::from(t.len()));
        }
    }

    #[test]
    fn b11_genus_one_spin_dimensions() {
        let t = table(CatSpec::b(1, 1));
        assert_eq!(spin_verlinde_dim(&t, 1, Arf::Even).unwrap(), BigInt::from(2));
        assert_eq!(spin_verlinde_dim(&t, 1, Arf::Odd).unwrap(), BigInt::from(1));
        let r = refinement_sum_check(&t, 1).unwrap();
        assert!(r.passed);
        assert_eq!(r.terms[0].classes, BigInt::from(3));
        assert_eq!(r.terms[1].classes, BigInt::from(1));
    }

    #[test]
    fn d22_genus_one_cohomological_dimensions() {
        let t = table(CatSpec::d(2, 2));
        assert_eq!(t.simples().gamma1().len(), 1);
        assert_eq!(coh_verlinde_dim(&t, 1, false).unwrap(), BigInt::from(6));
        assert_eq!(coh_verlinde_dim(&t, 1, true).unwrap(), BigInt::from(7));
    }

    #[test]
    fn refinements_sum_to_ordinary() {
        for spec in [CatSpec::b(1, 1), CatSpec::b(1, 2), CatSpec::b(2, 1), CatSpec::d(2, 1), CatSpec::d(2, 2)] {
            let t = table(spec);
            for g in 1..=3 {
                let r = refinement_sum_check(&t, g).unwrap();
                assert!(r.passed, "{} g={g}", t.spec());
                assert_ne!(r.even_dominates, Some(false));
            }
        }
    }

    #[test]
    fn family_and_genus_guards() {
        let b = table(CatSpec::b(1, 1));
        assert_eq!(coh_verlinde_dim(&b, 1, true), Err(Error::WrongFamily(Family::D)));
        assert!(matches!(verlinde_dim(&b, 0), Err(Error::InvalidSpec(_))));
        let d = table(CatSpec::d(2, 1));
        assert_eq!(spin_verlinde_dim(&d, 1, Arf::Even), Err(Error::WrongFamily(Family::B)));
    }

    #[test]
    fn spin_structure_counts() {
        for g in 1..=5u32 {
            let total = spin_structure_count(g, Arf::Even) + spin_structure_count(g, Arf::Odd);
            assert_eq!(total, BigInt::one() << (2 * g));
        }
        assert_eq!(spin_structure_count(2, Arf::Even), BigInt::from(10));
    }
}
