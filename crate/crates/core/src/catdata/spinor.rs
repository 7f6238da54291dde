use serde::{Deserialize, Serialize};

use super::Category;
use crate::cyclo::{Coefficient, Cyclotomic};
use crate::error::{Error, Result};
use crate::roots::{Family, Sign, Weight};

/// The spinor objects: `S` for `B`, `S_+` and `S_-` for `D`, and their sum
/// `S_+ + S_-` whose weights fill the whole sign hypercube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpinorKind {
    S,
    SPlus,
    SMinus,
    Both,
}

impl SpinorKind {
    pub fn for_family(family: Family) -> &'static [SpinorKind] {
        match family {
            Family::B => &[SpinorKind::S],
            Family::D => &[SpinorKind::SPlus, SpinorKind::SMinus, SpinorKind::Both],
        }
    }

    /// Simple summands of the spinor object.
    pub fn components(self, n: usize) -> Vec<Weight> {
        match self {
            SpinorKind::S | SpinorKind::SPlus => vec![Weight::spinor(n, Sign::Plus)],
            SpinorKind::SMinus => vec![Weight::spinor(n, Sign::Minus)],
            SpinorKind::Both => vec![Weight::spinor(n, Sign::Plus), Weight::spinor(n, Sign::Minus)],
        }
    }

    fn family(self) -> Family {
        match self {
            SpinorKind::S => Family::B,
            _ => Family::D,
        }
    }

    /// Doubled weights of the spinor module: all `(+-1, ..., +-1)`, with an
    /// even (`S_+`) or odd (`S_-`) number of minus signs for `D`.
    pub fn weights(self, n: usize) -> Vec<Vec<i64>> {
        (0u32..1 << n)
            .filter(|mask| match self {
                SpinorKind::S | SpinorKind::Both => true,
                SpinorKind::SPlus => mask.count_ones() % 2 == 0,
                SpinorKind::SMinus => mask.count_ones() % 2 == 1,
            })
            .map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Identity {
    Multiplicativity,
    Twist,
}

/// Outcome of one exact identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: Identity,
    pub spinor: SpinorKind,
    pub passed: bool,
    /// Informational checks are reported but do not fail the report.
    pub required: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinorReport {
    pub weight: Weight,
    pub checks: Vec<IdentityCheck>,
}

impl SpinorReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.required)
    }
}

fn require_grade(lambda: &Weight, grade: u8) -> Result<()> {
    if lambda.grade() == grade {
        Ok(())
    } else {
        Err(Error::WrongGrade { weight: lambda.to_string(), expected: grade })
    }
}

/// Parity of `b_1 + ... + b_n` where `lambda_i = (2 b_i + 1)/2` on signed coordinates.
fn half_shift_parity(b: &Weight) -> i64 {
    b.signed().iter().map(|&d| (d - 1).div_euclid(2)).sum::<i64>().rem_euclid(2)
}

impl<T: Coefficient> Category<T> {
    /// The object `A = (k, ..., k)`, or `A_+-` for `D`.
    pub fn rectangle(&self, sign: Sign) -> Result<Weight> {
        if self.spec.family() == Family::B && sign == Sign::Minus {
            return Err(Error::WrongFamily(Family::D));
        }
        Weight::new(vec![2 * self.spec.k() as i64; self.spec.n()], sign)
    }

    /// `S_{bA} / dim b` for a spinor `b`, checked against its closed form
    /// `(-1)^{sum b_i}`, times `i^n` for `A_+` and `-i^n` for `A_-` in the `D` family.
    ///
    /// The `A_-` value equals `(-1)^{sum b_i} (-i)^n` only for odd `n`; for even
    /// `n` the two differ by a sign.
    pub fn spinor_encircle_sign(&self, b: &Weight, a_sign: Sign) -> Result<Cyclotomic<T>> {
        require_grade(b, 1)?;
        let a = self.rectangle(a_sign)?;
        let value = self.smatrix_entry(b, &a)? * self.qdim_sum(b)?.inv()?;

        let mut expected = Cyclotomic::from_int(&self.field, 1 - 2 * half_shift_parity(b));
        if self.spec.family() == Family::D {
            expected = expected * self.imaginary_unit().pow(self.spec.n() as i64)?;
            if a_sign == Sign::Minus {
                expected = -expected;
            }
        }
        if !value.matches(&expected) {
            return Err(Error::Internal(format!("encircling {b} by the rectangle gives {value}, expected {expected}")));
        }
        Ok(value)
    }

    /// Eigenvalue (0 or 1) of the projector `P_sign` on the spinor `b`.
    pub fn projector_action(&self, b: &Weight, sign: Sign) -> Result<u8> {
        let mut a = self.spinor_encircle_sign(b, Sign::Plus)?;
        if self.spec.family() == Family::D {
            a = a * (-self.imaginary_unit()).pow(self.spec.n() as i64)?;
        }
        let signed = match sign {
            Sign::Plus => a,
            Sign::Minus => -a,
        };
        let doubled = Cyclotomic::one(&self.field) + signed;
        match doubled.to_integer().and_then(|v| i64::try_from(v).ok()) {
            Some(0) => Ok(0),
            Some(2) => Ok(1),
            _ => Err(Error::Internal(format!("projector eigenvalue on {b} is {doubled}/2"))),
        }
    }

    /// Simple summands of `lambda (x) spinor`, in canonical order.
    ///
    /// Non-dominant candidates are checked to have a formally vanishing Weyl
    /// numerator, and dominant candidates outside the simple set to have
    /// quantum dimension zero.
    pub fn tensor_with_spinor(&self, lambda: &Weight, kind: SpinorKind) -> Result<Vec<Weight>> {
        require_grade(lambda, 0)?;
        self.simples.require(lambda)?;
        if kind.family() != self.spec.family() {
            return Err(Error::WrongFamily(kind.family()));
        }
        let base = lambda.signed();
        let mut out = Vec::new();
        for s in kind.weights(self.spec.n()) {
            let x: Vec<i64> = base.iter().zip(&s).map(|(a, b)| a + b).collect();
            if !self.is_dominant(&x) {
                if !self.formally_vanishes(&x) {
                    return Err(Error::Internal(format!("non-dominant summand {x:?} of {lambda} does not cancel")));
                }
                continue;
            }
            let w = Weight::from_signed(&x)?;
            if self.simples.contains(&w) {
                out.push(w);
            } else if !self.qdim_of_vector(&x).is_negligible() {
                return Err(Error::Internal(format!(
                    "summand {w} of {lambda} lies outside the simple set with nonzero dimension"
                )));
            }
        }
        out.sort();
        Ok(out)
    }

    fn is_dominant(&self, x: &[i64]) -> bool {
        let n = x.len();
        match self.spec.family() {
            Family::B => x.windows(2).all(|p| p[0] >= p[1]) && x[n - 1] >= 0,
            Family::D => x[..n - 1].windows(2).all(|p| p[0] >= p[1]) && x[n - 2] >= x[n - 1].abs(),
        }
    }

    /// Checks dimension multiplicativity `dim S dim lambda = sum_s dim(lambda + s)`
    /// and the twist identity
    /// `sum_s (t_S^-1 t_lambda^-1 t_{lambda+s} - t_S t_lambda t_{lambda+s}^-1) dim(lambda + s) = 0`
    /// for every spinor object of the family.
    ///
    /// For `D` the twist identity is required only for `S_+ + S_-`: it reduces
    /// to reality of `S_{lambda S}`, which fails for a single chirality when
    /// `n` is odd and `lambda` is not self-dual. Those checks are informational.
    pub fn verify_spinor_identities(&self, lambda: &Weight) -> Result<SpinorReport> {
        require_grade(lambda, 0)?;
        self.simples.require(lambda)?;
        let n = self.spec.n();
        let base = lambda.signed();
        let dim_lambda = self.qdim_of_vector(&base);
        let t_lambda = self.twist_exponent_of_vector(&base);
        let mut checks = Vec::new();
        for &kind in SpinorKind::for_family(self.spec.family()) {
            let components = kind.components(n);
            let mut dim_s = Cyclotomic::zero(&self.field);
            let t_s = self.twist_exponent(&components[0])?;
            for c in &components {
                if self.twist_exponent(c)? != t_s {
                    return Err(Error::Internal(format!("spinor components of {kind:?} have different twists")));
                }
                dim_s = dim_s + self.qdim_sum(c)?;
            }
            let mut dim_total = Cyclotomic::zero(&self.field);
            let mut twist_total = Cyclotomic::zero(&self.field);
            for s in kind.weights(n) {
                let x: Vec<i64> = base.iter().zip(&s).map(|(a, b)| a + b).collect();
                let dim_x = self.qdim_of_vector(&x);
                let e = self.twist_exponent_of_vector(&x) - t_s - t_lambda;
                twist_total = twist_total + (self.zeta(e) - self.zeta(-e)) * &dim_x;
                dim_total = dim_total + dim_x;
            }
            checks.push(IdentityCheck {
                identity: Identity::Multiplicativity,
                spinor: kind,
                passed: (dim_s * &dim_lambda).matches(&dim_total),
                required: true,
            });
            checks.push(IdentityCheck {
                identity: Identity::Twist,
                spinor: kind,
                passed: twist_total.is_negligible(),
                required: matches!(kind, SpinorKind::S | SpinorKind::Both),
            });
        }
        Ok(SpinorReport { weight: lambda.clone(), checks })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::CatSpec;

    fn w(d: &[i64]) -> Weight {
        Weight::from_signed(d).unwrap()
    }

    fn cat(spec: crate::Result<CatSpec>) -> Category {
        Category::new(spec.unwrap()).unwrap()
    }

    #[test]
    fn encircle_signs_b() {
        let c = cat(CatSpec::b(2, 1));
        assert!(c.spinor_encircle_sign(&Weight::spinor(2, Sign::Plus), Sign::Plus).unwrap().is_one());
        let c = cat(CatSpec::b(1, 1));
        assert_eq!(c.spinor_encircle_sign(&w(&[3]), Sign::Plus).unwrap(), -Cyclotomic::one(c.field()));
        assert!(matches!(c.spinor_encircle_sign(&w(&[2]), Sign::Plus), Err(Error::WrongGrade { .. })));
        assert!(matches!(c.spinor_encircle_sign(&w(&[1]), Sign::Minus), Err(Error::WrongFamily(_))));
    }

    #[test]
    fn encircle_sign_d2_spinor_plus() {
        let c = cat(CatSpec::d(2, 2));
        let v = c.spinor_encircle_sign(&Weight::spinor(2, Sign::Plus), Sign::Plus).unwrap();
        assert_eq!(v, -Cyclotomic::one(c.field()));
    }

    #[test]
    fn encircle_signs_hold_on_every_spinor() {
        for spec in [CatSpec::b(1, 2), CatSpec::b(2, 2), CatSpec::d(2, 2), CatSpec::d(3, 2), CatSpec::d(3, 1)] {
            let c = cat(spec);
            for b in c.simples().items().iter().filter(|b| b.grade() == 1) {
                c.spinor_encircle_sign(b, Sign::Plus).unwrap();
                if c.spec().family() == Family::D {
                    c.spinor_encircle_sign(b, Sign::Minus).unwrap();
                }
            }
        }
    }

    #[test]
    fn projector_eigenvalues() {
        let c = cat(CatSpec::b(1, 1));
        assert_eq!(c.projector_action(&w(&[1]), Sign::Plus).unwrap(), 1);
        assert_eq!(c.projector_action(&w(&[3]), Sign::Plus).unwrap(), 0);
        assert_eq!(c.projector_action(&w(&[3]), Sign::Minus).unwrap(), 1);
        let d = cat(CatSpec::d(3, 2));
        for b in d.simples().items().iter().filter(|b| b.grade() == 1) {
            let p = d.projector_action(b, Sign::Plus).unwrap();
            let m = d.projector_action(b, Sign::Minus).unwrap();
            assert_eq!(p + m, 1);
            assert_eq!(p == 1, half_shift_parity(b) == 0, "{b}");
        }
    }

    #[test]
    fn tensor_examples() {
        let c = cat(CatSpec::b(3, 2));
        assert_eq!(
            c.tensor_with_spinor(&Weight::empty(3), SpinorKind::S).unwrap(),
            vec![Weight::spinor(3, Sign::Plus)]
        );
        assert_eq!(c.tensor_with_spinor(&w(&[2, 0, 0]), SpinorKind::S).unwrap(), vec![w(&[3, 1, 1]), w(&[1, 1, 1])]);
        let d = cat(CatSpec::d(3, 2));
        assert_eq!(
            d.tensor_with_spinor(&w(&[2, 0, 0]), SpinorKind::SPlus).unwrap(),
            vec![w(&[3, 1, 1]), w(&[1, 1, -1])]
        );
        assert!(matches!(d.tensor_with_spinor(&w(&[2, 0, 0]), SpinorKind::S), Err(Error::WrongFamily(Family::B))));
        assert!(matches!(d.tensor_with_spinor(&w(&[1, 1, 1]), SpinorKind::SPlus), Err(Error::WrongGrade { .. })));
    }

    #[test]
    fn tensor_at_the_boundary_drops_zero_dimensional_summands() {
        let c = cat(CatSpec::b(1, 1));
        assert_eq!(c.tensor_with_spinor(&w(&[6]), SpinorKind::S).unwrap(), vec![w(&[5])]);
        assert!(c.qdim_of_vector(&[7]).is_zero());
    }

    #[test]
    fn spinor_identities_at_empty_partition() {
        for spec in [CatSpec::b(2, 1), CatSpec::d(2, 2), CatSpec::d(3, 1)] {
            let c = cat(spec);
            let r = c.verify_spinor_identities(&Weight::empty(c.spec().n())).unwrap();
            assert!(r.all_passed(), "{r:?}");
        }
    }

    #[test]
    fn single_chirality_twist_identity_fails_off_self_dual_weights() {
        let c = cat(CatSpec::d(3, 2));
        let r = c.verify_spinor_identities(&w(&[6, 2, 2])).unwrap();
        assert!(r.all_passed());
        let single = r.checks.iter().filter(|c| c.identity == Identity::Twist && c.spinor == SpinorKind::SPlus);
        assert!(single.clone().count() == 1 && single.clone().all(|c| !c.passed));
        let r = c.verify_spinor_identities(&w(&[4, 2, 0])).unwrap();
        assert!(r.checks.iter().all(|c| c.passed));
    }

    #[test]
    fn spinor_weight_sets() {
        assert_eq!(SpinorKind::S.weights(3).len(), 8);
        assert_eq!(SpinorKind::SPlus.weights(3).len(), 4);
        assert_eq!(SpinorKind::Both.weights(3).len(), 8);
        assert!(SpinorKind::SMinus.weights(2).iter().all(|s| s.iter().filter(|&&x| x < 0).count() == 1));
    }
}
