//! Quantum dimensions, twists, S-matrix entries and the identities they
//! satisfy, as exact cyclotomic numbers.
//!
//! Every scalar is a power sum in `zeta`, the primitive root of unity of
//! order [`CatSpec::zeta_order`], with `v = zeta^4`. Weyl sums are collected
//! as integer multiplicities of `zeta`-powers and only then reduced, so the
//! expensive field arithmetic happens once per entry.

mod level_rank;
mod spinor;
mod table;

use std::sync::Arc;

use num_rational::BigRational;

use crate::cyclo::{Coefficient, Cyclotomic, CyclotomicField};
use crate::error::{Error, Result};
use crate::roots::{
    enumerate_simples, positive_roots, rho_doubled, weyl_group, CatSpec, SimpleSet, Weight, WeylElement, V_IN_ZETA,
};

pub use level_rank::{level_rank_check, level_rank_galois_exponent, LevelRankEntry, LevelRankReport};
pub use spinor::{Identity, IdentityCheck, SpinorKind, SpinorReport};
pub use table::{CategoryTable, KirbyColors, TableDump, TABLE_FORMAT};

/// Category context: root data plus the cached normalization `psi`.
#[derive(Clone, Debug)]
pub struct Category<T: Coefficient = BigRational> {
    spec: CatSpec,
    simples: SimpleSet,
    field: Arc<CyclotomicField>,
    weyl: Vec<WeylElement>,
    rho: Vec<i64>,
    /// Positive roots, doubled.
    roots: Vec<Vec<i64>>,
    psi: Cyclotomic<T>,
    psi_inv: Cyclotomic<T>,
    /// `1 / (v^{(rho|a)} - v^{-(rho|a)})` per positive root.
    rho_factor_inv: Vec<Cyclotomic<T>>,
}

impl<T: Coefficient> Category<T> {
    /// Builds the context; fails if the two evaluations of `psi` disagree.
    pub fn new(spec: CatSpec) -> Result<Self> {
        let simples = enumerate_simples(&spec)?;
        let weyl = weyl_group(&spec)?;
        let field = spec.field();
        let rho = rho_doubled(&spec);
        let roots: Vec<Vec<i64>> =
            positive_roots(&spec).into_iter().map(|r| r.into_iter().map(|c| 2 * c).collect()).collect();
        let mut cat = Category {
            spec,
            simples,
            psi: Cyclotomic::zero(&field),
            psi_inv: Cyclotomic::zero(&field),
            rho_factor_inv: Vec::new(),
            field,
            weyl,
            rho,
            roots,
        };
        let by_sum = cat.psi_weyl_sum();
        let by_product = cat.psi_product();
        if !by_sum.matches(&by_product) {
            return Err(Error::Internal(format!("psi: Weyl sum {by_sum} differs from root product {by_product}")));
        }
        cat.psi_inv = by_sum.inv()?;
        cat.psi = by_sum;
        cat.rho_factor_inv =
            cat.roots.iter().map(|a| cat.root_factor(&cat.rho, a).inv()).collect::<std::result::Result<_, _>>()?;
        Ok(cat)
    }

    pub fn spec(&self) -> &CatSpec {
        &self.spec
    }

    pub fn simples(&self) -> &SimpleSet {
        &self.simples
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn weyl(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn psi(&self) -> &Cyclotomic<T> {
        &self.psi
    }

    /// `zeta^e`.
    pub fn zeta(&self, e: i64) -> Cyclotomic<T> {
        Cyclotomic::zeta_pow(&self.field, e)
    }

    /// `v^e`.
    pub fn v_pow(&self, e: i64) -> Cyclotomic<T> {
        self.zeta(V_IN_ZETA * e)
    }

    /// The fourth root of unity `zeta^{N/4}`; equals `v^{n+k-1}` for the `D` family.
    pub fn imaginary_unit(&self) -> Cyclotomic<T> {
        self.zeta(self.field.order() as i64 / 4)
    }

    fn shifted(&self, signed: &[i64]) -> Vec<i64> {
        signed.iter().zip(&self.rho).map(|(a, b)| a + b).collect()
    }

    /// `sum_w sn(w) v^{2(x|w y)}` for doubled vectors `x`, `y`.
    pub fn weyl_numerator(&self, x: &[i64], y: &[i64]) -> Cyclotomic<T> {
        let order = self.field.order() as i64;
        let mut counts = vec![0i64; order as usize];
        for w in &self.weyl {
            let e = 2 * self.spec.zeta_inner(x, &w.apply(y));
            counts[e.rem_euclid(order) as usize] += i64::from(w.sn());
        }
        Cyclotomic::from_exponent_counts(&self.field, &counts)
    }

    /// `psi = sum_w sn(w) v^{2(rho|w rho)}`.
    pub fn psi_weyl_sum(&self) -> Cyclotomic<T> {
        self.weyl_numerator(&self.rho, &self.rho)
    }

    /// `psi = prod_a (v^{(rho|a)} - v^{-(rho|a)})`.
    pub fn psi_product(&self) -> Cyclotomic<T> {
        self.roots.iter().fold(Cyclotomic::one(&self.field), |acc, a| acc * self.root_factor(&self.rho, a))
    }

    /// `v^{(x|a)} - v^{-(x|a)}` for doubled `x` and doubled root `a`.
    fn root_factor(&self, x: &[i64], a: &[i64]) -> Cyclotomic<T> {
        let e = self.spec.zeta_inner(x, a);
        self.zeta(e) - self.zeta(-e)
    }

    /// Weyl-sum dimension of any signed doubled vector, without a membership
    /// check; non-dominant inputs give the formal (alternating) extension.
    pub fn qdim_of_vector(&self, signed: &[i64]) -> Cyclotomic<T> {
        self.weyl_numerator(&self.shifted(signed), &self.rho) * &self.psi_inv
    }

    /// Quantum dimension by the Weyl character sum.
    pub fn qdim_sum(&self, lambda: &Weight) -> Result<Cyclotomic<T>> {
        self.simples.require(lambda)?;
        Ok(self.qdim_of_vector(&lambda.signed()))
    }

    /// Quantum dimension as a product over positive roots.
    pub fn qdim_product(&self, lambda: &Weight) -> Result<Cyclotomic<T>> {
        self.simples.require(lambda)?;
        let x = self.shifted(&lambda.signed());
        Ok(self
            .roots
            .iter()
            .zip(&self.rho_factor_inv)
            .fold(Cyclotomic::one(&self.field), |acc, (a, inv)| acc * (self.root_factor(&x, a) * inv)))
    }

    /// `zeta`-exponent of `v^{(x+2 rho|x)}` for a signed doubled vector, reduced.
    pub fn twist_exponent_of_vector(&self, signed: &[i64]) -> i64 {
        let shifted: Vec<i64> = signed.iter().zip(&self.rho).map(|(a, r)| a + 2 * r).collect();
        self.spec.zeta_inner(&shifted, signed).rem_euclid(self.field.order() as i64)
    }

    pub fn twist_exponent(&self, lambda: &Weight) -> Result<i64> {
        self.simples.require(lambda)?;
        Ok(self.twist_exponent_of_vector(&lambda.signed()))
    }

    /// `t_lambda = v^{(lambda+2 rho|lambda)}`.
    pub fn twist(&self, lambda: &Weight) -> Result<Cyclotomic<T>> {
        Ok(self.zeta(self.twist_exponent(lambda)?))
    }

    /// `S_{mu nu} = psi^{-1} sum_w sn(w) v^{2(mu+rho|w(nu+rho))}`.
    pub fn smatrix_entry(&self, mu: &Weight, nu: &Weight) -> Result<Cyclotomic<T>> {
        self.simples.require(mu)?;
        self.simples.require(nu)?;
        Ok(self.smatrix_of_vectors(&mu.signed(), &nu.signed()))
    }

    pub(crate) fn smatrix_of_vectors(&self, mu: &[i64], nu: &[i64]) -> Cyclotomic<T> {
        self.weyl_numerator(&self.shifted(mu), &self.shifted(nu)) * &self.psi_inv
    }

    /// Whether the Weyl numerator of `x + rho` vanishes as a Laurent
    /// polynomial, before specializing `v`.
    pub fn formally_vanishes(&self, signed: &[i64]) -> bool {
        let x = self.shifted(signed);
        let mut counts = std::collections::HashMap::new();
        for w in &self.weyl {
            *counts.entry(2 * self.spec.zeta_inner(&x, &w.apply(&self.rho))).or_insert(0i64) += i64::from(w.sn());
        }
        counts.values().all(|&c| c == 0)
    }
}

/// Convenience constructor for the exact instance.
pub fn category(spec: CatSpec) -> Result<Category> {
    Category::new(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{Family, Sign};

    fn w(d: &[i64]) -> Weight {
        Weight::from_signed(d).unwrap()
    }

    fn cat(f: Family, n: usize, k: usize) -> Category {
        Category::new(CatSpec::new(f, n, k).unwrap()).unwrap()
    }

    #[test]
    fn psi_of_b11_is_v_minus_v_inverse() {
        let c = cat(Family::B, 1, 1);
        assert_eq!(*c.psi(), c.v_pow(1) - c.v_pow(-1));
    }

    #[test]
    fn psi_routes_agree_and_are_nonzero() {
        for (f, n, k) in [
            (Family::B, 1, 1),
            (Family::B, 2, 2),
            (Family::B, 3, 1),
            (Family::D, 2, 2),
            (Family::D, 3, 2),
            (Family::D, 4, 1),
        ] {
            let c = cat(f, n, k);
            assert_eq!(c.psi_weyl_sum(), c.psi_product());
            assert!(!c.psi().is_zero());
        }
    }

    #[test]
    fn empty_partition_has_unit_data() {
        for (f, n, k) in [(Family::B, 2, 1), (Family::D, 2, 2)] {
            let c = cat(f, n, k);
            let e = Weight::empty(n);
            assert!(c.qdim_sum(&e).unwrap().is_one());
            assert!(c.qdim_product(&e).unwrap().is_one());
            assert!(c.twist(&e).unwrap().is_one());
        }
    }

    #[test]
    fn dim_of_spinor_b2() {
        let c = cat(Family::B, 2, 1);
        let s = Weight::spinor(2, Sign::Plus);
        let expected = (c.v_pow(1) + c.v_pow(-1)) * (c.v_pow(3) + c.v_pow(-3));
        assert_eq!(c.qdim_sum(&s).unwrap(), expected);
    }

    #[test]
    fn dim_sum_matches_product_b12() {
        let c = cat(Family::B, 1, 2);
        let lam = w(&[4]);
        assert_eq!(c.qdim_sum(&lam).unwrap(), c.qdim_product(&lam).unwrap());
    }

    #[test]
    fn dim_v_times_dim_s() {
        for n in 1..=3 {
            let c = cat(Family::B, n, 1);
            let mut x = vec![1; n];
            x[0] = 3;
            let v = w(&{
                let mut d = vec![0; n];
                d[0] = 2;
                d
            });
            let s = Weight::spinor(n, Sign::Plus);
            let lhs = c.qdim_sum(&v).unwrap() * c.qdim_sum(&s).unwrap();
            let rhs = c.qdim_sum(&s).unwrap() + c.qdim_sum(&w(&x)).unwrap();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn spinor_and_j_twists() {
        for n in 1..=3i64 {
            for k in 1..=2 {
                let c = cat(Family::B, n as usize, k);
                let s = Weight::spinor(n as usize, Sign::Plus);
                // v^{n^2 + n/2} = zeta^{4 n^2 + 2 n}
                assert_eq!(c.twist(&s).unwrap(), c.zeta(4 * n * n + 2 * n));
                let mut j = vec![0; n as usize];
                j[0] = 4 * k as i64 + 2;
                assert_eq!(c.twist(&w(&j)).unwrap(), -c.zeta(0));
            }
        }
    }

    #[test]
    fn out_of_set_inputs_are_rejected() {
        let c = cat(Family::B, 1, 1);
        assert!(matches!(c.qdim_sum(&w(&[8])), Err(Error::NotInSet(_))));
        assert!(matches!(c.twist(&w(&[7])), Err(Error::NotInSet(_))));
    }

    #[test]
    fn smatrix_first_row_is_dims_and_symmetric() {
        let c = cat(Family::D, 3, 1);
        let items = c.simples().items().to_vec();
        let e = Weight::empty(3);
        for a in &items {
            assert_eq!(c.smatrix_entry(&e, a).unwrap(), c.qdim_sum(a).unwrap());
            for b in items.iter().take(6) {
                assert_eq!(c.smatrix_entry(a, b).unwrap(), c.smatrix_entry(b, a).unwrap());
            }
        }
    }

    #[test]
    fn float_instance_tracks_exact_dims() {
        let spec = CatSpec::b(2, 1).unwrap();
        let exact = Category::<BigRational>::new(spec).unwrap();
        let approx = Category::<f64>::new(spec).unwrap();
        for lam in exact.simples().items() {
            let (a, b) = exact.qdim_sum(lam).unwrap().to_complex();
            let (c, d) = approx.qdim_sum(lam).unwrap().to_complex();
            assert!((a - c).abs() < 1e-9 && (b - d).abs() < 1e-9);
        }
    }
}
