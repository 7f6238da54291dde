use serde::Serialize;

use super::Category;
use crate::cyclo::Coefficient;
use crate::error::{Error, Result};
use crate::roots::{transpose, CatSpec, Family, Sign, Weight};

/// `t` with `zeta -> zeta^t` sending `v` to `-v^{-1}` in the `D` field:
/// `t = 2m - 1` for `N = 16 m`.
pub fn level_rank_galois_exponent(spec: &CatSpec) -> Result<i64> {
    if spec.family() != Family::D {
        return Err(Error::WrongFamily(Family::D));
    }
    Ok(2 * (spec.n() + spec.k() - 1) as i64 - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRankEntry {
    pub weight: Weight,
    pub dual: Weight,
    /// `lambda_1 = k` or `lambda` has `n` rows.
    pub boundary: bool,
    pub dim_match: bool,
    pub twist_match: bool,
    /// `zeta`-exponent of `galois(t_lambda) / t'_{dual}`.
    pub twist_ratio_exponent: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRankReport {
    pub spec: CatSpec,
    pub dual_spec: CatSpec,
    pub galois_exponent: i64,
    pub entries: Vec<LevelRankEntry>,
}

impl LevelRankReport {
    pub fn interior_ok(&self) -> bool {
        self.entries.iter().filter(|e| !e.boundary).all(|e| e.dim_match && e.twist_match)
    }

    pub fn boundary_mismatches(&self) -> Vec<&LevelRankEntry> {
        self.entries.iter().filter(|e| e.boundary && !(e.dim_match && e.twist_match)).collect()
    }
}

/// Compares dims and twists of `D^k_n` under `v -> -v^{-1}` with those of the
/// transposed partitions in `D^n_k`, over grade-0 weights with `lambda_1 <= k`
/// and at most `n` rows.
///
/// Interior entries are expected to match; boundary entries (first row `k` or
/// `n` rows, where objects split by sign) are only reported. Each split weight
/// is paired with every sign choice of its transpose.
pub fn level_rank_check<T: Coefficient>(spec: &CatSpec) -> Result<LevelRankReport> {
    let t = level_rank_galois_exponent(spec)?;
    let dual_spec = spec.level_rank_dual()?;
    let cat = Category::<T>::new(*spec)?;
    let dual = Category::<T>::new(dual_spec)?;
    let (n, k) = (spec.n(), spec.k() as i64);
    let order = cat.field().order() as i64;

    let mut entries = Vec::new();
    for lambda in cat.simples().items() {
        if lambda.grade() != 0 || lambda.d()[0] > 2 * k {
            continue;
        }
        let parts = transpose(lambda)?;
        let base = Weight::from_parts(&parts, dual_spec.n())?;
        let duals = if base.rows() == dual_spec.n() {
            vec![base.clone(), Weight::new(base.d().to_vec(), Sign::Minus)?]
        } else {
            vec![base]
        };
        let boundary = lambda.d()[0] == 2 * k || lambda.rows() == n;
        let image_dim = cat.qdim_sum(lambda)?.galois(t)?;
        let image_twist = (cat.twist_exponent(lambda)? * t).rem_euclid(order);
        for d in duals {
            let ratio = (image_twist - dual.twist_exponent(&d)?).rem_euclid(order);
            entries.push(LevelRankEntry {
                weight: lambda.clone(),
                dual: d.clone(),
                boundary,
                dim_match: image_dim.matches(&dual.qdim_sum(&d)?),
                twist_match: ratio == 0,
                twist_ratio_exponent: ratio,
            });
        }
    }
    Ok(LevelRankReport { spec: *spec, dual_spec, galois_exponent: t, entries })
}
