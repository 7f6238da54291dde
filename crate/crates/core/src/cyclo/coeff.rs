use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

/// Sparse view of a monic integer modulus `x^degree + sum(c_i x^i)`.
///
/// Only the nonzero lower coefficients are kept; reduction replaces `x^degree`
/// by `-sum(c_i x^i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulus {
    degree: usize,
    lower: Vec<(usize, i64)>,
}

impl Modulus {
    /// `coeffs` is ascending and must end in a leading 1.
    pub fn from_monic(coeffs: &[i64]) -> Self {
        let degree = coeffs.len() - 1;
        assert_eq!(coeffs[degree], 1, "modulus must be monic");
        let lower = coeffs[..degree].iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, *c)).collect();
        Modulus { degree, lower }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn lower_terms(&self) -> &[(usize, i64)] {
        &self.lower
    }
}

/// Scalars usable as coefficients of a cyclotomic number.
///
/// The two hooks `reduce` and `mul_mod` carry default implementations that
/// work coefficient by coefficient; exact rationals override `mul_mod` with a
/// common-denominator integer kernel, which is where nearly all the time of a
/// category computation goes.
pub trait Coefficient: Num + Clone + Neg<Output = Self> + Debug + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Lossless textual form, e.g. `"-3/4"` for rationals.
    fn to_exact_string(&self) -> String;

    fn parse_exact(s: &str) -> Option<Self>;

    /// Whether equality of this scalar type is exact.
    fn is_exact() -> bool;

    /// Zero test used by identity checks; approximate for inexact scalars.
    fn is_negligible(&self) -> bool;

    /// The integer this scalar represents, if any.
    fn to_integer(&self) -> Option<BigInt>;

    /// Reduces a polynomial of any length modulo `m`, returning exactly
    /// `m.degree()` coefficients.
    fn reduce(mut poly: Vec<Self>, m: &Modulus) -> Vec<Self> {
        let deg = m.degree();
        for j in (deg..poly.len()).rev() {
            let c = std::mem::replace(&mut poly[j], Self::zero());
            if c.is_zero() {
                continue;
            }
            for &(i, p) in m.lower_terms() {
                let slot = &mut poly[j - deg + i];
                *slot = slot.clone() - c.clone() * Self::from_i64(p);
            }
        }
        poly.truncate(deg);
        poly.resize(deg, Self::zero());
        poly
    }

    /// Product of two reduced representatives, reduced modulo `m`.
    fn mul_mod(a: &[Self], b: &[Self], m: &Modulus) -> Vec<Self> {
        if a.is_empty() || b.is_empty() {
            return vec![Self::zero(); m.degree()];
        }
        let mut out = vec![Self::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        Self::reduce(out, m)
    }
}

const FLOAT_TOLERANCE: f64 = 1e-7;

impl Coefficient for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_exact_string(&self) -> String {
        format!("{self:?}")
    }

    fn parse_exact(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }

    fn is_exact() -> bool {
        false
    }

    fn is_negligible(&self) -> bool {
        self.abs() < FLOAT_TOLERANCE
    }

    fn to_integer(&self) -> Option<BigInt> {
        let r = self.round();
        ((self - r).abs() < FLOAT_TOLERANCE).then(|| BigInt::from(r as i64))
    }
}

impl Coefficient for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_exact_string(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn parse_exact(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().ok()?;
                let q: BigInt = q.trim().parse().ok()?;
                if q.is_zero() {
                    None
                } else {
                    Some(BigRational::new(p, q))
                }
            }
            None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        }
    }

    fn is_exact() -> bool {
        true
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer().clone())
    }

    fn mul_mod(a: &[Self], b: &[Self], m: &Modulus) -> Vec<Self> {
        let (an, ad) = integer_parts(a);
        let (bn, bd) = integer_parts(b);
        let den = ad * bd;
        let nums = match small_mul_mod(&an, &bn, m) {
            Some(v) => v.into_iter().map(BigInt::from).collect(),
            None => big_mul_mod(&an, &bn, m),
        };
        nums.into_iter()
            .map(|c| if c.is_zero() { BigRational::zero() } else { BigRational::new(c, den.clone()) })
            .collect()
    }
}

/// Splits a rational vector into integer numerators over one common denominator.
fn integer_parts(v: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let den = v.iter().filter(|c| !c.is_zero()).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = v
        .iter()
        .map(|c| {
            if c.is_zero() {
                BigInt::zero()
            } else if c.denom() == &den {
                c.numer().clone()
            } else {
                c.numer() * (&den / c.denom())
            }
        })
        .collect();
    (nums, den)
}

/// Convolution and reduction in checked `i128`; `None` on any overflow.
fn small_mul_mod(a: &[BigInt], b: &[BigInt], m: &Modulus) -> Option<Vec<i128>> {
    let a: Vec<i128> = a.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<_>>()?;
    let b: Vec<i128> = b.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<_>>()?;
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y == 0 {
                continue;
            }
            out[i + j] = out[i + j].checked_add(x.checked_mul(y)?)?;
        }
    }
    reduce_i128(&mut out, m)?;
    out.truncate(m.degree());
    out.resize(m.degree(), 0);
    Some(out)
}

pub(crate) fn reduce_i128(poly: &mut [i128], m: &Modulus) -> Option<()> {
    let deg = m.degree();
    for j in (deg..poly.len()).rev() {
        let c = std::mem::take(&mut poly[j]);
        if c == 0 {
            continue;
        }
        for &(i, p) in m.lower_terms() {
            let slot = &mut poly[j - deg + i];
            *slot = slot.checked_sub(c.checked_mul(i128::from(p))?)?;
        }
    }
    Some(())
}

fn big_mul_mod(a: &[BigInt], b: &[BigInt], m: &Modulus) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += x * y;
        }
    }
    let deg = m.degree();
    for j in (deg..out.len()).rev() {
        let c = std::mem::take(&mut out[j]);
        if c.is_zero() {
            continue;
        }
        for &(i, p) in m.lower_terms() {
            out[j - deg + i] -= &c * p;
        }
    }
    out.truncate(deg);
    out.resize(deg, BigInt::zero());
    out
}
