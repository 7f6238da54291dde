use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::coeff::{reduce_i128, Modulus};
use super::poly::{cyclotomic_poly, CycPoly};
use super::{Coefficient, CycError};

/// The field `Q(zeta_N)`, modelled as `Q[x] / Phi_N(x)` with `zeta` the class of `x`.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u64,
    phi: CycPoly,
    modulus: Modulus,
}

static FIELDS: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();

impl CyclotomicField {
    /// Shared field of order `n`. Fields are built once per process.
    ///
    /// # Panics
    /// Panics if `n == 0`.
    pub fn get(n: u64) -> Arc<CyclotomicField> {
        assert!(n >= 1, "root order must be positive");
        let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(n)
            .or_insert_with(|| {
                let phi = cyclotomic_poly(n);
                let modulus = Modulus::from_monic(phi.coeffs());
                Arc::new(CyclotomicField { order: n, phi, modulus })
            })
            .clone()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn cyclotomic_poly(&self) -> &CycPoly {
        &self.phi
    }

    pub(crate) fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn reduce_exponent(&self, e: i64) -> usize {
        e.rem_euclid(self.order as i64) as usize
    }
}

/// An element of `Q(zeta_N)` with coefficients in `T`, stored as the reduced
/// representative of degree below `phi(N)`.
#[derive(Clone)]
pub struct Cyclotomic<T> {
    field: Arc<CyclotomicField>,
    coeffs: Vec<T>,
}

impl<T: Coefficient> Cyclotomic<T> {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Cyclotomic { field: field.clone(), coeffs: vec![T::zero(); field.degree()] }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_scalar(field, T::one())
    }

    pub fn from_scalar(field: &Arc<CyclotomicField>, c: T) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = c;
        z
    }

    pub fn from_int(field: &Arc<CyclotomicField>, c: i64) -> Self {
        Self::from_scalar(field, T::from_i64(c))
    }

    /// Builds an element from a polynomial in `zeta` of any length.
    pub fn from_poly(field: &Arc<CyclotomicField>, poly: Vec<T>) -> Self {
        let coeffs = T::reduce(poly, field.modulus());
        Cyclotomic { field: field.clone(), coeffs }
    }

    /// Builds an element from its reduced coefficient vector.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: Vec<T>) -> Result<Self, CycError> {
        if coeffs.len() != field.degree() {
            return Err(CycError::BadLength { expected: field.degree(), got: coeffs.len() });
        }
        Ok(Cyclotomic { field: field.clone(), coeffs })
    }

    /// `zeta^e`, with `e` reduced modulo the order.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, e: i64) -> Self {
        let j = field.reduce_exponent(e);
        let deg = field.degree();
        if j < deg {
            let mut z = Self::zero(field);
            z.coeffs[j] = T::one();
            return z;
        }
        let mut counts = vec![0i64; j + 1];
        counts[j] = 1;
        Self::from_exponent_counts(field, &counts)
    }

    /// `sum_j counts[j] * zeta^j` for `j` below the order.
    ///
    /// This is the entry point for Weyl-type sums, which are accumulated as
    /// integer multiplicities of roots of unity before any field arithmetic.
    pub fn from_exponent_counts(field: &Arc<CyclotomicField>, counts: &[i64]) -> Self {
        let mut wide: Vec<i128> = counts.iter().map(|&c| i128::from(c)).collect();
        if wide.len() < field.degree() {
            wide.resize(field.degree(), 0);
        }
        reduce_i128(&mut wide, field.modulus()).expect("exponent counts overflow i128");
        let coeffs = wide[..field.degree()]
            .iter()
            .map(|&c| T::from_i64(i64::try_from(c).expect("reduced count overflows i64")))
            .collect();
        Cyclotomic { field: field.clone(), coeffs }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Zero up to the scalar's tolerance; the same as `is_zero` for rationals.
    pub fn is_negligible(&self) -> bool {
        self.coeffs.iter().all(T::is_negligible)
    }

    /// Equality up to the scalar's tolerance.
    pub fn matches(&self, other: &Self) -> bool {
        self.order() == other.order()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| (a.clone() - b.clone()).is_negligible())
    }

    /// The rational integer this element equals, if any.
    pub fn to_integer(&self) -> Option<num_bigint::BigInt> {
        if self.coeffs[1..].iter().all(T::is_negligible) {
            self.coeffs[0].to_integer()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The scalar value, if this element lies in the prime field.
    pub fn as_scalar(&self) -> Option<&T> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_order(&self, other: &Self) -> Result<(), CycError> {
        if self.field.order != other.field.order {
            Err(CycError::OrderMismatch(self.field.order, other.field.order))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Cyclotomic { field: self.field.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Cyclotomic { field: self.field.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.check_order(other)?;
        let coeffs = T::mul_mod(&self.coeffs, &other.coeffs, self.field.modulus());
        Ok(Cyclotomic { field: self.field.clone(), coeffs })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, CycError> {
        self.check_order(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, c: &T) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        Cyclotomic { field: self.field.clone(), coeffs }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Phi_N`.
    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let modulus: Vec<T> = self.field.phi.coeffs().iter().map(|&c| T::from_i64(c)).collect();
        // Invariant: s_i * self == r_i (mod Phi_N).
        let (mut r0, mut r1) = (modulus, trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (vec![T::zero()], vec![T::one()]);
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_div_rem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 || r0[0].is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let c = r0[0].clone();
        let s: Vec<T> = s0.into_iter().map(|x| x / c.clone()).collect();
        Ok(Self::from_poly(&self.field, s))
    }

    pub fn pow(&self, e: i64) -> Result<Self, CycError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.field);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// The automorphism `zeta -> zeta^t`, defined for `t` coprime to the order.
    pub fn galois(&self, t: i64) -> Result<Self, CycError> {
        let n = self.field.order as i64;
        let t = t.rem_euclid(n);
        if t.gcd(&n) != 1 {
            return Err(CycError::NotCoprime { t, order: self.field.order });
        }
        let mut poly = vec![T::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((j as i64) * t).rem_euclid(n) as usize;
            poly[e] = poly[e].clone() + c.clone();
        }
        Ok(Self::from_poly(&self.field, poly))
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conjugate(&self) -> Self {
        self.galois(self.field.order as i64 - 1).expect("N - 1 is coprime to N")
    }

    /// Value under the embedding `zeta -> exp(2 pi i / N)`, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.field.order as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, c)| {
            let c = c.to_f64();
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n;
            (re + c * theta.cos(), im + c * theta.sin())
        })
    }
}

fn trim<T: Coefficient>(mut p: Vec<T>) -> Vec<T> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        p.push(T::zero());
    }
    p
}

fn poly_mul<T: Coefficient>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    trim(out)
}

fn poly_sub<T: Coefficient>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(T::zero);
            let y = b.get(i).cloned().unwrap_or_else(T::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_div_rem<T: Coefficient>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    if a.len() < b.len() {
        return (vec![T::zero()], trim(rem));
    }
    let mut quot = vec![T::zero(); a.len() - db];
    for j in (db..a.len()).rev() {
        if rem[j].is_zero() {
            continue;
        }
        let c = rem[j].clone() / lead.clone();
        for (i, bi) in b.iter().enumerate() {
            rem[j - db + i] = rem[j - db + i].clone() - c.clone() * bi.clone();
        }
        quot[j - db] = c;
    }
    rem.truncate(db.max(1));
    (trim(quot), trim(rem))
}

impl<T: Coefficient> PartialEq for Cyclotomic<T> {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl<T: Coefficient + Eq> Eq for Cyclotomic<T> {}

impl<T: Coefficient> fmt::Debug for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.field.order, self)
    }
}

impl<T: Coefficient> fmt::Display for Cyclotomic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_exact_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            match (j, mag.as_str()) {
                (0, m) => write!(f, "{m}")?,
                (1, "1") => write!(f, "z")?,
                (1, m) => write!(f, "{m}*z")?,
                (_, "1") => write!(f, "z^{j}")?,
                (_, m) => write!(f, "{m}*z^{j}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a, T: Coefficient> $tr<&'a Cyclotomic<T>> for &'a Cyclotomic<T> {
            type Output = Cyclotomic<T>;
            fn $method(self, rhs: &'a Cyclotomic<T>) -> Cyclotomic<T> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<T: Coefficient> $tr<Cyclotomic<T>> for Cyclotomic<T> {
            type Output = Cyclotomic<T>;
            fn $method(self, rhs: Cyclotomic<T>) -> Cyclotomic<T> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, T: Coefficient> $tr<&'a Cyclotomic<T>> for Cyclotomic<T> {
            type Output = Cyclotomic<T>;
            fn $method(self, rhs: &'a Cyclotomic<T>) -> Cyclotomic<T> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl<T: Coefficient> Neg for &Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<T: Coefficient> Neg for Cyclotomic<T> {
    type Output = Cyclotomic<T>;
    fn neg(self) -> Cyclotomic<T> {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    order: u64,
    coeffs: Vec<String>,
}

impl<T: Coefficient> Serialize for Cyclotomic<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Repr { order: self.field.order, coeffs: self.coeffs.iter().map(|c| c.to_exact_string()).collect() }.serialize(s)
    }
}

impl<'de, T: Coefficient> Deserialize<'de> for Cyclotomic<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = Repr::deserialize(d)?;
        if repr.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        let field = CyclotomicField::get(repr.order);
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| T::parse_exact(s).ok_or_else(|| D::Error::custom(format!("bad coefficient {s:?}"))))
            .collect::<Result<Vec<T>, _>>()?;
        Cyclotomic::from_coeffs(&field, coeffs).map_err(D::Error::custom)
    }
}
