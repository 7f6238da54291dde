use std::collections::BTreeMap;
use std::fmt;

use super::{Coefficient, Cyclotomic};

/// An integer polynomial, coefficients in ascending degree order.
///
/// Used for the cyclotomic polynomials `Phi_N`, which are monic with small
/// integer coefficients for every order this crate touches.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycPoly {
    coeffs: Vec<i64>,
}

impl CycPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        CycPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[0] = -1;
        c[n] = 1;
        CycPoly { coeffs: c }
    }

    /// Division by a monic divisor; `None` unless the division is exact.
    pub fn div_exact(&self, divisor: &CycPoly) -> Option<CycPoly> {
        let (q, r) = self.div_rem_monic(divisor)?;
        if r.iter().all(|&c| c == 0) {
            Some(CycPoly::new(q))
        } else {
            None
        }
    }

    fn div_rem_monic(&self, divisor: &CycPoly) -> Option<(Vec<i64>, Vec<i64>)> {
        if !divisor.is_monic() {
            return None;
        }
        let dd = divisor.degree();
        if self.degree() < dd {
            return Some((vec![0], self.coeffs.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i64; self.degree() - dd + 1];
        for j in (dd..rem.len()).rev() {
            let c = rem[j];
            if c == 0 {
                continue;
            }
            quot[j - dd] = c;
            for (i, &p) in divisor.coeffs.iter().enumerate() {
                rem[j - dd + i] = rem[j - dd + i].checked_sub(c.checked_mul(p)?)?;
            }
        }
        rem.truncate(dd.max(1));
        Some((quot, rem))
    }

    /// Horner evaluation at a cyclotomic number.
    pub fn eval<T: Coefficient>(&self, x: &Cyclotomic<T>) -> Cyclotomic<T> {
        let field = x.field().clone();
        let mut acc = Cyclotomic::zero(&field);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Cyclotomic::from_int(&field, c);
        }
        acc
    }
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{a}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{a}x^{i}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn divisors(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n).take_while(|d| d * d <= n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut upper: Vec<usize> = out.iter().map(|d| n / d).filter(|&e| e * e != n).collect();
    upper.reverse();
    out.extend(upper);
    out
}

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// The `n`-th cyclotomic polynomial, by exact division of `x^n - 1` by the
/// cyclotomic polynomials of all proper divisors.
///
/// # Panics
/// Panics if `n == 0` or an intermediate coefficient overflows `i64`.
pub fn cyclotomic_poly(n: u64) -> CycPoly {
    assert!(n >= 1, "cyclotomic polynomial order must be positive");
    let n = n as usize;
    let divs = divisors(n);
    let mut known: BTreeMap<usize, CycPoly> = BTreeMap::new();
    for &d in &divs {
        let mut p = CycPoly::x_pow_minus_one(d);
        for &e in divisors(d).iter().filter(|&&e| e < d) {
            p = p.div_exact(&known[&e]).expect("cyclotomic division is exact");
        }
        known.insert(d, p);
    }
    known.remove(&n).unwrap()
}
