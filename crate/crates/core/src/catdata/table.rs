use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Category;
use crate::cyclo::{Coefficient, Cyclotomic};
use crate::error::{Error, Result};
use crate::roots::{j_tensor, CatSpec, SimpleSet, Weight};

/// Version of the serialized table layout; part of every cache key.
pub const TABLE_FORMAT: u32 = 1;

/// All modular data of one category, indexed by position in the simple set.
#[derive(Debug)]
pub struct CategoryTable<T: Coefficient = BigRational> {
    category: Category<T>,
    dims: Vec<Cyclotomic<T>>,
    twist_exponents: Vec<i64>,
    twists: Vec<Cyclotomic<T>>,
    smatrix: Vec<Vec<Cyclotomic<T>>>,
    omega_norm: Cyclotomic<T>,
    u_plus: Cyclotomic<T>,
    u_minus: Cyclotomic<T>,
    dim_inverses: OnceLock<Vec<Cyclotomic<T>>>,
    conj_smatrix: OnceLock<Vec<Vec<Cyclotomic<T>>>>,
    fusion_weights: OnceLock<Vec<Cyclotomic<T>>>,
}

/// The Kirby color split by grade, with its unknot evaluations.
#[derive(Clone, Debug, PartialEq)]
pub struct KirbyColors<T: Coefficient = BigRational> {
    /// Coefficient of each simple in `Omega_0`: its dimension if grade 0, else zero.
    pub omega0: Vec<Cyclotomic<T>>,
    pub omega1: Vec<Cyclotomic<T>>,
    /// `<Omega> = sum dim^2`.
    pub omega_norm: Cyclotomic<T>,
    /// `F(U_+-) = sum dim^2 t^{+-1}`.
    pub u_plus: Cyclotomic<T>,
    pub u_minus: Cyclotomic<T>,
}

/// Serialized form of a [`CategoryTable`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct TableDump<T: Coefficient = BigRational> {
    pub format: u32,
    pub spec: CatSpec,
    pub simples: Vec<Weight>,
    pub gamma1: Vec<usize>,
    pub psi: Cyclotomic<T>,
    pub dims: Vec<Cyclotomic<T>>,
    pub twist_exponents: Vec<i64>,
    pub twists: Vec<Cyclotomic<T>>,
    pub smatrix: Vec<Vec<Cyclotomic<T>>>,
    pub omega_norm: Cyclotomic<T>,
    pub u_plus: Cyclotomic<T>,
    pub u_minus: Cyclotomic<T>,
}

impl<T: Coefficient> CategoryTable<T> {
    /// Computes the table; S-matrix entries are evaluated in parallel.
    pub fn build(spec: CatSpec) -> Result<Self> {
        let category = Category::<T>::new(spec)?;
        let items = category.simples().items();
        let m = items.len();
        let signed: Vec<Vec<i64>> = items.iter().map(Weight::signed).collect();

        let dims: Vec<Cyclotomic<T>> = signed.par_iter().map(|x| category.qdim_of_vector(x)).collect();
        let twist_exponents: Vec<i64> = signed.iter().map(|x| category.twist_exponent_of_vector(x)).collect();
        let twists = twist_exponents.iter().map(|&e| category.zeta(e)).collect();

        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
        let upper: Vec<Cyclotomic<T>> =
            pairs.par_iter().map(|&(i, j)| category.smatrix_of_vectors(&signed[i], &signed[j])).collect();
        let mut smatrix = vec![vec![Cyclotomic::zero(category.field()); m]; m];
        for (&(i, j), s) in pairs.iter().zip(upper) {
            if i != j {
                smatrix[j][i] = s.clone();
            }
            smatrix[i][j] = s;
        }

        Self::assemble(category, dims, twist_exponents, twists, smatrix)
    }

    fn assemble(
        category: Category<T>,
        dims: Vec<Cyclotomic<T>>,
        twist_exponents: Vec<i64>,
        twists: Vec<Cyclotomic<T>>,
        smatrix: Vec<Vec<Cyclotomic<T>>>,
    ) -> Result<Self> {
        let empty = category.simples().empty_index();
        if !dims[empty].is_one() || !twists[empty].is_one() {
            return Err(Error::Internal("empty partition must have unit dimension and twist".into()));
        }
        for (i, d) in dims.iter().enumerate() {
            if !smatrix[empty][i].matches(d) {
                return Err(Error::Internal(format!(
                    "S-matrix row of the unit differs from dim at {}",
                    category.simples().get(i)
                )));
            }
        }
        let field = category.field().clone();
        let mut omega_norm = Cyclotomic::zero(&field);
        let mut u_plus = Cyclotomic::zero(&field);
        let mut u_minus = Cyclotomic::zero(&field);
        for (d, &e) in dims.iter().zip(&twist_exponents) {
            let sq = d * d;
            u_plus = u_plus + &sq * &category.zeta(e);
            u_minus = u_minus + &sq * &category.zeta(-e);
            omega_norm = omega_norm + sq;
        }
        if omega_norm.is_negligible() {
            return Err(Error::Internal("the Kirby color evaluates to zero".into()));
        }
        Ok(CategoryTable {
            category,
            dims,
            twist_exponents,
            twists,
            smatrix,
            omega_norm,
            u_plus,
            u_minus,
            dim_inverses: OnceLock::new(),
            conj_smatrix: OnceLock::new(),
            fusion_weights: OnceLock::new(),
        })
    }

    pub fn category(&self) -> &Category<T> {
        &self.category
    }

    pub fn spec(&self) -> &CatSpec {
        self.category.spec()
    }

    pub fn simples(&self) -> &SimpleSet {
        self.category.simples()
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn index(&self, w: &Weight) -> Result<usize> {
        self.simples().require(w)
    }

    pub fn psi(&self) -> &Cyclotomic<T> {
        self.category.psi()
    }

    pub fn dims(&self) -> &[Cyclotomic<T>] {
        &self.dims
    }

    pub fn twists(&self) -> &[Cyclotomic<T>] {
        &self.twists
    }

    /// Twist exponents in units of `zeta`.
    pub fn twist_exponents(&self) -> &[i64] {
        &self.twist_exponents
    }

    pub fn smatrix(&self) -> &[Vec<Cyclotomic<T>>] {
        &self.smatrix
    }

    pub fn s(&self, i: usize, j: usize) -> &Cyclotomic<T> {
        &self.smatrix[i][j]
    }

    pub fn omega_norm(&self) -> &Cyclotomic<T> {
        &self.omega_norm
    }

    pub fn u_plus(&self) -> &Cyclotomic<T> {
        &self.u_plus
    }

    pub fn u_minus(&self) -> &Cyclotomic<T> {
        &self.u_minus
    }

    /// `t^power` for the simple at position `i`.
    pub fn twist_pow(&self, i: usize, power: i64) -> Cyclotomic<T> {
        self.category.zeta(self.twist_exponents[i] * power)
    }

    pub fn dim_inverses(&self) -> Result<&[Cyclotomic<T>]> {
        if let Some(v) = self.dim_inverses.get() {
            return Ok(v);
        }
        let inv = self.dims.par_iter().map(|d| d.inv()).collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(self.dim_inverses.get_or_init(|| inv))
    }

    fn conj_smatrix(&self) -> &[Vec<Cyclotomic<T>>] {
        self.conj_smatrix.get_or_init(|| {
            self.smatrix.par_iter().map(|row| row.iter().map(Cyclotomic::conjugate).collect()).collect()
        })
    }

    /// `1 / (dim x <Omega>)` per simple `x`.
    fn fusion_weights(&self) -> Result<&[Cyclotomic<T>]> {
        if let Some(v) = self.fusion_weights.get() {
            return Ok(v);
        }
        let norm_inv = self.omega_norm.inv()?;
        let weights = self.dim_inverses()?.iter().map(|d| d * &norm_inv).collect();
        Ok(self.fusion_weights.get_or_init(|| weights))
    }

    pub fn kirby_colors(&self) -> KirbyColors<T> {
        let zero = Cyclotomic::zero(self.category.field());
        let graded = |g: u8| {
            self.simples()
                .items()
                .iter()
                .zip(&self.dims)
                .map(|(w, d)| if w.grade() == g { d.clone() } else { zero.clone() })
                .collect()
        };
        KirbyColors {
            omega0: graded(0),
            omega1: graded(1),
            omega_norm: self.omega_norm.clone(),
            u_plus: self.u_plus.clone(),
            u_minus: self.u_minus.clone(),
        }
    }

    /// Whether `S_{i mu} = dim i dim mu` for every `mu` of the given grade.
    fn centralizes_grade(&self, i: usize, grade: u8) -> bool {
        self.simples()
            .items()
            .iter()
            .enumerate()
            .filter(|(_, w)| w.grade() == grade)
            .all(|(j, _)| self.smatrix[i][j].matches(&(&self.dims[i] * &self.dims[j])))
    }

    /// Simples that braid trivially with everything; `[empty]` iff modular.
    pub fn transparent_objects(&self) -> Vec<Weight> {
        (0..self.len())
            .into_par_iter()
            .filter(|&i| self.centralizes_grade(i, 0) && self.centralizes_grade(i, 1))
            .map(|i| self.simples().get(i).clone())
            .collect()
    }

    pub fn is_modular(&self) -> bool {
        self.transparent_objects() == vec![Weight::empty(self.spec().n())]
    }

    /// Transparency of `lambda` against the grade-0 and the grade-1 simples separately.
    pub fn transparency_by_grade(&self, lambda: &Weight) -> Result<[bool; 2]> {
        let i = self.index(lambda)?;
        Ok([self.centralizes_grade(i, 0), self.centralizes_grade(i, 1)])
    }

    /// The invertible object `J = J (x) empty`.
    pub fn invertible_object(&self) -> Result<Weight> {
        j_tensor(self.simples(), &Weight::empty(self.spec().n()))
    }

    /// Monodromy scalar `t_{J (x) lambda} / (t_J t_lambda)`.
    pub fn j_monodromy(&self, lambda: &Weight) -> Result<Cyclotomic<T>> {
        let j = self.index(&self.invertible_object()?)?;
        let l = self.index(lambda)?;
        let jl = self.index(&j_tensor(self.simples(), lambda)?)?;
        let e = self.twist_exponents[jl] - self.twist_exponents[j] - self.twist_exponents[l];
        Ok(self.category.zeta(e))
    }

    /// Fusion multiplicities `N^nu_{lambda mu}` for all `nu`, in simple-set order.
    pub fn fusion_row(&self, lambda: usize, mu: usize) -> Result<Vec<BigInt>> {
        let weights = self.fusion_weights()?;
        let conj = self.conj_smatrix();
        let a: Vec<Cyclotomic<T>> =
            (0..self.len()).map(|x| &(&self.smatrix[lambda][x] * &self.smatrix[mu][x]) * &weights[x]).collect();
        (0..self.len())
            .map(|nu| {
                let value =
                    a.iter().zip(&conj[nu]).fold(Cyclotomic::zero(self.category.field()), |acc, (p, q)| acc + p * q);
                self.nonnegative_integer(&value, lambda, mu, nu)
            })
            .collect()
    }

    /// `N^nu_{lambda mu} = sum_x S_{lambda x} S_{mu x} conj(S_{nu x}) / (dim x <Omega>)`.
    pub fn fusion_coeff(&self, lambda: &Weight, mu: &Weight, nu: &Weight) -> Result<BigInt> {
        let (l, m, n) = (self.index(lambda)?, self.index(mu)?, self.index(nu)?);
        let weights = self.fusion_weights()?;
        let conj = self.conj_smatrix();
        let value = (0..self.len()).fold(Cyclotomic::zero(self.category.field()), |acc, x| {
            acc + &(&(&self.smatrix[l][x] * &self.smatrix[m][x]) * &weights[x]) * &conj[n][x]
        });
        self.nonnegative_integer(&value, l, m, n)
    }

    fn nonnegative_integer(&self, value: &Cyclotomic<T>, l: usize, m: usize, n: usize) -> Result<BigInt> {
        match value.to_integer() {
            Some(v) if !v.is_negative() => Ok(v),
            _ => {
                let s = self.simples();
                Err(Error::NonIntegral(format!("N^{}_{{{},{}}} = {value}", s.get(n), s.get(l), s.get(m))))
            }
        }
    }

    pub fn to_dump(&self) -> TableDump<T> {
        TableDump {
            format: TABLE_FORMAT,
            spec: *self.spec(),
            simples: self.simples().items().to_vec(),
            gamma1: self.simples().gamma1().to_vec(),
            psi: self.psi().clone(),
            dims: self.dims.clone(),
            twist_exponents: self.twist_exponents.clone(),
            twists: self.twists.clone(),
            smatrix: self.smatrix.clone(),
            omega_norm: self.omega_norm.clone(),
            u_plus: self.u_plus.clone(),
            u_minus: self.u_minus.clone(),
        }
    }

    /// Restores a table, re-deriving the cheap data and checking it against the dump.
    pub fn from_dump(dump: TableDump<T>) -> Result<Self> {
        if dump.format != TABLE_FORMAT {
            return Err(Error::InvalidSpec(format!("table format {} is not {TABLE_FORMAT}", dump.format)));
        }
        let category = Category::<T>::new(dump.spec)?;
        let m = category.simples().len();
        let consistent = dump.simples == category.simples().items()
            && dump.gamma1 == category.simples().gamma1()
            && dump.psi.matches(category.psi())
            && dump.dims.len() == m
            && dump.smatrix.len() == m
            && dump.smatrix.iter().all(|row| row.len() == m)
            && dump.twist_exponents.len() == m
            && dump.twists.len() == m
            && dump
                .twist_exponents
                .iter()
                .zip(category.simples().items())
                .all(|(&e, w)| e == category.twist_exponent_of_vector(&w.signed()));
        if !consistent {
            return Err(Error::Internal(format!("cached table for {} is inconsistent", dump.spec)));
        }
        let table = Self::assemble(category, dump.dims, dump.twist_exponents, dump.twists, dump.smatrix)?;
        if !(table.omega_norm.matches(&dump.omega_norm)
            && table.u_plus.matches(&dump.u_plus)
            && table.u_minus.matches(&dump.u_minus))
        {
            return Err(Error::Internal(format!("cached table for {} has stale normalizations", dump.spec)));
        }
        Ok(table)
    }
}
