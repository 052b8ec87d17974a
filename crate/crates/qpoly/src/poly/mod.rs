//! Exact polynomial arithmetic over arbitrary-precision signed integers.
//!
//! Three shapes are provided: [`UniPoly`] (dense univariate), [`BiPoly`]
//! (sparse bivariate, the carrier of Q(G;x,y)) and [`TriPoly`] (sparse
//! trivariate, the carrier of the edge elimination polynomial).

mod json;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use json::parse_rational;

/// Sparse bivariate polynomial with `BigInt` coefficients, indexed by
/// `(x_power, y_power)`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        BiPoly::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        BiPoly::monomial(1, 0, BigInt::one())
    }

    /// The polynomial `y`.
    pub fn y() -> Self {
        BiPoly::monomial(0, 1, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Degree in `x`, or `None` for the zero polynomial.
    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    /// Degree in `y`, or `None` for the zero polynomial.
    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    fn insert_term(terms: &mut BTreeMap<(u32, u32), BigInt>, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient of `y^j` as a univariate polynomial in `x`.
    pub fn coeff_of_y(&self, j: u32) -> UniPoly {
        let mut coeffs = Vec::new();
        for (&(i, jj), c) in &self.terms {
            if jj == j {
                if coeffs.len() <= i as usize {
                    coeffs.resize(i as usize + 1, BigInt::zero());
                }
                coeffs[i as usize] = c.clone();
            }
        }
        UniPoly::new(coeffs)
    }

    /// Coefficient of `x^i` as a univariate polynomial in `y`.
    pub fn coeff_of_x(&self, i: u32) -> UniPoly {
        let mut coeffs = Vec::new();
        for (&(ii, j), c) in &self.terms {
            if ii == i {
                if coeffs.len() <= j as usize {
                    coeffs.resize(j as usize + 1, BigInt::zero());
                }
                coeffs[j as usize] = c.clone();
            }
        }
        UniPoly::new(coeffs)
    }

    /// Substitute `y = 1`, collapsing to a univariate polynomial in `x`.
    pub fn subst_y_one(&self) -> UniPoly {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (&(i, _), c) in &self.terms {
            if coeffs.len() <= i as usize {
                coeffs.resize(i as usize + 1, BigInt::zero());
            }
            coeffs[i as usize] += c;
        }
        UniPoly::new(coeffs)
    }

    /// Exact rational evaluation, Horner over y inside Horner over x.
    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut row = BigRational::zero();
        let mut prev_i: Option<u32> = None;
        let mut prev_j = 0u32;
        // walk terms in decreasing (i, j): build each fixed-i row by Horner
        // in y, close it with its pending y^j shift, then shift acc in x.
        for (&(i, j), c) in self.terms.iter().rev() {
            if prev_i != Some(i) {
                if let Some(pi) = prev_i {
                    acc = (acc + row * y.clone().pow_u32(prev_j)) * x.clone().pow_u32(pi - i);
                }
                row = BigRational::zero();
                prev_j = j;
                prev_i = Some(i);
            }
            row = row * y.clone().pow_u32(prev_j - j) + BigRational::from(c.clone());
            prev_j = j;
        }
        if let Some(pi) = prev_i {
            acc = (acc + row * y.clone().pow_u32(prev_j)) * x.clone().pow_u32(pi);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        for (&(i, j), c) in &self.terms {
            acc += c.to_f64().unwrap_or(f64::NAN) * x.powi(i as i32) * y.powi(j as i32);
        }
        acc
    }

    /// Divide by the monomial `x^i y^j`, erroring unless every term is
    /// divisible. A failure here signals a logic error in a splitting
    /// formula, not a user mistake.
    pub fn exact_div_monomial(&self, i: u32, j: u32) -> Result<BiPoly> {
        let mut terms = BTreeMap::new();
        for (&(ii, jj), c) in &self.terms {
            if ii < i || jj < j {
                return Err(Error::Invalid(format!(
                    "term x^{ii} y^{jj} not divisible by x^{i} y^{j}"
                )));
            }
            terms.insert((ii - i, jj - j), c.clone());
        }
        Ok(BiPoly { terms })
    }

    /// True when every term has x-power >= i and y-power >= j.
    pub fn divisible_by_monomial(&self, i: u32, j: u32) -> bool {
        self.terms.keys().all(|&(ii, jj)| ii >= i && jj >= j)
    }

    fn mul_sparse(&self, rhs: &BiPoly) -> BiPoly {
        let mut terms = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                Self::insert_term(&mut terms, (i1 + i2, j1 + j2), c1 * c2);
            }
        }
        BiPoly { terms }
    }

    fn mul_dense(&self, rhs: &BiPoly) -> BiPoly {
        let (dx1, dy1) = (self.deg_x().unwrap(), self.deg_y().unwrap());
        let (dx2, dy2) = (rhs.deg_x().unwrap(), rhs.deg_y().unwrap());
        let (dx, dy) = ((dx1 + dx2) as usize, (dy1 + dy2) as usize);
        let w = dy + 1;
        let mut grid = vec![BigInt::zero(); (dx + 1) * w];
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                grid[(i1 + i2) as usize * w + (j1 + j2) as usize] += c1 * c2;
            }
        }
        let mut terms = BTreeMap::new();
        for i in 0..=dx {
            for j in 0..=dy {
                let c = std::mem::take(&mut grid[i * w + j]);
                if !c.is_zero() {
                    terms.insert((i as u32, j as u32), c);
                }
            }
        }
        BiPoly { terms }
    }

    fn density(&self) -> f64 {
        match (self.deg_x(), self.deg_y()) {
            (Some(dx), Some(dy)) => {
                self.terms.len() as f64 / ((dx as f64 + 1.0) * (dy as f64 + 1.0))
            }
            _ => 0.0,
        }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        // dense accumulation avoids map churn once operands fill their grid
        if self.density() > 0.25 && rhs.density() > 0.25 {
            self.mul_dense(rhs)
        } else {
            self.mul_sparse(rhs)
        }
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut terms = self.terms.clone();
        for (&k, c) in &rhs.terms {
            BiPoly::insert_term(&mut terms, k, c.clone());
        }
        BiPoly { terms }
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut terms = self.terms.clone();
        for (&k, c) in &rhs.terms {
            BiPoly::insert_term(&mut terms, k, -c.clone());
        }
        BiPoly { terms }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($t:ty, $trait:ident, $method:ident) => {
        impl $trait for $t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(BiPoly, Add, add);
forward_owned_binop!(BiPoly, Sub, sub);
forward_owned_binop!(BiPoly, Mul, mul);

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.terms {
            write_term(f, first, c, &[("x", i), ("y", j)])?;
            first = false;
        }
        Ok(())
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &BigInt,
    vars: &[(&str, u32)],
) -> fmt::Result {
    if first {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let mag = c.abs();
    let mut parts: Vec<String> = Vec::new();
    if !mag.is_one() || vars.iter().all(|&(_, e)| e == 0) {
        parts.push(mag.to_string());
    }
    for &(name, e) in vars {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    write!(f, "{}", parts.join("*"))
}

/// Dense univariate polynomial with `BigInt` coefficients; trailing zeros
/// are always trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn one() -> Self {
        UniPoly::new(vec![BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.len().checked_sub(1).map(|d| d as u32)
    }

    pub fn coeff(&self, i: u32) -> BigInt {
        self.coeffs
            .get(i as usize)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Sum of all coefficients, i.e. the value at 1.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_term(f, first, c, &[("x", i as u32)])?;
            first = false;
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        UniPoly::new(coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs)
    }
}

forward_owned_binop!(UniPoly, Add, add);
forward_owned_binop!(UniPoly, Mul, mul);

/// Sparse trivariate polynomial indexed by `(x, y, z)` powers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TriPoly {
    terms: BTreeMap<(u32, u32, u32), BigInt>,
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly::default()
    }

    pub fn one() -> Self {
        TriPoly::monomial(0, 0, 0, BigInt::one())
    }

    pub fn monomial(i: u32, j: u32, k: u32, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j, k), c);
        }
        TriPoly { terms }
    }

    pub fn x() -> Self {
        TriPoly::monomial(1, 0, 0, BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j, k), c)| (i, j, k, c))
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> BigInt {
        self.terms
            .get(&(i, j, k))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Multiply by the monomial `x^i y^j z^k`.
    pub fn shift(&self, i: u32, j: u32, k: u32) -> TriPoly {
        TriPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b, c), v)| ((a + i, b + j, c + k), v.clone()))
                .collect(),
        }
    }

    /// Substitute bivariate polynomials for the three variables.
    pub fn substitute(&self, fx: &BiPoly, fy: &BiPoly, fz: &BiPoly) -> BiPoly {
        let mut pow_cache: [Vec<BiPoly>; 3] =
            [vec![BiPoly::one()], vec![BiPoly::one()], vec![BiPoly::one()]];
        let bases = [fx, fy, fz];
        let mut power = |var: usize, e: u32| -> BiPoly {
            while pow_cache[var].len() <= e as usize {
                let next = pow_cache[var].last().unwrap() * bases[var];
                pow_cache[var].push(next);
            }
            pow_cache[var][e as usize].clone()
        };
        let mut acc = BiPoly::zero();
        for (&(i, j, k), c) in &self.terms {
            let term = &(&power(0, i) * &power(1, j)) * &power(2, k);
            acc = &acc + &term.scale(c);
        }
        acc
    }
}

impl Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        let mut terms = self.terms.clone();
        for (&k, c) in &rhs.terms {
            use std::collections::btree_map::Entry;
            match terms.entry(k) {
                Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c.clone());
                    }
                }
                Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        TriPoly { terms }
    }
}

impl Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        let mut terms: BTreeMap<(u32, u32, u32), BigInt> = BTreeMap::new();
        for (&(a1, b1, c1), v1) in &self.terms {
            for (&(a2, b2, c2), v2) in &rhs.terms {
                let key = (a1 + a2, b1 + b2, c1 + c2);
                let prod = v1 * v2;
                use std::collections::btree_map::Entry;
                match terms.entry(key) {
                    Entry::Vacant(e) => {
                        if !prod.is_zero() {
                            e.insert(prod);
                        }
                    }
                    Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        TriPoly { terms }
    }
}

forward_owned_binop!(TriPoly, Add, add);
forward_owned_binop!(TriPoly, Mul, mul);

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j, k), c) in &self.terms {
            write_term(f, first, c, &[("x", i), ("y", j), ("z", k)])?;
            first = false;
        }
        Ok(())
    }
}

trait PowU32 {
    fn pow_u32(self, e: u32) -> Self;
}

impl PowU32 for BigRational {
    fn pow_u32(self, e: u32) -> Self {
        let mut acc = BigRational::one();
        let mut base = self;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

/// `(1 + x)^n` as a bivariate polynomial.
pub fn one_plus_x_pow(n: u32) -> BiPoly {
    BiPoly::monomial(1, 0, BigInt::one())
        .add(BiPoly::one())
        .pow(n)
}

/// `(1 + x y)^n` as a bivariate polynomial.
pub fn one_plus_xy_pow(n: u32) -> BiPoly {
    BiPoly::monomial(1, 1, BigInt::one())
        .add(BiPoly::one())
        .pow(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn bi(i: u32, j: u32, c: i64) -> BiPoly {
        BiPoly::monomial(i, j, BigInt::from_i64(c).unwrap())
    }

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn binomial_square() {
        // (1 + xy)^2 = 1 + 2xy + x^2 y^2
        let p = one_plus_xy_pow(2);
        assert_eq!(p.coeff(0, 0), BigInt::from(1));
        assert_eq!(p.coeff(1, 1), BigInt::from(2));
        assert_eq!(p.coeff(2, 2), BigInt::from(1));
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn mul_by_one_is_identity() {
        let p = &(&bi(0, 1, 1) * &one_plus_x_pow(1)) - &bi(0, 1, 1);
        let q = &p + &BiPoly::one();
        assert_eq!(&q * &BiPoly::one(), q);
    }

    #[test]
    fn cube_of_one_plus_x() {
        let p = one_plus_x_pow(3);
        assert_eq!(
            (0..=3).map(|i| p.coeff(i, 0)).collect::<Vec<_>>(),
            [1, 3, 3, 1].map(BigInt::from)
        );
    }

    #[test]
    fn coeff_extraction() {
        let p = one_plus_xy_pow(1); // 1 + xy
        assert_eq!(p.coeff_of_y(1), UniPoly::new(vec![BigInt::zero(), BigInt::one()]));
        assert_eq!(one_plus_xy_pow(3).deg_y(), Some(3));
        assert_eq!(BiPoly::zero().deg_x(), None);
        assert_eq!(BiPoly::zero().deg_y(), None);
    }

    #[test]
    fn eval_matches_expansion() {
        // (1 + xy)^2 at (1/2, 2) = (1 + 1)^2 = 4
        let p = one_plus_xy_pow(2);
        assert_eq!(p.eval(&rat(1, 2), &rat(2, 1)), rat(4, 1));
        // constant term at the origin
        let q = &p + &bi(0, 0, 41);
        assert_eq!(q.eval(&rat(0, 1), &rat(0, 1)), rat(42, 1));
    }

    #[test]
    fn exact_division() {
        // (xy + x^2 y) / xy = 1 + x
        let p = &bi(1, 1, 1) + &bi(2, 1, 1);
        assert_eq!(p.exact_div_monomial(1, 1).unwrap(), one_plus_x_pow(1));
        // x^2 y^2 / xy = xy
        assert_eq!(
            bi(2, 2, 1).exact_div_monomial(1, 1).unwrap(),
            bi(1, 1, 1)
        );
        // (1 + xy) / x fails on the constant term
        assert!(one_plus_xy_pow(1).exact_div_monomial(1, 0).is_err());
    }

    #[test]
    fn display_ordering() {
        let p = &(&bi(0, 0, 1) + &bi(1, 1, 4)) + &(&bi(2, 1, 3) + &bi(2, 2, -5));
        assert_eq!(p.to_string(), "1 + 4*x*y + 3*x^2*y - 5*x^2*y^2");
        assert_eq!(BiPoly::zero().to_string(), "0");
        assert_eq!(bi(1, 0, -1).to_string(), "-x");
    }

    #[test]
    fn unipoly_basics() {
        let p = UniPoly::new(vec![BigInt::from(1), BigInt::from(2), BigInt::zero()]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.eval(&rat(3, 1)), rat(7, 1));
        assert_eq!(UniPoly::zero().degree(), None);
        assert_eq!(p.to_string(), "1 + 2*x");
    }

    #[test]
    fn tripoly_substitute() {
        // x^2 + x y + z at (1, x, x(y-1)) = 1 + x + xy - x = 1 + xy
        let p = &(&TriPoly::monomial(2, 0, 0, BigInt::one())
            + &TriPoly::monomial(1, 1, 0, BigInt::one()))
            + &TriPoly::monomial(0, 0, 1, BigInt::one());
        let fx = BiPoly::one();
        let fy = BiPoly::x();
        let fz = &(&BiPoly::x() * &BiPoly::y()) - &BiPoly::x();
        let got = p.substitute(&fx, &fy, &fz);
        assert_eq!(got, one_plus_xy_pow(1));
    }

    #[test]
    fn dense_and_sparse_products_agree() {
        let a = one_plus_x_pow(6); // dense in x
        let b = one_plus_xy_pow(5); // diagonal, sparse
        assert_eq!(a.mul_dense(&b), a.mul_sparse(&b));
    }
}
