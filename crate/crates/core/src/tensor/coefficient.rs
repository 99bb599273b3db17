//! Coefficient fields of multi-forms.
//!
//! Three exact variants: constant rationals, polynomials on a box around the
//! origin and trigonometric polynomials `Σ a_k exp(i k·x)` on a torus.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::rational::{gaussian, int, GaussianRational, Rational};

pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync + 'static {
    /// Tag used by the document format.
    const KIND: &'static str;

    fn vanishing() -> Self;
    fn vanishes(&self) -> bool;
    /// The constant function `r` on a `dim`-dimensional domain.
    fn constant(r: Rational, dim: usize) -> Self;
    /// `self += s * other`.
    fn add_scaled(&mut self, other: &Self, s: &Rational);
    fn partial(&self, var: usize) -> Self;
    /// Constant (degree-zero or zero-frequency) component.
    fn constant_part(&self) -> GaussianRational;

    fn scaled(&self, s: &Rational) -> Self {
        let mut out = Self::vanishing();
        out.add_scaled(self, s);
        out
    }
}

impl Coefficient for Rational {
    const KIND: &'static str = "rational";

    fn vanishing() -> Self {
        Zero::zero()
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }

    fn constant(r: Rational, _dim: usize) -> Self {
        r
    }

    fn add_scaled(&mut self, other: &Self, s: &Rational) {
        *self += other * s;
    }

    fn partial(&self, _var: usize) -> Self {
        Zero::zero()
    }

    fn constant_part(&self) -> GaussianRational {
        gaussian(self.clone(), int(0))
    }
}

/// Multivariate polynomial with rational coefficients, keyed by exponent vectors.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn monomial(exponents: Vec<u32>, c: Rational) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(exponents, c);
        }
        Polynomial { terms }
    }

    /// The coordinate function `x_var`.
    pub fn coordinate(dim: usize, var: usize) -> Polynomial {
        let mut e = vec![0; dim];
        e[var] = 1;
        Polynomial::monomial(e, Rational::one())
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        if Zero::is_zero(&c) {
            return;
        }
        let e = self.terms.entry(exponents.clone()).or_insert_with(Rational::zero);
        *e += c;
        if Zero::is_zero(e) {
            self.terms.remove(&exponents);
        }
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Antiderivative in `x_var` vanishing on `x_var = 0`.
    pub fn integrate_from_origin(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::default();
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e[var] += 1;
            let k = e[var];
            out.add_term(e, c / int(k as i64));
        }
        out
    }

    /// Restriction to the hyperplane `x_var = 0`.
    pub fn restrict_zero(&self, var: usize) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[var] == 0)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }
}

/// Exponent vectors in `dim` variables of total degree exactly `degree`.
pub fn monomials_of_degree(dim: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(dim: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == dim {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(dim, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    rec(dim, degree, &mut Vec::with_capacity(dim), &mut out);
    out
}

impl Coefficient for Polynomial {
    const KIND: &'static str = "poly_box";

    fn vanishing() -> Self {
        Polynomial::default()
    }

    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }

    fn constant(r: Rational, dim: usize) -> Self {
        Polynomial::monomial(vec![0; dim], r)
    }

    fn add_scaled(&mut self, other: &Self, s: &Rational) {
        if Zero::is_zero(s) {
            return;
        }
        for (e, c) in &other.terms {
            let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
            *entry += c * s;
        }
        self.terms.retain(|_, v| !Zero::is_zero(v));
    }

    fn partial(&self, var: usize) -> Self {
        let mut out = Polynomial::default();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            let k = e2[var];
            e2[var] -= 1;
            out.add_term(e2, c * int(k as i64));
        }
        out
    }

    fn constant_part(&self) -> GaussianRational {
        let c = self
            .terms
            .iter()
            .find(|(e, _)| e.iter().all(|x| *x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero);
        gaussian(c, int(0))
    }
}

/// Trigonometric polynomial `Σ a_k exp(i k·x)` with Gaussian-rational amplitudes.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct TrigPolynomial {
    modes: BTreeMap<Vec<i32>, GaussianRational>,
}

impl TrigPolynomial {
    pub fn mode(freq: Vec<i32>, amplitude: GaussianRational) -> TrigPolynomial {
        let mut modes = BTreeMap::new();
        if !amplitude.is_zero() {
            modes.insert(freq, amplitude);
        }
        TrigPolynomial { modes }
    }

    pub fn modes(&self) -> &BTreeMap<Vec<i32>, GaussianRational> {
        &self.modes
    }

    pub fn add_mode(&mut self, freq: Vec<i32>, amplitude: GaussianRational) {
        let e = self
            .modes
            .entry(freq)
            .or_insert_with(GaussianRational::zero);
        *e += amplitude;
        self.modes.retain(|_, v| !v.is_zero());
    }

    /// Largest |k_j| over all stored modes.
    pub fn max_frequency(&self) -> u32 {
        self.modes
            .keys()
            .flat_map(|k| k.iter().map(|x| x.unsigned_abs()))
            .max()
            .unwrap_or(0)
    }
}

impl Coefficient for TrigPolynomial {
    const KIND: &'static str = "trig_torus";

    fn vanishing() -> Self {
        TrigPolynomial::default()
    }

    fn vanishes(&self) -> bool {
        self.modes.is_empty()
    }

    fn constant(r: Rational, dim: usize) -> Self {
        TrigPolynomial::mode(vec![0; dim], gaussian(r, int(0)))
    }

    fn add_scaled(&mut self, other: &Self, s: &Rational) {
        if Zero::is_zero(s) {
            return;
        }
        let sc = gaussian(s.clone(), int(0));
        for (k, a) in &other.modes {
            let e = self
                .modes
                .entry(k.clone())
                .or_insert_with(GaussianRational::zero);
            *e += a * &sc;
        }
        self.modes.retain(|_, v| !v.is_zero());
    }

    fn partial(&self, var: usize) -> Self {
        let mut out = TrigPolynomial::default();
        for (k, a) in &self.modes {
            if k[var] == 0 {
                continue;
            }
            let factor = gaussian(int(0), int(k[var] as i64));
            out.modes.insert(k.clone(), a * factor);
        }
        out
    }

    fn constant_part(&self) -> GaussianRational {
        self.modes
            .iter()
            .find(|(k, _)| k.iter().all(|x| *x == 0))
            .map(|(_, a)| a.clone())
            .unwrap_or_else(GaussianRational::zero)
    }
}
