//! Seeded random multi-forms for tests, examples and the self-test.

use rand::Rng;

use crate::rational::{gaussian, rat, Rational};
use crate::tensor::{monomials_of_degree, Coefficient, MultiForm, Polynomial, Shape, TrigPolynomial};

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let n = rng.gen_range(-4..=4);
    let d = rng.gen_range(1..=3);
    rat(n, d)
}

/// Random form with at most `terms` nonzero block tuples, coefficients drawn by `coeff`.
pub fn random_form<C: Coefficient, R: Rng>(
    shape: &Shape,
    terms: usize,
    rng: &mut R,
    mut coeff: impl FnMut(&mut R) -> C,
) -> MultiForm<C> {
    let basis = shape.basis();
    let mut out = MultiForm::zero(shape.clone());
    for _ in 0..terms {
        let t = basis.tuple(rng.gen_range(0..basis.len())).to_vec();
        let c = coeff(rng);
        out.add_term(t, &c, &Rational::from_integer(1.into()));
    }
    out
}

/// Random polynomial of total degree at most `degree` with a few monomials.
pub fn random_polynomial<R: Rng>(dim: usize, degree: u32, rng: &mut R) -> Polynomial {
    let mut p = Polynomial::default();
    for _ in 0..3 {
        let d = rng.gen_range(0..=degree);
        let monos = monomials_of_degree(dim, d);
        let e = monos[rng.gen_range(0..monos.len())].clone();
        p.add_term(e, small_rational(rng));
    }
    p
}

/// Random trigonometric polynomial with frequencies bounded by `cap`.
pub fn random_trig<R: Rng>(dim: usize, cap: i32, rng: &mut R) -> TrigPolynomial {
    let mut f = TrigPolynomial::default();
    for _ in 0..3 {
        let k: Vec<i32> = (0..dim).map(|_| rng.gen_range(-cap..=cap)).collect();
        f.add_mode(k, gaussian(small_rational(rng), small_rational(rng)));
    }
    f
}

pub fn random_polynomial_form<R: Rng>(shape: &Shape, degree: u32, terms: usize, rng: &mut R) -> MultiForm<Polynomial> {
    let dim = shape.dim();
    random_form(shape, terms, rng, |r| random_polynomial(dim, degree, r))
}

pub fn random_trig_form<R: Rng>(shape: &Shape, cap: i32, terms: usize, rng: &mut R) -> MultiForm<TrigPolynomial> {
    let dim = shape.dim();
    random_form(shape, terms, rng, |r| random_trig(dim, cap, r))
}

pub fn random_rational_form<R: Rng>(shape: &Shape, terms: usize, rng: &mut R) -> MultiForm<Rational> {
    random_form(shape, terms, rng, small_rational)
}
