use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::encoding::{build_encoding, EncodingMap};
use super::signatures::dual_signatures;
use crate::calculus::{delta, hodge_prefix, Metric, MetricKind};
use crate::complexes::{
    as_reduction, augmentation_for, build_complex, form_from_coordinates, operator_matrix, strand_keys, Truncation,
};
use crate::document::{ser_matrix, ser_rational};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;
use crate::tensor::{project, MultiForm, Polynomial, Shape};

#[derive(Clone, Debug)]
pub struct DualityOptions {
    /// Polynomial degree cap of every potential.
    pub degree_cap: u32,
    pub metric: MetricKind,
    /// Abort when a cohomology certificate does not vanish.
    pub strict: bool,
    /// Charge parameters ε_0,…,ε_r on the field strengths. Missing entries
    /// are transported from ε_0 by the cumulative Hodge map.
    pub epsilon: Vec<MultiForm<Rational>>,
    pub test_fields: usize,
    pub seed: u64,
    pub max_dim: usize,
}

impl Default for DualityOptions {
    fn default() -> Self {
        DualityOptions {
            degree_cap: 2,
            metric: MetricKind::Euclidean,
            strict: false,
            epsilon: Vec::new(),
            test_fields: 20,
            seed: 7,
            max_dim: crate::complexes::DEFAULT_MAX_DIM,
        }
    }
}

/// Exact contraction ⟨a, b⟩ of two constant forms of one shape, each basis
/// tuple counted once and weighted by the inverse metric.
pub fn contract(a: &MultiForm<Rational>, b: &MultiForm<Rational>, metric: &Metric) -> Result<Rational> {
    a.check_same_shape(b)?;
    let mut total = Rational::zero();
    for (blocks, x) in a.terms() {
        let Some(y) = b.terms().get(blocks) else { continue };
        let negative = blocks
            .iter()
            .flat_map(|bl| bl.indices())
            .filter(|i| metric.flag(*i) < 0)
            .count()
            % 2
            == 1;
        let v = x * y;
        total += if negative { -v } else { v };
    }
    Ok(total)
}

/// Constant part of a polynomial form.
pub fn constant_form(form: &MultiForm<Polynomial>) -> MultiForm<Rational> {
    let zero_key = vec![0u32; form.shape().dim()];
    MultiForm::from_canonical(
        form.shape().clone(),
        form.terms()
            .iter()
            .filter_map(|(b, c)| c.terms().get(&zero_key).map(|v| (b.clone(), v.clone()))),
    )
}

/// One description: a potential shape with its field-strength operator on the truncation.
struct Description {
    potential: Shape,
    field: Shape,
    pot_keys: Vec<Vec<u32>>,
    field_keys: Vec<Vec<u32>>,
    /// δ^(N)∘Π restricted to the pivot columns, which span Ω_AS.
    delta_as: Matrix<Rational>,
    pivots: Vec<usize>,
}

impl Description {
    fn new(potential: Shape, cap: u32, max_dim: usize) -> Result<Description> {
        let dim = potential.dim();
        let order = potential.arity();
        let field = potential.raised(order).ok_or_else(|| {
            Error::Precondition(format!("{potential} has no field strength: a slot is at top degree"))
        })?;
        if (cap as usize) < order {
            return Err(Error::Precondition(format!(
                "degree cap {cap} is below the differential order {order}, so every potential is pure gauge"
            )));
        }
        let pot_keys: Vec<Vec<u32>> = (0..=cap as i64).flat_map(|d| strand_keys(dim, d)).collect();
        let field_keys: Vec<Vec<u32>> =
            (0..=cap as i64 - order as i64).flat_map(|d| strand_keys(dim, d)).collect();
        let needed = potential.block_count().max(field.block_count()) * pot_keys.len();
        if needed > max_dim {
            return Err(Error::Resource {
                what: format!("duality space of {potential}"),
                needed,
                cap: max_dim,
            });
        }
        let full = operator_matrix::<Polynomial>(&potential, order, &pot_keys, &field_keys)?;
        let pivots = full.independent_columns();
        let delta_as = full.select_columns(&pivots);
        Ok(Description {
            potential,
            field,
            pot_keys,
            field_keys,
            delta_as,
            pivots,
        })
    }

    fn field_dim(&self) -> usize {
        self.delta_as.nrows()
    }

    /// The potential Σ x_c Π(e_c) for AS coordinates `x`.
    fn potential_form(&self, x: &[Rational]) -> Result<MultiForm<Polynomial>> {
        let mut full = vec![Rational::zero(); self.potential.block_count() * self.pot_keys.len()];
        for (c, v) in self.pivots.iter().zip(x) {
            full[*c] = v.clone();
        }
        project(&form_from_coordinates::<Polynomial>(&self.potential, &self.pot_keys, &full))
    }

    /// Constant part of field-strength coordinates, as a constant form.
    fn constant_of(&self, h: &[Rational]) -> MultiForm<Rational> {
        let nk = self.field_keys.len();
        let basis = self.field.basis();
        MultiForm::from_canonical(
            self.field.clone(),
            (0..basis.len())
                .filter(|t| !h[t * nk].is_zero())
                .map(|t| (basis.tuple(t).to_vec(), h[t * nk].clone())),
        )
    }
}

/// Signed permutation of field coordinates realizing ⋆^(1)…⋆^(i), as
/// (target index, sign) per source index.
fn hodge_permutation(from: &Description, to: &Description, i: usize, metric: &Metric) -> Result<Vec<(usize, bool)>> {
    let nk = from.field_keys.len();
    let src = from.field.basis();
    let tgt = to.field.basis();
    let mut out = vec![(0, false); src.len() * nk];
    for t in 0..src.len() {
        let e = MultiForm::from_canonical(from.field.clone(), [(src.tuple(t).to_vec(), Rational::one())]);
        let img = hodge_prefix(&e, i, metric)?;
        let (blocks, c) = img.terms().iter().next().ok_or_else(|| {
            Error::Consistency("Hodge image of a basis tuple vanished".into())
        })?;
        let row = tgt.index_of(blocks).ok_or_else(|| Error::Consistency("non-canonical Hodge image".into()))?;
        for a in 0..nk {
            out[t * nk + a] = (row * nk + a, c < &Rational::zero());
        }
    }
    Ok(out)
}

fn apply_signed(perm: &[(usize, bool)], v: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for ((row, neg), x) in perm.iter().zip(v) {
        out[*row] = if *neg { -x.clone() } else { x.clone() };
    }
    out
}

/// Reduced echelon basis of a row space with its pivot columns.
fn canonical_basis(rows: &[Vec<Rational>], width: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let m = if rows.is_empty() { Matrix::zeros(0, width) } else { Matrix::from_dense(rows) };
    let rref = m.rref();
    let basis: Vec<Vec<Rational>> = (0..rref.pivots.len())
        .map(|k| {
            let mut v = vec![Rational::zero(); width];
            for (c, x) in &rref.rows[k] {
                v[*c] = x.clone();
            }
            v
        })
        .collect();
    (basis, rref.pivots.clone())
}

/// Result of checking the cohomology hypothesis of one description.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub description: usize,
    pub potential: Vec<usize>,
    pub augmentation: Vec<usize>,
    pub position: usize,
    pub vanishing: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualMap {
    pub index: usize,
    pub potential: Vec<usize>,
    pub field_strength: Vec<usize>,
    /// (δ^(N))⁻¹∘⋆^(1…i)∘δ^(N) between the canonical on-shell bases.
    #[serde(serialize_with = "ser_matrix")]
    pub conjugated_hodge: Matrix<Rational>,
    pub encoding: EncodingMap,
    #[serde(serialize_with = "ser_matrix")]
    pub f: Matrix<Rational>,
    #[serde(serialize_with = "ser_matrix")]
    pub triangular: Matrix<Rational>,
    /// Column operations T with `triangular = f · T`; column 1 is untouched.
    #[serde(serialize_with = "ser_matrix")]
    pub basis_change: Matrix<Rational>,
    #[serde(serialize_with = "ser_rational")]
    pub eta: Rational,
    /// Entry (1,1) of the inverse of the triangular form.
    #[serde(serialize_with = "ser_rational")]
    pub inverse_eta: Rational,
    pub residual_nonzero: usize,
    pub triangular_residual_nonzero: usize,
    /// The first row of the triangular form has a single nonzero entry.
    pub restriction_unique: bool,
    pub invertible: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TestFieldCheck {
    pub fields: usize,
    pub nonzero_charge: usize,
    /// Q_i / Q_0 equals η_i for every test field with Q_0 ≠ 0.
    pub eta_consistent: bool,
    /// f_i maps Q_0 to Q_i and f_i⁻¹ maps it back.
    pub round_trip: bool,
    /// δ applied to the transported potential reproduces ⋆ of the field strength.
    pub transport_exact: bool,
    /// Charges computed from forms agree with charges read through π.
    pub charges_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub dim: usize,
    pub signature: Vec<usize>,
    pub duals: Vec<Vec<usize>>,
    pub r: usize,
    pub degree_cap: u32,
    pub metric: MetricKind,
    /// dim Ω_AS of each description inside the truncation.
    pub as_dimensions: Vec<usize>,
    /// n: dimension of the on-shell AS space shared by all descriptions.
    pub on_shell_dimension: usize,
    pub encoding: EncodingMap,
    pub maps: Vec<DualMap>,
    pub test_fields: TestFieldCheck,
    pub certificates: Vec<Certificate>,
    pub strict: bool,
}

impl DualityReport {
    pub fn etas(&self) -> Vec<Rational> {
        self.maps.iter().map(|m| m.eta.clone()).collect()
    }

    pub fn all_checks_pass(&self) -> bool {
        let t = &self.test_fields;
        self.maps.iter().all(|m| {
            m.invertible && m.residual_nonzero == 0 && m.triangular_residual_nonzero == 0 && m.restriction_unique
        }) && t.eta_consistent
            && t.round_trip
            && t.transport_exact
            && t.charges_agree
    }
}

/// Column operations on columns 2…n turning `f` lower triangular.
fn lower_triangularize(f: &Matrix<Rational>) -> (Matrix<Rational>, Matrix<Rational>) {
    let n = f.nrows();
    let mut l = f.to_dense();
    let mut t = Matrix::<Rational>::identity(n).to_dense();
    let swap_cols = |m: &mut Vec<Vec<Rational>>, a: usize, b: usize| {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    };
    for r in 1..n {
        let Some(c) = (r..n).find(|c| !l[r][*c].is_zero()) else { continue };
        if c != r {
            swap_cols(&mut l, r, c);
            swap_cols(&mut t, r, c);
        }
        let pivot = l[r][r].clone();
        for j in (r + 1)..n {
            if l[r][j].is_zero() {
                continue;
            }
            let factor = &l[r][j] / &pivot;
            for m in [&mut l, &mut t] {
                for row in m.iter_mut() {
                    let v = &row[r] * &factor;
                    row[j] -= v;
                }
            }
        }
    }
    (Matrix::from_dense(&l), Matrix::from_dense(&t))
}

fn certificate(index: usize, potential: &Shape, cap: u32) -> Result<Certificate> {
    let aug = augmentation_for(potential)?;
    let spec = build_complex(potential.dim(), potential.arity(), &aug)?;
    let position = spec
        .position_of(potential)
        .ok_or_else(|| Error::Dependency(format!("{potential} is not a node of its augmented complex")))?;
    let (vanishing, detail) = match as_reduction(&spec, position, &Truncation::boxed(cap), false) {
        Ok(r) => (true, format!("δ is a bijection of dimension {}", r.as_potential_dimension)),
        Err(Error::Precondition(msg)) => (false, msg),
        Err(e) => return Err(e),
    };
    Ok(Certificate {
        description: index,
        potential: potential.signature().to_vec(),
        augmentation: aug,
        position,
        vanishing,
        detail,
    })
}

/// Cohomology certificates of every description, one per shape.
pub fn certificates(shapes: &[Shape], cap: u32) -> Result<Vec<Certificate>> {
    shapes
        .par_iter()
        .enumerate()
        .map(|(i, s)| certificate(i, s, cap))
        .collect()
}

/// Conjugated Hodge maps, encodings and triangular duality maps between a
/// shape and each of its dual descriptions.
///
/// All descriptions are restricted to the on-shell subspace: potentials whose
/// field strength H satisfies ⋆^(1…i)H ∈ im δ for every dual i, which is where
/// (δ^(N))⁻¹∘⋆^(i)∘δ^(N) is defined.
pub fn build_duality_maps(shape: &Shape, opts: &DualityOptions) -> Result<DualityReport> {
    let duals = dual_signatures(shape)?;
    let dim = shape.dim();
    let metric = opts.metric.build(dim);
    let cap = opts.degree_cap;
    let shapes: Vec<Shape> = std::iter::once(shape.clone()).chain(duals.iter().cloned()).collect();
    let descs: Vec<Description> = shapes
        .par_iter()
        .map(|s| Description::new(s.clone(), cap, opts.max_dim))
        .collect::<Result<_>>()?;
    let r = duals.len();
    let base = &descs[0];
    let r0 = base.pivots.len();

    let perms: Vec<Vec<(usize, bool)>> = (1..=r)
        .map(|i| hodge_permutation(base, &descs[i], i, &metric))
        .collect::<Result<_>>()?;

    // on-shell constraints: annihilators of im δ_i pulled back through ⋆ and δ_0
    let mut constraints: Vec<Vec<Rational>> = Vec::new();
    let m0 = &base.delta_as;
    let m0_dense = m0.transpose();
    for i in 1..=r {
        let di = &descs[i];
        for w in di.delta_as.transpose().kernel() {
            let u: Vec<Rational> = perms[i - 1].iter().map(|(row, neg)| {
                if *neg { -w[*row].clone() } else { w[*row].clone() }
            }).collect();
            let row = m0_dense.mul_vec(&u);
            if row.iter().any(|x| !x.is_zero()) {
                constraints.push(row);
            }
        }
    }
    let kernel = if constraints.is_empty() {
        Matrix::<Rational>::identity(r0).to_dense()
    } else {
        Matrix::from_dense(&constraints).kernel()
    };
    let (basis0, _) = canonical_basis(&kernel, r0);
    let n = basis0.len();
    if n == 0 {
        return Err(Error::DegenerateCharge);
    }

    let h0: Vec<Vec<Rational>> = basis0.iter().map(|b| m0.mul_vec(b)).collect();

    // charge parameters
    let eps0 = match opts.epsilon.first() {
        Some(e) => {
            if e.shape() != &base.field {
                return Err(Error::Domain(format!(
                    "ε_0 has shape {:?}, the field strength is {:?}",
                    e.shape(),
                    base.field
                )));
            }
            e.clone()
        }
        None => {
            let mut chosen = None;
            for h in &h0 {
                let c = base.constant_of(h);
                if !contract(&c, &c, &metric)?.is_zero() {
                    chosen = Some(c);
                    break;
                }
            }
            chosen.ok_or(Error::DegenerateCharge)?
        }
    };
    let mut eps = vec![eps0.clone()];
    for i in 1..=r {
        let transported = hodge_prefix(&eps0, i, &metric)?;
        match opts.epsilon.get(i) {
            None => eps.push(transported),
            Some(e) => {
                if e.shape() != &descs[i].field {
                    return Err(Error::Domain(format!("ε_{i} has shape {:?}", e.shape())));
                }
                if !proportional(e, &transported) {
                    return Err(Error::Precondition(format!(
                        "ε_{i} is not proportional to the Hodge transport of ε_0"
                    )));
                }
                eps.push(e.clone());
            }
        }
    }

    let q0: Vec<Rational> = h0
        .iter()
        .map(|h| contract(&eps[0], &base.constant_of(h), &metric))
        .collect::<Result<_>>()?;
    let pi0 = build_encoding(&q0)?;
    let pi0_inv = pi0
        .matrix
        .inverse()
        .ok_or_else(|| Error::Consistency("base encoding is not invertible".into()))?;

    let maps: Vec<(DualMap, Vec<Vec<Rational>>)> = (1..=r)
        .into_par_iter()
        .map(|i| {
            let di = &descs[i];
            let images: Vec<Vec<Rational>> = h0
                .iter()
                .map(|h| {
                    let target = apply_signed(&perms[i - 1], h, di.field_dim());
                    di.delta_as.solve(&target).ok_or_else(|| {
                        Error::Consistency(format!("on-shell field strength has no potential in {}", di.potential))
                    })
                })
                .collect::<Result<_>>()?;
            let (basis_i, pivots_i) = canonical_basis(&images, di.pivots.len());
            if basis_i.len() != n {
                return Err(Error::Consistency(format!(
                    "conjugated Hodge map onto {} has rank {} instead of {n}",
                    di.potential,
                    basis_i.len()
                )));
            }
            let columns: Vec<Vec<Rational>> =
                images.iter().map(|y| pivots_i.iter().map(|p| y[*p].clone()).collect()).collect();
            let phi = Matrix::from_columns(n, &columns);
            let qi: Vec<Rational> = basis_i
                .iter()
                .map(|b| contract(&eps[i], &di.constant_of(&di.delta_as.mul_vec(b)), &metric))
                .collect::<Result<_>>()?;
            let pi = build_encoding(&qi)?;
            let f = pi.matrix.mul(&phi).mul(&pi0_inv);
            let residual = pi.matrix.mul(&phi).sub(&f.mul(&pi0.matrix)).nnz();
            if residual != 0 {
                return Err(Error::Consistency(format!("duality square for λ_{i} does not commute")));
            }
            let (tri, t) = lower_triangularize(&f);
            let t_inv = t.inverse().ok_or_else(|| Error::Consistency("basis change is singular".into()))?;
            let tri_residual = pi.matrix.mul(&phi).sub(&tri.mul(&t_inv).mul(&pi0.matrix)).nnz();
            if tri_residual != 0 {
                return Err(Error::Consistency(format!("triangular square for λ_{i} does not commute")));
            }
            let tri_inv = tri.inverse();
            let eta = tri.get(0, 0);
            let inverse_eta = tri_inv.as_ref().map(|m| m.get(0, 0)).unwrap_or_else(Rational::zero);
            let restriction_unique = !eta.is_zero() && (1..n).all(|j| tri.get(0, j).is_zero());
            let lower = (0..n).all(|a| ((a + 1)..n).all(|b| tri.get(a, b).is_zero()));
            Ok((
                DualMap {
                    index: i,
                    potential: di.potential.signature().to_vec(),
                    field_strength: di.field.signature().to_vec(),
                    conjugated_hodge: phi,
                    encoding: pi,
                    f: f.clone(),
                    triangular: tri,
                    basis_change: t,
                    eta,
                    inverse_eta,
                    residual_nonzero: residual,
                    triangular_residual_nonzero: tri_residual,
                    restriction_unique: restriction_unique && lower,
                    invertible: tri_inv.is_some(),
                },
                basis_i,
            ))
        })
        .collect::<Result<_>>()?;

    let test_fields = check_test_fields(&descs, &basis0, &maps, &pi0, &eps, &metric, opts)?;

    let certs = certificates(&shapes, cap)?;
    if opts.strict {
        if let Some(c) = certs.iter().find(|c| !c.vanishing) {
            return Err(Error::Dependency(format!(
                "cohomology certificate for description {} failed: {}",
                c.description, c.detail
            )));
        }
    }

    Ok(DualityReport {
        dim,
        signature: shape.signature().to_vec(),
        duals: duals.iter().map(|d| d.signature().to_vec()).collect(),
        r,
        degree_cap: cap,
        metric: opts.metric,
        as_dimensions: descs.iter().map(|d| d.pivots.len()).collect(),
        on_shell_dimension: n,
        encoding: pi0,
        maps: maps.into_iter().map(|(m, _)| m).collect(),
        test_fields,
        certificates: certs,
        strict: opts.strict,
    })
}

fn proportional(a: &MultiForm<Rational>, b: &MultiForm<Rational>) -> bool {
    let Some((k, x)) = a.terms().iter().next() else { return b.is_zero() };
    let Some(y) = b.terms().get(k) else { return false };
    let ratio = x / y;
    a.len() == b.len() && b.scale(&ratio) == *a
}

/// Random on-shell potentials checked along two independent paths: through
/// the encodings and maps, and through the forms themselves.
fn check_test_fields(
    descs: &[Description],
    basis0: &[Vec<Rational>],
    maps: &[(DualMap, Vec<Vec<Rational>>)],
    pi0: &EncodingMap,
    eps: &[MultiForm<Rational>],
    metric: &Metric,
    opts: &DualityOptions,
) -> Result<TestFieldCheck> {
    let n = basis0.len();
    let r0 = descs[0].pivots.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut check = TestFieldCheck {
        fields: opts.test_fields,
        nonzero_charge: 0,
        eta_consistent: true,
        round_trip: true,
        transport_exact: true,
        charges_agree: true,
    };
    for _ in 0..opts.test_fields {
        let a: Vec<Rational> = (0..n).map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into())).collect();
        let mut x = vec![Rational::zero(); r0];
        for (aj, b) in a.iter().zip(basis0) {
            for (xk, bk) in x.iter_mut().zip(b) {
                *xk += aj * bk;
            }
        }
        let b0 = descs[0].potential_form(&x)?;
        let h0 = delta(&b0)?.unwrap_or_else(|| MultiForm::zero(descs[0].field.clone()));
        let q0_form = contract(&eps[0], &constant_form(&h0), metric)?;
        let v = pi0.apply(&a);
        if v[0] != q0_form {
            check.charges_agree = false;
        }
        for (map, basis_i) in maps {
            let i = map.index;
            let di = &descs[i];
            // transported potential from the conjugated Hodge map
            let coords = map.conjugated_hodge.mul_vec(&a);
            let mut y = vec![Rational::zero(); di.pivots.len()];
            for (cj, b) in coords.iter().zip(basis_i) {
                for (yk, bk) in y.iter_mut().zip(b) {
                    *yk += cj * bk;
                }
            }
            let bi = di.potential_form(&y)?;
            let hi = delta(&bi)?.unwrap_or_else(|| MultiForm::zero(di.field.clone()));
            let starred = hodge_prefix(&h0, i, metric)?;
            if hi != starred {
                check.transport_exact = false;
            }
            let qi_form = contract(&eps[i], &constant_form(&hi), metric)?;
            let w = map.f.mul_vec(&v);
            if w[0] != qi_form || map.encoding.apply(&coords)[0] != qi_form {
                check.charges_agree = false;
            }
            if !q0_form.is_zero() && &qi_form / &q0_form != map.eta {
                check.eta_consistent = false;
            }
            match map.f.inverse() {
                Some(finv) => {
                    let back = finv.mul_vec(&w);
                    if back[0] != q0_form || w[0] != &map.eta * &q0_form {
                        check.round_trip = false;
                    }
                }
                None => check.round_trip = false,
            }
        }
        if !q0_form.is_zero() {
            check.nonzero_charge += 1;
        }
    }
    Ok(check)
}
