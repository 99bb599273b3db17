//! JSON documents for multi-forms and serde helpers for exact values.
//!
//! A multi-form document looks like
//!
//! ```json
//! {"D": 3, "signature": [1, 1],
//!  "coefficient_domain": {"kind": "poly_box", "degree_cap": 2},
//!  "terms": [{"blocks": [[0], [1]],
//!             "coeff": {"monomials": [{"exponents": [1, 0, 0], "value": "1/2"}]}}]}
//! ```
//!
//! Rational coefficients are plain `"num/den"` strings and trigonometric ones
//! are `{"modes": [{"freq": [..], "re": "..", "im": ".."}]}`.

use serde::Serializer;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{format_rational, gaussian, parse_rational, Rational};
use crate::tensor::{Coefficient, MultiForm, Polynomial, Shape, TrigPolynomial};

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn ser_rationals<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

pub fn ser_opt_rational<S: Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

pub fn ser_matrix<S: Serializer>(m: &Matrix<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        m.to_dense()
            .into_iter()
            .map(|row| row.iter().map(format_rational).collect::<Vec<_>>()),
    )
}

/// Coefficient domain declared by a document.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientDomain {
    Rational,
    Polynomial { degree_cap: u32 },
    Trig { freq_cap: u32 },
}

impl CoefficientDomain {
    pub fn to_json(&self) -> Value {
        match self {
            CoefficientDomain::Rational => json!({"kind": "rational"}),
            CoefficientDomain::Polynomial { degree_cap } => {
                json!({"kind": "poly_box", "degree_cap": degree_cap})
            }
            CoefficientDomain::Trig { freq_cap } => json!({"kind": "trig_torus", "freq_cap": freq_cap}),
        }
    }

    fn parse(v: &Value) -> Result<CoefficientDomain> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("coefficient_domain needs a string \"kind\"".into()))?;
        match kind {
            "rational" => Ok(CoefficientDomain::Rational),
            "poly_box" | "polynomial" => Ok(CoefficientDomain::Polynomial {
                degree_cap: uint_field(v, "degree_cap")? as u32,
            }),
            "trig_torus" | "trig" => Ok(CoefficientDomain::Trig {
                freq_cap: uint_field(v, "freq_cap")? as u32,
            }),
            other => Err(Error::Parse(format!("unknown coefficient kind {other:?}"))),
        }
    }
}

/// Coefficients that can be written to and read from documents.
pub trait DocCoefficient: Coefficient {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value, dim: usize) -> Result<Self>;
    /// Checks the coefficient against the declared cap.
    fn within(&self, domain: &CoefficientDomain) -> Result<()>;
}

fn rational_value(v: &Value, what: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap_or(0).into())),
        _ => Err(Error::Parse(format!("{what} must be a rational string like \"1/2\""))),
    }
}

fn uint_field(v: &Value, key: &str) -> Result<u64> {
    v.get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse(format!("missing or invalid nonnegative integer {key:?}")))
}

fn array_field<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("missing array {key:?}")))
}

fn index_list<T: TryFrom<i64>>(v: &Value, what: &str) -> Result<Vec<T>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array of integers")))?;
    arr.iter()
        .map(|x| {
            x.as_i64()
                .and_then(|i| T::try_from(i).ok())
                .ok_or_else(|| Error::Parse(format!("{what} has an invalid entry {x}")))
        })
        .collect()
}

impl DocCoefficient for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value, _dim: usize) -> Result<Self> {
        rational_value(v, "coeff")
    }

    fn within(&self, _domain: &CoefficientDomain) -> Result<()> {
        Ok(())
    }
}

impl DocCoefficient for Polynomial {
    fn to_json(&self) -> Value {
        let monomials: Vec<Value> = self
            .terms()
            .iter()
            .map(|(e, c)| json!({"exponents": e, "value": format_rational(c)}))
            .collect();
        json!({ "monomials": monomials })
    }

    fn from_json(v: &Value, dim: usize) -> Result<Self> {
        let mut p = Polynomial::default();
        for m in array_field(v, "monomials")? {
            let e: Vec<u32> = index_list(
                m.get("exponents").ok_or_else(|| Error::Parse("monomial without exponents".into()))?,
                "exponents",
            )?;
            if e.len() != dim {
                return Err(Error::Domain(format!("exponent vector {e:?} has length {}, D is {dim}", e.len())));
            }
            let c = rational_value(m.get("value").unwrap_or(&Value::Null), "monomial value")?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn within(&self, domain: &CoefficientDomain) -> Result<()> {
        if let CoefficientDomain::Polynomial { degree_cap } = domain {
            if self.degree() > *degree_cap {
                return Err(Error::Domain(format!(
                    "polynomial of degree {} exceeds the degree cap {degree_cap}",
                    self.degree()
                )));
            }
        }
        Ok(())
    }
}

impl DocCoefficient for TrigPolynomial {
    fn to_json(&self) -> Value {
        let modes: Vec<Value> = self
            .modes()
            .iter()
            .map(|(k, a)| json!({"freq": k, "re": format_rational(&a.re), "im": format_rational(&a.im)}))
            .collect();
        json!({ "modes": modes })
    }

    fn from_json(v: &Value, dim: usize) -> Result<Self> {
        let mut f = TrigPolynomial::default();
        for m in array_field(v, "modes")? {
            let k: Vec<i32> = index_list(
                m.get("freq").ok_or_else(|| Error::Parse("mode without freq".into()))?,
                "freq",
            )?;
            if k.len() != dim {
                return Err(Error::Domain(format!("frequency {k:?} has length {}, D is {dim}", k.len())));
            }
            let re = match m.get("re") {
                Some(x) => rational_value(x, "re")?,
                None => Rational::from_integer(0.into()),
            };
            let im = match m.get("im") {
                Some(x) => rational_value(x, "im")?,
                None => Rational::from_integer(0.into()),
            };
            f.add_mode(k, gaussian(re, im));
        }
        Ok(f)
    }

    fn within(&self, domain: &CoefficientDomain) -> Result<()> {
        if let CoefficientDomain::Trig { freq_cap } = domain {
            if self.max_frequency() > *freq_cap {
                return Err(Error::Domain(format!(
                    "frequency {} exceeds the frequency cap {freq_cap}",
                    self.max_frequency()
                )));
            }
        }
        Ok(())
    }
}

/// A parsed document with its coefficient family resolved.
#[derive(Clone, Debug, PartialEq)]
pub enum FormDocument {
    Rational(MultiForm<Rational>),
    Polynomial(MultiForm<Polynomial>, u32),
    Trig(MultiForm<TrigPolynomial>, u32),
}

impl FormDocument {
    pub fn shape(&self) -> &Shape {
        match self {
            FormDocument::Rational(f) => f.shape(),
            FormDocument::Polynomial(f, _) => f.shape(),
            FormDocument::Trig(f, _) => f.shape(),
        }
    }

    pub fn domain(&self) -> CoefficientDomain {
        match self {
            FormDocument::Rational(_) => CoefficientDomain::Rational,
            FormDocument::Polynomial(_, c) => CoefficientDomain::Polynomial { degree_cap: *c },
            FormDocument::Trig(_, c) => CoefficientDomain::Trig { freq_cap: *c },
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            FormDocument::Rational(f) => form_to_json(f, &self.domain()),
            FormDocument::Polynomial(f, _) => form_to_json(f, &self.domain()),
            FormDocument::Trig(f, _) => form_to_json(f, &self.domain()),
        }
    }
}

pub fn form_to_json<C: DocCoefficient>(form: &MultiForm<C>, domain: &CoefficientDomain) -> Value {
    let terms: Vec<Value> = form
        .terms()
        .iter()
        .map(|(blocks, c)| {
            let b: Vec<Vec<usize>> = blocks.iter().map(|b| b.indices()).collect();
            json!({"blocks": b, "coeff": c.to_json()})
        })
        .collect();
    let mut m = Map::new();
    m.insert("D".into(), json!(form.shape().dim()));
    m.insert("signature".into(), json!(form.shape().signature()));
    m.insert("coefficient_domain".into(), domain.to_json());
    m.insert("terms".into(), Value::Array(terms));
    Value::Object(m)
}

fn parse_terms<C: DocCoefficient>(
    shape: Shape,
    terms: &[Value],
    domain: &CoefficientDomain,
) -> Result<MultiForm<C>> {
    let mut form = MultiForm::zero(shape.clone());
    for t in terms {
        let blocks = array_field(t, "blocks")?;
        let raw: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| index_list::<usize>(b, "block"))
            .collect::<Result<_>>()?;
        if let Some(i) = raw.iter().flatten().find(|i| **i >= shape.dim()) {
            return Err(Error::Domain(format!("index {i} outside 0..{}", shape.dim())));
        }
        let c = C::from_json(t.get("coeff").unwrap_or(&Value::Null), shape.dim())?;
        c.within(domain)?;
        form.add_raw(&raw, &c)?;
    }
    Ok(form)
}

/// Parses and validates a multi-form document.
pub fn parse_form(v: &Value) -> Result<FormDocument> {
    let dim = uint_field(v, "D")? as usize;
    let signature: Vec<usize> = index_list(
        v.get("signature").ok_or_else(|| Error::Parse("missing \"signature\"".into()))?,
        "signature",
    )?;
    let shape = Shape::new(dim, signature)?;
    let domain = CoefficientDomain::parse(
        v.get("coefficient_domain")
            .ok_or_else(|| Error::Parse("missing \"coefficient_domain\"".into()))?,
    )?;
    let terms = array_field(v, "terms")?;
    Ok(match domain {
        CoefficientDomain::Rational => FormDocument::Rational(parse_terms(shape, terms, &domain)?),
        CoefficientDomain::Polynomial { degree_cap } => {
            FormDocument::Polynomial(parse_terms(shape, terms, &domain)?, degree_cap)
        }
        CoefficientDomain::Trig { freq_cap } => FormDocument::Trig(parse_terms(shape, terms, &domain)?, freq_cap),
    })
}

pub fn parse_form_str(s: &str) -> Result<FormDocument> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    parse_form(&v)
}

/// Provenance block attached to every report.
pub fn provenance(module: &str, parameters: Value) -> Value {
    json!({
        "crate": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "module": module,
        "parameters": parameters,
    })
}
