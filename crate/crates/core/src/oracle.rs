//! Colored Jones polynomials of torus knots and their connected sums, used as
//! an independent check on the degree quasi-polynomials.
//!
//! Normalization: `J_{U,n} = 1` and `J_{K,2}` is the Jones polynomial, with
//! positive torus knots having positive degrees.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::Error;
use crate::expr::{normalize_mirrors, validate, KnotExpr};
use crate::laurent::LaurentPoly;
use crate::qpoly::{fit_from_samples, QuasiPoly};
use crate::rational::{to_ratio_string, Q};
use crate::slope::profile;

fn check_torus(p: i64, q: i64) -> Result<(), Error> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(Error::TorusParams { p, q });
    }
    Ok(())
}

/// Jones polynomial of `T(p, q)` from the closed form
/// `t^((p-1)(q-1)/2) (1 - t^(p+1) - t^(q+1) + t^(p+q)) / (1 - t^2)`.
pub fn classical_jones_torus(p: i64, q: i64) -> Result<LaurentPoly, Error> {
    check_torus(p, q)?;
    let num = LaurentPoly::from_terms([(0, 1), (p + 1, -1), (q + 1, -1), (p + q, 1)]);
    let den = LaurentPoly::from_terms([(0, 1), (2, -1)]);
    Ok(num.div_exact(&den)?.shift((p - 1) * (q - 1) / 2))
}

/// Unnormalized-sign Morton sum in the square-root variable `s = t^(1/2)`:
///
/// ```text
/// t^(pq(1-n^2)/4) / (t^(n/2) - t^(-n/2)) *
///     Σ_{k = -(n-1)/2}^{(n-1)/2} ( t^(pq k^2 - (p+q) k + 1/2) - t^(pq k^2 - (p-q) k - 1/2) )
/// ```
///
/// All exponents are tracked as multiples of `s`; `j = 2k` runs over
/// `-(n-1), -(n-3), ..., n-1`.
fn morton_sum(p: i64, q: i64, n: u32) -> Result<LaurentPoly, Error> {
    let n = n as i64;
    let pq = p * q;
    let mut numer = LaurentPoly::zero();
    for j in (-(n - 1)..=(n - 1)).step_by(2) {
        let quad = pq * (1 - n * n + j * j);
        // both exponents are even multiples of s/2, checked by construction
        let e1 = (quad - 2 * (p + q) * j + 2) / 2;
        let e2 = (quad - 2 * (p - q) * j - 2) / 2;
        numer = &numer + &LaurentPoly::from_terms([(e1, 1), (e2, -1)]);
    }
    let denom = LaurentPoly::from_terms([(n, 1), (-n, -1)]);
    numer.div_exact(&denom)
}

/// Normalized colored Jones polynomial `J_{T(p,q), n}(q)` for `p, q >= 2`.
///
/// Fails with a calibration error if the result needs half-integer powers
/// or if it breaks the `n = 1` / `n = 2` contract.
pub fn colored_jones_torus(p: i64, q: i64, n: u32) -> Result<LaurentPoly, Error> {
    check_torus(p, q)?;
    if n == 0 {
        return Err(Error::Calibration {
            p,
            q,
            n,
            detail: "color must be at least 1".into(),
        });
    }
    let in_s = morton_sum(p, q, n)?.invert_variable();
    let j = in_s.halve_exponents().ok_or_else(|| Error::Calibration {
        p,
        q,
        n,
        detail: format!(
            "half-integer exponent (s-degrees {:?}..{:?})",
            in_s.min_deg(),
            in_s.max_deg()
        ),
    })?;
    let expected = match n {
        1 => Some(LaurentPoly::one()),
        2 => Some(classical_jones_torus(p, q)?),
        _ => None,
    };
    if let Some(expected) = expected {
        if j != expected {
            return Err(Error::Calibration {
                p,
                q,
                n,
                detail: format!(
                    "got degrees {:?}..{:?}, expected {:?}..{:?}",
                    j.min_deg(),
                    j.max_deg(),
                    expected.min_deg(),
                    expected.max_deg()
                ),
            });
        }
    }
    Ok(j)
}

/// Colored Jones polynomial of a cable-free expression: torus leaves,
/// their mirrors (`q -> q^-1`) and connected sums (products).
pub fn expression_polynomial(k: &KnotExpr, n: u32) -> Result<LaurentPoly, Error> {
    if k.has_cable() {
        return Err(Error::OracleScope(format!(
            "{k} contains a cable; the oracle covers torus knots and their sums"
        )));
    }
    let v = validate(k);
    if !v.is_empty() {
        return Err(Error::Invalid(v));
    }
    poly_of(&normalize_mirrors(k), n)
}

fn poly_of(k: &KnotExpr, n: u32) -> Result<LaurentPoly, Error> {
    match k {
        KnotExpr::Unknot => Ok(LaurentPoly::one()),
        KnotExpr::Torus(p, q) if *p > 0 => colored_jones_torus(*p, *q, n),
        KnotExpr::Torus(p, q) => Ok(colored_jones_torus(-p, *q, n)?.invert_variable()),
        KnotExpr::Sum(a, b) => Ok(poly_of(a, n)?.mul(&poly_of(b, n)?)),
        KnotExpr::Mirror(_) | KnotExpr::Cable(..) => unreachable!("normalized and cable-free"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Degrees {
    pub max: i64,
    pub min: i64,
}

pub fn degrees_of_expression(k: &KnotExpr, n: u32) -> Result<Degrees, Error> {
    let j = expression_polynomial(k, n)?;
    match (j.max_deg(), j.min_deg()) {
        (Some(max), Some(min)) => Ok(Degrees { max, min }),
        _ => Err(Error::Calibration {
            p: 0,
            q: 0,
            n,
            detail: format!("{k} has zero colored Jones polynomial"),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSample {
    pub n: u32,
    pub max: i64,
    pub min: i64,
    #[serde(serialize_with = "ser_q")]
    pub delta: Q,
    #[serde(serialize_with = "ser_q")]
    pub delta_star: Q,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&to_ratio_string(x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub expression: KnotExpr,
    pub max_color: u32,
    pub samples: Vec<DegreeSample>,
    pub engine_delta: QuasiPoly,
    pub engine_delta_star: QuasiPoly,
    pub fitted_delta: Option<QuasiPoly>,
    pub fitted_delta_star: Option<QuasiPoly>,
    pub mismatches: Vec<String>,
}

impl CrossValidation {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub const MIN_FIT_COLOR: u32 = 6;

/// Samples oracle degrees for `n = 1..=max_color`, fits period-2
/// quasi-polynomials to both sequences and compares them with the engine's
/// `(δ, δ*)`.
pub fn cross_validate(k: &KnotExpr, max_color: u32) -> Result<CrossValidation, Error> {
    if max_color < MIN_FIT_COLOR {
        return Err(Error::OracleScope(format!(
            "max color {max_color} is below {MIN_FIT_COLOR}, too few samples for a period-2 fit"
        )));
    }
    if k.has_cable() {
        return Err(Error::OracleScope(format!(
            "{k} contains a cable; the oracle covers torus knots and their sums"
        )));
    }
    let pr = profile(k)?;
    let (delta, delta_star) = pr
        .delta
        .clone()
        .expect("cable-free expressions have exact degree quasi-polynomials");

    let mut mismatches = Vec::new();
    let mut samples = Vec::new();
    for n in 1..=max_color {
        let d = degrees_of_expression(&pr.expression, n)?;
        let (e, es) = (delta.eval(n.into()), delta_star.eval(n.into()));
        if Q::from_integer(BigInt::from(d.max)) != e {
            mismatches.push(format!(
                "n = {n}: max degree {} but δ(n) = {}",
                d.max,
                to_ratio_string(&e)
            ));
        }
        if Q::from_integer(BigInt::from(d.min)) != es {
            mismatches.push(format!(
                "n = {n}: min degree {} but δ*(n) = {}",
                d.min,
                to_ratio_string(&es)
            ));
        }
        samples.push(DegreeSample {
            n,
            max: d.max,
            min: d.min,
            delta: e,
            delta_star: es,
        });
    }

    let fit = |name: &str, pick: fn(&DegreeSample) -> i64, engine: &QuasiPoly, out: &mut Vec<String>| {
        let pts: Vec<(u64, Q)> = samples
            .iter()
            .map(|s| (u64::from(s.n), Q::from_integer(pick(s).into())))
            .collect();
        match fit_from_samples(&pts, 2) {
            Ok(f) => {
                if &f != engine {
                    out.push(format!(
                        "fitted {name} {} differs from engine {}",
                        serde_json::to_string(&f).expect("serializable"),
                        serde_json::to_string(engine).expect("serializable")
                    ));
                }
                Some(f)
            }
            Err(e) => {
                out.push(format!("{name} fit failed: {e}"));
                None
            }
        }
    };
    let fitted_delta = fit("δ", |s| s.max, &delta, &mut mismatches);
    let fitted_delta_star = fit("δ*", |s| s.min, &delta_star, &mut mismatches);

    Ok(CrossValidation {
        expression: pr.expression,
        max_color,
        samples,
        engine_delta: delta,
        engine_delta_star: delta_star,
        fitted_delta,
        fitted_delta_star,
        mismatches,
    })
}
