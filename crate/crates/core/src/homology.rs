//! Homology arithmetic behind the two surface constructions: the cable-space
//! surface `(aq - bp)[D] + b[A]` and the surface glued across the meridional
//! annulus of a connected sum.
//!
//! Classes on a boundary torus are written `mu [μ] + lambda [λ]` and their
//! slope is `mu / lambda`. A total boundary class is reduced to the slope of
//! one component by dividing out the gcd of its coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::Error;
use crate::slope::Slope;
use crate::rational::Q;

/// A 1-cycle `mu [μ] + lambda [λ]` on a boundary torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TorusClass {
    #[serde(serialize_with = "ser_big")]
    pub mu: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub lambda: BigInt,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl TorusClass {
    pub fn new(mu: impl Into<BigInt>, lambda: impl Into<BigInt>) -> Self {
        TorusClass {
            mu: mu.into(),
            lambda: lambda.into(),
        }
    }

    /// `gcd(mu, lambda)`: the number of parallel components in the class.
    pub fn multiplicity(&self) -> BigInt {
        self.mu.gcd(&self.lambda)
    }

    pub fn slope(&self) -> Result<Slope, Error> {
        if self.mu.is_zero() && self.lambda.is_zero() {
            return Err(Error::DegenerateClass);
        }
        if self.lambda.is_zero() {
            return Ok(Slope::Meridian);
        }
        Ok(Slope::Finite(Q::new(self.mu.clone(), self.lambda.clone())))
    }

    pub fn scale(&self, t: &BigInt) -> TorusClass {
        TorusClass {
            mu: &self.mu * t,
            lambda: &self.lambda * t,
        }
    }

    pub fn add(&self, other: &TorusClass) -> TorusClass {
        TorusClass {
            mu: &self.mu + &other.mu,
            lambda: &self.lambda + &other.lambda,
        }
    }
}

/// Relative class `d_copies [D] + a_copies [A]` in `H_2(M_{p,q}, ∂M_{p,q})`,
/// where `D` is the `q`-punctured meridian disk of the solid torus `V` and
/// `A` the cabling annulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CableSpaceClass {
    #[serde(serialize_with = "ser_big")]
    pub d_copies: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub a_copies: BigInt,
}

impl CableSpaceClass {
    /// `(aq - bp)[D] + b[A]`.
    pub fn for_slope(a: &BigInt, b: &BigInt, p: i64, q: i64) -> Self {
        CableSpaceClass {
            d_copies: a * q - b * p,
            a_copies: b.clone(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.d_copies.is_zero() && self.a_copies.is_zero()
    }

    /// Boundary on `∂V` in the `(μ_V, λ_V)` basis, using
    /// `[D ∩ ∂V] = [μ_V]` and `[A ∩ ∂V] = p[μ_V] + q[λ_V]`.
    pub fn outer_boundary(&self, p: i64, q: i64) -> TorusClass {
        TorusClass::new(1, 0)
            .scale(&self.d_copies)
            .add(&TorusClass::new(p, q).scale(&self.a_copies))
    }

    /// Boundary on `∂N(k)` in the `(μ, λ)` basis, using
    /// `[D ∩ ∂N(k)] = -q[μ]` and `[A ∩ ∂N(k)] = -pq[μ] - [λ]`.
    pub fn inner_boundary(&self, p: i64, q: i64) -> TorusClass {
        TorusClass::new(-q, 0)
            .scale(&self.d_copies)
            .add(&TorusClass::new(-p * q, -1).scale(&self.a_copies))
    }
}

/// Images of the outer and inner boundary classes in
/// `H_1(M_{p,q}) = Z[λ_V] ⊕ Z[μ]`, using `[μ_V] = q[μ]` and `[λ] = q[λ_V]`.
/// Returned as `(λ_V coefficient, μ coefficient)` pairs.
pub fn boundary_images_in_cable_space(
    class: &CableSpaceClass,
    p: i64,
    q: i64,
) -> ((BigInt, BigInt), (BigInt, BigInt)) {
    let outer = class.outer_boundary(p, q);
    let inner = class.inner_boundary(p, q);
    let outer_img = (outer.lambda.clone(), &outer.mu * q);
    let inner_img = (&inner.lambda * q, inner.mu.clone());
    (outer_img, inner_img)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CableBoundary {
    pub class: CableSpaceClass,
    pub outer_class: TorusClass,
    pub inner_class: TorusClass,
    #[serde(serialize_with = "ser_q")]
    pub outer: Q,
    #[serde(serialize_with = "ser_q")]
    pub inner: Q,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::rational::to_short_string(x))
}

fn finite(s: Slope) -> Q {
    match s {
        Slope::Finite(x) => x,
        Slope::Meridian => unreachable!("lambda coefficient is nonzero"),
    }
}

/// Slopes of the surface `(aq - bp)[D] + b[A]` on both boundary tori of the
/// cable space: `a/b` on `∂V` and `aq²/b` on `∂N(k)`.
pub fn cable_boundary_slopes(
    a: impl Into<BigInt>,
    b: impl Into<BigInt>,
    p: i64,
    q: i64,
) -> Result<CableBoundary, Error> {
    let (a, b) = (a.into(), b.into());
    if b.is_zero() {
        return Err(Error::DegenerateClass);
    }
    let class = CableSpaceClass::for_slope(&a, &b, p, q);
    if class.is_trivial() {
        return Err(Error::DegenerateClass);
    }
    let outer_class = class.outer_boundary(p, q);
    let inner_class = class.inner_boundary(p, q);
    // q > 1 and b != 0 keep both lambda coefficients nonzero
    let outer = finite(outer_class.slope()?);
    let inner = finite(inner_class.slope()?);
    Ok(CableBoundary {
        class,
        outer_class,
        inner_class,
        outer,
        inner,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluedBoundary {
    /// `m1 m2 ((p1 q2 + q1 p2)[μ] + q1 q2 [λ])`
    pub class: TorusClass,
    #[serde(serialize_with = "ser_q")]
    pub component_slope: Q,
    #[serde(serialize_with = "ser_big")]
    pub component_count: BigInt,
}

/// Boundary of the surface obtained by gluing `m2 q2` copies of `F1` (with
/// `m1` boundary components of slope `p1/q1`) to `m1 q1` copies of `F2`
/// across the decomposing annulus of `K1 # K2`.
///
/// Intersection numbers: `<μ, ∂F'> = m1 m2 q1 q2` and
/// `<∂F', λ> = m1 m2 (p1 q2 + q1 p2)`. With `k = gcd(p1 q2 + q1 p2, q1 q2)`
/// the boundary is `m1 m2 k` parallel curves of slope `p1/q1 + p2/q2`.
pub fn glued_boundary_class(
    m1: impl Into<BigInt>,
    p1: impl Into<BigInt>,
    q1: impl Into<BigInt>,
    m2: impl Into<BigInt>,
    p2: impl Into<BigInt>,
    q2: impl Into<BigInt>,
) -> Result<GluedBoundary, Error> {
    let (m1, p1, q1) = (m1.into(), p1.into(), q1.into());
    let (m2, p2, q2) = (m2.into(), p2.into(), q2.into());
    if !m1.is_positive() || !m2.is_positive() || !q1.is_positive() || !q2.is_positive() {
        return Err(Error::DegenerateClass);
    }
    let m = &m1 * &m2;
    // <∂F', λ> and <μ, ∂F'> before the m1 m2 factor
    let mu_coeff = &p1 * &q2 + &q1 * &p2;
    let lambda_coeff = &q1 * &q2;
    let class = TorusClass::new(&m * &mu_coeff, &m * &lambda_coeff);
    let k = mu_coeff.gcd(&lambda_coeff);
    let component_slope = Q::new(&mu_coeff / &k, &lambda_coeff / &k);
    Ok(GluedBoundary {
        class,
        component_slope,
        component_count: m * k,
    })
}
