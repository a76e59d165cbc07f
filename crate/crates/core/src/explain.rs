//! Derivation trace: for every node, the rule applied and the homology
//! arithmetic producing each generated boundary slope.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Error;
use crate::expr::{normalize_mirrors, validate, KnotExpr};
use crate::homology::{cable_boundary_slopes, glued_boundary_class, CableBoundary, GluedBoundary};
use crate::rational::to_short_string;
use crate::slope::{profile_with, ConditionStatus, ProfileOptions, SlopeSet};

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Derivation {
    /// Surfaces with `m1`, `m2` boundary curves glued across the annulus.
    Glued {
        m1: u32,
        m2: u32,
        left: String,
        right: String,
        result: GluedBoundary,
    },
    CableSurface {
        companion_slope: String,
        result: CableBoundary,
    },
    CablingAnnulus {
        slope: String,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct Step {
    pub node: KnotExpr,
    pub rule: &'static str,
    pub js_upper: SlopeSet,
    pub js_star_upper: SlopeSet,
    pub bs_gen: SlopeSet,
    pub condition_delta: ConditionStatus,
    pub derivations: Vec<Derivation>,
}

/// Bottom-up trace over the mirror-normalized expression.
pub fn explain(k: &KnotExpr, opts: ProfileOptions) -> Result<Vec<Step>, Error> {
    let v = validate(k);
    if !v.is_empty() {
        return Err(Error::Invalid(v));
    }
    let mut steps = Vec::new();
    walk(&normalize_mirrors(k), opts, &mut steps)?;
    Ok(steps)
}

// A surface with boundary slope p/q, p != 0, has an even number of
// boundary curves; 1 or 2 is the least consistent choice.
fn curves_for(p: &BigInt) -> u32 {
    if p.is_zero() {
        1
    } else {
        2
    }
}

fn walk(k: &KnotExpr, opts: ProfileOptions, steps: &mut Vec<Step>) -> Result<SlopeSet, Error> {
    let mut derivations = Vec::new();
    let rule = match k {
        KnotExpr::Unknot => "trivial knot",
        KnotExpr::Torus(..) => "torus knot formulas",
        KnotExpr::Mirror(_) => unreachable!("normalized"),
        KnotExpr::Sum(a, b) => {
            let ba = walk(a, opts, steps)?;
            let bb = walk(b, opts, steps)?;
            for x in ba.iter() {
                for y in bb.iter() {
                    let (m1, m2) = (curves_for(x.numer()), curves_for(y.numer()));
                    let result = glued_boundary_class(
                        m1,
                        x.numer().clone(),
                        x.denom().clone(),
                        m2,
                        y.numer().clone(),
                        y.denom().clone(),
                    )?;
                    derivations.push(Derivation::Glued {
                        m1,
                        m2,
                        left: to_short_string(x),
                        right: to_short_string(y),
                        result,
                    });
                }
            }
            "connected sum"
        }
        KnotExpr::Cable(p, q, c) => {
            let bc = walk(c, opts, steps)?;
            derivations.push(Derivation::CablingAnnulus {
                slope: (p * q).to_string(),
            });
            for a in bc.iter() {
                let result = cable_boundary_slopes(a.numer().clone(), a.denom().clone(), *p, *q)?;
                derivations.push(Derivation::CableSurface {
                    companion_slope: to_short_string(a),
                    result,
                });
            }
            "cabling"
        }
    };
    let pr = profile_with(k, opts)?;
    let bs = pr.bs_gen.clone();
    steps.push(Step {
        node: pr.expression,
        rule,
        js_upper: pr.js_upper,
        js_star_upper: pr.js_star_upper,
        bs_gen: pr.bs_gen,
        condition_delta: pr.condition_delta,
        derivations,
    });
    Ok(bs)
}

pub fn steps_text(steps: &[Step]) -> String {
    let mut s = String::new();
    for (i, st) in steps.iter().enumerate() {
        let _ = writeln!(s, "[{}] {}  ({})", i + 1, st.node, st.rule);
        let _ = writeln!(
            s,
            "    js <= {}   js* <= {}   bs >= {}   Condition delta: {:?}",
            st.js_upper, st.js_star_upper, st.bs_gen, st.condition_delta
        );
        for d in &st.derivations {
            match d {
                Derivation::Glued {
                    m1,
                    m2,
                    left,
                    right,
                    result,
                } => {
                    let _ = writeln!(
                        s,
                        "    glue {left} (m1={m1}) with {right} (m2={m2}): boundary {}[mu] + {}[lambda] = {} curve(s) of slope {}",
                        result.class.mu,
                        result.class.lambda,
                        result.component_count,
                        to_short_string(&result.component_slope)
                    );
                }
                Derivation::CableSurface {
                    companion_slope,
                    result,
                } => {
                    let _ = writeln!(
                        s,
                        "    {companion_slope} on companion: {}[D] + {}[A]; outer {}[mu_V] + {}[lambda_V] slope {}; inner {}[mu] + {}[lambda] slope {}",
                        result.class.d_copies,
                        result.class.a_copies,
                        result.outer_class.mu,
                        result.outer_class.lambda,
                        to_short_string(&result.outer),
                        result.inner_class.mu,
                        result.inner_class.lambda,
                        to_short_string(&result.inner)
                    );
                }
                Derivation::CablingAnnulus { slope } => {
                    let _ = writeln!(s, "    cabling annulus: slope {slope}");
                }
            }
        }
    }
    s
}
