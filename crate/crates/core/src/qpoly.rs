//! Quadratic quasi-polynomials `c2(n) n^2 + c1(n) n + c0(n)` whose
//! coefficients are periodic functions of `n` with exact rational values.
//!
//! Coefficient `ci(n)` is stored at index `n mod period`, so for period 2 the
//! even residue class is index 0. Values are always kept at minimal period.

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::{frac, int, ratio_string_vec, Q};
use crate::slope::SlopeSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawQuasiPoly")]
pub struct QuasiPoly {
    period: usize,
    #[serde(with = "ratio_string_vec")]
    c2: Vec<Q>,
    #[serde(with = "ratio_string_vec")]
    c1: Vec<Q>,
    #[serde(with = "ratio_string_vec")]
    c0: Vec<Q>,
}

#[derive(Deserialize)]
struct RawQuasiPoly {
    period: usize,
    #[serde(with = "ratio_string_vec")]
    c2: Vec<Q>,
    #[serde(with = "ratio_string_vec")]
    c1: Vec<Q>,
    #[serde(with = "ratio_string_vec")]
    c0: Vec<Q>,
}

impl TryFrom<RawQuasiPoly> for QuasiPoly {
    type Error = String;

    fn try_from(r: RawQuasiPoly) -> Result<Self, String> {
        if r.period == 0 {
            return Err("period must be positive".into());
        }
        if r.c2.len() != r.period || r.c1.len() != r.period || r.c0.len() != r.period {
            return Err(format!(
                "coefficient arrays must have length {}",
                r.period
            ));
        }
        Ok(QuasiPoly::new(r.c2, r.c1, r.c0).expect("checked"))
    }
}

impl QuasiPoly {
    /// Builds from per-residue coefficient arrays of equal length and
    /// reduces to the minimal period.
    pub fn new(c2: Vec<Q>, c1: Vec<Q>, c0: Vec<Q>) -> Result<Self, Error> {
        let period = c2.len();
        if period == 0 {
            return Err(Error::ZeroPeriod);
        }
        assert!(
            c1.len() == period && c0.len() == period,
            "coefficient arrays differ in length"
        );
        Ok(QuasiPoly { period, c2, c1, c0 }.canonical())
    }

    pub fn constant_coeffs(c2: Q, c1: Q, c0: Q) -> Self {
        QuasiPoly {
            period: 1,
            c2: vec![c2],
            c1: vec![c1],
            c0: vec![c0],
        }
    }

    pub fn zero() -> Self {
        Self::constant_coeffs(Q::zero(), Q::zero(), Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.period == 1 && self.c2[0].is_zero() && self.c1[0].is_zero() && self.c0[0].is_zero()
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn c2(&self) -> &[Q] {
        &self.c2
    }

    pub fn c1(&self) -> &[Q] {
        &self.c1
    }

    pub fn c0(&self) -> &[Q] {
        &self.c0
    }

    /// Coefficients `(c2, c1, c0)` in force at `n`.
    pub fn coeffs_at(&self, n: u64) -> (&Q, &Q, &Q) {
        let r = (n % self.period as u64) as usize;
        (&self.c2[r], &self.c1[r], &self.c0[r])
    }

    pub fn eval(&self, n: u64) -> Q {
        let (c2, c1, c0) = self.coeffs_at(n);
        let n = Q::from_integer(n.into());
        c2 * &n * &n + c1 * &n + c0
    }

    /// The same function written with period `period`, which must be a
    /// multiple of the current one. Not canonical.
    pub fn with_period(&self, period: usize) -> Self {
        assert!(period > 0 && period.is_multiple_of(self.period));
        let stretch = |v: &Vec<Q>| (0..period).map(|i| v[i % self.period].clone()).collect();
        QuasiPoly {
            period,
            c2: stretch(&self.c2),
            c1: stretch(&self.c1),
            c0: stretch(&self.c0),
        }
    }

    fn canonical(self) -> Self {
        let n = self.period;
        for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
            let repeats = |v: &Vec<Q>| (0..n).all(|i| v[i] == v[i % d]);
            if repeats(&self.c2) && repeats(&self.c1) && repeats(&self.c0) {
                return QuasiPoly {
                    period: d,
                    c2: self.c2[..d].to_vec(),
                    c1: self.c1[..d].to_vec(),
                    c0: self.c0[..d].to_vec(),
                };
            }
        }
        self
    }

    pub fn add(&self, other: &QuasiPoly) -> QuasiPoly {
        let period = self.period.lcm(&other.period);
        let a = self.with_period(period);
        let b = other.with_period(period);
        let zip = |x: &[Q], y: &[Q]| x.iter().zip(y).map(|(u, v)| u + v).collect();
        QuasiPoly {
            period,
            c2: zip(&a.c2, &b.c2),
            c1: zip(&a.c1, &b.c1),
            c0: zip(&a.c0, &b.c0),
        }
        .canonical()
    }

    /// Pointwise negation; takes `δ*` of a knot to `δ` of its mirror and back.
    pub fn negate_reindex(&self) -> QuasiPoly {
        let neg = |v: &Vec<Q>| v.iter().map(|x| -x).collect();
        QuasiPoly {
            period: self.period,
            c2: neg(&self.c2),
            c1: neg(&self.c1),
            c0: neg(&self.c0),
        }
    }

    /// `{ 4 c2(r) : r mod period }`
    pub fn leading_set(&self) -> SlopeSet {
        self.c2.iter().map(|c| c * int(4)).collect()
    }
}

impl std::ops::Add for &QuasiPoly {
    type Output = QuasiPoly;

    fn add(self, rhs: &QuasiPoly) -> QuasiPoly {
        QuasiPoly::add(self, rhs)
    }
}

impl std::ops::Neg for &QuasiPoly {
    type Output = QuasiPoly;

    fn neg(self) -> QuasiPoly {
        self.negate_reindex()
    }
}

/// Maximal and minimal degree of the colored Jones function of the positive
/// torus knot `T(p, q)`:
///
/// ```text
/// δ(n)  = pq/4 n^2 - n/2 - (pq-2)/4 - (1 + (-1)^n)(p-2)(q-2)/8
/// δ*(n) = (p-1)(q-1)/2 n - (p-1)(q-1)/2
/// ```
///
/// The `(1 + (-1)^n)` term lives in the even residue class, so `δ` has period
/// 2 unless `p` or `q` is 2.
pub fn torus_delta(p: i64, q: i64) -> Result<(QuasiPoly, QuasiPoly), Error> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(Error::TorusParams { p, q });
    }
    let pq = p * q;
    let c2 = frac(pq, 4);
    let c1 = frac(-1, 2);
    let c0_odd = frac(-(pq - 2), 4);
    let c0_even = &c0_odd - frac(2 * (p - 2) * (q - 2), 8);
    let delta = QuasiPoly::new(
        vec![c2.clone(), c2],
        vec![c1.clone(), c1],
        vec![c0_even, c0_odd],
    )?;
    let g = frac((p - 1) * (q - 1), 2);
    let delta_star = QuasiPoly::constant_coeffs(Q::zero(), g.clone(), -g);
    Ok((delta, delta_star))
}

/// Recovers the quadratic quasi-polynomial of the given period through the
/// samples. Each residue class is solved exactly from its first three
/// distinct abscissae; every other sample must then agree.
pub fn fit_from_samples(samples: &[(u64, Q)], period: usize) -> Result<QuasiPoly, Error> {
    if period == 0 {
        return Err(Error::ZeroPeriod);
    }
    let mut c2 = Vec::with_capacity(period);
    let mut c1 = Vec::with_capacity(period);
    let mut c0 = Vec::with_capacity(period);
    for r in 0..period {
        let mut class: Vec<&(u64, Q)> = Vec::new();
        for s in samples.iter().filter(|(n, _)| (*n % period as u64) as usize == r) {
            if let Some(prev) = class.iter().find(|(m, _)| *m == s.0) {
                if prev.1 != s.1 {
                    return Err(Error::InconsistentSamples { n: s.0 });
                }
            } else {
                class.push(s);
            }
        }
        if class.len() < 3 {
            return Err(Error::Underdetermined {
                residue: r,
                period,
                have: class.len(),
            });
        }
        let (a, b, c) = solve_quadratic([class[0], class[1], class[2]]);
        for (n, v) in &class[3..] {
            let x = Q::from_integer((*n).into());
            if &(&a * &x * &x + &b * &x + &c) != v {
                return Err(Error::InconsistentSamples { n: *n });
            }
        }
        c2.push(a);
        c1.push(b);
        c0.push(c);
    }
    QuasiPoly::new(c2, c1, c0)
}

/// Newton divided differences through three points with distinct abscissae.
fn solve_quadratic(pts: [&(u64, Q); 3]) -> (Q, Q, Q) {
    let x: Vec<Q> = pts.iter().map(|(n, _)| Q::from_integer((*n).into())).collect();
    let y: Vec<&Q> = pts.iter().map(|(_, v)| v).collect();
    let d01 = (y[1] - y[0]) / (&x[1] - &x[0]);
    let d12 = (y[2] - y[1]) / (&x[2] - &x[1]);
    let d012 = (&d12 - &d01) / (&x[2] - &x[0]);
    // y0 + d01 (t - x0) + d012 (t - x0)(t - x1)
    let a = d012.clone();
    let b = &d01 - &d012 * (&x[0] + &x[1]);
    let c = y[0] - &d01 * &x[0] + &d012 * &x[0] * &x[1];
    (a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Q {
        frac(n, d)
    }

    #[test]
    fn eval_torus_examples() {
        let (d, ds) = torus_delta(2, 3).unwrap();
        assert_eq!(d.eval(2), int(4));
        assert_eq!(d.eval(3), int(11));
        assert_eq!(ds.eval(2), int(1));
        assert!(QuasiPoly::zero().eval(17).is_zero());

        let (d, ds) = torus_delta(3, 5).unwrap();
        assert_eq!(d.eval(2), int(10));
        assert_eq!(ds.eval(2), int(4));
        assert_eq!(d.eval(3), int(29));
        assert_eq!(d.period(), 2);
        assert_eq!(ds.period(), 1);
    }

    #[test]
    fn torus_delta_shape() {
        let (d, _) = torus_delta(3, 5).unwrap();
        assert_eq!(d.c2(), &[q(15, 4), q(15, 4)]);
        assert_eq!(d.c1(), &[q(-1, 2), q(-1, 2)]);
        // even: -(13)/4 - 2*1*3/8 = -4, odd: -13/4
        assert_eq!(d.c0(), &[int(-4), q(-13, 4)]);
        // p = 2 kills the periodic term
        let (d, _) = torus_delta(2, 7).unwrap();
        assert_eq!(d.period(), 1);
        assert!(torus_delta(2, 4).is_err());
        assert!(torus_delta(1, 3).is_err());
        assert!(torus_delta(-2, 3).is_err());
    }

    #[test]
    fn add_examples() {
        let (t23, _) = torus_delta(2, 3).unwrap();
        let (t35, _) = torus_delta(3, 5).unwrap();
        assert_eq!(t23.add(&t23).eval(2), int(8));
        assert_eq!(t23.add(&QuasiPoly::zero()), t23);
        let s = t23.add(&t35);
        assert_eq!(s.period(), 2);
        assert_eq!(s.c2(), &[q(21, 4), q(21, 4)]);
    }

    #[test]
    fn negate_examples() {
        let (_, ds) = torus_delta(2, 3).unwrap();
        let n = ds.negate_reindex();
        assert_eq!(n.c1(), &[int(-1)]);
        assert_eq!(n.c0(), &[int(1)]);
        assert_eq!(n.negate_reindex(), ds);
        assert_eq!(QuasiPoly::zero().negate_reindex(), QuasiPoly::zero());
    }

    #[test]
    fn leading_set_examples() {
        let (d, ds) = torus_delta(2, 3).unwrap();
        assert_eq!(d.leading_set(), SlopeSet::from_iter([int(6)]));
        assert_eq!(ds.leading_set(), SlopeSet::from_iter([int(0)]));
        let (d25, _) = torus_delta(2, 5).unwrap();
        assert_eq!(d.add(&d25).leading_set(), SlopeSet::from_iter([int(16)]));
    }

    #[test]
    fn canonical_period() {
        let f = QuasiPoly::new(
            vec![int(1), int(1), int(1), int(1)],
            vec![int(0), int(2), int(0), int(2)],
            vec![int(5); 4],
        )
        .unwrap();
        assert_eq!(f.period(), 2);
        assert!(QuasiPoly::new(vec![], vec![], vec![]).is_err());
    }

    #[test]
    fn fit_examples() {
        let (d, _) = torus_delta(2, 3).unwrap();
        let samples: Vec<_> = (1..=6).map(|n| (n, d.eval(n))).collect();
        assert_eq!(fit_from_samples(&samples, 2).unwrap(), d);

        let zeros: Vec<_> = (1..=6).map(|n| (n, int(0))).collect();
        assert_eq!(fit_from_samples(&zeros, 1).unwrap(), QuasiPoly::zero());
    }

    #[test]
    fn fit_errors() {
        let (d, _) = torus_delta(3, 5).unwrap();
        let mut samples: Vec<_> = (1..=8).map(|n| (n, d.eval(n))).collect();
        // a period-2 function is not a single quadratic
        assert!(matches!(
            fit_from_samples(&samples, 1),
            Err(Error::InconsistentSamples { n: 4 })
        ));
        samples[6].1 += int(1);
        assert_eq!(
            fit_from_samples(&samples, 2),
            Err(Error::InconsistentSamples { n: 7 })
        );
        let few: Vec<_> = (1..=5).map(|n| (n, d.eval(n))).collect();
        assert_eq!(
            fit_from_samples(&few, 2),
            Err(Error::Underdetermined {
                residue: 0,
                period: 2,
                have: 2
            })
        );
        let dup = vec![(1, int(0)), (1, int(1)), (2, int(0)), (3, int(0))];
        assert_eq!(
            fit_from_samples(&dup, 1),
            Err(Error::InconsistentSamples { n: 1 })
        );
    }

    #[test]
    fn json_shape() {
        let (d, _) = torus_delta(3, 5).unwrap();
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "period": 2,
                "c2": ["15/4", "15/4"],
                "c1": ["-1/2", "-1/2"],
                "c0": ["-4/1", "-13/4"],
            })
        );
        let back: QuasiPoly = serde_json::from_value(v).unwrap();
        assert_eq!(back, d);
        let bad = serde_json::json!({"period": 2, "c2": ["1"], "c1": ["1"], "c0": ["1"]});
        assert!(serde_json::from_value::<QuasiPoly>(bad).is_err());
    }

    #[test]
    fn torus_values_integral() {
        for (p, qq) in [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (5, 7), (2, 9)] {
            let (d, ds) = torus_delta(p, qq).unwrap();
            for n in 1..=50 {
                assert!(d.eval(n).is_integer(), "T({p},{qq}) n={n}");
                assert!(ds.eval(n).is_integer());
            }
        }
    }

    fn arb_q() -> impl Strategy<Value = Q> {
        (-50i64..50, 1i64..12).prop_map(|(n, d)| frac(n, d))
    }

    fn arb_qpoly() -> impl Strategy<Value = QuasiPoly> {
        (1usize..=4).prop_flat_map(|p| {
            (
                prop::collection::vec(arb_q(), p),
                prop::collection::vec(arb_q(), p),
                prop::collection::vec(arb_q(), p),
            )
                .prop_map(|(a, b, c)| QuasiPoly::new(a, b, c).unwrap())
        })
    }

    proptest! {
        #[test]
        fn add_commutes_and_associates(f in arb_qpoly(), g in arb_qpoly(), h in arb_qpoly()) {
            prop_assert_eq!(f.add(&g), g.add(&f));
            prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
        }

        #[test]
        fn eval_is_additive(f in arb_qpoly(), g in arb_qpoly(), n in 1u64..40) {
            prop_assert_eq!(f.add(&g).eval(n), f.eval(n) + g.eval(n));
        }

        #[test]
        fn period_refinement_is_invisible(f in arb_qpoly(), k in 1usize..4, n in 1u64..40) {
            let g = f.with_period(f.period() * k);
            prop_assert_eq!(g.eval(n), f.eval(n));
            prop_assert_eq!(g.leading_set(), f.leading_set());
            prop_assert_eq!(g.canonical(), f);
        }

        #[test]
        fn leading_set_of_sum_is_in_sumset(f in arb_qpoly(), g in arb_qpoly()) {
            let sum = f.add(&g).leading_set();
            let sumset = f.leading_set().sumset(&g.leading_set());
            prop_assert!(sum.is_subset(&sumset));
            if f.period() == 1 && g.period() == 1 {
                prop_assert_eq!(sum, sumset);
            }
        }

        #[test]
        fn fit_inverts_sampling(f in arb_qpoly()) {
            let p = f.period();
            let samples: Vec<_> = (1..=(3 * p as u64 + 2)).map(|n| (n, f.eval(n))).collect();
            prop_assert_eq!(fit_from_samples(&samples, p).unwrap(), f);
        }
    }
}
