//! Slope sets and the recursive slope calculus over graph-knot expressions.
//!
//! For every node the engine carries an upper set for the Jones slopes
//! `js` and `js*`, a generated set of boundary slopes, and (when it can be
//! computed exactly) the degree quasi-polynomials `(δ, δ*)`. Connected sum
//! and cabling only give inclusions for Jones slopes, so `js_upper` is an
//! upper bound except where `δ` is known.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::expr::{normalize_mirrors, validate, KnotExpr};
use crate::qpoly::{torus_delta, QuasiPoly};
use crate::rational::{half, int, is_reduced, to_short_string, Q};

/// A slope `p/q` on a boundary torus, or the meridian `1/0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slope {
    Finite(Q),
    Meridian,
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(x) => f.write_str(&to_short_string(x)),
            Slope::Meridian => f.write_str("inf"),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Finite set of reduced rationals, optionally with the meridian.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SlopeSet {
    elements: BTreeSet<Q>,
    includes_meridian: bool,
}

impl SlopeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(x: Q) -> Self {
        std::iter::once(x).collect()
    }

    pub fn insert(&mut self, x: Q) {
        debug_assert!(is_reduced(&x));
        self.elements.insert(x);
    }

    pub fn set_meridian(&mut self, on: bool) {
        self.includes_meridian = on;
    }

    pub fn includes_meridian(&self) -> bool {
        self.includes_meridian
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.elements.contains(x)
    }

    pub fn contains_slope(&self, s: &Slope) -> bool {
        match s {
            Slope::Finite(x) => self.contains(x),
            Slope::Meridian => self.includes_meridian,
        }
    }

    /// Finite elements in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = &Q> {
        self.elements.iter()
    }

    pub fn slopes(&self) -> Vec<Slope> {
        let mut v: Vec<Slope> = self.iter().cloned().map(Slope::Finite).collect();
        if self.includes_meridian {
            v.push(Slope::Meridian);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.elements.len() + usize::from(self.includes_meridian)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &SlopeSet) -> bool {
        (!self.includes_meridian || other.includes_meridian)
            && self.elements.is_subset(&other.elements)
    }

    pub fn union(&self, other: &SlopeSet) -> SlopeSet {
        SlopeSet {
            elements: self.elements.union(&other.elements).cloned().collect(),
            includes_meridian: self.includes_meridian || other.includes_meridian,
        }
    }

    /// `{ a + b }` over finite elements; the meridian is dropped.
    pub fn sumset(&self, other: &SlopeSet) -> SlopeSet {
        self.iter()
            .flat_map(|a| other.iter().map(move |b| sum_slopes(a, b)))
            .collect()
    }

    /// Image of the finite part under `f`; the meridian is dropped.
    pub fn map(&self, f: impl Fn(&Q) -> Q) -> SlopeSet {
        self.iter().map(f).collect()
    }

    /// `-X`; the meridian is its own negative.
    pub fn negated(&self) -> SlopeSet {
        SlopeSet {
            elements: self.iter().map(|x| -x).collect(),
            includes_meridian: self.includes_meridian,
        }
    }
}

impl FromIterator<Q> for SlopeSet {
    fn from_iter<I: IntoIterator<Item = Q>>(it: I) -> Self {
        SlopeSet {
            elements: it.into_iter().collect(),
            includes_meridian: false,
        }
    }
}

impl fmt::Display for SlopeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.slopes().iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Serialize for SlopeSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.slopes().serialize(s)
    }
}

/// Slope of the glued surface: `p1/q1 + p2/q2` in lowest terms.
pub fn sum_slopes(a: &Q, b: &Q) -> Q {
    a + b
}

/// Inner slope `a q^2 / b` of the cable-space surface over outer slope `a/b`.
pub fn cable_transform(a: &Q, q: i64) -> Q {
    let q = int(q);
    a * &q * &q
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConditionStatus {
    VerifiedDirect,
    PropagatedBySumRule,
    PropagatedByCableRule,
    Unknown,
}

impl ConditionStatus {
    pub fn holds(self) -> bool {
        !matches!(self, ConditionStatus::Unknown)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseWitness {
    pub clause: u8,
    /// `"delta"` or `"delta_star"`.
    pub function: &'static str,
    pub residue: Option<usize>,
    pub value: String,
}

/// The three clauses of Condition δ, with a witness for each failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseReport {
    pub period_at_most_two: bool,
    pub sign_conditions: bool,
    pub integrality: bool,
    pub witnesses: Vec<ClauseWitness>,
}

impl ClauseReport {
    pub fn holds(&self) -> bool {
        self.period_at_most_two && self.sign_conditions && self.integrality
    }
}

/// Checks
/// 1. `δ` and `δ*` have period at most 2,
/// 2. `c1(n) + 1/2 <= 0` and `c1*(n) - 1/2 >= 0`,
/// 3. `4 c2(n)` and `4 c2*(n)` are integers.
pub fn check_condition_delta(delta: &QuasiPoly, delta_star: &QuasiPoly) -> ClauseReport {
    let mut witnesses = Vec::new();
    let mut clause1 = true;
    for (name, f) in [("delta", delta), ("delta_star", delta_star)] {
        if f.period() > 2 {
            clause1 = false;
            witnesses.push(ClauseWitness {
                clause: 1,
                function: name,
                residue: None,
                value: format!("period {}", f.period()),
            });
        }
    }

    let mut clause2 = true;
    for (r, c) in delta.c1().iter().enumerate() {
        let v = c + half();
        if v.is_positive() {
            clause2 = false;
            witnesses.push(ClauseWitness {
                clause: 2,
                function: "delta",
                residue: Some(r),
                value: format!("c1 + 1/2 = {}", to_short_string(&v)),
            });
        }
    }
    for (r, c) in delta_star.c1().iter().enumerate() {
        let v = c - half();
        if v.is_negative() {
            clause2 = false;
            witnesses.push(ClauseWitness {
                clause: 2,
                function: "delta_star",
                residue: Some(r),
                value: format!("c1* - 1/2 = {}", to_short_string(&v)),
            });
        }
    }

    let mut clause3 = true;
    for (name, f) in [("delta", delta), ("delta_star", delta_star)] {
        for (r, c) in f.c2().iter().enumerate() {
            let v = c * int(4);
            if !v.is_integer() {
                clause3 = false;
                witnesses.push(ClauseWitness {
                    clause: 3,
                    function: name,
                    residue: Some(r),
                    value: format!("4 c2 = {}", to_short_string(&v)),
                });
            }
        }
    }

    ClauseReport {
        period_at_most_two: clause1,
        sign_conditions: clause2,
        integrality: clause3,
        witnesses,
    }
}

/// Which of the two cabling lemmas' sides a check belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckSide {
    /// The companion satisfies Condition δ.
    Companion,
    /// `4 c2 != p/q` for the companion.
    Jones,
    /// The same test for the mirrored cable, used to bound `js*`.
    MirrorJones,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub node: KnotExpr,
    pub side: CheckSide,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail")]
pub enum Verdict {
    VerifiedSupersetLevel,
    /// A cabling hypothesis failed, so its Jones-slope bound is not available.
    HypothesisFailure(String),
    /// A cable companion is not known to satisfy Condition δ.
    NotEvaluated(String),
    /// Every hypothesis held but some Jones slope is missing from `bs_gen`.
    ContainmentFailure(Vec<Slope>),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::VerifiedSupersetLevel)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::VerifiedSupersetLevel => write!(f, "Verified (superset level)"),
            Verdict::HypothesisFailure(d) => write!(f, "HypothesisFailure: {d}"),
            Verdict::NotEvaluated(d) => write!(f, "NotEvaluated: {d}"),
            Verdict::ContainmentFailure(m) => {
                let m: Vec<String> = m.iter().map(|s| s.to_string()).collect();
                write!(f, "ContainmentFailure: {} not in bs_gen", m.join(", "))
            }
        }
    }
}

/// One line of the Condition-δ derivation, bottom-up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrailEntry {
    pub node: KnotExpr,
    pub rule: &'static str,
    pub condition_delta: ConditionStatus,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProfileOptions {
    /// Add the meridian to `bs_gen` of every connected sum.
    pub include_meridian: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeProfile {
    pub expression: KnotExpr,
    pub js_upper: SlopeSet,
    pub js_star_upper: SlopeSet,
    pub bs_gen: SlopeSet,
    pub delta: Option<(QuasiPoly, QuasiPoly)>,
    pub condition_delta: ConditionStatus,
    pub clauses: Option<ClauseReport>,
    pub hypothesis_checks: Vec<HypothesisCheck>,
    pub trail: Vec<TrailEntry>,
    pub verdict: Verdict,
}

impl SlopeProfile {
    pub fn jones_slopes(&self) -> SlopeSet {
        self.js_upper.union(&self.js_star_upper)
    }
}

pub fn profile(k: &KnotExpr) -> Result<SlopeProfile, Error> {
    profile_with(k, ProfileOptions::default())
}

/// Runs the recursion on a validated expression. Mirrors are pushed to the
/// leaves first; the returned profile describes the normalized expression.
pub fn profile_with(k: &KnotExpr, opts: ProfileOptions) -> Result<SlopeProfile, Error> {
    let violations = validate(k);
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    let k = normalize_mirrors(k);
    let mut acc = Accum::default();
    let node = eval(&k, opts, &mut acc);

    let clauses = node
        .delta
        .as_ref()
        .map(|(d, ds)| check_condition_delta(d, ds));
    let jones = node.js.union(&node.js_star);
    let verdict = if let Some(c) = acc.checks.iter().find(|c| !c.passed) {
        Verdict::HypothesisFailure(format!("{}: {}", c.node, c.detail))
    } else if let Some(reason) = acc.not_evaluated {
        Verdict::NotEvaluated(reason)
    } else if jones.is_subset(&node.bs) {
        Verdict::VerifiedSupersetLevel
    } else {
        Verdict::ContainmentFailure(
            jones
                .slopes()
                .into_iter()
                .filter(|s| !node.bs.contains_slope(s))
                .collect(),
        )
    };

    Ok(SlopeProfile {
        expression: k,
        js_upper: node.js,
        js_star_upper: node.js_star,
        bs_gen: node.bs,
        delta: node.delta,
        condition_delta: node.status,
        clauses,
        hypothesis_checks: acc.checks,
        trail: acc.trail,
        verdict,
    })
}

#[derive(Default)]
struct Accum {
    checks: Vec<HypothesisCheck>,
    trail: Vec<TrailEntry>,
    not_evaluated: Option<String>,
}

struct Node {
    js: SlopeSet,
    js_star: SlopeSet,
    bs: SlopeSet,
    delta: Option<(QuasiPoly, QuasiPoly)>,
    status: ConditionStatus,
}

fn direct_status(delta: &QuasiPoly, delta_star: &QuasiPoly) -> ConditionStatus {
    if check_condition_delta(delta, delta_star).holds() {
        ConditionStatus::VerifiedDirect
    } else {
        ConditionStatus::Unknown
    }
}

fn eval(k: &KnotExpr, opts: ProfileOptions, acc: &mut Accum) -> Node {
    let (node, rule) = match k {
        KnotExpr::Unknot => {
            let z = QuasiPoly::zero();
            let zero = SlopeSet::singleton(Q::zero());
            let node = Node {
                js: zero.clone(),
                js_star: zero.clone(),
                bs: zero,
                // c1 = 0 violates the sign clause, so the unknot is handled
                // as its own base case rather than a member of the class.
                status: direct_status(&z, &z),
                delta: Some((z.clone(), z)),
            };
            (node, "trivial knot")
        }
        KnotExpr::Torus(p, q) => {
            let (d, ds) = torus_delta(p.abs(), *q).expect("validated torus parameters");
            let (d, ds) = if *p > 0 { (d, ds) } else { (-&ds, -&d) };
            let pq = int(p * q);
            let node = Node {
                js: d.leading_set(),
                js_star: ds.leading_set(),
                bs: [Q::zero(), pq].into_iter().collect(),
                status: direct_status(&d, &ds),
                delta: Some((d, ds)),
            };
            (node, "torus knot formulas")
        }
        KnotExpr::Sum(a, b) => {
            let a = eval(a, opts, acc);
            let b = eval(b, opts, acc);
            let delta = match (&a.delta, &b.delta) {
                (Some((da, dsa)), Some((db, dsb))) => Some((da + db, dsa + dsb)),
                _ => None,
            };
            let sum_js = a.js.sumset(&b.js);
            let sum_js_star = a.js_star.sumset(&b.js_star);
            let (js, js_star) = match &delta {
                Some((d, ds)) => {
                    let (js, js_star) = (d.leading_set(), ds.leading_set());
                    debug_assert!(js.is_subset(&sum_js) && js_star.is_subset(&sum_js_star));
                    (js, js_star)
                }
                None => (sum_js, sum_js_star),
            };
            let mut bs = a.bs.sumset(&b.bs);
            bs.set_meridian(opts.include_meridian);
            let mut status = if a.status.holds() && b.status.holds() {
                ConditionStatus::PropagatedBySumRule
            } else {
                ConditionStatus::Unknown
            };
            if let Some((d, ds)) = &delta {
                if check_condition_delta(d, ds).holds() {
                    status = ConditionStatus::VerifiedDirect;
                }
            }
            let node = Node {
                js,
                js_star,
                bs,
                delta,
                status,
            };
            (node, "connected sum")
        }
        KnotExpr::Cable(p, q, c) => {
            let child = eval(c, opts, acc);
            let (p, q) = (*p, *q);
            let mut ok = true;

            let companion_ok = child.status.holds();
            acc.checks.push(HypothesisCheck {
                node: k.clone(),
                side: CheckSide::Companion,
                passed: companion_ok,
                detail: format!("companion Condition δ: {:?}", child.status),
            });
            if !companion_ok {
                ok = false;
                acc.not_evaluated.get_or_insert_with(|| {
                    format!("{k}: companion {c} is not known to satisfy Condition δ")
                });
            }

            let (js, pass) = cable_jones_upper(p, q, &child.js);
            acc.checks.push(forbidden_check(k, CheckSide::Jones, p, q, &child.js, pass));
            ok &= pass;

            // js* via the mirror: js*(C) = -js(C*) with C* = C(-p, q; K*)
            // and js(K*) = -js*(K).
            let mirror_companion = child.js_star.negated();
            let (js_mirror, pass) = cable_jones_upper(-p, q, &mirror_companion);
            acc.checks.push(forbidden_check(
                k,
                CheckSide::MirrorJones,
                -p,
                q,
                &mirror_companion,
                pass,
            ));
            ok &= pass;

            let mut bs = child.bs.map(|a| cable_transform(a, q));
            bs.insert(int(p * q));

            let node = Node {
                js,
                js_star: js_mirror.negated(),
                bs,
                delta: None,
                status: if ok {
                    ConditionStatus::PropagatedByCableRule
                } else {
                    ConditionStatus::Unknown
                },
            };
            (node, "cabling")
        }
        KnotExpr::Mirror(_) => unreachable!("mirrors are normalized away before evaluation"),
    };
    acc.trail.push(TrailEntry {
        node: k.clone(),
        rule,
        condition_delta: node.status,
    });
    node
}

/// `{pq} ∪ { a q^2 : a ∈ js(K) }`, and whether no element of the companion set
/// equals `p/q`.
fn cable_jones_upper(p: i64, q: i64, companion: &SlopeSet) -> (SlopeSet, bool) {
    let forbidden = Q::new(p.into(), q.into());
    let pass = !companion.contains(&forbidden);
    let mut js = companion.map(|a| cable_transform(a, q));
    js.insert(int(p * q));
    (js, pass)
}

fn forbidden_check(
    node: &KnotExpr,
    side: CheckSide,
    p: i64,
    q: i64,
    companion: &SlopeSet,
    passed: bool,
) -> HypothesisCheck {
    let forbidden = Q::new(p.into(), q.into());
    let rel = if passed { "∉" } else { "∈" };
    HypothesisCheck {
        node: node.clone(),
        side,
        passed,
        detail: format!(
            "4c2 ≠ p/q: {} {rel} {companion}",
            to_short_string(&forbidden)
        ),
    }
}

/// A Jones slope and the generated boundary slope that covers it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipRow {
    pub slope: Slope,
    /// `"js"`, `"js*"` or `"js, js*"`.
    pub source: String,
    pub matched_bs: Option<Slope>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub profile: SlopeProfile,
    pub membership_table: Vec<MembershipRow>,
}

pub fn verify_conjecture(k: &KnotExpr) -> Result<VerificationReport, Error> {
    verify_conjecture_with(k, ProfileOptions::default())
}

pub fn verify_conjecture_with(
    k: &KnotExpr,
    opts: ProfileOptions,
) -> Result<VerificationReport, Error> {
    let profile = profile_with(k, opts)?;
    let membership_table = membership_table(&profile);
    Ok(VerificationReport {
        profile,
        membership_table,
    })
}

pub fn membership_table(profile: &SlopeProfile) -> Vec<MembershipRow> {
    profile
        .jones_slopes()
        .slopes()
        .into_iter()
        .map(|s| {
            let source = match (
                profile.js_upper.contains_slope(&s),
                profile.js_star_upper.contains_slope(&s),
            ) {
                (true, true) => "js, js*",
                (true, false) => "js",
                _ => "js*",
            };
            let matched_bs = profile.bs_gen.contains_slope(&s).then(|| s.clone());
            MembershipRow {
                slope: s,
                source: source.to_string(),
                matched_bs,
            }
        })
        .collect()
}
