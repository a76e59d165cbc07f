//! JSON and text renderings of a verification run.

use std::fmt::Write as _;

use serde::Serialize;

use crate::qpoly::QuasiPoly;
use crate::rational::to_short_string;
use crate::slope::{
    ClauseReport, ConditionStatus, HypothesisCheck, MembershipRow, SlopeSet, TrailEntry,
    Verdict, VerificationReport,
};

#[derive(Debug, Clone, Serialize)]
pub struct ConditionDelta {
    pub status: ConditionStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clauses: Option<ClauseReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub expression: String,
    pub js_upper: SlopeSet,
    pub js_star_upper: SlopeSet,
    pub bs_gen: SlopeSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<QuasiPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_star: Option<QuasiPoly>,
    pub condition_delta: ConditionDelta,
    pub hypothesis_checks: Vec<HypothesisCheck>,
    pub verdict: Verdict,
    pub membership_table: Vec<MembershipRow>,
    pub condition_trail: Vec<TrailEntry>,
}

impl From<&VerificationReport> for Report {
    fn from(r: &VerificationReport) -> Self {
        let p = &r.profile;
        Report {
            expression: p.expression.render(),
            js_upper: p.js_upper.clone(),
            js_star_upper: p.js_star_upper.clone(),
            bs_gen: p.bs_gen.clone(),
            delta: p.delta.as_ref().map(|d| d.0.clone()),
            delta_star: p.delta.as_ref().map(|d| d.1.clone()),
            condition_delta: ConditionDelta {
                status: p.condition_delta,
                clauses: p.clauses.clone(),
            },
            hypothesis_checks: p.hypothesis_checks.clone(),
            verdict: p.verdict.clone(),
            membership_table: r.membership_table.clone(),
            condition_trail: p.trail.clone(),
        }
    }
}

fn qpoly_text(f: &QuasiPoly) -> String {
    let show = |v: &[crate::Q]| {
        let s: Vec<String> = v.iter().map(to_short_string).collect();
        if s.len() == 1 {
            s[0].clone()
        } else {
            format!("[{}]", s.join(", "))
        }
    };
    format!(
        "({}) n^2 + ({}) n + ({})  [period {}]",
        show(f.c2()),
        show(f.c1()),
        show(f.c0()),
        f.period()
    )
}

impl Report {
    /// Profile section only, for `analyze`.
    pub fn profile_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "expression:      {}", self.expression);
        let _ = writeln!(s, "js (upper):      {}", self.js_upper);
        let _ = writeln!(s, "js* (upper):     {}", self.js_star_upper);
        let _ = writeln!(s, "bs (generated):  {}", self.bs_gen);
        if let (Some(d), Some(ds)) = (&self.delta, &self.delta_star) {
            let _ = writeln!(s, "delta(n):        {}", qpoly_text(d));
            let _ = writeln!(s, "delta*(n):       {}", qpoly_text(ds));
        }
        let _ = writeln!(s, "Condition delta: {:?}", self.condition_delta.status);
        if let Some(c) = &self.condition_delta.clauses {
            let _ = writeln!(
                s,
                "  clauses:       period<=2 {}, signs {}, integrality {}",
                c.period_at_most_two, c.sign_conditions, c.integrality
            );
            for w in &c.witnesses {
                let at = w.residue.map(|r| format!(" at n = {r} mod period")).unwrap_or_default();
                let _ = writeln!(s, "  fails ({}) for {}{}: {}", w.clause, w.function, at, w.value);
            }
        }
        let _ = writeln!(s, "verdict:         {}", self.verdict);
        s
    }

    /// Full report, for `verify`.
    pub fn text(&self) -> String {
        let mut s = self.profile_text();
        let _ = writeln!(s, "membership:");
        for row in &self.membership_table {
            let m = row
                .matched_bs
                .as_ref()
                .map(|b| format!("-> {b}"))
                .unwrap_or_else(|| "-> MISSING".into());
            let _ = writeln!(s, "  {:>10} ({}) {m}", row.slope.to_string(), row.source);
        }
        if !self.hypothesis_checks.is_empty() {
            let _ = writeln!(s, "hypothesis checks:");
            for c in &self.hypothesis_checks {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                let _ = writeln!(s, "  [{mark}] {} ({:?}): {}", c.node, c.side, c.detail);
            }
        }
        let _ = writeln!(s, "Condition delta trail:");
        for t in &self.condition_trail {
            let _ = writeln!(s, "  {:<24} {:?}  {}", t.rule, t.condition_delta, t.node);
        }
        s
    }
}
