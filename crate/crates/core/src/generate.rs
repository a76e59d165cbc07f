//! Seeded random graph-knot expressions for batch runs.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::expr::KnotExpr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenConfig {
    pub max_depth: usize,
    pub max_abs_p: i64,
    pub max_q: i64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_depth: 4,
            max_abs_p: 50,
            max_q: 7,
        }
    }
}

impl GenConfig {
    /// Returns a reason when no valid torus knot fits inside the bounds.
    pub fn check(&self) -> Result<(), String> {
        if self.max_depth == 0 {
            return Err("depth must be at least 1".into());
        }
        if self.max_abs_p < 2 || self.max_q < 2 || (self.max_abs_p < 3 && self.max_q < 3) {
            return Err(format!(
                "bounds |p| <= {}, q <= {} admit no nontrivial torus knot",
                self.max_abs_p, self.max_q
            ));
        }
        Ok(())
    }
}

/// `count` expressions from a ChaCha stream seeded with `seed`.
pub fn random_batch(seed: u64, count: usize, cfg: &GenConfig) -> Vec<KnotExpr> {
    cfg.check().expect("generator bounds");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_expr(&mut rng, cfg)).collect()
}

pub fn random_expr<R: Rng>(rng: &mut R, cfg: &GenConfig) -> KnotExpr {
    gen(rng, cfg, cfg.max_depth)
}

fn gen<R: Rng>(rng: &mut R, cfg: &GenConfig, depth: usize) -> KnotExpr {
    if depth <= 1 {
        return torus(rng, cfg);
    }
    match rng.gen_range(0..10) {
        0..=2 => torus(rng, cfg),
        3 => KnotExpr::mirror(gen(rng, cfg, depth - 1)),
        4..=6 => KnotExpr::sum(gen(rng, cfg, depth - 1), gen(rng, cfg, depth - 1)),
        _ => {
            let (p, q) = loop {
                let q = rng.gen_range(2..=cfg.max_q);
                let p = rng.gen_range(-cfg.max_abs_p..=cfg.max_abs_p);
                if p.gcd(&q) == 1 {
                    break (p, q);
                }
            };
            KnotExpr::cable(p, q, gen(rng, cfg, depth - 1))
        }
    }
}

fn torus<R: Rng>(rng: &mut R, cfg: &GenConfig) -> KnotExpr {
    loop {
        let p = rng.gen_range(2..=cfg.max_abs_p);
        let q = rng.gen_range(2..=cfg.max_q);
        if p.gcd(&q) == 1 {
            let p = if rng.gen_bool(0.5) { p } else { -p };
            return KnotExpr::torus(p, q);
        }
    }
}
