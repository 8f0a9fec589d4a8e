//! Exhaustive enumeration of parameters whose weight blocks partition tau.
//!
//! Every weight block is a union of runs of consecutive integers. After
//! fixing the central run {1, ..., c} of the principal factor (d_0 = 2c + 1),
//! the largest remaining weight must be the top of the top run of some
//! factor; we branch on that factor and recurse on what is left.

use std::collections::BTreeSet;

use super::{ArthurParameter, BlockKey, BlockKind, Factor, Registry};
use crate::error::{Error, Result};
use crate::reps::HighestWeight;

/// All parameters for V_lambda, with multiplicities, in canonical order.
pub fn enumerate_parameters(hw: &HighestWeight, registry: &Registry) -> Result<Vec<ArthurParameter>> {
    let tau: BTreeSet<i64> = hw.tau().into_iter().collect();
    let mut out = Vec::new();
    let mut c = 0i64;
    loop {
        let rest: BTreeSet<i64> = tau.iter().copied().filter(|&w| w > c).collect();
        let mut search = Search { registry, d0: 2 * c as u32 + 1, out: &mut out };
        search.run(rest, None, Vec::new())?;
        c += 1;
        if !tau.contains(&c) {
            break;
        }
    }
    for p in &out {
        let covered = p.weight_set()?;
        if covered != tau || p.standard_dim() != 2 * hw.genus() + 1 {
            return Err(Error::InvalidBlock(format!("{} does not partition tau = {:?}", p.shape(), hw.tau())));
        }
    }
    out.sort_by_key(|p| p.shape());
    Ok(out)
}

struct Search<'a> {
    registry: &'a Registry,
    d0: u32,
    out: &'a mut Vec<ArthurParameter>,
}

impl Search<'_> {
    fn run(&mut self, rest: BTreeSet<i64>, principal: Option<Factor>, others: Vec<Factor>) -> Result<()> {
        let Some(&top) = rest.iter().next_back() else {
            let principal = match principal {
                Some(p) => p,
                None => match self.registry.factor(&BlockKey::trivial(), self.d0)? {
                    Some(p) => p,
                    None => return Ok(()),
                },
            };
            self.out.push(ArthurParameter::new(principal, others));
            return Ok(());
        };

        // the principal factor's own block, with runs of length d0
        if principal.is_none() {
            let half = (self.d0 as i64 - 1) / 2;
            for tops in run_families(&rest, top, self.d0 as i64) {
                let doubled: Vec<u32> = tops.iter().map(|&t| 2 * (t - half) as u32).collect();
                let key = BlockKey::new(BlockKind::OddOrthogonal, doubled);
                if let Some(f) = self.registry.factor(&key, self.d0)? {
                    let rest2 = remove_runs(&rest, &tops, self.d0 as i64);
                    self.run(rest2, Some(f), others.clone())?;
                }
            }
        }

        for d in 1..=top as u32 {
            let kind = if d % 2 == 0 { BlockKind::Symplectic } else { BlockKind::EvenOrthogonal };
            for tops in run_families(&rest, top, d as i64) {
                if kind == BlockKind::EvenOrthogonal && tops.len() % 2 == 1 {
                    continue;
                }
                let doubled: Vec<u32> = tops.iter().map(|&t| (2 * t - d as i64 + 1) as u32).collect();
                let key = BlockKey::new(kind, doubled);
                if let Some(f) = self.registry.factor(&key, d)? {
                    let rest2 = remove_runs(&rest, &tops, d as i64);
                    let mut others2 = others.clone();
                    others2.push(f);
                    self.run(rest2, principal.clone(), others2)?;
                }
            }
        }
        Ok(())
    }
}

fn run_inside(rest: &BTreeSet<i64>, t: i64, len: i64) -> bool {
    t - len + 1 >= 1 && (t - len + 1..=t).all(|v| rest.contains(&v))
}

/// Sets of run tops `top = t_1 > t_2 > ...` with pairwise disjoint runs of
/// length `len` inside `rest`.
fn run_families(rest: &BTreeSet<i64>, top: i64, len: i64) -> Vec<Vec<i64>> {
    if !run_inside(rest, top, len) {
        return Vec::new();
    }
    let mut out = Vec::new();
    fn rec(rest: &BTreeSet<i64>, below: i64, len: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(cur.clone());
        for t in (1..below).rev() {
            if run_inside(rest, t, len) {
                cur.push(t);
                rec(rest, t - len + 1, len, cur, out);
                cur.pop();
            }
        }
    }
    rec(rest, top - len + 1, len, &mut vec![top], &mut out);
    out
}

fn remove_runs(rest: &BTreeSet<i64>, tops: &[i64], len: i64) -> BTreeSet<i64> {
    let mut r = rest.clone();
    for &t in tops {
        for v in t - len + 1..=t {
            r.remove(&v);
        }
    }
    r
}

/// All lambda of genus g with lambda_1 <= max_l1 and w(lambda) even.
pub fn even_weight_lambdas(g: usize, max_l1: i64) -> Vec<HighestWeight> {
    fn rec(g: usize, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<HighestWeight>) {
        if cur.len() == g {
            if cur.iter().sum::<i64>() % 2 == 0 {
                out.push(HighestWeight::new(cur.clone()).expect("nonincreasing by construction"));
            }
            return;
        }
        for x in (0..=cap).rev() {
            cur.push(x);
            rec(g, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(g, max_l1, &mut Vec::new(), &mut out);
    out
}
