//! Embedded invariant suite.

use crate::avoidance::{bookkeeping_with, verify_bounds, AvoidanceInstance, Fault};
use crate::construct::{proximal_k_point, verify_syndetic_zeros, KExampleParams};
use crate::independence::{max_independence_within, Budget, CylinderTuple};
use crate::sets::SubsetWindow;
use crate::subshift::{Subshift, SubshiftSpec};
use crate::syndetic::{build_obstruction, verify_certificate, Status, DEFAULT_SCALE};
use crate::word::Word;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    /// `None` on success.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfcheckReport {
    pub checks: Vec<CheckResult>,
}

impl SelfcheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failure.is_none())
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            match &c.failure {
                None => out += &format!("PASS {}\n", c.name),
                Some(why) => out += &format!("FAIL {}: {why}\n", c.name),
            }
        }
        out
    }
}

fn outcome(r: Result<Option<String>>) -> Option<String> {
    match r {
        Ok(v) => v,
        Err(e) => Some(e.to_string()),
    }
}

fn fekete() -> Result<Option<String>> {
    let golden = Subshift::new(SubshiftSpec::golden_mean())?;
    let tuple = CylinderTuple::new(golden, vec![vec![Word::new(vec![0])], vec![Word::new(vec![1])]])?;
    let report = max_independence_within(&tuple, 10, Budget::default())?;
    let expected: Vec<u64> = (1..=10).map(|k: u64| k.div_ceil(2)).collect();
    if report.a != expected {
        return Ok(Some(format!("golden-mean profile {:?}", report.a)));
    }
    Ok((!report.is_subadditive()).then(|| "profile is not subadditive".to_string()))
}

fn bounds(fault: Fault) -> Result<Option<String>> {
    let inst = AvoidanceInstance::generated(2, 3, 2, 40, 0)?;
    let bk = bookkeeping_with(&inst, 40, fault)?;
    Ok(verify_bounds(&bk, &inst).err().map(|e| e.to_string()))
}

fn k_literals() -> Result<Option<String>> {
    let mut params = KExampleParams::toy();
    params.y = Word::new(params.y.symbols()[..400].to_vec());
    params.depth = 3;
    let run = proximal_k_point(&params)?;
    let l1 = run.level(1).expect("level 1");
    let got = [l1.a.to_string(), l1.c_block(0)?.to_string(), l1.c_block(1)?.to_string()];
    if got != ["10", "0000", "1000"] {
        return Ok(Some(format!("level-1 blocks {got:?}")));
    }
    let bad = verify_syndetic_zeros(run.x_prefix(), &run.levels)
        .into_iter()
        .find(|r| !r.passed());
    Ok(bad.map(|r| format!("0^{} gap above {} at level {}", r.n, r.bound, r.k)))
}

fn thue_morse() -> Result<Option<String>> {
    let tm = Subshift::new(SubshiftSpec::thue_morse())?;
    let f = SubsetWindow::interval(0..40);
    let cert = build_obstruction(&tm, &f, DEFAULT_SCALE, 40)?;
    if cert.status != Status::Refuted || cert.depth > 3 {
        return Ok(Some(format!("status {} at depth {}", cert.status, cert.depth)));
    }
    let v = verify_certificate(&cert, &tm, &f)?;
    Ok(v.failed.map(|s| format!("certificate rejected at {s:?}")))
}

/// Runs every check; `fault` is forwarded to the bookkeeping recursion.
pub fn selfcheck_with(fault: Fault) -> SelfcheckReport {
    let checks = vec![
        CheckResult {
            name: "fekete_subadditivity",
            failure: outcome(fekete()),
        },
        CheckResult {
            name: "verify_bounds",
            failure: outcome(bounds(fault)),
        },
        CheckResult {
            name: "k_example_literals",
            failure: outcome(k_literals()),
        },
        CheckResult {
            name: "thue_morse_refutation",
            failure: outcome(thue_morse()),
        },
    ];
    SelfcheckReport { checks }
}

pub fn selfcheck() -> SelfcheckReport {
    selfcheck_with(Fault::None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_build_passes() {
        let r = selfcheck();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.summary().lines().count(), 4);
    }

    #[test]
    fn stale_c_is_named() {
        let r = selfcheck_with(Fault::StaleC);
        assert!(!r.passed());
        let failed: Vec<_> = r.checks.iter().filter(|c| c.failure.is_some()).map(|c| c.name).collect();
        assert_eq!(failed, ["verify_bounds"]);
        assert!(r.summary().contains("FAIL verify_bounds"));
    }
}
