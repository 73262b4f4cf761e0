use super::report::CensusReport;
use crate::error::{check_budget, invalid, Result};

pub const HEIGHT_BALL_MAX: i64 = 200;
pub const PARABOLIC: &str = "reducible";

/// Every `[[a, b], [c, d]]` in `SL(2, Z)` with entries in `[-B, B]`. The
/// characteristic polynomial `x^2 - t x + 1` is reducible over `Z` exactly
/// when `t^2 - 4` is a square, i.e. `|t| = 2`.
pub fn height_ball_sl2(bound: i64) -> Result<CensusReport> {
    if bound < 0 {
        return Err(invalid("entry bound must be nonnegative"));
    }
    check_budget("height ball entry bound", bound as u128, HEIGHT_BALL_MAX as u128)?;
    let mut total = 0u128;
    let mut reducible = 0u128;
    let mut tally = |a: i64, d: i64| {
        total += 1;
        if (a + d).abs() == 2 {
            reducible += 1;
        }
    };
    for a in -bound..=bound {
        if a == 0 {
            // bc = -1
            if bound >= 1 {
                for d in -bound..=bound {
                    tally(0, d);
                    tally(0, d);
                }
            }
            continue;
        }
        for b in -bound..=bound {
            for c in -bound..=bound {
                let num = 1 + b * c;
                if num % a == 0 {
                    let d = num / a;
                    if d.abs() <= bound {
                        tally(a, d);
                    }
                }
            }
        }
    }
    let mut report = CensusReport::new(format!("SL(2,Z) entries in [-{bound}, {bound}]"), total);
    report.record(PARABOLIC, reducible);
    Ok(report)
}
