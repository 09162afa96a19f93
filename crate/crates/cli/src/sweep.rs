//! Tabulation of the leader's reduced objective, `J1(p1, BR(p1))`.

use estgame_core::best_response::{bounds, follower_br, leader_reduced_cost};
use estgame_core::{ExtendedValue, GameConstants, RegionTag};

pub const HEADER: &str = "p1,br_p2,j1,region";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub p1: f64,
    pub br_p2: f64,
    pub j1: ExtendedValue,
    pub region: RegionTag,
}

/// One row per multiple of `step` in `[0, 1]`, plus rows at exactly
/// `p1_lower` and `p1_upper` when `K2 > 0`.
pub fn sweep_rows(constants: &GameConstants, step: f64) -> Vec<SweepRow> {
    let n = (1.0 / step).round().max(1.0) as usize;
    let mut p1s: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    if let Ok(b) = bounds(constants.k2) {
        p1s.push(b.p1_lower);
        p1s.push(b.p1_upper);
    }
    p1s.sort_by(f64::total_cmp);
    p1s.dedup();
    p1s.into_iter()
        .map(|p1| {
            let (br_p2, _) = follower_br(constants.k2, p1);
            let (j1, region) = leader_reduced_cost(constants, p1);
            SweepRow { p1, br_p2, j1, region }
        })
        .collect()
}

/// Index of the cheapest row, first one on ties.
pub fn argmin(rows: &[SweepRow]) -> usize {
    let mut best = 0;
    for (i, row) in rows.iter().enumerate().skip(1) {
        if row.j1 < rows[best].j1 {
            best = i;
        }
    }
    best
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 48);
    out.push_str(HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.p1, r.br_p2, r.j1, r.region));
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(format!("expected header `{HEADER}`"));
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            let [p1, br, j1, region] = fields[..] else {
                return Err(format!("line {}: expected 4 fields", i + 2));
            };
            let num = |s: &str| s.parse::<f64>().map_err(|e| format!("line {}: {e}", i + 2));
            Ok(SweepRow {
                p1: num(p1)?,
                br_p2: num(br)?,
                j1: ExtendedValue::from_f64(num(j1)?),
                region: RegionTag::parse(region).ok_or_else(|| format!("line {}: bad region", i + 2))?,
            })
        })
        .collect()
}
