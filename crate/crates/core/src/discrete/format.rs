//! Plain-text channel tables.
//!
//! ```text
//! # comments and blank lines are ignored
//! |X1| |X2| |Xr| |Y1| |Y2| |Yr|
//! <|Y1|·|Y2|·|Yr| probabilities for (x1,x2,xr) = (0,0,0)>
//! <... one row per input triple, xr fastest, then x2, then x1>
//! ```
//!
//! Within a row, `yr` varies fastest and `y1` slowest.

use std::fmt::Write as _;

use super::pmf::NORM_TOL;
use super::{Alphabets, DmTwrc};
use crate::error::{Result, TwrcError};

fn parse_err(line: usize, message: impl Into<String>) -> TwrcError {
    TwrcError::Parse { line, message: message.into() }
}

pub fn parse_channel_file(text: &str) -> Result<DmTwrc> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty channel file"))?;
    let sizes = header
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_err(hline, format!("alphabet size '{t}' is not a positive integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    let [x1, x2, xr, y1, y2, yr] = sizes[..] else {
        return Err(parse_err(hline, format!("header needs 6 alphabet sizes, found {}", sizes.len())));
    };
    if sizes.contains(&0) {
        return Err(parse_err(hline, "alphabet sizes must be at least 1"));
    }
    let alphabets = Alphabets { x1, x2, xr, y1, y2, yr };
    let (rows, cols) = (alphabets.inputs(), alphabets.outputs());

    let mut table = Vec::with_capacity(rows * cols);
    let mut last_line = hline;
    for r in 0..rows {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| parse_err(last_line + 1, format!("expected {rows} rows, found {r}")))?;
        last_line = lno;
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| parse_err(lno, format!("'{t}' is not a number"))))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != cols {
            return Err(parse_err(lno, format!("row has {} entries, expected {cols}", row.len())));
        }
        if let Some(bad) = row.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(parse_err(lno, format!("probability {bad} outside [0, 1]")));
        }
        let total: f64 = row.iter().sum();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(parse_err(lno, format!("row sums to {total}, expected 1")));
        }
        table.extend(row);
    }
    if let Some((lno, _)) = lines.next() {
        return Err(parse_err(lno, format!("unexpected content after {rows} rows")));
    }
    DmTwrc::new(alphabets, table)
}

/// Serializes a channel in the format read by [`parse_channel_file`].
pub fn write_channel_file(dm: &DmTwrc) -> String {
    let a = dm.alphabets();
    let mut out = String::from("# x1 x2 xr y1 y2 yr\n");
    let _ = writeln!(out, "{} {} {} {} {} {}", a.x1, a.x2, a.xr, a.y1, a.y2, a.yr);
    for row in dm.table().chunks(a.outputs()) {
        let cells: Vec<String> = row.iter().map(|p| format!("{p}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
