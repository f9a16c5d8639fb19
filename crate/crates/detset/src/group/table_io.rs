//! Plain-text Cayley table exchange format.
//!
//! Line 1: the order n. Lines 2..=n+1: n space-separated element indices per
//! line. Optionally a line reading `labels` followed by n label lines.
//! Imported tables go through full validation.

use super::FiniteGroup;
use crate::error::{Error, Result};

impl FiniteGroup {
    pub fn to_table_text(&self) -> String {
        let n = self.order();
        let mut out = String::new();
        out.push_str(&n.to_string());
        out.push('\n');
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| self.mul(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out.push_str("labels\n");
        for i in 0..n {
            out.push_str(self.label(i));
            out.push('\n');
        }
        out
    }

    pub fn from_table_text(
        text: &str,
        descriptor: impl Into<String>,
        assoc_check_cap: usize,
    ) -> Result<FiniteGroup> {
        let mut lines = text.lines().enumerate();
        let (_, first) = lines
            .next()
            .ok_or_else(|| Error::TableText { line: 1, reason: "empty input".into() })?;
        let n: usize = first
            .trim()
            .parse()
            .map_err(|_| Error::TableText { line: 1, reason: "expected the order".into() })?;
        if n == 0 {
            return Err(Error::TableText { line: 1, reason: "order must be positive".into() });
        }
        let mut table = Vec::with_capacity(n * n);
        for _ in 0..n {
            let (lineno, row) = lines.next().ok_or_else(|| Error::TableText {
                line: n + 1,
                reason: "table ended early".into(),
            })?;
            let mut count = 0;
            for tok in row.split_whitespace() {
                let v: u32 = tok.parse().map_err(|_| Error::TableText {
                    line: lineno + 1,
                    reason: format!("bad entry `{tok}`"),
                })?;
                table.push(v);
                count += 1;
            }
            if count != n {
                return Err(Error::TableText {
                    line: lineno + 1,
                    reason: format!("expected {n} entries, got {count}"),
                });
            }
        }
        let labels = match lines.next() {
            Some((lineno, marker)) => {
                if marker.trim() != "labels" {
                    return Err(Error::TableText {
                        line: lineno + 1,
                        reason: "expected `labels` or end of input".into(),
                    });
                }
                let mut labels = Vec::with_capacity(n);
                for _ in 0..n {
                    let (_, label) = lines.next().ok_or_else(|| Error::TableText {
                        line: lineno + 1,
                        reason: "label block ended early".into(),
                    })?;
                    labels.push(label.to_string());
                }
                labels
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        FiniteGroup::from_table(table, labels, descriptor, assoc_check_cap)
    }
}
