//! Dataset text formats.
//!
//! Dense format: one transaction per line, `0`/`1` values separated by `,`
//! or tab. An optional first line of item labels is skipped when any of its
//! tokens is non-numeric. Sparse format: one transaction per line as
//! whitespace-separated 1-based item ids; an empty line is an empty
//! transaction and duplicate ids collapse.

use crate::error::{Error, Result};
use crate::itemset::{Itemset, MAX_ITEMS};
use crate::TransactionDatabase;

/// Parses the dense 0/1 matrix format.
pub fn load_binary_matrix(text: &str, source_label: &str) -> Result<TransactionDatabase> {
    let mut lines = text.lines().enumerate().peekable();

    let header_present = match lines.peek() {
        Some((_, first)) => split_dense(first).any(|tok| tok.trim().parse::<f64>().is_err()),
        None => return Err(Error::parse(1, "empty input")),
    };
    if header_present {
        lines.next();
    }

    let mut rows: Vec<Itemset> = Vec::new();
    let mut width: Option<usize> = None;
    for (index, line) in lines {
        let line_no = index + 1;
        let mut bits = Vec::new();
        for token in split_dense(line) {
            match token.trim() {
                "0" => bits.push(false),
                "1" => bits.push(true),
                other => {
                    return Err(Error::parse(
                        line_no,
                        format!("expected 0 or 1, got {other:?}"),
                    ))
                }
            }
        }
        let d = *width.get_or_insert(bits.len());
        if bits.len() != d {
            return Err(Error::parse(
                line_no,
                format!("row has {} values, expected {}", bits.len(), d),
            ));
        }
        if d > MAX_ITEMS {
            return Err(Error::parse(
                line_no,
                format!("row has {d} values, more than the supported maximum of {MAX_ITEMS}"),
            ));
        }
        let mut row = Itemset::empty(d).map_err(|e| Error::parse(line_no, e.to_string()))?;
        for (i, set) in bits.iter().enumerate() {
            if *set {
                row.set_bit(i);
            }
        }
        rows.push(row);
    }

    if rows.is_empty() {
        return Err(Error::parse(
            if header_present { 2 } else { 1 },
            "no data rows",
        ));
    }
    TransactionDatabase::new(rows, source_label)
}

fn split_dense(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c| c == ',' || c == '\t')
}

/// Parses the sparse item-list format. `item_count` overrides the universe
/// size; without it the largest id seen is used.
pub fn load_transaction_list(
    text: &str,
    item_count: Option<usize>,
    source_label: &str,
) -> Result<TransactionDatabase> {
    if let Some(d) = item_count {
        if d == 0 || d > MAX_ITEMS {
            return Err(Error::usage(format!(
                "item count override must be in 1..={MAX_ITEMS}, got {d}"
            )));
        }
    }

    let mut parsed: Vec<Vec<u16>> = Vec::new();
    let mut max_item: u16 = 0;
    for (index, line) in text.lines().enumerate() {
        let line_no = index + 1;
        let mut items = Vec::new();
        for token in line.split_whitespace() {
            let id: i64 = token.parse().map_err(|_| {
                Error::parse(line_no, format!("expected a positive item id, got {token:?}"))
            })?;
            if id < 1 {
                return Err(Error::parse(
                    line_no,
                    format!("item ids are 1-based and positive, got {id}"),
                ));
            }
            if id as usize > MAX_ITEMS {
                return Err(Error::parse(
                    line_no,
                    format!("item id {id} exceeds the supported maximum of {MAX_ITEMS}"),
                ));
            }
            if let Some(d) = item_count {
                if id as usize > d {
                    return Err(Error::parse(
                        line_no,
                        format!("item id {id} exceeds the declared item count {d}"),
                    ));
                }
            }
            let id = id as u16;
            max_item = max_item.max(id);
            items.push(id);
        }
        parsed.push(items);
    }

    if parsed.is_empty() {
        return Err(Error::parse(1, "empty input"));
    }
    let d = match item_count {
        Some(d) => d,
        None if max_item == 0 => {
            return Err(Error::parse(
                1,
                "no item ids found; pass an explicit item count for all-empty data",
            ))
        }
        None => max_item as usize,
    };

    let rows = parsed
        .into_iter()
        .map(|items| Itemset::from_items(d, &items))
        .collect::<Result<Vec<_>>>()?;
    TransactionDatabase::new(rows, source_label)
}

/// Serializes a database in the dense format: comma separators, no header,
/// one trailing newline. `load_binary_matrix` inverts this exactly.
pub fn to_dense_text(db: &TransactionDatabase) -> String {
    let d = db.item_count();
    let mut out = String::with_capacity(db.transaction_count() * (2 * d));
    for row in db.rows() {
        for item in 1..=d as u16 {
            if item > 1 {
                out.push(',');
            }
            out.push(if row.contains_item(item) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

/// Serializes a database in the sparse format: ascending 1-based ids per
/// line, space separated, empty line for an empty transaction.
pub fn to_sparse_text(db: &TransactionDatabase) -> String {
    let mut out = String::new();
    for row in db.rows() {
        let mut first = true;
        for item in row.iter_items() {
            if !first {
                out.push(' ');
            }
            out.push_str(&item.to_string());
            first = false;
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_line_dense() {
        let db = load_binary_matrix("1,0,1", "t").unwrap();
        assert_eq!(db.transaction_count(), 1);
        assert_eq!(db.item_count(), 3);
        assert_eq!(db.rows()[0].items(), vec![1, 3]);
    }

    #[test]
    fn header_detection() {
        let with_header = "A1,A2,A3\n1,0,1\n";
        let db = load_binary_matrix(with_header, "t").unwrap();
        assert_eq!(db.transaction_count(), 1);
        // An all-numeric first line is data, and 2 is not a valid value.
        let err = load_binary_matrix("1,2,0\n", "t").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
    }

    #[test]
    fn tab_separated_dense() {
        let db = load_binary_matrix("1\t0\t1\n0\t1\t0\n", "t").unwrap();
        assert_eq!(db.rows()[1].items(), vec![2]);
    }

    #[test]
    fn ragged_rows_name_the_line() {
        let err = load_binary_matrix("1,0\n1,0,1\n", "t").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = load_binary_matrix("A,B\n1,0\n1\n", "t").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn empty_dense_input_rejected() {
        assert!(matches!(
            load_binary_matrix("", "t"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            load_binary_matrix("A1,A2\n", "t"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn sparse_matches_demo_rows() {
        let db = load_transaction_list("1 5 6 8\n2 4 8\n", None, "t").unwrap();
        assert_eq!(db.item_count(), 8);
        assert_eq!(db.rows()[0].items(), vec![1, 5, 6, 8]);
        assert_eq!(db.rows()[1].items(), vec![2, 4, 8]);
    }

    #[test]
    fn sparse_duplicates_collapse() {
        let db = load_transaction_list("3 3 3\n", None, "t").unwrap();
        assert_eq!(db.rows()[0].items(), vec![3]);
        assert_eq!(db.rows()[0].cardinality(), 1);
    }

    #[test]
    fn sparse_empty_line_is_empty_transaction() {
        let db = load_transaction_list("1 2\n\n2\n", None, "t").unwrap();
        assert_eq!(db.transaction_count(), 3);
        assert!(db.rows()[1].is_empty());
    }

    #[test]
    fn sparse_bad_ids_rejected() {
        assert!(matches!(
            load_transaction_list("0 2\n", None, "t"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            load_transaction_list("1 -4\n", None, "t"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            load_transaction_list("1\n9\n", Some(8), "t"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn sparse_override_widens_universe() {
        let db = load_transaction_list("1 2\n", Some(9), "t").unwrap();
        assert_eq!(db.item_count(), 9);
    }

    #[test]
    fn dense_round_trip() {
        let text = "1,0,0,1\n0,0,0,0\n1,1,1,1\n";
        let db = load_binary_matrix(text, "t").unwrap();
        assert_eq!(to_dense_text(&db), text);
        assert_eq!(load_binary_matrix(&to_dense_text(&db), "t2").unwrap(), db);
    }

    #[test]
    fn dense_and_sparse_agree() {
        let dense = load_binary_matrix("1,0,1\n0,1,0\n0,0,0\n", "d").unwrap();
        let sparse = load_transaction_list("1 3\n2\n\n", Some(3), "s").unwrap();
        assert_eq!(dense, sparse);
        assert_eq!(to_sparse_text(&dense), "1 3\n2\n\n");
    }
}
