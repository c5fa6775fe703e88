//! Structured text export of operation tables.
//!
//! ```text
//! elements: 3
//! names: {} {0} {0,1}
//! bot: 0
//! top: 2
//! leq:
//! 1 1 1
//! 0 1 1
//! 0 0 1
//! meet:
//! ...
//! join:
//! ...
//! impl:
//! ...
//! ```
//!
//! Table rows are space separated, one row per element in element order.

use super::{Elem, HeytingAlgebra, HeytingError, Tables};

pub(super) fn export(h: &HeytingAlgebra) -> String {
    let n = h.size();
    let mut out = format!("elements: {n}\nnames: {}\n", h.names().join(" "));
    out.push_str(&format!("bot: {}\ntop: {}\n", h.bot(), h.top()));
    let mut table = |title: &str, cell: &dyn Fn(usize) -> String| {
        out.push_str(title);
        out.push_str(":\n");
        for a in 0..n {
            let row: Vec<String> = (0..n).map(|b| cell(a * n + b)).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    };
    let t = h.tables();
    table("leq", &|k| if t.leq[k] { "1".into() } else { "0".into() });
    table("meet", &|k| t.meet[k].to_string());
    table("join", &|k| t.join[k].to_string());
    table("impl", &|k| t.imp[k].to_string());
    out
}

/// Parses the output of [`HeytingAlgebra::export`].
pub fn parse_export(text: &str) -> Result<HeytingAlgebra, HeytingError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
    let mut next = |what: &str| {
        lines.next().ok_or_else(|| HeytingError::ExportSyntax {
            line: 0,
            message: format!("unexpected end of input, expected {what}"),
        })
    };
    let syntax = |line: usize, message: String| HeytingError::ExportSyntax { line, message };

    let field = |(line, text): (usize, &str), key: &str| -> Result<String, HeytingError> {
        text.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix(':'))
            .map(|rest| rest.trim().to_string())
            .ok_or_else(|| syntax(line, format!("expected `{key}:`")))
    };
    let number = |line: usize, s: &str| -> Result<usize, HeytingError> {
        s.parse::<usize>()
            .map_err(|_| syntax(line, format!("expected a number, found {s:?}")))
    };

    let l = next("elements")?;
    let n = number(l.0, &field(l, "elements")?)?;
    let l = next("names")?;
    let names: Vec<String> = field(l, "names")?
        .split_whitespace()
        .map(str::to_string)
        .collect();
    if names.len() != n {
        return Err(syntax(
            l.0,
            format!("expected {n} names, found {}", names.len()),
        ));
    }
    let l = next("bot")?;
    let bot = number(l.0, &field(l, "bot")?)?;
    let l = next("top")?;
    let top = number(l.0, &field(l, "top")?)?;

    let mut read_table = |key: &str| -> Result<Vec<usize>, HeytingError> {
        let l = next(key)?;
        if !field(l, key)?.is_empty() {
            return Err(syntax(l.0, format!("expected `{key}:` on its own line")));
        }
        let mut cells = Vec::with_capacity(n * n);
        for _ in 0..n {
            let (line, row) = next("a table row")?;
            let values: Vec<usize> = row
                .split_whitespace()
                .map(|s| number(line, s))
                .collect::<Result<_, _>>()?;
            if values.len() != n {
                return Err(syntax(
                    line,
                    format!("expected {n} cells, found {}", values.len()),
                ));
            }
            cells.extend(values);
        }
        Ok(cells)
    };
    let leq = read_table("leq")?;
    let meet = read_table("meet")?;
    let join = read_table("join")?;
    let imp = read_table("impl")?;
    let to_elems = |v: Vec<usize>| -> Result<Vec<Elem>, HeytingError> {
        v.into_iter()
            .map(|e| {
                if e < n {
                    Ok(e as Elem)
                } else {
                    Err(HeytingError::ElementOutOfRange { index: e, size: n })
                }
            })
            .collect()
    };
    if bot >= n || top >= n {
        return Err(HeytingError::ElementOutOfRange {
            index: bot.max(top),
            size: n,
        });
    }
    HeytingAlgebra::from_tables(Tables {
        names,
        leq: leq.into_iter().map(|b| b != 0).collect(),
        meet: to_elems(meet)?,
        join: to_elems(join)?,
        imp: to_elems(imp)?,
        bot: bot as Elem,
        top: top as Elem,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_chain_export_is_exact() {
        let expected = "\
elements: 3
names: {} {0} {0,1}
bot: 0
top: 2
leq:
1 1 1
0 1 1
0 0 1
meet:
0 0 0
0 1 1
0 1 2
join:
0 1 2
1 1 2
2 2 2
impl:
2 2 2
0 2 2
0 1 2
";
        assert_eq!(HeytingAlgebra::chain(3).export(), expected);
    }

    #[test]
    fn export_round_trips() {
        for h in crate::heyting::enumerate_algebras(3).unwrap() {
            let back = parse_export(&h.export()).unwrap();
            assert_eq!(back.tables(), h.tables());
        }
    }

    #[test]
    fn malformed_exports_are_rejected() {
        assert!(parse_export("elements: 2\nnames: a\n").is_err());
        let mut text = HeytingAlgebra::chain(3).export();
        text = text.replace("0 1 2\njoin", "0 1 9\njoin");
        assert!(matches!(
            parse_export(&text),
            Err(HeytingError::ElementOutOfRange { index: 9, .. })
        ));
    }
}
