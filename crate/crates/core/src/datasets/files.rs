use std::fmt::Write as _;
use std::path::Path;

use crate::edit::{Alphabet, CostModel};
use crate::heuristic::StringSet;
use crate::{Error, Result};

const EPS_TOKEN: &str = "EPS";
const ALPHABET_HEADER: &str = "#alphabet:";

/// Reads a string-set file: an optional `#alphabet: <chars>` header, then
/// one string per line, optionally prefixed by `label<TAB>`. Other `#`
/// lines and empty lines are skipped. Without a header the alphabet is the
/// sorted set of characters seen.
pub fn load_strings(path: impl AsRef<Path>) -> Result<StringSet> {
    let path = path.as_ref();
    parse_strings(&std::fs::read_to_string(path)?, path)
}

pub fn parse_strings(text: &str, path: &Path) -> Result<StringSet> {
    let mut alphabet: Option<Alphabet> = None;
    let mut raw: Vec<(usize, Option<String>, &str)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if let Some(rest) = line.strip_prefix(ALPHABET_HEADER) {
            if alphabet.is_some() || !raw.is_empty() {
                return Err(Error::parse(
                    path,
                    lineno,
                    "alphabet header must come first",
                ));
            }
            let a = Alphabet::new(rest.trim().chars())
                .map_err(|e| Error::parse(path, lineno, e.to_string()))?;
            alphabet = Some(a);
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once('\t') {
            Some((label, s)) => raw.push((lineno, Some(label.to_string()), s)),
            None => raw.push((lineno, None, line)),
        }
    }
    let alphabet = match alphabet {
        Some(a) => a,
        None => {
            let mut chars: Vec<char> = raw.iter().flat_map(|(_, _, s)| s.chars()).collect();
            chars.sort_unstable();
            chars.dedup();
            Alphabet::new(chars).map_err(|e| Error::parse(path, 1, e.to_string()))?
        }
    };
    if raw.is_empty() {
        return Err(Error::parse(
            path,
            text.lines().count().max(1),
            "no strings",
        ));
    }
    let entries = raw
        .into_iter()
        .map(|(lineno, label, s)| {
            alphabet
                .encode(s)
                .map(|seq| (label, seq))
                .map_err(|e| Error::parse(path, lineno, e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    StringSet::with_labels(alphabet, entries)
}

pub fn format_strings(set: &StringSet) -> String {
    let mut out = format!("{ALPHABET_HEADER} {}\n", set.alphabet());
    for m in set.members() {
        if let Some(label) = &m.label {
            out.push_str(label);
            out.push('\t');
        }
        out.push_str(&set.alphabet().decode(&m.seq));
        out.push('\n');
    }
    out
}

pub fn save_strings(path: impl AsRef<Path>, set: &StringSet) -> Result<()> {
    std::fs::write(path, format_strings(set))?;
    Ok(())
}

/// Reads a tab-separated cost matrix. The first row lists the symbols and
/// then `EPS`; each following row may start with its symbol label and gives
/// that row's costs. Diagonal cells may be written `-`.
///
/// With `alphabet` given, the file must declare exactly its symbols (in any
/// order) and the matrix is reordered to match.
pub fn load_cost_matrix(path: impl AsRef<Path>, alphabet: Option<&Alphabet>) -> Result<CostModel> {
    let path = path.as_ref();
    parse_cost_matrix(&std::fs::read_to_string(path)?, path, alphabet)
}

pub fn parse_cost_matrix(
    text: &str,
    path: &Path,
    alphabet: Option<&Alphabet>,
) -> Result<CostModel> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(path, 1, "empty cost matrix"))?;
    let tokens: Vec<&str> = header
        .split('\t')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    if tokens.last() != Some(&EPS_TOKEN) {
        return Err(Error::parse(
            path,
            hline,
            format!("header must end with {EPS_TOKEN}"),
        ));
    }
    let mut symbols = Vec::with_capacity(tokens.len() - 1);
    for t in &tokens[..tokens.len() - 1] {
        let mut chars = t.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => symbols.push(c),
            _ => {
                return Err(Error::parse(
                    path,
                    hline,
                    format!("symbol {t:?} is not a single character"),
                ))
            }
        }
    }
    let file_alphabet =
        Alphabet::new(symbols).map_err(|e| Error::parse(path, hline, e.to_string()))?;
    let n = file_alphabet.len();
    let dim = n + 1;

    let mut rows = Vec::with_capacity(dim);
    for (lineno, line) in lines {
        if rows.len() == dim {
            return Err(Error::parse(
                path,
                lineno,
                format!("more than {dim} cost rows"),
            ));
        }
        let r = rows.len();
        let mut fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() == dim + 1 {
            let expected = if r == n {
                EPS_TOKEN.to_string()
            } else {
                file_alphabet.symbols()[r].to_string()
            };
            if fields[0] != expected {
                return Err(Error::parse(
                    path,
                    lineno,
                    format!("row label {:?}, expected {expected:?}", fields[0]),
                ));
            }
            fields.remove(0);
        }
        if fields.len() != dim {
            return Err(Error::parse(
                path,
                lineno,
                format!("expected {dim} costs, found {}", fields.len()),
            ));
        }
        let row = fields
            .iter()
            .enumerate()
            .map(|(c, f)| match *f {
                "-" if c == r => Ok(0.0),
                _ => f.parse::<f64>().map_err(|_| {
                    Error::parse(path, lineno, format!("bad cost {f:?} in column {}", c + 1))
                }),
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.len() != dim {
        return Err(Error::parse(
            path,
            text.lines().count(),
            format!("expected {dim} cost rows, found {}", rows.len()),
        ));
    }

    let model = CostModel::from_rows(file_alphabet, &rows)
        .map_err(|e| Error::parse(path, hline, e.to_string()))?;
    match alphabet {
        Some(target) if target != model.alphabet() => model
            .reindexed(target)
            .map_err(|e| Error::parse(path, hline, e.to_string())),
        _ => Ok(model),
    }
}

pub fn format_cost_matrix(model: &CostModel) -> String {
    let alphabet = model.alphabet();
    let labels: Vec<String> = alphabet
        .symbols()
        .iter()
        .map(char::to_string)
        .chain(std::iter::once(EPS_TOKEN.to_string()))
        .collect();
    let mut out = labels.join("\t");
    out.push('\n');
    let eps = alphabet.epsilon();
    for (i, row) in model.rows().iter().enumerate() {
        out.push_str(&labels[i]);
        for (j, c) in row.iter().enumerate() {
            if i == eps && j == eps {
                out.push_str("\t-");
            } else {
                let _ = write!(out, "\t{c}");
            }
        }
        out.push('\n');
    }
    out
}

pub fn save_cost_matrix(path: impl AsRef<Path>, model: &CostModel) -> Result<()> {
    std::fs::write(path, format_cost_matrix(model))?;
    Ok(())
}
