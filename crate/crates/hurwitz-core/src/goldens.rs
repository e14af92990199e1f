//! Bundled golden tables: class numbers H^M(D) for D <= 100 and the sums
//! S^M(N) for N <= 25, as published. Shipped as CSV fixtures (one file per
//! table) and embedded here so verification runs without any filesystem
//! setup; an alternate fixture directory can be loaded for diffing.

use crate::arith::ExactRational;
use crate::{Error, Result};

pub const CLASS_TABLE_LOW: &str = include_str!("../fixtures/hurwitz_table_m1_8.csv");
pub const CLASS_TABLE_HIGH: &str = include_str!("../fixtures/hurwitz_table_m9_25.csv");
pub const SUM_TABLE_LOW: &str = include_str!("../fixtures/sum_table_m1_8.csv");
pub const SUM_TABLE_HIGH: &str = include_str!("../fixtures/sum_table_m9_25.csv");

/// The four bundled fixture file names, in load order.
pub const FIXTURE_FILES: [&str; 4] = [
    "hurwitz_table_m1_8.csv",
    "hurwitz_table_m9_25.csv",
    "sum_table_m1_8.csv",
    "sum_table_m9_25.csv",
];

/// One golden cell: key is a discriminant (class tables) or an index N
/// (sum tables), together with the level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenEntry {
    pub key: i64,
    pub level: i64,
    pub value: ExactRational,
}

fn parse_csv(text: &str, key_column: &str) -> Result<Vec<GoldenEntry>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().unwrap_or_default().trim();
    if header != format!("{key_column},level,num,den") {
        return Err(Error::BadFixture(format!("unexpected header '{header}'")));
    }
    let mut entries = Vec::new();
    for line in lines {
        let fields: Vec<i64> = line
            .trim()
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::BadFixture(format!("bad line '{line}'")))?;
        let [key, level, num, den] = fields[..] else {
            return Err(Error::BadFixture(format!("bad line '{line}'")));
        };
        entries.push(GoldenEntry {
            key,
            level,
            value: ExactRational::new(num, den)?,
        });
    }
    Ok(entries)
}

/// All class-number cells (D, M, H^M(D)) from the bundled tables.
pub fn class_number_table() -> Vec<GoldenEntry> {
    let mut all = parse_csv(CLASS_TABLE_LOW, "disc").expect("bundled fixture");
    all.extend(parse_csv(CLASS_TABLE_HIGH, "disc").expect("bundled fixture"));
    all
}

/// All sum cells (N, M, S^M(N)) from the bundled tables.
pub fn sum_table() -> Vec<GoldenEntry> {
    let mut all = parse_csv(SUM_TABLE_LOW, "n").expect("bundled fixture");
    all.extend(parse_csv(SUM_TABLE_HIGH, "n").expect("bundled fixture"));
    all
}

/// Loads the same four fixture files from a directory instead of the
/// bundled copies.
pub fn load_from_dir(dir: &std::path::Path) -> Result<(Vec<GoldenEntry>, Vec<GoldenEntry>)> {
    let read = |name: &str, key: &str| -> Result<Vec<GoldenEntry>> {
        let path = dir.join(name);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::BadFixture(format!("{}: {e}", path.display())))?;
        parse_csv(&text, key)
    };
    let mut class = read(FIXTURE_FILES[0], "disc")?;
    class.extend(read(FIXTURE_FILES[1], "disc")?);
    let mut sums = read(FIXTURE_FILES[2], "n")?;
    sums.extend(read(FIXTURE_FILES[3], "n")?);
    Ok((class, sums))
}
