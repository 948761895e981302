//! The embedded reference table: every printed invariant value at
//! t1 = t2 = t3 = 1, indexed by (total insertions, floor(n2/3)). The omega-bar
//! count follows from the layout rule n2 = 3*col + ((-total) mod 3).

use crate::rat::{rat_from_str, Rat};

/// (total insertions, column floor(n2/3), value as "p/q", non-equivariant?).
pub const GOLDEN: &[(u32, u32, &str, bool)] = &[
    (3, 0, "1/3", true),
    (3, 1, "1/3", false),
    (4, 0, "-1/3", false),
    (5, 0, "1/9", false),
    (5, 1, "2/9", false),
    (6, 0, "-1/27", true),
    (6, 1, "-8/27", false),
    (6, 2, "-10/27", false),
    (7, 0, "7/27", false),
    (7, 1, "19/27", false),
    (8, 0, "-5/27", false),
    (8, 1, "-98/81", false),
    (8, 2, "-179/81", false),
    (9, 0, "1/9", true),
    (9, 1, "398/243", false),
    (9, 2, "1274/243", false),
    (9, 3, "686/81", false),
    (10, 0, "-451/243", false),
    (10, 1, "-905/81", false),
    (10, 2, "-6172/243", false),
    (11, 0, "1319/729", false),
    (11, 1, "14734/729", false),
    (11, 2, "52189/729", false),
    (11, 3, "100762/729", false),
    (12, 0, "-1093/729", true),
    (12, 1, "-7684/243", false),
    (12, 2, "-400010/2187", false),
    (12, 3, "-38884/81", false),
    (12, 4, "-612100/729", false),
    (15, 0, "119401/2187", true),
    (18, 0, "-27428707/6561", true),
    (21, 0, "102777653467/177147", true),
    (24, 0, "-210755831694887/1594323", true),
];

/// The omega-bar count of a table slot; may exceed the total for columns
/// past the row's end.
pub fn slot_n2(total: u32, col: u32) -> u32 {
    3 * col + ((-(total as i64)).rem_euclid(3)) as u32
}

/// The (n1, n2) behind a table slot.
pub fn slot_key(total: u32, col: u32) -> (u32, u32) {
    let n2 = slot_n2(total, col);
    assert!(n2 <= total, "column {col} is outside row {total}");
    (total - n2, n2)
}

pub struct GoldenEntry {
    pub n1: u32,
    pub n2: u32,
    pub value: Rat,
    pub bold: bool,
}

pub fn entries() -> Vec<GoldenEntry> {
    GOLDEN
        .iter()
        .map(|(total, col, s, bold)| {
            let (n1, n2) = slot_key(*total, *col);
            GoldenEntry {
                n1,
                n2,
                value: rat_from_str(s).expect("golden table literal"),
                bold: *bold,
            }
        })
        .collect()
}
