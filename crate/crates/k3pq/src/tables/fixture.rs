use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// One row as printed: the first curve's genus, eigenspace dimensions and
/// ramification counts, the singularities `[count, d, q]`, `K^2` of the
/// resolution, the fixed locus `[n, g, k+1]` and the family dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureRow {
    pub p: i64,
    pub g1: i64,
    pub alpha_multiset: Vec<i64>,
    pub branch_counts: Vec<i64>,
    pub singularities: Vec<[i64; 3]>,
    #[serde(rename = "K2")]
    pub k2: i64,
    pub fixed_locus: (i64, Option<i64>, i64),
    pub m: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFixture {
    pub table: u8,
    pub rows: Vec<FixtureRow>,
}

impl TableFixture {
    /// Group order of the rows: `p` for table 1, `2p` for table 2.
    pub fn doubled(&self) -> bool {
        self.table == 2
    }
}

const TABLE1: &str = include_str!("../../../../tables/table1.json");
const TABLE2: &str = include_str!("../../../../tables/table2.json");

/// The bundled fixture for table 1 or 2.
pub fn load_table(table: u8) -> Result<TableFixture> {
    let text = match table {
        1 => TABLE1,
        2 => TABLE2,
        other => return Err(Error::Fixture(format!("there is no table {other}"))),
    };
    let fixture: TableFixture = serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))?;
    if fixture.table != table {
        return Err(Error::Fixture(format!("file for table {table} declares table {}", fixture.table)));
    }
    Ok(fixture)
}
