//! Reference tables and their verification against the pipeline.

mod fixture;
mod gate;
mod verify;

pub use fixture::{load_table, FixtureRow, TableFixture};
pub use gate::{gate_row, Cell, GateReport};
pub use verify::{verify_table, CellReport, CellStatus, Route, RowReport, VerificationReport};
