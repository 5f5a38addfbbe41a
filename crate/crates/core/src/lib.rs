//! Bohr-type radii for subordination and majorization classes of analytic
//! functions on the unit disk.
//!
//! [`radii`] gives each radius in closed form and by bisection on its
//! defining inequality. [`series`] provides truncated power series with
//! geometric tail bounds, so majorant sums come as certified enclosures.
//! [`harness`] checks each inequality on sampled witnesses and scans the
//! extremal families for sharpness.

pub mod cli;
pub mod error;
pub mod families;
pub mod harness;
pub mod radii;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use families::{Family, Which};
pub use harness::{run_all, run_suite, RunOptions, SuiteId, TheoremReport};
pub use radii::{RadiusId, RadiusResult, RadiusSetting, Target};
pub use series::{MajorantValue, TailBound, TruncatedSeries};
