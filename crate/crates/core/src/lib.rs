//! Characteristic-2 algebra around the Nicolas–Serre code.
//!
//! * [`gf2poly`]: packed odd-exponent polynomials over Z/2 and their `w`-images.
//! * [`nscode`]: the code `(a,b) ↔ t^n`, its order, and the `t^{2q²}` laws.
//! * [`recurrences`]: the `(*)` / `(**)` generators and dominance conditions.
//! * [`wcode`]: the variant code `⟨a,b⟩` and the polynomials `P_k`.
//!
//! Every `verify_*` function returns a [`VerificationReport`] carrying the
//! first counterexample in a fixed grid order, independent of thread count.

mod bits;
pub mod error;
pub mod gf2poly;
pub mod nscode;
pub mod recurrences;
pub mod report;
pub mod wcode;

pub use error::{Error, Result};
pub use gf2poly::{DensePoly, OddPoly, WPoly};
pub use nscode::CodePair;
pub use recurrences::{Condition, Family, Kind, SequenceSpec};
pub use report::{Counterexample, Location, VerificationReport};
pub use wcode::WCodePair;
