//! Exact verification of omega-binomial identities, Serre-style generating
//! functions, and orthogonality of Bethe-root polynomials for the
//! superintegrable chiral Potts spin chain.
//!
//! Everything upstream of the final numeric enclosures is exact arithmetic in
//! the cyclotomic field Q(zeta_{2N}); the enclosures themselves are rational
//! ball arithmetic, so a containment check that passes is a proof and a
//! failure is a counterexample candidate, never a rounding artifact.

pub mod ball;
pub mod compositions;
pub mod cyclotomic;
pub mod error;
pub mod identities;
pub mod polyform;
pub mod qseries;
pub mod report;
pub mod roots;

pub use ball::{ComplexBall, RealBall};
pub use compositions::{Composition, CompositionIter};
pub use cyclotomic::{CycField, CycNum};
pub use error::Error;
pub use polyform::{drinfeld, CycPoly, DrinfeldData};
pub use qseries::QBinomialTable;
pub use report::{run_bench, run_verify, OutputFormat, RunConfig, Suite, VerificationReport};
pub use roots::RootSet;
