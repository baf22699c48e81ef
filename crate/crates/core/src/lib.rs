//! Numerical engine for Q-Fano threefolds of large Fano index.
//!
//! Orbifold Riemann-Roch over baskets of terminal quotient points, search
//! for numerical candidates of a given index, weighted hypersurface
//! Hilbert series, and the Diophantine side of Sarkisov links with
//! replayable case eliminations.

pub mod basket;
pub mod error;
pub mod orbifold_rr;
pub mod ratmod;
pub mod sarkisov;
pub mod search;
pub mod wps;

pub use basket::{Basket, BasketPoint, IndexBasket, PointKind, SingularPointSpec};
pub use error::{Error, Result};
pub use orbifold_rr::FanoCandidate;
pub use ratmod::{Rational, Residue};
pub use sarkisov::{LinkKind, LinkScenario, LinkSolution, ReplayConfig, Trace, Verdict};
pub use search::{SearchConfig, SearchResult};
pub use wps::{EquivariantSeries, WeightedHypersurface};
