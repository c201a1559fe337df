//! Scenario definition and the quantities derived from it that both the
//! analytic solver and the simulator consume.

mod colored;
mod degree;
mod masks;
mod scenario;
mod transmissibility;

pub use colored::{colored_degree_pmf, degree_moments, ColoredDegreePmf, DegreeMoments};
pub use degree::{ColoredDegree, DegreeKind, DegreePmf, DegreeSampler, DEFAULT_TAIL_TOLERANCE};
pub use masks::MaskSet;
pub use scenario::{validate_scenario, ScenarioConfig, DEFAULT_EMERGENCE_THRESHOLD};
pub use transmissibility::{build_transmissibility, TransmissibilityMatrices};
