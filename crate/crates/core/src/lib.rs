pub mod bchgroup;
pub mod cohomology;
pub mod crossedmod;
pub mod fiveterm;
pub mod freelie;
pub mod liering;
pub mod ring;
pub mod schur;
pub mod triples;
pub mod zoo;

pub use ring::PLocalRat;

/// Free associative series with exact rational coefficients.
pub type RatSeries = freelie::FreeAssoc<PLocalRat>;
/// Lie elements in the Lyndon basis with exact rational coefficients.
pub type RatLieCoords = freelie::LieCoords<PLocalRat>;
