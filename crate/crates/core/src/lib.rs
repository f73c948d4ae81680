//! Exact and numerical tools around the Dedekind eta function: q-series on a
//! 1/24 exponent grid, modular forms and their identities, Weierstrass
//! functions on explicit lattices, the Q₈ decomposition of the hexagonal
//! lattice, coset data of small-index subgroups of the modular group, and a
//! monodromy scanner for an η⁸ Lamé-type equation.

pub mod cosets;
pub mod modforms;
pub mod numeric;
pub mod ode;
pub mod q8lattice;
pub mod qseries;

use num_rational::BigRational;

/// Exact series with rational coefficients.
pub type QSeries = qseries::FracSeries<BigRational>;
pub type Lattice64 = numeric::Lattice<f64>;
pub type Lattice32 = numeric::Lattice<f32>;
pub type EllipticModel64 = numeric::EllipticModel<f64>;
pub type C64 = num_complex::Complex<f64>;
