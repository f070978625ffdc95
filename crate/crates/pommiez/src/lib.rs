//! Exact operator calculus for generalized backward shifts, their commutant
//! operators, functional convolution, and generalized Duhamel products.
//!
//! Everything is computed over the Gaussian rationals `Q(i)` with exact
//! arithmetic: equality checks are literal, never approximate.
//!
//! # The generalized backward shift
//!
//! A generator `g0` is a product of factors `(1 - z/r)` with nonzero roots
//! `r`, so `g0(0) = 1`. The generalized backward shift sends `f` to
//! `(f - g0 * f(0)) / z`, which is always an exact polynomial division:
//!
//! ```
//! use pommiez::factored::FactoredPoly;
//! use pommiez::operators::{gbs_apply, G0Config};
//! use pommiez::parse::{parse_function, poly_to_expr};
//! use pommiez::scalar::GaussianRational;
//!
//! let g0 = FactoredPoly::new(vec![("1".parse().unwrap(), 1)]).unwrap();
//! let cfg = G0Config::new(g0, GaussianRational::zero());
//! let f = parse_function("1+z^2").unwrap();
//! // (1 + z^2 - (1 - z) * 1) / z = 1 + z
//! assert_eq!(poly_to_expr(&gbs_apply(&cfg, &f)), "1+z");
//! ```
//!
//! # Commutant operators
//!
//! Every finitely supported functional `phi` (a combination of point
//! evaluations of derivatives, written `delta(point, order)`) induces an
//! operator `B_phi` commuting with the shift. Applying `B_phi` and reading
//! off the value at zero recovers `phi` itself:
//!
//! ```
//! use pommiez::commutant::bphi_apply;
//! use pommiez::factored::FactoredPoly;
//! use pommiez::operators::G0Config;
//! use pommiez::parse::{parse_function, parse_functional};
//! use pommiez::scalar::GaussianRational;
//!
//! let g0 = FactoredPoly::new(vec![("1".parse().unwrap(), 1)]).unwrap();
//! let cfg = G0Config::new(g0, GaussianRational::zero());
//! let phi = parse_functional("delta(1,0)").unwrap();
//! let f = parse_function("z^2").unwrap();
//! let image = bphi_apply(&cfg, &phi, &f);
//! assert_eq!(image.eval(&GaussianRational::zero()), phi.apply(&f));
//! ```
//!
//! # Functional convolution and the Duhamel product
//!
//! The convolution `otimes` makes the functionals an algebra mirroring
//! operator composition, and the Duhamel product is its function-side
//! counterpart on jets (truncated Taylor expansions):
//!
//! ```
//! use pommiez::duhamel::{duhamel_product, DuhamelConfig};
//! use pommiez::factored::FactoredPoly;
//! use pommiez::jet::Jet;
//! use pommiez::parse::parse_function;
//! use pommiez::scalar::GaussianRational;
//!
//! let p = FactoredPoly::new(vec![("1".parse().unwrap(), 1)]).unwrap();
//! let cfg = DuhamelConfig::new(p, GaussianRational::zero());
//! let z = parse_function("z").unwrap();
//! let zero = GaussianRational::zero();
//! let prod = duhamel_product(&cfg, &Jet::of_poly(&z, &zero, 9), &Jet::of_poly(&z, &zero, 8)).unwrap();
//! // z * z = z^2/2 - z for the generator 1 - z.
//! assert_eq!(prod.coeff(1), -GaussianRational::one());
//! assert_eq!(prod.coeff(2), GaussianRational::ratio(1, 2));
//! ```
//!
//! The [`verify`] module bundles the hard invariants into named suites, and
//! [`audit`] records observed behavior against documented predictions
//! without asserting agreement.

pub mod audit;
pub mod bivar;
pub mod commutant;
pub mod duhamel;
pub mod error;
pub mod exppoly;
pub mod factored;
pub mod functional;
pub mod jet;
pub mod linalg;
pub mod operators;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod scenario;
pub mod verify;
