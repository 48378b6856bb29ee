//! Finite-valued reversible and conservative logic gates.
//!
//! The crate is organised bottom-up:
//!
//! * [`values`]: exact truth values of `L_d` and the Łukasiewicz/Gödel/modal connectives.
//! * [`gates`]: dense gate tables, named gates, the `f1`/`f2`/`m` families and their properties.
//! * [`thermo`]: Landauer entropy accounting.
//! * [`transforms`]: reversibilization and conservativization of Boolean gates.
//! * [`synthesis`]: expression trees and the GDNF/GCNF/Clay normal forms.
//! * [`search`]: constrained enumeration of `(3, d)` gates and connective extraction.
//! * [`algebra`]: a finite model checker for BZW/BZMV/MV style axiom systems.

pub mod algebra;
pub mod error;
pub mod gates;
pub mod search;
pub mod synthesis;
pub mod thermo;
pub mod transforms;
pub mod values;

pub use error::{Error, Result};
pub use gates::{Family, Gate, GateReport};
pub use values::{BinaryConnective, UnaryConnective, Value};
