pub mod cmc;
pub mod cmcx;
pub mod complexes;
pub mod cone;
pub mod construct;
pub mod error;
pub mod fan;
pub mod fixtures;
pub mod exactlin;
pub mod hyper;
pub mod io;
pub mod sample;
pub mod strata;
pub mod weightfilt;

pub use cone::Cone;
pub use error::{Error, Result};
pub use exactlin::{Rat, RatMatrix, Subspace};
