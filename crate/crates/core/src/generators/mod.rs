//! Instance factories and experiment drivers.

pub mod fewbody;
pub mod random;
pub mod sharpness;
pub mod sweep;

pub use fewbody::{few_body_hamiltonian, FewBodyConfig, FewBodyInstance};
pub use random::{
    random_hermitian_with_spectrum, random_perturbation, DispositionDraw, Field, PerturbationClass,
};
pub use sharpness::{sharpness_search, Objective, SearchConfig, SearchResult};
pub use sweep::{sweep, EnsembleConfig, EnsembleRecord, SpectrumLaw};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent, reproducible generator for work item `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
