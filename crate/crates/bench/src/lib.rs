//! Fixed inputs shared by the benchmarks.

use gaussbm::sampling::{random_body, random_function, stream_rng};
use gaussbm::{BoundaryFunction, SupportBody};

/// A reproducible body and test function of the given Fourier degree.
pub fn fixture(degree: usize) -> (SupportBody, BoundaryFunction) {
    let mut rng = stream_rng(42, degree as u64);
    (random_body(&mut rng, degree), random_function(&mut rng, degree))
}
