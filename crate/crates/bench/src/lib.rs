//! Shared inputs for the benchmarks.

use wphodge::jacring::jacobian_ring;
use wphodge::polyalg::fermat_polynomial;
use wphodge::{JacobianRingModel, WeightSystem, WeightedPolynomial};

pub fn decic() -> WeightSystem {
    WeightSystem::new([1, 1, 2, 5], 10).expect("valid weight system")
}

pub fn fermat_decic() -> WeightedPolynomial {
    fermat_polynomial(&decic()).expect("Fermat member exists")
}

pub fn fermat_decic_ring() -> JacobianRingModel {
    jacobian_ring(&fermat_decic()).expect("Fermat member is quasi-smooth")
}
