#pragma once

#include "fairfold/dataset.hpp"
#include "fairfold/rng.hpp"

namespace fairfold {

/// Builds a dataset with zero signal: both classes are drawn i.i.d. from the
/// same standard multivariate normal, so no classifier can beat chance on
/// held-out original rows. Any measured lift above 0.5 under an evaluation
/// scheme is an artifact of that scheme. Requires n_minority >= 5, dims >= 2
/// and n_majority >= n_minority.
Dataset generate_leak_probe(std::size_t n_majority, std::size_t n_minority, std::size_t dims,
                            SeededRng& rng);

}  // namespace fairfold
