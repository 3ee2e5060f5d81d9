#pragma once

#include <span>
#include <vector>

#include "fairfold/dataset.hpp"
#include "fairfold/rng.hpp"

namespace fairfold {

struct KMeansModel {
    std::size_t k = 0;
    std::size_t dims = 0;
    std::vector<double> centroids;         ///< row-major k x dims
    std::vector<std::size_t> assignment;   ///< per input point, cluster id
    double inertia = 0.0;                  ///< sum of squared distances to assigned centroid
    std::vector<double> inertia_history;   ///< one entry per assignment pass
    std::size_t iterations = 0;

    std::span<const double> centroid(std::size_t c) const {
        return {centroids.data() + c * dims, dims};
    }
};

/// Lloyd iterations with k-means++ seeding. Stops when the assignment is a
/// fixed point, when the relative inertia improvement drops below rel_tol,
/// or after max_iters. Empty clusters are reseeded at the point farthest
/// from its nearest centroid.
KMeansModel kmeans(const Dataset& data, std::span<const std::size_t> rows, std::size_t k,
                   SeededRng& rng, std::size_t max_iters = 300, double rel_tol = 1e-4);

}  // namespace fairfold
