#include "fairfold/kmeans.hpp"

#include <algorithm>
#include <limits>

#include "fairfold/neighbors.hpp"

namespace fairfold {

namespace {

// Nearest centroid for one point; ties go to the lower cluster id.
std::pair<std::size_t, double> nearest_centroid(const KMeansModel& model,
                                                std::span<const double> point) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < model.k; ++c) {
        const double dist = squared_distance(point, model.centroid(c));
        if (dist < best_dist) {
            best_dist = dist;
            best = c;
        }
    }
    return {best, best_dist};
}

}  // namespace

KMeansModel kmeans(const Dataset& data, std::span<const std::size_t> rows, std::size_t k,
                   SeededRng& rng, std::size_t max_iters, double rel_tol) {
    const std::size_t n = rows.size();
    if (k == 0) raise(Errc::InvalidValue, "kmeans needs k >= 1");
    if (n < k) raise(Errc::InvalidValue, "kmeans needs at least k points");
    const std::size_t d = data.cols();

    KMeansModel model;
    model.k = k;
    model.dims = d;
    model.centroids.assign(k * d, 0.0);
    model.assignment.assign(n, 0);

    // k-means++ seeding: first centroid uniform, the rest D^2-weighted.
    std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
    {
        const std::size_t first = static_cast<std::size_t>(rng.next_below(n));
        const auto row = data.row(rows[first]);
        std::copy(row.begin(), row.end(), model.centroids.begin());
    }
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dist =
                squared_distance(data.row(rows[i]), model.centroid(c - 1));
            if (dist < min_dist[i]) min_dist[i] = dist;
            total += min_dist[i];
        }
        std::size_t chosen = 0;
        if (total <= 0.0) {
            chosen = static_cast<std::size_t>(rng.next_below(n));
        } else {
            const double target = rng.next_double() * total;
            double cumulative = 0.0;
            chosen = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                cumulative += min_dist[i];
                if (cumulative > target) {
                    chosen = i;
                    break;
                }
            }
        }
        const auto row = data.row(rows[chosen]);
        std::copy(row.begin(), row.end(), model.centroids.begin() + c * d);
    }

    auto assign_pass = [&](std::vector<std::size_t>& assignment) {
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto [cluster, dist] = nearest_centroid(model, data.row(rows[i]));
            assignment[i] = cluster;
            inertia += dist;
        }
        return inertia;
    };

    double inertia = assign_pass(model.assignment);
    model.inertia_history.push_back(inertia);

    std::vector<std::size_t> counts(k, 0);
    std::vector<std::size_t> next_assignment(n, 0);
    for (std::size_t iter = 1; iter <= max_iters; ++iter) {
        model.iterations = iter;

        // Means of the current assignment.
        std::fill(model.centroids.begin(), model.centroids.end(), 0.0);
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = data.row(rows[i]);
            const std::size_t c = model.assignment[i];
            ++counts[c];
            for (std::size_t j = 0; j < d; ++j) model.centroids[c * d + j] += row[j];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                model.centroids[c * d + j] /= static_cast<double>(counts[c]);
            }
        }
        // Reseed each empty cluster at the point farthest from its nearest
        // centroid; recompute after each placement so repairs stay distinct.
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            std::size_t farthest = 0;
            double farthest_dist = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double dist = nearest_centroid(model, data.row(rows[i])).second;
                if (dist > farthest_dist) {
                    farthest_dist = dist;
                    farthest = i;
                }
            }
            const auto row = data.row(rows[farthest]);
            std::copy(row.begin(), row.end(), model.centroids.begin() + c * d);
            counts[c] = 1;  // occupied from here on
        }

        const double next_inertia = assign_pass(next_assignment);
        model.inertia_history.push_back(next_inertia);
        const bool stable = next_assignment == model.assignment;
        const bool converged =
            inertia > 0.0 && (inertia - next_inertia) <= rel_tol * inertia;
        model.assignment.swap(next_assignment);
        inertia = next_inertia;
        if (stable || converged) break;
    }

    model.inertia = inertia;
    return model;
}

}  // namespace fairfold
