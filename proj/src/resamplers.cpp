#include "fairfold/resamplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "fairfold/csv.hpp"
#include "fairfold/kmeans.hpp"
#include "fairfold/neighbors.hpp"

namespace fairfold {

namespace {

void require_both_classes(const Dataset& train) {
    if (!train.both_classes_present()) {
        raise(Errc::SingleClass, "resampling needs both classes in the training set");
    }
    // The whole harness codes the minority class as positive; flag the
    // configuration upfront instead of balancing in the wrong direction.
    if (train.positives() > train.negatives()) {
        raise(Errc::MinorityExceedsMajority,
              "positive (minority-coded) rows outnumber negative rows; map --positive to "
              "the minority label");
    }
}

Dataset copy_all_rows(const Dataset& train) {
    std::vector<std::size_t> ids(train.rows());
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    return train.subset(ids);
}

ResampleOutput passthrough(const Dataset& train, ResamplerKind kind) {
    ResampleOutput out{copy_all_rows(train), kind, count_labels(train), count_labels(train)};
    return out;
}

std::vector<double> interpolate(std::span<const double> seed, std::span<const double> partner,
                                double coeff) {
    std::vector<double> values(seed.size());
    for (std::size_t j = 0; j < seed.size(); ++j) {
        values[j] = seed[j] + coeff * (partner[j] - seed[j]);
    }
    return values;
}

}  // namespace

const char* resampler_name(ResamplerKind kind) {
    switch (kind) {
        case ResamplerKind::None: return "none";
        case ResamplerKind::Ros: return "ros";
        case ResamplerKind::Rus: return "rus";
        case ResamplerKind::Smote: return "smote";
        case ResamplerKind::SvmSmote: return "svmsmote";
        case ResamplerKind::Adasyn: return "adasyn";
        case ResamplerKind::ClusterCentroids: return "cc";
    }
    return "?";
}

const char* resampler_label(ResamplerKind kind) {
    switch (kind) {
        case ResamplerKind::None: return "BEF";
        case ResamplerKind::Ros: return "ROS";
        case ResamplerKind::Rus: return "RUS";
        case ResamplerKind::Smote: return "SMOTE";
        case ResamplerKind::SvmSmote: return "SVMSMOTE";
        case ResamplerKind::Adasyn: return "ADASYN";
        case ResamplerKind::ClusterCentroids: return "CC";
    }
    return "?";
}

LabelCounts count_labels(const Dataset& data) {
    return LabelCounts{data.positives(), data.negatives()};
}

ResampleOutput resample(ResamplerKind kind, const Dataset& train, SeededRng& rng,
                        std::size_t k_neighbors) {
    switch (kind) {
        case ResamplerKind::None: return passthrough(train, ResamplerKind::None);
        case ResamplerKind::Ros: return ros(train, rng);
        case ResamplerKind::Rus: return rus(train, rng);
        case ResamplerKind::Smote: return smote(train, k_neighbors, rng);
        case ResamplerKind::SvmSmote: return svmsmote(train, k_neighbors, rng);
        case ResamplerKind::Adasyn: return adasyn(train, k_neighbors, rng);
        case ResamplerKind::ClusterCentroids: return cluster_centroids(train, rng);
    }
    raise(Errc::InvalidValue, "unknown resampler kind");
}

ResampleOutput ros(const Dataset& train, SeededRng& rng) {
    require_both_classes(train);
    const auto minority = train.minority_rows();
    const bool minority_positive = train.minority_is_positive();
    const std::size_t gap = train.majority_rows().size() - minority.size();

    ResampleOutput out = passthrough(train, ResamplerKind::Ros);
    for (std::size_t g = 0; g < gap; ++g) {
        const std::size_t src = minority[rng.next_below(minority.size())];
        out.data.append_row(train.row(src), minority_positive,
                            RowOrigin::synthetic(src, std::nullopt, 0.0));
    }
    out.after = count_labels(out.data);
    return out;
}

ResampleOutput rus(const Dataset& train, SeededRng& rng) {
    require_both_classes(train);
    const auto minority = train.minority_rows();
    auto majority = train.majority_rows();

    // Partial Fisher-Yates: the first n_minority slots become the kept sample.
    for (std::size_t i = 0; i < minority.size(); ++i) {
        const std::size_t j = i + rng.next_below(majority.size() - i);
        std::swap(majority[i], majority[j]);
    }
    majority.resize(minority.size());

    std::vector<std::size_t> kept;
    kept.reserve(2 * minority.size());
    kept.insert(kept.end(), minority.begin(), minority.end());
    kept.insert(kept.end(), majority.begin(), majority.end());
    std::sort(kept.begin(), kept.end());

    ResampleOutput out;
    out.method = ResamplerKind::Rus;
    out.before = count_labels(train);
    out.data = train.subset(kept);
    out.after = count_labels(out.data);
    return out;
}

ResampleOutput smote(const Dataset& train, std::size_t k_neighbors, SeededRng& rng) {
    require_both_classes(train);
    auto minority = train.minority_rows();
    if (minority.size() == 1) {
        raise(Errc::MinoritySingleton, "interpolation needs at least two minority rows");
    }
    const bool minority_positive = train.minority_is_positive();
    const std::size_t gap = train.majority_rows().size() - minority.size();

    ResampleOutput out = passthrough(train, ResamplerKind::Smote);
    if (gap == 0) return out;

    const NeighborIndex index(train, minority);
    const std::size_t k = std::min(k_neighbors, minority.size() - 1);

    // Budget: gap spread round-robin over the shuffled minority order, the
    // remainder going to the first rows of that order.
    rng.shuffle(minority);
    const std::size_t base = gap / minority.size();
    const std::size_t remainder = gap % minority.size();

    for (std::size_t i = 0; i < minority.size(); ++i) {
        const std::size_t budget = base + (i < remainder ? 1 : 0);
        if (budget == 0) continue;
        const std::size_t seed = minority[i];
        const auto neighbors = index.query_row(seed, k);
        for (std::size_t g = 0; g < budget; ++g) {
            const std::size_t partner = neighbors[rng.next_below(neighbors.size())];
            const double lambda = rng.next_double();
            const auto values = interpolate(train.row(seed), train.row(partner), lambda);
            out.data.append_row(values, minority_positive,
                                RowOrigin::synthetic(seed, partner, lambda));
        }
    }
    out.after = count_labels(out.data);
    return out;
}

ResampleOutput adasyn(const Dataset& train, std::size_t k_neighbors, SeededRng& rng) {
    require_both_classes(train);
    const auto minority = train.minority_rows();
    if (minority.size() == 1) {
        raise(Errc::MinoritySingleton, "interpolation needs at least two minority rows");
    }
    const bool minority_positive = train.minority_is_positive();
    const std::size_t gap = train.majority_rows().size() - minority.size();

    ResampleOutput out = passthrough(train, ResamplerKind::Adasyn);
    if (gap == 0) return out;

    // Density ratio per minority row: majority share of its neighborhood in
    // the full training set.
    std::vector<std::size_t> all_rows(train.rows());
    std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
    const NeighborIndex full_index(train, all_rows);
    const std::size_t k_full = std::min(k_neighbors, train.rows() - 1);

    std::vector<double> ratio(minority.size(), 0.0);
    double ratio_sum = 0.0;
    for (std::size_t i = 0; i < minority.size(); ++i) {
        const auto neighbors = full_index.query_row(minority[i], k_full);
        std::size_t n_majority = 0;
        for (const std::size_t id : neighbors) {
            if (train.positive(id) != minority_positive) ++n_majority;
        }
        ratio[i] = static_cast<double>(n_majority) / static_cast<double>(k_full);
        ratio_sum += ratio[i];
    }
    if (ratio_sum == 0.0) {
        raise(Errc::NoBorderline,
              "every minority neighborhood is pure minority; nothing to adapt to");
    }

    // Largest-remainder apportionment of the budget over normalized ratios.
    std::vector<std::size_t> budget(minority.size(), 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    remainders.reserve(minority.size());
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < minority.size(); ++i) {
        const double quota = ratio[i] / ratio_sum * static_cast<double>(gap);
        budget[i] = static_cast<std::size_t>(std::floor(quota));
        assigned += budget[i];
        remainders.emplace_back(quota - std::floor(quota), i);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (std::size_t r = 0; r < gap - assigned; ++r) ++budget[remainders[r].second];

    const NeighborIndex minority_index(train, minority);
    const std::size_t k_min = std::min(k_neighbors, minority.size() - 1);
    for (std::size_t i = 0; i < minority.size(); ++i) {
        if (budget[i] == 0) continue;
        const std::size_t seed = minority[i];
        const auto neighbors = minority_index.query_row(seed, k_min);
        for (std::size_t g = 0; g < budget[i]; ++g) {
            const std::size_t partner = neighbors[rng.next_below(neighbors.size())];
            const double lambda = rng.next_double();
            const auto values = interpolate(train.row(seed), train.row(partner), lambda);
            out.data.append_row(values, minority_positive,
                                RowOrigin::synthetic(seed, partner, lambda));
        }
    }
    out.after = count_labels(out.data);
    return out;
}

ResampleOutput svmsmote(const Dataset& train, std::size_t k_neighbors, SeededRng& rng) {
    require_both_classes(train);
    const auto minority = train.minority_rows();
    if (minority.size() == 1) {
        raise(Errc::MinoritySingleton, "interpolation needs at least two minority rows");
    }
    const bool minority_positive = train.minority_is_positive();
    const std::size_t gap = train.majority_rows().size() - minority.size();

    ResampleOutput out = passthrough(train, ResamplerKind::SvmSmote);
    if (gap == 0) return out;

    // Linear hinge-loss separator, subgradient descent with the classic
    // 1/(lambda*t) step schedule. Only its margin band matters here.
    constexpr std::size_t kEpochs = 200;
    constexpr double kRegularization = 1e-2;
    const std::size_t n = train.rows();
    const std::size_t d = train.cols();
    std::vector<double> weights(d, 0.0);
    double bias = 0.0;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::size_t t = 0;
    for (std::size_t epoch = 0; epoch < kEpochs; ++epoch) {
        rng.shuffle(order);
        for (const std::size_t i : order) {
            ++t;
            const double step = 1.0 / (kRegularization * static_cast<double>(t));
            const double y = train.positive(i) == minority_positive ? 1.0 : -1.0;
            const auto row = train.row(i);
            double decision = bias;
            for (std::size_t j = 0; j < d; ++j) decision += weights[j] * row[j];
            const double shrink = 1.0 - step * kRegularization;
            if (y * decision < 1.0) {
                for (std::size_t j = 0; j < d; ++j) {
                    weights[j] = shrink * weights[j] + step * y * row[j];
                }
                bias += step * y;
            } else {
                for (std::size_t j = 0; j < d; ++j) weights[j] = shrink * weights[j];
            }
        }
    }
    const auto decision_value = [&](std::size_t row_id) {
        double value = bias;
        const auto row = train.row(row_id);
        for (std::size_t j = 0; j < d; ++j) value += weights[j] * row[j];
        return value;
    };

    // Seeds: minority rows inside the margin band, or all of them when the
    // band is empty.
    std::vector<std::size_t> seeds;
    for (const std::size_t id : minority) {
        if (std::abs(decision_value(id)) <= 1.0) seeds.push_back(id);
    }
    if (seeds.empty()) seeds = minority;

    std::vector<std::size_t> all_rows(n);
    std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
    const NeighborIndex full_index(train, all_rows);
    const NeighborIndex minority_index(train, minority);
    const std::size_t k_full = std::min(k_neighbors, n - 1);
    const std::size_t k_min = std::min(k_neighbors, minority.size() - 1);

    struct SeedInfo {
        std::vector<std::size_t> partners;
        double majority_fraction = 0.0;
    };
    std::vector<SeedInfo> info(seeds.size());
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        info[s].partners = minority_index.query_row(seeds[s], k_min);
        const auto neighbors = full_index.query_row(seeds[s], k_full);
        std::size_t n_majority = 0;
        for (const std::size_t id : neighbors) {
            if (train.positive(id) != minority_positive) ++n_majority;
        }
        info[s].majority_fraction =
            static_cast<double>(n_majority) / static_cast<double>(k_full);
    }

    for (std::size_t g = 0; g < gap; ++g) {
        const std::size_t s = g % seeds.size();
        const std::size_t seed = seeds[s];
        const auto& detail = info[s];
        const std::size_t partner = detail.partners[rng.next_below(detail.partners.size())];

        double coeff = 0.0;
        if (detail.majority_fraction < 0.5) {
            if (detail.majority_fraction == 0.0 && rng.next_below(2) == 1) {
                coeff = -0.5 * rng.next_double();  // push outward, past the seed
            } else {
                coeff = rng.next_double();
            }
        } else {
            coeff = 0.5 * rng.next_double();  // stay close to the seed
        }
        const auto values = interpolate(train.row(seed), train.row(partner), coeff);
        out.data.append_row(values, minority_positive,
                            RowOrigin::synthetic(seed, partner, coeff));
    }
    out.after = count_labels(out.data);
    return out;
}

ResampleOutput cluster_centroids(const Dataset& train, SeededRng& rng) {
    require_both_classes(train);
    const auto minority = train.minority_rows();
    const auto majority = train.majority_rows();
    const bool minority_positive = train.minority_is_positive();

    const KMeansModel model = kmeans(train, majority, minority.size(), rng);
    const NeighborIndex majority_index(train, majority);

    ResampleOutput out;
    out.method = ResamplerKind::ClusterCentroids;
    out.before = count_labels(train);
    out.data = train.subset(minority);
    for (std::size_t c = 0; c < model.k; ++c) {
        const auto centroid = model.centroid(c);
        const std::size_t parent = majority_index.query(centroid, 1).front();
        out.data.append_row(centroid, !minority_positive,
                            RowOrigin::synthetic(parent, std::nullopt, 0.0));
    }
    out.after = count_labels(out.data);
    return out;
}

void write_resample_csv(const ResampleOutput& output, std::ostream& out) {
    const Dataset& data = output.data;
    for (const auto& name : data.feature_names()) out << name << ',';
    out << "label,provenance,parent_a,parent_b,lambda\n";
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const auto row = data.row(i);
        for (const double value : row) out << format_double(value) << ',';
        out << (data.positive(i) ? 1 : 0) << ',';
        const RowOrigin& origin = data.origin(i);
        if (origin.is_original()) {
            out << "original,,,\n";
        } else {
            out << "synthetic," << origin.parent_a << ',';
            if (origin.parent_b) out << *origin.parent_b;
            out << ',' << format_double(origin.lambda) << '\n';
        }
    }
}

}  // namespace fairfold
