#include "fairfold/leak_probe.hpp"

#include <string>
#include <vector>

namespace fairfold {

Dataset generate_leak_probe(std::size_t n_majority, std::size_t n_minority, std::size_t dims,
                            SeededRng& rng) {
    if (n_minority < 5 || dims < 2 || n_majority < n_minority) {
        raise(Errc::BadCounts,
              "leak probe needs n_majority >= n_minority >= 5 and at least 2 dimensions");
    }
    std::vector<std::string> names;
    names.reserve(dims);
    for (std::size_t j = 0; j < dims; ++j) names.push_back("f" + std::to_string(j + 1));

    Dataset data(dims, std::move(names), "1");
    std::vector<double> row(dims);
    const std::size_t total = n_majority + n_minority;
    for (std::size_t i = 0; i < total; ++i) {
        for (std::size_t j = 0; j < dims; ++j) row[j] = rng.next_gaussian();
        data.append_row(row, /*positive=*/i < n_minority);
    }
    return data;
}

}  // namespace fairfold
