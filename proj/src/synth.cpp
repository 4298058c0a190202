#include "liftmesh/synth.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace liftmesh {

namespace {

// Portable across standard libraries, unlike std::uniform_real_distribution.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

}  // namespace

SCurve make_scurve(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SCurve out;
    out.highd.columns = {"x1", "x2", "x3", "x4", "x5", "x6", "x7"};
    out.highd.ids.reserve(n);
    out.highd.values.reserve(n * 7);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 3.0 * std::numbers::pi * (unit(rng) - 0.5);
        const double height = 2.0 * unit(rng);
        const Id id = static_cast<Id>(i + 1);
        out.highd.ids.push_back(id);
        out.highd.values.insert(out.highd.values.end(),
                                {std::sin(t), height, std::copysign(1.0, t) * (std::cos(t) - 1.0) + 1.0,
                                 uniform(rng, -0.02, 0.02), uniform(rng, -0.02, 0.02), uniform(rng, -0.1, 0.1),
                                 uniform(rng, -0.01, 0.01)});
        out.layout.ids.push_back(id);
        out.layout.emb1.push_back(t);
        out.layout.emb2.push_back(height);
    }
    return out;
}

EmbeddingTable shuffle_layout(const EmbeddingTable& layout, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(layout.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Fisher-Yates with an explicit draw; std::shuffle's draw sequence is unspecified.
    for (std::size_t i = order.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(unit(rng) * static_cast<double>(i));
        std::swap(order[i - 1], order[std::min(j, i - 1)]);
    }
    EmbeddingTable out;
    out.ids = layout.ids;
    out.emb1.reserve(layout.size());
    out.emb2.reserve(layout.size());
    for (std::size_t k : order) {
        out.emb1.push_back(layout.emb1[k]);
        out.emb2.push_back(layout.emb2[k]);
    }
    return out;
}

}  // namespace liftmesh
