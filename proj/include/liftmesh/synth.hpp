#pragma once

#include "liftmesh/ingest.hpp"

#include <cstdint>

namespace liftmesh {

/// Seven-dimensional S-curve benchmark: a 2-D S-shaped sheet in x1..x3 plus four small
/// noise dimensions x4..x7. `layout` holds the sheet's intrinsic coordinates, an ideal
/// locality-preserving 2-D layout.
struct SCurve {
    HighDTable highd;
    EmbeddingTable layout;
};

SCurve make_scurve(std::size_t n, std::uint64_t seed);

/// Same coordinates, randomly permuted across IDs. Destroys locality.
EmbeddingTable shuffle_layout(const EmbeddingTable& layout, std::uint64_t seed);

}  // namespace liftmesh
