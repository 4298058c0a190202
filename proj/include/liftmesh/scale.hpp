#pragma once

#include "liftmesh/geometry.hpp"
#include "liftmesh/ingest.hpp"

#include <vector>

namespace liftmesh {

struct Limits {
    double min = 0.0;
    double max = 0.0;

    double range() const noexcept { return max - min; }
};

/// Layout rescaled to [0,1] x [0,y2max]. Both axes are divided by the emb1 range so the
/// aspect ratio of the original layout is kept.
struct ScaledEmbedding {
    std::vector<Id> ids;
    std::vector<double> emb1;
    std::vector<double> emb2;
    Limits lim1;
    Limits lim2;
    double y2max = 0.0;

    std::size_t size() const noexcept { return ids.size(); }
    Point2 point(std::size_t i) const noexcept { return {emb1[i], emb2[i]}; }

    /// Maps a scaled coordinate back to the original layout frame.
    Point2 unscale(Point2 scaled) const noexcept;
};

ScaledEmbedding scale_embedding(const EmbeddingTable& embedding);

}  // namespace liftmesh
