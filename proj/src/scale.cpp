#include "liftmesh/scale.hpp"

#include "liftmesh/error.hpp"

#include <algorithm>

namespace liftmesh {

Point2 ScaledEmbedding::unscale(Point2 scaled) const noexcept {
    const double r1 = lim1.range();
    return {scaled.x * r1 + lim1.min, scaled.y * r1 + lim2.min};
}

ScaledEmbedding scale_embedding(const EmbeddingTable& embedding) {
    if (embedding.size() == 0) {
        throw Error(ErrorCode::DegenerateAxis, "embedding is empty");
    }
    const auto [lo1, hi1] = std::minmax_element(embedding.emb1.begin(), embedding.emb1.end());
    const auto [lo2, hi2] = std::minmax_element(embedding.emb2.begin(), embedding.emb2.end());

    ScaledEmbedding out;
    out.lim1 = {*lo1, *hi1};
    out.lim2 = {*lo2, *hi2};
    const double r1 = out.lim1.range();
    const double r2 = out.lim2.range();
    if (!(r1 > 0.0)) throw Error(ErrorCode::DegenerateAxis, "emb1 has zero range");
    if (!(r2 > 0.0)) throw Error(ErrorCode::DegenerateAxis, "emb2 has zero range");
    out.y2max = r2 / r1;

    out.ids = embedding.ids;
    out.emb1.resize(embedding.size());
    out.emb2.resize(embedding.size());
    for (std::size_t i = 0; i < embedding.size(); ++i) {
        out.emb1[i] = (embedding.emb1[i] - out.lim1.min) / r1;
        out.emb2[i] = (embedding.emb2[i] - out.lim2.min) / r1;
    }
    return out;
}

}  // namespace liftmesh
