#include "liftmesh/lift.hpp"

#include "liftmesh/error.hpp"
#include "liftmesh/evaluate.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace liftmesh {

namespace {

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::unordered_map<Id, std::size_t> row_index(const std::vector<Id>& ids) {
    std::unordered_map<Id, std::size_t> index;
    index.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);
    return index;
}

}  // namespace

const char* to_string(RowType type) { return type == RowType::Data ? "data" : "model"; }

HighDModel lift_bin_means(const HighDTable& highd, std::span<const AssignedPoint> assignment) {
    const auto index = row_index(highd.ids);
    std::map<BinId, std::vector<std::size_t>> members;
    for (const auto& a : assignment) {
        const auto it = index.find(a.id);
        if (it == index.end()) {
            throw Error(ErrorCode::IdMismatch, "assigned point ID " + std::to_string(a.id) + " has no high-dimensional row");
        }
        members[a.h].push_back(it->second);
    }

    HighDModel model;
    model.columns = highd.columns;
    const std::size_t p = highd.dims();
    model.bins.reserve(members.size());
    model.means.reserve(members.size() * p);
    std::vector<double> column;
    for (const auto& [h, rows] : members) {
        model.bins.push_back(h);
        for (std::size_t j = 0; j < p; ++j) {
            column.clear();
            for (std::size_t r : rows) column.push_back(highd.values[r * p + j]);
            model.means.push_back(pairwise_sum(column) / static_cast<double>(rows.size()));
        }
    }
    return model;
}

FittedModel fit_model(const HighDTable& highd, const EmbeddingTable& embedding, const FitOptions& options) {
    if (options.md_thresh && !(*options.md_thresh >= 0.0 && *options.md_thresh <= 1.0)) {
        throw Error(ErrorCode::InvalidParameter, "md_thresh must lie in [0, 1]");
    }
    if (!(options.hd_thresh >= 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "hd_thresh must be non-negative");
    }
    auto aligned = align(highd, embedding);

    FittedModel fit;
    fit.options = options;
    fit.scaled = scale_embedding(aligned.embedding);
    auto binning = hex_binning(fit.scaled, options.b1, options.q);
    fit.config = binning.config;
    fit.assignment = std::move(binning.assignment);

    const auto full_mesh = extract_edges(triangulate_centroids(binning.bins), fit.config.a1, options.edge_cutoff_factor);
    auto pruned = prune_model(binning.bins, full_mesh, options.hd_thresh, options.md_thresh, options.b1);
    fit.bins = std::move(pruned.bins);
    if (options.mesh_strategy == MeshStrategy::Retriangulate) {
        if (fit.bins.size() < 3) {
            throw Error(ErrorCode::TooFewPoints, "retriangulation needs at least 3 surviving bins");
        }
        fit.mesh = reindex_edges(extract_edges(triangulate_centroids(fit.bins), fit.config.a1, options.edge_cutoff_factor));
    } else {
        fit.mesh = std::move(pruned.mesh);
    }

    auto all_means = lift_bin_means(aligned.highd, fit.assignment);
    std::unordered_map<BinId, std::size_t> position;
    for (std::size_t i = 0; i < all_means.size(); ++i) position.emplace(all_means.bins[i], i);
    fit.model_highd.columns = all_means.columns;
    for (const auto& b : fit.bins) {
        const auto row = all_means.row(position.at(b.h));
        fit.model_highd.bins.push_back(b.h);
        fit.model_highd.means.insert(fit.model_highd.means.end(), row.begin(), row.end());
    }
    return fit;
}

CombinedTable combine_data_model(const HighDTable& highd, const FittedModel& model) {
    if (highd.dims() != model.dims()) {
        throw Error(ErrorCode::DimensionMismatch, "data has " + std::to_string(highd.dims()) + " dimensions, model has " +
                                                      std::to_string(model.dims()));
    }
    CombinedTable out;
    out.columns = highd.columns;
    const auto data = sorted_by_id(highd);
    out.rows.reserve(data.size() + model.model_highd.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto row = data.row(i);
        out.rows.push_back({RowType::Data, data.ids[i], std::nullopt, {row.begin(), row.end()}, 0.0, 0.0, std::nullopt});
    }
    for (std::size_t i = 0; i < model.model_highd.size(); ++i) {
        const auto row = model.model_highd.row(i);
        out.rows.push_back(
            {RowType::Model, std::nullopt, model.model_highd.bins[i], {row.begin(), row.end()}, 0.0, 0.0, std::nullopt});
    }
    return out;
}

CombinedTable combine_all(const HighDTable& highd, const ScaledEmbedding& layout, const FittedModel& model,
                          const ResidualTable* residuals) {
    CombinedTable out = combine_data_model(highd, model);

    const auto layout_index = row_index(layout.ids);
    std::unordered_map<Id, double> errors;
    if (residuals) {
        for (std::size_t i = 0; i < residuals->size(); ++i) errors.emplace(residuals->ids[i], residuals->total_squared[i]);
    }
    std::unordered_map<BinId, Point2> centroids;
    for (const auto& b : model.bins) centroids.emplace(b.h, b.point());

    for (auto& row : out.rows) {
        if (row.type == RowType::Data) {
            const auto it = layout_index.find(*row.id);
            if (it == layout_index.end()) {
                throw Error(ErrorCode::IdMismatch, "ID " + std::to_string(*row.id) + " missing from the layout");
            }
            row.emb1 = layout.emb1[it->second];
            row.emb2 = layout.emb2[it->second];
            if (residuals) {
                const auto e = errors.find(*row.id);
                if (e == errors.end()) {
                    throw Error(ErrorCode::IdMismatch, "ID " + std::to_string(*row.id) + " missing from the residuals");
                }
                row.error = e->second;
            }
        } else {
            const Point2 c = centroids.at(*row.h);
            row.emb1 = c.x;
            row.emb2 = c.y;
        }
    }
    if (residuals && errors.size() != highd.size()) {
        throw Error(ErrorCode::IdMismatch, "residual table does not cover the same IDs as the data");
    }
    if (layout.size() != highd.size()) {
        throw Error(ErrorCode::IdMismatch, "layout does not cover the same IDs as the data");
    }
    return out;
}

}  // namespace liftmesh
