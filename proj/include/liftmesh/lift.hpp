#pragma once

#include "liftmesh/hexgrid.hpp"
#include "liftmesh/ingest.hpp"
#include "liftmesh/mesh.hpp"
#include "liftmesh/scale.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace liftmesh {

/// Per-bin mean of the high-dimensional coordinates, ascending by h.
struct HighDModel {
    std::vector<BinId> bins;
    std::vector<std::string> columns;
    std::vector<double> means;  // bins.size() * dims()

    std::size_t size() const noexcept { return bins.size(); }
    std::size_t dims() const noexcept { return columns.size(); }
    std::span<const double> row(std::size_t i) const noexcept { return {means.data() + i * dims(), dims()}; }
};

struct FitOptions {
    int b1 = 21;
    double q = 0.1;
    double hd_thresh = 0.0;
    std::optional<double> md_thresh;
    double edge_cutoff_factor = kDefaultEdgeCutoffFactor;
    MeshStrategy mesh_strategy = MeshStrategy::FilterFullMesh;
};

/// The 2-D hexagon mesh model together with its lift into the data space.
/// `bins` holds the surviving bins (the 2-D model); `model_highd` has exactly those bins.
struct FittedModel {
    ScaledEmbedding scaled;
    GridConfig config;
    FitOptions options;
    std::vector<AssignedPoint> assignment;
    BinTable bins;
    HighDModel model_highd;
    WireMesh mesh;

    std::size_t dims() const noexcept { return model_highd.dims(); }
    const BinTable& model_2d() const noexcept { return bins; }
};

HighDModel lift_bin_means(const HighDTable& highd, std::span<const AssignedPoint> assignment);

/// scale -> grid -> assign -> counts -> merge -> triangulate -> edges -> prune -> lift.
FittedModel fit_model(const HighDTable& highd, const EmbeddingTable& embedding, const FitOptions& options);

enum class RowType { Data, Model };

const char* to_string(RowType type);

struct CombinedRow {
    RowType type = RowType::Data;
    std::optional<Id> id;   // data rows
    std::optional<BinId> h;  // model rows
    std::vector<double> x;
    double emb1 = 0.0;  // scaled layout for data rows, centroid for model rows
    double emb2 = 0.0;
    std::optional<double> error;  // row_wise_total_error for data rows, when residuals are supplied
};

struct CombinedTable {
    std::vector<std::string> columns;
    std::vector<CombinedRow> rows;  // data block ascending by ID, then model block ascending by h
};

/// Data rows followed by model rows in the data space.
CombinedTable combine_data_model(const HighDTable& highd, const FittedModel& model);

struct ResidualTable;

/// combine_data_model plus 2-D coordinates, and per-point errors when residuals are given.
CombinedTable combine_all(const HighDTable& highd, const ScaledEmbedding& layout, const FittedModel& model,
                          const ResidualTable* residuals = nullptr);

}  // namespace liftmesh
