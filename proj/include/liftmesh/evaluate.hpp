#pragma once

#include "liftmesh/lift.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace liftmesh {

struct Prediction {
    Id id = 0;
    double pred_emb_1 = 0.0;
    double pred_emb_2 = 0.0;
    BinId pred_h = 0;
};

/// Per-observation residuals against the lifted mean of the predicted bin, ascending by ID.
struct ResidualTable {
    std::vector<std::string> columns;
    std::vector<Id> ids;
    std::vector<BinId> pred_h;
    std::vector<double> data;      // n * p
    std::vector<double> model;     // n * p, lifted mean of pred_h
    std::vector<double> residual;  // data - model
    std::vector<double> total_squared;  // row_wise_total_error
    std::vector<double> total_abs;      // row_wise_abs_error

    std::size_t size() const noexcept { return ids.size(); }
    std::size_t dims() const noexcept { return columns.size(); }
};

struct ErrorSummary {
    double error = 0.0;  // sum of absolute residuals
    double hbe = 0.0;    // sqrt of the mean over observations of the squared residual norm
};

/// Nearest lifted bin mean in the data space (ties to the smallest h), reported at that bin's centroid.
std::vector<Prediction> predict_embedding(const HighDTable& query, const FittedModel& model);

ErrorSummary summarize_errors(const HighDTable& highd, const FittedModel& model);

ResidualTable augment_residuals(const HighDTable& highd, const FittedModel& model);

struct NamedLayout {
    std::string name;
    EmbeddingTable embedding;
};

struct SweepRecord {
    std::string layout;
    int b1 = 0;
    std::optional<double> a1;
    std::optional<double> error;
    std::optional<double> hbe;
    std::string failure;  // non-empty when the cell could not be fitted
};

/// One fit and error summary per (layout, b1). Failing cells are recorded, not thrown.
std::vector<SweepRecord> hbe_sweep(const HighDTable& highd, std::span<const NamedLayout> layouts,
                                   std::span<const int> b1_values, double q, double hd_thresh,
                                   const FitOptions& base = {});

/// Parses "start:stop:step" (inclusive) or a comma-separated list.
std::vector<int> parse_b1_range(const std::string& text);

}  // namespace liftmesh
