#pragma once

#include "liftmesh/evaluate.hpp"
#include "liftmesh/lift.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <span>

namespace liftmesh {

inline constexpr int kModelVersion = 1;

nlohmann::json model_to_json(const FittedModel& model);
/// Rebuilds a model and checks its cross-table invariants. Throws Error(InvalidModel).
FittedModel model_from_json(const nlohmann::json& doc);

void save_model(const std::filesystem::path& path, const FittedModel& model);
FittedModel load_model(const std::filesystem::path& path);

nlohmann::json grid_to_json(const GridConfig& config);
nlohmann::json summary_to_json(const ErrorSummary& summary);

/// Header: pred_emb_1,pred_emb_2,ID,pred_h
void write_predictions(std::ostream& out, std::span<const Prediction> predictions);

/// ID, x_j, pred_h, model_x_j, residual_x_j, sq_x_j, abs_x_j, row_wise_total_error, row_wise_abs_error
void write_residuals(std::ostream& out, const ResidualTable& residuals);

/// Header: layout,b1,a1,Error,HBE; failed cells leave the numeric fields empty.
void write_sweep(std::ostream& out, std::span<const SweepRecord> records);

/// Writes `text` to `path`, replacing any existing file.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace liftmesh
