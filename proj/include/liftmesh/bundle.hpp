#pragma once

#include "liftmesh/evaluate.hpp"
#include "liftmesh/lift.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace liftmesh {

inline constexpr int kBundleVersion = 1;

/// Optional categorical label per point ID, shown as toggles in the explorer.
using PointLabels = std::map<Id, std::string>;

PointLabels load_labels(const std::filesystem::path& path);

/// Everything the linked views need: data points with their layout position and error,
/// lifted model vertices, and mesh edges as 1-based indices into the model array.
nlohmann::json make_bundle(const HighDTable& highd, const FittedModel& model, const PointLabels* labels = nullptr);

/// Structural check against the version-1 bundle schema; returns the list of violations.
std::vector<std::string> validate_bundle(const nlohmann::json& bundle);

}  // namespace liftmesh
