#pragma once

#include "liftmesh/lift.hpp"

#include <string>
#include <string_view>

namespace liftmesh {

enum class View {
    HexgridFull,   // every hexagon of the lattice
    HexgridData,   // hexagons of the model bins
    TrimeshFull,   // wireframe over every lattice centroid
    TrimeshData,   // the model's wireframe
};

/// Accepts hexgrid-full, hexgrid-data, trimesh-full, trimesh-data.
View parse_view(std::string_view name);
std::string_view view_name(View view);

struct RenderOptions {
    double width_px = 800.0;
    bool show_points = false;
};

std::string render_svg(const FittedModel& model, View view, const RenderOptions& options = {});

}  // namespace liftmesh
