#include "liftmesh/render.hpp"

#include "liftmesh/error.hpp"
#include "liftmesh/mesh.hpp"

#include <cstdio>
#include <sstream>

namespace liftmesh {

View parse_view(std::string_view name) {
    if (name == "hexgrid-full") return View::HexgridFull;
    if (name == "hexgrid-data") return View::HexgridData;
    if (name == "trimesh-full") return View::TrimeshFull;
    if (name == "trimesh-data") return View::TrimeshData;
    throw Error(ErrorCode::InvalidParameter,
                "unknown view '" + std::string(name) + "' (expected hexgrid-full, hexgrid-data, trimesh-full, trimesh-data)");
}

std::string_view view_name(View view) {
    switch (view) {
    case View::HexgridFull: return "hexgrid-full";
    case View::HexgridData: return "hexgrid-data";
    case View::TrimeshFull: return "trimesh-full";
    case View::TrimeshData: return "trimesh-data";
    }
    return "";
}

namespace {

/// Maps scaled layout coordinates onto an SVG canvas with y pointing up.
class Canvas {
public:
    Canvas(const GridConfig& grid, double width_px) {
        const double pad = grid.a1;
        min_x_ = grid.origin.x - pad;
        max_y_ = grid.origin.y + (grid.b2 - 1) * grid.a2 + pad;
        const double max_x = grid.origin.x + (grid.b1 - 0.5) * grid.a1 + pad;
        const double min_y = grid.origin.y - pad;
        scale_ = width_px / (max_x - min_x_);
        width_ = width_px;
        height_ = (max_y_ - min_y) * scale_;
    }

    double width() const { return width_; }
    double height() const { return height_; }

    std::string xy(Point2 p) const {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3f,%.3f", (p.x - min_x_) * scale_, (max_y_ - p.y) * scale_);
        return buf;
    }

    std::string line(Point2 a, Point2 b) const {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\"/>",
                      (a.x - min_x_) * scale_, (max_y_ - a.y) * scale_, (b.x - min_x_) * scale_,
                      (max_y_ - b.y) * scale_);
        return buf;
    }

    std::string dot(Point2 p) const {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"1.2\"/>", (p.x - min_x_) * scale_,
                      (max_y_ - p.y) * scale_);
        return buf;
    }

private:
    double min_x_ = 0.0;
    double max_y_ = 0.0;
    double scale_ = 1.0;
    double width_ = 0.0;
    double height_ = 0.0;
};

void emit_hexagons(std::ostringstream& out, const Canvas& canvas, const std::vector<Centroid>& centroids, double a1) {
    out << "<g class=\"hexgrid\" fill=\"none\" stroke=\"#555555\" stroke-width=\"0.6\">\n";
    for (const auto& c : centroids) {
        const auto poly = hex_polygon(c, a1);
        out << "<polygon data-h=\"" << c.h << "\" points=\"";
        for (std::size_t k = 0; k < poly.vertices.size(); ++k) out << (k ? " " : "") << canvas.xy(poly.vertices[k]);
        out << "\"/>\n";
    }
    out << "</g>\n";
}

void emit_edges(std::ostringstream& out, const Canvas& canvas, const WireMesh& mesh) {
    out << "<g class=\"trimesh\" stroke=\"#1f1f1f\" stroke-width=\"0.8\">\n";
    for (const auto& e : mesh.edges) out << canvas.line({e.x_from, e.y_from}, {e.x_to, e.y_to}) << '\n';
    out << "</g>\n";
}

}  // namespace

std::string render_svg(const FittedModel& model, View view, const RenderOptions& options) {
    const Canvas canvas(model.config, options.width_px);
    std::ostringstream out;
    char header[256];
    std::snprintf(header, sizeof(header),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.3f %.3f\">\n",
                  canvas.width(), canvas.height(), canvas.width(), canvas.height());
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n" << header;
    out << "<title>" << view_name(view) << "</title>\n";

    switch (view) {
    case View::HexgridFull:
        emit_hexagons(out, canvas, generate_centroids(model.config), model.config.a1);
        break;
    case View::HexgridData: {
        std::vector<Centroid> centroids;
        for (const auto& b : model.bins) centroids.push_back({b.h, b.x, b.y});
        emit_hexagons(out, canvas, centroids, model.config.a1);
        break;
    }
    case View::TrimeshFull: {
        const auto centroids = generate_centroids(model.config);
        const auto bins = merge_centroids_counts(centroids, {});
        emit_edges(out, canvas,
                   extract_edges(triangulate_centroids(bins), model.config.a1, model.options.edge_cutoff_factor));
        break;
    }
    case View::TrimeshData:
        emit_edges(out, canvas, model.mesh);
        break;
    }

    if (options.show_points) {
        out << "<g class=\"points\" fill=\"#1f77b4\" fill-opacity=\"0.5\">\n";
        for (const auto& a : model.assignment) out << canvas.dot({a.emb1, a.emb2}) << '\n';
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace liftmesh
