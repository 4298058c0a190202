#pragma once

#include "liftmesh/hexgrid.hpp"
#include "liftmesh/ingest.hpp"
#include "liftmesh/lift.hpp"
#include "liftmesh/scale.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

namespace fixture {

inline constexpr double kY2max = 1.156801;
inline constexpr int kB1 = 21;
inline constexpr double kQ = 0.1;

/// Layout already in the scaled frame [0,1] x [0,kY2max].
inline liftmesh::ScaledEmbedding scaled(const std::vector<liftmesh::Point2>& pts, double y2max = kY2max) {
    liftmesh::ScaledEmbedding s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        s.ids.push_back(static_cast<liftmesh::Id>(i + 1));
        s.emb1.push_back(pts[i].x);
        s.emb2.push_back(pts[i].y);
    }
    s.lim1 = {0.0, 1.0};
    s.lim2 = {0.0, y2max};
    s.y2max = y2max;
    return s;
}

inline liftmesh::HighDTable highd(const std::vector<std::vector<double>>& rows, std::vector<liftmesh::Id> ids = {}) {
    liftmesh::HighDTable t;
    const std::size_t p = rows.empty() ? 2 : rows.front().size();
    for (std::size_t j = 0; j < p; ++j) t.columns.push_back("x" + std::to_string(j + 1));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        t.ids.push_back(ids.empty() ? static_cast<liftmesh::Id>(i + 1) : ids[i]);
        t.values.insert(t.values.end(), rows[i].begin(), rows[i].end());
    }
    return t;
}

/// Hand-built model: bin h at (x, y) with lifted mean `mean`. The grid is the smallest one
/// that contains every h, so the result survives a JSON round trip.
struct ManualBin {
    liftmesh::BinId h;
    double x;
    double y;
    std::vector<double> mean;
};

inline liftmesh::FittedModel manual_model(const std::vector<ManualBin>& bins) {
    liftmesh::FittedModel m;
    m.options.b1 = 2;
    m.config = liftmesh::compute_grid_config(1.0, 2, 0.1);
    m.scaled.lim1 = {0.0, 1.0};
    m.scaled.lim2 = {0.0, 1.0};
    m.scaled.y2max = 1.0;
    const std::size_t p = bins.front().mean.size();
    for (std::size_t j = 0; j < p; ++j) m.model_highd.columns.push_back("x" + std::to_string(j + 1));
    for (const auto& b : bins) {
        m.bins.push_back({b.h, b.x, b.y, 1, 1.0});
        m.model_highd.bins.push_back(b.h);
        m.model_highd.means.insert(m.model_highd.means.end(), b.mean.begin(), b.mean.end());
    }
    return m;
}

/// Two observations {0, 2} along x1 sharing one bin whose mean is 1.
inline liftmesh::HighDTable toy_data() { return highd({{0.0, 0.0}, {2.0, 0.0}}); }
inline liftmesh::FittedModel toy_model() { return manual_model({{1, 0.5, 0.5, {1.0, 0.0}}}); }

/// Every observation alone in its own bin, mean equal to itself.
inline liftmesh::HighDTable perfect_data() { return highd({{0.0, 1.0, 2.0}, {5.0, -1.0, 0.5}, {-3.0, 4.0, 1.0}}); }
inline liftmesh::FittedModel perfect_model() {
    return manual_model({{1, 0.0, 0.0, {0.0, 1.0, 2.0}},
                         {2, 0.5, 0.0, {5.0, -1.0, 0.5}},
                         {3, 0.2, 0.5, {-3.0, 4.0, 1.0}}});
}

inline std::filesystem::path data_dir() { return LIFTMESH_TEST_DATA; }

/// Fresh per-test scratch directory, removed on destruction.
struct TempDir {
    std::filesystem::path path;
    TempDir() {
        std::string tmpl = (std::filesystem::temp_directory_path() / "liftmesh-XXXXXX").string();
        path = ::mkdtemp(tmpl.data());
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::filesystem::path operator/(const std::string& name) const { return path / name; }
};

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace fixture
