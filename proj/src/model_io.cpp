#include "liftmesh/model_io.hpp"

#include "liftmesh/error.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace liftmesh {

using nlohmann::json;

namespace {

const char* strategy_name(MeshStrategy s) { return s == MeshStrategy::Retriangulate ? "retriangulate" : "filter"; }

MeshStrategy strategy_from(const std::string& name) {
    if (name == "filter") return MeshStrategy::FilterFullMesh;
    if (name == "retriangulate") return MeshStrategy::Retriangulate;
    throw Error(ErrorCode::InvalidModel, "unknown mesh strategy '" + name + "'");
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidModel, what); }

}  // namespace

json grid_to_json(const GridConfig& c) {
    return {{"b1", c.b1}, {"b2", c.b2}, {"a1", c.a1}, {"a2", c.a2}, {"q", c.q}, {"origin", {c.origin.x, c.origin.y}}};
}

json summary_to_json(const ErrorSummary& s) { return {{"Error", s.error}, {"HBE", s.hbe}}; }

json model_to_json(const FittedModel& m) {
    json doc;
    doc["format"] = "liftmesh-model";
    doc["model_version"] = kModelVersion;
    doc["options"] = {{"b1", m.options.b1},
                      {"q", m.options.q},
                      {"hd_thresh", m.options.hd_thresh},
                      {"md_thresh", m.options.md_thresh ? json(*m.options.md_thresh) : json(nullptr)},
                      {"edge_cutoff_factor", m.options.edge_cutoff_factor},
                      {"mesh_strategy", strategy_name(m.options.mesh_strategy)}};
    doc["grid"] = grid_to_json(m.config);
    doc["scaling"] = {{"lim1", {m.scaled.lim1.min, m.scaled.lim1.max}},
                      {"lim2", {m.scaled.lim2.min, m.scaled.lim2.max}},
                      {"y2max", m.scaled.y2max}};
    doc["columns"] = m.model_highd.columns;

    json ids = json::array(), e1 = json::array(), e2 = json::array(), hs = json::array();
    for (const auto& a : m.assignment) {
        ids.push_back(a.id);
        e1.push_back(a.emb1);
        e2.push_back(a.emb2);
        hs.push_back(a.h);
    }
    doc["points"] = {{"ID", std::move(ids)}, {"emb1", std::move(e1)}, {"emb2", std::move(e2)}, {"h", std::move(hs)}};

    json bins = json::array();
    for (const auto& b : m.bins) bins.push_back({{"h", b.h}, {"c_x", b.x}, {"c_y", b.y}, {"n_h", b.n}, {"w_h", b.w}});
    doc["bins"] = std::move(bins);

    json highd = json::array();
    for (std::size_t i = 0; i < m.model_highd.size(); ++i) {
        const auto row = m.model_highd.row(i);
        highd.push_back({{"h", m.model_highd.bins[i]}, {"x", std::vector<double>(row.begin(), row.end())}});
    }
    doc["model_highd"] = std::move(highd);

    json edges = json::array();
    for (const auto& e : m.mesh.edges) {
        edges.push_back({{"from", e.from},
                         {"to", e.to},
                         {"x_from", e.x_from},
                         {"y_from", e.y_from},
                         {"x_to", e.x_to},
                         {"y_to", e.y_to},
                         {"length", e.length},
                         {"from_count", e.from_count},
                         {"to_count", e.to_count},
                         {"from_reindexed", e.from_reindexed},
                         {"to_reindexed", e.to_reindexed}});
    }
    doc["edges"] = std::move(edges);
    return doc;
}

FittedModel model_from_json(const json& doc) {
    FittedModel m;
    try {
        if (doc.at("model_version").get<int>() != kModelVersion) {
            invalid("unsupported model_version " + doc.at("model_version").dump());
        }
        const auto& opt = doc.at("options");
        m.options.b1 = opt.at("b1").get<int>();
        m.options.q = opt.at("q").get<double>();
        m.options.hd_thresh = opt.at("hd_thresh").get<double>();
        if (!opt.at("md_thresh").is_null()) m.options.md_thresh = opt.at("md_thresh").get<double>();
        m.options.edge_cutoff_factor = opt.at("edge_cutoff_factor").get<double>();
        m.options.mesh_strategy = strategy_from(opt.at("mesh_strategy").get<std::string>());

        const auto& g = doc.at("grid");
        m.config.b1 = g.at("b1").get<int>();
        m.config.b2 = g.at("b2").get<int>();
        m.config.a1 = g.at("a1").get<double>();
        m.config.a2 = g.at("a2").get<double>();
        m.config.q = g.at("q").get<double>();
        m.config.origin = {g.at("origin").at(0).get<double>(), g.at("origin").at(1).get<double>()};

        const auto& s = doc.at("scaling");
        m.scaled.lim1 = {s.at("lim1").at(0).get<double>(), s.at("lim1").at(1).get<double>()};
        m.scaled.lim2 = {s.at("lim2").at(0).get<double>(), s.at("lim2").at(1).get<double>()};
        m.scaled.y2max = s.at("y2max").get<double>();

        m.model_highd.columns = doc.at("columns").get<std::vector<std::string>>();

        const auto& pts = doc.at("points");
        const auto ids = pts.at("ID").get<std::vector<Id>>();
        const auto e1 = pts.at("emb1").get<std::vector<double>>();
        const auto e2 = pts.at("emb2").get<std::vector<double>>();
        const auto hs = pts.at("h").get<std::vector<BinId>>();
        if (e1.size() != ids.size() || e2.size() != ids.size() || hs.size() != ids.size()) {
            invalid("points columns have different lengths");
        }
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (hs[i] < 1 || hs[i] > m.config.bins()) invalid("point assigned to hexagon outside the grid");
            m.assignment.push_back({ids[i], e1[i], e2[i], hs[i]});
        }
        m.scaled.ids = ids;
        m.scaled.emb1 = e1;
        m.scaled.emb2 = e2;

        for (const auto& b : doc.at("bins")) {
            m.bins.push_back({b.at("h").get<BinId>(), b.at("c_x").get<double>(), b.at("c_y").get<double>(),
                              b.at("n_h").get<int>(), b.at("w_h").get<double>()});
        }
        const std::size_t p = m.model_highd.columns.size();
        for (const auto& r : doc.at("model_highd")) {
            const auto x = r.at("x").get<std::vector<double>>();
            if (x.size() != p) invalid("model_highd row has the wrong dimension");
            m.model_highd.bins.push_back(r.at("h").get<BinId>());
            m.model_highd.means.insert(m.model_highd.means.end(), x.begin(), x.end());
        }
        for (const auto& e : doc.at("edges")) {
            m.mesh.edges.push_back({e.at("from").get<BinId>(), e.at("to").get<BinId>(), e.at("x_from").get<double>(),
                                    e.at("y_from").get<double>(), e.at("x_to").get<double>(), e.at("y_to").get<double>(),
                                    e.at("length").get<double>(), e.at("from_count").get<int>(),
                                    e.at("to_count").get<int>(), e.at("from_reindexed").get<int>(),
                                    e.at("to_reindexed").get<int>()});
        }
    } catch (const json::exception& e) {
        invalid(std::string("malformed model document: ") + e.what());
    }

    if (m.bins.size() != m.model_highd.size()) invalid("model_2d and model_highd differ in size");
    std::unordered_set<BinId> bin_set;
    for (std::size_t i = 0; i < m.bins.size(); ++i) {
        if (m.bins[i].h != m.model_highd.bins[i]) invalid("model_2d and model_highd list different bins");
        if (i > 0 && m.bins[i].h <= m.bins[i - 1].h) invalid("bins must ascend by h");
        bin_set.insert(m.bins[i].h);
    }
    if (m.bins.empty()) invalid("model has no bins");
    for (const auto& e : m.mesh.edges) {
        if (!bin_set.contains(e.from) || !bin_set.contains(e.to)) invalid("edge references a bin outside the model");
    }
    return m;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
}

void save_model(const std::filesystem::path& path, const FittedModel& model) {
    write_text_file(path, model_to_json(model).dump(1) + "\n");
}

FittedModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidModel, path.string() + ": " + e.what());
    }
    return model_from_json(doc);
}

void write_predictions(std::ostream& out, std::span<const Prediction> predictions) {
    out << "pred_emb_1,pred_emb_2,ID,pred_h\n";
    for (const auto& p : predictions) {
        out << csv::format_double(p.pred_emb_1) << ',' << csv::format_double(p.pred_emb_2) << ',' << p.id << ','
            << p.pred_h << '\n';
    }
}

void write_residuals(std::ostream& out, const ResidualTable& r) {
    const std::size_t p = r.dims();
    out << "ID";
    for (const auto& c : r.columns) out << ',' << c;
    out << ",pred_h";
    for (const char* prefix : {"model_", "residual_", "sq_", "abs_"}) {
        for (const auto& c : r.columns) out << ',' << prefix << c;
    }
    out << ",row_wise_total_error,row_wise_abs_error\n";
    for (std::size_t i = 0; i < r.size(); ++i) {
        out << r.ids[i];
        for (std::size_t j = 0; j < p; ++j) out << ',' << csv::format_double(r.data[i * p + j]);
        out << ',' << r.pred_h[i];
        for (std::size_t j = 0; j < p; ++j) out << ',' << csv::format_double(r.model[i * p + j]);
        for (std::size_t j = 0; j < p; ++j) out << ',' << csv::format_double(r.residual[i * p + j]);
        for (std::size_t j = 0; j < p; ++j) {
            const double v = r.residual[i * p + j];
            out << ',' << csv::format_double(v * v);
        }
        for (std::size_t j = 0; j < p; ++j) out << ',' << csv::format_double(std::fabs(r.residual[i * p + j]));
        out << ',' << csv::format_double(r.total_squared[i]) << ',' << csv::format_double(r.total_abs[i]) << '\n';
    }
}

void write_sweep(std::ostream& out, std::span<const SweepRecord> records) {
    out << "layout,b1,a1,Error,HBE\n";
    auto opt = [](const std::optional<double>& v) { return v ? csv::format_double(*v) : std::string(); };
    for (const auto& r : records) {
        out << r.layout << ',' << r.b1 << ',' << opt(r.a1) << ',' << opt(r.error) << ',' << opt(r.hbe) << '\n';
    }
}

}  // namespace liftmesh
