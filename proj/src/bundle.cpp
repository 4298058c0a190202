#include "liftmesh/bundle.hpp"

#include "liftmesh/error.hpp"
#include "liftmesh/model_io.hpp"

#include <cmath>
#include <fstream>
#include <unordered_map>

namespace liftmesh {

using nlohmann::json;

PointLabels load_labels(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::MissingColumn, path.string() + ": missing header row");
    const auto header = csv::split_line(line);
    if (header.size() != 2 || header[0] != "ID") {
        throw Error(ErrorCode::MissingColumn, path.string() + ": expected header 'ID,<label column>'");
    }
    PointLabels labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = csv::split_line(line);
        if (fields.size() != 2) {
            throw Error(ErrorCode::NonNumeric, path.string() + ":" + std::to_string(line_no) + ": expected 2 fields");
        }
        Id id = 0;
        try {
            std::size_t used = 0;
            id = std::stoll(fields[0], &used);
            if (used != fields[0].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw Error(ErrorCode::NonNumeric, path.string() + ":" + std::to_string(line_no) + ": bad ID '" + fields[0] + "'");
        }
        if (!labels.emplace(id, fields[1]).second) {
            throw Error(ErrorCode::DuplicateId, path.string() + ": duplicate ID " + std::to_string(id));
        }
    }
    return labels;
}

json make_bundle(const HighDTable& highd, const FittedModel& model, const PointLabels* labels) {
    const auto residuals = augment_residuals(highd, model);
    const auto summary = summarize_errors(highd, model);
    const auto combined = combine_all(highd, model.scaled, model, &residuals);

    json points = json::array();
    json model_rows = json::array();
    std::unordered_map<BinId, int> model_index;
    for (const auto& row : combined.rows) {
        if (row.type == RowType::Data) {
            json p = {{"ID", *row.id}, {"emb1", row.emb1}, {"emb2", row.emb2}, {"x", row.x}, {"error", *row.error}};
            if (labels) {
                const auto it = labels->find(*row.id);
                if (it == labels->end()) {
                    throw Error(ErrorCode::IdMismatch, "no label for ID " + std::to_string(*row.id));
                }
                p["label"] = it->second;
            }
            points.push_back(std::move(p));
        } else {
            model_index.emplace(*row.h, static_cast<int>(model_rows.size()) + 1);
            model_rows.push_back({{"h", *row.h}, {"cx", row.emb1}, {"cy", row.emb2}, {"x", row.x}});
        }
    }
    json edges = json::array();
    for (const auto& e : model.mesh.edges) {
        edges.push_back({{"from_reindexed", model_index.at(e.from)}, {"to_reindexed", model_index.at(e.to)}});
    }

    json bundle;
    bundle["bundle_version"] = kBundleVersion;
    bundle["metadata"] = {{"n", points.size()},
                          {"p", model.dims()},
                          {"m", model_rows.size()},
                          {"columns", model.model_highd.columns},
                          {"has_labels", labels != nullptr},
                          {"grid", grid_to_json(model.config)},
                          {"errors", summary_to_json(summary)}};
    bundle["points"] = std::move(points);
    bundle["model"] = std::move(model_rows);
    bundle["edges"] = std::move(edges);
    return bundle;
}

namespace {

bool is_finite_number(const json& v) { return v.is_number() && std::isfinite(v.get<double>()); }

bool is_real_vector(const json& v, std::size_t p) {
    if (!v.is_array() || v.size() != p) return false;
    for (const auto& x : v) {
        if (!is_finite_number(x)) return false;
    }
    return true;
}

}  // namespace

std::vector<std::string> validate_bundle(const json& b) {
    std::vector<std::string> problems;
    auto fail = [&](std::string msg) { problems.push_back(std::move(msg)); };

    if (!b.is_object()) return {"bundle is not an object"};
    if (!b.contains("bundle_version") || b["bundle_version"] != kBundleVersion) fail("bundle_version must be 1");
    for (const char* key : {"metadata", "points", "model", "edges"}) {
        if (!b.contains(key)) fail(std::string("missing '") + key + "'");
    }
    if (!problems.empty()) return problems;

    const auto& meta = b["metadata"];
    std::size_t n = 0, p = 0, m = 0;
    if (!meta.is_object()) {
        fail("metadata must be an object");
        return problems;
    }
    for (const char* key : {"n", "p", "m"}) {
        if (!meta.contains(key) || !meta[key].is_number_unsigned()) fail(std::string("metadata.") + key + " must be a count");
    }
    if (!meta.contains("grid") || !meta["grid"].is_object()) fail("metadata.grid missing");
    if (!meta.contains("errors") || !meta["errors"].is_object() || !is_finite_number(meta["errors"].value("Error", json())) ||
        !is_finite_number(meta["errors"].value("HBE", json()))) {
        fail("metadata.errors must carry finite Error and HBE");
    }
    if (!problems.empty()) return problems;
    n = meta["n"].get<std::size_t>();
    p = meta["p"].get<std::size_t>();
    m = meta["m"].get<std::size_t>();

    const auto& points = b["points"];
    if (!points.is_array() || points.size() != n) fail("points must be an array of length metadata.n");
    else {
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& pt = points[i];
            if (!pt.is_object() || !pt.contains("ID") || !pt["ID"].is_number_integer() || !is_finite_number(pt.value("emb1", json())) ||
                !is_finite_number(pt.value("emb2", json())) || !is_real_vector(pt.value("x", json()), p) ||
                !is_finite_number(pt.value("error", json())) || pt["error"].get<double>() < 0.0) {
                fail("points[" + std::to_string(i) + "] is malformed");
                break;
            }
        }
    }
    const auto& model = b["model"];
    if (!model.is_array() || model.size() != m) fail("model must be an array of length metadata.m");
    else {
        for (std::size_t i = 0; i < model.size(); ++i) {
            const auto& v = model[i];
            if (!v.is_object() || !v.contains("h") || !v["h"].is_number_integer() || !is_finite_number(v.value("cx", json())) ||
                !is_finite_number(v.value("cy", json())) || !is_real_vector(v.value("x", json()), p)) {
                fail("model[" + std::to_string(i) + "] is malformed");
                break;
            }
        }
    }
    const auto& edges = b["edges"];
    if (!edges.is_array()) fail("edges must be an array");
    else {
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto& e = edges[i];
            bool ok = e.is_object();
            for (const char* key : {"from_reindexed", "to_reindexed"}) {
                ok = ok && e.contains(key) && e[key].is_number_integer() && e[key].get<long long>() >= 1 &&
                     e[key].get<long long>() <= static_cast<long long>(m);
            }
            if (!ok) {
                fail("edges[" + std::to_string(i) + "] must index 1..m");
                break;
            }
        }
    }
    return problems;
}

}  // namespace liftmesh
