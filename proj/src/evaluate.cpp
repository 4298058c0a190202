#include "liftmesh/evaluate.hpp"

#include "liftmesh/error.hpp"
#include "liftmesh/parallel.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace liftmesh {

namespace {

void check_compatible(const HighDTable& query, const FittedModel& model) {
    if (model.model_highd.size() == 0) {
        throw Error(ErrorCode::EmptyModel, "model has no bins");
    }
    if (query.dims() != model.dims()) {
        throw Error(ErrorCode::DimensionMismatch, "query has " + std::to_string(query.dims()) + " dimensions, model has " +
                                                      std::to_string(model.dims()));
    }
}

/// Index into model_highd of the nearest bin mean for every query row.
std::vector<std::size_t> nearest_bins(const HighDTable& query, const HighDModel& model) {
    const std::size_t p = model.dims();
    std::vector<std::size_t> out(query.size());
    parallel_for(query.size(), [&](std::size_t i) {
        const auto x = query.row(i);
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_k = 0;
        for (std::size_t k = 0; k < model.size(); ++k) {
            const auto m = model.row(k);
            double d2 = 0.0;
            for (std::size_t j = 0; j < p; ++j) {
                const double d = x[j] - m[j];
                d2 += d * d;
            }
            // model bins ascend by h, so strict < keeps the smallest h on ties
            if (d2 < best) {
                best = d2;
                best_k = k;
            }
        }
        out[i] = best_k;
    });
    return out;
}

}  // namespace

std::vector<Prediction> predict_embedding(const HighDTable& query, const FittedModel& model) {
    check_compatible(query, model);
    const auto data = sorted_by_id(query);
    const auto nearest = nearest_bins(data, model.model_highd);

    std::unordered_map<BinId, Point2> centroids;
    for (const auto& b : model.bins) centroids.emplace(b.h, b.point());

    std::vector<Prediction> out;
    out.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const BinId h = model.model_highd.bins[nearest[i]];
        const Point2 c = centroids.at(h);
        out.push_back({data.ids[i], c.x, c.y, h});
    }
    return out;
}

ResidualTable augment_residuals(const HighDTable& highd, const FittedModel& model) {
    check_compatible(highd, model);
    const auto data = sorted_by_id(highd);
    const auto nearest = nearest_bins(data, model.model_highd);
    const std::size_t p = data.dims();

    ResidualTable out;
    out.columns = data.columns;
    out.ids = data.ids;
    out.data = data.values;
    out.pred_h.reserve(data.size());
    out.model.reserve(data.values.size());
    out.residual.reserve(data.values.size());
    out.total_squared.reserve(data.size());
    out.total_abs.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        out.pred_h.push_back(model.model_highd.bins[nearest[i]]);
        const auto x = data.row(i);
        const auto m = model.model_highd.row(nearest[i]);
        double sq = 0.0;
        double ab = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            const double r = x[j] - m[j];
            out.model.push_back(m[j]);
            out.residual.push_back(r);
            sq += r * r;
            ab += std::fabs(r);
        }
        out.total_squared.push_back(sq);
        out.total_abs.push_back(ab);
    }
    return out;
}

ErrorSummary summarize_errors(const HighDTable& highd, const FittedModel& model) {
    check_compatible(highd, model);
    if (highd.size() == 0) {
        throw Error(ErrorCode::EmptyInput, "no observations to evaluate");
    }
    const auto data = sorted_by_id(highd);
    const auto nearest = nearest_bins(data, model.model_highd);
    const std::size_t p = data.dims();

    double total_abs = 0.0;
    double total_sq = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto x = data.row(i);
        const auto m = model.model_highd.row(nearest[i]);
        double sq = 0.0;
        double ab = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            const double r = x[j] - m[j];
            sq += r * r;
            ab += std::fabs(r);
        }
        total_sq += sq;
        total_abs += ab;
    }
    return {total_abs, std::sqrt(total_sq / static_cast<double>(data.size()))};
}

std::vector<SweepRecord> hbe_sweep(const HighDTable& highd, std::span<const NamedLayout> layouts,
                                   std::span<const int> b1_values, double q, double hd_thresh, const FitOptions& base) {
    if (layouts.empty()) {
        throw Error(ErrorCode::InvalidParameter, "sweep needs at least one layout");
    }
    for (int b1 : b1_values) {
        if (b1 < 2) throw Error(ErrorCode::InvalidParameter, "sweep b1 values must be at least 2");
    }
    std::vector<SweepRecord> out;
    out.reserve(layouts.size() * b1_values.size());
    for (const auto& layout : layouts) {
        for (int b1 : b1_values) {
            SweepRecord rec{layout.name, b1, std::nullopt, std::nullopt, std::nullopt, {}};
            try {
                FitOptions options = base;
                options.b1 = b1;
                options.q = q;
                options.hd_thresh = hd_thresh;
                const auto model = fit_model(highd, layout.embedding, options);
                const auto summary = summarize_errors(highd, model);
                rec.a1 = model.config.a1;
                rec.error = summary.error;
                rec.hbe = summary.hbe;
            } catch (const Error& e) {
                rec.failure = e.what();
            }
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::vector<int> parse_b1_range(const std::string& text) {
    auto parse_int = [&](std::string_view s) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
            throw Error(ErrorCode::InvalidParameter, "invalid b1 specification '" + text + "'");
        }
        return v;
    };
    std::vector<int> out;
    if (text.find(':') != std::string::npos) {
        std::vector<int> parts;
        std::size_t start = 0;
        while (true) {
            const auto colon = text.find(':', start);
            parts.push_back(parse_int(std::string_view(text).substr(start, colon - start)));
            if (colon == std::string::npos) break;
            start = colon + 1;
        }
        if (parts.size() < 2 || parts.size() > 3) {
            throw Error(ErrorCode::InvalidParameter, "b1 range must be start:stop[:step], got '" + text + "'");
        }
        const int step = parts.size() == 3 ? parts[2] : 1;
        if (step <= 0 || parts[1] < parts[0]) {
            throw Error(ErrorCode::InvalidParameter, "b1 range must ascend with a positive step, got '" + text + "'");
        }
        for (int v = parts[0]; v <= parts[1]; v += step) out.push_back(v);
    } else {
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            out.push_back(parse_int(std::string_view(text).substr(start, comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    return out;
}

}  // namespace liftmesh
