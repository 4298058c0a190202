#include "liftmesh/cli.hpp"

#include "liftmesh/bundle.hpp"
#include "liftmesh/error.hpp"
#include "liftmesh/evaluate.hpp"
#include "liftmesh/ingest.hpp"
#include "liftmesh/lift.hpp"
#include "liftmesh/model_io.hpp"
#include "liftmesh/render.hpp"
#include "liftmesh/serve.hpp"
#include "liftmesh/synth.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <pthread.h>
#include <sstream>
#include <thread>

namespace liftmesh::cli {

namespace {

/// Every flag any subcommand accepts. Validity rules are those of the underlying operations.
struct RunConfig {
    int b1 = 21;
    double q = 0.1;
    double hd_thresh = 0.0;
    std::optional<double> md_thresh;
    double edge_cutoff_factor = kDefaultEdgeCutoffFactor;
    bool retriangulate = false;
    std::uint64_t seed = 20240601;
    std::size_t n = 5000;

    std::string highd_path;
    std::string nldr_path;
    std::vector<std::string> layouts;  // NAME=PATH or PATH
    std::string b1_range = "5:40:5";
    std::string model_path;
    std::string query_path;
    std::string labels_path;
    std::string view = "trimesh-data";
    bool show_points = false;
    double width_px = 800.0;
    std::string output;
    std::string summary_path;
    std::string residuals_path;
    std::string shuffled_out;
    std::string bundle_path;
    std::string assets_dir;
    std::string host = "127.0.0.1";
    int port = 8080;
};

FitOptions fit_options(const RunConfig& cfg) {
    FitOptions o;
    o.b1 = cfg.b1;
    o.q = cfg.q;
    o.hd_thresh = cfg.hd_thresh;
    o.md_thresh = cfg.md_thresh;
    o.edge_cutoff_factor = cfg.edge_cutoff_factor;
    o.mesh_strategy = cfg.retriangulate ? MeshStrategy::Retriangulate : MeshStrategy::FilterFullMesh;
    return o;
}

void write_stream(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& fn) {
    if (path.empty() || path == "-") {
        fn(fallback);
        return;
    }
    std::ostringstream buf;
    fn(buf);
    write_text_file(path, buf.str());
}

int cmd_fit(const RunConfig& cfg, std::ostream&) {
    const auto highd = load_highd(cfg.highd_path);
    const auto nldr = load_embedding(cfg.nldr_path);
    const auto model = fit_model(highd, nldr, fit_options(cfg));
    save_model(cfg.output, model);
    return kExitOk;
}

int cmd_predict(const RunConfig& cfg, std::ostream& out) {
    const auto model = load_model(cfg.model_path);
    const auto query = load_highd(cfg.query_path);
    const auto predictions = predict_embedding(query, model);
    write_stream(cfg.output, out, [&](std::ostream& s) { write_predictions(s, predictions); });
    return kExitOk;
}

int cmd_errors(const RunConfig& cfg, std::ostream& out) {
    const auto model = load_model(cfg.model_path);
    const auto highd = load_highd(cfg.highd_path);
    const auto summary = summarize_errors(highd, model);
    const std::string summary_text = summary_to_json(summary).dump(1) + "\n";
    if (cfg.summary_path.empty()) {
        out << summary_text;
    } else {
        write_text_file(cfg.summary_path, summary_text);
    }
    if (!cfg.residuals_path.empty()) {
        const auto residuals = augment_residuals(highd, model);
        write_stream(cfg.residuals_path, out, [&](std::ostream& s) { write_residuals(s, residuals); });
    }
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto highd = load_highd(cfg.highd_path);
    std::vector<NamedLayout> layouts;
    for (const auto& arg : cfg.layouts) {
        const auto eq = arg.find('=');
        std::string name = eq == std::string::npos ? std::filesystem::path(arg).stem().string() : arg.substr(0, eq);
        const std::string path = eq == std::string::npos ? arg : arg.substr(eq + 1);
        layouts.push_back({std::move(name), load_embedding(path)});
    }
    const auto b1_values = parse_b1_range(cfg.b1_range);
    const auto records = hbe_sweep(highd, layouts, b1_values, cfg.q, cfg.hd_thresh, fit_options(cfg));
    for (const auto& r : records) {
        if (!r.failure.empty()) err << "sweep: layout " << r.layout << " b1=" << r.b1 << " failed: " << r.failure << '\n';
    }
    write_stream(cfg.output, out, [&](std::ostream& s) { write_sweep(s, records); });
    return kExitOk;
}

int cmd_render(const RunConfig& cfg, std::ostream& out) {
    const View view = parse_view(cfg.view);
    const auto model = load_model(cfg.model_path);
    const auto svg = render_svg(model, view, {cfg.width_px, cfg.show_points});
    write_stream(cfg.output, out, [&](std::ostream& s) { s << svg; });
    return kExitOk;
}

int cmd_export_bundle(const RunConfig& cfg, std::ostream& out) {
    const auto model = load_model(cfg.model_path);
    const auto highd = load_highd(cfg.highd_path);
    std::optional<PointLabels> labels;
    if (!cfg.labels_path.empty()) labels = load_labels(cfg.labels_path);
    const auto bundle = make_bundle(highd, model, labels ? &*labels : nullptr);
    if (const auto problems = validate_bundle(bundle); !problems.empty()) {
        throw std::logic_error("generated bundle violates its schema: " + problems.front());
    }
    const std::string text = bundle.dump() + "\n";
    write_stream(cfg.output, out, [&](std::ostream& s) { s << text; });
    return kExitOk;
}

int cmd_serve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::optional<std::filesystem::path> assets;
    if (!cfg.assets_dir.empty()) assets = cfg.assets_dir;

    // Block the shutdown signals before any thread starts so only sigwait sees them.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    sigset_t previous;
    pthread_sigmask(SIG_BLOCK, &signals, &previous);
    struct Restore {
        sigset_t mask;
        ~Restore() { pthread_sigmask(SIG_SETMASK, &mask, nullptr); }
    } restore{previous};

    BundleServer server(cfg.bundle_path, assets);
    if (!server.bind(cfg.host, cfg.port)) {
        err << "serve: cannot bind " << cfg.host << ':' << cfg.port << " (port busy?)\n";
        return kExitUsage;
    }
    out << "serving http://" << cfg.host << ':' << server.port() << "/ (Ctrl-C to stop)" << std::endl;
    std::thread worker([&server] { server.run(); });
    int received = 0;
    sigwait(&signals, &received);
    server.stop();
    worker.join();
    out << "serve: stopped" << std::endl;
    return kExitOk;
}

int cmd_gen_scurve(const RunConfig& cfg, std::ostream& out) {
    const auto data = make_scurve(cfg.n, cfg.seed);
    write_stream(cfg.highd_path, out, [&](std::ostream& s) { write_highd(s, data.highd); });
    write_stream(cfg.nldr_path, out, [&](std::ostream& s) { write_embedding(s, data.layout); });
    if (!cfg.shuffled_out.empty()) {
        write_stream(cfg.shuffled_out, out,
                     [&](std::ostream& s) { write_embedding(s, shuffle_layout(data.layout, cfg.seed + 1)); });
    }
    return kExitOk;
}

void add_fit_flags(CLI::App* cmd, RunConfig& cfg, bool with_b1) {
    if (with_b1) {
        cmd->add_option("--b1", cfg.b1, "hexagons along the x axis")->check(CLI::Range(2, 100000))->capture_default_str();
    }
    cmd->add_option("--q", cfg.q, "buffer proportion in (0, 0.5)")->capture_default_str();
    cmd->add_option("--hd-thresh", cfg.hd_thresh, "keep bins with more than this many points")->capture_default_str();
    cmd->add_option("--md-thresh", cfg.md_thresh, "also drop bins whose mean neighbour density is below this");
    cmd->add_option("--edge-cutoff", cfg.edge_cutoff_factor, "drop mesh edges longer than this multiple of a1")
        ->capture_default_str();
    cmd->add_flag("--retriangulate", cfg.retriangulate, "triangulate only the surviving bins");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"liftmesh: hexagon-mesh models of 2-D layouts, lifted into the data space"};
    app.name("liftmesh");
    app.require_subcommand(1);

    auto* fit = app.add_subcommand("fit", "fit a model to a data table and its 2-D layout");
    fit->add_option("--highd", cfg.highd_path, "high-dimensional CSV (ID, x1..xp)")->required();
    fit->add_option("--nldr", cfg.nldr_path, "layout CSV (ID, emb1, emb2)")->required();
    add_fit_flags(fit, cfg, true);
    fit->add_option("-o,--output", cfg.output, "model JSON")->required();

    auto* predict = app.add_subcommand("predict", "predict layout positions for new observations");
    predict->add_option("--model", cfg.model_path, "model JSON")->required();
    predict->add_option("--query", cfg.query_path, "high-dimensional CSV")->required();
    predict->add_option("-o,--output", cfg.output, "predictions CSV (default stdout)");

    auto* errors = app.add_subcommand("errors", "total absolute error, HBE and per-point residuals");
    errors->add_option("--model", cfg.model_path, "model JSON")->required();
    errors->add_option("--highd", cfg.highd_path, "high-dimensional CSV")->required();
    errors->add_option("--summary", cfg.summary_path, "summary JSON (default stdout)");
    errors->add_option("--residuals", cfg.residuals_path, "residuals CSV");

    auto* sweep = app.add_subcommand("sweep", "HBE over a range of bin counts for one or more layouts");
    sweep->add_option("--highd", cfg.highd_path, "high-dimensional CSV")->required();
    sweep->add_option("--nldr", cfg.layouts, "layout CSV as NAME=PATH or PATH; repeatable")->required();
    sweep->add_option("--b1", cfg.b1_range, "start:stop:step or comma list")->capture_default_str();
    add_fit_flags(sweep, cfg, false);
    sweep->add_option("-o,--output", cfg.output, "sweep CSV (default stdout)");

    auto* render = app.add_subcommand("render", "draw the hexagon grid or wireframe as SVG");
    render->add_option("--model", cfg.model_path, "model JSON")->required();
    render->add_option("--view", cfg.view, "hexgrid-full | hexgrid-data | trimesh-full | trimesh-data")
        ->capture_default_str();
    render->add_flag("--points", cfg.show_points, "overlay the scaled layout points");
    render->add_option("--width", cfg.width_px, "image width in pixels")->capture_default_str();
    render->add_option("-o,--output", cfg.output, "SVG file (default stdout)");

    auto* bundle = app.add_subcommand("export-bundle", "write the linked-view bundle for the explorer");
    bundle->add_option("--model", cfg.model_path, "model JSON")->required();
    bundle->add_option("--highd", cfg.highd_path, "high-dimensional CSV")->required();
    bundle->add_option("--labels", cfg.labels_path, "optional CSV with ID and a category column");
    bundle->add_option("-o,--output", cfg.output, "bundle JSON (default stdout)");

    auto* serve = app.add_subcommand("serve", "serve the explorer UI and bundle over local HTTP");
    serve->add_option("--bundle", cfg.bundle_path, "bundle JSON")->required();
    serve->add_option("--assets", cfg.assets_dir, "directory with the built explorer UI");
    serve->add_option("--host", cfg.host)->capture_default_str();
    serve->add_option("--port", cfg.port)->check(CLI::Range(0, 65535))->capture_default_str();

    auto* gen = app.add_subcommand("gen-scurve", "write the synthetic 7-D S-curve and its layouts");
    gen->add_option("--n", cfg.n, "number of points")->capture_default_str();
    gen->add_option("--seed", cfg.seed)->capture_default_str();
    gen->add_option("--highd-out", cfg.highd_path, "data CSV")->required();
    gen->add_option("--nldr-out", cfg.nldr_path, "locality-preserving layout CSV")->required();
    gen->add_option("--shuffled-out", cfg.shuffled_out, "row-shuffled layout CSV");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "liftmesh: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (fit->parsed()) return cmd_fit(cfg, out);
        if (predict->parsed()) return cmd_predict(cfg, out);
        if (errors->parsed()) return cmd_errors(cfg, out);
        if (sweep->parsed()) return cmd_sweep(cfg, out, err);
        if (render->parsed()) return cmd_render(cfg, out);
        if (bundle->parsed()) return cmd_export_bundle(cfg, out);
        if (serve->parsed()) return cmd_serve(cfg, out, err);
        if (gen->parsed()) return cmd_gen_scurve(cfg, out);
    } catch (const Error& e) {
        err << "liftmesh: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "liftmesh: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}

}  // namespace liftmesh::cli
