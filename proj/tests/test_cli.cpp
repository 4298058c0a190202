#include "fixtures.hpp"

#include "liftmesh/cli.hpp"
#include "liftmesh/model_io.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace liftmesh;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) { return (fixture::data_dir() / "golden" / name).string(); }

std::size_t line_count(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

}  // namespace

TEST(Cli, FitMatchesGoldenModel) {
    fixture::TempDir dir;
    const auto r = run({"fit", "--highd", golden("d.csv"), "--nldr", golden("e.csv"), "--b1", "8", "--q", "0.1",
                        "--hd-thresh", "0", "-o", (dir / "model.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(fixture::read_file(dir / "model.json"), fixture::read_file(golden("model.json")));
    const auto doc = json::parse(fixture::read_file(dir / "model.json"));
    const auto expected = grid_to_json(load_model(golden("model.json")).config);
    EXPECT_EQ(doc["grid"], expected);
    EXPECT_EQ(doc["grid"]["b1"], 8);
}

TEST(Cli, PredictMatchesGolden) {
    const auto r = run({"predict", "--model", golden("model.json"), "--query", golden("query.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, fixture::read_file(golden("predictions.csv")));
}

TEST(Cli, PredictTrainingData) {
    const auto r = run({"predict", "--model", golden("model.json"), "--query", golden("d.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(line_count(r.out), line_count(fixture::read_file(golden("d.csv"))));
}

TEST(Cli, PredictEmptyQuery) {
    fixture::TempDir dir;
    fixture::write_file(dir / "q.csv", "ID,x1,x2,x3,x4,x5,x6,x7\n");
    const auto r = run({"predict", "--model", golden("model.json"), "--query", (dir / "q.csv").string(), "-o",
                        (dir / "out.csv").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(fixture::read_file(dir / "out.csv"), "pred_emb_1,pred_emb_2,ID,pred_h\n");
}

TEST(Cli, ErrorsGoldenSummary) {
    const auto r = run({"errors", "--model", golden("model.json"), "--highd", golden("d.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, fixture::read_file(golden("summary.json")));
}

TEST(Cli, ErrorsHandFixtures) {
    fixture::TempDir dir;
    save_model(dir / "toy.json", fixture::toy_model());
    std::ostringstream toy;
    write_highd(toy, fixture::toy_data());
    fixture::write_file(dir / "toy.csv", toy.str());
    auto r = run({"errors", "--model", (dir / "toy.json").string(), "--highd", (dir / "toy.csv").string(), "--residuals",
                  (dir / "res.csv").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto s = json::parse(r.out);
    EXPECT_EQ(s["Error"].get<double>(), 2.0);
    EXPECT_EQ(s["HBE"].get<double>(), 1.0);
    EXPECT_EQ(line_count(fixture::read_file(dir / "res.csv")), 3u);

    save_model(dir / "perfect.json", fixture::perfect_model());
    std::ostringstream perfect;
    write_highd(perfect, fixture::perfect_data());
    fixture::write_file(dir / "perfect.csv", perfect.str());
    r = run({"errors", "--model", (dir / "perfect.json").string(), "--highd", (dir / "perfect.csv").string(), "--summary",
             (dir / "s.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    s = json::parse(fixture::read_file(dir / "s.json"));
    EXPECT_EQ(s["Error"].get<double>(), 0.0);
    EXPECT_EQ(s["HBE"].get<double>(), 0.0);
}

TEST(Cli, UsageErrors) {
    auto r = run({"fit", "--highd", golden("d.csv"), "-o", "/tmp/never.json"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("--nldr"), std::string::npos);

    r = run({"fit", "--highd", golden("d.csv"), "--nldr", golden("e.csv"), "--q", "0.6", "-o", "/tmp/never.json"});
    EXPECT_EQ(r.code, cli::kExitUsage);

    r = run({"frobnicate"});
    EXPECT_EQ(r.code, cli::kExitUsage);

    r = run({"render", "--model", golden("model.json"), "--view", "hexgrid"});
    EXPECT_EQ(r.code, cli::kExitUsage);

    r = run({"predict", "--model", "/nonexistent.json", "--query", golden("query.csv")});
    EXPECT_EQ(r.code, cli::kExitUsage);
}

TEST(Cli, ValidationErrorsExitTwo) {
    fixture::TempDir dir;
    fixture::write_file(dir / "e.csv", "ID,emb1,emb2\n1,0,0\n2,1,1\n");
    fixture::write_file(dir / "d.csv", "ID,x1,x2\n1,0,0\n3,1,1\n");
    const auto r = run({"fit", "--highd", (dir / "d.csv").string(), "--nldr", (dir / "e.csv").string(), "-o",
                        (dir / "m.json").string()});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("IdMismatch"), std::string::npos);
    EXPECT_FALSE(std::filesystem::exists(dir / "m.json"));
}

TEST(Cli, SweepRows) {
    fixture::TempDir dir;
    ASSERT_EQ(run({"gen-scurve", "--n", "400", "--seed", "5", "--highd-out", (dir / "d.csv").string(), "--nldr-out",
                   (dir / "a.csv").string(), "--shuffled-out", (dir / "b.csv").string()})
                  .code,
              0);
    auto r = run({"sweep", "--highd", (dir / "d.csv").string(), "--nldr", "good=" + (dir / "a.csv").string(), "--nldr",
                  "shuffled=" + (dir / "b.csv").string(), "--b1", "5:40:5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(line_count(r.out), 17u);

    r = run({"sweep", "--highd", (dir / "d.csv").string(), "--nldr", (dir / "a.csv").string(), "--b1", "9"});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_EQ(line_count(r.out), 2u);
    ASSERT_EQ(run({"fit", "--highd", (dir / "d.csv").string(), "--nldr", (dir / "a.csv").string(), "--b1", "9", "-o",
                   (dir / "m.json").string()})
                  .code,
              0);
    const auto e = run({"errors", "--model", (dir / "m.json").string(), "--highd", (dir / "d.csv").string()});
    const auto s = json::parse(e.out);
    std::istringstream rows(r.out);
    std::string header, row;
    std::getline(rows, header);
    std::getline(rows, row);
    EXPECT_EQ(row.rfind("a,9,", 0), 0u);
    EXPECT_NE(row.find("," + csv::format_double(s["HBE"].get<double>())), std::string::npos);
}

TEST(Cli, RenderAndBundle) {
    fixture::TempDir dir;
    auto r = run({"render", "--model", golden("model.json"), "--view", "trimesh-data", "--points", "-o",
                  (dir / "m.svg").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(fixture::read_file(dir / "m.svg").find("<line"), std::string::npos);

    r = run({"export-bundle", "--model", golden("model.json"), "--highd", golden("d.csv"), "-o",
             (dir / "bundle.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto b = json::parse(fixture::read_file(dir / "bundle.json"));
    EXPECT_EQ(b["bundle_version"], 1);
    r = run({"export-bundle", "--model", golden("model.json"), "--highd", golden("d.csv"), "-o",
             (dir / "bundle2.json").string()});
    EXPECT_EQ(fixture::read_file(dir / "bundle.json"), fixture::read_file(dir / "bundle2.json"));
}

TEST(Cli, GenScurveDeterministic) {
    auto gen = [](const std::string& seed) {
        return run({"gen-scurve", "--n", "50", "--seed", seed, "--highd-out", "-", "--nldr-out", "-"});
    };
    const auto a = gen("3");
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(line_count(a.out), 102u);
    EXPECT_EQ(a.out, gen("3").out);
    EXPECT_NE(a.out, gen("4").out);
}
