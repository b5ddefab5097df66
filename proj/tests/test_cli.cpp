#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "abc_arma/cli.hpp"
#include "abc_arma/error.hpp"
#include "abc_arma/io.hpp"

using namespace abc_arma;
namespace fs = std::filesystem;

namespace {

fs::path tmp_root() {
    const char* env = std::getenv("ABC_ARMA_TEST_TMP");
    fs::path root = env ? fs::path(env) : fs::temp_directory_path() / "abc_arma_cli_tests";
    fs::create_directories(root);
    return root;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = tmp_root() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "abc-arma");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

std::string small_config(double eps_phi = 1.0) {
    nlohmann::json j = {
        {"model", {{"phi", {0.6, 0.2}}, {"theta", {0.3, 0.4}}, {"sigma", 2.0}}},
        {"seed", 7},
        {"simulate", {{"n", 300}}},
        {"prior", {{"alpha", 2.0}, {"beta", 2.0}}},
        {"stages",
         {{"phi", {{"n_proposals", 600}, {"epsilon", eps_phi}, {"top_k", 20}}},
          {"theta", {{"n_proposals", 600}, {"epsilon", 1.0}, {"top_k", 10}}},
          {"sigma", {{"n_proposals", 600}, {"epsilon", 10.0}, {"top_k", 5}}}}}};
    return j.dump();
}

}  // namespace

TEST_CASE("usage errors exit with 2, help with 0") {
    CHECK(run({}).code == cli::usage_error);
    CHECK(run({"frobnicate"}).code == cli::usage_error);
    CHECK(run({"acf", "--input", "x.csv"}).code == cli::usage_error);
    CHECK(run({"--help"}).code == cli::ok);
    CHECK(run({"simulate", "--config", "/nonexistent.json", "--out", "x.csv"}).code == cli::usage_error);
}

TEST_CASE("acf prints lag 0 and the sample autocorrelations") {
    const fs::path dir = fresh_dir("acf");
    write(dir / "y.csv", "1\n2\n3\n4\n");
    const auto r = run({"acf", "--input", (dir / "y.csv").string(), "--max-lag", "1"});
    CHECK(r.code == cli::ok);
    CHECK(r.out == "lag,acf\n0,1\n1,0.25\n");

    const auto to_file = run({"acf", "--input", (dir / "y.csv").string(), "--max-lag", "2", "--out",
                              (dir / "acf.csv").string()});
    CHECK(to_file.code == cli::ok);
    CHECK(slurp(dir / "acf.csv").rfind("lag,acf\n0,1\n1,0.25\n2,", 0) == 0);

    CHECK(run({"acf", "--input", (dir / "y.csv").string(), "--max-lag", "4"}).code == cli::usage_error);
    write(dir / "flat.csv", "2\n2\n2\n");
    CHECK(run({"acf", "--input", (dir / "flat.csv").string(), "--max-lag", "1"}).code == cli::usage_error);
    write(dir / "bad.csv", "1\nfoo\n");
    const auto bad = run({"acf", "--input", (dir / "bad.csv").string(), "--max-lag", "1"});
    CHECK(bad.code == cli::usage_error);
    CHECK(bad.err.find("line 2") != std::string::npos);
}

TEST_CASE("simulate validates the model and writes a reproducible series") {
    const fs::path dir = fresh_dir("simulate");
    write(dir / "cfg.json", small_config());
    const auto a = run({"simulate", "--config", (dir / "cfg.json").string(), "--out", (dir / "a.csv").string()});
    REQUIRE(a.code == cli::ok);
    CHECK(a.out.find("stationary: true") != std::string::npos);
    const auto b = run({"simulate", "--config", (dir / "cfg.json").string(), "--out", (dir / "b.csv").string()});
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    std::ifstream in(dir / "a.csv");
    CHECK(io::parse_series_csv(in).size() == 300);

    const auto c = run({"simulate", "--config", (dir / "cfg.json").string(), "--seed", "8", "--n", "50", "--out",
                        (dir / "c.csv").string()});
    CHECK(c.code == cli::ok);
    std::ifstream in_c(dir / "c.csv");
    CHECK(io::parse_series_csv(in_c).size() == 50);

    write(dir / "unit.json", R"({"model": {"phi": [0.0, 1.0], "theta": [], "sigma": 1.0}})");
    const auto unit = run({"simulate", "--config", (dir / "unit.json").string(), "--out", (dir / "u.csv").string()});
    CHECK(unit.code == cli::usage_error);
    CHECK(unit.err.find("not stationary") != std::string::npos);
    CHECK(unit.err.find("AR root moduli") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "u.csv"));

    write(dir / "noninv.json", R"({"model": {"phi": [], "theta": [1.5], "sigma": 1.0}})");
    const auto ni = run({"simulate", "--config", (dir / "noninv.json").string(), "--out", (dir / "n.csv").string()});
    CHECK(ni.code == cli::usage_error);
    CHECK(ni.err.find("not invertible") != std::string::npos);
}

TEST_CASE("estimate writes the report and posteriors, byte-identical across runs and thread counts") {
    const fs::path dir = fresh_dir("estimate");
    write(dir / "cfg.json", small_config());
    REQUIRE(run({"simulate", "--config", (dir / "cfg.json").string(), "--out", (dir / "y.csv").string()}).code ==
            cli::ok);
    const std::vector<std::string> files{"report.json", "posterior_phi.csv", "posterior_theta.csv",
                                         "posterior_sigma.csv"};
    auto estimate = [&](const std::string& out, const std::string& threads) {
        return run({"estimate", "--config", (dir / "cfg.json").string(), "--input", (dir / "y.csv").string(),
                    "--out-dir", (dir / out).string(), "--threads", threads});
    };
    REQUIRE(estimate("r1", "1").code == cli::ok);
    REQUIRE(estimate("r8", "8").code == cli::ok);
    REQUIRE(estimate("r8b", "8").code == cli::ok);
    for (const auto& f : files) {
        CAPTURE(f);
        CHECK(slurp(dir / "r1" / f) == slurp(dir / "r8" / f));
        CHECK(slurp(dir / "r8" / f) == slurp(dir / "r8b" / f));
    }
    CHECK(slurp(dir / "r1" / "posterior_phi.csv").rfind("phi_1,phi_2,distance,proposal_index\n", 0) == 0);
    CHECK(slurp(dir / "r1" / "posterior_sigma.csv").rfind("sigma,sigma2,distance,proposal_index\n", 0) == 0);
    const auto report = nlohmann::json::parse(slurp(dir / "r1" / "report.json"));
    CHECK(report.at("phi_hat").size() == 2);
    CHECK(report.at("theta_hat").size() == 2);
    CHECK(report.at("stages").at("phi").at("kept").get<int>() == 20);

    ::setenv("ABC_ARMA_THREADS", "2", 1);
    const auto env = run({"estimate", "--config", (dir / "cfg.json").string(), "--input", (dir / "y.csv").string(),
                          "--out-dir", (dir / "env").string()});
    ::unsetenv("ABC_ARMA_THREADS");
    CHECK(env.code == cli::ok);
    CHECK(slurp(dir / "env" / "report.json") == slurp(dir / "r1" / "report.json"));

    const auto reseeded = run({"estimate", "--config", (dir / "cfg.json").string(), "--input",
                               (dir / "y.csv").string(), "--out-dir", (dir / "seed9").string(), "--seed", "9"});
    CHECK(reseeded.code == cli::ok);
    CHECK(slurp(dir / "seed9" / "report.json") != slurp(dir / "r1" / "report.json"));
}

TEST_CASE("estimate: empty posterior exits 3, missing paths exit 2") {
    const fs::path dir = fresh_dir("empty");
    write(dir / "cfg.json", small_config(1e-9));
    REQUIRE(run({"simulate", "--config", (dir / "cfg.json").string(), "--out", (dir / "y.csv").string()}).code ==
            cli::ok);
    const auto r = run({"estimate", "--config", (dir / "cfg.json").string(), "--input", (dir / "y.csv").string(),
                        "--out-dir", (dir / "out").string()});
    CHECK(r.code == cli::empty_posterior_error);
    CHECK(r.err.find("phi") != std::string::npos);
    CHECK(run({"estimate", "--config", (dir / "cfg.json").string(), "--out-dir", (dir / "out").string()}).code ==
          cli::usage_error);
    CHECK(run({"estimate", "--config", (dir / "cfg.json").string(), "--input", (dir / "missing.csv").string(),
               "--out-dir", (dir / "out").string()})
              .code == cli::usage_error);
    CHECK(run({"estimate", "--config", (dir / "cfg.json").string(), "--input", (dir / "y.csv").string(),
               "--out-dir", (dir / "out").string(), "--top-k-phi", "0"})
              .code == cli::usage_error);
}

TEST_CASE("estimate warns when a stage keeps fewer than top_k draws") {
    const fs::path dir = fresh_dir("warn");
    write(dir / "cfg.json", small_config());
    REQUIRE(run({"simulate", "--config", (dir / "cfg.json").string(), "--out", (dir / "y.csv").string()}).code ==
            cli::ok);
    const auto r = run({"estimate", "--config", (dir / "cfg.json").string(), "--input", (dir / "y.csv").string(),
                        "--out-dir", (dir / "out").string(), "--epsilon-phi", "0.15", "--top-k-phi", "500"});
    REQUIRE(r.code == cli::ok);
    CHECK(r.err.find("warning: phi stage kept") != std::string::npos);
}

TEST_CASE("benchmark writes the comparison table; zero truths use absolute error") {
    const fs::path dir = fresh_dir("benchmark");
    nlohmann::json cfg = nlohmann::json::parse(small_config());
    cfg["model"]["phi"] = {0.5, 0.0};
    write(dir / "cfg.json", cfg.dump());
    const auto r = run({"benchmark", "--config", (dir / "cfg.json").string(), "--out-dir", (dir / "out").string()});
    REQUIRE(r.code == cli::ok);
    for (const char* f : {"series.csv", "benchmark.csv", "mle.json", "report.json", "posterior_sigma.csv"})
        CHECK(fs::exists(dir / "out" / f));
    const std::string csv = slurp(dir / "out" / "benchmark.csv");
    CHECK(csv.rfind("parameter,true_value,mle_estimate,mle_error,abc_estimate,abc_error,error_kind\n", 0) == 0);
    CHECK(csv.find("\nphi_2,0,") != std::string::npos);
    CHECK(csv.find(",absolute\n") != std::string::npos);
    CHECK(csv.find("\nsigma2,4,") != std::string::npos);
    CHECK(r.out.find(" abs") != std::string::npos);

    const auto again = run({"benchmark", "--config", (dir / "cfg.json").string(), "--out-dir",
                            (dir / "again").string(), "--threads", "8"});
    REQUIRE(again.code == cli::ok);
    for (const char* f : {"series.csv", "benchmark.csv", "mle.json", "report.json"})
        CHECK(slurp(dir / "out" / f) == slurp(dir / "again" / f));

    write(dir / "nomodel.json", R"({"p": 1, "q": 1})");
    CHECK(run({"benchmark", "--config", (dir / "nomodel.json").string(), "--out-dir", (dir / "x").string()}).code ==
          cli::usage_error);
}

TEST_CASE("relative_error") {
    CHECK(cli::relative_error(0.66, 0.6) == doctest::Approx(0.1));
    CHECK(cli::relative_error(-0.1, 0.0) == 0.1);
}

TEST_CASE("run config parsing") {
    const auto c = cli::run_config_from_json(nlohmann::json::parse(small_config()));
    CHECK(c.p == 2);
    CHECK(c.q == 2);
    CHECK(c.n == 300);
    CHECK(c.stages.sigma.master_seed == 7);
    CHECK(c.stages.theta.top_k == 10);
    CHECK_THROWS_AS(cli::run_config_from_json(nlohmann::json::parse(R"({"model": {"phi": [0.5]}, "p": 2})")),
                    invalid_input);
    CHECK_THROWS_AS(cli::run_config_from_json(nlohmann::json::parse(R"({"seed": "x"})")), invalid_input);
}
