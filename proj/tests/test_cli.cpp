#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "l0fusion/csv.hpp"
#include "l0fusion/simgen.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace l0fusion;

namespace {

#ifndef L0FUSE_BIN
#error "L0FUSE_BIN must point at the CLI binary"
#endif

int run(const std::string& args) {
    const std::string cmd = std::string(L0FUSE_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string capture(const std::string& args) {
    const std::string out_path = "/tmp/l0fuse_cli_capture.txt";
    const std::string cmd = std::string(L0FUSE_BIN) + " " + args + " > " + out_path + " 2>&1";
    std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove(out_path.c_str());
    return ss.str();
}

struct TestData {
    std::string path = "/tmp/l0fuse_cli_data.csv";
    TestData() {
        SimConfig cfg;
        cfg.n = 60;
        cfg.p = 10;
        cfg.q = 1;
        cfg.sigma = 0.3;
        cfg.seed = 2718;
        cfg.group_sizes = {3, 3};
        cfg.group_values = {-1.0, 1.5};
        cfg.alpha_star = VectorXd(1);
        cfg.alpha_star << 0.5;
        const Dataset d = gen_dataset(cfg);
        const VectorXd beta = make_beta(cfg.p, cfg.group_sizes, cfg.group_values);
        write_dataset_csv(path, d, &beta);
    }
    ~TestData() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("exit codes: success, runtime failure, usage failure") {
    TestData data;
    CHECK(run("--help") == 0);
    CHECK(run("fit --data " + data.path + " --K 2 --s 6") == 0);
    CHECK(run("fit --data /nonexistent.csv --K 2") == 1);
    CHECK(run("fit --K 2") == 2);                     // missing required --data
    CHECK(run("no-such-command") == 2);
    CHECK(run("screen --data " + data.path + " --pi 0") == 1);  // invalid config
}

TEST_CASE("fit reports groups, gap, and truth-based score") {
    TestData data;
    const std::string out = capture("fit --data " + data.path + " --K 2 --s 6");
    CHECK(out.find("objective ") != std::string::npos);
    CHECK(out.find("termination optimal") != std::string::npos);
    CHECK(out.find("group 1 ") != std::string::npos);
    CHECK(out.find("group_effect") != std::string::npos);
    CHECK(out.find("nmi_zero 1\n") != std::string::npos);
}

TEST_CASE("screen reports the support and TPP") {
    TestData data;
    const std::string out = capture("screen --data " + data.path + " --pi 6");
    CHECK(out.find("support x1 x2 x3 x4 x5 x6") != std::string::npos);
    CHECK(out.find("tpp 1\n") != std::string::npos);
}

TEST_CASE("tune picks a budget from the grid") {
    TestData data;
    const std::string out = capture("tune --data " + data.path +
                                    " --K-grid 1,2,3 --s-grid 2,4,6 --method bic");
    CHECK(out.find("K 2\n") != std::string::npos);
    CHECK(out.find("s 6\n") != std::string::npos);
}

TEST_CASE("export-mio writes an LP file with LF endings") {
    TestData data;
    const std::string lp_path = "/tmp/l0fuse_cli_model.lp";
    CHECK(run("export-mio --data " + data.path + " --K 2 --s 6 --out " + lp_path) == 0);
    std::ifstream in(lp_path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    std::remove(lp_path.c_str());
    CHECK(!text.empty());
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.find("Minimize") != std::string::npos);
    CHECK(text.find("Binaries") != std::string::npos);
}

TEST_CASE("config file values are picked up and flags win") {
    TestData data;
    const std::string cfg_path = "/tmp/l0fuse_cli_cfg.ini";
    {
        std::ofstream cfg(cfg_path);
        cfg << "[fit]\n"
            << "data=" << data.path << "\n"
            << "K=2\n"
            << "s=6\n";
    }
    CHECK(run("fit --config " + cfg_path) == 0);
    const std::string out = capture("fit --config " + cfg_path + " --s 2");
    std::remove(cfg_path.c_str());
    CHECK(out.find("termination optimal") != std::string::npos);
}

TEST_CASE("simulate writes a replicate table with summary rows") {
    const std::string out_path = "/tmp/l0fuse_cli_sim.csv";
    CHECK(run("simulate --reps 3 --n 50 --p 12 --preset equal --signal-r 1.0 "
              "--sigma 0.3 --K 4 --seed 5 --time-limit 2 --threads 2 --out " +
              out_path) == 0);
    std::ifstream in(out_path);
    std::string line;
    int rows = 0;
    bool has_median = false;
    while (std::getline(in, line)) {
        ++rows;
        if (line.rfind("median,", 0) == 0) has_median = true;
    }
    std::remove(out_path.c_str());
    CHECK(rows == 1 + 3 + 3);  // header, replicates, q1/median/q3
    CHECK(has_median);
}

TEST_CASE("pipeline screens then fits") {
    TestData data;
    const std::string out = capture("pipeline --data " + data.path +
                                    " --s-hat 6 --K-grid 1,2,3 --folds 5 --seed 3");
    CHECK(out.find("screened x1 x2 x3 x4 x5 x6") != std::string::npos);
    CHECK(out.find("selected_K 2") != std::string::npos);
    CHECK(out.find("nmi_zero 1\n") != std::string::npos);
}
