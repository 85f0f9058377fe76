#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qtradeoff/cli.hpp"

using namespace qtradeoff;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "qtradeoff_cli_test")
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("usage errors exit with 2")
{
    CHECK(cli({}).code == 2);
    CHECK(cli({"curve", "nope"}).code == 2);
    CHECK(cli({"curve", "dnq-opt", "--grid", "1"}).code == 2);
    CHECK(cli({"table", "hypercube", "--k", "9", "--no-cache"}).code == 2);
    CHECK(cli({"band-check", "--in", "/nonexistent.csv", "--c-low", "0.2", "--c-high", "0.1"}).code == 2);
    const auto r = cli({"curve", "dnq-opt", "--tolerance", "-1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--tolerance") != std::string::npos);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("curve output is written atomically and deterministically")
{
    TempDir tmp;
    const auto a = cli({"curve", "dnq-opt", "--grid", "2000", "--out", tmp / "dnq.csv"});
    CHECK(a.code == 0);
    CHECK(a.out.find("result=PASS") != std::string::npos);
    CHECK(a.out.find("delta=") != std::string::npos);
    CHECK(fs::exists(tmp / "dnq.csv"));
    CHECK_FALSE(fs::exists(tmp / "dnq.csv.tmp"));
    const auto text = slurp(tmp / "dnq.csv");
    CHECK(text.rfind("s_exp,t_exp,s_base,t_base,label\n", 0) == 0);

    CHECK(cli({"curve", "dnq-improved", "--grid", "512", "--threads", "1", "--out", tmp / "i1.csv"}).code == 0);
    CHECK(cli({"curve", "dnq-improved", "--grid", "512", "--threads", "4", "--out", tmp / "i4.csv"}).code == 0);
    CHECK(slurp(tmp / "i1.csv") == slurp(tmp / "i4.csv"));

    const auto stdout_run = cli({"curve", "pairwise", "--grid", "16"});
    CHECK(stdout_run.code == 0);
    CHECK(stdout_run.out.rfind("s_exp,", 0) == 0);
    CHECK(stdout_run.err.find("coefficient=2.510123") != std::string::npos);
}

TEST_CASE("check failures exit with 1")
{
    TempDir tmp;
    CHECK(cli({"curve", "pairwise-extended", "--out", tmp / "pw.csv"}).code == 0);
    const auto ok = cli({"band-check", "--in", tmp / "pw.csv", "--c-low", "0.151", "--c-high", "0.088"});
    CHECK(ok.code == 0);
    const auto bad = cli({"band-check", "--in", tmp / "pw.csv", "--c-low", "0.3", "--c-high", "0.25"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("worst=(") != std::string::npos);
    CHECK(cli({"fit-c", "--s", "1.727391", "--t", "1.727391", "--expect", "0.268"}).code == 0);
    CHECK(cli({"fit-c", "--s", "1.727391", "--t", "1.727391", "--expect", "0.3"}).code == 1);
}

TEST_CASE("fractalize and gamma")
{
    const auto f = cli({"fractalize", "--s", "1.728", "--t", "1.728", "--times", "2", "--target-s", "1.147",
                        "--target-t", "1.928", "--tolerance", "0.001"});
    CHECK(f.code == 0);
    CHECK(f.out.find("step2") != std::string::npos);
    const auto g = cli({"gamma", "--k", "6"});
    CHECK(g.code == 0);
    CHECK(g.out.find("base=1.816905") != std::string::npos);
}

TEST_CASE("table with cache and config file")
{
    TempDir tmp;
    {
        std::ofstream cfg(tmp / "run.cfg");
        cfg << "s-grid=64\nalpha-grid=32\ntolerance=0.05\n";
    }
    const auto cache = tmp / "cache";
    const auto first = cli({"table", "hypercube", "--k", "2", "--config", tmp / "run.cfg", "--cache-dir", cache,
                            "--out", tmp / "t1.csv"});
    CHECK(first.code == 0);
    CHECK(first.out.find("tolerance=0.05") != std::string::npos);
    const auto ls = cli({"cache", "ls", "--cache-dir", cache});
    CHECK(ls.out.find("hypercube_k2_s64_a32") != std::string::npos);
    CHECK(cli({"table", "hypercube", "--k", "2", "--config", tmp / "run.cfg", "--cache-dir", cache, "--out",
               tmp / "t2.csv"})
              .code == 0);
    CHECK(slurp(tmp / "t1.csv") == slurp(tmp / "t2.csv"));
    CHECK(slurp(tmp / "t1.csv").find("2,S=T,1.826044,") != std::string::npos);

    // Flags win over the config file.
    const auto strict = cli({"table", "hypercube", "--k", "2", "--config", tmp / "run.cfg", "--cache-dir", cache,
                             "--tolerance", "1e-9", "--out", tmp / "t3.csv"});
    CHECK(strict.code == 1);

    const auto clear = cli({"cache", "clear", "--cache-dir", cache});
    CHECK(clear.out.find("files=1") != std::string::npos);
    CHECK(cli({"cache", "ls", "--cache-dir", cache}).out.find("files=0") != std::string::npos);
}

TEST_CASE("validator suite")
{
    const auto r = cli({"validate", "--suite", "all", "--max-n", "9", "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("VALIDATOR held_karp_vs_brute_force seed=7 result=PASS") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    const auto tsp = cli({"validate", "--suite", "tsp", "--max-n", "9"});
    CHECK(tsp.out.find("lattice") == std::string::npos);
}

TEST_CASE("figure data")
{
    TempDir tmp;
    CHECK(cli({"figure", "dnq", "--out", tmp / "dnq.csv"}).code == 0);
    const auto dnq = slurp(tmp / "dnq.csv");
    CHECK(dnq.find(",1.727391,1.727391,reference") != std::string::npos);
    CHECK(dnq.find(",T=S\n") != std::string::npos);
    CHECK(dnq.find("band-low c=0.268") != std::string::npos);
    CHECK(dnq.find("dnq-improved") != std::string::npos);

    CHECK(cli({"figure", "permutation", "--no-cache", "--out", tmp / "perm.csv"}).code == 0);
    const auto perm = slurp(tmp / "perm.csv");
    CHECK(perm.find(",1.816905,1.816905,gamma k=6") != std::string::npos);
    CHECK(perm.find("hypercube k=6") != std::string::npos);
    CHECK(perm.find("band-high c=0.099") != std::string::npos);

    CHECK_THROWS_AS(figure_to_csv({}), std::invalid_argument);
}
