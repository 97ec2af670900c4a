#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "micromorph/cli.hpp"

using namespace micromorph;

namespace {

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    Result r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string config(const char* name) { return std::string(MICROMORPH_CONFIG_DIR) + "/" + name; }

std::size_t count_of(const std::string& hay, const std::string& needle)
{
    std::size_t n = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
    return n;
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST(Cli, Homogenize)
{
    const auto r = run({"homogenize", "--config", config("reference.conf")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["units"], "MPa");
    EXPECT_NEAR(j["mu_macro"].get<double>(), 66.667, 1e-3);
    EXPECT_NEAR(j["lambda_macro"].get<double>(), 82.54, 1e-2);
    EXPECT_NEAR(j["E_macro"].get<double>(), 170.2, 0.1);
    EXPECT_NEAR(j["nu_macro"].get<double>(), 0.2766, 1e-4);
}

TEST(Cli, GapsWithGradientInertia)
{
    const auto r = run({"gaps", "--config", config("reference_gradient.conf")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["model"], "relaxed-curl");
    EXPECT_EQ(j["scope"], "coupled");
    EXPECT_EQ(j["n_gaps"].get<int>(), 2);
    ASSERT_EQ(j["gaps"].size(), 2u);
    EXPECT_LT(j["gaps"][0]["omega_hi"].get<double>(), j["gaps"][1]["omega_lo"].get<double>());
    EXPECT_EQ(j["grid"]["points"].get<int>(), 400);
    EXPECT_DOUBLE_EQ(j["parameters"]["mu_c"].get<double>(), 1000.0);
}

TEST(Cli, GapScopeOverride)
{
    const auto r = run({"gaps", "--config", config("reference_gradient.conf"), "--scope", "complete"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["scope"], "complete");
    EXPECT_EQ(j["n_gaps"].get<int>(), 1);
}

TEST(Cli, TooFewPointsIsConfigError)
{
    const auto r = run({"gaps", "--config", config("reference.conf"), "--points", "0"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("KGrid invariant 'at least 50 points'"), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, InvalidParametersExitThree)
{
    const auto r = run({"cutoffs", "--mu_e", "0"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("mu_e > 0"), std::string::npos) << r.err;
    EXPECT_EQ(run({"homogenize", "--eta", "-1"}).code, 3);
}

TEST(Cli, UnknownConfigKeyExitTwo)
{
    const std::string path = testing::TempDir() + "bad.conf";
    {
        std::ofstream f(path);
        f << "mu_e = 200\nfrobnicate = 1\n";
    }
    const auto r = run({"cutoffs", "--config", path});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("unknown key 'frobnicate'"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find(":2:"), std::string::npos) << r.err;
    EXPECT_EQ(run({"cutoffs", "--config", testing::TempDir() + "missing.conf"}).code, 2);
    EXPECT_EQ(run({"cutoffs", "--model", "cosserat"}).code, 2);
    EXPECT_EQ(run({"cutoffs", "--no-such-flag"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, CutoffsJson)
{
    const auto r = run({"cutoffs", "--config", config("reference.conf")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["blocks"].size(), 4u);
    EXPECT_EQ(j["blocks"][0]["block"], "longitudinal");
    EXPECT_EQ(j["blocks"][0]["cutoffs"][0]["label"], "LA");
    EXPECT_TRUE(j["blocks"][0]["cutoffs"][0]["acoustic"].get<bool>());
    EXPECT_NEAR(j["blocks"][0]["cutoffs"][2]["omega"].get<double>(), std::sqrt(2.1e11), 1e-3);

    const auto hz = run({"cutoffs", "--config", config("reference.conf"), "--hertz"});
    const auto jh = nlohmann::json::parse(hz.out);
    EXPECT_EQ(jh["units"], "Hz");
    EXPECT_NEAR(jh["blocks"][0]["cutoffs"][2]["omega"].get<double>(), std::sqrt(2.1e11) / (2.0 * std::numbers::pi), 1e-3);
}

TEST(Cli, DisperseCsv)
{
    const auto r = run({"disperse", "--config", config("reference_gradient.conf")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 1u + 3u * 3u * 400u);
    EXPECT_EQ(ls[0], "k,block,branch_label,omega,dominant_mode,ratio");
    EXPECT_EQ(ls[1].rfind("0,longitudinal,", 0), 0u) << ls[1];
    std::set<std::string> branches;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const auto a = ls[i].find(',');
        const auto b = ls[i].find(',', a + 1);
        const auto c = ls[i].find(',', b + 1);
        branches.insert(ls[i].substr(b + 1, c - b - 1));
    }
    EXPECT_EQ(branches.size(), 9u);

    const auto one = run({"disperse", "--config", config("reference.conf"), "--block", "uncoupled", "--points", "60"});
    ASSERT_EQ(one.code, 0) << one.err;
    EXPECT_EQ(lines(one.out).size(), 1u + 3u * 60u);
    EXPECT_EQ(run({"disperse", "--block", "diagonal"}).code, 2);
}

TEST(Cli, OutputIsDeterministic)
{
    const std::vector<std::string> args{"disperse", "--config", config("reference_gradient.conf"), "--points", "80"};
    const auto a = run(args);
    const auto b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto g1 = run({"gaps", "--model", "internal-variable"});
    const auto g2 = run({"gaps", "--model", "internal-variable"});
    EXPECT_EQ(g1.out, g2.out);
}

TEST(Cli, PlotHasOnePolylinePerBranch)
{
    const auto r = run({"plot", "--config", config("reference_gradient.conf")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("<?xml", 0), 0u);
    EXPECT_EQ(count_of(r.out, "<polyline"), 9u);
    EXPECT_EQ(count_of(r.out, "<g id=\"panel-"), 3u);
    // self-contained: nothing fetched from elsewhere
    EXPECT_EQ(count_of(r.out, "href"), 0u);
    EXPECT_EQ(count_of(r.out, "<script"), 0u);
    EXPECT_EQ(count_of(r.out, "<image"), 0u);
    EXPECT_NE(r.out.find("</svg>"), std::string::npos);
    for (const char* label : {"TRO", "TSO", "TCVO", "LA", "LO1", "LO2", "TA", "TO1", "TO2"}) {
        EXPECT_EQ(count_of(r.out, std::string("data-branch=\"") + label + "\""), 1u) << label;
    }
}

TEST(Cli, ModesCsv)
{
    const auto r = run({"modes", "--branch", "TO2", "--config", config("reference_gradient.conf")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 401u);
    EXPECT_EQ(ls[0], "k,omega,dominant_mode,ratio");
    EXPECT_NE(ls[1].find("P_[12]"), std::string::npos) << ls[1];
    EXPECT_EQ(run({"modes", "--branch", "XX"}).code, 2);
    EXPECT_EQ(run({"modes"}).code, 2);
}

TEST(Cli, SweepParam)
{
    const auto r = run({"sweep-param", "--config", config("reference.conf"), "--param", "eta_bar_1", "--from", "0",
                        "--to", "0.1", "--steps", "3", "--points", "100"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 4u);
    EXPECT_EQ(ls[0], "param_value,n_gaps,gap_intervals");
    EXPECT_EQ(ls[1].rfind("0,", 0), 0u);
    EXPECT_EQ(ls[3].rfind("0.1,", 0), 0u);
    EXPECT_EQ(run({"sweep-param", "--param", "model", "--from", "0", "--to", "1"}).code, 2);
    EXPECT_EQ(run({"sweep-param", "--param", "mu_e", "--from", "-1", "--to", "1", "--steps", "2"}).code, 3);
}

TEST(Cli, OutputFile)
{
    const std::string path = testing::TempDir() + "h.json";
    const auto r = run({"homogenize", "--output", path});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    EXPECT_TRUE(nlohmann::json::accept(ss.str()));
}

TEST(Cli, ConfigTextParsing)
{
    io::RunConfig cfg;
    io::apply_text(cfg, "# comment\n  mu_c = 5 # inline\n\nL_c=2\nhertz = yes\nscope = complete\n");
    EXPECT_DOUBLE_EQ(cfg.elastic.mu_c, 5.0e6);
    EXPECT_DOUBLE_EQ(cfg.elastic.L_c, 2.0e-3);
    EXPECT_TRUE(cfg.hertz);
    EXPECT_EQ(cfg.scope, GapScope::Complete);
    EXPECT_THROW(io::apply_text(cfg, "mu_c 5\n"), ConfigError);
    EXPECT_THROW(io::apply_text(cfg, "mu_c = five\n"), ConfigError);
    EXPECT_THROW(io::apply_text(cfg, "points = -3\n"), ConfigError);
}

TEST(Cli, ExecutableExitCodes)
{
    const std::string tool = MICROMORPH_TOOL;
    const std::string quiet = " >/dev/null 2>&1";
    auto status = [](int raw) { return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1; };
    EXPECT_EQ(status(std::system((tool + " homogenize" + quiet).c_str())), 0);
    EXPECT_EQ(status(std::system((tool + " cutoffs --points 0" + quiet).c_str())), 2);
    EXPECT_EQ(status(std::system((tool + " cutoffs --rho 0" + quiet).c_str())), 3);
}
