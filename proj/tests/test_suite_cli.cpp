#include <hessmap/suite.hpp>

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace hessmap {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(HESSMAP_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), pipe)) > 0;) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Copy of the fixture tree in a fresh temporary directory.
fs::path copy_fixtures(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("hessmap_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::copy(default_fixture_dir(), dir, fs::copy_options::recursive);
  return dir;
}

TEST(Suite, DeterministicAcrossRunsAndJobs) {
  SuiteOptions a;
  a.filter = "harmonic";
  SuiteOptions b = a;
  b.jobs = 3;
  const auto ra = run_suite(a), rb = run_suite(b);
  EXPECT_EQ(ra.json.dump(), rb.json.dump());
  EXPECT_TRUE(ra.pass);
  EXPECT_FALSE(ra.json.contains("timings"));
}

TEST(Suite, FilterSelectsModuleOrCheckPrefix) {
  SuiteOptions o;
  o.filter = "certificates/d1";
  const auto r = run_suite(o);
  for (const auto& rec : r.json["records"]) {
    EXPECT_EQ(rec["module"], "certificates");
    EXPECT_EQ(rec["name"].get<std::string>().rfind("d1", 0), 0u);
  }
  EXPECT_EQ(r.json["records"].size(), 7u);  // d10 through d16
  o.filter = "no-such-module";
  EXPECT_THROW(run_suite(o), std::invalid_argument);
}

TEST(Suite, SeedOverrideChangesRecordedSeeds) {
  SuiteOptions o;
  o.filter = "forms_core";
  o.seed = 7;
  const auto r = run_suite(o);
  EXPECT_NE(r.json["seeds"]["forms"], 6006);
  EXPECT_EQ(run_suite(o).json.dump(), r.json.dump());
}

TEST(Suite, TamperedFixtureIsRejected) {
  const fs::path dir = copy_fixtures("tamper");
  {
    std::ofstream f(dir / "seeds.json", std::ios::app);
    f << " ";
  }
  SuiteOptions o;
  o.filter = "harmonic";
  o.fixture_dir = dir.string();
  EXPECT_THROW(run_suite(o), FixtureError);
  EXPECT_EQ(run_cli("--fixtures " + dir.string() + " suite --filter harmonic").code, 3);
  fs::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("verify prop --id 2.7 --r 2 --k 2 --h 1").code, 0);
  EXPECT_EQ(run_cli("verify prop --id 2.8 --r 2 --k 2 --m 1").code, 1);
  EXPECT_EQ(run_cli("verify prop --id 9.9 --r 2 --k 2").code, 2);
  EXPECT_EQ(run_cli("rank --point qk --r 2").code, 2);
  EXPECT_EQ(run_cli("frobnicate").code, 2);
  EXPECT_EQ(run_cli("scan --condition evenA --r 2 --kmin 2 --kmax 20").code, 1);
  EXPECT_EQ(run_cli("scan --condition odd --r 2 --kmin 2 --kmax 50").code, 0);
  EXPECT_EQ(run_cli("certify --d 5").code, 0);
  EXPECT_EQ(run_cli("certify --d 4").code, 0);
  EXPECT_EQ(run_cli("limit --fixture does-not-exist").code, 3);
  EXPECT_EQ(run_cli("limit --fixture quartic_q2").code, 0);
  EXPECT_EQ(run_cli("limit --fixture limit/quartic_q2.json").code, 0);
}

TEST(Cli, ReportsAreJson) {
  const auto r = run_cli("certify --d 14");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["branch"], "evenB-via-2.18");
  EXPECT_EQ(j["pass"], true);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const fs::path cfg = fs::temp_directory_path() / ("hessmap_cfg_" + std::to_string(::getpid()));
  {
    std::ofstream f(cfg);
    f << "# defaults\nk=3\nh=0\n";
  }
  const auto from_cfg = Json::parse(run_cli("--config " + cfg.string() + " verify prop --id 2.7 --r 2").out);
  EXPECT_EQ(from_cfg["records"][0]["k"], 3);
  EXPECT_EQ(from_cfg["records"][0]["h"], 0);
  const auto flag = Json::parse(run_cli("--config " + cfg.string() + " verify prop --id 2.7 --r 2 --k 2").out);
  EXPECT_EQ(flag["records"][0]["k"], 2);
  EXPECT_EQ(flag["records"][0]["h"], 0);
  EXPECT_EQ(run_cli("--config /nonexistent/file verify prop --id 2.7 --r 2 --k 2").code, 2);
  fs::remove(cfg);
}

}  // namespace
}  // namespace hessmap
