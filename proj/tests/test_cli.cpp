#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "checks.hpp"
#include "cli.hpp"
#include "nijenhuis/model.hpp"
#include "nijenhuis/report.hpp"

using namespace nijenhuis;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(NIJENHUIS_TEST_DATA) + "/" + name; }
std::string models(const std::string& name) { return std::string(NIJENHUIS_MODELS) + "/" + name; }

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("nijenhuis-cli-" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

// Sets or clears the series-order variable for one scope.
class EnvOrder {
 public:
  explicit EnvOrder(const char* value) {
    if (value) ::setenv(cli::kSeriesOrderEnv, value, 1);
    else ::unsetenv(cli::kSeriesOrderEnv);
  }
  ~EnvOrder() { ::unsetenv(cli::kSeriesOrderEnv); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("fixtures and exit codes") {
    EnvOrder env(nullptr);
    const Result ok = run({"verify", data("companion.json")});
    CHECK(ok.code == cli::kExitPass);
    CHECK(ok.out.find("nijenhuis") != std::string::npos);
    CHECK(ok.out.find("sigma") != std::string::npos);
    CHECK(ok.out.find("frame-relations") == std::string::npos);

    const Result bad = run({"verify", data("diag_yx.json")});
    CHECK(bad.code == cli::kExitFail);
    CHECK(bad.out.find("N[1,1,2] = -x + y") != std::string::npos);

    CHECK(run({"verify", data("malformed.json")}).code == cli::kExitUsage);
    const Result asym = run({"verify", data("asymmetric.json")});
    CHECK(asym.code == cli::kExitUsage);
    CHECK(asym.err.find("asymmetric structure constants") != std::string::npos);
    const Result expr = run({"verify", data("bad_expression.json")});
    CHECK(expr.code == cli::kExitUsage);
    CHECK(expr.err.find("L[1][1]") != std::string::npos);
    CHECK(run({"verify", data("missing.json")}).code == cli::kExitUsage);
  }

  TEST_CASE("check selection") {
    EnvOrder env(nullptr);
    CHECK(run({"verify", data("companion.json"), "--checks", "nijenhuis,frame-relations"}).code == 0);
    CHECK(run({"verify", data("diag_yx.json"), "--checks", "2d-criterion"}).code == 1);
    const Result unknown = run({"verify", data("companion.json"), "--checks", "curvature"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("curvature") != std::string::npos);
    const Result missing = run({"verify", data("diag_yx.json"), "--checks", "unity"});
    CHECK(missing.code == 2);
  }

  TEST_CASE("shipped models") {
    EnvOrder env(nullptr);
    CHECK(run({"verify", models("companion3.json")}).code == 0);
    CHECK(run({"verify", models("diag_yx.json")}).code == 1);
    CHECK(run({"verify", models("thm6_k3.json")}).code == 0);
    CHECK(run({"verify", models("direct_sum.json")}).code == 0);
    CHECK(run({"verify", models("cor1_series.json")}).code == 0);
  }

  TEST_CASE("json reports round trip") {
    EnvOrder env(nullptr);
    const Result r = run({"verify", data("diag_yx.json"), "--format", "json"});
    REQUIRE(r.code == 1);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.is_array());
    const std::vector<std::string> names = {"x", "y"};
    const Model model = load_model_file(data("diag_yx.json"));
    std::vector<std::string> checks;
    for (const auto& item : doc) {
      CHECK(item.contains("verdict"));
      const Report back = report_from_json(item.dump(), names, RingMode::poly());
      const Report direct = cli::run_check(model, back.check);
      CHECK(back == direct);
      checks.push_back(back.check);
    }
    CHECK(std::is_sorted(checks.begin(), checks.end()));
    CHECK(checks == cli::applicable_checks(model));
  }

  TEST_CASE("report written to a file") {
    EnvOrder env(nullptr);
    TempDir dir;
    const Result r = run({"verify", data("companion.json"), "-o", dir.file("report.txt")});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(dir.file("report.txt")).find("nijenhuis") != std::string::npos);
  }
}

TEST_SUITE("series order") {
  TEST_CASE("flag, model, environment, default") {
    {
      EnvOrder env(nullptr);
      CHECK(cli::default_series_order() == 8);
      const Result r = run({"verify", data("series_exp.json"), "--checks", "nijenhuis"});
      CHECK(r.code == 0);
      CHECK(r.out.find("series order 5") != std::string::npos);
      const Result flagged =
          run({"verify", data("series_exp.json"), "--checks", "nijenhuis", "--series-order", "3"});
      CHECK(flagged.out.find("series order 3") != std::string::npos);
    }
    {
      EnvOrder env("4");
      CHECK(cli::default_series_order() == 4);
      // The model's own order beats the environment.
      CHECK(run({"verify", data("series_exp.json"), "--checks", "nijenhuis"}).out.find("series order 5") !=
            std::string::npos);
      const Result gen = run({"generate", "--family", "dim3-cor1", "--k", "2", "--F", "1 + t"});
      REQUIRE(gen.code == 0);
      CHECK(load_model(gen.out).mode == RingMode::series(4));
    }
    {
      EnvOrder env("eight");
      CHECK_THROWS_AS(cli::default_series_order(), std::invalid_argument);
      CHECK(run({"verify", data("series_exp.json")}).code == 2);
    }
    CHECK(run({"verify", data("series_exp.json"), "--series-order", "-1"}).code == 2);
  }
}

TEST_SUITE("generate") {
  TEST_CASE("every family verifies") {
    EnvOrder env(nullptr);
    TempDir dir;
    const std::vector<std::vector<std::string>> specs = {
        {"--family", "jordan", "--n", "4", "--lambda0", "1/2"},
        {"--family", "toeplitz", "--n", "3", "--lambda0", "-2"},
        {"--family", "complex-block", "--n", "2", "--a0", "1", "--b0", "1"},
        {"--family", "complex-toeplitz", "--n", "2", "--b0", "-1/2"},
        {"--family", "companion", "--n", "4"},
        {"--family", "dim2-case1", "--lambda0", "3"},
        {"--family", "dim2-case2", "--d", "1/3"},
        {"--family", "dim2-case3", "--k", "3", "--sign", "-"},
        {"--family", "dim2-case4", "--f", "0"},
        {"--family", "dim2-case4", "--f", "y^2 + y"},
        {"--family", "dim3-thm4", "--k", "2", "--f", "-x3/2", "--g", "1"},
        {"--family", "dim3-cor1", "--k", "3", "--F", "1 + t", "--series-order", "6"},
        {"--family", "dim3-cor2", "--k", "2"},
    };
    int i = 0;
    for (const auto& spec : specs) {
      std::vector<std::string> args = {"generate"};
      args.insert(args.end(), spec.begin(), spec.end());
      const std::string path = dir.file("model" + std::to_string(i++) + ".json");
      args.insert(args.end(), {"-o", path});
      CAPTURE(spec[1]);
      REQUIRE(run(args).code == 0);
      const Result v = run({"verify", path});
      CHECK(v.code == 0);
      CHECK(v.out.find("nijenhuis") != std::string::npos);
      CHECK(v.out.find("unity") != std::string::npos);
    }
  }

  TEST_CASE("the first-section sign variant fails verification") {
    EnvOrder env(nullptr);
    TempDir dir;
    const std::string path = dir.file("variant.json");
    REQUIRE(run({"generate", "--family", "jordan", "--n", "4", "--variant", "first-section-print", "-o", path})
                .code == 0);
    CHECK(run({"verify", path, "--checks", "nijenhuis"}).code == 1);
  }

  TEST_CASE("parameter errors") {
    CHECK(run({"generate", "--family", "jordan"}).code == 2);
    CHECK(run({"generate", "--family", "jordan", "--n", "2", "--k", "2"}).code == 2);
    CHECK(run({"generate", "--family", "jordan", "--n", "2", "--lambda0", "0.5"}).code == 2);
    CHECK(run({"generate", "--family", "nope"}).code == 2);
    CHECK(run({"generate", "--family", "dim2-case4", "--f", "x"}).code == 2);
    CHECK(run({"generate", "--family", "dim3-thm4", "--k", "2", "--f", "x3 +", "--g", "1"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
  }
}

TEST_SUITE("derive") {
  TEST_CASE("table method from a structure-constant model") {
    EnvOrder env(nullptr);
    TempDir dir;
    const std::string path = dir.file("table.json");
    REQUIRE(run({"derive", "structure-constants", models("thm6_k3.json"), "--method", "table", "-o", path})
                .code == 0);
    const Model m = load_model_file(path);
    CHECK(m.circ.has_value());
    CHECK(m.E.has_value());
    CHECK(run({"verify", path}).code == 0);
    CHECK(run({"verify", path, "--checks", "fmanifold,nijenhuis,pde-thm4,pde-thm6"}).code == 0);
    CHECK(run({"derive", "structure-constants", data("companion.json"), "--method", "table"}).code == 2);
  }

  TEST_CASE("frame method") {
    EnvOrder env(nullptr);
    TempDir dir;
    const std::string toeplitz = dir.file("toeplitz.json");
    REQUIRE(run({"generate", "--family", "toeplitz", "--n", "3", "-o", toeplitz}).code == 0);
    const std::string derived = dir.file("derived.json");
    REQUIRE(run({"derive", "structure-constants", toeplitz, "-o", derived}).code == 0);
    CHECK(run({"verify", derived, "--checks", "fmanifold,nijenhuis,unity"}).code == 0);

    const Result companion = run({"derive", "structure-constants", data("companion.json")});
    CHECK(companion.code == 1);
    CHECK(companion.err.find("--point") != std::string::npos);

    const std::string near = dir.file("near.json");
    REQUIRE(run({"derive", "structure-constants", data("companion.json"), "--point", "1,1,0",
                 "--series-order", "4", "-o", near})
                .code == 0);
    CHECK(run({"verify", near, "--checks", "fmanifold"}).code == 0);
    CHECK(run({"derive", "structure-constants", data("companion.json"), "--point", "0,0,0"}).code == 2);
    CHECK(run({"derive", "structure-constants", data("companion.json"), "--point", "1,1"}).code == 2);
  }
}

TEST_SUITE("selftest") {
  TEST_CASE("passes, and fails with the injected sign") {
    EnvOrder env(nullptr);
    const Result ok = run({"selftest"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("selftest:forms") != std::string::npos);
    const Result faulty = run({"selftest", "--inject-fault", "jordan-sign"});
    CHECK(faulty.code == 1);
    const Result json = run({"selftest", "--format", "json", "--seed", "7"});
    CHECK(json.code == 0);
    CHECK(nlohmann::json::parse(json.out).size() >= 5);
  }

  TEST_CASE("the installed binary reports exit codes") {
    const std::string tool = NIJENHUIS_TOOL;
    const auto status = [&](const std::string& args) {
      const int raw = std::system((tool + " " + args + " > /dev/null 2>&1").c_str());
      return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("verify " + data("companion.json")) == 0);
    CHECK(status("verify " + data("diag_yx.json")) == 1);
    CHECK(status("verify " + data("malformed.json")) == 2);
    CHECK(status("--help") == 0);
  }
}
