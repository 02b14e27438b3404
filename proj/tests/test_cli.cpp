#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "cli_golden.hpp"
#include "sympl/matrix_market.hpp"

using namespace sympl;
using sympl::testing::fixture;
using sympl::testing::run_cli;
using Json = nlohmann::json;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("sympl_cli_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_fixture(const std::filesystem::path& dir, const std::string& name,
                          const std::string& text) {
    const auto p = dir / name;
    std::ofstream(p) << text;
    return p.string();
}

}  // namespace

TEST_CASE("golden reports") {
    for (const auto& c : testing::golden_cases()) {
        CAPTURE(c.name);
        CHECK(testing::check_golden(c) == "");
    }
}

TEST_CASE("reports are byte-identical across runs") {
    for (const auto& c : testing::golden_cases()) {
        CAPTURE(c.name);
        CHECK(testing::deterministic(c.args));
    }
    CHECK(testing::deterministic(
        {"tracemin-verify", "--input", fixture("identity4.mtx"), "--k", "2", "--seed", "99", "--threads", "3"}));
}

TEST_CASE("spectrum") {
    const auto r = run_cli({"spectrum", "--input", fixture("diag21.mtx")});
    CHECK(r.exit_code == cli::kExitOk);
    const auto j = Json::parse(r.out);
    CHECK(j["status"] == "ok");
    CHECK(j["command"] == "spectrum");
    CHECK(j["input"]["dimension"] == 2);
    CHECK(std::abs(j["outputs"]["d"][0].get<double>() - std::sqrt(2.0)) <= 1e-12);
    CHECK(j["seed"] == 0);
    CHECK(j["tolerances"]["tol"] == 1e-10);
}

TEST_CASE("diagonalize writes matrices on request") {
    const auto dir = scratch_dir("emit");
    const auto r = run_cli({"diagonalize", "--input", fixture("diag0303.mtx"), "--emit-matrices",
                            "--emit-dir", dir.string()});
    REQUIRE(r.exit_code == cli::kExitOk);
    const auto j = Json::parse(r.out);
    CHECK(j["outputs"]["m"] == 1);
    CHECK(j["outputs"]["diag_ok"] == true);
    CHECK(j["outputs"]["sympl_ok"] == true);
    CHECK(j["outputs"]["eigenpairs_ok"] == true);
    const DenseMatrix s = io::parse_matrix(dir / "diag0303.S.mtx");
    const DenseMatrix d = io::parse_matrix(dir / "diag0303.D.mtx");
    CHECK(s.rows() == 4);
    CHECK(d.rows() == 2);
    CHECK(std::abs(d(1, 1) - 3.0) <= 1e-12);
    // The written S is the reported S to the last bit.
    const auto rows = j["outputs"]["S"];
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k) CHECK(s(i, k) == rows[i][k].get<double>());
}

TEST_CASE("tracemin-verify emits the minimizer") {
    const auto dir = scratch_dir("emit_x");
    const auto r = run_cli({"tracemin-verify", "--input", fixture("diag21.mtx"), "--samples", "50",
                            "--emit-matrices", "--emit-dir", dir.string()});
    REQUIRE(r.exit_code == cli::kExitOk);
    const auto j = Json::parse(r.out);
    CHECK(j["outputs"]["violations"] == 0);
    CHECK(j["outputs"]["attained"] == true);
    CHECK(std::abs(j["outputs"]["bound"].get<double>() - 2.0 * std::sqrt(2.0)) <= 1e-12);
    CHECK(std::filesystem::exists(dir / "diag21.X.mtx"));
}

TEST_CASE("check-kernel classifications") {
    auto kernel = [](const std::string& f) {
        const auto r = run_cli({"check-kernel", "--input", fixture(f)});
        return std::pair{r.exit_code, Json::parse(r.out)};
    };
    {
        const auto [code, j] = kernel("identity4.mtx");
        CHECK(code == 0);
        CHECK(j["outputs"]["classification"] == "Trivial");
    }
    {
        const auto [code, j] = kernel("diag0303.mtx");
        CHECK(code == 0);
        CHECK(j["outputs"]["classification"] == "Symplectic");
        CHECK(j["outputs"]["dim"] == 2);
    }
    {
        const auto [code, j] = kernel("diagIn0.mtx");
        CHECK(code == cli::kExitRejected);
        CHECK(j["status"] == "rejected");
        CHECK(j["error"]["code"] == "IsotropicKernel");
        CHECK(j["outputs"]["classification"] == "Isotropic");
    }
}

TEST_CASE("pencil on an isotropic kernel still reports values") {
    const auto r = run_cli({"pencil", "--input", fixture("diagIn0.mtx")});
    CHECK(r.exit_code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["outputs"]["symplectic_spectrum"].is_null());
    CHECK(j["outputs"]["values"].size() == 8);
}

TEST_CASE("exit codes") {
    const auto dir = scratch_dir("exit");
    const auto odd = write_fixture(dir, "odd.mtx", "%%MatrixMarket matrix array real general\n3 3\n1\n0\n0\n0\n1\n0\n0\n0\n1\n");
    const auto rect = write_fixture(dir, "rect.mtx", "%%MatrixMarket matrix array real general\n2 1\n1\n1\n");
    const auto nonsym = write_fixture(dir, "nonsym.mtx", "%%MatrixMarket matrix array real general\n2 2\n1\n1\n0\n1\n");
    const auto indef = write_fixture(dir, "indef.mtx", "%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n-1\n");
    const auto bad = write_fixture(dir, "bad.mtx", "%%MatrixMarket matrix array real general\n2 2\n1\n0\nzero\n1\n");
    const auto cplx = write_fixture(dir, "cplx.mtx", "%%MatrixMarket matrix array complex general\n1 1\n1 0\n");

    auto code_for = [](std::vector<std::string> args) {
        const auto r = run_cli(args);
        return std::pair{r.exit_code, Json::parse(r.out)["error"]["code"]};
    };
    for (const char* sub : {"spectrum", "diagonalize", "check-kernel", "pencil", "tracemin-verify"}) {
        CAPTURE(sub);
        CHECK(code_for({sub, "--input", odd}) == std::pair{1, Json("OddDimensions")});
        CHECK(code_for({sub, "--input", rect}) == std::pair{1, Json("NotSquare")});
        CHECK(code_for({sub, "--input", nonsym}) == std::pair{2, Json("NotSymmetric")});
        CHECK(code_for({sub, "--input", bad}) == std::pair{1, Json("MalformedEntry")});
        CHECK(code_for({sub, "--input", cplx}) == std::pair{1, Json("UnsupportedHeader")});
        CHECK(code_for({sub, "--input", (dir / "missing.mtx").string()}) == std::pair{1, Json("IoError")});
    }
    for (const char* sub : {"spectrum", "diagonalize", "pencil", "tracemin-verify"}) {
        CAPTURE(sub);
        CHECK(code_for({sub, "--input", indef}) == std::pair{2, Json("NotSPSD")});
    }
    CHECK(code_for({"tracemin-verify", "--input", fixture("diag21.mtx"), "--k", "2"}) ==
          std::pair{1, Json("KOutOfRange")});
}

TEST_CASE("usage errors") {
    CHECK(run_cli({}).exit_code == cli::kExitUsage);
    CHECK(run_cli({"bogus"}).exit_code == cli::kExitUsage);
    CHECK(run_cli({"spectrum"}).exit_code == cli::kExitUsage);
    CHECK(run_cli({"spectrum", "--input", fixture("diag21.mtx"), "--tol", "-1"}).exit_code ==
          cli::kExitUsage);
    CHECK(run_cli({"spectrum", "--input", fixture("diag21.mtx"), "--k", "2"}).exit_code ==
          cli::kExitUsage);
    const auto r = run_cli({"pencil", "--input"});
    CHECK(r.exit_code == cli::kExitUsage);
    CHECK(Json::parse(r.out)["error"]["code"] == "Usage");
    CHECK(run_cli({"--help"}).exit_code == cli::kExitOk);
}

TEST_CASE("human output") {
    const auto r = run_cli({"spectrum", "--input", fixture("diag21.mtx"), "--human"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("outputs.d") != std::string::npos);
    CHECK(r.out.front() != '{');
}
