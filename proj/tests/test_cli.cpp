#include "coopmsr/cli.hpp"

#include "coopmsr/cluster.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

int run_cli(std::initializer_list<const char*> args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
    std::vector<const char*> argv{"coopmsr"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = coopmsr::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

std::filesystem::path fresh_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("coopmsr_cli_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("params emits the code profile as JSON") {
    std::string out;
    CHECK(run_cli({"params", "--n", "7", "--k", "4"}, &out) == coopmsr::cli::kExitOk);
    const auto j = nlohmann::json::parse(out);
    CHECK(j["m"] == 17);
    CHECK(j["ell"] == 129140163);
    CHECK(j["bounds"]["gamma"] == 516560652);
    CHECK(j["pi"].size() == 21);

    std::string out2;
    CHECK(run_cli({"params", "--n", "4", "--k", "2"}, &out2) == coopmsr::cli::kExitOk);
    const auto j2 = nlohmann::json::parse(out2);
    CHECK(j2["m"] == 6);
    CHECK(j2["ell"] == 64);
    CHECK(j2["bounds"]["gamma"] == 192);
}

TEST_CASE("usage and guard errors use distinct exit codes") {
    CHECK(run_cli({"params", "--n", "7"}) == coopmsr::cli::kExitUsage);      // missing --k
    CHECK(run_cli({"nonsense"}) == coopmsr::cli::kExitUsage);
    CHECK(run_cli({"params", "--n", "4", "--k", "3"}) == coopmsr::cli::kExitUsage);
    CHECK(run_cli({"verify-mds", "--n", "6", "--k", "3"}) == coopmsr::cli::kExitGuard);
    CHECK(run_cli({"encode", "--n", "4", "--k", "2", "--input", "/nonexistent/x", "--out",
                   "/tmp/coopmsr_cli_never"}) == coopmsr::cli::kExitIo);
    CHECK(run_cli({"decode", "--shards", "/nonexistent/dir", "--out", "/tmp/x"}) ==
          coopmsr::cli::kExitIo);
}

TEST_CASE("verify-mds reports the verdict") {
    std::string out;
    CHECK(run_cli({"verify-mds", "--n", "4", "--k", "2"}, &out) == coopmsr::cli::kExitOk);
    const auto j = nlohmann::json::parse(out);
    CHECK(j["ok"] == true);
    CHECK(j["subsets_checked"] == 6);

    SUBCASE("COOP_MSR_MAX_ELL lifts the guard") {
        setenv("COOP_MSR_MAX_ELL", "200000", 1);
        std::string out2;
        CHECK(run_cli({"verify-mds", "--n", "6", "--k", "3"}, &out2) == coopmsr::cli::kExitOk);
        unsetenv("COOP_MSR_MAX_ELL");
        const auto j2 = nlohmann::json::parse(out2);
        CHECK(j2["ok"] == true);
        CHECK(j2["subsets_checked"] == 20);
    }
}

TEST_CASE("encode, repair, decode round trip") {
    const auto dir = fresh_dir("roundtrip");
    const auto input = dir / "input.bin";
    const auto output = dir / "output.bin";
    const auto shards = dir / "shards";

    std::vector<char> payload(5000);
    std::mt19937_64 rng(99);
    for (auto& c : payload) c = static_cast<char>(rng() & 0xff);
    std::ofstream(input, std::ios::binary).write(payload.data(), static_cast<std::streamsize>(payload.size()));

    CHECK(run_cli({"encode", "--n", "4", "--k", "2", "--input", input.c_str(), "--out",
                   shards.c_str()}) == coopmsr::cli::kExitOk);
    for (int j = 1; j <= 4; ++j) CHECK(std::filesystem::exists(coopmsr::shard_path(shards, j)));

    // Lose two shards, repair them back.
    std::filesystem::remove(coopmsr::shard_path(shards, 1));
    std::filesystem::remove(coopmsr::shard_path(shards, 4));
    std::string report;
    CHECK(run_cli({"repair", "--shards", shards.c_str(), "--fail", "1,4"}, &report) ==
          coopmsr::cli::kExitOk);
    const auto rj = nlohmann::json::parse(report);
    CHECK(rj["optimal"] == true);
    CHECK(rj["restored"] == true);
    // 5000 bytes at k*ell = 128 bytes per stripe -> 40 stripes of gamma = 192.
    CHECK(rj["stripes"] == 40);
    CHECK(rj["totals"]["gamma"] == 192 * 40);
    CHECK(std::filesystem::exists(coopmsr::shard_path(shards, 1)));

    CHECK(run_cli({"decode", "--shards", shards.c_str(), "--out", output.c_str()}) ==
          coopmsr::cli::kExitOk);
    std::ifstream is(output, std::ios::binary);
    std::vector<char> back((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    CHECK(back == payload);

    SUBCASE("decode from an explicit subset") {
        CHECK(run_cli({"decode", "--shards", shards.c_str(), "--out", output.c_str(), "--from",
                       "2,3"}) == coopmsr::cli::kExitOk);
        std::ifstream is2(output, std::ios::binary);
        std::vector<char> back2((std::istreambuf_iterator<char>(is2)),
                                std::istreambuf_iterator<char>());
        CHECK(back2 == payload);
    }

    SUBCASE("repair with a report file") {
        const auto report_path = dir / "report.json";
        CHECK(run_cli({"repair", "--shards", shards.c_str(), "--fail", "2,3", "--report",
                       report_path.c_str()}) == coopmsr::cli::kExitOk);
        std::ifstream rs(report_path);
        REQUIRE(rs.good());
        const auto j = nlohmann::json::parse(rs);
        CHECK(j["optimal"] == true);
        CHECK(j["transcripts"].size() == 40);
        CHECK(j["transcripts"][0]["gamma"] == 192);  // per stripe, at (4,2)
        CHECK(j["transcripts"][0]["gamma_a"] == 128);
    }

    std::filesystem::remove_all(dir);
}

TEST_CASE("selftest subcommand") {
    std::string out;
    CHECK(run_cli({"selftest", "--blocks", "--seed", "3"}, &out) == coopmsr::cli::kExitOk);
    CHECK(out.find("selftest passed") != std::string::npos);
}
