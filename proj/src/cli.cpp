#include "coopmsr/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coopmsr/cluster.hpp"
#include "coopmsr/coop_repair.hpp"
#include "coopmsr/msrcode.hpp"
#include "coopmsr/selftest.hpp"

namespace coopmsr::cli {

namespace {

std::int64_t materialize_guard() {
    if (const char* env = std::getenv("COOP_MSR_MAX_ELL")) {
        try {
            return std::stoll(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("COOP_MSR_MAX_ELL is not an integer");
        }
    }
    return kDefaultMaxMaterializeEll;
}

std::int64_t verify_guard() {
    if (const char* env = std::getenv("COOP_MSR_MAX_ELL")) {
        try {
            return std::stoll(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("COOP_MSR_MAX_ELL is not an integer");
        }
    }
    return kVerifyMdsEllGuard;
}

std::vector<std::byte> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    std::vector<char> buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    std::vector<std::byte> out(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) out[i] = static_cast<std::byte>(buf[i]);
    return out;
}

void write_file_bytes(const std::filesystem::path& path, const std::vector<std::byte>& bytes) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
    if (!os) throw IoError("write failed for " + path.string());
}

nlohmann::json params_json(const CodeParams& p) {
    nlohmann::json j;
    j["n"] = p.n;
    j["k"] = p.k;
    j["r"] = p.r;
    j["m"] = p.m;
    j["ell"] = p.ell;
    j["p"] = p.field.modulus();
    j["digest"] = p.digest();  // fingerprint of the full point configuration
    const auto [bg, ba] = repair_bounds(p);
    j["bounds"] = {{"gamma", bg}, {"gamma_a", ba}};
    auto pi = nlohmann::json::array();
    for (int j1 = 1; j1 <= p.n; ++j1)
        for (int j2 = j1 + 1; j2 <= p.n; ++j2)
            pi.push_back({{"pair", {j1, j2}}, {"value", p.pairs.pi(j1, j2)}});
    j["pi"] = pi;
    auto omega = nlohmann::json::array();
    for (int node = 1; node <= p.n; ++node)
        omega.push_back({{"node", node},
                         {"omega0", p.pairs.omega0(node)},
                         {"omega1", p.pairs.omega1(node)}});
    j["omega"] = omega;
    return j;
}

struct Options {
    int n = 0, k = 0;
    std::uint64_t prime = 65537;
    std::string input, output, shards, report;
    std::string fail_pair, from_list;
    bool blocks_only = false;
    std::string grid = "small";
    std::uint64_t seed = 1;
};

std::pair<int, int> parse_pair(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("expected i1,i2");
    return {std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1))};
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto comma = s.find(',', pos);
        const auto end = comma == std::string::npos ? s.size() : comma;
        out.push_back(std::stoi(s.substr(pos, end - pos)));
        pos = end + 1;
    }
    return out;
}

int cmd_params(const Options& o, std::ostream& out, std::ostream& err) {
    const CodeParams p = make_params(o.n, o.k, o.prime);
    out << params_json(p).dump(2) << '\n';
    err << "(" << p.n << "," << p.k << ") code over GF(" << p.field.modulus() << "): r=" << p.r
        << " m=" << p.m << " ell=" << p.ell << '\n';
    return kExitOk;
}

int cmd_encode(const Options& o, std::ostream& out, std::ostream& err) {
    const CodeParams p = make_params(o.n, o.k, o.prime);
    const auto bytes = read_file_bytes(o.input);
    Cluster c = Cluster::ingest(p, bytes, materialize_guard());
    c.write_shards(o.shards);
    nlohmann::json j;
    j["n"] = p.n;
    j["k"] = p.k;
    j["stripes"] = c.stripes();
    j["payload_bytes"] = c.payload_bytes();
    j["shard_dir"] = o.shards;
    out << j.dump(2) << '\n';
    err << "wrote " << p.n << " shards (" << c.stripes() << " stripes)\n";
    return kExitOk;
}

int cmd_decode(const Options& o, std::ostream& out, std::ostream& err) {
    Cluster c = Cluster::load_shards(o.shards, materialize_guard());
    std::optional<std::vector<int>> from;
    if (!o.from_list.empty()) from = parse_int_list(o.from_list);
    const auto bytes = c.reconstruct(from);
    write_file_bytes(o.output, bytes);
    nlohmann::json j;
    j["bytes"] = bytes.size();
    j["output"] = o.output;
    out << j.dump(2) << '\n';
    err << "reconstructed " << bytes.size() << " bytes\n";
    return kExitOk;
}

int cmd_repair(const Options& o, std::ostream& out, std::ostream& err) {
    auto [i1, i2] = parse_pair(o.fail_pair);
    if (i1 > i2) std::swap(i1, i2);
    if (i1 == i2) throw std::invalid_argument("--fail needs two distinct nodes");

    // Keep any pre-failure contents of the two target shards for a
    // byte-equality verdict after repair.
    std::optional<Vec> before1, before2;
    const auto path1 = shard_path(o.shards, i1);
    const auto path2 = shard_path(o.shards, i2);
    if (std::filesystem::exists(path1)) before1 = read_shard(path1).payload;
    if (std::filesystem::exists(path2)) before2 = read_shard(path2).payload;

    Cluster c = Cluster::load_shards(o.shards, materialize_guard());
    if (!c.failed(i1)) c.fail_one(i1);  // simulate the failure if still present
    if (!c.failed(i2)) c.fail_one(i2);
    if (c.failed_nodes() != std::vector<int>{i1, i2})
        throw std::invalid_argument("shard directory has failures other than the requested pair");

    const auto transcripts = c.repair();

    bool optimal = true;
    nlohmann::json per_stripe = nlohmann::json::array();
    std::int64_t total_gamma = 0, total_access = 0;
    for (const auto& t : transcripts) {
        const auto verdict = check_optimal(t, c.params());
        optimal = optimal && verdict.ok();
        per_stripe.push_back(nlohmann::json::parse(t.to_json()));
        total_gamma += t.gamma();
        total_access += t.gamma_access();
    }

    bool restored = c.syndromes_clean();
    if (before1 && c.node_payload(i1) != *before1) restored = false;
    if (before2 && c.node_payload(i2) != *before2) restored = false;

    c.write_shards(o.shards);

    nlohmann::json j;
    j["pair"] = {i1, i2};
    j["stripes"] = c.stripes();
    j["transcripts"] = per_stripe;
    j["totals"] = {{"gamma", total_gamma}, {"gamma_a", total_access}};
    j["optimal"] = optimal;
    j["restored"] = restored;
    const std::string text = j.dump(2);
    out << text << '\n';
    if (!o.report.empty()) {
        std::ofstream rs(o.report, std::ios::trunc);
        if (!rs) throw IoError("cannot open report file " + o.report);
        rs << text << '\n';
    }
    err << "repair of {" << i1 << "," << i2 << "}: " << (optimal && restored ? "ok" : "FAILED")
        << '\n';
    return optimal && restored ? kExitOk : kExitFailure;
}

int cmd_verify_mds(const Options& o, std::ostream& out, std::ostream& err) {
    const CodeParams p = make_params(o.n, o.k, o.prime);
    const auto verdict = verify_mds(p, verify_guard());
    nlohmann::json j;
    j["ok"] = verdict.ok;
    j["subsets_checked"] = verdict.subsets_checked;
    if (!verdict.ok) j["failing_subset"] = verdict.failing_subset;
    out << j.dump(2) << '\n';
    err << "MDS check: " << (verdict.ok ? "ok" : "FAILED") << " (" << verdict.subsets_checked
        << " subsets)\n";
    return verdict.ok ? kExitOk : kExitFailure;
}

int cmd_selftest(const Options& o, std::ostream& out) {
    SelftestOptions opt;
    opt.blocks_only = o.blocks_only;
    opt.full_grid = o.grid == "full";
    opt.seed = o.seed;
    return run_selftest(opt, out) ? kExitOk : kExitFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"optimal-access cooperative-repair erasure coding toolkit"};
    app.require_subcommand(1);
    Options o;

    auto* params = app.add_subcommand("params", "print code parameters and the pair map as JSON");
    params->add_option("--n", o.n, "total nodes")->required();
    params->add_option("--k", o.k, "data nodes")->required();
    params->add_option("--prime", o.prime, "field modulus (prime)");

    auto* enc = app.add_subcommand("encode", "encode a file into n shard files");
    enc->add_option("--n", o.n)->required();
    enc->add_option("--k", o.k)->required();
    enc->add_option("--prime", o.prime);
    enc->add_option("--input", o.input, "input file")->required();
    enc->add_option("--out", o.shards, "shard directory")->required();

    auto* dec = app.add_subcommand("decode", "reconstruct the file from >= k shards");
    dec->add_option("--shards", o.shards, "shard directory")->required();
    dec->add_option("--out", o.output, "output file")->required();
    dec->add_option("--from", o.from_list, "comma-separated node subset to read from");

    auto* rep = app.add_subcommand("repair", "cooperatively repair a failed pair of shards");
    rep->add_option("--shards", o.shards, "shard directory")->required();
    rep->add_option("--fail", o.fail_pair, "failed pair i1,i2")->required();
    rep->add_option("--report", o.report, "write the transcript JSON to this file");

    auto* ver = app.add_subcommand("verify-mds", "exhaustive MDS property check");
    ver->add_option("--n", o.n)->required();
    ver->add_option("--k", o.k)->required();
    ver->add_option("--prime", o.prime);

    auto* self = app.add_subcommand("selftest", "run the built-in verification suites");
    self->add_flag("--blocks", o.blocks_only, "building-block suite only");
    self->add_option("--grid", o.grid, "small|full")->check(CLI::IsMember({"small", "full"}));
    self->add_option("--seed", o.seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (params->parsed()) return cmd_params(o, out, err);
        if (enc->parsed()) return cmd_encode(o, out, err);
        if (dec->parsed()) return cmd_decode(o, out, err);
        if (rep->parsed()) return cmd_repair(o, out, err);
        if (ver->parsed()) return cmd_verify_mds(o, out, err);
        if (self->parsed()) return cmd_selftest(o, out);
        err << "no subcommand\n";
        return kExitUsage;
    } catch (const GuardLimitError& e) {
        err << "guard: " << e.what() << '\n';
        return kExitGuard;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "invalid arguments: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace coopmsr::cli
