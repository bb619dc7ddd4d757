#include "coopmsr/cluster.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <string>

#include "json.hpp"

namespace coopmsr {

namespace {

constexpr char kMagic[8] = {'C', 'M', 'S', 'R', '1', 0, 0, 0};

void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is, const std::string& what) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw IoError("truncated shard file while reading " + what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

}  // namespace

std::filesystem::path shard_path(const std::filesystem::path& dir, int node) {
    return dir / ("node_" + std::to_string(node) + ".cmsr");
}

void write_shard(const std::filesystem::path& path, const Shard& shard) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os.write(kMagic, sizeof(kMagic));
    put_u64(os, static_cast<std::uint64_t>(shard.n));
    put_u64(os, static_cast<std::uint64_t>(shard.k));
    put_u64(os, shard.prime);
    put_u64(os, static_cast<std::uint64_t>(shard.m));
    put_u64(os, static_cast<std::uint64_t>(shard.node));
    for (auto v : shard.lambda) put_u64(os, v);
    for (auto v : shard.gamma) put_u64(os, v);
    put_u64(os, shard.tau);
    put_u64(os, shard.payload_bytes);
    for (const auto& e : shard.payload) put_u64(os, e.value);
    if (!os) throw IoError("write failed for " + path.string());
}

Shard read_shard(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw IoError("bad shard magic in " + path.string());

    Shard s;
    s.n = static_cast<int>(get_u64(is, "n"));
    s.k = static_cast<int>(get_u64(is, "k"));
    s.prime = get_u64(is, "p");
    s.m = static_cast<int>(get_u64(is, "m"));
    s.node = static_cast<int>(get_u64(is, "node"));
    if (s.n < 3 || s.k < 1 || s.k > s.n - 2 || s.node < 1 || s.node > s.n)
        throw IoError("implausible shard header in " + path.string());
    const int r = s.n - s.k;
    for (int j = 0; j < s.n; ++j) s.lambda.push_back(get_u64(is, "lambda"));
    for (int w = 0; w < r - 2; ++w) s.gamma.push_back(get_u64(is, "gamma"));
    s.tau = get_u64(is, "tau");
    s.payload_bytes = get_u64(is, "payload length");

    const CodeParams p = params_from_shard(s);
    const std::int64_t stripes = stripe_count_for_bytes(p, s.payload_bytes);
    const std::int64_t count = stripes * p.ell;
    s.payload.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        const std::uint64_t v = get_u64(is, "payload");
        if (v >= s.prime) throw IoError("payload symbol out of field range in " + path.string());
        s.payload.push_back(p.field.elt(v));
    }
    if (is.peek() != std::ifstream::traits_type::eof())
        throw IoError("trailing bytes after the payload in " + path.string());
    return s;
}

CodeParams params_from_shard(const Shard& shard) {
    PointOverrides over;
    over.lambda = shard.lambda;
    over.gamma = shard.gamma;
    over.tau = shard.tau;
    CodeParams p = make_params(shard.n, shard.k, shard.prime, over);
    if (p.m != shard.m)
        throw IoError("shard header m does not match the code parameters");
    return p;
}

bool shard_matches(const Shard& shard, const CodeParams& p) {
    if (shard.n != p.n || shard.k != p.k || shard.prime != p.field.modulus() || shard.m != p.m)
        return false;
    if (shard.lambda.size() != p.lambda.size() || shard.gamma.size() != p.gamma.size()) return false;
    for (std::size_t i = 0; i < p.lambda.size(); ++i)
        if (shard.lambda[i] != p.lambda[i].value) return false;
    for (std::size_t i = 0; i < p.gamma.size(); ++i)
        if (shard.gamma[i] != p.gamma[i].value) return false;
    return shard.tau == p.tau.value;
}

std::int64_t stripe_count_for_bytes(const CodeParams& p, std::uint64_t payload_bytes) {
    const std::uint64_t per_stripe = static_cast<std::uint64_t>(p.k) * static_cast<std::uint64_t>(p.ell);
    if (payload_bytes == 0) return 1;
    return static_cast<std::int64_t>((payload_bytes + per_stripe - 1) / per_stripe);
}

Vec bytes_to_symbols(const Field& f, const std::byte* data, std::size_t len, std::size_t count) {
    Vec out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(i < len ? f.elt(static_cast<std::uint64_t>(std::to_integer<unsigned>(data[i])))
                              : f.zero());
    return out;
}

std::string Message::to_json() const {
    nlohmann::json j;
    j["stripe"] = stripe;
    j["round"] = round;
    j["from"] = from;
    j["to"] = to;
    j["kind"] = kind == Kind::download ? "download" : "collab";
    j["symbols"] = symbols;
    return j.dump();
}

Cluster::Cluster(CodeParams p)
    : params_(std::move(p)),
      payloads_(static_cast<std::size_t>(params_.n)),
      failed_(static_cast<std::size_t>(params_.n), false) {}

void Cluster::check_node(int node) const {
    if (node < 1 || node > params_.n)
        throw std::invalid_argument("node " + std::to_string(node) + " out of range");
}

Cluster Cluster::ingest(const CodeParams& p, const std::vector<std::byte>& bytes,
                        std::int64_t max_ell) {
    if (p.field.modulus() <= 256)
        throw std::invalid_argument("byte ingestion needs p > 256");
    if (p.ell > max_ell)
        throw GuardLimitError("ell = " + std::to_string(p.ell) +
                              " exceeds the materialization guard " + std::to_string(max_ell));

    Cluster c(p);
    c.payload_bytes_ = bytes.size();
    c.stripes_ = stripe_count_for_bytes(p, c.payload_bytes_);

    for (auto& payload : c.payloads_)
        payload.reserve(static_cast<std::size_t>(c.stripes_ * p.ell));

    const std::size_t per_node = static_cast<std::size_t>(p.ell);
    for (std::int64_t s = 0; s < c.stripes_; ++s) {
        std::vector<Vec> data;
        data.reserve(static_cast<std::size_t>(p.k));
        for (int j = 0; j < p.k; ++j) {
            const std::size_t off =
                (static_cast<std::size_t>(s) * static_cast<std::size_t>(p.k) +
                 static_cast<std::size_t>(j)) *
                per_node;
            const std::size_t len = off < bytes.size() ? std::min(per_node, bytes.size() - off) : 0;
            data.push_back(bytes_to_symbols(p.field, bytes.data() + off, len, per_node));
        }
        const Codeword cw = encode(p, data);
        for (int j = 0; j < p.n; ++j) {
            const auto& v = cw.nodes[static_cast<std::size_t>(j)];
            c.payloads_[static_cast<std::size_t>(j)].insert(
                c.payloads_[static_cast<std::size_t>(j)].end(), v.begin(), v.end());
        }
    }
    return c;
}

bool Cluster::failed(int node) const {
    check_node(node);
    return failed_[static_cast<std::size_t>(node - 1)];
}

std::vector<int> Cluster::failed_nodes() const {
    std::vector<int> out;
    for (int j = 1; j <= params_.n; ++j)
        if (failed_[static_cast<std::size_t>(j - 1)]) out.push_back(j);
    return out;
}

const Vec& Cluster::node_payload(int node) const {
    check_node(node);
    if (failed_[static_cast<std::size_t>(node - 1)])
        throw std::invalid_argument("node " + std::to_string(node) + " failed");
    return payloads_[static_cast<std::size_t>(node - 1)];
}

void Cluster::fail_one(int node) {
    check_node(node);
    if (failed(node)) throw std::invalid_argument("node already failed");
    if (static_cast<int>(failed_nodes().size()) + 1 > params_.r)
        throw GuardLimitError("another failure would exceed the decodability radius");
    failed_[static_cast<std::size_t>(node - 1)] = true;
    payloads_[static_cast<std::size_t>(node - 1)].clear();
}

void Cluster::fail(int i1, int i2) {
    check_node(i1);
    check_node(i2);
    if (i1 == i2) throw std::invalid_argument("cannot fail the same node twice");
    if (failed(i1) || failed(i2)) throw std::invalid_argument("node already failed");
    fail_one(i1);
    fail_one(i2);
}

std::vector<RepairTranscript> Cluster::repair(Exec exec) {
    const auto down = failed_nodes();
    if (down.size() != 2)
        throw std::invalid_argument("repair needs exactly 2 failed nodes, have " +
                                    std::to_string(down.size()));
    const int i1 = down[0], i2 = down[1];
    const auto& p = params_;
    const RepairPlan plan = make_repair_plan(p, i1, i2);
    const std::int64_t per_axis = p.ell / p.r;

    std::vector<Vec> recovered1, recovered2;
    std::vector<RepairTranscript> transcripts;

    for (std::int64_t s = 0; s < stripes_; ++s) {
        std::vector<HelperRead> reads;
        for (int node = 1; node <= p.n; ++node) {
            if (node == i1 || node == i2) continue;
            const auto& payload = payloads_[static_cast<std::size_t>(node - 1)];
            Vec slice(payload.begin() + s * p.ell, payload.begin() + (s + 1) * p.ell);
            reads.push_back(helper_read(p, slice, node, plan));
            ledger_.push_back({s, 0, node, i1, Message::Kind::download, per_axis});
            ledger_.push_back({s, 0, node, i2, Message::Kind::download, per_axis});
        }
        RepairResult res = plan.intra ? repair_intra(p, plan, reads, exec)
                                      : repair_cross(p, plan, reads, exec);
        for (const auto& round : res.transcript.collab_rounds) {
            if (round.from_i1 > 0)
                ledger_.push_back({s, round.round, i1, i2, Message::Kind::collab, round.from_i1});
            if (round.from_i2 > 0)
                ledger_.push_back({s, round.round, i2, i1, Message::Kind::collab, round.from_i2});
        }
        recovered1.push_back(std::move(res.node1));
        recovered2.push_back(std::move(res.node2));
        transcripts.push_back(std::move(res.transcript));
    }

    auto restore = [&](int node, std::vector<Vec>& slices) {
        auto& payload = payloads_[static_cast<std::size_t>(node - 1)];
        payload.clear();
        payload.reserve(static_cast<std::size_t>(stripes_ * p.ell));
        for (auto& slice : slices) payload.insert(payload.end(), slice.begin(), slice.end());
        failed_[static_cast<std::size_t>(node - 1)] = false;
    };
    restore(i1, recovered1);
    restore(i2, recovered2);
    return transcripts;
}

std::vector<std::byte> Cluster::reconstruct(const std::optional<std::vector<int>>& from,
                                            Exec exec) const {
    std::vector<int> avail;
    if (from) {
        for (int node : *from) {
            check_node(node);
            if (failed(node)) throw std::invalid_argument("requested node is failed");
            avail.push_back(node);
        }
        std::sort(avail.begin(), avail.end());
        avail.erase(std::unique(avail.begin(), avail.end()), avail.end());
    } else {
        for (int j = 1; j <= params_.n; ++j)
            if (!failed_[static_cast<std::size_t>(j - 1)]) avail.push_back(j);
    }
    if (static_cast<int>(avail.size()) < params_.k)
        throw std::invalid_argument("need at least k shards to reconstruct");

    std::vector<int> erased;
    for (int j = 1; j <= params_.n; ++j)
        if (!std::binary_search(avail.begin(), avail.end(), j)) erased.push_back(j);

    const auto& p = params_;
    std::vector<std::byte> out;
    out.reserve(payload_bytes_);
    for (std::int64_t s = 0; s < stripes_ && out.size() < payload_bytes_; ++s) {
        Codeword cw = zero_codeword(p);
        for (int node : avail) {
            const auto& payload = payloads_[static_cast<std::size_t>(node - 1)];
            std::copy(payload.begin() + s * p.ell, payload.begin() + (s + 1) * p.ell,
                      cw.nodes[static_cast<std::size_t>(node - 1)].begin());
        }
        const Codeword full = erasure_decode(p, cw, erased, exec);
        for (int j = 0; j < p.k && out.size() < payload_bytes_; ++j)
            for (std::int64_t i = 0; i < p.ell && out.size() < payload_bytes_; ++i)
                out.push_back(static_cast<std::byte>(
                    full.nodes[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].value &
                    0xff));
    }
    return out;
}

bool Cluster::syndromes_clean(Exec exec) const {
    if (!failed_nodes().empty()) return false;
    for (std::int64_t s = 0; s < stripes_; ++s) {
        Codeword cw = zero_codeword(params_);
        for (int j = 0; j < params_.n; ++j) {
            const auto& payload = payloads_[static_cast<std::size_t>(j)];
            std::copy(payload.begin() + s * params_.ell, payload.begin() + (s + 1) * params_.ell,
                      cw.nodes[static_cast<std::size_t>(j)].begin());
        }
        if (!syndrome_is_zero(params_, cw, exec)) return false;
    }
    return true;
}

std::string Cluster::ledger_json_lines() const {
    std::string out;
    for (const auto& msg : ledger_) {
        out += msg.to_json();
        out += '\n';
    }
    return out;
}

void Cluster::write_shards(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    for (int node = 1; node <= params_.n; ++node) {
        if (failed(node)) continue;
        Shard s;
        s.node = node;
        s.n = params_.n;
        s.k = params_.k;
        s.prime = params_.field.modulus();
        s.m = params_.m;
        for (const auto& e : params_.lambda) s.lambda.push_back(e.value);
        for (const auto& e : params_.gamma) s.gamma.push_back(e.value);
        s.tau = params_.tau.value;
        s.payload_bytes = payload_bytes_;
        s.payload = payloads_[static_cast<std::size_t>(node - 1)];
        write_shard(shard_path(dir, node), s);
    }
}

Cluster Cluster::load_shards(const std::filesystem::path& dir, std::int64_t max_ell) {
    if (!std::filesystem::is_directory(dir))
        throw IoError("shard directory " + dir.string() + " does not exist");

    std::vector<Shard> shards;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name.rfind("node_", 0) != 0 || entry.path().extension() != ".cmsr") continue;
        shards.push_back(read_shard(entry.path()));
    }
    if (shards.empty()) throw IoError("no shards found in " + dir.string());

    const CodeParams p = params_from_shard(shards.front());
    if (p.ell > max_ell)
        throw GuardLimitError("ell = " + std::to_string(p.ell) +
                              " exceeds the materialization guard " + std::to_string(max_ell));

    Cluster c(p);
    c.payload_bytes_ = shards.front().payload_bytes;
    c.stripes_ = stripe_count_for_bytes(p, c.payload_bytes_);
    c.failed_.assign(static_cast<std::size_t>(p.n), true);

    int live = 0;
    for (auto& s : shards) {
        if (!shard_matches(s, p)) throw IoError("shard headers disagree in " + dir.string());
        if (s.payload_bytes != c.payload_bytes_)
            throw IoError("shard payload lengths disagree in " + dir.string());
        if (!c.failed_[static_cast<std::size_t>(s.node - 1)])
            throw IoError("duplicate shard for node " + std::to_string(s.node));
        c.payloads_[static_cast<std::size_t>(s.node - 1)] = std::move(s.payload);
        c.failed_[static_cast<std::size_t>(s.node - 1)] = false;
        ++live;
    }
    if (live < p.k) throw IoError("fewer than k shards available in " + dir.string());
    if (p.n - live > p.r) throw IoError("too many missing shards in " + dir.string());
    return c;
}

}  // namespace coopmsr
