#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "coopmsr/coop_repair.hpp"
#include "coopmsr/msrcode.hpp"

namespace coopmsr {

/// Practical cap on sub-packetization when whole codewords are materialized.
/// Overridable (CLI honors COOP_MSR_MAX_ELL).
inline constexpr std::int64_t kDefaultMaxMaterializeEll = std::int64_t{1} << 21;

/// One node's stored data: header identifying the code plus the payload,
/// stripes * ell field elements.
struct Shard {
    int node = 0;
    int n = 0, k = 0, m = 0;
    std::uint64_t prime = 0;
    std::vector<std::uint64_t> lambda, gamma;
    std::uint64_t tau = 0;
    std::uint64_t payload_bytes = 0;
    Vec payload;
};

void write_shard(const std::filesystem::path& path, const Shard& shard);
Shard read_shard(const std::filesystem::path& path);
std::filesystem::path shard_path(const std::filesystem::path& dir, int node);

CodeParams params_from_shard(const Shard& shard);
bool shard_matches(const Shard& shard, const CodeParams& p);
std::int64_t stripe_count_for_bytes(const CodeParams& p, std::uint64_t payload_bytes);

struct Message {
    std::int64_t stripe = 0;
    int round = 0;        // 0 for downloads
    int from = 0, to = 0;
    enum class Kind { download, collab } kind = Kind::download;
    std::int64_t symbols = 0;

    std::string to_json() const;
};

/// In-memory simulated cluster: n nodes holding striped shards, failure
/// injection, and cooperative repair executed as explicit messages.
class Cluster {
public:
    static Cluster ingest(const CodeParams& p, const std::vector<std::byte>& bytes,
                          std::int64_t max_ell = kDefaultMaxMaterializeEll);

    const CodeParams& params() const { return params_; }
    std::int64_t stripes() const { return stripes_; }
    std::uint64_t payload_bytes() const { return payload_bytes_; }

    bool failed(int node) const;
    std::vector<int> failed_nodes() const;

    /// Payload of a live node (stripes * ell elements).
    const Vec& node_payload(int node) const;

    void fail(int i1, int i2);
    void fail_one(int node);

    /// Repairs the exactly-two failed nodes stripe by stripe; returns one
    /// transcript per stripe and appends every message to the ledger.
    std::vector<RepairTranscript> repair(Exec exec = Exec::parallel);

    /// Reassembles the original bytes from any >= k live nodes (or the given
    /// subset). Uses the erasure-decode path, not repair.
    std::vector<std::byte> reconstruct(const std::optional<std::vector<int>>& from = {},
                                       Exec exec = Exec::parallel) const;

    bool syndromes_clean(Exec exec = Exec::parallel) const;

    const std::vector<Message>& ledger() const { return ledger_; }
    std::string ledger_json_lines() const;

    void write_shards(const std::filesystem::path& dir) const;
    static Cluster load_shards(const std::filesystem::path& dir,
                               std::int64_t max_ell = kDefaultMaxMaterializeEll);

private:
    explicit Cluster(CodeParams p);
    void check_node(int node) const;

    CodeParams params_;
    std::int64_t stripes_ = 0;
    std::uint64_t payload_bytes_ = 0;
    std::vector<Vec> payloads_;      // node-1 -> stripes*ell elements
    std::vector<bool> failed_;
    std::vector<Message> ledger_;
};

/// Byte <-> symbol embedding used by ingest/reconstruct (one byte per field
/// element; requires p > 256).
Vec bytes_to_symbols(const Field& f, const std::byte* data, std::size_t len, std::size_t count);

}  // namespace coopmsr
