#include "coopmsr/coop_repair.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "json.hpp"

namespace coopmsr {

namespace {

constexpr int kMaxDigits = 64;

}  // namespace

RepairPlan make_repair_plan(const CodeParams& p, int i1, int i2) {
    if (i1 < 1 || i2 < 1 || i1 > p.n || i2 > p.n)
        throw std::invalid_argument("failed node out of range");
    if (i1 >= i2) throw std::invalid_argument("failed pair must be ordered: i1 < i2");

    RepairPlan plan;
    plan.i1 = i1;
    plan.i2 = i2;
    const auto cls = p.pairs.classify(i1, i2);
    plan.intra = cls.intra;
    if (cls.intra) {
        plan.u = cls.index;
        plan.v1 = p.pairs.group_slot(i1);
        plan.v2 = p.pairs.group_slot(i2);
    } else {
        plan.rho = cls.index;
    }
    return plan;
}

HelperRead helper_read(const CodeParams& p, const Vec& helper_node, int helper,
                       const RepairPlan& plan) {
    if (helper == plan.i1 || helper == plan.i2)
        throw std::invalid_argument("helper is a failed node");
    if (helper < 1 || helper > p.n) throw std::invalid_argument("helper out of range");
    if (helper_node.size() != static_cast<std::size_t>(p.ell))
        throw std::invalid_argument("helper data has wrong length");

    HelperRead out;
    out.helper = helper;
    const AxisSet a1 = p.index.axis_set(plan.row_digit(), plan.side_value(0));
    const AxisSet a2 = p.index.axis_set(plan.row_digit(), plan.side_value(1));
    out.side1.reserve(static_cast<std::size_t>(a1.size()));
    out.side2.reserve(static_cast<std::size_t>(a2.size()));
    for (std::int64_t i = 0; i < a1.size(); ++i)
        out.side1.push_back(helper_node[static_cast<std::size_t>(a1.at(i))]);
    for (std::int64_t i = 0; i < a2.size(); ++i)
        out.side2.push_back(helper_node[static_cast<std::size_t>(a2.at(i))]);
    return out;
}

std::pair<std::int64_t, std::int64_t> repair_bounds(const CodeParams& p) {
    const std::int64_t per_axis = p.ell / p.r;
    return {2 * static_cast<std::int64_t>(p.n - 1) * per_axis,
            2 * static_cast<std::int64_t>(p.n - 2) * per_axis};
}

std::int64_t RepairTranscript::gamma_access() const {
    return std::accumulate(per_helper_access.begin(), per_helper_access.end(), std::int64_t{0});
}

std::string RepairTranscript::to_json() const {
    nlohmann::json j;
    j["pair"] = {i1, i2};
    j["case"] = intra ? "intra-group" : "cross-group";
    j["class_index"] = class_index;
    j["per_helper_access"] = nlohmann::json::array();
    for (std::size_t h = 0; h < helpers.size(); ++h) {
        nlohmann::json e;
        e["helper"] = helpers[h];
        e["access"] = per_helper_access[h];
        if (!per_helper_coords.empty()) e["coords"] = per_helper_coords[h];
        j["per_helper_access"].push_back(e);
    }
    j["downloaded"] = downloaded;
    j["collaborated"] = collaborated;
    j["gamma"] = gamma();
    j["gamma_a"] = gamma_access();
    j["bound_gamma"] = bound_gamma;
    j["bound_gamma_a"] = bound_gamma_access;
    j["rounds"] = rounds;
    j["solver_passes"] = solver_passes;
    return j.dump();
}

OptimalityVerdict check_optimal(const RepairTranscript& t, const CodeParams& p) {
    OptimalityVerdict v;
    const auto [bg, ba] = repair_bounds(p);
    v.bound_gamma = bg;
    v.bound_gamma_access = ba;
    v.gamma = t.gamma();
    v.gamma_access = t.gamma_access();
    v.gamma_ok = v.gamma == bg;
    v.access_ok = v.gamma_access == ba;
    v.verbatim_ok = true;
    const std::int64_t per_helper = 2 * (p.ell / p.r);
    for (std::size_t h = 0; h < t.per_helper_access.size(); ++h)
        if (t.per_helper_access[h] != per_helper) v.verbatim_ok = false;
    return v;
}

namespace {

// Shared solver state: the values each newcomer has accumulated for the two
// failed nodes. Flags gate every read, so a protocol bug that reaches for a
// symbol the newcomer cannot have yet fails loudly instead of silently
// reading garbage.
struct SideState {
    Vec own, partner;
    std::vector<std::uint8_t> know_own, know_partner;

    explicit SideState(const CodeParams& p)
        : own(static_cast<std::size_t>(p.ell), p.field.zero()),
          partner(static_cast<std::size_t>(p.ell), p.field.zero()),
          know_own(static_cast<std::size_t>(p.ell), 0),
          know_partner(static_cast<std::size_t>(p.ell), 0) {}
};

struct HelperTable {
    std::vector<int> slot_of_node;  // node -> slot or -1
    std::vector<int> node_of_slot;
    std::vector<Vec> values;  // slot -> full-ell array, defined on the two axis sets
};

HelperTable build_helper_table(const CodeParams& p, const RepairPlan& plan,
                               const std::vector<HelperRead>& helpers) {
    if (helpers.size() != static_cast<std::size_t>(p.n - 2))
        throw std::invalid_argument("repair needs data from all n-2 helpers");
    HelperTable table;
    table.slot_of_node.assign(static_cast<std::size_t>(p.n + 1), -1);

    const AxisSet a1 = p.index.axis_set(plan.row_digit(), plan.side_value(0));
    const AxisSet a2 = p.index.axis_set(plan.row_digit(), plan.side_value(1));

    for (const auto& h : helpers) {
        if (h.helper == plan.i1 || h.helper == plan.i2)
            throw std::invalid_argument("failed node listed as helper");
        if (table.slot_of_node[static_cast<std::size_t>(h.helper)] != -1)
            throw std::invalid_argument("duplicate helper");
        if (h.side1.size() != static_cast<std::size_t>(a1.size()) ||
            h.side2.size() != static_cast<std::size_t>(a2.size()))
            throw std::invalid_argument("helper read has wrong shape");
        table.slot_of_node[static_cast<std::size_t>(h.helper)] =
            static_cast<int>(table.values.size());
        table.node_of_slot.push_back(h.helper);
        Vec full(static_cast<std::size_t>(p.ell), p.field.zero());
        for (std::int64_t i = 0; i < a1.size(); ++i)
            full[static_cast<std::size_t>(a1.at(i))] = h.side1[static_cast<std::size_t>(i)];
        for (std::int64_t i = 0; i < a2.size(); ++i)
            full[static_cast<std::size_t>(a2.at(i))] = h.side2[static_cast<std::size_t>(i)];
        table.values.push_back(std::move(full));
    }
    return table;
}

RepairTranscript start_transcript(const CodeParams& p, const RepairPlan& plan,
                                  const HelperTable& table) {
    RepairTranscript t;
    t.i1 = plan.i1;
    t.i2 = plan.i2;
    t.intra = plan.intra;
    t.class_index = plan.intra ? plan.u : plan.rho;
    const std::int64_t per_axis = p.ell / p.r;
    t.helpers = table.node_of_slot;
    t.per_helper_access.assign(t.helpers.size(), 2 * per_axis);
    t.downloaded = static_cast<std::int64_t>(t.helpers.size()) * 2 * per_axis;
    if (p.ell <= kAccessLogMaxEll) {
        const AxisSet a1 = p.index.axis_set(plan.row_digit(), plan.side_value(0));
        const AxisSet a2 = p.index.axis_set(plan.row_digit(), plan.side_value(1));
        std::vector<std::int64_t> coords;
        coords.reserve(static_cast<std::size_t>(2 * per_axis));
        std::int64_t x = 0, y = 0;
        while (x < a1.size() || y < a2.size()) {
            if (y == a2.size() || (x < a1.size() && a1.at(x) < a2.at(y)))
                coords.push_back(a1.at(x++));
            else
                coords.push_back(a2.at(y++));
        }
        t.per_helper_coords.assign(t.helpers.size(), coords);
    }
    const auto [bg, ba] = repair_bounds(p);
    t.bound_gamma = bg;
    t.bound_gamma_access = ba;
    return t;
}

// One protocol row: r unknown columns keyed by (node, coord); column
// bundle_col, if any, stands for primary + weight * secondary. Every other
// entry must resolve through lookup.
struct RowUnknowns {
    std::array<std::pair<int, std::int64_t>, 8> keys;  // (node, coord) per column
    int count = 0;
    int bundle_col = -1;
    std::pair<int, std::int64_t> bundle_secondary{0, 0};
    FieldElement bundle_weight;
};

template <class Lookup>
Vec solve_protocol_row(const CodeParams& p, std::int64_t a, const std::uint8_t* digits,
                       const RowUnknowns& unknowns, Lookup&& lookup, SparseRow& scratch) {
    const int r = p.r;
    Matrix mat = Matrix::zero(static_cast<std::size_t>(r), static_cast<std::size_t>(r), p.field);
    Vec rhs(static_cast<std::size_t>(r), p.field.zero());

    for (int t = 1; t <= r; ++t) {
        scratch.clear();
        parity_row_into(p, t, a, digits, scratch);
        FieldElement acc = p.field.zero();
        FieldElement primary_coeff = p.field.zero();
        FieldElement secondary_coeff = p.field.zero();
        bool saw_primary = false, saw_secondary = false;

        for (const auto& e : scratch) {
            int col = -1;
            for (int c = 0; c < unknowns.count; ++c) {
                if (unknowns.keys[static_cast<std::size_t>(c)].first == e.node &&
                    unknowns.keys[static_cast<std::size_t>(c)].second == e.coord) {
                    col = c;
                    break;
                }
            }
            if (col >= 0) {
                mat.at(static_cast<std::size_t>(t - 1), static_cast<std::size_t>(col)) += e.coeff;
                if (col == unknowns.bundle_col) {
                    primary_coeff = e.coeff;
                    saw_primary = true;
                }
                continue;
            }
            if (unknowns.bundle_col >= 0 && e.node == unknowns.bundle_secondary.first &&
                e.coord == unknowns.bundle_secondary.second) {
                secondary_coeff = e.coeff;
                saw_secondary = true;
                continue;
            }
            acc += e.coeff * lookup(e.node, e.coord);
        }

        if (unknowns.bundle_col >= 0) {
            if (!saw_primary || !saw_secondary)
                throw InternalError("bundled unknown missing from parity row");
            if (secondary_coeff != primary_coeff * unknowns.bundle_weight)
                throw InternalError("bundle coefficients do not match the protocol");
        }
        rhs[static_cast<std::size_t>(t - 1)] = -acc;
    }
    return solve_dense(mat, rhs);
}

std::vector<std::vector<std::int64_t>> bucket_axis_by_shell(const CodeParams& p, const AxisSet& axis) {
    const int shells = p.m - p.pairs.groups() + 1;
    std::vector<std::vector<std::int64_t>> buckets(static_cast<std::size_t>(shells));
    for (std::int64_t i = 0; i < axis.size(); ++i) {
        const std::int64_t a = axis.at(i);
        buckets[static_cast<std::size_t>(p.index.suffix_weight(a))].push_back(a);
    }
    return buckets;
}

}  // namespace

RepairResult repair_intra(const CodeParams& p, const RepairPlan& plan,
                          const std::vector<HelperRead>& helpers, Exec exec) {
    if (!plan.intra) throw std::invalid_argument("repair_intra needs an intra-group plan");
    const HelperTable table = build_helper_table(p, plan, helpers);
    const int r = p.r, u = plan.u, v1 = plan.v1, v2 = plan.v2;
    const AxisSet axis1 = p.index.axis_set(u, v1);
    const AxisSet axis2 = p.index.axis_set(u, v2);

    SideState side1(p), side2(p);  // side1: newcomer i1, side2: newcomer i2
    Vec bundle1(static_cast<std::size_t>(axis1.size()), p.field.zero());
    Vec bundle2(static_cast<std::size_t>(axis2.size()), p.field.zero());

    RepairTranscript transcript = start_transcript(p, plan, table);

    const auto buckets1 = bucket_axis_by_shell(p, axis1);
    const auto buckets2 = bucket_axis_by_shell(p, axis2);

    // Reads a symbol as seen by one newcomer: helper data on its own row set,
    // own recoveries, or partner symbols learned in earlier exchanges.
    auto make_lookup = [&](const SideState& st, int own_node, int side_value) {
        return [&, own_node, side_value](int node, std::int64_t coord) -> FieldElement {
            if (node == plan.i1 || node == plan.i2) {
                const bool mine = node == own_node;
                const auto& vals = mine ? st.own : st.partner;
                const auto& know = mine ? st.know_own : st.know_partner;
                if (!know[static_cast<std::size_t>(coord)])
                    throw InternalError("protocol referenced a not-yet-recovered symbol");
                return vals[static_cast<std::size_t>(coord)];
            }
            const int slot = table.slot_of_node[static_cast<std::size_t>(node)];
            if (slot < 0) throw InternalError("protocol referenced an unknown node");
            if (p.index.digit(coord, u) != side_value)
                throw InternalError("protocol read outside the downloaded rows");
            return table.values[static_cast<std::size_t>(slot)][static_cast<std::size_t>(coord)];
        };
    };

    const FieldElement inv_tau_minus_1 = inv(p.tau - p.field.one());
    const int shells = static_cast<int>(buckets1.size());

    for (int s = 0; s < shells; ++s) {
        const auto& rows1 = buckets1[static_cast<std::size_t>(s)];
        const auto& rows2 = buckets2[static_cast<std::size_t>(s)];

        // Solve phase. Rows within one shell only reference helper data and
        // symbols settled in earlier shells, so they run independently.
        for_each_index(exec, static_cast<std::int64_t>(rows1.size()), [&](std::int64_t i) {
            const std::int64_t a = rows1[static_cast<std::size_t>(i)];
            std::uint8_t digits[kMaxDigits];
            p.index.expand_into(a, digits);
            RowUnknowns unk;
            unk.count = r;
            for (int v = 0; v < r; ++v)
                unk.keys[static_cast<std::size_t>(v)] = {plan.i1,
                                                         p.index.substitute_known(a, u, v1, v)};
            unk.keys[static_cast<std::size_t>(v2)] = {plan.i2, a};  // bundle primary
            unk.bundle_col = v2;
            unk.bundle_secondary = {plan.i1, p.index.substitute_known(a, u, v1, v2)};
            unk.bundle_weight = p.field.one();

            SparseRow scratch;
            const Vec x = solve_protocol_row(p, a, digits, unk, make_lookup(side1, plan.i1, v1),
                                             scratch);
            for (int v = 0; v < r; ++v) {
                if (v == v2) continue;
                const std::int64_t b = p.index.substitute_known(a, u, v1, v);
                side1.own[static_cast<std::size_t>(b)] = x[static_cast<std::size_t>(v)];
                side1.know_own[static_cast<std::size_t>(b)] = 1;
            }
            bundle1[static_cast<std::size_t>(axis1.index_of(a))] = x[static_cast<std::size_t>(v2)];
        });

        for_each_index(exec, static_cast<std::int64_t>(rows2.size()), [&](std::int64_t i) {
            const std::int64_t a = rows2[static_cast<std::size_t>(i)];
            std::uint8_t digits[kMaxDigits];
            p.index.expand_into(a, digits);
            RowUnknowns unk;
            unk.count = r;
            for (int v = 0; v < r; ++v)
                unk.keys[static_cast<std::size_t>(v)] = {plan.i2,
                                                         p.index.substitute_known(a, u, v2, v)};
            unk.keys[static_cast<std::size_t>(v1)] = {plan.i1, a};  // bundle primary
            unk.bundle_col = v1;
            unk.bundle_secondary = {plan.i2, p.index.substitute_known(a, u, v2, v1)};
            unk.bundle_weight = p.tau;

            SparseRow scratch;
            const Vec x = solve_protocol_row(p, a, digits, unk, make_lookup(side2, plan.i2, v2),
                                             scratch);
            for (int v = 0; v < r; ++v) {
                if (v == v1) continue;
                const std::int64_t b = p.index.substitute_known(a, u, v2, v);
                side2.own[static_cast<std::size_t>(b)] = x[static_cast<std::size_t>(v)];
                side2.know_own[static_cast<std::size_t>(b)] = 1;
            }
            bundle2[static_cast<std::size_t>(axis2.index_of(a))] = x[static_cast<std::size_t>(v1)];
        });

        if (rows1.empty() && rows2.empty()) continue;

        // Collaboration round for this shell: the bundles cross, and each
        // matched pair resolves a 2x2 system (invertible since tau != 1).
        for_each_index(exec, static_cast<std::int64_t>(rows1.size()), [&](std::int64_t i) {
            const std::int64_t a = rows1[static_cast<std::size_t>(i)];
            const std::int64_t a2 = p.index.substitute_known(a, u, v1, v2);
            const FieldElement b1 = bundle1[static_cast<std::size_t>(axis1.index_of(a))];
            const FieldElement b2 = bundle2[static_cast<std::size_t>(axis2.index_of(a2))];
            // b1 = c_{i2,a} + c_{i1,a2};  b2 = c_{i1,a2} + tau*c_{i2,a}.
            const FieldElement q = (b2 - b1) * inv_tau_minus_1;  // c_{i2,a}
            const FieldElement pval = b1 - q;                    // c_{i1,a2}
            side1.own[static_cast<std::size_t>(a2)] = pval;
            side1.know_own[static_cast<std::size_t>(a2)] = 1;
            side1.partner[static_cast<std::size_t>(a)] = q;
            side1.know_partner[static_cast<std::size_t>(a)] = 1;
            side2.own[static_cast<std::size_t>(a)] = q;
            side2.know_own[static_cast<std::size_t>(a)] = 1;
            side2.partner[static_cast<std::size_t>(a2)] = pval;
            side2.know_partner[static_cast<std::size_t>(a2)] = 1;
        });

        CollabRound round;
        round.round = ++transcript.rounds;
        round.from_i1 = static_cast<std::int64_t>(rows1.size());
        round.from_i2 = static_cast<std::int64_t>(rows2.size());
        transcript.collab_rounds.push_back(round);
        transcript.collaborated += round.from_i1 + round.from_i2;
    }

    for (std::int64_t a = 0; a < p.ell; ++a) {
        if (!side1.know_own[static_cast<std::size_t>(a)] ||
            !side2.know_own[static_cast<std::size_t>(a)])
            throw InternalError("intra-group repair finished with unrecovered symbols");
    }

    RepairResult res;
    res.node1 = std::move(side1.own);
    res.node2 = std::move(side2.own);
    res.transcript = std::move(transcript);
    return res;
}

RepairResult repair_cross(const CodeParams& p, const RepairPlan& plan,
                          const std::vector<HelperRead>& helpers, Exec exec) {
    if (plan.intra) throw std::invalid_argument("repair_cross needs a cross-group plan");
    const HelperTable table = build_helper_table(p, plan, helpers);
    const int r = p.r, rho = plan.rho;

    RepairTranscript transcript = start_transcript(p, plan, table);

    // Each side solves its whole axis set with a deterministic fixpoint:
    // rounds of snapshot passes in ascending row order, a row becoming ready
    // once every referenced failed-node symbol outside its own unknowns has
    // been produced by an earlier round.
    auto run_side = [&](int side_value, int own_node) {
        SideState st(p);
        const AxisSet axis = p.index.axis_set(rho, side_value);

        auto unknowns_for = [&](std::int64_t a) {
            RowUnknowns unk;
            unk.count = r;
            unk.keys[0] = {plan.i1, a};
            unk.keys[1] = {plan.i2, a};
            for (int w = 2; w <= r - 1; ++w)
                unk.keys[static_cast<std::size_t>(w)] = {
                    own_node, p.index.substitute_known(a, rho, side_value, w)};
            return unk;
        };

        // Dependencies: failed-node references outside the row's own unknown
        // set. The entry pattern does not depend on t, so one row suffices.
        struct Dep {
            bool own;
            std::int64_t coord;
        };
        std::vector<std::vector<Dep>> deps(static_cast<std::size_t>(axis.size()));
        for_each_index(exec, axis.size(), [&](std::int64_t i) {
            const std::int64_t a = axis.at(i);
            std::uint8_t digits[kMaxDigits];
            p.index.expand_into(a, digits);
            SparseRow scratch;
            parity_row_into(p, 1, a, digits, scratch);
            const RowUnknowns unk = unknowns_for(a);
            for (const auto& e : scratch) {
                if (e.node != plan.i1 && e.node != plan.i2) continue;
                bool is_unknown = false;
                for (int c = 0; c < unk.count; ++c)
                    if (unk.keys[static_cast<std::size_t>(c)] ==
                        std::pair(e.node, e.coord)) {
                        is_unknown = true;
                        break;
                    }
                if (!is_unknown)
                    deps[static_cast<std::size_t>(i)].push_back({e.node == own_node, e.coord});
            }
        });

        auto lookup = [&](int node, std::int64_t coord) -> FieldElement {
            if (node == plan.i1 || node == plan.i2) {
                const bool mine = node == own_node;
                const auto& vals = mine ? st.own : st.partner;
                const auto& know = mine ? st.know_own : st.know_partner;
                if (!know[static_cast<std::size_t>(coord)])
                    throw InternalError("cross-group row solved before its dependencies");
                return vals[static_cast<std::size_t>(coord)];
            }
            const int slot = table.slot_of_node[static_cast<std::size_t>(node)];
            if (slot < 0) throw InternalError("protocol referenced an unknown node");
            if (p.index.digit(coord, rho) != side_value)
                throw InternalError("protocol read outside the downloaded rows");
            return table.values[static_cast<std::size_t>(slot)][static_cast<std::size_t>(coord)];
        };

        std::vector<std::int64_t> pending(static_cast<std::size_t>(axis.size()));
        std::iota(pending.begin(), pending.end(), std::int64_t{0});
        std::vector<std::int64_t> ready, still;
        int passes = 0;

        while (!pending.empty()) {
            ready.clear();
            still.clear();
            for (const std::int64_t i : pending) {
                bool ok = true;
                for (const auto& d : deps[static_cast<std::size_t>(i)]) {
                    const auto& know = d.own ? st.know_own : st.know_partner;
                    if (!know[static_cast<std::size_t>(d.coord)]) {
                        ok = false;
                        break;
                    }
                }
                (ok ? ready : still).push_back(i);
            }
            if (ready.empty())
                throw InternalError("cross-group repair fixpoint stalled with " +
                                    std::to_string(pending.size()) + " rows unsolved");
            ++passes;

            for_each_index(exec, static_cast<std::int64_t>(ready.size()), [&](std::int64_t ri) {
                const std::int64_t i = ready[static_cast<std::size_t>(ri)];
                const std::int64_t a = axis.at(i);
                std::uint8_t digits[kMaxDigits];
                p.index.expand_into(a, digits);
                const RowUnknowns unk = unknowns_for(a);
                SparseRow scratch;
                const Vec x = solve_protocol_row(p, a, digits, unk, lookup, scratch);
                for (int c = 0; c < unk.count; ++c) {
                    const auto [node, coord] = unk.keys[static_cast<std::size_t>(c)];
                    auto& vals = node == own_node ? st.own : st.partner;
                    auto& know = node == own_node ? st.know_own : st.know_partner;
                    vals[static_cast<std::size_t>(coord)] = x[static_cast<std::size_t>(c)];
                    know[static_cast<std::size_t>(coord)] = 1;
                }
            });
            pending.swap(still);
        }
        return std::pair(std::move(st), passes);
    };

    auto [side1, passes1] = run_side(0, plan.i1);
    auto [side2, passes2] = run_side(1, plan.i2);
    transcript.solver_passes = std::max(passes1, passes2);

    // Single collaboration round: each newcomer hands over the partner
    // symbols it solved on its own row set.
    const AxisSet axis1 = p.index.axis_set(rho, 0);
    const AxisSet axis2 = p.index.axis_set(rho, 1);
    for (std::int64_t i = 0; i < axis1.size(); ++i) {
        const std::int64_t a = axis1.at(i);
        if (!side1.know_partner[static_cast<std::size_t>(a)])
            throw InternalError("cross-group side 1 missing a partner symbol to transmit");
        side2.own[static_cast<std::size_t>(a)] = side1.partner[static_cast<std::size_t>(a)];
        side2.know_own[static_cast<std::size_t>(a)] = 1;
    }
    for (std::int64_t i = 0; i < axis2.size(); ++i) {
        const std::int64_t a = axis2.at(i);
        if (!side2.know_partner[static_cast<std::size_t>(a)])
            throw InternalError("cross-group side 2 missing a partner symbol to transmit");
        side1.own[static_cast<std::size_t>(a)] = side2.partner[static_cast<std::size_t>(a)];
        side1.know_own[static_cast<std::size_t>(a)] = 1;
    }
    transcript.rounds = 1;
    CollabRound round;
    round.round = 1;
    round.from_i1 = axis1.size();
    round.from_i2 = axis2.size();
    transcript.collab_rounds.push_back(round);
    transcript.collaborated = axis1.size() + axis2.size();

    for (std::int64_t a = 0; a < p.ell; ++a) {
        if (!side1.know_own[static_cast<std::size_t>(a)] ||
            !side2.know_own[static_cast<std::size_t>(a)])
            throw InternalError("cross-group repair finished with unrecovered symbols");
    }

    RepairResult res;
    res.node1 = std::move(side1.own);
    res.node2 = std::move(side2.own);
    res.transcript = std::move(transcript);
    return res;
}

RepairResult cooperative_repair(const CodeParams& p, const Codeword& c, int i1, int i2, Exec exec) {
    if (c.nodes.size() != static_cast<std::size_t>(p.n))
        throw std::invalid_argument("codeword has wrong node count");
    const RepairPlan plan = make_repair_plan(p, i1, i2);
    std::vector<HelperRead> helpers;
    helpers.reserve(static_cast<std::size_t>(p.n - 2));
    for (int node = 1; node <= p.n; ++node) {
        if (node == i1 || node == i2) continue;
        helpers.push_back(helper_read(p, c.nodes[static_cast<std::size_t>(node - 1)], node, plan));
    }
    return plan.intra ? repair_intra(p, plan, helpers, exec)
                      : repair_cross(p, plan, helpers, exec);
}

}  // namespace coopmsr
