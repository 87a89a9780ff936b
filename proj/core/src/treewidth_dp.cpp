#include <algorithm>
#include <cstring>
#include <limits>
#include <unordered_map>

#include "recovap/treewidth.hpp"

namespace recovap {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
constexpr int kMaxBag = 12;

// Per-position codes: 0 = matched below (absent), 1 = waiting,
// 2+q = committed to the bag edge with the vertex at position q.
constexpr unsigned kAbsent = 0;
constexpr unsigned kWaiting = 1;

struct StateKey {
    std::uint64_t s1 = 0, s2 = 0;
    bool operator==(const StateKey& o) const { return s1 == o.s1 && s2 == o.s2; }
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const {
        std::uint64_t z = k.s1 * 0x9e3779b97f4a7c15ULL ^ (k.s2 + 0xbf58476d1ce4e5b9ULL);
        z ^= z >> 29;
        z *= 0x94d049bb133111ebULL;
        return static_cast<std::size_t>(z ^ (z >> 32));
    }
};

unsigned get_code(std::uint64_t s, int pos) { return (s >> (5 * pos)) & 31u; }
std::uint64_t set_code(std::uint64_t s, int pos, unsigned code) {
    s &= ~(31ULL << (5 * pos));
    return s | (static_cast<std::uint64_t>(code) << (5 * pos));
}

// Shifts positions >= pos up by one (making room at pos), fixing pair codes.
std::uint64_t insert_position(std::uint64_t s, int pos, int old_size) {
    std::uint64_t out = 0;
    for (int p = 0; p < old_size; ++p) {
        unsigned c = get_code(s, p);
        if (c >= 2) {
            int q = static_cast<int>(c - 2);
            c = 2 + static_cast<unsigned>(q >= pos ? q + 1 : q);
        }
        out = set_code(out, p >= pos ? p + 1 : p, c);
    }
    return set_code(out, pos, kWaiting);  // placeholder; caller overwrites
}

// Removes position pos (codes referencing higher positions shift down).
std::uint64_t erase_position(std::uint64_t s, int pos, int old_size) {
    std::uint64_t out = 0;
    for (int p = 0; p < old_size; ++p) {
        if (p == pos) continue;
        unsigned c = get_code(s, p);
        if (c >= 2) {
            int q = static_cast<int>(c - 2);
            c = 2 + static_cast<unsigned>(q > pos ? q - 1 : q);
        }
        out = set_code(out, p > pos ? p - 1 : p, c);
    }
    return out;
}

struct BackRef {
    StateKey child1;
    std::uint16_t kappa1 = 0;
    StateKey child2;
    std::uint16_t kappa2 = 0;
    std::uint8_t children = 0;  // 0 = leaf, 1, or 2
    std::int32_t committed_m1 = -1;  // instance edge id committed at this step
    std::int32_t committed_m2 = -1;
};

struct Entry {
    std::vector<std::int64_t> cost;  // indexed by saturated counter
    std::vector<BackRef> back;
};

using Table = std::unordered_map<StateKey, Entry, StateKeyHash>;

struct Dp {
    const Instance& inst;
    const NiceTreeDecomposition& ntd;
    const TwDpOptions& opt;
    int cap;
    std::vector<Table> tables;
    std::uint64_t total_states = 0;

    Dp(const Instance& i, const NiceTreeDecomposition& t, const TwDpOptions& o)
        : inst(i), ntd(t), opt(o) {
        cap = o.counter_cap >= 0 ? o.counter_cap : i.k();
    }

    Entry fresh() const {
        Entry e;
        e.cost.assign(cap + 1, kInf);
        e.back.resize(cap + 1);
        return e;
    }

    void bump_guard() {
        if (++total_states > opt.max_states)
            throw GuardExceeded("treewidth DP exceeded its state budget; "
                                "the decomposition width is too large for this instance");
    }

    void merge(Table& table, const StateKey& key, int kappa, std::int64_t cost, BackRef back) {
        auto it = table.find(key);
        if (it == table.end()) {
            bump_guard();
            it = table.emplace(key, fresh()).first;
        }
        if (cost < it->second.cost[kappa]) {
            it->second.cost[kappa] = cost;
            it->second.back[kappa] = back;
        }
    }

    // Instance edge id between graph vertices a and b, or -1.
    int edge_id(int a, int b) const {
        if (a > b) std::swap(a, b);
        if (a >= inst.n() || b < inst.n()) return -1;  // both must straddle the bipartition
        return inst.edge_index(a, b - inst.n());
    }

    void do_leaf(Table& table) {
        StateKey key;
        Entry e = fresh();
        e.cost[0] = 0;
        bump_guard();
        table.emplace(key, std::move(e));
    }

    void do_introduce(const NiceTreeDecomposition::Node& nd, const Table& child, Table& table) {
        const auto& bag = nd.bag;
        const int bag_size = static_cast<int>(bag.size());
        const int child_size = bag_size - 1;
        const int pos_v = static_cast<int>(
            std::lower_bound(bag.begin(), bag.end(), nd.vertex) - bag.begin());

        // Candidate bag partners of v, with per-matching finite-cost edges.
        struct Partner {
            int pos;     // position in the parent bag
            int eid;     // instance edge id
            bool ok1, ok2;
            std::int64_t c1, c2;
        };
        std::vector<Partner> partners;
        for (int p = 0; p < bag_size; ++p) {
            if (p == pos_v) continue;
            int eid = edge_id(nd.vertex, bag[p]);
            if (eid < 0) continue;
            const Edge& e = inst.edges()[eid];
            Partner pr{p, eid, e.c1.is_finite(), e.c2.is_finite(),
                       e.c1.is_finite() ? e.c1.value() : 0, e.c2.is_finite() ? e.c2.value() : 0};
            if (pr.ok1 || pr.ok2) partners.push_back(pr);
        }

        for (const auto& [ckey, centry] : child) {
            std::uint64_t base1 = insert_position(ckey.s1, pos_v, child_size);
            std::uint64_t base2 = insert_position(ckey.s2, pos_v, child_size);

            // Option lists for each matching: -1 = waiting, else partner index.
            auto options = [&](std::uint64_t base, bool first_stage) {
                std::vector<int> opts{-1};
                for (std::size_t t = 0; t < partners.size(); ++t) {
                    const Partner& pr = partners[t];
                    if (!(first_stage ? pr.ok1 : pr.ok2)) continue;
                    if (get_code(base, pr.pos) == kWaiting) opts.push_back(static_cast<int>(t));
                }
                return opts;
            };
            std::vector<int> opts1 = options(base1, true), opts2 = options(base2, false);

            for (int o1 : opts1) {
                std::uint64_t s1 = set_code(base1, pos_v, kWaiting);
                std::int64_t add1 = 0;
                int eid1 = -1;
                if (o1 >= 0) {
                    const Partner& pr = partners[o1];
                    s1 = set_code(s1, pos_v, 2 + pr.pos);
                    s1 = set_code(s1, pr.pos, 2 + pos_v);
                    add1 = pr.c1;
                    eid1 = pr.eid;
                }
                for (int o2 : opts2) {
                    std::uint64_t s2 = set_code(base2, pos_v, kWaiting);
                    std::int64_t add2 = 0;
                    int eid2 = -1;
                    if (o2 >= 0) {
                        const Partner& pr = partners[o2];
                        s2 = set_code(s2, pos_v, 2 + pr.pos);
                        s2 = set_code(s2, pr.pos, 2 + pos_v);
                        add2 = pr.c2;
                        eid2 = pr.eid;
                    }
                    int bump = (eid1 >= 0 && eid1 == eid2) ? 1 : 0;
                    StateKey pkey{s1, s2};
                    for (int kap = 0; kap <= cap; ++kap) {
                        if (centry.cost[kap] == kInf) continue;
                        int kap2 = std::min(cap, kap + bump);
                        BackRef br;
                        br.children = 1;
                        br.child1 = ckey;
                        br.kappa1 = static_cast<std::uint16_t>(kap);
                        br.committed_m1 = eid1;
                        br.committed_m2 = eid2;
                        merge(table, pkey, kap2, centry.cost[kap] + add1 + add2, br);
                    }
                }
            }
        }
    }

    void do_forget(const NiceTreeDecomposition::Node& nd, const Table& child, Table& table) {
        const auto& cbag = ntd.nodes[nd.child1].bag;
        const int child_size = static_cast<int>(cbag.size());
        const int pos_v = static_cast<int>(
            std::lower_bound(cbag.begin(), cbag.end(), nd.vertex) - cbag.begin());

        for (const auto& [ckey, centry] : child) {
            unsigned c1 = get_code(ckey.s1, pos_v), c2 = get_code(ckey.s2, pos_v);
            if (c1 == kWaiting || c2 == kWaiting) continue;  // forgotten vertices must be matched
            std::uint64_t s1 = ckey.s1, s2 = ckey.s2;
            if (c1 >= 2) s1 = set_code(s1, static_cast<int>(c1 - 2), kAbsent);
            if (c2 >= 2) s2 = set_code(s2, static_cast<int>(c2 - 2), kAbsent);
            StateKey pkey{erase_position(s1, pos_v, child_size), erase_position(s2, pos_v, child_size)};
            for (int kap = 0; kap <= cap; ++kap) {
                if (centry.cost[kap] == kInf) continue;
                BackRef br;
                br.children = 1;
                br.child1 = ckey;
                br.kappa1 = static_cast<std::uint16_t>(kap);
                merge(table, pkey, kap, centry.cost[kap], br);
            }
        }
    }

    void do_join(const NiceTreeDecomposition::Node& nd, const Table& left, const Table& right,
                 Table& table) {
        const auto& bag = nd.bag;
        const int bag_size = static_cast<int>(bag.size());

        // Group by pair structure; singles (waiting/absent) combine freely.
        auto signature = [&](const StateKey& k) {
            StateKey sig;
            for (int p = 0; p < bag_size; ++p) {
                unsigned a = get_code(k.s1, p);
                unsigned b = get_code(k.s2, p);
                if (a >= 2) sig.s1 = set_code(sig.s1, p, a);
                if (b >= 2) sig.s2 = set_code(sig.s2, p, b);
            }
            return sig;
        };

        std::unordered_map<StateKey, std::vector<const std::pair<const StateKey, Entry>*>,
                           StateKeyHash>
            left_groups, right_groups;
        for (const auto& kv : left) left_groups[signature(kv.first)].push_back(&kv);
        for (const auto& kv : right) right_groups[signature(kv.first)].push_back(&kv);

        for (auto& [sig, lhs] : left_groups) {
            auto rit = right_groups.find(sig);
            if (rit == right_groups.end()) continue;

            // Costs of all committed bag pairs; both children charged them.
            std::int64_t dup_cost = 0;
            int shared_pairs = 0;
            for (int p = 0; p < bag_size; ++p) {
                unsigned a = get_code(sig.s1, p), b = get_code(sig.s2, p);
                if (a >= 2 && static_cast<int>(a - 2) > p) {
                    int eid = edge_id(bag[p], bag[a - 2]);
                    dup_cost += inst.edges()[eid].c1.value();
                }
                if (b >= 2 && static_cast<int>(b - 2) > p) {
                    int eid = edge_id(bag[p], bag[b - 2]);
                    dup_cost += inst.edges()[eid].c2.value();
                }
                if (a >= 2 && a == b && static_cast<int>(a - 2) > p) ++shared_pairs;
            }

            for (const auto* lkv : lhs) {
                for (const auto* rkv : rit->second) {
                    // Combine singles: never both absent; waiting needs both waiting.
                    std::uint64_t s1 = 0, s2 = 0;
                    bool ok = true;
                    for (int p = 0; p < bag_size && ok; ++p) {
                        unsigned a1 = get_code(lkv->first.s1, p), b1 = get_code(rkv->first.s1, p);
                        unsigned a2 = get_code(lkv->first.s2, p), b2 = get_code(rkv->first.s2, p);
                        if (a1 >= 2) {
                            s1 = set_code(s1, p, a1);
                        } else {
                            if (a1 == kAbsent && b1 == kAbsent) ok = false;
                            s1 = set_code(s1, p, (a1 == kWaiting && b1 == kWaiting) ? kWaiting : kAbsent);
                        }
                        if (a2 >= 2) {
                            s2 = set_code(s2, p, a2);
                        } else {
                            if (a2 == kAbsent && b2 == kAbsent) ok = false;
                            s2 = set_code(s2, p, (a2 == kWaiting && b2 == kWaiting) ? kWaiting : kAbsent);
                        }
                    }
                    if (!ok) continue;
                    StateKey pkey{s1, s2};
                    for (int k1 = 0; k1 <= cap; ++k1) {
                        if (lkv->second.cost[k1] == kInf) continue;
                        for (int k2 = 0; k2 <= cap; ++k2) {
                            if (rkv->second.cost[k2] == kInf) continue;
                            int kap = std::min(cap, std::max({k1, k2, k1 + k2 - shared_pairs}));
                            if (opt.join_observer)
                                opt.join_observer({k1, k2, kap, shared_pairs});
                            BackRef br;
                            br.children = 2;
                            br.child1 = lkv->first;
                            br.kappa1 = static_cast<std::uint16_t>(k1);
                            br.child2 = rkv->first;
                            br.kappa2 = static_cast<std::uint16_t>(k2);
                            merge(table, pkey, kap,
                                  lkv->second.cost[k1] + rkv->second.cost[k2] - dup_cost, br);
                        }
                    }
                }
            }
        }
    }
};

}  // namespace

std::optional<TwDpResult> tw_dp_solve(const Instance& inst, const NiceTreeDecomposition& ntd,
                                      const TwDpOptions& opt) {
    std::string err = check_nice_decomposition(inst, ntd);
    if (!err.empty()) throw std::invalid_argument("tw_dp_solve: invalid decomposition: " + err);
    if (opt.counter_cap >= 0 && opt.counter_cap < inst.k())
        throw std::invalid_argument("tw_dp_solve: counter cap below k");
    for (const auto& nd : ntd.nodes)
        if (static_cast<int>(nd.bag.size()) > kMaxBag)
            throw GuardExceeded("tw_dp_solve: bag size exceeds the supported maximum of " +
                                std::to_string(kMaxBag));

    Dp dp(inst, ntd, opt);
    dp.tables.resize(ntd.nodes.size());
    using Kind = NiceTreeDecomposition::Kind;
    for (std::size_t id = 0; id < ntd.nodes.size(); ++id) {
        const auto& nd = ntd.nodes[id];
        switch (nd.kind) {
            case Kind::Leaf:
                dp.do_leaf(dp.tables[id]);
                break;
            case Kind::Introduce:
                dp.do_introduce(nd, dp.tables[nd.child1], dp.tables[id]);
                break;
            case Kind::Forget:
                dp.do_forget(nd, dp.tables[nd.child1], dp.tables[id]);
                break;
            case Kind::Join:
                dp.do_join(nd, dp.tables[nd.child1], dp.tables[nd.child2], dp.tables[id]);
                break;
        }
    }

    const Table& root = dp.tables[ntd.root];
    auto it = root.find(StateKey{});
    if (it == root.end()) return std::nullopt;

    // Intersection >= k: the saturating counter reaches k exactly; with a
    // higher instrumentation cap, scan all counters from k up.
    int best_kappa = -1;
    std::int64_t best = kInf;
    for (int kap = inst.k(); kap <= dp.cap; ++kap) {
        if (it->second.cost[kap] < best) {
            best = it->second.cost[kap];
            best_kappa = kap;
        }
    }
    if (best == kInf) return std::nullopt;

    // Witness reconstruction through back-pointers.
    std::vector<std::pair<int, int>> m1_pairs, m2_pairs;
    std::vector<char> m1_seen(inst.edges().size(), 0), m2_seen(inst.edges().size(), 0);
    struct Frame {
        int node;
        StateKey key;
        int kappa;
    };
    std::vector<Frame> stack{{ntd.root, StateKey{}, best_kappa}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        const auto& nd = ntd.nodes[f.node];
        const Entry& e = dp.tables[f.node].at(f.key);
        const BackRef& br = e.back[f.kappa];
        if (br.committed_m1 >= 0 && !m1_seen[br.committed_m1]) {
            m1_seen[br.committed_m1] = 1;
            m1_pairs.push_back({inst.edges()[br.committed_m1].i, inst.edges()[br.committed_m1].j});
        }
        if (br.committed_m2 >= 0 && !m2_seen[br.committed_m2]) {
            m2_seen[br.committed_m2] = 1;
            m2_pairs.push_back({inst.edges()[br.committed_m2].i, inst.edges()[br.committed_m2].j});
        }
        if (br.children >= 1) stack.push_back({nd.child1, br.child1, br.kappa1});
        if (br.children >= 2) stack.push_back({nd.child2, br.child2, br.kappa2});
    }

    TwDpResult res;
    res.pair = SolutionPair::make(inst, Matching(std::move(m1_pairs)), Matching(std::move(m2_pairs)));
    return res;
}

std::optional<TwDpResult> tw_dp_solve(const Instance& inst, const TwDpOptions& opt) {
    auto td = min_fill_decomposition(inst);
    auto ntd = make_nice(inst, td);
    return tw_dp_solve(inst, ntd, opt);
}

}  // namespace recovap
