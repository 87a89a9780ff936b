#include "recovap/gadgets.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "recovap/oracle.hpp"

namespace recovap {

GridTilingInstance GridTilingInstance::make(int ell, int nvals) {
    GridTilingInstance gt;
    gt.ell = ell;
    gt.nvals = nvals;
    gt.cells.assign(ell, std::vector<std::vector<std::pair<int, int>>>(ell));
    return gt;
}

bool GridTilingInstance::cell_contains(int i, int j, int a, int b) const {
    const auto& c = cells[i][j];
    return std::find(c.begin(), c.end(), std::make_pair(a, b)) != c.end();
}

GridTilingInstance GridTilingInstance::normalized() const {
    std::set<int> used;
    for (const auto& row : cells)
        for (const auto& cell : row)
            for (auto& [a, b] : cell) {
                used.insert(a);
                used.insert(b);
            }
    std::map<int, int> remap;
    for (int v : used) remap[v] = static_cast<int>(remap.size());
    GridTilingInstance out = make(ell, static_cast<int>(used.size()));
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j) {
            for (auto& [a, b] : cells[i][j]) out.cells[i][j].push_back({remap[a], remap[b]});
            std::sort(out.cells[i][j].begin(), out.cells[i][j].end());
            out.cells[i][j].erase(std::unique(out.cells[i][j].begin(), out.cells[i][j].end()),
                                  out.cells[i][j].end());
        }
    return out;
}

bool check_grid_tiling_witness(const GridTilingInstance& gt, const GridTilingWitness& w) {
    if (static_cast<int>(w.rows.size()) != gt.ell || static_cast<int>(w.cols.size()) != gt.ell)
        return false;
    for (int i = 0; i < gt.ell; ++i)
        for (int j = 0; j < gt.ell; ++j)
            if (!gt.cell_contains(i, j, w.rows[i], w.cols[j])) return false;
    return true;
}

std::optional<GridTilingWitness> solve_grid_tiling(const GridTilingInstance& gt,
                                                   std::uint64_t budget) {
    if (gt.ell < 1) throw std::invalid_argument("solve_grid_tiling: ell must be >= 1");
    double combos = 1;
    for (int t = 0; t < 2 * gt.ell; ++t) combos *= std::max(1, gt.nvals);
    if (combos > static_cast<double>(budget))
        throw GuardExceeded("solve_grid_tiling: nvals^(2 ell) exceeds the search budget");
    if (gt.nvals == 0) return std::nullopt;

    GridTilingWitness w;
    w.rows.assign(gt.ell, 0);
    w.cols.assign(gt.ell, 0);
    // Odometer over all assignments, rows then columns.
    std::vector<int> digits(2 * gt.ell, 0);
    while (true) {
        for (int t = 0; t < gt.ell; ++t) w.rows[t] = digits[t];
        for (int t = 0; t < gt.ell; ++t) w.cols[t] = digits[gt.ell + t];
        if (check_grid_tiling_witness(gt, w)) return w;
        int pos = 0;
        while (pos < 2 * gt.ell && ++digits[pos] == gt.nvals) digits[pos++] = 0;
        if (pos == 2 * gt.ell) return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Construction bookkeeping shared by build, encode and decode.

namespace {

struct Builder {
    int next_left = 0, next_right = 0;
    std::vector<Edge> edges;

    int left() { return next_left++; }
    int right() { return next_right++; }
    void edge(int l, int r, int c1, int c2) {
        edges.push_back({l, r, Cost(c1), Cost(c2)});
    }
};

// --- Intersection-parameter (primal) construction ---

struct PTupleSlot {
    int other_value;  // b on the row side, a on the column side
    int x, y;         // shared tuple endpoints (left, right)
    int bar_r;        // row side: partner of x on the right; col side: partner of x
    int bar_l;        // row side: partner of y on the left;  col side: partner of y
};

struct PStage {
    int hub, par, hub2, par2;  // entry hub/partner, exit hub/partner
    std::vector<PTupleSlot> slots;
};

struct PChain {
    int rho, tau;
    std::vector<PStage> stages;
    int theta, lambda;
};

struct PSide {
    int sigma;
    std::vector<PChain> chains;
    int sink;
};

struct DGadget {
    int l3, l2, l, tl, t2, t3;
    int r3, r2, r, br, b2, b3;
    std::vector<int> central;  // internal vertices, left/right alternating from l
    std::vector<int> curve;    // internal vertices from tl to br
};

struct DStage {
    int hub, par, hub2, par2;
    std::vector<int> gadget_ids;          // global gadget table indices
    std::vector<int> gadget_other_value;  // b (rows) / a (columns)
};

struct DChain {
    std::vector<int> leg;  // w_1..w_LEN; w_0 is sigma
    std::vector<DStage> stages;
    int phi, psi;
};

struct DSide {
    int sigma;
    std::vector<DChain> chains;
    int sink;
};

}  // namespace

struct GadgetLayout {
    bool dual = false;
    GridTilingInstance gt;  // normalized
    int n = 0;              // per-side size of the emitted instance
    // Primal:
    std::vector<PSide> rows, cols;
    std::vector<std::pair<int, int>> forced_m1, forced_m2;  // helper edges
    // Dual:
    std::vector<DSide> drows, dcols;
    std::vector<DGadget> gadgets;
    std::map<std::tuple<int, int, int, int>, int> gadget_of;  // (i,j,a,b) -> gadget id
    int leg_len = 0, path_len = 0;
};

namespace {

// Primal tuple endpoints are shared between the row and the column worlds.
struct SharedTuples {
    std::map<std::tuple<int, int, int, int>, std::pair<int, int>> xy;
    std::pair<int, int> get(Builder& b, int i, int j, int a, int bb) {
        auto key = std::make_tuple(i, j, a, bb);
        auto it = xy.find(key);
        if (it != xy.end()) return it->second;
        std::pair<int, int> v{b.left(), b.right()};
        xy.emplace(key, v);
        return v;
    }
};

}  // namespace

GadgetInstance grid_tiling_to_recovap(const GridTilingInstance& raw) {
    GridTilingInstance gt = raw.normalized();
    const int ell = gt.ell, n = gt.nvals;

    Builder b;
    auto layout = std::make_shared<GadgetLayout>();
    layout->dual = false;
    layout->gt = gt;
    SharedTuples shared;
    GadgetInstance out;

    // Vertices the opposite matching must cover through helper bridges.
    std::vector<int> row_l, row_r, col_l, col_r;

    // Row world: all internal edges cost (0,1), tuple edges (0,0).
    layout->rows.resize(ell);
    for (int i = 0; i < ell; ++i) {
        PSide& side = layout->rows[i];
        side.sigma = b.left();
        row_l.push_back(side.sigma);
        side.chains.resize(n);
        for (int a = 0; a < n; ++a) {
            PChain& ch = side.chains[a];
            ch.rho = b.right();
            ch.tau = b.left();
            row_r.push_back(ch.rho);
            row_l.push_back(ch.tau);
            b.edge(side.sigma, ch.rho, 0, 1);
            out.selection_index[{false, i, a}] = {side.sigma, ch.rho};
            b.edge(ch.tau, ch.rho, 0, 1);
            int prev = ch.tau;
            ch.stages.resize(ell);
            for (int j = 0; j < ell; ++j) {
                PStage& st = ch.stages[j];
                st.hub = b.right();
                st.par = b.left();
                st.hub2 = b.right();
                st.par2 = b.left();
                row_r.push_back(st.hub);
                row_l.push_back(st.par);
                row_r.push_back(st.hub2);
                row_l.push_back(st.par2);
                b.edge(prev, st.hub, 0, 1);
                b.edge(st.par, st.hub, 0, 1);
                b.edge(st.par2, st.hub2, 0, 1);
                for (auto& [ta, tb] : gt.cells[i][j]) {
                    if (ta != a) continue;
                    PTupleSlot slot;
                    slot.other_value = tb;
                    auto [x, y] = shared.get(b, i, j, a, tb);
                    slot.x = x;
                    slot.y = y;
                    slot.bar_r = b.right();
                    slot.bar_l = b.left();
                    row_r.push_back(slot.bar_r);
                    row_l.push_back(slot.bar_l);
                    b.edge(st.par, slot.bar_r, 0, 1);
                    b.edge(slot.x, slot.bar_r, 0, 1);
                    b.edge(slot.bar_l, slot.y, 0, 1);
                    b.edge(slot.bar_l, st.hub2, 0, 1);
                    st.slots.push_back(slot);
                }
                prev = st.par2;
            }
            ch.theta = b.right();
            ch.lambda = b.left();
            row_r.push_back(ch.theta);
            row_l.push_back(ch.lambda);
            b.edge(prev, ch.theta, 0, 1);
            b.edge(ch.lambda, ch.theta, 0, 1);
        }
        side.sink = b.right();
        row_r.push_back(side.sink);
        for (int a = 0; a < n; ++a) b.edge(side.chains[a].lambda, side.sink, 0, 1);
    }

    // Tuple edges, once per tuple.
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j)
            for (auto& [a, tb] : gt.cells[i][j]) {
                auto [x, y] = shared.get(b, i, j, a, tb);
                b.edge(x, y, 0, 0);
                out.tuple_edge_index[{i, j, a, tb}] = {x, y};
            }

    // Column world: mirrored sides, internal edges cost (1,0).
    layout->cols.resize(ell);
    for (int j = 0; j < ell; ++j) {
        PSide& side = layout->cols[j];
        side.sigma = b.right();
        col_r.push_back(side.sigma);
        side.chains.resize(n);
        for (int bb = 0; bb < n; ++bb) {
            PChain& ch = side.chains[bb];
            ch.rho = b.left();
            ch.tau = b.right();
            col_l.push_back(ch.rho);
            col_r.push_back(ch.tau);
            b.edge(ch.rho, side.sigma, 1, 0);
            out.selection_index[{true, j, bb}] = {ch.rho, side.sigma};
            b.edge(ch.rho, ch.tau, 1, 0);
            int prev = ch.tau;
            ch.stages.resize(ell);
            for (int i = 0; i < ell; ++i) {
                PStage& st = ch.stages[i];
                st.hub = b.left();
                st.par = b.right();
                st.hub2 = b.left();
                st.par2 = b.right();
                col_l.push_back(st.hub);
                col_r.push_back(st.par);
                col_l.push_back(st.hub2);
                col_r.push_back(st.par2);
                b.edge(st.hub, prev, 1, 0);
                b.edge(st.hub, st.par, 1, 0);
                b.edge(st.hub2, st.par2, 1, 0);
                for (auto& [ta, tb] : gt.cells[i][j]) {
                    if (tb != bb) continue;
                    PTupleSlot slot;
                    slot.other_value = ta;
                    auto [x, y] = shared.get(b, i, j, ta, bb);
                    slot.x = x;
                    slot.y = y;
                    slot.bar_r = b.right();  // x-tilde, partner of x
                    slot.bar_l = b.left();   // y-tilde, partner of y
                    col_r.push_back(slot.bar_r);
                    col_l.push_back(slot.bar_l);
                    b.edge(slot.bar_l, st.par, 1, 0);
                    b.edge(slot.bar_l, slot.y, 1, 0);
                    b.edge(slot.x, slot.bar_r, 1, 0);
                    b.edge(st.hub2, slot.bar_r, 1, 0);
                    st.slots.push_back(slot);
                }
                prev = st.par2;
            }
            ch.theta = b.left();
            ch.lambda = b.right();
            col_l.push_back(ch.theta);
            col_r.push_back(ch.lambda);
            b.edge(ch.theta, prev, 1, 0);
            b.edge(ch.theta, ch.lambda, 1, 0);
        }
        side.sink = b.left();
        col_l.push_back(side.sink);
        for (int bb = 0; bb < n; ++bb) b.edge(side.sink, side.chains[bb].lambda, 1, 0);
    }

    // Helper bridges. Row vertices are covered by M2 and column vertices by
    // M1 through dedicated degree-2 helpers, so these edges are forced.
    if (row_l.size() != col_l.size() || row_r.size() != col_r.size())
        throw std::logic_error("grid_tiling_to_recovap: helper lists out of balance");
    for (std::size_t t = 0; t < row_l.size(); ++t) {
        int helper = b.right();
        b.edge(row_l[t], helper, 1, 0);
        layout->forced_m2.push_back({row_l[t], helper});
        b.edge(col_l[t], helper, 0, 1);
        layout->forced_m1.push_back({col_l[t], helper});
    }
    for (std::size_t t = 0; t < row_r.size(); ++t) {
        int helper = b.left();
        b.edge(helper, row_r[t], 1, 0);
        layout->forced_m2.push_back({helper, row_r[t]});
        b.edge(helper, col_r[t], 0, 1);
        layout->forced_m1.push_back({helper, col_r[t]});
    }

    if (b.next_left != b.next_right)
        throw std::logic_error("grid_tiling_to_recovap: sides out of balance");
    layout->n = b.next_left;
    out.instance = Instance(b.next_left, std::move(b.edges), ell * ell);
    out.target_k = ell * ell;
    out.dual = false;
    out.layout = layout;
    return out;
}

// --- Recoverability-parameter (dual) construction ---

GadgetInstance grid_tiling_to_recovap_dual(const GridTilingInstance& raw) {
    GridTilingInstance gt = raw.normalized();
    const int ell = gt.ell, n = gt.nvals;
    const int kprime = 4 * ell * ell;

    Builder b;
    auto layout = std::make_shared<GadgetLayout>();
    layout->dual = true;
    layout->gt = gt;
    layout->leg_len = kprime + 2;   // even: selector legs deliver the token when chosen
    layout->path_len = kprime + 1;  // odd: gadget-internal long paths
    GadgetInstance out;

    // Shared tuple gadgets.
    for (int i = 0; i < ell; ++i)
        for (int j = 0; j < ell; ++j)
            for (auto& [a, bb] : gt.cells[i][j]) {
                DGadget g;
                g.l3 = b.right();
                g.l2 = b.left();
                g.l = b.right();
                g.tl = b.right();
                g.t2 = b.left();
                g.t3 = b.right();
                g.r3 = b.left();
                g.r2 = b.right();
                g.r = b.left();
                g.br = b.left();
                g.b2 = b.right();
                g.b3 = b.left();
                b.edge(g.l2, g.l3, 0, 0);
                b.edge(g.t2, g.t3, 0, 0);
                b.edge(g.r3, g.r2, 0, 0);
                b.edge(g.b3, g.b2, 0, 0);
                // The two 4-cycles carry the only nonzero costs.
                b.edge(g.t2, g.l, 0, 1);
                b.edge(g.l2, g.tl, 0, 1);
                b.edge(g.l2, g.l, 1, 0);
                b.edge(g.t2, g.tl, 1, 0);
                b.edge(g.r, g.b2, 0, 1);
                b.edge(g.br, g.r2, 0, 1);
                b.edge(g.r, g.r2, 1, 0);
                b.edge(g.br, g.b2, 1, 0);
                // Long interior paths; both-or-neither parity.
                {
                    // central: l (right side) .. r (left side)
                    int prev = g.l;
                    bool prev_left = false;
                    for (int t = 1; t < layout->path_len; ++t) {
                        int v = prev_left ? b.right() : b.left();
                        g.central.push_back(v);
                        if (prev_left)
                            b.edge(prev, v, 0, 0);
                        else
                            b.edge(v, prev, 0, 0);
                        prev = v;
                        prev_left = !prev_left;
                    }
                    if (prev_left)
                        b.edge(prev, g.r, 0, 0);  // never happens for odd path_len
                    else
                        b.edge(g.r, prev, 0, 0);
                }
                {
                    int prev = g.tl;
                    bool prev_left = false;
                    for (int t = 1; t < layout->path_len; ++t) {
                        int v = prev_left ? b.right() : b.left();
                        g.curve.push_back(v);
                        if (prev_left)
                            b.edge(prev, v, 0, 0);
                        else
                            b.edge(v, prev, 0, 0);
                        prev = v;
                        prev_left = !prev_left;
                    }
                    if (prev_left)
                        b.edge(prev, g.br, 0, 0);
                    else
                        b.edge(g.br, prev, 0, 0);
                }
                int id = static_cast<int>(layout->gadgets.size());
                layout->gadgets.push_back(g);
                layout->gadget_of[{i, j, a, bb}] = id;
                out.tuple_edge_index[{i, j, a, bb}] = {g.t2, g.l};  // representative edge
            }

    // Selector star + chain per row value and per column value; identical
    // topology for rows and columns (the gadget interfaces differ).
    auto build_side = [&](bool is_col, int index) {
        DSide side;
        side.sigma = b.left();
        side.chains.resize(n);
        for (int val = 0; val < n; ++val) {
            DChain& ch = side.chains[val];
            // Even-length leg: the chosen leg covers sigma and exposes its
            // far end; unchosen legs pair internally covering the far end.
            int prev = side.sigma;
            bool prev_left = true;
            for (int t = 0; t < layout->leg_len; ++t) {
                int v = prev_left ? b.right() : b.left();
                ch.leg.push_back(v);
                if (prev_left)
                    b.edge(prev, v, 0, 0);
                else
                    b.edge(v, prev, 0, 0);
                if (t == 0)
                    out.selection_index[{is_col, index, val}] = prev_left
                                                                    ? std::make_pair(prev, v)
                                                                    : std::make_pair(v, prev);
                prev = v;
                prev_left = !prev_left;
            }
            // leg_len even: the chain head sits on the left.
            int head = prev;
            ch.stages.resize(ell);
            for (int cell = 0; cell < ell; ++cell) {
                DStage& st = ch.stages[cell];
                st.hub = b.right();
                st.par = b.left();
                st.hub2 = b.right();
                st.par2 = b.left();
                b.edge(head, st.hub, 0, 0);
                b.edge(st.par, st.hub, 0, 0);
                b.edge(st.par2, st.hub2, 0, 0);
                int i = is_col ? cell : index;
                int j = is_col ? index : cell;
                for (auto& [ta, tb] : gt.cells[i][j]) {
                    if ((is_col ? tb : ta) != val) continue;
                    int gid = layout->gadget_of.at({i, j, ta, tb});
                    const DGadget& g = layout->gadgets[gid];
                    if (is_col) {
                        b.edge(st.par, g.t3, 0, 0);
                        b.edge(g.b3, st.hub2, 0, 0);
                    } else {
                        b.edge(st.par, g.l3, 0, 0);
                        b.edge(g.r3, st.hub2, 0, 0);
                    }
                    st.gadget_ids.push_back(gid);
                    st.gadget_other_value.push_back(is_col ? ta : tb);
                }
                head = st.par2;
            }
            ch.phi = b.right();
            ch.psi = b.left();
            b.edge(head, ch.phi, 0, 0);
            b.edge(ch.psi, ch.phi, 0, 0);
        }
        side.sink = b.right();
        for (int val = 0; val < n; ++val) b.edge(side.chains[val].psi, side.sink, 0, 0);
        return side;
    };

    layout->drows.resize(ell);
    layout->dcols.resize(ell);
    for (int i = 0; i < ell; ++i) layout->drows[i] = build_side(false, i);
    for (int j = 0; j < ell; ++j) layout->dcols[j] = build_side(true, j);

    if (b.next_left != b.next_right)
        throw std::logic_error("grid_tiling_to_recovap_dual: sides out of balance");
    layout->n = b.next_left;
    int k = layout->n - kprime;
    if (k < 0) throw std::logic_error("grid_tiling_to_recovap_dual: instance smaller than k'");
    out.instance = Instance(b.next_left, std::move(b.edges), k);
    out.target_k = k;
    out.dual = true;
    out.layout = layout;
    return out;
}

// ---------------------------------------------------------------------------
// Certificates.

namespace {

void add_pair(std::vector<std::pair<int, int>>& m, int l, int r) { m.push_back({l, r}); }

// Alternating edges of the path from0 -- v[0] -- ... -- v.back() -- to0,
// selecting edge positions of the given parity (position 1 is from0--v[0]).
void add_path_alternation(std::vector<std::pair<int, int>>& m, int from, bool from_left,
                          const std::vector<int>& internal, int to, bool odd_positions) {
    int prev = from;
    bool prev_left = from_left;
    int pos = 1;
    for (std::size_t t = 0; t <= internal.size(); ++t, ++pos) {
        int cur = t < internal.size() ? internal[t] : to;
        bool use = odd_positions ? (pos % 2 == 1) : (pos % 2 == 0);
        if (use) {
            if (prev_left)
                add_pair(m, prev, cur);
            else
                add_pair(m, cur, prev);
        }
        prev = cur;
        prev_left = !prev_left;
    }
}

}  // namespace

SolutionPair encode_certificate(const GadgetInstance& gadget, const GridTilingWitness& witness) {
    if (!gadget.layout) throw std::invalid_argument("encode_certificate: gadget has no layout");
    const GadgetLayout& L = *gadget.layout;
    if (!check_grid_tiling_witness(L.gt, witness))
        throw std::invalid_argument("encode_certificate: witness does not satisfy the instance");

    std::vector<std::pair<int, int>> m1, m2;

    if (!L.dual) {
        m1 = L.forced_m1;
        m2 = L.forced_m2;

        // Row world for M1.
        for (int i = 0; i < L.gt.ell; ++i) {
            const PSide& side = L.rows[i];
            int astar = witness.rows[i];
            add_pair(m1, side.sigma, side.chains[astar].rho);
            for (int a = 0; a < L.gt.nvals; ++a) {
                const PChain& ch = side.chains[a];
                if (a != astar) {
                    add_pair(m1, ch.tau, ch.rho);
                    for (const PStage& st : ch.stages) {
                        add_pair(m1, st.par, st.hub);
                        add_pair(m1, st.par2, st.hub2);
                        for (const PTupleSlot& sl : st.slots) {
                            add_pair(m1, sl.x, sl.bar_r);
                            add_pair(m1, sl.bar_l, sl.y);
                        }
                    }
                    add_pair(m1, ch.lambda, ch.theta);
                    continue;
                }
                int prev = ch.tau;
                for (int j = 0; j < L.gt.ell; ++j) {
                    const PStage& st = ch.stages[j];
                    add_pair(m1, prev, st.hub);
                    int want = witness.cols[j];
                    bool taken = false;
                    for (const PTupleSlot& sl : st.slots) {
                        if (sl.other_value == want && !taken) {
                            taken = true;
                            add_pair(m1, st.par, sl.bar_r);
                            add_pair(m1, sl.x, sl.y);
                            add_pair(m1, sl.bar_l, st.hub2);
                        } else {
                            add_pair(m1, sl.x, sl.bar_r);
                            add_pair(m1, sl.bar_l, sl.y);
                        }
                    }
                    if (!taken) throw std::logic_error("encode_certificate: missing tuple slot");
                    prev = st.par2;
                }
                add_pair(m1, prev, ch.theta);
                add_pair(m1, ch.lambda, side.sink);
            }
        }

        // Column world for M2, mirrored.
        for (int j = 0; j < L.gt.ell; ++j) {
            const PSide& side = L.cols[j];
            int bstar = witness.cols[j];
            add_pair(m2, side.chains[bstar].rho, side.sigma);
            for (int bb = 0; bb < L.gt.nvals; ++bb) {
                const PChain& ch = side.chains[bb];
                if (bb != bstar) {
                    add_pair(m2, ch.rho, ch.tau);
                    for (const PStage& st : ch.stages) {
                        add_pair(m2, st.hub, st.par);
                        add_pair(m2, st.hub2, st.par2);
                        for (const PTupleSlot& sl : st.slots) {
                            add_pair(m2, sl.x, sl.bar_r);
                            add_pair(m2, sl.bar_l, sl.y);
                        }
                    }
                    add_pair(m2, ch.theta, ch.lambda);
                    continue;
                }
                int prev = ch.tau;
                for (int i = 0; i < L.gt.ell; ++i) {
                    const PStage& st = ch.stages[i];
                    add_pair(m2, st.hub, prev);
                    int want = witness.rows[i];
                    bool taken = false;
                    for (const PTupleSlot& sl : st.slots) {
                        if (sl.other_value == want && !taken) {
                            taken = true;
                            add_pair(m2, sl.bar_l, st.par);
                            add_pair(m2, sl.x, sl.y);
                            add_pair(m2, st.hub2, sl.bar_r);
                        } else {
                            add_pair(m2, sl.bar_l, sl.y);
                            add_pair(m2, sl.x, sl.bar_r);
                        }
                    }
                    if (!taken) throw std::logic_error("encode_certificate: missing tuple slot");
                    prev = st.par2;
                }
                add_pair(m2, ch.theta, prev);
                add_pair(m2, side.sink, ch.lambda);
            }
        }
    } else {
        // Dual: both matchings share every (0,0) choice; they split only on
        // the selected gadgets' 4-cycles.
        std::vector<char> gadget_selected(L.gadgets.size(), 0);
        for (int i = 0; i < L.gt.ell; ++i)
            for (int j = 0; j < L.gt.ell; ++j)
                gadget_selected[L.gadget_of.at({i, j, witness.rows[i], witness.cols[j]})] = 1;

        std::vector<std::pair<int, int>> both;

        auto leg_edges = [&](const DSide& side, const DChain& ch, bool selected) {
            // Edge t (1-based) joins w_{t-1} and w_t with w_0 = sigma; the
            // selected leg uses odd positions, others even.
            int prev = side.sigma;
            bool prev_left = true;
            for (std::size_t t = 0; t < ch.leg.size(); ++t) {
                int cur = ch.leg[t];
                int pos = static_cast<int>(t) + 1;
                bool use = selected ? (pos % 2 == 1) : (pos % 2 == 0);
                if (use) {
                    if (prev_left)
                        add_pair(both, prev, cur);
                    else
                        add_pair(both, cur, prev);
                }
                prev = cur;
                prev_left = !prev_left;
            }
        };

        auto chain_edges = [&](const DSide& side, int val, bool is_col, bool selected) {
            const DChain& ch = side.chains[val];
            leg_edges(side, ch, selected);
            int head = ch.leg.back();
            for (int cell = 0; cell < static_cast<int>(ch.stages.size()); ++cell) {
                const DStage& st = ch.stages[cell];
                if (!selected) {
                    add_pair(both, st.par, st.hub);
                    add_pair(both, st.par2, st.hub2);
                } else {
                    add_pair(both, head, st.hub);
                    int want = is_col ? witness.rows[cell] : witness.cols[cell];
                    int found = -1;
                    for (std::size_t s = 0; s < st.gadget_ids.size(); ++s)
                        if (st.gadget_other_value[s] == want) {
                            found = st.gadget_ids[s];
                            break;
                        }
                    if (found < 0) throw std::logic_error("encode_certificate: missing gadget");
                    const DGadget& g = L.gadgets[found];
                    if (is_col) {
                        add_pair(both, st.par, g.t3);
                        add_pair(both, g.b3, st.hub2);
                    } else {
                        add_pair(both, st.par, g.l3);
                        add_pair(both, g.r3, st.hub2);
                    }
                }
                head = st.par2;
            }
            if (selected) {
                add_pair(both, head, ch.phi);
                add_pair(both, ch.psi, side.sink);
            } else {
                add_pair(both, ch.psi, ch.phi);
            }
        };

        for (int i = 0; i < L.gt.ell; ++i)
            for (int val = 0; val < L.gt.nvals; ++val)
                chain_edges(L.drows[i], val, false, val == witness.rows[i]);
        for (int j = 0; j < L.gt.ell; ++j)
            for (int val = 0; val < L.gt.nvals; ++val)
                chain_edges(L.dcols[j], val, true, val == witness.cols[j]);

        for (std::size_t gid = 0; gid < L.gadgets.size(); ++gid) {
            const DGadget& g = L.gadgets[gid];
            if (!gadget_selected[gid]) {
                add_pair(both, g.l2, g.l3);
                add_pair(both, g.t2, g.t3);
                add_pair(both, g.r3, g.r2);
                add_pair(both, g.b3, g.b2);
                // Long paths cover both endpoints.
                add_path_alternation(both, g.l, false, g.central, g.r, true);
                add_path_alternation(both, g.tl, false, g.curve, g.br, true);
            } else {
                // Interfaces are covered by the chains; interiors pair up.
                add_path_alternation(both, g.l, false, g.central, g.r, false);
                add_path_alternation(both, g.tl, false, g.curve, g.br, false);
                add_pair(m1, g.t2, g.l);
                add_pair(m1, g.l2, g.tl);
                add_pair(m2, g.l2, g.l);
                add_pair(m2, g.t2, g.tl);
                add_pair(m1, g.r, g.b2);
                add_pair(m1, g.br, g.r2);
                add_pair(m2, g.r, g.r2);
                add_pair(m2, g.br, g.b2);
            }
        }

        for (auto& pr : both) {
            m1.push_back(pr);
            m2.push_back(pr);
        }
    }

    SolutionPair pair = SolutionPair::make(gadget.instance, Matching(std::move(m1)),
                                           Matching(std::move(m2)));
    return pair;
}

GridTilingWitness decode_certificate(const GadgetInstance& gadget, const SolutionPair& pair) {
    if (!gadget.layout) throw std::invalid_argument("decode_certificate: gadget has no layout");
    const GadgetLayout& L = *gadget.layout;
    ValidationReport rep = validate_solution(gadget.instance, pair);
    if (!rep.feasible)
        throw std::invalid_argument("decode_certificate: pair is not feasible: " +
                                    rep.first_violation);
    if (!(rep.cost == Cost(0)))
        throw std::invalid_argument("decode_certificate: pair has cost " + rep.cost.str() +
                                    ", expected 0");

    GridTilingWitness w;
    w.rows.assign(L.gt.ell, -1);
    w.cols.assign(L.gt.ell, -1);
    for (auto& [key, edge] : gadget.selection_index) {
        auto [is_col, index, val] = key;
        const Matching& m = is_col ? pair.m2 : pair.m1;
        if (m.contains(edge.first, edge.second)) {
            auto& slot = is_col ? w.cols[index] : w.rows[index];
            if (slot != -1)
                throw std::invalid_argument("decode_certificate: two values selected at one "
                                            "selector");
            slot = val;
        }
    }
    for (int i = 0; i < L.gt.ell; ++i)
        if (w.rows[i] < 0)
            throw std::invalid_argument("decode_certificate: row " + std::to_string(i + 1) +
                                        " has no selected value");
    for (int j = 0; j < L.gt.ell; ++j)
        if (w.cols[j] < 0)
            throw std::invalid_argument("decode_certificate: column " + std::to_string(j + 1) +
                                        " has no selected value");
    if (!check_grid_tiling_witness(L.gt, w))
        throw std::invalid_argument("decode_certificate: decoded selection violates a cell");
    return w;
}

std::optional<SolutionPair> find_zero_cost_pair(const Instance& inst, std::uint64_t node_budget,
                                                std::uint64_t pair_budget) {
    OracleLimits lim;
    lim.max_n = inst.n();  // sparse zero-cost subgraphs; the node budget guards
    lim.max_nodes = node_budget;

    std::vector<Edge> zero1, zero2;
    for (const Edge& e : inst.edges()) {
        if (e.c1 == Cost(0)) zero1.push_back({e.i, e.j, Cost(0), e.c2});
        if (e.c2 == Cost(0)) zero2.push_back({e.i, e.j, e.c1, Cost(0)});
    }
    if (zero1.empty() || zero2.empty()) return std::nullopt;

    Instance g1(inst.n(), zero1, 0), g2(inst.n(), zero2, 0);
    std::vector<Matching> a = all_perfect_matchings(g1, lim);
    if (a.empty()) return std::nullopt;
    std::vector<Matching> bms = all_perfect_matchings(g2, lim);
    if (bms.empty()) return std::nullopt;

    if (static_cast<std::uint64_t>(a.size()) * bms.size() > pair_budget)
        throw GuardExceeded("find_zero_cost_pair: pair scan exceeds budget");
    for (const Matching& ma : a)
        for (const Matching& mb : bms)
            if (intersection_size(ma, mb) >= inst.k()) {
                SolutionPair p = SolutionPair::make(inst, ma, mb);
                return p;
            }
    return std::nullopt;
}

}  // namespace recovap
