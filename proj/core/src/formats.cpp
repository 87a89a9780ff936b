#include "recovap/formats.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace recovap {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
}

Cost parse_cost(int line, const std::string& tok) {
    if (tok == "inf") return Cost::inf();
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) fail(line, "bad cost '" + tok + "'");
        return Cost(v);
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        fail(line, "bad cost '" + tok + "'");
    }
}

long long parse_int(int line, const std::string& tok, const char* what) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) fail(line, std::string("bad ") + what + " '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        fail(line, std::string("bad ") + what + " '" + tok + "'");
    }
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

}  // namespace

Instance parse_instance(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long n = -1, m = -1, k = -1;
    std::vector<Edge> edges;
    std::set<std::pair<int, int>> seen;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = tokens(line);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (n >= 0) fail(lineno, "duplicate header");
            if (tok.size() != 5 || tok[1] != "recovap") fail(lineno, "expected 'p recovap n m k'");
            n = parse_int(lineno, tok[2], "n");
            m = parse_int(lineno, tok[3], "m");
            k = parse_int(lineno, tok[4], "k");
            if (n < 1) fail(lineno, "n must be >= 1");
            if (k < 0 || k > n) fail(lineno, "k must be in 0..n");
        } else if (tok[0] == "e") {
            if (n < 0) fail(lineno, "edge before header");
            if (tok.size() != 5) fail(lineno, "expected 'e i j c1 c2'");
            long long i = parse_int(lineno, tok[1], "index");
            long long j = parse_int(lineno, tok[2], "index");
            if (i < 1 || i > n || j < 1 || j > n) fail(lineno, "edge index out of range 1..n");
            Cost c1 = parse_cost(lineno, tok[3]);
            Cost c2 = parse_cost(lineno, tok[4]);
            if (c1.is_inf() && c2.is_inf()) fail(lineno, "edge with both costs inf");
            if (!seen.insert({(int)i, (int)j}).second) fail(lineno, "duplicate edge");
            edges.push_back({(int)i - 1, (int)j - 1, c1, c2});
        } else {
            fail(lineno, "unknown record '" + tok[0] + "'");
        }
    }
    if (n < 0) fail(lineno, "missing 'p recovap' header");
    if (m != static_cast<long long>(edges.size()))
        fail(lineno, "header promises " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
    return Instance((int)n, std::move(edges), (int)k);
}

void serialize_instance(std::ostream& out, const Instance& inst) {
    out << "p recovap " << inst.n() << " " << inst.edges().size() << " " << inst.k() << "\n";
    for (const Edge& e : inst.edges())
        out << "e " << e.i + 1 << " " << e.j + 1 << " " << e.c1.str() << " " << e.c2.str() << "\n";
}

SolutionPair parse_solution(std::istream& in, const Instance& inst) {
    std::string line;
    int lineno = 0;
    bool have_cost = false;
    std::vector<std::pair<int, int>> m1, m2;
    std::set<std::pair<int, int>> seen1, seen2;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = tokens(line);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "s") {
            if (tok.size() != 2) fail(lineno, "expected 's cost'");
            parse_cost(lineno, tok[1]);
            have_cost = true;
        } else if (tok[0] == "m1" || tok[0] == "m2") {
            if (tok.size() != 3) fail(lineno, "expected 'm1|m2 i j'");
            long long i = parse_int(lineno, tok[1], "index");
            long long j = parse_int(lineno, tok[2], "index");
            if (i < 1 || i > inst.n() || j < 1 || j > inst.n())
                fail(lineno, "index out of range 1..n");
            auto& seen = tok[0] == "m1" ? seen1 : seen2;
            if (!seen.insert({(int)i, (int)j}).second) fail(lineno, "duplicate edge");
            (tok[0] == "m1" ? m1 : m2).push_back({(int)i - 1, (int)j - 1});
        } else {
            fail(lineno, "unknown record '" + tok[0] + "'");
        }
    }
    if (!have_cost) fail(lineno, "missing 's' record");
    return SolutionPair::make(inst, Matching(std::move(m1)), Matching(std::move(m2)));
}

void serialize_solution(std::ostream& out, const SolutionPair& pair) {
    out << "s " << pair.cost.str() << "\n";
    for (auto& [i, j] : pair.m1.pairs()) out << "m1 " << i + 1 << " " << j + 1 << "\n";
    for (auto& [i, j] : pair.m2.pairs()) out << "m2 " << i + 1 << " " << j + 1 << "\n";
}

ExactMatchingInstance parse_exact(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long nl = -1, nr = -1, m = -1, k = -1;
    ExactMatchingInstance g;
    std::map<std::pair<int, int>, int> index;
    std::vector<std::pair<int, std::pair<int, int>>> red_marks;  // line, edge
    bool any_cost = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = tokens(line);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (nl >= 0) fail(lineno, "duplicate header");
            if (tok.size() != 6 || tok[1] != "exact") fail(lineno, "expected 'p exact nL nR m k'");
            nl = parse_int(lineno, tok[2], "nL");
            nr = parse_int(lineno, tok[3], "nR");
            m = parse_int(lineno, tok[4], "m");
            k = parse_int(lineno, tok[5], "k");
            if (nl < 0 || nr < 0) fail(lineno, "side sizes must be >= 0");
        } else if (tok[0] == "e") {
            if (nl < 0) fail(lineno, "edge before header");
            if (tok.size() != 3 && tok.size() != 4) fail(lineno, "expected 'e i j [cost]'");
            long long i = parse_int(lineno, tok[1], "index");
            long long j = parse_int(lineno, tok[2], "index");
            if (i < 1 || i > nl || j < 1 || j > nr) fail(lineno, "edge index out of range");
            if (index.count({(int)i - 1, (int)j - 1})) fail(lineno, "duplicate edge");
            ExactMatchingInstance::EmEdge e;
            e.i = (int)i - 1;
            e.j = (int)j - 1;
            if (tok.size() == 4) {
                e.cost = parse_int(lineno, tok[3], "cost");
                any_cost = true;
            }
            index[{e.i, e.j}] = static_cast<int>(g.edges.size());
            g.edges.push_back(e);
        } else if (tok[0] == "r") {
            if (tok.size() != 3) fail(lineno, "expected 'r i j'");
            long long i = parse_int(lineno, tok[1], "index");
            long long j = parse_int(lineno, tok[2], "index");
            red_marks.push_back({lineno, {(int)i - 1, (int)j - 1}});
        } else {
            fail(lineno, "unknown record '" + tok[0] + "'");
        }
    }
    if (nl < 0) fail(lineno, "missing 'p exact' header");
    if (m != static_cast<long long>(g.edges.size()))
        fail(lineno, "header promises " + std::to_string(m) + " edges, found " +
                         std::to_string(g.edges.size()));
    g.n_left = (int)nl;
    g.n_right = (int)nr;
    g.k = (int)k;
    g.has_costs = any_cost;
    for (auto& [ln, e] : red_marks) {
        auto it = index.find(e);
        if (it == index.end()) fail(ln, "red mark on a non-edge");
        g.edges[it->second].red = true;
    }
    return g;
}

void serialize_exact(std::ostream& out, const ExactMatchingInstance& g) {
    out << "p exact " << g.n_left << " " << g.n_right << " " << g.edges.size() << " " << g.k
        << "\n";
    for (const auto& e : g.edges) {
        out << "e " << e.i + 1 << " " << e.j + 1;
        if (g.has_costs) out << " " << e.cost;
        out << "\n";
    }
    for (const auto& e : g.edges)
        if (e.red) out << "r " << e.i + 1 << " " << e.j + 1 << "\n";
}

GridTilingInstance parse_grid_tiling(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long ell = -1, n = -1;
    GridTilingInstance gt;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = tokens(line);
        if (tok.empty()) continue;
        if (tok[0] == "p") {
            if (ell >= 0) fail(lineno, "duplicate header");
            if (tok.size() != 4 || tok[1] != "gt") fail(lineno, "expected 'p gt ell n'");
            ell = parse_int(lineno, tok[2], "ell");
            n = parse_int(lineno, tok[3], "n");
            if (ell < 1 || n < 0) fail(lineno, "bad dimensions");
            gt = GridTilingInstance::make((int)ell, (int)n);
        } else if (tok[0] == "c") {
            if (ell < 0) fail(lineno, "cell before header");
            if (tok.size() < 3 || tok.size() % 2 == 0)
                fail(lineno, "expected 'c i j a1 b1 [a2 b2 ...]'");
            long long i = parse_int(lineno, tok[1], "row");
            long long j = parse_int(lineno, tok[2], "column");
            if (i < 1 || i > ell || j < 1 || j > ell) fail(lineno, "cell index out of range");
            for (std::size_t t = 3; t + 1 < tok.size(); t += 2) {
                long long a = parse_int(lineno, tok[t], "value");
                long long b = parse_int(lineno, tok[t + 1], "value");
                if (a < 1 || a > n || b < 1 || b > n) fail(lineno, "tuple value out of range 1..n");
                gt.cells[i - 1][j - 1].push_back({(int)a - 1, (int)b - 1});
            }
            auto& cell = gt.cells[i - 1][j - 1];
            std::sort(cell.begin(), cell.end());
            if (std::adjacent_find(cell.begin(), cell.end()) != cell.end())
                fail(lineno, "duplicate tuple in cell");
        } else {
            fail(lineno, "unknown record '" + tok[0] + "'");
        }
    }
    if (ell < 0) fail(lineno, "missing 'p gt' header");
    return gt;
}

void serialize_grid_tiling(std::ostream& out, const GridTilingInstance& gt) {
    out << "p gt " << gt.ell << " " << gt.nvals << "\n";
    for (int i = 0; i < gt.ell; ++i)
        for (int j = 0; j < gt.ell; ++j) {
            if (gt.cells[i][j].empty()) continue;
            out << "c " << i + 1 << " " << j + 1;
            for (auto& [a, b] : gt.cells[i][j]) out << " " << a + 1 << " " << b + 1;
            out << "\n";
        }
}

namespace {

int parse_td_vertex(int lineno, const std::string& tok, int n) {
    if (tok.size() < 2 || (tok[0] != 'u' && tok[0] != 'v')) fail(lineno, "vertex must be uK or vK");
    long long idx = parse_int(lineno, tok.substr(1), "vertex index");
    if (idx < 1 || idx > n) fail(lineno, "vertex index out of range");
    return tok[0] == 'u' ? (int)idx - 1 : n + (int)idx - 1;
}

}  // namespace

TreeDecomposition parse_tree_decomposition(std::istream& in, const Instance& inst) {
    std::string line;
    int lineno = 0;
    bool have_header = false;
    std::map<long long, int> id_of;
    std::vector<std::vector<int>> bags;
    std::vector<std::pair<int, int>> tree_edges;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = tokens(line);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "td") {
            if (have_header) fail(lineno, "duplicate header");
            if (tok.size() != 2) fail(lineno, "expected 'td width'");
            have_header = true;
        } else if (tok[0] == "b") {
            if (tok.size() < 2) fail(lineno, "expected 'b id vertices...'");
            long long id = parse_int(lineno, tok[1], "bag id");
            if (id_of.count(id)) fail(lineno, "duplicate bag id");
            id_of[id] = static_cast<int>(bags.size());
            std::vector<int> bag;
            for (std::size_t t = 2; t < tok.size(); ++t)
                bag.push_back(parse_td_vertex(lineno, tok[t], inst.n()));
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            bags.push_back(std::move(bag));
        } else if (tok[0] == "t") {
            if (tok.size() != 3) fail(lineno, "expected 't id1 id2'");
            long long a = parse_int(lineno, tok[1], "bag id");
            long long b = parse_int(lineno, tok[2], "bag id");
            if (!id_of.count(a) || !id_of.count(b)) fail(lineno, "tree edge on unknown bag");
            tree_edges.push_back({id_of[a], id_of[b]});
        } else {
            fail(lineno, "unknown record '" + tok[0] + "'");
        }
    }
    if (!have_header) fail(lineno, "missing 'td' header");
    if (bags.empty()) fail(lineno, "no bags");

    TreeDecomposition td;
    td.nodes.resize(bags.size());
    for (std::size_t t = 0; t < bags.size(); ++t) td.nodes[t].bag = bags[t];
    // Orient the tree from node 0 by BFS.
    std::vector<std::vector<int>> adj(bags.size());
    for (auto& [a, b] : tree_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    td.root = 0;
    std::vector<char> seen(bags.size(), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int cur = queue[qi];
        for (int nx : adj[cur]) {
            if (seen[nx]) continue;
            seen[nx] = 1;
            td.nodes[nx].parent = cur;
            td.nodes[cur].children.push_back(nx);
            queue.push_back(nx);
        }
    }
    for (std::size_t t = 0; t < bags.size(); ++t)
        if (!seen[t]) fail(lineno, "decomposition tree is disconnected");
    return td;
}

void serialize_tree_decomposition(std::ostream& out, const TreeDecomposition& td, int n) {
    out << "td " << td.width() << "\n";
    for (std::size_t t = 0; t < td.nodes.size(); ++t) {
        out << "b " << t + 1;
        for (int v : td.nodes[t].bag)
            out << " " << (v < n ? "u" + std::to_string(v + 1) : "v" + std::to_string(v - n + 1));
        out << "\n";
    }
    for (std::size_t t = 0; t < td.nodes.size(); ++t)
        if (td.nodes[t].parent >= 0) out << "t " << td.nodes[t].parent + 1 << " " << t + 1 << "\n";
}

namespace {

template <typename T, typename F>
T load_with(const std::string& path, F parse) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    try {
        return parse(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace

Instance load_instance(const std::string& path) {
    return load_with<Instance>(path, [](std::istream& in) { return parse_instance(in); });
}

ExactMatchingInstance load_exact(const std::string& path) {
    return load_with<ExactMatchingInstance>(path, [](std::istream& in) { return parse_exact(in); });
}

GridTilingInstance load_grid_tiling(const std::string& path) {
    return load_with<GridTilingInstance>(path,
                                         [](std::istream& in) { return parse_grid_tiling(in); });
}

}  // namespace recovap
