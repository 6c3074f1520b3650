#include "qmk/graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <thread>

namespace qmk {

const char* rigidity_name(RigidityClass c) {
    switch (c) {
        case RigidityClass::SuperRigid: return "super-rigid";
        case RigidityClass::Rigid: return "rigid";
        case RigidityClass::NonRigid: return "non-rigid";
    }
    return "?";
}

bool is_connected(const MultiGraph& g) {
    if (g.n <= 0) return false;
    std::vector<char> seen((size_t)g.n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u = 0; u < g.n; ++u) {
            if (u == v || seen[(size_t)u] || g.at(v, u) == 0) continue;
            seen[(size_t)u] = 1;
            ++reached;
            stack.push_back(u);
        }
    }
    return reached == g.n;
}

int edge_count(const MultiGraph& g) {
    int total = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = i; j < g.n; ++j) total += g.at(i, j);
    return total;
}

int generalized_cycle_count(const MultiGraph& g) {
    if (!is_connected(g)) throw Error(ErrorCode::DisconnectedGraph, "cycle count needs a connected graph");
    int sum = 0;
    for (int i = 0; i < g.n; ++i) {
        sum += g.at(i, i) / 2;
        for (int j = i + 1; j < g.n; ++j) sum += g.at(i, j);
    }
    return sum - g.n + 1;
}

RigidityClass classify_rigidity(const MultiGraph& g) {
    int L = generalized_cycle_count(g);
    if (L == 0) return RigidityClass::SuperRigid;
    if (L == 1) return RigidityClass::Rigid;
    return RigidityClass::NonRigid;
}

MultiGraph underlying_simply_laced(const MultiGraph& g) {
    MultiGraph s(g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.at(i, j) > 0) s.set(i, j, 1);
    return s;
}

bool is_generalized_tree(const MultiGraph& g) {
    return is_connected(g) && generalized_cycle_count(g) == 0;
}

std::vector<Component> connected_components(const MultiGraph& g) {
    std::vector<Component> out;
    std::vector<char> seen((size_t)g.n, 0);
    for (int start = 0; start < g.n; ++start) {
        if (seen[(size_t)start]) continue;
        std::vector<int> verts{start};
        seen[(size_t)start] = 1;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u = 0; u < g.n; ++u) {
                if (u == v || seen[(size_t)u] || g.at(v, u) == 0) continue;
                seen[(size_t)u] = 1;
                verts.push_back(u);
                stack.push_back(u);
            }
        }
        std::sort(verts.begin(), verts.end());
        MultiGraph sub((int)verts.size());
        for (size_t a = 0; a < verts.size(); ++a)
            for (size_t b = a; b < verts.size(); ++b)
                sub.set((int)a, (int)b, g.at(verts[a], verts[b]));
        out.push_back({std::move(sub), std::move(verts)});
    }
    return out;
}

MultiGraph apply_permutation(const MultiGraph& g, const std::vector<int>& perm) {
    MultiGraph r(g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = i; j < g.n; ++j) r.set(i, j, g.at(perm[(size_t)i], perm[(size_t)j]));
    return r;
}

std::string canonical_form(const MultiGraph& g) {
    if (g.n > 9)
        throw Error(ErrorCode::SizeLimitExceeded, "canonical form capped at 9 vertices");
    std::vector<int> perm((size_t)g.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    do {
        std::vector<int> flat;
        flat.reserve((size_t)(g.n * (g.n + 1) / 2));
        for (int i = 0; i < g.n; ++i)
            for (int j = i; j < g.n; ++j) flat.push_back(g.at(perm[(size_t)i], perm[(size_t)j]));
        if (best.empty() || flat < best) best = std::move(flat);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::ostringstream os;
    os << g.n << ':';
    for (int v : best) os << v << ',';
    return os.str();
}

namespace {

// Connected simple graphs with exactly `edges` edges, up to isomorphism.
std::vector<MultiGraph> simple_connected_with_edges(int n, int edges) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<MultiGraph> out;
    std::vector<std::string> seen;
    if (edges == 0) {
        if (n == 1) out.push_back(MultiGraph(1));
        return out;
    }
    if (edges > (int)pairs.size()) return out;
    std::vector<int> comb((size_t)edges);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
        MultiGraph g(n);
        for (int k : comb) g.set(pairs[(size_t)k].first, pairs[(size_t)k].second, 1);
        if (is_connected(g)) {
            std::string key = canonical_form(g);
            if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
                seen.push_back(key);
                out.push_back(g);
            }
        }
        int i = edges - 1;
        while (i >= 0 && comb[(size_t)i] == (int)pairs.size() - edges + i) --i;
        if (i < 0) break;
        ++comb[(size_t)i];
        for (int j = i + 1; j < edges; ++j) comb[(size_t)j] = comb[(size_t)j - 1] + 1;
    }
    return out;
}

void push_unique(std::vector<MultiGraph>& out, std::vector<std::string>& keys,
                 const MultiGraph& g) {
    std::string key = canonical_form(g);
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it != keys.end() && *it == key) return;
    size_t pos = (size_t)(it - keys.begin());
    keys.insert(it, key);
    out.insert(out.begin() + (long)pos, g);
}

} // namespace

std::vector<MultiGraph> enumerate_graphs(int n, RigidityClass cls) {
    if (n < 1 || n > 6) throw Error(ErrorCode::SizeLimitExceeded, "enumeration capped at 6 vertices");
    if (cls == RigidityClass::NonRigid)
        throw Error(ErrorCode::UnsupportedClass, "infinitely many non-rigid graphs");
    std::vector<MultiGraph> out;
    std::vector<std::string> keys;
    auto trees = simple_connected_with_edges(n, n - 1);
    if (cls == RigidityClass::SuperRigid) {
        // tree + any pattern of single self-loops
        for (const auto& t : trees) {
            for (int pat = 0; pat < (1 << n); ++pat) {
                MultiGraph g = t;
                for (int v = 0; v < n; ++v)
                    if (pat & (1 << v)) g.set(v, v, 1);
                push_unique(out, keys, g);
            }
        }
        return out;
    }
    // Rigid, three shapes with L = 1:
    // (a) tree + one vertex with 2 or 3 self-loops, single loops elsewhere
    for (const auto& t : trees) {
        for (int heavy = 0; heavy < n; ++heavy) {
            for (int hv = 2; hv <= 3; ++hv) {
                for (int pat = 0; pat < (1 << n); ++pat) {
                    if (pat & (1 << heavy)) continue;
                    MultiGraph g = t;
                    g.set(heavy, heavy, hv);
                    for (int v = 0; v < n; ++v)
                        if (pat & (1 << v)) g.set(v, v, 1);
                    push_unique(out, keys, g);
                }
            }
        }
    }
    // (b) tree with one edge doubled, single loops anywhere
    for (const auto& t : trees) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (t.at(i, j) != 1) continue;
                for (int pat = 0; pat < (1 << n); ++pat) {
                    MultiGraph g = t;
                    g.set(i, j, 2);
                    for (int v = 0; v < n; ++v)
                        if (pat & (1 << v)) g.set(v, v, 1);
                    push_unique(out, keys, g);
                }
            }
        }
    }
    // (c) unicyclic simple graph (n vertices, n edges), single loops anywhere
    for (const auto& u : simple_connected_with_edges(n, n)) {
        for (int pat = 0; pat < (1 << n); ++pat) {
            MultiGraph g = u;
            for (int v = 0; v < n; ++v)
                if (pat & (1 << v)) g.set(v, v, 1);
            push_unique(out, keys, g);
        }
    }
    for (const auto& g : out)
        if (generalized_cycle_count(g) != 1)
            throw std::logic_error("enumeration produced a graph with wrong cycle count");
    return out;
}

std::vector<MultiGraph> enumerate_connected_multigraphs(int n, int max_entry) {
    if (n < 1 || n > 4) throw Error(ErrorCode::SizeLimitExceeded, "exhaustive scan capped at 4 vertices");
    int slots = n * (n + 1) / 2;
    long total = 1;
    for (int i = 0; i < slots; ++i) total *= (max_entry + 1);
    std::vector<MultiGraph> out;
    std::vector<std::string> keys;
    for (long code = 0; code < total; ++code) {
        long c = code;
        MultiGraph g(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                g.set(i, j, (int)(c % (max_entry + 1)));
                c /= (max_entry + 1);
            }
        if (!is_connected(g)) continue;
        push_unique(out, keys, g);
    }
    return out;
}

// ---- input / output ----------------------------------------------------------

MultiGraph parse_graph_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    MultiGraph g;
    bool have_n = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        std::istringstream ls(stripped);
        std::string first;
        if (!(ls >> first)) continue;
        if (!have_n) {
            int n;
            if (first != "n" || !(ls >> n) || n < 1)
                throw Error(ErrorCode::ParseError,
                            "line " + std::to_string(lineno) + ": expected 'n <vertex_count>'");
            g = MultiGraph(n);
            have_n = true;
            continue;
        }
        int i, j, m;
        std::istringstream ls2(stripped);
        if (!(ls2 >> i >> j >> m) || i < 0 || j < 0 || i >= g.n || j >= g.n || m < 0 || i > j)
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(lineno) + ": expected '<i> <j> <mult>' with 0 <= i <= j < n");
        g.set(i, j, m);
    }
    if (!have_n) throw Error(ErrorCode::ParseError, "missing 'n <vertex_count>' header");
    return g;
}

std::string graph_to_text(const MultiGraph& g) {
    std::ostringstream os;
    os << "n " << g.n << "\n";
    for (int i = 0; i < g.n; ++i)
        for (int j = i; j < g.n; ++j)
            if (g.at(i, j) > 0) os << i << " " << j << " " << g.at(i, j) << "\n";
    return os.str();
}

MultiGraph parse_graph_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!doc.is_object() || !doc.contains("vertex_count") || !doc.contains("mult"))
        throw Error(ErrorCode::ParseError, "expected object with 'vertex_count' and 'mult'");
    int n = doc["vertex_count"].get<int>();
    if (n < 1) throw Error(ErrorCode::ParseError, "vertex_count must be positive");
    auto& rows = doc["mult"];
    if (!rows.is_array() || (int)rows.size() != n)
        throw Error(ErrorCode::ParseError, "'mult' must be an n x n array");
    MultiGraph g(n);
    for (int i = 0; i < n; ++i) {
        if (!rows[(size_t)i].is_array() || (int)rows[(size_t)i].size() != n)
            throw Error(ErrorCode::ParseError, "'mult' must be an n x n array");
        for (int j = 0; j < n; ++j) {
            int m = rows[(size_t)i][(size_t)j].get<int>();
            if (m < 0) throw Error(ErrorCode::ParseError, "multiplicities must be nonnegative");
            g.mult[(size_t)(i * n + j)] = m;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.at(i, j) != g.at(j, i))
                throw Error(ErrorCode::ParseError, "'mult' must be symmetric");
    return g;
}

std::string graph_to_json(const MultiGraph& g) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < g.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < g.n; ++j) row.push_back(g.at(i, j));
        rows.push_back(std::move(row));
    }
    nlohmann::json doc{{"vertex_count", g.n}, {"mult", std::move(rows)}};
    return doc.dump(2);
}

MultiGraph parse_graph_auto(const std::string& text) {
    for (char ch : text) {
        if (isspace((unsigned char)ch)) continue;
        if (ch == '{') return parse_graph_json(text);
        break;
    }
    return parse_graph_text(text);
}

std::string graph_to_dot(const MultiGraph& g) {
    std::ostringstream os;
    os << "graph G {\n";
    for (int i = 0; i < g.n; ++i) os << "  v" << i << ";\n";
    for (int i = 0; i < g.n; ++i) {
        for (int k = 0; k < g.at(i, i); ++k) os << "  v" << i << " -- v" << i << ";\n";
        for (int j = i + 1; j < g.n; ++j)
            for (int k = 0; k < g.at(i, j); ++k) os << "  v" << i << " -- v" << j << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::string graph_brief(const MultiGraph& g) {
    std::ostringstream os;
    os << "|I|=" << g.n;
    bool any = false;
    for (int i = 0; i < g.n; ++i)
        for (int j = i; j < g.n; ++j)
            if (g.at(i, j) > 0) {
                os << (any ? "," : " ") << i << "-" << j;
                if (g.at(i, j) > 1) os << "x" << g.at(i, j);
                any = true;
            }
    if (!any) os << " empty";
    return os.str();
}

void parallel_chunks(size_t count, const std::function<void(size_t)>& fn) {
    unsigned workers = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("QMK_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 256) workers = (unsigned)v;
    }
    if (workers <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    unsigned spawn = std::min<size_t>(workers, count);
    pool.reserve(spawn);
    for (unsigned w = 0; w < spawn; ++w)
        pool.emplace_back([&]() {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

} // namespace qmk
