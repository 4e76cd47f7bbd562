#include "flaglab/graph.hpp"

#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace flaglab {

Graph Graph::sample_gnp(int n, double p, Seed seed) {
    if (n < 0) throw std::invalid_argument("sample_gnp: negative vertex count");
    if (!(p >= 0.0 && p <= 1.0) && !std::isnan(p))
        throw std::invalid_argument("sample_gnp: p outside [0,1]");
    if (std::isnan(p)) throw std::invalid_argument("sample_gnp: p is NaN");

    Graph g(n);
    const std::int64_t pairs = std::int64_t(n) * (n - 1) / 2;
    if (pairs == 0 || p <= 0.0) return g;
    if (p >= 1.0) return Graph::complete(n);

    // Pairs are linearized in row-major upper-triangular order; gaps between
    // successive edges are geometric with parameter p.
    // Row u holds pairs (u, u+1)..(u, n-1) and starts at u*(n-1) - u*(u-1)/2.
    auto row_start = [n](std::int64_t r) { return r * (n - 1) - r * (r - 1) / 2; };
    auto pair_at = [&](std::int64_t idx) {
        int lo = 0, hi = n - 2;
        while (lo < hi) {
            int mid = (lo + hi + 1) / 2;
            if (row_start(mid) <= idx) lo = mid;
            else hi = mid - 1;
        }
        int v = int(idx - row_start(lo)) + lo + 1;
        return std::pair<int, int>{lo, v};
    };

    Rng rng(seed);
    const double log1mp = std::log1p(-p);
    std::int64_t idx = -1;
    while (true) {
        // Geometric skip: number of misses before the next edge.
        double u01 = rng.uniform_pos();
        double skip = std::floor(std::log(u01) / log1mp);
        if (skip >= double(pairs)) break;  // guards overflow on tiny p
        idx += 1 + std::int64_t(skip);
        if (idx >= pairs) break;
        auto [a, b] = pair_at(idx);
        g.add_edge(a, b);
    }
    return g;
}

Graph Graph::complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph Graph::cycle(int n) {
    if (n < 3) throw std::invalid_argument("Graph::cycle: need n >= 3");
    Graph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

Graph Graph::path(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

int Graph::min_degree() const {
    if (n_ == 0) throw std::logic_error("min_degree: empty graph");
    int d = degree_[0];
    for (int v = 1; v < n_; ++v) d = std::min(d, degree_[v]);
    return d;
}

std::vector<int> Graph::neighbors(int v) const {
    check_vertex(v);
    std::vector<int> out;
    out.reserve(degree_[v]);
    const std::uint64_t* r = bits_.data() + std::size_t(v) * words_;
    for (int w = 0; w < words_; ++w) {
        std::uint64_t bitsw = r[w];
        while (bitsw) {
            int b = std::countr_zero(bitsw);
            out.push_back(w * 64 + b);
            bitsw &= bitsw - 1;
        }
    }
    return out;
}

std::vector<int> Graph::common_neighbors(std::span<const int> verts) const {
    if (verts.empty()) {
        std::vector<int> out(n_);
        for (int v = 0; v < n_; ++v) out[v] = v;
        return out;
    }
    std::vector<std::uint64_t> acc(row(verts[0]).begin(), row(verts[0]).end());
    for (std::size_t i = 1; i < verts.size(); ++i) {
        auto r = row(verts[i]);
        for (int w = 0; w < words_; ++w) acc[w] &= r[w];
    }
    std::vector<int> out;
    for (int w = 0; w < words_; ++w) {
        std::uint64_t bitsw = acc[w];
        while (bitsw) {
            int b = std::countr_zero(bitsw);
            out.push_back(w * 64 + b);
            bitsw &= bitsw - 1;
        }
    }
    return out;
}

bool Graph::is_connected() const {
    if (n_ == 0) throw std::logic_error("is_connected: empty graph");
    return component_count() == 1;
}

int Graph::component_count() const {
    if (n_ == 0) return 0;
    std::vector<std::uint64_t> seen(words_, 0);
    std::vector<int> stack;
    int components = 0;
    for (int s = 0; s < n_; ++s) {
        if ((seen[s >> 6] >> (s & 63)) & 1u) continue;
        ++components;
        seen[s >> 6] |= std::uint64_t(1) << (s & 63);
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            const std::uint64_t* r = bits_.data() + std::size_t(v) * words_;
            for (int w = 0; w < words_; ++w) {
                std::uint64_t fresh = r[w] & ~seen[w];
                seen[w] |= fresh;
                while (fresh) {
                    int b = std::countr_zero(fresh);
                    stack.push_back(w * 64 + b);
                    fresh &= fresh - 1;
                }
            }
        }
    }
    return components;
}

Graph delete_edge(const Graph& g, int u, int v) {
    if (!g.has_edge(u, v)) throw std::invalid_argument("delete_edge: edge not present");
    Graph out = g;
    out.clear_bit(u, v);
    out.clear_bit(v, u);
    --out.degree_[u];
    --out.degree_[v];
    --out.edges_;
    return out;
}

void write_edge_list(const Graph& g, std::ostream& os) {
    os << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v : g.neighbors(u))
            if (u < v) os << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& is) {
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(is, line)) {
            ++line_no;
            std::size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos) continue;  // blank
            if (line[start] == '#') continue;          // comment
            return true;
        }
        ++line_no;
        return false;
    };

    if (!next_line()) throw EdgeListParseError("missing header", line_no);
    long long n = 0, m = 0;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m) || (hs >> extra))
            throw EdgeListParseError("header must be \"n m\"", line_no);
        if (n < 0 || m < 0) throw EdgeListParseError("negative count in header", line_no);
        if (n > (1 << 24)) throw EdgeListParseError("vertex count too large", line_no);
    }
    Graph g(static_cast<int>(n));
    for (long long i = 0; i < m; ++i) {
        if (!next_line()) throw EdgeListParseError("expected " + std::to_string(m) + " edges, got " + std::to_string(i), line_no);
        std::istringstream es(line);
        long long u = 0, v = 0;
        std::string extra;
        if (!(es >> u >> v) || (es >> extra))
            throw EdgeListParseError("edge must be \"u v\"", line_no);
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw EdgeListParseError("vertex out of range", line_no);
        if (u >= v) throw EdgeListParseError("edges must satisfy u < v", line_no);
        if (g.has_edge(int(u), int(v))) throw EdgeListParseError("duplicate edge", line_no);
        g.add_edge(int(u), int(v));
    }
    return g;
}

}  // namespace flaglab
