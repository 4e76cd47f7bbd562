#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "flaglab/rng.hpp"

namespace flaglab {

struct EdgeListParseError : std::runtime_error {
    EdgeListParseError(const std::string& what, int line)
        : std::runtime_error("edge list, line " + std::to_string(line) + ": " + what),
          line_number(line) {}
    int line_number;
};

// Simple undirected graph on vertices 0..n-1, no self-loops. Adjacency is
// stored as packed 64-bit rows so neighborhood intersections are word-wide
// ANDs, which is what clique enumeration spends its time on. Immutable after
// construction as far as the rest of the library is concerned; sharing a
// built graph across threads is safe.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : n_(n), words_((n + 63) / 64), bits_(std::size_t(n) * words_, 0), degree_(n, 0) {
        if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
    }

    // G(n,p): each unordered pair included independently with probability p.
    // Deterministic given the seed. Sparse regimes use geometric skipping
    // over the linearized pair index, one draw per edge.
    static Graph sample_gnp(int n, double p, Seed seed);

    static Graph complete(int n);
    static Graph cycle(int n);
    static Graph path(int n);

    int vertex_count() const { return n_; }
    std::int64_t edge_count() const { return edges_; }

    bool has_edge(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        if (u == v) return false;
        return (bits_[std::size_t(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
    }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("Graph: self-loop");
        if (has_edge(u, v)) return;
        set_bit(u, v);
        set_bit(v, u);
        ++degree_[u];
        ++degree_[v];
        ++edges_;
    }

    int degree(int v) const {
        check_vertex(v);
        return degree_[v];
    }

    int min_degree() const;

    std::vector<int> neighbors(int v) const;

    // Vertices adjacent to every member of `verts`, excluding `verts` itself.
    std::vector<int> common_neighbors(std::span<const int> verts) const;

    bool is_connected() const;   // rejects n == 0
    int component_count() const; // 0 for the empty graph

    // First Betti number of the graph as a 1-complex: m - n + #components.
    std::int64_t cycle_rank() const { return edges_ - n_ + component_count(); }

    std::span<const std::uint64_t> row(int v) const {
        check_vertex(v);
        return {bits_.data() + std::size_t(v) * words_, std::size_t(words_)};
    }
    int row_words() const { return words_; }

    bool operator==(const Graph& other) const { return n_ == other.n_ && bits_ == other.bits_; }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("Graph: vertex out of range");
    }
    void set_bit(int u, int v) { bits_[std::size_t(u) * words_ + (v >> 6)] |= std::uint64_t(1) << (v & 63); }
    void clear_bit(int u, int v) { bits_[std::size_t(u) * words_ + (v >> 6)] &= ~(std::uint64_t(1) << (v & 63)); }

    friend Graph delete_edge(const Graph& g, int u, int v);

    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<int> degree_;
    std::int64_t edges_ = 0;
};

// Copy of g with edge {u,v} removed; throws if the edge is absent.
Graph delete_edge(const Graph& g, int u, int v);

// Edge-list text format: first line "n m", then m lines "u v" with u < v.
void write_edge_list(const Graph& g, std::ostream& os);
Graph read_edge_list(std::istream& is);

}  // namespace flaglab
