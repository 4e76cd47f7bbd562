#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "flaglab/graph.hpp"

namespace flaglab {

// Flag complex of a graph, truncated at a dimension cap. Faces are the
// cliques of the source graph with at most cap+1 vertices, stored per
// dimension as flat arrays of sorted vertex tuples in lexicographic order.
// Immutable once built; safe to share across threads.
class FlagSkeleton {
public:
    // Enumerates cliques by ordered extension: a face is grown only by
    // vertices above its maximum, so each clique appears exactly once and
    // the per-dimension lists come out lexicographically sorted. The
    // parallel build partitions each dimension's faces into chunks whose
    // outputs are concatenated in chunk order, so results are identical to
    // build_serial for any thread count.
    static FlagSkeleton build(const Graph& g, int cap);
    static FlagSkeleton build_serial(const Graph& g, int cap);

    const Graph& source() const { return source_; }
    int cap() const { return cap_; }

    const std::vector<std::int64_t>& f_vector() const { return f_; }
    std::int64_t face_count(int d) const { return (d < 0 || d > cap_) ? 0 : f_[d]; }

    // Vertex tuple of the i-th d-face, length d+1, strictly increasing.
    std::span<const std::int32_t> face(int d, std::int64_t i) const {
        return {faces_[d].data() + i * (d + 1), std::size_t(d + 1)};
    }
    const std::vector<std::int32_t>& faces_flat(int d) const { return faces_[d]; }

    // Position of the given tuple in the lex-sorted d-face list, -1 if absent.
    std::int64_t face_index(int d, std::span<const std::int32_t> verts) const;

    // True when the source graph contains a clique of size cap+2, i.e. the
    // truncation cut something off and the skeleton is not the whole flag
    // complex.
    bool has_higher_faces() const { return has_higher_; }

    // Every face of dimension < D lies in some D-face. Within a flag complex
    // this holds iff every face below dimension D has a nonempty common
    // neighborhood, checked directly against the source graph.
    bool is_pure(int D) const;

private:
    FlagSkeleton() = default;
    static FlagSkeleton build_impl(const Graph& g, int cap, bool parallel);

    Graph source_;
    int cap_ = 0;
    std::vector<std::int64_t> f_;
    std::vector<std::vector<std::int32_t>> faces_;
    bool has_higher_ = false;
};

// Link of a face: the induced graph on the common neighborhood of its
// vertices. vertices[i] is the source-graph vertex behind link vertex i.
struct LinkGraph {
    Graph graph;
    std::vector<int> vertices;
};

// Throws std::invalid_argument unless `face` is a face of sk (strictly
// increasing, pairwise adjacent, dimension ≤ cap).
LinkGraph link_graph(const FlagSkeleton& sk, std::span<const int> face);

// Number of cliques with `size` vertices contained in no larger clique.
std::int64_t count_maximal_cliques(const Graph& g, int size);
std::int64_t count_maximal_cliques_serial(const Graph& g, int size);

// JSON dump {n, cap, f_vector, faces}; load validates and rebuilds.
void write_complex_json(const FlagSkeleton& sk, std::ostream& os);
FlagSkeleton read_complex_json(std::istream& is);

}  // namespace flaglab
