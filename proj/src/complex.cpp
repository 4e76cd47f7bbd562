#include "flaglab/complex.hpp"

#include <bit>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace flaglab {

namespace {

// Intersection of the adjacency rows of count vertices.
void common_rows(const Graph& g, const std::int32_t* verts, int count, std::vector<std::uint64_t>& acc) {
    auto first = g.row(verts[0]);
    acc.assign(first.begin(), first.end());
    for (int i = 1; i < count; ++i) {
        auto r = g.row(verts[i]);
        for (std::size_t w = 0; w < acc.size(); ++w) acc[w] &= r[w];
    }
}

// Zero out bits 0..last of the candidate set (ordered extension keeps only
// vertices above the face's maximum).
void mask_above(std::vector<std::uint64_t>& acc, int last) {
    int w0 = last >> 6;
    for (int w = 0; w < w0; ++w) acc[w] = 0;
    acc[w0] &= ~((std::uint64_t(2) << (last & 63)) - 1);
}

// Append every one-vertex extension of the d-faces [begin, end) to out.
void extend_range(const Graph& g, const std::vector<std::int32_t>& cur, int d,
                  std::int64_t begin, std::int64_t end, std::vector<std::int32_t>& out) {
    const int W = g.row_words();
    std::vector<std::uint64_t> acc(W);
    for (std::int64_t i = begin; i < end; ++i) {
        const std::int32_t* f = cur.data() + i * (d + 1);
        common_rows(g, f, d + 1, acc);
        mask_above(acc, f[d]);
        for (int w = f[d] >> 6; w < W; ++w) {
            std::uint64_t bits = acc[w];
            while (bits) {
                int v = w * 64 + std::countr_zero(bits);
                bits &= bits - 1;
                out.insert(out.end(), f, f + d + 1);
                out.push_back(std::int32_t(v));
            }
        }
    }
}

bool any_extension(const Graph& g, const std::vector<std::int32_t>& cur, int d) {
    const int W = g.row_words();
    std::vector<std::uint64_t> acc(W);
    const std::int64_t count = std::int64_t(cur.size()) / (d + 1);
    for (std::int64_t i = 0; i < count; ++i) {
        const std::int32_t* f = cur.data() + i * (d + 1);
        common_rows(g, f, d + 1, acc);
        mask_above(acc, f[d]);
        for (int w = f[d] >> 6; w < W; ++w)
            if (acc[w]) return true;
    }
    return false;
}

}  // namespace

FlagSkeleton FlagSkeleton::build(const Graph& g, int cap) { return build_impl(g, cap, true); }
FlagSkeleton FlagSkeleton::build_serial(const Graph& g, int cap) { return build_impl(g, cap, false); }

FlagSkeleton FlagSkeleton::build_impl(const Graph& g, int cap, bool parallel) {
    if (cap < 0) throw std::invalid_argument("build_skeleton: negative cap");
    (void)parallel;

    FlagSkeleton sk;
    sk.source_ = g;
    sk.cap_ = cap;
    sk.faces_.resize(cap + 1);
    sk.f_.assign(cap + 1, 0);

    const int n = g.vertex_count();
    sk.faces_[0].resize(n);
    for (int v = 0; v < n; ++v) sk.faces_[0][v] = v;
    sk.f_[0] = n;

    for (int d = 0; d + 1 <= cap; ++d) {
        const auto& cur = sk.faces_[d];
        const std::int64_t count = sk.f_[d];
        if (count == 0) break;
        auto& next = sk.faces_[d + 1];
#ifdef _OPENMP
        if (parallel && count >= 1024) {
            const int chunks = std::max(1, 4 * omp_get_max_threads());
            const std::int64_t step = (count + chunks - 1) / chunks;
            std::vector<std::vector<std::int32_t>> parts(chunks);
#pragma omp parallel for schedule(dynamic)
            for (int c = 0; c < chunks; ++c) {
                std::int64_t b = c * step, e = std::min(count, b + step);
                if (b < e) extend_range(g, cur, d, b, e, parts[c]);
            }
            std::size_t total = 0;
            for (const auto& p : parts) total += p.size();
            next.reserve(total);
            for (const auto& p : parts) next.insert(next.end(), p.begin(), p.end());
        } else
#endif
        {
            extend_range(g, cur, d, 0, count, next);
        }
        sk.f_[d + 1] = std::int64_t(next.size()) / (d + 2);
    }

    sk.has_higher_ = sk.f_[cap] > 0 && any_extension(g, sk.faces_[cap], cap);
    return sk;
}

std::int64_t FlagSkeleton::face_index(int d, std::span<const std::int32_t> verts) const {
    if (d < 0 || d > cap_ || std::int64_t(verts.size()) != d + 1) return -1;
    const std::int32_t* arr = faces_[d].data();
    std::int64_t lo = 0, hi = f_[d] - 1;
    while (lo <= hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        const std::int32_t* f = arr + mid * (d + 1);
        int cmp = 0;
        for (int i = 0; i <= d; ++i) {
            if (f[i] != verts[i]) {
                cmp = f[i] < verts[i] ? -1 : 1;
                break;
            }
        }
        if (cmp == 0) return mid;
        if (cmp < 0) lo = mid + 1;
        else hi = mid - 1;
    }
    return -1;
}

bool FlagSkeleton::is_pure(int D) const {
    if (D < 0 || D > cap_) throw std::invalid_argument("is_pure: D outside [0, cap]");
    // A face extends to a strictly larger one iff its common neighborhood is
    // nonempty; chaining extensions reaches dimension D exactly when every
    // face below D extends.
    const int W = source_.row_words();
    std::vector<std::uint64_t> acc(W);
    for (int d = 0; d < D; ++d) {
        for (std::int64_t i = 0; i < f_[d]; ++i) {
            const std::int32_t* f = faces_[d].data() + i * (d + 1);
            common_rows(source_, f, d + 1, acc);
            bool any = false;
            for (int w = 0; w < W && !any; ++w) any = acc[w] != 0;
            if (!any) return false;
        }
    }
    return true;
}

LinkGraph link_graph(const FlagSkeleton& sk, std::span<const int> face) {
    const Graph& g = sk.source();
    if (face.empty()) throw std::invalid_argument("link_graph: empty face");
    if (std::int64_t(face.size()) > sk.cap() + 1)
        throw std::invalid_argument("link_graph: face dimension exceeds cap");
    for (std::size_t i = 0; i < face.size(); ++i) {
        if (face[i] < 0 || face[i] >= g.vertex_count())
            throw std::invalid_argument("link_graph: vertex out of range");
        if (i > 0 && face[i - 1] >= face[i])
            throw std::invalid_argument("link_graph: face must be strictly increasing");
        for (std::size_t j = i + 1; j < face.size(); ++j)
            if (!g.has_edge(face[i], face[j]))
                throw std::invalid_argument("link_graph: not a face (missing edge)");
    }
    std::vector<int> verts = g.common_neighbors(face);
    Graph lg(int(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (g.has_edge(verts[i], verts[j])) lg.add_edge(int(i), int(j));
    return {std::move(lg), std::move(verts)};
}

namespace {

std::int64_t count_max_from(const Graph& g, std::vector<std::vector<std::uint64_t>>& scratch,
                            int depth, int size, int last, const std::vector<std::uint64_t>& common) {
    const int W = g.row_words();
    if (depth == size) {
        for (int w = 0; w < W; ++w)
            if (common[w]) return 0;
        return 1;
    }
    std::int64_t total = 0;
    std::vector<std::uint64_t> cand = common;
    mask_above(cand, last);
    auto& next = scratch[depth];
    for (int w = last >> 6; w < W; ++w) {
        std::uint64_t bits = cand[w];
        while (bits) {
            int v = w * 64 + std::countr_zero(bits);
            bits &= bits - 1;
            auto row = g.row(v);
            next.resize(W);
            for (int x = 0; x < W; ++x) next[x] = common[x] & row[x];
            total += count_max_from(g, scratch, depth + 1, size, v, next);
        }
    }
    return total;
}

std::int64_t count_maximal_impl(const Graph& g, int size, bool parallel) {
    if (size < 1) throw std::invalid_argument("count_maximal_cliques: size must be >= 1");
    const int n = g.vertex_count();
    const int W = g.row_words();
    (void)parallel;
    std::int64_t total = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : total) if (parallel && n >= 64)
#endif
    for (int v = 0; v < n; ++v) {
        std::vector<std::vector<std::uint64_t>> scratch(size);
        std::vector<std::uint64_t> common(g.row(v).begin(), g.row(v).end());
        (void)W;
        total += count_max_from(g, scratch, 1, size, v, common);
    }
    return total;
}

}  // namespace

std::int64_t count_maximal_cliques(const Graph& g, int size) { return count_maximal_impl(g, size, true); }
std::int64_t count_maximal_cliques_serial(const Graph& g, int size) { return count_maximal_impl(g, size, false); }

void write_complex_json(const FlagSkeleton& sk, std::ostream& os) {
    nlohmann::json j;
    j["n"] = sk.source().vertex_count();
    j["cap"] = sk.cap();
    j["f_vector"] = sk.f_vector();
    auto faces = nlohmann::json::array();
    for (int d = 0; d <= sk.cap(); ++d)
        for (std::int64_t i = 0; i < sk.face_count(d); ++i) {
            auto f = sk.face(d, i);
            faces.push_back(std::vector<int>(f.begin(), f.end()));
        }
    j["faces"] = std::move(faces);
    os << j.dump(2) << '\n';
}

FlagSkeleton read_complex_json(std::istream& is) {
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("complex JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("cap") || !j.contains("faces"))
        throw std::runtime_error("complex JSON: need fields n, cap, faces");
    const int n = j.at("n").get<int>();
    const int cap = j.at("cap").get<int>();
    if (n < 0 || cap < 0) throw std::runtime_error("complex JSON: negative n or cap");

    Graph g(n);
    for (const auto& face : j.at("faces")) {
        if (!face.is_array()) throw std::runtime_error("complex JSON: face must be an array");
        if (face.size() == 2) {
            int u = face[0].get<int>(), v = face[1].get<int>();
            if (u < 0 || v < 0 || u >= n || v >= n || u >= v)
                throw std::runtime_error("complex JSON: bad edge face");
            g.add_edge(u, v);
        }
    }
    FlagSkeleton sk = FlagSkeleton::build(g, cap);

    // The dump must be exactly the flag skeleton of its own 1-skeleton;
    // anything else is not representable here.
    std::vector<std::int64_t> seen(cap + 1, 0);
    for (const auto& face : j.at("faces")) {
        std::vector<std::int32_t> verts;
        for (const auto& x : face) verts.push_back(x.get<std::int32_t>());
        int d = int(verts.size()) - 1;
        if (d < 0 || d > cap) throw std::runtime_error("complex JSON: face dimension outside [0, cap]");
        if (sk.face_index(d, verts) < 0)
            throw std::runtime_error("complex JSON: face list is not the flag complex of its edges");
        ++seen[d];
    }
    for (int d = 0; d <= cap; ++d)
        if (seen[d] != sk.face_count(d))
            throw std::runtime_error("complex JSON: face list incomplete (not downward closed flag complex)");
    if (j.contains("f_vector")) {
        auto fv = j.at("f_vector").get<std::vector<std::int64_t>>();
        if (fv != sk.f_vector()) throw std::runtime_error("complex JSON: f_vector mismatch");
    }
    return sk;
}

}  // namespace flaglab
