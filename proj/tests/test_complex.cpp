#include <doctest.h>

#include <cmath>
#include <sstream>

#include "flaglab/complex.hpp"
#include "oracles.hpp"

using namespace flaglab;

namespace {

// K_{2,2,2}: antipodal pairs (0,1), (2,3), (4,5) are the only non-edges.
Graph octahedron() {
    Graph g(6);
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v)
            if (!(v == u + 1 && u % 2 == 0)) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("skeleton f-vectors for named graphs") {
    auto k3 = FlagSkeleton::build(Graph::complete(3), 2);
    CHECK(k3.f_vector() == std::vector<std::int64_t>{3, 3, 1});
    CHECK_FALSE(k3.has_higher_faces());

    auto c4 = FlagSkeleton::build(Graph::cycle(4), 2);
    CHECK(c4.f_vector() == std::vector<std::int64_t>{4, 4, 0});
    CHECK_FALSE(c4.has_higher_faces());

    auto oct = FlagSkeleton::build(octahedron(), 3);
    CHECK(oct.f_vector() == std::vector<std::int64_t>{6, 12, 8, 0});
    CHECK_FALSE(oct.has_higher_faces());
}

TEST_CASE("complete graph f-vector is binomial") {
    for (int n : {2, 4, 6, 7}) {
        auto sk = FlagSkeleton::build(Graph::complete(n), n - 1);
        for (int d = 0; d < n; ++d) {
            std::int64_t binom = 1;
            for (int i = 0; i < d + 1; ++i) binom = binom * (n - i) / (i + 1);
            CHECK(sk.face_count(d) == binom);
        }
        CHECK_FALSE(sk.has_higher_faces());
    }
    // Truncation below the top dimension flips the probe.
    auto trunc = FlagSkeleton::build(Graph::complete(5), 2);
    CHECK(trunc.has_higher_faces());
}

TEST_CASE("faces are lex sorted and downward closed") {
    Graph g = Graph::sample_gnp(18, 0.5, {3, 1});
    auto sk = FlagSkeleton::build(g, 4);
    for (int d = 0; d <= 4; ++d) {
        for (std::int64_t i = 0; i < sk.face_count(d); ++i) {
            auto f = sk.face(d, i);
            for (int j = 0; j + 1 <= d; ++j) CHECK(f[j] < f[j + 1]);
            if (i > 0) {
                auto prev = sk.face(d, i - 1);
                CHECK(std::lexicographical_compare(prev.begin(), prev.end(), f.begin(), f.end()));
            }
            // every facet (drop one vertex) is stored
            if (d > 0) {
                std::vector<std::int32_t> facet;
                for (int drop = 0; drop <= d; ++drop) {
                    facet.clear();
                    for (int j = 0; j <= d; ++j)
                        if (j != drop) facet.push_back(f[j]);
                    CHECK(sk.face_index(d - 1, facet) >= 0);
                }
            }
            CHECK(sk.face_index(d, std::vector<std::int32_t>(f.begin(), f.end())) == i);
        }
    }
}

TEST_CASE("skeleton matches subset-enumeration oracle") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        Graph g = Graph::sample_gnp(8, 0.55, {777, s});
        auto sk = FlagSkeleton::build(g, 7);
        for (int d = 0; d <= 7; ++d) {
            auto expect = oracle::cliques_of_size(g, d + 1);
            std::sort(expect.begin(), expect.end());  // oracle emits colex order
            REQUIRE(sk.face_count(d) == std::int64_t(expect.size()));
            for (std::int64_t i = 0; i < sk.face_count(d); ++i) {
                auto f = sk.face(d, i);
                CHECK(std::vector<int>(f.begin(), f.end()) == expect[i]);
            }
        }
    }
}

TEST_CASE("parallel and serial builds agree") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        Graph g = Graph::sample_gnp(60, 0.4, {31, s});
        auto a = FlagSkeleton::build(g, 4);
        auto b = FlagSkeleton::build_serial(g, 4);
        REQUIRE(a.f_vector() == b.f_vector());
        for (int d = 0; d <= 4; ++d) CHECK(a.faces_flat(d) == b.faces_flat(d));
        CHECK(a.has_higher_faces() == b.has_higher_faces());
    }
}

TEST_CASE("empty and tiny graphs") {
    auto sk0 = FlagSkeleton::build(Graph(0), 2);
    CHECK(sk0.f_vector() == std::vector<std::int64_t>{0, 0, 0});
    CHECK(sk0.is_pure(2));
    CHECK_FALSE(sk0.has_higher_faces());

    auto sk1 = FlagSkeleton::build(Graph(3), 2);
    CHECK(sk1.f_vector() == std::vector<std::int64_t>{3, 0, 0});
    CHECK_FALSE(sk1.is_pure(1));
    CHECK(sk1.is_pure(0));
}

TEST_CASE("maximal clique counts") {
    CHECK(count_maximal_cliques(Graph::complete(4), 4) == 1);
    CHECK(count_maximal_cliques(Graph::complete(4), 3) == 0);
    CHECK(count_maximal_cliques(Graph::cycle(4), 2) == 4);
    CHECK(count_maximal_cliques(Graph(5), 1) == 5);
    CHECK(count_maximal_cliques(Graph::path(4), 1) == 0);
    CHECK_THROWS_AS(count_maximal_cliques(Graph(3), 0), std::invalid_argument);
}

TEST_CASE("maximal clique counts match oracle on random graphs") {
    for (std::uint64_t s = 0; s < 40; ++s) {
        Graph g = Graph::sample_gnp(8, 0.5, {55, s});
        for (int size = 1; size <= 5; ++size) {
            std::int64_t expect = oracle::count_maximal(g, size);
            CHECK(count_maximal_cliques(g, size) == expect);
            CHECK(count_maximal_cliques_serial(g, size) == expect);
        }
    }
}

TEST_CASE("purity") {
    CHECK(FlagSkeleton::build(octahedron(), 2).is_pure(2));
    CHECK_FALSE(FlagSkeleton::build(Graph::cycle(4), 2).is_pure(2));

    // K3 plus pendant vertex: the pendant edge is maximal.
    Graph pendant = Graph::complete(3);
    Graph g(4);
    for (int u = 0; u < 3; ++u)
        for (int v = u + 1; v < 3; ++v) g.add_edge(u, v);
    g.add_edge(2, 3);
    CHECK_FALSE(FlagSkeleton::build(g, 2).is_pure(2));
    CHECK(FlagSkeleton::build(g, 2).is_pure(1));
    (void)pendant;
}

TEST_CASE("links") {
    auto oct = FlagSkeleton::build(octahedron(), 2);
    for (int v = 0; v < 6; ++v) {
        std::vector<int> face{v};
        LinkGraph lk = link_graph(oct, face);
        CHECK(lk.graph.vertex_count() == 4);
        CHECK(lk.graph.edge_count() == 4);
        for (int u = 0; u < 4; ++u) CHECK(lk.graph.degree(u) == 2);  // a 4-cycle
        CHECK(int(lk.vertices.size()) == 4);
        for (int u : lk.vertices) CHECK(u != v);
    }

    auto k4 = FlagSkeleton::build(Graph::complete(4), 3);
    std::vector<int> edge{0, 1};
    LinkGraph lk = link_graph(k4, edge);
    CHECK(lk.graph.vertex_count() == 2);
    CHECK(lk.graph.edge_count() == 1);
    CHECK(lk.vertices == std::vector<int>{2, 3});

    auto c4 = FlagSkeleton::build(Graph::cycle(4), 2);
    std::vector<int> vert{0};
    LinkGraph lk2 = link_graph(c4, vert);
    CHECK(lk2.graph.vertex_count() == 2);
    CHECK(lk2.graph.edge_count() == 0);

    std::vector<int> notface{0, 2};  // diagonal of C4
    CHECK_THROWS_AS(link_graph(c4, notface), std::invalid_argument);
    std::vector<int> unsorted{1, 0};
    CHECK_THROWS_AS(link_graph(k4, unsorted), std::invalid_argument);
}

TEST_CASE("link of an edge is distributed like G(N, p)") {
    // Edge density inside links should match the ambient p.
    const double p = 0.45;
    std::int64_t present = 0, possible = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        Graph g = Graph::sample_gnp(40, p, {2024, s});
        auto sk = FlagSkeleton::build(g, 3);
        if (sk.face_count(1) == 0) continue;
        auto e = sk.face(1, sk.face_count(1) / 2);
        std::vector<int> face(e.begin(), e.end());
        LinkGraph lk = link_graph(sk, face);
        int m = lk.graph.vertex_count();
        possible += std::int64_t(m) * (m - 1) / 2;
        present += lk.graph.edge_count();
    }
    REQUIRE(possible > 1000);
    double density = double(present) / double(possible);
    double se = std::sqrt(p * (1 - p) / double(possible));
    CHECK(std::abs(density - p) < 4 * se);
}

TEST_CASE("complex JSON round trip") {
    Graph g = Graph::sample_gnp(12, 0.5, {9, 4});
    auto sk = FlagSkeleton::build(g, 3);
    std::stringstream ss;
    write_complex_json(sk, ss);
    FlagSkeleton back = read_complex_json(ss);
    CHECK(back.f_vector() == sk.f_vector());
    CHECK(back.cap() == sk.cap());
    CHECK(back.source() == g);
    for (int d = 0; d <= 3; ++d) CHECK(back.faces_flat(d) == sk.faces_flat(d));
}

TEST_CASE("complex JSON rejects non-flag input") {
    // Triangle edges without the 2-face: not downward-closed flag data.
    std::istringstream missing(R"({"n":3,"cap":2,"faces":[[0],[1],[2],[0,1],[0,2],[1,2]]})");
    CHECK_THROWS_AS(read_complex_json(missing), std::runtime_error);
    // A 2-face whose edges are absent.
    std::istringstream phantom(R"({"n":3,"cap":2,"faces":[[0],[1],[2],[0,1,2]]})");
    CHECK_THROWS_AS(read_complex_json(phantom), std::runtime_error);
    std::istringstream garbage("not json");
    CHECK_THROWS_AS(read_complex_json(garbage), std::runtime_error);
}
