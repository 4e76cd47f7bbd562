#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "flaglab/complex.hpp"

namespace flaglab {

// Default primes for the modular rank path, both just below 2^31. Two primes
// because a single one can undercount the rational rank when it divides an
// invariant factor; disagreement between them triggers exact escalation.
inline constexpr std::uint32_t kRankPrimes[2] = {2147483629u, 2147483647u};

// General sparse integer matrix in compressed-column form, rows ascending
// within each column. Used for rank computations and transpose checks.
struct SparseIntMatrix {
    std::int64_t rows = 0, cols = 0;
    std::vector<std::int64_t> col_ptr;  // size cols + 1
    std::vector<std::int32_t> row_idx;  // ascending per column
    std::vector<std::int8_t> values;    // nonzero

    SparseIntMatrix transposed() const;
};

// Signed incidence matrix from d-faces to (d-1)-faces. Column j lists, slot
// by slot, the row of the facet obtained by dropping vertex i of face j; that
// entry's value is (-1)^i, so signs are implicit in the slot parity. Dropping
// an earlier vertex of an increasing tuple yields a lexicographically later
// facet, so row indices decrease as the slot increases.
struct BoundaryMatrix {
    int dim = 0;
    std::int64_t rows = 0, cols = 0;
    std::vector<std::int32_t> row_idx;  // cols * (dim+1), slot-major

    int entries_per_col() const { return dim + 1; }
    static int sign(int slot) { return (slot & 1) ? -1 : 1; }
    SparseIntMatrix as_sparse() const;
};

// Requires 1 <= d <= cap.
BoundaryMatrix boundary_matrix(const FlagSkeleton& sk, int d);

// Exact integer check that boundary_matrix(sk, d) * boundary_matrix(sk, d+1)
// is the zero matrix.
bool boundary_product_is_zero(const FlagSkeleton& sk, int d);

// Rank over GF(prime) by sparse column reduction. max_rank (if >= 0) is a
// caller-supplied upper bound on the rank; elimination stops once reached.
// For a boundary matrix, rank(d+1-boundary) <= f_d - rank(d-boundary) is
// such a bound (it holds over every field because the composite is zero).
std::int64_t rank_mod_prime(const SparseIntMatrix& A, std::uint32_t prime, std::int64_t max_rank = -1);

// Maximum of the per-prime ranks; each is a lower bound for the rational
// rank, and equality holds for all but finitely many primes.
std::int64_t rank_modular(const SparseIntMatrix& A, const std::vector<std::uint32_t>& primes,
                          std::int64_t max_rank = -1);
std::int64_t rank_modular(const BoundaryMatrix& M, const std::vector<std::uint32_t>& primes,
                          std::int64_t max_rank = -1);

// Rank over Q by fraction-free integer elimination with content
// normalization. Runs on 64-bit words with overflow detection and redoes the
// computation in arbitrary precision if a coefficient ever outgrows them.
std::int64_t rank_exact(const SparseIntMatrix& A, std::int64_t max_rank = -1);
std::int64_t rank_exact(const BoundaryMatrix& M, std::int64_t max_rank = -1);

enum class RankMethod { Modular, ExactRational };

struct BettiVector {
    std::vector<std::int64_t> f;      // face counts, 0..cap
    std::vector<std::int64_t> ranks;  // ranks[d] = rank of the d-boundary, 0..cap+1
    std::vector<std::int64_t> betti;  // betti[d] = f[d] - ranks[d] - ranks[d+1]
    std::string method;               // "modular" or "exact-rational"
    std::vector<std::uint32_t> primes;
    bool escalated = false;  // modular primes disagreed somewhere

    // Reduced Betti numbers: beta0 lowered by one. Requires a nonempty
    // complex.
    std::vector<std::int64_t> reduced() const;
};

// Betti numbers of the skeleton viewed as a complex in its own right (faces
// above cap, if any exist in the full flag complex, are not consulted).
BettiVector betti(const FlagSkeleton& sk, RankMethod method = RankMethod::Modular,
                  const std::vector<std::uint32_t>& primes = {kRankPrimes[0], kRankPrimes[1]});

// beta_k of the full flag complex. Since degree-k homology only depends on
// the (k+1)-skeleton, this needs cap >= k+1, or cap == k when the skeleton
// is already the whole complex; anything less is an error, never a silent
// truncation.
std::int64_t betti_at(const FlagSkeleton& sk, int k, RankMethod method = RankMethod::Modular,
                      const std::vector<std::uint32_t>& primes = {kRankPrimes[0], kRankPrimes[1]});

// f_k - f_{k-1} - f_{k+1}; a lower bound for beta_k. Out-of-range entries
// count as zero.
std::int64_t morse_lower_bound(const std::vector<std::int64_t>& f, int k);

// JSON {f_vector, ranks, betti, method, primes}.
void write_betti_report(const BettiVector& bv, std::ostream& os);

}  // namespace flaglab
