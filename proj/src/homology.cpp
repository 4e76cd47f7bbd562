#include "flaglab/homology.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace flaglab {

SparseIntMatrix SparseIntMatrix::transposed() const {
    SparseIntMatrix t;
    t.rows = cols;
    t.cols = rows;
    t.col_ptr.assign(rows + 1, 0);
    for (std::int32_t r : row_idx) ++t.col_ptr[r + 1];
    for (std::int64_t i = 0; i < rows; ++i) t.col_ptr[i + 1] += t.col_ptr[i];
    t.row_idx.resize(row_idx.size());
    t.values.resize(values.size());
    std::vector<std::int64_t> cursor(t.col_ptr.begin(), t.col_ptr.end() - 1);
    for (std::int64_t c = 0; c < cols; ++c)
        for (std::int64_t k = col_ptr[c]; k < col_ptr[c + 1]; ++k) {
            std::int64_t pos = cursor[row_idx[k]]++;
            t.row_idx[pos] = std::int32_t(c);
            t.values[pos] = values[k];
        }
    return t;
}

SparseIntMatrix BoundaryMatrix::as_sparse() const {
    SparseIntMatrix a;
    a.rows = rows;
    a.cols = cols;
    const int e = entries_per_col();
    a.col_ptr.resize(cols + 1);
    a.row_idx.resize(cols * e);
    a.values.resize(cols * e);
    for (std::int64_t j = 0; j < cols; ++j) {
        a.col_ptr[j] = j * e;
        // slots carry descending rows; emit ascending
        for (int slot = 0; slot < e; ++slot) {
            a.row_idx[j * e + (e - 1 - slot)] = row_idx[j * e + slot];
            a.values[j * e + (e - 1 - slot)] = std::int8_t(sign(slot));
        }
    }
    a.col_ptr[cols] = cols * e;
    return a;
}

BoundaryMatrix boundary_matrix(const FlagSkeleton& sk, int d) {
    if (d < 1 || d > sk.cap()) throw std::invalid_argument("boundary_matrix: d outside [1, cap]");
    BoundaryMatrix M;
    M.dim = d;
    M.rows = sk.face_count(d - 1);
    M.cols = sk.face_count(d);
    M.row_idx.resize(M.cols * (d + 1));
    std::vector<std::int32_t> facet(d);
    for (std::int64_t j = 0; j < M.cols; ++j) {
        auto face = sk.face(d, j);
        for (int drop = 0; drop <= d; ++drop) {
            int out = 0;
            for (int i = 0; i <= d; ++i)
                if (i != drop) facet[out++] = face[i];
            std::int64_t r = sk.face_index(d - 1, facet);
            // downward closure guarantees the facet exists
            M.row_idx[j * (d + 1) + drop] = std::int32_t(r);
        }
    }
    return M;
}

bool boundary_product_is_zero(const FlagSkeleton& sk, int d) {
    if (d < 1 || d + 1 > sk.cap()) throw std::invalid_argument("boundary_product_is_zero: need 1 <= d, d+1 <= cap");
    BoundaryMatrix a = boundary_matrix(sk, d);
    BoundaryMatrix b = boundary_matrix(sk, d + 1);
    std::vector<std::int64_t> acc(a.rows, 0);
    std::vector<std::int32_t> touched;
    const int ea = a.entries_per_col(), eb = b.entries_per_col();
    for (std::int64_t j = 0; j < b.cols; ++j) {
        touched.clear();
        for (int sb = 0; sb < eb; ++sb) {
            std::int64_t mid = b.row_idx[j * eb + sb];  // a column index of a
            int signb = BoundaryMatrix::sign(sb);
            for (int sa = 0; sa < ea; ++sa) {
                std::int32_t r = a.row_idx[mid * ea + sa];
                if (acc[r] == 0) touched.push_back(r);
                acc[r] += signb * BoundaryMatrix::sign(sa);
            }
        }
        for (std::int32_t r : touched)
            if (acc[r] != 0) return false;
        for (int sb = 0; sb < eb; ++sb) {
            std::int64_t mid = b.row_idx[j * eb + sb];
            for (int sa = 0; sa < ea; ++sa) acc[a.row_idx[mid * ea + sa]] = 0;
        }
    }
    return true;
}

namespace {

std::uint32_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    std::uint64_t r = 1;
    base %= p;
    while (exp) {
        if (exp & 1) r = r * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return std::uint32_t(r);
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) { return mod_pow(a, p - 2, p); }

struct ModCol {
    std::vector<std::int32_t> rows;  // ascending
    std::vector<std::uint32_t> coef; // in [1, p)
};

// cur -= c * piv (mod p), where piv's trailing coefficient is 1 and both
// columns share the same trailing row, which therefore cancels.
void submul_merge(ModCol& cur, const ModCol& piv, std::uint32_t c, std::uint32_t p, ModCol& tmp) {
    tmp.rows.clear();
    tmp.coef.clear();
    const std::uint64_t mc = p - c;  // ≡ -c
    std::size_t i = 0, k = 0;
    while (i < cur.rows.size() && k < piv.rows.size()) {
        if (cur.rows[i] < piv.rows[k]) {
            tmp.rows.push_back(cur.rows[i]);
            tmp.coef.push_back(cur.coef[i]);
            ++i;
        } else if (cur.rows[i] > piv.rows[k]) {
            std::uint32_t v = std::uint32_t(std::uint64_t(piv.coef[k]) * mc % p);
            if (v) {
                tmp.rows.push_back(piv.rows[k]);
                tmp.coef.push_back(v);
            }
            ++k;
        } else {
            std::uint32_t v = std::uint32_t((cur.coef[i] + std::uint64_t(piv.coef[k]) * mc) % p);
            if (v) {
                tmp.rows.push_back(cur.rows[i]);
                tmp.coef.push_back(v);
            }
            ++i;
            ++k;
        }
    }
    for (; i < cur.rows.size(); ++i) {
        tmp.rows.push_back(cur.rows[i]);
        tmp.coef.push_back(cur.coef[i]);
    }
    for (; k < piv.rows.size(); ++k) {
        std::uint32_t v = std::uint32_t(std::uint64_t(piv.coef[k]) * mc % p);
        if (v) {
            tmp.rows.push_back(piv.rows[k]);
            tmp.coef.push_back(v);
        }
    }
    std::swap(cur.rows, tmp.rows);
    std::swap(cur.coef, tmp.coef);
}

}  // namespace

std::int64_t rank_mod_prime(const SparseIntMatrix& A, std::uint32_t prime, std::int64_t max_rank) {
    const std::int64_t hard_cap = std::min(A.rows, A.cols);
    if (max_rank < 0 || max_rank > hard_cap) max_rank = hard_cap;
    if (max_rank == 0) return 0;

    std::vector<std::int32_t> pivot_owner(A.rows, -1);
    std::vector<ModCol> stored;
    stored.reserve(std::size_t(max_rank));
    std::int64_t rank = 0;
    ModCol cur, tmp;

    for (std::int64_t j = 0; j < A.cols && rank < max_rank; ++j) {
        cur.rows.clear();
        cur.coef.clear();
        for (std::int64_t k = A.col_ptr[j]; k < A.col_ptr[j + 1]; ++k) {
            std::int64_t v = A.values[k] % std::int64_t(prime);
            if (v < 0) v += prime;
            if (v) {
                cur.rows.push_back(A.row_idx[k]);
                cur.coef.push_back(std::uint32_t(v));
            }
        }
        while (!cur.rows.empty()) {
            std::int32_t low = cur.rows.back();
            std::int32_t owner = pivot_owner[low];
            if (owner < 0) {
                std::uint32_t c = cur.coef.back();
                if (c != 1) {
                    std::uint64_t inv = mod_inverse(c, prime);
                    for (auto& x : cur.coef) x = std::uint32_t(x * inv % prime);
                }
                pivot_owner[low] = std::int32_t(stored.size());
                stored.push_back(cur);
                ++rank;
                break;
            }
            submul_merge(cur, stored[owner], cur.coef.back(), prime, tmp);
        }
    }
    return rank;
}

std::int64_t rank_modular(const SparseIntMatrix& A, const std::vector<std::uint32_t>& primes,
                          std::int64_t max_rank) {
    if (primes.empty()) throw std::invalid_argument("rank_modular: need at least one prime");
    std::int64_t best = 0;
    for (std::uint32_t p : primes) {
        if (p <= (1u << 30)) throw std::invalid_argument("rank_modular: primes must exceed 2^30");
        best = std::max(best, rank_mod_prime(A, p, max_rank));
    }
    return best;
}

std::int64_t rank_modular(const BoundaryMatrix& M, const std::vector<std::uint32_t>& primes,
                          std::int64_t max_rank) {
    return rank_modular(M.as_sparse(), primes, max_rank);
}

namespace {

struct Int64Overflow {};

using int128 = __int128;

int128 gcd128(int128 a, int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr std::int64_t kInt64Max = std::int64_t(0x7fffffffffffffff);

// Shared fraction-free reduction. Checked = true runs on int64 coefficients
// with 128-bit intermediates and throws Int64Overflow when a reduced
// coefficient no longer fits; Checked = false uses arbitrary precision.
template <bool Checked>
std::int64_t rank_exact_impl(const SparseIntMatrix& A, std::int64_t max_rank) {
    using Int = std::conditional_t<Checked, std::int64_t, boost::multiprecision::cpp_int>;
    using Wide = std::conditional_t<Checked, int128, boost::multiprecision::cpp_int>;

    const std::int64_t hard_cap = std::min(A.rows, A.cols);
    if (max_rank < 0 || max_rank > hard_cap) max_rank = hard_cap;
    if (max_rank == 0) return 0;

    struct Col {
        std::vector<std::int32_t> rows;
        std::vector<Int> coef;
    };
    std::vector<std::int32_t> pivot_owner(A.rows, -1);
    std::vector<Col> stored;
    std::int64_t rank = 0;

    auto content_normalize = [](std::vector<Int>& coef) {
        Wide g = 0;
        for (const Int& c : coef) {
            if constexpr (Checked) g = gcd128(g, c);
            else g = boost::multiprecision::gcd(boost::multiprecision::cpp_int(g), c);
            if (g == 1) return;
        }
        if (g > 1)
            for (Int& c : coef) c = Int(Wide(c) / g);
    };

    Col cur;
    std::vector<std::int32_t> trows;
    std::vector<Wide> tcoef;
    for (std::int64_t j = 0; j < A.cols && rank < max_rank; ++j) {
        cur.rows.clear();
        cur.coef.clear();
        for (std::int64_t k = A.col_ptr[j]; k < A.col_ptr[j + 1]; ++k) {
            cur.rows.push_back(A.row_idx[k]);
            cur.coef.push_back(Int(A.values[k]));
        }
        while (!cur.rows.empty()) {
            std::int32_t low = cur.rows.back();
            std::int32_t owner = pivot_owner[low];
            if (owner < 0) {
                content_normalize(cur.coef);
                pivot_owner[low] = std::int32_t(stored.size());
                stored.push_back(cur);
                ++rank;
                break;
            }
            const Col& piv = stored[owner];
            // cur <- (b/g) cur - (a/g) piv with a = cur low, b = piv low;
            // the shared low row cancels exactly.
            Wide a = Wide(cur.coef.back()), b = Wide(piv.coef.back());
            Wide g;
            if constexpr (Checked) g = gcd128(a, b);
            else g = boost::multiprecision::gcd(boost::multiprecision::cpp_int(a), boost::multiprecision::cpp_int(b));
            Wide fa = b / g, fb = a / g;
            trows.clear();
            tcoef.clear();
            std::size_t i = 0, k = 0;
            while (i < cur.rows.size() && k < piv.rows.size()) {
                if (cur.rows[i] < piv.rows[k]) {
                    trows.push_back(cur.rows[i]);
                    tcoef.push_back(fa * Wide(cur.coef[i]));
                    ++i;
                } else if (cur.rows[i] > piv.rows[k]) {
                    trows.push_back(piv.rows[k]);
                    tcoef.push_back(-fb * Wide(piv.coef[k]));
                    ++k;
                } else {
                    Wide v = fa * Wide(cur.coef[i]) - fb * Wide(piv.coef[k]);
                    if (v != 0) {
                        trows.push_back(cur.rows[i]);
                        tcoef.push_back(v);
                    }
                    ++i;
                    ++k;
                }
            }
            for (; i < cur.rows.size(); ++i) {
                trows.push_back(cur.rows[i]);
                tcoef.push_back(fa * Wide(cur.coef[i]));
            }
            for (; k < piv.rows.size(); ++k) {
                trows.push_back(piv.rows[k]);
                tcoef.push_back(-fb * Wide(piv.coef[k]));
            }
            // content-reduce the wide values, then narrow
            Wide cg = 0;
            for (const Wide& v : tcoef) {
                if constexpr (Checked) cg = gcd128(cg, v);
                else cg = boost::multiprecision::gcd(boost::multiprecision::cpp_int(cg), boost::multiprecision::cpp_int(v));
                if (cg == 1) break;
            }
            cur.rows.assign(trows.begin(), trows.end());
            cur.coef.clear();
            cur.coef.reserve(tcoef.size());
            for (Wide& v : tcoef) {
                Wide q = (cg > 1) ? v / cg : v;
                if constexpr (Checked) {
                    if (q > Wide(kInt64Max) || q < -Wide(kInt64Max)) throw Int64Overflow{};
                    cur.coef.push_back(std::int64_t(q));
                } else {
                    cur.coef.push_back(Int(q));
                }
            }
        }
    }
    return rank;
}

}  // namespace

std::int64_t rank_exact(const SparseIntMatrix& A, std::int64_t max_rank) {
    try {
        return rank_exact_impl<true>(A, max_rank);
    } catch (const Int64Overflow&) {
        return rank_exact_impl<false>(A, max_rank);
    }
}

std::int64_t rank_exact(const BoundaryMatrix& M, std::int64_t max_rank) {
    return rank_exact(M.as_sparse(), max_rank);
}

namespace {

// Ranks of all boundary maps 1..cap, chaining the kernel-dimension bound
// rank(d+1) <= f_d - rank(d). For the modular method the chain is run per
// prime (the bound is prime-specific); primes disagreeing on any rank force
// a full exact escalation.
struct RankChain {
    std::vector<std::int64_t> ranks;  // index 0..cap+1, ranks[0] = ranks[cap+1] = 0
    bool escalated = false;
};

RankChain rank_chain(const FlagSkeleton& sk, RankMethod method, const std::vector<std::uint32_t>& primes) {
    const int cap = sk.cap();
    RankChain out;
    out.ranks.assign(cap + 2, 0);

    std::vector<SparseIntMatrix> mats(cap + 1);
    int top = 0;
    for (int d = 1; d <= cap; ++d) {
        if (sk.face_count(d) == 0) break;
        mats[d] = boundary_matrix(sk, d).as_sparse();
        top = d;
    }
    if (method == RankMethod::ExactRational) {
        for (int d = 1; d <= top; ++d) {
            std::int64_t bound = sk.face_count(d - 1) - out.ranks[d - 1];
            out.ranks[d] = rank_exact(mats[d], bound);
        }
        return out;
    }

    bool agreed = true;
    bool first = true;
    for (std::uint32_t p : primes) {
        if (p <= (1u << 30)) throw std::invalid_argument("betti: primes must exceed 2^30");
        std::vector<std::int64_t> r(cap + 2, 0);
        for (int d = 1; d <= top; ++d) {
            std::int64_t bound = sk.face_count(d - 1) - r[d - 1];
            r[d] = rank_mod_prime(mats[d], p, bound);
        }
        if (first) {
            std::copy(r.begin(), r.end(), out.ranks.begin());
            first = false;
        } else if (!std::equal(r.begin(), r.end(), out.ranks.begin())) {
            agreed = false;
            break;
        }
    }
    if (primes.empty()) throw std::invalid_argument("betti: need at least one prime");
    if (!agreed) {
        out.escalated = true;
        std::fill(out.ranks.begin(), out.ranks.end(), 0);
        for (int d = 1; d <= top; ++d) {
            std::int64_t bound = sk.face_count(d - 1) - out.ranks[d - 1];
            out.ranks[d] = rank_exact(mats[d], bound);
        }
    }
    return out;
}

}  // namespace

BettiVector betti(const FlagSkeleton& sk, RankMethod method, const std::vector<std::uint32_t>& primes) {
    RankChain chain = rank_chain(sk, method, primes);
    BettiVector bv;
    bv.f = sk.f_vector();
    bv.ranks = chain.ranks;
    bv.escalated = chain.escalated;
    bv.method = (method == RankMethod::ExactRational || chain.escalated) ? "exact-rational" : "modular";
    if (method == RankMethod::Modular) bv.primes = primes;
    const int cap = sk.cap();
    bv.betti.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
        bv.betti[d] = bv.f[d] - bv.ranks[d] - bv.ranks[d + 1];
        if (bv.betti[d] < 0) throw std::logic_error("betti: negative Betti number (rank bug)");
    }
    return bv;
}

std::vector<std::int64_t> BettiVector::reduced() const {
    if (f.empty() || f[0] == 0) throw std::logic_error("reduced Betti numbers need a nonempty complex");
    std::vector<std::int64_t> r = betti;
    r[0] -= 1;
    return r;
}

std::int64_t betti_at(const FlagSkeleton& sk, int k, RankMethod method,
                      const std::vector<std::uint32_t>& primes) {
    if (k < 0) throw std::invalid_argument("betti_at: negative degree");
    const int cap = sk.cap();
    if (cap < k || (cap == k && sk.has_higher_faces()))
        throw std::invalid_argument("betti_at: cap " + std::to_string(cap) +
                                    " too small for degree " + std::to_string(k) +
                                    " (need the (k+1)-skeleton)");
    if (sk.face_count(k) == 0) return 0;

    auto ranks_for = [&](std::int64_t& rk, std::int64_t& rk1, std::uint32_t prime, bool exact) {
        // rank of the k-boundary (identity-free: d=0 has rank 0)
        rk = 0;
        if (k >= 1) {
            SparseIntMatrix a = boundary_matrix(sk, k).as_sparse();
            rk = exact ? rank_exact(a) : rank_mod_prime(a, prime);
        }
        rk1 = 0;
        if (k + 1 <= cap && sk.face_count(k + 1) > 0) {
            SparseIntMatrix b = boundary_matrix(sk, k + 1).as_sparse();
            std::int64_t bound = sk.face_count(k) - rk;
            rk1 = exact ? rank_exact(b, bound) : rank_mod_prime(b, prime, bound);
        }
    };

    if (method == RankMethod::ExactRational) {
        std::int64_t rk, rk1;
        ranks_for(rk, rk1, 0, true);
        return sk.face_count(k) - rk - rk1;
    }
    if (primes.empty()) throw std::invalid_argument("betti_at: need at least one prime");
    std::int64_t rk0 = -1, rk10 = -1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (primes[i] <= (1u << 30)) throw std::invalid_argument("betti_at: primes must exceed 2^30");
        std::int64_t rk, rk1;
        ranks_for(rk, rk1, primes[i], false);
        if (i == 0) {
            rk0 = rk;
            rk10 = rk1;
        } else if (rk != rk0 || rk1 != rk10) {
            ranks_for(rk, rk1, 0, true);  // primes disagree: exact escalation
            return sk.face_count(k) - rk - rk1;
        }
    }
    return sk.face_count(k) - rk0 - rk10;
}

std::int64_t morse_lower_bound(const std::vector<std::int64_t>& f, int k) {
    auto get = [&](int i) -> std::int64_t {
        return (i >= 0 && i < int(f.size())) ? f[i] : 0;
    };
    return get(k) - get(k - 1) - get(k + 1);
}

void write_betti_report(const BettiVector& bv, std::ostream& os) {
    nlohmann::json j;
    j["f_vector"] = bv.f;
    j["ranks"] = bv.ranks;
    j["betti"] = bv.betti;
    j["method"] = bv.method;
    j["primes"] = bv.primes;
    if (bv.escalated) j["escalated"] = true;
    os << j.dump(2) << '\n';
}

}  // namespace flaglab
