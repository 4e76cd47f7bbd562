#include "flaglab/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace flaglab {

NormalizedLaplacian::NormalizedLaplacian(const Graph& g) : n_(g.vertex_count()) {
    for (int v = 0; v < n_; ++v)
        if (g.degree(v) == 0)
            throw IsolatedVertexError("normalized Laplacian undefined: vertex " + std::to_string(v) + " has degree 0");
    a_.assign(std::size_t(n_) * n_, 0.0);
    std::vector<double> inv_sqrt_deg(n_);
    for (int v = 0; v < n_; ++v) inv_sqrt_deg[v] = 1.0 / std::sqrt(double(g.degree(v)));
    for (int u = 0; u < n_; ++u) {
        a_[std::size_t(u) * n_ + u] = 1.0;
        for (int v : g.neighbors(u)) {
            if (v <= u) continue;
            double w = -inv_sqrt_deg[u] * inv_sqrt_deg[v];
            a_[std::size_t(u) * n_ + v] = w;
            a_[std::size_t(v) * n_ + u] = w;
        }
    }
}

namespace {

// Householder reduction of the symmetric matrix a (row-major, modified in
// place) to tridiagonal form; d gets the diagonal, e the subdiagonal in
// e[1..n-1]. Eigenvalues-only variant, no transform accumulation.
void tridiagonalize(std::vector<double>& a, int n, std::vector<double>& d, std::vector<double>& e) {
    auto at = [&](int i, int j) -> double& { return a[std::size_t(i) * n + j]; };
    std::vector<double> p(n);
    for (int i = n - 1; i >= 1; --i) {
        int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(at(i, k));
            if (scale == 0.0) {
                e[i] = at(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    double s = 0.0;
                    for (int k = 0; k <= j; ++k) s += at(j, k) * at(i, k);
                    for (int k = j + 1; k <= l; ++k) s += at(k, j) * at(i, k);
                    p[j] = s / h;
                    f += p[j] * at(i, j);
                }
                double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    double fj = at(i, j);
                    double gj = p[j] - hh * fj;
                    p[j] = gj;
                    for (int k = 0; k <= j; ++k) at(j, k) -= fj * p[k] + gj * at(i, k);
                }
            }
        } else {
            e[i] = at(i, l);
        }
    }
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) d[i] = at(i, i);
}

// Implicit-shift QL on a symmetric tridiagonal matrix; eigenvalues land in d.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, int n) {
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) + dd == dd) break;
            }
            if (m != l) {
                if (iter++ == 50) throw ConvergenceError("QL iteration failed to converge", iter);
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, pp = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {  // rotation underflow: deflate and restart
                        d[i + 1] -= pp;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - pp;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    pp = s * r;
                    d[i + 1] = g + pp;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= pp;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
    if (n == 0) return {};
    std::vector<double> d(n), e(n, 0.0);
    if (n == 1) {
        d[0] = a[0];
    } else {
        tridiagonalize(a, n, d, e);
        ql_implicit(d, e, n);
    }
    std::sort(d.begin(), d.end());
    return d;
}

Spectrum spectrum(const NormalizedLaplacian& L) {
    Spectrum s;
    s.eigenvalues = symmetric_eigenvalues(L.data(), L.order());
    return s;
}

double lambda2(const Graph& g) {
    NormalizedLaplacian L(g);  // throws IsolatedVertexError on degree 0
    if (!g.is_connected()) throw DisconnectedGraphError("lambda2 requires a connected graph");
    return spectrum(L).eigenvalues[1];
}

PerturbationReport perturbation_check(const Graph& g, int u, int v) {
    if (!g.has_edge(u, v)) throw std::invalid_argument("perturbation_check: edge not present");
    Graph h = delete_edge(g, u, v);
    NormalizedLaplacian L(g);
    NormalizedLaplacian Lp(h);  // throws if the deletion isolates a vertex

    const int n = L.order();
    double rhs = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double diff = L(i, j) - Lp(i, j);
            rhs += diff * diff;
        }

    Spectrum a = spectrum(L), b = spectrum(Lp);
    double lhs = 0.0;
    for (int i = 0; i < n; ++i) {
        double diff = a.eigenvalues[i] - b.eigenvalues[i];
        lhs += diff * diff;
    }
    return {lhs, rhs, lhs <= rhs + 1e-8};
}

}  // namespace flaglab
