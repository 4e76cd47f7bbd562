#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "flaglab/graph.hpp"

namespace flaglab {

struct IsolatedVertexError : std::runtime_error {
    explicit IsolatedVertexError(const std::string& what) : std::runtime_error(what) {}
};

struct DisconnectedGraphError : std::runtime_error {
    explicit DisconnectedGraphError(const std::string& what) : std::runtime_error(what) {}
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, int iters)
        : std::runtime_error(what + " after " + std::to_string(iters) + " iterations"),
          iterations(iters) {}
    int iterations;
};

// L = I - A where A averages over neighbors: L[u][u] = 1,
// L[u][v] = -1/sqrt(deg u * deg v) for edges, 0 otherwise. Undefined when any
// degree is zero; construction refuses such graphs.
class NormalizedLaplacian {
public:
    explicit NormalizedLaplacian(const Graph& g);

    int order() const { return n_; }
    double operator()(int i, int j) const { return a_[std::size_t(i) * n_ + j]; }
    const std::vector<double>& data() const { return a_; }

private:
    int n_ = 0;
    std::vector<double> a_;  // row-major dense symmetric
};

struct Spectrum {
    std::vector<double> eigenvalues;  // ascending
    double tolerance = 1e-9;

    double lambda(int i) const { return eigenvalues.at(i); }
    // Eigenvalues treated as zero modes; their count equals the number of
    // connected components for a normalized Laplacian.
    int kernel_multiplicity(double tol = 1e-6) const {
        int k = 0;
        while (k < int(eigenvalues.size()) && eigenvalues[k] < tol) ++k;
        return k;
    }
};

// Full spectrum by Householder tridiagonalization + implicit-shift QL.
// Throws ConvergenceError (with iteration count) if QL stalls.
Spectrum spectrum(const NormalizedLaplacian& L);

// Eigenvalues of a dense symmetric matrix, ascending. Exposed for tests.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

// Second-smallest normalized-Laplacian eigenvalue. Requires a connected
// graph with all degrees >= 1; the two failure modes are distinct errors.
double lambda2(const Graph& g);

struct PerturbationReport {
    double lhs;  // sum of squared eigenvalue shifts, ascending pairing
    double rhs;  // squared Frobenius norm of the Laplacian difference
    bool ok;     // lhs <= rhs + 1e-8
};

// Deletes edge {u,v} and compares both normalized-Laplacian spectra against
// the squared-Frobenius-norm bound on eigenvalue movement.
PerturbationReport perturbation_check(const Graph& g, int u, int v);

}  // namespace flaglab
