#pragma once

#include <optional>
#include <vector>

#include "pgl2hom/intmat.hpp"

namespace pgl2hom {

/// Dense matrix over Z, used for the unimodular transforms of a Smith
/// decomposition (these stay small even when the input is large).
struct DenseMat {
    int nrows = 0, ncols = 0;
    std::vector<mpz_class> a;  // row-major

    DenseMat() = default;
    DenseMat(int r, int c) : nrows(r), ncols(c), a(static_cast<size_t>(r) * c) {}
    static DenseMat identity(int n);

    mpz_class& at(int r, int c) { return a[static_cast<size_t>(r) * ncols + c]; }
    const mpz_class& at(int r, int c) const { return a[static_cast<size_t>(r) * ncols + c]; }
};

DenseMat dense_mul(const DenseMat& x, const DenseMat& y);
/// Determinant by fraction-free (Bareiss) elimination.
mpz_class dense_det(const DenseMat& m);

struct SmithOptions {
    bool want_u = false;     // U with U*M*V = D
    bool want_v = false;     // V
    bool want_v_inv = false; // V^-1 (implies bookkeeping alongside V)
    bool parallel = true;    // OpenMP row updates; results are identical either way
};

struct SmithResult {
    /// Nonzero diagonal of D, positive, d1 | d2 | ... ; rank == diag.size().
    std::vector<mpz_class> diag;
    int rank = 0;
    std::optional<DenseMat> u, v, v_inv;
};

/// Smith normal form: U*M*V = D with U, V unimodular and D diagonal
/// with the divisibility chain. Sparse fraction-free elimination;
/// pivot choice is deterministic, so results never depend on the
/// thread count.
SmithResult smith(const IntMat& m, const SmithOptions& opts = {});
SmithResult smith(const SparseBoundary& m, const SmithOptions& opts = {});

/// rank over Q (= number of nonzero invariant factors).
int rank_of(const IntMat& m);
int rank_of(const SparseBoundary& m);

}  // namespace pgl2hom
