#include <doctest.h>

#include <random>
#include <sstream>
#include <vector>

#include "pgl2hom/intmat.hpp"
#include "pgl2hom/snf.hpp"

using namespace pgl2hom;

namespace {

// Independent dense Smith oracle. Diagonalizes by repeatedly moving
// the globally smallest nonzero entry of the working submatrix to the
// corner and reducing its row and column (Smith's original strategy,
// which keeps coefficients small); the divisibility chain is then
// imposed on the diagonal values, where gcd/lcm exchanges realize the
// invariant factors of a diagonal matrix. Shares nothing with the
// sparse engine.
std::vector<mpz_class> reference_snf(const IntMat& m) {
    int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols, 0));
    for (const auto& [rc, v] : m.entries()) a[rc.first][rc.second] = v;

    std::vector<mpz_class> diag;
    int k = 0;
    while (k < rows && k < cols) {
        for (;;) {
            int pi = -1, pj = -1;
            for (int i = k; i < rows; ++i)
                for (int j = k; j < cols; ++j)
                    if (a[i][j] != 0 &&
                        (pi < 0 || mpz_cmpabs(a[i][j].get_mpz_t(), a[pi][pj].get_mpz_t()) < 0)) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) {
                if (a[k][k] == 0) goto done;  // submatrix is zero
                break;
            }
            if (a[k][k] != 0 && pi == k && pj == k) {
                bool clean = true;
                for (int i = k + 1; i < rows; ++i)
                    if (a[i][k] != 0) clean = false;
                for (int j = k + 1; j < cols; ++j)
                    if (a[k][j] != 0) clean = false;
                if (clean) break;
            }
            std::swap(a[k], a[pi]);
            for (int i = 0; i < rows; ++i) std::swap(a[i][k], a[i][pj]);
            for (int i = k + 1; i < rows; ++i) {
                if (a[i][k] == 0) continue;
                mpz_class q = a[i][k] / a[k][k];
                if (q != 0)
                    for (int j = k; j < cols; ++j) a[i][j] -= q * a[k][j];
            }
            for (int j = k + 1; j < cols; ++j) {
                if (a[k][j] == 0) continue;
                mpz_class q = a[k][j] / a[k][k];
                if (q != 0)
                    for (int i = k; i < rows; ++i) a[i][j] -= q * a[i][k];
            }
        }
        diag.push_back(abs(a[k][k]));
        ++k;
    }
done:
    // invariant factors of a diagonal matrix
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < diag.size(); ++i)
            for (size_t j = i + 1; j < diag.size(); ++j) {
                if (mpz_divisible_p(diag[j].get_mpz_t(), diag[i].get_mpz_t())) continue;
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
                mpz_class l = diag[i] / g * diag[j];
                diag[i] = g;
                diag[j] = l;
                changed = true;
            }
    }
    std::sort(diag.begin(), diag.end());
    return diag;
}

IntMat random_matrix(std::mt19937& rng, int maxdim, int maxmag, double density) {
    std::uniform_int_distribution<int> dimd(0, maxdim);
    int r = dimd(rng), c = dimd(rng);
    IntMat m(r, c);
    std::uniform_int_distribution<int> val(-maxmag, maxmag);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (coin(rng) < density) m.set(i, j, val(rng));
    return m;
}

DenseMat diag_matrix(const SmithResult& s, int rows, int cols) {
    DenseMat d(rows, cols);
    for (int i = 0; i < s.rank; ++i) d.at(i, i) = s.diag[i];
    return d;
}

DenseMat to_dense(const IntMat& m) {
    DenseMat d(m.rows(), m.cols());
    for (const auto& [rc, v] : m.entries()) d.at(rc.first, rc.second) = v;
    return d;
}

bool equal_dense(const DenseMat& a, const DenseMat& b) {
    if (a.nrows != b.nrows || a.ncols != b.ncols) return false;
    for (size_t i = 0; i < a.a.size(); ++i)
        if (a.a[i] != b.a[i]) return false;
    return true;
}

}  // namespace

TEST_CASE("smith: pinned small examples") {
    CHECK(smith(IntMat::identity(3)).diag == std::vector<mpz_class>{1, 1, 1});

    IntMat m = IntMat::from_rows({{2, 4}, {6, 8}});
    auto s = smith(m);
    CHECK(s.diag == std::vector<mpz_class>{2, 4});
    CHECK(reference_snf(m) == s.diag);

    IntMat z(3, 2);
    CHECK(smith(z).rank == 0);
    CHECK(smith(z).diag.empty());
}

TEST_CASE("smith: postconditions on random matrices") {
    std::mt19937 rng(20240521);
    SmithOptions opts;
    opts.want_u = opts.want_v = opts.want_v_inv = true;
    for (int iter = 0; iter < 120; ++iter) {
        IntMat m = random_matrix(rng, 14, 100, iter % 3 == 0 ? 0.9 : 0.35);
        SmithResult s = smith(m, opts);
        // divisibility chain
        for (int i = 0; i + 1 < s.rank; ++i)
            CHECK(mpz_divisible_p(s.diag[i + 1].get_mpz_t(), s.diag[i].get_mpz_t()));
        // U M V = D
        DenseMat lhs = dense_mul(dense_mul(*s.u, to_dense(m)), *s.v);
        CHECK(equal_dense(lhs, diag_matrix(s, m.rows(), m.cols())));
        // unimodularity
        mpz_class du = dense_det(*s.u), dv = dense_det(*s.v);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
        // V * V^-1 = I
        CHECK(equal_dense(dense_mul(*s.v, *s.v_inv), DenseMat::identity(m.cols())));
        // independent oracle
        CHECK(s.diag == reference_snf(m));
    }
}

TEST_CASE("smith: larger random matrices against the oracle") {
    std::mt19937 rng(77);
    for (int iter = 0; iter < 12; ++iter) {
        IntMat m = random_matrix(rng, 40, 100, 0.25);
        CHECK(smith(m).diag == reference_snf(m));
    }
}

TEST_CASE("smith: serial and parallel paths agree") {
    std::mt19937 rng(4040);
    for (int iter = 0; iter < 20; ++iter) {
        IntMat m = random_matrix(rng, 30, 50, 0.4);
        SmithOptions ser;
        ser.parallel = false;
        SmithOptions par;
        par.parallel = true;
        CHECK(smith(m, ser).diag == smith(m, par).diag);
    }
}

TEST_CASE("smith: boundary container path matches the map path") {
    std::mt19937 rng(99);
    for (int iter = 0; iter < 20; ++iter) {
        int rows = 20, cols = 35;
        SparseBoundary b;
        b.nrows = rows;
        b.ncols = cols;
        b.colptr.push_back(0);
        std::uniform_int_distribution<int> rowd(0, rows - 1);
        std::uniform_int_distribution<int> sgn(0, 1);
        for (int c = 0; c < cols; ++c) {
            int k = c % 5;
            std::vector<int> picked;
            for (int t = 0; t < k; ++t) picked.push_back(rowd(rng));
            std::sort(picked.begin(), picked.end());
            picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
            for (int r : picked) {
                b.rowidx.push_back(r);
                b.value.push_back(sgn(rng) ? 1 : -1);
            }
            b.colptr.push_back(static_cast<long long>(b.rowidx.size()));
        }
        CHECK(smith(b).diag == smith(to_intmat(b)).diag);
    }
}

TEST_CASE("matrix market round trip") {
    std::mt19937 rng(5);
    IntMat m = random_matrix(rng, 10, 1000, 0.5);
    std::ostringstream os;
    write_matrix_market(os, m);
    std::istringstream is(os.str());
    IntMat back = read_matrix_market(is);
    CHECK(back == m);
}
