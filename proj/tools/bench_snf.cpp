// Benchmark for the exact linear algebra kernels: the OpenMP build of
// the Smith elimination against the same engine pinned to one thread,
// on synthetic sparse matrices and on real boundary maps.
#include <chrono>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "pgl2hom/complexes.hpp"
#include "pgl2hom/groups.hpp"
#include "pgl2hom/parallel.hpp"
#include "pgl2hom/snf.hpp"

using namespace pgl2hom;
using clock_type = std::chrono::steady_clock;

namespace {

double run_ms(const SparseBoundary& m, bool parallel, std::vector<mpz_class>* diag) {
    SmithOptions opts;
    opts.parallel = parallel;
    auto t0 = clock_type::now();
    SmithResult s = smith(m, opts);
    double ms = std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
    *diag = s.diag;
    return ms;
}

SparseBoundary random_sparse(int rows, int cols, int per_col, std::mt19937& rng) {
    SparseBoundary b;
    b.nrows = rows;
    b.ncols = cols;
    b.colptr.push_back(0);
    // boundary-like entries: a few +-1 per column, the regime the
    // elimination is built for
    std::uniform_int_distribution<int> rowd(0, rows - 1), sgn(0, 1);
    for (int c = 0; c < cols; ++c) {
        std::vector<int> picked;
        for (int t = 0; t < per_col; ++t) picked.push_back(rowd(rng));
        std::sort(picked.begin(), picked.end());
        picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
        for (int r : picked) {
            b.rowidx.push_back(r);
            b.value.push_back(static_cast<signed char>(sgn(rng) ? 1 : -1));
        }
        b.colptr.push_back(static_cast<long long>(b.rowidx.size()));
    }
    return b;
}

void report(const std::string& name, const SparseBoundary& m, int threads) {
    std::vector<mpz_class> d1, dn;
    set_threads(1);
    double serial = run_ms(m, false, &d1);
    set_threads(threads);
    double par = run_ms(m, true, &dn);
    bool same = d1 == dn;
    std::cout << name << ": " << m.nrows << "x" << m.ncols << ", nnz " << m.nnz() << "\n"
              << "  serial    " << serial << " ms\n"
              << "  openmp(" << threads << ") " << par << " ms   speedup "
              << (par > 0 ? serial / par : 0.0) << "  identical " << (same ? "yes" : "NO")
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP Smith elimination"};
    int threads = std::max(2, max_threads());
    int size = 60;
    std::string ring = "gf:7^1";
    app.add_option("--threads", threads, "thread count for the parallel run");
    app.add_option("--size", size, "synthetic matrix dimension (exact SNF of random square\n                  matrices swells quickly; keep this modest)");
    app.add_option("--ring", ring, "ring spec for the boundary benchmark");
    CLI11_PARSE(app, argc, argv);

    std::mt19937 rng(12345);
    report("square random", random_sparse(size, size, 8, rng), threads);
    report("tall random", random_sparse(16 * size, 4 * size, 5, rng), threads);
    report("wide random", random_sparse(4 * size, 16 * size, 5, rng), threads);

    FiniteRing r = parse_ring_spec(ring);
    ProjLine pl = projective_line(r);
    ChainComplexZ c = build_complex(r, pl, 3);
    report("boundary d3 of Y(" + ring + ")", c.boundary[3], threads);

    FiniteGroup d3 = dihedral(3);
    report("bar d4 of D3", bar_boundary(d3, 4), threads);
    return 0;
}
