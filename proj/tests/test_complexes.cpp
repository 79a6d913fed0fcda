#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "pgl2hom/complexes.hpp"
#include "pgl2hom/errors.hpp"
#include "pgl2hom/groups.hpp"

using namespace pgl2hom;

namespace {

FinAbGroup G(std::initializer_list<long> fs) {
    FinAbGroup g;
    for (long f : fs) g.factors.push_back(f);
    return g;
}

// small exact product of boundary maps, for the d^2 = 0 checks
IntMat mul_small(const SparseBoundary& a, const SparseBoundary& b) {
    REQUIRE(a.ncols == b.nrows);
    IntMat out(a.nrows, b.ncols);
    for (int j = 0; j < b.ncols; ++j)
        for (long long kb = b.colptr[j]; kb < b.colptr[j + 1]; ++kb) {
            int mid = b.rowidx[kb];
            for (long long ka = a.colptr[mid]; ka < a.colptr[mid + 1]; ++ka)
                out.add(a.rowidx[ka], j, static_cast<long>(a.value[ka]) * b.value[kb]);
        }
    return out;
}

}  // namespace

TEST_CASE("projective line counts and structure") {
    FiniteRing f5 = parse_ring_spec("gf:5^1");
    ProjLine p5 = projective_line(f5);
    CHECK(p5.n_classes == 6);

    CHECK(projective_line(parse_ring_spec("zmod:6")).n_classes == 12);
    CHECK(projective_line(parse_ring_spec("zmod:4")).n_classes == 6);

    // generic is symmetric and irreflexive; for fields generic = distinct
    for (int i = 0; i < p5.n_classes; ++i) {
        CHECK_FALSE(p5.generic[i][i]);
        for (int j = 0; j < p5.n_classes; ++j) {
            CHECK(p5.generic[i][j] == p5.generic[j][i]);
            if (i != j) CHECK(p5.generic[i][j]);
        }
    }

    // the infinity / zero / finite-label conventions are consistent
    CHECK(p5.finite_label(p5.finite_class(2, f5), f5) == 2);
    CHECK(p5.finite_label(p5.zero_class, f5) == -1);
}

TEST_CASE("class action is a group action") {
    FiniteRing r = parse_ring_spec("zmod:9");
    ProjLine pl = projective_line(r);
    // spot-check the homomorphism property on generators x all classes
    std::vector<Mat2> gens;
    for (int t = 0; t < r.order(); ++t) {
        gens.push_back(Mat2{r.one(), t, r.zero(), r.one()});
        gens.push_back(Mat2{r.one(), r.zero(), t, r.one()});
    }
    for (int u : r.units()) gens.push_back(Mat2{u, r.zero(), r.zero(), r.one()});
    for (const Mat2& g : gens)
        for (const Mat2& h : gens) {
            Mat2 gh = mat_mul(r, g, h);
            for (int c = 0; c < pl.n_classes; ++c)
                CHECK(apply_to_class(r, pl, gh, c) ==
                      apply_to_class(r, pl, g, apply_to_class(r, pl, h, c)));
        }
}

TEST_CASE("GE2 classes cover everything over the semilocal family") {
    for (const char* spec : {"gf:7^1", "zmod:6", "prod:zmod:2+zmod:2", "zmod:4", "zmod:25",
                             "dual:gf:5^1", "gf:3^2"}) {
        FiniteRing r = parse_ring_spec(spec);
        ProjLine pl = projective_line(r);
        CHECK(static_cast<int>(ge2_classes(r, pl).size()) == pl.n_classes);
    }
}

TEST_CASE("complex construction: counts, boundary convention, d^2 = 0") {
    FiniteRing f7 = parse_ring_spec("gf:7^1");
    ProjLine p7 = projective_line(f7);
    ChainComplexZ c7 = build_complex(f7, p7, 3);
    CHECK(c7.count(3) == 8 * 7 * 6 * 5);  // falling factorial over a field

    // d1(<inf>,<0>) = (<0>) - (<inf>)
    FiniteRing f5 = parse_ring_spec("gf:5^1");
    ProjLine p5 = projective_line(f5);
    ChainComplexZ c5 = build_complex(f5, p5, 2);
    CHECK(c5.count(2) == 120);
    long long col = -1;
    for (long long j = 0; j < c5.count(1); ++j)
        if (c5.basis[1][2 * j] == p5.inf_class && c5.basis[1][2 * j + 1] == p5.zero_class) col = j;
    REQUIRE(col >= 0);
    const SparseBoundary& d1 = c5.boundary[1];
    REQUIRE(d1.colptr[col + 1] - d1.colptr[col] == 2);
    for (long long k = d1.colptr[col]; k < d1.colptr[col + 1]; ++k) {
        int face = c5.basis[0][d1.rowidx[k]];
        if (face == p5.zero_class) CHECK(d1.value[k] == 1);   // drop position 0
        if (face == p5.inf_class) CHECK(d1.value[k] == -1);   // drop position 1
    }

    // simplicial identities for a few rings
    for (const char* spec : {"gf:5^1", "zmod:6", "zmod:9"}) {
        FiniteRing r = parse_ring_spec(spec);
        ProjLine pl = projective_line(r);
        ChainComplexZ c = build_complex(r, pl, 3);
        CHECK(mul_small(c.boundary[1], c.boundary[2]).nnz() == 0);
        CHECK(mul_small(c.boundary[2], c.boundary[3]).nnz() == 0);
        CHECK(mul_small(c.boundary[0], c.boundary[1]).nnz() == 0);  // eps . d1 = 0
    }
}

TEST_CASE("GE2 and GL2 variants coincide over semilocal rings") {
    for (const char* spec : {"gf:5^1", "zmod:6", "zmod:8"}) {
        FiniteRing r = parse_ring_spec(spec);
        ProjLine pl = projective_line(r);
        ChainComplexZ y = build_complex(r, pl, 2, ComplexVariant::GE2);
        ChainComplexZ l = build_complex(r, pl, 2, ComplexVariant::GL2);
        for (int n = 0; n <= 2; ++n) {
            CHECK(y.count(n) == l.count(n));
            CHECK(y.basis[n] == l.basis[n]);
        }
    }
}

TEST_CASE("homology of the augmented complex") {
    // H0 always vanishes (augmented form)
    for (const char* spec : {"gf:5^1", "zmod:6", "prod:zmod:2+zmod:2", "zmod:8"}) {
        FiniteRing r = parse_ring_spec(spec);
        ProjLine pl = projective_line(r);
        ChainComplexZ c = build_complex(r, pl, 1);
        CHECK(complex_homology(c, 0).is_trivial());
    }
    // exactness below the residue degree for F7
    FiniteRing f7 = parse_ring_spec("gf:7^1");
    ProjLine p7 = projective_line(f7);
    ChainComplexZ c7 = build_complex(f7, p7, 3);
    CHECK(complex_homology(c7, 1).is_trivial());
    CHECK(complex_homology(c7, 2).is_trivial());
    // non-augmented variant has H0 = Z
    ChainComplexZ plain = build_complex(f7, p7, 1, ComplexVariant::GE2, false);
    CHECK(complex_homology(plain, 0) == G({0}));
    CHECK_THROWS_AS(complex_homology(c7, 3), input_error);  // needs d4
}

TEST_CASE("H1 via the clique-complex fundamental group") {
    FiniteRing f5 = parse_ring_spec("gf:5^1");
    CHECK(h1_via_pi1(f5, projective_line(f5)).is_trivial());
    FiniteRing z4 = parse_ring_spec("zmod:4");
    CHECK(h1_via_pi1(z4, projective_line(z4)).is_trivial());

    // Z/6 is not universal: both H1 routes see Z + Z
    FiniteRing z6 = parse_ring_spec("zmod:6");
    ProjLine p6 = projective_line(z6);
    FinAbGroup via_pi1 = h1_via_pi1(z6, p6);
    FinAbGroup via_snf = complex_homology(build_complex(z6, p6, 2), 1);
    CHECK(via_pi1 == via_snf);
    CHECK(via_pi1 == G({0, 0}));
}

TEST_CASE("orbit normalization") {
    FiniteRing f5 = parse_ring_spec("gf:5^1");
    ProjLine pl = projective_line(f5);
    const int one = pl.finite_class(1, f5);
    const int three = pl.finite_class(3, f5);

    // already normalized: tuple unchanged
    NormalizedTuple nt = orbit_normalize(f5, pl, {pl.inf_class, pl.zero_class, one, three});
    CHECK(nt.classes == std::vector<int>{pl.inf_class, pl.zero_class, one, three});
    CHECK(nt.labels == std::vector<int>{3});

    // swapped tuple: brute-force over all 120 group elements finds a
    // unique normalizer, and it matches orbit_normalize
    std::vector<int> tup = {pl.zero_class, pl.inf_class, one, three};
    NormalizedTuple sw = orbit_normalize(f5, pl, tup);
    FiniteGroup g = pgl2(f5);
    CHECK(g.order() == 120);
    int hits = 0, label = -1;
    for (int e = 0; e < g.order(); ++e) {
        const Mat2& m = g.matrix(e);
        if (apply_to_class(f5, pl, m, tup[0]) == pl.inf_class &&
            apply_to_class(f5, pl, m, tup[1]) == pl.zero_class &&
            apply_to_class(f5, pl, m, tup[2]) == one) {
            ++hits;
            label = pl.finite_label(apply_to_class(f5, pl, m, tup[3]), f5);
        }
    }
    CHECK(hits == 1);
    CHECK(label == sw.labels[0]);
    CHECK(sw.labels[0] == 2);  // z -> 1/z sends 3 to its inverse

    // restricted to local rings
    FiniteRing z6 = parse_ring_spec("zmod:6");
    ProjLine p6 = projective_line(z6);
    CHECK_THROWS_AS(orbit_normalize(z6, p6, {p6.inf_class, p6.zero_class, p6.finite_class(1, z6)}),
                    hypothesis_error);
}

TEST_CASE("orbit relations reproduce the closed five-term shape") {
    // the normalized faces of (inf,0,1,x,y) carry the labels
    // x, y, y/x, (1-x^-1)/(1-y^-1), (1-x)/(1-y)
    FiniteRing r = parse_ring_spec("gf:7^1");
    ProjLine pl = projective_line(r);
    const int one = pl.finite_class(1, r);
    for (int x : wedge_set(r))
        for (int y : wedge_set(r)) {
            if (!r.is_unit(r.sub(x, y))) continue;
            std::vector<int> t5 = {pl.inf_class, pl.zero_class, one, pl.finite_class(x, r),
                                   pl.finite_class(y, r)};
            auto face = [&](int drop) {
                std::vector<int> f;
                for (int s = 0; s <= 4; ++s)
                    if (s != drop) f.push_back(t5[s]);
                return orbit_normalize(r, pl, f).labels[0];
            };
            CHECK(face(4) == x);
            CHECK(face(3) == y);
            CHECK(face(2) == r.mul(y, r.inv(x)));
            CHECK(face(1) ==
                  r.mul(r.sub(r.one(), r.inv(x)), r.inv(r.sub(r.one(), r.inv(y)))));
            CHECK(face(0) == r.mul(r.sub(r.one(), x), r.inv(r.sub(r.one(), y))));
        }
}

TEST_CASE("scissors via orbits: hypothesis gates") {
    FiniteRing f3 = parse_ring_spec("gf:3^1");
    CHECK_THROWS_AS(scissors_from_orbits(f3, projective_line(f3)), hypothesis_error);
    FiniteRing z6 = parse_ring_spec("zmod:6");
    CHECK_THROWS_AS(scissors_from_orbits(z6, projective_line(z6)), hypothesis_error);
    FiniteRing f4 = parse_ring_spec("gf:2^2");
    CHECK_THROWS_AS(scissors_from_orbits(f4, projective_line(f4)), hypothesis_error);
}

TEST_CASE("budget guard refuses oversized complexes with an estimate") {
    FiniteRing f7 = parse_ring_spec("gf:7^1");
    ProjLine pl = projective_line(f7);
    CHECK_THROWS_WITH_AS(build_complex(f7, pl, 3, ComplexVariant::GE2, true, 100),
                         doctest::Contains("budget"), budget_error);
}

TEST_CASE("complex dump round-trips through MatrixMarket") {
    FiniteRing f5 = parse_ring_spec("gf:5^1");
    ProjLine pl = projective_line(f5);
    ChainComplexZ c = build_complex(f5, pl, 2);
    std::string dir = (std::filesystem::temp_directory_path() / "pgl2hom_dump_test").string();
    dump_complex(c, dir, "f5");
    IntMat back = read_matrix_market_file(dir + "/f5_d2.mtx");
    CHECK(back == to_intmat(c.boundary[2]));
    std::filesystem::remove_all(dir);
}
