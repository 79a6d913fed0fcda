#include <doctest.h>

#include <algorithm>
#include <set>

#include "pgl2hom/errors.hpp"
#include "pgl2hom/rings.hpp"

using namespace pgl2hom;

namespace {

FinAbGroup G(std::initializer_list<long> fs) {
    FinAbGroup g;
    for (long f : fs) g.factors.push_back(f);
    return g;
}

}  // namespace

TEST_CASE("zmod construction") {
    FiniteRing z6 = make_zmod(6);
    CHECK(z6.order() == 6);
    CHECK(z6.units() == std::vector<int>{1, 5});
    CHECK(z6.characteristic() == 6);
    CHECK_FALSE(z6.is_local());

    FiniteRing z1 = make_zmod(1);
    CHECK(z1.order() == 1);
    CHECK(z1.units() == std::vector<int>{0});

    CHECK(make_zmod(8).units() == std::vector<int>{1, 3, 5, 7});
    CHECK_THROWS_AS(make_zmod(0), input_error);
    CHECK_THROWS_AS(make_zmod(65), input_error);
    CHECK(make_zmod(64).order() == 64);
}

TEST_CASE("ring axioms hold exhaustively for the whole family") {
    for (const char* spec :
         {"zmod:6", "zmod:1", "zmod:4", "zmod:8", "zmod:9", "zmod:25", "zmod:64", "gf:5^1",
          "gf:2^2", "gf:3^2", "gf:2^3", "gf:3^3", "dual:gf:5^1", "prod:zmod:2+zmod:3",
          "prod:zmod:2+zmod:2", "dual:zmod:4", "prod:zmod:2+prod:zmod:2+zmod:3"}) {
        FiniteRing r = parse_ring_spec(spec);
        std::string why;
        INFO(spec << ": " << why);
        CHECK(verify_ring_axioms(r, &why));
    }
}

TEST_CASE("galois fields") {
    FiniteRing f5 = make_galois_field(5, 1);
    CHECK(f5.order() == 5);
    CHECK(f5.units().size() == 4);

    FiniteRing f9 = make_galois_field(3, 2);
    CHECK(f9.order() == 9);
    for (int a = 1; a < 9; ++a) CHECK(f9.is_unit(a));
    CHECK(f9.characteristic() == 3);

    // default modulus for GF(4) is x^2+x+1, the unique irreducible quadratic
    FiniteRing f4 = make_galois_field(2, 2, std::vector<int>{1, 1, 1});
    CHECK(f4.order() == 4);
    CHECK(f4.spec_string() == "gf:2^2");  // explicit default collapses to the short spec

    CHECK_THROWS_AS(make_galois_field(4, 1), input_error);
    CHECK_THROWS_WITH_AS(make_galois_field(2, 2, std::vector<int>{1, 0, 1}),
                         doctest::Contains("reducible"), input_error);

    FiniteRing f8 = make_galois_field(2, 3);
    CHECK(f8.order() == 8);
    CHECK(f8.units().size() == 7);
}

TEST_CASE("products, duals, CRT") {
    FiniteRing p = parse_ring_spec("prod:zmod:2+zmod:3");
    CHECK(p.order() == 6);
    FiniteRing z6 = make_zmod(6);
    // CRT: x -> (x mod 2, x mod 3) is a ring isomorphism Z/6 -> Z/2 x Z/3
    auto embed = [&](int x) { return (x % 2) * 3 + (x % 3); };
    std::set<int> image;
    for (int x = 0; x < 6; ++x) {
        image.insert(embed(x));
        for (int y = 0; y < 6; ++y) {
            CHECK(embed(z6.add(x, y)) == p.add(embed(x), embed(y)));
            CHECK(embed(z6.mul(x, y)) == p.mul(embed(x), embed(y)));
        }
    }
    CHECK(image.size() == 6);

    FiniteRing d5 = parse_ring_spec("dual:gf:5^1");
    CHECK(d5.order() == 25);
    CHECK(d5.units().size() == 20);
    CHECK(d5.is_local());
    CHECK(d5.residue_field_order() == 5);

    FiniteRing v4 = parse_ring_spec("prod:zmod:2+zmod:2");
    CHECK(v4.order() == 4);
    CHECK(v4.units().size() == 1);

    CHECK_THROWS_AS(parse_ring_spec("prod:zmod:16+zmod:16"), input_error);
    CHECK_THROWS_WITH_AS(parse_ring_spec("ideal:zmod:5"), doctest::Contains("ideal:zmod:5"),
                         input_error);
}

TEST_CASE("unit groups with discrete logs") {
    auto check_logs = [](const FiniteRing& r) {
        UnitGroupData u = unit_group(r);
        REQUIRE(u.gens.size() == u.group.factors.size());
        mpz_class order = u.group.is_finite() ? u.group.order() : 0;
        CHECK(order == static_cast<long>(r.units().size()));
        // exp(log(x)) = x for every unit
        for (size_t pos = 0; pos < r.units().size(); ++pos) {
            int x = r.units()[pos];
            const auto& e = u.log[pos];
            REQUIRE(e.size() == u.gens.size());
            int acc = r.one();
            for (size_t i = 0; i < u.gens.size(); ++i)
                acc = r.mul(acc, r.pow(u.gens[i], e[i]));
            CHECK(acc == x);
        }
    };
    FiniteRing f5 = make_galois_field(5, 1);
    CHECK(unit_group(f5).group == G({4}));
    check_logs(f5);

    FiniteRing z8 = make_zmod(8);
    CHECK(unit_group(z8).group == G({2, 2}));
    check_logs(z8);

    CHECK(unit_group(make_zmod(6)).group == G({2}));
    CHECK(unit_group(make_zmod(25)).group == G({20}));
    CHECK(unit_group(parse_ring_spec("dual:gf:5^1")).group == G({20}));
    CHECK(unit_group(parse_ring_spec("gf:3^2")).group == G({8}));
    check_logs(parse_ring_spec("dual:gf:5^1"));
    check_logs(parse_ring_spec("prod:zmod:8+zmod:3"));
    check_logs(make_zmod(1));
}

TEST_CASE("wedge sets") {
    FiniteRing f5 = make_galois_field(5, 1);
    CHECK(wedge_set(f5) == std::vector<int>{2, 3, 4});
    CHECK(wedge_set(make_zmod(9)) == std::vector<int>{2, 5, 8});
    CHECK(wedge_set(make_galois_field(2, 1)).empty());
    // fields: |W| = q - 2; any ring: 0, 1 never in W
    for (const char* spec : {"gf:7^1", "gf:3^2", "gf:2^2", "gf:11^1", "zmod:6", "zmod:8"}) {
        FiniteRing r = parse_ring_spec(spec);
        auto w = wedge_set(r);
        CHECK(std::find(w.begin(), w.end(), r.zero()) == w.end());
        CHECK(std::find(w.begin(), w.end(), r.one()) == w.end());
        if (r.is_local() && r.residue_field_order() == r.order())
            CHECK(static_cast<int>(w.size()) == r.order() - 2);
    }
}

TEST_CASE("coinvariants of the unit action") {
    CHECK(coinvariants_units(make_galois_field(7, 1)).is_trivial());
    CHECK(coinvariants_units(make_zmod(2)) == G({2}));
    CHECK(coinvariants_units(make_zmod(4)) == G({2}));
    // local rings: |A_Ax| <= 2, nonzero exactly when the residue field is F_2
    for (const char* spec : {"gf:5^1", "gf:2^2", "gf:2^3", "zmod:4", "zmod:8", "zmod:9", "zmod:25",
                             "dual:gf:5^1", "dual:zmod:4", "gf:3^2"}) {
        FiniteRing r = parse_ring_spec(spec);
        REQUIRE(r.is_local());
        FinAbGroup c = coinvariants_units(r);
        if (r.residue_field_order() == 2)
            CHECK(c == G({2}));
        else
            CHECK(c.is_trivial());
    }
}

TEST_CASE("square classes and 2-torsion of units") {
    CHECK(square_class_group(make_galois_field(5, 1)) == G({2}));
    CHECK(mu2(make_galois_field(5, 1)) == G({2}));
    CHECK(square_class_group(make_galois_field(2, 2)).is_trivial());
    CHECK(square_class_group(make_zmod(8)) == G({2, 2}));
    CHECK(mu2(make_zmod(8)) == G({2, 2}));
    CHECK(mu2(make_galois_field(2, 2)).is_trivial());
}

TEST_CASE("locality detection and semisimple residues") {
    CHECK(make_zmod(4).is_local());
    CHECK(make_zmod(9).is_local());
    CHECK_FALSE(make_zmod(6).is_local());
    CHECK(make_zmod(9).residue_field_order() == 3);
    CHECK(make_zmod(25).residue_field_order() == 5);

    CHECK(make_zmod(6).semisimple_residue_orders() == std::vector<int>{2, 3});
    CHECK(parse_ring_spec("prod:zmod:2+zmod:2").semisimple_residue_orders() ==
          std::vector<int>{2, 2});
    CHECK(make_zmod(4).semisimple_residue_orders() == std::vector<int>{2});
    CHECK(parse_ring_spec("dual:gf:5^1").semisimple_residue_orders() == std::vector<int>{5});
    CHECK(parse_ring_spec("gf:3^2").semisimple_residue_orders() == std::vector<int>{9});
    CHECK(parse_ring_spec("prod:zmod:4+zmod:9").semisimple_residue_orders() ==
          std::vector<int>{2, 3});
}
