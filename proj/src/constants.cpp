#include "pgl2hom/constants.hpp"

namespace pgl2hom::constants {

namespace {
FinAbGroup G(std::initializer_list<long> fs) {
    FinAbGroup g;
    for (long f : fs) g.factors.push_back(f);
    return g;
}
}  // namespace

NamedGroup scissors_of_Z() {
    return {"P(Z)", G({6}), "Coronado-Hutchinson 2022, Cor. 8.20: P(Z) = Z/6"};
}

NamedGroup scissors_of_Z_half() {
    return {"P(Z[1/2])", G({2, 12}), "Coronado-Hutchinson 2022, Cor. 8.42: P(Z[1/2]) = Z/12 + Z/2"};
}

NamedGroup h1_pgl2_Z() {
    return {"H1(PGL2(Z))", G({2, 2}),
            "classical; PGL2(Z)^ab = Z/2 + Z/2 from the (2,3,infinity) reflection presentation"};
}

NamedGroup h2_pgl2_Z() {
    return {"H2(PGL2(Z))", G({2}), "classical; see also Example ZZ consistency below"};
}

long h3_pgl2_Z_order() { return 24; }

NamedGroup h2_pb2_Z() {
    return {"H2(PB2(Z))", G({}),
            "PB2(Z) = Z x Z/2 up to commensuration; H_even vanishes, H_odd = (Z/2)^2"};
}

std::vector<DihedralTableEntry> dihedral_table() {
    // Standard dihedral homology (Brown, Cohomology of Groups; Handbook
    // computations): D1 = Z/2, D2 = Z/2 x Z/2, D3 = S3.
    // The (D3, degree 2) entry is 0 = H_2(S3, Z): the Schur multiplier
    // of a dihedral group of order 2n vanishes for odd n. A misprint
    // in circulation shows Z/2 there; that value is inconsistent with
    // H_2(PGL2(Z)) = Z/2 through the Mayer-Vietoris sequence of
    // D2 *_{D1} D3, so the corrected value is pinned here.
    return {
        {1, 1, G({2}), false, "H1(Z/2)"},
        {1, 2, G({}), false, "H2(Z/2)"},
        {1, 3, G({2}), false, "H3(Z/2)"},
        {2, 1, G({2, 2}), false, "H1(Z/2 x Z/2)"},
        {2, 2, G({2}), false, "H2(Z/2 x Z/2), Kunneth"},
        {2, 3, G({2, 2, 2}), false, "H3(Z/2 x Z/2), Kunneth"},
        {3, 1, G({2}), false, "H1(S3) = S3^ab"},
        {3, 2, G({}), true, "H2(S3) = 0 (trivial Schur multiplier; corrected misprint)"},
        {3, 3, G({6}), false, "H3(S3) = Z/6"},
    };
}

mpz_class k3_ind_order_literature(long q) {
    // Quillen 1972: K_3(F_q) = Z/(q^2 - 1); for finite fields
    // K_3^ind = K_3. Flag-level comparisons only.
    return mpz_class(q) * q - 1;
}

}  // namespace pgl2hom::constants
