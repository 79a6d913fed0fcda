#pragma once

#include <string>
#include <vector>

#include "pgl2hom/abelian.hpp"

namespace pgl2hom::constants {

/// Every externally sourced numeric fact lives here with its citation,
/// so nothing is buried in computation code. Constants tagged
/// "literature" are outside the verified identities and only ever
/// produce flag-level comparisons, never hard failures.

struct NamedGroup {
    std::string name;
    FinAbGroup value;
    std::string citation;
};

/// P(Z) = Z/6, generated by the four-term cycle at -1.
NamedGroup scissors_of_Z();

/// P(Z[1/2]) = Z/12 + Z/2.
NamedGroup scissors_of_Z_half();

/// H_1(PGL_2(Z)) = Z/2 + Z/2.
NamedGroup h1_pgl2_Z();

/// H_2(PGL_2(Z)) = Z/2.
NamedGroup h2_pgl2_Z();

/// |H_3(PGL_2(Z))| = 24.
long h3_pgl2_Z_order();

/// H_2(PB_2(Z)) = 0 and H_n(PB_2(Z)) = Z/2 + Z/2 for odd n.
NamedGroup h2_pb2_Z();

/// Homology of the dihedral groups D1, D2, D3 in degrees 1..3.
/// entry(k, n) for k in {1,2,3}, n in {1,2,3}.
struct DihedralTableEntry {
    int group_index;  // 1, 2, 3 (order 2n)
    int degree;
    FinAbGroup value;
    bool corrected_misprint;  // see note on (3, 2)
    std::string citation;
};
/// All nine entries. The (D3, degree 2) value is the corrected one:
/// H_2(S_3, Z) = 0 (the Schur multiplier of a dihedral group of order
/// 2n vanishes for odd n); the printed source table shows Z/2 there,
/// which would contradict H_2(PGL_2(Z)) = Z/2 through Mayer-Vietoris.
std::vector<DihedralTableEntry> dihedral_table();

/// |K_3^ind(F_q)| = q^2 - 1 (Quillen). Literature constant: used only
/// for flag-level comparisons.
mpz_class k3_ind_order_literature(long q);

}  // namespace pgl2hom::constants
