#pragma once

#include <string>
#include <vector>

#include "pgl2hom/abelian.hpp"
#include "pgl2hom/complexes.hpp"
#include "pgl2hom/rings.hpp"

namespace pgl2hom {

/// P(A): free abelian group on symbols [a], a in W_A, modulo the
/// five-term relations, together with the reduction onto the
/// canonical form.
struct PreBlochGroup {
    FinAbGroup group;
    std::vector<int> gen_labels;  // W_A, ascending element index
    Presentation pres;
    CanonicalForm canon;
};

PreBlochGroup prebloch_classical(const FiniteRing& r);

/// Target presentations over the unit group, with the coordinates of
/// a (x) b available for building maps out of P(A).
struct SymSquareOfUnits {
    UnitGroupData units;
    Presentation pres;  // generators: ordered pairs (i,j) of unit-group generators
    CanonicalForm canon;
    std::vector<mpz_class> coords(const FiniteRing& r, int a, int b) const;
};
SymSquareOfUnits sym_square_of_units(const FiniteRing& r);

struct WedgeSquareOfUnits {
    UnitGroupData units;
    Presentation pres;  // generators: ordered pairs (i,j)
    CanonicalForm canon;
    std::vector<mpz_class> coords(const FiniteRing& r, int a, int b) const;  // a ^ b
};
WedgeSquareOfUnits wedge_square_of_units(const FiniteRing& r);

/// lambda: P(A) -> S^2(A^x), [a] -> a (x) (1-a). Well-definedness of
/// the five-term relations is verified at construction.
PresHom lambda_s2(const PreBlochGroup& p, const FiniteRing& r, const SymSquareOfUnits& s2);

/// B(A) = ker lambda.
FinAbGroup bloch_group(const FiniteRing& r);

/// B_E(A) = ker(P(A) -> Wedge^2 A^x, [a] -> 2(a ^ (1-a))).
/// Local rings with |A/m| not in {2,3,4}.
FinAbGroup ge2_bloch_group(const FiniteRing& r);

/// K_2^M(A) = (A^x (x) A^x) / < a (x) (1-a) : a in W_A >.
struct MilnorK2 {
    FinAbGroup group;
    bool hypothesis_met = false;  // local with residue field > 5
};
MilnorK2 milnor_k2(const FiniteRing& r);

/// Order-identity check of 0 -> B -> P -> S^2 -> K_2^M -> 0.
struct FourTermReport {
    FinAbGroup p, b, s2, k2m;
    mpz_class im_lambda_order;
    bool order_identity_p = false;   // |P| = |B| * |im lambda|
    bool order_identity_s2 = false;  // |S^2| = |im lambda| * |K2M|
    bool hypothesis_met = false;
    bool pass() const { return order_identity_p && order_identity_s2; }
};
FourTermReport four_term_check(const FiniteRing& r);

/// Menal criterion: universal for GE2 iff A/J(A) has no Z/2 x Z/2 and
/// no Z/6 direct factor. Returns the witness factor when not.
struct UniversalityCheck {
    bool universal = false;
    std::string witness;  // "Z/2 x Z/2" or "Z/6" when not universal
};
UniversalityCheck universality(const FiniteRing& r);

/// H_1(PGL_2(A)) = G_A + A_{A^x} for semilocal universal rings.
FinAbGroup predict_h1(const FiniteRing& r);

/// The degree-2 prediction for local A with |A/m| not in {2,3,4}.
struct H2Prediction {
    FinAbGroup subgroup;   // Wedge^2 A^x / < 2(a ^ (1-a)) >
    FinAbGroup quotient;   // mu_2(A)
    mpz_class order;       // product
    mpz_class odd_part;    // odd part of the order
    mpz_class k2m_odd_part;
    bool odd_parts_agree = false;
};
H2Prediction predict_h2(const FiniteRing& r);

/// The degree-3 prediction for finite fields, q not in {2,3,4,8},
/// plus the two Bloch-Wigner style order products.
struct BWPrediction {
    std::string ring_spec;
    FinAbGroup h1;
    FinAbGroup h2_subgroup, h2_quotient;
    FinAbGroup tor_part;     // Tor(mu, mu) = Z/(q-1)
    FinAbGroup be_part;      // B_E
    mpz_class h3_order;      // (q-1) * |B_E|
    FinAbGroup tor_tilde_group;
    bool tor_tilde_split_only = false;
    mpz_class bw_order;      // |Tor~| * |B|
    mpz_class k3_ind_literature;  // q^2 - 1, flag-level comparison only
    bool h3_matches_literature = false;
    bool bw_matches_literature = false;
};
BWPrediction predict_h3(const FiniteRing& r);

}  // namespace pgl2hom
