#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pgl2hom/abelian.hpp"

namespace pgl2hom {

constexpr int kDefaultRingCutoff = 64;

/// A finite commutative ring given by element and operation tables.
/// Elements are the indices 0..order()-1; all arithmetic goes through
/// the tables. Immutable after construction.
class FiniteRing {
public:
    FiniteRing(int n, std::vector<int> add, std::vector<int> mul, std::string spec);

    int order() const { return n_; }
    int zero() const { return 0; }
    int one() const { return one_; }
    int add(int a, int b) const { return add_[static_cast<size_t>(a) * n_ + b]; }
    int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * n_ + b]; }
    int neg(int a) const { return neg_[a]; }
    int sub(int a, int b) const { return add(a, neg_[b]); }
    bool is_unit(int a) const { return inv_[a] >= 0; }
    /// Multiplicative inverse; a must be a unit.
    int inv(int a) const;
    int pow(int a, long e) const;

    const std::vector<int>& units() const { return units_; }
    int characteristic() const { return characteristic_; }
    const std::string& spec_string() const { return spec_; }

    /// Position of a unit in units(), -1 for non-units.
    int unit_position(int a) const { return unit_pos_[a]; }

    /// Local <=> the non-units are closed under addition. The maximal
    /// ideal and residue field size are derived, not declared.
    bool is_local() const { return local_; }
    /// |A/m| for local rings.
    int residue_field_order() const;

    /// Multiset of residue field sizes of A/J(A) (J = nilradical).
    std::vector<int> semisimple_residue_orders() const;

private:
    int n_;
    std::vector<int> add_, mul_;
    int one_ = -1;
    std::vector<int> neg_, inv_, units_, unit_pos_;
    int characteristic_ = 0;
    bool local_ = false;
    std::string spec_;
};

FiniteRing make_zmod(int n, int cutoff = kDefaultRingCutoff);
/// Field of order p^k. The modulus polynomial is given as an ascending
/// coefficient list of length k+1 with leading coefficient 1; by
/// default the lexicographically smallest monic irreducible is used.
FiniteRing make_galois_field(int p, int k, const std::optional<std::vector<int>>& poly = {},
                             int cutoff = kDefaultRingCutoff);
FiniteRing make_product(const FiniteRing& r, const FiniteRing& s,
                        int cutoff = kDefaultRingCutoff);
/// Dual numbers R[t]/(t^2): pairs (a,b) with (a,b)(c,d) = (ac, ad+bc).
FiniteRing make_dual(const FiniteRing& r, int cutoff = kDefaultRingCutoff);

/// Ring spec mini-language:
///   zmod:N | gf:P^K | gf:P^K:poly=c0,c1,...,1 | dual:SPEC | prod:SPEC+SPEC
/// prod splits at the first top-level '+', so nested products associate
/// to the right.
FiniteRing parse_ring_spec(const std::string& spec, int cutoff = kDefaultRingCutoff);

/// The unit group A^x as an abstract group with explicit generators
/// and discrete logs (exp . log = id on units).
struct UnitGroupData {
    FinAbGroup group;
    std::vector<int> gens;               // ring elements generating A^x
    std::vector<std::vector<long>> log;  // per units() position, exponent vector
};
UnitGroupData unit_group(const FiniteRing& r);

/// W_A = { a : a(1-a) is a unit }, ascending.
std::vector<int> wedge_set(const FiniteRing& r);

/// A_{A^x} = A / < a-1 : a unit >, as an abstract group.
FinAbGroup coinvariants_units(const FiniteRing& r);

/// G_A = A^x / (A^x)^2.
FinAbGroup square_class_group(const FiniteRing& r);

/// mu_2(A) = { a : a^2 = 1 }.
FinAbGroup mu2(const FiniteRing& r);
std::vector<int> mu2_elements(const FiniteRing& r);

/// Exhaustive commutative-ring axiom check (associativity,
/// distributivity, identities, unit closure). O(n^3).
bool verify_ring_axioms(const FiniteRing& r, std::string* why = nullptr);

}  // namespace pgl2hom
