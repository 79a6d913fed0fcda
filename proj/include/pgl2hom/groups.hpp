#pragma once

#include <map>
#include <string>
#include <vector>

#include "pgl2hom/abelian.hpp"
#include "pgl2hom/complexes.hpp"
#include "pgl2hom/rings.hpp"

namespace pgl2hom {

/// An explicit finite group. Elements are indices 0..order-1; small
/// groups carry a dense multiplication table, matrix groups over a
/// table ring multiply on demand.
class FiniteGroup {
public:
    /// Table-backed group; table[i*n+j] = i*j.
    FiniteGroup(std::string name, std::vector<int> table, std::vector<int> gens);
    /// Matrix-backed group over a ring (elements are canonicalized
    /// PGL_2 classes).
    FiniteGroup(std::string name, FiniteRing ring, std::vector<Mat2> mats,
                std::vector<int> gens, std::map<std::string, int> labeled_gens);

    int order() const { return n_; }
    int identity() const { return id_; }
    int mul(int x, int y) const;
    int inv(int x) const;
    const std::vector<int>& generators() const { return gens_; }
    const std::string& name() const { return name_; }

    bool has_matrices() const { return !mats_.empty(); }
    const Mat2& matrix(int x) const { return mats_[x]; }
    const FiniteRing& ring() const { return ring_.front(); }
    /// Element index of a matrix class; the matrix must have unit det.
    int index_of(const Mat2& m) const;
    /// Named generators such as "E12(1)", "d(g)".
    const std::map<std::string, int>& labeled_generators() const { return labeled_; }

private:
    void build_inverses();

    std::string name_;
    int n_ = 0;
    int id_ = 0;
    std::vector<int> table_;  // empty for on-demand matrix groups
    std::vector<int> inv_;
    std::vector<int> gens_;
    std::vector<FiniteRing> ring_;  // empty or one element
    std::vector<Mat2> mats_;
    std::map<long long, int> mat_index_;
    std::map<std::string, int> labeled_;
};

constexpr int kDefaultGroupCutoff = 100'000;

FiniteGroup pgl2(const FiniteRing& r, int cutoff = kDefaultGroupCutoff);
FiniteGroup psl2(const FiniteRing& r, int cutoff = kDefaultGroupCutoff);
/// Stabilizer of <e1>: upper triangular matrices mod center.
FiniteGroup pb2(const FiniteRing& r, int cutoff = kDefaultGroupCutoff);
/// Stabilizer of (<e1>, <e2>): diagonal mod center, isomorphic to A^x
/// via diag(a, 1).
FiniteGroup pt2(const FiniteRing& r);
/// Dihedral group of order 2n: r, s | r^n, s^2, (rs)^2.
FiniteGroup dihedral(int n);

/// Decompose a finite abelian group given by a multiplication table.
FinAbGroup abelian_structure(const FiniteGroup& g);

/// G / [G,G]; the derived subgroup is found by closing the generator
/// commutators under products and conjugation.
FinAbGroup abelianization(const FiniteGroup& g);

/// Per-degree caps on the group order for bar-resolution homology;
/// С_n has (|G|-1)^n basis tuples, so these are hard gates.
struct BarBudget {
    int deg1 = 256;
    int deg2 = 32;
    int deg3 = 16;

    int cap(int degree) const;
};

/// H_n(G, Z) for n <= 3 from the normalized bar complex.
FinAbGroup bar_homology(const FiniteGroup& g, int n, const BarBudget& budget = {},
                        bool parallel = true);

/// The boundary C_n -> C_{n-1} of the normalized bar complex.
SparseBoundary bar_boundary(const FiniteGroup& g, int n, bool parallel = true);

/// A homomorphism given on every source element.
struct GroupHom {
    const FiniteGroup* src;
    const FiniteGroup* dst;
    std::vector<int> image;  // image[x] in dst

    bool well_defined() const;
};

/// Bar homology of a group together with explicit cycle
/// representatives, so that chain maps can be pushed to homology.
struct BarHomologyReps {
    FinAbGroup group;
    int degree = 0;
    long long n_tuples = 0;             // dim C_n
    std::vector<IntMat> rep_cycles;     // one column vector per canonical generator
    // internals needed to coordinate arbitrary cycles:
    DenseMat kernel_basis;              // columns span ker d_n
    CanonicalForm canon;                // of ker/im presentation on kernel basis
};
BarHomologyReps bar_homology_reps(const FiniteGroup& g, int n, const BarBudget& budget = {});

/// Induced map on bar homology: [g1|...|gn] -> [h g1|...|h gn], with
/// degenerate images dropped.
AbHom induced_map(const GroupHom& h, int n, const BarBudget& budget = {});

/// Everything the PGL_2(Z) = D2 *_{D1} D3 Mayer-Vietoris computation
/// produces in degrees <= 3.
struct Pgl2ZReport {
    bool realization_verified = false;  // matrix model of the amalgam checked
    FinAbGroup h1;                      // coker in degree 1
    FinAbGroup h2;                      // degree-2 Mayer-Vietoris value
    FinAbGroup h2_from_constants;       // via H2(PB2(Z)) = 0 and mu_2(Z)
    mpz_class coker3_order;             // |coker(H3(D1) -> H3(D2)+H3(D3))|
    mpz_class h3_lower_bound;           // = coker3_order
    mpz_class h3_upper_bound;           // 4 * |P(Z)| from the degree-3 sequence
    mpz_class h3_order;                 // pinned value when bounds meet, else 0
    FinAbGroup h3_d2d3;                 // H3(D2) + H3(D3)
};
Pgl2ZReport pgl2z_mayer_vietoris(bool parallel = true);

}  // namespace pgl2hom
