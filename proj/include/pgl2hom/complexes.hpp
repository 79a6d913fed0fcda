#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pgl2hom/abelian.hpp"
#include "pgl2hom/rings.hpp"

namespace pgl2hom {

/// 2x2 matrix with entries in a table ring (element indices).
struct Mat2 {
    int a, b, c, d;  // [[a, b], [c, d]]
};

Mat2 mat_mul(const FiniteRing& r, const Mat2& x, const Mat2& y);
int mat_det(const FiniteRing& r, const Mat2& m);
bool mat_invertible(const FiniteRing& r, const Mat2& m);
/// Adjugate; for invertible m, mat_mul(m, adj) = det * I, so the
/// adjugate is a PGL-inverse whenever det is a unit.
Mat2 mat_adj(const FiniteRing& r, const Mat2& m);

/// The projective line over A: unit classes of unimodular column
/// vectors in A^2, with the symmetric "generic" relation
/// (det of the pair of representatives is a unit).
struct ProjLine {
    int n_classes = 0;
    std::vector<std::pair<int, int>> reps;  // class -> lexicographically least representative
    std::vector<int> class_of_vec;          // index a*n+b -> class, -1 if not unimodular
    std::vector<std::vector<char>> generic; // symmetric, irreflexive
    int inf_class = -1;                     // <e1>
    int zero_class = -1;                    // <e2>

    int class_of(int a, int b, const FiniteRing& r) const;
    /// Class of <e1 + x*e2>; x must be a unit.
    int finite_class(int x, const FiniteRing& r) const;
    /// If cls = <e1 + x e2> returns x, else -1 (cls not of that form).
    int finite_label(int cls, const FiniteRing& r) const;
};

ProjLine projective_line(const FiniteRing& r);

/// Apply a matrix with unit determinant to a class.
int apply_to_class(const FiniteRing& r, const ProjLine& pl, const Mat2& m, int cls);

/// Classes of GE2-unimodular vectors: the orbit of <e1> under the
/// subgroup generated by elementary and diagonal matrices. Sorted.
std::vector<int> ge2_classes(const FiniteRing& r, const ProjLine& pl);

enum class ComplexVariant { GE2, GL2 };

/// Chain complex of tuples of pairwise-generic classes with the
/// alternating-face boundary. basis[n] holds the (n+1)-tuples in
/// lexicographic order, flattened; boundary[n] maps C_n -> C_{n-1}
/// for n >= 1, and boundary[0] is the augmentation when present.
struct ChainComplexZ {
    int max_degree = 0;
    bool augmented = false;
    int n_vertices = 0;
    std::vector<std::vector<std::uint8_t>> basis;  // degree n: size (n+1)*count
    std::vector<long long> basis_count;
    std::vector<SparseBoundary> boundary;          // boundary[n] for n>=1; [0] = augmentation

    long long count(int n) const { return basis_count[n]; }
};

constexpr long long kDefaultComplexBudget = 10'000'000;

/// Build Y_*(A^2) (GE2 variant) or L_*(A^2) (GL2 variant) up to
/// degree N <= 5. Refuses when the estimated number of basis tuples
/// exceeds the budget.
ChainComplexZ build_complex(const FiniteRing& r, const ProjLine& pl, int max_degree,
                            ComplexVariant variant = ComplexVariant::GE2,
                            bool augmented = true,
                            long long budget = kDefaultComplexBudget,
                            bool parallel = true);

/// H_k = ker d_k / im d_{k+1}; requires k+1 <= max_degree. With the
/// augmentation present, k = 0 uses the augmentation as d_0.
FinAbGroup complex_homology(const ChainComplexZ& c, int k, bool parallel = true);

/// H_1 through the fundamental group of the clique complex of the
/// GE2 graph: spanning tree from <e1> (BFS, ascending neighbours), one
/// generator per non-tree edge, one relation per triangle.
FinAbGroup h1_via_pi1(const FiniteRing& r, const ProjLine& pl);

/// Normalize a tuple of 3+ pairwise-generic classes to start with
/// (inf, 0, 1). Local rings only; the normalizer is unique in PGL_2.
struct NormalizedTuple {
    Mat2 g;
    std::vector<int> classes;  // g applied to the input
    std::vector<int> labels;   // labels x of trailing entries <e1 + x e2>, -1 if not of that shape
};
NormalizedTuple orbit_normalize(const FiniteRing& r, const ProjLine& pl,
                                const std::vector<int>& tuple);

/// P(A) presented through orbit representatives: generators [x]',
/// x in W_A, one relation per orbit of 5-tuples (inf,0,1,x,y), the
/// faces normalized with orbit_normalize. Local rings with residue
/// field > 4 only.
struct OrbitScissors {
    FinAbGroup group;
    std::vector<int> gen_labels;  // W_A, ascending
    Presentation pres;
    CanonicalForm canon;
};
OrbitScissors scissors_from_orbits(const FiniteRing& r, const ProjLine& pl);

/// Dump all boundary matrices of a complex as MatrixMarket files plus
/// a plain-text tuple listing, under dir with the given stem.
void dump_complex(const ChainComplexZ& c, const std::string& dir, const std::string& stem);

}  // namespace pgl2hom
