#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pgl2hom/intmat.hpp"
#include "pgl2hom/snf.hpp"

namespace pgl2hom {

/// Finitely generated abelian group in invariant-factor form:
/// factors d1 | d2 | ... with each di >= 2, followed by one 0 per
/// infinite cyclic summand.
struct FinAbGroup {
    std::vector<mpz_class> factors;

    bool is_trivial() const { return factors.empty(); }
    bool is_finite() const;
    int free_rank() const;
    /// Product of the finite factors; requires is_finite().
    mpz_class order() const;
    mpz_class odd_part_order() const;

    /// "0", "Z", "Z/2+Z/4", "Z/2+Z" ...
    std::string str() const;

    bool operator==(const FinAbGroup& other) const = default;
};

FinAbGroup trivial_group();
FinAbGroup cyclic_group(const mpz_class& n);  // n=0 gives Z
FinAbGroup free_abelian(int rank);

/// A presentation Z^ngens / (row lattice of rels). Elements are row
/// vectors; each row of rels is one relation.
struct Presentation {
    int ngens = 0;
    IntMat rels;  // rels.cols() == ngens

    static Presentation of_group(const FinAbGroup& g);  // diagonal presentation
};

/// Canonical form of a presentation: the group plus base-change data.
/// gen_to_canon maps an original generator (row vector) to coordinates
/// in the canonical decomposition; canon_to_orig lifts each canonical
/// generator back to the original generators.
struct CanonicalForm {
    FinAbGroup group;
    IntMat gen_to_canon;   // ngens x k
    IntMat canon_to_orig;  // k x ngens
};

FinAbGroup fp_group(int ngens, const IntMat& rels);
CanonicalForm canonicalize(const Presentation& p);

/// Does v lie in the row lattice of r?
bool lattice_contains(const IntMat& r, const std::vector<mpz_class>& v);

/// Rows spanning { c in Z^s : c * a is in the row lattice of b }.
IntMat preimage_lattice(const IntMat& a, const IntMat& b);

/// Homomorphism between presented groups. Row i of `map` is the image
/// of source generator i, written over the target's generators.
struct PresHom {
    Presentation src, dst;
    IntMat map;  // src.ngens x dst.ngens

    /// Check that every source relation maps into the target's
    /// relation lattice (i.e. the matrix defines a homomorphism).
    bool well_defined() const;
};

FinAbGroup kernel(const PresHom& h);
FinAbGroup cokernel(const PresHom& h);
mpz_class image_order(const PresHom& h);

/// Homomorphism between groups in invariant-factor form; matrix rows
/// are images of the source's canonical generators.
struct AbHom {
    FinAbGroup src, dst;
    IntMat map;

    PresHom as_pres_hom() const;
    bool well_defined() const { return as_pres_hom().well_defined(); }
};

FinAbGroup kernel(const AbHom& h);
FinAbGroup cokernel(const AbHom& h);
mpz_class image_order(const AbHom& h);

// Functors on finitely generated abelian groups. The multilinear ones
// materialize generator pairs/triples with the defining relations and
// reduce by SNF; closed formulas show up only in the tests.
FinAbGroup direct_sum(const FinAbGroup& g, const FinAbGroup& h);
FinAbGroup tensor(const FinAbGroup& g, const FinAbGroup& h);
FinAbGroup tor(const FinAbGroup& g, const FinAbGroup& h);      // finite inputs
FinAbGroup exterior_square(const FinAbGroup& g);               // finite input
FinAbGroup exterior_cube(const FinAbGroup& g);                 // finite input
FinAbGroup sym_square(const FinAbGroup& g);                    // finite input

/// The extension of Tor(mu,mu) by mu_2 used in the degree-3
/// consistency checks. Input must be finite cyclic; mu2_order is 1 or
/// 2. When only the split extension exists the flag is set.
struct TorTilde {
    FinAbGroup group;
    bool split_only = false;
};
TorTilde tor_tilde(const FinAbGroup& g, int mu2_order);

/// H_n(G, Z) for finite abelian G and n <= 3, by iterated Kunneth over
/// the cyclic decomposition.
FinAbGroup homology_abelian(const FinAbGroup& g, int n);

/// Invariant-factor decomposition of a finite abelian group given by a
/// multiplication closure on 0..n-1. Generator choice is
/// deterministic: a smallest element of maximal order, then greedy
/// extension by maximal quotient order (coset-adjusted so each new
/// generator splits off). exp . log = id.
struct AbelianDecomposition {
    FinAbGroup group;
    std::vector<int> gens;               // one per invariant factor, ascending factors
    std::vector<std::vector<long>> log;  // exponent vector per element
};
AbelianDecomposition decompose_abelian_table(int n, const std::function<int(int, int)>& mul,
                                             int id);

/// Homology of a two-step piece  C_{k+1} --dk1--> C_k --dk--> C_{k-1}
/// given the two boundary matrices (dk may be the augmentation).
FinAbGroup homology_of_pair(const SparseBoundary& dk, const SparseBoundary& dk1,
                            bool parallel = true);
FinAbGroup homology_of_pair(const IntMat& dk, const IntMat& dk1, bool parallel = true);

}  // namespace pgl2hom
