#include "pgl2hom/bloch.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "pgl2hom/constants.hpp"
#include "pgl2hom/errors.hpp"

namespace pgl2hom {

PreBlochGroup prebloch_classical(const FiniteRing& r) {
    std::vector<int> w = wedge_set(r);
    std::vector<int> gen_of(r.order(), -1);
    for (size_t i = 0; i < w.size(); ++i) gen_of[w[i]] = static_cast<int>(i);

    std::vector<std::map<int, long>> rows;
    for (int a : w)
        for (int b : w) {
            int ratio = r.mul(a, r.inv(b));  // a/b must lie in W as well
            if (gen_of[ratio] < 0) continue;
            int t3 = r.mul(b, r.inv(a));
            int t4 = r.mul(r.sub(r.one(), r.inv(a)), r.inv(r.sub(r.one(), r.inv(b))));
            int t5 = r.mul(r.sub(r.one(), a), r.inv(r.sub(r.one(), b)));
            for (int t : {t3, t4, t5})
                if (gen_of[t] < 0)
                    throw input_error("prebloch_classical: five-term entry left the symbol set");
            std::map<int, long> row;
            auto bump = [&](int g, long v) {
                row[g] += v;
                if (row[g] == 0) row.erase(g);
            };
            bump(gen_of[a], 1);
            bump(gen_of[b], -1);
            bump(gen_of[t3], 1);
            bump(gen_of[t4], -1);
            bump(gen_of[t5], 1);
            if (!row.empty()) rows.push_back(std::move(row));
        }

    PreBlochGroup out;
    out.gen_labels = w;
    out.pres.ngens = static_cast<int>(w.size());
    out.pres.rels = IntMat(static_cast<int>(rows.size()), out.pres.ngens);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        for (auto& [g, v] : rows[i]) out.pres.rels.set(i, g, v);
    out.canon = canonicalize(out.pres);
    out.group = out.canon.group;
    return out;
}

namespace {

Presentation pairs_presentation(const UnitGroupData& u, bool symmetric) {
    const int k = static_cast<int>(u.group.factors.size());
    const int n = k * k;
    auto idx = [k](int i, int j) { return i * k + j; };
    std::vector<std::map<int, long>> rows;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            std::map<int, long> r1, r2;
            r1[idx(i, j)] = u.group.factors[i].get_si();
            r2[idx(i, j)] = u.group.factors[j].get_si();
            rows.push_back(r1);
            rows.push_back(r2);
        }
    for (int i = 0; i < k; ++i) {
        std::map<int, long> rr;
        rr[idx(i, i)] = symmetric ? 2 : 1;
        rows.push_back(rr);
    }
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            std::map<int, long> rr;
            rr[idx(i, j)] = 1;
            rr[idx(j, i)] = 1;
            rows.push_back(rr);
        }
    Presentation p;
    p.ngens = n;
    p.rels = IntMat(static_cast<int>(rows.size()), n);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        for (auto& [g, v] : rows[i]) p.rels.set(i, g, v);
    return p;
}

std::vector<mpz_class> pair_coords(const UnitGroupData& u, const FiniteRing& r, int a, int b) {
    const int k = static_cast<int>(u.group.factors.size());
    const auto& la = u.log[r.unit_position(a)];
    const auto& lb = u.log[r.unit_position(b)];
    std::vector<mpz_class> out(static_cast<size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) out[i * k + j] = mpz_class(la[i]) * lb[j];
    return out;
}

}  // namespace

std::vector<mpz_class> SymSquareOfUnits::coords(const FiniteRing& r, int a, int b) const {
    return pair_coords(units, r, a, b);
}

std::vector<mpz_class> WedgeSquareOfUnits::coords(const FiniteRing& r, int a, int b) const {
    return pair_coords(units, r, a, b);
}

SymSquareOfUnits sym_square_of_units(const FiniteRing& r) {
    SymSquareOfUnits out;
    out.units = unit_group(r);
    out.pres = pairs_presentation(out.units, true);
    out.canon = canonicalize(out.pres);
    return out;
}

WedgeSquareOfUnits wedge_square_of_units(const FiniteRing& r) {
    WedgeSquareOfUnits out;
    out.units = unit_group(r);
    out.pres = pairs_presentation(out.units, false);
    out.canon = canonicalize(out.pres);
    return out;
}

PresHom lambda_s2(const PreBlochGroup& p, const FiniteRing& r, const SymSquareOfUnits& s2) {
    IntMat m(p.pres.ngens, s2.pres.ngens);
    for (int g = 0; g < p.pres.ngens; ++g) {
        int a = p.gen_labels[g];
        auto c = s2.coords(r, a, r.sub(r.one(), a));
        for (int j = 0; j < s2.pres.ngens; ++j)
            if (c[j] != 0) m.set(g, j, c[j]);
    }
    PresHom h{p.pres, s2.pres, std::move(m)};
    if (!h.well_defined())
        throw input_error("internal: lambda is not well defined on the five-term relations");
    return h;
}

FinAbGroup bloch_group(const FiniteRing& r) {
    PreBlochGroup p = prebloch_classical(r);
    SymSquareOfUnits s2 = sym_square_of_units(r);
    return kernel(lambda_s2(p, r, s2));
}

namespace {

PresHom lambda_wedge(const PreBlochGroup& p, const FiniteRing& r, const WedgeSquareOfUnits& w2) {
    IntMat m(p.pres.ngens, w2.pres.ngens);
    for (int g = 0; g < p.pres.ngens; ++g) {
        int a = p.gen_labels[g];
        auto c = w2.coords(r, a, r.sub(r.one(), a));
        for (int j = 0; j < w2.pres.ngens; ++j)
            if (c[j] != 0) m.set(g, j, 2 * c[j]);
    }
    PresHom h{p.pres, w2.pres, std::move(m)};
    if (!h.well_defined())
        throw input_error("internal: 2(a ^ (1-a)) is not well defined on the relations");
    return h;
}

}  // namespace

FinAbGroup ge2_bloch_group(const FiniteRing& r) {
    if (!r.is_local()) throw hypothesis_error("ge2_bloch_group: ring must be local");
    int q = r.residue_field_order();
    if (q == 2 || q == 3 || q == 4)
        throw hypothesis_error("ge2_bloch_group: residue field of size 2, 3 or 4 is excluded");
    PreBlochGroup p = prebloch_classical(r);
    WedgeSquareOfUnits w2 = wedge_square_of_units(r);
    return kernel(lambda_wedge(p, r, w2));
}

MilnorK2 milnor_k2(const FiniteRing& r) {
    UnitGroupData u = unit_group(r);
    const int k = static_cast<int>(u.group.factors.size());
    const int n = k * k;
    std::vector<std::map<int, long>> rows;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            std::map<int, long> r1, r2;
            r1[i * k + j] = u.group.factors[i].get_si();
            r2[i * k + j] = u.group.factors[j].get_si();
            rows.push_back(r1);
            rows.push_back(r2);
        }
    IntMat rels(static_cast<int>(rows.size()) + static_cast<int>(wedge_set(r).size()), n);
    int ri = 0;
    for (auto& row : rows) {
        for (auto& [g, v] : row) rels.set(ri, g, v);
        ++ri;
    }
    for (int a : wedge_set(r)) {
        auto c = pair_coords(u, r, a, r.sub(r.one(), a));
        for (int j = 0; j < n; ++j)
            if (c[j] != 0) rels.set(ri, j, c[j]);
        ++ri;
    }
    MilnorK2 out;
    out.group = fp_group(n, rels);
    out.hypothesis_met = r.is_local() && r.residue_field_order() > 5;
    return out;
}

FourTermReport four_term_check(const FiniteRing& r) {
    FourTermReport rep;
    PreBlochGroup p = prebloch_classical(r);
    SymSquareOfUnits s2 = sym_square_of_units(r);
    PresHom lam = lambda_s2(p, r, s2);
    rep.p = p.group;
    rep.b = kernel(lam);
    rep.s2 = s2.canon.group;
    MilnorK2 k2 = milnor_k2(r);
    rep.k2m = k2.group;
    rep.hypothesis_met = k2.hypothesis_met;
    rep.im_lambda_order = image_order(lam);
    rep.order_identity_p =
        rep.p.is_finite() && rep.b.is_finite() && rep.p.order() == rep.b.order() * rep.im_lambda_order;
    rep.order_identity_s2 = rep.s2.is_finite() && rep.k2m.is_finite() &&
                            rep.s2.order() == rep.im_lambda_order * rep.k2m.order();
    return rep;
}

UniversalityCheck universality(const FiniteRing& r) {
    std::vector<int> residues = r.semisimple_residue_orders();
    int twos = static_cast<int>(std::count(residues.begin(), residues.end(), 2));
    int threes = static_cast<int>(std::count(residues.begin(), residues.end(), 3));
    UniversalityCheck out;
    if (twos >= 2) {
        out.witness = "Z/2 x Z/2";
        return out;
    }
    if (twos >= 1 && threes >= 1) {
        out.witness = "Z/6";
        return out;
    }
    out.universal = true;
    return out;
}

FinAbGroup predict_h1(const FiniteRing& r) {
    UniversalityCheck u = universality(r);
    if (!u.universal)
        throw hypothesis_error("predict_h1: ring is not universal; A/J(A) has a " + u.witness +
                               " factor");
    return direct_sum(square_class_group(r), coinvariants_units(r));
}

H2Prediction predict_h2(const FiniteRing& r) {
    if (!r.is_local()) throw hypothesis_error("predict_h2: ring must be local");
    int q = r.residue_field_order();
    if (q == 2 || q == 3 || q == 4)
        throw hypothesis_error("predict_h2: residue field of size 2, 3 or 4 is excluded");
    PreBlochGroup p = prebloch_classical(r);
    WedgeSquareOfUnits w2 = wedge_square_of_units(r);
    PresHom lamE = lambda_wedge(p, r, w2);
    H2Prediction out;
    out.subgroup = cokernel(lamE);
    out.quotient = mu2(r);
    out.order = out.subgroup.order() * out.quotient.order();
    mpz_class odd = out.order;
    while (mpz_even_p(odd.get_mpz_t())) odd /= 2;
    out.odd_part = odd;
    out.k2m_odd_part = milnor_k2(r).group.odd_part_order();
    out.odd_parts_agree = out.odd_part == out.k2m_odd_part;
    return out;
}

BWPrediction predict_h3(const FiniteRing& r) {
    bool is_field = r.is_local() && r.residue_field_order() == r.order();
    if (!is_field) throw hypothesis_error("predict_h3: ring must be a finite field");
    long q = r.order();
    if (q == 2 || q == 3 || q == 4 || q == 8)
        throw hypothesis_error("predict_h3: fields of size 2, 3, 4, 8 are excluded");

    BWPrediction out;
    out.ring_spec = r.spec_string();
    out.h1 = predict_h1(r);
    H2Prediction h2 = predict_h2(r);
    out.h2_subgroup = h2.subgroup;
    out.h2_quotient = h2.quotient;

    out.tor_part = tor(cyclic_group(q - 1), cyclic_group(q - 1));
    out.be_part = ge2_bloch_group(r);
    out.h3_order = mpz_class(q - 1) * out.be_part.order();

    int mu2_order = static_cast<int>(mu2_elements(r).size());
    TorTilde tt = tor_tilde(out.tor_part, mu2_order);
    out.tor_tilde_group = tt.group;
    out.tor_tilde_split_only = tt.split_only;
    out.bw_order = tt.group.order() * bloch_group(r).order();

    out.k3_ind_literature = constants::k3_ind_order_literature(q);
    out.h3_matches_literature = out.h3_order == out.k3_ind_literature;
    out.bw_matches_literature = out.bw_order == out.k3_ind_literature;
    return out;
}

}  // namespace pgl2hom
