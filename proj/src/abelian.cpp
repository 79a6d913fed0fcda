#include "pgl2hom/abelian.hpp"

#include <algorithm>
#include <sstream>

#include "pgl2hom/errors.hpp"

namespace pgl2hom {

bool FinAbGroup::is_finite() const {
    for (const auto& d : factors)
        if (d == 0) return false;
    return true;
}

int FinAbGroup::free_rank() const {
    int r = 0;
    for (const auto& d : factors)
        if (d == 0) ++r;
    return r;
}

mpz_class FinAbGroup::order() const {
    mpz_class o = 1;
    for (const auto& d : factors) {
        if (d == 0) throw input_error("order of an infinite group");
        o *= d;
    }
    return o;
}

mpz_class FinAbGroup::odd_part_order() const {
    mpz_class o = order();
    while (mpz_even_p(o.get_mpz_t())) o /= 2;
    return o;
}

std::string FinAbGroup::str() const {
    if (factors.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& d : factors) {
        if (!first) os << "+";
        first = false;
        if (d == 0)
            os << "Z";
        else
            os << "Z/" << d;
    }
    return os.str();
}

FinAbGroup trivial_group() { return {}; }

FinAbGroup cyclic_group(const mpz_class& n) {
    if (n == 1) return {};
    FinAbGroup g;
    g.factors.push_back(n);
    return g;
}

FinAbGroup free_abelian(int rank) {
    FinAbGroup g;
    g.factors.assign(rank, mpz_class(0));
    return g;
}

Presentation Presentation::of_group(const FinAbGroup& g) {
    Presentation p;
    p.ngens = static_cast<int>(g.factors.size());
    int nrel = 0;
    for (const auto& d : g.factors)
        if (d != 0) ++nrel;
    p.rels = IntMat(nrel, p.ngens);
    int r = 0;
    for (int i = 0; i < p.ngens; ++i)
        if (g.factors[i] != 0) p.rels.set(r++, i, g.factors[i]);
    return p;
}

namespace {

FinAbGroup group_from_smith(const std::vector<mpz_class>& diag, int ngens) {
    FinAbGroup g;
    for (const auto& d : diag)
        if (d >= 2) g.factors.push_back(d);
    for (int i = static_cast<int>(diag.size()); i < ngens; ++i) g.factors.push_back(0);
    return g;
}

}  // namespace

FinAbGroup fp_group(int ngens, const IntMat& rels) {
    if (rels.cols() != ngens) throw input_error("fp_group: relation matrix has wrong width");
    SmithResult s = smith(rels);
    return group_from_smith(s.diag, ngens);
}

CanonicalForm canonicalize(const Presentation& p) {
    SmithOptions opts;
    opts.want_v = true;
    opts.want_v_inv = true;
    SmithResult s = smith(p.rels, opts);
    const int m = p.ngens;
    std::vector<mpz_class> d(m, 0);
    for (int i = 0; i < s.rank; ++i) d[i] = s.diag[i];
    std::vector<int> kept;
    for (int i = 0; i < m; ++i)
        if (d[i] != 1) kept.push_back(i);

    CanonicalForm cf;
    for (int i : kept) cf.group.factors.push_back(d[i] == 0 ? mpz_class(0) : d[i]);
    const int k = static_cast<int>(kept.size());
    cf.gen_to_canon = IntMat(m, k);
    const DenseMat& v = *s.v;
    for (int j = 0; j < m; ++j)
        for (int t = 0; t < k; ++t) {
            mpz_class c = v.at(j, kept[t]);
            if (d[kept[t]] > 1) {
                mpz_class r;
                mpz_mod(r.get_mpz_t(), c.get_mpz_t(), d[kept[t]].get_mpz_t());
                c = r;
            }
            cf.gen_to_canon.set(j, t, c);
        }
    cf.canon_to_orig = IntMat(k, m);
    const DenseMat& vi = *s.v_inv;
    for (int t = 0; t < k; ++t)
        for (int j = 0; j < m; ++j) cf.canon_to_orig.set(t, j, vi.at(kept[t], j));
    return cf;
}

namespace {

/// Precomputed membership test for the row lattice of a matrix.
struct LatticeTester {
    int m = 0, rank = 0;
    DenseMat v;
    std::vector<mpz_class> diag;

    explicit LatticeTester(const IntMat& r) : m(r.cols()) {
        SmithOptions opts;
        opts.want_v = true;
        SmithResult s = smith(r, opts);
        rank = s.rank;
        diag = s.diag;
        v = std::move(*s.v);
    }

    bool contains(const std::vector<mpz_class>& vec) const {
        // w = vec * V
        for (int j = 0; j < m; ++j) {
            mpz_class w = 0;
            for (int i = 0; i < m; ++i)
                if (vec[i] != 0 && v.at(i, j) != 0) w += vec[i] * v.at(i, j);
            if (j < rank) {
                if (!mpz_divisible_p(w.get_mpz_t(), diag[j].get_mpz_t())) return false;
            } else {
                if (w != 0) return false;
            }
        }
        return true;
    }
};

std::vector<mpz_class> row_times_mat(const IntMat& rowsrc, int row, const IntMat& m) {
    std::vector<mpz_class> out(m.cols(), 0);
    auto it = rowsrc.entries().lower_bound({row, 0});
    for (; it != rowsrc.entries().end() && it->first.first == row; ++it) {
        int j = it->first.second;
        auto jt = m.entries().lower_bound({j, 0});
        for (; jt != m.entries().end() && jt->first.first == j; ++jt)
            out[jt->first.second] += it->second * jt->second;
    }
    return out;
}

}  // namespace

bool lattice_contains(const IntMat& r, const std::vector<mpz_class>& v) {
    if (static_cast<int>(v.size()) != r.cols()) throw input_error("lattice_contains: length mismatch");
    return LatticeTester(r).contains(v);
}

IntMat preimage_lattice(const IntMat& a, const IntMat& b) {
    if (a.cols() != b.cols()) throw input_error("preimage_lattice: width mismatch");
    const int s = a.rows();
    IntMat c = a.vstack(b);
    SmithOptions opts;
    opts.want_u = true;
    SmithResult sm = smith(c, opts);
    const DenseMat& u = *sm.u;
    const int total = c.rows();
    IntMat out(total - sm.rank, s);
    for (int i = sm.rank; i < total; ++i)
        for (int j = 0; j < s; ++j)
            if (u.at(i, j) != 0) out.set(i - sm.rank, j, u.at(i, j));
    return out;
}

bool PresHom::well_defined() const {
    if (map.rows() != src.ngens || map.cols() != dst.ngens)
        throw input_error("PresHom: matrix shape does not match the presentations");
    LatticeTester dstlat(dst.rels);
    for (int r = 0; r < src.rels.rows(); ++r) {
        auto v = row_times_mat(src.rels, r, map);
        if (!dstlat.contains(v)) return false;
    }
    return true;
}

FinAbGroup kernel(const PresHom& h) {
    IntMat span = preimage_lattice(h.map, h.dst.rels);
    if (span.rows() == 0) return trivial_group();
    IntMat rels = preimage_lattice(span, h.src.rels);
    return fp_group(span.rows(), rels);
}

FinAbGroup cokernel(const PresHom& h) {
    return fp_group(h.dst.ngens, h.dst.rels.vstack(h.map));
}

mpz_class image_order(const PresHom& h) {
    IntMat rels = preimage_lattice(h.map, h.dst.rels);
    FinAbGroup im = fp_group(h.map.rows(), rels);
    if (!im.is_finite()) throw input_error("image_order: image is infinite");
    return im.order();
}

PresHom AbHom::as_pres_hom() const {
    return PresHom{Presentation::of_group(src), Presentation::of_group(dst), map};
}

FinAbGroup kernel(const AbHom& h) { return kernel(h.as_pres_hom()); }
FinAbGroup cokernel(const AbHom& h) { return cokernel(h.as_pres_hom()); }
mpz_class image_order(const AbHom& h) { return image_order(h.as_pres_hom()); }

FinAbGroup direct_sum(const FinAbGroup& g, const FinAbGroup& h) {
    FinAbGroup cat;
    cat.factors = g.factors;
    cat.factors.insert(cat.factors.end(), h.factors.begin(), h.factors.end());
    return fp_group(static_cast<int>(cat.factors.size()), Presentation::of_group(cat).rels);
}

FinAbGroup tensor(const FinAbGroup& g, const FinAbGroup& h) {
    const int kg = static_cast<int>(g.factors.size());
    const int kh = static_cast<int>(h.factors.size());
    std::vector<std::vector<mpz_class>> rows;
    for (int i = 0; i < kg; ++i)
        for (int j = 0; j < kh; ++j) {
            int idx = i * kh + j;
            if (g.factors[i] != 0) {
                std::vector<mpz_class> r(kg * kh, 0);
                r[idx] = g.factors[i];
                rows.push_back(std::move(r));
            }
            if (h.factors[j] != 0) {
                std::vector<mpz_class> r(kg * kh, 0);
                r[idx] = h.factors[j];
                rows.push_back(std::move(r));
            }
        }
    IntMat rels(static_cast<int>(rows.size()), kg * kh);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
        for (int c = 0; c < kg * kh; ++c)
            if (rows[r][c] != 0) rels.set(r, c, rows[r][c]);
    return fp_group(kg * kh, rels);
}

FinAbGroup tor(const FinAbGroup& g, const FinAbGroup& h) {
    if (!g.is_finite() || !h.is_finite()) throw input_error("tor: inputs must be finite");
    FinAbGroup cat;
    for (const auto& a : g.factors)
        for (const auto& b : h.factors) {
            mpz_class d;
            mpz_gcd(d.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            if (d > 1) cat.factors.push_back(d);
        }
    return fp_group(static_cast<int>(cat.factors.size()), Presentation::of_group(cat).rels);
}

FinAbGroup exterior_square(const FinAbGroup& g) {
    if (!g.is_finite()) throw input_error("exterior_square: input must be finite");
    const int k = static_cast<int>(g.factors.size());
    const int n = k * k;
    auto idx = [k](int i, int j) { return i * k + j; };
    IntMat rels(2 * n + k + k * (k - 1) / 2, n);
    int r = 0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            rels.set(r++, idx(i, j), g.factors[i]);
            rels.set(r++, idx(i, j), g.factors[j]);
        }
    for (int i = 0; i < k; ++i) rels.set(r++, idx(i, i), 1);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            rels.set(r, idx(i, j), 1);
            rels.set(r, idx(j, i), 1);
            ++r;
        }
    return fp_group(n, rels);
}

FinAbGroup sym_square(const FinAbGroup& g) {
    if (!g.is_finite()) throw input_error("sym_square: input must be finite");
    const int k = static_cast<int>(g.factors.size());
    const int n = k * k;
    auto idx = [k](int i, int j) { return i * k + j; };
    IntMat rels(2 * n + k + k * (k - 1) / 2, n);
    int r = 0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            rels.set(r++, idx(i, j), g.factors[i]);
            rels.set(r++, idx(i, j), g.factors[j]);
        }
    for (int i = 0; i < k; ++i) rels.set(r++, idx(i, i), 2);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            rels.set(r, idx(i, j), 1);
            rels.set(r, idx(j, i), 1);
            ++r;
        }
    return fp_group(n, rels);
}

FinAbGroup exterior_cube(const FinAbGroup& g) {
    if (!g.is_finite()) throw input_error("exterior_cube: input must be finite");
    const int k = static_cast<int>(g.factors.size());
    const int n = k * k * k;
    auto idx = [k](int i, int j, int l) { return (i * k + j) * k + l; };
    std::vector<std::vector<std::pair<int, mpz_class>>> rows;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < k; ++l) {
                rows.push_back({{idx(i, j, l), g.factors[i]}});
                rows.push_back({{idx(i, j, l), g.factors[j]}});
                rows.push_back({{idx(i, j, l), g.factors[l]}});
            }
    // repeated-slot generators vanish
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            rows.push_back({{idx(i, i, j), mpz_class(1)}});
            rows.push_back({{idx(i, j, i), mpz_class(1)}});
            rows.push_back({{idx(j, i, i), mpz_class(1)}});
        }
    // polarizations of the three repeated-slot patterns
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            for (int l = 0; l < k; ++l) {
                rows.push_back({{idx(i, j, l), mpz_class(1)}, {idx(j, i, l), mpz_class(1)}});
                rows.push_back({{idx(l, i, j), mpz_class(1)}, {idx(l, j, i), mpz_class(1)}});
                rows.push_back({{idx(i, l, j), mpz_class(1)}, {idx(j, l, i), mpz_class(1)}});
            }
    IntMat rels(static_cast<int>(rows.size()), n);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r)
        for (auto& [c, v] : rows[r]) rels.add(r, c, v);
    return fp_group(n, rels);
}

TorTilde tor_tilde(const FinAbGroup& g, int mu2_order) {
    if (mu2_order != 1 && mu2_order != 2) throw input_error("tor_tilde: mu2 order must be 1 or 2");
    if (!g.is_finite() || g.factors.size() > 1)
        throw input_error("tor_tilde: input must be finite cyclic");
    TorTilde out;
    if (mu2_order == 1) {
        out.group = g;
        return out;
    }
    mpz_class n = g.is_trivial() ? mpz_class(1) : g.factors[0];
    if (mpz_even_p(n.get_mpz_t())) {
        out.group = cyclic_group(2 * n);  // the unique nontrivial extension
    } else {
        out.group = direct_sum(g, cyclic_group(2));  // only the split extension exists
        out.split_only = true;
    }
    return out;
}

AbelianDecomposition decompose_abelian_table(int n, const std::function<int(int, int)>& mul,
                                             int id) {
    auto order_of = [&](int x) {
        int t = 1, acc = x;
        while (acc != id) {
            acc = mul(acc, x);
            ++t;
        }
        return t;
    };

    std::vector<char> known(n, 0);
    std::vector<std::vector<long>> log(n);
    known[id] = 1;
    int known_count = 1;
    std::vector<int> gens;
    std::vector<int> quotient_orders;

    auto rebuild = [&]() {
        std::fill(known.begin(), known.end(), 0);
        for (auto& l : log) l.clear();
        known[id] = 1;
        log[id].assign(gens.size(), 0);
        known_count = 1;
        long long total = 1;
        for (int q : quotient_orders) total *= q;
        std::vector<long> expo(gens.size(), 0);
        for (long long t = 1; t < total; ++t) {
            long long x = t;
            int elt = id;
            for (size_t i = 0; i < gens.size(); ++i) {
                long e = static_cast<long>(x % quotient_orders[i]);
                x /= quotient_orders[i];
                expo[i] = e;
                for (long j = 0; j < e; ++j) elt = mul(elt, gens[i]);
            }
            if (!known[elt]) {
                known[elt] = 1;
                ++known_count;
            }
            log[elt] = expo;
        }
    };

    while (known_count < n) {
        auto qorder = [&](int x) {
            int t = 1, acc = x;
            while (!known[acc]) {
                acc = mul(acc, x);
                ++t;
            }
            return t;
        };
        int maxq = 0, candidate = -1, split = -1;
        for (int x = 0; x < n; ++x) {
            if (known[x]) continue;
            int q = qorder(x);
            if (q > maxq) {
                maxq = q;
                candidate = x;
                split = (order_of(x) == q) ? x : -1;
            } else if (q == maxq && split < 0 && order_of(x) == q) {
                split = x;
            }
        }
        if (split < 0) {
            // some lift in the coset of a maximal element has exact order
            for (int h = 0; h < n && split < 0; ++h) {
                if (!known[h]) continue;
                int y = mul(candidate, h);
                if (order_of(y) == maxq) split = y;
            }
            if (split < 0) throw input_error("internal: abelian decomposition failed");
        }
        gens.push_back(split);
        quotient_orders.push_back(maxq);
        rebuild();
    }

    for (size_t i = 1; i < quotient_orders.size(); ++i)
        if (quotient_orders[i - 1] % quotient_orders[i] != 0)
            throw input_error("internal: quotient orders not a divisibility chain");

    AbelianDecomposition out;
    out.gens.assign(gens.rbegin(), gens.rend());  // ascending invariant factors
    for (auto it = quotient_orders.rbegin(); it != quotient_orders.rend(); ++it)
        if (*it > 1) out.group.factors.push_back(*it);
    out.log.assign(n, {});
    for (int x = 0; x < n; ++x) out.log[x].assign(log[x].rbegin(), log[x].rend());
    return out;
}

namespace {

FinAbGroup tor_kunneth(const FinAbGroup& a, const FinAbGroup& b) {
    if (a.free_rank() > 0 || b.free_rank() > 0) {
        // only H_0 = Z is infinite here, and Tor(Z, -) = 0
        return trivial_group();
    }
    return tor(a, b);
}

}  // namespace

FinAbGroup homology_abelian(const FinAbGroup& g, int n) {
    if (n < 0 || n > 3) throw input_error("homology_abelian: degree must be 0..3");
    if (!g.is_finite()) throw input_error("homology_abelian: group must be finite");
    if (n == 0) return free_abelian(1);
    std::vector<FinAbGroup> hom = {free_abelian(1), trivial_group(), trivial_group(),
                                   trivial_group()};
    for (const auto& d : g.factors) {
        std::vector<FinAbGroup> hc = {free_abelian(1), cyclic_group(d), trivial_group(),
                                      cyclic_group(d)};
        std::vector<FinAbGroup> next(4);
        for (int t = 0; t <= 3; ++t) {
            FinAbGroup acc;
            for (int p = 0; p <= t; ++p) acc = direct_sum(acc, tensor(hom[p], hc[t - p]));
            for (int p = 0; p <= t - 1; ++p)
                acc = direct_sum(acc, tor_kunneth(hom[p], hc[t - 1 - p]));
            next[t] = acc;
        }
        hom = std::move(next);
    }
    return hom[n];
}

namespace {

template <typename M>
FinAbGroup homology_pair_impl(const M& dk, const M& dk1, int nk, int dk1_rows, bool parallel) {
    if (dk1_rows != nk) throw input_error("homology_of_pair: dimension mismatch");
    SmithOptions opts;
    opts.parallel = parallel;
    SmithResult skp1 = smith(dk1, opts);
    int rk = smith(dk, opts).rank;
    int free = nk - rk - skp1.rank;
    if (free < 0) throw input_error("homology_of_pair: not a complex (rank overflow)");
    FinAbGroup h;
    for (const auto& d : skp1.diag)
        if (d >= 2) h.factors.push_back(d);
    for (int i = 0; i < free; ++i) h.factors.push_back(0);
    return h;
}

}  // namespace

FinAbGroup homology_of_pair(const SparseBoundary& dk, const SparseBoundary& dk1, bool parallel) {
    return homology_pair_impl(dk, dk1, dk.ncols, dk1.nrows, parallel);
}

FinAbGroup homology_of_pair(const IntMat& dk, const IntMat& dk1, bool parallel) {
    return homology_pair_impl(dk, dk1, dk.cols(), dk1.rows(), parallel);
}

}  // namespace pgl2hom
