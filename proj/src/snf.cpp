#include "pgl2hom/snf.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <set>
#include <tuple>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pgl2hom/errors.hpp"

namespace pgl2hom {

DenseMat DenseMat::identity(int n) {
    DenseMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

DenseMat dense_mul(const DenseMat& x, const DenseMat& y) {
    if (x.ncols != y.nrows) throw input_error("dense_mul: shape mismatch");
    DenseMat z(x.nrows, y.ncols);
    for (int i = 0; i < x.nrows; ++i)
        for (int k = 0; k < x.ncols; ++k) {
            const mpz_class& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.ncols; ++j)
                if (y.at(k, j) != 0) z.at(i, j) += v * y.at(k, j);
        }
    return z;
}

mpz_class dense_det(const DenseMat& m) {
    if (m.nrows != m.ncols) throw input_error("dense_det: not square");
    int n = m.nrows;
    if (n == 0) return 1;
    DenseMat a = m;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                mpz_class t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        for (int i = k + 1; i < n; ++i) a.at(i, k) = 0;
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : mpz_class(-a.at(n - 1, n - 1));
}

namespace {

struct overflow_signal {};

// ---- coefficient-type adapters ----------------------------------------

struct I64 {
    using value = long long;
    static value from_long(long v) { return v; }
    static value from_mpz(const mpz_class& v) {
        if (!v.fits_slong_p()) throw overflow_signal{};
        return v.get_si();
    }
    static mpz_class to_mpz(value v) { return mpz_class(static_cast<long>(v)); }
    static value add(value a, value b) {
        value r;
        if (__builtin_add_overflow(a, b, &r)) throw overflow_signal{};
        return r;
    }
    static value sub(value a, value b) {
        value r;
        if (__builtin_sub_overflow(a, b, &r)) throw overflow_signal{};
        return r;
    }
    static value mul(value a, value b) {
        value r;
        if (__builtin_mul_overflow(a, b, &r)) throw overflow_signal{};
        return r;
    }
    static value neg(value a) { return sub(0, a); }
    static value divexact(value a, value b) { return a / b; }
    static bool divides(value a, value b) { return b % a == 0; }  // a != 0
    static bool is_zero(value a) { return a == 0; }
    static bool is_unit(value a) { return a == 1 || a == -1; }
    static value abs(value a) {
        if (a == std::numeric_limits<long long>::min()) throw overflow_signal{};
        return a < 0 ? -a : a;
    }
    static bool abs_less(value a, value b) { return abs(a) < abs(b); }
    // g = x*a + y*b, g > 0
    static void xgcd(value a, value b, value& g, value& x, value& y) {
        value r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (r1 != 0) {
            value q = r0 / r1;
            value r2 = sub(r0, mul(q, r1));
            value x2 = sub(x0, mul(q, x1));
            value y2 = sub(y0, mul(q, y1));
            r0 = r1; r1 = r2;
            x0 = x1; x1 = x2;
            y0 = y1; y1 = y2;
        }
        if (r0 < 0) { r0 = neg(r0); x0 = neg(x0); y0 = neg(y0); }
        g = r0; x = x0; y = y0;
    }
};

struct MpzC {
    using value = mpz_class;
    static value from_long(long v) { return mpz_class(v); }
    static value from_mpz(const mpz_class& v) { return v; }
    static mpz_class to_mpz(const value& v) { return v; }
    static value add(const value& a, const value& b) { return a + b; }
    static value sub(const value& a, const value& b) { return a - b; }
    static value mul(const value& a, const value& b) { return a * b; }
    static value neg(const value& a) { return -a; }
    static value divexact(const value& a, const value& b) {
        value q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    }
    static bool divides(const value& a, const value& b) {
        return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
    }
    static bool is_zero(const value& a) { return a == 0; }
    static bool is_unit(const value& a) { return a == 1 || a == -1; }
    static value abs(const value& a) { return ::abs(a); }
    static bool abs_less(const value& a, const value& b) {
        return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0;
    }
    static void xgcd(const value& a, const value& b, value& g, value& x, value& y) {
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
};

// ---- dense transform bookkeeping ---------------------------------------

struct Transforms {
    bool want_u, want_v, want_vinv;
    DenseMat u, v, vinv;

    Transforms(bool wu, bool wv, bool wvi, int nrows, int ncols)
        : want_u(wu), want_v(wv), want_vinv(wvi) {
        if (want_u) u = DenseMat::identity(nrows);
        if (want_v) v = DenseMat::identity(ncols);
        if (want_vinv) vinv = DenseMat::identity(ncols);
    }

    // row dst += q * row src on U
    void row_axpy(int dst, int src, const mpz_class& q) {
        if (!want_u) return;
        for (int j = 0; j < u.ncols; ++j)
            if (u.at(src, j) != 0) u.at(dst, j) += q * u.at(src, j);
    }
    // rows (r, r2) <- (x r + y r2, a r2 - b r)
    void row_mix(int r, int r2, const mpz_class& x, const mpz_class& y, const mpz_class& a,
                 const mpz_class& b) {
        if (!want_u) return;
        for (int j = 0; j < u.ncols; ++j) {
            mpz_class t1 = x * u.at(r, j) + y * u.at(r2, j);
            mpz_class t2 = a * u.at(r2, j) - b * u.at(r, j);
            u.at(r, j) = t1;
            u.at(r2, j) = t2;
        }
    }
    void row_negate(int r) {
        if (!want_u) return;
        for (int j = 0; j < u.ncols; ++j) u.at(r, j) = -u.at(r, j);
    }
    // col dst += q * col src on V; V^-1 gets the inverse row op
    void col_axpy(int dst, int src, const mpz_class& q) {
        if (want_v)
            for (int i = 0; i < v.nrows; ++i)
                if (v.at(i, src) != 0) v.at(i, dst) += q * v.at(i, src);
        if (want_vinv)
            for (int j = 0; j < vinv.ncols; ++j)
                if (vinv.at(dst, j) != 0) vinv.at(src, j) -= q * vinv.at(dst, j);
    }
    // cols (c, c2) <- (x c + y c2, a c2 - b c); inverse applied to V^-1 rows
    void col_mix(int c, int c2, const mpz_class& x, const mpz_class& y, const mpz_class& a,
                 const mpz_class& b) {
        if (want_v)
            for (int i = 0; i < v.nrows; ++i) {
                mpz_class t1 = x * v.at(i, c) + y * v.at(i, c2);
                mpz_class t2 = a * v.at(i, c2) - b * v.at(i, c);
                v.at(i, c) = t1;
                v.at(i, c2) = t2;
            }
        if (want_vinv)
            // inverse of [[x, -b], [y, a]] (det 1) is [[a, b], [-y, x]]
            for (int j = 0; j < vinv.ncols; ++j) {
                mpz_class t1 = a * vinv.at(c, j) + b * vinv.at(c2, j);
                mpz_class t2 = x * vinv.at(c2, j) - y * vinv.at(c, j);
                vinv.at(c, j) = t1;
                vinv.at(c2, j) = t2;
            }
    }
};

// ---- the sparse elimination engine --------------------------------------

template <typename C>
class Engine {
    using T = typename C::value;

public:
    int nrows, ncols;
    std::vector<std::vector<std::pair<int, T>>> rows;  // sorted by column
    std::vector<std::vector<int>> col_rows;            // may contain stale ids
    std::vector<int> row_nnz, col_nnz;
    std::vector<char> row_done, col_done;
    std::set<std::pair<int, int>> colq;  // (nnz, col) over pending nonempty cols
    std::vector<int> qkey;               // key currently held in colq, -1 if absent
    std::vector<int> dirty;              // columns whose counts changed since the last flush
    std::vector<char> dirty_mark;
    std::vector<std::pair<int, int>> pivots;
    Transforms* tf;
    bool parallel;

    Engine(int nr, int nc, Transforms* t, bool par)
        : nrows(nr), ncols(nc), rows(nr), col_rows(nc), row_nnz(nr, 0), col_nnz(nc, 0),
          row_done(nr, 0), col_done(nc, 0), qkey(nc, -1), dirty_mark(nc, 0), tf(t),
          parallel(par) {}

    void finish_load() {
        for (int r = 0; r < nrows; ++r) {
            row_nnz[r] = static_cast<int>(rows[r].size());
            for (auto& [c, v] : rows[r]) {
                col_rows[c].push_back(r);
                ++col_nnz[c];
            }
        }
        for (int c = 0; c < ncols; ++c)
            if (col_nnz[c] > 0) {
                colq.insert({col_nnz[c], c});
                qkey[c] = col_nnz[c];
            }
    }

    // queue maintenance is batched per pivot step
    void flush_dirty() {
        for (int c : dirty) {
            dirty_mark[c] = 0;
            int want = (!col_done[c] && col_nnz[c] > 0) ? col_nnz[c] : -1;
            if (qkey[c] == want) continue;
            if (qkey[c] >= 0) colq.erase({qkey[c], c});
            if (want >= 0) colq.insert({want, c});
            qkey[c] = want;
        }
        dirty.clear();
    }

    const T* find(int r, int c) const {
        const auto& row = rows[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const std::pair<int, T>& e, int col) { return e.first < col; });
        return (it != row.end() && it->first == c) ? &it->second : nullptr;
    }

    // validated, sorted, deduplicated list of rows with an entry in col c
    std::vector<int> live_rows(int c) {
        auto& lst = col_rows[c];
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
        std::vector<int> out;
        out.reserve(lst.size());
        for (int r : lst)
            if (find(r, c)) out.push_back(r);
        lst = out;
        return out;
    }

    // stale ids pile up in unvisited columns; compact before they
    // dominate the memory traffic
    void maybe_compact_col(int c) {
        auto& lst = col_rows[c];
        if (lst.size() <= 8 * static_cast<size_t>(col_nnz[c]) + 16) return;
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
        size_t w = 0;
        for (size_t i = 0; i < lst.size(); ++i)
            if (find(lst[i], c)) lst[w++] = lst[i];
        lst.resize(w);
    }

    void bump_col(int c, int delta) {
        col_nnz[c] += delta;
        if (!dirty_mark[c]) {
            dirty_mark[c] = 1;
            dirty.push_back(c);
        }
    }

    // replace row r by `next`, updating the column bookkeeping
    void commit_row(int r, std::vector<std::pair<int, T>>&& next) {
        auto& cur = rows[r];
        size_t i = 0, j = 0;
        while (i < cur.size() || j < next.size()) {
            int cc = i < cur.size() ? cur[i].first : std::numeric_limits<int>::max();
            int cn = j < next.size() ? next[j].first : std::numeric_limits<int>::max();
            if (cc < cn) {
                bump_col(cc, -1);
                ++i;
            } else if (cn < cc) {
                bump_col(cn, +1);
                maybe_compact_col(cn);
                col_rows[cn].push_back(r);
                ++j;
            } else {
                ++i;
                ++j;
            }
        }
        cur = std::move(next);
        row_nnz[r] = static_cast<int>(cur.size());
    }

    // dst + q*src, both sorted
    static std::vector<std::pair<int, T>> axpy(const std::vector<std::pair<int, T>>& dst,
                                               const std::vector<std::pair<int, T>>& src,
                                               const T& q) {
        std::vector<std::pair<int, T>> out;
        out.reserve(dst.size() + src.size());
        size_t i = 0, j = 0;
        while (i < dst.size() || j < src.size()) {
            int cd = i < dst.size() ? dst[i].first : std::numeric_limits<int>::max();
            int cs = j < src.size() ? src[j].first : std::numeric_limits<int>::max();
            if (cd < cs) {
                out.push_back(dst[i++]);
            } else if (cs < cd) {
                T v = C::mul(q, src[j].second);
                if (!C::is_zero(v)) out.emplace_back(cs, std::move(v));
                ++j;
            } else {
                T v = C::add(dst[i].second, C::mul(q, src[j].second));
                if (!C::is_zero(v)) out.emplace_back(cd, std::move(v));
                ++i;
                ++j;
            }
        }
        return out;
    }

    // rows (r, r2) <- (x r + y r2, a r2 - b r)
    void row_mix(int r, int r2, const T& x, const T& y, const T& a, const T& b) {
        auto mixed1 = combine(rows[r], rows[r2], x, y);
        auto mixed2 = combine(rows[r2], rows[r], a, C::neg(b));
        commit_row(r, std::move(mixed1));
        commit_row(r2, std::move(mixed2));
        if (tf) tf->row_mix(r, r2, C::to_mpz(x), C::to_mpz(y), C::to_mpz(a), C::to_mpz(b));
    }

    static std::vector<std::pair<int, T>> combine(const std::vector<std::pair<int, T>>& p,
                                                  const std::vector<std::pair<int, T>>& q,
                                                  const T& cp, const T& cq) {
        std::vector<std::pair<int, T>> out;
        out.reserve(p.size() + q.size());
        size_t i = 0, j = 0;
        while (i < p.size() || j < q.size()) {
            int ci = i < p.size() ? p[i].first : std::numeric_limits<int>::max();
            int cj = j < q.size() ? q[j].first : std::numeric_limits<int>::max();
            if (ci < cj) {
                T v = C::mul(cp, p[i].second);
                if (!C::is_zero(v)) out.emplace_back(ci, std::move(v));
                ++i;
            } else if (cj < ci) {
                T v = C::mul(cq, q[j].second);
                if (!C::is_zero(v)) out.emplace_back(cj, std::move(v));
                ++j;
            } else {
                T v = C::add(C::mul(cp, p[i].second), C::mul(cq, q[j].second));
                if (!C::is_zero(v)) out.emplace_back(ci, std::move(v));
                ++i;
                ++j;
            }
        }
        return out;
    }

    // cols (c, c2) <- (x c + y c2, a c2 - b c); touches every row meeting c or c2
    void col_mix(int c, int c2, const T& x, const T& y, const T& a, const T& b) {
        auto r1 = live_rows(c);
        auto r2 = live_rows(c2);
        std::vector<int> touched;
        std::set_union(r1.begin(), r1.end(), r2.begin(), r2.end(), std::back_inserter(touched));
        for (int r : touched) {
            const T* pu = find(r, c);
            const T* pw = find(r, c2);
            T u = pu ? *pu : C::from_long(0);
            T w = pw ? *pw : C::from_long(0);
            T nu = C::add(C::mul(x, u), C::mul(y, w));
            T nw = C::sub(C::mul(a, w), C::mul(b, u));
            set_entry(r, c, nu);
            set_entry(r, c2, nw);
        }
        if (tf) tf->col_mix(c, c2, C::to_mpz(x), C::to_mpz(y), C::to_mpz(a), C::to_mpz(b));
    }

    void set_entry(int r, int c, const T& v) {
        auto& row = rows[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const std::pair<int, T>& e, int col) { return e.first < col; });
        bool present = it != row.end() && it->first == c;
        if (C::is_zero(v)) {
            if (present) {
                row.erase(it);
                --row_nnz[r];
                bump_col(c, -1);
            }
        } else {
            if (present) {
                it->second = v;
            } else {
                row.insert(it, {c, v});
                ++row_nnz[r];
                bump_col(c, +1);
                maybe_compact_col(c);
                col_rows[c].push_back(r);
            }
        }
    }

    // pick the pivot row inside a scanned column: smallest |value|,
    // then fewest row entries, then lowest row id
    int pick_row_from(const std::vector<std::pair<int, T>>& entries) {
        int best = -1;
        const T* bestv = nullptr;
        for (auto& [r, v] : entries) {
            if (row_done[r]) continue;
            if (best < 0 || C::abs_less(v, *bestv) ||
                (!C::abs_less(*bestv, v) &&
                 (row_nnz[r] < row_nnz[best] || (row_nnz[r] == row_nnz[best] && r < best)))) {
                best = r;
                bestv = &v;
            }
        }
        return best;
    }

    // one validated pass over a column, capturing values
    std::vector<std::pair<int, T>> scan_col(int c) {
        auto& lst = col_rows[c];
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
        std::vector<std::pair<int, T>> out;
        out.reserve(lst.size());
        size_t w = 0;
        for (int r : lst)
            if (const T* v = find(r, c)) {
                lst[w++] = r;
                out.emplace_back(r, *v);
            }
        lst.resize(w);
        return out;
    }

    // rows[dst] += q * src, reusing the scratch buffer and emitting
    // the column bookkeeping inline
    std::vector<std::pair<int, T>> scratch;
    void merge_into(int dst, const std::vector<std::pair<int, T>>& src, const T& q) {
        auto& cur = rows[dst];
        scratch.clear();
        if (scratch.capacity() < cur.size() + src.size())
            scratch.reserve(cur.size() + src.size());
        size_t i = 0, j = 0;
        while (i < cur.size() || j < src.size()) {
            int cc = i < cur.size() ? cur[i].first : std::numeric_limits<int>::max();
            int cs = j < src.size() ? src[j].first : std::numeric_limits<int>::max();
            if (cc < cs) {
                scratch.push_back(cur[i++]);
            } else if (cs < cc) {
                T v = C::mul(q, src[j].second);
                if (!C::is_zero(v)) {
                    scratch.emplace_back(cs, std::move(v));
                    bump_col(cs, +1);
                    maybe_compact_col(cs);
                    col_rows[cs].push_back(dst);
                }
                ++j;
            } else {
                T v = C::add(cur[i].second, C::mul(q, src[j].second));
                if (C::is_zero(v))
                    bump_col(cc, -1);
                else
                    scratch.emplace_back(cc, std::move(v));
                ++i;
                ++j;
            }
        }
        std::swap(cur, scratch);  // the old buffer becomes the next scratch
        row_nnz[dst] = static_cast<int>(cur.size());
    }

    void stabilize_and_clear(int r, int c, std::vector<std::pair<int, T>> entries) {
        bool fresh = true;
        for (;;) {
            if (!fresh) entries = scan_col(c);
            fresh = false;
            const T* pp = nullptr;
            for (auto& [rr, v] : entries)
                if (rr == r) pp = &v;
            T p = *pp;
            // column direction
            int bad = -1;
            for (auto& [r2, v] : entries)
                if (r2 != r && !row_done[r2] && !C::divides(p, v)) { bad = r2; break; }
            if (bad >= 0) {
                T t = *find(bad, c);
                T g, x, y;
                C::xgcd(p, t, g, x, y);
                row_mix(r, bad, x, y, C::divexact(p, g), C::divexact(t, g));
                continue;
            }
            // row direction
            int badc = -1;
            for (auto& [c2, v] : rows[r])
                if (c2 != c && !col_done[c2] && !C::divides(p, v)) { badc = c2; break; }
            if (badc >= 0) {
                T t = *find(r, badc);
                T g, x, y;
                C::xgcd(p, t, g, x, y);
                col_mix(c, badc, x, y, C::divexact(p, g), C::divexact(t, g));
                continue;
            }
            break;
        }

        // exact column clear (row ops)
        T p;
        {
            const T* pp = nullptr;
            for (auto& [rr, v] : entries)
                if (rr == r) pp = &v;
            p = *pp;
        }
        std::vector<std::pair<int, T>> targets;  // (row, value at col c)
        for (auto& [r2, v] : entries)
            if (r2 != r && !row_done[r2]) targets.emplace_back(r2, v);
        const auto prow = rows[r];  // snapshot; merges must not alias it
#ifdef _OPENMP
        bool wide = parallel && omp_get_max_threads() > 1 && targets.size() >= 16 &&
                    prow.size() >= 64;
#else
        bool wide = false;
#endif
        if (!wide) {
            for (auto& [r2, v] : targets) {
                T q = C::neg(C::divexact(v, p));
                merge_into(r2, prow, q);
                if (tf) tf->row_axpy(r2, r, C::to_mpz(q));
            }
        } else {
#ifdef _OPENMP
            std::vector<std::vector<std::pair<int, T>>> updated(targets.size());
            std::vector<T> quots(targets.size());
            bool overflowed = false;  // exceptions must not escape the omp region
#pragma omp parallel for schedule(dynamic)
            for (long k = 0; k < static_cast<long>(targets.size()); ++k) {
                try {
                    T q = C::neg(C::divexact(targets[k].second, p));
                    quots[k] = q;
                    updated[k] = axpy(rows[targets[k].first], prow, q);
                } catch (const overflow_signal&) {
#pragma omp atomic write
                    overflowed = true;
                }
            }
            if (overflowed) throw overflow_signal{};
            for (size_t k = 0; k < targets.size(); ++k) {
                commit_row(targets[k].first, std::move(updated[k]));
                if (tf) tf->row_axpy(targets[k].first, r, C::to_mpz(quots[k]));
            }
#endif
        }

        // exact row clear (column ops touch only row r now)
        std::vector<std::pair<int, T>> prest = rows[r];
        for (auto& [c2, v] : prest) {
            if (c2 == c) continue;
            T q = C::neg(C::divexact(v, p));
            set_entry(r, c2, C::from_long(0));
            if (tf) tf->col_axpy(c2, c, C::to_mpz(q));
        }
    }

    // Small matrices pivot on the globally smallest |entry| (ties by
    // lowest column, then row) which keeps coefficient growth tame;
    // large boundary matrices are all +-1, where the fill-minimizing
    // lightest-column rule wins. Both rules are deterministic.
    void eliminate() {
        bool small = nrows <= 2048 && ncols <= 2048;
        if (small) {
            for (;;) {
                int pr = -1, pc = -1;
                const T* pv = nullptr;
                for (int r = 0; r < nrows; ++r) {
                    if (row_done[r]) continue;
                    for (auto& [c, v] : rows[r]) {
                        if (col_done[c]) continue;
                        if (!pv || C::abs_less(v, *pv) ||
                            (!C::abs_less(*pv, v) && (c < pc || (c == pc && r < pr)))) {
                            pr = r;
                            pc = c;
                            pv = &v;
                        }
                    }
                }
                if (pr < 0) break;
                stabilize_and_clear(pr, pc, scan_col(pc));
                col_done[pc] = 1;
                row_done[pr] = 1;
                pivots.push_back({pr, pc});
            }
            return;
        }
        const bool debug = std::getenv("PGL2HOM_SNF_DEBUG") != nullptr;
        long long ops = 0;
        flush_dirty();
        while (!colq.empty()) {
            int c = colq.begin()->second;
            auto entries = scan_col(c);
            int r = pick_row_from(entries);
            stabilize_and_clear(r, c, std::move(entries));
            col_done[c] = 1;
            row_done[r] = 1;
            flush_dirty();
            if (qkey[c] >= 0) {  // retire the pivot column from the queue
                colq.erase({qkey[c], c});
                qkey[c] = -1;
            }
            pivots.push_back({r, c});
            if (debug && (++ops % 10000 == 0)) {
                long long nnz = 0;
                for (auto& row : rows) nnz += static_cast<long long>(row.size());
                std::fprintf(stderr, "[snf] pivots=%lld nnz=%lld queue=%zu\n", ops, nnz,
                             colq.size());
            }
        }
    }

    void fix_signs_and_chain() {
        for (auto& [r, c] : pivots) {
            T v = *find(r, c);
            if (C::to_mpz(v) < 0) {
                set_entry(r, c, C::neg(v));
                if (tf) tf->row_negate(r);
            }
        }
        if (!tf) return;  // without transforms the chain is fixed on the values alone
        // enforce d_i | d_j for i < j with actual unimodular operations
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i + 1 < pivots.size(); ++i)
                for (size_t j = i + 1; j < pivots.size(); ++j) {
                    auto [ri, ci] = pivots[i];
                    auto [rj, cj] = pivots[j];
                    T di = *find(ri, ci);
                    T dj = *find(rj, cj);
                    if (C::divides(di, dj)) continue;
                    changed = true;
                    // col ci += col cj brings dj into the 2x2 block
                    set_entry(rj, ci, dj);
                    tf->col_axpy(ci, cj, 1);
                    T g, x, y;
                    C::xgcd(di, dj, g, x, y);
                    row_mix(ri, rj, x, y, C::divexact(di, g), C::divexact(dj, g));
                    // row ri now holds (g at ci, y*dj at cj); clear it exactly
                    const T* rem = find(ri, cj);
                    if (rem) {
                        T q = C::neg(C::divexact(*rem, g));
                        set_entry(ri, cj, C::from_long(0));
                        tf->col_axpy(cj, ci, C::to_mpz(q));
                    }
                    T nj = *find(rj, cj);
                    if (C::to_mpz(nj) < 0) {
                        set_entry(rj, cj, C::neg(nj));
                        tf->row_negate(rj);
                    }
                }
        }
    }

    std::vector<mpz_class> diagonal() {
        std::vector<mpz_class> d;
        d.reserve(pivots.size());
        for (auto& [r, c] : pivots) d.push_back(C::to_mpz(*find(r, c)));
        if (tf) return d;  // already a chain
        // value-level chain fixup: pull the 1s aside, bubble the rest
        std::vector<mpz_class> rest;
        size_t ones = 0;
        for (auto& v : d)
            if (v == 1)
                ++ones;
            else
                rest.push_back(v);
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i + 1 < rest.size(); ++i)
                for (size_t j = i + 1; j < rest.size(); ++j) {
                    if (mpz_divisible_p(rest[j].get_mpz_t(), rest[i].get_mpz_t())) continue;
                    mpz_class g, l;
                    mpz_gcd(g.get_mpz_t(), rest[i].get_mpz_t(), rest[j].get_mpz_t());
                    l = rest[i] / g * rest[j];
                    rest[i] = g;
                    rest[j] = l;
                    changed = true;
                }
        }
        std::vector<mpz_class> out(ones, mpz_class(1));
        out.insert(out.end(), rest.begin(), rest.end());
        return out;
    }
};

template <typename C, typename Loader>
SmithResult run_engine(int nrows, int ncols, const Loader& load, const SmithOptions& opts) {
    bool transforms = opts.want_u || opts.want_v || opts.want_v_inv;
    if (transforms && (nrows > 20000 || ncols > 20000))
        throw input_error("smith: transform tracking requested for a matrix too large to hold dense transforms");

    Transforms tf(opts.want_u, opts.want_v, opts.want_v_inv, nrows, ncols);
    Engine<C> eng(nrows, ncols, transforms ? &tf : nullptr, opts.parallel);
    load(eng);
    eng.finish_load();
    eng.eliminate();
    eng.fix_signs_and_chain();

    SmithResult out;
    out.diag = eng.diagonal();
    out.rank = static_cast<int>(out.diag.size());
    if (transforms) {
        // reorder so pivot i sits at (i, i)
        std::vector<int> rperm, cperm;
        std::vector<char> rused(nrows, 0), cused(ncols, 0);
        for (auto& [r, c] : eng.pivots) {
            rperm.push_back(r);
            cperm.push_back(c);
            rused[r] = 1;
            cused[c] = 1;
        }
        for (int r = 0; r < nrows; ++r)
            if (!rused[r]) rperm.push_back(r);
        for (int c = 0; c < ncols; ++c)
            if (!cused[c]) cperm.push_back(c);
        if (opts.want_u) {
            DenseMat pu(nrows, nrows);
            for (int i = 0; i < nrows; ++i)
                for (int j = 0; j < nrows; ++j) pu.at(i, j) = tf.u.at(rperm[i], j);
            out.u = std::move(pu);
        }
        if (opts.want_v) {
            DenseMat pv(ncols, ncols);
            for (int i = 0; i < ncols; ++i)
                for (int j = 0; j < ncols; ++j) pv.at(i, j) = tf.v.at(i, cperm[j]);
            out.v = std::move(pv);
        }
        if (opts.want_v_inv) {
            DenseMat pvi(ncols, ncols);
            for (int i = 0; i < ncols; ++i)
                for (int j = 0; j < ncols; ++j) pvi.at(i, j) = tf.vinv.at(cperm[i], j);
            out.v_inv = std::move(pvi);
        }
    }
    return out;
}

template <typename C>
SmithResult run_intmat(const IntMat& m, bool flip, const SmithOptions& opts) {
    int nr = flip ? m.cols() : m.rows();
    int nc = flip ? m.rows() : m.cols();
    auto loader = [&](Engine<C>& eng) {
        if (!flip) {
            for (const auto& [rc, v] : m.entries())
                eng.rows[rc.first].emplace_back(rc.second, C::from_mpz(v));
            for (auto& row : eng.rows)
                std::sort(row.begin(), row.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
        } else {
            for (const auto& [rc, v] : m.entries())
                eng.rows[rc.second].emplace_back(rc.first, C::from_mpz(v));
            for (auto& row : eng.rows)
                std::sort(row.begin(), row.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
        }
    };
    return run_engine<C>(nr, nc, loader, opts);
}

template <typename C>
SmithResult run_boundary(const SparseBoundary& b, bool flip, const SmithOptions& opts) {
    int nr = flip ? b.ncols : b.nrows;
    int nc = flip ? b.nrows : b.ncols;
    auto loader = [&](Engine<C>& eng) {
        if (flip) {
            // rows of the engine are the columns of b: already grouped
            for (int c = 0; c < b.ncols; ++c) {
                auto& row = eng.rows[c];
                row.reserve(b.colptr[c + 1] - b.colptr[c]);
                for (long long k = b.colptr[c]; k < b.colptr[c + 1]; ++k)
                    row.emplace_back(b.rowidx[k], C::from_long(b.value[k]));
                std::sort(row.begin(), row.end(),
                          [](const auto& x, const auto& y) { return x.first < y.first; });
            }
        } else {
            std::vector<int> counts(b.nrows, 0);
            for (long long k = 0; k < b.nnz(); ++k) ++counts[b.rowidx[k]];
            for (int r = 0; r < b.nrows; ++r) eng.rows[r].reserve(counts[r]);
            for (int c = 0; c < b.ncols; ++c)
                for (long long k = b.colptr[c]; k < b.colptr[c + 1]; ++k)
                    eng.rows[b.rowidx[k]].emplace_back(c, C::from_long(b.value[k]));
            // columns are visited in order, so rows are already sorted
        }
    };
    return run_engine<C>(nr, nc, loader, opts);
}

}  // namespace

SmithResult smith(const IntMat& m, const SmithOptions& opts) {
    bool transforms = opts.want_u || opts.want_v || opts.want_v_inv;
    // keep the stored rows on the light side of the matrix: short rows
    // make the per-target merges cheap
    bool flip = !transforms && m.cols() > m.rows();
    try {
        return run_intmat<I64>(m, flip, opts);
    } catch (const overflow_signal&) {
        return run_intmat<MpzC>(m, flip, opts);
    }
}

SmithResult smith(const SparseBoundary& b, const SmithOptions& opts) {
    bool transforms = opts.want_u || opts.want_v || opts.want_v_inv;
    bool flip = !transforms && b.ncols > b.nrows;
    try {
        return run_boundary<I64>(b, flip, opts);
    } catch (const overflow_signal&) {
        return run_boundary<MpzC>(b, flip, opts);
    }
}

int rank_of(const IntMat& m) { return smith(m).rank; }
int rank_of(const SparseBoundary& m) { return smith(m).rank; }

}  // namespace pgl2hom
