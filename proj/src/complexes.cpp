#include "pgl2hom/complexes.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

#include "pgl2hom/errors.hpp"

namespace pgl2hom {

Mat2 mat_mul(const FiniteRing& r, const Mat2& x, const Mat2& y) {
    return Mat2{r.add(r.mul(x.a, y.a), r.mul(x.b, y.c)), r.add(r.mul(x.a, y.b), r.mul(x.b, y.d)),
                r.add(r.mul(x.c, y.a), r.mul(x.d, y.c)), r.add(r.mul(x.c, y.b), r.mul(x.d, y.d))};
}

int mat_det(const FiniteRing& r, const Mat2& m) { return r.sub(r.mul(m.a, m.d), r.mul(m.b, m.c)); }

bool mat_invertible(const FiniteRing& r, const Mat2& m) { return r.is_unit(mat_det(r, m)); }

Mat2 mat_adj(const FiniteRing& r, const Mat2& m) {
    return Mat2{m.d, r.neg(m.b), r.neg(m.c), m.a};
}

int ProjLine::class_of(int a, int b, const FiniteRing& r) const {
    int cls = class_of_vec[static_cast<size_t>(a) * r.order() + b];
    if (cls < 0) throw input_error("class_of: vector is not unimodular");
    return cls;
}

int ProjLine::finite_class(int x, const FiniteRing& r) const {
    if (!r.is_unit(x)) throw input_error("finite_class: label must be a unit");
    return class_of(r.one(), x, r);
}

int ProjLine::finite_label(int cls, const FiniteRing& r) const {
    auto [a, b] = reps[cls];
    if (!r.is_unit(a)) return -1;
    return r.mul(b, r.inv(a));
}

ProjLine projective_line(const FiniteRing& r) {
    const int n = r.order();
    ProjLine pl;
    pl.class_of_vec.assign(static_cast<size_t>(n) * n, -1);

    auto unimodular = [&](int a, int b) {
        for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d)
                if (r.is_unit(r.sub(r.mul(a, d), r.mul(b, c)))) return true;
        return false;
    };

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (pl.class_of_vec[static_cast<size_t>(a) * n + b] >= 0) continue;
            if (!unimodular(a, b)) continue;
            int cls = pl.n_classes++;
            pl.reps.push_back({a, b});
            for (int u : r.units())
                pl.class_of_vec[static_cast<size_t>(r.mul(u, a)) * n + r.mul(u, b)] = cls;
        }

    pl.generic.assign(pl.n_classes, std::vector<char>(pl.n_classes, 0));
    for (int i = 0; i < pl.n_classes; ++i)
        for (int j = 0; j < pl.n_classes; ++j) {
            if (i == j) continue;
            auto [a, b] = pl.reps[i];
            auto [c, d] = pl.reps[j];
            pl.generic[i][j] = r.is_unit(r.sub(r.mul(a, d), r.mul(b, c))) ? 1 : 0;
        }
    pl.inf_class = pl.class_of(r.one(), r.zero(), r);
    pl.zero_class = pl.class_of(r.zero(), r.one(), r);
    return pl;
}

int apply_to_class(const FiniteRing& r, const ProjLine& pl, const Mat2& m, int cls) {
    auto [u1, u2] = pl.reps[cls];
    int v1 = r.add(r.mul(m.a, u1), r.mul(m.b, u2));
    int v2 = r.add(r.mul(m.c, u1), r.mul(m.d, u2));
    return pl.class_of(v1, v2, r);
}

std::vector<int> ge2_classes(const FiniteRing& r, const ProjLine& pl) {
    std::vector<Mat2> gens;
    for (int t = 0; t < r.order(); ++t) {
        gens.push_back(Mat2{r.one(), t, r.zero(), r.one()});  // E12(t)
        gens.push_back(Mat2{r.one(), r.zero(), t, r.one()});  // E21(t)
    }
    for (int u : r.units()) gens.push_back(Mat2{u, r.zero(), r.zero(), r.one()});  // diag(u,1)

    std::vector<char> seen(pl.n_classes, 0);
    std::queue<int> q;
    seen[pl.inf_class] = 1;
    q.push(pl.inf_class);
    while (!q.empty()) {
        int c = q.front();
        q.pop();
        for (const Mat2& g : gens) {
            int d = apply_to_class(r, pl, g, c);
            if (!seen[d]) {
                seen[d] = 1;
                q.push(d);
            }
        }
    }
    std::vector<int> out;
    for (int c = 0; c < pl.n_classes; ++c)
        if (seen[c]) out.push_back(c);
    return out;
}

namespace {

struct TupleEnum {
    const std::vector<int>& verts;                 // sorted class ids
    const std::vector<std::vector<char>>& generic;

    template <typename F>
    void walk(int len, F&& sink) const {
        std::vector<int> cur;
        cur.reserve(len);
        rec(len, cur, sink);
    }

    template <typename F>
    void rec(int len, std::vector<int>& cur, F&& sink) const {
        if (static_cast<int>(cur.size()) == len) {
            sink(cur);
            return;
        }
        for (int v : verts) {
            bool ok = true;
            for (int u : cur)
                if (!generic[u][v]) {
                    ok = false;
                    break;
                }
            if (ok) {
                cur.push_back(v);
                rec(len, cur, sink);
                cur.pop_back();
            }
        }
    }
};

// binary search for a tuple in a flattened lexicographically sorted list
long long find_tuple(const std::vector<std::uint8_t>& flat, int len, const std::uint8_t* key) {
    long long lo = 0, hi = static_cast<long long>(flat.size()) / len - 1;
    while (lo <= hi) {
        long long mid = lo + (hi - lo) / 2;
        int cmp = std::memcmp(flat.data() + mid * len, key, static_cast<size_t>(len));
        if (cmp == 0) return mid;
        if (cmp < 0)
            lo = mid + 1;
        else
            hi = mid - 1;
    }
    return -1;
}

}  // namespace

ChainComplexZ build_complex(const FiniteRing& r, const ProjLine& pl, int max_degree,
                            ComplexVariant variant, bool augmented, long long budget,
                            bool parallel) {
    if (max_degree < 0 || max_degree > 5)
        throw input_error("build_complex: degree must be between 0 and 5");
    if (pl.n_classes > 255) throw budget_error("build_complex: more than 255 classes");

    std::vector<int> verts;
    if (variant == ComplexVariant::GE2)
        verts = ge2_classes(r, pl);
    else
        for (int c = 0; c < pl.n_classes; ++c) verts.push_back(c);

    TupleEnum en{verts, pl.generic};

    // counting pass enforces the budget before anything is materialized
    std::vector<long long> counts(max_degree + 1, 0);
    long long total = 0;
    for (int n = 0; n <= max_degree; ++n) {
        en.walk(n + 1, [&](const std::vector<int>&) { ++counts[n]; });
        total += counts[n];
        if (total > budget) {
            std::ostringstream os;
            os << "build_complex: estimated " << total << "+ tuples through degree " << n
               << " exceeds the budget of " << budget;
            throw budget_error(os.str());
        }
    }

    ChainComplexZ c;
    c.max_degree = max_degree;
    c.augmented = augmented;
    c.n_vertices = static_cast<int>(verts.size());
    c.basis.resize(max_degree + 1);
    c.basis_count = counts;
    for (int n = 0; n <= max_degree; ++n) {
        c.basis[n].reserve(counts[n] * (n + 1));
        en.walk(n + 1, [&](const std::vector<int>& t) {
            for (int v : t) c.basis[n].push_back(static_cast<std::uint8_t>(v));
        });
    }

    c.boundary.resize(max_degree + 1);
    if (augmented) {
        SparseBoundary& eps = c.boundary[0];
        eps.nrows = 1;
        eps.ncols = static_cast<int>(counts[0]);
        eps.colptr.resize(eps.ncols + 1);
        eps.rowidx.assign(counts[0], 0);
        eps.value.assign(counts[0], 1);
        for (long long j = 0; j <= eps.ncols; ++j) eps.colptr[j] = j;
    } else {
        c.boundary[0].nrows = 0;
        c.boundary[0].ncols = static_cast<int>(counts[0]);
        c.boundary[0].colptr.assign(counts[0] + 1, 0);
    }

    for (int n = 1; n <= max_degree; ++n) {
        SparseBoundary& b = c.boundary[n];
        b.nrows = static_cast<int>(counts[n - 1]);
        b.ncols = static_cast<int>(counts[n]);
        long long nnz = counts[n] * (n + 1);
        b.colptr.resize(b.ncols + 1);
        for (long long j = 0; j <= b.ncols; ++j) b.colptr[j] = j * (n + 1);
        b.rowidx.assign(nnz, -1);
        b.value.assign(nnz, 0);
        const auto& lower = c.basis[n - 1];
        const auto& upper = c.basis[n];
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && counts[n] > 4096)
#endif
        for (long long j = 0; j < counts[n]; ++j) {
            const std::uint8_t* t = upper.data() + j * (n + 1);
            std::uint8_t face[8];
            for (int i = 0; i <= n; ++i) {
                int w = 0;
                for (int s = 0; s <= n; ++s)
                    if (s != i) face[w++] = t[s];
                long long row = find_tuple(lower, n, face);
                b.rowidx[j * (n + 1) + i] = static_cast<int>(row);
                b.value[j * (n + 1) + i] = static_cast<signed char>(i % 2 == 0 ? 1 : -1);
            }
        }
        for (long long k = 0; k < nnz; ++k)
            if (b.rowidx[k] < 0) throw input_error("build_complex: missing face");
    }
    return c;
}

FinAbGroup complex_homology(const ChainComplexZ& c, int k, bool parallel) {
    if (k < 0 || k + 1 > c.max_degree)
        throw input_error("complex_homology: degree out of range (need k+1 <= max degree)");
    return homology_of_pair(c.boundary[k], c.boundary[k + 1], parallel);
}

FinAbGroup h1_via_pi1(const FiniteRing& r, const ProjLine& pl) {
    std::vector<int> verts = ge2_classes(r, pl);
    const int nv = static_cast<int>(verts.size());
    std::vector<int> pos(pl.n_classes, -1);
    for (int i = 0; i < nv; ++i) pos[verts[i]] = i;

    // spanning tree: BFS from <e1>, neighbours in ascending class order
    std::vector<int> parent(nv, -2);
    std::queue<int> q;
    int root = pos[pl.inf_class];
    parent[root] = -1;
    q.push(root);
    while (!q.empty()) {
        int i = q.front();
        q.pop();
        for (int j = 0; j < nv; ++j)
            if (pl.generic[verts[i]][verts[j]] && parent[j] == -2) {
                parent[j] = i;
                q.push(j);
            }
    }
    for (int i = 0; i < nv; ++i)
        if (parent[i] == -2) throw input_error("h1_via_pi1: GE2 graph is not connected");

    std::map<std::pair<int, int>, int> edge_gen;  // non-tree edge (i<j) -> generator
    auto is_tree = [&](int i, int j) { return parent[i] == j || parent[j] == i; };
    int ngens = 0;
    for (int i = 0; i < nv; ++i)
        for (int j = i + 1; j < nv; ++j)
            if (pl.generic[verts[i]][verts[j]] && !is_tree(i, j)) edge_gen[{i, j}] = ngens++;

    auto gen_coeff = [&](int i, int j) -> std::pair<int, int> {
        // oriented edge i -> j; tree edges contribute nothing
        int sgn = 1;
        if (i > j) {
            std::swap(i, j);
            sgn = -1;
        }
        auto it = edge_gen.find({i, j});
        if (it == edge_gen.end()) return {-1, 0};
        return {it->second, sgn};
    };

    std::vector<std::map<int, long>> rows;
    for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b) {
            if (!pl.generic[verts[a]][verts[b]]) continue;
            for (int cc = b + 1; cc < nv; ++cc) {
                if (!pl.generic[verts[a]][verts[cc]] || !pl.generic[verts[b]][verts[cc]]) continue;
                std::map<int, long> row;
                for (auto [i, j] : {std::pair{a, b}, std::pair{b, cc}, std::pair{cc, a}}) {
                    auto [g, s] = gen_coeff(i, j);
                    if (g >= 0) row[g] += s;
                }
                std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }

    IntMat rels(static_cast<int>(rows.size()), ngens);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        for (auto& [g, v] : rows[i]) rels.set(i, g, v);
    return fp_group(ngens, rels);
}

NormalizedTuple orbit_normalize(const FiniteRing& r, const ProjLine& pl,
                                const std::vector<int>& tuple) {
    if (!r.is_local())
        throw hypothesis_error("orbit_normalize: normalization is restricted to local rings");
    if (tuple.size() < 3) throw input_error("orbit_normalize: need at least three classes");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!pl.generic[tuple[i]][tuple[j]])
                throw input_error("orbit_normalize: leading triple is not pairwise generic");

    auto [a, c] = pl.reps[tuple[0]];  // u0 = (a, c) as a column
    auto [b, d] = pl.reps[tuple[1]];  // u1
    auto [e, f] = pl.reps[tuple[2]];  // u2
    Mat2 m{a, b, c, d};
    int det = mat_det(r, m);
    int dinv = r.inv(det);
    // (lambda, mu) = M^-1 u2
    Mat2 adj = mat_adj(r, m);
    int lam = r.mul(dinv, r.add(r.mul(adj.a, e), r.mul(adj.b, f)));
    int mu = r.mul(dinv, r.add(r.mul(adj.c, e), r.mul(adj.d, f)));
    if (!r.is_unit(lam) || !r.is_unit(mu))
        throw input_error("orbit_normalize: no normalizer exists for this tuple");
    Mat2 scaled{r.mul(lam, a), r.mul(mu, b), r.mul(lam, c), r.mul(mu, d)};
    Mat2 g = mat_adj(r, scaled);  // inverse up to the unit det, enough in PGL_2

    NormalizedTuple out;
    out.g = g;
    for (int cls : tuple) out.classes.push_back(apply_to_class(r, pl, g, cls));
    if (out.classes[0] != pl.inf_class || out.classes[1] != pl.zero_class ||
        out.classes[2] != pl.finite_class(r.one(), r))
        throw input_error("orbit_normalize: internal check failed");
    for (size_t i = 3; i < out.classes.size(); ++i)
        out.labels.push_back(pl.finite_label(out.classes[i], r));
    return out;
}

OrbitScissors scissors_from_orbits(const FiniteRing& r, const ProjLine& pl) {
    if (!r.is_local()) throw hypothesis_error("scissors_from_orbits: ring must be local");
    if (r.residue_field_order() <= 4)
        throw hypothesis_error(
            "scissors_from_orbits: residue field must have more than 4 elements");
    std::vector<int> w = wedge_set(r);
    if (w.empty()) throw hypothesis_error("scissors_from_orbits: empty symbol set");

    std::vector<int> gen_of(r.order(), -1);
    for (size_t i = 0; i < w.size(); ++i) gen_of[w[i]] = static_cast<int>(i);

    const int one = pl.finite_class(r.one(), r);
    std::vector<std::map<int, long>> rows;
    for (int x : w)
        for (int y : w) {
            if (!r.is_unit(r.sub(x, y))) continue;  // need x/y in W as well
            std::vector<int> t5 = {pl.inf_class, pl.zero_class, one, pl.finite_class(x, r),
                                   pl.finite_class(y, r)};
            std::map<int, long> row;
            for (int i = 0; i <= 4; ++i) {
                std::vector<int> face;
                for (int s = 0; s <= 4; ++s)
                    if (s != i) face.push_back(t5[s]);
                NormalizedTuple nt = orbit_normalize(r, pl, face);
                if (nt.labels.size() != 1 || nt.labels[0] < 0 || gen_of[nt.labels[0]] < 0)
                    throw input_error("scissors_from_orbits: face label outside the symbol set");
                row[gen_of[nt.labels[0]]] += (i % 2 == 0) ? 1 : -1;
            }
            std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
            rows.push_back(std::move(row));
        }

    OrbitScissors out;
    out.gen_labels = w;
    out.pres.ngens = static_cast<int>(w.size());
    out.pres.rels = IntMat(static_cast<int>(rows.size()), out.pres.ngens);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        for (auto& [g, v] : rows[i]) out.pres.rels.set(i, g, v);
    out.canon = canonicalize(out.pres);
    out.group = out.canon.group;
    return out;
}

void dump_complex(const ChainComplexZ& c, const std::string& dir, const std::string& stem) {
    std::filesystem::create_directories(dir);
    for (int n = 0; n <= c.max_degree; ++n) {
        std::ostringstream name;
        name << dir << "/" << stem << "_d" << n << ".mtx";
        write_matrix_market_file(name.str(), c.boundary[n]);
    }
    std::ofstream tf(dir + "/" + stem + "_tuples.txt");
    tf << "# tuples of projective-line class indices, one per line, per degree\n";
    for (int n = 0; n <= c.max_degree; ++n) {
        tf << "degree " << n << " count " << c.basis_count[n] << "\n";
        for (long long j = 0; j < c.basis_count[n]; ++j) {
            for (int s = 0; s <= n; ++s)
                tf << (s ? " " : "") << static_cast<int>(c.basis[n][j * (n + 1) + s]);
            tf << "\n";
        }
    }
}

}  // namespace pgl2hom
