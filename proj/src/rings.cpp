#include "pgl2hom/rings.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pgl2hom/errors.hpp"

namespace pgl2hom {

FiniteRing::FiniteRing(int n, std::vector<int> add_table, std::vector<int> mul_table,
                       std::string spec)
    : n_(n), add_(std::move(add_table)), mul_(std::move(mul_table)), spec_(std::move(spec)) {
    if (n <= 0) throw input_error("ring order must be positive");
    if (add_.size() != static_cast<size_t>(n) * n || mul_.size() != static_cast<size_t>(n) * n)
        throw input_error("ring tables have the wrong size");

    // identity element
    for (int e = 0; e < n_; ++e) {
        bool ok = true;
        for (int a = 0; a < n_ && ok; ++a) ok = mul(e, a) == a;
        if (ok) {
            one_ = e;
            break;
        }
    }
    if (one_ < 0) throw input_error("tables define no multiplicative identity");
    if (n_ > 1 && one_ == 0) throw input_error("zero equals one in a ring of order > 1");

    neg_.assign(n_, -1);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (add(a, b) == 0) neg_[a] = b;
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            if (mul(a, b) == one_) inv_[a] = b;
    unit_pos_.assign(n_, -1);
    for (int a = 0; a < n_; ++a)
        if (inv_[a] >= 0) {
            unit_pos_[a] = static_cast<int>(units_.size());
            units_.push_back(a);
        }

    characteristic_ = 1;
    int acc = one_;
    while (acc != 0) {
        acc = add(acc, one_);
        ++characteristic_;
        if (characteristic_ > n_) throw input_error("additive order of 1 exceeds ring order");
    }
    if (n_ == 1) characteristic_ = 1;

    local_ = true;
    for (int a = 0; a < n_ && local_; ++a) {
        if (is_unit(a)) continue;
        for (int b = 0; b < n_; ++b)
            if (!is_unit(b) && is_unit(add(a, b))) {
                local_ = false;
                break;
            }
    }
}

int FiniteRing::inv(int a) const {
    if (inv_[a] < 0) throw input_error("inverse of a non-unit");
    return inv_[a];
}

int FiniteRing::pow(int a, long e) const {
    if (e < 0) {
        a = inv(a);
        e = -e;
    }
    int acc = one_;
    while (e > 0) {
        if (e & 1) acc = mul(acc, a);
        a = mul(a, a);
        e >>= 1;
    }
    return acc;
}

int FiniteRing::residue_field_order() const {
    if (!local_) throw hypothesis_error("residue_field_order: ring is not local");
    int nonunits = n_ - static_cast<int>(units_.size());
    if (nonunits == 0) return n_;  // zero ring
    return n_ / nonunits;
}

std::vector<int> FiniteRing::semisimple_residue_orders() const {
    // nilradical = Jacobson radical for a finite commutative ring
    std::vector<char> nil(n_, 0);
    for (int a = 0; a < n_; ++a) {
        int p = a;
        for (int i = 0; i < n_ + 1; ++i) {
            if (p == 0) {
                nil[a] = 1;
                break;
            }
            p = mul(p, a);
        }
    }
    // quotient A/J
    std::vector<int> cls(n_, -1);
    std::vector<int> reps;
    for (int a = 0; a < n_; ++a) {
        if (cls[a] >= 0) continue;
        int id = static_cast<int>(reps.size());
        reps.push_back(a);
        for (int b = a; b < n_; ++b)
            if (cls[b] < 0 && nil[sub(a, b)]) cls[b] = id;
    }
    int m = static_cast<int>(reps.size());
    auto qmul = [&](int x, int y) { return cls[mul(reps[x], reps[y])]; };
    int qone = cls[one_];
    // idempotents of A/J
    std::vector<int> idem;
    for (int e = 0; e < m; ++e)
        if (qmul(e, e) == e) idem.push_back(e);
    std::vector<int> out;
    for (int e : idem) {
        if (e == cls[0]) continue;
        bool primitive = true;
        for (int f : idem)
            if (f != cls[0] && f != e && qmul(f, e) == f) {
                primitive = false;
                break;
            }
        if (!primitive) continue;
        std::vector<char> seen(m, 0);
        int cnt = 0;
        for (int x = 0; x < m; ++x) {
            int y = qmul(e, x);
            if (!seen[y]) {
                seen[y] = 1;
                ++cnt;
            }
        }
        out.push_back(cnt);
        (void)qone;
    }
    std::sort(out.begin(), out.end());
    long long prod = 1;
    for (int s : out) prod *= s;
    if (prod != m) throw input_error("internal: residue factorisation does not multiply up");
    return out;
}

namespace {

void check_cutoff(long long n, int cutoff) {
    if (n < 1) throw input_error("ring order must be at least 1");
    if (n > cutoff) {
        std::ostringstream os;
        os << "ring order " << n << " exceeds the cutoff " << cutoff;
        throw input_error(os.str());
    }
}

}  // namespace

FiniteRing make_zmod(int n, int cutoff) {
    check_cutoff(n, cutoff);
    std::vector<int> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            add[static_cast<size_t>(a) * n + b] = (a + b) % n;
            mul[static_cast<size_t>(a) * n + b] = static_cast<int>((1LL * a * b) % n);
        }
    return FiniteRing(n, std::move(add), std::move(mul), "zmod:" + std::to_string(n));
}

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

using Poly = std::vector<int>;  // ascending coefficients mod p

Poly poly_trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_mod(Poly a, const Poly& f, int p) {
    // f monic
    a = poly_trim(std::move(a));
    int k = static_cast<int>(f.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= k) {
        int d = static_cast<int>(a.size()) - 1;
        int c = a[d];
        if (c != 0)
            for (int i = 0; i <= k; ++i) {
                int& t = a[d - k + i];
                t = ((t - c * f[i]) % p + p) % p;
            }
        a = poly_trim(std::move(a));
        if (static_cast<int>(a.size()) - 1 < k) break;
    }
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return poly_trim(std::move(c));
}

std::string poly_str(const Poly& f) {
    std::ostringstream os;
    for (size_t i = 0; i < f.size(); ++i) {
        if (i) os << ",";
        os << f[i];
    }
    return os.str();
}

/// Finds a monic factor of degree 1..deg(f)/2, or empty if irreducible.
Poly find_monic_factor(const Poly& f, int p) {
    int k = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= k; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long t = 0; t < count; ++t) {
            Poly g(d + 1, 0);
            long long x = t;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<int>(x % p);
                x /= p;
            }
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) return g;
        }
    }
    return {};
}

Poly default_irreducible(int p, int k) {
    if (k == 1) return {0, 1};  // x; any monic degree-1 works, arithmetic is plain F_p
    long long count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    // lexicographic on the ascending coefficient list (c0 most significant)
    for (long long t = 0; t < count; ++t) {
        Poly f(k + 1, 0);
        long long x = t;
        for (int i = k - 1; i >= 0; --i) {
            f[i] = static_cast<int>(x % p);
            x /= p;
        }
        f[k] = 1;
        if (find_monic_factor(f, p).empty()) return f;
    }
    throw input_error("no irreducible polynomial found");  // unreachable
}

}  // namespace

FiniteRing make_galois_field(int p, int k, const std::optional<std::vector<int>>& poly,
                             int cutoff) {
    if (!is_prime(p)) throw input_error("gf: " + std::to_string(p) + " is not prime");
    if (k < 1) throw input_error("gf: extension degree must be positive");
    long long q = 1;
    for (int i = 0; i < k; ++i) {
        q *= p;
        check_cutoff(q, cutoff);
    }
    Poly f;
    bool custom = false;
    if (poly) {
        f = *poly;
        if (static_cast<int>(f.size()) != k + 1 || f[k] != 1)
            throw input_error("gf: modulus must be monic of degree k (ascending coefficients)");
        for (int& c : f) c = ((c % p) + p) % p;
        if (k >= 2) {
            Poly factor = find_monic_factor(f, p);
            if (!factor.empty())
                throw input_error("gf: modulus is reducible, divisible by the monic factor with ascending coefficients " +
                                  poly_str(factor));
        }
        custom = (f != default_irreducible(p, k));
    } else {
        f = default_irreducible(p, k);
    }

    int n = static_cast<int>(q);
    auto decode = [&](int idx) {
        Poly e(k, 0);
        for (int i = 0; i < k; ++i) {
            e[i] = idx % p;
            idx /= p;
        }
        return e;
    };
    auto encode = [&](const Poly& e) {
        int idx = 0;
        for (int i = k - 1; i >= 0; --i) idx = idx * p + (i < static_cast<int>(e.size()) ? e[i] : 0);
        return idx;
    };
    std::vector<int> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        Poly ea = decode(a);
        for (int b = 0; b < n; ++b) {
            Poly eb = decode(b);
            Poly s(k, 0);
            for (int i = 0; i < k; ++i) s[i] = (ea[i] + eb[i]) % p;
            add[static_cast<size_t>(a) * n + b] = encode(s);
            mul[static_cast<size_t>(a) * n + b] = encode(poly_mod(poly_mul(ea, eb, p), f, p));
        }
    }
    std::string spec = "gf:" + std::to_string(p) + "^" + std::to_string(k);
    if (custom) spec += ":poly=" + poly_str(f);
    return FiniteRing(n, std::move(add), std::move(mul), spec);
}

FiniteRing make_product(const FiniteRing& r, const FiniteRing& s, int cutoff) {
    long long n = static_cast<long long>(r.order()) * s.order();
    check_cutoff(n, cutoff);
    int nr = r.order(), ns = s.order(), nn = static_cast<int>(n);
    std::vector<int> add(static_cast<size_t>(nn) * nn), mul(static_cast<size_t>(nn) * nn);
    for (int a = 0; a < nn; ++a)
        for (int b = 0; b < nn; ++b) {
            int a1 = a / ns, a2 = a % ns, b1 = b / ns, b2 = b % ns;
            add[static_cast<size_t>(a) * nn + b] = r.add(a1, b1) * ns + s.add(a2, b2);
            mul[static_cast<size_t>(a) * nn + b] = r.mul(a1, b1) * ns + s.mul(a2, b2);
        }
    (void)nr;
    return FiniteRing(nn, std::move(add), std::move(mul),
                      "prod:" + r.spec_string() + "+" + s.spec_string());
}

FiniteRing make_dual(const FiniteRing& r, int cutoff) {
    long long n = static_cast<long long>(r.order()) * r.order();
    check_cutoff(n, cutoff);
    int m = r.order(), nn = static_cast<int>(n);
    std::vector<int> add(static_cast<size_t>(nn) * nn), mul(static_cast<size_t>(nn) * nn);
    for (int x = 0; x < nn; ++x)
        for (int y = 0; y < nn; ++y) {
            int a = x / m, b = x % m, c = y / m, d = y % m;
            add[static_cast<size_t>(x) * nn + y] = r.add(a, c) * m + r.add(b, d);
            mul[static_cast<size_t>(x) * nn + y] =
                r.mul(a, c) * m + r.add(r.mul(a, d), r.mul(b, c));
        }
    return FiniteRing(nn, std::move(add), std::move(mul), "dual:" + r.spec_string());
}

namespace {

FiniteRing parse_spec_impl(const std::string& spec, int cutoff) {
    if (spec.rfind("zmod:", 0) == 0) {
        const std::string num = spec.substr(5);
        size_t pos = 0;
        int n = 0;
        try {
            n = std::stoi(num, &pos);
        } catch (...) {
            throw input_error("bad ring spec token: '" + spec + "'");
        }
        if (pos != num.size()) throw input_error("bad ring spec token: '" + spec + "'");
        return make_zmod(n, cutoff);
    }
    if (spec.rfind("gf:", 0) == 0) {
        std::string body = spec.substr(3);
        std::optional<std::vector<int>> poly;
        size_t colon = body.find(':');
        if (colon != std::string::npos) {
            std::string polypart = body.substr(colon + 1);
            body = body.substr(0, colon);
            if (polypart.rfind("poly=", 0) != 0)
                throw input_error("bad ring spec token: '" + spec + "'");
            std::vector<int> coeffs;
            std::istringstream is(polypart.substr(5));
            std::string item;
            while (std::getline(is, item, ','))
                try {
                    coeffs.push_back(std::stoi(item));
                } catch (...) {
                    throw input_error("bad ring spec token: '" + spec + "'");
                }
            poly = coeffs;
        }
        size_t caret = body.find('^');
        if (caret == std::string::npos) throw input_error("bad ring spec token: '" + spec + "'");
        int p, k;
        try {
            p = std::stoi(body.substr(0, caret));
            k = std::stoi(body.substr(caret + 1));
        } catch (...) {
            throw input_error("bad ring spec token: '" + spec + "'");
        }
        return make_galois_field(p, k, poly, cutoff);
    }
    if (spec.rfind("dual:", 0) == 0) return make_dual(parse_spec_impl(spec.substr(5), cutoff), cutoff);
    if (spec.rfind("prod:", 0) == 0) {
        std::string body = spec.substr(5);
        size_t plus = body.find('+');
        if (plus == std::string::npos)
            throw input_error("prod spec needs two '+'-separated operands: '" + spec + "'");
        return make_product(parse_spec_impl(body.substr(0, plus), cutoff),
                            parse_spec_impl(body.substr(plus + 1), cutoff), cutoff);
    }
    throw input_error("bad ring spec token: '" + spec + "'");
}

}  // namespace

FiniteRing parse_ring_spec(const std::string& spec, int cutoff) {
    return parse_spec_impl(spec, cutoff);
}

UnitGroupData unit_group(const FiniteRing& r) {
    const auto& units = r.units();
    const int m = static_cast<int>(units.size());
    AbelianDecomposition d = decompose_abelian_table(
        m, [&](int x, int y) { return r.unit_position(r.mul(units[x], units[y])); },
        r.unit_position(r.one()));
    UnitGroupData out;
    out.group = d.group;
    for (int pos : d.gens) out.gens.push_back(units[pos]);
    out.log = std::move(d.log);
    return out;
}

std::vector<int> wedge_set(const FiniteRing& r) {
    std::vector<int> w;
    for (int a = 0; a < r.order(); ++a) {
        int oneminus = r.sub(r.one(), a);
        if (r.is_unit(r.mul(a, oneminus))) w.push_back(a);
    }
    return w;
}

FinAbGroup coinvariants_units(const FiniteRing& r) {
    const int n = r.order();
    std::vector<std::vector<std::pair<int, long>>> rows;
    rows.push_back({{0, 1}});  // the zero element is the identity
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            int c = r.add(a, b);
            std::vector<std::pair<int, long>> row;
            auto bump = [&](int g, long v) {
                for (auto& [gg, vv] : row)
                    if (gg == g) {
                        vv += v;
                        return;
                    }
                row.push_back({g, v});
            };
            bump(a, 1);
            bump(b, 1);
            bump(c, -1);
            rows.push_back(std::move(row));
        }
    for (int u : r.units()) rows.push_back({{r.sub(u, r.one()), 1}});
    IntMat rels(static_cast<int>(rows.size()), n);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
        for (auto& [c, v] : rows[i]) rels.add(i, c, v);
    return fp_group(n, rels);
}

FinAbGroup square_class_group(const FiniteRing& r) {
    UnitGroupData u = unit_group(r);
    const int k = static_cast<int>(u.group.factors.size());
    IntMat rels(2 * k, k);
    for (int i = 0; i < k; ++i) {
        rels.set(i, i, u.group.factors[i]);
        rels.set(k + i, i, 2);
    }
    return fp_group(k, rels);
}

std::vector<int> mu2_elements(const FiniteRing& r) {
    std::vector<int> out;
    for (int u : r.units())
        if (r.mul(u, u) == r.one()) out.push_back(u);
    return out;
}

FinAbGroup mu2(const FiniteRing& r) {
    size_t cnt = mu2_elements(r).size();
    FinAbGroup g;
    while (cnt > 1) {
        if (cnt % 2 != 0) throw input_error("internal: 2-torsion count not a power of two");
        g.factors.push_back(2);
        cnt /= 2;
    }
    return g;
}

bool verify_ring_axioms(const FiniteRing& r, std::string* why) {
    const int n = r.order();
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (int a = 0; a < n; ++a) {
        if (r.add(a, 0) != a) return fail("additive identity fails");
        if (r.mul(a, r.one()) != a) return fail("multiplicative identity fails");
        if (r.add(a, r.neg(a)) != 0) return fail("negation fails");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (r.add(a, b) != r.add(b, a)) return fail("addition not commutative");
            if (r.mul(a, b) != r.mul(b, a)) return fail("multiplication not commutative");
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)))
                    return fail("addition not associative");
                if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
                    return fail("multiplication not associative");
                if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
                    return fail("distributivity fails");
            }
    for (int u : r.units()) {
        if (!r.is_unit(r.inv(u))) return fail("unit inverse not a unit");
        for (int v : r.units())
            if (!r.is_unit(r.mul(u, v))) return fail("units not closed under product");
    }
    if (n > 1 && r.zero() == r.one()) return fail("zero equals one");
    return true;
}

}  // namespace pgl2hom
