#ifndef SPECINV_INVARIANTS_HPP
#define SPECINV_INVARIANTS_HPP

#include <cassert>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "specinv/polycas.hpp"

namespace specinv {

inline Int double_factorial(int k) {
    // (-1)!! = 1
    Int r = 1;
    for (int v = k; v >= 2; v -= 2) r *= v;
    return r;
}

/// Amplitude recursion driver for the two model Hamiltonians.
///
/// Scalar: p = xi^2/2 + V.  Magnetic: p = (1/2) sum_j (xi_j + a_j)^2 + V under
/// the Coulomb gauge sum_j da_j/dx_j = 0.  For magnetic models every SymPoly
/// is expressed in the sheared momenta eta_j = xi_j + a_j (the xi slots hold
/// eta); then p = eta^2/2 + V and the x-derivative at fixed xi picks up the
/// chain-rule term sum_j (da_j/dx_k) d/deta_j.
class ModelSymbol {
  public:
    enum class Kind { scalar, magnetic };

    ModelSymbol(Kind kind, int dims) : kind_(kind), dims_(dims) {
        if (dims < 1) throw std::invalid_argument("ModelSymbol: dims >= 1");
        cache_.push_back(SymPoly::one(dims));
    }

    Kind kind() const { return kind_; }
    int dims() const { return dims_; }
    bool magnetic() const { return kind_ == Kind::magnetic; }

    /// dp/dxi_k (equals eta_k in the magnetic representation).
    SymPoly p_xi(int k) const { return SymPoly::xi(dims_, k); }

    /// dp/dx_k at fixed xi.
    SymPoly p_x(int k) const {
        std::vector<int> e(dims_, 0);
        e[k] = 1;
        SymPoly r = SymPoly::jet(dims_, JetSymbol::V(e));
        if (magnetic())
            for (int j = 0; j < dims_; ++j)
                r += SymPoly::xi(dims_, j) * SymPoly::jet(dims_, JetSymbol::a(j, e));
        return r;
    }

    /// d/dx_k at fixed xi, acting on a polynomial in the model's variables.
    SymPoly dx(const SymPoly& b, int k) const {
        SymPoly r = b.formal_dx(k);
        if (magnetic()) {
            std::vector<int> e(dims_, 0);
            e[k] = 1;
            for (int j = 0; j < dims_; ++j)
                r += SymPoly::jet(dims_, JetSymbol::a(j, e)) * b.xi_partial(j);
        }
        return r;
    }

    /// (d/dx_k + i t dp/dx_k) b
    SymPoly conj_deriv(const SymPoly& b, int k) const {
        return dx(b, k) +
               SymPoly::t(dims_).scaled(GaussRat::i()) * p_x(k) * b;
    }

    /// (1/alpha!) prod_k (d/dx_k + i t dp/dx_k)^{alpha_k} b
    SymPoly q_alpha(const std::vector<int>& alpha, const SymPoly& b) const {
        if (int(alpha.size()) != dims_) throw std::invalid_argument("q_alpha: alpha size");
        SymPoly r = b;
        Int fact = 1;
        for (int k = 0; k < dims_; ++k)
            for (int p = 0; p < alpha[k]; ++p) {
                r = conj_deriv(r, k);
                fact *= p + 1;
            }
        return r.scaled(GaussRat(Rat(Int(1), fact)));
    }

    /// b_m from the t-integrated iteration; b_0 = 1, b_m(.,0) = 0.
    const SymPoly& compute_b(int m) const {
        if (m < 0) throw std::invalid_argument("compute_b: m >= 0");
        while (int(cache_.size()) <= m) {
            int cur = int(cache_.size());
            SymPoly rhs(dims_);
            for (int k = 0; k < dims_; ++k) {
                rhs += p_xi(k) * conj_deriv(cache_[cur - 1], k);
                if (cur >= 2)
                    rhs -= conj_deriv(conj_deriv(cache_[cur - 2], k), k)
                               .scaled(GaussRat(Rat(1, 2)) * GaussRat::i());
            }
            cache_.push_back(rhs.integrate_t());
        }
        return cache_[m];
    }

  private:
    Kind kind_;
    int dims_;
    mutable std::vector<SymPoly> cache_;
};

/// Shape assertions on scalar amplitudes: t-degree window, jet-order sum,
/// xi-parity, and the monomial bookkeeping of the closed-form expansion.
inline void structure_check(const SymPoly& b, int m) {
    if (m == 0) {
        if (!(b == SymPoly::one(b.dims()))) throw std::runtime_error("structure: b0 != 1");
        return;
    }
    int half_up = (m + 1) / 2;
    int tmin_expected = half_up + 1;
    int tmin = 1 << 30;
    for (const auto& [mon, c] : b.terms()) {
        tmin = std::min(tmin, mon.t_pow);
        if (mon.t_pow > 2 * m)
            throw std::runtime_error("structure: t-degree above 2m");
        if (mon.jet_order_sum() != m)
            throw std::runtime_error("structure: jet order sum != m");
        if (mon.xi_degree() % 2 != m % 2)
            throw std::runtime_error("structure: xi parity mismatch");
        int nxi = mon.xi_degree() / 2;
        if (nxi + int(mon.jets.size()) != mon.t_pow - half_up)
            throw std::runtime_error("structure: t/xi/jet count relation violated");
        int l = mon.t_pow - m;
        if (l >= 0) {
            int first_order = 0;
            for (const auto& j : mon.jets)
                if (j.total_order() == 1) ++first_order;
            if (mon.xi_degree() + first_order < 2 * l - 1)
                throw std::runtime_error("structure: low-degree bound violated");
        }
    }
    if (tmin != tmin_expected)
        throw std::runtime_error("structure: minimal t-degree != " + std::to_string(tmin_expected));
}

/// Integrand against derivatives of the test function: order l maps to the
/// t-free polynomial multiplying f^(l)(xi^2/2 + V).
struct IntegrandForm {
    int dims = 1;
    std::map<int, SymPoly> by_order;

    IntegrandForm() = default;
    explicit IntegrandForm(int d) : dims(d) {}

    void add(int order, const SymPoly& p) {
        if (p.is_zero()) return;
        auto it = by_order.find(order);
        if (it == by_order.end()) by_order.emplace(order, p);
        else {
            it->second += p;
            if (it->second.is_zero()) by_order.erase(it);
        }
    }
    bool is_zero() const { return by_order.empty(); }

    friend bool operator==(const IntegrandForm& a, const IntegrandForm& b) {
        return a.dims == b.dims && a.by_order == b.by_order;
    }

    bool all_real() const {
        for (const auto& [l, p] : by_order)
            for (const auto& [mon, c] : p.terms())
                if (!c.is_real()) return false;
        return true;
    }

    std::string str() const {
        if (by_order.empty()) return "0";
        std::string s;
        for (const auto& [l, p] : by_order) {
            if (!s.empty()) s += "\n";
            s += "f^(" + std::to_string(l) + "): " + p.str();
        }
        return s;
    }
};

/// t^l becomes the factor 1/i^l attached to f-derivative order l.
inline IntegrandForm to_integrand(const SymPoly& b) {
    IntegrandForm g(b.dims());
    for (int l = 0; l <= b.t_degree(); ++l) {
        SymPoly c = b.t_coefficient(l);
        if (!c.is_zero()) g.add(l, c.scaled(GaussRat::i_pow(-l)));
    }
    return g;
}

/// Monomials odd in some xi_k integrate to zero against f(xi^2/2+V).
inline IntegrandForm drop_odd_xi(const IntegrandForm& g) {
    IntegrandForm r(g.dims);
    for (const auto& [l, p] : g.by_order) {
        SymPoly q(g.dims);
        for (const auto& [mon, c] : p.terms())
            if (!mon.has_odd_xi()) q.add_term(mon, c);
        r.add(l, q);
    }
    return r;
}

/// Repeated xi-IBP: prod_k xi_k^{2a_k} A f^(l) -> (-1)^{sum a} prod (2a_k-1)!! A f^(l - sum a).
inline IntegrandForm eliminate_xi(const IntegrandForm& g) {
    IntegrandForm r(g.dims);
    for (const auto& [l, p] : g.by_order)
        for (const auto& [mon, c] : p.terms()) {
            if (mon.has_odd_xi()) throw std::logic_error("eliminate_xi: odd xi power");
            int drop = 0;
            Int w = 1;
            for (int e : mon.xi) {
                drop += e / 2;
                w *= double_factorial(e - 1);
            }
            SymMonomial nm = mon;
            std::fill(nm.xi.begin(), nm.xi.end(), 0);
            GaussRat nc = c * GaussRat(Rat(w));
            if (drop % 2) nc = -nc;
            SymPoly q(g.dims);
            q.add_term(std::move(nm), nc);
            r.add(l - drop, q);
        }
    return r;
}

/// Coulomb gauge as a substitution: a_n^{(gamma)} with gamma_n >= 1 (n the
/// last component) is replaced by -sum_{j != n} a_j^{(gamma - e_n + e_j)}.
inline bool coulomb_forbidden(const JetSymbol& j, int dims) {
    return !j.is_potential() && j.target == dims - 1 && j.orders[dims - 1] >= 1;
}

inline SymPoly coulomb_reduce(const SymPoly& p) {
    int dims = p.dims();
    if (dims == 1) return p;
    bool clean = true;
    for (const auto& [mon, c] : p.terms())
        for (const auto& j : mon.jets)
            if (coulomb_forbidden(j, dims)) { clean = false; break; }
    if (clean) return p;
    SymPoly r(dims);
    for (const auto& [mon, c] : p.terms()) {
        size_t bad = mon.jets.size();
        for (size_t i = 0; i < mon.jets.size(); ++i)
            if (coulomb_forbidden(mon.jets[i], dims)) { bad = i; break; }
        if (bad == mon.jets.size()) {
            r.add_term(mon, c);
            continue;
        }
        JetSymbol j = mon.jets[bad];
        SymMonomial rest = mon;
        rest.jets.erase(rest.jets.begin() + bad);
        for (int jj = 0; jj < dims - 1; ++jj) {
            JetSymbol sub = j;
            sub.target = jj;
            sub.orders[dims - 1] -= 1;
            sub.orders[jj] += 1;
            SymMonomial nm = rest;
            nm.jets.push_back(sub);
            SymPoly q(dims);
            q.add_term(std::move(nm), -c);
            r += coulomb_reduce(q);
        }
    }
    return r;
}

inline IntegrandForm coulomb_reduce(const IntegrandForm& g) {
    IntegrandForm r(g.dims);
    for (const auto& [l, p] : g.by_order) r.add(l, coulomb_reduce(p));
    return r;
}

namespace detail {

/// xi-free integrand term: a jet multiset at an f-derivative order.
struct JTerm {
    std::vector<JetSymbol> jets;  // sorted
    int l = 0;

    friend bool operator<(const JTerm& a, const JTerm& b) {
        if (a.l != b.l) return a.l < b.l;
        return a.jets < b.jets;
    }
    friend bool operator==(const JTerm& a, const JTerm& b) {
        return a.l == b.l && a.jets == b.jets;
    }
};

inline int jet_sum(const std::vector<JetSymbol>& jets) {
    int s = 0;
    for (const auto& j : jets) s += j.total_order();
    return s;
}
inline int a_count(const std::vector<JetSymbol>& jets) {
    int c = 0;
    for (const auto& j : jets)
        if (!j.is_potential()) ++c;
    return c;
}

/// Elimination priority: the largest term is rewritten first.  Terms with a
/// higher maximal jet order go first; among equal maxima, fewer factors at
/// the maximum go first; ties broken on the descending order profile and
/// finally on the full jet multiset for determinism.
inline bool pivot_less(const JTerm& a, const JTerm& b) {
    auto profile = [](const JTerm& t) {
        std::vector<int> p;
        for (const auto& j : t.jets) p.push_back(j.total_order());
        std::sort(p.rbegin(), p.rend());
        return p;
    };
    std::vector<int> pa = profile(a), pb = profile(b);
    int ma = pa.empty() ? 0 : pa[0], mb = pb.empty() ? 0 : pb[0];
    if (ma != mb) return ma < mb;
    int ca = std::count(pa.begin(), pa.end(), ma);
    int cb = std::count(pb.begin(), pb.end(), mb);
    if (ca != cb) return ca > cb;  // fewer at max = larger
    if (pa != pb) return pa < pb;
    if (a.l != b.l) return a.l > b.l;  // lower f-order = larger
    return a.jets < b.jets;
}

using Row = std::map<JTerm, GaussRat>;

inline void row_axpy(Row& dst, const GaussRat& s, const Row& src) {
    for (const auto& [t, c] : src) {
        auto it = dst.find(t);
        if (it == dst.end()) {
            GaussRat v = s * c;
            if (!v.is_zero()) dst.emplace(t, v);
        } else {
            it->second += s * c;
            if (it->second.is_zero()) dst.erase(it);
        }
    }
}

inline JTerm row_pivot(const Row& r) {
    auto it = r.begin();
    JTerm best = it->first;
    for (++it; it != r.end(); ++it)
        if (pivot_less(best, it->first)) best = it->first;
    return best;
}

/// Multiindices of total order d over n slots.
inline std::vector<std::vector<int>> multiindices(int n, int d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    auto rec = [&](auto&& self, int slot, int left) -> void {
        if (slot == n - 1) {
            cur[slot] = left;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[slot] = v;
            self(self, slot + 1, left - v);
        }
    };
    rec(rec, 0, d);
    return out;
}

/// All single jets of total order d allowed after Coulomb reduction.
inline std::vector<JetSymbol> jets_of_order(const ModelSymbol& model, int d) {
    std::vector<JetSymbol> out;
    int n = model.dims();
    for (auto& mi : multiindices(n, d)) out.push_back(JetSymbol::V(mi));
    if (model.magnetic())
        for (int j = 0; j < n; ++j)
            for (auto& mi : multiindices(n, d)) {
                JetSymbol jet = JetSymbol::a(j, mi);
                if (!coulomb_forbidden(jet, n)) out.push_back(jet);
            }
    return out;
}

/// Multisets of allowed jets (each of order >= 1) with prescribed total
/// order sum and a-jet count.
inline std::vector<std::vector<JetSymbol>> jet_multisets(const ModelSymbol& model, int sum,
                                                         int acount) {
    std::vector<JetSymbol> pool;
    for (int d = 1; d <= sum; ++d)
        for (auto& j : jets_of_order(model, d)) pool.push_back(j);
    std::vector<std::vector<JetSymbol>> out;
    std::vector<JetSymbol> cur;
    auto rec = [&](auto&& self, size_t from, int left, int aleft) -> void {
        if (left == 0) {
            if (aleft == 0) out.push_back(cur);
            return;
        }
        for (size_t i = from; i < pool.size(); ++i) {
            const auto& j = pool[i];
            int na = aleft - (j.is_potential() ? 0 : 1);
            if (j.total_order() > left || na < 0) continue;
            cur.push_back(j);
            self(self, i, left - j.total_order(), na);
            cur.pop_back();
        }
    };
    rec(rec, 0, sum, acount);
    return out;
}

}  // namespace detail

/// Canonical representative modulo the x-space IBP relations
/// int d/dx_k(N) f^(l) = -int N dV/dx_k f^(l+1): exact Gaussian elimination
/// within each conserved grade (jet order sum, l - factor count, a-count).
inline IntegrandForm ibp_jet_normalize(const IntegrandForm& g, const ModelSymbol& model) {
    using namespace detail;
    int dims = g.dims;
    std::map<std::tuple<int, int, int>, Row> groups;
    for (const auto& [l, p] : g.by_order)
        for (const auto& [mon, c] : p.terms()) {
            if (mon.xi_degree() != 0 || mon.t_pow != 0)
                throw std::logic_error("ibp_jet_normalize: expects xi-free t-free input");
            JTerm t{mon.jets, l};
            auto key = std::make_tuple(jet_sum(mon.jets), l - int(mon.jets.size()),
                                       a_count(mon.jets));
            auto& row = groups[key];
            row[t] += c;
            if (row[t].is_zero()) row.erase(t);
        }

    IntegrandForm out(dims);
    for (auto& [key, vec] : groups) {
        auto [m, cgrade, acnt] = key;
        // build relation rows
        std::vector<Row> rels;
        if (m >= 1)
            for (auto& M : jet_multisets(model, m - 1, acnt))
                for (int k = 0; k < dims; ++k) {
                    Row row;
                    int l0 = int(M.size()) + cgrade;
                    // d/dx_k of the product, Coulomb-reduced
                    SymPoly dprod(dims);
                    {
                        SymMonomial base{0, std::vector<int>(dims, 0), M};
                        base.canonicalize();
                        SymPoly prod(dims);
                        prod.add_term(base, GaussRat(1));
                        dprod = coulomb_reduce(prod.formal_dx(k));
                    }
                    for (const auto& [mon, c] : dprod.terms()) {
                        JTerm t{mon.jets, l0};
                        row[t] += c;
                        if (row[t].is_zero()) row.erase(t);
                    }
                    // + N dV/dx_k at order l0+1
                    {
                        std::vector<int> e(dims, 0);
                        e[k] = 1;
                        std::vector<JetSymbol> jets = M;
                        jets.push_back(JetSymbol::V(e));
                        std::sort(jets.begin(), jets.end());
                        JTerm t{std::move(jets), l0 + 1};
                        row[t] += GaussRat(1);
                        if (row[t].is_zero()) row.erase(t);
                    }
                    if (!row.empty()) rels.push_back(std::move(row));
                }
        // exact RREF over the relation rows
        std::vector<std::pair<JTerm, Row>> echelon;
        for (auto& row : rels) {
            Row r = std::move(row);
            bool again = true;
            while (again && !r.empty()) {
                again = false;
                for (auto& [ep, er] : echelon) {
                    auto it = r.find(ep);
                    if (it != r.end()) {
                        row_axpy(r, -it->second, er);
                        again = true;
                    }
                }
            }
            if (r.empty()) continue;
            JTerm piv = row_pivot(r);
            GaussRat inv = GaussRat(1) / r.at(piv);
            Row norm;
            for (auto& [t, c] : r) norm[t] = c * inv;
            for (auto& [ep, er] : echelon) {
                auto it = er.find(piv);
                if (it != er.end()) row_axpy(er, -it->second, norm);
            }
            echelon.emplace_back(piv, std::move(norm));
        }
        // reduce the integrand vector
        Row v = std::move(vec);
        for (auto& [ep, er] : echelon) {
            auto it = v.find(ep);
            if (it != v.end()) row_axpy(v, -it->second, er);
        }
        for (auto& [t, c] : v) {
            SymPoly q(dims);
            SymMonomial mon{0, std::vector<int>(dims, 0), t.jets};
            mon.canonicalize();
            q.add_term(std::move(mon), c);
            out.add(t.l, q);
        }
    }
    return out;
}

/// Full normalization pipeline; the result is xi-free and canonical.
inline IntegrandForm ibp_normalize(const IntegrandForm& g, const ModelSymbol& model) {
    return ibp_jet_normalize(coulomb_reduce(eliminate_xi(drop_odd_xi(g))), model);
}

inline bool ibp_equivalent_symbolic(const IntegrandForm& g1, const IntegrandForm& g2,
                                    const ModelSymbol& model) {
    return ibp_normalize(g1, model) == ibp_normalize(g2, model);
}

/// Reverse IBP1 step lowering the f-order of a term that carries a factor
/// dV/dx_k: X dV/dx_k f^(l) -> -d/dx_k(X) f^(l-1).  Applied while `pred(l)`
/// holds; used for the low-derivative presentations of the invariants.
template <class Pred>
inline IntegrandForm lower_while(const IntegrandForm& g, Pred pred) {
    IntegrandForm cur = g;
    bool changed = true;
    while (changed) {
        changed = false;
        IntegrandForm next(cur.dims);
        for (const auto& [l, p] : cur.by_order)
            for (const auto& [mon, c] : p.terms()) {
                size_t grad = mon.jets.size();
                if (pred(l))
                    for (size_t i = 0; i < mon.jets.size(); ++i)
                        if (mon.jets[i].is_potential() && mon.jets[i].total_order() == 1) {
                            grad = i;
                            break;
                        }
                SymPoly q(cur.dims);
                if (grad == mon.jets.size()) {
                    q.add_term(mon, c);
                    next.add(l, q);
                    continue;
                }
                int k = 0;
                while (mon.jets[grad].orders[k] == 0) ++k;
                SymMonomial rest = mon;
                rest.jets.erase(rest.jets.begin() + grad);
                SymPoly x(cur.dims);
                x.add_term(rest, -c);
                next.add(l - 1, x.formal_dx(k));
                changed = true;
            }
        cur = std::move(next);
    }
    return cur;
}

/// Inverse of eliminate_xi in 1-D: raise every term to a common f-order q
/// by restoring the xi powers, A f^(l) -> (-1)^(q-l)/(2(q-l)-1)!! xi^{2(q-l)} A f^(q).
inline IntegrandForm raise_uniform(const IntegrandForm& g, int q) {
    if (g.dims != 1) throw std::invalid_argument("raise_uniform: 1-D only");
    IntegrandForm r(1);
    for (const auto& [l, p] : g.by_order) {
        if (l > q) throw std::invalid_argument("raise_uniform: target order too low");
        int a = q - l;
        GaussRat w(Rat(Int(1), double_factorial(2 * a - 1)));
        if (a % 2) w = -w;
        SymPoly q2(1);
        for (const auto& [mon, c] : p.terms()) {
            SymMonomial nm = mon;
            nm.xi[0] += 2 * a;
            q2.add_term(std::move(nm), c * w);
        }
        r.add(q, q2);
    }
    return r;
}

}  // namespace specinv

#endif
