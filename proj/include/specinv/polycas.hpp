#ifndef SPECINV_POLYCAS_HPP
#define SPECINV_POLYCAS_HPP

#include <algorithm>
#include <complex>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "specinv/rational.hpp"

namespace specinv {

/// Formal derivative symbol: V or a magnetic component a_j, differentiated
/// by the multiindex `orders` (one slot per space variable).
struct JetSymbol {
    int target = -1;          // -1 => V, j >= 0 => a_j
    std::vector<int> orders;  // length = dims

    int total_order() const {
        int s = 0;
        for (int o : orders) s += o;
        return s;
    }
    bool is_potential() const { return target < 0; }

    friend bool operator==(const JetSymbol& a, const JetSymbol& b) {
        return a.target == b.target && a.orders == b.orders;
    }
    friend bool operator<(const JetSymbol& a, const JetSymbol& b) {
        if (a.target != b.target) return a.target < b.target;
        return a.orders < b.orders;
    }

    static JetSymbol V(std::vector<int> orders) { return {-1, std::move(orders)}; }
    static JetSymbol V1(int order) { return {-1, {order}}; }  // 1-D shorthand
    static JetSymbol a(int j, std::vector<int> orders) { return {j, std::move(orders)}; }

    std::string name() const {
        return is_potential() ? "V" : "a" + std::to_string(target + 1);
    }
};

/// t^p * xi^gamma * (multiset of jet symbols); jets kept sorted.
struct SymMonomial {
    int t_pow = 0;
    std::vector<int> xi;          // exponents, length = dims
    std::vector<JetSymbol> jets;  // sorted, duplicates allowed

    void canonicalize() { std::sort(jets.begin(), jets.end()); }

    int xi_degree() const {
        int s = 0;
        for (int e : xi) s += e;
        return s;
    }
    int jet_order_sum() const {
        int s = 0;
        for (const auto& j : jets) s += j.total_order();
        return s;
    }
    bool has_odd_xi() const {
        for (int e : xi)
            if (e % 2) return true;
        return false;
    }

    friend bool operator==(const SymMonomial& a, const SymMonomial& b) {
        return a.t_pow == b.t_pow && a.xi == b.xi && a.jets == b.jets;
    }
    friend bool operator<(const SymMonomial& a, const SymMonomial& b) {
        if (a.t_pow != b.t_pow) return a.t_pow < b.t_pow;
        if (a.xi != b.xi) return a.xi < b.xi;
        return a.jets < b.jets;
    }
};

/// Sparse polynomial over Gaussian rationals in t, xi_1..xi_n and jet symbols.
/// Immutable in spirit: all operations return new values.
class SymPoly {
  public:
    using TermMap = std::map<SymMonomial, GaussRat>;

    SymPoly() = default;
    explicit SymPoly(int dims) : dims_(dims) {}
    SymPoly(int dims, const GaussRat& c) : dims_(dims) {
        if (!c.is_zero()) terms_[SymMonomial{0, std::vector<int>(dims, 0), {}}] = c;
    }

    static SymPoly zero(int dims) { return SymPoly(dims); }
    static SymPoly one(int dims) { return SymPoly(dims, GaussRat(1)); }
    static SymPoly constant(int dims, const GaussRat& c) { return SymPoly(dims, c); }
    static SymPoly t(int dims, int pow = 1) {
        SymPoly p(dims);
        p.terms_[SymMonomial{pow, std::vector<int>(dims, 0), {}}] = GaussRat(1);
        return p;
    }
    static SymPoly xi(int dims, int k, int pow = 1) {
        SymPoly p(dims);
        SymMonomial m{0, std::vector<int>(dims, 0), {}};
        m.xi[k] = pow;
        p.terms_[m] = GaussRat(1);
        return p;
    }
    static SymPoly jet(int dims, JetSymbol j) {
        SymPoly p(dims);
        SymMonomial m{0, std::vector<int>(dims, 0), {std::move(j)}};
        p.terms_[m] = GaussRat(1);
        return p;
    }

    int dims() const { return dims_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    void add_term(SymMonomial m, const GaussRat& c) {
        if (c.is_zero()) return;
        m.canonicalize();
        auto it = terms_.find(m);
        if (it == terms_.end()) terms_.emplace(std::move(m), c);
        else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    SymPoly& operator+=(const SymPoly& o) {
        check_dims(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    SymPoly& operator-=(const SymPoly& o) {
        check_dims(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend SymPoly operator+(SymPoly a, const SymPoly& b) { a += b; return a; }
    friend SymPoly operator-(SymPoly a, const SymPoly& b) { a -= b; return a; }
    SymPoly operator-() const {
        SymPoly r(dims_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    friend SymPoly operator*(const SymPoly& a, const SymPoly& b) {
        a.check_dims(b);
        SymPoly r(a.dims_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                SymMonomial m;
                m.t_pow = ma.t_pow + mb.t_pow;
                m.xi.resize(a.dims_);
                for (int k = 0; k < a.dims_; ++k) m.xi[k] = ma.xi[k] + mb.xi[k];
                m.jets = ma.jets;
                m.jets.insert(m.jets.end(), mb.jets.begin(), mb.jets.end());
                r.add_term(std::move(m), ca * cb);
            }
        return r;
    }
    SymPoly& operator*=(const SymPoly& o) { *this = *this * o; return *this; }

    SymPoly scaled(const GaussRat& c) const {
        SymPoly r(dims_);
        if (c.is_zero()) return r;
        for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
        return r;
    }

    friend bool operator==(const SymPoly& a, const SymPoly& b) {
        return a.dims_ == b.dims_ && a.terms_ == b.terms_;
    }

    /// d/dx_k acting on jets via the Leibniz rule; t and xi are constants.
    SymPoly formal_dx(int k) const {
        if (k < 0 || k >= dims_) throw std::out_of_range("formal_dx: axis");
        SymPoly r(dims_);
        for (const auto& [m, c] : terms_) {
            // differentiate each distinct jet factor once, weighted by multiplicity
            for (size_t i = 0; i < m.jets.size(); ++i) {
                if (i > 0 && m.jets[i] == m.jets[i - 1]) continue;
                size_t mult = 1;
                while (i + mult < m.jets.size() && m.jets[i + mult] == m.jets[i]) ++mult;
                SymMonomial nm = m;
                nm.jets[i].orders[k] += 1;
                r.add_term(std::move(nm), c * GaussRat(long(mult)));
            }
        }
        return r;
    }

    /// d/dxi_k (polynomial derivative in the momentum variable).
    SymPoly xi_partial(int k) const {
        if (k < 0 || k >= dims_) throw std::out_of_range("xi_partial: axis");
        SymPoly r(dims_);
        for (const auto& [m, c] : terms_) {
            if (m.xi[k] == 0) continue;
            SymMonomial nm = m;
            nm.xi[k] -= 1;
            r.add_term(std::move(nm), c * GaussRat(long(m.xi[k])));
        }
        return r;
    }

    /// Antiderivative in t with zero constant: t^l -> t^{l+1}/(l+1).
    SymPoly integrate_t() const {
        SymPoly r(dims_);
        for (const auto& [m, c] : terms_) {
            SymMonomial nm = m;
            nm.t_pow += 1;
            r.terms_[std::move(nm)] = c / GaussRat(long(m.t_pow + 1));
        }
        return r;
    }

    int t_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.t_pow);
        return d;
    }

    /// Coefficient polynomial of t^l (t-free).
    SymPoly t_coefficient(int l) const {
        SymPoly r(dims_);
        for (const auto& [m, c] : terms_)
            if (m.t_pow == l) {
                SymMonomial nm = m;
                nm.t_pow = 0;
                r.terms_[std::move(nm)] = c;
            }
        return r;
    }

    std::complex<double> eval(const std::vector<double>& xi_vals, std::complex<double> t_val,
                              const std::map<JetSymbol, double>& jet_vals) const {
        if (int(xi_vals.size()) != dims_) throw std::invalid_argument("eval: xi size");
        std::complex<double> acc{0, 0};
        for (const auto& [m, c] : terms_) {
            std::complex<double> v = c.to_complex();
            for (int p = 0; p < m.t_pow; ++p) v *= t_val;
            for (int k = 0; k < dims_; ++k)
                for (int p = 0; p < m.xi[k]; ++p) v *= xi_vals[k];
            for (const auto& j : m.jets) {
                auto it = jet_vals.find(j);
                if (it == jet_vals.end())
                    throw std::invalid_argument("eval: missing jet value for " + j.name());
                v *= it->second;
            }
            acc += v;
        }
        return acc;
    }

    // ---- serialization ----

    static std::string jet_str(const JetSymbol& j) {
        std::string s = j.name() + "[";
        for (size_t k = 0; k < j.orders.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(j.orders[k]);
        }
        return s + "]";
    }

    /// Canonical text form, e.g. "(-1/8)*t^4*xi1^2*V[1]^2"; terms joined by " + ".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            std::string term = "(" + gauss_str(c) + ")";
            if (m.t_pow > 0) term += "*t" + (m.t_pow > 1 ? "^" + std::to_string(m.t_pow) : "");
            for (int k = 0; k < dims_; ++k)
                if (m.xi[k] > 0)
                    term += "*xi" + std::to_string(k + 1) +
                            (m.xi[k] > 1 ? "^" + std::to_string(m.xi[k]) : "");
            for (size_t i = 0; i < m.jets.size();) {
                size_t mult = 1;
                while (i + mult < m.jets.size() && m.jets[i + mult] == m.jets[i]) ++mult;
                term += "*" + jet_str(m.jets[i]) + (mult > 1 ? "^" + std::to_string(mult) : "");
                i += mult;
            }
            out += term;
        }
        return out;
    }

    static SymPoly parse(int dims, const std::string& text);

    std::string latex() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            std::string coeff;
            GaussRat cc = c;
            bool neg = false;
            if (cc.im == 0 && cc.re < 0) { neg = true; cc.re = -cc.re; }
            else if (cc.re == 0 && cc.im < 0) { neg = true; cc.im = -cc.im; }
            bool bare = false;  // coefficient 1 against a nontrivial monomial
            bool has_factors = m.t_pow > 0 || m.xi_degree() > 0 || !m.jets.empty();
            if (cc.im == 0) {
                if (cc.re == 1 && has_factors) bare = true;
                else if (denominator(cc.re) == 1) coeff = rat_str(cc.re);
                else coeff = "\\frac{" + rat_str(Rat(numerator(cc.re))) + "}{" +
                             rat_str(Rat(denominator(cc.re))) + "}";
            } else if (cc.re == 0) {
                if (cc.im == 1) coeff = "i";
                else if (denominator(cc.im) == 1) coeff = rat_str(cc.im) + " i";
                else coeff = "\\frac{" + rat_str(Rat(numerator(cc.im))) + "}{" +
                             rat_str(Rat(denominator(cc.im))) + "} i";
            } else {
                coeff = "(" + gauss_str(cc) + ")";
            }
            std::string term;
            if (m.t_pow > 0) term += " t" + (m.t_pow > 1 ? "^{" + std::to_string(m.t_pow) + "}" : std::string());
            for (int k = 0; k < dims_; ++k)
                if (m.xi[k] > 0) {
                    term += " \\xi";
                    if (dims_ > 1) term += "_{" + std::to_string(k + 1) + "}";
                    if (m.xi[k] > 1) term += "^{" + std::to_string(m.xi[k]) + "}";
                }
            for (size_t i = 0; i < m.jets.size();) {
                size_t mult = 1;
                while (i + mult < m.jets.size() && m.jets[i + mult] == m.jets[i]) ++mult;
                const auto& j = m.jets[i];
                std::string base = j.is_potential() ? "V" : "a_{" + std::to_string(j.target + 1) + "}";
                int tot = j.total_order();
                std::string fac;
                if (tot == 0) fac = base;
                else if (dims_ == 1) fac = base + "^{(" + std::to_string(tot) + ")}";
                else {
                    fac = "\\partial^{(";
                    for (size_t k = 0; k < j.orders.size(); ++k) {
                        if (k) fac += ",";
                        fac += std::to_string(j.orders[k]);
                    }
                    fac += ")}" + base;
                }
                if (mult > 1) {
                    // parenthesize powered derivative factors: (V^{(1)})^{2}
                    if (tot > 0) fac = "(" + fac + ")";
                    fac += "^{" + std::to_string(mult) + "}";
                }
                term += " " + fac;
                i += mult;
            }
            if (term.empty() && coeff.empty() && bare) coeff = "1";
            if (coeff.empty() && !bare) coeff = "1";
            std::string piece = (bare ? term : coeff + term);
            if (first) out += (neg ? "-" : "") + piece;
            else out += (neg ? " - " : " + ") + piece;
            first = false;
        }
        return out;
    }

    std::string json() const;

  private:
    void check_dims(const SymPoly& o) const {
        if (dims_ != o.dims_) throw std::invalid_argument("SymPoly: dimension mismatch");
    }

    int dims_ = 1;
    TermMap terms_;
};

inline SymPoly SymPoly::parse(int dims, const std::string& text) {
    SymPoly out(dims);
    if (text == "0") return out;
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && text[pos] == ' ') ++pos; };
    while (pos < text.size()) {
        skip_ws();
        if (text[pos] != '(') throw std::invalid_argument("parse: expected '(' at " + std::to_string(pos));
        size_t close = text.find(')', pos);
        if (close == std::string::npos) throw std::invalid_argument("parse: unbalanced paren");
        GaussRat c = gauss_parse(text.substr(pos + 1, close - pos - 1));
        pos = close + 1;
        SymMonomial m{0, std::vector<int>(dims, 0), {}};
        while (pos < text.size() && text[pos] == '*') {
            ++pos;
            size_t start = pos;
            while (pos < text.size() && text[pos] != '*' && text[pos] != ' ' && text[pos] != '^')
                ++pos;
            std::string fac = text.substr(start, pos - start);
            int power = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                size_t ps = pos;
                while (pos < text.size() && isdigit(text[pos])) ++pos;
                power = std::stoi(text.substr(ps, pos - ps));
            }
            if (fac == "t") m.t_pow += power;
            else if (fac.rfind("xi", 0) == 0) {
                int k = std::stoi(fac.substr(2)) - 1;
                if (k < 0 || k >= dims) throw std::invalid_argument("parse: bad xi index");
                m.xi[k] += power;
            } else {
                size_t lb = fac.find('[');
                if (lb == std::string::npos || fac.back() != ']')
                    throw std::invalid_argument("parse: bad factor " + fac);
                std::string name = fac.substr(0, lb);
                JetSymbol j;
                if (name == "V") j.target = -1;
                else if (name[0] == 'a') j.target = std::stoi(name.substr(1)) - 1;
                else throw std::invalid_argument("parse: bad jet " + name);
                std::string idx = fac.substr(lb + 1, fac.size() - lb - 2);
                std::stringstream ss(idx);
                std::string part;
                while (std::getline(ss, part, ',')) j.orders.push_back(std::stoi(part));
                if (int(j.orders.size()) != dims) throw std::invalid_argument("parse: jet multiindex size");
                for (int p = 0; p < power; ++p) m.jets.push_back(j);
            }
        }
        out.add_term(std::move(m), c);
        skip_ws();
        if (pos < text.size()) {
            if (text[pos] != '+') throw std::invalid_argument("parse: expected '+' separator");
            ++pos;
        }
    }
    return out;
}

inline std::string SymPoly::json() const {
    std::string out = "{\"dims\":" + std::to_string(dims_) + ",\"terms\":[";
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) out += ",";
        first = false;
        out += "{\"t\":" + std::to_string(m.t_pow) + ",\"xi\":[";
        for (int k = 0; k < dims_; ++k) out += (k ? "," : "") + std::to_string(m.xi[k]);
        out += "],\"jets\":[";
        for (size_t i = 0; i < m.jets.size(); ++i) {
            if (i) out += ",";
            out += "{\"target\":\"" + m.jets[i].name() + "\",\"orders\":[";
            for (size_t k = 0; k < m.jets[i].orders.size(); ++k)
                out += (k ? "," : "") + std::to_string(m.jets[i].orders[k]);
            out += "]}";
        }
        out += "],\"re\":\"" + rat_str(c.re) + "\",\"im\":\"" + rat_str(c.im) + "\"}";
    }
    return out + "]}";
}

}  // namespace specinv

#endif
