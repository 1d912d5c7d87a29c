#include "knothom/poly.hpp"

#include <sstream>

namespace knothom {

MultiPoly MultiPoly::constant(int nvars, Int c) {
    MultiPoly p(nvars);
    if (c != 0) p.terms_[Monomial(nvars)] = std::move(c);
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int v) {
    MultiPoly p(nvars);
    Monomial m(nvars);
    m.e[v] = 1;
    p.terms_[m] = 1;
    return p;
}

MultiPoly MultiPoly::linear(int nvars, const LinForm& f) {
    MultiPoly p(nvars);
    for (const auto& [v, c] : f) {
        Monomial m(nvars);
        m.e[v] = 1;
        p.add_term(m, c);
    }
    return p;
}

bool MultiPoly::is_unit_constant() const {
    if (terms_.size() != 1) return false;
    const auto& [m, c] = *terms_.begin();
    return m.degree() == 0 && (c == 1 || c == -1);
}

Int MultiPoly::constant_term() const {
    auto it = terms_.find(Monomial(nvars_));
    return it == terms_.end() ? Int(0) : it->second;
}

void MultiPoly::add_term(const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    r += o;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly r(nvars_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m(nvars_);
            for (int v = 0; v < nvars_; ++v) m.e[v] = ma.e[v] + mb.e[v];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::scaled(const Int& c) const {
    MultiPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [m, t] : terms_) r.terms_[m] = t * c;
    return r;
}

int MultiPoly::degree() const {
    if (terms_.empty()) return -1;
    return terms_.rbegin()->first.degree();
}

bool MultiPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_.begin()->first.degree();
    return terms_.rbegin()->first.degree() == d;
}

MultiPoly MultiPoly::substitute_linear(int var, const LinForm& expr) const {
    // Cache powers of the replacement form as they come up.
    std::vector<MultiPoly> pow{MultiPoly::constant(nvars_, 1)};
    MultiPoly base = MultiPoly::linear(nvars_, expr);
    MultiPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
        int d = m.e[var];
        if (d == 0) {
            r.add_term(m, c);
            continue;
        }
        while ((int)pow.size() <= d) pow.push_back(pow.back() * base);
        Monomial rest = m;
        rest.e[var] = 0;
        MultiPoly part(nvars_);
        part.terms_[rest] = c;
        r += part * pow[d];
    }
    return r;
}

MultiPoly MultiPoly::remap_vars(const std::vector<int>& new_index, int new_nvars) const {
    MultiPoly r(new_nvars);
    for (const auto& [m, c] : terms_) {
        Monomial nm(new_nvars);
        for (int v = 0; v < nvars_; ++v) {
            if (m.e[v] == 0) continue;
            if (new_index[v] < 0) throw std::logic_error("remap_vars: live variable dropped");
            nm.e[new_index[v]] += m.e[v];
        }
        r.add_term(nm, c);
    }
    return r;
}

std::optional<MultiPoly> MultiPoly::divided_by(const MultiPoly& den) const {
    if (den.is_zero()) throw DivisionError("division by zero polynomial");
    MultiPoly rem = *this;
    MultiPoly quo(nvars_);
    const auto& [lm, lc] = *den.terms_.rbegin();
    while (!rem.is_zero()) {
        const auto& [rm, rc] = *rem.terms_.rbegin();
        Monomial q(nvars_);
        bool div = true;
        for (int v = 0; v < nvars_ && div; ++v) {
            q.e[v] = rm.e[v] - lm.e[v];
            if (q.e[v] < 0) div = false;
        }
        if (!div || rc % lc != 0) return std::nullopt;
        Int qc = rc / lc;
        quo.add_term(q, qc);
        MultiPoly t(nvars_);
        t.terms_[q] = qc;
        rem = rem - t * den;
    }
    return quo;
}

std::string MultiPoly::to_string() const {
    std::vector<std::string> names;
    for (int v = 0; v < nvars_; ++v) names.push_back("x" + std::to_string(v));
    return to_string(names);
}

std::string MultiPoly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest term first reads better in logs.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Int a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        bool printed = false;
        if (a != 1 || m.degree() == 0) {
            os << a.str();
            printed = true;
        }
        for (int v = 0; v < nvars_; ++v) {
            if (m.e[v] == 0) continue;
            if (printed) os << "*";
            os << names[v];
            if (m.e[v] > 1) os << "^" << m.e[v];
            printed = true;
        }
        first = false;
    }
    return os.str();
}

MultiPoly divide_exact(const MultiPoly& num, const MultiPoly& den) {
    auto q = num.divided_by(den);
    if (!q) throw DivisionError("non-exact polynomial division");
    return *q;
}

int Potential::degree() const {
    for (int d = (int)coeff.size() - 1; d >= 0; --d)
        if (coeff[d] != 0) return d;
    return -1;
}

MultiPoly Potential::at(int nvars, const LinForm& arg) const {
    MultiPoly x = MultiPoly::linear(nvars, arg);
    MultiPoly r(nvars);
    MultiPoly p = MultiPoly::constant(nvars, 1);
    for (std::size_t d = 0; d < coeff.size(); ++d) {
        if (d > 0) p = p * x;
        if (coeff[d] != 0) r += p.scaled(coeff[d]);
    }
    return r;
}

PotentialData potential_data(const Potential& p, int nvars, int vi, int vj, int vk) {
    PotentialData out;
    // W = p(x_k) + p(x_i + x_j - x_k) - p(x_i) - p(x_j), with x_l eliminated.
    out.W = p.at(nvars, {{vk, 1}}) + p.at(nvars, {{vi, 1}, {vj, 1}, {vk, -1}}) -
            p.at(nvars, {{vi, 1}}) - p.at(nvars, {{vj, 1}});
    MultiPoly u = MultiPoly::linear(nvars, {{vk, 1}, {vi, -1}});
    MultiPoly v = MultiPoly::linear(nvars, {{vk, 1}, {vj, -1}});
    out.p_i = divide_exact(out.W, u);
    out.p_ij = -divide_exact(out.p_i, v);
    return out;
}

MultiPoly divided_difference(const Potential& p, int nvars, int vx, int vy) {
    MultiPoly num = p.at(nvars, {{vx, 1}}) - p.at(nvars, {{vy, 1}});
    if (num.is_zero()) return MultiPoly::zero(nvars);
    return divide_exact(num, MultiPoly::linear(nvars, {{vx, 1}, {vy, -1}}));
}

LinForm normalize_form(LinForm f) {
    std::map<int, Int> acc;
    for (const auto& [v, c] : f) acc[v] += c;
    LinForm out;
    for (auto& [v, c] : acc)
        if (c != 0) out.emplace_back(v, c);
    return out;
}

LinForm form_sub(const LinForm& a, const LinForm& b) {
    LinForm f = a;
    for (const auto& [v, c] : b) f.emplace_back(v, -c);
    return normalize_form(f);
}

MultiPoly eval_at_forms(const MultiPoly& p, const std::vector<LinForm>& args, int out_nvars) {
    std::vector<MultiPoly> base;
    std::vector<std::vector<MultiPoly>> pow(p.nvars());
    for (int v = 0; v < p.nvars(); ++v) {
        base.push_back(MultiPoly::linear(out_nvars, args[v]));
        pow[v].push_back(MultiPoly::constant(out_nvars, 1));
    }
    MultiPoly r(out_nvars);
    for (const auto& [m, c] : p.terms()) {
        MultiPoly t = MultiPoly::constant(out_nvars, c);
        for (int v = 0; v < p.nvars(); ++v) {
            int d = m.e[v];
            if (d == 0) continue;
            while ((int)pow[v].size() <= d) pow[v].push_back(pow[v].back() * base[v]);
            t = t * pow[v][d];
        }
        r += t;
    }
    return r;
}

}  // namespace knothom
