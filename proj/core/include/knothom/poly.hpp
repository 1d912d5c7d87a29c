#ifndef KNOTHOM_POLY_HPP
#define KNOTHOM_POLY_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace knothom {

using Int = boost::multiprecision::cpp_int;

/// Exponent vector over a fixed ambient variable set. Every variable has
/// quantum degree 2, so the quantum degree of a monomial is 2 * degree().
struct Monomial {
    std::vector<int> e;

    Monomial() = default;
    explicit Monomial(int nvars) : e(nvars, 0) {}

    int degree() const {
        int d = 0;
        for (int x : e) d += x;
        return d;
    }
    bool operator==(const Monomial& o) const { return e == o.e; }
};

/// Graded-lexicographic order; fixes the canonical term order for equality
/// and for exact division.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.e < b.e;
    }
};

struct DivisionError : std::runtime_error {
    explicit DivisionError(const std::string& m) : std::runtime_error(m) {}
};

/// A term of an integer-linear form: coeff * x_var.
using LinTerm = std::pair<int, Int>;
using LinForm = std::vector<LinTerm>;  // sum of coeff * x_var, no constant part

/// Exact multivariate polynomial over Z with a fixed number of variables.
/// Stored zero coefficients are never kept; term order is grlex.
class MultiPoly {
public:
    MultiPoly() : nvars_(0) {}
    explicit MultiPoly(int nvars) : nvars_(nvars) {}

    static MultiPoly zero(int nvars) { return MultiPoly(nvars); }
    static MultiPoly constant(int nvars, Int c);
    static MultiPoly variable(int nvars, int v);
    static MultiPoly linear(int nvars, const LinForm& f);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t num_terms() const { return terms_.size(); }
    const std::map<Monomial, Int, GrlexLess>& terms() const { return terms_; }

    /// True when the polynomial is a single constant term c with c = 1 or -1.
    bool is_unit_constant() const;
    /// The constant coefficient (0 if absent).
    Int constant_term() const;

    void add_term(const Monomial& m, const Int& c);

    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly& operator+=(const MultiPoly& o);
    bool operator==(const MultiPoly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    MultiPoly scaled(const Int& c) const;

    /// Total degree of the highest term; -1 for the zero polynomial.
    int degree() const;
    /// All terms share one total degree (the zero polynomial is homogeneous).
    bool is_homogeneous() const;
    /// Quantum degree 2 * degree() for homogeneous nonzero polynomials.
    int qdegree() const { return 2 * degree(); }

    /// Replace x_var by an integer-linear form and expand.
    MultiPoly substitute_linear(int var, const LinForm& expr) const;

    /// Reindex variables: new_index[v] is the index of old variable v in the
    /// new ambient space (must be >= 0 for every variable that occurs).
    MultiPoly remap_vars(const std::vector<int>& new_index, int new_nvars) const;

    /// Exact division; nullopt when den does not divide this exactly.
    std::optional<MultiPoly> divided_by(const MultiPoly& den) const;

    std::string to_string() const;
    std::string to_string(const std::vector<std::string>& names) const;

private:
    int nvars_;
    std::map<Monomial, Int, GrlexLess> terms_;
};

MultiPoly divide_exact(const MultiPoly& num, const MultiPoly& den);

/// Univariate integer polynomial p(x) = sum coeff[d] * x^d.
struct Potential {
    std::vector<Int> coeff;

    static Potential monomial(int degree) {
        Potential p;
        p.coeff.assign(degree + 1, 0);
        p.coeff[degree] = 1;
        return p;
    }
    int degree() const;
    /// p evaluated at an integer-linear form, expanded in nvars variables.
    MultiPoly at(int nvars, const LinForm& arg) const;
};

/// Crossing potential data over Z[x_i, x_j, x_k] with x_l = x_i + x_j - x_k
/// eliminated: W = p(x_k) + p(x_i+x_j-x_k) - p(x_i) - p(x_j), and the exact
/// quotients  p_i = W / (x_k - x_i),  p_ij = -W / ((x_k - x_i)(x_k - x_j)).
struct PotentialData {
    MultiPoly W;
    MultiPoly p_i;
    MultiPoly p_ij;
};

PotentialData potential_data(const Potential& p, int nvars, int vi, int vj, int vk);

/// (p(x) - p(y)) / (x - y) as a polynomial in the ambient variable space.
MultiPoly divided_difference(const Potential& p, int nvars, int vx, int vy);

/// Combine duplicates, drop zeros, sort by variable.
LinForm normalize_form(LinForm f);
LinForm form_sub(const LinForm& a, const LinForm& b);

/// Evaluate p at integer-linear forms args[v] substituted for each variable,
/// expanding in a new ambient space with out_nvars variables.
MultiPoly eval_at_forms(const MultiPoly& p, const std::vector<LinForm>& args, int out_nvars);

}  // namespace knothom

#endif
