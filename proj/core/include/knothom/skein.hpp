#ifndef KNOTHOM_SKEIN_HPP
#define KNOTHOM_SKEIN_HPP

#include "knothom/braid.hpp"
#include "knothom/homology.hpp"

#include <map>
#include <string>

namespace knothom {

/// Laurent polynomial in a, q over Z.
struct LaurentAQ {
    std::map<std::pair<int, int>, Int> terms;  // (a exponent, q exponent) -> coeff

    static LaurentAQ mono(int ae, int qe, Int c = 1);
    static LaurentAQ one() { return mono(0, 0); }

    bool is_zero() const { return terms.empty(); }
    void add_term(int ae, int qe, const Int& c);
    LaurentAQ operator+(const LaurentAQ& o) const;
    LaurentAQ operator-(const LaurentAQ& o) const;
    LaurentAQ operator*(const LaurentAQ& o) const;
    bool operator==(const LaurentAQ& o) const { return terms == o.terms; }

    /// Substitute (a, q) -> (a^-1, q^-1).
    LaurentAQ inverted() const;

    std::string to_string() const;
    std::string to_json() const;
};

/// Value of the form num / (q - q^-1)^denpow; the skein recursion stays in
/// this exact form and clears the denominator at the end.
struct RationalAQ {
    LaurentAQ num;
    int denpow = 0;

    RationalAQ operator+(const RationalAQ& o) const;
    RationalAQ operator*(const LaurentAQ& f) const;
    RationalAQ operator*(const RationalAQ& o) const;
};

/// Exact division by (q - q^-1); throws DivisionError when not divisible.
LaurentAQ divide_q_qinv(const LaurentAQ& p);

/// The disjoint-circle multiplier (a - a^-1)/(q - q^-1), forced by the skein
/// relation applied to the two kinked unknots.
RationalAQ circle_factor();

/// HOMFLY-PT polynomial of the braid closure, normalized to 1 on the unknot,
/// by recursive crossing switching and smoothing with memoization.
LaurentAQ homfly(const BraidWord& w);

/// sum (-1)^((k-j)/2) a^j q^i rank over the table; throws on odd k-j.
LaurentAQ euler_characteristic(const HomologyTable& t);

/// Laurent polynomial in q: substitute a -> q^n.
LaurentAQ specialize_sln(const LaurentAQ& p, int n);

bool euler_matches_reduced(const HomologyTable& t, const LaurentAQ& P);

/// Unreduced comparison: the table Euler characteristic must agree with the
/// ascending expansion of -P/(q - q^-1) on the computed window.
bool euler_matches_unreduced(const HomologyTable& t, const LaurentAQ& P);

/// Ascending q-expansion of -P/(q-q^-1) = P * q * (1 + q^2 + ...), truncated
/// to q-exponents <= qmax.
LaurentAQ unreduced_euler_series(const LaurentAQ& P, int qmax);

}  // namespace knothom

#endif
