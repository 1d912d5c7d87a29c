#ifndef KNOTHOM_COMPLEX_HPP
#define KNOTHOM_COMPLEX_HPP

#include "knothom/braid.hpp"
#include "knothom/poly.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace knothom {

/// Triple degree (q, j, k): quantum grading, doubled horizontal grading,
/// doubled vertical grading.
struct TriDeg {
    int q = 0, j = 0, k = 0;

    TriDeg operator+(const TriDeg& o) const { return {q + o.q, j + o.j, k + o.k}; }
    TriDeg operator-(const TriDeg& o) const { return {q - o.q, j - o.j, k - o.k}; }
    bool operator==(const TriDeg& o) const { return q == o.q && j == o.j && k == o.k; }
    bool operator<(const TriDeg& o) const {
        if (q != o.q) return q < o.q;
        if (j != o.j) return j < o.j;
        return k < o.k;
    }
    std::string to_string() const;
};

inline TriDeg dplus_degree() { return {2, 2, 0}; }
inline TriDeg dv_degree() { return {0, 0, 2}; }
inline TriDeg dminus_degree(int potential_degree) { return {2 * potential_degree - 2, -2, 0}; }

using PolyMat = std::map<std::pair<int, int>, MultiPoly>;  // (target, source) -> entry

/// Finite collection of tri-graded free-module generators over
/// Z[x_0..x_{nvars-1}] with homogeneous differential components keyed by
/// their tri-degree. Assembled complexes carry exactly d_plus = (2,2,0),
/// d_v = (0,0,2) and, with a potential, d_minus = (2 deg p - 2, -2, 0);
/// Gaussian elimination may introduce further induced components.
class TriComplex {
public:
    TriComplex() : nvars_(0) {}
    explicit TriComplex(int nvars) : nvars_(nvars) {}

    static TriComplex unit(int nvars);

    int nvars() const { return nvars_; }
    int num_gens() const { return (int)gens_.size(); }
    const std::vector<TriDeg>& gens() const { return gens_; }
    TriDeg gen(int i) const { return gens_[i]; }
    const std::map<TriDeg, PolyMat>& components() const { return comps_; }
    const PolyMat* component(const TriDeg& d) const;

    int add_gen(const TriDeg& d);
    /// Adds entry * (target gen) to the image of (source gen); the component
    /// key is derived from the generator degrees and the entry's q-degree.
    void add_entry(int target, int source, const MultiPoly& entry);

    /// Apply a ring map to every entry (degrees are preserved; zero results
    /// are dropped). New variable count given by new_nvars.
    void map_entries(const std::function<MultiPoly(const MultiPoly&)>& f, int new_nvars);

    void shift_all(const TriDeg& s);

    std::string dump() const;

private:
    int nvars_;
    std::vector<TriDeg> gens_;
    std::map<TriDeg, PolyMat> comps_;
};

/// Tensor product of complexes with Koszul signs: the right factor's
/// differentials pick up (-1)^((j+k)/2) of the left generator.
TriComplex tensor(const TriComplex& a, const TriComplex& b);

/// The 4-generator crossing complex over Z[x_0..x_{nvars-1}] with the
/// crossing variables x_i, x_j (incoming) and x_k (left outgoing); x_l is
/// already eliminated. With a potential the d_minus arrows carry p_i, p_ij.
TriComplex crossing_complex(int sign, int nvars, int vi, int vj, int vk,
                            const Potential* p = nullptr);

/// Same, with the crossing-local ring elements already mapped into the
/// target ring: u = image of (x_k - x_i), v = image of (x_k - x_j),
/// and optionally the images of p_i and p_ij.
TriComplex crossing_complex_entries(int sign, int nvars, const MultiPoly& u, const MultiPoly& v,
                                    const MultiPoly* pi, const MultiPoly* pij);

/// Two-term Koszul factor [theta {0,-2,0} --f--> unit {0,0,0}] with an
/// optional back arrow. Used for closure identifications that are not
/// eliminable by substitution (extra split circles).
TriComplex koszul_factor(int nvars, const MultiPoly& f, const MultiPoly* back);

TriDeg overall_shift(int writhe, int strands, bool reduced);

/// Closed diagram complex with its ring bookkeeping. Variables of the final
/// polynomial ring are an independent subset of the edge variables.
struct Assembled {
    TriComplex C;
    ClosedDiagram diag;
    int potential_degree = 0;          // deg p; 0 when no potential
    std::vector<LinForm> edge_form;    // edge id -> form over the final variables
    std::vector<std::string> var_names;
    int deficiency = 0;                // number of extra Koszul closure factors
    bool reduced = false;

    TriDeg shift() const { return overall_shift(diag.writhe, diag.strands, reduced); }
};

/// Tensor of all crossing complexes over the open-braid ring, with the
/// type-II relations and the independent closure identifications imposed by
/// unimodular substitution; rank-deficient closure directions (split
/// diagrams) contribute Koszul factors instead.
Assembled assemble(const ClosedDiagram& d, const Potential* p = nullptr);

/// Resolution complexes: choice[c] = 0 for the oriented, 1 for the singular
/// smoothing of crossing c. A pure d_plus complex. When for_hochschild is
/// set, every non-eliminable closure direction keeps a Koszul factor (one
/// more than the invariant normalization), matching the Hochschild pipeline.
Assembled assemble_resolution(const ClosedDiagram& d, const std::vector<int>& choice,
                              bool for_hochschild);

/// Substitute x_edge -> 0 (default: the diagram's marked edge).
void reduce_at_mark(Assembled& a);
void reduce_at_mark(Assembled& a, int edge);

/// D^2 split by component degree; empty result means D^2 = 0.
std::map<TriDeg, PolyMat> square_components(const TriComplex& c);

struct IdentityReport {
    bool ok = true;
    std::string detail;
};

/// For closed complexes: all squares and anticommutators vanish identically.
IdentityReport verify_closed(const TriComplex& c);
/// For open complexes: D^2 = W * Id.
IdentityReport verify_open(const TriComplex& c, const MultiPoly& W);
/// Every entry of every component is homogeneous with matching tri-degree.
IdentityReport verify_homogeneous(const TriComplex& c);

}  // namespace knothom

#endif
