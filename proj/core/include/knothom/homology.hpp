#ifndef KNOTHOM_HOMOLOGY_HPP
#define KNOTHOM_HOMOLOGY_HPP

#include "knothom/complex.hpp"
#include "knothom/zmat.hpp"

#include <map>
#include <string>
#include <vector>

namespace knothom {

struct WindowError : std::runtime_error {
    explicit WindowError(const std::string& m) : std::runtime_error(m) {}
};
struct CertificateError : std::logic_error {
    explicit CertificateError(const std::string& m) : std::logic_error(m) {}
};

struct Window {
    int qmin = 0, qmax = 0;
};

/// Map from tri-degree to a finitely generated abelian group; only nonzero
/// groups are stored. `complete` is set when the support clears the computed
/// q-window on both sides.
struct HomologyTable {
    std::map<TriDeg, FgGroup> entries;
    bool complete = false;
    Window window;

    bool operator==(const HomologyTable& o) const { return entries == o.entries; }
    bool empty() const { return entries.empty(); }
};

std::string table_to_json(const HomologyTable& t);
HomologyTable table_from_json(const std::string& s);
std::string table_to_text(const HomologyTable& t);

/// One integer slice of a polynomial complex along the d_plus (horizontal)
/// or d_v (vertical) direction. Position bases are (monomial, generator)
/// pairs; consecutive matrices compose to zero.
struct IntComplex {
    std::vector<int> position;                                 // j (or k) value
    std::vector<std::vector<std::pair<Monomial, int>>> basis;  // per position
    std::vector<ZMat> maps;                                    // maps[i]: basis[i] -> basis[i+1]
};

/// Horizontal: positions run over j with element quantum degree q0 + (j - j0)
/// along the diagonal through (q0, j0 = first position); vertical: positions
/// run over k at fixed element quantum degree q0.
IntComplex slice(const TriComplex& c, int q0, bool horizontal);

/// d_plus homology of one tri-degree as a presented group: generators are an
/// integer basis of the kernel lattice, relations express the incoming image.
struct DplusNode {
    int ambient = 0;
    ZMat kernel;     // ambient x g  (columns: kernel lattice basis)
    ZMat relations;  // g x m        (incoming image in kernel coordinates)

    int gens() const { return kernel.cols(); }
    FgGroup invariants() const { return cokernel_group(kernel.cols(), relations); }
};

/// H(C, d_plus) per tri-degree with the induced maps d_v* (degree (0,0,2))
/// and, with a potential, d_minus* (degree (2n, -2, 0)). Certified: induced
/// maps carry kernels into kernels and relations into relations.
struct DplusHomology {
    std::map<TriDeg, DplusNode> nodes;
    std::map<TriDeg, ZMat> dv;      // source degree -> generator matrix
    std::map<TriDeg, ZMat> dminus;  // source degree -> generator matrix
    int dminus_qstep = 0;           // 2 * deg p - 2
    Window window;                  // unshifted q-range covered

    const DplusNode* node(const TriDeg& d) const {
        auto it = nodes.find(d);
        return it == nodes.end() ? nullptr : &it->second;
    }
};

struct HomologyOptions {
    Window window{-40, 40};
    int threads = 1;
};

DplusHomology dplus_homology(const TriComplex& c, const HomologyOptions& opt,
                             int potential_degree = 0);

/// Homology of the induced d_v* complexes of presented groups, one vertical
/// chain per (q, j); the overall shift is applied to the emitted degrees.
HomologyTable iterated_homology(const DplusHomology& h, const TriDeg& shift);

/// Homology of a three-term complex of presented groups  prev -> mid -> next,
/// with maps given on generators (null pointers mean zero groups).
FgGroup presented_homology(const DplusNode* prev, const ZMat* into, const DplusNode& mid,
                           const ZMat* out, const DplusNode* next);

/// Signed basis-size vs homology-rank bookkeeping for one horizontal slice
/// family; returns true when the two Euler sums agree.
bool slice_euler_consistent(const TriComplex& c, int q0);

}  // namespace knothom

#endif
