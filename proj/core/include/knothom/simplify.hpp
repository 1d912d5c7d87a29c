#ifndef KNOTHOM_SIMPLIFY_HPP
#define KNOTHOM_SIMPLIFY_HPP

#include "knothom/complex.hpp"

namespace knothom {

struct EliminationStep {
    int source = 0, target = 0;
    Int entry;
};

struct EliminationTrace {
    std::vector<EliminationStep> steps;
};

/// Gaussian elimination along one differential: repeatedly cancel a +-1
/// constant entry of the selected component, correcting every component by
/// the epsilon - gamma phi^{-1} delta rule, until no eligible unit remains.
///
/// Eliminating along d_plus is unconditional. For any other selector a unit
/// is eliminated only when its source and target touch no other component
/// in either direction (the pair splits off), which keeps the iterated
/// d_plus/d_v homology and both induced maps intact.
TriComplex gaussian_eliminate(const TriComplex& c, const TriDeg& selector,
                              EliminationTrace* trace = nullptr);

/// d_plus pass, then isolated-pair passes on every other component, repeated
/// to a fixed point.
TriComplex simplify_complex(const TriComplex& c, EliminationTrace* trace = nullptr);

}  // namespace knothom

#endif
