#ifndef KNOTHOM_PIPELINE_HPP
#define KNOTHOM_PIPELINE_HPP

#include "knothom/homology.hpp"
#include "knothom/simplify.hpp"

#include <optional>

namespace knothom {

struct PipelineOptions {
    bool reduced = true;
    std::optional<int> mark;          // marked edge override
    std::optional<Window> window;     // table (shifted) q-window override
    int threads = 1;
    bool simplify = true;
    int widen_rounds = 6;             // reduced tables widen until support clears
};

Window default_window(const BraidWord& w);

/// Full table pipeline: close, assemble, (reduce), simplify, slice, iterate.
/// Reduced tables are widened automatically until the support clears the
/// window; an unreduced table reports the window it was computed on.
HomologyTable braid_homology(const BraidWord& w, const PipelineOptions& opt = {});

/// The same pipeline split at the d_plus homology stage (for the spectral
/// sequence and for diagnostics).
struct HomologyStage {
    Assembled assembled;
    TriComplex simplified;
    DplusHomology dplus;
    TriDeg shift;
};

HomologyStage braid_dplus_stage(const BraidWord& w, const Potential* p,
                                const PipelineOptions& opt);

}  // namespace knothom

#endif
