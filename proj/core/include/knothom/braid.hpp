#ifndef KNOTHOM_BRAID_HPP
#define KNOTHOM_BRAID_HPP

#include "knothom/poly.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace knothom {

struct BraidParseError : std::runtime_error {
    explicit BraidParseError(const std::string& m) : std::runtime_error(m) {}
};

/// Braid word in Artin generators: letter (i, s) is sigma_i^s with
/// 1 <= i <= strands-1 and s = +-1.
struct BraidWord {
    int strands = 1;
    std::vector<std::pair<int, int>> letters;

    int writhe() const {
        int w = 0;
        for (const auto& [i, s] : letters) w += s;
        return w;
    }
};

/// Whitespace-separated nonzero integers: sign = crossing sign, magnitude =
/// generator index. Strand count defaults to 1 + max magnitude.
BraidWord parse_braid(const std::string& text, std::optional<int> strands = std::nullopt);

/// One crossing of the closed diagram. Slots hold open-braid segment ids;
/// in = (bottom-left, bottom-right), out = (top-left, top-right), so that the
/// oriented smoothing identifies in[0] with out[0] and in[1] with out[1].
struct Crossing {
    int sign = +1;
    std::array<int, 2> in{};
    std::array<int, 2> out{};
};

/// Braid closure with labeled segments. Segment ids are assigned bottom to
/// top, left to right (initial segments 0..b-1, then two fresh ids per
/// crossing); the closure merges each top segment into the bottom segment of
/// the same strand position, which defines the edge classes.
struct ClosedDiagram {
    int strands = 1;
    int writhe = 0;
    std::vector<Crossing> crossings;
    int num_segments = 0;

    std::vector<std::pair<int, int>> closure;  // per position: (bottom seg, top seg)
    std::vector<int> seg_edge;                 // segment -> edge class id
    int num_edges = 0;
    std::vector<int> seg_component;            // segment -> link component id
    int num_components = 0;
    int marked_edge = 0;

    std::array<int, 2> in_edges(int c) const {
        return {seg_edge[crossings[c].in[0]], seg_edge[crossings[c].in[1]]};
    }
    std::array<int, 2> out_edges(int c) const {
        return {seg_edge[crossings[c].out[0]], seg_edge[crossings[c].out[1]]};
    }
    int edge_component(int edge) const;
};

ClosedDiagram close_braid(const BraidWord& w, std::optional<int> marked_edge = std::nullopt);

/// One variable per edge class; one type-II linear relation per crossing
/// (closure identifications are already collapsed into shared edge ids).
struct EdgeRingPresentation {
    int num_vars = 0;
    std::vector<std::vector<Int>> relations;
};

EdgeRingPresentation edge_ring(const ClosedDiagram& d);

std::string diagram_to_json(const ClosedDiagram& d);

}  // namespace knothom

#endif
