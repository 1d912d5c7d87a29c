#include "knothom/braid.hpp"

#include "json.hpp"

#include <numeric>
#include <sstream>

namespace knothom {

BraidWord parse_braid(const std::string& text, std::optional<int> strands) {
    BraidWord w;
    std::istringstream is(text);
    std::string tok;
    int maxidx = 0;
    while (is >> tok) {
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(tok, &pos);
        } catch (const std::exception&) {
            throw BraidParseError("malformed braid token '" + tok + "'");
        }
        if (pos != tok.size()) throw BraidParseError("malformed braid token '" + tok + "'");
        if (v == 0) throw BraidParseError("zero is not a braid generator");
        int idx = (int)(v < 0 ? -v : v);
        maxidx = std::max(maxidx, idx);
        w.letters.emplace_back(idx, v < 0 ? -1 : +1);
    }
    w.strands = strands ? *strands : maxidx + 1;
    if (w.strands < 1) throw BraidParseError("strand count must be positive");
    if (maxidx > w.strands - 1)
        throw BraidParseError("generator index " + std::to_string(maxidx) +
                              " out of range for " + std::to_string(w.strands) + " strands");
    return w;
}

ClosedDiagram close_braid(const BraidWord& w, std::optional<int> marked_edge) {
    ClosedDiagram d;
    d.strands = w.strands;
    d.writhe = w.writhe();

    const int b = w.strands;
    std::vector<int> cur(b), strand_at(b);  // current segment / strand per position
    std::iota(cur.begin(), cur.end(), 0);
    std::iota(strand_at.begin(), strand_at.end(), 0);
    int next = b;
    std::vector<int> seg_strand(b);
    std::iota(seg_strand.begin(), seg_strand.end(), 0);

    for (const auto& [i, s] : w.letters) {
        int p = i - 1;  // 0-based left position
        Crossing c;
        c.sign = s;
        c.in = {cur[p], cur[p + 1]};
        c.out = {next, next + 1};
        cur[p] = next;
        cur[p + 1] = next + 1;
        // Strands swap across the crossing.
        std::swap(strand_at[p], strand_at[p + 1]);
        seg_strand.push_back(strand_at[p]);
        seg_strand.push_back(strand_at[p + 1]);
        next += 2;
        d.crossings.push_back(c);
    }
    d.num_segments = next;

    for (int p = 0; p < b; ++p) d.closure.emplace_back(p, cur[p]);

    // Closure merges the top segment of each position into its bottom
    // segment; the classes are pairs {p, cur[p]} plus singletons.
    std::vector<int> rep(next);
    std::iota(rep.begin(), rep.end(), 0);
    for (int p = 0; p < b; ++p) rep[cur[p]] = p;
    d.seg_edge.assign(next, -1);
    int e = 0;
    for (int s = 0; s < next; ++s)
        if (rep[s] == s) d.seg_edge[s] = e++;
    for (int s = 0; s < next; ++s)
        if (d.seg_edge[s] < 0) d.seg_edge[s] = d.seg_edge[rep[s]];
    d.num_edges = e;

    // Link components: cycles of the map strand -> its final top position.
    std::vector<int> endpos(b);
    for (int p = 0; p < b; ++p) endpos[strand_at[p]] = p;
    std::vector<int> comp(b, -1);
    int nc = 0;
    for (int s0 = 0; s0 < b; ++s0) {
        if (comp[s0] >= 0) continue;
        int s = s0;
        while (comp[s] < 0) {
            comp[s] = nc;
            s = endpos[s];
        }
        ++nc;
    }
    d.num_components = nc;
    d.seg_component.resize(next);
    for (int s = 0; s < next; ++s) d.seg_component[s] = comp[seg_strand[s]];

    d.marked_edge = marked_edge.value_or(0);
    if (d.marked_edge < 0 || d.marked_edge >= d.num_edges)
        throw BraidParseError("marked edge out of range");
    return d;
}

int ClosedDiagram::edge_component(int edge) const {
    for (int s = 0; s < num_segments; ++s)
        if (seg_edge[s] == edge) return seg_component[s];
    throw std::out_of_range("edge_component: no such edge");
}

EdgeRingPresentation edge_ring(const ClosedDiagram& d) {
    EdgeRingPresentation pres;
    pres.num_vars = d.num_edges;
    for (std::size_t c = 0; c < d.crossings.size(); ++c) {
        std::vector<Int> rel(d.num_edges, 0);
        auto out = d.out_edges((int)c);
        auto in = d.in_edges((int)c);
        rel[out[0]] += 1;
        rel[out[1]] += 1;
        rel[in[0]] -= 1;
        rel[in[1]] -= 1;
        pres.relations.push_back(std::move(rel));
    }
    return pres;
}

std::string diagram_to_json(const ClosedDiagram& d) {
    nlohmann::json j;
    j["strands"] = d.strands;
    j["writhe"] = d.writhe;
    j["marked_edge"] = d.marked_edge;
    j["edges"] = nlohmann::json::array();
    for (int e = 0; e < d.num_edges; ++e) j["edges"].push_back(e);
    j["crossings"] = nlohmann::json::array();
    for (std::size_t c = 0; c < d.crossings.size(); ++c) {
        auto in = d.in_edges((int)c);
        auto out = d.out_edges((int)c);
        j["crossings"].push_back({{"sign", d.crossings[c].sign},
                                  {"in", {in[0], in[1]}},
                                  {"out", {out[0], out[1]}}});
    }
    return j.dump();
}

}  // namespace knothom
