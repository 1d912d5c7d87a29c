#include "knothom/simplify.hpp"

#include <algorithm>

namespace knothom {

namespace {

/// Mutable working form: alive flags plus per-component entry maps.
struct Work {
    int nvars;
    std::vector<TriDeg> gens;
    std::vector<bool> alive;
    std::map<TriDeg, PolyMat> comps;

    void add(int t, int s, const MultiPoly& p, const TriDeg& fallback_gendeg_check) {
        (void)fallback_gendeg_check;
        if (p.is_zero()) return;
        TriDeg d = gens[t] - gens[s];
        d.q += p.qdegree();
        auto& cell = comps[d][{t, s}];
        if (cell.nvars() != nvars) cell = MultiPoly(nvars);
        cell += p;
        if (cell.is_zero()) comps[d].erase({t, s});
    }

    bool touches_other(int g, const TriDeg& sel) const {
        for (const auto& [deg, mat] : comps) {
            if (deg == sel) continue;
            for (const auto& [ts, p] : mat) {
                (void)p;
                if (ts.first == g || ts.second == g) return true;
            }
        }
        return false;
    }
};

int total_degree(const TriDeg& d) { return (d.j + d.k) / 2; }

}  // namespace

TriComplex gaussian_eliminate(const TriComplex& c, const TriDeg& selector,
                              EliminationTrace* trace) {
    Work w;
    w.nvars = c.nvars();
    w.gens = c.gens();
    w.alive.assign(w.gens.size(), true);
    w.comps = c.components();
    const bool unconditional = selector == dplus_degree();

    while (true) {
        auto it = w.comps.find(selector);
        if (it == w.comps.end()) break;
        // Deterministic scan: increasing homological degree of the source,
        // then source id, then target id.
        int bs = -1, bt = -1;
        Int bu;
        for (const auto& [ts, p] : it->second) {
            auto [t, s] = ts;
            if (!w.alive[t] || !w.alive[s]) continue;
            if (!p.is_unit_constant()) continue;
            if (!unconditional && (w.touches_other(s, selector) || w.touches_other(t, selector)))
                continue;
            if (bs < 0 || std::make_tuple(total_degree(w.gens[s]), s, t) <
                              std::make_tuple(total_degree(w.gens[bs]), bs, bt)) {
                bs = s;
                bt = t;
                bu = p.constant_term();
            }
        }
        if (bs < 0) break;
        if (trace) trace->steps.push_back({bs, bt, bu});

        // Collect delta = entries into bt (excluding from bs), and
        // gamma = entries out of bs (excluding into bt).
        std::vector<std::pair<int, MultiPoly>> delta, gamma;
        for (const auto& [deg, mat] : w.comps) {
            (void)deg;
            for (const auto& [ts, p] : mat) {
                auto [t, s] = ts;
                if (!w.alive[t] || !w.alive[s]) continue;
                if (t == bt && s != bs) delta.emplace_back(s, p);
                if (s == bs && t != bt) gamma.emplace_back(t, p);
            }
        }
        // epsilon' = epsilon - gamma phi^{-1} delta, with phi = bu = +-1.
        for (const auto& [y, g] : gamma)
            for (const auto& [x, dl] : delta) {
                MultiPoly corr = (g * dl).scaled(-bu);  // bu^{-1} = bu
                w.add(y, x, corr, {});
            }
        w.alive[bs] = false;
        w.alive[bt] = false;
        for (auto& [deg, mat] : w.comps) {
            (void)deg;
            for (auto jt = mat.begin(); jt != mat.end();) {
                auto [t, s] = jt->first;
                if (t == bs || t == bt || s == bs || s == bt)
                    jt = mat.erase(jt);
                else
                    ++jt;
            }
        }
        for (auto jt = w.comps.begin(); jt != w.comps.end();)
            jt = jt->second.empty() ? w.comps.erase(jt) : std::next(jt);
    }

    // Compact surviving generators.
    TriComplex out(w.nvars);
    std::vector<int> remap(w.gens.size(), -1);
    for (std::size_t i = 0; i < w.gens.size(); ++i)
        if (w.alive[i]) remap[i] = out.add_gen(w.gens[i]);
    for (const auto& [deg, mat] : w.comps) {
        (void)deg;
        for (const auto& [ts, p] : mat) out.add_entry(remap[ts.first], remap[ts.second], p);
    }
    return out;
}

TriComplex simplify_complex(const TriComplex& c, EliminationTrace* trace) {
    TriComplex cur = c;
    while (true) {
        int before = cur.num_gens();
        cur = gaussian_eliminate(cur, dplus_degree(), trace);
        std::vector<TriDeg> keys;
        for (const auto& [deg, mat] : cur.components()) {
            (void)mat;
            if (!(deg == dplus_degree())) keys.push_back(deg);
        }
        for (const auto& k : keys) cur = gaussian_eliminate(cur, k, trace);
        if (cur.num_gens() == before) break;
    }
    return cur;
}

}  // namespace knothom
