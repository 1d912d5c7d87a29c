#include "knothom/complex.hpp"

#include <algorithm>
#include <sstream>

namespace knothom {

std::string TriDeg::to_string() const {
    std::ostringstream os;
    os << "(" << q << "," << j << "," << k << ")";
    return os.str();
}

TriComplex TriComplex::unit(int nvars) {
    TriComplex c(nvars);
    c.add_gen({0, 0, 0});
    return c;
}

const PolyMat* TriComplex::component(const TriDeg& d) const {
    auto it = comps_.find(d);
    return it == comps_.end() ? nullptr : &it->second;
}

int TriComplex::add_gen(const TriDeg& d) {
    gens_.push_back(d);
    return (int)gens_.size() - 1;
}

void TriComplex::add_entry(int target, int source, const MultiPoly& entry) {
    if (entry.is_zero()) return;
    if (!entry.is_homogeneous())
        throw std::logic_error("add_entry: inhomogeneous entry " + entry.to_string());
    TriDeg d = gens_[target] - gens_[source];
    d.q += entry.qdegree();
    auto& cell = comps_[d][{target, source}];
    if (cell.nvars() != nvars_) cell = MultiPoly(nvars_);
    cell += entry;
    if (cell.is_zero()) comps_[d].erase({target, source});
}

void TriComplex::map_entries(const std::function<MultiPoly(const MultiPoly&)>& f, int new_nvars) {
    std::map<TriDeg, PolyMat> out;
    for (const auto& [deg, mat] : comps_) {
        PolyMat m;
        for (const auto& [ts, p] : mat) {
            MultiPoly q = f(p);
            if (q.is_zero()) continue;
            if (!q.is_homogeneous() || q.qdegree() != p.qdegree())
                throw std::logic_error("map_entries: degree not preserved");
            m.emplace(ts, std::move(q));
        }
        if (!m.empty()) out.emplace(deg, std::move(m));
    }
    comps_ = std::move(out);
    nvars_ = new_nvars;
}

void TriComplex::shift_all(const TriDeg& s) {
    for (auto& g : gens_) g = g + s;
}

std::string TriComplex::dump() const {
    std::ostringstream os;
    os << "generators (" << gens_.size() << "):\n";
    for (std::size_t i = 0; i < gens_.size(); ++i)
        os << "  g" << i << " " << gens_[i].to_string() << "\n";
    for (const auto& [deg, mat] : comps_) {
        os << "differential " << deg.to_string() << ":\n";
        for (const auto& [ts, p] : mat)
            os << "  g" << ts.second << " -> g" << ts.first << " : " << p.to_string() << "\n";
    }
    return os.str();
}

namespace {

int parity(const TriDeg& d) {
    if ((d.j + d.k) % 2 != 0) throw std::logic_error("tensor parity needs even j+k");
    int h = (d.j + d.k) / 2;
    return ((h % 2) + 2) % 2;
}

}  // namespace

TriComplex tensor(const TriComplex& a, const TriComplex& b) {
    if (a.nvars() != b.nvars()) throw std::logic_error("tensor: variable sets differ");
    TriComplex c(a.nvars());
    const int nb = b.num_gens();
    for (int ia = 0; ia < a.num_gens(); ++ia)
        for (int ib = 0; ib < nb; ++ib) c.add_gen(a.gen(ia) + b.gen(ib));
    for (const auto& [deg, mat] : a.components()) {
        (void)deg;
        for (const auto& [ts, p] : mat)
            for (int ib = 0; ib < nb; ++ib)
                c.add_entry(ts.first * nb + ib, ts.second * nb + ib, p);
    }
    for (const auto& [deg, mat] : b.components()) {
        (void)deg;
        for (const auto& [ts, p] : mat)
            for (int ia = 0; ia < a.num_gens(); ++ia) {
                MultiPoly e = parity(a.gen(ia)) ? -p : p;
                c.add_entry(ia * nb + ts.first, ia * nb + ts.second, e);
            }
    }
    return c;
}

TriComplex crossing_complex_entries(int sign, int nvars, const MultiPoly& u, const MultiPoly& v,
                                    const MultiPoly* pi, const MultiPoly* pij) {
    TriComplex c(nvars);
    MultiPoly uv = u * v;
    if (sign > 0) {
        int A = c.add_gen({0, -2, 0});
        int B = c.add_gen({0, 0, 0});
        int C = c.add_gen({2, -2, -2});
        int D = c.add_gen({0, 0, -2});
        c.add_entry(B, A, u);
        c.add_entry(D, C, -uv);
        // d_v twisted by (-1)^{gr_h(source)} so the three differentials
        // anticommute: left column flips sign relative to the bare square.
        c.add_entry(A, C, v);
        c.add_entry(B, D, MultiPoly::constant(nvars, 1));
        if (pi) {
            c.add_entry(A, B, *pi);
            c.add_entry(C, D, *pij);
        }
    } else {
        int A = c.add_gen({0, -2, 2});
        int B = c.add_gen({-2, 0, 2});
        int C = c.add_gen({0, -2, 0});
        int D = c.add_gen({0, 0, 0});
        c.add_entry(B, A, -uv);
        c.add_entry(D, C, u);
        c.add_entry(A, C, MultiPoly::constant(nvars, -1));
        c.add_entry(B, D, -v);
        if (pi) {
            c.add_entry(A, B, *pij);
            c.add_entry(C, D, *pi);
        }
    }
    return c;
}

TriComplex crossing_complex(int sign, int nvars, int vi, int vj, int vk, const Potential* p) {
    MultiPoly u = MultiPoly::linear(nvars, {{vk, 1}, {vi, -1}});
    MultiPoly v = MultiPoly::linear(nvars, {{vk, 1}, {vj, -1}});
    if (!p) return crossing_complex_entries(sign, nvars, u, v, nullptr, nullptr);
    PotentialData pd = potential_data(*p, nvars, vi, vj, vk);
    return crossing_complex_entries(sign, nvars, u, v, &pd.p_i, &pd.p_ij);
}

namespace {

TriComplex two_term_factor(int nvars, const TriDeg& theta, const MultiPoly& f,
                           const MultiPoly* back) {
    TriComplex c(nvars);
    int t = c.add_gen(theta);
    int e = c.add_gen({0, 0, 0});
    c.add_entry(e, t, f);
    if (back) c.add_entry(t, e, *back);
    return c;
}

}  // namespace

TriComplex koszul_factor(int nvars, const MultiPoly& f, const MultiPoly* back) {
    return two_term_factor(nvars, {0, -2, 0}, f, back);
}

TriDeg overall_shift(int writhe, int strands, bool reduced) {
    int w = writhe, b = strands;
    if (reduced) return {-w + b - 1, w + b - 1, w - b + 1};
    return {-w + b, w + b - 1, w - b + 1};
}

namespace {

/// Exact linear elimination over the open segment variables. Every imposed
/// relation must have a +-1 pivot (guaranteed here: the relation system is
/// an incidence-type totally unimodular family).
class Elim {
public:
    explicit Elim(int n) : n_(n), expr_(n), free_(n, true) {
        for (int v = 0; v < n; ++v) expr_[v] = {{v, Int(1)}};
    }

    LinForm reduce(const LinForm& f) const {
        LinForm out;
        for (const auto& [v, c] : f)
            for (const auto& [w, cc] : expr_[v]) out.emplace_back(w, c * cc);
        return normalize_form(out);
    }

    /// Impose f == 0. Returns false when f already reduces to zero.
    bool impose(const LinForm& f, int preferred_pivot = -1) {
        LinForm r = reduce(f);
        if (r.empty()) return false;
        int pivot = -1;
        Int pc;
        for (const auto& [v, c] : r)
            if (v == preferred_pivot && (c == 1 || c == -1)) {
                pivot = v;
                pc = c;
            }
        if (pivot < 0)
            for (const auto& [v, c] : r)
                if (c == 1 || c == -1) {
                    pivot = v;
                    pc = c;
                    break;
                }
        if (pivot < 0) throw std::logic_error("edge relation lacks a unimodular pivot");
        LinForm rest;
        for (const auto& [v, c] : r)
            if (v != pivot) rest.emplace_back(v, -pc * c);
        rest = normalize_form(rest);
        for (int v = 0; v < n_; ++v) {
            LinForm ne;
            for (const auto& [w, c] : expr_[v]) {
                if (w == pivot)
                    for (const auto& [u, cc] : rest) ne.emplace_back(u, c * cc);
                else
                    ne.emplace_back(w, c);
            }
            expr_[v] = normalize_form(ne);
        }
        free_[pivot] = false;
        return true;
    }

    bool is_free(int v) const { return free_[v]; }
    int n() const { return n_; }

private:
    int n_;
    std::vector<LinForm> expr_;
    std::vector<bool> free_;
};

struct ClosureResult {
    Elim elim;
    std::vector<int> dense;       // original segment var -> final var (or -1)
    int nfinal = 0;
    std::vector<int> factors;     // strand positions carrying Koszul factors
    int deficiency = 0;
};

/// Type-II substitutions plus the rank-independent closure identifications.
/// Rank-deficient closure directions are returned as factor positions; one
/// sum-dependency is dropped (on the marked component when drop_last).
ClosureResult close_ring(const ClosedDiagram& d, bool drop_last) {
    ClosureResult res{Elim(d.num_segments), {}, 0, {}, 0};
    Elim& elim = res.elim;
    for (const auto& c : d.crossings) {
        LinForm rel{{c.out[0], 1}, {c.out[1], 1}, {c.in[0], -1}, {c.in[1], -1}};
        if (!elim.impose(rel, c.out[1]))
            throw std::logic_error("degenerate type-II relation on open braid");
    }
    int mark_comp = d.seg_component.empty() ? 0 : d.edge_component(d.marked_edge);
    std::vector<int> order;
    for (int p = 0; p < d.strands; ++p)
        if (d.seg_component[p] != mark_comp) order.push_back(p);
    for (int p = 0; p < d.strands; ++p)
        if (d.seg_component[p] == mark_comp) order.push_back(p);
    std::vector<int> recorded;
    for (int p : order) {
        LinForm f{{d.closure[p].second, 1}, {d.closure[p].first, -1}};
        if (!elim.impose(f)) recorded.push_back(p);
    }
    if (recorded.empty()) throw std::logic_error("closure sum dependency missing");
    if (drop_last) recorded.pop_back();
    res.factors = recorded;
    res.deficiency = (int)recorded.size();
    res.dense.assign(d.num_segments, -1);
    for (int v = 0; v < d.num_segments; ++v)
        if (elim.is_free(v)) res.dense[v] = res.nfinal++;
    return res;
}

LinForm dense_form(const ClosureResult& cr, int seg) {
    LinForm f = cr.elim.reduce({{seg, Int(1)}});
    for (auto& [v, c] : f) v = cr.dense[v];
    return f;
}

void fill_ring_info(Assembled& a, const ClosureResult& cr) {
    const ClosedDiagram& d = a.diag;
    a.var_names.assign(cr.nfinal, "");
    for (int s = 0; s < d.num_segments; ++s)
        if (cr.dense[s] >= 0) a.var_names[cr.dense[s]] = "x" + std::to_string(d.seg_edge[s]);
    a.edge_form.assign(d.num_edges, {});
    std::vector<int> rep(d.num_edges, -1);
    for (int s = d.num_segments - 1; s >= 0; --s) rep[d.seg_edge[s]] = s;
    for (int e = 0; e < d.num_edges; ++e) a.edge_form[e] = dense_form(cr, rep[e]);
    a.deficiency = cr.deficiency;
}

}  // namespace

Assembled assemble(const ClosedDiagram& d, const Potential* p) {
    Assembled a;
    a.diag = d;
    a.potential_degree = p ? std::max(p->degree(), 0) : 0;
    ClosureResult cr = close_ring(d, /*drop_last=*/true);
    const int nv = cr.nfinal;

    PotentialData pd3;
    MultiPoly dd2;
    if (p) {
        pd3 = potential_data(*p, 3, 0, 1, 2);
        dd2 = divided_difference(*p, 2, 0, 1);
    }

    TriComplex C = TriComplex::unit(nv);
    for (const auto& c : d.crossings) {
        LinForm fi = dense_form(cr, c.in[0]);
        LinForm fj = dense_form(cr, c.in[1]);
        LinForm fk = dense_form(cr, c.out[0]);
        MultiPoly u = MultiPoly::linear(nv, form_sub(fk, fi));
        MultiPoly v = MultiPoly::linear(nv, form_sub(fk, fj));
        TriComplex piece;
        if (p) {
            MultiPoly pi = eval_at_forms(pd3.p_i, {fi, fj, fk}, nv);
            MultiPoly pij = eval_at_forms(pd3.p_ij, {fi, fj, fk}, nv);
            piece = crossing_complex_entries(c.sign, nv, u, v, &pi, &pij);
        } else {
            piece = crossing_complex_entries(c.sign, nv, u, v, nullptr, nullptr);
        }
        C = tensor(C, piece);
    }
    for (int pos : cr.factors) {
        MultiPoly f(nv);  // identification already holds, the arrow is zero
        if (p) {
            MultiPoly back =
                -eval_at_forms(dd2, {dense_form(cr, d.closure[pos].second),
                                     dense_form(cr, d.closure[pos].first)}, nv);
            C = tensor(C, koszul_factor(nv, f, &back));
        } else {
            C = tensor(C, koszul_factor(nv, f, nullptr));
        }
    }
    a.C = std::move(C);
    fill_ring_info(a, cr);
    return a;
}

Assembled assemble_resolution(const ClosedDiagram& d, const std::vector<int>& choice,
                              bool for_hochschild) {
    if (choice.size() != d.crossings.size())
        throw std::logic_error("resolution choice size mismatch");
    Assembled a;
    a.diag = d;
    ClosureResult cr = close_ring(d, /*drop_last=*/!for_hochschild);
    const int nv = cr.nfinal;
    TriComplex C = TriComplex::unit(nv);
    for (std::size_t ci = 0; ci < d.crossings.size(); ++ci) {
        const auto& c = d.crossings[ci];
        LinForm fi = dense_form(cr, c.in[0]);
        LinForm fj = dense_form(cr, c.in[1]);
        LinForm fk = dense_form(cr, c.out[0]);
        MultiPoly u = MultiPoly::linear(nv, form_sub(fk, fi));
        MultiPoly v = MultiPoly::linear(nv, form_sub(fk, fj));
        TriComplex piece = choice[ci] == 0
                               ? two_term_factor(nv, {0, -2, 0}, u, nullptr)
                               : two_term_factor(nv, {2, -2, 0}, -(u * v), nullptr);
        C = tensor(C, piece);
    }
    for (std::size_t i = 0; i < cr.factors.size(); ++i)
        C = tensor(C, koszul_factor(nv, MultiPoly(nv), nullptr));
    a.C = std::move(C);
    fill_ring_info(a, cr);
    return a;
}

void reduce_at_mark(Assembled& a) { reduce_at_mark(a, a.diag.marked_edge); }

void reduce_at_mark(Assembled& a, int edge) {
    if (a.reduced) throw std::logic_error("complex already reduced");
    if (edge < 0 || edge >= (int)a.edge_form.size())
        throw std::out_of_range("reduce_at_mark: unknown edge");
    LinForm f = a.edge_form[edge];
    if (f.empty()) throw std::logic_error("marked edge variable already zero");
    int pivot = -1;
    Int pc;
    for (const auto& [v, c] : f)
        if (c == 1 || c == -1) {
            pivot = v;
            pc = c;
            break;
        }
    if (pivot < 0) throw std::logic_error("marked edge form lacks unit pivot");
    LinForm rest;
    for (const auto& [v, c] : f)
        if (v != pivot) rest.emplace_back(v, -pc * c);
    rest = normalize_form(rest);

    const int nv = a.C.nvars();
    std::vector<int> remap(nv);
    int nv2 = 0;
    for (int v = 0; v < nv; ++v) remap[v] = (v == pivot) ? -1 : nv2++;
    LinForm rest_dense;
    for (const auto& [v, c] : rest) rest_dense.emplace_back(remap[v], c);

    a.C.map_entries(
        [&](const MultiPoly& p) {
            return p.substitute_linear(pivot, rest).remap_vars(remap, nv2);
        },
        nv2);
    for (auto& form : a.edge_form) {
        LinForm nf;
        for (const auto& [v, c] : form) {
            if (v == pivot)
                for (const auto& [w, cc] : rest_dense) nf.emplace_back(w, c * cc);
            else
                nf.emplace_back(remap[v], c);
        }
        form = normalize_form(nf);
    }
    std::vector<std::string> names;
    for (int v = 0; v < nv; ++v)
        if (v != pivot) names.push_back(a.var_names[v]);
    a.var_names = std::move(names);
    a.reduced = true;
}

std::map<TriDeg, PolyMat> square_components(const TriComplex& c) {
    std::map<TriDeg, PolyMat> out;
    const auto& comps = c.components();
    for (const auto& [d1, m1] : comps)
        for (const auto& [d2, m2] : comps) {
            TriDeg d = d1 + d2;
            for (const auto& [ts1, p1] : m1)
                for (const auto& [ts2, p2] : m2) {
                    if (ts1.second != ts2.first) continue;
                    auto key = std::make_pair(ts1.first, ts2.second);
                    auto& cell = out[d][key];
                    if (cell.nvars() != c.nvars()) cell = MultiPoly(c.nvars());
                    cell += p1 * p2;
                }
        }
    for (auto it = out.begin(); it != out.end();) {
        auto& mat = it->second;
        for (auto jt = mat.begin(); jt != mat.end();)
            jt = jt->second.is_zero() ? mat.erase(jt) : std::next(jt);
        it = mat.empty() ? out.erase(it) : std::next(it);
    }
    return out;
}

IdentityReport verify_closed(const TriComplex& c) {
    auto sq = square_components(c);
    if (sq.empty()) return {true, ""};
    const auto& [deg, mat] = *sq.begin();
    const auto& [ts, p] = *mat.begin();
    return {false, "D^2 != 0 at degree " + deg.to_string() + " entry g" +
                       std::to_string(ts.second) + "->g" + std::to_string(ts.first) + ": " +
                       p.to_string()};
}

IdentityReport verify_open(const TriComplex& c, const MultiPoly& W) {
    auto sq = square_components(c);
    if (W.is_zero()) return verify_closed(c);
    TriDeg wdeg{W.qdegree(), 0, 0};
    for (const auto& [deg, mat] : sq) {
        if (!(deg == wdeg))
            return {false, "unexpected D^2 component at " + deg.to_string()};
        for (const auto& [ts, p] : mat) {
            if (ts.first != ts.second)
                return {false, "off-diagonal D^2 entry"};
            if (!(p == W)) return {false, "diagonal D^2 entry differs from potential"};
        }
        if ((int)mat.size() != c.num_gens())
            return {false, "D^2 diagonal incomplete"};
    }
    if (sq.empty()) return {false, "D^2 vanished but potential is nonzero"};
    return {true, ""};
}

IdentityReport verify_homogeneous(const TriComplex& c) {
    for (const auto& [deg, mat] : c.components())
        for (const auto& [ts, p] : mat) {
            if (!p.is_homogeneous()) return {false, "inhomogeneous entry"};
            TriDeg d = c.gen(ts.first) - c.gen(ts.second);
            d.q += p.qdegree();
            if (!(d == deg)) return {false, "entry degree mismatch"};
        }
    return {true, ""};
}

}  // namespace knothom
