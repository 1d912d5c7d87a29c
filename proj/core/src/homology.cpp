#include "knothom/homology.hpp"

#include "knothom/pool.hpp"

#include "json.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace knothom {

namespace {

void enum_rec(int nvars, int deg, int v, Monomial& cur, std::vector<Monomial>& out) {
    if (v == nvars - 1) {
        cur.e[v] = deg;
        out.push_back(cur);
        cur.e[v] = 0;
        return;
    }
    for (int d = deg; d >= 0; --d) {
        cur.e[v] = d;
        enum_rec(nvars, deg - d, v + 1, cur, out);
    }
    cur.e[v] = 0;
}

std::vector<Monomial> monomials_of_degree(int nvars, int deg) {
    std::vector<Monomial> out;
    if (deg < 0) return out;
    if (nvars == 0) {
        if (deg == 0) out.push_back(Monomial(0));
        return out;
    }
    Monomial cur(nvars);
    enum_rec(nvars, deg, 0, cur, out);
    return out;
}

struct SliceBasis {
    std::vector<std::pair<Monomial, int>> elems;
    std::map<std::pair<std::vector<int>, int>, int> index;

    int size() const { return (int)elems.size(); }
    void push(const Monomial& m, int gen) {
        index[{m.e, gen}] = (int)elems.size();
        elems.emplace_back(m, gen);
    }
    int find(const Monomial& m, int gen) const {
        auto it = index.find({m.e, gen});
        return it == index.end() ? -1 : it->second;
    }
};

using SparseVec = std::map<int, Int>;

struct SparseMat {
    int rows = 0, cols = 0;
    std::map<std::pair<int, int>, Int> a;

    void add(int r, int c, const Int& v) {
        if (v == 0) return;
        auto it = a.find({r, c});
        if (it == a.end()) {
            a.emplace(std::make_pair(r, c), v);
        } else {
            it->second += v;
            if (it->second == 0) a.erase(it);
        }
    }
};

/// Unit-entry Gaussian reduction of a chain of integer matrices, tracking
/// the homotopy equivalence: iota (retained -> ambient, sparse columns) and
/// pi (ambient -> retained, sparse rows). Exact over Z; homology and all
/// induced structure are preserved.
struct ReducedChain {
    std::vector<std::vector<int>> retained;           // ambient ids, ascending
    std::vector<std::vector<SparseVec>> iota;         // [pos][local col] ambient vector
    std::vector<std::vector<SparseVec>> pi;           // [pos][local row] ambient row
    std::vector<ZMat> maps;                           // maps[p]: retained[p] -> retained[p+1]
};

ReducedChain reduce_chain(std::vector<SparseMat> M, const std::vector<int>& dims) {
    const int P = (int)dims.size();
    std::vector<std::vector<bool>> alive(P);
    std::vector<std::vector<SparseVec>> iota(P), pi(P);
    for (int p = 0; p < P; ++p) {
        alive[p].assign(dims[p], true);
        iota[p].resize(dims[p]);
        pi[p].resize(dims[p]);
        for (int e = 0; e < dims[p]; ++e) {
            iota[p][e][e] = 1;
            pi[p][e][e] = 1;
        }
    }
    auto spaxpy = [](SparseVec& dst, const Int& f, const SparseVec& src) {
        if (f == 0) return;
        for (const auto& [i, v] : src) {
            auto it = dst.find(i);
            if (it == dst.end()) {
                dst.emplace(i, f * v);
            } else {
                it->second += f * v;
                if (it->second == 0) dst.erase(it);
            }
        }
    };

    bool progress = true;
    while (progress) {
        progress = false;
        for (int p = 0; p + 1 < P; ++p) {
            bool found = true;
            while (found) {
                found = false;
                int bs = -1, bt = -1;
                Int bu;
                for (const auto& [rc, v] : M[p].a) {
                    if (v == 1 || v == -1) {
                        bt = rc.first;
                        bs = rc.second;
                        bu = v;
                        found = true;
                        break;
                    }
                }
                if (!found) break;
                progress = true;
                // delta: row bt of M[p] (other columns); gamma: column bs.
                std::vector<std::pair<int, Int>> delta, gamma;
                for (const auto& [rc, v] : M[p].a) {
                    if (rc.first == bt && rc.second != bs) delta.emplace_back(rc.second, v);
                    if (rc.second == bs && rc.first != bt) gamma.emplace_back(rc.first, v);
                }
                for (const auto& [y, g] : gamma)
                    for (const auto& [x, d] : delta) M[p].add(y, x, -(bu * g * d));
                // Drop all entries touching bs (pos p) and bt (pos p+1).
                for (auto it = M[p].a.begin(); it != M[p].a.end();)
                    it = (it->first.first == bt || it->first.second == bs) ? M[p].a.erase(it)
                                                                           : std::next(it);
                if (p > 0)
                    for (auto it = M[p - 1].a.begin(); it != M[p - 1].a.end();)
                        it = (it->first.first == bs) ? M[p - 1].a.erase(it) : std::next(it);
                if (p + 2 < P)
                    for (auto it = M[p + 1].a.begin(); it != M[p + 1].a.end();)
                        it = (it->first.second == bt) ? M[p + 1].a.erase(it) : std::next(it);
                // iota at p: c -= u * delta_c * iota(bs); pi at p+1: y -= u * gamma_y * pi(bt).
                for (const auto& [c, d] : delta)
                    if (alive[p][c]) spaxpy(iota[p][c], -(bu * d), iota[p][bs]);
                for (const auto& [y, g] : gamma)
                    if (alive[p + 1][y]) spaxpy(pi[p + 1][y], -(bu * g), pi[p + 1][bt]);
                alive[p][bs] = false;
                alive[p + 1][bt] = false;
                iota[p][bs].clear();
                pi[p + 1][bt].clear();
            }
        }
    }

    ReducedChain rc;
    rc.retained.resize(P);
    rc.iota.resize(P);
    rc.pi.resize(P);
    std::vector<std::vector<int>> local(P);
    for (int p = 0; p < P; ++p) {
        local[p].assign(dims[p], -1);
        for (int e = 0; e < dims[p]; ++e)
            if (alive[p][e]) {
                local[p][e] = (int)rc.retained[p].size();
                rc.retained[p].push_back(e);
                rc.iota[p].push_back(std::move(iota[p][e]));
                rc.pi[p].push_back(std::move(pi[p][e]));
            }
    }
    for (int p = 0; p + 1 < P; ++p) {
        ZMat m((int)rc.retained[p + 1].size(), (int)rc.retained[p].size());
        for (const auto& [rcrd, v] : M[p].a) m.at(local[p + 1][rcrd.first], local[p][rcrd.second]) = v;
        rc.maps.push_back(std::move(m));
    }
    return rc;
}

/// Per-source-generator entry lists of one differential component.
struct GenEntries {
    std::vector<std::vector<std::pair<int, const MultiPoly*>>> out;  // [src] -> (tgt, poly)

    GenEntries(const TriComplex& c, const TriDeg& deg) {
        out.resize(c.num_gens());
        if (const PolyMat* m = c.component(deg))
            for (const auto& [ts, p] : *m) out[ts.second].emplace_back(ts.first, &p);
    }
};

struct Family {
    int s = 0, k = 0;
    std::vector<int> jpos;
    std::vector<SliceBasis> basis;
    ReducedChain rc;
    std::vector<ZMat> kernels;    // per position, reduced coordinates
    std::vector<ZMat> relations;  // per position
    bool empty = true;
};

struct SliceContext {
    const TriComplex* C = nullptr;
    std::vector<std::vector<int>> gens_at;  // [(j,k) key] generator ids
    std::map<std::pair<int, int>, int> jk_key;
    int jmin = 0, jmax = 0;
    std::vector<int> kvals;
    int genq_min = 0;

    explicit SliceContext(const TriComplex& c) : C(&c) {
        bool first = true;
        std::set<int> ks;
        for (int g = 0; g < c.num_gens(); ++g) {
            TriDeg d = c.gen(g);
            if (first) {
                jmin = jmax = d.j;
                genq_min = d.q;
                first = false;
            }
            jmin = std::min(jmin, d.j);
            jmax = std::max(jmax, d.j);
            genq_min = std::min(genq_min, d.q);
            ks.insert(d.k);
            auto key = std::make_pair(d.j, d.k);
            auto it = jk_key.find(key);
            if (it == jk_key.end()) {
                it = jk_key.emplace(key, (int)gens_at.size()).first;
                gens_at.emplace_back();
            }
            gens_at[it->second].push_back(g);
        }
        kvals.assign(ks.begin(), ks.end());
    }

    SliceBasis make_basis(int s, int k, int j) const {
        SliceBasis b;
        auto it = jk_key.find({j, k});
        if (it == jk_key.end()) return b;
        for (int g : gens_at[it->second]) {
            int twice = s + j - C->gen(g).q;
            if (twice < 0 || twice % 2 != 0) continue;
            for (const auto& m : monomials_of_degree(C->nvars(), twice / 2)) b.push(m, g);
        }
        return b;
    }
};

/// Image of one reduced-basis vector under a polynomial component, as a
/// sparse vector over the target ambient slice basis.
SparseVec apply_component(const SliceBasis& src, const SliceBasis& tgt, const GenEntries& ge,
                          const SparseVec& vec, int nvars) {
    SparseVec out;
    for (const auto& [idx, coeff] : vec) {
        const auto& [m, g] = src.elems[idx];
        for (const auto& [g2, poly] : ge.out[g]) {
            for (const auto& [pm, pc] : poly->terms()) {
                Monomial m2(nvars);
                for (int v = 0; v < nvars; ++v) m2.e[v] = m.e[v] + pm.e[v];
                int t = tgt.find(m2, g2);
                if (t < 0) throw std::logic_error("slice basis does not cover image");
                auto it = out.find(t);
                if (it == out.end()) {
                    out.emplace(t, coeff * pc);
                } else {
                    it->second += coeff * pc;
                    if (it->second == 0) out.erase(it);
                }
            }
        }
    }
    return out;
}

}  // namespace

IntComplex slice(const TriComplex& c, int q0, bool horizontal) {
    IntComplex ic;
    if (c.num_gens() == 0) return ic;
    SliceContext ctx(c);
    const TriDeg dir = horizontal ? dplus_degree() : dv_degree();
    GenEntries ge(c, dir);
    std::set<int> positions;
    for (int g = 0; g < c.num_gens(); ++g)
        positions.insert(horizontal ? c.gen(g).j : c.gen(g).k);
    int pmin = *positions.begin(), pmax = *positions.rbegin();
    std::vector<SliceBasis> bases;
    for (int p = pmin; p <= pmax; p += 2) {
        ic.position.push_back(p);
        SliceBasis b;
        if (horizontal) {
            // Element quantum degree runs along the d_plus diagonal.
            int q = q0 + (p - pmin);
            for (int k : ctx.kvals) {
                SliceBasis part = ctx.make_basis(q - p, k, p);
                for (const auto& [m, g] : part.elems) b.push(m, g);
            }
        } else {
            // Vertical: fixed element degree q0, position = k.
            for (const auto& [jk, idx] : ctx.jk_key) {
                (void)idx;
                if (jk.second != p) continue;
                SliceBasis part = ctx.make_basis(q0 - jk.first, p, jk.first);
                for (const auto& [m, g] : part.elems) b.push(m, g);
            }
        }
        bases.push_back(std::move(b));
    }
    for (std::size_t i = 0; i + 1 < bases.size(); ++i) {
        ZMat m(bases[i + 1].size(), bases[i].size());
        for (int col = 0; col < bases[i].size(); ++col) {
            SparseVec v{{col, Int(1)}};
            SparseVec w = apply_component(bases[i], bases[i + 1], ge, v, c.nvars());
            for (const auto& [r, val] : w) m.at(r, col) = val;
        }
        ic.maps.push_back(std::move(m));
    }
    for (auto& b : bases) ic.basis.push_back(std::move(b.elems));
    return ic;
}

bool slice_euler_consistent(const TriComplex& c, int q0) {
    IntComplex ic = slice(c, q0, true);
    long long lhs = 0, rhs = 0;
    std::vector<int> ranks;
    for (const auto& m : ic.maps) ranks.push_back(hnf_cols(m, false).rank);
    for (std::size_t p = 0; p < ic.basis.size(); ++p) {
        int dim = (int)ic.basis[p].size();
        int rout = p < ic.maps.size() ? ranks[p] : 0;
        int rin = p > 0 ? ranks[p - 1] : 0;
        int sign = (p % 2 == 0) ? 1 : -1;
        lhs += sign * dim;
        rhs += sign * (dim - rout - rin);
    }
    return lhs == rhs;
}

DplusHomology dplus_homology(const TriComplex& c, const HomologyOptions& opt,
                             int potential_degree) {
    DplusHomology H;
    H.window = opt.window;
    H.dminus_qstep = potential_degree > 0 ? 2 * potential_degree - 2 : 0;
    if (c.num_gens() == 0) return H;

    SliceContext ctx(c);
    GenEntries dplus(c, dplus_degree());
    GenEntries dv(c, dv_degree());
    GenEntries dminus(c, dminus_degree(potential_degree > 0 ? potential_degree : 1));

    const int smin = opt.window.qmin - ctx.jmax;
    const int smax = opt.window.qmax - ctx.jmin;

    std::vector<std::pair<int, int>> fam_keys;  // (s, k)
    for (int k : ctx.kvals)
        for (int s = smin; s <= smax; ++s) fam_keys.emplace_back(s, k);
    std::map<std::pair<int, int>, int> fam_index;
    for (std::size_t i = 0; i < fam_keys.size(); ++i) fam_index[fam_keys[i]] = (int)i;

    std::vector<Family> fams(fam_keys.size());
    parallel_for((int)fams.size(), opt.threads, [&](int fi) {
        Family& f = fams[fi];
        f.s = fam_keys[fi].first;
        f.k = fam_keys[fi].second;
        for (int j = ctx.jmin; j <= ctx.jmax; j += 2) f.jpos.push_back(j);
        std::vector<int> dims;
        for (int j : f.jpos) {
            f.basis.push_back(ctx.make_basis(f.s, f.k, j));
            dims.push_back(f.basis.back().size());
            if (dims.back() > 0) f.empty = false;
        }
        if (f.empty) return;
        std::vector<SparseMat> mats;
        for (std::size_t p = 0; p + 1 < f.basis.size(); ++p) {
            SparseMat m;
            m.rows = f.basis[p + 1].size();
            m.cols = f.basis[p].size();
            for (int col = 0; col < f.basis[p].size(); ++col) {
                SparseVec v{{col, Int(1)}};
                for (const auto& [r, val] :
                     apply_component(f.basis[p], f.basis[p + 1], dplus, v, c.nvars()))
                    m.add(r, col, val);
            }
            mats.push_back(std::move(m));
        }
        f.rc = reduce_chain(std::move(mats), dims);
        for (std::size_t p = 0; p < f.jpos.size(); ++p) {
            int dim = (int)f.rc.retained[p].size();
            ZMat out = p + 1 < f.jpos.size() ? f.rc.maps[p] : ZMat(0, dim);
            ZMat ker = kernel_basis(out);
            ZMat rel(ker.cols(), 0);
            if (p > 0 && f.rc.maps[p - 1].cols() > 0) {
                auto sol = solve_columns(ker, f.rc.maps[p - 1]);
                if (!sol) throw CertificateError("incoming d_plus image escapes kernel");
                rel = *sol;
            }
            f.kernels.push_back(std::move(ker));
            f.relations.push_back(std::move(rel));
        }
    });

    // Nodes.
    for (const auto& f : fams) {
        if (f.empty) continue;
        for (std::size_t p = 0; p < f.jpos.size(); ++p) {
            int j = f.jpos[p];
            TriDeg d{f.s + j, j, f.k};
            if (d.q < opt.window.qmin || d.q > opt.window.qmax) continue;
            if (f.basis[p].size() == 0) continue;
            DplusNode node;
            node.ambient = f.basis[p].size();
            node.kernel = f.kernels[p];
            node.relations = f.relations[p];
            H.nodes.emplace(d, std::move(node));
        }
    }

    // Induced maps. For a kernel column z (reduced coords): lift via iota,
    // push through the polynomial component, project via pi, and express in
    // the target kernel basis. Certificates: expression must exist and must
    // carry relations into relations.
    struct MapJob {
        TriDeg src;
        const GenEntries* ge;
        int fi_src, p_src, fi_tgt, p_tgt;
        bool minus;
    };
    std::vector<MapJob> jobs;
    for (const auto& [d, node] : H.nodes) {
        if (node.gens() == 0) continue;
        int fi_src = fam_index.at({d.q - d.j, d.k});
        int p_src = (d.j - ctx.jmin) / 2;
        // d_v*: (q, j, k) -> (q, j, k+2)
        auto t1 = fam_index.find({d.q - d.j, d.k + 2});
        if (t1 != fam_index.end() && !fams[t1->second].empty)
            jobs.push_back({d, &dv, fi_src, p_src, t1->second, p_src, false});
        // d_minus*: (q, j, k) -> (q + 2n, j-2, k)
        if (potential_degree > 0 && d.j - 2 >= ctx.jmin) {
            auto t2 = fam_index.find({d.q + H.dminus_qstep - (d.j - 2), d.k});
            if (t2 != fam_index.end() && !fams[t2->second].empty)
                jobs.push_back({d, &dminus, fi_src, p_src, t2->second, p_src - 1, true});
        }
    }
    std::vector<std::pair<TriDeg, ZMat>> dv_out(jobs.size()), dm_out(jobs.size());
    std::vector<int> kind(jobs.size(), -1);
    parallel_for((int)jobs.size(), opt.threads, [&](int ji) {
        const MapJob& job = jobs[ji];
        const Family& fs = fams[job.fi_src];
        const Family& ft = fams[job.fi_tgt];
        const DplusNode& src = H.nodes.at(job.src);
        if (job.p_tgt < 0 || job.p_tgt >= (int)ft.jpos.size()) return;
        const SliceBasis& sb = fs.basis[job.p_src];
        const SliceBasis& tb = ft.basis[job.p_tgt];
        const ZMat& K2 = ft.kernels[job.p_tgt];
        ZMat Z(K2.rows(), src.gens());
        for (int col = 0; col < src.gens(); ++col) {
            // reduced kernel column -> ambient
            SparseVec amb;
            for (int r = 0; r < src.kernel.rows(); ++r) {
                const Int& v = src.kernel.at(r, col);
                if (v == 0) continue;
                for (const auto& [i, w] : fs.rc.iota[job.p_src][r]) {
                    auto it = amb.find(i);
                    if (it == amb.end()) {
                        amb.emplace(i, v * w);
                    } else {
                        it->second += v * w;
                        if (it->second == 0) amb.erase(it);
                    }
                }
            }
            SparseVec img = apply_component(sb, tb, *job.ge, amb, c.nvars());
            for (int r = 0; r < K2.rows(); ++r) {
                Int acc = 0;
                for (const auto& [i, w] : ft.rc.pi[job.p_tgt][r]) {
                    auto it = img.find(i);
                    if (it != img.end()) acc += w * it->second;
                }
                Z.at(r, col) = acc;
            }
        }
        auto U = solve_columns(K2, Z);
        if (!U) throw CertificateError("induced map does not preserve kernels");
        const ZMat& relT = ft.relations[job.p_tgt];
        if (!lattice_contains(relT, U->mul(src.relations)))
            throw CertificateError("induced map does not preserve relations");
        if (!job.minus) {
            dv_out[ji] = {job.src, std::move(*U)};
            kind[ji] = 0;
        } else {
            dm_out[ji] = {job.src, std::move(*U)};
            kind[ji] = 1;
        }
    });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (kind[i] == 0) H.dv.emplace(dv_out[i].first, std::move(dv_out[i].second));
        if (kind[i] == 1) H.dminus.emplace(dm_out[i].first, std::move(dm_out[i].second));
    }
    return H;
}

FgGroup presented_homology(const DplusNode* prev, const ZMat* into, const DplusNode& mid,
                           const ZMat* out, const DplusNode* next) {
    if (mid.gens() == 0) return {};
    ZMat out0 = (out && next) ? *out : ZMat(0, mid.gens());
    ZMat relN = (out && next) ? next->relations : ZMat(0, 0);
    if (out && next && out0.rows() != next->gens())
        throw std::logic_error("presented_homology: dimension mismatch");
    ZMat P = preimage_lattice(out0, relN);
    ZMat S = mid.relations;
    if (into && prev) S = into->hstack(mid.relations);
    return quotient_group(P, S);
}

HomologyTable iterated_homology(const DplusHomology& h, const TriDeg& shift) {
    HomologyTable t;
    t.window = {h.window.qmin + shift.q, h.window.qmax + shift.q};
    for (const auto& [d, node] : h.nodes) {
        if (node.gens() == 0) continue;
        TriDeg up{d.q, d.j, d.k + 2}, down{d.q, d.j, d.k - 2};
        const DplusNode* next = h.node(up);
        const DplusNode* prev = h.node(down);
        const ZMat* out = nullptr;
        const ZMat* into = nullptr;
        auto it1 = h.dv.find(d);
        if (it1 != h.dv.end()) out = &it1->second;
        auto it2 = h.dv.find(down);
        if (it2 != h.dv.end()) into = &it2->second;
        // Certificate: consecutive induced maps compose into relations.
        if (into && out && next)
            if (!lattice_contains(next->relations, out->mul(*into)))
                throw CertificateError("d_v* does not square to zero on homology");
        FgGroup g = presented_homology(prev, into, node, out, next);
        if (!g.is_zero()) t.entries.emplace(d + shift, g);
    }
    int lo = t.window.qmin, hi = t.window.qmax;
    t.complete = true;
    for (const auto& [d, g] : t.entries) {
        (void)g;
        if (d.q <= lo + 2 || d.q >= hi - 2) t.complete = false;
    }
    return t;
}

std::string table_to_json(const HomologyTable& t) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [d, g] : t.entries) {
        nlohmann::json e;
        e["q"] = d.q;
        e["j"] = d.j;
        e["k"] = d.k;
        e["rank"] = g.free_rank;
        e["torsion"] = nlohmann::json::array();
        for (const auto& x : g.torsion) e["torsion"].push_back(x.str());
        arr.push_back(e);
    }
    return arr.dump();
}

HomologyTable table_from_json(const std::string& s) {
    HomologyTable t;
    nlohmann::json arr = nlohmann::json::parse(s);
    for (const auto& e : arr) {
        TriDeg d{e.at("q").get<int>(), e.at("j").get<int>(), e.at("k").get<int>()};
        FgGroup g;
        g.free_rank = e.at("rank").get<long long>();
        for (const auto& x : e.at("torsion")) g.torsion.push_back(Int(x.get<std::string>()));
        t.entries.emplace(d, g);
    }
    return t;
}

std::string table_to_text(const HomologyTable& t) {
    std::ostringstream os;
    os << "  q    j    k   group\n";
    for (const auto& [d, g] : t.entries) {
        os.width(4);
        os << d.q;
        os.width(5);
        os << d.j;
        os.width(5);
        os << d.k;
        os << "   " << g.to_string() << "\n";
    }
    if (t.entries.empty()) os << "  (empty)\n";
    return os.str();
}

}  // namespace knothom
