#include "knothom/zmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace knothom {

ZMat ZMat::identity(int n) {
    ZMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool ZMat::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

ZMat ZMat::mul(const ZMat& o) const {
    ZMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Int& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Int& w = o.at(k, j);
                if (w != 0) r.at(i, j) += v * w;
            }
        }
    return r;
}

ZMat ZMat::hstack(const ZMat& o) const {
    ZMat r(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
    }
    return r;
}

ZMat ZMat::top_rows(int n) const {
    ZMat r(n, cols_);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    return r;
}

ZMat ZMat::col(int c) const {
    ZMat r(rows_, 1);
    for (int i = 0; i < rows_; ++i) r.at(i, 0) = at(i, c);
    return r;
}

void ZMat::swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

void ZMat::negate_col(int i) {
    for (int r = 0; r < rows_; ++r) at(r, i) = -at(r, i);
}

void ZMat::addmul_col(int j, int i, const Int& f) {
    if (f == 0) return;
    for (int r = 0; r < rows_; ++r) at(r, j) += f * at(r, i);
}

namespace {

// Floor division rounding toward -inf keeps remainders in [0, |b|).
Int fdiv(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

ColHnf hnf_cols(const ZMat& M, bool need_U) {
    ColHnf res;
    res.H = M;
    if (need_U) res.U = ZMat::identity(M.cols());
    ZMat& H = res.H;
    ZMat& U = res.U;
    int m = M.rows(), n = M.cols();
    int cur = 0;
    auto colop_addmul = [&](int j, int i, const Int& f) {
        H.addmul_col(j, i, f);
        if (need_U) U.addmul_col(j, i, f);
    };
    auto colop_swap = [&](int i, int j) {
        H.swap_cols(i, j);
        if (need_U) U.swap_cols(i, j);
    };
    auto colop_neg = [&](int i) {
        H.negate_col(i);
        if (need_U) U.negate_col(i);
    };
    for (int r = 0; r < m && cur < n; ++r) {
        // Reduce row r across columns cur..n-1 to a single positive pivot,
        // always pivoting on the smallest magnitude to limit growth.
        while (true) {
            int piv = -1;
            for (int c = cur; c < n; ++c) {
                if (H.at(r, c) == 0) continue;
                if (piv < 0 || abs(H.at(r, c)) < abs(H.at(r, piv))) piv = c;
            }
            if (piv < 0) break;  // row r is zero in the active block
            colop_swap(cur, piv);
            bool clean = true;
            for (int c = cur + 1; c < n; ++c) {
                if (H.at(r, c) == 0) continue;
                Int q = fdiv(H.at(r, c), H.at(r, cur));
                colop_addmul(c, cur, -q);
                if (H.at(r, c) != 0) clean = false;
            }
            if (clean) {
                if (H.at(r, cur) < 0) colop_neg(cur);
                // Canonical form: entries left of the pivot reduced mod pivot.
                for (int c = 0; c < cur; ++c) {
                    Int q = fdiv(H.at(r, c), H.at(r, cur));
                    colop_addmul(c, cur, -q);
                }
                res.pivot_row.push_back(r);
                ++cur;
                break;
            }
        }
    }
    res.rank = cur;
    return res;
}

ZMat kernel_basis(const ZMat& M) {
    ColHnf h = hnf_cols(M, true);
    int n = M.cols();
    ZMat K(n, n - h.rank);
    for (int c = h.rank; c < n; ++c)
        for (int r = 0; r < n; ++r) K.at(r, c - h.rank) = h.U.at(r, c);
    return K;
}

ZMat lattice_hnf(const ZMat& G) {
    ColHnf h = hnf_cols(G, false);
    ZMat B(G.rows(), h.rank);
    for (int c = 0; c < h.rank; ++c)
        for (int r = 0; r < G.rows(); ++r) B.at(r, c) = h.H.at(r, c);
    return B;
}

std::optional<ZMat> solve_columns(const ZMat& B, const ZMat& Y) {
    ColHnf h = hnf_cols(B, true);
    ZMat X(B.cols(), Y.cols());
    for (int yc = 0; yc < Y.cols(); ++yc) {
        std::vector<Int> y(B.rows());
        for (int r = 0; r < B.rows(); ++r) y[r] = Y.at(r, yc);
        std::vector<Int> z(B.cols(), 0);
        for (int c = 0; c < h.rank; ++c) {
            int pr = h.pivot_row[c];
            const Int& d = h.H.at(pr, c);
            if (y[pr] % d != 0) return std::nullopt;
            Int q = y[pr] / d;
            z[c] = q;
            if (q != 0)
                for (int r = 0; r < B.rows(); ++r) y[r] -= q * h.H.at(r, c);
        }
        for (int r = 0; r < B.rows(); ++r)
            if (y[r] != 0) return std::nullopt;
        for (int r = 0; r < B.cols(); ++r) {
            Int acc = 0;
            for (int c = 0; c < h.rank; ++c)
                if (z[c] != 0) acc += h.U.at(r, c) * z[c];
            X.at(r, yc) = acc;
        }
    }
    return X;
}

bool lattice_contains(const ZMat& B, const ZMat& Y) {
    return solve_columns(B, Y).has_value();
}

ZMat preimage_lattice(const ZMat& M, const ZMat& L) {
    // {x : Mx = Lt for some t}  =  projection of ker[M | -L] on the x block.
    ZMat neg = L;
    for (int c = 0; c < neg.cols(); ++c) neg.negate_col(c);
    ZMat K = kernel_basis(M.hstack(neg));
    return lattice_hnf(K.top_rows(M.cols()));
}

ZMat lattice_intersect(const ZMat& A, const ZMat& B) {
    ZMat neg = B;
    for (int c = 0; c < neg.cols(); ++c) neg.negate_col(c);
    ZMat K = kernel_basis(A.hstack(neg));
    return lattice_hnf(A.mul(K.top_rows(A.cols())));
}

Snf smith_normal_form(ZMat M, bool need_transforms) {
    Snf out;
    int m = M.rows(), n = M.cols();
    if (need_transforms) {
        out.U = ZMat::identity(m);
        out.V = ZMat::identity(n);
    }
    auto row_addmul = [&](int j, int i, const Int& f) {  // row_j += f * row_i
        if (f == 0) return;
        for (int c = 0; c < n; ++c) M.at(j, c) += f * M.at(i, c);
        if (need_transforms)
            for (int c = 0; c < m; ++c) out.U.at(j, c) += f * out.U.at(i, c);
    };
    auto row_swap = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < n; ++c) std::swap(M.at(i, c), M.at(j, c));
        if (need_transforms)
            for (int c = 0; c < m; ++c) std::swap(out.U.at(i, c), out.U.at(j, c));
    };
    auto row_neg = [&](int i) {
        for (int c = 0; c < n; ++c) M.at(i, c) = -M.at(i, c);
        if (need_transforms)
            for (int c = 0; c < m; ++c) out.U.at(i, c) = -out.U.at(i, c);
    };
    auto col_addmul = [&](int j, int i, const Int& f) {
        if (f == 0) return;
        for (int r = 0; r < m; ++r) M.at(r, j) += f * M.at(r, i);
        if (need_transforms) out.V.addmul_col(j, i, f);
    };
    auto col_swap = [&](int i, int j) {
        if (i == j) return;
        for (int r = 0; r < m; ++r) std::swap(M.at(r, i), M.at(r, j));
        if (need_transforms) out.V.swap_cols(i, j);
    };

    int t = 0;
    while (true) {
        int pr = -1, pc = -1;
        for (int r = t; r < m; ++r)
            for (int c = t; c < n; ++c) {
                if (M.at(r, c) == 0) continue;
                if (pr < 0 || abs(M.at(r, c)) < abs(M.at(pr, pc))) {
                    pr = r;
                    pc = c;
                }
            }
        if (pr < 0) break;
        row_swap(t, pr);
        col_swap(t, pc);
        if (M.at(t, t) < 0) row_neg(t);
        bool dirty = false;
        for (int r = t + 1; r < m; ++r) {
            Int q = fdiv(M.at(r, t), M.at(t, t));
            row_addmul(r, t, -q);
            if (M.at(r, t) != 0) dirty = true;
        }
        for (int c = t + 1; c < n; ++c) {
            Int q = fdiv(M.at(t, c), M.at(t, t));
            col_addmul(c, t, -q);
            if (M.at(t, c) != 0) dirty = true;
        }
        if (dirty) continue;
        // Divisibility fix-up: fold a non-multiple into the pivot block.
        int br = -1, bc = -1;
        for (int r = t + 1; r < m && br < 0; ++r)
            for (int c = t + 1; c < n; ++c)
                if (M.at(r, c) % M.at(t, t) != 0) {
                    br = r;
                    bc = c;
                    break;
                }
        if (br >= 0) {
            row_addmul(t, br, 1);
            continue;
        }
        ++t;
    }
    for (int i = 0; i < t; ++i) out.diag.push_back(M.at(i, i));
    return out;
}

std::string FgGroup::to_string() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank > 0) {
        os << "Z";
        if (free_rank > 1) os << "^" << free_rank;
        first = false;
    }
    for (const auto& t : torsion) {
        if (!first) os << " + ";
        os << "Z/" << t.str();
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

FgGroup quotient_group(const ZMat& P, const ZMat& S) {
    auto X = solve_columns(P, S);
    if (!X) throw std::logic_error("quotient_group: numerator does not contain denominator");
    return cokernel_group(P.cols(), *X);
}

FgGroup cokernel_group(int n, const ZMat& R) {
    Snf s = smith_normal_form(R);
    FgGroup g;
    g.free_rank = n - (long long)s.diag.size();
    for (const auto& d : s.diag)
        if (d > 1) g.torsion.push_back(d);
    return g;
}

}  // namespace knothom
