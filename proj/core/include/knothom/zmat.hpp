#ifndef KNOTHOM_ZMAT_HPP
#define KNOTHOM_ZMAT_HPP

#include "knothom/poly.hpp"  // Int

#include <optional>
#include <vector>

namespace knothom {

/// Dense matrix over Z with arbitrary-precision entries. Row/column counts
/// of zero are legal everywhere.
class ZMat {
public:
    ZMat() : rows_(0), cols_(0) {}
    ZMat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, 0) {}

    static ZMat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
    const Int& at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

    bool is_zero() const;
    ZMat mul(const ZMat& o) const;
    ZMat hstack(const ZMat& o) const;      // [this | o]
    ZMat top_rows(int n) const;
    ZMat col(int c) const;
    void swap_cols(int i, int j);
    void negate_col(int i);
    /// col_j += f * col_i
    void addmul_col(int j, int i, const Int& f);

    bool operator==(const ZMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

/// Column-style Hermite form: H = M * U with U unimodular, H in column
/// echelon form with positive pivots and reduced off-pivot entries. Columns
/// of H beyond `rank` are zero.
struct ColHnf {
    ZMat H;
    ZMat U;                       // only populated when requested
    std::vector<int> pivot_row;   // pivot_row[c] for c < rank
    int rank = 0;
};

ColHnf hnf_cols(const ZMat& M, bool need_U);

/// Basis of the integer kernel lattice {x : Mx = 0}, as matrix columns.
ZMat kernel_basis(const ZMat& M);

/// Canonical basis (column HNF, zero columns dropped) of the lattice spanned
/// by the columns of G.
ZMat lattice_hnf(const ZMat& G);

/// Solve B * X = Y over Z for all columns of Y at once; nullopt when some
/// column is not in the column lattice of B.
std::optional<ZMat> solve_columns(const ZMat& B, const ZMat& Y);

/// Membership of every column of Y in the column lattice of B.
bool lattice_contains(const ZMat& B, const ZMat& Y);

/// Lattice of {x : M x in colspan_Z(L)}, as basis columns.
ZMat preimage_lattice(const ZMat& M, const ZMat& L);

/// Intersection of two column lattices.
ZMat lattice_intersect(const ZMat& A, const ZMat& B);

/// Smith normal form. U and V are computed only when requested;
/// U * M * V = diag(d_1..d_r) with d_1 | d_2 | ... | d_r, d_i > 0.
struct Snf {
    std::vector<Int> diag;  // nonzero invariant factors
    ZMat U, V;
};

Snf smith_normal_form(ZMat M, bool need_transforms = false);

/// Finitely generated abelian group invariant: Z^free_rank + sum Z/torsion[i]
/// with torsion[0] | torsion[1] | ... and every entry >= 2.
struct FgGroup {
    long long free_rank = 0;
    std::vector<Int> torsion;

    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const FgGroup& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    std::string to_string() const;
};

/// Invariants of (lattice spanned by P-columns) / (lattice spanned by
/// S-columns), both in the same ambient space; S must lie inside P.
FgGroup quotient_group(const ZMat& P, const ZMat& S);

/// Invariants of Z^n / colspan(R).
FgGroup cokernel_group(int n, const ZMat& R);

}  // namespace knothom

#endif
