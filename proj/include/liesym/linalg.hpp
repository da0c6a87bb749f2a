#ifndef LIESYM_LINALG_HPP
#define LIESYM_LINALG_HPP

#include "liesym/poly.hpp"

namespace liesym {

/// Dense matrix over Q(a,k).
struct QMat {
    int rows = 0, cols = 0;
    std::vector<RatFunc> a;

    QMat() = default;
    QMat(int r, int c, const std::vector<std::string>& gens)
        : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, RatFunc::zero(gens)) {}
    RatFunc& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const RatFunc& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

QMat qmat_identity(int n, const std::vector<std::string>& gens);
QMat qmat_mul(const QMat& x, const QMat& y);
QMat qmat_add(const QMat& x, const QMat& y);
QMat qmat_scale(const RatFunc& c, const QMat& x);
bool qmat_is_zero(const QMat& x);
RatFunc qmat_trace(const QMat& x);

/// Reduced row echelon form with generic pivoting. Every nonconstant pivot
/// numerator is appended to `assumptions` (assumed nonvanishing).
struct Rref {
    QMat mat;
    std::vector<int> pivot_cols;
    int rank = 0;
};
Rref rref(QMat m, std::vector<Poly>& assumptions);

/// Basis of the right nullspace {x : m x = 0}.
std::vector<std::vector<RatFunc>> nullspace(const QMat& m, std::vector<Poly>& assumptions);

/// Exact determinant (Gaussian elimination over the fraction field).
RatFunc qmat_det(const QMat& m);

/// Solve m x = b; nullopt if inconsistent. Requires unique solution columns
/// to be pivot columns; free columns are set to zero.
std::optional<std::vector<RatFunc>> solve(const QMat& m, const std::vector<RatFunc>& b,
                                          std::vector<Poly>& assumptions);

void append_assumption(std::vector<Poly>& assumptions, const Poly& p);

} // namespace liesym

#endif
