#include "liesym/linalg.hpp"

namespace liesym {

QMat qmat_identity(int n, const std::vector<std::string>& gens) {
    QMat m(n, n, gens);
    for (int i = 0; i < n; ++i) m.at(i, i) = RatFunc::constant(gens, 1);
    return m;
}

QMat qmat_mul(const QMat& x, const QMat& y) {
    if (x.cols != y.rows) throw Error("matrix shape mismatch");
    const auto& gens = x.a.empty() ? y.a.front().num.gens : x.a.front().num.gens;
    QMat out(x.rows, y.cols, gens);
    for (int i = 0; i < x.rows; ++i)
        for (int kk = 0; kk < x.cols; ++kk) {
            if (x.at(i, kk).is_zero()) continue;
            for (int j = 0; j < y.cols; ++j) {
                if (y.at(kk, j).is_zero()) continue;
                out.at(i, j) = rf_add(out.at(i, j), rf_mul(x.at(i, kk), y.at(kk, j)));
            }
        }
    return out;
}

QMat qmat_add(const QMat& x, const QMat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw Error("matrix shape mismatch");
    QMat out = x;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = rf_add(out.a[i], y.a[i]);
    return out;
}

QMat qmat_scale(const RatFunc& c, const QMat& x) {
    QMat out = x;
    for (auto& e : out.a) e = rf_mul(c, e);
    return out;
}

bool qmat_is_zero(const QMat& x) {
    for (const auto& e : x.a)
        if (!e.is_zero()) return false;
    return true;
}

RatFunc qmat_trace(const QMat& x) {
    if (x.rows != x.cols) throw Error("trace of non-square matrix");
    RatFunc t = RatFunc::zero(x.a.front().num.gens);
    for (int i = 0; i < x.rows; ++i) t = rf_add(t, x.at(i, i));
    return t;
}

void append_assumption(std::vector<Poly>& assumptions, const Poly& p) {
    if (p.is_constant()) return;
    Poly q = pprimitive(p);
    for (const auto& have : assumptions)
        if (pequal(have, q)) return;
    assumptions.push_back(q);
}

Rref rref(QMat m, std::vector<Poly>& assumptions) {
    Rref out;
    int r = 0;
    for (int col = 0; col < m.cols && r < m.rows; ++col) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (!m.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        RatFunc p = m.at(r, col);
        append_assumption(assumptions, p.num);
        for (int j = 0; j < m.cols; ++j) m.at(r, j) = rf_div(m.at(r, j), p);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, col).is_zero()) continue;
            RatFunc f = m.at(i, col);
            for (int j = 0; j < m.cols; ++j)
                m.at(i, j) = rf_sub(m.at(i, j), rf_mul(f, m.at(r, j)));
        }
        out.pivot_cols.push_back(col);
        ++r;
    }
    out.rank = r;
    out.mat = std::move(m);
    return out;
}

std::vector<std::vector<RatFunc>> nullspace(const QMat& m, std::vector<Poly>& assumptions) {
    const auto& gens = m.a.front().num.gens;
    Rref r = rref(m, assumptions);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : r.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<RatFunc>> basis;
    for (int free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<RatFunc> v(m.cols, RatFunc::zero(gens));
        v[free] = RatFunc::constant(gens, 1);
        for (int pi = 0; pi < r.rank; ++pi)
            v[r.pivot_cols[pi]] = rf_neg(r.mat.at(pi, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

RatFunc qmat_det(const QMat& m0) {
    if (m0.rows != m0.cols) throw Error("determinant of non-square matrix");
    const auto& gens = m0.a.front().num.gens;
    QMat m = m0;
    RatFunc det = RatFunc::constant(gens, 1);
    int n = m.rows;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!m.at(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) return RatFunc::zero(gens);
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            det = rf_neg(det);
        }
        RatFunc p = m.at(col, col);
        det = rf_mul(det, p);
        for (int i = col + 1; i < n; ++i) {
            if (m.at(i, col).is_zero()) continue;
            RatFunc f = rf_div(m.at(i, col), p);
            for (int j = col; j < n; ++j)
                m.at(i, j) = rf_sub(m.at(i, j), rf_mul(f, m.at(col, j)));
        }
    }
    return det;
}

std::optional<std::vector<RatFunc>> solve(const QMat& m, const std::vector<RatFunc>& b,
                                          std::vector<Poly>& assumptions) {
    if (static_cast<int>(b.size()) != m.rows) throw Error("solve: size mismatch");
    const auto& gens = m.a.front().num.gens;
    QMat aug(m.rows, m.cols + 1, gens);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[static_cast<std::size_t>(i)];
    }
    Rref r = rref(std::move(aug), assumptions);
    std::vector<RatFunc> x(m.cols, RatFunc::zero(gens));
    for (int pi = 0; pi < r.rank; ++pi) {
        if (r.pivot_cols[pi] == m.cols) return std::nullopt; // 0 = 1 row
        x[r.pivot_cols[pi]] = r.mat.at(pi, m.cols);
    }
    return x;
}

} // namespace liesym
