#ifndef LIESYM_LIEALG_HPP
#define LIESYM_LIEALG_HPP

#include "liesym/linalg.hpp"
#include "liesym/prolong.hpp"

#include <optional>

namespace liesym {

/// Element of a finite-dimensional Lie algebra as a coefficient vector over Q(a,k).
struct AlgebraElement {
    std::vector<RatFunc> c;
    bool is_zero() const {
        for (const auto& q : c)
            if (!q.is_zero()) return false;
        return true;
    }
};

/// Finite-dimensional Lie algebra presented by structure constants.
struct StructureConstants {
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<std::string> gens; // parameter names of the coefficient ring
    // table[i][j] = coefficient vector of [v_i, v_j]
    std::vector<std::vector<std::vector<RatFunc>>> table;
    bool rational_flagged = false; // some entry has a nonconstant denominator
    std::string provenance;

    AlgebraElement element_zero() const {
        return AlgebraElement{std::vector<RatFunc>(dim, RatFunc::zero(gens))};
    }
    AlgebraElement basis_element(int i) const {
        AlgebraElement e = element_zero();
        e.c[i] = RatFunc::constant(gens, 1);
        return e;
    }
    AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const;
};

std::string element_to_string(const StructureConstants& sc, const AlgebraElement& x);

/// [v,w] = v(w-coeffs) - w(v-coeffs) componentwise.
VectorField bracket_vf(const Context& ctx, const VectorField& v, const VectorField& w);

/// Exact decomposition of w in the Q(a,k)-span of basis (matching canonical
/// monomial coefficients). nullopt if not in span; *witness carries the residual.
std::optional<AlgebraElement> decompose_in_basis(const Context& ctx, const VectorField& w,
                                                 const std::vector<VectorField>& basis,
                                                 const std::vector<std::string>& gens,
                                                 Expr* witness = nullptr);

/// Full commutator table via bracket_vf + decompose_in_basis. Throws Error
/// ("not closed ...") when a bracket leaves the span. Antisymmetry and Jacobi
/// are verified on the output.
StructureConstants commutator_table(const Context& ctx, const std::vector<VectorField>& basis,
                                    const std::vector<std::string>& gens);

/// Entry-by-entry diff of two tables over the same basis.
struct TableMismatch {
    int i, j;
    std::string computed, printed;
};
std::vector<TableMismatch> diff_tables(const StructureConstants& computed,
                                       const StructureConstants& printed);
/// (i,j) pairs, i<j, where printed[i][j] != -printed[j][i].
std::vector<std::pair<int, int>> antisymmetry_violations(const StructureConstants& sc);

/// Matrix of ad_{v_i} = [v_i, .] in row convention:
/// A[j][m] = coefficient of v_m in [v_i, v_j].
QMat ad_matrix(const StructureConstants& sc, int i);

/// Lie series sum_{m<=N} (-eps)^m/m! ad^m as a matrix of polynomials in eps;
/// row j holds the coefficients of Ad(exp(eps v_i)) v_j.
std::vector<std::vector<Expr>> adjoint_series(const StructureConstants& sc, int i, int order,
                                              const Expr& eps_atom);

struct AdjointEntryFailure {
    int row, col;
    Expr residual; // of dM/deps + M ad(v_i), or M(0) - I
    bool at_zero = false;
};
struct AdjointVerifyResult {
    bool pass = false;
    std::vector<AdjointEntryFailure> failures;
};
/// Verify M(0) = I and dM/deps = -M ad(v_i) entrywise.
AdjointVerifyResult adjoint_verify_closed(const StructureConstants& sc, int i,
                                          const std::vector<std::vector<Expr>>& M,
                                          const Expr& eps_atom);

/// Exact adjoint action for symbolic eps; requires ad(v_i) nilpotent. Throws
/// with a "use numeric" hint otherwise.
AlgebraElement adjoint_apply_symbolic(const StructureConstants& sc, const AlgebraElement& x,
                                      int i, const Expr& eps);

/// Numeric adjoint action at given parameter values (scaling-and-squaring
/// matrix exponential, relative error <= 1e-12).
std::vector<double> adjoint_apply_numeric(const StructureConstants& sc,
                                          const std::vector<double>& x, int i, double eps,
                                          const std::map<std::string, double>& params);

/// Dense double matrix exponential, scaling and squaring with a Taylor tail bound.
std::vector<std::vector<double>> expm(const std::vector<std::vector<double>>& m);

} // namespace liesym

#endif
