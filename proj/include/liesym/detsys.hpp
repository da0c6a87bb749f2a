#ifndef LIESYM_DETSYS_HPP
#define LIESYM_DETSYS_HPP

#include "liesym/prolong.hpp"
#include "liesym/rng.hpp"

namespace liesym {

/// Unknown coefficient functions xi_1..xi_p, eta in (vars..., u).
struct Ansatz {
    std::vector<Expr> xi;
    Expr eta;
};

/// Declares fresh unknown functions in ctx and returns the ansatz over them.
Ansatz make_ansatz(Context& ctx);

/// Linear homogeneous determining equations plus the jet monomial each came from.
struct DeterminingSystem {
    std::vector<Expr> equations;       // deduplicated, content-normalized
    std::vector<std::string> monomial; // provenance, parallel to equations
};

/// Collect E = reduce(pr^2(ansatz) Delta) as a polynomial in the jet variables
/// of order >= 1 (and powers of u); the monomial coefficients are the equations.
DeterminingSystem determining_system(const Context& ctx, const Pde& pde, const Ansatz& ansatz);

enum class ZeroClass { Zero, NonzeroWitness, Unresolved };

/// Three-valued zero test: syntactic zero, or a numeric witness point where the
/// value is clearly nonzero, or unresolved.
struct ZeroCheck {
    ZeroClass cls = ZeroClass::Unresolved;
    std::string witness; // sample point for NonzeroWitness
    double value = 0.0;
};
ZeroCheck classify_zero(const Context& ctx, const Expr& e, Rng& rng, int samples = 20);

enum class SymmetryClass { Symmetry, NotSymmetry, Unresolved };

struct SymmetryVerdict {
    SymmetryClass cls = SymmetryClass::Unresolved;
    Expr residual;                      // reduced residual (zero for Symmetry)
    std::string witness;                // failing sample for NotSymmetry
    double max_onmanifold_residual = 0; // numeric corroboration over 50 points
};

/// residual = reduce(pr^2 vf (Delta)); Symmetry iff it normalizes to zero.
SymmetryVerdict check_symmetry(const Context& ctx, const Pde& pde, const VectorField& vf,
                               std::uint64_t seed = 42);

/// General solution of the determining system: coefficients linear in named constants.
struct GeneralSolution {
    std::vector<Expr> xi;
    Expr eta;
    std::vector<std::string> constants;
};

/// Coefficient-of-constant extraction: the m-th basis vector field.
VectorField generator_of(const Context& ctx, const GeneralSolution& sol, int m);

/// Matrix of normalized residuals: entry [e][m] = coefficient of constant m in
/// equation e after substituting the solution.
std::vector<std::vector<Expr>> check_printed_equations(const Context& ctx,
                                                       const std::vector<Expr>& printed_eqs,
                                                       const GeneralSolution& sol);

} // namespace liesym

#endif
