#ifndef LIESYM_JET_HPP
#define LIESYM_JET_HPP

#include "liesym/context.hpp"

namespace liesym {

/// Total derivative D_v e = d_v e + sum_J u_{J,v} d e / d u_J, exact and
/// normalized. Unknown-function atoms chain through their declared arguments.
/// Throws if the result would exceed max_order.
Expr total_derivative(const Context& ctx, const Expr& e, int var_id, int max_order = 3);

/// A differential polynomial Delta with a solved form lead = rhs.
struct Pde {
    std::string name;
    Expr residual;  // Delta
    Expr lead;      // distinguished top-order jet variable
    Expr rhs;       // lead == rhs on solutions; rhs does not contain lead
};

/// Build from lhs = rhs. The lead is the largest highest-order jet variable
/// occurring linearly with a jet-free, invertible coefficient.
Pde make_pde(const Context& ctx, const std::string& name, const Expr& lhs, const Expr& rhs);

/// Replace the lead variable and all its total derivatives by total
/// derivatives of rhs, iterating to a fixed point.
Expr on_solutions_reduce(const Context& ctx, const Expr& e, const Pde& pde, int max_order = 3);

} // namespace liesym

#endif
