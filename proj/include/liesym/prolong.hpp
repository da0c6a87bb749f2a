#ifndef LIESYM_PROLONG_HPP
#define LIESYM_PROLONG_HPP

#include "liesym/jet.hpp"

#include <map>

namespace liesym {

/// Point vector field: one coefficient per independent variable plus eta for
/// the (single) dependent variable. Coefficients have jet order 0.
struct VectorField {
    std::string name;
    std::vector<Expr> xi; // size = ctx.vars.size()
    Expr eta;
};

VectorField vf_zero(const Context& ctx);
VectorField vf_add(const VectorField& a, const VectorField& b);
VectorField vf_scale(const Expr& c, const VectorField& a);
bool vf_is_zero(const VectorField& a);
std::string vf_to_string(const Context& ctx, const VectorField& a);

/// Q = eta - sum_i xi_i u_i
Expr characteristic(const Context& ctx, const VectorField& vf);

/// Prolonged field: coefficient phi^J for every multi-index |J| <= order.
struct ProlongedField {
    VectorField base;
    int order = 0;
    std::map<std::vector<int>, Expr> phi; // key: sorted var ids; empty key = eta
};

/// phi^J = D_J Q + sum_i xi_i u_{J,i}
ProlongedField prolong(const Context& ctx, const VectorField& vf, int order,
                       int max_order = 3);

/// sum_i xi_i de/dx_i + sum_J phi^J de/du_J
Expr apply_prolonged(const Context& ctx, const ProlongedField& pf, const Expr& e);

} // namespace liesym

#endif
