#ifndef LIESYM_NUMCHECK_HPP
#define LIESYM_NUMCHECK_HPP

#include "liesym/prolong.hpp"
#include "liesym/rng.hpp"

#include <array>
#include <optional>

namespace liesym {

/// Closed-form map (r,x,y,t,u) -> image with group parameter s.
struct PointMap {
    std::string name;
    std::vector<Expr> comps; // ctx.vars.size() + 1 components (u last)
};

/// Closed-form candidate u(r,x,y,t); sampled on the standard box with r > 0.
struct CandidateSolution {
    std::string name;
    Expr u;
};

/// Transformed-solution recipe: prefactor(eps; vars) * U(arg maps).
struct TransformRecipe {
    std::string name;
    Expr prefactor;
    std::vector<Expr> args; // one per independent variable
};

struct SampleBox {
    // per independent variable [lo, hi]; defaults r in [0.5,2], others [-1,1], t in [0,1]
    std::vector<std::pair<double, double>> var_range;
    std::pair<double, double> param_range{0.5, 2.0};
    std::pair<double, double> eps_range{-0.2, 0.2};
};
SampleBox default_box(const Context& ctx);

/// Adaptive Dormand-Prince 5(4) integration of dq/ds = vf(q) from p over [0,s].
/// Throws Error on domain exit (positive variable <= 0) or step underflow.
std::vector<double> flow_integrate(const Context& ctx, const VectorField& vf,
                                   const std::vector<double>& p, double s, double tol,
                                   const std::map<std::string, double>& params);

enum class FlowClass { ExactFlow, TangentOnly, Mismatch };

struct FlowVerdict {
    FlowClass cls = FlowClass::Mismatch;
    bool tangent_proportional = false; // d/ds map|_0 = scale * vf
    Expr scale;                        // the uniform factor (1 for exact tangents)
    double max_flow_error = 0.0;
    std::string detail;
};

/// Classify a printed map against the true flow of vf.
FlowVerdict flow_verify(const Context& ctx, const VectorField& vf, const PointMap& map,
                        int samples, double tol, Rng& rng);

struct ResidualVerdict {
    bool pass = false;
    bool symbolically_zero = false;
    double max_residual = 0.0;
    double scale = 0.0; // max |lead term| over samples
};

/// Substitute the candidate's derivatives into Delta and sample numerically.
/// Symbolic zero short-circuits to an exact pass.
ResidualVerdict residual_sample(const Context& ctx, const Pde& pde,
                                const CandidateSolution& cand, int points, double tol,
                                Rng& rng, const SampleBox& box);

/// Build the transformed closed form (prefactor times seed at mapped arguments).
/// eps_value: bind the recipe's parameter numerically; nullopt keeps it symbolic.
CandidateSolution transform_solution(const Context& ctx, const TransformRecipe& recipe,
                                     const CandidateSolution& seed,
                                     std::optional<double> eps_value,
                                     const std::string& eps_param = "eps");

} // namespace liesym

#endif
