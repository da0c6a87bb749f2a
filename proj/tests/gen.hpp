#ifndef LIESYM_TESTS_GEN_HPP
#define LIESYM_TESTS_GEN_HPP

#include "liesym/parser.hpp"
#include "liesym/rng.hpp"

#include <map>
#include <string>

namespace liesym::testgen {

inline Context demo_context() {
    Document d = parse_document(
        "param a, k; var r, x, y, t; dep u(r,x,y,t); domain r > 0;");
    return d.ctx;
}

/// random expression from a small grammar; safe to evaluate on the demo box
inline Expr gen_expr(Rng& rng, const Context& ctx, int depth) {
    auto pick = [&](int n) { return static_cast<int>(rng.uniform() * n); };
    if (depth <= 0) {
        switch (pick(8)) {
        case 0: return Expr::integer(pick(7) - 3);
        case 1: return Expr::param("a");
        case 2: return Expr::param("k");
        case 3: return ctx.var_atom("x");
        case 4: return ctx.var_atom("t");
        case 5: return ctx.dep_atom("u");
        case 6: return ctx.jet_atom("u", {0});
        default: return ctx.jet_atom("u", {1});
        }
    }
    switch (pick(10)) {
    case 0: return add(gen_expr(rng, ctx, depth - 1), gen_expr(rng, ctx, depth - 1));
    case 1: return sub(gen_expr(rng, ctx, depth - 1), gen_expr(rng, ctx, depth - 1));
    case 2: return mul(gen_expr(rng, ctx, depth - 1), gen_expr(rng, ctx, depth - 1));
    case 3: return sin_(gen_expr(rng, ctx, depth - 1));
    case 4: return cos_(gen_expr(rng, ctx, depth - 1));
    case 5: return sinh_(mul(Expr::rational(Rat(1, 2)), gen_expr(rng, ctx, depth - 1)));
    case 6: return cosh_(mul(Expr::rational(Rat(1, 2)), gen_expr(rng, ctx, depth - 1)));
    case 7: return exp_(mul(Expr::rational(Rat(1, 4)), gen_expr(rng, ctx, depth - 1)));
    case 8: return pow(ctx.var_atom("r"), Rat(pick(5) - 2));
    default:
        return mul(Expr::rational(Rat(pick(5) + 1, pick(3) + 1)),
                   gen_expr(rng, ctx, depth - 1));
    }
}

inline std::map<std::string, double> gen_point(Rng& rng) {
    return {
        {"r", rng.uniform(0.5, 2.0)}, {"x", rng.uniform(-1.0, 1.0)},
        {"y", rng.uniform(-1.0, 1.0)}, {"t", rng.uniform(0.0, 1.0)},
        {"u", rng.uniform(-2.0, 2.0)}, {"u_r", rng.uniform(-2.0, 2.0)},
        {"u_x", rng.uniform(-2.0, 2.0)}, {"u_y", rng.uniform(-2.0, 2.0)},
        {"u_t", rng.uniform(-2.0, 2.0)},
        {"a", rng.uniform(0.5, 2.0)}, {"k", rng.uniform(0.5, 2.0)},
    };
}

} // namespace liesym::testgen

#endif
