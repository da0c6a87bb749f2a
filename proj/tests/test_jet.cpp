#include "doctest.h"
#include "gen.hpp"

using namespace liesym;
using testgen::demo_context;
using testgen::gen_expr;

namespace {

Document telegraph_doc() {
    return parse_document(
        "param a, k; var r, x, y, t; dep u(r,x,y,t); domain r > 0;"
        "pde telegraph: u_tt + k*u_t = a^2*( (1/r)*d_r(r*u_r) + (1/r^2)*u_xx + u_yy );");
}

} // namespace

TEST_CASE("total derivatives: chain, commuting, paper spot values") {
    Context ctx = demo_context();
    // D_r(u) = u_r
    CHECK(total_derivative(ctx, ctx.dep_atom("u"), 0) == ctx.jet_atom("u", {0}));
    // D_t(r*u_x) = r*u_xt
    CHECK(total_derivative(ctx, mul(ctx.var_atom("r"), ctx.jet_atom("u", {1})), 3) ==
          mul(ctx.var_atom("r"), ctx.jet_atom("u", {1, 3})));
    // D_x(D_r(u)) - D_r(D_x(u)) = 0
    Expr u = ctx.dep_atom("u");
    CHECK(sub(total_derivative(ctx, total_derivative(ctx, u, 0), 1),
              total_derivative(ctx, total_derivative(ctx, u, 1), 0)).is_zero());
    // order overflow is an error
    Expr u3 = ctx.jet_atom("u", {0, 0, 0});
    CHECK_THROWS_AS(total_derivative(ctx, u3, 0, 3), Error);
}

TEST_CASE("total derivative chains through unknown functions") {
    Context ctx = demo_context();
    ctx.funcs.push_back({"xi1", {"r", "x", "y", "t", "u"}});
    Expr f = ctx.func_atom("xi1");
    Expr df = total_derivative(ctx, f, 0);
    Expr expect = add(ctx.func_atom("xi1", {0}),
                      mul(ctx.func_atom("xi1", {4}), ctx.jet_atom("u", {0})));
    CHECK(df == expect);
}

TEST_CASE("pde construction picks the solved form") {
    Document d = telegraph_doc();
    const Pde& p = *d.pde("telegraph");
    CHECK(p.lead == d.ctx.jet_atom("u", {3, 3}));
    CHECK_FALSE(contains_atom(p.rhs, p.lead));
    // residual is algebraically lead - rhs
    CHECK(sub(p.residual, sub(p.lead, p.rhs)).is_zero());
}

TEST_CASE("on-solutions reduction") {
    Document d = telegraph_doc();
    const Pde& p = *d.pde("telegraph");
    const Context& ctx = d.ctx;
    // reduce(Delta) = 0
    CHECK(on_solutions_reduce(ctx, p.residual, p).is_zero());
    // untouched expressions pass through
    CHECK(on_solutions_reduce(ctx, ctx.jet_atom("u", {1}), p) == ctx.jet_atom("u", {1}));
    // golden value for reduce(u_ttt): D_t(rhs) with the reappearing u_tt reduced again
    Expr got = on_solutions_reduce(ctx, ctx.jet_atom("u", {3, 3, 3}), p);
    Expr expect = parse_expression(
        ctx,
        "a^2*(u_rrt + u_yyt + r^-1*u_rt + r^-2*u_xxt)"
        " - a^2*k*(u_rr + u_yy + r^-1*u_r + r^-2*u_xx) + k^2*u_t");
    CHECK(got == expect);
    // idempotence
    CHECK(on_solutions_reduce(ctx, got, p) == got);
}

TEST_CASE("property: total derivative is a derivation and D_v, D_w commute") {
    Document d = telegraph_doc();
    const Context& ctx = d.ctx;
    Rng rng(31);
    for (int i = 0; i < 150; ++i) {
        Expr e1 = testgen::gen_expr(rng, ctx, 3);
        Expr e2 = testgen::gen_expr(rng, ctx, 3);
        int v = static_cast<int>(rng.uniform() * 4);
        int w = static_cast<int>(rng.uniform() * 4);
        if (jet_order(e1) > 1 || jet_order(e2) > 1) continue;
        Expr leib = sub(total_derivative(ctx, mul(e1, e2), v),
                        add(mul(total_derivative(ctx, e1, v), e2),
                            mul(e1, total_derivative(ctx, e2, v))));
        CHECK(leib.is_zero());
        Expr comm = sub(total_derivative(ctx, total_derivative(ctx, e1, v, 3), w, 3),
                        total_derivative(ctx, total_derivative(ctx, e1, w, 3), v, 3));
        CHECK(comm.is_zero());
    }
}

TEST_CASE("property: reduction is a ring homomorphism on the quotient") {
    Document d = telegraph_doc();
    const Pde& p = *d.pde("telegraph");
    const Context& ctx = d.ctx;
    Rng rng(32);
    Expr utt = ctx.jet_atom("u", {3, 3});
    for (int i = 0; i < 100; ++i) {
        Expr e1 = add(testgen::gen_expr(rng, ctx, 3), mul(testgen::gen_expr(rng, ctx, 2), utt));
        Expr e2 = testgen::gen_expr(rng, ctx, 3);
        Expr lhs = on_solutions_reduce(ctx, add(e1, e2), p);
        Expr rhs = add(on_solutions_reduce(ctx, e1, p), on_solutions_reduce(ctx, e2, p));
        CHECK(lhs == rhs);
        if (jet_order(e1) + jet_order(e2) <= 2) {
            Expr lhsm = on_solutions_reduce(ctx, mul(e1, e2), p);
            Expr rhsm = normalize(mul(on_solutions_reduce(ctx, e1, p),
                                      on_solutions_reduce(ctx, e2, p)));
            CHECK(lhsm == rhsm);
        }
    }
}
