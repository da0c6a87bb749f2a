#include "doctest.h"
#include "gen.hpp"

using namespace liesym;
using testgen::demo_context;
using testgen::gen_expr;

TEST_CASE("parse: declared symbols, jets, precedence") {
    Context ctx = demo_context();
    Expr e = parse_expression(ctx, "u_tt + k*u_t");
    CHECK(e == add(ctx.jet_atom("u", {3, 3}), mul(Expr::param("k"), ctx.jet_atom("u", {3}))));
    CHECK(parse_expression(ctx, "sin(x)^2 + cos(x)^2").is_one());
    CHECK(parse_expression(ctx, "1/r * (r*u_r)") == ctx.jet_atom("u", {0}));
    CHECK(parse_expression(ctx, "u_xr") == ctx.jet_atom("u", {0, 1}));
    CHECK(parse_expression(ctx, "-x^2") == neg(pow(ctx.var_atom("x"), Rat(2))));
    CHECK(parse_expression(ctx, "r^-1") == pow(ctx.var_atom("r"), Rat(-1)));
    CHECK(parse_expression(ctx, "2^(1/2)") == sqrt_(Expr::integer(2)));
    CHECK(parse_expression(ctx, "0.25") == Expr::rational(Rat(1, 4)));
}

TEST_CASE("parse errors carry positions") {
    Context ctx = demo_context();
    CHECK_THROWS_WITH_AS(parse_expression(ctx, "x + qq"), doctest::Contains("undeclared"),
                         ParseError);
    CHECK_THROWS_AS(parse_expression(ctx, "x + "), ParseError);
    CHECK_THROWS_AS(parse_expression(ctx, "x y"), ParseError);
    try {
        parse_expression(ctx, "x +\n zz*2");
        CHECK(false);
    } catch (const ParseError& pe) {
        CHECK(pe.line == 2);
    }
}

TEST_CASE("document: pde, field, group, recipe, domain") {
    const char* src = R"(
# telegraph setup
param a, k, s, eps;
var r, x, y, t;
dep u(r,x,y,t);
domain r > 0;
pde telegraph: u_tt + k*u_t = a^2*( (1/r)*d_r(r*u_r) + (1/r^2)*u_xx + u_yy );
field v5: 2*a^2*t d/dy + 2*y d/dt - k*y*u d/du;
field v1: d/dx;
group g1: (r, x + s, y, t, u);
recipe u4: prefactor (exp(-eps)) args (r, x, y, t);
)";
    Document d = parse_document(src);
    CHECK(d.ctx.vars.size() == 4);
    CHECK(d.ctx.is_positive("r"));
    const Pde* p = d.pde("telegraph");
    REQUIRE(p != nullptr);
    CHECK(p->lead == d.ctx.jet_atom("u", {3, 3}));
    // expanded divergence form: u_rr + u_r/r + u_xx/r^2 + u_yy scaled by a^2, minus k u_t
    Expr a2 = pow(Expr::param("a"), Rat(2));
    Expr expect_rhs =
        sub(mul(a2, add(add(d.ctx.jet_atom("u", {0, 0}),
                            mul(pow(d.ctx.var_atom("r"), Rat(-1)), d.ctx.jet_atom("u", {0}))),
                        add(mul(pow(d.ctx.var_atom("r"), Rat(-2)), d.ctx.jet_atom("u", {1, 1})),
                            d.ctx.jet_atom("u", {2, 2})))),
            mul(Expr::param("k"), d.ctx.jet_atom("u", {3})));
    CHECK(p->rhs == expect_rhs);

    const VectorField* v5 = d.field("v5");
    REQUIRE(v5 != nullptr);
    CHECK(v5->xi[2] == mul(Expr::integer(2), mul(a2, d.ctx.var_atom("t"))));
    CHECK(v5->xi[3] == mul(Expr::integer(2), d.ctx.var_atom("y")));
    CHECK(v5->eta == neg(mul(Expr::param("k"), mul(d.ctx.var_atom("y"), d.ctx.dep_atom("u")))));
    const VectorField* v1 = d.field("v1");
    REQUIRE(v1 != nullptr);
    CHECK(v1->xi[1].is_one());
    CHECK(v1->eta.is_zero());

    REQUIRE(d.group("g1") != nullptr);
    CHECK(d.group("g1")->comps[1] == add(d.ctx.var_atom("x"), Expr::param("s")));
    REQUIRE(d.recipe("u4") != nullptr);
    CHECK(d.recipe("u4")->prefactor == exp_(neg(Expr::param("eps"))));
}

TEST_CASE("property: print/parse round trip on random expressions") {
    Context ctx = demo_context();
    Rng rng(2024);
    for (int i = 0; i < 400; ++i) {
        Expr e = gen_expr(rng, ctx, 4);
        std::string s = to_string(e);
        Expr back = parse_expression(ctx, s);
        CHECK(back == e);
        // print o parse o print is a fixed point
        CHECK(to_string(back) == s);
    }
}
