#include "doctest.h"
#include "gen.hpp"

#include "liesym/liealg.hpp"

using namespace liesym;

namespace {

Document paper_doc() {
    return parse_document(
        "param a, k; var r, x, y, t; dep u(r,x,y,t); domain r > 0;"
        "pde telegraph: u_tt + k*u_t = a^2*( (1/r)*d_r(r*u_r) + (1/r^2)*u_xx + u_yy );"
        "field v1: d/dx;"
        "field v3: d/dt;"
        "field v4: u d/du;"
        "field v5: 2*a^2*t d/dy + 2*y d/dt - k*y*u d/du;"
        "field v6: sin(x) d/dr + r^-1*cos(x) d/dx;");
}

} // namespace

TEST_CASE("characteristic of basic fields") {
    Document d = paper_doc();
    const Context& ctx = d.ctx;
    CHECK(characteristic(ctx, *d.field("v1")) == neg(ctx.jet_atom("u", {1})));
    CHECK(characteristic(ctx, *d.field("v4")) == ctx.dep_atom("u"));
    Expr q5 = characteristic(ctx, *d.field("v5"));
    Expr expect = parse_expression(ctx, "-k*y*u - 2*a^2*t*u_y - 2*y*u_t");
    CHECK(q5 == expect);
}

TEST_CASE("prolongation of translations and scalings") {
    Document d = paper_doc();
    const Context& ctx = d.ctx;
    ProlongedField p3 = prolong(ctx, *d.field("v3"), 2);
    for (const auto& [J, phi] : p3.phi)
        CHECK(phi.is_zero());
    ProlongedField p4 = prolong(ctx, *d.field("v4"), 2);
    for (const auto& [J, phi] : p4.phi)
        CHECK(phi == ctx.jet_atom("u", J));
    // phi^rr of pr^2 v1 vanishes after cancellation
    ProlongedField p1 = prolong(ctx, *d.field("v1"), 2);
    CHECK(p1.phi.at({0, 0}).is_zero());
}

TEST_CASE("no third-order jets survive in second-order coefficients") {
    Document d = paper_doc();
    const Context& ctx = d.ctx;
    for (const auto& [name, vf] : d.fields) {
        ProlongedField pf = prolong(ctx, vf, 2);
        for (const auto& [J, phi] : pf.phi) {
            CHECK(jet_order(phi) <= static_cast<int>(J.size()));
        }
    }
}

TEST_CASE("applying prolongations to the telegraph residual") {
    Document d = paper_doc();
    const Context& ctx = d.ctx;
    const Pde& pde = *d.pde("telegraph");
    // t-translation invariance is syntactic
    CHECK(apply_prolonged(ctx, prolong(ctx, *d.field("v3"), 2), pde.residual).is_zero());
    // scaling in u reproduces the residual (linear homogeneous equation)
    CHECK(apply_prolonged(ctx, prolong(ctx, *d.field("v4"), 2), pde.residual) == pde.residual);
    // v6 is a symmetry on solutions
    Expr e6 = apply_prolonged(ctx, prolong(ctx, *d.field("v6"), 2), pde.residual);
    CHECK(on_solutions_reduce(ctx, e6, pde).is_zero());
}

TEST_CASE("prolongation is linear in the field") {
    Document d = paper_doc();
    const Context& ctx = d.ctx;
    Expr alpha = Expr::param("a");
    const VectorField& v = *d.field("v5");
    const VectorField& w = *d.field("v6");
    ProlongedField pv = prolong(ctx, v, 2), pw = prolong(ctx, w, 2);
    ProlongedField pc = prolong(ctx, vf_add(vf_scale(alpha, v), w), 2);
    for (const auto& [J, phi] : pc.phi)
        CHECK(phi == add(mul(alpha, pv.phi.at(J)), pw.phi.at(J)));
    // restriction to order 0 is the field itself
    CHECK(pv.phi.at({}) == v.eta);
}

TEST_CASE("property: prolongation respects brackets on low-order expressions") {
    Document d = paper_doc();
    const Context& ctx = d.ctx;
    Rng rng(404);
    std::vector<const VectorField*> basis;
    for (const auto& [n, f] : d.fields) basis.push_back(&f);
    for (int trial = 0; trial < 40; ++trial) {
        const VectorField& v = *basis[static_cast<std::size_t>(rng.uniform() * basis.size())];
        const VectorField& w = *basis[static_cast<std::size_t>(rng.uniform() * basis.size())];
        Expr e = testgen::gen_expr(rng, ctx, 3);
        if (jet_order(e) > 1) continue;
        VectorField bw = bracket_vf(ctx, v, w);
        ProlongedField pv = prolong(ctx, v, 2), pw = prolong(ctx, w, 2), pb = prolong(ctx, bw, 2);
        Expr lhs = apply_prolonged(ctx, pb, e);
        Expr rhs = sub(apply_prolonged(ctx, pv, apply_prolonged(ctx, pw, e)),
                       apply_prolonged(ctx, pw, apply_prolonged(ctx, pv, e)));
        CHECK(sub(lhs, rhs).is_zero());
    }
}
