#include "liesym/prolong.hpp"

namespace liesym {

VectorField vf_zero(const Context& ctx) {
    VectorField v;
    v.xi.assign(ctx.vars.size(), Expr());
    v.eta = Expr();
    return v;
}

VectorField vf_add(const VectorField& a, const VectorField& b) {
    VectorField out = a;
    for (std::size_t i = 0; i < out.xi.size(); ++i) out.xi[i] = add(out.xi[i], b.xi[i]);
    out.eta = add(out.eta, b.eta);
    return out;
}

VectorField vf_scale(const Expr& c, const VectorField& a) {
    VectorField out = a;
    for (auto& x : out.xi) x = mul(c, x);
    out.eta = mul(c, out.eta);
    return out;
}

bool vf_is_zero(const VectorField& a) {
    for (const auto& x : a.xi)
        if (!x.is_zero()) return false;
    return a.eta.is_zero();
}

std::string vf_to_string(const Context& ctx, const VectorField& a) {
    std::string out;
    auto emit = [&](const Expr& c, const std::string& dir) {
        if (c.is_zero()) return;
        if (!out.empty()) out += " + ";
        if (c.is_one()) out += "d/d" + dir;
        else out += (c.kind() == Kind::Sum ? "(" + to_string(c) + ")" : to_string(c)) +
                    " d/d" + dir;
    };
    for (std::size_t i = 0; i < a.xi.size(); ++i) emit(a.xi[i], ctx.vars[i]);
    for (const auto& d : ctx.deps) emit(a.eta, d.name);
    return out.empty() ? "0" : out;
}

Expr characteristic(const Context& ctx, const VectorField& vf) {
    if (ctx.deps.size() != 1)
        throw Error("characteristic: exactly one dependent symbol expected");
    Expr q = vf.eta;
    for (std::size_t i = 0; i < vf.xi.size(); ++i)
        q = sub(q, mul(vf.xi[i], ctx.jet_atom(ctx.deps[0].name, {static_cast<int>(i)})));
    return q;
}

namespace {

void multi_indices(int nvars, int order, std::vector<std::vector<int>>& out,
                   std::vector<int>& cur, int start) {
    if (static_cast<int>(cur.size()) == order) {
        out.push_back(cur);
        return;
    }
    for (int v = start; v < nvars; ++v) {
        cur.push_back(v);
        multi_indices(nvars, order, out, cur, v);
        cur.pop_back();
    }
}

} // namespace

ProlongedField prolong(const Context& ctx, const VectorField& vf, int order, int max_order) {
    for (const auto& x : vf.xi)
        if (jet_order(x) > 0)
            throw Error("prolong: vector field coefficients must have jet order 0");
    if (jet_order(vf.eta) > 0)
        throw Error("prolong: vector field coefficients must have jet order 0");
    if (order + 1 > max_order)
        throw Error("prolong: order overflow (intermediates need one extra order)");
    const std::string& dep = ctx.deps.at(0).name;
    Expr q = characteristic(ctx, vf);
    ProlongedField pf;
    pf.base = vf;
    pf.order = order;
    pf.phi[{}] = vf.eta;
    int nv = static_cast<int>(ctx.vars.size());
    for (int ord = 1; ord <= order; ++ord) {
        std::vector<std::vector<int>> idxs;
        std::vector<int> cur;
        multi_indices(nv, ord, idxs, cur, 0);
        for (const auto& J : idxs) {
            Expr djq = q;
            for (int v : J) djq = total_derivative(ctx, djq, v, max_order);
            Expr phi = djq;
            for (int i = 0; i < nv; ++i) {
                std::vector<int> ji = J;
                ji.push_back(i);
                phi = add(phi, mul(vf.xi[i], ctx.jet_atom(dep, ji)));
            }
            pf.phi[J] = phi;
        }
    }
    return pf;
}

Expr apply_prolonged(const Context& ctx, const ProlongedField& pf, const Expr& e) {
    if (jet_order(e) > pf.order)
        throw Error("apply_prolonged: expression order exceeds prolongation order");
    const std::string& dep = ctx.deps.at(0).name;
    Expr out;
    for (std::size_t i = 0; i < pf.base.xi.size(); ++i)
        out = add(out, mul(pf.base.xi[i], diff(e, ctx.var_atom(static_cast<int>(i)))));
    for (const auto& [J, phi] : pf.phi)
        out = add(out, mul(phi, diff(e, ctx.jet_atom(dep, J))));
    return out;
}

} // namespace liesym
