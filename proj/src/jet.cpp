#include "liesym/jet.hpp"

#include <algorithm>

namespace liesym {

Expr total_derivative(const Context& ctx, const Expr& e, int var_id, int max_order) {
    Expr v = ctx.var_atom(var_id);
    Expr out = diff(e, v);
    // order-0 chain: u_v * de/du covers explicit occurrences of u and the
    // chain rule through unknown-function arguments in one stroke
    for (const auto& d : ctx.deps) {
        Expr du = diff(e, ctx.dep_atom(d.name));
        if (!du.is_zero())
            out = add(out, mul(ctx.jet_atom(d.name, {var_id}), du));
    }
    for (const Expr& a : atoms_of(e)) {
        if (a.kind() != Kind::Jet || a.node().index.empty()) continue;
        const ExprNode& n = a.node();
        Expr da = diff(e, a);
        if (da.is_zero()) continue;
        if (static_cast<int>(n.index.size()) + 1 > max_order)
            throw Error("total_derivative: jet order overflow past " +
                        std::to_string(max_order));
        std::vector<VarRef> idx = n.index;
        idx.push_back(VarRef{var_id, ctx.vars.at(var_id)});
        out = add(out, mul(Expr::jet(n.name, std::move(idx)), da));
    }
    return out;
}

namespace {

/// multiset inclusion of sorted id vectors; difference in `rest`
bool index_contains(const std::vector<VarRef>& big, const std::vector<VarRef>& small,
                    std::vector<int>* rest) {
    std::vector<int> b, s;
    for (const auto& v : big) b.push_back(v.id);
    for (const auto& v : small) s.push_back(v.id);
    std::vector<int> diffv;
    std::size_t i = 0, j = 0;
    while (i < b.size()) {
        if (j < s.size() && b[i] == s[j]) { ++i; ++j; }
        else if (j < s.size() && b[i] > s[j]) return false;
        else { diffv.push_back(b[i]); ++i; }
    }
    if (j != s.size()) return false;
    if (rest) *rest = std::move(diffv);
    return true;
}

} // namespace

Pde make_pde(const Context& ctx, const std::string& name, const Expr& lhs, const Expr& rhs) {
    Expr delta = sub(lhs, rhs);
    // candidate leads: jets of maximal order, largest in atom order first
    std::vector<Expr> jets;
    int maxord = 0;
    for (const Expr& a : atoms_of(delta))
        if (a.kind() == Kind::Jet) {
            jets.push_back(a);
            maxord = std::max(maxord, static_cast<int>(a.node().index.size()));
        }
    if (maxord == 0) throw Error("pde " + name + ": no jet variable of positive order");
    std::sort(jets.begin(), jets.end(), [](const Expr& a, const Expr& b) { return cmp(a, b) > 0; });
    for (const Expr& lead : jets) {
        if (static_cast<int>(lead.node().index.size()) != maxord) continue;
        LinearSplit ls;
        try {
            ls = split_linear(delta, lead);
        } catch (const Error&) {
            continue;
        }
        if (ls.coeff.is_zero()) continue;
        if (jet_order(ls.coeff) > 0) continue;
        Expr solved;
        try {
            solved = neg(div(ls.rest, ls.coeff));
        } catch (const Error&) {
            continue; // coefficient not invertible
        }
        if (contains_atom(solved, lead)) continue;
        Pde p{name, delta, lead, solved};
        // solved form must be algebraically equivalent to Delta = 0
        Expr check = sub(delta, mul(ls.coeff, sub(lead, solved)));
        if (!check.is_zero())
            throw Error("pde " + name + ": solved form does not reproduce the residual");
        return p;
    }
    throw Error("pde " + name + ": no solvable lead term found");
}

Expr on_solutions_reduce(const Context& ctx, const Expr& e, const Pde& pde, int max_order) {
    if (jet_order(e) > max_order)
        throw Error("on_solutions_reduce: expression order exceeds context bound");
    const std::vector<VarRef>& lead_idx = pde.lead.node().index;
    Expr cur = e;
    for (int round = 0; round <= max_order + 2; ++round) {
        // find the largest jet containing the lead index as a sub-multiset
        Expr target;
        std::vector<int> rest;
        bool found = false;
        for (const Expr& a : atoms_of(cur)) {
            if (a.kind() != Kind::Jet || a.node().name != pde.lead.node().name) continue;
            std::vector<int> r;
            if (index_contains(a.node().index, lead_idx, &r)) {
                if (!found || cmp(a, target) > 0) {
                    target = a;
                    rest = r;
                    found = true;
                }
            }
        }
        if (!found) return cur;
        Expr repl = pde.rhs;
        for (int vid : rest) repl = total_derivative(ctx, repl, vid, max_order + 1);
        Bindings b;
        b.bind(target, repl);
        cur = substitute(cur, b);
    }
    throw Error("on_solutions_reduce: no fixed point reached (lead reappears)");
}

} // namespace liesym
