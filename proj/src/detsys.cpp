#include "liesym/detsys.hpp"

#include <algorithm>
#include <cmath>

namespace liesym {

Ansatz make_ansatz(Context& ctx) {
    if (ctx.deps.size() != 1) throw Error("ansatz needs exactly one dependent symbol");
    std::vector<std::string> fargs = ctx.vars;
    fargs.push_back(ctx.deps[0].name);
    Ansatz a;
    for (std::size_t i = 0; i < ctx.vars.size(); ++i) {
        std::string name = "xi" + std::to_string(i + 1);
        if (!ctx.func(name)) ctx.funcs.push_back({name, fargs});
        a.xi.push_back(ctx.func_atom(name));
    }
    if (!ctx.func("eta")) ctx.funcs.push_back({"eta", fargs});
    a.eta = ctx.func_atom("eta");
    return a;
}

namespace {

/// factor vectors of a term split into (jet part, non-jet part)
struct SplitTerm {
    Expr jet_monomial;
    Expr rest;
};

SplitTerm split_term(const Expr& term) {
    std::vector<Expr> factors =
        term.kind() == Kind::Product ? term.node().kids : std::vector<Expr>{term};
    Expr jets = Expr::integer(1);
    Expr rest = Expr::integer(1);
    for (const Expr& f : factors) {
        Expr base = f;
        if (f.kind() == Kind::Power) base = f.node().kids[0];
        if (base.kind() == Kind::Jet) jets = mul(jets, f);
        else rest = mul(rest, f);
    }
    return SplitTerm{jets, rest};
}

int func_degree(const Expr& term) {
    int deg = 0;
    std::vector<Expr> factors =
        term.kind() == Kind::Product ? term.node().kids : std::vector<Expr>{term};
    for (const Expr& f : factors) {
        Expr base = f;
        Rat ex(1);
        if (f.kind() == Kind::Power) { base = f.node().kids[0]; ex = f.node().value; }
        if (base.kind() == Kind::Func) deg += std::abs(static_cast<int>(to_long(rat_num(ex))));
    }
    return deg;
}

/// divide by the rational content and fix the leading sign
Expr content_normalize(const Expr& e) {
    std::vector<Expr> terms = e.kind() == Kind::Sum ? e.node().kids : std::vector<Expr>{e};
    if (e.is_zero()) return e;
    Rat g(0);
    for (const Expr& t : terms) {
        Rat c(1);
        if (t.is_rational()) c = t.rat();
        else if (t.kind() == Kind::Product && t.node().kids[0].is_rational())
            c = t.node().kids[0].rat();
        g = rat_gcd(g, c);
    }
    Rat lead(1);
    const Expr& t0 = terms.front();
    if (t0.is_rational()) lead = t0.rat();
    else if (t0.kind() == Kind::Product && t0.node().kids[0].is_rational())
        lead = t0.node().kids[0].rat();
    if (lead < 0) g = -g;
    if (g == 0 || g == 1) return e;
    return mul(e, Expr::rational(Rat(1) / g));
}

} // namespace

DeterminingSystem determining_system(const Context& ctx, const Pde& pde, const Ansatz& ansatz) {
    VectorField vf;
    vf.name = "ansatz";
    vf.xi = ansatz.xi;
    vf.eta = ansatz.eta;
    ProlongedField pf = prolong(ctx, vf, 2);
    Expr e = apply_prolonged(ctx, pf, pde.residual);
    e = on_solutions_reduce(ctx, e, pde);
    // collect monomial coefficients
    std::vector<Expr> terms = e.kind() == Kind::Sum ? e.node().kids : std::vector<Expr>{e};
    if (e.is_zero()) terms.clear();
    std::map<std::string, std::pair<Expr, Expr>> grouped; // key -> (monomial, coeff)
    for (const Expr& t : terms) {
        if (func_degree(t) > 1)
            throw Error("determining system: nonlinear occurrence of an unknown function");
        SplitTerm st = split_term(t);
        std::string key = to_string(st.jet_monomial);
        auto it = grouped.find(key);
        if (it == grouped.end())
            grouped.emplace(key, std::make_pair(st.jet_monomial, st.rest));
        else
            it->second.second = add(it->second.second, st.rest);
    }
    DeterminingSystem out;
    std::vector<std::string> seen;
    for (auto& [key, pair] : grouped) {
        Expr eq = content_normalize(pair.second);
        if (eq.is_zero()) continue;
        std::string eqs = to_string(eq);
        bool dup = false;
        for (const auto& s : seen)
            if (s == eqs) { dup = true; break; }
        if (dup) continue;
        seen.push_back(eqs);
        out.equations.push_back(eq);
        out.monomial.push_back(key);
    }
    return out;
}

ZeroCheck classify_zero(const Context& ctx, const Expr& e, Rng& rng, int samples) {
    ZeroCheck out;
    if (e.is_zero()) {
        out.cls = ZeroClass::Zero;
        return out;
    }
    if (e.is_rational()) {
        out.cls = ZeroClass::NonzeroWitness;
        out.value = rat_double(e.rat());
        out.witness = "constant";
        return out;
    }
    for (int s = 0; s < samples; ++s) {
        std::map<std::string, double> pt;
        for (const Expr& a : atoms_of(e)) {
            if (a.kind() == Kind::Func) return out; // cannot sample opaque functions
            std::string n = atom_name(a);
            bool positive = a.kind() == Kind::Var && ctx.is_positive(a.node().var.name);
            pt[n] = positive ? rng.uniform(0.5, 2.0) : rng.uniform(-2.0, 2.0);
        }
        double v;
        try {
            v = eval_numeric(e, pt);
        } catch (const Error&) {
            continue;
        }
        if (std::isfinite(v) && std::fabs(v) > 1e-6) {
            out.cls = ZeroClass::NonzeroWitness;
            out.value = v;
            std::string w;
            for (const auto& [nm, val] : pt) {
                if (!w.empty()) w += ", ";
                w += nm + "=" + std::to_string(val);
            }
            out.witness = w;
            return out;
        }
    }
    return out; // unresolved
}

SymmetryVerdict check_symmetry(const Context& ctx, const Pde& pde, const VectorField& vf,
                               std::uint64_t seed) {
    SymmetryVerdict v;
    ProlongedField pf = prolong(ctx, vf, 2);
    Expr pre = apply_prolonged(ctx, pf, pde.residual);
    v.residual = on_solutions_reduce(ctx, pre, pde);
    Rng rng(seed);
    if (v.residual.is_zero()) {
        v.cls = SymmetryClass::Symmetry;
        // numeric corroboration on 50 on-manifold points of the unreduced residual
        double mx = 0;
        int done = 0;
        for (int s = 0; s < 400 && done < 50; ++s) {
            std::map<std::string, double> pt;
            for (const Expr& a : atoms_of(pre)) {
                std::string n = atom_name(a);
                if (pt.count(n)) continue;
                bool positive = a.kind() == Kind::Var && ctx.is_positive(a.node().var.name);
                pt[n] = positive ? rng.uniform(0.5, 2.0) : rng.uniform(-2.0, 2.0);
            }
            // lead assigned from the solved form puts the point on the manifold
            try {
                for (const Expr& a : atoms_of(pde.rhs)) {
                    if (!pt.count(atom_name(a))) {
                        bool positive =
                            a.kind() == Kind::Var && ctx.is_positive(a.node().var.name);
                        pt[atom_name(a)] = positive ? rng.uniform(0.5, 2.0)
                                                    : rng.uniform(-2.0, 2.0);
                    }
                }
                pt[atom_name(pde.lead)] = eval_numeric(pde.rhs, pt);
                mx = std::max(mx, std::fabs(eval_numeric(pre, pt)));
                ++done;
            } catch (const Error&) {
                continue;
            }
        }
        v.max_onmanifold_residual = mx;
        return v;
    }
    ZeroCheck z = classify_zero(ctx, v.residual, rng);
    if (z.cls == ZeroClass::NonzeroWitness) {
        v.cls = SymmetryClass::NotSymmetry;
        v.witness = z.witness;
        v.max_onmanifold_residual = std::fabs(z.value);
    } else {
        v.cls = SymmetryClass::Unresolved;
    }
    return v;
}

VectorField generator_of(const Context& ctx, const GeneralSolution& sol, int m) {
    Expr cm = Expr::param(sol.constants.at(m));
    VectorField vf = vf_zero(ctx);
    vf.name = "gen_" + sol.constants.at(m);
    for (std::size_t i = 0; i < sol.xi.size(); ++i)
        vf.xi[i] = split_linear(sol.xi[i], cm).coeff;
    vf.eta = split_linear(sol.eta, cm).coeff;
    return vf;
}

std::vector<std::vector<Expr>> check_printed_equations(const Context& ctx,
                                                       const std::vector<Expr>& printed_eqs,
                                                       const GeneralSolution& sol) {
    Bindings b;
    for (std::size_t i = 0; i < sol.xi.size(); ++i)
        b.bind_func("xi" + std::to_string(i + 1), sol.xi[i]);
    b.bind_func("eta", sol.eta);
    std::vector<std::vector<Expr>> table;
    for (const Expr& eq : printed_eqs) {
        Expr resid = substitute(eq, b);
        std::vector<Expr> row;
        for (const auto& cn : sol.constants)
            row.push_back(split_linear(resid, Expr::param(cn)).coeff);
        table.push_back(std::move(row));
    }
    return table;
}

} // namespace liesym
