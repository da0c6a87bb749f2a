#ifndef LIESYM_CONTEXT_HPP
#define LIESYM_CONTEXT_HPP

#include "liesym/expr.hpp"

#include <string>
#include <vector>

namespace liesym {

/// Symbol declarations: parameters, ordered independent variables, dependent
/// symbols, unknown coefficient functions and positivity constraints.
struct Context {
    struct Dep {
        std::string name;
        std::vector<std::string> args; // independent variable names
    };
    struct FuncDecl {
        std::string name;
        std::vector<std::string> args; // variable or dependent names
    };

    std::vector<std::string> params;
    std::vector<std::string> vars;
    std::vector<Dep> deps;
    std::vector<FuncDecl> funcs;
    std::vector<std::string> positive; // declared "name > 0"

    int var_id(const std::string& n) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == n) return static_cast<int>(i);
        return -1;
    }
    bool is_param(const std::string& n) const {
        for (const auto& p : params) if (p == n) return true;
        return false;
    }
    const Dep* dep(const std::string& n) const {
        for (const auto& d : deps) if (d.name == n) return &d;
        return nullptr;
    }
    const FuncDecl* func(const std::string& n) const {
        for (const auto& f : funcs) if (f.name == n) return &f;
        return nullptr;
    }
    bool is_positive(const std::string& n) const {
        for (const auto& p : positive) if (p == n) return true;
        return false;
    }

    Expr var_atom(int id) const { return Expr::var(vars.at(id), id); }
    Expr var_atom(const std::string& n) const {
        int id = var_id(n);
        if (id < 0) throw Error("undeclared variable: " + n);
        return Expr::var(n, id);
    }
    Expr param_atom(const std::string& n) const {
        if (!is_param(n)) throw Error("undeclared parameter: " + n);
        return Expr::param(n);
    }
    /// dependent symbol as the order-0 jet variable
    Expr dep_atom(const std::string& n) const {
        if (!dep(n)) throw Error("undeclared dependent symbol: " + n);
        return Expr::jet(n, {});
    }
    Expr jet_atom(const std::string& depname, const std::vector<int>& ids) const {
        std::vector<VarRef> idx;
        idx.reserve(ids.size());
        for (int id : ids) idx.push_back(VarRef{id, vars.at(id)});
        return Expr::jet(depname, std::move(idx));
    }
    /// name -> atom, for any declared symbol kind
    Expr atom(const std::string& n) const {
        if (is_param(n)) return Expr::param(n);
        if (var_id(n) >= 0) return var_atom(n);
        if (dep(n)) return dep_atom(n);
        if (const FuncDecl* f = func(n)) return func_atom(f->name);
        throw Error("undeclared symbol: " + n);
    }
    Expr func_atom(const std::string& n, std::vector<int> deriv = {}) const {
        const FuncDecl* f = func(n);
        if (!f) throw Error("undeclared function: " + n);
        std::vector<Expr> args;
        args.reserve(f->args.size());
        for (const auto& an : f->args) {
            if (var_id(an) >= 0) args.push_back(var_atom(an));
            else if (dep(an)) args.push_back(dep_atom(an));
            else throw Error("function " + n + " has undeclared argument " + an);
        }
        return Expr::func(n, std::move(args), std::move(deriv));
    }
};

} // namespace liesym

#endif
