#include "liesym/expr.hpp"

#include <algorithm>
#include <cmath>
#include <cassert>
#include <sstream>

namespace liesym {

// ---------------------------------------------------------------------------
// node construction and hashing

namespace {

std::size_t node_hash(const ExprNode& n) {
    std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
    switch (n.kind) {
    case Kind::Rational: h = hash_combine(h, rat_hash(n.value)); break;
    case Kind::Param:    h = hash_combine(h, std::hash<std::string>{}(n.name)); break;
    case Kind::Var:
        h = hash_combine(h, std::hash<std::string>{}(n.var.name));
        h = hash_combine(h, std::hash<int>{}(n.var.id));
        break;
    case Kind::Jet:
        h = hash_combine(h, std::hash<std::string>{}(n.name));
        for (const auto& v : n.index) h = hash_combine(h, std::hash<int>{}(v.id));
        break;
    case Kind::Func:
        h = hash_combine(h, std::hash<std::string>{}(n.name));
        for (int d : n.deriv) h = hash_combine(h, std::hash<int>{}(d));
        for (const auto& ag : n.args) h = hash_combine(h, ag.hash());
        break;
    case Kind::Power:
        h = hash_combine(h, rat_hash(n.value));
        [[fallthrough]];
    default:
        for (const auto& kd : n.kids) h = hash_combine(h, kd.hash());
        break;
    }
    return h;
}

} // namespace

Expr make_node(ExprNode&& n) {
    n.hash = node_hash(n);
    return Expr(std::make_shared<const ExprNode>(std::move(n)));
}

Expr::Expr() {
    ExprNode n;
    n.kind = Kind::Rational;
    n.value = 0;
    n.hash = node_hash(n);
    p_ = std::make_shared<const ExprNode>(std::move(n));
}

Expr Expr::rational(const Rat& q) {
    ExprNode n;
    n.kind = Kind::Rational;
    n.value = q;
    return make_node(std::move(n));
}

Expr Expr::integer(long v) { return rational(Rat(v)); }

Expr Expr::param(const std::string& name) {
    ExprNode n;
    n.kind = Kind::Param;
    n.name = name;
    return make_node(std::move(n));
}

Expr Expr::var(const std::string& name, int id) {
    ExprNode n;
    n.kind = Kind::Var;
    n.var = VarRef{id, name};
    return make_node(std::move(n));
}

Expr Expr::jet(const std::string& dep, std::vector<VarRef> index) {
    std::sort(index.begin(), index.end(),
              [](const VarRef& a, const VarRef& b) { return a.id < b.id; });
    ExprNode n;
    n.kind = Kind::Jet;
    n.name = dep;
    n.index = std::move(index);
    return make_node(std::move(n));
}

Expr Expr::func(const std::string& name, std::vector<Expr> arg_atoms, std::vector<int> deriv) {
    std::sort(deriv.begin(), deriv.end());
    ExprNode n;
    n.kind = Kind::Func;
    n.name = name;
    n.args = std::move(arg_atoms);
    n.deriv = std::move(deriv);
    return make_node(std::move(n));
}

const Rat& Expr::rat() const {
    if (!is_rational()) throw Error("not a rational constant: " + to_string(*this));
    return p_->value;
}

bool Expr::operator==(const Expr& o) const {
    if (p_ == o.p_) return true;
    if (p_->hash != o.p_->hash) return false;
    return cmp(*this, o) == 0;
}

// ---------------------------------------------------------------------------
// total order

namespace {
int kind_rank(Kind k) { return static_cast<int>(k); }
}

int cmp(const Expr& a, const Expr& b) {
    if (a.node().kind != b.node().kind)
        return kind_rank(a.node().kind) < kind_rank(b.node().kind) ? -1 : 1;
    const ExprNode& x = a.node();
    const ExprNode& y = b.node();
    switch (x.kind) {
    case Kind::Rational:
        return rat_cmp(x.value, y.value);
    case Kind::Param:
        return x.name.compare(y.name) < 0 ? -1 : (x.name == y.name ? 0 : 1);
    case Kind::Var: {
        if (x.var.id != y.var.id) return x.var.id < y.var.id ? -1 : 1;
        int c = x.name.compare(y.name); // names should agree with ids
        if (c != 0) return c < 0 ? -1 : 1;
        int c2 = x.var.name.compare(y.var.name);
        return c2 < 0 ? -1 : (c2 == 0 ? 0 : 1);
    }
    case Kind::Jet: {
        if (x.name != y.name) return x.name < y.name ? -1 : 1;
        if (x.index.size() != y.index.size())
            return x.index.size() < y.index.size() ? -1 : 1;
        for (std::size_t i = 0; i < x.index.size(); ++i)
            if (x.index[i].id != y.index[i].id)
                return x.index[i].id < y.index[i].id ? -1 : 1;
        return 0;
    }
    case Kind::Func: {
        if (x.name != y.name) return x.name < y.name ? -1 : 1;
        if (x.deriv.size() != y.deriv.size())
            return x.deriv.size() < y.deriv.size() ? -1 : 1;
        for (std::size_t i = 0; i < x.deriv.size(); ++i)
            if (x.deriv[i] != y.deriv[i]) return x.deriv[i] < y.deriv[i] ? -1 : 1;
        if (x.args.size() != y.args.size())
            return x.args.size() < y.args.size() ? -1 : 1;
        for (std::size_t i = 0; i < x.args.size(); ++i) {
            int c = cmp(x.args[i], y.args[i]);
            if (c != 0) return c;
        }
        return 0;
    }
    case Kind::Power: {
        int c = cmp(x.kids[0], y.kids[0]);
        if (c != 0) return c;
        return rat_cmp(x.value, y.value);
    }
    default: { // unary functions, Product, Sum
        if (x.kids.size() != y.kids.size())
            return x.kids.size() < y.kids.size() ? -1 : 1;
        for (std::size_t i = 0; i < x.kids.size(); ++i) {
            int c = cmp(x.kids[i], y.kids[i]);
            if (c != 0) return c;
        }
        return 0;
    }
    }
}

// ---------------------------------------------------------------------------
// term representation

namespace {

struct Factor {
    Expr base;
    Rat exp;
};

struct Term {
    Rat coeff;
    std::vector<Factor> fs;
};

using Terms = std::vector<Term>;

int cmp_monomial(const std::vector<Factor>& a, const std::vector<Factor>& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = cmp(a[i].base, b[i].base);
        if (c != 0) return c;
        c = rat_cmp(a[i].exp, b[i].exp);
        if (c != 0) return c;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

Terms finish_term(Rat coeff, std::vector<Factor> fs);
Terms mul_terms(const Terms& A, const Terms& B);
Terms pow_terms(const Terms& A, const Rat& q);
Terms to_terms(const Expr& e);
Expr from_terms(Terms ts);

void sort_merge(Terms& ts) {
    std::sort(ts.begin(), ts.end(), [](const Term& l, const Term& r) {
        return cmp_monomial(l.fs, r.fs) < 0;
    });
    Terms out;
    for (auto& t : ts) {
        if (t.coeff == 0) continue;
        if (!out.empty() && cmp_monomial(out.back().fs, t.fs) == 0) {
            out.back().coeff += t.coeff;
            if (out.back().coeff == 0) out.pop_back();
        } else {
            out.push_back(std::move(t));
        }
    }
    ts = std::move(out);
}

Terms add_terms(Terms A, const Terms& B) {
    A.insert(A.end(), B.begin(), B.end());
    sort_merge(A);
    return A;
}

Terms scale_terms(Terms A, const Rat& c) {
    if (c == 0) return {};
    for (auto& t : A) t.coeff *= c;
    return A;
}

bool prime_factorize(Int n, std::vector<std::pair<Int, long>>& out) {
    // trial division; bases come from literal constants, so they stay small
    if (n <= 0) return false;
    for (Int p = 2; p * p <= n; ++p) {
        long e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out.emplace_back(p, e);
        if (p > 1000000) return false;
    }
    if (n > 1) out.emplace_back(n, 1);
    return true;
}

/// base^q for rational base >= 0 and fractional q: coeff * prime surd factors.
Term rational_surd_pow(const Rat& base, const Rat& q) {
    if (base < 0) throw Error("fractional power of a negative constant");
    if (base == 0) {
        if (q > 0) return Term{Rat(0), {}};
        throw Error("zero raised to a nonpositive fractional power");
    }
    std::vector<std::pair<Int, long>> pf;
    if (!prime_factorize(rat_num(base), pf))
        throw Error("fractional power of a constant with a large prime factor");
    std::size_t numcnt = pf.size();
    if (!prime_factorize(rat_den(base), pf))
        throw Error("fractional power of a constant with a large prime factor");
    Term t{Rat(1), {}};
    for (std::size_t i = 0; i < pf.size(); ++i) {
        Rat e = Rat(pf[i].second) * q;
        if (i >= numcnt) e = -e;
        // split e into integer part + fractional part in (0,1)
        Int num = rat_num(e), den = rat_den(e);
        Int fl = num >= 0 ? num / den : -((-num + den - 1) / den);
        Rat frac = e - Rat(fl);
        t.coeff *= rat_pow(Rat(pf[i].first), to_long(fl));
        if (frac != 0)
            t.fs.push_back(Factor{Expr::rational(Rat(pf[i].first)), frac});
    }
    std::sort(t.fs.begin(), t.fs.end(),
              [](const Factor& a, const Factor& b) { return cmp(a.base, b.base) < 0; });
    return t;
}

/// Cleanup of a raw factor list: fold rationals/surds, merge exp-factors,
/// expand positive powers of sum atoms, apply sin^2/sinh^2 rewrites.
Terms finish_term(Rat coeff, std::vector<Factor> fs) {
    if (coeff == 0) return {};
    std::sort(fs.begin(), fs.end(),
              [](const Factor& a, const Factor& b) { return cmp(a.base, b.base) < 0; });
    // merge equal bases
    std::vector<Factor> merged;
    for (auto& f : fs) {
        if (!merged.empty() && cmp(merged.back().base, f.base) == 0)
            merged.back().exp += f.exp;
        else
            merged.push_back(std::move(f));
    }
    std::vector<Factor> plain;
    std::vector<Expr> exp_args;      // arguments of exp factors (with multiplicity)
    std::vector<Terms> pending;      // expansions to multiply in
    Term rewrite_sin;                // placeholder
    std::vector<std::pair<Expr, long>> sin_rewrites;  // (theta, pairs) for sin
    std::vector<std::pair<Expr, long>> sinh_rewrites;
    for (auto& f : merged) {
        if (f.exp == 0) continue;
        Kind bk = f.base.kind();
        if (bk == Kind::Rational) {
            const Rat& bv = f.base.rat();
            if (is_integer(f.exp)) {
                coeff *= rat_pow(bv, to_long(rat_num(f.exp)));
            } else {
                Term s = rational_surd_pow(bv, f.exp);
                coeff *= s.coeff;
                for (auto& sf : s.fs) plain.push_back(sf);
            }
            continue;
        }
        if (bk == Kind::Exp) {
            Expr arg = f.base.node().kids[0];
            if (f.exp != 1) arg = mul(arg, Expr::rational(f.exp));
            exp_args.push_back(arg);
            continue;
        }
        if (bk == Kind::Sum) {
            if (!is_integer(f.exp))
                throw Error("fractional power of a non-constant expression");
            if (f.exp > 0) {
                pending.push_back(pow_terms(to_terms(f.base), f.exp));
                continue;
            }
            plain.push_back(std::move(f));
            continue;
        }
        if ((bk == Kind::Sin || bk == Kind::Sinh) && is_integer(f.exp) && f.exp >= 2) {
            long n = to_long(rat_num(f.exp));
            long pairs = n / 2;
            if (n % 2)
                plain.push_back(Factor{f.base, Rat(1)});
            Expr theta = f.base.node().kids[0];
            if (bk == Kind::Sin) sin_rewrites.emplace_back(theta, pairs);
            else sinh_rewrites.emplace_back(theta, pairs);
            continue;
        }
        if (!is_integer(f.exp))
            throw Error("fractional power of a non-constant expression");
        plain.push_back(std::move(f));
    }
    if (coeff == 0) return {};
    if (!exp_args.empty()) {
        Expr total = exp_args[0];
        for (std::size_t i = 1; i < exp_args.size(); ++i) total = add(total, exp_args[i]);
        if (!total.is_zero()) {
            ExprNode n;
            n.kind = Kind::Exp;
            n.kids = {total};
            plain.push_back(Factor{make_node(std::move(n)), Rat(1)});
        }
    }
    std::sort(plain.begin(), plain.end(),
              [](const Factor& a, const Factor& b) { return cmp(a.base, b.base) < 0; });
    Terms out{Term{coeff, std::move(plain)}};
    for (auto& [theta, pairs] : sin_rewrites) {
        // (1 - cos(theta)^2)^pairs
        Terms one_minus{Term{Rat(1), {}},
                        Term{Rat(-1), {Factor{cos_(theta), Rat(2)}}}};
        sort_merge(one_minus);
        for (long p = 0; p < pairs; ++p) out = mul_terms(out, one_minus);
    }
    for (auto& [theta, pairs] : sinh_rewrites) {
        Terms ch_minus{Term{Rat(-1), {}},
                       Term{Rat(1), {Factor{cosh_(theta), Rat(2)}}}};
        sort_merge(ch_minus);
        for (long p = 0; p < pairs; ++p) out = mul_terms(out, ch_minus);
    }
    for (auto& ts : pending) out = mul_terms(out, ts);
    sort_merge(out);
    return out;
}

Terms mul_pair(const Term& a, const Term& b) {
    std::vector<Factor> fs = a.fs;
    fs.insert(fs.end(), b.fs.begin(), b.fs.end());
    return finish_term(a.coeff * b.coeff, std::move(fs));
}

Terms mul_terms(const Terms& A, const Terms& B) {
    Terms out;
    for (const auto& ta : A)
        for (const auto& tb : B) {
            Terms p = mul_pair(ta, tb);
            out.insert(out.end(), p.begin(), p.end());
        }
    sort_merge(out);
    return out;
}

/// content of a sum: positive gcd of coefficients, carrying the first term's sign
Rat terms_content(const Terms& A) {
    Rat g(0);
    for (const auto& t : A) g = rat_gcd(g, t.coeff);
    if (!A.empty() && A.front().coeff < 0) g = -g;
    return g == 0 ? Rat(1) : g;
}

Terms pow_terms(const Terms& A, const Rat& q) {
    if (A.empty()) {
        if (q > 0) return {};
        if (q == 0) return {Term{Rat(1), {}}};
        throw Error("division by zero");
    }
    if (q == 0) return {Term{Rat(1), {}}};
    if (q == 1) return A;
    if (A.size() == 1) {
        const Term& t = A[0];
        std::vector<Factor> fs;
        fs.reserve(t.fs.size());
        bool all_rat_bases = true;
        for (const auto& f : t.fs) {
            if (f.base.kind() != Kind::Rational) all_rat_bases = false;
            fs.push_back(Factor{f.base, f.exp * q});
        }
        Rat c;
        if (is_integer(q)) {
            if (!all_rat_bases) {
                for (const auto& f : fs)
                    if (!is_integer(f.exp))
                        throw Error("fractional power of a non-constant expression");
            }
            c = rat_pow(t.coeff, to_long(rat_num(q)));
        } else {
            if (!all_rat_bases)
                throw Error("fractional power allowed only on nonnegative rational constants");
            Term s = rational_surd_pow(t.coeff, q);
            c = s.coeff;
            fs.insert(fs.end(), s.fs.begin(), s.fs.end());
        }
        return finish_term(c, std::move(fs));
    }
    // multi-term base
    if (!is_integer(q))
        throw Error("fractional power allowed only on nonnegative rational constants");
    long n = to_long(rat_num(q));
    if (n > 0) {
        Terms out{Term{Rat(1), {}}};
        Terms base = A;
        long e = n;
        while (e) {
            if (e & 1) out = mul_terms(out, base);
            e >>= 1;
            if (e) base = mul_terms(base, base);
        }
        return out;
    }
    // negative power of a sum: opaque inverse of the content-normalized sum
    Rat c = terms_content(A);
    Terms inner = scale_terms(A, Rat(1) / c);
    ExprNode pn;
    pn.kind = Kind::Power;
    pn.kids = {from_terms(std::move(inner))};
    pn.value = q;
    Term t{rat_pow(c, n), {}};
    Expr powex = make_node(std::move(pn));
    // represent as factor (sum, q)
    t.fs.push_back(Factor{powex.node().kids[0], q});
    return finish_term(t.coeff, std::move(t.fs));
}

// --- conversion between trees and terms

Factor factor_of(const Expr& e) {
    if (e.kind() == Kind::Power)
        return Factor{e.node().kids[0], e.node().value};
    return Factor{e, Rat(1)};
}

Term term_of(const Expr& e) {
    switch (e.kind()) {
    case Kind::Rational:
        return Term{e.rat(), {}};
    case Kind::Product: {
        Term t{Rat(1), {}};
        for (const auto& kd : e.node().kids) {
            if (kd.is_rational()) t.coeff *= kd.rat();
            else t.fs.push_back(factor_of(kd));
        }
        return t;
    }
    default:
        return Term{Rat(1), {factor_of(e)}};
    }
}

Terms to_terms(const Expr& e) {
    if (e.kind() == Kind::Sum) {
        Terms ts;
        ts.reserve(e.node().kids.size());
        for (const auto& kd : e.node().kids) ts.push_back(term_of(kd));
        return ts;
    }
    if (e.is_zero()) return {};
    return {term_of(e)};
}

Expr factor_expr(const Factor& f) {
    if (f.exp == 1) return f.base;
    ExprNode n;
    n.kind = Kind::Power;
    n.kids = {f.base};
    n.value = f.exp;
    return make_node(std::move(n));
}

Expr term_expr(const Term& t) {
    std::vector<Expr> kids;
    if (t.coeff != 1 || t.fs.empty()) kids.push_back(Expr::rational(t.coeff));
    for (const auto& f : t.fs) kids.push_back(factor_expr(f));
    if (kids.size() == 1) return kids[0];
    ExprNode n;
    n.kind = Kind::Product;
    n.kids = std::move(kids);
    return make_node(std::move(n));
}

Expr from_terms(Terms ts) {
    if (ts.empty()) return Expr();
    if (ts.size() == 1) return term_expr(ts[0]);
    ExprNode n;
    n.kind = Kind::Sum;
    n.kids.reserve(ts.size());
    for (const auto& t : ts) n.kids.push_back(term_expr(t));
    return make_node(std::move(n));
}

} // namespace

// ---------------------------------------------------------------------------
// public arithmetic

Expr add(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return from_terms(add_terms(to_terms(a), to_terms(b)));
}

Expr sub(const Expr& a, const Expr& b) { return add(a, neg(b)); }

Expr neg(const Expr& a) {
    return from_terms(scale_terms(to_terms(a), Rat(-1)));
}

Expr mul(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    return from_terms(mul_terms(to_terms(a), to_terms(b)));
}

Expr pow(const Expr& a, const Rat& e) {
    return from_terms(pow_terms(to_terms(a), e));
}

Expr div(const Expr& a, const Expr& b) {
    if (b.is_zero()) throw Error("division by zero");
    return mul(a, pow(b, Rat(-1)));
}

namespace {

bool negative_leading(const Expr& e) {
    Terms ts = to_terms(e);
    return !ts.empty() && ts.front().coeff < 0;
}

Expr unary_node(Kind k, const Expr& arg) {
    ExprNode n;
    n.kind = k;
    n.kids = {arg};
    return make_node(std::move(n));
}

} // namespace

Expr sin_(const Expr& a) {
    if (a.is_zero()) return Expr();
    if (negative_leading(a)) return neg(sin_(neg(a)));
    return unary_node(Kind::Sin, a);
}

Expr cos_(const Expr& a) {
    if (a.is_zero()) return Expr::integer(1);
    if (negative_leading(a)) return cos_(neg(a));
    return unary_node(Kind::Cos, a);
}

Expr sinh_(const Expr& a) {
    if (a.is_zero()) return Expr();
    if (negative_leading(a)) return neg(sinh_(neg(a)));
    return unary_node(Kind::Sinh, a);
}

Expr cosh_(const Expr& a) {
    if (a.is_zero()) return Expr::integer(1);
    if (negative_leading(a)) return cosh_(neg(a));
    return unary_node(Kind::Cosh, a);
}

Expr exp_(const Expr& a) {
    if (a.is_zero()) return Expr::integer(1);
    return from_terms(finish_term(Rat(1), {Factor{unary_node(Kind::Exp, a), Rat(1)}}));
}

Expr sqrt_(const Expr& a) { return pow(a, Rat(1, 2)); }

Expr normalize(const Expr& e) {
    switch (e.kind()) {
    case Kind::Rational:
    case Kind::Param:
    case Kind::Var:
    case Kind::Jet:
    case Kind::Func:
        return e;
    case Kind::Sin:  return sin_(normalize(e.node().kids[0]));
    case Kind::Cos:  return cos_(normalize(e.node().kids[0]));
    case Kind::Sinh: return sinh_(normalize(e.node().kids[0]));
    case Kind::Cosh: return cosh_(normalize(e.node().kids[0]));
    case Kind::Exp:  return exp_(normalize(e.node().kids[0]));
    case Kind::Power: return pow(normalize(e.node().kids[0]), e.node().value);
    case Kind::Product: {
        Expr out = Expr::integer(1);
        for (const auto& kd : e.node().kids) out = mul(out, normalize(kd));
        return out;
    }
    case Kind::Sum: {
        Expr out;
        for (const auto& kd : e.node().kids) out = add(out, normalize(kd));
        return out;
    }
    }
    throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// differentiation

namespace {

Terms diff_terms(const Expr& e, const Expr& atom);

/// derivative of a factor base (not including the power rule)
Terms diff_base(const Expr& base, const Expr& atom) {
    if (cmp(base, atom) == 0) return {Term{Rat(1), {}}};
    switch (base.kind()) {
    case Kind::Rational:
    case Kind::Param:
    case Kind::Var:
    case Kind::Jet:
        return {};
    case Kind::Func: {
        const ExprNode& f = base.node();
        for (std::size_t p = 0; p < f.args.size(); ++p) {
            if (cmp(f.args[p], atom) == 0) {
                std::vector<int> idx = f.deriv;
                idx.push_back(static_cast<int>(p));
                return {Term{Rat(1),
                             {Factor{Expr::func(f.name, f.args, std::move(idx)), Rat(1)}}}};
            }
        }
        return {};
    }
    case Kind::Sin:
        return mul_terms(to_terms(cos_(base.node().kids[0])),
                         diff_terms(base.node().kids[0], atom));
    case Kind::Cos:
        return scale_terms(mul_terms(to_terms(sin_(base.node().kids[0])),
                                     diff_terms(base.node().kids[0], atom)),
                           Rat(-1));
    case Kind::Sinh:
        return mul_terms(to_terms(cosh_(base.node().kids[0])),
                         diff_terms(base.node().kids[0], atom));
    case Kind::Cosh:
        return mul_terms(to_terms(sinh_(base.node().kids[0])),
                         diff_terms(base.node().kids[0], atom));
    case Kind::Exp:
        return mul_terms(to_terms(exp_(base.node().kids[0])),
                         diff_terms(base.node().kids[0], atom));
    case Kind::Sum:
        return diff_terms(base, atom);
    default:
        throw Error("unexpected factor base in diff");
    }
}

Terms diff_term(const Term& t, const Expr& atom) {
    Terms out;
    for (std::size_t i = 0; i < t.fs.size(); ++i) {
        Terms db = diff_base(t.fs[i].base, atom);
        if (db.empty()) continue;
        // coeff * exp * base^(exp-1) * db * (other factors)
        std::vector<Factor> rest;
        rest.reserve(t.fs.size());
        for (std::size_t j = 0; j < t.fs.size(); ++j) {
            if (j == i) {
                if (t.fs[i].exp != 1)
                    rest.push_back(Factor{t.fs[i].base, t.fs[i].exp - 1});
            } else {
                rest.push_back(t.fs[j]);
            }
        }
        Terms piece = finish_term(t.coeff * t.fs[i].exp, std::move(rest));
        piece = mul_terms(piece, db);
        out.insert(out.end(), piece.begin(), piece.end());
    }
    sort_merge(out);
    return out;
}

Terms diff_terms(const Expr& e, const Expr& atom) {
    Terms out;
    for (const auto& t : to_terms(e)) {
        Terms d = diff_term(t, atom);
        out.insert(out.end(), d.begin(), d.end());
    }
    sort_merge(out);
    return out;
}

} // namespace

Expr diff(const Expr& e, const Expr& atom) {
    Kind k = atom.kind();
    if (k != Kind::Param && k != Kind::Var && k != Kind::Jet)
        throw Error("diff: differentiation variable must be a Param, Var or Jet atom");
    return from_terms(diff_terms(e, atom));
}

// ---------------------------------------------------------------------------
// substitution

const Expr* Bindings::find_atom(const Expr& a) const {
    for (const auto& [at, val] : atoms)
        if (cmp(at, a) == 0) return &val;
    return nullptr;
}

const Expr* Bindings::find_func(const std::string& n) const {
    for (const auto& [nm, val] : funcs)
        if (nm == n) return &val;
    return nullptr;
}

namespace {

Expr subst_expr(const Expr& e, const Bindings& b);

Expr subst_base(const Expr& base, const Bindings& b) {
    switch (base.kind()) {
    case Kind::Rational:
        return base;
    case Kind::Param:
    case Kind::Var:
    case Kind::Jet:
        if (const Expr* v = b.find_atom(base)) return *v;
        return base;
    case Kind::Func: {
        const ExprNode& f = base.node();
        if (const Expr* v = b.find_func(f.name)) {
            Expr out = *v;
            for (int p : f.deriv) {
                if (p < 0 || p >= static_cast<int>(f.args.size()))
                    throw Error("substitute: function arity mismatch for " + f.name);
                out = diff(out, f.args[p]);
            }
            return out;
        }
        return base;
    }
    case Kind::Sin:  return sin_(subst_expr(base.node().kids[0], b));
    case Kind::Cos:  return cos_(subst_expr(base.node().kids[0], b));
    case Kind::Sinh: return sinh_(subst_expr(base.node().kids[0], b));
    case Kind::Cosh: return cosh_(subst_expr(base.node().kids[0], b));
    case Kind::Exp:  return exp_(subst_expr(base.node().kids[0], b));
    case Kind::Sum:  return subst_expr(base, b);
    default:
        throw Error("unexpected factor base in substitute");
    }
}

Expr subst_expr(const Expr& e, const Bindings& b) {
    Terms out;
    for (const auto& t : to_terms(e)) {
        Terms acc{Term{t.coeff, {}}};
        for (const auto& f : t.fs) {
            Expr nb = subst_base(f.base, b);
            acc = mul_terms(acc, pow_terms(to_terms(nb), f.exp));
            if (acc.empty()) break;
        }
        out.insert(out.end(), acc.begin(), acc.end());
    }
    sort_merge(out);
    return from_terms(std::move(out));
}

} // namespace

Expr substitute(const Expr& e, const Bindings& b) { return subst_expr(e, b); }

// ---------------------------------------------------------------------------
// numeric evaluation

namespace {

double eval_node(const Expr& e, const std::map<std::string, double>& assign) {
    switch (e.kind()) {
    case Kind::Rational:
        return rat_double(e.rat());
    case Kind::Param:
    case Kind::Var:
    case Kind::Jet: {
        auto it = assign.find(atom_name(e));
        if (it == assign.end()) throw Error("unassigned symbol: " + atom_name(e));
        return it->second;
    }
    case Kind::Func: {
        auto it = assign.find(atom_name(e));
        if (it == assign.end()) throw Error("unassigned symbol: " + atom_name(e));
        return it->second;
    }
    case Kind::Sin:  return std::sin(eval_node(e.node().kids[0], assign));
    case Kind::Cos:  return std::cos(eval_node(e.node().kids[0], assign));
    case Kind::Sinh: return std::sinh(eval_node(e.node().kids[0], assign));
    case Kind::Cosh: return std::cosh(eval_node(e.node().kids[0], assign));
    case Kind::Exp:  return std::exp(eval_node(e.node().kids[0], assign));
    case Kind::Power: {
        double base = eval_node(e.node().kids[0], assign);
        const Rat& q = e.node().value;
        if (base == 0.0 && q < 0) throw Error("division by zero in eval");
        if (base < 0.0 && !is_integer(q))
            throw Error("fractional power of a negative value in eval");
        return std::pow(base, rat_double(q));
    }
    case Kind::Product: {
        double p = 1.0;
        for (const auto& kd : e.node().kids) p *= eval_node(kd, assign);
        return p;
    }
    case Kind::Sum: {
        double sacc = 0.0;
        for (const auto& kd : e.node().kids) sacc += eval_node(kd, assign);
        return sacc;
    }
    }
    throw Error("unreachable");
}

} // namespace

double eval_numeric(const Expr& e, const std::map<std::string, double>& assign) {
    return eval_node(e, assign);
}

// ---------------------------------------------------------------------------
// printing

std::string atom_name(const Expr& atom) {
    const ExprNode& n = atom.node();
    switch (n.kind) {
    case Kind::Param: return n.name;
    case Kind::Var:   return n.var.name;
    case Kind::Jet: {
        if (n.index.empty()) return n.name;
        std::string s = n.name + "_";
        for (const auto& v : n.index) s += v.name;
        return s;
    }
    case Kind::Func: {
        if (n.deriv.empty()) return n.name;
        std::string s = n.name + "_";
        for (int p : n.deriv) s += atom_name(n.args[p]);
        return s;
    }
    default:
        throw Error("atom_name: not an atom");
    }
}

namespace {

std::string print_expr(const Expr& e, bool parenthesize_sum);

std::string print_factor(const Factor& f) {
    std::string base;
    bool need_paren = f.base.kind() == Kind::Sum || f.base.kind() == Kind::Rational;
    switch (f.base.kind()) {
    case Kind::Param: case Kind::Var: case Kind::Jet: case Kind::Func:
        base = atom_name(f.base);
        break;
    case Kind::Sin:  base = "sin(" + print_expr(f.base.node().kids[0], false) + ")"; break;
    case Kind::Cos:  base = "cos(" + print_expr(f.base.node().kids[0], false) + ")"; break;
    case Kind::Sinh: base = "sinh(" + print_expr(f.base.node().kids[0], false) + ")"; break;
    case Kind::Cosh: base = "cosh(" + print_expr(f.base.node().kids[0], false) + ")"; break;
    case Kind::Exp:  base = "exp(" + print_expr(f.base.node().kids[0], false) + ")"; break;
    case Kind::Rational: base = rat_str(f.base.rat()); break;
    case Kind::Sum:  base = "(" + print_expr(f.base, false) + ")"; break;
    default: throw Error("print_factor: unexpected base");
    }
    if (need_paren && f.base.kind() == Kind::Rational) base = "(" + base + ")";
    if (f.exp == 1) return base;
    std::string es = is_integer(f.exp) ? rat_num(f.exp).str() : ("(" + rat_str(f.exp) + ")");
    return base + "^" + es;
}

std::string print_term_mag(const Term& t) {
    Rat c = t.coeff < 0 ? Rat(-t.coeff) : t.coeff;
    std::string out;
    if (c != 1 || t.fs.empty()) out = rat_str(c);
    for (const auto& f : t.fs) {
        if (!out.empty()) out += "*";
        out += print_factor(f);
    }
    return out;
}

std::string print_expr(const Expr& e, bool parenthesize_sum) {
    Terms ts = to_terms(e);
    if (ts.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        bool negv = ts[i].coeff < 0;
        if (i == 0) {
            if (negv) out += "-";
        } else {
            out += negv ? " - " : " + ";
        }
        out += print_term_mag(ts[i]);
    }
    if (parenthesize_sum && ts.size() > 1) return "(" + out + ")";
    return out;
}

} // namespace

std::string to_string(const Expr& e) { return print_expr(e, false); }

// ---------------------------------------------------------------------------
// structure queries

namespace {

void collect_atoms(const Expr& e, std::vector<Expr>& out) {
    switch (e.kind()) {
    case Kind::Rational:
        return;
    case Kind::Param: case Kind::Var: case Kind::Jet: case Kind::Func:
        out.push_back(e);
        return;
    default:
        for (const auto& kd : e.node().kids) collect_atoms(kd, out);
        return;
    }
}

} // namespace

std::vector<Expr> atoms_of(const Expr& e) {
    std::vector<Expr> out;
    collect_atoms(e, out);
    std::sort(out.begin(), out.end(), [](const Expr& a, const Expr& b) { return cmp(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Expr& a, const Expr& b) { return cmp(a, b) == 0; }),
              out.end());
    return out;
}

int jet_order(const Expr& e) {
    int best = 0;
    for (const auto& a : atoms_of(e))
        if (a.kind() == Kind::Jet)
            best = std::max(best, static_cast<int>(a.node().index.size()));
    return best;
}

bool contains_atom(const Expr& e, const Expr& atom) {
    for (const auto& a : atoms_of(e))
        if (cmp(a, atom) == 0) return true;
    return false;
}

LinearSplit split_linear(const Expr& e, const Expr& atom) {
    Terms coeff_ts, rest_ts;
    for (const auto& t : to_terms(e)) {
        bool found = false;
        for (std::size_t i = 0; i < t.fs.size(); ++i) {
            if (cmp(t.fs[i].base, atom) == 0) {
                if (t.fs[i].exp != 1)
                    throw Error("split_linear: nonlinear occurrence of " + atom_name(atom));
                Term rest{t.coeff, {}};
                for (std::size_t j = 0; j < t.fs.size(); ++j)
                    if (j != i) rest.fs.push_back(t.fs[j]);
                if (contains_atom(from_terms({rest}), atom))
                    throw Error("split_linear: nonlinear occurrence of " + atom_name(atom));
                coeff_ts.push_back(std::move(rest));
                found = true;
                break;
            }
        }
        if (!found) {
            if (contains_atom(from_terms({t}), atom))
                throw Error("split_linear: nested occurrence of " + atom_name(atom));
            rest_ts.push_back(t);
        }
    }
    sort_merge(coeff_ts);
    sort_merge(rest_ts);
    return LinearSplit{from_terms(std::move(coeff_ts)), from_terms(std::move(rest_ts))};
}

} // namespace liesym
