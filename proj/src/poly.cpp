#include "liesym/poly.hpp"

#include <algorithm>

namespace liesym {

namespace {

void check_gens(const Poly& a, const Poly& b) {
    if (a.gens != b.gens) throw Error("polynomial generator mismatch");
}

std::vector<int> zero_exp(const Poly& p) {
    return std::vector<int>(p.gens.size(), 0);
}

} // namespace

Poly Poly::constant(const std::vector<std::string>& gens, const Rat& c) {
    Poly p{gens, {}};
    if (c != 0) p.terms[std::vector<int>(gens.size(), 0)] = c;
    return p;
}

Poly Poly::generator(const std::vector<std::string>& gens, int i) {
    Poly p{gens, {}};
    std::vector<int> e(gens.size(), 0);
    e.at(i) = 1;
    p.terms[e] = 1;
    return p;
}

bool Poly::is_constant() const {
    if (terms.empty()) return true;
    return terms.size() == 1 && terms.begin()->first == std::vector<int>(gens.size(), 0);
}

Rat Poly::constant_value() const {
    if (terms.empty()) return Rat(0);
    if (!is_constant()) throw Error("polynomial is not constant: " + poly_to_string(*this));
    return terms.begin()->second;
}

int Poly::degree(int gi) const {
    int d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, e.at(gi));
    return d;
}

int Poly::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms) {
        int s = 0;
        for (int q : e) s += q;
        d = std::max(d, s);
    }
    return d;
}

Poly padd(const Poly& a, const Poly& b) {
    check_gens(a, b);
    Poly out = a;
    for (const auto& [e, c] : b.terms) {
        auto it = out.terms.find(e);
        if (it == out.terms.end()) out.terms[e] = c;
        else {
            it->second += c;
            if (it->second == 0) out.terms.erase(it);
        }
    }
    return out;
}

Poly pneg(const Poly& a) {
    Poly out = a;
    for (auto& [e, c] : out.terms) c = -c;
    return out;
}

Poly psub(const Poly& a, const Poly& b) { return padd(a, pneg(b)); }

Poly pscale(const Poly& a, const Rat& c) {
    if (c == 0) return Poly::zero(a.gens);
    Poly out = a;
    for (auto& [e, cc] : out.terms) cc *= c;
    return out;
}

Poly pmul(const Poly& a, const Poly& b) {
    check_gens(a, b);
    Poly out = Poly::zero(a.gens);
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            std::vector<int> e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            auto it = out.terms.find(e);
            if (it == out.terms.end()) out.terms[e] = ca * cb;
            else {
                it->second += ca * cb;
                if (it->second == 0) out.terms.erase(it);
            }
        }
    return out;
}

bool pequal(const Poly& a, const Poly& b) {
    return a.gens == b.gens && a.terms == b.terms;
}

Rat pcontent(const Poly& a) {
    if (a.terms.empty()) return Rat(0);
    Rat g(0);
    for (const auto& [e, c] : a.terms) g = rat_gcd(g, c);
    // sign convention: leading (largest exponent vector) coefficient positive
    if (a.terms.rbegin()->second < 0) g = -g;
    return g;
}

Poly pprimitive(const Poly& a) {
    Rat c = pcontent(a);
    if (c == 0 || c == 1) return a;
    return pscale(a, Rat(1) / c);
}

namespace {

/// main variable: highest-index generator with positive degree; -1 if constant
int main_var(const Poly& a) {
    for (int gi = static_cast<int>(a.gens.size()) - 1; gi >= 0; --gi)
        if (a.degree(gi) > 0) return gi;
    return -1;
}

/// coefficients of a as a univariate polynomial in generator v
std::vector<Poly> coeffs_in(const Poly& a, int v) {
    int d = a.degree(v);
    std::vector<Poly> out(static_cast<std::size_t>(d) + 1, Poly::zero(a.gens));
    for (const auto& [e, c] : a.terms) {
        std::vector<int> rest = e;
        int dv = rest[v];
        rest[v] = 0;
        auto it = out[dv].terms.find(rest);
        if (it == out[dv].terms.end()) out[dv].terms[rest] = c;
        else it->second += c;
    }
    return out;
}

Poly from_coeffs(const std::vector<Poly>& cs, int v, const std::vector<std::string>& gens) {
    Poly out = Poly::zero(gens);
    for (std::size_t d = 0; d < cs.size(); ++d) {
        for (const auto& [e, c] : cs[d].terms) {
            std::vector<int> ee = e;
            ee[v] += static_cast<int>(d);
            out.terms[ee] = c;
        }
    }
    return out;
}

/// recursive content: gcd of the univariate coefficients
Poly poly_content(const Poly& a, int v) {
    Poly g = Poly::zero(a.gens);
    for (const auto& c : coeffs_in(a, v))
        if (!c.is_zero()) g = pgcd(g, c);
    return g;
}

/// pseudo-remainder of a by b in variable v
Poly prem(const Poly& a, const Poly& b, int v) {
    int da = a.degree(v), db = b.degree(v);
    if (da < db) return a;
    std::vector<Poly> ac = coeffs_in(a, v);
    std::vector<Poly> bc = coeffs_in(b, v);
    Poly lb = bc.back();
    Poly r = a;
    for (int d = da; d >= db; --d) {
        std::vector<Poly> rc = coeffs_in(r, v);
        if (static_cast<int>(rc.size()) - 1 < d || rc[d].is_zero()) continue;
        // r = lb*r - lead(r)*v^(d-db)*b
        Poly lead = rc[d];
        Poly shift = Poly::generator(a.gens, v);
        Poly vpow = Poly::constant(a.gens, 1);
        for (int i = 0; i < d - db; ++i) vpow = pmul(vpow, shift);
        r = psub(pmul(lb, r), pmul(pmul(lead, vpow), b));
    }
    return r;
}

} // namespace

Poly pgcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero() ? b : pprimitive(b);
    if (b.is_zero()) return pprimitive(a);
    if (a.is_constant() || b.is_constant())
        return Poly::constant(a.gens, 1);
    int v = std::max(main_var(a), main_var(b));
    if (v < 0) return Poly::constant(a.gens, 1);
    if (a.degree(v) == 0 || b.degree(v) == 0) {
        // one of them is free of the top variable: gcd divides its content
        const Poly& free_one = a.degree(v) == 0 ? a : b;
        const Poly& other = a.degree(v) == 0 ? b : a;
        return pgcd(free_one, poly_content(other, v));
    }
    Poly ca = poly_content(a, v), cb = poly_content(b, v);
    Poly g_cont = pgcd(ca, cb);
    Poly pa = *pdiv_exact(a, ca);
    Poly pb = *pdiv_exact(b, cb);
    // primitive PRS
    Poly p1 = pa, p2 = pb;
    if (p1.degree(v) < p2.degree(v)) std::swap(p1, p2);
    while (!p2.is_zero() && p2.degree(v) > 0) {
        Poly r = prem(p1, p2, v);
        p1 = p2;
        if (r.is_zero()) { p2 = r; break; }
        Poly rc = poly_content(r, v);
        p2 = rc.is_zero() ? r : *pdiv_exact(r, rc);
    }
    Poly gp;
    if (p2.is_zero()) gp = p1;
    else return pprimitive(g_cont); // coprime in v
    gp = pprimitive(pmul(g_cont, *pdiv_exact(gp, poly_content(gp, v))));
    return gp;
}

std::optional<Poly> pdiv_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return Poly::zero(a.gens);
    if (b.is_constant()) return pscale(a, Rat(1) / b.constant_value());
    Poly r = a;
    Poly q = Poly::zero(a.gens);
    const auto& blead = *b.terms.rbegin(); // lex-largest term
    int guard = 0;
    while (!r.is_zero()) {
        if (++guard > 100000) return std::nullopt;
        const auto& rlead = *r.terms.rbegin();
        std::vector<int> e = rlead.first;
        bool ok = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] -= blead.first[i];
            if (e[i] < 0) { ok = false; break; }
        }
        if (!ok) return std::nullopt;
        Poly mono{a.gens, {{e, rlead.second / blead.second}}};
        q = padd(q, mono);
        r = psub(r, pmul(mono, b));
    }
    return q;
}

Expr poly_to_expr(const Poly& p) {
    Expr out;
    for (const auto& [e, c] : p.terms) {
        Expr t = Expr::rational(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t = mul(t, pow(Expr::param(p.gens[i]), Rat(e[i])));
        out = add(out, t);
    }
    return out;
}

std::optional<Poly> poly_from_expr(const std::vector<std::string>& gens, const Expr& e) {
    // walk the canonical sum-of-terms form
    Poly out = Poly::zero(gens);
    Expr norm = normalize(e);
    std::vector<Expr> terms;
    if (norm.kind() == Kind::Sum)
        terms = norm.node().kids;
    else if (!norm.is_zero())
        terms = {norm};
    for (const Expr& t : terms) {
        Rat coeff(1);
        std::vector<int> exps(gens.size(), 0);
        std::vector<Expr> factors;
        if (t.kind() == Kind::Product) factors = t.node().kids;
        else factors = {t};
        for (const Expr& f : factors) {
            Expr base = f;
            Rat ex(1);
            if (f.kind() == Kind::Power) {
                base = f.node().kids[0];
                ex = f.node().value;
            }
            if (base.is_rational() && ex == 1) {
                coeff *= base.rat();
                continue;
            }
            if (base.kind() != Kind::Param || !is_integer(ex) || ex < 0)
                return std::nullopt;
            auto it = std::find(gens.begin(), gens.end(), base.node().name);
            if (it == gens.end()) return std::nullopt;
            exps[static_cast<std::size_t>(it - gens.begin())] += to_long(rat_num(ex));
        }
        Poly mono{gens, {{exps, coeff}}};
        out = padd(out, mono);
    }
    return out;
}

std::string poly_to_string(const Poly& p) { return to_string(poly_to_expr(p)); }

double poly_eval(const Poly& p, const std::map<std::string, double>& vals) {
    double out = 0;
    for (const auto& [e, c] : p.terms) {
        double t = rat_double(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) {
                auto it = vals.find(p.gens[i]);
                if (it == vals.end()) throw Error("unassigned parameter " + p.gens[i]);
                t *= std::pow(it->second, e[i]);
            }
        out += t;
    }
    return out;
}

RatFunc rf_reduce(Poly num, Poly den) {
    if (den.is_zero()) throw Error("rational function with zero denominator");
    if (num.is_zero()) return RatFunc::zero(num.gens);
    Poly g = pgcd(num, den);
    if (!g.is_constant()) {
        num = *pdiv_exact(num, g);
        den = *pdiv_exact(den, g);
    }
    Rat dc = pcontent(den);
    num = pscale(num, Rat(1) / dc);
    den = pscale(den, Rat(1) / dc);
    return RatFunc{num, den};
}

RatFunc rf_add(const RatFunc& a, const RatFunc& b) {
    return rf_reduce(padd(pmul(a.num, b.den), pmul(b.num, a.den)), pmul(a.den, b.den));
}
RatFunc rf_sub(const RatFunc& a, const RatFunc& b) { return rf_add(a, rf_neg(b)); }
RatFunc rf_neg(const RatFunc& a) { return RatFunc{pneg(a.num), a.den}; }
RatFunc rf_mul(const RatFunc& a, const RatFunc& b) {
    return rf_reduce(pmul(a.num, b.num), pmul(a.den, b.den));
}
RatFunc rf_div(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw Error("division by zero rational function");
    return rf_reduce(pmul(a.num, b.den), pmul(a.den, b.num));
}
bool rf_equal(const RatFunc& a, const RatFunc& b) {
    return psub(pmul(a.num, b.den), pmul(b.num, a.den)).is_zero();
}

Expr rf_to_expr(const RatFunc& a) {
    if (a.is_zero()) return Expr();
    Expr n = poly_to_expr(a.num);
    if (a.den.is_constant()) {
        Rat d = a.den.constant_value();
        return d == 1 ? n : mul(n, Expr::rational(Rat(1) / d));
    }
    return div(n, poly_to_expr(a.den));
}

std::string rf_to_string(const RatFunc& a) { return to_string(rf_to_expr(a)); }

double rf_eval(const RatFunc& a, const std::map<std::string, double>& vals) {
    double d = poly_eval(a.den, vals);
    if (d == 0) throw Error("rational function denominator vanished at sample");
    return poly_eval(a.num, vals) / d;
}

std::optional<RatFunc> rf_from_expr(const std::vector<std::string>& gens, const Expr& e) {
    if (auto p = poly_from_expr(gens, e)) return RatFunc::from_poly(*p);
    // try a single (num)/(den) split: terms may carry poly inverse factors
    Expr norm = normalize(e);
    std::vector<Expr> terms = norm.kind() == Kind::Sum ? norm.node().kids
                                                       : std::vector<Expr>{norm};
    RatFunc acc = RatFunc::zero(gens);
    for (const Expr& t : terms) {
        std::vector<Expr> factors = t.kind() == Kind::Product ? t.node().kids
                                                              : std::vector<Expr>{t};
        RatFunc prod = RatFunc::constant(gens, 1);
        for (const Expr& f : factors) {
            Expr base = f;
            Rat ex(1);
            if (f.kind() == Kind::Power) {
                base = f.node().kids[0];
                ex = f.node().value;
            }
            std::optional<Poly> bp = poly_from_expr(gens, base);
            if (!bp || !is_integer(ex)) return std::nullopt;
            long n = to_long(rat_num(ex));
            RatFunc bb = RatFunc::from_poly(*bp);
            if (n < 0) {
                if (bb.is_zero()) return std::nullopt;
                bb = rf_div(RatFunc::constant(gens, 1), bb);
                n = -n;
            }
            for (long i = 0; i < n; ++i) prod = rf_mul(prod, bb);
        }
        acc = rf_add(acc, prod);
    }
    return acc;
}

} // namespace liesym
