#ifndef LIESYM_POLY_HPP
#define LIESYM_POLY_HPP

#include "liesym/expr.hpp"

#include <map>
#include <optional>

namespace liesym {

/// Sparse multivariate polynomial over Q in named generators (the PDE's
/// symbolic parameters, e.g. a and k).
struct Poly {
    std::vector<std::string> gens;
    std::map<std::vector<int>, Rat> terms; // exponent vector -> nonzero coeff

    static Poly zero(const std::vector<std::string>& gens) { return Poly{gens, {}}; }
    static Poly constant(const std::vector<std::string>& gens, const Rat& c);
    static Poly generator(const std::vector<std::string>& gens, int i);

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const;
    Rat constant_value() const; // requires is_constant
    int degree(int gi) const;
    int total_degree() const;
};

Poly padd(const Poly& a, const Poly& b);
Poly psub(const Poly& a, const Poly& b);
Poly pneg(const Poly& a);
Poly pmul(const Poly& a, const Poly& b);
Poly pscale(const Poly& a, const Rat& c);
bool pequal(const Poly& a, const Poly& b);

/// content (gcd of coefficients, sign of the leading term); primitive part
Rat pcontent(const Poly& a);
Poly pprimitive(const Poly& a);

/// Exact division; nullopt if b does not divide a.
std::optional<Poly> pdiv_exact(const Poly& a, const Poly& b);

/// Primitive gcd, normalized to positive leading coefficient; gcd(0,0) = 0.
Poly pgcd(const Poly& a, const Poly& b);

Expr poly_to_expr(const Poly& p);
/// Fails (nullopt) unless e is a polynomial over the generators with rational
/// coefficients.
std::optional<Poly> poly_from_expr(const std::vector<std::string>& gens, const Expr& e);

std::string poly_to_string(const Poly& p);
double poly_eval(const Poly& p, const std::map<std::string, double>& vals);

/// Reduced quotient of polynomials; denominator primitive with positive
/// leading coefficient.
struct RatFunc {
    Poly num, den;

    static RatFunc zero(const std::vector<std::string>& gens) {
        return RatFunc{Poly::zero(gens), Poly::constant(gens, 1)};
    }
    static RatFunc constant(const std::vector<std::string>& gens, const Rat& c) {
        return RatFunc{Poly::constant(gens, c), Poly::constant(gens, 1)};
    }
    static RatFunc from_poly(const Poly& p) {
        return RatFunc{p, Poly::constant(p.gens, 1)};
    }
    bool is_zero() const { return num.is_zero(); }
    bool is_polynomial() const { return den.is_constant(); }
};

RatFunc rf_reduce(Poly num, Poly den);
RatFunc rf_add(const RatFunc& a, const RatFunc& b);
RatFunc rf_sub(const RatFunc& a, const RatFunc& b);
RatFunc rf_neg(const RatFunc& a);
RatFunc rf_mul(const RatFunc& a, const RatFunc& b);
RatFunc rf_div(const RatFunc& a, const RatFunc& b);
bool rf_equal(const RatFunc& a, const RatFunc& b);
Expr rf_to_expr(const RatFunc& a);
std::string rf_to_string(const RatFunc& a);
double rf_eval(const RatFunc& a, const std::map<std::string, double>& vals);
std::optional<RatFunc> rf_from_expr(const std::vector<std::string>& gens, const Expr& e);

} // namespace liesym

#endif
