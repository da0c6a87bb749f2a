#ifndef LIESYM_EXPR_HPP
#define LIESYM_EXPR_HPP

#include "liesym/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace liesym {

// Exact symbolic expressions over Q with parameters, variables, jet variables,
// unknown coefficient functions, trig/hyperbolic/exp atoms and powers.
//
// Expressions are immutable values in a canonical form:
//   * a Sum has >= 2 children, each a canonical term, sorted by monomial,
//     no repeated monomials, no zero terms;
//   * a term is coeff * product of factors base^exp with factors sorted by base;
//   * rational constants are folded; sin^2 -> 1 - cos^2, sinh^2 -> cosh^2 - 1;
//   * exp factors merge: exp(p)*exp(q) = exp(p+q); exp(0) = 1;
//   * jet multi-indices are sorted (mixed partials commute);
//   * fractional powers exist only on nonnegative rational bases (prime surds);
//   * negative integer powers of sums are kept as opaque inverse factors.

enum class Kind : uint8_t {
    Rational, Param, Var, Jet, Func,
    Sin, Cos, Sinh, Cosh, Exp,
    Power, Product, Sum
};

struct VarRef {
    int id = -1;
    std::string name;
    bool operator==(const VarRef& o) const { return id == o.id && name == o.name; }
};

class Expr;

struct ExprNode {
    Kind kind = Kind::Rational;
    Rat value;                   // Rational payload; Power: the exponent
    std::string name;            // Param / Jet dependent / Func name
    VarRef var;                  // Var payload
    std::vector<VarRef> index;   // Jet multi-index, sorted by id
    std::vector<Expr> args;      // Func: declared argument atoms
    std::vector<int> deriv;      // Func: derivative multi-index over arg positions, sorted
    std::vector<Expr> kids;      // Sum/Product children; Power: [base]; unary fn: [arg]
    std::size_t hash = 0;
};

class Expr {
public:
    Expr(); // zero

    static Expr rational(const Rat& q);
    static Expr integer(long n);
    static Expr param(const std::string& name);
    static Expr var(const std::string& name, int id);
    static Expr jet(const std::string& dep, std::vector<VarRef> index);
    static Expr func(const std::string& name, std::vector<Expr> arg_atoms,
                     std::vector<int> deriv);

    const ExprNode& node() const { return *p_; }
    Kind kind() const { return p_->kind; }
    std::size_t hash() const { return p_->hash; }

    bool is_rational() const { return p_->kind == Kind::Rational; }
    bool is_zero() const { return is_rational() && p_->value == 0; }
    bool is_one() const { return is_rational() && p_->value == 1; }
    const Rat& rat() const;

    bool operator==(const Expr& o) const;
    bool operator!=(const Expr& o) const { return !(*this == o); }

private:
    std::shared_ptr<const ExprNode> p_;
    explicit Expr(std::shared_ptr<const ExprNode> p) : p_(std::move(p)) {}
    friend Expr make_node(ExprNode&& n);
};

Expr make_node(ExprNode&& n);

/// Total structural order; 0 iff equal.
int cmp(const Expr& a, const Expr& b);

// Canonicalizing arithmetic.
Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr neg(const Expr& a);
Expr mul(const Expr& a, const Expr& b);
Expr div(const Expr& a, const Expr& b);   // b must be invertible (monomial or sum -> opaque inverse)
Expr pow(const Expr& a, const Rat& e);

inline Expr operator+(const Expr& a, const Expr& b) { return add(a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return sub(a, b); }
inline Expr operator-(const Expr& a) { return neg(a); }
inline Expr operator*(const Expr& a, const Expr& b) { return mul(a, b); }
inline Expr operator/(const Expr& a, const Expr& b) { return div(a, b); }

Expr sin_(const Expr& a);
Expr cos_(const Expr& a);
Expr sinh_(const Expr& a);
Expr cosh_(const Expr& a);
Expr exp_(const Expr& a);
Expr sqrt_(const Expr& a);

/// Re-canonicalize (idempotent; canonical trees come back unchanged).
Expr normalize(const Expr& e);

/// Partial derivative with respect to a Param, Var or Jet atom.
/// Jet variables are mutually independent coordinates; unknown-function atoms
/// differentiate by incrementing their derivative multi-index.
Expr diff(const Expr& e, const Expr& atom);

struct Bindings {
    std::vector<std::pair<Expr, Expr>> atoms;        // Param/Var/Jet -> value
    std::vector<std::pair<std::string, Expr>> funcs; // func name -> value in its args
    void bind(const Expr& atom, const Expr& value) { atoms.emplace_back(atom, value); }
    void bind_func(const std::string& name, const Expr& value) { funcs.emplace_back(name, value); }
    const Expr* find_atom(const Expr& a) const;
    const Expr* find_func(const std::string& n) const;
};

/// Simultaneous (non-recursive) substitution, then normalization.
/// Replacing a derivative f_J of a bound unknown function substitutes the
/// corresponding partial derivative of the bound value.
Expr substitute(const Expr& e, const Bindings& b);

/// IEEE double evaluation; throws Error on unassigned symbols or domain faults.
double eval_numeric(const Expr& e, const std::map<std::string, double>& assign);

/// Printed name of an atom ("r", "a", "u_rt", "xi1_ru").
std::string atom_name(const Expr& atom);

/// Deterministic printer in the DSL grammar (sorted monomials).
std::string to_string(const Expr& e);

/// All Param/Var/Jet/Func atoms occurring in e (sorted, unique).
std::vector<Expr> atoms_of(const Expr& e);

/// Highest jet order occurring (0 if no jets).
int jet_order(const Expr& e);

bool contains_atom(const Expr& e, const Expr& atom);

/// Split e = coeff*atom + rest with rest free of atom; throws on nonlinear occurrence.
struct LinearSplit { Expr coeff, rest; };
LinearSplit split_linear(const Expr& e, const Expr& atom);

} // namespace liesym

#endif
