#ifndef LIESYM_PARSER_HPP
#define LIESYM_PARSER_HPP

#include "liesym/numcheck.hpp"

namespace liesym {

/// Parse error with source position.
struct ParseError : Error {
    int line, col;
    ParseError(int l, int c, const std::string& msg)
        : Error("line " + std::to_string(l) + ", col " + std::to_string(c) + ": " + msg),
          line(l), col(c) {}
};

/// A parsed DSL file: declarations plus named objects.
struct Document {
    Context ctx;
    std::vector<std::pair<std::string, Pde>> pdes;
    std::vector<std::pair<std::string, VectorField>> fields;
    std::vector<std::pair<std::string, PointMap>> groups;
    std::vector<std::pair<std::string, TransformRecipe>> recipes;

    const Pde* pde(const std::string& n) const {
        for (const auto& [nm, p] : pdes) if (nm == n) return &p;
        return nullptr;
    }
    const VectorField* field(const std::string& n) const {
        for (const auto& [nm, f] : fields) if (nm == n) return &f;
        return nullptr;
    }
    const PointMap* group(const std::string& n) const {
        for (const auto& [nm, g] : groups) if (nm == n) return &g;
        return nullptr;
    }
    const TransformRecipe* recipe(const std::string& n) const {
        for (const auto& [nm, t] : recipes) if (nm == n) return &t;
        return nullptr;
    }
};

Document parse_document(const std::string& src);
Document parse_document(const std::string& src, Context initial);

/// Parse a single expression over an existing context (whole text consumed).
Expr parse_expression(const Context& ctx, const std::string& text);

} // namespace liesym

#endif
