#include "liesym/parser.hpp"

#include <algorithm>
#include <cctype>

namespace liesym {

namespace {

enum class Tok {
    End, Ident, Number, Plus, Minus, Star, Slash, Caret,
    LParen, RParen, Comma, Semi, Colon, Eq, Gt, Lt, DDir
};

struct Token {
    Tok type = Tok::End;
    std::string text;
    Rat value;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;

    int cur() const { return pos_ < src_.size() ? static_cast<unsigned char>(src_[pos_]) : -1; }
    int at(std::size_t off) const {
        return pos_ + off < src_.size() ? static_cast<unsigned char>(src_[pos_ + off]) : -1;
    }
    void bump() {
        if (cur() == '\n') { ++line_; col_ = 1; }
        else ++col_;
        ++pos_;
    }
    void skip_space() {
        for (;;) {
            while (std::isspace(cur())) bump();
            if (cur() == '#') {
                while (cur() != -1 && cur() != '\n') bump();
                continue;
            }
            break;
        }
    }
    void advance() {
        skip_space();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        int c = cur();
        if (c == -1) { tok_.type = Tok::End; return; }
        // d/dx directional token
        if (c == 'd' && at(1) == '/' && at(2) == 'd' && std::isalpha(at(3))) {
            bump(); bump(); bump();
            std::string name;
            while (std::isalnum(cur())) { name += static_cast<char>(cur()); bump(); }
            tok_.type = Tok::DDir;
            tok_.text = name;
            return;
        }
        if (std::isalpha(c)) {
            std::string name;
            while (std::isalnum(cur()) || cur() == '_') { name += static_cast<char>(cur()); bump(); }
            tok_.type = Tok::Ident;
            tok_.text = name;
            return;
        }
        if (std::isdigit(c)) {
            std::string digits;
            while (std::isdigit(cur())) { digits += static_cast<char>(cur()); bump(); }
            if (cur() == '.') {
                bump();
                std::string frac;
                while (std::isdigit(cur())) { frac += static_cast<char>(cur()); bump(); }
                if (frac.empty())
                    throw ParseError(tok_.line, tok_.col, "malformed decimal literal");
                Int num(digits + frac);
                Int den = 1;
                for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
                tok_.value = Rat(num, den);
            } else {
                tok_.value = Rat(Int(digits));
            }
            tok_.type = Tok::Number;
            return;
        }
        bump();
        switch (c) {
        case '+': tok_.type = Tok::Plus; return;
        case '-': tok_.type = Tok::Minus; return;
        case '*': tok_.type = Tok::Star; return;
        case '/': tok_.type = Tok::Slash; return;
        case '^': tok_.type = Tok::Caret; return;
        case '(': tok_.type = Tok::LParen; return;
        case ')': tok_.type = Tok::RParen; return;
        case ',': tok_.type = Tok::Comma; return;
        case ';': tok_.type = Tok::Semi; return;
        case ':': tok_.type = Tok::Colon; return;
        case '=': tok_.type = Tok::Eq; return;
        case '>': tok_.type = Tok::Gt; return;
        case '<': tok_.type = Tok::Lt; return;
        default:
            throw ParseError(tok_.line, tok_.col,
                             std::string("unexpected character '") + static_cast<char>(c) + "'");
        }
    }
};

bool is_builtin_fn(const std::string& n) {
    return n == "sin" || n == "cos" || n == "sinh" || n == "cosh" || n == "exp" || n == "sqrt";
}

bool is_keyword(const std::string& n) {
    return n == "param" || n == "var" || n == "dep" || n == "func" || n == "domain" ||
           n == "pde" || n == "field" || n == "group" || n == "recipe" ||
           n == "prefactor" || n == "args";
}

class Parser {
public:
    Parser(const std::string& src, Context ctx) : lex_(src), doc_() {
        doc_.ctx = std::move(ctx);
    }

    Document parse_file() {
        while (lex_.peek().type != Tok::End) statement();
        return std::move(doc_);
    }

    Expr parse_single_expr() {
        Expr e = expr();
        expect(Tok::End, "end of input");
        return e;
    }

private:
    Lexer lex_;
    Document doc_;

    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        throw ParseError(t.line, t.col, msg);
    }
    Token expect(Tok ty, const std::string& what) {
        Token t = lex_.take();
        if (t.type != ty) fail(t, "expected " + what);
        return t;
    }
    bool accept(Tok ty) {
        if (lex_.peek().type == ty) { lex_.take(); return true; }
        return false;
    }
    Token expect_ident() { return expect(Tok::Ident, "identifier"); }

    void check_fresh_name(const Token& t) {
        const std::string& n = t.text;
        if (is_builtin_fn(n) || is_keyword(n) || n == "d")
            fail(t, "'" + n + "' is reserved");
        if (doc_.ctx.is_param(n) || doc_.ctx.var_id(n) >= 0 || doc_.ctx.dep(n) ||
            doc_.ctx.func(n))
            fail(t, "'" + n + "' is already declared");
    }

    std::vector<std::string> ident_list() {
        std::vector<std::string> out;
        out.push_back(expect_ident().text);
        while (accept(Tok::Comma)) out.push_back(expect_ident().text);
        return out;
    }

    void statement() {
        Token t = lex_.peek();
        if (t.type != Tok::Ident) fail(t, "expected declaration or named object");
        const std::string& kw = t.text;
        if (kw == "param") {
            lex_.take();
            Token first = lex_.peek();
            for (const auto& n : ident_list()) {
                Token tn{Tok::Ident, n, Rat(0), first.line, first.col};
                check_fresh_name(tn);
                doc_.ctx.params.push_back(n);
            }
            expect(Tok::Semi, "';'");
        } else if (kw == "var") {
            lex_.take();
            Token first = lex_.peek();
            for (const auto& n : ident_list()) {
                Token tn{Tok::Ident, n, Rat(0), first.line, first.col};
                check_fresh_name(tn);
                doc_.ctx.vars.push_back(n);
            }
            expect(Tok::Semi, "';'");
        } else if (kw == "dep") {
            lex_.take();
            Token name = expect_ident();
            check_fresh_name(name);
            expect(Tok::LParen, "'('");
            Context::Dep d;
            d.name = name.text;
            for (const auto& an : ident_list()) {
                if (doc_.ctx.var_id(an) < 0)
                    fail(name, "dependent symbol argument '" + an + "' is not a declared var");
                d.args.push_back(an);
            }
            expect(Tok::RParen, "')'");
            expect(Tok::Semi, "';'");
            doc_.ctx.deps.push_back(std::move(d));
        } else if (kw == "func") {
            lex_.take();
            Token name = expect_ident();
            check_fresh_name(name);
            expect(Tok::LParen, "'('");
            Context::FuncDecl f;
            f.name = name.text;
            for (const auto& an : ident_list()) {
                if (doc_.ctx.var_id(an) < 0 && !doc_.ctx.dep(an))
                    fail(name, "function argument '" + an + "' is not a declared var or dep");
                f.args.push_back(an);
            }
            expect(Tok::RParen, "')'");
            expect(Tok::Semi, "';'");
            doc_.ctx.funcs.push_back(std::move(f));
        } else if (kw == "domain") {
            lex_.take();
            Token name = expect_ident();
            if (doc_.ctx.var_id(name.text) < 0)
                fail(name, "domain constraint on undeclared var '" + name.text + "'");
            expect(Tok::Gt, "'>'");
            Token num = expect(Tok::Number, "number");
            if (num.value != 0) fail(num, "only '> 0' domain constraints are supported");
            expect(Tok::Semi, "';'");
            doc_.ctx.positive.push_back(name.text);
        } else if (kw == "pde") {
            lex_.take();
            Token name = expect_ident();
            expect(Tok::Colon, "':'");
            Expr lhs = expr();
            expect(Tok::Eq, "'='");
            Expr rhs = expr();
            expect(Tok::Semi, "';'");
            doc_.pdes.emplace_back(name.text, make_pde(doc_.ctx, name.text, lhs, rhs));
        } else if (kw == "field") {
            lex_.take();
            Token name = expect_ident();
            expect(Tok::Colon, "':'");
            VectorField vf = field_sum(name.text);
            expect(Tok::Semi, "';'");
            doc_.fields.emplace_back(name.text, std::move(vf));
        } else if (kw == "group") {
            lex_.take();
            Token name = expect_ident();
            expect(Tok::Colon, "':'");
            expect(Tok::LParen, "'('");
            PointMap pm;
            pm.name = name.text;
            pm.comps.push_back(expr());
            while (accept(Tok::Comma)) pm.comps.push_back(expr());
            expect(Tok::RParen, "')'");
            expect(Tok::Semi, "';'");
            if (pm.comps.size() != doc_.ctx.vars.size() + 1)
                fail(name, "group map needs one component per variable plus the dependent one");
            doc_.groups.emplace_back(name.text, std::move(pm));
        } else if (kw == "recipe") {
            lex_.take();
            Token name = expect_ident();
            expect(Tok::Colon, "':'");
            Token pf = expect_ident();
            if (pf.text != "prefactor") fail(pf, "expected 'prefactor'");
            expect(Tok::LParen, "'('");
            TransformRecipe tr;
            tr.name = name.text;
            tr.prefactor = expr();
            expect(Tok::RParen, "')'");
            Token ar = expect_ident();
            if (ar.text != "args") fail(ar, "expected 'args'");
            expect(Tok::LParen, "'('");
            tr.args.push_back(expr());
            while (accept(Tok::Comma)) tr.args.push_back(expr());
            expect(Tok::RParen, "')'");
            expect(Tok::Semi, "';'");
            if (tr.args.size() != doc_.ctx.vars.size())
                fail(name, "recipe needs one argument map per independent variable");
            doc_.recipes.emplace_back(name.text, std::move(tr));
        } else {
            fail(t, "unknown statement '" + kw + "'");
        }
    }

    VectorField field_sum(const std::string& name) {
        VectorField vf = vf_zero(doc_.ctx);
        vf.name = name;
        bool first = true;
        for (;;) {
            Rat sign(1);
            if (accept(Tok::Minus)) sign = -1;
            else if (accept(Tok::Plus)) sign = 1;
            else if (!first) break;
            Expr coeff = Expr::integer(1);
            if (lex_.peek().type != Tok::DDir) coeff = expr();
            Token dir = expect(Tok::DDir, "d/d<name>");
            coeff = mul(Expr::rational(sign), coeff);
            int vid = doc_.ctx.var_id(dir.text);
            if (vid >= 0) {
                vf.xi[vid] = add(vf.xi[vid], coeff);
            } else if (doc_.ctx.dep(dir.text)) {
                vf.eta = add(vf.eta, coeff);
            } else {
                fail(dir, "d/d" + dir.text + ": undeclared direction");
            }
            first = false;
            if (lex_.peek().type == Tok::Semi) break;
        }
        return vf;
    }

    // ---- expressions

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (accept(Tok::Plus)) e = add(e, term());
            else if (accept(Tok::Minus)) e = sub(e, term());
            else return e;
        }
    }

    Expr term() {
        Expr e = unary();
        for (;;) {
            if (accept(Tok::Star)) e = mul(e, unary());
            else if (accept(Tok::Slash)) {
                Token at = lex_.peek();
                Expr d = unary();
                try {
                    e = div(e, d);
                } catch (const Error& err) {
                    fail(at, err.what());
                }
            } else {
                return e;
            }
        }
    }

    Expr unary() {
        if (accept(Tok::Minus)) return neg(unary());
        if (accept(Tok::Plus)) return unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (!accept(Tok::Caret)) return base;
        Token at = lex_.peek();
        Rat e = exponent();
        try {
            return pow(base, e);
        } catch (const Error& err) {
            fail(at, err.what());
        }
    }

    Rat exponent() {
        Rat sign(1);
        if (accept(Tok::Minus)) sign = -1;
        else accept(Tok::Plus);
        Token t = lex_.peek();
        if (t.type == Tok::Number) {
            lex_.take();
            return sign * t.value;
        }
        if (t.type == Tok::LParen) {
            lex_.take();
            Expr e = expr();
            expect(Tok::RParen, "')'");
            if (!e.is_rational()) fail(t, "exponent must be a rational constant");
            return sign * e.rat();
        }
        fail(t, "expected exponent");
    }

    Expr primary() {
        Token t = lex_.take();
        if (t.type == Tok::Number) return Expr::rational(t.value);
        if (t.type == Tok::LParen) {
            Expr e = expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (t.type != Tok::Ident) fail(t, "expected expression");
        const std::string& n = t.text;
        if (is_builtin_fn(n)) {
            expect(Tok::LParen, "'(' after " + n);
            Expr a = expr();
            expect(Tok::RParen, "')'");
            try {
                if (n == "sin") return sin_(a);
                if (n == "cos") return cos_(a);
                if (n == "sinh") return sinh_(a);
                if (n == "cosh") return cosh_(a);
                if (n == "exp") return exp_(a);
                return sqrt_(a);
            } catch (const Error& err) {
                fail(t, err.what());
            }
        }
        if (n.size() > 2 && n.rfind("d_", 0) == 0) {
            // total derivative applied at parse time: d_r(...), d_rx(...)
            std::vector<int> dirs = suffix_ids(t, n.substr(2), doc_.ctx.vars);
            expect(Tok::LParen, "'(' after " + n);
            Expr a = expr();
            expect(Tok::RParen, "')'");
            try {
                for (int vid : dirs) a = total_derivative(doc_.ctx, a, vid);
            } catch (const Error& err) {
                fail(t, err.what());
            }
            return a;
        }
        return resolve_symbol(t);
    }

    /// greedy longest-match of a suffix against a list of names; returns indices
    std::vector<int> suffix_positions(const Token& at, const std::string& suffix,
                                      const std::vector<std::string>& names) {
        std::vector<int> out;
        std::size_t pos = 0;
        while (pos < suffix.size()) {
            int best = -1;
            std::size_t best_len = 0;
            for (std::size_t i = 0; i < names.size(); ++i) {
                const std::string& nm = names[i];
                if (nm.size() > best_len && suffix.compare(pos, nm.size(), nm) == 0) {
                    best = static_cast<int>(i);
                    best_len = nm.size();
                }
            }
            if (best < 0)
                fail(at, "cannot resolve derivative suffix '" + suffix + "'");
            out.push_back(best);
            pos += best_len;
        }
        return out;
    }

    std::vector<int> suffix_ids(const Token& at, const std::string& suffix,
                                const std::vector<std::string>& varnames) {
        return suffix_positions(at, suffix, varnames);
    }

    Expr resolve_symbol(const Token& t) {
        const std::string& n = t.text;
        const Context& ctx = doc_.ctx;
        if (ctx.is_param(n)) return Expr::param(n);
        if (ctx.var_id(n) >= 0) return ctx.var_atom(n);
        if (ctx.dep(n)) return ctx.dep_atom(n);
        if (ctx.func(n)) return ctx.func_atom(n);
        auto us = n.find('_');
        if (us != std::string::npos && us > 0) {
            std::string base = n.substr(0, us);
            std::string suffix = n.substr(us + 1);
            if (const Context::Dep* d = ctx.dep(base)) {
                std::vector<int> poss = suffix_positions(t, suffix, d->args);
                std::vector<int> ids;
                ids.reserve(poss.size());
                for (int p : poss) ids.push_back(ctx.var_id(d->args[p]));
                return ctx.jet_atom(base, ids);
            }
            if (ctx.func(base)) {
                const Context::FuncDecl* f = ctx.func(base);
                std::vector<int> poss = suffix_positions(t, suffix, f->args);
                return ctx.func_atom(base, std::move(poss));
            }
        }
        fail(t, "undeclared symbol '" + n + "'");
    }
};

} // namespace

Document parse_document(const std::string& src) { return parse_document(src, Context{}); }

Document parse_document(const std::string& src, Context initial) {
    Parser p(src, std::move(initial));
    return p.parse_file();
}

Expr parse_expression(const Context& ctx, const std::string& text) {
    Parser p(text, ctx);
    return p.parse_single_expr();
}

} // namespace liesym
