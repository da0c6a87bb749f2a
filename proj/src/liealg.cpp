#include "liesym/liealg.hpp"

#include <algorithm>
#include <cmath>

namespace liesym {

AlgebraElement StructureConstants::bracket(const AlgebraElement& x,
                                           const AlgebraElement& y) const {
    AlgebraElement out = element_zero();
    for (int i = 0; i < dim; ++i) {
        if (x.c[i].is_zero()) continue;
        for (int j = 0; j < dim; ++j) {
            if (y.c[j].is_zero()) continue;
            RatFunc f = rf_mul(x.c[i], y.c[j]);
            for (int m = 0; m < dim; ++m) {
                if (table[i][j][m].is_zero()) continue;
                out.c[m] = rf_add(out.c[m], rf_mul(f, table[i][j][m]));
            }
        }
    }
    return out;
}

std::string element_to_string(const StructureConstants& sc, const AlgebraElement& x) {
    Expr out;
    for (int m = 0; m < sc.dim; ++m) {
        if (x.c[m].is_zero()) continue;
        out = add(out, mul(rf_to_expr(x.c[m]), Expr::param(sc.labels[m])));
    }
    return to_string(out);
}

VectorField bracket_vf(const Context& ctx, const VectorField& v, const VectorField& w) {
    auto apply = [&](const VectorField& f, const Expr& comp) {
        Expr out;
        for (std::size_t i = 0; i < f.xi.size(); ++i)
            out = add(out, mul(f.xi[i], diff(comp, ctx.var_atom(static_cast<int>(i)))));
        out = add(out, mul(f.eta, diff(comp, ctx.dep_atom(ctx.deps.at(0).name))));
        return out;
    };
    VectorField out = vf_zero(ctx);
    for (std::size_t i = 0; i < out.xi.size(); ++i)
        out.xi[i] = sub(apply(v, w.xi[i]), apply(w, v.xi[i]));
    out.eta = sub(apply(v, w.eta), apply(w, v.eta));
    return out;
}

namespace {

/// Split an expression into map: parameter-free monomial -> Q[a,k] coefficient.
/// Any factor that is not a pure nonnegative parameter power lands in the key.
std::map<std::string, std::pair<Expr, Poly>> coordinate_split(
    const std::vector<std::string>& gens, const Expr& e) {
    std::map<std::string, std::pair<Expr, Poly>> out;
    std::vector<Expr> terms = e.kind() == Kind::Sum ? e.node().kids : std::vector<Expr>{e};
    if (e.is_zero()) terms.clear();
    for (const Expr& t : terms) {
        std::vector<Expr> factors = t.kind() == Kind::Product ? t.node().kids
                                                              : std::vector<Expr>{t};
        Rat coeff(1);
        Poly para = Poly::constant(gens, 1);
        Expr key = Expr::integer(1);
        for (const Expr& f : factors) {
            Expr base = f;
            Rat ex(1);
            if (f.kind() == Kind::Power) { base = f.node().kids[0]; ex = f.node().value; }
            if (base.is_rational() && ex == 1) { coeff *= base.rat(); continue; }
            if (base.kind() == Kind::Param && is_integer(ex) && ex > 0 &&
                std::find(gens.begin(), gens.end(), base.node().name) != gens.end()) {
                Poly g = Poly::generator(
                    gens, static_cast<int>(std::find(gens.begin(), gens.end(),
                                                     base.node().name) - gens.begin()));
                for (long q = 0; q < to_long(rat_num(ex)); ++q) para = pmul(para, g);
                continue;
            }
            key = mul(key, f);
        }
        para = pscale(para, coeff);
        std::string ks = to_string(key);
        auto it = out.find(ks);
        if (it == out.end()) out.emplace(ks, std::make_pair(key, para));
        else it->second.second = padd(it->second.second, para);
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

} // namespace

std::optional<AlgebraElement> decompose_in_basis(const Context& ctx, const VectorField& w,
                                                 const std::vector<VectorField>& basis,
                                                 const std::vector<std::string>& gens,
                                                 Expr* witness) {
    const int n = static_cast<int>(basis.size());
    const int ncomp = static_cast<int>(w.xi.size()) + 1;
    auto comp_of = [&](const VectorField& f, int c) -> const Expr& {
        return c < static_cast<int>(f.xi.size()) ? f.xi[c] : f.eta;
    };
    // collect the monomial keys per component
    struct Row { int comp; Expr key; std::vector<Poly> lhs; Poly rhs; };
    std::vector<Row> rows;
    for (int c = 0; c < ncomp; ++c) {
        std::map<std::string, std::pair<Expr, Poly>> keyed;
        auto add_keys = [&](const Expr& e) {
            for (auto& [ks, kp] : coordinate_split(gens, e))
                if (!keyed.count(ks)) keyed.emplace(ks, std::make_pair(kp.first, Poly::zero(gens)));
        };
        for (const auto& b : basis) add_keys(comp_of(b, c));
        add_keys(comp_of(w, c));
        for (auto& [ks, kp] : keyed) {
            Row row{c, kp.first, std::vector<Poly>(), Poly::zero(gens)};
            for (const auto& b : basis) {
                auto split = coordinate_split(gens, comp_of(b, c));
                auto it = split.find(ks);
                row.lhs.push_back(it == split.end() ? Poly::zero(gens) : it->second.second);
            }
            auto wsplit = coordinate_split(gens, comp_of(w, c));
            auto wit = wsplit.find(ks);
            row.rhs = wit == wsplit.end() ? Poly::zero(gens) : wit->second.second;
            rows.push_back(std::move(row));
        }
    }
    QMat m(static_cast<int>(rows.size()), n, gens);
    std::vector<RatFunc> b;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int j = 0; j < n; ++j) m.at(static_cast<int>(i), j) = RatFunc::from_poly(rows[i].lhs[j]);
        b.push_back(RatFunc::from_poly(rows[i].rhs));
    }
    std::vector<Poly> assumptions;
    auto sol = solve(m, b, assumptions);
    if (!sol) {
        if (witness) {
            // residual of the least-squares-free attempt: report w itself
            Expr res;
            for (int c = 0; c < ncomp; ++c) res = add(res, comp_of(w, c));
            *witness = res;
        }
        return std::nullopt;
    }
    // exact verification
    AlgebraElement out{*sol};
    for (int c = 0; c < ncomp; ++c) {
        Expr combo;
        for (int j = 0; j < n; ++j) {
            if (out.c[j].is_zero()) continue;
            combo = add(combo, mul(rf_to_expr(out.c[j]), comp_of(basis[j], c)));
        }
        Expr resid = sub(comp_of(w, c), combo);
        if (!resid.is_zero()) {
            if (witness) *witness = resid;
            return std::nullopt;
        }
    }
    return out;
}

StructureConstants commutator_table(const Context& ctx, const std::vector<VectorField>& basis,
                                    const std::vector<std::string>& gens) {
    const int n = static_cast<int>(basis.size());
    StructureConstants sc;
    sc.dim = n;
    sc.gens = gens;
    sc.provenance = "computed from vector fields";
    for (const auto& b : basis) sc.labels.push_back(b.name);
    sc.table.assign(n, std::vector<std::vector<RatFunc>>(
                           n, std::vector<RatFunc>(n, RatFunc::zero(gens))));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            VectorField br = bracket_vf(ctx, basis[i], basis[j]);
            Expr witness;
            auto dec = decompose_in_basis(ctx, br, basis, gens, &witness);
            if (!dec)
                throw Error("commutator table: basis not closed under bracket at [" +
                            basis[i].name + "," + basis[j].name +
                            "], residual " + to_string(witness));
            sc.table[i][j] = dec->c;
            for (int m = 0; m < n; ++m) sc.table[j][i][m] = rf_neg(dec->c[m]);
        }
    for (int i = 0; i < n; ++i)
        for (const auto& e : sc.table[i])
            for (const auto& q : e)
                if (!q.is_polynomial()) sc.rational_flagged = true;
    // verify Jacobi as polynomial identities
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int kk = j + 1; kk < n; ++kk) {
                AlgebraElement ei = sc.basis_element(i), ej = sc.basis_element(j),
                               ek = sc.basis_element(kk);
                AlgebraElement jac = sc.bracket(sc.bracket(ei, ej), ek);
                AlgebraElement j2 = sc.bracket(sc.bracket(ej, ek), ei);
                AlgebraElement j3 = sc.bracket(sc.bracket(ek, ei), ej);
                for (int m = 0; m < n; ++m) {
                    RatFunc s = rf_add(jac.c[m], rf_add(j2.c[m], j3.c[m]));
                    if (!s.is_zero())
                        throw Error("commutator table: Jacobi identity failed on computed table");
                }
            }
    return sc;
}

std::vector<TableMismatch> diff_tables(const StructureConstants& computed,
                                       const StructureConstants& printed) {
    if (computed.dim != printed.dim) throw Error("diff_tables: dimension mismatch");
    std::vector<TableMismatch> out;
    for (int i = 0; i < computed.dim; ++i)
        for (int j = 0; j < computed.dim; ++j) {
            bool equal = true;
            for (int m = 0; m < computed.dim; ++m)
                if (!rf_equal(computed.table[i][j][m], printed.table[i][j][m])) {
                    equal = false;
                    break;
                }
            if (!equal) {
                AlgebraElement ce{computed.table[i][j]}, pe{printed.table[i][j]};
                out.push_back(TableMismatch{i, j, element_to_string(computed, ce),
                                            element_to_string(printed, pe)});
            }
        }
    return out;
}

std::vector<std::pair<int, int>> antisymmetry_violations(const StructureConstants& sc) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < sc.dim; ++i)
        for (int j = i + 1; j < sc.dim; ++j)
            for (int m = 0; m < sc.dim; ++m)
                if (!rf_add(sc.table[i][j][m], sc.table[j][i][m]).is_zero()) {
                    out.emplace_back(i, j);
                    break;
                }
    return out;
}

QMat ad_matrix(const StructureConstants& sc, int i) {
    QMat m(sc.dim, sc.dim, sc.gens);
    for (int j = 0; j < sc.dim; ++j)
        for (int mm = 0; mm < sc.dim; ++mm) m.at(j, mm) = sc.table[i][j][mm];
    return m;
}

std::vector<std::vector<Expr>> adjoint_series(const StructureConstants& sc, int i, int order,
                                              const Expr& eps_atom) {
    QMat A = ad_matrix(sc, i);
    std::vector<std::vector<Expr>> M(sc.dim, std::vector<Expr>(sc.dim));
    for (int r = 0; r < sc.dim; ++r) M[r][r] = Expr::integer(1);
    QMat P = qmat_identity(sc.dim, sc.gens);
    Rat fact(1);
    for (int m = 1; m <= order; ++m) {
        P = qmat_mul(P, A);
        fact *= m;
        if (qmat_is_zero(P)) break;
        Expr coeff = mul(pow(neg(eps_atom), Rat(m)), Expr::rational(Rat(1) / fact));
        for (int r = 0; r < sc.dim; ++r)
            for (int c = 0; c < sc.dim; ++c) {
                if (P.at(r, c).is_zero()) continue;
                M[r][c] = add(M[r][c], mul(coeff, rf_to_expr(P.at(r, c))));
            }
    }
    return M;
}

AdjointVerifyResult adjoint_verify_closed(const StructureConstants& sc, int i,
                                          const std::vector<std::vector<Expr>>& M,
                                          const Expr& eps_atom) {
    AdjointVerifyResult out;
    QMat A = ad_matrix(sc, i);
    Bindings at0;
    at0.bind(eps_atom, Expr());
    for (int r = 0; r < sc.dim; ++r)
        for (int c = 0; c < sc.dim; ++c) {
            Expr v0 = substitute(M[r][c], at0);
            Expr expect = r == c ? Expr::integer(1) : Expr();
            if (v0 != expect) {
                AdjointEntryFailure f{r, c, sub(v0, expect), true};
                out.failures.push_back(f);
            }
        }
    for (int r = 0; r < sc.dim; ++r)
        for (int c = 0; c < sc.dim; ++c) {
            Expr resid = diff(M[r][c], eps_atom);
            for (int m = 0; m < sc.dim; ++m) {
                if (A.at(m, c).is_zero()) continue;
                resid = add(resid, mul(M[r][m], rf_to_expr(A.at(m, c))));
            }
            if (!resid.is_zero())
                out.failures.push_back(AdjointEntryFailure{r, c, resid, false});
        }
    out.pass = out.failures.empty();
    return out;
}

AlgebraElement adjoint_apply_symbolic(const StructureConstants& sc, const AlgebraElement& x,
                                      int i, const Expr& eps) {
    QMat A = ad_matrix(sc, i);
    // nilpotency check: ad^m = 0 for some m <= dim
    QMat P = A;
    int nil = -1;
    for (int m = 1; m <= sc.dim + 1; ++m) {
        if (qmat_is_zero(P)) { nil = m; break; }
        P = qmat_mul(P, A);
    }
    if (nil < 0)
        throw Error("adjoint_apply: ad(v_" + std::to_string(i + 1) +
                    ") is not nilpotent; no symbolic closed form here - use the numeric path");
    auto M = adjoint_series(sc, i, nil, eps);
    AlgebraElement out = sc.element_zero();
    std::vector<Expr> xs(sc.dim);
    for (int j = 0; j < sc.dim; ++j) xs[j] = rf_to_expr(x.c[j]);
    for (int c = 0; c < sc.dim; ++c) {
        Expr acc;
        for (int j = 0; j < sc.dim; ++j) acc = add(acc, mul(xs[j], M[j][c]));
        auto rf = rf_from_expr(sc.gens, acc);
        if (!rf) {
            // keep epsilon-polynomial entries as rational functions over extended gens
            std::vector<std::string> ext = sc.gens;
            throw Error("adjoint_apply: symbolic result is not in the coefficient ring; "
                        "query the series matrix instead");
        }
        out.c[c] = *rf;
    }
    return out;
}

std::vector<std::vector<double>> expm(const std::vector<std::vector<double>>& m) {
    const std::size_t n = m.size();
    double norm = 0;
    for (const auto& row : m) {
        double s = 0;
        for (double v : row) s += std::fabs(v);
        norm = std::max(norm, s);
    }
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) { scale *= 0.5; ++squarings; }
    auto matmul = [n](const std::vector<std::vector<double>>& a,
                      const std::vector<std::vector<double>>& b) {
        std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t kk = 0; kk < n; ++kk) {
                if (a[i][kk] == 0.0) continue;
                for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][kk] * b[kk][j];
            }
        return c;
    };
    std::vector<std::vector<double>> A(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = m[i][j] * scale;
    // Taylor series with tail bound ||A||^k/k! below double precision
    std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = 1.0;
    std::vector<std::vector<double>> term = out;
    double tnorm = 1.0;
    for (int k = 1; k <= 40; ++k) {
        term = matmul(term, A);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) term[i][j] /= k;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i][j] += term[i][j];
        tnorm *= (norm * scale) / k;
        if (tnorm < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) out = matmul(out, out);
    return out;
}

std::vector<double> adjoint_apply_numeric(const StructureConstants& sc,
                                          const std::vector<double>& x, int i, double eps,
                                          const std::map<std::string, double>& params) {
    QMat A = ad_matrix(sc, i);
    std::vector<std::vector<double>> An(sc.dim, std::vector<double>(sc.dim, 0.0));
    for (int r = 0; r < sc.dim; ++r)
        for (int c = 0; c < sc.dim; ++c)
            An[r][c] = -eps * rf_eval(A.at(r, c), params);
    auto M = expm(An);
    std::vector<double> out(sc.dim, 0.0);
    for (int c = 0; c < sc.dim; ++c)
        for (int j = 0; j < sc.dim; ++j) out[c] += x[j] * M[j][c];
    return out;
}

} // namespace liesym
