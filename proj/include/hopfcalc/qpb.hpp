#pragma once

// Principal bundle structure on B#σH: vertical maps and Atiyah sequences, the
// canonical strong connection, covariant derivatives on associated bundles,
// the quantum tangent space with fundamental vector fields, and connection 1-forms.

#include "hopfcalc/crossed_calc.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hopfcalc {

/// Key of a left-coinvariant form, named by its echelon pivot.
inline Index xkey(const Index& pivot) { return Index("x", {pivot}); }
/// Dual tangent vector to xkey(pivot).
inline Index tkey(const Index& pivot) { return Index("tx", {pivot}); }

struct CoinvariantForms {
    Subspace span;
    std::vector<Index> keys;
    LinFn maurer_cartan;
    CheckReport report;
    bool windowed = false;

    Vec form(const Index& key) const { return span.rows().at(key.sub(0)); }
    Vec coords(const Vec& gamma) const {
        if (!span.contains(gamma)) throw StructureError("not a left-coinvariant form: " + gamma.str());
        return relabel(span.coordinates(gamma), [](const Index& p) { return xkey(p); });
    }
    std::size_t dim() const { return keys.size(); }
};

/// Left-coinvariant 1-forms as ker(λ − 1⊗Id) and the Maurer–Cartan form h ↦ S(h₁)dh₂.
inline CoinvariantForms coinvariant_forms(const Fodc& hc, int W = kDefaultWindow) {
    if (!hc.lambda || !hc.hopf) throw StructureError("coinvariant forms need a left coaction");
    const Hopf& H = *hc.hopf;
    const Index one = unit_index(H.A());
    CoinvariantForms co;
    co.windowed = !hc.finite();
    LinFn lam = *hc.lambda;
    LinFn f = [&](const Index& g) { return lam(g) - Vec(pair(one, g)); };
    co.span = kernel_image(f, hc.forms(W)).kernel;
    for (const auto& p : co.span.pivots()) co.keys.push_back(xkey(p));
    auto Hp = hc.hopf;
    auto hcp = std::make_shared<Fodc>(hc);
    co.maurer_cartan = [Hp, hcp](const Index& h) {
        Vec r;
        for (const auto& t : sweedler(*Hp, h, 2)) r.axpy(t.c, hcp->lmul(Hp->S(Vec(t.f[0])), hcp->d(t.f[1])));
        return r;
    };
    co.report.suite = "coinvariant-forms";
    Sweep lands(co.windowed);
    Subspace image;
    for (const auto& h : H.A().basis(W)) {
        Vec x = Vec(h) - Cyc(H.counit(h)) * H.A().unit;
        Vec mc = hopfcalc::apply(co.maurer_cartan, x);
        lands.check_lazy(co.span.contains(mc), [&] { return h.str(); });
        image.insert(mc);
    }
    lands.into(co.report, "maurer-cartan-coinvariant");
    const bool spans = image.contains_all(co.span);
    co.report.add("maurer-cartan-surjective", spans ? (co.windowed ? Status::window_verified : Status::pass) : Status::fail,
                  "", "dim " + std::to_string(co.dim()));
    return co;
}

/// Element of (B#σH)⊗coH Ω¹(H): a ⊗ x.
inline Index vpair(const Index& a, const Index& key) { return pair(a, key); }

struct VerticalData {
    std::shared_ptr<const CrossedFodc> cf;
    CoinvariantForms co;
    LinFn ver;
    LinFn p;  // indexed by ver(b, γ)
    LinFn g;  // indexed by pair(a, x)
    CheckReport report;

    const Fodc& fodc() const { return cf->fodc; }
    std::vector<Index> target_basis(int W) const {
        std::vector<Index> out;
        for (const auto& a : cf->cp.A().basis(W))
            for (const auto& k : co.keys) out.push_back(vpair(a, k));
        return out;
    }
    /// Left action of the total algebra on (B#σH)⊗coH Ω¹(H).
    Vec act(const Vec& a, const Vec& t) const {
        Vec r;
        for (const auto& [x, c] : a)
            for (const auto& [y, e] : t)
                for (const auto& [z, f] : cf->cp.A().mul(x, first(y))) r.add(vpair(z, second(y)), c * e * f);
        return r;
    }
    /// Diagonal right coaction a⊗γ ↦ a₀⊗γ₀⊗a₁γ₁.
    Vec coact(const Vec& t) const {
        const Hopf& H = cf->cp.H();
        const LinFn& rhoH = *cf->h_calc.rho;
        Vec r;
        for (const auto& [y, c] : t)
            for (const auto& [pa, e] : cf->cp.comodule->coaction(first(y)))
                for (const auto& [pg, f] : hopfcalc::apply(rhoH, co.form(second(y)))) {
                    Vec xs = co.coords(Vec(first(pg)));
                    for (const auto& [k, u] : xs)
                        for (const auto& [h, v] : H.A().mul(second(pa), second(pg)))
                            r.add(pair(vpair(first(pa), k), h), c * e * f * u * v);
                }
        return r;
    }
};

inline Vec form_coaction(const Fodc& f, const Vec& w) { return hopfcalc::apply(*f.rho, w); }

/// ver = p∘π₂ with p(b⊗γ) = b⊗γ₋₂⊗S(γ₋₁)γ₀ and its inverse g(b⊗h⊗γ) = b⊗hγ.
inline VerticalData vertical_map(const CrossedFodc& cf, int W = kDefaultWindow) {
    VerticalData vd;
    vd.cf = std::make_shared<CrossedFodc>(cf);
    vd.co = coinvariant_forms(cf.h_calc, W);
    auto cfp = vd.cf;
    auto co = std::make_shared<CoinvariantForms>(vd.co);
    vd.p = [cfp, co](const Index& w) {
        const Hopf& H = cfp->cp.H();
        const Index &b = w.sub(0), &gam = w.sub(1);
        Vec r;
        for (const auto& t : left_coaction2(H, *cfp->h_calc.lambda, gam)) {
            Vec inv = cfp->h_calc.lmul(H.S(Vec(t.f[1])), Vec(t.f[2]));
            for (const auto& [k, c] : co->coords(inv)) r.add(vpair(pair(b, t.f[0]), k), t.c * c);
        }
        return r;
    };
    vd.g = [cfp, co](const Index& y) {
        const Index& a = first(y);
        return verv(Vec(first(a)), cfp->h_calc.lmul(Vec(second(a)), co->form(second(y))));
    };
    LinFn p = vd.p;
    vd.ver = [p](const Index& w) { return is_hor(w) ? Vec() : p(w); };

    const bool windowed = !cf.fodc.finite();
    CheckReport& r = vd.report;
    r.suite = "vertical-map";
    Sweep gp(windowed), pg(windowed), lin(windowed), col(windowed);
    auto forms = cf.fodc.forms(W);
    for (const auto& w : forms)
        if (!is_hor(w)) gp.check_lazy(hopfcalc::apply(vd.g, vd.p(w)) == Vec(w), [&] { return w.str(); });
    for (const auto& t : vd.target_basis(W)) pg.check_lazy(hopfcalc::apply(vd.p, vd.g(t)) == Vec(t), [&] { return t.str(); });
    const int tw = windowed ? 1 : W;
    auto small = cf.fodc.forms(tw);
    for (const auto& a : cf.cp.A().basis(tw))
        for (const auto& w : small) {
            Vec lhs = hopfcalc::apply(vd.ver, cf.fodc.left(a, w));
            Vec rhs = vd.act(Vec(a), vd.ver(w));
            lin.check_lazy(lhs == rhs, [&] { return a.str() + ", " + w.str(); });
        }
    for (const auto& w : small) {
        Vec lhs;
        for (const auto& [q, c] : (*cf.fodc.rho)(w))
            for (const auto& [y, e] : vd.ver(first(q))) lhs.add(pair(y, second(q)), c * e);
        col.check_lazy(lhs == vd.coact(vd.ver(w)), [&] { return w.str(); });
    }
    gp.into(r, "g-after-p");
    pg.into(r, "p-after-g");
    lin.into(r, "ver-left-linear");
    col.into(r, "ver-right-colinear");
    return vd;
}

inline Status verified(bool ok, bool windowed) {
    return ok ? (windowed ? Status::window_verified : Status::pass) : Status::fail;
}

/// ker(ver) = Ω¹(B)⊗H, surjectivity through g, and for the higher forms ker(ver^{0,n}) = Ω¹(B)∧Ω^{n-1}.
inline CheckReport check_atiyah_exact(const VerticalData& vd, const HigherForms* higher = nullptr, int max_degree = 1,
                                      int W = kDefaultWindow) {
    CheckReport r;
    r.suite = "atiyah";
    const Fodc& f = vd.fodc();
    const bool windowed = !f.finite();
    auto forms = f.forms(W);
    auto ki = kernel_image(vd.ver, forms);
    Subspace horSpan;
    std::size_t nHor = 0;
    for (const auto& w : forms)
        if (is_hor(w)) {
            horSpan.insert(Vec(w));
            ++nHor;
        }
    const bool kerEq = ki.kernel.contains_all(horSpan) && horSpan.contains_all(ki.kernel);
    r.add("kernel-is-horizontal", verified(kerEq, windowed), "",
          "dim ker " + std::to_string(ki.kernel.dim()) + ", dim hor " + std::to_string(nHor));
    bool surj = true;
    std::string wit;
    for (const auto& t : vd.target_basis(W))
        if (hopfcalc::apply(vd.ver, vd.g(t)) != Vec(t)) {
            surj = false;
            wit = t.str();
            break;
        }
    r.add("ver-surjective", verified(surj, windowed), wit);
    if (!higher || max_degree < 2) return r;

    const GradedDc& A = higher->dc;
    const GradedDc& Hd = *higher->fiber;
    const GradedDc& Bd = *higher->base;
    if (!Hd.lambda) throw StructureError("higher vertical maps need the left coaction on forms of H");
    const Hopf& H = *vd.cf->cp.hopf;
    const bool hw = windowed || !A.finite;
    const Index oneH = unit_index(H.A());
    for (int n = 2; n <= max_degree; ++n) {
        auto hforms = Hd.basis(n, W);
        LinFn lamMinus = [&](const Index& g) {
            Vec out;
            for (const auto& [p, c] : (*Hd.lambda)(g)) out.add(p, c);
            out.add(pair(oneH, g), Cyc(-1));
            return out;
        };
        Subspace coN = kernel_image(lamMinus, hforms).kernel;
        // ver^{0,n}(b⊗γ) = b⊗γ₋₂⊗S(γ₋₁)γ₀ on the B⊗Ωⁿ(H) summand and zero elsewhere.
        LinFn verN = [&](const Index& X) {
            const Index &w = first(ginner(X)), &gam = second(ginner(X));
            Vec out;
            if (gdeg(w) != 0) return out;
            for (const auto& t : left_coaction2(H, *Hd.lambda, gam)) {
                Vec inv = Hd.wedgev(gwrap(0, H.S(Vec(t.f[1]))), Vec(t.f[2]));
                if (!coN.contains(inv)) throw StructureError("ver^{0,n}: value not left-coinvariant");
                for (const auto& [k, c] : coN.coordinates(inv)) out.add(pair(pair(ginner(w), t.f[0]), k), t.c * c);
            }
            return out;
        };
        auto An = A.basis(n, W);
        auto kin = kernel_image(verN, An);
        Subspace wedgeSpan;
        for (const auto& beta : Bd.basis(1, W))
            for (const auto& y : A.basis(n - 1, W))
                wedgeSpan.insert(A.wedgev(Vec(gi(1, pair(beta, gi(0, oneH)))), Vec(y)));
        const bool eq = kin.kernel.contains_all(wedgeSpan) && wedgeSpan.contains_all(kin.kernel);
        r.add("ver0" + std::to_string(n) + "-kernel", verified(eq, hw), "",
              "dim ker " + std::to_string(kin.kernel.dim()) + ", dim wedge " + std::to_string(wedgeSpan.dim()));
        // Surjectivity through gⁿ(b⊗h⊗γ) = b⊗hγ.
        bool ok = true;
        std::string w2;
        for (const auto& a : vd.cf->cp.A().basis(W))
            for (const auto& piv : coN.pivots()) {
                Vec gam = Hd.wedgev(gwrap(0, Vec(second(a))), coN.rows().at(piv));
                Vec pre;
                for (const auto& [y, c] : gam) pre.add(gi(n, pair(gi(0, first(a)), y)), c);
                if (hopfcalc::apply(verN, pre) != Vec(pair(a, piv))) {
                    ok = false;
                    w2 = a.str();
                }
            }
        r.add("ver0" + std::to_string(n) + "-surjective", verified(ok, hw), w2,
              "dim coinvariant " + std::to_string(coN.dim()));
    }
    return r;
}

struct Connection {
    LinFn c;  // pair(a, x) ↦ form
    CheckReport report;
};

/// Left linearity, right colinearity and ver∘c = Id for a candidate connection.
inline CheckReport check_connection(const VerticalData& vd, const LinFn& c, int W = kDefaultWindow) {
    CheckReport r;
    r.suite = "connection";
    const Fodc& f = vd.fodc();
    const bool windowed = !f.finite();
    const int tw = windowed ? 1 : W;
    Sweep lin(windowed), col(windowed), split(windowed), idem(windowed);
    auto T = vd.target_basis(W);
    for (const auto& t : T) split.check_lazy(hopfcalc::apply(vd.ver, c(t)) == Vec(t), [&] { return t.str(); });
    auto Ts = vd.target_basis(tw);
    for (const auto& a : vd.cf->cp.A().basis(tw))
        for (const auto& t : Ts)
            lin.check_lazy(hopfcalc::apply(c, vd.act(Vec(a), Vec(t))) == f.lmul(Vec(a), c(t)),
                           [&] { return a.str() + ", " + t.str(); });
    for (const auto& t : Ts) {
        Vec lhs = form_coaction(f, c(t));
        Vec rhs;
        for (const auto& [q, e] : vd.coact(Vec(t)))
            for (const auto& [w, u] : c(first(q))) rhs.add(pair(w, second(q)), e * u);
        col.check_lazy(lhs == rhs, [&] { return t.str(); });
    }
    LinFn proj = [&](const Index& w) { return hopfcalc::apply(c, vd.ver(w)); };
    auto forms = f.forms(tw);
    for (const auto& w : forms) {
        Vec pw = proj(w);
        idem.check_lazy(hopfcalc::apply(proj, pw) == pw && (!is_hor(w) || pw.is_zero()), [&] { return w.str(); });
    }
    split.into(r, "ver-after-c");
    lin.into(r, "left-linear");
    col.into(r, "right-colinear");
    idem.into(r, "projection-idempotent");
    if (!windowed) {
        auto ki = kernel_image(proj, forms);
        std::size_t nHor = 0;
        for (const auto& w : forms) nHor += is_hor(w) ? 1 : 0;
        r.add("projection-kernel-horizontal", ki.kernel.dim() == nHor ? Status::pass : Status::fail, "",
              "dim ker " + std::to_string(ki.kernel.dim()));
    }
    return r;
}

/// c((b⊗h)⊗γ) = b⊗hγ, with strongness and the section s(a) = a₀j⁻¹(a₁)⊗j(a₂).
inline Connection canonical_connection(const VerticalData& vd, int W = kDefaultWindow) {
    Connection conn;
    conn.c = vd.g;
    conn.report = check_connection(vd, conn.c, W);
    CheckReport& r = conn.report;
    r.suite = "canonical-connection";
    const CrossedFodc& cf = *vd.cf;
    const Fodc& f = cf.fodc;
    const bool windowed = !f.finite();
    const Algebra& A = cf.cp.A();
    const Hopf& H = cf.cp.H();
    const Index oneB = unit_index(cf.cp.B()), oneH = unit_index(H.A());
    Sweep unit(windowed), strong(windowed), sect(windowed);
    for (const auto& k : vd.co.keys)
        unit.check_lazy(conn.c(vpair(pair(oneB, oneH), k)) == verv(Vec(oneB), vd.co.form(k)), [&] { return k.str(); });
    for (const auto& a : A.basis(W)) {
        Vec dA = f.d(a);
        Vec rest = dA - hopfcalc::apply(conn.c, hopfcalc::apply(vd.ver, dA));
        strong.check_lazy(rest == horv(cf.b_calc.d(first(a)), Vec(second(a))), [&] { return a.str(); });
    }
    auto cleft = canonical_cleft(cf.cp);
    const LinFn& j = cleft.j;
    const LinFn& jinv = *cleft.j_inv;
    for (const auto& a : A.basis(W)) {
        Vec m;
        for (const auto& [p, c] : cf.cp.comodule->coaction(a))
            for (const auto& t : sweedler(H, second(p), 2)) m.axpy(c * t.c, A.mul(A.mul(Vec(first(p)), jinv(t.f[0])), j(t.f[1])));
        sect.check_lazy(m == Vec(a), [&] { return a.str(); });
    }
    unit.into(r, "unit-value");
    strong.into(r, "strong");
    sect.into(r, "strong-section");
    return conn;
}

// ---------------------------------------------------------------------------
// Associated bundles

struct ComoduleSpec {
    std::vector<Index> basis;
    LinFn coaction;  // v ↦ Σ v₀⊗v₁
};

struct CovariantDerivative {
    std::vector<Vec> e_basis;  // elements over pair(a, v)
    std::function<Vec(const Vec&)> nabla;               // E → Ω¹(B)⊗_B E as forms over pair(ω, v)
    std::function<Vec(const Vec&, const Vec&)> sigma_e; // (e, β) ↦ σ_E(e⊗β)
    CheckReport report;
};

/// ∇(b⊗h⊗v) = (Id − c∘ver)d(b⊗h)⊗v and σ_E(b⊗h⊗v⊗β) = b(h₁·β)⊗h₂⊗v.
inline CovariantDerivative covariant_derivative(const VerticalData& vd, const ComoduleSpec& V, int W = kDefaultWindow,
                                                std::function<std::vector<Vec>(int)> family = nullptr) {
    const CrossedFodc& cf = *vd.cf;
    const Fodc& f = cf.fodc;
    const Algebra& A = cf.cp.A();
    const Algebra& B = cf.cp.B();
    const Hopf& H = cf.cp.H();
    const bool windowed = !f.finite();
    const Index oneH = unit_index(H.A());
    CovariantDerivative cd;
    CheckReport& r = cd.report;
    r.suite = "covariant-derivative";
    if (windowed) {
        if (!family) throw StructureError("associated bundle: coinvariants not computable and no family declared");
        cd.e_basis = family(W);
    } else {
        std::vector<Index> dom;
        for (const auto& a : A.basis())
            for (const auto& v : V.basis) dom.push_back(pair(a, v));
        LinFn rho = [&](const Index& x) {
            Vec out;
            for (const auto& [p, c] : cf.cp.comodule->coaction(first(x)))
                for (const auto& [q, e] : V.coaction(second(x)))
                    for (const auto& [h, u] : H.A().mul(second(p), second(q))) out.add(pair(pair(first(p), first(q)), h), c * e * u);
            out.add(pair(x, oneH), Cyc(-1));
            return out;
        };
        cd.e_basis = kernel_image(rho, dom).kernel.basis();
    }
    // Elements of E are sums of (a⊗v); the module operations act on the first leg.
    auto onForms = [](const Vec& e, const std::function<Vec(const Index&)>& fn) {
        Vec out;
        for (const auto& [x, c] : e)
            for (const auto& [w, u] : fn(first(x))) out.add(pair(w, second(x)), c * u);
        return out;
    };
    auto onAlg = onForms;
    auto cfp = vd.cf;
    VerticalData vdc = vd;
    cd.nabla = [cfp, vdc, onForms](const Vec& e) {
        return onForms(e, [&](const Index& a) {
            Vec dA = cfp->fodc.d(a);
            return dA - hopfcalc::apply(vdc.g, hopfcalc::apply(vdc.ver, dA));
        });
    };
    BilFn act = cf.b_action;
    cd.sigma_e = [cfp, act, onForms](const Vec& e, const Vec& beta) {
        return onForms(e, [&](const Index& a) {
            Vec out;
            for (const auto& t : sweedler(cfp->cp.H(), second(a), 2))
                out.axpy(t.c, horv(cfp->b_calc.lmul(Vec(first(a)), apply2(act, Vec(t.f[0]), beta)), Vec(t.f[1])));
            return out;
        });
    };
    auto embed = [&](const Vec& b) { return tensor(b, H.A().unit); };
    auto leftB = [&](const Vec& b, const Vec& e) { return onAlg(e, [&](const Index& a) { return A.mul(embed(b), Vec(a)); }); };
    auto rightB = [&](const Vec& e, const Vec& b) { return onAlg(e, [&](const Index& a) { return A.mul(Vec(a), embed(b)); }); };
    auto leftF = [&](const Vec& b, const Vec& x) { return onForms(x, [&](const Index& w) { return f.lmul(embed(b), Vec(w)); }); };
    auto rightF = [&](const Vec& x, const Vec& b) { return onForms(x, [&](const Index& w) { return f.rmul(Vec(w), embed(b)); }); };
    // d_B b acting on e from the left inside Ω¹(A)⊗V.
    auto formTimesE = [&](const Vec& beta, const Vec& e) {
        return onForms(e, [&](const Index& a) { return f.rmul(horv(beta, H.A().unit), Vec(a)); });
    };

    const int tw = windowed ? 1 : W;
    auto Bs = B.basis(tw);
    auto Fb = cf.b_calc.forms(tw);
    Sweep formula(windowed), leib(windowed), bim(windowed), rleib(windowed), unique(windowed), sform(windowed);
    for (const auto& e : cd.e_basis) {
        Vec expect;
        for (const auto& [x, c] : e)
            for (const auto& [w, u] : horv(cf.b_calc.d(first(first(x))), Vec(second(first(x))))) expect.add(pair(w, second(x)), c * u);
        Vec ne = cd.nabla(e);
        formula.check_lazy(ne == expect, [&] { return e.str(); });
        for (const auto& b : Bs) {
            Vec lhs = cd.nabla(leftB(Vec(b), e));
            Vec rhs = formTimesE(cf.b_calc.d(b), e) + leftF(Vec(b), ne);
            leib.check_lazy(lhs == rhs, [&] { return b.str() + ", " + e.str(); });
            Vec lhs2 = cd.nabla(rightB(e, Vec(b)));
            Vec rhs2 = cd.sigma_e(e, cf.b_calc.d(b)) + rightF(ne, Vec(b));
            rleib.check_lazy(lhs2 == rhs2, [&] { return e.str() + ", " + b.str(); });
            for (const auto& beta : Fb) {
                bool okL = cd.sigma_e(leftB(Vec(b), e), Vec(beta)) == leftF(Vec(b), cd.sigma_e(e, Vec(beta)));
                bool okR = cd.sigma_e(e, cf.b_calc.rmul(Vec(beta), Vec(b))) == rightF(cd.sigma_e(e, Vec(beta)), Vec(b));
                bim.check_lazy(okL && okR, [&] { return e.str() + ", " + b.str() + ", " + beta.str(); });
            }
        }
        for (const auto& beta : Fb) {
            // σ_E rebuilt from the right Leibniz rule through a presentation β = Σ b₁ d b₂.
            Vec rebuilt;
            for (const auto& [p, c] : cf.b_calc.presentation(beta)) {
                Vec eb1 = rightB(e, Vec(first(p)));
                rebuilt.axpy(c, cd.nabla(rightB(eb1, Vec(second(p)))) - rightF(cd.nabla(eb1), Vec(second(p))));
            }
            unique.check_lazy(rebuilt == cd.sigma_e(e, Vec(beta)), [&] { return e.str() + ", " + beta.str(); });
            Vec viaProduct = onForms(e, [&](const Index& a) { return f.lmul(Vec(a), horv(Vec(beta), H.A().unit)); });
            sform.check_lazy(viaProduct == cd.sigma_e(e, Vec(beta)), [&] { return e.str() + ", " + beta.str(); });
        }
    }
    r.add("associated-bundle-dim", Status::pass, "", std::to_string(cd.e_basis.size()) + " basis elements");
    formula.into(r, "nabla-formula");
    leib.into(r, "left-leibniz");
    sform.into(r, "sigma-formula");
    bim.into(r, "sigma-bimodule");
    rleib.into(r, "right-leibniz");
    unique.into(r, "sigma-unique");
    return cd;
}

// ---------------------------------------------------------------------------
// Quantum tangent space

struct TangentSpace {
    std::vector<Index> basis;              // tkey(pivot)
    std::map<Index, Vec> coaction;         // x_j ↦ Σ x_i⊗h
    std::function<Cyc(const Index&, const Vec&)> pair_with;  // x_j(γ) for coinvariant γ
    std::map<Index, LinFn> fields;         // x_j ↦ (Id⊗x_j)∘ver
    CheckReport report;
};

inline TangentSpace tangent_and_fields(const VerticalData& vd, int W = kDefaultWindow) {
    if (!vd.cf->h_calc.finite()) throw StructureError("quantum tangent space needs finite-dimensional coinvariant forms");
    TangentSpace ts;
    CheckReport& r = ts.report;
    r.suite = "tangent-space";
    const CrossedFodc& cf = *vd.cf;
    const Hopf& H = cf.cp.H();
    const Fodc& f = cf.fodc;
    const CoinvariantForms& co = vd.co;
    auto cop = std::make_shared<CoinvariantForms>(co);
    for (const auto& k : co.keys) ts.basis.push_back(tkey(k.sub(0)));
    ts.pair_with = [cop](const Index& x, const Vec& gamma) { return cop->coords(gamma).coeff(xkey(x.sub(0))); };
    Sweep dual(false), comod(false), ident(false);
    for (const auto& x : ts.basis)
        for (const auto& k : co.keys)
            dual.check(ts.pair_with(x, co.form(k)) == Cyc(x.sub(0) == k.sub(0) ? 1 : 0), x.str() + ", " + k.str());
    const LinFn& rhoH = *cf.h_calc.rho;
    for (const auto& xj : ts.basis) {
        Vec out;
        for (const auto& k : co.keys)
            for (const auto& [q, c] : hopfcalc::apply(rhoH, co.form(k))) {
                Cyc val = ts.pair_with(xj, Vec(first(q)));
                if (!val.is_zero()) out.axpy(c * val, tensor(Vec(tkey(k.sub(0))), H.Sinv(Vec(second(q)))));
            }
        ts.coaction[xj] = out;
    }
    auto coactT = [&](const Vec& v) {
        Vec out;
        for (const auto& [x, c] : v) out.axpy(c, ts.coaction.at(x));
        return out;
    };
    for (const auto& xj : ts.basis) {
        Vec once = ts.coaction.at(xj);
        Vec lhs, rhs;
        for (const auto& [p, c] : once) {
            for (const auto& [q, e] : coactT(Vec(first(p)))) lhs.add(pair(first(q), pair(second(q), second(p))), c * e);
            for (const auto& [h2, e] : H.comul(second(p))) rhs.add(pair(first(p), h2), c * e);
        }
        Vec counit;
        for (const auto& [p, c] : once) counit.add(first(p), c * H.counit(second(p)));
        comod.check(lhs == rhs && counit == Vec(xj), xj.str());
        // α₀(γ)α₁ = α(γ₀)S⁻¹(γ₁) on every coinvariant basis form γ.
        for (const auto& k : co.keys) {
            Vec left, right;
            for (const auto& [p, c] : once) left.axpy(c * ts.pair_with(first(p), co.form(k)), Vec(second(p)));
            for (const auto& [q, c] : hopfcalc::apply(rhoH, co.form(k))) right.axpy(c * ts.pair_with(xj, Vec(first(q))), H.Sinv(Vec(second(q))));
            ident.check(left == right, xj.str() + ", " + k.str());
        }
    }
    dual.into(r, "dual-basis");
    comod.into(r, "tangent-comodule");
    ident.into(r, "tangent-coaction-identity");

    auto vdp = std::make_shared<VerticalData>(vd);
    for (const auto& xj : ts.basis) {
        Index key = xkey(xj.sub(0));
        ts.fields[xj] = [vdp, key](const Index& w) {
            Vec out;
            for (const auto& [y, c] : vdp->ver(w))
                if (second(y) == key) out.add(first(y), c);
            return out;
        };
    }
    const bool windowed = !f.finite();
    const Algebra& A = cf.cp.A();
    const Index oneB = unit_index(cf.cp.B()), oneH = unit_index(H.A());
    const int tw = windowed ? 1 : W;
    Sweep lin(windowed), vert(windowed), norm(windowed), uniq(windowed);
    auto forms = f.forms(tw);
    // Spanning set a·(1⊗x) of the vertical part, used to rebuild each field from its normalization.
    std::vector<Index> spanDom;
    for (const auto& a : A.basis(W))
        for (const auto& k : co.keys) spanDom.push_back(pair(a, k));
    LinFn spanMap = [&](const Index& p) { return f.lmul(Vec(first(p)), verv(Vec(oneB), co.form(second(p)))); };
    LinearSolver solver(spanMap, spanDom);
    for (const auto& xj : ts.basis) {
        const LinFn& F = ts.fields.at(xj);
        for (const auto& k : co.keys) {
            Vec val = hopfcalc::apply(F, verv(Vec(oneB), co.form(k)));
            Vec want = (k.sub(0) == xj.sub(0)) ? Vec(pair(oneB, oneH)) : Vec();
            norm.check_lazy(val == want, [&] { return xj.str() + ", " + k.str(); });
        }
        for (const auto& w : forms) {
            if (is_hor(w)) vert.check_lazy(F(w).is_zero(), [&] { return xj.str() + ", " + w.str(); });
            for (const auto& a : A.basis(tw))
                lin.check_lazy(hopfcalc::apply(F, f.left(a, w)) == A.mul(Vec(a), F(w)), [&] { return xj.str() + ", " + a.str() + ", " + w.str(); });
            if (is_hor(w)) continue;
            auto sol = solver.solve(Vec(w));
            if (!sol) {
                uniq.fail(xj.str() + ", " + w.str());
                continue;
            }
            Vec rebuilt;
            for (const auto& [p, c] : *sol)
                if (second(p).sub(0) == xj.sub(0)) rebuilt.axpy(c, Vec(first(p)));
            uniq.check_lazy(rebuilt == F(w), [&] { return xj.str() + ", " + w.str(); });
        }
    }
    lin.into(r, "field-left-linear");
    vert.into(r, "field-vertical");
    norm.into(r, "field-normalized");
    uniq.into(r, "field-uniqueness");
    return ts;
}

// ---------------------------------------------------------------------------
// Connection 1-forms

struct ConnectionForm {
    std::map<Index, Vec> coeffs;  // tangent basis element ↦ φ_j
};

/// Coinvariance of Σ x_j⊗φ_j and the VER projection of each φ_j.
inline CheckReport check_connection_form(const VerticalData& vd, const TangentSpace& ts, const ConnectionForm& phi) {
    CheckReport r;
    r.suite = "connection-form";
    const Fodc& f = vd.fodc();
    const Hopf& H = vd.cf->cp.H();
    const Index oneB = unit_index(vd.cf->cp.B());
    Vec lhs, rhs;
    for (const auto& [x, form] : phi.coeffs) {
        for (const auto& [w, c] : form) rhs.add(pair(pair(x, w), unit_index(H.A())), c);
        for (const auto& [px, c] : ts.coaction.at(x))
            for (const auto& [q, e] : form_coaction(f, form))
                for (const auto& [h, u] : H.A().mul(second(px), second(q))) lhs.add(pair(pair(first(px), first(q)), h), c * e * u);
    }
    r.add("coinvariant", lhs == rhs ? Status::pass : Status::fail, lhs == rhs ? "" : (lhs - rhs).leading().str());
    Sweep proj(false);
    for (const auto& [x, form] : phi.coeffs) {
        Vec verPart;
        for (const auto& [w, c] : form)
            if (!is_hor(w)) verPart.add(w, c);
        proj.check(verPart == verv(Vec(oneB), vd.co.form(xkey(x.sub(0)))), x.str());
    }
    proj.into(r, "vertical-projection");
    return r;
}

struct BijectionResult {
    ConnectionForm phi;
    LinFn c;
    CheckReport report;
};

inline ConnectionForm form_of_connection(const VerticalData& vd, const TangentSpace& ts, const LinFn& c) {
    const Index one = pair(unit_index(vd.cf->cp.B()), unit_index(vd.cf->cp.H().A()));
    ConnectionForm phi;
    for (const auto& x : ts.basis) phi.coeffs[x] = c(vpair(one, xkey(x.sub(0))));
    return phi;
}

inline LinFn connection_of_form(const VerticalData& vd, const TangentSpace& ts, const ConnectionForm& phi) {
    auto vdp = std::make_shared<VerticalData>(vd);
    auto tsp = std::make_shared<TangentSpace>(ts);
    auto coeffs = phi.coeffs;
    return [vdp, tsp, coeffs](const Index& t) {
        Vec gamma = vdp->co.form(second(t));
        Vec out;
        for (const auto& [x, form] : coeffs) {
            Cyc val = tsp->pair_with(x, gamma);
            if (!val.is_zero()) out.axpy(val, vdp->fodc().lmul(Vec(first(t)), form));
        }
        return out;
    };
}

/// Connection ↦ connection 1-form, checked, and the roundtrip back.
inline BijectionResult connection_form_bijection(const VerticalData& vd, const TangentSpace& ts, const LinFn& c,
                                                 int W = kDefaultWindow) {
    auto pre = check_connection(vd, c, W);
    if (!pre.ok()) throw StructureError("not a connection: " + first_failure_name(pre));
    BijectionResult out;
    out.phi = form_of_connection(vd, ts, c);
    out.report = check_connection_form(vd, ts, out.phi);
    out.report.suite = "connection-bijection";
    out.c = connection_of_form(vd, ts, out.phi);
    bool same = true;
    std::string wit;
    for (const auto& t : vd.target_basis(W))
        if (out.c(t) != c(t)) {
            same = false;
            wit = t.str();
            break;
        }
    out.report.add("roundtrip-connection", verified(same, !vd.fodc().finite()), wit);
    return out;
}

/// Connection 1-form ↦ connection, checked, and the roundtrip back.
inline BijectionResult connection_form_bijection(const VerticalData& vd, const TangentSpace& ts, const ConnectionForm& phi,
                                                 int W = kDefaultWindow) {
    auto pre = check_connection_form(vd, ts, phi);
    if (!pre.ok()) throw StructureError("not a connection 1-form: " + first_failure_name(pre));
    BijectionResult out;
    out.phi = phi;
    out.c = connection_of_form(vd, ts, phi);
    out.report = check_connection(vd, out.c, W);
    out.report.suite = "connection-bijection";
    auto back = form_of_connection(vd, ts, out.c);
    bool same = back.coeffs == phi.coeffs;
    out.report.add("roundtrip-form", same ? Status::pass : Status::fail);
    return out;
}

} // namespace hopfcalc
