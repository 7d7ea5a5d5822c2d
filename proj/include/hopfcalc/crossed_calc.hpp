#pragma once

// Crossed product calculi: the first-order construction on B#σH, its
// verification, the necessity of d∘σ = 0, graded extensions to higher forms,
// the smash product classification and de Rham cohomology by rank.

#include "hopfcalc/fodc.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hopfcalc {

inline Index hor(const Index& beta, const Index& h) { return Index("hor", {beta, h}); }
inline Index ver(const Index& b, const Index& gamma) { return Index("ver", {b, gamma}); }
inline bool is_hor(const Index& w) { return w.tag() == "hor"; }

inline Vec horv(const Vec& beta, const Vec& h) {
    Vec r;
    for (const auto& [i, c] : beta)
        for (const auto& [j, e] : h) r.add(hor(i, j), c * e);
    return r;
}

inline Vec verv(const Vec& b, const Vec& gamma) {
    Vec r;
    for (const auto& [i, c] : b)
        for (const auto& [j, e] : gamma) r.add(ver(i, j), c * e);
    return r;
}

/// γ₋₂⊗γ₋₁⊗γ₀ from a left coaction.
inline Sweedler left_coaction2(const Hopf& H, const LinFn& lambda, const Index& g) {
    Sweedler out;
    for (const auto& [p, c] : lambda(g))
        for (const auto& [q, e] : H.comul(first(p))) out.push_back({c * e, {first(q), second(q), second(p)}});
    return out;
}

inline Index unit_index(const Algebra& A) {
    if (A.unit.size() != 1 || !A.unit.coeff(A.unit.leading()).is_one())
        throw StructureError("the unit of " + A.name + " must be a basis element");
    return A.unit.leading();
}

struct CrossedFodc {
    CrossedProduct cp;
    Fodc b_calc;
    Fodc h_calc;
    BilFn b_action;
    Fodc fodc;
    CheckReport twisted_report;
};

/// Ω¹(B#σH) = (Ω¹(B)⊗H) ⊕ (B⊗Ω¹(H)) with the crossed product actions, d and coaction.
inline CrossedFodc build_crossed_fodc(const CrossedProduct& cp, const Fodc& bc, const Fodc& hc,
                                      int W = kDefaultWindow, bool require_dsigma = true) {
    if (!hc.lambda || !hc.rho) throw StructureError("the calculus on H must be bicovariant (missing coaction)");
    auto tc = check_sigma_twisted_module_calculus(bc, cp.hopf, cp.measure, cp.cocycle, W);
    for (const auto& e : tc.report.checks) {
        if (e.status != Status::fail) continue;
        const bool dsigmaFamily = e.name == "dsigma" || e.name == "dsigma-inverse" || e.name == "twisted-bimodule-iii";
        if (require_dsigma || !dsigmaFamily)
            throw StructureError("sigma-twisted module calculus hypothesis failed: " + e.name + " (witness " + e.witness + ")");
    }
    CrossedFodc cf{cp, bc, hc, tc.action, {}, tc.report};
    auto Hp = cp.hopf;
    auto Bp = cp.base;
    auto bcp = std::make_shared<Fodc>(bc);
    auto hcp = std::make_shared<Fodc>(hc);
    Measure m = cp.measure;
    Cocycle s = cp.cocycle;
    BilFn act = tc.action;
    LinFn lam = *hc.lambda;

    Fodc& f = cf.fodc;
    f.name = "crossed(" + bc.name + ", " + hc.name + ")";
    f.alg = cp.comodule->alg;
    if (bc.finite() && hc.finite() && Bp->finite() && Hp->A().finite()) {
        std::vector<Index> forms;
        for (const auto& b : bc.forms())
            for (const auto& h : Hp->A().basis()) forms.push_back(hor(b, h));
        for (const auto& b : Bp->basis())
            for (const auto& g : hc.forms()) forms.push_back(ver(b, g));
        std::sort(forms.begin(), forms.end());
        f.finite_forms = forms;
    }
    f.window_forms = [bcp, hcp, Bp, Hp](int w) {
        std::vector<Index> forms;
        for (const auto& b : bcp->forms(w))
            for (const auto& h : Hp->A().basis(w)) forms.push_back(hor(b, h));
        for (const auto& b : Bp->basis(w))
            for (const auto& g : hcp->forms(w)) forms.push_back(ver(b, g));
        std::sort(forms.begin(), forms.end());
        return forms;
    };

    f.left = memo_bil([Hp, Bp, bcp, hcp, m, s, act, lam](const Index& x, const Index& w) {
        const Index &b2 = first(x), &h2 = second(x);
        const Hopf& H = *Hp;
        Vec r;
        if (is_hor(w)) {
            const Index &beta = w.sub(0), &h = w.sub(1);
            for (const auto& t : sweedler(H, h2, 3))
                for (const auto& u : sweedler(H, h, 2)) {
                    Vec form = bcp->rmul(bcp->lmul(Vec(b2), act(t.f[0], beta)), s.sigma(t.f[1], u.f[0]));
                    r.axpy(t.c * u.c, horv(form, H.A().mul(t.f[2], u.f[1])));
                }
        } else {
            const Index &b = w.sub(0), &g = w.sub(1);
            for (const auto& t : sweedler(H, h2, 3))
                for (const auto& [p, c] : lam(g)) {
                    Vec bpart = Bp->mul(Bp->mul(Vec(b2), m(t.f[0], b)), s.sigma(t.f[1], first(p)));
                    r.axpy(t.c * c, verv(bpart, hcp->left(t.f[2], second(p))));
                }
        }
        return r;
    });
    f.right = memo_bil([Hp, Bp, bcp, hcp, m, s, lam](const Index& w, const Index& y) {
        const Index &b2 = first(y), &h2 = second(y);
        const Hopf& H = *Hp;
        Vec r;
        if (is_hor(w)) {
            const Index &beta = w.sub(0), &h = w.sub(1);
            for (const auto& t : sweedler(H, h, 3))
                for (const auto& u : sweedler(H, h2, 2)) {
                    Vec bpart = Bp->mul(m(t.f[0], b2), s.sigma(t.f[1], u.f[0]));
                    r.axpy(t.c * u.c, horv(bcp->rmul(Vec(beta), bpart), H.A().mul(t.f[2], u.f[1])));
                }
        } else {
            const Index &b = w.sub(0), &g = w.sub(1);
            for (const auto& t : left_coaction2(H, lam, g))
                for (const auto& u : sweedler(H, h2, 2)) {
                    Vec bpart = Bp->mul(Bp->mul(Vec(b), m(t.f[0], b2)), s.sigma(t.f[1], u.f[0]));
                    r.axpy(t.c * u.c, verv(bpart, hcp->right(t.f[2], u.f[1])));
                }
        }
        return r;
    });
    f.d = memo_lin([bcp, hcp](const Index& x) {
        return horv(bcp->d(first(x)), Vec(second(x))) + verv(Vec(first(x)), hcp->d(second(x)));
    });
    LinFn hrho = *hc.rho;
    f.rho = [Hp, hrho](const Index& w) {
        Vec r;
        if (is_hor(w)) {
            for (const auto& [p, c] : Hp->comul(w.sub(1))) r.add(pair(hor(w.sub(0), first(p)), second(p)), c);
        } else {
            for (const auto& [p, c] : hrho(w.sub(1))) r.add(pair(ver(w.sub(0), first(p)), second(p)), c);
        }
        return r;
    };
    f.hopf = Hp;
    f.alg_rho = cp.comodule->coaction;
    f.covariance = "right";

    const Index oneB = unit_index(*Bp), oneH = unit_index(Hp->A());
    LinFn bpres = bc.presentation, hpres = hc.presentation;
    f.presentation = [Hp, Bp, s, bpres, hpres, oneB, oneH](const Index& w) {
        Vec r;
        if (is_hor(w)) {
            const Index& h = w.sub(1);
            for (const auto& [p, c] : bpres(w.sub(0))) {
                const Index &b = first(p), &b2 = second(p);
                r.add(pair(pair(b, oneH), pair(b2, h)), c);
                for (const auto& [i, e] : Bp->mul(b, b2)) r.add(pair(pair(i, oneH), pair(oneB, h)), -(c * e));
            }
        } else {
            const Index& b = w.sub(0);
            for (const auto& [p, c] : hpres(w.sub(1)))
                for (const auto& t : sweedler(*Hp, first(p), 2))
                    for (const auto& u : sweedler(*Hp, second(p), 2)) {
                        Vec bs = Bp->mul(Vec(b), s.sigma_inv(t.f[0], u.f[0]));
                        for (const auto& [i, e] : bs) r.add(pair(pair(i, t.f[1]), pair(oneB, u.f[1])), c * t.c * u.c * e);
                    }
        }
        return r;
    };
    return cf;
}

/// Leibniz, the two generation identities, colinearity of d and differentiability of the coaction.
inline CheckReport verify_crossed_fodc(const CrossedFodc& cf, int W = kDefaultWindow) {
    CheckReport r = check_fodc(cf.fodc, W);
    r.suite = "crossed-fodc";
    const CrossedProduct& cp = cf.cp;
    const Algebra& A = cp.A();
    const Algebra& B = cp.B();
    const Hopf& H = cp.H();
    const Fodc& f = cf.fodc;
    const bool windowed = !f.finite();
    const int tw = windowed ? std::max(1, W / 2) : W;
    const Index oneB = unit_index(B), oneH = unit_index(H.A());
    Sweep wHor(windowed), wVer(windowed), rhoHat(windowed);
    auto Bt = B.basis(tw), Ht = H.A().basis(tw);
    for (const auto& b : Bt)
        for (const auto& b2 : Bt)
            for (const auto& h : Ht) {
                Vec lhs = f.lmul(Vec(pair(b, oneH)), f.d(pair(b2, h)));
                lhs -= f.lmul(tensor(B.mul(b, b2), Vec(oneH)), f.d(pair(oneB, h)));
                Vec rhs = horv(cf.b_calc.lmul(Vec(b), cf.b_calc.d(b2)), Vec(h));
                wHor.check_lazy(lhs == rhs, [&] { return b.str() + ", " + b2.str() + ", " + h.str(); });
            }
    for (const auto& b : Bt)
        for (const auto& h : Ht)
            for (const auto& h2 : Ht) {
                Vec lhs;
                for (const auto& t : sweedler(H, h, 2))
                    for (const auto& u : sweedler(H, h2, 2)) {
                        Vec x = tensor(B.mul(Vec(b), cp.cocycle.sigma_inv(t.f[0], u.f[0])), Vec(t.f[1]));
                        lhs.axpy(t.c * u.c, f.lmul(x, f.d(pair(oneB, u.f[1]))));
                    }
                Vec rhs = verv(Vec(b), cf.h_calc.lmul(Vec(h), cf.h_calc.d(h2)));
                wVer.check_lazy(lhs == rhs, [&] { return b.str() + ", " + h.str() + ", " + h2.str(); });
            }
    // ρ̂ d = d_⊗ ρ in Ω¹(A)⊗H ⊕ A⊗Ω¹(H).
    auto L = [](const Vec& v) { return tag_vec("L", v); };
    auto R = [](const Vec& v) { return tag_vec("R", v); };
    const LinFn& hlam = *cf.h_calc.lambda;
    const LinFn& hrho = *cf.h_calc.rho;
    auto rhoHatOf = [&](const Vec& w) {
        Vec out;
        for (const auto& [x, c] : w) {
            if (is_hor(x)) {
                for (const auto& [p, e] : H.comul(x.sub(1))) out.axpy(c * e, L(Vec(pair(hor(x.sub(0), first(p)), second(p)))));
            } else {
                for (const auto& [p, e] : hrho(x.sub(1))) out.axpy(c * e, L(Vec(pair(ver(x.sub(0), first(p)), second(p)))));
                for (const auto& [p, e] : hlam(x.sub(1)))
                    out.axpy(c * e, R(Vec(pair(pair(x.sub(0), first(p)), second(p)))));
            }
        }
        return out;
    };
    for (const auto& a : A.basis(W)) {
        Vec lhs = rhoHatOf(f.d(a));
        Vec rhs;
        for (const auto& [p, c] : cp.comodule->coaction(a)) {
            rhs.axpy(c, L(tensor(f.d(first(p)), Vec(second(p)))));
            rhs.axpy(c, R(tensor(Vec(first(p)), cf.h_calc.d(second(p)))));
        }
        rhoHat.check_lazy(lhs == rhs, [&] { return a.str(); });
    }
    wHor.into(r, "generation-horizontal");
    wVer.into(r, "generation-vertical");
    rhoHat.into(r, "coaction-differentiable");
    return r;
}

struct NecessityResult {
    CheckReport report;
    std::vector<std::string> witnesses;  // pairs (h, h') with d(σ(h⊗h')) ≠ 0
};

/// Leibniz defect of d on (1⊗h)(1⊗h') compared with d_B σ(h₁⊗h'₁)⊗h₂h'₂.
inline NecessityResult necessity_dsigma(const CrossedProduct& cp, const Fodc& bc, const Fodc& hc,
                                        int W = kDefaultWindow) {
    CrossedFodc cf = build_crossed_fodc(cp, bc, hc, W, false);
    const Fodc& f = cf.fodc;
    const Hopf& H = cp.H();
    const Index oneB = unit_index(cp.B());
    const bool windowed = !f.finite();
    NecessityResult out;
    out.report.suite = "necessity-dsigma";
    Sweep formula(windowed), dsig(windowed);
    for (const auto& h : H.A().basis(W))
        for (const auto& k : H.A().basis(W)) {
            Vec x(pair(oneB, h)), y(pair(oneB, k));
            Vec defect = f.dv(cp.A().mul(x, y)) - f.rmul(f.dv(x), y) - f.lmul(x, f.dv(y));
            Vec expected;
            for (const auto& t : sweedler(H, h, 2))
                for (const auto& u : sweedler(H, k, 2))
                    expected.axpy(t.c * u.c, horv(bc.dv(cp.cocycle.sigma(t.f[0], u.f[0])), H.A().mul(t.f[1], u.f[1])));
            const std::string w = "(" + h.str() + ", " + k.str() + ")";
            formula.check(defect == expected, w);
            bool zero = bc.dv(cp.cocycle.sigma(h, k)).is_zero();
            dsig.check(zero && defect.is_zero(), w);
            if (!zero) out.witnesses.push_back(w);
        }
    formula.into(out.report, "leibniz-defect-formula");
    dsig.into(out.report, "dsigma");
    return out;
}

// ---------------------------------------------------------------------------
// Graded calculi

inline Index gi(std::int64_t k, const Index& inner) { return Index("dg", {k, inner}); }
inline int gdeg(const Index& g) { return static_cast<int>(g.num(0)); }
inline const Index& ginner(const Index& g) { return g.sub(1); }
inline Vec gwrap(std::int64_t k, const Vec& v) {
    return relabel(v, [k](const Index& i) { return gi(k, i); });
}
inline Vec gunwrap(const Vec& v) {
    return relabel(v, [](const Index& i) { return ginner(i); });
}

struct GradedDc {
    std::string name;
    AlgebraPtr alg;
    Vec unit;
    int top = 1;
    bool finite = true;
    std::function<std::vector<Index>(int, int)> basis;  // (degree, window) ↦ graded indices
    BilFn wedge;
    LinFn d;
    HopfPtr hopf;
    std::optional<LinFn> rho;      // x ↦ x₀⊗x₁
    std::optional<LinFn> lambda;   // x ↦ x₋₁⊗x₀
    std::optional<BilFn> haction;  // (h, x) ↦ h·x for a base algebra

    Vec wedgev(const Vec& x, const Vec& y) const { return apply2(wedge, x, y); }
    Vec dv(const Vec& x) const { return hopfcalc::apply(d, x); }
    std::vector<Index> all(int maxdeg, int W) const {
        std::vector<Index> out;
        for (int k = 0; k <= maxdeg; ++k) {
            auto b = basis(k, W);
            out.insert(out.end(), b.begin(), b.end());
        }
        return out;
    }
};

/// Ω⁰ = A, Ω¹ from the calculus, Ω^{≥2} = 0 and d|Ω¹ = 0.
inline GradedDc truncated_dc(const Fodc& f, std::optional<BilFn> haction = std::nullopt, const Measure& measure = {}) {
    auto fp = std::make_shared<Fodc>(f);
    GradedDc g;
    g.name = "truncated(" + f.name + ")";
    g.alg = f.alg;
    g.unit = gwrap(0, f.alg->unit);
    g.top = 1;
    g.finite = f.finite();
    g.basis = [fp](int k, int W) {
        std::vector<Index> out;
        if (k == 0)
            for (const auto& a : fp->alg->basis(W)) out.push_back(gi(0, a));
        if (k == 1)
            for (const auto& w : fp->forms(W)) out.push_back(gi(1, w));
        return out;
    };
    g.wedge = [fp](const Index& x, const Index& y) {
        const int dx = gdeg(x), dy = gdeg(y);
        if (dx == 0 && dy == 0) return gwrap(0, fp->alg->mul(ginner(x), ginner(y)));
        if (dx == 0 && dy == 1) return gwrap(1, fp->left(ginner(x), ginner(y)));
        if (dx == 1 && dy == 0) return gwrap(1, fp->right(ginner(x), ginner(y)));
        return Vec();
    };
    g.d = [fp](const Index& x) { return gdeg(x) == 0 ? gwrap(1, fp->d(ginner(x))) : Vec(); };
    g.hopf = f.hopf;
    auto wrapRight = [](const Vec& v, std::int64_t k) {
        Vec r;
        for (const auto& [p, c] : v) r.add(pair(gi(k, first(p)), second(p)), c);
        return r;
    };
    auto wrapLeft = [](const Vec& v, std::int64_t k) {
        Vec r;
        for (const auto& [p, c] : v) r.add(pair(first(p), gi(k, second(p))), c);
        return r;
    };
    if (f.rho && f.alg_rho)
        g.rho = [fp, wrapRight](const Index& x) {
            return gdeg(x) == 0 ? wrapRight((*fp->alg_rho)(ginner(x)), 0) : wrapRight((*fp->rho)(ginner(x)), 1);
        };
    if (f.lambda && f.alg_lambda)
        g.lambda = [fp, wrapLeft](const Index& x) {
            return gdeg(x) == 0 ? wrapLeft((*fp->alg_lambda)(ginner(x)), 0) : wrapLeft((*fp->lambda)(ginner(x)), 1);
        };
    if (haction) {
        BilFn act = *haction;
        Measure m = measure;
        g.haction = [act, m](const Index& h, const Index& x) {
            return gdeg(x) == 0 ? gwrap(0, m(h, ginner(x))) : gwrap(1, act(h, ginner(x)));
        };
    }
    return g;
}

struct Truncation {
    std::optional<GradedDc> dc;
    std::string witness;
    CheckReport report;
};

/// Truncation of a calculus at degree 2; for bicovariant input the cross terms
/// γ₀γ'₋₁⊗γ₁γ'₀ − γ₋₁γ'₀⊗γ₀γ'₁ must vanish for Ω(Δ) to stay multiplicative.
inline Truncation truncate_dc_degree2(const Fodc& f, bool bicovariant, int W = kDefaultWindow) {
    Truncation t;
    t.report.suite = "truncation";
    if (bicovariant) {
        if (!f.bicovariant()) throw StructureError("truncate_dc_degree2: calculus lacks its coactions");
        const bool windowed = !f.finite();
        auto F = f.forms(windowed ? std::max(1, W / 2) : W);
        Sweep obst(windowed);
        for (const auto& g : F)
            for (const auto& g2 : F) {
                Vec x;
                for (const auto& [p, c] : (*f.rho)(g))
                    for (const auto& [q, e] : (*f.lambda)(g2))
                        x.axpy(c * e, tensor(f.right(first(p), first(q)), f.left(second(p), second(q))));
                for (const auto& [p, c] : (*f.lambda)(g))
                    for (const auto& [q, e] : (*f.rho)(g2))
                        x.axpy(-(c * e), tensor(f.left(first(p), first(q)), f.right(second(p), second(q))));
                obst.check(x.is_zero(), "(" + g.str() + ", " + g2.str() + ")");
            }
        obst.into(t.report, "truncation-obstruction");
        if (!t.report.ok()) {
            t.witness = t.report.checks.back().witness;
            return t;
        }
    }
    t.dc = truncated_dc(f);
    return t;
}

struct HigherForms {
    GradedDc dc;
    std::shared_ptr<const GradedDc> base;
    std::shared_ptr<const GradedDc> fiber;
    CheckReport hypotheses;
};

inline std::string first_failure_name(const CheckReport& r) {
    for (const auto& c : r.checks)
        if (c.status == Status::fail) return c.name + " (witness " + c.witness + ")";
    return {};
}

/// Ωⁿ(B#σH) = ⊕ Ω^{n-i}(B)⊗Ω^i(H) with the crossed wedge product and differential.
inline HigherForms build_higher_forms(const CrossedProduct& cp, const GradedDc& bdc, const GradedDc& hdc,
                                      int W = kDefaultWindow) {
    if (!bdc.haction) throw StructureError("higher forms: the base calculus needs an H-action on forms");
    if (!hdc.lambda || !hdc.rho) throw StructureError("higher forms: the calculus on H needs both coactions");
    HigherForms out;
    CheckReport& hyp = out.hypotheses;
    hyp.suite = "higher-forms-hypotheses";
    const Hopf& H = cp.H();
    const bool windowed = !bdc.finite || !hdc.finite;
    const int tw = windowed ? std::max(1, W / 2) : W;
    const BilFn& act = *bdc.haction;
    {
        Sweep graded(windowed), dlin(windowed), dsig(windowed);
        auto X = bdc.all(bdc.top, tw);
        for (const auto& h : H.A().basis(tw)) {
            for (const auto& x : X) {
                dlin.check_lazy(bdc.dv(act(h, x)) == apply2(act, Vec(h), bdc.d(x)), [&] { return h.str() + ", " + x.str(); });
                for (const auto& y : X) {
                    if (gdeg(x) + gdeg(y) > bdc.top) continue;
                    Vec lhs = apply2(act, Vec(h), bdc.wedge(x, y));
                    Vec rhs;
                    for (const auto& t : sweedler(H, h, 2)) rhs.axpy(t.c, bdc.wedgev(act(t.f[0], x), act(t.f[1], y)));
                    graded.check_lazy(lhs == rhs, [&] { return h.str() + ", " + x.str() + ", " + y.str(); });
                }
            }
            for (const auto& k : H.A().basis(tw))
                dsig.check_lazy(bdc.dv(gwrap(0, cp.cocycle.sigma(h, k))).is_zero(),
                                [&] { return "(" + h.str() + ", " + k.str() + ")"; });
        }
        graded.into(hyp, "graded-action");
        dlin.into(hyp, "action-commutes-with-d");
        dsig.into(hyp, "dsigma");
        if (!hyp.ok()) throw StructureError("higher forms hypothesis failed: " + first_failure_name(hyp));
    }

    auto bp = std::make_shared<GradedDc>(bdc);
    auto hp = std::make_shared<GradedDc>(hdc);
    out.base = bp;
    out.fiber = hp;
    auto Hp = cp.hopf;
    Cocycle s = cp.cocycle;
    auto gtensor = [](const Vec& x, const Vec& y) {
        Vec r;
        for (const auto& [i, c] : x)
            for (const auto& [j, e] : y) r.add(gi(gdeg(i) + gdeg(j), pair(i, j)), c * e);
        return r;
    };
    GradedDc& g = out.dc;
    g.name = "higher(" + bdc.name + ", " + hdc.name + ")";
    g.alg = cp.comodule->alg;
    g.unit = gtensor(bdc.unit, hdc.unit);
    g.top = bdc.top + hdc.top;
    g.finite = !windowed;
    g.basis = [bp, hp](int n, int w) {
        std::vector<Index> out;
        for (int i = 0; i <= n; ++i)
            for (const auto& x : bp->basis(n - i, w))
                for (const auto& y : hp->basis(i, w)) out.push_back(gi(n, pair(x, y)));
        std::sort(out.begin(), out.end());
        return out;
    };
    g.wedge = memo_bil([bp, hp, Hp, s, gtensor](const Index& X, const Index& Y) {
        const Index &w = first(ginner(X)), &gam = second(ginner(X));
        const Index &w2 = first(ginner(Y)), &gam2 = second(ginner(Y));
        const int j = gdeg(gam), k = gdeg(w2);
        const Cyc sign = ((j * k) % 2 == 0) ? Cyc(1) : Cyc(-1);
        Vec r;
        for (const auto& t : left_coaction2(*Hp, *hp->lambda, gam))
            for (const auto& [p, c] : (*hp->lambda)(gam2)) {
                Vec left = bp->wedgev(bp->wedgev(Vec(w), (*bp->haction)(t.f[0], w2)), gwrap(0, s.sigma(t.f[1], first(p))));
                Vec right = hp->wedge(t.f[2], second(p));
                r.axpy(sign * t.c * c, gtensor(left, right));
            }
        return r;
    });
    g.d = memo_lin([bp, hp, gtensor](const Index& X) {
        const Index &w = first(ginner(X)), &gam = second(ginner(X));
        const Cyc sign = (gdeg(w) % 2 == 0) ? Cyc(1) : Cyc(-1);
        return gtensor(bp->d(w), Vec(gam)) + sign * gtensor(Vec(w), hp->d(gam));
    });
    g.hopf = Hp;
    g.rho = [hp, gtensor](const Index& X) {
        Vec r;
        for (const auto& [p, c] : (*hp->rho)(second(ginner(X))))
            for (const auto& [i, e] : gtensor(Vec(first(ginner(X))), Vec(first(p)))) r.add(pair(i, second(p)), c * e);
        return r;
    };
    return out;
}

/// d² = 0, graded Leibniz, wedge associativity and unit, and coaction compatibility up to maxdeg.
inline CheckReport check_graded_dc(const GradedDc& g, int maxdeg = 2, int W = kDefaultWindow) {
    CheckReport r;
    r.suite = "graded-dc";
    const bool windowed = !g.finite;
    const int tw = windowed ? 1 : W;
    maxdeg = std::min(maxdeg, g.top);
    std::vector<std::vector<Index>> B(static_cast<std::size_t>(maxdeg) + 1), T(static_cast<std::size_t>(maxdeg) + 1);
    for (int k = 0; k <= maxdeg; ++k) {
        B[static_cast<std::size_t>(k)] = g.basis(k, windowed ? std::max(1, W / 2) : W);
        T[static_cast<std::size_t>(k)] = g.basis(k, tw);
    }
    const Vec& one = g.unit;
    Sweep d2(windowed), leib(windowed), assoc(windowed), unit(windowed), dcol(windowed), wcov(windowed);
    for (int k = 0; k <= maxdeg; ++k)
        for (const auto& x : B[static_cast<std::size_t>(k)]) {
            if (k + 1 <= g.top) d2.check_lazy(g.dv(g.d(x)).is_zero(), [&] { return x.str(); });
            unit.check_lazy(g.wedgev(one, Vec(x)) == Vec(x) && g.wedgev(Vec(x), one) == Vec(x), [&] { return x.str(); });
            if (g.rho && k < maxdeg) {
                Vec lhs = hopfcalc::apply(*g.rho, g.d(x));
                Vec rhs;
                for (const auto& [p, c] : (*g.rho)(x)) rhs.axpy(c, tensor(g.d(first(p)), Vec(second(p))));
                dcol.check_lazy(lhs == rhs, [&] { return x.str(); });
            }
        }
    for (int a = 0; a <= maxdeg; ++a)
        for (int b = 0; a + b <= maxdeg; ++b)
            for (const auto& x : T[static_cast<std::size_t>(a)])
                for (const auto& y : T[static_cast<std::size_t>(b)]) {
                    Vec xy = g.wedge(x, y);
                    if (a + b + 1 <= maxdeg) {
                        const Cyc sign = (a % 2 == 0) ? Cyc(1) : Cyc(-1);
                        Vec rhs = g.wedgev(g.d(x), Vec(y)) + sign * g.wedgev(Vec(x), g.d(y));
                        leib.check_lazy(g.dv(xy) == rhs, [&] { return x.str() + ", " + y.str(); });
                    }
                    if (g.rho) {
                        Vec lhs = hopfcalc::apply(*g.rho, xy);
                        Vec rhs;
                        for (const auto& [p, c] : (*g.rho)(x))
                            for (const auto& [q, e] : (*g.rho)(y))
                                rhs.axpy(c * e, tensor(g.wedge(first(p), first(q)), g.hopf->A().mul(second(p), second(q))));
                        wcov.check_lazy(lhs == rhs, [&] { return x.str() + ", " + y.str(); });
                    }
                    for (int c = 0; a + b + c <= maxdeg; ++c)
                        for (const auto& z : T[static_cast<std::size_t>(c)])
                            assoc.check_lazy(g.wedgev(xy, Vec(z)) == g.wedgev(Vec(x), g.wedge(y, z)),
                                             [&] { return x.str() + ", " + y.str() + ", " + z.str(); });
                }
    d2.into(r, "d-squared");
    leib.into(r, "graded-leibniz");
    assoc.into(r, "wedge-associativity");
    unit.into(r, "wedge-unit");
    if (g.rho) {
        dcol.into(r, "d-colinear");
        wcov.into(r, "wedge-covariant");
    }
    return r;
}

/// The degree ≤ 1 part of the higher forms against the first-order construction, map for map.
inline CheckReport compare_first_order(const GradedDc& g, const CrossedFodc& cf, int W = kDefaultWindow) {
    CheckReport r;
    r.suite = "first-order-agreement";
    const bool windowed = !cf.fodc.finite();
    const int tw = windowed ? std::max(1, W / 2) : W;
    auto a2g = [](const Index& x) { return gi(0, pair(gi(0, first(x)), gi(0, second(x)))); };
    auto f2g = [](const Index& w) {
        return is_hor(w) ? gi(1, pair(gi(1, w.sub(0)), gi(0, w.sub(1)))) : gi(1, pair(gi(0, w.sub(0)), gi(1, w.sub(1))));
    };
    auto av = [&](const Vec& v) { return relabel(v, a2g); };
    auto fv = [&](const Vec& v) { return relabel(v, f2g); };
    Sweep prod(windowed), left(windowed), right(windowed), dd(windowed), co(windowed);
    auto A = cf.cp.A().basis(tw);
    auto F = cf.fodc.forms(tw);
    for (const auto& x : A) {
        dd.check_lazy(g.d(a2g(x)) == fv(cf.fodc.d(x)), [&] { return x.str(); });
        for (const auto& y : A)
            prod.check_lazy(g.wedge(a2g(x), a2g(y)) == av(cf.cp.A().mul(x, y)), [&] { return x.str() + ", " + y.str(); });
        for (const auto& w : F) {
            left.check_lazy(g.wedge(a2g(x), f2g(w)) == fv(cf.fodc.left(x, w)), [&] { return x.str() + ", " + w.str(); });
            right.check_lazy(g.wedge(f2g(w), a2g(x)) == fv(cf.fodc.right(w, x)), [&] { return w.str() + ", " + x.str(); });
        }
    }
    if (g.rho && cf.fodc.rho)
        for (const auto& w : F) {
            Vec expect;
            for (const auto& [p, c] : (*cf.fodc.rho)(w)) expect.add(pair(f2g(first(p)), second(p)), c);
            co.check_lazy((*g.rho)(f2g(w)) == expect, [&] { return w.str(); });
        }
    prod.into(r, "degree0-product");
    dd.into(r, "degree0-differential");
    left.into(r, "degree1-left-action");
    right.into(r, "degree1-right-action");
    co.into(r, "degree1-coaction");
    return r;
}

// ---------------------------------------------------------------------------
// De Rham cohomology

struct Cohomology {
    std::vector<std::size_t> dims;  // H⁰ ... Hⁿ
    std::vector<std::size_t> form_dims;
    bool windowed = false;
    int window = 0;
};

inline Cohomology de_rham_cohomology(const GradedDc& g, int max_degree, int W = kDefaultWindow) {
    Cohomology c;
    c.windowed = !g.finite;
    c.window = W;
    std::vector<std::size_t> kerDim, rankD;
    for (int n = 0; n <= max_degree; ++n) {
        auto basis = g.basis(n, W);
        auto ki = kernel_image(g.d, basis);
        c.form_dims.push_back(basis.size());
        kerDim.push_back(ki.kernel.dim());
        rankD.push_back(ki.image.dim());
    }
    for (int n = 0; n <= max_degree; ++n) {
        std::size_t im = n == 0 ? 0 : rankD[static_cast<std::size_t>(n) - 1];
        c.dims.push_back(kerDim[static_cast<std::size_t>(n)] - std::min(im, kerDim[static_cast<std::size_t>(n)]));
    }
    return c;
}

// ---------------------------------------------------------------------------
// Smash product classification

struct Classification {
    CheckReport report;
    std::optional<CrossedFodc> smash;
};

/// Deterministic sample of nonzero elements: basis elements plus random combinations.
inline std::vector<Vec> sample_elements(const std::vector<Index>& basis, std::uint64_t seed, int extra = 3) {
    std::vector<Vec> out;
    for (const auto& b : basis) out.emplace_back(b);
    std::mt19937_64 rng(seed);
    for (int k = 0; k < extra && !basis.empty(); ++k) {
        Vec v;
        for (int t = 0; t < 3; ++t) {
            const auto i = static_cast<std::size_t>(rng() % basis.size());
            const long c = static_cast<long>(rng() % 7) - 3;
            v.add(basis[i], Cyc(c == 0 ? 1 : c));
        }
        if (!v.is_zero()) out.push_back(v);
    }
    return out;
}

/// Checks the three conditions characterizing calculi isomorphic to the smash product calculus.
inline Classification classify_smash(const Fodc& ac, const Fodc& hc, const CleftData& cleft, int W = 2,
                                     std::uint64_t seed = 1) {
    const ComoduleAlgebra& T = *cleft.total;
    const Algebra& A = *T.alg;
    const Hopf& H = *T.hopf;
    const Algebra& HA = H.A();
    const bool windowed = !ac.finite() || !HA.finite();
    LinFn j = cleft.j;
    for (const auto& h : HA.basis(W))
        for (const auto& k : HA.basis(W)) {
            Vec lhs = hopfcalc::apply(j, HA.mul(h, k));
            Vec rhs = A.mul(j(h), j(k));
            if (lhs != rhs)
                throw StructureError("not a trivial extension: j(" + h.str() + ")j(" + k.str() + ") = " + rhs.str() +
                                     " differs from j(" + h.str() + "·" + k.str() + ") = " + lhs.str());
        }
    if (hopfcalc::apply(j, HA.unit) != A.unit) throw StructureError("not a trivial extension: j(1) is not 1");

    Classification out;
    CheckReport& r = out.report;
    r.suite = "classification";
    auto cl = cleft_to_crossed(cleft, W);
    const Coinvariants& C = cleft.coinv;
    const Algebra& B = *C.base;

    // Pullback calculus Ω¹(B) = B d_A B inside Ω¹(A).
    auto acp = std::make_shared<Fodc>(ac);
    auto Bp = C.base;
    auto embed = C.embed;
    LinFn P = [acp, embed](const Index& p) { return acp->lmul(embed(first(p)), acp->dv(embed(second(p)))); };
    auto pairsAt = [Bp](int w) {
        std::vector<Index> pairs;
        for (const auto& b : Bp->basis(w))
            for (const auto& b2 : Bp->basis(w)) pairs.push_back(pair(b, b2));
        return pairs;
    };
    auto spanAt = std::make_shared<std::map<int, std::vector<Index>>>();
    auto pbForms = [spanAt, pairsAt, P](int w) {
        auto it = spanAt->find(w);
        if (it != spanAt->end()) return it->second;
        Subspace pb;
        for (const auto& p : pairsAt(w)) pb.insert(P(p));
        std::vector<Index> forms;
        for (const auto& [piv, row] : pb.rows()) {
            if (row.size() != 1)
                throw StructureError("pullback calculus is not spanned by basis forms of the total calculus (" + row.str() + ")");
            forms.push_back(piv);
        }
        (*spanAt)[w] = forms;
        return forms;
    };
    Fodc pf;
    pf.name = "pullback(" + ac.name + ")";
    pf.alg = Bp;
    if (!windowed) pf.finite_forms = pbForms(W);
    pf.window_forms = pbForms;
    pf.left = [acp, embed](const Index& b, const Index& w) { return acp->lmul(embed(b), Vec(w)); };
    pf.right = [acp, embed](const Index& w, const Index& b) { return acp->rmul(Vec(w), embed(b)); };
    pf.d = [acp, embed](const Index& b) { return acp->dv(embed(b)); };
    {
        auto solvers = std::make_shared<std::map<int, std::shared_ptr<LinearSolver>>>();
        const int w0 = windowed ? W : 0;
        pf.presentation = memo_lin([solvers, pairsAt, P, w0, windowed](const Index& w) {
            for (int k = w0; k <= 8 * std::max(w0, 1); k = std::max(2 * k, 1)) {
                auto& s = (*solvers)[k];
                if (!s) s = std::make_shared<LinearSolver>(P, pairsAt(k));
                if (auto x = s->solve(Vec(w))) return *x;
                if (!windowed) break;
            }
            throw StructureError("no presentation for pullback form " + w.str());
        });
    }

    // Torsion-freeness, sampled.
    {
        auto forms = ac.forms(windowed ? 1 : W);
        bool good = true;
        std::string wit;
        for (const auto& a : sample_elements(A.basis(windowed ? 1 : W), seed)) {
            LinFn lm = [&](const Index& w) { return ac.lmul(a, Vec(w)); };
            LinFn rm = [&](const Index& w) { return ac.rmul(Vec(w), a); };
            if (kernel_image(lm, forms).kernel.dim() != 0 || kernel_image(rm, forms).kernel.dim() != 0) {
                good = false;
                wit = a.str();
                break;
            }
        }
        r.add("torsion-free", good ? Status::sampled : Status::fail, wit, "seed " + std::to_string(seed));
    }

    // (1) ĵ(h d h') = j(h) d_A j(h') is well defined and injective.
    auto Hw = HA.basis(W);
    std::vector<Index> hpairs;
    for (const auto& h : Hw)
        for (const auto& k : Hw) hpairs.push_back(pair(h, k));
    LinFn Ph = [&](const Index& p) { return hc.lmul(Vec(first(p)), hc.d(second(p))); };
    auto rels = kernel_image(Ph, hpairs).kernel;
    auto jhatPair = [&](const Index& h, const Index& k) { return ac.lmul(j(h), ac.dv(j(k))); };
    bool wd = true;
    std::string wdWit;
    for (const auto& v : rels.basis()) {
        Vec img;
        for (const auto& [p, c] : v) img.axpy(c, jhatPair(first(p), second(p)));
        if (!img.is_zero()) {
            wd = false;
            wdWit = v.str();
            break;
        }
    }
    LinFn jhat = [&](const Index& g) {
        Vec out;
        for (const auto& [p, c] : hc.presentation(g)) out.axpy(c, jhatPair(first(p), second(p)));
        return out;
    };
    auto hforms = hc.forms(W);
    const bool inj = kernel_image(jhat, hforms).kernel.dim() == 0;
    r.add("classification-(1)", wd && inj ? (windowed ? Status::window_verified : Status::pass) : Status::fail,
          wd ? (inj ? "" : "ĵ not injective") : wdWit);

    // (2) ι̂(Ω¹(B)) j(H) ∩ ι(B) ĵ(Ω¹(H)) = 0.
    Subspace U, V;
    for (const auto& beta : pbForms(W))
        for (const auto& h : Hw) U.insert(ac.rmul(Vec(beta), j(h)));
    for (const auto& b : B.basis(W))
        for (const auto& g : hforms) V.insert(ac.lmul(C.embed(b), jhat(g)));
    const std::size_t inter = intersection_dim(U, V);
    r.add("classification-(2)", inter == 0 ? (windowed ? Status::window_verified : Status::pass) : Status::fail, "",
          "intersection dim " + std::to_string(inter));

    // (3) d_A(j(h₁)) b j⁻¹(h₂) = -j(h₁) b d_A(j⁻¹(h₂)).
    Sweep c3(windowed);
    for (const auto& h : Hw)
        for (const auto& b : B.basis(W)) {
            Vec lhs, rhs;
            for (const auto& t : sweedler(H, h, 2)) {
                lhs.axpy(t.c, ac.rmul(ac.rmul(ac.dv(j(t.f[0])), C.embed(b)), cl.j_inv(t.f[1])));
                rhs.axpy(Cyc(-1) * t.c, ac.lmul(A.mul(j(t.f[0]), C.embed(b)), ac.dv(cl.j_inv(t.f[1]))));
            }
            c3.check_lazy(lhs == rhs, [&] { return h.str() + ", " + b.str(); });
        }
    c3.into(r, "classification-(3)");
    if (!r.ok()) return out;

    // θ̂⁻¹ on the smash product calculus built from the pullback calculus.
    CrossedFodc sm = build_crossed_fodc(cl.cp, pf, hc, W);
    LinFn thetaInv = cl.theta_inv;
    LinFn thetaHatInv = [&](const Index& w) {
        if (is_hor(w)) return ac.rmul(Vec(w.sub(0)), j(w.sub(1)));
        return ac.lmul(C.embed(w.sub(0)), jhat(w.sub(1)));
    };
    Sweep bim(windowed), inter2(windowed);
    const int tw = windowed ? 1 : W;
    auto X = cl.cp.A().basis(tw);
    auto Fs = sm.fodc.forms(tw);
    for (const auto& x : X) {
        inter2.check_lazy(hopfcalc::apply(thetaHatInv, sm.fodc.d(x)) == ac.dv(thetaInv(x)), [&] { return x.str(); });
        for (const auto& w : Fs) {
            bool okL = hopfcalc::apply(thetaHatInv, sm.fodc.left(x, w)) == ac.lmul(thetaInv(x), thetaHatInv(w));
            bool okR = hopfcalc::apply(thetaHatInv, sm.fodc.right(w, x)) == ac.rmul(thetaHatInv(w), thetaInv(x));
            bim.check_lazy(okL && okR, [&] { return x.str() + ", " + w.str(); });
        }
    }
    auto dom = sm.fodc.forms(W);
    auto ki = kernel_image(thetaHatInv, dom);
    bool surj = true;
    std::string surjWit;
    for (const auto& w : ac.forms(windowed ? 1 : W))
        if (!ki.image.contains(Vec(w))) {
            surj = false;
            surjWit = w.str();
            break;
        }
    const bool bij = ki.kernel.dim() == 0 && surj;
    r.add("theta-hat-bijective", bij ? (windowed ? Status::window_verified : Status::pass) : Status::fail,
          ki.kernel.dim() ? ki.kernel.basis().front().str() : surjWit,
          "rank " + std::to_string(ki.image.dim()) + " on " + std::to_string(dom.size()) + " forms");
    bim.into(r, "theta-hat-bimodule");
    inter2.into(r, "theta-hat-intertwines");
    out.smash = sm;
    return out;
}

} // namespace hopfcalc
