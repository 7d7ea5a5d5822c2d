#pragma once

// First-order differential calculi: container and checks, Woronowicz calculi
// from ideals, the universal calculus, Laurent q-calculi, quotient calculi and
// the σ-twisted module calculus verification.

#include "hopfcalc/crossed.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hopfcalc {

struct Fodc {
    std::string name;
    AlgebraPtr alg;
    std::optional<std::vector<Index>> finite_forms;
    std::function<std::vector<Index>(int)> window_forms;
    BilFn left;          // (a, ω) ↦ a·ω
    BilFn right;         // (ω, a) ↦ ω·a
    LinFn d;             // a ↦ d a
    LinFn presentation;  // ω ↦ Σ c (a ⊗ b) with ω = Σ c a d b
    HopfPtr hopf;        // coacting Hopf algebra, if any
    std::optional<LinFn> rho;         // ω ↦ ω₀⊗ω₁
    std::optional<LinFn> lambda;      // ω ↦ ω₋₁⊗ω₀
    std::optional<LinFn> alg_rho;     // a ↦ a₀⊗a₁
    std::optional<LinFn> alg_lambda;  // a ↦ a₋₁⊗a₀
    std::string covariance = "none";

    bool finite() const { return finite_forms.has_value() && alg->finite(); }
    std::vector<Index> forms(int W = kDefaultWindow) const {
        if (finite_forms) return *finite_forms;
        return window_forms(W);
    }
    bool bicovariant() const { return lambda.has_value() && rho.has_value(); }

    Vec lmul(const Vec& a, const Vec& w) const { return apply2(left, a, w); }
    Vec rmul(const Vec& w, const Vec& a) const { return apply2(right, w, a); }
    Vec dv(const Vec& a) const { return hopfcalc::apply(d, a); }
    /// Σ c a d b for a presentation vector over pairs (a, b).
    Vec present(const Vec& pres) const {
        Vec r;
        for (const auto& [p, c] : pres) r.axpy(c, lmul(Vec(first(p)), d(second(p))));
        return r;
    }
};

using FodcPtr = std::shared_ptr<const Fodc>;

/// Presentations of every form of a finite calculus, found by solving a d b = ω.
inline LinFn solve_presentations(const Fodc& f) {
    std::vector<Index> pairs;
    auto basis = f.alg->basis();
    for (const auto& a : basis)
        for (const auto& b : basis) pairs.push_back(pair(a, b));
    LinFn P = [&f](const Index& p) { return f.lmul(Vec(first(p)), f.d(second(p))); };
    LinearSolver solver(P, pairs);
    auto table = std::make_shared<std::map<Index, Vec>>();
    for (const auto& w : f.forms()) {
        auto sol = solver.solve(Vec(w));
        if (!sol) throw StructureError("calculus " + f.name + " is not generated by d at " + w.str());
        (*table)[w] = *sol;
    }
    return [table](const Index& w) { return table->at(w); };
}

/// Ω¹ = 0.
inline Fodc zero_fodc(AlgebraPtr A) {
    Fodc f;
    f.name = "zero";
    f.alg = std::move(A);
    f.finite_forms = std::vector<Index>{};
    f.window_forms = [](int) { return std::vector<Index>{}; };
    f.left = [](const Index&, const Index&) { return Vec(); };
    f.right = f.left;
    f.d = [](const Index&) { return Vec(); };
    f.presentation = [](const Index&) { return Vec(); };
    return f;
}

/// Attaches Δ as both algebra coactions of a Hopf algebra.
inline void attach_hopf_coactions(Fodc& f, HopfPtr H) {
    f.hopf = H;
    f.alg_rho = H->comul;
    f.alg_lambda = H->comul;
}

inline CheckReport check_fodc(const Fodc& f, int W = kDefaultWindow) {
    CheckReport r;
    r.suite = "fodc";
    const Algebra& A = *f.alg;
    const bool windowed = !f.finite();
    const int tw = windowed ? std::max(1, W / 2) : W;
    auto Ab = A.basis(W), At = A.basis(tw);
    auto Fb = f.forms(W), Ft = f.forms(tw);
    Vec one = A.unit;
    Sweep unit(windowed), lassoc(windowed), rassoc(windowed), compat(windowed), leibniz(windowed), surj(windowed);
    for (const auto& w : Fb) {
        unit.check_lazy(f.lmul(one, Vec(w)) == Vec(w) && f.rmul(Vec(w), one) == Vec(w), [&] { return w.str(); });
        surj.check_lazy(f.present(f.presentation(w)) == Vec(w), [&] { return w.str(); });
    }
    for (const auto& a : At)
        for (const auto& b : At) {
            Vec ab = A.mul(a, b);
            for (const auto& w : Ft) {
                auto wit = [&] { return a.str() + ", " + b.str() + ", " + w.str(); };
                lassoc.check_lazy(f.lmul(ab, Vec(w)) == f.lmul(Vec(a), f.left(b, w)), wit);
                rassoc.check_lazy(f.rmul(Vec(w), ab) == f.rmul(f.right(w, a), Vec(b)), wit);
                compat.check_lazy(f.rmul(f.left(a, w), Vec(b)) == f.lmul(Vec(a), f.right(w, b)), wit);
            }
        }
    for (const auto& a : Ab)
        for (const auto& b : (windowed ? At : Ab))
            leibniz.check_lazy(f.dv(A.mul(a, b)) == f.rmul(f.d(a), Vec(b)) + f.lmul(Vec(a), f.d(b)),
                               [&] { return a.str() + ", " + b.str(); });
    unit.into(r, "bimodule-unit");
    lassoc.into(r, "left-module");
    rassoc.into(r, "right-module");
    compat.into(r, "bimodule-compatibility");
    leibniz.into(r, "leibniz");
    surj.into(r, "surjectivity");

    if (f.hopf && f.rho && f.alg_rho) {
        const Algebra& HA = f.hopf->A();
        Sweep dcol(windowed), lcov(windowed), rcov(windowed);
        for (const auto& a : Ab) {
            Vec lhs = hopfcalc::apply(*f.rho, f.d(a));
            Vec rhs;
            for (const auto& [p, c] : (*f.alg_rho)(a)) rhs.axpy(c, tensor(f.d(first(p)), Vec(second(p))));
            dcol.check_lazy(lhs == rhs, [&] { return a.str(); });
        }
        for (const auto& a : At)
            for (const auto& w : Ft) {
                Vec lhs = hopfcalc::apply(*f.rho, f.left(a, w));
                Vec rhs;
                for (const auto& [p, c] : (*f.alg_rho)(a))
                    for (const auto& [q, e] : (*f.rho)(w))
                        rhs.axpy(c * e, tensor(f.left(first(p), first(q)), HA.mul(second(p), second(q))));
                lcov.check_lazy(lhs == rhs, [&] { return a.str() + ", " + w.str(); });
                Vec lhs2 = hopfcalc::apply(*f.rho, f.right(w, a));
                Vec rhs2;
                for (const auto& [q, e] : (*f.rho)(w))
                    for (const auto& [p, c] : (*f.alg_rho)(a))
                        rhs2.axpy(c * e, tensor(f.right(first(q), first(p)), HA.mul(second(q), second(p))));
                rcov.check_lazy(lhs2 == rhs2, [&] { return w.str() + ", " + a.str(); });
            }
        dcol.into(r, "d-right-colinear");
        lcov.into(r, "left-action-right-covariant");
        rcov.into(r, "right-action-right-covariant");
    }
    if (f.hopf && f.lambda && f.alg_lambda) {
        const Algebra& HA = f.hopf->A();
        Sweep dcol(windowed), lcov(windowed), rcov(windowed), bicom(windowed);
        for (const auto& a : Ab) {
            Vec lhs = hopfcalc::apply(*f.lambda, f.d(a));
            Vec rhs;
            for (const auto& [p, c] : (*f.alg_lambda)(a)) rhs.axpy(c, tensor(Vec(first(p)), f.d(second(p))));
            dcol.check_lazy(lhs == rhs, [&] { return a.str(); });
        }
        for (const auto& a : At)
            for (const auto& w : Ft) {
                Vec lhs = hopfcalc::apply(*f.lambda, f.left(a, w));
                Vec rhs;
                for (const auto& [p, c] : (*f.alg_lambda)(a))
                    for (const auto& [q, e] : (*f.lambda)(w))
                        rhs.axpy(c * e, tensor(HA.mul(first(p), first(q)), f.left(second(p), second(q))));
                lcov.check_lazy(lhs == rhs, [&] { return a.str() + ", " + w.str(); });
                Vec lhs2 = hopfcalc::apply(*f.lambda, f.right(w, a));
                Vec rhs2;
                for (const auto& [q, e] : (*f.lambda)(w))
                    for (const auto& [p, c] : (*f.alg_lambda)(a))
                        rhs2.axpy(c * e, tensor(HA.mul(first(q), first(p)), f.right(second(q), second(p))));
                rcov.check_lazy(lhs2 == rhs2, [&] { return w.str() + ", " + a.str(); });
            }
        if (f.rho) {
            for (const auto& w : Fb) {
                Vec lhs, rhs;
                for (const auto& [p, c] : (*f.rho)(w))
                    for (const auto& [q, e] : (*f.lambda)(first(p)))
                        lhs.add(Index("*3", {first(q), second(q), second(p)}), c * e);
                for (const auto& [p, c] : (*f.lambda)(w))
                    for (const auto& [q, e] : (*f.rho)(second(p)))
                        rhs.add(Index("*3", {first(p), first(q), second(q)}), c * e);
                bicom.check_lazy(lhs == rhs, [&] { return w.str(); });
            }
            bicom.into(r, "bicomodule");
        }
        dcol.into(r, "d-left-colinear");
        lcov.into(r, "left-action-left-covariant");
        rcov.into(r, "right-action-left-covariant");
    }
    return r;
}

// ---------------------------------------------------------------------------
// Woronowicz calculi

/// Smallest left ideal containing the generators.
inline Subspace left_ideal_closure(const Algebra& H, const std::vector<Vec>& gens) {
    Subspace I(gens);
    bool grew = true;
    auto basis = H.basis();
    while (grew) {
        grew = false;
        for (const auto& v : I.basis())
            for (const auto& h : basis)
                if (I.insert(H.mul(Vec(h), v))) grew = true;
    }
    return I;
}

inline Index wor(const Index& rep, const Index& h) { return Index("wor", {rep, h}); }

struct WoronowiczData {
    Fodc fodc;
    Subspace ideal;
    std::vector<Index> reps;  // basis elements h with [h - ε(h)1] a basis of H⁺/I
    LinFn pi_tilde;           // h ↦ [h - ε(h)1] over reps
    bool bicovariant = false;
    std::string ad_witness;
};

/// Ω¹ = (H⁺/I)⊗H for the left ideal generated by gens ⊆ H⁺.
inline WoronowiczData woronowicz_from_ideal(HopfPtr Hp, const std::vector<Vec>& gens) {
    const Hopf& H = *Hp;
    const Algebra& A = H.A();
    if (!A.finite()) throw StructureError("woronowicz_from_ideal needs a finite-dimensional Hopf algebra");
    if (A.unit.size() != 1 || !A.unit.coeff(A.unit.leading()).is_one())
        throw StructureError("woronowicz_from_ideal needs the unit to be a basis element");
    const Index unitIdx = A.unit.leading();
    for (const auto& g : gens)
        if (!H.eps(g).is_zero()) throw StructureError("ideal generator not in the augmentation ideal: " + g.str());

    WoronowiczData W;
    W.ideal = left_ideal_closure(A, gens);
    auto basis = A.basis();
    auto plusVec = [&](const Index& h) { return Vec(h) - H.counit(h) * A.unit; };
    Subspace acc = W.ideal;
    for (const auto& h : basis) {
        if (h == unitIdx) continue;
        if (acc.insert(plusVec(h))) W.reps.push_back(h);
    }
    // Coordinates in H⁺/I: solve v = Σ x_r (r - ε(r)1) + Σ y_i I_i.
    std::vector<Index> unknowns;
    std::map<Index, Vec> cols;
    for (const auto& rIdx : W.reps) {
        Index u = Index("rep", {rIdx});
        unknowns.push_back(u);
        cols[u] = plusVec(rIdx);
    }
    std::size_t k = 0;
    for (const auto& v : W.ideal.basis()) {
        Index u = idx("ideal", {static_cast<std::int64_t>(k++)});
        unknowns.push_back(u);
        cols[u] = v;
    }
    auto solver = std::make_shared<LinearSolver>([cols](const Index& u) { return cols.at(u); }, unknowns);
    auto piTable = std::make_shared<std::map<Index, Vec>>();
    for (const auto& h : basis) {
        auto sol = solver->solve(plusVec(h));
        if (!sol) throw StructureError("woronowicz: augmentation ideal coordinates unsolvable at " + h.str());
        Vec c;
        for (const auto& [u, x] : *sol)
            if (u.tag() == "rep") c.add(u.sub(0), x);
        (*piTable)[h] = c;
    }
    LinFn pit = [piTable](const Index& h) { return piTable->at(h); };
    W.pi_tilde = pit;

    auto reps = W.reps;
    auto plusTable = std::make_shared<std::map<Index, Vec>>();
    for (const auto& rIdx : reps) (*plusTable)[rIdx] = plusVec(rIdx);

    Fodc& f = W.fodc;
    f.name = "woronowicz(" + A.name + ")";
    f.alg = H.alg;
    std::vector<Index> forms;
    for (const auto& rIdx : reps)
        for (const auto& h : basis) forms.push_back(wor(rIdx, h));
    std::sort(forms.begin(), forms.end());
    f.finite_forms = forms;
    f.window_forms = [forms](int) { return forms; };
    auto embedClass = [](const Vec& cls, const Vec& h) {
        Vec r;
        for (const auto& [ri, c] : cls)
            for (const auto& [hi, e] : h) r.add(wor(ri, hi), c * e);
        return r;
    };
    f.d = memo_lin([Hp, pit, embedClass](const Index& h) {
        Vec r;
        for (const auto& [p, c] : Hp->comul(h)) r.axpy(c, embedClass(pit(first(p)), Vec(second(p))));
        return r;
    });
    f.left = memo_bil([Hp, pit, plusTable, embedClass](const Index& g, const Index& w) {
        const Index& rep = w.sub(0);
        const Index& h = w.sub(1);
        Vec r;
        for (const auto& [p, c] : Hp->comul(g)) {
            Vec cls = hopfcalc::apply(pit, Hp->A().mul(Vec(first(p)), plusTable->at(rep)));
            r.axpy(c, embedClass(cls, Hp->A().mul(second(p), h)));
        }
        return r;
    });
    f.right = [Hp](const Index& w, const Index& g) {
        Vec r;
        for (const auto& [hi, c] : Hp->A().mul(w.sub(1), g)) r.add(wor(w.sub(0), hi), c);
        return r;
    };
    f.hopf = Hp;
    attach_hopf_coactions(f, Hp);
    f.rho = [Hp](const Index& w) {
        Vec r;
        for (const auto& [p, c] : Hp->comul(w.sub(1))) r.add(pair(wor(w.sub(0), first(p)), second(p)), c);
        return r;
    };
    f.covariance = "right";

    // Ad_L(I) ⊆ H⊗I, tested as (Id⊗π)Ad_L(v) = 0.
    W.bicovariant = true;
    for (const auto& v : W.ideal.basis()) {
        Vec img;
        for (const auto& [hi, c] : v)
            for (const auto& t : sweedler(H, hi, 3)) {
                Vec left = A.mul(Vec(t.f[0]), H.antipode(t.f[2]));
                img.axpy(c * t.c, tensor(left, pit(t.f[1])));
            }
        if (!img.is_zero()) {
            W.bicovariant = false;
            W.ad_witness = v.str();
            break;
        }
    }
    if (W.bicovariant) {
        f.lambda = memo_lin([Hp, pit, plusTable, embedClass](const Index& w) {
            const Vec& g = plusTable->at(w.sub(0));
            Vec r;
            for (const auto& [gi, c] : g)
                for (const auto& t : sweedler(*Hp, gi, 3))
                    for (const auto& [p, e] : Hp->comul(w.sub(1))) {
                        Vec left = Hp->A().mul(Hp->A().mul(Vec(t.f[0]), Hp->antipode(t.f[2])), Vec(first(p)));
                        r.axpy(c * t.c * e, tensor(left, embedClass(pit(t.f[1]), Vec(second(p)))));
                    }
            return r;
        });
        f.covariance = "bicovariant";
    }
    f.presentation = solve_presentations(f);
    return W;
}

// ---------------------------------------------------------------------------
// Laurent q-calculi

inline Index tdt(const std::string& tag, std::int64_t n) { return idx(tag + "d", {n}); }

/// [m]_q = (q^m - 1)/(q - 1).
inline Cyc q_integer(const Cyc& q, std::int64_t m) { return (q.pow(m) - Cyc(1)) / (q - Cyc(1)); }

/// The q-calculus on k[s, s^-1]: d s^m = [m]_q s^(m-1) ds, s^m·(s^n ds) = s^(m+n) ds, (s^n ds)·s^m = q^m s^(n+m) ds.
inline Fodc laurent_q_calculus(const Cyc& q, const std::string& tag, HopfPtr H = nullptr) {
    if (q.is_zero() || q == Cyc(1) || q == Cyc(-1)) throw StructureError("q-calculus needs q different from 0, 1 and -1");
    auto qp = std::make_shared<RootPowers>(q);
    Fodc f;
    f.name = "q-calculus(" + tag + ")";
    f.alg = H ? H->alg : build_laurent_algebra(tag);
    f.window_forms = [tag](int W) {
        std::vector<Index> b;
        for (int n = -W; n <= W; ++n) b.push_back(tdt(tag, n));
        return b;
    };
    f.left = [tag](const Index& a, const Index& w) { return Vec(tdt(tag, a.num(0) + w.num(0))); };
    f.right = [tag, qp](const Index& w, const Index& a) { return Vec(tdt(tag, w.num(0) + a.num(0)), (*qp)(a.num(0))); };
    auto qi = std::make_shared<Cyc>(q);
    f.d = [tag, qi](const Index& a) {
        const auto m = a.num(0);
        return Vec(tdt(tag, m - 1), q_integer(*qi, m));
    };
    f.presentation = [tag](const Index& w) { return Vec(pair(idx(tag, {w.num(0)}), idx(tag, {1}))); };
    if (H) {
        attach_hopf_coactions(f, H);
        f.rho = [tag](const Index& w) { return Vec(pair(w, idx(tag, {w.num(0) + 1}))); };
        f.lambda = [tag](const Index& w) { return Vec(pair(idx(tag, {w.num(0) + 1}), w)); };
        f.covariance = "bicovariant";
    }
    return f;
}

inline Fodc build_laurent_q_calculus(const Cyc& q, HopfPtr H = nullptr) {
    if (!H) H = build_laurent_hopf("t");
    return laurent_q_calculus(q, "t", H);
}

// ---------------------------------------------------------------------------
// Universal and quotient calculi

inline Index uform(const Index& p) { return Index("u", {p}); }

/// Ω¹_u = ker(m) ⊆ A⊗A with d a = 1⊗a - a⊗1.
inline Fodc universal_fodc(AlgebraPtr Ap) {
    const Algebra& A = *Ap;
    if (!A.finite()) throw StructureError("universal_fodc needs a finite-dimensional algebra");
    auto basis = A.basis();
    std::vector<Index> pairs;
    for (const auto& a : basis)
        for (const auto& b : basis) pairs.push_back(pair(a, b));
    LinFn m = [&A](const Index& p) { return A.mul(first(p), second(p)); };
    auto K = std::make_shared<Subspace>(kernel_image(m, pairs).kernel);
    Fodc f;
    f.name = "universal(" + A.name + ")";
    f.alg = Ap;
    std::vector<Index> forms;
    for (const auto& p : K->pivots()) forms.push_back(uform(p));
    f.finite_forms = forms;
    f.window_forms = [forms](int) { return forms; };
    auto toForms = [K](const Vec& v) {
        return relabel(K->coordinates(v), [](const Index& p) { return uform(p); });
    };
    f.left = memo_bil([Ap, K, toForms](const Index& a, const Index& w) {
        Vec row = K->rows().at(w.sub(0));
        Vec r;
        for (const auto& [p, c] : row) r.axpy(c, tensor(Ap->mul(a, first(p)), Vec(second(p))));
        return toForms(r);
    });
    f.right = memo_bil([Ap, K, toForms](const Index& w, const Index& a) {
        Vec row = K->rows().at(w.sub(0));
        Vec r;
        for (const auto& [p, c] : row) r.axpy(c, tensor(Vec(first(p)), Ap->mul(second(p), a)));
        return toForms(r);
    });
    f.d = [Ap, toForms](const Index& a) { return toForms(tensor(Ap->unit, Vec(a)) - tensor(Vec(a), Ap->unit)); };
    f.presentation = [K](const Index& w) { return K->rows().at(w.sub(0)); };
    return f;
}

/// Smallest sub-bimodule of a finite calculus containing the generators.
inline Subspace sub_bimodule_closure(const Fodc& f, const std::vector<Vec>& gens) {
    Subspace N(gens);
    auto basis = f.alg->basis();
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& v : N.basis())
            for (const auto& a : basis) {
                if (N.insert(f.lmul(Vec(a), v))) grew = true;
                if (N.insert(f.rmul(v, Vec(a)))) grew = true;
            }
    }
    return N;
}

/// Quotient of a finite calculus by the sub-bimodule generated by gens.
inline Fodc quotient_fodc(const Fodc& base, const std::vector<Vec>& gens, const std::string& name) {
    if (!base.finite()) throw StructureError("quotient_fodc needs a finite calculus");
    auto N = std::make_shared<Subspace>(sub_bimodule_closure(base, gens));
    Quotient Q = quotient_basis(base.forms(), *N);
    Fodc f;
    f.name = name;
    f.alg = base.alg;
    f.finite_forms = Q.representatives;
    auto reps = Q.representatives;
    f.window_forms = [reps](int) { return reps; };
    BilFn L = base.left, R = base.right;
    LinFn D = base.d;
    f.left = memo_bil([N, L](const Index& a, const Index& w) { return N->reduce(L(a, w)); });
    f.right = memo_bil([N, R](const Index& w, const Index& a) { return N->reduce(R(w, a)); });
    f.d = [N, D](const Index& a) { return N->reduce(D(a)); };
    f.presentation = base.presentation;
    f.hopf = base.hopf;
    f.alg_rho = base.alg_rho;
    f.alg_lambda = base.alg_lambda;
    return f;
}

// ---------------------------------------------------------------------------
// σ-twisted module calculi

struct TwistedCalculus {
    BilFn action;  // (h, ω) ↦ h·ω
    CheckReport report;
};

class WellDefinednessError : public StructureError {
public:
    WellDefinednessError(const std::string& form, const std::string& p1, const std::string& p2)
        : StructureError("action not well defined on " + form + ": presentations " + p1 + " and " + p2 +
                         " give different results"),
          first_presentation(p1), second_presentation(p2) {}
    std::string first_presentation, second_presentation;
};

/// Formats Σ c (a ⊗ b) as Σ c a d b.
inline std::string presentation_str(const Vec& pres) {
    std::string s;
    for (const auto& [p, c] : pres) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")*" + first(p).str() + " d" + second(p).str();
    }
    return s.empty() ? "0" : s;
}

/// Builds h·(b d b') = (h₁·b) d(h₂·b'), checks it is well defined, then checks
/// comp., H-lin, dsigma and the σ-twisted bimodule laws.
inline TwistedCalculus check_sigma_twisted_module_calculus(const Fodc& bc, HopfPtr Hp, const Measure& m,
                                                           const Cocycle& s, int W = kDefaultWindow) {
    const Hopf& H = *Hp;
    const Algebra& B = *bc.alg;
    const Algebra& HA = H.A();
    const bool windowed = !bc.finite() || !HA.finite();
    const int tw = windowed ? std::max(1, W / 2) : W;

    auto onPair = [Hp, m, &bc](const Index& h, const Index& a, const Index& b) {
        Vec r;
        for (const auto& t : sweedler(*Hp, h, 2)) r.axpy(t.c, bc.lmul(m(t.f[0], a), bc.dv(m(t.f[1], b))));
        return r;
    };

    // Well-definedness: every relation among presentations must be respected.
    auto Bb = B.basis(W);
    std::vector<Index> pairs;
    for (const auto& a : Bb)
        for (const auto& b : Bb) pairs.push_back(pair(a, b));
    LinFn P = [&bc](const Index& p) { return bc.lmul(Vec(first(p)), bc.d(second(p))); };
    auto rel = kernel_image(P, pairs).kernel;
    for (const auto& h : HA.basis(W))
        for (const auto& k : rel.basis()) {
            Vec img;
            for (const auto& [p, c] : k) img.axpy(c, onPair(h, first(p), second(p)));
            if (!img.is_zero()) {
                const Index lead = k.leading();
                Cyc c0 = k.coeff(lead);
                Vec p1(lead);
                Vec p2 = (Cyc(-1) / c0) * (k - c0 * Vec(lead));
                throw WellDefinednessError(bc.lmul(Vec(first(lead)), bc.d(second(lead))).str(), presentation_str(p1),
                                           presentation_str(p2));
            }
        }

    const Fodc* bcp = &bc;
    auto pres = bc.presentation;
    auto memoAct = memo_bil([Hp, m, bcp, pres](const Index& h, const Index& w) {
        Vec r;
        for (const auto& [p, c] : pres(w))
            for (const auto& t : sweedler(*Hp, h, 2))
                r.axpy(c * t.c, bcp->lmul(m(t.f[0], first(p)), bcp->dv(m(t.f[1], second(p)))));
        return r;
    });
    TwistedCalculus out;
    out.action = memoAct;
    auto act = [&](const Vec& h, const Vec& w) { return apply2(memoAct, h, w); };
    auto& r = out.report;
    r.suite = "sigma-twisted-calculus";

    Sweep comp(windowed), hlin(windowed), dsig(windowed), dsiginv(windowed), unit(windowed), twII(windowed),
        twIII(windowed);
    auto Hb = HA.basis(W), Ht = HA.basis(tw), Bt = B.basis(tw);
    auto Fb = bc.forms(W), Ft = bc.forms(tw);
    for (const auto& h : Hb) {
        for (const auto& b : Bb)
            hlin.check_lazy(bc.dv(m(h, b)) == act(Vec(h), bc.d(b)), [&] { return h.str() + ", " + b.str(); });
        for (const auto& k : Hb) {
            dsig.check_lazy(bc.dv(s.sigma(h, k)).is_zero(), [&] { return "(" + h.str() + ", " + k.str() + ")"; });
            dsiginv.check_lazy(bc.dv(s.sigma_inv(h, k)).is_zero(), [&] { return "(" + h.str() + ", " + k.str() + ")"; });
        }
    }
    for (const auto& w : Fb) unit.check_lazy(act(HA.unit, Vec(w)) == Vec(w), [&] { return w.str(); });
    for (const auto& h : Ht) {
        auto h2 = sweedler(H, h, 2);
        auto h3 = sweedler(H, h, 3);
        for (const auto& b : Bt)
            for (const auto& b2 : Bt) {
                Vec lhs = act(Vec(h), bc.lmul(Vec(b), bc.d(b2)));
                Vec rhs;
                for (const auto& t : h2) rhs.axpy(t.c, bc.lmul(m(t.f[0], b), act(Vec(t.f[1]), bc.d(b2))));
                comp.check_lazy(lhs == rhs, [&] { return h.str() + ", " + b.str() + ", " + b2.str(); });
            }
        for (const auto& w : Ft)
            for (const auto& b : Bt)
                for (const auto& b2 : Bt) {
                    Vec lhs = act(Vec(h), bc.rmul(bc.lmul(Vec(b), Vec(w)), Vec(b2)));
                    Vec rhs;
                    for (const auto& t : h3)
                        rhs.axpy(t.c, bc.rmul(bc.lmul(m(t.f[0], b), act(Vec(t.f[1]), Vec(w))), m(t.f[2], b2)));
                    twII.check_lazy(lhs == rhs, [&] { return h.str() + ", " + b.str() + ", " + w.str() + ", " + b2.str(); });
                }
        for (const auto& k : Ht) {
            auto k3 = sweedler(H, k, 3);
            for (const auto& w : Ft) {
                Vec lhs = act(Vec(h), act(Vec(k), Vec(w)));
                Vec rhs;
                for (const auto& t : h3)
                    for (const auto& u : k3) {
                        Vec inner = act(HA.mul(t.f[1], u.f[1]), Vec(w));
                        rhs.axpy(t.c * u.c, bc.rmul(bc.lmul(s.sigma(t.f[0], u.f[0]), inner), s.sigma_inv(t.f[2], u.f[2])));
                    }
                twIII.check_lazy(lhs == rhs, [&] { return h.str() + ", " + k.str() + ", " + w.str(); });
            }
        }
    }
    r.add("well-defined", windowed ? Status::window_verified : Status::pass, "",
          std::to_string(rel.dim()) + " presentation relations");
    comp.into(r, "comp.");
    hlin.into(r, "H-lin");
    dsig.into(r, "dsigma");
    dsiginv.into(r, "dsigma-inverse");
    unit.into(r, "twisted-bimodule-i");
    twII.into(r, "twisted-bimodule-ii");
    twIII.into(r, "twisted-bimodule-iii");
    return out;
}

/// Universal-calculus argument: with N the sub-bimodule of Ω¹_u(B) generated by
/// d_u of all cocycle values, every calculus with d∘σ = 0 kills b whenever d_u b ∈ N.
inline CheckReport forced_zero_calculus(AlgebraPtr Bp, HopfPtr Hp, const Cocycle& s, int W = kDefaultWindow) {
    const Algebra& B = *Bp;
    CheckReport r;
    r.suite = "forced-zero";
    const bool windowed = !B.finite() || !Hp->A().finite();
    auto du = [&B](const Vec& b) {
        Vec r;
        for (const auto& [i, c] : b) r.axpy(c, tensor(B.unit, Vec(i)) - tensor(Vec(i), B.unit));
        return r;
    };
    std::vector<Vec> gens;
    auto Hb = Hp->A().basis(W);
    for (const auto& h : Hb)
        for (const auto& k : Hb) {
            Vec g = du(s.sigma(h, k));
            if (!g.is_zero()) gens.push_back(g);
        }
    Subspace N;
    auto span = B.basis(windowed ? 2 * W : W);
    for (const auto& g : gens)
        for (const auto& a : span)
            for (const auto& b : span) {
                Vec x;
                for (const auto& [p, c] : g) x.axpy(c, tensor(B.mul(a, first(p)), B.mul(second(p), b)));
                N.insert(x);
            }
    Sweep forced(windowed);
    std::string killed;
    for (const auto& b : B.basis(W)) {
        bool in = N.contains(du(Vec(b)));
        forced.check(in, b.str());
        if (in) killed += (killed.empty() ? "" : ", ") + b.str();
    }
    forced.into(r, "forced-zero-calculus");
    r.checks.back().detail = "d vanishes on " + killed;
    return r;
}

} // namespace hopfcalc
