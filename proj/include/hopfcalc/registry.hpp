#pragma once

// Example instances and their verification suites.

#include "hopfcalc/qpb.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hopfcalc {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Instances

inline Index grp(std::int64_t i) { return idx("g", {i}); }

/// Generators of the augmentation ideal of a group algebra, or none.
inline std::vector<Vec> group_ideal(const Hopf& K, const std::string& ideal) {
    if (ideal == "zero") return {};
    if (ideal != "full") throw UsageError("ideal must be 'zero' or 'full', got '" + ideal + "'");
    std::vector<Vec> gens;
    const Vec one = K.A().unit;
    for (const auto& g : K.A().basis())
        if (Vec(g) != one) gens.push_back(Vec(g) - one);
    return gens;
}

struct RadfordInstance {
    Radford R;
    HopfPtr K;
    Measure measure;
    Cocycle cocycle;
    CrossedProduct cp;
    Fodc universal;  // universal calculus on H1
    Fodc h1_calc;    // universal calculus modulo d(a^r)
    WoronowiczData group_calc;
    CrossedFodc cf;
};

/// H(r,n,q) ≅ H1 #σ k[C_r] with measure ā^i·(a^{lr}x^m) = q^{-mi} a^{lr}x^m.
inline std::shared_ptr<RadfordInstance> radford_instance(int r, int n, int q_index, const std::string& ideal) {
    auto I = std::make_shared<RadfordInstance>();
    const Cyc q = root_of_unity(r * n, q_index);
    I->R = build_radford(r, n, q);
    I->K = build_cyclic_group_algebra(r);
    auto qp = std::make_shared<RootPowers>(q);
    I->measure = [qp](const Index& g, const Index& b) { return Vec(b, (*qp)(-b.num(1) * g.num(0))); };
    BilFn s = [r](const Index& g, const Index& h) {
        return g.num(0) + h.num(0) <= r - 1 ? Vec(ax(0, 0)) : Vec(ax(r, 0));
    };
    I->cocycle = Cocycle{s, cocycle_inverse(s, *I->K, *I->R.H1)};
    I->cp = build_crossed_product(I->R.H1, I->K, I->measure, I->cocycle);
    I->universal = universal_fodc(I->R.H1);
    I->h1_calc = quotient_fodc(I->universal, {I->universal.d(ax(r, 0))}, "H1calc");
    I->group_calc = woronowicz_from_ideal(I->K, group_ideal(*I->K, ideal));
    I->cf = build_crossed_fodc(I->cp, I->h1_calc, I->group_calc.fodc);
    return I;
}

/// Degree-≤2 forms on H1#σk[C_r] from the truncated calculi on both factors.
inline HigherForms radford_higher_forms(const RadfordInstance& I) {
    auto tr = truncate_dc_degree2(I.group_calc.fodc, true);
    if (!tr.dc) throw StructureError("group calculus does not truncate: " + tr.witness);
    auto bdc = truncated_dc(I.h1_calc, I.cf.b_action, I.cp.measure);
    return build_higher_forms(I.cp, bdc, *tr.dc);
}

/// Two-dimensional comodule v_i ↦ v_i⊗g_i (indices mod r).
inline ComoduleSpec radford_test_comodule(int r) {
    std::vector<Index> basis{idx("v", {0}), idx("v", {1})};
    return ComoduleSpec{basis, [r](const Index& v) { return Vec(pair(v, grp(v.num(0) % r))); }};
}

struct TorusInstance {
    Torus T;
    Cyc q;
    CleftData cleft;
    CleftResult crossed;
    Fodc h_calc;  // t^n dt calculus
    CrossedFodc cf;
};

/// j(t^k) = u^k and j(t^{-k}) = v^k for k ≥ 0.
inline LinFn torus_cleaving_map() {
    return [](const Index& t) {
        const auto k = t.num(0);
        return k >= 0 ? Vec(uv(k, 0)) : Vec(uv(0, -k));
    };
}

inline std::shared_ptr<TorusInstance> torus_instance(int M, int theta_index, int q_index, int W) {
    auto I = std::make_shared<TorusInstance>();
    I->T = build_torus_comodule(root_of_unity(M, theta_index));
    I->q = root_of_unity(M, q_index);
    if (I->q.is_one()) throw UsageError("q-index must not give q = 1");
    CleftData& cd = I->cleft;
    cd.total = I->T.A;
    cd.coinv = I->T.B;
    cd.j = torus_cleaving_map();
    cd.inverse_support = [](const Index& t) {
        const int k = static_cast<int>(std::abs(t.num(0))) + 1;
        std::vector<Index> b;
        for (int i = -k; i <= k; ++i)
            for (int j = -k; j <= k; ++j) b.push_back(uv(i, j));
        return b;
    };
    I->crossed = cleft_to_crossed(cd, W);
    I->h_calc = build_laurent_q_calculus(I->q, I->T.H);
    I->cf = build_crossed_fodc(I->crossed.cp, zero_fodc(I->T.B.base), I->h_calc, W);
    return I;
}

inline HigherForms torus_higher_forms(const TorusInstance& I, int W) {
    auto tr = truncate_dc_degree2(I.h_calc, true, W);
    if (!tr.dc) throw StructureError("t calculus does not truncate: " + tr.witness);
    const auto& cp = I.crossed.cp;
    auto bdc = truncated_dc(I.cf.b_calc, I.cf.b_action, cp.measure);
    return build_higher_forms(cp, bdc, *tr.dc, W);
}

struct SmashInstance {
    Cyc zeta, q;
    AlgebraPtr B;
    HopfPtr H;
    CrossedProduct cp;
    Fodc b_calc, h_calc;
    CrossedFodc cf;
};

/// k[s^±1] # k[t^±1] with t^k·s^l = ζ^{kl} s^l and q-calculi on both factors.
inline std::shared_ptr<SmashInstance> smash_instance(int M, int theta_index, int q_index, int W) {
    auto I = std::make_shared<SmashInstance>();
    I->zeta = root_of_unity(M, theta_index);
    I->q = root_of_unity(M, q_index);
    if (I->q.is_one()) throw UsageError("q-index must not give q = 1");
    I->B = build_laurent_algebra("s");
    I->H = build_laurent_hopf("t");
    auto zp = std::make_shared<RootPowers>(I->zeta);
    Measure m = [zp](const Index& t, const Index& s) { return Vec(s, (*zp)(t.num(0) * s.num(0))); };
    I->cp = build_crossed_product(I->B, I->H, m, trivial_cocycle(*I->H, *I->B), W);
    I->b_calc = laurent_q_calculus(I->q, "s");
    I->h_calc = build_laurent_q_calculus(I->q, I->H);
    I->cf = build_crossed_fodc(I->cp, I->b_calc, I->h_calc, W);
    return I;
}

// ---------------------------------------------------------------------------
// Parameters

struct ParamSpec {
    std::string name;
    std::string def;
    std::string help;
    std::vector<std::string> choices;  // empty for integers and paths
    bool integer = true;
};

inline ParamSpec integer_param(std::string name, std::string def, std::string help) {
    return ParamSpec{std::move(name), std::move(def), std::move(help), {}, true};
}

using Params = std::map<std::string, std::string>;

struct RunOptions {
    int window = kDefaultWindow;
    std::uint64_t seed = 7;
    std::string suite;  // empty means all
};

inline int int_param(const Params& p, const std::string& name) {
    const std::string& s = p.at(name);
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw UsageError("--" + name + " expects an integer, got '" + s + "'");
    }
}

inline int positive_param(const Params& p, const std::string& name) {
    int v = int_param(p, name);
    if (v < 1) throw UsageError("--" + name + " must be positive");
    return v;
}

// ---------------------------------------------------------------------------
// Suites

using SuiteFn = std::function<CheckReport()>;

struct SuiteTable {
    std::vector<std::pair<std::string, SuiteFn>> suites;
    void add(std::string name, SuiteFn f) { suites.emplace_back(std::move(name), std::move(f)); }
};

/// Runs the selected suites; a construction error becomes a failing entry of that suite.
inline std::vector<CheckReport> run_suites(const SuiteTable& t, const std::string& only) {
    std::vector<CheckReport> out;
    for (const auto& [name, fn] : t.suites) {
        if (!only.empty() && only != name) continue;
        CheckReport r;
        try {
            r = fn();
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception& e) {
            r = CheckReport{};
            r.add("construction", Status::fail, "", e.what());
        }
        r.suite = name;
        out.push_back(std::move(r));
    }
    return out;
}

/// Entry whose status is the conjunction of a report, named after its first failure.
inline void summarize_into(CheckReport& r, const std::string& name, const CheckReport& sub) {
    bool windowed = false;
    for (const auto& c : sub.checks) windowed = windowed || c.status == Status::window_verified;
    r.record(name, sub.ok(), windowed, first_failure(sub), std::to_string(sub.checks.size()) + " checks");
}

template <class T>
class Lazy {
public:
    explicit Lazy(std::function<T()> make) : make_(std::move(make)) {}
    const T& get() const {
        if (!value_) value_ = make_();
        return *value_;
    }

private:
    std::function<T()> make_;
    mutable std::optional<T> value_;
};

inline void add_necessity(CheckReport& r, const NecessityResult& nec, const std::string& expected) {
    if (const auto* e = nec.report.find("leibniz-defect-formula")) r.checks.push_back(*e);
    std::string all;
    bool found = false;
    for (const auto& w : nec.witnesses) {
        all += (all.empty() ? "" : " ") + w;
        found = found || w == expected;
    }
    r.add("leibniz-failure-witness", found ? Status::pass : Status::fail, nec.witnesses.empty() ? "" : expected,
          all.empty() ? "no witness" : all);
}

inline void add_cohomology(CheckReport& r, const Cohomology& c) {
    std::string dims, forms;
    for (std::size_t k = 0; k < c.dims.size(); ++k) {
        dims += (k ? " " : "") + std::string("H") + std::to_string(k) + "=" + std::to_string(c.dims[k]);
        forms += (k ? " " : "") + std::to_string(c.form_dims[k]);
    }
    r.add("de-rham-dims", c.windowed ? Status::window_verified : Status::pass, "", dims + "; form dims " + forms);
}

// Radford ------------------------------------------------------------------

/// Pointed decomposition recomputed inside H: conjugation measure, coset cocycle and f(a g_i) = a⊗ḡ_i.
inline CheckReport radford_pointed_checks(const RadfordInstance& I) {
    CheckReport r;
    const Radford& R = I.R;
    const int r0 = R.r, M = R.M, n = R.n;
    const Algebra& H = R.H->A();
    const CrossedProduct& cp = I.cp;
    RootPowers qp(R.q);

    Sweep meas(false);
    for (int i = 0; i < r0; ++i)
        for (const auto& chi : R.H1->basis()) {
            Vec conj = H.mul(H.mul(Vec(ax(i, 0)), Vec(chi)), Vec(ax((M - i) % M, 0)));
            meas.check(conj == cp.act(Vec(grp(i)), Vec(chi)), "(" + grp(i).str() + ", " + chi.str() + ")");
        }
    meas.into(r, "measure-is-conjugation");

    Sweep coc(false);
    for (int l = 0; l < r0; ++l)
        for (int k = 0; k < r0; ++k) {
            const int rep = (l + k) % r0;
            Vec nlk = H.mul(Vec(ax(l + k, 0)), Vec(ax((M - rep) % M, 0)));
            coc.check(nlk == cp.sigma(Vec(grp(l)), Vec(grp(k))), "(" + grp(l).str() + ", " + grp(k).str() + ")");
        }
    coc.into(r, "cocycle-from-cosets");

    // a^l x^m = q^{-mi} (a^{l-i} x^m) a^i with i = l mod r.
    LinFn f = [r0, &qp](const Index& h) {
        const auto l = h.num(0), m = h.num(1), i = l % r0;
        return Vec(pair(ax(l - i, m), grp(i)), qp(-m * i));
    };
    Sweep mult(false), colin(false);
    const auto basis = H.basis();
    for (const auto& x : basis)
        for (const auto& y : basis)
            mult.check(hopfcalc::apply(f, H.mul(Vec(x), Vec(y))) == cp.A().mul(f(x), f(y)),
                       "(" + x.str() + ", " + y.str() + ")");
    mult.into(r, "isomorphism-multiplicative");
    for (const auto& x : basis) {
        Vec lhs;
        for (const auto& [p, c] : R.H->comul(x))
            if (second(p).num(1) == 0)
                for (const auto& [y, e] : f(first(p))) lhs.add(pair(y, grp(second(p).num(0) % r0)), c * e);
        colin.check(lhs == hopfcalc::apply(cp.comodule->coaction, f(x)), x.str());
    }
    colin.into(r, "isomorphism-colinear");
    auto ki = kernel_image(f, basis);
    r.record("isomorphism-bijective", ki.kernel.dim() == 0 && ki.image.dim() == cp.A().basis().size(), false, "",
             "rank " + std::to_string(ki.image.dim()) + " of " + std::to_string(static_cast<long>(M) * n));
    return r;
}

struct RadfordArgs {
    int r, n, q_index;
    std::string ideal;
};

inline RadfordArgs radford_args(const Params& p) {
    RadfordArgs a{positive_param(p, "r"), positive_param(p, "n"), int_param(p, "q-index"), p.at("ideal")};
    const int M = a.r * a.n;
    if (a.r < 2) throw UsageError("radford needs r ≥ 2 for a nontrivial cocycle");
    if (std::gcd(((a.q_index % M) + M) % M, M) != 1)
        throw UsageError("--q-index must be coprime to r·n so that q is primitive");
    return a;
}

inline SuiteTable radford_suites(const Params& p, const RunOptions& o) {
    const RadfordArgs a = radford_args(p);
    const int r = a.r, n = a.n, qi = a.q_index;
    const std::string ideal = a.ideal;
    auto inst = std::make_shared<Lazy<std::shared_ptr<RadfordInstance>>>(
        [=] { return radford_instance(r, n, qi, ideal); });
    auto higher = std::make_shared<Lazy<HigherForms>>([inst] { return radford_higher_forms(*inst->get()); });
    auto vd = std::make_shared<Lazy<VerticalData>>([inst] { return vertical_map(inst->get()->cf); });
    (void)o;

    SuiteTable t;
    t.add("hopf", [inst] {
        const auto& I = *inst->get();
        CheckReport r;
        r.merge(check_hopf_axioms(*I.R.H), "H/");
        r.merge(check_hopf_axioms(*I.K), "kC/");
        return r;
    });
    t.add("pointed", [inst] { return radford_pointed_checks(*inst->get()); });
    t.add("crossed", [inst] {
        const auto& I = *inst->get();
        CheckReport r;
        r.merge(check_twisted_module_algebra(*I.R.H1, *I.K, I.measure, I.cocycle), "twisted/");
        r.merge(check_comodule_algebra(*I.cp.comodule), "comodule/");
        auto B = finite_coinvariants(*I.cp.comodule);
        r.merge(check_hopf_galois(*I.cp.comodule, B), "galois/");
        return r;
    });
    t.add("calculus", [inst] {
        const auto& I = *inst->get();
        CheckReport r;
        r.merge(check_fodc(I.h1_calc), "H1/");
        r.merge(check_fodc(I.group_calc.fodc), "kC/");
        r.merge(I.cf.twisted_report, "twisted/");
        r.merge(verify_crossed_fodc(I.cf), "crossed/");
        return r;
    });
    t.add("necessity", [inst] {
        const auto& I = *inst->get();
        CheckReport r;
        add_necessity(r, necessity_dsigma(I.cp, I.universal, I.group_calc.fodc), "(" + grp(1).str() + ", " + grp(I.R.r - 1).str() + ")");
        return r;
    });
    t.add("higher", [inst, higher] {
        const auto& I = *inst->get();
        const auto& hf = higher->get();
        CheckReport r;
        r.merge(hf.hypotheses, "hypotheses/");
        r.merge(check_graded_dc(hf.dc, 2), "graded/");
        r.merge(compare_first_order(hf.dc, I.cf), "first-order/");
        add_cohomology(r, de_rham_cohomology(hf.dc, 2));
        return r;
    });
    t.add("qpb", [inst, higher, vd, r] {
        const auto& I = *inst->get();
        const auto& v = vd->get();
        CheckReport rep;
        rep.merge(v.co.report, "coinvariant/");
        rep.merge(v.report, "vertical/");
        std::optional<HigherForms> hf;
        try {
            hf = higher->get();
        } catch (const StructureError&) {
        }
        rep.merge(check_atiyah_exact(v, hf ? &*hf : nullptr, hf ? 2 : 1), "atiyah/");
        auto conn = canonical_connection(v);
        rep.merge(conn.report, "connection/");
        rep.merge(covariant_derivative(v, radford_test_comodule(r)).report, "associated/");
        auto ts = tangent_and_fields(v);
        rep.merge(ts.report, "tangent/");
        auto bj = connection_form_bijection(v, ts, conn.c);
        rep.merge(bj.report, "bijection-canonical/");
        // A second connection form: shift each coefficient by a horizontal coinvariant term.
        ConnectionForm phi = bj.phi;
        Vec shift;
        for (const auto& b : I.R.H1->basis())
            if (shift.is_zero()) shift = I.h1_calc.d(b);
        for (auto& [x, form] : phi.coeffs) form += horv(shift, I.K->A().unit);
        rep.merge(connection_form_bijection(v, ts, phi).report, "bijection-shifted/");
        return rep;
    });
    return t;
}

inline Cohomology radford_cohomology(const Params& p, int max_degree, int) {
    const auto a = radford_args(p);
    auto I = radford_instance(a.r, a.n, a.q_index, a.ideal);
    return de_rham_cohomology(radford_higher_forms(*I).dc, max_degree);
}

// Torus ----------------------------------------------------------------------

/// σ on the torus in the basis w^k = (uv)^k of the coinvariants, from the closed forms.
inline Vec torus_sigma_closed(const Torus& T, std::int64_t a, std::int64_t b) {
    const RootPowers& z = *T.zp;
    auto uvs = [&](std::int64_t s, const Cyc& c) { return Vec(wpow(s), c * z(-tri(s))); };
    if ((a >= 0 && b >= 0) || (a <= 0 && b <= 0)) return Vec(wpow(0));
    if (a > 0) {  // t^k ⊗ t^{-s}
        const auto k = a, s = -b;
        return s <= k ? uvs(s, z(-s * (k - s))) : uvs(k, Cyc(1));
    }
    const auto k = -a, s = b;  // t^{-k} ⊗ t^s
    return k <= s ? uvs(k, z(k * k)) : uvs(s, z(s * k));
}

inline CheckReport torus_closed_forms(const TorusInstance& I, int W) {
    CheckReport r;
    const Torus& T = I.T;
    const auto& cp = I.crossed.cp;
    const RootPowers& z = *T.zp;
    Sweep meas(true), jinv(true);
    for (int k = -W; k <= W; ++k) {
        for (int l = -W; l <= W; ++l)
            meas.check(cp.act(Vec(tpow(k)), Vec(wpow(l))) == Vec(wpow(l), z(-k * l)),
                       "(" + tpow(k).str() + ", " + wpow(l).str() + ")");
        Vec expected = k >= 0 ? Vec(uv(-k, 0)) : Vec(uv(0, k));
        jinv.check(I.crossed.j_inv(tpow(k)) == expected, tpow(k).str());
    }
    meas.into(r, "measure-closed-form");
    jinv.into(r, "cleaving-inverse-closed-form");
    const char* names[4] = {"sigma-positive-positive", "sigma-negative-negative", "sigma-positive-negative",
                            "sigma-negative-positive"};
    Sweep branch[4] = {Sweep(true), Sweep(true), Sweep(true), Sweep(true)};
    for (int k = 0; k <= W; ++k)
        for (int s = 0; s <= W; ++s) {
            const std::int64_t a[4] = {k, -k, k, -k}, b[4] = {s, -s, -s, s};
            for (int i = 0; i < 4; ++i)
                branch[i].check(cp.sigma(Vec(tpow(a[i])), Vec(tpow(b[i]))) == torus_sigma_closed(T, a[i], b[i]),
                                "(" + tpow(a[i]).str() + ", " + tpow(b[i]).str() + ")");
        }
    for (int i = 0; i < 4; ++i) branch[i].into(r, names[i]);

    // (uv)^l⊗t^k acting on (uv)^m⊗t^n dt.
    Sweep act(true);
    const int w = std::max(1, W / 2);
    const Fodc& f = I.cf.fodc;
    for (int l = -w; l <= w; ++l)
        for (int k = -w; k <= w; ++k)
            for (int m = -w; m <= w; ++m)
                for (int n = -w; n <= w; ++n) {
                    Vec lhs = f.lmul(Vec(pair(wpow(l), tpow(k))), Vec(ver(wpow(m), tdt("t", n))));
                    Vec rhs;
                    for (const auto& [s, c] : torus_sigma_closed(T, k, n + 1))
                        rhs.add(ver(wpow(l + m + s.num(0)), tdt("t", k + n)), c * z(-k * m));
                    act.check(lhs == rhs, "(" + std::to_string(l) + "," + std::to_string(k) + "," + std::to_string(m) +
                                              "," + std::to_string(n) + ")");
                }
    act.into(r, "left-action-closed-form");
    return r;
}

inline SuiteTable torus_suites(const Params& p, const RunOptions& o) {
    const int M = positive_param(p, "M"), ti = int_param(p, "theta-index"), qi = int_param(p, "q-index");
    const int W = o.window;
    if (W < 1) throw UsageError("--window must be positive");
    auto inst = std::make_shared<Lazy<std::shared_ptr<TorusInstance>>>([=] { return torus_instance(M, ti, qi, W); });
    const int Wq = std::min(W, 3), Wh = std::min(W, 2);
    auto higher = std::make_shared<Lazy<HigherForms>>([inst, Wh] { return torus_higher_forms(*inst->get(), Wh); });
    SuiteTable t;
    t.add("hopf", [inst, W] {
        const auto& I = *inst->get();
        CheckReport r;
        r.merge(check_hopf_axioms(*I.T.H, W), "H/");
        r.merge(check_comodule_algebra(*I.T.A, W), "comodule/");
        return r;
    });
    t.add("cleft", [inst, W] {
        const auto& I = *inst->get();
        CheckReport r;
        r.merge(I.crossed.report, "cleft/");
        r.merge(torus_closed_forms(I, W), "closed-form/");
        return r;
    });
    t.add("calculus", [inst, W] {
        const auto& I = *inst->get();
        CheckReport r;
        r.merge(check_fodc(I.h_calc, W), "H/");
        r.merge(I.cf.twisted_report, "twisted/");
        r.merge(verify_crossed_fodc(I.cf, W), "crossed/");
        return r;
    });
    t.add("forced-zero", [inst, W] {
        const auto& I = *inst->get();
        return forced_zero_calculus(I.T.B.base, I.T.H, I.crossed.cp.cocycle, W);
    });
    t.add("necessity", [inst, Wh] {
        const auto& I = *inst->get();
        CheckReport r;
        auto wc = laurent_q_calculus(I.q, "w");
        add_necessity(r, necessity_dsigma(I.crossed.cp, wc, I.h_calc, Wh), "(" + tpow(1).str() + ", " + tpow(-1).str() + ")");
        return r;
    });
    t.add("classification", [inst] {
        const auto& I = *inst->get();
        CheckReport r;
        std::string msg;
        try {
            classify_smash(I.cf.fodc, I.h_calc, I.cleft, 2);
        } catch (const StructureError& e) {
            msg = e.what();
        }
        const bool refused = msg.rfind("not a trivial extension", 0) == 0;
        r.add("refuses-nontrivial-extension", refused ? Status::pass : Status::fail, "", msg.empty() ? "accepted" : msg);
        return r;
    });
    t.add("higher", [inst, higher, Wh] {
        const auto& hf = higher->get();
        CheckReport r;
        r.merge(hf.hypotheses, "hypotheses/");
        r.merge(check_graded_dc(hf.dc, 2, Wh), "graded/");
        r.merge(compare_first_order(hf.dc, inst->get()->cf, Wh), "first-order/");
        return r;
    });
    t.add("qpb", [inst, higher, Wq] {
        auto v = vertical_map(inst->get()->cf, Wq);
        CheckReport r;
        r.merge(v.co.report, "coinvariant/");
        r.merge(v.report, "vertical/");
        r.merge(check_atiyah_exact(v, &higher->get(), 2, Wq), "atiyah/");
        r.merge(canonical_connection(v, Wq).report, "connection/");
        ComoduleSpec V{{idx("v", {0})}, [](const Index& x) { return Vec(pair(x, tpow(0))); }};
        auto family = [](int w) {
            std::vector<Vec> e;
            for (int k = -w; k <= w; ++k) e.push_back(Vec(pair(pair(wpow(k), tpow(0)), idx("v", {0}))));
            return e;
        };
        r.merge(covariant_derivative(v, V, std::min(Wq, 2), family).report, "associated/");
        return r;
    });
    return t;
}

inline Cohomology torus_cohomology(const Params& p, int max_degree, int W) {
    auto I = torus_instance(positive_param(p, "M"), int_param(p, "theta-index"), int_param(p, "q-index"), W);
    return de_rham_cohomology(torus_higher_forms(*I, W).dc, max_degree, W);
}

// Group algebra C2 ---------------------------------------------------------------

struct GroupInstance {
    HopfPtr K;
    WoronowiczData calc;
    Truncation truncation;
};

inline std::shared_ptr<GroupInstance> group_instance(int order, const std::string& ideal) {
    auto I = std::make_shared<GroupInstance>();
    I->K = build_cyclic_group_algebra(order);
    I->calc = woronowicz_from_ideal(I->K, group_ideal(*I->K, ideal));
    I->truncation = truncate_dc_degree2(I->calc.fodc, true);
    return I;
}

inline SuiteTable group_suites(const Params& p, const RunOptions&) {
    const std::string ideal = p.at("ideal");
    if (ideal != "zero" && ideal != "full") throw UsageError("--ideal must be 'zero' or 'full'");
    auto inst = std::make_shared<Lazy<std::shared_ptr<GroupInstance>>>([ideal] { return group_instance(2, ideal); });
    SuiteTable t;
    t.add("hopf", [inst] { return check_hopf_axioms(*inst->get()->K); });
    t.add("calculus", [inst] {
        const auto& I = *inst->get();
        CheckReport r = check_fodc(I.calc.fodc);
        r.record("bicovariant", I.calc.bicovariant, false, I.calc.ad_witness);
        return r;
    });
    t.add("higher", [inst] {
        const auto& I = *inst->get();
        CheckReport r;
        r.merge(I.truncation.report, "truncation/");
        if (!I.truncation.dc) throw StructureError("calculus does not truncate: " + I.truncation.witness);
        r.merge(check_graded_dc(*I.truncation.dc, 2), "graded/");
        add_cohomology(r, de_rham_cohomology(*I.truncation.dc, 2));
        return r;
    });
    return t;
}

inline Cohomology group_cohomology(const Params& p, int max_degree, int) {
    auto I = group_instance(2, p.at("ideal"));
    if (!I->truncation.dc) throw StructureError("calculus does not truncate: " + I->truncation.witness);
    return de_rham_cohomology(*I->truncation.dc, max_degree);
}

// Smash demo -----------------------------------------------------------------

inline SuiteTable smash_suites(const Params& p, const RunOptions& o) {
    const int M = positive_param(p, "M"), ti = int_param(p, "theta-index"), qi = int_param(p, "q-index");
    const int W = o.window;
    if (W < 1) throw UsageError("--window must be positive");
    const std::uint64_t seed = o.seed;
    auto inst = std::make_shared<Lazy<std::shared_ptr<SmashInstance>>>([=] { return smash_instance(M, ti, qi, W); });
    SuiteTable t;
    t.add("hopf", [inst, W] { return check_hopf_axioms(*inst->get()->H, W); });
    t.add("crossed", [inst, W] {
        const auto& I = *inst->get();
        CheckReport r;
        r.merge(check_twisted_module_algebra(*I.B, *I.H, I.cp.measure, I.cp.cocycle, W), "twisted/");
        r.merge(check_comodule_algebra(*I.cp.comodule, std::max(1, W / 2)), "comodule/");
        return r;
    });
    t.add("calculus", [inst, W] {
        const auto& I = *inst->get();
        CheckReport r;
        r.merge(check_fodc(I.b_calc, W), "B/");
        r.merge(check_fodc(I.h_calc, W), "H/");
        r.merge(I.cf.twisted_report, "twisted/");
        r.merge(verify_crossed_fodc(I.cf, W), "crossed/");
        return r;
    });
    t.add("classification", [inst, seed] {
        const auto& I = *inst->get();
        return classify_smash(I.cf.fodc, I.h_calc, canonical_cleft(I.cp), 2, seed).report;
    });
    t.add("qpb", [inst, W] {
        const int Wq = std::min(W, 2);
        auto v = vertical_map(inst->get()->cf, Wq);
        CheckReport r;
        r.merge(v.co.report, "coinvariant/");
        r.merge(v.report, "vertical/");
        r.merge(check_atiyah_exact(v, nullptr, 1, Wq), "atiyah/");
        r.merge(canonical_connection(v, Wq).report, "connection/");
        return r;
    });
    return t;
}

// Hopf data from a file ----------------------------------------------------------

inline ParsedHopf load_hopf_file(const Params& p) {
    const std::string& path = p.at("file");
    if (path.empty()) throw UsageError("hopf-file needs --file <path>");
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    return parse_hopf_text(in);
}

inline SuiteTable file_suites(const Params& p, const RunOptions&) {
    auto parsed = std::make_shared<ParsedHopf>(load_hopf_file(p));
    auto calc = std::make_shared<Lazy<WoronowiczData>>(
        [parsed] { return woronowicz_from_ideal(parsed->hopf, parsed->ideal_generators); });
    SuiteTable t;
    t.add("hopf", [parsed] { return check_hopf_axioms(*parsed->hopf); });
    t.add("calculus", [calc] {
        const auto& wd = calc->get();
        CheckReport r = check_fodc(wd.fodc);
        r.record("bicovariant", wd.bicovariant, false, wd.ad_witness);
        return r;
    });
    t.add("higher", [calc] {
        const auto& wd = calc->get();
        CheckReport r;
        if (!wd.bicovariant) throw StructureError("higher forms need a bicovariant calculus");
        auto tr = truncate_dc_degree2(wd.fodc, true);
        r.merge(tr.report, "truncation/");
        if (!tr.dc) return r;
        r.merge(check_graded_dc(*tr.dc, 2), "graded/");
        add_cohomology(r, de_rham_cohomology(*tr.dc, 2));
        return r;
    });
    return t;
}

inline Cohomology file_cohomology(const Params& p, int max_degree, int) {
    auto parsed = load_hopf_file(p);
    auto wd = woronowicz_from_ideal(parsed.hopf, parsed.ideal_generators);
    auto tr = truncate_dc_degree2(wd.fodc, wd.bicovariant);
    if (!tr.dc) throw StructureError("calculus does not truncate: " + tr.witness);
    return de_rham_cohomology(*tr.dc, max_degree);
}

// ---------------------------------------------------------------------------
// Registry

struct ExampleSpec {
    std::string name;
    std::string summary;
    std::vector<ParamSpec> params;
    std::vector<std::string> suites;
    std::function<SuiteTable(const Params&, const RunOptions&)> build;
    std::function<Cohomology(const Params&, int, int)> cohomology;
};

inline const std::vector<ExampleSpec>& registry() {
    static const std::vector<ExampleSpec> reg = [] {
        std::vector<ExampleSpec> v;
        v.push_back({"radford",
                     "H(r,n,q) as H1 #σ k[C_r] with the universal calculus on H1 modulo d(a^r)",
                     {integer_param("r", "2", "order of the coset group C_r"),
                      integer_param("n", "2", "nilpotency order of x"),
                      integer_param("q-index", "1", "q = exp(2πi·q-index/(rn)), must be primitive"),
                      {"ideal", "zero", "right ideal of k[C_r]^+ for the Woronowicz calculus", {"zero", "full"}, false}},
                     {"hopf", "pointed", "crossed", "calculus", "necessity", "higher", "qpb"},
                     radford_suites,
                     radford_cohomology});
        v.push_back({"torus",
                     "noncommutative torus as a cleft k[t,t^-1]-extension of span{(uv)^k}",
                     {integer_param("M", "8", "denominator of θ/2π"),
                      integer_param("theta-index", "1", "e^{iθ} = exp(2πi·theta-index/M)"),
                      integer_param("q-index", "3", "q = exp(2πi·q-index/M) for the t calculus, q ≠ 1")},
                     {"hopf", "cleft", "calculus", "forced-zero", "necessity", "classification", "higher", "qpb"},
                     torus_suites,
                     torus_cohomology});
        v.push_back({"group-c2",
                     "Woronowicz calculus on k[C2] and its truncated differential graded algebra",
                     {{"ideal", "zero", "right ideal of k[C2]^+", {"zero", "full"}, false}},
                     {"hopf", "calculus", "higher"},
                     group_suites,
                     group_cohomology});
        v.push_back({"smash-demo",
                     "k[s,s^-1] # k[t,t^-1] with q-calculi, the classification test case",
                     {integer_param("M", "8", "order of the roots of unity"),
                      integer_param("theta-index", "1", "t·s = exp(2πi·theta-index/M) s"),
                      integer_param("q-index", "3", "q = exp(2πi·q-index/M) for both calculi, q ≠ 1")},
                     {"hopf", "crossed", "calculus", "classification", "qpb"},
                     smash_suites,
                     {}});
        v.push_back({"hopf-file",
                     "finite-dimensional Hopf algebra from a structure-constant file",
                     {{"file", "", "path to the structure-constant file", {}, false}},
                     {"hopf", "calculus", "higher"},
                     file_suites,
                     file_cohomology});
        return v;
    }();
    return reg;
}

inline const ExampleSpec* find_example(const std::string& name) {
    for (const auto& e : registry())
        if (e.name == name) return &e;
    return nullptr;
}

/// Fills defaults and rejects parameters the example does not declare.
inline Params resolve_params(const ExampleSpec& ex, const Params& given) {
    Params out;
    for (const auto& ps : ex.params) out[ps.name] = ps.def;
    for (const auto& [k, v] : given) {
        auto it = std::find_if(ex.params.begin(), ex.params.end(), [&](const ParamSpec& s) { return s.name == k; });
        if (it == ex.params.end()) throw UsageError("example '" + ex.name + "' has no parameter --" + k);
        if (!it->choices.empty() && std::find(it->choices.begin(), it->choices.end(), v) == it->choices.end())
            throw UsageError("--" + k + " must be one of the listed choices, got '" + v + "'");
        out[k] = v;
    }
    for (const auto& ps : ex.params)
        if (ps.integer) int_param(out, ps.name);
    return out;
}

inline std::vector<CheckReport> verify_example(const ExampleSpec& ex, const Params& given, const RunOptions& o) {
    Params p = resolve_params(ex, given);
    if (!o.suite.empty() && std::find(ex.suites.begin(), ex.suites.end(), o.suite) == ex.suites.end())
        throw UsageError("example '" + ex.name + "' has no suite '" + o.suite + "'");
    return run_suites(ex.build(p, o), o.suite);
}

} // namespace hopfcalc
