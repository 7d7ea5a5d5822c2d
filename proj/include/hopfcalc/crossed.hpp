#pragma once

// Measures, 2-cocycles, crossed product algebras, the cleft-extension
// correspondence and the Hopf-Galois canonical map.

#include "hopfcalc/hopf.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hopfcalc {

using Measure = BilFn;  // (h, b) ↦ h·b in B

struct Cocycle {
    BilFn sigma;      // (h, h') ↦ σ(h⊗h') in B
    BilFn sigma_inv;  // (h, h') ↦ σ⁻¹(h⊗h') in B
};

/// σ = ε⊗ε.
inline Cocycle trivial_cocycle(const Hopf& H, const Algebra& B) {
    auto counit = H.counit;
    Vec one = B.unit;
    BilFn s = [counit, one](const Index& h, const Index& k) { return (counit(h) * counit(k)) * one; };
    return {s, s};
}

/// Extends a measure or cocycle bilinearly to vectors.
inline Vec eval2(const BilFn& f, const Vec& x, const Vec& y) { return apply2(f, x, y); }

/// σ⁻¹ as the convolution inverse of σ on H⊗H, for finite H and B.
inline BilFn cocycle_inverse(const BilFn& sigma, const Hopf& H, const Algebra& B) {
    if (!H.A().finite() || !B.finite()) throw StructureError("cocycle_inverse needs finite-dimensional H and B");
    std::vector<Index> pairs;
    for (const auto& h : H.A().basis())
        for (const auto& k : H.A().basis()) pairs.push_back(pair(h, k));
    LinFn s = [sigma](const Index& p) { return sigma(first(p), second(p)); };
    Coalgebra C = tensor_coalgebra(H.coalgebra(), H.coalgebra());
    auto res = convolution_inverse(s, C, pairs, B, B.basis());
    if (!res.ok) throw StructureError("cocycle is not convolution invertible at " + res.witness);
    LinFn inv = res.as_map();
    return [inv](const Index& h, const Index& k) { return inv(pair(h, k)); };
}

struct TwistedWindow {
    int pairs = kDefaultWindow;
    int triples = 2;
};

inline TwistedWindow twisted_window(int W) { return {W, std::max(1, W / 2)}; }

/// Measure axioms, twisted module condition, cocycle condition, normalization and σ⁻¹.
inline CheckReport check_twisted_module_algebra(const Algebra& B, const Hopf& H, const Measure& m, const Cocycle& s,
                                                int W = kDefaultWindow) {
    CheckReport r;
    r.suite = "twisted-module-algebra";
    const Algebra& HA = H.A();
    const bool windowed = !B.finite() || !HA.finite();
    auto tw = twisted_window(W);
    auto Hb = HA.basis(W), Bb = B.basis(W);
    auto Ht = HA.basis(windowed ? tw.triples : W), Bt = B.basis(windowed ? tw.triples : W);
    Vec oneB = B.unit, oneH = HA.unit;

    Sweep unitM(windowed), prodM(windowed), unitH(windowed), twisted(windowed), cocyc(windowed), norm(windowed),
        conv(windowed);
    for (const auto& h : Hb) {
        unitM.check_lazy(eval2(m, Vec(h), oneB) == H.counit(h) * oneB, [&] { return h.str(); });
        for (const auto& k : Hb) {
            Vec lhs, rhs;
            for (const auto& t : sweedler(H, h, 2))
                for (const auto& u : sweedler(H, k, 2)) {
                    Cyc c = t.c * u.c;
                    lhs.axpy(c, B.mul(s.sigma(t.f[0], u.f[0]), s.sigma_inv(t.f[1], u.f[1])));
                    rhs.axpy(c, B.mul(s.sigma_inv(t.f[0], u.f[0]), s.sigma(t.f[1], u.f[1])));
                }
            Vec e = (H.counit(h) * H.counit(k)) * oneB;
            conv.check_lazy(lhs == e && rhs == e, [&] { return h.str() + ", " + k.str(); });
        }
        norm.check_lazy(eval2(s.sigma, Vec(h), oneH) == H.counit(h) * oneB &&
                            eval2(s.sigma, oneH, Vec(h)) == H.counit(h) * oneB,
                        [&] { return h.str(); });
    }
    for (const auto& b : Bb) unitH.check_lazy(eval2(m, oneH, Vec(b)) == Vec(b), [&] { return b.str(); });

    for (const auto& h : Ht) {
        auto h2 = sweedler(H, h, 2);
        auto h3 = sweedler(H, h, 3);
        for (const auto& b : Bt)
            for (const auto& c : Bt) {
                Vec lhs = eval2(m, Vec(h), B.mul(b, c));
                Vec rhs;
                for (const auto& t : h2) rhs.axpy(t.c, B.mul(m(t.f[0], b), m(t.f[1], c)));
                prodM.check_lazy(lhs == rhs, [&] { return h.str() + ", " + b.str() + ", " + c.str(); });
            }
        for (const auto& k : Ht) {
            auto k3 = sweedler(H, k, 3);
            for (const auto& b : Bt) {
                Vec lhs = eval2(m, Vec(h), m(k, b));
                Vec rhs;
                for (const auto& t : h3)
                    for (const auto& u : k3) {
                        Vec hk = HA.mul(t.f[1], u.f[1]);
                        rhs.axpy(t.c * u.c,
                                 B.mul(B.mul(s.sigma(t.f[0], u.f[0]), eval2(m, hk, Vec(b))), s.sigma_inv(t.f[2], u.f[2])));
                    }
                twisted.check_lazy(lhs == rhs, [&] { return h.str() + ", " + k.str() + ", " + b.str(); });
            }
            for (const auto& l : Ht) {
                Vec lhs, rhs;
                for (const auto& t : sweedler(H, h, 2))
                    for (const auto& u : sweedler(H, k, 2))
                        for (const auto& v : sweedler(H, l, 2)) {
                            Cyc c = t.c * u.c * v.c;
                            Vec left = eval2(m, Vec(t.f[0]), s.sigma(u.f[0], v.f[0]));
                            lhs.axpy(c, B.mul(left, eval2(s.sigma, Vec(t.f[1]), HA.mul(u.f[1], v.f[1]))));
                        }
                for (const auto& t : sweedler(H, h, 2))
                    for (const auto& u : sweedler(H, k, 2))
                        rhs.axpy(t.c * u.c,
                                 B.mul(s.sigma(t.f[0], u.f[0]), eval2(s.sigma, HA.mul(t.f[1], u.f[1]), Vec(l))));
                cocyc.check_lazy(lhs == rhs, [&] { return h.str() + ", " + k.str() + ", " + l.str(); });
            }
        }
    }
    unitM.into(r, "measure-unit");
    prodM.into(r, "measure-product");
    unitH.into(r, "unit-acts-trivially");
    twisted.into(r, "twisted-module");
    cocyc.into(r, "cocycle");
    norm.into(r, "normalization");
    conv.into(r, "cocycle-inverse");
    return r;
}

struct CrossedProduct {
    AlgebraPtr base;
    HopfPtr hopf;
    Measure measure;
    Cocycle cocycle;
    ComodulePtr comodule;  // the algebra B#σH on pair indices (b, h)

    const Algebra& A() const { return *comodule->alg; }
    const Algebra& B() const { return *base; }
    const Hopf& H() const { return *hopf; }
    Vec act(const Vec& h, const Vec& b) const { return eval2(measure, h, b); }
    Vec sigma(const Vec& h, const Vec& k) const { return eval2(cocycle.sigma, h, k); }
    Vec sigma_inv(const Vec& h, const Vec& k) const { return eval2(cocycle.sigma_inv, h, k); }
};

inline std::string first_failure(const CheckReport& r) {
    for (const auto& c : r.checks)
        if (c.status == Status::fail) return r.suite + "/" + c.name + " (witness " + c.witness + ")";
    return {};
}

/// B#σH with the crossed product multiplication; the twisted module check is enforced.
inline CrossedProduct build_crossed_product(AlgebraPtr B, HopfPtr H, Measure m, Cocycle s, int W = kDefaultWindow) {
    m = memo_bil(m);
    s.sigma = memo_bil(s.sigma);
    s.sigma_inv = memo_bil(s.sigma_inv);
    auto pre = check_twisted_module_algebra(*B, *H, m, s, W);
    if (!pre.ok()) throw StructureError("crossed product precondition failed: " + first_failure(pre));

    auto A = std::make_shared<Algebra>();
    A->name = B->name + "#" + H->A().name;
    A->mul_basis = memo_bil([B, H, m, s](const Index& x, const Index& y) {
        const Index &b = first(x), &h = second(x), &b2 = first(y), &k = second(y);
        Vec r;
        for (const auto& t : sweedler(*H, h, 3))
            for (const auto& u : sweedler(*H, k, 2)) {
                Vec left = B->mul(Vec(b), m(t.f[0], b2));
                Vec bpart = B->mul(left, s.sigma(t.f[1], u.f[0]));
                r.axpy(t.c * u.c, tensor(bpart, H->A().mul(t.f[2], u.f[1])));
            }
        return r;
    });
    A->unit = tensor(B->unit, H->A().unit);
    if (B->finite() && H->A().finite()) {
        std::vector<Index> bs;
        for (const auto& b : B->basis())
            for (const auto& h : H->A().basis()) bs.push_back(pair(b, h));
        A->finite_basis = bs;
    }
    A->window_basis = [B, H](int w) {
        std::vector<Index> bs;
        for (const auto& b : B->basis(w))
            for (const auto& h : H->A().basis(w)) bs.push_back(pair(b, h));
        return bs;
    };
    auto C = std::make_shared<ComoduleAlgebra>();
    C->alg = A;
    C->hopf = H;
    C->coaction = [H](const Index& x) {
        Vec r;
        for (const auto& [p, c] : H->comul(second(x))) r.add(pair(pair(first(x), first(p)), second(p)), c);
        return r;
    };
    CrossedProduct cp{B, H, m, s, C};
    auto post = check_comodule_algebra(*C, A->finite() ? W : std::max(1, W / 2));
    if (!post.ok()) throw StructureError("crossed product is not a comodule algebra: " + first_failure(post));
    return cp;
}

inline Vec bh(const Vec& b, const Vec& h) { return tensor(b, h); }

struct CleftData {
    ComodulePtr total;
    LinFn j;
    std::optional<LinFn> j_inv;
    Coinvariants coinv;
    std::function<std::vector<Index>(const Index&)> inverse_support;  // for infinite H
};

struct CleftResult {
    CrossedProduct cp;
    LinFn j_inv;
    LinFn theta;      // A → B#σH
    LinFn theta_inv;  // B#σH → A
    CheckReport report;
};

/// Projects a vector of A into B or throws naming the offending value.
inline Vec into_base(const Coinvariants& C, const Vec& v, const std::string& what) {
    auto p = C.project(v);
    if (!p) throw StructureError(what + " is not coinvariant: " + v.str());
    return *p;
}

inline CleftResult cleft_to_crossed(const CleftData& cd, int W = kDefaultWindow) {
    const ComoduleAlgebra& T = *cd.total;
    const Algebra& A = *T.alg;
    HopfPtr H = T.hopf;
    const Algebra& HA = H->A();
    const bool windowed = !A.finite() || !HA.finite();
    LinFn j = memo_lin(cd.j);
    LinFn jinv;
    if (cd.j_inv) {
        jinv = memo_lin(*cd.j_inv);
    } else if (!windowed) {
        auto res = convolution_inverse(j, H->coalgebra(), HA.basis(), A, A.basis());
        if (!res.ok) throw StructureError("cleaving map is not convolution invertible at " + res.witness);
        jinv = res.as_map();
    } else {
        auto support = cd.inverse_support ? cd.inverse_support
                                          : std::function<std::vector<Index>(const Index&)>(
                                                [&A, W](const Index&) { return A.basis(W); });
        jinv = grouplike_inverse_lazy(j, H->coalgebra(), T.alg, support);
    }
    Coinvariants coinv = cd.coinv;
    auto Hp = H;
    auto Ap = T.alg;
    Measure measure = [Hp, Ap, j, jinv, coinv](const Index& h, const Index& b) {
        Vec total;
        Vec eb = coinv.embed(b);
        for (const auto& t : sweedler(*Hp, h, 2))
            total.axpy(t.c, Ap->mul(Ap->mul(j(t.f[0]), eb), jinv(t.f[1])));
        return into_base(coinv, total, "measure value " + h.str() + "·" + b.str());
    };
    BilFn sigma = [Hp, Ap, j, jinv, coinv](const Index& h, const Index& k) {
        Vec total;
        for (const auto& t : sweedler(*Hp, h, 2))
            for (const auto& u : sweedler(*Hp, k, 2))
                total.axpy(t.c * u.c,
                           Ap->mul(Ap->mul(j(t.f[0]), j(u.f[0])), hopfcalc::apply(jinv, Hp->A().mul(t.f[1], u.f[1]))));
        return into_base(coinv, total, "cocycle value at (" + h.str() + ", " + k.str() + ")");
    };
    BilFn sigma_inv = [Hp, Ap, j, jinv, coinv](const Index& h, const Index& k) {
        Vec total;
        for (const auto& t : sweedler(*Hp, h, 2))
            for (const auto& u : sweedler(*Hp, k, 2))
                total.axpy(t.c * u.c, Ap->mul(Ap->mul(hopfcalc::apply(j, Hp->A().mul(t.f[0], u.f[0])), jinv(u.f[1])),
                                              jinv(t.f[1])));
        return into_base(coinv, total, "inverse cocycle value at (" + h.str() + ", " + k.str() + ")");
    };

    CleftResult out{build_crossed_product(coinv.base, H, measure, {sigma, sigma_inv}, W), jinv, {}, {}, {}};
    out.report.suite = "cleft";

    out.theta = memo_lin([Ap, T = cd.total, jinv, coinv](const Index& a) {
        Vec r;
        for (const auto& [p, c] : T->coaction(a))
            for (const auto& [q, e] : T->hopf->comul(second(p))) {
                Vec b0 = into_base(coinv, Ap->mul(Vec(first(p)), jinv(first(q))), "a₀j⁻¹(a₁)");
                r.axpy(c * e, tensor(b0, Vec(second(q))));
            }
        return r;
    });
    out.theta_inv = [Ap, j, coinv](const Index& x) { return Ap->mul(coinv.embed(first(x)), j(second(x))); };

    Sweep colinear(windowed), unital(windowed), convInv(windowed), roundA(windowed), roundC(windowed),
        thetaMul(windowed), thetaCo(windowed);
    unital.check_lazy(hopfcalc::apply(j, HA.unit) == A.unit, [] { return std::string("1"); });
    for (const auto& h : HA.basis(W)) {
        Vec lhs = hopfcalc::apply(T.coaction, j(h));
        Vec rhs;
        for (const auto& [p, c] : H->comul(h)) rhs.axpy(c, tensor(j(first(p)), Vec(second(p))));
        colinear.check_lazy(lhs == rhs, [&] { return h.str(); });
        Vec l, r;
        for (const auto& t : sweedler(*H, h, 2)) {
            l.axpy(t.c, A.mul(j(t.f[0]), jinv(t.f[1])));
            r.axpy(t.c, A.mul(jinv(t.f[0]), j(t.f[1])));
        }
        convInv.check_lazy(l == H->counit(h) * A.unit && r == H->counit(h) * A.unit, [&] { return h.str(); });
    }
    const int pw = windowed ? std::max(1, W / 2) : W;
    for (const auto& a : A.basis(W)) {
        roundA.check_lazy(hopfcalc::apply(out.theta_inv, out.theta(a)) == Vec(a), [&] { return a.str(); });
        Vec lhs = hopfcalc::apply(out.cp.comodule->coaction, out.theta(a));
        Vec rhs;
        for (const auto& [p, c] : T.coaction(a)) rhs.axpy(c, tensor(out.theta(first(p)), Vec(second(p))));
        thetaCo.check_lazy(lhs == rhs, [&] { return a.str(); });
    }
    for (const auto& x : out.cp.A().basis(W))
        roundC.check_lazy(hopfcalc::apply(out.theta, out.theta_inv(x)) == Vec(x), [&] { return x.str(); });
    auto P = A.basis(pw);
    for (const auto& a : P)
        for (const auto& b : P)
            thetaMul.check_lazy(hopfcalc::apply(out.theta, A.mul(a, b)) == out.cp.A().mul(out.theta(a), out.theta(b)),
                                [&] { return a.str() + ", " + b.str(); });
    colinear.into(out.report, "cleaving-colinear");
    unital.into(out.report, "cleaving-unital");
    convInv.into(out.report, "cleaving-convolution-inverse");
    roundA.into(out.report, "theta-inverse-after-theta");
    roundC.into(out.report, "theta-after-theta-inverse");
    thetaMul.into(out.report, "theta-multiplicative");
    thetaCo.into(out.report, "theta-colinear");
    return out;
}

/// The canonical cleaving map h ↦ 1⊗h of a crossed product, as cleft data.
/// j⁻¹(h) = σ⁻¹(S(h₂)⊗h₃)⊗S(h₁) for the canonical cleaving map of a crossed product.
inline Vec crossed_cleaving_inverse(const CrossedProduct& cp, const Index& h) {
    Vec r;
    for (const auto& t : sweedler(cp.H(), h, 3))
        r.axpy(t.c, tensor(cp.sigma_inv(cp.H().antipode(t.f[1]), Vec(t.f[2])), cp.H().antipode(t.f[0])));
    return r;
}

inline CleftData canonical_cleft(const CrossedProduct& cp) {
    CleftData cd;
    cd.total = cp.comodule;
    auto one = cp.B().unit;
    cd.j = [one](const Index& h) { return tensor(one, Vec(h)); };
    cd.j_inv = [cp](const Index& h) { return crossed_cleaving_inverse(cp, h); };
    auto B = cp.base;
    auto oneH = cp.H().A().unit;
    cd.coinv.base = B;
    cd.coinv.embed = [oneH](const Index& b) { return tensor(Vec(b), oneH); };
    cd.coinv.project = [oneH](const Vec& v) -> std::optional<Vec> {
        Vec out;
        for (const auto& [p, c] : v) {
            if (!is_pair(p)) return std::nullopt;
            out.add(first(p), c);
        }
        if (tensor(out, oneH) != v) return std::nullopt;
        return out;
    };
    return cd;
}


/// Hopf-Galois canonical map A⊗_B A → A⊗H, realized on A⊗A modulo the balancing relations.
inline CheckReport check_hopf_galois(const ComoduleAlgebra& A, const Coinvariants& B) {
    CheckReport r;
    r.suite = "hopf-galois";
    const Algebra& Aa = *A.alg;
    if (!Aa.finite() || !A.hopf->A().finite() || !B.base->finite())
        throw StructureError("check_hopf_galois needs finite-dimensional data");
    auto basis = Aa.basis();
    std::vector<Index> ambient;
    for (const auto& a : basis)
        for (const auto& b : basis) ambient.push_back(pair(a, b));
    Subspace rel;
    std::vector<Vec> embedded;
    for (const auto& b : B.base->basis()) embedded.push_back(B.embed(b));
    for (const auto& a : basis)
        for (const auto& e : embedded) {
            Vec ab = Aa.mul(Vec(a), e);
            for (const auto& a2 : basis) rel.insert(tensor(ab, Vec(a2)) - tensor(Vec(a), Aa.mul(e, Vec(a2))));
        }
    Quotient Q = quotient_basis(ambient, rel);
    LinFn can = [&](const Index& p) {
        Vec out;
        for (const auto& [q, c] : A.coaction(second(p)))
            out.axpy(c, tensor(Aa.mul(first(p), first(q)), Vec(second(q))));
        return out;
    };
    Sweep wd(false);
    for (const auto& v : rel.basis()) wd.check_lazy(hopfcalc::apply(can, v).is_zero(), [&] { return v.str(); });
    wd.into(r, "can-well-defined");
    auto ki = kernel_image(can, Q.representatives);
    const std::size_t target = basis.size() * A.hopf->A().basis().size();
    const std::size_t rank = ki.image.dim();
    const std::string detail = "rank " + std::to_string(rank) + ", dim A⊗_B A " +
                               std::to_string(Q.representatives.size()) + ", dim A⊗H " + std::to_string(target);
    r.add("can-injective", ki.kernel.dim() == 0 ? Status::pass : Status::fail,
          ki.kernel.dim() == 0 ? "" : ki.kernel.basis().front().str(), detail);
    r.add("can-surjective", rank == target ? Status::pass : Status::fail, "", detail);
    return r;
}

/// Rank of the canonical map on the balanced tensor product.
inline std::size_t hopf_galois_rank(const CheckReport& r) {
    const CheckEntry* e = r.find("can-surjective");
    if (!e) return 0;
    return std::stoul(e->detail.substr(5));
}

} // namespace hopfcalc
