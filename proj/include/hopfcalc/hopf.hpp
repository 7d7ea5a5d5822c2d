#pragma once

// Algebras, Hopf algebras and comodule algebras given by structure maps on
// basis indices, together with axiom checkers, convolution inverses and the
// concrete builders used by the examples.

#include "hopfcalc/linalg.hpp"
#include "hopfcalc/report.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfcalc {

class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr int kDefaultWindow = 4;

struct Algebra {
    std::string name;
    BilFn mul_basis;
    Vec unit;
    std::optional<std::vector<Index>> finite_basis;
    std::function<std::vector<Index>(int)> window_basis;

    bool finite() const { return finite_basis.has_value(); }

    /// The full basis when finite, else the exponent window of radius W.
    std::vector<Index> basis(int W = kDefaultWindow) const {
        if (finite_basis) return *finite_basis;
        return window_basis(W);
    }

    Vec mul(const Vec& a, const Vec& b) const { return apply2(mul_basis, a, b); }
    Vec mul(const Index& a, const Index& b) const { return mul_basis(a, b); }
    Vec mul(const Vec& a, const Index& b) const { return apply2(mul_basis, a, Vec(b)); }
    Vec mul(const Index& a, const Vec& b) const { return apply2(mul_basis, Vec(a), b); }
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Product in A⊗B on pair indices.
inline Vec mul_tensor(const Algebra& A, const Algebra& B, const Vec& x, const Vec& y) {
    Vec r;
    for (const auto& [i, c] : x)
        for (const auto& [j, d] : y) r += (c * d) * tensor(A.mul(first(i), first(j)), B.mul(second(i), second(j)));
    return r;
}

inline AlgebraPtr tensor_algebra(const AlgebraPtr& A, const AlgebraPtr& B) {
    auto T = std::make_shared<Algebra>();
    T->name = A->name + "⊗" + B->name;
    T->mul_basis = [A, B](const Index& i, const Index& j) {
        return tensor(A->mul(first(i), first(j)), B->mul(second(i), second(j)));
    };
    T->unit = tensor(A->unit, B->unit);
    if (A->finite() && B->finite()) {
        std::vector<Index> bs;
        for (const auto& a : *A->finite_basis)
            for (const auto& b : *B->finite_basis) bs.push_back(pair(a, b));
        T->finite_basis = bs;
    }
    T->window_basis = [A, B](int W) {
        std::vector<Index> bs;
        for (const auto& a : A->basis(W))
            for (const auto& b : B->basis(W)) bs.push_back(pair(a, b));
        return bs;
    };
    return T;
}

using CounitFn = std::function<Cyc(const Index&)>;

struct Coalgebra {
    LinFn comul;
    CounitFn counit;
};

struct Hopf {
    AlgebraPtr alg;
    LinFn comul;
    CounitFn counit;
    LinFn antipode;
    LinFn antipode_inv;

    const Algebra& A() const { return *alg; }
    Coalgebra coalgebra() const { return {comul, counit}; }
    Cyc eps(const Vec& v) const {
        Cyc s(0);
        for (const auto& [i, c] : v) s += c * counit(i);
        return s;
    }
    Vec S(const Vec& v) const { return hopfcalc::apply(antipode, v); }
    Vec Sinv(const Vec& v) const { return hopfcalc::apply(antipode_inv, v); }
};

using HopfPtr = std::shared_ptr<const Hopf>;

/// Tensor coalgebra structure on pair indices.
inline Coalgebra tensor_coalgebra(const Coalgebra& C, const Coalgebra& D) {
    Coalgebra T;
    T.comul = [C, D](const Index& p) {
        Vec a = C.comul(first(p));
        Vec b = D.comul(second(p));
        Vec r;
        for (const auto& [i, x] : a)
            for (const auto& [j, y] : b) r.add(pair(pair(first(i), first(j)), pair(second(i), second(j))), x * y);
        return r;
    };
    T.counit = [C, D](const Index& p) { return C.counit(first(p)) * D.counit(second(p)); };
    return T;
}

/// Iterated Sweedler expansion: terms (coefficient, factors).
struct STerm {
    Cyc c;
    std::vector<Index> f;
};
using Sweedler = std::vector<STerm>;

/// Δ applied n-1 times: h ↦ h₁⊗...⊗hₙ.
inline Sweedler sweedler(const LinFn& comul, const Index& h, int n) {
    Sweedler cur{{Cyc(1), {h}}};
    for (int k = 1; k < n; ++k) {
        Sweedler next;
        for (const auto& t : cur) {
            Vec d = comul(t.f.back());
            for (const auto& [p, c] : d) {
                STerm s{t.c * c, t.f};
                s.f.back() = first(p);
                s.f.push_back(second(p));
                next.push_back(std::move(s));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

inline Sweedler sweedler(const Hopf& H, const Index& h, int n) { return sweedler(H.comul, h, n); }

/// Expands a vector over pair indices into two-factor terms.
inline Sweedler split2(const Vec& v) {
    Sweedler s;
    for (const auto& [p, c] : v) s.push_back({c, {first(p), second(p)}});
    return s;
}

struct ComoduleAlgebra {
    AlgebraPtr alg;
    HopfPtr hopf;
    LinFn coaction;  // a ↦ Σ a₀⊗a₁ on pair indices
};

using ComodulePtr = std::shared_ptr<const ComoduleAlgebra>;

/// A declared subalgebra B ⊆ A (typically the coinvariants) with its own basis.
struct Coinvariants {
    AlgebraPtr base;
    LinFn embed;                                               // B index ↦ vector in A
    std::function<std::optional<Vec>(const Vec&)> project;    // vector in A ↦ vector in B, if it lies in B
};

// ---------------------------------------------------------------------------
// Axiom checkers

inline CheckReport check_algebra(const Algebra& A, int W = kDefaultWindow, int tripleW = -1) {
    CheckReport r;
    r.suite = "algebra";
    const bool windowed = !A.finite();
    if (tripleW < 0) tripleW = windowed ? std::max(1, W / 2) : W;
    auto B = A.basis(W);
    auto T = A.basis(tripleW);
    Sweep unit(windowed), assoc(windowed);
    for (const auto& a : B) {
        unit.check_lazy(A.mul(A.unit, a) == Vec(a) && A.mul(a, A.unit) == Vec(a), [&] { return a.str(); });
    }
    for (const auto& a : T)
        for (const auto& b : T) {
            Vec ab = A.mul(a, b);
            for (const auto& c : T) {
                assoc.check_lazy(A.mul(ab, c) == A.mul(a, A.mul(b, c)),
                                 [&] { return a.str() + ", " + b.str() + ", " + c.str(); });
            }
        }
    unit.into(r, "unit");
    assoc.into(r, "associativity");
    return r;
}

inline CheckReport check_hopf_axioms(const Hopf& H, int W = kDefaultWindow) {
    CheckReport r = check_algebra(H.A(), W);
    r.suite = "hopf";
    const Algebra& A = H.A();
    const bool windowed = !A.finite();
    auto B = A.basis(W);
    auto P = A.basis(windowed ? std::max(1, W / 2) : W);
    Sweep coassoc(windowed), counitL(windowed), antipodeL(windowed), antipodeR(windowed), sinv(windowed),
        comulAlg(windowed), counitAlg(windowed);
    for (const auto& h : B) {
        Vec d = H.comul(h);
        Vec lhs, rhs;
        for (const auto& [p, c] : d) {
            lhs.axpy(c, tensor(H.comul(first(p)), Vec(second(p))));
            rhs.axpy(c, tensor(Vec(first(p)), H.comul(second(p))));
        }
        Vec left3, right3;
        for (const auto& [p, c] : lhs) left3.add(Index("*3", {first(first(p)), second(first(p)), second(p)}), c);
        for (const auto& [p, c] : rhs) right3.add(Index("*3", {first(p), first(second(p)), second(second(p))}), c);
        coassoc.check_lazy(left3 == right3, [&] { return h.str(); });

        Vec l, rr;
        for (const auto& [p, c] : d) {
            l.axpy(c * H.counit(first(p)), Vec(second(p)));
            rr.axpy(c * H.counit(second(p)), Vec(first(p)));
        }
        counitL.check_lazy(l == Vec(h) && rr == Vec(h), [&] { return h.str(); });

        Vec epsUnit = H.counit(h) * A.unit;
        Vec sl, sr;
        for (const auto& [p, c] : d) {
            sl.axpy(c, A.mul(H.antipode(first(p)), Vec(second(p))));
            sr.axpy(c, A.mul(Vec(first(p)), H.antipode(second(p))));
        }
        antipodeL.check_lazy(sl == epsUnit, [&] { return h.str(); });
        antipodeR.check_lazy(sr == epsUnit, [&] { return h.str(); });
        sinv.check_lazy(H.Sinv(H.antipode(h)) == Vec(h) && H.S(H.antipode_inv(h)) == Vec(h),
                        [&] { return h.str(); });
    }
    comulAlg.check_lazy(hopfcalc::apply(H.comul, A.unit) == tensor(A.unit, A.unit), [] { return std::string("unit"); });
    counitAlg.check_lazy(H.eps(A.unit).is_one(), [] { return std::string("unit"); });
    for (const auto& a : P)
        for (const auto& b : P) {
            Vec ab = A.mul(a, b);
            comulAlg.check_lazy(hopfcalc::apply(H.comul, ab) == mul_tensor(A, A, H.comul(a), H.comul(b)),
                                [&] { return a.str() + ", " + b.str(); });
            counitAlg.check_lazy(H.eps(ab) == H.counit(a) * H.counit(b), [&] { return a.str() + ", " + b.str(); });
        }
    coassoc.into(r, "coassociativity");
    counitL.into(r, "counit");
    comulAlg.into(r, "comultiplication-algebra-map");
    counitAlg.into(r, "counit-algebra-map");
    antipodeL.into(r, "antipode-left");
    antipodeR.into(r, "antipode-right");
    sinv.into(r, "antipode-inverse");
    return r;
}

inline CheckReport check_comodule_algebra(const ComoduleAlgebra& C, int W = kDefaultWindow) {
    CheckReport r = check_algebra(*C.alg, W);
    r.suite = "comodule-algebra";
    const Algebra& A = *C.alg;
    const Hopf& H = *C.hopf;
    const bool windowed = !A.finite();
    auto B = A.basis(W);
    auto P = A.basis(windowed ? std::max(1, W / 2) : W);
    Sweep coassoc(windowed), counit(windowed), algmap(windowed);
    for (const auto& a : B) {
        Vec rho = C.coaction(a);
        Vec lhs, rhs;
        for (const auto& [p, c] : rho) {
            for (const auto& [q, e] : C.coaction(first(p)))
                lhs.add(Index("*3", {first(q), second(q), second(p)}), c * e);
            for (const auto& [q, e] : H.comul(second(p)))
                rhs.add(Index("*3", {first(p), first(q), second(q)}), c * e);
        }
        coassoc.check_lazy(lhs == rhs, [&] { return a.str(); });
        Vec back;
        for (const auto& [p, c] : rho) back.axpy(c * H.counit(second(p)), Vec(first(p)));
        counit.check_lazy(back == Vec(a), [&] { return a.str(); });
    }
    algmap.check_lazy(hopfcalc::apply(C.coaction, A.unit) == tensor(A.unit, H.A().unit), [] { return std::string("unit"); });
    for (const auto& a : P)
        for (const auto& b : P)
            algmap.check_lazy(hopfcalc::apply(C.coaction, A.mul(a, b)) == mul_tensor(A, H.A(), C.coaction(a), C.coaction(b)),
                              [&] { return a.str() + ", " + b.str(); });
    coassoc.into(r, "coaction-coassociativity");
    counit.into(r, "coaction-counit");
    algmap.into(r, "coaction-algebra-map");
    return r;
}

// ---------------------------------------------------------------------------
// Convolution inverses

struct ConvolutionInverse {
    bool ok = false;
    std::map<Index, Vec> table;
    std::string witness;  // the unsolvable basis element when !ok

    LinFn as_map() const {
        auto t = std::make_shared<std::map<Index, Vec>>(table);
        return [t](const Index& c) {
            auto it = t->find(c);
            if (it == t->end()) throw StructureError("convolution inverse not computed at " + c.str());
            return it->second;
        };
    }
};

inline bool is_grouplike(const Coalgebra& C, const Index& c) {
    return C.comul(c) == Vec(pair(c, c));
}

/// Vector v in A relabelled as pairs (c, a): coordinates of an equation at c.
inline Vec pair_tag(const Index& c, const Vec& v) {
    return relabel(v, [&](const Index& a) { return pair(c, a); });
}

/// g with f ⋆ g = ε·1 = g ⋆ f on c_basis, unknown values supported on a_basis.
/// Group-like elements are solved one at a time; otherwise one global system is solved.
inline ConvolutionInverse convolution_inverse(const LinFn& f, const Coalgebra& C, const std::vector<Index>& c_basis,
                                              const Algebra& A, const std::vector<Index>& a_basis) {
    ConvolutionInverse out;
    bool allGrouplike = true;
    for (const auto& c : c_basis)
        if (!is_grouplike(C, c)) { allGrouplike = false; break; }

    if (allGrouplike) {
        for (const auto& c : c_basis) {
            Vec fc = f(c);
            LinFn both = [&](const Index& a) {
                return tag_vec("L", A.mul(fc, Vec(a))) + tag_vec("R", A.mul(Vec(a), fc));
            };
            Vec target = tag_vec("L", C.counit(c) * A.unit) + tag_vec("R", C.counit(c) * A.unit);
            auto sol = solve_linear(both, target, a_basis);
            if (!sol) {
                out.witness = c.str();
                return out;
            }
            out.table[c] = *sol;
        }
        out.ok = true;
        return out;
    }

    // Unknowns (c, a) stand for the coefficient of a in g(c).
    std::map<Index, Vec> columns;
    Vec target;
    for (const auto& c : c_basis) {
        for (const auto& [p, k] : C.comul(c)) {
            for (const auto& a : a_basis) {
                columns[pair(second(p), a)] += tag_vec("L", pair_tag(c, k * A.mul(f(first(p)), Vec(a))));
                columns[pair(first(p), a)] += tag_vec("R", pair_tag(c, k * A.mul(Vec(a), f(second(p)))));
            }
        }
        Vec e = C.counit(c) * A.unit;
        target += tag_vec("L", pair_tag(c, e)) + tag_vec("R", pair_tag(c, e));
    }
    std::vector<Index> unknowns;
    for (const auto& c : c_basis)
        for (const auto& a : a_basis) unknowns.push_back(pair(c, a));
    LinFn system = [&](const Index& u) {
        auto it = columns.find(u);
        return it == columns.end() ? Vec() : it->second;
    };
    LinearSolver solver(system, unknowns);
    auto sol = solver.solve(target);
    if (!sol) {
        auto bad = solver.obstruction(target);
        out.witness = bad ? first(bad->sub(0)).str() : std::string("?");
        return out;
    }
    for (const auto& c : c_basis) out.table[c] = Vec();
    for (const auto& [u, x] : *sol) out.table[first(u)].add(second(u), x);
    out.ok = true;
    return out;
}

/// Lazily computed inverse of a map on group-like elements, solving on a support window per element.
inline LinFn grouplike_inverse_lazy(LinFn f, Coalgebra C, AlgebraPtr A,
                                    std::function<std::vector<Index>(const Index&)> support) {
    struct State {
        std::mutex mu;
        std::map<Index, Vec> memo;
    };
    auto st = std::make_shared<State>();
    return [=](const Index& c) {
        {
            std::lock_guard<std::mutex> lock(st->mu);
            auto it = st->memo.find(c);
            if (it != st->memo.end()) return it->second;
        }
        if (!is_grouplike(C, c)) throw StructureError("lazy inverse needs a group-like element, got " + c.str());
        auto res = convolution_inverse(f, C, {c}, *A, support(c));
        if (!res.ok) throw StructureError("no convolution inverse at " + c.str());
        std::lock_guard<std::mutex> lock(st->mu);
        st->memo[c] = res.table.at(c);
        return res.table.at(c);
    };
}

// ---------------------------------------------------------------------------
// Builders

/// Group algebra from a Cayley table with entries in 0..n-1.
inline HopfPtr build_group_algebra(const std::vector<std::vector<int>>& cayley, const std::string& name = "kG") {
    const int n = static_cast<int>(cayley.size());
    if (n == 0) throw StructureError("empty group table");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(cayley[static_cast<std::size_t>(i)].size()) != n)
            throw StructureError("group table row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < n; ++j) {
            int v = cayley[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (v < 0 || v >= n)
                throw StructureError("group table entry out of range at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    auto op = [&](int i, int j) { return cayley[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
    int e = -1;
    for (int i = 0; i < n && e < 0; ++i) {
        bool ok = true;
        for (int j = 0; j < n; ++j)
            if (op(i, j) != j || op(j, i) != j) { ok = false; break; }
        if (ok) e = i;
    }
    if (e < 0) throw StructureError("group table has no identity element");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (op(op(i, j), k) != op(i, op(j, k)))
                    throw StructureError("group table not associative at (" + std::to_string(i) + "," + std::to_string(j) +
                                         "," + std::to_string(k) + ")");
    std::vector<int> inv(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (op(i, j) == e && op(j, i) == e) inv[static_cast<std::size_t>(i)] = j;
    for (int i = 0; i < n; ++i)
        if (inv[static_cast<std::size_t>(i)] < 0)
            throw StructureError("group table: element " + std::to_string(i) + " has no inverse");

    auto table = std::make_shared<std::vector<std::vector<int>>>(cayley);
    auto invs = std::make_shared<std::vector<int>>(inv);
    auto g = [](std::int64_t i) { return idx("g", {i}); };
    auto A = std::make_shared<Algebra>();
    A->name = name;
    A->mul_basis = [table, g](const Index& a, const Index& b) {
        return Vec(g((*table)[static_cast<std::size_t>(a.num(0))][static_cast<std::size_t>(b.num(0))]));
    };
    A->unit = Vec(g(e));
    std::vector<Index> basis;
    for (int i = 0; i < n; ++i) basis.push_back(g(i));
    A->finite_basis = basis;
    auto H = std::make_shared<Hopf>();
    H->alg = A;
    H->comul = [](const Index& h) { return Vec(pair(h, h)); };
    H->counit = [](const Index&) { return Cyc(1); };
    H->antipode = [invs, g](const Index& h) { return Vec(g((*invs)[static_cast<std::size_t>(h.num(0))])); };
    H->antipode_inv = H->antipode;
    return H;
}

inline HopfPtr build_cyclic_group_algebra(int n) {
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
    return build_group_algebra(t, "kC" + std::to_string(n));
}

/// Laurent polynomial algebra k[s, s^-1] with basis tag(n).
inline AlgebraPtr build_laurent_algebra(const std::string& tag) {
    auto A = std::make_shared<Algebra>();
    A->name = "k[" + tag + "," + tag + "^-1]";
    A->mul_basis = [tag](const Index& a, const Index& b) { return Vec(idx(tag, {a.num(0) + b.num(0)})); };
    A->unit = Vec(idx(tag, {0}));
    A->window_basis = [tag](int W) {
        std::vector<Index> b;
        for (int k = -W; k <= W; ++k) b.push_back(idx(tag, {k}));
        return b;
    };
    return A;
}

inline HopfPtr build_laurent_hopf(const std::string& tag = "t") {
    auto H = std::make_shared<Hopf>();
    H->alg = build_laurent_algebra(tag);
    H->comul = [](const Index& h) { return Vec(pair(h, h)); };
    H->counit = [](const Index&) { return Cyc(1); };
    H->antipode = [tag](const Index& h) { return Vec(idx(tag, {-h.num(0)})); };
    H->antipode_inv = H->antipode;
    return H;
}

/// Powers of a root of unity with exponents taken modulo its order.
class RootPowers {
public:
    RootPowers() : RootPowers(Cyc(1)) {}
    explicit RootPowers(const Cyc& z) {
        long N = multiplicative_order(z, 100000);
        if (N == 0) throw ScalarError("not a root of unity: " + z.str());
        Cyc p(1);
        for (long i = 0; i < N; ++i) {
            pw_.push_back(p);
            p *= z;
        }
    }
    long order() const { return static_cast<long>(pw_.size()); }
    const Cyc& operator()(long e) const {
        long N = order();
        long k = e % N;
        if (k < 0) k += N;
        return pw_[static_cast<std::size_t>(k)];
    }

private:
    std::vector<Cyc> pw_;
};

inline Index ax(std::int64_t l, std::int64_t m) { return idx("ax", {l, m}); }

struct Radford {
    int r = 0, n = 0, M = 0;
    Cyc q;
    HopfPtr H;
    AlgebraPtr H1;  // span{a^(lr) x^m}
};

/// The Hopf algebra with a^(rn) = 1, x^n = 0, xa = qax, Δa = a⊗a, Δx = 1⊗x + x⊗a^r.
inline Radford build_radford(int r, int n, const Cyc& q) {
    if (r < 1 || n < 1) throw StructureError("radford: r and n must be positive");
    const int M = r * n;
    long ord = multiplicative_order(q, M);
    if (ord != M) throw StructureError("radford: q must be a primitive root of unity of order " + std::to_string(M));
    auto qp = std::make_shared<RootPowers>(q);

    Radford R;
    R.r = r;
    R.n = n;
    R.M = M;
    R.q = q;
    auto A = std::make_shared<Algebra>();
    A->name = "H(" + std::to_string(r) + "," + std::to_string(n) + ")";
    A->mul_basis = [M, n, qp](const Index& a, const Index& b) {
        const auto l = a.num(0), m = a.num(1), k = b.num(0), s = b.num(1);
        if (m + s >= n) return Vec();
        return Vec(ax((l + k) % M, m + s), (*qp)(m * k));
    };
    A->unit = Vec(ax(0, 0));
    std::vector<Index> basis;
    for (int l = 0; l < M; ++l)
        for (int m = 0; m < n; ++m) basis.push_back(ax(l, m));
    A->finite_basis = basis;

    // Δ on generators, extended multiplicatively.
    Vec da = Vec(pair(ax(1, 0), ax(1, 0)));
    Vec dx = Vec(pair(ax(0, 0), ax(0, 1))) + Vec(pair(ax(0, 1), ax(r % M, 0)));
    auto comulTable = std::make_shared<std::map<Index, Vec>>();
    std::vector<Vec> daPow{Vec(pair(ax(0, 0), ax(0, 0)))};
    for (int l = 1; l < M; ++l) daPow.push_back(mul_tensor(*A, *A, daPow.back(), da));
    std::vector<Vec> dxPow{Vec(pair(ax(0, 0), ax(0, 0)))};
    for (int m = 1; m < n; ++m) dxPow.push_back(mul_tensor(*A, *A, dxPow.back(), dx));
    for (int l = 0; l < M; ++l)
        for (int m = 0; m < n; ++m)
            (*comulTable)[ax(l, m)] = mul_tensor(*A, *A, daPow[static_cast<std::size_t>(l)], dxPow[static_cast<std::size_t>(m)]);

    // Antipode: solve S(a)·a = 1 and S(x)·a^r = -x, then extend anti-multiplicatively.
    auto solveRight = [&](const Index& rightFactor, const Vec& target, const char* what) {
        LinFn rm = [&](const Index& y) { return A->mul(Vec(y), Vec(rightFactor)); };
        auto sol = solve_linear(rm, target, basis);
        if (!sol) throw StructureError(std::string("radford: antipode equation unsolvable for ") + what);
        return *sol;
    };
    Vec Sa = solveRight(ax(1, 0), A->unit, "a");
    Vec Sx = solveRight(ax(r % M, 0), -Vec(ax(0, 1)), "x");
    auto Stable = std::make_shared<std::map<Index, Vec>>();
    std::vector<Vec> SaPow{A->unit}, SxPow{A->unit};
    for (int l = 1; l < M; ++l) SaPow.push_back(A->mul(SaPow.back(), Sa));
    for (int m = 1; m < n; ++m) SxPow.push_back(A->mul(SxPow.back(), Sx));
    for (int l = 0; l < M; ++l)
        for (int m = 0; m < n; ++m)
            (*Stable)[ax(l, m)] = A->mul(SxPow[static_cast<std::size_t>(m)], SaPow[static_cast<std::size_t>(l)]);
    LinFn S = [Stable](const Index& h) { return Stable->at(h); };
    LinearSolver sSolver(S, basis);
    auto SinvTable = std::make_shared<std::map<Index, Vec>>();
    for (const auto& h : basis) {
        auto sol = sSolver.solve(Vec(h));
        if (!sol) throw StructureError("radford: antipode not invertible");
        (*SinvTable)[h] = *sol;
    }

    auto H = std::make_shared<Hopf>();
    H->alg = A;
    H->comul = [comulTable](const Index& h) { return comulTable->at(h); };
    H->counit = [](const Index& h) { return h.num(1) == 0 ? Cyc(1) : Cyc(0); };
    H->antipode = S;
    H->antipode_inv = [SinvTable](const Index& h) { return SinvTable->at(h); };
    R.H = H;

    auto H1 = std::make_shared<Algebra>();
    H1->name = "H1(" + std::to_string(r) + "," + std::to_string(n) + ")";
    H1->mul_basis = A->mul_basis;
    H1->unit = A->unit;
    std::vector<Index> b1;
    for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) b1.push_back(ax(static_cast<std::int64_t>(l) * r, m));
    std::sort(b1.begin(), b1.end());
    H1->finite_basis = b1;
    R.H1 = H1;
    return R;
}

inline Index uv(std::int64_t m, std::int64_t n) { return idx("uv", {m, n}); }
inline Index tpow(std::int64_t n) { return idx("t", {n}); }
inline Index wpow(std::int64_t n) { return idx("w", {n}); }

inline std::int64_t tri(std::int64_t k) { return k * (k - 1) / 2; }

struct Torus {
    Cyc zeta;  // e^{iθ}
    std::shared_ptr<RootPowers> zp;
    ComodulePtr A;        // u^m v^n with vu = ζuv, right coaction over k[t, t^-1]
    HopfPtr H;
    Coinvariants B;       // span{(uv)^k}, basis w^k = (uv)^k
};

inline Torus build_torus_comodule(const Cyc& theta_root) {
    Torus T;
    T.zeta = theta_root;
    T.zp = std::make_shared<RootPowers>(theta_root);
    auto zp = T.zp;
    auto A = std::make_shared<Algebra>();
    A->name = "T_theta";
    A->mul_basis = [zp](const Index& x, const Index& y) {
        const auto a = x.num(0), b = x.num(1), c = y.num(0), d = y.num(1);
        return Vec(uv(a + c, b + d), (*zp)(b * c));
    };
    A->unit = Vec(uv(0, 0));
    A->window_basis = [](int W) {
        std::vector<Index> b;
        for (int m = -W; m <= W; ++m)
            for (int n = -W; n <= W; ++n) b.push_back(uv(m, n));
        return b;
    };
    T.H = build_laurent_hopf("t");
    auto C = std::make_shared<ComoduleAlgebra>();
    C->alg = A;
    C->hopf = T.H;
    C->coaction = [](const Index& x) { return Vec(pair(x, tpow(x.num(0) - x.num(1)))); };
    T.A = C;

    T.B.base = build_laurent_algebra("w");
    T.B.embed = [zp](const Index& w) {
        const auto k = w.num(0);
        return Vec(uv(k, k), (*zp)(tri(k)));
    };
    T.B.project = [zp](const Vec& v) -> std::optional<Vec> {
        Vec out;
        for (const auto& [i, c] : v) {
            if (i.tag() != "uv" || i.num(0) != i.num(1)) return std::nullopt;
            out.add(wpow(i.num(0)), c * (*zp)(-tri(i.num(0))));
        }
        return out;
    };
    return T;
}

/// Coinvariants of a finite-dimensional comodule algebra, computed as a kernel.
/// The basis of B is indexed by the pivots of the echelon basis.
inline Coinvariants finite_coinvariants(const ComoduleAlgebra& C) {
    const Algebra& A = *C.alg;
    if (!A.finite()) throw StructureError("finite_coinvariants: algebra is not finite-dimensional");
    Vec one = C.hopf->A().unit;
    LinFn f = [&](const Index& a) { return C.coaction(a) - tensor(Vec(a), one); };
    auto sub = std::make_shared<Subspace>(kernel_image(f, *A.finite_basis).kernel);
    auto B = std::make_shared<Algebra>();
    B->name = A.name + "^coH";
    B->finite_basis = sub->pivots();
    auto embed = [sub](const Index& b) { return sub->rows().at(b); };
    auto project = [sub](const Vec& v) -> std::optional<Vec> {
        if (!sub->contains(v)) return std::nullopt;
        return sub->coordinates(v);
    };
    auto Aptr = C.alg;
    B->mul_basis = [Aptr, sub, embed](const Index& x, const Index& y) {
        Vec p = Aptr->mul(embed(x), embed(y));
        return sub->coordinates(p);
    };
    auto u = project(A.unit);
    if (!u) throw StructureError("finite_coinvariants: unit is not coinvariant");
    B->unit = *u;
    Coinvariants out;
    out.base = B;
    out.embed = embed;
    out.project = project;
    return out;
}

// ---------------------------------------------------------------------------
// Structure-constant text format for finite-dimensional Hopf data.
//
//   HOPF <name> <dim> <M>
//   UNIT i                      (optional, default 0)
//   MUL i j -> k : <scalar>
//   COMUL i -> j k : <scalar>
//   COUNIT i : <scalar>
//   ANTIPODE i -> j : <scalar>
//   IDEAL i:<scalar>, j:<scalar>, ...   (generator of an ideal of H^+)
//
// Lines starting with '#' are comments.

struct ParsedHopf {
    HopfPtr hopf;
    std::vector<Vec> ideal_generators;
    int order = 1;
};

inline Index ebasis(std::int64_t i) { return idx("e", {i}); }

inline ParsedHopf parse_hopf_text(std::istream& in) {
    std::string line;
    int lineNo = 0;
    std::string name;
    int dim = -1, M = 1, unit = 0;
    auto mulT = std::make_shared<std::map<std::pair<int, int>, Vec>>();
    auto comulT = std::make_shared<std::map<int, Vec>>();
    auto counitT = std::make_shared<std::map<int, Cyc>>();
    auto antiT = std::make_shared<std::map<int, Vec>>();
    ParsedHopf out;
    auto fail = [&](const std::string& why) {
        throw StructureError("line " + std::to_string(lineNo) + ": " + why);
    };
    auto checkIdx = [&](int i) {
        if (dim < 0) fail("HOPF header must come first");
        if (i < 0 || i >= dim) fail("basis index " + std::to_string(i) + " out of range");
        return i;
    };
    auto scalarAfterColon = [&](const std::string& l) {
        auto pos = l.find(':');
        if (pos == std::string::npos) fail("missing ': <scalar>'");
        try {
            return Cyc::parse(l.substr(pos + 1));
        } catch (const ScalarError& e) {
            fail(e.what());
        }
        return Cyc(0);
    };
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string dir;
        if (!(ls >> dir)) continue;
        std::string arrow;
        if (dir == "HOPF") {
            if (!(ls >> name >> dim >> M) || dim <= 0 || M <= 0) fail("expected 'HOPF <name> <dim> <M>'");
            out.order = M;
        } else if (dir == "UNIT") {
            if (!(ls >> unit)) fail("expected 'UNIT i'");
            checkIdx(unit);
        } else if (dir == "MUL") {
            int i, j, k;
            if (!(ls >> i >> j >> arrow >> k) || arrow != "->") fail("expected 'MUL i j -> k : s'");
            (*mulT)[{checkIdx(i), checkIdx(j)}].add(ebasis(checkIdx(k)), scalarAfterColon(line));
        } else if (dir == "COMUL") {
            int i, j, k;
            if (!(ls >> i >> arrow >> j >> k) || arrow != "->") fail("expected 'COMUL i -> j k : s'");
            (*comulT)[checkIdx(i)].add(pair(ebasis(checkIdx(j)), ebasis(checkIdx(k))), scalarAfterColon(line));
        } else if (dir == "COUNIT") {
            int i;
            if (!(ls >> i)) fail("expected 'COUNIT i : s'");
            (*counitT)[checkIdx(i)] += scalarAfterColon(line);
        } else if (dir == "ANTIPODE") {
            int i, j;
            if (!(ls >> i >> arrow >> j) || arrow != "->") fail("expected 'ANTIPODE i -> j : s'");
            (*antiT)[checkIdx(i)].add(ebasis(checkIdx(j)), scalarAfterColon(line));
        } else if (dir == "IDEAL") {
            if (dim < 0) fail("HOPF header must come first");
            std::string rest = line.substr(line.find("IDEAL") + 5);
            Vec g;
            std::stringstream ts(rest);
            std::string item;
            while (std::getline(ts, item, ',')) {
                auto pos = item.find(':');
                if (pos == std::string::npos) fail("ideal term must be 'i:<scalar>'");
                int i = 0;
                try {
                    i = std::stoi(item.substr(0, pos));
                } catch (...) {
                    fail("bad ideal index");
                }
                try {
                    g.add(ebasis(checkIdx(i)), Cyc::parse(item.substr(pos + 1)));
                } catch (const ScalarError& e) {
                    fail(e.what());
                }
            }
            out.ideal_generators.push_back(g);
        } else {
            fail("unknown directive '" + dir + "'");
        }
    }
    if (dim < 0) throw StructureError("missing HOPF header");
    auto A = std::make_shared<Algebra>();
    A->name = name;
    A->mul_basis = [mulT](const Index& a, const Index& b) {
        auto it = mulT->find({static_cast<int>(a.num(0)), static_cast<int>(b.num(0))});
        return it == mulT->end() ? Vec() : it->second;
    };
    A->unit = Vec(ebasis(unit));
    std::vector<Index> basis;
    for (int i = 0; i < dim; ++i) basis.push_back(ebasis(i));
    A->finite_basis = basis;
    auto H = std::make_shared<Hopf>();
    H->alg = A;
    H->comul = [comulT](const Index& h) {
        auto it = comulT->find(static_cast<int>(h.num(0)));
        return it == comulT->end() ? Vec() : it->second;
    };
    H->counit = [counitT](const Index& h) {
        auto it = counitT->find(static_cast<int>(h.num(0)));
        return it == counitT->end() ? Cyc(0) : it->second;
    };
    H->antipode = [antiT](const Index& h) {
        auto it = antiT->find(static_cast<int>(h.num(0)));
        return it == antiT->end() ? Vec() : it->second;
    };
    LinearSolver sSolver(H->antipode, basis);
    auto SinvT = std::make_shared<std::map<Index, Vec>>();
    for (const auto& h : basis) {
        auto sol = sSolver.solve(Vec(h));
        if (!sol) throw StructureError("antipode is not invertible");
        (*SinvT)[h] = *sol;
    }
    H->antipode_inv = [SinvT](const Index& h) { return SinvT->at(h); };
    out.hopf = H;
    return out;
}

} // namespace hopfcalc
